use std::path::PathBuf;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use cyclix::algebras::{twisted_small_algebra, StructureAlgebra};
use cyclix::forms::{build_forms_with_cap, class_block, MixedComplex, WordIndex};
use cyclix::groups::{CosetSection, Subgroup};
use cyclix::homology::{cyclic_dims, hochschild_dims, periodic_dims, HomologyProfile, PeriodicProfile};
use cyclix::theorems::{
    named_examples, pinned, verify_burghelea, verify_centralizer_extension, verify_class_reduction, verify_cocycles,
    verify_coset_embedding, verify_decomposition, verify_elliptic, verify_free_module, verify_goodwillie,
    verify_homogeneous, Setting, TheoremId, Truncation, Verdict, VerificationReport,
};
use cyclix::Error;

use crate::cache::{self, Lookup};
use crate::envelope::ReportEnvelope;
use crate::problem::Problem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theory {
    Hh,
    Hc,
    Hp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Algebra,
    Crossed,
    Block,
}

/// Flags shared by every command. They override the problem file.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub max_degree: Option<usize>,
    pub bar_degree: Option<usize>,
    pub ambient_cap: Option<usize>,
    pub cache_dir: Option<PathBuf>,
}

impl Options {
    fn apply(&self, t: Truncation) -> Truncation {
        Truncation {
            forms: self.max_degree.unwrap_or(t.forms),
            bar: self.bar_degree.unwrap_or(t.bar),
            cap: self.ambient_cap.unwrap_or(t.cap),
            ..t
        }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOT_STABILIZED: i32 = 2;

/// A finished command: what to print, the exit code and any warnings.
pub struct Outcome<P> {
    pub envelope: ReportEnvelope<P>,
    pub exit: i32,
    pub warnings: Vec<String>,
}

#[derive(Debug)]
pub enum CommandError {
    Engine(Error),
    Usage(String),
    Io(std::io::Error),
}

impl std::fmt::Display for CommandError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CommandError::Engine(e) => write!(f, "{e}"),
            CommandError::Usage(s) => f.write_str(s),
            CommandError::Io(e) => write!(f, "i/o: {e}"),
        }
    }
}

impl std::error::Error for CommandError {}

impl From<Error> for CommandError {
    fn from(e: Error) -> Self {
        CommandError::Engine(e)
    }
}

impl From<std::io::Error> for CommandError {
    fn from(e: std::io::Error) -> Self {
        CommandError::Io(e)
    }
}

type CmdResult<T> = Result<T, CommandError>;

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// The named example with the same algebra and action, if any, so that its
/// pinned truncations apply.
fn manifest_id(p: &Problem) -> Option<&'static str> {
    named_examples().iter().find_map(|ex| {
        let s = ex.setting().ok()?;
        let same = s.algebra == p.algebra
            && s.action.matrices() == p.action.matrices()
            && s.group().table() == p.group().table();
        same.then_some(ex.id)
    })
}

fn setting(p: &Problem) -> CmdResult<Setting> {
    Ok(Setting::new(p.name.clone(), p.algebra.clone(), p.action.clone())?)
}

fn target_label(target: Target, element: Option<usize>) -> String {
    match (target, element) {
        (Target::Block, Some(v)) => format!("block [{v}]"),
        (t, _) => format!("{t:?}").to_lowercase(),
    }
}

fn build_target(p: &Problem, target: Target, element: Option<usize>, t: &Truncation) -> CmdResult<MixedComplex> {
    let fc = match target {
        Target::Algebra => build_forms_with_cap(&p.algebra, t.forms, t.cap)?,
        Target::Crossed => build_forms_with_cap(&setting(p)?.crossed()?, t.forms, t.cap)?,
        Target::Block => {
            let v = element.ok_or_else(|| CommandError::Usage("--target block needs --element".into()))?;
            let g = p.group();
            if v >= g.order() {
                return Err(CommandError::Usage(format!("element {v} is not in a group of order {}", g.order())));
            }
            let classes = g.conjugacy_classes();
            let class = &classes.classes()[classes.class_of(v)];
            class_block(&setting(p)?.crossed()?, g, class, t.forms, t.cap)?
        }
    };
    Ok(fc.into_complex())
}

fn cache_key(p: &Problem, target: Target, element: Option<usize>, t: &Truncation) -> String {
    let canon = format!("{}|{}|{}|{}", p.input_hash, target_label(target, element), t.forms, t.cap);
    hex(&Sha256::digest(canon.as_bytes()))[..32].to_string()
}

/// The target complex, through the cache when one is configured.
fn complex_for(
    p: &Problem,
    target: Target,
    element: Option<usize>,
    t: &Truncation,
    opts: &Options,
    warnings: &mut Vec<String>,
) -> CmdResult<MixedComplex> {
    let Some(dir) = &opts.cache_dir else {
        return build_target(p, target, element, t);
    };
    let key = cache_key(p, target, element, t);
    match cache::load(dir, &key) {
        Lookup::Hit(c) => return Ok(c),
        Lookup::Stale(why) => warnings.push(format!("ignoring cache entry {key}: {why}; recomputing")),
        Lookup::Miss => {}
    }
    let c = build_target(p, target, element, t)?;
    cache::store(dir, &key, &c)?;
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputePayload {
    pub problem: String,
    pub theory: Theory,
    pub target: String,
    pub complex_dims: Vec<usize>,
    /// HH or HC per degree.
    pub profile: Option<HomologyProfile>,
    /// HP with its stabilization data.
    pub periodic: Option<PeriodicProfile>,
}

/// HH, HC (degrees below the truncation) or HP of the target complex.
pub fn compute(
    p: &Problem,
    theory: Theory,
    target: Target,
    element: Option<usize>,
    opts: &Options,
) -> CmdResult<Outcome<ComputePayload>> {
    let start = Instant::now();
    let t = opts.apply(p.truncation(Truncation::default()));
    let mut warnings = Vec::new();
    let c = complex_for(p, target, element, &t, opts, &mut warnings)?;
    if t.forms == 0 {
        return Err(CommandError::Usage("--max-degree must be at least 1".into()));
    }
    let up_to = t.forms - 1;
    let (profile, periodic) = match theory {
        Theory::Hh => (Some(hochschild_dims(&c, up_to)?), None),
        Theory::Hc => (Some(cyclic_dims(&c, up_to)?), None),
        Theory::Hp => match periodic_dims(&c, t.window) {
            Ok(pp) => (None, Some(pp)),
            Err(Error::Truncation(why)) => {
                warnings.push(format!("{why}; reporting the cyclic homology that was reached"));
                let hc = cyclic_dims(&c, up_to)?.dims;
                let last = |parity: usize| hc.iter().enumerate().rev().find(|(n, _)| n % 2 == parity).map_or(0, |(_, &x)| x);
                let partial = PeriodicProfile {
                    even: last(0),
                    odd: last(1),
                    stabilized: false,
                    even_s_ranks: vec![],
                    odd_s_ranks: vec![],
                    hc,
                    truncation: t.forms,
                    windows: [0, 0],
                };
                (None, Some(partial))
            }
            Err(e) => return Err(e.into()),
        },
    };
    let exit = match &periodic {
        Some(pp) if !pp.stabilized => EXIT_NOT_STABILIZED,
        _ => EXIT_OK,
    };
    let payload = ComputePayload {
        problem: p.name.clone(),
        theory,
        target: target_label(target, element),
        complex_dims: c.dims().to_vec(),
        profile,
        periodic,
    };
    Ok(Outcome { envelope: ReportEnvelope::new("compute", &p.input_hash, payload, elapsed_ms(start)), exit, warnings })
}

/// Parameters of `verify` beyond the problem.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub theorem: TheoremId,
    /// Restrict to one group element (class checks) instead of all classes.
    pub element: Option<usize>,
    /// Restrict to one subgroup, given by its members.
    pub subgroup: Option<Vec<usize>>,
    /// Coset representatives for the coset embedding, in canonical coset order.
    pub section: Option<Vec<usize>>,
    /// Number of points for the nilpotent extension check.
    pub points: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyPayload {
    pub problem: String,
    pub theorem: TheoremId,
    pub verdict: Verdict,
    pub reports: Vec<VerificationReport>,
}

fn subgroups(p: &Problem, only: &Option<Vec<usize>>) -> CmdResult<Vec<Subgroup>> {
    let g = p.group();
    match only {
        Some(m) => Ok(vec![Subgroup::from_members(g, m.clone())?]),
        None => Ok(g.subgroups()),
    }
}

fn elements(p: &Problem, only: Option<usize>, skip_identity: bool) -> CmdResult<Vec<usize>> {
    let g = p.group();
    match only {
        Some(v) if v < g.order() => Ok(vec![v]),
        Some(v) => Err(CommandError::Usage(format!("element {v} is not in a group of order {}", g.order()))),
        None => {
            let cl = g.conjugacy_classes();
            Ok((0..cl.num_classes())
                .map(|c| cl.representative(c))
                .filter(|&v| !(skip_identity && v == g.identity()))
                .collect())
        }
    }
}

/// Combined verdict: any failure fails, otherwise any instability is
/// reported as such.
pub fn overall(reports: &[VerificationReport]) -> Verdict {
    if reports.iter().any(|r| r.verdict == Verdict::Fail) {
        Verdict::Fail
    } else if reports.iter().any(|r| r.verdict == Verdict::NotStabilized) {
        Verdict::NotStabilized
    } else {
        Verdict::Pass
    }
}

pub fn verify(p: &Problem, v: &VerifyOptions, opts: &Options) -> CmdResult<Outcome<VerifyPayload>> {
    let start = Instant::now();
    let base = pinned(v.theorem, manifest_id(p).unwrap_or("*"));
    let t = opts.apply(p.truncation(base));
    let s = setting(p)?;
    let g = p.group();
    let reports = match v.theorem {
        TheoremId::Decomposition => vec![verify_decomposition(&s, t)?],
        TheoremId::CosetEmbedding => subgroups(p, &v.subgroup)?
            .iter()
            .map(|u| {
                let sec = match &v.section {
                    Some(reps) => CosetSection::with_representatives(g, u, reps.clone())?,
                    None => CosetSection::canonical(g, u),
                };
                verify_coset_embedding(&s, u, &sec, t)
            })
            .collect::<Result<Vec<_>, _>>()?,
        TheoremId::FreeModule => subgroups(p, &v.subgroup)?
            .iter()
            .map(|u| verify_free_module(&s, u, t))
            .collect::<Result<Vec<_>, _>>()?,
        TheoremId::ClassReduction => elements(p, v.element, false)?
            .into_iter()
            .map(|x| verify_class_reduction(&s, x, t))
            .collect::<Result<Vec<_>, _>>()?,
        TheoremId::CentralizerExtension => elements(p, v.element, false)?
            .into_iter()
            .map(|x| verify_centralizer_extension(&s, x, t))
            .collect::<Result<Vec<_>, _>>()?,
        TheoremId::Homogeneous => vec![verify_homogeneous(&s, t)?],
        TheoremId::Elliptic => vec![verify_elliptic(&s, t)?],
        TheoremId::Burghelea => vec![verify_burghelea(g, t)?],
        TheoremId::Goodwillie => vec![verify_goodwillie(&p.name, &p.algebra, p.grading.as_ref(), v.points, t)?],
        TheoremId::Cocycles => vec![verify_cocycles(t)?],
    };
    let verdict = overall(&reports);
    let exit = match verdict {
        Verdict::Pass => EXIT_OK,
        Verdict::NotStabilized => EXIT_NOT_STABILIZED,
        Verdict::Fail => EXIT_ERROR,
    };
    let payload = VerifyPayload { problem: p.name.clone(), theorem: v.theorem, verdict, reports };
    Ok(Outcome {
        envelope: ReportEnvelope::new("verify", &p.input_hash, payload, elapsed_ms(start)),
        exit,
        warnings: vec![],
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachePayload {
    pub key: String,
    pub path: String,
    /// Whether a usable entry existed before this run.
    pub was_cached: bool,
    /// Whether the cached entry matched a fresh computation byte for byte.
    pub identical: Option<bool>,
    pub dims: Vec<usize>,
}

/// Builds the target complex, compares it with any cached copy and stores
/// it.
pub fn cache_complex(
    p: &Problem,
    target: Target,
    element: Option<usize>,
    opts: &Options,
) -> CmdResult<Outcome<CachePayload>> {
    let start = Instant::now();
    let dir = opts.cache_dir.clone().ok_or_else(|| CommandError::Usage("cache needs --cache-dir".into()))?;
    let t = opts.apply(p.truncation(Truncation::default()));
    let key = cache_key(p, target, element, &t);
    let fresh = build_target(p, target, element, &t)?;
    let mut warnings = Vec::new();
    let (was_cached, identical) = match cache::load(&dir, &key) {
        Lookup::Hit(c) => {
            let on_disk = std::fs::read(cache::path_for(&dir, &key))?;
            (true, Some(c == fresh && on_disk == cache::encode(&key, &fresh)))
        }
        Lookup::Stale(why) => {
            warnings.push(format!("ignoring cache entry {key}: {why}; recomputing"));
            (false, None)
        }
        Lookup::Miss => (false, None),
    };
    if identical == Some(false) {
        warnings.push("cached complex differs from a fresh computation; replacing it".into());
    }
    let path = cache::store(&dir, &key, &fresh)?;
    let exit = if identical == Some(false) { EXIT_ERROR } else { EXIT_OK };
    let payload =
        CachePayload { key, path: path.display().to_string(), was_cached, identical, dims: fresh.dims().to_vec() };
    Ok(Outcome { envelope: ReportEnvelope::new("cache", &p.input_hash, payload, elapsed_ms(start)), exit, warnings })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfCase {
    pub label: String,
    pub forms: usize,
    pub dims: Vec<usize>,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestPayload {
    pub seed: u64,
    pub cases: Vec<SelfCase>,
    pub passed: bool,
}

fn identity_case(label: String, a: &StructureAlgebra, forms: usize, cap: usize) -> SelfCase {
    match build_forms_with_cap(a, forms, cap) {
        Ok(fc) => {
            let r = fc.complex().check_identities();
            SelfCase {
                label,
                forms,
                dims: fc.complex().dims().to_vec(),
                passed: r.is_ok(),
                detail: r.err().map(|e| e.to_string()).unwrap_or_default(),
            }
        }
        Err(e) => SelfCase { label, forms, dims: vec![], passed: false, detail: e.to_string() },
    }
}

/// `b² = B² = bB + Bb = 0` on `count` random algebras of dimension at most
/// 3 at degree 4, and on every preset and named crossed product at the
/// largest degree up to 5 under the cap.
pub fn selftest(seed: u64, count: usize, opts: &Options) -> CmdResult<Outcome<SelftestPayload>> {
    let start = Instant::now();
    let cap = opts.ambient_cap.unwrap_or(cyclix::forms::DEFAULT_AMBIENT_CAP);
    let top = opts.max_degree.unwrap_or(5);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    for i in 0..count {
        let choice = rng.random_range(0..cyclix::algebras::small_algebras().len());
        let entries: Vec<i64> = (0..6).map(|_| rng.random_range(-3..=3)).collect();
        let a = twisted_small_algebra(choice, &entries)?;
        cases.push(identity_case(format!("random #{i} (preset {choice}, twist {entries:?})"), &a, 4, cap));
    }
    let mut presets: Vec<(String, StructureAlgebra)> = vec![
        ("field".into(), StructureAlgebra::field()),
        ("dual_numbers".into(), StructureAlgebra::dual_numbers()),
        ("truncated_poly(3)".into(), StructureAlgebra::truncated_poly(3)),
    ];
    for g in [cyclix::groups::FiniteGroup::cyclic(2), cyclix::groups::FiniteGroup::cyclic(3)] {
        presets.push((format!("group_algebra({})", g.name()), StructureAlgebra::group_algebra(&g)));
    }
    presets.push(("group_algebra(S3)".into(), StructureAlgebra::group_algebra(&cyclix::groups::FiniteGroup::symmetric(3))));
    for ex in named_examples() {
        presets.push((format!("{} crossed product", ex.id), ex.setting()?.crossed()?));
    }
    for (label, a) in presets {
        let ix = WordIndex { d: a.dim() };
        let n = (1..=top).rev().find(|&n| ix.dim(n).is_some_and(|x| x <= cap)).unwrap_or(1);
        cases.push(identity_case(label, &a, n, cap));
    }
    let passed = cases.iter().all(|c| c.passed);
    let exit = if passed { EXIT_OK } else { EXIT_ERROR };
    let payload = SelftestPayload { seed, cases, passed };
    Ok(Outcome { envelope: ReportEnvelope::new("selftest", "", payload, elapsed_ms(start)), exit, warnings: vec![] })
}
