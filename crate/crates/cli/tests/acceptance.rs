//! End-to-end acceptance run. Every criterion is evaluated, one line is
//! printed per criterion, and the test fails if any of them fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use cyclix::algebras::StructureAlgebra;
use cyclix::forms::build_forms_with_cap;
use cyclix::groups::{group_homology, CosetSection, FiniteGroup, GroupModule};
use cyclix::homology::{cyclic_dims, periodic_dims};
use cyclix::theorems::{
    clear_block_cache, named_example, named_examples, pinned, verify_burghelea, verify_centralizer_extension,
    verify_class_reduction, verify_cocycles, verify_coset_embedding, verify_elliptic, verify_free_module,
    verify_goodwillie, verify_homogeneous, ActionPreset, AlgebraPreset, GroupPreset, NamedExample, Setting,
    TheoremId, Verdict, VerificationReport,
};
use cyclix_cli::cache;
use cyclix_cli::commands::{self, Options, Target, Theory};
use cyclix_cli::problem;

// Pinned budgets and tolerances.
const IDENTITY_BUDGET: Duration = Duration::from_secs(60);
const IDENTITY_RANDOM_ALGEBRAS: usize = 20;
const IDENTITY_RANDOM_DEGREE: usize = 4;
const IDENTITY_PRESET_DEGREE: usize = 5;
const IDENTITY_SEED: u64 = 2024;
const GROUND_FIELD_BUDGET: Duration = Duration::from_secs(1);
const GROUND_FIELD_HC: [usize; 5] = [1, 0, 1, 0, 1];
const GROUND_FIELD_HP: [usize; 2] = [1, 0];
const BURGHELEA_BUDGET: Duration = Duration::from_secs(300);
const BURGHELEA_TOP: usize = 4;
const NILPOTENT_POINTS: [usize; 2] = [2, 3];
const EMBEDDING_MAX_DEGREE: usize = 3;
const REDUCTION_MAX_DEGREE: usize = 3;
const COCYCLE_SAMPLE: usize = 2;
/// Dimension mismatches tolerated anywhere: none.
const EXACT: usize = 0;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into() }
    }
}

fn setting(id: &str) -> Setting {
    named_example(id).unwrap().setting().unwrap()
}

/// Reports that did not pass, as `theorem on input (verdict)`.
fn failures(reports: &[VerificationReport]) -> Vec<String> {
    reports
        .iter()
        .filter(|r| r.verdict != Verdict::Pass)
        .map(|r| {
            let checks: Vec<_> = r.failed_checks().map(|c| c.name.clone()).collect();
            let parts: Vec<_> = r.parts.iter().filter(|p| !p.matched).map(|p| p.label.clone()).collect();
            format!("{} on {} ({:?}; checks {checks:?}; parts {parts:?}; notes {:?})", r.theorem, r.input, r.verdict, r.notes)
        })
        .collect()
}

fn summarize(reports: &[VerificationReport], extra: impl FnOnce() -> Vec<String>) -> Outcome {
    let mut bad = failures(reports);
    bad.extend(extra());
    if bad.len() == EXACT {
        Outcome::new(true, format!("{} reports", reports.len()))
    } else {
        Outcome::new(false, bad.join("; "))
    }
}

fn within(o: Outcome, start: Instant, budget: Duration) -> Outcome {
    let took = start.elapsed();
    if took > budget {
        Outcome::new(false, format!("{} but took {took:.1?} against a budget of {budget:?}", o.detail))
    } else {
        Outcome::new(o.pass, format!("{} in {took:.1?}", o.detail))
    }
}

fn identities() -> Outcome {
    let start = Instant::now();
    let opts = Options { max_degree: Some(IDENTITY_PRESET_DEGREE), ..Options::default() };
    let out = commands::selftest(IDENTITY_SEED, IDENTITY_RANDOM_ALGEBRAS, &opts).unwrap();
    let p = &out.envelope.payload;
    let random_ok = p.cases.iter().take(IDENTITY_RANDOM_ALGEBRAS).all(|c| c.forms == IDENTITY_RANDOM_DEGREE);
    let bad: Vec<_> = p.cases.iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.label, c.detail)).collect();
    let below: Vec<_> = p
        .cases
        .iter()
        .skip(IDENTITY_RANDOM_ALGEBRAS)
        .filter(|c| c.forms < IDENTITY_PRESET_DEGREE)
        .map(|c| format!("{} at N={}", c.label, c.forms))
        .collect();
    let detail = format!(
        "{} random algebras at N={IDENTITY_RANDOM_DEGREE}, {} presets at N<={IDENTITY_PRESET_DEGREE} (under the cap: {below:?}) {bad:?}",
        IDENTITY_RANDOM_ALGEBRAS,
        p.cases.len() - IDENTITY_RANDOM_ALGEBRAS,
    );
    within(Outcome::new(p.passed && random_ok && bad.is_empty(), detail), start, IDENTITY_BUDGET)
}

fn ground_field() -> Outcome {
    let start = Instant::now();
    let k = StructureAlgebra::field();
    let oracle = common::bicomplex_hc(&k, GROUND_FIELD_HC.len() - 1);
    let fc = build_forms_with_cap(&k, GROUND_FIELD_HC.len(), usize::MAX).unwrap();
    let engine = cyclic_dims(fc.complex(), GROUND_FIELD_HC.len() - 1).unwrap().dims;
    let hp = periodic_dims(fc.complex(), 2).unwrap();
    let pass = oracle == GROUND_FIELD_HC && engine == GROUND_FIELD_HC && hp.dims() == Some((1, 0));
    let detail = format!("bicomplex HC {oracle:?}, forms HC {engine:?}, HP {:?} (expected {GROUND_FIELD_HP:?})", hp.dims());
    within(Outcome::new(pass, detail), start, GROUND_FIELD_BUDGET)
}

fn burghelea() -> Outcome {
    let start = Instant::now();
    let t = pinned(TheoremId::Burghelea, "*");
    let mut bad = Vec::new();
    let mut reports = Vec::new();
    for (g, even) in [(FiniteGroup::cyclic(2), 2), (FiniteGroup::cyclic(3), 3), (FiniteGroup::symmetric(3), 3)] {
        let r = verify_burghelea(&g, t).unwrap();
        let expected: Vec<usize> = (0..=BURGHELEA_TOP).map(|n| if n % 2 == 0 { even } else { 0 }).collect();
        if r.left.len() <= BURGHELEA_TOP || r.left[..=BURGHELEA_TOP] != expected[..] {
            bad.push(format!("HC of k{} is {:?}, expected {expected:?}", g.name(), r.left));
        }
        reports.push(r);
    }
    within(summarize(&reports, || bad), start, BURGHELEA_BUDGET)
}

fn goodwillie() -> Outcome {
    let t = pinned(TheoremId::Goodwillie, "*");
    let z2 = FiniteGroup::cyclic(2);
    let cases = [
        ("k", StructureAlgebra::field(), None),
        ("kZ2", StructureAlgebra::group_algebra(&z2), Some(&z2)),
        ("dual numbers", StructureAlgebra::dual_numbers(), None),
    ];
    let mut reports = Vec::new();
    for (name, a, grading) in &cases {
        for points in NILPOTENT_POINTS {
            reports.push(verify_goodwillie(name, a, *grading, points, t).unwrap());
        }
    }
    summarize(&reports, Vec::new)
}

fn coset_and_free_module(ids: &[&str]) -> Outcome {
    let mut reports = Vec::new();
    for id in ids {
        let s = setting(id);
        let ce = pinned(TheoremId::CosetEmbedding, id);
        let fm = pinned(TheoremId::FreeModule, id);
        assert!(ce.forms <= EMBEDDING_MAX_DEGREE && fm.forms <= EMBEDDING_MAX_DEGREE);
        for u in s.group().subgroups() {
            let sec = CosetSection::canonical(s.group(), &u);
            reports.push(verify_coset_embedding(&s, &u, &sec, ce).unwrap());
            reports.push(verify_free_module(&s, &u, fm).unwrap());
        }
    }
    summarize(&reports, Vec::new)
}

fn class_reduction() -> Outcome {
    let mut reports = Vec::new();
    for id in ["k-z2", "k-s3", "dual-z2"] {
        let s = setting(id);
        let g = s.group();
        let v = g.elements().find(|&x| g.element_order(x) == 2).expect("an involution");
        let t = pinned(TheoremId::ClassReduction, id);
        assert!(t.forms <= REDUCTION_MAX_DEGREE);
        reports.push(verify_class_reduction(&s, v, t).unwrap());
    }
    summarize(&reports, Vec::new)
}

fn centralizer_extension(ids: &[&str]) -> Vec<VerificationReport> {
    let mut reports = Vec::new();
    for id in ids {
        let s = setting(id);
        let classes = s.group().conjugacy_classes();
        for c in 0..classes.num_classes() {
            let t = pinned(TheoremId::CentralizerExtension, id);
            reports.push(verify_centralizer_extension(&s, classes.representative(c), t).unwrap());
        }
    }
    reports
}

fn elliptic(ids: &[&str]) -> Vec<VerificationReport> {
    ids.iter().map(|id| verify_elliptic(&setting(id), pinned(TheoremId::Elliptic, id)).unwrap()).collect()
}

fn extension_with_cohomology(reports: &[VerificationReport]) -> Outcome {
    summarize(reports, || {
        reports
            .iter()
            .filter(|r| !r.parts.iter().any(|p| p.label == "cohomology" && p.matched))
            .map(|r| format!("{}: no matching cohomology comparison", r.input))
            .collect()
    })
}

fn elliptic_sums(reports: &[VerificationReport]) -> Outcome {
    summarize(reports, || {
        reports
            .iter()
            .filter(|r| !r.parts.iter().any(|p| p.label.starts_with("sum over all classes") && p.matched))
            .map(|r| format!("{}: class sum does not match total HP", r.input))
            .collect()
    })
}

fn bar_and_maschke(reports: &[VerificationReport]) -> Outcome {
    let mut bad: Vec<String> = reports
        .iter()
        .filter(|r| {
            let bar: Vec<_> = r.checks.iter().filter(|c| c.name.contains("bar pipeline")).collect();
            bar.is_empty() || bar.iter().any(|c| !c.passed)
        })
        .map(|r| format!("{} on {}: bar pipeline missing or disagreeing", r.theorem, r.input))
        .collect();
    let bar = pinned(TheoremId::Elliptic, "*").bar;
    for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(4), FiniteGroup::symmetric(3)] {
        let ad = GroupModule::adjoint(&g, &g.elements().collect::<Vec<_>>()).unwrap();
        for n in 1..bar {
            let h = group_homology(&g, &ad, n, bar).unwrap();
            if h != 0 {
                bad.push(format!("H_{n}({}; adjoint) = {h}", g.name()));
            }
        }
    }
    let checks: usize = reports.iter().map(|r| r.checks.iter().filter(|c| c.name.contains("bar pipeline")).count()).sum();
    if bad.is_empty() {
        Outcome::new(true, format!("{checks} bar comparisons, adjoint homology vanishes below degree {bar}"))
    } else {
        Outcome::new(false, bad.join("; "))
    }
}

fn cocycles() -> Outcome {
    let r = verify_cocycles(pinned(TheoremId::Cocycles, "*")).unwrap();
    let sample = r.right.first().copied();
    let o = summarize(std::slice::from_ref(&r), Vec::new);
    Outcome::new(o.pass && sample == Some(COCYCLE_SAMPLE), format!("{}; c(0,1,0) = {sample:?}", o.detail))
}

fn problem_text(ex: &NamedExample, max_degree: usize) -> String {
    let algebra = match ex.algebra {
        AlgebraPreset::Field => "preset = \"field\"".to_string(),
        AlgebraPreset::DualNumbers => "preset = \"dual_numbers\"".to_string(),
        other => panic!("no problem-file form for {other:?}"),
    };
    let group = match ex.group {
        GroupPreset::Cyclic(n) => format!("preset = \"cyclic\"\nn = {n}"),
        GroupPreset::Symmetric(n) => format!("preset = \"symmetric\"\nn = {n}"),
        other => panic!("no problem-file form for {other:?}"),
    };
    let action = match ex.action {
        ActionPreset::Trivial => "trivial",
        ActionPreset::Sign => "sign",
    };
    format!(
        "name = \"{}\"\n[algebra]\n{algebra}\n[group]\n{group}\n[action]\npreset = \"{action}\"\n[truncation]\nmax_degree = {max_degree}\n",
        ex.id
    )
}

/// Everything a run produces, with timings removed, as bytes.
fn run_suite(cache_dir: Option<&std::path::Path>) -> Vec<(String, Vec<u8>)> {
    clear_block_cache();
    let opts = Options { cache_dir: cache_dir.map(|d| d.to_path_buf()), ..Options::default() };
    let mut out = Vec::new();
    for ex in named_examples() {
        let s = ex.setting().unwrap();
        let d = s.crossed().unwrap().dim();
        let n = (1..=5).rev().find(|&n| d.pow(n as u32 + 1) + d.pow(n as u32) <= cyclix::forms::DEFAULT_AMBIENT_CAP).unwrap();
        let p = problem::parse(&problem_text(ex, n)).unwrap();
        for theory in [Theory::Hh, Theory::Hc, Theory::Hp] {
            let mut env = commands::compute(&p, theory, Target::Crossed, None, &opts).unwrap().envelope;
            env.timings.wall_ms = 0;
            out.push((format!("{} {theory:?}", ex.id), serde_json::to_vec(&env).unwrap()));
        }
        let fc = build_forms_with_cap(&s.crossed().unwrap(), n, cyclix::forms::DEFAULT_AMBIENT_CAP).unwrap();
        out.push((format!("{} matrices", ex.id), cache::encode(ex.id, fc.complex())));
        // The cache only holds complexes, so cached runs repeat just the artifacts above.
        if cache_dir.is_some() {
            continue;
        }
        for theorem in [TheoremId::Decomposition, TheoremId::Homogeneous] {
            let r = match theorem {
                TheoremId::Decomposition => cyclix::theorems::verify_decomposition(&s, pinned(theorem, ex.id)),
                _ => verify_homogeneous(&s, pinned(theorem, ex.id)),
            };
            out.push((format!("{} {theorem}", ex.id), serde_json::to_vec(&r.unwrap().without_timing()).unwrap()));
        }
    }
    out
}

fn determinism(reports: &[VerificationReport], rerun: impl FnOnce() -> Vec<VerificationReport>) -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let first = run_suite(None);
    let repeated = run_suite(None);
    let filled = run_suite(Some(dir.path()));
    let restored = run_suite(Some(dir.path()));
    let mut bad = Vec::new();
    for (label, other) in [("repeated", &repeated), ("cache-filling", &filled), ("cache-restored", &restored)] {
        for (name, a) in &first {
            let Some((_, b)) = other.iter().find(|(n, _)| n == name) else { continue };
            if a != b {
                bad.push(format!("{label} run differs on {name}"));
            }
        }
    }
    clear_block_cache();
    let again = rerun();
    let strip = |rs: &[VerificationReport]| rs.iter().map(|r| r.without_timing()).collect::<Vec<_>>();
    if strip(reports) != strip(&again) {
        bad.push("theorem reports differ between runs".into());
    }
    if bad.is_empty() {
        Outcome::new(true, format!("{} artifacts and {} theorem reports bit-identical", first.len(), reports.len()))
    } else {
        Outcome::new(false, bad.join("; "))
    }
}

#[test]
fn acceptance() {
    let mut lines: Vec<(usize, &str, Outcome)> = Vec::new();
    let mut record = |n, what, o: Outcome| {
        // Written to the raw handle so the lines show even when the harness captures output.
        let line = format!("{} criterion {n}: {what}: {}\n", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        std::io::stderr().write_all(line.as_bytes()).unwrap();
        lines.push((n, what, o));
    };

    record(1, "b, B identities", identities());
    record(2, "ground field HC and HP", ground_field());
    record(3, "Burghelea decomposition of kG", burghelea());
    record(4, "nilpotent invariance of HP", goodwillie());
    let embedding_ids = ["k-z2", "k-z4", "k-s3", "dual-z2", "dual-z4", "dual-s3"];
    record(5, "coset embedding and free-module description", coset_and_free_module(&embedding_ids));
    record(6, "class reduction", class_reduction());

    let extension_ids = ["k-z2", "k-z3", "k-s3", "dual-z2"];
    let elliptic_ids = ["k-z2", "k-z3", "k-s3", "dual-z2", "dual-z3", "dual-s3"];
    let start = Instant::now();
    let ext = centralizer_extension(&extension_ids);
    record(7, "centralizer extension, homology and cohomology", within(extension_with_cohomology(&ext), start, Duration::MAX));
    let start = Instant::now();
    let ell = elliptic(&elliptic_ids);
    record(8, "elliptic classes sum to HP", within(elliptic_sums(&ell), start, Duration::MAX));
    let both: Vec<_> = ext.iter().chain(&ell).cloned().collect();
    record(9, "bar pipeline against shortcut, Maschke", bar_and_maschke(&both));
    record(10, "extension cocycles", cocycles());
    let rerun = || centralizer_extension(&extension_ids).into_iter().chain(elliptic(&elliptic_ids)).collect();
    record(11, "determinism", determinism(&both, rerun));

    let failed: Vec<_> = lines.iter().filter(|(_, _, o)| !o.pass).map(|(n, w, _)| format!("{n} ({w})")).collect();
    assert!(failed.is_empty(), "failed criteria: {}", failed.join(", "));
}
