//! Problem files: one TOML document with `[algebra]`, `[group]`, `[action]`
//! and `[truncation]` sections. See `docs/problem-format.md`.

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use cyclix::algebras::{AlgebraAction, StructureAlgebra};
use cyclix::exactlin::{Rational, SparseMatrix, SparseVec};
use cyclix::groups::FiniteGroup;
use cyclix::theorems::Truncation;

/// A number written either as an integer or as a string like `"-3/4"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    fn to_rational(&self) -> Result<Rational, String> {
        match self {
            Scalar::Int(n) => Ok(Rational::from_int(*n)),
            Scalar::Text(s) => s.trim().parse().map_err(|_| format!("{s:?} is not a rational number")),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    /// `trivial`, `cyclic`, `symmetric` or `dihedral`.
    pub preset: Option<String>,
    pub n: Option<usize>,
    /// Multiplication table, `table[a][b] = ab`.
    pub table: Option<Vec<Vec<usize>>>,
    /// Generators as permutations of `0..degree`.
    pub permutations: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    /// `field`, `dual_numbers`, `truncated_poly` or `group_algebra`.
    pub preset: Option<String>,
    pub n: Option<usize>,
    /// Group of a `group_algebra` preset.
    pub group: Option<GroupSpec>,
    pub labels: Option<Vec<String>>,
    /// Quadruples `[i, j, k, c]`: `e_i e_j` has `e_k`-coefficient `c`.
    pub constants: Option<Vec<(usize, usize, usize, Scalar)>>,
    pub unit: Option<Vec<Scalar>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    /// `trivial`, `sign` or `permutation`.
    pub preset: Option<String>,
    /// Sign weights per basis vector.
    pub degrees: Option<Vec<usize>>,
    /// `images[g][i]`: the basis vector `g` sends `e_i` to.
    pub images: Option<Vec<Vec<usize>>>,
    /// One row-major matrix per group element.
    pub matrices: Option<Vec<Vec<Vec<Scalar>>>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncationSpec {
    pub max_degree: Option<usize>,
    pub bar_degree: Option<usize>,
    pub ambient_cap: Option<usize>,
    pub window: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub name: Option<String>,
    pub algebra: AlgebraSpec,
    pub group: Option<GroupSpec>,
    pub action: Option<ActionSpec>,
    #[serde(default)]
    pub truncation: TruncationSpec,
}

/// A problem-file error with a 1-based position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for SpecError {}

fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// Where a section starts, for errors found after parsing.
fn section_position(text: &str, section: &str) -> (usize, usize) {
    let header = format!("[{section}");
    let offset = text
        .find(&format!("\n{header}"))
        .map(|i| i + 1)
        .or_else(|| text.starts_with(&header).then_some(0))
        .or_else(|| text.find(&format!("\n{section}")).map(|i| i + 1))
        .unwrap_or(0);
    position(text, offset)
}

/// A validated problem.
#[derive(Clone, Debug)]
pub struct Problem {
    pub name: String,
    pub algebra: StructureAlgebra,
    pub action: AlgebraAction,
    /// The group grading a `group_algebra` preset.
    pub grading: Option<FiniteGroup>,
    pub spec: ProblemSpec,
    pub input_hash: String,
}

impl Problem {
    pub fn group(&self) -> &FiniteGroup {
        self.action.group()
    }

    /// `base` overridden by whatever the file sets.
    pub fn truncation(&self, base: Truncation) -> Truncation {
        let t = &self.spec.truncation;
        Truncation {
            forms: t.max_degree.unwrap_or(base.forms),
            bar: t.bar_degree.unwrap_or(base.bar),
            window: t.window.unwrap_or(base.window),
            cap: t.ambient_cap.unwrap_or(base.cap),
            orbit_cap: base.orbit_cap,
        }
    }
}

impl ProblemSpec {
    /// SHA-256 of the canonical JSON form.
    pub fn content_hash(&self) -> String {
        let canon = serde_json::to_vec(self).expect("problem specs serialize");
        Sha256::digest(&canon).iter().map(|b| format!("{b:02x}")).collect()
    }
}

pub fn parse(text: &str) -> Result<Problem, SpecError> {
    let spec: ProblemSpec = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((1, 1), |s| position(text, s.start));
        SpecError { line, column, message: e.message().to_string() }
    })?;
    let at = |section: &str, message: String| {
        let (line, column) = section_position(text, section);
        SpecError { line, column, message }
    };
    let group = match &spec.group {
        Some(g) => build_group(g).map_err(|m| at("group", m))?,
        None => FiniteGroup::trivial(),
    };
    let (algebra, grading) = build_algebra(&spec.algebra).map_err(|m| at("algebra", m))?;
    let action = build_action(spec.action.as_ref(), &algebra, &group).map_err(|m| at("action", m))?;
    let name = spec.name.clone().unwrap_or_else(|| default_name(&spec, &group));
    let input_hash = spec.content_hash();
    Ok(Problem { name, algebra, action, grading, spec, input_hash })
}

fn default_name(spec: &ProblemSpec, group: &FiniteGroup) -> String {
    let a = spec.algebra.preset.clone().unwrap_or_else(|| "algebra".into());
    if group.order() == 1 {
        a
    } else {
        let act = spec.action.as_ref().and_then(|x| x.preset.clone()).unwrap_or_else(|| "trivial".into());
        format!("{a} with {} acting by {act}", group.name())
    }
}

fn need<T: Copy>(v: Option<T>, what: &str) -> Result<T, String> {
    v.ok_or_else(|| format!("missing `{what}`"))
}

fn build_group(g: &GroupSpec) -> Result<FiniteGroup, String> {
    let given = [g.preset.is_some(), g.table.is_some(), g.permutations.is_some()];
    if given.iter().filter(|&&x| x).count() != 1 {
        return Err("give exactly one of `preset`, `table`, `permutations`".into());
    }
    if let Some(t) = &g.table {
        return FiniteGroup::from_table(t.clone()).map_err(|e| e.to_string());
    }
    if let Some(p) = &g.permutations {
        let degree = p.first().map_or(1, Vec::len);
        return FiniteGroup::from_permutations(degree, p).map_err(|e| e.to_string());
    }
    let preset = g.preset.as_deref().expect("checked");
    match preset {
        "trivial" => Ok(FiniteGroup::trivial()),
        "cyclic" => match need(g.n, "n")? {
            0 => Err("cyclic group of order 0".into()),
            n => Ok(FiniteGroup::cyclic(n)),
        },
        "symmetric" => match need(g.n, "n")? {
            n @ 1..=5 => Ok(FiniteGroup::symmetric(n)),
            n => Err(format!("symmetric({n}) is outside 1..=5")),
        },
        "dihedral" => match need(g.n, "n")? {
            n @ 2.. => Ok(FiniteGroup::dihedral(n)),
            n => Err(format!("dihedral({n}) needs n >= 2")),
        },
        other => Err(format!("unknown group preset {other:?}")),
    }
}

fn build_algebra(a: &AlgebraSpec) -> Result<(StructureAlgebra, Option<FiniteGroup>), String> {
    if a.preset.is_some() == a.constants.is_some() {
        return Err("give exactly one of `preset` and `constants`".into());
    }
    if let Some(consts) = &a.constants {
        let dim = consts.iter().map(|(i, j, k, _)| i.max(j).max(k) + 1).max().unwrap_or(0);
        let labels = a.labels.clone().unwrap_or_else(|| (0..dim).map(|i| format!("e{i}")).collect());
        let quads = consts
            .iter()
            .map(|(i, j, k, c)| Ok((*i, *j, *k, c.to_rational()?)))
            .collect::<Result<Vec<_>, String>>()?;
        let unit = match &a.unit {
            Some(u) => Some(SparseVec::from_dense(&u.iter().map(Scalar::to_rational).collect::<Result<Vec<_>, _>>()?)),
            None => None,
        };
        return StructureAlgebra::new(labels, quads, unit).map(|x| (x, None)).map_err(|e| e.to_string());
    }
    match a.preset.as_deref().expect("checked") {
        "field" => Ok((StructureAlgebra::field(), None)),
        "dual_numbers" => Ok((StructureAlgebra::dual_numbers(), None)),
        "truncated_poly" => match need(a.n, "n")? {
            0 => Err("k[x]/(x^0) is zero".into()),
            n => Ok((StructureAlgebra::truncated_poly(n), None)),
        },
        "group_algebra" => {
            let g = build_group(a.group.as_ref().ok_or("missing `group` table")?)?;
            Ok((StructureAlgebra::group_algebra(&g), Some(g)))
        }
        other => Err(format!("unknown algebra preset {other:?}")),
    }
}

fn build_action(a: Option<&ActionSpec>, alg: &StructureAlgebra, group: &FiniteGroup) -> Result<AlgebraAction, String> {
    let Some(a) = a else {
        return Ok(AlgebraAction::trivial(alg, group));
    };
    let err = |e: cyclix::Error| e.to_string();
    if let Some(ms) = &a.matrices {
        let d = alg.dim();
        let mats = ms
            .iter()
            .map(|rows| {
                let dense = rows
                    .iter()
                    .map(|r| r.iter().map(Scalar::to_rational).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                if dense.len() != d || dense.iter().any(|r| r.len() != d) {
                    return Err(format!("action matrices must be {d}x{d}"));
                }
                Ok(SparseMatrix::from_dense(&dense))
            })
            .collect::<Result<Vec<_>, String>>()?;
        return AlgebraAction::new(alg, group, mats).map_err(err);
    }
    match a.preset.as_deref().unwrap_or("trivial") {
        "trivial" => Ok(AlgebraAction::trivial(alg, group)),
        "sign" => {
            let degrees = match &a.degrees {
                Some(d) => d.clone(),
                None => (0..alg.dim()).collect(),
            };
            AlgebraAction::sign(alg, group, &degrees).map_err(err)
        }
        "permutation" => {
            let images = a.images.as_ref().ok_or("missing `images`")?;
            if images.len() != group.order() || images.iter().any(|r| r.len() != alg.dim()) {
                return Err(format!("`images` must list {} rows of length {}", group.order(), alg.dim()));
            }
            AlgebraAction::permutation(alg, group, |g, i| images[g][i]).map_err(err)
        }
        other => Err(format!("unknown action preset {other:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_parse() {
        let p = parse(
            "[algebra]\npreset = \"dual_numbers\"\n[group]\npreset = \"cyclic\"\nn = 2\n[action]\npreset = \"sign\"\n",
        )
        .unwrap();
        assert_eq!(p.algebra.dim(), 2);
        assert_eq!(p.group().order(), 2);
        assert!(!p.action.is_trivial());
    }

    #[test]
    fn syntax_errors_are_positioned() {
        let e = parse("[algebra]\npreset = \"field\"\n[group\n").unwrap_err();
        assert_eq!(e.line, 3);
    }

    #[test]
    fn semantic_errors_point_at_their_section() {
        let e = parse("name = \"x\"\n\n[algebra]\npreset = \"cubic\"\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 1));
        assert!(e.message.contains("cubic"));
    }

    #[test]
    fn explicit_constants() {
        let text = "[algebra]\nconstants = [[0, 0, 0, 1], [0, 1, 1, \"1\"], [1, 0, 1, 1]]\nunit = [1, 0]\n";
        let p = parse(text).unwrap();
        assert_eq!(p.algebra.dim(), 2);
        assert!(p.algebra.is_unital());
    }

    #[test]
    fn hash_ignores_formatting() {
        let a = parse("[algebra]\npreset = \"field\"\n").unwrap();
        let b = parse("# comment\n[algebra]\npreset   =   \"field\"\n").unwrap();
        assert_eq!(a.input_hash, b.input_hash);
        let c = parse("[algebra]\npreset = \"dual_numbers\"\n").unwrap();
        assert_ne!(a.input_hash, c.input_hash);
    }
}
