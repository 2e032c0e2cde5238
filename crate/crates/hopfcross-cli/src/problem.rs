//! The JSON problem file: raw serde shape, dimension checks, and the
//! conversion to and from the library's structure-constant types.

use std::path::Path;

use hopfcross::algebra::{AlgebraData, Elem, HopfData};
use hopfcross::builtins::{builtin_parts, CrossedParts};
use hopfcross::crossed::{CocycleData, WeakActionData};
use hopfcross::homology::Module;
use hopfcross::lin::Lin;
use hopfcross::{BimoduleData, FieldSpec, Scalar};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_CAP: usize = 4;

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("parse error at `{field}` (line {line}, column {column}): {message}")]
    Parse {
        field: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("dimension mismatch in `{tensor}`: expected {expected}, found {found}")]
    DimensionMismatch {
        tensor: String,
        expected: usize,
        found: usize,
    },
    #[error("bad scalar at `{at}`: {message}")]
    Scalar { at: String, message: String },
    #[error("bad field {0:?}; use \"q\" or \"fp:P\" with P prime")]
    Field(String),
    #[error("{0}")]
    Unknown(String),
}

/// A scalar as written: prime-field residues are integers, rationals are
/// `"p/q"` strings. Either form is accepted on input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawScalar {
    Int(i64),
    Text(String),
}

/// Dense coordinate vector of one element.
pub type RawVec = Vec<RawScalar>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawAlgebra {
    pub labels: Vec<String>,
    /// `mult[i][j]` is the coordinate vector of `e_i e_j`.
    pub mult: Vec<Vec<RawVec>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawHopf {
    pub labels: Vec<String>,
    pub mult: Vec<Vec<RawVec>>,
    /// `comult[i][j][k]` is the coefficient of `e_j ⊗ e_k` in `Δ(e_i)`.
    pub comult: Vec<Vec<RawVec>>,
    pub counit: RawVec,
    pub antipode: Vec<RawVec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawBimodule {
    pub dim: usize,
    /// `left[e][m]` is `e · m`.
    pub left: Vec<Vec<RawVec>>,
    /// `right[m][e]` is `m · e`.
    pub right: Vec<Vec<RawVec>>,
}

/// A one-sided module: a shorthand name or explicit `act[e][x]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawModule {
    Named(String),
    Explicit { dim: usize, act: Vec<Vec<RawVec>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTor {
    pub right: RawModule,
    pub left: RawModule,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(default)]
    pub oracle: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawProblem {
    pub field: String,
    pub algebra: RawAlgebra,
    pub hopf: RawHopf,
    /// `action[h][a]` is `a^h`.
    pub action: Vec<Vec<RawVec>>,
    /// `cocycle[h][l]` is `f(h, l)`.
    pub cocycle: Vec<Vec<RawVec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bimodule: Option<RawBimodule>,
    #[serde(default)]
    pub options: Options,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tor: Option<RawTor>,
}

/// Module data for `tor`, resolved once `E` is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleSpec {
    Trivial,
    Regular,
    Explicit(Module),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorSpec {
    pub right: ModuleSpec,
    pub left: ModuleSpec,
}

/// A dimension-checked problem over a concrete field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub field: FieldSpec,
    pub parts: CrossedParts,
    /// `None` means `M = E`.
    pub bimodule: Option<BimoduleData>,
    pub options: Options,
    pub tor: Option<TorSpec>,
}

pub fn parse_field(s: &str) -> Result<FieldSpec, ProblemError> {
    let bad = || ProblemError::Field(s.to_string());
    match s.trim() {
        "q" | "Q" => Ok(FieldSpec::Rationals),
        t => {
            let p = t.strip_prefix("fp:").ok_or_else(bad)?;
            let p: u64 = p.parse().map_err(|_| bad())?;
            FieldSpec::prime(p).map_err(|_| bad())
        }
    }
}

pub fn parse_problem(path: &Path, field_override: Option<FieldSpec>) -> Result<ProblemFile, ProblemError> {
    let text = std::fs::read_to_string(path).map_err(|source| ProblemError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_problem_str(&text, field_override)
}

pub fn parse_problem_str(text: &str, field_override: Option<FieldSpec>) -> Result<ProblemFile, ProblemError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawProblem = serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.into_inner();
        ProblemError::Parse {
            field,
            line: inner.line(),
            column: inner.column(),
            message: inner.to_string(),
        }
    })?;
    from_raw(&raw, field_override)
}

fn check(tensor: impl Into<String>, expected: usize, found: usize) -> Result<(), ProblemError> {
    if expected == found {
        Ok(())
    } else {
        Err(ProblemError::DimensionMismatch {
            tensor: tensor.into(),
            expected,
            found,
        })
    }
}

fn scalar(fs: FieldSpec, at: &str, x: &RawScalar) -> Result<Scalar, ProblemError> {
    match x {
        RawScalar::Int(n) => Ok(fs.from_i64(*n)),
        RawScalar::Text(s) => fs.parse(s).map_err(|e| ProblemError::Scalar {
            at: at.to_string(),
            message: e.to_string(),
        }),
    }
}

fn elem(fs: FieldSpec, at: &str, v: &RawVec, dim: usize) -> Result<Elem, ProblemError> {
    check(at, dim, v.len())?;
    let mut out = Lin::zero();
    for (i, x) in v.iter().enumerate() {
        out.add_term(i, scalar(fs, &format!("{at}[{i}]"), x)?);
    }
    Ok(out)
}

/// A `rows × cols` table of elements of dimension `dim`.
fn table(fs: FieldSpec, at: &str, t: &[Vec<RawVec>], rows: usize, cols: usize, dim: usize) -> Result<Vec<Vec<Elem>>, ProblemError> {
    check(at, rows, t.len())?;
    t.iter()
        .enumerate()
        .map(|(i, row)| {
            let at_i = format!("{at}[{i}]");
            check(at_i.as_str(), cols, row.len())?;
            row.iter()
                .enumerate()
                .map(|(j, v)| elem(fs, &format!("{at_i}[{j}]"), v, dim))
                .collect()
        })
        .collect()
}

fn algebra(fs: FieldSpec, at: &str, labels: &[String], mult: &[Vec<RawVec>]) -> Result<AlgebraData, ProblemError> {
    let n = labels.len();
    let mult = table(fs, &format!("{at}.mult"), mult, n, n, n)?;
    AlgebraData::new(fs, labels.to_vec(), mult).map_err(|e| ProblemError::Unknown(e.to_string()))
}

fn module(fs: FieldSpec, at: &str, m: &RawModule) -> Result<ModuleSpec, ProblemError> {
    match m {
        RawModule::Named(s) if s == "trivial" => Ok(ModuleSpec::Trivial),
        RawModule::Named(s) if s == "regular" => Ok(ModuleSpec::Regular),
        RawModule::Named(s) => Err(ProblemError::Unknown(format!("{at}: unknown module {s:?}; use \"trivial\", \"regular\" or {{dim, act}}"))),
        RawModule::Explicit { dim, act } => {
            let rows = act.len();
            Ok(ModuleSpec::Explicit(Module {
                dim: *dim,
                act: table(fs, &format!("{at}.act"), act, rows, *dim, *dim)?,
            }))
        }
    }
}

pub fn from_raw(raw: &RawProblem, field_override: Option<FieldSpec>) -> Result<ProblemFile, ProblemError> {
    let fs = match field_override {
        Some(f) => f,
        None => parse_field(&raw.field)?,
    };
    let a = algebra(fs, "algebra", &raw.algebra.labels, &raw.algebra.mult)?;
    let hd = raw.hopf.labels.len();
    let ha = algebra(fs, "hopf", &raw.hopf.labels, &raw.hopf.mult)?;

    check("hopf.comult", hd, raw.hopf.comult.len())?;
    let mut comult = Vec::with_capacity(hd);
    for (i, m) in raw.hopf.comult.iter().enumerate() {
        let at = format!("hopf.comult[{i}]");
        check(at.as_str(), hd, m.len())?;
        let mut d = Lin::zero();
        for (j, row) in m.iter().enumerate() {
            let at_j = format!("{at}[{j}]");
            check(at_j.as_str(), hd, row.len())?;
            for (k, x) in row.iter().enumerate() {
                d.add_term((j, k), scalar(fs, &format!("{at_j}[{k}]"), x)?);
            }
        }
        comult.push(d);
    }
    check("hopf.counit", hd, raw.hopf.counit.len())?;
    let counit = raw
        .hopf
        .counit
        .iter()
        .enumerate()
        .map(|(i, x)| scalar(fs, &format!("hopf.counit[{i}]"), x))
        .collect::<Result<Vec<_>, _>>()?;
    check("hopf.antipode", hd, raw.hopf.antipode.len())?;
    let antipode = raw
        .hopf
        .antipode
        .iter()
        .enumerate()
        .map(|(i, v)| elem(fs, &format!("hopf.antipode[{i}]"), v, hd))
        .collect::<Result<Vec<_>, _>>()?;
    let h = HopfData::new(ha, comult, counit, antipode).map_err(|e| ProblemError::Unknown(e.to_string()))?;

    let ad = a.dim();
    let action = WeakActionData {
        act: table(fs, "action", &raw.action, hd, ad, ad)?,
    };
    let cocycle = CocycleData {
        f: table(fs, "cocycle", &raw.cocycle, hd, hd, ad)?,
    };

    let ed = ad * hd;
    let bimodule = match &raw.bimodule {
        None => None,
        Some(b) => Some(BimoduleData {
            dim: b.dim,
            left: table(fs, "bimodule.left", &b.left, ed, b.dim, b.dim)?,
            right: table(fs, "bimodule.right", &b.right, b.dim, ed, b.dim)?,
        }),
    };
    let tor = match &raw.tor {
        None => None,
        Some(t) => {
            let (right, left) = (module(fs, "tor.right", &t.right)?, module(fs, "tor.left", &t.left)?);
            for (at, m) in [("tor.right.act", &right), ("tor.left.act", &left)] {
                if let ModuleSpec::Explicit(m) = m {
                    check(at, ed, m.act.len())?;
                }
            }
            Some(TorSpec { right, left })
        }
    };

    Ok(ProblemFile {
        field: fs,
        parts: CrossedParts { a, h, action, cocycle },
        bimodule,
        options: raw.options.clone(),
        tor,
    })
}

fn raw_scalar(x: &Scalar) -> RawScalar {
    match x.residue() {
        Some(v) => RawScalar::Int(v as i64),
        None => RawScalar::Text(x.to_text()),
    }
}

fn raw_vec(fs: FieldSpec, x: &Elem, dim: usize) -> RawVec {
    (0..dim)
        .map(|i| raw_scalar(&x.get(&i).cloned().unwrap_or_else(|| fs.zero())))
        .collect()
}

fn raw_table(fs: FieldSpec, t: &[Vec<Elem>], dim: usize) -> Vec<Vec<RawVec>> {
    t.iter()
        .map(|row| row.iter().map(|x| raw_vec(fs, x, dim)).collect())
        .collect()
}

pub fn to_raw(p: &ProblemFile) -> RawProblem {
    let fs = p.field;
    let CrossedParts { a, h, action, cocycle } = &p.parts;
    let (ad, hd) = (a.dim(), h.dim());
    let module = |m: &ModuleSpec| match m {
        ModuleSpec::Trivial => RawModule::Named("trivial".into()),
        ModuleSpec::Regular => RawModule::Named("regular".into()),
        ModuleSpec::Explicit(m) => RawModule::Explicit {
            dim: m.dim,
            act: raw_table(fs, &m.act, m.dim),
        },
    };
    RawProblem {
        field: fs.to_string(),
        algebra: RawAlgebra {
            labels: a.labels.clone(),
            mult: raw_table(fs, &a.mult, ad),
        },
        hopf: RawHopf {
            labels: h.algebra.labels.clone(),
            mult: raw_table(fs, &h.algebra.mult, hd),
            comult: h
                .comult
                .iter()
                .map(|d| {
                    (0..hd)
                        .map(|j| {
                            (0..hd)
                                .map(|k| raw_scalar(&d.get(&(j, k)).cloned().unwrap_or_else(|| fs.zero())))
                                .collect()
                        })
                        .collect()
                })
                .collect(),
            counit: h.counit.iter().map(raw_scalar).collect(),
            antipode: h.antipode.iter().map(|x| raw_vec(fs, x, hd)).collect(),
        },
        action: raw_table(fs, &action.act, ad),
        cocycle: raw_table(fs, &cocycle.f, ad),
        bimodule: p.bimodule.as_ref().map(|b| RawBimodule {
            dim: b.dim,
            left: raw_table(fs, &b.left, b.dim),
            right: raw_table(fs, &b.right, b.dim),
        }),
        options: p.options.clone(),
        tor: p.tor.as_ref().map(|t| RawTor {
            right: module(&t.right),
            left: module(&t.left),
        }),
    }
}

pub fn emit(p: &ProblemFile) -> String {
    let mut s = serde_json::to_string_pretty(&to_raw(p)).expect("problem files always serialize");
    s.push('\n');
    s
}

/// Gallery entry as a problem file with `M = E` and trivial `tor` modules
/// whenever `A = k`.
pub fn builtin_problem(name: &str, field: FieldSpec) -> Result<ProblemFile, ProblemError> {
    let parts = builtin_parts(name, field).map_err(|e| ProblemError::Unknown(e.to_string()))?;
    let tor = (parts.a.dim() == 1).then_some(TorSpec {
        right: ModuleSpec::Trivial,
        left: ModuleSpec::Trivial,
    });
    Ok(ProblemFile {
        field,
        parts,
        bimodule: None,
        options: Options::default(),
        tor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use hopfcross::builtins::BUILTIN_NAMES;

    #[test]
    fn field_names() {
        assert_eq!(parse_field("q").unwrap(), FieldSpec::Rationals);
        assert_eq!(parse_field("fp:7").unwrap(), FieldSpec::prime(7).unwrap());
        assert!(parse_field("fp:6").is_err());
        assert!(parse_field("r").is_err());
    }

    #[test]
    fn gallery_round_trips() {
        for fs in [FieldSpec::Rationals, FieldSpec::prime(2).unwrap(), FieldSpec::prime(5).unwrap()] {
            for name in BUILTIN_NAMES {
                let p = builtin_problem(name, fs).unwrap();
                let text = emit(&p);
                assert_eq!(parse_problem_str(&text, None).unwrap(), p, "{name} over {fs}");
                assert_eq!(emit(&parse_problem_str(&text, None).unwrap()), text);
            }
        }
    }

    #[test]
    fn rationals_are_strings_and_residues_are_integers() {
        let p = builtin_problem("sweedler_smash", FieldSpec::Rationals).unwrap();
        let v: serde_json::Value = serde_json::from_str(&emit(&p)).unwrap();
        assert_eq!(v["hopf"]["counit"][0], serde_json::json!("1"));
        assert_eq!(v["action"][1][1][1], serde_json::json!("-1"));
        let p = builtin_problem("sweedler_smash", FieldSpec::prime(3).unwrap()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&emit(&p)).unwrap();
        assert_eq!(v["action"][1][1][1], serde_json::json!(2));
    }
}
