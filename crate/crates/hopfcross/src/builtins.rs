//! Built-in example gallery.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{AlgebraData, Elem, HopfData};
use crate::crossed::{
    build_crossed_product, CocycleData, CrossedError, CrossedProduct, WeakActionData,
};
use crate::lin::Lin;
use crate::scalar::FieldSpec;

pub const BUILTIN_NAMES: [&str; 6] = [
    "trivial",
    "z2_trivial",
    "z4_as_cocycle_extension",
    "s3_as_action_extension",
    "klein_four",
    "sweedler_smash",
];

/// Raw data of a crossed product before assembly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedParts {
    pub a: AlgebraData,
    pub h: HopfData,
    pub action: WeakActionData,
    pub cocycle: CocycleData,
}

impl CrossedParts {
    pub fn build(self) -> Result<CrossedProduct, CrossedError> {
        build_crossed_product(self.a, self.h, self.action, self.cocycle)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownBuiltin(pub String);

impl fmt::Display for UnknownBuiltin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown built-in {:?}; known: {}", self.0, BUILTIN_NAMES.join(", "))
    }
}

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect()
}

/// `k[ℤ/2]` with basis `{1, g}`.
pub fn z2_hopf(field: FieldSpec) -> HopfData {
    HopfData::group_algebra(field, labels(&["1", "g"]), &cyclic_table(2), &[0, 1])
}

/// `k[ℤ/n]` as an algebra with basis `1, c, …, c^{n-1}` named by `gen`.
pub fn cyclic_algebra(field: FieldSpec, n: usize, gen: &str) -> AlgebraData {
    let names: Vec<String> = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => gen.to_string(),
            _ => alloc::format!("{gen}^{i}"),
        })
        .collect();
    AlgebraData::group_algebra(field, names, &cyclic_table(n))
}

/// Sweedler's four-dimensional Hopf algebra, basis `1, g, x, gx`.
pub fn sweedler_hopf(field: FieldSpec) -> HopfData {
    let one = field.one();
    let m1 = field.from_i64(-1);
    let e = |i: usize| Lin::single(i, one.clone());
    let ne = |i: usize| Lin::single(i, m1.clone());
    let z = Lin::zero;
    let mult: Vec<Vec<Elem>> = vec![
        vec![e(0), e(1), e(2), e(3)],
        vec![e(1), e(0), e(3), e(2)],
        vec![e(2), ne(3), z(), z()],
        vec![e(3), ne(2), z(), z()],
    ];
    let algebra = AlgebraData {
        field,
        labels: labels(&["1", "g", "x", "gx"]),
        mult,
    };
    let t = |a: usize, b: usize| ((a, b), one.clone());
    let comult = vec![
        [t(0, 0)].into_iter().collect(),
        [t(1, 1)].into_iter().collect(),
        [t(2, 0), t(1, 2)].into_iter().collect(),
        [t(3, 1), t(0, 3)].into_iter().collect(),
    ];
    HopfData {
        algebra,
        comult,
        counit: vec![one.clone(), one.clone(), field.zero(), field.zero()],
        antipode: vec![e(0), e(1), ne(3), e(2)],
    }
}

/// `k[y]/(y²)`.
pub fn dual_numbers(field: FieldSpec) -> AlgebraData {
    let one = field.one();
    AlgebraData {
        field,
        labels: labels(&["1", "y"]),
        mult: vec![
            vec![Lin::single(0, one.clone()), Lin::single(1, one.clone())],
            vec![Lin::single(1, one), Lin::zero()],
        ],
    }
}

/// The standard `H₄`-action on `k[y]/(y²)`: `g·y = -y`, `x·y = x_on_y · 1`.
pub fn sweedler_action(field: FieldSpec, x_on_y: i64) -> WeakActionData {
    let c = field.from_i64(x_on_y);
    let one = field.one();
    let m1 = field.from_i64(-1);
    WeakActionData {
        act: vec![
            vec![Lin::single(0, one.clone()), Lin::single(1, one.clone())],
            vec![Lin::single(0, one), Lin::single(1, m1)],
            vec![Lin::zero(), Lin::single(0, c.clone())],
            // gx·y = g·(x·y)
            vec![Lin::zero(), Lin::single(0, c)],
        ],
    }
}

pub fn builtin_parts(name: &str, field: FieldSpec) -> Result<CrossedParts, UnknownBuiltin> {
    let parts = match name {
        "trivial" => {
            let a = AlgebraData::ground(field);
            let h = HopfData::ground(field);
            trivial_parts(a, h)
        }
        "z2_trivial" => trivial_parts(AlgebraData::ground(field), z2_hopf(field)),
        "klein_four" => trivial_parts(cyclic_algebra(field, 2, "n"), z2_hopf(field)),
        "z4_as_cocycle_extension" => {
            let a = cyclic_algebra(field, 2, "n");
            let h = z2_hopf(field);
            let action = WeakActionData::trivial(&a, &h);
            let mut cocycle = CocycleData::trivial(&a, &h);
            cocycle.f[1][1] = Lin::single(1, field.one());
            CrossedParts {
                a,
                h,
                action,
                cocycle,
            }
        }
        "s3_as_action_extension" => {
            let a = cyclic_algebra(field, 3, "c");
            let h = z2_hopf(field);
            let one = field.one();
            let action = WeakActionData {
                act: vec![
                    (0..3).map(|i| Lin::single(i, one.clone())).collect(),
                    (0..3).map(|i| Lin::single((3 - i) % 3, one.clone())).collect(),
                ],
            };
            let cocycle = CocycleData::trivial(&a, &h);
            CrossedParts {
                a,
                h,
                action,
                cocycle,
            }
        }
        "sweedler_smash" => {
            let a = dual_numbers(field);
            let h = sweedler_hopf(field);
            let cocycle = CocycleData::trivial(&a, &h);
            CrossedParts {
                a,
                h,
                action: sweedler_action(field, 1),
                cocycle,
            }
        }
        other => return Err(UnknownBuiltin(other.to_string())),
    };
    Ok(parts)
}

fn trivial_parts(a: AlgebraData, h: HopfData) -> CrossedParts {
    CrossedParts {
        action: WeakActionData::trivial(&a, &h),
        cocycle: CocycleData::trivial(&a, &h),
        a,
        h,
    }
}

/// Assembled and verified built-in.
pub fn builtin(name: &str, field: FieldSpec) -> Result<CrossedProduct, BuiltinError> {
    let parts = builtin_parts(name, field).map_err(BuiltinError::Unknown)?;
    parts.build().map_err(BuiltinError::Crossed)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuiltinError {
    Unknown(UnknownBuiltin),
    Crossed(CrossedError),
}

impl fmt::Display for BuiltinError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuiltinError::Unknown(u) => write!(f, "{u}"),
            BuiltinError::Crossed(c) => write!(f, "{c}"),
        }
    }
}
