//! Hochschild (co)homology of a crossed product with coefficients, the
//! spectral-sequence reports built on the small complexes, and Tor.
//!
//! Every complex is built in degrees `0..=cap`; (co)homology is reported in
//! degrees `0..cap`, and degree `cap` only carries the dimension of the
//! (co)cycles there.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::coeff::{BarData, Coefficients};
use crate::complex::{check_convergence, ComplexError, FilteredComplex, SpectralPage, SpectralSequence, Variance};
use crate::crossed::{BimoduleData, CrossedProduct};
use crate::lin::Lin;
use crate::resolution::{Construction, XResolution};
use crate::scalar::Scalar;
use crate::small::{hopf_complex, AlgebraPart, SmallComplexes, SmallError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomologyError {
    NotInvertible,
    Complex(ComplexError),
    /// A module or bimodule does not fit `E`.
    ModuleShape(&'static str),
}

impl fmt::Display for HomologyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomologyError::NotInvertible => write!(f, "cocycle is not convolution invertible"),
            HomologyError::Complex(e) => write!(f, "{e}"),
            HomologyError::ModuleShape(what) => write!(f, "{what} does not match the algebra"),
        }
    }
}

impl From<ComplexError> for HomologyError {
    fn from(e: ComplexError) -> Self {
        HomologyError::Complex(e)
    }
}

impl From<SmallError> for HomologyError {
    fn from(e: SmallError) -> Self {
        match e {
            SmallError::NotInvertible => HomologyError::NotInvertible,
            SmallError::Complex(c) => HomologyError::Complex(c),
        }
    }
}

/// Identity of the basis of `E`, for the bar complex of `E` itself.
fn identity_indices(cp: &CrossedProduct) -> Vec<usize> {
    (0..cp.dim_e()).collect()
}

/// Number of bar legs outside `A # 1`.
fn non_a_legs(cp: &CrossedProduct, xs: &[usize]) -> i64 {
    xs.iter().filter(|&&x| cp.e_split(x).1 != 0).count() as i64
}

/// The normalized Hochschild complex `M ⊗ Ē^*` (or `Hom(Ē^*, M)`) in
/// degrees `0..=cap`, filtered by the number of legs outside `A`.
pub fn bar_complex(cp: &CrossedProduct, m: &BimoduleData, variance: Variance, cap: usize) -> Result<FilteredComplex, HomologyError> {
    let to_e = identity_indices(cp);
    let bar = BarData { b: &cp.e, to_e: &to_e };
    Ok(bar.complex(&Coefficients::new(&cp.e, m), variance, cap, |xs| non_a_legs(cp, xs))?)
}

/// `X̂_*(E,M)` or `X̂^*(E,M)` in degrees `0..=cap`, filtered by `s`.
pub fn hat_complex(cp: &CrossedProduct, m: &BimoduleData, variance: Variance, cap: usize) -> Result<FilteredComplex, HomologyError> {
    let res = XResolution::new(cp, Construction::Closed);
    let sc = SmallComplexes::new(&res, Coefficients::new(&cp.e, m));
    Ok(sc.hat_complex(variance, cap)?)
}

/// `X̄_*(E,M)` or `X̄^*(E,M)` in degrees `0..=cap`, filtered by `s`.
pub fn overline_complex(cp: &CrossedProduct, m: &BimoduleData, variance: Variance, cap: usize) -> Result<FilteredComplex, HomologyError> {
    let res = XResolution::new(cp, Construction::Closed);
    let sc = SmallComplexes::new(&res, Coefficients::new(&cp.e, m));
    Ok(sc.overline_complex(variance, cap)?)
}

fn kernel_dim(fc: &FilteredComplex, n: usize) -> usize {
    let c = &fc.complex;
    c.dims[n] - c.out_map(n).map_or(0, |d| d.rank())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub variance: Variance,
    pub cap: usize,
    /// Degrees `0..cap`, via `X̂`.
    pub dims: Vec<usize>,
    /// Dimension of (co)cycles in degree `cap`; an upper bound only.
    pub cycles_at_cap: usize,
    /// Degrees `0..cap`, via the bar complex, when requested.
    pub bar_dims: Option<Vec<usize>>,
}

impl HomologyReport {
    /// Last degree whose value is fully determined.
    pub fn trusted_through(&self) -> Option<usize> {
        self.cap.checked_sub(1)
    }

    pub fn oracle_agrees(&self) -> Option<bool> {
        self.bar_dims.as_ref().map(|b| *b == self.dims)
    }
}

pub fn hochschild(
    cp: &CrossedProduct,
    m: &BimoduleData,
    variance: Variance,
    cap: usize,
    oracle: bool,
) -> Result<HomologyReport, HomologyError> {
    check_bimodule(cp, m)?;
    let hat = hat_complex(cp, m, variance, cap)?;
    let dims = hat.complex.homology_dims()?;
    let bar_dims = if oracle {
        Some(bar_complex(cp, m, variance, cap)?.complex.homology_dims()?)
    } else {
        None
    };
    Ok(HomologyReport {
        variance,
        cap,
        dims,
        cycles_at_cap: kernel_dim(&hat, cap),
        bar_dims,
    })
}

pub fn hochschild_homology(cp: &CrossedProduct, m: &BimoduleData, cap: usize, oracle: bool) -> Result<HomologyReport, HomologyError> {
    hochschild(cp, m, Variance::Homological, cap, oracle)
}

pub fn hochschild_cohomology(cp: &CrossedProduct, m: &BimoduleData, cap: usize, oracle: bool) -> Result<HomologyReport, HomologyError> {
    hochschild(cp, m, Variance::Cohomological, cap, oracle)
}

fn check_bimodule(cp: &CrossedProduct, m: &BimoduleData) -> Result<(), HomologyError> {
    let ok = m.left.len() == cp.dim_e()
        && m.left.iter().all(|row| row.len() == m.dim)
        && m.right.len() == m.dim
        && m.right.iter().all(|row| row.len() == cp.dim_e());
    if ok {
        Ok(())
    } else {
        Err(HomologyError::ModuleShape("bimodule"))
    }
}

/// One cell of a page comparison, keyed by `(p, n)` as in [`SpectralPage`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellMismatch {
    pub page: usize,
    pub p: i64,
    pub n: usize,
    pub found: usize,
    pub expected: usize,
}

fn compare_pages(page: usize, found: &SpectralPage, expected: &BTreeMap<(i64, usize), usize>, out: &mut Vec<CellMismatch>) {
    let mut keys: Vec<(i64, usize)> = found.entries.keys().copied().collect();
    keys.extend(expected.keys().copied());
    keys.sort();
    keys.dedup();
    for (p, n) in keys {
        let f = found.get(p, n);
        let e = expected.get(&(p, n)).copied().unwrap_or(0);
        if f != e {
            out.push(CellMismatch {
                page,
                p,
                n,
                found: f,
                expected: e,
            });
        }
    }
}

/// `E¹`, `E²`, `E^∞` of the filtered `X̄` against `H_r(A,M) ⊗ H̄^s`,
/// `H_s(H, H_r(A,M))` (or the cochain versions) and total (co)homology, on
/// the window `r + s < cap`.
#[derive(Clone, Debug)]
pub struct E2Report {
    pub variance: Variance,
    pub cap: usize,
    pub e1: SpectralPage,
    pub e2: SpectralPage,
    /// `(r, s) ↦ dim` from `A` and `H` alone.
    pub expected_e1: BTreeMap<(usize, usize), usize>,
    pub expected_e2: BTreeMap<(usize, usize), usize>,
    pub homology: Vec<usize>,
    pub infinity_totals: Vec<usize>,
    pub mismatches: Vec<CellMismatch>,
}

impl E2Report {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.homology == self.infinity_totals
    }
}

fn as_page_keys(t: &BTreeMap<(usize, usize), usize>) -> BTreeMap<(i64, usize), usize> {
    t.iter().map(|(&(r, s), &v)| ((s as i64, r + s), v)).collect()
}

pub fn e2_identification(cp: &CrossedProduct, m: &BimoduleData, variance: Variance, cap: usize) -> Result<E2Report, HomologyError> {
    check_bimodule(cp, m)?;
    if cp.conv_inverse.is_none() {
        return Err(HomologyError::NotInvertible);
    }
    let fc = overline_complex(cp, m, variance, cap)?;
    let ss = SpectralSequence::new(&fc);
    let (e1, e2) = (ss.page(1), ss.page(2));
    let conv = check_convergence(&fc)?;

    let ap = AlgebraPart::new(cp, Coefficients::new(&cp.e, m));
    let hm = ap.h_module(variance, cap)?;
    let hbar = cp.dim_h() - 1;
    let mut expected_e1 = BTreeMap::new();
    let mut expected_e2 = BTreeMap::new();
    for (r, action) in hm.action.iter().enumerate() {
        let hr = action[0].rows();
        let h_side = hopf_complex(&cp.h, action, variance, cap - r).homology_dims()?;
        for (s, &d) in h_side.iter().enumerate().take(cap - r) {
            expected_e1.insert((r, s), hr * hbar.pow(s as u32));
            expected_e2.insert((r, s), d);
        }
    }
    let mut mismatches = Vec::new();
    compare_pages(1, &e1, &as_page_keys(&expected_e1), &mut mismatches);
    compare_pages(2, &e2, &as_page_keys(&expected_e2), &mut mismatches);
    Ok(E2Report {
        variance,
        cap,
        e1,
        e2,
        expected_e1,
        expected_e2,
        homology: conv.homology,
        infinity_totals: conv.infinity_totals,
        mismatches,
    })
}

/// `E¹` and `E²` of the bar-side filtration against those of `X̂`.
#[derive(Clone, Debug)]
pub struct PageComparison {
    pub variance: Variance,
    pub hat: Vec<SpectralPage>,
    pub bar: Vec<SpectralPage>,
    pub mismatches: Vec<CellMismatch>,
}

impl PageComparison {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn compare_filtrations(cp: &CrossedProduct, m: &BimoduleData, variance: Variance, cap: usize) -> Result<PageComparison, HomologyError> {
    let hat = SpectralSequence::new(&hat_complex(cp, m, variance, cap)?);
    let bar = SpectralSequence::new(&bar_complex(cp, m, variance, cap)?);
    let mut mismatches = Vec::new();
    let (mut hp, mut bp) = (Vec::new(), Vec::new());
    for r in 1..=2 {
        let (h, b) = (hat.page(r), bar.page(r));
        compare_pages(r, &b, &h.entries, &mut mismatches);
        hp.push(h);
        bp.push(b);
    }
    Ok(PageComparison {
        variance,
        hat: hp,
        bar: bp,
        mismatches,
    })
}

/// A one-sided `E`-module: `act[e][x]` is `e ⋅ x` (left) or `x ⋅ e` (right)
/// in the basis of the module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    pub dim: usize,
    pub act: Vec<Vec<Lin<usize>>>,
}

impl Module {
    /// One-dimensional module through a character `χ : E → k`.
    pub fn from_character(chi: &[Scalar]) -> Self {
        Module {
            dim: 1,
            act: chi.iter().map(|c| alloc::vec![Lin::single(0, c.clone())]).collect(),
        }
    }

    /// `E` acting on itself.
    pub fn regular(cp: &CrossedProduct, side: Side) -> Self {
        let n = cp.dim_e();
        Module {
            dim: n,
            act: (0..n)
                .map(|e| {
                    (0..n)
                        .map(|x| match side {
                            Side::Left => cp.e.mul_basis(e, x).clone(),
                            Side::Right => cp.e.mul_basis(x, e).clone(),
                        })
                        .collect()
                })
                .collect(),
        }
    }

    fn check(&self, dim_e: usize) -> bool {
        self.act.len() == dim_e && self.act.iter().all(|row| row.len() == self.dim)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// The bimodule `N ⊗ M` with `a (n ⊗ m) b = a n ⊗ m b`, basis `n ⋅ dim M + m`.
pub fn tensor_bimodule(cp: &CrossedProduct, right: &Module, left: &Module) -> Result<BimoduleData, HomologyError> {
    let de = cp.dim_e();
    if !right.check(de) || !left.check(de) {
        return Err(HomologyError::ModuleShape("module"));
    }
    let (dm, dn) = (right.dim, left.dim);
    let idx = |n: usize, m: usize| n * dm + m;
    let lact = (0..de)
        .map(|e| {
            (0..dn * dm)
                .map(|x| {
                    let (n, m) = (x / dm, x % dm);
                    left.act[e][n].iter().map(|(k, c)| (idx(*k, m), c.clone())).collect()
                })
                .collect()
        })
        .collect();
    let ract = (0..dn * dm)
        .map(|x| {
            let (n, m) = (x / dm, x % dm);
            (0..de)
                .map(|e| right.act[e][m].iter().map(|(k, c)| (idx(n, *k), c.clone())).collect())
                .collect()
        })
        .collect();
    Ok(BimoduleData {
        dim: dn * dm,
        left: lact,
        right: ract,
    })
}

#[derive(Clone, Debug)]
pub struct TorReport {
    pub homology: HomologyReport,
    /// Present when the cocycle is invertible.
    pub e2: Option<E2Report>,
}

/// `Tor^E_*(M, N) = H_*(E, N ⊗ M)` for a right module `M` and a left
/// module `N`.
pub fn tor_spectral_report(
    cp: &CrossedProduct,
    right: &Module,
    left: &Module,
    cap: usize,
    oracle: bool,
) -> Result<TorReport, HomologyError> {
    let nm = tensor_bimodule(cp, right, left)?;
    let homology = hochschild_homology(cp, &nm, cap, oracle)?;
    let e2 = match e2_identification(cp, &nm, Variance::Homological, cap) {
        Ok(r) => Some(r),
        Err(HomologyError::NotInvertible) => None,
        Err(e) => return Err(e),
    };
    Ok(TorReport { homology, e2 })
}

/// `χ(a # h) = ε_A(a) ε(h)` for `A = k`: the trivial module of a Hopf
/// algebra written as a crossed product over the ground field.
pub fn counit_character(cp: &CrossedProduct) -> Option<Vec<Scalar>> {
    if cp.dim_a() != 1 {
        return None;
    }
    Some((0..cp.dim_e()).map(|e| cp.h.counit[cp.e_split(e).1].clone()).collect())
}

/// Convenience for callers that only hold a field and a built-in name.
pub fn regular_bimodule(cp: &CrossedProduct) -> BimoduleData {
    BimoduleData::regular(&cp.e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::builtin;
    use crate::scalar::FieldSpec;

    #[test]
    fn z2_desk_numbers() {
        let cases = [(FieldSpec::prime(2).unwrap(), [2, 2, 2, 2]), (FieldSpec::Rationals, [2, 0, 0, 0])];
        for (fs, want) in cases {
            let cp = builtin("z2_trivial", fs).unwrap();
            let m = regular_bimodule(&cp);
            for v in [Variance::Homological, Variance::Cohomological] {
                let rep = hochschild(&cp, &m, v, 4, true).unwrap();
                assert_eq!(rep.bar_dims.as_deref(), Some(&want[..]));
                assert_eq!(rep.dims, want);
            }
        }
    }

    #[test]
    fn tor_of_trivial_modules() {
        let cases = [(FieldSpec::prime(2).unwrap(), [1, 1, 1, 1]), (FieldSpec::Rationals, [1, 0, 0, 0])];
        for (fs, want) in cases {
            let cp = builtin("z2_trivial", fs).unwrap();
            let k = Module::from_character(&counit_character(&cp).unwrap());
            let rep = tor_spectral_report(&cp, &k, &k, 4, true).unwrap();
            assert_eq!(rep.homology.dims, want);
            assert_eq!(rep.homology.oracle_agrees(), Some(true));
            assert!(rep.e2.unwrap().passed());
        }
    }

    #[test]
    fn tor_with_free_module_is_concentrated() {
        let cp = builtin("s3_as_action_extension", FieldSpec::Rationals).unwrap();
        let e = Module::regular(&cp, Side::Left);
        let k = Module::from_character(&alloc::vec![cp.field().one(); cp.dim_e()]);
        // Tor_0(k, E) = k ⊗_E E = k
        let rep = tor_spectral_report(&cp, &k, &e, 3, false).unwrap();
        assert_eq!(rep.homology.dims, [1, 0, 0]);
    }

    #[test]
    fn e2_on_z2_mod2() {
        let cp = builtin("z2_trivial", FieldSpec::prime(2).unwrap()).unwrap();
        let m = regular_bimodule(&cp);
        let rep = e2_identification(&cp, &m, Variance::Homological, 4).unwrap();
        assert!(rep.passed(), "{:?}", rep.mismatches);
        // A = k: only r = 0 survives, and E is two copies of the trivial module
        for (&(r, _), &v) in &rep.expected_e2 {
            assert_eq!(v, if r == 0 { 2 } else { 0 });
        }
    }
}
