mod common;

use common::{f2, q};
use hopfcross::builtins::{builtin, BUILTIN_NAMES};
use hopfcross::complex::Variance;
use hopfcross::homology::{hochschild, tensor_bimodule, Module, Side};
use hopfcross::lin::Lin;
use hopfcross::resolution::{BarResolution, Comparison, Construction, Framed, XElem, XResolution};
use hopfcross::{BimoduleData, CrossedProduct, FieldSpec};
use proptest::prelude::*;

fn field(i: usize) -> FieldSpec {
    [q(), f2(), FieldSpec::prime(3).unwrap()][i]
}

/// A random element of `X_n` from picks `(generator, left, right, coefficient)`.
fn element(cp: &CrossedProduct, res: &XResolution<'_>, n: usize, picks: &[(usize, usize, usize, i64)]) -> XElem {
    let gens = res.generators(n);
    let fs = cp.field();
    let de = cp.dim_e();
    let mut x = Lin::zero();
    if gens.is_empty() {
        return x;
    }
    for &(g, l, r, c) in picks {
        x.add_term(Framed::new(l % de, gens[g % gens.len()].clone(), r % de), fs.from_i64(c));
    }
    x
}

fn picks() -> impl Strategy<Value = Vec<(usize, usize, usize, i64)>> {
    prop::collection::vec((0usize..1000, 0usize..8, 0usize..8, -3i64..4), 1..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn differential_squares_to_zero(b in 0usize..6, fi in 0usize..3, n in 2usize..5, p in picks()) {
        let cp = builtin(BUILTIN_NAMES[b], field(fi)).unwrap();
        let res = XResolution::new(&cp, Construction::Closed);
        let x = element(&cp, &res, n, &p);
        prop_assert!(res.apply_d(&res.apply_d(&x)).is_zero());
    }

    #[test]
    fn homotopy_contracts(b in 0usize..6, fi in 0usize..3, n in 1usize..4, p in picks()) {
        let cp = builtin(BUILTIN_NAMES[b], field(fi)).unwrap();
        let res = XResolution::new(&cp, Construction::Recursive);
        let x = element(&cp, &res, n, &p);
        let mut lhs = res.apply_d(&res.sigma_bar(&x));
        lhs.add_assign(&res.sigma_bar(&res.apply_d(&x)));
        prop_assert_eq!(lhs, x);
    }

    #[test]
    fn psi_after_phi_is_identity(b in 0usize..6, fi in 0usize..2, n in 0usize..4, p in picks()) {
        let cp = builtin(BUILTIN_NAMES[b], field(fi)).unwrap();
        let res = XResolution::new(&cp, Construction::Closed);
        let bar = BarResolution::new(&cp);
        let cmp = Comparison::new(&res, &bar);
        let x = element(&cp, &res, n, &p);
        prop_assert_eq!(cmp.psi(&cmp.phi(&x)), x);
    }

    #[test]
    fn homology_is_additive(b in 0usize..6, fi in 0usize..2) {
        let cp = builtin(BUILTIN_NAMES[b], field(fi)).unwrap();
        let m = BimoduleData::regular(&cp.e);
        let one = hochschild(&cp, &m, Variance::Homological, 3, false).unwrap().dims;
        let two = hochschild(&cp, &direct_sum(&m, &m), Variance::Homological, 3, false).unwrap().dims;
        prop_assert_eq!(two, one.iter().map(|d| 2 * d).collect::<Vec<_>>());
    }
}

fn direct_sum(m: &BimoduleData, n: &BimoduleData) -> BimoduleData {
    let shift = |x: &Lin<usize>, k: usize| -> Lin<usize> { x.iter().map(|(i, c)| (i + k, c.clone())).collect() };
    let (dm, dn) = (m.dim, n.dim);
    let left = m
        .left
        .iter()
        .zip(&n.left)
        .map(|(a, b)| a.iter().cloned().chain(b.iter().map(|x| shift(x, dm))).collect())
        .collect();
    let right = m.right.iter().cloned().chain(n.right.iter().map(|row| row.iter().map(|x| shift(x, dm)).collect())).collect();
    BimoduleData { dim: dm + dn, left, right }
}

#[test]
fn oracle_agrees_for_nonregular_coefficients() {
    // E ⊗ E as a bimodule through the outer actions: free, so acyclic above 0
    for fs in [q(), f2()] {
        for name in ["z2_trivial", "s3_as_action_extension", "sweedler_smash"] {
            let cp = builtin(name, fs).unwrap();
            let m = tensor_bimodule(&cp, &Module::regular(&cp, Side::Right), &Module::regular(&cp, Side::Left)).unwrap();
            for v in [Variance::Homological, Variance::Cohomological] {
                let rep = hochschild(&cp, &m, v, 3, true).unwrap();
                assert_eq!(rep.oracle_agrees(), Some(true), "{name} {v:?}");
                if v == Variance::Homological {
                    assert_eq!(rep.dims, [cp.dim_e(), 0, 0], "{name}");
                }
            }
        }
    }
}

#[test]
fn trivial_algebra_has_homology_in_degree_zero() {
    let cp = builtin("trivial", q()).unwrap();
    let m = BimoduleData::regular(&cp.e);
    for v in [Variance::Homological, Variance::Cohomological] {
        let rep = hochschild(&cp, &m, v, 4, true).unwrap();
        assert_eq!(rep.dims, [1, 0, 0, 0]);
        assert_eq!(rep.trusted_through(), Some(3));
    }
}
