mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{corruptions, f2, q};
use hopfcross::algebra::{verify_algebra, verify_hopf};
use hopfcross::builtins::{builtin, builtin_parts, BUILTIN_NAMES};
use hopfcross::crossed::verify_crossed_axioms;
use hopfcross::{CrossedProduct, FieldSpec};

#[test]
fn builtins_satisfy_every_axiom() {
    for fs in [q(), f2(), FieldSpec::prime(3).unwrap()] {
        for name in BUILTIN_NAMES {
            let p = builtin_parts(name, fs).unwrap();
            assert!(verify_algebra(&p.a).passed(), "{name}");
            assert!(verify_hopf(&p.h).passed(), "{name}");
            let r = verify_crossed_axioms(&p.a, &p.h, &p.action, &p.cocycle).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.violations);
            assert!(r.checked > 0);
        }
    }
}

#[test]
fn corruptions_fail_with_true_witnesses() {
    for c in corruptions() {
        let rep = c.data.report();
        let hits: Vec<_> = rep.violations.iter().filter(|v| v.axiom == c.axiom).collect();
        assert!(!hits.is_empty(), "{}: expected {:?}, got {:?}", c.name, c.axiom, rep.failed_axioms());
        for v in hits {
            assert!((c.fails_at)(&v.witness), "{}: witness {:?} does not fail", c.name, v.witness);
        }
    }
}

#[test]
fn sweedler_antipode_witness_is_x() {
    let c = corruptions().into_iter().find(|c| c.name.starts_with("H4")).unwrap();
    let rep = c.data.report();
    let ws: BTreeSet<Vec<usize>> = rep.violations.iter().map(|v| v.witness.clone()).collect();
    assert!(ws.contains(&vec![2]), "{ws:?}");
}

/// The multiplication table of `E` as a table of basis indices, when every
/// product of basis vectors is a basis vector.
fn group_table(cp: &CrossedProduct) -> Option<Vec<Vec<usize>>> {
    let n = cp.dim_e();
    let mut t = vec![vec![0; n]; n];
    for (i, row) in t.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let p = cp.e.mul_basis(i, j);
            if p.len() != 1 {
                return None;
            }
            let (k, c) = p.iter().next().unwrap();
            if !c.is_one() {
                return None;
            }
            *slot = *k;
        }
    }
    Some(t)
}

fn order(t: &[Vec<usize>], x: usize) -> usize {
    let (mut y, mut k) = (x, 1);
    while y != 0 {
        y = t[y][x];
        k += 1;
    }
    k
}

#[test]
fn z4_extension_is_cyclic_of_order_four() {
    for fs in [q(), f2()] {
        let cp = builtin("z4_as_cocycle_extension", fs).unwrap();
        let t = group_table(&cp).unwrap();
        let gen = (0..4).find(|&x| order(&t, x) == 4).expect("an element of order 4");
        // x^i ↦ i is an isomorphism onto ℤ/4
        let mut pow = vec![0];
        for i in 1..4 {
            pow.push(t[pow[i - 1]][gen]);
        }
        let idx: BTreeMap<usize, usize> = pow.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        assert_eq!(idx.len(), 4);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(idx[&t[pow[i]][pow[j]]], (i + j) % 4);
            }
        }
    }
}

#[test]
fn s3_extension_is_symmetric_group() {
    let cp = builtin("s3_as_action_extension", q()).unwrap();
    let t = group_table(&cp).unwrap();
    let r = (0..6).find(|&x| order(&t, x) == 3).unwrap();
    let s = (0..6).find(|&x| order(&t, x) == 2).unwrap();
    let r2 = t[r][r];
    // s r s = r⁻¹
    assert_eq!(t[t[s][r]][s], r2);
    // r^i s^j ↦ permutation, compared on the whole table
    let perm_r = [1usize, 2, 0];
    let perm_s = [0usize, 2, 1];
    let compose = |p: [usize; 3], q: [usize; 3]| [p[q[0]], p[q[1]], p[q[2]]];
    let mut to_perm: BTreeMap<usize, [usize; 3]> = BTreeMap::new();
    let mut x = 0;
    let mut px = [0, 1, 2];
    for _ in 0..3 {
        to_perm.insert(x, px);
        to_perm.insert(t[x][s], compose(px, perm_s));
        x = t[x][r];
        px = compose(px, perm_r);
    }
    assert_eq!(to_perm.len(), 6);
    for (a, pa) in &to_perm {
        for (b, pb) in &to_perm {
            assert_eq!(to_perm[&t[*a][*b]], compose(*pa, *pb));
        }
    }
}

#[test]
fn klein_four_has_exponent_two() {
    let cp = builtin("klein_four", q()).unwrap();
    let t = group_table(&cp).unwrap();
    assert!((1..4).all(|x| order(&t, x) == 2));
    assert!((0..4).all(|x| (0..4).all(|y| t[x][y] == t[y][x])));
}
