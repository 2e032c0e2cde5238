//! Weak actions, cocycles and the crossed product `E = A #_f H`.
//!
//! `E` has basis `a_i # h_j` at index `i * dim H + j`, so the unit `1#1`
//! sits at index 0 and `a # 1` are exactly the indices divisible by `dim H`.

use alloc::borrow::Cow;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{
    check_elem, check_len, verify_hopf, Axiom, AlgebraData, Elem, HopfData, Report,
    StructureError, SweedlerTable, Tensor,
};
use crate::lin::Lin;
use crate::linalg::{ExactMatrix, LinalgError};
use crate::scalar::{FieldSpec, Scalar};

/// `act[h][a]` is `a^h` for basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakActionData {
    pub act: Vec<Vec<Elem>>,
}

/// `f[h][l]` is `f(h, l)` for basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleData {
    pub f: Vec<Vec<Elem>>,
}

/// An `E`-bimodule: `left[e][m] = e·m`, `right[m][e] = m·e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleData {
    pub dim: usize,
    pub left: Vec<Vec<Elem>>,
    pub right: Vec<Vec<Elem>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CrossedError {
    Structure(StructureError),
    AxiomViolation(Report),
    NotInvertible,
}

impl fmt::Display for CrossedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrossedError::Structure(e) => write!(f, "{e}"),
            CrossedError::AxiomViolation(r) => {
                write!(f, "{} axiom violation(s)", r.violations.len())?;
                if let Some(v) = r.violations.first() {
                    write!(f, ", first: {} at {:?}", v.axiom, v.witness)?;
                }
                Ok(())
            }
            CrossedError::NotInvertible => write!(f, "cocycle is not convolution invertible"),
        }
    }
}

impl From<StructureError> for CrossedError {
    fn from(e: StructureError) -> Self {
        CrossedError::Structure(e)
    }
}

impl WeakActionData {
    /// `a^h = ε(h) a`.
    pub fn trivial(a: &AlgebraData, h: &HopfData) -> Self {
        WeakActionData {
            act: (0..h.dim())
                .map(|hi| (0..a.dim()).map(|ai| a.basis(ai).scale(&h.counit[hi])).collect())
                .collect(),
        }
    }

    pub fn check_shape(&self, a: &AlgebraData, h: &HopfData) -> Result<(), StructureError> {
        check_len("action", h.dim(), self.act.len())?;
        for (i, row) in self.act.iter().enumerate() {
            check_len(&format!("action[{i}]"), a.dim(), row.len())?;
            for (j, e) in row.iter().enumerate() {
                check_elem(&format!("action[{i}][{j}]"), e, a.dim(), a.field)?;
            }
        }
        Ok(())
    }
}

impl CocycleData {
    /// `f(h, l) = ε(h) ε(l) 1`.
    pub fn trivial(a: &AlgebraData, h: &HopfData) -> Self {
        CocycleData {
            f: (0..h.dim())
                .map(|x| {
                    (0..h.dim())
                        .map(|y| a.scalar(&h.counit[x] * &h.counit[y]))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn check_shape(&self, a: &AlgebraData, h: &HopfData) -> Result<(), StructureError> {
        check_len("cocycle", h.dim(), self.f.len())?;
        for (i, row) in self.f.iter().enumerate() {
            check_len(&format!("cocycle[{i}]"), h.dim(), row.len())?;
            for (j, e) in row.iter().enumerate() {
                check_elem(&format!("cocycle[{i}][{j}]"), e, a.dim(), a.field)?;
            }
        }
        Ok(())
    }

    /// True when every value lies in `k · 1_A`.
    pub fn is_scalar_valued(&self) -> bool {
        self.f
            .iter()
            .flatten()
            .all(|e| e.keys().all(|&k| k == 0))
    }
}

impl BimoduleData {
    /// `E` as a bimodule over itself.
    pub fn regular(e: &AlgebraData) -> Self {
        let n = e.dim();
        BimoduleData {
            dim: n,
            left: e.mult.clone(),
            right: (0..n)
                .map(|m| (0..n).map(|x| e.mult[m][x].clone()).collect())
                .collect(),
        }
    }

    pub fn check_shape(&self, e_dim: usize, field: FieldSpec) -> Result<(), StructureError> {
        check_len("bimodule.left", e_dim, self.left.len())?;
        check_len("bimodule.right", self.dim, self.right.len())?;
        for (i, row) in self.left.iter().enumerate() {
            check_len(&format!("bimodule.left[{i}]"), self.dim, row.len())?;
            for (j, x) in row.iter().enumerate() {
                check_elem(&format!("bimodule.left[{i}][{j}]"), x, self.dim, field)?;
            }
        }
        for (i, row) in self.right.iter().enumerate() {
            check_len(&format!("bimodule.right[{i}]"), e_dim, row.len())?;
            for (j, x) in row.iter().enumerate() {
                check_elem(&format!("bimodule.right[{i}][{j}]"), x, self.dim, field)?;
            }
        }
        Ok(())
    }

    pub fn act_left(&self, e: usize, m: &Elem) -> Elem {
        m.map_linear(|i| self.left[e][*i].clone())
    }

    pub fn act_right(&self, m: &Elem, e: usize) -> Elem {
        m.map_linear(|i| self.right[*i][e].clone())
    }

    /// `x · m` for a general `x ∈ E`.
    pub fn left_elem(&self, x: &Elem, m: &Elem) -> Elem {
        let mut out = Lin::zero();
        for (e, c) in x.iter() {
            out.add_scaled(&self.act_left(*e, m), c);
        }
        out
    }

    pub fn right_elem(&self, m: &Elem, x: &Elem) -> Elem {
        let mut out = Lin::zero();
        for (e, c) in x.iter() {
            out.add_scaled(&self.act_right(m, *e), c);
        }
        out
    }

    /// Unit, associativity and commutation of the two actions.
    pub fn verify(&self, e: &AlgebraData) -> Report {
        let f = e.field;
        let n = e.dim();
        let mut rep = Report::default();
        let basis = |i: usize| Lin::single(i, f.one());
        for m in 0..self.dim {
            rep.check(self.left[0][m] == basis(m), Axiom::BimoduleLeftUnit, &[m]);
            rep.check(self.right[m][0] == basis(m), Axiom::BimoduleRightUnit, &[m]);
        }
        for x in 0..n {
            for y in 0..n {
                for m in 0..self.dim {
                    let lhs = self.left_elem(&e.mult[x][y], &basis(m));
                    let rhs = self.act_left(x, &self.left[y][m]);
                    rep.check(lhs == rhs, Axiom::BimoduleLeftAssoc, &[x, y, m]);
                    let lhs = self.right_elem(&basis(m), &e.mult[x][y]);
                    let rhs = self.act_right(&self.right[m][x], y);
                    rep.check(lhs == rhs, Axiom::BimoduleRightAssoc, &[m, x, y]);
                    let lhs = self.act_right(&self.left[x][m], y);
                    let rhs = self.act_left(x, &self.right[m][y]);
                    rep.check(lhs == rhs, Axiom::BimoduleCommute, &[x, m, y]);
                }
            }
        }
        rep
    }
}

/// Raw data plus evaluation helpers for actions, cocycles and Sweedler legs.
/// Used both before (axiom checks) and after assembly.
#[derive(Clone, Debug)]
pub struct CrossedData {
    pub a: AlgebraData,
    pub h: HopfData,
    pub action: WeakActionData,
    pub cocycle: CocycleData,
    sw: SweedlerTable,
}

const PRECOMPUTED_LEGS: usize = 8;

impl CrossedData {
    pub fn new(
        a: AlgebraData,
        h: HopfData,
        action: WeakActionData,
        cocycle: CocycleData,
    ) -> Result<Self, StructureError> {
        if a.field != h.field() {
            return Err(StructureError::WrongField {
                what: "hopf algebra".into(),
            });
        }
        action.check_shape(&a, &h)?;
        cocycle.check_shape(&a, &h)?;
        let sw = SweedlerTable::new(&h, PRECOMPUTED_LEGS);
        Ok(CrossedData {
            a,
            h,
            action,
            cocycle,
            sw,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.a.field
    }

    pub fn dim_a(&self) -> usize {
        self.a.dim()
    }

    pub fn dim_h(&self) -> usize {
        self.h.dim()
    }

    /// Terms of `Δ^{(n-1)}(h_i)`; `n = 0` gives `ε(h_i)` with no legs.
    pub fn legs(&self, i: usize, n: usize) -> Cow<'_, [(Scalar, Vec<usize>)]> {
        if n == 0 {
            let e = &self.h.counit[i];
            return if e.is_zero() {
                Cow::Owned(Vec::new())
            } else {
                Cow::Owned(vec![(e.clone(), Vec::new())])
            };
        }
        if n <= self.sw.max_legs() {
            Cow::Borrowed(self.sw.legs(i, n))
        } else {
            Cow::Owned(
                crate::algebra::sweedler_expand(&self.h, n, &self.h.algebra.basis(i))
                    .into_terms()
                    .into_iter()
                    .map(|(w, c)| (c, w))
                    .collect(),
            )
        }
    }

    /// Splits each `hs[k]` into `counts[k]` Sweedler legs and enumerates the
    /// product of all expansions: `(coefficient, legs[k][t])`.
    pub fn split(&self, hs: &[usize], counts: &[usize]) -> Vec<(Scalar, Vec<Vec<usize>>)> {
        assert_eq!(hs.len(), counts.len());
        let mut acc: Vec<(Scalar, Vec<Vec<usize>>)> =
            vec![(self.field().one(), Vec::with_capacity(hs.len()))];
        for (k, &h) in hs.iter().enumerate() {
            let terms = self.legs(h, counts[k]);
            let mut next = Vec::with_capacity(acc.len() * terms.len());
            for (c, legs) in &acc {
                for (d, w) in terms.iter() {
                    let mut l = legs.clone();
                    l.push(w.clone());
                    next.push((c * d, l));
                }
            }
            acc = next;
        }
        acc
    }

    pub fn act_basis(&self, h: usize, a: usize) -> &Elem {
        &self.action.act[h][a]
    }

    /// `a^h` for basis `h`, general `a`.
    pub fn act(&self, h: usize, a: &Elem) -> Elem {
        a.map_linear(|i| self.action.act[h][*i].clone())
    }

    /// `a^h` for general `h`.
    pub fn act_elem(&self, h: &Elem, a: &Elem) -> Elem {
        let mut out = Lin::zero();
        for (hi, c) in h.iter() {
            out.add_scaled(&self.act(*hi, a), c);
        }
        out
    }

    /// Iterated action `(…((a^{h_s})^{h_{s-1}})…)^{h_0}`.
    pub fn act_iter(&self, a: &Elem, hs: &[usize]) -> Elem {
        let mut cur = a.clone();
        for &h in hs.iter().rev() {
            if cur.is_zero() {
                break;
            }
            cur = self.act(h, &cur);
        }
        cur
    }

    /// Vector action: `a_t` receives the iterated action of the `t`-th
    /// Sweedler leg of the whole tensor `hs`. With no `a`'s this is `ε(hs)`.
    pub fn act_vec(&self, avec: &[usize], hs: &[usize]) -> Tensor {
        let r = avec.len();
        let counts = vec![r; hs.len()];
        let mut out = Lin::zero();
        for (c, legs) in self.split(hs, &counts) {
            let mut part: Tensor = Lin::single(Vec::new(), c);
            for (t, &a) in avec.iter().enumerate() {
                let word: Vec<usize> = legs.iter().map(|l| l[t]).collect();
                let val = self.act_iter(&self.a.basis(a), &word);
                part = tensor_append(&part, &val);
                if part.is_zero() {
                    break;
                }
            }
            out.add_assign(&part);
        }
        out
    }

    pub fn f_basis(&self, h: usize, l: usize) -> &Elem {
        &self.cocycle.f[h][l]
    }

    pub fn f_elem(&self, h: &Elem, l: &Elem) -> Elem {
        let mut out = Lin::zero();
        for (x, c) in h.iter() {
            for (y, d) in l.iter() {
                out.add_scaled(&self.cocycle.f[*x][*y], &(c * d));
            }
        }
        out
    }

    pub fn h_mul(&self, x: usize, y: usize) -> &Elem {
        self.h.algebra.mul_basis(x, y)
    }

    pub fn a_mul(&self, x: &Elem, y: &Elem) -> Elem {
        self.a.mul(x, y)
    }

    /// Weak-action axioms 1)–3), normality, cocycle and twisted-module
    /// conditions, all on basis tuples.
    pub fn verify(&self) -> Report {
        let (na, nh) = (self.dim_a(), self.dim_h());
        let a = &self.a;
        let mut rep = Report::default();
        for h in 0..nh {
            for x in 0..na {
                for y in 0..na {
                    let lhs = self.act(h, a.mul_basis(x, y));
                    let mut rhs = Lin::zero();
                    for (c, legs) in self.split(&[h], &[2]) {
                        let (h1, h2) = (legs[0][0], legs[0][1]);
                        rhs.add_scaled(&a.mul(self.act_basis(h1, x), self.act_basis(h2, y)), &c);
                    }
                    rep.check(lhs == rhs, Axiom::ActionMultiplicative, &[h, x, y]);
                }
            }
            rep.check(
                self.act_basis(h, 0) == &a.scalar(self.h.counit[h].clone()),
                Axiom::ActionUnit,
                &[h],
            );
            let eps = a.scalar(self.h.counit[h].clone());
            rep.check(self.f_basis(h, 0) == &eps, Axiom::CocycleNormalRight, &[h]);
            rep.check(self.f_basis(0, h) == &eps, Axiom::CocycleNormalLeft, &[h]);
        }
        for x in 0..na {
            rep.check(self.act_basis(0, x) == &a.basis(x), Axiom::ActionNormalized, &[x]);
        }
        for h in 0..nh {
            for l in 0..nh {
                for m in 0..nh {
                    let mut lhs = Lin::zero();
                    for (c, legs) in self.split(&[h, l, m], &[2, 2, 2]) {
                        let (h1, h2) = (legs[0][0], legs[0][1]);
                        let (l1, l2) = (legs[1][0], legs[1][1]);
                        let (m1, m2) = (legs[2][0], legs[2][1]);
                        let left = self.act(h1, self.f_basis(l1, m1));
                        let right = self.f_elem(&self.h.algebra.basis(h2), self.h_mul(l2, m2));
                        lhs.add_scaled(&a.mul(&left, &right), &c);
                    }
                    let mut rhs = Lin::zero();
                    for (c, legs) in self.split(&[h, l], &[2, 2]) {
                        let (h1, h2) = (legs[0][0], legs[0][1]);
                        let (l1, l2) = (legs[1][0], legs[1][1]);
                        let right = self.f_elem(self.h_mul(h2, l2), &self.h.algebra.basis(m));
                        rhs.add_scaled(&a.mul(self.f_basis(h1, l1), &right), &c);
                    }
                    rep.check(lhs == rhs, Axiom::CocycleCondition, &[h, l, m]);
                }
            }
        }
        for h in 0..nh {
            for l in 0..nh {
                for x in 0..na {
                    let mut lhs = Lin::zero();
                    let mut rhs = Lin::zero();
                    for (c, legs) in self.split(&[h, l], &[2, 2]) {
                        let (h1, h2) = (legs[0][0], legs[0][1]);
                        let (l1, l2) = (legs[1][0], legs[1][1]);
                        let inner = self.act(h1, self.act_basis(l1, x));
                        lhs.add_scaled(&a.mul(&inner, self.f_basis(h2, l2)), &c);
                        let acted = self.act_elem(self.h_mul(h2, l2), &a.basis(x));
                        rhs.add_scaled(&a.mul(self.f_basis(h1, l1), &acted), &c);
                    }
                    rep.check(lhs == rhs, Axiom::TwistedModule, &[h, l, x]);
                }
            }
        }
        rep
    }
}

/// Appends an element as a new last tensor leg.
pub fn tensor_append(t: &Tensor, x: &Elem) -> Tensor {
    let mut out = Lin::zero();
    for (w, c) in t.iter() {
        for (i, d) in x.iter() {
            let mut w2 = w.clone();
            w2.push(*i);
            out.add_term(w2, c * d);
        }
    }
    out
}

/// Checks the weak-action, normality, cocycle and twisted-module
/// conditions. Algebra and Hopf axioms are checked separately.
pub fn verify_crossed_axioms(
    a: &AlgebraData,
    h: &HopfData,
    action: &WeakActionData,
    cocycle: &CocycleData,
) -> Result<Report, StructureError> {
    let data = CrossedData::new(a.clone(), h.clone(), action.clone(), cocycle.clone())?;
    Ok(data.verify())
}

/// An assembled crossed product.
#[derive(Clone, Debug)]
pub struct CrossedProduct {
    pub data: CrossedData,
    pub e: AlgebraData,
    pub conv_inverse: Option<CocycleData>,
}

impl core::ops::Deref for CrossedProduct {
    type Target = CrossedData;
    fn deref(&self) -> &CrossedData {
        &self.data
    }
}

/// Verifies all axioms and assembles `E`. The convolution inverse is
/// attached when it exists.
pub fn build_crossed_product(
    a: AlgebraData,
    h: HopfData,
    action: WeakActionData,
    cocycle: CocycleData,
) -> Result<CrossedProduct, CrossedError> {
    let mut rep = a.verify();
    rep.merge(verify_hopf(&h));
    if !rep.passed() {
        return Err(CrossedError::AxiomViolation(rep));
    }
    let data = CrossedData::new(a, h, action, cocycle)?;
    let rep = data.verify();
    if !rep.passed() {
        return Err(CrossedError::AxiomViolation(rep));
    }
    let e = assemble(&data);
    let rep = e.verify();
    if !rep.passed() {
        return Err(CrossedError::AxiomViolation(rep));
    }
    let mut cp = CrossedProduct {
        data,
        e,
        conv_inverse: None,
    };
    cp.conv_inverse = convolution_inverse(&cp).ok();
    Ok(cp)
}

/// Multiplication table of `A #_f H` from the defining formula.
pub fn assemble(d: &CrossedData) -> AlgebraData {
    let (na, nh) = (d.dim_a(), d.dim_h());
    let labels = (0..na * nh)
        .map(|i| format!("{}#{}", d.a.labels[i / nh], d.h.algebra.labels[i % nh]))
        .collect();
    let mut mult = vec![vec![Lin::zero(); na * nh]; na * nh];
    for a in 0..na {
        for h in 0..nh {
            for b in 0..na {
                for l in 0..nh {
                    let mut out: Elem = Lin::zero();
                    for (c, legs) in d.split(&[h, l], &[3, 2]) {
                        let (h1, h2, h3) = (legs[0][0], legs[0][1], legs[0][2]);
                        let (l1, l2) = (legs[1][0], legs[1][1]);
                        let left = d.a.mul(&d.a.basis(a), d.act_basis(h1, b));
                        let aval = d.a.mul(&left, d.f_basis(h2, l1));
                        for (x, u) in aval.iter() {
                            for (y, v) in d.h_mul(h3, l2).iter() {
                                out.add_term(x * nh + y, &(&c * u) * v);
                            }
                        }
                    }
                    mult[a * nh + h][b * nh + l] = out;
                }
            }
        }
    }
    AlgebraData {
        field: d.field(),
        labels,
        mult,
    }
}

impl CrossedProduct {
    pub fn dim_e(&self) -> usize {
        self.e.dim()
    }

    /// `a # h` for basis indices.
    pub fn e_index(&self, a: usize, h: usize) -> usize {
        a * self.dim_h() + h
    }

    pub fn e_split(&self, e: usize) -> (usize, usize) {
        (e / self.dim_h(), e % self.dim_h())
    }

    /// True when `e` is `a # 1`.
    pub fn e_in_a(&self, e: usize) -> bool {
        e.is_multiple_of(self.dim_h())
    }

    /// `Σ x ⊗ y ↦ Σ x # y` for `x ∈ A`, `y ∈ H`.
    pub fn smash(&self, a: &Elem, h: &Elem) -> Elem {
        let mut out = Lin::zero();
        for (x, c) in a.iter() {
            for (y, d) in h.iter() {
                out.add_term(self.e_index(*x, *y), c * d);
            }
        }
        out
    }

    pub fn e_mul(&self, x: &Elem, y: &Elem) -> Elem {
        self.e.mul(x, y)
    }

    pub fn e_basis(&self, i: usize) -> Elem {
        self.e.basis(i)
    }

    /// `(1 # h)^{-1} = f^{-1}(S(h^{(2)}), h^{(3)}) # S(h^{(1)})` for basis `h`.
    pub fn unit_section_inverse(&self, h: usize) -> Result<Elem, CrossedError> {
        let finv = self.conv_inverse.as_ref().ok_or(CrossedError::NotInvertible)?;
        let mut out = Lin::zero();
        for (c, legs) in self.split(&[h], &[3]) {
            let (h1, h2, h3) = (legs[0][0], legs[0][1], legs[0][2]);
            let s2 = self.h.antipode_of(&self.h.algebra.basis(h2));
            let s1 = self.h.antipode_of(&self.h.algebra.basis(h1));
            let mut aval = Lin::zero();
            for (y, d) in s2.iter() {
                aval.add_scaled(&finv.f[*y][h3], d);
            }
            out.add_scaled(&self.smash(&aval, &s1), &c);
        }
        Ok(out)
    }

    /// `1 # h` for basis `h`.
    pub fn unit_section(&self, h: usize) -> Elem {
        self.e_basis(self.e_index(0, h))
    }
}

/// Solves `f * g = ε⊗ε` (and `g * f = ε⊗ε`) in `Hom(H⊗H, A)`.
pub fn convolution_inverse(cp: &CrossedProduct) -> Result<CocycleData, CrossedError> {
    let right = solve_convolution(cp, true)?;
    let left = solve_convolution(cp, false)?;
    if right != left {
        return Err(CrossedError::NotInvertible);
    }
    Ok(right)
}

/// With `right = true` solves `f * g = u`, otherwise `g * f = u`.
fn solve_convolution(cp: &CrossedProduct, right: bool) -> Result<CocycleData, CrossedError> {
    let (na, nh) = (cp.dim_a(), cp.dim_h());
    let fs = cp.field();
    let idx = |h: usize, l: usize, a: usize| (h * nh + l) * na + a;
    let n = nh * nh * na;
    let mut cols: Vec<Lin<usize>> = vec![Lin::zero(); n];
    for h in 0..nh {
        for l in 0..nh {
            for (c, legs) in cp.split(&[h, l], &[2, 2]) {
                let (h1, h2) = (legs[0][0], legs[0][1]);
                let (l1, l2) = (legs[1][0], legs[1][1]);
                for a in 0..na {
                    let prod = if right {
                        cp.a.mul(cp.f_basis(h1, l1), &cp.a.basis(a))
                    } else {
                        cp.a.mul(&cp.a.basis(a), cp.f_basis(h2, l2))
                    };
                    let col = if right { idx(h2, l2, a) } else { idx(h1, l1, a) };
                    for (x, v) in prod.iter() {
                        cols[col].add_term(idx(h, l, *x), &c * v);
                    }
                }
            }
        }
    }
    let m = ExactMatrix::from_columns(fs, n, &cols);
    let mut rhs = vec![fs.zero(); n];
    for h in 0..nh {
        for l in 0..nh {
            rhs[idx(h, l, 0)] = &cp.h.counit[h] * &cp.h.counit[l];
        }
    }
    let sol = m.solve(&rhs).map_err(|e| match e {
        LinalgError::NoSolution => CrossedError::NotInvertible,
        LinalgError::ShapeMismatch { .. } => CrossedError::NotInvertible,
    })?;
    // A solution must be unique for an inverse in a finite-dimensional algebra.
    if m.rank() != n {
        return Err(CrossedError::NotInvertible);
    }
    let mut f = vec![vec![Lin::zero(); nh]; nh];
    for h in 0..nh {
        for l in 0..nh {
            let mut e = BTreeMap::new();
            for a in 0..na {
                let v = &sol[idx(h, l, a)];
                if !v.is_zero() {
                    e.insert(a, v.clone());
                }
            }
            f[h][l] = e.into_iter().collect();
        }
    }
    Ok(CocycleData { f })
}

/// `(f * g)(h, l)` on basis elements.
pub fn convolve(cp: &CrossedData, f: &CocycleData, g: &CocycleData, h: usize, l: usize) -> Elem {
    let mut out = Lin::zero();
    for (c, legs) in cp.split(&[h, l], &[2, 2]) {
        let (h1, h2) = (legs[0][0], legs[0][1]);
        let (l1, l2) = (legs[1][0], legs[1][1]);
        out.add_scaled(&cp.a.mul(&f.f[h1][l1], &g.f[h2][l2]), &c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{builtin, BUILTIN_NAMES};

    fn fields() -> [FieldSpec; 3] {
        [FieldSpec::Rationals, FieldSpec::prime(2).unwrap(), FieldSpec::prime(5).unwrap()]
    }

    #[test]
    fn every_builtin_assembles_with_an_inverse() {
        for fs in fields() {
            for name in BUILTIN_NAMES {
                let cp = builtin(name, fs).unwrap();
                assert!(cp.conv_inverse.is_some(), "{name}");
                assert!(cp.e.verify().passed(), "{name}");
            }
        }
    }

    #[test]
    fn z4_inverse_cocycle() {
        // n² = 1, so f⁻¹(g, g) = n
        let cp = builtin("z4_as_cocycle_extension", FieldSpec::Rationals).unwrap();
        let inv = cp.conv_inverse.as_ref().unwrap();
        assert_eq!(inv.f[1][1], Lin::single(1, FieldSpec::Rationals.one()));
        assert_eq!(inv.f[0][1], cp.a.one());
    }

    #[test]
    fn unit_section_inverse_is_convolution_inverse() {
        for fs in fields() {
            for name in BUILTIN_NAMES {
                let cp = builtin(name, fs).unwrap();
                for h in 0..cp.dim_h() {
                    let mut acc = Lin::zero();
                    for (c, legs) in cp.split(&[h], &[2]) {
                        let u = cp.unit_section(legs[0][0]);
                        let v = cp.unit_section_inverse(legs[0][1]).unwrap();
                        acc.add_scaled(&cp.e_mul(&u, &v), &c);
                    }
                    assert_eq!(acc, cp.e.scalar(cp.h.counit[h].clone()), "{name} h = {h}");
                }
            }
        }
    }

    #[test]
    fn group_like_section_inverts_pointwise() {
        let cp = builtin("z4_as_cocycle_extension", FieldSpec::Rationals).unwrap();
        let g = cp.unit_section(1);
        let gi = cp.unit_section_inverse(1).unwrap();
        assert_eq!(cp.e_mul(&g, &gi), cp.e.one());
        assert_eq!(cp.e_mul(&gi, &g), cp.e.one());
    }

    #[test]
    fn zero_cocycle_is_not_invertible() {
        let cp = builtin("z2_trivial", FieldSpec::Rationals).unwrap();
        let mut data = cp.data.clone();
        data.cocycle.f[1][1] = Lin::zero();
        let broken = CrossedProduct {
            e: cp.e.clone(),
            conv_inverse: None,
            data,
        };
        assert_eq!(convolution_inverse(&broken), Err(CrossedError::NotInvertible));
    }
}
