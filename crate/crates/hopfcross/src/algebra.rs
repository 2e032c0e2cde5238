//! Algebras and Hopf algebras given by structure constants.
//!
//! Basis index 0 is always the unit. Quotients `B/k` are represented by the
//! span of the remaining basis vectors.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::lin::Lin;
use crate::linalg::ExactMatrix;
use crate::scalar::{FieldSpec, Scalar};

/// Element of a finite-dimensional algebra, as a combination of basis indices.
pub type Elem = Lin<usize>;

/// Element of a tensor power, keyed by multi-indices.
pub type Tensor = Lin<Vec<usize>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Associativity,
    LeftUnit,
    RightUnit,
    Coassociativity,
    LeftCounit,
    RightCounit,
    ComultMultiplicative,
    ComultUnit,
    CounitMultiplicative,
    CounitUnit,
    AntipodeLeft,
    AntipodeRight,
    ActionMultiplicative,
    ActionUnit,
    ActionNormalized,
    CocycleNormalLeft,
    CocycleNormalRight,
    CocycleCondition,
    TwistedModule,
    BimoduleLeftAssoc,
    BimoduleRightAssoc,
    BimoduleLeftUnit,
    BimoduleRightUnit,
    BimoduleCommute,
}

impl Axiom {
    pub fn name(&self) -> &'static str {
        match self {
            Axiom::Associativity => "associativity",
            Axiom::LeftUnit => "left_unit",
            Axiom::RightUnit => "right_unit",
            Axiom::Coassociativity => "coassociativity",
            Axiom::LeftCounit => "left_counit",
            Axiom::RightCounit => "right_counit",
            Axiom::ComultMultiplicative => "comult_multiplicative",
            Axiom::ComultUnit => "comult_unit",
            Axiom::CounitMultiplicative => "counit_multiplicative",
            Axiom::CounitUnit => "counit_unit",
            Axiom::AntipodeLeft => "antipode_left",
            Axiom::AntipodeRight => "antipode_right",
            Axiom::ActionMultiplicative => "action_multiplicative",
            Axiom::ActionUnit => "action_unit",
            Axiom::ActionNormalized => "action_normalized",
            Axiom::CocycleNormalLeft => "cocycle_normal_left",
            Axiom::CocycleNormalRight => "cocycle_normal_right",
            Axiom::CocycleCondition => "cocycle_condition",
            Axiom::TwistedModule => "twisted_module",
            Axiom::BimoduleLeftAssoc => "bimodule_left_assoc",
            Axiom::BimoduleRightAssoc => "bimodule_right_assoc",
            Axiom::BimoduleLeftUnit => "bimodule_left_unit",
            Axiom::BimoduleRightUnit => "bimodule_right_unit",
            Axiom::BimoduleCommute => "bimodule_commute",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A failed identity together with the basis tuple witnessing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

/// Outcome of an axiom check: number of identities tested and failures.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn check(&mut self, ok: bool, axiom: Axiom, witness: &[usize]) {
        self.checked += 1;
        if !ok {
            self.violations.push(Violation {
                axiom,
                witness: witness.to_vec(),
            });
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }

    pub fn failed_axioms(&self) -> Vec<Axiom> {
        let mut v: Vec<Axiom> = self.violations.iter().map(|x| x.axiom).collect();
        v.sort();
        v.dedup();
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureError {
    DimensionMismatch { what: String, expected: usize, found: usize },
    IndexOutOfRange { what: String, index: usize, bound: usize },
    UnitNotBasis,
    WrongField { what: String },
}

impl fmt::Display for StructureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureError::DimensionMismatch {
                what,
                expected,
                found,
            } => write!(f, "{what}: expected length {expected}, found {found}"),
            StructureError::IndexOutOfRange { what, index, bound } => {
                write!(f, "{what}: index {index} out of range (dimension {bound})")
            }
            StructureError::UnitNotBasis => write!(f, "basis vector 0 is not the unit"),
            StructureError::WrongField { what } => write!(f, "{what}: scalar from another field"),
        }
    }
}

pub(crate) fn check_len(what: &str, expected: usize, found: usize) -> Result<(), StructureError> {
    if expected != found {
        return Err(StructureError::DimensionMismatch {
            what: what.into(),
            expected,
            found,
        });
    }
    Ok(())
}

pub(crate) fn check_elem(
    what: &str,
    e: &Elem,
    dim: usize,
    field: FieldSpec,
) -> Result<(), StructureError> {
    for (i, c) in e.iter() {
        if *i >= dim {
            return Err(StructureError::IndexOutOfRange {
                what: what.into(),
                index: *i,
                bound: dim,
            });
        }
        if c.field() != field {
            return Err(StructureError::WrongField { what: what.into() });
        }
    }
    Ok(())
}

/// A finite-dimensional algebra with `mult[i][j] = e_i · e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraData {
    pub field: FieldSpec,
    pub labels: Vec<String>,
    pub mult: Vec<Vec<Elem>>,
}

impl AlgebraData {
    pub fn new(
        field: FieldSpec,
        labels: Vec<String>,
        mult: Vec<Vec<Elem>>,
    ) -> Result<Self, StructureError> {
        let dim = labels.len();
        check_len("mult", dim, mult.len())?;
        for (i, row) in mult.iter().enumerate() {
            check_len(&format!("mult[{i}]"), dim, row.len())?;
            for (j, e) in row.iter().enumerate() {
                check_elem(&format!("mult[{i}][{j}]"), e, dim, field)?;
            }
        }
        Ok(AlgebraData {
            field,
            labels,
            mult,
        })
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: FieldSpec) -> Self {
        AlgebraData {
            field,
            labels: vec!["1".into()],
            mult: vec![vec![Lin::single(0, field.one())]],
        }
    }

    /// Group algebra from a Cayley table with the identity at index 0.
    pub fn group_algebra(field: FieldSpec, labels: Vec<String>, table: &[Vec<usize>]) -> Self {
        let mult = table
            .iter()
            .map(|row| row.iter().map(|&k| Lin::single(k, field.one())).collect())
            .collect();
        AlgebraData {
            field,
            labels,
            mult,
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn basis(&self, i: usize) -> Elem {
        Lin::single(i, self.field.one())
    }

    pub fn one(&self) -> Elem {
        self.basis(0)
    }

    pub fn scalar(&self, c: Scalar) -> Elem {
        Lin::single(0, c)
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &Elem {
        &self.mult[i][j]
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        let mut out = Lin::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_scaled(&self.mult[*i][*j], &(a * b));
            }
        }
        out
    }

    /// Product of a word of basis elements, left to right.
    pub fn mul_word(&self, word: &[usize]) -> Elem {
        let mut acc = self.one();
        for &w in word {
            acc = self.mul(&acc, &self.basis(w));
        }
        acc
    }

    /// Associativity and two-sided unit on all basis tuples.
    pub fn verify(&self) -> Report {
        let n = self.dim();
        let mut rep = Report::default();
        for i in 0..n {
            rep.check(self.mult[0][i] == self.basis(i), Axiom::LeftUnit, &[i]);
            rep.check(self.mult[i][0] == self.basis(i), Axiom::RightUnit, &[i]);
        }
        for i in 0..n {
            for j in 0..n {
                let ij = &self.mult[i][j];
                for k in 0..n {
                    let lhs = self.mul(ij, &self.basis(k));
                    let rhs = self.mul(&self.basis(i), &self.mult[j][k]);
                    rep.check(lhs == rhs, Axiom::Associativity, &[i, j, k]);
                }
            }
        }
        rep
    }

    /// Structure matrix of left multiplication by `x`.
    pub fn left_mult_matrix(&self, x: &Elem) -> ExactMatrix {
        let cols: Vec<Elem> = (0..self.dim())
            .map(|j| self.mul(x, &self.basis(j)))
            .collect();
        ExactMatrix::from_columns(self.field, self.dim(), &cols)
    }
}

/// Free-standing form of [`AlgebraData::verify`].
pub fn verify_algebra(a: &AlgebraData) -> Report {
    a.verify()
}

/// A Hopf algebra. `comult[i]` is `Δ(e_i)` keyed by basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfData {
    pub algebra: AlgebraData,
    pub comult: Vec<Lin<(usize, usize)>>,
    pub counit: Vec<Scalar>,
    pub antipode: Vec<Elem>,
}

impl HopfData {
    pub fn new(
        algebra: AlgebraData,
        comult: Vec<Lin<(usize, usize)>>,
        counit: Vec<Scalar>,
        antipode: Vec<Elem>,
    ) -> Result<Self, StructureError> {
        let n = algebra.dim();
        check_len("comult", n, comult.len())?;
        check_len("counit", n, counit.len())?;
        check_len("antipode", n, antipode.len())?;
        for (i, d) in comult.iter().enumerate() {
            for ((a, b), _) in d.iter() {
                let bad = if *a >= n { *a } else { *b };
                if *a >= n || *b >= n {
                    return Err(StructureError::IndexOutOfRange {
                        what: format!("comult[{i}]"),
                        index: bad,
                        bound: n,
                    });
                }
            }
        }
        for (i, s) in antipode.iter().enumerate() {
            check_elem(&format!("antipode[{i}]"), s, n, algebra.field)?;
        }
        Ok(HopfData {
            algebra,
            comult,
            counit,
            antipode,
        })
    }

    /// The ground field as a Hopf algebra.
    pub fn ground(field: FieldSpec) -> Self {
        HopfData {
            algebra: AlgebraData::ground(field),
            comult: vec![Lin::single((0, 0), field.one())],
            counit: vec![field.one()],
            antipode: vec![Lin::single(0, field.one())],
        }
    }

    /// Group algebra with group-like basis; `inverse[i]` is the inverse of `i`.
    pub fn group_algebra(
        field: FieldSpec,
        labels: Vec<String>,
        table: &[Vec<usize>],
        inverse: &[usize],
    ) -> Self {
        let algebra = AlgebraData::group_algebra(field, labels, table);
        let n = algebra.dim();
        HopfData {
            comult: (0..n).map(|i| Lin::single((i, i), field.one())).collect(),
            counit: vec![field.one(); n],
            antipode: inverse.iter().map(|&k| Lin::single(k, field.one())).collect(),
            algebra,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn counit_of(&self, x: &Elem) -> Scalar {
        let mut s = self.field().zero();
        for (i, c) in x.iter() {
            s += &(c * &self.counit[*i]);
        }
        s
    }

    pub fn antipode_of(&self, x: &Elem) -> Elem {
        x.map_linear(|i| self.antipode[*i].clone())
    }

    pub fn comult_of(&self, x: &Elem) -> Lin<(usize, usize)> {
        x.map_linear(|i| self.comult[*i].clone())
    }

    /// `(Δ ⊗ id)` applied to a tensor in `H ⊗ H`.
    fn delta_left(&self, t: &Lin<(usize, usize)>) -> Lin<(usize, usize, usize)> {
        let mut out = Lin::zero();
        for ((a, b), c) in t.iter() {
            for ((x, y), d) in self.comult[*a].iter() {
                out.add_term((*x, *y, *b), c * d);
            }
        }
        out
    }

    fn delta_right(&self, t: &Lin<(usize, usize)>) -> Lin<(usize, usize, usize)> {
        let mut out = Lin::zero();
        for ((a, b), c) in t.iter() {
            for ((x, y), d) in self.comult[*b].iter() {
                out.add_term((*a, *x, *y), c * d);
            }
        }
        out
    }

    /// Product in `H ⊗ H`.
    fn mul2(&self, s: &Lin<(usize, usize)>, t: &Lin<(usize, usize)>) -> Lin<(usize, usize)> {
        let mut out = Lin::zero();
        for ((a, b), c) in s.iter() {
            for ((x, y), d) in t.iter() {
                let cd = c * d;
                for (p, u) in self.algebra.mult[*a][*x].iter() {
                    for (q, v) in self.algebra.mult[*b][*y].iter() {
                        out.add_term((*p, *q), &(&cd * u) * v);
                    }
                }
            }
        }
        out
    }

    /// Coalgebra, bialgebra and antipode axioms on basis elements.
    pub fn verify(&self) -> Report {
        let n = self.dim();
        let a = &self.algebra;
        let mut rep = Report::default();
        for i in 0..n {
            let d = &self.comult[i];
            rep.check(
                self.delta_left(d) == self.delta_right(d),
                Axiom::Coassociativity,
                &[i],
            );
            let left: Elem = d
                .iter()
                .map(|((x, y), c)| (*y, c * &self.counit[*x]))
                .collect();
            let right: Elem = d
                .iter()
                .map(|((x, y), c)| (*x, c * &self.counit[*y]))
                .collect();
            rep.check(left == a.basis(i), Axiom::LeftCounit, &[i]);
            rep.check(right == a.basis(i), Axiom::RightCounit, &[i]);
            let mut sl = Lin::zero();
            let mut sr = Lin::zero();
            for ((x, y), c) in d.iter() {
                sl.add_scaled(&a.mul(&self.antipode[*x], &a.basis(*y)), c);
                sr.add_scaled(&a.mul(&a.basis(*x), &self.antipode[*y]), c);
            }
            let unit = a.scalar(self.counit[i].clone());
            rep.check(sl == unit, Axiom::AntipodeLeft, &[i]);
            rep.check(sr == unit, Axiom::AntipodeRight, &[i]);
        }
        rep.check(
            self.comult[0] == Lin::single((0, 0), self.field().one()),
            Axiom::ComultUnit,
            &[0],
        );
        rep.check(self.counit[0].is_one(), Axiom::CounitUnit, &[0]);
        for i in 0..n {
            for j in 0..n {
                let prod = &a.mult[i][j];
                let lhs = self.comult_of(prod);
                let rhs = self.mul2(&self.comult[i], &self.comult[j]);
                rep.check(lhs == rhs, Axiom::ComultMultiplicative, &[i, j]);
                let e = self.counit_of(prod);
                rep.check(
                    e == &self.counit[i] * &self.counit[j],
                    Axiom::CounitMultiplicative,
                    &[i, j],
                );
            }
        }
        rep
    }
}

/// Algebra axioms of the underlying algebra followed by the Hopf axioms.
pub fn verify_hopf(h: &HopfData) -> Report {
    let mut rep = h.algebra.verify();
    rep.merge(h.verify());
    rep
}

/// `Δ^{(n-1)}(v)` by left iteration: `(Δ ⊗ id^{n-2}) ∘ Δ^{(n-2)}`.
pub fn sweedler_expand(h: &HopfData, n: usize, v: &Elem) -> Tensor {
    assert!(n >= 1, "at least one leg");
    let mut cur: Tensor = v.iter().map(|(i, c)| (vec![*i], c.clone())).collect();
    for _ in 1..n {
        let mut next = Lin::zero();
        for (word, c) in cur.iter() {
            for ((x, y), d) in h.comult[word[0]].iter() {
                let mut w = Vec::with_capacity(word.len() + 1);
                w.push(*x);
                w.push(*y);
                w.extend_from_slice(&word[1..]);
                next.add_term(w, c * d);
            }
        }
        cur = next;
    }
    cur
}

/// Same as [`sweedler_expand`] but splitting the last leg each time.
pub fn sweedler_expand_right(h: &HopfData, n: usize, v: &Elem) -> Tensor {
    assert!(n >= 1, "at least one leg");
    let mut cur: Tensor = v.iter().map(|(i, c)| (vec![*i], c.clone())).collect();
    for _ in 1..n {
        let mut next = Lin::zero();
        for (word, c) in cur.iter() {
            let last = *word.last().unwrap();
            for ((x, y), d) in h.comult[last].iter() {
                let mut w = word[..word.len() - 1].to_vec();
                w.push(*x);
                w.push(*y);
                next.add_term(w, c * d);
            }
        }
        cur = next;
    }
    cur
}

type Term = (Scalar, Vec<usize>);

/// Precomputed iterated coproducts of basis elements.
#[derive(Clone, Debug)]
pub struct SweedlerTable {
    /// `table[n][i]`: terms of the `n`-leg coproduct of `e_i`.
    table: Vec<Vec<Vec<Term>>>,
}

impl SweedlerTable {
    pub fn new(h: &HopfData, max_legs: usize) -> Self {
        let mut table = vec![Vec::new()];
        for n in 1..=max_legs {
            table.push(
                (0..h.dim())
                    .map(|i| {
                        sweedler_expand(h, n, &h.algebra.basis(i))
                            .into_terms()
                            .into_iter()
                            .map(|(w, c)| (c, w))
                            .collect()
                    })
                    .collect(),
            );
        }
        SweedlerTable { table }
    }

    pub fn max_legs(&self) -> usize {
        self.table.len() - 1
    }

    /// Terms of `Δ^{(n-1)}(e_i)`.
    pub fn legs(&self, i: usize, n: usize) -> &[(Scalar, Vec<usize>)] {
        &self.table[n][i]
    }
}

/// The splitting `B ≅ k ⊕ B̄` with `B̄` spanned by the non-unit basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedSplitting {
    pub parent_dim: usize,
    pub complement_indices: Vec<usize>,
    /// `B → B̄`, size `(dim-1) × dim`.
    pub projection: ExactMatrix,
    /// `B̄ → B`, size `dim × (dim-1)`.
    pub section: ExactMatrix,
}

impl NormalizedSplitting {
    pub fn quotient_dim(&self) -> usize {
        self.complement_indices.len()
    }
}

pub fn normalized_quotient(a: &AlgebraData) -> Result<NormalizedSplitting, StructureError> {
    let n = a.dim();
    if n == 0 {
        return Err(StructureError::UnitNotBasis);
    }
    for i in 0..n {
        if a.mult[0][i] != a.basis(i) || a.mult[i][0] != a.basis(i) {
            return Err(StructureError::UnitNotBasis);
        }
    }
    let f = a.field;
    let comp: Vec<usize> = (1..n).collect();
    let mut proj = ExactMatrix::zeros(f, n - 1, n);
    let mut sect = ExactMatrix::zeros(f, n, n - 1);
    let pcols: Vec<Lin<usize>> = (0..n)
        .map(|j| if j == 0 { Lin::zero() } else { Lin::single(j - 1, f.one()) })
        .collect();
    let scols: Vec<Lin<usize>> = (1..n).map(|j| Lin::single(j, f.one())).collect();
    if n > 0 {
        proj = ExactMatrix::from_columns(f, n - 1, &pcols);
        sect = ExactMatrix::from_columns(f, n, &scols);
    }
    Ok(NormalizedSplitting {
        parent_dim: n,
        complement_indices: comp,
        projection: proj,
        section: sect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{sweedler_hopf, z2_hopf};

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn group_algebra_passes() {
        assert!(z2_hopf(q()).algebra.verify().passed());
    }

    #[test]
    fn sweedler_hopf_passes() {
        let h = sweedler_hopf(q());
        let rep = verify_hopf(&h);
        assert!(rep.passed(), "{:?}", rep.violations);
    }

    #[test]
    fn wrong_antipode_caught_at_x() {
        let mut h = sweedler_hopf(q());
        // S(x) = +gx instead of -gx
        h.antipode[2] = Lin::single(3, q().one());
        let rep = h.verify();
        assert!(rep
            .violations
            .iter()
            .any(|v| v.axiom == Axiom::AntipodeLeft && v.witness == vec![2]));
    }

    #[test]
    fn sweedler_x_two_legs() {
        let h = sweedler_hopf(q());
        let t = sweedler_expand(&h, 2, &h.algebra.basis(2));
        let expect: Tensor = [(vec![2, 0], q().one()), (vec![1, 2], q().one())]
            .into_iter()
            .collect();
        assert_eq!(t, expect);
        let g = sweedler_expand(&h, 3, &h.algebra.basis(1));
        assert_eq!(g, Lin::single(vec![1, 1, 1], q().one()));
        assert_eq!(sweedler_expand(&h, 1, &h.algebra.basis(3)), Lin::single(vec![3], q().one()));
    }

    #[test]
    fn left_and_right_iteration_agree() {
        let h = sweedler_hopf(q());
        for i in 0..4 {
            for n in 1..5 {
                let b = h.algebra.basis(i);
                assert_eq!(sweedler_expand(&h, n, &b), sweedler_expand_right(&h, n, &b));
            }
        }
    }

    #[test]
    fn quotient_dims() {
        assert_eq!(normalized_quotient(&AlgebraData::ground(q())).unwrap().quotient_dim(), 0);
        assert_eq!(normalized_quotient(&z2_hopf(q()).algebra).unwrap().complement_indices, vec![1]);
        let s = normalized_quotient(&sweedler_hopf(q()).algebra).unwrap();
        assert_eq!(s.complement_indices, vec![1, 2, 3]);
        let ps = s.projection.mul(&s.section).unwrap();
        assert_eq!(ps, ExactMatrix::identity(q(), 3));
    }

    #[test]
    fn unit_not_basis_rejected() {
        let f = q();
        // basis (u, v) with u·u = v: index 0 is not the unit
        let mult = vec![
            vec![Lin::single(1, f.one()), Lin::single(1, f.one())],
            vec![Lin::single(1, f.one()), Lin::single(1, f.one())],
        ];
        let a = AlgebraData::new(f, vec!["u".into(), "v".into()], mult).unwrap();
        assert_eq!(normalized_quotient(&a), Err(StructureError::UnitNotBasis));
    }
}
