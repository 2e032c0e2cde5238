//! Complexes with coefficients in an `E`-bimodule `M`.
//!
//! Degree `n` is `M ⊗ k[G_n]` for a finite generator list `G_n`; the basis
//! vector `(g, m)` sits at `index(g) · dim M + m`. Maps are described one
//! generator at a time by sandwiches `Σ c · (l ⋅ _ ⋅ r) ⊗ g'`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{AlgebraData, Elem};
use crate::complex::{ChainComplex, ComplexError, FilteredComplex, Variance};
use crate::crossed::BimoduleData;
use crate::linalg::{ExactMatrix, Solver, SparseVec};
use crate::lin::Lin;
use crate::resolution::Framed;
use crate::scalar::{sign, FieldSpec};
use crate::tensor::words;

/// `Σ c · (left ⋅ _ ⋅ right)` placed at generator `gen`.
pub type Sandwich<G> = Lin<Framed<G>>;

/// A generator list with reverse lookup.
#[derive(Clone, Debug)]
pub struct GenIndex<G: Ord> {
    gens: Vec<G>,
    pos: BTreeMap<G, usize>,
}

impl<G: Ord + Clone> GenIndex<G> {
    pub fn new(gens: Vec<G>) -> Self {
        let pos = gens.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        GenIndex { gens, pos }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn get(&self, g: &G) -> Option<usize> {
        self.pos.get(g).copied()
    }

    pub fn gens(&self) -> &[G] {
        &self.gens
    }
}

/// The bimodule `M` together with the algebra acting on it.
#[derive(Clone, Copy)]
pub struct Coefficients<'a> {
    pub e: &'a AlgebraData,
    pub m: &'a BimoduleData,
}

impl<'a> Coefficients<'a> {
    pub fn new(e: &'a AlgebraData, m: &'a BimoduleData) -> Self {
        Coefficients { e, m }
    }

    pub fn field(&self) -> FieldSpec {
        self.e.field
    }

    pub fn dim_m(&self) -> usize {
        self.m.dim
    }

    /// `l · m_j · r`.
    pub fn sandwich(&self, l: usize, j: usize, r: usize) -> Elem {
        let mj = Lin::single(j, self.field().one());
        self.m.act_right(&self.m.act_left(l, &mj), r)
    }

    /// Chain map `m ⊗ g ↦ Σ c (l m r) ⊗ g'` with `image(g)` giving the
    /// sandwich.
    pub fn chain_matrix<G: Ord + Clone>(
        &self,
        src: &GenIndex<G>,
        tgt: &GenIndex<G>,
        mut image: impl FnMut(&G) -> Sandwich<G>,
    ) -> ExactMatrix {
        let dm = self.dim_m();
        let mut cols: Vec<Lin<usize>> = vec![Lin::zero(); src.len() * dm];
        for (si, g) in src.gens().iter().enumerate() {
            let im = image(g);
            for (fr, c) in im.iter() {
                let ti = tgt.get(&fr.gen).expect("image outside the target basis");
                for j in 0..dm {
                    for (i, x) in self.sandwich(fr.left, j, fr.right).iter() {
                        cols[si * dm + j].add_term(ti * dm + i, c * x);
                    }
                }
            }
        }
        ExactMatrix::from_columns(self.field(), tgt.len() * dm, &cols)
    }

    /// Cochain map `(Fφ)(t) = Σ c · l φ(g) r` with `value(t)` giving the
    /// sandwich over source generators.
    pub fn cochain_matrix<G: Ord + Clone>(
        &self,
        src: &GenIndex<G>,
        tgt: &GenIndex<G>,
        mut value: impl FnMut(&G) -> Sandwich<G>,
    ) -> ExactMatrix {
        let dm = self.dim_m();
        let mut cols: Vec<Lin<usize>> = vec![Lin::zero(); src.len() * dm];
        for (ti, t) in tgt.gens().iter().enumerate() {
            let v = value(t);
            for (fr, c) in v.iter() {
                let si = src.get(&fr.gen).expect("value outside the source basis");
                for j in 0..dm {
                    for (i, x) in self.sandwich(fr.left, j, fr.right).iter() {
                        cols[si * dm + j].add_term(ti * dm + i, c * x);
                    }
                }
            }
        }
        ExactMatrix::from_columns(self.field(), tgt.len() * dm, &cols)
    }

    /// Levels of `M ⊗ k[G]`, one per basis vector.
    pub fn levels<G: Ord + Clone>(&self, gens: &GenIndex<G>, level: impl Fn(&G) -> i64) -> Vec<i64> {
        gens.gens()
            .iter()
            .flat_map(|g| core::iter::repeat_n(level(g), self.dim_m()))
            .collect()
    }

    /// The (co)chain complex on `M ⊗ k[G_0], …, M ⊗ k[G_cap]`.
    /// `formula(n, g)` takes `g ∈ G_{n+1}` and returns, for chains, the
    /// boundary of `m ⊗ g` and, for cochains, `(δφ)(g)`; both are sandwiches
    /// over `G_n`.
    pub fn build<G: Ord + Clone>(
        &self,
        variance: Variance,
        gens: &[GenIndex<G>],
        mut formula: impl FnMut(usize, &G) -> Sandwich<G>,
        level: impl Fn(&G) -> i64,
    ) -> Result<FilteredComplex, ComplexError> {
        let dm = self.dim_m();
        let mut maps = Vec::with_capacity(gens.len().saturating_sub(1));
        for n in 0..gens.len().saturating_sub(1) {
            let m = match variance {
                Variance::Homological => self.chain_matrix(&gens[n + 1], &gens[n], |g| formula(n, g)),
                Variance::Cohomological => self.cochain_matrix(&gens[n], &gens[n + 1], |g| formula(n, g)),
            };
            maps.push(m);
        }
        let dims = gens.iter().map(|g| g.len() * dm).collect();
        let complex = ChainComplex::new(self.field(), variance, dims, maps)?;
        let levels = gens.iter().map(|g| self.levels(g, &level)).collect();
        FilteredComplex::new(complex, levels)
    }
}

/// A basis of `H_n` given by cycle representatives, with coordinates.
pub struct HomologyBasis {
    solver: Solver,
    reps: Vec<SparseVec>,
    rep_cols: Vec<usize>,
    boundary_cols: usize,
}

impl HomologyBasis {
    /// `out` leaves degree `n`, `inn` arrives there; `dim` is `dim C_n`.
    pub fn new(field: FieldSpec, dim: usize, out: Option<&ExactMatrix>, inn: Option<&ExactMatrix>) -> Self {
        let mut solver = Solver::empty(field);
        if let Some(b) = inn {
            for j in 0..b.cols() {
                solver.push(b.column(j).clone());
            }
        }
        let boundary_cols = solver.cols();
        let cycles: Vec<SparseVec> = match out {
            Some(d) => {
                let k = d.kernel_basis();
                (0..k.cols()).map(|j| k.column(j).clone()).collect()
            }
            None => (0..dim).map(|i| vec![(i, field.one())]).collect(),
        };
        let mut reps = Vec::new();
        let mut rep_cols = Vec::new();
        for z in cycles {
            let j = solver.cols();
            if solver.push(z.clone()) {
                reps.push(z);
                rep_cols.push(j);
            }
        }
        HomologyBasis {
            solver,
            reps,
            rep_cols,
            boundary_cols,
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[SparseVec] {
        &self.reps
    }

    /// Class of a cycle in the representative basis; `None` if `z` is not
    /// a cycle.
    pub fn coords(&self, z: &SparseVec) -> Option<SparseVec> {
        let x = self.solver.solve_sparse(z).ok()?;
        Some(
            x.into_iter()
                .filter(|(j, _)| *j >= self.boundary_cols)
                .map(|(j, c)| (self.rep_cols.binary_search(&j).expect("representative column"), c))
                .collect(),
        )
    }

    /// Matrix of the map induced by a chain map `f` into `target`.
    pub fn induced(&self, f: &ExactMatrix, target: &HomologyBasis) -> Option<ExactMatrix> {
        let mut cols = Vec::with_capacity(self.dim());
        for z in &self.reps {
            let mut c = target.coords(&f.apply(z))?;
            c.sort_by_key(|(i, _)| *i);
            cols.push(c);
        }
        Some(ExactMatrix::from_sparse_columns(f.field(), target.dim(), cols))
    }
}

/// Homology bases in degrees `0..top` of a complex.
pub fn homology_bases(c: &ChainComplex) -> Vec<HomologyBasis> {
    (0..c.top())
        .map(|n| HomologyBasis::new(c.field, c.dims[n], c.out_map(n), c.in_map(n)))
        .collect()
}

/// An algebra `B` acting on `M` through `to_e`, a map from the basis of
/// `B` to basis indices of `E` (an algebra map on basis vectors, e.g.
/// `A → A # 1` or the identity of `E`).
#[derive(Clone, Copy)]
pub struct BarData<'a> {
    pub b: &'a AlgebraData,
    pub to_e: &'a [usize],
}

impl<'a> BarData<'a> {
    /// Words over the non-unit basis of `B`.
    pub fn generators(&self, n: usize) -> GenIndex<Vec<usize>> {
        GenIndex::new(
            words(self.b.dim() - 1, n)
                .into_iter()
                .map(|w| w.into_iter().map(|x| x + 1).collect())
                .collect(),
        )
    }

    /// Inner faces `Σ_{i=1}^{n-1} (-1)^i x_1 … x_i x_{i+1} … x_n`.
    fn merges(&self, xs: &[usize], out: &mut Sandwich<Vec<usize>>) {
        let fs = self.b.field;
        for i in 1..xs.len() {
            let sg = sign(fs, i);
            for (p, c) in self.b.mul_basis(xs[i - 1], xs[i]).iter() {
                if *p == 0 {
                    continue;
                }
                let mut w = xs[..i - 1].to_vec();
                w.push(*p);
                w.extend_from_slice(&xs[i + 1..]);
                out.add_term(Framed::new(0, w, 0), &sg * c);
            }
        }
    }

    /// `b(m ⊗ x) = m x_1 ⊗ x_{2n} + Σ (-1)^i m ⊗ … x_i x_{i+1} … + (-1)^n x_n m ⊗ x_{1,n-1}`.
    pub fn boundary(&self, xs: &[usize]) -> Sandwich<Vec<usize>> {
        let fs = self.b.field;
        let n = xs.len();
        let mut out = Lin::zero();
        out.add_term(Framed::new(0, xs[1..].to_vec(), self.to_e[xs[0]]), fs.one());
        self.merges(xs, &mut out);
        out.add_term(Framed::new(self.to_e[xs[n - 1]], xs[..n - 1].to_vec(), 0), sign(fs, n));
        out
    }

    /// `(δφ)(x_1 … x_{n+1}) = x_1 φ(x_{2,n+1}) + Σ (-1)^i φ(… x_i x_{i+1} …)
    /// + (-1)^{n+1} φ(x_{1n}) x_{n+1}`.
    pub fn coboundary(&self, xs: &[usize]) -> Sandwich<Vec<usize>> {
        let fs = self.b.field;
        let n1 = xs.len();
        let mut out = Lin::zero();
        out.add_term(Framed::new(self.to_e[xs[0]], xs[1..].to_vec(), 0), fs.one());
        self.merges(xs, &mut out);
        out.add_term(Framed::new(0, xs[..n1 - 1].to_vec(), self.to_e[xs[n1 - 1]]), sign(fs, n1));
        out
    }

    /// Normalized Hochschild (co)chains in degrees `0..=top`, filtered by
    /// `level`.
    pub fn complex(
        &self,
        coef: &Coefficients<'_>,
        variance: Variance,
        top: usize,
        level: impl Fn(&Vec<usize>) -> i64,
    ) -> Result<FilteredComplex, ComplexError> {
        let gens: Vec<_> = (0..=top).map(|n| self.generators(n)).collect();
        coef.build(
            variance,
            &gens,
            |_, g| match variance {
                Variance::Homological => self.boundary(g),
                Variance::Cohomological => self.coboundary(g),
            },
            level,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::builtin;
    use crate::complex::homology_dims;

    #[test]
    fn bar_complex_of_z2_mod2() {
        let fs = FieldSpec::prime(2).unwrap();
        let cp = builtin("z2_trivial", fs).unwrap();
        let m = BimoduleData::regular(&cp.e);
        let coef = Coefficients::new(&cp.e, &m);
        let to_e: Vec<usize> = (0..cp.dim_e()).collect();
        let bar = BarData { b: &cp.e, to_e: &to_e };
        for v in [Variance::Homological, Variance::Cohomological] {
            let c = bar.complex(&coef, v, 4, |_| 0).unwrap();
            assert_eq!(homology_dims(&c.complex).unwrap(), vec![2, 2, 2, 2]);
        }
    }

    #[test]
    fn bar_complex_of_z2_rational() {
        let fs = FieldSpec::Rationals;
        let cp = builtin("z2_trivial", fs).unwrap();
        let m = BimoduleData::regular(&cp.e);
        let coef = Coefficients::new(&cp.e, &m);
        let to_e: Vec<usize> = (0..cp.dim_e()).collect();
        let bar = BarData { b: &cp.e, to_e: &to_e };
        for v in [Variance::Homological, Variance::Cohomological] {
            let c = bar.complex(&coef, v, 4, |_| 0).unwrap();
            assert_eq!(homology_dims(&c.complex).unwrap(), vec![2, 0, 0, 0]);
        }
    }

    #[test]
    fn induced_identity_is_identity() {
        let fs = FieldSpec::prime(2).unwrap();
        let cp = builtin("z2_trivial", fs).unwrap();
        let m = BimoduleData::regular(&cp.e);
        let coef = Coefficients::new(&cp.e, &m);
        let to_e: Vec<usize> = (0..cp.dim_e()).collect();
        let bar = BarData { b: &cp.e, to_e: &to_e };
        let c = bar.complex(&coef, Variance::Homological, 3, |_| 0).unwrap().complex;
        for (n, hb) in homology_bases(&c).iter().enumerate() {
            let id = ExactMatrix::identity(fs, c.dims[n]);
            assert_eq!(hb.induced(&id, hb).unwrap(), ExactMatrix::identity(fs, hb.dim()));
        }
    }
}
