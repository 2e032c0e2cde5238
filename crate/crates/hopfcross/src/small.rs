//! The small complexes `X̂_*(E,M)`, `X̂^*(E,M)`, `X̄_*(E,M)`, `X̄^*(E,M)`,
//! the isomorphisms `θ` between them, the `H`-action on `H_*(A,M)` and
//! `H^*(A,M)`, and `H`-(co)homology with coefficients.
//!
//! The hat complexes are `M ⊗_{E^e} X` and `Hom_{E^e}(X, M)`; the
//! overline ones are their conjugates under `θ`. The displayed closed
//! formulas for all four are evaluated separately and compared.
//!
//! Generators are [`XGen`] in both cases: for hat complexes they stand for
//! `H̄^s ⊗ Ā^r`, for overline complexes for `Ā^r ⊗ H̄^s`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{Elem, HopfData, Tensor};
use crate::coeff::{BarData, Coefficients, GenIndex, Sandwich};
use crate::complex::{ChainComplex, ComplexError, FilteredComplex, Variance};
use crate::crossed::{CrossedError, CrossedProduct};
use crate::linalg::ExactMatrix;
use crate::lin::Lin;
use crate::resolution::{add_x_terms, tensor_of, Framed, XGen, XResolution};
use crate::scalar::{sign, FieldSpec};
use crate::tensor::words;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SmallError {
    NotInvertible,
    Complex(ComplexError),
}

impl fmt::Display for SmallError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SmallError::NotInvertible => write!(f, "cocycle is not convolution invertible"),
            SmallError::Complex(e) => write!(f, "{e}"),
        }
    }
}

impl From<ComplexError> for SmallError {
    fn from(e: ComplexError) -> Self {
        SmallError::Complex(e)
    }
}

impl From<CrossedError> for SmallError {
    fn from(_: CrossedError) -> Self {
        SmallError::NotInvertible
    }
}

/// A displayed formula disagreeing with the construction it should match.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaMismatch {
    pub formula: &'static str,
    pub degree: usize,
    pub witness: String,
}

impl fmt::Display for FormulaMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} disagrees in degree {} at {}", self.formula, self.degree, self.witness)
    }
}

/// Which summand of the differential to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Full,
    /// Only `d^l`.
    Component(usize),
}

/// Chains put `e' ⋅ m ⋅ e` for a term `e ⊗ g ⊗ e'` of `d(1 ⊗ g ⊗ 1)`.
fn flip(x: &Sandwich<XGen>) -> Sandwich<XGen> {
    x.iter()
        .map(|(k, c)| (Framed::new(k.right, k.gen.clone(), k.left), c.clone()))
        .collect()
}

fn level_s(g: &XGen) -> i64 {
    g.s() as i64
}

/// How `(1 # 𝔥^{(1)})^{-1}` is read in the displayed `d̄^l`, `l ≥ 2`, where
/// `𝔥 = h_{s-l+1} ⋯ h_s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum InverseReading {
    /// `(1#h_s^{(1)})^{-1} ⋯ (1#h_{s-l+1}^{(1)})^{-1}`, as in the inverse of `θ`.
    #[default]
    ReversedProduct,
    /// `(1 # h_{s-l+1}^{(1)} ⋯ h_s^{(1)})^{-1}`. Differs from the above by a
    /// cocycle factor unless `f` takes scalar values.
    OfProduct,
}

/// Small complexes of `E` with coefficients in `M`, built on a resolution.
pub struct SmallComplexes<'r, 'a> {
    pub res: &'r XResolution<'a>,
    pub coef: Coefficients<'r>,
    pub reading: InverseReading,
}

impl<'r, 'a> SmallComplexes<'r, 'a> {
    pub fn new(res: &'r XResolution<'a>, coef: Coefficients<'r>) -> Self {
        SmallComplexes {
            res,
            coef,
            reading: InverseReading::default(),
        }
    }

    pub fn with_reading(mut self, reading: InverseReading) -> Self {
        self.reading = reading;
        self
    }

    fn cp(&self) -> &'a CrossedProduct {
        self.res.crossed()
    }

    fn fs(&self) -> FieldSpec {
        self.cp().field()
    }

    pub fn generators(&self, n: usize) -> GenIndex<XGen> {
        GenIndex::new(self.res.generators(n))
    }

    fn all_generators(&self, top: usize) -> Vec<GenIndex<XGen>> {
        (0..=top).map(|n| self.generators(n)).collect()
    }

    // ----- hat complexes -----

    /// Sandwich of `d̂` (or one component) at `g ∈ X_{n+1}`.
    pub fn hat_formula(&self, variance: Variance, part: Part, g: &XGen) -> Sandwich<XGen> {
        let d = match part {
            Part::Full => (*self.res.d_gen(g)).clone(),
            Part::Component(l) => (*self.res.dl(l, g)).clone(),
        };
        match variance {
            Variance::Homological => flip(&d),
            Variance::Cohomological => d,
        }
    }

    /// `X̂_*(E,M)` or `X̂^*(E,M)` in degrees `0..=top`, filtered by `s`.
    pub fn hat_complex(&self, variance: Variance, top: usize) -> Result<FilteredComplex, SmallError> {
        let gens = self.all_generators(top);
        Ok(self
            .coef
            .build(variance, &gens, |_, g| self.hat_formula(variance, Part::Full, g), level_s)?)
    }

    /// The matrix of `d̂^l` alone between degrees `n+1` and `n`.
    pub fn hat_component(&self, variance: Variance, l: usize, n: usize) -> ExactMatrix {
        let (lo, hi) = (self.generators(n), self.generators(n + 1));
        let f = |g: &XGen| self.hat_formula(variance, Part::Component(l), g);
        match variance {
            Variance::Homological => self.coef.chain_matrix(&hi, &lo, f),
            Variance::Cohomological => self.coef.cochain_matrix(&lo, &hi, f),
        }
    }

    /// Every `d̂^l` with `l ≥ 2` vanishes in degrees `≤ top`. Returns the
    /// first nonzero block `(l, degree of source)` otherwise.
    pub fn higher_components_vanish(&self, variance: Variance, top: usize) -> Result<usize, (usize, usize)> {
        let mut count = 0;
        for n in 1..top {
            for l in 2..=n + 1 {
                count += 1;
                if !self.hat_component(variance, l, n).is_zero() {
                    return Err((l, n + 1));
                }
            }
        }
        Ok(count)
    }

    // ----- literal hat formulas -----

    fn a_e(&self, a: usize) -> Elem {
        self.cp().e_basis(self.cp().e_index(a, 0))
    }

    fn h_e(&self, h: &Elem) -> Elem {
        self.cp().smash(&self.cp().a.basis(0), h)
    }

    fn e_one(&self) -> Elem {
        self.cp().e_basis(0)
    }

    fn hb(&self, h: usize) -> Elem {
        self.cp().h.algebra.basis(h)
    }

    fn ab(&self, a: usize) -> Elem {
        self.cp().a.basis(a)
    }

    fn h_tensor(&self, hs: &[usize]) -> Tensor {
        tensor_of(self.fs(), &hs.iter().map(|&h| self.hb(h)).collect::<Vec<_>>())
    }

    fn a_tensor(&self, avec: &[usize]) -> Tensor {
        tensor_of(self.fs(), &avec.iter().map(|&a| self.ab(a)).collect::<Vec<_>>())
    }

    fn h_product(&self, legs: &[usize]) -> Elem {
        let h = &self.cp().h.algebra;
        legs.iter().fold(h.basis(0), |acc, &x| h.mul(&acc, &h.basis(x)))
    }

    /// `(1 # 𝔥)^{-1}` for the legs `w` of `𝔥`, per [`InverseReading`].
    fn block_inverse(&self, w: &[usize]) -> Result<Elem, SmallError> {
        let cp = self.cp();
        match self.reading {
            InverseReading::ReversedProduct => {
                let mut u = self.e_one();
                for &h in w.iter().rev() {
                    u = cp.e_mul(&u, &cp.unit_section_inverse(h)?);
                }
                Ok(u)
            }
            InverseReading::OfProduct => {
                let mut out = Lin::zero();
                for (i, c) in self.h_product(w).iter() {
                    out.add_scaled(&cp.unit_section_inverse(*i)?, c);
                }
                Ok(out)
            }
        }
    }

    /// The merges `Σ_{i=1}^{r-1} (-1)^i … a_i a_{i+1} …`, shared by all four
    /// literal `d^0` formulas.
    fn a_merges(&self, out: &mut Sandwich<XGen>, hs: &[usize], avec: &[usize]) {
        let fs = self.fs();
        let ht = self.h_tensor(hs);
        let r = avec.len();
        for i in 1..r {
            let mut legs: Vec<Elem> = avec[..i - 1].iter().map(|&a| self.ab(a)).collect();
            legs.push(self.cp().a.mul_basis(avec[i - 1], avec[i]).clone());
            legs.extend(avec[i + 1..].iter().map(|&a| self.ab(a)));
            add_x_terms(out, &sign(fs, i), &self.e_one(), &ht, &tensor_of(fs, &legs), &self.e_one());
        }
    }

    /// The displayed `d̂` (chains) at `x = h ⊗ a`, as a sandwich on `m`.
    pub fn literal_hat_chain(&self, part: Part, g: &XGen) -> Sandwich<XGen> {
        let cp = self.cp();
        let fs = self.fs();
        let (r, s) = (g.r(), g.s());
        let (hs, avec) = (&g.hs[..], &g.avec[..]);
        let mut out = Lin::zero();
        let want = |l: usize| part == Part::Full || part == Part::Component(l);
        if want(0) && r > 0 {
            // m a_1^{\overline{h^{(1)}}} ⊗ h^{(2)} ⊗ a_{2r}
            for (c, legs) in cp.split(hs, &vec![2; s]) {
                let w1: Vec<usize> = legs.iter().map(|x| x[0]).collect();
                let w2: Vec<usize> = legs.iter().map(|x| x[1]).collect();
                let alpha = cp.act_iter(&self.ab(avec[0]), &w1);
                let right = cp.smash(&alpha, &self.hb(0));
                add_x_terms(&mut out, &c, &self.e_one(), &self.h_tensor(&w2), &self.a_tensor(&avec[1..]), &right);
            }
            add_x_terms(
                &mut out,
                &sign(fs, r),
                &self.a_e(avec[r - 1]),
                &self.h_tensor(hs),
                &self.a_tensor(&avec[..r - 1]),
                &self.e_one(),
            );
            self.a_merges(&mut out, hs, avec);
        }
        if want(1) && s > 0 {
            let at = self.a_tensor(avec);
            add_x_terms(
                &mut out,
                &sign(fs, r),
                &self.e_one(),
                &self.h_tensor(&hs[1..]),
                &at,
                &self.h_e(&self.hb(hs[0])),
            );
            for (c, legs) in cp.split(&hs[s - 1..], &[2]) {
                let acted = cp.act_vec(avec, &[legs[0][0]]);
                add_x_terms(
                    &mut out,
                    &(&sign(fs, r + s) * &c),
                    &self.h_e(&self.hb(legs[0][1])),
                    &self.h_tensor(&hs[..s - 1]),
                    &acted,
                    &self.e_one(),
                );
            }
            for i in 1..s {
                // h_1..h_{i+1} split in two, the rest kept
                let counts: Vec<usize> = (0..s).map(|k| if k <= i { 2 } else { 1 }).collect();
                for (c, legs) in cp.split(hs, &counts) {
                    let pre1: Vec<usize> = legs[..i - 1].iter().map(|x| x[0]).collect();
                    let fv = cp.act_iter(cp.f_basis(legs[i - 1][0], legs[i][0]), &pre1);
                    let mut word: Vec<Elem> = legs[..i - 1].iter().map(|x| self.hb(x[1])).collect();
                    word.push(cp.h_mul(legs[i - 1][1], legs[i][1]).clone());
                    word.extend(legs[i + 1..].iter().map(|x| self.hb(x[0])));
                    add_x_terms(
                        &mut out,
                        &(&sign(fs, r + i) * &c),
                        &self.e_one(),
                        &tensor_of(fs, &word),
                        &at,
                        &cp.smash(&fv, &self.hb(0)),
                    );
                }
            }
        }
        for l in 2..=s {
            if !want(l) {
                continue;
            }
            for (c, legs) in cp.split(&hs[s - l..], &vec![2; l]) {
                let w1: Vec<usize> = legs.iter().map(|x| x[0]).collect();
                let w2: Vec<usize> = legs.iter().map(|x| x[1]).collect();
                let fv = self.res.fcoeff(l, &w1, avec);
                add_x_terms(
                    &mut out,
                    &(&sign(fs, l * (r + s)) * &c),
                    &self.h_e(&self.h_product(&w2)),
                    &self.h_tensor(&hs[..s - l]),
                    &fv,
                    &self.e_one(),
                );
            }
        }
        out
    }

    /// The displayed `d̂` (cochains): `(d̂φ)(h ⊗ a)` as a sandwich on `φ`.
    pub fn literal_hat_cochain(&self, part: Part, g: &XGen) -> Sandwich<XGen> {
        let cp = self.cp();
        let fs = self.fs();
        let (r, s) = (g.r(), g.s());
        let (hs, avec) = (&g.hs[..], &g.avec[..]);
        let mut out = Lin::zero();
        let want = |l: usize| part == Part::Full || part == Part::Component(l);
        if want(0) && r > 0 {
            for (c, legs) in cp.split(hs, &vec![2; s]) {
                let w1: Vec<usize> = legs.iter().map(|x| x[0]).collect();
                let w2: Vec<usize> = legs.iter().map(|x| x[1]).collect();
                let alpha = cp.act_iter(&self.ab(avec[0]), &w1);
                let left = cp.smash(&alpha, &self.hb(0));
                add_x_terms(&mut out, &c, &left, &self.h_tensor(&w2), &self.a_tensor(&avec[1..]), &self.e_one());
            }
            add_x_terms(
                &mut out,
                &sign(fs, r),
                &self.e_one(),
                &self.h_tensor(hs),
                &self.a_tensor(&avec[..r - 1]),
                &self.a_e(avec[r - 1]),
            );
            self.a_merges(&mut out, hs, avec);
        }
        if want(1) && s > 0 {
            let at = self.a_tensor(avec);
            add_x_terms(
                &mut out,
                &sign(fs, r),
                &self.h_e(&self.hb(hs[0])),
                &self.h_tensor(&hs[1..]),
                &at,
                &self.e_one(),
            );
            for (c, legs) in cp.split(&hs[s - 1..], &[2]) {
                let acted = cp.act_vec(avec, &[legs[0][0]]);
                add_x_terms(
                    &mut out,
                    &(&sign(fs, r + s) * &c),
                    &self.e_one(),
                    &self.h_tensor(&hs[..s - 1]),
                    &acted,
                    &self.h_e(&self.hb(legs[0][1])),
                );
            }
            for i in 1..s {
                let counts: Vec<usize> = (0..s).map(|k| if k <= i { 2 } else { 1 }).collect();
                for (c, legs) in cp.split(hs, &counts) {
                    let pre1: Vec<usize> = legs[..i - 1].iter().map(|x| x[0]).collect();
                    let fv = cp.act_iter(cp.f_basis(legs[i - 1][0], legs[i][0]), &pre1);
                    let mut word: Vec<Elem> = legs[..i - 1].iter().map(|x| self.hb(x[1])).collect();
                    word.push(cp.h_mul(legs[i - 1][1], legs[i][1]).clone());
                    word.extend(legs[i + 1..].iter().map(|x| self.hb(x[0])));
                    add_x_terms(
                        &mut out,
                        &(&sign(fs, r + i) * &c),
                        &cp.smash(&fv, &self.hb(0)),
                        &tensor_of(fs, &word),
                        &at,
                        &self.e_one(),
                    );
                }
            }
        }
        for l in 2..=s {
            if !want(l) {
                continue;
            }
            for (c, legs) in cp.split(&hs[s - l..], &vec![2; l]) {
                let w1: Vec<usize> = legs.iter().map(|x| x[0]).collect();
                let w2: Vec<usize> = legs.iter().map(|x| x[1]).collect();
                let fv = self.res.fcoeff(l, &w1, avec);
                add_x_terms(
                    &mut out,
                    &(&sign(fs, l * (r + s)) * &c),
                    &self.e_one(),
                    &self.h_tensor(&hs[..s - l]),
                    &fv,
                    &self.h_e(&self.h_product(&w2)),
                );
            }
        }
        out
    }

    /// Compares the displayed hat formulas with `M ⊗_{E^e} X` and
    /// `Hom_{E^e}(X, M)` on generators of degree `1..=top`, sandwich by
    /// sandwich.
    pub fn check_literal_hat(&self, variance: Variance, top: usize) -> Result<usize, FormulaMismatch> {
        let mut count = 0;
        for n in 1..=top {
            for g in self.res.generators(n) {
                count += 1;
                let lit = match variance {
                    Variance::Homological => self.literal_hat_chain(Part::Full, &g),
                    Variance::Cohomological => self.literal_hat_cochain(Part::Full, &g),
                };
                if lit != self.hat_formula(variance, Part::Full, &g) {
                    return Err(FormulaMismatch {
                        formula: match variance {
                            Variance::Homological => "displayed d̂ (homology)",
                            Variance::Cohomological => "displayed d̂ (cohomology)",
                        },
                        degree: n,
                        witness: format!("{g:?}"),
                    });
                }
            }
        }
        Ok(count)
    }

    // ----- θ -----

    /// `Σ c (u, h^{(2)})` with `u = (1#h_1^{(1)}) ⋯ (1#h_s^{(1)})`, or with
    /// `u = (1#h_s^{(1)})^{-1} ⋯ (1#h_1^{(1)})^{-1}` when `inverse`.
    fn theta_parts(&self, hs: &[usize], inverse: bool) -> Result<Vec<(Elem, Vec<usize>, crate::Scalar)>, SmallError> {
        let cp = self.cp();
        let mut out = Vec::new();
        for (c, legs) in cp.split(hs, &vec![2; hs.len()]) {
            if legs.iter().any(|x| x[1] == 0) {
                continue;
            }
            let mut u = self.e_one();
            if inverse {
                for x in legs.iter().rev() {
                    u = cp.e_mul(&u, &cp.unit_section_inverse(x[0])?);
                }
            } else {
                for x in &legs {
                    u = cp.e_mul(&u, &cp.unit_section(x[0]));
                }
            }
            out.push((u, legs.iter().map(|x| x[1]).collect(), c));
        }
        Ok(out)
    }

    fn theta_sandwich(&self, g: &XGen, inverse: bool, variance: Variance) -> Result<Sandwich<XGen>, SmallError> {
        let mut out = Lin::zero();
        for (u, h2, c) in self.theta_parts(&g.hs, inverse)? {
            let gen = XGen::new(h2, g.avec.clone());
            for (e, d) in u.iter() {
                let fr = match variance {
                    Variance::Homological => Framed::new(0, gen.clone(), *e),
                    Variance::Cohomological => Framed::new(*e, gen.clone(), 0),
                };
                out.add_term(fr, &c * d);
            }
        }
        Ok(out)
    }

    /// `θ_n : X̂_n → X̄_n` (chains) or `θ^n : X̄^n → X̂^n` (cochains).
    pub fn theta(&self, variance: Variance, n: usize) -> Result<ExactMatrix, SmallError> {
        self.theta_matrix(variance, n, false)
    }

    /// The displayed inverse of [`Self::theta`].
    pub fn theta_inverse(&self, variance: Variance, n: usize) -> Result<ExactMatrix, SmallError> {
        self.theta_matrix(variance, n, true)
    }

    fn theta_matrix(&self, variance: Variance, n: usize, inverse: bool) -> Result<ExactMatrix, SmallError> {
        let gens = self.generators(n);
        let mut err = None;
        let m = {
            let f = |g: &XGen| match self.theta_sandwich(g, inverse, variance) {
                Ok(s) => s,
                Err(e) => {
                    err = Some(e);
                    Lin::zero()
                }
            };
            match variance {
                Variance::Homological => self.coef.chain_matrix(&gens, &gens, f),
                Variance::Cohomological => self.coef.cochain_matrix(&gens, &gens, f),
            }
        };
        match err {
            Some(e) => Err(e),
            None => Ok(m),
        }
    }

    /// `X̄` in degrees `0..=top` as the `θ`-conjugate of `X̂`, filtered by `s`.
    pub fn overline_complex(&self, variance: Variance, top: usize) -> Result<FilteredComplex, SmallError> {
        let hat = self.hat_complex(variance, top)?;
        let mut maps = Vec::with_capacity(top);
        for n in 0..top {
            let d = &hat.complex.maps[n];
            // chains: d̄_{n+1} = θ_n d̂_{n+1} θ_{n+1}^{-1}; cochains: δ̄^n = (θ^{n+1})^{-1} δ̂^n θ^n
            let (left, right) = match variance {
                Variance::Homological => (self.theta(variance, n)?, self.theta_inverse(variance, n + 1)?),
                Variance::Cohomological => (self.theta_inverse(variance, n + 1)?, self.theta(variance, n)?),
            };
            let m = left.mul(d).and_then(|x| x.mul(&right)).expect("shapes");
            maps.push(m);
        }
        let complex = ChainComplex::new(self.fs(), variance, hat.complex.dims.clone(), maps)?;
        Ok(FilteredComplex::new(complex, hat.levels.clone())?)
    }

    // ----- literal overline formulas -----

    /// The displayed `d̄` (chains) at `x = a ⊗ h`.
    pub fn literal_overline_chain(&self, part: Part, g: &XGen) -> Result<Sandwich<XGen>, SmallError> {
        let cp = self.cp();
        let fs = self.fs();
        let (r, s) = (g.r(), g.s());
        let (hs, avec) = (&g.hs[..], &g.avec[..]);
        let mut out = Lin::zero();
        let want = |l: usize| part == Part::Full || part == Part::Component(l);
        let ht = self.h_tensor(hs);
        if want(0) && r > 0 {
            add_x_terms(&mut out, &fs.one(), &self.e_one(), &ht, &self.a_tensor(&avec[1..]), &self.a_e(avec[0]));
            add_x_terms(
                &mut out,
                &sign(fs, r),
                &self.a_e(avec[r - 1]),
                &ht,
                &self.a_tensor(&avec[..r - 1]),
                &self.e_one(),
            );
            self.a_merges(&mut out, hs, avec);
        }
        if want(1) && s > 0 {
            let at = self.a_tensor(avec);
            let eps = &cp.h.counit[hs[0]];
            if !eps.is_zero() {
                add_x_terms(&mut out, &(&sign(fs, r) * eps), &self.e_one(), &self.h_tensor(&hs[1..]), &at, &self.e_one());
            }
            for (c, legs) in cp.split(&hs[s - 1..], &[3]) {
                let (h1, h2, h3) = (legs[0][0], legs[0][1], legs[0][2]);
                add_x_terms(
                    &mut out,
                    &(&sign(fs, r + s) * &c),
                    &self.h_e(&self.hb(h3)),
                    &self.h_tensor(&hs[..s - 1]),
                    &cp.act_vec(avec, &[h2]),
                    &cp.unit_section_inverse(h1)?,
                );
            }
            for i in 1..s {
                let mut word: Vec<Elem> = hs[..i - 1].iter().map(|&h| self.hb(h)).collect();
                word.push(cp.h_mul(hs[i - 1], hs[i]).clone());
                word.extend(hs[i + 1..].iter().map(|&h| self.hb(h)));
                add_x_terms(&mut out, &sign(fs, r + i), &self.e_one(), &tensor_of(fs, &word), &at, &self.e_one());
            }
        }
        for l in 2..=s {
            if !want(l) {
                continue;
            }
            // the untouched legs h_{1,s-l} are placed after F
            for (c, legs) in cp.split(&hs[s - l..], &vec![3; l]) {
                let w1: Vec<usize> = legs.iter().map(|x| x[0]).collect();
                let w2: Vec<usize> = legs.iter().map(|x| x[1]).collect();
                let w3: Vec<usize> = legs.iter().map(|x| x[2]).collect();
                let fv = self.res.fcoeff(l, &w2, avec);
                add_x_terms(
                    &mut out,
                    &(&sign(fs, l * (r + s)) * &c),
                    &self.h_e(&self.h_product(&w3)),
                    &self.h_tensor(&hs[..s - l]),
                    &fv,
                    &self.block_inverse(&w1)?,
                );
            }
        }
        Ok(out)
    }

    /// The displayed `d̄` (cochains): `(d̄φ)(a ⊗ h)`; the sign of the
    /// `l ≥ 2` terms is taken outside the inverse.
    pub fn literal_overline_cochain(&self, part: Part, g: &XGen) -> Result<Sandwich<XGen>, SmallError> {
        let cp = self.cp();
        let fs = self.fs();
        let (r, s) = (g.r(), g.s());
        let (hs, avec) = (&g.hs[..], &g.avec[..]);
        let mut out = Lin::zero();
        let want = |l: usize| part == Part::Full || part == Part::Component(l);
        let ht = self.h_tensor(hs);
        if want(0) && r > 0 {
            add_x_terms(&mut out, &fs.one(), &self.a_e(avec[0]), &ht, &self.a_tensor(&avec[1..]), &self.e_one());
            add_x_terms(
                &mut out,
                &sign(fs, r),
                &self.e_one(),
                &ht,
                &self.a_tensor(&avec[..r - 1]),
                &self.a_e(avec[r - 1]),
            );
            self.a_merges(&mut out, hs, avec);
        }
        if want(1) && s > 0 {
            let at = self.a_tensor(avec);
            let eps = &cp.h.counit[hs[0]];
            if !eps.is_zero() {
                add_x_terms(&mut out, &(&sign(fs, r) * eps), &self.e_one(), &self.h_tensor(&hs[1..]), &at, &self.e_one());
            }
            for (c, legs) in cp.split(&hs[s - 1..], &[3]) {
                let (h1, h2, h3) = (legs[0][0], legs[0][1], legs[0][2]);
                add_x_terms(
                    &mut out,
                    &(&sign(fs, r + s) * &c),
                    &cp.unit_section_inverse(h1)?,
                    &self.h_tensor(&hs[..s - 1]),
                    &cp.act_vec(avec, &[h2]),
                    &self.h_e(&self.hb(h3)),
                );
            }
            for i in 1..s {
                let mut word: Vec<Elem> = hs[..i - 1].iter().map(|&h| self.hb(h)).collect();
                word.push(cp.h_mul(hs[i - 1], hs[i]).clone());
                word.extend(hs[i + 1..].iter().map(|&h| self.hb(h)));
                add_x_terms(&mut out, &sign(fs, r + i), &self.e_one(), &tensor_of(fs, &word), &at, &self.e_one());
            }
        }
        for l in 2..=s {
            if !want(l) {
                continue;
            }
            for (c, legs) in cp.split(&hs[s - l..], &vec![3; l]) {
                let w1: Vec<usize> = legs.iter().map(|x| x[0]).collect();
                let w2: Vec<usize> = legs.iter().map(|x| x[1]).collect();
                let w3: Vec<usize> = legs.iter().map(|x| x[2]).collect();
                let fv = self.res.fcoeff(l, &w2, avec);
                add_x_terms(
                    &mut out,
                    &(&sign(fs, l * (r + s)) * &c),
                    &self.block_inverse(&w1)?,
                    &self.h_tensor(&hs[..s - l]),
                    &fv,
                    &self.h_e(&self.h_product(&w3)),
                );
            }
        }
        Ok(out)
    }

    /// `X̄` from the displayed formulas, degrees `0..=top`.
    pub fn literal_overline_complex(&self, variance: Variance, top: usize) -> Result<FilteredComplex, SmallError> {
        let gens = self.all_generators(top);
        let mut err = None;
        let fc = self.coef.build(
            variance,
            &gens,
            |_, g| {
                let r = match variance {
                    Variance::Homological => self.literal_overline_chain(Part::Full, g),
                    Variance::Cohomological => self.literal_overline_cochain(Part::Full, g),
                };
                r.unwrap_or_else(|e| {
                    err = Some(e);
                    Lin::zero()
                })
            },
            level_s,
        );
        if let Some(e) = err {
            return Err(e);
        }
        Ok(fc?)
    }

    /// `θθ^{-1} = θ^{-1}θ = id` and `θ d̂ = d̄ θ` with `d̄` from the displayed
    /// formulas, degrees `≤ top`.
    pub fn check_theta(&self, variance: Variance, top: usize) -> Result<ThetaReport, SmallError> {
        let hat = self.hat_complex(variance, top)?;
        let lit = self.literal_overline_complex(variance, top)?;
        let mut rep = ThetaReport::default();
        let thetas: Vec<ExactMatrix> = (0..=top).map(|n| self.theta(variance, n)).collect::<Result<_, _>>()?;
        for (n, t) in thetas.iter().enumerate() {
            let ti = self.theta_inverse(variance, n)?;
            let id = ExactMatrix::identity(self.fs(), t.rows());
            let ok = t.mul(&ti).map(|x| x == id).unwrap_or(false) && ti.mul(t).map(|x| x == id).unwrap_or(false);
            if !ok && rep.inverse_failure.is_none() {
                rep.inverse_failure = Some(n);
            }
        }
        for n in 0..top {
            let ok = match variance {
                // θ_n d̂_{n+1} = d̄_{n+1} θ_{n+1}
                Variance::Homological => {
                    thetas[n].mul(&hat.complex.maps[n]).ok() == lit.complex.maps[n].mul(&thetas[n + 1]).ok()
                }
                // θ^{n+1} δ̄^n = δ̂^n θ^n
                Variance::Cohomological => {
                    thetas[n + 1].mul(&lit.complex.maps[n]).ok() == hat.complex.maps[n].mul(&thetas[n]).ok()
                }
            };
            if !ok && rep.chain_map_failure.is_none() {
                rep.chain_map_failure = Some(n + 1);
            }
        }
        rep.degrees = top;
        Ok(rep)
    }
}

/// Outcome of [`SmallComplexes::check_theta`]. Degrees are those of the
/// first failure.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ThetaReport {
    pub degrees: usize,
    pub inverse_failure: Option<usize>,
    pub chain_map_failure: Option<usize>,
}

impl ThetaReport {
    pub fn passed(&self) -> bool {
        self.inverse_failure.is_none() && self.chain_map_failure.is_none()
    }
}

// ----- H-action on H_*(A, M) -----

/// The normalized Hochschild (co)chains of `A` with coefficients in `M`
/// (restricted along `a ↦ a # 1`), together with `θ^h`.
pub struct AlgebraPart<'r> {
    pub cp: &'r CrossedProduct,
    pub coef: Coefficients<'r>,
    to_e: Vec<usize>,
}

impl<'r> AlgebraPart<'r> {
    pub fn new(cp: &'r CrossedProduct, coef: Coefficients<'r>) -> Self {
        let to_e = (0..cp.dim_a()).map(|a| cp.e_index(a, 0)).collect();
        AlgebraPart { cp, coef, to_e }
    }

    pub fn bar(&self) -> BarData<'_> {
        BarData {
            b: &self.cp.a,
            to_e: &self.to_e,
        }
    }

    pub fn complex(&self, variance: Variance, top: usize) -> Result<FilteredComplex, ComplexError> {
        self.bar().complex(&self.coef, variance, top, |_| 0)
    }

    /// `θ^h_r(m ⊗ a) = (1#h^{(3)}) m (1#h^{(1)})^{-1} ⊗ a^{h^{(2)}}` (chains) or
    /// `θ_h(φ)(a) = (1#h^{(1)})^{-1} φ(a^{h^{(2)}}) (1#h^{(3)})` (cochains), in degree `r`.
    pub fn theta_h(&self, variance: Variance, h: usize, r: usize) -> Result<ExactMatrix, SmallError> {
        let cp = self.cp;
        let gens = self.bar().generators(r);
        let mut parts = Vec::new();
        for (c, legs) in cp.split(&[h], &[3]) {
            let (h1, h2, h3) = (legs[0][0], legs[0][1], legs[0][2]);
            parts.push((c, cp.unit_section_inverse(h1)?, h2, cp.unit_section(h3)));
        }
        let f = |w: &Vec<usize>| {
            let mut out: Sandwich<Vec<usize>> = Lin::zero();
            for (c, inv1, h2, u3) in &parts {
                let acted = cp.act_vec(w, &[*h2]);
                for (aw, ca) in acted.iter() {
                    if aw.contains(&0) {
                        continue;
                    }
                    for (x, cx) in inv1.iter() {
                        for (y, cy) in u3.iter() {
                            let fr = match variance {
                                Variance::Homological => Framed::new(*y, aw.clone(), *x),
                                Variance::Cohomological => Framed::new(*x, aw.clone(), *y),
                            };
                            out.add_term(fr, &(&(c * ca) * cx) * cy);
                        }
                    }
                }
            }
            out
        };
        Ok(match variance {
            Variance::Homological => self.coef.chain_matrix(&gens, &gens, f),
            Variance::Cohomological => self.coef.cochain_matrix(&gens, &gens, f),
        })
    }

    /// Matrices of `θ^h` (or `θ_h`) on `H_r(A,M)` (or `H^r`) for every basis
    /// `h`, in degrees `0..top`, with respect to cycle bases of `complex`.
    pub fn h_module(&self, variance: Variance, top: usize) -> Result<HModule, SmallError> {
        let c = self.complex(variance, top)?;
        let bases = crate::coeff::homology_bases(&c.complex);
        let nh = self.cp.dim_h();
        let mut action = Vec::with_capacity(top);
        for (r, b) in bases.iter().enumerate() {
            let mut per_h = Vec::with_capacity(nh);
            for h in 0..nh {
                let t = self.theta_h(variance, h, r)?;
                per_h.push(b.induced(&t, b).expect("θ^h maps cycles to cycles"));
            }
            action.push(per_h);
        }
        Ok(HModule { variance, action })
    }
}

/// `action[r][h]`: the matrix of basis `h` on `H_r(A,M)` or `H^r(A,M)`.
#[derive(Clone, Debug)]
pub struct HModule {
    pub variance: Variance,
    pub action: Vec<Vec<ExactMatrix>>,
}

impl HModule {
    pub fn dims(&self) -> Vec<usize> {
        self.action.iter().map(|a| a[0].rows()).collect()
    }

    /// Module law on basis pairs: `ρ(h)ρ(l) = ρ(hl)` for the left action on
    /// homology, `ρ(l)ρ(h) = ρ(hl)` for the right action on cohomology.
    /// Returns the first failing `(r, h, l)`.
    pub fn check_module_law(&self, hopf: &HopfData) -> Result<usize, (usize, usize, usize)> {
        let mut count = 0;
        let nh = hopf.dim();
        for (r, rho) in self.action.iter().enumerate() {
            let field = rho[0].field();
            let d = rho[0].rows();
            if rho[0] != ExactMatrix::identity(field, d) {
                return Err((r, 0, 0));
            }
            for h in 0..nh {
                for l in 0..nh {
                    count += 1;
                    let lhs = match self.variance {
                        Variance::Homological => rho[h].mul(&rho[l]),
                        Variance::Cohomological => rho[l].mul(&rho[h]),
                    }
                    .expect("square");
                    let mut rhs = ExactMatrix::zeros(field, d, d);
                    for (k, c) in hopf.algebra.mul_basis(h, l).iter() {
                        rhs = rhs.add(&rho[*k].scale(c)).expect("square");
                    }
                    if lhs != rhs {
                        return Err((r, h, l));
                    }
                }
            }
        }
        Ok(count)
    }
}

// ----- H-(co)homology with coefficients -----

/// `H_s(H, N)` for a left module (`action[h]` = matrix of `h`), or
/// `H^s(H, N)` for a right module (`action[h]` = matrix of `· h`), from the
/// normalized bar complex of `H`, degrees `0..=top`.
pub fn hopf_complex(hopf: &HopfData, action: &[ExactMatrix], variance: Variance, top: usize) -> ChainComplex {
    let field = hopf.field();
    let dn = action.first().map_or(0, |m| m.rows());
    let nh = hopf.dim();
    let gens: Vec<GenIndex<Vec<usize>>> = (0..=top)
        .map(|s| {
            GenIndex::new(
                words(nh - 1, s)
                    .into_iter()
                    .map(|w| w.into_iter().map(|x| x + 1).collect())
                    .collect(),
            )
        })
        .collect();
    let col = |v: &[crate::Scalar]| -> Lin<usize> {
        v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
    };
    let act = |h: usize, n: usize| -> Lin<usize> {
        let mut e = vec![field.zero(); dn];
        e[n] = field.one();
        col(&action[h].mul_vec(&e))
    };
    // Terms of the bar differential on a word of length s+1: (coefficient,
    // shorter word, which end acts: None / Some(first) / Some(last)).
    let faces = |w: &[usize]| -> Vec<(crate::Scalar, Vec<usize>, Option<bool>)> {
        let s1 = w.len();
        let mut out = Vec::new();
        let eps = &hopf.counit[w[0]];
        if !eps.is_zero() {
            out.push((eps.clone(), w[1..].to_vec(), None));
        }
        for i in 1..s1 {
            for (p, c) in hopf.algebra.mul_basis(w[i - 1], w[i]).iter() {
                if *p == 0 {
                    continue;
                }
                let mut v = w[..i - 1].to_vec();
                v.push(*p);
                v.extend_from_slice(&w[i + 1..]);
                out.push((&sign(field, i) * c, v, None));
            }
        }
        out.push((sign(field, s1), w[..s1 - 1].to_vec(), Some(true)));
        out
    };
    let mut maps = Vec::with_capacity(top);
    for s in 0..top {
        let (lo, hi) = (&gens[s], &gens[s + 1]);
        let m = match variance {
            Variance::Homological => {
                let mut cols = vec![Lin::zero(); hi.len() * dn];
                for (wi, w) in hi.gens().iter().enumerate() {
                    for (c, v, acts) in faces(w) {
                        let vi = lo.get(&v).expect("face");
                        for n in 0..dn {
                            let img = if acts.is_some() { act(w[w.len() - 1], n) } else { Lin::single(n, field.one()) };
                            for (i, x) in img.iter() {
                                cols[wi * dn + n].add_term(vi * dn + i, &c * x);
                            }
                        }
                    }
                }
                ExactMatrix::from_columns(field, lo.len() * dn, &cols)
            }
            Variance::Cohomological => {
                let mut cols = vec![Lin::zero(); lo.len() * dn];
                for (wi, w) in hi.gens().iter().enumerate() {
                    for (c, v, acts) in faces(w) {
                        let vi = lo.get(&v).expect("face");
                        for n in 0..dn {
                            // φ = (v ↦ n_basis); its value at w, possibly acted on
                            let img = if acts.is_some() { act(w[w.len() - 1], n) } else { Lin::single(n, field.one()) };
                            for (i, x) in img.iter() {
                                cols[vi * dn + n].add_term(wi * dn + i, &c * x);
                            }
                        }
                    }
                }
                ExactMatrix::from_columns(field, hi.len() * dn, &cols)
            }
        };
        maps.push(m);
    }
    let dims = gens.iter().map(|g| g.len() * dn).collect();
    ChainComplex::new(field, variance, dims, maps).expect("bar complex of H has consistent shapes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{builtin, z2_hopf, BUILTIN_NAMES};
    use crate::complex::homology_dims;
    use crate::crossed::BimoduleData;
    use crate::resolution::Construction;

    fn trivial_module(hopf: &HopfData) -> Vec<ExactMatrix> {
        let f = hopf.field();
        hopf.counit
            .iter()
            .map(|e| ExactMatrix::from_dense(f, &[vec![e.clone()]]))
            .collect()
    }

    #[test]
    fn group_homology_of_z2() {
        let f2 = FieldSpec::prime(2).unwrap();
        let h = z2_hopf(f2);
        for v in [Variance::Homological, Variance::Cohomological] {
            let c = hopf_complex(&h, &trivial_module(&h), v, 4);
            assert_eq!(homology_dims(&c).unwrap(), vec![1, 1, 1, 1]);
        }
        let h = z2_hopf(FieldSpec::Rationals);
        for v in [Variance::Homological, Variance::Cohomological] {
            let c = hopf_complex(&h, &trivial_module(&h), v, 4);
            assert_eq!(homology_dims(&c).unwrap(), vec![1, 0, 0, 0]);
        }
    }

    fn each_builtin(f: impl Fn(&str, FieldSpec)) {
        for fs in [FieldSpec::Rationals, FieldSpec::prime(3).unwrap()] {
            for name in BUILTIN_NAMES {
                f(name, fs);
            }
        }
    }

    #[test]
    fn hat_complexes_square_to_zero_and_match_literal() {
        each_builtin(|name, fs| {
            let cp = builtin(name, fs).unwrap();
            let m = BimoduleData::regular(&cp.e);
            let res = XResolution::new(&cp, Construction::Recursive);
            let sc = SmallComplexes::new(&res, Coefficients::new(&cp.e, &m));
            for v in [Variance::Homological, Variance::Cohomological] {
                sc.hat_complex(v, 3).unwrap().complex.check_square_zero().unwrap();
                sc.check_literal_hat(v, 3).unwrap_or_else(|e| panic!("{name}: {e}"));
            }
        });
    }

    #[test]
    fn theta_is_an_isomorphism_of_complexes() {
        each_builtin(|name, fs| {
            let cp = builtin(name, fs).unwrap();
            if cp.conv_inverse.is_none() {
                return;
            }
            let m = BimoduleData::regular(&cp.e);
            let res = XResolution::new(&cp, Construction::Recursive);
            let sc = SmallComplexes::new(&res, Coefficients::new(&cp.e, &m));
            for v in [Variance::Homological, Variance::Cohomological] {
                let rep = sc.check_theta(v, 3).unwrap();
                assert!(rep.passed(), "{name} {v:?}: {rep:?}");
            }
        });
    }

    #[test]
    fn module_law_on_homology() {
        each_builtin(|name, fs| {
            let cp = builtin(name, fs).unwrap();
            let m = BimoduleData::regular(&cp.e);
            let ap = AlgebraPart::new(&cp, Coefficients::new(&cp.e, &m));
            for v in [Variance::Homological, Variance::Cohomological] {
                let hm = ap.h_module(v, 3).unwrap();
                hm.check_module_law(&cp.h).unwrap_or_else(|e| panic!("{name} {v:?}: {e:?}"));
            }
        });
    }

    #[test]
    fn product_inverse_reading_needs_scalar_cocycle() {
        let fs = FieldSpec::Rationals;
        for name in BUILTIN_NAMES {
            let cp = builtin(name, fs).unwrap();
            if cp.conv_inverse.is_none() {
                continue;
            }
            let m = BimoduleData::regular(&cp.e);
            let res = XResolution::new(&cp, Construction::Recursive);
            let sc = SmallComplexes::new(&res, Coefficients::new(&cp.e, &m)).with_reading(InverseReading::OfProduct);
            let rep = sc.check_theta(Variance::Homological, 3).unwrap();
            if name == "z4_as_cocycle_extension" {
                assert_eq!(rep.chain_map_failure, Some(2));
            } else {
                assert!(rep.passed(), "{name}: {rep:?}");
            }
        }
    }
}
