//! The small bimodule resolution `(X_*, d_*)` of `E = A #_f H`, its
//! contracting homotopy, the normalized bar resolution of `E` and the
//! comparison maps `φ`, `ψ`, `ω` between the two.
//!
//! Free bimodules `E ⊗ V ⊗ E` are stored as [`Framed`] keys over basis
//! indices. Bimodule maps are tabulated on generators `1 ⊗ v ⊗ 1`;
//! left-module maps (the homotopies) on left generators `1 ⊗ v ⊗ e`.
//! Quotients `Ā = A/k` and `H̄ = H/k` are represented by the non-unit basis
//! vectors, so projecting means dropping every term with a unit leg.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use crate::algebra::{Elem, Tensor};
use crate::crossed::CrossedProduct;
use crate::lin::Lin;
use crate::scalar::{sign, FieldSpec, Scalar};
use crate::tensor::words;

/// Generator `h_1 ⊗ … ⊗ h_s ⊗ a_1 ⊗ … ⊗ a_r` of `X_{rs}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct XGen {
    pub hs: Vec<usize>,
    pub avec: Vec<usize>,
}

impl XGen {
    pub fn new(hs: Vec<usize>, avec: Vec<usize>) -> Self {
        XGen { hs, avec }
    }

    pub fn empty() -> Self {
        XGen::new(Vec::new(), Vec::new())
    }

    pub fn r(&self) -> usize {
        self.avec.len()
    }

    pub fn s(&self) -> usize {
        self.hs.len()
    }

    pub fn degree(&self) -> usize {
        self.r() + self.s()
    }
}

/// `left ⊗ gen ⊗ right` in a free bimodule `E ⊗ V ⊗ E`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Framed<G> {
    pub left: usize,
    pub gen: G,
    pub right: usize,
}

impl<G> Framed<G> {
    pub fn new(left: usize, gen: G, right: usize) -> Self {
        Framed { left, gen, right }
    }
}

/// Legs `h_1 … h_s` of `Y_s = E ⊗ H̄^s ⊗ H`. In a [`YKey`] the `right`
/// field holds an `H` basis index, not an `E` index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct YGen(pub Vec<usize>);

pub type XKey = Framed<XGen>;
pub type XElem = Lin<XKey>;
pub type YKey = Framed<YGen>;
pub type YElem = Lin<YKey>;
/// Bar generators are words in the non-unit basis of `E`.
pub type BKey = Framed<Vec<usize>>;
pub type BElem = Lin<BKey>;

/// `1 ⊗ g ⊗ 1`.
pub fn generator<G: Ord + Clone>(fs: FieldSpec, g: G) -> Lin<Framed<G>> {
    Lin::single(Framed::new(0, g, 0), fs.one())
}

/// Extends a map given on generators to an `E`-bimodule map.
pub fn bimodule_extend<G: Ord + Clone, G2: Ord + Clone>(
    cp: &CrossedProduct,
    x: &Lin<Framed<G>>,
    mut img: impl FnMut(&G) -> Rc<Lin<Framed<G2>>>,
) -> Lin<Framed<G2>> {
    let mut out = Lin::zero();
    for (k, c) in x.iter() {
        let im = img(&k.gen);
        for (k2, c2) in im.iter() {
            let cc = c * c2;
            let lprod = cp.e.mul_basis(k.left, k2.left);
            let rprod = cp.e.mul_basis(k2.right, k.right);
            for (l, cl) in lprod.iter() {
                let cl = &cc * cl;
                for (r, cr) in rprod.iter() {
                    out.add_term(Framed::new(*l, k2.gen.clone(), *r), &cl * cr);
                }
            }
        }
    }
    out
}

/// Extends a map given on left generators `1 ⊗ g ⊗ e` to a left
/// `E`-module map.
pub fn left_extend<G: Ord + Clone, G2: Ord + Clone>(
    cp: &CrossedProduct,
    x: &Lin<Framed<G>>,
    mut img: impl FnMut(&G, usize) -> Rc<Lin<Framed<G2>>>,
) -> Lin<Framed<G2>> {
    let mut out = Lin::zero();
    for (k, c) in x.iter() {
        let im = img(&k.gen, k.right);
        for (k2, c2) in im.iter() {
            let cc = c * c2;
            for (l, cl) in cp.e.mul_basis(k.left, k2.left).iter() {
                out.add_term(Framed::new(*l, k2.gen.clone(), k2.right), &cc * cl);
            }
        }
    }
    out
}

/// Cartesian expansion `x_1 ⊗ … ⊗ x_n` of a list of elements.
pub fn tensor_of(fs: FieldSpec, factors: &[Elem]) -> Tensor {
    let mut acc: Tensor = Lin::single(Vec::new(), fs.one());
    for x in factors {
        acc = crate::crossed::tensor_append(&acc, x);
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// `t ⊗ u`.
pub fn tensor_concat(t: &Tensor, u: &Tensor) -> Tensor {
    let mut out = Lin::zero();
    for (w, c) in t.iter() {
        for (v, d) in u.iter() {
            let mut x = w.clone();
            x.extend_from_slice(v);
            out.add_term(x, c * d);
        }
    }
    out
}

/// Sum of `coef · left ⊗ hs ⊗ avec ⊗ right`, dropping unit legs in the
/// quotient factors.
pub(crate) fn add_x_terms(
    out: &mut XElem,
    coef: &Scalar,
    left: &Elem,
    hs: &Tensor,
    avec: &Tensor,
    right: &Elem,
) {
    for (hw, ch) in hs.iter() {
        if hw.contains(&0) {
            continue;
        }
        let c1 = coef * ch;
        for (aw, ca) in avec.iter() {
            if aw.contains(&0) {
                continue;
            }
            let c2 = &c1 * ca;
            for (l, cl) in left.iter() {
                let c3 = &c2 * cl;
                for (r, cr) in right.iter() {
                    out.add_term(
                        Framed::new(*l, XGen::new(hw.clone(), aw.clone()), *r),
                        &c3 * cr,
                    );
                }
            }
        }
    }
}

/// How the higher differentials `d^l` are obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    /// The perturbation recursion through `σ^0`, `∂` and `μ`.
    Recursive,
    /// Closed formulas in terms of the coefficient maps `F_r^{(l)}`.
    Closed,
}

/// A failed identity with the first witness found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityFailure {
    pub identity: &'static str,
    pub degree: usize,
    pub witness: String,
}

impl fmt::Display for IdentityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails in degree {} at {}",
            self.identity, self.degree, self.witness
        )
    }
}

type Memo<K, V> = RefCell<BTreeMap<K, Rc<V>>>;

fn memo_get<K: Ord, V>(m: &Memo<K, V>, k: &K) -> Option<Rc<V>> {
    m.borrow().get(k).cloned()
}

fn memo_put<K: Ord, V>(m: &Memo<K, V>, k: K, v: V) -> Rc<V> {
    let v = Rc::new(v);
    m.borrow_mut().insert(k, v.clone());
    v
}

/// The resolution `(X_*, d_*)` with lazily tabulated differentials and
/// contracting homotopy.
pub struct XResolution<'a> {
    cp: &'a CrossedProduct,
    construction: Construction,
    dl_memo: Memo<(usize, XGen), XElem>,
    d_memo: Memo<XGen, XElem>,
    f_memo: Memo<(usize, Vec<usize>, Vec<usize>), Tensor>,
    sx_memo: Memo<(usize, XGen, usize), XElem>,
    sy_memo: Memo<(usize, Vec<usize>, usize), XElem>,
    sbar_memo: Memo<(XGen, usize), XElem>,
}

impl<'a> XResolution<'a> {
    pub fn new(cp: &'a CrossedProduct, construction: Construction) -> Self {
        XResolution {
            cp,
            construction,
            dl_memo: RefCell::default(),
            d_memo: RefCell::default(),
            f_memo: RefCell::default(),
            sx_memo: RefCell::default(),
            sy_memo: RefCell::default(),
            sbar_memo: RefCell::default(),
        }
    }

    pub fn crossed(&self) -> &'a CrossedProduct {
        self.cp
    }

    pub fn construction(&self) -> Construction {
        self.construction
    }

    fn fs(&self) -> FieldSpec {
        self.cp.field()
    }

    /// Generators of `X_{rs}`, `H̄`-legs first in lexicographic order.
    pub fn block_generators(&self, r: usize, s: usize) -> Vec<XGen> {
        let hw = words(self.cp.dim_h() - 1, s);
        let aw = words(self.cp.dim_a() - 1, r);
        let mut out = Vec::with_capacity(hw.len() * aw.len());
        for h in &hw {
            for a in &aw {
                out.push(XGen::new(
                    h.iter().map(|x| x + 1).collect(),
                    a.iter().map(|x| x + 1).collect(),
                ));
            }
        }
        out
    }

    /// Generators of `X_n`, ordered by `s` ascending.
    pub fn generators(&self, n: usize) -> Vec<XGen> {
        (0..=n)
            .flat_map(|s| self.block_generators(n - s, s))
            .collect()
    }

    fn a_basis(&self, i: usize) -> Elem {
        self.cp.a.basis(i)
    }

    fn h_basis(&self, i: usize) -> Elem {
        self.cp.h.algebra.basis(i)
    }

    fn e_unit(&self) -> Elem {
        self.cp.e_basis(0)
    }

    /// `Σ α_i # β_i` for `α ∈ A`, `β ∈ H`.
    fn smash(&self, a: &Elem, h: &Elem) -> Elem {
        self.cp.smash(a, h)
    }

    // ----- the double complex data -----

    /// `μ_s` on the `r = 0` part of `x`; other blocks map to zero.
    pub fn mu(&self, x: &XElem) -> YElem {
        let cp = self.cp;
        let mut out = Lin::zero();
        for (k, c) in x.iter() {
            if k.gen.r() != 0 {
                continue;
            }
            let (a0, h0) = cp.e_split(k.left);
            let (a1, hl) = cp.e_split(k.right);
            let mut w = vec![h0];
            w.extend_from_slice(&k.gen.hs);
            let counts = vec![2; w.len()];
            for (d, legs) in cp.split(&w, &counts) {
                let w1: Vec<usize> = legs.iter().map(|l| l[0]).collect();
                let alpha = cp.a.mul(&self.a_basis(a0), &cp.act_iter(&self.a_basis(a1), &w1));
                if alpha.is_zero() || legs[1..].iter().any(|l| l[1] == 0) {
                    continue;
                }
                let left = self.smash(&alpha, &self.h_basis(legs[0][1]));
                let hs: Vec<usize> = legs[1..].iter().map(|l| l[1]).collect();
                let cd = c * &d;
                for (e, ce) in left.iter() {
                    out.add_term(Framed::new(*e, YGen(hs.clone()), hl), &cd * ce);
                }
            }
        }
        out
    }

    /// Adds `coef · α w_0 ⊗ w_1 ⊗ … ⊗ w_{s} ` to a `Y` element, where the
    /// first leg joins `α` in `E` and the last is the free `H` leg.
    fn add_y_terms(&self, out: &mut YElem, coef: &Scalar, alpha: &Elem, word: &[Elem]) {
        let fs = self.fs();
        let n = word.len();
        let left = self.smash(alpha, &word[0]);
        let mid = tensor_of(fs, &word[1..n - 1]);
        for (hw, ch) in mid.iter() {
            if hw.contains(&0) {
                continue;
            }
            for (l, cl) in left.iter() {
                for (last, cz) in word[n - 1].iter() {
                    out.add_term(
                        Framed::new(*l, YGen(hw.clone()), *last),
                        &(&(coef * ch) * cl) * cz,
                    );
                }
            }
        }
    }

    /// `∂_s : Y_s → Y_{s-1}`.
    pub fn partial(&self, y: &YElem) -> YElem {
        let cp = self.cp;
        let fs = self.fs();
        let mut out = Lin::zero();
        for (k, c) in y.iter() {
            let (a, h0) = cp.e_split(k.left);
            let mut w = vec![h0];
            w.extend_from_slice(&k.gen.0);
            w.push(k.right);
            let s = k.gen.0.len();
            for i in 0..=s {
                let counts: Vec<usize> = (0..w.len()).map(|t| if t <= i + 1 { 2 } else { 1 }).collect();
                let sg = &sign(fs, i + 1) * c;
                for (d, legs) in cp.split(&w, &counts) {
                    let prefix: Vec<usize> = legs[..i].iter().map(|l| l[0]).collect();
                    let fval = cp.f_basis(legs[i][0], legs[i + 1][0]);
                    let alpha = cp.a.mul(&self.a_basis(a), &cp.act_iter(fval, &prefix));
                    if alpha.is_zero() {
                        continue;
                    }
                    let mut word: Vec<Elem> = legs[..i].iter().map(|l| self.h_basis(l[1])).collect();
                    word.push(cp.h_mul(legs[i][1], legs[i + 1][1]).clone());
                    word.extend(legs[i + 2..].iter().map(|l| self.h_basis(l[0])));
                    self.add_y_terms(&mut out, &(&sg * &d), &alpha, &word);
                }
            }
        }
        out
    }

    /// `σ^0_{0s} : Y_s → X_{0s}`.
    pub fn sigma0_y(&self, y: &YElem) -> XElem {
        let mut out = Lin::zero();
        for (k, c) in y.iter() {
            out.add_term(
                Framed::new(k.left, XGen::new(k.gen.0.clone(), Vec::new()), self.cp.e_index(0, k.right)),
                c.clone(),
            );
        }
        out
    }

    /// `σ^0_{r+1,s} : X_{rs} → X_{r+1,s}`.
    pub fn sigma0_x(&self, x: &XElem) -> XElem {
        let fs = self.fs();
        let mut out = Lin::zero();
        for (k, c) in x.iter() {
            let (a, h) = self.cp.e_split(k.right);
            if a == 0 {
                continue;
            }
            let mut g = k.gen.clone();
            let sg = sign(fs, g.r() + 1);
            g.avec.push(a);
            out.add_term(Framed::new(k.left, g, self.cp.e_index(0, h)), &sg * c);
        }
        out
    }

    /// `σ^{-1}_{s+1}(y) = (-1)^s y ⊗ 1_H`.
    pub fn sigma_minus(&self, y: &YElem) -> YElem {
        let fs = self.fs();
        let mut out = Lin::zero();
        for (k, c) in y.iter() {
            if k.right == 0 {
                continue;
            }
            let mut hs = k.gen.0.clone();
            let sg = sign(fs, hs.len());
            hs.push(k.right);
            out.add_term(Framed::new(k.left, YGen(hs), 0), &sg * c);
        }
        out
    }

    /// `d^0_{rs}` on a generator.
    fn d0_gen(&self, g: &XGen) -> XElem {
        let cp = self.cp;
        let fs = self.fs();
        let r = g.r();
        let mut out = Lin::zero();
        if r == 0 {
            return out;
        }
        let mut w = vec![0];
        w.extend_from_slice(&g.hs);
        let counts = vec![2; w.len()];
        let rest = tensor_of(fs, &g.avec[1..].iter().map(|&a| self.a_basis(a)).collect::<Vec<_>>());
        for (d, legs) in cp.split(&w, &counts) {
            let w1: Vec<usize> = legs.iter().map(|l| l[0]).collect();
            let alpha = cp.act_iter(&self.a_basis(g.avec[0]), &w1);
            let left = self.smash(&alpha, &self.h_basis(legs[0][1]));
            let hs = tensor_of(fs, &legs[1..].iter().map(|l| self.h_basis(l[1])).collect::<Vec<_>>());
            add_x_terms(&mut out, &d, &left, &hs, &rest, &self.e_unit());
        }
        let hs = tensor_of(fs, &g.hs.iter().map(|&h| self.h_basis(h)).collect::<Vec<_>>());
        for i in 1..=r {
            let sg = sign(fs, i);
            if i < r {
                let mut legs: Vec<Elem> = g.avec[..i - 1].iter().map(|&a| self.a_basis(a)).collect();
                legs.push(cp.a.mul_basis(g.avec[i - 1], g.avec[i]).clone());
                legs.extend(g.avec[i + 1..].iter().map(|&a| self.a_basis(a)));
                add_x_terms(&mut out, &sg, &self.e_unit(), &hs, &tensor_of(fs, &legs), &self.e_unit());
            } else {
                let legs: Vec<Elem> = g.avec[..r - 1].iter().map(|&a| self.a_basis(a)).collect();
                let right = cp.e_basis(cp.e_index(g.avec[r - 1], 0));
                add_x_terms(&mut out, &sg, &self.e_unit(), &hs, &tensor_of(fs, &legs), &right);
            }
        }
        out
    }

    // ----- differentials -----

    /// `d^l_{rs}(1 ⊗ g ⊗ 1)`.
    pub fn dl(&self, l: usize, g: &XGen) -> Rc<XElem> {
        let key = (l, g.clone());
        if let Some(v) = memo_get(&self.dl_memo, &key) {
            return v;
        }
        let (r, s) = (g.r(), g.s());
        let v = if l > s || (l == 0 && r == 0) {
            Lin::zero()
        } else if l == 0 {
            self.d0_gen(g)
        } else {
            match self.construction {
                Construction::Recursive => self.dl_recursive(l, g),
                Construction::Closed => self.dl_closed(l, g),
            }
        };
        memo_put(&self.dl_memo, key, v)
    }

    fn dl_recursive(&self, l: usize, g: &XGen) -> XElem {
        let x = generator(self.fs(), g.clone());
        if g.r() == 0 && l == 1 {
            return self.sigma0_y(&self.partial(&self.mu(&x))).neg();
        }
        let mut acc = Lin::zero();
        for j in 0..l {
            let dj = self.apply_dl(j, &x);
            if dj.is_zero() {
                continue;
            }
            acc.add_assign(&self.apply_dl(l - j, &dj));
        }
        self.sigma0_x(&acc).neg()
    }

    fn dl_closed(&self, l: usize, g: &XGen) -> XElem {
        if l == 1 {
            return self.d1_closed(g);
        }
        let cp = self.cp;
        let fs = self.fs();
        let (r, s) = (g.r(), g.s());
        let mut out = Lin::zero();
        let head = tensor_of(fs, &g.hs[..s - l].iter().map(|&h| self.h_basis(h)).collect::<Vec<_>>());
        let sg = sign(fs, l * (r + s));
        for (c, legs) in cp.split(&g.hs[s - l..], &vec![2; l]) {
            let w1: Vec<usize> = legs.iter().map(|x| x[0]).collect();
            let mut prod = self.h_basis(0);
            for x in &legs {
                prod = cp.h.algebra.mul(&prod, &self.h_basis(x[1]));
            }
            let fv = self.fcoeff(l, &w1, &g.avec);
            let right = self.smash(&self.a_basis(0), &prod);
            add_x_terms(&mut out, &(&sg * &c), &self.e_unit(), &head, &fv, &right);
        }
        out
    }

    fn d1_closed(&self, g: &XGen) -> XElem {
        let cp = self.cp;
        let fs = self.fs();
        let (r, s) = (g.r(), g.s());
        let mut out = Lin::zero();
        let mut w = vec![0];
        w.extend_from_slice(&g.hs);
        let avec = tensor_of(fs, &g.avec.iter().map(|&a| self.a_basis(a)).collect::<Vec<_>>());
        for i in 0..s {
            let counts: Vec<usize> = (0..w.len()).map(|t| if t <= i + 1 { 2 } else { 1 }).collect();
            let sg = sign(fs, i + r);
            for (d, legs) in cp.split(&w, &counts) {
                let prefix: Vec<usize> = legs[..i].iter().map(|x| x[0]).collect();
                let alpha = cp.act_iter(cp.f_basis(legs[i][0], legs[i + 1][0]), &prefix);
                if alpha.is_zero() {
                    continue;
                }
                let mut word: Vec<Elem> = legs[..i].iter().map(|x| self.h_basis(x[1])).collect();
                word.push(cp.h_mul(legs[i][1], legs[i + 1][1]).clone());
                word.extend(legs[i + 2..].iter().map(|x| self.h_basis(x[0])));
                let left = self.smash(&alpha, &word[0]);
                let hs = tensor_of(fs, &word[1..]);
                add_x_terms(&mut out, &(&sg * &d), &left, &hs, &avec, &self.e_unit());
            }
        }
        let sg = sign(fs, r + s);
        let head = tensor_of(fs, &g.hs[..s - 1].iter().map(|&h| self.h_basis(h)).collect::<Vec<_>>());
        for (d, legs) in cp.split(&g.hs[s - 1..], &[2]) {
            let acted = cp.act_vec(&g.avec, &[legs[0][0]]);
            let right = self.smash(&self.a_basis(0), &self.h_basis(legs[0][1]));
            add_x_terms(&mut out, &(&sg * &d), &self.e_unit(), &head, &acted, &right);
        }
        out
    }

    /// The coefficient map `F_r^{(l)}(h_1 ⊗ … ⊗ h_l ⊗ a_1 ⊗ … ⊗ a_r)`,
    /// valued in `A^{r+l-1}` (no projection to `Ā`). `F_0^{(1)}` is `ε`.
    pub fn fcoeff(&self, l: usize, hs: &[usize], avec: &[usize]) -> Rc<Tensor> {
        assert_eq!(hs.len(), l);
        let key = (l, hs.to_vec(), avec.to_vec());
        if let Some(v) = memo_get(&self.f_memo, &key) {
            return v;
        }
        let cp = self.cp;
        let fs = self.fs();
        let v = if l == 1 {
            cp.act_vec(avec, hs)
        } else {
            let m = l - 1;
            let r = avec.len();
            let mut out = Lin::zero();
            for j in 1..=m {
                // h_1..h_{j+1} split in three, the rest in two
                let counts: Vec<usize> = (0..l).map(|k| if k <= j { 3 } else { 2 }).collect();
                for (c, legs) in cp.split(hs, &counts) {
                    let w1: Vec<usize> = legs.iter().map(|x| x[0]).collect();
                    let pre2: Vec<usize> = legs[..j - 1].iter().map(|x| x[1]).collect();
                    let t2 = cp.act_iter(cp.f_basis(legs[j - 1][1], legs[j][1]), &pre2);
                    if t2.is_zero() {
                        continue;
                    }
                    let t2 = tensor_of(fs, &[t2]);
                    let prod = cp.h_mul(legs[j - 1][2], legs[j][2]);
                    for i in 0..=r {
                        let sg = sign(fs, i * m + j);
                        let t1 = cp.act_vec(&avec[..i], &w1);
                        if t1.is_zero() {
                            continue;
                        }
                        let t12 = tensor_concat(&t1, &t2);
                        for (p, cpd) in prod.iter() {
                            let mut hw: Vec<usize> = legs[..j - 1].iter().map(|x| x[2]).collect();
                            hw.push(*p);
                            hw.extend(legs[j + 1..].iter().map(|x| x[1]));
                            let sub = self.fcoeff(m, &hw, &avec[i..]);
                            let term = tensor_concat(&t12, &sub);
                            out.add_scaled(&term, &(&(&sg * &c) * cpd));
                        }
                    }
                }
            }
            out
        };
        memo_put(&self.f_memo, key, v)
    }

    /// `Σ_l d^l` on a generator.
    pub fn d_gen(&self, g: &XGen) -> Rc<XElem> {
        if let Some(v) = memo_get(&self.d_memo, g) {
            return v;
        }
        let mut out = Lin::zero();
        for l in 0..=g.s() {
            out.add_assign(&self.dl(l, g));
        }
        memo_put(&self.d_memo, g.clone(), out)
    }

    pub fn apply_dl(&self, l: usize, x: &XElem) -> XElem {
        bimodule_extend(self.cp, x, |g| self.dl(l, g))
    }

    pub fn apply_d(&self, x: &XElem) -> XElem {
        bimodule_extend(self.cp, x, |g| self.d_gen(g))
    }

    /// The augmentation `-μ : X_0 = E ⊗ E → E`.
    pub fn augmentation(&self, x: &XElem) -> Elem {
        let mut out = Lin::zero();
        for (k, c) in x.iter() {
            if k.gen.degree() != 0 {
                continue;
            }
            out.add_scaled(self.cp.e.mul_basis(k.left, k.right), &-c);
        }
        out
    }

    // ----- contracting homotopy -----

    /// `σ^l_{l,s-l}(1 ⊗ hs ⊗ last)` on `Y_s`.
    fn sigma_y_gen(&self, l: usize, hs: &[usize], last: usize) -> Rc<XElem> {
        let key = (l, hs.to_vec(), last);
        if let Some(v) = memo_get(&self.sy_memo, &key) {
            return v;
        }
        let y: YElem = Lin::single(Framed::new(0, YGen(hs.to_vec()), last), self.fs().one());
        let v = if l == 0 {
            self.sigma0_y(&y)
        } else if l > hs.len() {
            Lin::zero()
        } else {
            let mut acc = Lin::zero();
            for i in 0..l {
                let si = self.sigma_y_gen(i, hs, last);
                acc.add_assign(&self.apply_dl(l - i, &si));
            }
            self.sigma0_x(&acc).neg()
        };
        memo_put(&self.sy_memo, key, v)
    }

    /// `σ^l_{r+l+1,s-l}(1 ⊗ g ⊗ e)` on `X_{rs}`.
    fn sigma_x_gen(&self, l: usize, g: &XGen, right: usize) -> Rc<XElem> {
        let key = (l, g.clone(), right);
        if let Some(v) = memo_get(&self.sx_memo, &key) {
            return v;
        }
        let x: XElem = Lin::single(Framed::new(0, g.clone(), right), self.fs().one());
        let v = if l == 0 {
            self.sigma0_x(&x)
        } else if l > g.s() {
            Lin::zero()
        } else {
            let mut acc = Lin::zero();
            for i in 0..l {
                let si = self.sigma_x_gen(i, g, right);
                acc.add_assign(&self.apply_dl(l - i, &si));
            }
            self.sigma0_x(&acc).neg()
        };
        memo_put(&self.sx_memo, key, v)
    }

    /// `σ^l` applied to a `Y` element.
    pub fn sigma_l_y(&self, l: usize, y: &YElem) -> XElem {
        left_extend(self.cp, y, |g, last| self.sigma_y_gen(l, &g.0, last))
    }

    /// `σ^l` applied to an `X` element.
    pub fn sigma_l_x(&self, l: usize, x: &XElem) -> XElem {
        left_extend(self.cp, x, |g, e| self.sigma_x_gen(l, g, e))
    }

    /// `σ̄_0(e) = -(e ⊗ 1_E)`.
    pub fn sigma_bar0(&self, e: &Elem) -> XElem {
        e.iter()
            .map(|(i, c)| (Framed::new(*i, XGen::empty(), 0), -c))
            .collect()
    }

    fn sigma_bar_gen(&self, g: &XGen, right: usize) -> Rc<XElem> {
        let key = (g.clone(), right);
        if let Some(v) = memo_get(&self.sbar_memo, &key) {
            return v;
        }
        let x: XElem = Lin::single(Framed::new(0, g.clone(), right), self.fs().one());
        let n = g.degree();
        let mut out = Lin::zero();
        let y = self.sigma_minus(&self.mu(&x));
        if !y.is_zero() {
            for l in 0..=n + 1 {
                out.sub_assign(&self.sigma_l_y(l, &y));
            }
        }
        for l in 0..=g.s() {
            out.add_assign(&self.sigma_x_gen(l, g, right));
        }
        memo_put(&self.sbar_memo, key, out)
    }

    /// `σ̄_{n+1} : X_n → X_{n+1}`.
    pub fn sigma_bar(&self, x: &XElem) -> XElem {
        left_extend(self.cp, x, |g, e| self.sigma_bar_gen(g, e))
    }

    // ----- identity checks -----

    /// `d_{n-1} d_n = 0` on generators of `X_n` (and `μ d_1 = 0` for
    /// `n = 1`).
    pub fn check_square_zero(&self, n: usize) -> Result<usize, IdentityFailure> {
        let gens = self.generators(n);
        for g in &gens {
            let dg = self.d_gen(g);
            let bad = if n == 1 {
                !self.augmentation(&dg).is_zero()
            } else {
                !self.apply_d(&dg).is_zero()
            };
            if bad {
                return Err(IdentityFailure {
                    identity: if n == 1 { "μ∘d = 0" } else { "d∘d = 0" },
                    degree: n,
                    witness: format!("{g:?}"),
                });
            }
        }
        Ok(gens.len())
    }

    /// The component identities `Σ_j d^{l-j} d^j = 0` on generators of `X_n`.
    pub fn check_component_identities(&self, n: usize) -> Result<usize, IdentityFailure> {
        let fs = self.fs();
        let mut count = 0;
        for g in self.generators(n) {
            let x = generator(fs, g.clone());
            for l in 0..=g.s() {
                let mut acc = Lin::zero();
                for j in 0..=l {
                    let dj = self.apply_dl(j, &x);
                    acc.add_assign(&self.apply_dl(l - j, &dj));
                }
                count += 1;
                if !acc.is_zero() {
                    return Err(IdentityFailure {
                        identity: "Σ_j d^{l-j} d^j = 0",
                        degree: n,
                        witness: format!("l = {l}, {g:?}"),
                    });
                }
            }
        }
        Ok(count)
    }

    /// The sums behind `d∘d = 0`, one block at a time on generators of
    /// `X_n`: `μ d^1 = -∂ μ` for `r = 0`, and
    /// `d^0 d^l = -Σ_{j≠0 or r>0, j<l} d^{l-j} d^j` for `1 ≤ l ≤ s`.
    pub fn check_block_sums(&self, n: usize) -> Result<usize, IdentityFailure> {
        let fs = self.fs();
        let mut count = 0;
        for g in self.generators(n) {
            let x = generator(fs, g.clone());
            if g.r() == 0 && g.s() > 0 {
                count += 1;
                let mut lhs = self.mu(&self.apply_dl(1, &x));
                lhs.add_assign(&self.partial(&self.mu(&x)));
                if !lhs.is_zero() {
                    return Err(IdentityFailure {
                        identity: "μ d^1 = -∂ μ",
                        degree: n,
                        witness: format!("{g:?}"),
                    });
                }
            }
            for l in 1..=g.s() {
                if g.r() == 0 && l == 1 {
                    continue;
                }
                let mut acc = self.apply_dl(0, &self.apply_dl(l, &x));
                let first = usize::from(g.r() == 0);
                for j in first..l {
                    acc.add_assign(&self.apply_dl(l - j, &self.apply_dl(j, &x)));
                }
                count += 1;
                if !acc.is_zero() {
                    return Err(IdentityFailure {
                        identity: "d^0 d^l = -Σ_j d^{l-j} d^j",
                        degree: n,
                        witness: format!("l = {l}, {g:?}"),
                    });
                }
            }
        }
        Ok(count)
    }

    /// `d σ̄ + σ̄ d = id` on left generators of `X_n`; for `n = 0` also
    /// `-μ σ̄_0 = id_E`.
    pub fn check_homotopy(&self, n: usize) -> Result<usize, IdentityFailure> {
        let fs = self.fs();
        let de = self.cp.dim_e();
        let mut count = 0;
        if n == 0 {
            for e in 0..de {
                let b = self.cp.e_basis(e);
                count += 1;
                if self.augmentation(&self.sigma_bar0(&b)) != b {
                    return Err(IdentityFailure {
                        identity: "-μ σ̄_0 = id",
                        degree: 0,
                        witness: format!("e = {e}"),
                    });
                }
            }
        }
        for g in self.generators(n) {
            for e in 0..de {
                let x: XElem = Lin::single(Framed::new(0, g.clone(), e), fs.one());
                let mut lhs = self.apply_d(&self.sigma_bar(&x));
                if n == 0 {
                    lhs.add_assign(&self.sigma_bar0(&self.augmentation(&x)));
                } else {
                    lhs.add_assign(&self.sigma_bar(&self.apply_d(&x)));
                }
                count += 1;
                if lhs != x {
                    return Err(IdentityFailure {
                        identity: "d σ̄ + σ̄ d = id",
                        degree: n,
                        witness: format!("{g:?} ⊗ e{e}"),
                    });
                }
            }
        }
        Ok(count)
    }

    /// `σ̄_{n+1}` vanishes on generators `1 ⊗ g ⊗ 1` of `X_n` with `r = n`
    /// … in fact on all of `k ⊗ H̄^s ⊗ Ā^{n-s} ⊗ k`.
    pub fn check_sigma_bar_vanishing(&self, n: usize) -> Result<usize, IdentityFailure> {
        let gens = self.generators(n);
        for g in &gens {
            if !self.sigma_bar_gen(g, 0).is_zero() {
                return Err(IdentityFailure {
                    identity: "σ̄(k ⊗ V ⊗ k) = 0",
                    degree: n,
                    witness: format!("{g:?}"),
                });
            }
        }
        Ok(gens.len())
    }
}

/// Block-by-block comparison of the recursive and closed differentials on
/// generators of degree `≤ max_degree`.
pub fn compare_constructions(
    rec: &XResolution<'_>,
    closed: &XResolution<'_>,
    max_degree: usize,
) -> Result<usize, IdentityFailure> {
    let mut count = 0;
    for n in 1..=max_degree {
        for g in rec.generators(n) {
            for l in 0..=g.s() {
                count += 1;
                if rec.dl(l, &g) != closed.dl(l, &g) {
                    return Err(IdentityFailure {
                        identity: "closed d^l = recursive d^l",
                        degree: n,
                        witness: format!("l = {l}, {g:?}"),
                    });
                }
            }
        }
    }
    Ok(count)
}

// ----- the normalized bar resolution -----

/// `B_n(E) = E ⊗ Ē^n ⊗ E` with `b'` and `ξ`.
pub struct BarResolution<'a> {
    cp: &'a CrossedProduct,
}

impl<'a> BarResolution<'a> {
    pub fn new(cp: &'a CrossedProduct) -> Self {
        BarResolution { cp }
    }

    /// Words in the non-unit basis of `E`.
    pub fn generators(&self, n: usize) -> Vec<Vec<usize>> {
        words(self.cp.dim_e() - 1, n)
            .into_iter()
            .map(|w| w.into_iter().map(|x| x + 1).collect())
            .collect()
    }

    /// Number of legs outside `A`.
    pub fn level(&self, xs: &[usize]) -> usize {
        xs.iter().filter(|&&x| !self.cp.e_in_a(x)).count()
    }

    /// `b'_n(1 ⊗ x ⊗ 1)`.
    pub fn bprime_gen(&self, xs: &[usize]) -> BElem {
        let fs = self.cp.field();
        let n = xs.len();
        let mut out = Lin::zero();
        if n == 0 {
            return out;
        }
        out.add_term(Framed::new(xs[0], xs[1..].to_vec(), 0), fs.one());
        for i in 1..n {
            let sg = sign(fs, i);
            for (p, c) in self.cp.e.mul_basis(xs[i - 1], xs[i]).iter() {
                if *p == 0 {
                    continue;
                }
                let mut w = xs[..i - 1].to_vec();
                w.push(*p);
                w.extend_from_slice(&xs[i + 1..]);
                out.add_term(Framed::new(0, w, 0), &sg * c);
            }
        }
        out.add_term(Framed::new(0, xs[..n - 1].to_vec(), xs[n - 1]), sign(fs, n));
        out
    }

    pub fn apply_bprime(&self, x: &BElem) -> BElem {
        bimodule_extend(self.cp, x, |g| Rc::new(self.bprime_gen(g)))
    }

    /// `ξ_{n+1}(x) = (-1)^{n+1} x ⊗ 1` for `x ∈ B_n`.
    pub fn xi(&self, x: &BElem) -> BElem {
        let fs = self.cp.field();
        let mut out = Lin::zero();
        for (k, c) in x.iter() {
            if k.right == 0 {
                continue;
            }
            let mut w = k.gen.clone();
            w.push(k.right);
            let sg = sign(fs, w.len());
            out.add_term(Framed::new(k.left, w, 0), &sg * c);
        }
        out
    }

    /// `b' b' = 0` on generators of `B_n`.
    pub fn check_square_zero(&self, n: usize) -> Result<usize, IdentityFailure> {
        let gens = self.generators(n);
        for g in &gens {
            let b = self.bprime_gen(g);
            let bad = if n == 1 {
                !b.iter()
                    .fold(Lin::<usize>::zero(), |mut acc, (k, c)| {
                        acc.add_scaled(self.cp.e.mul_basis(k.left, k.right), c);
                        acc
                    })
                    .is_empty()
            } else {
                !self.apply_bprime(&b).is_zero()
            };
            if bad {
                return Err(IdentityFailure {
                    identity: "b'∘b' = 0",
                    degree: n,
                    witness: format!("{g:?}"),
                });
            }
        }
        Ok(gens.len())
    }

    /// `b'ξ + ξb' = id` on left generators of `B_n`, `n ≥ 1`.
    pub fn check_homotopy(&self, n: usize) -> Result<usize, IdentityFailure> {
        let fs = self.cp.field();
        let mut count = 0;
        for g in self.generators(n) {
            for e in 0..self.cp.dim_e() {
                let x: BElem = Lin::single(Framed::new(0, g.clone(), e), fs.one());
                let mut lhs = self.apply_bprime(&self.xi(&x));
                lhs.add_assign(&self.xi(&self.apply_bprime(&x)));
                count += 1;
                if lhs != x {
                    return Err(IdentityFailure {
                        identity: "b'ξ + ξb' = id",
                        degree: n,
                        witness: format!("{g:?} ⊗ e{e}"),
                    });
                }
            }
        }
        Ok(count)
    }
}

// ----- comparison maps -----

/// `φ : X → B`, `ψ : B → X` and the homotopy `ω : φψ ≃ id`.
pub struct Comparison<'r, 'a> {
    pub res: &'r XResolution<'a>,
    pub bar: &'r BarResolution<'a>,
    phi_memo: Memo<XGen, BElem>,
    psi_memo: Memo<Vec<usize>, XElem>,
    omega_memo: Memo<Vec<usize>, BElem>,
}

impl<'r, 'a> Comparison<'r, 'a> {
    pub fn new(res: &'r XResolution<'a>, bar: &'r BarResolution<'a>) -> Self {
        Comparison {
            res,
            bar,
            phi_memo: RefCell::default(),
            psi_memo: RefCell::default(),
            omega_memo: RefCell::default(),
        }
    }

    fn cp(&self) -> &'a CrossedProduct {
        self.res.crossed()
    }

    fn fs(&self) -> FieldSpec {
        self.cp().field()
    }

    pub fn phi_gen(&self, g: &XGen) -> Rc<BElem> {
        if let Some(v) = memo_get(&self.phi_memo, g) {
            return v;
        }
        let v = if g.degree() == 0 {
            generator(self.fs(), Vec::new())
        } else {
            let d = self.res.d_gen(g);
            self.bar.xi(&self.phi(&d))
        };
        memo_put(&self.phi_memo, g.clone(), v)
    }

    pub fn psi_gen(&self, y: &[usize]) -> Rc<XElem> {
        if let Some(v) = memo_get(&self.psi_memo, &y.to_vec()) {
            return v;
        }
        let v = if y.is_empty() {
            generator(self.fs(), XGen::empty())
        } else {
            let b = self.bar.bprime_gen(y);
            self.res.sigma_bar(&self.psi(&b))
        };
        memo_put(&self.psi_memo, y.to_vec(), v)
    }

    /// `ω_{n+1}(1 ⊗ y ⊗ 1)` for `y ∈ Ē^n`.
    pub fn omega_gen(&self, y: &[usize]) -> Rc<BElem> {
        if let Some(v) = memo_get(&self.omega_memo, &y.to_vec()) {
            return v;
        }
        let v = if y.is_empty() {
            Lin::zero()
        } else {
            let x = generator(self.fs(), y.to_vec());
            let mut t = self.phi(&self.psi_gen(y));
            t.sub_assign(&x);
            t.sub_assign(&self.omega(&self.bar.bprime_gen(y)));
            self.bar.xi(&t)
        };
        memo_put(&self.omega_memo, y.to_vec(), v)
    }

    pub fn phi(&self, x: &XElem) -> BElem {
        bimodule_extend(self.cp(), x, |g| self.phi_gen(g))
    }

    pub fn psi(&self, x: &BElem) -> XElem {
        bimodule_extend(self.cp(), x, |g| self.psi_gen(g))
    }

    pub fn omega(&self, x: &BElem) -> BElem {
        bimodule_extend(self.cp(), x, |g| self.omega_gen(g))
    }

    /// `φ` and `ψ` commute with the differentials on generators of degree `n`.
    pub fn check_chain_maps(&self, n: usize) -> Result<usize, IdentityFailure> {
        let mut count = 0;
        if n >= 1 {
            for g in self.res.generators(n) {
                count += 1;
                let lhs = self.bar.apply_bprime(&self.phi_gen(&g));
                let rhs = self.phi(&self.res.d_gen(&g));
                if lhs != rhs {
                    return Err(IdentityFailure {
                        identity: "b'φ = φd",
                        degree: n,
                        witness: format!("{g:?}"),
                    });
                }
            }
            for y in self.bar.generators(n) {
                count += 1;
                let lhs = self.res.apply_d(&self.psi_gen(&y));
                let rhs = self.psi(&self.bar.bprime_gen(&y));
                if lhs != rhs {
                    return Err(IdentityFailure {
                        identity: "dψ = ψb'",
                        degree: n,
                        witness: format!("{y:?}"),
                    });
                }
            }
        }
        Ok(count)
    }

    /// `ψφ = id` on generators of `X_n`.
    pub fn check_psi_phi(&self, n: usize) -> Result<usize, IdentityFailure> {
        let gens = self.res.generators(n);
        for g in &gens {
            if self.psi(&self.phi_gen(g)) != generator(self.fs(), g.clone()) {
                return Err(IdentityFailure {
                    identity: "ψφ = id",
                    degree: n,
                    witness: format!("{g:?}"),
                });
            }
        }
        Ok(gens.len())
    }

    /// `b'ω + ωb' = φψ - id` on generators of `B_n`.
    pub fn check_omega(&self, n: usize) -> Result<usize, IdentityFailure> {
        let gens = self.bar.generators(n);
        for y in &gens {
            let x = generator(self.fs(), y.clone());
            let mut lhs = self.bar.apply_bprime(&self.omega_gen(y));
            lhs.add_assign(&self.omega(&self.bar.bprime_gen(y)));
            let mut rhs = self.phi(&self.psi_gen(y));
            rhs.sub_assign(&x);
            if lhs != rhs {
                return Err(IdentityFailure {
                    identity: "b'ω + ωb' = φψ - id",
                    degree: n,
                    witness: format!("{y:?}"),
                });
            }
        }
        Ok(gens.len())
    }

    /// Filtration membership of `φ_n`, `ψ_n` and `ω_{n+1}` for every
    /// level `i ≤ n`. The filtrations are generated by basis generators,
    /// so a bimodule map preserves them iff each generator of level `≤ i`
    /// lands in level `≤ i`.
    pub fn filtration_grid(&self, n: usize) -> Vec<FiltrationCell> {
        let mut cells = Vec::new();
        let xlevel = |e: &XElem| e.keys().map(|k| k.gen.s()).max();
        let blevel = |e: &BElem| e.keys().map(|k| self.bar.level(&k.gen)).max();
        for i in 0..=n {
            let mut cell = FiltrationCell {
                degree: n,
                level: i,
                phi: true,
                psi: true,
                omega: true,
            };
            for g in self.res.generators(n).iter().filter(|g| g.s() <= i) {
                if blevel(&self.phi_gen(g)).is_some_and(|m| m > i) {
                    cell.phi = false;
                }
            }
            for y in self.bar.generators(n).iter().filter(|y| self.bar.level(y) <= i) {
                if xlevel(&self.psi_gen(y)).is_some_and(|m| m > i) {
                    cell.psi = false;
                }
                if blevel(&self.omega_gen(y)).is_some_and(|m| m > i) {
                    cell.omega = false;
                }
            }
            cells.push(cell);
        }
        cells
    }
}

/// One cell of the filtration-preservation grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiltrationCell {
    pub degree: usize,
    pub level: usize,
    pub phi: bool,
    pub psi: bool,
    pub omega: bool,
}

impl FiltrationCell {
    pub fn passed(&self) -> bool {
        self.phi && self.psi && self.omega
    }
}

// ----- shuffle form for group algebras -----

/// True when every basis element of `H` is group-like.
pub fn is_group_algebra(cp: &CrossedProduct) -> bool {
    (0..cp.dim_h()).all(|i| {
        cp.h.counit[i].is_one()
            && cp.h.comult[i].len() == 1
            && cp.h.comult[i].get(&(i, i)).is_some_and(|c| c.is_one())
    })
}

/// True when every value of the cocycle commutes with `A`.
pub fn cocycle_is_central(cp: &CrossedProduct) -> bool {
    let na = cp.dim_a();
    cp.cocycle.f.iter().flatten().all(|v| {
        (0..na).all(|a| {
            let b = cp.a.basis(a);
            cp.a.mul(v, &b) == cp.a.mul(&b, v)
        })
    })
}

/// `F_0^{(l)}` for group-like arguments, straight from its recursion.
pub fn f0_grouplike(cp: &CrossedProduct, gs: &[usize]) -> Tensor {
    let fs = cp.field();
    let l = gs.len();
    if l == 1 {
        return Lin::single(Vec::new(), fs.one());
    }
    if l == 2 {
        return tensor_of(fs, &[cp.f_basis(gs[0], gs[1]).neg()]);
    }
    let mut out = Lin::zero();
    for j in 1..l {
        let v = cp.act_iter(cp.f_basis(gs[j - 1], gs[j]), &gs[..j - 1]);
        let prod = cp.h_mul(gs[j - 1], gs[j]);
        for (p, c) in prod.iter() {
            let mut rest = gs[..j - 1].to_vec();
            rest.push(*p);
            rest.extend_from_slice(&gs[j + 1..]);
            let t = tensor_concat(&tensor_of(fs, core::slice::from_ref(&v)), &f0_grouplike(cp, &rest));
            out.add_scaled(&t, &(&sign(fs, j) * c));
        }
    }
    out
}

/// `a * b = Σ_{0 ≤ i_1 ≤ … ≤ i_r ≤ m} (-1)^{i_1+…+i_r} b_1 … b_{i_1} a_1 b_{i_1+1} …`.
pub fn shuffle(fs: FieldSpec, a: &[usize], b: &Tensor) -> Tensor {
    fn rec(
        fs: FieldSpec,
        a: &[usize],
        b: &[usize],
        lo: usize,
        pos: &mut Vec<usize>,
        out: &mut Tensor,
        c: &Scalar,
    ) {
        if pos.len() == a.len() {
            let mut w = Vec::with_capacity(a.len() + b.len());
            let mut bi = 0;
            for (k, &p) in pos.iter().enumerate() {
                while bi < p {
                    w.push(b[bi]);
                    bi += 1;
                }
                w.push(a[k]);
            }
            w.extend_from_slice(&b[bi..]);
            let sg = sign(fs, pos.iter().sum());
            out.add_term(w, &sg * c);
            return;
        }
        for p in lo..=b.len() {
            pos.push(p);
            rec(fs, a, b, p, pos, out, c);
            pos.pop();
        }
    }
    let mut out = Lin::zero();
    for (bw, c) in b.iter() {
        rec(fs, a, bw, 0, &mut Vec::new(), &mut out, c);
    }
    out
}

/// `d^l(1 ⊗ g ⊗ 1)` for `l ≥ 2` by the shuffle formula, valid for group
/// algebras with central cocycle.
pub fn dl_shuffle(cp: &CrossedProduct, l: usize, g: &XGen) -> XElem {
    let fs = cp.field();
    let (r, s) = (g.r(), g.s());
    let mut out = Lin::zero();
    let tail = &g.hs[s - l..];
    let f0 = f0_grouplike(cp, tail);
    let body = shuffle(fs, &g.avec, &f0);
    let mut prod = cp.h.algebra.basis(0);
    for &h in tail {
        prod = cp.h.algebra.mul(&prod, &cp.h.algebra.basis(h));
    }
    let head = tensor_of(
        fs,
        &g.hs[..s - l].iter().map(|&h| cp.h.algebra.basis(h)).collect::<Vec<_>>(),
    );
    let right = cp.smash(&cp.a.basis(0), &prod);
    add_x_terms(&mut out, &sign(fs, l * (r + s)), &cp.e_basis(0), &head, &body, &right);
    out
}

/// Compares `d^l` (`l ≥ 2`) with the shuffle form on generators of degree
/// `≤ max_degree`.
pub fn check_shuffle(res: &XResolution<'_>, max_degree: usize) -> Result<usize, IdentityFailure> {
    let cp = res.crossed();
    let mut count = 0;
    for n in 2..=max_degree {
        for g in res.generators(n) {
            for l in 2..=g.s() {
                count += 1;
                if *res.dl(l, &g) != dl_shuffle(cp, l, &g) {
                    return Err(IdentityFailure {
                        identity: "d^l = shuffle form",
                        degree: n,
                        witness: format!("l = {l}, {g:?}"),
                    });
                }
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{builtin, BUILTIN_NAMES};

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    fn run_all(name: &str, fs: FieldSpec, max: usize) {
        let cp = builtin(name, fs).unwrap();
        let rec = XResolution::new(&cp, Construction::Recursive);
        let closed = XResolution::new(&cp, Construction::Closed);
        for n in 1..=max {
            rec.check_square_zero(n).unwrap();
            closed.check_square_zero(n).unwrap();
            rec.check_component_identities(n).unwrap();
            rec.check_block_sums(n).unwrap();
        }
        compare_constructions(&rec, &closed, max).unwrap();
        for n in 0..max {
            rec.check_homotopy(n).unwrap();
            rec.check_sigma_bar_vanishing(n).unwrap();
        }
    }

    #[test]
    fn small_builtins_rational() {
        for name in BUILTIN_NAMES {
            run_all(name, q(), 3);
        }
    }

    #[test]
    fn small_builtins_mod2() {
        for name in BUILTIN_NAMES {
            run_all(name, f2(), 3);
        }
    }

    #[test]
    fn comparison_maps_z4() {
        let cp = builtin("z4_as_cocycle_extension", q()).unwrap();
        let res = XResolution::new(&cp, Construction::Recursive);
        let bar = BarResolution::new(&cp);
        let cmp = Comparison::new(&res, &bar);
        for n in 0..=3 {
            bar.check_square_zero(n.max(1)).unwrap();
            cmp.check_chain_maps(n).unwrap();
            cmp.check_psi_phi(n).unwrap();
            cmp.check_omega(n).unwrap();
            assert!(cmp.filtration_grid(n).iter().all(|c| c.passed()));
        }
        bar.check_homotopy(1).unwrap();
    }

    #[test]
    fn shuffle_matches_on_group_algebras() {
        for name in ["z2_trivial", "klein_four", "z4_as_cocycle_extension", "s3_as_action_extension"] {
            let cp = builtin(name, q()).unwrap();
            assert!(is_group_algebra(&cp));
            assert!(cocycle_is_central(&cp));
            let res = XResolution::new(&cp, Construction::Recursive);
            check_shuffle(&res, 3).unwrap();
        }
    }

    #[test]
    fn shuffle_signs() {
        let fs = q();
        let b: Tensor = Lin::single(vec![7], fs.one());
        let s = shuffle(fs, &[1, 2], &b);
        // positions (0,0) (0,1) (1,1)
        assert_eq!(s.get(&vec![1, 2, 7]), Some(&fs.one()));
        assert_eq!(s.get(&vec![1, 7, 2]), Some(&fs.from_i64(-1)));
        assert_eq!(s.get(&vec![7, 1, 2]), Some(&fs.one()));
    }
}
