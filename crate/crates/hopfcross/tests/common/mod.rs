#![allow(dead_code)]

use hopfcross::algebra::{verify_algebra, verify_hopf, AlgebraData, Axiom, Elem, HopfData, Report};
use hopfcross::builtins::{builtin_parts, cyclic_algebra, dual_numbers, sweedler_hopf, z2_hopf, CrossedParts};
use hopfcross::crossed::{verify_crossed_axioms, CocycleData, WeakActionData};
use hopfcross::lin::Lin;
use hopfcross::FieldSpec;

pub fn q() -> FieldSpec {
    FieldSpec::Rationals
}

pub fn f2() -> FieldSpec {
    FieldSpec::prime(2).unwrap()
}

fn e(fs: FieldSpec, i: usize) -> Elem {
    Lin::single(i, fs.one())
}

fn ec(fs: FieldSpec, i: usize, c: i64) -> Elem {
    Lin::single(i, fs.from_i64(c))
}

/// Which structure a corruption lives in.
pub enum Corrupted {
    Algebra(AlgebraData),
    Hopf(HopfData),
    Crossed(CrossedParts),
}

impl Corrupted {
    pub fn report(&self) -> Report {
        match self {
            Corrupted::Algebra(a) => verify_algebra(a),
            Corrupted::Hopf(h) => verify_hopf(h),
            Corrupted::Crossed(p) => {
                let mut r = verify_algebra(&p.a);
                r.merge(verify_hopf(&p.h));
                r.merge(verify_crossed_axioms(&p.a, &p.h, &p.action, &p.cocycle).unwrap());
                r
            }
        }
    }
}

pub type Witness = Box<dyn Fn(&[usize]) -> bool>;

/// A single-entry corruption of a valid structure, the axiom it must break,
/// and an independent evaluation of that axiom at a witness (true when the
/// identity fails there).
pub struct Corruption {
    pub name: &'static str,
    pub data: Corrupted,
    pub axiom: Axiom,
    pub fails_at: Witness,
}

fn mul(a: &AlgebraData, x: &Elem, y: &Elem) -> Elem {
    let mut out = Lin::zero();
    for (i, c) in x.iter() {
        for (j, d) in y.iter() {
            out.add_scaled(&a.mult[*i][*j], &(c * d));
        }
    }
    out
}

/// Image of `x` under the (group-like) action of basis `h`.
fn act(w: &WeakActionData, h: usize, x: &Elem) -> Elem {
    let mut out = Lin::zero();
    for (i, c) in x.iter() {
        out.add_scaled(&w.act[h][*i], c);
    }
    out
}

pub fn corruptions() -> Vec<Corruption> {
    let fs = q();
    let mut out = Vec::new();

    // k[ℤ/3] with c·c = 1
    let mut a = cyclic_algebra(fs, 3, "c");
    a.mult[1][1] = e(fs, 0);
    let a2 = a.clone();
    out.push(Corruption {
        name: "k[Z3]: c*c := 1",
        data: Corrupted::Algebra(a),
        axiom: Axiom::Associativity,
        fails_at: Box::new(move |w: &[usize]| {
            let (x, y, z) = (e(fs, w[0]), e(fs, w[1]), e(fs, w[2]));
            mul(&a2, &mul(&a2, &x, &y), &z) != mul(&a2, &x, &mul(&a2, &y, &z))
        }),
    });

    // k[ℤ/3] with 1·c² = c
    let mut a = cyclic_algebra(fs, 3, "c");
    a.mult[0][2] = e(fs, 1);
    let a2 = a.clone();
    out.push(Corruption {
        name: "k[Z3]: 1*c^2 := c",
        data: Corrupted::Algebra(a),
        axiom: Axiom::LeftUnit,
        fails_at: Box::new(move |w: &[usize]| a2.mult[0][w[0]] != e(fs, w[0])),
    });

    // k[ℤ/2] with ε(g) = 0
    let mut h = z2_hopf(fs);
    h.counit[1] = fs.zero();
    let h2 = h.clone();
    out.push(Corruption {
        name: "k[Z2]: counit(g) := 0",
        data: Corrupted::Hopf(h),
        axiom: Axiom::LeftCounit,
        fails_at: Box::new(move |w: &[usize]| {
            let mut s = Lin::zero();
            for ((x, y), c) in h2.comult[w[0]].iter() {
                s.add_term(*y, c * &h2.counit[*x]);
            }
            s != e(fs, w[0])
        }),
    });

    // H₄ with S(x) = +gx
    let mut h = sweedler_hopf(fs);
    h.antipode[2] = e(fs, 3);
    let h2 = h.clone();
    out.push(Corruption {
        name: "H4: S(x) := gx",
        data: Corrupted::Hopf(h),
        axiom: Axiom::AntipodeLeft,
        fails_at: Box::new(move |w: &[usize]| {
            let mut s = Lin::zero();
            for ((x, y), c) in h2.comult[w[0]].iter() {
                s.add_scaled(&mul(&h2.algebra, &h2.antipode[*x], &e(fs, *y)), c);
            }
            s != h2.algebra.mult[0][0].scale(&h2.counit[w[0]])
        }),
    });

    // S₃ = k[ℤ/3] # k[ℤ/2] with g·c = c
    let mut p = builtin_parts("s3_as_action_extension", fs).unwrap();
    p.action.act[1][1] = e(fs, 1);
    let (a2, w2) = (p.a.clone(), p.action.clone());
    out.push(Corruption {
        name: "S3: g.c := c",
        data: Corrupted::Crossed(p),
        axiom: Axiom::ActionMultiplicative,
        fails_at: Box::new(move |w: &[usize]| {
            let (h, x, y) = (w[0], e(fs, w[1]), e(fs, w[2]));
            act(&w2, h, &mul(&a2, &x, &y)) != mul(&a2, &act(&w2, h, &x), &act(&w2, h, &y))
        }),
    });

    // ℤ/4 with f(1, g) = n
    let mut p = builtin_parts("z4_as_cocycle_extension", fs).unwrap();
    p.cocycle.f[0][1] = e(fs, 1);
    let c2 = p.cocycle.clone();
    out.push(Corruption {
        name: "Z4: f(1,g) := n",
        data: Corrupted::Crossed(p),
        axiom: Axiom::CocycleNormalLeft,
        fails_at: Box::new(move |w: &[usize]| c2.f[0][w[0]] != e(fs, 0)),
    });

    // S₃ with f(g, g) = c
    let mut p = builtin_parts("s3_as_action_extension", fs).unwrap();
    p.cocycle.f[1][1] = e(fs, 1);
    let (a2, w2, c2, hm) = (p.a.clone(), p.action.clone(), p.cocycle.clone(), p.h.algebra.clone());
    out.push(Corruption {
        name: "S3: f(g,g) := c",
        data: Corrupted::Crossed(p),
        axiom: Axiom::CocycleCondition,
        fails_at: Box::new(move |w: &[usize]| {
            // group-like H: f(l,m)^h f(h, lm) = f(h,l) f(hl, m)
            let (h, l, m) = (w[0], w[1], w[2]);
            let prod = |x: usize, y: usize| *hm.mult[x][y].iter().next().unwrap().0;
            let lhs = mul(&a2, &act(&w2, h, &c2.f[l][m]), &c2.f[h][prod(l, m)]);
            let rhs = mul(&a2, &c2.f[h][l], &c2.f[prod(h, l)][m]);
            lhs != rhs
        }),
    });

    // k[y]/(y²) # k[ℤ/2] with g·y = 2y instead of -y
    let a = dual_numbers(fs);
    let h = z2_hopf(fs);
    let mut action = WeakActionData {
        act: vec![vec![e(fs, 0), e(fs, 1)], vec![e(fs, 0), ec(fs, 1, -1)]],
    };
    action.act[1][1] = ec(fs, 1, 2);
    let cocycle = CocycleData::trivial(&a, &h);
    let w2 = action.clone();
    out.push(Corruption {
        name: "k[y]/y^2 # k[Z2]: g.y := 2y",
        data: Corrupted::Crossed(CrossedParts { a, h, action, cocycle }),
        axiom: Axiom::TwistedModule,
        fails_at: Box::new(move |w: &[usize]| {
            // trivial cocycle, group-like H: (x^l)^h = x^{hl}
            let (h, l, x) = (w[0], w[1], e(fs, w[2]));
            act(&w2, h, &act(&w2, l, &x)) != act(&w2, (h + l) % 2, &x)
        }),
    });
    out
}
