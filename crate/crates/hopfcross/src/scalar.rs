//! Exact scalars over the rationals or a prime field.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The ground field. Every scalar taking part in one computation comes from
/// the same `FieldSpec`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldError {
    NotPrime(u64),
    TooLarge(u64),
    ZeroDenominator,
    Unparsable(String),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(p) => write!(f, "{p} is not prime"),
            FieldError::TooLarge(p) => write!(f, "modulus {p} exceeds 2^32"),
            FieldError::ZeroDenominator => write!(f, "zero denominator"),
            FieldError::Unparsable(s) => write!(f, "cannot read scalar {s:?}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// Prime field with primality checked. Moduli are kept below 2^32 so
    /// products fit in 64 bits before reduction.
    pub fn prime(p: u64) -> Result<FieldSpec, FieldError> {
        if p >= 1 << 32 {
            return Err(FieldError::TooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::PrimeField(p) => Scalar::P {
                v: n.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar, FieldError> {
        if den == 0 {
            return Err(FieldError::ZeroDenominator);
        }
        match *self {
            FieldSpec::Rationals => Ok(Scalar::Q(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            FieldSpec::PrimeField(_) => {
                let d = self.from_i64(den);
                if d.is_zero() {
                    return Err(FieldError::ZeroDenominator);
                }
                Ok(&self.from_i64(num) * &d.inv())
            }
        }
    }

    /// Reads `"p/q"`, `"p"`, or a bare integer string.
    pub fn parse(&self, s: &str) -> Result<Scalar, FieldError> {
        let s = s.trim();
        let bad = || FieldError::Unparsable(s.to_string());
        match *self {
            FieldSpec::Rationals => {
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (
                        n.trim().parse::<BigInt>().map_err(|_| bad())?,
                        d.trim().parse::<BigInt>().map_err(|_| bad())?,
                    ),
                    None => (s.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
                };
                if d.is_zero() {
                    return Err(FieldError::ZeroDenominator);
                }
                Ok(Scalar::Q(BigRational::new(n, d)))
            }
            FieldSpec::PrimeField(p) => {
                let reduce = |t: &str| -> Result<Scalar, FieldError> {
                    let b = t.trim().parse::<BigInt>().map_err(|_| bad())?;
                    let r = ((b % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                    let v: u64 = r.try_into().map_err(|_| bad())?;
                    Ok(Scalar::P { v, p })
                };
                match s.split_once('/') {
                    Some((n, d)) => {
                        let d = reduce(d)?;
                        if d.is_zero() {
                            return Err(FieldError::ZeroDenominator);
                        }
                        Ok(&reduce(n)? * &d.inv())
                    }
                    None => reduce(s),
                }
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::PrimeField(p) => write!(f, "fp:{p}"),
        }
    }
}

/// An exact field element. Prime-field elements carry their modulus;
/// mixing moduli or mixing with rationals is a logic error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    P { v: u64, p: u64 },
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::P { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::P { v, .. } => *v == 1,
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Q(_) => FieldSpec::Rationals,
            Scalar::P { p, .. } => FieldSpec::PrimeField(*p),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::P { v, p } => {
                let (mut base, mut e, mut acc) = (*v as u128, *p - 2, 1u128);
                let m = *p as u128;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % m;
                    }
                    base = base * base % m;
                    e >>= 1;
                }
                Scalar::P { v: acc as u64, p: *p }
            }
        }
    }

    /// Canonical text form: `"p/q"` (or `"p"`) over the rationals, the
    /// residue in `0..p` over a prime field.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Integer value when the scalar is a prime-field residue.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::P { v, .. } => Some(*v),
            Scalar::Q(_) => None,
        }
    }

    /// Size proxy used for pivot selection over the rationals.
    pub fn height(&self) -> u64 {
        match self {
            Scalar::Q(q) => q.numer().bits() + q.denom().bits(),
            Scalar::P { .. } => 0,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_negative(),
            Scalar::P { .. } => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::P { v, .. } => write!(f, "{v}"),
        }
    }
}

fn same_p(p: u64, q: u64) -> u64 {
    assert_eq!(p, q, "scalars from different prime fields");
    p
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::P { v: a, p }, Scalar::P { v: b, p: q }) => {
                let p = same_p(*p, *q);
                Scalar::P { v: (a + b) % p, p }
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            (Scalar::P { v: a, p }, Scalar::P { v: b, p: q }) => {
                let p = same_p(*p, *q);
                Scalar::P { v: (a + p - b) % p, p }
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::P { v: a, p }, Scalar::P { v: b, p: q }) => {
                let p = same_p(*p, *q);
                Scalar::P {
                    v: ((*a as u128 * *b as u128) % p as u128) as u64,
                    p,
                }
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::P { v, p } => Scalar::P { v: (p - v) % p, p: *p },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => *a += b,
            (Scalar::P { v: a, p }, Scalar::P { v: b, p: q }) => {
                let p = same_p(*p, *q);
                *a = (*a + b) % p;
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => *a -= b,
            (Scalar::P { v: a, p }, Scalar::P { v: b, p: q }) => {
                let p = same_p(*p, *q);
                *a = (*a + p - b) % p;
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => a.partial_cmp(b),
            (Scalar::P { v: a, .. }, Scalar::P { v: b, .. }) => a.partial_cmp(b),
            _ => None,
        }
    }
}

/// `(-1)^k` as a scalar.
pub fn sign(fs: FieldSpec, k: usize) -> Scalar {
    if k.is_multiple_of(2) {
        fs.one()
    } else {
        fs.from_i64(-1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_check() {
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(97).is_ok());
        assert_eq!(FieldSpec::prime(91), Err(FieldError::NotPrime(91)));
        assert_eq!(FieldSpec::prime(1), Err(FieldError::NotPrime(1)));
    }

    #[test]
    fn mod_inverse() {
        let f5 = FieldSpec::prime(5).unwrap();
        let two = f5.from_i64(2);
        assert_eq!(two.inv(), f5.from_i64(3));
        assert_eq!(f5.from_i64(-1), f5.from_i64(4));
        assert_eq!(f5.from_ratio(1, 2).unwrap(), f5.from_i64(3));
    }

    #[test]
    fn rational_text() {
        let q = FieldSpec::Rationals;
        let x = q.parse("-6/4").unwrap();
        assert_eq!(x.to_text(), "-3/2");
        assert_eq!(q.parse("7").unwrap().to_text(), "7");
        assert!(q.parse("1/0").is_err());
        let f7 = FieldSpec::PrimeField(7);
        assert_eq!(f7.parse("-1").unwrap().to_text(), "6");
        assert_eq!(f7.parse("1/3").unwrap().to_text(), "5");
    }
}
