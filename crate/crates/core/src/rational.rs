//! Exact rational helpers and the extended rationals `Q ∪ {+∞}`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

pub type Rational = BigRational;

/// Shorthand constructor for small rationals.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical `num/den` rendering used in every serialized report.
pub fn fmt_q(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Numerator or denominator overflowed f64; fall back on scaled division.
        let n = x.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = x.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Best rational approximation with denominator at most `max_den`
/// (continued-fraction convergents plus the final semiconvergent).
pub fn rational_from_f64(x: f64, max_den: u64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let exact = Rational::from_float(x)?;
    let max_den = BigInt::from(max_den.max(1));
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut rest = exact.clone();
    loop {
        let a = rest.floor().to_integer();
        let q2 = &q0 + &a * &q1;
        if q2 > max_den {
            // Largest admissible semiconvergent, compared against the last convergent.
            let k = (&max_den - &q0).div_floor(&q1);
            let semi = Rational::new(&p0 + &k * &p1, &q0 + &k * &q1);
            let conv = Rational::new(p1.clone(), q1.clone());
            let ds = (&semi - &exact).abs();
            let dc = (&conv - &exact).abs();
            return Some(if ds < dc { semi } else { conv });
        }
        let p2 = &p0 + &a * &p1;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let frac = &rest - Rational::from_integer(a);
        if frac.is_zero() {
            return Some(Rational::new(p1, q1));
        }
        rest = frac.recip();
    }
}

pub fn parse_q(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| Rational::new(n, d))
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn is_integer(x: &Rational) -> bool {
    x.is_integer()
}

/// A rational, or positive infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRational {
    Finite(Rational),
    Infinity,
}

impl ExtRational {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(x) => Some(x),
            ExtRational::Infinity => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRational::Finite(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtRational::Finite(x) if x.is_zero())
    }

    /// `a / b` for non-negative operands; `x/∞ = 0`, `x/0 = ∞` for `x > 0`.
    pub fn ratio(a: &ExtRational, b: &ExtRational) -> ExtRational {
        match (a, b) {
            (ExtRational::Finite(x), ExtRational::Finite(y)) if y.is_zero() => {
                if x.is_zero() {
                    ExtRational::Finite(Rational::zero())
                } else {
                    ExtRational::Infinity
                }
            }
            (ExtRational::Finite(x), ExtRational::Finite(y)) => ExtRational::Finite(x / y),
            (ExtRational::Finite(_), ExtRational::Infinity) => {
                ExtRational::Finite(Rational::zero())
            }
            (ExtRational::Infinity, _) => ExtRational::Infinity,
        }
    }

    /// Reciprocal of a non-negative rational; `1/0 = ∞`.
    pub fn recip_of(x: &Rational) -> ExtRational {
        if x.is_zero() {
            ExtRational::Infinity
        } else {
            ExtRational::Finite(x.recip())
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtRational::Finite(x) => to_f64(x),
            ExtRational::Infinity => f64::INFINITY,
        }
    }
}

impl From<Rational> for ExtRational {
    fn from(x: Rational) -> Self {
        ExtRational::Finite(x)
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => a.cmp(b),
            (ExtRational::Finite(_), ExtRational::Infinity) => Ordering::Less,
            (ExtRational::Infinity, ExtRational::Finite(_)) => Ordering::Greater,
            (ExtRational::Infinity, ExtRational::Infinity) => Ordering::Equal,
        }
    }
}

impl Add for &ExtRational {
    type Output = ExtRational;
    fn add(self, rhs: &ExtRational) -> ExtRational {
        match (self, rhs) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => ExtRational::Finite(a + b),
            _ => ExtRational::Infinity,
        }
    }
}

impl Mul<&Rational> for &ExtRational {
    type Output = ExtRational;
    /// Scaling by a non-negative factor; `0 · ∞` is taken to be `0`.
    fn mul(self, rhs: &Rational) -> ExtRational {
        match self {
            ExtRational::Finite(a) => ExtRational::Finite(a * rhs),
            ExtRational::Infinity if rhs.is_zero() => ExtRational::Finite(Rational::zero()),
            ExtRational::Infinity => ExtRational::Infinity,
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(x) => write!(f, "{}", fmt_q(x)),
            ExtRational::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for ExtRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `serialize_with` adapters writing rationals as `"num/den"` strings.
pub mod serde_q {
    use super::{fmt_q, Rational};
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    pub fn ser<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }

    pub fn ser_opt<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_str(&fmt_q(x)),
            None => s.serialize_none(),
        }
    }

    pub fn ser_pair<S: Serializer>(x: &(Rational, Rational), s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&fmt_q(&x.0))?;
        seq.serialize_element(&fmt_q(&x.1))?;
        seq.end()
    }

    pub fn ser_pairs<S: Serializer>(xs: &[(Rational, Rational)], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for (a, b) in xs {
            seq.serialize_element(&[fmt_q(a), fmt_q(b)])?;
        }
        seq.end()
    }
}
