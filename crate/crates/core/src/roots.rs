//! Exact real-root structure of univariate rational polynomials: squarefree
//! decomposition, Sturm isolation and rational root recovery.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;
use crate::Univariate;

/// A real root, known exactly when rational and by an isolating interval
/// `(lower, upper]` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealRoot {
    Rational(Rational),
    Irrational { lower: Rational, upper: Rational },
}

impl RealRoot {
    pub fn rational(&self) -> Option<&Rational> {
        match self {
            RealRoot::Rational(r) => Some(r),
            RealRoot::Irrational { .. } => None,
        }
    }

    pub fn approx(&self) -> f64 {
        match self {
            RealRoot::Rational(r) => crate::rational::to_f64(r),
            RealRoot::Irrational { lower, upper } => {
                crate::rational::to_f64(&((lower + upper) / Rational::from_integer(2.into())))
            }
        }
    }
}

/// Yun's algorithm: `p = c · Π f_i^i` with each `f_i` monic, squarefree and
/// pairwise coprime. Factors equal to 1 are omitted.
pub fn squarefree_decomposition(p: &Univariate) -> Vec<(Univariate, usize)> {
    let mut out = Vec::new();
    if p.degree().is_none_or(|d| d == 0) {
        return out;
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_rem(&a0).0;
    let c = dp.div_rem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.degree().is_some_and(|deg| deg > 0) {
        let a = b.gcd(&d);
        b = b.div_rem(&a).0;
        let c = d.div_rem(&a).0;
        d = c.sub(&b.derivative());
        if a.degree().is_some_and(|deg| deg > 0) {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

fn sturm_sequence(p: &Univariate) -> Vec<Univariate> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            return seq;
        }
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        seq.push(r.neg());
    }
}

fn sign_changes(seq: &[Univariate], x: &Rational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in seq {
        let v = s.eval(x.clone());
        let sign = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if sign != 0 {
            if last != 0 && sign != last {
                count += 1;
            }
            last = sign;
        }
    }
    count
}

/// Number of distinct real roots in `(a, b]`.
fn count_in(seq: &[Univariate], a: &Rational, b: &Rational) -> usize {
    sign_changes(seq, a) - sign_changes(seq, b)
}

fn cauchy_bound(p: &Univariate) -> Rational {
    let lead = p.leading().abs();
    let max = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(Rational::zero);
    Rational::one() + max / lead
}

/// The rational with the smallest denominator in the closed interval `[a, b]`.
pub fn simplest_rational_between(a: &Rational, b: &Rational) -> Rational {
    debug_assert!(a <= b);
    if a.is_negative() && b.is_positive() || a.is_zero() || b.is_zero() {
        return Rational::zero();
    }
    if b.is_negative() {
        return -simplest_rational_between(&-b, &-a);
    }
    let fl = a.floor();
    if &fl == a {
        return fl;
    }
    if fl.clone() + Rational::one() <= *b {
        return fl + Rational::one();
    }
    // a and b share the integer part; recurse on the reciprocals of the fractional parts.
    let inner = simplest_rational_between(&(b - &fl).recip(), &(a - &fl).recip());
    fl + inner.recip()
}

/// Integer multiple of `p` with coprime coefficients; returns the leading coefficient.
fn integer_leading(p: &Univariate) -> BigInt {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    (ints.last().unwrap() / g).abs()
}

/// Distinct real roots of a squarefree polynomial, in increasing order.
pub fn squarefree_real_roots(f: &Univariate) -> Vec<RealRoot> {
    let Some(deg) = f.degree() else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    let seq = sturm_sequence(f);
    let bound = cauchy_bound(f);
    let lead = integer_leading(f);
    // Distinct rationals with denominators ≤ lead are at least 1/lead² apart;
    // irrational roots are bracketed to at least 2^-32.
    let resolution = Rational::new(BigInt::one(), (&lead * &lead).max(BigInt::one() << 32));
    let mut work = vec![(-bound.clone(), bound)];
    let mut out = Vec::new();
    while let Some((a, b)) = work.pop() {
        let n = count_in(&seq, &a, &b);
        if n == 0 {
            continue;
        }
        if n > 1 {
            let mid = (&a + &b) / Rational::from_integer(2.into());
            work.push((a, mid.clone()));
            work.push((mid, b));
            continue;
        }
        out.push(isolate(f, &seq, a, b, &resolution));
    }
    out.sort_by(|x, y| x.approx().total_cmp(&y.approx()));
    out
}

fn isolate(
    f: &Univariate,
    seq: &[Univariate],
    mut a: Rational,
    mut b: Rational,
    resolution: &Rational,
) -> RealRoot {
    loop {
        if f.eval(b.clone()).is_zero() {
            return RealRoot::Rational(b);
        }
        if &(&b - &a) < resolution {
            let candidate = simplest_rational_between(&a, &b);
            if candidate != a && f.eval(candidate.clone()).is_zero() {
                return RealRoot::Rational(candidate);
            }
            return RealRoot::Irrational { lower: a, upper: b };
        }
        let mid = (&a + &b) / Rational::from_integer(2.into());
        if count_in(seq, &a, &mid) == 1 {
            b = mid;
        } else {
            a = mid;
        }
    }
}

/// Real roots of `p` with their multiplicities, in increasing order.
pub fn real_roots(p: &Univariate) -> Vec<(RealRoot, usize)> {
    let mut out: Vec<(RealRoot, usize)> = squarefree_decomposition(p)
        .into_iter()
        .flat_map(|(f, k)| squarefree_real_roots(&f).into_iter().map(move |r| (r, k)))
        .collect();
    out.sort_by(|x, y| x.0.approx().total_cmp(&y.0.approx()));
    out
}

pub fn rational_roots(p: &Univariate) -> Vec<(Rational, usize)> {
    real_roots(p)
        .into_iter()
        .filter_map(|(r, k)| r.rational().cloned().map(|r| (r, k)))
        .collect()
}
