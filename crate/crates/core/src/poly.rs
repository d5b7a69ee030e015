//! Sparse bivariate polynomials, shears and origin normalization.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Neg;

use num_traits::{Num, One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::rational::{fmt_q, Rational};
use crate::univariate::UnivariatePolynomial;
use crate::Polynomial;

/// Coefficient ring for polynomials: exact rationals for the analysis,
/// floats for numerical evaluation.
pub trait Coefficient: Num + Neg<Output = Self> + Clone + fmt::Debug {}

impl<T: Num + Neg<Output = T> + Clone + fmt::Debug> Coefficient for T {}

/// An exponent pair `(t1, t2)`, ordered lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LatticePoint {
    pub t1: u32,
    pub t2: u32,
}

impl LatticePoint {
    pub const fn new(t1: u32, t2: u32) -> Self {
        Self { t1, t2 }
    }

    pub fn degree(&self) -> u32 {
        self.t1 + self.t2
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.t2, self.t1)
    }

    pub fn as_rationals(&self) -> (Rational, Rational) {
        (
            Rational::from_integer(self.t1.into()),
            Rational::from_integer(self.t2.into()),
        )
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.t1, self.t2)
    }
}

/// Sparse map from exponents to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BivariatePolynomial<C> {
    terms: BTreeMap<LatticePoint, C>,
}

impl<C: Coefficient> Default for BivariatePolynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> BivariatePolynomial<C> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: C, t1: u32, t2: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(LatticePoint::new(t1, t2), c);
        p
    }

    pub fn x1() -> Self {
        Self::monomial(C::one(), 1, 0)
    }

    pub fn x2() -> Self {
        Self::monomial(C::one(), 0, 1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (LatticePoint, C)>) -> Self {
        let mut p = Self::zero();
        for (pt, c) in terms {
            p.add_term(pt, c);
        }
        p
    }

    /// Accumulates `c·x^pt`, dropping the entry if it cancels.
    pub fn add_term(&mut self, pt: LatticePoint, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&pt) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(pt, sum);
                }
            }
            None => {
                self.terms.insert(pt, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LatticePoint, &C)> {
        self.terms.iter()
    }

    /// The Taylor support: exponents with a nonzero coefficient.
    pub fn support(&self) -> Vec<LatticePoint> {
        self.terms.keys().copied().collect()
    }

    pub fn coeff(&self, t1: u32, t2: u32) -> C {
        self.terms
            .get(&LatticePoint::new(t1, t2))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    pub fn contains(&self, t1: u32, t2: u32) -> bool {
        self.terms.contains_key(&LatticePoint::new(t1, t2))
    }

    pub fn degree_in_x1(&self) -> Option<u32> {
        self.terms.keys().map(|p| p.t1).max()
    }

    pub fn degree_in_x2(&self) -> Option<u32> {
        self.terms.keys().map(|p| p.t2).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|p| p.degree()).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (pt, c) in &other.terms {
            out.add_term(*pt, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(p, c)| (*p, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (pa, ca) in &self.terms {
            for (pb, cb) in &other.terms {
                out.add_term(
                    LatticePoint::new(pa.t1 + pb.t1, pa.t2 + pb.t2),
                    ca.clone() * cb.clone(),
                );
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(p, a)| (*p, a.clone() * c.clone())))
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(C::one());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Keeps the terms whose exponent satisfies `keep`.
    pub fn restrict(&self, keep: impl Fn(&LatticePoint) -> bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| keep(p))
                .map(|(p, c)| (*p, c.clone()))
                .collect(),
        }
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> BivariatePolynomial<D> {
        BivariatePolynomial::from_terms(self.terms.iter().map(|(p, c)| (*p, f(c))))
    }

    /// Evaluation in any ring the coefficients embed into.
    pub fn eval<T>(&self, x1: &T, x2: &T) -> T
    where
        T: Clone + Zero + One + std::ops::Mul<Output = T> + std::ops::Add<Output = T>,
        C: Into<T>,
    {
        let mut acc = T::zero();
        for (pt, c) in &self.terms {
            let mut term: T = c.clone().into();
            for _ in 0..pt.t1 {
                term = term * x1.clone();
            }
            for _ in 0..pt.t2 {
                term = term * x2.clone();
            }
            acc = acc + term;
        }
        acc
    }

    /// Transposes every exponent pair: `p(x1, x2) ↦ p(x2, x1)`.
    pub fn swap_variables(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(p, c)| (p.transpose(), c.clone()))
                .collect(),
        }
    }

    /// Coefficients of `p` as a polynomial in `x2` whose coefficients are
    /// polynomials in `x1`: `out[k]` multiplies `x2^k`.
    pub fn coefficients_in_x2(&self) -> Vec<UnivariatePolynomial<C>> {
        let deg = self.degree_in_x2().map_or(0, |d| d as usize + 1);
        let mut buckets: Vec<Vec<C>> = vec![Vec::new(); deg];
        for (pt, c) in &self.terms {
            let row = &mut buckets[pt.t2 as usize];
            let t1 = pt.t1 as usize;
            if row.len() <= t1 {
                row.resize(t1 + 1, C::zero());
            }
            row[t1] = c.clone();
        }
        buckets.into_iter().map(UnivariatePolynomial::new).collect()
    }

    /// Composition `p(x1, x2 + g(x1))`.
    pub fn substitute_x2_shift(&self, g: &UnivariatePolynomial<C>) -> Self {
        let shift = Self::x2().add(&Self::from_terms(
            g.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| (LatticePoint::new(k as u32, 0), c.clone())),
        ));
        let mut powers = vec![Self::constant(C::one())];
        let mut out = Self::zero();
        for (pt, c) in &self.terms {
            while powers.len() <= pt.t2 as usize {
                let next = powers.last().unwrap().mul(&shift);
                powers.push(next);
            }
            let base = &powers[pt.t2 as usize];
            for (q, b) in &base.terms {
                out.add_term(LatticePoint::new(q.t1 + pt.t1, q.t2), b.clone() * c.clone());
            }
        }
        out
    }
}

impl Polynomial {
    pub fn to_f64(&self) -> BivariatePolynomial<f64> {
        self.map_coefficients(crate::rational::to_f64)
    }
}

impl BivariatePolynomial<f64> {
    pub fn eval_f64(&self, x1: f64, x2: f64) -> f64 {
        self.terms
            .iter()
            .map(|(p, c)| c * x1.powi(p.t1 as i32) * x2.powi(p.t2 as i32))
            .sum()
    }
}

fn fmt_monomial(pt: &LatticePoint) -> String {
    let mut parts = Vec::new();
    for (name, e) in [("x1", pt.t1), ("x2", pt.t2)] {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join(" ")
}

fn fmt_coefficient(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        fmt_q(c)
    }
}

impl fmt::Display for Polynomial {
    /// Canonical form: terms in lexicographic `(t1, t2)` order, e.g.
    /// `x2^2 - 2 x1^2 x2 + x1^4 + x1^5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (pt, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = fmt_monomial(pt);
            if mono.is_empty() {
                write!(f, "{}", fmt_coefficient(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{} {mono}", fmt_coefficient(&abs))?;
            }
        }
        Ok(())
    }
}

/// The shear `(y1, y2) = (x1, x2 - ψ(x1))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShearMap {
    psi: UnivariatePolynomial<Rational>,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("shear function must vanish at the origin")]
pub struct NonzeroShearConstant;

impl ShearMap {
    pub fn new(psi: UnivariatePolynomial<Rational>) -> Result<Self, NonzeroShearConstant> {
        if !psi.coeff(0).is_zero() {
            return Err(NonzeroShearConstant);
        }
        Ok(Self { psi })
    }

    pub fn identity() -> Self {
        Self {
            psi: UnivariatePolynomial::zero(),
        }
    }

    /// `ψ(x1) = c·x1^k`, `k ≥ 1`.
    pub fn monomial(c: Rational, k: u32) -> Self {
        assert!(k >= 1, "shear monomials must have positive degree");
        Self {
            psi: UnivariatePolynomial::monomial(c, k as usize),
        }
    }

    pub fn psi(&self) -> &UnivariatePolynomial<Rational> {
        &self.psi
    }

    pub fn is_identity(&self) -> bool {
        self.psi.is_zero()
    }

    /// Linear shears have no terms of degree two or more.
    pub fn is_linear(&self) -> bool {
        self.psi.degree().is_none_or(|d| d <= 1)
    }

    pub fn inverse(&self) -> Self {
        Self {
            psi: self.psi.neg(),
        }
    }

    pub fn compose_increment(&self, increment: &ShearMap) -> Self {
        Self {
            psi: self.psi.add(&increment.psi),
        }
    }

    /// Leading exponent and coefficient of `ψ`.
    pub fn leading_term(&self) -> Option<(u32, Rational)> {
        self.psi.order().map(|k| (k as u32, self.psi.coeff(k)))
    }
}

impl fmt::Display for ShearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.psi)
    }
}

impl Serialize for ShearMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `φ^a(y) = φ(y1, y2 + ψ(y1))`.
pub fn apply_shear(p: &Polynomial, shear: &ShearMap) -> Polynomial {
    if shear.is_identity() {
        return p.clone();
    }
    p.substitute_x2_shift(&shear.psi)
}

pub fn swap_variables<C: Coefficient>(p: &BivariatePolynomial<C>) -> BivariatePolynomial<C> {
    p.swap_variables()
}

#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
pub enum OriginViolation {
    #[error("the phase is identically zero (not of finite type)")]
    IdenticallyZero,
    #[error("the phase does not vanish at the origin")]
    NonzeroConstant,
    #[error("the phase has a nonzero gradient at the origin")]
    NonzeroGradient,
}

impl OriginViolation {
    pub fn kind(&self) -> &'static str {
        match self {
            OriginViolation::IdenticallyZero => "IdenticallyZero",
            OriginViolation::NonzeroConstant => "NonzeroConstant",
            OriginViolation::NonzeroGradient => "NonzeroGradient",
        }
    }
}

/// Accepts polynomials with `φ(0) = 0`, `∇φ(0) = 0` and `φ ≢ 0`; a nonzero
/// polynomial is always of finite type at the origin.
pub fn check_origin_conditions<C: Coefficient>(
    p: &BivariatePolynomial<C>,
) -> Result<(), OriginViolation> {
    if p.is_zero() {
        return Err(OriginViolation::IdenticallyZero);
    }
    if p.contains(0, 0) {
        return Err(OriginViolation::NonzeroConstant);
    }
    if p.contains(1, 0) || p.contains(0, 1) {
        return Err(OriginViolation::NonzeroGradient);
    }
    Ok(())
}

/// `φ(x) - x·∇φ(0)`.
pub fn normalize_gradient<C: Coefficient>(p: &BivariatePolynomial<C>) -> BivariatePolynomial<C> {
    p.restrict(|pt| !matches!((pt.t1, pt.t2), (1, 0) | (0, 1)))
}
