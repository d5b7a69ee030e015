//! Dense univariate polynomials over a generic coefficient ring.

use std::fmt;

use num_traits::{Float, Zero};

use crate::poly::Coefficient;
use crate::rational::Rational;

/// `coeffs[k]` is the coefficient of `s^k`; trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnivariatePolynomial<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> UnivariatePolynomial<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn monomial(coeff: C, power: usize) -> Self {
        let mut coeffs = vec![C::zero(); power + 1];
        coeffs[power] = coeff;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> C {
        self.coeffs.last().cloned().unwrap_or_else(C::zero)
    }

    pub fn eval<T>(&self, s: T) -> T
    where
        T: Clone + Zero + std::ops::Mul<Output = T> + std::ops::Add<Output = T>,
        C: Into<T>,
    {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * s.clone() + c.clone().into())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| {
                let mut kc = C::zero();
                for _ in 0..k {
                    kc = kc + c.clone();
                }
                kc
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> UnivariatePolynomial<D> {
        UnivariatePolynomial::new(self.coeffs.iter().map(f).collect())
    }

    /// Lowest power with a nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}

impl UnivariatePolynomial<Rational> {
    pub fn to_f64(&self) -> UnivariatePolynomial<f64> {
        self.map(crate::rational::to_f64)
    }

    /// Division with remainder over a field; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lead;
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &c * b;
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.leading();
        Self::new(self.coeffs.iter().map(|c| c / &lead).collect())
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl<F: Float + Coefficient> UnivariatePolynomial<F> {
    pub fn eval_f(&self, s: F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, &c| acc * s + c)
    }
}

impl fmt::Display for UnivariatePolynomial<Rational> {
    /// Printed in the `x1` variable, matching shear maps `ψ(x1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly = crate::poly::BivariatePolynomial::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (crate::poly::LatticePoint::new(k as u32, 0), c.clone())),
        );
        if poly.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{poly}")
    }
}
