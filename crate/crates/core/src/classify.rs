//! A/D classification of phases with `h_lin < 2`, read off the Taylor
//! support of `φᵃ`.

use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::analysis::Analysis;
use crate::conditions::ExponentPair;
use crate::newton::Weight;
use crate::rational::{serde_q, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "type")]
pub enum ClassKind {
    /// `b(y)y2² + b0(y1)` with `b(0) ≠ 0` and `b0` of order `n`: `A_{n−1}`.
    A {
        n: u32,
    },
    AInf,
    /// `y1·b(y)y2² + b0(y1)` with `b0` of order `n`: `D_{n+1}`.
    D {
        n: u32,
    },
    DInf,
    NotApplicable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SingularityClass {
    pub kind: ClassKind,
    /// `κ2/κ1` of the principal weight; unset when not applicable.
    pub m: Option<u32>,
}

impl SingularityClass {
    pub fn new(kind: ClassKind, m: u32) -> Self {
        Self { kind, m: Some(m) }
    }

    /// The usual name, `A4`, `D7`, `A∞`.
    pub fn name(&self) -> String {
        match self.kind {
            ClassKind::A { n } => format!("A{}", n - 1),
            ClassKind::AInf => "A∞".into(),
            ClassKind::D { n } => format!("D{}", n + 1),
            ClassKind::DInf => "D∞".into(),
            ClassKind::NotApplicable => "not applicable".into(),
        }
    }

    /// Whether `n` is in the range the normal form requires.
    pub fn is_legal(&self) -> bool {
        match (self.kind, self.m) {
            (ClassKind::A { n }, Some(m)) => n > 2 * m,
            (ClassKind::D { n }, Some(m)) => n > 2 * m + 1,
            (ClassKind::NotApplicable, _) => true,
            (_, m) => m.is_some(),
        }
    }
}

impl std::fmt::Display for SingularityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("neither (0,2) nor (1,2) is in the Taylor support of the adapted phase")]
    MalformedNormalForm,
    #[error("the principal weight ratio m is not an integer")]
    NonIntegerM,
}

pub fn classify(analysis: &Analysis) -> Result<SingularityClass, ClassifyError> {
    let not_applicable = SingularityClass {
        kind: ClassKind::NotApplicable,
        m: None,
    };
    if analysis.adapted() || !analysis.heights.h_lin_below_two() {
        return Ok(not_applicable);
    }
    let m = analysis
        .principal
        .integer_m()
        .ok_or(ClassifyError::NonIntegerM)?;
    let phi_a = analysis.phi_a();
    let n = phi_a
        .terms()
        .filter(|(t, _)| t.t2 == 0)
        .map(|(t, _)| t.t1)
        .min();
    let kind = if phi_a.contains(0, 2) {
        n.map_or(ClassKind::AInf, |n| ClassKind::A { n })
    } else if phi_a.contains(1, 2) {
        n.map_or(ClassKind::DInf, |n| ClassKind::D { n })
    } else {
        return Err(ClassifyError::MalformedNormalForm);
    };
    Ok(SingularityClass::new(kind, m))
}

/// `(1/(2m+2), 1/4)` for type A and `(1/(4m+4), 1/4)` for type D.
pub fn critical_exponent(c: &SingularityClass) -> Option<ExponentPair> {
    let m = Rational::from_integer(c.m?.into());
    let quarter = Rational::new(1.into(), 4.into());
    let one = Rational::one();
    let x = match c.kind {
        ClassKind::A { .. } | ClassKind::AInf => {
            (Rational::from_integer(2.into()) * (m + one)).recip()
        }
        ClassKind::D { .. } | ClassKind::DInf => {
            (Rational::from_integer(4.into()) * (m + one)).recip()
        }
        ClassKind::NotApplicable => return None,
    };
    Some(ExponentPair::new(x, quarter))
}

/// Closed-form invariants of the normal forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedInvariants {
    pub kappa: Weight,
    pub kappa_la: Weight,
    #[serde(serialize_with = "serde_q::ser")]
    pub d: Rational,
    #[serde(serialize_with = "serde_q::ser")]
    pub h: Rational,
}

pub fn expected_invariants(c: &SingularityClass) -> Option<ExpectedInvariants> {
    let m = Rational::from_integer(c.m?.into());
    let one = Rational::one();
    let two = Rational::from_integer(2.into());
    match c.kind {
        ClassKind::A { n } => {
            let n = Rational::from_integer(n.into());
            Some(ExpectedInvariants {
                kappa: Weight::new((&two * &m).recip(), two.recip()),
                kappa_la: Weight::new(n.recip(), two.recip()),
                d: &two * &m / (&m + &one),
                h: &two * &n / (&n + &two),
            })
        }
        ClassKind::D { n } => {
            let n = Rational::from_integer(n.into());
            let k1 = (&two * &m + &one).recip();
            Some(ExpectedInvariants {
                kappa: Weight::new(k1.clone(), &m * &k1),
                kappa_la: Weight::new(n.recip(), (&n - &one) / (&two * &n)),
                d: (&two * &m + &one) / (&m + &one),
                h: &two * &n / (&n + &one),
            })
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::analyze;
    use crate::parse::parse_polynomial;
    use crate::rational::q;

    fn class_of(s: &str) -> SingularityClass {
        classify(&analyze(&parse_polynomial(s).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn corpus_classes() {
        let a = class_of("x2^2 - 2 x1^2 x2 + x1^4 + x1^5");
        assert_eq!(a, SingularityClass::new(ClassKind::A { n: 5 }, 2));
        assert_eq!(a.name(), "A4");
        let d = class_of("x1 x2^2 - 2 x1^3 x2 + x1^5 + x1^6");
        assert_eq!(d, SingularityClass::new(ClassKind::D { n: 6 }, 2));
        assert_eq!(d.name(), "D7");
        assert_eq!(class_of("x2^2 - 2 x1^2 x2 + x1^4").kind, ClassKind::AInf);
        assert_eq!(class_of("x1^2 + x2^2").kind, ClassKind::NotApplicable);
    }

    #[test]
    fn exponents_and_invariants() {
        let a = SingularityClass::new(ClassKind::A { n: 5 }, 2);
        assert_eq!(
            critical_exponent(&a),
            Some(ExponentPair::new(q(1, 6), q(1, 4)))
        );
        let e = expected_invariants(&a).unwrap();
        assert_eq!(e.kappa_la, Weight::new(q(1, 5), q(1, 2)));
        assert_eq!((e.d, e.h), (q(4, 3), q(10, 7)));
        let d = SingularityClass::new(ClassKind::D { n: 6 }, 2);
        assert_eq!(
            critical_exponent(&d),
            Some(ExponentPair::new(q(1, 12), q(1, 4)))
        );
        let e = expected_invariants(&d).unwrap();
        assert_eq!(e.kappa, Weight::new(q(1, 5), q(2, 5)));
        assert_eq!(e.kappa_la, Weight::new(q(1, 6), q(5, 12)));
        assert_eq!((e.d, e.h), (q(5, 3), q(12, 7)));
        let inf = SingularityClass::new(ClassKind::AInf, 3);
        assert_eq!(
            critical_exponent(&inf),
            Some(ExponentPair::new(q(1, 8), q(1, 4)))
        );
        assert_eq!(
            expected_invariants(&SingularityClass::new(ClassKind::A { n: 7 }, 3))
                .unwrap()
                .h,
            q(14, 9)
        );
    }
}
