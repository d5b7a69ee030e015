//! A small corpus of reference phases covering each branch of the pipeline.

use crate::{parse_polynomial, Polynomial};

#[derive(Clone, Copy, Debug)]
pub struct CorpusPhase {
    pub name: &'static str,
    pub phi: &'static str,
}

impl CorpusPhase {
    pub fn polynomial(&self) -> Polynomial {
        parse_polynomial(self.phi).expect("corpus phases parse")
    }
}

pub const CORPUS: &[CorpusPhase] = &[
    CorpusPhase {
        name: "morse",
        phi: "x1^2 + x2^2",
    },
    CorpusPhase {
        name: "quartic",
        phi: "x2^2 + x1^4",
    },
    CorpusPhase {
        name: "e1",
        phi: "x2^2 - 2 x1^2 x2 + x1^4 + x1^5",
    },
    CorpusPhase {
        name: "e2",
        phi: "x1 x2^2 - 2 x1^3 x2 + x1^5 + x1^6",
    },
    CorpusPhase {
        name: "vertex",
        phi: "x1^2 x2^2 + x1^10",
    },
    CorpusPhase {
        name: "a_inf",
        phi: "x2^2 - 2 x1^2 x2 + x1^4",
    },
    CorpusPhase {
        name: "d_inf",
        phi: "x1 x2^2 - 2 x1^3 x2 + x1^5",
    },
    CorpusPhase {
        name: "cubic_shear",
        phi: "x2^2 - 4 x1^3 x2 + 4 x1^6 + x1^8",
    },
    CorpusPhase {
        name: "linear_shear",
        phi: "x2^2 - 2 x1 x2 + x1^2 + x1^5",
    },
    CorpusPhase {
        name: "two_step",
        phi: "x2^2 - 2 x1 x2 + x1^2 - 2 x1^2 x2 + 2 x1^3 + x1^4 + x1^7",
    },
    CorpusPhase {
        name: "cusp3",
        phi: "x2^3 - 3 x1^2 x2^2 + 3 x1^4 x2 - x1^6 + x1^7",
    },
];

pub fn find(name: &str) -> Option<&'static CorpusPhase> {
    let key = name.to_ascii_lowercase();
    CORPUS.iter().find(|c| c.name == key)
}

fn shifted_square(m: u32) -> Polynomial {
    let y = Polynomial::x2().sub(&Polynomial::x1().pow(m));
    y.mul(&y)
}

/// `b(x)(x2 − x1^m)² + x1^n` with `b = 1 + x1 + x2` or `b = 1`.
pub fn a_normal_form(m: u32, n: u32, perturbed: bool) -> Polynomial {
    let one = Polynomial::constant(crate::qi(1));
    let b = if perturbed {
        one.add(&Polynomial::x1()).add(&Polynomial::x2())
    } else {
        one
    };
    b.mul(&shifted_square(m)).add(&Polynomial::x1().pow(n))
}

/// `x1·b(x)(x2 − x1^m)² + x1^n` with `b = 1 + x1 + x2` or `b = 1`.
pub fn d_normal_form(m: u32, n: u32, perturbed: bool) -> Polynomial {
    let one = Polynomial::constant(crate::qi(1));
    let b = if perturbed {
        one.add(&Polynomial::x1()).add(&Polynomial::x2())
    } else {
        one
    };
    Polynomial::x1()
        .mul(&b)
        .mul(&shifted_square(m))
        .add(&Polynomial::x1().pow(n))
}
