//! Necessary conditions in the `(1/p1', 1/p3')`-plane: the half-planes, the
//! polygon they cut out, and admissibility queries.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::analysis::Analysis;
use crate::rational::{rational_from_f64, serde_q, to_f64, Rational};

/// A point `(1/p1', 1/p3')`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentPair {
    pub x: Rational,
    pub y: Rational,
}

impl ExponentPair {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }

    /// Rounds to rationals with denominator at most 10⁶; also returns the
    /// rounding error of each coordinate.
    pub fn from_f64(x: f64, y: f64) -> Option<(Self, [f64; 2])> {
        let rx = rational_from_f64(x, 1_000_000)?;
        let ry = rational_from_f64(y, 1_000_000)?;
        let err = [to_f64(&rx) - x, to_f64(&ry) - y];
        Some((Self::new(rx, ry), err))
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [to_f64(&self.x), to_f64(&self.y)]
    }
}

impl Serialize for ExponentPair {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serde_q::ser_pair(&(self.x.clone(), self.y.clone()), s)
    }
}

impl std::fmt::Display for ExponentPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind")]
pub enum HalfPlaneLabel {
    KappaLine,
    EdgeLine { l: usize },
    AdaptedLine,
    AxisP1,
    AxisP3,
}

/// The condition `a·x + b·y ≤ c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HalfPlane {
    #[serde(serialize_with = "serde_q::ser")]
    pub a: Rational,
    #[serde(serialize_with = "serde_q::ser")]
    pub b: Rational,
    #[serde(serialize_with = "serde_q::ser")]
    pub c: Rational,
    pub label: HalfPlaneLabel,
}

impl HalfPlane {
    pub fn new(a: Rational, b: Rational, c: Rational, label: HalfPlaneLabel) -> Self {
        Self { a, b, c, label }
    }

    pub fn lhs(&self, q: &ExponentPair) -> Rational {
        &self.a * &q.x + &self.b * &q.y
    }

    pub fn holds(&self, q: &ExponentPair) -> bool {
        self.lhs(q) <= self.c
    }

    pub fn is_tight(&self, q: &ExponentPair) -> bool {
        self.lhs(q) == self.c
    }

    pub fn is_axis(&self) -> bool {
        matches!(self.label, HalfPlaneLabel::AxisP1 | HalfPlaneLabel::AxisP3)
    }

    /// Whether `self` and `other` bound the same closed half-plane.
    pub fn same_constraint(&self, other: &HalfPlane) -> bool {
        &self.a * &other.b == &self.b * &other.a
            && &self.a * &other.c == &self.c * &other.a
            && &self.b * &other.c == &self.c * &other.b
    }
}

impl std::fmt::Display for HalfPlane {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} x + {} y <= {}", self.a, self.b, self.c)
    }
}

/// `(1+m)κ1 x + y ≤ (κ1+κ2)/2` for a finite weight `κ`.
fn knapp_halfplane(m: &Rational, k1: &Rational, k2: &Rational, label: HalfPlaneLabel) -> HalfPlane {
    let two = Rational::from_integer(2.into());
    HalfPlane::new(
        (Rational::one() + m) * k1,
        Rational::one(),
        (k1 + k2) / two,
        label,
    )
}

pub fn condition_halfplanes(analysis: &Analysis) -> Vec<HalfPlane> {
    let two = Rational::from_integer(2.into());
    let half = Rational::new(1.into(), 2.into());
    let h = &analysis.heights.h;
    let axis_p1 = HalfPlane::new(
        Rational::one(),
        Rational::zero(),
        half,
        HalfPlaneLabel::AxisP1,
    );
    let axis_p3 = HalfPlane::new(
        Rational::zero(),
        Rational::one(),
        (&two * h).recip(),
        HalfPlaneLabel::AxisP3,
    );
    let mut out = Vec::new();
    match &analysis.augmented {
        None => {
            let d = &analysis.heights.h;
            out.push(HalfPlane::new(
                d.recip(),
                Rational::one(),
                (&two * d).recip(),
                HalfPlaneLabel::AdaptedLine,
            ));
        }
        Some(aug) => {
            let (k1, k2) = aug.kappa();
            out.push(knapp_halfplane(aug.m(), k1, k2, HalfPlaneLabel::KappaLine));
            out.extend(edge_halfplanes(analysis, aug.l0()..=aug.la()));
        }
    }
    out.push(axis_p1);
    out.push(axis_p3);
    out
}

/// Knapp conditions of the edges `γ_l` of the augmented polyhedron with `l`
/// in `range`; edges with an infinite weight give no condition.
pub fn edge_halfplanes(
    analysis: &Analysis,
    range: std::ops::RangeInclusive<usize>,
) -> Vec<HalfPlane> {
    let Some(aug) = &analysis.augmented else {
        return Vec::new();
    };
    range
        .filter_map(|l| {
            let w = aug.base().weight(l);
            let (k1, k2) = w.finite()?;
            Some(knapp_halfplane(
                aug.m(),
                k1,
                k2,
                HalfPlaneLabel::EdgeLine { l },
            ))
        })
        .collect()
}

/// Conditions for every edge `l0..=n+1` together with the κ-line; those with
/// `l > la` should be redundant.
pub fn all_knapp_halfplanes(analysis: &Analysis) -> Vec<HalfPlane> {
    let Some(aug) = &analysis.augmented else {
        return Vec::new();
    };
    let (k1, k2) = aug.kappa();
    let mut out = vec![knapp_halfplane(aug.m(), k1, k2, HalfPlaneLabel::KappaLine)];
    out.extend(edge_halfplanes(analysis, aug.l0()..=aug.n() + 1));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PtildeExclusion {
    HEqualsOne,
    NuEqualsOne,
}

/// Sub-regions where the estimate is known to hold independently of the
/// polygon: the triangle `O P P̃`, and `O P D P̃` with `D` the diagonal point
/// `1/p1' = 1/p3' = 1/(2(1+h^res))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnownRegions {
    pub kt: Vec<ExponentPair>,
    pub im: Option<Vec<ExponentPair>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissiblePolygon {
    /// Counter-clockwise from the origin.
    pub vertices: Vec<ExponentPair>,
    pub ptilde_included: bool,
    pub ptilde_excluded_reason: Option<PtildeExclusion>,
    pub halfplanes: Vec<HalfPlane>,
    pub known_regions: KnownRegions,
}

impl AdmissiblePolygon {
    pub fn ptilde(&self) -> &ExponentPair {
        self.vertices.last().expect("nonempty polygon")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConditionsError {
    #[error("consecutive condition lines {0} and {1} are parallel")]
    DegenerateIntersection(usize, usize),
    #[error("only defined for non-adapted phases")]
    AdaptedInput,
}

/// `1/2 · ((1 + Δκ2/Δκ1)/(m+1), κ2 − κ1·Δκ2/Δκ1)` for the lines of the
/// weights `a` (left) and `b` (right).
fn corner(
    m: &Rational,
    a: (&Rational, &Rational),
    b: (&Rational, &Rational),
) -> Option<ExponentPair> {
    let dk1 = b.0 - a.0;
    if dk1.is_zero() {
        return None;
    }
    let ratio = (b.1 - a.1) / dk1;
    let half = Rational::new(1.into(), 2.into());
    let one = Rational::one();
    Some(ExponentPair::new(
        &half * (&one + &ratio) / (&one + m),
        &half * (a.1 - a.0 * &ratio),
    ))
}

pub fn admissible_polygon(analysis: &Analysis) -> Result<AdmissiblePolygon, ConditionsError> {
    let h = &analysis.heights.h;
    let half = Rational::new(1.into(), 2.into());
    let o = ExponentPair::new(Rational::zero(), Rational::zero());
    let p = ExponentPair::new(half.clone(), Rational::zero());
    let ptilde = ExponentPair::new(
        Rational::zero(),
        (Rational::from_integer(2.into()) * h).recip(),
    );
    let mut vertices = vec![o.clone(), p.clone()];
    let mut im = None;
    if let Some(aug) = &analysis.augmented {
        let m = aug.m();
        let mut left = aug.kappa().clone();
        let mut left_label = 0;
        for l in aug.l0()..=aug.la() {
            let w = aug.base().weight(l);
            let (k1, k2) = w.finite().expect("edges up to la have finite weights");
            let pt = corner(m, (&left.0, &left.1), (k1, k2))
                .ok_or(ConditionsError::DegenerateIntersection(left_label, l))?;
            vertices.push(pt);
            left = (k1.clone(), k2.clone());
            left_label = l;
        }
        let d = (&aug.kappa().0 + &aug.kappa().1).recip();
        let hres = aug
            .restriction_height(&d, &Rational::one())
            .expect("r = 1 is positive");
        let diag = (Rational::from_integer(2.into()) * (Rational::one() + hres.value)).recip();
        im = Some(vec![
            o.clone(),
            p.clone(),
            ExponentPair::new(diag.clone(), diag),
            ptilde.clone(),
        ]);
    }
    vertices.push(ptilde.clone());
    vertices.dedup();
    let reason = if h.is_one() {
        Some(PtildeExclusion::HEqualsOne)
    } else if analysis.heights.nu == 1 {
        Some(PtildeExclusion::NuEqualsOne)
    } else {
        None
    };
    Ok(AdmissiblePolygon {
        vertices,
        ptilde_included: reason.is_none(),
        ptilde_excluded_reason: reason,
        halfplanes: condition_halfplanes(analysis),
        known_regions: KnownRegions {
            kt: vec![o, p, ptilde],
            im,
        },
    })
}

fn intersect(a: &HalfPlane, b: &HalfPlane) -> Option<ExponentPair> {
    let det = &a.a * &b.b - &a.b * &b.a;
    if det.is_zero() {
        return None;
    }
    let x = (&a.c * &b.b - &a.b * &b.c) / &det;
    let y = (&a.a * &b.c - &a.c * &b.a) / &det;
    Some(ExponentPair::new(x, y))
}

fn cross(o: &ExponentPair, a: &ExponentPair, b: &ExponentPair) -> Rational {
    (&a.x - &o.x) * (&b.y - &o.y) - (&a.y - &o.y) * (&b.x - &o.x)
}

/// The polygon cut out of the quadrant `x, y ≥ 0` by `halfplanes`, from all
/// pairwise line intersections; counter-clockwise from the origin, without
/// collinear points.
pub fn brute_force_polygon(halfplanes: &[HalfPlane]) -> Vec<ExponentPair> {
    let mut lines = halfplanes.to_vec();
    let zero = Rational::zero;
    let one = Rational::one;
    lines.push(HalfPlane::new(
        -one(),
        zero(),
        zero(),
        HalfPlaneLabel::AxisP1,
    ));
    lines.push(HalfPlane::new(
        zero(),
        -one(),
        zero(),
        HalfPlaneLabel::AxisP3,
    ));
    let mut pts: Vec<ExponentPair> = Vec::new();
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            if let Some(q) = intersect(a, b) {
                if lines.iter().all(|l| l.holds(&q)) {
                    pts.push(q);
                }
            }
        }
    }
    pts.sort();
    pts.dedup();
    convex_hull_ccw(pts)
}

/// Andrew's monotone chain, rotated to start at the lowest-leftmost point.
fn convex_hull_ccw(pts: Vec<ExponentPair>) -> Vec<ExponentPair> {
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<ExponentPair> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<ExponentPair> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    let start = lower
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| a.y.cmp(&b.y).then(a.x.cmp(&b.x)))
        .map(|(i, _)| i)
        .unwrap();
    lower.rotate_left(start);
    lower
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Proven {
    Yes,
    No,
    OpenEndpoint,
    OutsideTheorem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Admissibility {
    pub necessary: bool,
    pub proven: Proven,
}

pub fn is_admissible(analysis: &Analysis, q: &ExponentPair) -> Admissibility {
    let in_quadrant = !q.x.is_negative() && !q.y.is_negative();
    let necessary = in_quadrant && condition_halfplanes(analysis).iter().all(|hp| hp.holds(q));
    let two = Rational::from_integer(2.into());
    let ptilde = ExponentPair::new(Rational::zero(), (&two * &analysis.heights.h).recip());
    let excluded = analysis.heights.h.is_one() || analysis.heights.nu == 1;
    let proven = if !necessary {
        Proven::No
    } else if excluded && *q == ptilde {
        Proven::OpenEndpoint
    } else if analysis.augmented.is_none() || analysis.heights.h_lin_below_two() {
        Proven::Yes
    } else {
        Proven::OutsideTheorem
    };
    Admissibility { necessary, proven }
}

/// `1/p3' ≤ −½·𝓛(K)[(2+2m)/p1' − 1]`.
pub fn legendre_condition(analysis: &Analysis, q: &ExponentPair) -> Result<bool, ConditionsError> {
    let aug = analysis
        .augmented
        .as_ref()
        .ok_or(ConditionsError::AdaptedInput)?;
    let two = Rational::from_integer(2.into());
    let w = (&two + &two * aug.m()) * &q.x - Rational::one();
    let bound = -aug.k_function().legendre_transform(&w) / two;
    Ok(q.y <= bound)
}

/// Compares `(1+m)κ̃1·x + y` with `(κ̃1+κ̃2)/2`, the two Knapp exponents of a
/// box of weight `κ̃`.
pub fn knapp_exponent_comparison(
    m: &Rational,
    k1: &Rational,
    k2: &Rational,
    q: &ExponentPair,
) -> Ordering {
    let hp = knapp_halfplane(m, k1, k2, HalfPlaneLabel::KappaLine);
    hp.lhs(q).cmp(&hp.c)
}
