//! The augmented Newton polyhedron, its supporting-line function `K` with
//! Legendre transform, and the restriction heights `h^res_r`.

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::newton::{FaceKind, NewtonPolyhedron, Weight};
use crate::poly::LatticePoint;
use crate::rational::{serde_q, ExtRational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AugmentedError {
    #[error(
        "the phase is adapted; the augmented polyhedron is only defined for non-adapted phases"
    )]
    CalledOnAdaptedInput,
    #[error("the principal weight must be finite with k1 > 0")]
    InfiniteWeight,
    #[error(
        "the line of the principal weight does not support the polyhedron at a vertex with B >= A"
    )]
    KappaNotSupporting,
    #[error("ratio r must be positive")]
    NonpositiveRatio,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentedPolyhedron {
    base: NewtonPolyhedron,
    kappa: (Rational, Rational),
    m: Rational,
    l0: usize,
    la: usize,
}

fn point(p: &LatticePoint) -> (Rational, Rational) {
    p.as_rationals()
}

fn finite_kappa(kappa: &Weight) -> Result<(Rational, Rational), AugmentedError> {
    match kappa.finite() {
        Some((a, b)) if !a.is_zero() => Ok((a.clone(), b.clone())),
        _ => Err(AugmentedError::InfiniteWeight),
    }
}

/// `l0` (the first edge with slope above `m`) and the anchor vertex `l0 - 1`,
/// checked to lie on a supporting line of weight `κ`.
pub fn locate_anchor(
    base: &NewtonPolyhedron,
    kappa: &Weight,
) -> Result<(usize, LatticePoint), AugmentedError> {
    let (k1, k2) = finite_kappa(kappa)?;
    let m = ExtRational::Finite(&k2 / &k1);
    let l0 = base
        .slopes()
        .iter()
        .position(|a| *a > m)
        .expect("the horizontal edge has infinite slope");
    assert!(l0 >= 1, "the vertical edge has slope 0");
    let anchor = base.vertices()[l0 - 1];
    let on_line = |v: &LatticePoint| {
        let (a, b) = point(v);
        &k1 * a + &k2 * b
    };
    let one = Rational::one();
    if on_line(&anchor) != one
        || base.vertices().iter().any(|v| on_line(v) < one)
        || anchor.t2 < anchor.t1
    {
        return Err(AugmentedError::KappaNotSupporting);
    }
    Ok((l0, anchor))
}

/// Builds `𝒩ʳᵉˢ` from the polyhedron of `φᵃ` and the principal weight of `φ`.
pub fn build_augmented(
    base: &NewtonPolyhedron,
    kappa: &Weight,
) -> Result<AugmentedPolyhedron, AugmentedError> {
    let (l0, _) = locate_anchor(base, kappa)?;
    let (k1, k2) = finite_kappa(kappa)?;
    let principal = base.principal_face();
    let la = match principal.face.kind {
        // The edge to the left of a vertex γ_j is γ_j.
        FaceKind::Vertex | FaceKind::CompactEdge | FaceKind::UnboundedHorizontalEdge => {
            principal.face.index
        }
        FaceKind::UnboundedVerticalEdge => 0,
    };
    let d = (&k1 + &k2).recip();
    if la < l0 || principal.d == d {
        return Err(AugmentedError::CalledOnAdaptedInput);
    }
    Ok(AugmentedPolyhedron {
        base: base.clone(),
        m: &k2 / &k1,
        kappa: (k1, k2),
        l0,
        la,
    })
}

impl AugmentedPolyhedron {
    pub fn base(&self) -> &NewtonPolyhedron {
        &self.base
    }

    pub fn kappa(&self) -> &(Rational, Rational) {
        &self.kappa
    }

    pub fn m(&self) -> &Rational {
        &self.m
    }

    pub fn l0(&self) -> usize {
        self.l0
    }

    pub fn la(&self) -> usize {
        self.la
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn anchor(&self) -> LatticePoint {
        self.base.vertices()[self.l0 - 1]
    }

    /// Vertices of `𝒩ʳᵉˢ`: the anchor, then the base vertices to its right.
    pub fn vertices(&self) -> &[LatticePoint] {
        &self.base.vertices()[self.l0 - 1..]
    }

    /// Edge weights `κ^l`, `l = l0..=n+1`.
    pub fn edge_weights(&self) -> Vec<(usize, Weight)> {
        (self.l0..=self.n() + 1)
            .map(|l| (l, self.base.weight(l).clone()))
            .collect()
    }

    /// Whether `(t1, t2)` lies in `𝒩ʳᵉˢ`.
    pub fn contains(&self, t1: &Rational, t2: &Rational) -> bool {
        let one = Rational::one();
        let (k1, k2) = &self.kappa;
        if k1 * t1 + k2 * t2 < one {
            return false;
        }
        self.edge_weights()
            .iter()
            .all(|(_, w)| match (&w.k1, &w.k2) {
                (ExtRational::Finite(a), ExtRational::Finite(b)) => a * t1 + b * t2 >= one,
                // The horizontal edge on the t1-axis.
                _ => !t2.is_negative(),
            })
    }

    /// Whether the weight `(u, v)` defines a supporting line of `𝒩ʳᵉˢ`.
    pub fn supports(&self, u: &Rational, v: &Rational) -> bool {
        let one = Rational::one();
        let (k1, k2) = &self.kappa;
        let on_vertices = self
            .vertices()
            .iter()
            .map(point)
            .map(|(a, b)| u * a + v * b);
        let min = on_vertices.min().expect("nonempty");
        // The ray going up-left along L_κ has direction (-κ2, κ1).
        min == one && v * k1 >= u * k2
    }

    pub fn k_function(&self) -> KFunction {
        k_function(self)
    }

    pub fn restriction_height(
        &self,
        d: &Rational,
        r: &Rational,
    ) -> Result<RestrictionHeight, AugmentedError> {
        restriction_height(self, d, r)
    }
}

impl Serialize for AugmentedPolyhedron {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            vertices: Vec<[u32; 2]>,
            #[serde(serialize_with = "serde_q::ser_pair")]
            kappa: (Rational, Rational),
            #[serde(serialize_with = "serde_q::ser")]
            m: Rational,
            anchor: [u32; 2],
            l0: usize,
            la: usize,
            edges: Vec<Weight>,
        }
        let a = self.anchor();
        Repr {
            vertices: self.vertices().iter().map(|v| [v.t1, v.t2]).collect(),
            kappa: self.kappa.clone(),
            m: self.m.clone(),
            anchor: [a.t1, a.t2],
            l0: self.l0,
            la: self.la,
            edges: self.edge_weights().into_iter().map(|(_, w)| w).collect(),
        }
        .serialize(s)
    }
}

/// `K(κ̃1) = κ̃2` for the supporting lines of `𝒩ʳᵉˢ`, stored by breakpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KFunction {
    /// Breakpoints `(u, K(u))`, ascending in `u`, ending at `κ`.
    pub breakpoints: Vec<(Rational, Rational)>,
    /// `K = +∞` on `[0, u_min)` when the horizontal edge lies on `t2 = 0`.
    pub infinite_below: bool,
}

impl KFunction {
    pub fn u_min(&self) -> &Rational {
        &self.breakpoints[0].0
    }

    pub fn u_max(&self) -> &Rational {
        &self.breakpoints[self.breakpoints.len() - 1].0
    }

    /// `K(u)` for `u ∈ [0, κ1]`; `None` outside that interval.
    pub fn eval(&self, u: &Rational) -> Option<ExtRational> {
        if u.is_negative() || u > self.u_max() {
            return None;
        }
        if u < self.u_min() {
            return Some(ExtRational::Infinity);
        }
        for pair in self.breakpoints.windows(2) {
            let ((u0, v0), (u1, v1)) = (&pair[0], &pair[1]);
            if u <= u1 {
                let t = (u - u0) / (u1 - u0);
                return Some(ExtRational::Finite(v0 + t * (v1 - v0)));
            }
        }
        Some(ExtRational::Finite(self.breakpoints[0].1.clone()))
    }

    /// `𝓛(K)[w] = sup_u (w·u − K(u))`, attained at a breakpoint.
    pub fn legendre_transform(&self, w: &Rational) -> Rational {
        self.breakpoints
            .iter()
            .map(|(u, k)| w * u - k)
            .max()
            .expect("nonempty breakpoints")
    }

    pub fn legendre_argmax(&self, w: &Rational) -> &Rational {
        let best = self.legendre_transform(w);
        &self
            .breakpoints
            .iter()
            .find(|(u, k)| w * u - k == best)
            .unwrap()
            .0
    }
}

impl Serialize for KFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            #[serde(serialize_with = "serde_q::ser_pair")]
            finite_domain: (Rational, Rational),
            #[serde(serialize_with = "serde_q::ser_pairs")]
            breakpoints: &'a [(Rational, Rational)],
            infinite_below: bool,
        }
        Repr {
            finite_domain: (self.u_min().clone(), self.u_max().clone()),
            breakpoints: &self.breakpoints,
            infinite_below: self.infinite_below,
        }
        .serialize(s)
    }
}

pub fn k_function(aug: &AugmentedPolyhedron) -> KFunction {
    let mut breakpoints = Vec::new();
    let mut infinite_below = false;
    for l in (aug.l0..=aug.n() + 1).rev() {
        match aug.base.weight(l).finite() {
            Some((a, b)) => breakpoints.push((a.clone(), b.clone())),
            None => infinite_below = true,
        }
    }
    breakpoints.push(aug.kappa.clone());
    KFunction {
        breakpoints,
        infinite_below,
    }
}

/// Which term of the maximum defines `h^res_r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum HeightTerm {
    /// `d(φ) + 1/r − 1`, from the principal weight.
    Distance,
    /// `h^l_r` for the edge `γ_l`.
    Edge { l: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionHeight {
    #[serde(serialize_with = "serde_q::ser")]
    pub r: Rational,
    #[serde(serialize_with = "serde_q::ser")]
    pub value: Rational,
    pub argmax: HeightTerm,
}

/// `h^l_r = ((1+m)κ1 + r)/(r(κ1+κ2)) − 1`; a weight with `κ2 = ∞` gives `−1`.
pub fn edge_height(m: &Rational, w: &Weight, r: &Rational) -> Rational {
    let one = Rational::one();
    match w.finite() {
        Some((a, b)) => ((one.clone() + m) * a + r) / (r * (a + b)) - one,
        None => -one,
    }
}

/// `h^res_r = max{d + 1/r − 1, h^l0_r, …, h^(n+1)_r}`.
pub fn restriction_height(
    aug: &AugmentedPolyhedron,
    d: &Rational,
    r: &Rational,
) -> Result<RestrictionHeight, AugmentedError> {
    if *r <= Rational::zero() {
        return Err(AugmentedError::NonpositiveRatio);
    }
    let mut best = (d + r.recip() - Rational::one(), HeightTerm::Distance);
    for (l, w) in aug.edge_weights() {
        let h = edge_height(&aug.m, &w, r);
        if h > best.0 {
            best = (h, HeightTerm::Edge { l });
        }
    }
    Ok(RestrictionHeight {
        r: r.clone(),
        value: best.0,
        argmax: best.1,
    })
}

/// `h^res_r` read off geometrically: one less than the `t2`-coordinate where
/// `t ↦ (t − (1+m)/r, t)` crosses the boundary of `𝒩ʳᵉˢ`.
pub fn restriction_height_geometric(
    aug: &AugmentedPolyhedron,
    r: &Rational,
) -> Result<Rational, AugmentedError> {
    if *r <= Rational::zero() {
        return Err(AugmentedError::NonpositiveRatio);
    }
    let one = Rational::one();
    let shift = (&one + &aug.m) / r;
    // g vanishes on the line and increases along the boundary from left to right.
    let g = |(a, b): &(Rational, Rational)| a - b + &shift;
    let verts: Vec<(Rational, Rational)> = aug.vertices().iter().map(point).collect();
    let g0 = g(&verts[0]);
    let t2 = if g0 >= Rational::zero() {
        // On the ray anchor + s(−κ2, κ1).
        let (k1, k2) = &aug.kappa;
        let s = g0 / (k1 + k2);
        &verts[0].1 + s * k1
    } else if let Some(j) = (1..verts.len()).find(|&j| g(&verts[j]) >= Rational::zero()) {
        let (ga, gb) = (g(&verts[j - 1]), g(&verts[j]));
        let lambda = -&ga / (gb - &ga);
        &verts[j - 1].1 + lambda * (&verts[j].1 - &verts[j - 1].1)
    } else {
        verts[verts.len() - 1].1.clone()
    };
    Ok(t2 - one)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn base(v: &[(u32, u32)]) -> NewtonPolyhedron {
        NewtonPolyhedron::from_vertices(v.iter().map(|&(a, b)| LatticePoint::new(a, b)).collect())
    }

    fn e1() -> AugmentedPolyhedron {
        build_augmented(&base(&[(0, 2), (5, 0)]), &Weight::new(q(1, 4), q(1, 2))).unwrap()
    }

    fn e2() -> AugmentedPolyhedron {
        build_augmented(&base(&[(1, 2), (6, 0)]), &Weight::new(q(1, 5), q(2, 5))).unwrap()
    }

    #[test]
    fn anchors() {
        let a = e1();
        assert_eq!(
            (a.anchor(), a.l0(), a.la()),
            (LatticePoint::new(0, 2), 1, 1)
        );
        let a = e2();
        assert_eq!(
            (a.anchor(), a.l0(), a.la()),
            (LatticePoint::new(1, 2), 1, 1)
        );
        let synthetic = base(&[(0, 3), (1, 1), (4, 0)]);
        let (l0, anchor) = locate_anchor(&synthetic, &Weight::new(q(1, 3), q(2, 3))).unwrap();
        assert_eq!((l0, anchor), (2, LatticePoint::new(1, 1)));
        assert_eq!(
            locate_anchor(&synthetic, &Weight::new(q(1, 4), q(1, 2))),
            Err(AugmentedError::KappaNotSupporting)
        );
        assert_eq!(
            build_augmented(&synthetic, &Weight::new(q(1, 3), q(2, 3))),
            Err(AugmentedError::CalledOnAdaptedInput)
        );
    }

    #[test]
    fn k_function_examples() {
        let k = e1().k_function();
        assert_eq!(k.breakpoints, vec![(q(1, 5), q(1, 2)), (q(1, 4), q(1, 2))]);
        assert!(k.infinite_below);
        assert_eq!(k.eval(&q(1, 10)), Some(ExtRational::Infinity));
        assert_eq!(k.eval(&q(9, 40)), Some(ExtRational::Finite(q(1, 2))));
        let k = e2().k_function();
        assert_eq!(k.breakpoints, vec![(q(1, 6), q(5, 12)), (q(1, 5), q(2, 5))]);
        // Horizontal edge on t2 = 3, which also holds the principal face.
        let aug =
            build_augmented(&base(&[(0, 4), (1, 3)]), &Weight::new(q(1, 7), q(2, 7))).unwrap();
        assert_eq!((aug.l0(), aug.la()), (2, 2));
        let horizontal = aug.k_function();
        assert!(!horizontal.infinite_below);
        assert_eq!(horizontal.eval(&qi(0)), Some(ExtRational::Finite(q(1, 3))));
    }

    #[test]
    fn legendre_examples() {
        let k = e1().k_function();
        assert_eq!(k.legendre_transform(&qi(0)), q(-1, 2));
        assert_eq!(k.legendre_transform(&qi(2)), qi(0));
        assert_eq!(k.legendre_argmax(&qi(-1000)), k.u_min());
    }

    #[test]
    fn restriction_heights() {
        let a = e1();
        let h = a.restriction_height(&q(4, 3), &qi(1)).unwrap();
        assert_eq!((h.value.clone(), h.argmax), (q(4, 3), HeightTerm::Distance));
        assert_eq!(edge_height(a.m(), a.base().weight(1), &qi(1)), q(9, 7));
        assert_eq!(qi(2) * (qi(1) + h.value), q(14, 3));
        for r in [q(1, 3), q(1, 2), qi(1), qi(2), qi(5)] {
            for aug in [e1(), e2()] {
                let d = (&aug.kappa().0 + &aug.kappa().1).recip();
                assert_eq!(
                    restriction_height(&aug, &d, &r).unwrap().value,
                    restriction_height_geometric(&aug, &r).unwrap()
                );
            }
        }
        assert_eq!(
            a.restriction_height(&q(4, 3), &qi(0)),
            Err(AugmentedError::NonpositiveRatio)
        );
    }
}
