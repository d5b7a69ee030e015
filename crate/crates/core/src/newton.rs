//! Newton polyhedra of lattice supports: vertices, edges, weights, the
//! principal face and the Newton distance.

use serde::Serialize;
use thiserror::Error;

use num_traits::{One, Zero};

use crate::poly::LatticePoint;
use crate::rational::{ExtRational, Rational};
use crate::Polynomial;

/// Coefficients of a supporting line `κ1 t1 + κ2 t2 = 1`. Both components
/// may be infinite for lines through a coordinate axis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Weight {
    pub k1: ExtRational,
    pub k2: ExtRational,
}

impl Weight {
    pub fn new(k1: Rational, k2: Rational) -> Self {
        Self {
            k1: k1.into(),
            k2: k2.into(),
        }
    }

    pub fn finite(&self) -> Option<(&Rational, &Rational)> {
        Some((self.k1.finite()?, self.k2.finite()?))
    }

    /// `m = κ2/κ1`.
    pub fn ratio(&self) -> ExtRational {
        ExtRational::ratio(&self.k2, &self.k1)
    }

    /// `κ1 t1 + κ2 t2`, with `0 · ∞ = 0`.
    pub fn eval(&self, p: &LatticePoint) -> ExtRational {
        let (t1, t2) = p.as_rationals();
        &(&self.k1 * &t1) + &(&self.k2 * &t2)
    }

    /// `1/(κ1 + κ2)` for a finite weight.
    pub fn distance(&self) -> Option<Rational> {
        let (a, b) = self.finite()?;
        let s = a + b;
        (!s.is_zero()).then(|| s.recip())
    }

    pub fn transpose(&self) -> Self {
        Self {
            k1: self.k2.clone(),
            k2: self.k1.clone(),
        }
    }
}

impl std::fmt::Display for Weight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.k1, self.k2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FaceKind {
    Vertex,
    CompactEdge,
    UnboundedVerticalEdge,
    UnboundedHorizontalEdge,
}

/// A face of a Newton polyhedron. Vertices are indexed `0..=n`, edges
/// `0..=n+1` with `γ0` vertical and `γ(n+1)` horizontal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Face {
    pub kind: FaceKind,
    pub index: usize,
    pub endpoints: Vec<LatticePoint>,
    pub weight: Option<Weight>,
}

impl Face {
    pub fn is_vertex(&self) -> bool {
        self.kind == FaceKind::Vertex
    }

    pub fn is_compact(&self) -> bool {
        matches!(self.kind, FaceKind::Vertex | FaceKind::CompactEdge)
    }

    /// Whether the lattice point `t` lies on this face.
    pub fn contains(&self, t: &LatticePoint) -> bool {
        match self.kind {
            FaceKind::Vertex => self.endpoints[0] == *t,
            FaceKind::CompactEdge => {
                let w = self.weight.as_ref().expect("edge weight");
                let (a, b) = (&self.endpoints[0], &self.endpoints[1]);
                w.eval(t) == ExtRational::Finite(Rational::one()) && (a.t1..=b.t1).contains(&t.t1)
            }
            FaceKind::UnboundedVerticalEdge => {
                let v = &self.endpoints[0];
                t.t1 == v.t1 && t.t2 >= v.t2
            }
            FaceKind::UnboundedHorizontalEdge => {
                let v = &self.endpoints[0];
                t.t2 == v.t2 && t.t1 >= v.t1
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NewtonError {
    #[error("empty Taylor support")]
    EmptySupport,
    #[error("face is not a face of the Newton polyhedron")]
    FaceNotOnPolyhedron,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NewtonPolyhedron {
    vertices: Vec<LatticePoint>,
    weights: Vec<Weight>,
}

fn cross(o: &LatticePoint, a: &LatticePoint, b: &LatticePoint) -> i64 {
    let (ox, oy) = (o.t1 as i64, o.t2 as i64);
    (a.t1 as i64 - ox) * (b.t2 as i64 - oy) - (a.t2 as i64 - oy) * (b.t1 as i64 - ox)
}

/// Weight of the compact edge from `a` to `b` (`a.t1 < b.t1`, `a.t2 > b.t2`).
pub fn edge_weight(a: &LatticePoint, b: &LatticePoint) -> Weight {
    let (a0, b0) = (a.t1 as i64, a.t2 as i64);
    let (a1, b1) = (b.t1 as i64, b.t2 as i64);
    let det = a1 * b0 - a0 * b1;
    Weight::new(
        Rational::new((b0 - b1).into(), det.into()),
        Rational::new((a1 - a0).into(), det.into()),
    )
}

/// Convex hull of `∪ (α + R²₊)` over the support, as a lower staircase.
pub fn build_newton_polyhedron(support: &[LatticePoint]) -> Result<NewtonPolyhedron, NewtonError> {
    if support.is_empty() {
        return Err(NewtonError::EmptySupport);
    }
    let mut pts = support.to_vec();
    pts.sort();
    pts.dedup();
    let mut minimal: Vec<LatticePoint> = Vec::new();
    for p in pts {
        if minimal.last().is_none_or(|q| p.t2 < q.t2) {
            minimal.push(p);
        }
    }
    let mut hull: Vec<LatticePoint> = Vec::new();
    for p in minimal {
        while hull.len() >= 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], &p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    Ok(NewtonPolyhedron::from_vertices(hull))
}

impl NewtonPolyhedron {
    /// From a staircase of vertices (A strictly increasing, B strictly
    /// decreasing, strictly convex).
    pub fn from_vertices(vertices: Vec<LatticePoint>) -> Self {
        let first = vertices[0];
        let last = vertices[vertices.len() - 1];
        let mut weights = Vec::with_capacity(vertices.len() + 1);
        weights.push(Weight {
            k1: ExtRational::recip_of(&Rational::from_integer(first.t1.into())),
            k2: ExtRational::Finite(Rational::zero()),
        });
        for pair in vertices.windows(2) {
            weights.push(edge_weight(&pair[0], &pair[1]));
        }
        weights.push(Weight {
            k1: ExtRational::Finite(Rational::zero()),
            k2: ExtRational::recip_of(&Rational::from_integer(last.t2.into())),
        });
        Self { vertices, weights }
    }

    pub fn of(p: &Polynomial) -> Result<Self, NewtonError> {
        build_newton_polyhedron(&p.support())
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// Index of the last vertex.
    pub fn n(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Edge weights `κ^0 ..= κ^(n+1)`.
    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn weight(&self, l: usize) -> &Weight {
        &self.weights[l]
    }

    /// Slopes `a_l = κ2^l / κ1^l`, with `a_0 = 0` and `a_(n+1) = ∞`.
    pub fn slopes(&self) -> Vec<ExtRational> {
        self.weights.iter().map(Weight::ratio).collect()
    }

    pub fn vertex_face(&self, j: usize) -> Face {
        Face {
            kind: FaceKind::Vertex,
            index: j,
            endpoints: vec![self.vertices[j]],
            weight: None,
        }
    }

    pub fn edge_face(&self, l: usize) -> Face {
        let n = self.n();
        let (kind, endpoints) = if l == 0 {
            (FaceKind::UnboundedVerticalEdge, vec![self.vertices[0]])
        } else if l == n + 1 {
            (FaceKind::UnboundedHorizontalEdge, vec![self.vertices[n]])
        } else {
            (
                FaceKind::CompactEdge,
                vec![self.vertices[l - 1], self.vertices[l]],
            )
        };
        Face {
            kind,
            index: l,
            endpoints,
            weight: Some(self.weights[l].clone()),
        }
    }

    pub fn faces(&self) -> Vec<Face> {
        let mut out: Vec<Face> = (0..=self.n()).map(|j| self.vertex_face(j)).collect();
        out.extend((0..=self.n() + 1).map(|l| self.edge_face(l)));
        out
    }

    pub fn is_face(&self, f: &Face) -> bool {
        match f.kind {
            FaceKind::Vertex => f.index <= self.n() && *f == self.vertex_face(f.index),
            _ => f.index <= self.n() + 1 && *f == self.edge_face(f.index),
        }
    }

    /// Whether `t` lies in the polyhedron.
    pub fn contains(&self, t: &LatticePoint) -> bool {
        // An infinite weight stands for a coordinate axis, which every lattice
        // point satisfies.
        self.weights
            .iter()
            .filter(|w| w.finite().is_some())
            .all(|w| w.eval(t) >= ExtRational::Finite(Rational::one()))
    }

    pub fn transpose(&self) -> Self {
        Self::from_vertices(
            self.vertices
                .iter()
                .rev()
                .map(LatticePoint::transpose)
                .collect(),
        )
    }

    pub fn principal_face(&self) -> PrincipalFaceInfo {
        principal_face(self)
    }
}

impl Serialize for NewtonPolyhedron {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            vertices: Vec<[u32; 2]>,
            edges: &'a [Weight],
        }
        Repr {
            vertices: self.vertices.iter().map(|v| [v.t1, v.t2]).collect(),
            edges: &self.weights,
        }
        .serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrincipalFaceInfo {
    pub face: Face,
    pub kappa: Weight,
    pub m: ExtRational,
    #[serde(serialize_with = "crate::rational::serde_q::ser")]
    pub d: Rational,
}

impl PrincipalFaceInfo {
    /// `m` as an integer, when it is one.
    pub fn integer_m(&self) -> Option<u32> {
        let m = self.m.finite()?;
        if m.is_integer() {
            u32::try_from(m.to_integer()).ok()
        } else {
            None
        }
    }
}

pub fn principal_face(np: &NewtonPolyhedron) -> PrincipalFaceInfo {
    let v = np.vertices();
    let n = np.n();
    let with = |face: Face, kappa: Weight, d: Rational| PrincipalFaceInfo {
        m: kappa.ratio(),
        face,
        kappa,
        d,
    };
    if let Some(j) = v.iter().position(|p| p.t1 == p.t2) {
        assert!(
            v[j].t1 > 0,
            "the origin cannot be a vertex of a Taylor support"
        );
        let kappa = np.weight(j + 1).clone();
        return with(
            np.vertex_face(j),
            kappa,
            Rational::from_integer(v[j].t1.into()),
        );
    }
    if v[0].t1 > v[0].t2 {
        let kappa = np.weight(0).clone();
        return with(
            np.edge_face(0),
            kappa,
            Rational::from_integer(v[0].t1.into()),
        );
    }
    if v[n].t1 < v[n].t2 {
        let kappa = np.weight(n + 1).clone();
        return with(
            np.edge_face(n + 1),
            kappa,
            Rational::from_integer(v[n].t2.into()),
        );
    }
    let l = (1..=n)
        .find(|&l| v[l - 1].t1 < v[l - 1].t2 && v[l].t1 > v[l].t2)
        .expect("staircase crosses the bisectrix");
    let kappa = np.weight(l).clone();
    let d = kappa.distance().expect("compact edge weights are finite");
    with(np.edge_face(l), kappa, d)
}

/// The Newton distance `d(φ)`.
pub fn newton_distance(p: &Polynomial) -> Result<Rational, NewtonError> {
    Ok(NewtonPolyhedron::of(p)?.principal_face().d)
}

/// Terms of `p` lying on `face`.
pub fn face_series(p: &Polynomial, face: &Face) -> Result<Polynomial, NewtonError> {
    let np = NewtonPolyhedron::of(p)?;
    if !np.is_face(face) {
        return Err(NewtonError::FaceNotOnPolyhedron);
    }
    Ok(p.restrict(|t| face.contains(t)))
}

/// Swaps the variables iff the principal weight has `κ2 < κ1`.
pub fn canonical_orientation(p: &Polynomial) -> Result<(Polynomial, bool), NewtonError> {
    let info = NewtonPolyhedron::of(p)?.principal_face();
    if info.kappa.k2 < info.kappa.k1 {
        Ok((p.swap_variables(), true))
    } else {
        Ok((p.clone(), false))
    }
}
