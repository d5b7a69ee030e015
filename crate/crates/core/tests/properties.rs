use num_traits::Signed;
use proptest::prelude::*;

use restrikt_core::adapted::{height, linear_height, AdaptedError, LinearChange};
use restrikt_core::analysis::{analyze, Analysis, AnalysisError};
use restrikt_core::conditions::{
    admissible_polygon, brute_force_polygon, condition_halfplanes, legendre_condition, ExponentPair,
};
use restrikt_core::newton::{build_newton_polyhedron, FaceKind, NewtonPolyhedron};
use restrikt_core::poly::{apply_shear, normalize_gradient};
use restrikt_core::{
    parse_polynomial, q, qi, ExtRational, LatticePoint, Polynomial, Rational, ShearMap, Univariate,
};

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| *r != qi(0))
}

fn term(max_deg: u32) -> impl Strategy<Value = (LatticePoint, Rational)> {
    (0..=max_deg, 0..=max_deg, nonzero_rational())
        .prop_filter("order at least two", move |(a, b, _)| {
            a + b >= 2 && a + b <= max_deg
        })
        .prop_map(|(a, b, c)| (LatticePoint::new(a, b), c))
}

/// Sparse phases with vanishing gradient, degree at most `max_deg`.
fn sparse_phase(max_deg: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(term(max_deg), 1..7)
        .prop_map(Polynomial::from_terms)
        .prop_filter("nonzero", |p| !p.is_zero())
}

/// `(x2 − ψ(x1))^j · b + x1^n + extra`, mostly non-adapted.
fn shear_phase() -> impl Strategy<Value = Polynomial> {
    (
        prop::collection::vec(-2i64..=2, 3),
        2u32..=3,
        5u32..=12,
        any::<bool>(),
        prop::collection::vec((1u32..=4, 0u32..=2, -3i64..=3), 0..3),
    )
        .prop_map(|(psi, j, n, flip, extra)| {
            let mut coeffs = vec![qi(0)];
            coeffs.extend(psi.into_iter().map(qi));
            let psi = Univariate::new(coeffs);
            let y = Polynomial::x2().sub(&Polynomial::from_terms(
                psi.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(k, c)| (LatticePoint::new(k as u32, 0), c.clone())),
            ));
            let mut p = y.pow(j).add(&Polynomial::monomial(qi(1), n, 0));
            for (a, b, c) in extra {
                // Terms well above the polyhedron of the leading part.
                p.add_term(LatticePoint::new(a + 6, b + j), qi(c));
            }
            if flip {
                p = p.swap_variables();
            }
            p
        })
        .prop_filter("nonzero gradient-free", |p| {
            !p.is_zero() && !p.contains(0, 0) && !p.contains(1, 0) && !p.contains(0, 1)
        })
}

fn analyzed(p: &Polynomial) -> Option<Analysis> {
    match analyze(p) {
        Ok(a) => Some(a),
        Err(AnalysisError::Adapted(AdaptedError::IrrationalRootEncountered { .. })) => None,
        Err(e) => panic!("{p}: {e}"),
    }
}

/// Vertices by exhaustion: non-dominated support points lying strictly
/// below every chord between other candidates around them.
fn brute_force_vertices(support: &[LatticePoint]) -> Vec<LatticePoint> {
    let cand: Vec<LatticePoint> = support
        .iter()
        .copied()
        .filter(|p| {
            !support
                .iter()
                .any(|q| q != p && q.t1 <= p.t1 && q.t2 <= p.t2)
        })
        .collect();
    let mut out: Vec<LatticePoint> = cand
        .iter()
        .copied()
        .filter(|p| {
            cand.iter().all(|a| {
                cand.iter().all(|b| {
                    if !(a.t1 < p.t1 && p.t1 < b.t1) {
                        return true;
                    }
                    // p strictly below the chord from a to b.
                    let (ax, ay) = (a.t1 as i64, a.t2 as i64);
                    let (bx, by) = (b.t1 as i64, b.t2 as i64);
                    let (px, py) = (p.t1 as i64, p.t2 as i64);
                    (py - ay) * (bx - ax) < (by - ay) * (px - ax)
                })
            })
        })
        .collect();
    out.sort_by_key(|p| p.t1);
    out
}

fn exponent_pair() -> impl Strategy<Value = ExponentPair> {
    (0i64..=500, 1i64..=1000, 0i64..=500, 1i64..=1000).prop_map(|(a, b, c, d)| {
        let x = q(a, b).min(q(1, 2));
        let y = q(c, d).min(q(1, 2));
        ExponentPair::new(x, y)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn print_parse_round_trip(p in sparse_phase(12)) {
        prop_assert_eq!(parse_polynomial(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn shear_inverse(p in sparse_phase(6), c in nonzero_rational(), k in 1u32..=3) {
        let s = ShearMap::monomial(c, k);
        prop_assert_eq!(apply_shear(&apply_shear(&p, &s), &s.inverse()), p);
    }

    #[test]
    fn normalize_is_idempotent(p in sparse_phase(6), a in nonzero_rational(), b in nonzero_rational()) {
        let mut with_gradient = p;
        with_gradient.add_term(LatticePoint::new(1, 0), a);
        with_gradient.add_term(LatticePoint::new(0, 1), b);
        let once = normalize_gradient(&with_gradient);
        prop_assert_eq!(normalize_gradient(&once), once.clone());
        prop_assert!(!once.contains(1, 0) && !once.contains(0, 1));
    }

    #[test]
    fn hull_matches_brute_force(p in sparse_phase(12)) {
        let support = p.support();
        let np = build_newton_polyhedron(&support).unwrap();
        prop_assert_eq!(np.vertices().to_vec(), brute_force_vertices(&support));
        for t in &support {
            prop_assert!(np.contains(t));
        }
    }

    #[test]
    fn face_series_are_quasi_homogeneous(p in sparse_phase(10)) {
        let np = NewtonPolyhedron::of(&p).unwrap();
        for face in np.faces() {
            let series = p.restrict(|t| face.contains(t));
            prop_assert!(!series.is_zero());
            if face.kind == FaceKind::CompactEdge {
                let w = face.weight.as_ref().unwrap();
                for (t, _) in series.terms() {
                    prop_assert_eq!(w.eval(t), ExtRational::Finite(qi(1)));
                }
            }
        }
    }

    #[test]
    fn dominated_points_do_not_change_the_polyhedron(p in sparse_phase(8), j in 0usize..8, a in 0u32..3, b in 0u32..3) {
        prop_assume!(a + b > 0);
        let np = NewtonPolyhedron::of(&p).unwrap();
        let v = np.vertices()[j % np.vertices().len()];
        let mut q = p.clone();
        q.add_term(LatticePoint::new(v.t1 + a, v.t2 + b), qi(7));
        prop_assert_eq!(NewtonPolyhedron::of(&q).unwrap(), np);
    }

    #[test]
    fn transpose_commutes_with_swap(p in sparse_phase(10)) {
        let np = NewtonPolyhedron::of(&p).unwrap();
        let swapped = NewtonPolyhedron::of(&p.swap_variables()).unwrap();
        prop_assert_eq!(&swapped, &np.transpose());
        prop_assert_eq!(swapped.principal_face().d, np.principal_face().d);
    }

    #[test]
    fn height_is_coordinate_invariant(p in shear_phase(), c in -2i64..=2) {
        let h = match height(&p) {
            Ok(h) => h,
            Err(AdaptedError::IrrationalRootEncountered { .. }) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        let swapped = height(&p.swap_variables());
        let sheared = height(&LinearChange::ShearX2 { c: qi(c) }.apply(&p));
        if let Ok(hs) = swapped { prop_assert_eq!(&hs, &h); }
        if let Ok(hs) = sheared { prop_assert_eq!(&hs, &h); }
    }

    #[test]
    fn height_chain(p in prop_oneof![sparse_phase(12), shear_phase()]) {
        let Some(a) = analyzed(&p) else { return Ok(()) };
        prop_assert!(a.heights.d <= a.heights.h_lin);
        prop_assert!(a.heights.h_lin <= a.heights.h);
        prop_assert_eq!(&linear_height(&p).unwrap().h_lin, &a.heights.h_lin);
        if !a.adapted() {
            prop_assert!(a.principal.integer_m().is_some());
        }
        if a.heights.h_lin_below_two() {
            prop_assert_eq!(a.heights.nu, 0);
        }
    }

    #[test]
    fn k_is_convex_and_supporting(p in shear_phase()) {
        let Some(a) = analyzed(&p) else { return Ok(()) };
        let Some(aug) = &a.augmented else { return Ok(()) };
        let k = aug.k_function();
        for (u, v) in &k.breakpoints {
            prop_assert!(aug.supports(u, v));
        }
        let slopes: Vec<Rational> = k
            .breakpoints
            .windows(2)
            .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
            .collect();
        for s in slopes.windows(2) {
            prop_assert!(s[0] <= s[1]);
        }
    }

    #[test]
    fn legendre_transform_bounds_grid(p in shear_phase(), wn in -40i64..=40) {
        let Some(a) = analyzed(&p) else { return Ok(()) };
        let Some(aug) = &a.augmented else { return Ok(()) };
        let k = aug.k_function();
        let w = q(wn, 4);
        let lt = k.legendre_transform(&w);
        let steps = 256;
        let (lo, hi) = (k.u_min().clone(), k.u_max().clone());
        let mut grid_max = None::<Rational>;
        for i in 0..=steps {
            let u = &lo + (&hi - &lo) * q(i, steps);
            let Some(ExtRational::Finite(ku)) = k.eval(&u) else { panic!("finite on [u_min, u_max]") };
            let val = &w * &u - ku;
            prop_assert!(val <= lt);
            grid_max = Some(grid_max.map_or(val.clone(), |g: Rational| g.max(val)));
        }
        let slope_bound = k
            .breakpoints
            .windows(2)
            .map(|b| ((&b[1].1 - &b[0].1) / (&b[1].0 - &b[0].0)).abs())
            .max()
            .unwrap_or_else(|| qi(0));
        prop_assert!(lt - grid_max.unwrap() <= (w.abs() + slope_bound) * (&hi - &lo) / qi(steps));
    }

    #[test]
    fn polygon_and_legendre_agree(p in shear_phase(), pts in prop::collection::vec(exponent_pair(), 32)) {
        let Some(a) = analyzed(&p) else { return Ok(()) };
        let hps = condition_halfplanes(&a);
        let poly = admissible_polygon(&a).unwrap();
        prop_assert_eq!(&poly.vertices, &brute_force_polygon(&hps));
        if a.augmented.is_none() { return Ok(()) }
        for pt in pts {
            let halfplanes = hps.iter().filter(|h| !h.is_axis()).all(|h| h.holds(&pt));
            prop_assert_eq!(legendre_condition(&a, &pt).unwrap(), halfplanes, "{}", pt);
        }
    }
}
