use restrikt_core::analysis::{analyze, Analysis};
use restrikt_core::augmented::{restriction_height_geometric, HeightTerm};
use restrikt_core::classify::{classify, critical_exponent, expected_invariants, ClassKind};
use restrikt_core::conditions::{
    admissible_polygon, all_knapp_halfplanes, brute_force_polygon, condition_halfplanes,
    is_admissible, ExponentPair, Proven,
};
use restrikt_core::corpus::{a_normal_form, d_normal_form, find, CORPUS};
use restrikt_core::newton::Weight;
use restrikt_core::{q, qi, ExtRational, Rational};

fn corpus(name: &str) -> Analysis {
    analyze(&find(name).unwrap().polynomial()).unwrap()
}

#[test]
fn corpus_heights() {
    let want = [
        ("morse", qi(1), qi(1), qi(1), 0),
        ("quartic", q(4, 3), q(4, 3), q(4, 3), 0),
        ("e1", q(4, 3), q(4, 3), q(10, 7), 0),
        ("e2", q(5, 3), q(5, 3), q(12, 7), 0),
        ("vertex", qi(2), qi(2), qi(2), 1),
        ("a_inf", q(4, 3), q(4, 3), qi(2), 0),
        ("cubic_shear", q(3, 2), q(3, 2), q(8, 5), 0),
        ("linear_shear", qi(1), q(10, 7), q(10, 7), 0),
        ("two_step", qi(1), q(4, 3), q(14, 9), 0),
        ("cusp3", qi(2), qi(2), q(21, 10), 0),
    ];
    for (name, d, h_lin, h, nu) in want {
        let a = corpus(name);
        assert_eq!(
            (&a.heights.d, &a.heights.h_lin, &a.heights.h, a.heights.nu),
            (&d, &h_lin, &h, nu),
            "{name}"
        );
    }
}

#[test]
fn d_type_pipeline() {
    let a = corpus("e2");
    assert_eq!(a.principal.kappa, Weight::new(q(1, 5), q(2, 5)));
    assert_eq!(a.psi().to_string(), "x1^2");
    assert_eq!(a.phi_a().to_string(), "x1 x2^2 + x1^6");
    let aug = a.augmented.as_ref().unwrap();
    assert_eq!(aug.base().weight(aug.la()), &Weight::new(q(1, 6), q(5, 12)));
    let c = classify(&a).unwrap();
    assert_eq!(c.name(), "D7");
    assert_eq!(
        critical_exponent(&c),
        Some(ExponentPair::new(q(1, 12), q(1, 4)))
    );
}

#[test]
fn infinite_classes() {
    assert_eq!(classify(&corpus("a_inf")).unwrap().kind, ClassKind::AInf);
    assert_eq!(classify(&corpus("d_inf")).unwrap().kind, ClassKind::DInf);
    assert_eq!(
        classify(&corpus("cusp3")).unwrap().kind,
        ClassKind::NotApplicable
    );
}

#[test]
fn outside_theorem_for_large_linear_height() {
    let a = corpus("cusp3");
    let r = is_admissible(&a, &ExponentPair::new(qi(0), qi(0)));
    assert_eq!(r.proven, Proven::OutsideTheorem);
}

#[test]
fn normal_form_sweep() {
    for m in 2u32..=4 {
        for perturbed in [false, true] {
            let cases = (2 * m + 1..=2 * m + 7)
                .map(|n| (a_normal_form(m, n, perturbed), ClassKind::A { n }))
                .chain(
                    (2 * m + 2..=2 * m + 8)
                        .map(|n| (d_normal_form(m, n, perturbed), ClassKind::D { n })),
                );
            for (phi, kind) in cases {
                let a = analyze(&phi).unwrap();
                let c = classify(&a).unwrap();
                assert_eq!(c.kind, kind, "{phi}");
                assert_eq!(c.m, Some(m));
                let e = expected_invariants(&c).unwrap();
                let aug = a.augmented.as_ref().unwrap();
                assert_eq!(a.principal.kappa, e.kappa, "{phi}");
                assert_eq!(aug.base().weight(aug.la()), &e.kappa_la, "{phi}");
                assert_eq!(a.heights.d, e.d, "{phi}");
                assert_eq!(a.heights.h, e.h, "{phi}");
                // The critical exponent is the corner P_l0 of the polygon.
                let crit = critical_exponent(&c).unwrap();
                let poly = admissible_polygon(&a).unwrap();
                assert_eq!(poly.vertices[2], crit, "{phi}");
                let tight = poly
                    .halfplanes
                    .iter()
                    .filter(|hp| hp.is_tight(&crit))
                    .count();
                assert!(tight >= 2, "{phi}");
            }
        }
    }
}

#[test]
fn corpus_polygons_match_brute_force() {
    for c in CORPUS {
        let a = analyze(&c.polynomial()).unwrap();
        let poly = admissible_polygon(&a).unwrap();
        let hps = condition_halfplanes(&a);
        assert_eq!(poly.vertices, brute_force_polygon(&hps), "{}", c.name);
        if a.augmented.is_some() {
            // Edges beyond la are redundant.
            let mut all = all_knapp_halfplanes(&a);
            all.extend(hps.iter().filter(|h| h.is_axis()).cloned());
            assert_eq!(poly.vertices, brute_force_polygon(&all), "{}", c.name);
        }
    }
}

#[test]
fn restriction_heights_on_corpus() {
    let rs = [q(1, 3), q(1, 2), qi(1), qi(2), qi(5)];
    for c in CORPUS {
        let a = analyze(&c.polynomial()).unwrap();
        let Some(aug) = &a.augmented else { continue };
        let d = a.principal.d.clone();
        for r in &rs {
            let formula = aug.restriction_height(&d, r).unwrap().value;
            assert_eq!(
                formula,
                restriction_height_geometric(aug, r).unwrap(),
                "{} r={r}",
                c.name
            );
        }
    }
    let e1 = corpus("e1");
    let h = e1
        .augmented
        .as_ref()
        .unwrap()
        .restriction_height(&e1.principal.d, &qi(1))
        .unwrap();
    assert_eq!(h.value, q(4, 3));
    assert_eq!(h.argmax, HeightTerm::Distance);
    assert_eq!(qi(2) * (qi(1) + h.value), q(14, 3));
}

#[test]
fn diagonal_points_lie_on_the_boundary() {
    for c in CORPUS {
        let a = analyze(&c.polynomial()).unwrap();
        let Some(aug) = &a.augmented else { continue };
        for r in [q(1, 2), qi(1), qi(2)] {
            let h = aug.restriction_height(&a.principal.d, &r).unwrap().value;
            let p3: Rational = qi(2) * (qi(1) + h);
            let pt = ExponentPair::new((&r * &p3).recip(), p3.recip());
            let hps = condition_halfplanes(&a);
            assert!(hps.iter().all(|hp| hp.holds(&pt)), "{} r={r}", c.name);
            assert!(hps.iter().any(|hp| hp.is_tight(&pt)), "{} r={r}", c.name);
        }
    }
}

#[test]
fn non_adapted_weights_have_integer_m() {
    for c in CORPUS {
        let a = analyze(&c.polynomial()).unwrap();
        if !a.adapted() {
            assert!(
                matches!(&a.heights.m, ExtRational::Finite(m) if m.is_integer()),
                "{}",
                c.name
            );
        }
        if a.heights.h_lin_below_two() {
            assert_eq!(a.heights.nu, 0);
            assert!(a.heights.h <= qi(2));
        }
    }
}

#[test]
fn report_is_deterministic() {
    let a = corpus("e1");
    let one = serde_json::to_string(&a.report()).unwrap();
    let two = serde_json::to_string(&corpus("e1").report()).unwrap();
    assert_eq!(one, two);
    let v: serde_json::Value = serde_json::from_str(&one).unwrap();
    assert_eq!(v["heights"]["h"], "10/7");
    assert_eq!(v["critical_exponent"], serde_json::json!(["1/6", "1/4"]));
}
