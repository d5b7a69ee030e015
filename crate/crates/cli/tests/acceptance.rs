//! Acceptance run: one `PASS`/`FAIL` line per criterion, non-zero exit if
//! any fails. Tolerances are pinned below.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use restrikt_core::analysis::{analyze, Analysis, AnalysisError};
use restrikt_core::augmented::restriction_height_geometric;
use restrikt_core::classify::{classify, critical_exponent, expected_invariants, ClassKind};
use restrikt_core::conditions::{
    admissible_polygon, brute_force_polygon, condition_halfplanes, knapp_exponent_comparison,
    legendre_condition, ExponentPair,
};
use restrikt_core::corpus::{a_normal_form, d_normal_form, find, CORPUS};
use restrikt_core::newton::{build_newton_polyhedron, Weight};
use restrikt_core::{q, qi, ExtRational, LatticePoint, Polynomial, Rational, UnivariatePolynomial};
use restrikt_lab::airy::airy_collapse_check;
use restrikt_lab::knapp::{knapp_box_check, knapp_weights, DEFAULT_BOUND, DEFAULT_GRID};
use restrikt_lab::vdc::{van_der_corput_check, Amplitude1d};
use restrikt_lab::Verdict;

use restrikt::verify::decay;

const DECAY_TOL: f64 = 0.05;
const DECAY_MIN_R2: f64 = 0.98;
const KNAPP_BOUND: f64 = DEFAULT_BOUND;
const VDC_REL_TOL: f64 = 0.02;
const LEGENDRE_POINTS: usize = 1000;
const RANDOM_PHASES: usize = 200;
const SEED: u64 = 0x5eed;

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn corpus(name: &str) -> Analysis {
    analyze(&find(name).unwrap().polynomial()).unwrap()
}

fn pair(x: Rational, y: Rational) -> ExponentPair {
    ExponentPair::new(x, y)
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    o.detail = format!("{} ({:.2?}, limit {:?})", o.detail, took, limit);
    o.pass &= took < limit;
    o
}

fn ac1() -> Outcome {
    let a = corpus("e1");
    let aug = a.augmented.as_ref().unwrap();
    let c = classify(&a).unwrap();
    let got = [
        a.principal.kappa == Weight::new(q(1, 4), q(1, 2)),
        a.heights.d == q(4, 3),
        a.psi().to_string() == "x1^2",
        a.phi_a().to_string() == "x2^2 + x1^5",
        *aug.base().weight(aug.la()) == Weight::new(q(1, 5), q(1, 2)),
        a.heights.h == q(10, 7),
        a.heights.nu == 0,
        c.name() == "A4",
        critical_exponent(&c) == Some(pair(q(1, 6), q(1, 4))),
    ];
    check(
        got.iter().all(|&b| b),
        format!(
            "E1: {}/9 invariants exact",
            got.iter().filter(|&&b| b).count()
        ),
    )
}

fn ac2() -> Outcome {
    let a = corpus("e2");
    let aug = a.augmented.as_ref().unwrap();
    let c = classify(&a).unwrap();
    let got = [
        a.principal.kappa == Weight::new(q(1, 5), q(2, 5)),
        a.heights.d == q(5, 3),
        a.heights.h == q(12, 7),
        *aug.base().weight(aug.la()) == Weight::new(q(1, 6), q(5, 12)),
        c.name() == "D7",
        critical_exponent(&c) == Some(pair(q(1, 12), q(1, 4))),
    ];
    check(
        got.iter().all(|&b| b),
        format!(
            "E2: {}/6 invariants exact",
            got.iter().filter(|&&b| b).count()
        ),
    )
}

fn ac3() -> Outcome {
    let mut total = 0;
    let mut bad = Vec::new();
    for m in 2u32..=4 {
        let mi = qi(i64::from(m));
        let cases = (2 * m + 1..=2 * m + 7)
            .flat_map(|n| [false, true].map(|pert| (a_normal_form(m, n, pert), n, true)))
            .chain(
                (2 * m + 2..=2 * m + 8)
                    .flat_map(|n| [false, true].map(|pert| (d_normal_form(m, n, pert), n, false))),
            );
        for (phi, n, is_a) in cases {
            total += 1;
            let ni = qi(i64::from(n));
            let (d, h, crit) = if is_a {
                (
                    &qi(2) * &mi / (&mi + qi(1)),
                    &qi(2) * &ni / (&ni + qi(2)),
                    pair((&qi(2) * &mi + qi(2)).recip(), q(1, 4)),
                )
            } else {
                (
                    (&qi(2) * &mi + qi(1)) / (&mi + qi(1)),
                    &qi(2) * &ni / (&ni + qi(1)),
                    pair((&qi(4) * &mi + qi(4)).recip(), q(1, 4)),
                )
            };
            let ok = analyze(&phi).ok().is_some_and(|a| {
                let c = classify(&a);
                let kind_ok = c.as_ref().is_ok_and(|c| {
                    if is_a {
                        c.kind == ClassKind::A { n }
                    } else {
                        c.kind == ClassKind::D { n }
                    }
                });
                let inv_ok = c
                    .as_ref()
                    .ok()
                    .and_then(expected_invariants)
                    .is_some_and(|e| e.d == d && e.h == h);
                kind_ok
                    && inv_ok
                    && a.heights.d == d
                    && a.heights.h == h
                    && c.as_ref().ok().and_then(critical_exponent) == Some(crit.clone())
            });
            if !ok {
                bad.push(phi.to_string());
            }
        }
    }
    check(
        bad.is_empty(),
        format!("{} normal forms, {} mismatches {:?}", total, bad.len(), bad),
    )
}

fn random_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    let den = rng.random_range(1..=1000);
    q(rng.random_range(lo * den..=hi * den), den)
}

fn ac4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut phases: Vec<(String, Polynomial)> = CORPUS
        .iter()
        .map(|c| (c.name.to_string(), c.polynomial()))
        .collect();
    for m in 2..=4 {
        phases.push((format!("A m={m}"), a_normal_form(m, 2 * m + 3, true)));
        phases.push((format!("D m={m}"), d_normal_form(m, 2 * m + 4, true)));
    }
    let (mut polygons, mut points, mut mismatches) = (0, 0, Vec::new());
    for (name, p) in &phases {
        let a = analyze(p).unwrap();
        let poly = admissible_polygon(&a).unwrap();
        let hps = condition_halfplanes(&a);
        polygons += 1;
        if poly.vertices != brute_force_polygon(&hps) {
            mismatches.push(format!("{name}: polygon"));
        }
        if a.augmented.is_none() {
            continue;
        }
        // Random points in [0, 1/2]^2 together with the polygon's vertices.
        let sample = (0..LEGENDRE_POINTS)
            .map(|_| {
                let x = random_rational(&mut rng, 0, 1) / qi(2);
                let y = random_rational(&mut rng, 0, 1) / qi(2);
                pair(x, y)
            })
            .chain(poly.vertices.iter().cloned());
        for pt in sample {
            points += 1;
            let conj = hps.iter().filter(|h| !h.is_axis()).all(|h| h.holds(&pt));
            if legendre_condition(&a, &pt).unwrap() != conj {
                mismatches.push(format!("{name}: {pt}"));
            }
        }
    }
    check(
        mismatches.is_empty(),
        format!(
            "{polygons} polygons, {points} points, {} mismatches {:?}",
            mismatches.len(),
            mismatches
        ),
    )
}

fn ac5() -> Outcome {
    let rs = [q(1, 3), q(1, 2), qi(1), qi(2), qi(5)];
    let mut compared = 0;
    let mut bad = Vec::new();
    for c in CORPUS {
        let a = analyze(&c.polynomial()).unwrap();
        let Some(aug) = &a.augmented else { continue };
        for r in &rs {
            compared += 1;
            let formula = aug.restriction_height(&a.principal.d, r).map(|h| h.value);
            if formula.ok() != restriction_height_geometric(aug, r).ok() {
                bad.push(format!("{} r={r}", c.name));
            }
        }
    }
    let e1 = corpus("e1");
    let h = e1
        .augmented
        .as_ref()
        .unwrap()
        .restriction_height(&e1.principal.d, &qi(1))
        .unwrap()
        .value;
    let threshold = qi(2) * (qi(1) + &h);
    let poly = admissible_polygon(&e1).unwrap();
    let diag = poly.known_regions.im.as_ref().map(|r| r[2].clone());
    let e1_ok = h == q(4, 3)
        && threshold == q(14, 3)
        && diag == Some(pair(threshold.recip(), threshold.recip()))
        && poly
            .halfplanes
            .iter()
            .any(|hp| hp.is_tight(diag.as_ref().unwrap()));
    check(
        bad.is_empty() && e1_ok,
        format!(
            "{compared} (phase, r) pairs, {} mismatches; E1 h_res = {h}, 2(1+h_res) = {threshold}",
            bad.len()
        ),
    )
}

fn ac6() -> Outcome {
    let ks: Vec<i32> = (10..=20).collect();
    let mut lines = Vec::new();
    let mut pass = true;
    for (name, nu) in [
        ("morse", 0),
        ("quartic", 0),
        ("e1", 0),
        ("e2", 0),
        ("vertex", 1),
    ] {
        let a = corpus(name);
        let r = decay(&a, &ks, DECAY_TOL);
        let fit = r.fit.as_ref();
        let slope = fit.map_or(f64::NAN, |f| f.log_corrected_slope);
        let r2 = fit.map_or(f64::NAN, |f| f.r2);
        let ok = r.verdict == Verdict::Pass && r.nu == nu && r2 >= DECAY_MIN_R2;
        pass &= ok;
        lines.push(format!(
            "{name} {slope:.4} vs {:.4} r2 {r2:.4}",
            r.expected_slope
        ));
    }
    check(pass, lines.join("; "))
}

fn ac7() -> Outcome {
    let eps: Vec<i32> = (-20..=-1).collect();
    let mut worst = 0f64;
    let mut weights = 0;
    let mut bad = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    for c in CORPUS {
        let a = analyze(&c.polynomial()).unwrap();
        let Some(aug) = &a.augmented else { continue };
        let poly = admissible_polygon(&a).unwrap();
        let vs = &poly.vertices;
        for w in knapp_weights(&a) {
            weights += 1;
            match knapp_box_check(&a, &w, &eps, DEFAULT_GRID, None) {
                Ok(r) => {
                    worst = worst.max(r.max_ratio);
                    if r.max_ratio > KNAPP_BOUND {
                        bad.push(format!("{} {w}: sup ratio {:.3}", c.name, r.max_ratio));
                    }
                }
                Err(e) => bad.push(format!("{} {w}: {e}", c.name)),
            }
            let (k1, k2) = w.finite().unwrap();
            let cmp = |pt: &ExponentPair| knapp_exponent_comparison(aug.m(), k1, k2, pt);
            // Vertices of the polygon satisfy the inequality; equality holds
            // along an edge of the polygon exactly when both ends are tight.
            let orders: Vec<Ordering> = vs.iter().map(cmp).collect();
            if orders.contains(&Ordering::Greater) {
                bad.push(format!("{} {w}: violated at a vertex", c.name));
            }
            for i in 0..vs.len() {
                let (p, q2) = (&vs[i], &vs[(i + 1) % vs.len()]);
                let t = random_rational(&mut rng, 0, 1);
                let mid = pair(&p.x + &t * (&q2.x - &p.x), &p.y + &t * (&q2.y - &p.y));
                let both =
                    orders[i] == Ordering::Equal && orders[(i + 1) % vs.len()] == Ordering::Equal;
                let strictly_inside = t > qi(0) && t < qi(1);
                if strictly_inside && (cmp(&mid) == Ordering::Equal) != both {
                    bad.push(format!("{} {w}: edge {i}", c.name));
                }
            }
            // A strict convex combination of all vertices is interior.
            let n = qi(vs.len() as i64);
            let centroid = pair(
                vs.iter().map(|v| v.x.clone()).sum::<Rational>() / &n,
                vs.iter().map(|v| v.y.clone()).sum::<Rational>() / &n,
            );
            if cmp(&centroid) != Ordering::Less {
                bad.push(format!("{} {w}: interior not strict", c.name));
            }
        }
    }
    check(
        bad.is_empty(),
        format!("{weights} weights, max sup|phi|/eps = {worst:.4} (bound {KNAPP_BOUND}), {} failures {:?}", bad.len(), bad),
    )
}

fn ac8() -> Outcome {
    let f = UnivariatePolynomial::new(vec![0.0, 0.0, 1.0]);
    let lambdas: Vec<f64> = (10..=20).map(|k| 2f64.powi(k)).collect();
    let r = van_der_corput_check(&f, 2, Amplitude1d::One, (0.0, 1.0), &lambdas).unwrap();
    let target = std::f64::consts::PI.sqrt() / 2.0;
    let rel = (r.statistic - target).abs() / target;
    let b = UnivariatePolynomial::new(vec![1.0, 1.0]);
    let airy_lambdas: Vec<f64> = (6..=18).map(|k| 2f64.powi(k)).collect();
    let airy = airy_collapse_check(&b, 0.25, &airy_lambdas, &[0.0, 1.0]).unwrap();
    let tails: Vec<String> = airy
        .rows
        .iter()
        .map(|row| {
            let t = &row.spreads[row.spreads.len() - 3..];
            format!("v={} [{:.2e} {:.2e} {:.2e}]", row.v, t[0], t[1], t[2])
        })
        .collect();
    check(
        rel < VDC_REL_TOL && airy.verdict == Verdict::Pass,
        format!(
            "vdC statistic {:.5} vs {target:.5} ({:.3}%); Airy spreads {}",
            r.statistic,
            100.0 * rel,
            tails.join(", ")
        ),
    )
}

fn random_phase(rng: &mut ChaCha8Rng) -> Polynomial {
    loop {
        let terms = rng.random_range(1..=6);
        let p = Polynomial::from_terms((0..terms).map(|_| {
            let deg = rng.random_range(2..=12u32);
            let t1 = rng.random_range(0..=deg);
            let c = loop {
                let c = q(rng.random_range(-6..=6), rng.random_range(1..=4));
                if c != qi(0) {
                    break c;
                }
            };
            (LatticePoint::new(t1, deg - t1), c)
        }));
        if !p.is_zero() {
            return p;
        }
    }
}

/// `(x2 − ψ(x1))^j + x1^n` plus terms above its polyhedron, possibly with
/// the variables exchanged; these are mostly not adapted.
fn random_sheared_phase(rng: &mut ChaCha8Rng) -> Polynomial {
    let j = rng.random_range(2..=3u32);
    let psi: Vec<(LatticePoint, Rational)> = (1..=3)
        .map(|k| (LatticePoint::new(k, 0), qi(rng.random_range(-2..=2))))
        .collect();
    let y = Polynomial::x2().sub(&Polynomial::from_terms(psi));
    let mut p = y
        .pow(j)
        .add(&Polynomial::monomial(qi(1), rng.random_range(5..=12), 0));
    for _ in 0..rng.random_range(0..=2) {
        p.add_term(
            LatticePoint::new(rng.random_range(6..=9), rng.random_range(j..=j + 1)),
            qi(rng.random_range(-3..=3)),
        );
    }
    let p = if p.is_zero() {
        random_sheared_phase(rng)
    } else {
        p
    };
    if rng.random_bool(0.5) {
        p.swap_variables()
    } else {
        p
    }
}

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
                    let (ax, ay, bx, by) = (a.t1 as i64, a.t2 as i64, b.t1 as i64, b.t2 as i64);
                    let (px, py) = (p.t1 as i64, p.t2 as i64);
                    (py - ay) * (bx - ax) < (by - ay) * (px - ax)
                })
            })
        })
        .collect();
    out.sort_by_key(|p| p.t1);
    out
}

fn ac9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut analyzed, mut non_adapted, mut hulls) = (0, 0, 0);
    let mut bad = Vec::new();
    let mut unsupported = Vec::new();
    let mut phases: Vec<Polynomial> = (0..RANDOM_PHASES).map(|_| random_phase(&mut rng)).collect();
    phases.extend((0..RANDOM_PHASES).map(|_| random_sheared_phase(&mut rng)));
    for p in phases {
        hulls += 1;
        let support = p.support();
        if build_newton_polyhedron(&support)
            .map(|np| np.vertices().to_vec())
            .ok()
            != Some(brute_force_vertices(&support))
        {
            bad.push(format!("hull {p}"));
        }
        let a = match analyze(&p) {
            Ok(a) => a,
            Err(e @ AnalysisError::Adapted(_)) if e.kind() == "IrrationalRootEncountered" => {
                unsupported.push(p.to_string());
                continue;
            }
            Err(e) => {
                bad.push(format!("{p}: {e}"));
                continue;
            }
        };
        analyzed += 1;
        hulls += 1;
        let support = a.phi_a().support();
        if a.polyhedron_a.vertices() != brute_force_vertices(&support).as_slice() {
            bad.push(format!("hull of phi_a {p}"));
        }
        let h = &a.heights;
        if !(h.d <= h.h_lin && h.h_lin <= h.h) {
            bad.push(format!("heights {p}"));
        }
        if !a.adapted() {
            non_adapted += 1;
            if !matches!(&h.m, ExtRational::Finite(m) if m.is_integer()) {
                bad.push(format!("m {p}"));
            }
        }
        if h.h_lin_below_two() && h.nu != 0 {
            bad.push(format!("nu {p}"));
        }
    }
    check(
        bad.is_empty(),
        format!(
            "{RANDOM_PHASES} sparse + {RANDOM_PHASES} sheared phases (seed {SEED:#x}): {analyzed} analyzed, {non_adapted} not adapted, {hulls} hulls, {} with irrational roots {:?}, {} failures {:?}",
            unsupported.len(),
            unsupported,
            bad.len(),
            bad
        ),
    )
}

fn main() {
    type Criterion = (&'static str, Box<dyn FnOnce() -> Outcome>);
    let criteria: [Criterion; 9] = [
        (
            "AC1 A-type pipeline",
            Box::new(|| timed(Duration::from_secs(1), ac1)),
        ),
        (
            "AC2 D-type pipeline",
            Box::new(|| timed(Duration::from_secs(1), ac2)),
        ),
        (
            "AC3 normal-form sweep",
            Box::new(|| timed(Duration::from_secs(10), ac3)),
        ),
        ("AC4 polygon equivalence", Box::new(ac4)),
        ("AC5 restriction heights", Box::new(ac5)),
        (
            "AC6 decay law",
            Box::new(|| timed(Duration::from_secs(300), ac6)),
        ),
        ("AC7 Knapp boxes", Box::new(ac7)),
        ("AC8 van der Corput / Airy", Box::new(ac8)),
        ("AC9 invariant suite", Box::new(ac9)),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let o = run();
        println!(
            "{} {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
