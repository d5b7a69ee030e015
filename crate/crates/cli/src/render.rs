//! JSON and CSV renderings of the exact results.

use serde::Serialize;

use restrikt_core::analysis::Analysis;
use restrikt_core::classify::{classify, critical_exponent};
use restrikt_core::conditions::{
    admissible_polygon, AdmissiblePolygon, ExponentPair, HalfPlaneLabel,
};
use restrikt_core::rational::{fmt_q, to_f64};
use restrikt_core::{LatticePoint, Rational};

use crate::{CliError, Format};

pub(crate) fn json<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports are serializable") + "\n"
}

/// 17 significant digits.
pub(crate) fn float(x: f64) -> String {
    format!("{x:.16e}")
}

pub(crate) fn csv<I, R>(header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn exact_pair(x: &Rational, y: &Rational) -> [String; 4] {
    [float(to_f64(x)), float(to_f64(y)), fmt_q(x), fmt_q(y)]
}

pub(crate) fn analysis(a: &Analysis, format: Format) -> String {
    let report = a.report();
    match format {
        Format::Json => json(&report),
        Format::Csv => {
            let h = &a.heights;
            let class = classify(a);
            let crit = class.as_ref().ok().and_then(critical_exponent);
            let mut rows: Vec<[String; 2]> = vec![
                ["input".into(), report.input.clone()],
                ["adapted".into(), a.adapted().to_string()],
                ["swapped".into(), a.swapped.to_string()],
                ["psi".into(), a.psi().to_string()],
                ["phi_a".into(), report.phi_a.clone()],
                ["d".into(), fmt_q(&h.d)],
                ["h_lin".into(), fmt_q(&h.h_lin)],
                ["h".into(), fmt_q(&h.h)],
                ["nu".into(), h.nu.to_string()],
                ["m".into(), h.m.to_string()],
                [
                    "class".into(),
                    class.map(|c| c.name()).unwrap_or_else(|e| e.to_string()),
                ],
            ];
            if let Some(q) = crit {
                rows.push(["critical_x".into(), fmt_q(&q.x)]);
                rows.push(["critical_y".into(), fmt_q(&q.y)]);
            }
            csv(&["field", "value"], rows)
        }
    }
}

/// `O`, `P`, `P{l}` for the corner on the line of edge `l`, and `Ptilde`.
pub fn vertex_labels(poly: &AdmissiblePolygon) -> Vec<String> {
    let zero = Rational::from_integer(0.into());
    let p = ExponentPair::new(Rational::new(1.into(), 2.into()), zero.clone());
    let o = ExponentPair::new(zero.clone(), zero);
    let ptilde = poly.ptilde().clone();
    poly.vertices
        .iter()
        .map(|v| {
            if *v == o {
                "O".to_string()
            } else if *v == p {
                "P".to_string()
            } else if *v == ptilde {
                "Ptilde".to_string()
            } else {
                poly.halfplanes
                    .iter()
                    .filter(|h| h.is_tight(v))
                    .filter_map(|h| match h.label {
                        HalfPlaneLabel::EdgeLine { l } => Some(l),
                        _ => None,
                    })
                    .max()
                    .map_or_else(|| "corner".to_string(), |l| format!("P{l}"))
            }
        })
        .collect()
}

pub(crate) fn polygon(a: &Analysis, format: Format) -> Result<String, CliError> {
    let poly = admissible_polygon(a).map_err(|e| CliError::new("PolygonError", e))?;
    let labels = vertex_labels(&poly);
    Ok(match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                labels: &'a [String],
                #[serde(flatten)]
                polygon: &'a AdmissiblePolygon,
            }
            json(&Out {
                labels: &labels,
                polygon: &poly,
            })
        }
        Format::Csv => csv(
            &["label", "x", "y", "x_exact", "y_exact"],
            labels.iter().zip(&poly.vertices).map(|(l, v)| {
                let [x, y, xe, ye] = exact_pair(&v.x, &v.y);
                [l.clone(), x, y, xe, ye]
            }),
        ),
    })
}

pub(crate) fn kfunction(a: &Analysis, format: Format) -> Result<String, CliError> {
    let aug = a.augmented.as_ref().ok_or_else(|| {
        CliError::new(
            "AdaptedInput",
            "K is only defined for phases that are not adapted",
        )
    })?;
    let k = aug.k_function();
    Ok(match format {
        Format::Json => json(&k),
        Format::Csv => csv(
            &["u", "k", "u_exact", "k_exact"],
            k.breakpoints.iter().map(|(u, v)| exact_pair(u, v)),
        ),
    })
}

pub(crate) fn polyhedron(a: &Analysis, format: Format) -> String {
    let report = a.report();
    match format {
        Format::Json => json(&report.polyhedra),
        Format::Csv => {
            let mut rows = Vec::new();
            let mut push = |name: &str, vs: &[LatticePoint]| {
                for v in vs {
                    rows.push([name.to_string(), v.t1.to_string(), v.t2.to_string()]);
                }
            };
            push("phi", a.polyhedron.vertices());
            push("phi_a", a.polyhedron_a.vertices());
            if let Some(aug) = &a.augmented {
                push("augmented", aug.vertices());
            }
            csv(&["polyhedron", "t1", "t2"], rows)
        }
    }
}
