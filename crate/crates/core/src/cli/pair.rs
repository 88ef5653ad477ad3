//! `validate` on presentations and the `pair` suite.

use serde_json::{json, Value};

use super::report::{lit, Check, Report};
use super::{Input, Settings};
use crate::definition::Body;
use crate::presentations::presets::{self, CONFLUENCE_DEGREE, PAIRING_DEGREE};
use crate::presentations::{diagonal_of, DiagonalAction, HopfPresentation, PresentationError, RowSource};
use crate::scalars::Scalar;

/// Confluence and every Hopf law, each as its own check, prefixed by `prefix`.
fn hopf_checks(h: &HopfPresentation, prefix: &str, report: &mut Report) {
    let c = h.run_checks();
    let conf = &c.confluence;
    let name = format!("{prefix}confluence");
    match &conf.failure {
        None => report.push(Check::pass(
            &name,
            format!("{} overlaps and inclusions resolve up to degree {}", conf.overlaps, conf.degree),
        )),
        Some(f) => report.push(
            Check::fail(&name, format!("{} reduces to {} and to {}", f.word, f.left, f.right))
                .with_data(json!({"word": f.word, "left": f.left, "right": f.right})),
        ),
    }
    for (step, r) in &c.steps {
        report.push(Check::from_result(&format!("{prefix}{step}"), r, "holds"));
    }
}

/// `S²` on generators, compared with the expected diagonal action.
fn antipode_squared(
    h: &HopfPresentation,
    expected: Option<&DiagonalAction>,
    prefix: &str,
    s: &Settings,
    report: &mut Report,
) {
    let name = format!("{prefix}antipode-squared");
    let Some(images) = h.antipode_squared() else {
        report.push(Check::info(&name, "no antipode declared"));
        return;
    };
    let images = match images {
        Ok(i) => i,
        Err(e) => {
            report.push(Check::fail(&name, e.to_string()));
            return;
        }
    };
    let a = &h.algebra;
    let shown: Vec<String> =
        images.iter().enumerate().map(|(g, img)| format!("S²({}) = {}", a.generators()[g].name, a.show(img))).collect();
    let data = json!(shown);
    match (diagonal_of(&images), expected) {
        (Some(eig), Some(exp)) => {
            let ok = eig == exp.eigenvalues;
            report.push(Check::verdict(&name, ok, shown.join(", ")).with_data(data));
        }
        (Some(eig), None) => {
            let positive = eig.iter().all(|e| e.is_self_adjoint() && e.is_positive_at(&s.points));
            let msg =
                format!("{}; eigenvalues {}", shown.join(", "), if positive { "positive" } else { "not all positive" });
            report.push(Check::info(&name, msg).with_data(data));
        }
        (None, Some(_)) => {
            report.push(Check::fail(&name, format!("not diagonal on generators: {}", shown.join(", "))).with_data(data))
        }
        (None, None) => {
            report.push(Check::info(&name, format!("not diagonal on generators: {}", shown.join(", "))).with_data(data))
        }
    }
}

pub fn validate(input: &Input, s: &Settings) -> Report {
    let Body::Presentation(def) = &input.def.body else { unreachable!("checked by the caller") };
    let degree = s.degree.unwrap_or(def.degree);
    let mut report = Report::new("validate", &input.name, &input.bytes, &s.points, Some(degree));
    let h = match def.to_hopf(&input.def.name) {
        Ok(h) => h.with_degree(degree),
        Err(e) => {
            report.push(Check::fail("presentation", e.to_string()));
            return report;
        }
    };
    report.push(Check::pass(
        "presentation",
        format!(
            "{} generators, {} rules, decreasing for the weighted order",
            h.algebra.generators().len(),
            h.algebra.rules().len()
        ),
    ));
    report.push(Check::pass("counit", "solved uniquely from the counit laws").with_data(counit_data(&h)));
    hopf_checks(&h, "", &mut report);
    antipode_squared(&h, None, "", s, &mut report);
    report
}

fn counit_data(h: &HopfPresentation) -> Value {
    let a = &h.algebra;
    let map: serde_json::Map<String, Value> =
        (0..a.generators().len()).map(|g| (a.generators()[g].name.clone(), lit(&h.counit_word(&[g])))).collect();
    Value::Object(map)
}

fn failed(report: &mut Report, name: &str, e: PresentationError) {
    report.push(Check::fail(name, e.to_string()));
}

pub fn pair(s: &Settings) -> Report {
    let degree = s.degree.unwrap_or(PAIRING_DEGREE);
    let kappa_degree = degree.max(PAIRING_DEGREE);
    let confluence_degree = degree.max(CONFLUENCE_DEGREE);
    let mut bytes = String::new();
    for def in [presets::uq_su2_def(), presets::suq2_def()] {
        bytes += &def.to_canonical_string().expect("preset serializes");
    }
    for (x, c, v) in presets::pairing_table() {
        bytes += &format!("{x} {c} {v}\n");
    }
    let mut report = Report::new("pair", "pairing-uqsu2-suq2", bytes.as_bytes(), &s.points, Some(degree));

    let (u, b) = (presets::uq_su2(), presets::suq2());
    hopf_checks(&u.with_degree(confluence_degree), "uq-su2: ", &mut report);
    hopf_checks(&b.with_degree(confluence_degree), "suq2: ", &mut report);

    let actions = (presets::rho(&s.points), presets::theta(&s.points), presets::sigma_hat(&s.points));
    let (rho, theta, sigma_hat) = match actions {
        (Ok(r), Ok(t), Ok(h)) => (r, t, h),
        (r, t, h) => {
            let e = [r.err(), t.err(), h.err()].into_iter().flatten().next().expect("one action failed");
            failed(&mut report, "diagonal-actions", e);
            return report;
        }
    };
    antipode_squared(&u, Some(&sigma_hat), "uq-su2: ", s, &mut report);
    antipode_squared(&b, Some(&theta), "suq2: ", s, &mut report);
    for (act, h) in [(&rho, &b), (&theta, &b), (&sigma_hat, &u)] {
        let r = act.check_commutes(&h.algebra);
        let ok =
            format!("{} on {} has positive eigenvalues and commutes with normal forms", act.name, h.algebra.name());
        report.push(Check::from_result(&format!("action {}", act.name), &r, &ok));
    }

    let mut p = presets::pairing(degree);
    let mut mismatches = Vec::new();
    let mut table = Vec::new();
    for (x, c, v) in presets::pairing_table() {
        let expected: Scalar = v.parse().expect("preset literal");
        let got = p.entry(u.algebra.gen_index(x).unwrap(), b.algebra.gen_index(c).unwrap()).clone();
        if got != expected {
            mismatches.push(format!("⟨{x}, {c}⟩ = {got}, expected {expected}"));
        }
        table.push(json!({"left": x, "right": c, "value": lit(&got)}));
    }
    let msg = if mismatches.is_empty() {
        "all eight generator entries reproduced".to_string()
    } else {
        mismatches.join("; ")
    };
    report.push(Check::verdict("pairing-table", mismatches.is_empty(), msg).with_data(json!(table)));

    let rows: Vec<Value> = p
        .table_entries()
        .into_iter()
        .map(|(x, c, v)| {
            let g = u.algebra.gen_index(&x).unwrap();
            let source = match p.row_source(g) {
                RowSource::Given => "given",
                RowSource::Inverse => "inverse",
                RowSource::Star => "star",
            };
            json!({"left": x, "right": c, "value": lit(&v), "source": source})
        })
        .collect();
    report.push(
        Check::info("derived-rows", "rows of K^-1 from invertibility, rows of F from the star").with_data(json!(rows)),
    );

    match p.check_axioms() {
        Ok(c) => report.push(
            Check::pass(
                "pairing-axioms",
                format!("all compatibilities hold on normal words up to degree {}", c.degree),
            )
            .with_data(json!({
                "coproduct_side": c.coproduct_side,
                "product_side": c.product_side,
                "antipode": c.antipode,
                "order_independence": c.order_independence,
            })),
        ),
        Err(e) => failed(&mut report, "pairing-axioms", e),
    }

    let k4 = presets::k_inverse_fourth(&p.left);
    match p.kappa_functional_check(&rho, &k4, kappa_degree) {
        Ok(c) => {
            let nonzero: Vec<Value> = c.nonzero.iter().map(|(w, v)| json!({"word": w, "value": lit(v)})).collect();
            report.push(
                Check::pass(
                    "kappa",
                    format!("(ε∘κ)(c) = ⟨K^-4, c⟩ for all {} normal words up to degree {}", c.words, c.degree),
                )
                .with_data(json!({"nonzero": nonzero})),
            );
        }
        Err(e) => failed(&mut report, "kappa", e),
    }

    let mut ranks = Vec::new();
    for d in 1..=degree.min(3) {
        match p.gram_rank(d) {
            Ok(g) => ranks.push(json!({"degree": d, "rows": g.rows, "cols": g.cols, "rank": g.rank})),
            Err(e) => {
                failed(&mut report, "gram-rank", e);
                return report;
            }
        }
    }
    report.push(Check::info("gram-rank", "rank of ⟨x, c⟩ over normal words of bounded degree").with_data(json!(ranks)));
    report
}
