//! `validate`, `analyze`, `dual` and `subcheck` on structure-constant inputs.

use serde_json::{json, Value};

use super::report::{combination, labelled, lit, matrix, vector, vectors, Check, Report};
use super::{Input, Settings};
use crate::definition::{Body, DefError, DefinitionFile, Structure, StructureDef, FORMAT_VERSION};
use crate::duality::{self, DualError};
use crate::finalg::linalg::unit_vec;
use crate::finalg::{Definiteness, GramCertificate, Matrix};
use crate::fixtures;
use crate::haar::{self, HaarError, ModularData};
use crate::mhopf::{attach_coproduct, HasCoproduct, QGData};
use crate::scalars::Scalar;

const TMAP_NAMES: [&str; 4] = ["T_{Δ2}", "T_{1Δ}", "T_{Δ1}", "T_{2Δ}"];

fn new_report(command: &str, input: &Input, s: &Settings) -> Report {
    Report::new(command, &input.name, &input.bytes, &s.points, None)
}

struct Loaded {
    structure: Structure,
    qg: QGData,
}

/// Algebra, coproduct, T-maps, solved ε and S, the Hopf laws, provided tables
/// and star compatibility. Stops at the first failure that blocks the rest.
fn prelude(input: &Input, report: &mut Report) -> Option<Loaded> {
    let Body::StructureConstants(def) = &input.def.body else { unreachable!("checked by the caller") };
    let structure = match def.to_structure() {
        Ok(s) => s,
        Err(DefError::Algebra(e)) => {
            report.push(Check::fail("algebra", e.to_string()));
            return None;
        }
        Err(e) => {
            report.push(Check::fail("definition", e.to_string()));
            return None;
        }
    };
    let alg = &structure.algebra;
    let star = if alg.has_star() { ", with involution" } else { "" };
    report.push(Check::pass("algebra", format!("associative unital algebra of dimension {}{star}", alg.dim())));

    let coalg = match attach_coproduct(alg.clone(), structure.coproduct.clone()) {
        Ok(c) => c,
        Err(e) => {
            report.push(Check::fail("coproduct", e.to_string()));
            return None;
        }
    };
    report.push(Check::pass("coproduct", "unital algebra morphism, coassociative"));

    let t = coalg.check_tmaps();
    let ranks = json!(TMAP_NAMES.iter().zip(t.ranks).map(|(n, r)| json!({"map": n, "rank": r})).collect::<Vec<_>>());
    if t.all_bijective() {
        report.push(
            Check::pass("t-maps", format!("all four bijective (rank {} of {})", t.full, t.full)).with_data(ranks),
        );
    } else {
        let bad: Vec<String> = TMAP_NAMES
            .iter()
            .zip(t.ranks)
            .filter(|(_, r)| *r < t.full)
            .map(|(n, r)| format!("{n} rank {r} of {}", t.full))
            .collect();
        report.push(Check::fail("t-maps", format!("not bijective: {}", bad.join(", "))).with_data(ranks));
        return None;
    }

    let labels = alg.labels().to_vec();
    let counit = match coalg.solve_counit() {
        Ok(c) => c,
        Err(e) => {
            report.push(Check::fail("counit", e.to_string()));
            return None;
        }
    };
    report.push(
        Check::pass("counit", "unique solution of the counit laws").with_data(labelled(counit.values(), &labels)),
    );
    let antipode = match coalg.solve_antipode(&counit) {
        Ok(s) => s,
        Err(e) => {
            report.push(Check::fail("antipode", e.to_string()));
            return None;
        }
    };
    report.push(Check::pass("antipode", "unique solution of the antipode laws").with_data(matrix(&antipode)));

    let (algebra, coproduct) = coalg.into_parts();
    let qg = match QGData::from_parts(algebra, coproduct, counit, antipode) {
        Ok(q) => q,
        Err(e) => {
            report.push(Check::fail("hopf-laws", e.to_string()));
            return None;
        }
    };
    report.push(Check::pass("hopf-laws", "ε is a character and S an anti-homomorphism"));

    if structure.counit.is_some() || structure.antipode.is_some() {
        let r = qg.check_provided(structure.counit.as_ref(), structure.antipode.as_ref());
        report.push(Check::from_result("provided-tables", &r, "declared ε and S agree with the solved ones"));
    }
    if qg.algebra().has_star() {
        let r = qg.check_star_compat();
        let msg = if r.passes() { "Δ, ε and S respect the involution".to_string() } else { r.failures.join("; ") };
        report.push(Check::verdict("star-compatibility", r.passes(), msg));
    } else {
        report.push(Check::info("star-compatibility", "no involution declared"));
    }
    Some(Loaded { structure, qg })
}

pub fn validate(input: &Input, s: &Settings) -> Report {
    let mut report = new_report("validate", input, s);
    let Some(l) = prelude(input, &mut report) else { return report };
    let q = &l.qg;
    for (name, p) in &l.structure.projections {
        let g = q.check_grouplike_projection(p);
        let msg =
            format!("self-adjoint {}, idempotent {}, Δ(p)(1⊗p) = p⊗p {}", g.self_adjoint, g.idempotent, g.coproduct);
        report.push(Check::verdict(&format!("grouplike-projection {name}"), g.passes(), msg));
    }
    let s2 = q.antipode_squared();
    let order = (1..=8u32).find(|k| s2.pow(*k) == Matrix::identity(q.dim()));
    let msg = match order {
        Some(1) => "S² = ι".to_string(),
        Some(k) => format!("S² ≠ ι, S^{} = ι", 2 * k),
        None => "S² has no small finite order".to_string(),
    };
    report.push(Check::info("antipode-order", msg));
    let traits = format!("commutative {}, cocommutative {}", q.algebra().is_commutative(), q.is_cocommutative());
    report.push(Check::info("shape", traits));
    report
}

/// The modular data, with the failure recorded when it cannot be computed.
fn modular(q: &QGData, report: &mut Report) -> Option<ModularData> {
    let labels = q.algebra().labels().to_vec();
    match haar::solve_left_haar(q) {
        Ok(h) => report.push(
            Check::verdict(
                "haar",
                h.dimension == 1,
                format!("left invariant functionals form a space of dimension {}", h.dimension),
            )
            .with_data(labelled(h.phi.values(), &labels)),
        ),
        Err(HaarError::NotUnique(d)) => {
            report.push(Check::fail("haar", format!("left invariant functionals form a space of dimension {d}")));
            return None;
        }
        Err(e) => {
            report.push(Check::fail("haar", e.to_string()));
            return None;
        }
    }
    match ModularData::compute(q) {
        Ok(md) => Some(md),
        Err(e) => {
            report.push(Check::fail("modular-data", e.to_string()));
            None
        }
    }
}

/// `μ` straight from `φ(S²(e_i)) = μ φ(e_i)` on the basis.
fn mu_oracle(q: &QGData, md: &ModularData) -> Option<Scalar> {
    let n = q.dim();
    let pairs: Vec<(Scalar, Scalar)> =
        (0..n).map(|i| (md.phi.eval(&md.s2.apply(&unit_vec(n, i))), md.phi.values()[i].clone())).collect();
    let (num, den) = pairs.iter().find(|(_, d)| !d.is_zero())?;
    let mu = num / den;
    pairs.iter().all(|(a, b)| a == &(&mu * b)).then_some(mu)
}

fn gram_data(c: &GramCertificate) -> Value {
    json!({
        "verdict": c.verdict,
        "scope": c.scope,
        "hermitian": c.hermitian,
        "gram": matrix(&c.gram),
        "witness": c.witness.as_ref().map(|w| vector(w)),
        "witness_value": c.witness_value.as_ref().map(lit),
        "point": c.point.as_ref().map(|p| p.to_string()),
    })
}

fn verdict_text(v: Definiteness) -> &'static str {
    match v {
        Definiteness::PositiveDefinite => "positive-definite",
        Definiteness::PositiveSemidefinite => "positive-semidefinite, not definite",
        Definiteness::Indefinite => "indefinite",
    }
}

pub fn analyze(input: &Input, s: &Settings) -> Report {
    let mut report = new_report("analyze", input, s);
    let Some(l) = prelude(input, &mut report) else { return report };
    let q = &l.qg;
    let Some(md) = modular(q, &mut report) else { return report };
    let labels = q.algebra().labels().to_vec();
    let n = q.dim();
    let id = Matrix::identity(n);
    let one = q.one();

    report.push(Check::info("phi", "left Haar functional, φ(e_i)").with_data(labelled(md.phi.values(), &labels)));
    report.push(Check::info("psi", "right Haar functional ψ = φ∘S").with_data(labelled(md.psi.values(), &labels)));
    let sigma_msg = if md.sigma == id { "σ = ι" } else { "σ ≠ ι" };
    report.push(Check::info("sigma", sigma_msg).with_data(matrix(&md.sigma)));
    let sigma_p_msg = if md.sigma_prime == id { "σ′ = ι" } else { "σ′ ≠ ι" };
    report.push(Check::info("sigma-prime", sigma_p_msg).with_data(matrix(&md.sigma_prime)));
    let delta_msg =
        if md.delta == one { "δ = 1".to_string() } else { format!("δ = {}", combination(&md.delta, &labels)) };
    report.push(Check::info("delta", delta_msg).with_data(vector(&md.delta)));
    match &md.delta_half {
        Ok(v) => report
            .push(Check::info("delta-half", format!("δ^(1/2) = {}", combination(v, &labels))).with_data(vector(v))),
        Err(why) => report.push(Check::info("delta-half", format!("no positive square root: {why}"))),
    }
    report.push(Check::info("mu", format!("μ = {}", md.mu)).with_data(lit(&md.mu)));
    match mu_oracle(q, &md) {
        Some(m) if m == md.mu => {
            report.push(Check::pass("mu-oracle", format!("direct evaluation of φ∘S² gives μ = {m}")))
        }
        Some(m) => report.push(Check::inconsistent(
            "mu-oracle",
            format!("direct evaluation gives μ = {m}, pipeline gave {}", md.mu),
        )),
        None => report.push(Check::inconsistent("mu-oracle", "φ∘S² is not proportional to φ on the basis")),
    }
    let sc = haar::check_sigma_coproduct(q, &md);
    let sc_msg = match sc {
        Ok(()) => "Δ∘σ = (S²⊗σ)∘Δ".to_string(),
        Err(i) => format!("Δ∘σ ≠ (S²⊗σ)∘Δ at {}", labels[i]),
    };
    report.push(Check::verdict("sigma-coproduct", sc.is_ok(), sc_msg));
    report.push(Check::info("kappa", "κ = σ⁻¹S²").with_data(matrix(&md.kappa)));
    report.push(Check::info("rho", "ρ = σ′S²").with_data(matrix(&md.rho)));

    let mut positive = false;
    if q.algebra().has_star() {
        match haar::phi_gram(q, &md, &s.points) {
            Ok(c) => {
                positive = c.is_positive_definite();
                let msg = format!("φ-Gram form is {}", verdict_text(c.verdict));
                let mut chk = Check::verdict("phi-gram", positive, msg).with_data(gram_data(&c));
                if !s.star_assert {
                    chk = chk.advisory();
                }
                report.push(chk);
            }
            Err(e) => report.push(Check::fail("phi-gram", e.to_string())),
        }
        match haar::psi_positivity(q, &md, &s.points) {
            Ok(c) => {
                report.push(Check::pass("psi-identity", "ψ(e_i*e_j) = φ(e_i*e_jδ) for all i, j"));
                let pd = c.gram.is_positive_definite();
                let mut chk =
                    Check::verdict("psi-gram", pd, format!("ψ-Gram form is {}", verdict_text(c.gram.verdict)))
                        .with_data(gram_data(&c.gram));
                if !s.star_assert {
                    chk = chk.advisory();
                }
                report.push(chk);
            }
            Err(e @ HaarError::PsiIdentity(..)) => report.push(Check::fail("psi-identity", e.to_string())),
            Err(e) => report.push(Check::fail("psi-gram", e.to_string())),
        }
        if positive {
            report.push(Check::verdict(
                "mu-theorem",
                md.mu.is_one(),
                format!("positive φ forces μ = 1; computed μ = {}", md.mu),
            ));
        } else {
            report.push(Check::info(
                "mu-theorem",
                format!("not applicable without a positive φ; computed μ = {}", md.mu),
            ));
        }
    } else {
        report.push(Check::info("positivity", "no involution: Gram checks skipped"));
    }

    let table = haar::simultaneous_eigenbasis(q, &md, &s.points);
    let mut obstruction = true;
    match &table {
        Ok(t) => {
            obstruction = !t.all_positive();
            let blocks: Vec<Value> = t
                .blocks
                .iter()
                .map(|b| json!({"values": vector(&b.values), "dimension": b.basis.len(), "basis": vectors(&b.basis)}))
                .collect();
            let msg = format!(
                "common eigenbasis of σ, σ′, S², L_δ, R_δ in {} block{}; eigenvalues {}",
                t.blocks.len(),
                if t.blocks.len() == 1 { "" } else { "s" },
                if t.all_positive() { "all positive" } else { "not all positive" }
            );
            let chk = Check::verdict("eigentable", t.all_positive(), msg)
                .with_data(json!({"maps": ["σ", "σ′", "S²", "L_δ", "R_δ"], "blocks": blocks}));
            report.push(if positive { chk } else { chk.advisory() });
        }
        Err(e) => {
            let chk = Check::fail("eigentable", format!("no simultaneous eigenbasis: {e}"));
            report.push(if positive { chk } else { chk.advisory() });
        }
    }
    if obstruction {
        let spectra = haar::per_map_spectra(q, &md, &s.points);
        let mut found = Vec::new();
        let mut data = serde_json::Map::new();
        for (name, spaces, bad) in &spectra {
            let entry = match spaces {
                Ok(sp) => json!(sp
                    .iter()
                    .map(|e| json!({"value": lit(&e.value), "multiplicity": e.basis.len()}))
                    .collect::<Vec<_>>()),
                Err(e) => json!(e.to_string()),
            };
            data.insert((*name).to_string(), entry);
            for v in bad {
                found.push(format!("{name} has eigenvalue {v}"));
            }
        }
        let msg = if found.is_empty() {
            "every map is diagonalizable with positive spectrum".into()
        } else {
            found.join("; ")
        };
        report.push(Check::info("positivity-obstruction", msg).with_data(Value::Object(data)));
    }
    report
}

/// Fixtures (by name) isomorphic to `q` through a permutation of basis vectors.
fn isomorphic_fixtures(q: &QGData) -> Vec<String> {
    fixtures::NAMES
        .iter()
        .filter_map(|name| {
            let s = fixtures::structure(name)?;
            if s.algebra.dim() != q.dim() {
                return None;
            }
            let other = attach_coproduct(s.algebra, s.coproduct).ok()?.derive_counit_antipode().ok()?;
            duality::find_permutation_isomorphism(q, &other).map(|_| name.to_string())
        })
        .collect()
}

/// The dual suite; also returns the dual as a definition file.
pub fn dual(input: &Input, s: &Settings) -> (Report, Option<DefinitionFile>) {
    let mut report = new_report("dual", input, s);
    let Some(l) = prelude(input, &mut report) else { return (report, None) };
    let q = &l.qg;
    let Some(md) = modular(q, &mut report) else { return (report, None) };
    let d = match duality::build_dual(q, &md.phi) {
        Ok(d) => d,
        Err(DualError::Transport(what)) => {
            report.push(Check::inconsistent("dual", format!("solved dual {what} differs from the transported one")));
            return (report, None);
        }
        Err(e) => {
            report.push(Check::fail("dual", e.to_string()));
            return (report, None);
        }
    };
    let dq = &d.qg;
    report.push(Check::pass("dual", format!("dual quantum group of dimension {} on the basis φ(·e_i)", dq.dim())));
    let t = dq.check_tmaps();
    report.push(Check::verdict("dual-t-maps", t.all_bijective(), format!("ranks {:?} of {}", t.ranks, t.full)));
    if dq.algebra().has_star() {
        let r = dq.check_star_compat();
        let msg =
            if r.passes() { "Δ̂, ε̂ and Ŝ respect the involution".to_string() } else { r.failures.join("; ") };
        report.push(Check::verdict("dual-star-compatibility", r.passes(), msg));
    }
    match duality::dual_haar_and_biduality(q, &d) {
        Ok(b) => {
            report.push(Check::pass("dual-haar", format!("dual Haar functional unique, μ̂ = {}", b.dual_haar.mu)));
            report.push(
                Check::from_result(
                    "biduality",
                    &b.canonical_iso,
                    "a ↦ ev_{S(a)} is a quantum-group isomorphism onto the bidual",
                )
                .with_data(matrix(&b.canonical)),
            );
            report.push(Check::from_result(
                "evaluation",
                &b.evaluation_anti_iso,
                "a ↦ ev_a is an anti-isomorphism of algebras and coalgebras",
            ));
            let m = duality::dual_modular_check(q, &md, &d, &b.dual_haar);
            let msg = match (m.matches, m.action_failure) {
                (true, None) => "δ̂ = ε∘κ".to_string(),
                (false, _) => "δ̂ ≠ ε∘κ".to_string(),
                (true, Some((i, j))) => format!("δ̂ = ε∘κ but the action check fails at ({i}, {j})"),
            };
            report.push(
                Check::verdict("delta-hat", m.passes(), msg)
                    .with_data(json!({"delta_hat": vector(&m.delta_hat_values), "eps_kappa": vector(&m.eps_kappa)})),
            );
        }
        Err(e) => report.push(Check::fail("dual-haar", e.to_string())),
    }
    let iso = isomorphic_fixtures(dq);
    let msg = if iso.is_empty() {
        "no builtin fixture matches up to basis permutation".into()
    } else {
        format!("isomorphic to {}", iso.join(", "))
    };
    report.push(Check::info("dual-isomorphic", msg));
    let def = DefinitionFile {
        format_version: FORMAT_VERSION,
        name: format!("dual_{}", input.def.name),
        description: format!("dual of {}", input.def.name),
        body: Body::StructureConstants(StructureDef::from_qg(dq)),
    };
    (report, Some(def))
}

pub fn subcheck(input: &Input, s: &Settings) -> Report {
    let mut report = new_report("subcheck", input, s);
    let Some(l) = prelude(input, &mut report) else { return report };
    let q = &l.qg;
    let Some(md) = modular(q, &mut report) else { return report };
    if l.structure.subalgebras.is_empty() {
        report.push(Check::fail("subalgebras", "the definition lists no subalgebra blocks"));
        return report;
    }
    let dual = match duality::build_dual(q, &md.phi) {
        Ok(d) => Some(d),
        Err(e) => {
            report.push(Check::fail("dual", e.to_string()));
            None
        }
    };
    for (name, basis) in &l.structure.subalgebras {
        let sub = match q.check_sub_mha(basis) {
            Ok(r) => r,
            Err(e) => {
                report.push(Check::fail(&format!("{name}: compatibility"), e.to_string()));
                continue;
            }
        };
        report.push(Check::pass(
            &format!("{name}: compatibility"),
            "Δ(a)(1⊗b), Δ(a)(b⊗1), (a⊗1)Δ(b), (1⊗a)Δ(b) lie in A₀⊗A₀",
        ));
        let restricted: Vec<Scalar> = basis.iter().map(|b| md.phi.eval(b)).collect();
        let nonzero = restricted.iter().any(|x| !x.is_zero());
        report.push(
            Check::verdict(&format!("{name}: phi-restriction"), nonzero, if nonzero { "φ|A₀ ≠ 0" } else { "φ|A₀ = 0" })
                .with_data(vector(&restricted)),
        );
        match &sub.induced {
            Some(q0) => {
                let iso = isomorphic_fixtures(q0);
                let like = if iso.is_empty() { String::new() } else { format!(", isomorphic to {}", iso.join(", ")) };
                report.push(Check::pass(
                    &format!("{name}: induced"),
                    format!("induced quantum group of dimension {}{like}", q0.dim()),
                ));
            }
            None => report.push(Check::fail(&format!("{name}: induced"), "A₀ has no unit of its own")),
        }
        if let Some(d) = &dual {
            match duality::dual_imbedding(&md, d, &sub) {
                Ok(r) => {
                    let msg = if r.passes() {
                        "j is injective, multiplicative and compatible with Δ̂ on both sides; φ|A₀ is the Haar functional of A₀".to_string()
                    } else if !r.restriction_is_haar {
                        "φ|A₀ is not the Haar functional of A₀".to_string()
                    } else {
                        r.failures.join("; ")
                    };
                    report.push(
                        Check::verdict(&format!("{name}: dual-imbedding"), r.passes(), msg).with_data(matrix(&r.j)),
                    );
                }
                Err(e) => report.push(Check::fail(&format!("{name}: dual-imbedding"), e.to_string())),
            }
        }
    }
    report
}
