//! The acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
//!
//! Equalities are exact (zero tolerance). Runtime bounds are wall-clock limits
//! per unit of work, measured in-process.

use std::time::{Duration, Instant};

use hopf_forge::cli::run;
use hopf_forge::duality::find_permutation_isomorphism;
use hopf_forge::finalg::{Definiteness, Matrix};
use hopf_forge::fixtures;
use hopf_forge::haar::{self, ModularData};
use hopf_forge::mhopf::{attach_coproduct, HasCoproduct, QGData};
use hopf_forge::presentations::{diagonal_of, presets};
use hopf_forge::scalars::{Scalar, SpecPoints};
use serde_json::Value;

const VALIDATE_LIMIT: Duration = Duration::from_secs(2);
const DUAL_LIMIT: Duration = Duration::from_secs(5);
const PAIR_LIMIT: Duration = Duration::from_secs(30);
const CONFLUENCE_LIMIT: Duration = Duration::from_secs(30);

const HOPF: [&str; 5] = ["c_z2", "c_z4", "c_s3", "group_s3", "sweedler_h4"];
const POSITIVE: [&str; 4] = ["c_z2", "c_z4", "c_s3", "group_s3"];

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn cli(args: &[&str]) -> (i32, Value, Duration) {
    let mut argv = vec!["hopf-forge"];
    argv.extend_from_slice(args);
    argv.extend_from_slice(&["--format", "json"]);
    let start = Instant::now();
    let r = run(argv);
    let took = start.elapsed();
    let v = serde_json::from_str(&r.stdout).unwrap_or_else(|_| panic!("no report for {args:?}: {}", r.stderr));
    (r.code, v, took)
}

fn check<'a>(report: &'a Value, name: &str) -> Result<&'a Value, String> {
    report["checks"]
        .as_array()
        .and_then(|cs| cs.iter().find(|c| c["name"] == name))
        .ok_or_else(|| format!("report has no check `{name}`"))
}

fn passed(report: &Value, name: &str) -> Result<(), String> {
    let c = check(report, name)?;
    ensure(c["status"] == "pass", || format!("`{name}`: {}", c["message"]))
}

fn qg(name: &str) -> QGData {
    let s = fixtures::structure(name).unwrap();
    attach_coproduct(s.algebra, s.coproduct).unwrap().derive_counit_antipode().unwrap()
}

fn sc(text: &str) -> Scalar {
    text.parse().unwrap()
}

fn criterion_01_axiom_suite() -> Outcome {
    let mut slowest = Duration::ZERO;
    for name in POSITIVE {
        let (code, r, took) = cli(&["validate", name]);
        slowest = slowest.max(took);
        ensure(code == 0, || format!("{name}: exit {code}"))?;
        for c in ["t-maps", "counit", "antipode", "hopf-laws", "star-compatibility"] {
            passed(&r, c).map_err(|e| format!("{name}: {e}"))?;
        }
        ensure(took < VALIDATE_LIMIT, || format!("{name}: {took:?}"))?;
    }
    let (code, r, took) = cli(&["validate", "semilattice2"]);
    slowest = slowest.max(took);
    ensure(code == 1, || format!("semilattice2: exit {code}"))?;
    let failures: Vec<&Value> = r["checks"].as_array().unwrap().iter().filter(|c| c["status"] != "pass").collect();
    ensure(failures.len() == 1 && failures[0]["name"] == "t-maps", || format!("semilattice2 failures: {failures:?}"))?;
    let t = check(&r, "t-maps")?;
    ensure(t["data"][0] == serde_json::json!({"map": "T_{Δ2}", "rank": 2}), || format!("ranks {}", t["data"]))?;
    ensure(t["message"].as_str().unwrap().contains("T_{Δ2} rank 2 of 4"), || t["message"].to_string())?;
    ensure(took < VALIDATE_LIMIT, || format!("semilattice2: {took:?}"))?;
    Ok(format!("four fixtures pass, semilattice2 stops at T_{{Δ2}} rank 2 of 4; slowest {slowest:?}"))
}

fn criterion_02_haar_uniqueness() -> Outcome {
    for name in HOPF {
        let h = haar::solve_left_haar(&qg(name)).map_err(|e| format!("{name}: {e}"))?;
        ensure(h.dimension == 1, || format!("{name}: dimension {}", h.dimension))?;
    }
    Ok("solution space of dimension 1 on all five Hopf fixtures".to_string())
}

fn criterion_03_modular_suite() -> Outcome {
    let points = SpecPoints::default();
    for name in ["c_s3", "group_s3"] {
        let q = qg(name);
        let md = ModularData::compute(&q).map_err(|e| format!("{name}: {e}"))?;
        ensure(md.sigma == Matrix::identity(q.dim()), || format!("{name}: σ ≠ ι"))?;
        ensure(md.delta == q.one(), || format!("{name}: δ ≠ 1"))?;
        ensure(md.mu.is_one(), || format!("{name}: μ = {}", md.mu))?;
        let phi = haar::phi_gram(&q, &md, &points).map_err(|e| format!("{name}: {e}"))?;
        ensure(phi.verdict == Definiteness::PositiveDefinite, || format!("{name}: φ-Gram {:?}", phi.verdict))?;
        let psi = haar::psi_positivity(&q, &md, &points).map_err(|e| format!("{name}: {e}"))?;
        ensure(psi.gram.verdict == Definiteness::PositiveDefinite, || {
            format!("{name}: ψ-Gram {:?}", psi.gram.verdict)
        })?;
        haar::check_sigma_coproduct(&q, &md).map_err(|i| format!("{name}: Δσ ≠ (S²⊗σ)Δ at e{i}"))?;
    }
    Ok("σ = ι, δ = 1, μ = 1, both Gram forms positive-definite, Δσ = (S²⊗σ)Δ on c_s3 and group_s3".to_string())
}

/// `φ(S²(e_i)) = μ φ(e_i)` evaluated directly on the basis.
fn brute_force_mu(q: &QGData, md: &ModularData) -> Option<Scalar> {
    let n = q.dim();
    let s2 = q.antipode().mul(q.antipode());
    let phi = md.phi.values();
    let k = (0..n).find(|&i| !phi[i].is_zero())?;
    let value = |i: usize| -> Scalar { (0..n).map(|j| s2.get(j, i) * &phi[j]).sum() };
    let mu = &value(k) / &phi[k];
    (0..n).all(|i| value(i) == &mu * &phi[i]).then_some(mu)
}

fn criterion_04_scaling_constant_under_positivity() -> Outcome {
    let points = SpecPoints::default();
    let mut covered = Vec::new();
    for name in HOPF {
        let q = qg(name);
        if !q.algebra().has_star() {
            continue;
        }
        let md = ModularData::compute(&q).map_err(|e| e.to_string())?;
        let gram = haar::phi_gram(&q, &md, &points).map_err(|e| e.to_string())?;
        if gram.is_positive_definite() {
            ensure(md.mu.is_one(), || format!("{name}: μ = {}", md.mu))?;
            covered.push(name);
        } else {
            ensure(name == "sweedler_h4", || format!("{name}: unexpected {:?} Gram", gram.verdict))?;
            ensure(gram.verdict == Definiteness::Indefinite, || format!("{name}: {:?}", gram.verdict))?;
            let oracle = brute_force_mu(&q, &md).ok_or("φ∘S² is not proportional to φ")?;
            ensure(oracle == md.mu, || format!("pipeline μ = {}, oracle μ = {oracle}", md.mu))?;
        }
    }
    ensure(covered == POSITIVE, || format!("positive fixtures {covered:?}"))?;
    Ok("μ = 1 on the four positive fixtures; sweedler_h4 indefinite with μ = -1 matching the oracle".to_string())
}

fn criterion_05_positive_eigenvalues() -> Outcome {
    let points = SpecPoints::default();
    ensure(points.to_string() == "1/3,1/2,2/3", || format!("points {points}"))?;
    for name in POSITIVE {
        let q = qg(name);
        let md = ModularData::compute(&q).map_err(|e| e.to_string())?;
        let t = haar::simultaneous_eigenbasis(&q, &md, &points).map_err(|e| format!("{name}: {e}"))?;
        ensure(t.all_positive(), || format!("{name}: non-positive {:?}", t.non_positive))?;
    }
    let q = qg("sweedler_h4");
    let md = ModularData::compute(&q).map_err(|e| e.to_string())?;
    let spectra = haar::per_map_spectra(&q, &md, &points);
    let (_, _, bad) = spectra.iter().find(|(n, _, _)| *n == "S²").ok_or("no S² spectrum")?;
    ensure(bad.contains(&Scalar::from_int(-1)), || format!("S² non-positive eigenvalues {bad:?}"))?;
    let (code, r, _) = cli(&["analyze", "sweedler_h4", "--no-star-assert"]);
    ensure(code == 0, || format!("non-* mode exit {code}"))?;
    let o = check(&r, "positivity-obstruction")?;
    ensure(o["message"].as_str().unwrap().contains("S² has eigenvalue -1"), || o["message"].to_string())?;
    Ok("eigenbasis with positive eigenvalues on four fixtures; sweedler_h4 reports S² eigenvalue -1".to_string())
}

fn criterion_06_psi_positivity() -> Outcome {
    let points = SpecPoints::default();
    for name in HOPF {
        let q = qg(name);
        if !q.algebra().has_star() {
            continue;
        }
        let md = ModularData::compute(&q).map_err(|e| e.to_string())?;
        let c = haar::psi_positivity(&q, &md, &points).map_err(|e| format!("{name}: {e}"))?;
        if POSITIVE.contains(&name) {
            ensure(c.gram.is_positive_definite(), || format!("{name}: ψ-Gram {:?}", c.gram.verdict))?;
        }
    }
    Ok("ψ(e_i*e_j) = φ(e_i*e_jδ) on all five *-fixtures; ψ-Gram positive-definite on the four positive ones"
        .to_string())
}

fn criterion_07_duality() -> Outcome {
    let mut slowest = Duration::ZERO;
    for name in ["c_z2", "group_s3", "sweedler_h4"] {
        let (code, r, took) = cli(&["dual", name]);
        slowest = slowest.max(took);
        ensure(code == 0, || format!("{name}: exit {code}"))?;
        for c in ["dual", "dual-t-maps", "dual-haar", "biduality", "delta-hat"] {
            passed(&r, c).map_err(|e| format!("{name}: {e}"))?;
        }
        ensure(took < DUAL_LIMIT, || format!("{name}: {took:?}"))?;
    }
    let (_, r, _) = cli(&["dual", "group_s3"]);
    passed(&r, "dual-star-compatibility")?;
    let iso = check(&r, "dual-isomorphic")?;
    ensure(iso["message"] == "isomorphic to c_s3", || iso["message"].to_string())?;
    let g = qg("group_s3");
    let md = ModularData::compute(&g).map_err(|e| e.to_string())?;
    let d = hopf_forge::duality::build_dual(&g, &md.phi).map_err(|e| e.to_string())?;
    ensure(find_permutation_isomorphism(&d.qg, &qg("c_s3")).is_some(), || "no isomorphism onto c_s3".into())?;
    Ok(format!("dual(group_s3) ≅ c_s3, biduality and δ̂ = ε∘κ on c_z2, group_s3, sweedler_h4; slowest {slowest:?}"))
}

fn criterion_08_sub_quantum_group() -> Outcome {
    let (code, r, _) = cli(&["subcheck", "c_z4"]);
    ensure(code == 0, || format!("exit {code}"))?;
    let sub = "C(H), H={0,2}";
    for c in ["compatibility", "phi-restriction", "induced", "dual-imbedding"] {
        passed(&r, &format!("{sub}: {c}"))?;
    }
    let induced = check(&r, &format!("{sub}: induced"))?;
    ensure(induced["message"].as_str().unwrap().contains("isomorphic to c_z2"), || induced["message"].to_string())?;
    Ok("four compatibility equations, φ|A₀ ≠ 0, induced C(Z₂), dual imbedding j verified".to_string())
}

fn criterion_09_pairing() -> Outcome {
    let (code, r, took3) = cli(&["pair", "pairing-uqsu2-suq2", "--degree", "3"]);
    ensure(code == 0, || format!("degree 3: exit {code}"))?;
    passed(&r, "pairing-table")?;
    let table = check(&r, "pairing-table")?["data"].as_array().unwrap().clone();
    let expected = [
        ("K", "a", "s^-1"),
        ("K", "a*", "s"),
        ("K", "b", "0"),
        ("K", "b*", "0"),
        ("E", "a", "0"),
        ("E", "a*", "0"),
        ("E", "b", "0"),
        ("E", "b*", "-s^2"),
    ];
    ensure(table.len() == 8, || format!("{} entries", table.len()))?;
    for ((x, c, v), row) in expected.iter().zip(&table) {
        let got = sc(row["value"].as_str().unwrap());
        ensure(row["left"] == *x && row["right"] == *c && got == sc(v), || format!("⟨{x}, {c}⟩ = {got}"))?;
    }
    passed(&r, "pairing-axioms")?;
    ensure(check(&r, "pairing-axioms")?["message"].as_str().unwrap().ends_with("degree 3"), || {
        "axioms not at degree 3".into()
    })?;
    let (code, r4, took4) = cli(&["pair", "pairing-uqsu2-suq2", "--degree", "4"]);
    ensure(code == 0, || format!("degree 4: exit {code}"))?;
    passed(&r4, "kappa")?;
    ensure(check(&r4, "kappa")?["message"].as_str().unwrap().ends_with("up to degree 4"), || {
        "κ not at degree 4".into()
    })?;
    ensure(took3 + took4 < PAIR_LIMIT, || format!("{:?}", took3 + took4))?;
    Ok(format!("eight entries exact, axioms to degree 3, (ε∘κ)(c) = ⟨K^-4, c⟩ to degree 4; {:?}", took3 + took4))
}

fn criterion_10_suq2_antipode_and_confluence() -> Outcome {
    let h = presets::suq2();
    let s2 = h.antipode_squared().ok_or("no antipode")?.map_err(|e| e.to_string())?;
    let eig = diagonal_of(&s2).ok_or("S² is not diagonal on generators")?;
    let g = |n: &str| h.algebra.gen_index(n).unwrap();
    let q = sc("s^2");
    ensure(eig[g("a")].is_one(), || format!("S²(a) = {}·a", eig[g("a")]))?;
    ensure(eig[g("b")] == (&q * &q).inv().unwrap(), || format!("S²(b) = {}·b", eig[g("b")]))?;
    let start = Instant::now();
    for p in [presets::uq_su2(), presets::suq2()] {
        let r = p.algebra.with_degree(6).check_confluence();
        ensure(r.degree == 6 && r.is_confluent(), || format!("{}: {:?}", p.algebra.name(), r.failure))?;
    }
    let took = start.elapsed();
    ensure(took < CONFLUENCE_LIMIT, || format!("{took:?}"))?;
    Ok(format!("S²(a) = a, S²(b) = q^-2 b, both presentations confluent to degree 6 in {took:?}"))
}

fn criterion_11_determinism() -> Outcome {
    let mut runs = Vec::new();
    for name in HOPF {
        runs.push(vec!["analyze", name]);
    }
    runs.push(vec!["pair", "pairing-uqsu2-suq2"]);
    runs.push(vec!["pair", "pairing-uqsu2-suq2", "--degree", "3"]);
    for args in &runs {
        for format in ["json", "text"] {
            let mut argv = vec!["hopf-forge"];
            argv.extend_from_slice(args);
            argv.extend_from_slice(&["--format", format]);
            let (a, b) = (run(argv.clone()), run(argv));
            ensure(a == b, || format!("{args:?} {format} differs between runs"))?;
        }
    }
    Ok(format!("{} analyze/pair reports byte-identical across two runs in both formats", runs.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "axiom suite", criterion_01_axiom_suite),
        (2, "Haar uniqueness", criterion_02_haar_uniqueness),
        (3, "modular suite", criterion_03_modular_suite),
        (4, "μ = 1 under positivity", criterion_04_scaling_constant_under_positivity),
        (5, "positive eigenvalues", criterion_05_positive_eigenvalues),
        (6, "ψ-positivity", criterion_06_psi_positivity),
        (7, "duality", criterion_07_duality),
        (8, "sub-quantum group", criterion_08_sub_quantum_group),
        (9, "U_q(su(2)) / SU_q(2) pairing", criterion_09_pairing),
        (10, "SU_q(2) antipode and confluence", criterion_10_suq2_antipode_and_confluence),
        (11, "determinism", criterion_11_determinism),
    ];
    let mut failed = 0;
    for (n, title, criterion) in criteria {
        let outcome = std::panic::catch_unwind(criterion).unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("criterion {n:>2} PASS  {title}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {title}: {why}");
            }
        }
    }
    println!("acceptance: {} of 11 criteria pass", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
