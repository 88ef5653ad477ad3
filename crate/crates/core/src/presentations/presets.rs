//! Built-in presentations: the quantum enveloping algebra `U_q(su(2))`, the
//! function algebra of `SU_q(2)`, and the pairing between them. Here
//! `q = s²`, so `q^{1/2} = s`.

use super::morphism::{DiagonalAction, HopfPresentation};
use super::pairing::Pairing;
use super::words::Word;
use super::PresentationError;
use crate::definition::{
    Body, DefinitionFile, GeneratorDef, PresentationDef, RuleDef, TensorImage, WordImage, FORMAT_VERSION,
};
use crate::scalars::{Scalar, SpecPoints};

pub const NAMES: [&str; 3] = ["uq-su2", "suq2", "pairing-uqsu2-suq2"];

/// Default degree bound for confluence and Hopf checks.
pub const CONFLUENCE_DEGREE: usize = 6;
/// Default degree bound for pairing checks.
pub const PAIRING_DEGREE: usize = 4;

fn gen(name: &str, weight: u32, star: &str, inverse: Option<&str>) -> GeneratorDef {
    GeneratorDef { name: name.into(), weight, star: Some(star.into()), inverse: inverse.map(Into::into) }
}

fn rule(lhs: &str, rhs: &[(&str, &str)]) -> RuleDef {
    RuleDef { lhs: lhs.into(), rhs: rhs.iter().map(|(c, w)| (c.to_string(), w.to_string())).collect() }
}

fn delta(g: &str, terms: &[(&str, &str, &str)]) -> TensorImage {
    TensorImage {
        generator: g.into(),
        terms: terms.iter().map(|(c, u, v)| (c.to_string(), u.to_string(), v.to_string())).collect(),
    }
}

fn image(g: &str, terms: &[(&str, &str)]) -> WordImage {
    WordImage { generator: g.into(), terms: terms.iter().map(|(c, w)| (c.to_string(), w.to_string())).collect() }
}

fn file(name: &str, description: &str, body: PresentationDef) -> DefinitionFile {
    DefinitionFile {
        format_version: FORMAT_VERSION,
        name: name.into(),
        description: description.into(),
        body: Body::Presentation(body),
    }
}

/// `EK = q⁻¹KE`, `[E, E*] = (K² − K⁻²)/(q − q⁻¹)`, `K* = K`, with the
/// commutator oriented towards the ordered basis `K^l E^m F^n` (`F = E*`).
pub fn uq_su2_def() -> DefinitionFile {
    let body = PresentationDef {
        generators: vec![
            gen("K", 1, "K", Some("K^-1")),
            gen("K^-1", 1, "K^-1", Some("K")),
            gen("E", 1, "F", None),
            gen("F", 1, "E", None),
        ],
        rules: vec![
            rule("E K", &[("s^-2", "K E")]),
            rule("E K^-1", &[("s^2", "K^-1 E")]),
            rule("F K", &[("s^2", "K F")]),
            rule("F K^-1", &[("s^-2", "K^-1 F")]),
            rule("F E", &[("1", "E F"), ("-1/(s^2-s^-2)", "K K"), ("1/(s^2-s^-2)", "K^-1 K^-1")]),
        ],
        degree: CONFLUENCE_DEGREE,
        coproduct: vec![
            delta("K", &[("1", "K", "K")]),
            delta("K^-1", &[("1", "K^-1", "K^-1")]),
            delta("E", &[("1", "E", "K"), ("1", "K^-1", "E")]),
            delta("F", &[("1", "F", "K"), ("1", "K^-1", "F")]),
        ],
        counit: None,
        antipode: Some(vec![
            image("K", &[("1", "K^-1")]),
            image("K^-1", &[("1", "K")]),
            image("E", &[("-s^2", "E")]),
            image("F", &[("-s^-2", "F")]),
        ]),
    };
    file("uq-su2", "quantum enveloping algebra of su(2), q = s^2", body)
}

/// `ab = qba`, `ab* = qb*a`, `bb* = b*b`, `a*a = 1 − q⁻²b*b`, `aa* = 1 − b*b`,
/// oriented towards the ordered basis `a^k b^m b*^n`, `a*^k b^m b*^n`.
pub fn suq2_def() -> DefinitionFile {
    let body = PresentationDef {
        generators: vec![
            gen("a", 2, "a*", None),
            gen("a*", 2, "a", None),
            gen("b", 1, "b*", None),
            gen("b*", 1, "b", None),
        ],
        rules: vec![
            rule("b a", &[("s^-2", "a b")]),
            rule("b a*", &[("s^2", "a* b")]),
            rule("b* a", &[("s^-2", "a b*")]),
            rule("b* a*", &[("s^2", "a* b*")]),
            rule("b* b", &[("1", "b b*")]),
            rule("a* a", &[("1", "1"), ("-s^-4", "b b*")]),
            rule("a a*", &[("1", "1"), ("-1", "b b*")]),
        ],
        degree: CONFLUENCE_DEGREE,
        coproduct: vec![
            delta("a", &[("1", "a", "a"), ("-s^-2", "b", "b*")]),
            delta("a*", &[("1", "a*", "a*"), ("-s^-2", "b*", "b")]),
            delta("b", &[("1", "a", "b"), ("1", "b", "a*")]),
            delta("b*", &[("1", "a*", "b*"), ("1", "b*", "a")]),
        ],
        counit: None,
        antipode: Some(vec![
            image("a", &[("1", "a*")]),
            image("a*", &[("1", "a")]),
            image("b", &[("-s^-2", "b")]),
            image("b*", &[("-s^2", "b*")]),
        ]),
    };
    file("suq2", "function algebra of the compact quantum group SU_q(2), q = s^2", body)
}

pub fn definition(name: &str) -> Option<DefinitionFile> {
    match name {
        "uq-su2" => Some(uq_su2_def()),
        "suq2" => Some(suq2_def()),
        _ => None,
    }
}

fn hopf(def: DefinitionFile) -> HopfPresentation {
    let Body::Presentation(p) = def.body else { unreachable!("preset is a presentation") };
    p.to_hopf(&def.name).expect("preset parses")
}

pub fn uq_su2() -> HopfPresentation {
    hopf(uq_su2_def())
}

pub fn suq2() -> HopfPresentation {
    hopf(suq2_def())
}

fn sc(text: &str) -> Scalar {
    text.parse().expect("preset literal")
}

/// The modular automorphism of `SU_q(2)` at `z = −i`: `a ↦ q⁻²a`, `b ↦ b`.
pub fn rho(points: &SpecPoints) -> Result<DiagonalAction, PresentationError> {
    DiagonalAction::new("ρ", vec![sc("s^-4"), sc("s^4"), sc("1"), sc("1")], points)
}

/// The scaling automorphism of `SU_q(2)` at `z = −i`: `a ↦ a`, `b ↦ q⁻²b`.
pub fn theta(points: &SpecPoints) -> Result<DiagonalAction, PresentationError> {
    DiagonalAction::new("θ", vec![sc("1"), sc("1"), sc("s^-4"), sc("s^4")], points)
}

/// The modular (= scaling) automorphism on `U_q(su(2))` at `z = −i`:
/// `K ↦ K`, `E ↦ q²E`.
pub fn sigma_hat(points: &SpecPoints) -> Result<DiagonalAction, PresentationError> {
    DiagonalAction::new("σ̂", vec![sc("1"), sc("1"), sc("s^4"), sc("s^-4")], points)
}

/// The eight generator entries `⟨K, ·⟩` and `⟨E, ·⟩` on `a, a*, b, b*`.
pub fn pairing_table() -> Vec<(&'static str, &'static str, &'static str)> {
    vec![
        ("K", "a", "s^-1"),
        ("K", "a*", "s"),
        ("K", "b", "0"),
        ("K", "b*", "0"),
        ("E", "a", "0"),
        ("E", "a*", "0"),
        ("E", "b", "0"),
        ("E", "b*", "-s^2"),
    ]
}

/// The pairing of `U_q(su(2))` (left) with `SU_q(2)` (right); the rows of
/// `K⁻¹` and `F` are derived.
pub fn pairing(degree: usize) -> Pairing {
    let (u, b) = (uq_su2(), suq2());
    let given: Vec<_> = pairing_table()
        .into_iter()
        .map(|(x, c, v)| (u.algebra.gen_index(x).unwrap(), b.algebra.gen_index(c).unwrap(), sc(v)))
        .collect();
    let mut p = Pairing::new(u, b, &given, degree).expect("preset pairing table");
    p.set_degree(degree);
    p
}

/// `K⁻⁴` as a word.
pub fn k_inverse_fourth(u: &HopfPresentation) -> Word {
    vec![u.algebra.gen_index("K^-1").unwrap(); 4]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{diagonal_of, Lin, RowSource};

    fn w(h: &HopfPresentation, text: &str) -> Word {
        h.algebra.parse_word(text).unwrap()
    }

    fn nf(h: &HopfPresentation, text: &str) -> Lin<Word> {
        h.algebra.nf_word(&w(h, text)).unwrap()
    }

    fn lin(h: &HopfPresentation, terms: &[(&str, &str)]) -> Lin<Word> {
        Lin::from_terms(terms.iter().map(|(c, t)| (w(h, t), sc(c))))
    }

    #[test]
    fn presets_pass_every_hopf_check() {
        for h in [uq_su2(), suq2()] {
            let checks = h.run_checks();
            assert!(checks.passes(), "{}: {checks:?}", h.algebra.name());
            assert!(checks.confluence.overlaps > 0);
        }
    }

    #[test]
    fn normal_form_examples() {
        let u = uq_su2();
        assert_eq!(nf(&u, "E K"), lin(&u, &[("s^-2", "K E")]));
        assert_eq!(nf(&u, "K K^-1"), Lin::one());
        let b = suq2();
        assert_eq!(nf(&b, "a* a"), lin(&b, &[("1", "1"), ("-s^-4", "b b*")]));
        assert_eq!(nf(&b, "b* b"), lin(&b, &[("1", "b b*")]));
    }

    #[test]
    fn counits_are_solved() {
        let u = uq_su2();
        let eps: Vec<Scalar> = (0..4).map(|g| u.counit_word(&[g])).collect();
        assert_eq!(eps, vec![sc("1"), sc("1"), sc("0"), sc("0")]);
        let b = suq2();
        let eps: Vec<Scalar> = (0..4).map(|g| b.counit_word(&[g])).collect();
        assert_eq!(eps, vec![sc("1"), sc("1"), sc("0"), sc("0")]);
    }

    #[test]
    fn antipode_squared_is_the_scaling_action() {
        let b = suq2();
        let s2 = b.antipode_squared().unwrap().unwrap();
        let eig = diagonal_of(&s2).expect("diagonal");
        assert_eq!(eig, theta(&SpecPoints::default()).unwrap().eigenvalues);
        assert_eq!(eig[0], sc("1"));
        assert_eq!(eig[2], sc("s^-4"));
        let u = uq_su2();
        let eig = diagonal_of(&u.antipode_squared().unwrap().unwrap()).unwrap();
        assert_eq!(eig, sigma_hat(&SpecPoints::default()).unwrap().eigenvalues);
    }

    #[test]
    fn diagonal_actions_commute_with_normal_forms() {
        let pts = SpecPoints::default();
        for act in [rho(&pts).unwrap(), theta(&pts).unwrap()] {
            act.check_commutes(&suq2().algebra).unwrap();
        }
        sigma_hat(&pts).unwrap().check_commutes(&uq_su2().algebra).unwrap();
        let b = suq2();
        assert_eq!(rho(&pts).unwrap().apply(&lin(&b, &[("1", "a")])), lin(&b, &[("s^-4", "a")]));
        assert_eq!(rho(&pts).unwrap().apply(&Lin::one()), Lin::one());
        // A non-homogeneous action is caught: scaling a alone breaks a*a = 1 − q⁻²b*b.
        let bad = DiagonalAction::new("bad", vec![sc("2"), sc("1"), sc("1"), sc("1")], &pts).unwrap();
        assert!(bad.check_commutes(&b.algebra).is_err());
    }

    #[test]
    fn negative_eigenvalue_is_rejected() {
        assert!(DiagonalAction::new("neg", vec![sc("-1")], &SpecPoints::default()).is_err());
    }

    #[test]
    fn derived_rows_of_the_pairing() {
        let mut p = pairing(3);
        let (u, b) = (p.left.clone(), p.right.clone());
        let ki = u.algebra.gen_index("K^-1").unwrap();
        let f = u.algebra.gen_index("F").unwrap();
        assert_eq!(p.row_source(ki), RowSource::Inverse);
        assert_eq!(p.row_source(f), RowSource::Star);
        assert_eq!(p.pair(&[ki], &w(&b, "a")).unwrap(), sc("s"));
        assert_eq!(p.pair(&[ki], &w(&b, "a*")).unwrap(), sc("s^-1"));
        assert_eq!(p.pair(&[f], &w(&b, "b")).unwrap(), sc("1"));
        let cert = p.check_axioms().unwrap();
        assert!(cert.coproduct_side > 0 && cert.product_side > 0 && cert.order_independence > 0);
    }

    #[test]
    fn wrong_table_entry_breaks_the_axioms() {
        let (u, b) = (uq_su2(), suq2());
        let mut given: Vec<_> = pairing_table()
            .into_iter()
            .map(|(x, c, v)| (u.algebra.gen_index(x).unwrap(), b.algebra.gen_index(c).unwrap(), sc(v)))
            .collect();
        // ⟨K, aa*⟩ = ⟨K, 1 − b*b⟩ = 1 forces ⟨K, a⟩⟨K, a*⟩ = 1.
        given[0].2 = sc("s^-2");
        let mut p = Pairing::new(u, b, &given, 3).unwrap();
        p.set_degree(3);
        assert!(matches!(p.check_axioms(), Err(PresentationError::PairingMismatch { .. })));
    }

    #[test]
    fn sign_of_e_row_is_not_detected() {
        // E ↦ −E is an automorphism of U_q(su(2)), so the negated E row is again a pairing.
        let (u, b) = (uq_su2(), suq2());
        let mut given: Vec<_> = pairing_table()
            .into_iter()
            .map(|(x, c, v)| (u.algebra.gen_index(x).unwrap(), b.algebra.gen_index(c).unwrap(), sc(v)))
            .collect();
        given[7].2 = sc("s^2");
        let mut p = Pairing::new(u, b, &given, 3).unwrap();
        p.set_degree(3);
        assert!(p.check_axioms().is_ok());
    }

    #[test]
    fn kappa_matches_k_inverse_fourth() {
        let mut p = pairing(4);
        let k4 = k_inverse_fourth(&p.left);
        let cert = p.kappa_functional_check(&rho(&SpecPoints::default()).unwrap(), &k4, 4).unwrap();
        assert!(cert.words > 0);
        assert_eq!(cert.nonzero[0], ("1".to_string(), sc("1")));
        assert!(cert.nonzero.contains(&("a".to_string(), sc("s^4"))));
        assert!(cert.nonzero.contains(&("a*".to_string(), sc("s^-4"))));
    }

    #[test]
    fn shifted_powers_of_k_stay_distinct() {
        // K^{4n}·X are distinct normal words: span{K^{4n}X} is not finite-dimensional.
        let u = uq_su2().algebra.with_degree(10);
        let k = u.gen_index("K").unwrap();
        for x in u.normal_words(2) {
            let shifted: Vec<_> = (0..2)
                .map(|n| {
                    let mut word = vec![k; 4 * n];
                    word.extend_from_slice(&x);
                    u.nf_word(&word).unwrap()
                })
                .collect();
            assert_ne!(shifted[0], shifted[1]);
            assert_eq!(shifted[1].len(), shifted[0].len());
        }
    }
}
