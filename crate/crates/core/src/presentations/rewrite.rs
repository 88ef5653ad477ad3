//! Presented algebras: generators, oriented rewrite rules, normal forms and
//! the overlap check for local confluence.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::RwLock;

use super::words::{Gen, Lin, Monomial, Word};
use super::PresentationError;
use crate::scalars::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    /// Weight in the monomial order (positive).
    pub weight: u32,
    pub star: Option<Gen>,
    /// Formal inverse partner.
    pub inverse: Option<Gen>,
}

impl Generator {
    pub fn new(name: &str) -> Self {
        Generator { name: name.to_string(), weight: 1, star: None, inverse: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Lin<Word>,
}

/// A finitely presented algebra with a degree bound on every computation.
///
/// Words are ordered by total weight, then lexicographically by generator
/// index; every rule must strictly decrease this order, so rewriting
/// terminates.
#[derive(Debug)]
pub struct Presentation {
    name: String,
    gens: Vec<Generator>,
    rules: Vec<Rule>,
    degree: usize,
    memo: RwLock<HashMap<Word, Lin<Word>>>,
}

impl Clone for Presentation {
    fn clone(&self) -> Self {
        Presentation {
            name: self.name.clone(),
            gens: self.gens.clone(),
            rules: self.rules.clone(),
            degree: self.degree,
            memo: RwLock::new(HashMap::new()),
        }
    }
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.gens == other.gens && self.rules == other.rules && self.degree == other.degree
    }
}

impl Eq for Presentation {}

/// Outcome of the overlap enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub degree: usize,
    pub overlaps: usize,
    pub failure: Option<OverlapFailure>,
}

impl ConfluenceReport {
    pub fn is_confluent(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapFailure {
    pub word: String,
    pub left: String,
    pub right: String,
}

impl Presentation {
    /// Validates generator partners and rule orientation, and appends the
    /// rules `g·g⁻¹ → 1` for every declared inverse.
    pub fn new(name: &str, gens: Vec<Generator>, rules: Vec<Rule>, degree: usize) -> Result<Self, PresentationError> {
        let n = gens.len();
        if degree == 0 {
            return Err(PresentationError::Invalid("degree bound must be positive".into()));
        }
        for (g, gen) in gens.iter().enumerate() {
            if gen.weight == 0 {
                return Err(PresentationError::Invalid(format!("generator {} has weight 0", gen.name)));
            }
            if gens[..g].iter().any(|h| h.name == gen.name) {
                return Err(PresentationError::Invalid(format!("duplicate generator {}", gen.name)));
            }
            for (what, partner) in [("star", gen.star), ("inverse", gen.inverse)] {
                if let Some(h) = partner {
                    let back = gens.get(h).map(|x| if what == "star" { x.star } else { x.inverse });
                    if back != Some(Some(g)) {
                        return Err(PresentationError::Invalid(format!(
                            "{what} partner of {} is not symmetric",
                            gen.name
                        )));
                    }
                }
            }
            if gen.inverse == Some(g) {
                return Err(PresentationError::Invalid(format!("{} is declared its own inverse", gen.name)));
            }
        }
        let mut p =
            Presentation { name: name.to_string(), gens, rules: Vec::new(), degree, memo: RwLock::new(HashMap::new()) };
        let mut all = rules;
        for g in 0..n {
            if let Some(h) = p.gens[g].inverse {
                all.push(Rule { lhs: vec![g, h], rhs: Lin::one() });
            }
        }
        for r in &all {
            if r.lhs.is_empty() || r.lhs.iter().chain(r.rhs.iter().flat_map(|(w, _)| w.iter())).any(|&g| g >= n) {
                return Err(PresentationError::Invalid(
                    "rule refers to an unknown generator or has an empty left side".into(),
                ));
            }
            if p.rules.iter().any(|o| o.lhs == r.lhs) {
                return Err(PresentationError::Invalid(format!("two rules rewrite {}", p.show_word(&r.lhs))));
            }
            if let Some((w, _)) = r.rhs.iter().find(|(w, _)| p.cmp_words(w, &r.lhs) != Ordering::Less) {
                return Err(PresentationError::NotDecreasing { lhs: p.show_word(&r.lhs), word: p.show_word(w) });
            }
            p.rules.push(r.clone());
        }
        Ok(p)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The same presentation with another degree bound.
    pub fn with_degree(&self, degree: usize) -> Self {
        let mut p = self.clone();
        p.degree = degree;
        p
    }

    pub fn gen_index(&self, name: &str) -> Option<Gen> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn has_star(&self) -> bool {
        self.gens.iter().all(|g| g.star.is_some())
    }

    /// Space-separated generator names, `1` for the empty word.
    pub fn show_word(&self, w: &[Gen]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|&g| self.gens[g].name.as_str()).collect::<Vec<_>>().join(" ")
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, PresentationError> {
        let text = text.trim();
        if text == "1" || text.is_empty() {
            return Ok(Vec::new());
        }
        text.split_whitespace()
            .map(|t| self.gen_index(t).ok_or_else(|| PresentationError::UnknownGenerator(t.to_string())))
            .collect()
    }

    pub fn show(&self, x: &Lin<Word>) -> String {
        show_terms(x.iter().map(|(w, c)| (c, self.show_word(w))))
    }

    pub fn show_tensor(&self, x: &Lin<(Word, Word)>) -> String {
        show_terms(x.iter().map(|((u, v), c)| (c, format!("{} ⊗ {}", self.show_word(u), self.show_word(v)))))
    }

    pub fn weight(&self, w: &[Gen]) -> u32 {
        w.iter().map(|&g| self.gens[g].weight).sum()
    }

    /// The monomial order: weight, then lexicographic.
    pub fn cmp_words(&self, a: &[Gen], b: &[Gen]) -> Ordering {
        self.weight(a).cmp(&self.weight(b)).then_with(|| a.cmp(b))
    }

    fn find_redex(&self, w: &[Gen]) -> Option<(usize, &Rule)> {
        (0..w.len()).find_map(|pos| self.rules.iter().find(|r| w[pos..].starts_with(&r.lhs)).map(|r| (pos, r)))
    }

    pub fn is_normal(&self, w: &[Gen]) -> bool {
        self.find_redex(w).is_none()
    }

    /// Normal form of a single word (leftmost redex first), memoized.
    pub fn nf_word(&self, w: &[Gen]) -> Result<Lin<Word>, PresentationError> {
        if w.len() > self.degree {
            return Err(PresentationError::DegreeExceeded { bound: self.degree, word: self.show_word(w) });
        }
        if let Some(hit) = self.memo.read().expect("memo lock").get(w) {
            return Ok(hit.clone());
        }
        let result = match self.find_redex(w) {
            None => Lin::monomial(w.to_vec()),
            Some((pos, rule)) => {
                let mut acc = Lin::zero();
                for (r, c) in rule.rhs.iter() {
                    let mut next = w[..pos].to_vec();
                    next.extend_from_slice(r);
                    next.extend_from_slice(&w[pos + rule.lhs.len()..]);
                    acc.add_scaled(&self.nf_word(&next)?, c);
                }
                acc
            }
        };
        self.memo.write().expect("memo lock").insert(w.to_vec(), result.clone());
        Ok(result)
    }

    pub fn normal_form(&self, x: &Lin<Word>) -> Result<Lin<Word>, PresentationError> {
        let mut out = Lin::zero();
        for (w, c) in x.iter() {
            out.add_scaled(&self.nf_word(w)?, c);
        }
        Ok(out)
    }

    /// Product followed by normal form.
    pub fn mul(&self, x: &Lin<Word>, y: &Lin<Word>) -> Result<Lin<Word>, PresentationError> {
        self.normal_form(&x.mul(y))
    }

    /// All normal words of length at most `max`, by length and then order.
    pub fn normal_words(&self, max: usize) -> Vec<Word> {
        let mut out = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..max {
            let mut next = Vec::new();
            for w in &layer {
                for g in 0..self.gens.len() {
                    let mut x = w.clone();
                    x.push(g);
                    // The prefix is normal, so only redexes ending at the new letter matter.
                    if !self.rules.iter().any(|r| x.ends_with(&r.lhs)) {
                        next.push(x);
                    }
                }
            }
            next.sort_by(|a, b| self.cmp_words(a, b));
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// `x*`: reverse each word, star each letter, conjugate coefficients.
    pub fn star(&self, x: &Lin<Word>) -> Option<Lin<Word>> {
        let mut out = Lin::zero();
        for (w, c) in x.iter() {
            let sw = w.iter().rev().map(|&g| self.gens[g].star).collect::<Option<Word>>()?;
            out.add_term(sw, c.conj());
        }
        Some(out)
    }

    /// Reduces every overlap and inclusion of rule left sides of length at
    /// most the degree bound both ways and compares the normal forms.
    pub fn check_confluence(&self) -> ConfluenceReport {
        let mut overlaps = 0;
        for (i, r1) in self.rules.iter().enumerate() {
            for (j, r2) in self.rules.iter().enumerate() {
                let (l1, l2) = (&r1.lhs, &r2.lhs);
                // Proper overlaps: a suffix of l1 is a prefix of l2.
                for k in 1..l1.len().min(l2.len() + 1) {
                    if k == l2.len() || l1[l1.len() - k..] != l2[..k] {
                        continue;
                    }
                    let word = l1.concat(&l2[k..].to_vec());
                    if word.len() > self.degree {
                        continue;
                    }
                    overlaps += 1;
                    let left = r1.rhs.mul(&Lin::monomial(l2[k..].to_vec()));
                    let right = Lin::monomial(l1[..l1.len() - k].to_vec()).mul(&r2.rhs);
                    if let Some(f) = self.compare_paths(&word, &left, &right) {
                        return ConfluenceReport { degree: self.degree, overlaps, failure: Some(f) };
                    }
                }
                // Inclusions: l2 occurs inside l1.
                if i != j && l2.len() < l1.len() && l1.len() <= self.degree {
                    for p in 0..=l1.len() - l2.len() {
                        if l1[p..p + l2.len()] != l2[..] {
                            continue;
                        }
                        overlaps += 1;
                        let right = Lin::monomial(l1[..p].to_vec())
                            .mul(&r2.rhs)
                            .mul(&Lin::monomial(l1[p + l2.len()..].to_vec()));
                        if let Some(f) = self.compare_paths(l1, &r1.rhs, &right) {
                            return ConfluenceReport { degree: self.degree, overlaps, failure: Some(f) };
                        }
                    }
                }
            }
        }
        ConfluenceReport { degree: self.degree, overlaps, failure: None }
    }

    fn compare_paths(&self, word: &[Gen], left: &Lin<Word>, right: &Lin<Word>) -> Option<OverlapFailure> {
        let shown = |r: Result<Lin<Word>, PresentationError>| match r {
            Ok(x) => Ok(self.show(&x)),
            Err(e) => Err(e.to_string()),
        };
        let (a, b) = (shown(self.normal_form(left)), shown(self.normal_form(right)));
        match (a, b) {
            (Ok(a), Ok(b)) if a == b => None,
            (a, b) => Some(OverlapFailure {
                word: self.show_word(word),
                left: a.unwrap_or_else(|e| e),
                right: b.unwrap_or_else(|e| e),
            }),
        }
    }
}

/// Renders `Σ c·m` as `c·m + c·m`, with unit coefficients left implicit.
pub fn show_terms<'a>(terms: impl Iterator<Item = (&'a Scalar, String)>) -> String {
    let parts: Vec<String> = terms
        .map(|(c, m)| {
            if c.is_one() {
                m
            } else if m == "1" {
                format!("({c})")
            } else {
                format!("({c})·{m}")
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free_xy(rules: &[(&str, &str)]) -> Presentation {
        let gens = vec![Generator::new("x"), Generator::new("y")];
        let p = Presentation::new("free", gens.clone(), Vec::new(), 6).unwrap();
        let rules = rules
            .iter()
            .map(|(l, r)| Rule { lhs: p.parse_word(l).unwrap(), rhs: Lin::monomial(p.parse_word(r).unwrap()) })
            .collect();
        Presentation::new("xy", gens, rules, 6).unwrap()
    }

    #[test]
    fn mutual_inverses_are_confluent() {
        let p = free_xy(&[("x y", "1"), ("y x", "1")]);
        let report = p.check_confluence();
        assert!(report.is_confluent());
        assert!(report.overlaps >= 2);
        assert_eq!(p.nf_word(&p.parse_word("x y x").unwrap()).unwrap(), Lin::monomial(vec![0]));
    }

    #[test]
    fn single_rule_is_vacuously_confluent() {
        let p = free_xy(&[("x y", "1")]);
        let report = p.check_confluence();
        assert!(report.is_confluent());
        assert_eq!(report.overlaps, 0);
        // y x no longer reduces.
        assert!(p.is_normal(&[1, 0]));
    }

    #[test]
    fn non_confluent_system_is_reported() {
        // x x → y and x x x has two reductions: y x and x y, both normal.
        let p = free_xy(&[("x x", "y")]);
        let report = p.check_confluence();
        let f = report.failure.expect("not confluent");
        assert_eq!(f.word, "x x x");
        assert_ne!(f.left, f.right);
    }

    #[test]
    fn increasing_rule_is_rejected() {
        let gens = vec![Generator::new("x"), Generator::new("y")];
        let rule = Rule { lhs: vec![0, 1], rhs: Lin::monomial(vec![1, 0]) };
        assert!(matches!(Presentation::new("bad", gens, vec![rule], 4), Err(PresentationError::NotDecreasing { .. })));
    }

    #[test]
    fn degree_bound_is_enforced() {
        let p = free_xy(&[]).with_degree(2);
        assert!(matches!(p.nf_word(&[0, 0, 0]), Err(PresentationError::DegreeExceeded { bound: 2, .. })));
    }

    #[test]
    fn normal_words_avoid_left_sides() {
        let p = free_xy(&[("y x", "1")]);
        let words = p.normal_words(3);
        // x^a y^b with a + b ≤ 3.
        assert_eq!(words.len(), 10);
        assert!(words.iter().all(|w| p.is_normal(w)));
    }
}
