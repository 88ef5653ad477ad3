//! Maps defined on generators (coproduct, counit, antipode), the Hopf laws
//! they must satisfy, and diagonal one-parameter actions.

use super::rewrite::Presentation;
use super::words::{Gen, Lin, Monomial, TensorWord, Word};
use super::PresentationError;
use crate::finalg::LinearSystem;
use crate::scalars::{Scalar, SpecPoints};

/// Monomials whose linear combinations can be brought to normal form in (tensor
/// powers of) a presented algebra.
pub trait Normalize: Monomial {
    fn normalize(&self, p: &Presentation) -> Result<Lin<Self>, PresentationError>;
}

impl Normalize for () {
    fn normalize(&self, _: &Presentation) -> Result<Lin<Self>, PresentationError> {
        Ok(Lin::one())
    }
}

impl Normalize for Word {
    fn normalize(&self, p: &Presentation) -> Result<Lin<Self>, PresentationError> {
        p.nf_word(self)
    }
}

impl Normalize for TensorWord {
    fn normalize(&self, p: &Presentation) -> Result<Lin<Self>, PresentationError> {
        Ok(super::words::tensor(&p.nf_word(&self.0)?, &p.nf_word(&self.1)?))
    }
}

impl Normalize for (Word, Word, Word) {
    fn normalize(&self, p: &Presentation) -> Result<Lin<Self>, PresentationError> {
        let (a, b, c) = (p.nf_word(&self.0)?, p.nf_word(&self.1)?, p.nf_word(&self.2)?);
        let mut out = Lin::zero();
        for (x, u) in a.iter() {
            for (y, v) in b.iter() {
                for (z, w) in c.iter() {
                    out.add_term((x.clone(), y.clone(), z.clone()), &(u * v) * w);
                }
            }
        }
        Ok(out)
    }
}

pub fn normalize<M: Normalize>(p: &Presentation, x: &Lin<M>) -> Result<Lin<M>, PresentationError> {
    let mut out = Lin::zero();
    for (m, c) in x.iter() {
        out.add_scaled(&m.normalize(p)?, c);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MorphismKind {
    Coproduct,
    Antipode,
    Counit,
    AlgebraMap,
}

impl MorphismKind {
    pub fn name(self) -> &'static str {
        match self {
            MorphismKind::Coproduct => "coproduct",
            MorphismKind::Antipode => "antipode",
            MorphismKind::Counit => "counit",
            MorphismKind::AlgebraMap => "algebra map",
        }
    }
}

/// A (anti-)multiplicative map given by its images of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenMorphism<M: Monomial> {
    pub kind: MorphismKind,
    pub images: Vec<Lin<M>>,
    pub anti: bool,
}

impl<M: Normalize> GenMorphism<M> {
    pub fn new(kind: MorphismKind, images: Vec<Lin<M>>, anti: bool) -> Self {
        GenMorphism { kind, images, anti }
    }

    /// Image of a word: the product of the generator images, reversed for an
    /// anti-morphism. Not normalized.
    pub fn apply_word(&self, w: &[Gen]) -> Lin<M> {
        let mut out = Lin::one();
        for &g in w {
            out = if self.anti { self.images[g].mul(&out) } else { out.mul(&self.images[g]) };
        }
        out
    }

    pub fn apply(&self, x: &Lin<Word>) -> Lin<M> {
        let mut out = Lin::zero();
        for (w, c) in x.iter() {
            out.add_scaled(&self.apply_word(w), c);
        }
        out
    }

    /// Checks that the images respect every defining relation: `m(l)` and
    /// `m(r)` have equal normal forms in the target for each rule `l → r`.
    pub fn verify(&self, source: &Presentation, target: &Presentation) -> Result<(), PresentationError> {
        if self.images.len() != source.generators().len() {
            return Err(PresentationError::Invalid(format!(
                "{} has {} generator images, expected {}",
                self.kind.name(),
                self.images.len(),
                source.generators().len()
            )));
        }
        for rule in source.rules() {
            let lhs = normalize(target, &self.apply_word(&rule.lhs))?;
            let rhs = normalize(target, &self.apply(&rule.rhs))?;
            if lhs != rhs {
                return Err(PresentationError::RelationViolated {
                    map: self.kind.name(),
                    rule: format!("{} → {}", source.show_word(&rule.lhs), source.show(&rule.rhs)),
                });
            }
        }
        Ok(())
    }
}

impl GenMorphism<()> {
    pub fn value(&self, w: &[Gen]) -> Scalar {
        self.apply_word(w).value()
    }
}

/// A presented algebra with verified coproduct, counit and (optional) antipode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfPresentation {
    pub algebra: Presentation,
    pub coproduct: GenMorphism<TensorWord>,
    pub counit: GenMorphism<()>,
    pub antipode: Option<GenMorphism<Word>>,
}

/// Named outcomes of the individual Hopf checks, in the order they ran.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfChecks {
    pub confluence: super::rewrite::ConfluenceReport,
    pub steps: Vec<(&'static str, Result<(), String>)>,
}

impl HopfChecks {
    pub fn passes(&self) -> bool {
        self.confluence.is_confluent() && self.steps.iter().all(|(_, r)| r.is_ok())
    }
}

impl HopfPresentation {
    /// Solves the counit from `(ε⊗ι)Δ(g) = g = (ι⊗ε)Δ(g)` on the generators
    /// and compares it with `declared_counit` when present. No other law is
    /// checked.
    pub fn assemble(
        algebra: Presentation,
        coproduct: Vec<Lin<TensorWord>>,
        declared_counit: Option<Vec<Scalar>>,
        antipode: Option<Vec<Lin<Word>>>,
    ) -> Result<Self, PresentationError> {
        let coproduct = GenMorphism::new(MorphismKind::Coproduct, coproduct, false);
        if coproduct.images.len() != algebra.generators().len() {
            return Err(PresentationError::Invalid("coproduct must give an image for every generator".into()));
        }
        let eps = solve_counit(&algebra, &coproduct)?;
        if let Some(d) = declared_counit {
            if d != eps {
                return Err(PresentationError::Invalid("declared counit differs from the solved one".into()));
            }
        }
        let counit = GenMorphism::new(MorphismKind::Counit, eps.into_iter().map(Lin::scalar).collect(), false);
        let antipode = antipode.map(|imgs| GenMorphism::new(MorphismKind::Antipode, imgs, true));
        Ok(HopfPresentation { algebra, coproduct, counit, antipode })
    }

    /// [`assemble`](Self::assemble) followed by every law; fails on the first
    /// violation.
    pub fn build(
        algebra: Presentation,
        coproduct: Vec<Lin<TensorWord>>,
        declared_counit: Option<Vec<Scalar>>,
        antipode: Option<Vec<Lin<Word>>>,
    ) -> Result<Self, PresentationError> {
        let h = Self::assemble(algebra, coproduct, declared_counit, antipode)?;
        let a = &h.algebra;
        h.coproduct.verify(a, a)?;
        h.counit.verify(a, a)?;
        if let Some(s) = &h.antipode {
            s.verify(a, a)?;
        }
        h.check_coassociativity()?;
        h.check_counit_laws()?;
        h.check_antipode_laws()?;
        Ok(h)
    }

    /// Every check as a named result, without stopping at the first failure.
    pub fn run_checks(&self) -> HopfChecks {
        let a = &self.algebra;
        let mut steps: Vec<(&'static str, Result<(), String>)> = vec![
            ("coproduct respects relations", self.coproduct.verify(a, a).map_err(|e| e.to_string())),
            ("counit respects relations", self.counit.verify(a, a).map_err(|e| e.to_string())),
        ];
        if let Some(s) = &self.antipode {
            steps.push(("antipode respects relations (anti-morphism)", s.verify(a, a).map_err(|e| e.to_string())));
        }
        steps.push(("coassociativity on generators", self.check_coassociativity().map_err(|e| e.to_string())));
        steps.push(("counit laws on generators", self.check_counit_laws().map_err(|e| e.to_string())));
        if self.antipode.is_some() {
            steps.push(("antipode laws on generators", self.check_antipode_laws().map_err(|e| e.to_string())));
        }
        if a.has_star() {
            steps.push(("Δ(g*) = Δ(g)* on generators", self.check_star_coproduct().map_err(|e| e.to_string())));
        }
        HopfChecks { confluence: a.check_confluence(), steps }
    }

    pub fn counit_word(&self, w: &[Gen]) -> Scalar {
        self.counit.value(w)
    }

    pub fn coproduct_word(&self, w: &[Gen]) -> Lin<TensorWord> {
        self.coproduct.apply_word(w)
    }

    fn law_error(&self, law: &'static str, g: Gen) -> PresentationError {
        PresentationError::HopfLaw { law, generator: self.algebra.generators()[g].name.clone() }
    }

    pub fn check_coassociativity(&self) -> Result<(), PresentationError> {
        let a = &self.algebra;
        for (g, d) in self.coproduct.images.iter().enumerate() {
            let mut left = Lin::zero();
            let mut right = Lin::zero();
            for ((u, v), c) in d.iter() {
                for ((x, y), e) in self.coproduct_word(u).iter() {
                    left.add_term((x.clone(), y.clone(), v.clone()), c * e);
                }
                for ((x, y), e) in self.coproduct_word(v).iter() {
                    right.add_term((u.clone(), x.clone(), y.clone()), c * e);
                }
            }
            if normalize(a, &left)? != normalize(a, &right)? {
                return Err(self.law_error("(Δ⊗ι)Δ = (ι⊗Δ)Δ", g));
            }
        }
        Ok(())
    }

    pub fn check_counit_laws(&self) -> Result<(), PresentationError> {
        let a = &self.algebra;
        for (g, d) in self.coproduct.images.iter().enumerate() {
            let (l, r) = counit_slices(self, d);
            let target = a.nf_word(&[g])?;
            if a.normal_form(&l)? != target || a.normal_form(&r)? != target {
                return Err(self.law_error("(ε⊗ι)Δ = ι = (ι⊗ε)Δ", g));
            }
        }
        Ok(())
    }

    pub fn check_antipode_laws(&self) -> Result<(), PresentationError> {
        let Some(s) = &self.antipode else { return Ok(()) };
        let a = &self.algebra;
        for (g, d) in self.coproduct.images.iter().enumerate() {
            let unit = Lin::scalar(self.counit_word(&[g]));
            let mut left = Lin::zero();
            let mut right = Lin::zero();
            for ((u, v), c) in d.iter() {
                left.add_scaled(&s.apply_word(u).mul(&Lin::monomial(v.clone())), c);
                right.add_scaled(&Lin::monomial(u.clone()).mul(&s.apply_word(v)), c);
            }
            if a.normal_form(&left)? != unit || a.normal_form(&right)? != unit {
                return Err(self.law_error("m(S⊗ι)Δ = ε1 = m(ι⊗S)Δ", g));
            }
        }
        Ok(())
    }

    pub fn check_star_coproduct(&self) -> Result<(), PresentationError> {
        let a = &self.algebra;
        for (g, gen) in a.generators().iter().enumerate() {
            let Some(h) = gen.star else { continue };
            let d = &self.coproduct.images[g];
            let mut starred = Lin::zero();
            for ((u, v), c) in d.iter() {
                let su = a.star(&Lin::monomial(u.clone())).expect("star");
                let sv = a.star(&Lin::monomial(v.clone())).expect("star");
                starred.add_scaled(&super::words::tensor(&su, &sv), &c.conj());
            }
            if normalize(a, &starred)? != normalize(a, &self.coproduct.images[h])? {
                return Err(self.law_error("Δ(g*) = Δ(g)*", g));
            }
        }
        Ok(())
    }

    /// `S²` on the generators, normalized.
    pub fn antipode_squared(&self) -> Option<Result<Vec<Lin<Word>>, PresentationError>> {
        let s = self.antipode.as_ref()?;
        Some(
            s.images
                .iter()
                .map(|img| {
                    let once = self.algebra.normal_form(img)?;
                    self.algebra.normal_form(&s.apply(&once))
                })
                .collect(),
        )
    }

    /// The same structure with another degree bound.
    pub fn with_degree(&self, degree: usize) -> Self {
        let mut h = self.clone();
        h.algebra = self.algebra.with_degree(degree);
        h
    }
}

fn counit_slices(h: &HopfPresentation, d: &Lin<TensorWord>) -> (Lin<Word>, Lin<Word>) {
    let mut l = Lin::zero();
    let mut r = Lin::zero();
    for ((u, v), c) in d.iter() {
        l.add_term(v.clone(), c * &h.counit_word(u));
        r.add_term(u.clone(), c * &h.counit_word(v));
    }
    (l, r)
}

/// Solves `ε` on the generators from the counit laws. Each leg of `Δ(g)`
/// that gets evaluated must be a single generator or the empty word, so the
/// system stays linear.
pub fn solve_counit(p: &Presentation, delta: &GenMorphism<TensorWord>) -> Result<Vec<Scalar>, PresentationError> {
    let n = p.generators().len();
    let mut sys = LinearSystem::new(n);
    for (g, d) in delta.images.iter().enumerate() {
        for left_side in [true, false] {
            // Σ c·ε(leg)·(other leg) = g, collected by normal word of the other leg.
            let mut rows: std::collections::BTreeMap<Word, (Vec<Scalar>, Scalar)> = std::collections::BTreeMap::new();
            let target = p.nf_word(&[g])?;
            for (w, c) in target.iter() {
                rows.entry(w.clone()).or_insert_with(|| (vec![Scalar::zero(); n], Scalar::zero())).1 = c.clone();
            }
            for ((u, v), c) in d.iter() {
                let (evaluated, kept) = if left_side { (u, v) } else { (v, u) };
                for (w, e) in p.nf_word(kept)?.iter() {
                    let row = rows.entry(w.clone()).or_insert_with(|| (vec![Scalar::zero(); n], Scalar::zero()));
                    let ce = c * e;
                    match evaluated.len() {
                        0 => row.1 = &row.1 - &ce,
                        1 => row.0[evaluated[0]] = &row.0[evaluated[0]] + &ce,
                        _ => return Err(PresentationError::CounitUndetermined(p.generators()[g].name.clone())),
                    }
                }
            }
            for (_, (coeffs, rhs)) in rows {
                sys.push(coeffs, rhs);
            }
        }
    }
    let sol = sys.solve();
    match (sol.unique(), sol.is_empty()) {
        (Some(x), _) => Ok(x.clone()),
        (None, true) => Err(PresentationError::CounitUndetermined("no solution".into())),
        (None, false) => {
            Err(PresentationError::CounitUndetermined(format!("{}-dimensional solution space", sol.kernel.len())))
        }
    }
}

/// Scales each generator by a fixed positive scalar; extended multiplicatively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalAction {
    pub name: String,
    pub eigenvalues: Vec<Scalar>,
}

impl DiagonalAction {
    /// Requires every eigenvalue to be self-adjoint and positive at `points`.
    pub fn new(name: &str, eigenvalues: Vec<Scalar>, points: &SpecPoints) -> Result<Self, PresentationError> {
        if let Some(bad) = eigenvalues.iter().find(|e| !e.is_self_adjoint() || !e.is_positive_at(points)) {
            return Err(PresentationError::Invalid(format!(
                "{name}: eigenvalue {bad} is not positive at the evaluation points"
            )));
        }
        Ok(DiagonalAction { name: name.to_string(), eigenvalues })
    }

    pub fn eigenvalue(&self, w: &[Gen]) -> Scalar {
        w.iter().fold(Scalar::one(), |acc, &g| &acc * &self.eigenvalues[g])
    }

    pub fn apply(&self, x: &Lin<Word>) -> Lin<Word> {
        Lin::from_terms(x.iter().map(|(w, c)| (w.clone(), c * &self.eigenvalue(w))))
    }

    pub fn inverse(&self) -> Self {
        DiagonalAction {
            name: format!("{}⁻¹", self.name),
            eigenvalues: self.eigenvalues.iter().map(|e| e.inv().expect("positive eigenvalue")).collect(),
        }
    }

    /// The action commutes with normal forms exactly when every rule is
    /// homogeneous for it; returns the first rule that is not.
    pub fn check_commutes(&self, p: &Presentation) -> Result<(), PresentationError> {
        for rule in p.rules() {
            let e = self.eigenvalue(&rule.lhs);
            if rule.rhs.iter().any(|(w, _)| self.eigenvalue(w) != e) {
                return Err(PresentationError::RelationViolated {
                    map: "diagonal action",
                    rule: format!("{} → {}", p.show_word(&rule.lhs), p.show(&rule.rhs)),
                });
            }
        }
        Ok(())
    }
}

/// `λ_g` with `images[g] = λ_g·g` for every generator, if the map is diagonal.
pub fn diagonal_of(images: &[Lin<Word>]) -> Option<Vec<Scalar>> {
    images
        .iter()
        .enumerate()
        .map(|(g, img)| match img.as_single() {
            Some((w, c)) if w[..] == [g] => Some(c.clone()),
            _ => None,
        })
        .collect()
}
