//! The `.qg` definition-file format: a JSON document whose scalars are strings
//! in the scalar literal grammar.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finalg::{AlgebraError, FinAlgebra, Functional, Matrix, MulEntry, Vector};
use crate::mhopf::{HasCoproduct, QGData};
use crate::presentations::{Generator, HopfPresentation, Lin, Presentation, PresentationError, Rule, Word};
use crate::scalars::{Scalar, ScalarError};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum DefError {
    #[error("unsupported format_version {0} (expected {FORMAT_VERSION})")]
    Version(u32),
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("bad scalar literal at {location}: {source}")]
    Scalar { location: String, source: ScalarError },
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefinitionFile {
    pub format_version: u32,
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    #[serde(flatten)]
    pub body: Body,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Body {
    StructureConstants(StructureDef),
    Presentation(PresentationDef),
}

/// Sparse tables: `mul` entries are `[i, j, k, value]` for `e_i·e_j ∋ value·e_k`;
/// `star` and `antipode` entries are `[j, i, value]` for `f(e_j) ∋ value·e_i`;
/// `coproduct` entries are `[a, i, j, value]` for `Δ(e_a) ∋ value·e_i⊗e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureDef {
    pub basis: Vec<String>,
    pub mul: Vec<(usize, usize, usize, String)>,
    pub unit: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star: Option<Vec<(usize, usize, String)>>,
    pub coproduct: Vec<(usize, usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counit: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<(usize, usize, String)>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subalgebras: Vec<NamedBasis>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub grouplike_projections: Vec<NamedVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedBasis {
    pub name: String,
    pub basis: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedVector {
    pub name: String,
    pub vector: Vec<String>,
}

/// The in-memory objects a structure-constants file describes.
#[derive(Clone, Debug)]
pub struct Structure {
    pub algebra: FinAlgebra,
    pub coproduct: Matrix,
    pub counit: Option<Functional>,
    pub antipode: Option<Matrix>,
    pub subalgebras: Vec<(String, Vec<Vector>)>,
    pub projections: Vec<(String, Vector)>,
}

fn scalar(text: &str, location: impl FnOnce() -> String) -> Result<Scalar, DefError> {
    text.parse().map_err(|source| DefError::Scalar { location: location(), source })
}

fn vector(texts: &[String], n: usize, what: &str) -> Result<Vector, DefError> {
    if texts.len() != n {
        return Err(DefError::Shape(format!("{what} has length {}, expected {n}", texts.len())));
    }
    texts.iter().enumerate().map(|(i, t)| scalar(t, || format!("{what}[{i}]"))).collect()
}

fn literal(x: &Scalar) -> String {
    x.to_string()
}

fn check_index(i: usize, n: usize, what: &str) -> Result<(), DefError> {
    if i >= n {
        return Err(DefError::Shape(format!("{what}: index {i} out of range for dimension {n}")));
    }
    Ok(())
}

fn square(entries: &[(usize, usize, String)], n: usize, what: &str) -> Result<Matrix, DefError> {
    let mut m = Matrix::zeros(n, n);
    for (pos, (j, i, v)) in entries.iter().enumerate() {
        check_index(*j, n, what)?;
        check_index(*i, n, what)?;
        let v = scalar(v, || format!("{what}[{pos}]"))?;
        let cur = m.get(*i, *j) + &v;
        m.set(*i, *j, cur);
    }
    Ok(m)
}

fn sparse_square(m: &Matrix) -> Vec<(usize, usize, String)> {
    let mut out = Vec::new();
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            if !m.get(i, j).is_zero() {
                out.push((j, i, literal(m.get(i, j))));
            }
        }
    }
    out
}

impl DefinitionFile {
    pub fn parse(text: &str) -> Result<Self, DefError> {
        #[derive(Deserialize)]
        struct Probe {
            format_version: u32,
        }
        let probe: Probe = serde_json::from_str(text).map_err(|e| DefError::Json(e.to_string()))?;
        if probe.format_version != FORMAT_VERSION {
            return Err(DefError::Version(probe.format_version));
        }
        serde_json::from_str(text).map_err(|e| DefError::Json(e.to_string()))
    }

    /// Canonical text: sorted sparse tables, canonical literals, trailing newline.
    pub fn to_canonical_string(&self) -> Result<String, DefError> {
        let mut c = self.clone();
        match &mut c.body {
            Body::StructureConstants(s) => s.canonicalize()?,
            Body::Presentation(p) => p.canonicalize()?,
        }
        let mut text = serde_json::to_string_pretty(&c).expect("serializable");
        text.push('\n');
        Ok(text)
    }
}

fn canon_literal(text: &str, location: impl FnOnce() -> String) -> Result<String, DefError> {
    Ok(literal(&scalar(text, location)?))
}

impl StructureDef {
    fn canonicalize(&mut self) -> Result<(), DefError> {
        let s = self.to_structure_unchecked()?;
        let n = self.basis.len();
        self.mul = s.algebra_entries.iter().map(|e| (e.i, e.j, e.k, literal(&e.value))).collect();
        self.unit = self
            .unit
            .iter()
            .enumerate()
            .map(|(i, t)| canon_literal(t, || format!("unit[{i}]")))
            .collect::<Result<_, _>>()?;
        self.star = s.star.as_ref().map(sparse_square);
        self.coproduct = sparse_coproduct(&s.coproduct, n);
        if let Some(c) = &mut self.counit {
            *c = c
                .iter()
                .enumerate()
                .map(|(i, t)| canon_literal(t, || format!("counit[{i}]")))
                .collect::<Result<_, _>>()?;
        }
        self.antipode = s.antipode.as_ref().map(sparse_square);
        for b in &mut self.subalgebras {
            for (r, v) in b.basis.iter_mut().enumerate() {
                for (i, t) in v.iter_mut().enumerate() {
                    *t = canon_literal(t, || format!("subalgebras.{}[{r}][{i}]", b.name))?;
                }
            }
        }
        for p in &mut self.grouplike_projections {
            for (i, t) in p.vector.iter_mut().enumerate() {
                *t = canon_literal(t, || format!("grouplike_projections.{}[{i}]", p.name))?;
            }
        }
        Ok(())
    }

    fn to_structure_unchecked(&self) -> Result<Unchecked, DefError> {
        let n = self.basis.len();
        if n == 0 {
            return Err(DefError::Shape("empty basis".into()));
        }
        let mut table = std::collections::BTreeMap::new();
        for (pos, (i, j, k, v)) in self.mul.iter().enumerate() {
            for x in [i, j, k] {
                check_index(*x, n, "mul")?;
            }
            let v = scalar(v, || format!("mul[{pos}]"))?;
            let e = table.entry((*i, *j, *k)).or_insert_with(Scalar::zero);
            *e = &*e + &v;
        }
        let algebra_entries = table
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((i, j, k), value)| MulEntry { i, j, k, value })
            .collect();
        let unit = vector(&self.unit, n, "unit")?;
        let star = self.star.as_ref().map(|s| square(s, n, "star")).transpose()?;
        let mut coproduct = Matrix::zeros(n * n, n);
        for (pos, (a, i, j, v)) in self.coproduct.iter().enumerate() {
            for x in [a, i, j] {
                check_index(*x, n, "coproduct")?;
            }
            let v = scalar(v, || format!("coproduct[{pos}]"))?;
            let cur = coproduct.get(i * n + j, *a) + &v;
            coproduct.set(i * n + j, *a, cur);
        }
        let counit = self.counit.as_ref().map(|c| vector(c, n, "counit").map(Functional)).transpose()?;
        let antipode = self.antipode.as_ref().map(|s| square(s, n, "antipode")).transpose()?;
        Ok(Unchecked { algebra_entries, unit, star, coproduct, counit, antipode })
    }

    /// Parses every table and builds the algebra (checking the algebra laws).
    pub fn to_structure(&self) -> Result<Structure, DefError> {
        let n = self.basis.len();
        let u = self.to_structure_unchecked()?;
        let algebra = FinAlgebra::build(self.basis.clone(), &u.algebra_entries, Some(u.unit), u.star)?;
        let subalgebras = self
            .subalgebras
            .iter()
            .map(|b| {
                let vs = b
                    .basis
                    .iter()
                    .enumerate()
                    .map(|(r, v)| vector(v, n, &format!("subalgebras.{}[{r}]", b.name)))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok((b.name.clone(), vs))
            })
            .collect::<Result<_, DefError>>()?;
        let projections = self
            .grouplike_projections
            .iter()
            .map(|p| Ok((p.name.clone(), vector(&p.vector, n, &format!("grouplike_projections.{}", p.name))?)))
            .collect::<Result<_, DefError>>()?;
        Ok(Structure {
            algebra,
            coproduct: u.coproduct,
            counit: u.counit,
            antipode: u.antipode,
            subalgebras,
            projections,
        })
    }

    /// The definition of a verified quantum group, including its ε and S.
    pub fn from_qg(q: &QGData) -> Self {
        let a = q.algebra();
        let n = a.dim();
        StructureDef {
            basis: a.labels().to_vec(),
            mul: a.mul_entries().iter().map(|e| (e.i, e.j, e.k, literal(&e.value))).collect(),
            unit: q.one().iter().map(literal).collect(),
            star: a.star_matrix().map(sparse_square),
            coproduct: sparse_coproduct(q.coproduct(), n),
            counit: Some(q.counit().values().iter().map(literal).collect()),
            antipode: Some(sparse_square(q.antipode())),
            subalgebras: Vec::new(),
            grouplike_projections: Vec::new(),
        }
    }
}

struct Unchecked {
    algebra_entries: Vec<MulEntry>,
    unit: Vector,
    star: Option<Matrix>,
    coproduct: Matrix,
    counit: Option<Functional>,
    antipode: Option<Matrix>,
}

fn sparse_coproduct(d: &Matrix, n: usize) -> Vec<(usize, usize, usize, String)> {
    let mut out = Vec::new();
    for a in 0..n {
        for idx in 0..n * n {
            let v = d.get(idx, a);
            if !v.is_zero() {
                out.push((a, idx / n, idx % n, literal(v)));
            }
        }
    }
    out
}

/// A presented Hopf algebra. Words are generator names separated by spaces,
/// with `1` for the empty word; rules for declared inverses are implicit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDef {
    pub generators: Vec<GeneratorDef>,
    pub rules: Vec<RuleDef>,
    pub degree: usize,
    /// One entry per generator: `[coefficient, left word, right word]` terms.
    pub coproduct: Vec<TensorImage>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counit: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<WordImage>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDef {
    pub name: String,
    #[serde(default = "unit_weight", skip_serializing_if = "is_unit_weight")]
    pub weight: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<String>,
}

fn unit_weight() -> u32 {
    1
}

fn is_unit_weight(w: &u32) -> bool {
    *w == 1
}

/// `lhs → Σ coefficient·word`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleDef {
    pub lhs: String,
    pub rhs: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorImage {
    pub generator: String,
    pub terms: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordImage {
    pub generator: String,
    pub terms: Vec<(String, String)>,
}

impl PresentationDef {
    fn generators(&self) -> Result<Vec<Generator>, DefError> {
        let find = |name: &str| {
            self.generators
                .iter()
                .position(|g| g.name == name)
                .ok_or_else(|| DefError::Presentation(PresentationError::UnknownGenerator(name.to_string())))
        };
        self.generators
            .iter()
            .map(|g| {
                Ok(Generator {
                    name: g.name.clone(),
                    weight: g.weight,
                    star: g.star.as_deref().map(find).transpose()?,
                    inverse: g.inverse.as_deref().map(find).transpose()?,
                })
            })
            .collect()
    }

    fn words(p: &Presentation, terms: &[(String, String)], what: &str) -> Result<Lin<Word>, DefError> {
        let mut out = Lin::zero();
        for (pos, (c, w)) in terms.iter().enumerate() {
            out.add_term(p.parse_word(w)?, scalar(c, || format!("{what}[{pos}]"))?);
        }
        Ok(out)
    }

    /// Per-generator images, in generator order; every generator must appear once.
    fn ordered<'a, T>(
        p: &Presentation,
        items: &'a [T],
        name: impl Fn(&T) -> &str,
        what: &str,
    ) -> Result<Vec<&'a T>, DefError> {
        let mut slots: Vec<Option<&T>> = vec![None; p.generators().len()];
        for it in items {
            let g = p.gen_index(name(it)).ok_or_else(|| PresentationError::UnknownGenerator(name(it).to_string()))?;
            if slots[g].replace(it).is_some() {
                return Err(DefError::Shape(format!("{what}: generator {} listed twice", name(it))));
            }
        }
        slots
            .into_iter()
            .enumerate()
            .map(|(g, s)| s.ok_or_else(|| DefError::Shape(format!("{what}: no image for {}", p.generators()[g].name))))
            .collect()
    }

    /// The presentation alone (rules, partners, order), without Hopf data.
    pub fn to_presentation(&self, name: &str) -> Result<Presentation, DefError> {
        let gens = self.generators()?;
        let bare = Presentation::new(name, gens.clone(), Vec::new(), self.degree)?;
        let rules = self
            .rules
            .iter()
            .enumerate()
            .map(|(i, r)| {
                Ok(Rule { lhs: bare.parse_word(&r.lhs)?, rhs: Self::words(&bare, &r.rhs, &format!("rules[{i}]"))? })
            })
            .collect::<Result<Vec<_>, DefError>>()?;
        Ok(Presentation::new(name, gens, rules, self.degree)?)
    }

    /// Parses every table and solves the counit; the Hopf laws are not checked
    /// (see [`HopfPresentation::run_checks`]).
    pub fn to_hopf(&self, name: &str) -> Result<HopfPresentation, DefError> {
        let p = self.to_presentation(name)?;
        let coproduct = Self::ordered(&p, &self.coproduct, |t| &t.generator, "coproduct")?
            .into_iter()
            .map(|t| {
                let mut out = Lin::zero();
                for (pos, (c, u, v)) in t.terms.iter().enumerate() {
                    let c = scalar(c, || format!("coproduct.{}[{pos}]", t.generator))?;
                    out.add_term((p.parse_word(u)?, p.parse_word(v)?), c);
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>, DefError>>()?;
        let counit = self
            .counit
            .as_ref()
            .map(|c| {
                Self::ordered(&p, c, |t| &t.0, "counit")?
                    .into_iter()
                    .map(|(g, v)| scalar(v, || format!("counit.{g}")))
                    .collect::<Result<Vec<_>, DefError>>()
            })
            .transpose()?;
        let antipode = self
            .antipode
            .as_ref()
            .map(|s| {
                Self::ordered(&p, s, |t| &t.generator, "antipode")?
                    .into_iter()
                    .map(|t| Self::words(&p, &t.terms, &format!("antipode.{}", t.generator)))
                    .collect::<Result<Vec<_>, DefError>>()
            })
            .transpose()?;
        Ok(HopfPresentation::assemble(p, coproduct, counit, antipode)?)
    }

    fn canonicalize(&mut self) -> Result<(), DefError> {
        let p = self.to_presentation("canonical")?;
        let word = |w: &str| -> Result<String, DefError> { Ok(p.show_word(&p.parse_word(w)?)) };
        for (i, r) in self.rules.iter_mut().enumerate() {
            r.lhs = word(&r.lhs)?;
            for (pos, (c, w)) in r.rhs.iter_mut().enumerate() {
                *c = canon_literal(c, || format!("rules[{i}][{pos}]"))?;
                *w = word(w)?;
            }
        }
        for t in &mut self.coproduct {
            for (pos, (c, u, v)) in t.terms.iter_mut().enumerate() {
                *c = canon_literal(c, || format!("coproduct.{}[{pos}]", t.generator))?;
                *u = word(u)?;
                *v = word(v)?;
            }
        }
        if let Some(cs) = &mut self.counit {
            for (g, v) in cs.iter_mut() {
                *v = canon_literal(v, || format!("counit.{g}"))?;
            }
        }
        if let Some(s) = &mut self.antipode {
            for t in s.iter_mut() {
                for (pos, (c, w)) in t.terms.iter_mut().enumerate() {
                    *c = canon_literal(c, || format!("antipode.{}[{pos}]", t.generator))?;
                    *w = word(w)?;
                }
            }
        }
        Ok(())
    }
}
