//! A bilinear pairing between two presented Hopf algebras, extended from a
//! table on generators with `⟨XY, c⟩ = ⟨X⊗Y, Δ(c)⟩` and `⟨X, cd⟩ = ⟨Δ(X), c⊗d⟩`.

use std::collections::HashMap;

use super::morphism::{DiagonalAction, HopfPresentation};
use super::words::{Gen, Lin, Monomial, TensorWord, Word};
use super::PresentationError;
use crate::finalg::{LinearSystem, Matrix};
use crate::scalars::Scalar;

/// Which side a product is split on first when both sides have length ≥ 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SplitOrder {
    LeftFirst,
    RightFirst,
}

/// How a row of the generator table was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowSource {
    Given,
    /// From `⟨g·g⁻¹, c⟩ = ε(c)` on the right generators.
    Inverse,
    /// From `⟨g*, c⟩ = conj⟨g, S(c)*⟩`.
    Star,
}

#[derive(Clone, Debug)]
pub struct Pairing {
    pub left: HopfPresentation,
    pub right: HopfPresentation,
    table: Vec<Vec<Scalar>>,
    sources: Vec<RowSource>,
    degree: usize,
    memo: HashMap<(SplitOrder, Word, Word), Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingCertificate {
    pub degree: usize,
    /// `⟨Δ(X), x⊗y⟩ = ⟨X, xy⟩` instances checked.
    pub coproduct_side: usize,
    /// `⟨XY, c⟩ = ⟨X⊗Y, Δ(c)⟩` instances checked.
    pub product_side: usize,
    pub antipode: usize,
    pub order_independence: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaCertificate {
    pub degree: usize,
    pub words: usize,
    /// Normal words `c` with `(ε∘κ)(c) ≠ 0`, with that value.
    pub nonzero: Vec<(String, Scalar)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GramRank {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
}

impl Pairing {
    /// `given` lists `(left generator, right generator, value)`; every given
    /// left generator needs a full row. Rows of inverses and star partners of
    /// complete rows are derived; anything still missing is an error.
    pub fn new(
        left: HopfPresentation,
        right: HopfPresentation,
        given: &[(Gen, Gen, Scalar)],
        degree: usize,
    ) -> Result<Self, PresentationError> {
        let (nl, nr) = (left.algebra.generators().len(), right.algebra.generators().len());
        let mut rows: Vec<Option<Vec<Option<Scalar>>>> = vec![None; nl];
        for (g, h, v) in given {
            if *g >= nl || *h >= nr {
                return Err(PresentationError::Invalid("pairing entry refers to an unknown generator".into()));
            }
            rows[*g].get_or_insert_with(|| vec![None; nr])[*h] = Some(v.clone());
        }
        let mut table: Vec<Option<Vec<Scalar>>> = Vec::with_capacity(nl);
        let mut sources = vec![RowSource::Given; nl];
        for (g, row) in rows.into_iter().enumerate() {
            table.push(match row {
                None => None,
                Some(r) => Some(r.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| {
                    PresentationError::Invalid(format!(
                        "incomplete pairing row for {}",
                        left.algebra.generators()[g].name
                    ))
                })?),
            });
        }
        loop {
            let mut progress = false;
            for g in 0..nl {
                if table[g].is_some() {
                    continue;
                }
                let gen = &left.algebra.generators()[g];
                if let Some(h) = gen.inverse.filter(|&h| table[h].is_some()) {
                    table[g] = Some(inverse_row(&left, &right, table[h].as_ref().unwrap(), h, g)?);
                    sources[g] = RowSource::Inverse;
                    progress = true;
                } else if let Some(h) = gen.star.filter(|&h| table[h].is_some()) {
                    table[g] = Some(star_row(&left, &right, table[h].as_ref().unwrap(), h)?);
                    sources[g] = RowSource::Star;
                    progress = true;
                }
            }
            if !progress {
                break;
            }
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(g, r)| {
                r.ok_or_else(|| {
                    PresentationError::Invalid(format!("no pairing row for {}", left.algebra.generators()[g].name))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Pairing { left, right, table, sources, degree, memo: HashMap::new() })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn set_degree(&mut self, degree: usize) {
        self.degree = degree;
        self.left = self.left.with_degree(degree.max(2));
        self.right = self.right.with_degree(degree.max(2));
    }

    pub fn entry(&self, g: Gen, h: Gen) -> &Scalar {
        &self.table[g][h]
    }

    pub fn row_source(&self, g: Gen) -> RowSource {
        self.sources[g]
    }

    /// The full generator table as `(left name, right name, value)`.
    pub fn table_entries(&self) -> Vec<(String, String, Scalar)> {
        let (l, r) = (self.left.algebra.generators(), self.right.algebra.generators());
        let mut out = Vec::new();
        for (g, row) in self.table.iter().enumerate() {
            for (h, v) in row.iter().enumerate() {
                out.push((l[g].name.clone(), r[h].name.clone(), v.clone()));
            }
        }
        out
    }

    pub fn pair(&mut self, x: &[Gen], c: &[Gen]) -> Result<Scalar, PresentationError> {
        self.pair_in_order(SplitOrder::LeftFirst, x, c)
    }

    /// `⟨x, c⟩` for words, recursing on the first letter of one side.
    pub fn pair_in_order(&mut self, order: SplitOrder, x: &[Gen], c: &[Gen]) -> Result<Scalar, PresentationError> {
        if x.len() > self.degree || c.len() > self.degree {
            let word =
                if x.len() > self.degree { self.left.algebra.show_word(x) } else { self.right.algebra.show_word(c) };
            return Err(PresentationError::DegreeExceeded { bound: self.degree, word });
        }
        let key = (order, x.to_vec(), c.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let value = if x.is_empty() {
            self.right.counit_word(c)
        } else if c.is_empty() {
            self.left.counit_word(x)
        } else if x.len() == 1 && c.len() == 1 {
            self.table[x[0]][c[0]].clone()
        } else {
            let split_left = match order {
                SplitOrder::LeftFirst => x.len() >= 2,
                SplitOrder::RightFirst => c.len() < 2,
            };
            let mut acc = Scalar::zero();
            if split_left {
                for ((u, v), k) in self.right.coproduct_word(c).iter() {
                    let a = self.pair_in_order(order, &x[..1], u)?;
                    if !a.is_zero() {
                        acc = &acc + &(&(k * &a) * &self.pair_in_order(order, &x[1..], v)?);
                    }
                }
            } else {
                for ((u, v), k) in self.left.coproduct_word(x).iter() {
                    let a = self.pair_in_order(order, u, &c[..1])?;
                    if !a.is_zero() {
                        acc = &acc + &(&(k * &a) * &self.pair_in_order(order, v, &c[1..])?);
                    }
                }
            }
            acc
        };
        self.memo.insert(key, value.clone());
        Ok(value)
    }

    pub fn pair_lin(&mut self, x: &Lin<Word>, c: &Lin<Word>) -> Result<Scalar, PresentationError> {
        let mut acc = Scalar::zero();
        for (u, a) in x.iter() {
            for (v, b) in c.iter() {
                acc = &acc + &(&(a * b) * &self.pair(u, v)?);
            }
        }
        Ok(acc)
    }

    /// `⟨X₁⊗X₂, C₁⊗C₂⟩ = ⟨X₁, C₁⟩⟨X₂, C₂⟩`, extended bilinearly.
    pub fn pair_tensor(&mut self, x: &Lin<TensorWord>, c: &Lin<TensorWord>) -> Result<Scalar, PresentationError> {
        let mut acc = Scalar::zero();
        for ((x1, x2), a) in x.iter() {
            for ((c1, c2), b) in c.iter() {
                let first = self.pair(x1, c1)?;
                if first.is_zero() {
                    continue;
                }
                acc = &acc + &(&(&(a * b) * &first) * &self.pair(x2, c2)?);
            }
        }
        Ok(acc)
    }

    fn mismatch(axiom: &'static str, witness: String, lhs: Scalar, rhs: Scalar) -> PresentationError {
        PresentationError::PairingMismatch { axiom, witness, lhs: Box::new(lhs), rhs: Box::new(rhs) }
    }

    /// Checks both product/coproduct compatibilities on all normal words up to
    /// the degree bound, the antipode compatibility on generators, and that
    /// both recursion orders agree.
    pub fn check_axioms(&mut self) -> Result<PairingCertificate, PresentationError> {
        let d = self.degree;
        let (lw, rw) = (self.left.algebra.normal_words(d), self.right.algebra.normal_words(d));
        let (nl, nr) = (self.left.algebra.generators().len(), self.right.algebra.generators().len());
        let mut cert =
            PairingCertificate { degree: d, coproduct_side: 0, product_side: 0, antipode: 0, order_independence: 0 };
        for g in 0..nl {
            let dg = self.left.coproduct.images[g].clone();
            for x in &rw {
                for y in rw.iter().filter(|y| x.len() + y.len() <= d) {
                    let lhs = self.pair_tensor(&dg, &Lin::monomial((x.clone(), y.clone())))?;
                    let xy = self.right.algebra.nf_word(&x.concat(y))?;
                    let rhs = self.pair_lin(&Lin::monomial(vec![g]), &xy)?;
                    if lhs != rhs {
                        let (l, r) = (&self.left.algebra, &self.right.algebra);
                        let witness =
                            format!("X = {}, x = {}, y = {}", l.show_word(&[g]), r.show_word(x), r.show_word(y));
                        return Err(Self::mismatch("⟨Δ(X), x⊗y⟩ = ⟨X, xy⟩", witness, lhs, rhs));
                    }
                    cert.coproduct_side += 1;
                }
            }
        }
        for g in 0..nl {
            for h in 0..nl {
                let xy = self.left.algebra.nf_word(&[g, h])?;
                for c in &rw {
                    let lhs = self.pair_lin(&xy, &Lin::monomial(c.clone()))?;
                    let gh = Lin::monomial((vec![g], vec![h]));
                    let dc = self.right.coproduct_word(c);
                    let rhs = self.pair_tensor(&gh, &dc)?;
                    if lhs != rhs {
                        let (l, r) = (&self.left.algebra, &self.right.algebra);
                        let witness =
                            format!("X = {}, Y = {}, c = {}", l.show_word(&[g]), l.show_word(&[h]), r.show_word(c));
                        return Err(Self::mismatch("⟨XY, c⟩ = ⟨X⊗Y, Δ(c)⟩", witness, lhs, rhs));
                    }
                    cert.product_side += 1;
                }
            }
        }
        if let (Some(s0), Some(s)) = (self.left.antipode.clone(), self.right.antipode.clone()) {
            for g in 0..nl {
                for h in 0..nr {
                    let lhs = self.pair_lin(&s0.images[g], &Lin::monomial(vec![h]))?;
                    let rhs = self.pair_lin(&Lin::monomial(vec![g]), &s.images[h])?;
                    if lhs != rhs {
                        let witness = format!(
                            "X = {}, c = {}",
                            self.left.algebra.show_word(&[g]),
                            self.right.algebra.show_word(&[h])
                        );
                        return Err(Self::mismatch("⟨S(X), c⟩ = ⟨X, S(c)⟩", witness, lhs, rhs));
                    }
                    cert.antipode += 1;
                }
            }
        }
        for x in &lw {
            for c in &rw {
                let a = self.pair_in_order(SplitOrder::LeftFirst, x, c)?;
                let b = self.pair_in_order(SplitOrder::RightFirst, x, c)?;
                if a != b {
                    let witness =
                        format!("X = {}, c = {}", self.left.algebra.show_word(x), self.right.algebra.show_word(c));
                    return Err(Self::mismatch("recursion-order independence", witness, a, b));
                }
                cert.order_independence += 1;
            }
        }
        Ok(cert)
    }

    /// Builds `κ = σ⁻¹∘S²` on the right algebra from the antipode and the
    /// diagonal action `sigma`, and checks `(ε∘κ)(c) = ⟨element, c⟩` for every
    /// normal word `c` up to `degree`.
    pub fn kappa_functional_check(
        &mut self,
        sigma: &DiagonalAction,
        element: &[Gen],
        degree: usize,
    ) -> Result<KappaCertificate, PresentationError> {
        let s = self
            .right
            .antipode
            .clone()
            .ok_or_else(|| PresentationError::Invalid("right side has no antipode".into()))?;
        let saved = self.degree;
        self.set_degree(degree.max(element.len()));
        let result = (|| {
            let b = self.right.algebra.clone();
            let sigma_inv = sigma.inverse();
            let mut cert = KappaCertificate { degree, words: 0, nonzero: Vec::new() };
            for c in b.normal_words(degree) {
                let once = b.normal_form(&s.apply_word(&c))?;
                let twice = b.normal_form(&s.apply(&once))?;
                let kappa = sigma_inv.apply(&twice);
                let eps: Scalar = kappa.iter().map(|(w, k)| k * &self.right.counit_word(w)).sum();
                let paired = self.pair(element, &c)?;
                if eps != paired {
                    return Err(Self::mismatch("(ε∘κ)(c) = ⟨δ, c⟩", format!("c = {}", b.show_word(&c)), eps, paired));
                }
                if !eps.is_zero() {
                    cert.nonzero.push((b.show_word(&c), eps));
                }
                cert.words += 1;
            }
            Ok(cert)
        })();
        self.set_degree(saved);
        result
    }

    /// Rank of the matrix `⟨x, c⟩` over normal words of length at most `degree`
    /// on both sides.
    pub fn gram_rank(&mut self, degree: usize) -> Result<GramRank, PresentationError> {
        let (lw, rw) = (self.left.algebra.normal_words(degree), self.right.algebra.normal_words(degree));
        let mut rows = Vec::with_capacity(lw.len());
        for x in &lw {
            rows.push(rw.iter().map(|c| self.pair(x, c)).collect::<Result<Vec<_>, _>>()?);
        }
        let m = Matrix::from_rows(rows);
        Ok(GramRank { rows: lw.len(), cols: rw.len(), rank: m.rank() })
    }
}

/// Pairing of a left generator row with a word of length ≤ 1 on the right.
fn row_value(
    left: &HopfPresentation,
    row: &[Scalar],
    g: Gen,
    w: &[Gen],
    what: &str,
) -> Result<Scalar, PresentationError> {
    match w.len() {
        0 => Ok(left.counit_word(&[g])),
        1 => Ok(row[w[0]].clone()),
        _ => Err(PresentationError::Invalid(format!("cannot derive the pairing row of {what}: a leg has length > 1"))),
    }
}

fn inverse_row(
    left: &HopfPresentation,
    right: &HopfPresentation,
    known: &[Scalar],
    h: Gen,
    g: Gen,
) -> Result<Vec<Scalar>, PresentationError> {
    let nr = right.algebra.generators().len();
    let name = left.algebra.generators()[g].name.clone();
    // ⟨h·g, c⟩ = Σ ⟨h, u⟩⟨g, v⟩ over Δ(c) = ε(c), linear in the unknown row of g.
    let mut sys = LinearSystem::new(nr);
    for c in 0..nr {
        let mut coeffs = vec![Scalar::zero(); nr];
        let mut rhs = right.counit_word(&[c]);
        for ((u, v), k) in right.coproduct.images[c].iter() {
            let a = &row_value(left, known, h, u, &name)? * k;
            match v.len() {
                0 => rhs = &rhs - &(&a * &left.counit_word(&[g])),
                1 => coeffs[v[0]] = &coeffs[v[0]] + &a,
                _ => return Err(PresentationError::Invalid(format!("cannot derive the pairing row of {name}"))),
            }
        }
        sys.push(coeffs, rhs);
    }
    sys.solve().unique().cloned().ok_or_else(|| {
        PresentationError::Invalid(format!("the pairing row of {name} is not determined by invertibility"))
    })
}

fn star_row(
    left: &HopfPresentation,
    right: &HopfPresentation,
    known: &[Scalar],
    h: Gen,
) -> Result<Vec<Scalar>, PresentationError> {
    let s = right
        .antipode
        .as_ref()
        .ok_or_else(|| PresentationError::Invalid("star rows need the right antipode".into()))?;
    let name = &left.algebra.generators()[h].name;
    (0..right.algebra.generators().len())
        .map(|c| {
            let sc = right
                .algebra
                .star(&s.images[c])
                .ok_or_else(|| PresentationError::Invalid("star rows need a star on the right".into()))?;
            let mut acc = Scalar::zero();
            for (w, k) in sc.iter() {
                acc = &acc + &(k * &row_value(left, known, h, w, name)?);
            }
            Ok(acc.conj())
        })
        .collect()
}
