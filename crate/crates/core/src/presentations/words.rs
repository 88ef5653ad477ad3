//! Words in generators and finite linear combinations of monomials.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;

use crate::scalars::Scalar;

/// Index of a generator in its presentation.
pub type Gen = usize;

pub type Word = Vec<Gen>;

/// A monomial of the free algebra, a tensor power of it, or the empty
/// monomial of the ground field.
pub trait Monomial: Clone + Ord + Hash + Debug {
    fn unit() -> Self;
    fn concat(&self, other: &Self) -> Self;
    /// Largest word length among the tensor legs.
    fn degree(&self) -> usize;
}

impl Monomial for Word {
    fn unit() -> Self {
        Vec::new()
    }

    fn concat(&self, other: &Self) -> Self {
        let mut w = self.clone();
        w.extend_from_slice(other);
        w
    }

    fn degree(&self) -> usize {
        self.len()
    }
}

impl Monomial for () {
    fn unit() -> Self {}

    fn concat(&self, _: &Self) -> Self {}

    fn degree(&self) -> usize {
        0
    }
}

impl Monomial for (Word, Word) {
    fn unit() -> Self {
        (Vec::new(), Vec::new())
    }

    fn concat(&self, o: &Self) -> Self {
        (self.0.concat(&o.0), self.1.concat(&o.1))
    }

    fn degree(&self) -> usize {
        self.0.len().max(self.1.len())
    }
}

impl Monomial for (Word, Word, Word) {
    fn unit() -> Self {
        (Vec::new(), Vec::new(), Vec::new())
    }

    fn concat(&self, o: &Self) -> Self {
        (self.0.concat(&o.0), self.1.concat(&o.1), self.2.concat(&o.2))
    }

    fn degree(&self) -> usize {
        self.0.len().max(self.1.len()).max(self.2.len())
    }
}

pub type TensorWord = (Word, Word);

/// A finite linear combination with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lin<M: Monomial>(BTreeMap<M, Scalar>);

impl<M: Monomial> Default for Lin<M> {
    fn default() -> Self {
        Lin(BTreeMap::new())
    }
}

impl<M: Monomial> Lin<M> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(M::unit(), Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::term(M::unit(), c)
    }

    pub fn monomial(m: M) -> Self {
        Self::term(m, Scalar::one())
    }

    pub fn term(m: M, c: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(m, c);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (M, Scalar)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn add_term(&mut self, m: M, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let sum = match self.0.get(&m) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.0.remove(&m);
        } else {
            self.0.insert(m, sum);
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        for (m, v) in &other.0 {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one());
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Lin(self.0.iter().map(|(m, v)| (m.clone(), v * c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.0 {
            for (b, y) in &other.0 {
                out.add_term(a.concat(b), x * y);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, m: &M) -> Scalar {
        self.0.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&M, &Scalar)> {
        self.0.iter()
    }

    pub fn degree(&self) -> usize {
        self.0.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn map_monomials<N: Monomial>(&self, f: impl Fn(&M) -> N) -> Lin<N> {
        Lin::from_terms(self.0.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// The single term `(m, c)`, if there is exactly one.
    pub fn as_single(&self) -> Option<(&M, &Scalar)> {
        if self.0.len() == 1 {
            self.0.iter().next()
        } else {
            None
        }
    }
}

impl Lin<()> {
    pub fn value(&self) -> Scalar {
        self.coeff(&())
    }
}

/// `Σ c·(u ⊗ v)` with `u` from `a` and `v` from `b`.
pub fn tensor(a: &Lin<Word>, b: &Lin<Word>) -> Lin<TensorWord> {
    let mut out = Lin::zero();
    for (u, x) in a.iter() {
        for (v, y) in b.iter() {
            out.add_term((u.clone(), v.clone()), x * y);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_removes_terms() {
        let mut x = Lin::monomial(vec![0, 1]);
        x.add_term(vec![0, 1], -Scalar::one());
        assert!(x.is_zero());
        assert_eq!(Lin::<Word>::one().mul(&Lin::monomial(vec![2])), Lin::monomial(vec![2]));
    }

    #[test]
    fn tensor_words_multiply_legwise() {
        let a = Lin::monomial((vec![0], vec![1]));
        let b = Lin::monomial((vec![2], vec![]));
        assert_eq!(a.mul(&b), Lin::monomial((vec![0, 2], vec![1])));
        assert_eq!(a.mul(&b).degree(), 2);
    }
}
