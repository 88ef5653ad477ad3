use std::collections::BTreeMap;

use thiserror::Error;

use super::linalg::{axpy, dot, is_zero_vec, unit_vec, zero_vec, Matrix, Vector};
use crate::scalars::Scalar;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("associativity fails at (e{i}·e{j})·e{k} != e{i}·(e{j}·e{k})")]
    Associativity { i: usize, j: usize, k: usize },
    #[error("unit law fails at e{0}")]
    UnitLaw(usize),
    #[error("involution law `{law}` fails at e{i}, e{j}")]
    Involution { law: &'static str, i: usize, j: usize },
    #[error("algebra is degenerate: {0}")]
    Degenerate(String),
}

/// Sparse structure constants: entry `i·dim + j` lists the nonzero `(k, m[i][j][k])`.
type Products = Vec<Vec<(usize, Scalar)>>;

/// A finite-dimensional (optionally unital, optionally *-) algebra over ℚ(i)(s).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAlgebra {
    labels: Vec<String>,
    products: Products,
    unit: Option<Vector>,
    /// Column `j` holds the coordinates of `e_j*`.
    star: Option<Matrix>,
}

/// One structure constant `e_i·e_j ∋ value·e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: Scalar,
}

impl FinAlgebra {
    /// Builds an algebra from sparse structure constants and checks every
    /// algebra law (associativity, unit, involution, non-degeneracy).
    pub fn build(
        labels: Vec<String>,
        mul: &[MulEntry],
        unit: Option<Vector>,
        star: Option<Matrix>,
    ) -> Result<Self, AlgebraError> {
        let n = labels.len();
        if n == 0 {
            return Err(AlgebraError::Shape("dimension must be positive".into()));
        }
        let mut table: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); n * n];
        for e in mul {
            if e.i >= n || e.j >= n || e.k >= n {
                return Err(AlgebraError::Shape(format!("index ({}, {}, {}) out of range", e.i, e.j, e.k)));
            }
            let slot = table[e.i * n + e.j].entry(e.k).or_insert_with(Scalar::zero);
            *slot = &*slot + &e.value;
        }
        let products = table.into_iter().map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect()).collect();
        if unit.as_ref().is_some_and(|u| u.len() != n) {
            return Err(AlgebraError::Shape("unit length".into()));
        }
        if star.as_ref().is_some_and(|s| s.rows() != n || s.cols() != n) {
            return Err(AlgebraError::Shape("star matrix size".into()));
        }
        let alg = FinAlgebra { labels, products, unit, star };
        alg.verify()?;
        Ok(alg)
    }

    /// Builds without verification; used for constructions whose laws follow
    /// from verified inputs (tensor products).
    fn assemble(labels: Vec<String>, products: Products, unit: Option<Vector>, star: Option<Matrix>) -> Self {
        FinAlgebra { labels, products, unit, star }
    }

    pub fn verify(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = self.basis_product_vec(i, j);
                for k in 0..n {
                    let left = self.mul_right_basis(&ij, k);
                    let jk = self.basis_product_vec(j, k);
                    let right = self.mul_left_basis(i, &jk);
                    if left != right {
                        return Err(AlgebraError::Associativity { i, j, k });
                    }
                }
            }
        }
        if let Some(u) = &self.unit {
            for i in 0..n {
                let e = unit_vec(n, i);
                if self.mul(u, &e) != e || self.mul(&e, u) != e {
                    return Err(AlgebraError::UnitLaw(i));
                }
            }
        }
        if self.star.is_some() {
            for i in 0..n {
                let ei = unit_vec(n, i);
                let back = self.star_vec(&self.star_vec(&ei).unwrap()).unwrap();
                if back != ei {
                    return Err(AlgebraError::Involution { law: "(x*)* = x", i, j: i });
                }
                for j in 0..n {
                    let ej = unit_vec(n, j);
                    let lhs = self.star_vec(&self.basis_product_vec(i, j)).unwrap();
                    let rhs = self.mul(&self.star_vec(&ej).unwrap(), &self.star_vec(&ei).unwrap());
                    if lhs != rhs {
                        return Err(AlgebraError::Involution { law: "(xy)* = y*x*", i, j });
                    }
                }
            }
        }
        if self.unit.is_none() {
            self.check_nondegenerate()?;
        }
        Ok(())
    }

    fn check_nondegenerate(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        // x ↦ (x e_b)_b and x ↦ (e_b x)_b must both be injective.
        let mut right_rows = Vec::new();
        let mut left_rows = Vec::new();
        for b in 0..n {
            let rb = self.right_mult(&unit_vec(n, b));
            let lb = self.left_mult(&unit_vec(n, b));
            for r in 0..n {
                right_rows.push(rb.row(r).to_vec());
                left_rows.push(lb.row(r).to_vec());
            }
        }
        if Matrix::from_rows(right_rows).rank() < n {
            return Err(AlgebraError::Degenerate("some nonzero a has a·b = 0 for all b".into()));
        }
        if Matrix::from_rows(left_rows).rank() < n {
            return Err(AlgebraError::Degenerate("some nonzero a has b·a = 0 for all b".into()));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> Option<&Vector> {
        self.unit.as_ref()
    }

    pub fn star_matrix(&self) -> Option<&Matrix> {
        self.star.as_ref()
    }

    pub fn has_star(&self) -> bool {
        self.star.is_some()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.products[i * self.dim() + j]
    }

    pub fn basis_product_vec(&self, i: usize, j: usize) -> Vector {
        let mut v = zero_vec(self.dim());
        for (k, c) in self.basis_product(i, j) {
            v[*k] = c.clone();
        }
        v
    }

    /// All structure constants, sorted by `(i, j, k)`.
    pub fn mul_entries(&self) -> Vec<MulEntry> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, v) in self.basis_product(i, j) {
                    out.push(MulEntry { i, j, k: *k, value: v.clone() });
                }
            }
        }
        out
    }

    fn mul_right_basis(&self, x: &[Scalar], k: usize) -> Vector {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (l, v) in self.basis_product(i, k) {
                out[*l] = &out[*l] + &(c * v);
            }
        }
        out
    }

    fn mul_left_basis(&self, i: usize, x: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (j, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (l, v) in self.basis_product(i, j) {
                out[*l] = &out[*l] + &(c * v);
            }
        }
        out
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, v) in self.basis_product(i, j) {
                    out[*k] = &out[*k] + &(&ab * v);
                }
            }
        }
        out
    }

    /// `x*`, when the algebra carries an involution.
    pub fn star_vec(&self, x: &[Scalar]) -> Option<Vector> {
        let s = self.star.as_ref()?;
        let conj: Vector = x.iter().map(Scalar::conj).collect();
        Some(s.apply(&conj))
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left_mult(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.mul(x, &unit_vec(n, j))).collect();
        Matrix::from_cols(n, &cols)
    }

    /// Matrix of `y ↦ y·x`.
    pub fn right_mult(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.mul(&unit_vec(n, j), x)).collect();
        Matrix::from_cols(n, &cols)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// The algebraic tensor product `A ⊙ B`, basis `e_i ⊗ f_k` at index `i·dim(B) + k`.
    pub fn tensor(&self, other: &FinAlgebra) -> FinAlgebra {
        let (n, m) = (self.dim(), other.dim());
        let labels = self.labels.iter().flat_map(|a| other.labels.iter().map(move |b| format!("{a}⊗{b}"))).collect();
        let mut products = vec![Vec::new(); n * m * n * m];
        for i in 0..n {
            for k in 0..m {
                for j in 0..n {
                    for l in 0..m {
                        let mut entry = Vec::new();
                        for (p, a) in self.basis_product(i, j) {
                            for (r, b) in other.basis_product(k, l) {
                                entry.push((p * m + r, a * b));
                            }
                        }
                        entry.sort_by_key(|(idx, _)| *idx);
                        products[(i * m + k) * (n * m) + (j * m + l)] = entry;
                    }
                }
            }
        }
        let unit = match (&self.unit, &other.unit) {
            (Some(u), Some(v)) => Some(outer(u, v)),
            _ => None,
        };
        let star = match (&self.star, &other.star) {
            (Some(s), Some(t)) => Some(s.kron(t)),
            _ => None,
        };
        FinAlgebra::assemble(labels, products, unit, star)
    }

    /// The one-dimensional *-algebra ℂ.
    pub fn scalars() -> FinAlgebra {
        FinAlgebra::assemble(
            vec!["1".into()],
            vec![vec![(0, Scalar::one())]],
            Some(vec![Scalar::one()]),
            Some(Matrix::identity(1)),
        )
    }
}

/// `x ⊗ y` as a coordinate vector of length `len(x)·len(y)`.
pub fn outer(x: &[Scalar], y: &[Scalar]) -> Vector {
    let mut out = zero_vec(x.len() * y.len());
    for (i, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (k, b) in y.iter().enumerate() {
            if !b.is_zero() {
                out[i * y.len() + k] = a * b;
            }
        }
    }
    out
}

/// Product in `A ⊙ B` without materializing the tensor algebra.
pub fn tensor_mul(a: &FinAlgebra, b: &FinAlgebra, x: &[Scalar], y: &[Scalar]) -> Vector {
    let (n, m) = (a.dim(), b.dim());
    let mut out = zero_vec(n * m);
    let nz = |v: &[Scalar]| -> Vec<(usize, usize, Scalar)> {
        v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(idx, c)| (idx / m, idx % m, c.clone())).collect()
    };
    let xs = nz(x);
    let ys = nz(y);
    for (i, k, cx) in &xs {
        for (j, l, cy) in &ys {
            let c = cx * cy;
            for (p, u) in a.basis_product(*i, *j) {
                let cu = &c * u;
                for (r, w) in b.basis_product(*k, *l) {
                    let idx = p * m + r;
                    out[idx] = &out[idx] + &(&cu * w);
                }
            }
        }
    }
    out
}

/// `(f ⊗ g)(x)` for `x ∈ V ⊗ W` with `f: V → V'`, `g: W → W'` (both linear).
pub fn apply_tensor(f: &Matrix, g: &Matrix, x: &[Scalar]) -> Vector {
    let (n, m) = (f.cols(), g.cols());
    assert_eq!(x.len(), n * m);
    let (n2, m2) = (f.rows(), g.rows());
    let fcols = f.columns();
    let gcols = g.columns();
    let mut out = zero_vec(n2 * m2);
    for (idx, c) in x.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (i, k) = (idx / m, idx % m);
        let piece = outer(&fcols[i], &gcols[k]);
        axpy(&mut out, c, &piece);
    }
    out
}

/// `(ω ⊗ ι)(x)` for `x ∈ V ⊗ W`, `ω` a functional on `V`.
pub fn slice_left(omega: &[Scalar], x: &[Scalar], m: usize) -> Vector {
    let mut out = zero_vec(m);
    for (idx, c) in x.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let w = &omega[idx / m];
        if !w.is_zero() {
            out[idx % m] = &out[idx % m] + &(c * w);
        }
    }
    out
}

/// `(ι ⊗ ω)(x)` for `x ∈ V ⊗ W`, `ω` a functional on `W`.
pub fn slice_right(omega: &[Scalar], x: &[Scalar], n: usize) -> Vector {
    let m = omega.len();
    let mut out = zero_vec(n);
    for (idx, c) in x.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let w = &omega[idx % m];
        if !w.is_zero() {
            out[idx / m] = &out[idx / m] + &(c * w);
        }
    }
    out
}

/// The flip `V ⊗ W → W ⊗ V`.
pub fn flip(x: &[Scalar], n: usize, m: usize) -> Vector {
    let mut out = zero_vec(n * m);
    for (idx, c) in x.iter().enumerate() {
        out[(idx % m) * n + idx / m] = c.clone();
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Linearity {
    Linear,
    ConjugateLinear,
}

/// A linear or conjugate-linear map between coordinate spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    pub matrix: Matrix,
    pub linearity: Linearity,
}

impl LinMap {
    pub fn linear(matrix: Matrix) -> Self {
        LinMap { matrix, linearity: Linearity::Linear }
    }

    pub fn conjugate_linear(matrix: Matrix) -> Self {
        LinMap { matrix, linearity: Linearity::ConjugateLinear }
    }

    pub fn identity(n: usize) -> Self {
        LinMap::linear(Matrix::identity(n))
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, x: &[Scalar]) -> Vector {
        match self.linearity {
            Linearity::Linear => self.matrix.apply(x),
            Linearity::ConjugateLinear => {
                let c: Vector = x.iter().map(Scalar::conj).collect();
                self.matrix.apply(&c)
            }
        }
    }

    /// `self ∘ other`; `None` on a dimension mismatch.
    pub fn compose(&self, other: &LinMap) -> Option<LinMap> {
        if self.source_dim() != other.target_dim() {
            return None;
        }
        let (matrix, linearity) = match (self.linearity, other.linearity) {
            (Linearity::Linear, l) => (self.matrix.mul(&other.matrix), l),
            (Linearity::ConjugateLinear, Linearity::Linear) => {
                (self.matrix.mul(&other.matrix.conj()), Linearity::ConjugateLinear)
            }
            (Linearity::ConjugateLinear, Linearity::ConjugateLinear) => {
                (self.matrix.mul(&other.matrix.conj()), Linearity::Linear)
            }
        };
        Some(LinMap { matrix, linearity })
    }
}

/// A linear functional, stored as its values on the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional(pub Vector);

impl Functional {
    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        dot(&self.0, x)
    }

    pub fn values(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.0)
    }

    /// `self ∘ f` for a linear map `f`.
    pub fn compose(&self, f: &Matrix) -> Functional {
        Functional(f.apply_left(&self.0))
    }

    pub fn scale(&self, c: &Scalar) -> Functional {
        Functional(self.0.iter().map(|x| x * c).collect())
    }
}
