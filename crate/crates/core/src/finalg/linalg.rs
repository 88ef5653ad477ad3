//! Dense matrices over [`Scalar`] and exact row reduction.

use std::fmt;

use crate::scalars::Scalar;

/// Column vectors are plain coordinate vectors.
pub type Vector = Vec<Scalar>;

pub fn zero_vec(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn add_vec(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(c: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

/// `a += c·b`, skipping zero work.
pub fn axpy(a: &mut [Scalar], c: &Scalar, b: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x = &*x + &(c * y);
        }
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_cols(rows: usize, cols: &[Vector]) -> Self {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Entrywise conjugate of the transpose.
    pub fn adjoint(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).conj());
            }
        }
        t
    }

    pub fn conj(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(Scalar::conj).collect() }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// Row vector times matrix.
    pub fn apply_left(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.rows, v.len(), "dimension mismatch in vector-matrix product");
        let mut out = zero_vec(self.cols);
        for (i, c) in v.iter().enumerate() {
            axpy(&mut out, c, self.row(i));
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: add_vec(&self.data, &other.data) }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: sub_vec(&self.data, &other.data) }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: scale_vec(c, &self.data) }
    }

    /// `self - λ·I`.
    pub fn shift(&self, lambda: &Scalar) -> Matrix {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = m.get(i, i) - lambda;
            m.set(i, i, v);
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn pow(&self, e: u32) -> Matrix {
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Kronecker product; index `(i·m + k, j·n + l)` holds `a[i][j]·b[k][l]`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        rref(self).pivots.len()
    }

    /// Basis of the null space `{x | M x = 0}`.
    pub fn kernel(&self) -> Vec<Vector> {
        let r = rref(self);
        kernel_from_rref(&r, self.cols)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one());
        }
        let r = rref(&aug);
        if r.pivots.len() < n || r.pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.matrix.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub struct Rref {
    pub matrix: Matrix,
    /// Pivot column of each nonzero row, in order.
    pub pivots: Vec<usize>,
}

/// Reduced row echelon form by Gauss-Jordan elimination.
pub fn rref(m: &Matrix) -> Rref {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        if p != row {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, row * a.cols + j);
            }
        }
        let inv = a.get(row, col).inv().expect("nonzero pivot");
        for j in col..a.cols {
            let v = a.get(row, j) * &inv;
            a.set(row, j, v);
        }
        let pivot_row: Vector = a.row(row).to_vec();
        for r in 0..a.rows {
            if r == row {
                continue;
            }
            let f = a.get(r, col).clone();
            if f.is_zero() {
                continue;
            }
            let start = r * a.cols;
            axpy(&mut a.data[start..start + a.cols], &-f, &pivot_row);
        }
        pivots.push(col);
        row += 1;
    }
    Rref { matrix: a, pivots }
}

fn kernel_from_rref(r: &Rref, n: usize) -> Vec<Vector> {
    let free: Vec<usize> = (0..n).filter(|c| !r.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = zero_vec(n);
            v[f] = Scalar::one();
            for (row, &pc) in r.pivots.iter().enumerate() {
                v[pc] = -r.matrix.get(row, f);
            }
            v
        })
        .collect()
}

/// A system of affine equations `a·x = b` in a fixed number of unknowns.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    unknowns: usize,
    rows: Vec<(Vector, Scalar)>,
}

impl LinearSystem {
    pub fn new(unknowns: usize) -> Self {
        LinearSystem { unknowns, rows: Vec::new() }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Adds `coeffs·x = rhs`; trivial `0 = 0` equations are dropped.
    pub fn push(&mut self, coeffs: Vector, rhs: Scalar) {
        assert_eq!(coeffs.len(), self.unknowns, "equation width");
        if is_zero_vec(&coeffs) && rhs.is_zero() {
            return;
        }
        self.rows.push((coeffs, rhs));
    }

    pub fn solve(&self) -> AffineSolution {
        solve_affine(self)
    }
}

/// Solution set of an affine system: empty, or `particular + span(kernel)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Option<Vector>,
    pub kernel: Vec<Vector>,
}

impl AffineSolution {
    pub fn is_empty(&self) -> bool {
        self.particular.is_none()
    }

    /// Dimension of the solution space (`None` when inconsistent).
    pub fn dimension(&self) -> Option<usize> {
        self.particular.as_ref().map(|_| self.kernel.len())
    }

    /// The unique solution, if the space is a single point.
    pub fn unique(&self) -> Option<&Vector> {
        match (&self.particular, self.kernel.len()) {
            (Some(p), 0) => Some(p),
            _ => None,
        }
    }
}

/// Exact solution of an affine system over ℚ(i)(s).
///
/// Equations are reduced incrementally against the current pivots, so highly
/// redundant constraint sets (typical of invariance conditions) stay cheap.
pub fn solve_affine(sys: &LinearSystem) -> AffineSolution {
    let n = sys.unknowns;
    // Each stored row is normalized with a 1 in its pivot column and is fully
    // reduced against earlier pivots.
    let mut basis: Vec<(usize, Vector, Scalar)> = Vec::new();
    for (coeffs, rhs) in &sys.rows {
        let mut row = coeffs.clone();
        let mut b = rhs.clone();
        for (pc, prow, prhs) in &basis {
            let f = row[*pc].clone();
            if !f.is_zero() {
                let neg = -f;
                axpy(&mut row, &neg, prow);
                b = &b + &(&neg * prhs);
            }
        }
        let Some(pc) = row.iter().position(|x| !x.is_zero()) else {
            if b.is_zero() {
                continue;
            }
            return AffineSolution { particular: None, kernel: Vec::new() };
        };
        let inv = row[pc].inv().unwrap();
        let row = scale_vec(&inv, &row);
        let b = &b * &inv;
        for (_, prow, prhs) in basis.iter_mut() {
            let f = prow[pc].clone();
            if !f.is_zero() {
                let neg = -f;
                axpy(prow, &neg, &row);
                *prhs = &*prhs + &(&neg * &b);
            }
        }
        basis.push((pc, row, b));
    }
    let pivots: Vec<usize> = basis.iter().map(|(p, _, _)| *p).collect();
    let mut particular = zero_vec(n);
    for (pc, _, b) in &basis {
        particular[*pc] = b.clone();
    }
    let kernel = (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = zero_vec(n);
            v[f] = Scalar::one();
            for (pc, row, _) in &basis {
                v[*pc] = -&row[f];
            }
            v
        })
        .collect();
    AffineSolution { particular: Some(particular), kernel }
}

/// Rank of a set of vectors.
pub fn span_rank(vectors: &[Vector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec()).rank()
}

/// Coordinates of `v` in the basis `cols` (columns), if `v` lies in their span.
pub fn coordinates(cols: &[Vector], v: &[Scalar]) -> Option<Vector> {
    let mut sys = LinearSystem::new(cols.len());
    for (i, target) in v.iter().enumerate() {
        sys.push(cols.iter().map(|c| c[i].clone()).collect(), target.clone());
    }
    let sol = sys.solve();
    sol.particular
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn point_solution() {
        let mut sys = LinearSystem::new(2);
        sys.push(vec![s(1), s(1)], s(1));
        sys.push(vec![s(1), s(-1)], s(0));
        let sol = sys.solve();
        assert_eq!(sol.unique(), Some(&vec![Scalar::from_ratio(1, 2), Scalar::from_ratio(1, 2)]));
        assert_eq!(sol.dimension(), Some(0));
    }

    #[test]
    fn inconsistent_is_empty() {
        let mut sys = LinearSystem::new(2);
        sys.push(vec![s(1), s(1)], s(1));
        sys.push(vec![s(1), s(1)], s(2));
        let sol = sys.solve();
        assert!(sol.is_empty());
        assert_eq!(sol.dimension(), None);
    }

    #[test]
    fn kernel_and_particular() {
        let mut sys = LinearSystem::new(3);
        sys.push(vec![s(1), s(2), s(3)], s(6));
        sys.push(vec![s(2), s(4), s(6)], s(12));
        let sol = sys.solve();
        assert_eq!(sol.dimension(), Some(2));
        let p = sol.particular.unwrap();
        assert_eq!(dot(&[s(1), s(2), s(3)], &p), s(6));
        for k in &sol.kernel {
            assert!(dot(&[s(1), s(2), s(3)], k).is_zero());
        }
    }

    #[test]
    fn inverse_over_function_field() {
        let m = Matrix::from_rows(vec![vec![Scalar::s(), s(1)], vec![s(0), Scalar::q()]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        let singular = Matrix::from_rows(vec![vec![s(1), s(2)], vec![s(2), s(4)]]);
        assert!(singular.inverse().is_none());
        assert_eq!(singular.rank(), 1);
        assert_eq!(singular.kernel().len(), 1);
    }
}
