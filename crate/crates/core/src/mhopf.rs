//! Coproduct, T-maps, derived counit and antipode, and the compatibility
//! checks for sub-quantum groups and grouplike projections.

use thiserror::Error;

use crate::finalg::linalg::{coordinates, rref, unit_vec, zero_vec};
use crate::finalg::{
    apply_tensor, flip, outer, solve_affine, tensor_mul, FinAlgebra, Functional, LinearSystem, Matrix, MulEntry, Vector,
};
use crate::scalars::Scalar;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum MhopfError {
    #[error("the algebra must be unital")]
    NotUnital,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("Δ(1) != 1⊗1")]
    CoproductNotUnital,
    #[error("Δ is not multiplicative at (e{0}, e{1})")]
    NotMorphism(usize, usize),
    #[error("coassociativity fails at e{0}")]
    Coassociativity(usize),
    #[error("T-maps not bijective: ranks {ranks:?} of {full}")]
    TMaps { ranks: [usize; 4], full: usize },
    #[error("{what}: no solution")]
    NoSolution { what: &'static str },
    #[error("{what}: solution space has dimension {dim}, expected a single point")]
    NotUnique { what: &'static str, dim: usize },
    #[error("{law} fails at e{i}")]
    Law { law: &'static str, i: usize },
    #[error("S is not anti-multiplicative at (e{0}, e{1})")]
    NotAntiMorphism(usize, usize),
    #[error("star compatibility fails: {0}")]
    StarCompat(String),
    #[error("provided {0} differs from the derived one")]
    ProvidedMismatch(&'static str),
    #[error("not a subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("equation `{equation}` leaves A₀⊗A₀ at (u{a}, u{b})")]
    SubCompat { equation: &'static str, a: usize, b: usize },
}

pub type Result<T> = std::result::Result<T, MhopfError>;

/// An algebra with a verified coproduct (morphism, coassociative); ε and S not yet derived.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalgebra {
    algebra: FinAlgebra,
    /// `dim² × dim`; column `i` is `Δ(e_i)` in the basis `e_p ⊗ e_k` (index `p·dim + k`).
    coproduct: Matrix,
}

/// A finite-dimensional Hopf (*-)algebra: algebra, coproduct, counit, antipode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QGData {
    algebra: FinAlgebra,
    coproduct: Matrix,
    counit: Functional,
    antipode: Matrix,
}

pub const TMAP_NAMES: [&str; 4] = ["T_Δ2", "T_1Δ", "T_Δ1", "T_2Δ"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TMapReport {
    /// Ranks of `a⊗b ↦ Δ(a)(1⊗b)`, `(a⊗1)Δ(b)`, `Δ(a)(b⊗1)`, `(1⊗a)Δ(b)`.
    pub ranks: [usize; 4],
    pub full: usize,
}

impl TMapReport {
    pub fn bijective(&self) -> [bool; 4] {
        self.ranks.map(|r| r == self.full)
    }

    pub fn all_bijective(&self) -> bool {
        self.ranks.iter().all(|&r| r == self.full)
    }
}

/// Shared accessors for anything carrying an algebra and a coproduct.
pub trait HasCoproduct {
    fn algebra(&self) -> &FinAlgebra;
    fn coproduct(&self) -> &Matrix;

    fn dim(&self) -> usize {
        self.algebra().dim()
    }

    fn delta(&self, x: &[Scalar]) -> Vector {
        self.coproduct().apply(x)
    }

    fn delta_basis(&self, i: usize) -> Vector {
        self.coproduct().col(i)
    }

    /// Product in `A ⊙ A`.
    fn mul2(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        tensor_mul(self.algebra(), self.algebra(), x, y)
    }

    fn one(&self) -> Vector {
        self.algebra().unit().cloned().expect("unital")
    }

    fn is_cocommutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            let d = self.delta_basis(i);
            flip(&d, n, n) == d
        })
    }

    /// Ranks of the four T-maps on `A ⊙ A`.
    fn check_tmaps(&self) -> TMapReport {
        let n = self.dim();
        let one = self.one();
        let mut cols: [Vec<Vector>; 4] = Default::default();
        for a in 0..n {
            let da = self.delta_basis(a);
            for b in 0..n {
                let eb = unit_vec(n, b);
                let db = self.delta_basis(b);
                let ea = unit_vec(n, a);
                cols[0].push(self.mul2(&da, &outer(&one, &eb)));
                cols[1].push(self.mul2(&outer(&ea, &one), &db));
                cols[2].push(self.mul2(&da, &outer(&eb, &one)));
                cols[3].push(self.mul2(&outer(&one, &ea), &db));
            }
        }
        let ranks = cols.map(|c| Matrix::from_cols(n * n, &c).rank());
        TMapReport { ranks, full: n * n }
    }
}

impl HasCoproduct for Coalgebra {
    fn algebra(&self) -> &FinAlgebra {
        &self.algebra
    }
    fn coproduct(&self) -> &Matrix {
        &self.coproduct
    }
}

impl HasCoproduct for QGData {
    fn algebra(&self) -> &FinAlgebra {
        &self.algebra
    }
    fn coproduct(&self) -> &Matrix {
        &self.coproduct
    }
}

/// Attaches `Δ` (a `dim² × dim` matrix) after checking that it is a unital
/// morphism and coassociative.
pub fn attach_coproduct(algebra: FinAlgebra, coproduct: Matrix) -> Result<Coalgebra> {
    let n = algebra.dim();
    if algebra.unit().is_none() {
        return Err(MhopfError::NotUnital);
    }
    if coproduct.rows() != n * n || coproduct.cols() != n {
        return Err(MhopfError::Shape(format!(
            "coproduct is {}×{}, expected {}×{}",
            coproduct.rows(),
            coproduct.cols(),
            n * n,
            n
        )));
    }
    // Δ(1) = 1⊗1 is not required here: it follows from T-map bijectivity and
    // is checked once ε and S are derived.
    let c = Coalgebra { algebra, coproduct };
    let deltas: Vec<Vector> = (0..n).map(|i| c.delta_basis(i)).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = c.delta(&c.algebra.basis_product_vec(i, j));
            if lhs != c.mul2(&deltas[i], &deltas[j]) {
                return Err(MhopfError::NotMorphism(i, j));
            }
        }
    }
    let id = Matrix::identity(n);
    for (i, d) in deltas.iter().enumerate() {
        if apply_tensor(&c.coproduct, &id, d) != apply_tensor(&id, &c.coproduct, d) {
            return Err(MhopfError::Coassociativity(i));
        }
    }
    Ok(c)
}

fn unique(sol: crate::finalg::AffineSolution, what: &'static str) -> Result<Vector> {
    match (&sol.particular, sol.kernel.len()) {
        (None, _) => Err(MhopfError::NoSolution { what }),
        (Some(p), 0) => Ok(p.clone()),
        (Some(_), dim) => Err(MhopfError::NotUnique { what, dim }),
    }
}

/// One side of a sub-structure compatibility equation, evaluated on `(a, b, 1)`.
type SubEquation = fn(&QGData, &[Scalar], &[Scalar], &[Scalar]) -> Vector;

impl Coalgebra {
    pub fn into_parts(self) -> (FinAlgebra, Matrix) {
        (self.algebra, self.coproduct)
    }

    /// Solves the counit laws `(ε⊗ι)Δ = ι = (ι⊗ε)Δ`.
    pub fn solve_counit(&self) -> Result<Functional> {
        let n = self.dim();
        let mut sys = LinearSystem::new(n);
        for a in 0..n {
            let d = self.delta_basis(a);
            for k in 0..n {
                let target = if k == a { Scalar::one() } else { Scalar::zero() };
                let left: Vector = (0..n).map(|p| d[p * n + k].clone()).collect();
                sys.push(left, target.clone());
                let right: Vector = (0..n).map(|p| d[k * n + p].clone()).collect();
                sys.push(right, target);
            }
        }
        unique(solve_affine(&sys), "counit").map(Functional)
    }

    /// Solves `m(S⊗ι)Δ(a) = ε(a)1 = m(ι⊗S)Δ(a)`; unknown `S[r][c]` sits at `r·dim + c`.
    pub fn solve_antipode(&self, counit: &Functional) -> Result<Matrix> {
        let n = self.dim();
        let a = &self.algebra;
        let one = self.one();
        let mut sys = LinearSystem::new(n * n);
        for x in 0..n {
            let d = self.delta_basis(x);
            let eps = &counit.values()[x];
            let mut left = vec![zero_vec(n * n); n];
            let mut right = vec![zero_vec(n * n); n];
            for (idx, c) in d.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (p, k) = (idx / n, idx % n);
                for r in 0..n {
                    // S(e_p) e_k contributes S[r][p]·(e_r e_k).
                    for (l, m) in a.basis_product(r, k) {
                        let v = &mut left[*l][r * n + p];
                        *v = &*v + &(c * m);
                    }
                    // e_p S(e_k) contributes S[r][k]·(e_p e_r).
                    for (l, m) in a.basis_product(p, r) {
                        let v = &mut right[*l][r * n + k];
                        *v = &*v + &(c * m);
                    }
                }
            }
            for l in 0..n {
                let rhs = eps * &one[l];
                sys.push(std::mem::take(&mut left[l]), rhs.clone());
                sys.push(std::mem::take(&mut right[l]), rhs);
            }
        }
        let flat = unique(solve_affine(&sys), "antipode")?;
        Ok(Matrix::from_rows((0..n).map(|r| flat[r * n..(r + 1) * n].to_vec()).collect()))
    }

    /// Derives ε and S by solving, then verifies the remaining Hopf laws.
    pub fn derive_counit_antipode(self) -> Result<QGData> {
        let t = self.check_tmaps();
        if !t.all_bijective() {
            return Err(MhopfError::TMaps { ranks: t.ranks, full: t.full });
        }
        let counit = self.solve_counit()?;
        let antipode = self.solve_antipode(&counit)?;
        let q = QGData { algebra: self.algebra, coproduct: self.coproduct, counit, antipode };
        q.verify_counit_antipode()?;
        if q.algebra.has_star() {
            let r = q.check_star_compat();
            if let Some(msg) = r.failures.first() {
                return Err(MhopfError::StarCompat(msg.clone()));
            }
        }
        Ok(q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct StarCompatReport {
    pub failures: Vec<String>,
}

impl StarCompatReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrouplikeReport {
    pub self_adjoint: bool,
    pub idempotent: bool,
    pub coproduct: bool,
}

impl GrouplikeReport {
    pub fn passes(&self) -> bool {
        self.self_adjoint && self.idempotent && self.coproduct
    }
}

impl QGData {
    /// Assembles a quantum group from its parts and verifies every Hopf law.
    pub fn from_parts(algebra: FinAlgebra, coproduct: Matrix, counit: Functional, antipode: Matrix) -> Result<Self> {
        let c = attach_coproduct(algebra, coproduct)?;
        let q = QGData { algebra: c.algebra, coproduct: c.coproduct, counit, antipode };
        q.verify_counit_antipode()?;
        Ok(q)
    }

    pub fn counit(&self) -> &Functional {
        &self.counit
    }

    pub fn antipode(&self) -> &Matrix {
        &self.antipode
    }

    pub fn antipode_squared(&self) -> Matrix {
        self.antipode.mul(&self.antipode)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.algebra.mul(x, y)
    }

    /// Compares provided counit/antipode tables against the derived ones.
    pub fn check_provided(&self, counit: Option<&Functional>, antipode: Option<&Matrix>) -> Result<()> {
        if counit.is_some_and(|c| c != &self.counit) {
            return Err(MhopfError::ProvidedMismatch("counit"));
        }
        if antipode.is_some_and(|s| s != &self.antipode) {
            return Err(MhopfError::ProvidedMismatch("antipode"));
        }
        Ok(())
    }

    fn verify_counit_antipode(&self) -> Result<()> {
        let n = self.dim();
        let a = &self.algebra;
        let one = self.one();
        let id = Matrix::identity(n);
        let eps = Matrix::from_rows(vec![self.counit.values().to_vec()]);
        if self.delta(&one) != outer(&one, &one) {
            return Err(MhopfError::CoproductNotUnital);
        }
        if self.counit.eval(&one) != Scalar::one() {
            return Err(MhopfError::Law { law: "ε(1) = 1", i: 0 });
        }
        for i in 0..n {
            let d = self.delta_basis(i);
            let e = unit_vec(n, i);
            if apply_tensor(&eps, &id, &d) != e || apply_tensor(&id, &eps, &d) != e {
                return Err(MhopfError::Law { law: "counit law", i });
            }
            let target: Vector = one.iter().map(|u| u * &self.counit.values()[i]).collect();
            let l = apply_tensor(&self.antipode, &id, &d);
            let r = apply_tensor(&id, &self.antipode, &d);
            if multiply_out(a, &l) != target || multiply_out(a, &r) != target {
                return Err(MhopfError::Law { law: "antipode law", i });
            }
        }
        let images: Vec<Vector> = self.antipode.columns();
        for i in 0..n {
            for j in 0..n {
                let ij = a.basis_product_vec(i, j);
                if self.counit.eval(&ij) != &self.counit.values()[i] * &self.counit.values()[j] {
                    return Err(MhopfError::Law { law: "ε multiplicative", i });
                }
                if self.antipode.apply(&ij) != a.mul(&images[j], &images[i]) {
                    return Err(MhopfError::NotAntiMorphism(i, j));
                }
            }
        }
        Ok(())
    }

    /// `S(S(e_i)*)* = e_i`, `Δ(e_i*) = Δ(e_i)*`, `ε(e_i*) = conj ε(e_i)`.
    pub fn check_star_compat(&self) -> StarCompatReport {
        let mut r = StarCompatReport::default();
        let a = &self.algebra;
        let Some(star) = a.star_matrix() else {
            r.failures.push("no star".into());
            return r;
        };
        let n = self.dim();
        for i in 0..n {
            let e = unit_vec(n, i);
            let si = self.antipode.apply(&e);
            let back = a.star_vec(&self.antipode.apply(&a.star_vec(&si).unwrap())).unwrap();
            if back != e {
                r.failures.push(format!("S(S(a)*)* != a at e{i}"));
            }
            let ei_star = a.star_vec(&e).unwrap();
            let d = self.delta_basis(i);
            let dc: Vector = d.iter().map(Scalar::conj).collect();
            if self.delta(&ei_star) != apply_tensor(star, star, &dc) {
                r.failures.push(format!("Δ(a*) != Δ(a)* at e{i}"));
            }
            if self.counit.eval(&ei_star) != self.counit.values()[i].conj() {
                r.failures.push(format!("ε(a*) != conj ε(a) at e{i}"));
            }
        }
        r
    }

    /// `p = p* = p²` and `Δ(p)(1⊗p) = p⊗p`.
    pub fn check_grouplike_projection(&self, p: &[Scalar]) -> GrouplikeReport {
        let a = &self.algebra;
        let self_adjoint = a.star_vec(p).is_some_and(|ps| ps == p);
        let idempotent = a.mul(p, p) == p;
        let coproduct = self.mul2(&self.delta(p), &outer(&self.one(), p)) == outer(p, p);
        GrouplikeReport { self_adjoint, idempotent, coproduct }
    }

    /// Compatibility of a subspace with the coproduct and the induced quantum group.
    pub fn check_sub_mha(&self, sub_basis: &[Vector]) -> Result<SubReport> {
        let n = self.dim();
        let m = sub_basis.len();
        if m == 0 || sub_basis.iter().any(|v| v.len() != n) {
            return Err(MhopfError::NotSubalgebra("empty basis or wrong vector length".into()));
        }
        let u = Matrix::from_cols(n, sub_basis);
        if u.rank() < m {
            return Err(MhopfError::NotSubalgebra("basis vectors are dependent".into()));
        }
        let l = left_inverse(&u);
        let a = &self.algebra;
        let mut mul = Vec::new();
        for (i, x) in sub_basis.iter().enumerate() {
            for (j, y) in sub_basis.iter().enumerate() {
                let xy = a.mul(x, y);
                let c = coordinates(sub_basis, &xy)
                    .ok_or_else(|| MhopfError::NotSubalgebra(format!("u{i}·u{j} leaves the span")))?;
                for (k, v) in c.into_iter().enumerate() {
                    if !v.is_zero() {
                        mul.push(MulEntry { i, j, k, value: v });
                    }
                }
            }
        }
        let star = if a.has_star() {
            let images: Option<Vec<Vector>> =
                sub_basis.iter().map(|x| coordinates(sub_basis, &a.star_vec(x).unwrap())).collect();
            images.map(|cols| Matrix::from_cols(m, &cols))
        } else {
            None
        };
        let one = self.one();
        let equations: [(&'static str, SubEquation); 4] = [
            ("Δ(a)(1⊗b)", |q, x, y, one| q.mul2(&q.delta(x), &outer(one, y))),
            ("Δ(a)(b⊗1)", |q, x, y, one| q.mul2(&q.delta(x), &outer(y, one))),
            ("(a⊗1)Δ(b)", |q, x, y, one| q.mul2(&outer(x, one), &q.delta(y))),
            ("(1⊗a)Δ(b)", |q, x, y, one| q.mul2(&outer(one, x), &q.delta(y))),
        ];
        for (equation, f) in equations {
            for (ia, x) in sub_basis.iter().enumerate() {
                for (ib, y) in sub_basis.iter().enumerate() {
                    let v = f(self, x, y, &one);
                    let c = apply_tensor(&l, &l, &v);
                    if apply_tensor(&u, &u, &c) != v {
                        return Err(MhopfError::SubCompat { equation, a: ia, b: ib });
                    }
                }
            }
        }
        let labels: Vec<String> = (0..m).map(|i| format!("u{i}")).collect();
        // The unit of A₀ itself, when it has one.
        let unit0 = {
            let mut sys = LinearSystem::new(m);
            let mut table = vec![vec![zero_vec(m); m]; m];
            for e in &mul {
                table[e.i][e.j][e.k] = e.value.clone();
            }
            #[allow(clippy::needless_range_loop)]
            for b in 0..m {
                for k in 0..m {
                    let target = if k == b { Scalar::one() } else { Scalar::zero() };
                    sys.push((0..m).map(|p| table[p][b][k].clone()).collect(), target.clone());
                    sys.push((0..m).map(|p| table[b][p][k].clone()).collect(), target);
                }
            }
            solve_affine(&sys).particular
        };
        let algebra0 = FinAlgebra::build(labels, &mul, unit0.clone(), star)
            .map_err(|e| MhopfError::NotSubalgebra(e.to_string()))?;
        let induced = match unit0 {
            Some(u0) => {
                let u0_big = u.apply(&u0);
                let cols: Vec<Vector> = sub_basis
                    .iter()
                    .map(|x| apply_tensor(&l, &l, &self.mul2(&self.delta(x), &outer(&one, &u0_big))))
                    .collect();
                let d0 = Matrix::from_cols(m * m, &cols);
                Some(attach_coproduct(algebra0.clone(), d0)?.derive_counit_antipode()?)
            }
            None => None,
        };
        Ok(SubReport { basis: u, algebra: algebra0, induced })
    }

    pub fn into_algebra(self) -> FinAlgebra {
        self.algebra
    }
}

/// Result of a successful sub-quantum-group check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubReport {
    /// Columns are the basis of `A₀` in coordinates of the big algebra.
    pub basis: Matrix,
    pub algebra: FinAlgebra,
    /// The quantum group structure induced on `A₀` when `A₀` has its own unit.
    pub induced: Option<QGData>,
}

/// `m: A⊗A → A`.
pub fn multiply_out(a: &FinAlgebra, x: &[Scalar]) -> Vector {
    let n = a.dim();
    let mut out = zero_vec(n);
    for (idx, c) in x.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (k, v) in a.basis_product(idx / n, idx % n) {
            out[*k] = &out[*k] + &(c * v);
        }
    }
    out
}

/// A left inverse of a full-column-rank matrix, built from independent rows.
pub fn left_inverse(u: &Matrix) -> Matrix {
    let m = u.cols();
    let rows = rref(&u.transpose()).pivots;
    let square = Matrix::from_rows(rows.iter().map(|&r| u.row(r).to_vec()).collect());
    let inv = square.inverse().expect("independent rows");
    let mut l = Matrix::zeros(m, u.rows());
    for (c, &r) in rows.iter().enumerate() {
        for i in 0..m {
            l.set(i, r, inv.get(i, c).clone());
        }
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::structure;

    fn coalgebra(name: &str) -> Coalgebra {
        let s = structure(name).unwrap();
        attach_coproduct(s.algebra, s.coproduct).unwrap()
    }

    fn qg(name: &str) -> QGData {
        coalgebra(name).derive_counit_antipode().unwrap()
    }

    fn ints(v: &[i64]) -> Vector {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn cyclic_two() {
        let c = coalgebra("c_z2");
        assert_eq!(c.check_tmaps().ranks, [4; 4]);
        let q = c.derive_counit_antipode().unwrap();
        assert_eq!(q.counit().values(), &ints(&[1, 0])[..]);
        assert_eq!(q.antipode(), &Matrix::identity(2));
        assert!(q.check_star_compat().passes());
    }

    #[test]
    fn symmetric_group_both_ways() {
        let g = coalgebra("group_s3");
        assert_eq!(g.check_tmaps().ranks, [36; 4]);
        let g = g.derive_counit_antipode().unwrap();
        assert_eq!(g.counit().values(), &ints(&[1; 6])[..]);
        // (012) and (021) are mutually inverse; transpositions are involutions.
        for (a, inv) in [(0, 0), (1, 1), (2, 2), (3, 3), (4, 5), (5, 4)] {
            assert_eq!(g.antipode().col(a), unit_vec(6, inv));
        }
        assert!(g.is_cocommutative());
        let c = qg("c_s3");
        assert_eq!(c.check_tmaps().ranks, [36; 4]);
        for q in [&g, &c, &qg("c_z4")] {
            assert_eq!(q.antipode_squared(), Matrix::identity(q.dim()));
            assert!(q.check_star_compat().passes());
        }
        assert!(!c.is_cocommutative());
    }

    #[test]
    fn sweedler_antipode() {
        let q = qg("sweedler_h4");
        assert_eq!(q.counit().values(), &ints(&[1, 1, 0, 0])[..]);
        assert_eq!(q.antipode().col(1), ints(&[0, 1, 0, 0]));
        assert_eq!(q.antipode().col(2), ints(&[0, 0, 0, -1]));
        assert_eq!(q.antipode().col(3), ints(&[0, 0, 1, 0]));
        assert_ne!(q.antipode_squared(), Matrix::identity(4));
        assert_eq!(q.antipode_squared().pow(2), Matrix::identity(4));
        assert!(q.check_star_compat().passes());
    }

    #[test]
    fn semilattice_fails_only_at_tmaps() {
        let c = coalgebra("semilattice2");
        let t = c.check_tmaps();
        assert_eq!(t.ranks[0], 2);
        assert_eq!(t.full, 4);
        assert!(matches!(c.derive_counit_antipode(), Err(MhopfError::TMaps { .. })));
    }

    #[test]
    fn broken_coproduct_rejected() {
        let s = structure("c_z2").unwrap();
        let mut d = s.coproduct.clone();
        // Δ(e1) doubled: Δ(e1·e1) = Δ(e1) but Δ(e1)Δ(e1) = 2Δ(e1).
        d.set(1, 1, Scalar::from_int(2));
        d.set(2, 1, Scalar::from_int(2));
        assert!(matches!(attach_coproduct(s.algebra.clone(), d), Err(MhopfError::NotMorphism(..))));
        let wrong = Matrix::zeros(3, 2);
        assert!(matches!(attach_coproduct(s.algebra, wrong), Err(MhopfError::Shape(_))));
    }

    #[test]
    fn provided_tables_are_checked() {
        let q = qg("c_z2");
        assert!(q.check_provided(Some(&Functional(ints(&[1, 0]))), Some(&Matrix::identity(2))).is_ok());
        assert_eq!(
            q.check_provided(Some(&Functional(ints(&[0, 1]))), None),
            Err(MhopfError::ProvidedMismatch("counit"))
        );
    }

    #[test]
    fn subgroup_function_algebra() {
        let q = qg("c_z4");
        let s = structure("c_z4").unwrap();
        let r = q.check_sub_mha(&s.subalgebras[0].1).unwrap();
        let induced = r.induced.unwrap();
        let z2 = qg("c_z2");
        assert_eq!(induced.coproduct(), z2.coproduct());
        assert_eq!(induced.counit(), z2.counit());
        assert_eq!(induced.antipode(), z2.antipode());

        // {0} is a subgroup too; {1} is not.
        assert!(q.check_sub_mha(&[ints(&[1, 0, 0, 0])]).unwrap().induced.is_some());
        assert_eq!(
            q.check_sub_mha(&[ints(&[0, 1, 0, 0])]),
            Err(MhopfError::SubCompat { equation: "Δ(a)(1⊗b)", a: 0, b: 0 })
        );
        assert!(matches!(q.check_sub_mha(&[ints(&[1, 2, 0, 0])]), Err(MhopfError::NotSubalgebra(_))));

        let g = qg("group_s3");
        let r = g.check_sub_mha(&structure("group_s3").unwrap().subalgebras[0].1).unwrap();
        assert_eq!(r.induced.unwrap().dim(), 1);
    }

    #[test]
    fn grouplike_projections() {
        let q = qg("c_z4");
        assert!(q.check_grouplike_projection(&ints(&[1, 0, 1, 0])).passes());
        let e1 = q.check_grouplike_projection(&ints(&[0, 1, 0, 0]));
        assert!(e1.self_adjoint && e1.idempotent && !e1.coproduct);
        let g = qg("group_s3");
        assert!(g.check_grouplike_projection(&g.one()).passes());
    }
}
