//! Eigenspace splitting for maps whose eigenvalues have the form `r·s^k`.
//!
//! Candidates come from the characteristic polynomial: a root `r·s^k` forces the
//! lowest-order (in `s`) part of `χ(t·s^k)` to vanish at `t = r`, so each integral
//! slope of the s-adic Newton polygon contributes an edge polynomial whose
//! Gaussian-rational roots are found by divisor enumeration in ℤ[i]. Every
//! candidate is then confirmed by an exact kernel computation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::algebra::{LinMap, Linearity};
use super::linalg::{span_rank, unit_vec, Matrix, Vector};
use crate::scalars::{GaussRat, SPoly, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenspace {
    pub value: Scalar,
    pub basis: Vec<Vector>,
}

impl Eigenspace {
    pub fn multiplicity(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EigenError {
    #[error("eigensplit needs a square linear map")]
    NotSquareLinear,
    #[error("not diagonalizable over the field: eigenspaces span {spanned} of {dim} dimensions")]
    NotDiagonalizable {
        dim: usize,
        spanned: usize,
        found: Vec<Eigenspace>,
        /// A basis of a complement of the confirmed eigenspaces.
        residual: Vec<Vector>,
    },
}

pub fn eigensplit(m: &LinMap) -> Result<Vec<Eigenspace>, EigenError> {
    if m.linearity != Linearity::Linear || !m.matrix.is_square() {
        return Err(EigenError::NotSquareLinear);
    }
    eigensplit_matrix(&m.matrix)
}

pub fn eigensplit_matrix(m: &Matrix) -> Result<Vec<Eigenspace>, EigenError> {
    let n = m.rows();
    let mut found = Vec::new();
    for lambda in candidate_eigenvalues(m) {
        let basis = m.shift(&lambda).kernel();
        if !basis.is_empty() {
            found.push(Eigenspace { value: lambda, basis });
        }
    }
    found.sort_by_cached_key(|e| (e.value.valuation().unwrap_or(i64::MIN), e.value.to_string()));
    let all: Vec<Vector> = found.iter().flat_map(|e| e.basis.iter().cloned()).collect();
    let spanned = span_rank(&all);
    if spanned == n {
        return Ok(found);
    }
    let mut cur = all;
    let mut residual = Vec::new();
    for i in 0..n {
        cur.push(unit_vec(n, i));
        if span_rank(&cur) > spanned + residual.len() {
            residual.push(unit_vec(n, i));
        } else {
            cur.pop();
        }
    }
    Err(EigenError::NotDiagonalizable { dim: n, spanned, found, residual })
}

/// Characteristic polynomial `det(tI − M)`, coefficients ascending in `t`.
pub fn char_poly(m: &Matrix) -> Vec<Scalar> {
    // Faddeev–LeVerrier.
    let n = m.rows();
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut mk = Matrix::zeros(n, n);
    for k in 1..=n {
        mk = m.mul(&mk).add(&Matrix::identity(n).scale(&coeffs[n - k + 1]));
        let am = m.mul(&mk);
        let trace: Scalar = (0..n).map(|i| am.get(i, i).clone()).sum();
        coeffs[n - k] = -(&trace / &Scalar::from_int(k as i64));
    }
    coeffs
}

fn poly_lcm(a: &SPoly, b: &SPoly) -> SPoly {
    let g = a.gcd(b);
    a.mul(b).div_rem(&g).0
}

fn candidate_eigenvalues(m: &Matrix) -> Vec<Scalar> {
    let chi = char_poly(m);
    let mut l = SPoly::one();
    for c in &chi {
        l = poly_lcm(&l, c.denom());
    }
    let polys: Vec<SPoly> = chi.iter().map(|c| c.numer().mul(&l.div_rem(c.denom()).0)).collect();
    let lowest = polys.iter().position(|p| !p.is_zero()).unwrap_or(0);
    let mut out = Vec::new();
    if lowest > 0 {
        out.push(Scalar::zero());
    }
    let pts: Vec<(usize, i64, GaussRat)> = polys
        .iter()
        .enumerate()
        .skip(lowest)
        .filter(|(_, p)| !p.is_zero())
        .map(|(j, p)| {
            let v = p.valuation().unwrap();
            (j, v as i64, p.coeff(v))
        })
        .collect();
    let mut slopes = Vec::new();
    for (a, (j1, v1, _)) in pts.iter().enumerate() {
        for (j2, v2, _) in &pts[a + 1..] {
            let dj = (*j2 - *j1) as i64;
            if (v1 - v2) % dj == 0 && !slopes.contains(&((v1 - v2) / dj)) {
                slopes.push((v1 - v2) / dj);
            }
        }
    }
    for k in slopes {
        let min = pts.iter().map(|(j, v, _)| v + k * *j as i64).min().unwrap();
        let edge: Vec<&(usize, i64, GaussRat)> = pts.iter().filter(|(j, v, _)| v + k * *j as i64 == min).collect();
        if edge.len() < 2 {
            continue;
        }
        let j0 = edge[0].0;
        let mut coeffs = vec![GaussRat::zero(); edge.last().unwrap().0 - j0 + 1];
        for (j, _, c) in edge {
            coeffs[j - j0] = c.clone();
        }
        for r in gaussian_rational_roots(&coeffs) {
            let lambda = Scalar::monomial(r, k);
            if !out.contains(&lambda) {
                out.push(lambda);
            }
        }
    }
    out
}

/// Gaussian integer `re + im·i`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct GInt(BigInt, BigInt);

impl GInt {
    fn norm(&self) -> BigInt {
        &self.0 * &self.0 + &self.1 * &self.1
    }

    fn mul(&self, o: &GInt) -> GInt {
        GInt(&self.0 * &o.0 - &self.1 * &o.1, &self.0 * &o.1 + &self.1 * &o.0)
    }

    /// Exact quotient, when `o` divides `self`.
    fn div_exact(&self, o: &GInt) -> Option<GInt> {
        let n = o.norm();
        let re = &self.0 * &o.0 + &self.1 * &o.1;
        let im = &self.1 * &o.0 - &self.0 * &o.1;
        if re.is_multiple_of(&n) && im.is_multiple_of(&n) {
            Some(GInt(re / &n, im / &n))
        } else {
            None
        }
    }

    fn to_gauss(&self) -> GaussRat {
        GaussRat::new(BigRational::from_integer(self.0.clone()), BigRational::from_integer(self.1.clone()))
    }
}

/// Trial division cap; larger norms make candidate enumeration give up.
const FACTOR_LIMIT: u64 = 1 << 22;

fn rational_prime_factors(mut n: u128) -> Option<Vec<u64>> {
    let mut out = Vec::new();
    let mut p: u64 = 2;
    while (p as u128) * (p as u128) <= n {
        if p > FACTOR_LIMIT {
            return None;
        }
        if n.is_multiple_of(p as u128) {
            out.push(p);
            while n.is_multiple_of(p as u128) {
                n /= p as u128;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(u64::try_from(n).ok()?);
    }
    Some(out)
}

fn gaussian_primes_over(p: u64) -> Vec<GInt> {
    let g = |a: u64, b: i64| GInt(BigInt::from(a), BigInt::from(b));
    if p == 2 {
        return vec![g(1, 1)];
    }
    if p % 4 == 3 {
        return vec![g(p, 0)];
    }
    let mut x = 1u64;
    loop {
        let rest = p - x * x;
        let y = (rest as f64).sqrt().round() as u64;
        for y in y.saturating_sub(1)..=y + 1 {
            if y * y == rest {
                return vec![g(x, y as i64), g(x, -(y as i64))];
            }
        }
        x += 1;
    }
}

/// All divisors of `z` up to units.
fn divisors(z: &GInt) -> Option<Vec<GInt>> {
    let norm = z.norm().to_u128()?;
    let mut out = vec![GInt(BigInt::one(), BigInt::zero())];
    for p in rational_prime_factors(norm)? {
        for pi in gaussian_primes_over(p) {
            let mut rest = z.clone();
            let mut e = 0;
            while let Some(q) = rest.div_exact(&pi) {
                rest = q;
                e += 1;
            }
            let mut next = Vec::with_capacity(out.len() * (e + 1));
            for d in &out {
                let mut acc = d.clone();
                next.push(acc.clone());
                for _ in 0..e {
                    acc = acc.mul(&pi);
                    next.push(acc.clone());
                }
            }
            out = next;
        }
    }
    Some(out)
}

fn eval(coeffs: &[GaussRat], x: &GaussRat) -> GaussRat {
    coeffs.iter().rev().fold(GaussRat::zero(), |acc, c| &(&acc * x) + c)
}

/// Nonzero roots in ℚ(i) of `Σ c_j t^j`. Gives up (returning what it has) when
/// coefficients are too large to factor.
fn gaussian_rational_roots(coeffs: &[GaussRat]) -> Vec<GaussRat> {
    let start = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let coeffs = &coeffs[start..];
    if coeffs.len() < 2 {
        return Vec::new();
    }
    let l = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denom_lcm()));
    let scale = GaussRat::real(BigRational::from_integer(l));
    let ints: Vec<GInt> = coeffs
        .iter()
        .map(|c| {
            let x = c * &scale;
            GInt(x.re.to_integer(), x.im.to_integer())
        })
        .collect();
    let (Some(num), Some(den)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
        return Vec::new();
    };
    let units = [GaussRat::one(), GaussRat::i(), -GaussRat::one(), -GaussRat::i()];
    let mut roots: Vec<GaussRat> = Vec::new();
    for a in &num {
        for b in &den {
            let base = &a.to_gauss() / &b.to_gauss();
            for u in &units {
                let r = &base * u;
                if !roots.contains(&r) && eval(coeffs, &r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort_by(|x, y| (x.re.abs(), &x.re, &x.im).cmp(&(y.re.abs(), &y.re, &y.im)));
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    fn check(m: &Matrix, spaces: &[Eigenspace]) {
        for e in spaces {
            for v in &e.basis {
                let lv: Vector = v.iter().map(|x| x * &e.value).collect();
                assert_eq!(m.apply(v), lv);
            }
        }
        assert_eq!(spaces.iter().map(Eigenspace::multiplicity).sum::<usize>(), m.rows());
    }

    #[test]
    fn identity_has_single_eigenvalue() {
        let m = Matrix::identity(2);
        let e = eigensplit(&LinMap::linear(m.clone())).unwrap();
        assert_eq!(e.len(), 1);
        assert!(e[0].value.is_one());
        assert_eq!(e[0].multiplicity(), 2);
        check(&m, &e);
    }

    #[test]
    fn diagonal_q_powers() {
        let m = Matrix::diagonal(&[s("s^2"), s("s^-2")]);
        let e = eigensplit_matrix(&m).unwrap();
        let values: Vec<Scalar> = e.iter().map(|x| x.value.clone()).collect();
        assert_eq!(values, vec![Scalar::q_pow(-1), Scalar::q()]);
        check(&m, &e);
    }

    #[test]
    fn mixed_gaussian_and_zero_eigenvalues() {
        // Upper triangular with distinct eigenvalues 0, 2i/3·s, −5·s^−1, (1+i)/2.
        let rows = vec![
            vec![s("0"), s("1"), s("s"), s("0")],
            vec![s("0"), s("2*i/3*s"), s("1"), s("1/s")],
            vec![s("0"), s("0"), s("-5/s"), s("i")],
            vec![s("0"), s("0"), s("0"), s("(1 + i)/2")],
        ];
        let m = Matrix::from_rows(rows);
        let e = eigensplit_matrix(&m).unwrap();
        assert_eq!(e.len(), 4);
        check(&m, &e);
    }

    #[test]
    fn jordan_block_reports_residual() {
        let m = Matrix::from_rows(vec![vec![s("1"), s("1")], vec![s("0"), s("1")]]);
        match eigensplit_matrix(&m) {
            Err(EigenError::NotDiagonalizable { spanned, residual, .. }) => {
                assert_eq!(spanned, 1);
                assert_eq!(residual, vec![unit_vec(2, 1)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn irrational_eigenvalues_are_not_confirmed() {
        // t² − 2 has no roots in ℚ(i).
        let m = Matrix::from_rows(vec![vec![s("0"), s("2")], vec![s("1"), s("0")]]);
        assert!(matches!(eigensplit_matrix(&m), Err(EigenError::NotDiagonalizable { spanned: 0, .. })));
    }

    #[test]
    fn char_poly_of_companion() {
        let m = Matrix::from_rows(vec![vec![s("0"), s("-s")], vec![s("1"), s("1 + s")]]);
        // (t − 1)(t − s) = s − (1 + s)t + t²
        assert_eq!(char_poly(&m), vec![s("s"), s("-1 - s"), s("1")]);
    }

    #[test]
    fn conjugate_linear_rejected() {
        assert_eq!(eigensplit(&LinMap::conjugate_linear(Matrix::identity(1))), Err(EigenError::NotSquareLinear));
    }

    #[test]
    fn gaussian_divisors() {
        // 5 = (2+i)(2−i): divisors up to units are 1, 2+i, 2−i, 5.
        let d = divisors(&GInt(BigInt::from(5), BigInt::zero())).unwrap();
        assert_eq!(d.len(), 4);
        let d = divisors(&GInt(BigInt::from(2), BigInt::zero())).unwrap();
        assert_eq!(d.len(), 3);
    }
}
