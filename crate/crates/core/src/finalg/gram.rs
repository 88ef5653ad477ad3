//! Positivity of `x ↦ φ(x*x)` via exact Hermitian LDL* with symmetric pivoting.

use thiserror::Error;

use super::algebra::{FinAlgebra, Functional};
use super::linalg::{unit_vec, Matrix, Vector};
use crate::scalars::{Scalar, Sign, SpecPoint, SpecPoints};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Definiteness {
    PositiveDefinite,
    PositiveSemidefinite,
    Indefinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    Exact,
    AtSpecializations,
}

/// A verdict on the Gram form, with a witness vector `x` (coordinates of an
/// algebra element) whenever the form fails to be positive-definite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramCertificate {
    pub verdict: Definiteness,
    pub scope: Scope,
    pub gram: Matrix,
    pub hermitian: bool,
    pub witness: Option<Vector>,
    /// `x* G x` for the witness: non-real, negative, or zero.
    pub witness_value: Option<Scalar>,
    /// The specialization at which the witness was found.
    pub point: Option<SpecPoint>,
}

impl GramCertificate {
    pub fn is_positive_definite(&self) -> bool {
        self.verdict == Definiteness::PositiveDefinite
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GramError {
    #[error("the algebra has no involution")]
    NoStar,
    #[error("Gram entry has a pole at s = {0}")]
    Pole(SpecPoint),
}

/// `G[i][j] = φ(e_i* e_j)`.
pub fn gram_matrix(a: &FinAlgebra, phi: &Functional) -> Result<Matrix, GramError> {
    let n = a.dim();
    let stars: Vec<Vector> =
        (0..n).map(|i| a.star_vec(&unit_vec(n, i)).ok_or(GramError::NoStar)).collect::<Result<_, _>>()?;
    let mut g = Matrix::zeros(n, n);
    for (i, si) in stars.iter().enumerate() {
        for j in 0..n {
            g.set(i, j, phi.eval(&a.mul(si, &unit_vec(n, j))));
        }
    }
    Ok(g)
}

pub fn gram_psd(a: &FinAlgebra, phi: &Functional, points: &SpecPoints) -> Result<GramCertificate, GramError> {
    let g = gram_matrix(a, phi)?;
    form_psd(g, points)
}

fn quad(g: &Matrix, x: &[Scalar]) -> Scalar {
    let gx = g.apply(x);
    x.iter().zip(&gx).map(|(a, b)| &a.conj() * b).sum()
}

/// Certifies the Hermitian form `x ↦ x* G x`.
pub fn form_psd(g: Matrix, points: &SpecPoints) -> Result<GramCertificate, GramError> {
    let n = g.rows();
    if let Some(w) = non_hermitian_witness(&g) {
        let value = quad(&g, &w);
        return Ok(GramCertificate {
            verdict: Definiteness::Indefinite,
            scope: Scope::Exact,
            gram: g,
            hermitian: false,
            witness: Some(w),
            witness_value: Some(value),
            point: None,
        });
    }
    let constant = (0..n).all(|i| (0..n).all(|j| g.get(i, j).is_constant()));
    if constant {
        let (verdict, witness) = ldl(&g);
        let witness_value = witness.as_ref().map(|w| quad(&g, w));
        return Ok(GramCertificate {
            verdict,
            scope: Scope::Exact,
            gram: g,
            hermitian: true,
            witness,
            witness_value,
            point: None,
        });
    }
    let mut verdict = Definiteness::PositiveDefinite;
    let mut found = None;
    for p in points.iter() {
        let mut gp = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = g.get(i, j).specialize(p).map_err(|_| GramError::Pole(p.clone()))?;
                gp.set(i, j, Scalar::constant(v));
            }
        }
        let (v, w) = ldl(&gp);
        if rank(v) > rank(verdict) {
            verdict = v;
            found = w.map(|w| {
                let value = quad(&gp, &w);
                (w, value, p.clone())
            });
        }
    }
    let (witness, witness_value, point) = match found {
        Some((w, v, p)) => (Some(w), Some(v), Some(p)),
        None => (None, None, None),
    };
    Ok(GramCertificate {
        verdict,
        scope: Scope::AtSpecializations,
        gram: g,
        hermitian: true,
        witness,
        witness_value,
        point,
    })
}

fn rank(d: Definiteness) -> u8 {
    match d {
        Definiteness::PositiveDefinite => 0,
        Definiteness::PositiveSemidefinite => 1,
        Definiteness::Indefinite => 2,
    }
}

/// A vector `x` with `x* G x` non-real, when `G` is not Hermitian.
fn non_hermitian_witness(g: &Matrix) -> Option<Vector> {
    let n = g.rows();
    for i in 0..n {
        if !g.get(i, i).is_self_adjoint() {
            return Some(unit_vec(n, i));
        }
        for j in i + 1..n {
            let d = g.get(i, j) - &g.get(j, i).conj();
            if !d.is_zero() {
                // x = e_i + c e_j makes the imaginary part of x*Gx equal to |d|².
                let mut x = unit_vec(n, i);
                x[j] = &Scalar::i() * &d.conj();
                return Some(x);
            }
        }
    }
    None
}

fn sign(x: &Scalar) -> Sign {
    // Entries here are constant and real.
    let c = x.as_constant().expect("constant entry");
    if c.re > num_traits::Zero::zero() {
        Sign::Positive
    } else if c.re < num_traits::Zero::zero() {
        Sign::Negative
    } else {
        Sign::Zero
    }
}

/// Exact LDL* of a constant Hermitian matrix. Tracks the congruence `T` with
/// `T* G T` equal to the working matrix, so witnesses are columns of `T`.
fn ldl(g: &Matrix) -> (Definiteness, Option<Vector>) {
    let n = g.rows();
    let mut h = g.clone();
    let mut t = Matrix::identity(n);
    let mut remaining: Vec<usize> = (0..n).collect();
    while !remaining.is_empty() {
        if let Some(&k) = remaining.iter().find(|&&k| sign(h.get(k, k)) == Sign::Negative) {
            return (Definiteness::Indefinite, Some(t.col(k)));
        }
        let Some(pos) = remaining.iter().position(|&k| sign(h.get(k, k)) == Sign::Positive) else {
            for &a in &remaining {
                for &b in &remaining {
                    if a != b && !h.get(a, b).is_zero() {
                        // (e_a − conj(h_ab) e_b)* H (…) = −2|h_ab|².
                        let c = -h.get(a, b).conj();
                        let x: Vector = (0..n).map(|r| t.get(r, a) + &(&c * t.get(r, b))).collect();
                        return (Definiteness::Indefinite, Some(x));
                    }
                }
            }
            return (Definiteness::PositiveSemidefinite, Some(t.col(remaining[0])));
        };
        let k = remaining.remove(pos);
        let pivot = h.get(k, k).clone();
        for &r in &remaining {
            let alpha = h.get(k, r) / &pivot;
            if alpha.is_zero() {
                continue;
            }
            // Replace basis vector b_r by b_r − α b_k.
            for a in 0..n {
                let v = h.get(a, r) - &(&alpha * h.get(a, k));
                h.set(a, r, v);
                let tv = t.get(a, r) - &(&alpha * t.get(a, k));
                t.set(a, r, tv);
            }
            let ac = alpha.conj();
            for b in 0..n {
                let v = h.get(r, b) - &(&ac * h.get(k, b));
                h.set(r, b, v);
            }
        }
    }
    (Definiteness::PositiveDefinite, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finalg::MulEntry;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    fn mat(rows: &[&[&str]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|x| s(x)).collect()).collect())
    }

    fn pts() -> SpecPoints {
        SpecPoints::default()
    }

    #[test]
    fn pointwise_counting_measure_is_definite() {
        let mul: Vec<MulEntry> = (0..2).map(|i| MulEntry { i, j: i, k: i, value: Scalar::one() }).collect();
        let a = FinAlgebra::build(
            vec!["e0".into(), "e1".into()],
            &mul,
            Some(vec![Scalar::one(); 2]),
            Some(Matrix::identity(2)),
        )
        .unwrap();
        let cert = gram_psd(&a, &Functional(vec![Scalar::one(); 2]), &pts()).unwrap();
        assert_eq!(cert.gram, Matrix::identity(2));
        assert!(cert.is_positive_definite());
        assert_eq!(cert.scope, Scope::Exact);

        let no_star =
            FinAlgebra::build(vec!["e0".into(), "e1".into()], &mul, Some(vec![Scalar::one(); 2]), None).unwrap();
        assert_eq!(gram_psd(&no_star, &Functional(vec![Scalar::one(); 2]), &pts()), Err(GramError::NoStar));
    }

    #[test]
    fn verdicts() {
        let pd = form_psd(mat(&[&["2", "i"], &["-i", "1"]]), &pts()).unwrap();
        assert_eq!(pd.verdict, Definiteness::PositiveDefinite);

        let psd = form_psd(mat(&[&["1", "1"], &["1", "1"]]), &pts()).unwrap();
        assert_eq!(psd.verdict, Definiteness::PositiveSemidefinite);
        assert!(psd.witness_value.unwrap().is_zero());

        let ind = form_psd(mat(&[&["1", "2"], &["2", "1"]]), &pts()).unwrap();
        assert_eq!(ind.verdict, Definiteness::Indefinite);
        assert_eq!(sign(&ind.witness_value.unwrap()), Sign::Negative);

        let zero_diag = form_psd(mat(&[&["0", "i"], &["-i", "0"]]), &pts()).unwrap();
        assert_eq!(zero_diag.verdict, Definiteness::Indefinite);
        assert_eq!(sign(&zero_diag.witness_value.unwrap()), Sign::Negative);

        let nh = form_psd(mat(&[&["0", "1"], &["0", "0"]]), &pts()).unwrap();
        assert_eq!(nh.verdict, Definiteness::Indefinite);
        assert!(!nh.hermitian);
        assert!(!nh.witness_value.unwrap().is_self_adjoint());
    }

    #[test]
    fn s_dependent_forms_certified_per_point() {
        let c = form_psd(mat(&[&["1", "s"], &["s", "1"]]), &pts()).unwrap();
        assert_eq!(c.verdict, Definiteness::PositiveDefinite);
        assert_eq!(c.scope, Scope::AtSpecializations);
        // 1 − 4s² is negative only at s = 2/3.
        let c = form_psd(mat(&[&["1", "2*s"], &["2*s", "1"]]), &pts()).unwrap();
        assert_eq!(c.verdict, Definiteness::Indefinite);
        assert_eq!(c.point, Some(SpecPoint::ratio(2, 3).unwrap()));
    }

    #[test]
    fn verdict_is_basis_independent() {
        let p = mat(&[&["1", "2", "0"], &["0", "1", "i"], &["1", "0", "3"]]);
        for g in [
            mat(&[&["2", "1", "0"], &["1", "2", "1"], &["0", "1", "2"]]),
            mat(&[&["1", "0", "0"], &["0", "0", "0"], &["0", "0", "4"]]),
            mat(&[&["1", "0", "0"], &["0", "-1", "0"], &["0", "0", "1"]]),
        ] {
            let moved = p.adjoint().mul(&g).mul(&p);
            assert_eq!(form_psd(g, &pts()).unwrap().verdict, form_psd(moved, &pts()).unwrap().verdict);
        }
    }
}
