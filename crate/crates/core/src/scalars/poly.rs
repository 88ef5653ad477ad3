//! Dense univariate polynomials in `s` with Gaussian-rational coefficients.
//!
//! Coefficients are stored in ascending degree order. The vector is empty for
//! the zero polynomial and otherwise has a nonzero last entry.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::gauss::GaussRat;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SPoly {
    coeffs: Vec<GaussRat>,
}

impl SPoly {
    pub fn zero() -> Self {
        SPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        SPoly::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        SPoly::from_vec(vec![c])
    }

    pub fn monomial(c: GaussRat, deg: usize) -> Self {
        if c.is_zero() {
            return SPoly::zero();
        }
        let mut coeffs = vec![GaussRat::zero(); deg + 1];
        coeffs[deg] = c;
        SPoly { coeffs }
    }

    pub fn from_vec(mut coeffs: Vec<GaussRat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[GaussRat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&GaussRat> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> GaussRat {
        self.coeffs.get(i).cloned().unwrap_or_else(GaussRat::zero)
    }

    /// Multiplicity of `s` as a factor (lowest exponent with nonzero coefficient).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// True when the polynomial is `c·s^k` for a single `k`.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1
    }

    pub fn conj(&self) -> Self {
        SPoly { coeffs: self.coeffs.iter().map(GaussRat::conj).collect() }
    }

    pub fn neg(&self) -> Self {
        SPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &SPoly) -> SPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => out.push(a + b),
                (Some(a), None) => out.push(a.clone()),
                (None, Some(b)) => out.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        SPoly::from_vec(out)
    }

    pub fn sub(&self, other: &SPoly) -> SPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &SPoly) -> SPoly {
        if self.is_zero() || other.is_zero() {
            return SPoly::zero();
        }
        let mut out = vec![GaussRat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        SPoly::from_vec(out)
    }

    pub fn scale(&self, c: &GaussRat) -> SPoly {
        if c.is_zero() {
            return SPoly::zero();
        }
        SPoly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiply by `s^k`.
    pub fn shift(&self, k: usize) -> SPoly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![GaussRat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        SPoly { coeffs }
    }

    /// Divide by `s^k`; the caller guarantees `k <= valuation`.
    pub fn unshift(&self, k: usize) -> SPoly {
        SPoly::from_vec(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Euclidean division over the field ℚ(i). Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &SPoly) -> (SPoly, SPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = divisor.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (SPoly::zero(), self.clone());
        }
        let mut quot = vec![GaussRat::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[k + j] = &rem[k + j] - &(&c * dc);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (SPoly::from_vec(quot), SPoly::from_vec(rem))
    }

    pub fn make_monic(&self) -> SPoly {
        match self.leading() {
            None => SPoly::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &SPoly) -> SPoly {
        // Factor out the common power of s first; it is the common case for Laurent data.
        let (va, vb) = match (self.valuation(), other.valuation()) {
            (None, _) => return other.make_monic(),
            (_, None) => return self.make_monic(),
            (Some(a), Some(b)) => (a, b),
        };
        let v = va.min(vb);
        let mut a = self.unshift(va);
        let mut b = other.unshift(vb);
        if a.is_constant() || b.is_constant() {
            return SPoly::one().shift(v);
        }
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.make_monic();
        }
        a.make_monic().shift(v)
    }

    pub fn eval(&self, x: &GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> GaussRat {
        self.eval(&GaussRat::real(x.clone()))
    }

    pub fn derivative(&self) -> SPoly {
        SPoly::from_vec(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * &GaussRat::from_int(i as i64)).collect(),
        )
    }
}

impl fmt::Display for SPoly {
    /// Ascending-degree sum in the scalar literal grammar, e.g. `1 + 2*s - s^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let zero = BigRational::from_integer(0.into());
            let negative = (c.im.is_zero() && c.re < zero) || (c.re.is_zero() && c.im < zero);
            let mag = if negative { -c } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "s".to_string(),
                _ => format!("s^{k}"),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> SPoly {
        SPoly::from_vec(v.iter().map(|&c| GaussRat::from_int(c)).collect())
    }

    #[test]
    fn division_of_one_minus_s4() {
        let (q, r) = p(&[1, 0, 0, 0, -1]).div_rem(&p(&[1, 0, -1]));
        assert_eq!(q, p(&[1, 0, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn gcd_is_monic() {
        let a = p(&[-1, 0, 1]).mul(&p(&[0, 2]));
        let b = p(&[1, 1]).mul(&p(&[0, 0, 3]));
        assert_eq!(a.gcd(&b), p(&[0, 1, 1]));
    }

    #[test]
    fn display_ascending() {
        assert_eq!(p(&[1, 2, 0, -1]).to_string(), "1 + 2*s - s^3");
        assert_eq!(p(&[0, -1]).to_string(), "-s");
    }
}
