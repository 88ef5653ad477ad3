//! Exact arithmetic in ℚ(i)(s), the field of rational functions in a real
//! parameter `s` with Gaussian-rational coefficients. The deformation
//! parameter is `q = s²`, so half-integer powers of `q` stay inside the field.
//!
//! Every [`Scalar`] is kept in canonical form (coprime numerator and
//! denominator, monic denominator), so equality is structural.

mod gauss;
mod parse;
mod poly;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use gauss::GaussRat;
pub use parse::parse_scalar;
pub use poly::SPoly;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at s = {0}")]
    Pole(String),
    #[error("sign requested for non-self-adjoint value {0}")]
    NotSelfAdjoint(String),
    #[error("invalid specialization point {0}: must be a rational strictly between 0 and 1")]
    BadSpecPoint(String),
}

/// An element of ℚ(i)(s) in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: SPoly,
    den: SPoly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: SPoly::zero(), den: SPoly::one() }
    }

    pub fn one() -> Self {
        Scalar::constant(GaussRat::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::constant(GaussRat::from_int(n))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Scalar::constant(GaussRat::from_ratio(p, q))
    }

    pub fn i() -> Self {
        Scalar::constant(GaussRat::i())
    }

    /// The parameter `s` (so that `q = s²`).
    pub fn s() -> Self {
        Scalar { num: SPoly::monomial(GaussRat::one(), 1), den: SPoly::one() }
    }

    /// The deformation parameter `q = s²`.
    pub fn q() -> Self {
        Scalar::s_pow(2)
    }

    /// `s^k` for any integer `k`.
    pub fn s_pow(k: i64) -> Self {
        Scalar::monomial(GaussRat::one(), k)
    }

    /// `q^k = s^{2k}`.
    pub fn q_pow(k: i64) -> Self {
        Scalar::s_pow(2 * k)
    }

    /// `c·s^k`.
    pub fn monomial(c: GaussRat, k: i64) -> Self {
        if c.is_zero() {
            return Scalar::zero();
        }
        if k >= 0 {
            Scalar { num: SPoly::monomial(c, k as usize), den: SPoly::one() }
        } else {
            Scalar { num: SPoly::constant(c), den: SPoly::monomial(GaussRat::one(), (-k) as usize) }
        }
    }

    pub fn constant(c: GaussRat) -> Self {
        Scalar { num: SPoly::constant(c), den: SPoly::one() }
    }

    /// Builds `num/den` and canonicalizes.
    pub fn from_parts(num: SPoly, den: SPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::canonical(num, den))
    }

    fn canonical(num: SPoly, den: SPoly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        if den.is_constant() {
            let c = den.leading().unwrap();
            if c.is_one() {
                return Scalar { num, den };
            }
            let inv = c.inv().unwrap();
            return Scalar { num: num.scale(&inv), den: SPoly::one() };
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() { (num, den) } else { (num.div_rem(&g).0, den.div_rem(&g).0) };
        let lead = d.leading().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.inv().unwrap();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        Scalar { num: n, den: d }
    }

    pub fn numer(&self) -> &SPoly {
        &self.num
    }

    pub fn denom(&self) -> &SPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value does not depend on `s`.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    /// The value as a Gaussian rational, if `s`-free.
    pub fn as_constant(&self) -> Option<GaussRat> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn conj(&self) -> Self {
        Scalar { num: self.num.conj(), den: self.den.conj() }
    }

    /// Equal to its own conjugate.
    pub fn is_self_adjoint(&self) -> bool {
        *self == self.conj()
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut b = base;
        let mut acc = Scalar::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        Ok(acc)
    }

    /// `s`-adic valuation: order of vanishing at `s = 0` (negative for poles).
    pub fn valuation(&self) -> Option<i64> {
        let vn = self.num.valuation()? as i64;
        let vd = self.den.valuation().unwrap_or(0) as i64;
        Some(vn - vd)
    }

    /// Coefficient of the lowest power of `s` in the Laurent expansion at 0.
    pub fn lowest_coeff(&self) -> Option<GaussRat> {
        let vn = self.num.valuation()?;
        let vd = self.den.valuation().unwrap_or(0);
        Some(&self.num.coeff(vn) / &self.den.coeff(vd))
    }

    /// If the value is `r·s^k`, returns `(r, k)`.
    pub fn as_monomial(&self) -> Option<(GaussRat, i64)> {
        if self.num.is_monomial() && self.den.is_monomial() {
            Some((self.lowest_coeff()?, self.valuation()?))
        } else {
            None
        }
    }

    /// Exact value at `s = p`.
    pub fn specialize(&self, p: &SpecPoint) -> Result<GaussRat, ScalarError> {
        let d = self.den.eval_rational(p.value());
        if d.is_zero() {
            return Err(ScalarError::Pole(p.to_string()));
        }
        Ok(&self.num.eval_rational(p.value()) / &d)
    }

    /// Sign of a self-adjoint value at `s = p`.
    pub fn sign_at(&self, p: &SpecPoint) -> Result<Sign, ScalarError> {
        if !self.is_self_adjoint() {
            return Err(ScalarError::NotSelfAdjoint(self.to_string()));
        }
        let v = self.specialize(p)?;
        debug_assert!(v.is_real());
        Ok(Sign::of(&v.re))
    }

    /// Exact value at `p`, plus its sign when the scalar is self-adjoint.
    pub fn specialize_and_sign(&self, p: &SpecPoint) -> Result<Specialized, ScalarError> {
        let value = self.specialize(p)?;
        let sign = if self.is_self_adjoint() { Some(Sign::of(&value.re)) } else { None };
        Ok(Specialized { value, sign })
    }

    /// Self-adjoint and strictly positive at every point.
    pub fn is_positive_at(&self, points: &SpecPoints) -> bool {
        points.iter().all(|p| matches!(self.sign_at(p), Ok(Sign::Positive)))
    }

    /// Square root of a value of the form `r·s^{2k}` with `r` a positive rational
    /// square. Returns `None` when no such root exists in the field.
    pub fn positive_sqrt(&self) -> Option<Scalar> {
        let (r, k) = self.as_monomial()?;
        if k % 2 != 0 || !r.is_real() || !r.re.is_positive() {
            return None;
        }
        let n = r.re.numer().sqrt();
        let d = r.re.denom().sqrt();
        if &(&n * &n) != r.re.numer() || &(&d * &d) != r.re.denom() {
            return None;
        }
        Some(Scalar::monomial(GaussRat::real(BigRational::new(n, d)), k / 2))
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let n = self.num.to_string();
        let num_atomic = self.num.coeffs().iter().filter(|c| !c.is_zero()).count() == 1
            && !n.starts_with('-')
            && !n.contains(" + ")
            && !n.contains(" - ");
        let den_monomial = self.den.is_monomial();
        let n = if num_atomic { n } else { format!("({n})") };
        let d = if den_monomial { self.den.to_string() } else { format!("({})", self.den) };
        // A monic monomial denominator prints as `s` or `s^k`, both atomic.
        write!(f, "{n}/{d}")
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_scalar(s)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return Scalar { num: self.num.add(&rhs.num), den: SPoly::one() };
            }
            return Scalar::canonical(self.num.add(&rhs.num), self.den.clone());
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        Scalar::canonical(num, self.den.mul(&rhs.den))
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar { num: self.num.mul(&rhs.num), den: SPoly::one() };
        }
        Scalar::canonical(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::inv`] for a checked inverse.
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| &a + &b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    fn of(r: &BigRational) -> Sign {
        if r.is_zero() {
            Sign::Zero
        } else if r.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Specialized {
    pub value: GaussRat,
    pub sign: Option<Sign>,
}

/// A value for `s` strictly inside (0, 1), i.e. `q = s² ∈ (0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpecPoint(BigRational);

impl SpecPoint {
    pub fn new(value: BigRational) -> Result<Self, ScalarError> {
        if value.is_positive() && value < BigRational::one() {
            Ok(SpecPoint(value))
        } else {
            Err(ScalarError::BadSpecPoint(fmt_ratio(&value)))
        }
    }

    pub fn ratio(p: i64, q: i64) -> Result<Self, ScalarError> {
        if q == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        SpecPoint::new(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for SpecPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_ratio(&self.0))
    }
}

impl FromStr for SpecPoint {
    type Err = ScalarError;
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let c = parse_scalar(text)?
            .as_constant()
            .filter(GaussRat::is_real)
            .ok_or_else(|| ScalarError::BadSpecPoint(text.trim().to_string()))?;
        SpecPoint::new(c.re)
    }
}

fn fmt_ratio(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The configured set of evaluation points for positivity certificates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecPoints(Vec<SpecPoint>);

impl SpecPoints {
    pub const ENV_VAR: &'static str = "HOPF_FORGE_SPEC_POINTS";

    pub fn new(points: Vec<SpecPoint>) -> Self {
        let mut points = points;
        points.sort();
        points.dedup();
        SpecPoints(points)
    }

    /// Parses a comma-separated list such as `1/3, 1/2, 2/3`.
    pub fn parse_list(text: &str) -> Result<Self, ScalarError> {
        let pts =
            text.split(',').filter(|t| !t.trim().is_empty()).map(str::parse).collect::<Result<Vec<SpecPoint>, _>>()?;
        if pts.is_empty() {
            return Err(ScalarError::BadSpecPoint(text.to_string()));
        }
        Ok(SpecPoints::new(pts))
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SpecPoint> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[SpecPoint] {
        &self.0
    }
}

impl Default for SpecPoints {
    /// `{1/3, 1/2, 2/3}`.
    fn default() -> Self {
        SpecPoints::new(vec![
            SpecPoint::ratio(1, 3).unwrap(),
            SpecPoint::ratio(1, 2).unwrap(),
            SpecPoint::ratio(2, 3).unwrap(),
        ])
    }
}

impl fmt::Display for SpecPoints {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}
