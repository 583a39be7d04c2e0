//! Univariate and Laurent polynomials in `t` over a [`Field`].

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Polynomial in `t`, coefficients lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn zero(field: Field) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: Field) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Scalar, degree: usize) -> Self {
        let field = c.field();
        let mut coeffs = vec![field.zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(field, coeffs)
    }

    pub fn from_coeffs(field: Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Exponent of the lowest nonzero term (t-adic valuation).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval_at_zero(&self) -> Scalar {
        self.coeff(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        Poly::from_coeffs(self.field, coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly { field: self.field, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(self.field, coeffs)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::from_coeffs(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Exact division by `t`; fails when the constant term is nonzero.
    pub fn div_t(&self) -> Option<Poly> {
        if !self.eval_at_zero().is_zero() {
            return None;
        }
        Some(Poly::from_coeffs(self.field, self.coeffs.iter().skip(1).cloned().collect()))
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_coeffs(self.field, 0, self.coeffs.clone())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(i64, &Scalar)> = self.coeffs.iter().enumerate().map(|(i, c)| (i as i64, c)).collect();
        write_terms(f, "t", &terms)
    }
}

/// Laurent polynomial `t^valuation * (c_0 + c_1 t + ...)` with nonzero end coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    field: Field,
    valuation: i64,
    coeffs: Vec<Scalar>,
}

impl LaurentPoly {
    pub fn zero(field: Field) -> Self {
        LaurentPoly { field, valuation: 0, coeffs: Vec::new() }
    }

    pub fn one(field: Field) -> Self {
        Self::monomial(field.one(), 0)
    }

    pub fn monomial(c: Scalar, exp: i64) -> Self {
        let field = c.field();
        Self::from_coeffs(field, exp, vec![c])
    }

    pub fn from_coeffs(field: Field, valuation: i64, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(coeffs.len());
        if lead == coeffs.len() {
            return Self::zero(field);
        }
        coeffs.drain(..lead);
        LaurentPoly { field, valuation: valuation + lead as i64, coeffs }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.valuation + i as i64, c))
    }

    pub fn coeff(&self, exp: i64) -> Scalar {
        let i = exp - self.valuation;
        if i < 0 {
            return self.field.zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.valuation.min(other.valuation);
        let hi = (self.valuation + self.coeffs.len() as i64).max(other.valuation + other.coeffs.len() as i64);
        let coeffs = (lo..hi).map(|e| &self.coeff(e) + &other.coeff(e)).collect();
        LaurentPoly::from_coeffs(self.field, lo, coeffs)
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly { field: self.field, valuation: self.valuation, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero(self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        LaurentPoly::from_coeffs(self.field, self.valuation + other.valuation, coeffs)
    }

    pub fn scale(&self, c: &Scalar) -> LaurentPoly {
        LaurentPoly::from_coeffs(self.field, self.valuation, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Inverse of a unit of `k[t, t^-1]`, i.e. of a nonzero monomial `c t^m`.
    pub fn unit_invert(&self) -> Result<LaurentPoly> {
        if !self.is_monomial() {
            return Err(Error::NotAUnit(self.to_string()));
        }
        let inv = self.coeffs[0].inv().ok_or_else(|| Error::NotAUnit(self.to_string()))?;
        Ok(LaurentPoly::monomial(inv, -self.valuation))
    }

    /// Back to `k[t]` when no negative powers occur.
    pub fn to_poly(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero(self.field));
        }
        if self.valuation < 0 {
            return None;
        }
        let mut coeffs = vec![self.field.zero(); self.valuation as usize];
        coeffs.extend(self.coeffs.iter().cloned());
        Some(Poly::from_coeffs(self.field, coeffs))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(i64, &Scalar)> = self.terms().collect();
        write_terms(f, "t", &terms)
    }
}

/// Writes `sum c_i var^e_i` highest exponent first, in the expression grammar.
pub(crate) fn write_terms(f: &mut impl fmt::Write, var: &str, terms: &[(i64, &Scalar)]) -> fmt::Result {
    let mut first = true;
    for &(e, c) in terms.iter().rev() {
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        write_monomial(f, &mag, var, e)?;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

pub(crate) fn write_monomial(f: &mut impl fmt::Write, mag: &Scalar, var: &str, e: i64) -> fmt::Result {
    if e == 0 {
        return write!(f, "{mag}");
    }
    if !mag.is_one() {
        write!(f, "{mag}*")?;
    }
    if e == 1 {
        write!(f, "{var}")
    } else {
        write!(f, "{var}^{e}")
    }
}
