//! Normal form for `k[x, y] / (xy)`: a constant plus a pure-`x` and a pure-`y` part.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::write_terms;
use crate::scalar::{Field, Scalar};

/// `constant + sum x_coeffs[i] x^(i+1) + sum y_coeffs[i] y^(i+1)`.
///
/// Mixed monomials cannot be represented, so the ideal `(xy)` holds structurally.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct XYQuotientValue {
    field: Field,
    pub constant: Scalar,
    pub x_coeffs: Vec<Scalar>,
    pub y_coeffs: Vec<Scalar>,
}

impl XYQuotientValue {
    pub fn new(constant: Scalar, x_coeffs: Vec<Scalar>, y_coeffs: Vec<Scalar>) -> Self {
        let field = constant.field();
        let mut v = XYQuotientValue { field, constant, x_coeffs, y_coeffs };
        strip(&mut v.x_coeffs);
        strip(&mut v.y_coeffs);
        v
    }

    pub fn zero(field: Field) -> Self {
        Self::new(field.zero(), Vec::new(), Vec::new())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(c, Vec::new(), Vec::new())
    }

    pub fn x_power(c: Scalar, n: usize) -> Self {
        Self::pure(c, n, true)
    }

    pub fn y_power(c: Scalar, n: usize) -> Self {
        Self::pure(c, n, false)
    }

    fn pure(c: Scalar, n: usize, is_x: bool) -> Self {
        let field = c.field();
        if n == 0 {
            return Self::constant(c);
        }
        let mut v = vec![field.zero(); n];
        v[n - 1] = c;
        if is_x {
            Self::new(field.zero(), v, Vec::new())
        } else {
            Self::new(field.zero(), Vec::new(), v)
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.x_coeffs.is_empty() && self.y_coeffs.is_empty()
    }

    /// Coefficient of `x^n` for `n > 0`, of `y^-n` for `n < 0`, constant at 0.
    pub fn coeff(&self, n: i64) -> Scalar {
        let pick = |v: &Vec<Scalar>, i: i64| v.get(i as usize - 1).cloned().unwrap_or_else(|| self.field.zero());
        match n {
            0 => self.constant.clone(),
            n if n > 0 => pick(&self.x_coeffs, n),
            n => pick(&self.y_coeffs, -n),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self::new(
            self.constant.checked_add(&other.constant)?,
            add_vec(&self.x_coeffs, &other.x_coeffs)?,
            add_vec(&self.y_coeffs, &other.y_coeffs)?,
        ))
    }

    /// Product in `k[x,y]/(xy)`; every cross term `x^i y^j` is dropped.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let c = &self.constant;
        let d = &other.constant;
        let x = add_vec(
            &add_vec(&scale_vec(&other.x_coeffs, c), &scale_vec(&self.x_coeffs, d))?,
            &conv(&self.x_coeffs, &other.x_coeffs, self.field),
        )?;
        let y = add_vec(
            &add_vec(&scale_vec(&other.y_coeffs, c), &scale_vec(&self.y_coeffs, d))?,
            &conv(&self.y_coeffs, &other.y_coeffs, self.field),
        )?;
        Ok(Self::new(c.checked_mul(d)?, x, y))
    }
}

impl fmt::Display for XYQuotientValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let y_terms: Vec<(i64, &Scalar)> = self.y_coeffs.iter().enumerate().map(|(i, c)| (i as i64 + 1, c)).collect();
        let mut x_terms: Vec<(i64, &Scalar)> = vec![(0, &self.constant)];
        x_terms.extend(self.x_coeffs.iter().enumerate().map(|(i, c)| (i as i64 + 1, c)));
        write_terms(&mut out, "x", &x_terms)?;
        let mut y_out = String::new();
        write_terms(&mut y_out, "y", &y_terms)?;
        match (out.as_str(), y_out.as_str()) {
            (_, "0") => f.write_str(&out),
            ("0", _) => f.write_str(&y_out),
            _ => {
                if let Some(rest) = y_out.strip_prefix('-') {
                    write!(f, "{out} - {rest}")
                } else {
                    write!(f, "{out} + {y_out}")
                }
            }
        }
    }
}

fn strip(v: &mut Vec<Scalar>) {
    while v.last().is_some_and(Scalar::is_zero) {
        v.pop();
    }
}

fn add_vec(a: &[Scalar], b: &[Scalar]) -> Result<Vec<Scalar>> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(p), Some(q)) => p.checked_add(q),
            (Some(p), None) | (None, Some(p)) => Ok(p.clone()),
            (None, None) => unreachable!(),
        })
        .collect()
}

fn scale_vec(a: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    a.iter().map(|v| v * c).collect()
}

// a, b hold coefficients of v^1, v^2, ...; the product starts at v^2.
fn conv(a: &[Scalar], b: &[Scalar], field: Field) -> Vec<Scalar> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len()];
    for (i, p) in a.iter().enumerate() {
        for (j, q) in b.iter().enumerate() {
            out[i + j + 1] = &out[i + j + 1] + &(p * q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Scalar {
        Field::Rational.from_i64(v)
    }

    #[test]
    fn x_times_y_vanishes() {
        let x = XYQuotientValue::x_power(q(1), 1);
        let y = XYQuotientValue::y_power(q(1), 1);
        assert!(x.mul(&y).unwrap().is_zero());
    }

    #[test]
    fn one_plus_x_times_one_plus_y() {
        let one = XYQuotientValue::constant(q(1));
        let a = one.add(&XYQuotientValue::x_power(q(1), 1)).unwrap();
        let b = one.add(&XYQuotientValue::y_power(q(1), 1)).unwrap();
        let p = a.mul(&b).unwrap();
        assert_eq!(p, XYQuotientValue::new(q(1), vec![q(1)], vec![q(1)]));
        assert_eq!(p.to_string(), "x + 1 + y");
    }

    #[test]
    fn x_powers_add() {
        let p = XYQuotientValue::x_power(q(1), 2).mul(&XYQuotientValue::x_power(q(1), 3)).unwrap();
        assert_eq!(p, XYQuotientValue::x_power(q(1), 5));
        assert_eq!(p.coeff(5), q(1));
    }

    #[test]
    fn field_mismatch() {
        let a = XYQuotientValue::constant(q(1));
        let b = XYQuotientValue::constant(Field::Prime(5).one());
        assert_eq!(a.mul(&b), Err(Error::FieldMismatch));
    }
}
