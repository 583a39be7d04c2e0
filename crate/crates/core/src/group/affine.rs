//! `BS(1,2)` as the group of affine maps `x -> 2^p x + q` with dyadic `q`.
//!
//! Products are compositions, `(f * g)(x) = f(g(x))`, with `a: x -> 2x` and
//! `b: x -> x + 1`, so that `a b a^-1 = b^2`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `num / 2^exp`, with `num` odd whenever `exp > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dyadic {
    num: BigInt,
    exp: u64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { num: BigInt::zero(), exp: 0 }
    }

    pub fn integer(v: impl Into<BigInt>) -> Self {
        Dyadic { num: v.into(), exp: 0 }
    }

    fn normalized(mut num: BigInt, mut exp: u64) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        while exp > 0 && num.is_even() {
            num >>= 1;
            exp -= 1;
        }
        Dyadic { num, exp }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    /// Power of two in the denominator.
    pub fn denominator_log2(&self) -> u64 {
        self.exp
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        let exp = self.exp.max(other.exp);
        let a = &self.num << (exp - self.exp);
        let b = &other.num << (exp - other.exp);
        Self::normalized(a + b, exp)
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { num: -&self.num, exp: self.exp }
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    /// Multiplication by `2^k`.
    pub fn shl(&self, k: i64) -> Dyadic {
        if k >= 0 {
            let drop = (k as u64).min(self.exp);
            Self::normalized(&self.num << (k as u64 - drop), self.exp - drop)
        } else {
            Self::normalized(self.num.clone(), self.exp + k.unsigned_abs())
        }
    }

    /// Exact quotient `self / other` when it is an integer.
    pub fn div_exact_integer(&self, other: &Dyadic) -> Option<BigInt> {
        if other.is_zero() {
            return None;
        }
        // self/other = (a / 2^s) / (b / 2^t) = a 2^t / (b 2^s)
        let num = &self.num << other.exp;
        let den = &other.num << self.exp;
        let (q, r) = num.div_rem(&den);
        r.is_zero().then_some(q)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

/// The affine map `x -> 2^log2_scale * x + shift`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineMap {
    pub log2_scale: i64,
    pub shift: Dyadic,
}

impl AffineMap {
    pub fn identity() -> Self {
        AffineMap { log2_scale: 0, shift: Dyadic::zero() }
    }

    pub fn a() -> Self {
        AffineMap { log2_scale: 1, shift: Dyadic::zero() }
    }

    pub fn b() -> Self {
        AffineMap { log2_scale: 0, shift: Dyadic::integer(1) }
    }

    pub fn is_identity(&self) -> bool {
        self.log2_scale == 0 && self.shift.is_zero()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap {
            log2_scale: self.log2_scale + other.log2_scale,
            shift: other.shift.shl(self.log2_scale).add(&self.shift),
        }
    }

    pub fn inverse(&self) -> AffineMap {
        AffineMap { log2_scale: -self.log2_scale, shift: self.shift.shl(-self.log2_scale).neg() }
    }

    /// Word `a^-e b^m a^(e+p)` for `2^p x + m/2^e`.
    pub fn word(&self) -> String {
        let mut parts = Vec::new();
        let push = |parts: &mut Vec<String>, g: &str, k: i64| match k {
            0 => {}
            1 => parts.push(g.to_string()),
            k => parts.push(format!("{g}^{k}")),
        };
        if self.shift.is_zero() {
            push(&mut parts, "a", self.log2_scale);
        } else {
            let e = self.shift.denominator_log2() as i64;
            push(&mut parts, "a", -e);
            let m = self.shift.numerator();
            if m.is_one() {
                parts.push("b".into());
            } else if m.is_negative() || m > &BigInt::one() {
                parts.push(format!("b^{m}"));
            }
            push(&mut parts, "a", e + self.log2_scale);
        }
        if parts.is_empty() {
            "e".into()
        } else {
            parts.join(" ")
        }
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x -> 2^{}*x + {}", self.log2_scale, self.shift)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_relation() {
        let a = AffineMap::a();
        let b = AffineMap::b();
        let lhs = a.compose(&b).compose(&a.inverse());
        assert_eq!(lhs, b.compose(&b));
    }

    #[test]
    fn inverse_round_trip() {
        let f = AffineMap { log2_scale: -3, shift: Dyadic::integer(5).shl(-2) };
        assert!(f.compose(&f.inverse()).is_identity());
        assert!(f.inverse().compose(&f).is_identity());
    }

    #[test]
    fn dyadic_normal_form() {
        let x = Dyadic::integer(6).shl(-2);
        assert_eq!(x.to_string(), "3/2^1");
        assert_eq!(x.shl(1), Dyadic::integer(3));
        assert_eq!(x.div_exact_integer(&Dyadic::integer(3).shl(-1)), Some(BigInt::from(1)));
    }

    #[test]
    fn word_form() {
        let f = AffineMap { log2_scale: 2, shift: Dyadic::integer(3).shl(-1) };
        assert_eq!(f.word(), "a^-1 b^3 a^3");
        assert_eq!(AffineMap::identity().word(), "e");
    }
}
