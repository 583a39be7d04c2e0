//! Elements of the restricted product of dihedral groups `D_{2i+1}`, `i >= 1`.
//!
//! Coordinate `i` lives in the dihedral group of order `2(2i+1)`, written
//! `r^a s^f` with `a mod 2i+1`. All but finitely many coordinates are the
//! rotation by a common integer `tail` (reduced mod `2i+1`); the rest are
//! stored as exceptions. Reflections only occur among exceptions.

use std::collections::BTreeMap;

use serde::Serialize;

/// `r^amount s^flip` in one dihedral coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Coord {
    pub amount: u64,
    pub flip: bool,
}

pub fn modulus(i: u32) -> u64 {
    2 * i as u64 + 1
}

impl Coord {
    fn mul(self, other: Coord, m: u64) -> Coord {
        let b = if self.flip { (m - other.amount) % m } else { other.amount };
        Coord { amount: (self.amount + b) % m, flip: self.flip ^ other.flip }
    }

    fn inverse(self, m: u64) -> Coord {
        if self.flip {
            self
        } else {
            Coord { amount: (m - self.amount) % m, flip: false }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RestrictedElement {
    exceptions: BTreeMap<u32, Coord>,
    tail: i64,
}

impl RestrictedElement {
    pub fn identity() -> Self {
        Self::default()
    }

    /// The element whose every coordinate is the rotation by `c`.
    pub fn tail_rotation(c: i64) -> Self {
        RestrictedElement { exceptions: BTreeMap::new(), tail: c }
    }

    /// Builds from raw exceptions; entries equal to the tail value are dropped.
    pub fn new(tail: i64, exceptions: impl IntoIterator<Item = (u32, Coord)>) -> Self {
        let mut e = RestrictedElement { exceptions: BTreeMap::new(), tail };
        for (i, c) in exceptions {
            assert!(i >= 1, "coordinates start at 1");
            let m = modulus(i);
            e.exceptions.insert(i, Coord { amount: c.amount % m, flip: c.flip });
        }
        e.normalize();
        e
    }

    /// Reflection `s` at coordinate `i`, identity elsewhere.
    pub fn flip_at(i: u32) -> Self {
        Self::new(0, [(i, Coord { amount: 0, flip: true })])
    }

    /// Rotation by one step at coordinate `i`, identity elsewhere.
    pub fn rotation_at(i: u32) -> Self {
        Self::new(0, [(i, Coord { amount: 1, flip: false })])
    }

    pub fn tail(&self) -> i64 {
        self.tail
    }

    pub fn exceptions(&self) -> &BTreeMap<u32, Coord> {
        &self.exceptions
    }

    /// Coordinates carrying a reflection, ascending.
    pub fn flip_positions(&self) -> Vec<u32> {
        self.exceptions.iter().filter(|(_, c)| c.flip).map(|(i, _)| *i).collect()
    }

    fn tail_coord(&self, i: u32) -> Coord {
        Coord { amount: self.tail.rem_euclid(modulus(i) as i64) as u64, flip: false }
    }

    pub fn coord(&self, i: u32) -> Coord {
        self.exceptions.get(&i).copied().unwrap_or_else(|| self.tail_coord(i))
    }

    fn normalize(&mut self) {
        let tail = self.tail;
        self.exceptions
            .retain(|&i, c| *c != Coord { amount: tail.rem_euclid(modulus(i) as i64) as u64, flip: false });
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = RestrictedElement { exceptions: BTreeMap::new(), tail: self.tail + other.tail };
        for &i in self.exceptions.keys().chain(other.exceptions.keys()) {
            out.exceptions.insert(i, self.coord(i).mul(other.coord(i), modulus(i)));
        }
        out.normalize();
        out
    }

    pub fn inverse(&self) -> Self {
        let mut out = RestrictedElement { exceptions: BTreeMap::new(), tail: -self.tail };
        for (&i, c) in &self.exceptions {
            out.exceptions.insert(i, c.inverse(modulus(i)));
        }
        out.normalize();
        out
    }

    pub fn is_identity(&self) -> bool {
        self.tail == 0 && self.exceptions.is_empty()
    }

    /// Word in the generators `rho` (tail rotation), `r<i>`, `s<i>`.
    pub fn word(&self) -> String {
        let mut parts = Vec::new();
        match self.tail {
            0 => {}
            1 => parts.push("rho".to_string()),
            c => parts.push(format!("rho^{c}")),
        }
        for (&i, c) in &self.exceptions {
            // correction = tail_coord^-1 * c = r^(a - tail) s^f
            let m = modulus(i);
            let shift = (c.amount as i64 - self.tail).rem_euclid(m as i64);
            match shift {
                0 => {}
                1 => parts.push(format!("r{i}")),
                k => parts.push(format!("r{i}^{k}")),
            }
            if c.flip {
                parts.push(format!("s{i}"));
            }
        }
        if parts.is_empty() {
            "e".into()
        } else {
            parts.join(" ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tails_add_coordinatewise() {
        let a = RestrictedElement::tail_rotation(1);
        let b = RestrictedElement::tail_rotation(2);
        assert_eq!(a.mul(&b), RestrictedElement::tail_rotation(3));
    }

    #[test]
    fn reflection_conjugates_rotation() {
        let s = RestrictedElement::flip_at(2);
        let r = RestrictedElement::rotation_at(2);
        let lhs = s.mul(&r).mul(&s.inverse());
        assert_eq!(lhs, r.inverse());
    }

    #[test]
    fn exception_equal_to_tail_is_dropped() {
        // tail 3 at coordinate 1 (mod 3) is the identity rotation.
        let e = RestrictedElement::new(3, [(1, Coord { amount: 0, flip: false })]);
        assert!(e.exceptions().is_empty());
    }

    #[test]
    fn word_round_trip_shape() {
        let g = RestrictedElement::new(1, [(1, Coord { amount: 0, flip: true }), (3, Coord { amount: 4, flip: false })]);
        assert_eq!(g.word(), "rho r1^2 s1 r3^3");
    }
}
