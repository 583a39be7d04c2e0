//! Exact normal-form arithmetic for the group families used by the graded rings.

mod affine;
mod restricted;
mod table;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;
use serde::{Serialize, Serializer};

pub use affine::{AffineMap, Dyadic};
pub use restricted::{modulus as dihedral_modulus, Coord, RestrictedElement};
pub use table::{FiniteTable, MAX_ORDER};

use crate::error::{Error, Result};

/// A group family together with its generator names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Group {
    /// `Z`, generator `g`.
    Integers,
    /// `Z^n`, generators `g1 .. gn`.
    FreeAbelian(usize),
    /// `Z/n`, generator `u`.
    Cyclic(u32),
    /// Finite group from a verified table.
    Table(Arc<FiniteTable>),
    /// `<r, s | s^2 = (rs)^2 = e>`.
    InfiniteDihedral,
    /// Restricted product of `D_{2i+1}`; generators `rho`, `r<i>`, `s<i>`.
    RestrictedDihedral,
    /// `BS(1,2) = <a, b | a b a^-1 = b^2>`.
    BaumslagSolitar,
    DirectProduct(Box<Group>, Box<Group>),
}

/// Unique normal form of a group element; equality is field-wise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Int(i64),
    Vector(Vec<i64>),
    /// Cyclic residue or table index.
    Index(u32),
    /// `r^k s^flip`.
    Dihedral { k: i64, flip: bool },
    Restricted(RestrictedElement),
    Affine(AffineMap),
    Pair(Box<GroupElement>, Box<GroupElement>),
}

/// Outcome of an order computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrderResult {
    Finite { n: u64 },
    Infinite { proof: InfiniteProof },
    ExhaustedBound { bound: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InfiniteProof {
    Structural,
    None,
}

impl OrderResult {
    pub fn finite(&self) -> Option<u64> {
        match self {
            OrderResult::Finite { n } => Some(*n),
            _ => None,
        }
    }

    pub fn is_structurally_infinite(&self) -> bool {
        matches!(self, OrderResult::Infinite { proof: InfiniteProof::Structural })
    }
}

impl Group {
    pub fn table(t: FiniteTable) -> Self {
        Group::Table(Arc::new(t))
    }

    /// Built-in finite table by name (`S3`, `D4`, `Q8`, `Z2`, `A4`).
    pub fn builtin_table(name: &str) -> Option<Self> {
        FiniteTable::builtin(name).map(Group::table)
    }

    pub fn direct_product(left: Group, right: Group) -> Result<Self> {
        let l: BTreeSet<String> = left.generator_names().into_iter().collect();
        if let Some(clash) = right.generator_names().into_iter().find(|n| l.contains(n)) {
            return Err(Error::InvalidTable(format!("generator `{clash}` occurs in both factors")));
        }
        Ok(Group::DirectProduct(Box::new(left), Box::new(right)))
    }

    pub fn name(&self) -> String {
        match self {
            Group::Integers => "Z".into(),
            Group::FreeAbelian(n) => format!("Z^{n}"),
            Group::Cyclic(n) => format!("Z/{n}"),
            Group::Table(t) => t.name().to_string(),
            Group::InfiniteDihedral => "D_inf".into(),
            Group::RestrictedDihedral => "D_restricted".into(),
            Group::BaumslagSolitar => "BS(1,2)".into(),
            Group::DirectProduct(l, r) => format!("{} x {}", l.name(), r.name()),
        }
    }

    /// Named generators; for the restricted product only coordinates 1..=3 are listed.
    pub fn generator_names(&self) -> Vec<String> {
        match self {
            Group::Integers => vec!["g".into()],
            Group::FreeAbelian(n) => (1..=*n).map(|i| format!("g{i}")).collect(),
            Group::Cyclic(_) => vec!["u".into()],
            Group::Table(t) => t.generators().iter().map(|(n, _)| n.clone()).collect(),
            Group::InfiniteDihedral => vec!["r".into(), "s".into()],
            Group::RestrictedDihedral => {
                let mut v = vec!["rho".to_string()];
                for i in 1..=3 {
                    v.push(format!("r{i}"));
                    v.push(format!("s{i}"));
                }
                v
            }
            Group::BaumslagSolitar => vec!["a".into(), "b".into()],
            Group::DirectProduct(l, r) => {
                let mut v = l.generator_names();
                v.extend(r.generator_names());
                v
            }
        }
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        self.generator_names().iter().map(|n| self.generator(n).expect("listed generator")).collect()
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            Group::Integers => GroupElement::Int(0),
            Group::FreeAbelian(n) => GroupElement::Vector(vec![0; *n]),
            Group::Cyclic(_) | Group::Table(_) => GroupElement::Index(0),
            Group::InfiniteDihedral => GroupElement::Dihedral { k: 0, flip: false },
            Group::RestrictedDihedral => GroupElement::Restricted(RestrictedElement::identity()),
            Group::BaumslagSolitar => GroupElement::Affine(AffineMap::identity()),
            Group::DirectProduct(l, r) => GroupElement::Pair(Box::new(l.identity()), Box::new(r.identity())),
        }
    }

    /// Looks up a generator by name.
    pub fn generator(&self, name: &str) -> Result<GroupElement> {
        let unknown = || Error::UnknownGenerator(name.to_string());
        match self {
            Group::Integers if name == "g" => Ok(GroupElement::Int(1)),
            Group::FreeAbelian(n) => {
                let i: usize = name.strip_prefix('g').and_then(|s| s.parse().ok()).ok_or_else(unknown)?;
                if i == 0 || i > *n {
                    return Err(unknown());
                }
                let mut v = vec![0; *n];
                v[i - 1] = 1;
                Ok(GroupElement::Vector(v))
            }
            Group::Cyclic(n) if name == "u" => Ok(GroupElement::Index(1 % n)),
            Group::Table(t) => t
                .generators()
                .iter()
                .find(|(g, _)| g == name)
                .map(|(_, i)| GroupElement::Index(*i))
                .ok_or_else(unknown),
            Group::InfiniteDihedral => match name {
                "r" => Ok(GroupElement::Dihedral { k: 1, flip: false }),
                "s" => Ok(GroupElement::Dihedral { k: 0, flip: true }),
                _ => Err(unknown()),
            },
            Group::RestrictedDihedral => {
                if name == "rho" {
                    return Ok(GroupElement::Restricted(RestrictedElement::tail_rotation(1)));
                }
                let (kind, idx) = name.split_at(1.min(name.len()));
                let i: u32 = idx.parse().ok().filter(|&i| i >= 1).ok_or_else(unknown)?;
                match kind {
                    "r" => Ok(GroupElement::Restricted(RestrictedElement::rotation_at(i))),
                    "s" => Ok(GroupElement::Restricted(RestrictedElement::flip_at(i))),
                    _ => Err(unknown()),
                }
            }
            Group::BaumslagSolitar => match name {
                "a" => Ok(GroupElement::Affine(AffineMap::a())),
                "b" => Ok(GroupElement::Affine(AffineMap::b())),
                _ => Err(unknown()),
            },
            Group::DirectProduct(l, r) => {
                if let Ok(x) = l.generator(name) {
                    Ok(GroupElement::Pair(Box::new(x), Box::new(r.identity())))
                } else {
                    let y = r.generator(name)?;
                    Ok(GroupElement::Pair(Box::new(l.identity()), Box::new(y)))
                }
            }
            _ => Err(unknown()),
        }
    }

    /// Normal form of the product of `(generator, exponent)` tokens.
    pub fn normalize_word<S: AsRef<str>>(&self, word: &[(S, i64)]) -> Result<GroupElement> {
        let mut acc = self.identity();
        for (name, exp) in word {
            let name = name.as_ref();
            let g = if name == "e" && self.generator("e").is_err() { self.identity() } else { self.generator(name)? };
            acc = self.mul(&acc, &self.pow(&g, *exp));
        }
        Ok(acc)
    }

    /// Parses a whitespace-separated word `gen[^int] gen[^int] ...`.
    ///
    /// Finite tables additionally accept a full element name such as `(123)` or `-1`.
    pub fn parse_word(&self, text: &str) -> Result<GroupElement> {
        let text = text.trim();
        if let Group::Table(t) = self {
            if let Some(i) = t.element_by_name(text) {
                return Ok(GroupElement::Index(i));
            }
        }
        let mut tokens = Vec::new();
        let mut pos = 0;
        for term in text.split_whitespace() {
            let at = text[pos..].find(term).map_or(pos, |o| pos + o);
            pos = at + term.len();
            let (name, exp) = match term.split_once('^') {
                Some((n, e)) => {
                    let exp: i64 = e.parse().map_err(|_| Error::ExponentOnlyIntegral(e.to_string()))?;
                    (n, exp)
                }
                None => (term, 1),
            };
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::Syntax { pos: at, msg: format!("bad generator token `{term}`") });
            }
            tokens.push((name.to_string(), exp));
        }
        if tokens.is_empty() {
            return Err(Error::Syntax { pos: 0, msg: "empty word".into() });
        }
        self.normalize_word(&tokens)
    }

    fn check_family(&self, a: &GroupElement) -> Result<()> {
        let ok = match (self, a) {
            (Group::Integers, GroupElement::Int(_)) => true,
            (Group::FreeAbelian(n), GroupElement::Vector(v)) => v.len() == *n,
            (Group::Cyclic(n), GroupElement::Index(i)) => i < n,
            (Group::Table(t), GroupElement::Index(i)) => (*i as usize) < t.order(),
            (Group::InfiniteDihedral, GroupElement::Dihedral { .. }) => true,
            (Group::RestrictedDihedral, GroupElement::Restricted(_)) => true,
            (Group::BaumslagSolitar, GroupElement::Affine(_)) => true,
            (Group::DirectProduct(l, r), GroupElement::Pair(x, y)) => {
                l.check_family(x).is_ok() && r.check_family(y).is_ok()
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::FamilyMismatch)
        }
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        self.check_family(a).is_ok()
    }

    /// Checked product; fails when either element is from another family.
    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check_family(a)?;
        self.check_family(b)?;
        Ok(self.mul(a, b))
    }

    /// Product `ab`. Panics on family mismatch; see [`Group::multiply`].
    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        use GroupElement as E;
        match (self, a, b) {
            (Group::Integers, E::Int(x), E::Int(y)) => E::Int(x + y),
            (Group::FreeAbelian(_), E::Vector(x), E::Vector(y)) => {
                E::Vector(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (Group::Cyclic(n), E::Index(x), E::Index(y)) => E::Index((x + y) % n),
            (Group::Table(t), E::Index(x), E::Index(y)) => E::Index(t.mul(*x, *y)),
            (Group::InfiniteDihedral, E::Dihedral { k: k1, flip: f1 }, E::Dihedral { k: k2, flip: f2 }) => {
                // r^k1 s^f1 r^k2 s^f2 = r^(k1 ± k2) s^(f1 + f2)
                let k = if *f1 { k1 - k2 } else { k1 + k2 };
                E::Dihedral { k, flip: f1 ^ f2 }
            }
            (Group::RestrictedDihedral, E::Restricted(x), E::Restricted(y)) => E::Restricted(x.mul(y)),
            (Group::BaumslagSolitar, E::Affine(x), E::Affine(y)) => E::Affine(x.compose(y)),
            (Group::DirectProduct(l, r), E::Pair(x1, y1), E::Pair(x2, y2)) => {
                E::Pair(Box::new(l.mul(x1, x2)), Box::new(r.mul(y1, y2)))
            }
            _ => panic!("group element family mismatch in {}", self.name()),
        }
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        use GroupElement as E;
        match (self, a) {
            (Group::Integers, E::Int(x)) => E::Int(-x),
            (Group::FreeAbelian(_), E::Vector(x)) => E::Vector(x.iter().map(|v| -v).collect()),
            (Group::Cyclic(n), E::Index(x)) => E::Index((n - x) % n),
            (Group::Table(t), E::Index(x)) => E::Index(t.inverse(*x)),
            (Group::InfiniteDihedral, E::Dihedral { k, flip }) => {
                if *flip {
                    a.clone()
                } else {
                    E::Dihedral { k: -k, flip: false }
                }
            }
            (Group::RestrictedDihedral, E::Restricted(x)) => E::Restricted(x.inverse()),
            (Group::BaumslagSolitar, E::Affine(x)) => E::Affine(x.inverse()),
            (Group::DirectProduct(l, r), E::Pair(x, y)) => E::Pair(Box::new(l.inverse(x)), Box::new(r.inverse(y))),
            _ => panic!("group element family mismatch in {}", self.name()),
        }
    }

    /// `a^n` by square-and-multiply; negative `n` uses the inverse.
    pub fn pow(&self, a: &GroupElement, n: i64) -> GroupElement {
        use GroupElement as E;
        match (self, a) {
            (Group::Integers, E::Int(x)) => return E::Int(x * n),
            (Group::FreeAbelian(_), E::Vector(x)) => return E::Vector(x.iter().map(|v| v * n).collect()),
            (Group::InfiniteDihedral, E::Dihedral { k, flip: false }) => return E::Dihedral { k: k * n, flip: false },
            (Group::InfiniteDihedral, E::Dihedral { flip: true, .. }) => {
                return if n.rem_euclid(2) == 0 { self.identity() } else { a.clone() };
            }
            _ => {}
        }
        let mut base = if n < 0 { self.inverse(a) } else { a.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn is_identity(&self, a: &GroupElement) -> bool {
        *a == self.identity()
    }

    pub fn commutes(&self, a: &GroupElement, b: &GroupElement) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// `g a g^-1`.
    pub fn conjugate(&self, a: &GroupElement, by: &GroupElement) -> GroupElement {
        self.mul(&self.mul(by, a), &self.inverse(by))
    }

    /// Order of `a`, proven infinite where the family admits a structural argument.
    pub fn element_order(&self, a: &GroupElement, bound: u64) -> OrderResult {
        use GroupElement as E;
        let structural = OrderResult::Infinite { proof: InfiniteProof::Structural };
        match (self, a) {
            (Group::Integers, E::Int(x)) if *x != 0 => return structural,
            (Group::FreeAbelian(_), E::Vector(v)) if v.iter().any(|x| *x != 0) => return structural,
            (Group::InfiniteDihedral, E::Dihedral { k, flip: false }) if *k != 0 => return structural,
            (Group::RestrictedDihedral, E::Restricted(x)) if x.tail() != 0 => return structural,
            (Group::BaumslagSolitar, E::Affine(x)) if !x.is_identity() => return structural,
            (Group::Cyclic(n), E::Index(x)) => {
                let ord = *n as u64 / (*x as u64).gcd(&(*n as u64));
                return if ord <= bound { OrderResult::Finite { n: ord } } else { OrderResult::ExhaustedBound { bound } };
            }
            (Group::RestrictedDihedral, E::Restricted(x)) => {
                // tail 0: order is the lcm of the exception orders
                let mut ord = 1u64;
                for (&i, c) in x.exceptions() {
                    let o = if c.flip { 2 } else { dihedral_modulus(i) / c.amount.gcd(&dihedral_modulus(i)) };
                    ord = ord.lcm(&o);
                }
                return if ord <= bound { OrderResult::Finite { n: ord } } else { OrderResult::ExhaustedBound { bound } };
            }
            (Group::DirectProduct(l, r), E::Pair(x, y)) => {
                return match (l.element_order(x, bound), r.element_order(y, bound)) {
                    (OrderResult::Infinite { proof: InfiniteProof::Structural }, _)
                    | (_, OrderResult::Infinite { proof: InfiniteProof::Structural }) => structural,
                    (OrderResult::Finite { n: p }, OrderResult::Finite { n: q }) if p.lcm(&q) <= bound => {
                        OrderResult::Finite { n: p.lcm(&q) }
                    }
                    _ => self.order_by_powers(a, bound),
                };
            }
            _ => {}
        }
        self.order_by_powers(a, bound)
    }

    fn order_by_powers(&self, a: &GroupElement, bound: u64) -> OrderResult {
        let mut acc = a.clone();
        for n in 1..=bound {
            if self.is_identity(&acc) {
                return OrderResult::Finite { n };
            }
            acc = self.mul(&acc, a);
        }
        OrderResult::ExhaustedBound { bound }
    }

    /// The unique `n` with `h^n = target`, for `h` of structurally infinite order.
    pub fn discrete_log(&self, h: &GroupElement, target: &GroupElement) -> Option<i64> {
        use GroupElement as E;
        let candidate: Option<i64> = match (self, h, target) {
            (Group::Integers, E::Int(x), E::Int(y)) if *x != 0 => (y % x == 0).then(|| y / x),
            (Group::FreeAbelian(_), E::Vector(x), E::Vector(y)) => {
                let (i, xi) = x.iter().enumerate().find(|(_, v)| **v != 0)?;
                (y[i] % xi == 0).then(|| y[i] / xi)
            }
            (Group::InfiniteDihedral, E::Dihedral { k, flip: false }, E::Dihedral { k: j, flip: false }) if *k != 0 => {
                (j % k == 0).then(|| j / k)
            }
            (Group::InfiniteDihedral, _, _) => return None,
            (Group::RestrictedDihedral, E::Restricted(x), E::Restricted(y)) if x.tail() != 0 => {
                (y.tail() % x.tail() == 0).then(|| y.tail() / x.tail())
            }
            (Group::BaumslagSolitar, E::Affine(x), E::Affine(y)) => {
                if x.log2_scale != 0 {
                    (y.log2_scale % x.log2_scale == 0).then(|| y.log2_scale / x.log2_scale)
                } else if y.log2_scale == 0 && !x.shift.is_zero() {
                    y.shift.div_exact_integer(&x.shift).and_then(|q: BigInt| q.to_i64())
                } else {
                    None
                }
            }
            (Group::DirectProduct(l, r), E::Pair(x1, y1), E::Pair(x2, y2)) => {
                if l.element_order(x1, 1).is_structurally_infinite() {
                    l.discrete_log(x1, x2)
                } else {
                    r.discrete_log(y1, y2)
                }
            }
            _ => None,
        };
        let n = candidate?;
        (self.pow(h, n) == *target).then_some(n)
    }

    /// Canonical printed form, parseable by [`Group::parse_word`].
    pub fn format(&self, a: &GroupElement) -> String {
        use GroupElement as E;
        let power = |g: &str, k: i64| match k {
            0 => "e".to_string(),
            1 => g.to_string(),
            k => format!("{g}^{k}"),
        };
        match (self, a) {
            (Group::Integers, E::Int(x)) => power("g", *x),
            (Group::FreeAbelian(_), E::Vector(v)) => {
                let parts: Vec<String> =
                    v.iter().enumerate().filter(|(_, x)| **x != 0).map(|(i, x)| power(&format!("g{}", i + 1), *x)).collect();
                if parts.is_empty() {
                    "e".into()
                } else {
                    parts.join(" ")
                }
            }
            (Group::Cyclic(_), E::Index(x)) => power("u", *x as i64),
            (Group::Table(t), E::Index(x)) => t.element_name(*x).to_string(),
            (Group::InfiniteDihedral, E::Dihedral { k, flip }) => match (k, flip) {
                (0, false) => "e".into(),
                (0, true) => "s".into(),
                (k, false) => power("r", *k),
                (k, true) => format!("{} s", power("r", *k)),
            },
            (Group::RestrictedDihedral, E::Restricted(x)) => x.word(),
            (Group::BaumslagSolitar, E::Affine(x)) => x.word(),
            (Group::DirectProduct(l, r), E::Pair(x, y)) => {
                let parts: Vec<String> =
                    [l.format(x), r.format(y)].into_iter().filter(|p| p != "e").collect();
                if parts.is_empty() {
                    "e".into()
                } else {
                    parts.join(" ")
                }
            }
            _ => format!("{a:?}"),
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Group::Cyclic(_) | Group::Table(_) => true,
            Group::DirectProduct(l, r) => l.is_finite() && r.is_finite(),
            _ => false,
        }
    }

    /// Every element, for finite groups (index order for tables).
    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        match self {
            Group::Cyclic(n) => Some((0..*n).map(GroupElement::Index).collect()),
            Group::Table(t) => Some((0..t.order() as u32).map(GroupElement::Index).collect()),
            Group::DirectProduct(l, r) => {
                let (ls, rs) = (l.elements()?, r.elements()?);
                Some(
                    ls.iter()
                        .flat_map(|x| rs.iter().map(move |y| GroupElement::Pair(Box::new(x.clone()), Box::new(y.clone()))))
                        .collect(),
                )
            }
            _ => None,
        }
    }

    pub fn order(&self) -> Option<usize> {
        self.elements().map(|e| e.len())
    }

    /// Elements of word length at most `radius` over the listed generators, in BFS order.
    pub fn ball(&self, radius: usize) -> Vec<GroupElement> {
        let mut steps = Vec::new();
        for g in self.generators() {
            steps.push(self.inverse(&g));
            steps.push(g);
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(self.identity());
        queue.push_back((self.identity(), 0));
        while let Some((x, d)) = queue.pop_front() {
            out.push(x.clone());
            if d == radius {
                continue;
            }
            for s in &steps {
                let y = self.mul(&x, s);
                if seen.insert(y.clone()) {
                    queue.push_back((y, d + 1));
                }
            }
        }
        out
    }

    /// A random element of moderate size, used by sampling audits.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupElement {
        use GroupElement as E;
        match self {
            Group::Integers => E::Int(rng.gen_range(-6..=6)),
            Group::FreeAbelian(n) => E::Vector((0..*n).map(|_| rng.gen_range(-6..=6)).collect()),
            Group::Cyclic(n) => E::Index(rng.gen_range(0..*n)),
            Group::Table(t) => E::Index(rng.gen_range(0..t.order() as u32)),
            Group::InfiniteDihedral => E::Dihedral { k: rng.gen_range(-6..=6), flip: rng.gen() },
            Group::RestrictedDihedral => E::Restricted(random_restricted(rng, 3, 4)),
            Group::BaumslagSolitar => {
                let mut acc = self.identity();
                for _ in 0..rng.gen_range(0..6) {
                    let g = if rng.gen() { AffineMap::a() } else { AffineMap::b() };
                    let g = E::Affine(g);
                    let g = if rng.gen() { self.inverse(&g) } else { g };
                    acc = self.mul(&acc, &g);
                }
                acc
            }
            Group::DirectProduct(l, r) => E::Pair(Box::new(l.random_element(rng)), Box::new(r.random_element(rng))),
        }
    }
}

/// Random restricted-product element with at most `max_flips` reflections and
/// `max_rotations` extra rotation exceptions among coordinates `1..=8`.
pub fn random_restricted<R: Rng + ?Sized>(rng: &mut R, max_flips: usize, max_rotations: usize) -> RestrictedElement {
    let tail = rng.gen_range(-5..=5);
    let mut exceptions = Vec::new();
    for _ in 0..rng.gen_range(0..=max_flips) {
        let i = rng.gen_range(1..=8u32);
        exceptions.push((i, Coord { amount: rng.gen_range(0..dihedral_modulus(i)), flip: true }));
    }
    for _ in 0..rng.gen_range(0..=max_rotations) {
        let i = rng.gen_range(1..=8u32);
        if exceptions.iter().any(|(j, _)| *j == i) {
            continue;
        }
        exceptions.push((i, Coord { amount: rng.gen_range(0..dihedral_modulus(i)), flip: false }));
    }
    exceptions.sort_by_key(|(i, _)| *i);
    exceptions.dedup_by_key(|(i, _)| *i);
    RestrictedElement::new(tail, exceptions)
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Serializes a group element as its canonical word.
#[derive(Clone, Debug)]
pub struct Formatted<'a>(pub &'a Group, pub &'a GroupElement);

impl Serialize for Formatted<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.format(self.1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_word_s_r() {
        let g = Group::InfiniteDihedral;
        assert_eq!(g.parse_word("s r").unwrap(), GroupElement::Dihedral { k: -1, flip: true });
        assert_eq!(g.parse_word("r^3 s r^-1").unwrap(), GroupElement::Dihedral { k: 4, flip: true });
    }

    #[test]
    fn integers_cancel() {
        assert_eq!(Group::Integers.parse_word("g^3 g^-3").unwrap(), GroupElement::Int(0));
    }

    #[test]
    fn bs12_relation_from_words() {
        let g = Group::BaumslagSolitar;
        let lhs = g.parse_word("a b a^-1").unwrap();
        assert_eq!(lhs, g.parse_word("b^2").unwrap());
        assert_eq!(g.format(&lhs), "b^2");
    }

    #[test]
    fn word_errors() {
        assert!(matches!(Group::InfiniteDihedral.parse_word("q"), Err(Error::UnknownGenerator(_))));
        assert!(matches!(Group::InfiniteDihedral.parse_word("r^1.5"), Err(Error::ExponentOnlyIntegral(_))));
        assert!(matches!(Group::InfiniteDihedral.parse_word("r^x"), Err(Error::ExponentOnlyIntegral(_))));
    }

    #[test]
    fn multiply_family_mismatch() {
        let g = Group::Integers;
        assert_eq!(g.multiply(&GroupElement::Int(1), &GroupElement::Index(0)), Err(Error::FamilyMismatch));
    }

    #[test]
    fn discrete_logs() {
        let bs = Group::BaumslagSolitar;
        let a = bs.generator("a").unwrap();
        let b = bs.generator("b").unwrap();
        assert_eq!(bs.discrete_log(&a, &bs.pow(&a, -4)), Some(-4));
        assert_eq!(bs.discrete_log(&b, &bs.pow(&b, 7)), Some(7));
        assert_eq!(bs.discrete_log(&a, &b), None);
        let d = Group::InfiniteDihedral;
        assert_eq!(d.discrete_log(&d.parse_word("r^2").unwrap(), &d.parse_word("r^-6").unwrap()), Some(-3));
        assert_eq!(d.discrete_log(&d.parse_word("r").unwrap(), &d.parse_word("s").unwrap()), None);
    }

    #[test]
    fn table_element_names_parse() {
        let q8 = Group::builtin_table("Q8").unwrap();
        let m1 = q8.parse_word("-1").unwrap();
        assert_eq!(q8.element_order(&m1, 10), OrderResult::Finite { n: 2 });
        assert_eq!(q8.parse_word("i i").unwrap(), m1);
    }

    #[test]
    fn ball_sizes() {
        // D_inf: r^k (|k| <= 6) and r^k s (|k| <= 5)
        assert_eq!(Group::InfiniteDihedral.ball(6).len(), 24);
        assert_eq!(Group::Integers.ball(3).len(), 7);
    }

    #[test]
    fn direct_product_generators() {
        let g = Group::direct_product(Group::Integers, Group::InfiniteDihedral).unwrap();
        let x = g.parse_word("g^2 s").unwrap();
        assert_eq!(g.format(&x), "g^2 s");
        assert!(g.element_order(&x, 10).is_structurally_infinite());
        assert!(Group::direct_product(Group::InfiniteDihedral, Group::InfiniteDihedral).is_err());
    }
}
