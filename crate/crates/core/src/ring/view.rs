//! Typed views of ring elements and canonical printing.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::poly::{LaurentPoly, Poly};
use crate::scalar::Scalar;
use crate::xy::XYQuotientValue;

use super::{add_coeff, Coords, GradedElement, MatrixBase, Mono, RingInstance, RingKind};

/// Entry-wise allowed monomial of a matrix component: `Some(a)` means `k t^a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPattern {
    pub entries: Vec<Vec<Option<i64>>>,
}

impl ComponentPattern {
    pub fn is_empty(&self) -> bool {
        self.entries.iter().flatten().all(Option::is_none)
    }

    pub fn dimension(&self) -> usize {
        self.entries.iter().flatten().filter(|e| e.is_some()).count()
    }
}

impl fmt::Display for ComponentPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cell = |e: &Option<i64>| match e {
            None => "0".to_string(),
            Some(0) => "k".to_string(),
            Some(1) => "kt".to_string(),
            Some(a) => format!("kt^{a}"),
        };
        let rows: Vec<String> =
            self.entries.iter().map(|r| format!("[{}]", r.iter().map(cell).collect::<Vec<_>>().join(", "))).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl RingInstance {
    /// Entry-wise pattern of `R_sigma` for matrix instances.
    pub fn component_pattern(&self, sigma: &GroupElement) -> Result<ComponentPattern> {
        let shape = self.matrix_shape().ok_or_else(|| Error::InvalidInstance("not a matrix instance".into()))?;
        let mut entries = vec![vec![None; shape.n]; shape.n];
        for m in self.matrix_entry_monos(sigma) {
            entries[m.slot as usize / shape.n][m.slot as usize % shape.n] = Some(m.exp);
        }
        Ok(ComponentPattern { entries })
    }

    /// Entries of a matrix-instance element as Laurent polynomials in `t`.
    pub fn to_matrix(&self, a: &GradedElement) -> Option<Vec<Vec<LaurentPoly>>> {
        let n = self.matrix_shape()?.n;
        let mut out = vec![vec![LaurentPoly::zero(self.field); n]; n];
        for (m, c) in a.coords() {
            let (i, j) = (m.slot as usize / n, m.slot as usize % n);
            out[i][j] = out[i][j].add(&LaurentPoly::monomial(c, m.exp));
        }
        Some(out)
    }

    /// Matrix-instance element from entries; fails if an entry leaves the base ring
    /// or the result is not in the ring.
    pub fn from_matrix(&self, entries: &[Vec<LaurentPoly>]) -> Result<GradedElement> {
        let shape = self.matrix_shape().ok_or_else(|| Error::InvalidInstance("not a matrix instance".into()))?;
        if entries.len() != shape.n || entries.iter().any(|r| r.len() != shape.n) {
            return Err(Error::InvalidInstance(format!("expected a {0}x{0} matrix", shape.n)));
        }
        let mut coords = Coords::new();
        for (i, row) in entries.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                for (e, c) in p.terms() {
                    let m = Mono::new((i * shape.n + j) as u8, e);
                    if !self.mono_valid(&m) {
                        let base = match shape.base {
                            MatrixBase::GroundField => "k",
                            MatrixBase::PolyD { .. } => "k[t]",
                            MatrixBase::Laurent { .. } => "k[t,t^-1]",
                        };
                        return Err(Error::InvalidInstance(format!("entry ({}, {}) = {p} is not in {base}", i + 1, j + 1)));
                    }
                    add_coeff(&mut coords, m, c.clone());
                }
            }
        }
        let a = self.from_coords(&coords);
        self.check(&a)?;
        Ok(a)
    }

    /// The `k[x,y]/(xy)` normal form of a Nastasescu element.
    pub fn to_xy(&self, a: &GradedElement) -> Option<XYQuotientValue> {
        matches!(self.kind, RingKind::Nastasescu { .. }).then(|| {
            let mut v = XYQuotientValue::zero(self.field);
            for (m, c) in a.coords() {
                let term = match m.exp {
                    0 => XYQuotientValue::constant(c),
                    e if e > 0 => XYQuotientValue::x_power(c, e as usize),
                    e => XYQuotientValue::y_power(c, e.unsigned_abs() as usize),
                };
                v = v.add(&term).expect("one field");
            }
            v
        })
    }

    pub fn from_xy(&self, v: &XYQuotientValue) -> Result<GradedElement> {
        if !matches!(self.kind, RingKind::Nastasescu { .. }) {
            return Err(Error::InvalidInstance("not a k[x,y]/(xy) instance".into()));
        }
        let mut coords = Coords::new();
        add_coeff(&mut coords, Mono::new(0, 0), v.constant.clone());
        for (i, c) in v.x_coeffs.iter().enumerate() {
            add_coeff(&mut coords, Mono::new(0, i as i64 + 1), c.clone());
        }
        for (i, c) in v.y_coeffs.iter().enumerate() {
            add_coeff(&mut coords, Mono::new(0, -(i as i64) - 1), c.clone());
        }
        Ok(self.from_coords(&coords))
    }

    pub fn to_poly(&self, a: &GradedElement) -> Option<Poly> {
        matches!(self.kind, RingKind::PolyD { .. }).then(|| {
            a.coords().into_iter().fold(Poly::zero(self.field), |acc, (m, c)| acc.add(&Poly::monomial(c, m.exp as usize)))
        })
    }

    pub fn from_poly(&self, p: &Poly) -> Result<GradedElement> {
        if !matches!(self.kind, RingKind::PolyD { .. }) {
            return Err(Error::InvalidInstance("not a k[t] instance".into()));
        }
        let coords = p.coeffs().iter().enumerate().map(|(i, c)| (Mono::new(0, i as i64), c.clone())).collect();
        Ok(self.from_coords(&coords))
    }

    /// Components `(f(x), g(y))` of a direct-sum element.
    pub fn to_laurent_pair(&self, a: &GradedElement) -> Option<(LaurentPoly, LaurentPoly)> {
        matches!(self.kind, RingKind::DirectSumLaurent { .. }).then(|| {
            let mut pair = (LaurentPoly::zero(self.field), LaurentPoly::zero(self.field));
            for (m, c) in a.coords() {
                let part = LaurentPoly::monomial(c, m.exp);
                if m.slot == 0 {
                    pair.0 = pair.0.add(&part);
                } else {
                    pair.1 = pair.1.add(&part);
                }
            }
            pair
        })
    }

    pub fn from_laurent_pair(&self, f: &LaurentPoly, g: &LaurentPoly) -> Result<GradedElement> {
        if !matches!(self.kind, RingKind::DirectSumLaurent { .. }) {
            return Err(Error::InvalidInstance("not a direct-sum instance".into()));
        }
        let mut coords = Coords::new();
        for (e, c) in f.terms() {
            add_coeff(&mut coords, Mono::new(0, e), c.clone());
        }
        for (e, c) in g.terms() {
            add_coeff(&mut coords, Mono::new(1, e), c.clone());
        }
        Ok(self.from_coords(&coords))
    }

    /// Shortest words over positive generator steps, for printing group-algebra elements.
    fn element_words(&self) -> BTreeMap<GroupElement, Vec<(String, i64)>> {
        let g = &self.group;
        let gens: Vec<(String, GroupElement)> = g.generator_names().into_iter().zip(g.generators()).collect();
        let mut words = BTreeMap::new();
        words.insert(g.identity(), Vec::new());
        let mut queue = VecDeque::from([g.identity()]);
        while let Some(x) = queue.pop_front() {
            for (name, step) in &gens {
                let y = g.mul(&x, step);
                if !words.contains_key(&y) {
                    let mut w: Vec<(String, i64)> = words[&x].clone();
                    match w.last_mut() {
                        Some((last, k)) if last == name => *k += 1,
                        _ => w.push((name.clone(), 1)),
                    }
                    words.insert(y.clone(), w);
                    queue.push_back(y);
                }
            }
        }
        words
    }

    /// Canonical text, parseable back by the expression grammar.
    pub fn format_element(&self, a: &GradedElement) -> String {
        if let Some(m) = self.to_matrix(a) {
            let rows: Vec<String> =
                m.iter().map(|r| format!("[{}]", r.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "))).collect();
            return format!("[{}]", rows.join(", "));
        }
        if a.is_zero() {
            return "0".into();
        }
        let words = matches!(self.kind, RingKind::GroupAlgebra { .. }).then(|| self.element_words());
        let power = |var: &str, e: i64| if e == 1 { var.to_string() } else { format!("{var}^{e}") };
        let mut by_degree: BTreeMap<String, &Coords> = BTreeMap::new();
        for (d, c) in a.terms() {
            by_degree.insert(self.group.format(d), c);
        }
        let mut parts: Vec<(bool, String)> = Vec::new();
        for coords in by_degree.values() {
            for (m, c) in coords.iter() {
                let body: Option<String> = match &self.kind {
                    RingKind::Nastasescu { .. } => match m.exp {
                        0 => None,
                        e if e > 0 => Some(power("x", e)),
                        e => Some(power("y", -e)),
                    },
                    RingKind::PolyD { .. } => (m.exp != 0).then(|| power("t", m.exp)),
                    RingKind::DirectSumLaurent { .. } => Some(power(if m.slot == 0 { "x" } else { "y" }, m.exp)),
                    RingKind::GroupAlgebra { elements } => {
                        let w = &words.as_ref().expect("words computed")[&elements[m.exp as usize]];
                        (!w.is_empty()).then(|| w.iter().map(|(n, k)| power(n, *k)).collect::<Vec<_>>().join("*"))
                    }
                    RingKind::Matrix { .. } | RingKind::Bazhenov => unreachable!("matrices printed above"),
                };
                parts.push(signed_term(c, body));
            }
        }
        join_terms(&parts)
    }
}

fn signed_term(c: &Scalar, body: Option<String>) -> (bool, String) {
    let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
    let text = match body {
        None => mag.to_string(),
        Some(b) if mag.is_one() => b,
        Some(b) => format!("{mag}*{b}"),
    };
    (neg, text)
}

fn join_terms(parts: &[(bool, String)]) -> String {
    let mut out = String::new();
    for (i, (neg, t)) in parts.iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(t);
    }
    out
}
