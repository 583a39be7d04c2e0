//! Group-graded rings with a homogeneous monomial basis.
//!
//! Every built-in ring is spanned by monomials [`Mono`], each homogeneous of a
//! single degree, and monomials multiply to a monomial or to zero. Elements are
//! finite sums of homogeneous components keyed by degree.

mod audit;
mod element;
mod view;

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::group::{Group, GroupElement};
use crate::linalg::Matrix;
use crate::scalar::{Field, Scalar};

pub use audit::{bazhenov_audit, bazhenov_member, grading_axiom_audit, BazhenovAudit, GradedAlgebra, GradingAudit, GradingViolation};
pub use element::GradedElement;
pub use view::ComponentPattern;

/// A basis monomial. `slot` selects the family (matrix entry, `x` or `y`, ...),
/// `exp` the power of the distinguished variable or a group-element index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub slot: u8,
    pub exp: i64,
}

impl Mono {
    pub const fn new(slot: u8, exp: i64) -> Self {
        Mono { slot, exp }
    }
}

/// Coordinates of an element in the monomial basis; zero coefficients are never stored.
pub type Coords = BTreeMap<Mono, Scalar>;

/// Coefficient ring of a matrix instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixBase {
    /// `k`, concentrated in degree `e`.
    GroundField,
    /// `k[t]` with `deg t = h`.
    PolyD { h: GroupElement },
    /// `k[t, t^-1]` with `deg t = h`.
    Laurent { h: GroupElement },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingKind {
    /// `k[x, y]/(xy)` with `deg x = h`, `deg y = h^-1`. Slot 0; `exp > 0` is `x^exp`, `exp < 0` is `y^-exp`.
    Nastasescu { h: GroupElement },
    /// `k[t]` with `deg t = h`.
    PolyD { h: GroupElement },
    /// Shift-graded `M_n(base)(g_1, ..., g_n)`; entry `(i, j)` is slot `i n + j`.
    Matrix { base: MatrixBase, shifts: Vec<GroupElement> },
    /// Subring of `M_2(k[t])(e, s)` over `D_inf` (`deg t = r`) cut out by `a(0) = d(0)`, `b(0) = c(0)`.
    Bazhenov,
    /// Group algebra `kG` of a finite group; `exp` indexes `elements`.
    GroupAlgebra { elements: Vec<GroupElement> },
    /// `k[x, x^-1] (+) k[y, y^-1]`, `deg x = h`, `deg y = h^-1`. Slot 0 is `x^exp`, slot 1 is `y^exp`.
    DirectSumLaurent { h: GroupElement },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingInstance {
    group: Group,
    kind: RingKind,
    field: Field,
}

/// Matrix data shared by matrix instances and the Bazhenov ring.
#[derive(Clone, Debug)]
pub(crate) struct MatrixShape {
    pub n: usize,
    pub base: MatrixBase,
    pub shifts: Vec<GroupElement>,
}

/// Degrees to search, with a bound on the monomial exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub degrees: Vec<GroupElement>,
    pub coeff_bound: i64,
}

impl Window {
    pub fn new(degrees: Vec<GroupElement>, coeff_bound: i64) -> Self {
        Window { degrees, coeff_bound }
    }
}

fn require_infinite(group: &Group, h: &GroupElement) -> Result<()> {
    if !group.contains(h) {
        return Err(Error::InvalidInstance(format!("{h} is not an element of {}", group.name())));
    }
    if !group.element_order(h, 1).is_structurally_infinite() {
        return Err(Error::InvalidInstance(format!(
            "degree {} of the variable must have structurally infinite order",
            group.format(h)
        )));
    }
    Ok(())
}

impl RingInstance {
    pub fn nastasescu(group: Group, h: GroupElement, field: Field) -> Result<Self> {
        require_infinite(&group, &h)?;
        Ok(RingInstance { group, kind: RingKind::Nastasescu { h }, field })
    }

    /// `k[x, y]/(xy)` graded by `Z` with `h = 1`.
    pub fn nastasescu_default(field: Field) -> Self {
        Self::nastasescu(Group::Integers, GroupElement::Int(1), field).expect("1 has infinite order")
    }

    pub fn poly_d(group: Group, h: GroupElement, field: Field) -> Result<Self> {
        require_infinite(&group, &h)?;
        Ok(RingInstance { group, kind: RingKind::PolyD { h }, field })
    }

    pub fn matrix(group: Group, base: MatrixBase, shifts: Vec<GroupElement>, field: Field) -> Result<Self> {
        if shifts.is_empty() || shifts.len() > 15 {
            return Err(Error::InvalidInstance("matrix size must be between 1 and 15".into()));
        }
        if let Some(g) = shifts.iter().find(|g| !group.contains(g)) {
            return Err(Error::InvalidInstance(format!("shift {g} is not an element of {}", group.name())));
        }
        match &base {
            MatrixBase::GroundField => {}
            MatrixBase::PolyD { h } | MatrixBase::Laurent { h } => require_infinite(&group, h)?,
        }
        Ok(RingInstance { group, kind: RingKind::Matrix { base, shifts }, field })
    }

    /// `M_2(k[t])(e, g)` with `deg t = h`.
    pub fn counterexample(group: Group, g: GroupElement, h: GroupElement, field: Field) -> Result<Self> {
        let e = group.identity();
        Self::matrix(group, MatrixBase::PolyD { h }, vec![e, g], field)
    }

    /// `M_2(k[t, t^-1])(e, g)` with `deg t = h`.
    pub fn laurent_matrix(group: Group, g: GroupElement, h: GroupElement, field: Field) -> Result<Self> {
        let e = group.identity();
        Self::matrix(group, MatrixBase::Laurent { h }, vec![e, g], field)
    }

    pub fn bazhenov(field: Field) -> Self {
        RingInstance { group: Group::InfiniteDihedral, kind: RingKind::Bazhenov, field }
    }

    pub fn group_algebra(group: Group, field: Field) -> Result<Self> {
        let elements = group
            .elements()
            .ok_or_else(|| Error::InvalidInstance(format!("{} is not finite", group.name())))?;
        Ok(RingInstance { group, kind: RingKind::GroupAlgebra { elements }, field })
    }

    pub fn direct_sum_laurent(group: Group, h: GroupElement, field: Field) -> Result<Self> {
        require_infinite(&group, &h)?;
        Ok(RingInstance { group, kind: RingKind::DirectSumLaurent { h }, field })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn name(&self) -> String {
        let g = &self.group;
        let body = match &self.kind {
            RingKind::Nastasescu { h } => format!("k[x,y]/(xy), deg x = {}", g.format(h)),
            RingKind::PolyD { h } => format!("k[t], deg t = {}", g.format(h)),
            RingKind::Matrix { base, shifts } => {
                let shifts: Vec<String> = shifts.iter().map(|s| g.format(s)).collect();
                let (base, tail) = match base {
                    MatrixBase::GroundField => ("k".to_string(), String::new()),
                    MatrixBase::PolyD { h } => ("k[t]".to_string(), format!(", deg t = {}", g.format(h))),
                    MatrixBase::Laurent { h } => ("k[t,t^-1]".to_string(), format!(", deg t = {}", g.format(h))),
                };
                format!("M_{}({base})({}){tail}", shifts.len(), shifts.join(", "))
            }
            RingKind::Bazhenov => "Bazhenov ring in M_2(k[t])(e, s), deg t = r".into(),
            RingKind::GroupAlgebra { .. } => "group algebra kG".into(),
            RingKind::DirectSumLaurent { h } => format!("k[x,x^-1] + k[y,y^-1], deg x = {}", g.format(h)),
        };
        format!("{body} over {} ({})", g.name(), self.field)
    }

    pub(crate) fn matrix_shape(&self) -> Option<MatrixShape> {
        match &self.kind {
            RingKind::Matrix { base, shifts } => Some(MatrixShape { n: shifts.len(), base: base.clone(), shifts: shifts.clone() }),
            RingKind::Bazhenov => Some(MatrixShape {
                n: 2,
                base: MatrixBase::PolyD { h: GroupElement::Dihedral { k: 1, flip: false } },
                shifts: vec![self.group.identity(), GroupElement::Dihedral { k: 0, flip: true }],
            }),
            _ => None,
        }
    }

    pub fn is_matrix(&self) -> bool {
        self.matrix_shape().is_some()
    }

    /// Whether the monomial is part of the basis.
    pub fn mono_valid(&self, m: &Mono) -> bool {
        match &self.kind {
            RingKind::Nastasescu { .. } | RingKind::PolyD { .. } if m.slot != 0 => false,
            RingKind::Nastasescu { .. } => true,
            RingKind::PolyD { .. } => m.exp >= 0,
            RingKind::Matrix { .. } | RingKind::Bazhenov => {
                let shape = self.matrix_shape().expect("matrix instance");
                (m.slot as usize) < shape.n * shape.n
                    && match shape.base {
                        MatrixBase::GroundField => m.exp == 0,
                        MatrixBase::PolyD { .. } => m.exp >= 0,
                        MatrixBase::Laurent { .. } => true,
                    }
            }
            RingKind::GroupAlgebra { elements } => m.slot == 0 && m.exp >= 0 && (m.exp as usize) < elements.len(),
            RingKind::DirectSumLaurent { .. } => m.slot <= 1,
        }
    }

    /// Degree of a basis monomial.
    pub fn mono_degree(&self, m: &Mono) -> GroupElement {
        let g = &self.group;
        match &self.kind {
            RingKind::Nastasescu { h } | RingKind::PolyD { h } => g.pow(h, m.exp),
            RingKind::Matrix { .. } | RingKind::Bazhenov => {
                let shape = self.matrix_shape().expect("matrix instance");
                let (i, j) = (m.slot as usize / shape.n, m.slot as usize % shape.n);
                let base = match &shape.base {
                    MatrixBase::GroundField => g.identity(),
                    MatrixBase::PolyD { h } | MatrixBase::Laurent { h } => g.pow(h, m.exp),
                };
                g.mul(&g.mul(&shape.shifts[i], &base), &g.inverse(&shape.shifts[j]))
            }
            RingKind::GroupAlgebra { elements } => elements[m.exp as usize].clone(),
            RingKind::DirectSumLaurent { h } => g.pow(h, if m.slot == 0 { m.exp } else { -m.exp }),
        }
    }

    /// Product of two basis monomials: another monomial, or `None` for zero.
    pub fn mono_mul(&self, a: &Mono, b: &Mono) -> Option<Mono> {
        match &self.kind {
            RingKind::Nastasescu { .. } => {
                if (a.exp > 0 && b.exp < 0) || (a.exp < 0 && b.exp > 0) {
                    None
                } else {
                    Some(Mono::new(0, a.exp + b.exp))
                }
            }
            RingKind::PolyD { .. } => Some(Mono::new(0, a.exp + b.exp)),
            RingKind::Matrix { .. } | RingKind::Bazhenov => {
                let n = self.matrix_shape().expect("matrix instance").n as u8;
                (a.slot % n == b.slot / n).then(|| Mono::new((a.slot / n) * n + b.slot % n, a.exp + b.exp))
            }
            RingKind::GroupAlgebra { elements } => {
                let p = self.group.mul(&elements[a.exp as usize], &elements[b.exp as usize]);
                let idx = elements.iter().position(|x| *x == p).expect("closed under products");
                Some(Mono::new(0, idx as i64))
            }
            RingKind::DirectSumLaurent { .. } => (a.slot == b.slot).then(|| Mono::new(a.slot, a.exp + b.exp)),
        }
    }

    /// Monomials of the identity element, all of degree `e`.
    fn one_monos(&self) -> Vec<Mono> {
        match &self.kind {
            RingKind::Nastasescu { .. } | RingKind::PolyD { .. } => vec![Mono::new(0, 0)],
            RingKind::Matrix { .. } | RingKind::Bazhenov => {
                let n = self.matrix_shape().expect("matrix instance").n;
                (0..n).map(|i| Mono::new((i * n + i) as u8, 0)).collect()
            }
            RingKind::GroupAlgebra { elements } => {
                let e = self.group.identity();
                vec![Mono::new(0, elements.iter().position(|x| *x == e).expect("identity present") as i64)]
            }
            RingKind::DirectSumLaurent { .. } => vec![Mono::new(0, 0), Mono::new(1, 0)],
        }
    }

    pub fn zero(&self) -> GradedElement {
        GradedElement::zero()
    }

    pub fn one(&self) -> GradedElement {
        self.scalar(self.field.one())
    }

    pub fn scalar(&self, c: Scalar) -> GradedElement {
        let coords = self.one_monos().into_iter().map(|m| (m, c.clone())).collect();
        GradedElement::homogeneous(self.group.identity(), coords)
    }

    /// `c` times a single monomial, placed at its degree. Not checked for membership.
    pub fn monomial(&self, m: Mono, c: Scalar) -> GradedElement {
        GradedElement::homogeneous(self.mono_degree(&m), [(m, c)].into_iter().collect())
    }

    /// Element from coordinates, split by monomial degree.
    pub fn from_coords(&self, coords: &Coords) -> GradedElement {
        let mut terms: BTreeMap<GroupElement, Coords> = BTreeMap::new();
        for (m, c) in coords {
            terms.entry(self.mono_degree(m)).or_default().insert(*m, c.clone());
        }
        GradedElement::from_terms(terms)
    }

    /// Checks that `a` is an element of this ring.
    pub fn check(&self, a: &GradedElement) -> Result<()> {
        for (deg, coords) in a.terms() {
            if !self.group.contains(deg) {
                return Err(Error::InstanceMismatch(format!("degree {deg} outside {}", self.group.name())));
            }
            for (m, c) in coords {
                if c.field() != self.field {
                    return Err(Error::InstanceMismatch(format!("coefficient over {}, ring over {}", c.field(), self.field)));
                }
                if !self.mono_valid(m) || self.mono_degree(m) != *deg {
                    return Err(Error::InstanceMismatch(format!("monomial {m:?} does not belong to degree {}", self.group.format(deg))));
                }
            }
            if matches!(self.kind, RingKind::Bazhenov) && !bazhenov_component_ok(coords) {
                return Err(Error::InstanceMismatch("violates a(0) = d(0), b(0) = c(0)".into()));
            }
        }
        Ok(())
    }

    pub fn add(&self, a: &GradedElement, b: &GradedElement) -> GradedElement {
        let mut terms = a.terms().clone();
        for (deg, coords) in b.terms() {
            let entry = terms.entry(deg.clone()).or_default();
            for (m, c) in coords {
                add_coeff(entry, *m, c.clone());
            }
        }
        GradedElement::from_terms(terms)
    }

    pub fn neg(&self, a: &GradedElement) -> GradedElement {
        self.scale(&-self.field.one(), a)
    }

    pub fn sub(&self, a: &GradedElement, b: &GradedElement) -> GradedElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, c: &Scalar, a: &GradedElement) -> GradedElement {
        let terms = a
            .terms()
            .iter()
            .map(|(d, coords)| (d.clone(), coords.iter().map(|(m, x)| (*m, x * c)).collect()))
            .collect();
        GradedElement::from_terms(terms)
    }

    /// Exact product; assumes both arguments belong to the ring.
    pub fn mul(&self, a: &GradedElement, b: &GradedElement) -> GradedElement {
        let mut terms: BTreeMap<GroupElement, Coords> = BTreeMap::new();
        for (d1, c1) in a.terms() {
            for (d2, c2) in b.terms() {
                let mut acc = Coords::new();
                for (m1, x1) in c1 {
                    for (m2, x2) in c2 {
                        if let Some(m) = self.mono_mul(m1, m2) {
                            add_coeff(&mut acc, m, x1 * x2);
                        }
                    }
                }
                if !acc.is_empty() {
                    let entry = terms.entry(self.group.mul(d1, d2)).or_default();
                    for (m, c) in acc {
                        add_coeff(entry, m, c);
                    }
                }
            }
        }
        GradedElement::from_terms(terms)
    }

    /// Product with membership checks on both inputs.
    pub fn ring_mul(&self, a: &GradedElement, b: &GradedElement) -> Result<GradedElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn pow(&self, a: &GradedElement, n: u64) -> GradedElement {
        let mut result = self.one();
        let mut base = a.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = self.mul(&result, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// Homogeneous parts of `a`, in degree order.
    pub fn decompose(&self, a: &GradedElement) -> Vec<(GroupElement, GradedElement)> {
        a.terms().iter().map(|(d, c)| (d.clone(), GradedElement::homogeneous(d.clone(), c.clone()))).collect()
    }

    pub fn degree_of(&self, a: &GradedElement) -> Result<GroupElement> {
        a.degree().cloned()
    }

    fn log(&self, h: &GroupElement, target: &GroupElement) -> Option<i64> {
        self.group.discrete_log(h, target)
    }

    /// Basis of the whole component `R_sigma`; every component is finite-dimensional.
    pub fn component_basis(&self, sigma: &GroupElement) -> Vec<Coords> {
        let single = |m: Mono| -> Coords { [(m, self.field.one())].into_iter().collect() };
        match &self.kind {
            RingKind::Nastasescu { h } => self.log(h, sigma).map(|n| vec![single(Mono::new(0, n))]).unwrap_or_default(),
            RingKind::PolyD { h } => {
                self.log(h, sigma).filter(|n| *n >= 0).map(|n| vec![single(Mono::new(0, n))]).unwrap_or_default()
            }
            RingKind::Matrix { .. } => self.matrix_entry_monos(sigma).into_iter().map(single).collect(),
            RingKind::Bazhenov => {
                let monos = self.matrix_entry_monos(sigma);
                let mut out = Vec::new();
                let merged = |a: u8, b: u8, out: &mut Vec<Coords>| {
                    let (ma, mb) = (Mono::new(a, 0), Mono::new(b, 0));
                    if monos.contains(&ma) && monos.contains(&mb) {
                        out.push([(ma, self.field.one()), (mb, self.field.one())].into_iter().collect());
                    }
                };
                merged(0, 3, &mut out);
                merged(1, 2, &mut out);
                out.extend(monos.iter().filter(|m| m.exp > 0).map(|m| single(*m)));
                out
            }
            RingKind::GroupAlgebra { elements } => {
                elements.iter().position(|x| x == sigma).map(|i| vec![single(Mono::new(0, i as i64))]).unwrap_or_default()
            }
            RingKind::DirectSumLaurent { h } => self
                .log(h, sigma)
                .map(|n| vec![single(Mono::new(0, n)), single(Mono::new(1, -n))])
                .unwrap_or_default(),
        }
    }

    /// Matrix-entry monomials of degree `sigma`, in slot order.
    fn matrix_entry_monos(&self, sigma: &GroupElement) -> Vec<Mono> {
        let shape = self.matrix_shape().expect("matrix instance");
        let g = &self.group;
        let mut out = Vec::new();
        for i in 0..shape.n {
            for j in 0..shape.n {
                let d = g.mul(&g.mul(&g.inverse(&shape.shifts[i]), sigma), &shape.shifts[j]);
                let exp = match &shape.base {
                    MatrixBase::GroundField => g.is_identity(&d).then_some(0),
                    MatrixBase::PolyD { h } => self.log(h, &d).filter(|a| *a >= 0),
                    MatrixBase::Laurent { h } => self.log(h, &d),
                };
                if let Some(exp) = exp {
                    out.push(Mono::new((i * shape.n + j) as u8, exp));
                }
            }
        }
        out
    }

    /// Component basis truncated to monomials with `|exp| <= coeff_bound`
    /// (no truncation for group algebras, whose exponents are indices).
    pub fn component_basis_bounded(&self, sigma: &GroupElement, coeff_bound: i64) -> Vec<Coords> {
        let keep = |c: &Coords| matches!(self.kind, RingKind::GroupAlgebra { .. }) || c.keys().all(|m| m.exp.abs() <= coeff_bound);
        self.component_basis(sigma).into_iter().filter(keep).collect()
    }

    /// Basis of `R_sigma` up to the exponent bound, as ring elements.
    pub fn enumerate_homogeneous(&self, sigma: &GroupElement, coeff_bound: i64) -> Result<Vec<GradedElement>> {
        if self.component_basis(sigma).is_empty() {
            return Err(Error::UnreachableDegree(self.group.format(sigma)));
        }
        Ok(self
            .component_basis_bounded(sigma, coeff_bound)
            .into_iter()
            .map(|c| GradedElement::homogeneous(sigma.clone(), c))
            .collect())
    }

    /// Degrees of all basis monomials with `|exp| <= bound`, sorted by printed form.
    pub fn monomial_window(&self, bound: i64) -> Window {
        let mut degrees: Vec<GroupElement> = self.window_monomials(bound).iter().map(|m| self.mono_degree(m)).collect();
        degrees.extend(self.one_monos().iter().map(|m| self.mono_degree(m)));
        Window::new(self.sorted_unique(degrees), bound)
    }

    /// Word-length ball of `radius` merged with [`RingInstance::monomial_window`].
    pub fn ball_window(&self, radius: usize, bound: i64) -> Window {
        let mut degrees = self.group.ball(radius);
        degrees.extend(self.monomial_window(bound).degrees);
        Window::new(self.sorted_unique(degrees), bound)
    }

    fn sorted_unique(&self, degrees: Vec<GroupElement>) -> Vec<GroupElement> {
        let mut keyed: BTreeMap<String, GroupElement> = BTreeMap::new();
        for d in degrees {
            keyed.entry(self.group.format(&d)).or_insert(d);
        }
        keyed.into_values().collect()
    }

    /// Every basis monomial with `|exp| <= bound`.
    pub fn window_monomials(&self, bound: i64) -> Vec<Mono> {
        let slots: u8 = match &self.kind {
            RingKind::Nastasescu { .. } | RingKind::PolyD { .. } => 1,
            RingKind::Matrix { .. } | RingKind::Bazhenov => {
                let n = self.matrix_shape().expect("matrix instance").n as u8;
                n * n
            }
            RingKind::GroupAlgebra { elements } => return (0..elements.len() as i64).map(|i| Mono::new(0, i)).collect(),
            RingKind::DirectSumLaurent { .. } => 2,
        };
        (0..slots)
            .flat_map(|s| (-bound..=bound).map(move |e| Mono::new(s, e)))
            .filter(|m| self.mono_valid(m))
            .collect()
    }

    /// Degrees in the window whose bounded component is nonzero.
    pub fn support(&self, window: &Window) -> Vec<GroupElement> {
        window
            .degrees
            .iter()
            .filter(|d| !self.component_basis_bounded(d, window.coeff_bound).is_empty())
            .cloned()
            .collect()
    }

    /// Random nonzero element of `R_sigma` from the bounded basis, or `None` if that is empty.
    pub fn random_homogeneous<R: Rng + ?Sized>(&self, rng: &mut R, sigma: &GroupElement, coeff_bound: i64) -> Option<GradedElement> {
        let basis = self.component_basis_bounded(sigma, coeff_bound);
        if basis.is_empty() {
            return None;
        }
        loop {
            let coeffs: Vec<Scalar> = basis.iter().map(|_| self.field.from_i64(rng.gen_range(-3..=3))).collect();
            let x = combine(&basis, &coeffs);
            if !x.is_empty() {
                return Some(GradedElement::homogeneous(sigma.clone(), x));
            }
        }
    }

    /// Coefficients of `x` in the given basis, if `x` lies in its span.
    pub fn express_in_basis(&self, basis: &[Coords], x: &Coords) -> Option<Vec<Scalar>> {
        let (matrix, rhs) = self.linear_system(basis, x);
        matrix.solve(&rhs)
    }

    /// Matrix whose columns are `basis` in a shared monomial order, plus `x` in that order.
    pub(crate) fn linear_system(&self, basis: &[Coords], x: &Coords) -> (Matrix, Vec<Scalar>) {
        let mut monos: Vec<Mono> = basis.iter().flat_map(|c| c.keys().copied()).chain(x.keys().copied()).collect();
        monos.sort();
        monos.dedup();
        let column = |c: &Coords| monos.iter().map(|m| c.get(m).cloned().unwrap_or_else(|| self.field.zero())).collect::<Vec<_>>();
        let cols: Vec<Vec<Scalar>> = basis.iter().map(column).collect();
        (Matrix::from_columns(self.field, monos.len(), &cols), column(x))
    }

    /// Two-sided inverse of a homogeneous `a`, found in `R_(deg a)^-1`.
    pub fn unit_inverse(&self, a: &GradedElement) -> Option<GradedElement> {
        let sigma = a.degree().ok()?;
        let inv_deg = self.group.inverse(sigma);
        let basis = self.component_basis(&inv_deg);
        let images: Vec<Coords> = basis
            .iter()
            .map(|b| {
                let p = self.mul(a, &GradedElement::homogeneous(inv_deg.clone(), b.clone()));
                p.component(&self.group.identity()).cloned().unwrap_or_default()
            })
            .collect();
        let one = self.one();
        let target = one.component(&self.group.identity()).cloned().unwrap_or_default();
        let coeffs = self.express_in_basis(&images, &target)?;
        let y = GradedElement::homogeneous(inv_deg, combine(&basis, &coeffs));
        (self.mul(a, &y) == one && self.mul(&y, a) == one).then_some(y)
    }
}

impl fmt::Display for RingInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

pub(crate) fn add_coeff(coords: &mut Coords, m: Mono, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match coords.get_mut(&m) {
        Some(v) => {
            *v = &*v + &c;
            if v.is_zero() {
                coords.remove(&m);
            }
        }
        None => {
            coords.insert(m, c);
        }
    }
}

/// `sum coeffs[i] * basis[i]`.
pub fn combine(basis: &[Coords], coeffs: &[Scalar]) -> Coords {
    let mut out = Coords::new();
    for (b, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (m, x) in b {
            add_coeff(&mut out, *m, x * c);
        }
    }
    out
}

/// Constant-term constraints of the Bazhenov ring on one homogeneous component.
fn bazhenov_component_ok(coords: &Coords) -> bool {
    let get = |slot: u8| coords.get(&Mono::new(slot, 0));
    get(0) == get(3) && get(1) == get(2)
}

#[cfg(test)]
mod tests;
