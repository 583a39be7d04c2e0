use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group::GroupElement;

use super::{Coords, Mono};
use crate::scalar::Scalar;

/// Finite sum of homogeneous components; zero components are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedElement {
    terms: BTreeMap<GroupElement, Coords>,
}

impl GradedElement {
    pub fn zero() -> Self {
        GradedElement::default()
    }

    pub fn homogeneous(degree: GroupElement, coords: Coords) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(degree, coords);
        Self::from_terms(terms)
    }

    pub(crate) fn from_terms(mut terms: BTreeMap<GroupElement, Coords>) -> Self {
        for coords in terms.values_mut() {
            coords.retain(|_, c| !c.is_zero());
        }
        terms.retain(|_, c| !c.is_empty());
        GradedElement { terms }
    }

    pub fn terms(&self) -> &BTreeMap<GroupElement, Coords> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.len() == 1
    }

    /// The degree of a nonzero homogeneous element.
    pub fn degree(&self) -> Result<&GroupElement> {
        match self.terms.len() {
            1 => Ok(self.terms.keys().next().expect("one term")),
            0 => Err(Error::NotHomogeneous),
            _ => Err(Error::NotHomogeneous),
        }
    }

    pub fn component(&self, degree: &GroupElement) -> Option<&Coords> {
        self.terms.get(degree)
    }

    pub fn degrees(&self) -> impl Iterator<Item = &GroupElement> {
        self.terms.keys()
    }

    /// All coordinates, merged across degrees.
    pub fn coords(&self) -> Coords {
        self.terms.values().flat_map(|c| c.iter().map(|(m, x)| (*m, x.clone()))).collect()
    }

    pub fn coeff(&self, m: &Mono) -> Option<&Scalar> {
        self.terms.values().find_map(|c| c.get(m))
    }
}
