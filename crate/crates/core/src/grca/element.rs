use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};


use crate::scalar::Scalar;

/// Sparse linear combination of basis keys with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element<K: Ord, S> {
    terms: BTreeMap<K, S>,
}

impl<K: Ord + Clone, S: Scalar> Element<K, S> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn from_term(key: K, coeff: S) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(key, coeff);
        }
        Self { terms }
    }

    /// Collects terms, summing repeated keys and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (K, S)>>(terms: I) -> Self {
        let mut map: BTreeMap<K, S> = BTreeMap::new();
        for (k, c) in terms {
            accumulate(&mut map, k, c);
        }
        Self { terms: map }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&K, &S)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn coeff(&self, key: &K) -> S {
        self.terms.get(key).cloned().unwrap_or_else(S::zero)
    }

    pub fn scale(&self, factor: &S) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.clone() * factor.clone()))
                .collect(),
        }
    }

    pub fn filter<F: Fn(&K) -> bool>(&self, keep: F) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Relabels keys. Colliding images are summed.
    pub fn map_keys<K2: Ord + Clone, F: Fn(&K) -> K2>(&self, f: F) -> Element<K2, S> {
        Element::from_terms(self.terms.iter().map(|(k, c)| (f(k), c.clone())))
    }

    /// Converts the coefficient field, failing if any coefficient does not fit.
    pub fn convert<T: Scalar>(&self) -> Option<Element<K, T>> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            terms.insert(k.clone(), T::from_rational(&c.to_rational())?);
        }
        Some(Element { terms })
    }
}

fn accumulate<K: Ord, S: Scalar>(map: &mut BTreeMap<K, S>, key: K, coeff: S) {
    if coeff.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(slot) => {
            slot.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut slot) => {
            let sum = slot.get().clone() + coeff;
            if sum.is_zero() {
                slot.remove();
            } else {
                *slot.get_mut() = sum;
            }
        }
    }
}

impl<K: Ord + Clone, S: Scalar> Add for Element<K, S> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for (k, c) in rhs.terms {
            accumulate(&mut self.terms, k, c);
        }
        self
    }
}

impl<K: Ord + Clone, S: Scalar> Add<&Element<K, S>> for &Element<K, S> {
    type Output = Element<K, S>;

    fn add(self, rhs: &Element<K, S>) -> Element<K, S> {
        self.clone() + rhs.clone()
    }
}

impl<K: Ord + Clone, S: Scalar> Neg for Element<K, S> {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl<K: Ord + Clone, S: Scalar> Sub for Element<K, S> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<K: Ord + Clone, S: Scalar> Sub<&Element<K, S>> for &Element<K, S> {
    type Output = Element<K, S>;

    fn sub(self, rhs: &Element<K, S>) -> Element<K, S> {
        self.clone() - rhs.clone()
    }
}

impl<K: Ord + Clone, S: Scalar> Default for Element<K, S> {
    fn default() -> Self {
        Self::zero()
    }
}
