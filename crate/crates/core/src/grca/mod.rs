//! Graded-commutative algebra: Koszul-signed monomials, free algebras,
//! finite-dimensional rings given by structure constants, and tensor
//! products of these.
//!
//! All algebras share the [`GradedAlgebra`] interface. Elements are plain
//! sparse maps from basis keys to coefficients; the algebra supplies degrees
//! and basis products.

mod element;
mod free;
mod ring;
mod tensor;

use std::fmt::Debug;

use thiserror::Error;

use crate::scalar::Scalar;

pub use element::Element;
pub use free::{FreeAlgebra, GenId, Generator, Monomial};
pub use ring::{BasisId, RingPresentation, RingViolation};
pub use tensor::{Factor, FactorKey, TensorAlgebra, TensorKey};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrcaError {
    #[error("unknown generator id {0}")]
    UnknownGenerator(usize),
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
    #[error("element does not belong to this algebra: {0}")]
    MismatchedAlgebra(String),
    #[error("power {exponent} of an element with odd-degree terms")]
    OddPower { exponent: u32 },
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("ring has no unit: expected exactly one basis label \"1\" of degree 0")]
    MissingUnit,
    #[error("structure constants missing for {0} · {1}")]
    MissingProduct(String, String),
    #[error("structure constants given twice for {0} · {1}")]
    DuplicateProduct(String, String),
    #[error("ring has no point class declared")]
    NoPointClass,
    #[error("the rightmost tensor factor is not a presented ring")]
    CapNeedsRing,
}

/// A graded-commutative algebra with a distinguished basis of homogeneous
/// elements indexed by `Key`.
pub trait GradedAlgebra<S: Scalar> {
    type Key: Clone + Ord + Debug;

    fn unit_key(&self) -> Self::Key;

    fn key_degree(&self, key: &Self::Key) -> u32;

    fn contains_key(&self, key: &Self::Key) -> bool;

    /// Product of two basis elements, with Koszul signs applied.
    fn mul_keys(&self, a: &Self::Key, b: &Self::Key) -> Element<Self::Key, S>;

    fn unit(&self) -> Element<Self::Key, S> {
        Element::from_term(self.unit_key(), S::one())
    }

    fn check_element(&self, a: &Element<Self::Key, S>) -> Result<(), GrcaError> {
        match a.keys().find(|k| !self.contains_key(k)) {
            Some(k) => Err(GrcaError::MismatchedAlgebra(format!("{k:?}"))),
            None => Ok(()),
        }
    }

    /// Bilinear product without membership checks.
    fn mul_unchecked(
        &self,
        a: &Element<Self::Key, S>,
        b: &Element<Self::Key, S>,
    ) -> Element<Self::Key, S> {
        let mut out = Element::zero();
        for (ka, ca) in a.terms() {
            for (kb, cb) in b.terms() {
                let prod = self.mul_keys(ka, kb);
                if prod.is_zero() {
                    continue;
                }
                out = out + prod.scale(&(ca.clone() * cb.clone()));
            }
        }
        out
    }

    fn mul(
        &self,
        a: &Element<Self::Key, S>,
        b: &Element<Self::Key, S>,
    ) -> Result<Element<Self::Key, S>, GrcaError> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    /// `a^m` by repeated multiplication. Odd-degree terms only admit `m <= 1`.
    fn power(&self, a: &Element<Self::Key, S>, m: u32) -> Result<Element<Self::Key, S>, GrcaError> {
        self.check_element(a)?;
        if m >= 2 && a.keys().any(|k| self.key_degree(k) % 2 == 1) {
            return Err(GrcaError::OddPower { exponent: m });
        }
        let mut acc = self.unit();
        for _ in 0..m {
            acc = self.mul_unchecked(&acc, a);
        }
        Ok(acc)
    }

    /// The common degree of all terms; `None` for zero or inhomogeneous input.
    fn degree_of(&self, a: &Element<Self::Key, S>) -> Option<u32> {
        let mut degrees = a.keys().map(|k| self.key_degree(k));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Zero counts as homogeneous of every degree.
    fn is_homogeneous_of(&self, a: &Element<Self::Key, S>, degree: u32) -> bool {
        a.keys().all(|k| self.key_degree(k) == degree)
    }

    /// Part of `a` in a single degree.
    fn homogeneous_part(&self, a: &Element<Self::Key, S>, degree: u32) -> Element<Self::Key, S> {
        a.filter(|k| self.key_degree(k) == degree)
    }
}

/// Renders `c₁ m₁ + c₂ m₂ − …` from (coefficient, basis rendering) pairs.
/// Unit coefficients are omitted except on the unit key `"1"`.
pub fn format_combination<I>(terms: I) -> String
where
    I: IntoIterator<Item = (num_rational::BigRational, String)>,
{
    use num_traits::{One, Signed};

    let mut out = String::new();
    for (coeff, key) in terms {
        let magnitude = coeff.abs();
        let body = if key == "1" {
            crate::scalar::format_rational(&magnitude)
        } else if magnitude.is_one() {
            key
        } else {
            format!("{} {}", crate::scalar::format_rational(&magnitude), key)
        };
        match (out.is_empty(), coeff.is_negative()) {
            (true, false) => out.push_str(&body),
            (true, true) => {
                out.push('−');
                out.push_str(&body);
            }
            (false, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (false, true) => {
                out.push_str(" − ");
                out.push_str(&body);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
