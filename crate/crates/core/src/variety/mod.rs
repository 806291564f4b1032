//! Input model for a smooth projective variety `X`: its rational cohomology
//! ring, the Chern classes of its tangent bundle and a divisor class `α`.

mod builtin;
mod expr;
mod file;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::grca::{BasisId, Element, GradedAlgebra, GrcaError, RingPresentation, RingViolation};
use crate::linalg::SparseMatrix;
use crate::scalar::Scalar;

pub use builtin::{abelian, builtin, curve, product, projective_space, torus, Builtin};
pub use expr::parse_element;
pub use file::{parse_variety, parse_variety_file, render_variety, ElementTerm, ParseError, ProductEntry, VarietyFile};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VarietyError {
    #[error("invalid builtin parameters: {0}")]
    InvalidParameters(String),
    #[error("unknown builtin {0:?}")]
    UnknownBuiltin(String),
    #[error(transparent)]
    Ring(#[from] GrcaError),
    #[error("invalid element expression {expr:?}: {reason}")]
    Expression { expr: String, reason: String },
}

/// The variety `X` together with the class `α` under study.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyData<S> {
    pub name: String,
    /// Complex dimension `n`.
    pub dim: u32,
    pub ring: Arc<RingPresentation<S>>,
    /// Distinguished basis `{x_j}` of `H¹(X;Q)`.
    pub h1_basis: Vec<BasisId>,
    /// `c_1(TX), …, c_n(TX)`.
    pub tangent_chern: Vec<Element<BasisId, S>>,
    pub alpha: Element<BasisId, S>,
    /// Class of `O_X(1)`, needed for Hilbert polynomials.
    pub polarization: Option<Element<BasisId, S>>,
    /// The user vouches for ampleness of `α` and `α − c_1(K_X)`.
    pub ampleness_asserted: bool,
}

/// Chern classes `c_0, …, c_{n+1}` of the first jet bundle `J¹O_X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetChernData<S> {
    pub classes: Vec<Element<BasisId, S>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Ring(RingViolation),
    TopDegree { expected: u32, found: u32 },
    H1Dimension { listed: usize, actual: usize },
    H1Label { label: String, degree: u32 },
    H1Duplicate { label: String },
    ChernCount { expected: usize, found: usize },
    ChernDegree { index: usize },
    AlphaDegree,
    PolarizationDegree,
    PoincarePairing { degree: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Ring(v) => write!(f, "{v}"),
            Self::TopDegree { expected, found } => {
                write!(f, "top degree: ring top degree {found} but 2·dim = {expected}")
            }
            Self::H1Dimension { listed, actual } => {
                write!(f, "h1 basis: {listed} labels listed but dim H^1 = {actual}")
            }
            Self::H1Label { label, degree } => {
                write!(f, "h1 basis: {label} has degree {degree}, expected 1")
            }
            Self::H1Duplicate { label } => write!(f, "h1 basis: {label} listed twice"),
            Self::ChernCount { expected, found } => {
                write!(f, "tangent chern: expected {expected} classes, found {found}")
            }
            Self::ChernDegree { index } => {
                write!(f, "tangent chern: c_{index} is not homogeneous of degree {}", 2 * index)
            }
            Self::AlphaDegree => write!(f, "alpha: not homogeneous of degree 2"),
            Self::PolarizationDegree => write!(f, "polarization: not homogeneous of degree 2"),
            Self::PoincarePairing { degree } => write!(
                f,
                "poincare pairing: degenerate between degrees {degree} and its complement"
            ),
        }
    }
}

impl<S: Scalar> VarietyData<S> {
    pub fn top_degree(&self) -> u32 {
        2 * self.dim
    }

    pub fn b1(&self) -> usize {
        self.ring.basis_in_degree(1).len()
    }

    /// A copy with a different divisor class.
    pub fn with_alpha(&self, alpha: Element<BasisId, S>) -> Self {
        Self {
            alpha,
            ..self.clone()
        }
    }

    /// `c_1(K_X) = −c_1(TX)`.
    pub fn canonical_class(&self) -> Element<BasisId, S> {
        -self.tangent_chern.first().cloned().unwrap_or_else(Element::zero)
    }

    pub fn format_element(&self, a: &Element<BasisId, S>) -> String {
        self.ring.format_element(a)
    }

    /// Checks every structural invariant and returns the violations found.
    pub fn validate(&self) -> Vec<Violation> {
        let ring = self.ring.as_ref();
        let mut out: Vec<Violation> = ring.check_axioms().into_iter().map(Violation::Ring).collect();
        if ring.top_degree() != self.top_degree() {
            out.push(Violation::TopDegree {
                expected: self.top_degree(),
                found: ring.top_degree(),
            });
        }
        let actual = self.b1();
        if self.h1_basis.len() != actual {
            out.push(Violation::H1Dimension {
                listed: self.h1_basis.len(),
                actual,
            });
        }
        for (i, &b) in self.h1_basis.iter().enumerate() {
            if ring.degree(b) != 1 {
                out.push(Violation::H1Label {
                    label: ring.label(b).to_string(),
                    degree: ring.degree(b),
                });
            }
            if self.h1_basis[..i].contains(&b) {
                out.push(Violation::H1Duplicate {
                    label: ring.label(b).to_string(),
                });
            }
        }
        if self.tangent_chern.len() != self.dim as usize {
            out.push(Violation::ChernCount {
                expected: self.dim as usize,
                found: self.tangent_chern.len(),
            });
        }
        for (i, c) in self.tangent_chern.iter().enumerate() {
            if !ring.is_homogeneous_of(c, 2 * (i as u32 + 1)) {
                out.push(Violation::ChernDegree { index: i + 1 });
            }
        }
        if !ring.is_homogeneous_of(&self.alpha, 2) {
            out.push(Violation::AlphaDegree);
        }
        if let Some(h) = &self.polarization {
            if !ring.is_homogeneous_of(h, 2) {
                out.push(Violation::PolarizationDegree);
            }
        }
        if ring.point_class().is_some() {
            for q in 0..=ring.top_degree() / 2 {
                if !pairing_is_perfect(ring, q) {
                    out.push(Violation::PoincarePairing { degree: q });
                }
            }
        }
        out
    }
}

/// Nondegeneracy of `H^q ⊗ H^{top−q} → Q`, `(a, b) ↦ ∫ a·b`.
fn pairing_is_perfect<S: Scalar>(ring: &RingPresentation<S>, q: u32) -> bool {
    let Some(complement) = ring.top_degree().checked_sub(q) else {
        return false;
    };
    let left = ring.basis_in_degree(q);
    let right = ring.basis_in_degree(complement);
    if left.len() != right.len() {
        return false;
    }
    let dense: Vec<Vec<S>> = left
        .iter()
        .map(|&a| {
            right
                .iter()
                .map(|&b| ring.pairing(a, b).unwrap_or_else(|_| S::zero()))
                .collect()
        })
        .collect();
    left.is_empty() || SparseMatrix::from_dense(&dense).rank() == left.len()
}

/// `c_i(J¹O_X) = (−1)^i c_i(TX)` from `J¹O_X ≅ Ω¹_X ⊕ O_X`, with
/// `c_0 = 1` and `c_{n+1} = 0`.
pub fn jet_chern<S: Scalar>(v: &VarietyData<S>) -> JetChernData<S> {
    let mut classes = Vec::with_capacity(v.dim as usize + 2);
    classes.push(v.ring.basis_element(v.ring.unit_id()));
    for (i, c) in v.tangent_chern.iter().enumerate() {
        let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
        classes.push(c.scale(&S::one().signed(sign)));
    }
    while classes.len() < v.dim as usize + 2 {
        classes.push(Element::zero());
    }
    JetChernData { classes }
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;

    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_int(v)
    }

    #[test]
    fn torus_is_valid_and_has_trivial_jet_classes() {
        let t = torus::<BigRational>();
        assert_eq!(t.validate(), vec![]);
        let jet = jet_chern(&t);
        assert_eq!(jet.classes.len(), 3);
        assert!(jet.classes[1..].iter().all(Element::is_zero));
    }

    #[test]
    fn projective_line_jet_class() {
        let p1 = projective_space::<BigRational>(1).unwrap();
        let jet = jet_chern(&p1);
        assert_eq!(jet.classes[1], p1.ring.element(&[("h", q(-2))]).unwrap());
        assert!(jet.classes[2].is_zero());
    }

    #[test]
    fn projective_plane_jet_classes() {
        let p2 = projective_space::<BigRational>(2).unwrap();
        let jet = jet_chern(&p2);
        assert_eq!(jet.classes[1], p2.ring.element(&[("h", q(-3))]).unwrap());
        assert_eq!(jet.classes[2], p2.ring.element(&[("h^2", q(3))]).unwrap());
        assert!(jet.classes[3].is_zero());
    }

    #[test]
    fn wrong_commutativity_sign_is_reported() {
        let t = torus::<BigRational>();
        let ring = &t.ring;
        let (a, b) = (ring.id_of("a").unwrap(), ring.id_of("b").unwrap());
        let u = ring.basis_element(ring.id_of("u").unwrap());
        let broken = VarietyData {
            ring: Arc::new(ring.with_product(b, a, u)),
            ..t.clone()
        };
        let report = broken.validate();
        assert!(report
            .iter()
            .any(|v| v.to_string().starts_with("graded commutativity")));
    }

    #[test]
    fn missing_point_class_is_reported() {
        let t = torus::<BigRational>();
        let ring = &t.ring;
        let basis = ring
            .ids()
            .map(|b| (ring.label(b).to_string(), ring.degree(b)))
            .collect();
        let table = ring
            .ids()
            .map(|a| ring.ids().map(|b| ring.product(a, b).clone()).collect())
            .collect();
        let stripped = RingPresentation::from_table(basis, table, 2, None).unwrap();
        let broken = VarietyData {
            ring: Arc::new(stripped),
            ..t
        };
        assert!(broken.validate().contains(&Violation::Ring(RingViolation::MissingPointClass)));
    }

    #[test]
    fn every_builtin_validates() {
        for v in [
            projective_space::<BigRational>(1).unwrap(),
            projective_space(2).unwrap(),
            projective_space(3).unwrap(),
            curve(0).unwrap(),
            curve(1).unwrap(),
            curve(3).unwrap(),
            abelian(1).unwrap(),
            abelian(2).unwrap(),
            product(&projective_space(1).unwrap(), &projective_space(1).unwrap()).unwrap(),
            product(&curve(2).unwrap(), &projective_space(1).unwrap()).unwrap(),
        ] {
            assert_eq!(v.validate(), vec![], "{} failed validation", v.name);
            let jet = jet_chern(&v);
            for (i, c) in jet.classes.iter().enumerate() {
                assert!(v.ring.is_homogeneous_of(c, 2 * i as u32));
            }
        }
    }

    #[test]
    fn curve_canonical_degree() {
        for g in 0..6 {
            let c = curve::<BigRational>(g).unwrap();
            let k = c.canonical_class();
            assert_eq!(c.ring.integrate(&k).unwrap(), q(2 * g as i64 - 2));
            assert_eq!(c.ring.integrate(&c.tangent_chern[0]).unwrap(), q(2 - 2 * g as i64));
        }
    }
}
