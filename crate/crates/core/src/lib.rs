//! Exact rational models for spaces of sections of the projectivised first
//! jet bundle `P(J¹O_X)` over a smooth projective complex variety, and for
//! the moduli of smooth hypersurfaces they approximate.
//!
//! The crate is generic over an exact coefficient field ([`scalar::Scalar`]);
//! the aliases below fix it to arbitrary-precision rationals, which is what
//! the command-line tool uses.

pub mod cli;
pub mod cohomology;
pub mod grca;
pub mod haefliger;
pub mod hrr;
pub mod linalg;
pub mod ranges;
pub mod scalar;
pub mod stable;
pub mod variety;

pub use num_rational::BigRational as Rational;

pub type Element<K> = grca::Element<K, Rational>;
pub type RingElement = grca::Element<grca::BasisId, Rational>;
pub type FreeElement = grca::Element<grca::Monomial, Rational>;
pub type TensorElement = grca::Element<grca::TensorKey, Rational>;
pub type RingPresentation = grca::RingPresentation<Rational>;
pub type TensorAlgebra = grca::TensorAlgebra<Rational>;
pub type VarietyData = variety::VarietyData<Rational>;
pub type JetChernData = variety::JetChernData<Rational>;
pub type CdgaPresentation = haefliger::CdgaPresentation<Rational>;
pub type UnivariatePolynomial = hrr::UnivariatePolynomial<Rational>;
pub type SparseMatrix = linalg::SparseMatrix<Rational>;
