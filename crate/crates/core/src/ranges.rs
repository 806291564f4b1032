//! Jet-ampleness lower bounds and the resulting homology ranges.
//!
//! A line bundle that is `d`-jet ample gives an isomorphism in homology in
//! degrees `∗ < (d − 3)/2`, i.e. up to `floor((d − 4)/2)`. Apart from curves,
//! `d` is not computable in general, so every bound here carries its source
//! and whether it is exact.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grca::{BasisId, Element};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RangeError {
    #[error("toric bound needs at least one intersection number")]
    EmptyIntersections,
    #[error("{0} must be non-negative")]
    Negative(&'static str),
    #[error("power k must be at least 1")]
    ZeroPower,
    #[error("the Fujita bound is only available for surfaces, got dimension {0}")]
    NotASurface(u32),
    #[error("length bound needs n >= 1 and d >= 0")]
    LengthDomain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    #[serde(rename = "curve_RR")]
    CurveRr,
    Toric,
    TensorAdditivity,
    UserSupplied,
    SurfaceFujita,
}

impl fmt::Display for BoundSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundSource::CurveRr => "curve_RR",
            BoundSource::Toric => "toric",
            BoundSource::TensorAdditivity => "tensor_additivity",
            BoundSource::UserSupplied => "user_supplied",
            BoundSource::SurfaceFujita => "surface_fujita",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeReport {
    pub jet_bound: i64,
    pub source: BoundSource,
    /// The bound equals the jet ampleness itself rather than bounding it.
    pub exact: bool,
    /// Largest homology degree in the range; negative for an empty range.
    pub max_valid_degree: i64,
    pub assumptions: Vec<String>,
}

impl RangeReport {
    pub fn new(jet_bound: i64, source: BoundSource, exact: bool, assumptions: Vec<String>) -> Self {
        Self {
            jet_bound,
            source,
            exact,
            max_valid_degree: main_range(jet_bound).max(-1),
            assumptions,
        }
    }
}

impl fmt::Display for RangeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.exact { "exact" } else { "lower bound" };
        write!(
            f,
            "d = {} ({}, {kind}), max homology degree {}",
            self.jet_bound, self.source, self.max_valid_degree
        )?;
        for a in &self.assumptions {
            write!(f, "\n  assumes: {a}")?;
        }
        Ok(())
    }
}

/// Jet ampleness of a degree-`deg` bundle on a genus-`g` curve: `deg − 2g`,
/// clamped at −1.
pub fn d_curve(g: u32, deg: i64) -> i64 {
    (deg - 2 * i64::from(g)).max(-1)
}

/// Toric criterion: the minimum intersection with the invariant curves.
pub fn d_toric(intersections: &[i64]) -> Result<i64, RangeError> {
    intersections
        .iter()
        .copied()
        .min()
        .map(|m| m.max(-1))
        .ok_or(RangeError::EmptyIntersections)
}

/// An `a`-jet ample bundle tensored with a `b`-jet ample one is
/// `(a + b)`-jet ample.
pub fn d_tensor(a: i64, b: i64) -> Result<i64, RangeError> {
    if a < 0 {
        return Err(RangeError::Negative("a"));
    }
    if b < 0 {
        return Err(RangeError::Negative("b"));
    }
    Ok(a + b)
}

/// Bound for `L^k` from a bound `d_l` for `L`.
pub fn d_power(d_l: i64, k: u32) -> Result<i64, RangeError> {
    if d_l < 0 {
        return Err(RangeError::Negative("dL"));
    }
    if k == 0 {
        return Err(RangeError::ZeroPower);
    }
    Ok(d_l * i64::from(k))
}

/// `Σ_{j=0}^{d} C(n+j−1, j)`, the length of the subschemes that `d`-jet
/// ampleness must separate.
pub fn length_bound(n: u32, d: u32) -> Result<num_bigint::BigUint, RangeError> {
    if n == 0 {
        return Err(RangeError::LengthDomain);
    }
    let mut total = num_bigint::BigUint::from(0u32);
    let mut term = num_bigint::BigUint::from(1u32);
    for j in 0..=d {
        total += &term;
        // C(n+j, j+1) = C(n+j−1, j) (n+j)/(j+1)
        term = term * (n + j) / (j + 1);
    }
    Ok(total)
}

/// Largest integer strictly below `(d − 3)/2`. Any negative value means
/// the range is empty.
pub fn main_range(d: i64) -> i64 {
    (d - 4).div_euclid(2)
}

pub fn stability_range(d_l: i64, k: u32) -> Result<i64, RangeError> {
    Ok(main_range(d_power(d_l, k)?))
}

pub fn curve_range(g: u32, deg: i64) -> i64 {
    main_range(d_curve(g, deg))
}

/// `K_X + 4A + (d − 1)L` on a surface, claimed `d`-jet ample when `A` and
/// `L` are ample and very ample respectively.
pub fn surface_fujita_class<S: Scalar>(
    dim: u32,
    k_x: &Element<BasisId, S>,
    a: &Element<BasisId, S>,
    l: &Element<BasisId, S>,
    d: u32,
) -> Result<(Element<BasisId, S>, RangeReport), RangeError> {
    if dim != 2 {
        return Err(RangeError::NotASurface(dim));
    }
    let class = k_x.clone() + a.scale(&S::from_int(4)) + l.scale(&S::from_int(i64::from(d) - 1));
    let report = RangeReport::new(
        i64::from(d),
        BoundSource::SurfaceFujita,
        false,
        vec!["A ample".into(), "L very ample".into()],
    );
    Ok((class, report))
}

pub fn curve_report(g: u32, deg: i64) -> RangeReport {
    RangeReport::new(d_curve(g, deg), BoundSource::CurveRr, true, Vec::new())
}

pub fn toric_report(intersections: &[i64]) -> Result<RangeReport, RangeError> {
    Ok(RangeReport::new(
        d_toric(intersections)?,
        BoundSource::Toric,
        true,
        vec!["X toric, intersections taken over all invariant curves".into()],
    ))
}

pub fn power_report(d_l: i64, k: u32) -> Result<RangeReport, RangeError> {
    Ok(RangeReport::new(
        d_power(d_l, k)?,
        BoundSource::TensorAdditivity,
        false,
        vec![format!("L is {d_l}-jet ample")],
    ))
}

pub fn user_report(d: i64) -> RangeReport {
    RangeReport::new(
        d.max(-1),
        BoundSource::UserSupplied,
        false,
        vec![format!("alpha is {d}-jet ample (user supplied)")],
    )
}
