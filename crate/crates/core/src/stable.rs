//! Poincaré series of the stable cohomology of the moduli of smooth
//! hypersurfaces, and their comparison with the section-space model.
//!
//! The stable rational cohomology is free graded-commutative on one
//! generator of degree `q + 1` for each basis element of `H^q(X)`, `q > 0`.
//! The Galatius–Randal-Williams side adds `b_{2n−1}` generators of degree 1.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cohomology::{betti_table, BettiOptions, CohomologyError};
use crate::haefliger::{build_section_cdga, HaefligerError};
use crate::ranges::main_range;
use crate::scalar::Scalar;
use crate::variety::VarietyData;

/// Recorded for reference only: the constant in the stable range on the
/// Galatius–Randal-Williams side, `C ≥ ½·(13/15)·N`, is not used to certify
/// any degree here.
pub const GRW_RANGE_NOTE: &str = "stable range constant ½·(13/15)N ≤ C recorded as metadata only";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StableError {
    #[error("generator of degree 0 makes the series infinite")]
    DegreeZeroGenerator,
    #[error("H¹ ≠ 0 (b1 = {0}): the section-space model and the stable ring are not comparable")]
    NonzeroH1(usize),
    #[error(transparent)]
    Model(#[from] HaefligerError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareSeries {
    pub max_degree: u32,
    pub coefficients: Vec<u64>,
}

impl PoincareSeries {
    pub fn one(max_degree: u32) -> Self {
        let mut coefficients = vec![0; max_degree as usize + 1];
        coefficients[0] = 1;
        Self {
            max_degree,
            coefficients,
        }
    }

    pub fn coefficient(&self, d: u32) -> u64 {
        self.coefficients.get(d as usize).copied().unwrap_or(0)
    }

    /// Truncated product; the result keeps the smaller truncation degree.
    pub fn mul(&self, other: &Self) -> Self {
        let max_degree = self.max_degree.min(other.max_degree);
        let top = max_degree as usize;
        let mut coefficients = vec![0u64; top + 1];
        for (i, a) in self.coefficients.iter().enumerate().take(top + 1) {
            for (j, b) in other.coefficients.iter().enumerate().take(top + 1 - i) {
                coefficients[i + j] += a * b;
            }
        }
        Self {
            max_degree,
            coefficients,
        }
    }

    pub fn truncate(&self, max_degree: u32) -> Self {
        let max_degree = max_degree.min(self.max_degree);
        Self {
            max_degree,
            coefficients: self.coefficients[..=max_degree as usize].to_vec(),
        }
    }
}

impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// `Π_{d odd} (1 + t^d)^{m_d} · Π_{d even} (1 − t^d)^{−m_d}` up to `max_degree`.
pub fn free_gca_series(
    generators: &[(u32, u64)],
    max_degree: u32,
) -> Result<PoincareSeries, StableError> {
    let top = max_degree as usize;
    let mut c = PoincareSeries::one(max_degree).coefficients;
    for &(d, m) in generators {
        if d == 0 {
            return Err(StableError::DegreeZeroGenerator);
        }
        let d = d as usize;
        if d > top {
            continue;
        }
        for _ in 0..m {
            if d % 2 == 1 {
                for n in (d..=top).rev() {
                    c[n] += c[n - d];
                }
            } else {
                for n in d..=top {
                    c[n] += c[n - d];
                }
            }
        }
    }
    Ok(PoincareSeries {
        max_degree,
        coefficients: c,
    })
}

fn stable_generators<S: Scalar>(v: &VarietyData<S>) -> Vec<(u32, u64)> {
    let betti = v.ring.betti();
    (1..=v.top_degree())
        .filter_map(|q| {
            let b = betti.get(q as usize).copied().unwrap_or(0) as u64;
            (b > 0).then_some((q + 1, b))
        })
        .collect()
}

/// Series of `Λ(H^{>0}(X)[+1])`.
pub fn stable_moduli_series<S: Scalar>(v: &VarietyData<S>, max_degree: u32) -> PoincareSeries {
    free_gca_series(&stable_generators(v), max_degree).expect("stable generators have positive degree")
}

/// Series of `Λ(H^{2n−1}(X)[1]) ⊗ Λ(H^{>0}(X)[+1])`.
pub fn grw_series<S: Scalar>(v: &VarietyData<S>, max_degree: u32) -> PoincareSeries {
    let b = v
        .ring
        .betti()
        .get((v.top_degree() as usize).wrapping_sub(1))
        .copied()
        .unwrap_or(0) as u64;
    let extra = free_gca_series(&[(1, b)], max_degree).expect("degree one");
    stable_moduli_series(v, max_degree).mul(&extra)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub degree: u32,
    pub cdga: u64,
    pub stable: u64,
    pub equal: bool,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub jet_bound: i64,
    pub certified_max_degree: i64,
    pub rows: Vec<ComparisonRow>,
    /// Every certified row agrees.
    pub all_equal: bool,
}

impl fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "jet bound d = {}, certified through degree {}",
            self.jet_bound, self.certified_max_degree
        )?;
        writeln!(f, "degree  cdga  stable  status")?;
        for r in &self.rows {
            let status = match (r.certified, r.equal) {
                (true, true) => "equal",
                (true, false) => "MISMATCH",
                (false, true) => "equal (uncertified)",
                (false, false) => "differs (uncertified)",
            };
            writeln!(f, "{:>6}  {:>4}  {:>6}  {status}", r.degree, r.cdga, r.stable)?;
        }
        write!(
            f,
            "verdict: {}",
            if self.all_equal { "all equal" } else { "mismatch" }
        )
    }
}

/// Compares the model's Betti numbers with the stable series through
/// `main_range(d)`, plus `extra` uncertified degrees beyond it.
pub fn compare_stable<S: Scalar>(
    v: &VarietyData<S>,
    jet_bound: i64,
    extra: u32,
    options: BettiOptions,
) -> Result<ComparisonReport, StableError> {
    let b1 = v.b1();
    if b1 != 0 {
        return Err(StableError::NonzeroH1(b1));
    }
    let certified = main_range(jet_bound);
    let top = (certified.max(-1) + 1) as u32 + extra;
    let rows = if top == 0 {
        Vec::new()
    } else {
        let max = top - 1;
        let cdga = build_section_cdga(v)?;
        let betti = betti_table(&cdga, max, options)?;
        let series = stable_moduli_series(v, max);
        (0..=max)
            .map(|d| {
                let (a, b) = (betti.betti[d as usize], series.coefficient(d));
                ComparisonRow {
                    degree: d,
                    cdga: a,
                    stable: b,
                    equal: a == b,
                    certified: i64::from(d) <= certified,
                }
            })
            .collect::<Vec<_>>()
    };
    let all_equal = rows.iter().filter(|r| r.certified).all(|r| r.equal);
    Ok(ComparisonReport {
        jet_bound,
        certified_max_degree: certified,
        rows,
        all_equal,
    })
}
