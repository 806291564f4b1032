//! Degreewise cohomology of a free CDGA by exact sparse elimination.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grca::{Element, GenId, Monomial};
use crate::haefliger::CdgaPresentation;
use crate::linalg::{EchelonBasis, SparseMatrix};
use crate::scalar::Scalar;

/// Default per-degree cap on the number of basis monomials.
pub const DEFAULT_MAX_MONOMIALS: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("generator {0} has degree 0; monomial bases would be infinite")]
    DegreeZeroGenerator(String),
    #[error("degree {degree} has {count} basis monomials, above the limit of {limit}")]
    ResourceLimit { degree: u32, count: u128, limit: u64 },
}

/// All monomials of one degree, in increasing monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeBasis {
    pub degree: u32,
    pub monomials: Vec<Monomial>,
}

impl DegreeBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index(&self) -> HashMap<&Monomial, usize> {
        self.monomials.iter().enumerate().map(|(i, m)| (m, i)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub max_degree: u32,
    pub betti: Vec<u64>,
    /// Dimension of the cochains in each degree.
    pub cochain_dims: Vec<u64>,
    /// Rank of `d` leaving each degree.
    pub ranks: Vec<u64>,
    /// Cocycles spanning cohomology modulo coboundaries, when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representatives: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BettiOptions {
    pub max_monomials: u64,
    pub parallel: bool,
    pub representatives: bool,
}

impl Default for BettiOptions {
    fn default() -> Self {
        Self {
            max_monomials: DEFAULT_MAX_MONOMIALS,
            parallel: true,
            representatives: false,
        }
    }
}

fn check_degrees<S: Scalar>(cdga: &CdgaPresentation<S>) -> Result<(), CohomologyError> {
    match cdga.algebra().generators().iter().find(|g| g.degree == 0) {
        Some(g) => Err(CohomologyError::DegreeZeroGenerator(g.name.clone())),
        None => Ok(()),
    }
}

/// Number of monomials of each degree `0..=max_degree`, saturating.
pub fn count_monomials<S: Scalar>(cdga: &CdgaPresentation<S>, max_degree: u32) -> Vec<u128> {
    let top = max_degree as usize;
    let mut counts = vec![0u128; top + 1];
    counts[0] = 1;
    for g in cdga.algebra().generators() {
        let d = g.degree as usize;
        if d == 0 || d > top {
            continue;
        }
        if g.is_odd() {
            for n in (d..=top).rev() {
                counts[n] = counts[n].saturating_add(counts[n - d]);
            }
        } else {
            for n in d..=top {
                counts[n] = counts[n].saturating_add(counts[n - d]);
            }
        }
    }
    counts
}

/// Every monomial of exactly `degree`, odd generators at most once.
pub fn enumerate_basis<S: Scalar>(
    cdga: &CdgaPresentation<S>,
    degree: u32,
    max_monomials: u64,
) -> Result<DegreeBasis, CohomologyError> {
    check_degrees(cdga)?;
    let count = count_monomials(cdga, degree)[degree as usize];
    if count > u128::from(max_monomials) {
        return Err(CohomologyError::ResourceLimit {
            degree,
            count,
            limit: max_monomials,
        });
    }
    let gens: Vec<(GenId, u32, bool)> = cdga
        .algebra()
        .generators()
        .iter()
        .map(|g| (g.id, g.degree, g.is_odd()))
        .collect();
    let mut out = Vec::with_capacity(count as usize);
    let mut current = Vec::new();
    fill(&gens, 0, degree, &mut current, &mut out);
    out.sort();
    Ok(DegreeBasis {
        degree,
        monomials: out,
    })
}

fn fill(
    gens: &[(GenId, u32, bool)],
    next: usize,
    remaining: u32,
    current: &mut Vec<(GenId, u32)>,
    out: &mut Vec<Monomial>,
) {
    if remaining == 0 {
        out.push(Monomial::from_sorted(current.clone()));
        return;
    }
    for (offset, &(id, degree, odd)) in gens[next..].iter().enumerate() {
        if degree > remaining {
            // generators are sorted by degree
            break;
        }
        let max_exp = if odd { 1 } else { remaining / degree };
        for e in 1..=max_exp {
            current.push((id, e));
            fill(gens, next + offset + 1, remaining - e * degree, current, out);
            current.pop();
        }
    }
}

/// Matrix of `d` from degree `source.degree` to `target.degree`; column `j`
/// holds `d` of the `j`-th source monomial.
pub fn differential_matrix_between<S: Scalar>(
    cdga: &CdgaPresentation<S>,
    source: &DegreeBasis,
    target: &DegreeBasis,
) -> SparseMatrix<S> {
    let index = target.index();
    let mut triplets = Vec::new();
    for (j, m) in source.monomials.iter().enumerate() {
        for (k, c) in cdga.apply_monomial(m).terms() {
            let i = *index.get(k).expect("d raises degree by one");
            triplets.push((i, j, c.clone()));
        }
    }
    SparseMatrix::from_triplets(target.len(), source.len(), triplets)
}

pub fn differential_matrix<S: Scalar>(
    cdga: &CdgaPresentation<S>,
    degree: u32,
    max_monomials: u64,
) -> Result<SparseMatrix<S>, CohomologyError> {
    let source = enumerate_basis(cdga, degree, max_monomials)?;
    let target = enumerate_basis(cdga, degree + 1, max_monomials)?;
    Ok(differential_matrix_between(cdga, &source, &target))
}

struct DegreeData {
    dim: u64,
    rank: u64,
}

fn degree_data<S: Scalar>(
    cdga: &CdgaPresentation<S>,
    degree: u32,
    limit: u64,
) -> Result<DegreeData, CohomologyError> {
    let source = enumerate_basis(cdga, degree, limit)?;
    let target = enumerate_basis(cdga, degree + 1, limit)?;
    let rank = differential_matrix_between(cdga, &source, &target).rank();
    Ok(DegreeData {
        dim: source.len() as u64,
        rank: rank as u64,
    })
}

/// `b_D = dim ker d_D − rank d_{D−1}` for `D = 0..=max_degree`.
pub fn betti_table<S: Scalar>(
    cdga: &CdgaPresentation<S>,
    max_degree: u32,
    options: BettiOptions,
) -> Result<BettiTable, CohomologyError> {
    check_degrees(cdga)?;
    let limit = options.max_monomials;
    let degrees: Vec<u32> = (0..=max_degree).collect();
    let data: Vec<DegreeData> = if options.parallel {
        degrees
            .par_iter()
            .map(|&d| degree_data(cdga, d, limit))
            .collect::<Result<_, _>>()?
    } else {
        degrees
            .iter()
            .map(|&d| degree_data(cdga, d, limit))
            .collect::<Result<_, _>>()?
    };
    let betti = data
        .iter()
        .enumerate()
        .map(|(d, x)| {
            let incoming = if d == 0 { 0 } else { data[d - 1].rank };
            x.dim - x.rank - incoming
        })
        .collect();
    let representatives = if options.representatives {
        Some(
            degrees
                .iter()
                .map(|&d| representatives(cdga, d, limit))
                .collect::<Result<_, _>>()?,
        )
    } else {
        None
    };
    Ok(BettiTable {
        max_degree,
        betti,
        cochain_dims: data.iter().map(|x| x.dim).collect(),
        ranks: data.iter().map(|x| x.rank).collect(),
        representatives,
    })
}

/// Cocycles of `degree` whose classes form a basis of cohomology there.
/// They are not canonical.
pub fn cocycle_representatives<S: Scalar>(
    cdga: &CdgaPresentation<S>,
    degree: u32,
    max_monomials: u64,
) -> Result<Vec<Element<Monomial, S>>, CohomologyError> {
    let basis = enumerate_basis(cdga, degree, max_monomials)?;
    let target = enumerate_basis(cdga, degree + 1, max_monomials)?;
    let outgoing = differential_matrix_between(cdga, &basis, &target);
    let mut span = EchelonBasis::new(basis.len());
    if degree > 0 {
        let below = enumerate_basis(cdga, degree - 1, max_monomials)?;
        let incoming = differential_matrix_between(cdga, &below, &basis);
        for c in 0..incoming.cols() {
            let mut v = vec![S::zero(); basis.len()];
            for (r, x) in incoming.column(c) {
                v[r] = x;
            }
            span.insert(&v);
        }
    }
    let mut out = Vec::new();
    for v in outgoing.kernel_basis() {
        if span.insert(&v) {
            out.push(Element::from_terms(
                basis.monomials.iter().cloned().zip(v),
            ));
        }
    }
    Ok(out)
}

fn representatives<S: Scalar>(
    cdga: &CdgaPresentation<S>,
    degree: u32,
    limit: u64,
) -> Result<Vec<String>, CohomologyError> {
    Ok(cocycle_representatives(cdga, degree, limit)?
        .iter()
        .map(|e| cdga.format_element(e))
        .collect())
}
