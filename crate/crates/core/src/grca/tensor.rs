use std::sync::Arc;

use super::{format_combination, BasisId, Element, FreeAlgebra, GradedAlgebra, GrcaError, Monomial, RingPresentation};
use crate::scalar::Scalar;

/// One tensor factor: a free algebra or a presented ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor<S> {
    Free(Arc<FreeAlgebra>),
    Ring(Arc<RingPresentation<S>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorKey {
    Mono(Monomial),
    Basis(BasisId),
}

/// A pure tensor of basis elements, one key per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorKey(pub Vec<FactorKey>);

impl<S: Scalar> Factor<S> {
    fn unit_key(&self) -> FactorKey {
        match self {
            Factor::Free(_) => FactorKey::Mono(Monomial::one()),
            Factor::Ring(r) => FactorKey::Basis(r.unit_id()),
        }
    }

    fn key_degree(&self, key: &FactorKey) -> u32 {
        match (self, key) {
            (Factor::Free(f), FactorKey::Mono(m)) => f.monomial_degree(m),
            (Factor::Ring(r), FactorKey::Basis(b)) => r.degree(*b),
            _ => panic!("tensor key does not match its factor"),
        }
    }

    fn contains_key(&self, key: &FactorKey) -> bool {
        match (self, key) {
            (Factor::Free(f), FactorKey::Mono(m)) => f.contains_monomial(m),
            (Factor::Ring(r), FactorKey::Basis(b)) => b.0 < r.len(),
            _ => false,
        }
    }

    fn mul_keys(&self, a: &FactorKey, b: &FactorKey) -> Vec<(FactorKey, S)> {
        match (self, a, b) {
            (Factor::Free(f), FactorKey::Mono(x), FactorKey::Mono(y)) => {
                let (sign, m) = f.mul_monomials(x, y);
                if sign == 0 {
                    Vec::new()
                } else {
                    vec![(FactorKey::Mono(m), S::one().signed(sign))]
                }
            }
            (Factor::Ring(r), FactorKey::Basis(x), FactorKey::Basis(y)) => r
                .product(*x, *y)
                .terms()
                .map(|(k, c)| (FactorKey::Basis(*k), c.clone()))
                .collect(),
            _ => panic!("tensor key does not match its factor"),
        }
    }

    fn format_key(&self, key: &FactorKey) -> String {
        match (self, key) {
            (Factor::Free(f), FactorKey::Mono(m)) => f.format_monomial(m),
            (Factor::Ring(r), FactorKey::Basis(b)) => r.label(*b).to_string(),
            _ => "?".to_string(),
        }
    }
}

/// Tensor product of graded-commutative algebras. Products of pure tensors
/// follow the Koszul rule: each right-hand factor picks up
/// `(-1)^{|x_i||y_j|}` for every left-hand factor `x_i` it moves past.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorAlgebra<S> {
    factors: Vec<Factor<S>>,
}

impl<S: Scalar> TensorAlgebra<S> {
    pub fn new(factors: Vec<Factor<S>>) -> Self {
        Self { factors }
    }

    pub fn factors(&self) -> &[Factor<S>] {
        &self.factors
    }

    /// The basis element `1 ⊗ … ⊗ key ⊗ … ⊗ 1` with `key` in factor `slot`.
    pub fn embed_key(&self, slot: usize, key: FactorKey) -> TensorKey {
        let mut parts: Vec<FactorKey> = self.factors.iter().map(Factor::unit_key).collect();
        parts[slot] = key;
        TensorKey(parts)
    }

    pub fn embed_free(&self, slot: usize, a: &Element<Monomial, S>) -> Element<TensorKey, S> {
        a.map_keys(|m| self.embed_key(slot, FactorKey::Mono(m.clone())))
    }

    pub fn embed_ring(&self, slot: usize, a: &Element<BasisId, S>) -> Element<TensorKey, S> {
        a.map_keys(|b| self.embed_key(slot, FactorKey::Basis(*b)))
    }

    /// Pure tensor `keys[0] ⊗ keys[1] ⊗ …` with coefficient one.
    pub fn pure(&self, keys: Vec<FactorKey>) -> Result<Element<TensorKey, S>, GrcaError> {
        let key = TensorKey(keys);
        if !self.contains_key(&key) {
            return Err(GrcaError::MismatchedAlgebra(format!("{key:?}")));
        }
        Ok(Element::from_term(key, S::one()))
    }

    /// The tensor algebra obtained by dropping the rightmost factor.
    pub fn without_last(&self) -> Self {
        let mut factors = self.factors.clone();
        factors.pop();
        Self { factors }
    }

    /// Contracts the rightmost factor against the dual of one of its basis
    /// elements: `b′ ∩ (w ⊗ y) = b′(y) w`.
    pub fn cap_dual(
        &self,
        dual_of: BasisId,
        v: &Element<TensorKey, S>,
    ) -> Result<Element<TensorKey, S>, GrcaError> {
        match self.factors.last() {
            Some(Factor::Ring(r)) if dual_of.0 < r.len() => {}
            Some(Factor::Ring(_)) => return Err(GrcaError::UnknownLabel(format!("#{}", dual_of.0))),
            _ => return Err(GrcaError::CapNeedsRing),
        }
        self.check_element(v)?;
        Ok(Element::from_terms(v.terms().filter_map(|(key, c)| {
            let (last, rest) = key.0.split_last()?;
            (last == &FactorKey::Basis(dual_of)).then(|| (TensorKey(rest.to_vec()), c.clone()))
        })))
    }

    pub fn format_key(&self, key: &TensorKey) -> String {
        self.factors
            .iter()
            .zip(&key.0)
            .map(|(f, k)| f.format_key(k))
            .collect::<Vec<_>>()
            .join("⊗")
    }

    pub fn format_element(&self, a: &Element<TensorKey, S>) -> String {
        format_combination(a.terms().map(|(k, c)| (c.to_rational(), self.format_key(k))))
    }
}

impl<S: Scalar> GradedAlgebra<S> for TensorAlgebra<S> {
    type Key = TensorKey;

    fn unit_key(&self) -> TensorKey {
        TensorKey(self.factors.iter().map(Factor::unit_key).collect())
    }

    fn key_degree(&self, key: &TensorKey) -> u32 {
        self.factors
            .iter()
            .zip(&key.0)
            .map(|(f, k)| f.key_degree(k))
            .sum()
    }

    fn contains_key(&self, key: &TensorKey) -> bool {
        key.0.len() == self.factors.len()
            && self.factors.iter().zip(&key.0).all(|(f, k)| f.contains_key(k))
    }

    fn mul_keys(&self, a: &TensorKey, b: &TensorKey) -> Element<TensorKey, S> {
        let degrees_a: Vec<u32> = self.factors.iter().zip(&a.0).map(|(f, k)| f.key_degree(k)).collect();
        let degrees_b: Vec<u32> = self.factors.iter().zip(&b.0).map(|(f, k)| f.key_degree(k)).collect();
        // y_j moves past x_{j+1}, …, x_r
        let mut exponent = 0u64;
        for j in 0..degrees_b.len() {
            let passed: u32 = degrees_a[j + 1..].iter().sum();
            exponent += u64::from(degrees_b[j]) * u64::from(passed);
        }
        let sign: i8 = if exponent.is_multiple_of(2) { 1 } else { -1 };

        let mut partial: Vec<(Vec<FactorKey>, S)> = vec![(Vec::new(), S::one().signed(sign))];
        for (i, f) in self.factors.iter().enumerate() {
            let prods = f.mul_keys(&a.0[i], &b.0[i]);
            if prods.is_empty() {
                return Element::zero();
            }
            let mut next = Vec::with_capacity(partial.len() * prods.len());
            for (keys, c) in &partial {
                for (k, ck) in &prods {
                    let mut keys = keys.clone();
                    keys.push(k.clone());
                    next.push((keys, c.clone() * ck.clone()));
                }
            }
            partial = next;
        }
        Element::from_terms(partial.into_iter().map(|(keys, c)| (TensorKey(keys), c)))
    }
}
