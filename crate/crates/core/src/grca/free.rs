use std::cmp::Ordering;
use std::collections::HashMap;

use super::{format_combination, Element, GradedAlgebra, GrcaError};
use crate::scalar::Scalar;

/// Position of a generator in its algebra's total order
/// (degree ascending, then insertion index ascending).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub id: GenId,
    pub name: String,
    pub degree: u32,
    /// Position in the list the algebra was built from.
    pub insertion: usize,
}

impl Generator {
    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// A normalized monomial: factors sorted by generator id, exponents at least
/// one, odd generators with exponent exactly one.
///
/// Monomials are ordered lexicographically by exponent vector, smaller
/// exponent first at the first generator where they differ. The unit is the
/// smallest monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(GenId, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn generator(id: GenId) -> Self {
        Self { factors: vec![(id, 1)] }
    }

    pub fn power(id: GenId, exponent: u32) -> Self {
        if exponent == 0 {
            Self::one()
        } else {
            Self { factors: vec![(id, exponent)] }
        }
    }

    /// Caller guarantees sorted distinct ids and positive exponents.
    pub(crate) fn from_sorted(factors: Vec<(GenId, u32)>) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(factors.iter().all(|&(_, e)| e > 0));
        Self { factors }
    }

    pub fn factors(&self) -> &[(GenId, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, id: GenId) -> u32 {
        self.factors
            .binary_search_by_key(&id, |&(g, _)| g)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    /// Flat list of generators with repetition, in order.
    pub fn expanded(&self) -> Vec<GenId> {
        self.factors
            .iter()
            .flat_map(|&(g, e)| std::iter::repeat_n(g, e as usize))
            .collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.factors, &other.factors);
        for i in 0..a.len().min(b.len()) {
            let ((ga, ea), (gb, eb)) = (a[i], b[i]);
            if ga != gb {
                // the side holding the smaller generator has a positive
                // exponent where the other has zero
                return if ga < gb { Ordering::Greater } else { Ordering::Less };
            }
            if ea != eb {
                return ea.cmp(&eb);
            }
        }
        a.len().cmp(&b.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Free graded-commutative algebra on named generators of non-negative degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeAlgebra {
    generators: Vec<Generator>,
    by_name: HashMap<String, GenId>,
}

impl FreeAlgebra {
    /// Generators are given in insertion order; ids follow the total order.
    pub fn new<I, N>(generators: I) -> Result<Self, GrcaError>
    where
        I: IntoIterator<Item = (N, u32)>,
        N: Into<String>,
    {
        let mut raw: Vec<(String, u32, usize)> = generators
            .into_iter()
            .enumerate()
            .map(|(i, (name, degree))| (name.into(), degree, i))
            .collect();
        raw.sort_by_key(|&(_, degree, insertion)| (degree, insertion));
        let mut by_name = HashMap::new();
        let mut gens = Vec::with_capacity(raw.len());
        for (pos, (name, degree, insertion)) in raw.into_iter().enumerate() {
            if by_name.insert(name.clone(), GenId(pos)).is_some() {
                return Err(GrcaError::DuplicateGenerator(name));
            }
            gens.push(Generator {
                id: GenId(pos),
                name,
                degree,
                insertion,
            });
        }
        Ok(Self {
            generators: gens,
            by_name,
        })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generator(&self, id: GenId) -> Option<&Generator> {
        self.generators.get(id.0)
    }

    pub fn id_of(&self, name: &str) -> Option<GenId> {
        self.by_name.get(name).copied()
    }

    pub fn degree(&self, id: GenId) -> u32 {
        self.generators[id.0].degree
    }

    pub fn is_odd(&self, id: GenId) -> bool {
        self.generators[id.0].is_odd()
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.factors.iter().map(|&(g, e)| self.degree(g) * e).sum()
    }

    fn check_id(&self, id: GenId) -> Result<(), GrcaError> {
        if id.0 < self.generators.len() {
            Ok(())
        } else {
            Err(GrcaError::UnknownGenerator(id.0))
        }
    }

    /// Sorts an unordered product of generators into normal form.
    ///
    /// Returns the accumulated Koszul sign: each transposition of adjacent
    /// factors of degrees `p, q` contributes `(-1)^{pq}`. The sign is 0 (and
    /// the monomial the unit) when an odd generator occurs twice.
    pub fn normalize(&self, factors: &[GenId]) -> Result<(i8, Monomial), GrcaError> {
        for &g in factors {
            self.check_id(g)?;
        }
        let odd: Vec<GenId> = factors.iter().copied().filter(|&g| self.is_odd(g)).collect();
        let mut inversions = 0usize;
        for i in 0..odd.len() {
            for j in i + 1..odd.len() {
                match odd[i].cmp(&odd[j]) {
                    Ordering::Equal => return Ok((0, Monomial::one())),
                    Ordering::Greater => inversions += 1,
                    Ordering::Less => {}
                }
            }
        }
        let mut sorted = factors.to_vec();
        sorted.sort_unstable();
        let mut out: Vec<(GenId, u32)> = Vec::new();
        for g in sorted {
            match out.last_mut() {
                Some((last, e)) if *last == g => *e += 1,
                _ => out.push((g, 1)),
            }
        }
        let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        Ok((sign, Monomial::from_sorted(out)))
    }

    /// Product of two normalized monomials with its Koszul sign.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> (i8, Monomial) {
        let mut inversions = 0usize;
        for &(gb, _) in b.factors.iter().filter(|(g, _)| self.is_odd(*g)) {
            for &(ga, _) in a.factors.iter().filter(|(g, _)| self.is_odd(*g)) {
                match ga.cmp(&gb) {
                    Ordering::Equal => return (0, Monomial::one()),
                    Ordering::Greater => inversions += 1,
                    Ordering::Less => {}
                }
            }
        }
        let mut out = Vec::with_capacity(a.factors.len() + b.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < a.factors.len() || j < b.factors.len() {
            match (a.factors.get(i), b.factors.get(j)) {
                (Some(&(ga, ea)), Some(&(gb, eb))) if ga == gb => {
                    out.push((ga, ea + eb));
                    i += 1;
                    j += 1;
                }
                (Some(&(ga, ea)), Some(&(gb, _))) if ga < gb => {
                    out.push((ga, ea));
                    i += 1;
                }
                (Some(_), Some(&(gb, eb))) => {
                    out.push((gb, eb));
                    j += 1;
                }
                (Some(&f), None) => {
                    out.push(f);
                    i += 1;
                }
                (None, Some(&f)) => {
                    out.push(f);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        (sign, Monomial::from_sorted(out))
    }

    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        m.factors.iter().all(|&(g, e)| {
            g.0 < self.generators.len() && e >= 1 && (e == 1 || !self.is_odd(g))
        }) && m.factors.windows(2).all(|w| w[0].0 < w[1].0)
    }

    pub fn generator_element<S: Scalar>(&self, id: GenId) -> Element<Monomial, S> {
        Element::from_term(Monomial::generator(id), S::one())
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        m.factors
            .iter()
            .map(|&(g, e)| {
                let name = &self.generators[g.0].name;
                if e == 1 {
                    name.clone()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn format_element<S: Scalar>(&self, a: &Element<Monomial, S>) -> String {
        format_combination(
            a.terms()
                .map(|(m, c)| (c.to_rational(), self.format_monomial(m))),
        )
    }
}

impl<S: Scalar> GradedAlgebra<S> for FreeAlgebra {
    type Key = Monomial;

    fn unit_key(&self) -> Monomial {
        Monomial::one()
    }

    fn key_degree(&self, key: &Monomial) -> u32 {
        self.monomial_degree(key)
    }

    fn contains_key(&self, key: &Monomial) -> bool {
        self.contains_monomial(key)
    }

    fn mul_keys(&self, a: &Monomial, b: &Monomial) -> Element<Monomial, S> {
        let (sign, m) = self.mul_monomials(a, b);
        if sign == 0 {
            Element::zero()
        } else {
            Element::from_term(m, S::one().signed(sign))
        }
    }
}
