//! The CDGA model for the section space of `P(J¹O_X)` in the component of a
//! divisor class `α`.
//!
//! The model is the free algebra on
//!
//! * `z` in degree 2,
//! * one `x_j′` in degree 1 for each element `x_j` of the chosen `H¹` basis,
//! * one `w_{i,k}` in degree `i − 1` for each basis element `b_{i,k}` of
//!   `H^{2n+2−i}(X)`, `2 ≤ i ≤ 2n+2`,
//!
//! with `dz = dx_j′ = 0` and `d w_{i,k} = b_{i,k}′ ∩ Ψ*(χ)`, where
//!
//! ```text
//! Ψ*(χ) = Σ_i (−1)^i (1⊗1⊗c_i(J¹O)) · (z⊗1⊗1 + 1⊗1⊗α + Σ_j 1⊗x_j′⊗x_j)^{n+1−i}
//! ```
//!
//! lives in `Λ(z) ⊗ Λ(x′) ⊗ H*(X)`.
//!
//! The `H¹` summand is always read as `1⊗x_j′⊗x_j`, so for the torus the
//! `b` term is `1⊗b′⊗b`, matching the `a` term.
//!
//! Dual bases are plain: `b′(b) = 1` with no extra sign. Another global sign
//! on the `w` generators rescales differentials but leaves the cohomology
//! unchanged.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::grca::{
    Element, Factor, FactorKey, FreeAlgebra, GenId, GradedAlgebra, GrcaError, Monomial,
    RingPresentation, TensorAlgebra, TensorKey,
};
use crate::scalar::Scalar;
use crate::variety::{jet_chern, VarietyData, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HaefligerError {
    #[error("invalid variety: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidVariety(Vec<Violation>),
    #[error(transparent)]
    Algebra(#[from] GrcaError),
    #[error("differential of {generator} is not homogeneous of degree {expected}")]
    DifferentialDegree { generator: String, expected: u32 },
    #[error("d∘d is nonzero on {generator}")]
    NotSquareZero { generator: String },
    #[error("degree-0 generator {0} is not supported")]
    DegreeZeroGenerator(String),
    #[error("differential given for unknown generator {0}")]
    UnknownGenerator(String),
}

/// An element of a tensor algebra together with the algebra itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorClass<S> {
    pub algebra: TensorAlgebra<S>,
    pub value: Element<TensorKey, S>,
}

impl<S: Scalar> TensorClass<S> {
    pub fn degree(&self) -> Option<u32> {
        self.algebra.degree_of(&self.value)
    }
}

impl<S: Scalar> fmt::Display for TensorClass<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.algebra.format_element(&self.value))
    }
}

fn z_algebra() -> Arc<FreeAlgebra> {
    Arc::new(FreeAlgebra::new([("z", 2)]).expect("single generator"))
}

fn x_prime_algebra<S: Scalar>(v: &VarietyData<S>) -> Result<Arc<FreeAlgebra>, GrcaError> {
    let names: Vec<(String, u32)> = v
        .h1_basis
        .iter()
        .map(|&b| (format!("{}'", v.ring.label(b)), 1))
        .collect();
    Ok(Arc::new(FreeAlgebra::new(names)?))
}

/// `k_1 = Σ_{i=0}^{n+1} (−1)^i c_i(J¹O) ⊗ z^{n+1−i}` in `H*(X) ⊗ Λ(z)`.
pub fn compute_k1<S: Scalar>(v: &VarietyData<S>) -> TensorClass<S> {
    let algebra = TensorAlgebra::new(vec![Factor::Ring(v.ring.clone()), Factor::Free(z_algebra())]);
    let jet = jet_chern(v);
    let n1 = v.dim + 1;
    let mut value = Element::zero();
    for (i, c) in jet.classes.iter().enumerate() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let zpow = FactorKey::Mono(Monomial::power(GenId(0), n1 - i as u32));
        let term = Element::from_terms(c.terms().map(|(b, coeff)| {
            (
                TensorKey(vec![FactorKey::Basis(*b), zpow.clone()]),
                coeff.clone().signed(sign),
            )
        }));
        value = value + term;
    }
    TensorClass { algebra, value }
}

/// `Ψ*(χ)` in `Λ(z) ⊗ Λ(x′) ⊗ H*(X)`, expanded with Koszul signs.
pub fn compute_psi_chi<S: Scalar>(v: &VarietyData<S>) -> Result<TensorClass<S>, HaefligerError> {
    let zalg = z_algebra();
    let xalg = x_prime_algebra(v)?;
    let algebra = TensorAlgebra::new(vec![
        Factor::Free(zalg.clone()),
        Factor::Free(xalg.clone()),
        Factor::Ring(v.ring.clone()),
    ]);
    let mut base = algebra.embed_free(0, &zalg.generator_element(GenId(0)))
        + algebra.embed_ring(2, &v.alpha);
    for (j, &x) in v.h1_basis.iter().enumerate() {
        // x_j′ keeps its list position: all x′ have degree 1
        let key = TensorKey(vec![
            FactorKey::Mono(Monomial::one()),
            FactorKey::Mono(Monomial::generator(GenId(j))),
            FactorKey::Basis(x),
        ]);
        base = base + Element::from_term(key, S::one());
    }
    let jet = jet_chern(v);
    let n1 = v.dim + 1;
    let mut value = Element::zero();
    for (i, c) in jet.classes.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let sign = if i % 2 == 0 { S::one() } else { -S::one() };
        let power = algebra.power(&base, n1 - i as u32)?;
        let lifted = algebra.embed_ring(2, c).scale(&sign);
        value = value + algebra.mul(&lifted, &power)?;
    }
    Ok(TensorClass { algebra, value })
}

/// What a generator of the section model stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorRole {
    /// The degree-2 class `z`.
    Z,
    /// `x_j′`, dual to the `H¹` basis element with this label.
    H1Dual { label: String },
    /// `w_{i,k}`, desuspended dual of the basis element `label` of `H^{2n+2−i}`.
    Dual { i: u32, label: String },
    /// Generator of a CDGA not built from a variety.
    Other,
}

/// A free CDGA: generators with degrees and the differential of each one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdgaPresentation<S> {
    algebra: Arc<FreeAlgebra>,
    /// Indexed by `GenId`.
    differential: Vec<Element<Monomial, S>>,
    roles: Vec<GeneratorRole>,
}

/// A generator in insertion order together with its differential, written
/// as a list of `(coefficient, generator names)` terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec<S> {
    pub name: String,
    pub degree: u32,
    pub role: GeneratorRole,
    pub differential: Vec<(S, Vec<String>)>,
}

impl<S: Scalar> CdgaPresentation<S> {
    /// Builds and checks a CDGA: degrees positive, each `dg` homogeneous of
    /// degree `|g| + 1`, and `d∘d = 0` on generators.
    pub fn new(specs: Vec<GeneratorSpec<S>>) -> Result<Self, HaefligerError> {
        if let Some(g) = specs.iter().find(|g| g.degree == 0) {
            return Err(HaefligerError::DegreeZeroGenerator(g.name.clone()));
        }
        let algebra = Arc::new(FreeAlgebra::new(
            specs.iter().map(|g| (g.name.clone(), g.degree)),
        )?);
        let mut differential = vec![Element::zero(); algebra.len()];
        let mut roles = vec![GeneratorRole::Other; algebra.len()];
        for spec in specs {
            let id = algebra.id_of(&spec.name).expect("generator just inserted");
            let mut terms = Vec::with_capacity(spec.differential.len());
            for (coeff, names) in spec.differential {
                let ids = names
                    .iter()
                    .map(|n| {
                        algebra
                            .id_of(n)
                            .ok_or_else(|| HaefligerError::UnknownGenerator(n.clone()))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let (sign, m) = algebra.normalize(&ids)?;
                if sign != 0 {
                    terms.push((m, coeff.signed(sign)));
                }
            }
            differential[id.0] = Element::from_terms(terms);
            roles[id.0] = spec.role;
        }
        let cdga = Self {
            algebra,
            differential,
            roles,
        };
        cdga.check()?;
        Ok(cdga)
    }

    fn from_parts(
        algebra: Arc<FreeAlgebra>,
        differential: Vec<Element<Monomial, S>>,
        roles: Vec<GeneratorRole>,
    ) -> Result<Self, HaefligerError> {
        let cdga = Self {
            algebra,
            differential,
            roles,
        };
        cdga.check()?;
        Ok(cdga)
    }

    fn check(&self) -> Result<(), HaefligerError> {
        for g in self.algebra.generators() {
            let dg = &self.differential[g.id.0];
            if !self.algebra.is_homogeneous_of(dg, g.degree + 1) {
                return Err(HaefligerError::DifferentialDegree {
                    generator: g.name.clone(),
                    expected: g.degree + 1,
                });
            }
            if !self.apply(dg).is_zero() {
                return Err(HaefligerError::NotSquareZero {
                    generator: g.name.clone(),
                });
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &FreeAlgebra {
        &self.algebra
    }

    pub fn algebra_arc(&self) -> &Arc<FreeAlgebra> {
        &self.algebra
    }

    pub fn len(&self) -> usize {
        self.algebra.len()
    }

    pub fn is_empty(&self) -> bool {
        self.algebra.is_empty()
    }

    pub fn differential_of(&self, g: GenId) -> &Element<Monomial, S> {
        &self.differential[g.0]
    }

    pub fn role(&self, g: GenId) -> &GeneratorRole {
        &self.roles[g.0]
    }

    pub fn generator_id(&self, name: &str) -> Option<GenId> {
        self.algebra.id_of(name)
    }

    /// `d` of a generator looked up by name.
    pub fn d(&self, name: &str) -> Option<&Element<Monomial, S>> {
        self.algebra.id_of(name).map(|g| &self.differential[g.0])
    }

    /// `d(m)` by the graded Leibniz rule: the factor `g^e` in
    /// `prefix · g^e · suffix` contributes `(−1)^{|prefix|} e · prefix · g^{e−1} dg · suffix`.
    pub fn apply_monomial(&self, m: &Monomial) -> Element<Monomial, S> {
        let mut out: Vec<(Monomial, S)> = Vec::new();
        let factors = m.factors();
        let mut prefix_degree = 0u32;
        for (t, &(g, e)) in factors.iter().enumerate() {
            let dg = &self.differential[g.0];
            if !dg.is_zero() {
                let prefix = Monomial::from_sorted(factors[..t].to_vec());
                let suffix = Monomial::from_sorted(factors[t + 1..].to_vec());
                let rest = Monomial::power(g, e - 1);
                let sign: i8 = if prefix_degree.is_multiple_of(2) { 1 } else { -1 };
                let scale = S::from_int(i64::from(e)).signed(sign);
                for (dm, c) in dg.terms() {
                    // prefix · g^{e−1} · dm · suffix; g^{e−1} is even or trivial
                    let (s1, left) = self.algebra.mul_monomials(&prefix, &rest);
                    let (s2, mid) = self.algebra.mul_monomials(&left, dm);
                    let (s3, full) = self.algebra.mul_monomials(&mid, &suffix);
                    let s = s1 * s2 * s3;
                    if s != 0 {
                        out.push((full, (c.clone() * scale.clone()).signed(s)));
                    }
                }
            }
            prefix_degree += self.algebra.degree(g) * e;
        }
        Element::from_terms(out)
    }

    pub fn apply(&self, a: &Element<Monomial, S>) -> Element<Monomial, S> {
        let mut out = Vec::new();
        for (m, c) in a.terms() {
            for (k, v) in self.apply_monomial(m).terms() {
                out.push((k.clone(), v.clone() * c.clone()));
            }
        }
        Element::from_terms(out)
    }

    /// The same CDGA with generators inserted in a different order.
    /// `order` lists the current generator ids in the new insertion order.
    pub fn with_insertion_order(&self, order: &[GenId]) -> Result<Self, HaefligerError> {
        let specs = order
            .iter()
            .map(|&g| self.spec_of(g))
            .collect::<Vec<_>>();
        Self::new(specs)
    }

    /// Renames generators; `rename(generator, role)` gives the new name.
    pub fn renamed<F>(&self, rename: F) -> Result<Self, HaefligerError>
    where
        F: Fn(&crate::grca::Generator, &GeneratorRole) -> String,
    {
        let names: Vec<String> = self
            .algebra
            .generators()
            .iter()
            .map(|g| rename(g, &self.roles[g.id.0]))
            .collect();
        // insertion order is preserved so ids do not move
        let mut gens: Vec<&crate::grca::Generator> = self.algebra.generators().iter().collect();
        gens.sort_by_key(|g| g.insertion);
        let algebra = Arc::new(FreeAlgebra::new(
            gens.iter().map(|g| (names[g.id.0].clone(), g.degree)),
        )?);
        Self::from_parts(algebra, self.differential.clone(), self.roles.clone())
    }

    /// Names generators `y{degree}` in the order of their ids, with primes
    /// on repeats within a degree, keeping `z` and the `x′` names.
    pub fn with_degree_names(&self) -> Result<Self, HaefligerError> {
        let mut seen = std::collections::HashMap::<u32, usize>::new();
        let mut names = Vec::with_capacity(self.len());
        for g in self.algebra.generators() {
            names.push(match &self.roles[g.id.0] {
                GeneratorRole::Dual { .. } => {
                    let count = seen.entry(g.degree).or_default();
                    let name = format!("y{}{}", g.degree, "'".repeat(*count));
                    *count += 1;
                    name
                }
                _ => g.name.clone(),
            });
        }
        self.renamed(|g, _| names[g.id.0].clone())
    }

    fn spec_of(&self, g: GenId) -> GeneratorSpec<S> {
        let generator = &self.algebra.generators()[g.0];
        GeneratorSpec {
            name: generator.name.clone(),
            degree: generator.degree,
            role: self.roles[g.0].clone(),
            differential: self.differential[g.0]
                .terms()
                .map(|(m, c)| {
                    let names = m
                        .expanded()
                        .into_iter()
                        .map(|id| self.algebra.generators()[id.0].name.clone())
                        .collect();
                    (c.clone(), names)
                })
                .collect(),
        }
    }

    pub fn format_element(&self, a: &Element<Monomial, S>) -> String {
        self.algebra.format_element(a)
    }

    /// One line per generator, `d(name) = …`, in generator order.
    pub fn differential_lines(&self) -> Vec<String> {
        self.algebra
            .generators()
            .iter()
            .map(|g| format!("d({}) = {}", g.name, self.format_element(&self.differential[g.id.0])))
            .collect()
    }
}

fn dual_name(i: u32, label: &str) -> String {
    format!("w{i}_{label}")
}

/// The section-space model of `v`, with generators `z`, `x′`, `w{i}_{label}`.
pub fn build_section_cdga<S: Scalar>(v: &VarietyData<S>) -> Result<CdgaPresentation<S>, HaefligerError> {
    let violations = v.validate();
    if !violations.is_empty() {
        return Err(HaefligerError::InvalidVariety(violations));
    }
    let psi = compute_psi_chi(v)?;
    let ring: &RingPresentation<S> = &v.ring;
    let top = v.top_degree() + 2;

    let mut specs: Vec<(String, u32, GeneratorRole)> = vec![("z".into(), 2, GeneratorRole::Z)];
    for &x in &v.h1_basis {
        let label = ring.label(x).to_string();
        specs.push((format!("{label}'"), 1, GeneratorRole::H1Dual { label }));
    }
    let mut duals = Vec::new();
    for i in 2..=top {
        for b in ring.basis_in_degree(top - i) {
            let label = ring.label(b).to_string();
            specs.push((dual_name(i, &label), i - 1, GeneratorRole::Dual { i, label }));
            duals.push((i, b));
        }
    }
    let algebra = Arc::new(FreeAlgebra::new(specs.iter().map(|(n, d, _)| (n.clone(), *d)))?);
    let z = algebra.id_of("z").expect("z present");
    let x_ids: Vec<GenId> = v
        .h1_basis
        .iter()
        .map(|&x| algebra.id_of(&format!("{}'", ring.label(x))).expect("x′ present"))
        .collect();

    let mut differential = vec![Element::zero(); algebra.len()];
    let mut roles = vec![GeneratorRole::Other; algebra.len()];
    for (name, _, role) in &specs {
        roles[algebra.id_of(name).expect("present").0] = role.clone();
    }
    for (i, b) in duals {
        let capped = psi.algebra.cap_dual(b, &psi.value)?;
        let mut terms = Vec::with_capacity(capped.len());
        for (key, c) in capped.terms() {
            let (FactorKey::Mono(zm), FactorKey::Mono(xm)) = (&key.0[0], &key.0[1]) else {
                unreachable!("left factors of Ψ are free algebras");
            };
            let mut ids: Vec<GenId> = xm.expanded().into_iter().map(|g| x_ids[g.0]).collect();
            ids.extend(std::iter::repeat_n(z, zm.exponent(GenId(0)) as usize));
            let (sign, m) = algebra.normalize(&ids)?;
            if sign != 0 {
                terms.push((m, c.clone().signed(sign)));
            }
        }
        let id = algebra.id_of(&dual_name(i, ring.label(b))).expect("present");
        differential[id.0] = Element::from_terms(terms);
    }
    CdgaPresentation::from_parts(algebra, differential, roles)
}
