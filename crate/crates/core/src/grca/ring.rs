use std::collections::HashMap;
use std::fmt;


use super::{format_combination, Element, GradedAlgebra, GrcaError};
use crate::scalar::Scalar;

/// Index of a basis element of a [`RingPresentation`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisId(pub usize);

/// Finite-dimensional graded-commutative ring given by a basis of
/// homogeneous classes and a total table of structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPresentation<S> {
    labels: Vec<String>,
    degrees: Vec<u32>,
    by_label: HashMap<String, BasisId>,
    table: Vec<Vec<Element<BasisId, S>>>,
    top_degree: u32,
    point_class: Option<BasisId>,
    unit: BasisId,
}

/// A failed ring axiom, naming the basis labels involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingViolation {
    UnitLaw { label: String },
    ProductDegree { left: String, right: String },
    AboveTopDegree { left: String, right: String },
    BasisAboveTopDegree { label: String, degree: u32 },
    GradedCommutativity { left: String, right: String },
    Associativity { a: String, b: String, c: String },
    MissingPointClass,
    PointClassDegree { label: String, degree: u32 },
}

impl fmt::Display for RingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UnitLaw { label } => write!(f, "unit law: 1·{label} ≠ {label}"),
            Self::ProductDegree { left, right } => {
                write!(f, "product degree: {left}·{right} is not of degree |{left}|+|{right}|")
            }
            Self::AboveTopDegree { left, right } => {
                write!(f, "top degree: {left}·{right} exceeds the top degree but is nonzero")
            }
            Self::BasisAboveTopDegree { label, degree } => {
                write!(f, "top degree: basis element {label} has degree {degree}")
            }
            Self::GradedCommutativity { left, right } => write!(
                f,
                "graded commutativity: {left}·{right} ≠ (−1)^(|{left}||{right}|) {right}·{left}"
            ),
            Self::Associativity { a, b, c } => {
                write!(f, "associativity: ({a}·{b})·{c} ≠ {a}·({b}·{c})")
            }
            Self::MissingPointClass => write!(f, "point class: none declared"),
            Self::PointClassDegree { label, degree } => {
                write!(f, "point class: {label} has degree {degree}, not the top degree")
            }
        }
    }
}

impl<S: Scalar> RingPresentation<S> {
    /// Builds a ring from a dense product table `table[a][b] = a·b`.
    ///
    /// Only structural problems are errors here; ring axioms are checked by
    /// [`RingPresentation::check_axioms`].
    pub fn from_table(
        basis: Vec<(String, u32)>,
        table: Vec<Vec<Element<BasisId, S>>>,
        top_degree: u32,
        point_class: Option<&str>,
    ) -> Result<Self, GrcaError> {
        let mut by_label = HashMap::new();
        let mut labels = Vec::with_capacity(basis.len());
        let mut degrees = Vec::with_capacity(basis.len());
        for (i, (label, degree)) in basis.into_iter().enumerate() {
            if by_label.insert(label.clone(), BasisId(i)).is_some() {
                return Err(GrcaError::DuplicateLabel(label));
            }
            labels.push(label);
            degrees.push(degree);
        }
        let unit = match by_label.get("1") {
            Some(&id) if degrees[id.0] == 0 => id,
            _ => return Err(GrcaError::MissingUnit),
        };
        let n = labels.len();
        if table.len() != n {
            let left = labels.get(table.len()).cloned().unwrap_or_default();
            return Err(GrcaError::MissingProduct(left, labels[0].clone()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                let right = labels.get(row.len()).cloned().unwrap_or_default();
                return Err(GrcaError::MissingProduct(labels[a].clone(), right));
            }
            for entry in row {
                if let Some(k) = entry.keys().find(|k| k.0 >= n) {
                    return Err(GrcaError::MismatchedAlgebra(format!("basis index {}", k.0)));
                }
            }
        }
        let point_class = point_class
            .map(|p| {
                by_label
                    .get(p)
                    .copied()
                    .ok_or_else(|| GrcaError::UnknownLabel(p.to_string()))
            })
            .transpose()?;
        Ok(Self {
            labels,
            degrees,
            by_label,
            table,
            top_degree,
            point_class,
            unit,
        })
    }

    /// Builds a ring from labelled products. Every ordered pair of basis
    /// labels must appear exactly once.
    pub fn from_products(
        basis: Vec<(String, u32)>,
        products: Vec<(String, String, Vec<(String, S)>)>,
        top_degree: u32,
        point_class: Option<&str>,
    ) -> Result<Self, GrcaError> {
        let index: HashMap<&str, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, (l, _))| (l.as_str(), i))
            .collect();
        let lookup = |label: &str| {
            index
                .get(label)
                .copied()
                .ok_or_else(|| GrcaError::UnknownLabel(label.to_string()))
        };
        let n = basis.len();
        let mut table: Vec<Vec<Option<Element<BasisId, S>>>> = vec![vec![None; n]; n];
        for (left, right, result) in products {
            let (a, b) = (lookup(&left)?, lookup(&right)?);
            let mut terms = Vec::with_capacity(result.len());
            for (label, coeff) in result {
                terms.push((BasisId(lookup(&label)?), coeff));
            }
            if table[a][b].is_some() {
                return Err(GrcaError::DuplicateProduct(left, right));
            }
            table[a][b] = Some(Element::from_terms(terms));
        }
        let mut dense = Vec::with_capacity(n);
        for (a, row) in table.into_iter().enumerate() {
            let mut dense_row = Vec::with_capacity(n);
            for (b, entry) in row.into_iter().enumerate() {
                match entry {
                    Some(e) => dense_row.push(e),
                    None => {
                        return Err(GrcaError::MissingProduct(
                            basis[a].0.clone(),
                            basis[b].0.clone(),
                        ))
                    }
                }
            }
            dense.push(dense_row);
        }
        Self::from_table(basis, dense, top_degree, point_class)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, id: BasisId) -> &str {
        &self.labels[id.0]
    }

    pub fn id_of(&self, label: &str) -> Option<BasisId> {
        self.by_label.get(label).copied()
    }

    pub fn degree(&self, id: BasisId) -> u32 {
        self.degrees[id.0]
    }

    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    pub fn point_class(&self) -> Option<BasisId> {
        self.point_class
    }

    pub fn unit_id(&self) -> BasisId {
        self.unit
    }

    pub fn ids(&self) -> impl Iterator<Item = BasisId> {
        (0..self.labels.len()).map(BasisId)
    }

    /// Basis elements of degree `q`, in basis order.
    pub fn basis_in_degree(&self, q: u32) -> Vec<BasisId> {
        self.ids().filter(|&b| self.degree(b) == q).collect()
    }

    /// Betti numbers `b_0..b_top` read off the basis.
    pub fn betti(&self) -> Vec<usize> {
        (0..=self.top_degree)
            .map(|q| self.basis_in_degree(q).len())
            .collect()
    }

    pub fn product(&self, a: BasisId, b: BasisId) -> &Element<BasisId, S> {
        &self.table[a.0][b.0]
    }

    pub fn basis_element(&self, id: BasisId) -> Element<BasisId, S> {
        Element::from_term(id, S::one())
    }

    pub fn element(&self, terms: &[(&str, S)]) -> Result<Element<BasisId, S>, GrcaError> {
        let mut out = Vec::with_capacity(terms.len());
        for (label, coeff) in terms {
            let id = self
                .id_of(label)
                .ok_or_else(|| GrcaError::UnknownLabel(label.to_string()))?;
            out.push((id, coeff.clone()));
        }
        Ok(Element::from_terms(out))
    }

    /// The integration functional: coefficient of the point class.
    pub fn integrate(&self, a: &Element<BasisId, S>) -> Result<S, GrcaError> {
        let point = self.point_class.ok_or(GrcaError::NoPointClass)?;
        Ok(a.coeff(&point))
    }

    pub fn format_element(&self, a: &Element<BasisId, S>) -> String {
        format_combination(
            a.terms()
                .map(|(b, c)| (c.to_rational(), self.labels[b.0].clone())),
        )
    }

    /// Returns a copy with one structure constant replaced. Intended for
    /// building test fixtures and ring mutations; no axioms are re-checked.
    pub fn with_product(&self, a: BasisId, b: BasisId, value: Element<BasisId, S>) -> Self {
        let mut out = self.clone();
        out.table[a.0][b.0] = value;
        out
    }

    /// Checks the unit law, degree bookkeeping, graded commutativity,
    /// associativity and the point class.
    pub fn check_axioms(&self) -> Vec<RingViolation> {
        let mut out = Vec::new();
        for b in self.ids() {
            let degree = self.degree(b);
            if degree > self.top_degree {
                out.push(RingViolation::BasisAboveTopDegree {
                    label: self.label(b).to_string(),
                    degree,
                });
            }
        }
        let unit = self.unit;
        for b in self.ids() {
            let e = self.basis_element(b);
            if self.product(unit, b) != &e || self.product(b, unit) != &e {
                out.push(RingViolation::UnitLaw {
                    label: self.label(b).to_string(),
                });
            }
        }
        for a in self.ids() {
            for b in self.ids() {
                let prod = self.product(a, b);
                let target = self.degree(a) + self.degree(b);
                if prod.is_zero() {
                    continue;
                }
                let (left, right) = (self.label(a).to_string(), self.label(b).to_string());
                if target > self.top_degree {
                    out.push(RingViolation::AboveTopDegree { left, right });
                } else if !self.is_homogeneous_of(prod, target) {
                    out.push(RingViolation::ProductDegree { left, right });
                }
            }
        }
        for a in self.ids() {
            for b in self.ids().filter(|&b| b >= a) {
                let sign = if (self.degree(a) * self.degree(b)).is_multiple_of(2) { 1 } else { -1 };
                let ab = self.product(a, b);
                let ba = self.product(b, a).scale(&S::one().signed(sign));
                if ab != &ba {
                    out.push(RingViolation::GradedCommutativity {
                        left: self.label(a).to_string(),
                        right: self.label(b).to_string(),
                    });
                }
            }
        }
        for a in self.ids() {
            for b in self.ids() {
                let ab = self.basis_element(a);
                let ab = self.mul_unchecked(&ab, &self.basis_element(b));
                for c in self.ids() {
                    let left = self.mul_unchecked(&ab, &self.basis_element(c));
                    let bc = self.mul_unchecked(&self.basis_element(b), &self.basis_element(c));
                    let right = self.mul_unchecked(&self.basis_element(a), &bc);
                    if left != right {
                        out.push(RingViolation::Associativity {
                            a: self.label(a).to_string(),
                            b: self.label(b).to_string(),
                            c: self.label(c).to_string(),
                        });
                    }
                }
            }
        }
        match self.point_class {
            None => out.push(RingViolation::MissingPointClass),
            Some(p) if self.degree(p) != self.top_degree => out.push(RingViolation::PointClassDegree {
                label: self.label(p).to_string(),
                degree: self.degree(p),
            }),
            Some(_) => {}
        }
        out
    }

    /// Same ring over another coefficient field.
    pub fn convert<T: Scalar>(&self) -> Option<RingPresentation<T>> {
        let mut table = Vec::with_capacity(self.table.len());
        for row in &self.table {
            let mut new_row = Vec::with_capacity(row.len());
            for e in row {
                new_row.push(e.convert()?);
            }
            table.push(new_row);
        }
        Some(RingPresentation {
            labels: self.labels.clone(),
            degrees: self.degrees.clone(),
            by_label: self.by_label.clone(),
            table,
            top_degree: self.top_degree,
            point_class: self.point_class,
            unit: self.unit,
        })
    }

    /// The tensor product ring `self ⊗ other` with Koszul signs, labels
    /// produced by `name(left_label, right_label)` and point class the
    /// product of point classes.
    pub fn tensor<F>(&self, other: &Self, name: F) -> Result<Self, GrcaError>
    where
        F: Fn(&str, &str) -> String,
    {
        let pairs: Vec<(BasisId, BasisId)> = self
            .ids()
            .flat_map(|a| other.ids().map(move |b| (a, b)))
            .collect();
        let index: HashMap<(BasisId, BasisId), usize> =
            pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let basis: Vec<(String, u32)> = pairs
            .iter()
            .map(|&(a, b)| (name(self.label(a), other.label(b)), self.degree(a) + other.degree(b)))
            .collect();
        let mut table = Vec::with_capacity(pairs.len());
        for &(a1, b1) in &pairs {
            let mut row = Vec::with_capacity(pairs.len());
            for &(a2, b2) in &pairs {
                let sign = if (other.degree(b1) * self.degree(a2)).is_multiple_of(2) { 1 } else { -1 };
                let mut terms = Vec::new();
                for (x, cx) in self.product(a1, a2).terms() {
                    for (y, cy) in other.product(b1, b2).terms() {
                        let c = (cx.clone() * cy.clone()).signed(sign);
                        terms.push((BasisId(index[&(*x, *y)]), c));
                    }
                }
                row.push(Element::from_terms(terms));
            }
            table.push(row);
        }
        let point = match (self.point_class, other.point_class) {
            (Some(p), Some(q)) => Some(basis[index[&(p, q)]].0.clone()),
            _ => None,
        };
        Self::from_table(
            basis,
            table,
            self.top_degree + other.top_degree,
            point.as_deref(),
        )
    }
}

impl<S: Scalar> GradedAlgebra<S> for RingPresentation<S> {
    type Key = BasisId;

    fn unit_key(&self) -> BasisId {
        self.unit
    }

    fn key_degree(&self, key: &BasisId) -> u32 {
        self.degrees[key.0]
    }

    fn contains_key(&self, key: &BasisId) -> bool {
        key.0 < self.labels.len()
    }

    fn mul_keys(&self, a: &BasisId, b: &BasisId) -> Element<BasisId, S> {
        self.table[a.0][b.0].clone()
    }
}

impl<S: Scalar> RingPresentation<S> {
    /// `∫ a·b`, used for the Poincaré pairing.
    pub fn pairing(&self, a: BasisId, b: BasisId) -> Result<S, GrcaError> {
        let point = self.point_class.ok_or(GrcaError::NoPointClass)?;
        Ok(self.product(a, b).coeff(&point))
    }
}
