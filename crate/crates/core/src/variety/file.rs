//! JSON description of a variety.
//!
//! ```json
//! {
//!   "name": "torus", "dim": 1,
//!   "basis": [{"label": "1", "degree": 0}, {"label": "a", "degree": 1}, …],
//!   "products": [{"left": "a", "right": "b", "result": [{"basis": "u", "coeff": "1"}]}, …],
//!   "point_class": "u",
//!   "h1_basis": ["a", "b"],
//!   "tangent_chern": [[]],
//!   "alpha": [{"basis": "u", "coeff": "3"}],
//!   "polarization": [{"basis": "u", "coeff": "1"}],
//!   "ample_asserted": false
//! }
//! ```
//!
//! Every ordered pair of basis labels needs a `products` entry, zero
//! products included. Coefficients are strings `"p"` or `"p/q"` in lowest
//! terms.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use super::{VarietyData, Violation};
use crate::grca::{BasisId, Element, RingPresentation};
use crate::scalar::{format_rational, parse_rational, Scalar};

const COEFF_ERROR: &str = "invalid coefficient";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coeff(pub BigRational);

impl Serialize for Coeff {
    fn serialize<Se: Serializer>(&self, s: Se) -> Result<Se::Ok, Se::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text)
            .map(Coeff)
            .map_err(|e| serde::de::Error::custom(format!("{COEFF_ERROR}: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub label: String,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementTerm {
    pub basis: String,
    pub coeff: Coeff,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    pub result: Vec<ElementTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietyFile {
    pub name: String,
    pub dim: u32,
    pub basis: Vec<BasisEntry>,
    pub products: Vec<ProductEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point_class: Option<String>,
    pub h1_basis: Vec<String>,
    pub tangent_chern: Vec<Vec<ElementTerm>>,
    #[serde(default)]
    pub alpha: Vec<ElementTerm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polarization: Option<Vec<ElementTerm>>,
    #[serde(default)]
    pub ample_asserted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("{}", ValidationList(.0))]
    Validation(Vec<Violation>),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

struct ValidationList<'a>(&'a [Violation]);

impl fmt::Display for ValidationList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violation(s)", self.0.len())?;
        for v in self.0 {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        use serde_json::error::Category;
        let message = e.to_string();
        let is_syntax = matches!(e.classify(), Category::Syntax | Category::Eof | Category::Io)
            || message.contains(COEFF_ERROR);
        if is_syntax {
            ParseError::Syntax {
                line: e.line(),
                column: e.column(),
                message,
            }
        } else {
            ParseError::Schema(message)
        }
    }
}

impl VarietyFile {
    /// Builds and validates the variety.
    pub fn to_variety<S: Scalar>(&self) -> Result<VarietyData<S>, ParseError> {
        let coeff = |c: &Coeff| {
            S::from_rational(&c.0)
                .ok_or_else(|| ParseError::Schema(format!("coefficient {} out of range", c.0)))
        };
        let basis: Vec<(String, u32)> = self
            .basis
            .iter()
            .map(|b| (b.label.clone(), b.degree))
            .collect();
        let mut products = Vec::with_capacity(self.products.len());
        for p in &self.products {
            let result = p
                .result
                .iter()
                .map(|t| Ok((t.basis.clone(), coeff(&t.coeff)?)))
                .collect::<Result<Vec<_>, ParseError>>()?;
            products.push((p.left.clone(), p.right.clone(), result));
        }
        let ring = RingPresentation::from_products(
            basis,
            products,
            2 * self.dim,
            self.point_class.as_deref(),
        )
        .map_err(|e| ParseError::Schema(e.to_string()))?;

        let lookup = |label: &str| {
            ring.id_of(label)
                .ok_or_else(|| ParseError::Schema(format!("unknown basis label {label:?}")))
        };
        let element = |terms: &[ElementTerm]| -> Result<Element<BasisId, S>, ParseError> {
            let mut out = Vec::with_capacity(terms.len());
            for t in terms {
                out.push((lookup(&t.basis)?, coeff(&t.coeff)?));
            }
            Ok(Element::from_terms(out))
        };
        let h1_basis = self
            .h1_basis
            .iter()
            .map(|l| lookup(l))
            .collect::<Result<Vec<_>, _>>()?;
        let tangent_chern = self
            .tangent_chern
            .iter()
            .map(|c| element(c))
            .collect::<Result<Vec<_>, _>>()?;
        let alpha = element(&self.alpha)?;
        let polarization = self.polarization.as_deref().map(element).transpose()?;
        let variety = VarietyData {
            name: self.name.clone(),
            dim: self.dim,
            ring: Arc::new(ring),
            h1_basis,
            tangent_chern,
            alpha,
            polarization,
            ampleness_asserted: self.ample_asserted,
        };
        let violations = variety.validate();
        if violations.is_empty() {
            Ok(variety)
        } else {
            Err(ParseError::Validation(violations))
        }
    }
}

pub fn parse_variety<S: Scalar>(text: &str) -> Result<VarietyData<S>, ParseError> {
    let file: VarietyFile = serde_json::from_str(text)?;
    file.to_variety()
}

pub fn parse_variety_file<S: Scalar>(path: &Path) -> Result<VarietyData<S>, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|e| ParseError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_variety(&text)
}

fn render_element<S: Scalar>(ring: &RingPresentation<S>, e: &Element<BasisId, S>) -> Vec<ElementTerm> {
    e.terms()
        .map(|(b, c)| ElementTerm {
            basis: ring.label(*b).to_string(),
            coeff: Coeff(c.to_rational()),
        })
        .collect()
}

/// The file form of a variety; `parse_variety` inverts it.
pub fn render_variety<S: Scalar>(v: &VarietyData<S>) -> VarietyFile {
    let ring = v.ring.as_ref();
    let products = ring
        .ids()
        .flat_map(|a| ring.ids().map(move |b| (a, b)))
        .map(|(a, b)| ProductEntry {
            left: ring.label(a).to_string(),
            right: ring.label(b).to_string(),
            result: render_element(ring, ring.product(a, b)),
        })
        .collect();
    VarietyFile {
        name: v.name.clone(),
        dim: v.dim,
        basis: ring
            .ids()
            .map(|b| BasisEntry {
                label: ring.label(b).to_string(),
                degree: ring.degree(b),
            })
            .collect(),
        products,
        point_class: ring.point_class().map(|p| ring.label(p).to_string()),
        h1_basis: v.h1_basis.iter().map(|&b| ring.label(b).to_string()).collect(),
        tangent_chern: v.tangent_chern.iter().map(|c| render_element(ring, c)).collect(),
        alpha: render_element(ring, &v.alpha),
        polarization: v.polarization.as_ref().map(|p| render_element(ring, p)),
        ample_asserted: v.ampleness_asserted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variety::{builtin, torus};

    #[test]
    fn builtins_round_trip() {
        for name in ["torus", "p2", "curve2", "abelian2", "product:p1,torus"] {
            let v = builtin::<BigRational>(name).unwrap();
            let text = serde_json::to_string_pretty(&render_variety(&v)).unwrap();
            let back: VarietyData<BigRational> = parse_variety(&text).unwrap();
            assert_eq!(back, v, "{name}");
        }
    }

    #[test]
    fn bad_coefficient_is_a_syntax_error() {
        let text = serde_json::to_string_pretty(&render_variety(&torus::<BigRational>()))
            .unwrap()
            .replacen("\"coeff\": \"1\"", "\"coeff\": \"1/0\"", 1);
        match parse_variety::<BigRational>(&text) {
            Err(ParseError::Syntax { line, .. }) => assert!(line > 1),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn truncated_json_is_a_syntax_error() {
        assert!(matches!(
            parse_variety::<BigRational>("{\"name\": \"x\""),
            Err(ParseError::Syntax { .. })
        ));
    }

    #[test]
    fn missing_product_is_a_schema_error() {
        let mut file = render_variety(&torus::<BigRational>());
        file.products.pop();
        let text = serde_json::to_string(&file).unwrap();
        assert!(matches!(parse_variety::<BigRational>(&text), Err(ParseError::Schema(_))));
    }
}
