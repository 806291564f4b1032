use std::sync::Arc;

use super::{VarietyData, VarietyError};
use crate::grca::{BasisId, Element, RingPresentation};
use crate::scalar::Scalar;

/// Names accepted by [`builtin`]: `torus`, `pN`, `curveG`, `abelianG` and
/// `product:A,B[,…]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    Torus,
    ProjectiveSpace(u32),
    Curve(u32),
    Abelian(u32),
    Product(Vec<Builtin>),
}

impl Builtin {
    pub fn parse(name: &str) -> Result<Self, VarietyError> {
        let name = name.trim();
        let lower = name.to_ascii_lowercase();
        let number = |prefix: &str| -> Option<u32> {
            lower.strip_prefix(prefix).and_then(|rest| rest.parse().ok())
        };
        if let Some(rest) = lower.strip_prefix("product:") {
            let factors = rest
                .split(',')
                .map(Builtin::parse)
                .collect::<Result<Vec<_>, _>>()?;
            if factors.len() < 2 {
                return Err(VarietyError::InvalidParameters(
                    "product needs at least two factors".into(),
                ));
            }
            return Ok(Builtin::Product(factors));
        }
        if lower == "torus" {
            Ok(Builtin::Torus)
        } else if let Some(n) = number("p") {
            Ok(Builtin::ProjectiveSpace(n))
        } else if let Some(g) = number("curve") {
            Ok(Builtin::Curve(g))
        } else if let Some(g) = number("abelian") {
            Ok(Builtin::Abelian(g))
        } else {
            Err(VarietyError::UnknownBuiltin(name.to_string()))
        }
    }

    pub fn build<S: Scalar>(&self) -> Result<VarietyData<S>, VarietyError> {
        match self {
            Builtin::Torus => Ok(torus()),
            Builtin::ProjectiveSpace(n) => projective_space(*n),
            Builtin::Curve(g) => curve(*g),
            Builtin::Abelian(g) => abelian(*g),
            Builtin::Product(factors) => {
                let mut acc = factors[0].build()?;
                for f in &factors[1..] {
                    acc = product(&acc, &f.build()?)?;
                }
                Ok(acc)
            }
        }
    }
}

pub fn builtin<S: Scalar>(name: &str) -> Result<VarietyData<S>, VarietyError> {
    Builtin::parse(name)?.build()
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn zero_table<S: Scalar>(n: usize) -> Vec<Vec<Element<BasisId, S>>> {
    vec![vec![Element::zero(); n]; n]
}

/// `P^n` with `H* = Q[h]/h^{n+1}` and `c(TX) = (1+h)^{n+1}`.
pub fn projective_space<S: Scalar>(n: u32) -> Result<VarietyData<S>, VarietyError> {
    if n < 1 {
        return Err(VarietyError::InvalidParameters("projective space needs n >= 1".into()));
    }
    let label = |k: u32| match k {
        0 => "1".to_string(),
        1 => "h".to_string(),
        k => format!("h^{k}"),
    };
    let size = n as usize + 1;
    let basis: Vec<(String, u32)> = (0..=n).map(|k| (label(k), 2 * k)).collect();
    let mut table = zero_table(size);
    for i in 0..size {
        for j in 0..size {
            if i + j < size {
                table[i][j] = Element::from_term(BasisId(i + j), S::one());
            }
        }
    }
    let ring = RingPresentation::from_table(basis, table, 2 * n, Some(&label(n)))?;
    let tangent_chern = (1..=n)
        .map(|i| {
            Element::from_term(
                BasisId(i as usize),
                S::from_int(binomial(u64::from(n) + 1, u64::from(i)) as i64),
            )
        })
        .collect();
    let h = Element::from_term(BasisId(1), S::one());
    Ok(VarietyData {
        name: format!("P{n}"),
        dim: n,
        ring: Arc::new(ring),
        h1_basis: Vec::new(),
        tangent_chern,
        alpha: Element::zero(),
        polarization: Some(h),
        ampleness_asserted: false,
    })
}

/// Genus-`g` curve: basis `1, a_i, b_i, u` with `a_i b_i = u = −b_i a_i`
/// and `c_1(TX) = (2 − 2g) u`. Genus one uses the labels `a, b, u`.
pub fn curve<S: Scalar>(g: u32) -> Result<VarietyData<S>, VarietyError> {
    let g = g as usize;
    let (a_names, b_names): (Vec<String>, Vec<String>) = if g == 1 {
        (vec!["a".into()], vec!["b".into()])
    } else {
        (
            (1..=g).map(|i| format!("a{i}")).collect(),
            (1..=g).map(|i| format!("b{i}")).collect(),
        )
    };
    let mut basis = vec![("1".to_string(), 0)];
    basis.extend(a_names.iter().map(|l| (l.clone(), 1)));
    basis.extend(b_names.iter().map(|l| (l.clone(), 1)));
    basis.push(("u".to_string(), 2));
    let size = basis.len();
    let point = BasisId(size - 1);
    let mut table = zero_table(size);
    for i in 0..size {
        table[0][i] = Element::from_term(BasisId(i), S::one());
        table[i][0] = Element::from_term(BasisId(i), S::one());
    }
    for i in 0..g {
        let (a, b) = (1 + i, 1 + g + i);
        table[a][b] = Element::from_term(point, S::one());
        table[b][a] = Element::from_term(point, -S::one());
    }
    let ring = RingPresentation::from_table(basis, table, 2, Some("u"))?;
    let h1_basis = (1..=2 * g).map(BasisId).collect();
    let u = Element::from_term(point, S::one());
    Ok(VarietyData {
        name: format!("curve{g}"),
        dim: 1,
        ring: Arc::new(ring),
        h1_basis,
        tangent_chern: vec![u.scale(&S::from_int(2 - 2 * g as i64))],
        alpha: Element::zero(),
        polarization: Some(u),
        ampleness_asserted: false,
    })
}

/// The genus-one curve with basis `1, a, b, u = ab`.
pub fn torus<S: Scalar>() -> VarietyData<S> {
    let mut t = curve(1).expect("genus one is a valid curve");
    t.name = "torus".to_string();
    t
}

/// Exterior algebra on `2g` degree-one classes, trivial Chern classes,
/// polarization `Σ a_i b_i`.
pub fn abelian<S: Scalar>(g: u32) -> Result<VarietyData<S>, VarietyError> {
    if g < 1 {
        return Err(VarietyError::InvalidParameters("abelian variety needs g >= 1".into()));
    }
    let g = g as usize;
    let gens: Vec<String> = if g == 1 {
        vec!["a".into(), "b".into()]
    } else {
        (1..=g)
            .map(|i| format!("a{i}"))
            .chain((1..=g).map(|i| format!("b{i}")))
            .collect()
    };
    let count = 2 * g;
    // subsets as bitmasks, ordered by size then value
    let mut subsets: Vec<u32> = (0..1u32 << count).collect();
    subsets.sort_by_key(|s| (s.count_ones(), *s));
    let index: std::collections::HashMap<u32, usize> =
        subsets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let label = |s: u32| -> String {
        if s == 0 {
            return "1".into();
        }
        (0..count)
            .filter(|i| s & (1 << i) != 0)
            .map(|i| gens[i].as_str())
            .collect()
    };
    let basis: Vec<(String, u32)> = subsets.iter().map(|&s| (label(s), s.count_ones())).collect();
    let size = subsets.len();
    let mut table = zero_table(size);
    for (i, &s) in subsets.iter().enumerate() {
        for (j, &t) in subsets.iter().enumerate() {
            if s & t != 0 {
                continue;
            }
            // each generator of t passes the larger generators of s
            let swaps: u32 = (0..count)
                .filter(|k| t & (1 << k) != 0)
                .map(|k| (s >> (k + 1)).count_ones())
                .sum();
            let sign = if swaps.is_multiple_of(2) { S::one() } else { -S::one() };
            table[i][j] = Element::from_term(BasisId(index[&(s | t)]), sign);
        }
    }
    let full = (1u32 << count) - 1;
    let point_label = label(full);
    let ring = RingPresentation::from_table(basis, table, count as u32, Some(&point_label))?;
    let h1_basis = (0..count).map(|i| BasisId(index[&(1 << i)])).collect();
    let theta = Element::from_terms(
        (0..g).map(|i| (BasisId(index[&((1 << i) | (1 << (g + i)))]), S::one())),
    );
    Ok(VarietyData {
        name: format!("abelian{g}"),
        dim: g as u32,
        ring: Arc::new(ring),
        h1_basis,
        tangent_chern: vec![Element::zero(); g],
        alpha: Element::zero(),
        polarization: Some(theta),
        ampleness_asserted: false,
    })
}

fn factor_label(label: &str, index: usize) -> Option<String> {
    if label == "1" {
        None
    } else if label.ends_with(|c: char| c.is_ascii_digit()) {
        Some(format!("{label}_{index}"))
    } else {
        Some(format!("{label}{index}"))
    }
}

fn product_label(left: &str, right: &str) -> String {
    match (factor_label(left, 1), factor_label(right, 2)) {
        (None, None) => "1".into(),
        (Some(x), None) | (None, Some(x)) => x,
        (Some(x), Some(y)) => format!("{x}*{y}"),
    }
}

/// Künneth product `X × Y`: tensor ring with Koszul signs, Chern classes by
/// the Whitney formula, point class the product of point classes.
/// Non-unit labels get the factor index appended (`h` becomes `h1`, `h2`).
pub fn product<S: Scalar>(
    left: &VarietyData<S>,
    right: &VarietyData<S>,
) -> Result<VarietyData<S>, VarietyError> {
    let ring = left.ring.tensor(&right.ring, product_label)?;
    let unit_l = left.ring.unit_id();
    let unit_r = right.ring.unit_id();
    let lookup = |a: BasisId, b: BasisId| -> BasisId {
        ring.id_of(&product_label(left.ring.label(a), right.ring.label(b)))
            .expect("product label present")
    };
    let embed_left = |e: &Element<BasisId, S>| e.map_keys(|&a| lookup(a, unit_r));
    let embed_right = |e: &Element<BasisId, S>| e.map_keys(|&b| lookup(unit_l, b));
    let cross = |x: &Element<BasisId, S>, y: &Element<BasisId, S>| {
        // both factors even, so x ⊗ y carries no sign
        Element::from_terms(x.terms().flat_map(|(a, ca)| {
            y.terms()
                .map(move |(b, cb)| (lookup(*a, *b), ca.clone() * cb.clone()))
        }))
    };

    let dim = left.dim + right.dim;
    let one_l = left.ring.basis_element(unit_l);
    let one_r = right.ring.basis_element(unit_r);
    let total_left: Vec<Element<BasisId, S>> = std::iter::once(one_l)
        .chain(left.tangent_chern.iter().cloned())
        .collect();
    let total_right: Vec<Element<BasisId, S>> = std::iter::once(one_r)
        .chain(right.tangent_chern.iter().cloned())
        .collect();
    let tangent_chern = (1..=dim as usize)
        .map(|k| {
            let mut acc = Element::zero();
            for i in 0..=k {
                if let (Some(x), Some(y)) = (total_left.get(i), total_right.get(k - i)) {
                    acc = acc + cross(x, y);
                }
            }
            acc
        })
        .collect();
    let h1_basis = left
        .h1_basis
        .iter()
        .map(|&a| lookup(a, unit_r))
        .chain(right.h1_basis.iter().map(|&b| lookup(unit_l, b)))
        .collect();
    let polarization = match (&left.polarization, &right.polarization) {
        (Some(p), Some(q)) => Some(embed_left(p) + embed_right(q)),
        _ => None,
    };
    Ok(VarietyData {
        name: format!("{}x{}", left.name, right.name),
        dim,
        alpha: embed_left(&left.alpha) + embed_right(&right.alpha),
        ring: Arc::new(ring),
        h1_basis,
        tangent_chern,
        polarization,
        ampleness_asserted: left.ampleness_asserted && right.ampleness_asserted,
    })
}
