use super::VarietyError;
use crate::grca::{BasisId, Element, RingPresentation};
use crate::scalar::{parse_rational, Scalar};

/// Parses a linear combination of basis labels such as `3u`, `2 h1 − h2`
/// or `1/2*a1b1`. A bare number is a multiple of the unit.
pub fn parse_element<S: Scalar>(
    ring: &RingPresentation<S>,
    text: &str,
) -> Result<Element<BasisId, S>, VarietyError> {
    let fail = |reason: String| VarietyError::Expression {
        expr: text.to_string(),
        reason,
    };
    let normalized = text.replace('−', "-");
    let trimmed = normalized.trim();
    if trimmed.is_empty() {
        return Err(fail("empty expression".into()));
    }
    if trimmed == "0" {
        return Ok(Element::zero());
    }

    let mut terms = Vec::new();
    let mut sign = 1i8;
    let mut current = String::new();
    let mut flush = |sign: i8, chunk: &str| -> Result<(), VarietyError> {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            return Err(fail("dangling sign".into()));
        }
        let (coeff, label) = split_term(chunk).map_err(&fail)?;
        let id = ring
            .id_of(label)
            .ok_or_else(|| fail(format!("unknown basis label {label:?}")))?;
        let coeff = S::from_rational(&coeff).ok_or_else(|| fail("coefficient out of range".into()))?;
        terms.push((id, coeff.signed(sign)));
        Ok(())
    };
    for ch in trimmed.chars() {
        if ch == '+' || ch == '-' {
            if !current.trim().is_empty() {
                flush(sign, &current)?;
                current.clear();
                sign = 1;
            }
            if ch == '-' {
                sign = -sign;
            }
        } else {
            current.push(ch);
        }
    }
    flush(sign, &current)?;
    Ok(Element::from_terms(terms))
}

fn split_term(chunk: &str) -> Result<(num_rational::BigRational, &str), String> {
    let end = chunk
        .char_indices()
        .find(|&(_, c)| !(c.is_ascii_digit() || c == '/'))
        .map_or(chunk.len(), |(i, _)| i);
    let (number, rest) = chunk.split_at(end);
    let rest = rest.trim_start();
    let rest = rest.strip_prefix('*').map_or(rest, str::trim_start);
    match (number.is_empty(), rest.is_empty()) {
        (true, true) => Err("empty term".into()),
        (true, false) => Ok((num_traits::One::one(), rest)),
        (false, true) => Ok((parse_rational(number)?, "1")),
        (false, false) => Ok((parse_rational(number)?, rest)),
    }
}
