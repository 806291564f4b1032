#![allow(dead_code)]

pub mod oracle;

use hypermod::grca::{BasisId, Element};
use hypermod::variety::{builtin, VarietyData};
use hypermod::Rational;

pub const SIMPLE_BUILTINS: &[&str] = &[
    "torus",
    "p1",
    "p2",
    "p3",
    "curve0",
    "curve2",
    "abelian1",
    "abelian2",
    "product:p1,p1",
    "product:curve2,p1",
];

pub fn variety(name: &str) -> VarietyData<Rational> {
    builtin(name).unwrap()
}

/// `v` with `α = k · label`.
pub fn with_multiple(v: &VarietyData<Rational>, label: &str, k: i64) -> VarietyData<Rational> {
    let alpha: Element<BasisId, Rational> = v.ring.element(&[(label, oracle::q(k))]).unwrap();
    v.with_alpha(alpha)
}
