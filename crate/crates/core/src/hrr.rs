//! Hilbert polynomials by Hirzebruch–Riemann–Roch,
//! `χ(X, L(m)) = ∫_X ch(L(m)) td(X)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::grca::{BasisId, Element, GradedAlgebra, GrcaError, RingPresentation};
use crate::scalar::{inverse_factorial, Scalar};
use crate::variety::VarietyData;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HrrError {
    #[error("no polarization given and the variety declares none")]
    MissingPolarization,
    #[error("{0} is not homogeneous of degree 2")]
    NotDivisor(&'static str),
    #[error(transparent)]
    Ring(#[from] GrcaError),
    #[error("rational value does not fit the scalar type")]
    Overflow,
}

/// Polynomial in one variable `m`, coefficients in ascending degree, no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariatePolynomial<S> {
    coefficients: Vec<S>,
}

impl<S: Scalar> UnivariatePolynomial<S> {
    pub fn new(mut coefficients: Vec<S>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        Self { coefficients }
    }

    pub fn coefficients(&self) -> &[S] {
        &self.coefficients
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn eval(&self, m: &S) -> S {
        self.coefficients
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * m.clone() + c.clone())
    }

    /// Whether the polynomial takes integer values at every integer. It
    /// suffices to check `deg + 1` consecutive integers.
    pub fn is_integer_valued(&self) -> bool {
        let points = self.coefficients.len().max(1);
        (0..points as i64).all(|m| self.eval(&S::from_int(m)).is_integral())
    }

    /// `P(m + shift)` as a polynomial in `m`.
    pub fn shifted(&self, shift: &S) -> Self {
        // Horner with polynomial arithmetic
        let mut acc: Vec<S> = Vec::new();
        for c in self.coefficients.iter().rev() {
            let mut next = vec![S::zero(); acc.len() + 1];
            for (i, a) in acc.iter().enumerate() {
                next[i + 1] = next[i + 1].clone() + a.clone();
                next[i] = next[i].clone() + a.clone() * shift.clone();
            }
            next[0] = next[0].clone() + c.clone();
            acc = next;
        }
        Self::new(acc)
    }
}

impl<S: Scalar> fmt::Display for UnivariatePolynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coefficients
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let var = match i {
                    0 => "1".to_string(),
                    1 => "m".to_string(),
                    i => format!("m^{i}"),
                };
                (c.to_rational(), var)
            });
        f.write_str(&crate::grca::format_combination(terms))
    }
}

/// Polynomial in `c_1, …, c_n` truncated at weighted degree `n`, where
/// `c_i` has weight `i`. Keys are exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernPolynomial {
    n: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl ChernPolynomial {
    fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    fn constant(n: usize, c: BigRational) -> Self {
        let mut p = Self::zero(n);
        p.add_term(vec![0; n], c);
        p
    }

    fn variable(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i - 1] = 1;
        let mut p = Self::zero(n);
        p.add_term(exps, BigRational::one());
        p
    }

    fn weight(exps: &[u32]) -> usize {
        exps.iter().enumerate().map(|(i, e)| (i + 1) * *e as usize).sum()
    }

    fn add_term(&mut self, exps: Vec<u32>, c: BigRational) {
        if Self::weight(&exps) > self.n || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.n);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let exps: Vec<u32> = ka.iter().zip(kb).map(|(a, b)| a + b).collect();
                out.add_term(exps, va * vb);
            }
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigRational)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// The part of weighted degree `w`.
    pub fn weighted_part(&self, w: usize) -> Vec<(Vec<u32>, BigRational)> {
        self.terms
            .iter()
            .filter(|(k, _)| Self::weight(k) == w)
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    }
}

/// Coefficients `l_k` of `log(x / (1 − e^{−x})) = Σ_{k≥1} l_k x^k`.
fn todd_log_coefficients(n: usize) -> Vec<BigRational> {
    // (1 − e^{−x})/x = Σ_j (−1)^j x^j / (j+1)!
    let a: Vec<BigRational> = (0..=n)
        .map(|j| {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            inverse_factorial::<BigRational>(j as u32 + 1) * BigRational::from_int(sign)
        })
        .collect();
    // log A with a_0 = 1: k f_k = k a_k − Σ_{j=1}^{k−1} j f_j a_{k−j}
    let mut f = vec![BigRational::zero(); n + 1];
    for k in 1..=n {
        let mut acc = BigRational::from_int(k as i64) * a[k].clone();
        for j in 1..k {
            acc -= BigRational::from_int(j as i64) * f[j].clone() * a[k - j].clone();
        }
        f[k] = acc / BigRational::from_int(k as i64);
    }
    // x/(1−e^{−x}) is the reciprocal, so its logarithm is −log A
    f.into_iter().map(|v| -v).collect()
}

/// The universal Todd polynomial in `c_1..c_n`, built from Chern roots:
/// `td = exp(Σ_k l_k p_k)` with power sums `p_k` rewritten in elementary
/// symmetric functions by Newton's identities.
fn build_todd_polynomial(n: usize) -> ChernPolynomial {
    let l = todd_log_coefficients(n);
    let e = |i: usize| ChernPolynomial::variable(n, i);
    let mut p: Vec<ChernPolynomial> = vec![ChernPolynomial::zero(n)];
    for k in 1..=n {
        // p_k = Σ_{i=1}^{k−1} (−1)^{i−1} e_i p_{k−i} + (−1)^{k−1} k e_k
        let mut acc = ChernPolynomial::zero(n);
        for i in 1..k {
            let sign = if (i - 1) % 2 == 0 { 1 } else { -1 };
            acc = acc.add(&e(i).mul(&p[k - i]).scale(&BigRational::from_int(sign)));
        }
        let sign = if (k - 1) % 2 == 0 { 1 } else { -1 };
        acc = acc.add(&e(k).scale(&BigRational::from_int(sign * k as i64)));
        p.push(acc);
    }
    let mut exponent = ChernPolynomial::zero(n);
    for k in 1..=n {
        exponent = exponent.add(&p[k].scale(&l[k]));
    }
    let mut result = ChernPolynomial::constant(n, BigRational::one());
    let mut power = ChernPolynomial::constant(n, BigRational::one());
    for m in 1..=n {
        power = power.mul(&exponent);
        result = result.add(&power.scale(&inverse_factorial(m as u32)));
    }
    result
}

/// Memoized universal Todd polynomial for rank `n`.
pub fn todd_polynomial(n: usize) -> Arc<ChernPolynomial> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<ChernPolynomial>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("todd cache poisoned").get(&n) {
        return p.clone();
    }
    let built = Arc::new(build_todd_polynomial(n));
    cache
        .lock()
        .expect("todd cache poisoned")
        .entry(n)
        .or_insert(built)
        .clone()
}

fn power_in<S: Scalar>(
    ring: &RingPresentation<S>,
    a: &Element<BasisId, S>,
    m: u32,
) -> Result<Element<BasisId, S>, GrcaError> {
    ring.power(a, m)
}

/// `ch = Σ_{m=0}^{n} c_1^m / m!` for a line bundle with first Chern class `c1`.
pub fn chern_character<S: Scalar>(
    ring: &RingPresentation<S>,
    c1: &Element<BasisId, S>,
) -> Result<Element<BasisId, S>, HrrError> {
    if !ring.is_homogeneous_of(c1, 2) {
        return Err(HrrError::NotDivisor("c1"));
    }
    let n = ring.top_degree() / 2;
    let mut out = Element::zero();
    let mut power = ring.unit();
    for m in 0..=n {
        if m > 0 {
            power = ring.mul(&power, c1)?;
        }
        out = out + power.scale(&inverse_factorial(m));
    }
    Ok(out)
}

/// Todd class of a bundle with Chern classes `c_1..c_n`.
pub fn todd_class<S: Scalar>(
    ring: &RingPresentation<S>,
    chern: &[Element<BasisId, S>],
) -> Result<Element<BasisId, S>, HrrError> {
    let n = chern.len();
    if n == 0 {
        return Ok(ring.unit());
    }
    let poly = todd_polynomial(n);
    let mut out = Element::zero();
    for (exps, coeff) in poly.terms() {
        let mut value = ring.unit();
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                value = ring.mul(&value, &power_in(ring, &chern[i], e)?)?;
            }
        }
        let c = S::from_rational(coeff).ok_or(HrrError::Overflow)?;
        out = out + value.scale(&c);
    }
    Ok(out)
}

/// `P(m) = ∫ exp(c1L + m·h) td(X)`; `h` defaults to the declared polarization.
pub fn hilbert_polynomial<S: Scalar>(
    v: &VarietyData<S>,
    c1l: &Element<BasisId, S>,
    h: Option<&Element<BasisId, S>>,
) -> Result<UnivariatePolynomial<S>, HrrError> {
    let h = h.or(v.polarization.as_ref()).ok_or(HrrError::MissingPolarization)?;
    let ring = v.ring.as_ref();
    if !ring.is_homogeneous_of(h, 2) {
        return Err(HrrError::NotDivisor("polarization"));
    }
    let ch_td = ring.mul(&chern_character(ring, c1l)?, &todd_class(ring, &v.tangent_chern)?)?;
    let mut coefficients = Vec::with_capacity(v.dim as usize + 1);
    let mut h_power = ring.unit();
    for j in 0..=v.dim {
        if j > 0 {
            h_power = ring.mul(&h_power, h)?;
        }
        let integrand = ring.mul(&h_power, &ch_td)?;
        coefficients.push(ring.integrate(&integrand)? * inverse_factorial::<S>(j));
    }
    Ok(UnivariatePolynomial::new(coefficients))
}

/// Indices of the candidate classes whose Hilbert polynomial equals `target`.
pub fn filter_by_hilbert<S: Scalar>(
    v: &VarietyData<S>,
    candidates: &[Element<BasisId, S>],
    target: &UnivariatePolynomial<S>,
) -> Result<Vec<usize>, HrrError> {
    let mut out = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        if &hilbert_polynomial(v, c, None)? == target {
            out.push(i);
        }
    }
    Ok(out)
}
