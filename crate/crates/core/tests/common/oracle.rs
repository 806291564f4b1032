//! Reference implementations that share no code with the library: dense
//! exponent-vector CDGAs with a separate sign rule, dense Gaussian
//! elimination, and a Chern-root expansion of the Todd class.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// Monomial as an exponent vector over generators in list order.
pub type Exps = Vec<u32>;

pub struct OracleCdga {
    pub names: Vec<&'static str>,
    pub degrees: Vec<u32>,
    /// `d(x_i)` as (coefficient, exponent vector) pairs.
    pub d: Vec<Vec<(Q, Exps)>>,
}

impl OracleCdga {
    fn parity(&self, i: usize) -> u32 {
        self.degrees[i] % 2
    }

    /// `a · b` with its sign, or `None` when an odd generator repeats.
    /// Each factor of `b` at index `j` moves left past every factor of `a`
    /// with larger index.
    pub fn mul(&self, a: &Exps, b: &Exps) -> Option<(i32, Exps)> {
        let n = self.degrees.len();
        let mut swaps = 0u64;
        for j in 0..n {
            for i in j + 1..n {
                swaps += u64::from(a[i] * b[j] * self.parity(i) * self.parity(j));
            }
        }
        let out: Exps = a.iter().zip(b).map(|(x, y)| x + y).collect();
        if (0..n).any(|i| self.parity(i) == 1 && out[i] > 1) {
            return None;
        }
        Some((if swaps.is_multiple_of(2) { 1 } else { -1 }, out))
    }

    pub fn degree(&self, e: &Exps) -> u32 {
        e.iter().zip(&self.degrees).map(|(x, d)| x * d).sum()
    }

    /// All exponent vectors of a degree, by brute force.
    pub fn basis(&self, degree: u32) -> Vec<Exps> {
        let n = self.degrees.len();
        let mut out = Vec::new();
        let mut current = vec![0u32; n];
        self.basis_rec(0, degree, &mut current, &mut out);
        out
    }

    fn basis_rec(&self, i: usize, left: u32, cur: &mut Exps, out: &mut Vec<Exps>) {
        if i == self.degrees.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let max = if self.parity(i) == 1 { 1 } else { left / self.degrees[i].max(1) };
        for e in 0..=max.min(left / self.degrees[i].max(1)) {
            cur[i] = e;
            self.basis_rec(i + 1, left - e * self.degrees[i], cur, out);
        }
        cur[i] = 0;
    }

    /// Leibniz rule, peeling generators from the left one factor at a time.
    pub fn apply(&self, m: &Exps) -> Vec<(Q, Exps)> {
        let n = self.degrees.len();
        let Some(first) = (0..n).find(|&i| m[i] > 0) else {
            return Vec::new();
        };
        let mut g = vec![0u32; n];
        g[first] = 1;
        let mut rest = m.clone();
        rest[first] -= 1;
        // m = s · g · rest with s from reordering (g is leftmost, so s = +1)
        let mut out = Vec::new();
        for (c, dg) in &self.d[first] {
            if let Some((s, e)) = self.mul(dg, &rest) {
                out.push((c * q(i64::from(s)), e));
            }
        }
        let sign = if self.degrees[first].is_multiple_of(2) { 1 } else { -1 };
        for (c, dr) in self.apply(&rest) {
            if let Some((s, e)) = self.mul(&g, &dr) {
                out.push((c * q(i64::from(s * sign)), e));
            }
        }
        out
    }

    /// Dense matrix of `d` from degree `deg` to `deg + 1`, rows = target.
    pub fn matrix(&self, deg: u32) -> Vec<Vec<Q>> {
        let src = self.basis(deg);
        let tgt = self.basis(deg + 1);
        let mut m = vec![vec![Q::zero(); src.len()]; tgt.len()];
        for (j, s) in src.iter().enumerate() {
            for (c, e) in self.apply(s) {
                let i = tgt.iter().position(|t| *t == e).expect("target monomial");
                m[i][j] += c;
            }
        }
        m
    }

    pub fn betti(&self, max_degree: u32) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=max_degree).map(|d| dense_rank(self.matrix(d))).collect();
        (0..=max_degree as usize)
            .map(|d| {
                let dim = self.basis(d as u32).len();
                dim - ranks[d] - if d == 0 { 0 } else { ranks[d - 1] }
            })
            .collect()
    }
}

/// Rank by plain Gaussian elimination with rational division.
pub fn dense_rank(mut m: Vec<Vec<Q>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                for k in 0..cols {
                    let delta = &f * &m[rank][k];
                    m[r][k] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// The torus model written out by hand. Generators in the order
/// a′, b′, y1, z, y2, y2′, y3 with
/// d y1 = 2k z − 2 a′b′, d y2 = 2 z a′, d y2′ = 2 z b′, d y3 = z².
pub fn torus_oracle(k: i64) -> OracleCdga {
    let e = |v: [u32; 7]| v.to_vec();
    OracleCdga {
        names: vec!["a'", "b'", "y1", "z", "y2", "y2'", "y3"],
        degrees: vec![1, 1, 1, 2, 2, 2, 3],
        d: vec![
            vec![],
            vec![],
            vec![(q(2 * k), e([0, 0, 0, 1, 0, 0, 0])), (q(-2), e([1, 1, 0, 0, 0, 0, 0]))],
            vec![],
            vec![(q(2), e([1, 0, 0, 1, 0, 0, 0]))],
            vec![(q(2), e([0, 1, 0, 1, 0, 0, 0]))],
            vec![(q(1), e([0, 0, 0, 2, 0, 0, 0]))],
        ],
    }
}

/// Power series coefficients of `x / (1 − e^{−x})` up to `x^n`, by long
/// division of `1` by `(1 − e^{−x})/x`.
pub fn todd_series(n: usize) -> Vec<Q> {
    let mut fact = Q::one();
    let mut denom = Vec::with_capacity(n + 1);
    for j in 0..=n {
        fact *= q(j as i64 + 1);
        let sign = if j % 2 == 0 { 1 } else { -1 };
        denom.push(q(sign) / fact.clone());
    }
    let mut out = vec![Q::zero(); n + 1];
    for k in 0..=n {
        let mut acc = if k == 0 { Q::one() } else { Q::zero() };
        for j in 0..k {
            acc -= &out[j] * &denom[k - j];
        }
        out[k] = acc / &denom[0];
    }
    out
}

/// `Π_i Q(x_i)` evaluated at numeric roots, keeping only total degree ≤ n
/// in the roots; `scale` tracks the grading by evaluating at `t·x` and
/// reading off powers of `t`. Returns the homogeneous parts of degree 0..=n.
pub fn todd_parts_at_roots(roots: &[Q], n: usize) -> Vec<Q> {
    let series = todd_series(n);
    // polynomial in t, truncated at t^n
    let mut product = vec![Q::zero(); n + 1];
    product[0] = Q::one();
    for x in roots {
        let factor: Vec<Q> = (0..=n)
            .map(|k| {
                let mut p = Q::one();
                for _ in 0..k {
                    p *= x;
                }
                &series[k] * p
            })
            .collect();
        let mut next = vec![Q::zero(); n + 1];
        for i in 0..=n {
            for j in 0..=n - i {
                next[i + j] += &product[i] * &factor[j];
            }
        }
        product = next;
    }
    product
}

/// Elementary symmetric polynomials `e_1..e_n` of the roots.
pub fn elementary(roots: &[Q], n: usize) -> Vec<Q> {
    let mut e = vec![Q::zero(); n + 1];
    e[0] = Q::one();
    for x in roots {
        for k in (1..=n).rev() {
            let add = &e[k - 1] * x;
            e[k] += add;
        }
    }
    e[1..].to_vec()
}

/// Number of monomials of degree `d` in `vars` variables, by enumeration.
pub fn monomial_count(vars: usize, d: u32) -> u64 {
    fn rec(vars: usize, d: u32) -> u64 {
        if vars == 1 {
            return 1;
        }
        (0..=d).map(|e| rec(vars - 1, d - e)).sum()
    }
    rec(vars, d)
}
