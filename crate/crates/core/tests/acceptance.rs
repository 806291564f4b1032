//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any fails.

mod common;

use std::time::{Duration, Instant};

use common::oracle::{self, dense_rank, q, qr, torus_oracle};
use common::{variety, with_multiple};
use hypermod::cohomology::{betti_table, differential_matrix, BettiOptions, DEFAULT_MAX_MONOMIALS};
use hypermod::grca::{BasisId, Element, Factor, FactorKey, GenId, Monomial, RingViolation, TensorKey};
use hypermod::haefliger::{build_section_cdga, compute_psi_chi, CdgaPresentation};
use hypermod::hrr::{hilbert_polynomial, todd_polynomial};
use hypermod::ranges::{curve_range, d_power, main_range};
use hypermod::stable::{grw_series, stable_moduli_series};
use hypermod::variety::projective_space;
use hypermod::Rational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn torus_model(k: i64) -> CdgaPresentation<Rational> {
    let t = with_multiple(&variety("torus"), "u", k);
    build_section_cdga(&t).unwrap().with_degree_names().unwrap()
}

fn free_element(cdga: &CdgaPresentation<Rational>, terms: &[(i64, &[&str])]) -> Element<Monomial, Rational> {
    let alg = cdga.algebra();
    Element::from_terms(terms.iter().filter_map(|(c, names)| {
        let ids: Vec<GenId> = names.iter().map(|n| alg.id_of(n).unwrap()).collect();
        let (sign, m) = alg.normalize(&ids).unwrap();
        (sign != 0).then(|| (m, q(*c * i64::from(sign))))
    }))
}

fn criterion_1() -> Outcome {
    for k in [-2, 0, 1, 3] {
        let cdga = torus_model(k);
        let names: Vec<&str> = cdga.algebra().generators().iter().map(|g| g.name.as_str()).collect();
        let mut sorted = names.clone();
        sorted.sort_unstable();
        check(sorted == ["a'", "b'", "y1", "y2", "y2'", "y3", "z"], || {
            format!("k={k}: generators {names:?}")
        })?;
        let expected: [(&str, Vec<(i64, &[&str])>); 7] = [
            ("z", vec![]),
            ("a'", vec![]),
            ("b'", vec![]),
            ("y1", vec![(2 * k, &["z"]), (-2, &["a'", "b'"])]),
            ("y2", vec![(2, &["z", "a'"])]),
            ("y2'", vec![(2, &["z", "b'"])]),
            ("y3", vec![(1, &["z", "z"])]),
        ];
        for (g, terms) in expected {
            let want = free_element(&cdga, &terms);
            let got = cdga.d(g).unwrap();
            check(*got == want, || {
                format!("k={k}: d({g}) = {}, expected {}", cdga.format_element(got), cdga.format_element(&want))
            })?;
        }
    }
    Ok("torus model matches at k = −2, 0, 1, 3".into())
}

fn criterion_2() -> Outcome {
    for k in [-2, 0, 1, 3] {
        let t = with_multiple(&variety("torus"), "u", k);
        let psi = compute_psi_chi(&t).unwrap();
        let alg = &psi.algebra;
        let Factor::Free(primes) = &alg.factors()[1] else {
            return Err("second factor is not free".into());
        };
        let z = |e| FactorKey::Mono(Monomial::power(GenId(0), e));
        let x = |names: &[&str]| {
            let ids: Vec<GenId> = names.iter().map(|n| primes.id_of(n).unwrap()).collect();
            let (sign, m) = primes.normalize(&ids).unwrap();
            (sign, FactorKey::Mono(m))
        };
        let b = |label: &str| FactorKey::Basis(t.ring.id_of(label).unwrap());
        let term = |c: i64, z: FactorKey, (s, x): (i8, FactorKey), b: FactorKey| {
            alg.pure(vec![z, x, b]).unwrap().scale(&q(c * i64::from(s)))
        };
        // z²⊗1⊗1 + 2k z⊗1⊗u − 2·1⊗a′b′⊗u + 2 z⊗a′⊗a + 2 z⊗b′⊗b
        let expected = term(1, z(2), x(&[]), b("1"))
            + term(2 * k, z(1), x(&[]), b("u"))
            + term(-2, z(0), x(&["a'", "b'"]), b("u"))
            + term(2, z(1), x(&["a'"]), b("a"))
            + term(2, z(1), x(&["b'"]), b("b"));
        check(psi.value == expected, || {
            format!("k={k}: got {}, expected {}", alg.format_element(&psi.value), alg.format_element(&expected))
        })?;
        let expected_terms = if k == 0 { 4 } else { 5 };
        check(psi.value.len() == expected_terms, || format!("k={k}: {} terms", psi.value.len()))?;
        let (_, ab) = x(&["a'", "b'"]);
        check(psi.value.coeff(&TensorKey(vec![z(0), ab, b("u")])) == q(-2), || {
            "Koszul sign on 1⊗a′b′⊗u".into()
        })?;
    }
    Ok("five-term expansion with −2(1⊗a′b′)⊗u".into())
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    for n in 1..=3u32 {
        let p = projective_space::<Rational>(n).unwrap();
        for d in [5i64, 10, 20, 30] {
            let v = with_multiple(&p, "h", d);
            // O(1) is 1-jet ample
            let bound = d_power(1, d as u32).unwrap();
            let top = main_range(bound);
            if top < 0 {
                continue;
            }
            let cdga = build_section_cdga(&v).unwrap();
            let betti = betti_table(&cdga, top as u32, BettiOptions::default()).unwrap().betti;
            let series = stable_moduli_series(&v, top as u32).coefficients;
            check(betti == series, || format!("P{n}, d={d}: betti {betti:?} vs stable {series:?}"))?;
            if n == 1 && d == 30 {
                let mut want = vec![0u64; 14];
                want[0] = 1;
                want[3] = 1;
                check(betti == want, || format!("P1 d=30: {betti:?}"))?;
            }
            checked += top + 1;
        }
    }
    Ok(format!("{checked} degree comparisons"))
}

fn criterion_4() -> Outcome {
    for k in [-2, 1, 2, 3] {
        let oracle = torus_oracle(k).betti(2);
        check(oracle == [1, 2, 3], || format!("oracle at k={k}: {oracle:?}"))?;
        let engine = betti_table(&torus_model(k), 2, BettiOptions::default()).unwrap().betti;
        check(engine == [1, 2, 3], || format!("engine at k={k}: {engine:?}"))?;
    }
    Ok("(1, 2, 3) from oracle and engine".into())
}

fn criterion_5() -> Outcome {
    for deg in 4..=100i64 {
        let m = curve_range(0, deg);
        check(m == (deg - 4).div_euclid(2), || format!("g=0 deg={deg}: {m}"))?;
    }
    let mut count = 0;
    for g in 0..=5u32 {
        for alpha in 0..=200i64 {
            let m = curve_range(g, alpha);
            let bound = alpha - 2 * i64::from(g) - 3;
            if alpha - 2 * i64::from(g) >= -1 {
                // m is the largest integer with m < bound / 2
                check(2 * m < bound && bound <= 2 * m + 2, || format!("g={g} α={alpha}: {m}"))?;
                check(m == (alpha - 2 * i64::from(g) - 4).div_euclid(2), || format!("g={g} α={alpha}"))?;
            } else {
                check(m < 0 && bound < 0, || format!("g={g} α={alpha}: nonempty range {m}"))?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} curve instances"))
}

fn criterion_6() -> Outcome {
    let p2 = projective_space::<Rational>(2).unwrap();
    for d in 0..=20i64 {
        let c1 = p2.ring.element(&[("h", q(d))]).unwrap();
        let p = hilbert_polynomial(&p2, &c1, None).unwrap();
        let want = q(oracle::monomial_count(3, d as u32) as i64);
        check(p.eval(&q(0)) == want, || format!("χ(P2, O({d})) = {}", p.eval(&q(0))))?;
    }
    for g in 0..=5u32 {
        let c = variety(&format!("curve{g}"));
        for k in -5..=20i64 {
            let c1 = c.ring.element(&[("u", q(k))]).unwrap();
            let chi = hilbert_polynomial(&c, &c1, None).unwrap().eval(&q(0));
            check(chi == q(k + 1 - i64::from(g)), || format!("curve{g} deg {k}: χ = {chi}"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for n in 1..=4usize {
        let td = todd_polynomial(n);
        for _ in 0..5 {
            let roots: Vec<Rational> = (0..n).map(|_| qr(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect();
            let parts = oracle::todd_parts_at_roots(&roots, n);
            let e = oracle::elementary(&roots, n);
            let c = |i: usize| e.get(i - 1).cloned().unwrap_or_else(Rational::zero);
            for w in 0..=n {
                let mut value = Rational::zero();
                for (exps, coeff) in td.terms() {
                    let weight: usize = exps.iter().enumerate().map(|(i, x)| (i + 1) * *x as usize).sum();
                    if weight != w {
                        continue;
                    }
                    let mut term = coeff.clone();
                    for (i, &x) in exps.iter().enumerate() {
                        for _ in 0..x {
                            term *= &e[i];
                        }
                    }
                    value += term;
                }
                check(value == parts[w], || format!("n={n}: Todd degree {w} at roots {roots:?}"))?;
            }
            // the documented closed forms
            let closed = [
                Rational::from_integer(1.into()),
                c(1) / q(2),
                (c(1) * c(1) + c(2)) / q(12),
                c(1) * c(2) / q(24),
            ];
            for (w, value) in closed.iter().enumerate().take(n.min(3) + 1) {
                check(*value == parts[w], || format!("n={n}: closed form in degree {w}"))?;
            }
        }
    }
    Ok("HRR on P2 and curves, Todd parts against Chern roots".into())
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    // d∘d = 0 at matrix level for every builtin and 50 random α
    let mut models = 0;
    for name in common::SIMPLE_BUILTINS {
        let v = variety(name);
        let degree_two = v.ring.basis_in_degree(2);
        let alphas = 5;
        for _ in 0..alphas {
            let alpha = Element::from_terms(
                degree_two
                    .iter()
                    .map(|&b: &BasisId| (b, q(rng.gen_range(-6..=12)))),
            );
            let cdga = build_section_cdga(&v.with_alpha(alpha)).unwrap();
            for d in 0..=4 {
                let first = differential_matrix(&cdga, d, DEFAULT_MAX_MONOMIALS).unwrap();
                let second = differential_matrix(&cdga, d + 1, DEFAULT_MAX_MONOMIALS).unwrap();
                check(second.mul(&first).is_zero(), || format!("{name}: d² ≠ 0 in degree {d}"))?;
                // rank-nullity
                let rank = first.rank();
                let kernel = first.kernel_basis().len();
                check(rank + kernel == first.cols(), || format!("{name}: rank-nullity in degree {d}"))?;
                check(rank == dense_rank(first.to_dense()), || format!("{name}: rank in degree {d}"))?;
            }
            models += 1;
        }
    }
    check(models == 50, || format!("{models} random models"))?;

    // 20 mutated rings
    let mut rejected = 0;
    for name in ["torus", "p3", "curve2", "abelian2", "product:p1,p1"] {
        let v = variety(name);
        let ring = &v.ring;
        let pairs: Vec<(BasisId, BasisId)> = ring
            .ids()
            .flat_map(|a| ring.ids().map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && a != ring.unit_id() && b != ring.unit_id() && !ring.product(a, b).is_zero())
            .collect();
        if pairs.len() < 2 {
            return Err(format!("{name}: only {} nonzero mixed products", pairs.len()));
        }
        for &(a, b) in pairs.iter().take(2) {
            let broken = ring.with_product(a, b, ring.product(a, b).scale(&q(2)));
            let report = broken.check_axioms();
            check(report.iter().any(|r| matches!(r, RingViolation::GradedCommutativity { .. })), || {
                format!("{name}: commutativity mutation not detected")
            })?;
            rejected += 1;
        }
    }
    let ab = variety("abelian2");
    let ring = &ab.ring;
    let ones = ring.basis_in_degree(1);
    for (i, j) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (1, 0), (2, 0), (3, 1), (3, 2)] {
        let (x, y) = (ones[i], ones[j]);
        let c = q(3);
        let broken = ring
            .with_product(x, y, ring.product(x, y).scale(&c))
            .with_product(y, x, ring.product(y, x).scale(&c));
        let report = broken.check_axioms();
        check(report.iter().any(|r| matches!(r, RingViolation::Associativity { .. })), || {
            format!("associativity mutation ({i},{j}) not detected")
        })?;
        check(!report.iter().any(|r| matches!(r, RingViolation::GradedCommutativity { .. })), || {
            "associativity mutation broke commutativity".into()
        })?;
        rejected += 1;
    }
    check(rejected == 20, || format!("{rejected} mutations"))?;

    // insertion-order shuffles
    for (name, label, k) in [("torus", "u", 3), ("p2", "h", 7), ("product:p1,p1", "h1", 4)] {
        let v = with_multiple(&variety(name), label, k);
        let cdga = build_section_cdga(&v).unwrap();
        let reference = betti_table(&cdga, 6, BettiOptions::default()).unwrap().betti;
        for _ in 0..5 {
            let mut order: Vec<GenId> = (0..cdga.len()).map(GenId).collect();
            order.shuffle(&mut rng);
            let shuffled = cdga.with_insertion_order(&order).unwrap();
            let betti = betti_table(&shuffled, 6, BettiOptions::default()).unwrap().betti;
            check(betti == reference, || format!("{name}: shuffle changed betti"))?;
        }
    }
    Ok("50 models d²=0, 20 mutations rejected, 15 shuffles stable".into())
}

fn criterion_8() -> Outcome {
    for name in common::SIMPLE_BUILTINS {
        let v = variety(name);
        let betti = v.ring.betti();
        let b = betti[v.top_degree() as usize - 1];
        let same = grw_series(&v, 12) == stable_moduli_series(&v, 12);
        check(same == (b == 0), || format!("{name}: b_(2n−1) = {b}, series equal = {same}"))?;
    }
    Ok("grw series equals stable series exactly when b_(2n−1) = 0".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 8] = [
        ("1 torus model", criterion_1, Duration::from_secs(1)),
        ("2 Ψ*(χ) expansion", criterion_2, Duration::from_secs(1)),
        ("3 Betti vs stable series", criterion_3, Duration::from_secs(120)),
        ("4 torus Betti", criterion_4, Duration::from_secs(5)),
        ("5 ranges", criterion_5, Duration::from_secs(10)),
        ("6 Riemann–Roch", criterion_6, Duration::from_secs(10)),
        ("7 property suites", criterion_7, Duration::from_secs(300)),
        ("8 stable series consistency", criterion_8, Duration::from_secs(10)),
    ];
    let mut failures = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > limit => Err(format!("{detail}; took {elapsed:?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS  criterion {name}: {detail} ({elapsed:.2?})"),
            Err(why) => {
                failures += 1;
                println!("FAIL  criterion {name}: {why} ({elapsed:.2?})");
            }
        }
    }
    if failures > 0 {
        println!("{failures} criterion/criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
