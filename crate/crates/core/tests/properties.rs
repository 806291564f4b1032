mod common;

use std::sync::Arc;

use common::oracle::q;
use common::{variety, with_multiple, SIMPLE_BUILTINS};
use hypermod::cohomology::{betti_table, BettiOptions};
use hypermod::grca::{
    BasisId, Element, Factor, FactorKey, FreeAlgebra, GenId, GradedAlgebra, Monomial, TensorAlgebra,
    TensorKey,
};
use hypermod::haefliger::{
    build_section_cdga, compute_k1, compute_psi_chi, CdgaPresentation, GeneratorRole, GeneratorSpec,
};
use hypermod::hrr::hilbert_polynomial;
use hypermod::ranges::{curve_range, d_curve, d_power, d_tensor, d_toric, length_bound, main_range};
use hypermod::stable::{compare_stable, free_gca_series, stable_moduli_series};
use hypermod::variety::{product, projective_space};
use hypermod::Rational;
use num_bigint::BigUint;
use num_integer::binomial;
use proptest::prelude::*;

fn mixed_algebra() -> FreeAlgebra {
    FreeAlgebra::new([("a", 1), ("b", 1), ("c", 3), ("x", 2), ("y", 4)]).unwrap()
}

fn word() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..5, 0..6)
}

fn monomial_of(alg: &FreeAlgebra, word: &[usize]) -> Option<(i8, Monomial)> {
    let ids: Vec<GenId> = word.iter().map(|&i| GenId(i)).collect();
    match alg.normalize(&ids).unwrap() {
        (0, _) => None,
        other => Some(other),
    }
}

fn ring_element(v: &hypermod::VarietyData, coeffs: &[i64]) -> Element<BasisId, Rational> {
    Element::from_terms(v.ring.ids().zip(coeffs).map(|(b, &c)| (b, q(c))))
}

proptest! {
    #[test]
    fn free_products_are_graded_commutative(u in word(), w in word()) {
        let alg = mixed_algebra();
        let (Some((_, a)), Some((_, b))) = (monomial_of(&alg, &u), monomial_of(&alg, &w)) else {
            return Ok(());
        };
        let (s1, ab) = alg.mul_monomials(&a, &b);
        let (s2, ba) = alg.mul_monomials(&b, &a);
        let koszul = if alg.monomial_degree(&a) * alg.monomial_degree(&b) % 2 == 1 { -1 } else { 1 };
        prop_assert_eq!(s1, s2 * koszul);
        if s1 != 0 {
            prop_assert_eq!(ab, ba);
        }
    }

    #[test]
    fn normalize_is_idempotent(u in word()) {
        let alg = mixed_algebra();
        if let Some((_, m)) = monomial_of(&alg, &u) {
            prop_assert_eq!(alg.normalize(&m.expanded()).unwrap(), (1, m));
        }
    }

    #[test]
    fn power_matches_repeated_product(e in 0u32..6, c in -3i64..4) {
        let alg = mixed_algebra();
        let x: Element<Monomial, Rational> =
            alg.generator_element::<Rational>(alg.id_of("x").unwrap()).scale(&q(c))
                + alg.generator_element(alg.id_of("y").unwrap());
        let mut acc = alg.unit();
        for _ in 0..e {
            acc = alg.mul(&acc, &x).unwrap();
        }
        prop_assert_eq!(alg.power(&x, e).unwrap(), acc);
    }

    #[test]
    fn builtin_rings_satisfy_axioms_on_elements(
        which in 0usize..SIMPLE_BUILTINS.len(),
        a in prop::collection::vec(-4i64..5, 16),
        b in prop::collection::vec(-4i64..5, 16),
        c in prop::collection::vec(-4i64..5, 16),
    ) {
        let v = variety(SIMPLE_BUILTINS[which]);
        let ring = v.ring.as_ref();
        let (x, y, z) = (ring_element(&v, &a), ring_element(&v, &b), ring_element(&v, &c));
        let left = ring.mul(&ring.mul(&x, &y).unwrap(), &z).unwrap();
        let right = ring.mul(&x, &ring.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        // commutativity on homogeneous parts
        for p in 0..=ring.top_degree() {
            for r in 0..=ring.top_degree() {
                let xp = ring.homogeneous_part(&x, p);
                let yr = ring.homogeneous_part(&y, r);
                let sign = if p * r % 2 == 1 { q(-1) } else { q(1) };
                prop_assert_eq!(ring.mul(&xp, &yr).unwrap(), ring.mul(&yr, &xp).unwrap().scale(&sign));
            }
        }
    }

    #[test]
    fn cap_dual_pairs_basis_elements(u in word(), which in 0usize..SIMPLE_BUILTINS.len(), i in 0usize..16, j in 0usize..16) {
        let free = Arc::new(mixed_algebra());
        let Some((_, w)) = monomial_of(&free, &u) else {
            return Ok(());
        };
        let v = variety(SIMPLE_BUILTINS[which]);
        let (b, c) = (BasisId(i % v.ring.len()), BasisId(j % v.ring.len()));
        let t = TensorAlgebra::new(vec![Factor::Free(free), Factor::Ring(v.ring.clone())]);
        let wb = t.pure(vec![FactorKey::Mono(w.clone()), FactorKey::Basis(c)]).unwrap();
        let capped = t.cap_dual(b, &wb).unwrap();
        if b == c {
            prop_assert_eq!(capped, t.without_last().pure(vec![FactorKey::Mono(w)]).unwrap());
        } else {
            prop_assert!(capped.is_zero());
        }
    }

    #[test]
    fn cap_dual_extracts_extreme_parts(k in -5i64..6, which in 0usize..3) {
        let name = ["torus", "p2", "curve2"][which];
        let v = with_multiple(&variety(name), if name == "p2" { "h" } else { "u" }, k);
        let psi = compute_psi_chi(&v).unwrap();
        let reduced = psi.algebra.without_last();
        // against the unit only z^{n+1} ⊗ 1 survives
        let unit = psi.algebra.cap_dual(v.ring.unit_id(), &psi.value).unwrap();
        let top = reduced
            .pure(vec![FactorKey::Mono(Monomial::power(GenId(0), v.dim + 1)), FactorKey::Mono(Monomial::one())])
            .unwrap();
        prop_assert_eq!(unit, top);
        // against the point class the result has degree 2
        let point = psi.algebra.cap_dual(v.ring.point_class().unwrap(), &psi.value).unwrap();
        prop_assert!(reduced.is_homogeneous_of(&point, 2));
    }

    #[test]
    fn psi_is_homogeneous(k in -8i64..9, which in 0usize..SIMPLE_BUILTINS.len()) {
        let v = variety(SIMPLE_BUILTINS[which]);
        let label = v.ring.labels()[v.ring.basis_in_degree(2)[0].0].clone();
        let v = with_multiple(&v, &label, k);
        let psi = compute_psi_chi(&v).unwrap();
        prop_assert_eq!(psi.degree(), Some(2 * v.dim + 2));
    }

    #[test]
    fn dual_differentials_use_only_z_and_primes(k in -6i64..7, which in 0usize..SIMPLE_BUILTINS.len()) {
        let v = variety(SIMPLE_BUILTINS[which]);
        let label = v.ring.labels()[v.ring.basis_in_degree(2)[0].0].clone();
        let cdga = build_section_cdga(&with_multiple(&v, &label, k)).unwrap();
        for g in 0..cdga.len() {
            let g = GenId(g);
            for m in cdga.differential_of(g).keys() {
                for (h, _) in m.factors() {
                    let allowed = matches!(cdga.role(*h), GeneratorRole::Z | GeneratorRole::H1Dual { .. });
                    prop_assert!(allowed);
                }
            }
        }
    }

    #[test]
    fn main_range_bracket(d in -1i64..10_000) {
        let m = main_range(d);
        // m < (d − 3)/2 ≤ m + 1
        prop_assert!(2 * m < d - 3);
        prop_assert!(d - 3 <= 2 * m + 2);
    }

    #[test]
    fn curve_range_formula(g in 0u32..20, deg in -50i64..500) {
        prop_assert!(d_curve(g, deg) >= -1);
        if deg - 2 * i64::from(g) >= -1 {
            prop_assert_eq!(curve_range(g, deg), (deg - 2 * i64::from(g) - 4).div_euclid(2));
        } else {
            prop_assert!(curve_range(g, deg) < 0);
        }
    }

    #[test]
    fn length_bound_edges(n in 1u32..8, d in 0u32..=100) {
        prop_assert_eq!(length_bound(n, 0).unwrap(), BigUint::from(1u32));
        prop_assert_eq!(length_bound(1, d).unwrap(), BigUint::from(d + 1));
    }

    #[test]
    fn curve_bound_is_monotone(g in 0u32..10, deg in -30i64..300) {
        prop_assert!(d_curve(g, deg) <= d_curve(g, deg + 1));
    }

    #[test]
    fn toric_bound_is_the_minimum(xs in prop::collection::vec(0i64..500, 1..8)) {
        prop_assert_eq!(d_toric(&xs).unwrap(), *xs.iter().min().unwrap());
    }

    #[test]
    fn jet_bounds_compose(a in 0i64..1000, b in 0i64..1000, k in 1u32..50) {
        prop_assert_eq!(d_tensor(a, b).unwrap(), a + b);
        prop_assert_eq!(d_power(a, k).unwrap(), a * i64::from(k));
        prop_assert!(main_range(a + b) >= main_range(a));
    }

    #[test]
    fn hilbert_twist_shifts(n in 1u32..4, d in -5i64..10, t in -3i64..4) {
        let p = projective_space::<Rational>(n).unwrap();
        let c1 = p.ring.element(&[("h", q(d))]).unwrap();
        let twisted = p.ring.element(&[("h", q(d + t))]).unwrap();
        let base = hilbert_polynomial(&p, &c1, None).unwrap();
        prop_assert_eq!(hilbert_polynomial(&p, &twisted, None).unwrap(), base.shifted(&q(t)));
        if d >= 0 {
            let want = binomial(i64::from(n) + d, i64::from(n));
            prop_assert_eq!(base.eval(&q(0)), q(want));
        }
        prop_assert!(base.is_integer_valued());
    }

    #[test]
    fn series_truncation_commutes(
        gens in prop::collection::vec((1u32..7, 0u64..3), 0..5),
        a in 0u32..15,
        b in 0u32..15,
    ) {
        let (lo, hi) = (a.min(b), a.max(b));
        let s = free_gca_series(&gens, hi).unwrap();
        prop_assert_eq!(s.truncate(lo), free_gca_series(&gens, lo).unwrap());
        let split = free_gca_series(&gens[..gens.len() / 2], hi)
            .unwrap()
            .mul(&free_gca_series(&gens[gens.len() / 2..], hi).unwrap());
        prop_assert_eq!(split, s);
    }

    #[test]
    fn zero_differential_gives_free_series(gens in prop::collection::vec(1u32..5, 1..6)) {
        let specs = gens
            .iter()
            .enumerate()
            .map(|(i, &d)| GeneratorSpec {
                name: format!("g{i}"),
                degree: d,
                role: GeneratorRole::Other,
                differential: Vec::new(),
            })
            .collect();
        let cdga = CdgaPresentation::<Rational>::new(specs).unwrap();
        let max = 8;
        let betti = betti_table(&cdga, max, BettiOptions::default()).unwrap().betti;
        let counts: Vec<(u32, u64)> = gens.iter().map(|&d| (d, 1)).collect();
        prop_assert_eq!(betti, free_gca_series(&counts, max).unwrap().coefficients);
    }
}

#[test]
fn k1_agrees_with_psi_when_h1_vanishes() {
    for name in ["p1", "p2", "p3", "curve0", "product:p1,p1"] {
        let v = variety(name);
        let v = v.with_alpha(Element::zero());
        let psi = compute_psi_chi(&v).unwrap();
        let k1 = compute_k1(&v);
        let swapped = k1.value.map_keys(|key| {
            TensorKey(vec![key.0[1].clone(), FactorKey::Mono(Monomial::one()), key.0[0].clone()])
        });
        assert_eq!(psi.value, swapped, "{name}");
    }
}

#[test]
fn single_generator_series_closed_forms() {
    for d in 1..6u32 {
        let s = free_gca_series(&[(d, 1)], 20).unwrap();
        for (i, &c) in s.coefficients.iter().enumerate() {
            let want = if d % 2 == 1 {
                u64::from(i == 0 || i == d as usize)
            } else {
                u64::from(i % d as usize == 0)
            };
            assert_eq!(c, want, "degree {d} generator, coefficient {i}");
        }
    }
    // (1 − t²)^{−2}: coefficient of t^{2j} is j + 1
    let s = free_gca_series(&[(2, 2)], 12).unwrap();
    assert_eq!(s.coefficients, vec![1, 0, 2, 0, 3, 0, 4, 0, 5, 0, 6, 0, 7]);
}

#[test]
fn product_betti_is_convolution() {
    for (a, b) in [("p1", "p2"), ("curve2", "p1"), ("torus", "abelian1"), ("p1", "curve0")] {
        let (x, y) = (variety(a), variety(b));
        let prod = product(&x, &y).unwrap();
        let (bx, by) = (x.ring.betti(), y.ring.betti());
        let mut want = vec![0usize; bx.len() + by.len() - 1];
        for (i, p) in bx.iter().enumerate() {
            for (j, r) in by.iter().enumerate() {
                want[i + j] += p * r;
            }
        }
        assert_eq!(prod.ring.betti(), want, "{a} × {b}");
        assert!(prod.validate().is_empty(), "{a} × {b}");
    }
}

#[test]
fn stable_comparison_holds_across_degrees() {
    for n in 1..=3u32 {
        let p = projective_space::<Rational>(n).unwrap();
        for d in 4..=14i64 {
            let v = with_multiple(&p, "h", d);
            let report = compare_stable(&v, d_power(1, d as u32).unwrap(), 0, BettiOptions::default()).unwrap();
            assert!(report.all_equal, "P{n}, d = {d}: {report}");
        }
    }
}

#[test]
fn stable_comparison_holds_for_simply_connected_examples() {
    for (name, label, k) in [("p1", "h", 12), ("p2", "h", 10), ("p3", "h", 10), ("product:p1,p1", "h1", 0)] {
        let mut v = with_multiple(&variety(name), label, k);
        if name.starts_with("product") {
            v = v.with_alpha(v.ring.element(&[("h1", q(10)), ("h2", q(10))]).unwrap());
        }
        let report = compare_stable(&v, 10, 1, BettiOptions::default()).unwrap();
        assert!(report.all_equal, "{name}: {report}");
        assert_eq!(report.certified_max_degree, 3);
        let series = stable_moduli_series(&v, 3);
        for row in report.rows.iter().filter(|r| r.certified) {
            assert_eq!(row.stable, series.coefficient(row.degree));
        }
    }
}
