use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use tjl_core::cyclo::{cyc_add, cyc_mul, cyc_to_rational, cyclotomic_polynomial, totient, CycNumber, CycScalar, Rational};
use tjl_core::finite_field::{parse_poly, Poly};
use tjl_core::group::GroupParams;
use tjl_core::linalg::{kernel_of_dense, mat_vec};
use tjl_core::quaternion::{infinity_class, infinity_mul, zero_class, AlgebraParams, OrderElement};
use tjl_core::reps::{build_model, chi_multiplicity, enumerate_irreps, induced_character};
use tjl_core::spectral::{SpectralContext, SpectralReport};
use tjl_core::tame::{classify_irreducibles, expected_irreducible_count, jl_transfer, r_value, TameParam};
use tjl_core::adelic::SearchBounds;
use tjl_core::census::IrrepsReport;
use tjl_core::reps::FrobOrbit;

fn scalar(order: usize) -> impl Strategy<Value = CycScalar> {
    proptest::collection::vec((0..order, -20i64..=20), 0..6).prop_map(move |terms| {
        let mut s = CycScalar::zero(order);
        for (k, c) in terms {
            s.add_root(k as i64, &BigInt::from(c));
        }
        s
    })
}

fn three_scalars() -> impl Strategy<Value = (CycScalar, CycScalar, CycScalar)> {
    (1usize..=64).prop_flat_map(|m| (scalar(m), scalar(m), scalar(m)))
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Small prime powers and exponents with `q^n - 1` kept modest.
fn group_params() -> impl Strategy<Value = GroupParams> {
    (prop::sample::select(vec![2u32, 3, 4, 5, 7]), 1u32..=3, 1u32..=2)
        .prop_filter("field part too large", |(q, n, _)| q.pow(*n) <= 64)
        .prop_map(|(q, n, level)| GroupParams::new(q, n, level).unwrap())
}

fn order_element(q: u32) -> impl Strategy<Value = OrderElement> {
    let poly = move || proptest::collection::vec(0..q, 0..4).prop_map(Poly::from_coeffs);
    (poly(), poly(), poly(), poly(), 0u32..=2)
        .prop_map(|(a, b, c, d, m)| OrderElement::new(a, b, c, d).with_denominator(m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_ring_axioms((a, b, c) in three_scalars()) {
        let ab_c = cyc_mul(&cyc_mul(&a, &b).unwrap(), &c).unwrap();
        let a_bc = cyc_mul(&a, &cyc_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let left = cyc_mul(&a, &cyc_add(&b, &c).unwrap()).unwrap();
        let right = cyc_add(&cyc_mul(&a, &b).unwrap(), &cyc_mul(&a, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(cyc_mul(&a, &b).unwrap(), cyc_mul(&b, &a).unwrap());
    }

    #[test]
    fn field_inverse(a in (2usize..=40).prop_flat_map(scalar)) {
        let x = CycNumber::from_scalar(&a);
        prop_assume!(!x.is_zero());
        let inv = x.inv().unwrap();
        prop_assert_eq!(x.mul(&inv), CycNumber::one(x.order()));
    }

    #[test]
    fn integers_round_trip(z in -1_000_000i64..=1_000_000, m in 1usize..=64) {
        prop_assert_eq!(cyc_to_rational(&CycScalar::from_int(m, z)).unwrap(), Rational::from_integer(z.into()));
    }

    #[test]
    fn kernel_vectors_solve_the_system(
        rows in proptest::collection::vec(proptest::collection::vec((-3i64..=3, 0i64..8), 4), 1..4)
    ) {
        let m: Vec<Vec<CycNumber>> = rows
            .iter()
            .map(|r| r.iter().map(|&(c, k)| CycNumber::root(8, k).scale(&Rational::from_integer(c.into()))).collect())
            .collect();
        let ker = kernel_of_dense(8, &m);
        prop_assert!(ker.len() >= 4 - rows.len());
        for v in &ker {
            prop_assert!(mat_vec(8, &m, v).iter().all(CycNumber::is_zero));
        }
    }

    #[test]
    fn group_law_is_associative(g in group_params(), seed in any::<[u32; 6]>()) {
        let n = g.order();
        let x = g.element_at(seed[0] as usize % n);
        let y = g.element_at(seed[1] as usize % n);
        let z = g.element_at(seed[2] as usize % n);
        prop_assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
        prop_assert_eq!(g.mul(x, g.inv(x)), g.identity());
    }

    #[test]
    fn model_traces_match_characters(g in group_params(), picks in proptest::collection::vec(any::<u32>(), 8)) {
        let labels = enumerate_irreps(&g);
        let label = &labels[picks[0] as usize % labels.len()];
        let model = build_model(label, &g).unwrap();
        for p in &picks[1..] {
            let x = g.element_at(*p as usize % g.order());
            let word = model.element_monomial_by_word(x);
            prop_assert_eq!(word.trace(), induced_character(label, &g, x));
            prop_assert_eq!(&word, &model.element_monomial(x));
        }
    }

    #[test]
    fn census_is_complete_and_orthonormal(g in group_params()) {
        prop_assume!(g.order() <= 200);
        let r = IrrepsReport::compute(&g).unwrap();
        prop_assert_eq!(r.sum_of_squares as usize, g.order());
        prop_assert_eq!(r.irrep_count, r.class_count);
        prop_assert!(r.orthonormal);
    }

    #[test]
    fn multiplicities_are_at_most_one(g in group_params(), pick in any::<u32>()) {
        let labels = enumerate_irreps(&g);
        let label = &labels[pick as usize % labels.len()];
        let mut total = 0;
        for chi in 0..g.field_order() {
            let m = chi_multiplicity(label, chi, &g).unwrap();
            prop_assert!(m <= 1);
            prop_assert_eq!(m == 1, label.orbit.contains(chi));
            total += m;
        }
        prop_assert_eq!(total as usize, label.dim());
    }

    #[test]
    fn tame_dictionary_invariants(g in group_params()) {
        let params = classify_irreducibles(&g);
        prop_assert_eq!(params.len() as u64, expected_irreducible_count(&g));
        let mut labels = std::collections::BTreeSet::new();
        for p in &params {
            prop_assert_eq!(r_value(p) * p.d, g.n);
            prop_assert_eq!(p.orbit.negated(&g).negated(&g), p.orbit.clone());
            prop_assert!(labels.insert(jl_transfer(p)));
        }
        let st = TameParam::steinberg(&g);
        prop_assert_eq!(r_value(&st) * st.d, g.n);
    }

    #[test]
    fn reduced_norm_is_multiplicative(
        (q, x, y) in prop::sample::select(vec![3u32, 5, 7, 9]).prop_flat_map(|q| (Just(q), order_element(q), order_element(q)))
    ) {
        let alg = AlgebraParams::new(q, 1).unwrap();
        prop_assert_eq!(
            x.mul(&y, &alg).nrd(&alg).canonical(),
            x.nrd(&alg).mul(&y.nrd(&alg), &alg.fq).canonical()
        );
        let xc = x.mul(&x.conj(&alg), &alg);
        let n = x.nrd(&alg).canonical();
        prop_assert_eq!(xc.canonical(), OrderElement::new(n.num.clone(), Poly::zero(), Poly::zero(), Poly::zero()).with_denominator(n.den).canonical());
    }

    #[test]
    fn local_reductions_are_homomorphisms(x in order_element(3), y in order_element(3)) {
        let alg = AlgebraParams::new(3, 1).unwrap();
        prop_assume!(!x.is_zero() && !y.is_zero());
        let g = &alg.group;
        let xy = x.mul(&y, &alg);
        prop_assert_eq!(zero_class(&xy, &alg).unwrap(), g.mul(zero_class(&x, &alg).unwrap(), zero_class(&y, &alg).unwrap()));
        prop_assert_eq!(
            infinity_class(&xy, &alg).unwrap(),
            infinity_mul(infinity_class(&x, &alg).unwrap(), infinity_class(&y, &alg).unwrap(), &alg)
        );
    }
}

#[test]
fn cyclotomic_polynomials_multiply_to_x_m_minus_1() {
    for m in 1..=64usize {
        let phi = cyclotomic_polynomial(m);
        assert_eq!(phi.len() - 1, totient(m), "m = {m}");
        let mut prod = vec![BigInt::one()];
        for d in (1..=m).filter(|d| m % d == 0) {
            prod = poly_mul(&prod, &cyclotomic_polynomial(d));
        }
        let mut expect = vec![BigInt::zero(); m + 1];
        expect[0] = BigInt::from(-1);
        expect[m] = BigInt::one();
        assert_eq!(prod, expect, "m = {m}");
    }
}

#[test]
fn roots_of_unity_sum_to_zero() {
    for m in 2..=64usize {
        let mut s = CycScalar::zero(m);
        for k in 0..m {
            s.add_root(k as i64, &BigInt::one());
        }
        assert!(s.is_zero(), "m = {m}");
    }
}

#[test]
fn necklace_counts_for_small_fields() {
    for q in [2u32, 3, 4, 5, 7] {
        for n in 1..=4u32 {
            let g = GroupParams::new(q, n, 1).unwrap();
            assert_eq!(classify_irreducibles(&g).len() as u64, expected_irreducible_count(&g), "q={q} n={n}");
        }
    }
}

#[test]
fn spectral_claim_at_larger_levels() {
    for (q, level) in [(3, 2), (5, 1)] {
        let ctx = SpectralContext::new(AlgebraParams::new(q, level).unwrap(), None, SearchBounds::default()).unwrap();
        let report = SpectralReport::compute(&ctx, None, true).unwrap();
        assert!(report.all_ok, "q={q} N={level}");
        for s in &report.sigmas {
            assert_eq!(s.claim_sum, s.dim);
            assert_eq!(s.blocks[0].infinity_orbit, s.sigma.orbit.negated(&ctx.alg.group));
        }
    }
}

#[test]
fn three_places_separate_eigensystems() {
    let alg = AlgebraParams::new(3, 1).unwrap();
    let places = ["t-1", "t+1", "t^2+1"].iter().map(|s| parse_poly(s, &alg.fq).unwrap()).collect();
    let ctx = SpectralContext::new(alg, Some(places), SearchBounds::default()).unwrap();
    let report = SpectralReport::compute(&ctx, None, false).unwrap();
    assert_eq!(report.places.len(), 3);
    for s in &report.sigmas {
        let distinct: std::collections::BTreeSet<_> =
            s.blocks.iter().map(|b| format!("{:?}", b.eigenvalues)).collect();
        assert_eq!(distinct.len(), s.blocks.len());
        let two = FrobOrbit::of(&ctx.alg.group, 1);
        if s.sigma.orbit == two {
            assert_eq!(s.blocks[0].infinity_orbit.members(), &[5, 7]);
        }
    }
}
