//! Property tests for the polynomial kernel and the q-combinatorics
//! layer: ring axioms, division round trips, homomorphisms.

mod support;

use num_bigint::BigInt;
use proptest::collection::vec;
use proptest::prelude::*;
use qlacuna::cyclotomic::{cyclo_valuation, cyclotomic};
use qlacuna::polyring::{BiPoly, IntPoly, ZMode};
use qlacuna::qcombo::q_binomial;

fn small_poly() -> impl Strategy<Value = IntPoly> {
    vec(-3i64..=3, 0..=5).prop_map(|coeffs| IntPoly::from_i64_coeffs(&coeffs))
}

fn nonzero_poly() -> impl Strategy<Value = IntPoly> {
    small_poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn monic_poly() -> impl Strategy<Value = IntPoly> {
    (vec(-3i64..=3, 1..=4)).prop_map(|mut coeffs| {
        coeffs.push(1);
        IntPoly::from_i64_coeffs(&coeffs)
    })
}

fn small_bipoly() -> impl Strategy<Value = BiPoly> {
    vec(small_poly(), 0..=3).prop_map(BiPoly::from_zcoeffs)
}

proptest! {
    #[test]
    fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn degree_of_product_adds(a in nonzero_poly(), b in nonzero_poly()) {
        let expected = a.degree().unwrap() + b.degree().unwrap();
        prop_assert_eq!(a.mul(&b).degree(), Some(expected));
    }

    #[test]
    fn multiply_back_round_trip(a in small_poly(), b in nonzero_poly()) {
        let product = a.mul(&b);
        prop_assert_eq!(product.div_exact(&b).unwrap(), Some(a));
    }

    #[test]
    fn reduce_mod_recovers_quotient(a in small_poly(), m in monic_poly()) {
        let (t, r) = a.divrem_monic(&m).unwrap();
        prop_assert!(r.degree() < m.degree());
        prop_assert_eq!(m.mul(&t).add(&r), a.clone());
        prop_assert_eq!(a.reduce_mod(&m).unwrap(), r);
    }

    #[test]
    fn eval_at_one_is_a_ring_homomorphism(a in small_poly(), b in small_poly()) {
        prop_assert_eq!(a.add(&b).eval_at_one(), a.eval_at_one() + b.eval_at_one());
        prop_assert_eq!(a.mul(&b).eval_at_one(), a.eval_at_one() * b.eval_at_one());
    }

    #[test]
    fn bipoly_subst_identity(a in small_bipoly()) {
        prop_assert_eq!(a.subst(1, ZMode::ZPow(1)).unwrap(), a);
    }

    #[test]
    fn bipoly_collapse_matches_manual(a in small_bipoly(), m in 0u64..3) {
        let collapsed = a.subst(1, ZMode::Collapse(m)).unwrap();
        let mut manual = IntPoly::zero();
        for (j, c) in a.zcoeffs().iter().enumerate() {
            manual = manual.add(&c.mul_qpow(j * m as usize));
        }
        prop_assert_eq!(collapsed, BiPoly::constant(manual));
    }

    #[test]
    fn qbinom_symmetry(n in 0u64..28, k in 0u64..28) {
        prop_assume!(k <= n);
        prop_assert_eq!(q_binomial(n, k as i64), q_binomial(n, (n - k) as i64));
    }

    #[test]
    fn eval_at_one_matches_pascal_binomial(n in 0u64..24, k in 0i64..24) {
        prop_assert_eq!(
            q_binomial(n, k).eval_at_one(),
            support::pascal_int_binomial(n, k)
        );
    }

    #[test]
    fn cyclo_valuation_increments(f in nonzero_poly(), d in 1u64..8) {
        let v = cyclo_valuation(&f, d).unwrap();
        let g = f.mul(&cyclotomic(d));
        prop_assert_eq!(cyclo_valuation(&g, d).unwrap(), v + 1);
    }

    #[test]
    fn content_divides_every_coefficient(a in nonzero_poly()) {
        let g = a.content();
        prop_assert!(a.coeffs().iter().all(|c| (c % &g) == BigInt::from(0)));
    }
}

#[test]
fn mobius_oracle_agrees_with_recursive_construction() {
    for d in 1..=120u64 {
        assert_eq!(cyclotomic(d), support::mobius_cyclotomic(d), "Phi_{d}");
    }
}

#[test]
fn phi_105_has_coefficient_minus_two() {
    let phi = support::mobius_cyclotomic(105);
    assert_eq!(phi.coeff(7), BigInt::from(-2));
}

#[test]
fn direct_sum_oracle_agrees_with_library() {
    use qlacuna::lacunary::{lacunary_sum, LacunaryParams};
    for n in 1..=9u32 {
        for c in 1..=4u32 {
            for r in [-2i64, 0, 1, 3] {
                for l in 0..=2u32 {
                    for h in [-2i64, 0, 1] {
                        let p = LacunaryParams::new(n, c, r, l, h).unwrap();
                        assert_eq!(
                            lacunary_sum(&p),
                            support::direct_lacunary_sum(n, c, r, l, h),
                            "n={n} c={c} r={r} l={l} h={h}"
                        );
                    }
                }
            }
        }
    }
}
