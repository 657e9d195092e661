//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (run with `cargo test -p qlacuna --test acceptance -- --nocapture`
//! to see the lines). Everything is exact arithmetic; the tolerance is
//! equality everywhere.

mod support;

use num_bigint::BigInt;
use rayon::prelude::*;

use qlacuna::certificate::Witness;
use qlacuna::classical::{self, FactorMode, PadicContext};
use qlacuna::congruence::{self, check_congruence, CongruenceClaim, RatPair};
use qlacuna::cyclotomic::{
    cyclo_subst_identity_check, cyclotomic, divisors, qbinom_factorization,
};
use qlacuna::lacunary::{self, LacunaryParams};
use qlacuna::polyring::{BiPoly, IntPoly};
use qlacuna::qcombo::{one_minus_qpow, q_binomial, q_factorial};

fn report(criterion: &str, failures: &[String]) {
    let pass = failures.is_empty();
    println!(
        "acceptance {criterion}: {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(
        pass,
        "{criterion}: {} failing case(s), first: {}",
        failures.len(),
        failures[0]
    );
}

#[test]
fn criterion_01_theorem1_full_sweep() {
    // 1 <= n <= 40, 1 <= c <= 8, 0 <= r < c, 0 <= l <= 4, h in {-2..2}
    let mut tuples = Vec::new();
    for n in 1..=40u32 {
        for c in 1..=8u32 {
            for r in 0..c as i64 {
                for l in 0..=4u32 {
                    for h in -2..=2i64 {
                        tuples.push((n, c, r, l, h));
                    }
                }
            }
        }
    }
    let failures: Vec<String> = tuples
        .par_iter()
        .filter_map(|&(n, c, r, l, h)| {
            let p = LacunaryParams::new(n, c, r, l, h).unwrap();
            let cert = lacunary::verify_theorem1(&p);
            (!cert.holds).then(|| format!("n={n} c={c} r={r} l={l} h={h}"))
        })
        .collect();
    report("criterion 1 (theorem1 sweep, 36000 tuples)", &failures);
}

#[test]
fn criterion_02_corollary1_sweep() {
    // 1 <= n <= 36, 1 <= c <= 6, 0 <= r < c, 0 <= l <= 3, h in {0,1}
    let mut tuples = Vec::new();
    for n in 1..=36u32 {
        for c in 1..=6u32 {
            for r in 0..c as i64 {
                for l in 0..=3u32 {
                    for h in 0..=1i64 {
                        tuples.push((n, c, r, l, h));
                    }
                }
            }
        }
    }
    let failures: Vec<String> = tuples
        .par_iter()
        .filter_map(|&(n, c, r, l, h)| {
            let p = LacunaryParams::new(n, c, r, l, h).unwrap();
            let cert = lacunary::verify_corollary1(&p);
            (!cert.holds).then(|| format!("n={n} c={c} r={r} l={l} h={h}"))
        })
        .collect();
    report("criterion 2 (corollary1 sweep)", &failures);
}

#[test]
fn criterion_03_oracle_equivalence() {
    let mut failures = Vec::new();
    // Pascal = factorial ratio = Lemma-3 cyclotomic expansion, n <= 40.
    let pairs: Vec<(u64, u64)> = (0..=40u64).flat_map(|n| (0..=n).map(move |k| (n, k))).collect();
    failures.par_extend(pairs.par_iter().filter_map(|&(n, k)| {
        let pascal = q_binomial(n, k as i64);
        let ratio = q_factorial(n)
            .div_exact(&q_factorial(k).mul(&q_factorial(n - k)))
            .unwrap()
            .expect("q-binomial is a polynomial");
        let lemma = qbinom_factorization(n, k as i64).unwrap();
        let in_01 = lemma.iter().all(|(_, e)| e == 1);
        let expansion = lemma.expand();
        (!(pascal == ratio && pascal == expansion && in_01))
            .then(|| format!("qbinomial n={n} k={k}"))
    }));
    // prod_{e|d} Phi_e = q^d - 1 and degree(Phi_d) = phi(d), d <= 120.
    failures.par_extend((1..=120u64).into_par_iter().filter_map(|d| {
        let mut prod = IntPoly::one();
        for e in divisors(d) {
            prod = prod.mul(&cyclotomic(e));
        }
        let target = IntPoly::monomial(1, d as usize).sub(&IntPoly::one());
        let deg_ok = cyclotomic(d).degree() == Some(support::totient_oracle(d) as usize);
        (!(prod == target && deg_ok)).then(|| format!("cyclotomic d={d}"))
    }));
    // Phi_bc(q) = Phi_c(q^b) whenever b | c, bc <= 120.
    for b in 2..=10u64 {
        let mut c = b;
        while b * c <= 120 {
            if !cyclo_subst_identity_check(b, c).unwrap().holds {
                failures.push(format!("subst identity b={b} c={c}"));
            }
            c += b;
        }
    }
    report("criterion 3 (oracle equivalence)", &failures);
}

#[test]
fn criterion_04_lucas_congruence() {
    // b in {2,3}, c in {b,2b}, l <= 2, n <= 6, r <= 3, 0 <= s,t <= b-1,
    // both z-free and z-generic forms (verify_lucas_t checks both).
    let mut tuples = Vec::new();
    for b in [2u32, 3] {
        for c in [b, 2 * b] {
            for l in 0..=2u32 {
                for n in 0..=6u32 {
                    for r in 0..=3u32 {
                        for s in 0..b {
                            for t in 0..b {
                                tuples.push((b, c, l, n, r, s, t));
                            }
                        }
                    }
                }
            }
        }
    }
    let failures: Vec<String> = tuples
        .par_iter()
        .filter_map(|&(b, c, l, n, r, s, t)| {
            match congruence::verify_lucas_t(b, c, l, n, r, s, t) {
                Ok(cert) if cert.holds => None,
                Ok(_) => Some(format!("b={b} c={c} l={l} n={n} r={r} s={s} t={t}")),
                Err(e) => Some(format!("b={b} c={c} l={l} n={n} r={r} s={s} t={t}: {e}")),
            }
        })
        .collect();
    report("criterion 4 (Lucas-type congruence)", &failures);
}

#[test]
fn criterion_05_wolstenholme_ljunggren() {
    let mut failures = Vec::new();
    for b in [5u32, 7] {
        for n in 0..=5u32 {
            for m in 0..=n {
                match congruence::verify_wl(b, n, m) {
                    Ok(cert) if cert.holds => {}
                    Ok(_) => failures.push(format!("wl b={b} n={n} m={m}")),
                    Err(e) => failures.push(format!("wl b={b} n={n} m={m}: {e}")),
                }
                // q = 1 shadow: binom(bn, bm) == binom(n, m) (mod b^3)
                if !classical::verify_wl_integer(b as u64, n, m).holds {
                    failures.push(format!("wl-int b={b} n={n} m={m}"));
                }
            }
        }
    }
    report("criterion 5 (Wolstenholme-Ljunggren mod Phi_b^3)", &failures);
}

#[test]
fn criterion_06_andrews_unit_congruence() {
    let mut failures = Vec::new();
    for b in [5u32, 7, 11] {
        for j in 1..=3u32 {
            match congruence::verify_andrews(b, j) {
                Ok(cert) if cert.holds => {}
                Ok(_) => failures.push(format!("andrews b={b} j={j}")),
                Err(e) => failures.push(format!("andrews b={b} j={j}: {e}")),
            }
        }
    }
    // The general-b assertion under empirical test: outcomes recorded,
    // never a build failure.
    for j in 1..=2u32 {
        match congruence::verify_andrews(25, j) {
            Ok(cert) => println!(
                "recorded: andrews b=25 j={j} holds={} flags={:?}",
                cert.holds, cert.flags
            ),
            Err(e) => println!("recorded: andrews b=25 j={j} error={e}"),
        }
    }
    report("criterion 6 (Andrews congruence, prime b asserted)", &failures);
}

#[test]
fn criterion_07_final_theorem_t_and_s() {
    let mut tuples = Vec::new();
    for b in [5u32, 7] {
        for c in [b, 2 * b] {
            for l in 0..=1u32 {
                for n in 2..=5u32 {
                    for r in 1..=3u32 {
                        tuples.push((b, c, l, n, r));
                    }
                }
            }
        }
    }
    let failures: Vec<String> = tuples
        .par_iter()
        .flat_map_iter(|&(b, c, l, n, r)| {
            let mut local = Vec::new();
            match congruence::verify_thm3(b, c, l, n, r) {
                Ok(cert) if cert.holds => {}
                Ok(_) => local.push(format!("thm3 b={b} c={c} l={l} n={n} r={r}")),
                Err(e) => local.push(format!("thm3 b={b} c={c} l={l} n={n} r={r}: {e}")),
            }
            match congruence::verify_s_thm(b, c, l, n, r) {
                Ok(cert) if cert.holds => {}
                Ok(_) => local.push(format!("s-thm b={b} c={c} l={l} n={n} r={r}")),
                Err(e) => local.push(format!("s-thm b={b} c={c} l={l} n={n} r={r}: {e}")),
            }
            local
        })
        .collect();
    report("criterion 7 (final theorem, T and S forms)", &failures);
}

#[test]
fn criterion_08_sdcq_with_classical_bridge() {
    let mut failures = Vec::new();
    for p in [5u64, 7] {
        for l in 0..=2u32 {
            for n in 0..=4u32 {
                for r in 0..p as u32 {
                    let q_side = congruence::verify_sdcq(p, 1, l, n, r).unwrap();
                    if !q_side.holds {
                        failures.push(format!("sdcq p={p} l={l} n={n} r={r}"));
                    }
                    if n >= 1 {
                        let int_side = classical::verify_sdc(p, n, r, l).unwrap();
                        if !int_side.holds {
                            failures.push(format!("sdc p={p} l={l} n={n} r={r}"));
                        }
                        if int_side.holds != q_side.holds {
                            failures.push(format!("bridge disagrees p={p} l={l} n={n} r={r}"));
                        }
                    }
                }
            }
        }
    }
    report("criterion 8 (sdcq + q=1 bridge to sdc)", &failures);
}

#[test]
fn criterion_09_classical_sweep() {
    let mut tuples = Vec::new();
    for p in [2u64, 3, 5] {
        for alpha in 1..=2u32 {
            let pa = p.pow(alpha) as i64;
            for n in 1..=60u32 {
                for r in 0..pa {
                    for l in 0..=3u32 {
                        tuples.push((p, alpha, n, r, l));
                    }
                }
            }
        }
    }
    let failures: Vec<String> = tuples
        .par_iter()
        .flat_map_iter(|&(p, alpha, n, r, l)| {
            let mut local = Vec::new();
            let ctx = PadicContext::new(p, alpha).unwrap();
            let id = format!("p={p} alpha={alpha} n={n} r={r} l={l}");
            if l == 0 {
                if !classical::verify_fleck(p, n, r).unwrap().holds {
                    local.push(format!("fleck {id}"));
                }
                if !classical::verify_weisman(&ctx, n, r).holds {
                    local.push(format!("weisman {id}"));
                }
            }
            if !classical::verify_sun_wan(&ctx, n, r, l).holds {
                local.push(format!("sun-wan {id}"));
            }
            if !classical::verify_ds(&ctx, n, r, l).holds {
                local.push(format!("ds {id}"));
            }
            if !classical::verify_sd(&ctx, n, r, l).holds {
                local.push(format!("sd {id}"));
            }
            if !classical::verify_sdt(&ctx, n, r, l).holds {
                local.push(format!("sdt {id}"));
            }
            if !classical::verify_dst(&ctx, n, r, l).holds {
                local.push(format!("dst {id}"));
            }
            // bound monotonicity on the same sweep
            if classical::sdt_bound(&ctx, n, r, l) < classical::sd_bound(&ctx, n, l) {
                local.push(format!("sdt bound not >= sd bound {id}"));
            }
            if classical::dst_bound(&ctx, n, r, l) < classical::ds_bound(&ctx, n) {
                local.push(format!("dst bound not >= ds bound {id}"));
            }
            local
        })
        .collect();
    report("criterion 9 (classical sweep + bound monotonicity)", &failures);
}

#[test]
fn criterion_10_soundness_probes() {
    let mut failures = Vec::new();
    let fails_with_remainder = |cert: &qlacuna::Certificate| -> bool {
        !cert.holds
            && match &cert.witness {
                Some(Witness::Poly(p)) => !p.is_zero(),
                Some(Witness::BiPoly(p)) => !p.is_zero(),
                None => false,
            }
    };

    // Divisibility family: inflate one divisor exponent past the actual
    // cyclotomic valuation of the sum, which must produce a remainder.
    let p = LacunaryParams::new(6, 2, 0, 1, 0).unwrap();
    let sum = lacunary::lacunary_sum(&p);
    let mut divisor = lacunary::theorem1_divisor(&p);
    let excess = qlacuna::cyclotomic::cyclo_valuation(&sum, 2).unwrap() + 1;
    divisor.bump(2, excess - divisor.exponent(2));
    let cert = lacunary::verify_divides("probe-theorem1", vec![], &sum, &divisor, &[]);
    if !fails_with_remainder(&cert) {
        failures.push("theorem1 probe did not fail with remainder".into());
    }

    // Corollary family.
    let sum = lacunary::corollary1_sum(&p);
    let mut divisor = lacunary::corollary1_divisor(&p);
    let excess = qlacuna::cyclotomic::cyclo_valuation(&sum, 2).unwrap() + 1;
    divisor.bump(2, excess - divisor.exponent(2));
    let cert = lacunary::verify_divides("probe-corollary1", vec![], &sum, &divisor, &[]);
    if !fails_with_remainder(&cert) {
        failures.push("corollary1 probe did not fail with remainder".into());
    }

    // Congruence family (Lucas machinery): perturb one side by 1.
    let t = congruence::t_sum(2, 4, 1, 4, 0).unwrap();
    let perturbed = RatPair::new(t.num.add(&BiPoly::one()), t.den.clone()).unwrap();
    let claim = CongruenceClaim {
        lhs: t,
        rhs: perturbed,
        modulus: cyclotomic(2),
        clear_constant: 1,
    };
    let cert = check_congruence(&claim, "probe-lucas", vec![]).unwrap();
    if !fails_with_remainder(&cert) {
        failures.push("lucas probe did not fail with remainder".into());
    }

    // WL family: corrupt the correction constant (b^2-1)nm(n-m) -> +1.
    let (b, n, m) = (5u64, 2u64, 1u64);
    let lhs = RatPair::new(
        BiPoly::constant(q_binomial(b * n, (b * m) as i64)),
        IntPoly::one(),
    )
    .unwrap();
    let sigma24 = IntPoly::monomial(24, (10 * (n - m) * m) as usize);
    let wrong = BigInt::from((b * b - 1) * n * m * (n - m) + 1);
    let rhs_poly = sigma24
        .add(&one_minus_qpow(b).pow(2).mul_scalar(&wrong))
        .mul(&q_binomial(n, m as i64).subst_qpow(b as u32));
    let rhs = RatPair::new(BiPoly::constant(rhs_poly), IntPoly::constant(24)).unwrap();
    let claim = CongruenceClaim {
        lhs,
        rhs,
        modulus: cyclotomic(b).pow(3),
        clear_constant: 24,
    };
    let cert = check_congruence(&claim, "probe-wl", vec![]).unwrap();
    if !fails_with_remainder(&cert) {
        failures.push("wl probe did not fail with remainder".into());
    }

    // Andrews family: shift the cleared numerator by q.
    let (b, j) = (5u64, 1u64);
    let n_poly = qlacuna::qcombo::q_pochhammer_qpow(j * b + 1, b - 1).sub(
        &qlacuna::qcombo::q_pochhammer_qpow(1, b - 1).mul_qpow((j * 10) as usize),
    );
    let d_poly = one_minus_qpow((j + 1) * b).mul(&one_minus_qpow(j * b));
    let cleared = n_poly
        .mul_scalar(&BigInt::from(24))
        .sub(&d_poly.mul_scalar(&BigInt::from((b * b - 1) * b)))
        .add(&IntPoly::monomial(1, 1));
    let modulus = d_poly.mul(&cyclotomic(b));
    let rem = cleared.reduce_mod(&modulus).unwrap();
    if rem.is_zero() {
        failures.push("andrews probe did not leave a remainder".into());
    }

    // Final-theorem family: perturbed z-polynomial against zero.
    let lhs = RatPair::new(BiPoly::z_monomial(IntPoly::one(), 5), IntPoly::one()).unwrap();
    let rhs = RatPair::new(BiPoly::zero(), IntPoly::one()).unwrap();
    let claim = CongruenceClaim {
        lhs,
        rhs,
        modulus: cyclotomic(5).pow(3),
        clear_constant: 24,
    };
    let cert = check_congruence(&claim, "probe-thm3", vec![]).unwrap();
    if !fails_with_remainder(&cert) {
        failures.push("thm3 probe did not fail with remainder".into());
    }

    // Classical family: unreachable valuation bound.
    let sum = classical::lacunary_int_sum(5, 3, 0, 0, FactorMode::Binomial);
    let cert = classical::verify_valuation_bound("probe-classical", vec![], &sum, 3, 99);
    if !fails_with_remainder(&cert) {
        failures.push("classical probe did not fail with witness".into());
    }

    // sdcq/sdc family: perturbed difference with too-small valuation.
    let cert =
        classical::verify_valuation_bound("probe-sdc", vec![], &BigInt::from(26), 5, 3);
    if !fails_with_remainder(&cert) {
        failures.push("sdc probe did not fail with witness".into());
    }

    report("criterion 10 (soundness probes)", &failures);
}

/// Cross-module invariant from the lacunary spec: the q = 1 collapse of the
/// sum equals the integer lacunary sum for every h, and the q = 1 value of
/// the expanded divisor has p-adic valuation at least the strengthened
/// integer bound when c = p^alpha (equal when no exponent was clamped).
#[test]
fn lacunary_bridge_and_divisor_valuation() {
    let mut failures = Vec::new();
    for (p, alpha) in [(2u64, 1u32), (2, 2), (3, 1), (5, 1)] {
        let c = p.pow(alpha) as u32;
        for n in 1..=20u32 {
            for r in 0..c as i64 {
                for l in 0..=3u32 {
                    for h in [-1i64, 0, 1] {
                        // include representatives outside [0, c) to cover
                        // the reflected negative-upper-index terms
                        for r in [r, r + c as i64, r - 2 * c as i64] {
                            let params = LacunaryParams::new(n, c, r, l, h).unwrap();
                            let poly_side = lacunary::lacunary_sum_at_one(&params);
                            let int_side =
                                classical::lacunary_int_sum(n, c, r, l, FactorMode::Binomial);
                            if poly_side != int_side {
                                failures.push(format!("bridge n={n} c={c} r={r} l={l} h={h}"));
                            }
                        }
                    }
                    let ctx = PadicContext::new(p, alpha).unwrap();
                    let bound = classical::sdt_bound(&ctx, n, r, l).max(0) as u64;
                    let params = LacunaryParams::new(n, c, r, l, 0).unwrap();
                    let (divisor, clamped) = lacunary::theorem1_divisor_detail(&params);
                    let value = divisor.expand().eval_at_one();
                    let val = classical::nu_p(&value, p).unwrap();
                    // Per-factor clamping only ever strengthens the divisor,
                    // so its q=1 valuation dominates the integer bound; for
                    // l = 0 no clamping is possible and they agree exactly.
                    let consistent = if l == 0 && !clamped {
                        val == bound
                    } else {
                        val >= bound
                    };
                    if !consistent {
                        failures.push(format!(
                            "divisor valuation n={n} c={c} r={r} l={l}: nu={val} bound={bound}"
                        ));
                    }
                }
            }
        }
    }
    report("lacunary bridge + divisor valuation vs integer bound", &failures);
}
