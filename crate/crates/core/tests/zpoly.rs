mod common;

use genericity::ffpoly::{is_prime, PrimeField};
use genericity::matgroup::IntMatrix;
use genericity::zpoly::{
    certify_galois_sn, certify_power_irreducible, cyclotomic, discriminant, expand_factors, factor_over_z, is_cyclotomic_product,
    is_irreducible_over_z, GaloisVerdict, IntPoly, Refutation, Verdict,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::Rng;

/// Random monic irreducible over Z of degree `d`: resample until its
/// reduction mod some small prime is irreducible.
fn random_irreducible(rng: &mut impl Rng, d: usize) -> IntPoly {
    loop {
        let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(-6..=6)).collect();
        c.push(1);
        let f = IntPoly::from_i64(&c);
        for p in [3u64, 5, 7, 11, 13] {
            if genericity::ffpoly::is_irreducible(&f.to_fp(PrimeField::new(p).unwrap())) {
                return f;
            }
        }
    }
}

fn sorted(mut v: Vec<(IntPoly, u32)>) -> Vec<(Vec<BigInt>, u32)> {
    let mut out: Vec<_> = v.drain(..).map(|(f, m)| (f.coeffs().to_vec(), m)).collect();
    out.sort();
    out
}

#[test]
fn zassenhaus_recovers_500_seeded_products() {
    let mut rng = common::rng(21);
    for _ in 0..500 {
        let mut parts: Vec<IntPoly> = Vec::new();
        let mut total = 0;
        loop {
            // repeat an earlier factor now and then
            let g = if !parts.is_empty() && rng.gen_bool(0.2) {
                parts[rng.gen_range(0..parts.len())].clone()
            } else {
                let d = rng.gen_range(1..=4);
                random_irreducible(&mut rng, d)
            };
            if total + g.deg() > 12 {
                break;
            }
            total += g.deg();
            parts.push(g);
            if rng.gen_bool(0.3) {
                break;
            }
        }
        let mut expected: Vec<(IntPoly, u32)> = Vec::new();
        for g in &parts {
            match expected.iter_mut().find(|(h, _)| h == g) {
                Some(e) => e.1 += 1,
                None => expected.push((g.clone(), 1)),
            }
        }
        let f = expand_factors(&expected);
        let got = factor_over_z(&f).unwrap();
        assert_eq!(sorted(got), sorted(expected), "f = {f}");
    }
}

fn euler_phi(k: usize) -> usize {
    (1..=k).filter(|&i| num_integer::gcd(i, k) == 1).count()
}

#[test]
fn cyclotomic_products_of_total_degree_at_most_10() {
    let ks: Vec<usize> = (1..=30).filter(|&k| euler_phi(k) <= 10).collect();
    // every multiset of the allowed indices with sum of phi at most 10
    fn walk(ks: &[usize], start: usize, budget: usize, acc: &mut Vec<usize>, seen: &mut usize) {
        if !acc.is_empty() {
            let f = acc.iter().fold(IntPoly::one(), |f, &k| f.mul(&cyclotomic(k)));
            assert!(is_cyclotomic_product(&f).unwrap(), "{acc:?}");
            *seen += 1;
        }
        for i in start..ks.len() {
            let phi = euler_phi(ks[i]);
            if phi <= budget {
                acc.push(ks[i]);
                walk(ks, i, budget - phi, acc, seen);
                acc.pop();
            }
        }
    }
    let mut seen = 0;
    walk(&ks, 0, 10, &mut Vec::new(), &mut seen);
    assert!(seen > 1000);
    let salem = IntPoly::from_i64(&[1, -1, 0, -1, -1, -1, 0, -1, 1]);
    assert!(!is_cyclotomic_product(&salem.mul(&cyclotomic(3))).unwrap());
}

#[test]
fn certified_polynomials_have_irreducible_companion_powers() {
    let mut rng = common::rng(23);
    let mut certified = 0;
    for _ in 0..120 {
        let d = rng.gen_range(2..=6);
        let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(-5..=5)).collect();
        c.push(1);
        let f = IntPoly::from_i64(&c);
        if c[0] == 0 || !genericity::zpoly::is_squarefree_z(&f) || is_cyclotomic_product(&f).unwrap() {
            continue;
        }
        if certify_power_irreducible(&f, 200).unwrap().verdict != Verdict::Certified {
            continue;
        }
        assert_eq!(certify_galois_sn(&f, 200).unwrap().verdict, GaloisVerdict::CertifiedSn);
        certified += 1;
        let comp = IntMatrix::companion(&f).unwrap();
        for k in 2..=6 {
            assert!(is_irreducible_over_z(&comp.pow(k).char_poly()).unwrap(), "{f} power {k}");
        }
    }
    assert!(certified > 40, "only {certified} certified");
}

#[test]
fn full_symmetric_group_alone_does_not_protect_powers() {
    for (c, k) in [(vec![4i64, 2, 1], 3u32), (vec![-2, 0, 0, 1], 3), (vec![3, 0, 1], 2)] {
        let f = IntPoly::from_i64(&c);
        assert_eq!(certify_galois_sn(&f, 200).unwrap().verdict, GaloisVerdict::CertifiedSn);
        assert!(!is_cyclotomic_product(&f).unwrap());
        let power = IntMatrix::companion(&f).unwrap().pow(k).char_poly();
        assert!(!is_irreducible_over_z(&power).unwrap());
        assert_eq!(
            certify_power_irreducible(&f, 200).unwrap().verdict,
            Verdict::Refuted(Refutation::CommonPower(k as usize))
        );
    }
}

#[test]
fn galois_evidence_avoids_ramified_primes() {
    let mut rng = common::rng(24);
    for _ in 0..100 {
        let d = rng.gen_range(2..=7);
        let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(-9..=9)).collect();
        c.push(1);
        let f = IntPoly::from_i64(&c);
        if !genericity::zpoly::is_squarefree_z(&f) {
            continue;
        }
        let cert = certify_galois_sn(&f, 300).unwrap();
        for (p, t) in &cert.evidence {
            assert!(is_prime(*p));
            assert!(!(&cert.discriminant % BigInt::from(*p)).is_zero(), "{f}: {p} ramified");
            assert_eq!(t.degree() as usize, d);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// disc of a product of distinct linear factors is the product of squared
    /// root differences.
    #[test]
    fn discriminant_from_roots(roots in prop::collection::btree_set(-20i64..=20, 2..7)) {
        let roots: Vec<i64> = roots.into_iter().collect();
        let f = roots.iter().fold(IntPoly::one(), |f, &r| f.mul(&IntPoly::from_i64(&[-r, 1])));
        let mut expected = BigInt::one();
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                expected *= BigInt::from((roots[i] - roots[j]).pow(2));
            }
        }
        prop_assert_eq!(discriminant(&f).unwrap(), expected);
    }

    #[test]
    fn factors_multiply_back(c in prop::collection::vec(-30i64..=30, 1..9)) {
        let mut c = c;
        c.push(1);
        let f = IntPoly::from_i64(&c);
        let factors = factor_over_z(&f).unwrap();
        prop_assert_eq!(expand_factors(&factors), f);
        for (g, _) in &factors {
            prop_assert!(g.is_monic());
        }
    }
}
