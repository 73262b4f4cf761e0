//! Exhaustive counts over enumerable matrix groups, polynomial spaces and
//! integer height balls, compared against the corresponding theoretical
//! bounds.

mod groups;
mod height;
mod report;
mod weil;

pub use groups::{
    borel_fiber_scan, census_borel_fiber, census_factor_const_term_one, census_reducible,
    census_traceless, char_poly_histogram, reducibility_bound, scaled_float, BorelFiber,
    CONST_TERM_ONE, REDUCIBLE, TRACELESS,
};
pub use height::{height_ball_sl2, HEIGHT_BALL_MAX, PARABOLIC};
pub use report::{BoundCheck, CensusReport};
pub use weil::{
    genus_bound, plane_curve_bound, shifted_point_counts, superelliptic_bound, weil_scan, weil_scan_ranges, WeilBound,
    WeilScanReport, WeilViolation,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::{absolutely_irreducible_superelliptic, superelliptic_point_count, FpPoly, PrimeField};
    use crate::matgroup::{GroupKind, DEFAULT_GROUP_BUDGET};
    use crate::zpoly::{is_irreducible_over_z, IntPoly};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    /// All of SL(2, F_p) by brute force over entries.
    fn sl2_elements(p: u32) -> Vec<[u32; 4]> {
        let mut out = Vec::new();
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    for d in 0..p {
                        if (a * d + p * p - b * c) % p == 1 {
                            out.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn sl2_reducible_and_const_one_match_entry_scan() {
        for p in [3u32, 5, 7] {
            let els = sl2_elements(p);
            // x^2 - t x + 1 is reducible iff it has a root in F_p
            let red = els
                .iter()
                .filter(|m| {
                    let t = (m[0] + m[3]) % p;
                    (0..p).any(|x| (x * x + p * p - t * x + 1) % p == 0)
                })
                .count() as u128;
            let r = census_reducible(GroupKind::SL(2), p as u64, DEFAULT_GROUP_BUDGET).unwrap();
            assert_eq!(r.total, els.len() as u128);
            assert_eq!(r.count(REDUCIBLE), red);
            let minus_two = els.iter().filter(|m| (m[0] + m[3] + 2) % p == 0).count() as u128;
            let c = census_factor_const_term_one(2, p as u64, DEFAULT_GROUP_BUDGET).unwrap();
            assert_eq!(c.count(CONST_TERM_ONE), minus_two);
            let zero = els.iter().filter(|m| (m[0] + m[3]) % p == 0).count() as u128;
            let t = census_traceless(GroupKind::SL(2), p as u64, DEFAULT_GROUP_BUDGET).unwrap();
            assert_eq!(t.count(TRACELESS), zero);
        }
    }

    #[test]
    fn pinned_sl2_counts() {
        let r = census_reducible(GroupKind::SL(2), 5, DEFAULT_GROUP_BUDGET).unwrap();
        assert_eq!((r.total, r.count(REDUCIBLE)), (120, 80));
        assert_eq!(r.fraction(REDUCIBLE), q(2, 3));
        assert!(r.bounds[0].hypothesis_met && r.bounds[0].holds);
        let c = census_factor_const_term_one(2, 5, DEFAULT_GROUP_BUDGET).unwrap();
        assert_eq!(c.count(CONST_TERM_ONE), 25);
        assert_eq!(c.scaled_fraction(CONST_TERM_ONE).unwrap(), q(25, 24));
        let t = census_traceless(GroupKind::SL(2), 3, DEFAULT_GROUP_BUDGET).unwrap();
        assert_eq!(t.count(TRACELESS), 6);
        let small = census_reducible(GroupKind::SL(2), 3, DEFAULT_GROUP_BUDGET).unwrap();
        assert!(!small.bounds[0].hypothesis_met);
        assert!(small.all_bounds_hold());
    }

    #[test]
    fn report_serialization() {
        let r = census_reducible(GroupKind::SL(2), 5, DEFAULT_GROUP_BUDGET).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"total\":\"120\""));
        assert!(json.contains("\"reducible\":\"2/3\""));
        let back: CensusReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        let csv = r.to_csv();
        assert_eq!(csv.lines().count(), 2);
        assert!(csv.lines().nth(1).unwrap().starts_with("SL(2) over F_5,reducible,80,120,2/3,"));
    }

    #[test]
    fn borel_fibers_gl2_5() {
        let field = PrimeField::new(5).unwrap();
        let unipotent = census_borel_fiber(&FpPoly::from_i64(field, &[1, -2, 1]), DEFAULT_GROUP_BUDGET).unwrap();
        // the identity plus the p^2 - 1 nontrivial unipotents
        assert_eq!(unipotent.count, 25);
        assert_eq!((unipotent.lower, unipotent.upper), (4, 64));
        assert!(unipotent.holds());
        let elliptic = census_borel_fiber(&FpPoly::from_i64(field, &[2, 0, 1]), DEFAULT_GROUP_BUDGET).unwrap();
        // irreducible: |GL(2)| / |F_25^*| = 480 / 24
        assert_eq!(elliptic.count, 20);
        assert!(census_borel_fiber(&FpPoly::from_i64(field, &[0, 0, 1]), DEFAULT_GROUP_BUDGET).is_err());
        let scan = borel_fiber_scan(2, 5, DEFAULT_GROUP_BUDGET).unwrap();
        assert_eq!(scan.len(), 20);
        assert_eq!(scan.iter().map(|f| f.count).sum::<u64>(), 480);
    }

    #[test]
    fn height_ball_oracle() {
        for bound in [1i64, 2, 3] {
            let mut total = 0u128;
            let mut red = 0u128;
            let r = -bound..=bound;
            for a in r.clone() {
                for b in r.clone() {
                    for c in r.clone() {
                        for d in r.clone() {
                            if a * d - b * c == 1 {
                                total += 1;
                                let f = IntPoly::from_i64(&[1, -(a + d), 1]);
                                if !is_irreducible_over_z(&f).unwrap() {
                                    red += 1;
                                }
                            }
                        }
                    }
                }
            }
            let h = height_ball_sl2(bound).unwrap();
            assert_eq!((h.total, h.count(PARABOLIC)), (total, red));
        }
        assert!(height_ball_sl2(HEIGHT_BALL_MAX + 1).is_err());
    }

    #[test]
    fn weil_scan_matches_direct_counts() {
        // brute-force oracle at small primes over all monic f
        let report = weil_scan(3, 3, 13).unwrap();
        assert!(report.holds());
        for p in [2u64, 3, 5, 7] {
            let field = PrimeField::new(p).unwrap();
            for d in [2u64, 3] {
                let mut worst = 0.0f64;
                for idx in 0..p.pow(3) {
                    let c = [idx % p, idx / p % p, idx / p / p, 1];
                    let f = FpPoly::new(field, c.iter().map(|&v| v as u32).collect());
                    if !f.is_squarefree() || !absolutely_irreducible_superelliptic(&f, d).unwrap() {
                        continue;
                    }
                    let n = superelliptic_point_count(&f, d).unwrap() as f64;
                    worst = worst.max((n - p as f64).abs() - superelliptic_bound(d, 3, p));
                }
                assert!(worst <= 0.0);
            }
        }
        for (p, coeffs) in [(7u64, vec![0i64, 1, 3, 1]), (11, vec![0, 2, 0, 5, 1]), (13, vec![0, 1])] {
            let field = PrimeField::new(p).unwrap();
            let h = FpPoly::from_i64(field, &coeffs);
            for d in [2u64, 3, 4] {
                let fast = shifted_point_counts(&h, d).unwrap();
                for c in 0..p as u32 {
                    let f = h.add(&FpPoly::constant(field, c));
                    assert_eq!(fast[c as usize], superelliptic_point_count(&f, d).unwrap());
                }
            }
        }
        // y^2 = x^3 - x over F_5 has 7 affine points
        let field = PrimeField::new(5).unwrap();
        let f = FpPoly::from_i64(field, &[0, -1, 0, 1]);
        assert_eq!(superelliptic_point_count(&f, 2).unwrap(), 7);
    }

    #[test]
    fn weil_scan_flags_squares_only_as_filtered() {
        // f = (x - a)^2 gives about 2p points on y^2 = f and is filtered
        let r = weil_scan_ranges(&[(2, 2)], 31).unwrap();
        assert!(r.holds());
        assert!(r.filtered_non_squarefree > 0);
        assert!(r.genus_violations.is_empty());
    }
}
