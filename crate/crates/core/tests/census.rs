use genericity::census::{
    borel_fiber_scan, census_factor_const_term_one, census_reducible, census_traceless, char_poly_histogram,
    height_ball_sl2, scaled_float, CONST_TERM_ONE, PARABOLIC, REDUCIBLE, TRACELESS,
};
use genericity::matgroup::{enumerate_standard, GroupKind};
use num_rational::BigRational;

const BUDGET: usize = 1_000_000;

/// Orders of the finite classical groups, from their standard product formulas.
fn order(kind: GroupKind, p: u128) -> u128 {
    match kind {
        GroupKind::SL(n) => {
            let n = n as u32;
            p.pow(n * (n - 1) / 2) * (2..=n).map(|i| p.pow(i) - 1).product::<u128>()
        }
        GroupKind::GL(n) => order(GroupKind::SL(n), p) * (p - 1),
        GroupKind::Sp(n) => {
            let n = n as u32;
            p.pow(n * n) * (1..=n).map(|i| p.pow(2 * i) - 1).product::<u128>()
        }
    }
}

#[test]
fn enumerated_orders_match_the_product_formulas() {
    let cases = [
        (GroupKind::SL(2), 2),
        (GroupKind::SL(2), 3),
        (GroupKind::SL(2), 5),
        (GroupKind::SL(2), 7),
        (GroupKind::SL(2), 11),
        (GroupKind::SL(2), 13),
        (GroupKind::SL(3), 2),
        (GroupKind::SL(3), 3),
        (GroupKind::Sp(1), 7),
        (GroupKind::Sp(2), 3),
        (GroupKind::GL(2), 5),
        (GroupKind::GL(3), 3),
    ];
    for (kind, p) in cases {
        let table = enumerate_standard(kind, p, BUDGET).unwrap();
        assert_eq!(table.len() as u128, order(kind, p as u128), "{kind} mod {p}");
    }
}

#[test]
fn census_totals_are_group_orders() {
    for (kind, p) in [(GroupKind::SL(2), 7), (GroupKind::SL(3), 3), (GroupKind::Sp(2), 3)] {
        let r = census_reducible(kind, p, BUDGET).unwrap();
        assert_eq!(r.total, order(kind, p as u128));
    }
    let hist = char_poly_histogram(2, 7, BUDGET).unwrap();
    assert_eq!(hist.values().sum::<u64>() as u128, order(GroupKind::GL(2), 7));
}

/// Reducible `SL(2, p)` elements by scanning all entry quadruples: the char
/// poly `x^2 - t x + 1` splits iff `t^2 - 4` is a square mod `p`.
fn reducible_sl2_by_entries(p: u64) -> (u64, u64) {
    let squares: Vec<bool> = (0..p).map(|a| (0..p).any(|x| x * x % p == a)).collect();
    let (mut red, mut total) = (0, 0);
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d + p * p - b * c) % p == 1 {
                        total += 1;
                        let t = (a + d) % p;
                        if squares[((t * t + 4 * p - 4) % p) as usize] {
                            red += 1;
                        }
                    }
                }
            }
        }
    }
    (red, total)
}

#[test]
fn reducibility_bounds_hold_at_every_enumerable_prime_above_four() {
    for p in [5u64, 7, 11, 13] {
        let r = census_reducible(GroupKind::SL(2), p, BUDGET).unwrap();
        let (red, total) = reducible_sl2_by_entries(p);
        assert_eq!((r.count(REDUCIBLE), r.total), (red as u128, total as u128));
        assert!(r.all_bounds_hold(), "SL(2,{p})");
        assert!(r.bounds.iter().all(|b| b.hypothesis_met));
    }
    for (kind, p) in [(GroupKind::SL(3), 5), (GroupKind::Sp(1), 7), (GroupKind::Sp(1), 11), (GroupKind::Sp(1), 13)] {
        let r = census_reducible(kind, p, BUDGET).unwrap();
        assert!(r.all_bounds_hold(), "{kind} mod {p}");
    }
}

#[test]
fn symplectic_bound_is_attained_at_sp2_mod_5() {
    // 80 of 120 elements reducible: exactly 1 - 1/3, so the strict bound fails
    let r = census_reducible(GroupKind::Sp(1), 5, BUDGET).unwrap();
    assert_eq!(r.fraction(REDUCIBLE), BigRational::new(2.into(), 3.into()));
    assert!(!r.all_bounds_hold());
}

#[test]
fn rare_events_scale_like_one_over_p() {
    for p in [3u64, 5, 7, 11, 13] {
        let one = census_factor_const_term_one(2, p, BUDGET).unwrap();
        let tr = census_traceless(GroupKind::SL(2), p, BUDGET).unwrap();
        for (r, e) in [(&one, CONST_TERM_ONE), (&tr, TRACELESS)] {
            let s = scaled_float(r, e);
            assert!((0.5..=3.0).contains(&s), "{e} at p={p}: p*fraction = {s}");
        }
    }
}

#[test]
fn borel_fibers_are_within_bounds() {
    for p in [5u64, 7] {
        let fibers = borel_fiber_scan(2, p, BUDGET).unwrap();
        assert_eq!(fibers.len() as u64, p * (p - 1));
        assert!(fibers.iter().all(|f| f.holds()));
        let sum: u64 = fibers.iter().map(|f| f.count).sum();
        assert_eq!(sum as u128, order(GroupKind::GL(2), p as u128));
    }
}

#[test]
fn height_ball_fraction_is_nonincreasing() {
    let mut prev: Option<BigRational> = None;
    for b in [2, 4, 6, 8, 12, 16] {
        let r = height_ball_sl2(b).unwrap();
        let f = r.fraction(PARABOLIC);
        if let Some(q) = &prev {
            assert!(f <= *q, "B={b}");
        }
        prev = Some(f);
    }
}
