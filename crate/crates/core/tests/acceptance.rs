//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use genericity::census::{
    borel_fiber_scan, census_factor_const_term_one, census_reducible, census_traceless, height_ball_sl2,
    scaled_float, weil_scan_ranges, CONST_TERM_ONE, PARABOLIC, REDUCIBLE, TRACELESS,
};
use genericity::experiments::{
    run_galois_trend, run_pa_trend, run_reducibility_trend, run_restricted_splitting,
    run_strong_irreducibility_trend, ExperimentConfig, GroupFamily, CERTIFIED_PA, CERTIFIED_SN,
    STRONGLY_IRREDUCIBLE,
};
use genericity::ffpoly::DEFAULT_ENUMERATION_BUDGET;
use genericity::kirby::kirby_matrix;
use genericity::matgroup::norms::frobenius_power_root;
use genericity::matgroup::{
    enumerate_standard, frobenius_norm, is_symplectic, operator_norm, spectral_radius, standard_generators,
    GroupKind, IntMatrix,
};
use genericity::walks::{
    exact_distribution, fit_decay_rate, ln_rational, transfer_spectrum, tv_distance_to_uniform, tv_series,
    DecoratedGraph, Endpoints,
};
use genericity::zpoly::{certify_galois_sn, is_irreducible_over_z, GaloisVerdict, IntPoly};
use num_rational::BigRational;
use rand::Rng;

type Outcome = Result<(bool, String), Box<dyn std::error::Error>>;

const BUDGET: usize = 1_000_000;
const SEED: u64 = 20261018;
const TREND_SAMPLES: usize = 2000;
const TREND_LENGTHS: [usize; 5] = [5, 10, 20, 50, 100];

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

/// Runs one criterion, prints its line, and reports whether it passed.
fn criterion(index: u32, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let in_time = limit.map_or(true, |l| elapsed <= l);
    let (passed, detail) = match result {
        Ok((ok, detail)) => (ok && in_time, detail),
        Err(e) => (false, format!("error: {e}")),
    };
    let timing = match limit {
        Some(l) => format!("{:.1}s of {}s", elapsed.as_secs_f64(), l.as_secs()),
        None => format!("{:.1}s", elapsed.as_secs_f64()),
    };
    let timing = if in_time { timing } else { format!("{timing}, over the limit") };
    println!(
        "{} {index:>2} {name}: {detail} [{timing}]",
        if passed { "PASS" } else { "FAIL" }
    );
    passed
}

fn group_order(kind: GroupKind, p: u128) -> u128 {
    match kind {
        GroupKind::SL(n) => {
            let n = n as u32;
            p.pow(n * (n - 1) / 2) * (2..=n).map(|i| p.pow(i) - 1).product::<u128>()
        }
        GroupKind::Sp(n) => {
            let n = n as u32;
            p.pow(n * n) * (1..=n).map(|i| p.pow(2 * i) - 1).product::<u128>()
        }
        GroupKind::GL(n) => group_order(GroupKind::SL(n), p) * (p - 1),
    }
}

fn group_orders() -> Outcome {
    let cases = [
        (GroupKind::SL(2), 3, 24),
        (GroupKind::SL(2), 5, 120),
        (GroupKind::SL(2), 7, 336),
        (GroupKind::SL(3), 2, 168),
        (GroupKind::Sp(2), 3, 51840),
    ];
    let mut ok = true;
    let mut got = Vec::new();
    for (kind, p, expected) in cases {
        let n = enumerate_standard(kind, p, BUDGET)?.len() as u128;
        ok &= n == expected && n == group_order(kind, p as u128);
        got.push(format!("{kind} mod {p} = {n}"));
    }
    Ok((ok, got.join(", ")))
}

fn mixing_fixture() -> Outcome {
    let graph = DecoratedGraph::complete_with_loops(standard_generators(GroupKind::SL(2), true)?)?;
    let table = graph.group_table(3, BUDGET)?;
    let spectrum = transfer_spectrum(&graph, &table)?;
    let (l1, l2) = (spectrum.lambda1(), spectrum.lambda2());
    let a = l2 < l1;

    let series = tv_series(&graph, &table, 30)?;
    let log_r = (l2 / l1).ln();
    // C is fitted at N = 4, so the comparison starts at N = 5
    let ln_c = ln_rational(&series[3].1) - 4.0 * log_r;
    let b = series[4..].iter().all(|(n, tv)| ln_rational(tv) < ln_c + *n as f64 * log_r);

    let fit = fit_decay_rate(&series[3..])?;
    let c = (fit.slope - log_r).abs() <= 0.05 * log_r.abs();

    let mut worst = 0.0f64;
    for i in 0..graph.vertex_count() {
        for j in 0..graph.vertex_count() {
            let d = exact_distribution(&graph, &table, 30, Endpoints::Between(i, j))?;
            worst = worst.max(ln_rational(&tv_distance_to_uniform(&d)).exp());
        }
    }
    let d = worst < 1e-4;
    Ok((
        a && b && c && d,
        format!(
            "(a) lambda1 = {l1:.6}, lambda2 = {l2:.6}; (b) TV < C r^N for N = 5..30: {b}; \
             (c) slope {:.5} vs log ratio {log_r:.5}; (d) max endpoint TV at N = 30: {worst:.3e}",
            fit.slope
        ),
    ))
}

fn dp_vs_enumeration() -> Outcome {
    let mut compared = 0;
    let mut ok = true;
    for (_, graph, table) in common::walk_fixtures() {
        ok &= graph.vertex_count() <= 4 && table.len() <= 24;
        let n = graph.vertex_count();
        let mut ends = vec![Endpoints::All];
        ends.extend((0..n).flat_map(|i| (0..n).map(move |j| Endpoints::Between(i, j))));
        for length in 1..=6 {
            for &e in &ends {
                let (counts, total) = common::enumerate_walks(&graph, &table, length, e);
                let dp = exact_distribution(&graph, &table, length, e);
                if total == 0u32.into() {
                    ok &= dp.is_err();
                    continue;
                }
                let dp = dp?;
                ok &= (0..table.len()).all(|g| {
                    dp.probability(g) == BigRational::new(counts[g].clone().into(), total.clone().into())
                });
                compared += 1;
            }
        }
    }
    Ok((ok, format!("{compared} exact laws compared on {} fixtures", common::walk_fixtures().len())))
}

fn kirby_round_trips() -> Outcome {
    let mut rng = common::rng(SEED);
    let mut passed = 0;
    for i in 0..200 {
        let p = common::random_reciprocal(&mut rng, 1 + i % 5, 10);
        let m = kirby_matrix(&p)?;
        if is_symplectic(&m)?.holds() && m.char_poly() == p {
            passed += 1;
        }
    }
    Ok((passed == 200, format!("{passed}/200 symplectic with the prescribed char poly")))
}

fn chavdarov() -> Outcome {
    let bound = BigRational::new(3.into(), 4.into());
    let mut ok = true;
    let mut parts = Vec::new();
    for p in [5u64, 7, 11, 13] {
        let r = census_reducible(GroupKind::SL(2), p, BUDGET)?;
        let f = r.fraction(REDUCIBLE);
        ok &= f < bound;
        parts.push(format!("p={p}: {}/{}", r.count(REDUCIBLE), r.total));
    }
    // oracle: x^2 - t x + 1 splits iff t^2 - 4 is a square mod 5
    let p = 5u64;
    let mut oracle = 0u128;
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d + p * p - b * c) % p == 1 {
                        let t = (a + d) % p;
                        let disc = (t * t + 4 * p - 4) % p;
                        if (0..p).any(|x| x * x % p == disc) {
                            oracle += 1;
                        }
                    }
                }
            }
        }
    }
    let at5 = census_reducible(GroupKind::SL(2), 5, BUDGET)?.count(REDUCIBLE);
    ok &= at5 == oracle && oracle == 80;
    Ok((ok, format!("{}; oracle at p=5: {oracle}/120", parts.join(", "))))
}

fn rare_events() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for p in [3u64, 5, 7, 11, 13] {
        let one = scaled_float(&census_factor_const_term_one(2, p, BUDGET)?, CONST_TERM_ONE);
        let tr = scaled_float(&census_traceless(GroupKind::SL(2), p, BUDGET)?, TRACELESS);
        ok &= (0.5..=3.0).contains(&one) && (0.5..=3.0).contains(&tr);
        parts.push(format!("p={p}: {one:.3}/{tr:.3}"));
    }
    Ok((ok, format!("p x fraction (const-one/traceless) {}", parts.join(", "))))
}

fn borel_fibers() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for p in [5u64, 7, 11] {
        let fibers = borel_fiber_scan(2, p, BUDGET)?;
        ok &= fibers.len() as u64 == p * (p - 1) && fibers.iter().all(|f| f.holds());
        let lo = fibers.iter().map(|f| f.count).min().unwrap_or(0);
        let hi = fibers.iter().map(|f| f.count).max().unwrap_or(0);
        parts.push(format!("p={p}: {} fibers in [{lo}, {hi}]", fibers.len()));
    }
    Ok((ok, parts.join(", ")))
}

fn weil() -> Outcome {
    let r = weil_scan_ranges(&[(2, 5), (3, 4)], 101)?;
    Ok((
        r.holds(),
        format!(
            "{} triples, {} violations ({} of the exact-genus bound, informational)",
            r.polynomials,
            r.violations.len(),
            r.genus_violations.len()
        ),
    ))
}

fn galois() -> Outcome {
    let quintic = IntPoly::from_i64(&[-1, -1, 0, 0, 0, 1]);
    let a = certify_galois_sn(&quintic, 200)?.verdict == GaloisVerdict::CertifiedSn;
    let b = certify_galois_sn(&IntPoly::from_i64(&[1, 0, 0, 0, 1]), 500)?.verdict != GaloisVerdict::CertifiedSn;
    let fixtures: [&[i64]; 6] = [
        &[-1, -1, 0, 0, 0, 1],
        &[-1, -1, 0, 1],
        &[-1, -1, 0, 0, 1],
        &[1, 1, 0, 0, 0, 0, 1],
        &[-3, 1, 0, 0, 1],
        &[1, -3, 1],
    ];
    let mut certified = 0;
    let mut powers_ok = true;
    for c in fixtures {
        let f = IntPoly::from_i64(c);
        if certify_galois_sn(&f, 200)?.verdict != GaloisVerdict::CertifiedSn {
            continue;
        }
        certified += 1;
        let comp = IntMatrix::companion(&f)?;
        for k in 1..=6 {
            powers_ok &= is_irreducible_over_z(&comp.pow(k).char_poly())?;
        }
    }
    Ok((
        a && b && powers_ok && certified == fixtures.len(),
        format!(
            "x^5-x-1 certified: {a}; x^4+1 never certified: {b}; powers k <= 6 irreducible for {certified} certified fixtures: {powers_ok}"
        ),
    ))
}

fn trends() -> Outcome {
    let cfg = |group, rank| ExperimentConfig::new(group, rank, TREND_LENGTHS.to_vec(), TREND_SAMPLES, SEED);
    let red = run_reducibility_trend(&cfg(GroupFamily::Sl, 3))?;
    let rv = red.trend(REDUCIBLE).ok_or("no reducible trend")?;
    let a = rv.strictly_monotone && rv.separated && red.consistency_violations == 0;

    let gal = run_galois_trend(&cfg(GroupFamily::Sl, 3))?;
    let sn = gal.fraction(100, CERTIFIED_SN).ok_or("no L=100 row")?;
    let b = sn > 0.9;

    let pa = run_pa_trend(&cfg(GroupFamily::Sp, 1))?;
    let pa50 = pa.fraction(50, CERTIFIED_PA).ok_or("no L=50 row")?;
    let c = pa50 > 0.8;

    let gl = run_strong_irreducibility_trend(&cfg(GroupFamily::Gl, 3))?;
    let gv = gl.trend(STRONGLY_IRREDUCIBLE).ok_or("no strong irreducibility trend")?;
    let d = gv.strictly_monotone && gv.separated;

    let series = |r: &genericity::experiments::TrendReport, e: &str| {
        TREND_LENGTHS
            .iter()
            .map(|&l| format!("{:.3}", r.fraction(l, e).unwrap_or(f64::NAN)))
            .collect::<Vec<_>>()
            .join("/")
    };
    Ok((
        a && b && c && d,
        format!(
            "SL(3) reducible {} decreasing: {a}; certified S_n at L=100 {sn:.4} > 0.9: {b}; \
             Sp(2) certified PA at L=50 {pa50:.4} > 0.8: {c}; GL(3) strongly irreducible {} increasing: {d}",
            series(&red, REDUCIBLE),
            series(&gl, STRONGLY_IRREDUCIBLE)
        ),
    ))
}

fn restricted_splitting() -> Outcome {
    let r = run_restricted_splitting(4, 0, 1, &[11, 31, 61], DEFAULT_ENUMERATION_BUDGET)?;
    let tvs: Vec<String> = r.rows.iter().map(|row| format!("{:.5}", row.tv_restricted_f64())).collect();
    let at61 = r.rows.last().ok_or("no rows")?.tv_cycle_law_f64();
    Ok((
        r.strictly_decreasing() && at61 < 0.05,
        format!("TV(restricted, all) {} over p = 11/31/61; TV(all, S_4 law) at 61 = {at61:.5}", tvs.join("/")),
    ))
}

fn height_ball() -> Outcome {
    let mut fractions = Vec::new();
    let mut parts = Vec::new();
    for b in [5, 10, 20, 40] {
        let r = height_ball_sl2(b)?;
        parts.push(format!("B={b}: {}/{}", r.count(PARABOLIC), r.total));
        fractions.push(r.fraction(PARABOLIC));
    }
    Ok((fractions.windows(2).all(|w| w[1] < w[0]), parts.join(", ")))
}

fn norms() -> Outcome {
    let mut rng = common::rng(SEED);
    let mut sandwich = 0;
    let mut trace = 0;
    let mut gelfand = 0;
    let mut worst_gelfand = 0.0f64;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=8);
        let a = common::gaussian_matrix(&mut rng, n);
        let f = frobenius_norm(&a);
        let op = operator_norm(&a)?;
        if f / (n as f64).sqrt() <= op * (1.0 + 1e-9) && op <= f * (1.0 + 1e-9) {
            sandwich += 1;
        }

        let c = common::gaussian_complex(&mut rng, n);
        let u = common::random_unitary(&mut rng, n);
        if (&c * &u).trace().norm() <= frobenius_norm(&c) * (n as f64).sqrt() * (1.0 + 1e-12) {
            trace += 1;
        }

        let m = common::gaussian_matrix(&mut rng, 4);
        let rho = spectral_radius(&m)?;
        let e32 = (frobenius_power_root(&m, 32) - rho).abs();
        let e256 = (frobenius_power_root(&m, 256) - rho).abs();
        worst_gelfand = worst_gelfand.max(e256);
        if e256 < 0.05 && e256 < e32 {
            gelfand += 1;
        }
    }
    Ok((
        sandwich == 1000 && trace == 1000 && gelfand == 1000,
        format!(
            "sandwich {sandwich}/1000, trace inequality {trace}/1000, Gelfand {gelfand}/1000 (worst k=256 gap {worst_gelfand:.4})"
        ),
    ))
}

fn main() -> ExitCode {
    let results = [
        criterion(1, "group orders", secs(60), group_orders),
        criterion(2, "mixing on the SL(2,3) fixture", secs(30), mixing_fixture),
        criterion(3, "DP vs walk enumeration", None, dp_vs_enumeration),
        criterion(4, "Kirby round trips", secs(10), kirby_round_trips),
        criterion(5, "reducibility bounds on SL(2,p)", None, chavdarov),
        criterion(6, "O(1/p) events", None, rare_events),
        criterion(7, "Borel fibers", None, borel_fibers),
        criterion(8, "Weil scan", secs(300), weil),
        criterion(9, "Galois certification", None, galois),
        criterion(10, "genericity trends", secs(600), trends),
        criterion(11, "restricted splitting", None, restricted_splitting),
        criterion(12, "height ball", None, height_ball),
        criterion(13, "norm properties", None, norms),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
