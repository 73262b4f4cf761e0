use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{Check, ExperimentConfig};
use crate::certify::{certify_pseudo_anosov, certify_strongly_irreducible, PAVerdict};
use crate::error::{invalid, Result};
use crate::ffpoly::{is_irreducible, PrimeField};
use crate::matgroup::IntMatrix;
use crate::walks::{sample_rng, sample_word, DecoratedGraph};
use crate::zpoly::{certify_galois_sn, certify_power_irreducible, is_irreducible_over_z, GaloisVerdict, Verdict};

pub const REDUCIBLE: &str = "reducible";
pub const REDUCIBLE_MOD_ALL: &str = "reducible_mod_5_7_11";
pub const CERTIFIED_SN: &str = "certified_sn";
pub const POWER_IRREDUCIBLE: &str = "power_irreducible";
pub const CERTIFIED_PA: &str = "certified_pseudo_anosov";
pub const STRONGLY_IRREDUCIBLE: &str = "strongly_irreducible";

/// Primes for the local side of the reducibility cross-check.
pub const CROSS_CHECK_PRIMES: [u64; 3] = [5, 7, 11];

const WILSON_Z: f64 = 1.959_963_984_540_054;

/// Wilson score interval at 95%.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub estimate: f64,
    pub lower: f64,
    pub upper: f64,
}

impl Interval {
    pub fn wilson(successes: u64, trials: u64) -> Self {
        assert!(trials > 0 && successes <= trials);
        let n = trials as f64;
        let phat = successes as f64 / n;
        let z2 = WILSON_Z * WILSON_Z;
        let denom = 1.0 + z2 / n;
        let center = (phat + z2 / (2.0 * n)) / denom;
        let half = WILSON_Z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
        // the exact interval contains phat; clamping absorbs rounding at 0 and 1
        Interval {
            estimate: phat,
            lower: (center - half).clamp(0.0, phat),
            upper: (center + half).clamp(phat, 1.0),
        }
    }

    pub fn radius(&self) -> f64 {
        (self.upper - self.lower) / 2.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Increasing,
    Decreasing,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrendRow {
    pub length: usize,
    pub samples: u64,
    pub counts: BTreeMap<String, u64>,
    pub intervals: BTreeMap<String, Interval>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrendVerdict {
    pub event: String,
    pub direction: Direction,
    /// Point estimates move strictly in `direction` at every step.
    pub strictly_monotone: bool,
    /// Last and first estimates differ in `direction` by more than the sum
    /// of their interval radii.
    pub separated: bool,
}

impl TrendVerdict {
    pub fn holds(&self) -> bool {
        self.separated
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrendReport {
    pub experiment: String,
    pub group: String,
    pub seed: u64,
    pub rows: Vec<TrendRow>,
    pub trends: Vec<TrendVerdict>,
    /// Samples reducible over `Z` but irreducible modulo one of
    /// `CROSS_CHECK_PRIMES`; always zero for a correct factorizer.
    pub consistency_violations: u64,
}

impl TrendReport {
    pub fn trend(&self, event: &str) -> Option<&TrendVerdict> {
        self.trends.iter().find(|t| t.event == event)
    }

    pub fn fraction(&self, length: usize, event: &str) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.length == length)
            .and_then(|r| r.intervals.get(event))
            .map(|i| i.estimate)
    }

    pub fn all_trends_hold(&self) -> bool {
        self.trends.iter().all(TrendVerdict::holds) && self.consistency_violations == 0
    }

    /// One row per (length, event).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("experiment,length,samples,event,count,fraction,lower,upper\n");
        for row in &self.rows {
            for (event, count) in &row.counts {
                let i = row.intervals[event];
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{:.6},{:.6},{:.6}",
                    self.experiment, row.length, row.samples, event, count, i.estimate, i.lower, i.upper
                );
            }
        }
        out
    }

    /// Two columns `length<TAB>fraction` for one event.
    pub fn to_tsv(&self, event: &str) -> String {
        let mut out = format!("length\t{event}\n");
        for row in &self.rows {
            if let Some(i) = row.intervals.get(event) {
                let _ = writeln!(out, "{}\t{:.6}", row.length, i.estimate);
            }
        }
        out
    }
}

/// Per-sample outcome: event flags plus a cross-check failure flag.
type Classifier<'a> = dyn Fn(&IntMatrix) -> Result<(Vec<bool>, bool)> + Sync + 'a;

fn run_trend(
    cfg: &ExperimentConfig,
    experiment: &str,
    events: &[(&str, Direction)],
    graph: &DecoratedGraph,
    classify: &Classifier<'_>,
) -> Result<TrendReport> {
    cfg.validate()?;
    let seed = cfg.seed();
    let mut rows = Vec::new();
    let mut consistency_violations = 0u64;
    for (li, &length) in cfg.lengths.iter().enumerate() {
        let outcomes: Vec<(Vec<bool>, bool)> = (0..cfg.samples as u64)
            .into_par_iter()
            .map(|si| {
                let mut rng = sample_rng(seed, ((li as u64) << 32) | si);
                classify(&sample_word(graph, length, &mut rng))
            })
            .collect::<Result<_>>()?;
        let mut counts = BTreeMap::new();
        let mut intervals = BTreeMap::new();
        for (ei, (name, _)) in events.iter().enumerate() {
            let c = outcomes.iter().filter(|o| o.0[ei]).count() as u64;
            counts.insert(name.to_string(), c);
            intervals.insert(name.to_string(), Interval::wilson(c, cfg.samples as u64));
        }
        consistency_violations += outcomes.iter().filter(|o| o.1).count() as u64;
        rows.push(TrendRow {
            length,
            samples: cfg.samples as u64,
            counts,
            intervals,
        });
    }
    let trends = events
        .iter()
        .map(|&(name, direction)| trend_verdict(&rows, name, direction))
        .collect();
    Ok(TrendReport {
        experiment: experiment.to_string(),
        group: cfg.kind().to_string(),
        seed,
        rows,
        trends,
        consistency_violations,
    })
}

fn trend_verdict(rows: &[TrendRow], event: &str, direction: Direction) -> TrendVerdict {
    let est: Vec<Interval> = rows.iter().map(|r| r.intervals[event]).collect();
    let sign = match direction {
        Direction::Increasing => 1.0,
        Direction::Decreasing => -1.0,
    };
    let strictly_monotone = est.windows(2).all(|w| sign * (w[1].estimate - w[0].estimate) > 0.0);
    let (first, last) = (est[0], est[est.len() - 1]);
    let separated = est.len() >= 2 && sign * (last.estimate - first.estimate) > first.radius() + last.radius();
    TrendVerdict {
        event: event.to_string(),
        direction,
        strictly_monotone,
        separated,
    }
}

fn reducible_mod(f: &crate::zpoly::IntPoly, p: u64) -> bool {
    let field = PrimeField::new(p).expect("small prime");
    !is_irreducible(&f.to_fp(field))
}

/// Fraction of sampled words with characteristic polynomial reducible over
/// `Z`; checks on every sample that `Z`-reducible implies reducible modulo
/// each of `CROSS_CHECK_PRIMES`.
pub fn run_reducibility_trend(cfg: &ExperimentConfig) -> Result<TrendReport> {
    let graph = cfg.build_graph()?;
    run_trend(
        cfg,
        "reducibility",
        &[(REDUCIBLE, Direction::Decreasing), (REDUCIBLE_MOD_ALL, Direction::Decreasing)],
        &graph,
        &|m| {
            let f = m.char_poly();
            let red = !is_irreducible_over_z(&f)?;
            let local = CROSS_CHECK_PRIMES.iter().all(|&p| reducible_mod(&f, p));
            Ok((vec![red, local], red && !local))
        },
    )
}

/// Fractions with certified `S_n` Galois group and with certified
/// irreducibility of every power.
pub fn run_galois_trend(cfg: &ExperimentConfig) -> Result<TrendReport> {
    let graph = cfg.build_graph()?;
    let budget = cfg.prime_budget;
    run_trend(
        cfg,
        "galois",
        &[(CERTIFIED_SN, Direction::Increasing), (POWER_IRREDUCIBLE, Direction::Increasing)],
        &graph,
        &|m| {
            let f = m.char_poly();
            let sn = match certify_galois_sn(&f, budget) {
                Ok(c) => c.verdict == GaloisVerdict::CertifiedSn,
                Err(crate::Error::NotSquarefree) => false,
                Err(e) => return Err(e),
            };
            let power = certify_power_irreducible(&f, budget)?.verdict == Verdict::Certified;
            // a power certificate contains an S_n certificate
            Ok((vec![sn, power], power && !sn))
        },
    )
}

/// Fraction of sampled symplectic words certified pseudo-Anosov.
pub fn run_pa_trend(cfg: &ExperimentConfig) -> Result<TrendReport> {
    if !matches!(cfg.kind(), crate::matgroup::GroupKind::Sp(_)) {
        return Err(invalid("pseudo-Anosov trend needs group = \"sp\""));
    }
    let graph = cfg.build_graph()?;
    run_trend(
        cfg,
        "pseudo-anosov",
        &[(CERTIFIED_PA, Direction::Increasing)],
        &graph,
        &|m| Ok((vec![certify_pseudo_anosov(m)?.verdict == PAVerdict::CertifiedPseudoAnosov], false)),
    )
}

/// Fraction of sampled words whose characteristic polynomial is certified
/// irreducible in every power.
pub fn run_strong_irreducibility_trend(cfg: &ExperimentConfig) -> Result<TrendReport> {
    let graph = cfg.build_graph()?;
    let budget = cfg.prime_budget;
    run_trend(
        cfg,
        "strong-irreducibility",
        &[(STRONGLY_IRREDUCIBLE, Direction::Increasing)],
        &graph,
        &|m| Ok((vec![certify_strongly_irreducible(m, budget)?.verdict == Verdict::Certified], false)),
    )
}

/// Runs every check listed in the config, in listed order.
pub fn run_checks(cfg: &ExperimentConfig) -> Result<Vec<TrendReport>> {
    if cfg.checks.is_empty() {
        return Err(invalid("config lists no checks"));
    }
    cfg.checks
        .iter()
        .map(|c| match c {
            Check::Reducible => run_reducibility_trend(cfg),
            Check::Galois => run_galois_trend(cfg),
            Check::PseudoAnosov => run_pa_trend(cfg),
            Check::StronglyIrreducible => run_strong_irreducibility_trend(cfg),
        })
        .collect()
}
