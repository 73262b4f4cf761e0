use std::fmt;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use num_bigint::BigInt;
use serde::Serialize;

use genericity::census::{self, CensusReport};
use genericity::certify::{certify_pseudo_anosov, certify_strongly_irreducible, parse_matrix_batch};
use genericity::experiments::{self, Check, ExperimentConfig, GraphChoice, GroupFamily};
use genericity::ffpoly::DEFAULT_ENUMERATION_BUDGET;
use genericity::kirby::kirby_blocks;
use genericity::matgroup::{is_symplectic, standard_generators, GroupKind, IntMatrix, DEFAULT_GROUP_BUDGET};
use genericity::walks::{
    check_conditions, exact_distribution, fit_decay_rate, transfer_spectrum, tv_distance_to_uniform, tv_series,
    DecoratedGraph, Endpoints,
};
use genericity::zpoly::{certify_galois_sn, is_irreducible_over_z, GaloisVerdict, IntPoly};

use crate::output::Run;
use crate::Command;

/// Malformed flag values that clap cannot reject on its own.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

pub fn dispatch(cmd: &Command, run: &mut Run) -> Result<()> {
    match cmd {
        Command::WalkMix(a) => walk_mix(a, run),
        Command::Census(a) => census_cmd(a, run),
        Command::Kirby(a) => kirby(a, run),
        Command::CertifyPa(a) => certify_pa(a, run),
        Command::CertifyIwip(a) => certify_iwip(a, run),
        Command::Galois(a) => galois(a, run),
        Command::RestrictedSplitting(a) => restricted_splitting(a, run),
        Command::WeilScan(a) => weil_scan(a, run),
        Command::HeightBall(a) => height_ball(a, run),
        Command::Trend(a) => trend(a, run),
    }
}

/// `sl2-mod3`, `sp4-mod5`, `gl2-mod3`: family, matrix size, prime.
pub fn parse_group_spec(s: &str) -> Result<(GroupKind, u64)> {
    let bad = || usage(format!("group {s:?} is not of the form sl2-mod3"));
    let (head, p) = s.split_once("-mod").ok_or_else(bad)?;
    let p: u64 = p.parse().map_err(|_| bad())?;
    let split = head.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
    let n: usize = head[split..].parse().map_err(|_| bad())?;
    let kind = match &head[..split] {
        "sl" => GroupKind::SL(n),
        "gl" => GroupKind::GL(n),
        "sp" if n % 2 == 0 => GroupKind::Sp(n / 2),
        _ => return Err(bad()),
    };
    Ok((kind, p))
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| usage(format!("bad {what} entry {t:?}"))))
        .collect()
}

fn parse_poly(s: &str) -> Result<IntPoly> {
    s.parse::<IntPoly>().map_err(|e| usage(format!("bad polynomial {s:?}: {e}")))
}

// ---------------------------------------------------------------- walk-mix

#[derive(Args, Debug, Serialize)]
pub struct WalkMixArgs {
    /// `k4-loops`, `complete`, `no-backtracking`, or a graph file.
    #[arg(long, default_value = "k4-loops")]
    pub graph: String,
    /// Finite group as `sl2-mod3`; for graph files only the prime is used.
    #[arg(long, default_value = "sl2-mod3")]
    pub group: String,
    /// Longest walk, counted in visited vertices.
    #[arg(long = "N", default_value_t = 24)]
    pub n: usize,
    /// Restrict to walks from vertex i to vertex j, as `i,j`.
    #[arg(long)]
    pub endpoints: Option<String>,
    /// First length used in the decay fit.
    #[arg(long, default_value_t = 4)]
    pub fit_from: usize,
    #[arg(long, default_value_t = DEFAULT_GROUP_BUDGET)]
    pub budget: usize,
}

fn build_walk_graph(name: &str, kind: GroupKind) -> Result<DecoratedGraph> {
    Ok(match name {
        "k4-loops" => {
            let gens = standard_generators(kind, true)?;
            if gens.len() != 4 {
                return Err(usage(format!("k4-loops needs 4 generators, {kind} has {}", gens.len())));
            }
            DecoratedGraph::complete_with_loops(gens)?
        }
        "complete" => DecoratedGraph::complete_with_loops(standard_generators(kind, true)?)?,
        "no-backtracking" => DecoratedGraph::no_backtracking(standard_generators(kind, true)?)?,
        path => DecoratedGraph::load(&PathBuf::from(path)).with_context(|| format!("loading graph {path}"))?,
    })
}

#[derive(Serialize)]
struct WalkSummary {
    group_order: usize,
    conditions: genericity::walks::ConditionsReport,
    spectrum: genericity::walks::TransferSpectrum,
    log_ratio: f64,
    fit: Option<genericity::walks::DecayFit>,
    endpoint_tv: Option<String>,
}

fn walk_mix(a: &WalkMixArgs, run: &mut Run) -> Result<()> {
    if a.n == 0 {
        return Err(usage("--N must be positive"));
    }
    let (kind, p) = parse_group_spec(&a.group)?;
    let graph = build_walk_graph(&a.graph, kind)?;
    let table = graph.group_table(p, a.budget)?;
    let conditions = check_conditions(&graph, &table)?;
    let series = tv_series(&graph, &table, a.n)?;
    let spectrum = transfer_spectrum(&graph, &table)?;
    let log_ratio = spectrum.ratio().ln();

    let window: Vec<_> = series.iter().filter(|(n, _)| *n >= a.fit_from).cloned().collect();
    let fit = if window.len() >= 5 || window.iter().all(|(_, v)| num_traits::Zero::is_zero(v)) {
        fit_decay_rate(&window).ok()
    } else {
        None
    };

    let endpoint_tv = match &a.endpoints {
        Some(s) => {
            let v: Vec<usize> = parse_list(s, "endpoint")?;
            if v.len() != 2 {
                return Err(usage("--endpoints takes i,j"));
            }
            let d = exact_distribution(&graph, &table, a.n, Endpoints::Between(v[0], v[1]))?;
            Some(tv_distance_to_uniform(&d))
        }
        None => None,
    };

    let mut csv = String::from("N,tv_exact,tv\n");
    for (n, tv) in &series {
        csv.push_str(&format!("{n},{tv},{:.6e}\n", num_traits::ToPrimitive::to_f64(tv).unwrap_or(f64::NAN)));
    }
    run.write_text("tv_series.csv", &csv)?;
    run.info(format!(
        "|G| = {}, lambda1 = {:.6}, lambda2 = {:.6}, log ratio = {:.5}",
        table.len(),
        spectrum.lambda1(),
        spectrum.lambda2(),
        log_ratio
    ));
    if let Some(f) = &fit {
        run.info(format!("fitted slope = {:.5} over N >= {}", f.slope, a.fit_from));
    }
    run.check("mixing conditions", conditions.passes());
    run.check("spectral gap lambda2 < lambda1", spectrum.lambda2() < spectrum.lambda1());
    if let (true, Some(f)) = (conditions.passes(), &fit) {
        if !f.degenerate {
            run.check(
                "decay slope within 5% of log(lambda2/lambda1)",
                (f.slope - log_ratio).abs() <= 0.05 * log_ratio.abs(),
            );
        }
    }
    if let Some(tv) = &endpoint_tv {
        run.info(format!("endpoint-restricted TV at N = {}: {:.6e}", a.n, num_traits::ToPrimitive::to_f64(tv).unwrap_or(f64::NAN)));
    }
    run.write_json(
        "walk_mix.json",
        &WalkSummary {
            group_order: table.len(),
            conditions,
            spectrum,
            log_ratio,
            fit,
            endpoint_tv: endpoint_tv.map(|v| v.to_string()),
        },
    )
}

// ---------------------------------------------------------------- census

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KindArg {
    Sl,
    Sp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CensusEvent {
    All,
    Reducible,
    ConstOne,
    Traceless,
    Borel,
}

#[derive(Args, Debug, Serialize)]
pub struct CensusArgs {
    #[arg(long, value_enum, default_value = "sl")]
    pub kind: KindArg,
    /// Matrix size for `sl`, half-dimension for `sp`; polynomial degree for `borel`.
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: u64,
    #[arg(long, value_enum, default_value = "all")]
    pub event: CensusEvent,
    #[arg(long, default_value_t = DEFAULT_GROUP_BUDGET)]
    pub budget: usize,
}

fn census_cmd(a: &CensusArgs, run: &mut Run) -> Result<()> {
    let kind = match a.kind {
        KindArg::Sl => GroupKind::SL(a.n),
        KindArg::Sp => GroupKind::Sp(a.n),
    };
    if a.event == CensusEvent::Borel {
        let fibers = census::borel_fiber_scan(a.n, a.p, a.budget)?;
        let mut csv = String::from("poly,p,count,lower,upper\n");
        for f in &fibers {
            let poly: Vec<String> = f.poly.iter().map(u32::to_string).collect();
            csv.push_str(&format!("\"{}\",{},{},{},{}\n", poly.join(","), f.p, f.count, f.lower, f.upper));
        }
        run.write_text("borel_fibers.csv", &csv)?;
        run.write_json("borel_fibers.json", &fibers)?;
        run.info(format!("{} polynomials, fiber counts in [{}, {}]",
            fibers.len(),
            fibers.iter().map(|f| f.count).min().unwrap_or(0),
            fibers.iter().map(|f| f.count).max().unwrap_or(0)));
        run.check("fiber bounds", fibers.iter().all(|f| f.holds()));
        return Ok(());
    }
    let mut reports: Vec<CensusReport> = Vec::new();
    let want = |e: CensusEvent| a.event == e || a.event == CensusEvent::All;
    if want(CensusEvent::Reducible) {
        reports.push(census::census_reducible(kind, a.p, a.budget)?);
    }
    if want(CensusEvent::ConstOne) {
        match kind {
            GroupKind::SL(n) => reports.push(census::census_factor_const_term_one(n, a.p, a.budget)?),
            _ if a.event == CensusEvent::ConstOne => return Err(usage("const-one runs over sl only")),
            _ => {}
        }
    }
    if want(CensusEvent::Traceless) {
        reports.push(census::census_traceless(kind, a.p, a.budget)?);
    }
    let mut csv = format!("{}\n", CensusReport::csv_header());
    for r in &reports {
        csv.push_str(&r.csv_rows());
        for (event, count) in &r.events {
            let scaled = r.scaled.get(event).map(|s| format!(", scaled {s}")).unwrap_or_default();
            run.info(format!("{}: {event} {count}/{} = {}{scaled}", r.population, r.total, r.fractions[event]));
        }
        for b in &r.bounds {
            if b.hypothesis_met {
                run.check(format!("{}: {} {}", r.population, b.name, b.bound), b.holds);
            } else {
                run.info(format!("{}: {} {} (hypothesis unmet, not asserted: holds = {})", r.population, b.name, b.bound, b.holds));
            }
        }
    }
    run.write_text("census.csv", &csv)?;
    run.write_json("census.json", &reports)
}

// ---------------------------------------------------------------- kirby

#[derive(Args, Debug, Serialize)]
pub struct KirbyArgs {
    /// Monic reciprocal polynomial, comma-separated low to high.
    #[arg(long, allow_hyphen_values = true)]
    pub poly: String,
}

fn kirby(a: &KirbyArgs, run: &mut Run) -> Result<()> {
    let f = parse_poly(&a.poly)?;
    let blocks = kirby_blocks(&f)?;
    let sym = is_symplectic(&blocks.m)?;
    let cp = blocks.m.char_poly();
    run.info(format!("M = {}", blocks.m));
    run.write_json("kirby.json", &blocks)?;
    run.check("symplectic M^T J M = J", sym.holds());
    run.check("characteristic polynomial matches", cp == f);
    Ok(())
}

// ---------------------------------------------------------------- certify

#[derive(Args, Debug, Serialize)]
pub struct MatrixArgs {
    /// One matrix as row-major integers, e.g. "2 1 1 1".
    #[arg(long, conflicts_with = "batch", required_unless_present = "batch", allow_hyphen_values = true)]
    pub matrix: Option<String>,
    /// File with one row-major matrix per line.
    #[arg(long)]
    pub batch: Option<PathBuf>,
    #[arg(long, default_value_t = experiments::DEFAULT_PRIME_BUDGET)]
    pub prime_budget: u64,
}

fn read_matrices(a: &MatrixArgs) -> Result<Vec<IntMatrix>> {
    match (&a.matrix, &a.batch) {
        (Some(m), _) => Ok(vec![m.parse::<IntMatrix>().map_err(|e| usage(format!("bad matrix: {e}")))?]),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Ok(parse_matrix_batch(&text)?)
        }
        (None, None) => Err(usage("give --matrix or --batch")),
    }
}

fn write_certificates<T: Serialize>(
    run: &mut Run,
    results: Vec<genericity::Result<T>>,
    describe: impl Fn(&T) -> String,
) -> Result<()> {
    let single = results.len() == 1;
    let mut rejected = 0;
    for (i, r) in results.into_iter().enumerate() {
        let name = format!("certificate-{i:04}.json");
        match r {
            Ok(c) => {
                run.info(format!("input {i}: {}", describe(&c)));
                run.write_json(&name, &c)?;
            }
            Err(e) if single => return Err(e.into()),
            Err(e) => {
                rejected += 1;
                run.info(format!("input {i}: rejected: {e}"));
                run.write_json(&name, &serde_json::json!({ "error": e.to_string() }))?;
            }
        }
    }
    if !single {
        run.check("every batch input accepted", rejected == 0);
    }
    Ok(())
}

fn certify_pa(a: &MatrixArgs, run: &mut Run) -> Result<()> {
    let ms = read_matrices(a)?;
    let results = genericity::certify::certify_batch(&ms, certify_pseudo_anosov);
    write_certificates(run, results, |c| format!("{:?}", c.verdict))
}

fn certify_iwip(a: &MatrixArgs, run: &mut Run) -> Result<()> {
    let ms = read_matrices(a)?;
    let budget = a.prime_budget;
    let results = genericity::certify::certify_batch(&ms, |m| certify_strongly_irreducible(m, budget));
    write_certificates(run, results, |c| format!("{:?}", c.verdict))
}

// ---------------------------------------------------------------- galois

#[derive(Args, Debug, Serialize)]
pub struct GaloisArgs {
    /// Monic integer polynomial, comma-separated low to high.
    #[arg(long, allow_hyphen_values = true)]
    pub poly: String,
    #[arg(long, default_value_t = experiments::DEFAULT_PRIME_BUDGET)]
    pub prime_budget: u64,
    /// For a certified polynomial, confirm char_poly(C(f)^k) is irreducible for k up to this.
    #[arg(long, default_value_t = 6)]
    pub powers: u32,
}

fn galois(a: &GaloisArgs, run: &mut Run) -> Result<()> {
    let f = parse_poly(&a.poly)?;
    let cert = certify_galois_sn(&f, a.prime_budget)?;
    run.info(format!("{f}: {:?} (rules {:?})", cert.verdict, cert.rules_fired));
    run.write_json("galois.json", &cert)?;
    if cert.verdict == GaloisVerdict::CertifiedSn && f.deg() >= 2 && !f.constant_term().eq(&BigInt::from(0)) {
        let c = IntMatrix::companion(&f)?;
        let mut power = c.clone();
        for k in 1..=a.powers {
            if k > 1 {
                power = power.mul(&c);
            }
            run.check(format!("char_poly(C(f)^{k}) irreducible"), is_irreducible_over_z(&power.char_poly())?);
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- restricted-splitting

#[derive(Args, Debug, Serialize)]
pub struct SplittingArgs {
    #[arg(long, default_value_t = 4)]
    pub d: usize,
    /// Index of the fixed coefficient.
    #[arg(long, default_value_t = 0)]
    pub k: usize,
    /// Value of the fixed coefficient.
    #[arg(long, default_value_t = 1)]
    pub a: u32,
    #[arg(long, default_value = "11,31,61")]
    pub primes: String,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
    pub budget: u128,
}

fn restricted_splitting(a: &SplittingArgs, run: &mut Run) -> Result<()> {
    let primes: Vec<u64> = parse_list(&a.primes, "prime")?;
    let r = experiments::run_restricted_splitting(a.d, a.k, a.a, &primes, a.budget)?;
    let mut csv = String::from("p,tv_restricted,tv_restricted_exact,tv_cycle_law,tv_cycle_law_exact\n");
    for row in &r.rows {
        csv.push_str(&format!(
            "{},{:.8},{},{:.8},{}\n",
            row.p,
            row.tv_restricted_f64(),
            row.tv_restricted,
            row.tv_cycle_law_f64(),
            row.tv_unrestricted_to_cycle_law
        ));
        run.info(format!(
            "p = {}: TV(restricted, all) = {:.6}, TV(all, S_{} law) = {:.6}",
            row.p,
            row.tv_restricted_f64(),
            a.d,
            row.tv_cycle_law_f64()
        ));
    }
    run.write_text("restricted_splitting.csv", &csv)?;
    run.write_json("restricted_splitting.json", &r)?;
    if r.rows.len() >= 2 {
        run.check("TV at largest prime below TV at smallest", r.endpoint_decrease());
    }
    Ok(())
}

// ---------------------------------------------------------------- weil-scan

#[derive(Args, Debug, Serialize)]
pub struct WeilArgs {
    #[arg(long, default_value_t = 2)]
    pub d_max: u64,
    #[arg(long, default_value_t = 3)]
    pub degf_max: usize,
    #[arg(long, default_value_t = 31)]
    pub p_max: u64,
    /// Per-exponent degree caps as `d:deg,...`; overrides --d-max/--degf-max.
    #[arg(long)]
    pub ranges: Option<String>,
}

fn weil_scan(a: &WeilArgs, run: &mut Run) -> Result<()> {
    let report = match &a.ranges {
        Some(s) => {
            let mut ranges = Vec::new();
            for part in s.split(',') {
                let (d, k) = part.split_once(':').ok_or_else(|| usage(format!("bad range {part:?}")))?;
                let d = d.trim().parse().map_err(|_| usage(format!("bad exponent {d:?}")))?;
                let k = k.trim().parse().map_err(|_| usage(format!("bad degree {k:?}")))?;
                ranges.push((d, k));
            }
            census::weil_scan_ranges(&ranges, a.p_max)?
        }
        None => census::weil_scan(a.d_max, a.degf_max, a.p_max)?,
    };
    run.info(format!(
        "{} (f, d, p) triples, {} outside the tight bound but not squarefree, {} violations, {} exact-genus violations",
        report.polynomials,
        report.filtered_non_squarefree,
        report.violations.len(),
        report.genus_violations.len()
    ));
    run.write_json("weil_scan.json", &report)?;
    run.check("point counts within the curve bounds", report.holds());
    Ok(())
}

// ---------------------------------------------------------------- height-ball

#[derive(Args, Debug, Serialize)]
pub struct HeightArgs {
    /// Entry bounds, comma-separated.
    #[arg(long, default_value = "5,10,20,40")]
    pub bounds: String,
}

fn height_ball(a: &HeightArgs, run: &mut Run) -> Result<()> {
    let bounds: Vec<i64> = parse_list(&a.bounds, "bound")?;
    let reports = bounds
        .iter()
        .map(|&b| census::height_ball_sl2(b))
        .collect::<genericity::Result<Vec<_>>>()?;
    let mut csv = format!("{}\n", CensusReport::csv_header());
    for r in &reports {
        csv.push_str(&r.csv_rows());
        run.info(format!("{}: {}/{} reducible", r.population, r.count(census::PARABOLIC), r.total));
    }
    let fracs: Vec<_> = reports.iter().map(|r| r.fraction(census::PARABOLIC)).collect();
    run.write_text("height_ball.csv", &csv)?;
    run.write_json("height_ball.json", &reports)?;
    run.check("reducible fraction nonincreasing in B", fracs.windows(2).all(|w| w[1] <= w[0]));
    Ok(())
}

// ---------------------------------------------------------------- trend

#[derive(Args, Debug, Serialize)]
pub struct TrendArgs {
    /// TOML config; flags below override its keys.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Master seed; required here or in the config.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub group: Option<FamilyArg>,
    #[arg(long)]
    pub rank: Option<usize>,
    /// Word lengths, comma-separated and strictly increasing.
    #[arg(long)]
    pub lengths: Option<String>,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Subset of reducible,galois,pseudo-anosov,strongly-irreducible.
    #[arg(long)]
    pub checks: Option<String>,
    #[arg(long, value_enum)]
    pub graph: Option<GraphArg>,
    #[arg(long)]
    pub graph_file: Option<PathBuf>,
    #[arg(long)]
    pub prime_budget: Option<u64>,
}

#[derive(Clone, Copy, Debug, clap::ValueEnum, Serialize)]
pub enum FamilyArg {
    Sl,
    Sp,
    Gl,
}

#[derive(Clone, Copy, Debug, clap::ValueEnum, Serialize)]
pub enum GraphArg {
    Complete,
    NoBacktracking,
    File,
}

fn resolve_trend_config(a: &TrendArgs) -> Result<ExperimentConfig> {
    let mut cfg = match &a.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            toml::from_str::<ExperimentConfig>(&text).map_err(genericity::Error::from)?
        }
        None => {
            let group = a.group.ok_or_else(|| usage("--group is required without --config"))?;
            let rank = a.rank.ok_or_else(|| usage("--rank is required without --config"))?;
            let lengths = a.lengths.as_deref().ok_or_else(|| usage("--lengths is required without --config"))?;
            let samples = a.samples.ok_or_else(|| usage("--samples is required without --config"))?;
            let mut c = ExperimentConfig::new(
                match group {
                    FamilyArg::Sl => GroupFamily::Sl,
                    FamilyArg::Sp => GroupFamily::Sp,
                    FamilyArg::Gl => GroupFamily::Gl,
                },
                rank,
                parse_list(lengths, "length")?,
                samples,
                0,
            );
            c.seed = None;
            c
        }
    };
    if a.config.is_some() {
        if let Some(g) = a.group {
            cfg.group = match g {
                FamilyArg::Sl => GroupFamily::Sl,
                FamilyArg::Sp => GroupFamily::Sp,
                FamilyArg::Gl => GroupFamily::Gl,
            };
        }
        if let Some(r) = a.rank {
            cfg.rank = r;
        }
        if let Some(l) = &a.lengths {
            cfg.lengths = parse_list(l, "length")?;
        }
        if let Some(s) = a.samples {
            cfg.samples = s;
        }
    }
    if let Some(s) = a.seed {
        cfg.seed = Some(s);
    }
    if cfg.seed.is_none() {
        return Err(usage("a seed is required: pass --seed or set seed in the config"));
    }
    if let Some(c) = &a.checks {
        cfg.checks = c
            .split(',')
            .map(|t| match t.trim() {
                "reducible" => Ok(Check::Reducible),
                "galois" => Ok(Check::Galois),
                "pseudo-anosov" => Ok(Check::PseudoAnosov),
                "strongly-irreducible" => Ok(Check::StronglyIrreducible),
                other => Err(usage(format!("unknown check {other:?}"))),
            })
            .collect::<Result<_>>()?;
    }
    if cfg.checks.is_empty() {
        cfg.checks = vec![Check::Reducible];
    }
    if let Some(g) = a.graph {
        cfg.graph = match g {
            GraphArg::Complete => GraphChoice::Complete,
            GraphArg::NoBacktracking => GraphChoice::NoBacktracking,
            GraphArg::File => GraphChoice::File,
        };
    }
    if let Some(f) = &a.graph_file {
        cfg.graph_file = Some(f.clone());
    }
    if let Some(b) = a.prime_budget {
        cfg.prime_budget = b;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn trend(a: &TrendArgs, run: &mut Run) -> Result<()> {
    let cfg = resolve_trend_config(a)?;
    run.set_seed(cfg.seed());
    run.set_invocation(&cfg)?;
    run.write_text("config.toml", &cfg.to_toml())?;
    for report in experiments::run_checks(&cfg)? {
        let stem = format!("trend-{}", report.experiment);
        run.write_json(&format!("{stem}.json"), &report)?;
        run.write_text(&format!("{stem}.csv"), &report.to_csv())?;
        for t in &report.trends {
            run.write_text(&format!("{stem}-{}.tsv", t.event), &report.to_tsv(&t.event))?;
        }
        for row in &report.rows {
            let parts: Vec<String> = row
                .intervals
                .iter()
                .map(|(e, i)| format!("{e} {:.4} [{:.4}, {:.4}]", i.estimate, i.lower, i.upper))
                .collect();
            run.info(format!("{} L = {}: {}", report.experiment, row.length, parts.join(", ")));
        }
        for t in &report.trends {
            run.check(format!("{} {:?} beyond interval radii", t.event, t.direction), t.holds());
        }
        if report.experiment == "reducibility" {
            run.check("Z-reducible implies reducible mod 5, 7, 11", report.consistency_violations == 0);
        }
    }
    Ok(())
}
