//! Subcommand surface of the `tasep` binary.
//!
//! Every run echoes its resolved configuration into the output, JSON is the
//! canonical format (CSV is a projection), and runs with a fixed seed are
//! bit-reproducible. Exit codes: 0 on success, 1 when a requested check
//! fails, 2 on usage errors.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num::rational::BigRational;
use num::{One, Zero};
use serde_json::{json, Value};

use crate::collapse::{
    collapse_cycle, collapse_line_window, dual_collapse_cycle, particle_criterion_cycle,
    particle_criterion_line, CycleState, Site, SitePair,
};
use crate::montecarlo::{
    self, gap_law_distance, hitting_time_law, sample_collapsed_uniform, simulate_chain,
    LineParams, DEFAULT_MARGIN,
};
use crate::seq::BinarySequence;
use crate::stationary::{
    binary_segments, check_conjectures, collapse_pushforward, compositions_up_to,
    dual_collapse_pushforward, formula_distribution, generator_stationary,
    generator_stationary_three_type, mass, mass_derivative, naive_multitype_candidates,
    position_marginal, enumerate_three_type_states, CardState, ExactDistribution,
};
use crate::tree::{decode, enumerate_trees};

/// Seed used when none is given, so default runs are reproducible.
pub const DEFAULT_SEED: u64 = 20_260_825;

#[derive(Parser)]
#[command(
    name = "tasep",
    version,
    about = "Stationary measures of the TASEP with second class particles: \
             weights, collapsing, exact distributions, experiments"
)]
pub struct Cli {
    /// Output format; JSON is canonical, CSV is a flat projection.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Formula,
    Exact,
    Pushforward,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Formula => "formula",
            Mode::Exact => "exact",
            Mode::Pushforward => "pushforward",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Geometry {
    Cycle,
    Line,
}

#[derive(Subcommand)]
enum Command {
    /// Weight W(A) of a binary sequence with its recursion breakdown.
    Weight {
        /// Sequence over {0,1}; may be empty.
        #[arg(default_value = "")]
        sequence: String,
    },

    /// Collapse a pair of position sets on a cycle or a line window.
    Collapse {
        #[arg(long, value_enum, default_value_t = Geometry::Cycle)]
        geometry: Geometry,
        /// Cycle size (cycle geometry).
        #[arg(long)]
        n: Option<usize>,
        /// Window as lo:hi (line geometry).
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        /// Seed positions S, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        s: Vec<i64>,
        /// Anti-particle positions T, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        t: Vec<i64>,
        /// Use the dual procedure (particles fixed, anti-particles slide
        /// right; cycle only).
        #[arg(long)]
        dual: bool,
    },

    /// Exact stationary distribution of a cycle.
    Stationary {
        #[arg(long)]
        n: usize,
        /// Particle count (three-type process).
        #[arg(long)]
        a: Option<usize>,
        /// Anti-particle count (three-type process).
        #[arg(long)]
        b: Option<usize>,
        /// Multitype composition: counts per card value, lowest first
        /// (e.g. 1,1,1,1). Implies exact mode.
        #[arg(long, value_delimiter = ',')]
        cards: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Mode::Formula)]
        mode: Mode,
        /// Compute these modes as well and report the diff (must be empty).
        #[arg(long, value_enum, value_delimiter = ',')]
        compare: Vec<Mode>,
    },

    /// Tally the uniformized jump chain against the exact law.
    Simulate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, default_value_t = 1_000_000)]
        steps: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },

    /// Sample the collapsed uniform measure against the exact law.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },

    /// Line-window experiment: densities, pair correlation, gap law,
    /// displacement tail.
    Line {
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, default_value_t = 0.2)]
        q: f64,
        /// Central window half-width L.
        #[arg(long, default_value_t = 1000)]
        window: i64,
        #[arg(long, default_value_t = DEFAULT_MARGIN)]
        margin: i64,
        /// Number of independent windows.
        #[arg(long, default_value_t = 10)]
        samples: u64,
        /// Target number of recorded gaps.
        #[arg(long, default_value_t = 100_000)]
        gaps: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },

    /// Evaluate the multitype conjectures on every composition in range.
    Conjectures {
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 4)]
        classes_max: usize,
    },

    /// Run the full verification suite at desk scale.
    Verify {},
}

/// Entry point used by the binary.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(outcome) => {
            let rendered = match cli.format {
                Format::Json => {
                    serde_json::to_string_pretty(&outcome.value).expect("serializable")
                }
                Format::Csv => outcome.csv(),
            };
            let failed = match &cli.out {
                Some(path) => std::fs::write(path, rendered + "\n").is_err(),
                None => {
                    println!("{rendered}");
                    false
                }
            };
            if failed {
                eprintln!("error: could not write output file");
                ExitCode::from(1)
            } else if outcome.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

struct Outcome {
    value: Value,
    /// Flat rows used for the CSV projection.
    rows: Vec<(String, String)>,
    pass: bool,
}

impl Outcome {
    fn pass(value: Value, rows: Vec<(String, String)>) -> Self {
        Outcome {
            value,
            rows,
            pass: true,
        }
    }

    fn csv(&self) -> String {
        let mut out = String::from("key,value");
        for (k, v) in &self.rows {
            out.push('\n');
            out.push_str(&format!("{k},{v}"));
        }
        out
    }
}

fn rational_str(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn distribution_json(dist: &ExactDistribution) -> Value {
    let entries: Vec<Value> = dist
        .entries
        .iter()
        .map(|(state, p)| json!({ "state": state, "p": rational_str(p) }))
        .collect();
    json!(entries)
}

fn distribution_rows(dist: &ExactDistribution) -> Vec<(String, String)> {
    dist.entries
        .iter()
        .map(|(state, p)| (state.clone(), rational_str(p)))
        .collect()
}

fn dispatch(cli: &Cli) -> crate::Result<Outcome> {
    match &cli.command {
        Command::Weight { sequence } => cmd_weight(sequence),
        Command::Collapse {
            geometry,
            n,
            window,
            s,
            t,
            dual,
        } => cmd_collapse(*geometry, *n, window.as_deref(), s, t, *dual),
        Command::Stationary {
            n,
            a,
            b,
            cards,
            mode,
            compare,
        } => cmd_stationary(*n, *a, *b, cards, *mode, compare),
        Command::Simulate {
            n,
            a,
            b,
            steps,
            seed,
        } => cmd_simulate(*n, *a, *b, *steps, *seed),
        Command::Sample {
            n,
            a,
            b,
            samples,
            seed,
        } => cmd_sample(*n, *a, *b, *samples, *seed),
        Command::Line {
            p,
            q,
            window,
            margin,
            samples,
            gaps,
            seed,
        } => cmd_line(*p, *q, *window, *margin, *samples, *gaps, *seed),
        Command::Conjectures {
            n_max,
            classes_max,
        } => cmd_conjectures(*n_max, *classes_max),
        Command::Verify {} => cmd_verify(),
    }
}

fn cmd_weight(sequence: &str) -> crate::Result<Outcome> {
    let a: BinarySequence = sequence.parse()?;
    let weight = a.weight();
    let mut terms = Vec::new();
    let mut rows = vec![("weight".to_string(), weight.to_string())];
    if !a.is_empty() {
        let identity = a.weight_identity_terms()?;
        if let Some(x) = &identity.drop_last_zero {
            terms.push(json!({ "kind": "terminal-zero", "x": x.to_string(), "w": x.weight().to_string() }));
        }
        if let Some(y) = &identity.drop_first_one {
            terms.push(json!({ "kind": "initial-one", "y": y.to_string(), "w": y.weight().to_string() }));
        }
        for (x, y) in &identity.splits {
            terms.push(json!({
                "kind": "split",
                "x": x.to_string(),
                "y": y.to_string(),
                "w": (x.weight() * y.weight()).to_string(),
            }));
        }
        assert_eq!(identity.total(), weight);
    }
    for (i, t) in terms.iter().enumerate() {
        rows.push((format!("term{i}"), t["w"].as_str().unwrap_or("").to_string()));
    }
    Ok(Outcome::pass(
        json!({
            "config": { "sequence": sequence },
            "weight": weight.to_string(),
            "breakdown": terms,
        }),
        rows,
    ))
}

fn cmd_collapse(
    geometry: Geometry,
    n: Option<usize>,
    window: Option<&str>,
    s: &[i64],
    t: &[i64],
    dual: bool,
) -> crate::Result<Outcome> {
    use crate::Error;
    let pair = SitePair::new(s.iter().copied(), t.iter().copied());
    match geometry {
        Geometry::Cycle => {
            let n = n.ok_or_else(|| Error::InvalidParameter("--n required for cycle".into()))?;
            let state = if dual {
                dual_collapse_cycle(&pair, n)?
            } else {
                collapse_cycle(&pair, n)?
            };
            let criterion: Vec<bool> = if dual {
                Vec::new()
            } else {
                (0..n as i64)
                    .map(|pos| particle_criterion_cycle(pos, &pair, n))
                    .collect::<crate::Result<_>>()?
            };
            if !dual {
                for (pos, &ok) in criterion.iter().enumerate() {
                    assert_eq!(ok, state.sites()[pos] == Site::Particle);
                }
            }
            Ok(Outcome::pass(
                json!({
                    "config": { "geometry": "cycle", "n": n, "s": s, "t": t, "dual": dual },
                    "state": state.to_string(),
                    "criterion": criterion,
                }),
                vec![("state".into(), state.to_string())],
            ))
        }
        Geometry::Line => {
            let spec = window
                .ok_or_else(|| Error::InvalidParameter("--window lo:hi required for line".into()))?;
            let (lo, hi) = spec
                .split_once(':')
                .and_then(|(lo, hi)| Some((lo.parse().ok()?, hi.parse().ok()?)))
                .ok_or_else(|| Error::Parse(format!("window {spec:?} is not lo:hi")))?;
            if dual {
                return Err(Error::InvalidParameter(
                    "the dual procedure is only implemented on the cycle".into(),
                ));
            }
            let state = collapse_line_window(&pair, lo, hi)?;
            let criterion: Vec<bool> = (lo..=hi)
                .map(|pos| particle_criterion_line(pos, &pair, lo, hi))
                .collect::<crate::Result<_>>()?;
            Ok(Outcome::pass(
                json!({
                    "config": { "geometry": "line", "window": spec, "s": s, "t": t },
                    "state": state.to_string(),
                    "criterion": criterion,
                }),
                vec![("state".into(), state.to_string())],
            ))
        }
    }
}

fn cmd_stationary(
    n: usize,
    a: Option<usize>,
    b: Option<usize>,
    cards: &[usize],
    mode: Mode,
    compare: &[Mode],
) -> crate::Result<Outcome> {
    use crate::Error;
    if !cards.is_empty() {
        if cards.iter().sum::<usize>() != n {
            return Err(Error::InvalidParameter(
                "card composition must sum to --n".into(),
            ));
        }
        let dist = generator_stationary(cards)?;
        return Ok(Outcome::pass(
            json!({
                "config": { "N": n, "composition": cards, "mode": "exact" },
                "entries": distribution_json(&dist),
            }),
            distribution_rows(&dist),
        ));
    }
    let (a, b) = match (a, b) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return Err(Error::InvalidParameter(
                "either --a and --b or --cards must be given".into(),
            ))
        }
    };
    let compute = |mode: Mode| -> crate::Result<ExactDistribution> {
        match mode {
            Mode::Formula => formula_distribution(n, a, b),
            Mode::Exact => generator_stationary_three_type(n, a, b),
            Mode::Pushforward => collapse_pushforward(n, a, b),
        }
    };
    let dist = compute(mode)?;
    let mut diffs = Vec::new();
    let mut identical = true;
    for &other in compare {
        let other_dist = compute(other)?;
        if other_dist != dist {
            identical = false;
            for (state, p) in &dist.entries {
                let q = other_dist
                    .get(state)
                    .cloned()
                    .unwrap_or_else(BigRational::zero);
                if *p != q {
                    diffs.push(json!({
                        "state": state,
                        mode.name(): rational_str(p),
                        other.name(): rational_str(&q),
                    }));
                }
            }
        }
    }
    let mut outcome = Outcome::pass(
        json!({
            "config": { "N": n, "a": a, "b": b, "mode": mode.name(),
                        "compare": compare.iter().map(|m| m.name()).collect::<Vec<_>>() },
            "entries": distribution_json(&dist),
            "comparison": if compare.is_empty() {
                Value::Null
            } else if identical {
                json!("identical")
            } else {
                json!({ "diffs": diffs })
            },
        }),
        distribution_rows(&dist),
    );
    outcome.pass = identical;
    Ok(outcome)
}

fn three_type_initial(n: usize, a: usize, b: usize) -> crate::Result<CardState> {
    let states = enumerate_three_type_states(n, a, b)?;
    Ok(states
        .first()
        .expect("composition is nonempty")
        .to_cards())
}

fn cmd_simulate(n: usize, a: usize, b: usize, steps: u64, seed: u64) -> crate::Result<Outcome> {
    let initial = three_type_initial(n, a, b)?;
    let tally = simulate_chain(&initial, steps, seed);
    let symbols = retally_as_symbols(&tally);
    let exact = formula_distribution(n, a, b)?;
    let tv = symbols.total_variation(&exact);
    let rows = vec![("tv".into(), format!("{tv:.6}"))];
    Ok(Outcome::pass(
        json!({
            "config": { "N": n, "a": a, "b": b, "steps": steps, "seed": seed },
            "tallied_steps": symbols.total,
            "tv_to_exact": tv,
            "counts": symbols.counts,
        }),
        rows,
    ))
}

fn retally_as_symbols(tally: &montecarlo::Tally) -> montecarlo::Tally {
    let mut out = montecarlo::Tally::default();
    for (key, &count) in &tally.counts {
        let cards: CardState = key.parse().expect("tally keys are card words");
        let symbols = CycleState::from_cards(&cards)
            .expect("three-type composition")
            .to_string();
        *out.counts.entry(symbols).or_insert(0) += count;
        out.total += count;
    }
    out
}

fn cmd_sample(n: usize, a: usize, b: usize, samples: u64, seed: u64) -> crate::Result<Outcome> {
    let tally = sample_collapsed_uniform(n, a, b, samples, seed)?;
    let exact = formula_distribution(n, a, b)?;
    let tv = tally.total_variation(&exact);
    Ok(Outcome::pass(
        json!({
            "config": { "N": n, "a": a, "b": b, "samples": samples, "seed": seed },
            "tv_to_exact": tv,
            "counts": tally.counts,
        }),
        vec![("tv".into(), format!("{tv:.6}"))],
    ))
}

fn cmd_line(
    p: f64,
    q: f64,
    window: i64,
    margin: i64,
    samples: u64,
    gaps: u64,
    seed: u64,
) -> crate::Result<Outcome> {
    let params = LineParams {
        p,
        q,
        window,
        margin,
        seed,
    };
    params.validate()?;
    let stats = montecarlo::window_statistics(&params, samples)?;
    let mut gap_tv = Value::Null;
    let mut slope = Value::Null;
    if p + q < 1.0 {
        let law = hitting_time_law(p, q, 2000)?;
        let tally = montecarlo::gap_statistics(&params, gaps, samples.max(1) * 400)?;
        gap_tv = json!(gap_law_distance(&tally, &law));
        let tail = montecarlo::displacement_tail(&params, samples)?;
        slope = montecarlo::log_linear_slope(&tail, 10)
            .map(|s| json!(s))
            .unwrap_or(Value::Null);
    }
    let rows = vec![
        ("particle_density".into(), format!("{:.6}", stats.particle_density())),
        ("anti_density".into(), format!("{:.6}", stats.anti_density())),
        ("empty_density".into(), format!("{:.6}", stats.empty_density())),
        ("pair_correlation".into(), format!("{:.6}", stats.pair_correlation())),
    ];
    Ok(Outcome::pass(
        json!({
            "config": { "p": p, "q": q, "L": window, "M": margin,
                        "samples": samples, "gaps": gaps, "seed": seed },
            "densities": {
                "particle": stats.particle_density(),
                "anti": stats.anti_density(),
                "empty": stats.empty_density(),
            },
            "pair_correlation": stats.pair_correlation(),
            "gap_law_tv": gap_tv,
            "displacement_slope": slope,
        }),
        rows,
    ))
}

fn cmd_conjectures(n_max: usize, classes_max: usize) -> crate::Result<Outcome> {
    let mut table = Vec::new();
    let mut rows = Vec::new();
    let mut all_pass = true;
    for n in 2..=n_max {
        for composition in compositions_up_to(n, classes_max) {
            if composition.iter().filter(|&&c| c > 0).count() < 2 {
                continue;
            }
            let report = check_conjectures(&composition)?;
            let verdicts = [
                report.least_likely_are_reversed_speed_order,
                report.minimum_product_matches(),
                report.all_integer_multiples,
            ];
            all_pass &= verdicts.iter().all(|&v| v);
            let label = format!(
                "N={} [{}]",
                n,
                composition
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            );
            rows.push((
                label.clone(),
                verdicts
                    .iter()
                    .map(|&v| if v { "PASS" } else { "FAIL" })
                    .collect::<Vec<_>>()
                    .join("/"),
            ));
            table.push(json!({
                "N": n,
                "composition": composition,
                "states": report.state_count,
                "min_probability": rational_str(&report.min_probability),
                "least_likely_reversed_order": verdicts[0],
                "minimum_matches_product": verdicts[1],
                "all_integer_multiples": verdicts[2],
            }));
        }
    }
    let mut outcome = Outcome::pass(
        json!({
            "config": { "n_max": n_max, "classes_max": classes_max },
            "table": table,
            "all_pass": all_pass,
        }),
        rows,
    );
    outcome.pass = all_pass;
    Ok(outcome)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn check(name: &'static str, pass: bool, detail: String) -> Check {
    Check { name, pass, detail }
}

/// Condensed verification suite: the same properties as the acceptance
/// tests, at sizes that finish in well under a minute.
fn cmd_verify() -> crate::Result<Outcome> {
    let mut checks: Vec<Check> = Vec::new();

    // worked-example constants
    {
        let w = |s: &str| s.parse::<BinarySequence>().unwrap().weight().to_string();
        let m = mass(&"*10**10100*0101".parse::<CycleState>()?)?;
        let pass = w("1010") == "5"
            && w("1011010") == "23"
            && w("0101") == "2"
            && w("10100") == "9"
            && m == 36u32.into();
        checks.push(check("worked-example constants", pass, format!("mass={m}")));
    }

    // weight DP vs enumeration
    {
        let mut pass = true;
        for len in 0..=10usize {
            for bits in 0..(1u32 << len) {
                let seq = BinarySequence::new(
                    (0..len).map(|i| ((bits >> i) & 1) as u8).collect(),
                )?;
                if seq.weight() != (seq.enumerate_dominated()?.len() as u32).into() {
                    pass = false;
                }
            }
        }
        checks.push(check("weight DP = enumeration (len <= 10)", pass, String::new()));
    }

    // weight recursion and flow balance
    {
        let mut pass = true;
        for len in 1..=10usize {
            for bits in 0..(1u32 << len) {
                let seq = BinarySequence::new(
                    (0..len).map(|i| ((bits >> i) & 1) as u8).collect(),
                )?;
                pass &= seq.weight_identity_terms()?.total() == seq.weight();
                pass &= seq.flow_balanced();
            }
        }
        checks.push(check("weight recursion + flow balance (len <= 10)", pass, String::new()));
    }

    // bijection round trip and tree counts
    {
        let mut pass = true;
        for edges in 0..=7usize {
            let trees = enumerate_trees(edges)?;
            let mut counts: BTreeMap<String, u64> = BTreeMap::new();
            for t in &trees {
                pass &= decode(&t.f_encode(), &t.g_encode())? == *t;
                *counts.entry(t.f_encode().to_string()).or_insert(0) += 1;
            }
            for (key, count) in counts {
                let seq: BinarySequence = key.parse()?;
                pass &= seq.weight() == count.into();
            }
        }
        checks.push(check("tree bijection (edges <= 7)", pass, String::new()));
    }

    // exact distribution equivalences
    {
        let mut pass = true;
        for n in 2..=6usize {
            for a in 1..n {
                for b in 1..=(n - a) {
                    let formula = formula_distribution(n, a, b)?;
                    pass &= formula == generator_stationary_three_type(n, a, b)?;
                    pass &= formula == collapse_pushforward(n, a, b)?;
                    pass &= formula == dual_collapse_pushforward(n, a, b)?;
                    pass &= formula.total().is_one();
                }
            }
        }
        checks.push(check("formula = generator = pushforward (N <= 6)", pass, String::new()));
    }

    // mass derivative, minimum, integrality, marginals
    {
        let mut pass = true;
        for n in 2..=7usize {
            for a in 0..=n {
                for b in 0..=(n - a) {
                    if a + b == n {
                        continue;
                    }
                    for x in enumerate_three_type_states(n, a, b)? {
                        pass &= mass_derivative(&x)?.is_zero();
                    }
                    let dist = formula_distribution(n, a, b)?;
                    let (min, _) = dist.minimum().unwrap();
                    pass &= dist.entries.values().all(|p| (p / &min).is_integer());
                    pass &= position_marginal(&dist, Site::Particle)?
                        .values()
                        .collect::<std::collections::BTreeSet<_>>()
                        .len()
                        <= 1;
                }
            }
        }
        checks.push(check("mass flow, integrality, marginals (N <= 7)", pass, String::new()));
    }

    // quick Monte Carlo consistency
    {
        let exact = formula_distribution(5, 2, 1)?;
        let tally = retally_as_symbols(&simulate_chain(
            &three_type_initial(5, 2, 1)?,
            2_000_000,
            DEFAULT_SEED,
        ));
        let tv_sim = tally.total_variation(&exact);
        let exact6 = formula_distribution(6, 2, 2)?;
        let tv_sample = sample_collapsed_uniform(6, 2, 2, 200_000, DEFAULT_SEED)?
            .total_variation(&exact6);
        checks.push(check(
            "Monte Carlo consistency",
            tv_sim < 0.05 && tv_sample < 0.03,
            format!("tv_sim={tv_sim:.4} tv_sample={tv_sample:.4}"),
        ));
    }

    // multitype: conjectures and the failing naive candidates
    {
        let mut pass = true;
        for n in 2..=5usize {
            for composition in compositions_up_to(n, 4) {
                if composition.iter().filter(|&&c| c > 0).count() < 2 {
                    continue;
                }
                let report = check_conjectures(&composition)?;
                pass &= report.least_likely_are_reversed_speed_order
                    && report.minimum_product_matches()
                    && report.all_integer_multiples;
            }
        }
        let exact = generator_stationary(&[1, 1, 1, 1])?;
        pass &= exact.get("1324") != exact.get("1423");
        for candidate in naive_multitype_candidates(&[1, 1, 1, 1])? {
            pass &= candidate.distribution != exact;
        }
        checks.push(check("multitype conjectures + naive-candidate mismatch", pass, String::new()));
    }

    // segment sanity from the worked example
    {
        let segs = binary_segments(&"*10**10100*0101".parse::<CycleState>()?)?;
        let pass = segs.len() == 3;
        checks.push(check("segment decomposition", pass, format!("{segs:?}")));
    }

    let all_pass = checks.iter().all(|c| c.pass);
    let rows = checks
        .iter()
        .map(|c| (c.name.to_string(), if c.pass { "PASS" } else { "FAIL" }.to_string()))
        .collect();
    let report: Vec<Value> = checks
        .iter()
        .map(|c| json!({ "check": c.name, "pass": c.pass, "detail": c.detail }))
        .collect();
    for c in &checks {
        eprintln!("{} {}", if c.pass { "PASS" } else { "FAIL" }, c.name);
    }
    let mut outcome = Outcome::pass(json!({ "checks": report, "all_pass": all_pass }), rows);
    outcome.pass = all_pass;
    Ok(outcome)
}
