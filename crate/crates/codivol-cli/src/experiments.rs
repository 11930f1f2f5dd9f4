//! The experiment implementations behind each subcommand. Every runner
//! produces a [`ResultTable`]; all I/O stays in `main`.

use anyhow::{bail, Result};
use serde::Serialize;

use codivol::{
    entanglement_entropy, mc_average_mi, mi_profile, mutual_information, page_average_cv,
    page_average_entropy, page_average_mi, run_quench, ChainHamiltonianParams, HaarSampler,
    InitialState, LatticeShape, PageRegime, PureState, QuenchSpec, SearchPolicy, SiteMask,
};

use crate::table::{Cell, ColumnKind, ResultTable};

const LN_2: f64 = std::f64::consts::LN_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Units {
    Nats,
    Bits,
}

impl Units {
    fn scale(&self, nats: f64) -> f64 {
        match self {
            Units::Nats => nats,
            Units::Bits => nats / LN_2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum PolicyArg {
    Contiguous,
    Exhaustive,
    Both,
}

impl PolicyArg {
    fn policies(&self) -> Vec<SearchPolicy> {
        match self {
            PolicyArg::Contiguous => vec![SearchPolicy::ContiguousRight],
            PolicyArg::Exhaustive => vec![SearchPolicy::ExhaustiveMinSize],
            PolicyArg::Both => vec![SearchPolicy::ContiguousRight, SearchPolicy::ExhaustiveMinSize],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum InitialArg {
    Neel,
    Yplus,
    Both,
}

impl InitialArg {
    fn initial_states(&self) -> Vec<(&'static str, InitialState)> {
        match self {
            InitialArg::Neel => vec![("neel", InitialState::Neel)],
            InitialArg::Yplus => vec![("yplus", InitialState::YPlus)],
            InitialArg::Both => {
                vec![("neel", InitialState::Neel), ("yplus", InitialState::YPlus)]
            }
        }
    }
}

/// Ten samples per unit time, endpoints included.
fn grid_points(t_max: f64) -> usize {
    (t_max * 10.0).round() as usize + 1
}

fn quench_trajectory(
    n: usize,
    coupling: f64,
    initial: InitialState,
    t_max: f64,
) -> Result<Vec<(f64, PureState)>> {
    let params = ChainHamiltonianParams::with_coupling(n, coupling)?;
    let times = QuenchSpec::uniform_times(t_max, grid_points(t_max))?;
    let spec = QuenchSpec::new(params, initial, times)?;
    Ok(run_quench(&spec)?)
}

fn witness_label(witness: &SiteMask) -> String {
    // 1-based site labels, matching the column headers
    witness
        .sites()
        .iter()
        .map(|s| (s + 1).to_string())
        .collect::<Vec<_>>()
        .join(";")
}

// ---------------------------------------------------------------------------
// quench-mi
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct QuenchMiConfig {
    pub n: usize,
    pub coupling: f64,
    pub t_max: f64,
    pub initial: InitialArg,
    pub units: Units,
}

/// Mutual information between the first site and each growing block
/// `2..k`, the far single site, and `2 S(1)`, along the quench.
pub fn run_quench_mi(cfg: &QuenchMiConfig) -> Result<ResultTable> {
    let n = cfg.n;
    let mut columns = vec![("state".to_string(), ColumnKind::Text), ("t".to_string(), ColumnKind::Float)];
    columns.push(("I(1;2)".to_string(), ColumnKind::Float));
    for k in 3..=n {
        columns.push((format!("I(1;2..{k})"), ColumnKind::Float));
    }
    columns.push((format!("I(1;{n})"), ColumnKind::Float));
    columns.push(("2S(1)".to_string(), ColumnKind::Float));
    let mut table = ResultTable::new("quench-mi", columns, cfg)?;
    table.set_extra_metadata(serde_json::json!({ "points": grid_points(cfg.t_max) }));

    let shape = LatticeShape::qubits(n)?;
    let a = SiteMask::single(shape, 0)?;
    let far = SiteMask::single(shape, n - 1)?;
    for (name, initial) in cfg.initial.initial_states() {
        let traj = quench_trajectory(n, cfg.coupling, initial, cfg.t_max)?;
        for (t, psi) in &traj {
            let profile = mi_profile(psi, &a, SearchPolicy::ContiguousRight)?;
            let mut row = vec![Cell::Text(name.to_string()), Cell::Float(*t)];
            for (_, value) in profile.entries() {
                row.push(Cell::Float(cfg.units.scale(value.value())));
            }
            row.push(Cell::Float(cfg.units.scale(mutual_information(psi, &a, &far)?.value())));
            row.push(Cell::Float(cfg.units.scale(2.0 * entanglement_entropy(psi, &a)?.value())));
            table.push_row(row)?;
        }
    }
    Ok(table)
}

// ---------------------------------------------------------------------------
// quench-cv
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct QuenchCvConfig {
    pub n: usize,
    pub coupling: f64,
    pub epsilon: f64,
    pub t_max: f64,
    pub initial: InitialArg,
    pub policy: PolicyArg,
}

/// Codification volume of the first site along the quench.
pub fn run_quench_cv(cfg: &QuenchCvConfig) -> Result<ResultTable> {
    let columns = vec![
        ("state".to_string(), ColumnKind::Text),
        ("policy".to_string(), ColumnKind::Text),
        ("t".to_string(), ColumnKind::Float),
        ("omega_sites".to_string(), ColumnKind::Int),
        ("omega_log_nats".to_string(), ColumnKind::Float),
        ("witness".to_string(), ColumnKind::Text),
    ];
    let mut table = ResultTable::new("quench-cv", columns, cfg)?;
    table.set_extra_metadata(serde_json::json!({ "points": grid_points(cfg.t_max) }));

    let shape = LatticeShape::qubits(cfg.n)?;
    let a = SiteMask::single(shape, 0)?;
    for (name, initial) in cfg.initial.initial_states() {
        let traj = quench_trajectory(cfg.n, cfg.coupling, initial, cfg.t_max)?;
        for policy in cfg.policy.policies() {
            let series = codivol::cv_time_series(&traj, &a, cfg.epsilon, policy)?;
            for (t, cv) in &series {
                table.push_row(vec![
                    Cell::Text(name.to_string()),
                    Cell::Text(policy.to_string()),
                    Cell::Float(*t),
                    Cell::Int(cv.omega_sites as i64),
                    Cell::Float(cv.omega_log),
                    Cell::Text(witness_label(&cv.witness)),
                ])?;
            }
        }
    }
    Ok(table)
}

// ---------------------------------------------------------------------------
// longtime-average
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct LongtimeConfig {
    pub n: usize,
    pub coupling: f64,
    pub seed: u64,
    pub samples: usize,
    pub t_max: f64,
    pub window: (f64, f64),
    pub units: Units,
}

/// Window-averaged quench information curves next to the Haar Monte Carlo
/// average and the closed form.
pub fn run_longtime_average(cfg: &LongtimeConfig) -> Result<ResultTable> {
    let (lo, hi) = cfg.window;
    if !(0.0 <= lo && lo < hi && hi <= cfg.t_max) {
        bail!("window {lo},{hi} must satisfy 0 <= lo < hi <= t_max ({})", cfg.t_max);
    }
    let n = cfg.n;
    let columns = vec![
        ("b".to_string(), ColumnKind::Int),
        ("I_neel".to_string(), ColumnKind::Float),
        ("I_yplus".to_string(), ColumnKind::Float),
        ("I_haar_mc".to_string(), ColumnKind::Float),
        ("I_haar_stderr".to_string(), ColumnKind::Float),
        ("I_page".to_string(), ColumnKind::Float),
    ];
    let mut table = ResultTable::new("longtime-average", columns, cfg)?;

    let shape = LatticeShape::qubits(n)?;
    let a = SiteMask::single(shape, 0)?;
    let mut quench_curves = Vec::new();
    for (_, initial) in InitialArg::Both.initial_states() {
        let traj = quench_trajectory(n, cfg.coupling, initial, cfg.t_max)?;
        let in_window: Vec<&PureState> = traj
            .iter()
            .filter(|(t, _)| *t >= lo && *t <= hi)
            .map(|(_, psi)| psi)
            .collect();
        if in_window.is_empty() {
            bail!("averaging window [{lo},{hi}] contains no sample times");
        }
        let mut curve = vec![0.0f64; n - 1];
        for psi in &in_window {
            let profile = mi_profile(psi, &a, SearchPolicy::ContiguousRight)?;
            for (k, (_, v)) in profile.entries().iter().enumerate() {
                curve[k] += v.value();
            }
        }
        for v in &mut curve {
            *v /= in_window.len() as f64;
        }
        quench_curves.push(curve);
    }

    let sampler = HaarSampler::new(shape, cfg.seed);
    for b in 1..n {
        let est = mc_average_mi(&sampler, 1, b, cfg.samples)?;
        let page = page_average_mi(1, b as u32, n as u32)?.value();
        table.push_row(vec![
            Cell::Int(b as i64),
            Cell::Float(cfg.units.scale(quench_curves[0][b - 1])),
            Cell::Float(cfg.units.scale(quench_curves[1][b - 1])),
            Cell::Float(cfg.units.scale(est.mean)),
            Cell::Float(cfg.units.scale(est.std_error)),
            Cell::Float(cfg.units.scale(page)),
        ])?;
    }
    Ok(table)
}

// ---------------------------------------------------------------------------
// ensemble-mi
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct EnsembleMiConfig {
    pub n: usize,
    pub seed: u64,
    pub samples: usize,
    pub monte_carlo: bool,
    pub units: Units,
}

/// Largest chain for which the Monte Carlo columns are feasible.
pub const ENSEMBLE_MC_MAX_N: usize = 12;

/// Closed-form Haar-average information curves at block fractions near 1/9
/// and 2/9 of the chain, with optional Monte Carlo columns.
pub fn run_ensemble_mi(cfg: &EnsembleMiConfig) -> Result<ResultTable> {
    let n = cfg.n as u32;
    let a1 = ((cfg.n as f64 / 9.0).round() as u32).max(1);
    let a2 = (((2 * cfg.n) as f64 / 9.0).round() as u32).max(1).min(n / 2);
    let mut blocks = vec![a1];
    if a2 != a1 {
        blocks.push(a2);
    }

    let with_mc = cfg.monte_carlo && cfg.n <= ENSEMBLE_MC_MAX_N;
    if cfg.monte_carlo && !with_mc {
        eprintln!(
            "warning: Monte Carlo columns need n <= {ENSEMBLE_MC_MAX_N} (got n = {}); omitting them",
            cfg.n
        );
    }

    let mut columns = vec![
        ("b".to_string(), ColumnKind::Int),
        ("b_over_n".to_string(), ColumnKind::Float),
    ];
    for a in &blocks {
        columns.push((format!("I(a={a})"), ColumnKind::Float));
    }
    if with_mc {
        for a in &blocks {
            columns.push((format!("I_mc(a={a})"), ColumnKind::Float));
            columns.push((format!("I_mc_stderr(a={a})"), ColumnKind::Float));
        }
    }
    let mut table = ResultTable::new("ensemble-mi", columns, cfg)?;

    // adjacent-regime expressions coincide at the boundary block sizes; the
    // residual gap is reported so downstream plots can trust the curve
    let mut max_gap = 0.0f64;
    for &a in &blocks {
        if n.is_multiple_of(2) {
            let half = n / 2;
            max_gap = max_gap.max(
                (page_average_entropy(half, n)?.value() - page_average_entropy(n - half, n)?.value()).abs(),
            );
            if half > a {
                let b = half - a;
                max_gap = max_gap.max(
                    (page_average_entropy(a + b, n)?.value() - page_average_entropy(n - a - b, n)?.value()).abs(),
                );
            }
        }
    }
    table.set_extra_metadata(serde_json::json!({
        "blocks": blocks,
        "regime_boundary_gap": max_gap,
        "monte_carlo": with_mc,
    }));

    let sampler = HaarSampler::new(LatticeShape::qubits(cfg.n)?, cfg.seed);
    for b in 1..cfg.n {
        let mut row = vec![Cell::Int(b as i64), Cell::Float(b as f64 / cfg.n as f64)];
        for &a in &blocks {
            match PageRegime::classify(a, b as u32, n) {
                Ok(_) => row.push(Cell::Float(cfg.units.scale(page_average_mi(a, b as u32, n)?.value()))),
                Err(_) => row.push(Cell::Empty),
            }
        }
        if with_mc {
            for &a in &blocks {
                if a as usize + b <= cfg.n {
                    let est = mc_average_mi(&sampler, a as usize, b, cfg.samples)?;
                    row.push(Cell::Float(cfg.units.scale(est.mean)));
                    row.push(Cell::Float(cfg.units.scale(est.std_error)));
                } else {
                    row.push(Cell::Empty);
                    row.push(Cell::Empty);
                }
            }
        }
        table.push_row(row)?;
    }
    Ok(table)
}

// ---------------------------------------------------------------------------
// page-tables
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct PageTablesConfig {
    pub n: usize,
    pub epsilon: f64,
    pub units: Units,
}

/// Tabulated closed-form averages: block entropy, its deficit from maximal,
/// and the average codification volume at the configured accuracy.
pub fn run_page_tables(cfg: &PageTablesConfig) -> Result<ResultTable> {
    let n = cfg.n as u32;
    let columns = vec![
        ("a".to_string(), ColumnKind::Int),
        ("S_page".to_string(), ColumnKind::Float),
        ("S_max".to_string(), ColumnKind::Float),
        ("page_deficit".to_string(), ColumnKind::Float),
        ("cv_sites".to_string(), ColumnKind::Float),
        ("cv_asymptote_sites".to_string(), ColumnKind::Float),
    ];
    let mut table = ResultTable::new("page-tables", columns, cfg)?;
    for a in 1..=n / 2 {
        let s = page_average_entropy(a, n)?.value();
        let s_max = a as f64 * LN_2;
        let cv = page_average_cv(a, n, cfg.epsilon)?;
        table.push_row(vec![
            Cell::Int(a as i64),
            Cell::Float(cfg.units.scale(s)),
            Cell::Float(cfg.units.scale(s_max)),
            Cell::Float(cfg.units.scale(s_max - s)),
            Cell::Float(cv.sites),
            Cell::Float(cv.asymptotic_sites),
        ])?;
    }
    Ok(table)
}

