//! Command-line front end: scenario sweeps, figure-style presets, threshold
//! finding, a self-check battery, and single-point state dumps.
//!
//! Everything here works on `f64`; rows are emitted in grid order with
//! fixed-precision formatting so identical invocations produce
//! byte-identical output.

use crate::analytic::{steady_coherent, steady_squeezed};
use crate::dynamics::{build_liouvillian, propagate, steady_state_for};
use crate::measures::{negativity, squeezing_parameters, ClosedFormSpectrum};
use crate::scalar::cre;
use crate::{DickeState, Error, Result, SystemParams};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

/// Which fields the atom pair couples to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScenarioKind {
    /// Squeezed bath only, classical correlations M = N; sweeps N.
    ClassicalSqueezed,
    /// Squeezed bath only, ideal correlations M = √(N(N+1)); sweeps N.
    QuantumSqueezed,
    /// Coherent drive only (N = M = 0); sweeps Ω/Γ.
    Coherent,
    /// Drive and squeezed bath together at fixed N; sweeps Ω/Γ.
    Combined,
}

impl ScenarioKind {
    fn sweep_parameter(self) -> &'static str {
        match self {
            ScenarioKind::ClassicalSqueezed | ScenarioKind::QuantumSqueezed => "N",
            ScenarioKind::Coherent | ScenarioKind::Combined => "omega",
        }
    }
}

/// Magnitude rule for the two-photon correlation in the combined scenario.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MMode {
    /// |M| = N.
    Classical,
    /// |M| = √(N(N+1)).
    Quantum,
    /// M given verbatim by --m-value.
    Custom,
}

/// Sign label for the two-photon correlation branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

fn parse_sign(s: &str) -> std::result::Result<Sign, String> {
    match s {
        "+" | "plus" => Ok(Sign::Plus),
        "-" | "minus" => Ok(Sign::Minus),
        other => Err(format!("expected '+' or '-', got '{other}'")),
    }
}

/// Steady-state solver selection for sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Solver {
    /// Closed forms only (not available for the combined scenario).
    Analytic,
    /// Null space of the numerically assembled generator.
    Numeric,
    /// Run both and fail if they disagree beyond 1e-9; rows come from the
    /// analytic path.
    Both,
}

/// Row output format.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// A fully specified scenario: the kind plus the parameters the sweep keeps
/// fixed.
#[derive(Clone, Copy, Debug)]
pub struct Scenario {
    pub kind: ScenarioKind,
    /// Photon number: fixed bath strength for `combined`, the evaluation
    /// point for single-state queries of the squeezed scenarios.
    pub n_ph: f64,
    pub m_mode: MMode,
    pub m_sign: Sign,
    pub m_value: Option<f64>,
}

impl Scenario {
    pub fn new(kind: ScenarioKind) -> Self {
        Self {
            kind,
            n_ph: 0.1,
            m_mode: MMode::Quantum,
            m_sign: Sign::Minus,
            m_value: None,
        }
    }

    /// Internal signed correlation for the combined scenario.
    ///
    /// Only the sign of M relative to the drive is physical: at Ω = 0,
    /// flipping M is a pure gauge (conjugation by diag(−1, i, 1)), but with
    /// a drive the two branches behave differently. The public label
    /// follows the phenomenological convention in which the branch whose
    /// entanglement survives up to Ω ≈ 2.1Γ (at N = 0.1) is called
    /// "M < 0"; under the operator conventions of this crate that branch
    /// carries an internally positive correlation, so the label is mapped
    /// to the opposite internal sign. A custom --m-value bypasses the
    /// relabeling and is used verbatim.
    fn combined_m(&self) -> Result<f64> {
        let magnitude = match self.m_mode {
            MMode::Classical => self.n_ph,
            MMode::Quantum => (self.n_ph * (self.n_ph + 1.0)).sqrt(),
            MMode::Custom => {
                return self
                    .m_value
                    .ok_or_else(|| Error::Usage("--m-mode custom requires --m-value".into()));
            }
        };
        Ok(match self.m_sign {
            Sign::Minus => magnitude,
            Sign::Plus => -magnitude,
        })
    }

    /// Master-equation parameters at sweep value `x` (N or Ω depending on
    /// the scenario).
    pub fn params_at(&self, x: f64) -> Result<SystemParams> {
        match self.kind {
            ScenarioKind::ClassicalSqueezed => SystemParams::new_classical(0.0, 1.0, x, cre(x)),
            ScenarioKind::QuantumSqueezed => {
                SystemParams::new(0.0, 1.0, x, cre((x * (x + 1.0)).sqrt()))
            }
            ScenarioKind::Coherent => SystemParams::new(x, 1.0, 0.0, cre(0.0)),
            ScenarioKind::Combined => SystemParams::new(x, 1.0, self.n_ph, cre(self.combined_m()?)),
        }
    }

    /// Closed-form steady state at sweep value `x`, when one exists.
    pub fn analytic_state_at(&self, x: f64) -> Result<DickeState> {
        match self.kind {
            ScenarioKind::ClassicalSqueezed => steady_squeezed(x, x),
            ScenarioKind::QuantumSqueezed => steady_squeezed(x, (x * (x + 1.0)).sqrt()),
            ScenarioKind::Coherent => steady_coherent(x),
            ScenarioKind::Combined => Err(Error::Usage(
                "the combined scenario has no closed-form steady state; use --solver numeric"
                    .into(),
            )),
        }
    }

    fn numeric_state_at(&self, x: f64) -> Result<DickeState> {
        steady_state_for(&self.params_at(x)?)
    }

    /// Steady state via the analytic path when available, numeric otherwise.
    fn best_state_at(&self, x: f64) -> Result<DickeState> {
        match self.kind {
            ScenarioKind::Combined => self.numeric_state_at(x),
            _ => self.analytic_state_at(x),
        }
    }
}

/// Uniform evaluation grid for a sweep.
#[derive(Clone, Copy, Debug)]
pub struct SweepGrid {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl SweepGrid {
    pub fn new(start: f64, stop: f64, steps: usize) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite() && stop > start) {
            return Err(Error::Usage(format!(
                "grid must satisfy start < stop with finite bounds, got [{start}, {stop}]"
            )));
        }
        if steps < 2 {
            return Err(Error::Usage(format!(
                "need at least 2 grid steps, got {steps}"
            )));
        }
        Ok(Self { start, stop, steps })
    }

    pub fn value(&self, i: usize) -> f64 {
        let f = i as f64 / (self.steps - 1) as f64;
        self.start + f * (self.stop - self.start)
    }
}

/// One output row of a sweep: the state's independent elements plus every
/// derived measure at a single grid point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub sweep_value: f64,
    pub rho_ee: f64,
    pub rho_ss: f64,
    pub rho_eg: f64,
    pub rho_gg: f64,
    pub rho_es: f64,
    pub rho_sg: f64,
    pub alpha: f64,
    pub xi_s_n1: f64,
    pub xi_s_n2: f64,
    pub xi_r_n1: f64,
    pub xi_r_n2: f64,
    pub measure_e: f64,
    pub pt_min_eigenvalue: f64,
}

pub const ROW_FIELDS: [&str; 14] = [
    "sweep_value",
    "rho_ee",
    "rho_ss",
    "rho_eg",
    "rho_gg",
    "rho_es",
    "rho_sg",
    "alpha",
    "xi_s_n1",
    "xi_s_n2",
    "xi_r_n1",
    "xi_r_n2",
    "measure_e",
    "pt_min_eigenvalue",
];

impl SweepRow {
    /// Derives the full row from a steady state.
    pub fn from_state(sweep_value: f64, rho: &DickeState) -> Result<Self> {
        let sq = squeezing_parameters(rho)?;
        let ent = negativity(rho)?;
        Ok(Self {
            sweep_value,
            rho_ee: rho.ee(),
            rho_ss: rho.ss(),
            rho_eg: rho.eg().re,
            rho_gg: rho.gg(),
            rho_es: rho.es().re,
            rho_sg: rho.sg().re,
            alpha: sq.alpha,
            xi_s_n1: sq.xi_s_n1,
            xi_s_n2: sq.xi_s_n2,
            xi_r_n1: sq.xi_r_n1,
            xi_r_n2: sq.xi_r_n2,
            measure_e: ent.measure_e,
            pt_min_eigenvalue: ent.pt_eigenvalues[0],
        })
    }

    pub fn fields(&self) -> [f64; 14] {
        [
            self.sweep_value,
            self.rho_ee,
            self.rho_ss,
            self.rho_eg,
            self.rho_gg,
            self.rho_es,
            self.rho_sg,
            self.alpha,
            self.xi_s_n1,
            self.xi_s_n2,
            self.xi_r_n1,
            self.xi_r_n2,
            self.measure_e,
            self.pt_min_eigenvalue,
        ]
    }

    /// Largest field-wise distance to another row. Each difference is
    /// measured relative to `max(1, |a|, |b|)`: fields of order one keep
    /// their absolute reading, while the rotated squeezing ratios — which
    /// grow like (2N+1)² and amplify state-level rounding by the same
    /// factor — are compared at matching relative precision. Infinities
    /// count as equal only when both sides are infinite with the same sign.
    fn distance(&self, other: &Self) -> f64 {
        self.fields()
            .iter()
            .zip(other.fields())
            .map(|(a, b)| {
                if a.is_infinite() || b.is_infinite() {
                    if a.is_infinite() && b.is_infinite() && a.signum() == b.signum() {
                        0.0
                    } else {
                        f64::INFINITY
                    }
                } else {
                    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
                }
            })
            .fold(0.0, f64::max)
    }
}

/// Formats a value for output: 17 significant digits, with the literal
/// token `inf` for unbounded entries.
fn fmt_value(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x:.16e}")
    }
}

/// Writes rows as CSV with a header, columns in `ROW_FIELDS` order.
pub fn write_csv(w: &mut dyn Write, rows: &[SweepRow]) -> Result<()> {
    writeln!(w, "{}", ROW_FIELDS.join(","))?;
    for row in rows {
        let line: Vec<String> = row.fields().iter().map(|x| fmt_value(*x)).collect();
        writeln!(w, "{}", line.join(","))?;
    }
    Ok(())
}

/// Writes rows as JSON lines (one object per row). Unbounded entries are
/// the JSON string "inf" since JSON has no infinity literal.
pub fn write_json(w: &mut dyn Write, rows: &[SweepRow]) -> Result<()> {
    for row in rows {
        let mut parts = Vec::with_capacity(ROW_FIELDS.len());
        for (name, value) in ROW_FIELDS.iter().zip(row.fields()) {
            let v = if value.is_infinite() {
                format!("\"{}\"", if value > 0.0 { "inf" } else { "-inf" })
            } else {
                format!("{value:.16e}")
            };
            parts.push(format!("\"{name}\":{v}"));
        }
        writeln!(w, "{{{}}}", parts.join(","))?;
    }
    Ok(())
}

pub fn write_rows(w: &mut dyn Write, rows: &[SweepRow], format: OutputFormat) -> Result<()> {
    match format {
        OutputFormat::Csv => write_csv(w, rows),
        OutputFormat::Json => write_json(w, rows),
    }
}

/// Evaluates the scenario over the grid, one row per point, in grid order.
///
/// With `Solver::Both` every grid point is computed along both paths and
/// the sweep fails if any pair of rows differs by more than 1e-9, naming
/// the offending grid points.
pub fn run_scenario_sweep(
    scenario: &Scenario,
    grid: &SweepGrid,
    solver: Solver,
) -> Result<Vec<SweepRow>> {
    if solver != Solver::Numeric && scenario.kind == ScenarioKind::Combined {
        return Err(Error::Usage(
            "the combined scenario supports --solver numeric only".into(),
        ));
    }
    let mut rows = Vec::with_capacity(grid.steps);
    let mut offenders: Vec<(f64, f64)> = Vec::new();
    let mut worst = 0.0f64;
    for i in 0..grid.steps {
        let x = grid.value(i);
        let row = match solver {
            Solver::Analytic => SweepRow::from_state(x, &scenario.analytic_state_at(x)?)?,
            Solver::Numeric => SweepRow::from_state(x, &scenario.numeric_state_at(x)?)?,
            Solver::Both => {
                let a = SweepRow::from_state(x, &scenario.analytic_state_at(x)?)?;
                let n = SweepRow::from_state(x, &scenario.numeric_state_at(x)?)?;
                let d = a.distance(&n);
                worst = worst.max(d);
                if d > 1e-9 {
                    offenders.push((x, d));
                }
                a
            }
        };
        rows.push(row);
    }
    if !offenders.is_empty() {
        let (x0, d0) = offenders[0];
        return Err(Error::Inconsistency {
            check: format!(
                "analytic and numeric rows disagree at {} grid point(s), first at {} = {x0} (diff {d0:.3e})",
                offenders.len(),
                scenario.kind.sweep_parameter(),
            ),
            residual: worst,
            tol: 1e-9,
        });
    }
    Ok(rows)
}

/// Largest analytic-vs-numeric row distance over a grid (used by the
/// self-check report).
fn sweep_agreement(scenario: &Scenario, grid: &SweepGrid) -> Result<f64> {
    let mut worst = 0.0f64;
    for i in 0..grid.steps {
        let x = grid.value(i);
        let a = SweepRow::from_state(x, &scenario.analytic_state_at(x)?)?;
        let n = SweepRow::from_state(x, &scenario.numeric_state_at(x)?)?;
        worst = worst.max(a.distance(&n));
    }
    Ok(worst)
}

const THRESHOLD_WIDTH: f64 = 1e-6;

/// Signed entanglement indicator −2λ_min of the partial transpose: positive
/// inside the entangled window, negative outside (the reported measure
/// clamps this at zero, which is useless for bracketing).
fn signed_indicator(scenario: &Scenario, x: f64) -> Result<f64> {
    let rho = scenario.best_state_at(x)?;
    let rep = negativity(&rho)?;
    Ok(-2.0 * rep.pt_eigenvalues[0])
}

/// Locates the boundary of the entangled region by bisection.
///
/// The bracket ends must disagree about whether the state is entangled;
/// bisection narrows the bracket below 1e-6 (in N or Γ units) and returns
/// the midpoint. Uses the closed-form state when the scenario has one.
pub fn find_threshold(scenario: &Scenario, lo: f64, hi: f64) -> Result<f64> {
    if !(lo.is_finite() && hi.is_finite() && hi > lo) {
        return Err(Error::Usage(format!(
            "threshold bracket must satisfy lo < hi with finite bounds, got [{lo}, {hi}]"
        )));
    }
    let f_lo = signed_indicator(scenario, lo)?;
    let f_hi = signed_indicator(scenario, hi)?;
    if (f_lo > 0.0) == (f_hi > 0.0) {
        return Err(Error::NoSignChange { lo, hi, f_lo, f_hi });
    }
    let (mut lo, mut hi) = (lo, hi);
    let lo_entangled = f_lo > 0.0;
    let mut rounds = 0;
    while hi - lo >= THRESHOLD_WIDTH {
        let mid = 0.5 * (lo + hi);
        let f_mid = signed_indicator(scenario, mid)?;
        if (f_mid > 0.0) == lo_entangled {
            lo = mid;
        } else {
            hi = mid;
        }
        rounds += 1;
        if rounds > 200 {
            return Err(Error::Inconsistency {
                check: "threshold bisection failed to converge".into(),
                residual: hi - lo,
                tol: THRESHOLD_WIDTH,
            });
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Preset sweeps mirroring the four standard plots.
///
/// 1: classical squeezed bath (M = N) over N ∈ [0.01, 2];
/// 2: quantum squeezed bath (M = √(N(N+1))) over N ∈ [0.01, 10];
/// 3: coherent drive over Ω ∈ [0.01, 3]Γ;
/// 4: combined drive at N = 0.1, labeled branch M "−", over Ω ∈ [0.01, 3]Γ.
///
/// All presets use 300 points. Presets 1–3 default to the cross-validating
/// `both` solver; preset 4 is numeric (no closed form exists).
pub fn figure_preset(index: u8) -> (Scenario, SweepGrid, Solver) {
    let grid = |start, stop| SweepGrid {
        start,
        stop,
        steps: 300,
    };
    match index {
        1 => (
            Scenario::new(ScenarioKind::ClassicalSqueezed),
            grid(0.01, 2.0),
            Solver::Both,
        ),
        2 => (
            Scenario::new(ScenarioKind::QuantumSqueezed),
            grid(0.01, 10.0),
            Solver::Both,
        ),
        3 => (
            Scenario::new(ScenarioKind::Coherent),
            grid(0.01, 3.0),
            Solver::Both,
        ),
        4 => (
            Scenario::new(ScenarioKind::Combined),
            grid(0.01, 3.0),
            Solver::Numeric,
        ),
        other => panic!("figure index out of range: {other}"),
    }
}

struct Check<'w> {
    w: &'w mut dyn Write,
    count: usize,
}

impl<'w> Check<'w> {
    fn pass(&mut self, name: &str, detail: &str) -> Result<()> {
        self.count += 1;
        writeln!(self.w, "ok {name}: {detail}")?;
        Ok(())
    }

    fn gate(&mut self, name: &str, residual: f64, tol: f64) -> Result<()> {
        if residual.is_nan() || residual > tol {
            return Err(Error::Inconsistency {
                check: name.into(),
                residual,
                tol,
            });
        }
        self.pass(name, &format!("residual {residual:.3e} (tol {tol:.1e})"))
    }
}

/// Runs every analytic-vs-numeric cross-validation and prints one line per
/// check; any failure aborts with the failing check named.
pub fn self_check(w: &mut dyn Write) -> Result<()> {
    let mut c = Check { w, count: 0 };

    // Closed-form steady states against the numeric null space, while
    // tracking the partial-transpose bookkeeping along the way.
    let mut state_diff = 0.0f64;
    let mut pt_sum_residual = 0.0f64;
    let mut extra_negatives = 0usize;
    let mut lambda2_minus_min = f64::INFINITY;
    let mut points = 0usize;
    {
        let mut visit = |ana: &DickeState, params: &SystemParams| -> Result<()> {
            let num = steady_state_for(params)?;
            state_diff = state_diff.max((ana.matrix() - num.matrix()).max_abs());
            let rep = negativity(&num)?;
            let sum: f64 = rep.pt_eigenvalues.iter().sum();
            pt_sum_residual = pt_sum_residual.max((sum - 1.0).abs());
            let negatives = rep.pt_eigenvalues.iter().filter(|v| **v < -1e-12).count();
            if negatives > 1 {
                extra_negatives += 1;
            }
            if let Some(ClosedFormSpectrum::TwoPhoton { lambda2_minus, .. }) = rep.closed_form {
                lambda2_minus_min = lambda2_minus_min.min(lambda2_minus);
            }
            points += 1;
            Ok(())
        };
        for i in 1..=40 {
            let n = 0.05 * i as f64;
            let mq = (n * (n + 1.0)).sqrt();
            visit(
                &steady_squeezed(n, n)?,
                &SystemParams::new(0.0, 1.0, n, cre(n))?,
            )?;
            visit(
                &steady_squeezed(n, mq)?,
                &SystemParams::new(0.0, 1.0, n, cre(mq))?,
            )?;
        }
        for i in 1..=50 {
            let om = 0.1 * i as f64;
            visit(
                &steady_coherent(om)?,
                &SystemParams::new(om, 1.0, 0.0, cre(0.0))?,
            )?;
        }
    }
    c.gate(
        "steady-state closed forms vs numeric null space",
        state_diff,
        1e-10,
    )?;
    c.gate("partial-transpose eigenvalue sums", pt_sum_residual, 1e-10)?;
    if extra_negatives > 0 {
        return Err(Error::Inconsistency {
            check: "more than one negative partial-transpose eigenvalue".into(),
            residual: extra_negatives as f64,
            tol: 0.0,
        });
    }
    c.pass(
        "at most one negative partial-transpose eigenvalue",
        &format!("{points} states"),
    )?;
    if lambda2_minus_min < -1e-12 {
        return Err(Error::Inconsistency {
            check: "squeezed-state spectrum branch lambda2- went negative".into(),
            residual: lambda2_minus_min,
            tol: 1e-12,
        });
    }
    c.pass(
        "lambda2- branch nonnegative over squeezed grids",
        &format!("min {lambda2_minus_min:.3e}"),
    )?;

    // Trace preservation of the generator.
    let mut trace_leak = 0.0f64;
    let probes = [
        (0.0, 0.25, 0.25),
        (1.0, 0.0, 0.0),
        (0.7, 0.4, -0.5),
        (0.0, 1.0, std::f64::consts::SQRT_2),
        (0.5, 0.1, -(0.11f64).sqrt()),
    ];
    for (om, n, m) in probes {
        let l = build_liouvillian(&SystemParams::new(om, 1.0, n, cre(m))?);
        let vi = crate::ComplexMatrix::identity(3).vectorize();
        let left = l.matrix().adjoint().matvec(&vi);
        let norm = left.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
        trace_leak = trace_leak.max(norm);
    }
    c.gate(
        "generator preserves trace (left null vector)",
        trace_leak,
        1e-12,
    )?;

    // Analytic/numeric row agreement over the preset grids.
    for index in [1u8, 2, 3] {
        let (scenario, grid, _) = figure_preset(index);
        let diff = sweep_agreement(&scenario, &grid)?;
        c.gate(
            &format!("sweep solver agreement, preset {index}"),
            diff,
            1e-9,
        )?;
    }

    // Free-decay oracle for the integrator.
    let decay = SystemParams::new(0.0, 1.0, 0.0, cre(0.0))?;
    let mut decay_err = 0.0f64;
    for i in 0..=12 {
        let t = 0.25 * i as f64;
        let rho = propagate(&DickeState::excited(), &decay, t, None)?;
        let ee = (-2.0 * t).exp();
        let ss = 2.0 * t * ee;
        decay_err = decay_err
            .max((rho.ee() - ee).abs())
            .max((rho.ss() - ss).abs());
    }
    c.gate("free-decay populations vs closed form", decay_err, 1e-6)?;

    // Convergence of propagation onto the steady state, one representative
    // per scenario.
    let mut conv = 0.0f64;
    let reps: [(&str, SystemParams); 4] = [
        (
            "classical",
            SystemParams::new_classical(0.0, 1.0, 0.25, cre(0.25))?,
        ),
        (
            "quantum",
            SystemParams::new(0.0, 1.0, 0.5, cre((0.75f64).sqrt()))?,
        ),
        ("coherent", SystemParams::new(1.0, 1.0, 0.0, cre(0.0))?),
        (
            "combined",
            Scenario::new(ScenarioKind::Combined).params_at(1.0)?,
        ),
    ];
    for (_, p) in &reps {
        let target = steady_state_for(p)?;
        let rho = propagate(&DickeState::ground(), p, 50.0, None)?;
        conv = conv.max((rho.matrix() - target.matrix()).max_abs());
    }
    c.gate(
        "propagation converges to the steady state by t = 50/gamma",
        conv,
        1e-8,
    )?;

    // Existence scan, labeled branch M > 0: some driven point must be
    // entangled while both squeezing parameters sit at or above 1.
    let mut witness: Option<(f64, f64, f64, f64, f64)> = None;
    let mut plus = Scenario::new(ScenarioKind::Combined);
    plus.m_sign = Sign::Plus;
    let mut minus = Scenario::new(ScenarioKind::Combined);
    minus.m_sign = Sign::Minus;
    let mut min_root = f64::INFINITY;
    'scan: for i in 1..=20 {
        let n = 0.05 * i as f64;
        plus.n_ph = n;
        for j in 1..=40 {
            let om = 0.05 * j as f64;
            let rho = plus.numeric_state_at(om)?;
            let sq = squeezing_parameters(&rho)?;
            let rep = negativity(&rho)?;
            if rep.measure_e > 1e-12 && sq.xi_s_n1 >= 1.0 && sq.xi_s_n2 >= 1.0 {
                witness = Some((n, om, rep.measure_e, sq.xi_s_n1, sq.xi_s_n2));
                break 'scan;
            }
        }
    }
    match witness {
        Some((n, om, e, x1, x2)) => c.pass(
            "entanglement without squeezing exists on the labeled M > 0 branch",
            &format!("N = {n:.2}, omega = {om:.2}: E = {e:.4}, xi_s = ({x1:.4}, {x2:.4})"),
        )?,
        None => {
            return Err(Error::Inconsistency {
                check: "no entangled-but-unsqueezed point found on the labeled M > 0 branch".into(),
                residual: f64::NAN,
                tol: 0.0,
            });
        }
    }

    // Root scan, labeled branch M < 0: the cubic block of the partial
    // transpose must stay nonnegative everywhere on the grid.
    for i in 1..=20 {
        let n = 0.05 * i as f64;
        minus.n_ph = n;
        for j in 1..=40 {
            let om = 0.05 * j as f64;
            let rho = minus.numeric_state_at(om)?;
            let rep = negativity(&rho)?;
            if let Some(ClosedFormSpectrum::Driven { cubic_roots, .. }) = rep.closed_form {
                for r in cubic_roots {
                    min_root = min_root.min(r);
                }
            }
        }
    }
    if min_root < -1e-10 {
        return Err(Error::Inconsistency {
            check: "cubic block of the labeled M < 0 branch produced a negative root".into(),
            residual: min_root,
            tol: 1e-10,
        });
    }
    c.pass(
        "labeled M < 0 branch keeps the cubic block nonnegative",
        &format!("min root {min_root:.3e}"),
    )?;

    let n = c.count;
    writeln!(c.w, "self-check passed ({n} checks)")?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Argument surface

#[derive(Parser, Debug)]
#[command(
    name = "dicke2",
    version,
    about = "Steady states, spin squeezing, and entanglement of two atoms driven by coherent light in a squeezed vacuum"
)]
pub struct CliArgs {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct ScenarioArgs {
    /// Which fields the atoms couple to.
    #[arg(long, value_enum)]
    pub scenario: ScenarioKind,
    /// Squeezed-field photon number N: fixed value for the combined
    /// scenario, the evaluation point for squeezed-scenario `state`.
    #[arg(long, default_value_t = 0.1)]
    pub n_ph: f64,
    /// Two-photon correlation magnitude rule (combined scenario).
    #[arg(long, value_enum, default_value_t = MMode::Quantum)]
    pub m_mode: MMode,
    /// Correlation sign label (combined scenario); the '-' branch is the
    /// one whose entanglement persists to larger drive strengths.
    #[arg(long, default_value = "-", value_parser = parse_sign, allow_hyphen_values = true)]
    pub m_sign: Sign,
    /// Explicit correlation value for --m-mode custom (used verbatim).
    #[arg(long, allow_hyphen_values = true)]
    pub m_value: Option<f64>,
}

impl ScenarioArgs {
    pub fn build(&self) -> Result<Scenario> {
        if self.m_value.is_some() && self.m_mode != MMode::Custom {
            return Err(Error::Usage("--m-value requires --m-mode custom".into()));
        }
        if self.m_mode == MMode::Custom && self.m_value.is_none() {
            return Err(Error::Usage("--m-mode custom requires --m-value".into()));
        }
        Ok(Scenario {
            kind: self.scenario,
            n_ph: self.n_ph,
            m_mode: self.m_mode,
            m_sign: self.m_sign,
            m_value: self.m_value,
        })
    }
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Row output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Write to a file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sweep the scenario's free parameter (N or Ω/Γ) over a uniform grid.
    Sweep {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// First grid value.
        #[arg(long)]
        start: f64,
        /// Last grid value.
        #[arg(long)]
        stop: f64,
        /// Number of grid points (at least 2).
        #[arg(long)]
        steps: usize,
        /// Steady-state solver.
        #[arg(long, value_enum, default_value_t = Solver::Numeric)]
        solver: Solver,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Emit one of the four preset sweeps (see `figure --help` for the list).
    Figure {
        /// Preset index: 1 classical vs N, 2 quantum vs N, 3 coherent vs
        /// Ω/Γ, 4 combined (N = 0.1, labeled M '−') vs Ω/Γ.
        #[arg(value_parser = clap::value_parser!(u8).range(1..=4))]
        index: u8,
        /// Override the preset's solver.
        #[arg(long, value_enum)]
        solver: Option<Solver>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Locate the entanglement boundary inside a bracket by bisection and
    /// print it as a bare number.
    Threshold {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Lower bracket end.
        #[arg(long)]
        start: f64,
        /// Upper bracket end.
        #[arg(long)]
        stop: f64,
        /// Write to a file instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run all analytic-vs-numeric cross-validations and report residuals.
    Check,
    /// Print the steady state at one parameter point as a single row.
    State {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Rabi frequency Ω/Γ (coherent and combined scenarios).
        #[arg(long, default_value_t = 0.0)]
        omega: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
        None => Box::new(std::io::BufWriter::new(std::io::stdout())),
    })
}

/// Dispatches a parsed command line.
pub fn run(args: &CliArgs) -> Result<()> {
    match &args.command {
        Command::Sweep {
            scenario,
            start,
            stop,
            steps,
            solver,
            out,
        } => {
            let sc = scenario.build()?;
            let grid = SweepGrid::new(*start, *stop, *steps)?;
            let rows = run_scenario_sweep(&sc, &grid, *solver)?;
            let mut w = open_output(&out.output)?;
            write_rows(&mut *w, &rows, out.format)?;
            w.flush()?;
        }
        Command::Figure { index, solver, out } => {
            let (sc, grid, preset_solver) = figure_preset(*index);
            let rows = run_scenario_sweep(&sc, &grid, solver.unwrap_or(preset_solver))?;
            let mut w = open_output(&out.output)?;
            write_rows(&mut *w, &rows, out.format)?;
            w.flush()?;
        }
        Command::Threshold {
            scenario,
            start,
            stop,
            output,
        } => {
            let sc = scenario.build()?;
            let x = find_threshold(&sc, *start, *stop)?;
            let mut w = open_output(output)?;
            writeln!(w, "{x:.16e}")?;
            w.flush()?;
        }
        Command::Check => {
            let stdout = std::io::stdout();
            let mut w = stdout.lock();
            self_check(&mut w)?;
        }
        Command::State {
            scenario,
            omega,
            out,
        } => {
            let sc = scenario.build()?;
            let x = match sc.kind {
                ScenarioKind::ClassicalSqueezed | ScenarioKind::QuantumSqueezed => {
                    if *omega != 0.0 {
                        return Err(Error::Usage(
                            "the squeezed-bath scenarios have no drive; omit --omega".into(),
                        ));
                    }
                    sc.n_ph
                }
                ScenarioKind::Coherent | ScenarioKind::Combined => *omega,
            };
            let rho = sc.best_state_at(x)?;
            let row = SweepRow::from_state(x, &rho)?;
            let mut w = open_output(&out.output)?;
            write_rows(&mut *w, &[row], out.format)?;
            w.flush()?;
        }
    }
    Ok(())
}
