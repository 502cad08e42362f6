//! Scenario runs, trajectory records and their CSV form.
//!
//! A trajectory file starts with one metadata comment line, then a column
//! header and one row per grid point:
//!
//! ```text
//! # susy-entangle v0.1.0 N=5 L=0 g=1 omega=0
//! t,gt,entropy,p0,p1,p2
//! 0,0,0,1,0,0
//! ```
//!
//! Floats use the shortest representation that parses back to the same
//! `f64`.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::dynamics::{ProductStateSpec, Propagator};
use crate::entanglement::{entropy_trajectory, schmidt_profile};
use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianParams;
use crate::oracle::{oracle_entropy, OracleSector};
use crate::spectrum::assemble_spectrum;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest entropy deviation from the dense oracle a `--oracle` run accepts.
pub const ORACLE_TOLERANCE: f64 = 1e-8;

pub const DEFAULT_STEPS: usize = 2001;
pub const DEFAULT_GT_MAX: f64 = 2.0;
pub const LONG_GT_MAX: f64 = 22.015;
pub const DEFAULT_EPSILON: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryRow {
    pub t: f64,
    pub gt: f64,
    pub entropy: f64,
    pub probabilities: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryRecord {
    pub spec: ProductStateSpec,
    pub params: HamiltonianParams,
    pub rows: Vec<TrajectoryRow>,
}

impl TrajectoryRecord {
    pub fn entropies(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.entropy).collect()
    }

    fn metadata_line(&self) -> String {
        format!(
            "# susy-entangle v{VERSION} N={} L={} g={} omega={}",
            self.spec.total_photons(),
            self.spec.photons_in_b(),
            self.params.g,
            self.params.omega
        )
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> std::result::Result<(), csv::Error> {
        writeln!(out, "{}", self.metadata_line())?;
        let mut wtr = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        let width = self.spec.rungs();
        let mut header = vec!["t".to_string(), "gt".to_string(), "entropy".to_string()];
        header.extend((0..width).map(|n| format!("p{n}")));
        wtr.write_record(&header)?;
        for row in &self.rows {
            let mut fields = vec![row.t.to_string(), row.gt.to_string(), row.entropy.to_string()];
            fields.extend(row.probabilities.iter().map(f64::to_string));
            wtr.write_record(&fields)?;
        }
        wtr.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory cannot fail");
        String::from_utf8(buf).expect("csv output is utf-8")
    }

    /// Parses the format written by [`TrajectoryRecord::write_csv`].
    pub fn parse_csv(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::param(format!("malformed trajectory csv: {msg}"));
        let (meta, body) = text.split_once('\n').ok_or_else(|| bad("missing metadata line"))?;
        let fields: BTreeMap<&str, &str> = meta
            .strip_prefix("# susy-entangle v")
            .ok_or_else(|| bad("metadata prefix"))?
            .split_whitespace()
            .skip(1)
            .filter_map(|kv| kv.split_once('='))
            .collect();
        let get = |k: &str| fields.get(k).copied().ok_or_else(|| bad(k));
        let n: u32 = get("N")?.parse().map_err(|_| bad("N"))?;
        let l: u32 = get("L")?.parse().map_err(|_| bad("L"))?;
        let g: f64 = get("g")?.parse().map_err(|_| bad("g"))?;
        let omega: f64 = get("omega")?.parse().map_err(|_| bad("omega"))?;
        let spec = ProductStateSpec::new(n, l)?;
        let params = HamiltonianParams::new(omega, g, n)?;

        let mut rdr = csv::ReaderBuilder::new().from_reader(body.as_bytes());
        let mut rows = Vec::new();
        for record in rdr.records() {
            let record = record.map_err(|e| bad(&e.to_string()))?;
            let values = record
                .iter()
                .map(|f| f.parse::<f64>().map_err(|_| bad(f)))
                .collect::<Result<Vec<f64>>>()?;
            if values.len() < 3 {
                return Err(bad("short row"));
            }
            rows.push(TrajectoryRow {
                t: values[0],
                gt: values[1],
                entropy: values[2],
                probabilities: values[3..].to_vec(),
            });
        }
        Ok(TrajectoryRecord { spec, params, rows })
    }
}

pub fn emit_csv(record: &TrajectoryRecord, path: &Path) -> Result<()> {
    let file = fs::File::create(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    record
        .write_csv(BufWriter::new(file))
        .map_err(|source| Error::Csv { path: path.to_path_buf(), source })
}

/// Peak entropy on a grid and how long the curve stays near it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakSummary {
    pub peak: f64,
    /// Time of the first grid point attaining the peak.
    pub peak_time: f64,
    pub peak_gt: f64,
    /// Length in `t` of the contiguous run of grid points around the first
    /// peak where the entropy stays at or above `peak − ε`.
    pub survival_time: f64,
    /// The same run measured on the `gt` axis.
    pub survival_gt: f64,
}

pub fn report_peaks(record: &TrajectoryRecord, epsilon: f64) -> Result<PeakSummary> {
    let rows = &record.rows;
    if rows.is_empty() {
        return Err(Error::param("cannot summarize an empty trajectory"));
    }
    let mut first = 0;
    for (i, row) in rows.iter().enumerate() {
        if row.entropy > rows[first].entropy {
            first = i;
        }
    }
    let peak = rows[first].entropy;
    let floor = peak - epsilon;
    let mut lo = first;
    while lo > 0 && rows[lo - 1].entropy >= floor {
        lo -= 1;
    }
    let mut hi = first;
    while hi + 1 < rows.len() && rows[hi + 1].entropy >= floor {
        hi += 1;
    }
    Ok(PeakSummary {
        peak,
        peak_time: rows[first].t,
        peak_gt: rows[first].gt,
        survival_time: rows[hi].t - rows[lo].t,
        survival_gt: (rows[hi].gt - rows[lo].gt).abs(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub total_photons: u32,
    pub photons_in_b: u32,
    pub omega: f64,
    pub g: f64,
    pub t_max: f64,
    pub steps: usize,
    pub survival_epsilon: f64,
    pub output: Option<PathBuf>,
    pub oracle: bool,
}

impl ScenarioConfig {
    /// Config whose grid spans `gt ∈ [0, gt_max]`. With `g = 0` the window
    /// is taken in `t` directly.
    pub fn with_gt_window(total_photons: u32, photons_in_b: u32, g: f64, gt_max: f64) -> Self {
        let t_max = if g == 0.0 { gt_max } else { gt_max / g.abs() };
        ScenarioConfig {
            total_photons,
            photons_in_b,
            omega: 0.0,
            g,
            t_max,
            steps: DEFAULT_STEPS,
            survival_epsilon: DEFAULT_EPSILON,
            output: None,
            oracle: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        ProductStateSpec::new(self.total_photons, self.photons_in_b)?;
        HamiltonianParams::new(self.omega, self.g, self.total_photons)?;
        if self.steps < 2 {
            return Err(Error::param(format!("need at least 2 grid steps, got {}", self.steps)));
        }
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(Error::param(format!("t_max must be positive, got {}", self.t_max)));
        }
        if !(self.survival_epsilon > 0.0) {
            return Err(Error::param(format!(
                "survival epsilon must be positive, got {}",
                self.survival_epsilon
            )));
        }
        Ok(())
    }

    pub fn time_grid(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps).map(|i| self.t_max * (i as f64 / last)).collect()
    }
}

/// Runs a scenario, optionally cross-checks it against the dense oracle,
/// and writes the CSV when an output path is set.
pub fn run_scenario(config: &ScenarioConfig) -> Result<TrajectoryRecord> {
    config.validate()?;
    let spec = ProductStateSpec::new(config.total_photons, config.photons_in_b)?;
    let params = HamiltonianParams::new(config.omega, config.g, config.total_photons)?;
    let record = entropy_trajectory(spec, &params, &config.time_grid())?;
    if config.oracle {
        cross_check_with_oracle(&record)?;
    }
    if let Some(path) = &config.output {
        emit_csv(&record, path)?;
    }
    Ok(record)
}

/// Largest entropy deviation between a record and the dense oracle; errors
/// when it exceeds [`ORACLE_TOLERANCE`].
pub fn cross_check_with_oracle(record: &TrajectoryRecord) -> Result<f64> {
    let cutoff = record.spec.total_photons() as usize;
    let sector = OracleSector::new(&record.params, cutoff)?;
    let mut worst = 0.0_f64;
    for row in &record.rows {
        let state = sector.evolve(&record.spec, row.t)?;
        let deviation = (oracle_entropy(&state, cutoff) - row.entropy).abs();
        if !(deviation <= ORACLE_TOLERANCE) {
            return Err(Error::Consistency(format!(
                "entropy at t={} deviates from the oracle by {deviation:e}",
                row.t
            )));
        }
        worst = worst.max(deviation);
    }
    Ok(worst)
}

/// Scenario settings that may come from flags or a `key = value` file.
/// Unset fields fall back to the defaults in [`ScenarioInputs::resolve`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScenarioInputs {
    pub photons: Option<u32>,
    pub in_b: Option<u32>,
    pub g: Option<f64>,
    pub omega: Option<f64>,
    pub gt_max: Option<f64>,
    pub steps: Option<usize>,
    pub epsilon: Option<f64>,
    pub oracle: Option<bool>,
    pub out: Option<PathBuf>,
}

impl ScenarioInputs {
    /// Parses `key = value` lines; blank lines and `#` comments are skipped.
    pub fn from_key_values(text: &str) -> Result<Self> {
        let mut inputs = ScenarioInputs::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::param(format!("config line {}: expected key=value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = || Error::param(format!("config line {}: bad value for {key}: {value}", lineno + 1));
            match key.replace('-', "_").as_str() {
                "photons" => inputs.photons = Some(value.parse().map_err(|_| bad())?),
                "in_b" => inputs.in_b = Some(value.parse().map_err(|_| bad())?),
                "g" => inputs.g = Some(value.parse().map_err(|_| bad())?),
                "omega" => inputs.omega = Some(value.parse().map_err(|_| bad())?),
                "gt_max" => inputs.gt_max = Some(value.parse().map_err(|_| bad())?),
                "steps" => inputs.steps = Some(value.parse().map_err(|_| bad())?),
                "epsilon" => inputs.epsilon = Some(value.parse().map_err(|_| bad())?),
                "oracle" => inputs.oracle = Some(value.parse().map_err(|_| bad())?),
                "out" => inputs.out = Some(PathBuf::from(value)),
                other => return Err(Error::param(format!("config line {}: unknown key {other}", lineno + 1))),
            }
        }
        Ok(inputs)
    }

    /// Fields set in `self` win over those in `fallback`.
    pub fn or(self, fallback: ScenarioInputs) -> ScenarioInputs {
        ScenarioInputs {
            photons: self.photons.or(fallback.photons),
            in_b: self.in_b.or(fallback.in_b),
            g: self.g.or(fallback.g),
            omega: self.omega.or(fallback.omega),
            gt_max: self.gt_max.or(fallback.gt_max),
            steps: self.steps.or(fallback.steps),
            epsilon: self.epsilon.or(fallback.epsilon),
            oracle: self.oracle.or(fallback.oracle),
            out: self.out.or(fallback.out),
        }
    }

    pub fn resolve(self) -> Result<ScenarioConfig> {
        let photons = self.photons.ok_or_else(|| Error::param("missing photon number"))?;
        let in_b = self.in_b.ok_or_else(|| Error::param("missing photons in mode B"))?;
        let g = self.g.unwrap_or(1.0);
        let gt_max = self.gt_max.unwrap_or(DEFAULT_GT_MAX);
        if !(gt_max > 0.0) {
            return Err(Error::param(format!("gt-max must be positive, got {gt_max}")));
        }
        let mut config = ScenarioConfig::with_gt_window(photons, in_b, g, gt_max);
        config.omega = self.omega.unwrap_or(0.0);
        config.steps = self.steps.unwrap_or(DEFAULT_STEPS);
        config.survival_epsilon = self.epsilon.unwrap_or(DEFAULT_EPSILON);
        config.oracle = self.oracle.unwrap_or(false);
        config.output = self.out;
        config.validate()?;
        Ok(config)
    }
}

/// One curve of the published figures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureCurve {
    pub name: &'static str,
    pub total_photons: u32,
    pub photons_in_b: u32,
    pub gt_max: f64,
    pub steps: usize,
}

/// Figure 1: `N = 5` from `|5,0⟩, |4,1⟩, |3,2⟩` on a short and a long
/// window. Figure 2: `N = 9` from `|9,0⟩, |8,1⟩, |6,3⟩, |5,4⟩`.
pub const PAPER_FIGURES: [FigureCurve; 10] = [
    FigureCurve { name: "fig1a_N5_L0", total_photons: 5, photons_in_b: 0, gt_max: DEFAULT_GT_MAX, steps: DEFAULT_STEPS },
    FigureCurve { name: "fig1b_N5_L0_long", total_photons: 5, photons_in_b: 0, gt_max: LONG_GT_MAX, steps: 22016 },
    FigureCurve { name: "fig1c_N5_L1", total_photons: 5, photons_in_b: 1, gt_max: DEFAULT_GT_MAX, steps: DEFAULT_STEPS },
    FigureCurve { name: "fig1d_N5_L1_long", total_photons: 5, photons_in_b: 1, gt_max: LONG_GT_MAX, steps: 22016 },
    FigureCurve { name: "fig1e_N5_L2", total_photons: 5, photons_in_b: 2, gt_max: DEFAULT_GT_MAX, steps: DEFAULT_STEPS },
    FigureCurve { name: "fig1f_N5_L2_long", total_photons: 5, photons_in_b: 2, gt_max: LONG_GT_MAX, steps: 22016 },
    FigureCurve { name: "fig2a_N9_L0", total_photons: 9, photons_in_b: 0, gt_max: DEFAULT_GT_MAX, steps: DEFAULT_STEPS },
    FigureCurve { name: "fig2b_N9_L1", total_photons: 9, photons_in_b: 1, gt_max: DEFAULT_GT_MAX, steps: DEFAULT_STEPS },
    FigureCurve { name: "fig2c_N9_L3", total_photons: 9, photons_in_b: 3, gt_max: DEFAULT_GT_MAX, steps: DEFAULT_STEPS },
    FigureCurve { name: "fig2d_N9_L4", total_photons: 9, photons_in_b: 4, gt_max: DEFAULT_GT_MAX, steps: DEFAULT_STEPS },
];

impl FigureCurve {
    pub fn config(&self) -> ScenarioConfig {
        let mut c = ScenarioConfig::with_gt_window(self.total_photons, self.photons_in_b, 1.0, self.gt_max);
        c.steps = self.steps;
        c
    }
}

/// Writes every figure curve plus a `peaks.csv` summary into `dir`.
pub fn write_paper_figures(dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|source| Error::Io { path: dir.to_path_buf(), source })?;
    let mut written = Vec::new();
    let mut summary = String::from("curve,N,L,gt_max,peak,peak_gt,survival_gt\n");
    for curve in &PAPER_FIGURES {
        let mut config = curve.config();
        let path = dir.join(format!("{}.csv", curve.name));
        config.output = Some(path.clone());
        let record = run_scenario(&config)?;
        let peaks = report_peaks(&record, config.survival_epsilon)?;
        summary.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            curve.name,
            curve.total_photons,
            curve.photons_in_b,
            curve.gt_max,
            peaks.peak,
            peaks.peak_gt,
            peaks.survival_gt
        ));
        written.push(path);
    }
    let summary_path = dir.join("peaks.csv");
    fs::write(&summary_path, summary).map_err(|source| Error::Io { path: summary_path.clone(), source })?;
    written.push(summary_path);
    Ok(written)
}

/// Printable spectrum of a sector: `(λ, E, multiplicity)` per level.
pub fn spectrum_table(params: &HamiltonianParams) -> Result<Vec<(f64, f64, usize)>> {
    let decomp = assemble_spectrum(params)?;
    Ok(decomp.levels.iter().map(|l| (l.lambda, l.energy, l.multiplicity)).collect())
}

/// Entropy at a single time, for callers that do not need a whole grid.
pub fn entropy_at(spec: ProductStateSpec, params: &HamiltonianParams, t: f64) -> Result<f64> {
    let decomp = assemble_spectrum(params)?;
    Ok(schmidt_profile(&Propagator::new(spec, &decomp)?.at(t)).entropy)
}
