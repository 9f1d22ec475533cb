//! Deterministic parameter sweeps and the time-optimal search.
//!
//! Every sweep evaluates a grid of independent syntheses through [`Exec`] and
//! returns the records in grid order, so the output is identical for every
//! execution policy and thread count. Failed syntheses are kept as records
//! with `C = 2` and a failure flag rather than aborting the sweep.

use std::cmp::Ordering;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{config, Error, Result};
use crate::evolve::{distance_c, DistanceReport};
use crate::exec::Exec;
use crate::faquad::{synthesize_faquad, FaquadConfig};
use crate::ie::{synthesize, SynthesisConfig};
use crate::pulse::{config_hash, Pulse};

/// `C` assigned to a failed synthesis.
pub const FAILED_C: f64 = 2.0;

/// Pulse family evaluated at each point of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "IE-cubic")]
    IeCubic,
    /// Degree 4 with an inner scan over `a₂`.
    #[serde(rename = "IE-quartic")]
    IeQuartic,
    /// Degree 5 with an inner scan over `(a₂, a₃)`.
    #[serde(rename = "IE-quintic")]
    IeQuintic,
    #[serde(rename = "FAQUAD")]
    Faquad,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::IeCubic => "IE-cubic",
            Method::IeQuartic => "IE-quartic",
            Method::IeQuintic => "IE-quintic",
            Method::Faquad => "FAQUAD",
        }
    }

    fn degree(self) -> Option<usize> {
        match self {
            Method::IeCubic => Some(3),
            Method::IeQuartic => Some(4),
            Method::IeQuintic => Some(5),
            Method::Faquad => None,
        }
    }

    /// Names of the witness coefficients reported for scanned methods.
    fn witness_names(self) -> &'static [&'static str] {
        match self {
            Method::IeQuartic => &["a2"],
            Method::IeQuintic => &["a2", "a3"],
            _ => &[],
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "IE-cubic" => Ok(Method::IeCubic),
            "IE-quartic" => Ok(Method::IeQuartic),
            "IE-quintic" => Ok(Method::IeQuintic),
            "FAQUAD" => Ok(Method::Faquad),
            other => Err(config(format!("unknown method {other:?}"))),
        }
    }
}

/// `lo, lo + step, …, hi` with the count rounded to the nearest integer, so
/// grid points are `lo + k·step` exactly.
pub fn step_grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite() && step > 0.0) || hi < lo {
        return Err(config(format!("bad grid [{lo}, {hi}] step {step}")));
    }
    let n = ((hi - lo) / step).round() as usize;
    Ok((0..=n).map(|k| lo + step * k as f64).collect())
}

/// Free-coefficient grid: `a₃` is empty for degree 4.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientGrid {
    pub a2: Vec<f64>,
    #[serde(default)]
    pub a3: Vec<f64>,
}

impl CoefficientGrid {
    /// `a₂ ∈ [−600, 100]`, step 1.
    pub fn default_quartic() -> Self {
        Self { a2: step_grid(-600.0, 100.0, 1.0).unwrap(), a3: Vec::new() }
    }

    /// `a₂ ∈ [−200, 100]` step 5 by `a₃ ∈ [−6000, 0]` step 20.
    pub fn default_quintic() -> Self {
        Self { a2: step_grid(-200.0, 100.0, 5.0).unwrap(), a3: step_grid(-6000.0, 0.0, 20.0).unwrap() }
    }

    pub fn default_for(degree: usize) -> Option<Self> {
        match degree {
            4 => Some(Self::default_quartic()),
            5 => Some(Self::default_quintic()),
            _ => None,
        }
    }

    pub fn degree(&self) -> usize {
        if self.a3.is_empty() {
            4
        } else {
            5
        }
    }

    pub fn len(&self) -> usize {
        self.a2.len() * self.a3.len().max(1)
    }

    pub fn is_empty(&self) -> bool {
        self.a2.is_empty()
    }

    fn check(&self, degree: usize) -> Result<()> {
        if self.a2.is_empty() {
            return Err(config("coefficient grid for a2 is empty"));
        }
        if self.degree() != degree {
            return Err(config(format!(
                "degree {degree} needs {} coefficient grid(s), got {}",
                degree - 3,
                self.degree() - 3
            )));
        }
        if self.a2.iter().chain(&self.a3).any(|v| !v.is_finite()) {
            return Err(config("coefficient grids must be finite"));
        }
        Ok(())
    }

    /// Cell coefficients for index pair `(i, j)`.
    fn cell(&self, i: usize, j: usize) -> Vec<f64> {
        if self.a3.is_empty() {
            vec![self.a2[i]]
        } else {
            vec![self.a2[i], self.a3[j]]
        }
    }

    fn dims(&self) -> (usize, usize) {
        (self.a2.len(), self.a3.len().max(1))
    }
}

/// How scanned methods search their coefficient grid inside `sweep_tf`,
/// `sweep_omega_f`, `scan_y` and `time_optimal`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InnerSearch {
    /// Every cell of the grid.
    Full,
    /// Every `stride`-th cell along each axis (plus the last), then every
    /// cell within one stride of the best coarse cell.
    CoarseToFine { stride: usize },
}

impl Default for InnerSearch {
    fn default() -> Self {
        InnerSearch::CoarseToFine { stride: 5 }
    }
}

/// Knobs shared by all sweeps.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepOptions {
    pub exec: Exec,
    pub search: InnerSearch,
    /// Inner grid for scanned methods; `None` uses the default for the degree.
    pub grid: Option<CoefficientGrid>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self { exec: Exec::Parallel, search: InnerSearch::default(), grid: None }
    }
}

/// One evaluated grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    /// Swept parameters in column order, followed by witness coefficients.
    pub params: Vec<(String, f64)>,
    pub c: f64,
    pub f0: f64,
    pub f1: f64,
    /// `|β(0) − π|`; absent for FAQUAD.
    pub epsilon_achieved: Option<f64>,
    pub omega_start: f64,
    pub clamped: bool,
    pub failed: bool,
    pub failure: Option<String>,
    /// Hash of the exact configuration evaluated at this point.
    pub config_hash: String,
}

impl SweepRecord {
    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.iter().find(|(n, _)| n == name).map(|&(_, v)| v)
    }

    fn failure(params: Vec<(String, f64)>, hash: String, err: &Error) -> Self {
        Self {
            params,
            c: FAILED_C,
            f0: 0.0,
            f1: 0.0,
            epsilon_achieved: None,
            omega_start: f64::NAN,
            clamped: false,
            failed: true,
            failure: Some(err.to_string()),
            config_hash: hash,
        }
    }

    fn prepend(mut self, outer: &[(String, f64)]) -> Self {
        let mut params = outer.to_vec();
        params.append(&mut self.params);
        self.params = params;
        self
    }
}

/// Total order used for every argmin: smallest `C`, then smallest `|a₂|`,
/// then smallest `|a₃|`, then smallest `t_f`, then grid position.
fn record_order(a: &SweepRecord, b: &SweepRecord) -> Ordering {
    let abs = |r: &SweepRecord, n: &str| r.param(n).map_or(0.0, f64::abs);
    let plain = |r: &SweepRecord, n: &str| r.param(n).unwrap_or(0.0);
    a.c.total_cmp(&b.c)
        .then_with(|| abs(a, "a2").total_cmp(&abs(b, "a2")))
        .then_with(|| abs(a, "a3").total_cmp(&abs(b, "a3")))
        .then_with(|| plain(a, "t_f").total_cmp(&plain(b, "t_f")))
}

fn argmin(records: &[SweepRecord]) -> usize {
    let mut best = 0;
    for (k, r) in records.iter().enumerate().skip(1) {
        if record_order(r, &records[best]) == Ordering::Less {
            best = k;
        }
    }
    best
}

/// Records of a sweep in grid order plus the tie-broken argmin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    pub param_names: Vec<String>,
    pub records: Vec<SweepRecord>,
    pub argmin: usize,
    /// Hash of the template configuration and sweep description.
    pub template_hash: String,
}

impl Sweep {
    fn new(param_names: Vec<String>, records: Vec<SweepRecord>, template_hash: String) -> Result<Self> {
        if records.is_empty() {
            return Err(config("sweep produced no records"));
        }
        let argmin = argmin(&records);
        Ok(Self { param_names, records, argmin, template_hash })
    }

    pub fn best(&self) -> &SweepRecord {
        &self.records[self.argmin]
    }

    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| r.failed).count()
    }

    /// Column `name` over all records (`NaN` where absent).
    pub fn column(&self, name: &str) -> Vec<f64> {
        self.records.iter().map(|r| r.param(name).unwrap_or(f64::NAN)).collect()
    }

    pub fn c_values(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.c).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# template_hash: {}", self.template_hash);
        for name in &self.param_names {
            let _ = write!(out, "{name},");
        }
        out.push_str("C,F0,F1,epsilon_achieved,omega_0,clamped,failed,config_hash\n");
        for r in &self.records {
            for name in &self.param_names {
                match r.param(name) {
                    Some(v) => {
                        let _ = write!(out, "{v},");
                    }
                    None => out.push(','),
                }
            }
            let eps = r.epsilon_achieved.map(|e| e.to_string()).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                r.c, r.f0, r.f1, eps, r.omega_start, r.clamped as u8, r.failed as u8, r.config_hash
            );
        }
        out
    }

    /// Argmin, failure count and hashes.
    pub fn summary_json(&self) -> Value {
        let best = self.best();
        let params: Map<String, Value> = best.params.iter().map(|(n, v)| (n.clone(), json!(v))).collect();
        json!({
            "parameters": self.param_names,
            "records": self.records.len(),
            "failed": self.failures(),
            "argmin": {
                "index": self.argmin,
                "params": params,
                "C": best.c,
                "F0": best.f0,
                "F1": best.f1,
                "config_hash": best.config_hash,
            },
            "template_hash": self.template_hash,
        })
    }
}

fn ie_record(cfg: &SynthesisConfig, params: Vec<(String, f64)>) -> SweepRecord {
    let hash = cfg.hash();
    let result = synthesize(cfg).and_then(|r| {
        let d = distance_c(&r.pulse, cfg.x_max)?;
        Ok((r.diagnostics, d))
    });
    match result {
        Ok((diag, DistanceReport { f0, f1, c })) => SweepRecord {
            params,
            c,
            f0,
            f1,
            epsilon_achieved: Some(diag.epsilon_achieved),
            omega_start: diag.omega_start,
            clamped: diag.clamped,
            failed: false,
            failure: None,
            config_hash: hash,
        },
        Err(e) => SweepRecord::failure(params, hash, &e),
    }
}

/// FAQUAD pulse matching an IE configuration: `Ω` runs from `κ` to `Ω_f`
/// over `t_f`, with `μ` held constant at the design potential `y`.
pub fn faquad_counterpart(cfg: &SynthesisConfig) -> FaquadConfig {
    FaquadConfig { omega_start: cfg.kappa, omega_f: cfg.omega_f, t_f: cfg.t_f, x_star: cfg.y, n_s: cfg.n_time }
}

fn faquad_record(cfg: &SynthesisConfig, params: Vec<(String, f64)>) -> SweepRecord {
    let fq = faquad_counterpart(cfg);
    let hash = config_hash(&fq);
    match synthesize_faquad(&fq).and_then(|p| distance_c(&p, cfg.x_max).map(|d| (p, d))) {
        Ok((p, DistanceReport { f0, f1, c })) => SweepRecord {
            params,
            c,
            f0,
            f1,
            epsilon_achieved: None,
            omega_start: p.omega_start(),
            clamped: false,
            failed: false,
            failure: None,
            config_hash: hash,
        },
        Err(e) => SweepRecord::failure(params, hash, &e),
    }
}

fn coefficient_cfg(cfg: &SynthesisConfig, coeffs: Vec<f64>) -> SynthesisConfig {
    SynthesisConfig { degree: coeffs.len() + 3, free_coeffs: coeffs, ..cfg.clone() }
}

fn coefficient_params(coeffs: &[f64]) -> Vec<(String, f64)> {
    ["a2", "a3"].iter().zip(coeffs).map(|(n, &v)| (n.to_string(), v)).collect()
}

fn eval_cells(cfg: &SynthesisConfig, grid: &CoefficientGrid, cells: &[(usize, usize)], exec: Exec) -> Vec<SweepRecord> {
    exec.map(cells, |&(i, j)| {
        let coeffs = grid.cell(i, j);
        ie_record(&coefficient_cfg(cfg, coeffs.clone()), coefficient_params(&coeffs))
    })
}

/// Full evaluation of `C` over a free-coefficient grid, in row-major
/// `(a₂, a₃)` order. The grid must match `cfg.degree`.
pub fn scan_coefficients(cfg: &SynthesisConfig, grid: &CoefficientGrid, exec: Exec) -> Result<Sweep> {
    grid.check(cfg.degree)?;
    let template = coefficient_cfg(cfg, grid.cell(0, 0));
    template.validate()?;
    let (n2, n3) = grid.dims();
    let cells: Vec<_> = (0..n2).flat_map(|i| (0..n3).map(move |j| (i, j))).collect();
    let records = eval_cells(cfg, grid, &cells, exec);
    let names = ["a2", "a3"][..cfg.degree - 3].iter().map(|s| s.to_string()).collect();
    Sweep::new(names, records, config_hash(&(cfg, grid)))
}

fn strided(n: usize, stride: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).step_by(stride.max(1)).collect();
    if v.last() != Some(&(n - 1)) {
        v.push(n - 1);
    }
    v
}

/// Best record of an inner coefficient search.
fn inner_best(cfg: &SynthesisConfig, grid: &CoefficientGrid, search: InnerSearch, exec: Exec) -> SweepRecord {
    let (n2, n3) = grid.dims();
    let mut records = match search {
        InnerSearch::Full => {
            let cells: Vec<_> = (0..n2).flat_map(|i| (0..n3).map(move |j| (i, j))).collect();
            eval_cells(cfg, grid, &cells, exec)
        }
        InnerSearch::CoarseToFine { stride } => {
            let (s2, s3) = (strided(n2, stride), strided(n3, stride));
            let coarse: Vec<_> = s2.iter().flat_map(|&i| s3.iter().map(move |&j| (i, j))).collect();
            let mut records = eval_cells(cfg, grid, &coarse, exec);
            let (bi, bj) = coarse[argmin(&records)];
            let window = |b: usize, n: usize| b.saturating_sub(stride)..(b + stride + 1).min(n);
            let fine: Vec<_> = window(bi, n2)
                .flat_map(|i| window(bj, n3).map(move |j| (i, j)))
                .filter(|c| !coarse.contains(c))
                .collect();
            records.extend(eval_cells(cfg, grid, &fine, exec));
            records
        }
    };
    let k = argmin(&records);
    records.swap_remove(k)
}

/// Evaluate one method at `cfg`. Scanned methods return their best
/// coefficients as trailing parameters.
fn evaluate(cfg: &SynthesisConfig, method: Method, opts: &SweepOptions, exec: Exec) -> SweepRecord {
    match method {
        Method::Faquad => faquad_record(cfg, Vec::new()),
        Method::IeCubic => ie_record(&coefficient_cfg(cfg, Vec::new()), Vec::new()),
        Method::IeQuartic | Method::IeQuintic => {
            let degree = method.degree().unwrap_or(3);
            let grid = opts.grid.clone().unwrap_or_else(|| CoefficientGrid::default_for(degree).unwrap());
            inner_best(cfg, &grid, opts.search, exec)
        }
    }
}

fn check_method_grid(method: Method, opts: &SweepOptions) -> Result<()> {
    match (method.degree(), &opts.grid) {
        (Some(d @ 4..=5), Some(g)) => g.check(d),
        _ => Ok(()),
    }
}

/// One evaluation of `method` per value of a single swept parameter.
fn sweep_param<F>(
    template: &SynthesisConfig,
    name: &str,
    grid: &[f64],
    method: Method,
    opts: &SweepOptions,
    apply: F,
) -> Result<Sweep>
where
    F: Fn(&SynthesisConfig, f64) -> SynthesisConfig + Sync + Send,
{
    if grid.is_empty() {
        return Err(config(format!("{name} grid is empty")));
    }
    if grid.iter().any(|v| !v.is_finite()) {
        return Err(config(format!("{name} grid must be finite")));
    }
    check_method_grid(method, opts)?;
    // Configuration errors are fatal; synthesis failures are recorded.
    for &v in grid {
        let cfg = apply(template, v);
        let probe = match method.degree() {
            Some(d) => SynthesisConfig { degree: d, free_coeffs: vec![0.0; d - 3], ..cfg },
            None => cfg,
        };
        probe.validate()?;
    }
    // Scanned methods parallelize their inner grid; the rest fan out here.
    let scanned = !method.witness_names().is_empty();
    let (outer, inner) = if scanned { (Exec::Sequential, opts.exec) } else { (opts.exec, Exec::Sequential) };
    let records = outer.map(grid, |&v| {
        let cfg = apply(template, v);
        evaluate(&cfg, method, opts, inner).prepend(&[(name.to_string(), v)])
    });
    let mut names = vec![name.to_string()];
    names.extend(method.witness_names().iter().map(|s| s.to_string()));
    let hash = config_hash(&(template, name, grid, method, &opts.grid, opts.search));
    Sweep::new(names, records, hash)
}

/// `C` versus design potential `y/Ω_f`.
pub fn scan_y(template: &SynthesisConfig, y_grid: &[f64], method: Method, opts: &SweepOptions) -> Result<Sweep> {
    sweep_param(template, "y_over_omega_f", y_grid, method, opts, |c, u| SynthesisConfig {
        y: u * c.omega_f,
        ..c.clone()
    })
}

/// `C` versus operation time.
pub fn sweep_tf(template: &SynthesisConfig, tf_grid: &[f64], method: Method, opts: &SweepOptions) -> Result<Sweep> {
    sweep_param(template, "t_f", tf_grid, method, opts, |c, t_f| SynthesisConfig { t_f, ..c.clone() })
}

/// `C` versus final field `Ω_f` at fixed `y/Ω_f`.
pub fn sweep_omega_f(
    template: &SynthesisConfig,
    omega_f_grid: &[f64],
    method: Method,
    opts: &SweepOptions,
) -> Result<Sweep> {
    if omega_f_grid.iter().any(|&w| !(w > 0.0)) {
        return Err(config("omega_f grid must be positive"));
    }
    let ratio = template.y / template.omega_f;
    sweep_param(template, "omega_f", omega_f_grid, method, opts, move |c, w| SynthesisConfig {
        omega_f: w,
        y: ratio * w,
        ..c.clone()
    })
}

/// Outcome of [`time_optimal`].
#[derive(Debug, Clone)]
pub struct TimeOptimal {
    pub t_f: f64,
    pub record: SweepRecord,
    pub pulse: Pulse,
    /// Every `t_f` evaluated by the bisection, in evaluation order.
    pub evaluations: Vec<SweepRecord>,
}

/// Smallest `t_f` on `tf_grid` whose best `C` is at most `c_tolerance`,
/// located by bisection on the grid index. Feasibility is assumed monotone
/// in `t_f`; the largest grid point must be feasible.
pub fn time_optimal(
    template: &SynthesisConfig,
    tf_grid: &[f64],
    c_tolerance: f64,
    method: Method,
    opts: &SweepOptions,
) -> Result<TimeOptimal> {
    if !(c_tolerance > 0.0) {
        return Err(config(format!("C tolerance must be positive, got {c_tolerance}")));
    }
    if tf_grid.is_empty() || tf_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(config("t_f grid must be non-empty and strictly increasing"));
    }
    check_method_grid(method, opts)?;
    let mut evaluations = Vec::new();
    let mut eval = |k: usize| {
        let cfg = SynthesisConfig { t_f: tf_grid[k], ..template.clone() };
        let r = evaluate(&cfg, method, opts, opts.exec).prepend(&[("t_f".to_string(), tf_grid[k])]);
        evaluations.push(r.clone());
        r
    };
    let last = tf_grid.len() - 1;
    let top = eval(last);
    if top.c > c_tolerance {
        return Err(Error::InvalidInput(format!(
            "C ≤ {c_tolerance} is unattainable on t_f ∈ [{}, {}]: best C at t_f = {} is {}",
            tf_grid[0], tf_grid[last], tf_grid[last], top.c
        )));
    }
    let mut hi = (last, top);
    let first = if last == 0 { None } else { Some(eval(0)) };
    match first {
        Some(r) if r.c <= c_tolerance => hi = (0, r),
        Some(_) => {
            let mut lo = 0;
            while hi.0 - lo > 1 {
                let mid = lo + (hi.0 - lo) / 2;
                let r = eval(mid);
                if r.c <= c_tolerance {
                    hi = (mid, r);
                } else {
                    lo = mid;
                }
            }
        }
        None => {}
    }
    let (k, record) = hi;
    let coeffs: Vec<f64> = method.witness_names().iter().filter_map(|n| record.param(n)).collect();
    let cfg = SynthesisConfig { t_f: tf_grid[k], ..template.clone() };
    let pulse = witness_pulse(&cfg, method, coeffs)?;
    Ok(TimeOptimal { t_f: tf_grid[k], record, pulse, evaluations })
}

/// Pulse of `method` at `cfg` with the given witness coefficients.
pub fn witness_pulse(cfg: &SynthesisConfig, method: Method, coeffs: Vec<f64>) -> Result<Pulse> {
    match method {
        Method::Faquad => synthesize_faquad(&faquad_counterpart(cfg)),
        _ => Ok(synthesize(&coefficient_cfg(cfg, coeffs))?.pulse),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fast(t_f: f64) -> SynthesisConfig {
        SynthesisConfig { n_time: 2000, ..SynthesisConfig::cubic(t_f) }
    }

    #[test]
    fn step_grid_hits_endpoints() {
        let g = step_grid(-600.0, 100.0, 1.0).unwrap();
        assert_eq!(g.len(), 701);
        assert_eq!((g[0], g[700]), (-600.0, 100.0));
        assert_eq!(CoefficientGrid::default_quintic().len(), 61 * 301);
        assert!(step_grid(1.0, 0.0, 0.1).is_err());
        assert!(step_grid(0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn method_names_round_trip() {
        for m in [Method::IeCubic, Method::IeQuartic, Method::IeQuintic, Method::Faquad] {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), m);
            assert_eq!(serde_json::to_string(&m).unwrap(), format!("\"{m}\""));
        }
        assert!("cubic".parse::<Method>().is_err());
    }

    fn rec(c: f64, params: &[(&str, f64)]) -> SweepRecord {
        let mut r = SweepRecord::failure(
            params.iter().map(|(n, v)| (n.to_string(), *v)).collect(),
            String::new(),
            &Error::Config(String::new()),
        );
        r.c = c;
        r
    }

    #[test]
    fn tie_breaking_order() {
        let rs = vec![
            rec(0.1, &[("a2", -5.0), ("a3", 1.0)]),
            rec(0.1, &[("a2", 3.0), ("a3", -2.0)]),
            rec(0.1, &[("a2", -3.0), ("a3", 1.0)]),
            rec(0.2, &[("a2", 0.0), ("a3", 0.0)]),
        ];
        assert_eq!(argmin(&rs), 2);
        let ts = vec![rec(0.1, &[("t_f", 0.3)]), rec(0.1, &[("t_f", 0.2)])];
        assert_eq!(argmin(&ts), 1);
    }

    #[test]
    fn degenerate_grids_pass_through() {
        let cfg = SynthesisConfig { n_time: 2000, ..SynthesisConfig::quartic(0.15, 0.0) };
        let grid = CoefficientGrid { a2: vec![-391.0], a3: vec![] };
        let s = scan_coefficients(&cfg, &grid, Exec::Sequential).unwrap();
        assert_eq!((s.records.len(), s.argmin), (1, 0));
        assert_eq!(s.best().param("a2"), Some(-391.0));

        let opts = SweepOptions { exec: Exec::Sequential, ..SweepOptions::default() };
        let s = scan_y(&fast(1.0), &[12.0], Method::IeCubic, &opts).unwrap();
        assert_eq!(s.best().param("y_over_omega_f"), Some(12.0));
        let s = sweep_omega_f(&fast(0.2), &[1.0], Method::IeCubic, &opts).unwrap();
        assert_eq!(s.records.len(), 1);
    }

    #[test]
    fn grid_and_degree_must_agree() {
        let cfg = SynthesisConfig::quintic(0.15, 0.0, 0.0);
        assert!(scan_coefficients(&cfg, &CoefficientGrid::default_quartic(), Exec::Sequential).is_err());
        let empty = CoefficientGrid { a2: vec![], a3: vec![] };
        assert!(scan_coefficients(&SynthesisConfig::quartic(0.15, 0.0), &empty, Exec::Sequential).is_err());
        let opts = SweepOptions::default();
        assert!(sweep_tf(&fast(0.2), &[], Method::IeCubic, &opts).is_err());
    }

    #[test]
    fn failures_are_recorded_not_fatal() {
        let opts = SweepOptions { exec: Exec::Sequential, ..SweepOptions::default() };
        let s = sweep_tf(&fast(1.0), &[0.0, 0.5], Method::IeCubic, &opts).unwrap();
        assert!(s.records[0].failed && s.records[0].c == FAILED_C);
        assert!(s.records[0].failure.is_some());
        assert!(!s.records[1].failed);
        assert_eq!(s.argmin, 1);
        assert_eq!(s.failures(), 1);
        // x* = 0 is an invalid FAQUAD design; recorded as a failure.
        let s = scan_y(&fast(0.5), &[0.0], Method::Faquad, &opts).unwrap();
        assert!(s.records[0].failed);
    }

    #[test]
    fn records_carry_distinct_hashes_and_csv_is_policy_independent() {
        let grid = step_grid(0.2, 0.4, 0.1).unwrap();
        let seq = SweepOptions { exec: Exec::Sequential, ..SweepOptions::default() };
        let par = SweepOptions { exec: Exec::Parallel, ..SweepOptions::default() };
        let a = sweep_tf(&fast(1.0), &grid, Method::IeCubic, &seq).unwrap();
        let b = sweep_tf(&fast(1.0), &grid, Method::IeCubic, &par).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        assert_ne!(a.records[0].config_hash, a.records[1].config_hash);
        let csv = a.to_csv();
        assert!(csv.lines().nth(1).unwrap().starts_with("t_f,C,F0,F1"));
        assert_eq!(csv.lines().count(), 2 + grid.len());
        let summary = a.summary_json();
        assert_eq!(summary["records"], 3);
        assert_eq!(summary["argmin"]["index"], a.argmin);
    }

    #[test]
    fn coarse_to_fine_stays_on_grid_and_beats_coarse() {
        let cfg = SynthesisConfig { n_time: 2000, ..SynthesisConfig::quartic(0.15, 0.0) };
        let grid = CoefficientGrid { a2: step_grid(-600.0, 100.0, 10.0).unwrap(), a3: vec![] };
        let full = scan_coefficients(&cfg, &grid, Exec::Sequential).unwrap();
        let best = inner_best(&cfg, &grid, InnerSearch::CoarseToFine { stride: 5 }, Exec::Sequential);
        assert!(grid.a2.contains(&best.param("a2").unwrap()));
        assert!(best.c <= full.records.iter().step_by(5).map(|r| r.c).fold(f64::INFINITY, f64::min));
        let exhaustive = inner_best(&cfg, &grid, InnerSearch::Full, Exec::Sequential);
        assert_eq!(exhaustive, *full.best());
    }

    #[test]
    fn time_optimal_trivial_tolerance_returns_first_point() {
        let grid = step_grid(0.1, 0.3, 0.05).unwrap();
        let opts = SweepOptions { exec: Exec::Sequential, ..SweepOptions::default() };
        let r = time_optimal(&fast(1.0), &grid, 2.0, Method::IeCubic, &opts).unwrap();
        assert_eq!(r.t_f, 0.1);
        assert!(time_optimal(&fast(1.0), &grid, 1e-9, Method::IeCubic, &opts).is_err());
        assert!(time_optimal(&fast(1.0), &grid, 0.0, Method::IeCubic, &opts).is_err());
    }
}
