//! Inverse-engineered control pulses.
//!
//! The dynamical state is parameterized by Bloch angles (see
//! [`QubitState::from_bloch`]). Substituting it into the Schrödinger equation
//! for `H = -(x σ_z + Ω σ_x)/2` gives
//!
//! ```text
//! Ω(t) = θ̇ / sin β
//! β̇    = θ̇ cot θ cot β − x
//! ```
//!
//! The pipeline fixes `θ(t)` as a polynomial matching four boundary values,
//! integrates the `β` equation backward from `β(t_f) = π/2` at the design
//! potential `x = y`, and reads off `Ω(t)`.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{Matrix4, Vector4};
use serde::{Deserialize, Serialize};

use crate::error::{config, Error, Result};
use crate::model::{sigmoid_unchecked, QubitState};
use crate::ode::{self, OdeOptions};
use crate::pulse::{config_hash, uniform_grid, Provenance, Pulse};

/// |cot θ| above this is treated as θ having reached 0 or π.
const COT_THETA_CAP: f64 = 1e8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthesisConfig {
    /// Reference gap defining the effective initial condition, `κ ≫ x_max Ω_f`.
    pub kappa: f64,
    pub omega_f: f64,
    pub t_f: f64,
    /// Half-width of the activation range in units of `Ω_f`.
    pub x_max: f64,
    /// Design potential the pulse is engineered for.
    pub y: f64,
    /// Sets `θ̇(0) = κ sin ε`.
    pub epsilon: f64,
    /// Neuron bias; only enters where a weighted input sum becomes a potential.
    pub bias: f64,
    pub degree: usize,
    /// `[a₂]` for degree 4, `[a₂, a₃]` for degree 5.
    pub free_coeffs: Vec<f64>,
    pub n_time: usize,
    /// Numerical cap on `|Ω|`; defaults to `10 κ`.
    pub omega_cap: Option<f64>,
}

impl Default for SynthesisConfig {
    fn default() -> Self {
        Self {
            kappa: 2000.0,
            omega_f: 1.0,
            t_f: 1.0,
            x_max: 12.0,
            y: 12.0,
            epsilon: 5e-5,
            bias: 0.0,
            degree: 3,
            free_coeffs: Vec::new(),
            n_time: 20_000,
            omega_cap: None,
        }
    }
}

impl SynthesisConfig {
    pub fn cubic(t_f: f64) -> Self {
        Self { t_f, ..Self::default() }
    }

    pub fn quartic(t_f: f64, a2: f64) -> Self {
        Self { t_f, degree: 4, free_coeffs: vec![a2], ..Self::default() }
    }

    pub fn quintic(t_f: f64, a2: f64, a3: f64) -> Self {
        Self { t_f, degree: 5, free_coeffs: vec![a2, a3], ..Self::default() }
    }

    pub fn omega_cap(&self) -> f64 {
        self.omega_cap.unwrap_or(10.0 * self.kappa)
    }

    /// Checks everything except `t_f > 0`, which is reported as a synthesis failure.
    pub fn validate(&self) -> Result<()> {
        let finite = [self.kappa, self.omega_f, self.t_f, self.x_max, self.y, self.epsilon, self.bias];
        if finite.iter().any(|v| !v.is_finite()) || self.free_coeffs.iter().any(|v| !v.is_finite()) {
            return Err(config("all numeric fields must be finite"));
        }
        if !(self.omega_f > 0.0) {
            return Err(config(format!("omega_f must be positive, got {}", self.omega_f)));
        }
        if !(self.x_max > 0.0) {
            return Err(config(format!("x_max must be positive, got {}", self.x_max)));
        }
        if self.kappa < 100.0 * self.x_max * self.omega_f {
            return Err(config(format!(
                "kappa = {} must be at least 100·x_max·omega_f = {}",
                self.kappa,
                100.0 * self.x_max * self.omega_f
            )));
        }
        if self.t_f < 0.0 {
            return Err(config(format!("t_f must be non-negative, got {}", self.t_f)));
        }
        if self.n_time < 1000 {
            return Err(config(format!("n_time must be at least 1000, got {}", self.n_time)));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 0.1) {
            return Err(config(format!("epsilon must lie in (0, 0.1), got {}", self.epsilon)));
        }
        if !(3..=5).contains(&self.degree) {
            return Err(config(format!("degree must be 3, 4 or 5, got {}", self.degree)));
        }
        if self.free_coeffs.len() != self.degree - 3 {
            return Err(config(format!(
                "degree {} needs {} free coefficient(s), got {}",
                self.degree,
                self.degree - 3,
                self.free_coeffs.len()
            )));
        }
        if let Some(cap) = self.omega_cap {
            if !(cap > 0.0) {
                return Err(config("omega_cap must be positive"));
            }
        }
        Ok(())
    }

    pub fn hash(&self) -> String {
        config_hash(self)
    }
}

/// `(θ(0), θ(t_f), θ̇(0), θ̇(t_f))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryValues {
    pub theta_0: f64,
    pub theta_f: f64,
    pub dtheta_0: f64,
    pub dtheta_f: f64,
}

/// `θ(0) = 2 asin √f(y/κ)`, `θ(t_f) = 2 asin √f(y/Ω_f)`, `θ̇(0) = κ sin ε`, `θ̇(t_f) = Ω_f`.
pub fn boundary_conditions(cfg: &SynthesisConfig) -> Result<BoundaryValues> {
    cfg.validate()?;
    let angle = |u: f64| 2.0 * sigmoid_unchecked(u).sqrt().asin();
    Ok(BoundaryValues {
        theta_0: angle(cfg.y / cfg.kappa),
        theta_f: angle(cfg.y / cfg.omega_f),
        dtheta_0: cfg.kappa * cfg.epsilon.sin(),
        dtheta_f: cfg.omega_f * FRAC_PI_2.sin(),
    })
}

/// Polynomial polar angle `θ(t) = Σ aᵢ tⁱ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaAnsatz {
    pub coeffs: Vec<f64>,
    pub t_f: f64,
}

impl ThetaAnsatz {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn theta(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, a| acc * t + a)
    }

    pub fn dtheta(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(0.0, |acc, (i, a)| acc * t + i as f64 * a)
    }

    /// Largest absolute mismatch against the requested boundary values.
    pub fn boundary_residual(&self, bc: &BoundaryValues) -> f64 {
        [
            self.theta(0.0) - bc.theta_0,
            self.theta(self.t_f) - bc.theta_f,
            self.dtheta(0.0) - bc.dtheta_0,
            self.dtheta(self.t_f) - bc.dtheta_f,
        ]
        .iter()
        .fold(0.0f64, |m, r| m.max(r.abs()))
    }
}

/// Solve for the polynomial coefficients.
///
/// `a₀, a₁, a_{s−1}, a_s` are determined by the four boundary values; the
/// coefficients in between are the caller-supplied free parameters.
pub fn solve_theta(bc: &BoundaryValues, t_f: f64, degree: usize, free_coeffs: &[f64]) -> Result<ThetaAnsatz> {
    if !(3..=5).contains(&degree) {
        return Err(Error::InvalidInput(format!("degree must be 3, 4 or 5, got {degree}")));
    }
    if free_coeffs.len() != degree - 3 {
        return Err(Error::InvalidInput(format!(
            "degree {degree} needs {} free coefficient(s), got {}",
            degree - 3,
            free_coeffs.len()
        )));
    }
    if !(t_f > 0.0) || !t_f.is_finite() {
        return Err(Error::Singular(format!("boundary system is singular for t_f = {t_f}")));
    }

    let mut coeffs = vec![0.0; degree + 1];
    for (i, a) in free_coeffs.iter().enumerate() {
        coeffs[2 + i] = *a;
    }
    let unknown = [0, 1, degree - 1, degree];
    let value_row = |i: usize| t_f.powi(i as i32);
    let slope_row = |i: usize| if i == 0 { 0.0 } else { i as f64 * t_f.powi(i as i32 - 1) };

    let mut m = Matrix4::<f64>::zeros();
    for (col, &i) in unknown.iter().enumerate() {
        m[(0, col)] = if i == 0 { 1.0 } else { 0.0 };
        m[(1, col)] = if i == 1 { 1.0 } else { 0.0 };
        m[(2, col)] = value_row(i);
        m[(3, col)] = slope_row(i);
    }
    let known: Vec<usize> = (2..degree - 1).collect();
    let rhs = Vector4::new(
        bc.theta_0,
        bc.dtheta_0,
        bc.theta_f - known.iter().map(|&i| coeffs[i] * value_row(i)).sum::<f64>(),
        bc.dtheta_f - known.iter().map(|&i| coeffs[i] * slope_row(i)).sum::<f64>(),
    );
    let sol = m
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Singular(format!("boundary system is singular for t_f = {t_f}")))?;
    for (col, &i) in unknown.iter().enumerate() {
        coeffs[i] = sol[col];
    }
    Ok(ThetaAnsatz { coeffs, t_f })
}

/// Azimuthal angle sampled on the uniform pulse grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BetaTrajectory {
    pub grid: Vec<f64>,
    pub beta: Vec<f64>,
    /// `π − β(0)`.
    pub epsilon_achieved: f64,
    pub steps_accepted: usize,
}

pub fn beta_ode_options(t_f: f64) -> OdeOptions {
    OdeOptions { atol: 1e-10, rtol: 1e-10, h_max: t_f / 200.0, ..OdeOptions::default() }
}

/// Integrate `β̇ = θ̇ cot θ cot β − y` backward from `β(t_f) = π/2` and sample
/// it on `n_time` uniform points.
pub fn integrate_beta(theta: &ThetaAnsatz, y: f64, n_time: usize) -> Result<BetaTrajectory> {
    let t_f = theta.t_f;
    if !(t_f > 0.0) {
        return Err(Error::SynthesisFailure { time: 0.0, reason: format!("t_f must be positive, got {t_f}") });
    }
    if n_time < 2 {
        return Err(Error::InvalidInput("n_time must be at least 2".into()));
    }
    let rhs = |t: f64, b: f64| -> Option<f64> {
        if !(b > 0.0 && b < PI) {
            return None;
        }
        let (st, ct) = theta.theta(t).sin_cos();
        let cot_theta = ct / st;
        if !cot_theta.is_finite() || cot_theta.abs() > COT_THETA_CAP {
            return None;
        }
        let (sb, cb) = b.sin_cos();
        let v = theta.dtheta(t) * cot_theta * cb / sb - y;
        v.is_finite().then_some(v)
    };
    let sol = ode::integrate(rhs, t_f, FRAC_PI_2, 0.0, &beta_ode_options(t_f))
        .map_err(|f| Error::SynthesisFailure { time: f.time, reason: f.reason })?;

    let grid = uniform_grid(t_f, n_time);
    let beta = sol.sample(&grid);
    if let Some(k) = beta.iter().position(|b| !(b.sin() > 0.0)) {
        return Err(Error::SynthesisFailure {
            time: grid[k],
            reason: format!("β = {} leaves (0, π)", beta[k]),
        });
    }
    Ok(BetaTrajectory {
        epsilon_achieved: PI - beta[0],
        grid,
        beta,
        steps_accepted: sol.steps_accepted,
    })
}

/// `Ω(t) = θ̇ / sin β` on the trajectory grid, clamped to `±omega_cap`.
pub fn extract_pulse(
    theta: &ThetaAnsatz,
    beta: &BetaTrajectory,
    omega_cap: f64,
    provenance: Provenance,
    omega_f: f64,
) -> Result<Pulse> {
    let mut clamped = false;
    let mut omega = Vec::with_capacity(beta.grid.len());
    for (&t, &b) in beta.grid.iter().zip(&beta.beta) {
        let sb = b.sin();
        if sb == 0.0 {
            return Err(Error::SynthesisFailure { time: t, reason: "sin β vanishes".into() });
        }
        let mut v = theta.dtheta(t) / sb;
        if !v.is_finite() || v.abs() > omega_cap {
            clamped = true;
            v = if v.is_nan() { omega_cap } else { v.clamp(-omega_cap, omega_cap) };
        }
        omega.push(v);
    }
    Ok(Pulse {
        times: beta.grid.clone(),
        omega,
        provenance,
        omega_f,
        initial_state: QubitState::from_bloch(theta.theta(0.0), beta.beta[0]),
        config_hash: String::new(),
        clamped,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SynthesisDiagnostics {
    pub epsilon_achieved: f64,
    pub omega_start: f64,
    pub omega_end: f64,
    pub omega_max_abs: f64,
    pub theta_0: f64,
    pub beta_0: f64,
    pub boundary_residual: f64,
    pub clamped: bool,
    pub ode_steps: usize,
}

#[derive(Debug, Clone)]
pub struct SynthesisResult {
    pub pulse: Pulse,
    pub theta: ThetaAnsatz,
    pub beta: BetaTrajectory,
    pub boundary: BoundaryValues,
    pub diagnostics: SynthesisDiagnostics,
}

impl SynthesisResult {
    /// `θ` sampled on the pulse grid.
    pub fn theta_samples(&self) -> Vec<f64> {
        self.beta.grid.iter().map(|&t| self.theta.theta(t)).collect()
    }

    /// Ansatz state `(θ(t), β(t))` at every grid point.
    pub fn ansatz_states(&self) -> Vec<QubitState> {
        self.beta.grid.iter().zip(&self.beta.beta).map(|(&t, &b)| QubitState::from_bloch(self.theta.theta(t), b)).collect()
    }

    /// Smallest fidelity between the ansatz state and the state evolved
    /// under the synthesized pulse at the design potential `y`, over the grid.
    pub fn tracking_fidelity(&self, y: f64) -> Result<f64> {
        let traj = crate::evolve::propagate(&self.pulse, y, &self.pulse.initial_state)?;
        Ok(traj.iter().zip(self.ansatz_states()).map(|(a, b)| a.fidelity(&b)).fold(1.0, f64::min))
    }
}

/// Boundary values → polynomial → `β(t)` → `Ω(t)`.
pub fn synthesize(cfg: &SynthesisConfig) -> Result<SynthesisResult> {
    let boundary = boundary_conditions(cfg)?;
    let theta = solve_theta(&boundary, cfg.t_f, cfg.degree, &cfg.free_coeffs).map_err(|e| match e {
        Error::Singular(reason) => Error::SynthesisFailure { time: cfg.t_f, reason },
        other => other,
    })?;
    let beta = integrate_beta(&theta, cfg.y, cfg.n_time)?;
    let provenance = Provenance::for_degree(cfg.degree).unwrap_or(Provenance::IeCubic);
    let mut pulse = extract_pulse(&theta, &beta, cfg.omega_cap(), provenance, cfg.omega_f)?;
    pulse.config_hash = cfg.hash();
    let diagnostics = SynthesisDiagnostics {
        epsilon_achieved: beta.epsilon_achieved,
        omega_start: pulse.omega_start(),
        omega_end: pulse.omega_end(),
        omega_max_abs: pulse.max_abs(),
        theta_0: theta.theta(0.0),
        beta_0: beta.beta[0],
        boundary_residual: theta.boundary_residual(&boundary),
        clamped: pulse.clamped,
        ode_steps: beta.steps_accepted,
    };
    Ok(SynthesisResult { pulse, theta, beta, boundary, diagnostics })
}
