//! Time evolution under a sampled pulse and the perceptron quality metrics.
//!
//! Each grid interval is propagated with the exact exponential of the
//! Hamiltonian evaluated at the interval midpoint, so evolution is unitary up
//! to rounding and second-order accurate in the step.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exec::Exec;
use crate::model::{ground_state, Hamiltonian2, QubitState};
use crate::pulse::Pulse;

/// Apply one exact step `exp(−i H(x, Ω) dt)`.
#[inline]
pub(crate) fn step(psi: QubitState, x: f64, omega: f64, dt: f64) -> QubitState {
    let u = Hamiltonian2::new(x, omega).propagator(dt);
    QubitState::raw(
        u[0][0] * psi.amp0 + u[0][1] * psi.amp1,
        u[1][0] * psi.amp0 + u[1][1] * psi.amp1,
    )
}

fn check_input(pulse: &Pulse, psi0: &QubitState) -> Result<()> {
    pulse.validate()?;
    let n = psi0.norm_sqr();
    if (n - 1.0).abs() > 1e-10 {
        return Err(invalid(format!("initial state is not normalized: |ψ|² = {n}")));
    }
    Ok(())
}

/// Full trajectory, one state per grid point.
pub fn propagate(pulse: &Pulse, x: f64, psi0: &QubitState) -> Result<Vec<QubitState>> {
    check_input(pulse, psi0)?;
    let dt = pulse.dt();
    let mut out = Vec::with_capacity(pulse.len());
    let mut psi = *psi0;
    out.push(psi);
    for w in pulse.omega.windows(2) {
        psi = step(psi, x, 0.5 * (w[0] + w[1]), dt);
        out.push(psi);
    }
    Ok(out)
}

/// State at `t_f` only.
pub fn final_state(pulse: &Pulse, x: f64, psi0: &QubitState) -> Result<QubitState> {
    check_input(pulse, psi0)?;
    Ok(final_state_unchecked(pulse, x, psi0))
}

pub(crate) fn final_state_unchecked(pulse: &Pulse, x: f64, psi0: &QubitState) -> QubitState {
    let dt = pulse.dt();
    pulse
        .omega
        .windows(2)
        .fold(*psi0, |psi, w| step(psi, x, 0.5 * (w[0] + w[1]), dt))
}

/// State the protocol starts from: the Hadamard output for FAQUAD, the
/// ansatz state at `(θ(0), β(0))` for inverse-engineered pulses.
pub fn protocol_initial_state(pulse: &Pulse) -> QubitState {
    pulse.initial_state
}

/// Excitation probability versus scaled potential `x/Ω_f`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransferCurve {
    pub x_over_omega_f: Vec<f64>,
    pub excitation: Vec<f64>,
}

impl TransferCurve {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x_over_omega_f,excitation\n");
        for (x, p) in self.x_over_omega_f.iter().zip(&self.excitation) {
            let _ = writeln!(out, "{x},{p}");
        }
        out
    }

    /// P strictly increasing and crossing 1/2 exactly once.
    pub fn is_sigmoid_shaped(&self) -> bool {
        let increasing = self.excitation.windows(2).all(|w| w[1] > w[0]);
        let crossings = self
            .excitation
            .windows(2)
            .filter(|w| (w[0] - 0.5).signum() != (w[1] - 0.5).signum())
            .count();
        increasing && crossings == 1
    }
}

/// `[−x_max, x_max]` in steps of 0.1 (241 points for `x_max = 12`).
pub fn default_transfer_grid(x_max: f64) -> Vec<f64> {
    let n = (2.0 * x_max / 0.1).round() as usize;
    (0..=n).map(|k| -x_max + 0.1 * k as f64).collect()
}

/// Final excitation for every scaled potential in `grid`.
pub fn transfer_function(pulse: &Pulse, grid: &[f64], exec: Exec) -> Result<TransferCurve> {
    if grid.is_empty() {
        return Err(invalid("transfer grid is empty"));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(invalid("transfer grid must be strictly increasing"));
    }
    let psi0 = protocol_initial_state(pulse);
    check_input(pulse, &psi0)?;
    let omega_f = pulse.omega_f;
    let excitation = exec.map(grid, |u| final_state_unchecked(pulse, u * omega_f, &psi0).excitation());
    Ok(TransferCurve { x_over_omega_f: grid.to_vec(), excitation })
}

/// `F₀`, `F₁` and `C = 2 − F₀ − F₁`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub f0: f64,
    pub f1: f64,
    pub c: f64,
}

impl DistanceReport {
    pub fn from_fidelities(f0: f64, f1: f64) -> Self {
        Self { f0, f1, c: 2.0 - f0 - f1 }
    }

    /// Excitation at `−x_max`.
    pub fn p_low(&self) -> f64 {
        1.0 - self.f0
    }

    /// Excitation at `+x_max`.
    pub fn p_high(&self) -> f64 {
        self.f1
    }
}

/// `F₀ = |⟨0|ψ(t_f; −x_max Ω_f)⟩|²`, `F₁ = |⟨1|ψ(t_f; +x_max Ω_f)⟩|²`.
pub fn distance_c(pulse: &Pulse, x_max_scaled: f64) -> Result<DistanceReport> {
    if !(x_max_scaled > 0.0) {
        return Err(invalid(format!("x_max must be positive, got {x_max_scaled}")));
    }
    let psi0 = protocol_initial_state(pulse);
    check_input(pulse, &psi0)?;
    let x = x_max_scaled * pulse.omega_f;
    let low = final_state_unchecked(pulse, -x, &psi0);
    let high = final_state_unchecked(pulse, x, &psi0);
    Ok(DistanceReport::from_fidelities(low.amp0.norm_sqr(), high.amp1.norm_sqr()))
}

/// Overlap of the final state with the ground state of `H(x, Ω_f)` after the
/// relative phase between `|0⟩` and `|1⟩` has been removed by a phase gate.
pub fn final_ground_fidelity(pulse: &Pulse, x: f64) -> Result<f64> {
    let psi0 = protocol_initial_state(pulse);
    let psi = final_state(pulse, x, &psi0)?;
    let target = ground_state(x, pulse.omega_f)?;
    let overlap = psi.amp0.norm() * target.amp0.norm() + psi.amp1.norm() * target.amp1.norm();
    Ok((overlap * overlap).min(1.0))
}

/// Drop global and relative phases: `(r₀e^{iφ₀}, r₁e^{iφ₁}) → (r₀, r₁)`.
pub fn remove_phases(psi: &QubitState) -> QubitState {
    QubitState::raw(Complex64::new(psi.amp0.norm(), 0.0), Complex64::new(psi.amp1.norm(), 0.0))
}

pub(crate) fn ensure_same_len(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::Dimension { expected: a, got: b });
    }
    Ok(())
}
