//! Fast quasi-adiabatic (FAQUAD) baseline pulses.
//!
//! The field is shaped so that the adiabaticity parameter
//! `μ = |⟨φ₀|∂_t φ₁⟩| / (E₁ − E₀)` stays constant at a fixed potential `x*`.
//! For `H = -(x σ_z + Ω σ_x)/2` the orthonormal eigenvectors rotate with the
//! mixing angle `α = arccos(−x/r)`, `r = √(Ω² + x²)`, and
//! `|⟨φ₀|∂_Ω φ₁⟩| = |dα/dΩ|/2 = |x| / (2 r²)`, so `μ = |Ω̇| |x| / (2 r³)`.
//!
//! In rescaled time `s = t/t_f` the field obeys
//! `dΩ̃/ds = −c̃ (E₁−E₀)/|⟨φ₀|∂_Ω φ₁⟩|` with
//! `c̃ = ∫_{Ω_f}^{Ω(0)} |⟨φ₀|∂_Ω φ₁⟩| / (E₁−E₀) dΩ`, independent of `t_f`.

use serde::{Deserialize, Serialize};

use crate::error::{config, invalid, Error, Result};
use crate::model::QubitState;
use crate::ode::{self, OdeOptions};
use crate::pulse::{config_hash, uniform_grid, Provenance, Pulse};
use crate::quad;

/// Reference ratio `|x*/Ω_f|` at which the nonadiabatic coupling is largest.
pub const WORST_CASE_RATIO: f64 = 1.272;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FaquadConfig {
    pub omega_start: f64,
    pub omega_f: f64,
    pub t_f: f64,
    /// Potential at which `μ` is held constant.
    pub x_star: f64,
    pub n_s: usize,
}

impl Default for FaquadConfig {
    fn default() -> Self {
        Self { omega_start: 2000.0, omega_f: 1.0, t_f: 0.15, x_star: 12.0, n_s: 20_000 }
    }
}

impl FaquadConfig {
    pub fn validate(&self) -> Result<()> {
        let v = [self.omega_start, self.omega_f, self.t_f, self.x_star];
        if v.iter().any(|x| !x.is_finite()) {
            return Err(config("all numeric fields must be finite"));
        }
        if !(self.omega_f > 0.0 && self.omega_start > self.omega_f) {
            return Err(config(format!(
                "need omega_start > omega_f > 0, got {} and {}",
                self.omega_start, self.omega_f
            )));
        }
        if !(self.t_f > 0.0) {
            return Err(config(format!("t_f must be positive, got {}", self.t_f)));
        }
        if self.x_star == 0.0 {
            return Err(config("x_star must be non-zero"));
        }
        if self.n_s < 2 {
            return Err(config("n_s must be at least 2"));
        }
        Ok(())
    }
}

/// `|⟨φ₀|∂_Ω φ₁⟩| = |x| / (2 (Ω² + x²))`.
pub fn coupling_element(x: f64, omega: f64) -> f64 {
    0.5 * x.abs() / (omega * omega + x * x)
}

/// `μ = |⟨φ₀|∂_t φ₁⟩| / (E₁ − E₀)`.
pub fn adiabaticity(x: f64, omega: f64, omega_dot: f64) -> Result<f64> {
    let gap = x.hypot(omega);
    if gap == 0.0 || !gap.is_finite() || !omega_dot.is_finite() {
        return Err(invalid("adiabaticity needs a finite, non-zero gap"));
    }
    Ok(omega_dot.abs() * coupling_element(x, omega) / gap)
}

/// Integrand of `c̃`: coupling over gap, `|x| / (2 r³)`.
fn c_tilde_integrand(x: f64, omega: f64) -> f64 {
    coupling_element(x, omega) / x.hypot(omega)
}

/// `c̃ = c t_f` by adaptive quadrature on log-spaced panels.
pub fn c_tilde(x_star: f64, omega_start: f64, omega_f: f64) -> Result<f64> {
    if !(omega_f > 0.0 && omega_start > omega_f) {
        return Err(invalid("c̃ needs omega_start > omega_f > 0"));
    }
    let breaks = quad::log_breaks(omega_f, omega_start, 4);
    quad::integrate_panels(|o| c_tilde_integrand(x_star, o), &breaks, 1e-10, 100_000)
        .map(|r| r.value)
        .map_err(Error::Quadrature)
}

/// Reference worst-case potential, `1.272 Ω_f`.
pub fn worst_case_x(omega_f: f64) -> f64 {
    WORST_CASE_RATIO * omega_f
}

/// Potential maximizing `c̃(x)` over a 1-D grid on `(0, 10 Ω_f]`, refined
/// by golden-section search around the best grid point.
pub fn worst_case_x_numeric(omega_start: f64, omega_f: f64) -> Result<f64> {
    let objective = |x: f64| c_tilde(x, omega_start, omega_f);
    let n = 1000;
    let step = 10.0 * omega_f / n as f64;
    let mut best = (step, f64::NEG_INFINITY);
    for k in 1..=n {
        let x = step * k as f64;
        let v = objective(x)?;
        if v > best.1 {
            best = (x, v);
        }
    }
    let (mut a, mut b) = ((best.0 - step).max(1e-12), best.0 + step);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    while b - a > 1e-9 * omega_f {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if objective(c)? > objective(d)? {
            b = d;
        } else {
            a = c;
        }
    }
    Ok(0.5 * (a + b))
}

/// `Ω̃(s)` on `[0, 1]` with constant `μ` at `x_star`, resampled on `n_s` points.
pub fn rescaled_field(cfg: &FaquadConfig) -> Result<(f64, Vec<f64>)> {
    cfg.validate()?;
    let x = cfg.x_star;
    let ct = c_tilde(x, cfg.omega_start, cfg.omega_f)?;
    let rhs = |_s: f64, o: f64| {
        if !(o > 0.0) {
            return None;
        }
        Some(-ct / c_tilde_integrand(x, o))
    };
    let opts = OdeOptions { atol: 1e-12, rtol: 1e-11, h_init: 1e-9, ..OdeOptions::default() };
    let sol = ode::integrate(rhs, 0.0, cfg.omega_start, 1.0, &opts)
        .map_err(|f| Error::SynthesisFailure { time: f.time * cfg.t_f, reason: f.reason })?;
    let s = uniform_grid(1.0, cfg.n_s);
    Ok((ct, sol.sample(&s)))
}

/// FAQUAD pulse `Ω(t) = Ω̃(t/t_f)`, starting from `|+⟩`.
pub fn synthesize_faquad(cfg: &FaquadConfig) -> Result<Pulse> {
    let (_, omega) = rescaled_field(cfg)?;
    let end = *omega.last().unwrap_or(&f64::NAN);
    if ((end - cfg.omega_f) / cfg.omega_f).abs() > 1e-4 {
        return Err(Error::SynthesisFailure {
            time: cfg.t_f,
            reason: format!("field ends at {end} instead of {}", cfg.omega_f),
        });
    }
    Ok(Pulse {
        times: uniform_grid(cfg.t_f, cfg.n_s),
        omega,
        provenance: Provenance::Faquad,
        omega_f: cfg.omega_f,
        initial_state: QubitState::plus(),
        config_hash: config_hash(cfg),
        clamped: false,
    })
}

/// `μ(t)` along a sampled pulse at potential `x`, using central differences
/// for `Ω̇`. Endpoints are omitted.
pub fn adiabaticity_profile(pulse: &Pulse, x: f64) -> Result<Vec<f64>> {
    let dt = pulse.dt();
    pulse
        .omega
        .windows(3)
        .map(|w| adiabaticity(x, w[1], (w[2] - w[0]) / (2.0 * dt)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::eigensystem;
    use approx::assert_relative_eq;

    /// Gauge-fixed finite-difference `|⟨φ₀|∂_Ω φ₁⟩|`, built only from the eigensystem.
    fn coupling_fd(x: f64, omega: f64) -> f64 {
        let h = 1e-5 * omega.abs().max(1e-3);
        let e = eigensystem(x, omega).unwrap();
        let up = eigensystem(x, omega + h).unwrap();
        let dn = eigensystem(x, omega - h).unwrap();
        let d0 = (up.state_excited.amp0 - dn.state_excited.amp0) / (2.0 * h);
        let d1 = (up.state_excited.amp1 - dn.state_excited.amp1) / (2.0 * h);
        (e.state_ground.amp0.conj() * d0 + e.state_ground.amp1.conj() * d1).norm()
    }

    #[test]
    fn analytic_coupling_matches_finite_differences() {
        for &(x, o) in &[(1.0, 1.0), (12.0, 1.0), (1.272, 3.0), (-4.0, 0.5), (0.3, 2000.0), (12.0, 150.0)] {
            assert_relative_eq!(coupling_element(x, o), coupling_fd(x, o), max_relative = 1e-6);
        }
    }

    #[test]
    fn adiabaticity_examples() {
        assert_eq!(adiabaticity(1.0, 1.0, 0.0).unwrap(), 0.0);
        // (x, Ω, Ω̇) = (1, 1, −1): |Ω̇| · FD coupling / gap
        let oracle = coupling_fd(1.0, 1.0) / 2f64.sqrt();
        assert_relative_eq!(adiabaticity(1.0, 1.0, -1.0).unwrap(), oracle, max_relative = 1e-6);
        let base = adiabaticity(2.0, 3.0, 0.7).unwrap();
        assert_relative_eq!(adiabaticity(2.0, 3.0, -2.1).unwrap(), 3.0 * base, max_relative = 1e-14);
        assert!(adiabaticity(0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn c_tilde_matches_closed_form() {
        // ∫ |x|/(2 r³) dΩ = Ω / (2 |x| r)
        let prim = |x: f64, o: f64| o / (2.0 * x.abs() * x.hypot(o));
        for &x in &[1.272, 12.0, 0.5] {
            let exact = prim(x, 2000.0) - prim(x, 1.0);
            assert_relative_eq!(c_tilde(x, 2000.0, 1.0).unwrap(), exact, max_relative = 1e-9);
        }
    }

    #[test]
    fn worst_case_reference_and_numeric() {
        assert_eq!(worst_case_x(1.0), 1.272);
        assert_relative_eq!(worst_case_x(2.0), 2.544, max_relative = 1e-15);
        // For Ω(0) → ∞ the maximizer of c̃ solves u² = u + 1 with u = √(1 + x²/Ω_f²).
        let golden = 0.5 * (1.0 + 5f64.sqrt());
        let x = worst_case_x_numeric(2000.0, 1.0).unwrap();
        assert!((x - golden.sqrt()).abs() < 1e-3, "x* = {x}");
        assert!((x - WORST_CASE_RATIO).abs() < 1e-3);
    }

    #[test]
    fn pulse_endpoints_and_monotonicity() {
        let cfg = FaquadConfig { t_f: 0.15, ..FaquadConfig::default() };
        let p = synthesize_faquad(&cfg).unwrap();
        assert_relative_eq!(p.omega_start(), 2000.0, max_relative = 1e-4);
        assert_relative_eq!(p.omega_end(), 1.0, max_relative = 1e-4);
        assert!(p.omega.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn field_matches_closed_form_inversion() {
        let cfg = FaquadConfig { x_star: 1.272, n_s: 2001, ..FaquadConfig::default() };
        let (ct, om) = rescaled_field(&cfg).unwrap();
        let x = cfg.x_star;
        let g = |o: f64| o / (2.0 * x * x.hypot(o));
        for (k, o) in om.iter().enumerate() {
            let s = k as f64 / 2000.0;
            let q = 2.0 * x * (g(cfg.omega_start) - ct * s);
            let exact = x * q / (1.0 - q * q).sqrt();
            assert_relative_eq!(*o, exact, max_relative = 1e-6);
        }
    }

    #[test]
    fn rescaling_duration_keeps_shape() {
        let a = synthesize_faquad(&FaquadConfig { t_f: 0.3, n_s: 2000, ..FaquadConfig::default() }).unwrap();
        let b = synthesize_faquad(&FaquadConfig { t_f: 0.6, n_s: 2000, ..FaquadConfig::default() }).unwrap();
        assert_eq!(a.omega, b.omega);
        assert_relative_eq!(b.times[1000], 2.0 * a.times[1000], max_relative = 1e-15);
    }

    #[test]
    fn mu_is_constant_along_pulse() {
        let cfg = FaquadConfig { t_f: 0.3, ..FaquadConfig::default() };
        let p = synthesize_faquad(&cfg).unwrap();
        let mu = adiabaticity_profile(&p, cfg.x_star).unwrap();
        let n = mu.len();
        let core = &mu[n / 100..n - n / 100];
        let mean = core.iter().sum::<f64>() / core.len() as f64;
        let var = core.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / core.len() as f64;
        assert!(var.sqrt() / mean < 0.01, "relative spread {}", var.sqrt() / mean);
        let (ct, _) = rescaled_field(&cfg).unwrap();
        assert_relative_eq!(mean, ct / cfg.t_f, max_relative = 1e-3);
    }

    #[test]
    fn invalid_configs() {
        let ok = FaquadConfig::default();
        for bad in [
            FaquadConfig { omega_start: 0.5, ..ok.clone() },
            FaquadConfig { t_f: 0.0, ..ok.clone() },
            FaquadConfig { x_star: 0.0, ..ok.clone() },
            FaquadConfig { omega_f: -1.0, ..ok.clone() },
        ] {
            assert!(synthesize_faquad(&bad).is_err());
        }
    }
}
