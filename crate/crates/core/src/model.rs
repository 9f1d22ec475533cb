//! Closed-form physics of a single driven qubit.
//!
//! The qubit Hamiltonian is `H = -(x σ_z + Ω σ_x) / 2` with `ħ = 1`. States
//! are stored as the pair `(amp0, amp1)` of amplitudes on `|0⟩` and `|1⟩`,
//! where `⟨0|σ_z|0⟩ = -1` and `⟨1|σ_z|1⟩ = +1`, so that
//! `⟨0|H|0⟩ = +x/2` and `⟨1|H|1⟩ = -x/2`. With this ordering the ground
//! state for large positive `x` is `|1⟩`, i.e. the excitation probability
//! `|amp1|²` is a sigmoid of `x/Ω`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

const NORM_TOL: f64 = 1e-12;

/// Sigmoid activation `f(x) = (1 + x/√(1+x²)) / 2`.
///
/// Evaluated without cancellation on both tails.
pub fn sigmoid(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(invalid(format!("sigmoid argument must be finite, got {x}")));
    }
    Ok(sigmoid_unchecked(x))
}

pub(crate) fn sigmoid_unchecked(x: f64) -> f64 {
    let s = x.hypot(1.0);
    if x >= 0.0 {
        0.5 * (1.0 + x / s)
    } else {
        0.5 / (s * (s - x))
    }
}

/// Normalized qubit state over `{|0⟩, |1⟩}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QubitState {
    pub amp0: Complex64,
    pub amp1: Complex64,
}

impl QubitState {
    /// Build a state, rejecting amplitudes whose norm deviates from 1 by more than 1e-12.
    pub fn new(amp0: Complex64, amp1: Complex64) -> Result<Self> {
        let norm = amp0.norm_sqr() + amp1.norm_sqr();
        if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOL {
            return Err(invalid(format!("state is not normalized: |ψ|² = {norm}")));
        }
        Ok(Self { amp0, amp1 })
    }

    /// Build a state and rescale it to unit norm.
    pub fn normalized(amp0: Complex64, amp1: Complex64) -> Result<Self> {
        let norm = (amp0.norm_sqr() + amp1.norm_sqr()).sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(invalid("cannot normalize a zero or non-finite state"));
        }
        Ok(Self { amp0: amp0 / norm, amp1: amp1 / norm })
    }

    pub(crate) fn raw(amp0: Complex64, amp1: Complex64) -> Self {
        Self { amp0, amp1 }
    }

    pub fn zero() -> Self {
        Self::raw(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
    }

    pub fn one() -> Self {
        Self::raw(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))
    }

    /// `|+⟩ = (|0⟩ + |1⟩)/√2`.
    pub fn plus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::raw(Complex64::new(h, 0.0), Complex64::new(h, 0.0))
    }

    /// Bloch-angle state used by the inverse-engineering ansatz:
    /// `cos(θ/2) e^{iβ/2} |0⟩ − sin(θ/2) e^{−iβ/2} |1⟩`.
    ///
    /// The minus sign on `|1⟩` is what makes `Ω = θ̇/sin β` and
    /// `β̇ = θ̇ cot θ cot β − x` the exact equations of motion under
    /// [`Hamiltonian2`]; with it `β = π` and `θ = π/2` is `|+⟩` up to a
    /// global phase.
    pub fn from_bloch(theta: f64, beta: f64) -> Self {
        let (s, c) = (0.5 * theta).sin_cos();
        let half = 0.5 * beta;
        Self::raw(
            Complex64::from_polar(c, half),
            -Complex64::from_polar(s, -half),
        )
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp0.norm_sqr() + self.amp1.norm_sqr()
    }

    /// Excitation probability `|⟨1|ψ⟩|²`.
    pub fn excitation(&self) -> f64 {
        self.amp1.norm_sqr()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amp0.conj() * other.amp0 + self.amp1.conj() * other.amp1
    }

    /// Phase-insensitive overlap `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &Self) -> f64 {
        self.inner(other).norm_sqr()
    }
}

/// `H = -(x σ_z + Ω σ_x)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hamiltonian2 {
    pub diag_z: f64,
    pub coupling_x: f64,
}

impl Hamiltonian2 {
    pub fn new(x: f64, omega: f64) -> Self {
        Self { diag_z: x, coupling_x: omega }
    }

    /// Matrix in the `(|0⟩, |1⟩)` ordering.
    pub fn matrix(&self) -> [[f64; 2]; 2] {
        let (x, o) = (self.diag_z, self.coupling_x);
        [[0.5 * x, -0.5 * o], [-0.5 * o, -0.5 * x]]
    }

    pub fn apply(&self, psi: &QubitState) -> (Complex64, Complex64) {
        let m = self.matrix();
        (
            psi.amp0 * m[0][0] + psi.amp1 * m[0][1],
            psi.amp0 * m[1][0] + psi.amp1 * m[1][1],
        )
    }

    pub fn gap(&self) -> f64 {
        self.diag_z.hypot(self.coupling_x)
    }

    /// Exact propagator `exp(−i H dt)` as a 2×2 matrix.
    ///
    /// For a traceless Hermitian `H = w n·σ`, `exp(−iH dt) = cos(w dt) I − i sin(w dt) n·σ`.
    pub fn propagator(&self, dt: f64) -> [[Complex64; 2]; 2] {
        let w = 0.5 * self.gap();
        if w == 0.0 {
            let one = Complex64::new(1.0, 0.0);
            let zero = Complex64::new(0.0, 0.0);
            return [[one, zero], [zero, one]];
        }
        let (s, c) = (w * dt).sin_cos();
        let m = self.matrix();
        let k = s / w;
        [
            [Complex64::new(c, -k * m[0][0]), Complex64::new(0.0, -k * m[0][1])],
            [Complex64::new(0.0, -k * m[1][0]), Complex64::new(c, -k * m[1][1])],
        ]
    }
}

/// Instantaneous eigenpairs of [`Hamiltonian2`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigensystem2 {
    pub energy_ground: f64,
    pub energy_excited: f64,
    pub state_ground: QubitState,
    pub state_excited: QubitState,
    /// `α = arccos(−x/√(Ω²+x²))`.
    pub mixing_angle: f64,
}

/// Ground state `√(1−f(x/Ω)) |0⟩ + √f(x/Ω) |1⟩` for `Ω > 0`.
pub fn ground_state(x: f64, omega: f64) -> Result<QubitState> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(invalid(format!("ground state requires Ω > 0, got {omega}")));
    }
    if !x.is_finite() {
        return Err(invalid(format!("potential must be finite, got {x}")));
    }
    let u = x / omega;
    let p1 = sigmoid_unchecked(u);
    let p0 = sigmoid_unchecked(-u);
    Ok(QubitState::raw(
        Complex64::new(p0.sqrt(), 0.0),
        Complex64::new(p1.sqrt(), 0.0),
    ))
}

/// Eigenenergies `∓√(Ω²+x²)/2` and eigenvectors of `H(x, Ω)`.
///
/// Gauge: the ground vector has real non-negative `amp1`, the excited vector
/// real non-negative `amp0`.
pub fn eigensystem(x: f64, omega: f64) -> Result<Eigensystem2> {
    if !x.is_finite() || !omega.is_finite() {
        return Err(invalid("eigensystem arguments must be finite"));
    }
    let r = x.hypot(omega);
    if r == 0.0 {
        return Err(invalid("zero gap: (x, Ω) = (0, 0)"));
    }
    // r ± x without cancellation.
    let (r_plus_x, r_minus_x) = if x >= 0.0 {
        let p = r + x;
        (p, omega * omega / p)
    } else {
        let m = r - x;
        (omega * omega / m, m)
    };
    let sign = if omega < 0.0 { -1.0 } else { 1.0 };
    let a = (r_minus_x / (2.0 * r)).sqrt();
    let b = (r_plus_x / (2.0 * r)).sqrt();
    let c = |v: f64| Complex64::new(v, 0.0);
    Ok(Eigensystem2 {
        energy_ground: -0.5 * r,
        energy_excited: 0.5 * r,
        state_ground: QubitState::raw(c(sign * a), c(b)),
        state_excited: QubitState::raw(c(b), c(-sign * a)),
        mixing_angle: (-x / r).clamp(-1.0, 1.0).acos(),
    })
}
