//! The perceptron gate on a register of previous-layer qubits.
//!
//! The register holds `n_prev` input qubits and one perceptron qubit. The
//! amplitude index is `(config << 1) | q`: input qubit `k` is bit
//! `n_prev − 1 − k` of `config` (first qubit most significant) and `q` is
//! the perceptron qubit. A set bit is the `|1⟩` state, `σ_z = +1`.
//!
//! The coupling `Σ_k w_k σ_z^k σ_z − b σ_z` is diagonal in the input
//! configuration, so the gate acts on each configuration branch as the
//! single-qubit protocol at the scalar potential `x(σ) = Σ_k w_k σ_k − b`.

use std::fmt::Write as _;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{config, invalid, Error, Result};
use crate::evolve::{ensure_same_len, final_state_unchecked};
use crate::exec::Exec;
use crate::model::{sigmoid_unchecked, QubitState};
use crate::pulse::Pulse;

/// Largest number of input qubits a register may hold.
pub const MAX_PREV: usize = 12;
/// Largest number of input qubits the dense oracle accepts.
pub const MAX_ORACLE_PREV: usize = 4;

/// Weights and bias of one perceptron, in units of `1/t₀`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerSpec {
    pub weights: Vec<f64>,
    #[serde(default)]
    pub bias: f64,
}

impl LayerSpec {
    pub fn new(weights: Vec<f64>, bias: f64) -> Result<Self> {
        let layer = Self { weights, bias };
        layer.validate()?;
        Ok(layer)
    }

    pub fn n_prev(&self) -> usize {
        self.weights.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_prev() > MAX_PREV {
            return Err(config(format!("at most {MAX_PREV} input qubits are supported, got {}", self.n_prev())));
        }
        if self.weights.iter().any(|w| !w.is_finite()) || !self.bias.is_finite() {
            return Err(config("weights and bias must be finite"));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let layer: Self = serde_json::from_str(text).map_err(|e| config(format!("layer spec: {e}")))?;
        layer.validate()?;
        Ok(layer)
    }

    /// `σ_k = ±1` of input qubit `k` in configuration `config`.
    pub fn spin(&self, config: usize, k: usize) -> f64 {
        if config >> (self.n_prev() - 1 - k) & 1 == 1 {
            1.0
        } else {
            -1.0
        }
    }

    /// `x(σ) = Σ_k w_k σ_k − b`.
    pub fn potential(&self, config: usize) -> f64 {
        self.weights.iter().enumerate().map(|(k, w)| w * self.spin(config, k)).sum::<f64>() - self.bias
    }

    pub fn potentials(&self) -> Vec<f64> {
        (0..1usize << self.n_prev()).map(|c| self.potential(c)).collect()
    }
}

/// Amplitudes over (input qubits ⊗ perceptron qubit).
#[derive(Debug, Clone, PartialEq)]
pub struct RegisterState {
    n_prev: usize,
    amps: Vec<Complex64>,
}

impl RegisterState {
    /// Normalized state; the length must be `2^(n_prev + 1)`.
    pub fn new(n_prev: usize, amps: Vec<Complex64>) -> Result<Self> {
        let s = Self::unnormalized(n_prev, amps)?;
        let n = s.norm_sqr();
        if (n - 1.0).abs() > 1e-10 {
            return Err(invalid(format!("register state is not normalized: |ψ|² = {n}")));
        }
        Ok(s)
    }

    /// Any vector of the right length; used for linearity checks.
    pub fn unnormalized(n_prev: usize, amps: Vec<Complex64>) -> Result<Self> {
        if n_prev > MAX_PREV {
            return Err(config(format!("at most {MAX_PREV} input qubits are supported, got {n_prev}")));
        }
        ensure_same_len(2 << n_prev, amps.len())?;
        if amps.iter().any(|a| !(a.re.is_finite() && a.im.is_finite())) {
            return Err(invalid("register amplitudes must be finite"));
        }
        Ok(Self { n_prev, amps })
    }

    /// Computational basis state `index`.
    pub fn basis(n_prev: usize, index: usize) -> Result<Self> {
        let mut amps = vec![Complex64::new(0.0, 0.0); 2 << n_prev];
        if index >= amps.len() {
            return Err(invalid(format!("basis index {index} out of range")));
        }
        amps[index] = Complex64::new(1.0, 0.0);
        Self::new(n_prev, amps)
    }

    /// `|inputs⟩ ⊗ |qubit⟩` with `inputs` of length `2^n_prev`.
    pub fn product(inputs: &[Complex64], qubit: QubitState) -> Result<Self> {
        if !inputs.len().is_power_of_two() {
            return Err(invalid(format!("input register length {} is not a power of two", inputs.len())));
        }
        let n_prev = inputs.len().trailing_zeros() as usize;
        let amps = inputs.iter().flat_map(|&c| [c * qubit.amp0, c * qubit.amp1]).collect();
        Self::new(n_prev, amps)
    }

    pub fn n_prev(&self) -> usize {
        self.n_prev
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn configs(&self) -> usize {
        1 << self.n_prev
    }

    /// Perceptron amplitudes in configuration `config` (not normalized).
    pub fn branch(&self, config: usize) -> QubitState {
        QubitState::raw(self.amps[2 * config], self.amps[2 * config + 1])
    }

    /// Probability of each input configuration.
    pub fn config_populations(&self) -> Vec<f64> {
        self.amps.chunks(2).map(|p| p[0].norm_sqr() + p[1].norm_sqr()).collect()
    }

    /// Probability that the perceptron qubit is `|1⟩`.
    pub fn excitation(&self) -> f64 {
        self.amps.chunks(2).map(|p| p[1].norm_sqr()).sum()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { n_prev: self.n_prev, amps: self.amps.iter().map(|a| a * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        ensure_same_len(self.amps.len(), other.amps.len())?;
        let amps = self.amps.iter().zip(&other.amps).map(|(a, b)| a + b).collect();
        Ok(Self { n_prev: self.n_prev, amps })
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    fn from_branches(n_prev: usize, branches: &[QubitState]) -> Self {
        Self { n_prev, amps: branches.iter().flat_map(|b| [b.amp0, b.amp1]).collect() }
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("# n_prev: {}\nindex,re,im\n", self.n_prev);
        for (k, a) in self.amps.iter().enumerate() {
            let _ = writeln!(out, "{k},{},{}", a.re, a.im);
        }
        out
    }

    /// Parse `index,re,im` rows; unlisted indices are zero. The register
    /// size comes from the `# n_prev` header or, failing that, the row count.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut n_prev = None;
        let mut rows = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(v) = rest.trim().strip_prefix("n_prev:") {
                    n_prev = Some(v.trim().parse::<usize>().map_err(|e| Error::Parse(format!("n_prev: {e}")))?);
                }
                continue;
            }
            if line.starts_with("index") {
                continue;
            }
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 3 {
                return Err(Error::Parse(format!("line {}: expected index,re,im", ln + 1)));
            }
            let bad = |e: &dyn std::fmt::Display| Error::Parse(format!("line {}: {e}", ln + 1));
            let k = f[0].trim().parse::<usize>().map_err(|e| bad(&e))?;
            let re = f[1].trim().parse::<f64>().map_err(|e| bad(&e))?;
            let im = f[2].trim().parse::<f64>().map_err(|e| bad(&e))?;
            rows.push((k, Complex64::new(re, im)));
        }
        let n_prev = match n_prev {
            Some(n) => n,
            None if rows.len() >= 2 && rows.len().is_power_of_two() => rows.len().trailing_zeros() as usize - 1,
            None => return Err(Error::Parse("cannot infer register size; add a '# n_prev: N' header".into())),
        };
        if n_prev > MAX_PREV {
            return Err(config(format!("at most {MAX_PREV} input qubits are supported, got {n_prev}")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 2 << n_prev];
        for (k, a) in rows {
            *amps.get_mut(k).ok_or_else(|| Error::Parse(format!("index {k} out of range")))? = a;
        }
        Self::new(n_prev, amps)
    }
}

fn check_layer(layer: &LayerSpec, state: &RegisterState) -> Result<()> {
    layer.validate()?;
    if layer.n_prev() != state.n_prev {
        return Err(Error::Dimension { expected: layer.n_prev(), got: state.n_prev });
    }
    Ok(())
}

/// Hadamard on the perceptron qubit only.
pub fn hadamard_perceptron(state: &RegisterState) -> RegisterState {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let amps = state.amps.chunks(2).flat_map(|p| [(p[0] + p[1]) * h, (p[0] - p[1]) * h]).collect();
    RegisterState { n_prev: state.n_prev, amps }
}

/// Post-gate register plus the configurations driven outside the designed range.
#[derive(Debug, Clone, PartialEq)]
pub struct GateOutput {
    pub state: RegisterState,
    /// Configurations with `|x(σ)| > x_max Ω_f`; evolved anyway.
    pub out_of_range: Vec<usize>,
}

/// Apply the pulse as the perceptron gate. `x_max` is in units of `Ω_f`.
pub fn perceptron_gate(
    pulse: &Pulse,
    layer: &LayerSpec,
    state: &RegisterState,
    x_max: f64,
    exec: Exec,
) -> Result<GateOutput> {
    check_layer(layer, state)?;
    pulse.validate()?;
    let configs: Vec<usize> = (0..state.configs()).collect();
    let branches = exec.map(&configs, |&c| final_state_unchecked(pulse, layer.potential(c), &state.branch(c)));
    let limit = x_max * pulse.omega_f;
    let out_of_range = configs.into_iter().filter(|&c| layer.potential(c).abs() > limit).collect();
    Ok(GateOutput { state: RegisterState::from_branches(state.n_prev, &branches), out_of_range })
}

/// Per-branch phases making every branch's perceptron amplitudes real and
/// non-negative: `(r₀e^{iφ₀}, r₁e^{iφ₁}) → (r₀, r₁)`.
pub fn phase_correction(state: &RegisterState) -> RegisterState {
    let amps = state.amps.iter().map(|a| Complex64::new(a.norm(), 0.0)).collect();
    RegisterState { n_prev: state.n_prev, amps }
}

/// Fidelity of each branch with the ideal gate output
/// `√(1 − f(x/Ω_f))|0⟩ + √f(x/Ω_f)|1⟩`, normalized by the branch weight.
/// Branches with zero weight report `NaN`.
pub fn branch_fidelities(state: &RegisterState, layer: &LayerSpec, omega_f: f64) -> Result<Vec<f64>> {
    check_layer(layer, state)?;
    if !(omega_f > 0.0) {
        return Err(invalid(format!("omega_f must be positive, got {omega_f}")));
    }
    Ok((0..state.configs())
        .map(|c| {
            let b = state.branch(c);
            let w = b.norm_sqr();
            let p = sigmoid_unchecked(layer.potential(c) / omega_f);
            let overlap = (1.0 - p).sqrt() * b.amp0 + p.sqrt() * b.amp1;
            if w > 0.0 {
                (overlap.norm_sqr() / w).min(1.0)
            } else {
                f64::NAN
            }
        })
        .collect())
}

/// Brute-force propagation with the full `2^(n+1)`-dimensional Hamiltonian
/// `H = −½(X̂ σ_z + Ω σ_x)`, diagonalized at every step.
pub fn full_evolution_oracle(pulse: &Pulse, layer: &LayerSpec, state: &RegisterState) -> Result<RegisterState> {
    check_layer(layer, state)?;
    if layer.n_prev() > MAX_ORACLE_PREV {
        return Err(config(format!("the dense oracle supports at most {MAX_ORACLE_PREV} input qubits")));
    }
    pulse.validate()?;
    let dim = state.amps.len();
    let dt = pulse.dt();
    let x = layer.potentials();
    let mut psi = state.amps.clone();
    let mut next = vec![Complex64::new(0.0, 0.0); dim];
    for w in pulse.omega.windows(2) {
        let omega = 0.5 * (w[0] + w[1]);
        let h = DMatrix::from_fn(dim, dim, |i, j| {
            let (ci, qi, cj, qj) = (i >> 1, i & 1, j >> 1, j & 1);
            if ci != cj {
                0.0
            } else if qi == qj {
                // σ_z = +1 on |1⟩ (q = 1).
                if qi == 1 {
                    -0.5 * x[ci]
                } else {
                    0.5 * x[ci]
                }
            } else {
                -0.5 * omega
            }
        });
        let eig = SymmetricEigen::new(h);
        let v = &eig.eigenvectors;
        // ψ ← V e^{−iΛdt} Vᵀ ψ
        let proj: Vec<Complex64> = (0..dim)
            .map(|m| {
                let c: Complex64 = (0..dim).map(|i| psi[i] * v[(i, m)]).sum();
                c * Complex64::from_polar(1.0, -eig.eigenvalues[m] * dt)
            })
            .collect();
        for (i, out) in next.iter_mut().enumerate() {
            *out = (0..dim).map(|m| proj[m] * v[(i, m)]).sum();
        }
        std::mem::swap(&mut psi, &mut next);
    }
    Ok(RegisterState { n_prev: state.n_prev, amps: psi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolve::final_state;
    use crate::ie::{synthesize, SynthesisConfig};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn short_pulse() -> Pulse {
        synthesize(&SynthesisConfig { n_time: 1000, ..SynthesisConfig::cubic(0.3) }).unwrap().pulse
    }

    fn random_state(rng: &mut ChaCha8Rng, n_prev: usize) -> RegisterState {
        let amps: Vec<Complex64> = (0..2 << n_prev).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let n = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        RegisterState::new(n_prev, amps.into_iter().map(|a| a / n).collect()).unwrap()
    }

    fn random_layer(rng: &mut ChaCha8Rng, n_prev: usize) -> LayerSpec {
        LayerSpec::new((0..n_prev).map(|_| rng.gen_range(-8.0..8.0)).collect(), rng.gen_range(-2.0..2.0)).unwrap()
    }

    #[test]
    fn potential_uses_msb_first_ordering() {
        let layer = LayerSpec::new(vec![1.0, 10.0], 0.5).unwrap();
        // config 0b10: first qubit up, second down.
        assert_eq!(layer.potential(0b10), 1.0 - 10.0 - 0.5);
        assert_eq!(layer.potential(0b01), -1.0 + 10.0 - 0.5);
        assert_eq!(layer.potentials().len(), 4);
    }

    #[test]
    fn layer_spec_json() {
        let l = LayerSpec::from_json(r#"{"weights": [12.0], "bias": 0.0}"#).unwrap();
        assert_eq!(l.n_prev(), 1);
        assert!(LayerSpec::from_json(r#"{"weights": [1,2,3,4,5,6,7,8,9,10,11,12,13]}"#).is_err());
        assert!(LayerSpec::from_json(r#"{"weights": [1], "extra": 2}"#).is_err());
        assert!(LayerSpec::from_json("not json").is_err());
    }

    #[test]
    fn hadamard_examples() {
        let zero = RegisterState::basis(0, 0).unwrap();
        let plus = hadamard_perceptron(&zero);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(plus.amplitudes(), &[c(h, 0.0), c(h, 0.0)]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let s = random_state(&mut rng, 3);
        let twice = hadamard_perceptron(&hadamard_perceptron(&s));
        assert!(twice.max_abs_diff(&s) < 1e-12);
        let pops = hadamard_perceptron(&s).config_populations();
        for (a, b) in pops.iter().zip(s.config_populations()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn register_validation_and_csv() {
        assert!(RegisterState::new(1, vec![c(1.0, 0.0); 3]).is_err());
        assert!(RegisterState::new(0, vec![c(1.0, 0.0), c(1.0, 0.0)]).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = random_state(&mut rng, 2);
        assert_eq!(RegisterState::from_csv(&s.to_csv()).unwrap(), s);
        let sparse = "index,re,im\n# n_prev: 1\n2,1,0\n";
        assert_eq!(RegisterState::from_csv(sparse).unwrap(), RegisterState::basis(1, 2).unwrap());
        assert!(RegisterState::from_csv("index,re,im\n0,1,0\n1,0\n").is_err());
        assert!(RegisterState::from_csv("# n_prev: 0\n5,1,0\n").is_err());
    }

    #[test]
    fn single_input_up_matches_single_qubit_protocol() {
        let pulse = short_pulse();
        let layer = LayerSpec::new(vec![12.0], 0.0).unwrap();
        let psi0 = pulse.initial_state;
        let up = [c(0.0, 0.0), c(1.0, 0.0)];
        let state = RegisterState::product(&up, psi0).unwrap();
        let out = perceptron_gate(&pulse, &layer, &state, 12.0, Exec::Sequential).unwrap();
        let single = final_state(&pulse, 12.0, &psi0).unwrap();
        assert_eq!(out.state.branch(1), single);
        assert!(out.out_of_range.is_empty());
    }

    #[test]
    fn superposed_input_gives_transfer_curve_branches() {
        let pulse = short_pulse();
        let layer = LayerSpec::new(vec![12.0], 0.0).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let state = RegisterState::product(&[c(h, 0.0), c(h, 0.0)], pulse.initial_state).unwrap();
        let out = perceptron_gate(&pulse, &layer, &state, 12.0, Exec::Parallel).unwrap().state;
        let p = |x: f64| final_state(&pulse, x, &pulse.initial_state).unwrap().excitation();
        assert!((out.branch(0).amp1.norm_sqr() / 0.5 - p(-12.0)).abs() < 1e-12);
        assert!((out.branch(1).amp1.norm_sqr() / 0.5 - p(12.0)).abs() < 1e-12);
    }

    #[test]
    fn zero_weights_give_a_product_state() {
        let pulse = short_pulse();
        let layer = LayerSpec::new(vec![0.0, 0.0], 0.0).unwrap();
        let inputs = [c(0.5, 0.0), c(0.0, 0.5), c(-0.5, 0.0), c(0.5, 0.0)];
        let state = RegisterState::product(&inputs, pulse.initial_state).unwrap();
        let out = perceptron_gate(&pulse, &layer, &state, 12.0, Exec::Sequential).unwrap().state;
        let q = final_state(&pulse, 0.0, &pulse.initial_state).unwrap();
        let expected = RegisterState::product(&inputs, q).unwrap();
        assert!(out.max_abs_diff(&expected) < 1e-12);
        let oracle = full_evolution_oracle(&pulse, &layer, &state).unwrap();
        assert!(oracle.max_abs_diff(&expected) < 1e-9);
    }

    #[test]
    fn out_of_range_configurations_are_flagged() {
        let pulse = short_pulse();
        let layer = LayerSpec::new(vec![10.0, 5.0], 0.0).unwrap();
        let state = RegisterState::product(&[c(0.5, 0.0); 4], pulse.initial_state).unwrap();
        let out = perceptron_gate(&pulse, &layer, &state, 12.0, Exec::Sequential).unwrap();
        assert_eq!(out.out_of_range, vec![0, 3]);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let pulse = short_pulse();
        let layer = LayerSpec::new(vec![1.0, 2.0], 0.0).unwrap();
        let state = RegisterState::basis(1, 0).unwrap();
        let err = perceptron_gate(&pulse, &layer, &state, 12.0, Exec::Sequential).unwrap_err();
        assert_eq!(err, Error::Dimension { expected: 2, got: 1 });
        assert!(full_evolution_oracle(&pulse, &LayerSpec::new(vec![0.0; 5], 0.0).unwrap(), &RegisterState::basis(5, 0).unwrap()).is_err());
    }

    #[test]
    fn phase_correction_examples() {
        let s = RegisterState::new(0, vec![Complex64::from_polar(0.6, 1.0), Complex64::from_polar(0.8, -2.0)]).unwrap();
        let fixed = phase_correction(&s);
        assert_eq!(fixed.amplitudes(), &[c(0.6, 0.0), c(0.8, 0.0)]);
        assert_eq!(phase_correction(&fixed), fixed);
        let layer = LayerSpec::new(vec![], 0.0).unwrap();
        let f = branch_fidelities(&fixed, &layer, 1.0).unwrap();
        assert!((0.0..=1.0).contains(&f[0]));
        // Ideal output at x = 0 is |+⟩.
        let plus = RegisterState::product(&[c(1.0, 0.0)], QubitState::plus()).unwrap();
        assert!((branch_fidelities(&plus, &layer, 1.0).unwrap()[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn decomposition_matches_oracle_on_random_registers() {
        let pulse = short_pulse();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for case in 0..100 {
            let n_prev = 1 + case % MAX_ORACLE_PREV;
            let layer = random_layer(&mut rng, n_prev);
            let state = random_state(&mut rng, n_prev);
            let gate = perceptron_gate(&pulse, &layer, &state, 12.0, Exec::Sequential).unwrap().state;
            let oracle = full_evolution_oracle(&pulse, &layer, &state).unwrap();
            let err = gate.max_abs_diff(&oracle);
            assert!(err < 1e-9, "case {case}: n_prev = {n_prev}, error {err}");
            assert!((oracle.norm_sqr() - 1.0).abs() < 1e-9);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn gate_conserves_configuration_populations(seed in any::<u64>(), n_prev in 0usize..6) {
            let pulse = short_pulse();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let layer = random_layer(&mut rng, n_prev);
            let state = random_state(&mut rng, n_prev);
            let out = perceptron_gate(&pulse, &layer, &state, 12.0, Exec::Sequential).unwrap().state;
            for (a, b) in out.config_populations().iter().zip(state.config_populations()) {
                prop_assert!((a - b).abs() < 1e-10);
            }
        }

        #[test]
        fn gate_is_linear(seed in any::<u64>(), n_prev in 0usize..5, ar in -2.0f64..2.0, ai in -2.0f64..2.0, br in -2.0f64..2.0, bi in -2.0f64..2.0) {
            let pulse = short_pulse();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let layer = random_layer(&mut rng, n_prev);
            let (u, v) = (random_state(&mut rng, n_prev), random_state(&mut rng, n_prev));
            let (a, b) = (c(ar, ai), c(br, bi));
            let gate = |s: &RegisterState| perceptron_gate(&pulse, &layer, s, 12.0, Exec::Sequential).unwrap().state;
            let lhs = gate(&u.scale(a).add(&v.scale(b)).unwrap());
            let rhs = gate(&u).scale(a).add(&gate(&v).scale(b)).unwrap();
            prop_assert!(lhs.max_abs_diff(&rhs) < 1e-10);
        }
    }
}
