//! Sampled control fields and their CSV representation.
//!
//! A pulse file is a two-column CSV (`time,omega`) preceded by `#`-prefixed
//! `key: value` lines carrying provenance, the config hash, and the initial
//! state the pulse was designed for. Floats are written in Rust's shortest
//! round-trip form, so reading a file back reproduces the pulse bit for bit.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::model::QubitState;

/// Which synthesis method produced a pulse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Provenance {
    #[serde(rename = "IE-cubic")]
    IeCubic,
    #[serde(rename = "IE-quartic")]
    IeQuartic,
    #[serde(rename = "IE-quintic")]
    IeQuintic,
    #[serde(rename = "FAQUAD")]
    Faquad,
}

impl Provenance {
    pub fn for_degree(degree: usize) -> Option<Self> {
        match degree {
            3 => Some(Self::IeCubic),
            4 => Some(Self::IeQuartic),
            5 => Some(Self::IeQuintic),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::IeCubic => "IE-cubic",
            Self::IeQuartic => "IE-quartic",
            Self::IeQuintic => "IE-quintic",
            Self::Faquad => "FAQUAD",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "IE-cubic" => Ok(Self::IeCubic),
            "IE-quartic" => Ok(Self::IeQuartic),
            "IE-quintic" => Ok(Self::IeQuintic),
            "FAQUAD" => Ok(Self::Faquad),
            other => Err(Error::Parse(format!("unknown provenance '{other}'"))),
        }
    }
}

/// Uniform grid of `n` points on `[0, t_f]`, both endpoints included.
pub fn uniform_grid(t_f: f64, n: usize) -> Vec<f64> {
    let last = (n - 1) as f64;
    (0..n).map(|k| if k + 1 == n { t_f } else { t_f * k as f64 / last }).collect()
}

/// Control field `Ω(t)` sampled on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Pulse {
    pub times: Vec<f64>,
    pub omega: Vec<f64>,
    pub provenance: Provenance,
    pub omega_f: f64,
    /// State the protocol starts from when this pulse is applied.
    pub initial_state: QubitState,
    pub config_hash: String,
    /// Set when any sample had to be clamped to the numerical cap.
    pub clamped: bool,
}

impl Pulse {
    pub fn t_f(&self) -> f64 {
        *self.times.last().unwrap_or(&0.0)
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    pub fn dt(&self) -> f64 {
        self.t_f() / (self.times.len() - 1) as f64
    }

    pub fn omega_start(&self) -> f64 {
        self.omega[0]
    }

    pub fn omega_end(&self) -> f64 {
        *self.omega.last().unwrap_or(&f64::NAN)
    }

    pub fn max_abs(&self) -> f64 {
        self.omega.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.times.len() < 2 || self.times.len() != self.omega.len() {
            return Err(Error::InvalidInput(format!(
                "pulse needs ≥ 2 matching samples, got {} times and {} values",
                self.times.len(),
                self.omega.len()
            )));
        }
        if self.times[0] != 0.0 || !(self.t_f() > 0.0) {
            return Err(Error::InvalidInput("pulse grid must span [0, t_f] with t_f > 0".into()));
        }
        let dt = self.dt();
        for (k, t) in self.times.iter().enumerate() {
            if (t - dt * k as f64).abs() > 1e-9 * self.t_f() {
                return Err(Error::InvalidInput(format!("pulse grid is not uniform at sample {k}")));
            }
        }
        if let Some(k) = self.omega.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite field sample at index {k}")));
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.len() * 40 + 256);
        let s = &self.initial_state;
        let _ = writeln!(out, "# provenance: {}", self.provenance);
        let _ = writeln!(out, "# config_hash: {}", self.config_hash);
        let _ = writeln!(out, "# omega_f: {}", self.omega_f);
        let _ = writeln!(out, "# t_f: {}", self.t_f());
        let _ = writeln!(out, "# samples: {}", self.len());
        let _ = writeln!(out, "# clamped: {}", self.clamped);
        let _ = writeln!(
            out,
            "# initial_state: {} {} {} {}",
            s.amp0.re, s.amp0.im, s.amp1.re, s.amp1.im
        );
        out.push_str("time,omega\n");
        for (t, o) in self.times.iter().zip(&self.omega) {
            let _ = writeln!(out, "{t},{o}");
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut provenance = None;
        let mut config_hash = String::new();
        let mut omega_f = None;
        let mut clamped = false;
        let mut initial = None;
        let mut times = Vec::new();
        let mut omega = Vec::new();
        let mut saw_header = false;

        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(meta) = line.strip_prefix('#') {
                let Some((key, value)) = meta.split_once(':') else { continue };
                let value = value.trim();
                match key.trim() {
                    "provenance" => provenance = Some(value.parse::<Provenance>()?),
                    "config_hash" => config_hash = value.to_string(),
                    "omega_f" => omega_f = Some(parse_f64(value, lineno)?),
                    "clamped" => clamped = value == "true",
                    "initial_state" => {
                        let v: Vec<f64> = value
                            .split_whitespace()
                            .map(|p| parse_f64(p, lineno))
                            .collect::<Result<_>>()?;
                        if v.len() != 4 {
                            return Err(Error::Parse(format!("line {}: initial_state needs 4 numbers", lineno + 1)));
                        }
                        initial = Some(QubitState::new(
                            Complex64::new(v[0], v[1]),
                            Complex64::new(v[2], v[3]),
                        )?);
                    }
                    _ => {}
                }
                continue;
            }
            if !saw_header {
                if line.replace(' ', "") != "time,omega" {
                    return Err(Error::Parse(format!("line {}: expected header 'time,omega'", lineno + 1)));
                }
                saw_header = true;
                continue;
            }
            let (t, o) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("line {}: expected two columns", lineno + 1)))?;
            times.push(parse_f64(t.trim(), lineno)?);
            omega.push(parse_f64(o.trim(), lineno)?);
        }

        let provenance = provenance.ok_or_else(|| Error::Parse("missing '# provenance' header".into()))?;
        let pulse = Pulse {
            omega_f: omega_f.unwrap_or_else(|| omega.last().copied().unwrap_or(f64::NAN)),
            initial_state: initial.unwrap_or_else(QubitState::plus),
            times,
            omega,
            provenance,
            config_hash,
            clamped,
        };
        pulse.validate()?;
        Ok(pulse)
    }
}

fn parse_f64(s: &str, lineno: usize) -> Result<f64> {
    s.parse::<f64>()
        .map_err(|e| Error::Parse(format!("line {}: '{s}': {e}", lineno + 1)))
}

/// Short SHA-256 digest of a value's JSON encoding.
pub fn config_hash<T: Serialize>(value: &T) -> String {
    let json = serde_json::to_vec(value).unwrap_or_default();
    let digest = Sha256::digest(&json);
    digest.iter().take(8).fold(String::with_capacity(16), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}
