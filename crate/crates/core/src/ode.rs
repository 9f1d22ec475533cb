//! Adaptive Dormand–Prince 5(4) integrator for scalar ODEs with dense output.
//!
//! Integration may run forward or backward in time. The right-hand side
//! returns `None` when `(t, y)` leaves its domain; such steps are rejected
//! and retried with a smaller step, and integration fails once the step
//! underflows.

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

// Shampine's continuous extension.
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOptions {
    pub atol: f64,
    pub rtol: f64,
    /// Initial step magnitude; `0` picks `|t1 − t0| / 1000`.
    pub h_init: f64,
    /// Largest step magnitude; `0` means unbounded.
    pub h_max: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self { atol: 1e-10, rtol: 1e-10, h_init: 0.0, h_max: 0.0, max_steps: 2_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OdeFailure {
    pub time: f64,
    pub reason: String,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    t0: f64,
    h: f64,
    r: [f64; 5],
}

impl Segment {
    fn eval(&self, t: f64) -> f64 {
        let th = (t - self.t0) / self.h;
        let th1 = 1.0 - th;
        let r = &self.r;
        r[0] + th * (r[1] + th1 * (r[2] + th * (r[3] + th1 * r[4])))
    }
}

/// Piecewise quartic interpolant of an accepted integration.
#[derive(Debug, Clone)]
pub struct DenseSolution {
    segments: Vec<Segment>,
    t_start: f64,
    y_start: f64,
    t_end: f64,
    y_end: f64,
    pub steps_accepted: usize,
    pub steps_rejected: usize,
}

impl DenseSolution {
    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn y_end(&self) -> f64 {
        self.y_end
    }

    /// Evaluate at `t` within the integrated interval. Exact at both endpoints.
    pub fn eval(&self, t: f64) -> f64 {
        if t == self.t_start {
            return self.y_start;
        }
        if t == self.t_end {
            return self.y_end;
        }
        let forward = self.t_end > self.t_start;
        // Segments are stored in integration order; the key is monotone in it.
        let idx = self.segments.partition_point(|s| {
            let end = s.t0 + s.h;
            if forward {
                end < t
            } else {
                end > t
            }
        });
        let seg = &self.segments[idx.min(self.segments.len() - 1)];
        seg.eval(t)
    }

    pub fn sample(&self, grid: &[f64]) -> Vec<f64> {
        grid.iter().map(|&t| self.eval(t)).collect()
    }
}

/// Integrate `y' = f(t, y)` from `(t0, y0)` to `t1`.
pub fn integrate<F>(mut f: F, t0: f64, y0: f64, t1: f64, opts: &OdeOptions) -> Result<DenseSolution, OdeFailure>
where
    F: FnMut(f64, f64) -> Option<f64>,
{
    let span = t1 - t0;
    if !span.is_finite() || span == 0.0 {
        return Err(OdeFailure { time: t0, reason: "empty or non-finite integration interval".into() });
    }
    let dir = span.signum();
    let h_min = 1e-14 * t0.abs().max(t1.abs()).max(span.abs());
    let h_max = if opts.h_max > 0.0 { opts.h_max } else { f64::INFINITY };
    let mut h = if opts.h_init > 0.0 { opts.h_init } else { span.abs() / 1000.0 }.min(h_max) * dir;

    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, y).ok_or_else(|| OdeFailure { time: t, reason: "initial point outside domain".into() })?;
    let mut segments = Vec::new();
    let mut accepted = 0usize;
    let mut rejected = 0usize;

    loop {
        if accepted + rejected >= opts.max_steps {
            return Err(OdeFailure { time: t, reason: "step budget exhausted".into() });
        }
        let last = (t1 - t).abs() <= h.abs() * (1.0 + 1e-12);
        if last {
            h = t1 - t;
        }
        match try_step(&mut f, t, y, k1, h, opts) {
            Some((y_new, k7, err_ratio, seg)) if err_ratio <= 1.0 => {
                segments.push(seg);
                accepted += 1;
                t = if last { t1 } else { t + h };
                y = y_new;
                k1 = k7;
                if last {
                    break;
                }
                let scale = if err_ratio == 0.0 { 5.0 } else { (0.9 * err_ratio.powf(-0.2)).clamp(0.2, 5.0) };
                h *= scale;
                if h.abs() > h_max {
                    h = h_max * dir;
                }
            }
            Some((_, _, err_ratio, _)) => {
                rejected += 1;
                h *= (0.9 * err_ratio.powf(-0.2)).clamp(0.1, 0.9);
            }
            None => {
                rejected += 1;
                h *= 0.25;
            }
        }
        if h.abs() < h_min {
            return Err(OdeFailure { time: t, reason: "step size underflow (solution leaves its domain or blows up)".into() });
        }
    }

    Ok(DenseSolution {
        segments,
        t_start: t0,
        y_start: y0,
        t_end: t1,
        y_end: y,
        steps_accepted: accepted,
        steps_rejected: rejected,
    })
}

fn try_step<F>(f: &mut F, t: f64, y: f64, k1: f64, h: f64, opts: &OdeOptions) -> Option<(f64, f64, f64, Segment)>
where
    F: FnMut(f64, f64) -> Option<f64>,
{
    let k2 = f(t + C2 * h, y + h * A21 * k1)?;
    let k3 = f(t + C3 * h, y + h * (A31 * k1 + A32 * k2))?;
    let k4 = f(t + C4 * h, y + h * (A41 * k1 + A42 * k2 + A43 * k3))?;
    let k5 = f(t + C5 * h, y + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4))?;
    let k6 = f(t + h, y + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5))?;
    let y_new = y + h * (A71 * k1 + A73 * k3 + A74 * k4 + A75 * k5 + A76 * k6);
    let k7 = f(t + h, y_new)?;
    let err = h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7);
    let scale = opts.atol + opts.rtol * y.abs().max(y_new.abs());
    let ratio = (err / scale).abs();
    if !ratio.is_finite() || !y_new.is_finite() {
        return None;
    }
    let diff = y_new - y;
    let bspl = h * k1 - diff;
    let seg = Segment {
        t0: t,
        h,
        r: [
            y,
            diff,
            bspl,
            diff - h * k7 - bspl,
            h * (D1 * k1 + D3 * k3 + D4 * k4 + D5 * k5 + D6 * k6 + D7 * k7),
        ],
    };
    Some((y_new, k7, ratio, seg))
}
