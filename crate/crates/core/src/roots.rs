//! Characteristic roots of the frequency-parameterized cubic
//! `tau*l^3 + l^2 + (delta+tau)*rho^2*l + rho^2 = 0`, together with the
//! truncated small/large-frequency expansions and remainder-order checks.

use serde::{Deserialize, Serialize};

use crate::error::{MgtError, Result};
use crate::params::MgtParams;

/// Relative scale below which two roots count as confluent.
const DEGENERATE_GAP: f64 = 1e-7;

/// The three characteristic roots at one frequency.
///
/// When `discriminant < 0` the cubic has one real root `lambda1` and a
/// conjugate pair `mu_re +- i mu_im` with `mu_im > 0`. When all three roots
/// are real (possible only at bounded frequencies), `lambda1` is the branch
/// continuously connected to `-1/tau` at `rho = 0` and the remaining two
/// real roots are encoded as `mu_re +- mu_im` with `mu_im >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootTriple {
    pub lambda1: f64,
    pub mu_re: f64,
    pub mu_im: f64,
    pub discriminant: f64,
    /// Two roots closer than a relative gap of 1e-7; explicit kernel
    /// formulas are unreliable here.
    pub degenerate: bool,
}

impl RootTriple {
    /// True when the pair `mu_re +- i mu_im` is genuinely complex.
    #[inline]
    pub fn has_complex_pair(&self) -> bool {
        self.discriminant < 0.0
    }

    /// The three roots as (re, im) pairs, complex or real encoding alike.
    pub fn as_complex(&self) -> [(f64, f64); 3] {
        if self.has_complex_pair() {
            [
                (self.lambda1, 0.0),
                (self.mu_re, self.mu_im),
                (self.mu_re, -self.mu_im),
            ]
        } else {
            [
                (self.lambda1, 0.0),
                (self.mu_re + self.mu_im, 0.0),
                (self.mu_re - self.mu_im, 0.0),
            ]
        }
    }

    /// Largest cubic residual of the three roots, scaled by the largest
    /// coefficient magnitude.
    pub fn max_scaled_residual(&self, params: &MgtParams, rho: f64) -> f64 {
        let scale = coeff_scale(params, rho);
        self.as_complex()
            .iter()
            .map(|&(re, im)| {
                let (pr, pi) = eval_cubic_complex(params, rho, re, im);
                pr.hypot(pi) / scale
            })
            .fold(0.0, f64::max)
    }
}

/// Frequency zone of an asymptotic expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Zone {
    SmallFreq,
    LargeFreq,
}

/// Which printed expansion to evaluate and how many of its terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpansionOrder {
    pub zone: Zone,
    pub terms: u32,
}

impl ExpansionOrder {
    pub fn new(zone: Zone, terms: u32) -> Result<Self> {
        if terms == 0 {
            return Err(MgtError::Domain("expansion needs at least one term".into()));
        }
        if terms > 2 {
            return Err(MgtError::Domain(format!(
                "only two terms are printed per root component, got {terms}"
            )));
        }
        Ok(Self { zone, terms })
    }
}

/// One root component, for remainder-order checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RootComponent {
    Lambda1,
    MuRe,
    MuIm,
}

/// Outcome of a remainder-order fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConvergenceCheck {
    /// Fitted slope of log residual against log rho.
    Slope(f64),
    /// Residuals at or below floating-point noise on the whole range.
    Saturated { max_residual: f64 },
}

#[inline]
fn coeff_scale(params: &MgtParams, rho: f64) -> f64 {
    let r2 = rho * rho;
    params
        .tau()
        .max(1.0)
        .max((params.delta() + params.tau()) * r2)
        .max(r2)
}

/// Cubic discriminant of `tau*l^3 + l^2 + (delta+tau)*rho^2*l + rho^2`.
/// Negative exactly when the cubic has one real root and a conjugate pair.
pub fn discriminant(params: &MgtParams, rho: f64) -> f64 {
    let (a, b, c, d) = coeffs(params, rho);
    18.0 * a * b * c * d - 4.0 * b * b * b * d + b * b * c * c
        - 4.0 * a * c * c * c
        - 27.0 * a * a * d * d
}

#[inline]
fn coeffs(params: &MgtParams, rho: f64) -> (f64, f64, f64, f64) {
    let r2 = rho * rho;
    (
        params.tau(),
        1.0,
        (params.delta() + params.tau()) * r2,
        r2,
    )
}

fn eval_cubic(params: &MgtParams, rho: f64, x: f64) -> f64 {
    let (a, b, c, d) = coeffs(params, rho);
    ((a * x + b) * x + c) * x + d
}

fn eval_cubic_deriv(params: &MgtParams, rho: f64, x: f64) -> f64 {
    let (a, b, c, _) = coeffs(params, rho);
    (3.0 * a * x + 2.0 * b) * x + c
}

fn eval_cubic_complex(params: &MgtParams, rho: f64, re: f64, im: f64) -> (f64, f64) {
    let (a, b, c, d) = coeffs(params, rho);
    // Horner in complex arithmetic.
    let (mut pr, mut pi) = (a, 0.0);
    for coef in [b, c, d] {
        let nr = pr * re - pi * im + coef;
        let ni = pr * im + pi * re;
        pr = nr;
        pi = ni;
    }
    (pr, pi)
}

fn newton_polish_real(params: &MgtParams, rho: f64, mut x: f64) -> f64 {
    for _ in 0..2 {
        let f = eval_cubic(params, rho, x);
        let df = eval_cubic_deriv(params, rho, x);
        if df != 0.0 && f.is_finite() {
            let step = f / df;
            if step.is_finite() {
                x -= step;
            }
        }
    }
    x
}

fn newton_polish_complex(params: &MgtParams, rho: f64, mut re: f64, mut im: f64) -> (f64, f64) {
    let (a, b, _, _) = coeffs(params, rho);
    for _ in 0..2 {
        let (fr, fi) = eval_cubic_complex(params, rho, re, im);
        // p'(z) via Horner as well.
        let (mut dr, mut di) = (3.0 * a, 0.0);
        let coefs = [2.0 * b, eval_cubic_deriv(params, rho, 0.0)];
        for coef in coefs {
            let nr = dr * re - di * im + coef;
            let ni = dr * im + di * re;
            dr = nr;
            di = ni;
        }
        let denom = dr * dr + di * di;
        if denom > 0.0 {
            let sr = (fr * dr + fi * di) / denom;
            let si = (fi * dr - fr * di) / denom;
            if sr.is_finite() && si.is_finite() {
                re -= sr;
                im -= si;
            }
        }
    }
    (re, im.abs())
}

/// Real root of the depressed form via the stable Cardano branch; valid when
/// the discriminant is negative (exactly one real root).
fn cardano_single_real(params: &MgtParams, rho: f64) -> f64 {
    let (a, b, c, d) = coeffs(params, rho);
    let shift = b / (3.0 * a);
    let p = (3.0 * a * c - b * b) / (3.0 * a * a);
    let q = (2.0 * b * b * b - 9.0 * a * b * c + 27.0 * a * a * d) / (27.0 * a * a * a);
    let big_d = q * q / 4.0 + p * p * p / 27.0;
    let s = big_d.max(0.0).sqrt();
    // Pick the cube-root branch with the same sign as q to avoid cancellation.
    let u3 = -q / 2.0 - s.copysign(q);
    let u = u3.cbrt();
    let y = if u != 0.0 { u - p / (3.0 * u) } else { 0.0 };
    y - shift
}

/// All three real roots via the trigonometric form; valid when the
/// discriminant is non-negative.
fn trig_three_real(params: &MgtParams, rho: f64) -> [f64; 3] {
    let (a, b, c, d) = coeffs(params, rho);
    let shift = b / (3.0 * a);
    let p = (3.0 * a * c - b * b) / (3.0 * a * a);
    let q = (2.0 * b * b * b - 9.0 * a * b * c + 27.0 * a * a * d) / (27.0 * a * a * a);
    if p >= 0.0 {
        // Triple-root-like corner; all roots at the shift point.
        return [-shift; 3];
    }
    let m = 2.0 * (-p / 3.0).sqrt();
    let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
    let theta = arg.acos() / 3.0;
    let mut out = [0.0; 3];
    for (k, slot) in out.iter_mut().enumerate() {
        let y = m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos();
        *slot = newton_polish_real(params, rho, y - shift);
    }
    out.sort_by(|x, y| x.partial_cmp(y).unwrap());
    out
}

/// Track the root branch starting at `-1/tau` from `rho = 0` up to `rho`,
/// marching in `rho^2` with Newton continuation. Used only to label the
/// real-triple encoding; the branch is well defined away from collisions
/// that involve it.
fn track_lambda1(params: &MgtParams, rho: f64) -> f64 {
    const STEPS: usize = 64;
    let mut lam = -1.0 / params.tau();
    for j in 1..=STEPS {
        let r = rho * ((j as f64) / (STEPS as f64)).sqrt();
        for _ in 0..3 {
            let f = eval_cubic(params, r, lam);
            let df = eval_cubic_deriv(params, r, lam);
            if df != 0.0 {
                let step = f / df;
                if step.is_finite() {
                    lam -= step;
                }
            }
        }
    }
    lam
}

/// Solve the characteristic cubic at frequency `rho >= 0`.
pub fn solve_characteristic(params: &MgtParams, rho: f64) -> Result<RootTriple> {
    if !rho.is_finite() || rho < 0.0 {
        return Err(MgtError::Domain(format!(
            "frequency must be finite and non-negative, got {rho}"
        )));
    }
    if rho == 0.0 {
        // Cubic degenerates to tau*l^3 + l^2 = 0.
        return Ok(RootTriple {
            lambda1: -1.0 / params.tau(),
            mu_re: 0.0,
            mu_im: 0.0,
            discriminant: 0.0,
            degenerate: true,
        });
    }
    if params.delta() == 0.0 {
        // Exact factorization (tau*l + 1)(l^2 + rho^2).
        let r2 = rho * rho;
        let disc = -4.0 * r2 * (1.0 + params.tau() * params.tau() * r2).powi(2);
        return Ok(RootTriple {
            lambda1: -1.0 / params.tau(),
            mu_re: 0.0,
            mu_im: rho,
            discriminant: disc,
            degenerate: false,
        });
    }

    let disc = discriminant(params, rho);
    if disc < 0.0 {
        let lambda1 = newton_polish_real(params, rho, cardano_single_real(params, rho));
        // Deflate: tau*l^2 + B*l + C with the constant synthesized from the
        // root product to avoid cancellation.
        let tau = params.tau();
        let b = 1.0 + tau * lambda1;
        let c = -(rho * rho) / lambda1;
        let mu_re0 = -b / (2.0 * tau);
        let disc_q = 4.0 * tau * c - b * b;
        let mu_im0 = disc_q.max(0.0).sqrt() / (2.0 * tau);
        let (mu_re, mu_im) = newton_polish_complex(params, rho, mu_re0, mu_im0);
        let gap_scale = 1.0 + lambda1.abs().max(mu_im);
        let degenerate =
            ((lambda1 - mu_re).hypot(mu_im)) < DEGENERATE_GAP * gap_scale || mu_im < DEGENERATE_GAP;
        Ok(RootTriple {
            lambda1,
            mu_re,
            mu_im,
            discriminant: disc,
            degenerate,
        })
    } else {
        let roots = trig_three_real(params, rho);
        let tracked = track_lambda1(params, rho);
        let (idx, _) = roots
            .iter()
            .enumerate()
            .min_by(|(_, x), (_, y)| {
                (*x - tracked)
                    .abs()
                    .partial_cmp(&(*y - tracked).abs())
                    .unwrap()
            })
            .unwrap();
        let lambda1 = roots[idx];
        let mut rest: Vec<f64> = roots
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != idx)
            .map(|(_, &r)| r)
            .collect();
        rest.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let (lo, hi) = (rest[0], rest[1]);
        let scale = 1.0 + roots.iter().fold(0.0_f64, |m, r| m.max(r.abs()));
        let min_gap = (roots[1] - roots[0]).min(roots[2] - roots[1]);
        Ok(RootTriple {
            lambda1,
            mu_re: 0.5 * (lo + hi),
            mu_im: 0.5 * (hi - lo),
            discriminant: disc,
            degenerate: min_gap < DEGENERATE_GAP * scale,
        })
    }
}

/// Truncated small-frequency expansion of the three root components.
pub fn small_freq_expansion(
    params: &MgtParams,
    rho: f64,
    order: ExpansionOrder,
) -> Result<RootTriple> {
    if order.zone != Zone::SmallFreq {
        return Err(MgtError::Usage(
            "small_freq_expansion requires a SmallFreq order".into(),
        ));
    }
    if !rho.is_finite() {
        return Err(MgtError::Domain("frequency must be finite".into()));
    }
    let (tau, delta) = (params.tau(), params.delta());
    let r2 = rho * rho;
    let two = order.terms >= 2;
    let lambda1 = -1.0 / tau + if two { delta * r2 } else { 0.0 };
    let mu_re = -0.5 * delta * r2
        - if two {
            0.5 * tau * delta * (delta - tau) * r2 * r2
        } else {
            0.0
        };
    let mu_im = rho
        + if two {
            delta * (4.0 * tau - delta) / 8.0 * rho * r2
        } else {
            0.0
        };
    Ok(RootTriple {
        lambda1,
        mu_re,
        mu_im,
        discriminant: discriminant(params, rho),
        degenerate: false,
    })
}

/// Truncated large-frequency expansion of the three root components.
pub fn large_freq_expansion(
    params: &MgtParams,
    rho: f64,
    order: ExpansionOrder,
) -> Result<RootTriple> {
    if order.zone != Zone::LargeFreq {
        return Err(MgtError::Usage(
            "large_freq_expansion requires a LargeFreq order".into(),
        ));
    }
    if !rho.is_finite() || rho <= 0.0 {
        return Err(MgtError::Domain(format!(
            "large-frequency expansion needs rho > 0, got {rho}"
        )));
    }
    let (tau, delta) = (params.tau(), params.delta());
    let dt = delta + tau;
    let inv_r2 = 1.0 / (rho * rho);
    let two = order.terms >= 2;
    let lambda1 = -1.0 / dt - if two { delta / dt.powi(4) * inv_r2 } else { 0.0 };
    let mu_re = -delta / (2.0 * tau * dt)
        + if two {
            delta / (2.0 * dt.powi(4)) * inv_r2
        } else {
            0.0
        };
    let speed = (dt / tau).sqrt();
    let mu_im = speed * rho
        - if two {
            delta * (delta + 4.0 * tau) / (8.0 * tau * dt.powi(3)) * speed / rho
        } else {
            0.0
        };
    Ok(RootTriple {
        lambda1,
        mu_re,
        mu_im,
        discriminant: discriminant(params, rho),
        degenerate: false,
    })
}

fn component(triple: &RootTriple, which: RootComponent) -> f64 {
    match which {
        RootComponent::Lambda1 => triple.lambda1,
        RootComponent::MuRe => triple.mu_re,
        RootComponent::MuIm => triple.mu_im,
    }
}

/// Fit the slope of `log |exact - expansion|` against `log rho` over a
/// geometric frequency ladder `rho0 * 2^{-k}` (small zone) or `rho0 * 2^k`
/// (large zone). Residuals at floating-point noise are dropped; when fewer
/// than three usable points remain the check reports saturation.
pub fn expansion_order_check(
    params: &MgtParams,
    zone: Zone,
    which: RootComponent,
    terms: u32,
    rho0: f64,
    levels: usize,
) -> Result<ConvergenceCheck> {
    if levels < 3 {
        return Err(MgtError::Usage(
            "need at least three frequency levels to fit a slope".into(),
        ));
    }
    if !rho0.is_finite() || rho0 <= 0.0 {
        return Err(MgtError::Domain("rho0 must be positive".into()));
    }
    let order = ExpansionOrder::new(zone, terms)?;
    let mut pts = Vec::with_capacity(levels);
    let mut max_res = 0.0_f64;
    for k in 0..levels {
        let rho = match zone {
            Zone::SmallFreq => rho0 * 0.5_f64.powi(k as i32),
            Zone::LargeFreq => rho0 * 2.0_f64.powi(k as i32),
        };
        let exact = solve_characteristic(params, rho)?;
        let approx = match zone {
            Zone::SmallFreq => small_freq_expansion(params, rho, order)?,
            Zone::LargeFreq => large_freq_expansion(params, rho, order)?,
        };
        let res = (component(&exact, which) - component(&approx, which)).abs();
        max_res = max_res.max(res);
        // Noise floor: double-precision on the component's own scale.
        let floor = 1e-13 * (1.0 + component(&exact, which).abs());
        if res > floor {
            pts.push((rho.ln(), res.ln()));
        }
    }
    if pts.len() < 3 {
        return Ok(ConvergenceCheck::Saturated {
            max_residual: max_res,
        });
    }
    Ok(ConvergenceCheck::Slope(ols_slope(&pts)))
}

fn ols_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Locate discriminant sign changes on `(0, rho_max]` by scan + bisection.
/// The zones picked by cutoff defaults are validated against this list.
pub fn discriminant_sign_changes(params: &MgtParams, rho_max: f64, samples: usize) -> Vec<f64> {
    let mut out = Vec::new();
    if samples < 2 {
        return out;
    }
    let mut prev_rho = rho_max / samples as f64;
    let mut prev = discriminant(params, prev_rho);
    for k in 2..=samples {
        let rho = rho_max * k as f64 / samples as f64;
        let cur = discriminant(params, rho);
        if prev.signum() != cur.signum() && prev != 0.0 {
            let (mut a, mut b) = (prev_rho, rho);
            for _ in 0..80 {
                let m = 0.5 * (a + b);
                if discriminant(params, m).signum() == prev.signum() {
                    a = m;
                } else {
                    b = m;
                }
            }
            out.push(0.5 * (a + b));
        }
        prev_rho = rho;
        prev = cur;
    }
    out
}
