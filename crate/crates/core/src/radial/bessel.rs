//! Modified Bessel kernel `Jt_mu(s) = s^{-mu} J_mu(s)` for integer and
//! half-integer orders `mu >= -1/2`, which is the radial transform kernel in
//! dimension `n` at order `mu = n/2 - 1`. Power series below the crossover,
//! spherical recurrences (half-integer) or Hankel asymptotics (integer) above.

use std::f64::consts::PI;

use crate::error::{MgtError, Result};

const SERIES_CUT: f64 = 16.0;

/// `s^{-mu} J_mu(s)`, with the removable limit `1 / (2^mu Gamma(mu+1))`
/// at `s = 0`. `mu` must be an integer or half-integer `>= -1/2`.
pub fn modified_bessel(mu: f64, s: f64) -> Result<f64> {
    let two_mu = (2.0 * mu).round();
    if !mu.is_finite() || (2.0 * mu - two_mu).abs() > 1e-12 {
        return Err(MgtError::Domain(format!(
            "order must be an integer or half-integer, got {mu}"
        )));
    }
    if two_mu < -1.0 {
        return Err(MgtError::Domain(format!("order must be >= -1/2, got {mu}")));
    }
    if !s.is_finite() || s < 0.0 {
        return Err(MgtError::Domain(format!(
            "argument must be finite and non-negative, got {s}"
        )));
    }
    Ok(jtilde_two_mu(two_mu as i64, s))
}

/// Internal dispatch keyed by `2*mu` (exact integer).
pub(crate) fn jtilde_two_mu(two_mu: i64, s: f64) -> f64 {
    debug_assert!(two_mu >= -1);
    if s <= SERIES_CUT {
        jtilde_series(two_mu, s)
    } else if two_mu % 2 != 0 {
        jtilde_half_integer_large(two_mu, s)
    } else {
        jtilde_integer_large(two_mu / 2, s)
    }
}

/// Ascending series, written directly in the `s^{-mu} J_mu` form so there is
/// no singular prefactor:
/// `Jt_mu(s) = sum_k c_k`, `c_0 = 2^{-mu}/Gamma(mu+1)`,
/// `c_k = c_{k-1} * (-s^2/4) / (k (k + mu))`.
fn jtilde_series(two_mu: i64, s: f64) -> f64 {
    let mu = two_mu as f64 / 2.0;
    let mut term = (0.5_f64).powf(mu) / gamma_int_or_half(two_mu + 2);
    let mut sum = term;
    let z = -0.25 * s * s;
    for k in 1..=80 {
        let kf = k as f64;
        term *= z / (kf * (kf + mu));
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-280) {
            break;
        }
    }
    sum
}

/// `Gamma(m/2)` for positive integer or half-integer argument given as
/// `two_x = 2 * x`, by exact recursion from `Gamma(1) = 1`, `Gamma(1/2) = sqrt(pi)`.
fn gamma_int_or_half(two_x: i64) -> f64 {
    debug_assert!(two_x >= 1);
    if two_x % 2 == 0 {
        let mut g = 1.0;
        let mut k = 1.0;
        for _ in 1..(two_x / 2) {
            g *= k;
            k += 1.0;
        }
        g
    } else {
        let mut g = PI.sqrt();
        let mut k = 0.5;
        for _ in 0..(two_x - 1) / 2 {
            g *= k;
            k += 1.0;
        }
        g
    }
}

/// Half-integer orders via spherical Bessel upward recurrence; stable here
/// because it is only used for `s > SERIES_CUT`, far above the orders in use.
fn jtilde_half_integer_large(two_mu: i64, s: f64) -> f64 {
    let c = (2.0 / PI).sqrt();
    let (sin_s, cos_s) = s.sin_cos();
    if two_mu == -1 {
        // mu = -1/2: sqrt(2/pi) cos s
        return c * cos_s;
    }
    let l = ((two_mu - 1) / 2) as usize; // mu = l + 1/2
    let mut jm1 = cos_s / s;
    let mut j = sin_s / s;
    let mut scale = 1.0; // running s^{-l}
    for m in 0..l {
        let next = (2.0 * m as f64 + 1.0) / s * j - jm1;
        jm1 = j;
        j = next;
        scale /= s;
    }
    c * j * scale
}

/// Integer orders via the Hankel asymptotic expansion
/// `J_m(s) ~ sqrt(2/(pi s)) (cos(w) P - sin(w) Q)`, `w = s - m pi/2 - pi/4`.
fn jtilde_integer_large(m: i64, s: f64) -> f64 {
    let mu2 = 4.0 * (m * m) as f64;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..=24_i64 {
        let kf = k as f64;
        term *= (mu2 - (2.0 * kf - 1.0).powi(2)) / (kf * 8.0 * s);
        if term.abs() >= prev {
            break; // asymptotic series started diverging
        }
        prev = term.abs();
        let signed = if (k / 2) % 2 == 0 { term } else { -term };
        if k % 2 == 0 {
            p += signed;
        } else {
            q += signed;
        }
        if term.abs() < 1e-17 {
            break;
        }
    }
    let w = s - m as f64 * PI / 2.0 - PI / 4.0;
    let j = (2.0 / (PI * s)).sqrt() * (w.cos() * p - w.sin() * q);
    j / s.powi(m as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn half_order_closed_form() {
        // Jt_{1/2}(s) = sqrt(2/pi) sin(s)/s
        let c = (2.0 / PI).sqrt();
        assert_abs_diff_eq!(modified_bessel(0.5, PI).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(modified_bessel(0.5, 0.0).unwrap(), c, epsilon = 1e-15);
        for s in [0.3, 2.0, 15.9, 16.1, 40.0, 333.0] {
            assert_abs_diff_eq!(
                modified_bessel(0.5, s).unwrap(),
                c * s.sin() / s,
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn zero_limits() {
        // 1/(2^mu Gamma(mu+1))
        assert_abs_diff_eq!(modified_bessel(0.0, 0.0).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(modified_bessel(1.0, 0.0).unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(
            modified_bessel(1.5, 0.0).unwrap(),
            1.0 / (2.0_f64.powf(1.5) * 0.75 * PI.sqrt()),
            epsilon = 1e-15
        );
    }

    #[test]
    fn j0_first_zero() {
        // Independent oracle: the integral representation
        // J_0(x) = (1/pi) * int_0^pi cos(x sin t) dt by fine quadrature.
        let x = 2.404825557695773;
        let n = 20000;
        let mut acc = 0.0;
        for i in 0..n {
            let t = PI * (i as f64 + 0.5) / n as f64;
            acc += (x * t.sin()).cos();
        }
        let oracle = acc / n as f64;
        assert!(oracle.abs() < 1e-9, "oracle {oracle}");
        assert_abs_diff_eq!(modified_bessel(0.0, x).unwrap(), oracle, epsilon = 1e-9);
    }

    #[test]
    fn integer_orders_match_integral_representation() {
        // J_m(x) = (1/pi) int_0^pi cos(m t - x sin t) dt
        for m in [0_i64, 1, 2] {
            for x in [0.5, 7.3, 16.5, 42.0] {
                let n = 40000;
                let mut acc = 0.0;
                for i in 0..n {
                    let t = PI * (i as f64 + 0.5) / n as f64;
                    acc += (m as f64 * t - x * t.sin()).cos();
                }
                let oracle = acc / n as f64 / x.powi(m as i32);
                let got = modified_bessel(m as f64, x).unwrap();
                assert_abs_diff_eq!(got, oracle, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn series_asymptotic_crossover_is_smooth() {
        for two_mu in [-1_i64, 0, 1, 2, 3, 5] {
            let below = jtilde_two_mu(two_mu, SERIES_CUT - 1e-9);
            let above = jtilde_two_mu(two_mu, SERIES_CUT + 1e-9);
            assert!(
                (below - above).abs() < 1e-9,
                "two_mu={two_mu}: {below} vs {above}"
            );
        }
    }

    #[test]
    fn rejects_bad_orders() {
        assert!(modified_bessel(0.3, 1.0).is_err());
        assert!(modified_bessel(-1.0, 1.0).is_err());
        assert!(modified_bessel(0.5, -1.0).is_err());
    }
}
