//! Frequency localization: the smooth partition `chi1 + chi2 + chi3 = 1`
//! separating small, bounded and large frequencies.

use serde::{Deserialize, Serialize};

use crate::error::{MgtError, Result};
use crate::params::MgtParams;
use crate::roots::discriminant;

use super::RadialFunction;

/// Ramp used on the cutoff transition intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum Mollifier {
    /// `6u^5 - 15u^4 + 10u^3`, C^2 across the knots.
    #[default]
    SmoothstepQuintic,
}

/// Which member of the partition of unity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CutoffIndex {
    Chi1,
    Chi2,
    Chi3,
}

/// Localization radii: `chi1 = 1` on `[0, eps0]` and `0` beyond `2*eps0`;
/// `chi3 = 0` below `n0` and `1` beyond `2*n0`; `chi2` is the remainder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutoffSpec {
    eps0: f64,
    n0: f64,
    mollifier: Mollifier,
}

impl CutoffSpec {
    pub fn new(eps0: f64, n0: f64) -> Result<Self> {
        if !(eps0.is_finite() && eps0 > 0.0) {
            return Err(MgtError::Domain(format!("eps0 must be positive, got {eps0}")));
        }
        if !(n0.is_finite() && 2.0 * eps0 < n0) {
            return Err(MgtError::Domain(format!(
                "need 0 < 2*eps0 < n0, got eps0={eps0}, n0={n0}"
            )));
        }
        Ok(Self {
            eps0,
            n0,
            mollifier: Mollifier::SmoothstepQuintic,
        })
    }

    /// Default radii for a parameter set, scaled so the small and large
    /// zones sit where the characteristic discriminant is negative.
    pub fn default_for(params: &MgtParams) -> Self {
        let dt = params.delta() + params.tau();
        let eps0 = 0.1 * (1.0_f64).min(1.0 / dt);
        let n0 = 10.0 * (1.0_f64).max(dt);
        Self {
            eps0,
            n0,
            mollifier: Mollifier::SmoothstepQuintic,
        }
    }

    #[inline]
    pub fn eps0(&self) -> f64 {
        self.eps0
    }

    #[inline]
    pub fn n0(&self) -> f64 {
        self.n0
    }

    pub fn mollifier(&self) -> Mollifier {
        self.mollifier
    }

    /// Scan the small zone `[0, 2 eps0]` and the large zone `[n0, sample_max]`
    /// for discriminant sign violations (the conjugate pair must exist there).
    pub fn validate_zones(&self, params: &MgtParams, sample_max: f64) -> Result<()> {
        let check = |lo: f64, hi: f64, label: &str| -> Result<()> {
            let samples = 2000;
            for k in 1..=samples {
                let rho = lo + (hi - lo) * k as f64 / samples as f64;
                if rho > 0.0 && discriminant(params, rho) >= 0.0 {
                    return Err(MgtError::Domain(format!(
                        "{label} zone touches a non-negative discriminant at rho={rho}; \
                         shrink eps0 or grow n0"
                    )));
                }
            }
            Ok(())
        };
        check(0.0, 2.0 * self.eps0, "small")?;
        check(self.n0, sample_max.max(self.n0 * 4.0), "large")
    }

    /// Evaluate the selected cutoff at radius `rho`.
    pub fn chi(&self, which: CutoffIndex, rho: f64) -> f64 {
        match which {
            CutoffIndex::Chi1 => 1.0 - smoothstep((rho - self.eps0) / self.eps0),
            CutoffIndex::Chi3 => smoothstep((rho - self.n0) / self.n0),
            CutoffIndex::Chi2 => {
                1.0 - self.chi(CutoffIndex::Chi1, rho) - self.chi(CutoffIndex::Chi3, rho)
            }
        }
    }
}

fn smoothstep(u: f64) -> f64 {
    let u = u.clamp(0.0, 1.0);
    ((6.0 * u - 15.0) * u + 10.0) * u * u * u
}

/// Pointwise multiply by the selected cutoff.
pub fn cutoff_apply(f: &RadialFunction, spec: &CutoffSpec, which: CutoffIndex) -> RadialFunction {
    f.map(|rho, v| v * spec.chi(which, rho))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::RadialGrid;

    #[test]
    fn plateaus_and_partition() {
        let spec = CutoffSpec::new(0.1, 10.0).unwrap();
        assert_eq!(spec.chi(CutoffIndex::Chi1, 0.05), 1.0);
        assert_eq!(spec.chi(CutoffIndex::Chi2, 0.05), 0.0);
        assert_eq!(spec.chi(CutoffIndex::Chi3, 0.05), 0.0);
        // middle plateau at rho = 3*eps0
        assert_eq!(spec.chi(CutoffIndex::Chi2, 0.3), 1.0);
        assert_eq!(spec.chi(CutoffIndex::Chi3, 25.0), 1.0);
        for rho in [0.0, 0.05, 0.13, 0.2, 1.0, 9.0, 14.0, 21.0, 100.0] {
            let sum = spec.chi(CutoffIndex::Chi1, rho)
                + spec.chi(CutoffIndex::Chi2, rho)
                + spec.chi(CutoffIndex::Chi3, rho);
            assert!((sum - 1.0).abs() < 1e-15);
            for w in [CutoffIndex::Chi1, CutoffIndex::Chi2, CutoffIndex::Chi3] {
                let v = spec.chi(w, rho);
                assert!((-1e-15..=1.0 + 1e-15).contains(&v));
            }
        }
    }

    #[test]
    fn default_radii_validate() {
        for (tau, delta) in [(1.0, 1.0), (0.1, 5.0), (2.0, 0.0), (0.3, 0.2)] {
            let p = MgtParams::new(tau, delta).unwrap();
            let spec = CutoffSpec::default_for(&p);
            spec.validate_zones(&p, spec.n0() * 8.0).unwrap();
        }
    }

    #[test]
    fn rejects_overlapping_radii() {
        assert!(CutoffSpec::new(1.0, 1.5).is_err());
        assert!(CutoffSpec::new(0.0, 1.0).is_err());
    }

    #[test]
    fn apply_multiplies_pointwise() {
        let grid = RadialGrid::gauss_legendre(3, 1.0, 4, 6).unwrap();
        let spec = CutoffSpec::new(0.1, 10.0).unwrap();
        let f = RadialFunction::from_fn(&grid, |_| 2.0);
        let g = cutoff_apply(&f, &spec, CutoffIndex::Chi1);
        for (&rho, &v) in grid.nodes().iter().zip(g.values()) {
            assert_eq!(v, 2.0 * spec.chi(CutoffIndex::Chi1, rho));
        }
    }
}
