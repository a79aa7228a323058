use serde::{Deserialize, Serialize};

use crate::error::{MgtError, Result};

/// Physical parameters of the equation: thermal relaxation `tau > 0` and
/// diffusivity of sound `delta >= 0`. `delta > 0` is the dissipative case,
/// `delta = 0` the conservative one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MgtParams {
    tau: f64,
    delta: f64,
}

impl MgtParams {
    pub fn new(tau: f64, delta: f64) -> Result<Self> {
        if !tau.is_finite() || tau <= 0.0 {
            return Err(MgtError::Domain(format!(
                "tau must be finite and positive, got {tau}"
            )));
        }
        if !delta.is_finite() || delta < 0.0 {
            return Err(MgtError::Domain(format!(
                "delta must be finite and non-negative, got {delta}"
            )));
        }
        Ok(Self { tau, delta })
    }

    #[inline]
    pub fn tau(&self) -> f64 {
        self.tau
    }

    #[inline]
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// True in the conservative case `delta = 0`.
    #[inline]
    pub fn is_conservative(&self) -> bool {
        self.delta == 0.0
    }

    /// Same relaxation time with the dissipation switched off.
    pub fn conservative(&self) -> Self {
        Self {
            tau: self.tau,
            delta: 0.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert!(MgtParams::new(0.0, 1.0).is_err());
        assert!(MgtParams::new(-1.0, 1.0).is_err());
        assert!(MgtParams::new(1.0, -0.5).is_err());
        assert!(MgtParams::new(f64::NAN, 0.0).is_err());
        assert!(MgtParams::new(1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn accepts_conservative_case() {
        let p = MgtParams::new(2.0, 0.0).unwrap();
        assert!(p.is_conservative());
        assert_eq!(p.tau(), 2.0);
    }
}
