//! Time-decay kernels applied to the age of an event.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecayKind {
    /// `exp(-rate * age)`
    Exponential,
    /// `(age + 1)^(-rate)`
    Polynomial,
}

/// A decay kernel. Ages are measured in seconds.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecaySpec {
    pub kind: DecayKind,
    pub rate: f64,
}

pub const DEFAULT_RATE: f64 = 0.0001;

/// Exponential rates swept in the reference evaluation.
pub const SWEEP_RATES: [f64; 5] = [0.0001, 0.0005, 0.001, 0.005, 0.01];

pub const TIME_UNIT: &str = "seconds";

impl Default for DecaySpec {
    fn default() -> Self {
        DecaySpec {
            kind: DecayKind::Exponential,
            rate: DEFAULT_RATE,
        }
    }
}

impl DecaySpec {
    pub fn exponential(rate: f64) -> Result<Self> {
        DecaySpec {
            kind: DecayKind::Exponential,
            rate,
        }
        .validated()
    }

    pub fn polynomial(rate: f64) -> Result<Self> {
        DecaySpec {
            kind: DecayKind::Polynomial,
            rate,
        }
        .validated()
    }

    pub fn validated(self) -> Result<Self> {
        let ok = match self.kind {
            DecayKind::Exponential => self.rate >= 0.0 && self.rate.is_finite(),
            DecayKind::Polynomial => self.rate > 0.0 && self.rate.is_finite(),
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::Config(format!(
                "decay rate {} is out of range for {:?}",
                self.rate, self.kind
            )))
        }
    }

    /// Kernel value for a non-negative age.
    pub fn phi(&self, delta: f64) -> Result<f64> {
        if !(delta >= 0.0) {
            return Err(Error::Contract(format!("decay age {delta} is negative")));
        }
        Ok(self.phi_unchecked(delta))
    }

    /// As [`phi`](Self::phi) without the sign check.
    #[inline]
    pub fn phi_unchecked(&self, delta: f64) -> f64 {
        match self.kind {
            DecayKind::Exponential => (-self.rate * delta).exp(),
            DecayKind::Polynomial => (delta + 1.0).powf(-self.rate),
        }
    }
}

pub fn phi(spec: &DecaySpec, delta: f64) -> Result<f64> {
    spec.phi(delta)
}
