//! The JSON problem document accepted by every subcommand.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nonlinearity::{find_ratios, ratio_for_mu, HomogeneousNonlinearity, ProportionalRatio};
use crate::simulator::SimulationSettings;
use crate::spectral::DiscretizationParams;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OmegaSpec {
    Single(f64),
    Range { min: f64, max: f64, count: usize },
}

impl OmegaSpec {
    /// Evenly spaced speeds, endpoints included.
    pub fn values(&self) -> Vec<f64> {
        match *self {
            Self::Single(w) => vec![w],
            Self::Range { min, max, count } => {
                if count == 1 {
                    return vec![min];
                }
                (0..count)
                    .map(|i| min + (max - min) * i as f64 / (count - 1) as f64)
                    .collect()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub p: u32,
    /// `coeffs[i]` multiplies `u^i v^(p+2-i)`.
    pub coeffs: Vec<f64>,
    /// Overrides ratio detection; required when every `mu` is a ratio.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<OmegaSpec>,
    #[serde(default)]
    pub grid: DiscretizationParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sim: Option<SimulationSettings>,
}

impl ProblemSpec {
    pub fn parse(json: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(json).map_err(|e| Error::Schema(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.p < 1 {
            return Err(Error::Schema("p must be at least 1".into()));
        }
        if self.coeffs.len() != self.p as usize + 3 {
            return Err(Error::Schema(format!(
                "coeffs must have p + 3 = {} entries, got {}",
                self.p + 3,
                self.coeffs.len()
            )));
        }
        if let Some(om) = &self.omega {
            if let OmegaSpec::Range { min, max, count } = *om {
                if count == 0 || !(min <= max) {
                    return Err(Error::Schema(format!(
                        "omega range needs min <= max and count >= 1 (got {min}, {max}, {count})"
                    )));
                }
            }
            if let Some(w) = om.values().into_iter().find(|w| !(*w > 1.0) || !w.is_finite()) {
                return Err(Error::Schema(format!("omega = {w} must exceed 1")));
            }
        }
        self.grid.validate().map_err(|e| Error::Schema(e.to_string()))?;
        self.nonlinearity().map(|_| ())
    }

    pub fn nonlinearity(&self) -> Result<HomogeneousNonlinearity> {
        HomogeneousNonlinearity::new(self.p, self.coeffs.clone()).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn omegas(&self, what: &str) -> Result<Vec<f64>> {
        self.omega
            .as_ref()
            .map(OmegaSpec::values)
            .ok_or_else(|| Error::Schema(format!("omega is required for {what}")))
    }

    /// Every real ratio, or the explicit one.
    pub fn ratios(&self, h: &HomogeneousNonlinearity) -> Result<Vec<ProportionalRatio>> {
        match self.mu {
            Some(mu) => Ok(vec![ratio_for_mu(h, mu).map_err(|e| Error::Schema(e.to_string()))?]),
            None => find_ratios(h),
        }
    }

    /// Admissible ratios; `NoAdmissibleRatio` if there are none.
    pub fn admissible_ratios(&self, h: &HomogeneousNonlinearity) -> Result<Vec<ProportionalRatio>> {
        let ok: Vec<_> = self.ratios(h)?.into_iter().filter(|r| r.admissible).collect();
        if ok.is_empty() {
            return Err(Error::NoAdmissibleRatio);
        }
        Ok(ok)
    }
}
