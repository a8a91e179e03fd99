use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::attention::{DEFAULT_TAU_FINAL, DEFAULT_TAU_MID};
use crate::error::{Error, Result};
use crate::matching::{IcpOptions, Intrinsics, LEVEL_FEATURE, LEVEL_REGION};
use crate::perspective::HoughParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Mode {
    #[default]
    #[serde(rename = "3dof")]
    ThreeDof,
    #[serde(rename = "6dof")]
    SixDof,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::ThreeDof => "3dof",
            Mode::SixDof => "6dof",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "3dof" => Ok(Mode::ThreeDof),
            "6dof" => Ok(Mode::SixDof),
            other => Err(Error::Config(format!("unknown mode {other:?}"))),
        }
    }
}

/// Everything a run needs besides its inputs. Mirrors the JSON config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub tau1: f64,
    pub tau2: f64,
    #[serde(rename = "T")]
    pub total_steps: usize,
    pub mode: Mode,
    pub hough: HoughParams,
    pub icp: IcpOptions,
    pub min_instance_area: usize,
    pub intrinsics: Option<Intrinsics>,
    pub icp_point_level: u8,
    /// Threads for per-word matching; 0 uses the available parallelism.
    pub workers: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            tau1: DEFAULT_TAU_MID,
            tau2: DEFAULT_TAU_FINAL,
            total_steps: 50,
            mode: Mode::ThreeDof,
            hough: HoughParams::default(),
            icp: IcpOptions::default(),
            min_instance_area: 25,
            intrinsics: None,
            icp_point_level: LEVEL_FEATURE,
            workers: 0,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let cfg: RunConfig = serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0 <= self.tau1 && self.tau1 <= self.tau2 && self.tau2 <= 1.0) {
            return Err(Error::Config(format!(
                "need 0 <= tau1 <= tau2 <= 1, got tau1 = {}, tau2 = {}",
                self.tau1, self.tau2
            )));
        }
        if self.total_steps == 0 {
            return Err(Error::Config("T must be at least 1".into()));
        }
        match (self.mode, &self.intrinsics) {
            (Mode::SixDof, None) => {
                return Err(Error::Config("6dof mode requires intrinsics".into()))
            }
            (Mode::ThreeDof, Some(_)) => {
                return Err(Error::Config("intrinsics are only used in 6dof mode".into()))
            }
            (Mode::SixDof, Some(k))
                if !(k.fx > 0.0 && k.fy > 0.0 && k.cx.is_finite() && k.cy.is_finite()) =>
            {
                return Err(Error::Config("intrinsics need positive focal lengths".into()))
            }
            _ => {}
        }
        if self.icp_point_level != LEVEL_REGION && self.icp_point_level != LEVEL_FEATURE {
            return Err(Error::Config(format!(
                "icp_point_level must be 1 or 2, got {}",
                self.icp_point_level
            )));
        }
        self.hough.validate()?;
        self.icp.validate()?;
        Ok(())
    }

    pub fn worker_count(&self) -> usize {
        match self.workers {
            0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
            n => n,
        }
    }

    /// SHA-256 of the canonical JSON form, as lowercase hex.
    pub fn hash(&self) -> String {
        let value = serde_json::to_value(self).expect("config serializes");
        let digest = Sha256::digest(value.to_string().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}
