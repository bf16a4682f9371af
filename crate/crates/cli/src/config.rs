//! Run configuration: a JSON document whose values can be overridden from
//! the command line. Every section is optional and defaults to the
//! natural-unit reference setup (m = ħ = r = ω₀ = 1, Ω = 0.1, flat profile,
//! T = 2π/ω₀).

use std::path::{Path, PathBuf};
use std::str::FromStr;

use sagnac_core::{Config, Profile, ProfileFamily};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TrapSection {
    pub mass: f64,
    pub hbar: f64,
    pub omega0: f64,
    pub radius: f64,
    pub rotation: f64,
}

impl Default for TrapSection {
    fn default() -> Self {
        Self {
            mass: 1.0,
            hbar: 1.0,
            omega0: 1.0,
            radius: 1.0,
            rotation: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ProfileSection {
    pub family: ProfileFamily,
    /// Interrogation time; one trap period when absent.
    pub duration: Option<f64>,
    pub samples: Option<Vec<f64>>,
}

impl Default for ProfileSection {
    fn default() -> Self {
        Self {
            family: ProfileFamily::Flat,
            duration: None,
            samples: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SpectrumSection {
    pub omega_min: f64,
    pub omega_max: f64,
    pub points: usize,
}

impl Default for SpectrumSection {
    fn default() -> Self {
        Self {
            omega_min: 0.0,
            omega_max: 4.0,
            points: 201,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TrajectorySection {
    pub intervals: usize,
}

impl Default for TrajectorySection {
    fn default() -> Self {
        Self {
            intervals: 256,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FockSection {
    pub n_max: usize,
    pub steps: usize,
    pub tolerance: f64,
}

impl Default for FockSection {
    fn default() -> Self {
        Self {
            n_max: 40,
            steps: 4096,
            tolerance: 1e-4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DesignSection {
    pub index: Option<u32>,
    pub bracket: Option<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub trap: TrapSection,
    pub profile: ProfileSection,
    pub spectrum: SpectrumSection,
    pub trajectory: TrajectorySection,
    pub fock: FockSection,
    pub design: DesignSection,
    pub decompose_intervals: Option<usize>,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn trap_config(&self) -> Result<Config, CliError> {
        let t = &self.trap;
        Ok(Config::new(t.mass, t.hbar, t.omega0, t.radius, t.rotation)?)
    }

    pub fn duration(&self) -> f64 {
        self.profile
            .duration
            .unwrap_or(std::f64::consts::TAU / self.trap.omega0)
    }

    pub fn sweep_profile(&self) -> Result<Profile, CliError> {
        let p = &self.profile;
        if p.family == ProfileFamily::Tabulated && p.samples.is_none() {
            return Err(CliError::Config("tabulated profile needs `samples`".into()));
        }
        Ok(Profile::make(p.family, self.duration(), p.samples.as_deref())?)
    }

    /// Checks everything that can be checked before any computation.
    pub fn validate(&self) -> Result<(), CliError> {
        self.trap_config()?;
        self.sweep_profile()?;
        let s = &self.spectrum;
        if !(s.omega_min.is_finite() && s.omega_max.is_finite() && s.omega_min < s.omega_max) {
            return Err(CliError::Config(format!(
                "spectrum range [{}, {}] is empty",
                s.omega_min, s.omega_max
            )));
        }
        if s.points < 2 {
            return Err(CliError::Config("spectrum needs at least 2 points".into()));
        }
        if !(self.fock.tolerance > 0.0) {
            return Err(CliError::Config("fock tolerance must be positive".into()));
        }
        if let Some([a, b]) = self.design.bracket {
            if !(a > 0.0 && b > a) {
                return Err(CliError::Config(format!("design bracket [{a}, {b}] is not a positive interval")));
            }
        }
        Ok(())
    }

    /// Sets a numeric parameter by its sweep key.
    pub fn set(&mut self, key: SweepKey, value: f64) {
        match key {
            SweepKey::Mass => self.trap.mass = value,
            SweepKey::Hbar => self.trap.hbar = value,
            SweepKey::Omega0 => self.trap.omega0 = value,
            SweepKey::Radius => self.trap.radius = value,
            SweepKey::Rotation => self.trap.rotation = value,
            SweepKey::Duration => self.profile.duration = Some(value),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKey {
    Mass,
    Hbar,
    Omega0,
    Radius,
    Rotation,
    Duration,
}

impl SweepKey {
    pub fn name(self) -> &'static str {
        match self {
            SweepKey::Mass => "mass",
            SweepKey::Hbar => "hbar",
            SweepKey::Omega0 => "omega0",
            SweepKey::Radius => "radius",
            SweepKey::Rotation => "rotation",
            SweepKey::Duration => "duration",
        }
    }
}

/// `key=start:stop:n`, `n` evenly spaced values including both ends.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub key: SweepKey,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Sweep {
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.points - 1) as f64;
        (0..self.points).map(|k| self.start + step * k as f64).collect()
    }
}

impl FromStr for Sweep {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (key, range) = s.split_once('=').ok_or("expected key=start:stop:n")?;
        let key = match key {
            "mass" => SweepKey::Mass,
            "hbar" => SweepKey::Hbar,
            "omega0" => SweepKey::Omega0,
            "radius" => SweepKey::Radius,
            "rotation" => SweepKey::Rotation,
            "duration" => SweepKey::Duration,
            other => return Err(format!("cannot sweep `{other}`")),
        };
        let parts: Vec<&str> = range.split(':').collect();
        let [start, stop, n] = parts[..] else {
            return Err("expected key=start:stop:n".into());
        };
        let start: f64 = start.parse().map_err(|e| format!("start: {e}"))?;
        let stop: f64 = stop.parse().map_err(|e| format!("stop: {e}"))?;
        let points: usize = n.parse().map_err(|e| format!("n: {e}"))?;
        if points == 0 || !start.is_finite() || !stop.is_finite() {
            return Err("sweep needs finite bounds and n >= 1".into());
        }
        Ok(Sweep { key, start, stop, points })
    }
}

/// `a:b`
pub fn parse_bracket(s: &str) -> Result<[f64; 2], String> {
    let (a, b) = s.split_once(':').ok_or("expected lower:upper")?;
    Ok([
        a.parse().map_err(|e| format!("lower: {e}"))?,
        b.parse().map_err(|e| format!("upper: {e}"))?,
    ])
}
