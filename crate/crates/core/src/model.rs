//! Physical parameters, sweep-profile families and the per-branch drive.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Trap and rotation parameters in an explicit (user-chosen) unit system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrapConfig<S> {
    mass: S,
    hbar: S,
    omega0: S,
    radius: S,
    rotation: S,
}

impl<S: Scalar> TrapConfig<S> {
    pub fn new(mass: S, hbar: S, omega0: S, radius: S, rotation: S) -> Result<Self> {
        for (name, value) in [("mass", mass), ("hbar", hbar), ("omega0", omega0), ("radius", radius)] {
            if !value.is_finite() {
                return Err(Error::NonFinite(name));
            }
            if value <= S::zero() {
                return Err(Error::NonPositiveParameter {
                    name,
                    value: value.as_f64(),
                });
            }
        }
        if !rotation.is_finite() {
            return Err(Error::NonFinite("rotation"));
        }
        Ok(Self {
            mass,
            hbar,
            omega0,
            radius,
            rotation,
        })
    }

    /// `m = ħ = ω₀ = r = 1` with the given rotation frequency.
    pub fn natural(rotation: S) -> Self {
        Self {
            mass: S::one(),
            hbar: S::one(),
            omega0: S::one(),
            radius: S::one(),
            rotation,
        }
    }

    /// Natural units with `Ω = 0.1 ω₀`, the parameters of the reference phase-space plots.
    pub fn reference() -> Self {
        Self::natural(S::lit(0.1))
    }

    pub fn with_rotation(mut self, rotation: S) -> Self {
        self.rotation = rotation;
        self
    }

    pub fn with_omega0(self, omega0: S) -> Result<Self> {
        Self::new(self.mass, self.hbar, omega0, self.radius, self.rotation)
    }

    pub fn mass(&self) -> S {
        self.mass
    }
    pub fn hbar(&self) -> S {
        self.hbar
    }
    pub fn omega0(&self) -> S {
        self.omega0
    }
    pub fn radius(&self) -> S {
        self.radius
    }
    pub fn rotation(&self) -> S {
        self.rotation
    }

    /// `√(mħω₀/2)·r`, the factor multiplying angular velocity in the drive.
    pub fn drive_scale(&self) -> S {
        (self.mass * self.hbar * self.omega0 / S::two()).sqrt() * self.radius
    }

    /// `2πmr²/ħ`: Sagnac phase per unit rotation frequency.
    pub fn sagnac_slope(&self) -> S {
        S::TAU() * self.mass * self.radius * self.radius / self.hbar
    }
}

impl<S: Scalar> Default for TrapConfig<S> {
    fn default() -> Self {
        Self::reference()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileFamily {
    Flat,
    Sinusoidal,
    Cosinusoidal,
    Tabulated,
}

impl ProfileFamily {
    pub fn is_analytic(self) -> bool {
        !matches!(self, ProfileFamily::Tabulated)
    }
}

impl std::str::FromStr for ProfileFamily {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "flat" => Ok(ProfileFamily::Flat),
            "sinusoidal" | "sin" => Ok(ProfileFamily::Sinusoidal),
            "cosinusoidal" | "cos" => Ok(ProfileFamily::Cosinusoidal),
            "tabulated" => Ok(ProfileFamily::Tabulated),
            other => Err(format!("unknown profile family `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
enum Shape<S> {
    Flat,
    Sinusoidal,
    Cosinusoidal,
    Tabulated {
        /// Samples as supplied, on a uniform grid over `[0, T]`.
        samples: Vec<S>,
        /// Factor applied to the samples so that `∫ω_P dt = π`.
        rescale: S,
    },
}

/// Sweep angular velocity `ω_P(t) ≥ 0` on `[0, T]`, normalized to `∫ω_P dt = π`
/// and extended by zero outside the window.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepProfile<S> {
    duration: S,
    #[serde(flatten)]
    shape: Shape<S>,
}

fn check_duration<S: Scalar>(duration: S) -> Result<()> {
    if !duration.is_finite() {
        return Err(Error::NonFinite("duration"));
    }
    if duration <= S::zero() {
        return Err(Error::NonPositiveDuration(duration.as_f64()));
    }
    Ok(())
}

impl<S: Scalar> SweepProfile<S> {
    /// Constant angular velocity `π/T`.
    pub fn flat(duration: S) -> Result<Self> {
        check_duration(duration)?;
        Ok(Self {
            duration,
            shape: Shape::Flat,
        })
    }

    /// `π²|sin(2πt/T)|/(2T)`.
    pub fn sinusoidal(duration: S) -> Result<Self> {
        check_duration(duration)?;
        Ok(Self {
            duration,
            shape: Shape::Sinusoidal,
        })
    }

    /// `(π/T)[1 − cos(2πt/T)]`.
    pub fn cosinusoidal(duration: S) -> Result<Self> {
        check_duration(duration)?;
        Ok(Self {
            duration,
            shape: Shape::Cosinusoidal,
        })
    }

    /// Piecewise-linear profile through `samples` on a uniform grid over
    /// `[0, T]`, rescaled so that it integrates to `π`.
    pub fn tabulated(duration: S, samples: Vec<S>) -> Result<Self> {
        check_duration(duration)?;
        if samples.len() < 2 {
            return Err(Error::TooFewSamples(samples.len()));
        }
        for (index, &value) in samples.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite("tabulated sample"));
            }
            if value < S::zero() {
                return Err(Error::NegativeSample {
                    index,
                    value: value.as_f64(),
                });
            }
        }
        let integral = trapezoid(&samples, duration);
        if integral <= S::zero() {
            return Err(Error::ZeroProfile);
        }
        let rescale = S::PI() / integral;
        Ok(Self {
            duration,
            shape: Shape::Tabulated { samples, rescale },
        })
    }

    /// Builds a profile of the given family; `samples` is required for
    /// [`ProfileFamily::Tabulated`] and ignored otherwise.
    pub fn make(family: ProfileFamily, duration: S, samples: Option<&[S]>) -> Result<Self> {
        match family {
            ProfileFamily::Flat => Self::flat(duration),
            ProfileFamily::Sinusoidal => Self::sinusoidal(duration),
            ProfileFamily::Cosinusoidal => Self::cosinusoidal(duration),
            ProfileFamily::Tabulated => Self::tabulated(duration, samples.map(<[S]>::to_vec).unwrap_or_default()),
        }
    }

    /// Same shape stretched to a new interrogation time, renormalized.
    pub fn with_duration(&self, duration: S) -> Result<Self> {
        match &self.shape {
            Shape::Tabulated { samples, .. } => Self::tabulated(duration, samples.clone()),
            _ => Self::make(self.family(), duration, None),
        }
    }

    pub fn family(&self) -> ProfileFamily {
        match self.shape {
            Shape::Flat => ProfileFamily::Flat,
            Shape::Sinusoidal => ProfileFamily::Sinusoidal,
            Shape::Cosinusoidal => ProfileFamily::Cosinusoidal,
            Shape::Tabulated { .. } => ProfileFamily::Tabulated,
        }
    }

    pub fn duration(&self) -> S {
        self.duration
    }

    /// Normalization factor applied to tabulated input; `None` for analytic families.
    pub fn rescale_factor(&self) -> Option<S> {
        match self.shape {
            Shape::Tabulated { rescale, .. } => Some(rescale),
            _ => None,
        }
    }

    /// Raw tabulated samples (before rescaling).
    pub fn samples(&self) -> Option<&[S]> {
        match &self.shape {
            Shape::Tabulated { samples, .. } => Some(samples),
            _ => None,
        }
    }

    /// `ω_P(t)` inside `[0, T]`, zero outside.
    pub fn eval(&self, t: S) -> S {
        let big_t = self.duration;
        if !(t >= S::zero() && t <= big_t) {
            return S::zero();
        }
        let pi = S::PI();
        match &self.shape {
            Shape::Flat => pi / big_t,
            Shape::Sinusoidal => pi * pi * (S::TAU() * t / big_t).sin().abs() / (S::two() * big_t),
            Shape::Cosinusoidal => pi / big_t * (S::one() - (S::TAU() * t / big_t).cos()),
            Shape::Tabulated { samples, rescale } => {
                let intervals = samples.len() - 1;
                let x = t / big_t * S::from_count(intervals);
                let k = x.floor().to_usize().unwrap_or(0).min(intervals - 1);
                let frac = x - S::from_count(k);
                (samples[k] + (samples[k + 1] - samples[k]) * frac) * *rescale
            }
        }
    }

    /// Interior points where `ω_P` has a derivative discontinuity.
    pub fn breakpoints(&self) -> Vec<S> {
        match &self.shape {
            Shape::Sinusoidal => vec![self.duration / S::two()],
            Shape::Tabulated { samples, .. } => {
                let intervals = samples.len() - 1;
                (1..intervals)
                    .map(|k| self.duration * S::from_count(k) / S::from_count(intervals))
                    .collect()
            }
            _ => Vec::new(),
        }
    }
}

fn trapezoid<S: Scalar>(samples: &[S], duration: S) -> S {
    let n = samples.len();
    let h = duration / S::from_count(n - 1);
    let inner = samples[1..n - 1].iter().fold(S::zero(), |acc, &v| acc + v);
    h * (inner + (samples[0] + samples[n - 1]) / S::two())
}

/// Interferometer arm. `Up` (η = 0) co-sweeps with `+ω_P`, `Down` (η = 1)
/// counter-sweeps with `−ω_P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Up,
    Down,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Up, Branch::Down];

    /// η
    pub fn index(self) -> usize {
        match self {
            Branch::Up => 0,
            Branch::Down => 1,
        }
    }

    /// `1 − 2η`
    pub fn sign<S: Scalar>(self) -> S {
        match self {
            Branch::Up => S::one(),
            Branch::Down => -S::one(),
        }
    }
}

/// `λ_η(t) = √(mħω₀/2)·r·[Ω + (1 − 2η)ω_P(t)]`.
pub fn lambda_drive<S: Scalar>(config: &TrapConfig<S>, profile: &SweepProfile<S>, branch: Branch, t: S) -> S {
    config.drive_scale() * (config.rotation() + branch.sign::<S>() * profile.eval(t))
}
