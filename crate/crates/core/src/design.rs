//! Interrogation times at which a sweep profile gives unit contrast,
//! `φ_I = φ_S` and a saturated quantum Cramér-Rao bound.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{decompose, PhaseDecomposition};
use crate::interferometer::{interferometer_phase_closed, sagnac_phase};
use crate::model::{ProfileFamily, SweepProfile, TrapConfig};
use crate::scalar::Scalar;
use crate::sensitivity::trap_periods;
use crate::spectrum::{spectrum, spectrum_numeric};
use crate::tolerance;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchemeSpec<S> {
    pub family: ProfileFamily,
    /// `K`, `L` or `M` depending on the family.
    pub index: Option<u32>,
    pub duration: S,
    pub config: TrapConfig<S>,
    pub profile: SweepProfile<S>,
    /// `W(ω₀)` by quadrature.
    pub spectrum_at_trap: Complex<S>,
    pub interferometer_phase: S,
    pub sagnac_phase: S,
    pub spectrum_zero: bool,
    pub phase_equality: bool,
    pub qcrb_time: bool,
    pub decomposition: PhaseDecomposition<S>,
}

impl<S> SchemeSpec<S> {
    pub fn is_design_point(&self) -> bool {
        self.spectrum_zero && self.phase_equality && self.qcrb_time
    }
}

/// Checks the scheme conditions for a profile numerically.
pub fn verify_scheme<S: Scalar>(config: &TrapConfig<S>, profile: &SweepProfile<S>, index: Option<u32>) -> Result<SchemeSpec<S>> {
    let w = spectrum_numeric(profile, config.omega0())?.value;
    let phi_s = sagnac_phase(config);
    let phi_i = interferometer_phase_closed(config, profile)?;
    Ok(SchemeSpec {
        family: profile.family(),
        index,
        duration: profile.duration(),
        config: *config,
        profile: profile.clone(),
        spectrum_at_trap: w,
        interferometer_phase: phi_i,
        sagnac_phase: phi_s,
        spectrum_zero: w.norm() <= S::lit(tolerance::SPECTRUM_ZERO),
        phase_equality: (phi_i - phi_s).abs() <= S::lit(tolerance::PHASE_EQUALITY) * phi_s.abs(),
        qcrb_time: trap_periods(config, profile.duration()).is_some(),
        decomposition: decompose(config, profile)?,
    })
}

/// Interrogation time from the family rule: `ω₀T = 2Kπ` (flat, `K ≥ 1`),
/// `2(2L+1)π` (sinusoidal, `L ≥ 0`), `2Mπ` (cosinusoidal, `M ≥ 2`).
/// The returned scheme has been checked by quadrature.
pub fn design_time<S: Scalar>(family: ProfileFamily, config: &TrapConfig<S>, index: u32) -> Result<SchemeSpec<S>> {
    let periods = match family {
        ProfileFamily::Flat => index,
        ProfileFamily::Sinusoidal => 2 * index + 1,
        ProfileFamily::Cosinusoidal => index,
        ProfileFamily::Tabulated => return Err(Error::UnsupportedFamily(family)),
    };
    if periods == 0 {
        let limit = (S::PI() / S::two()).sqrt();
        return Err(Error::InvalidIndex {
            family,
            index,
            spectrum_re: limit.as_f64(),
            spectrum_im: 0.0,
        });
    }
    let duration = S::TAU() * S::from_count(periods as usize) / config.omega0();
    let profile = SweepProfile::make(family, duration, None)?;
    let w = spectrum_numeric(&profile, config.omega0())?.value;
    if w.norm() > S::lit(tolerance::SPECTRUM_ZERO) {
        return Err(Error::InvalidIndex {
            family,
            index,
            spectrum_re: w.re.as_f64(),
            spectrum_im: w.im.as_f64(),
        });
    }
    verify_scheme(config, &profile, Some(index))
}

/// Minimizes `|W(ω₀)|²` over the interrogation time within `bracket`,
/// keeping the shape of `template` (its own duration is ignored).
pub fn find_zero_time<S: Scalar>(template: &SweepProfile<S>, config: &TrapConfig<S>, bracket: (S, S)) -> Result<SchemeSpec<S>> {
    let (lower, upper) = if bracket.0 <= bracket.1 { bracket } else { (bracket.1, bracket.0) };
    if lower <= S::zero() {
        return Err(Error::NonPositiveDuration(lower.as_f64()));
    }
    let omega0 = config.omega0();
    let objective = |t: S| -> Result<S> { Ok(spectrum(&template.with_duration(t)?, omega0)?.value.norm_sqr()) };

    // Coarse scan at 32 points per trap period.
    let period = S::TAU() / omega0;
    let n = (((upper - lower) / period * S::lit(32.0)).ceil().to_usize().unwrap_or(0)).max(64);
    let grid: Vec<S> = (0..=n)
        .map(|k| lower + (upper - lower) * S::from_count(k) / S::from_count(n))
        .collect();
    let mut best = (0, S::infinity());
    for (k, &t) in grid.iter().enumerate() {
        let f = objective(t)?;
        if f < best.1 {
            best = (k, f);
        }
    }
    let mut a = grid[best.0.saturating_sub(1)];
    let mut b = grid[(best.0 + 1).min(n)];

    // Golden section.
    let ratio = (S::lit(5.0).sqrt() - S::one()) / S::two();
    let width = S::lit(tolerance::ZERO_TIME_WIDTH) * period;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (objective(c)?, objective(d)?);
    while (b - a).abs() > width {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = objective(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = objective(d)?;
        }
    }
    let (mut t, mut f) = if fc < fd { (c, fc) } else { (d, fd) };

    // Parabolic step through the final triple.
    let (fa, fb) = (objective(a)?, objective(b)?);
    let den = (t - a) * (fb - f) - (t - b) * (fa - f);
    if den != S::zero() {
        let num = (t - a).powi(2) * (fb - f) - (t - b).powi(2) * (fa - f);
        let candidate = t - num / (S::two() * den);
        if candidate > a && candidate < b {
            let fp = objective(candidate)?;
            if fp < f {
                t = candidate;
                f = fp;
            }
        }
    }

    if f > S::lit(tolerance::ZERO_TIME_RESIDUAL) {
        return Err(Error::NoZeroInBracket {
            lower: lower.as_f64(),
            upper: upper.as_f64(),
            best: f.as_f64(),
        });
    }
    verify_scheme(config, &template.with_duration(t)?, None)
}
