//! Fourier spectrum of the zero-extended sweep profile,
//! `W(ω) = (2π)^{-1/2} ∫ ω_P(t) e^{-iωt} dt`.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{ProfileFamily, SweepProfile};
use crate::quadrature::{integrate, Tolerance};
use crate::scalar::{sinc, Scalar};
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumMethod {
    ClosedForm,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumValue<S> {
    pub frequency: S,
    pub value: Complex<S>,
    pub method: SpectrumMethod,
}

fn inv_sqrt_tau<S: Scalar>() -> S {
    S::one() / S::TAU().sqrt()
}

fn sqrt_half_pi<S: Scalar>() -> S {
    (S::PI() / S::two()).sqrt()
}

/// Spectrum by adaptive quadrature of the defining integral.
pub fn spectrum_numeric<S: Scalar>(profile: &SweepProfile<S>, omega: S) -> Result<SpectrumValue<S>> {
    spectrum_numeric_with(profile, omega, &Tolerance::default())
}

pub fn spectrum_numeric_with<S: Scalar>(
    profile: &SweepProfile<S>,
    omega: S,
    tol: &Tolerance<S>,
) -> Result<SpectrumValue<S>> {
    let est = integrate(
        |t: S| Complex::from_polar(profile.eval(t), -omega * t),
        S::zero(),
        profile.duration(),
        &profile.breakpoints(),
        tol,
    )?;
    Ok(SpectrumValue {
        frequency: omega,
        value: est.value * inv_sqrt_tau::<S>(),
        method: SpectrumMethod::Quadrature,
    })
}

/// `∂_ω Re W(ω)` from the moment integral `−(2π)^{-1/2} ∫ τ ω_P(τ) sin(ωτ) dτ`.
pub fn spectrum_derivative<S: Scalar>(profile: &SweepProfile<S>, omega: S) -> Result<S> {
    let est = integrate(
        |t: S| t * profile.eval(t) * (omega * t).sin(),
        S::zero(),
        profile.duration(),
        &profile.breakpoints(),
        &Tolerance::default(),
    )?;
    Ok(-est.value * inv_sqrt_tau::<S>())
}

/// Closed-form spectrum of an analytic family of interrogation time `duration`.
pub fn spectrum_closed_form<S: Scalar>(family: ProfileFamily, duration: S, omega: S) -> Result<SpectrumValue<S>> {
    if duration <= S::zero() {
        return Err(Error::NonPositiveDuration(duration.as_f64()));
    }
    let x = (omega * duration).abs();
    let value = match family {
        ProfileFamily::Flat => flat(x),
        ProfileFamily::Sinusoidal => sinusoidal(x),
        ProfileFamily::Cosinusoidal => cosinusoidal(x),
        ProfileFamily::Tabulated => return Err(Error::UnsupportedFamily(family)),
    };
    // ω_P is real, so W(−ω) = W(ω)*.
    let value = if omega < S::zero() { value.conj() } else { value };
    Ok(SpectrumValue {
        frequency: omega,
        value,
        method: SpectrumMethod::ClosedForm,
    })
}

/// Closed form when the family has one, quadrature otherwise.
pub fn spectrum<S: Scalar>(profile: &SweepProfile<S>, omega: S) -> Result<SpectrumValue<S>> {
    match profile.family() {
        ProfileFamily::Tabulated => spectrum_numeric(profile, omega),
        family => spectrum_closed_form(family, profile.duration(), omega),
    }
}

// The helpers below take x = ωT ≥ 0.

fn flat<S: Scalar>(x: S) -> Complex<S> {
    let a = sqrt_half_pi::<S>();
    let s = sinc(x / S::two());
    Complex::new(a * sinc(x), -a * x / S::two() * s * s)
}

fn near_two_pi<S: Scalar>(x: S) -> Option<(S, S)> {
    let eps = x - S::TAU();
    if eps.abs() < S::lit(tolerance::SPECTRUM_GUARD_BAND) {
        // d = 1 + x/2π
        Some((eps, S::two() + eps / S::TAU()))
    } else {
        None
    }
}

fn cosinusoidal<S: Scalar>(x: S) -> Complex<S> {
    let a = sqrt_half_pi::<S>();
    let pi = S::PI();
    if let Some((eps, d)) = near_two_pi(x) {
        let s = sinc(eps / S::two());
        return Complex::new(-a * S::TAU() * sinc(eps) / (x * d), a * pi * eps * s * s / (x * d));
    }
    let den = S::one() - (x / S::TAU()).powi(2);
    let s = sinc(x / S::two());
    Complex::new(a * sinc(x) / den, -a * x / S::two() * s * s / den)
}

fn sinusoidal<S: Scalar>(x: S) -> Complex<S> {
    let a = sqrt_half_pi::<S>();
    if let Some((eps, d)) = near_two_pi(x) {
        let q = eps / S::lit(4.0);
        let s = sinc(q);
        let re = a * S::TAU() * (eps / S::two()).cos() * eps * s * s / (S::lit(16.0) * d);
        let im = -(S::TAU()).sqrt() * S::TAU() * q.cos() * eps * eps * s * s * s / (S::lit(64.0) * d);
        return Complex::new(re, im);
    }
    let den = S::one() - (x / S::TAU()).powi(2);
    let c = (x / S::lit(4.0)).cos();
    let re = a * c * c * (x / S::two()).cos() / den;
    let im = -(S::TAU()).sqrt() * c * c * c * (x / S::lit(4.0)).sin() / den;
    Complex::new(re, im)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn zero_frequency_is_normalization() {
        let expected = (PI / 2.0).sqrt();
        for p in [
            SweepProfile::flat(3.0).unwrap(),
            SweepProfile::sinusoidal(TAU).unwrap(),
            SweepProfile::tabulated(5.0, vec![0.0, 2.0, 1.0, 0.5]).unwrap(),
        ] {
            let v = spectrum_numeric(&p, 0.0).unwrap().value;
            assert!((v.re - expected).abs() < 1e-12 && v.im.abs() < 1e-15);
        }
        for family in [ProfileFamily::Flat, ProfileFamily::Sinusoidal, ProfileFamily::Cosinusoidal] {
            let v = spectrum_closed_form(family, 2.5, 0.0).unwrap().value;
            assert!((v.re - expected).abs() < 1e-15 && v.im.abs() < 1e-15);
        }
    }

    #[test]
    fn flat_examples() {
        let p = SweepProfile::flat(TAU).unwrap();
        let v = spectrum_numeric(&p, 1.0).unwrap().value;
        assert!(v.norm() < 1e-12);
        let v = spectrum_closed_form(ProfileFamily::Flat, TAU, 0.5).unwrap().value;
        assert!(v.re.abs() < 1e-15);
        assert!((v.im + (2.0 / PI).sqrt()).abs() < 1e-15);
        let q = spectrum_numeric(&p, 0.5).unwrap().value;
        assert!((q - v).norm() < 1e-12);
        for k in 1..=3 {
            let v = spectrum_closed_form(ProfileFamily::Flat, k as f64 * TAU, 1.0).unwrap().value;
            assert!(v.norm() < 1e-15, "K={k}: {v}");
        }
    }

    #[test]
    fn removable_singularities() {
        let cos_limit = spectrum_closed_form(ProfileFamily::Cosinusoidal, TAU, 1.0).unwrap().value;
        assert!((cos_limit.re + (PI / 2.0).sqrt() / 2.0).abs() < 1e-15);
        assert!(cos_limit.im.abs() < 1e-15);
        let quad = spectrum_numeric(&SweepProfile::cosinusoidal(TAU).unwrap(), 1.0).unwrap().value;
        assert!((quad - cos_limit).norm() < 1e-12);

        let sin_zero = spectrum_closed_form(ProfileFamily::Sinusoidal, TAU, 1.0).unwrap().value;
        assert!(sin_zero.norm() < 1e-15);
        let quad = spectrum_numeric(&SweepProfile::sinusoidal(TAU).unwrap(), 1.0).unwrap().value;
        assert!(quad.norm() < 1e-12);
    }

    #[test]
    fn continuous_across_guard_band() {
        let band = tolerance::SPECTRUM_GUARD_BAND;
        for family in [ProfileFamily::Sinusoidal, ProfileFamily::Cosinusoidal] {
            for edge in [TAU - band, TAU + band] {
                let inside = spectrum_closed_form(family, 1.0, edge + 1e-13 * (TAU - edge).signum()).unwrap();
                let outside = spectrum_closed_form(family, 1.0, edge - 1e-13 * (TAU - edge).signum()).unwrap();
                assert!((inside.value - outside.value).norm() < 1e-12, "{family:?} at {edge}");
            }
        }
    }

    #[test]
    fn conjugate_symmetry_of_closed_forms() {
        for family in [ProfileFamily::Flat, ProfileFamily::Sinusoidal, ProfileFamily::Cosinusoidal] {
            let a = spectrum_closed_form(family, 3.7, 1.3).unwrap().value;
            let b = spectrum_closed_form(family, 3.7, -1.3).unwrap().value;
            assert_eq!(a.conj(), b);
        }
    }

    #[test]
    fn tabulated_has_no_closed_form() {
        assert_eq!(
            spectrum_closed_form(ProfileFamily::Tabulated, 1.0, 1.0).unwrap_err(),
            Error::UnsupportedFamily(ProfileFamily::Tabulated)
        );
    }

    #[test]
    fn derivative_examples() {
        let d = spectrum_derivative(&SweepProfile::flat(TAU).unwrap(), 1.0).unwrap();
        assert!((d - (PI / 2.0).sqrt()).abs() < 1e-12);
        let d = spectrum_derivative(&SweepProfile::sinusoidal(TAU).unwrap(), 1.0).unwrap();
        assert!((d - (PI / 2.0).sqrt() * PI * PI / 8.0).abs() < 1e-12);
        let d = spectrum_derivative(&SweepProfile::cosinusoidal(2.0 * TAU).unwrap(), 1.0).unwrap();
        assert!((d + (PI / 2.0).sqrt() / 3.0).abs() < 1e-12);
    }
}
