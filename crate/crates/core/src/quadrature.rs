//! Adaptive Gauss-Kronrod quadrature and fixed Gauss-Legendre rules.
//!
//! The adaptive integrator uses the 10/21-point Gauss-Kronrod pair with
//! QUADPACK-style error rescaling and global bisection of the interval with
//! the largest error. Known kinks (breakpoints) seed the initial partition so
//! no panel straddles a derivative discontinuity.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tolerance;

/// Values that can be integrated: real scalars and complex numbers.
pub trait QuadValue<S: Scalar>:
    Copy + Zero + Add<Output = Self> + Sub<Output = Self> + Mul<S, Output = Self>
{
    fn magnitude(self) -> S;
}

impl<S: Scalar> QuadValue<S> for S {
    fn magnitude(self) -> S {
        self.abs()
    }
}

impl<S: Scalar> QuadValue<S> for Complex<S> {
    fn magnitude(self) -> S {
        self.norm()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Tolerance<S> {
    pub absolute: S,
    pub relative: S,
    pub max_subdivisions: usize,
}

impl<S: Scalar> Default for Tolerance<S> {
    fn default() -> Self {
        Self {
            absolute: S::lit(tolerance::QUADRATURE_ABS),
            relative: S::zero(),
            max_subdivisions: tolerance::QUADRATURE_MAX_SUBDIVISIONS,
        }
    }
}

impl<S: Scalar> Tolerance<S> {
    pub fn absolute(absolute: S) -> Self {
        Self {
            absolute,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Estimate<V, S> {
    pub value: V,
    pub error: S,
    pub subdivisions: usize,
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

struct Panel<V, S> {
    a: S,
    b: S,
    value: V,
    error: S,
    /// Error estimate is at the roundoff floor; bisecting cannot help.
    resolved: bool,
}

fn gk21<S, V, F>(f: &mut F, a: S, b: S) -> Panel<V, S>
where
    S: Scalar,
    V: QuadValue<S>,
    F: FnMut(S) -> V,
{
    let center = S::half() * (a + b);
    let half = S::half() * (b - a);
    let abs_half = half.abs();

    let f_center = f(center);
    let mut res_k = f_center * S::lit(WGK[10]);
    let mut res_g = V::zero();
    let mut res_abs = f_center.magnitude() * S::lit(WGK[10]);
    let mut fv1 = [V::zero(); 10];
    let mut fv2 = [V::zero(); 10];

    for j in 0..10 {
        let x = half * S::lit(XGK[j]);
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k = res_k + (f1 + f2) * S::lit(WGK[j]);
        res_abs = res_abs + (f1.magnitude() + f2.magnitude()) * S::lit(WGK[j]);
        if j % 2 == 1 {
            res_g = res_g + (f1 + f2) * S::lit(WG[j / 2]);
        }
    }

    let mean = res_k * S::half();
    let mut res_asc = (f_center - mean).magnitude() * S::lit(WGK[10]);
    for j in 0..10 {
        res_asc = res_asc + ((fv1[j] - mean).magnitude() + (fv2[j] - mean).magnitude()) * S::lit(WGK[j]);
    }

    let value = res_k * half;
    res_abs = res_abs * abs_half;
    res_asc = res_asc * abs_half;

    let mut error = ((res_k - res_g) * half).magnitude();
    if res_asc > S::zero() && error > S::zero() {
        let scale = (S::lit(200.0) * error / res_asc).powf(S::lit(1.5));
        error = if scale < S::one() { res_asc * scale } else { res_asc };
    }
    let floor = S::lit(50.0) * S::epsilon() * res_abs;
    let resolved = error <= floor || abs_half <= S::lit(100.0) * S::epsilon() * center.abs().max(S::one());
    Panel {
        a,
        b,
        value,
        error: error.max(floor),
        resolved,
    }
}

/// Integrates `f` over `[a, b]`, splitting first at every breakpoint strictly
/// inside the interval.
pub fn integrate<S, V, F>(mut f: F, a: S, b: S, breakpoints: &[S], tol: &Tolerance<S>) -> Result<Estimate<V, S>>
where
    S: Scalar,
    V: QuadValue<S>,
    F: FnMut(S) -> V,
{
    if a == b {
        return Ok(Estimate {
            value: V::zero(),
            error: S::zero(),
            subdivisions: 0,
        });
    }
    if b < a {
        let est = integrate(f, b, a, breakpoints, tol)?;
        return Ok(Estimate {
            value: est.value * -S::one(),
            ..est
        });
    }

    let mut cuts: Vec<S> = breakpoints.iter().copied().filter(|&x| x > a && x < b).collect();
    cuts.sort_by(|x, y| x.partial_cmp(y).expect("finite breakpoints"));
    cuts.dedup();

    let mut panels = Vec::with_capacity(cuts.len() + 16);
    let mut left = a;
    for &c in cuts.iter().chain(std::iter::once(&b)) {
        panels.push(gk21(&mut f, left, c));
        left = c;
    }

    let mut subdivisions = 0;
    loop {
        let total = panels.iter().fold(V::zero(), |acc, p| acc + p.value);
        let active: S = panels
            .iter()
            .filter(|p| !p.resolved)
            .fold(S::zero(), |acc, p| acc + p.error);
        let target = tol.absolute.max(tol.relative * total.magnitude());
        if active <= target {
            let error = panels.iter().fold(S::zero(), |acc, p| acc + p.error);
            return Ok(Estimate {
                value: total,
                error,
                subdivisions,
            });
        }
        if subdivisions >= tol.max_subdivisions {
            return Err(Error::QuadratureNonConvergence {
                tolerance: target.as_f64(),
                estimate: active.as_f64(),
                subdivisions,
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.resolved)
            .max_by(|(_, p), (_, q)| p.error.partial_cmp(&q.error).unwrap_or(std::cmp::Ordering::Equal))
            .map(|(i, _)| i)
            .expect("unresolved panel exists while above tolerance");
        let p = panels.swap_remove(worst);
        let mid = S::half() * (p.a + p.b);
        panels.push(gk21(&mut f, p.a, mid));
        panels.push(gk21(&mut f, mid, p.b));
        subdivisions += 1;
    }
}

/// Fixed `n`-point Gauss-Legendre rule on `[-1, 1]` as `(node, weight)` pairs,
/// nodes in increasing order.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1, "rule needs at least one node");
    let mut rule = vec![(0.0, 0.0); n];
    let m = (n + 1) / 2;
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule[i] = (-x, w);
        rule[n - 1 - i] = (x, w);
    }
    rule
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_exactness_of_gauss_legendre() {
        let rule = gauss_legendre(8);
        let wsum: f64 = rule.iter().map(|&(_, w)| w).sum();
        assert!((wsum - 2.0).abs() < 1e-14);
        // degree 14 monomial: ∫x^14 = 2/15
        let m: f64 = rule.iter().map(|&(x, w)| w * x.powi(14)).sum();
        assert!((m - 2.0 / 15.0).abs() < 1e-14);
        for pair in rule.windows(2) {
            assert!(pair[0].0 < pair[1].0);
        }
    }

    #[test]
    fn smooth_integrals() {
        let tol = Tolerance::absolute(1e-12);
        let est = integrate(|x: f64| x.exp(), 0.0, 1.0, &[], &tol).unwrap();
        assert!((est.value - (1f64.exp() - 1.0)).abs() < 1e-13);
        let est = integrate(|x: f64| (20.0 * x).sin(), 0.0, 2.0 * PI, &[], &tol).unwrap();
        assert!(est.value.abs() < 1e-12);
    }

    #[test]
    fn kink_with_breakpoint() {
        let tol = Tolerance::absolute(1e-12);
        let est = integrate(|x: f64| (x - 0.3).abs(), 0.0, 1.0, &[0.3], &tol).unwrap();
        assert!((est.value - (0.045 + 0.245)).abs() < 1e-14);
        assert_eq!(est.subdivisions, 0);
    }

    #[test]
    fn complex_integrand() {
        let tol = Tolerance::absolute(1e-12);
        let est = integrate(|t: f64| Complex::new(0.0, t).exp(), 0.0, PI, &[], &tol).unwrap();
        assert!((est.value - Complex::new(0.0, 2.0)).norm() < 1e-13);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let tol = Tolerance::default();
        let est = integrate(|x: f64| x * x, 1.0, 0.0, &[], &tol).unwrap();
        assert!((est.value + 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let tol = Tolerance {
            absolute: 1e-14,
            relative: 0.0,
            max_subdivisions: 3,
        };
        let err = integrate(|x: f64| (1.0 / (x + 1e-9)).sin(), 0.0, 1.0, &[], &tol).unwrap_err();
        assert!(matches!(err, Error::QuadratureNonConvergence { .. }));
    }

    #[test]
    fn single_precision_converges_to_roundoff_floor() {
        let est = integrate(|x: f32| x.cos(), 0.0f32, 1.0, &[], &Tolerance::default()).unwrap();
        assert!((est.value - 1f32.sin()).abs() < 1e-6);
    }
}
