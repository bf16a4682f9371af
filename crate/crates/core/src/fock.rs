//! Brute-force propagation of the trap mode in a truncated number-state
//! basis. Used to validate the closed-form evolution and the readout.
//!
//! Each step holds the Hamiltonian at its midpoint value and applies
//! `exp(−iHΔt/ħ)` to the state by a Taylor series on the sparse generator.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::evolution::Drive;
use crate::interferometer::readout;
use crate::model::{Branch, SweepProfile, TrapConfig};
use crate::scalar::{wrap_angle, Scalar};
use crate::tolerance;

/// Trap-mode state of one spin branch, `Σₙ cₙ|n⟩` for `n < N_max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FockState<S> {
    pub time: S,
    pub amplitudes: Vec<Complex<S>>,
}

impl<S: Scalar> FockState<S> {
    pub fn vacuum(n_max: usize) -> Self {
        let mut amplitudes = vec![Complex::new(S::zero(), S::zero()); n_max];
        amplitudes[0] = Complex::new(S::one(), S::zero());
        Self { time: S::zero(), amplitudes }
    }

    /// Truncated coherent state `|α⟩`.
    pub fn coherent(alpha: Complex<S>, n_max: usize) -> Self {
        let mut amplitudes = Vec::with_capacity(n_max);
        let mut c = Complex::from((-alpha.norm_sqr() / S::two()).exp());
        for n in 0..n_max {
            amplitudes.push(c);
            c = c * alpha / S::from_count(n + 1).sqrt();
        }
        Self { time: S::zero(), amplitudes }
    }

    pub fn n_max(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> S {
        norm(&self.amplitudes)
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &Self) -> Complex<S> {
        inner(&self.amplitudes, &other.amplitudes)
    }

    /// `⟨a⟩`
    pub fn mean_annihilation(&self) -> Complex<S> {
        let c = &self.amplitudes;
        (1..c.len()).fold(Complex::new(S::zero(), S::zero()), |acc, n| {
            acc + c[n - 1].conj() * c[n] * S::from_count(n).sqrt()
        })
    }

    pub fn vacuum_amplitude(&self) -> Complex<S> {
        self.amplitudes[0]
    }

    pub fn tail_mass(&self) -> S {
        tail_mass(&self.amplitudes)
    }
}

/// Both spin components in one vector: `|↑⟩⊗ψ₀ ⊕ |↓⟩⊗ψ₁`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpinFockState<S> {
    pub time: S,
    pub amplitudes: Vec<Complex<S>>,
}

impl<S: Scalar> SpinFockState<S> {
    pub fn product(spin: [Complex<S>; 2], n_max: usize) -> Self {
        let mut amplitudes = vec![Complex::new(S::zero(), S::zero()); 2 * n_max];
        amplitudes[0] = spin[0];
        amplitudes[n_max] = spin[1];
        Self { time: S::zero(), amplitudes }
    }

    pub fn n_max(&self) -> usize {
        self.amplitudes.len() / 2
    }

    pub fn norm(&self) -> S {
        norm(&self.amplitudes)
    }

    /// Unnormalized trap-mode component `⟨η|Ψ⟩`.
    pub fn component(&self, branch: Branch) -> FockState<S> {
        let n = self.n_max();
        let start = branch.index() * n;
        FockState {
            time: self.time,
            amplitudes: self.amplitudes[start..start + n].to_vec(),
        }
    }
}

fn norm<S: Scalar>(v: &[Complex<S>]) -> S {
    v.iter().fold(S::zero(), |acc, c| acc + c.norm_sqr()).sqrt()
}

fn inner<S: Scalar>(a: &[Complex<S>], b: &[Complex<S>]) -> Complex<S> {
    a.iter()
        .zip(b)
        .fold(Complex::new(S::zero(), S::zero()), |acc, (x, y)| acc + x.conj() * y)
}

/// Population of the top tenth of the levels (at least one level).
fn tail_mass<S: Scalar>(v: &[Complex<S>]) -> S {
    let n = v.len();
    let width = n.div_ceil(10).max(1);
    v[n - width..].iter().fold(S::zero(), |acc, c| acc + c.norm_sqr())
}

/// Sparse Hermitian `H/ħ` as a list of `(row, column, value)`.
struct Generator<S> {
    dim: usize,
    entries: Vec<(usize, usize, Complex<S>)>,
}

impl<S: Scalar> Generator<S> {
    fn new(dim: usize) -> Self {
        Self { dim, entries: Vec::new() }
    }

    /// Adds `ω₀(n+½) + i g (a − a†)` on the block starting at `offset`.
    fn add_oscillator(&mut self, offset: usize, n_max: usize, omega0: S, g: S) {
        for n in 0..n_max {
            let e = omega0 * (S::from_count(n) + S::half());
            self.entries.push((offset + n, offset + n, Complex::from(e)));
            if n > 0 {
                let s = g * S::from_count(n).sqrt();
                self.entries.push((offset + n - 1, offset + n, Complex::new(S::zero(), s)));
                self.entries.push((offset + n, offset + n - 1, Complex::new(S::zero(), -s)));
            }
        }
    }

    fn apply(&self, v: &[Complex<S>], out: &mut [Complex<S>]) {
        out.iter_mut().for_each(|x| *x = Complex::new(S::zero(), S::zero()));
        for &(i, j, h) in &self.entries {
            out[i] = out[i] + h * v[j];
        }
    }

    fn row_norm(&self) -> S {
        let mut rows = vec![S::zero(); self.dim];
        for &(i, _, h) in &self.entries {
            rows[i] = rows[i] + h.norm();
        }
        rows.into_iter().fold(S::zero(), S::max)
    }

    /// `v ← exp(−i H dt) v`.
    fn exp_action(&self, dt: S, v: &mut Vec<Complex<S>>) {
        let scaled = self.row_norm() * dt.abs();
        let pieces = (scaled / S::half()).ceil().to_usize().unwrap_or(1).max(1);
        let h = dt / S::from_count(pieces);
        let mut term = vec![Complex::new(S::zero(), S::zero()); self.dim];
        let mut next = term.clone();
        for _ in 0..pieces {
            term.copy_from_slice(v);
            for k in 1..=40 {
                self.apply(&term, &mut next);
                let factor = Complex::new(S::zero(), -h / S::from_count(k));
                let mut size = S::zero();
                for (t, n) in term.iter_mut().zip(&next) {
                    *t = *n * factor;
                    size = size + t.norm_sqr();
                }
                for (x, t) in v.iter_mut().zip(&term) {
                    *x = *x + *t;
                }
                if size.sqrt() <= S::epsilon() * S::lit(1e-2) {
                    break;
                }
            }
        }
    }
}

fn check_sizes(n_max: usize, steps: usize) -> Result<()> {
    if n_max < tolerance::MIN_FOCK_LEVELS {
        return Err(Error::InsufficientResolution {
            requested: n_max,
            minimum: tolerance::MIN_FOCK_LEVELS,
        });
    }
    if steps < tolerance::MIN_FOCK_STEPS {
        return Err(Error::InsufficientResolution {
            requested: steps,
            minimum: tolerance::MIN_FOCK_STEPS,
        });
    }
    Ok(())
}

/// Midpoint-rule propagation of a state of dimension `blocks × n_max` from 0
/// to `t_end`, with block `k` driven at rate `rates(k, t)`.
fn propagate<S: Scalar>(
    mut v: Vec<Complex<S>>,
    n_max: usize,
    omega0: S,
    t_end: S,
    steps: usize,
    rates: impl Fn(usize, S) -> S,
) -> Result<Vec<Complex<S>>> {
    let blocks = v.len() / n_max;
    let h = t_end / S::from_count(steps);
    for k in 0..steps {
        let mid = h * (S::from_count(k) + S::half());
        let mut gen = Generator::new(v.len());
        for b in 0..blocks {
            gen.add_oscillator(b * n_max, n_max, omega0, rates(b, mid));
        }
        gen.exp_action(h, &mut v);
        for b in 0..blocks {
            let tail = tail_mass(&v[b * n_max..(b + 1) * n_max]);
            if tail > S::lit(tolerance::FOCK_TAIL_MASS) {
                return Err(Error::TruncationInsufficient {
                    n_max,
                    tail_mass: tail.as_f64(),
                    time: (h * S::from_count(k + 1)).as_f64(),
                });
            }
        }
    }
    Ok(v)
}

fn check_time<S: Scalar>(profile: &SweepProfile<S>, t: S) -> Result<()> {
    if !(t >= S::zero() && t <= profile.duration()) {
        return Err(Error::TimeOutOfRange {
            time: t.as_f64(),
            duration: profile.duration().as_f64(),
        });
    }
    Ok(())
}

/// Propagates one branch from the vacuum to time `t` with a fixed number of
/// steps and no step-size check.
pub fn propagate_branch<S: Scalar>(
    config: &TrapConfig<S>,
    profile: &SweepProfile<S>,
    branch: Branch,
    n_max: usize,
    steps: usize,
    t: S,
) -> Result<FockState<S>> {
    check_sizes(n_max, steps)?;
    check_time(profile, t)?;
    let drive = Drive::new(config, profile, branch);
    let v = propagate(FockState::vacuum(n_max).amplitudes, n_max, config.omega0(), t, steps, |_, s| drive.rate(s))?;
    Ok(FockState { time: t, amplitudes: v })
}

/// As [`propagate_branch`], and fails if halving the step changes the state
/// by more than the step-error tolerance.
pub fn evolve_fock_to<S: Scalar>(
    config: &TrapConfig<S>,
    profile: &SweepProfile<S>,
    branch: Branch,
    n_max: usize,
    steps: usize,
    t: S,
) -> Result<FockState<S>> {
    let coarse = propagate_branch(config, profile, branch, n_max, steps, t)?;
    let fine = propagate_branch(config, profile, branch, n_max, 2 * steps, t)?;
    // Second order: the coarse error is about 4/3 of the coarse-fine gap.
    let gap: Vec<_> = coarse.amplitudes.iter().zip(&fine.amplitudes).map(|(a, b)| a - b).collect();
    let estimate = norm(&gap) * S::lit(4.0 / 3.0);
    if estimate > S::lit(tolerance::FOCK_STEP_ERROR) {
        return Err(Error::StepCountInsufficient {
            steps,
            estimate: estimate.as_f64(),
            tolerance: tolerance::FOCK_STEP_ERROR,
        });
    }
    Ok(coarse)
}

pub fn evolve_fock<S: Scalar>(
    config: &TrapConfig<S>,
    profile: &SweepProfile<S>,
    branch: Branch,
    n_max: usize,
    steps: usize,
) -> Result<FockState<S>> {
    evolve_fock_to(config, profile, branch, n_max, steps, profile.duration())
}

/// Propagates a spin-superposition input under the full two-component
/// Hamiltonian `Π₀H₀ + Π₁H₁` as one vector of dimension `2·N_max`.
pub fn evolve_spin_fock<S: Scalar>(
    config: &TrapConfig<S>,
    profile: &SweepProfile<S>,
    spin: [Complex<S>; 2],
    n_max: usize,
    steps: usize,
) -> Result<SpinFockState<S>> {
    check_sizes(n_max, steps)?;
    let drives = Branch::BOTH.map(|b| Drive::new(config, profile, b));
    let v = propagate(
        SpinFockState::product(spin, n_max).amplitudes,
        n_max,
        config.omega0(),
        profile.duration(),
        steps,
        |b, s| drives[b].rate(s),
    )?;
    Ok(SpinFockState {
        time: profile.duration(),
        amplitudes: v,
    })
}

/// `C₁,₀ = ⟨ψ₁(T)|ψ₀(T)⟩` in the truncated basis.
pub fn coherence_fock<S: Scalar>(config: &TrapConfig<S>, profile: &SweepProfile<S>, n_max: usize, steps: usize) -> Result<Complex<S>> {
    let up = evolve_fock(config, profile, Branch::Up, n_max, steps)?;
    let down = evolve_fock(config, profile, Branch::Down, n_max, steps)?;
    Ok(down.inner(&up))
}

/// Closed-form readout against the truncated-basis oracle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleComparison<S> {
    pub contrast_closed: S,
    pub contrast_fock: S,
    /// Unwrapped closed-form phase.
    pub phase_closed: S,
    /// Principal value of `arg C₁,₀` from the oracle.
    pub phase_fock: S,
    pub contrast_error: S,
    /// `|φ_fock − φ_closed|` reduced mod 2π.
    pub phase_error: S,
    /// Largest `|‖ψ_η‖ − 1|` over both branches.
    pub norm_drift: S,
}

impl<S: Scalar> OracleComparison<S> {
    pub fn passes(&self, tol: S) -> bool {
        self.contrast_error <= tol && self.phase_error <= tol
    }
}

/// Angle between two phases modulo 2π.
pub fn phase_distance<S: Scalar>(a: S, b: S) -> S {
    wrap_angle(a - b).abs()
}

pub fn compare_with_closed_form<S: Scalar>(
    config: &TrapConfig<S>,
    profile: &SweepProfile<S>,
    n_max: usize,
    steps: usize,
) -> Result<OracleComparison<S>> {
    let r = readout(config, profile)?;
    let up = evolve_fock(config, profile, Branch::Up, n_max, steps)?;
    let down = evolve_fock(config, profile, Branch::Down, n_max, steps)?;
    let c = down.inner(&up);
    let norm_drift = (up.norm() - S::one()).abs().max((down.norm() - S::one()).abs());
    Ok(OracleComparison {
        contrast_closed: r.contrast,
        contrast_fock: c.norm(),
        phase_closed: r.phase,
        phase_fock: c.arg(),
        contrast_error: (c.norm() - r.contrast).abs(),
        phase_error: phase_distance(c.arg(), r.phase),
        norm_drift,
    })
}
