//! One function per subcommand. Each returns its output and whether every
//! check it performed passed.

use std::f64::consts::{PI, TAU};

use sagnac_core::fock::compare_with_closed_form;
use sagnac_core::geometry::decompose_with;
use sagnac_core::interferometer::interferometer_phase_integral;
use sagnac_core::*;

use crate::config::RunConfig;
use crate::output::{Output, Record, Table, Value};
use crate::{CliError, Command, Panel};

pub struct Outcome {
    pub output: Output,
    pub verified: bool,
}

impl From<Output> for Outcome {
    fn from(output: Output) -> Self {
        Self { output, verified: true }
    }
}

pub fn run(command: &Command, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let trap = cfg.trap_config()?;
    let profile = cfg.sweep_profile()?;
    match command {
        Command::Spectrum { .. } => spectrum_table(cfg, &profile).map(Into::into),
        Command::Trajectory { .. } => trajectory(cfg, &trap, &profile).map(Into::into),
        Command::Simulate => simulate(&trap, &profile).map(Into::into),
        Command::Decompose { .. } => decomposition(cfg, &trap, &profile).map(Into::into),
        Command::Design { .. } => design(cfg, &trap, &profile).map(Into::into),
        Command::Sensitivity => sensitivity_report(&trap, &profile).map(Into::into),
        Command::Verify { current, .. } => verify(cfg, &trap, &profile, *current),
        Command::Fig2 { panel, points } => fig2(cfg, &trap, *panel, *points).map(Into::into),
    }
}

fn trap_fields(r: &mut Record, trap: &Config, profile: &Profile) {
    r.push("mass", trap.mass());
    r.push("hbar", trap.hbar());
    r.push("omega0", trap.omega0());
    r.push("radius", trap.radius());
    r.push("rotation", trap.rotation());
    r.push("family", family_name(profile.family()));
    r.push("duration", profile.duration());
}

fn family_name(f: ProfileFamily) -> &'static str {
    match f {
        ProfileFamily::Flat => "flat",
        ProfileFamily::Sinusoidal => "sinusoidal",
        ProfileFamily::Cosinusoidal => "cosinusoidal",
        ProfileFamily::Tabulated => "tabulated",
    }
}

fn class_name(c: GeometricClass) -> &'static str {
    match c {
        GeometricClass::PureGeometric => "pure_geometric",
        GeometricClass::UnconventionalGeometric => "unconventional_geometric",
        GeometricClass::Dynamic => "dynamic",
        GeometricClass::Undefined => "undefined",
    }
}

fn branch_name(b: Branch) -> &'static str {
    match b {
        Branch::Up => "up",
        Branch::Down => "down",
    }
}

fn spectrum_table(cfg: &RunConfig, profile: &Profile) -> Result<Output, CliError> {
    let s = &cfg.spectrum;
    let mut t = Table::new(&["omega", "re", "im", "dre_domega"]);
    for k in 0..s.points {
        let omega = s.omega_min + (s.omega_max - s.omega_min) * k as f64 / (s.points - 1) as f64;
        let w = spectrum(profile, omega)?.value;
        let slope = spectrum_derivative(profile, omega)?;
        t.push(vec![omega.into(), w.re.into(), w.im.into(), slope.into()]);
    }
    Ok(Output::Table(t))
}

fn trajectory(cfg: &RunConfig, trap: &Config, profile: &Profile) -> Result<Output, CliError> {
    let up = sample_trajectory(trap, profile, Branch::Up, cfg.trajectory.intervals)?;
    let down = sample_trajectory(trap, profile, Branch::Down, cfg.trajectory.intervals)?;
    let mut t = Table::new(&["t", "re_alpha0", "im_alpha0", "re_alpha1", "im_alpha1", "phi0", "phi1"]);
    for (a, b) in up.samples().iter().zip(down.samples()) {
        t.push(vec![
            a.time.into(),
            a.alpha.re.into(),
            a.alpha.im.into(),
            b.alpha.re.into(),
            b.alpha.im.into(),
            a.phase.into(),
            b.phase.into(),
        ]);
    }
    Ok(Output::Table(t))
}

fn simulate(trap: &Config, profile: &Profile) -> Result<Output, CliError> {
    let r = readout(trap, profile)?;
    let integral = interferometer_phase_integral(trap, profile)?;
    let mut rec = Record::new();
    trap_fields(&mut rec, trap, profile);
    rec.push("delta_alpha_re", r.delta_alpha.re);
    rec.push("delta_alpha_im", r.delta_alpha.im);
    rec.push("contrast", r.contrast);
    rec.push("phase", r.phase);
    rec.push("phase_integral_form", integral);
    rec.push("principal_phase", r.principal_phase);
    rec.push("sagnac_phase", r.sagnac_phase);
    rec.push("phase_ratio", r.phase_ratio());
    rec.push("signal", r.signal);
    rec.push("sigma_y", r.sigma_y);
    Ok(Output::Record(rec))
}

fn decomposition_fields(rec: &mut Record, d: &Decomposition) {
    rec.push("interferometer_phase", d.interferometer_phase);
    rec.push("sagnac_phase", d.sagnac_phase);
    rec.push("dynamic_difference", d.dynamic_difference);
    rec.push("geometric_difference", d.geometric_difference);
    rec.push("dynamic_difference_path", d.dynamic_difference_path);
    rec.push("geometric_difference_path", d.geometric_difference_path);
    rec.push("xi", d.xi);
    rec.push("xi0", d.xi0);
    rec.push("kappa", d.kappa);
    rec.push("class", class_name(d.class));
    for b in &d.branches {
        let name = branch_name(b.branch);
        rec.push(&format!("{name}_dynamic_phase"), b.dynamic);
        rec.push(&format!("{name}_geometric_phase"), b.geometric);
    }
    rec.push("residual_angle", d.residual_angle);
    rec.push("area_difference_measure", d.area_difference_measure());
    rec.push("spectrum_re", d.spectrum_at_trap.re);
    rec.push("spectrum_im", d.spectrum_at_trap.im);
}

fn decomposition(cfg: &RunConfig, trap: &Config, profile: &Profile) -> Result<Output, CliError> {
    let intervals = cfg.decompose_intervals.unwrap_or(tolerance::DEFAULT_TRAJECTORY_SAMPLES);
    let d = decompose_with(trap, profile, intervals)?;
    let mut rec = Record::new();
    trap_fields(&mut rec, trap, profile);
    decomposition_fields(&mut rec, &d);
    Ok(Output::Record(rec))
}

fn scheme_record(s: &Scheme) -> Record {
    let mut rec = Record::new();
    trap_fields(&mut rec, &s.config, &s.profile);
    rec.push("index", s.index);
    rec.push("trap_periods", s.duration * s.config.omega0() / TAU);
    rec.push("spectrum_zero", s.spectrum_zero);
    rec.push("phase_equality", s.phase_equality);
    rec.push("qcrb_time", s.qcrb_time);
    rec.push("design_point", s.is_design_point());
    decomposition_fields(&mut rec, &s.decomposition);
    rec
}

fn design(cfg: &RunConfig, trap: &Config, profile: &Profile) -> Result<Output, CliError> {
    let scheme = match (cfg.design.index, cfg.design.bracket) {
        (Some(index), _) => design_time(profile.family(), trap, index)?,
        (None, Some([a, b])) => find_zero_time(profile, trap, (a, b))?,
        (None, None) => return Err(CliError::Config("design needs an index or a bracket".into())),
    };
    Ok(Output::Record(scheme_record(&scheme)))
}

fn sensitivity_report(trap: &Config, profile: &Profile) -> Result<Output, CliError> {
    let r = sensitivity(trap, profile)?;
    let mut rec = Record::new();
    trap_fields(&mut rec, trap, profile);
    rec.push("delta_omega", r.delta_omega);
    rec.push("fisher", r.fisher);
    rec.push("qfi", r.qfi);
    rec.push("phase_slope", r.phase_slope);
    rec.push("contrast", r.contrast);
    rec.push("phase", r.phase);
    rec.push("saturated", r.saturated);
    rec.push("qfi_valid", r.qfi_valid);
    rec.push("limit_evaluated", r.limit_evaluated);
    Ok(Output::Record(rec))
}

/// The design-point schemes of the three analytic families for `trap`.
pub fn design_schemes(trap: &Config) -> Result<Vec<(String, Profile)>, CliError> {
    let period = TAU / trap.omega0();
    let mut out = Vec::new();
    for k in 1..=3 {
        out.push((format!("flat K={k}"), Profile::flat(k as f64 * period)?));
    }
    for l in 0..=1 {
        out.push((format!("sinusoidal L={l}"), Profile::sinusoidal((2 * l + 1) as f64 * period)?));
    }
    for m in 2..=4 {
        out.push((format!("cosinusoidal M={m}"), Profile::cosinusoidal(m as f64 * period)?));
    }
    Ok(out)
}

fn verify(cfg: &RunConfig, trap: &Config, profile: &Profile, current: bool) -> Result<Outcome, CliError> {
    let schemes = if current {
        vec![(format!("{} T={}", family_name(profile.family()), profile.duration()), profile.clone())]
    } else {
        design_schemes(trap)?
    };
    let tol = cfg.fock.tolerance;
    let mut t = Table::new(&[
        "scheme",
        "contrast_closed",
        "contrast_fock",
        "phase_closed",
        "phase_fock",
        "discrepancy",
        "norm_drift",
        "pass",
    ]);
    let mut all = true;
    for (name, p) in schemes {
        let c = compare_with_closed_form(trap, &p, cfg.fock.n_max, cfg.fock.steps)?;
        let pass = c.passes(tol) && c.norm_drift <= 1e-8;
        all &= pass;
        t.push(vec![
            name.into(),
            c.contrast_closed.into(),
            c.contrast_fock.into(),
            c.phase_closed.into(),
            c.phase_fock.into(),
            c.contrast_error.max(c.phase_error).into(),
            c.norm_drift.into(),
            pass.into(),
        ]);
    }
    Ok(Outcome {
        output: Output::Table(t),
        verified: all,
    })
}

fn fig2(cfg: &RunConfig, trap: &Config, panel: Panel, points: Option<usize>) -> Result<Output, CliError> {
    let duration = TAU / trap.omega0();
    let (profile, unit) = match panel {
        Panel::A | Panel::B | Panel::C => (Profile::sinusoidal(duration)?, PI * PI / (2.0 * duration)),
        Panel::D | Panel::E | Panel::F => (Profile::flat(duration)?, PI / duration),
    };
    let n = points.unwrap_or(201).max(2);
    match panel {
        Panel::A | Panel::D => {
            let mut t = Table::new(&["t_over_T", "omega_p_scaled"]);
            for k in 0..n {
                let x = k as f64 / (n - 1) as f64;
                t.push(vec![x.into(), (profile.eval(x * duration) / unit).into()]);
            }
            Ok(Output::Table(t))
        }
        Panel::B | Panel::E => {
            let mut t = Table::new(&["omega_scaled", "re", "im"]);
            for k in 0..n {
                let x = 4.0 * k as f64 / (n - 1) as f64;
                let w = spectrum(&profile, x * TAU / duration)?.value;
                t.push(vec![x.into(), w.re.into(), w.im.into()]);
            }
            Ok(Output::Table(t))
        }
        Panel::C | Panel::F => {
            let intervals = points.unwrap_or(cfg.trajectory.intervals);
            let up = sample_trajectory(trap, &profile, Branch::Up, intervals)?;
            let down = sample_trajectory(trap, &profile, Branch::Down, intervals)?;
            let mut t = Table::new(&["time", "re_gamma0", "im_gamma0", "re_gamma1", "im_gamma1", "re_neg_gamma1", "im_neg_gamma1"]);
            for (a, b) in up.samples().iter().zip(down.samples()) {
                let row: Vec<Value> = vec![
                    a.time.into(),
                    a.alpha.re.into(),
                    a.alpha.im.into(),
                    b.alpha.re.into(),
                    b.alpha.im.into(),
                    (-b.alpha.re).into(),
                    (-b.alpha.im).into(),
                ];
                t.push(row);
            }
            Ok(Output::Table(t))
        }
    }
}
