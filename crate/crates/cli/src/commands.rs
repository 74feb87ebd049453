use std::io::Write;
use std::path::Path;

use hankel_cone::debranges::{expand_sampled, isometry_defect, reconstruct_k_sampled, support_equivalence_check};
use hankel_cone::htransform::{h_transform_sampled, h_via_mellin, hankel0_transform};
use hankel_cone::io::{format_f64, read_sampled, read_table, write_sampled, write_table, Format};
use hankel_cone::kleingordon::{riemann_propagate, Extension, WavePacket};
use hankel_cone::quad::DecayHint;
use hankel_cone::sampled::{log_grid, uniform_grid, GridKind, SampledFunction};
use hankel_cone::scattering::{phase_sweep, PotentialKind, SweepOptions};
use hankel_cone::verify::{run_criterion, VerifyOptions, CRITERIA};
use hankel_cone::CauchyData64;
use rayon::prelude::*;

use crate::args::{FormatArg, GridKindArg, PotentialArg, Shared, TransformPath};
use crate::Failure;

type Outcome = Result<(), Failure>;

fn config(msg: impl Into<String>) -> Failure {
    Failure::Config(msg.into())
}

fn input(shared: &Shared) -> Result<&Path, Failure> {
    shared.input.as_deref().ok_or_else(|| config("--input is required"))
}

fn check_tol(shared: &Shared) -> Result<f64, Failure> {
    if shared.tol > 0.0 && shared.tol.is_finite() {
        Ok(shared.tol)
    } else {
        Err(config(format!("--tol must be positive, got {}", shared.tol)))
    }
}

/// The grid from the flags, each missing flag taken from `default`.
fn grid(shared: &Shared, default: (f64, f64, usize, GridKind)) -> Result<(Vec<f64>, GridKind), Failure> {
    let min = shared.grid_min.unwrap_or(default.0);
    let max = shared.grid_max.unwrap_or(default.1);
    let count = shared.grid_count.unwrap_or(default.2);
    let kind = match shared.grid_kind {
        Some(GridKindArg::Uniform) => GridKind::Uniform,
        Some(GridKindArg::Log) => GridKind::LogUniform,
        None => default.3,
    };
    if shared.grid_count.is_some() && count < 16 {
        return Err(config(format!("--grid-count must be at least 16, got {count}")));
    }
    if !(min < max) || !min.is_finite() || !max.is_finite() {
        return Err(config(format!("grid bounds [{min}, {max}] are not an interval")));
    }
    Ok(match kind {
        GridKind::Uniform => (uniform_grid(min, max, count), kind),
        GridKind::LogUniform if min > 0.0 => (log_grid(min, max, count), kind),
        GridKind::LogUniform => return Err(config("a log grid needs --grid-min > 0")),
    })
}

fn format_for(shared: &Shared, path: &Path) -> Format {
    match shared.format {
        Some(FormatArg::Csv) => Format::Csv,
        Some(FormatArg::Json) => Format::Json,
        None => Format::from_path(path),
    }
}

/// Writes a table to `--output`, or CSV on stdout.
fn emit(shared: &Shared, names: &[&str], cols: &[&[f64]]) -> Outcome {
    if let Some(path) = &shared.output {
        return Ok(write_table(path, names, cols, format_for(shared, path))?);
    }
    let mut out = std::io::stdout().lock();
    let mut write = || -> std::io::Result<()> {
        writeln!(out, "{}", names.join(","))?;
        let n = cols.iter().map(|c| c.len()).min().unwrap_or(0);
        for i in 0..n {
            let row: Vec<String> = cols.iter().map(|c| format_f64(c[i])).collect();
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    };
    match write() {
        // a closed pipe (`| head`) is not a failure
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(config(e.to_string())),
        _ => Ok(()),
    }
}

fn output_sampled(shared: &Shared, f: &SampledFunction<f64>) -> Outcome {
    match &shared.output {
        Some(path) => Ok(write_sampled(path, f, format_for(shared, path))?),
        None => emit(shared, &["x", "value"], &[f.grid(), f.values()]),
    }
}

fn l2_sq(f: &SampledFunction<f64>, tol: f64) -> Result<f64, Failure> {
    Ok(f.integral_of(|_, v| v * v, tol)?)
}

fn relative_discrepancy(a: &SampledFunction<f64>, b: &SampledFunction<f64>, tol: f64) -> Result<f64, Failure> {
    let diff: Vec<f64> = a.values().iter().zip(b.values()).map(|(x, y)| x - y).collect();
    let d = SampledFunction::new(a.grid().to_vec(), diff, a.grid_kind(), b.decay())?;
    Ok((l2_sq(&d, tol)? / l2_sq(b, tol)?).sqrt())
}

pub fn transform(shared: &Shared, path: TransformPath, both_paths: bool, decay_rate: Option<f64>, tau_max: f64, tau_count: usize) -> Outcome {
    let tol = check_tol(shared)?;
    let decay = decay_rate.map(|rate| DecayHint::Exponential { rate });
    let f = read_sampled::<f64>(input(shared)?, decay)?;
    let (xs, kind) = grid(shared, (f.grid_min(), f.grid_max(), f.len(), f.grid_kind()))?;
    let out = match path {
        TransformPath::H => h_transform_sampled(&f, xs.clone(), kind, tol)?,
        TransformPath::Hankel0 => hankel0_transform(&f, xs.clone(), kind, tol)?,
        TransformPath::Mellin => h_via_mellin(&f, xs.clone(), kind, tau_max, tau_count, tol)?,
    };
    let ratio = (l2_sq(&out, tol)? / l2_sq(&f, tol)?).sqrt();
    eprintln!("norm_ratio: {}", format_f64(ratio));
    if both_paths {
        let other = match path {
            TransformPath::H => h_via_mellin(&f, xs, kind, tau_max, tau_count, tol)?,
            TransformPath::Mellin => h_transform_sampled(&f, xs, kind, tol)?,
            TransformPath::Hankel0 => return Err(config("--both-paths compares the h and mellin paths")),
        };
        eprintln!("path_discrepancy: {}", format_f64(relative_discrepancy(&other, &out, tol)?));
    }
    output_sampled(shared, &out)
}

pub fn propagate(shared: &Shared, times: &[f64]) -> Outcome {
    let tol = check_tol(shared)?;
    let path = input(shared)?;
    if times.is_empty() {
        return Err(config("--times is empty"));
    }
    if Format::from_path(path) == Format::Json {
        let text = std::fs::read_to_string(path).map_err(hankel_cone::Error::from)?;
        let packet = WavePacket::<f64>::from_json(&text)?;
        let (xs, _) = grid(shared, (-20.0, 20.0, 401, GridKind::Uniform))?;
        let em = packet.energy_momentum();
        eprintln!("energy: {}", format_f64(em.energy));
        eprintln!("momentum: {}", format_f64(em.momentum));
        let points: Vec<(f64, f64)> = times.iter().flat_map(|&t| xs.iter().map(move |&x| (t, x))).collect();
        let phi: Vec<_> = points.par_iter().map(|&(t, x)| packet.synthesize_phi(t, x)).collect();
        let (t, x): (Vec<f64>, Vec<f64>) = points.into_iter().unzip();
        let (re, im): (Vec<f64>, Vec<f64>) = phi.iter().map(|p| (p.re, p.im)).unzip();
        return emit(shared, &["t", "x", "phi_re", "phi_im"], &[&t, &x, &re, &im]);
    }
    let cols = read_table(path, &["x", "phi", "phi_t"])?;
    let (x, phi0, phi1) = (&cols[0], &cols[1], &cols[2]);
    let (lo, hi) = (x[0], x[x.len() - 1]);
    // shift onto the positive axis to reuse the cubic sampled-function interpolant
    let h = (hi - lo) / (x.len().max(2) - 1) as f64;
    let shifted: Vec<f64> = x.iter().map(|&v| v - lo + h).collect();
    let compact = DecayHint::Compact { support_end: hi - lo + h };
    let s0 = SampledFunction::new(shifted.clone(), phi0.clone(), GridKind::Uniform, compact)?;
    let s1 = SampledFunction::new(shifted, phi1.clone(), GridKind::Uniform, compact)?;
    let (xs, _) = grid(shared, (lo, hi, x.len(), GridKind::Uniform))?;
    let points: Vec<(f64, f64)> = times.iter().flat_map(|&t| xs.iter().map(move |&x| (t, x))).collect();
    let values: Vec<f64> = points
        .par_iter()
        .map(|&(t, xv)| riemann_propagate(|y| s0.eval(y - lo + h), |y| s1.eval(y - lo + h), (lo, hi), t, xv, tol))
        .collect::<hankel_cone::Result<_>>()?;
    let (t, xv): (Vec<f64>, Vec<f64>) = points.into_iter().unzip();
    emit(shared, &["t", "x", "phi"], &[&t, &xv, &values])
}

pub fn expand(shared: &Shared, inverse: bool, support: Option<f64>) -> Outcome {
    let tol = check_tol(shared)?;
    let path = input(shared)?;
    if !inverse {
        if support.is_some() {
            return Err(config("--support applies with --inverse"));
        }
        let k = read_sampled::<f64>(path, None)?;
        let (xs, kind) = grid(shared, (k.grid_min(), 2.0 * k.grid_max(), 2 * k.len(), GridKind::LogUniform))?;
        let fg = expand_sampled(&k, xs, kind, tol)?;
        let rep = isometry_defect(&k, &fg, None, tol)?;
        eprintln!("isometry_defect: {}", format_f64(rep.defect));
        return match &shared.output {
            Some(out) => Ok(fg.write(out, format_for(shared, out))?),
            None => emit(shared, &["x", "F", "G"], &[fg.f.grid(), fg.f.values(), fg.g.values()]),
        };
    }
    let fg = CauchyData64::read(path, Extension::FEvenGOdd)?;
    let top = fg.f.grid_max() / 2.0;
    let (vs, kind) = grid(shared, (fg.f.grid_min(), top, fg.f.grid().len() / 2, fg.f.grid_kind()))?;
    let k = reconstruct_k_sampled(&fg, vs, kind, tol)?;
    let rep = isometry_defect(&k, &fg, None, tol)?;
    eprintln!("isometry_defect: {}", format_f64(rep.defect));
    if let Some(a) = support {
        let s = support_equivalence_check(&fg, a, 64, tol)?;
        eprintln!("support_max_g: {}", format_f64(s.max_g));
        eprintln!("support_max_k: {}", format_f64(s.max_k));
    }
    output_sampled(shared, &k)
}

pub fn scatter(shared: &Shared, gammas: &[f64], potential: PotentialArg, zeta0: f64, step: f64) -> Outcome {
    if gammas.is_empty() {
        return Err(config("--gammas is empty"));
    }
    let kind = match potential {
        PotentialArg::AMinus => PotentialKind::AMinus,
        PotentialArg::BPlus => PotentialKind::BPlus,
        PotentialArg::KleinGordon => PotentialKind::KleinGordon,
    };
    let opts = SweepOptions { zeta0, step, ..SweepOptions::default() };
    let rows = phase_sweep(gammas, kind, opts)?;
    let col = |f: fn(&hankel_cone::scattering::PhaseRow<f64>) -> f64| rows.iter().map(f).collect::<Vec<f64>>();
    let (g, e, r, a) = (col(|r| r.gamma), col(|r| r.theta_extracted), col(|r| r.theta_reference), col(|r| r.abs_error));
    emit(shared, &["gamma", "theta_extracted", "theta_reference", "abs_error"], &[&g, &e, &r, &a])
}

pub fn verify(shared: &Shared, only: &[u8]) -> Outcome {
    let ids: Vec<u8> = if only.is_empty() { CRITERIA.iter().map(|c| c.0).collect() } else { only.to_vec() };
    if let Some(bad) = ids.iter().find(|id| !CRITERIA.iter().any(|c| c.0 == **id)) {
        return Err(config(format!("no criterion {bad}")));
    }
    let opts = VerifyOptions { seed: shared.seed };
    let mut all_passed = true;
    let mut results = Vec::new();
    for id in ids {
        let c = run_criterion(id, opts);
        println!("{c}");
        all_passed &= c.passed();
        results.push(c);
    }
    if let Some(path) = &shared.output {
        let text = serde_json::to_string_pretty(&results).map_err(|e| config(e.to_string()))?;
        std::fs::write(path, text + "\n").map_err(|e| config(format!("{}: {e}", path.display())))?;
    }
    if all_passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
