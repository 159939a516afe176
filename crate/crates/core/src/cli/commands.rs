use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use wavegen::filterbank::{catalog, constraint_residuals, lookup, ResidualReport};
use wavegen::io::bank::BankFile;
use wavegen::io::drc::{self, Container};
use wavegen::io::{csv, pgm, write_atomic};
use wavegen::solver::{solve, SolverConfig, Status};
use wavegen::transform::{
    analyze_1d, analyze_2d, reconstruction_error, subband_energy, synthesize_1d, synthesize_2d,
    BoundaryMode, Signal1D, SubbandEnergy,
};
use wavegen::{derive_bank, Filter, FilterBank};

use super::{
    BankSource, CatalogArgs, Command, DecomposeArgs, ExitStatus, Failure, ReconstructArgs,
    SolveArgs, TraceReplotArgs, VerifyArgs,
};

/// Reconstruction error at or above this fails `reconstruct --reference`.
const RECONSTRUCTION_GATE: f64 = 1e-10;

type Outcome = Result<ExitStatus, Failure>;

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Solve(a) => cmd_solve(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Decompose(a) => cmd_decompose(a),
        Command::Reconstruct(a) => cmd_reconstruct(a),
        Command::Catalog(a) => cmd_catalog(a),
        Command::TraceReplot(a) => cmd_trace_replot(a),
    }
}

fn with_path(path: &Path) -> impl FnOnce(wavegen::Error) -> Failure + '_ {
    move |e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    }
}

fn cmd_solve(a: SolveArgs) -> Outcome {
    let mut pinned = BTreeMap::new();
    for &(pos, value) in &a.fix {
        if pinned.insert(pos, value).is_some() {
            return Err(Failure::usage(format!("position {pos} pinned more than once")));
        }
    }
    let config = SolverConfig {
        pinned,
        ..SolverConfig::new(a.n as usize)
            .with_seed(a.seed)
            .with_epsilon(a.epsilon)
            .with_max_sweeps(a.max_sweeps)
    };
    config.validate()?;
    let result = solve(&config)?;

    let mut bank = BankFile::new(&result.filter, a.name);
    bank.converged = Some(result.converged());
    bank.save(&a.out).map_err(with_path(&a.out))?;
    if let Some(trace) = &a.trace {
        write_atomic(trace, csv::format_trace(&result.trace.records).as_bytes())
            .map_err(with_path(trace))?;
    }

    let status = match result.trace.status {
        Status::Converged => "converged",
        Status::MaxSweeps => "stopped at max sweeps",
    };
    println!(
        "{status} after {} sweeps; total_abs residual {:.6e}",
        result.trace.sweeps_used, result.report.total_abs
    );
    Ok(if result.converged() {
        ExitStatus::Success
    } else {
        ExitStatus::NotConverged
    })
}

fn format_report(r: &ResidualReport) -> String {
    let mut out = String::new();
    for (i, v) in r.orthogonality.iter().enumerate() {
        writeln!(out, "shift {:>3}  {v:+.6e}", i + 1).unwrap();
    }
    writeln!(out, "parity     {:+.6e}", r.parity).unwrap();
    writeln!(out, "norm       {:+.6e}", r.norm).unwrap();
    write!(out, "total_abs  {:.6e}", r.total_abs).unwrap();
    out
}

fn cmd_verify(a: VerifyArgs) -> Outcome {
    let bank = BankFile::load(&a.bank).map_err(with_path(&a.bank))?;
    let filter = bank.filter()?;
    let report = constraint_residuals(&filter);
    println!("{}", format_report(&report));
    if report.total_abs <= a.tolerance {
        println!("ok: total_abs <= {:e}", a.tolerance);
        Ok(ExitStatus::Success)
    } else {
        println!("FAIL: total_abs > {:e}", a.tolerance);
        Ok(ExitStatus::VerificationFailed)
    }
}

fn resolve_bank(source: &BankSource) -> Result<FilterBank, Failure> {
    let filter: Filter = match (&source.bank, &source.reference_name) {
        (Some(path), _) => BankFile::load(path).and_then(|b| b.filter()).map_err(with_path(path))?,
        (None, Some(name)) => {
            lookup(name)
                .ok_or_else(|| Failure::usage(format!("no catalog entry named {name:?}")))?
                .taps
        }
        (None, None) => return Err(Failure::usage("one of --bank or --ref is required")),
    };
    Ok(derive_bank(&filter))
}

#[derive(Serialize)]
struct SignalEnergy {
    low: f64,
    high: f64,
    total: f64,
    low_fraction: f64,
    high_fraction: f64,
}

#[derive(Serialize)]
struct ImageEnergy {
    #[serde(flatten)]
    energy: SubbandEnergy,
    previews: BTreeMap<&'static str, pgm::PreviewMapping>,
}

fn prefixed(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn json_bytes<T: Serialize>(v: &T) -> Result<Vec<u8>, Failure> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Failure::io(e.to_string()))?;
    s.push('\n');
    Ok(s.into_bytes())
}

fn cmd_decompose(a: DecomposeArgs) -> Outcome {
    let bank = resolve_bank(&a.source)?;
    let mode = BoundaryMode::from(a.mode);
    let drc_path = prefixed(&a.out_prefix, ".drc");
    let energy_path = prefixed(&a.out_prefix, ".energy.json");

    if let Some(path) = &a.signal {
        let text = std::fs::read_to_string(path).map_err(|e| with_path(path)(e.into()))?;
        let signal = Signal1D::new(csv::parse_signal(&text).map_err(with_path(path))?)?;
        let d = analyze_1d(&signal, &bank, mode)?;
        let low: f64 = d.p.iter().map(|v| v * v).sum();
        let high: f64 = d.q.iter().map(|v| v * v).sum();
        let total = low + high;
        let frac = |e: f64| if total > 0.0 { e / total } else { 0.0 };
        let energy = SignalEnergy {
            low,
            high,
            total,
            low_fraction: frac(low),
            high_fraction: frac(high),
        };
        write_atomic(&drc_path, &drc::encode(&Container::Signal(d))?).map_err(with_path(&drc_path))?;
        write_atomic(&energy_path, &json_bytes(&energy)?).map_err(with_path(&energy_path))?;
        println!(
            "{} samples -> low {:.4} / high {:.4} of energy",
            signal.len(),
            energy.low_fraction,
            energy.high_fraction
        );
        return Ok(ExitStatus::Success);
    }

    let path = a.image.as_ref().expect("clap enforces an input");
    let img = pgm::read(path).map_err(with_path(path))?;
    let d = analyze_2d(&img, &bank, mode).map_err(with_path(path))?;
    let energy = subband_energy(&d);
    let mut previews = BTreeMap::new();
    let (rows, cols) = (d.plane_rows(), d.plane_cols());
    for (name, plane) in ["main", "horizontal", "vertical", "diagonal"].into_iter().zip(d.planes()) {
        let (bytes, mapping) = pgm::preview(plane, rows, cols)?;
        let out = prefixed(&a.out_prefix, &format!(".{name}.pgm"));
        write_atomic(&out, &bytes).map_err(with_path(&out))?;
        previews.insert(name, mapping);
    }
    write_atomic(&drc_path, &drc::encode(&Container::Image(d))?).map_err(with_path(&drc_path))?;
    write_atomic(&energy_path, &json_bytes(&ImageEnergy { energy, previews })?)
        .map_err(with_path(&energy_path))?;
    let [m, h, v, g] = energy.fractions();
    println!(
        "{}x{} -> four {rows}x{cols} planes; energy main {m:.4} horizontal {h:.4} vertical {v:.4} diagonal {g:.4}",
        img.rows(),
        img.cols()
    );
    Ok(ExitStatus::Success)
}

fn cmd_reconstruct(a: ReconstructArgs) -> Outcome {
    let bytes = std::fs::read(&a.container).map_err(|e| with_path(&a.container)(e.into()))?;
    let container = drc::decode(&bytes).map_err(with_path(&a.container))?;
    let bank = resolve_bank(&a.source)?;
    if bank.n() != container.n() {
        return Err(Failure::io(format!(
            "container was written with a {}-tap bank, got a {}-tap bank",
            2 * container.n(),
            bank.len()
        )));
    }

    let (values, reference) = match &container {
        Container::Signal(d) => {
            let r = synthesize_1d(d, &bank)?;
            if !r.approximate.is_empty() {
                println!(
                    "note: {} trailing samples depend on the undefined right extension",
                    r.approximate.len()
                );
            }
            write_atomic(&a.out, csv::format_signal(r.signal.samples()).as_bytes())
                .map_err(with_path(&a.out))?;
            let reference = match &a.reference {
                Some(p) => {
                    let text = std::fs::read_to_string(p).map_err(|e| with_path(p)(e.into()))?;
                    Some(csv::parse_signal(&text).map_err(with_path(p))?)
                }
                None => None,
            };
            (r.signal.into_samples(), reference)
        }
        Container::Image(d) => {
            let img = synthesize_2d(d, &bank)?;
            pgm::write(&a.out, &img).map_err(with_path(&a.out))?;
            let reference = match &a.reference {
                Some(p) => Some(pgm::read(p).map_err(with_path(p))?.into_pixels()),
                None => None,
            };
            (img.into_pixels(), reference)
        }
    };

    let Some(reference) = reference else {
        println!("wrote {}", a.out.display());
        return Ok(ExitStatus::Success);
    };
    let delta = reconstruction_error(&reference, &values)?;
    println!("delta {delta:.6e}");
    Ok(if delta < RECONSTRUCTION_GATE {
        ExitStatus::Success
    } else {
        ExitStatus::VerificationFailed
    })
}

fn cmd_catalog(a: CatalogArgs) -> Outcome {
    if let Some(export) = a.export {
        let (name, path) = (&export[0], PathBuf::from(&export[1]));
        let entry = lookup(name).ok_or_else(|| Failure::usage(format!("no catalog entry named {name:?}")))?;
        BankFile::new(&entry.taps, Some(entry.name.to_string()))
            .save(&path)
            .map_err(with_path(&path))?;
        println!("wrote {} to {}", entry.name, path.display());
        return Ok(ExitStatus::Success);
    }
    println!("{:<14} {:>3} {:>12} {:>10}  source", "name", "n", "total_abs", "budget");
    for e in catalog() {
        let r = constraint_residuals(&e.taps);
        println!(
            "{:<14} {:>3} {:>12.4e} {:>10.1e}  {}",
            e.name,
            e.taps.n(),
            r.total_abs,
            e.tolerance,
            e.source
        );
    }
    Ok(ExitStatus::Success)
}

fn cmd_trace_replot(a: TraceReplotArgs) -> Outcome {
    let text = std::fs::read_to_string(&a.trace).map_err(|e| with_path(&a.trace)(e.into()))?;
    let records = csv::parse_trace(&text).map_err(with_path(&a.trace))?;
    let every = a.every as usize;
    let mut out = String::from("sweep,log10_lyapunov,log10_total_abs_residual\n");
    for (i, r) in records.iter().enumerate() {
        if i % every == 0 || i + 1 == records.len() {
            writeln!(out, "{},{:.6},{:.6}", r.sweep, r.lyapunov.log10(), r.total_abs.log10()).unwrap();
        }
    }
    let increases = records
        .windows(2)
        .filter(|w| w[1].lyapunov > w[0].lyapunov)
        .count();
    match &a.out {
        Some(path) => {
            write_atomic(path, out.as_bytes()).map_err(with_path(path))?;
            if let (Some(first), Some(last)) = (records.first(), records.last()) {
                println!(
                    "{} sweeps; total_abs {:.3e} -> {:.3e}; lyapunov rose in {increases} of {} steps",
                    records.len(),
                    first.total_abs,
                    last.total_abs,
                    records.len().saturating_sub(1)
                );
            }
        }
        None => print!("{out}"),
    }
    Ok(ExitStatus::Success)
}
