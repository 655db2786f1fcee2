use std::io::Write;
use std::time::{Duration, Instant};

use mittag_core::fde::{
    bagley_torvik_solve, reference_h1, reference_h2, solve, BagleyTorvikSpec, DerivativeKind,
    FdeProblem, Forcing, SampledForcing, TimeGrid, Trajectory,
};
use mittag_core::linalg::ComplexMatrix;
use mittag_core::matfun::ml_matrix;
use mittag_core::special::{ml_scalar, EvalConfig, MLParams};
use num_complex::Complex64;

use crate::error::CliError;
use crate::formats::{
    format_matrix, format_trajectory, parse_vector, read_forcing, read_matrix, write_text,
};
use crate::{BagleyTorvikArgs, Command, EvalArgs, Kind, SolveArgs, VerifyArgs};

/// Summary printed after every command.
struct RunReport {
    command: &'static str,
    inputs: Vec<(&'static str, String)>,
    deviation: Option<f64>,
    warnings: Vec<String>,
    elapsed: Duration,
}

impl RunReport {
    fn new(command: &'static str) -> Self {
        RunReport {
            command,
            inputs: Vec::new(),
            deviation: None,
            warnings: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    fn input(&mut self, key: &'static str, value: impl ToString) {
        self.inputs.push((key, value.to_string()));
    }

    fn write(&self, w: &mut dyn Write) {
        let _ = writeln!(w, "# command: {}", self.command);
        for (k, v) in &self.inputs {
            let _ = writeln!(w, "# {k}: {v}");
        }
        if let Some(d) = self.deviation {
            let _ = writeln!(w, "# max abs deviation from reference: {d:.3e}");
        }
        for warning in &self.warnings {
            let _ = writeln!(w, "# warning: {warning}");
        }
        let _ = writeln!(w, "# elapsed: {:.3} s", self.elapsed.as_secs_f64());
    }
}

fn config(accuracy: f64) -> Result<EvalConfig, CliError> {
    let cfg = EvalConfig::with_accuracy(accuracy);
    cfg.validate()?;
    Ok(cfg)
}

fn emit(text: &str, path: Option<&str>, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => write_text(p, text),
        None => out
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Write {
                path: "standard output".into(),
                source,
            }),
    }
}

pub fn dispatch(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Eval(a) => cmd_eval(a, out, err),
        Command::Solve(a) => cmd_solve(a, out, err),
        Command::BagleyTorvik(a) => cmd_bagley_torvik(a, out, err),
        Command::Verify(a) => cmd_verify(a, out),
    }
}

fn cmd_eval(args: &EvalArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let start = Instant::now();
    let mut report = RunReport::new("eval");
    report.input("matrix", &args.matrix);
    report.input("alpha", args.alpha);
    report.input("beta", args.beta);
    let cfg = config(args.accuracy)?;
    let a = read_matrix(&args.matrix)?;
    let beta = Complex64::new(args.beta, 0.0);

    let value = match args.rho {
        Some(rho) => {
            report.input("rho", rho);
            if a.rows() != 1 || a.cols() != 1 {
                return Err(CliError::Usage(format!(
                    "--rho needs a 1x1 matrix, got {}x{}",
                    a.rows(),
                    a.cols()
                )));
            }
            let p = MLParams::with_rho(args.alpha, beta, rho);
            p.validate()?;
            let v = ml_scalar(a[(0, 0)], &p, &cfg)?;
            let v = if a.is_real() && v.im.abs() <= 1e-8 * v.re.abs() {
                Complex64::new(v.re, 0.0)
            } else {
                v
            };
            ComplexMatrix::new(1, 1, vec![v]).map_err(CliError::from)?
        }
        None => {
            let r = ml_matrix(&a, args.alpha, beta, &cfg)?;
            report
                .warnings
                .extend(r.warnings.iter().map(ToString::to_string));
            r.value
        }
    };

    if let Some(path) = &args.reference {
        let reference = read_matrix(path)?;
        if reference.rows() != value.rows() || reference.cols() != value.cols() {
            return Err(CliError::Usage(format!(
                "reference is {}x{}, result is {}x{}",
                reference.rows(),
                reference.cols(),
                value.rows(),
                value.cols()
            )));
        }
        report.input("reference", path);
        report.deviation = Some((&value - &reference).max_abs());
    }
    emit(&format_matrix(&value), args.out.as_deref(), out)?;
    report.elapsed = start.elapsed();
    report.write(err);
    Ok(())
}

fn grid(t_end: f64, steps: usize) -> Result<TimeGrid, CliError> {
    Ok(TimeGrid::new(t_end, steps)?)
}

fn write_trajectory(
    tr: &Trajectory,
    components: &[usize],
    names: &[String],
    path: Option<&str>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    emit(&format_trajectory(tr, components, names), path, out)
}

fn cmd_solve(args: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let start = Instant::now();
    let mut report = RunReport::new("solve");
    report.input("matrix", &args.matrix);
    report.input("alpha", args.alpha);
    report.input("kind", format!("{:?}", args.kind).to_lowercase());
    report.input("t_end", args.t_end);
    report.input("steps", args.steps);
    let cfg = config(args.accuracy)?;
    let a = read_matrix(&args.matrix)?;
    let z0 = parse_vector(&args.z0)?;
    let kind = match args.kind {
        Kind::Rl => DerivativeKind::RiemannLiouville,
        Kind::Caputo => DerivativeKind::Caputo,
    };
    let n = a.rows();
    let mut problem = FdeProblem::new(a, args.alpha, kind, z0);
    problem.validate()?;
    if let Some(path) = &args.forcing {
        report.input("forcing", path);
        problem = problem.with_forcing(read_forcing(path, n)?);
    }
    let grid = grid(args.t_end, args.steps)?;
    let tr = solve(&problem, &grid, &cfg)?;
    report
        .warnings
        .extend(tr.warnings.iter().map(ToString::to_string));
    let names: Vec<String> = (1..=n).map(|k| format!("z{k}")).collect();
    write_trajectory(
        &tr,
        &(0..n).collect::<Vec<_>>(),
        &names,
        args.out.as_deref(),
        out,
    )?;
    report.elapsed = start.elapsed();
    report.write(err);
    Ok(())
}

fn scalar_forcing(
    f: SampledForcing,
    t_end: f64,
) -> Result<impl Fn(f64) -> f64 + Send + Sync, CliError> {
    for t in [0.0, t_end] {
        f.eval(t)
            .map_err(|e| CliError::Usage(format!("forcing: {e}")))?;
    }
    // Inside the checked range evaluation cannot fail; NaN would be caught
    // by the solver's finiteness check regardless.
    Ok(move |t: f64| f.eval(t).map(|v| v[0].re).unwrap_or(f64::NAN))
}

fn cmd_bagley_torvik(
    args: &BagleyTorvikArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let start = Instant::now();
    let mut report = RunReport::new("bagley-torvik");
    for (k, v) in [
        ("a", args.a),
        ("b", args.b),
        ("c", args.c),
        ("y0", args.y0),
        ("yp0", args.yp0),
    ] {
        report.input(k, v);
    }
    report.input("t_end", args.t_end);
    report.input("steps", args.steps);
    let cfg = config(args.accuracy)?;
    let mut spec = BagleyTorvikSpec::new(args.a, args.b, args.c, args.y0, args.yp0);
    if let Some(path) = &args.forcing {
        report.input("forcing", path);
        spec = spec.with_forcing(scalar_forcing(read_forcing(path, 1)?, args.t_end)?);
    }
    let grid = grid(args.t_end, args.steps)?;
    let tr = bagley_torvik_solve(&spec, &grid, &cfg)?;
    report
        .warnings
        .extend(tr.warnings.iter().map(ToString::to_string));
    let (components, names): (Vec<usize>, Vec<String>) = if args.full_state {
        (
            vec![0, 1, 2, 3],
            ["y", "D^1/2y", "y'", "D^3/2y"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
        )
    } else {
        (vec![0], vec!["y".to_string()])
    };
    write_trajectory(&tr, &components, &names, args.out.as_deref(), out)?;
    report.elapsed = start.elapsed();
    report.write(err);
    Ok(())
}

fn companion(p: f64) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 0.0, p],
    ])
}

/// Prints the entrywise pass matrix and returns the failing entries.
fn compare(
    label: &str,
    got: &ComplexMatrix,
    reference: &ComplexMatrix,
    tol: f64,
    out: &mut dyn Write,
) -> (f64, Vec<String>) {
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    let _ = writeln!(out, "abs({label}) < tol =");
    for i in 0..4 {
        let mut line = String::new();
        for j in 0..4 {
            let d = (got[(i, j)] - reference[(i, j)]).norm();
            worst = worst.max(d);
            let ok = d < tol;
            if !ok {
                failures.push(format!(
                    "{label} entry ({}, {}): deviation {d:.3e}",
                    i + 1,
                    j + 1
                ));
            }
            line.push_str(if ok { "   1" } else { "   0" });
        }
        let _ = writeln!(out, "{line}");
    }
    let _ = writeln!(out, "max deviation {worst:.3e}\n");
    (worst, failures)
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let start = Instant::now();
    if !(args.tol > 0.0) {
        return Err(CliError::Usage(format!(
            "--tol must be positive, got {}",
            args.tol
        )));
    }
    let h1 = reference_h1(args.p)?;
    let h2 = reference_h2(args.p)?;
    let b = companion(args.p);
    let cfg = EvalConfig::default();
    let e1 = ml_matrix(&b, 0.5, Complex64::new(1.0, 0.0), &cfg)?;
    let e2 = ml_matrix(&b, 0.5, Complex64::new(0.5, 0.0), &cfg)?;

    let _ = writeln!(
        out,
        "B = companion matrix with p = {}, tol = {:e}\n",
        args.p, args.tol
    );
    let (_, mut failures) = compare("E1-H1", &e1.value, &h1, args.tol, out);
    let (_, f2) = compare("E2-H2", &e2.value, &h2, args.tol, out);
    failures.extend(f2);

    let mut report = RunReport::new("verify");
    report.input("p", args.p);
    report.input("tol", format!("{:e}", args.tol));
    report.warnings = e1
        .warnings
        .iter()
        .chain(&e2.warnings)
        .map(ToString::to_string)
        .collect();
    report.elapsed = start.elapsed();
    report.write(out);

    if failures.is_empty() {
        let _ = writeln!(out, "PASS: all 32 entries within tolerance");
        Ok(())
    } else {
        for f in &failures {
            let _ = writeln!(out, "FAIL {f}");
        }
        Err(CliError::VerifyFailed(format!(
            "{} of 32 entries exceed tol {:e}",
            failures.len(),
            args.tol
        )))
    }
}
