//! Implementations behind the CLI subcommands.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use ridgekit::activesubspace::{self, GradientSet};
use ridgekit::linalg::Frame;
use ridgekit::oracle::{self, BuiltinOptions, GaussHermiteRule, TestFunction};
use ridgekit::polyridge::{self, LabeledSamples};
use ridgekit::sampling;

use crate::formats::{self, fmt_float, BootstrapDoc, ModelDoc, SpectrumDoc};
use crate::{
    CheckboundArgs, CliError, FitArgs, InitMode, PredictArgs, SampleArgs, SampleMethod,
    ShadowArgs, SubspaceArgs, SweepArgs, TesterrorArgs,
};

pub fn sample(args: SampleArgs) -> Result<(), CliError> {
    let design = match args.method {
        SampleMethod::Lhs => {
            let unit = sampling::latin_hypercube(args.count, args.dim, args.seed)
                .map_err(CliError::from_core)?;
            match &args.r#box {
                Some(spec) => {
                    let (lo, hi) = parse_box(spec)?;
                    sampling::scale_to_box(&unit, &vec![lo; args.dim], &vec![hi; args.dim])
                        .map_err(CliError::from_core)?
                }
                None => unit,
            }
        }
        SampleMethod::Gaussian => {
            if args.r#box.is_some() {
                return Err(CliError::unsupported(
                    "--box applies to Latin hypercube sampling only".into(),
                ));
            }
            sampling::gaussian_design(args.count, args.dim, args.seed)
                .map_err(CliError::from_core)?
        }
    };
    formats::write_matrix_csv(&args.out, design.points(), "x")
}

fn parse_box(spec: &str) -> Result<(f64, f64), CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 2 {
        return Err(CliError::parse(format!(
            "--box expects LO:HI, got \"{spec}\""
        )));
    }
    let lo: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| CliError::parse(format!("--box lower bound \"{}\"", parts[0])))?;
    let hi: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| CliError::parse(format!("--box upper bound \"{}\"", parts[1])))?;
    Ok((lo, hi))
}

pub fn subspace(args: SubspaceArgs) -> Result<(), CliError> {
    let grads = formats::read_grads_csv(&args.grads)?;
    let m = grads.ncols();
    let set = GradientSet::new(grads).map_err(CliError::from_core)?;
    let estimate = activesubspace::estimate_c(&set).map_err(CliError::from_core)?;

    let (suggested_n, warning) = if m < 2 {
        (None, Some("no spectral gap".to_string()))
    } else {
        match activesubspace::choose_n(estimate.spectrum(), m - 1) {
            Ok(n) => (Some(n), None),
            Err(ridgekit::Error::NoSpectralGap) => {
                (None, Some("no spectral gap".to_string()))
            }
            Err(other) => return Err(CliError::from_core(other)),
        }
    };

    let summary = activesubspace::bootstrap_spectrum(&set, args.bootstrap, args.seed)
        .map_err(CliError::from_core)?;

    let vectors = estimate.spectrum().eigenvectors();
    let doc = SpectrumDoc {
        m,
        eigenvalues: estimate.spectrum().eigenvalues().iter().copied().collect(),
        eigenvectors: (0..m)
            .map(|j| (0..m).map(|i| vectors[(i, j)]).collect())
            .collect(),
        suggested_n,
        warning,
        bootstrap: BootstrapDoc::from_summary(&summary),
    };
    formats::write_json(&args.out, &doc)
}

pub fn fit(args: FitArgs) -> Result<(), CliError> {
    let file = formats::read_samples_csv(&args.samples)?;
    let outputs = file.outputs.ok_or_else(|| {
        CliError::parse(format!(
            "{}: fit requires a trailing f column",
            args.samples.display()
        ))
    })?;
    let m = file.inputs.ncols();
    if args.dim == 0 || args.dim >= m {
        return Err(CliError::dimensions(format!(
            "subspace dimension {} outside 1..{m}",
            args.dim
        )));
    }
    let samples = LabeledSamples::new(file.inputs, outputs).map_err(CliError::from_core)?;

    let u0 = match args.init {
        InitMode::Active => {
            let path = args.spectrum.as_ref().ok_or_else(|| {
                CliError::missing("--init active requires --spectrum".into())
            })?;
            let doc: SpectrumDoc = formats::read_json(path)?;
            if doc.m != m {
                return Err(CliError::dimensions(format!(
                    "spectrum has m = {} but samples have m = {m}",
                    doc.m
                )));
            }
            doc.leading_frame(args.dim)?
        }
        InitMode::Identity => {
            Frame::identity(m, args.dim).map_err(CliError::from_core)?
        }
        InitMode::Random => {
            polyridge::random_frame(m, args.dim, args.seed).map_err(CliError::from_core)?
        }
    };

    let model = polyridge::alternate_fit(&samples, args.degree, &u0, args.iters, args.descent_steps)
        .map_err(CliError::from_core)?
        .with_metadata(args.init.label(), args.seed);

    let history_path = args
        .history
        .clone()
        .unwrap_or_else(|| default_history_path(&args.out));
    formats::write_json(&args.out, &ModelDoc::from_model(&model))?;
    formats::write_history_csv(&history_path, model.history())
}

fn default_history_path(model_path: &Path) -> std::path::PathBuf {
    let mut name = model_path.file_stem().unwrap_or_default().to_os_string();
    name.push(".history.csv");
    model_path.with_file_name(name)
}

pub fn predict(args: PredictArgs) -> Result<(), CliError> {
    let doc: ModelDoc = formats::read_json(&args.model)?;
    let model = doc.into_model()?;
    let file = formats::read_samples_csv(&args.samples)?;
    if file.inputs.ncols() != model.frame().ambient_dim() {
        return Err(CliError::dimensions(format!(
            "samples have m = {} but model has m = {}",
            file.inputs.ncols(),
            model.frame().ambient_dim()
        )));
    }
    let predictions =
        polyridge::predict(&model, &file.inputs).map_err(CliError::from_core)?;
    write_single_column(&args.out, "fhat", predictions.as_slice())
}

pub fn testerror(args: TesterrorArgs) -> Result<(), CliError> {
    let doc: ModelDoc = formats::read_json(&args.model)?;
    let model = doc.into_model()?;
    let file = formats::read_samples_csv(&args.samples)?;
    let outputs = file.outputs.ok_or_else(|| {
        CliError::parse(format!(
            "{}: testerror requires a trailing f column",
            args.samples.display()
        ))
    })?;
    if file.inputs.ncols() != model.frame().ambient_dim() {
        return Err(CliError::dimensions(format!(
            "samples have m = {} but model has m = {}",
            file.inputs.ncols(),
            model.frame().ambient_dim()
        )));
    }
    let samples = LabeledSamples::new(file.inputs, outputs).map_err(CliError::from_core)?;
    let value = polyridge::test_error(&model, &samples).map_err(CliError::from_core)?;
    println!("{{\"mean_relative_error\": {value}}}");
    Ok(())
}

pub fn shadow(args: ShadowArgs) -> Result<(), CliError> {
    let doc: ModelDoc = formats::read_json(&args.model)?;
    let model = doc.into_model()?;
    let n = model.frame().subspace_dim();
    if n > 2 {
        return Err(CliError::unsupported(
            "shadow plots require n <= 2".into(),
        ));
    }
    let file = formats::read_samples_csv(&args.samples)?;
    let outputs = file.outputs.ok_or_else(|| {
        CliError::parse(format!(
            "{}: shadow requires a trailing f column",
            args.samples.display()
        ))
    })?;
    if file.inputs.ncols() != model.frame().ambient_dim() {
        return Err(CliError::dimensions(format!(
            "samples have m = {} but model has m = {}",
            file.inputs.ncols(),
            model.frame().ambient_dim()
        )));
    }
    let y = &file.inputs * model.frame().matrix();

    let out = File::create(&args.out).map_err(|e| CliError::io(&args.out, e))?;
    let mut w = BufWriter::new(out);
    let io_err = |e| CliError::io(&args.out, e);

    if n == 1 {
        writeln!(w, "y,f").map_err(io_err)?;
        for i in 0..y.nrows() {
            writeln!(w, "{},{}", fmt_float(y[(i, 0)]), fmt_float(outputs[i])).map_err(io_err)?;
        }
        let (lo, hi) = column_range(&y, 0);
        for k in 0..200 {
            let t = lo + (hi - lo) * k as f64 / 199.0;
            let p = model.poly().eval(&DVector::from_column_slice(&[t]));
            writeln!(w, "{},{}", fmt_float(t), fmt_float(p)).map_err(io_err)?;
        }
    } else {
        writeln!(w, "y1,y2,f").map_err(io_err)?;
        for i in 0..y.nrows() {
            writeln!(
                w,
                "{},{},{}",
                fmt_float(y[(i, 0)]),
                fmt_float(y[(i, 1)]),
                fmt_float(outputs[i])
            )
            .map_err(io_err)?;
        }
        let (lo1, hi1) = column_range(&y, 0);
        let (lo2, hi2) = column_range(&y, 1);
        for a in 0..50 {
            let y1 = lo1 + (hi1 - lo1) * a as f64 / 49.0;
            for b in 0..50 {
                let y2 = lo2 + (hi2 - lo2) * b as f64 / 49.0;
                let p = model.poly().eval(&DVector::from_column_slice(&[y1, y2]));
                writeln!(
                    w,
                    "{},{},{}",
                    fmt_float(y1),
                    fmt_float(y2),
                    fmt_float(p)
                )
                .map_err(io_err)?;
            }
        }
    }
    Ok(())
}

fn column_range(matrix: &DMatrix<f64>, col: usize) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..matrix.nrows() {
        lo = lo.min(matrix[(i, col)]);
        hi = hi.max(matrix[(i, col)]);
    }
    (lo, hi)
}

pub fn sweep(args: SweepArgs) -> Result<(), CliError> {
    let table = oracle::sweep_angle(
        &TestFunction::Bivariate,
        args.angles,
        args.quad_outer,
        args.quad_inner,
    )
    .map_err(CliError::from_core)?;
    let out = File::create(&args.out).map_err(|e| CliError::io(&args.out, e))?;
    let mut w = BufWriter::new(out);
    writeln!(w, "alpha,R").map_err(|e| CliError::io(&args.out, e))?;
    for row in table.rows() {
        writeln!(w, "{},{}", fmt_float(row.alpha), fmt_float(row.objective))
            .map_err(|e| CliError::io(&args.out, e))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct BoundReport {
    function: String,
    m: usize,
    n: usize,
    lipschitz: f64,
    tail: Vec<f64>,
    grad_norm: f64,
    bound: f64,
    ok: bool,
}

pub fn checkbound(args: CheckboundArgs) -> Result<(), CliError> {
    let default_ambient = match args.function.as_str() {
        "bivariate" | "quadratic" => 2,
        _ => 3,
    };
    let ambient = if args.ambient == 0 {
        default_ambient
    } else {
        args.ambient
    };
    let opts = BuiltinOptions {
        dim: ambient,
        subdim: args.dim,
        seed: args.seed,
        diag: if args.function == "quadratic" && ambient == 2 {
            Some(vec![3.0, 1.0])
        } else {
            None
        },
        ..Default::default()
    };
    let f = oracle::builtin(&args.function, &opts).map_err(CliError::from_core)?;
    let m = f.dim();
    if args.dim == 0 || args.dim >= m {
        return Err(CliError::dimensions(format!(
            "subspace dimension {} outside 1..{m}",
            args.dim
        )));
    }

    let outer = GaussHermiteRule::new(args.quad_outer).map_err(CliError::from_core)?;
    let inner = GaussHermiteRule::new(args.quad_inner).map_err(CliError::from_core)?;

    let estimate = oracle::estimate_c_quadrature(&f, &outer).map_err(CliError::from_core)?;
    let spectrum = estimate.spectrum();
    let tail: Vec<f64> = (args.dim..m)
        .map(|k| spectrum.eigenvalues()[k].max(0.0))
        .collect();
    let w2 = spectrum
        .trailing_frame(args.dim)
        .map_err(CliError::from_core)?;

    let lipschitz = match f.gradient_sup_bound() {
        Some(bound) => bound,
        None => {
            // Certified lower bound from the gradient at every outer node.
            let mut rows = Vec::new();
            let mut grad = vec![0.0; m];
            oracle::tensor_for_each(&outer, m, |x, _| {
                f.grad_into(x, &mut grad);
                rows.extend_from_slice(&grad);
            });
            let count = rows.len() / m;
            let set = GradientSet::new(DMatrix::from_row_iterator(count, m, rows))
                .map_err(CliError::from_core)?;
            oracle::lipschitz_estimate(&set)
        }
    };

    let (_, grad_norm) = oracle::grassmann_grad_r_fd(&f, &w2, args.fd_step, &outer, &inner)
        .map_err(CliError::from_core)?;
    let bound = oracle::near_stationary_bound(lipschitz, m, args.dim, &tail)
        .map_err(CliError::from_core)?;

    let report = BoundReport {
        function: f.name(),
        m,
        n: args.dim,
        lipschitz,
        tail,
        grad_norm,
        bound,
        ok: grad_norm <= bound,
    };
    let rendered = serde_json::to_string_pretty(&report)
        .map_err(|e| CliError::parse(e.to_string()))?;
    println!("{rendered}");
    if let Some(path) = &args.out {
        formats::write_json(path, &report)?;
    }
    Ok(())
}

fn write_single_column(path: &Path, name: &str, values: &[f64]) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut w = BufWriter::new(file);
    writeln!(w, "{name}").map_err(|e| CliError::io(path, e))?;
    for &v in values {
        writeln!(w, "{}", fmt_float(v)).map_err(|e| CliError::io(path, e))?;
    }
    Ok(())
}
