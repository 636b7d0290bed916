//! File formats shared with other tools: headered CSV for samples, gradients,
//! and tables, and JSON documents for fitted models and estimated spectra.
//!
//! Floats are written with 17 significant digits so reruns diff bit-for-bit
//! and round-trip exactly through any IEEE-754 parser.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use ridgekit::activesubspace::BootstrapSummary;
use ridgekit::linalg::Frame;
use ridgekit::polyridge::{HistoryRow, PolyModel, RidgeModel};

use crate::CliError;

/// Version tag carried by every model document.
pub const MODEL_VERSION: &str = "ridgekit-model-v1";

pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// A fitted ridge model as a single interoperable JSON document.
#[derive(Debug, Serialize, Deserialize)]
pub struct ModelDoc {
    pub version: String,
    pub m: usize,
    pub n: usize,
    #[serde(rename = "N")]
    pub degree: usize,
    /// Row-major m×n frame.
    #[serde(rename = "U")]
    pub u: Vec<Vec<f64>>,
    pub multi_indices: Vec<Vec<u32>>,
    pub theta: Vec<f64>,
    pub y_scale: Vec<f64>,
    pub init: String,
    pub seed: u64,
    pub residual_final: f64,
}

impl ModelDoc {
    pub fn from_model(model: &RidgeModel) -> Self {
        let u = model.frame().matrix();
        Self {
            version: MODEL_VERSION.to_string(),
            m: u.nrows(),
            n: u.ncols(),
            degree: model.poly().basis().degree(),
            u: (0..u.nrows())
                .map(|i| (0..u.ncols()).map(|j| u[(i, j)]).collect())
                .collect(),
            multi_indices: model.poly().basis().indices().to_vec(),
            theta: model.poly().theta().iter().copied().collect(),
            y_scale: model.poly().y_scale().iter().copied().collect(),
            init: model.init_label().to_string(),
            seed: model.seed(),
            residual_final: model.final_residual().unwrap_or(f64::NAN),
        }
    }

    pub fn into_model(self) -> Result<RidgeModel, CliError> {
        if self.version != MODEL_VERSION {
            return Err(CliError::parse(format!(
                "unsupported model version \"{}\"",
                self.version
            )));
        }
        if self.u.len() != self.m || self.u.iter().any(|row| row.len() != self.n) {
            return Err(CliError::dimensions(format!(
                "model U is not {}×{}",
                self.m, self.n
            )));
        }
        let entries = DMatrix::from_fn(self.m, self.n, |i, j| self.u[i][j]);
        let frame = Frame::new(entries)
            .map_err(|e| CliError::parse(format!("model frame invalid: {e}")))?;
        let basis = ridgekit::polyridge::multi_indices(self.n, self.degree)
            .map_err(CliError::from_core)?;
        if basis.indices() != self.multi_indices.as_slice() {
            return Err(CliError::parse(
                "model multi_indices do not match the graded-lex basis".to_string(),
            ));
        }
        let poly = PolyModel::new(
            basis,
            DVector::from_vec(self.theta.clone()),
            DVector::from_vec(self.y_scale.clone()),
        )
        .map_err(CliError::from_core)?;
        let model = RidgeModel::new(frame, poly)
            .map_err(CliError::from_core)?
            .with_metadata(&self.init, self.seed);
        Ok(model)
    }
}

/// An estimated spectrum with its bootstrap variability summary.
#[derive(Debug, Serialize, Deserialize)]
pub struct SpectrumDoc {
    pub m: usize,
    pub eigenvalues: Vec<f64>,
    /// Column-major: each inner vector is one eigenvector.
    pub eigenvectors: Vec<Vec<f64>>,
    pub suggested_n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
    pub bootstrap: BootstrapDoc,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BootstrapDoc {
    #[serde(rename = "B")]
    pub replicates: usize,
    pub seed: u64,
    /// Per eigenvalue index: [min, mean, max] over replicates.
    pub eigen_ranges: Vec<[f64; 3]>,
    /// Per subspace dimension 1…m−1: [min, mean, max] replicate distances.
    pub subspace_ranges: Vec<[f64; 3]>,
}

impl BootstrapDoc {
    pub fn from_summary(summary: &BootstrapSummary) -> Self {
        Self {
            replicates: summary.replicates,
            seed: summary.seed,
            eigen_ranges: summary
                .eigen_ranges
                .iter()
                .map(|r| [r.min, r.mean, r.max])
                .collect(),
            subspace_ranges: summary
                .subspace_ranges
                .iter()
                .map(|r| [r.min, r.mean, r.max])
                .collect(),
        }
    }
}

impl SpectrumDoc {
    /// Frame of the first n eigenvectors.
    pub fn leading_frame(&self, n: usize) -> Result<Frame, CliError> {
        if n == 0 || n >= self.m {
            return Err(CliError::dimensions(format!(
                "requested n = {n} from an m = {} spectrum",
                self.m
            )));
        }
        if self.eigenvectors.len() != self.m
            || self.eigenvectors.iter().any(|col| col.len() != self.m)
        {
            return Err(CliError::parse("spectrum eigenvectors are not m×m".into()));
        }
        let entries = DMatrix::from_fn(self.m, n, |i, j| self.eigenvectors[j][i]);
        Frame::new(entries).map_err(|e| CliError::parse(format!("spectrum frame invalid: {e}")))
    }
}

pub fn write_json<T: Serialize>(path: &Path, doc: &T) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut writer = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut writer, doc)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    writer
        .write_all(b"\n")
        .map_err(|e| CliError::io(path, e))?;
    Ok(())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let file = File::open(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_reader(file)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

/// Writes a matrix as headered CSV with columns `<prefix>1..<prefix>k`.
pub fn write_matrix_csv(path: &Path, matrix: &DMatrix<f64>, prefix: &str) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut w = BufWriter::new(file);
    let header: Vec<String> = (1..=matrix.ncols()).map(|j| format!("{prefix}{j}")).collect();
    writeln!(w, "{}", header.join(",")).map_err(|e| CliError::io(path, e))?;
    for i in 0..matrix.nrows() {
        let row: Vec<String> = (0..matrix.ncols()).map(|j| fmt_float(matrix[(i, j)])).collect();
        writeln!(w, "{}", row.join(",")).map_err(|e| CliError::io(path, e))?;
    }
    Ok(())
}

/// Writes residual history rows as `iter,phase,residual`.
pub fn write_history_csv(path: &Path, history: &[HistoryRow]) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut w = BufWriter::new(file);
    writeln!(w, "iter,phase,residual").map_err(|e| CliError::io(path, e))?;
    for row in history {
        writeln!(w, "{},{},{}", row.iter, row.phase, fmt_float(row.residual))
            .map_err(|e| CliError::io(path, e))?;
    }
    Ok(())
}

/// Parsed sample file: inputs plus the optional trailing `f` column.
pub struct SampleFile {
    pub inputs: DMatrix<f64>,
    pub outputs: Option<DVector<f64>>,
}

/// Reads a samples CSV with header `x1,…,xm[,f]`.
pub fn read_samples_csv(path: &Path) -> Result<SampleFile, CliError> {
    let (header, rows) = read_csv_table(path)?;
    let has_f = header.last().map(String::as_str) == Some("f");
    let m = if has_f { header.len() - 1 } else { header.len() };
    validate_header(path, &header[..m], "x")?;
    if m == 0 {
        return Err(CliError::parse(format!(
            "{}: no input columns found",
            path.display()
        )));
    }
    let count = rows.len();
    if count == 0 {
        return Err(CliError::parse(format!("{}: no data rows", path.display())));
    }
    let mut inputs = DMatrix::zeros(count, m);
    let mut outputs = has_f.then(|| DVector::zeros(count));
    for (i, (_, row)) in rows.iter().enumerate() {
        for j in 0..m {
            inputs[(i, j)] = row[j];
        }
        if let Some(out) = outputs.as_mut() {
            out[i] = row[m];
        }
    }
    Ok(SampleFile { inputs, outputs })
}

/// Reads a gradients CSV with header `g1,…,gm`.
pub fn read_grads_csv(path: &Path) -> Result<DMatrix<f64>, CliError> {
    let (header, rows) = read_csv_table(path)?;
    validate_header(path, &header, "g")?;
    let m = header.len();
    if rows.is_empty() {
        return Err(CliError::parse(format!("{}: no data rows", path.display())));
    }
    let mut matrix = DMatrix::zeros(rows.len(), m);
    for (i, (_, row)) in rows.iter().enumerate() {
        for j in 0..m {
            matrix[(i, j)] = row[j];
        }
    }
    Ok(matrix)
}

fn validate_header(path: &Path, fields: &[String], prefix: &str) -> Result<(), CliError> {
    for (j, field) in fields.iter().enumerate() {
        let expected = format!("{prefix}{}", j + 1);
        if field != &expected {
            return Err(CliError::parse(format!(
                "{}: line 1: expected column \"{expected}\", found \"{field}\"",
                path.display()
            )));
        }
    }
    Ok(())
}

/// Reads a headered CSV into (header, rows of floats), reporting the file
/// line number of the first malformed row.
fn read_csv_table(path: &Path) -> Result<(Vec<String>, Vec<(u64, Vec<f64>)>), CliError> {
    let file = File::open(path).map_err(|e| CliError::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(file);
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?
        .iter()
        .map(str::to_string)
        .collect();
    let width = header.len();
    let mut rows = Vec::new();
    for record in reader.records() {
        let record =
            record.map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.len() != width {
            return Err(CliError::parse(format!(
                "{}: line {line}: expected {width} fields, found {}",
                path.display(),
                record.len()
            )));
        }
        let mut values = Vec::with_capacity(width);
        for field in record.iter() {
            let value: f64 = field.parse().map_err(|_| {
                CliError::parse(format!(
                    "{}: line {line}: \"{field}\" is not a number",
                    path.display()
                ))
            })?;
            values.push(value);
        }
        rows.push((line, values));
    }
    Ok((header, rows))
}
