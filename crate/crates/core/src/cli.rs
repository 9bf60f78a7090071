//! File-based front end.
//!
//! Matrices are exchanged as JSON documents with every entry a rational
//! string (`"3"`, `"-7/4"`):
//!
//! ```json
//! {"rows": 2, "cols": 2, "std": [["1","0"],["0","0"]], "dual": [["0","0"],["1","1"]]}
//! ```
//!
//! Every command prints one [`ResultDocument`] on standard output. Exit codes:
//! 0 ok, 1 other error (e.g. index precondition), 2 inverse does not exist,
//! 3 inconsistent system, 4 parse or usage error.

use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::dual::{DualMatrix, ParametricDualSolutions};
use crate::error::Error;
use crate::indices::{index_profile, rank_profile};
use crate::inverses::{ddi, dgi, existence_profile, verify, wddi, wdgi, InverseKind};
use crate::kernel;
use crate::matrix::{format_rational, parse_rational, RealMatrix};
use crate::solvers::{solve_general, solve_restricted};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_DOES_NOT_EXIST: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;
pub const EXIT_USAGE: i32 = 4;

/// Wire form of a dual matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub rows: usize,
    pub cols: usize,
    pub std: Vec<Vec<String>>,
    pub dual: Vec<Vec<String>>,
}

impl MatrixDocument {
    pub fn from_matrix(m: &DualMatrix) -> Self {
        MatrixDocument {
            rows: m.rows(),
            cols: m.cols(),
            std: grid(m.std()),
            dual: grid(m.dual()),
        }
    }

    pub fn to_matrix(&self) -> Result<DualMatrix, ParseError> {
        let std = parse_grid("std", &self.std, self.rows, self.cols)?;
        let dual = parse_grid("dual", &self.dual, self.rows, self.cols)?;
        DualMatrix::new(std, dual).map_err(|e| ParseError::field("dual", e.to_string()))
    }
}

fn grid(m: &RealMatrix) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|row| row.iter().map(format_rational).collect())
        .collect()
}

fn real_value(m: &RealMatrix) -> Value {
    json!(grid(m))
}

fn parse_grid(
    name: &str,
    cells: &[Vec<String>],
    rows: usize,
    cols: usize,
) -> Result<RealMatrix, ParseError> {
    if cells.len() != rows {
        return Err(ParseError::field(
            name,
            format!("expected {rows} rows, found {}", cells.len()),
        ));
    }
    let mut out = RealMatrix::zeros(rows, cols);
    for (i, row) in cells.iter().enumerate() {
        if row.len() != cols {
            return Err(ParseError::field(
                &format!("{name}[{i}]"),
                format!("expected {cols} entries, found {}", row.len()),
            ));
        }
        for (j, cell) in row.iter().enumerate() {
            out[(i, j)] = parse_rational(cell).ok_or_else(|| {
                ParseError::field(
                    &format!("{name}[{i}][{j}]"),
                    format!("invalid rational {cell:?}"),
                )
            })?;
        }
    }
    Ok(out)
}

/// Malformed input document, with the JSON position or the offending field.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub field: Option<String>,
    pub message: String,
}

impl ParseError {
    fn field(field: &str, message: String) -> Self {
        ParseError {
            line: None,
            column: None,
            field: Some(field.to_string()),
            message,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.field, self.line) {
            (Some(field), _) => write!(f, "field {field}: {}", self.message),
            (None, Some(line)) => write!(
                f,
                "line {line}, column {}: {}",
                self.column.unwrap_or(0),
                self.message
            ),
            (None, None) => f.write_str(&self.message),
        }
    }
}

pub fn parse_matrix(text: &[u8]) -> Result<DualMatrix, ParseError> {
    let doc: MatrixDocument = serde_json::from_slice(text).map_err(|e| ParseError {
        line: Some(e.line()),
        column: Some(e.column()),
        field: None,
        message: e.to_string(),
    })?;
    doc.to_matrix()
}

pub fn print_matrix(m: &DualMatrix) -> String {
    serde_json::to_string(&MatrixDocument::from_matrix(m)).expect("matrix documents serialize")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    DoesNotExist,
    Inconsistent,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub status: Status,
    pub operation: String,
    pub inputs: Vec<InputDigest>,
    pub payload: Map<String, Value>,
}

impl ResultDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result documents serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Reads `payload[key]` back as a dual matrix.
    pub fn matrix(&self, key: &str) -> Option<DualMatrix> {
        let doc: MatrixDocument = serde_json::from_value(self.payload.get(key)?.clone()).ok()?;
        doc.to_matrix().ok()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ComputeKind {
    DrazinReal,
    MpReal,
    Ddi,
    Wddi,
    Dgi,
    Wdgi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    Group,
    DrazinK,
    WddiT,
    Wdgi,
}

impl From<VerifyKind> for InverseKind {
    fn from(k: VerifyKind) -> Self {
        match k {
            VerifyKind::Group => InverseKind::Group,
            VerifyKind::DrazinK => InverseKind::DrazinK,
            VerifyKind::WddiT => InverseKind::WddiT,
            VerifyKind::Wdgi => InverseKind::Wdgi,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "dual-ginv",
    version,
    about = "Exact generalized inverses of dual matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Appreciable/dual rank and index, and whether the dual Drazin inverse exists.
    Info { file: PathBuf },
    /// Compute an inverse of the matrix in FILE.
    Compute {
        #[arg(long, value_enum)]
        kind: ComputeKind,
        file: PathBuf,
    },
    /// Check the defining equations of KIND for candidate XFILE against FILE.
    Verify {
        #[arg(long, value_enum)]
        kind: VerifyKind,
        file: PathBuf,
        xfile: PathBuf,
    },
    /// Solve A x = b (appreciable index 1), optionally with x restricted to R(A).
    Solve {
        #[arg(long)]
        restricted: bool,
        afile: PathBuf,
        bfile: PathBuf,
    },
}

struct Ctx {
    operation: String,
    inputs: Vec<InputDigest>,
}

impl Ctx {
    fn load(&mut self, path: &Path) -> Result<DualMatrix, (i32, Status, Map<String, Value>)> {
        let bytes = std::fs::read(path)
            .map_err(|e| usage_payload(format!("cannot read {}: {e}", path.display())))?;
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        });
        parse_matrix(&bytes).map_err(|e| {
            let mut p = Map::new();
            p.insert("error".into(), json!(format!("{}: {e}", path.display())));
            if let Some(line) = e.line {
                p.insert("line".into(), json!(line));
            }
            if let Some(field) = &e.field {
                p.insert("field".into(), json!(field));
            }
            (EXIT_USAGE, Status::Error, p)
        })
    }

    fn finish(self, outcome: Outcome) -> (i32, ResultDocument) {
        let (code, status, payload) = match outcome {
            Ok(payload) => (EXIT_OK, Status::Ok, payload),
            Err(e) => e,
        };
        (
            code,
            ResultDocument {
                status,
                operation: self.operation,
                inputs: self.inputs,
                payload,
            },
        )
    }
}

type Outcome = Result<Map<String, Value>, (i32, Status, Map<String, Value>)>;

fn usage_payload(msg: String) -> (i32, Status, Map<String, Value>) {
    let mut p = Map::new();
    p.insert("error".into(), json!(msg));
    (EXIT_USAGE, Status::Error, p)
}

fn error_payload(e: Error) -> (i32, Status, Map<String, Value>) {
    let mut p = Map::new();
    p.insert("error".into(), json!(e.to_string()));
    let code = match e {
        Error::DoesNotExist { obstruction, .. } => {
            p.insert("obstruction".into(), real_value(&obstruction));
            return (EXIT_DOES_NOT_EXIST, Status::DoesNotExist, p);
        }
        Error::Inconsistent { residual } => {
            p.insert("failed_condition".into(), json!("projection"));
            if let Some((s, d)) = residual {
                let r = DualMatrix::new(s, d).expect("residual parts share a shape");
                p.insert("residual".into(), json!(MatrixDocument::from_matrix(&r)));
            }
            return (EXIT_INCONSISTENT, Status::Inconsistent, p);
        }
        Error::InconsistentStandardPart { residual } => {
            p.insert("failed_condition".into(), json!("standard-part"));
            p.insert("residual_std".into(), real_value(&residual));
            return (EXIT_INCONSISTENT, Status::Inconsistent, p);
        }
        Error::InconsistentDualPart {
            residual_std,
            residual_dual,
        } => {
            p.insert("failed_condition".into(), json!("range"));
            let r =
                DualMatrix::new(residual_std, residual_dual).expect("residual parts share a shape");
            p.insert("residual".into(), json!(MatrixDocument::from_matrix(&r)));
            return (EXIT_INCONSISTENT, Status::Inconsistent, p);
        }
        Error::IndexTooLarge { index, .. } => {
            p.insert("index".into(), json!(index));
            EXIT_ERROR
        }
        Error::NotSquare { .. } | Error::DimensionMismatch { .. } => EXIT_USAGE,
        _ => EXIT_ERROR,
    };
    (code, Status::Error, p)
}

fn solutions_payload(mode: &str, sol: &ParametricDualSolutions) -> Map<String, Value> {
    let mut p = Map::new();
    p.insert("mode".into(), json!(mode));
    p.insert(
        "particular".into(),
        json!(MatrixDocument::from_matrix(&sol.particular)),
    );
    let gens: Vec<MatrixDocument> = sol
        .generators
        .iter()
        .map(MatrixDocument::from_matrix)
        .collect();
    p.insert("generators".into(), json!(gens));
    p
}

fn info(a: &DualMatrix) -> Result<Map<String, Value>, Error> {
    let mut p = Map::new();
    let (arank, drank) = rank_profile(a);
    p.insert("rows".into(), json!(a.rows()));
    p.insert("cols".into(), json!(a.cols()));
    p.insert("arank".into(), json!(arank));
    p.insert("drank".into(), json!(drank));
    if a.is_square() {
        let profile = index_profile(a)?;
        let existence = existence_profile(a)?;
        p.insert("aind".into(), json!(profile.aind));
        p.insert("dind".into(), json!(profile.dind));
        p.insert("ddi_exists".into(), json!(existence.ddi_exists));
        p.insert("obstruction".into(), real_value(&existence.obstruction));
    }
    Ok(p)
}

fn compute(kind: ComputeKind, a: &DualMatrix) -> Result<Map<String, Value>, Error> {
    let result = match kind {
        ComputeKind::DrazinReal => DualMatrix::from_std(kernel::drazin(a.std())?),
        ComputeKind::MpReal => DualMatrix::from_std(kernel::moore_penrose(a.std())),
        ComputeKind::Ddi => ddi(a)?,
        ComputeKind::Wddi => wddi(a)?,
        ComputeKind::Dgi => dgi(a)?,
        ComputeKind::Wdgi => wdgi(a)?,
    };
    let mut p = Map::new();
    p.insert("result".into(), json!(MatrixDocument::from_matrix(&result)));
    Ok(p)
}

fn verify_payload(
    kind: VerifyKind,
    a: &DualMatrix,
    x: &DualMatrix,
) -> Result<Map<String, Value>, Error> {
    let report = verify(a, x, kind.into())?;
    let mut p = Map::new();
    p.insert("kind".into(), json!(report.kind.name()));
    p.insert("exponent".into(), json!(report.exponent));
    let eqs: Vec<Value> = report
        .equation_results
        .iter()
        .map(|(label, holds)| json!({"equation": label, "holds": holds}))
        .collect();
    p.insert("equations".into(), Value::Array(eqs));
    p.insert("all_hold".into(), json!(report.all_hold));
    Ok(p)
}

/// Parses `args` (including the program name) and executes one command.
pub fn run<I, T>(args: I) -> (i32, ResultDocument)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let mut ctx = Ctx {
                operation: "usage".into(),
                inputs: Vec::new(),
            };
            let text = e.render().to_string();
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let mut p = Map::new();
                p.insert("usage".into(), json!(text));
                return ctx.finish(Ok(p));
            }
            ctx.operation = "usage".into();
            return ctx.finish(Err(usage_payload(text)));
        }
    };

    let mut ctx = Ctx {
        operation: String::new(),
        inputs: Vec::new(),
    };
    let outcome = match cli.command {
        Command::Info { file } => {
            ctx.operation = "info".into();
            ctx.load(&file)
                .and_then(|a| info(&a).map_err(error_payload))
        }
        Command::Compute { kind, file } => {
            ctx.operation = format!(
                "compute:{}",
                kind.to_possible_value()
                    .expect("no skipped variants")
                    .get_name()
            );
            ctx.load(&file)
                .and_then(|a| compute(kind, &a).map_err(error_payload))
        }
        Command::Verify { kind, file, xfile } => {
            ctx.operation = format!("verify:{}", InverseKind::from(kind).name());
            ctx.load(&file).and_then(|a| {
                let x = ctx.load(&xfile)?;
                verify_payload(kind, &a, &x).map_err(error_payload)
            })
        }
        Command::Solve {
            restricted,
            afile,
            bfile,
        } => {
            ctx.operation = if restricted {
                "solve:restricted"
            } else {
                "solve:general"
            }
            .into();
            ctx.load(&afile).and_then(|a| {
                let b = ctx.load(&bfile)?;
                let sol = if restricted {
                    solve_restricted(&a, &b)
                } else {
                    solve_general(&a, &b)
                };
                sol.map(|s| {
                    solutions_payload(if restricted { "restricted" } else { "general" }, &s)
                })
                .map_err(error_payload)
            })
        }
    };
    ctx.finish(outcome)
}
