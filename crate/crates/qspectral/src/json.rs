//! JSON file formats: one object per file, floats written with 17
//! significant digits so every value round-trips bit-exactly.
//!
//! Quaternions serialize as 4-arrays [w, x, y, z]; vectors as lists of
//! 4-arrays; matrices as {"n", "entries"} row-major; spectra as lists of
//! {"re", "im", "mult", "kind"}. Parsing goes through serde_json (whose
//! decimal conversion is correctly rounded); writing goes through the small
//! renderer in this module because serde_json emits shortest-form floats.

use crate::compact::{CompactModel, TailFamily, TailRule, TruncationReport};
use crate::error::{Error, Result};
use crate::hilbert::QVector;
use crate::operator::{OperatorClass, QMatrix};
use crate::quaternion::{CircularSet, ImaginaryUnit, Quaternion};
use crate::spectral::{AjbDecomposition, SpectralDecomposition, SphericalSpectrum};
use serde::Deserialize;

/// A float rendered with 17 significant digits (exponent form).
pub fn format_f64(v: f64) -> String {
    assert!(v.is_finite(), "non-finite value in JSON output");
    format!("{v:.16e}")
}

/// Owned JSON value with deterministic key order.
#[derive(Debug, Clone)]
pub enum JVal {
    Null,
    Bool(bool),
    Int(i64),
    Num(f64),
    Str(String),
    Arr(Vec<JVal>),
    Obj(Vec<(&'static str, JVal)>),
}

impl JVal {
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, 0);
        out.push('\n');
        out
    }

    fn write(&self, out: &mut String, indent: usize) {
        match self {
            JVal::Null => out.push_str("null"),
            JVal::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            JVal::Int(i) => out.push_str(&i.to_string()),
            JVal::Num(v) => out.push_str(&format_f64(*v)),
            JVal::Str(s) => {
                out.push('"');
                for ch in s.chars() {
                    match ch {
                        '"' => out.push_str("\\\""),
                        '\\' => out.push_str("\\\\"),
                        '\n' => out.push_str("\\n"),
                        c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
                        c => out.push(c),
                    }
                }
                out.push('"');
            }
            JVal::Arr(items) => {
                if items.is_empty() {
                    out.push_str("[]");
                    return;
                }
                out.push('[');
                for (k, item) in items.iter().enumerate() {
                    if k > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    push_indent(out, indent + 1);
                    item.write(out, indent + 1);
                }
                out.push('\n');
                push_indent(out, indent);
                out.push(']');
            }
            JVal::Obj(fields) => {
                if fields.is_empty() {
                    out.push_str("{}");
                    return;
                }
                out.push('{');
                for (k, (key, val)) in fields.iter().enumerate() {
                    if k > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    push_indent(out, indent + 1);
                    out.push('"');
                    out.push_str(key);
                    out.push_str("\": ");
                    val.write(out, indent + 1);
                }
                out.push('\n');
                push_indent(out, indent);
                out.push('}');
            }
        }
    }
}

fn push_indent(out: &mut String, level: usize) {
    for _ in 0..level {
        out.push_str("  ");
    }
}

pub fn quaternion_to_json(q: &Quaternion) -> JVal {
    JVal::Arr(q.to_array().iter().map(|&v| JVal::Num(v)).collect())
}

pub fn qvector_to_json(v: &QVector) -> JVal {
    JVal::Arr(v.entries().iter().map(quaternion_to_json).collect())
}

pub fn matrix_to_json(m: &QMatrix) -> JVal {
    let rows: Vec<JVal> = (0..m.rows())
        .map(|r| {
            JVal::Arr(
                (0..m.cols())
                    .map(|c| quaternion_to_json(&m.get(r, c)))
                    .collect(),
            )
        })
        .collect();
    JVal::Obj(vec![
        ("n", JVal::Int(m.rows() as i64)),
        ("entries", JVal::Arr(rows)),
    ])
}

pub fn circular_set_to_json(set: &CircularSet) -> JVal {
    JVal::Arr(
        set.points()
            .iter()
            .map(|p| {
                JVal::Obj(vec![
                    ("re", JVal::Num(p.re)),
                    ("im", JVal::Num(p.im)),
                    ("mult", JVal::Int(p.mult as i64)),
                    ("kind", JVal::Str("point".into())),
                ])
            })
            .collect(),
    )
}

pub fn spectrum_to_json(spectrum: &SphericalSpectrum, radius: f64) -> JVal {
    JVal::Obj(vec![
        ("spectrum", circular_set_to_json(&spectrum.points)),
        ("radius", JVal::Num(radius)),
        (
            "spherical_certified",
            JVal::Bool(spectrum.spherical_certified),
        ),
    ])
}

pub fn class_to_json(class: &OperatorClass) -> JVal {
    JVal::Obj(vec![
        ("normal", JVal::Bool(class.normal)),
        ("self_adjoint", JVal::Bool(class.self_adjoint)),
        ("anti_self_adjoint", JVal::Bool(class.anti_self_adjoint)),
        ("unitary", JVal::Bool(class.unitary)),
        ("positive", JVal::Bool(class.positive)),
        ("tol", JVal::Num(class.tol)),
    ])
}

pub fn decomposition_to_json(
    dec: &SpectralDecomposition,
    ajb: &AjbDecomposition,
    canonical: &SpectralDecomposition,
) -> JVal {
    JVal::Obj(vec![
        ("iota", quaternion_to_json(&dec.iota.quaternion())),
        (
            "basis",
            JVal::Arr(dec.basis.vectors().iter().map(qvector_to_json).collect()),
        ),
        (
            "lambdas",
            JVal::Arr(dec.lambdas.iter().map(quaternion_to_json).collect()),
        ),
        ("residual", JVal::Num(ajb.residual)),
        (
            "ajb",
            JVal::Obj(vec![
                ("a", matrix_to_json(&ajb.a)),
                ("b", matrix_to_json(&ajb.b)),
                ("j", matrix_to_json(&ajb.j)),
                ("residual", JVal::Num(ajb.residual)),
            ]),
        ),
        (
            "canonical",
            JVal::Obj(vec![
                (
                    "basis",
                    JVal::Arr(
                        canonical
                            .basis
                            .vectors()
                            .iter()
                            .map(qvector_to_json)
                            .collect(),
                    ),
                ),
                (
                    "lambdas",
                    JVal::Arr(canonical.lambdas.iter().map(quaternion_to_json).collect()),
                ),
            ]),
        ),
    ])
}

pub fn truncation_reports_to_json(reports: &[TruncationReport]) -> JVal {
    JVal::Arr(
        reports
            .iter()
            .map(|r| {
                JVal::Obj(vec![
                    ("N", JVal::Int(r.level as i64)),
                    ("tail_norm", JVal::Num(r.tail_norm)),
                    ("min_modulus", JVal::Num(r.min_modulus)),
                    ("max_modulus", JVal::Num(r.max_modulus)),
                    ("norm", JVal::Num(r.norm)),
                    ("spectrum", circular_set_to_json(&r.spectrum)),
                ])
            })
            .collect(),
    )
}

// ---- readers ----

#[derive(Deserialize)]
struct MatrixFile {
    n: usize,
    entries: Vec<Vec<[f64; 4]>>,
}

fn matrix_from_file(file: MatrixFile) -> Result<QMatrix> {
    if file.entries.len() != file.n || file.entries.iter().any(|r| r.len() != file.n) {
        return Err(Error::Parse(format!(
            "matrix declared {0}x{0} but entries disagree",
            file.n
        )));
    }
    QMatrix::from_rows(
        file.entries
            .into_iter()
            .map(|row| row.into_iter().map(Quaternion::from_array).collect())
            .collect(),
    )
}

/// Parses {"n", "entries"} into a square matrix.
pub fn parse_matrix(text: &str) -> Result<QMatrix> {
    let file: MatrixFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("matrix file: {e}")))?;
    matrix_from_file(file)
}

#[derive(Deserialize)]
struct SynthesisFile {
    basis: Vec<Vec<[f64; 4]>>,
    lambdas: Vec<[f64; 4]>,
    /// Scalar-ring tag of the basis: "H" (default) or "C_iota".
    #[serde(default)]
    scalars: Option<String>,
}

/// Parses a synthesis input: basis vectors and the eigenvalue map.
pub fn parse_synthesis_input(text: &str) -> Result<(Vec<QVector>, Vec<Quaternion>)> {
    let file: SynthesisFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("synthesis file: {e}")))?;
    if let Some(tag) = &file.scalars {
        if tag != "H" && tag != "C_iota" {
            return Err(Error::Parse(format!(
                "unknown scalars tag '{tag}' (expected \"H\" or \"C_iota\")"
            )));
        }
    }
    let vectors: Vec<QVector> = file
        .basis
        .into_iter()
        .map(|v| QVector::new(v.into_iter().map(Quaternion::from_array).collect()))
        .collect();
    let lambdas: Vec<Quaternion> = file
        .lambdas
        .into_iter()
        .map(Quaternion::from_array)
        .collect();
    if vectors.len() != lambdas.len() {
        return Err(Error::Parse(format!(
            "{} basis vectors but {} eigenvalues",
            vectors.len(),
            lambdas.len()
        )));
    }
    Ok((vectors, lambdas))
}

#[derive(Deserialize)]
struct TailParams {
    c_re: f64,
    c_im: f64,
    #[serde(default)]
    r: Option<f64>,
}

#[derive(Deserialize)]
struct TailFile {
    family: String,
    params: TailParams,
    slice: [f64; 4],
}

#[derive(Deserialize)]
struct ModelFile {
    head: Option<MatrixFile>,
    tail: Option<TailFile>,
    #[serde(rename = "N")]
    n: usize,
    #[serde(default)]
    rotate_seed: Option<u64>,
}

/// Parses a compact-model file.
pub fn parse_model(text: &str) -> Result<CompactModel> {
    let file: ModelFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("model file: {e}")))?;
    let head = file.head.map(matrix_from_file).transpose()?;
    let tail = file
        .tail
        .map(|t| -> Result<TailRule> {
            let slice = ImaginaryUnit::new(Quaternion::from_array(t.slice), 1e-9)?;
            let family = match t.family.as_str() {
                "harmonic" => TailFamily::Harmonic,
                "geometric" => TailFamily::Geometric {
                    ratio: t
                        .params
                        .r
                        .ok_or_else(|| Error::Parse("geometric tail needs params.r".into()))?,
                },
                other => return Err(Error::Parse(format!("unknown tail family '{other}'"))),
            };
            TailRule::new(family, t.params.c_re, t.params.c_im, slice)
        })
        .transpose()?;
    CompactModel::new(head, tail, file.n, file.rotate_seed)
}
