//! Text references to states, measurements and operators.
//!
//! | form | example |
//! |------|---------|
//! | named mobit state | `mobit:0`, `mobit:1`, `mobit:sigma` |
//! | named Bell state | `bell:R`, `bell:S`, `bell:U`, `bell:V` |
//! | coefficients | `GF(3)^2:[1,2]`, `GF(4)^2:[x+1,1]` |
//! | named measurement | `mobit:X`, `mobit:Y`, `mobit:Z`, `bell` |
//! | computational basis | `computational:GF(3)^2` |
//! | named operator | `mobit:1`, `mobit:G`, `mobit:K`, `mobit:KG` |
//! | matrix | `GF(2):[[0,1],[1,0]]` |
//! | inline JSON | any serialized state, measurement or matrix |
//!
//! Extension-field elements inside lists use polynomial notation (`x+1`).

use thiserror::Error;

use crate::field::{FieldError, FieldSpec};
use crate::linalg::{Matrix, Vector};
use crate::modal::{self, MeasurementBasis, ModalError, StateVector, SystemSpec};
use crate::protocols;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("unknown {kind} reference {input:?}")]
    Unknown { kind: &'static str, input: String },
    #[error("invalid inline JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Modal(#[from] ModalError),
}

impl RegistryError {
    pub fn is_bound_exceeded(&self) -> bool {
        matches!(self, RegistryError::Modal(e) if e.is_bound_exceeded())
    }
}

impl From<FieldError> for RegistryError {
    fn from(e: FieldError) -> Self {
        RegistryError::Modal(e.into())
    }
}

impl From<crate::linalg::LinalgError> for RegistryError {
    fn from(e: crate::linalg::LinalgError) -> Self {
        RegistryError::Modal(e.into())
    }
}

pub type Result<T, E = RegistryError> = std::result::Result<T, E>;

fn unknown(kind: &'static str, input: &str) -> RegistryError {
    RegistryError::Unknown { kind, input: input.to_string() }
}

fn json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| RegistryError::Json(e.to_string()))
}

/// Split a bracketed list at top-level commas.
fn split_list(text: &str) -> Option<Vec<&str>> {
    let inner = text.trim().strip_prefix('[')?.strip_suffix(']')?;
    if inner.trim().is_empty() {
        return Some(Vec::new());
    }
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in inner.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(inner[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(inner[start..].trim());
    Some(parts)
}

fn parse_row(field: &FieldSpec, text: &str) -> Option<Result<Vector>> {
    let items = split_list(text)?;
    Some(
        items
            .iter()
            .map(|t| field.parse_element(t))
            .collect::<Result<Vec<_>, _>>()
            .map_err(RegistryError::from)
            .and_then(|els| Ok(Vector::from_elements(field, &els)?)),
    )
}

pub fn resolve_state(text: &str) -> Result<StateVector> {
    let t = text.trim();
    if t.starts_with('{') {
        return json(t);
    }
    let mobit = modal::mobit();
    match t {
        "mobit:0" => return Ok(mobit.zero),
        "mobit:1" => return Ok(mobit.one),
        "mobit:sigma" | "mobit:σ" => return Ok(mobit.sigma),
        _ => {}
    }
    if let Some(label) = t.strip_prefix("bell:") {
        let bell = protocols::build_bell_basis();
        return bell.state(label).cloned().map_err(|_| unknown("state", text));
    }
    let (system, coeffs) = t.split_once(":[").ok_or_else(|| unknown("state", text))?;
    let system: SystemSpec = system.parse()?;
    let vector = parse_row(system.field(), &format!("[{coeffs}")).ok_or_else(|| unknown("state", text))??;
    Ok(StateVector::new(&system, vector)?)
}

pub fn resolve_measurement(text: &str) -> Result<MeasurementBasis> {
    let t = text.trim();
    if t.starts_with('{') {
        return json(t);
    }
    let mobit = modal::mobit();
    match t {
        "mobit:X" => Ok(mobit.x),
        "mobit:Y" => Ok(mobit.y),
        "mobit:Z" => Ok(mobit.z),
        "bell" => Ok(protocols::build_bell_basis().measurement),
        _ => match t.strip_prefix("computational:") {
            Some(system) => Ok(MeasurementBasis::computational(&system.parse()?)),
            None => Err(unknown("measurement", text)),
        },
    }
}

pub fn resolve_operator(text: &str) -> Result<Matrix> {
    let t = text.trim();
    if t.starts_with('{') {
        return json(t);
    }
    if let Some(name) = t.strip_prefix("mobit:") {
        return protocols::mobit_operator(name).map_err(|_| unknown("operator", text));
    }
    let (field, rows) = t.split_once(":[").ok_or_else(|| unknown("operator", text))?;
    let field: FieldSpec = field.parse()?;
    let rows = format!("[{rows}");
    let rows = split_list(&rows).ok_or_else(|| unknown("operator", text))?;
    let vectors = rows
        .iter()
        .map(|r| parse_row(&field, r).ok_or_else(|| unknown("operator", text))?)
        .collect::<Result<Vec<_>>>()?;
    let cols = vectors.first().map_or(0, Vector::dim);
    Ok(Matrix::from_vectors(&field, cols, &vectors)?)
}
