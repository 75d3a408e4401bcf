//! Single-system modal semantics: states, effects, measurements, evolution.
//!
//! A measurement is a basis with one outcome label per element. Whether an
//! outcome is possible for a state is decided in dual form: the outcome `a` is
//! possible iff the dual functional `⟨a|` does not vanish on the state. A basis
//! may be given either as states (primal rows, dualized on construction) or
//! directly as effects (dual rows).

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldError, FieldSpec};
use crate::linalg::{wire, LinalgError, Matrix, Subspace, Vector};

/// Default cap on the number of vectors an enumeration may visit.
pub const DEFAULT_STATE_BOUND: u64 = 1 << 20;

/// Default cap on `|GL(d, q)|` for operator enumeration.
pub const DEFAULT_OPERATOR_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModalError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("system mismatch: expected {expected}, found {found}")]
    SystemMismatch { expected: String, found: String },
    #[error("a system needs dimension at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("the zero vector is not a state")]
    ZeroState,
    #[error("the zero functional is not an effect")]
    ZeroEffect,
    #[error("invalid outcome labels: {0}")]
    Labels(String),
    #[error("measurement rows do not form a basis")]
    NotABasis,
    #[error("evolution operator is singular")]
    SingularOperator,
    #[error("operator shape {rows}x{cols} does not act on dimension {dim}")]
    OperatorShape { rows: usize, cols: usize, dim: usize },
    #[error("enumeration of {count} items exceeds the bound {bound}")]
    BoundExceeded { count: u128, bound: u64 },
}

impl ModalError {
    /// True for enumeration bounds and the field-order bound.
    pub fn is_bound_exceeded(&self) -> bool {
        matches!(
            self,
            ModalError::BoundExceeded { .. } | ModalError::Linalg(LinalgError::Field(FieldError::OrderTooLarge { .. }))
        )
    }
}

impl From<FieldError> for ModalError {
    fn from(e: FieldError) -> Self {
        ModalError::Linalg(e.into())
    }
}

pub type Result<T, E = ModalError> = std::result::Result<T, E>;

/// A state space `F^d` with `d ≥ 2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SystemSpec {
    field: FieldSpec,
    dim: usize,
}

impl SystemSpec {
    pub fn new(field: &FieldSpec, dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(ModalError::DimensionTooSmall(dim));
        }
        Ok(Self { field: field.clone(), dim })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of nonzero vectors, `q^d − 1`.
    pub fn vector_count(&self) -> u128 {
        (self.field.order() as u128).pow(self.dim as u32) - 1
    }

    pub(crate) fn check(&self, other: &SystemSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(ModalError::SystemMismatch { expected: self.to_string(), found: other.to_string() })
        }
    }

    fn check_vector(&self, v: &Vector) -> Result<()> {
        self.field.check(v.field())?;
        if v.dim() != self.dim {
            return Err(LinalgError::DimensionMismatch { expected: self.dim, found: v.dim() }.into());
        }
        Ok(())
    }
}

impl fmt::Display for SystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.field, self.dim)
    }
}

impl std::str::FromStr for SystemSpec {
    type Err = ModalError;

    /// Parses `GF(q)^d`, the [`fmt::Display`] form.
    fn from_str(text: &str) -> Result<Self> {
        let err = || FieldError::Parse { what: "system spec", input: text.to_string() };
        let (field, dim) = text.trim().rsplit_once('^').ok_or_else(err)?;
        let dim: usize = dim.trim().parse().map_err(|_| err())?;
        let field: FieldSpec = field.parse().map_err(|_| err())?;
        SystemSpec::new(&field, dim)
    }
}

impl fmt::Debug for SystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SystemSpec({self})")
    }
}

/// A nonzero vector of a system's state space.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "StateRepr", into = "StateRepr")]
pub struct StateVector {
    system: SystemSpec,
    coeffs: Vector,
}

impl StateVector {
    pub fn new(system: &SystemSpec, coeffs: Vector) -> Result<Self> {
        system.check_vector(&coeffs)?;
        if coeffs.is_zero() {
            return Err(ModalError::ZeroState);
        }
        Ok(Self { system: system.clone(), coeffs })
    }

    pub fn from_values(system: &SystemSpec, values: &[u64]) -> Result<Self> {
        Self::new(system, Vector::from_values(system.field(), values)?)
    }

    pub fn system(&self) -> &SystemSpec {
        &self.system
    }

    pub fn vector(&self) -> &Vector {
        &self.coeffs
    }

    pub fn into_vector(self) -> Vector {
        self.coeffs
    }

    /// Sum of two states; fails when the sum is the zero vector.
    pub fn superpose(&self, other: &StateVector) -> Result<StateVector> {
        self.system.check(&other.system)?;
        StateVector::new(&self.system, self.coeffs.add(&other.coeffs)?)
    }

    pub fn projectively_equal(&self, other: &StateVector) -> bool {
        self.system == other.system && self.coeffs.projectively_equal(&other.coeffs)
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.coeffs.fmt(f)
    }
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}⟩ in {}", self.coeffs, self.system)
    }
}

/// A nonzero linear functional on a system's state space.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "EffectRepr", into = "EffectRepr")]
pub struct Effect {
    system: SystemSpec,
    functional: Vector,
}

impl Effect {
    pub fn new(system: &SystemSpec, functional: Vector) -> Result<Self> {
        system.check_vector(&functional)?;
        if functional.is_zero() {
            return Err(ModalError::ZeroEffect);
        }
        Ok(Self { system: system.clone(), functional })
    }

    pub fn from_values(system: &SystemSpec, values: &[u64]) -> Result<Self> {
        Self::new(system, Vector::from_values(system.field(), values)?)
    }

    pub fn system(&self) -> &SystemSpec {
        &self.system
    }

    pub fn functional(&self) -> &Vector {
        &self.functional
    }

    /// The amplitude `⟨self|state⟩`.
    pub fn amplitude(&self, state: &StateVector) -> Result<crate::field::FieldElement> {
        self.system.check(&state.system)?;
        Ok(self.functional.pair(&state.coeffs)?)
    }

    /// An effect is possible for a state iff its amplitude is nonzero. This
    /// does not depend on which dual basis the effect belongs to.
    pub fn is_possible(&self, state: &StateVector) -> Result<bool> {
        Ok(!self.amplitude(state)?.is_zero())
    }
}

impl fmt::Debug for Effect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}| on {}", self.functional, self.system)
    }
}

/// `effect_possible(e, ψ)`.
pub fn effect_possible(effect: &Effect, state: &StateVector) -> Result<bool> {
    effect.is_possible(state)
}

/// How the rows of a measurement basis were supplied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisForm {
    Primal,
    Dual,
}

/// A labeled measurement: `d` outcome labels and the matching dual effects.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BasisRepr", into = "BasisRepr")]
pub struct MeasurementBasis {
    name: String,
    system: SystemSpec,
    labels: Vec<String>,
    form: BasisForm,
    /// The rows as supplied.
    rows: Matrix,
    /// Row `i` is the effect for outcome `labels[i]`.
    effects: Matrix,
}

impl MeasurementBasis {
    pub fn new(
        name: impl Into<String>,
        system: &SystemSpec,
        labels: Vec<String>,
        form: BasisForm,
        rows: Matrix,
    ) -> Result<Self> {
        system.field().check(rows.field())?;
        if rows.rows() != system.dim() || rows.cols() != system.dim() {
            return Err(ModalError::NotABasis);
        }
        if labels.len() != system.dim() {
            return Err(ModalError::Labels(format!("expected {} labels, got {}", system.dim(), labels.len())));
        }
        let unique: HashSet<&String> = labels.iter().collect();
        if unique.len() != labels.len() {
            return Err(ModalError::Labels("labels must be distinct".into()));
        }
        let effects = match form {
            BasisForm::Primal => rows.dual_basis().map_err(|_| ModalError::NotABasis)?,
            BasisForm::Dual if rows.is_invertible() => rows.clone(),
            BasisForm::Dual => return Err(ModalError::NotABasis),
        };
        Ok(Self { name: name.into(), system: system.clone(), labels, form, rows, effects })
    }

    /// A measurement whose outcomes correspond to the given basis states.
    pub fn from_states(name: impl Into<String>, labels: &[&str], states: &[StateVector]) -> Result<Self> {
        let system = states.first().ok_or(ModalError::NotABasis)?.system().clone();
        let vectors: Vec<Vector> = states
            .iter()
            .map(|s| system.check(s.system()).map(|_| s.vector().clone()))
            .collect::<Result<_>>()?;
        let rows = Matrix::from_vectors(system.field(), system.dim(), &vectors)?;
        Self::new(name, &system, labels.iter().map(|l| l.to_string()).collect(), BasisForm::Primal, rows)
    }

    /// A measurement given directly by its effects.
    pub fn from_effects(name: impl Into<String>, labels: &[&str], effects: &[Effect]) -> Result<Self> {
        let system = effects.first().ok_or(ModalError::NotABasis)?.system().clone();
        let vectors: Vec<Vector> = effects
            .iter()
            .map(|e| system.check(e.system()).map(|_| e.functional().clone()))
            .collect::<Result<_>>()?;
        let rows = Matrix::from_vectors(system.field(), system.dim(), &vectors)?;
        Self::new(name, &system, labels.iter().map(|l| l.to_string()).collect(), BasisForm::Dual, rows)
    }

    /// The standard basis with labels `0..d`.
    pub fn computational(system: &SystemSpec) -> Self {
        let labels = (0..system.dim()).map(|i| i.to_string()).collect();
        Self::new("computational", system, labels, BasisForm::Primal, Matrix::identity(system.field(), system.dim()))
            .expect("identity is a basis")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn system(&self) -> &SystemSpec {
        &self.system
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn form(&self) -> BasisForm {
        self.form
    }

    pub fn rows(&self) -> &Matrix {
        &self.rows
    }

    /// Effects in dual form, one row per outcome.
    pub fn effect_matrix(&self) -> &Matrix {
        &self.effects
    }

    pub fn effect(&self, index: usize) -> Effect {
        Effect { system: self.system.clone(), functional: self.effects.row(index) }
    }

    pub fn effects(&self) -> Vec<Effect> {
        (0..self.labels.len()).map(|i| self.effect(i)).collect()
    }

    /// The basis states, recovered from the effects when given in dual form.
    pub fn states(&self) -> Vec<StateVector> {
        let primal = match self.form {
            BasisForm::Primal => self.rows.clone(),
            BasisForm::Dual => self.effects.dual_basis().expect("effects form a basis"),
        };
        primal
            .row_vectors()
            .into_iter()
            .map(|v| StateVector { system: self.system.clone(), coeffs: v })
            .collect()
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Same effects with the measurement relabeled.
    pub fn renamed(&self, name: impl Into<String>) -> Self {
        Self { name: name.into(), ..self.clone() }
    }

    /// Expansion coefficients `⟨a|ψ⟩` of a state in this basis.
    pub fn expand(&self, state: &StateVector) -> Result<Vector> {
        self.system.check(state.system())?;
        Ok(self.effects.apply(state.vector())?)
    }
}

impl fmt::Debug for MeasurementBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Measurement {}{:?} effects {}", self.name, self.labels, self.effects)
    }
}

/// The outcomes of a measurement that are possible for a state, in basis
/// order. Never empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PossibilitySet {
    pub measurement: String,
    pub outcomes: Vec<String>,
}

impl PossibilitySet {
    pub fn contains(&self, label: &str) -> bool {
        self.outcomes.iter().any(|o| o == label)
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    /// The single outcome when the result is certain.
    pub fn certain(&self) -> Option<&str> {
        match self.outcomes.as_slice() {
            [only] => Some(only),
            _ => None,
        }
    }
}

impl fmt::Display for PossibilitySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.outcomes.join(" "))
    }
}

/// `P(A|ψ) = {a : ⟨a|ψ⟩ ≠ 0}`.
pub fn possible_outcomes(state: &StateVector, measurement: &MeasurementBasis) -> Result<PossibilitySet> {
    let amplitudes = measurement.expand(state)?;
    let outcomes: Vec<String> = amplitudes
        .values()
        .iter()
        .zip(measurement.labels())
        .filter(|(&a, _)| a != 0)
        .map(|(_, l)| l.clone())
        .collect();
    debug_assert!(!outcomes.is_empty(), "a nonzero state has a nonzero coordinate in every basis");
    Ok(PossibilitySet { measurement: measurement.name().to_string(), outcomes })
}

/// Apply an invertible operator. Singular operators are rejected since they
/// could send a state to the zero vector.
pub fn evolve(state: &StateVector, operator: &Matrix) -> Result<StateVector> {
    let d = state.system().dim();
    if operator.rows() != d || operator.cols() != d {
        return Err(ModalError::OperatorShape { rows: operator.rows(), cols: operator.cols(), dim: d });
    }
    state.system().field().check(operator.field())?;
    if !operator.is_invertible() {
        return Err(ModalError::SingularOperator);
    }
    StateVector::new(state.system(), operator.apply(state.vector())?)
}

/// All nonzero vectors of `F^dim` in counting order (the first coordinate
/// varies fastest), i.e. sorted by `Σ c_i q^i`.
pub(crate) fn nonzero_vectors(field: &FieldSpec, dim: usize, bound: u64) -> Result<Vec<Vector>> {
    let q = field.order() as u128;
    let count = q.pow(dim as u32) - 1;
    if count > bound as u128 {
        return Err(ModalError::BoundExceeded { count, bound });
    }
    let q = q as u64;
    Ok((1..=count as u64)
        .map(|mut code| {
            let coeffs = (0..dim)
                .map(|_| {
                    let c = (code % q) as u16;
                    code /= q;
                    c
                })
                .collect();
            Vector::from_raw(field, coeffs)
        })
        .collect())
}

/// Every state of a system. With `projective`, only one representative per
/// line: the vector whose first nonzero coefficient is 1.
pub fn enumerate_states(system: &SystemSpec, projective: bool, bound: u64) -> Result<Vec<StateVector>> {
    let vectors = nonzero_vectors(system.field(), system.dim(), bound)?;
    Ok(vectors
        .into_iter()
        .filter(|v| !projective || v.values()[v.leading_index().unwrap()] == 1)
        .map(|coeffs| StateVector { system: system.clone(), coeffs })
        .collect())
}

/// `|GL(d, q)| = Π_{i<d} (q^d − q^i)`.
pub fn general_linear_order(q: u64, dim: usize) -> u128 {
    let qd = (q as u128).pow(dim as u32);
    (0..dim as u32).map(|i| qd - (q as u128).pow(i)).product()
}

/// Every invertible `dim × dim` matrix exactly once, built row by row from
/// vectors outside the span of the rows already chosen.
pub fn enumerate_invertible_operators(field: &FieldSpec, dim: usize, bound: u64) -> Result<Vec<Matrix>> {
    let count = general_linear_order(field.order() as u64, dim);
    if count > bound as u128 {
        return Err(ModalError::BoundExceeded { count, bound });
    }
    let candidates = nonzero_vectors(field, dim, u64::MAX)?;
    let mut out = Vec::with_capacity(count as usize);
    let mut chosen: Vec<Vector> = Vec::with_capacity(dim);
    extend_rows(field, dim, &candidates, &mut chosen, &mut out)?;
    debug_assert_eq!(out.len() as u128, count);
    Ok(out)
}

fn extend_rows(
    field: &FieldSpec,
    dim: usize,
    candidates: &[Vector],
    chosen: &mut Vec<Vector>,
    out: &mut Vec<Matrix>,
) -> Result<()> {
    if chosen.len() == dim {
        out.push(Matrix::from_vectors(field, dim, chosen)?);
        return Ok(());
    }
    let span = Subspace::span(field, dim, chosen)?;
    for v in candidates {
        if !span.contains(v)? {
            chosen.push(v.clone());
            extend_rows(field, dim, candidates, chosen, out)?;
            chosen.pop();
        }
    }
    Ok(())
}

/// The two-dimensional system over GF(2) with its three states and the three
/// measurements X, Y, Z.
#[derive(Debug, Clone)]
pub struct Mobit {
    pub system: SystemSpec,
    pub zero: StateVector,
    pub one: StateVector,
    pub sigma: StateVector,
    pub x: MeasurementBasis,
    pub y: MeasurementBasis,
    pub z: MeasurementBasis,
}

impl Mobit {
    pub fn new() -> Self {
        let field = FieldSpec::prime(2).expect("GF(2)");
        let system = SystemSpec::new(&field, 2).expect("d = 2");
        let state = |v: &[u64]| StateVector::from_values(&system, v).expect("nonzero");
        let zero = state(&[1, 0]);
        let one = state(&[0, 1]);
        let sigma = state(&[1, 1]);
        let basis = |name: &str, plus: &StateVector, minus: &StateVector| {
            let labels = [format!("+{}", name.to_lowercase()), format!("-{}", name.to_lowercase())];
            MeasurementBasis::from_states(name, &[&labels[0], &labels[1]], &[plus.clone(), minus.clone()])
                .expect("two distinct mobit states form a basis")
        };
        let z = basis("Z", &zero, &one);
        let x = basis("X", &one, &sigma);
        let y = basis("Y", &sigma, &zero);
        Self { system, zero, one, sigma, x, y, z }
    }

    pub fn states(&self) -> [&StateVector; 3] {
        [&self.zero, &self.one, &self.sigma]
    }

    pub fn measurements(&self) -> [&MeasurementBasis; 3] {
        [&self.x, &self.y, &self.z]
    }

    /// The three nonzero effects ⟨0|, ⟨1|, ⟨σ|.
    pub fn effects(&self) -> [Effect; 3] {
        let e = |v: &[u64]| Effect::from_values(&self.system, v).expect("nonzero");
        [e(&[1, 0]), e(&[0, 1]), e(&[1, 1])]
    }
}

impl Default for Mobit {
    fn default() -> Self {
        Self::new()
    }
}

/// `mobit_system()`.
pub fn mobit() -> Mobit {
    Mobit::new()
}

#[derive(Serialize, Deserialize)]
struct StateRepr {
    field: String,
    dim: usize,
    coeffs: Vec<wire::ElementRepr>,
}

impl From<StateVector> for StateRepr {
    fn from(s: StateVector) -> Self {
        let f = s.system.field();
        Self { field: f.to_string(), dim: s.system.dim, coeffs: wire::encode_row(f, s.coeffs.values()) }
    }
}

impl TryFrom<StateRepr> for StateVector {
    type Error = ModalError;

    fn try_from(r: StateRepr) -> Result<Self> {
        let field = wire::parse_field(&r.field)?;
        let system = SystemSpec::new(&field, r.dim)?;
        let coeffs = wire::decode_row(&field, &r.coeffs)?;
        StateVector::new(&system, Vector::from_raw(&field, coeffs))
    }
}

#[derive(Serialize, Deserialize)]
struct EffectRepr {
    field: String,
    dim: usize,
    functional: Vec<wire::ElementRepr>,
}

impl From<Effect> for EffectRepr {
    fn from(e: Effect) -> Self {
        let f = e.system.field();
        Self { field: f.to_string(), dim: e.system.dim, functional: wire::encode_row(f, e.functional.values()) }
    }
}

impl TryFrom<EffectRepr> for Effect {
    type Error = ModalError;

    fn try_from(r: EffectRepr) -> Result<Self> {
        let field = wire::parse_field(&r.field)?;
        let system = SystemSpec::new(&field, r.dim)?;
        let functional = wire::decode_row(&field, &r.functional)?;
        Effect::new(&system, Vector::from_raw(&field, functional))
    }
}

#[derive(Serialize, Deserialize)]
struct BasisRepr {
    name: String,
    field: String,
    dim: usize,
    form: BasisForm,
    labels: Vec<String>,
    rows: Vec<Vec<wire::ElementRepr>>,
}

impl From<MeasurementBasis> for BasisRepr {
    fn from(m: MeasurementBasis) -> Self {
        let f = m.system.field().clone();
        let rows = m.rows.to_rows().iter().map(|r| wire::encode_row(&f, r)).collect();
        Self { name: m.name, field: f.to_string(), dim: m.system.dim, form: m.form, labels: m.labels, rows }
    }
}

impl TryFrom<BasisRepr> for MeasurementBasis {
    type Error = ModalError;

    fn try_from(r: BasisRepr) -> Result<Self> {
        let field = wire::parse_field(&r.field)?;
        let system = SystemSpec::new(&field, r.dim)?;
        let rows = wire::decode_matrix(&field, Some(r.dim), &r.rows)?;
        MeasurementBasis::new(r.name, &system, r.labels, r.form, rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(set: &PossibilitySet) -> Vec<&str> {
        set.outcomes.iter().map(String::as_str).collect()
    }

    #[test]
    fn mobit_bases_dualize_to_the_effect_table() {
        let m = mobit();
        let [e0, e1, es] = m.effects();
        assert_eq!(m.z.effects(), vec![e0.clone(), e1.clone()]);
        assert_eq!(m.x.effects(), vec![es.clone(), e0.clone()]);
        assert_eq!(m.y.effects(), vec![e1, es]);
        assert_eq!(m.z.states(), vec![m.zero.clone(), m.one.clone()]);
        assert_eq!(m.z.labels(), ["+z", "-z"]);
    }

    #[test]
    fn possibility_examples() {
        let m = mobit();
        assert_eq!(labels(&possible_outcomes(&m.sigma, &m.z).unwrap()), ["+z", "-z"]);
        assert_eq!(labels(&possible_outcomes(&m.sigma, &m.y).unwrap()), ["+y"]);
        assert_eq!(labels(&possible_outcomes(&m.zero, &m.z).unwrap()), ["+z"]);
    }

    #[test]
    fn effect_examples() {
        let m = mobit();
        let [e0, _, es] = m.effects();
        assert!(!effect_possible(&es, &m.sigma).unwrap());
        assert!(effect_possible(&e0, &m.zero).unwrap());
        assert!(!effect_possible(&e0, &m.one).unwrap());
    }

    #[test]
    fn evolve_examples() {
        let m = mobit();
        let f = m.system.field();
        let g = Matrix::from_rows(f, &[vec![0, 1], vec![1, 0]]).unwrap();
        let k = Matrix::from_rows(f, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(evolve(&m.zero, &g).unwrap(), m.one);
        assert_eq!(evolve(&m.one, &k).unwrap(), m.sigma);
        for s in m.states() {
            assert_eq!(&evolve(s, &Matrix::identity(f, 2)).unwrap(), s);
        }
        let singular = Matrix::from_rows(f, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(evolve(&m.zero, &singular).unwrap_err(), ModalError::SingularOperator);
        let wide = Matrix::identity(f, 3);
        assert!(matches!(evolve(&m.zero, &wide).unwrap_err(), ModalError::OperatorShape { .. }));
    }

    #[test]
    fn enumerate_state_examples() {
        let m = mobit();
        let states = enumerate_states(&m.system, false, DEFAULT_STATE_BOUND).unwrap();
        assert_eq!(states, vec![m.zero.clone(), m.one.clone(), m.sigma.clone()]);
        let f2 = FieldSpec::prime(2).unwrap();
        let pair = SystemSpec::new(&f2, 4).unwrap();
        assert_eq!(enumerate_states(&pair, false, DEFAULT_STATE_BOUND).unwrap().len(), 15);
        let f3 = FieldSpec::prime(3).unwrap();
        let sys3 = SystemSpec::new(&f3, 2).unwrap();
        let reps = enumerate_states(&sys3, true, DEFAULT_STATE_BOUND).unwrap();
        // oracle: dedupe all 8 nonzero vectors by scaling
        let all = enumerate_states(&sys3, false, DEFAULT_STATE_BOUND).unwrap();
        let mut lines: Vec<StateVector> = Vec::new();
        for s in all {
            if !lines.iter().any(|l| l.projectively_equal(&s)) {
                lines.push(s);
            }
        }
        assert_eq!(reps.len(), 4);
        assert_eq!(lines.len(), 4);
        for r in &reps {
            assert!(lines.iter().any(|l| l.projectively_equal(r)));
        }
        let big = SystemSpec::new(&f3, 20).unwrap();
        assert!(matches!(enumerate_states(&big, false, DEFAULT_STATE_BOUND), Err(ModalError::BoundExceeded { .. })));
    }

    fn brute_invertible_count(field: &FieldSpec, dim: usize) -> usize {
        let q = field.order() as u64;
        (0..q.pow((dim * dim) as u32))
            .filter(|&code| {
                let mut c = code;
                let rows: Vec<Vec<u64>> = (0..dim)
                    .map(|_| {
                        (0..dim)
                            .map(|_| {
                                let v = c % q;
                                c /= q;
                                v
                            })
                            .collect()
                    })
                    .collect();
                Matrix::from_rows(field, &rows).unwrap().invert().unwrap().is_some()
            })
            .count()
    }

    #[test]
    fn invertible_operator_counts() {
        let f2 = FieldSpec::prime(2).unwrap();
        let f3 = FieldSpec::prime(3).unwrap();
        let gl22 = enumerate_invertible_operators(&f2, 2, DEFAULT_OPERATOR_BOUND).unwrap();
        assert_eq!(gl22.len(), 6);
        assert_eq!(brute_invertible_count(&f2, 2), 6);
        assert_eq!(enumerate_invertible_operators(&f2, 1, DEFAULT_OPERATOR_BOUND).unwrap().len(), 1);
        let gl32 = enumerate_invertible_operators(&f3, 2, DEFAULT_OPERATOR_BOUND).unwrap();
        assert_eq!(gl32.len(), 48);
        assert_eq!(brute_invertible_count(&f3, 2), 48);
        let distinct: HashSet<&Matrix> = gl32.iter().collect();
        assert_eq!(distinct.len(), 48);
        assert!(gl32.iter().all(Matrix::is_invertible));
        assert!(matches!(
            enumerate_invertible_operators(&f3, 4, 1000),
            Err(ModalError::BoundExceeded { .. })
        ));
    }

    #[test]
    fn basis_validation() {
        let m = mobit();
        let f = m.system.field();
        let singular = Matrix::from_rows(f, &[vec![1, 1], vec![1, 1]]).unwrap();
        let labels = vec!["a".to_string(), "b".to_string()];
        assert_eq!(
            MeasurementBasis::new("bad", &m.system, labels.clone(), BasisForm::Primal, singular.clone()).unwrap_err(),
            ModalError::NotABasis
        );
        assert_eq!(
            MeasurementBasis::new("bad", &m.system, labels, BasisForm::Dual, singular).unwrap_err(),
            ModalError::NotABasis
        );
        let dup = vec!["a".to_string(), "a".to_string()];
        assert!(matches!(
            MeasurementBasis::new("dup", &m.system, dup, BasisForm::Dual, Matrix::identity(f, 2)),
            Err(ModalError::Labels(_))
        ));
    }

    #[test]
    fn zero_vectors_rejected() {
        let m = mobit();
        assert_eq!(StateVector::from_values(&m.system, &[0, 0]).unwrap_err(), ModalError::ZeroState);
        assert_eq!(Effect::from_values(&m.system, &[0, 0]).unwrap_err(), ModalError::ZeroEffect);
        assert_eq!(m.zero.superpose(&m.zero).unwrap_err(), ModalError::ZeroState);
        assert!(SystemSpec::new(m.system.field(), 1).is_err());
    }

    #[test]
    fn system_mismatch_is_an_error() {
        let m = mobit();
        let f3 = FieldSpec::prime(3).unwrap();
        let other = SystemSpec::new(&f3, 2).unwrap();
        let s = StateVector::from_values(&other, &[1, 2]).unwrap();
        assert!(possible_outcomes(&s, &m.z).is_err());
        assert!(m.effects()[0].is_possible(&s).is_err());
    }

    #[test]
    fn json_forms_round_trip() {
        let m = mobit();
        let text = serde_json::to_string(&m.sigma).unwrap();
        assert_eq!(text, r#"{"field":"GF(2)","dim":2,"coeffs":[1,1]}"#);
        assert_eq!(serde_json::from_str::<StateVector>(&text).unwrap(), m.sigma);
        let y = serde_json::to_string(&m.y).unwrap();
        assert_eq!(serde_json::from_str::<MeasurementBasis>(&y).unwrap(), m.y);
        let e = serde_json::to_string(&m.effects()[2]).unwrap();
        assert_eq!(serde_json::from_str::<Effect>(&e).unwrap(), m.effects()[2]);
        assert!(serde_json::from_str::<StateVector>(r#"{"field":"GF(2)","dim":2,"coeffs":[0,0]}"#).is_err());
    }
}
