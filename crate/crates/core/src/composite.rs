//! Composite systems, product/entangled classification, and mixed states.
//!
//! The joint space of factors `F^d1, …, F^dk` is `F^(d1·…·dk)`, flattened
//! left-factor-major. A mixed state is a nonzero subspace of a state space:
//! a mixture `M` leads to exactly the same possible effects as `span(M)`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::FieldError;
use crate::linalg::{LinalgError, Matrix, Subspace, Vector};
use crate::modal::{self, Effect, MeasurementBasis, ModalError, StateVector, SystemSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompositeError {
    #[error(transparent)]
    Modal(#[from] ModalError),
    #[error("a composite system needs at least two factors, got {0}")]
    TooFewFactors(usize),
    #[error("invalid bipartition: {0}")]
    InvalidSplit(String),
    #[error("expected {expected} factor states, got {found}")]
    FactorCount { expected: usize, found: usize },
    #[error("a mixture needs at least one state")]
    EmptyMixture,
    #[error("a mixed state must be a nonzero subspace")]
    ZeroSubspace,
    #[error("reduction needs a two-factor system, got {0} factors")]
    NotBipartite(usize),
    #[error("factor index {0} out of range")]
    FactorIndex(usize),
}

impl CompositeError {
    pub fn is_bound_exceeded(&self) -> bool {
        matches!(self, CompositeError::Modal(e) if e.is_bound_exceeded())
    }
}

impl From<LinalgError> for CompositeError {
    fn from(e: LinalgError) -> Self {
        CompositeError::Modal(e.into())
    }
}

impl From<FieldError> for CompositeError {
    fn from(e: FieldError) -> Self {
        CompositeError::Modal(e.into())
    }
}

pub type Result<T, E = CompositeError> = std::result::Result<T, E>;

/// An ordered list of factor systems and their joint system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositeSystem {
    factors: Vec<SystemSpec>,
    joint: SystemSpec,
}

impl CompositeSystem {
    pub fn new(factors: Vec<SystemSpec>) -> Result<Self> {
        if factors.len() < 2 {
            return Err(CompositeError::TooFewFactors(factors.len()));
        }
        let field = factors[0].field().clone();
        for f in &factors[1..] {
            field.check(f.field())?;
        }
        let dim = factors.iter().map(SystemSpec::dim).product();
        let joint = SystemSpec::new(&field, dim)?;
        Ok(Self { factors, joint })
    }

    pub fn pair(a: &SystemSpec, b: &SystemSpec) -> Result<Self> {
        Self::new(vec![a.clone(), b.clone()])
    }

    /// `count` copies of the same system.
    pub fn power(system: &SystemSpec, count: usize) -> Result<Self> {
        Self::new(vec![system.clone(); count])
    }

    pub fn factors(&self) -> &[SystemSpec] {
        &self.factors
    }

    pub fn factor(&self, index: usize) -> Result<&SystemSpec> {
        self.factors.get(index).ok_or(CompositeError::FactorIndex(index))
    }

    pub fn joint(&self) -> &SystemSpec {
        &self.joint
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(SystemSpec::dim).collect()
    }

    /// Flattened tensor product of one state per factor.
    pub fn product_state(&self, states: &[StateVector]) -> Result<StateVector> {
        if states.len() != self.factors.len() {
            return Err(CompositeError::FactorCount { expected: self.factors.len(), found: states.len() });
        }
        let mut acc: Option<Vector> = None;
        for (s, sys) in states.iter().zip(&self.factors) {
            sys.check(s.system())?;
            acc = Some(match acc {
                None => s.vector().clone(),
                Some(v) => v.tensor(s.vector())?,
            });
        }
        Ok(StateVector::new(&self.joint, acc.expect("at least two factors"))?)
    }

    /// Lift a single-factor operator to the joint space (identity elsewhere).
    pub fn lift_operator(&self, factor: usize, operator: &Matrix) -> Result<Matrix> {
        self.factor(factor)?;
        let field = self.joint.field();
        let mut acc: Option<Matrix> = None;
        for (i, sys) in self.factors.iter().enumerate() {
            let m = if i == factor { operator.clone() } else { Matrix::identity(field, sys.dim()) };
            acc = Some(match acc {
                None => m,
                Some(a) => a.kron(&m)?,
            });
        }
        Ok(acc.expect("at least two factors"))
    }

    /// The coefficient matrix of a joint state across a bipartition: rows are
    /// indexed by the left factors (in the order listed), columns by the right
    /// factors (in ascending order).
    pub fn reshape(&self, state: &StateVector, split: &Bipartition) -> Result<Matrix> {
        self.joint.check(state.system())?;
        split.validate(self.factors.len())?;
        let right = split.right(self.factors.len());
        let dims = self.dims();
        let d1: usize = split.left.iter().map(|&i| dims[i]).product();
        let d2: usize = right.iter().map(|&i| dims[i]).product();
        let mut data = vec![0u16; d1 * d2];
        let mut digits = vec![0usize; dims.len()];
        for (index, &value) in state.vector().values().iter().enumerate() {
            let mut rest = index;
            for k in (0..dims.len()).rev() {
                digits[k] = rest % dims[k];
                rest /= dims[k];
            }
            let row = split.left.iter().fold(0, |acc, &i| acc * dims[i] + digits[i]);
            let col = right.iter().fold(0, |acc, &i| acc * dims[i] + digits[i]);
            data[row * d2 + col] = value;
        }
        Ok(Matrix::from_raw(self.joint.field(), d1, d2, data))
    }

    /// Regroup the factors into a two-factor system `(left group, right group)`
    /// and permute the state accordingly.
    pub fn regroup(&self, state: &StateVector, split: &Bipartition) -> Result<(CompositeSystem, StateVector)> {
        let m = self.reshape(state, split)?;
        let field = self.joint.field();
        let left = SystemSpec::new(field, m.rows())?;
        let right = SystemSpec::new(field, m.cols())?;
        let pair = CompositeSystem::pair(&left, &right)?;
        let flat: Vec<u16> = m.to_rows().concat();
        let state = StateVector::new(pair.joint(), Vector::from_raw(field, flat))?;
        Ok((pair, state))
    }

    /// Reorder the factors. `order[k]` is the old index of the new factor `k`.
    pub fn permute(&self, state: &StateVector, order: &[usize]) -> Result<(CompositeSystem, StateVector)> {
        let n = self.factors.len();
        let mut seen = vec![false; n];
        if order.len() != n || order.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
            return Err(CompositeError::InvalidSplit(format!("{order:?} is not a permutation of 0..{n}")));
        }
        let permuted = CompositeSystem::new(order.iter().map(|&i| self.factors[i].clone()).collect())?;
        // Row-major reshape with every factor on the left is exactly the
        // permuted flattening.
        let split = Bipartition { left: order[..n - 1].to_vec() };
        let m = self.reshape(state, &split)?;
        let flat: Vec<u16> = m.to_rows().concat();
        let state = StateVector::new(permuted.joint(), Vector::from_raw(self.joint.field(), flat))?;
        Ok((permuted, state))
    }
}

impl fmt::Display for CompositeSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(SystemSpec::to_string).collect();
        f.write_str(&parts.join(" ⊗ "))
    }
}

/// A split of the factor list into a left group and its complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    left: Vec<usize>,
}

impl Bipartition {
    /// Left group `factors[..k]`.
    pub fn at(k: usize) -> Self {
        Self { left: (0..k).collect() }
    }

    pub fn new(left: Vec<usize>) -> Self {
        Self { left }
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self, factors: usize) -> Vec<usize> {
        (0..factors).filter(|i| !self.left.contains(i)).collect()
    }

    fn validate(&self, factors: usize) -> Result<()> {
        let mut seen = vec![false; factors];
        for &i in &self.left {
            if i >= factors {
                return Err(CompositeError::InvalidSplit(format!("factor {i} out of range")));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(CompositeError::InvalidSplit(format!("factor {i} listed twice")));
            }
        }
        if self.left.is_empty() || self.left.len() == factors {
            return Err(CompositeError::InvalidSplit("both sides must be non-empty".into()));
        }
        Ok(())
    }
}

/// Factor states recovered from a product state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductWitness {
    pub left: StateVector,
    pub right: StateVector,
}

/// Decide whether a joint state factorizes across `split`. The state is a
/// product exactly when its reshaped coefficient matrix has rank 1, in which
/// case the matrix is `u vᵀ` and `(u, v)` is returned.
pub fn is_product(
    system: &CompositeSystem,
    state: &StateVector,
    split: &Bipartition,
) -> Result<Option<ProductWitness>> {
    let m = system.reshape(state, split)?;
    if m.rank() > 1 {
        return Ok(None);
    }
    let field = m.field().clone();
    let r = (0..m.rows()).find(|&r| !m.row(r).is_zero()).expect("nonzero state");
    let v = m.row(r);
    let c = v.leading_index().unwrap();
    let inv = field.inv(v.values()[c]).unwrap();
    let u: Vec<u16> = (0..m.rows()).map(|i| field.mul(m.raw(i, c), inv)).collect();
    let left = StateVector::new(&SystemSpec::new(&field, m.rows())?, Vector::from_raw(&field, u))?;
    let right = StateVector::new(&SystemSpec::new(&field, m.cols())?, v)?;
    Ok(Some(ProductWitness { left, right }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusCounts {
    pub total: u64,
    pub product: u64,
    pub entangled: u64,
}

/// Product/entangled counts over every nonzero joint vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub field: String,
    pub dims: Vec<usize>,
    pub total: u64,
    pub product: u64,
    pub entangled: u64,
    /// Counts over one representative per line, when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projective: Option<CensusCounts>,
}

impl fmt::Display for Census {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} total, {} product, {} entangled", self.total, self.product, self.entangled)?;
        if let Some(p) = &self.projective {
            write!(f, " (projective: {} total, {} product, {} entangled)", p.total, p.product, p.entangled)?;
        }
        Ok(())
    }
}

/// Classify every nonzero joint vector across `split`.
pub fn census(system: &CompositeSystem, split: &Bipartition, projective: bool, bound: u64) -> Result<Census> {
    let states = modal::enumerate_states(system.joint(), false, bound)?;
    let mut raw = CensusCounts { total: 0, product: 0, entangled: 0 };
    let mut lines = CensusCounts { total: 0, product: 0, entangled: 0 };
    for s in &states {
        let product = system.reshape(s, split)?.rank() <= 1;
        let v = s.vector();
        let representative = v.values()[v.leading_index().unwrap()] == 1;
        for (counts, include) in [(&mut raw, true), (&mut lines, representative)] {
            if include {
                counts.total += 1;
                if product {
                    counts.product += 1;
                } else {
                    counts.entangled += 1;
                }
            }
        }
    }
    Ok(Census {
        field: system.joint().field().to_string(),
        dims: system.dims(),
        total: raw.total,
        product: raw.product,
        entangled: raw.entangled,
        projective: projective.then_some(lines),
    })
}

/// A mixed state: a nonzero subspace of a system's state space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Subspace", into = "Subspace")]
pub struct MixedState {
    subspace: Subspace,
}

impl From<MixedState> for Subspace {
    fn from(m: MixedState) -> Self {
        m.subspace
    }
}

impl TryFrom<Subspace> for MixedState {
    type Error = CompositeError;

    fn try_from(subspace: Subspace) -> Result<Self> {
        let system = SystemSpec::new(subspace.field(), subspace.ambient_dim())?;
        MixedState::new(&system, subspace)
    }
}

impl MixedState {
    pub fn new(system: &SystemSpec, subspace: Subspace) -> Result<Self> {
        system.field().check(subspace.field())?;
        if subspace.ambient_dim() != system.dim() {
            return Err(LinalgError::DimensionMismatch { expected: system.dim(), found: subspace.ambient_dim() }.into());
        }
        if subspace.rank() == 0 {
            return Err(CompositeError::ZeroSubspace);
        }
        Ok(Self { subspace })
    }

    pub fn system(&self) -> SystemSpec {
        SystemSpec::new(self.subspace.field(), self.subspace.ambient_dim()).expect("validated on construction")
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn rank(&self) -> usize {
        self.subspace.rank()
    }

    /// A mixed state of rank 1 is a pure state.
    pub fn is_pure(&self) -> bool {
        self.rank() == 1
    }

    pub fn is_full(&self) -> bool {
        self.subspace.is_full()
    }

    pub fn contains(&self, state: &StateVector) -> Result<bool> {
        self.system().check(state.system())?;
        Ok(self.subspace.contains(state.vector())?)
    }

    /// True iff the effect vanishes on every member, equivalently on every
    /// canonical basis row.
    pub fn effect_impossible(&self, effect: &Effect) -> Result<bool> {
        self.system().check(effect.system())?;
        Ok(self.subspace.basis_vectors().iter().all(|row| effect.functional().pair_raw(row) == 0))
    }
}

/// The mixed state of a mixture: the span of its members.
pub fn mixture_mixed_state(states: &[StateVector]) -> Result<MixedState> {
    let system = states.first().ok_or(CompositeError::EmptyMixture)?.system().clone();
    let vectors: Vec<Vector> = states
        .iter()
        .map(|s| system.check(s.system()).map(|_| s.vector().clone()))
        .collect::<Result<_, _>>()?;
    MixedState::new(&system, Subspace::span(system.field(), system.dim(), &vectors)?)
}

pub fn mixed_state_effect_impossible(mixed: &MixedState, effect: &Effect) -> Result<bool> {
    mixed.effect_impossible(effect)
}

/// The mixed state of factor `keep` of a two-factor joint state: expand the
/// joint state along a basis `{|a⟩}` of the other factor as `Σ_a |a⟩⊗|ψ_a⟩`
/// and span the nonzero conditional vectors `ψ_a`. The result does not depend
/// on the basis chosen.
pub fn reduce(
    system: &CompositeSystem,
    joint: &StateVector,
    keep: usize,
    basis_for_other: &MeasurementBasis,
) -> Result<MixedState> {
    let conditionals = conditional_states(system, joint, keep, basis_for_other)?;
    let vectors: Vec<Vector> = conditionals.into_iter().flatten().map(StateVector::into_vector).collect();
    let kept = system.factor(keep)?;
    MixedState::new(kept, Subspace::span(kept.field(), kept.dim(), &vectors)?)
}

/// The conditional states `ψ_a = (⟨a| ⊗ 1)|ψ⟩` (or `(1 ⊗ ⟨a|)|ψ⟩`) of the
/// kept factor, one per outcome of `basis_for_other`; `None` where `ψ_a = 0`.
pub fn conditional_states(
    system: &CompositeSystem,
    joint: &StateVector,
    keep: usize,
    basis_for_other: &MeasurementBasis,
) -> Result<Vec<Option<StateVector>>> {
    if system.factors().len() != 2 {
        return Err(CompositeError::NotBipartite(system.factors().len()));
    }
    if keep > 1 {
        return Err(CompositeError::FactorIndex(keep));
    }
    let other = 1 - keep;
    system.factor(other)?.check(basis_for_other.system())?;
    let m = system.reshape(joint, &Bipartition::at(1))?;
    // Contract the discarded factor's index with each dual effect.
    let oriented = if keep == 1 { m.transpose() } else { m };
    let kept = system.factor(keep)?;
    basis_for_other
        .effects()
        .iter()
        .map(|e| {
            let v = oriented.apply(e.functional())?;
            Ok((!v.is_zero()).then(|| StateVector::new(kept, v)).transpose()?)
        })
        .collect()
}

/// Render a vector in ket notation over the given factor dimensions, e.g.
/// `|0,0⟩ + |1,1⟩` or `2|0⟩ + (x+1)|1⟩`. Unit coefficients are omitted.
pub fn ket_notation(vector: &Vector, dims: &[usize]) -> String {
    let field = vector.field();
    let mut terms = Vec::new();
    for (index, &value) in vector.values().iter().enumerate() {
        if value == 0 {
            continue;
        }
        let mut digits = vec![0usize; dims.len()];
        let mut rest = index;
        for k in (0..dims.len()).rev() {
            digits[k] = rest % dims[k];
            rest /= dims[k];
        }
        let label: Vec<String> = digits.iter().map(usize::to_string).collect();
        let coeff = match field.format_value(value) {
            _ if value == 1 => String::new(),
            c if c.contains('+') => format!("({c})"),
            c => c,
        };
        terms.push(format!("{coeff}|{}⟩", label.join(",")));
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::modal::{mobit, DEFAULT_STATE_BOUND};

    fn two_mobits() -> CompositeSystem {
        let m = mobit();
        CompositeSystem::pair(&m.system, &m.system).unwrap()
    }

    fn joint(values: &[u64]) -> StateVector {
        StateVector::from_values(two_mobits().joint(), values).unwrap()
    }

    #[test]
    fn product_state_examples() {
        let m = mobit();
        let pair = two_mobits();
        let ps = |a: &StateVector, b: &StateVector| pair.product_state(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(ps(&m.zero, &m.one), joint(&[0, 1, 0, 0]));
        assert_eq!(ps(&m.sigma, &m.sigma), joint(&[1, 1, 1, 1]));
        assert_eq!(ps(&m.sigma, &m.zero), joint(&[1, 0, 1, 0]));
        assert!(matches!(pair.product_state(&[m.zero.clone()]), Err(CompositeError::FactorCount { .. })));
    }

    #[test]
    fn is_product_examples() {
        let m = mobit();
        let pair = two_mobits();
        let split = Bipartition::at(1);
        let w = is_product(&pair, &joint(&[0, 1, 0, 0]), &split).unwrap().unwrap();
        assert_eq!((w.left.vector(), w.right.vector()), (m.zero.vector(), m.one.vector()));
        assert!(is_product(&pair, &joint(&[0, 1, 1, 0]), &split).unwrap().is_none());
        assert!(is_product(&pair, &joint(&[1, 0, 0, 1]), &split).unwrap().is_none());
        assert!(matches!(is_product(&pair, &joint(&[1, 0, 0, 1]), &Bipartition::at(0)), Err(CompositeError::InvalidSplit(_))));
        assert!(matches!(is_product(&pair, &joint(&[1, 0, 0, 1]), &Bipartition::at(2)), Err(CompositeError::InvalidSplit(_))));
        assert!(matches!(
            is_product(&pair, &joint(&[1, 0, 0, 1]), &Bipartition::new(vec![3])),
            Err(CompositeError::InvalidSplit(_))
        ));
    }

    #[test]
    fn two_mobit_census() {
        let c = census(&two_mobits(), &Bipartition::at(1), false, DEFAULT_STATE_BOUND).unwrap();
        assert_eq!((c.total, c.product, c.entangled), (15, 9, 6));
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"field":"GF(2)","dims":[2,2],"total":15,"product":9,"entangled":6}"#
        );
    }

    #[test]
    fn permute_and_regroup() {
        let m = mobit();
        let three = CompositeSystem::power(&m.system, 3).unwrap();
        let s = three.product_state(&[m.zero.clone(), m.one.clone(), m.sigma.clone()]).unwrap();
        let (swapped, t) = three.permute(&s, &[2, 0, 1]).unwrap();
        assert_eq!(t, swapped.product_state(&[m.sigma.clone(), m.zero.clone(), m.one.clone()]).unwrap());
        let (pair, g) = three.regroup(&s, &Bipartition::new(vec![1, 0])).unwrap();
        assert_eq!(pair.dims(), vec![4, 2]);
        let left = CompositeSystem::pair(&m.system, &m.system).unwrap().product_state(&[m.one.clone(), m.zero.clone()]).unwrap();
        let right = StateVector::new(pair.factor(1).unwrap(), m.sigma.vector().clone()).unwrap();
        let left = StateVector::new(pair.factor(0).unwrap(), left.into_vector()).unwrap();
        assert_eq!(g, pair.product_state(&[left, right]).unwrap());
        assert!(three.permute(&s, &[0, 0, 1]).is_err());
    }

    #[test]
    fn lifted_operator_acts_on_one_factor() {
        let m = mobit();
        let pair = two_mobits();
        let f = m.system.field();
        let g = Matrix::from_rows(f, &[vec![0, 1], vec![1, 0]]).unwrap();
        let lifted = pair.lift_operator(1, &g).unwrap();
        let s = pair.product_state(&[m.zero.clone(), m.zero.clone()]).unwrap();
        let out = modal::evolve(&s, &lifted).unwrap();
        assert_eq!(out, pair.product_state(&[m.zero.clone(), m.one.clone()]).unwrap());
        assert!(pair.lift_operator(2, &g).is_err());
    }

    #[test]
    fn mixture_examples() {
        let m = mobit();
        assert_eq!(mixture_mixed_state(&[m.zero.clone()]).unwrap().rank(), 1);
        let a = mixture_mixed_state(&[m.zero.clone(), m.one.clone()]).unwrap();
        let b = mixture_mixed_state(&[m.zero.clone(), m.sigma.clone()]).unwrap();
        assert!(a.is_full());
        assert_eq!(a, b);
        assert_eq!(mixture_mixed_state(&[]).unwrap_err(), CompositeError::EmptyMixture);
    }

    #[test]
    fn impossible_effect_examples() {
        let m = mobit();
        let [e0, e1, es] = m.effects();
        let full = mixture_mixed_state(&[m.zero.clone(), m.one.clone()]).unwrap();
        assert!(!mixed_state_effect_impossible(&full, &e0).unwrap());
        let sig = mixture_mixed_state(&[m.sigma.clone()]).unwrap();
        assert!(mixed_state_effect_impossible(&sig, &es).unwrap());
        let zero = mixture_mixed_state(&[m.zero.clone()]).unwrap();
        assert!(mixed_state_effect_impossible(&zero, &e1).unwrap());
    }

    #[test]
    fn reduce_examples() {
        let m = mobit();
        let pair = two_mobits();
        let s = joint(&[0, 1, 1, 0]);
        assert!(reduce(&pair, &s, 1, &m.z).unwrap().is_full());
        assert!(reduce(&pair, &s, 1, &m.x).unwrap().is_full());
        let p = joint(&[0, 1, 0, 0]);
        let one_line = mixture_mixed_state(&[m.one.clone()]).unwrap();
        for basis in m.measurements() {
            assert_eq!(reduce(&pair, &p, 1, basis).unwrap(), one_line);
        }
        let zero_line = mixture_mixed_state(&[m.zero.clone()]).unwrap();
        assert_eq!(reduce(&pair, &p, 0, &m.y).unwrap(), zero_line);
        assert!(matches!(reduce(&pair, &p, 2, &m.y), Err(CompositeError::FactorIndex(2))));
        let three = CompositeSystem::power(&m.system, 3).unwrap();
        let t = three.product_state(&[m.zero.clone(), m.zero.clone(), m.zero.clone()]).unwrap();
        assert!(matches!(reduce(&three, &t, 0, &m.z), Err(CompositeError::NotBipartite(3))));
    }

    #[test]
    fn mixed_state_validation() {
        let m = mobit();
        let f = m.system.field();
        assert_eq!(MixedState::new(&m.system, Subspace::zero(f, 2)).unwrap_err(), CompositeError::ZeroSubspace);
        assert!(MixedState::new(&m.system, Subspace::full(f, 3)).is_err());
        let f3 = FieldSpec::prime(3).unwrap();
        assert!(MixedState::new(&m.system, Subspace::full(&f3, 2)).is_err());
    }

    #[test]
    fn composite_validation() {
        let m = mobit();
        assert_eq!(CompositeSystem::new(vec![m.system.clone()]).unwrap_err(), CompositeError::TooFewFactors(1));
        let f3 = FieldSpec::prime(3).unwrap();
        let other = SystemSpec::new(&f3, 2).unwrap();
        assert!(CompositeSystem::pair(&m.system, &other).is_err());
    }

    #[test]
    fn mixed_state_json() {
        let m = mobit();
        let sig = mixture_mixed_state(&[m.sigma.clone()]).unwrap();
        let text = serde_json::to_string(&sig).unwrap();
        assert_eq!(text, r#"{"field":"GF(2)","dim":2,"rref":[[1,1]]}"#);
        assert_eq!(serde_json::from_str::<MixedState>(&text).unwrap(), sig);
        assert!(serde_json::from_str::<MixedState>(r#"{"field":"GF(2)","dim":2,"rref":[]}"#).is_err());
    }
}
