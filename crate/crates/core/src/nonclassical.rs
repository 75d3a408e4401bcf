//! Correlation tables of bipartite states, local hidden variable exclusion,
//! and the no-cloning argument.
//!
//! # Deterministic hidden variables suffice
//!
//! A local hidden variable model assigns to each hidden value `h` a set of
//! possible results `P(E|h)` for every measurement `E`, and the possible joint
//! results of `(V_A, W_B)` are `⋃_h P(V_A|h) × P(W_B|h)`. Pick one element of
//! every `P(E|h)`: the resulting definite assignment is consistent with every
//! cell of the table because each of its pairs already lies in some
//! `P(V_A|h) × P(W_B|h)`. Conversely a consistent definite assignment is itself
//! a one-value model. So a model exists iff the set of consistent definite
//! assignments is non-empty, which is what [`lhv_exclusion_search`] decides by
//! enumeration.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::composite::{Bipartition, CompositeError, CompositeSystem};
use crate::linalg::{LinalgError, Matrix, Subspace, Vector};
use crate::modal::{self, MeasurementBasis, ModalError, StateVector, SystemSpec};

/// Default cap on the number of definite assignments searched.
pub const DEFAULT_ASSIGNMENT_BOUND: u64 = 1_000_000;

/// Witness lists are truncated to this length; counts stay exact.
pub const WITNESS_CAP: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NonclassicalError {
    #[error(transparent)]
    Composite(#[from] CompositeError),
    #[error("assignment does not match the table menus: {0}")]
    MenuMismatch(String),
    #[error("search over {count} assignments exceeds the bound {bound}")]
    BoundExceeded { count: u128, bound: u64 },
    #[error("the inputs sum to zero, so there is no superposition to clone")]
    NoSuperposition,
    #[error("cloning inputs must be distinct states (not scalar multiples)")]
    NotDistinct,
}

impl NonclassicalError {
    pub fn is_bound_exceeded(&self) -> bool {
        match self {
            NonclassicalError::BoundExceeded { .. } => true,
            NonclassicalError::Composite(e) => e.is_bound_exceeded(),
            _ => false,
        }
    }
}

impl From<ModalError> for NonclassicalError {
    fn from(e: ModalError) -> Self {
        NonclassicalError::Composite(e.into())
    }
}

impl From<LinalgError> for NonclassicalError {
    fn from(e: LinalgError) -> Self {
        NonclassicalError::Composite(e.into())
    }
}

pub type Result<T, E = NonclassicalError> = std::result::Result<T, E>;

/// Name and outcome labels of one measurement in a menu.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MenuEntry {
    pub name: String,
    pub labels: Vec<String>,
}

impl From<&MeasurementBasis> for MenuEntry {
    fn from(m: &MeasurementBasis) -> Self {
        Self { name: m.name().to_string(), labels: m.labels().to_vec() }
    }
}

/// Possible joint results for every pair of measurements from two menus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JointOutcomeTable {
    pub alice: Vec<MenuEntry>,
    pub bob: Vec<MenuEntry>,
    /// `cells[i][j]` lists the possible `(alice, bob)` label pairs for
    /// `(alice[i], bob[j])`.
    pub cells: Vec<Vec<Vec<(String, String)>>>,
}

impl JointOutcomeTable {
    pub fn cell(&self, alice: usize, bob: usize) -> &[(String, String)] {
        &self.cells[alice][bob]
    }

    pub fn is_possible(&self, alice: usize, bob: usize, a: &str, b: &str) -> bool {
        self.cells[alice][bob].iter().any(|(x, y)| x == a && y == b)
    }

    /// Number of definite assignments over both menus.
    pub fn assignment_count(&self) -> u128 {
        self.alice.iter().chain(&self.bob).map(|m| m.labels.len() as u128).product()
    }
}

impl fmt::Display for JointOutcomeTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.alice.iter().enumerate() {
            for (j, b) in self.bob.iter().enumerate() {
                let pairs: Vec<String> = self.cells[i][j].iter().map(|(x, y)| format!("({x},{y})")).collect();
                writeln!(f, "{},{}: {}", a.name, b.name, pairs.join(" "))?;
            }
        }
        Ok(())
    }
}

/// Possible joint results of every `(V_A, W_B)` pair for a two-factor state.
/// The joint effect for outcomes `(a, b)` is `⟨a| ⊗ ⟨b|`.
pub fn joint_outcome_table(
    system: &CompositeSystem,
    state: &StateVector,
    menu_a: &[MeasurementBasis],
    menu_b: &[MeasurementBasis],
) -> Result<JointOutcomeTable> {
    if system.factors().len() != 2 {
        return Err(CompositeError::NotBipartite(system.factors().len()).into());
    }
    for m in menu_a {
        system.factors()[0].check(m.system())?;
    }
    for m in menu_b {
        system.factors()[1].check(m.system())?;
    }
    let coeffs = system.reshape(state, &Bipartition::at(1))?;
    let cells = menu_a
        .iter()
        .map(|va| {
            // amplitudes[a][b] = Σ_ij ea_i M_ij eb_j
            let left = va.effect_matrix().multiply(&coeffs)?;
            menu_b
                .iter()
                .map(|wb| {
                    let amps = left.multiply(&wb.effect_matrix().transpose())?;
                    let mut pairs = Vec::new();
                    for (a, la) in va.labels().iter().enumerate() {
                        for (b, lb) in wb.labels().iter().enumerate() {
                            if !amps.get(a, b).is_zero() {
                                pairs.push((la.clone(), lb.clone()));
                            }
                        }
                    }
                    Ok(pairs)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(JointOutcomeTable {
        alice: menu_a.iter().map(MenuEntry::from).collect(),
        bob: menu_b.iter().map(MenuEntry::from).collect(),
        cells,
    })
}

/// Whether `⟨a,a|ψ⟩ = 0` for every nonzero effect `a` of the (identical)
/// factors of a two-factor system.
pub fn product_effect_annihilation_check(system: &CompositeSystem, state: &StateVector) -> Result<bool> {
    if system.factors().len() != 2 {
        return Err(CompositeError::NotBipartite(system.factors().len()).into());
    }
    let factor = &system.factors()[0];
    factor.check(&system.factors()[1])?;
    let coeffs = system.reshape(state, &Bipartition::at(1))?;
    let effects = modal::nonzero_vectors(factor.field(), factor.dim(), modal::DEFAULT_STATE_BOUND)?;
    for e in &effects {
        let image = coeffs.apply(e)?;
        if e.pair_raw(&image) != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One definite result per menu measurement, for both parties.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LhvAssignment {
    pub alice: Vec<String>,
    pub bob: Vec<String>,
}

impl LhvAssignment {
    pub fn new<S: Into<String>>(alice: impl IntoIterator<Item = S>, bob: impl IntoIterator<Item = S>) -> Self {
        Self {
            alice: alice.into_iter().map(Into::into).collect(),
            bob: bob.into_iter().map(Into::into).collect(),
        }
    }
}

impl fmt::Display for LhvAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let all: Vec<&str> = self.alice.iter().chain(&self.bob).map(String::as_str).collect();
        write!(f, "({})", all.join(","))
    }
}

/// True iff for every `(V_A, W_B)` the assigned pair of results is possible.
pub fn lhv_consistent(assignment: &LhvAssignment, table: &JointOutcomeTable) -> Result<bool> {
    let check = |side: &str, menu: &[MenuEntry], picks: &[String]| -> Result<()> {
        if menu.len() != picks.len() {
            return Err(NonclassicalError::MenuMismatch(format!(
                "{side} menu has {} measurements, assignment has {}",
                menu.len(),
                picks.len()
            )));
        }
        for (m, p) in menu.iter().zip(picks) {
            if !m.labels.contains(p) {
                return Err(NonclassicalError::MenuMismatch(format!("{p:?} is not an outcome of {}", m.name)));
            }
        }
        Ok(())
    };
    check("alice", &table.alice, &assignment.alice)?;
    check("bob", &table.bob, &assignment.bob)?;
    Ok(assignment
        .alice
        .iter()
        .enumerate()
        .all(|(i, a)| assignment.bob.iter().enumerate().all(|(j, b)| table.is_possible(i, j, a, b))))
}

/// Result of the exhaustive search over definite assignments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LhvSearch {
    pub searched: u64,
    pub consistent: u64,
    /// The first [`WITNESS_CAP`] consistent assignments, in search order.
    pub witnesses: Vec<LhvAssignment>,
}

/// Enumerate every definite assignment (first measurement most significant,
/// outcomes in basis order) and keep the ones consistent with the table.
pub fn lhv_exclusion_search(table: &JointOutcomeTable, bound: u64) -> Result<LhvSearch> {
    let count = table.assignment_count();
    if count > bound as u128 {
        return Err(NonclassicalError::BoundExceeded { count, bound });
    }
    let na = table.alice.len();
    let radices: Vec<usize> = table.alice.iter().chain(&table.bob).map(|m| m.labels.len()).collect();
    // possible[i][j][a * |W_j| + b]
    let possible: Vec<Vec<Vec<bool>>> = table
        .alice
        .iter()
        .enumerate()
        .map(|(i, va)| {
            table
                .bob
                .iter()
                .enumerate()
                .map(|(j, wb)| {
                    va.labels
                        .iter()
                        .flat_map(|a| wb.labels.iter().map(move |b| (a, b)))
                        .map(|(a, b)| table.is_possible(i, j, a, b))
                        .collect()
                })
                .collect()
        })
        .collect();

    let mut digits = vec![0usize; radices.len()];
    let mut consistent = 0u64;
    let mut witnesses = Vec::new();
    for _ in 0..count {
        let ok = (0..na).all(|i| {
            (0..table.bob.len()).all(|j| possible[i][j][digits[i] * radices[na + j] + digits[na + j]])
        });
        if ok {
            consistent += 1;
            if witnesses.len() < WITNESS_CAP {
                let pick = |menu: &[MenuEntry], ds: &[usize]| -> Vec<String> {
                    menu.iter().zip(ds).map(|(m, &d)| m.labels[d].clone()).collect()
                };
                witnesses.push(LhvAssignment { alice: pick(&table.alice, &digits[..na]), bob: pick(&table.bob, &digits[na..]) });
            }
        }
        // increment, last position fastest
        for k in (0..digits.len()).rev() {
            digits[k] += 1;
            if digits[k] < radices[k] {
                break;
            }
            digits[k] = 0;
        }
    }
    Ok(LhvSearch { searched: count as u64, consistent, witnesses })
}

/// What linearity forces on a would-be cloner of `a` and `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CloningWitness {
    pub a: StateVector,
    pub b: StateVector,
    pub blank: StateVector,
    /// `c = a + b`.
    pub superposition: StateVector,
    /// `|c, blank⟩`, the input whose image is forced.
    pub input: Vector,
    /// `|c, c⟩`, what a cloner would have to produce.
    pub target: Vector,
    /// `|a,a⟩ + |b,b⟩`: the input/output state when the final machine states
    /// coincide.
    pub forced_equal_machine: Vector,
    /// `span{|a,a⟩, |b,b⟩}`: the input/output mixed state when the final
    /// machine states are independent.
    pub forced_independent_machine: Subspace,
    pub fails_equal_machine: bool,
    pub fails_independent_machine: bool,
    pub cloning_fails: bool,
}

/// Follow a cloner of `a` and `b` through the superposition `c = a + b`:
/// linearity sends `|c, blank, M0⟩` to `|a,a,Ma⟩ + |b,b,Mb⟩`, which is never
/// `|c,c⟩` up to the machine factor.
pub fn no_cloning_witness(a: &StateVector, b: &StateVector, blank: &StateVector) -> Result<CloningWitness> {
    let system = a.system();
    system.check(b.system())?;
    system.check(blank.system())?;
    if a.projectively_equal(b) {
        return Err(NonclassicalError::NotDistinct);
    }
    let c = a.superpose(b).map_err(|e| match e {
        ModalError::ZeroState => NonclassicalError::NoSuperposition,
        other => other.into(),
    })?;
    let pair = CompositeSystem::pair(system, system)?;
    let clone = |s: &StateVector| pair.product_state(&[s.clone(), s.clone()]).map(StateVector::into_vector);
    let aa = clone(a)?;
    let bb = clone(b)?;
    let target = clone(&c)?;
    let input = pair.product_state(&[c.clone(), blank.clone()])?.into_vector();
    let forced_equal_machine = aa.add(&bb)?;
    let field = system.field();
    let dim = pair.joint().dim();
    let forced_independent_machine = Subspace::span(field, dim, &[aa, bb])?;
    let fails_equal_machine = !forced_equal_machine.projectively_equal(&target);
    let fails_independent_machine = forced_independent_machine != Subspace::span(field, dim, &[target.clone()])?;
    Ok(CloningWitness {
        a: a.clone(),
        b: b.clone(),
        blank: blank.clone(),
        superposition: c,
        input,
        target,
        forced_equal_machine,
        forced_independent_machine,
        fails_equal_machine,
        fails_independent_machine,
        cloning_fails: fails_equal_machine && fails_independent_machine,
    })
}

/// Every admissible ordered pair of distinct states of a system (and the
/// given blank), with its witness.
pub fn no_cloning_sweep(system: &SystemSpec, blank: &StateVector, bound: u64) -> Result<Vec<CloningWitness>> {
    let states = modal::enumerate_states(system, false, bound)?;
    let mut out = Vec::new();
    for a in &states {
        for b in &states {
            match no_cloning_witness(a, b, blank) {
                Ok(w) => out.push(w),
                Err(NonclassicalError::NotDistinct | NonclassicalError::NoSuperposition) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}

/// Result of searching all invertible operators on the pair space for a
/// cloner `T|ψ, blank⟩ = |ψ, ψ⟩` valid for every state `ψ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CloningSearch {
    pub operators: u64,
    pub blanks: u64,
    pub cloners: u64,
}

pub fn cloning_machine_search(system: &SystemSpec, bound: u64) -> Result<CloningSearch> {
    let states = modal::enumerate_states(system, false, bound)?;
    let pair = CompositeSystem::pair(system, system)?;
    let operators: Vec<Matrix> = modal::enumerate_invertible_operators(system.field(), pair.joint().dim(), bound)?;
    let mut cloners = 0u64;
    for blank in &states {
        let io: Vec<(Vector, Vector)> = states
            .iter()
            .map(|s| {
                Ok((
                    pair.product_state(&[s.clone(), blank.clone()])?.into_vector(),
                    pair.product_state(&[s.clone(), s.clone()])?.into_vector(),
                ))
            })
            .collect::<Result<_>>()?;
        for t in &operators {
            let mut clones_all = true;
            for (input, target) in &io {
                if &t.apply(input)? != target {
                    clones_all = false;
                    break;
                }
            }
            if clones_all {
                cloners += 1;
            }
        }
    }
    Ok(CloningSearch { operators: operators.len() as u64, blanks: states.len() as u64, cloners })
}
