//! Superdense coding and teleportation with mobits.
//!
//! Two-mobit kets `|b,a⟩` list Bob's mobit first and Alice's second: the
//! encoding operators act on the second ket slot. With that reading the three
//! relations `S = G R`, `U = K R`, `V = KG R` all hold; acting on the first
//! slot instead breaks `U = K R` (see [`encoding_relations_on_slot`]).
//!
//! Teleportation uses three mobits: `1` holds the input, `2` and `3` share
//! `R` with Alice holding `2`. Alice measures the Bell basis on the ordered
//! pair `(2, 1)` and Bob corrects mobit `3` with [`TELEPORT_CORRECTIONS`].

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::composite::{self, Bipartition, CompositeError, CompositeSystem, MixedState};
use crate::linalg::{LinalgError, Matrix};
use crate::modal::{self, MeasurementBasis, ModalError, Mobit, StateVector, SystemSpec};

/// Ket slot of Alice's mobit in the shared pair.
pub const ALICE_SLOT: usize = 1;

/// Bell outcome labels in basis order.
pub const BELL_LABELS: [&str; 4] = ["R", "S", "U", "V"];

/// Single-mobit operators by name.
pub const OPERATOR_NAMES: [&str; 4] = ["1", "G", "K", "KG"];

/// Bob's correction for each of Alice's Bell outcomes, indexed like
/// [`BELL_LABELS`].
pub const TELEPORT_CORRECTIONS: [&str; 4] = ["KG", "K", "G", "1"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProtocolError {
    #[error(transparent)]
    Composite(#[from] CompositeError),
    #[error("invalid message {0:?}: expected two bits such as \"01\"")]
    Message(String),
    #[error("unknown operator {0:?}")]
    Operator(String),
    #[error("unknown Bell outcome {0:?}")]
    Outcome(String),
    #[error("outcome {0} is not possible for this input")]
    ImpossibleOutcome(String),
}

impl ProtocolError {
    pub fn is_bound_exceeded(&self) -> bool {
        matches!(self, ProtocolError::Composite(e) if e.is_bound_exceeded())
    }
}

impl From<ModalError> for ProtocolError {
    fn from(e: ModalError) -> Self {
        ProtocolError::Composite(e.into())
    }
}

impl From<LinalgError> for ProtocolError {
    fn from(e: LinalgError) -> Self {
        ProtocolError::Composite(e.into())
    }
}

pub type Result<T, E = ProtocolError> = std::result::Result<T, E>;

/// `1`, `G`, `K` or `KG` on a mobit.
pub fn mobit_operator(name: &str) -> Result<Matrix> {
    let mobit = modal::mobit();
    let field = mobit.system.field();
    let rows: &[Vec<u64>] = match name {
        "1" => &[vec![1, 0], vec![0, 1]],
        "G" => &[vec![0, 1], vec![1, 0]],
        "K" => &[vec![1, 1], vec![0, 1]],
        "KG" => &[vec![1, 1], vec![1, 0]],
        other => return Err(ProtocolError::Operator(other.to_string())),
    };
    Ok(Matrix::from_rows(field, rows)?)
}

/// The four entangled two-mobit states and the measurement they define.
#[derive(Debug, Clone)]
pub struct BellBasis {
    pub pair: CompositeSystem,
    pub r: StateVector,
    pub s: StateVector,
    pub u: StateVector,
    pub v: StateVector,
    pub measurement: MeasurementBasis,
}

impl BellBasis {
    pub fn states(&self) -> [&StateVector; 4] {
        [&self.r, &self.s, &self.u, &self.v]
    }

    pub fn state(&self, label: &str) -> Result<&StateVector> {
        let i = self.measurement.label_index(label).ok_or_else(|| ProtocolError::Outcome(label.to_string()))?;
        Ok(self.states()[i])
    }
}

pub fn build_bell_basis() -> BellBasis {
    let mobit = modal::mobit();
    let pair = CompositeSystem::pair(&mobit.system, &mobit.system).expect("two mobits");
    let state = |v: &[u64]| StateVector::from_values(pair.joint(), v).expect("nonzero");
    let r = state(&[1, 0, 0, 1]);
    let s = state(&[0, 1, 1, 0]);
    let u = state(&[1, 0, 1, 1]);
    let v = state(&[1, 1, 1, 0]);
    let measurement =
        MeasurementBasis::from_states("Bell", &BELL_LABELS, &[r.clone(), s.clone(), u.clone(), v.clone()])
            .expect("R, S, U, V are independent");
    BellBasis { pair, r, s, u, v, measurement }
}

/// Whether `O R` equals `S`, `U`, `V` for `O = G, K, KG` acting on `slot`.
pub fn encoding_relations_on_slot(slot: usize) -> Result<[bool; 3]> {
    let bell = build_bell_basis();
    let mut out = [false; 3];
    for (k, (op, target)) in [("G", &bell.s), ("K", &bell.u), ("KG", &bell.v)].into_iter().enumerate() {
        let lifted = bell.pair.lift_operator(slot, &mobit_operator(op)?)?;
        out[k] = &modal::evolve(&bell.r, &lifted)? == target;
    }
    Ok(out)
}

/// The three encoding relations with the operators on Alice's slot.
pub fn verify_encoding_relations() -> bool {
    encoding_relations_on_slot(ALICE_SLOT).map(|r| r.iter().all(|&b| b)).unwrap_or(false)
}

/// A two-bit message.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Message(u8);

impl Message {
    pub const ALL: [Message; 4] = [Message(0), Message(1), Message(2), Message(3)];

    pub fn new(bits: u8) -> Result<Self> {
        if bits < 4 {
            Ok(Message(bits))
        } else {
            Err(ProtocolError::Message(bits.to_string()))
        }
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    /// `00 → 1`, `01 → G`, `10 → K`, `11 → KG`.
    pub fn operator_name(self) -> &'static str {
        OPERATOR_NAMES[self.0 as usize]
    }

    /// The Bell state Alice's operator turns `R` into.
    pub fn bell_label(self) -> &'static str {
        BELL_LABELS[self.0 as usize]
    }

    pub fn from_bell_label(label: &str) -> Result<Self> {
        BELL_LABELS
            .iter()
            .position(|&l| l == label)
            .map(|i| Message(i as u8))
            .ok_or_else(|| ProtocolError::Outcome(label.to_string()))
    }
}

impl fmt::Display for Message {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:02b}", self.0)
    }
}

impl std::str::FromStr for Message {
    type Err = ProtocolError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "00" => Ok(Message(0)),
            "01" => Ok(Message(1)),
            "10" => Ok(Message(2)),
            "11" => Ok(Message(3)),
            other => Err(ProtocolError::Message(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Success,
    Failure,
}

impl Verdict {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Success
        } else {
            Verdict::Failure
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Success => "success",
            Verdict::Failure => "failure",
        })
    }
}

/// One step of a protocol run and the state it leaves behind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub actor: String,
    pub action: String,
    /// The relevant state after the step.
    pub state: StateVector,
    /// Ket rendering of `state`.
    pub ket: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub protocol: String,
    pub inputs: BTreeMap<String, String>,
    pub steps: Vec<Step>,
    pub result: String,
    pub verdict: Verdict,
}

impl Transcript {
    pub fn succeeded(&self) -> bool {
        self.verdict == Verdict::Success
    }
}

impl fmt::Display for Transcript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inputs: Vec<String> = self.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(f, "{} ({})", self.protocol, inputs.join(", "))?;
        for (i, step) in self.steps.iter().enumerate() {
            writeln!(f, "  {}. {}: {}", i + 1, step.actor, step.action)?;
            writeln!(f, "     {}", step.ket)?;
        }
        writeln!(f, "  result: {}", self.result)?;
        write!(f, "  verdict: {}", self.verdict)
    }
}

fn step(actor: &str, action: String, state: &StateVector, dims: &[usize]) -> Step {
    Step {
        actor: actor.to_string(),
        action,
        ket: composite::ket_notation(state.vector(), dims),
        state: state.clone(),
    }
}

/// Alice applies the message's operator to her half of `R` and sends it;
/// Bob measures the Bell basis and decodes the outcome.
pub fn superdense_send(message: Message) -> Result<Transcript> {
    let bell = build_bell_basis();
    let dims = bell.pair.dims();
    let op = message.operator_name();
    let lifted = bell.pair.lift_operator(ALICE_SLOT, &mobit_operator(op)?)?;
    let encoded = modal::evolve(&bell.r, &lifted)?;
    let outcomes = modal::possible_outcomes(&encoded, &bell.measurement)?;
    let decoded = outcomes.certain().map(Message::from_bell_label).transpose()?;
    let steps = vec![
        step("shared", "Alice and Bob share R".to_string(), &bell.r, &dims),
        step("alice", format!("apply {op} to her mobit and send it to Bob"), &encoded, &dims),
        step("bob", format!("measure Bell: possible {{{outcomes}}}"), &encoded, &dims),
    ];
    Ok(Transcript {
        protocol: "superdense".to_string(),
        inputs: BTreeMap::from([("message".to_string(), message.to_string())]),
        steps,
        result: decoded.map_or_else(|| "undecodable".to_string(), |m| m.to_string()),
        verdict: Verdict::from_bool(decoded == Some(message)),
    })
}

/// Which states a single measurement tells apart with certainty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapacityReport {
    /// Largest number of messages one mobit carries reliably.
    pub max_reliable_messages: usize,
    /// A witness set of that size and its measurement.
    pub witness_states: Vec<String>,
    pub witness_measurement: String,
    /// Number of (state list, measurement) pairs examined.
    pub checked: usize,
}

/// True iff every state has a single possible outcome under `measurement`
/// and no two states share it.
pub fn reliably_distinguishable(states: &[&StateVector], measurement: &MeasurementBasis) -> Result<bool> {
    let mut seen = Vec::new();
    for s in states {
        let set = modal::possible_outcomes(s, measurement)?;
        match set.certain() {
            Some(label) if !seen.iter().any(|l| l == label) => seen.push(label.to_string()),
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// Exhaust every set of distinct mobit states against every mobit basis.
pub fn single_mobit_capacity_check() -> Result<CapacityReport> {
    let mobit = Mobit::new();
    let names = ["0", "1", "sigma"];
    let states = mobit.states();
    let mut best = (0usize, Vec::new(), String::new());
    let mut checked = 0;
    for mask in 1u32..(1 << states.len()) {
        let chosen: Vec<usize> = (0..states.len()).filter(|i| mask & (1 << i) != 0).collect();
        let set: Vec<&StateVector> = chosen.iter().map(|&i| states[i]).collect();
        for m in mobit.measurements() {
            checked += 1;
            if set.len() > best.0 && reliably_distinguishable(&set, m)? {
                best = (set.len(), chosen.iter().map(|&i| names[i].to_string()).collect(), m.name().to_string());
            }
        }
    }
    Ok(CapacityReport { max_reliable_messages: best.0, witness_states: best.1, witness_measurement: best.2, checked })
}

/// Three mobits `(1, 2, 3)` holding `|ψ⟩ ⊗ |R⟩`.
fn teleport_register(psi: &StateVector) -> Result<(CompositeSystem, StateVector)> {
    let bell = build_bell_basis();
    bell.pair.factors()[0].check(psi.system())?;
    let mobit = psi.system().clone();
    let three = CompositeSystem::power(&mobit, 3)?;
    let joint = psi.vector().tensor(bell.r.vector())?;
    let state = StateVector::new(three.joint(), joint)?;
    Ok((three, state))
}

/// The register regrouped as `(mobit 2, mobit 1) ⊗ mobit 3`, and Bob's
/// conditional state for each Bell outcome on the first group.
fn teleport_split(psi: &StateVector) -> Result<(StateVector, Vec<Option<StateVector>>)> {
    let bell = build_bell_basis();
    let (three, state) = teleport_register(psi)?;
    let (reordered, permuted) = three.permute(&state, &[1, 0, 2])?;
    let (pair, grouped) = reordered.regroup(&permuted, &Bipartition::at(2))?;
    let conditionals = composite::conditional_states(&pair, &grouped, 1, &bell.measurement)?;
    Ok((permuted, conditionals))
}

/// Bell outcomes Alice can obtain when teleporting `psi`.
pub fn teleport_outcomes(psi: &StateVector) -> Result<Vec<String>> {
    let (_, conditionals) = teleport_split(psi)?;
    Ok(BELL_LABELS
        .iter()
        .zip(&conditionals)
        .filter(|(_, c)| c.is_some())
        .map(|(l, _)| l.to_string())
        .collect())
}

/// Teleport `psi` for one of Alice's possible outcomes.
pub fn teleport(psi: &StateVector, outcome: &str) -> Result<Transcript> {
    let index = BELL_LABELS.iter().position(|&l| l == outcome).ok_or_else(|| ProtocolError::Outcome(outcome.to_string()))?;
    let (register, conditionals) = teleport_split(psi)?;
    let possible: Vec<&str> = BELL_LABELS.iter().zip(&conditionals).filter(|(_, c)| c.is_some()).map(|(l, _)| *l).collect();
    let bob = conditionals[index].clone().ok_or_else(|| ProtocolError::ImpossibleOutcome(outcome.to_string()))?;
    let correction = TELEPORT_CORRECTIONS[index];
    let output = modal::evolve(&bob, &mobit_operator(correction)?)?;

    let expansion: Vec<String> = BELL_LABELS
        .iter()
        .zip(&conditionals)
        .filter_map(|(l, c)| c.as_ref().map(|c| format!("|{l}⟩⊗({})", composite::ket_notation(c.vector(), &[2]))))
        .collect();
    let (three, initial) = teleport_register(psi)?;
    let dims = three.dims();
    let steps = vec![
        step("alice", "hold the input on mobit 1".to_string(), psi, &[2]),
        step("shared", "Alice holds mobit 2 and Bob mobit 3 of R".to_string(), &initial, &dims),
        step("alice", format!("expand on (mobit 2, mobit 1): {}", expansion.join(" + ")), &register, &dims),
        step("alice", format!("measure Bell on (mobit 2, mobit 1): {outcome} (possible {})", possible.join(" ")), &bob, &[2]),
        step("bob", format!("apply {correction} to mobit 3"), &output, &[2]),
    ];
    Ok(Transcript {
        protocol: "teleport".to_string(),
        inputs: BTreeMap::from([
            ("outcome".to_string(), outcome.to_string()),
            ("psi".to_string(), composite::ket_notation(psi.vector(), &[2])),
        ]),
        steps,
        result: composite::ket_notation(output.vector(), &[2]),
        verdict: Verdict::from_bool(output.projectively_equal(psi)),
    })
}

/// Transcripts for every outcome Alice can obtain.
pub fn teleport_sweep(psi: &StateVector) -> Result<Vec<Transcript>> {
    teleport_outcomes(psi)?.iter().map(|o| teleport(psi, o)).collect()
}

/// Bob's mixed state before Alice's outcome reaches him.
pub fn teleport_bob_before_message(psi: &StateVector) -> Result<MixedState> {
    let (three, state) = teleport_register(psi)?;
    let (pair, grouped) = three.regroup(&state, &Bipartition::at(2))?;
    let other = MeasurementBasis::computational(&pair.factors()[0]);
    Ok(composite::reduce(&pair, &grouped, 1, &other)?)
}

/// Whether Bob's pre-message state is the full mobit space.
pub fn teleport_no_signal(psi: &StateVector) -> Result<bool> {
    Ok(teleport_bob_before_message(psi)?.is_full())
}

/// The mobit system these protocols run on.
pub fn mobit_system() -> SystemSpec {
    modal::mobit().system
}
