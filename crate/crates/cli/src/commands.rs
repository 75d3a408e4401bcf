use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use mqt_core::composite::{self, Bipartition, CompositeSystem};
use mqt_core::field::{FieldError, FieldSpec};
use mqt_core::linalg::{Matrix, Vector};
use mqt_core::modal::{self, MeasurementBasis, SystemSpec, DEFAULT_OPERATOR_BOUND, DEFAULT_STATE_BOUND};
use mqt_core::nonclassical::{self, DEFAULT_ASSIGNMENT_BOUND};
use mqt_core::protocols::{self, Message};
use mqt_core::registry;

/// Tables are printed only up to this order.
const TABLE_LIMIT: usize = 16;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Bound(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Bound(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Bound(m) => f.write_str(m),
        }
    }
}

macro_rules! classify {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                if e.is_bound_exceeded() {
                    CliError::Bound(e.to_string())
                } else {
                    CliError::Usage(e.to_string())
                }
            }
        }
    )*};
}

classify!(
    modal::ModalError,
    composite::CompositeError,
    nonclassical::NonclassicalError,
    protocols::ProtocolError,
    registry::RegistryError
);

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        modal::ModalError::from(e).into()
    }
}

impl From<mqt_core::linalg::LinalgError> for CliError {
    fn from(e: mqt_core::linalg::LinalgError) -> Self {
        modal::ModalError::from(e).into()
    }
}

pub struct Options {
    pub field: String,
    pub projective: bool,
    pub bound: Option<u64>,
}

impl Options {
    fn field(&self) -> Result<FieldSpec, CliError> {
        Ok(self.field.parse()?)
    }
}

/// A command's outcome in both output formats.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub verdict: bool,
}

fn to_json<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("core types serialize")
}

/// Coefficient list in the wire format, e.g. `[1,0]` or `["x+1",1]`.
fn coeffs(v: &Vector) -> Value {
    to_json(v)["coeffs"].clone()
}

fn matrix_rows(m: &Matrix) -> Value {
    to_json(m)["rows"].clone()
}

fn grid(header: &str, labels: &[String], cell: impl Fn(usize, usize) -> String) -> String {
    let n = labels.len();
    let body: Vec<Vec<String>> = (0..n).map(|i| (0..n).map(|j| cell(i, j)).collect()).collect();
    let width = labels.iter().chain(body.iter().flatten()).map(|s| s.chars().count()).max().unwrap_or(1).max(header.len());
    let pad = |s: &str| format!("{s:>width$}");
    let mut out = format!("{} |{}\n", pad(header), labels.iter().map(|l| format!(" {}", pad(l))).collect::<String>());
    out.push_str(&format!("{}-+{}\n", "-".repeat(width), "-".repeat((width + 1) * n)));
    for (l, row) in labels.iter().zip(&body) {
        out.push_str(&format!("{} |{}\n", pad(l), row.iter().map(|c| format!(" {}", pad(c))).collect::<String>()));
    }
    out
}

fn axioms_hold(field: &FieldSpec, exhaustive: bool) -> bool {
    let els = field.elements();
    let one = field.one();
    els.iter().all(|a| {
        (a.is_zero() || a.mul(&a.inverse().unwrap()).unwrap() == one)
            && a.add(&a.neg()).unwrap().is_zero()
            && els.iter().all(|b| {
                a.add(b).unwrap() == b.add(a).unwrap()
                    && a.mul(b).unwrap() == b.mul(a).unwrap()
                    && (!exhaustive
                        || els.iter().all(|c| {
                            a.mul(&b.add(c).unwrap()).unwrap() == a.mul(b).unwrap().add(&a.mul(c).unwrap()).unwrap()
                                && a.add(b).unwrap().add(c).unwrap() == a.add(&b.add(c).unwrap()).unwrap()
                                && a.mul(b).unwrap().mul(c).unwrap() == a.mul(&b.mul(c).unwrap()).unwrap()
                        }))
            })
    })
}

fn poly_string(coeffs: &[u16]) -> String {
    let mut terms = Vec::new();
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let c_str = if c == 1 && k > 0 { String::new() } else { c.to_string() };
        terms.push(match k {
            0 => c.to_string(),
            1 => format!("{c_str}x"),
            _ => format!("{c_str}x^{k}"),
        });
    }
    terms.join("+")
}

pub fn field_info(spec: &str) -> Result<Report, CliError> {
    let field: FieldSpec = spec.parse()?;
    let q = field.order();
    let labels: Vec<String> = field.elements().iter().map(ToString::to_string).collect();
    let exhaustive = q <= TABLE_LIMIT;
    let axioms = axioms_hold(&field, exhaustive);
    let check = if exhaustive { "exhaustive" } else { "pairwise" };
    let modulus = field.modulus().map(poly_string);

    let mut text = format!("{field}: order {q}, characteristic {}, degree {}\n", field.characteristic(), field.degree());
    if let Some(m) = &modulus {
        text.push_str(&format!("modulus: {m}\n"));
    }
    text.push_str(&format!("elements: {}\n", labels.join(" ")));
    let mut tables = Value::Null;
    if q <= TABLE_LIMIT {
        let els = field.elements();
        let add = |i: usize, j: usize| els[i].add(&els[j]).unwrap().to_string();
        let mul = |i: usize, j: usize| els[i].mul(&els[j]).unwrap().to_string();
        text.push_str(&format!("addition:\n{}", grid("+", &labels, add)));
        text.push_str(&format!("multiplication:\n{}", grid("*", &labels, mul)));
        let table = |f: &dyn Fn(usize, usize) -> String| -> Vec<Vec<String>> {
            (0..q).map(|i| (0..q).map(|j| f(i, j)).collect()).collect()
        };
        tables = json!({ "addition": table(&add), "multiplication": table(&mul) });
    }
    text.push_str(&format!("axioms: {} ({check})\n", if axioms { "hold" } else { "FAIL" }));
    Ok(Report {
        text,
        json: json!({
            "field": field.to_string(),
            "order": q,
            "characteristic": field.characteristic(),
            "degree": field.degree(),
            "modulus": modulus,
            "elements": labels,
            "tables": tables,
            "axioms": { "hold": axioms, "check": check },
        }),
        verdict: axioms,
    })
}

pub fn census(opts: &Options, d1: usize, d2: usize) -> Result<Report, CliError> {
    let field = opts.field()?;
    let pair = CompositeSystem::pair(&SystemSpec::new(&field, d1)?, &SystemSpec::new(&field, d2)?)?;
    let c = composite::census(&pair, &Bipartition::at(1), opts.projective, opts.bound.unwrap_or(DEFAULT_STATE_BOUND))?;
    Ok(Report { text: c.to_string(), json: to_json(&c), verdict: true })
}

pub fn possible(state: &str, measurement: &str) -> Result<Report, CliError> {
    let s = registry::resolve_state(state)?;
    let m = registry::resolve_measurement(measurement)?;
    let set = modal::possible_outcomes(&s, &m)?;
    Ok(Report {
        text: set.to_string(),
        json: json!({ "state": to_json(&s), "measurement": set.measurement, "outcomes": set.outcomes }),
        verdict: true,
    })
}

pub fn evolve(state: &str, operator: &str) -> Result<Report, CliError> {
    let s = registry::resolve_state(state)?;
    let op = registry::resolve_operator(operator)?;
    let out = modal::evolve(&s, &op)?;
    let ket = composite::ket_notation(out.vector(), &[out.system().dim()]);
    Ok(Report {
        text: format!("{ket}  {}", coeffs(out.vector())),
        json: json!({ "state": to_json(&s), "operator": to_json(&op), "result": to_json(&out), "ket": ket }),
        verdict: true,
    })
}

pub fn reduce(state: &str, dims: Option<&[usize]>, keep: usize, basis: Option<&str>) -> Result<Report, CliError> {
    let s = registry::resolve_state(state)?;
    let n = s.system().dim();
    let dims: Vec<usize> = match dims {
        Some(d) => d.to_vec(),
        None => {
            let d = (2..=n).find(|d| d * d >= n).unwrap_or(n);
            if d * d != n {
                return Err(CliError::Usage(format!("dimension {n} is not a square; pass --dims")));
            }
            vec![d, d]
        }
    };
    if dims.len() != 2 || dims[0] * dims[1] != n {
        return Err(CliError::Usage(format!("--dims {dims:?} does not factor dimension {n}")));
    }
    if keep > 1 {
        return Err(CliError::Usage(format!("--keep must be 0 or 1, got {keep}")));
    }
    let field = s.system().field().clone();
    let pair = CompositeSystem::pair(&SystemSpec::new(&field, dims[0])?, &SystemSpec::new(&field, dims[1])?)?;
    let other = &pair.factors()[1 - keep];
    let basis: MeasurementBasis = match basis {
        Some(b) => registry::resolve_measurement(b)?,
        None => MeasurementBasis::computational(other),
    };
    let mixed = composite::reduce(&pair, &s, keep, &basis)?;
    let rows: Vec<String> = mixed.subspace().basis_vectors().iter().map(|v| coeffs(v).to_string()).collect();
    let full = if mixed.is_full() { " (full space)" } else { "" };
    Ok(Report {
        text: format!("rank {}{full}: {}", mixed.rank(), rows.join(" ")),
        json: json!({
            "state": to_json(&s),
            "dims": dims,
            "keep": keep,
            "basis": basis.name(),
            "mixed": to_json(&mixed),
            "rank": mixed.rank(),
            "full": mixed.is_full(),
        }),
        verdict: true,
    })
}

pub fn bell(opts: &Options, state: &str) -> Result<Report, CliError> {
    let m = modal::mobit();
    let pair = CompositeSystem::pair(&m.system, &m.system)?;
    let s = registry::resolve_state(state)?;
    let menu = [m.x.clone(), m.y.clone(), m.z.clone()];
    let table = nonclassical::joint_outcome_table(&pair, &s, &menu, &menu)?;
    let search = nonclassical::lhv_exclusion_search(&table, opts.bound.unwrap_or(DEFAULT_ASSIGNMENT_BOUND))?;
    let excluded = search.consistent == 0;
    let mut text = format!("{}\n", composite::ket_notation(s.vector(), &[2, 2]));
    text.push_str(&table.to_string());
    text.push_str(&format!("searched {}, consistent {}\n", search.searched, search.consistent));
    for w in search.witnesses.iter().take(8) {
        text.push_str(&format!("  witness {w}\n"));
    }
    if search.witnesses.len() > 8 {
        text.push_str(&format!("  ... {} more\n", search.consistent - 8));
    }
    text.push_str(if excluded {
        "no local hidden variable model\n"
    } else {
        "a local hidden variable model exists\n"
    });
    Ok(Report {
        text,
        json: json!({ "state": to_json(&s), "table": to_json(&table), "search": to_json(&search), "excluded": excluded }),
        verdict: excluded,
    })
}

pub fn noclone(opts: &Options) -> Result<Report, CliError> {
    let m = modal::mobit();
    let bound = opts.bound.unwrap_or(DEFAULT_OPERATOR_BOUND);
    let sweep = nonclassical::no_cloning_sweep(&m.system, &m.zero, bound)?;
    let search = nonclassical::cloning_machine_search(&m.system, bound)?;
    let ket1 = |v: &Vector| composite::ket_notation(v, &[2]);
    let ket2 = |v: &Vector| composite::ket_notation(v, &[2, 2]);
    let mut text = String::new();
    for w in &sweep {
        text.push_str(&format!(
            "a={} b={}: c={}, forced {} vs |c,c⟩ = {}; cloning {}\n",
            ket1(w.a.vector()),
            ket1(w.b.vector()),
            ket1(w.superposition.vector()),
            ket2(&w.forced_equal_machine),
            ket2(&w.target),
            if w.cloning_fails { "fails" } else { "not refuted" }
        ));
    }
    text.push_str(&format!(
        "searched {} invertible operators x {} blanks: {} cloners\n",
        search.operators, search.blanks, search.cloners
    ));
    let verdict = sweep.iter().all(|w| w.cloning_fails) && search.cloners == 0;
    Ok(Report { text, json: json!({ "witnesses": to_json(&sweep), "search": to_json(&search), "verdict": verdict }), verdict })
}

pub fn superdense(message: &str) -> Result<Report, CliError> {
    let msg: Message = message.parse()?;
    let t = protocols::superdense_send(msg)?;
    Ok(Report { text: format!("{t}\ndecoded: {}\n", t.result), json: to_json(&t), verdict: t.succeeded() })
}

pub fn teleport(state: &str) -> Result<Report, CliError> {
    let psi = registry::resolve_state(state)?;
    let transcripts = protocols::teleport_sweep(&psi)?;
    let no_signal = protocols::teleport_no_signal(&psi)?;
    let all = transcripts.iter().all(|t| t.succeeded()) && no_signal;
    let mut text = String::new();
    for t in &transcripts {
        text.push_str(&format!("{t}\n"));
    }
    text.push_str(&format!(
        "Bob's state before the message: {}\n",
        if no_signal { "full space (no signal)" } else { "not the full space" }
    ));
    text.push_str(&format!("teleported: {} (all outcomes)\n", if all { "success" } else { "failure" }));
    Ok(Report {
        text,
        json: json!({ "input": to_json(&psi), "transcripts": to_json(&transcripts), "no_signal": no_signal, "verdict": all }),
        verdict: all,
    })
}

pub fn enumerate(opts: &Options, dim: usize, operators: bool) -> Result<Report, CliError> {
    let field = opts.field()?;
    let system = SystemSpec::new(&field, dim)?;
    let (items, kind): (Vec<Value>, &str) = if operators {
        let ops = modal::enumerate_invertible_operators(&field, dim, opts.bound.unwrap_or(DEFAULT_OPERATOR_BOUND))?;
        (ops.iter().map(matrix_rows).collect(), "operators")
    } else {
        let states = modal::enumerate_states(&system, opts.projective, opts.bound.unwrap_or(DEFAULT_STATE_BOUND))?;
        (states.iter().map(|s| coeffs(s.vector())).collect(), "states")
    };
    let mut text = format!("{} {kind} of {system}\n", items.len());
    for item in &items {
        text.push_str(&format!("{item}\n"));
    }
    Ok(Report {
        text,
        json: json!({ "system": system.to_string(), "kind": kind, "projective": opts.projective && !operators, "count": items.len(), "items": items }),
        verdict: true,
    })
}
