//! Brute-force oracles over prime fields, written with plain integer
//! arithmetic. Each test computes a value independently and checks the
//! library against it.

use mqt_core::composite::{census, Bipartition, CompositeSystem};
use mqt_core::field::FieldSpec;
use mqt_core::modal::{self, SystemSpec, DEFAULT_STATE_BOUND};
use mqt_core::nonclassical::{joint_outcome_table, lhv_exclusion_search, DEFAULT_ASSIGNMENT_BOUND};
use mqt_core::protocols::{self, BELL_LABELS, TELEPORT_CORRECTIONS};

/// Every vector in `Z_p^d`, first coordinate fastest.
fn all_vectors(p: u32, d: usize) -> Vec<Vec<u32>> {
    let total = (p as usize).pow(d as u32);
    (0..total)
        .map(|mut i| {
            (0..d)
                .map(|_| {
                    let c = (i % p as usize) as u32;
                    i /= p as usize;
                    c
                })
                .collect()
        })
        .collect()
}

fn nonzero(p: u32, d: usize) -> Vec<Vec<u32>> {
    all_vectors(p, d).into_iter().filter(|v| v.iter().any(|&c| c != 0)).collect()
}

fn tensor(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y % p)).collect()
}

fn dot(p: u32, a: &[u32], b: &[u32]) -> u32 {
    a.iter().zip(b).map(|(x, y)| x * y).sum::<u32>() % p
}

fn mat_vec(p: u32, m: &[Vec<u32>], v: &[u32]) -> Vec<u32> {
    m.iter().map(|row| dot(p, row, v)).collect()
}

/// Product vectors by exhaustive tensoring of factor vectors.
fn census_oracle(p: u32, d1: usize, d2: usize) -> (u64, u64, u64, u64) {
    let mut products: Vec<Vec<u32>> = Vec::new();
    for a in nonzero(p, d1) {
        for b in nonzero(p, d2) {
            let t = tensor(p, &a, &b);
            if !products.contains(&t) {
                products.push(t);
            }
        }
    }
    let total = nonzero(p, d1 * d2).len() as u64;
    let product = products.len() as u64;
    let projective_product = products.iter().filter(|v| v.iter().find(|&&c| c != 0) == Some(&1)).count() as u64;
    (total, product, total - product, projective_product)
}

fn composite(p: u64, d1: usize, d2: usize) -> CompositeSystem {
    let f = FieldSpec::prime(p).unwrap();
    CompositeSystem::pair(&SystemSpec::new(&f, d1).unwrap(), &SystemSpec::new(&f, d2).unwrap()).unwrap()
}

#[test]
fn census_matches_brute_force() {
    for (p, d1, d2) in [(2u32, 2, 2), (2, 2, 3), (2, 3, 3), (3, 2, 2), (5, 2, 2), (3, 2, 3)] {
        let (total, product, entangled, projective_product) = census_oracle(p, d1, d2);
        let c = census(&composite(p as u64, d1, d2), &Bipartition::at(1), true, DEFAULT_STATE_BOUND).unwrap();
        assert_eq!((c.total, c.product, c.entangled), (total, product, entangled), "GF({p}) {d1}x{d2}");
        let lines = c.projective.unwrap();
        assert_eq!(lines.product, projective_product);
        assert_eq!(lines.total, total / (p as u64 - 1));
        // one product line per pair of factor lines
        let q = p as u64;
        let formula = (q.pow(d1 as u32) - 1) * (q.pow(d2 as u32) - 1) / (q - 1);
        assert_eq!(product, formula);
    }
}

#[test]
fn frozen_census_values() {
    assert_eq!(census_oracle(2, 2, 2), (15, 9, 6, 9));
    assert_eq!(census_oracle(2, 2, 3), (63, 21, 42, 21));
    assert_eq!(census_oracle(3, 2, 2), (80, 32, 48, 16));
}

/// The mobit effect pairs of each measurement: dual of the primal basis.
fn mobit_duals() -> Vec<(&'static str, [(&'static str, [u32; 2]); 2])> {
    // X = (+x = |1⟩, -x = |σ⟩) has duals ⟨σ| and ⟨0| since ⟨σ|1⟩ = 1, ⟨σ|σ⟩ = 0, etc.
    vec![
        ("X", [("+x", [1, 1]), ("-x", [1, 0])]),
        ("Y", [("+y", [0, 1]), ("-y", [1, 1])]),
        ("Z", [("+z", [1, 0]), ("-z", [0, 1])]),
    ]
}

#[test]
fn mobit_duals_are_dual() {
    let primal = [("X", [[0u32, 1], [1, 1]]), ("Y", [[1, 1], [1, 0]]), ("Z", [[1, 0], [0, 1]])];
    for ((_, duals), (_, states)) in mobit_duals().iter().zip(&primal) {
        for (i, (_, e)) in duals.iter().enumerate() {
            for (j, s) in states.iter().enumerate() {
                assert_eq!(dot(2, e, s), (i == j) as u32);
            }
        }
    }
}

fn singlet_cells_oracle(state: &[u32]) -> Vec<Vec<Vec<(String, String)>>> {
    let duals = mobit_duals();
    duals
        .iter()
        .map(|(_, a)| {
            duals
                .iter()
                .map(|(_, b)| {
                    let mut cell = Vec::new();
                    for (la, ea) in a {
                        for (lb, eb) in b {
                            if dot(2, &tensor(2, ea, eb), state) != 0 {
                                cell.push((la.to_string(), lb.to_string()));
                            }
                        }
                    }
                    cell
                })
                .collect()
        })
        .collect()
}

fn mobit_table(state: &[u64]) -> mqt_core::nonclassical::JointOutcomeTable {
    let m = modal::mobit();
    let pair = CompositeSystem::pair(&m.system, &m.system).unwrap();
    let menu = vec![m.x.clone(), m.y.clone(), m.z.clone()];
    let s = modal::StateVector::from_values(pair.joint(), state).unwrap();
    joint_outcome_table(&pair, &s, &menu, &menu).unwrap()
}

#[test]
fn joint_tables_match_brute_force() {
    for v in nonzero(2, 4) {
        let values: Vec<u64> = v.iter().map(|&c| c as u64).collect();
        assert_eq!(mobit_table(&values).cells, singlet_cells_oracle(&v), "{v:?}");
    }
}

fn lhv_oracle(cells: &[Vec<Vec<(String, String)>>]) -> usize {
    let labels = ["x", "y", "z"];
    let mut consistent = 0;
    for bits in 0u32..64 {
        let sign = |k: u32| if bits >> (5 - k) & 1 == 0 { "+" } else { "-" };
        let ok = (0..3).all(|i| {
            (0..3).all(|j| {
                let a = format!("{}{}", sign(i as u32), labels[i]);
                let b = format!("{}{}", sign(3 + j as u32), labels[j]);
                cells[i][j].contains(&(a, b))
            })
        });
        consistent += ok as usize;
    }
    consistent
}

#[test]
fn lhv_search_matches_brute_force() {
    let mut nonlocal = Vec::new();
    for v in nonzero(2, 4) {
        let values: Vec<u64> = v.iter().map(|&c| c as u64).collect();
        let table = mobit_table(&values);
        let search = lhv_exclusion_search(&table, DEFAULT_ASSIGNMENT_BOUND).unwrap();
        let expected = lhv_oracle(&singlet_cells_oracle(&v));
        assert_eq!(search.consistent as usize, expected, "{v:?}");
        assert_eq!(search.searched, 64);
        if expected == 0 {
            nonlocal.push(v);
        }
    }
    // exactly the entangled states admit no deterministic model
    let entangled: Vec<Vec<u32>> = nonzero(2, 4).into_iter().filter(|v| (v[0] * v[3] + v[1] * v[2]) % 2 == 1).collect();
    assert_eq!(nonlocal, entangled);
    assert_eq!(nonlocal.len(), 6);
}

const OPS: [(&str, [[u32; 2]; 2]); 4] =
    [("1", [[1, 0], [0, 1]]), ("G", [[0, 1], [1, 0]]), ("K", [[1, 1], [0, 1]]), ("KG", [[1, 1], [1, 0]])];

const BELL: [[u32; 4]; 4] = [[1, 0, 0, 1], [0, 1, 1, 0], [1, 0, 1, 1], [1, 1, 1, 0]];

fn kron(a: &[[u32; 2]; 2], b: &[[u32; 2]; 2]) -> Vec<Vec<u32>> {
    (0..4).map(|r| (0..4).map(|c| a[r / 2][c / 2] * b[r % 2][c % 2] % 2).collect()).collect()
}

/// Functionals dual to the Bell states, by search over all 16 functionals.
fn bell_duals() -> Vec<Vec<u32>> {
    (0..4)
        .map(|i| {
            let found: Vec<Vec<u32>> = all_vectors(2, 4)
                .into_iter()
                .filter(|f| (0..4).all(|j| dot(2, f, &BELL[j]) == (i == j) as u32))
                .collect();
            assert_eq!(found.len(), 1);
            found[0].clone()
        })
        .collect()
}

#[test]
fn encoding_relations_by_slot() {
    let id = OPS[0].1;
    let on_second: Vec<bool> = OPS[1..].iter().zip(&BELL[1..]).map(|((_, o), t)| mat_vec(2, &kron(&id, o), &BELL[0]) == t).collect();
    let on_first: Vec<bool> = OPS[1..].iter().zip(&BELL[1..]).map(|((_, o), t)| mat_vec(2, &kron(o, &id), &BELL[0]) == t).collect();
    assert_eq!(on_second, [true, true, true]);
    assert_eq!(on_first, [true, false, true]);
    assert!(protocols::verify_encoding_relations());
    assert_eq!(protocols::encoding_relations_on_slot(0).unwrap(), [true, false, true]);
}

/// Bob's conditional state for each Bell outcome when Alice measures the
/// ordered pair `(first, second)` of mobits 1 and 2 (0-based factor indices).
fn teleport_conditionals(psi: &[u32], order: [usize; 2]) -> Vec<Vec<u32>> {
    let joint = tensor(2, psi, &BELL[0]);
    bell_duals()
        .iter()
        .map(|dual| {
            (0..2)
                .map(|bob| {
                    let mut acc = 0;
                    for i in 0..2 {
                        for j in 0..2 {
                            let mut digits = [0usize; 3];
                            digits[order[0]] = i;
                            digits[order[1]] = j;
                            digits[2] = bob;
                            let index = digits[0] * 4 + digits[1] * 2 + digits[2];
                            acc += dual[i * 2 + j] * joint[index];
                        }
                    }
                    acc % 2
                })
                .collect()
        })
        .collect()
}

/// For each outcome, the operators in {1, G, K, KG} that restore every input
/// for which the outcome is possible.
fn working_corrections(order: [usize; 2]) -> Vec<Vec<&'static str>> {
    let inputs = nonzero(2, 2);
    (0..4)
        .map(|k| {
            OPS.iter()
                .filter(|(_, op)| {
                    inputs.iter().all(|psi| {
                        let bob = &teleport_conditionals(psi, order)[k];
                        bob.iter().all(|&c| c == 0) || mat_vec(2, &op.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), bob) == *psi
                    })
                })
                .map(|(name, _)| *name)
                .collect()
        })
        .collect()
}

#[test]
fn teleport_correction_table_is_derived() {
    let table = working_corrections([1, 0]);
    let derived: Vec<&str> = table.iter().map(|ops| {
        assert_eq!(ops.len(), 1, "correction must be unique: {ops:?}");
        ops[0]
    }).collect();
    assert_eq!(derived, TELEPORT_CORRECTIONS);
    // every outcome occurs for every input
    for psi in nonzero(2, 2) {
        assert!(teleport_conditionals(&psi, [1, 0]).iter().all(|b| b.iter().any(|&c| c != 0)));
    }
}

#[test]
fn teleport_fails_with_the_other_pair_order() {
    let table = working_corrections([0, 1]);
    let s = BELL_LABELS.iter().position(|&l| l == "S").unwrap();
    assert!(table[s].is_empty());
}

#[test]
fn teleport_transcripts_match_oracle() {
    let m = modal::mobit();
    for psi in m.states() {
        let v: Vec<u32> = psi.vector().values().iter().map(|&c| c as u32).collect();
        let conditionals = teleport_conditionals(&v, [1, 0]);
        for (k, t) in protocols::teleport_sweep(psi).unwrap().iter().enumerate() {
            let bob: Vec<u32> = t.steps[3].state.vector().values().iter().map(|&c| c as u32).collect();
            assert_eq!(bob, conditionals[k]);
            assert!(t.succeeded());
        }
    }
}

/// Determinant test for 4×4 matrices over GF(2) by Gaussian elimination on
/// bitmasks.
fn invertible_gf2(rows: [u8; 4]) -> bool {
    let mut rows = rows;
    for col in 0..4 {
        let Some(pivot) = (col..4).find(|&r| rows[r] >> col & 1 == 1) else {
            return false;
        };
        rows.swap(col, pivot);
        for r in 0..4 {
            if r != col && rows[r] >> col & 1 == 1 {
                rows[r] ^= rows[col];
            }
        }
    }
    true
}

#[test]
fn no_linear_map_clones_mobits() {
    let states = nonzero(2, 2);
    let mut invertible = 0;
    let mut cloners = 0;
    for code in 0u32..1 << 16 {
        let rows = [0, 1, 2, 3].map(|r| (code >> (4 * r) & 0xF) as u8);
        invertible += invertible_gf2(rows) as u32;
        let m: Vec<Vec<u32>> = rows.iter().map(|&r| (0..4).map(|c| (r >> c & 1) as u32).collect()).collect();
        for blank in &states {
            if states.iter().all(|s| mat_vec(2, &m, &tensor(2, s, blank)) == tensor(2, s, s)) {
                cloners += 1;
            }
        }
    }
    assert_eq!(invertible, 20160);
    assert_eq!(modal::general_linear_order(2, 4), 20160);
    assert_eq!(cloners, 0);
}

#[test]
fn reduced_states_of_two_mobits() {
    // the reduced state of the second mobit is the span of the rows of the
    // 2×2 coefficient matrix
    let m = modal::mobit();
    let pair = CompositeSystem::pair(&m.system, &m.system).unwrap();
    for v in nonzero(2, 4) {
        let rows = [[v[0], v[1]], [v[2], v[3]]];
        let nonzero_rows: Vec<&[u32; 2]> = rows.iter().filter(|r| r.iter().any(|&c| c != 0)).collect();
        let independent = nonzero_rows.len() == 2 && nonzero_rows[0] != nonzero_rows[1];
        let values: Vec<u64> = v.iter().map(|&c| c as u64).collect();
        let s = modal::StateVector::from_values(pair.joint(), &values).unwrap();
        let reduced = mqt_core::composite::reduce(&pair, &s, 1, &m.z).unwrap();
        assert_eq!(reduced.rank(), if independent { 2 } else { 1 }, "{v:?}");
    }
}
