//! Exhaustive arithmetic self-tests: every circuit family against the
//! classical integer oracle over all basis inputs.

use qpi_core::arith::{
    adder_squarer, qft_adder, qft_multiplier, qft_squarer, schoolbook_multiplier, ArithRegisters,
};
use qpi_core::{Circuit, GateKind, GateOp, StateVector64};

/// Probability mass the expected output basis state must carry. QFT
/// arithmetic on a dozen qubits accumulates rounding well below this.
const EXACTNESS: f64 = 1.0 - 1e-9;

pub struct FamilyResult {
    pub name: String,
    pub cases: usize,
    /// First failing case, as (input labels, got index, expected index).
    pub failure: Option<(String, usize, usize)>,
}

impl FamilyResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// One circuit family: a built circuit plus the classical map it must equal.
struct Family {
    name: String,
    circuit: Circuit,
    qubits: usize,
    /// All (input index, expected index, label) cases.
    cases: Vec<(usize, usize, String)>,
}

fn adder_family(n: usize) -> Family {
    // x and y both 2n bits wide, matching the multiplier accumulator size.
    let l = 2 * n;
    let x: Vec<usize> = (0..l).collect();
    let y: Vec<usize> = (l..2 * l).collect();
    let circuit = qft_adder(&x, &y, None).expect("valid registers");
    let mut cases = Vec::new();
    for xv in 0..1usize << l {
        for yv in 0..1usize << l {
            let expected = xv | (((xv + yv) % (1 << l)) << l);
            cases.push((xv | (yv << l), expected, format!("x={xv} y={yv}")));
        }
    }
    Family {
        name: format!("qft-adder(l={l})"),
        circuit,
        qubits: 2 * l,
        cases,
    }
}

fn multiplier_cases(n: usize) -> Vec<(usize, usize, String)> {
    let l = 2 * n;
    let mut cases = Vec::new();
    for a in 0..1usize << n {
        for b in 0..1usize << n {
            for c in 0..1usize << l {
                let expected = a | (b << n) | (((c + a * b) % (1 << l)) << (2 * n));
                cases.push((
                    a | (b << n) | (c << (2 * n)),
                    expected,
                    format!("a={a} b={b} c={c}"),
                ));
            }
        }
    }
    cases
}

fn squarer_cases(n: usize) -> Vec<(usize, usize, String)> {
    let m = 2 * n;
    let mut cases = Vec::new();
    for a in 0..1usize << n {
        for b in 0..1usize << m {
            let expected = a | (((b + a * a) % (1 << m)) << n);
            cases.push((a | (b << n), expected, format!("a={a} b={b}")));
        }
    }
    cases
}

fn families(n: usize) -> Vec<Family> {
    let regs = ArithRegisters::mul_layout(n, n, 2 * n);
    let sq_regs = ArithRegisters::square_layout(n, 2 * n, true);
    vec![
        adder_family(n),
        Family {
            name: format!("schoolbook-mult(n={n})"),
            circuit: schoolbook_multiplier(&regs).expect("valid registers"),
            qubits: 4 * n,
            cases: multiplier_cases(n),
        },
        Family {
            name: format!("qft-mult(n={n})"),
            circuit: qft_multiplier(&regs).expect("valid registers"),
            qubits: 4 * n,
            cases: multiplier_cases(n),
        },
        Family {
            name: format!("adder-squarer(n={n})"),
            circuit: adder_squarer(&sq_regs).expect("valid registers"),
            qubits: 3 * n + 1,
            cases: squarer_cases(n),
        },
        Family {
            name: format!("qft-squarer(n={n})"),
            circuit: qft_squarer(&sq_regs.a, &sq_regs.b).expect("valid registers"),
            qubits: 3 * n,
            cases: squarer_cases(n),
        },
    ]
}

/// Rebuilds the circuit with the first phase rotation's sign flipped.
/// Negative control: the oracle suites must catch this.
fn flip_first_rotation(circuit: &Circuit) -> Circuit {
    let mut out = Circuit::new(circuit.num_qubits());
    let mut flipped = false;
    for gate in circuit.gates() {
        let replacement = match gate.kind() {
            GateKind::PhaseRj { j, inverted } if !flipped => {
                flipped = true;
                let mut flipped_gate = GateOp::phase_with(j, !inverted, gate.targets()[0]);
                for &c in gate.controls() {
                    flipped_gate = flipped_gate.controlled_by(c).expect("same controls");
                }
                flipped_gate
            }
            _ => gate.clone(),
        };
        out.push(replacement).expect("same width");
    }
    out
}

fn run_family(family: &Family, inject_fault: bool, spot_limit: Option<usize>) -> FamilyResult {
    let circuit = if inject_fault {
        flip_first_rotation(&family.circuit)
    } else {
        family.circuit.clone()
    };
    let cases: Vec<_> = match spot_limit {
        // Spot checks: a deterministic stride through the full case list.
        // The +1 keeps the stride incommensurate with the inner input
        // dimension so the samples vary in every register.
        Some(limit) => {
            let stride = family.cases.len() / limit + 1;
            family.cases.iter().step_by(stride).take(limit).collect()
        }
        None => family.cases.iter().collect(),
    };
    let mut failure = None;
    for (input, expected, label) in &cases {
        let state = StateVector64::basis_state(family.qubits, *input).expect("in range");
        let out = circuit.run(state).expect("valid circuit");
        let p = out.amplitudes()[*expected].norm_sqr();
        if p < EXACTNESS {
            let got = out
                .amplitudes()
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()))
                .map(|(i, _)| i)
                .unwrap_or(0);
            failure = Some((label.clone(), got, *expected));
            break;
        }
    }
    FamilyResult {
        name: family.name.clone(),
        cases: cases.len(),
        failure,
    }
}

/// Runs the suites: exhaustive at `n`, plus spot checks at `n = 3` when
/// `n < 3`. Returns one result per family.
pub fn run_suites(n: usize, inject_fault: bool) -> Vec<FamilyResult> {
    let mut results: Vec<FamilyResult> = families(n)
        .iter()
        .map(|f| run_family(f, inject_fault, None))
        .collect();
    if n < 3 {
        for family in &families(3) {
            let mut result = run_family(family, inject_fault, Some(16));
            result.name = format!("{} [spot]", result.name);
            results.push(result);
        }
    }
    results
}

/// Prints the table and returns the exit code: 0 iff everything passed.
pub fn report(results: &[FamilyResult]) -> i32 {
    let width = results.iter().map(|r| r.name.len()).max().unwrap_or(10) + 2;
    println!("{:<width$} {:>6}  result", "family", "cases");
    for result in results {
        match &result.failure {
            None => println!("{:<width$} {:>6}  PASS", result.name, result.cases),
            Some((label, got, expected)) => {
                println!(
                    "{:<width$} {:>6}  FAIL at {label}: got basis {got:#x}, expected {expected:#x}",
                    result.name, result.cases
                );
            }
        }
    }
    if results.iter().all(FamilyResult::passed) {
        0
    } else {
        1
    }
}
