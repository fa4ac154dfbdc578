//! Gate-count table for the arithmetic builders (build only, no simulation).

use qpi_core::arith::{
    adder_squarer, qft_adder, qft_circuit, qft_multiplier, qft_squarer, schoolbook_multiplier,
    ArithRegisters,
};
use qpi_core::GateCounts;

struct Row {
    family: &'static str,
    n: usize,
    qubits: usize,
    ancillas: usize,
    counts: GateCounts,
}

fn rows_for(n: usize) -> Vec<Row> {
    let regs = ArithRegisters::mul_layout(n, n, 2 * n);
    let sq = ArithRegisters::square_layout(n, 2 * n, true);
    let reg_2n: Vec<usize> = (0..2 * n).collect();
    vec![
        Row {
            family: "qft",
            n,
            qubits: 2 * n,
            ancillas: 0,
            counts: qft_circuit(&reg_2n).expect("valid").gate_count(),
        },
        Row {
            family: "qft-adder",
            n,
            qubits: 4 * n,
            ancillas: 0,
            counts: qft_adder(&reg_2n, &(2 * n..4 * n).collect::<Vec<_>>(), None)
                .expect("valid")
                .gate_count(),
        },
        Row {
            family: "schoolbook-mult",
            n,
            qubits: 4 * n,
            ancillas: 0,
            counts: schoolbook_multiplier(&regs).expect("valid").gate_count(),
        },
        Row {
            family: "qft-mult",
            n,
            qubits: 4 * n,
            ancillas: 0,
            counts: qft_multiplier(&regs).expect("valid").gate_count(),
        },
        Row {
            family: "adder-squarer",
            n,
            qubits: 3 * n + 1,
            ancillas: 1,
            counts: adder_squarer(&sq).expect("valid").gate_count(),
        },
        Row {
            family: "qft-squarer",
            n,
            qubits: 3 * n,
            ancillas: 0,
            counts: qft_squarer(&sq.a, &sq.b).expect("valid").gate_count(),
        },
    ]
}

pub fn run(min_n: usize, max_n: usize) -> i32 {
    println!(
        "{:<16} {:>3} {:>7} {:>6} {:>6} {:>6} {:>8} {:>8} {:>9}",
        "family", "n", "qubits", "x", "h", "swap", "phase", "total", "ancillas"
    );
    for n in min_n..=max_n {
        for row in rows_for(n) {
            println!(
                "{:<16} {:>3} {:>7} {:>6} {:>6} {:>6} {:>8} {:>8} {:>9}",
                row.family,
                row.n,
                row.qubits,
                row.counts.x,
                row.counts.h,
                row.counts.swap,
                row.counts.phase,
                row.counts.total(),
                row.ancillas
            );
        }
    }
    0
}
