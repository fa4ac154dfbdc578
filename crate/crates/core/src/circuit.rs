//! Gate-level circuit representation and structural transforms.
//!
//! The gate set is deliberately small: X, H, Swap and the dyadic phase
//! rotation `PhaseRj = diag(1, e^{2*pi*i/2^j})`, each optionally controlled by
//! any number of qubits. This is exactly what QFT arithmetic needs, and it
//! keeps every gate either a basis permutation, a diagonal phase, or a
//! Hadamard butterfly.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Gate kind. `PhaseRj` with `j <= 0` is semantically the identity; builders
/// never emit it and the simulator skips it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateKind {
    X,
    H,
    Swap,
    PhaseRj {
        /// Dyadic exponent: the gate phases the target's |1> component by
        /// `e^{2*pi*i/2^j}`.
        j: i32,
        /// Selects the conjugate phase `e^{-2*pi*i/2^j}`.
        inverted: bool,
    },
}

impl GateKind {
    fn name(&self) -> &'static str {
        match self {
            GateKind::X => "X",
            GateKind::H => "H",
            GateKind::Swap => "SWAP",
            GateKind::PhaseRj { .. } => "PHASE",
        }
    }
}

/// One gate: kind, target qubit(s), and a (possibly empty) set of controls.
///
/// Controls are kept sorted so that structurally equal gates compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateOp {
    kind: GateKind,
    targets: Vec<usize>,
    controls: Vec<usize>,
}

impl GateOp {
    pub fn x(target: usize) -> Self {
        Self {
            kind: GateKind::X,
            targets: vec![target],
            controls: Vec::new(),
        }
    }

    pub fn h(target: usize) -> Self {
        Self {
            kind: GateKind::H,
            targets: vec![target],
            controls: Vec::new(),
        }
    }

    pub fn swap(a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::TargetControlOverlap { qubit: a });
        }
        Ok(Self {
            kind: GateKind::Swap,
            targets: vec![a, b],
            controls: Vec::new(),
        })
    }

    /// Phase rotation `diag(1, e^{2*pi*i/2^j})` on `target`.
    pub fn phase(j: i32, target: usize) -> Self {
        Self::phase_with(j, false, target)
    }

    pub fn phase_with(j: i32, inverted: bool, target: usize) -> Self {
        Self {
            kind: GateKind::PhaseRj { j, inverted },
            targets: vec![target],
            controls: Vec::new(),
        }
    }

    /// Adds `control` to the control set.
    pub fn controlled_by(mut self, control: usize) -> Result<Self> {
        if self.targets.contains(&control) || self.controls.contains(&control) {
            return Err(Error::TargetControlOverlap { qubit: control });
        }
        self.controls.push(control);
        self.controls.sort_unstable();
        Ok(self)
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn controls(&self) -> &[usize] {
        &self.controls
    }

    /// Largest qubit index referenced by the gate.
    pub fn max_qubit(&self) -> usize {
        self.targets
            .iter()
            .chain(self.controls.iter())
            .copied()
            .max()
            .expect("gate has at least one target")
    }

    pub fn references(&self, qubit: usize) -> bool {
        self.targets.contains(&qubit) || self.controls.contains(&qubit)
    }

    /// The inverse gate: phase rotations conjugate, everything else is
    /// self-inverse.
    pub fn inverse(&self) -> Self {
        let kind = match self.kind {
            GateKind::PhaseRj { j, inverted } => GateKind::PhaseRj {
                j,
                inverted: !inverted,
            },
            other => other,
        };
        Self {
            kind,
            targets: self.targets.clone(),
            controls: self.controls.clone(),
        }
    }

    fn dump_line(&self, out: &mut String) {
        out.push_str(self.kind.name());
        for t in &self.targets {
            let _ = write!(out, " {t}");
        }
        out.push_str(" [");
        for (i, c) in self.controls.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{c}");
        }
        out.push(']');
        if let GateKind::PhaseRj { j, inverted } = self.kind {
            let _ = write!(out, " ({j}, {inverted})");
        }
    }
}

/// Per-kind gate tally returned by [`Circuit::gate_count`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GateCounts {
    pub x: usize,
    pub h: usize,
    pub swap: usize,
    pub phase: usize,
}

impl GateCounts {
    pub fn total(&self) -> usize {
        self.x + self.h + self.swap + self.phase
    }
}

/// An ordered gate list over a fixed number of qubits, with optional named
/// registers for bookkeeping.
///
/// Circuits are immutable once built and can be shared freely across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<GateOp>,
    registers: BTreeMap<String, Vec<usize>>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Self {
            num_qubits,
            gates: Vec::new(),
            registers: BTreeMap::new(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[GateOp] {
        &self.gates
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    /// Appends a gate after checking that it fits the register.
    pub fn push(&mut self, gate: GateOp) -> Result<()> {
        let max = gate.max_qubit();
        if max >= self.num_qubits {
            return Err(Error::QubitOutOfRange {
                qubit: max,
                num_qubits: self.num_qubits,
            });
        }
        self.gates.push(gate);
        Ok(())
    }

    /// Appends every gate of `other`. `other` may span fewer qubits.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.num_qubits > self.num_qubits {
            return Err(Error::QubitCountMismatch {
                circuit: other.num_qubits,
                state: self.num_qubits,
            });
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    /// Registers a named qubit list. Names are bookkeeping only; lists are
    /// LSB first and must not overlap other registers.
    pub fn add_register(&mut self, name: &str, qubits: &[usize]) -> Result<()> {
        for &q in qubits {
            if q >= self.num_qubits {
                return Err(Error::QubitOutOfRange {
                    qubit: q,
                    num_qubits: self.num_qubits,
                });
            }
            for existing in self.registers.values() {
                if existing.contains(&q) {
                    return Err(Error::RegisterOverlap { qubit: q });
                }
            }
        }
        self.registers.insert(name.to_string(), qubits.to_vec());
        Ok(())
    }

    pub fn register(&self, name: &str) -> Option<&[usize]> {
        self.registers.get(name).map(Vec::as_slice)
    }

    /// Reversed gate list with every phase rotation conjugated, so that
    /// `inverse(c)` undoes `c`.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            gates: self.gates.iter().rev().map(GateOp::inverse).collect(),
            registers: self.registers.clone(),
        }
    }

    /// Adds `control` to every gate. The result acts as the original circuit
    /// when `control` is |1> and as the identity when it is |0>.
    pub fn with_control(&self, control: usize) -> Result<Circuit> {
        if self.gates.iter().any(|g| g.references(control)) {
            return Err(Error::ControlInUse { qubit: control });
        }
        let mut gates = Vec::with_capacity(self.gates.len());
        for gate in &self.gates {
            gates.push(gate.clone().controlled_by(control)?);
        }
        Ok(Circuit {
            num_qubits: self.num_qubits.max(control + 1),
            gates,
            registers: self.registers.clone(),
        })
    }

    pub fn gate_count(&self) -> GateCounts {
        let mut counts = GateCounts::default();
        for gate in &self.gates {
            match gate.kind {
                GateKind::X => counts.x += 1,
                GateKind::H => counts.h += 1,
                GateKind::Swap => counts.swap += 1,
                GateKind::PhaseRj { .. } => counts.phase += 1,
            }
        }
        counts
    }

    /// Stable one-gate-per-line text form, `KIND targets [controls] (j, inverted)`,
    /// intended for diffing in tests.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for gate in &self.gates {
            gate.dump_line(&mut out);
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_rejects_equal_targets() {
        assert!(GateOp::swap(2, 2).is_err());
    }

    #[test]
    fn controlled_by_rejects_target() {
        assert!(GateOp::x(1).controlled_by(1).is_err());
        assert!(GateOp::x(1).controlled_by(0).unwrap().controlled_by(0).is_err());
    }

    #[test]
    fn push_checks_range() {
        let mut c = Circuit::new(2);
        assert!(c.push(GateOp::x(1)).is_ok());
        assert!(c.push(GateOp::x(2)).is_err());
    }

    #[test]
    fn inverse_of_empty_is_empty() {
        let c = Circuit::new(3);
        assert!(c.inverse().is_empty());
    }

    #[test]
    fn inverse_of_hadamard_is_itself() {
        let mut c = Circuit::new(1);
        c.push(GateOp::h(0)).unwrap();
        assert_eq!(c.inverse().gates(), c.gates());
    }

    #[test]
    fn inverse_is_involutive() {
        let mut c = Circuit::new(4);
        c.push(GateOp::h(0)).unwrap();
        c.push(GateOp::phase(2, 1).controlled_by(0).unwrap()).unwrap();
        c.push(GateOp::swap(2, 3).unwrap()).unwrap();
        c.push(GateOp::phase_with(3, true, 3)).unwrap();
        assert_eq!(c.inverse().inverse(), c);
    }

    #[test]
    fn with_control_builds_cnot() {
        let mut c = Circuit::new(1);
        c.push(GateOp::x(0)).unwrap();
        let controlled = c.with_control(1).unwrap();
        assert_eq!(controlled.num_qubits(), 2);
        assert_eq!(controlled.gates()[0], GateOp::x(0).controlled_by(1).unwrap());
    }

    #[test]
    fn with_control_of_empty_is_empty() {
        let c = Circuit::new(2);
        assert!(c.with_control(5).unwrap().is_empty());
    }

    #[test]
    fn with_control_rejects_used_qubit() {
        let mut c = Circuit::new(2);
        c.push(GateOp::x(0).controlled_by(1).unwrap()).unwrap();
        assert_eq!(c.with_control(1), Err(Error::ControlInUse { qubit: 1 }));
    }

    #[test]
    fn gate_count_of_empty_is_zero() {
        assert_eq!(Circuit::new(3).gate_count(), GateCounts::default());
        assert_eq!(Circuit::new(3).gate_count().total(), 0);
    }

    #[test]
    fn registers_must_not_overlap() {
        let mut c = Circuit::new(4);
        c.add_register("a", &[0, 1]).unwrap();
        assert_eq!(
            c.add_register("b", &[1, 2]),
            Err(Error::RegisterOverlap { qubit: 1 })
        );
        c.add_register("b", &[2, 3]).unwrap();
        assert_eq!(c.register("a"), Some(&[0, 1][..]));
    }

    /// Random circuits on up to 6 qubits invert to 1e-10 fidelity.
    #[test]
    fn inversion_semantics_on_random_circuits() {
        use crate::rng::RngStream;
        use crate::statevector::StateVector;
        use num_complex::Complex64;

        let mut rng = RngStream::new(0xD1CE);
        for trial in 0..20 {
            let qubits = 2 + (rng.next_u64() % 5) as usize; // 2..=6
            let mut circuit = Circuit::new(qubits);
            for _ in 0..12 {
                let target = (rng.next_u64() as usize) % qubits;
                let mut gate = match rng.next_u64() % 4 {
                    0 => GateOp::x(target),
                    1 => GateOp::h(target),
                    2 => {
                        let other = (target + 1 + (rng.next_u64() as usize) % (qubits - 1)) % qubits;
                        GateOp::swap(target, other).unwrap()
                    }
                    _ => GateOp::phase_with(
                        1 + (rng.next_u64() % 4) as i32,
                        rng.next_u64().is_multiple_of(2),
                        target,
                    ),
                };
                // Maybe add a control on a free qubit.
                let ctrl = (rng.next_u64() as usize) % qubits;
                if rng.next_u64().is_multiple_of(2) && !gate.references(ctrl) {
                    gate = gate.controlled_by(ctrl).unwrap();
                }
                circuit.push(gate).unwrap();
            }

            let mut amps: Vec<Complex64> = (0..1usize << qubits)
                .map(|_| Complex64::new(rng.next_unit_f64() - 0.5, rng.next_unit_f64() - 0.5))
                .collect();
            let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            amps.iter_mut().for_each(|a| *a /= norm);
            let input = StateVector::from_amplitudes(amps).unwrap();

            let out = circuit
                .inverse()
                .run(circuit.run(input.clone()).unwrap())
                .unwrap();
            let fidelity = out.fidelity(&input).unwrap();
            assert!(fidelity >= 1.0 - 1e-10, "trial {trial}: fidelity {fidelity}");
            assert_eq!(circuit.inverse().inverse(), circuit, "trial {trial}");
        }
    }

    /// with_control output: identity on the control-0 branch, the original
    /// circuit on the control-1 branch, exhaustively over 5-qubit basis states.
    #[test]
    fn with_control_branches_exhaustively() {
        use crate::statevector::StateVector;

        let mut circuit = Circuit::new(4);
        circuit.push(GateOp::h(0)).unwrap();
        circuit.push(GateOp::x(2).controlled_by(0).unwrap()).unwrap();
        circuit.push(GateOp::phase(2, 3).controlled_by(2).unwrap()).unwrap();
        circuit.push(GateOp::swap(1, 3).unwrap()).unwrap();
        let controlled = circuit.with_control(4).unwrap();

        for basis in 0..1usize << 5 {
            let input = StateVector::<f64>::basis_state(5, basis).unwrap();
            let got = controlled.run(input.clone()).unwrap();
            if basis & (1 << 4) == 0 {
                for (i, (g, e)) in got
                    .amplitudes()
                    .iter()
                    .zip(input.amplitudes())
                    .enumerate()
                {
                    assert!((g - e).norm() < 1e-12, "basis {basis:#x} index {i}");
                }
            } else {
                let low = StateVector::<f64>::basis_state(4, basis & 0xF).unwrap();
                let expected = circuit.run(low).unwrap();
                for (i, e) in expected.amplitudes().iter().enumerate() {
                    let g = got.amplitudes()[i | (1 << 4)];
                    assert!((g - e).norm() < 1e-10, "basis {basis:#x} index {i}");
                }
            }
        }
    }

    #[test]
    fn dump_is_stable() {
        let mut c = Circuit::new(4);
        c.push(GateOp::h(0)).unwrap();
        c.push(GateOp::x(3).controlled_by(1).unwrap()).unwrap();
        c.push(GateOp::swap(0, 2).unwrap()).unwrap();
        c.push(GateOp::phase_with(2, true, 3).controlled_by(0).unwrap().controlled_by(1).unwrap())
            .unwrap();
        assert_eq!(
            c.dump(),
            "H 0 []\nX 3 [1]\nSWAP 0 2 []\nPHASE 3 [0 1] (2, true)\n"
        );
    }
}
