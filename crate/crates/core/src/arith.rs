//! Builders for Fourier-basis arithmetic circuits: QFT, QFT adder (plain and
//! controlled), schoolbook and QFT multipliers, and two squarers.
//!
//! Conventions shared by every builder:
//!
//! - registers are LSB-first qubit lists, so a register holding integer `v`
//!   has bit `k` of `v` on its `k`-th qubit;
//! - [`qft_circuit`] includes the terminal swaps, i.e. it is the exact DFT on
//!   the register. After it, target qubit `p` of an `l`-qubit register
//!   carries the phase `e^{2*pi*i*v/2^(l-p)}`, so adding `x` means rotating
//!   qubit `p` by `PhaseRj` with `j = l - p - t` for each addend bit `t`;
//! - rotations with `j <= 0` are identities and are never emitted, which is
//!   also what makes every addition implicitly modular: addend bits that
//!   would overflow the target window produce no gates at all;
//! - all arithmetic is mod `2^len(target)`. Multiplication is overflow-free
//!   when the accumulator starts at zero and `l >= m + n`; squaring when
//!   `m >= 2n`.

use crate::circuit::{Circuit, GateOp};
use crate::error::{Error, Result};

/// Qubit assignment for the multiplier/squarer builders: input register `a`
/// (n qubits), input/target register `b` (m qubits), accumulator `c`
/// (l qubits, multipliers only) and the optional squarer ancilla.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArithRegisters {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
    pub ancilla: Option<usize>,
}

impl ArithRegisters {
    /// Contiguous layout `|a|b|c|` for a multiplier.
    pub fn mul_layout(n: usize, m: usize, l: usize) -> Self {
        Self {
            a: (0..n).collect(),
            b: (n..n + m).collect(),
            c: (n + m..n + m + l).collect(),
            ancilla: None,
        }
    }

    /// Contiguous layout `|a|b|` (plus one ancilla qubit on top if requested)
    /// for a squarer.
    pub fn square_layout(n: usize, m: usize, with_ancilla: bool) -> Self {
        Self {
            a: (0..n).collect(),
            b: (n..n + m).collect(),
            c: Vec::new(),
            ancilla: with_ancilla.then_some(n + m),
        }
    }
}

fn check_disjoint(lists: &[&[usize]]) -> Result<()> {
    let mut seen = std::collections::BTreeSet::new();
    for list in lists {
        for &q in *list {
            if !seen.insert(q) {
                return Err(Error::RegisterOverlap { qubit: q });
            }
        }
    }
    Ok(())
}

fn width(lists: &[&[usize]]) -> usize {
    lists
        .iter()
        .flat_map(|l| l.iter())
        .copied()
        .max()
        .map_or(0, |m| m + 1)
}

/// Quantum Fourier transform on `reg`: the exact DFT, i.e. the H + controlled
/// rotation cascade followed by the floor(l/2) terminal swaps that put the
/// output back in LSB-first order.
pub fn qft_circuit(reg: &[usize]) -> Result<Circuit> {
    if reg.is_empty() {
        return Err(Error::EmptyRegister { name: "register" });
    }
    check_disjoint(&[reg])?;
    let l = reg.len();
    let mut circuit = Circuit::new(width(&[reg]));
    for u in (0..l).rev() {
        circuit.push(GateOp::h(reg[u]))?;
        for k in (0..u).rev() {
            let j = (u - k + 1) as i32;
            circuit.push(GateOp::phase(j, reg[u]).controlled_by(reg[k])?)?;
        }
    }
    for i in 0..l / 2 {
        circuit.push(GateOp::swap(reg[i], reg[l - 1 - i])?)?;
    }
    Ok(circuit)
}

/// The phase rotations that add `addend` into a Fourier-transformed `target`:
/// for addend bit `t` and target qubit `p`, a rotation with `j = l - p - t`
/// controlled by the addend bit.
fn adder_rotations(addend: &[usize], target: &[usize]) -> Result<Circuit> {
    let l = target.len();
    let mut circuit = Circuit::new(width(&[addend, target]));
    for (t, &addend_bit) in addend.iter().enumerate() {
        for (p, &target_bit) in target.iter().enumerate().take(l.saturating_sub(t)) {
            let j = (l - p - t) as i32;
            circuit.push(GateOp::phase(j, target_bit).controlled_by(addend_bit)?)?;
        }
    }
    Ok(circuit)
}

/// QFT adder `|x>|y> -> |x>|x + y mod 2^l>` on the `l`-qubit `target`.
///
/// With a `control` qubit, only the rotation block is controlled; the QFT and
/// inverse QFT stay bare, which is sound because they cancel exactly when the
/// rotations are suppressed.
pub fn qft_adder(addend: &[usize], target: &[usize], control: Option<usize>) -> Result<Circuit> {
    if addend.is_empty() {
        return Err(Error::EmptyRegister { name: "addend" });
    }
    if target.is_empty() {
        return Err(Error::EmptyRegister { name: "target" });
    }
    check_disjoint(&[addend, target])?;
    let mut n_qubits = width(&[addend, target]);
    if let Some(c) = control {
        if addend.contains(&c) || target.contains(&c) {
            return Err(Error::RegisterOverlap { qubit: c });
        }
        n_qubits = n_qubits.max(c + 1);
    }

    let qft = qft_circuit(target)?;
    let mut rotations = adder_rotations(addend, target)?;
    if let Some(c) = control {
        rotations = rotations.with_control(c)?;
    }

    let mut circuit = Circuit::new(n_qubits);
    circuit.add_register("addend", addend)?;
    circuit.add_register("target", target)?;
    circuit.append(&qft)?;
    circuit.append(&rotations)?;
    circuit.append(&qft.inverse())?;
    Ok(circuit)
}

fn mul_registers(regs: &ArithRegisters) -> Result<()> {
    if regs.a.is_empty() {
        return Err(Error::EmptyRegister { name: "a" });
    }
    if regs.b.is_empty() {
        return Err(Error::EmptyRegister { name: "b" });
    }
    if regs.c.is_empty() {
        return Err(Error::EmptyRegister { name: "c" });
    }
    check_disjoint(&[&regs.a, &regs.b, &regs.c])
}

/// Schoolbook multiplier `|a>|b>|c> -> |a>|b>|c + ab mod 2^l>`: one QFT adder
/// per bit of `a`, controlled by that bit, adding `b` into the upper `l - s`
/// qubits of the accumulator (the shift-by-`2^s` addition).
pub fn schoolbook_multiplier(regs: &ArithRegisters) -> Result<Circuit> {
    mul_registers(regs)?;
    let l = regs.c.len();
    let mut circuit = Circuit::new(width(&[&regs.a, &regs.b, &regs.c]));
    circuit.add_register("a", &regs.a)?;
    circuit.add_register("b", &regs.b)?;
    circuit.add_register("c", &regs.c)?;
    for (s, &a_bit) in regs.a.iter().enumerate() {
        if s >= l {
            break;
        }
        circuit.append(&qft_adder(&regs.b, &regs.c[s..], Some(a_bit))?)?;
    }
    Ok(circuit)
}

/// QFT multiplier: one QFT of the accumulator, then for every bit pair
/// `(a_s, b_t)` a doubly-controlled rotation block with `j = l - p - s - t`,
/// then the inverse QFT. Same contract as [`schoolbook_multiplier`].
pub fn qft_multiplier(regs: &ArithRegisters) -> Result<Circuit> {
    mul_registers(regs)?;
    let l = regs.c.len();
    let mut circuit = Circuit::new(width(&[&regs.a, &regs.b, &regs.c]));
    circuit.add_register("a", &regs.a)?;
    circuit.add_register("b", &regs.b)?;
    circuit.add_register("c", &regs.c)?;

    let qft = qft_circuit(&regs.c)?;
    circuit.append(&qft)?;
    for (s, &a_bit) in regs.a.iter().enumerate() {
        for (t, &b_bit) in regs.b.iter().enumerate() {
            for (p, &c_bit) in regs.c.iter().enumerate().take(l.saturating_sub(s + t)) {
                let j = (l - p - s - t) as i32;
                circuit.push(
                    GateOp::phase(j, c_bit)
                        .controlled_by(a_bit)?
                        .controlled_by(b_bit)?,
                )?;
            }
        }
    }
    circuit.append(&qft.inverse())?;
    Ok(circuit)
}

/// Adder-based squarer `|a>|b>|0> -> |a>|b + a^2 mod 2^m>|0>`.
///
/// Bit `a_s` cannot control an adder whose addend contains `a_s` itself, so
/// each stage copies it to the ancilla with a CNOT, runs the adder controlled
/// by the ancilla, and uncopies. The ancilla returns to |0> on every basis
/// input.
pub fn adder_squarer(regs: &ArithRegisters) -> Result<Circuit> {
    let anc = regs.ancilla.ok_or(Error::MissingAncilla)?;
    if regs.a.is_empty() {
        return Err(Error::EmptyRegister { name: "a" });
    }
    if regs.b.is_empty() {
        return Err(Error::EmptyRegister { name: "b" });
    }
    let anc_list = [anc];
    check_disjoint(&[&regs.a, &regs.b, &anc_list])?;

    let m = regs.b.len();
    let mut circuit = Circuit::new(width(&[&regs.a, &regs.b, &anc_list]));
    circuit.add_register("a", &regs.a)?;
    circuit.add_register("b", &regs.b)?;
    circuit.add_register("ancilla", &anc_list)?;
    for (s, &a_bit) in regs.a.iter().enumerate() {
        if s >= m {
            break;
        }
        let copy = GateOp::x(anc).controlled_by(a_bit)?;
        circuit.push(copy.clone())?;
        circuit.append(&qft_adder(&regs.a, &regs.b[s..], Some(anc))?)?;
        circuit.push(copy)?;
    }
    Ok(circuit)
}

/// QFT squarer `|a>|b> -> |a>|b + a^2 mod 2^m>`, no ancilla.
///
/// Inside the Fourier-transformed target, block `s` rotates by the encoded
/// value of `2^s * a_s * a`: cross terms `t != s` are doubly controlled by
/// `{a_s, a_t}` with `j = m - p - s - t`, and the self term collapses to a
/// single control (`a_s * a_s = a_s`) with `j = m - p - 2s`.
pub fn qft_squarer(a: &[usize], b: &[usize]) -> Result<Circuit> {
    if a.is_empty() {
        return Err(Error::EmptyRegister { name: "a" });
    }
    if b.is_empty() {
        return Err(Error::EmptyRegister { name: "b" });
    }
    check_disjoint(&[a, b])?;

    let m = b.len();
    let mut circuit = Circuit::new(width(&[a, b]));
    circuit.add_register("a", a)?;
    circuit.add_register("b", b)?;

    let qft = qft_circuit(b)?;
    circuit.append(&qft)?;
    for (s, &a_s) in a.iter().enumerate() {
        for (t, &a_t) in a.iter().enumerate() {
            if t == s {
                for (p, &b_p) in b.iter().enumerate().take(m.saturating_sub(2 * s)) {
                    let j = (m - p - 2 * s) as i32;
                    circuit.push(GateOp::phase(j, b_p).controlled_by(a_s)?)?;
                }
            } else {
                for (p, &b_p) in b.iter().enumerate().take(m.saturating_sub(s + t)) {
                    let j = (m - p - s - t) as i32;
                    circuit.push(
                        GateOp::phase(j, b_p).controlled_by(a_s)?.controlled_by(a_t)?,
                    )?;
                }
            }
        }
    }
    circuit.append(&qft.inverse())?;
    Ok(circuit)
}
