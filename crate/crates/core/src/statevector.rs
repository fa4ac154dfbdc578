//! Dense statevector simulation kernel.
//!
//! Basis ordering is little-endian: qubit 0 is the least-significant bit of
//! the amplitude index, so "integer x in register" is the obvious bit slice.
//!
//! Gate application is an in-place strided pass that only visits the
//! amplitudes a gate can touch: for a gate with `c` control qubits the kernel
//! enumerates the `2^(q-c-1)` relevant indices directly instead of scanning
//! and filtering the whole array. Every gate in the set is a permutation, a
//! diagonal phase, or a Hadamard butterfly, so no scratch buffer is needed
//! and results are independent of any internal work splitting.

use num_complex::Complex;

use crate::circuit::{Circuit, GateKind, GateOp};
use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::scalar::{from_f64, Scalar};

/// Default cap on state size: allocations above `2^26` amplitudes are refused
/// unless a caller opts in via [`StateVector::zero_state_with_limit`].
pub const DEFAULT_MAX_QUBITS: usize = 26;

/// Summation happens in fixed-size chunks whose partial sums are combined in
/// index order, keeping reductions deterministic and rounding growth small.
const SUM_CHUNK: usize = 4096;

/// Complex amplitude vector over the `2^q` basis states of a `q`-qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<S: Scalar> {
    num_qubits: usize,
    amps: Vec<Complex<S>>,
}

impl<S: Scalar> StateVector<S> {
    /// The all-zeros state |0...0> of `q` qubits.
    pub fn zero_state(q: usize) -> Result<Self> {
        Self::zero_state_with_limit(q, DEFAULT_MAX_QUBITS)
    }

    /// Same as [`zero_state`](Self::zero_state) with an explicit qubit cap.
    pub fn zero_state_with_limit(q: usize, max_qubits: usize) -> Result<Self> {
        if q > max_qubits {
            return Err(Error::ResourceLimit {
                qubits: q,
                required_bytes: (std::mem::size_of::<Complex<S>>() as u128) << q,
                max_qubits,
            });
        }
        let mut amps = vec![Complex::new(S::zero(), S::zero()); 1usize << q];
        amps[0] = Complex::new(S::one(), S::zero());
        Ok(Self { num_qubits: q, amps })
    }

    /// Basis state |index> of `q` qubits.
    pub fn basis_state(q: usize, index: usize) -> Result<Self> {
        let mut state = Self::zero_state(q)?;
        if index >= state.amps.len() {
            return Err(Error::QubitOutOfRange {
                qubit: index,
                num_qubits: q,
            });
        }
        state.amps[0] = Complex::new(S::zero(), S::zero());
        state.amps[index] = Complex::new(S::one(), S::zero());
        Ok(state)
    }

    /// Wraps an amplitude vector whose length must be a power of two.
    /// The caller is responsible for normalization.
    pub fn from_amplitudes(amps: Vec<Complex<S>>) -> Result<Self> {
        if amps.is_empty() || !amps.len().is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "amplitude vector length {} is not a power of two",
                amps.len()
            )));
        }
        let num_qubits = amps.len().trailing_zeros() as usize;
        Ok(Self { num_qubits, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex<S>] {
        &self.amps
    }

    /// Applies one gate, consuming and returning the state.
    pub fn apply(mut self, gate: &GateOp) -> Result<Self> {
        self.apply_mut(gate)?;
        Ok(self)
    }

    /// In-place gate application.
    pub fn apply_mut(&mut self, gate: &GateOp) -> Result<()> {
        let n = self.num_qubits;
        let max = gate.max_qubit();
        if max >= n {
            return Err(Error::QubitOutOfRange {
                qubit: max,
                num_qubits: n,
            });
        }

        let cmask: usize = gate.controls().iter().fold(0, |m, &c| m | (1usize << c));
        let mut pinned: Vec<usize> = gate.controls().to_vec();

        match gate.kind() {
            GateKind::X => {
                let t = gate.targets()[0];
                let tbit = 1usize << t;
                pinned.push(t);
                pinned.sort_unstable();
                let amps = &mut self.amps;
                for_each_pinned(n, &pinned, cmask, |i| amps.swap(i, i | tbit));
            }
            GateKind::H => {
                let t = gate.targets()[0];
                let tbit = 1usize << t;
                pinned.push(t);
                pinned.sort_unstable();
                let f = S::FRAC_1_SQRT_2();
                let amps = &mut self.amps;
                for_each_pinned(n, &pinned, cmask, |i| {
                    let a = amps[i];
                    let b = amps[i | tbit];
                    amps[i] = (a + b).scale(f);
                    amps[i | tbit] = (a - b).scale(f);
                });
            }
            GateKind::Swap => {
                let (t1, t2) = (gate.targets()[0], gate.targets()[1]);
                let (m1, m2) = (1usize << t1, 1usize << t2);
                pinned.push(t1);
                pinned.push(t2);
                pinned.sort_unstable();
                // Visit each pair once: bit t1 pinned to 1, bit t2 to 0.
                let amps = &mut self.amps;
                for_each_pinned(n, &pinned, cmask | m1, |i| amps.swap(i, i ^ m1 ^ m2));
            }
            GateKind::PhaseRj { j, inverted } => {
                // Identity for j <= 0: the state stays bit-identical.
                if j <= 0 {
                    return Ok(());
                }
                let t = gate.targets()[0];
                pinned.push(t);
                pinned.sort_unstable();
                let phase = phase_factor::<S>(j, inverted);
                let amps = &mut self.amps;
                for_each_pinned(n, &pinned, cmask | (1usize << t), |i| {
                    amps[i] *= phase;
                });
            }
        }
        Ok(())
    }

    /// Probability of measuring |1> on `qubit`, clamped to `[0, 1]`.
    pub fn prob_one(&self, qubit: usize) -> Result<S> {
        if qubit >= self.num_qubits {
            return Err(Error::QubitOutOfRange {
                qubit,
                num_qubits: self.num_qubits,
            });
        }
        let amps = &self.amps;
        let mut sum = ChunkedSum::new();
        for_each_pinned(self.num_qubits, &[qubit], 1usize << qubit, |i| {
            sum.add(amps[i].norm_sqr());
        });
        Ok(sum.finish().max(S::zero()).min(S::one()))
    }

    /// Draws `shots` Bernoulli samples of `qubit` and returns the number of
    /// |1> outcomes. Deterministic for a fixed [`RngStream`].
    pub fn sample_hits(&self, qubit: usize, shots: u64, rng: &mut RngStream) -> Result<u64> {
        let p = self
            .prob_one(qubit)?
            .to_f64()
            .expect("probability converts to f64");
        Ok(rng.bernoulli_hits(p, shots))
    }

    /// Sum of |amplitude|^2 over the whole state.
    pub fn norm_sqr(&self) -> S {
        let mut sum = ChunkedSum::new();
        for a in &self.amps {
            sum.add(a.norm_sqr());
        }
        sum.finish()
    }

    /// Squared overlap |<self|other>|^2.
    pub fn fidelity(&self, other: &Self) -> Result<S> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::QubitCountMismatch {
                circuit: other.num_qubits,
                state: self.num_qubits,
            });
        }
        let mut re = ChunkedSum::new();
        let mut im = ChunkedSum::new();
        for (a, b) in self.amps.iter().zip(other.amps.iter()) {
            let z = a.conj() * *b;
            re.add(z.re);
            im.add(z.im);
        }
        let (re, im) = (re.finish(), im.finish());
        Ok(re * re + im * im)
    }
}

impl Circuit {
    /// Left fold of [`StateVector::apply`] over the gate list. The circuit
    /// and state must agree on the qubit count.
    pub fn run<S: Scalar>(&self, state: StateVector<S>) -> Result<StateVector<S>> {
        if self.num_qubits() != state.num_qubits() {
            return Err(Error::QubitCountMismatch {
                circuit: self.num_qubits(),
                state: state.num_qubits(),
            });
        }
        let mut state = state;
        for gate in self.gates() {
            state.apply_mut(gate)?;
        }
        Ok(state)
    }
}

/// `e^{+-2*pi*i/2^j}` for `j >= 1`.
fn phase_factor<S: Scalar>(j: i32, inverted: bool) -> Complex<S> {
    let tau = S::PI() + S::PI();
    let angle = tau * from_f64::<S>(2f64.powi(-j));
    let phase = Complex::from_polar(S::one(), angle);
    if inverted {
        phase.conj()
    } else {
        phase
    }
}

/// Visits every amplitude index whose bits at the `pinned` positions equal
/// the corresponding bits of `ones`; the remaining free bits sweep all
/// combinations in ascending order.
///
/// `pinned` must be sorted ascending and `ones` must only set pinned bits.
#[inline]
fn for_each_pinned(num_qubits: usize, pinned: &[usize], ones: usize, mut f: impl FnMut(usize)) {
    debug_assert!(pinned.windows(2).all(|w| w[0] < w[1]));
    let free_bits = num_qubits - pinned.len();
    for idx in 0..1usize << free_bits {
        let mut i = idx;
        for &p in pinned {
            i = ((i >> p) << (p + 1)) | (i & ((1usize << p) - 1));
        }
        f(i | ones);
    }
}

/// Fixed-topology pairwise accumulator: sums in chunks of [`SUM_CHUNK`] terms
/// and combines chunk totals in order.
struct ChunkedSum<S: Scalar> {
    total: S,
    chunk: S,
    count: usize,
}

impl<S: Scalar> ChunkedSum<S> {
    fn new() -> Self {
        Self {
            total: S::zero(),
            chunk: S::zero(),
            count: 0,
        }
    }

    #[inline]
    fn add(&mut self, x: S) {
        self.chunk += x;
        self.count += 1;
        if self.count == SUM_CHUNK {
            self.total += self.chunk;
            self.chunk = S::zero();
            self.count = 0;
        }
    }

    fn finish(&self) -> S {
        self.total + self.chunk
    }
}
