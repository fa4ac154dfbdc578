//! Monte Carlo pi estimation on the simulator.
//!
//! A 2^n x 2^n lattice of points (x, y) samples the square [0, 2^n)^2; the
//! fraction falling inside the quarter circle x^2 + y^2 < 2^(2n) approaches
//! pi/4. The quantum circuit prepares all lattice points in uniform
//! superposition, computes the inside/outside indicator reversibly into a
//! flag qubit, and maximum-likelihood amplitude estimation reads the fraction
//! off the flag. The exact lattice count doubles as the classical reference
//! ("systematic sampling") the estimates are compared against.
//!
//! Qubit layout, LSB first: x register (qubits `0..n`), y register
//! (`n..2n`), 2n-qubit ancilla accumulator (`2n..4n`), flag on top
//! (qubit `4n`) - `4n + 1` qubits in total. Ancilla and flag together form a
//! (2n+1)-bit accumulator with the flag as most significant bit.

use std::time::Instant;

use crate::arith::qft_squarer;
use crate::circuit::{Circuit, GateOp};
use crate::error::{Error, Result};
use crate::mlqae::{
    flag_probabilities, hits_from_probabilities, mle_theta, AmplitudeProblem, MLQAESchedule,
    SampleMode,
};
use crate::rng::RngStream;
use crate::scalar::{from_f64, from_u64, Scalar};

/// Register layout of the pi circuit for a given `n` (bits per axis).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PiLayout {
    n: usize,
}

impl PiLayout {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "lattice needs at least one bit per axis".into(),
            ));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_reg(&self) -> Vec<usize> {
        (0..self.n).collect()
    }

    pub fn y_reg(&self) -> Vec<usize> {
        (self.n..2 * self.n).collect()
    }

    /// The 2n ancilla qubits: low bits of the combined accumulator.
    pub fn ancilla(&self) -> Vec<usize> {
        (2 * self.n..4 * self.n).collect()
    }

    /// The flag qubit: most significant bit of the combined accumulator.
    pub fn flag(&self) -> usize {
        4 * self.n
    }

    /// Ancilla plus flag: the (2n+1)-bit accumulator the squarers write into.
    pub fn accumulator(&self) -> Vec<usize> {
        let mut acc = self.ancilla();
        acc.push(self.flag());
        acc
    }

    pub fn num_qubits(&self) -> usize {
        4 * self.n + 1
    }
}

/// Whether lattice point (x, y) lies inside the quarter circle,
/// i.e. x^2 + y^2 < 2^(2n).
pub fn inside_quadrant(x: u64, y: u64, n: u32) -> Result<bool> {
    if n >= 32 {
        return Err(Error::InvalidArgument(format!(
            "lattice width n = {n} exceeds the supported 31 bits"
        )));
    }
    let side = 1u64 << n;
    if x >= side || y >= side {
        return Err(Error::InvalidArgument(format!(
            "point ({x}, {y}) outside the 2^{n} lattice"
        )));
    }
    Ok(x * x + y * y < 1u64 << (2 * n))
}

/// Exact quarter-circle fraction: lattice points inside over total.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeFraction {
    pub inside: u64,
    pub total: u64,
}

impl LatticeFraction {
    pub fn value<S: Scalar>(&self) -> S {
        from_u64::<S>(self.inside) / from_u64::<S>(self.total)
    }

    /// Four times the fraction: the classical pi estimate at this lattice size.
    pub fn pi_estimate<S: Scalar>(&self) -> S {
        from_f64::<S>(4.0) * self.value::<S>()
    }
}

/// Counts the whole 2^(2n) lattice by enumeration. This is the classical
/// "systematic sampling" reference line and the ground-truth amplitude of the
/// quantum circuit.
pub fn quadrant_fraction(n: u32) -> Result<LatticeFraction> {
    if n == 0 || n > 12 {
        return Err(Error::InvalidArgument(format!(
            "enumeration supports 1 <= n <= 12, got {n}"
        )));
    }
    let side = 1u64 << n;
    let mut inside = 0u64;
    for x in 0..side {
        for y in 0..side {
            if inside_quadrant(x, y, n)? {
                inside += 1;
            }
        }
    }
    Ok(LatticeFraction {
        inside,
        total: side * side,
    })
}

/// State preparation: Hadamards on both axis registers, giving every (x, y)
/// amplitude 2^-n.
pub fn uniform_prep_circuit(layout: &PiLayout) -> Circuit {
    let mut circuit = Circuit::new(layout.num_qubits());
    for q in layout.x_reg().into_iter().chain(layout.y_reg()) {
        circuit.push(GateOp::h(q)).expect("layout qubits in range");
    }
    circuit
}

/// The reversible indicator: computes `flag = [x^2 + y^2 < 2^(2n)]` and
/// returns the ancilla to |0>.
///
/// Five steps: (1) square x into the combined (2n+1)-bit accumulator,
/// (2) square y into it - the accumulator now holds x^2 + y^2, whose top bit
/// (the flag) says "outside" - (3) X the flag so it says "inside",
/// (4, 5) un-square y then x from the 2n-bit ancilla part, which holds
/// x^2 + y^2 mod 2^(2n) and returns to zero exactly. The flag is untouched by
/// the uncompute because the subtraction is mod 2^(2n).
pub fn indicator_circuit(layout: &PiLayout) -> Circuit {
    let x = layout.x_reg();
    let y = layout.y_reg();
    let ancilla = layout.ancilla();
    let accumulator = layout.accumulator();

    let build = |r: Result<Circuit>| r.expect("layout registers are disjoint");
    let square_x = build(qft_squarer(&x, &accumulator));
    let square_y = build(qft_squarer(&y, &accumulator));
    let unsquare_y = build(qft_squarer(&y, &ancilla)).inverse();
    let unsquare_x = build(qft_squarer(&x, &ancilla)).inverse();

    let mut circuit = Circuit::new(layout.num_qubits());
    circuit.add_register("x", &x).expect("fresh circuit");
    circuit.add_register("y", &y).expect("fresh circuit");
    circuit.add_register("ancilla", &ancilla).expect("fresh circuit");
    circuit.add_register("flag", &[layout.flag()]).expect("fresh circuit");
    circuit.append(&square_x).expect("same width");
    circuit.append(&square_y).expect("same width");
    circuit.push(GateOp::x(layout.flag())).expect("flag in range");
    circuit.append(&unsquare_y).expect("same width");
    circuit.append(&unsquare_x).expect("same width");
    circuit
}

/// The full amplitude-estimation instance: A = prep then indicator, domain =
/// both axis registers plus the flag, ancillas excluded (the indicator
/// restores them).
pub fn pi_problem(layout: &PiLayout) -> AmplitudeProblem {
    let mut a = uniform_prep_circuit(layout);
    a.append(&indicator_circuit(layout)).expect("same width");
    let mut domain = layout.x_reg();
    domain.extend(layout.y_reg());
    domain.push(layout.flag());
    AmplitudeProblem::new(a, domain, layout.flag(), layout.ancilla())
        .expect("layout registers are disjoint")
}

/// Parameters of one pi-estimation experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PiExperimentConfig {
    /// Bits per axis (the full-scale experiments run 2..=6).
    pub n: usize,
    pub k_max: u32,
    pub shots: u64,
    pub repetitions: u64,
    pub seed: u64,
    pub mode: SampleMode,
}

/// One repetition: its substream id, the estimate, and the wall time.
#[derive(Debug, Clone, PartialEq)]
pub struct PiRecord<S: Scalar> {
    pub rep: u64,
    /// RNG substream used for this repetition (equals `rep`).
    pub stream: u64,
    pub theta_hat: S,
    pub a_hat: S,
    /// `4 * a_hat`.
    pub pi_hat: S,
    pub hits: Vec<S>,
    /// Not covered by the determinism contract.
    pub wall_ms: f64,
}

/// Aggregated experiment result.
#[derive(Debug, Clone, PartialEq)]
pub struct PiEstimate<S: Scalar> {
    pub records: Vec<PiRecord<S>>,
    pub mean_pi: S,
    /// Sample standard deviation of the per-repetition pi estimates
    /// (zero for a single repetition).
    pub stddev_pi: S,
    /// Exact lattice fraction from [`quadrant_fraction`].
    pub classical: LatticeFraction,
    /// `4 * classical fraction`: the systematic-sampling reference value.
    pub classical_pi: S,
    pub query_count: u64,
    pub qubit_count: usize,
    /// Lattice discretization error scale, `2^-n`. Documentation only.
    pub sampling_error_scale: S,
    /// Amplitude-estimation error scale of the schedule. Documentation only.
    pub estimation_error_scale: S,
    /// Name of the RNG driving the shot sampling.
    pub rng_algorithm: &'static str,
}

/// Runs the full experiment: one simulation pass computes the exact per-`k`
/// flag probabilities, then every repetition draws its shots from them with
/// its own RNG substream and maximizes the likelihood.
///
/// Sharing the probabilities across repetitions is exact, not an
/// approximation: the simulation is deterministic, so per-repetition
/// schedule runs would recompute bit-identical values.
pub fn estimate_pi<S: Scalar>(config: &PiExperimentConfig) -> Result<PiEstimate<S>> {
    if config.repetitions == 0 {
        return Err(Error::InvalidArgument(
            "experiment needs at least one repetition".into(),
        ));
    }
    let layout = PiLayout::new(config.n)?;
    let problem = pi_problem(&layout);
    let schedule = MLQAESchedule::new(config.k_max, config.shots);
    let classical = quadrant_fraction(config.n as u32)?;

    let probs = flag_probabilities::<S>(&problem, &schedule)?;

    let mut records = Vec::with_capacity(config.repetitions as usize);
    for rep in 0..config.repetitions {
        let started = Instant::now();
        let mut rng = RngStream::with_stream(config.seed, rep);
        let hits = hits_from_probabilities(&probs, &schedule, config.mode, &mut rng);
        let estimate = mle_theta(&hits, &schedule)?;
        records.push(PiRecord {
            rep,
            stream: rep,
            theta_hat: estimate.theta_hat,
            a_hat: estimate.a_hat,
            pi_hat: from_f64::<S>(4.0) * estimate.a_hat,
            hits: estimate.hits,
            wall_ms: started.elapsed().as_secs_f64() * 1e3,
        });
    }

    let count = from_u64::<S>(config.repetitions);
    let mean_pi = records
        .iter()
        .fold(S::zero(), |acc, r| acc + r.pi_hat)
        / count;
    let stddev_pi = if config.repetitions > 1 {
        let ss = records.iter().fold(S::zero(), |acc, r| {
            let d = r.pi_hat - mean_pi;
            acc + d * d
        });
        (ss / (count - S::one())).sqrt()
    } else {
        S::zero()
    };

    Ok(PiEstimate {
        records,
        mean_pi,
        stddev_pi,
        classical,
        classical_pi: classical.pi_estimate::<S>(),
        query_count: schedule.query_count(),
        qubit_count: layout.num_qubits(),
        sampling_error_scale: from_f64::<S>(2f64.powi(-(config.n as i32))),
        estimation_error_scale: schedule.epsilon_target(),
        rng_algorithm: RngStream::ALGORITHM,
    })
}
