//! The `pi` subcommand: runs the estimation experiment per requested
//! `(n, kmax)` combination and emits CSV.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use qpi_core::mlqae::SampleMode;
use qpi_core::pi::{estimate_pi, PiEstimate, PiExperimentConfig};
use qpi_core::Error;

use qpi_cli::records::{RunRecord, CSV_HEADER, SUMMARY_REP};

pub struct PiParams {
    pub ns: Vec<u32>,
    pub kmaxes: Vec<u32>,
    pub shots: u64,
    pub reps: u64,
    pub seed: u64,
    pub mode: SampleMode,
    pub out: Option<PathBuf>,
    pub allow_big: bool,
}

pub fn mode_name(mode: SampleMode) -> &'static str {
    match mode {
        SampleMode::Sampled => "sampled",
        SampleMode::Exact => "exact",
    }
}

fn amplitude_bytes(n: u32) -> u128 {
    16u128 << (4 * n + 1)
}

pub fn run(params: &PiParams) -> i32 {
    if !params.allow_big {
        if let Some(&n) = params.ns.iter().find(|&&n| n >= 6) {
            eprintln!(
                "n = {n} needs {} qubits ({} bytes of amplitudes); rerun with --allow-big",
                4 * n + 1,
                amplitude_bytes(n)
            );
            return 3;
        }
    }

    let mut writer: Box<dyn Write> = match &params.out {
        Some(path) => match File::create(path) {
            Ok(file) => Box::new(BufWriter::new(file)),
            Err(err) => {
                eprintln!("cannot create {}: {err}", path.display());
                return 1;
            }
        },
        None => Box::new(io::stdout().lock()),
    };

    eprintln!("shot sampling: {} substreams", qpi_core::RngStream::ALGORITHM);
    if writeln!(writer, "{CSV_HEADER}").is_err() {
        return 1;
    }

    for &n in &params.ns {
        for &kmax in &params.kmaxes {
            let config = PiExperimentConfig {
                n: n as usize,
                k_max: kmax,
                shots: params.shots,
                repetitions: params.reps,
                seed: params.seed,
                mode: params.mode,
            };
            let started = Instant::now();
            let estimate: PiEstimate<f64> = match estimate_pi(&config) {
                Ok(e) => e,
                Err(err @ Error::ResourceLimit { .. }) => {
                    eprintln!("{err}");
                    return 3;
                }
                Err(err) => {
                    eprintln!("{err}");
                    return 1;
                }
            };
            let total_ms = started.elapsed().as_secs_f64() * 1e3;

            let base = RunRecord {
                n,
                rep: 0,
                kmax,
                shots: params.shots,
                seed: params.seed,
                mode: mode_name(params.mode).into(),
                theta_hat: 0.0,
                a_hat: 0.0,
                pi_hat: 0.0,
                queries: estimate.query_count,
                qubits: estimate.qubit_count as u32,
                wall_time_ms: 0.0,
            };
            for record in &estimate.records {
                let row = RunRecord {
                    rep: record.rep as i64,
                    theta_hat: record.theta_hat,
                    a_hat: record.a_hat,
                    pi_hat: record.pi_hat,
                    wall_time_ms: record.wall_ms,
                    ..base.clone()
                };
                if writeln!(writer, "{}", row.to_csv()).is_err() {
                    return 1;
                }
            }
            // Summary row: mean in pi_hat, stddev in a_hat, classical exact
            // value in theta_hat.
            let summary = RunRecord {
                rep: SUMMARY_REP,
                theta_hat: estimate.classical_pi,
                a_hat: estimate.stddev_pi,
                pi_hat: estimate.mean_pi,
                wall_time_ms: total_ms,
                ..base
            };
            if writeln!(writer, "{}", summary.to_csv()).is_err() {
                return 1;
            }
        }
    }
    if writer.flush().is_err() {
        return 1;
    }
    0
}
