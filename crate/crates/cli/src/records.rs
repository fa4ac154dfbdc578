//! CSV result rows.
//!
//! One [`RunRecord`] per experiment repetition, plus one summary row per
//! `(n, kmax)` combination. Summary rows use `rep = -1` and repurpose the
//! float columns: `pi_hat` holds the mean of the per-repetition estimates,
//! `a_hat` their standard deviation, and `theta_hat` the exact classical
//! value (4 times the lattice fraction).

pub const CSV_HEADER: &str =
    "n,rep,kmax,shots,seed,mode,theta_hat,a_hat,pi_hat,queries,qubits,wall_time_ms";

/// Marker value of the `rep` column for summary rows.
pub const SUMMARY_REP: i64 = -1;

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub n: u32,
    pub rep: i64,
    pub kmax: u32,
    pub shots: u64,
    pub seed: u64,
    pub mode: String,
    pub theta_hat: f64,
    pub a_hat: f64,
    pub pi_hat: f64,
    pub queries: u64,
    pub qubits: u32,
    pub wall_time_ms: f64,
}

impl RunRecord {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.rep,
            self.kmax,
            self.shots,
            self.seed,
            self.mode,
            fmt_sig(self.theta_hat),
            fmt_sig(self.a_hat),
            fmt_sig(self.pi_hat),
            self.queries,
            self.qubits,
            fmt_sig(self.wall_time_ms),
        )
    }

    pub fn parse(line: &str) -> Result<Self, String> {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 12 {
            return Err(format!("expected 12 fields, got {}", fields.len()));
        }
        let int = |i: usize| -> Result<u64, String> {
            fields[i]
                .parse()
                .map_err(|e| format!("field {i} ({}): {e}", fields[i]))
        };
        let float = |i: usize| -> Result<f64, String> {
            fields[i]
                .parse()
                .map_err(|e| format!("field {i} ({}): {e}", fields[i]))
        };
        Ok(Self {
            n: int(0)? as u32,
            rep: fields[1]
                .parse()
                .map_err(|e| format!("field 1 ({}): {e}", fields[1]))?,
            kmax: int(2)? as u32,
            shots: int(3)?,
            seed: int(4)?,
            mode: fields[5].to_string(),
            theta_hat: float(6)?,
            a_hat: float(7)?,
            pi_hat: float(8)?,
            queries: int(9)?,
            qubits: int(10)? as u32,
            wall_time_ms: float(11)?,
        })
    }
}

/// Formats with 12 significant digits in plain decimal notation.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig_formatting() {
        assert_eq!(fmt_sig(3.75), "3.75000000000");
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(1.31811607165), "1.31811607165");
        assert_eq!(fmt_sig(12345.0), "12345.0000000");
        assert_eq!(fmt_sig(0.003), "0.00300000000000");
    }

    #[test]
    fn record_round_trips() {
        let record = RunRecord {
            n: 3,
            rep: -1,
            kmax: 5,
            shots: 100,
            seed: 42,
            mode: "sampled".into(),
            theta_hat: 1.2094292028881888,
            a_hat: 0.875,
            pi_hat: 3.5,
            queries: 6800,
            qubits: 13,
            wall_time_ms: 12.5,
        };
        let line = record.to_csv();
        let parsed = RunRecord::parse(&line).unwrap();
        assert_eq!(parsed.to_csv(), line);
        assert_eq!(parsed.queries, 6800);
        assert!(RunRecord::parse("1,2,3").is_err());
    }
}
