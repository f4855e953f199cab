//! Result serialization: a plain CSV table with `#`-prefixed metadata lines,
//! one row per (sweep point, selector).
//!
//! Floats are written with Rust's shortest-round-trip formatting, so parsing
//! a value back yields exactly the bits that were computed.

use std::io::{self, Write};

use crate::harness::{ExperimentSpec, Sweep, SweepResult};

pub const CSV_HEADER: &str =
    "fingers,ebn0_db,algorithm,realizations,mean_sinr_linear,se_sinr_linear,sinr_db,mean_evals";

/// Writes one sweep as CSV, prefixed by enough metadata to rerun it.
pub fn write_csv<W: Write>(
    out: &mut W,
    spec: &ExperimentSpec,
    result: &SweepResult,
) -> io::Result<()> {
    writeln!(out, "# users={}", spec.users)?;
    writeln!(out, "# paths={}", spec.paths)?;
    writeln!(out, "# chips_per_frame={}", spec.chips_per_frame)?;
    writeln!(out, "# th_alphabet={}", spec.th_alphabet)?;
    writeln!(out, "# decay={}", spec.decay)?;
    writeln!(out, "# log_var={}", spec.log_var)?;
    writeln!(out, "# interferer_gain_db={}", spec.interferer_gain_db)?;
    let axis = match &spec.sweep {
        Sweep::EbN0Db { .. } => "ebn0_db",
        Sweep::Fingers { .. } => "fingers",
    };
    writeln!(out, "# sweep_axis={axis}")?;
    writeln!(out, "# realizations={}", spec.realizations)?;
    writeln!(out, "# master_seed={}", spec.master_seed)?;
    writeln!(out, "# enumeration_cap={}", spec.enumeration_cap)?;
    writeln!(
        out,
        "# note=conventional selection ranks single-path SINRs and spends no overall-SINR evaluations"
    )?;
    for point in &result.points {
        for &algorithm in &point.skipped {
            writeln!(
                out,
                "# skipped: {algorithm} at fingers={} ebn0_db={} (enumeration cap)",
                point.fingers, point.ebn0_db
            )?;
        }
    }
    writeln!(out, "{CSV_HEADER}")?;
    for point in &result.points {
        for cell in &point.cells {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                point.fingers,
                point.ebn0_db,
                cell.algorithm,
                cell.realizations,
                cell.mean_sinr_linear,
                cell.se_sinr_linear,
                cell.sinr_db,
                cell.mean_evals
            )?;
        }
    }
    Ok(())
}
