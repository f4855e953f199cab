//! Monte Carlo experiment driver: sweeps one axis (SNR or finger count),
//! runs every requested selector on the same channel realizations, and
//! aggregates linear-scale SINR statistics per sweep point.

pub mod emit;
pub mod spec_file;

use rayon::prelude::*;
use serde::Deserialize;

use crate::channel::gen_scenario;
use crate::config::SystemConfig;
use crate::error::Error;
use crate::rng::{substream_seed, StreamDomain};
use crate::selectors::ga::{ga_select, GaParams};
use crate::selectors::{binomial, conventional_select, exhaustive_select, Selection};
use crate::signature::build_signature;
use crate::sinr::{linear_to_db, Objective};

/// The selectors the harness can race against each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Conventional,
    Exhaustive,
    Genetic,
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Algorithm::Conventional => "conventional",
            Algorithm::Exhaustive => "exhaustive",
            Algorithm::Genetic => "genetic",
        })
    }
}

/// The swept axis; the other coordinate stays fixed.
#[derive(Debug, Clone, PartialEq)]
pub enum Sweep {
    /// Sweep the desired user's bit-energy-to-noise ratio at a fixed finger
    /// count.
    EbN0Db { fingers: usize, grid: Vec<f64> },
    /// Sweep the finger count at a fixed bit-energy-to-noise ratio.
    Fingers { ebn0_db: f64, grid: Vec<usize> },
}

/// A full experiment: scenario shape, energy layout, sweep, selectors, and
/// Monte Carlo bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub users: usize,
    pub paths: usize,
    pub chips_per_frame: usize,
    pub th_alphabet: usize,
    pub decay: f64,
    pub log_var: f64,
    /// Interferer energy relative to the desired user, in dB (0 = equal
    /// power, 10 = a near-far situation with interferers 10 dB hotter).
    pub interferer_gain_db: f64,
    pub sweep: Sweep,
    pub algorithms: Vec<Algorithm>,
    /// Template for the genetic selector; its `seed` is replaced by a
    /// per-realization derived seed.
    pub ga: GaParams,
    pub realizations: u64,
    pub master_seed: u64,
    pub enumeration_cap: u64,
}

impl ExperimentSpec {
    /// The sweep expanded to `(fingers, ebn0_db)` coordinates.
    pub fn points(&self) -> Vec<(usize, f64)> {
        match &self.sweep {
            Sweep::EbN0Db { fingers, grid } => grid.iter().map(|&db| (*fingers, db)).collect(),
            Sweep::Fingers { ebn0_db, grid } => grid.iter().map(|&m| (m, *ebn0_db)).collect(),
        }
    }

    /// Scenario constants at one sweep point. The desired user's energy is
    /// normalized to 1, so the noise variance is `10^(-ebn0_db / 10)`.
    pub fn config_at(&self, fingers: usize, ebn0_db: f64) -> SystemConfig {
        let interferer_energy = 10f64.powf(self.interferer_gain_db / 10.0);
        let mut energies = vec![interferer_energy; self.users];
        energies[0] = 1.0;
        SystemConfig {
            users: self.users,
            paths: self.paths,
            fingers,
            chips_per_frame: self.chips_per_frame,
            th_alphabet: self.th_alphabet,
            energies,
            noise_var: 10f64.powf(-ebn0_db / 10.0),
            decay: self.decay,
            log_var: self.log_var,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.realizations < 1 {
            return Err(Error::Spec("realizations must be at least 1".into()));
        }
        if self.algorithms.is_empty() {
            return Err(Error::Spec("no algorithms requested".into()));
        }
        for (i, a) in self.algorithms.iter().enumerate() {
            if self.algorithms[..i].contains(a) {
                return Err(Error::Spec(format!("algorithm `{a}` listed twice")));
            }
        }
        let points = self.points();
        if points.is_empty() {
            return Err(Error::Spec("sweep grid is empty".into()));
        }
        for &(fingers, ebn0_db) in &points {
            let cfg = self.config_at(fingers, ebn0_db);
            cfg.validate()?;
            if self.algorithms.contains(&Algorithm::Genetic) {
                self.ga.validate(cfg.paths, cfg.fingers)?;
            }
        }
        Ok(())
    }
}

/// One selector's result on one realization.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmOutcome {
    pub algorithm: Algorithm,
    pub selection: Selection,
}

/// Aggregated statistics of one selector at one sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    pub algorithm: Algorithm,
    pub realizations: u64,
    /// Sample mean of the linear-scale overall SINR.
    pub mean_sinr_linear: f64,
    /// Standard error of that mean.
    pub se_sinr_linear: f64,
    /// The mean converted to dB (averaging happens on the linear scale).
    pub sinr_db: f64,
    /// Mean number of objective evaluations the selector spent.
    pub mean_evals: f64,
}

/// All selector statistics at one sweep coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub fingers: usize,
    pub ebn0_db: f64,
    pub cells: Vec<SweepCell>,
    /// Selectors dropped at this point (exhaustive search past the
    /// enumeration cap).
    pub skipped: Vec<Algorithm>,
}

impl SweepPoint {
    pub fn cell(&self, algorithm: Algorithm) -> Option<&SweepCell> {
        self.cells.iter().find(|c| c.algorithm == algorithm)
    }
}

/// A completed sweep, one entry per sweep coordinate in grid order.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub points: Vec<SweepPoint>,
}

/// Draws realization `realization` of the scenario and runs every requested
/// selector on it.
///
/// The scenario depends only on `(master_seed, realization)` and the scenario
/// shape, never on `fingers` or the noise level, so sweeps reuse the same
/// channels at every point and comparisons stay paired.
pub fn run_realization(
    cfg: &SystemConfig,
    algorithms: &[Algorithm],
    ga: &GaParams,
    enumeration_cap: u64,
    master_seed: u64,
    realization: u64,
) -> Result<Vec<AlgorithmOutcome>, Error> {
    let scenario = gen_scenario(cfg, master_seed, realization);
    let sig = build_signature(cfg, &scenario);
    let obj = Objective::new(&sig, &cfg.energies, cfg.noise_var);
    algorithms
        .iter()
        .map(|&algorithm| {
            let selection = match algorithm {
                Algorithm::Conventional => conventional_select(&obj, cfg.fingers),
                Algorithm::Exhaustive => exhaustive_select(&obj, cfg.fingers, enumeration_cap)?,
                Algorithm::Genetic => {
                    let params = GaParams {
                        seed: substream_seed(master_seed, realization, StreamDomain::Ga),
                        ..ga.clone()
                    };
                    let out = ga_select(&obj, cfg.fingers, &params)?;
                    Selection {
                        assignment: out.assignment,
                        sinr_linear: out.sinr_linear,
                        eval_count: out.eval_count,
                    }
                }
            };
            Ok(AlgorithmOutcome { algorithm, selection })
        })
        .collect()
}

/// Runs the whole sweep. Realizations run in parallel but are aggregated in
/// index order, so the result is bit-identical no matter how many worker
/// threads execute it.
pub fn run_sweep(spec: &ExperimentSpec) -> Result<SweepResult, Error> {
    spec.validate()?;
    let mut points = Vec::new();
    for (fingers, ebn0_db) in spec.points() {
        let cfg = spec.config_at(fingers, ebn0_db);
        let mut algorithms = spec.algorithms.clone();
        let mut skipped = Vec::new();
        if algorithms.contains(&Algorithm::Exhaustive) {
            let combinations = binomial(cfg.paths as u64, cfg.fingers as u64);
            if combinations > spec.enumeration_cap as u128 {
                log::warn!(
                    "skipping exhaustive search at fingers={fingers}, ebn0_db={ebn0_db}: \
                     {combinations} assignments exceed the cap of {}",
                    spec.enumeration_cap
                );
                algorithms.retain(|a| *a != Algorithm::Exhaustive);
                skipped.push(Algorithm::Exhaustive);
            }
        }
        let per_realization: Vec<Vec<AlgorithmOutcome>> = (0..spec.realizations)
            .into_par_iter()
            .map(|r| {
                run_realization(&cfg, &algorithms, &spec.ga, spec.enumeration_cap, spec.master_seed, r)
            })
            .collect::<Result<_, _>>()?;
        let cells = algorithms
            .iter()
            .enumerate()
            .map(|(slot, &algorithm)| {
                let sinrs: Vec<f64> =
                    per_realization.iter().map(|row| row[slot].selection.sinr_linear).collect();
                let evals: f64 = per_realization
                    .iter()
                    .map(|row| row[slot].selection.eval_count as f64)
                    .sum();
                let n = sinrs.len() as f64;
                let mean = sinrs.iter().sum::<f64>() / n;
                let se = if sinrs.len() > 1 {
                    let var =
                        sinrs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
                    (var / n).sqrt()
                } else {
                    0.0
                };
                SweepCell {
                    algorithm,
                    realizations: spec.realizations,
                    mean_sinr_linear: mean,
                    se_sinr_linear: se,
                    sinr_db: linear_to_db(mean),
                    mean_evals: evals / n,
                }
            })
            .collect();
        points.push(SweepPoint { fingers, ebn0_db, cells, skipped });
    }
    Ok(SweepResult { points })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn small_spec() -> ExperimentSpec {
        ExperimentSpec {
            users: 3,
            paths: 10,
            chips_per_frame: 16,
            th_alphabet: 6,
            decay: 0.1,
            log_var: 0.5,
            interferer_gain_db: 0.0,
            sweep: Sweep::EbN0Db { fingers: 3, grid: vec![8.0, 16.0] },
            algorithms: vec![Algorithm::Conventional, Algorithm::Exhaustive, Algorithm::Genetic],
            ga: GaParams {
                initial_population: 16,
                population: 8,
                parents: 4,
                mutations: 4,
                iterations: 5,
                seed: 0,
                inject_baseline: true,
            },
            realizations: 40,
            master_seed: 2024,
            enumeration_cap: 1_000_000,
        }
    }

    #[test]
    fn noise_variance_follows_the_snr_axis() {
        let spec = small_spec();
        let cfg = spec.config_at(3, 20.0);
        assert!((cfg.noise_var - 0.01).abs() < 1e-15);
        let cfg = spec.config_at(3, 0.0);
        assert!((cfg.noise_var - 1.0).abs() < 1e-15);
    }

    #[test]
    fn interferer_gain_shapes_the_energy_vector() {
        let mut spec = small_spec();
        spec.interferer_gain_db = 10.0;
        let cfg = spec.config_at(3, 20.0);
        assert_eq!(cfg.energies[0], 1.0);
        for &e in &cfg.energies[1..] {
            assert!((e - 10.0).abs() < 1e-12);
        }
    }

    #[test]
    fn selectors_sandwich_on_every_realization() {
        let spec = small_spec();
        let cfg = spec.config_at(3, 12.0);
        for r in 0..50 {
            let outcomes = run_realization(
                &cfg,
                &spec.algorithms,
                &spec.ga,
                spec.enumeration_cap,
                spec.master_seed,
                r,
            )
            .unwrap();
            let conv = outcomes[0].selection.sinr_linear;
            let exh = outcomes[1].selection.sinr_linear;
            let ga = outcomes[2].selection.sinr_linear;
            let slack = 1e-12 * exh;
            assert!(conv <= ga + slack, "realization {r}: conventional {conv} above genetic {ga}");
            assert!(ga <= exh + slack, "realization {r}: genetic {ga} above exhaustive {exh}");
        }
    }

    #[test]
    fn single_user_makes_every_selector_optimal() {
        let mut spec = small_spec();
        spec.users = 1;
        let cfg = spec.config_at(3, 12.0);
        for r in 0..10 {
            let outcomes =
                run_realization(&cfg, &spec.algorithms, &spec.ga, spec.enumeration_cap, 5, r)
                    .unwrap();
            let exh = outcomes[1].selection.sinr_linear;
            for o in &outcomes {
                assert!(
                    (o.selection.sinr_linear - exh).abs() <= 1e-12 * exh,
                    "realization {r}, {}: {} vs {exh}",
                    o.algorithm,
                    o.selection.sinr_linear
                );
            }
        }
    }

    #[test]
    fn sweep_reruns_bit_identically() {
        let spec = small_spec();
        let a = run_sweep(&spec).unwrap();
        let b = run_sweep(&spec).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sweep_is_independent_of_worker_count() {
        let spec = small_spec();
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| run_sweep(&spec).unwrap());
        let many = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| run_sweep(&spec).unwrap());
        assert_eq!(single, many);
    }

    #[test]
    fn sweep_shape_matches_the_grid() {
        let spec = small_spec();
        let result = run_sweep(&spec).unwrap();
        assert_eq!(result.points.len(), 2);
        for point in &result.points {
            assert_eq!(point.cells.len(), 3);
            assert!(point.skipped.is_empty());
            for cell in &point.cells {
                assert_eq!(cell.realizations, 40);
                assert!(cell.mean_sinr_linear > 0.0);
                assert!(cell.se_sinr_linear > 0.0);
            }
        }
        let genetic = result.points[0].cell(Algorithm::Genetic).unwrap();
        assert!((genetic.mean_evals - spec.ga.eval_budget() as f64).abs() < 1e-9);
        let conventional = result.points[0].cell(Algorithm::Conventional).unwrap();
        assert_eq!(conventional.mean_evals, 0.0);
    }

    #[test]
    fn oversized_enumeration_is_skipped_per_point_with_a_warning() {
        let mut spec = small_spec();
        spec.paths = 30;
        spec.chips_per_frame = 40;
        spec.sweep = Sweep::Fingers { ebn0_db: 12.0, grid: vec![2, 15] };
        spec.realizations = 2;
        spec.enumeration_cap = 1_000;
        // C(30, 2) = 435 fits; C(30, 15) = 155117520 does not.
        let result = run_sweep(&spec).unwrap();
        assert!(result.points[0].cell(Algorithm::Exhaustive).is_some());
        assert!(result.points[0].skipped.is_empty());
        assert!(result.points[1].cell(Algorithm::Exhaustive).is_none());
        assert_eq!(result.points[1].skipped, vec![Algorithm::Exhaustive]);
        // The other selectors still ran at the skipped point.
        assert!(result.points[1].cell(Algorithm::Genetic).is_some());
    }

    #[test]
    fn higher_snr_raises_every_selector() {
        let spec = small_spec();
        let result = run_sweep(&spec).unwrap();
        for algorithm in &spec.algorithms {
            let low = result.points[0].cell(*algorithm).unwrap().mean_sinr_linear;
            let high = result.points[1].cell(*algorithm).unwrap().mean_sinr_linear;
            assert!(high > low, "{algorithm}: {high} not above {low}");
        }
    }

    #[test]
    fn validation_rejects_degenerate_specs() {
        let mut spec = small_spec();
        spec.realizations = 0;
        assert!(spec.validate().is_err());

        let mut spec = small_spec();
        spec.algorithms.clear();
        assert!(spec.validate().is_err());

        let mut spec = small_spec();
        spec.algorithms = vec![Algorithm::Genetic, Algorithm::Genetic];
        assert!(spec.validate().is_err());

        let mut spec = small_spec();
        spec.sweep = Sweep::EbN0Db { fingers: 3, grid: vec![] };
        assert!(spec.validate().is_err());

        let mut spec = small_spec();
        spec.sweep = Sweep::Fingers { ebn0_db: 12.0, grid: vec![11] };
        assert!(spec.validate().is_err(), "fingers beyond paths");

        let mut spec = small_spec();
        spec.ga.population = 6;
        assert!(spec.validate().is_err(), "inconsistent ga shape");
    }
}
