//! Genetic finger search.
//!
//! Chromosomes are finger assignments. Each generation keeps the best
//! `parents` members (truncation), pairs them at random with probabilities
//! proportional to their SINR, mates each pair by drawing child indices from
//! the pooled parent indices (an index held by both parents is twice as
//! likely to be drawn), and then applies a fixed number of single-index swap
//! mutations that always spare the current best member. The best assignment
//! ever evaluated is returned, so extra iterations can never hurt.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::selectors::{binomial, conventional_select};
use crate::sinr::{Assignment, Objective};

/// Tuning knobs for [`ga_select`].
#[derive(Debug, Clone, PartialEq)]
pub struct GaParams {
    /// Members drawn (distinct) for the first generation.
    pub initial_population: usize,
    /// Steady-state generation size; must equal `2 * parents`.
    pub population: usize,
    /// Members kept by truncation each generation; even, at least 2.
    pub parents: usize,
    /// Swap mutations applied per generation.
    pub mutations: usize,
    /// Generations to run after the initial draw.
    pub iterations: usize,
    /// Seed of the selector's own random stream.
    pub seed: u64,
    /// Replace one initial member with the conventional selection so the
    /// search never finishes below that baseline.
    pub inject_baseline: bool,
}

impl GaParams {
    /// Worst-case number of objective evaluations a [`ga_select`] run spends.
    pub fn eval_budget(&self) -> u64 {
        self.initial_population as u64
            + self.iterations as u64 * (self.parents + self.mutations) as u64
    }

    pub fn validate(&self, paths: usize, fingers: usize) -> Result<(), Error> {
        if self.parents < 2 {
            return Err(Error::config("ga.parents", "must be at least 2"));
        }
        if !self.parents.is_multiple_of(2) {
            return Err(Error::config("ga.parents", "must be even to form disjoint pairs"));
        }
        if self.population != 2 * self.parents {
            return Err(Error::config(
                "ga.population",
                format!("must equal 2 * parents = {}", 2 * self.parents),
            ));
        }
        if self.initial_population < self.population {
            return Err(Error::config(
                "ga.initial_population",
                format!("must be at least population = {}", self.population),
            ));
        }
        let space = binomial(paths as u64, fingers as u64);
        if self.initial_population as u128 > space {
            return Err(Error::config(
                "ga.initial_population",
                format!("cannot draw {} distinct assignments from a space of {space}", self.initial_population),
            ));
        }
        Ok(())
    }
}

/// Result of one genetic search.
#[derive(Debug, Clone, PartialEq)]
pub struct GaOutcome {
    /// Best assignment ever evaluated.
    pub assignment: Assignment,
    /// Its overall SINR, linear scale.
    pub sinr_linear: f64,
    /// Objective evaluations actually spent (at most
    /// [`GaParams::eval_budget`]).
    pub eval_count: u64,
    /// Best SINR seen so far, recorded after the initial generation and
    /// after every iteration; non-decreasing by construction.
    pub best_history: Vec<f64>,
}

#[derive(Debug, Clone)]
struct ScoredMember {
    assignment: Assignment,
    sinr: f64,
}

fn score(obj: &Objective, assignment: Assignment) -> ScoredMember {
    let sinr = obj.overall_sinr(&assignment);
    ScoredMember { assignment, sinr }
}

/// Better-first total order: higher SINR wins, ties go to the
/// lexicographically smaller assignment so runs are reproducible.
fn rank(a: &ScoredMember, b: &ScoredMember) -> std::cmp::Ordering {
    b.sinr.total_cmp(&a.sinr).then_with(|| a.assignment.cmp(&b.assignment))
}

/// Draws `count` distinct random assignments.
fn ga_init(paths: usize, fingers: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<Assignment> {
    let mut seen = HashSet::with_capacity(count);
    let mut members = Vec::with_capacity(count);
    while members.len() < count {
        let asn = Assignment::new(rand::seq::index::sample(rng, paths, fingers).into_vec());
        if seen.insert(asn.clone()) {
            members.push(asn);
        }
    }
    members
}

/// Pairs the parents into disjoint couples, drawing without replacement with
/// probability proportional to SINR (uniform fallback if the weights
/// degenerate). Returns index pairs into `parents`.
fn ga_pair(parents: &[ScoredMember], rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    debug_assert!(parents.len().is_multiple_of(2));
    let weights: Vec<f64> = {
        let raw: Vec<f64> = parents.iter().map(|m| m.sinr).collect();
        let total: f64 = raw.iter().sum();
        if total.is_finite() && total > 0.0 && raw.iter().all(|w| w.is_finite() && *w >= 0.0) {
            raw
        } else {
            vec![1.0; parents.len()]
        }
    };
    let mut remaining: Vec<usize> = (0..parents.len()).collect();
    let mut pairs = Vec::with_capacity(parents.len() / 2);
    while !remaining.is_empty() {
        let first = weighted_take(&mut remaining, &weights, rng);
        let second = weighted_take(&mut remaining, &weights, rng);
        pairs.push((first, second));
    }
    pairs
}

/// Removes and returns one entry of `remaining`, drawn with probability
/// proportional to its weight.
fn weighted_take(remaining: &mut Vec<usize>, weights: &[f64], rng: &mut ChaCha8Rng) -> usize {
    let total: f64 = remaining.iter().map(|&i| weights[i]).sum();
    let mut target = rng.random::<f64>() * total;
    let mut chosen = remaining.len() - 1;
    for (pos, &idx) in remaining.iter().enumerate() {
        target -= weights[idx];
        if target < 0.0 {
            chosen = pos;
            break;
        }
    }
    remaining.remove(chosen)
}

/// Mates two assignments: child indices are drawn one by one from the pooled
/// parent indices (shared indices appear twice, doubling their odds), with
/// in-child duplicates rejected. A child identical to either parent is
/// redrawn a bounded number of times; if that keeps failing (always the case
/// for identical parents) the child is forced away by one swap mutation.
fn ga_mate(
    a: &Assignment,
    b: &Assignment,
    paths: usize,
    rng: &mut ChaCha8Rng,
) -> Assignment {
    let fingers = a.len();
    debug_assert_eq!(fingers, b.len());
    let pool: Vec<usize> = a.indices().iter().chain(b.indices()).copied().collect();
    let mut child = Assignment::new(a.indices().to_vec());
    for _ in 0..16 {
        let mut picks: Vec<usize> = Vec::with_capacity(fingers);
        while picks.len() < fingers {
            let pick = pool[rng.random_range(0..pool.len())];
            if !picks.contains(&pick) {
                picks.push(pick);
            }
        }
        child = Assignment::new(picks);
        if child != *a && child != *b {
            return child;
        }
    }
    swap_mutate(&child, paths, rng)
}

/// Replaces one random index of the assignment with a random path outside it.
/// Returns the input unchanged when every path is already selected.
fn swap_mutate(asn: &Assignment, paths: usize, rng: &mut ChaCha8Rng) -> Assignment {
    let outside: Vec<usize> = (0..paths).filter(|p| !asn.contains(*p)).collect();
    if outside.is_empty() {
        return asn.clone();
    }
    let victim = rng.random_range(0..asn.len());
    let replacement = outside[rng.random_range(0..outside.len())];
    let mut indices = asn.indices().to_vec();
    indices[victim] = replacement;
    Assignment::new(indices)
}

/// Applies `count` swap mutations to random members, never touching whoever
/// is best at that moment (re-identified after every mutation, so a mutant
/// that takes the lead is immediately protected). Returns the number of
/// objective evaluations spent.
fn ga_mutate(
    members: &mut [ScoredMember],
    obj: &Objective,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> u64 {
    if members.len() < 2 {
        log::debug!("mutation skipped: population of {} has nobody expendable", members.len());
        return 0;
    }
    if obj.paths() == members[0].assignment.len() {
        log::debug!("mutation skipped: every path is already a finger");
        return 0;
    }
    let mut evals = 0;
    for _ in 0..count {
        let best = members
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| rank(a, b))
            .map(|(i, _)| i)
            .expect("population is non-empty");
        let mut victim = rng.random_range(0..members.len() - 1);
        if victim >= best {
            victim += 1;
        }
        let mutated = swap_mutate(&members[victim].assignment, obj.paths(), rng);
        members[victim] = score(obj, mutated);
        evals += 1;
    }
    evals
}

/// Runs the genetic search and returns the best assignment ever evaluated.
pub fn ga_select(obj: &Objective, fingers: usize, params: &GaParams) -> Result<GaOutcome, Error> {
    params.validate(obj.paths(), fingers)?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

    let mut initial = ga_init(obj.paths(), fingers, params.initial_population, &mut rng);
    if params.inject_baseline {
        let baseline = conventional_select(obj, fingers).assignment;
        if !initial.contains(&baseline) {
            // Replace, don't append: the evaluation budget stays put and the
            // population keeps its size.
            *initial.last_mut().expect("initial population is non-empty") = baseline;
        }
    }

    let mut eval_count = 0u64;
    let mut population: Vec<ScoredMember> = initial
        .into_iter()
        .map(|asn| {
            eval_count += 1;
            score(obj, asn)
        })
        .collect();
    population.sort_by(rank);

    let mut best = population[0].clone();
    let mut best_history = Vec::with_capacity(params.iterations + 1);
    best_history.push(best.sinr);

    for _ in 0..params.iterations {
        population.truncate(params.parents);
        let pairs = ga_pair(&population, &mut rng);
        let mut children = Vec::with_capacity(params.parents);
        for &(p, q) in &pairs {
            for _ in 0..2 {
                let child = ga_mate(
                    &population[p].assignment,
                    &population[q].assignment,
                    obj.paths(),
                    &mut rng,
                );
                eval_count += 1;
                children.push(score(obj, child));
            }
        }
        population.extend(children);
        eval_count += ga_mutate(&mut population, obj, params.mutations, &mut rng);
        population.sort_by(rank);
        if rank(&population[0], &best).is_lt() {
            best = population[0].clone();
        }
        best_history.push(best.sinr);
    }

    Ok(GaOutcome {
        assignment: best.assignment,
        sinr_linear: best.sinr,
        eval_count,
        best_history,
    })
}
