use crate::linalg::{dot, solve_spd};
use crate::signature::Signature;

/// A finger assignment: the set of path indices the Rake combines, kept
/// sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(Vec<usize>);

impl Assignment {
    /// Builds an assignment from arbitrary order, normalizing to ascending.
    ///
    /// Panics on duplicate indices: selections are sets by construction, so a
    /// duplicate is a caller bug, not a recoverable state.
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        assert!(
            indices.windows(2).all(|w| w[0] < w[1]),
            "finger assignment contains duplicate path indices: {indices:?}"
        );
        Assignment(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, path: usize) -> bool {
        self.0.binary_search(&path).is_ok()
    }
}

/// The quantity every selector maximizes: overall post-combining SINR of the
/// desired user under minimum mean-square-error combining, for a fixed
/// scenario projection.
#[derive(Debug, Clone, Copy)]
pub struct Objective<'a> {
    sig: &'a Signature,
    energies: &'a [f64],
    noise_var: f64,
}

impl<'a> Objective<'a> {
    pub fn new(sig: &'a Signature, energies: &'a [f64], noise_var: f64) -> Self {
        debug_assert_eq!(sig.users(), energies.len());
        debug_assert!(noise_var > 0.0);
        Objective { sig, energies, noise_var }
    }

    pub fn paths(&self) -> usize {
        self.sig.paths()
    }

    /// Interference-plus-noise correlation of the selected finger outputs:
    /// `R = B diag(E) B^T + noise_var * I`, with `B` the selected rows of the
    /// interference signature.
    fn correlation(&self, asn: &Assignment) -> Vec<Vec<f64>> {
        let idx = asn.indices();
        let m = idx.len();
        let mut r = vec![vec![0.0; m]; m];
        for i in 0..m {
            for j in 0..=i {
                let row_i = &self.sig.mai[idx[i]];
                let row_j = &self.sig.mai[idx[j]];
                let mut sum = 0.0;
                for (k, &e) in self.energies.iter().enumerate() {
                    sum += e * row_i[k] * row_j[k];
                }
                if i == j {
                    sum += self.noise_var;
                }
                r[i][j] = sum;
                r[j][i] = sum;
            }
        }
        r
    }

    /// Overall SINR (linear scale) of the MMSE combiner on the given fingers:
    /// `E_0 * x^T R^{-1} x` with `x` the selected desired-user taps.
    pub fn overall_sinr(&self, asn: &Assignment) -> f64 {
        let x: Vec<f64> = asn.indices().iter().map(|&l| self.sig.desired_taps[l]).collect();
        let r = self.correlation(asn);
        let weights = solve_spd(&r, &x)
            .expect("positive noise variance keeps the correlation matrix positive definite");
        self.energies[0] * dot(&x, &weights)
    }

    /// Single-path SINRs (linear scale), the ranking the conventional
    /// selector sorts by. Entry `l` is the overall SINR of the one-finger
    /// assignment `{l}`.
    pub fn per_path_sinr(&self) -> Vec<f64> {
        (0..self.sig.paths())
            .map(|l| {
                let interference: f64 = self
                    .energies
                    .iter()
                    .zip(&self.sig.mai[l])
                    .map(|(&e, &b)| e * b * b)
                    .sum();
                self.energies[0] * self.sig.desired_taps[l].powi(2)
                    / (interference + self.noise_var)
            })
            .collect()
    }
}

/// Converts a linear power ratio to decibels.
pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}
