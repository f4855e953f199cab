use crate::channel::Scenario;
use crate::config::SystemConfig;

/// Effective per-path signature of one scenario after chip-matched filtering
/// and despreading at the receiver of user 0.
///
/// Path `l` of the template collides with path `m` of interferer `k` exactly
/// when both land on the same chip, `th[0] + l == th[k] + m`; with frames
/// shorter than a chip period apart ruled out by the no-inter-frame-
/// interference constraint, at most one `m` can satisfy that per `(l, k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Signature {
    /// Desired user's tap on each path (the signal part of the observation).
    pub desired_taps: Vec<f64>,
    /// `mai[l][k]`: multiple-access amplitude user `k` contributes on path
    /// `l`. Column 0 belongs to the desired user and is identically zero.
    pub mai: Vec<Vec<f64>>,
}

impl Signature {
    pub fn paths(&self) -> usize {
        self.desired_taps.len()
    }

    pub fn users(&self) -> usize {
        self.mai.first().map_or(0, Vec::len)
    }
}

/// Which path of an interferer with code `code_k` lands on path `l` of the
/// desired user's template (code `code_0`), if any.
pub fn interfering_path(code_0: usize, code_k: usize, l: usize, paths: usize) -> Option<usize> {
    let m = (code_0 + l).checked_sub(code_k)?;
    (m < paths).then_some(m)
}

/// Projects a scenario onto the desired user's Rake template.
pub fn build_signature(cfg: &SystemConfig, scenario: &Scenario) -> Signature {
    let d0 = scenario.polarities[0];
    let mai = (0..cfg.paths)
        .map(|l| {
            (0..cfg.users)
                .map(|k| {
                    if k == 0 {
                        return 0.0;
                    }
                    match interfering_path(scenario.th_codes[0], scenario.th_codes[k], l, cfg.paths)
                    {
                        Some(m) => d0 * scenario.polarities[k] * scenario.taps[k][m],
                        None => 0.0,
                    }
                })
                .collect()
        })
        .collect();
    Signature { desired_taps: scenario.taps[0].clone(), mai }
}
