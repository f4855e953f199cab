use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::config::SystemConfig;
use crate::rng::{substream, StreamDomain};

/// Analytic per-path second moments `E{alpha_l^2}`, an exponentially decaying
/// profile normalized so the taps carry unit total energy.
///
/// `decay = 0` degenerates to a flat profile `1 / paths`.
pub fn tap_energy_profile(decay: f64, paths: usize) -> Vec<f64> {
    let omega0 = leading_tap_energy(decay, paths);
    (0..paths).map(|l| omega0 * (-decay * l as f64).exp()).collect()
}

/// Energy of the first tap, `Omega_0`, chosen so the full profile sums to 1.
pub fn leading_tap_energy(decay: f64, paths: usize) -> f64 {
    if decay == 0.0 {
        1.0 / paths as f64
    } else {
        (1.0 - (-decay).exp()) / (1.0 - (-decay * paths as f64).exp())
    }
}

/// Log-domain means of the lognormal tap magnitudes.
///
/// Setting `mu_l = (ln Omega_0 - decay * l - 2 * log_var) / 2` makes the
/// magnitude second moment `E{m_l^2} = exp(2 mu_l + 2 log_var)` land exactly
/// on [`tap_energy_profile`].
pub fn tap_log_means(decay: f64, log_var: f64, paths: usize) -> Vec<f64> {
    let ln_omega0 = leading_tap_energy(decay, paths).ln();
    (0..paths)
        .map(|l| 0.5 * (ln_omega0 - decay * l as f64 - 2.0 * log_var))
        .collect()
}

/// One synchronous multiuser draw: fading taps plus spreading codes.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    /// `taps[k][l]`: signed tap amplitude of user `k` on path `l`.
    pub taps: Vec<Vec<f64>>,
    /// Per-user time-hopping code, each in `0..th_alphabet`.
    pub th_codes: Vec<usize>,
    /// Per-user polarity code, each `+1.0` or `-1.0`.
    pub polarities: Vec<f64>,
}

/// Draws signed-lognormal taps for every user: an equiprobable sign times a
/// magnitude with `ln m ~ N(mu_l, log_var)`.
pub fn gen_taps<R: Rng>(cfg: &SystemConfig, rng: &mut R) -> Vec<Vec<f64>> {
    let mus = tap_log_means(cfg.decay, cfg.log_var, cfg.paths);
    let std = cfg.log_var.sqrt();
    (0..cfg.users)
        .map(|_| {
            mus.iter()
                .map(|&mu| {
                    let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
                    let normal = Normal::new(mu, std).expect("log_var validated nonnegative");
                    sign * normal.sample(rng).exp()
                })
                .collect()
        })
        .collect()
}

/// Draws uniform time-hopping codes and equiprobable polarity codes.
pub fn gen_codes<R: Rng>(cfg: &SystemConfig, rng: &mut R) -> (Vec<usize>, Vec<f64>) {
    let mut th = Vec::with_capacity(cfg.users);
    let mut pol = Vec::with_capacity(cfg.users);
    for _ in 0..cfg.users {
        th.push(rng.random_range(0..cfg.th_alphabet));
        pol.push(if rng.random_bool(0.5) { 1.0 } else { -1.0 });
    }
    (th, pol)
}

/// Draws a full scenario on the deterministic substreams of
/// `(master_seed, realization)`, keeping taps and codes on independent
/// streams.
pub fn gen_scenario(cfg: &SystemConfig, master_seed: u64, realization: u64) -> Scenario {
    let taps = gen_taps(cfg, &mut substream(master_seed, realization, StreamDomain::Taps));
    let (th_codes, polarities) =
        gen_codes(cfg, &mut substream(master_seed, realization, StreamDomain::Codes));
    Scenario { taps, th_codes, polarities }
}
