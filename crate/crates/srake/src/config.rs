use crate::error::Error;

/// Scenario constants for one synchronous multiuser link.
///
/// Tap energies follow an exponentially decaying profile normalized to unit
/// total energy; `decay` and `log_var` parameterize the signed-lognormal tap
/// distribution. Time-hopping codes live in `{0, .., th_alphabet - 1}` with
/// `th_alphabet <= chips_per_frame - paths` so frames never bleed into each
/// other.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    /// Number of users K (user 0 is the desired user).
    pub users: usize,
    /// Resolvable multipath components L per user.
    pub paths: usize,
    /// Rake fingers M to select (1 <= M <= L).
    pub fingers: usize,
    /// Chips per frame N_c.
    pub chips_per_frame: usize,
    /// Time-hopping alphabet size N_T (codes are 0..N_T).
    pub th_alphabet: usize,
    /// Per-user bit energies, linear scale, length `users`.
    pub energies: Vec<f64>,
    /// Thermal noise variance, linear scale.
    pub noise_var: f64,
    /// Tap-energy decay factor (0 gives a flat profile).
    pub decay: f64,
    /// Log-domain variance of the lognormal tap magnitudes.
    pub log_var: f64,
}

impl SystemConfig {
    /// Largest time-hopping alphabet that still avoids inter-frame
    /// interference.
    pub fn max_th_alphabet(&self) -> usize {
        self.chips_per_frame.saturating_sub(self.paths)
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.users < 1 {
            return Err(Error::config("users", "must be at least 1"));
        }
        if self.paths < 1 {
            return Err(Error::config("paths", "must be at least 1"));
        }
        if self.fingers < 1 || self.fingers > self.paths {
            return Err(Error::config(
                "fingers",
                format!("must satisfy 1 <= fingers <= paths ({})", self.paths),
            ));
        }
        if self.th_alphabet < 1 {
            return Err(Error::config("th_alphabet", "must be at least 1"));
        }
        if self.th_alphabet > self.max_th_alphabet() {
            return Err(Error::config(
                "th_alphabet",
                format!(
                    "must be <= chips_per_frame - paths = {} to avoid inter-frame interference",
                    self.max_th_alphabet()
                ),
            ));
        }
        if self.energies.len() != self.users {
            return Err(Error::config(
                "energies",
                format!("expected {} entries, got {}", self.users, self.energies.len()),
            ));
        }
        if self.energies.iter().any(|&e| !e.is_finite() || e <= 0.0) {
            return Err(Error::config("energies", "every entry must be finite and > 0"));
        }
        if !self.noise_var.is_finite() || self.noise_var <= 0.0 {
            return Err(Error::config("noise_var", "must be finite and > 0"));
        }
        if !self.decay.is_finite() || self.decay < 0.0 {
            return Err(Error::config("decay", "must be finite and >= 0"));
        }
        if !self.log_var.is_finite() || self.log_var < 0.0 {
            return Err(Error::config("log_var", "must be finite and >= 0"));
        }
        Ok(())
    }
}
