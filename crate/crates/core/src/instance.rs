//! Problem instances: dimensions, powers, noise floors, channel gains and the
//! SINR threshold, together with the random channel generator and JSON IO.
//!
//! An instance describes `num_sbs` small-cell stations (indexed by `n`) that
//! each want to serve one of `num_su` users (indexed by `m`). `gain[m][n]` is
//! the power gain of the channel from station `n` to user `m`. All values are
//! stored in linear units; decibel conversion happens at the edges (CLI flags,
//! experiment configs) via [`db_to_linear`] / [`linear_to_db`].
//!
//! Randomness is controlled by [`Seed`], a (master, stream) pair backed by a
//! counter-mode ChaCha generator. Deriving child seeds yields statistically
//! independent streams, so a simulation can hand stream `(e, r)` to
//! realization `r` of experiment `e` and reproduce it bit-for-bit regardless
//! of thread count or execution order.

use std::path::Path;

use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::Normal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

// ---------------------------------------------------------------------------
// Unit conversion
// ---------------------------------------------------------------------------

/// Convert decibels to a linear power ratio.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Convert a linear power ratio to decibels.
pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

// ---------------------------------------------------------------------------
// Reproducible seeding
// ---------------------------------------------------------------------------

/// Identifier of one reproducible random stream.
///
/// A `Seed` names a stream within the keyspace of a single `master_seed`.
/// [`Seed::derive`] maps a child index to a new, statistically independent
/// stream, so nested simulations (experiment -> grid point -> realization ->
/// algorithm) can split randomness without any shared mutable state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed {
    /// Keys the whole family of streams.
    pub master_seed: u64,
    /// Selects one stream within the family.
    pub stream_index: u64,
}

/// 64-bit finalizer (splitmix64); bijective, well mixed.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl Seed {
    /// Root stream for a master seed.
    pub fn new(master_seed: u64) -> Self {
        Seed {
            master_seed,
            stream_index: 0,
        }
    }

    /// Derive the `child`-th sub-stream of this stream.
    ///
    /// Children of distinct `(stream, child)` pairs land on distinct streams
    /// (up to the negligible collision probability of a 64-bit hash), and the
    /// derivation is pure, so any worker can recompute it locally.
    pub fn derive(&self, child: u64) -> Seed {
        Seed {
            master_seed: self.master_seed,
            stream_index: mix64(
                self.stream_index
                    .rotate_left(32)
                    .wrapping_add(0x9E37_79B9_7F4A_7C15)
                    ^ child,
            ),
        }
    }

    /// Instantiate the generator for this stream.
    pub fn rng(&self) -> ChaCha12Rng {
        let mut rng = ChaCha12Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_index);
        rng
    }
}

// ---------------------------------------------------------------------------
// Channel geometry
// ---------------------------------------------------------------------------

/// Parameters of the random channel model.
///
/// Station-to-user distances are drawn i.i.d. uniformly from
/// `[distance_min, distance_max]`. The power gain of a link at distance `d`
/// is `|rho|^2 * (reference_distance / d)^path_loss_exponent`, where `rho` is
/// a zero-mean, unit-variance complex Gaussian fading coefficient (disabled
/// by setting `rayleigh = false`, which pins `|rho|^2 = 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct GeometryConfig {
    pub path_loss_exponent: f64,
    pub reference_distance: f64,
    pub distance_min: f64,
    pub distance_max: f64,
    pub rayleigh: bool,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        GeometryConfig {
            path_loss_exponent: 4.0,
            reference_distance: 1.0,
            distance_min: 1.0,
            distance_max: 10.0,
            rayleigh: true,
        }
    }
}

impl GeometryConfig {
    /// Checks the numeric ranges; called by instance generation and by
    /// sweep entry points that accept user-supplied geometry.
    pub fn validate(&self) -> Result<()> {
        if !(self.path_loss_exponent.is_finite() && self.path_loss_exponent >= 0.0) {
            return Err(Error::Config(format!(
                "path_loss_exponent must be finite and non-negative, got {}",
                self.path_loss_exponent
            )));
        }
        if !(self.reference_distance.is_finite() && self.reference_distance > 0.0) {
            return Err(Error::Config(format!(
                "reference_distance must be positive, got {}",
                self.reference_distance
            )));
        }
        if !(self.distance_min.is_finite() && self.distance_min > 0.0) {
            return Err(Error::Config(format!(
                "distance_min must be positive, got {}",
                self.distance_min
            )));
        }
        if !(self.distance_max.is_finite() && self.distance_max >= self.distance_min) {
            return Err(Error::Config(format!(
                "distance_max must be at least distance_min, got [{}, {}]",
                self.distance_min, self.distance_max
            )));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Instance
// ---------------------------------------------------------------------------

/// One association problem: stations, users, channel, threshold.
///
/// Serializes to a plain JSON object with keys `num_sbs`, `num_su`, `power`,
/// `noise`, `threshold` and `gain` (row `m`, column `n`). Floating-point
/// values round-trip exactly through the file format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    /// Number of stations `N`.
    pub num_sbs: usize,
    /// Number of users `M`.
    pub num_su: usize,
    /// Transmit power of each station (linear), length `N`.
    pub power: Vec<f64>,
    /// Noise floor at each user (linear), length `M`.
    pub noise: Vec<f64>,
    /// Minimum SINR for a link to count as served (linear).
    pub threshold: f64,
    /// Channel power gains, `gain[m][n]` from station `n` to user `m`.
    pub gain: Vec<Vec<f64>>,
}

impl Instance {
    /// Build an instance from explicit channel data.
    ///
    /// `gain` must be a non-empty rectangular matrix with `num_su` rows and
    /// `num_sbs` columns; `power` and `noise` must match those dimensions.
    pub fn from_gain_matrix(
        gain: Vec<Vec<f64>>,
        power: Vec<f64>,
        noise: Vec<f64>,
        threshold: f64,
    ) -> Result<Instance> {
        let num_su = gain.len();
        let num_sbs = gain.first().map_or(0, Vec::len);
        let instance = Instance {
            num_sbs,
            num_su,
            power,
            noise,
            threshold,
            gain,
        };
        instance.validate()?;
        Ok(instance)
    }

    /// Check dimensional consistency and value ranges.
    pub fn validate(&self) -> Result<()> {
        if self.num_sbs == 0 {
            return Err(Error::Instance("num_sbs must be at least 1".into()));
        }
        if self.num_su == 0 {
            return Err(Error::Instance("num_su must be at least 1".into()));
        }
        if self.power.len() != self.num_sbs {
            return Err(Error::Dimension(format!(
                "power has {} entries but num_sbs is {}",
                self.power.len(),
                self.num_sbs
            )));
        }
        if self.noise.len() != self.num_su {
            return Err(Error::Dimension(format!(
                "noise has {} entries but num_su is {}",
                self.noise.len(),
                self.num_su
            )));
        }
        if self.gain.len() != self.num_su {
            return Err(Error::Dimension(format!(
                "gain has {} rows but num_su is {}",
                self.gain.len(),
                self.num_su
            )));
        }
        for (m, row) in self.gain.iter().enumerate() {
            if row.len() != self.num_sbs {
                return Err(Error::Dimension(format!(
                    "gain row {} has {} entries but num_sbs is {}",
                    m,
                    row.len(),
                    self.num_sbs
                )));
            }
            for (n, &g) in row.iter().enumerate() {
                if !(g.is_finite() && g >= 0.0) {
                    return Err(Error::Instance(format!(
                        "gain[{m}][{n}] must be finite and non-negative, got {g}"
                    )));
                }
            }
        }
        for (n, &p) in self.power.iter().enumerate() {
            if !(p.is_finite() && p > 0.0) {
                return Err(Error::Instance(format!(
                    "power[{n}] must be positive, got {p}"
                )));
            }
        }
        for (m, &s) in self.noise.iter().enumerate() {
            if !(s.is_finite() && s > 0.0) {
                return Err(Error::Instance(format!(
                    "noise[{m}] must be positive, got {s}"
                )));
            }
        }
        if !(self.threshold.is_finite() && self.threshold > 0.0) {
            return Err(Error::Instance(format!(
                "threshold must be positive, got {}",
                self.threshold
            )));
        }
        Ok(())
    }

    /// Serialize to pretty JSON at `path`.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    /// The JSON document written by [`Instance::save`].
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("instance serializes");
        text.push('\n');
        text
    }

    /// Load and validate an instance from a JSON file.
    pub fn load(path: impl AsRef<Path>) -> Result<Instance> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    /// Parse and validate an instance from JSON text.
    pub fn from_json(text: &str) -> Result<Instance> {
        let instance: Instance =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        instance.validate()?;
        Ok(instance)
    }
}

/// A hand-crafted 3-station, 3-user instance whose silence-enabled game has
/// no pure equilibrium.
///
/// Every station reaches "its own" user exactly at the threshold margin of 4
/// vs. 2, but the cross gains are arranged in a rock-paper-scissors cycle:
/// whichever pair of stations transmits, one of them is pushed just below the
/// threshold and prefers to drop out, while a lone transmitter invites a
/// second one in. Useful as a worst case for equilibrium search and as a
/// fixed point for regression tests.
pub fn counterexample_instance() -> Instance {
    // Cross gains cycle through 1/4 and 3/10; own links have unit gain.
    let gain = vec![
        vec![1.0, 0.3, 0.25],
        vec![0.25, 1.0, 0.3],
        vec![0.3, 0.25, 1.0],
    ];
    Instance::from_gain_matrix(gain, vec![4.0; 3], vec![1.0; 3], 2.0)
        .expect("counterexample is well formed")
}

/// Draw a random instance from the channel model in `config`.
///
/// Distances and fading coefficients are sampled per `(m, n)` link in
/// row-major order from the stream named by `seed`, so equal seeds give
/// bit-identical instances. `power_db` applies to every station;
/// noise floors are normalized to 1.
pub fn generate_instance(
    config: &GeometryConfig,
    num_sbs: usize,
    num_su: usize,
    power_db: f64,
    threshold_db: f64,
    seed: Seed,
) -> Result<Instance> {
    config.validate()?;
    if num_sbs == 0 || num_su == 0 {
        return Err(Error::Config(format!(
            "need at least one station and one user, got {num_sbs} x {num_su}"
        )));
    }
    if !power_db.is_finite() {
        return Err(Error::Config(format!("power_db must be finite, got {power_db}")));
    }
    if !threshold_db.is_finite() {
        return Err(Error::Config(format!(
            "threshold_db must be finite, got {threshold_db}"
        )));
    }

    let mut rng = seed.rng();
    let distance = Uniform::new_inclusive(config.distance_min, config.distance_max);
    // Unit-variance complex fading: both real components have variance 1/2.
    let component = Normal::new(0.0, 0.5f64.sqrt()).expect("valid std dev");

    let mut gain = vec![vec![0.0; num_sbs]; num_su];
    for row in gain.iter_mut() {
        for cell in row.iter_mut() {
            let d: f64 = distance.sample(&mut rng);
            let path = (config.reference_distance / d).powf(config.path_loss_exponent);
            let fade = if config.rayleigh {
                let re = component.sample(&mut rng);
                let im = component.sample(&mut rng);
                re * re + im * im
            } else {
                1.0
            };
            *cell = fade * path;
        }
    }

    let power = vec![db_to_linear(power_db); num_sbs];
    let noise = vec![1.0; num_su];
    Instance::from_gain_matrix(gain, power, noise, db_to_linear(threshold_db))
}
