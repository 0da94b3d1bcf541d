//! JSON run configuration shared by the `sample`, `trace` and `verify`
//! commands.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::fields::Helicity;
use crate::geometry::{DisplacementConfig, Side};
use crate::potential::GaugeParams;
use crate::pulse::{PulseSpec, TabulatedSpectrum};
use crate::scalar::WaveletParams;
use crate::vector::{c, Vec3};

use super::quantity::Quantity;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum PulseConfig {
    Gaussian { d: f64 },
    /// Two or three CSV columns `omega, re[, im]`, path relative to the
    /// config file.
    Tabulated { csv: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaugeConfig {
    #[serde(default)]
    pub kappa: [f64; 2],
    #[serde(default)]
    pub lambda: [f64; 2],
    #[serde(default)]
    pub mu: [f64; 2],
}

impl GaugeConfig {
    pub fn params(&self) -> GaugeParams {
        let z = |p: [f64; 2]| c(p[0], p[1]);
        GaugeParams::new(z(self.kappa), z(self.lambda), z(self.mu))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Plane {
    Xz,
    Xy,
    Yz,
}

/// A rectangle in a coordinate plane, sampled on `nx × ny` nodes.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub plane: Plane,
    /// Value of the coordinate normal to the plane.
    #[serde(default)]
    pub offset: f64,
    /// `[u_min, u_max, v_min, v_max]` along the plane's two axes in order
    /// (`xz`: u = x, v = z).
    pub extent: [f64; 4],
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    fn validate(&self) -> Result<()> {
        if self.nx == 0 || self.ny == 0 {
            return Err(Error::ConfigError("grid needs nx, ny >= 1".into()));
        }
        if !self.extent.iter().chain([&self.offset]).all(|v| v.is_finite()) {
            return Err(Error::ConfigError("grid extent and offset must be finite".into()));
        }
        let [u0, u1, v0, v1] = self.extent;
        if u1 < u0 || v1 < v0 {
            return Err(Error::ConfigError("grid extent must be [u_min, u_max, v_min, v_max]".into()));
        }
        Ok(())
    }

    fn axis_value(lo: f64, hi: f64, k: usize, n: usize) -> f64 {
        if n == 1 {
            lo
        } else {
            lo + (hi - lo) * k as f64 / (n - 1) as f64
        }
    }

    /// Node `(i, j)`, with row `j = 0` at the top (`v = v_max`).
    pub fn node(&self, i: usize, j: usize) -> Vec3 {
        let [u0, u1, v0, v1] = self.extent;
        let u = Self::axis_value(u0, u1, i, self.nx);
        let v = Self::axis_value(v1, v0, j, self.ny);
        match self.plane {
            Plane::Xz => Vec3::new(u, self.offset, v),
            Plane::Xy => Vec3::new(u, v, self.offset),
            Plane::Yz => Vec3::new(self.offset, u, v),
        }
    }

    /// All nodes, row-major from the top row.
    pub fn nodes(&self) -> Vec<Vec3> {
        (0..self.ny).flat_map(|j| (0..self.nx).map(move |i| self.node(i, j))).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImageConfig {
    pub quantity: Quantity,
    #[serde(default)]
    pub log: bool,
}

/// Output file names, relative to the `--out` directory.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default = "OutputConfig::default_csv")]
    pub csv: String,
    #[serde(default = "OutputConfig::default_ppm")]
    pub ppm: String,
    #[serde(default = "OutputConfig::default_trace")]
    pub trace: String,
}

impl OutputConfig {
    fn default_csv() -> String {
        "sample.csv".into()
    }
    fn default_ppm() -> String {
        "sample.ppm".into()
    }
    fn default_trace() -> String {
        "trace.csv".into()
    }
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self { csv: Self::default_csv(), ppm: Self::default_ppm(), trace: Self::default_trace() }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceConfig {
    /// Launch radii on the disk, each in `[0, a]`.
    pub rho0: Vec<f64>,
    /// Rays per launch radius, evenly spaced in azimuth. A ring at `ρ₀ = 0`
    /// always has a single ray.
    pub rays_per_ring: usize,
    pub t_max: f64,
    /// Number of time steps; each ray has `steps + 1` rows.
    pub steps: usize,
    #[serde(default = "TraceConfig::default_side")]
    pub z_sign: Side,
}

impl TraceConfig {
    fn default_side() -> Side {
        Side::Above
    }
}

fn default_helicity() -> Helicity {
    Helicity::Plus
}

fn default_s() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub a: f64,
    #[serde(default = "default_s")]
    pub s: f64,
    /// Direction of the displacement `a`; `+z` when absent.
    #[serde(default)]
    pub axis: Option<[f64; 3]>,
    pub pulse: PulseConfig,
    #[serde(default)]
    pub gauge: GaugeConfig,
    #[serde(default = "default_helicity")]
    pub helicity: Helicity,
    #[serde(default)]
    pub time: f64,
    #[serde(default)]
    pub grid: Option<GridSpec>,
    #[serde(default)]
    pub quantities: Vec<Quantity>,
    #[serde(default)]
    pub image: Option<ImageConfig>,
    #[serde(default)]
    pub outputs: OutputConfig,
    #[serde(default)]
    pub trace: Option<TraceConfig>,
    /// Directory relative paths are resolved against.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

/// A validated configuration with its derived physics objects.
#[derive(Debug, Clone, PartialEq)]
pub struct Loaded {
    pub config: RunConfig,
    pub wp: WaveletParams,
    pub gp: GaugeParams,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::ConfigError(e.to_string()))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::IoError(format!("{}: {e}", path.display())))?;
        let mut cfg = Self::from_json(&text)?;
        cfg.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(cfg)
    }

    pub fn displacement(&self) -> Result<DisplacementConfig> {
        if !(self.a > 0.0 && self.a.is_finite()) {
            return Err(Error::ConfigError(format!("a must be positive and finite, got {}", self.a)));
        }
        let cfg = match self.axis {
            None => DisplacementConfig::new(self.a, self.s),
            Some(v) => {
                let dir = Vec3::from_array(v);
                if !(dir.norm() > 0.0 && dir.is_finite()) {
                    return Err(Error::ConfigError("axis must be a finite nonzero vector".into()));
                }
                DisplacementConfig::with_axis(dir / dir.norm() * self.a, self.s)
            }
        };
        cfg.map_err(|e| Error::ConfigError(e.to_string()))
    }

    pub fn pulse_spec(&self) -> Result<PulseSpec> {
        let spec = match &self.pulse {
            PulseConfig::Gaussian { d } => PulseSpec::gaussian(*d),
            PulseConfig::Tabulated { csv } => TabulatedSpectrum::from_csv_path(self.base_dir.join(csv)).map(PulseSpec::Tabulated),
        };
        spec.map_err(|e| match e {
            Error::IoError(m) => Error::IoError(m),
            other => Error::ConfigError(other.to_string()),
        })
    }

    /// Checks every invariant and builds the wavelet and gauge parameters.
    pub fn load(self) -> Result<Loaded> {
        if !self.time.is_finite() {
            return Err(Error::ConfigError("time must be finite".into()));
        }
        let cfg = self.displacement()?;
        let wp = WaveletParams::new(cfg, self.pulse_spec()?);
        let gp = self.gauge.params();
        if self.gauge.kappa.iter().chain(&self.gauge.lambda).chain(&self.gauge.mu).any(|v| !v.is_finite()) {
            return Err(Error::ConfigError("gauge constants must be finite".into()));
        }
        if let Some(g) = &self.grid {
            g.validate()?;
        }
        let twist = self.quantities.contains(&Quantity::Twist)
            || self.image.as_ref().is_some_and(|i| i.quantity == Quantity::Twist);
        if twist && gp.null_helicity() != Some(self.helicity) {
            return Err(Error::ConfigError(format!(
                "twist needs a null gauge for helicity {}: lambda = {}",
                self.helicity,
                if self.helicity == Helicity::Plus { "-i" } else { "+i" }
            )));
        }
        if let Some(t) = &self.trace {
            if t.rho0.iter().any(|r| !(0.0..=self.a).contains(r)) {
                return Err(Error::ConfigError(format!("trace rho0 values must lie in [0, {}]", self.a)));
            }
            if t.rays_per_ring == 0 || t.steps == 0 || !(t.t_max > 0.0 && t.t_max.is_finite()) {
                return Err(Error::ConfigError("trace needs rays_per_ring, steps >= 1 and t_max > 0".into()));
            }
        }
        Ok(Loaded { config: self, wp, gp })
    }
}
