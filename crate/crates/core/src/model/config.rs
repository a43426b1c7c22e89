//! System parameters and the flat `key = value` configuration format.
//!
//! Powers are written in dBm, gains and the SINR threshold in dB and the
//! beamwidth in degrees. Everything is converted once on load; the in-memory
//! [`SystemConfig`] holds linear quantities, watts and radians only.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::quadrature::Tolerance;
use crate::scalar::Real;

/// Quadrature, truncation and sampling settings.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericSettings<T> {
    pub quad_rel_tol: T,
    pub quad_abs_tol: T,
    /// Inner tails stop once the integrand is below this fraction of its running maximum.
    pub tail_cutoff: T,
    /// Outer integrals start with the radius where the void factor `exp(-πλr²)` equals this.
    pub void_cutoff: T,
    pub max_subdivisions: usize,
    /// Monte Carlo sampling window radius, m.
    pub window_radius: T,
    pub seed: u64,
}

impl<T: Real> Default for NumericSettings<T> {
    fn default() -> Self {
        NumericSettings {
            quad_rel_tol: T::lit(1e-8),
            quad_abs_tol: T::lit(1e-12),
            tail_cutoff: T::lit(1e-14),
            void_cutoff: T::lit(1e-12),
            max_subdivisions: 200,
            window_radius: T::lit(2000.0),
            seed: 20_200_525,
        }
    }
}

impl<T: Real> NumericSettings<T> {
    pub fn tolerance(&self) -> Tolerance<T> {
        Tolerance {
            rel: self.quad_rel_tol,
            abs: self.quad_abs_tol,
            max_subdivisions: self.max_subdivisions,
        }
    }
}

/// Every physical, cache and numeric parameter of the network, in internal units.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig<T> {
    /// MBS density, BS/m².
    pub lambda_m: T,
    /// SBS density, BS/m².
    pub lambda_s: T,
    /// Total mmWave bandwidth, Hz.
    pub bandwidth: T,
    /// Maximum MBS power, W.
    pub p_m_max: T,
    /// Maximum SBS power, W.
    pub p_s_max: T,
    /// Fixed circuit power, W.
    pub p_m_fc: T,
    pub p_s_fc: T,
    /// Power amplifier coefficients.
    pub rho_m: T,
    pub rho_s: T,
    /// Association biases (linear).
    pub bias_m: T,
    pub bias_s: T,
    /// Main- and side-lobe antenna gains (linear).
    pub main_gain: T,
    pub side_gain: T,
    /// Main-lobe beamwidth, rad.
    pub theta: T,
    pub a_los: T,
    pub a_nlos: T,
    pub alpha_los: T,
    pub alpha_nlos: T,
    /// Blockage parameter, 1/m.
    pub beta: T,
    /// Noise power, W.
    pub noise: T,
    /// SINR threshold (linear).
    pub gamma0: T,
    /// Library size, files.
    pub library_size: usize,
    /// Maximum SBS cache size, files.
    pub c_max: usize,
    /// Zipf skewness.
    pub gamma_p: T,
    /// File size, bits.
    pub file_bits: T,
    /// Caching power coefficient, W/bit.
    pub omega_ca: T,
    pub numeric: NumericSettings<T>,
}

pub fn dbm_to_watts<T: Real>(dbm: T) -> T {
    T::lit(10.0).powf(dbm / T::lit(10.0)) / T::lit(1000.0)
}

pub fn watts_to_dbm<T: Real>(w: T) -> T {
    T::lit(10.0) * (w * T::lit(1000.0)).log10()
}

pub fn db_to_linear<T: Real>(db: T) -> T {
    T::lit(10.0).powf(db / T::lit(10.0))
}

pub fn linear_to_db<T: Real>(x: T) -> T {
    T::lit(10.0) * x.log10()
}

impl<T: Real> Default for SystemConfig<T> {
    /// The reference scenario: 400 MHz, λ_s = 1e-4, λ_m = 4e-5, 38.2/60 dBm, …
    fn default() -> Self {
        SystemConfig {
            lambda_m: T::lit(4e-5),
            lambda_s: T::lit(1e-4),
            bandwidth: T::lit(400e6),
            p_m_max: dbm_to_watts(T::lit(60.0)),
            p_s_max: dbm_to_watts(T::lit(38.2)),
            p_m_fc: dbm_to_watts(T::lit(46.0)),
            p_s_fc: dbm_to_watts(T::lit(20.0)),
            rho_m: T::lit(1.5),
            rho_s: T::one(),
            bias_m: T::lit(5.0),
            bias_s: T::lit(10.0),
            main_gain: db_to_linear(T::lit(10.0)),
            side_gain: db_to_linear(T::lit(-10.0)),
            theta: T::lit(30.0).to_radians(),
            a_los: T::lit(1e-10),
            a_nlos: T::lit(1e-14),
            alpha_los: T::lit(2.0),
            alpha_nlos: T::lit(4.0),
            beta: T::lit(2e-3),
            noise: dbm_to_watts(T::lit(-90.0)),
            gamma0: db_to_linear(T::lit(10.0)),
            library_size: 1000,
            c_max: 800,
            gamma_p: T::one(),
            file_bits: T::lit(8e8),
            omega_ca: T::lit(6.25e-12),
            numeric: NumericSettings::default(),
        }
    }
}

/// Keys accepted in a configuration file, in canonical order.
pub const CONFIG_KEYS: &[&str] = &[
    "lambda_m",
    "lambda_s",
    "W",
    "P_m_max",
    "P_s_max",
    "P_m_fc",
    "P_s_fc",
    "rho_m",
    "rho_s",
    "B_m",
    "B_s",
    "M_gain",
    "m_gain",
    "theta",
    "A_L",
    "A_NL",
    "alpha_L",
    "alpha_NL",
    "beta",
    "N0",
    "gamma0",
    "F",
    "C_max",
    "gamma_p",
    "s_bits",
    "omega_ca",
    "quad_rel_tol",
    "quad_abs_tol",
    "tail_cutoff",
    "void_cutoff",
    "max_subdivisions",
    "window_radius",
    "seed",
];

fn count_value(key: &str, v: f64) -> Result<usize> {
    if !(v.is_finite() && v >= 0.0 && v.fract() == 0.0 && v <= u32::MAX as f64) {
        return Err(Error::config(key, format!("expected a non-negative integer, got {v}")));
    }
    Ok(v as usize)
}

impl<T: Real> SystemConfig<T> {
    /// Parses a configuration file body; absent keys keep their reference values.
    pub fn from_config_str(text: &str) -> Result<Self> {
        let table: toml::Table = text.parse().map_err(|e: toml::de::Error| Error::Parse(e.to_string()))?;
        let mut cfg = SystemConfig::<T>::default();
        for (key, value) in &table {
            let v = match value {
                toml::Value::Float(x) => *x,
                toml::Value::Integer(i) => *i as f64,
                other => {
                    return Err(Error::config(key, format!("expected a number, got {}", other.type_str())));
                }
            };
            cfg.set_boundary_value(key, v)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Sets one key from its boundary-unit value (dBm, dB, degrees).
    pub fn set_boundary_value(&mut self, key: &str, v: f64) -> Result<()> {
        if v.is_nan() {
            return Err(Error::config(key, "value is NaN"));
        }
        let t = T::lit(v);
        match key {
            "lambda_m" => self.lambda_m = t,
            "lambda_s" => self.lambda_s = t,
            "W" => self.bandwidth = t,
            "P_m_max" => self.p_m_max = dbm_to_watts(t),
            "P_s_max" => self.p_s_max = dbm_to_watts(t),
            "P_m_fc" => self.p_m_fc = dbm_to_watts(t),
            "P_s_fc" => self.p_s_fc = dbm_to_watts(t),
            "rho_m" => self.rho_m = t,
            "rho_s" => self.rho_s = t,
            "B_m" => self.bias_m = t,
            "B_s" => self.bias_s = t,
            "M_gain" => self.main_gain = db_to_linear(t),
            "m_gain" => self.side_gain = db_to_linear(t),
            "theta" => self.theta = t.to_radians(),
            "A_L" => self.a_los = t,
            "A_NL" => self.a_nlos = t,
            "alpha_L" => self.alpha_los = t,
            "alpha_NL" => self.alpha_nlos = t,
            "beta" => self.beta = t,
            "N0" => self.noise = dbm_to_watts(t),
            "gamma0" => self.gamma0 = db_to_linear(t),
            "F" => self.library_size = count_value(key, v)?,
            "C_max" => self.c_max = count_value(key, v)?,
            "gamma_p" => self.gamma_p = t,
            "s_bits" => self.file_bits = t,
            "omega_ca" => self.omega_ca = t,
            "quad_rel_tol" => self.numeric.quad_rel_tol = t,
            "quad_abs_tol" => self.numeric.quad_abs_tol = t,
            "tail_cutoff" => self.numeric.tail_cutoff = t,
            "void_cutoff" => self.numeric.void_cutoff = t,
            "max_subdivisions" => self.numeric.max_subdivisions = count_value(key, v)?,
            "window_radius" => self.numeric.window_radius = t,
            "seed" => self.numeric.seed = count_value(key, v)? as u64,
            _ => return Err(Error::config(key, "unknown key")),
        }
        Ok(())
    }

    /// Reads one key back in boundary units.
    pub fn boundary_value(&self, key: &str) -> Option<f64> {
        let v = match key {
            "lambda_m" => self.lambda_m,
            "lambda_s" => self.lambda_s,
            "W" => self.bandwidth,
            "P_m_max" => watts_to_dbm(self.p_m_max),
            "P_s_max" => watts_to_dbm(self.p_s_max),
            "P_m_fc" => watts_to_dbm(self.p_m_fc),
            "P_s_fc" => watts_to_dbm(self.p_s_fc),
            "rho_m" => self.rho_m,
            "rho_s" => self.rho_s,
            "B_m" => self.bias_m,
            "B_s" => self.bias_s,
            "M_gain" => linear_to_db(self.main_gain),
            "m_gain" => linear_to_db(self.side_gain),
            "theta" => self.theta.to_degrees(),
            "A_L" => self.a_los,
            "A_NL" => self.a_nlos,
            "alpha_L" => self.alpha_los,
            "alpha_NL" => self.alpha_nlos,
            "beta" => self.beta,
            "N0" => watts_to_dbm(self.noise),
            "gamma0" => linear_to_db(self.gamma0),
            "F" => return Some(self.library_size as f64),
            "C_max" => return Some(self.c_max as f64),
            "gamma_p" => self.gamma_p,
            "s_bits" => self.file_bits,
            "omega_ca" => self.omega_ca,
            "quad_rel_tol" => self.numeric.quad_rel_tol,
            "quad_abs_tol" => self.numeric.quad_abs_tol,
            "tail_cutoff" => self.numeric.tail_cutoff,
            "void_cutoff" => self.numeric.void_cutoff,
            "max_subdivisions" => return Some(self.numeric.max_subdivisions as f64),
            "window_radius" => self.numeric.window_radius,
            "seed" => return Some(self.numeric.seed as f64),
            _ => return None,
        };
        Some(v.as_f64())
    }

    /// Checks every invariant; the first violation is reported with its key.
    pub fn validate(&self) -> Result<()> {
        let positive = |key: &str, v: T| {
            if v > T::zero() && v.is_finite() {
                Ok(())
            } else {
                Err(Error::config(key, format!("must be positive and finite, got {v}")))
            }
        };
        positive("lambda_m", self.lambda_m)?;
        positive("lambda_s", self.lambda_s)?;
        positive("W", self.bandwidth)?;
        positive("P_m_max", self.p_m_max)?;
        positive("P_s_max", self.p_s_max)?;
        positive("P_m_fc", self.p_m_fc)?;
        positive("P_s_fc", self.p_s_fc)?;
        positive("rho_m", self.rho_m)?;
        positive("rho_s", self.rho_s)?;
        positive("B_m", self.bias_m)?;
        positive("B_s", self.bias_s)?;
        positive("M_gain", self.main_gain)?;
        positive("m_gain", self.side_gain)?;
        positive("A_L", self.a_los)?;
        positive("A_NL", self.a_nlos)?;
        positive("N0", self.noise)?;
        positive("gamma0", self.gamma0)?;
        positive("gamma_p", self.gamma_p)?;
        positive("s_bits", self.file_bits)?;
        if !(self.theta > T::zero() && self.theta <= T::lit(2.0) * T::PI()) {
            return Err(Error::config("theta", "beamwidth must lie in (0, 360] degrees"));
        }
        if !(self.alpha_los >= T::lit(2.0)) {
            return Err(Error::config("alpha_L", "path-loss exponent must be at least 2"));
        }
        if !(self.alpha_nlos >= self.alpha_los) {
            return Err(Error::config("alpha_NL", "NLOS exponent must be at least the LOS exponent"));
        }
        if !(self.beta >= T::zero() && self.beta.is_finite()) {
            return Err(Error::config("beta", "blockage parameter must be non-negative"));
        }
        if !(self.omega_ca >= T::zero() && self.omega_ca.is_finite()) {
            return Err(Error::config("omega_ca", "caching power coefficient must be non-negative"));
        }
        if self.c_max > self.library_size {
            return Err(Error::config("C_max", "maximum cache exceeds the library size F"));
        }
        if !(self.p_s_fc < self.p_s_max) {
            return Err(Error::config("P_s_fc", "SBS circuit power must stay below P_s_max"));
        }
        let mbs_cache = self.omega_ca * self.file_bits * T::from_usize_lossy(self.library_size);
        if !(self.p_m_fc + mbs_cache < self.p_m_max) {
            return Err(Error::config(
                "P_m_max",
                "MBS circuit plus full-library cache power leaves no transmit power",
            ));
        }
        let n = &self.numeric;
        positive("quad_rel_tol", n.quad_rel_tol)?;
        positive("quad_abs_tol", n.quad_abs_tol)?;
        positive("tail_cutoff", n.tail_cutoff)?;
        if !(n.void_cutoff > T::zero() && n.void_cutoff < T::one()) {
            return Err(Error::config("void_cutoff", "must lie in (0, 1)"));
        }
        if n.max_subdivisions == 0 {
            return Err(Error::config("max_subdivisions", "must be at least 1"));
        }
        positive("window_radius", n.window_radius)?;
        Ok(())
    }

    /// Renders the configuration in boundary units, one key per line.
    pub fn to_config_string(&self) -> String {
        let mut out = String::new();
        for key in CONFIG_KEYS {
            let v = self.boundary_value(key).expect("canonical key");
            let _ = writeln!(out, "{key} = {}", format_config_number(key, v));
        }
        out
    }
}

fn format_config_number(key: &str, v: f64) -> String {
    match key {
        "F" | "C_max" | "max_subdivisions" | "seed" => format!("{}", v as u64),
        _ => {
            // shortest representation that round-trips, always parseable as a float
            let s = format!("{v:?}");
            if s.contains('.') || s.contains('e') || s.contains("inf") || s.contains("NaN") {
                s
            } else {
                format!("{s}.0")
            }
        }
    }
}

/// Reference configuration file, verbatim in boundary units.
pub const DEFAULT_CONFIG_TEXT: &str = "\
# Reference scenario. Powers in dBm, gains and thresholds in dB, theta in degrees.
lambda_m = 4e-5
lambda_s = 1e-4
W = 400e6
P_m_max = 60.0
P_s_max = 38.2
P_m_fc = 46.0
P_s_fc = 20.0
rho_m = 1.5
rho_s = 1.0
B_m = 5.0
B_s = 10.0
M_gain = 10.0
m_gain = -10.0
theta = 30.0
A_L = 1e-10
A_NL = 1e-14
alpha_L = 2.0
alpha_NL = 4.0
beta = 2e-3
N0 = -90.0
gamma0 = 10.0
F = 1000
C_max = 800
gamma_p = 1.0
s_bits = 8e8
omega_ca = 6.25e-12
# numeric settings
quad_rel_tol = 1e-8
quad_abs_tol = 1e-12
tail_cutoff = 1e-14
void_cutoff = 1e-12
max_subdivisions = 200
window_radius = 2000.0
seed = 20200525
";
