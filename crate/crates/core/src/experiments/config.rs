//! Flat `key = value` experiment configuration.

use std::fmt;
use std::str::FromStr;

use crate::adversary::{AdversaryMode, BlackHole};
use crate::crypto::{CurveParams, EcPoint};
use crate::error::{parse_err, Error, Result};
use crate::routing::SchemeId;
use crate::sharing::DEFAULT_MODULUS;
use crate::topology::{FieldRect, Position};

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub field_width: f64,
    pub field_height: f64,
    pub n_l: usize,
    pub n_h: usize,
    pub radius: f64,
    pub schemes: Vec<SchemeId>,
    /// T; `None` means `ceil(M / 2)`.
    pub threshold: Option<usize>,
    /// M
    pub shares: usize,
    /// N
    pub ttl: u32,
    pub alpha1: u32,
    pub alpha2: u32,
    pub hole_x: f64,
    pub hole_y: f64,
    pub hole_radius: f64,
    pub source_x: f64,
    pub source_y: f64,
    pub adversary: AdversaryMode,
    pub trials: usize,
    pub seed: u64,
    /// Trials sharing one deployment; 0 keeps a single deployment throughout.
    pub topology_block: usize,
    /// Worker threads; 0 uses every core.
    pub jobs: usize,
    pub modulus: u64,
    pub curve_p: u64,
    pub curve_a: u64,
    pub curve_b: u64,
    pub curve_base_x: u64,
    pub curve_base_y: u64,
    pub curve_order: Option<u64>,
    pub ttl_values: Vec<u32>,
    pub share_values: Vec<usize>,
    pub hole_radius_values: Vec<f64>,
    pub node_values: Vec<usize>,
    pub source_x_values: Vec<f64>,
    pub table1_h_values: Vec<u64>,
    pub table1_l_values: Vec<u64>,
    pub table1_ring_values: Vec<u64>,
    pub table1_pool: u64,
    pub table1_eg_rings: Vec<u64>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let toy = CurveParams::toy();
        let EcPoint::Affine { x, y } = toy.base() else {
            unreachable!("toy base is affine")
        };
        ExperimentConfig {
            field_width: 100.0,
            field_height: 100.0,
            n_l: 980,
            n_h: 20,
            radius: 5.05,
            schemes: SchemeId::ALL.to_vec(),
            threshold: None,
            shares: 4,
            ttl: 15,
            alpha1: 2,
            alpha2: 4,
            hole_x: 50.0,
            hole_y: 0.0,
            hole_radius: 10.0,
            source_x: 90.0,
            source_y: 0.0,
            adversary: AdversaryMode::Eavesdrop,
            trials: 10_000,
            seed: 1,
            topology_block: 100,
            jobs: 0,
            modulus: DEFAULT_MODULUS,
            curve_p: toy.p(),
            curve_a: toy.a(),
            curve_b: toy.b(),
            curve_base_x: x,
            curve_base_y: y,
            curve_order: None,
            ttl_values: vec![5, 10, 15, 20, 25],
            share_values: vec![2, 3, 4, 5, 6],
            hole_radius_values: vec![5.0, 10.0, 15.0, 20.0],
            node_values: vec![1000, 2000, 3000],
            source_x_values: (1..=9).map(|i| 10.0 * i as f64).collect(),
            table1_h_values: vec![10, 20],
            table1_l_values: vec![100, 980],
            table1_ring_values: vec![50, 100, 150],
            table1_pool: 10_000,
            table1_eg_rings: vec![0, 25, 50, 75, 100, 125, 150, 175, 200, 250],
        }
    }
}

/// `ceil(M / 2)` unless pinned.
pub fn threshold_for(pinned: Option<usize>, shares: usize) -> usize {
    pinned.unwrap_or(shares.div_ceil(2))
}

fn list<T: FromStr>(key: &str, value: &str) -> std::result::Result<Vec<T>, String>
where
    T::Err: fmt::Display,
{
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|e| format!("{key}: {s:?}: {e}")))
        .collect()
}

fn one<T: FromStr>(key: &str, value: &str) -> std::result::Result<T, String>
where
    T::Err: fmt::Display,
{
    value.parse::<T>().map_err(|e| format!("{key}: {value:?}: {e}"))
}

fn optional<T: FromStr>(key: &str, value: &str) -> std::result::Result<Option<T>, String>
where
    T::Err: fmt::Display,
{
    match value {
        "auto" | "" => Ok(None),
        v => one(key, v).map(Some),
    }
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

impl ExperimentConfig {
    /// Parse config text on top of the defaults. Blank lines and `#`
    /// comments are skipped; unknown keys are rejected.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| parse_err(i + 1, format!("expected `key = value`, got {line:?}")))?;
            cfg.set(key.trim(), value.trim()).map_err(|msg| parse_err(i + 1, msg))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        match key {
            "field_width" => self.field_width = one(key, value)?,
            "field_height" => self.field_height = one(key, value)?,
            "n_l" => self.n_l = one(key, value)?,
            "n_h" => self.n_h = one(key, value)?,
            "radius" => self.radius = one(key, value)?,
            "schemes" => self.schemes = list(key, value)?,
            "threshold" => self.threshold = optional(key, value)?,
            "shares" => self.shares = one(key, value)?,
            "ttl" => self.ttl = one(key, value)?,
            "alpha1" => self.alpha1 = one(key, value)?,
            "alpha2" => self.alpha2 = one(key, value)?,
            "hole_x" => self.hole_x = one(key, value)?,
            "hole_y" => self.hole_y = one(key, value)?,
            "hole_radius" => self.hole_radius = one(key, value)?,
            "source_x" => self.source_x = one(key, value)?,
            "source_y" => self.source_y = one(key, value)?,
            "adversary" => self.adversary = one(key, value)?,
            "trials" => self.trials = one(key, value)?,
            "seed" => self.seed = one(key, value)?,
            "topology_block" => self.topology_block = one(key, value)?,
            "jobs" => self.jobs = one(key, value)?,
            "modulus" => self.modulus = one(key, value)?,
            "curve_p" => self.curve_p = one(key, value)?,
            "curve_a" => self.curve_a = one(key, value)?,
            "curve_b" => self.curve_b = one(key, value)?,
            "curve_base_x" => self.curve_base_x = one(key, value)?,
            "curve_base_y" => self.curve_base_y = one(key, value)?,
            "curve_order" => self.curve_order = optional(key, value)?,
            "ttl_values" => self.ttl_values = list(key, value)?,
            "share_values" => self.share_values = list(key, value)?,
            "hole_radius_values" => self.hole_radius_values = list(key, value)?,
            "node_values" => self.node_values = list(key, value)?,
            "source_x_values" => self.source_x_values = list(key, value)?,
            "table1_h_values" => self.table1_h_values = list(key, value)?,
            "table1_l_values" => self.table1_l_values = list(key, value)?,
            "table1_ring_values" => self.table1_ring_values = list(key, value)?,
            "table1_pool" => self.table1_pool = one(key, value)?,
            "table1_eg_rings" => self.table1_eg_rings = list(key, value)?,
            other => return Err(format!("unknown key {other:?}")),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.schemes.is_empty() {
            return Err(Error::Config("at least one scheme is required".into()));
        }
        let t = threshold_for(self.threshold, self.shares);
        if self.shares == 0 || t == 0 || t > self.shares {
            return Err(Error::Config(format!("need 1 <= T <= M, got T={t}, M={}", self.shares)));
        }
        if let Some(t) = self.threshold {
            if let Some(&m) = self.share_values.iter().find(|&&m| m < t) {
                return Err(Error::Config(format!("share_values entry {m} is below the pinned threshold {t}")));
            }
        }
        self.field()?;
        self.hole()?;
        if self.radius.is_nan() || self.radius <= 0.0 {
            return Err(Error::Config("radius must be positive".into()));
        }
        if self.n_h + self.n_l == 0 {
            return Err(Error::Config("deployment has no sensors".into()));
        }
        self.curve()?;
        Ok(())
    }

    /// Soft check that `alpha1 <= alpha2`.
    pub fn alpha_warning(&self) -> Option<String> {
        (self.alpha1 > self.alpha2).then(|| {
            format!(
                "alpha1 = {} exceeds alpha2 = {}; the MTRP band will lean away from the sink",
                self.alpha1, self.alpha2
            )
        })
    }

    pub fn field(&self) -> Result<FieldRect> {
        let f = FieldRect::new(self.field_width, self.field_height);
        if !(f.width > 0.0 && f.height > 0.0) {
            return Err(Error::Config("field must have positive area".into()));
        }
        Ok(f)
    }

    pub fn hole(&self) -> Result<BlackHole> {
        let hole = BlackHole::new(Position::new(self.hole_x, self.hole_y), self.hole_radius)?;
        if hole.contains(&Position::new(0.0, 0.0)) {
            return Err(Error::Config("black hole covers the sink".into()));
        }
        Ok(hole)
    }

    pub fn source(&self) -> Position {
        Position::new(self.source_x, self.source_y)
    }

    pub fn curve(&self) -> Result<CurveParams> {
        CurveParams::new(
            self.curve_p,
            self.curve_a,
            self.curve_b,
            EcPoint::affine(self.curve_base_x, self.curve_base_y),
            self.curve_order,
        )
    }

    pub fn threshold_for(&self, shares: usize) -> usize {
        threshold_for(self.threshold, shares)
    }

    /// H/L split for a total sensor count, keeping the configured H share.
    pub fn split_nodes(&self, total: usize) -> (usize, usize) {
        let base = self.n_h + self.n_l;
        let n_h = if base == 0 {
            0
        } else {
            ((total as f64) * self.n_h as f64 / base as f64).round() as usize
        };
        let n_h = n_h.min(total);
        (n_h, total - n_h)
    }
}

impl fmt::Display for ExperimentConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |v: Option<u64>| v.map_or("auto".to_string(), |v| v.to_string());
        writeln!(f, "field_width = {}", self.field_width)?;
        writeln!(f, "field_height = {}", self.field_height)?;
        writeln!(f, "n_l = {}", self.n_l)?;
        writeln!(f, "n_h = {}", self.n_h)?;
        writeln!(f, "radius = {}", self.radius)?;
        writeln!(f, "schemes = {}", join(&self.schemes))?;
        writeln!(f, "threshold = {}", opt(self.threshold.map(|t| t as u64)))?;
        writeln!(f, "shares = {}", self.shares)?;
        writeln!(f, "ttl = {}", self.ttl)?;
        writeln!(f, "alpha1 = {}", self.alpha1)?;
        writeln!(f, "alpha2 = {}", self.alpha2)?;
        writeln!(f, "hole_x = {}", self.hole_x)?;
        writeln!(f, "hole_y = {}", self.hole_y)?;
        writeln!(f, "hole_radius = {}", self.hole_radius)?;
        writeln!(f, "source_x = {}", self.source_x)?;
        writeln!(f, "source_y = {}", self.source_y)?;
        writeln!(f, "adversary = {}", self.adversary)?;
        writeln!(f, "trials = {}", self.trials)?;
        writeln!(f, "seed = {}", self.seed)?;
        writeln!(f, "topology_block = {}", self.topology_block)?;
        writeln!(f, "jobs = {}", self.jobs)?;
        writeln!(f, "modulus = {}", self.modulus)?;
        writeln!(f, "curve_p = {}", self.curve_p)?;
        writeln!(f, "curve_a = {}", self.curve_a)?;
        writeln!(f, "curve_b = {}", self.curve_b)?;
        writeln!(f, "curve_base_x = {}", self.curve_base_x)?;
        writeln!(f, "curve_base_y = {}", self.curve_base_y)?;
        writeln!(f, "curve_order = {}", opt(self.curve_order))?;
        writeln!(f, "ttl_values = {}", join(&self.ttl_values))?;
        writeln!(f, "share_values = {}", join(&self.share_values))?;
        writeln!(f, "hole_radius_values = {}", join(&self.hole_radius_values))?;
        writeln!(f, "node_values = {}", join(&self.node_values))?;
        writeln!(f, "source_x_values = {}", join(&self.source_x_values))?;
        writeln!(f, "table1_h_values = {}", join(&self.table1_h_values))?;
        writeln!(f, "table1_l_values = {}", join(&self.table1_l_values))?;
        writeln!(f, "table1_ring_values = {}", join(&self.table1_ring_values))?;
        writeln!(f, "table1_pool = {}", self.table1_pool)?;
        writeln!(f, "table1_eg_rings = {}", join(&self.table1_eg_rings))
    }
}
