//! Run configuration: one JSON document describing inputs, grids and checks.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Grid3D, GridAxis, Grids, SampledField3D, WindowSpec};
use crate::octonion::Octonion;
use crate::signal::{generate_signal, SignalSpec};
use crate::transform::ParamTriple;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Reassembly,
    Parity,
    Shift,
    OclctOft,
    Linearity,
    Pitt,
    Logarithmic,
    YoungHausdorff,
    Heisenberg,
    DonohoStark,
}

impl Check {
    pub const PROPERTIES: [Check; 5] = [
        Check::Reassembly,
        Check::Parity,
        Check::Shift,
        Check::OclctOft,
        Check::Linearity,
    ];
    pub const INEQUALITIES: [Check; 5] = [
        Check::Pitt,
        Check::Logarithmic,
        Check::YoungHausdorff,
        Check::Heisenberg,
        Check::DonohoStark,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Reassembly => "reassembly",
            Check::Parity => "parity",
            Check::Shift => "shift",
            Check::OclctOft => "oclct-oft",
            Check::Linearity => "linearity",
            Check::Pitt => "pitt",
            Check::Logarithmic => "logarithmic",
            Check::YoungHausdorff => "young-hausdorff",
            Check::Heisenberg => "heisenberg",
            Check::DonohoStark => "donoho-stark",
        }
    }

    pub fn is_property(self) -> bool {
        Self::PROPERTIES.contains(&self)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::PROPERTIES
            .iter()
            .chain(&Self::INEQUALITIES)
            .copied()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::BadConfig(format!("unknown check '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub t: Grid3D,
    pub omega: Grid3D,
    pub mu: Grid3D,
    /// Defaults to the smallest grid holding every `t − μ`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<Grid3D>,
}

/// Shift by `steps` signal-grid cells along `axis` (1, 2 or 3).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShiftConfig {
    pub axis: usize,
    pub steps: i64,
}

impl Default for ShiftConfig {
    fn default() -> Self {
        Self { axis: 1, steps: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearityConfig {
    pub eta: Octonion,
    pub lambda: Octonion,
    pub second_signal: SignalSpec,
}

impl Default for LinearityConfig {
    fn default() -> Self {
        Self {
            eta: Octonion([0.3, -1.0, 0.2, 0.5, 0.7, -0.4, 0.1, 0.9]),
            lambda: Octonion([-0.6, 0.2, 0.8, -0.1, 0.3, 0.5, -0.7, 0.2]),
            second_signal: SignalSpec::RandomOctonion {
                seed: 7,
                center: [0.0; 3],
                widths: [1.0; 3],
            },
        }
    }
}

/// Half-widths of the boxes σ (signal grid) and τ (ω grid) about the origin.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DonohoStarkConfig {
    pub sigma_half_width: [f64; 3],
    pub tau_half_width: [f64; 3],
}

impl Default for DonohoStarkConfig {
    fn default() -> Self {
        Self {
            sigma_half_width: [2.0; 3],
            tau_half_width: [2.5; 3],
        }
    }
}

fn default_true() -> bool {
    true
}

fn default_betas() -> Vec<f64> {
    vec![0.0, 0.5, 1.0, 1.5, 2.0]
}

fn default_ps() -> Vec<f64> {
    vec![1.0, 1.25, 1.5, 1.75]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub signal: SignalSpec,
    pub window: SignalSpec,
    pub params: ParamTriple,
    pub grids: GridConfig,
    /// Empty means every check the subcommand knows.
    #[serde(default)]
    pub checks: Vec<Check>,
    /// Per-check overrides: residual tolerance for properties, relative
    /// slack for inequalities.
    #[serde(default)]
    pub tolerances: BTreeMap<Check, f64>,
    /// Replaces the seed of every random-octonion spec when set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Scale signal and window to unit L² norm.
    #[serde(default = "default_true")]
    pub normalize: bool,
    #[serde(default)]
    pub shift: ShiftConfig,
    #[serde(default)]
    pub linearity: LinearityConfig,
    #[serde(default = "default_betas")]
    pub betas: Vec<f64>,
    #[serde(default = "default_ps")]
    pub young_ps: Vec<f64>,
    #[serde(default)]
    pub donoho_stark: DonohoStarkConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        let t = Grid3D::cube(8, 0.75).expect("valid grid");
        let params = crate::suite::standard_triples()[2].1;
        let omega = crate::suite::omega_grid_for(&params, &t, &t, std::f64::consts::FRAC_1_SQRT_2)
            .expect("valid grid");
        Self {
            signal: SignalSpec::gaussian(1.0),
            window: SignalSpec::gaussian(1.0),
            params,
            grids: GridConfig {
                t,
                omega,
                mu: t,
                window: None,
            },
            checks: Vec::new(),
            tolerances: BTreeMap::new(),
            seed: None,
            normalize: true,
            shift: ShiftConfig::default(),
            linearity: LinearityConfig::default(),
            betas: default_betas(),
            young_ps: default_ps(),
            donoho_stark: DonohoStarkConfig::default(),
        }
    }
}

fn validate_grid(g: &Grid3D, what: &str) -> Result<()> {
    for a in &g.axes {
        GridAxis::new(a.count, a.spacing, a.origin)
            .map_err(|e| Error::BadConfig(format!("{what} grid: {e}")))?;
    }
    Ok(())
}

/// Smallest grid with the signal spacing containing every `t − μ`.
pub fn window_grid_for(t: &Grid3D, mu: &Grid3D) -> Result<Grid3D> {
    let mut axes = t.axes;
    for (k, a) in axes.iter_mut().enumerate() {
        let m = mu.axes[k];
        let ratio = m.spacing / a.spacing;
        if m.count > 1 && (ratio - ratio.round()).abs() > 1e-9 {
            return Err(Error::GridIncompatible(format!(
                "axis {}: window shift spacing {} is not a multiple of the signal spacing {}",
                k + 1,
                m.spacing,
                a.spacing
            )));
        }
        let span = ((m.coord(m.count - 1) - m.origin) / a.spacing).round() as usize;
        *a = GridAxis::new(a.count + span, a.spacing, a.origin - m.coord(m.count - 1))?;
    }
    Ok(Grid3D::new(axes))
}

/// Inputs generated from a config, ready for the checks.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub f: SampledField3D,
    pub w: WindowSpec,
    pub grids: Grids,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let c: Self = serde_json::from_str(text).map_err(|e| Error::BadConfig(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let bytes = crate::field_io::read_bytes(path.as_ref())?;
        Self::from_json(&String::from_utf8_lossy(&bytes))
    }

    pub fn validate(&self) -> Result<()> {
        self.signal.validate()?;
        self.window.validate()?;
        self.linearity.second_signal.validate()?;
        validate_grid(&self.grids.t, "t")?;
        validate_grid(&self.grids.omega, "omega")?;
        validate_grid(&self.grids.mu, "mu")?;
        if let Some(w) = &self.grids.window {
            validate_grid(w, "window")?;
        }
        if !(1..=3).contains(&self.shift.axis) {
            return Err(Error::BadConfig(format!(
                "shift axis must be 1, 2 or 3, got {}",
                self.shift.axis
            )));
        }
        if let Some(b) = self.betas.iter().find(|b| !(0.0..3.0).contains(*b)) {
            return Err(Error::BadConfig(format!("beta {b} outside [0, 3)")));
        }
        if let Some(p) = self.young_ps.iter().find(|p| !(1.0..2.0).contains(*p)) {
            return Err(Error::BadConfig(format!("p {p} outside [1, 2)")));
        }
        if let Some((c, t)) = self
            .tolerances
            .iter()
            .find(|(_, t)| !(**t >= 0.0 && t.is_finite()))
        {
            return Err(Error::BadConfig(format!(
                "tolerance for {c} must be non-negative, got {t}"
            )));
        }
        Ok(())
    }

    /// Applies the config-level seed to every random spec.
    pub fn resolve_seed(&mut self) {
        let Some(seed) = self.seed else { return };
        for spec in [
            &mut self.signal,
            &mut self.window,
            &mut self.linearity.second_signal,
        ] {
            if let SignalSpec::RandomOctonion { seed: s, .. } = spec {
                *s = seed;
            }
        }
    }

    /// Sets the signal and window-shift grids to `n1 × n2 × n3` symmetric
    /// grids of the given spacing and drops any explicit window grid.
    pub fn override_grid(&mut self, counts: [usize; 3], spacing: f64) -> Result<()> {
        let g = Grid3D::symmetric(counts, [spacing; 3])?;
        self.grids.t = g;
        self.grids.mu = g;
        self.grids.window = None;
        Ok(())
    }

    pub fn window_grid(&self) -> Result<Grid3D> {
        match self.grids.window {
            Some(g) => Ok(g),
            None => window_grid_for(&self.grids.t, &self.grids.mu),
        }
    }

    pub fn prepare(&self) -> Result<Prepared> {
        let mut f = generate_signal(&self.signal, &self.grids.t)?;
        let w = generate_signal(&self.window, &self.window_grid()?)?;
        let mut w = WindowSpec::new(w)?;
        if self.normalize {
            f = if f.l2_norm() > 0.0 {
                f.normalized()?
            } else {
                f
            };
            w = w.normalized();
        }
        Ok(Prepared {
            f,
            w,
            grids: Grids {
                omega: self.grids.omega,
                mu: self.grids.mu,
            },
        })
    }

    pub fn checks_or(&self, all: &[Check]) -> Vec<Check> {
        if self.checks.is_empty() {
            all.to_vec()
        } else {
            self.checks.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_round_trips_through_json() {
        let c = RunConfig::default();
        let text = serde_json::to_string_pretty(&c).unwrap();
        assert_eq!(RunConfig::from_json(&text).unwrap(), c);
    }

    #[test]
    fn minimal_json_fills_defaults() {
        let text = r#"{
            "signal": {"kind": "gaussian", "widths": [1, 1, 1]},
            "window": {"kind": "gaussian", "widths": [1, 1, 1]},
            "params": [{"a":0,"b":1,"c":-1,"d":0},{"a":0,"b":1,"c":-1,"d":0},{"a":0,"b":1,"c":-1,"d":0}],
            "grids": {
                "t": {"axes": [{"count":4,"spacing":1,"origin":-1.5},{"count":4,"spacing":1,"origin":-1.5},{"count":4,"spacing":1,"origin":-1.5}]},
                "omega": {"axes": [{"count":2,"spacing":1,"origin":-0.5},{"count":2,"spacing":1,"origin":-0.5},{"count":2,"spacing":1,"origin":-0.5}]},
                "mu": {"axes": [{"count":2,"spacing":1,"origin":-0.5},{"count":2,"spacing":1,"origin":-0.5},{"count":2,"spacing":1,"origin":-0.5}]}
            },
            "checks": ["parity", "pitt"]
        }"#;
        let c = RunConfig::from_json(text).unwrap();
        assert_eq!(c.checks, [Check::Parity, Check::Pitt]);
        assert!(c.normalize);
        assert_eq!(c.betas.len(), 5);
    }

    #[test]
    fn bad_configs() {
        assert!(matches!(
            RunConfig::from_json("{}"),
            Err(Error::BadConfig(_))
        ));
        let mut c = RunConfig::default();
        c.checks = vec![Check::Parity];
        let mut v = serde_json::to_value(&c).unwrap();
        v["checks"] = serde_json::json!(["nope"]);
        assert!(matches!(
            RunConfig::from_json(&v.to_string()),
            Err(Error::BadConfig(_))
        ));
        let mut v = serde_json::to_value(&c).unwrap();
        v["params"][0]["a"] = serde_json::json!(2.0);
        assert!(matches!(
            RunConfig::from_json(&v.to_string()),
            Err(Error::BadConfig(_))
        ));
        let mut v = serde_json::to_value(&c).unwrap();
        v["grids"]["t"]["axes"][0]["spacing"] = serde_json::json!(0.0);
        assert!(matches!(
            RunConfig::from_json(&v.to_string()),
            Err(Error::BadConfig(_))
        ));
        let mut v = serde_json::to_value(&c).unwrap();
        v["betas"] = serde_json::json!([3.5]);
        assert!(matches!(
            RunConfig::from_json(&v.to_string()),
            Err(Error::BadConfig(_))
        ));
    }

    #[test]
    fn check_names_parse() {
        for c in Check::PROPERTIES.iter().chain(&Check::INEQUALITIES) {
            assert_eq!(c.name().parse::<Check>().unwrap(), *c);
            assert_eq!(
                serde_json::to_value(c).unwrap(),
                serde_json::json!(c.name())
            );
        }
        assert!("bogus".parse::<Check>().is_err());
    }

    #[test]
    fn derived_window_grid_covers_all_offsets() {
        let t = Grid3D::cube(6, 0.5).unwrap();
        for mu in [
            Grid3D::cube(4, 0.5).unwrap(),
            Grid3D::cube(3, 1.0).unwrap(),
            Grid3D::cube(1, 1.0).unwrap(),
        ] {
            let w = window_grid_for(&t, &mu).unwrap();
            for m in mu.points() {
                for x in t.points() {
                    assert!((0..3).all(|k| w.axes[k].index_of(x[k] - m[k]).is_some()));
                }
            }
        }
        let bad = Grid3D::cube(3, 0.7).unwrap();
        assert!(matches!(
            window_grid_for(&t, &bad),
            Err(Error::GridIncompatible(_))
        ));
    }

    #[test]
    fn seed_override_reaches_random_specs() {
        let mut c = RunConfig::default();
        c.signal = SignalSpec::RandomOctonion {
            seed: 1,
            center: [0.0; 3],
            widths: [1.0; 3],
        };
        c.seed = Some(99);
        c.resolve_seed();
        assert!(matches!(
            c.signal,
            SignalSpec::RandomOctonion { seed: 99, .. }
        ));
        assert!(matches!(
            c.linearity.second_signal,
            SignalSpec::RandomOctonion { seed: 99, .. }
        ));
    }

    #[test]
    fn prepare_normalizes() {
        let p = RunConfig::default().prepare().unwrap();
        assert!((p.f.l2_norm() - 1.0).abs() < 1e-14);
        assert!((p.w.norm_sqr() - 1.0).abs() < 1e-14);
    }
}
