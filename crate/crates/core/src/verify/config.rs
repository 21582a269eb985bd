//! Scenario files: TOML with `[scenario]`, `[grid]` and `[tolerances]` tables.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioId {
    /// Uniform state on a periodic interval.
    ConstantState,
    /// Fluid at rest between two vacuum points.
    StaticRestFrame,
    /// Time-dependent 1-D background with moving fluid.
    #[serde(rename = "manufactured_1d")]
    Manufactured1d,
    /// 2-D slab, periodic in `x`, vacuum at `y = 0, 1`.
    #[serde(rename = "slab_2d")]
    Slab2d,
}

impl ScenarioId {
    pub const ALL: [ScenarioId; 4] =
        [ScenarioId::ConstantState, ScenarioId::StaticRestFrame, ScenarioId::Manufactured1d, ScenarioId::Slab2d];

    pub fn name(&self) -> &'static str {
        match self {
            ScenarioId::ConstantState => "constant_state",
            ScenarioId::StaticRestFrame => "static_rest_frame",
            ScenarioId::Manufactured1d => "manufactured_1d",
            ScenarioId::Slab2d => "slab_2d",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSection {
    pub id: ScenarioId,
    #[serde(default = "d_gamma")]
    pub gamma: f64,
    #[serde(default = "d_k")]
    pub k: usize,
    #[serde(default = "d_t_final")]
    pub t_final: f64,
    #[serde(default = "d_cfl")]
    pub cfl: f64,
    #[serde(default)]
    pub seed: u64,
    /// Size of the initial perturbation.
    #[serde(default = "d_amplitude")]
    pub amplitude: f64,
    /// Sample the monitors every this many steps.
    #[serde(default = "d_every")]
    pub every: usize,
    /// Entropy level of the background.
    #[serde(default)]
    pub s0: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    /// Nodes along the first axis; bounded axes get `n + 1` nodes.
    pub n: usize,
    #[serde(default = "d_grading")]
    pub grading: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Bound for `‖r‖_∞`.
    #[serde(default = "d_r_max")]
    pub r_max: f64,
    /// Localization constant `A` near the vacuum boundary.
    #[serde(default = "d_a_loc")]
    pub a_loc: f64,
    /// Relative margin the monitored bounds must keep.
    #[serde(default = "d_margin")]
    pub margin: f64,
    /// Allowed drift of conserved quantities.
    #[serde(default = "d_conservation")]
    pub conservation: f64,
    /// Size of the equivalence family used for the main-theorem constants.
    #[serde(default = "d_family")]
    pub family: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            r_max: d_r_max(),
            a_loc: d_a_loc(),
            margin: d_margin(),
            conservation: d_conservation(),
            family: d_family(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub scenario: ScenarioSection,
    pub grid: GridSection,
    #[serde(default)]
    pub tolerances: Tolerances,
}

fn d_gamma() -> f64 {
    2.0
}
fn d_k() -> usize {
    1
}
fn d_t_final() -> f64 {
    1.0
}
fn d_cfl() -> f64 {
    0.5
}
fn d_amplitude() -> f64 {
    0.01
}
fn d_every() -> usize {
    4
}
fn d_grading() -> f64 {
    2.0
}
fn d_r_max() -> f64 {
    0.3
}
fn d_a_loc() -> f64 {
    0.1
}
fn d_margin() -> f64 {
    0.05
}
fn d_conservation() -> f64 {
    1e-8
}
fn d_family() -> usize {
    50
}

impl Scenario {
    /// Defaults for a shipped scenario at `n` nodes.
    pub fn preset(id: ScenarioId, n: usize) -> Self {
        Scenario {
            scenario: ScenarioSection {
                id,
                gamma: d_gamma(),
                k: d_k(),
                t_final: d_t_final(),
                cfl: d_cfl(),
                seed: 0,
                amplitude: d_amplitude(),
                every: d_every(),
                s0: 0.0,
            },
            grid: GridSection { n, grading: d_grading() },
            tolerances: Tolerances::default(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let s: Scenario = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let s = &self.scenario;
        let t = &self.tolerances;
        let bad = |m: &str| Err(Error::Config(m.to_string()));
        if !(s.gamma > 1.0) || !s.gamma.is_finite() {
            return bad("gamma must exceed 1");
        }
        if s.k > 1 {
            return bad("k must be 0 or 1");
        }
        if !(s.t_final > 0.0) || !(s.cfl > 0.0 && s.cfl <= 1.0) || s.every == 0 {
            return bad("t_final > 0, 0 < cfl <= 1 and every >= 1 required");
        }
        if !(self.grid.grading >= 1.0) {
            return bad("grading must be at least 1");
        }
        if !(t.r_max > 0.0 && t.r_max < 0.5) {
            return bad("the bound on r must lie in (0, 1/2)");
        }
        if !(t.a_loc > 0.0 && t.margin > 0.0 && t.conservation > 0.0) {
            return bad("tolerances must be positive");
        }
        if !s.amplitude.is_finite() {
            return bad("amplitude must be finite");
        }
        Ok(())
    }
}
