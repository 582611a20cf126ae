use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::criteria::{Verdict, T_GRID};
use crate::means::{Resolution, SpaceSpec, Tolerances};
use crate::semiflow::{polar_grid, Generator};
use crate::series::ClosedForm;

use super::CliError;

/// Generator data `(b, P)`; `b` is written `[re, im]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    #[serde(default)]
    pub b: Complex64,
    pub p: ClosedForm,
}

impl GeneratorSpec {
    pub fn build(&self) -> crate::Result<Generator> {
        Generator::new(self.b, self.p.clone())
    }
}

/// Polar sample grid `{0} ∪ {|z| = j·radius/rings}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZGrid {
    pub radius: f64,
    pub rings: usize,
    pub per_ring: usize,
}

impl Default for ZGrid {
    fn default() -> Self {
        Self { radius: 0.8, rings: 4, per_ring: 16 }
    }
}

impl ZGrid {
    pub fn points(&self) -> Vec<Complex64> {
        polar_grid(self.radius, self.rings, self.per_ring)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Grids {
    /// Strictly decreasing flow times for continuity profiles.
    pub t: Vec<f64>,
    pub z: ZGrid,
    pub resolution: Resolution,
}

impl Default for Grids {
    fn default() -> Self {
        Self { t: T_GRID.to_vec(), z: ZGrid::default(), resolution: Resolution::default() }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Output {
    pub dir: Option<PathBuf>,
}

/// One experiment run, read from TOML or JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: String,
    #[serde(default)]
    pub generator: Option<GeneratorSpec>,
    #[serde(default)]
    pub space: Option<SpaceSpec>,
    #[serde(default)]
    pub battery: Vec<ClosedForm>,
    #[serde(default)]
    pub witness: Option<ClosedForm>,
    #[serde(default)]
    pub grids: Grids,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub output: Output,
    /// Expected verdicts by label or criterion id; these replace the registry's.
    #[serde(default)]
    pub expect: BTreeMap<String, Verdict>,
}

impl ExperimentConfig {
    pub fn new(experiment: &str) -> Self {
        Self {
            experiment: experiment.to_string(),
            generator: None,
            space: None,
            battery: Vec::new(),
            witness: None,
            grids: Grids::default(),
            tolerances: Tolerances::default(),
            output: Output::default(),
            expect: BTreeMap::new(),
        }
    }

    /// Parses by extension: `.json` as JSON, anything else as TOML.
    pub fn parse(text: &str, path: &Path) -> Result<Self, CliError> {
        let json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
        if json {
            serde_json::from_str(text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
        } else {
            toml::from_str(text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
        }
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, path)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Validation(m));
        if super::registry::find(&self.experiment).is_none() {
            return bad(format!("unknown experiment `{}` (see `semilab list`)", self.experiment));
        }
        self.tolerances.validate().map_err(|e| CliError::Validation(e.to_string()))?;
        self.grids.resolution.validate().map_err(|e| CliError::Validation(e.to_string()))?;
        let t = &self.grids.t;
        if t.is_empty() || t.iter().any(|x| !(*x > 0.0 && x.is_finite())) || t.windows(2).any(|w| w[1] >= w[0]) {
            return bad("grids.t must be nonempty, positive and strictly decreasing".into());
        }
        if t.len() < 3 {
            return bad("grids.t needs at least three times for the extrapolation".into());
        }
        let z = &self.grids.z;
        if !(z.radius > 0.0 && z.radius < 1.0) || z.rings == 0 || z.per_ring == 0 {
            return bad("grids.z needs 0 < radius < 1 and nonempty rings".into());
        }
        if let Some(g) = &self.generator {
            g.build().map_err(|e| CliError::Validation(e.to_string()))?;
        }
        if let Some(x) = &self.space {
            x.validate().map_err(|e| CliError::Validation(e.to_string()))?;
        }
        for f in self.battery.iter().chain(&self.witness) {
            f.validate().map_err(|e| CliError::Validation(e.to_string()))?;
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON form, without the output location.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut c = self.clone();
        c.output = Output::default();
        let canon = serde_json::to_vec(&c).expect("config serializes");
        hex::encode(Sha256::digest(&canon))
    }
}
