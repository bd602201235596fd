//! JSON run configuration shared by the command-line tool and the fixtures.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{EnergyVariant, FieldConfig, PotentialParams, System, UnitSystem};
use crate::thermo::{ClosedForm, Route};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub potential: PotentialParams,
    #[serde(default)]
    pub fields: FieldsSection,
    #[serde(default)]
    pub units: UnitSystem,
    #[serde(default)]
    pub run: RunSection,
}

/// Field section; `phi0` defaults to the flux quantum of the unit system.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldsSection {
    #[serde(default)]
    pub b_field: f64,
    #[serde(default)]
    pub phi_ab: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi0: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepVariable {
    Beta,
    Bfield,
    Abflux,
    Tau,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::config(format!("sweep needs at least 2 steps, got {}", self.steps)));
        }
        if !self.start.is_finite() || !self.stop.is_finite() || self.start == self.stop {
            return Err(Error::config(format!(
                "sweep range [{}, {}] is empty or non-finite",
                self.start, self.stop
            )));
        }
        Ok(())
    }

    /// Evenly spaced points including both ends.
    pub fn points(&self) -> Vec<f64> {
        let span = self.stop - self.start;
        (0..self.steps)
            .map(|i| self.start + span * i as f64 / (self.steps - 1) as f64)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    #[serde(default)]
    pub variant: EnergyVariant,
    #[serde(default)]
    pub route: Route,
    #[serde(default)]
    pub closed_form: ClosedForm,
    /// Magnetic quantum number for thermo and wavefunction commands.
    #[serde(default)]
    pub m: i32,
    #[serde(default = "default_n_list")]
    pub n_list: Vec<u32>,
    #[serde(default = "default_m_list")]
    pub m_list: Vec<i32>,
    #[serde(default = "default_beta")]
    pub beta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
    #[serde(default)]
    pub n: u32,
    #[serde(default = "default_points")]
    pub points: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_max: Option<f64>,
}

fn default_n_list() -> Vec<u32> {
    vec![0, 1, 2, 3]
}

fn default_m_list() -> Vec<i32> {
    vec![-1, 0, 1]
}

fn default_beta() -> f64 {
    1.0
}

fn default_points() -> usize {
    200
}

impl Default for RunSection {
    fn default() -> Self {
        RunSection {
            variant: EnergyVariant::default(),
            route: Route::default(),
            closed_form: ClosedForm::default(),
            m: 0,
            n_list: default_n_list(),
            m_list: default_m_list(),
            beta: default_beta(),
            sweep: None,
            n: 0,
            points: default_points(),
            r_max: None,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig =
            serde_json::from_str(text).map_err(|e| Error::config(e.to_string()))?;
        cfg.system()?;
        Ok(cfg)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configuration serializes")
    }

    /// Fills in defaults so that equal configurations compare equal.
    pub fn normalized(&self) -> Self {
        let mut c = self.clone();
        c.fields.phi0 = Some(self.phi0());
        c
    }

    pub fn phi0(&self) -> f64 {
        self.fields.phi0.unwrap_or_else(|| self.units.flux_quantum())
    }

    pub fn system(&self) -> Result<System> {
        let fields = FieldConfig {
            b_field: self.fields.b_field,
            phi_ab: self.fields.phi_ab,
            phi0: self.phi0(),
        };
        let s = System::new(self.potential, fields, self.units);
        s.validate()?;
        if let Some(sw) = &self.run.sweep {
            sw.validate()?;
        }
        if !(self.run.beta > 0.0) {
            return Err(Error::config(format!("beta must be positive, got {}", self.run.beta)));
        }
        Ok(s)
    }
}
