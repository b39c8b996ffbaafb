use std::path::Path;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use k3walls::charge::ChargeFamily;
use k3walls::mukai::K3Context;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Table,
}

/// Everything a run depends on. The defaults are the degree 10 preset.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub context: K3Context,
    pub family: ChargeFamily,
    pub output_format: OutputFormat,
    pub parallelism: usize,
    /// Samples per unit of `t` for grid checks.
    pub t_grid_density: u32,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            context: K3Context::gushel_mukai(),
            family: ChargeFamily::gushel_mukai(),
            output_format: OutputFormat::Json,
            parallelism: 1,
            t_grid_density: 1,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("config {}: {e}", path.display()))
    }

    pub fn validate(&self) -> Result<(), String> {
        self.context.validate().map_err(|e| e.to_string())?;
        self.family.validate().map_err(|e| e.to_string())?;
        if self.parallelism == 0 {
            return Err("parallelism must be positive".into());
        }
        if self.t_grid_density == 0 {
            return Err("t_grid_density must be positive".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_the_preset() {
        let c = RunConfig::default();
        assert_eq!(c.context.degree, 10);
        assert_eq!(c.context.excluded_isotropic_degrees, (1..=4).collect());
        assert!(c.context.has_lines && c.context.has_conics);
        assert_eq!(c.family, ChargeFamily::gushel_mukai());
    }

    #[test]
    fn partial_documents_fill_defaults() {
        let c: RunConfig = serde_json::from_str(r#"{"parallelism": 4}"#).unwrap();
        assert_eq!(c.parallelism, 4);
        assert_eq!(c.context, K3Context::gushel_mukai());
        assert!(serde_json::from_str::<RunConfig>(r#"{"paralelism": 4}"#).is_err());
    }

    #[test]
    fn round_trip() {
        let c = RunConfig::default();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&text).unwrap(), c);
    }
}
