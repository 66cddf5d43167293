//! TOML transformation specs.
//!
//! ```toml
//! space = "torus"          # or "sphere-circle"
//! dimension = 3            # torus dimension, or sphere dimension
//! exponents = [2, 3]       # torus only, dimension - 1 entries
//! cocycle_perturbed = false
//!
//! [theta]
//! label = "theta"
//! interval = ["0.5624", "0.5626"]
//! ```

use std::path::Path;

use elliott_core::ktheory::{KTheoryError, TransformationSpec};
use elliott_core::theta::ThetaSymbol;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaDoc {
    pub label: String,
    /// Decimal strings, parsed exactly.
    pub interval: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub space: String,
    pub dimension: usize,
    #[serde(default)]
    pub exponents: Vec<i64>,
    #[serde(default)]
    pub cocycle_perturbed: bool,
    pub theta: ThetaDoc,
}

impl SpecDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Input(format!("invalid spec: {}", e.message())))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Input(msg) => CliError::Input(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn theta(&self) -> Result<ThetaSymbol, CliError> {
        let [lo, hi] = &self.theta.interval;
        ThetaSymbol::from_decimals(self.theta.label.clone(), lo, hi)
            .map_err(|e| CliError::Input(format!("theta: {e}")))
    }

    pub fn to_spec(&self) -> Result<TransformationSpec, CliError> {
        let theta = self.theta()?;
        let spec = match self.space.as_str() {
            "torus" => TransformationSpec::AffineFurstenbergTorus {
                dimension: self.dimension,
                exponents: self.exponents.iter().map(|&e| BigInt::from(e)).collect(),
                theta,
                cocycle_perturbed: self.cocycle_perturbed,
            },
            "sphere-circle" => {
                if !self.exponents.is_empty() {
                    return Err(CliError::Input(
                        "sphere-circle specs take no exponents".into(),
                    ));
                }
                if self.cocycle_perturbed {
                    return Err(CliError::Input(
                        "cocycle_perturbed applies to tori only".into(),
                    ));
                }
                TransformationSpec::SphereTimesCircle {
                    sphere_dim: self.dimension,
                    theta,
                }
            }
            other => return Err(CliError::Unsupported(format!("unknown space {other:?}"))),
        };
        spec.validate().map_err(|e| match e {
            KTheoryError::ExponentCount { .. } => CliError::Input(e.to_string()),
            _ => CliError::Unsupported(e.to_string()),
        })?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const T3: &str = r#"
space = "torus"
dimension = 3
exponents = [2, 3]

[theta]
label = "theta"
interval = ["0.5624", "0.5626"]
"#;

    #[test]
    fn parses_torus() {
        let doc = SpecDocument::parse(T3).unwrap();
        let spec = doc.to_spec().unwrap();
        assert_eq!(
            spec,
            TransformationSpec::torus(&[2, 3], &doc.theta().unwrap()).unwrap()
        );
    }

    #[test]
    fn rejects_unknown_fields() {
        let text = T3.replace("dimension = 3", "dimension = 3\ncolor = 1");
        assert!(matches!(
            SpecDocument::parse(&text),
            Err(CliError::Input(_))
        ));
    }

    #[test]
    fn inverted_interval_names_bound() {
        let text = T3.replace(r#"["0.5624", "0.5626"]"#, r#"["0.7", "0.6"]"#);
        let err = SpecDocument::parse(&text).unwrap().to_spec().unwrap_err();
        assert!(
            matches!(&err, CliError::Input(m) if m.contains("0.7") && m.contains("0.6")),
            "{err}"
        );
    }

    #[test]
    fn unsupported_spaces() {
        let text = T3.replace("\"torus\"", "\"klein-bottle\"");
        assert!(matches!(
            SpecDocument::parse(&text).unwrap().to_spec(),
            Err(CliError::Unsupported(_))
        ));
        let text = T3.replace(
            "dimension = 3\nexponents = [2, 3]",
            "dimension = 1\nexponents = []",
        );
        assert!(matches!(
            SpecDocument::parse(&text).unwrap().to_spec(),
            Err(CliError::Unsupported(_))
        ));
        let text = T3
            .replace("dimension = 3\nexponents = [2, 3]", "dimension = 4")
            .replace("torus", "sphere-circle");
        assert!(matches!(
            SpecDocument::parse(&text).unwrap().to_spec(),
            Err(CliError::Unsupported(_))
        ));
    }

    #[test]
    fn exponent_count_is_input_error() {
        let text = T3.replace("[2, 3]", "[2]");
        assert!(matches!(
            SpecDocument::parse(&text).unwrap().to_spec(),
            Err(CliError::Input(_))
        ));
    }
}
