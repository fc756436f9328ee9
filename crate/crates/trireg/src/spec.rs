//! Region spec documents.
//!
//! A spec is a TOML or JSON document with an integer `d` and a list of
//! generator strings `gens`:
//!
//! ```toml
//! d = 6
//! gens = ["x^3", "y^4", "z^5"]
//! ```
//!
//! Text starting with `{` is read as JSON.  A single line such as
//! `d = 6, gens = ["x^3"]` is accepted as well.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use trireg_core::{Ideal, Monomial, TriangularRegion};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionSpec {
    pub d: u32,
    #[serde(default)]
    pub gens: Vec<String>,
}

#[derive(Deserialize)]
struct Wrapped {
    spec: RegionSpec,
}

/// 1-based line and column of a byte offset.
fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
    (line, column)
}

impl RegionSpec {
    /// Read `arg` as a file if one exists at that path, else as spec text.
    pub fn load(arg: &str) -> Result<RegionSpec, CliError> {
        let path = Path::new(arg);
        if path.is_file() {
            let text = fs::read_to_string(path)?;
            RegionSpec::parse_named(&text, arg)
        } else {
            RegionSpec::parse_named(arg, "<inline>")
        }
    }

    pub fn parse(text: &str) -> Result<RegionSpec, CliError> {
        RegionSpec::parse_named(text, "<inline>")
    }

    fn parse_named(text: &str, origin: &str) -> Result<RegionSpec, CliError> {
        let spec = if text.trim_start().starts_with('{') {
            serde_json::from_str::<RegionSpec>(text).map_err(|e| CliError::Spec {
                origin: origin.to_owned(),
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?
        } else {
            match toml::from_str::<RegionSpec>(text) {
                Ok(s) => s,
                Err(e) => {
                    let wrapped = format!("spec = {{ {} }}", text.trim());
                    match toml::from_str::<Wrapped>(&wrapped) {
                        Ok(w) if !text.contains('\n') => w.spec,
                        _ => {
                            let (line, column) =
                                e.span().map_or((1, 1), |s| position(text, s.start));
                            return Err(CliError::Spec {
                                origin: origin.to_owned(),
                                line,
                                column,
                                message: e.message().to_owned(),
                            });
                        }
                    }
                }
            }
        };
        spec.check_generators(text, origin)?;
        Ok(spec)
    }

    fn check_generators(&self, text: &str, origin: &str) -> Result<(), CliError> {
        for g in &self.gens {
            if let Err(e) = g.parse::<Monomial>() {
                let inner = match e {
                    trireg_core::ParseMonomialError::Empty => 1,
                    trireg_core::ParseMonomialError::Unexpected { column, .. }
                    | trireg_core::ParseMonomialError::OutOfOrder { column, .. }
                    | trireg_core::ParseMonomialError::MissingExponent { column }
                    | trireg_core::ParseMonomialError::ExponentOverflow { column } => column,
                };
                let quoted = format!("\"{g}\"");
                let (line, column) = match text.find(&quoted) {
                    Some(at) => position(text, at + inner),
                    None => (1, inner),
                };
                return Err(CliError::Spec {
                    origin: origin.to_owned(),
                    line,
                    column,
                    message: format!("generator {g:?}: {e}"),
                });
            }
        }
        Ok(())
    }

    pub fn generators(&self) -> Vec<Monomial> {
        self.gens
            .iter()
            .map(|g| g.parse().expect("checked on load"))
            .collect()
    }

    pub fn region(&self) -> Result<TriangularRegion, CliError> {
        if self.d == 0 {
            return Err(CliError::Input("d must be at least 1".into()));
        }
        Ok(TriangularRegion::new(
            self.d,
            Ideal::minimalize(self.generators()),
        )?)
    }

    pub fn of_region(region: &TriangularRegion) -> RegionSpec {
        RegionSpec {
            d: region.d(),
            gens: region
                .ideal()
                .generators()
                .iter()
                .map(|g| g.to_string())
                .collect(),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("spec serializes")
    }
}
