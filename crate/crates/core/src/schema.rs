//! JSON description of a two-component degeneration.
//!
//! ```json
//! {"k3": {"gram": [[4]], "classes": ["h"], "polarization": [1]},
//!  "Y1": {"base": "P3", "centers": []},
//!  "Y2": {"base": "P3", "centers": [[8]]}}
//! ```
//!
//! Bases are catalog ids of Picard-rank-one families. Centers are listed in
//! blow-up order as coordinate vectors in the K3 basis.

use serde::{Deserialize, Serialize};

use crate::catalog::Catalog;
use crate::component::build_component;
use crate::error::{Error, Result};
use crate::smoothing::NormalCrossingModel;
use crate::surface::{CurveClass, K3Model};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub base: String,
    #[serde(default)]
    pub centers: Vec<CurveClass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegenerationSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub k3: K3Model,
    #[serde(rename = "Y1")]
    pub y1: ComponentSpec,
    #[serde(rename = "Y2")]
    pub y2: ComponentSpec,
}

impl DegenerationSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            let full = e.to_string();
            let message = full.split(" at line ").next().unwrap_or(&full).to_string();
            Error::Schema { location: format!("line {} column {}", e.line(), e.column()), message }
        })
    }

    /// Builds the model, resolving bases in `catalog`. Errors carry the JSON
    /// path of the offending field.
    pub fn build(&self, catalog: &Catalog) -> Result<NormalCrossingModel> {
        let side = |name: &str, spec: &ComponentSpec| {
            let family = catalog
                .get(&spec.base)
                .map_err(|e| Error::Schema { location: format!("{name}.base"), message: e.to_string() })?;
            let base = family
                .to_base()
                .map_err(|e| Error::Schema { location: format!("{name}.base"), message: e.to_string() })?;
            for (i, c) in spec.centers.iter().enumerate() {
                if c.class.len() != self.k3.rank() {
                    return Err(Error::Schema {
                        location: format!("{name}.centers[{i}]"),
                        message: format!("expected {} coordinates, found {}", self.k3.rank(), c.class.len()),
                    });
                }
                self.k3
                    .validate_curve(c)
                    .map_err(|e| Error::Schema { location: format!("{name}.centers[{i}]"), message: e.to_string() })?;
            }
            build_component(&base, &self.k3, &spec.centers)
                .map_err(|e| Error::Schema { location: name.to_string(), message: e.to_string() })
        };
        Ok(NormalCrossingModel::new(side("Y1", &self.y1)?, side("Y2", &self.y2)?))
    }

    /// Inverse of [`DegenerationSpec::build`].
    pub fn from_model(model: &NormalCrossingModel) -> Result<Self> {
        let k3 = model.k3()?.clone();
        let side = |y: &crate::component::BlownComponent| ComponentSpec {
            base: y.base().name.clone(),
            centers: y.centers().to_vec(),
        };
        Ok(DegenerationSpec { description: None, k3, y1: side(model.y1()), y2: side(model.y2()) })
    }
}
