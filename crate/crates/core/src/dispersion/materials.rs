use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use super::medium::{DispersiveMedium, MaterialModel};
use super::sellmeier::Sellmeier;
use crate::{Error, Result};

/// On-disk material description:
/// `{ "name": ..., "sellmeier": { "B": [...], "C_um2": [...], "range_nm": [a, b] } }`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialFile {
    pub name: String,
    pub sellmeier: SellmeierFile,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SellmeierFile {
    #[serde(rename = "B")]
    pub b: Vec<f64>,
    #[serde(rename = "C_um2")]
    pub c_um2: Vec<f64>,
    pub range_nm: [f64; 2],
}

/// Named Sellmeier materials, looked up case-insensitively.
#[derive(Clone, Debug)]
pub struct MaterialLibrary {
    materials: BTreeMap<String, Sellmeier>,
}

impl Default for MaterialLibrary {
    fn default() -> Self {
        Self::builtin()
    }
}

impl MaterialLibrary {
    /// Water, N-BK7 and ZnSe.
    pub fn builtin() -> Self {
        let mut materials = BTreeMap::new();
        materials.insert(
            "water".to_string(),
            Sellmeier {
                source: "water 20 °C, 4-term Sellmeier (Daimon & Masumura 2007)".into(),
                b: vec![5.684027565e-1, 1.726177391e-1, 2.086189578e-2, 1.130748688e-1],
                c_um2: vec![5.101829712e-3, 1.821153936e-2, 2.620722293e-2, 1.069792721e1],
                range_nm: (182.0, 1129.0),
            },
        );
        materials.insert(
            "bk7".to_string(),
            Sellmeier {
                source: "N-BK7, Schott catalog 3-term Sellmeier".into(),
                b: vec![1.03961212, 0.231792344, 1.01046945],
                c_um2: vec![0.00600069867, 0.0200179144, 103.560653],
                range_nm: (300.0, 2500.0),
            },
        );
        materials.insert(
            "znse".to_string(),
            Sellmeier {
                source: "ZnSe, 3-term Sellmeier (Connolly et al. 1979)".into(),
                b: vec![4.2980149, 0.62776557, 2.8955633],
                c_um2: vec![
                    0.1920630 * 0.1920630,
                    0.37878260 * 0.37878260,
                    46.994595 * 46.994595,
                ],
                range_nm: (540.0, 18200.0),
            },
        );
        materials.insert(
            "znse-tatian".to_string(),
            Sellmeier {
                source: "ZnSe, 3-term Sellmeier (Tatian 1984)".into(),
                b: vec![4.45813734, 0.467216334, 2.89566290],
                c_um2: vec![
                    0.200859853 * 0.200859853,
                    0.391371166 * 0.391371166,
                    47.1362108 * 47.1362108,
                ],
                range_nm: (550.0, 18000.0),
            },
        );
        Self { materials }
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.materials.keys().map(String::as_str)
    }

    pub fn get(&self, name: &str) -> Option<&Sellmeier> {
        let key = name.to_ascii_lowercase();
        let key = match key.as_str() {
            "n-bk7" => "bk7",
            "h2o" => "water",
            other => other,
        };
        self.materials.get(key)
    }

    pub fn insert(&mut self, name: &str, model: Sellmeier) -> Result<()> {
        model.validate()?;
        self.materials.insert(name.to_ascii_lowercase(), model);
        Ok(())
    }

    /// Adds the material described by a JSON file and returns its name.
    pub fn load_json(&mut self, path: impl AsRef<Path>) -> Result<String> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let file: MaterialFile = serde_json::from_str(&text)
            .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        let model = Sellmeier {
            source: format!("custom material file {}", path.display()),
            b: file.sellmeier.b,
            c_um2: file.sellmeier.c_um2,
            range_nm: (file.sellmeier.range_nm[0], file.sellmeier.range_nm[1]),
        };
        model
            .validate()
            .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        self.insert(&file.name, model)?;
        Ok(file.name)
    }

    /// A slab of the named material.
    pub fn medium(&self, name: &str, thickness_mm: f64) -> Result<DispersiveMedium> {
        let model = self.get(name).ok_or_else(|| {
            Error::Input(format!(
                "unknown material '{name}' (known: {})",
                self.names().collect::<Vec<_>>().join(", ")
            ))
        })?;
        DispersiveMedium::new(name, thickness_mm, MaterialModel::Sellmeier(model.clone()))
    }
}
