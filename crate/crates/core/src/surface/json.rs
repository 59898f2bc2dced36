//! Canonical JSON interchange for surfaces.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{make_surface, Gluing, Polygon, SurfaceError, TranslationSurface};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("malformed surface JSON: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("invalid surface: {0}")]
    Invalid(#[from] SurfaceError),
    #[error("declared field order {declared} does not contain coordinates of order {found}")]
    FieldOrder { declared: u32, found: u32 },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SurfaceJson {
    field_order: u32,
    polygons: Vec<Polygon>,
    gluings: Vec<Gluing>,
}

impl TranslationSurface {
    /// Compact JSON with a fixed key order and reduced fractions.
    pub fn to_json(&self) -> String {
        let doc = SurfaceJson {
            field_order: self.field_order,
            polygons: self.polygons.clone(),
            gluings: self.gluings.clone(),
        };
        serde_json::to_string(&doc).expect("surface serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<TranslationSurface, LoadError> {
        let doc: SurfaceJson = serde_json::from_str(text)?;
        for p in &doc.polygons {
            for v in p.vertices() {
                if doc.field_order == 0 || doc.field_order % v.order() != 0 {
                    return Err(LoadError::FieldOrder { declared: doc.field_order, found: v.order() });
                }
            }
        }
        let s = make_surface(doc.polygons, doc.gluings)?;
        Ok(if s.field_order() == doc.field_order { s } else { s.lift(doc.field_order) })
    }
}
