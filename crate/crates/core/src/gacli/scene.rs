//! Scene files: named conformal objects and versors in JSON.
//!
//! Multivectors are stored as maps from blade names to coefficients, e.g.
//! `{"e1": 1.0, "e0": 1.0, "einf": 0.5}`, or as expression strings. On
//! input, keys may be `1`, digit blades (`e13`, `e45`), `e0`, `einf`, or
//! outer products of those joined by `^` (`e1^einf`). Output always uses
//! digit blades of the orthonormal basis in grade order, so files written
//! by [`Scene::to_json`] read back and rewrite byte for byte.

use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use super::error::ExprError;
use super::eval::eval_str;
use crate::conformal::{classify_with, e0, einf, normalize_object, ConformalObject, ObjectKind};
use crate::error::Error;
use crate::mvcore::{render_order, BasisBlade, Multivector, Signature, Tolerance};
use crate::versor::{Mode, Versor};

#[derive(Debug, Error)]
pub enum SceneError {
    #[error("malformed scene: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{name}: bad blade key '{key}'")]
    Key { name: String, key: String },

    #[error("{name}: {source}")]
    Expr { name: String, source: ExprError },

    #[error("{name}: {source}")]
    Invalid { name: String, source: Error },

    #[error("name '{0}' is used by both an object and a versor")]
    Duplicate(String),

    #[error("bad tolerance: {0}")]
    Tolerance(String),
}

#[derive(Debug, Clone, Default)]
pub struct Scene {
    pub objects: BTreeMap<String, ConformalObject>,
    pub versors: BTreeMap<String, Versor>,
    /// Tolerance stored in the file, if any.
    pub tolerance: Option<Tolerance>,
}

impl Scene {
    pub fn lookup(&self, name: &str) -> Option<&Multivector> {
        self.objects
            .get(name)
            .map(|o| &o.mv)
            .or_else(|| self.versors.get(name).map(Versor::mv))
    }

    /// File tolerance (or the default) with `rel` replaced by `rel_override`.
    pub fn effective_tolerance(&self, rel_override: Option<f64>) -> Tolerance {
        let mut tol = self.tolerance.unwrap_or_default();
        if let Some(rel) = rel_override {
            tol.rel = rel;
        }
        tol
    }

    /// Parses and validates a scene. Objects must classify and versors must
    /// pass the versor checks under the effective tolerance.
    pub fn from_json(text: &str, rel_override: Option<f64>) -> Result<Scene, SceneError> {
        let raw: RawScene = serde_json::from_str(text)?;
        let tolerance = match raw.tolerance {
            None => None,
            Some(t) => {
                let d = Tolerance::DEFAULT;
                let tol = Tolerance {
                    abs: t.abs.unwrap_or(d.abs),
                    rel: t.rel.unwrap_or(d.rel),
                };
                if !(tol.abs.is_finite() && tol.abs >= 0.0 && tol.rel.is_finite() && tol.rel >= 0.0)
                {
                    return Err(SceneError::Tolerance(format!("{tol:?}")));
                }
                Some(tol)
            }
        };
        let mut scene = Scene {
            tolerance,
            ..Scene::default()
        };
        let tol = scene.effective_tolerance(rel_override);
        let empty = Scene::default();
        for (name, value) in raw.versors {
            let mv = value.resolve(&name, &empty, &tol)?;
            let v = Versor::with_tolerance(mv, &tol).map_err(|source| SceneError::Invalid {
                name: name.clone(),
                source,
            })?;
            scene.versors.insert(name, v);
        }
        for (name, value) in raw.objects {
            if scene.versors.contains_key(&name) {
                return Err(SceneError::Duplicate(name));
            }
            let mv = value.resolve(&name, &empty, &tol)?;
            let obj = classify_with(&mv, &tol).map_err(|source| SceneError::Invalid {
                name: name.clone(),
                source,
            })?;
            scene.objects.insert(name, obj);
        }
        Ok(scene)
    }

    /// Applies `v` in `mode` to the objects named in `only` (all objects if
    /// empty). Images are reclassified; points are rescaled to unit `e0`
    /// weight. Versors are left unchanged.
    pub fn transform(
        &mut self,
        v: &Versor,
        mode: Mode,
        only: &[String],
        tol: &Tolerance,
    ) -> Result<(), SceneError> {
        for (name, obj) in self.objects.iter_mut() {
            if !only.is_empty() && !only.contains(name) {
                continue;
            }
            let invalid = |source| SceneError::Invalid {
                name: name.clone(),
                source,
            };
            let image = v.apply(&obj.mv, mode).map_err(invalid)?;
            let mut next = classify_with(&image, tol).map_err(invalid)?;
            if next.kind == ObjectKind::Point {
                next = classify_with(&normalize_object(&image), tol).map_err(invalid)?;
            }
            *obj = next;
        }
        Ok(())
    }

    /// Canonical pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let file = SceneFile {
            objects: self
                .objects
                .iter()
                .map(|(k, o)| (k.as_str(), BladeMap(&o.mv)))
                .collect(),
            versors: self
                .versors
                .iter()
                .map(|(k, v)| (k.as_str(), BladeMap(v.mv())))
                .collect(),
            tolerance: self.tolerance.map(|t| ToleranceFile {
                abs: Some(t.abs),
                rel: Some(t.rel),
            }),
        };
        let mut s = serde_json::to_string_pretty(&file).expect("scene serializes");
        s.push('\n');
        s
    }
}

/// Serializes a multivector as a blade map in grade order, zeros omitted.
pub struct BladeMap<'a>(pub &'a Multivector);

impl Serialize for BladeMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        for b in render_order(self.0.sig()) {
            let c = self.0.coeff(b);
            if c != 0.0 {
                m.serialize_entry(&b.to_string(), &c)?;
            }
        }
        m.end()
    }
}

#[derive(Serialize)]
struct SceneFile<'a> {
    objects: BTreeMap<&'a str, BladeMap<'a>>,
    versors: BTreeMap<&'a str, BladeMap<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tolerance: Option<ToleranceFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ToleranceFile {
    abs: Option<f64>,
    rel: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScene {
    #[serde(default)]
    objects: BTreeMap<String, RawValue>,
    #[serde(default)]
    versors: BTreeMap<String, RawValue>,
    tolerance: Option<ToleranceFile>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawValue {
    Expr(String),
    Map(BTreeMap<String, f64>),
}

impl RawValue {
    fn resolve(
        self,
        name: &str,
        scene: &Scene,
        tol: &Tolerance,
    ) -> Result<Multivector, SceneError> {
        match self {
            RawValue::Expr(src) => eval_str(&src, scene, tol).map_err(|source| SceneError::Expr {
                name: name.to_string(),
                source,
            }),
            RawValue::Map(map) => {
                let mut out = Multivector::zero(Signature::CGA);
                for (key, c) in map {
                    let blade = parse_key(&key).ok_or_else(|| SceneError::Key {
                        name: name.to_string(),
                        key: key.clone(),
                    })?;
                    out += &blade.scale(c);
                }
                Ok(out)
            }
        }
    }
}

/// Blade-map key: `^`-joined factors among `1`, digit blades, `e0`, `einf`.
pub fn parse_key(key: &str) -> Option<Multivector> {
    let sig = Signature::CGA;
    let mut out = Multivector::one(sig);
    for factor in key.split('^') {
        let f = match factor.trim() {
            "e0" => e0(),
            "einf" => einf(),
            other => Multivector::blade(sig, BasisBlade::parse(other, sig)?, 1.0),
        };
        out = out ^ f;
    }
    Some(out)
}
