use serde_json::Value;

use super::face_data::FaceData;
use super::hyperplane::{enumerate_faces, EnumerationOptions, Hyperplane, HyperplaneArrangement};
use super::periodic::{periodic_quotient, Family, PeriodicModel, PeriodicOptions};
use super::sphere::{sphere_faces, SphereModel};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::rational::{self, Rational};

/// A model read from its JSON description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Model {
    Hyperplane(HyperplaneArrangement),
    Sphere(SphereModel),
    Periodic(PeriodicModel),
}

#[derive(Clone, Debug, Default)]
pub struct BuildOptions {
    pub enumeration: EnumerationOptions,
    pub window: PeriodicOptions,
}

fn schema(msg: impl Into<String>) -> Error {
    Error::InvalidModel(msg.into())
}

impl Model {
    pub fn from_json_str(s: &str) -> Result<Model> {
        let v: Value = serde_json::from_str(s).map_err(|e| schema(format!("malformed JSON: {e}")))?;
        Model::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<Model> {
        let obj = v.as_object().ok_or_else(|| schema("model must be a JSON object"))?;
        for key in obj.keys() {
            if !["model", "dim", "hyperplanes", "families", "schema_version", "name"].contains(&key.as_str()) {
                return Err(schema(format!("unknown field {key:?}")));
            }
        }
        let kind = obj
            .get("model")
            .and_then(Value::as_str)
            .ok_or_else(|| schema("missing string field \"model\""))?;
        let dim = obj
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| schema("missing non-negative integer field \"dim\""))? as usize;
        let list = |key: &str| -> Result<&Vec<Value>> {
            obj.get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| schema(format!("missing array field {key:?}")))
        };
        match kind {
            "hyperplane" | "sphere" => {
                let hs = list("hyperplanes")?
                    .iter()
                    .enumerate()
                    .map(|(i, h)| parse_hyperplane(i, h))
                    .collect::<Result<Vec<_>>>()?;
                let a = HyperplaneArrangement::new(dim, hs)?;
                if kind == "hyperplane" {
                    Ok(Model::Hyperplane(a))
                } else {
                    Ok(Model::Sphere(SphereModel::new(a)?))
                }
            }
            "periodic" => {
                let fs = list("families")?
                    .iter()
                    .enumerate()
                    .map(|(i, f)| {
                        let h = parse_hyperplane(i, f)?;
                        let normal = h
                            .normal
                            .iter()
                            .map(|r| {
                                if r.is_integer() {
                                    i64::try_from(r.to_integer()).map_err(|_| schema("normal entry too large"))
                                } else {
                                    Err(schema(format!("family {i} needs an integer normal")))
                                }
                            })
                            .collect::<Result<Vec<_>>>()?;
                        Ok(Family { normal, offset: h.offset })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Model::Periodic(PeriodicModel::new(dim, fs)?))
            }
            other => Err(schema(format!("unknown model kind {other:?}"))),
        }
    }

    pub fn build(&self, options: &BuildOptions, strategy: Strategy) -> Result<FaceData> {
        match self {
            Model::Hyperplane(a) => enumerate_faces(a, &options.enumeration, strategy),
            Model::Sphere(s) => sphere_faces(s, &options.enumeration, strategy),
            Model::Periodic(p) => periodic_quotient(p, &options.window, strategy),
        }
    }
}

fn parse_hyperplane(i: usize, v: &Value) -> Result<Hyperplane> {
    let obj = v.as_object().ok_or_else(|| schema(format!("entry {i} must be an object")))?;
    for key in obj.keys() {
        if key != "normal" && key != "offset" {
            return Err(schema(format!("entry {i}: unknown field {key:?}")));
        }
    }
    let normal = obj
        .get("normal")
        .and_then(Value::as_array)
        .ok_or_else(|| schema(format!("entry {i}: missing array \"normal\"")))?
        .iter()
        .map(|x| rational::from_json(x).ok_or_else(|| schema(format!("entry {i}: bad rational in normal"))))
        .collect::<Result<Vec<Rational>>>()?;
    let offset = match obj.get("offset") {
        None => Rational::from_integer(0.into()),
        Some(x) => rational::from_json(x).ok_or_else(|| schema(format!("entry {i}: bad rational offset")))?,
    };
    Ok(Hyperplane::new(normal, offset))
}

impl PeriodicModel {
    pub fn from_json_str(s: &str) -> Result<PeriodicModel> {
        match Model::from_json_str(s)? {
            Model::Periodic(p) => Ok(p),
            _ => Err(schema("expected a periodic model")),
        }
    }
}

impl HyperplaneArrangement {
    pub fn from_json_str(s: &str) -> Result<HyperplaneArrangement> {
        match Model::from_json_str(s)? {
            Model::Hyperplane(a) => Ok(a),
            _ => Err(schema("expected a hyperplane model")),
        }
    }
}

impl SphereModel {
    pub fn from_json_str(s: &str) -> Result<SphereModel> {
        match Model::from_json_str(s)? {
            Model::Sphere(m) => Ok(m),
            _ => Err(schema("expected a sphere model")),
        }
    }
}
