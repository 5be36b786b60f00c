//! The polytope document format shared by every tool.
//!
//! A document is a JSON object `{"name": …, "ambient_dim": …, "vertices":
//! [[…], …]}` with an optional `"expect"` block holding precomputed
//! Ehrhart data for regression checking. Coordinates are exact integers of
//! any size: values whose magnitude is below 2^53 are written as JSON
//! numbers, anything larger as decimal strings, and parsing refuses any
//! number a double would have rounded.

use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::polytope::LatticePolytope;
use crate::vector::LatticeVector;

/// Largest magnitude written as a plain JSON number; 2^53, the point where
/// doubles stop being exact.
const MAX_PLAIN: i64 = 1 << 53;

/// Precomputed values a document may carry for regression checking.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expectations {
    pub h_star: Option<Vec<BigInt>>,
    pub degree: Option<usize>,
    pub normalized_volume: Option<BigInt>,
    pub gorenstein: Option<bool>,
}

impl Expectations {
    pub fn is_empty(&self) -> bool {
        self.h_star.is_none()
            && self.degree.is_none()
            && self.normalized_volume.is_none()
            && self.gorenstein.is_none()
    }
}

/// One parsed polytope document.
#[derive(Clone, Debug)]
pub struct PolytopeDocument {
    pub name: Option<String>,
    pub polytope: LatticePolytope,
    pub expect: Expectations,
}

fn parse_coord(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(Error::invalid(format!(
                    "coordinate {n} is not an exact integer; write big values as strings"
                )))
            }
        }
        Value::String(s) => BigInt::from_str(s.trim())
            .map_err(|_| Error::invalid(format!("coordinate string {s:?} is not an integer"))),
        other => Err(Error::invalid(format!(
            "coordinate must be an integer or a decimal string, got {other}"
        ))),
    }
}

fn parse_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|u| usize::try_from(u).ok())
        .ok_or_else(|| Error::invalid(format!("{what} must be a nonnegative integer")))
}

fn parse_expect(v: &Value) -> Result<Expectations> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::invalid("expect block must be an object"))?;
    let mut exp = Expectations::default();
    for (key, val) in obj {
        match key.as_str() {
            "h_star" => {
                let arr = val
                    .as_array()
                    .ok_or_else(|| Error::invalid("expect.h_star must be an array"))?;
                exp.h_star = Some(arr.iter().map(parse_coord).collect::<Result<_>>()?);
            }
            "degree" => exp.degree = Some(parse_usize(val, "expect.degree")?),
            "normalized_volume" => exp.normalized_volume = Some(parse_coord(val)?),
            "gorenstein" => {
                exp.gorenstein = Some(val.as_bool().ok_or_else(|| {
                    Error::invalid("expect.gorenstein must be a boolean")
                })?)
            }
            other => {
                return Err(Error::invalid(format!("unknown expect field {other:?}")));
            }
        }
    }
    Ok(exp)
}

/// Parse a polytope document from JSON text.
pub fn parse_polytope_document(text: &str) -> Result<PolytopeDocument> {
    let value: Value = serde_json::from_str(text)?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::invalid("polytope document must be a JSON object"))?;

    let name = match obj.get("name") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(Error::invalid("name must be a string")),
    };
    let ambient_dim = parse_usize(
        obj.get("ambient_dim")
            .ok_or_else(|| Error::invalid("missing ambient_dim"))?,
        "ambient_dim",
    )?;
    let raw = obj
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::invalid("missing vertices array"))?;

    let mut vertices = Vec::with_capacity(raw.len());
    for row in raw {
        let coords = row
            .as_array()
            .ok_or_else(|| Error::invalid("each vertex must be an array"))?;
        if coords.len() != ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                got: coords.len(),
            });
        }
        vertices.push(LatticeVector::new(
            coords.iter().map(parse_coord).collect::<Result<_>>()?,
        ));
    }
    if vertices.is_empty() {
        return Err(Error::invalid("vertices array is empty"));
    }

    let mut polytope = LatticePolytope::new(vertices)?;
    if let Some(n) = &name {
        polytope = polytope.with_name(n.clone());
    }
    let expect = match obj.get("expect") {
        None | Some(Value::Null) => Expectations::default(),
        Some(v) => parse_expect(v)?,
    };

    Ok(PolytopeDocument {
        name,
        polytope,
        expect,
    })
}

/// Encode one coordinate: a JSON number when a double would keep it exact,
/// a decimal string otherwise.
pub fn coord_to_value(x: &BigInt) -> Value {
    if let Ok(i) = i64::try_from(x.clone()) {
        if i.abs() < MAX_PLAIN {
            return Value::from(i);
        }
    }
    Value::from(x.to_string())
}

/// Vertices of a polytope as a JSON array of coordinate arrays.
pub fn vertices_to_value(p: &LatticePolytope) -> Value {
    Value::from(
        p.vertices()
            .iter()
            .map(|v| Value::from(v.coords().iter().map(coord_to_value).collect::<Vec<_>>()))
            .collect::<Vec<_>>(),
    )
}

/// Serialize a document to pretty JSON with a trailing newline.
pub fn document_to_json(doc: &PolytopeDocument) -> String {
    let mut obj = Map::new();
    if let Some(name) = &doc.name {
        obj.insert("name".into(), Value::from(name.clone()));
    }
    obj.insert(
        "ambient_dim".into(),
        Value::from(doc.polytope.ambient_dim() as u64),
    );
    obj.insert("vertices".into(), vertices_to_value(&doc.polytope));
    if !doc.expect.is_empty() {
        let mut e = Map::new();
        if let Some(h) = &doc.expect.h_star {
            e.insert(
                "h_star".into(),
                Value::from(h.iter().map(coord_to_value).collect::<Vec<_>>()),
            );
        }
        if let Some(d) = doc.expect.degree {
            e.insert("degree".into(), Value::from(d as u64));
        }
        if let Some(v) = &doc.expect.normalized_volume {
            e.insert("normalized_volume".into(), coord_to_value(v));
        }
        if let Some(g) = doc.expect.gorenstein {
            e.insert("gorenstein".into(), Value::from(g));
        }
        obj.insert("expect".into(), Value::from(e));
    }
    let mut out = serde_json::to_string_pretty(&Value::from(obj)).expect("serializing JSON map");
    out.push('\n');
    out
}

/// Read and parse a document file.
pub fn read_polytope_file(path: &Path) -> Result<PolytopeDocument> {
    let text = std::fs::read_to_string(path)?;
    parse_polytope_document(&text).map_err(|e| match e {
        Error::InvalidInput(msg) => {
            Error::InvalidInput(format!("{}: {msg}", path.display()))
        }
        other => other,
    })
}

/// Write a document file.
pub fn write_polytope_file(path: &Path, doc: &PolytopeDocument) -> Result<()> {
    std::fs::write(path, document_to_json(doc))?;
    Ok(())
}

/// Render an affine map as a JSON object with `matrix` and `translation`.
pub fn affine_map_to_value(map: &crate::affine::AffineLatticeMap) -> Value {
    let mut obj = Map::new();
    let rows: Vec<Value> = (0..map.output_dim())
        .map(|i| {
            Value::from(
                map.matrix()
                    .row(i)
                    .iter()
                    .map(coord_to_value)
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    obj.insert("matrix".into(), Value::from(rows));
    obj.insert(
        "translation".into(),
        Value::from(
            map.translation()
                .coords()
                .iter()
                .map(coord_to_value)
                .collect::<Vec<_>>(),
        ),
    );
    Value::from(obj)
}
