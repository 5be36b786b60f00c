//! JSON rendering for command output.
//!
//! Everything here goes through serde_json's default map type, which keeps
//! keys sorted, so identical inputs serialize to identical bytes.

use cayleykit::affine::AffineLatticeMap;
use cayleykit::cayley::CayleyDecomposition;
use cayleykit::ehrhart::HStarData;
use cayleykit::gorenstein::GorensteinCertificate;
use cayleykit::io::{affine_map_to_value, coord_to_value, vertices_to_value};
use cayleykit::polytope::LatticePolytope;
use cayleykit::vector::LatticeVector;
use serde_json::{Map, Value};

pub fn polytope_to_value(p: &LatticePolytope) -> Value {
    let mut obj = Map::new();
    if let Some(name) = p.name() {
        obj.insert("name".into(), Value::from(name));
    }
    obj.insert("ambient_dim".into(), Value::from(p.ambient_dim() as u64));
    obj.insert("vertices".into(), vertices_to_value(p));
    Value::from(obj)
}

pub fn vector_to_value(v: &LatticeVector) -> Value {
    Value::from(v.coords().iter().map(coord_to_value).collect::<Vec<_>>())
}

pub fn h_star_to_value(name: Option<&str>, n: usize, hs: &HStarData) -> Value {
    let mut obj = Map::new();
    if let Some(name) = name {
        obj.insert("name".into(), Value::from(name));
    }
    obj.insert("ambient_dim".into(), Value::from(n as u64));
    obj.insert(
        "h_star".into(),
        Value::from(hs.coefficients().iter().map(coord_to_value).collect::<Vec<_>>()),
    );
    obj.insert("degree".into(), Value::from(hs.degree() as u64));
    obj.insert("codegree".into(), Value::from(hs.codegree() as u64));
    obj.insert("k".into(), coord_to_value(hs.leading()));
    obj.insert(
        "normalized_volume".into(),
        coord_to_value(&hs.normalized_volume()),
    );
    obj.insert("gorenstein".into(), Value::from(hs.is_palindromic()));
    Value::from(obj)
}

pub fn decomposition_to_value(dec: &CayleyDecomposition) -> Value {
    let mut obj = Map::new();
    obj.insert("q".into(), Value::from(dec.q() as u64));
    obj.insert("s".into(), Value::from(dec.s() as u64));
    obj.insert(
        "factors".into(),
        Value::from(
            dec.factors()
                .iter()
                .map(polytope_to_value)
                .collect::<Vec<_>>(),
        ),
    );
    obj.insert("projection".into(), affine_map_to_value(dec.projection()));
    obj.insert("witness".into(), affine_map_to_value(dec.witness()));
    obj.insert(
        "bounds".into(),
        serde_json::to_value(dec.bounds()).expect("bound checks serialize"),
    );
    Value::from(obj)
}

pub fn certificate_to_value(
    cert: &GorensteinCertificate,
    double_dual_map: &AffineLatticeMap,
) -> Value {
    let mut obj = Map::new();
    obj.insert("index".into(), Value::from(cert.index() as u64));
    obj.insert("degree".into(), Value::from(cert.degree() as u64));
    obj.insert(
        "unique_interior_point".into(),
        vector_to_value(cert.unique_interior_point()),
    );
    obj.insert("dual".into(), polytope_to_value(cert.dual()));
    obj.insert("embedding".into(), affine_map_to_value(cert.embedding()));
    obj.insert(
        "double_dual_map".into(),
        affine_map_to_value(double_dual_map),
    );
    Value::from(obj)
}

pub fn print_value(v: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("serializing report")
    );
}
