//! JSON documents for quivers, representations and root vectors.
//!
//! Every `*_to_json` output parses back to an equal value.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::{Field, FieldTag, Matrix, PrimeField, Rationals};
use crate::quiver::{Arrow, Multiplicity, Orientation, QuiverSpec, RaySpec};
use crate::rep::{AnyRepresentation, Representation, Window};
use crate::roots::RootVector;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverDoc {
    name: String,
    vertices: Vec<String>,
    #[serde(default)]
    arrows: Vec<(String, String, String)>,
    #[serde(default)]
    rays: Vec<RayDoc>,
    #[serde(default)]
    multiplicity: BTreeMap<String, MultiplicityDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RayDoc {
    id: String,
    attach: String,
    #[serde(default)]
    prefix: String,
    tail: String,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum MultiplicityDoc {
    One,
    Omega,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum QuiverRef {
    Path(String),
    Inline(QuiverDoc),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepDoc {
    quiver: QuiverRef,
    field: String,
    #[serde(default)]
    dims: BTreeMap<String, usize>,
    #[serde(default)]
    maps: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    window_depth: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    window: Option<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RootDoc {
    #[serde(default)]
    values: BTreeMap<String, i64>,
    #[serde(default)]
    tails: BTreeMap<String, i64>,
}

fn orientation(s: char, key: &str) -> Result<Orientation> {
    Orientation::from_char(s).ok_or_else(|| Error::Schema(format!("{key}: expected \"o\" or \"i\", got {s:?}")))
}

fn spec_from_doc(doc: QuiverDoc) -> Result<QuiverSpec> {
    let arrows = doc.arrows.into_iter().map(|(id, source, target)| Arrow { id, source, target }).collect();
    let mut rays = Vec::with_capacity(doc.rays.len());
    for (j, r) in doc.rays.into_iter().enumerate() {
        let prefix =
            r.prefix.chars().map(|c| orientation(c, &format!("rays[{j}].prefix"))).collect::<Result<Vec<_>>>()?;
        let mut tail = r.tail.chars();
        let tail = match (tail.next(), tail.next()) {
            (Some(c), None) => orientation(c, &format!("rays[{j}].tail"))?,
            _ => return Err(Error::Schema(format!("rays[{j}].tail: expected \"o\" or \"i\", got {:?}", r.tail))),
        };
        rays.push(RaySpec { id: r.id, attach: r.attach, prefix, tail });
    }
    let mult = doc
        .multiplicity
        .into_iter()
        .map(|(k, m)| (k, if matches!(m, MultiplicityDoc::Omega) { Multiplicity::Omega } else { Multiplicity::One }))
        .collect();
    QuiverSpec::from_parts(&doc.name, doc.vertices, arrows, rays, mult).validate()
}

fn doc_from_spec(spec: &QuiverSpec) -> QuiverDoc {
    QuiverDoc {
        name: spec.name.clone(),
        vertices: spec.vertices.clone(),
        arrows: spec.arrows.iter().map(|a| (a.id.clone(), a.source.clone(), a.target.clone())).collect(),
        rays: spec
            .rays
            .iter()
            .map(|r| RayDoc {
                id: r.id.clone(),
                attach: r.attach.clone(),
                prefix: r.prefix.iter().map(|o| o.as_char()).collect(),
                tail: r.tail.as_char().to_string(),
            })
            .collect(),
        multiplicity: spec
            .multiplicity
            .iter()
            .map(|(k, m)| {
                (k.clone(), if *m == Multiplicity::Omega { MultiplicityDoc::Omega } else { MultiplicityDoc::One })
            })
            .collect(),
    }
}

pub fn parse_quiver(text: &str) -> Result<QuiverSpec> {
    spec_from_doc(serde_json::from_str(text)?)
}

pub fn quiver_to_json(spec: &QuiverSpec) -> Value {
    serde_json::to_value(doc_from_spec(spec)).expect("quiver documents serialize")
}

pub fn read_quiver(path: &Path) -> Result<QuiverSpec> {
    parse_quiver(&read(path)?)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn parse_root(spec: &Arc<QuiverSpec>, text: &str) -> Result<RootVector> {
    let doc: RootDoc = serde_json::from_str(text)?;
    RootVector::new(spec.clone(), doc.values, doc.tails)
}

pub fn root_to_json(n: &RootVector) -> Value {
    let doc = RootDoc { values: n.values().clone(), tails: n.tails().clone() };
    serde_json::to_value(doc).expect("root documents serialize")
}

pub fn read_root(spec: &Arc<QuiverSpec>, path: &Path) -> Result<RootVector> {
    parse_root(spec, &read(path)?)
}

/// Parse a representation document; a quiver given as a path is resolved
/// against `base`.
pub fn parse_rep(text: &str, base: Option<&Path>) -> Result<AnyRepresentation> {
    let doc: RepDoc = serde_json::from_str(text)?;
    let spec = Arc::new(match doc.quiver {
        QuiverRef::Inline(q) => spec_from_doc(q)?,
        QuiverRef::Path(p) => {
            let path = base.map_or_else(|| Path::new(&p).to_path_buf(), |b| b.join(&p));
            read_quiver(&path)?
        }
    });
    let window = match &doc.window {
        Some(vs) => Window::on(spec.clone(), vs.iter().cloned())?,
        None => Window::full(spec.clone(), doc.window_depth),
    };
    match doc.field.parse::<FieldTag>()? {
        FieldTag::Rational => Ok(build_rep(&Rationals, window, &doc.dims, &doc.maps)?.into()),
        FieldTag::Prime(p) => Ok(build_rep(&PrimeField::new(p)?, window, &doc.dims, &doc.maps)?.into()),
    }
}

pub fn read_rep(path: &Path) -> Result<AnyRepresentation> {
    parse_rep(&read(path)?, path.parent())
}

fn build_rep<K: Field>(
    field: &K,
    window: Arc<Window>,
    dims: &BTreeMap<String, usize>,
    maps: &BTreeMap<String, Vec<String>>,
) -> Result<Representation<K>> {
    for v in dims.keys() {
        if !window.contains(v) {
            return Err(Error::UnknownVertex(v.clone()));
        }
    }
    let dim = |v: &str| dims.get(v).copied().unwrap_or(0);
    let mut matrices = BTreeMap::new();
    for (id, entries) in maps {
        let a = window.arrow_index(id).ok_or_else(|| Error::UnknownArrow(id.clone()))?;
        let a = &window.arrows()[a];
        let (s, t) = (&window.vertices()[a.source], &window.vertices()[a.target]);
        let m = Matrix::from_strings(field, dim(t), dim(s), entries).map_err(|e| match e {
            Error::ShapeMismatch(msg) => Error::ShapeMismatch(format!("maps.{id}: {msg}")),
            other => other,
        })?;
        matrices.insert(id.clone(), m);
    }
    Representation::from_named(field, window, dims, &matrices)
}

pub fn rep_to_json<K: Field>(v: &Representation<K>) -> Value {
    let w = v.window();
    let full = w.full_depth();
    let doc = RepDoc {
        quiver: QuiverRef::Inline(doc_from_spec(w.spec())),
        field: v.field().tag().to_string(),
        dims: v.dims_named(),
        maps: w
            .arrows()
            .iter()
            .zip(v.maps())
            .filter(|(_, m)| m.rows() > 0 && m.cols() > 0)
            .map(|(a, m)| (a.id.clone(), m.to_strings()))
            .collect(),
        window_depth: full.unwrap_or(0),
        window: if full.is_some() { None } else { Some(w.vertices().to_vec()) },
    };
    serde_json::to_value(doc).expect("representation documents serialize")
}

pub fn any_rep_to_json(v: &AnyRepresentation) -> Value {
    match v {
        AnyRepresentation::Rational(r) => rep_to_json(r),
        AnyRepresentation::Prime(r) => rep_to_json(r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A2: &str = r#"{"name":"A2","vertices":["1","2"],"arrows":[["a","1","2"]]}"#;

    #[test]
    fn minimal_quiver() {
        let s = parse_quiver(A2).unwrap();
        assert_eq!(s.vertices, vec!["1", "2"]);
        assert_eq!(parse_quiver(&quiver_to_json(&s).to_string()).unwrap(), s);
    }

    #[test]
    fn quiver_diagnostics() {
        let bad_tail = r#"{"name":"A","vertices":["0"],"rays":[{"id":"r","attach":"0","tail":"x"}]}"#;
        let e = parse_quiver(bad_tail).unwrap_err();
        assert_eq!(e.code(), "schema");
        assert!(e.to_string().contains("tail"));
        let dup = r#"{"name":"A","vertices":["0","0"]}"#;
        assert_eq!(parse_quiver(dup).unwrap_err().code(), "duplicate-id");
        let extra = r#"{"name":"A","vertices":["0"],"colour":"red"}"#;
        let e = parse_quiver(extra).unwrap_err();
        assert_eq!(e.code(), "schema");
        assert!(e.to_string().contains("colour"));
        assert_eq!(parse_quiver("{").unwrap_err().code(), "json");
    }

    #[test]
    fn rays_and_omega_round_trip() {
        let text = r#"{"name":"X","vertices":["0","p","q"],"arrows":[["a","p","q"]],
            "rays":[{"id":"r","attach":"0","prefix":"iio","tail":"o"}],"multiplicity":{"q":"omega"}}"#;
        let s = parse_quiver(text).unwrap();
        assert_eq!(s.rays[0].prefix, vec![Orientation::In, Orientation::In]);
        assert_eq!(s.multiplicity.get("p"), Some(&Multiplicity::Omega));
        assert_eq!(parse_quiver(&quiver_to_json(&s).to_string()).unwrap(), s);
    }

    #[test]
    fn rep_round_trip() {
        let text = format!(r#"{{"quiver":{A2},"field":"Q","dims":{{"1":2,"2":1}},"maps":{{"a":["1/2","-3"]}}}}"#);
        let v = parse_rep(&text, None).unwrap();
        assert_eq!(v.dims(), &[2, 1]);
        let again = parse_rep(&any_rep_to_json(&v).to_string(), None).unwrap();
        assert_eq!(again, v);
        let f5 = format!(r#"{{"quiver":{A2},"field":"F5","dims":{{"1":1,"2":1}},"maps":{{"a":["3 mod 5"]}}}}"#);
        let v = parse_rep(&f5, None).unwrap();
        assert_eq!(parse_rep(&any_rep_to_json(&v).to_string(), None).unwrap(), v);
        let bad = format!(r#"{{"quiver":{A2},"field":"F4","dims":{{}}}}"#);
        assert!(parse_rep(&bad, None).unwrap_err().is_input_error());
        let short = format!(r#"{{"quiver":{A2},"field":"Q","dims":{{"1":2,"2":1}},"maps":{{"a":["1"]}}}}"#);
        assert_eq!(parse_rep(&short, None).unwrap_err().code(), "shape-mismatch");
    }

    #[test]
    fn root_round_trip() {
        let s = Arc::new(
            parse_quiver(r#"{"name":"A","vertices":["0"],"rays":[{"id":"r","attach":"0","tail":"o"}]}"#).unwrap(),
        );
        let n = parse_root(&s, r#"{"values":{"0":1,"r#1":2},"tails":{"r":1}}"#).unwrap();
        assert_eq!(parse_root(&s, &root_to_json(&n).to_string()).unwrap(), n);
    }
}
