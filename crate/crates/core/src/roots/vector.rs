use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quiver::{Multiplicity, QuiverSpec, VertexRef};

/// An element of the root space: integer labels that are eventually
/// constant along every ray.
///
/// Stored normalized: core labels only when nonzero; along each ray every
/// label up to the last one that differs from the tail, zeros included.
/// Labels on a multiplicity-ω component describe every copy at once and must
/// be a single constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootVector {
    spec: Arc<QuiverSpec>,
    values: BTreeMap<String, i64>,
    tails: BTreeMap<String, i64>,
}

impl RootVector {
    pub fn new(spec: Arc<QuiverSpec>, values: BTreeMap<String, i64>, tails: BTreeMap<String, i64>) -> Result<Self> {
        let mut core = BTreeMap::new();
        let mut per_ray: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); spec.rays.len()];
        for (v, &x) in &values {
            match spec.parse_vertex(v)? {
                VertexRef::Core(_) => {
                    if x != 0 {
                        core.insert(v.clone(), x);
                    }
                }
                VertexRef::Ray(r, d) => {
                    per_ray[r].insert(d, x);
                }
            }
        }
        for r in tails.keys() {
            spec.ray_index(r)?;
        }
        let mut out_values = core;
        let mut out_tails = BTreeMap::new();
        for (r, ray) in spec.rays.iter().enumerate() {
            let tail = tails.get(&ray.id).copied().unwrap_or(0);
            out_tails.insert(ray.id.clone(), tail);
            let depth = per_ray[r].keys().max().copied().unwrap_or(0);
            let mut dense: Vec<i64> = (1..=depth).map(|d| per_ray[r].get(&d).copied().unwrap_or(0)).collect();
            while dense.last() == Some(&tail) {
                dense.pop();
            }
            for (k, x) in dense.into_iter().enumerate() {
                out_values.insert(crate::quiver::ray_vertex(&ray.id, k + 1), x);
            }
        }
        let n = RootVector { spec, values: out_values, tails: out_tails };
        n.check_omega()?;
        Ok(n)
    }

    fn check_omega(&self) -> Result<()> {
        for comp in self.spec.components() {
            if comp.multiplicity != Multiplicity::Omega {
                continue;
            }
            let mut seen = comp.vertices.iter().map(|v| self.value(v));
            for r in &comp.rays {
                if self.explicit_depth(r) > 0 || self.tails[r] != self.value(&comp.vertices[0]) {
                    return Err(Error::NotRootSpace(format!(
                        "ray `{r}` of the multiplicity-omega component of `{}` is not constant",
                        comp.vertices[0]
                    )));
                }
            }
            let first = seen.next().unwrap_or(0);
            if seen.any(|x| x != first) {
                return Err(Error::NotRootSpace(format!(
                    "labels on the multiplicity-omega component of `{}` must be one constant",
                    comp.vertices[0]
                )));
            }
        }
        Ok(())
    }

    pub fn zero(spec: Arc<QuiverSpec>) -> Self {
        RootVector::new(spec, BTreeMap::new(), BTreeMap::new()).expect("zero is a root")
    }

    /// The indicator of a single vertex.
    pub fn indicator(spec: Arc<QuiverSpec>, v: &str) -> Result<Self> {
        RootVector::new(spec, BTreeMap::from([(v.to_string(), 1)]), BTreeMap::new())
    }

    /// Build from `(vertex, label)` pairs; rays get the given tails.
    pub fn from_pairs(spec: Arc<QuiverSpec>, pairs: &[(&str, i64)], tails: &[(&str, i64)]) -> Result<Self> {
        let values = pairs.iter().map(|(v, x)| (v.to_string(), *x)).collect();
        let tails = tails.iter().map(|(r, x)| (r.to_string(), *x)).collect();
        RootVector::new(spec, values, tails)
    }

    pub fn spec(&self) -> &Arc<QuiverSpec> {
        &self.spec
    }

    /// Explicitly stored labels (see the type docs for the normal form).
    pub fn values(&self) -> &BTreeMap<String, i64> {
        &self.values
    }

    pub fn tails(&self) -> &BTreeMap<String, i64> {
        &self.tails
    }

    pub fn tail(&self, ray: &str) -> i64 {
        self.tails.get(ray).copied().unwrap_or(0)
    }

    /// Label at any vertex of the infinite quiver; unknown names read as 0.
    pub fn value(&self, v: &str) -> i64 {
        match self.spec.parse_vertex(v) {
            Ok(VertexRef::Core(_)) => self.values.get(v).copied().unwrap_or(0),
            Ok(VertexRef::Ray(r, _)) => {
                self.values.get(v).copied().unwrap_or_else(|| self.tails[&self.spec.rays[r].id])
            }
            Err(_) => 0,
        }
    }

    /// Number of labels stored along a ray before the tail takes over.
    pub fn explicit_depth(&self, ray: &str) -> usize {
        (1..).take_while(|&d| self.values.contains_key(&crate::quiver::ray_vertex(ray, d))).last().unwrap_or(0)
    }

    pub fn max_explicit_depth(&self) -> usize {
        self.spec.rays.iter().map(|r| self.explicit_depth(&r.id)).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|&x| x == 0) && self.tails.values().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.values().all(|&x| x >= 0) && self.tails.values().all(|&x| x >= 0)
    }

    /// Labels on every vertex of a window, in its order.
    pub fn on<'a>(&self, vertices: impl IntoIterator<Item = &'a String>) -> Vec<i64> {
        vertices.into_iter().map(|v| self.value(v)).collect()
    }

    /// Pointwise sum.
    pub fn add(&self, other: &RootVector) -> Result<RootVector> {
        if self.spec != other.spec {
            return Err(Error::WindowMismatch);
        }
        let depth = self.max_explicit_depth().max(other.max_explicit_depth());
        let m = self.spec.materialize(depth);
        let values = m.vertices.iter().map(|v| (v.clone(), self.value(v) + other.value(v))).collect();
        let tails = self.spec.rays.iter().map(|r| (r.id.clone(), self.tail(&r.id) + other.tail(&r.id))).collect();
        RootVector::new(self.spec.clone(), values, tails)
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<&String> = self.values.keys().collect();
        keys.sort_by_key(|v| self.spec.vertex_key(v));
        let parts: Vec<String> = keys.iter().map(|v| format!("{v}={}", self.values[*v])).collect();
        f.write_str(if parts.is_empty() { "0" } else { "" })?;
        f.write_str(&parts.join(" "))?;
        let tails: Vec<String> = self.tails.iter().filter(|(_, &t)| t != 0).map(|(r, t)| format!("{r}->{t}")).collect();
        if !tails.is_empty() {
            write!(f, " ; {}", tails.join(" "))?;
        }
        Ok(())
    }
}

/// An integer or one of the three non-finite outcomes of a directed limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtendedInt {
    Finite(i64),
    PlusInfinity,
    MinusInfinity,
    /// Both homologies infinite; no limit is defined.
    Divergent,
}

impl ExtendedInt {
    pub fn finite(self) -> Option<i64> {
        match self {
            ExtendedInt::Finite(z) => Some(z),
            _ => None,
        }
    }

    /// `self <= 0`, false for divergent.
    pub fn is_nonpositive(self) -> bool {
        matches!(self, ExtendedInt::Finite(z) if z <= 0) || self == ExtendedInt::MinusInfinity
    }
}

impl fmt::Display for ExtendedInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedInt::Finite(z) => write!(f, "{z}"),
            ExtendedInt::PlusInfinity => f.write_str("+inf"),
            ExtendedInt::MinusInfinity => f.write_str("-inf"),
            ExtendedInt::Divergent => f.write_str("divergent"),
        }
    }
}

impl FromStr for ExtendedInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+inf" => Ok(ExtendedInt::PlusInfinity),
            "-inf" => Ok(ExtendedInt::MinusInfinity),
            "divergent" => Ok(ExtendedInt::Divergent),
            t => {
                t.parse().map(ExtendedInt::Finite).map_err(|_| Error::Schema(format!("not an extended integer: `{t}`")))
            }
        }
    }
}

/// Finite values serialize as JSON numbers, the rest as their strings.
impl Serialize for ExtendedInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtendedInt::Finite(z) => s.serialize_i64(*z),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(z) => Ok(ExtendedInt::Finite(z)),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}
