//! Finite quivers and finitely presented infinite quivers: a finite core
//! graph with finitely many orientation-annotated rays attached.

pub(crate) mod retraction;
mod shape;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

pub use retraction::{
    closest_retraction_path, enumerate_ic_subquivers, finite_retraction, is_eventually_outward, is_retraction,
    two_core, Outwardness,
};
pub use shape::{analyze_shapes, classify_shape, Obstruction, ShapeAnalysis, ShapeClass};

use crate::error::{Error, Result};

/// Direction of a ray arrow relative to the attach point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    /// Points away from the attach point.
    Out,
    /// Points toward the attach point.
    In,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Out => Orientation::In,
            Orientation::In => Orientation::Out,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Orientation::Out => 'o',
            Orientation::In => 'i',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'o' => Some(Orientation::Out),
            'i' => Some(Orientation::In),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Multiplicity {
    #[default]
    One,
    /// Countably many disjoint copies of the component.
    Omega,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RaySpec {
    pub id: String,
    pub attach: String,
    pub prefix: Vec<Orientation>,
    pub tail: Orientation,
}

impl RaySpec {
    /// Orientation of the `k`-th ray arrow, counted from 1 at the attach point.
    pub fn orientation(&self, k: usize) -> Orientation {
        self.prefix.get(k - 1).copied().unwrap_or(self.tail)
    }

    fn normalize(&mut self) {
        while self.prefix.last() == Some(&self.tail) {
            self.prefix.pop();
        }
    }
}

/// A connected component of the core together with the rays attached to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<String>,
    pub rays: Vec<String>,
    pub multiplicity: Multiplicity,
}

/// A finite core graph plus rays. Construct through [`QuiverSpec::validate`]
/// (or the builder) to get sorted ids and computed components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverSpec {
    pub name: String,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub rays: Vec<RaySpec>,
    /// Keyed by the lowest vertex id of the component after validation.
    pub multiplicity: BTreeMap<String, Multiplicity>,
    components: Vec<Component>,
    vertex_index: HashMap<String, usize>,
    component_of: Vec<usize>,
}

/// A vertex of the (possibly infinite) quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexRef {
    Core(usize),
    /// Ray index into `rays` and depth, at least one.
    Ray(usize, usize),
}

/// One arrow at a vertex, seen from that vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub arrow: String,
    pub other: String,
    pub outgoing: bool,
}

/// Vertices and arrows of the finite part of the quiver obtained by cutting
/// every ray at a given depth.
#[derive(Clone, Debug)]
pub struct Materialized {
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, usize, usize)>,
}

impl Materialized {
    pub fn index(&self) -> HashMap<&str, usize> {
        self.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(_, s, t) in &self.arrows {
            adj[s].push(t);
            if s != t {
                adj[t].push(s);
            }
        }
        adj
    }
}

pub fn ray_vertex(ray: &str, depth: usize) -> String {
    format!("{ray}#{depth}")
}

pub fn ray_arrow(ray: &str, k: usize) -> String {
    format!("{ray}@{k}")
}

impl QuiverSpec {
    pub fn builder(name: &str) -> QuiverBuilder {
        QuiverBuilder { spec: QuiverSpec::raw(name) }
    }

    fn raw(name: &str) -> Self {
        QuiverSpec {
            name: name.to_string(),
            vertices: Vec::new(),
            arrows: Vec::new(),
            rays: Vec::new(),
            multiplicity: BTreeMap::new(),
            components: Vec::new(),
            vertex_index: HashMap::new(),
            component_of: Vec::new(),
        }
    }

    /// Assemble an unvalidated spec from its parts.
    pub fn from_parts(
        name: &str,
        vertices: Vec<String>,
        arrows: Vec<Arrow>,
        rays: Vec<RaySpec>,
        multiplicity: BTreeMap<String, Multiplicity>,
    ) -> Self {
        QuiverSpec { vertices, arrows, rays, multiplicity, ..QuiverSpec::raw(name) }
    }

    /// Check the structural invariants and return the normalized spec.
    pub fn validate(mut self) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for v in &self.vertices {
            if v.contains('#') || v.contains('@') || v.is_empty() {
                return Err(Error::ReservedId(v.clone()));
            }
            if !seen.insert(v.as_str()) {
                return Err(Error::DuplicateId(v.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        for a in &self.arrows {
            if a.id.contains('@') || a.id.contains('#') || a.id.is_empty() {
                return Err(Error::ReservedId(a.id.clone()));
            }
            if !seen.insert(a.id.as_str()) {
                return Err(Error::DuplicateId(a.id.clone()));
            }
            for end in [&a.source, &a.target] {
                if !self.vertices.contains(end) {
                    return Err(Error::DanglingEndpoint { arrow: a.id.clone(), vertex: end.clone() });
                }
            }
        }
        let mut seen = BTreeSet::new();
        for r in &self.rays {
            if r.id.contains('@') || r.id.contains('#') || r.id.is_empty() {
                return Err(Error::ReservedId(r.id.clone()));
            }
            if !seen.insert(r.id.as_str()) {
                return Err(Error::DuplicateId(r.id.clone()));
            }
            if !self.vertices.contains(&r.attach) {
                return Err(Error::UnknownAttach { ray: r.id.clone(), vertex: r.attach.clone() });
            }
        }

        self.vertices.sort();
        self.arrows.sort_by(|a, b| a.id.cmp(&b.id));
        self.rays.sort_by(|a, b| a.id.cmp(&b.id));
        self.rays.iter_mut().for_each(RaySpec::normalize);
        self.vertex_index = self.vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();

        // Union-find over the core.
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for a in &self.arrows {
            let (s, t) = (self.vertex_index[&a.source], self.vertex_index[&a.target]);
            let (rs, rt) = (find(&mut parent, s), find(&mut parent, t));
            if rs != rt {
                parent[rs.max(rt)] = rs.min(rt);
            }
        }
        let roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
        let mut order: Vec<usize> = roots.clone();
        order.sort();
        order.dedup();
        let comp_of_root: HashMap<usize, usize> = order.iter().enumerate().map(|(c, &r)| (r, c)).collect();
        self.component_of = roots.iter().map(|r| comp_of_root[r]).collect();

        let mut components: Vec<Component> = order
            .iter()
            .map(|_| Component { vertices: Vec::new(), rays: Vec::new(), multiplicity: Multiplicity::One })
            .collect();
        for (i, v) in self.vertices.iter().enumerate() {
            components[self.component_of[i]].vertices.push(v.clone());
        }
        for r in &self.rays {
            let c = self.component_of[self.vertex_index[&r.attach]];
            components[c].rays.push(r.id.clone());
        }

        let mut assigned: Vec<Option<Multiplicity>> = vec![None; components.len()];
        for (key, m) in &self.multiplicity {
            let idx = *self.vertex_index.get(key).ok_or_else(|| Error::UnknownVertex(key.clone()))?;
            let c = self.component_of[idx];
            match assigned[c] {
                Some(prev) if prev != *m => return Err(Error::ConflictingMultiplicity(key.clone())),
                _ => assigned[c] = Some(*m),
            }
        }
        self.multiplicity.clear();
        for (c, m) in assigned.into_iter().enumerate() {
            let m = m.unwrap_or_default();
            components[c].multiplicity = m;
            if m == Multiplicity::Omega {
                self.multiplicity.insert(components[c].vertices[0].clone(), m);
            }
        }
        self.components = components;
        Ok(self)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn is_finite(&self) -> bool {
        self.rays.is_empty() && self.components.iter().all(|c| c.multiplicity == Multiplicity::One)
    }

    pub fn ray_index(&self, id: &str) -> Result<usize> {
        self.rays.binary_search_by(|r| r.id.as_str().cmp(id)).map_err(|_| Error::UnknownRay(id.to_string()))
    }

    pub fn core_index(&self, v: &str) -> Option<usize> {
        self.vertex_index.get(v).copied()
    }

    pub fn parse_vertex(&self, v: &str) -> Result<VertexRef> {
        if let Some(i) = self.core_index(v) {
            return Ok(VertexRef::Core(i));
        }
        let unknown = || Error::UnknownVertex(v.to_string());
        let (ray, depth) = v.split_once('#').ok_or_else(unknown)?;
        let depth: usize = depth.parse().map_err(|_| unknown())?;
        if depth == 0 {
            return Err(unknown());
        }
        let r = self.ray_index(ray).map_err(|_| unknown())?;
        Ok(VertexRef::Ray(r, depth))
    }

    pub fn vertex_name(&self, v: VertexRef) -> String {
        match v {
            VertexRef::Core(i) => self.vertices[i].clone(),
            VertexRef::Ray(r, d) => ray_vertex(&self.rays[r].id, d),
        }
    }

    /// Index of the component containing a vertex.
    pub fn component_of(&self, v: VertexRef) -> usize {
        match v {
            VertexRef::Core(i) => self.component_of[i],
            VertexRef::Ray(r, _) => self.component_of[self.vertex_index[&self.rays[r].attach]],
        }
    }

    pub fn component_of_name(&self, v: &str) -> Result<usize> {
        Ok(self.component_of(self.parse_vertex(v)?))
    }

    /// Sort key giving the canonical vertex order: core vertices by id, then
    /// ray vertices by ray and depth.
    pub fn vertex_key(&self, v: &str) -> (usize, usize, usize) {
        match self.parse_vertex(v) {
            Ok(VertexRef::Core(i)) => (0, i, 0),
            Ok(VertexRef::Ray(r, d)) => (1, r, d),
            Err(_) => (2, 0, 0),
        }
    }

    /// Endpoints of an arrow by id, including materialized ray arrows.
    pub fn arrow_ends(&self, id: &str) -> Result<(String, String)> {
        if let Ok(i) = self.arrows.binary_search_by(|a| a.id.as_str().cmp(id)) {
            let a = &self.arrows[i];
            return Ok((a.source.clone(), a.target.clone()));
        }
        let unknown = || Error::UnknownArrow(id.to_string());
        let (ray, k) = id.split_once('@').ok_or_else(unknown)?;
        let k: usize = k.parse().map_err(|_| unknown())?;
        if k == 0 {
            return Err(unknown());
        }
        let r = self.ray_index(ray).map_err(|_| unknown())?;
        Ok(self.ray_arrow_ends(r, k))
    }

    fn ray_arrow_ends(&self, r: usize, k: usize) -> (String, String) {
        let ray = &self.rays[r];
        let inner = if k == 1 { ray.attach.clone() } else { ray_vertex(&ray.id, k - 1) };
        let outer = ray_vertex(&ray.id, k);
        match ray.orientation(k) {
            Orientation::Out => (inner, outer),
            Orientation::In => (outer, inner),
        }
    }

    /// Every arrow at a vertex of the infinite quiver.
    pub fn incident(&self, v: &str) -> Result<Vec<Incidence>> {
        let mut out = Vec::new();
        match self.parse_vertex(v)? {
            VertexRef::Core(_) => {
                for a in &self.arrows {
                    if a.source == v {
                        out.push(Incidence { arrow: a.id.clone(), other: a.target.clone(), outgoing: true });
                    }
                    if a.target == v {
                        out.push(Incidence { arrow: a.id.clone(), other: a.source.clone(), outgoing: false });
                    }
                }
                for (r, ray) in self.rays.iter().enumerate() {
                    if ray.attach == v {
                        out.push(self.ray_incidence(r, 1, v));
                    }
                }
            }
            VertexRef::Ray(r, d) => {
                out.push(self.ray_incidence(r, d, v));
                out.push(self.ray_incidence(r, d + 1, v));
            }
        }
        Ok(out)
    }

    fn ray_incidence(&self, r: usize, k: usize, at: &str) -> Incidence {
        let (s, t) = self.ray_arrow_ends(r, k);
        let outgoing = s == at;
        Incidence { arrow: ray_arrow(&self.rays[r].id, k), other: if outgoing { t } else { s }, outgoing }
    }

    pub fn is_sink(&self, v: &str) -> Result<bool> {
        Ok(self.incident(v)?.iter().all(|i| !i.outgoing))
    }

    pub fn is_source(&self, v: &str) -> Result<bool> {
        Ok(self.incident(v)?.iter().all(|i| i.outgoing))
    }

    /// The finite quiver obtained by cutting every ray after `depth` vertices,
    /// in canonical order.
    pub fn materialize(&self, depth: usize) -> Materialized {
        self.materialize_where(depth, |_| true)
    }

    /// Materialization restricted to the components accepted by `keep`.
    pub fn materialize_where(&self, depth: usize, keep: impl Fn(usize) -> bool) -> Materialized {
        let mut vertices = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if keep(self.component_of[i]) {
                vertices.push(v.clone());
            }
        }
        let kept_rays: Vec<usize> =
            (0..self.rays.len()).filter(|&r| keep(self.component_of(VertexRef::Ray(r, 1)))).collect();
        for &r in &kept_rays {
            for d in 1..=depth {
                vertices.push(ray_vertex(&self.rays[r].id, d));
            }
        }
        let index: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut arrows = Vec::new();
        for a in &self.arrows {
            if let (Some(&s), Some(&t)) = (index.get(a.source.as_str()), index.get(a.target.as_str())) {
                arrows.push((a.id.clone(), s, t));
            }
        }
        for &r in &kept_rays {
            for k in 1..=depth {
                let (s, t) = self.ray_arrow_ends(r, k);
                arrows.push((ray_arrow(&self.rays[r].id, k), index[s.as_str()], index[t.as_str()]));
            }
        }
        Materialized { vertices, arrows }
    }

    /// Largest ray depth among the given vertex names (zero for core only).
    pub fn max_depth<'a>(&self, vertices: impl IntoIterator<Item = &'a String>) -> usize {
        vertices
            .into_iter()
            .filter_map(|v| match self.parse_vertex(v) {
                Ok(VertexRef::Ray(_, d)) => Some(d),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for QuiverSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({} vertices, {} arrows, {} rays, {} components)",
            self.name,
            self.vertices.len(),
            self.arrows.len(),
            self.rays.len(),
            self.components.len()
        )
    }
}

/// Convenience constructor, mostly for tests and examples.
pub struct QuiverBuilder {
    spec: QuiverSpec,
}

impl QuiverBuilder {
    pub fn vertex(mut self, id: &str) -> Self {
        self.spec.vertices.push(id.to_string());
        self
    }

    pub fn vertices(mut self, ids: &[&str]) -> Self {
        self.spec.vertices.extend(ids.iter().map(|s| s.to_string()));
        self
    }

    pub fn arrow(mut self, id: &str, source: &str, target: &str) -> Self {
        self.spec.arrows.push(Arrow { id: id.into(), source: source.into(), target: target.into() });
        self
    }

    /// `prefix` is a word over `o`/`i`; `tail` is `'o'` or `'i'`.
    pub fn ray(mut self, id: &str, attach: &str, prefix: &str, tail: char) -> Self {
        self.spec.rays.push(RaySpec {
            id: id.into(),
            attach: attach.into(),
            prefix: prefix.chars().map(|c| Orientation::from_char(c).expect("o or i")).collect(),
            tail: Orientation::from_char(tail).expect("o or i"),
        });
        self
    }

    pub fn omega(mut self, representative: &str) -> Self {
        self.spec.multiplicity.insert(representative.into(), Multiplicity::Omega);
        self
    }

    pub fn build(self) -> Result<QuiverSpec> {
        self.spec.validate()
    }
}

/// A finite full-or-not subquiver given by vertex and arrow ids, both kept in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subquiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<String>,
}

impl Subquiver {
    pub fn empty() -> Self {
        Subquiver { vertices: Vec::new(), arrows: Vec::new() }
    }

    /// The full subquiver on a vertex set.
    pub fn full<I, S>(spec: &QuiverSpec, vertices: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let set: BTreeSet<String> = vertices.into_iter().map(Into::into).collect();
        let mut arrows = BTreeSet::new();
        for v in &set {
            for inc in spec.incident(v)? {
                if set.contains(&inc.other) {
                    arrows.insert(inc.arrow);
                }
            }
        }
        Ok(Subquiver { vertices: set.into_iter().collect(), arrows: arrows.into_iter().collect() })
    }

    /// A subquiver with an explicit arrow list, checked for closure.
    pub fn new(spec: &QuiverSpec, vertices: Vec<String>, arrows: Vec<String>) -> Result<Self> {
        let set: BTreeSet<String> = vertices.into_iter().collect();
        for v in &set {
            spec.parse_vertex(v)?;
        }
        let mut arrow_set = BTreeSet::new();
        for a in arrows {
            let (s, t) = spec.arrow_ends(&a)?;
            if !set.contains(&s) || !set.contains(&t) {
                return Err(Error::OpenSubquiver(a));
            }
            arrow_set.insert(a);
        }
        Ok(Subquiver { vertices: set.into_iter().collect(), arrows: arrow_set.into_iter().collect() })
    }

    pub fn is_full(&self, spec: &QuiverSpec) -> Result<bool> {
        Ok(Subquiver::full(spec, self.vertices.iter().cloned())?.arrows == self.arrows)
    }

    pub fn contains(&self, v: &str) -> bool {
        self.vertices.binary_search_by(|x| x.as_str().cmp(v)).is_ok()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_subset_of(&self, other: &Subquiver) -> bool {
        self.vertices.iter().all(|v| other.contains(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_is_valid() {
        let q = QuiverSpec::builder("A2").vertices(&["v2", "v1"]).arrow("a", "v1", "v2").build().unwrap();
        assert_eq!(q.vertices, vec!["v1", "v2"]);
        assert_eq!(q.components().len(), 1);
    }

    #[test]
    fn structural_errors() {
        let dangling = QuiverSpec::builder("x").vertex("v1").arrow("a", "v0", "v1").build();
        assert_eq!(dangling.unwrap_err().code(), "dangling-endpoint");
        let dup = QuiverSpec::builder("x").vertices(&["v", "v"]).build();
        assert_eq!(dup.unwrap_err().code(), "duplicate-id");
        let attach = QuiverSpec::builder("x").vertex("v").ray("r", "w", "", 'o').build();
        assert_eq!(attach.unwrap_err().code(), "unknown-attach");
        let reserved = QuiverSpec::builder("x").vertex("r#1").build();
        assert_eq!(reserved.unwrap_err().code(), "reserved-id");
        let conflict = QuiverSpec::builder("x").vertices(&["a", "b"]).arrow("e", "a", "b").build().and_then(|mut q| {
            q.multiplicity.insert("a".into(), Multiplicity::Omega);
            q.multiplicity.insert("b".into(), Multiplicity::One);
            q.validate()
        });
        assert_eq!(conflict.unwrap_err().code(), "conflicting-multiplicity");
    }

    #[test]
    fn two_rays_on_one_vertex() {
        let q = QuiverSpec::builder("Aii").vertex("c").ray("l", "c", "", 'o').ray("r", "c", "", 'o').build().unwrap();
        assert_eq!(q.components().len(), 1);
        assert_eq!(q.components()[0].rays, vec!["l", "r"]);
    }

    #[test]
    fn ray_arrows_follow_prefix_then_tail() {
        let q = QuiverSpec::builder("A").vertex("c").ray("r", "c", "io", 'i').build().unwrap();
        assert_eq!(q.arrow_ends("r@1").unwrap(), ("r#1".into(), "c".into()));
        assert_eq!(q.arrow_ends("r@2").unwrap(), ("r#1".into(), "r#2".into()));
        assert_eq!(q.arrow_ends("r@3").unwrap(), ("r#3".into(), "r#2".into()));
        assert!(q.is_source("r#1").unwrap());
        assert!(q.is_sink("r#2").unwrap());
    }

    #[test]
    fn prefix_is_trimmed() {
        let q = QuiverSpec::builder("A").vertex("c").ray("r", "c", "ioo", 'o').build().unwrap();
        assert_eq!(q.rays[0].prefix, vec![Orientation::In]);
    }

    #[test]
    fn materialization_order() {
        let q = QuiverSpec::builder("D")
            .vertices(&["k", "a", "b"])
            .arrow("x", "k", "a")
            .arrow("y", "k", "b")
            .ray("r", "k", "", 'o')
            .build()
            .unwrap();
        let m = q.materialize(2);
        assert_eq!(m.vertices, vec!["a", "b", "k", "r#1", "r#2"]);
        assert_eq!(m.arrows.len(), 4);
        let sub = Subquiver::full(&q, ["k", "r#1", "a"]).unwrap();
        assert_eq!(sub.arrows, vec!["r@1", "x"]);
        assert!(Subquiver::new(&q, vec!["k".into()], vec!["x".into()]).is_err());
    }
}
