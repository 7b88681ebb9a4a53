//! Representations on finite windows of a quiver, their morphisms, hom
//! spaces, Krull-Schmidt decomposition and the retraction functors.

mod any;
mod decompose;
mod functor;
pub(crate) mod hom;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

pub use any::AnyRepresentation;
pub use decompose::{
    decompose, decompose_with_seed, indecomposables_isomorphic, is_isomorphic, Certificate, Decomposition,
};
pub use functor::{dimension_vector, extend_to, functor_extend, functor_restrict, subquotient, Subquotient};
pub use hom::{end_dimension, hom_basis, hom_space};

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::quiver::{QuiverSpec, Subquiver};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowArrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

/// The finite full subquiver a representation stores data on. Outside it the
/// representation is continued by identities from the closest window vertex.
#[derive(Clone, Debug)]
pub struct Window {
    spec: Arc<QuiverSpec>,
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    arrows: Vec<WindowArrow>,
}

impl PartialEq for Window {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && (Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec)
    }
}

impl Eq for Window {}

impl Window {
    /// Every core vertex plus ray vertices down to `depth`.
    pub fn full(spec: Arc<QuiverSpec>, depth: usize) -> Arc<Window> {
        let vertices = spec.materialize(depth).vertices;
        Self::on(spec, vertices).expect("materialized vertices are valid")
    }

    /// The full subquiver on the given vertices, in canonical order.
    pub fn on<I, S>(spec: Arc<QuiverSpec>, vertices: I) -> Result<Arc<Window>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let sub = Subquiver::full(&spec, vertices)?;
        let mut vertices = sub.vertices;
        vertices.sort_by_key(|v| spec.vertex_key(v));
        let index: HashMap<String, usize> = vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let mut arrows = Vec::with_capacity(sub.arrows.len());
        for id in sub.arrows {
            let (s, t) = spec.arrow_ends(&id)?;
            arrows.push(WindowArrow { id, source: index[&s], target: index[&t] });
        }
        arrows.sort_by_key(|a| arrow_key(&spec, &a.id));
        Ok(Arc::new(Window { spec, vertices, index, arrows }))
    }

    pub fn spec(&self) -> &Arc<QuiverSpec> {
        &self.spec
    }
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }
    pub fn arrows(&self) -> &[WindowArrow] {
        &self.arrows
    }
    pub fn len(&self) -> usize {
        self.vertices.len()
    }
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_index(&self, v: &str) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    pub fn contains(&self, v: &str) -> bool {
        self.index.contains_key(v)
    }

    /// The depth `d` for which this window is the full materialization, if
    /// it is one.
    pub fn full_depth(&self) -> Option<usize> {
        let d = self.spec.max_depth(self.vertices.iter());
        (self.spec.materialize(d).vertices.len() == self.vertices.len()
            && self.spec.vertices.iter().all(|v| self.contains(v)))
        .then_some(d)
    }

    pub fn subquiver(&self) -> Subquiver {
        Subquiver::full(&self.spec, self.vertices.iter().cloned()).expect("window vertices are valid")
    }

    /// Window arrows with `i` as target (incoming) and as source (outgoing).
    pub fn incidence(&self, i: usize) -> (Vec<usize>, Vec<usize>) {
        let incoming = (0..self.arrows.len()).filter(|&a| self.arrows[a].target == i).collect();
        let outgoing = (0..self.arrows.len()).filter(|&a| self.arrows[a].source == i).collect();
        (incoming, outgoing)
    }
}

fn arrow_key(spec: &QuiverSpec, id: &str) -> (usize, usize, usize) {
    if let Ok(i) = spec.arrows.binary_search_by(|a| a.id.as_str().cmp(id)) {
        return (0, i, 0);
    }
    let (ray, k) = id.split_once('@').unwrap_or((id, "0"));
    (1, spec.ray_index(ray).unwrap_or(usize::MAX), k.parse().unwrap_or(0))
}

/// A representation: a space at every window vertex and a matrix of shape
/// `dim(target) x dim(source)` at every window arrow.
#[derive(Clone)]
pub struct Representation<K: Field> {
    pub(crate) field: K,
    pub(crate) window: Arc<Window>,
    pub(crate) dims: Vec<usize>,
    pub(crate) maps: Vec<Matrix<K>>,
}

impl<K: Field> PartialEq for Representation<K> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.window == other.window && self.dims == other.dims && self.maps == other.maps
    }
}

impl<K: Field> Eq for Representation<K> {}

impl<K: Field> fmt::Debug for Representation<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Representation")
            .field("field", &self.field.tag())
            .field("vertices", &self.window.vertices)
            .field("dims", &self.dims)
            .field("maps", &self.maps)
            .finish()
    }
}

impl<K: Field> Representation<K> {
    pub fn new(field: &K, window: Arc<Window>, dims: Vec<usize>, maps: Vec<Matrix<K>>) -> Result<Self> {
        if dims.len() != window.len() || maps.len() != window.arrows.len() {
            return Err(Error::ShapeMismatch("dims or maps do not match the window".into()));
        }
        for (a, m) in window.arrows.iter().zip(&maps) {
            if m.field() != field {
                return Err(Error::FieldMismatch { left: field.tag(), right: m.field().tag() });
            }
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::ShapeMismatch(format!(
                    "arrow `{}` needs a {}x{} matrix, got {}x{}",
                    a.id,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Representation { field: field.clone(), window, dims, maps })
    }

    pub(crate) fn from_parts_unchecked(field: &K, window: Arc<Window>, dims: Vec<usize>, maps: Vec<Matrix<K>>) -> Self {
        debug_assert!(Self::new(field, window.clone(), dims.clone(), maps.clone()).is_ok());
        Representation { field: field.clone(), window, dims, maps }
    }

    /// Build from named data; absent vertices have dimension zero and absent
    /// arrows carry the zero map.
    pub fn from_named(
        field: &K,
        window: Arc<Window>,
        dims: &BTreeMap<String, usize>,
        maps: &BTreeMap<String, Matrix<K>>,
    ) -> Result<Self> {
        for v in dims.keys() {
            if !window.contains(v) {
                return Err(Error::UnknownVertex(v.clone()));
            }
        }
        for a in maps.keys() {
            if window.arrow_index(a).is_none() {
                return Err(Error::UnknownArrow(a.clone()));
            }
        }
        let d: Vec<usize> = window.vertices.iter().map(|v| dims.get(v).copied().unwrap_or(0)).collect();
        let m = window
            .arrows
            .iter()
            .map(|a| maps.get(&a.id).cloned().unwrap_or_else(|| Matrix::zeros(field, d[a.target], d[a.source])))
            .collect();
        Self::new(field, window, d, m)
    }

    pub fn zero(field: &K, window: Arc<Window>) -> Self {
        let maps = window.arrows.iter().map(|_| Matrix::zeros(field, 0, 0)).collect();
        let dims = vec![0; window.len()];
        Representation { field: field.clone(), window, dims, maps }
    }

    pub fn field(&self) -> &K {
        &self.field
    }
    pub fn window(&self) -> &Arc<Window> {
        &self.window
    }
    pub fn spec(&self) -> &Arc<QuiverSpec> {
        &self.window.spec
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn maps(&self) -> &[Matrix<K>] {
        &self.maps
    }

    pub fn dim(&self, v: &str) -> Option<usize> {
        self.window.vertex_index(v).map(|i| self.dims[i])
    }

    pub fn map(&self, arrow: &str) -> Option<&Matrix<K>> {
        self.window.arrow_index(arrow).map(|i| &self.maps[i])
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Named dimensions of the nonzero vertices.
    pub fn dims_named(&self) -> BTreeMap<String, usize> {
        self.window.vertices.iter().cloned().zip(self.dims.iter().copied()).filter(|(_, d)| *d > 0).collect()
    }

    /// Transport along a change of basis: `g[v]` is the new-to-old matrix at
    /// each vertex, so the new maps are `g[t]^-1 A g[s]`.
    pub fn change_basis(&self, g: &[Matrix<K>]) -> Result<Self> {
        let inverses = g
            .iter()
            .map(|m| m.inverse().ok_or_else(|| Error::ShapeMismatch("basis change is not invertible".into())))
            .collect::<Result<Vec<_>>>()?;
        let maps = self
            .window
            .arrows
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| inverses[a.target].mul(m).mul(&g[a.source]))
            .collect();
        Self::new(&self.field, self.window.clone(), self.dims.clone(), maps)
    }

    /// Restrict to invariant subspaces given by column bases in reduced
    /// column echelon form at every vertex.
    pub(crate) fn restrict_to(&self, bases: &[Matrix<K>]) -> Self {
        let dims = bases.iter().map(|b| b.cols()).collect();
        let maps = self
            .window
            .arrows
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| bases[a.target].echelon_coords(&m.mul(&bases[a.source])))
            .collect();
        Representation { field: self.field.clone(), window: self.window.clone(), dims, maps }
    }
}

/// The representation with a single one-dimensional space at `i`.
pub fn simple_rep<K: Field>(field: &K, window: Arc<Window>, i: &str) -> Result<Representation<K>> {
    let idx = window.vertex_index(i).ok_or_else(|| Error::UnknownVertex(i.to_string()))?;
    let mut dims = vec![0; window.len()];
    dims[idx] = 1;
    let maps = window.arrows.iter().map(|a| Matrix::zeros(field, dims[a.target], dims[a.source])).collect();
    Ok(Representation { field: field.clone(), window, dims, maps })
}

/// Direct sum of representations on one window.
pub fn direct_sum<K: Field>(
    field: &K,
    window: &Arc<Window>,
    parts: &[&Representation<K>],
) -> Result<Representation<K>> {
    for p in parts {
        if p.window != *window {
            return Err(Error::WindowMismatch);
        }
        if p.field != *field {
            return Err(Error::FieldMismatch { left: field.tag(), right: p.field.tag() });
        }
    }
    let dims = (0..window.len()).map(|i| parts.iter().map(|p| p.dims[i]).sum()).collect();
    let maps = (0..window.arrows.len())
        .map(|a| Matrix::block_diag(field, &parts.iter().map(|p| &p.maps[a]).collect::<Vec<_>>()))
        .collect();
    Ok(Representation { field: field.clone(), window: window.clone(), dims, maps })
}

/// A family of linear maps between two representations on one window that
/// commutes with every arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism<K: Field> {
    pub source: Representation<K>,
    pub target: Representation<K>,
    pub comps: Vec<Matrix<K>>,
}

impl<K: Field> Morphism<K> {
    pub fn new(source: Representation<K>, target: Representation<K>, comps: Vec<Matrix<K>>) -> Result<Self> {
        if source.window != target.window {
            return Err(Error::WindowMismatch);
        }
        if source.field != target.field {
            return Err(Error::FieldMismatch { left: source.field.tag(), right: target.field.tag() });
        }
        if comps.len() != source.dims.len() {
            return Err(Error::ShapeMismatch("one component per window vertex is required".into()));
        }
        for (i, c) in comps.iter().enumerate() {
            if c.shape() != (target.dims[i], source.dims[i]) {
                return Err(Error::ShapeMismatch(format!(
                    "component at `{}` must be {}x{}",
                    source.window.vertices[i], target.dims[i], source.dims[i]
                )));
            }
        }
        for (a, arrow) in source.window.arrows.iter().enumerate() {
            let left = target.maps[a].mul(&comps[arrow.source]);
            let right = comps[arrow.target].mul(&source.maps[a]);
            if left != right {
                return Err(Error::InvalidMorphism(arrow.id.clone()));
            }
        }
        Ok(Morphism { source, target, comps })
    }

    pub fn identity(rep: &Representation<K>) -> Self {
        let comps = rep.dims.iter().map(|&d| Matrix::identity(&rep.field, d)).collect();
        Morphism { source: rep.clone(), target: rep.clone(), comps }
    }

    pub fn zero(source: &Representation<K>, target: &Representation<K>) -> Self {
        let comps = source.dims.iter().zip(&target.dims).map(|(&s, &t)| Matrix::zeros(&source.field, t, s)).collect();
        Morphism { source: source.clone(), target: target.clone(), comps }
    }

    /// `other` after `self`.
    pub fn then(&self, other: &Morphism<K>) -> Result<Self> {
        if self.target != other.source {
            return Err(Error::WindowMismatch);
        }
        let comps = self.comps.iter().zip(&other.comps).map(|(f, g)| g.mul(f)).collect();
        Ok(Morphism { source: self.source.clone(), target: other.target.clone(), comps })
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    pub fn is_injective(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.rows())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.comps.iter().all(|c| c.is_square() && c.rank() == c.rows())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::linalg::Rationals;

    pub(crate) fn a2_reversed() -> Arc<Window> {
        // v1 <- v2
        let q = QuiverSpec::builder("A2").vertices(&["v1", "v2"]).arrow("a", "v2", "v1").build().unwrap();
        Window::full(Arc::new(q), 0)
    }

    pub(crate) fn rep_from(w: &Arc<Window>, dims: &[usize], maps: &[&[&[i64]]]) -> Representation<Rationals> {
        let f = Rationals;
        let m = w
            .arrows()
            .iter()
            .zip(maps)
            .map(|(a, rows)| {
                if rows.is_empty() {
                    Matrix::zeros(&f, dims[a.target], dims[a.source])
                } else {
                    Matrix::from_i64(&f, rows)
                }
            })
            .collect();
        Representation::new(&f, w.clone(), dims.to_vec(), m).unwrap()
    }

    #[test]
    fn simple_reps() {
        let w = a2_reversed();
        let l1 = simple_rep(&Rationals, w.clone(), "v1").unwrap();
        assert_eq!(l1.dims(), &[1, 0]);
        let l2 = simple_rep(&Rationals, w.clone(), "v2").unwrap();
        assert_eq!(l2.dims(), &[0, 1]);
        assert_eq!(simple_rep(&Rationals, w, "v3").unwrap_err().code(), "unknown-vertex");
    }

    #[test]
    fn shape_checked() {
        let w = a2_reversed();
        let bad = Representation::new(&Rationals, w, vec![1, 1], vec![Matrix::zeros(&Rationals, 2, 1)]);
        assert_eq!(bad.unwrap_err().code(), "shape-mismatch");
    }

    #[test]
    fn morphism_commutes() {
        let w = a2_reversed();
        let u = rep_from(&w, &[1, 0], &[&[]]);
        let v = rep_from(&w, &[1, 1], &[&[&[1]]]);
        let f = Rationals;
        let good = Morphism::new(u.clone(), v.clone(), vec![Matrix::identity(&f, 1), Matrix::zeros(&f, 1, 0)]);
        assert!(good.unwrap().is_injective());
        let bad = Morphism::new(v.clone(), u, vec![Matrix::zeros(&f, 1, 1), Matrix::zeros(&f, 0, 1)]);
        assert!(bad.is_ok());
        let w2 = rep_from(&w, &[0, 1], &[&[]]);
        let bad = Morphism::new(w2, v, vec![Matrix::zeros(&f, 1, 0), Matrix::identity(&f, 1)]);
        assert_eq!(bad.unwrap_err().code(), "invalid-morphism");
    }
}
