//! The order on isomorphism classes of indecomposables: `X > Y` when a chain
//! of nonzero non-invertible maps runs from X to Y.

mod filtration;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use petgraph::algo::{tarjan_scc, toposort};
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;

pub use filtration::{poset_filtration, poset_filtration_in, Filtration, FiltrationAudit, FiltrationClass};

use crate::error::{Error, Result};
use crate::linalg::Field;
use crate::quiver::QuiverSpec;
use crate::reflection::DInfinityFrame;
use crate::rep::hom::hom_components;
use crate::rep::{decompose, extend_to, subquotient, Morphism, Representation, Window};
use crate::roots::{enumerate_positive_roots, indecomposable_from_root, RootVector};

/// The D-infinity taxonomy, read off the labels at the trivalent vertex and
/// its three neighbours.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum DType {
    I,
    II,
    IIIa,
    IIIb,
    IV,
    V,
}

impl DType {
    /// Position in the coarse order I < II < III < IV < V; both kinds of
    /// type III share a rank.
    pub fn rank(self) -> u8 {
        match self {
            DType::I => 1,
            DType::II => 2,
            DType::IIIa | DType::IIIb => 3,
            DType::IV => 4,
            DType::V => 5,
        }
    }
}

impl fmt::Display for DType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DType::I => "I",
            DType::II => "II",
            DType::IIIa => "III(a)",
            DType::IIIb => "III(b)",
            DType::IV => "IV",
            DType::V => "V",
        })
    }
}

/// A set of long-arm vertices: the listed ones, plus every ray vertex past
/// `horizon` when `tail` is set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArmSet {
    pub vertices: Vec<String>,
    pub tail: bool,
    #[serde(skip)]
    horizon: usize,
    #[serde(skip)]
    ray: String,
}

impl ArmSet {
    pub fn contains(&self, v: &str) -> bool {
        if self.vertices.iter().any(|x| x == v) {
            return true;
        }
        match v.split_once('#') {
            Some((r, d)) if self.tail && r == self.ray => d.parse::<usize>().is_ok_and(|d| d > self.horizon),
            _ => false,
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.tail
    }

    pub fn is_subset(&self, other: &ArmSet) -> bool {
        if !self.vertices.iter().all(|v| other.contains(v)) {
            return false;
        }
        if !self.tail {
            return true;
        }
        // past both horizons the tails decide; in between, check by name
        other.tail
            && (self.horizon + 1..=other.horizon).all(|d| other.contains(&crate::quiver::ray_vertex(&self.ray, d)))
    }

    pub fn is_proper_subset(&self, other: &ArmSet) -> bool {
        self.is_subset(other) && !other.is_subset(self)
    }
}

impl fmt::Display for ArmSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}", self.vertices.join(","))?;
        if self.tail {
            write!(f, ",{}#{}..", self.ray, self.horizon + 1)?;
        }
        write!(f, "}}")
    }
}

/// Type, `T` (label 2) and `L` (nonzero on the long arm, trivalent vertex
/// included) of a D-infinity class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DInfinityType {
    pub kind: DType,
    pub t: ArmSet,
    pub l: ArmSet,
}

impl DInfinityType {
    /// `T` for type III(b), `L` for type III(a); `None` otherwise.
    pub fn s(&self) -> Option<&ArmSet> {
        match self.kind {
            DType::IIIa => Some(&self.l),
            DType::IIIb => Some(&self.t),
            _ => None,
        }
    }
}

pub fn dinfty_type_of(n: &RootVector) -> Result<DInfinityType> {
    let spec = n.spec();
    let frame = DInfinityFrame::of(spec)?;
    let k = n.value(&frame.branch);
    let neighbours = [&frame.leaves[0], &frame.leaves[1], &frame.vertex_at(1)];
    let ones = neighbours.iter().filter(|v| n.value(v) == 1).count();
    let kind = match (k, ones) {
        (0, _) => DType::I,
        (2, _) => DType::IIIb,
        (1, 3) => DType::II,
        (1, 2) => DType::IIIa,
        (1, 1) => DType::IV,
        (1, 0) => DType::V,
        _ => return Err(Error::NotPositiveRoot(n.to_string())),
    };
    let horizon = frame.arm.len() + n.explicit_depth(&frame.ray);
    let collect = |keep: &dyn Fn(i64) -> bool| ArmSet {
        vertices: (0..=horizon).map(|p| frame.vertex_at(p)).filter(|v| keep(n.value(v))).collect(),
        tail: keep(n.tail(&frame.ray)),
        horizon: horizon - frame.arm.len(),
        ray: frame.ray.clone(),
    };
    Ok(DInfinityType { kind, t: collect(&|x| x == 2), l: collect(&|x| x != 0) })
}

/// An isomorphism class of indecomposables, stored through a representative.
#[derive(Clone, Debug)]
pub struct IsoClass<K: Field> {
    pub representative: Representation<K>,
    pub dimension: RootVector,
    pub dinfty: Option<DInfinityType>,
}

impl<K: Field> IsoClass<K> {
    /// `T`: vertices labelled 2 anywhere in the window.
    pub fn t_set(&self) -> Vec<String> {
        self.labelled(|x| x == 2)
    }

    pub fn support(&self) -> Vec<String> {
        self.labelled(|x| x != 0)
    }

    fn labelled(&self, keep: impl Fn(i64) -> bool) -> Vec<String> {
        self.representative.window().vertices().iter().filter(|v| keep(self.dimension.value(v))).cloned().collect()
    }
}

/// Classes supported in a window with the nonzero-hom relation among them.
#[derive(Clone, Debug)]
pub struct OrderWindow<K: Field> {
    pub spec: Arc<QuiverSpec>,
    pub depth: usize,
    pub classes: Vec<IsoClass<K>>,
    window: Arc<Window>,
    adjacency: Vec<Vec<bool>>,
    reach: Vec<Vec<bool>>,
}

/// Enumerate classes, realize them, and record which pairs admit a nonzero
/// map. Representatives all live on the window of ray depth `depth + 1`.
pub fn build_order_window<K: Field>(field: &K, spec: &Arc<QuiverSpec>, depth: usize) -> Result<OrderWindow<K>> {
    let roots = enumerate_positive_roots(spec, depth)?;
    let window = Window::full(spec.clone(), depth + 1);
    let dinf = DInfinityFrame::of(spec).is_ok();
    let mut classes = Vec::with_capacity(roots.len());
    for n in roots {
        let rep = extend_to(&indecomposable_from_root(field, &n)?, &window)?;
        let dinfty = if dinf { Some(dinfty_type_of(&n)?) } else { None };
        classes.push(IsoClass { representative: rep, dimension: n, dinfty });
    }
    let m = classes.len();
    let mut adjacency = vec![vec![false; m]; m];
    for a in 0..m {
        for b in 0..m {
            if a != b {
                let (x, y) = (&classes[a].representative, &classes[b].representative);
                adjacency[a][b] = !hom_components(x, y).is_empty();
            }
        }
    }
    let reach = closure(&adjacency);
    Ok(OrderWindow { spec: spec.clone(), depth, classes, window, adjacency, reach })
}

fn closure(adj: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let m = adj.len();
    let mut reach = vec![vec![false; m]; m];
    for (s, row) in reach.iter_mut().enumerate() {
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for v in 0..m {
                if adj[u][v] && !row[v] {
                    row[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    reach
}

/// Outcome of the acyclicity check; `cycle` lists class indices along a
/// closed walk of nonzero maps when the check fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WellFounded {
    pub acyclic: bool,
    pub cycle: Option<Vec<usize>>,
}

impl<K: Field> OrderWindow<K> {
    /// The window all representatives live on.
    pub fn window(&self) -> &Arc<Window> {
        &self.window
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// A nonzero map from class `a` to class `b` exists.
    pub fn adjacency(&self, a: usize, b: usize) -> bool {
        self.adjacency[a][b]
    }

    /// `a > b` in the transitive closure.
    pub fn greater(&self, a: usize, b: usize) -> bool {
        self.reach[a][b]
    }

    pub fn class_of(&self, n: &RootVector) -> Option<usize> {
        self.classes.iter().position(|c| &c.dimension == n)
    }

    pub fn graph(&self) -> DiGraph<usize, ()> {
        let mut g = DiGraph::new();
        let nodes: Vec<NodeIndex> = (0..self.len()).map(|i| g.add_node(i)).collect();
        for a in 0..self.len() {
            for b in 0..self.len() {
                if self.adjacency[a][b] {
                    g.add_edge(nodes[a], nodes[b], ());
                }
            }
        }
        g
    }

    /// Classes from smallest to largest: a topological order of the reversed
    /// hom digraph, ties broken by dimension vector.
    pub fn linear_extension(&self) -> Result<Vec<usize>> {
        let m = self.len();
        let keys: Vec<Vec<i64>> = self.classes.iter().map(|c| c.dimension.on(self.window.vertices().iter())).collect();
        let mut out_deg: Vec<usize> = (0..m).map(|a| (0..m).filter(|&b| self.adjacency[a][b]).count()).collect();
        let mut ready: BTreeSet<(Vec<i64>, usize)> =
            (0..m).filter(|&a| out_deg[a] == 0).map(|a| (keys[a].clone(), a)).collect();
        let mut order = Vec::with_capacity(m);
        while let Some(first) = ready.pop_first() {
            let b = first.1;
            order.push(b);
            for a in 0..m {
                if self.adjacency[a][b] {
                    out_deg[a] -= 1;
                    if out_deg[a] == 0 {
                        ready.insert((keys[a].clone(), a));
                    }
                }
            }
        }
        if order.len() != m {
            return Err(Error::OrderCycle);
        }
        Ok(order)
    }

    /// DOT text of the Hasse diagram, larger classes on top.
    pub fn hasse_dot(&self) -> Result<String> {
        let g = self.graph();
        let topo = toposort(&g, None).map_err(|_| Error::OrderCycle)?;
        let (list, revmap) = petgraph::algo::tred::dag_to_toposorted_adjacency_list::<_, u32>(&g, &topo);
        let (reduced, _) = petgraph::algo::tred::dag_transitive_reduction_closure::<_, u32>(&list);
        let mut edges = Vec::new();
        for u in 0..topo.len() {
            for v in petgraph::visit::IntoNeighbors::neighbors(&reduced, u as u32) {
                let (a, b) = (g[topo[u]], g[topo[v as usize]]);
                edges.push((a, b));
            }
        }
        debug_assert_eq!(revmap.len(), self.len());
        edges.sort();
        let mut dot = format!("digraph order {{\n  // window depth {}\n", self.depth);
        for (i, c) in self.classes.iter().enumerate() {
            let label = match &c.dinfty {
                Some(t) => format!("{} [{}]", c.dimension, t.kind),
                None => c.dimension.to_string(),
            };
            dot.push_str(&format!("  c{i} [label=\"{}\"];\n", label.replace('"', "\\\"")));
        }
        for (a, b) in edges {
            dot.push_str(&format!("  c{a} -> c{b};\n"));
        }
        dot.push_str("}\n");
        Ok(dot)
    }
}

pub fn check_well_founded<K: Field>(w: &OrderWindow<K>) -> WellFounded {
    let g = w.graph();
    if toposort(&g, None).is_ok() {
        return WellFounded { acyclic: true, cycle: None };
    }
    let scc = tarjan_scc(&g).into_iter().find(|c| c.len() > 1).expect("a cyclic graph has a nontrivial component");
    let inside: BTreeSet<usize> = scc.iter().map(|n| g[*n]).collect();
    let start = *inside.iter().next().unwrap();
    // breadth-first back to the start inside the component
    let mut parent = vec![usize::MAX; w.len()];
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &v in &inside {
            if !w.adjacency[u][v] {
                continue;
            }
            if v == start {
                let mut cycle = vec![u];
                let mut x = u;
                while x != start {
                    x = parent[x];
                    cycle.push(x);
                }
                cycle.reverse();
                return WellFounded { acyclic: false, cycle: Some(cycle) };
            }
            if parent[v] == usize::MAX {
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    unreachable!("a strongly connected component of size two or more has a cycle through each vertex")
}

/// How a nonzero non-invertible map between indecomposables factors.
#[derive(Clone, Debug)]
pub enum Factorization<K: Field> {
    Injective,
    Surjective,
    /// `f = h . g` with `g` onto and `h` into an indecomposable summand of
    /// the image.
    Through {
        g: Box<Morphism<K>>,
        h: Box<Morphism<K>>,
    },
}

pub fn factor_nontrivial<K: Field>(f: &Morphism<K>) -> Result<Factorization<K>> {
    if f.is_zero() || f.is_isomorphism() {
        return Err(Error::TrivialMorphism);
    }
    if f.is_injective() {
        return Ok(Factorization::Injective);
    }
    if f.is_surjective() {
        return Ok(Factorization::Surjective);
    }
    let sq = subquotient(f);
    let d = decompose(&sq.image);
    let x = d.summands[0].clone();
    // columns of the first summand inside the direct sum, and the matching
    // rows of the inverse witness
    let mut embed = Vec::new();
    let mut project = Vec::new();
    for (i, c) in d.witness.comps.iter().enumerate() {
        let dx = x.dims()[i];
        embed.push(c.col_range(0, dx));
        let inv = if c.rows() == 0 {
            c.clone()
        } else {
            c.inverse().ok_or_else(|| Error::AuditFailure("decomposition witness is singular".into()))?
        };
        project.push(inv.row_range(0, dx));
    }
    let g_comps = sq.corestriction.comps.iter().zip(&project).map(|(c, p)| p.mul(c)).collect();
    let h_comps = sq.image_inclusion.comps.iter().zip(&embed).map(|(i, e)| i.mul(e)).collect();
    let g = Morphism::new(f.source.clone(), x.clone(), g_comps)?;
    let h = Morphism::new(x, f.target.clone(), h_comps)?;
    Ok(Factorization::Through { g: Box::new(g), h: Box::new(h) })
}
