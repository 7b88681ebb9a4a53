use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use super::{Materialized, Multiplicity, Orientation, QuiverSpec, Subquiver};
use crate::error::{Error, Result};

/// Result of the eventual-outwardness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outwardness {
    pub outward: bool,
    /// The first ray whose tail points back toward the core.
    pub witness: Option<String>,
}

/// Rays are the only infinite journeys, so a spec is eventually outward
/// exactly when no ray tail points inward.
pub fn is_eventually_outward(spec: &QuiverSpec) -> Outwardness {
    let witness = spec.rays.iter().find(|r| r.tail == Orientation::In).map(|r| r.id.clone());
    Outwardness { outward: witness.is_none(), witness }
}

/// Core vertices lying on a cycle or on a path between cycles.
pub fn two_core(spec: &QuiverSpec) -> BTreeSet<String> {
    let m = spec.materialize(0);
    let mut degree = vec![0usize; m.vertices.len()];
    for &(_, s, t) in &m.arrows {
        degree[s] += 1;
        degree[t] += 1;
    }
    let adj = m.adjacency();
    let mut alive = vec![true; m.vertices.len()];
    let mut queue: VecDeque<usize> = (0..m.vertices.len()).filter(|&v| degree[v] <= 1).collect();
    while let Some(v) = queue.pop_front() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &w in &adj[v] {
            if alive[w] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    queue.push_back(w);
                }
            }
        }
    }
    (0..m.vertices.len()).filter(|&v| alive[v]).map(|v| m.vertices[v].clone()).collect()
}

/// Repeatedly remove degree-one vertices outside `keep`.
fn prune_leaves(m: &Materialized, keep: &HashSet<usize>, alive: &mut [bool]) {
    let adj = m.adjacency();
    let mut degree: Vec<usize> = (0..m.vertices.len()).map(|v| adj[v].iter().filter(|&&w| alive[w]).count()).collect();
    let mut queue: VecDeque<usize> =
        (0..m.vertices.len()).filter(|&v| alive[v] && degree[v] <= 1 && !keep.contains(&v)).collect();
    while let Some(v) = queue.pop_front() {
        if !alive[v] || keep.contains(&v) || degree[v] > 1 {
            continue;
        }
        alive[v] = false;
        for &w in &adj[v] {
            if alive[w] {
                degree[w] -= 1;
                if degree[w] <= 1 && !keep.contains(&w) {
                    queue.push_back(w);
                }
            }
        }
    }
}

/// The smallest full subquiver containing `atleast` that meets every
/// component in one connected piece and contains every cycle.
pub fn finite_retraction(spec: &QuiverSpec, atleast: &Subquiver) -> Result<Subquiver> {
    if let Some(c) = spec.components().iter().find(|c| c.multiplicity == Multiplicity::Omega) {
        return Err(Error::NoFiniteRetraction(c.vertices[0].clone()));
    }
    for v in &atleast.vertices {
        spec.parse_vertex(v)?;
    }
    let depth = spec.max_depth(&atleast.vertices);
    let m = spec.materialize(depth);
    let index = m.index();
    let cyclic = two_core(spec);
    let mut keep: HashSet<usize> = atleast.vertices.iter().map(|v| index[v.as_str()]).collect();
    keep.extend(cyclic.iter().map(|v| index[v.as_str()]));
    for (c, comp) in spec.components().iter().enumerate() {
        let touched = keep.iter().any(|&v| spec.component_of_name(&m.vertices[v]).ok() == Some(c));
        if !touched {
            keep.insert(index[comp.vertices[0].as_str()]);
        }
    }
    let mut alive = vec![true; m.vertices.len()];
    prune_leaves(&m, &keep, &mut alive);
    Subquiver::full(spec, (0..m.vertices.len()).filter(|&v| alive[v]).map(|v| m.vertices[v].clone()))
}

/// Check that a subquiver is a retraction: full, exactly one connected piece
/// per component, and containing every cycle.
pub fn is_retraction(spec: &QuiverSpec, sub: &Subquiver) -> Result<()> {
    if let Some(c) = spec.components().iter().find(|c| c.multiplicity == Multiplicity::Omega) {
        return Err(Error::NoFiniteRetraction(c.vertices[0].clone()));
    }
    if !sub.is_full(spec)? {
        return Err(Error::NotARetraction("subquiver is not full".into()));
    }
    for v in two_core(spec) {
        if !sub.contains(&v) {
            return Err(Error::NotARetraction(format!("cycle vertex `{v}` is missing")));
        }
    }
    let pieces = connected_pieces(spec, &sub.vertices)?;
    let mut per_component = vec![0usize; spec.components().len()];
    for piece in &pieces {
        per_component[spec.component_of_name(&piece[0])?] += 1;
    }
    if let Some(c) = per_component.iter().position(|&n| n != 1) {
        return Err(Error::NotARetraction(format!(
            "component of `{}` meets the subquiver in {} pieces",
            spec.components()[c].vertices[0],
            per_component[c]
        )));
    }
    Ok(())
}

/// Connected components of the full subquiver on a vertex set.
pub(crate) fn connected_pieces(spec: &QuiverSpec, vertices: &[String]) -> Result<Vec<Vec<String>>> {
    let set: HashSet<&str> = vertices.iter().map(String::as_str).collect();
    let mut seen: HashSet<String> = HashSet::new();
    let mut pieces = Vec::new();
    for v in vertices {
        if seen.contains(v) {
            continue;
        }
        let mut piece = vec![v.clone()];
        seen.insert(v.clone());
        let mut queue = VecDeque::from([v.clone()]);
        while let Some(x) = queue.pop_front() {
            for inc in spec.incident(&x)? {
                if set.contains(inc.other.as_str()) && seen.insert(inc.other.clone()) {
                    piece.push(inc.other.clone());
                    queue.push_back(inc.other);
                }
            }
        }
        piece.sort();
        pieces.push(piece);
    }
    Ok(pieces)
}

/// Connected vertex sets of size at most `max` (each exactly once).
pub(crate) fn connected_subsets(adj: &[Vec<usize>], members: &[usize], max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if max == 0 {
        return out;
    }
    let allowed: HashSet<usize> = members.iter().copied().collect();
    fn extend(
        adj: &[Vec<usize>],
        allowed: &HashSet<usize>,
        sub: &mut Vec<usize>,
        ext: Vec<usize>,
        root: usize,
        max: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        out.push(sub.clone());
        if sub.len() == max {
            return;
        }
        let mut ext = ext;
        while let Some(w) = ext.pop() {
            let closed: HashSet<usize> = sub.iter().flat_map(|&s| adj[s].iter().copied().chain([s])).collect();
            let mut next = ext.clone();
            for &u in &adj[w] {
                if u > root && allowed.contains(&u) && !closed.contains(&u) && !next.contains(&u) && u != w {
                    next.push(u);
                }
            }
            sub.push(w);
            extend(adj, allowed, sub, next, root, max, out);
            sub.pop();
        }
    }
    for &v in members {
        let ext: Vec<usize> = adj[v]
            .iter()
            .copied()
            .filter(|&u| u > v && allowed.contains(&u))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        extend(adj, &allowed, &mut vec![v], ext, v, max, &mut out);
    }
    out
}

/// Every finite full subquiver with at most `max_vertices` vertices that
/// meets each component in at most one connected piece, rays materialized to
/// depth `max_vertices`, sorted by vertex ids.
pub fn enumerate_ic_subquivers(spec: &QuiverSpec, max_vertices: usize) -> Vec<Subquiver> {
    let m = spec.materialize(max_vertices);
    let adj = m.adjacency();
    let mut per_component: Vec<Vec<Vec<usize>>> = Vec::new();
    for c in 0..spec.components().len() {
        let members: Vec<usize> =
            (0..m.vertices.len()).filter(|&v| spec.component_of_name(&m.vertices[v]).ok() == Some(c)).collect();
        per_component.push(connected_subsets(&adj, &members, max_vertices));
    }
    let mut out: Vec<Vec<String>> = Vec::new();
    fn combine(
        per: &[Vec<Vec<usize>>],
        c: usize,
        budget: usize,
        acc: &mut Vec<usize>,
        names: &[String],
        out: &mut Vec<Vec<String>>,
    ) {
        if c == per.len() {
            let mut ids: Vec<String> = acc.iter().map(|&v| names[v].clone()).collect();
            ids.sort();
            out.push(ids);
            return;
        }
        combine(per, c + 1, budget, acc, names, out);
        for set in &per[c] {
            if set.len() <= budget {
                let n = acc.len();
                acc.extend(set);
                combine(per, c + 1, budget - set.len(), acc, names, out);
                acc.truncate(n);
            }
        }
    }
    combine(&per_component, 0, max_vertices, &mut Vec::new(), &m.vertices, &mut out);
    out.sort();
    let arrows_of = |ids: &[String]| -> Vec<String> {
        let set: HashSet<&str> = ids.iter().map(String::as_str).collect();
        let mut arrows: Vec<String> = m
            .arrows
            .iter()
            .filter(|(_, s, t)| set.contains(m.vertices[*s].as_str()) && set.contains(m.vertices[*t].as_str()))
            .map(|(a, _, _)| a.clone())
            .collect();
        arrows.sort();
        arrows
    };
    out.into_iter().map(|ids| Subquiver { arrows: arrows_of(&ids), vertices: ids }).collect()
}

/// The arrows from `v` to the nearest vertex of `retraction`, in walking
/// order; empty when `v` already lies in it.
pub fn closest_retraction_path(spec: &QuiverSpec, retraction: &Subquiver, v: &str) -> Result<Vec<String>> {
    Ok(closest_in(spec, &retraction.vertices, v)?.1)
}

/// Nearest vertex of a finite set and the arrow path leading to it.
pub(crate) fn closest_in(spec: &QuiverSpec, set: &[String], v: &str) -> Result<(String, Vec<String>)> {
    spec.parse_vertex(v)?;
    let targets: HashSet<&str> = set.iter().map(String::as_str).collect();
    let limit = spec.max_depth(set.iter()).max(spec.max_depth([&v.to_string()])) + spec.vertices.len() + 2;
    let mut parent: HashMap<String, (String, String)> = HashMap::new();
    let mut dist: HashMap<String, usize> = HashMap::from([(v.to_string(), 0)]);
    let mut queue = VecDeque::from([v.to_string()]);
    while let Some(x) = queue.pop_front() {
        if targets.contains(x.as_str()) {
            let mut path = Vec::new();
            let mut cur = x.clone();
            while let Some((prev, arrow)) = parent.get(&cur) {
                path.push(arrow.clone());
                cur = prev.clone();
            }
            path.reverse();
            return Ok((x, path));
        }
        if dist[&x] >= limit {
            continue;
        }
        for inc in spec.incident(&x)? {
            if !dist.contains_key(&inc.other) {
                dist.insert(inc.other.clone(), dist[&x] + 1);
                parent.insert(inc.other.clone(), (x.clone(), inc.arrow));
                queue.push_back(inc.other);
            }
        }
    }
    Err(Error::NotARetraction(format!("`{v}` is not connected to the subquiver")))
}
