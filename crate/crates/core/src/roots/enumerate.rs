use std::collections::BTreeMap;
use std::sync::Arc;

use super::{is_positive_definite, RootVector};
use crate::error::{Error, Result};
use crate::quiver::retraction::connected_subsets;
use crate::quiver::{analyze_shapes, ray_vertex, Multiplicity, QuiverSpec};

/// Largest label tried on finite components (the highest root of E8 has a
/// 6) and on the infinite shapes, whose roots never exceed 2.
const FINITE_BOUND: i64 = 6;
const INFINITE_BOUND: i64 = 2;

/// Positive roots seen by the window of ray depth `depth`.
///
/// These are the roots with connected support inside the window, plus, for
/// each root touching the end of a ray window, the family member that keeps
/// the boundary label forever along that ray. Multiplicity-ω components carry
/// no positive roots: a nonzero constant there has infinite Tits limit.
/// Sorted by height, then by labels in canonical vertex order.
pub fn enumerate_positive_roots(spec: &Arc<QuiverSpec>, depth: usize) -> Result<Vec<RootVector>> {
    if !is_positive_definite(spec).positive_definite {
        return Err(Error::NotPositiveDefinite);
    }
    let m = spec.materialize(depth);
    let adj = m.adjacency();
    let shapes = analyze_shapes(spec);
    // the window vertex at which each ray is cut
    let boundary: Vec<(String, String)> = spec
        .rays
        .iter()
        .map(|r| (r.id.clone(), if depth == 0 { r.attach.clone() } else { ray_vertex(&r.id, depth) }))
        .collect();
    let mut out: Vec<(i64, Vec<i64>, Vec<i64>, RootVector)> = Vec::new();
    for (c, comp) in spec.components().iter().enumerate() {
        if comp.multiplicity == Multiplicity::Omega {
            continue;
        }
        let bound = if shapes[c].class.is_infinite() { INFINITE_BOUND } else { FINITE_BOUND };
        let members: Vec<usize> =
            (0..m.vertices.len()).filter(|&v| spec.component_of_name(&m.vertices[v]).ok() == Some(c)).collect();
        for set in connected_subsets(&adj, &members, members.len()) {
            let local: BTreeMap<usize, usize> = set.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            let edges: Vec<(usize, usize)> =
                m.arrows.iter().filter_map(|(_, s, t)| Some((*local.get(s)?, *local.get(t)?))).collect();
            let mut x = vec![1i64; set.len()];
            loop {
                let q: i64 =
                    x.iter().map(|v| v * v).sum::<i64>() - edges.iter().map(|&(s, t)| x[s] * x[t]).sum::<i64>();
                if q == 1 {
                    let values: BTreeMap<String, i64> =
                        set.iter().zip(&x).map(|(&v, &val)| (m.vertices[v].clone(), val)).collect();
                    let touching: Vec<&(String, String)> =
                        boundary.iter().filter(|(_, b)| values.contains_key(b)).collect();
                    for mask in 0u32..(1 << touching.len()) {
                        let tails: BTreeMap<String, i64> = touching
                            .iter()
                            .enumerate()
                            .filter(|(j, _)| mask >> j & 1 == 1)
                            .map(|(_, (r, b))| (r.clone(), values[b]))
                            .collect();
                        let root = RootVector::new(spec.clone(), values.clone(), tails)?;
                        let labels = root.on(m.vertices.iter());
                        let tail_key = spec.rays.iter().map(|r| root.tail(&r.id)).collect();
                        out.push((labels.iter().sum(), labels, tail_key, root));
                    }
                }
                // odometer over 1..=bound
                let mut pos = 0;
                while pos < x.len() && x[pos] == bound {
                    x[pos] = 1;
                    pos += 1;
                }
                if pos == x.len() {
                    break;
                }
                x[pos] += 1;
            }
        }
    }
    out.sort_by(|a, b| (a.0, &a.1, &a.2).cmp(&(b.0, &b.1, &b.2)));
    out.dedup_by(|a, b| a.3 == b.3);
    Ok(out.into_iter().map(|t| t.3).collect())
}
