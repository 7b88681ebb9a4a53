use std::collections::HashMap;
use std::sync::Arc;

use super::{support, tits_form_limit, ExtendedInt, RootVector};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::quiver::QuiverSpec;
use crate::reflection::phi_minus;
use crate::rep::{decompose, end_dimension, Representation, Window};

/// The indecomposable FLEI representation with dimension vector `n`.
///
/// Simple and thin roots are written down directly. Otherwise the support is
/// copied into a finite quiver, sink reflections in an admissible order
/// bring `n` down to a simple root, and the source reflection functors carry
/// the simple back up. The result lives on the window one step past the
/// last explicit ray label, so identities continue it along every ray.
pub fn indecomposable_from_root<K: Field>(field: &K, n: &RootVector) -> Result<Representation<K>> {
    if !n.is_nonnegative() || tits_form_limit(n) != ExtendedInt::Finite(1) {
        return Err(Error::NotPositiveRoot(n.to_string()));
    }
    let spec = n.spec().clone();
    let depth = n.max_explicit_depth() + 1;
    let window = Window::full(spec.clone(), depth);
    let sup = support(n);
    let names: Vec<String> = sup.vertices.clone();
    let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let dims: Vec<usize> = names.iter().map(|v| n.value(v) as usize).collect();
    // arrows of the support: (window arrow index, local source, local target)
    let mut local_arrows = Vec::new();
    for (k, a) in window.arrows().iter().enumerate() {
        let (s, t) = (&window.vertices()[a.source], &window.vertices()[a.target]);
        if let (Some(&ls), Some(&lt)) = (index.get(s.as_str()), index.get(t.as_str())) {
            local_arrows.push((k, ls, lt));
        }
    }
    let local = if dims.iter().all(|&d| d == 1) {
        None
    } else {
        Some(bgp_construct(field, &dims, &local_arrows.iter().map(|&(_, s, t)| (s, t)).collect::<Vec<_>>())?)
    };
    let mut full_dims = vec![0usize; window.len()];
    for (v, &d) in names.iter().zip(&dims) {
        full_dims[window.vertex_index(v).expect("support lies in the window")] = d;
    }
    let mut maps: Vec<Matrix<K>> =
        window.arrows().iter().map(|a| Matrix::zeros(field, full_dims[a.target], full_dims[a.source])).collect();
    for (j, &(k, s, t)) in local_arrows.iter().enumerate() {
        maps[k] = match &local {
            Some(rep) => rep.maps()[j].clone(),
            None => {
                debug_assert_eq!((dims[s], dims[t]), (1, 1));
                Matrix::identity(field, 1)
            }
        };
    }
    let rep = Representation::new(field, window, full_dims, maps)?;
    if end_dimension(&rep) != 1 && decompose(&rep).summands.len() != 1 {
        return Err(Error::AuditFailure(format!("construction for {n} is decomposable")));
    }
    Ok(rep)
}

/// A finite spec on vertices `v0, v1, ...` with arrows `e0, e1, ...`.
fn finite_spec(n: usize, arrows: &[(usize, usize)]) -> Result<Arc<QuiverSpec>> {
    let names: Vec<String> = (0..n).map(|i| format!("v{i:03}")).collect();
    let mut b = QuiverSpec::builder("support");
    for v in &names {
        b = b.vertex(v);
    }
    for (j, &(s, t)) in arrows.iter().enumerate() {
        b = b.arrow(&format!("e{j:03}"), &names[s], &names[t]);
    }
    Ok(Arc::new(b.build()?))
}

fn reflect_dims(dims: &mut [i64], edges: &[(usize, usize)], i: usize) {
    let around: i64 = edges
        .iter()
        .map(|&(s, t)| {
            if s == i {
                dims[t]
            } else if t == i {
                dims[s]
            } else {
                0
            }
        })
        .sum();
    dims[i] = around - dims[i];
}

/// Indecomposable on the finite support quiver with the given dimensions;
/// its maps come back in the order of `arrows`.
fn bgp_construct<K: Field>(field: &K, dims: &[usize], arrows: &[(usize, usize)]) -> Result<Representation<K>> {
    let n = dims.len();
    let spec = finite_spec(n, arrows)?;
    let name = |i: usize| format!("v{i:03}");
    // sinks first: reverse of a topological order
    let mut indeg = vec![0usize; n];
    for &(_, t) in arrows {
        indeg[t] += 1;
    }
    let mut order = Vec::with_capacity(n);
    let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    while let Some(v) = ready.pop() {
        order.push(v);
        for &(s, t) in arrows {
            if s == v {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    ready.push(t);
                }
            }
        }
    }
    if order.len() != n {
        return Err(Error::AuditFailure("support of a positive root has an oriented cycle".into()));
    }
    order.reverse();

    let mut d: Vec<i64> = dims.iter().map(|&x| x as i64).collect();
    let mut quivers = vec![spec.clone()];
    let mut sequence = Vec::new();
    let limit = 4 * n * n + 8;
    let simple = 'search: loop {
        for &i in &order {
            if let Some(j) = simple_index(&d) {
                break 'search j;
            }
            if sequence.len() > limit {
                return Err(Error::AuditFailure("reflection search did not reach a simple root".into()));
            }
            let q = crate::reflection::reflect_quiver(quivers.last().unwrap(), &name(i))?;
            reflect_dims(&mut d, arrows, i);
            if d.iter().any(|&x| x < 0) {
                return Err(Error::AuditFailure("dimension vector left the positive cone".into()));
            }
            quivers.push(Arc::new(q));
            sequence.push(i);
        }
    };
    let top = quivers.pop().unwrap();
    let window = Window::full(top, 0);
    let mut rep = crate::rep::simple_rep(field, window, &name(simple))?;
    while let Some(i) = sequence.pop() {
        rep = phi_minus(&rep, &name(i))?;
    }
    debug_assert_eq!(rep.dims(), dims);
    // arrows were added as e000, e001, ... so the window keeps their order
    Ok(rep)
}

fn simple_index(d: &[i64]) -> Option<usize> {
    let nonzero: Vec<usize> = (0..d.len()).filter(|&i| d[i] != 0).collect();
    match nonzero.as_slice() {
        [i] if d[*i] == 1 => Some(*i),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rationals;
    use crate::rep::dimension_vector;
    use crate::roots::enumerate_positive_roots;

    #[test]
    fn every_d4_root_is_realized() {
        let d4 = Arc::new(
            QuiverSpec::builder("D4")
                .vertices(&["c", "x", "y", "z"])
                .arrow("a", "x", "c")
                .arrow("b", "c", "y")
                .arrow("d", "z", "c")
                .build()
                .unwrap(),
        );
        for r in enumerate_positive_roots(&d4, 0).unwrap() {
            let v = indecomposable_from_root(&Rationals, &r).unwrap();
            assert_eq!(dimension_vector(&v).unwrap(), r);
            assert_eq!(end_dimension(&v), 1);
        }
    }

    #[test]
    fn dinf_pattern_root() {
        let s = Arc::new(
            QuiverSpec::builder("Dinf")
                .vertices(&["k", "a", "b", "m"])
                .arrow("x", "k", "a")
                .arrow("y", "k", "b")
                .arrow("z", "k", "m")
                .ray("r", "m", "", 'o')
                .build()
                .unwrap(),
        );
        let n =
            RootVector::from_pairs(s, &[("a", 1), ("b", 1), ("k", 2), ("m", 2), ("r#1", 1), ("r#2", 1)], &[("r", 1)])
                .unwrap();
        let v = indecomposable_from_root(&Rationals, &n).unwrap();
        assert_eq!(dimension_vector(&v).unwrap(), n);
        let bad = n.add(&n).unwrap();
        assert_eq!(indecomposable_from_root(&Rationals, &bad).unwrap_err().code(), "not-positive-root");
    }
}
