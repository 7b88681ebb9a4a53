use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use super::{Morphism, Representation, Window};
use crate::error::{Error, Result};
use crate::linalg::{echelon_pivot_rows, Field, Matrix};
use crate::quiver::retraction::closest_in;
use crate::quiver::{is_retraction, Subquiver};
use crate::roots::RootVector;

/// Continue a representation to a larger window: every new vertex copies the
/// space of its closest window vertex and new arrows act as identities.
pub fn extend_to<K: Field>(v: &Representation<K>, target: &Arc<Window>) -> Result<Representation<K>> {
    let spec = v.window.spec();
    if spec != target.spec() {
        return Err(Error::WindowMismatch);
    }
    if v.window == *target {
        return Ok(v.clone());
    }
    let source = &v.window;
    let met: BTreeSet<usize> = source.vertices().iter().filter_map(|x| spec.component_of_name(x).ok()).collect();
    // window index in `source` of the vertex each target vertex copies
    let mut origin: Vec<Option<usize>> = Vec::with_capacity(target.len());
    for u in target.vertices() {
        if let Some(i) = source.vertex_index(u) {
            origin.push(Some(i));
        } else if met.contains(&spec.component_of_name(u)?) {
            let (c, _) = closest_in(spec, source.vertices(), u)?;
            origin.push(source.vertex_index(&c));
        } else {
            origin.push(None);
        }
    }
    let dims: Vec<usize> = origin.iter().map(|o| o.map_or(0, |i| v.dims[i])).collect();
    let f = &v.field;
    let mut maps = Vec::with_capacity(target.arrows().len());
    for a in target.arrows() {
        if let Some(k) = source.arrow_index(&a.id) {
            maps.push(v.maps[k].clone());
            continue;
        }
        match (origin[a.source], origin[a.target]) {
            (None, None) => maps.push(Matrix::zeros(f, 0, 0)),
            (Some(s), Some(t)) if s == t => maps.push(Matrix::identity(f, v.dims[s])),
            (Some(s), Some(t)) if v.dims[s] == 0 && v.dims[t] == 0 => maps.push(Matrix::zeros(f, 0, 0)),
            _ => {
                return Err(Error::FleiIncoherent(format!(
                    "arrow `{}` joins vertices with different closest window vertices",
                    a.id
                )))
            }
        }
    }
    Representation::new(f, target.clone(), dims, maps)
}

/// Restrict to a retraction on which the representation is supported: every
/// arrow outside the retraction must act invertibly.
pub fn functor_restrict<K: Field>(v: &Representation<K>, retraction: &Subquiver) -> Result<Representation<K>> {
    let spec = v.window.spec().clone();
    is_retraction(&spec, retraction)?;
    let mut union: Vec<String> = v.window.vertices().to_vec();
    union.extend(retraction.vertices.iter().cloned());
    let big = Window::on(spec.clone(), union)?;
    let v = extend_to(v, &big)?;
    for (a, m) in big.arrows().iter().zip(&v.maps) {
        let inside = retraction.contains(&big.vertices()[a.source]) && retraction.contains(&big.vertices()[a.target]);
        if !inside && !m.is_invertible() {
            return Err(Error::NotSupportedOnRetraction(a.id.clone()));
        }
    }
    let small = Window::on(spec, retraction.vertices.iter().cloned())?;
    let dims = small.vertices().iter().map(|x| v.dims[big.vertex_index(x).unwrap()]).collect();
    let maps = small.arrows().iter().map(|a| v.maps[big.arrow_index(&a.id).unwrap()].clone()).collect();
    Representation::new(&v.field, small, dims, maps)
}

/// Extend a representation living on a retraction to the window of all
/// vertices within `depth` steps of it.
pub fn functor_extend<K: Field>(v: &Representation<K>, depth: usize) -> Result<Representation<K>> {
    let spec = v.window.spec().clone();
    is_retraction(&spec, &v.window.subquiver())?;
    let mut dist: HashMap<String, usize> = v.window.vertices().iter().map(|x| (x.clone(), 0)).collect();
    let mut queue: VecDeque<String> = v.window.vertices().iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        if d == depth {
            continue;
        }
        for inc in spec.incident(&x)? {
            if !dist.contains_key(&inc.other) {
                dist.insert(inc.other.clone(), d + 1);
                queue.push_back(inc.other);
            }
        }
    }
    let window = Window::on(spec, dist.into_keys())?;
    extend_to(v, &window)
}

/// Kernel, image and cokernel of a morphism together with the canonical maps
/// between them. Subspaces use bases in reduced column echelon form.
#[derive(Clone, Debug)]
pub struct Subquotient<K: Field> {
    pub kernel: Representation<K>,
    pub image: Representation<K>,
    pub cokernel: Representation<K>,
    pub kernel_inclusion: Morphism<K>,
    pub image_inclusion: Morphism<K>,
    pub corestriction: Morphism<K>,
    pub cokernel_projection: Morphism<K>,
}

pub fn subquotient<K: Field>(m: &Morphism<K>) -> Subquotient<K> {
    let (v, w) = (&m.source, &m.target);
    let f = &v.field;
    let kernels: Vec<Matrix<K>> = m.comps.iter().map(Matrix::kernel).collect();
    let images: Vec<Matrix<K>> = m.comps.iter().map(Matrix::image).collect();
    let kernel = v.restrict_to(&kernels);
    let image = w.restrict_to(&images);
    // cokernel coordinates live on the non-pivot rows of each image basis
    let mut sections = Vec::new();
    let mut quotients = Vec::new();
    for (i, im) in images.iter().enumerate() {
        let d = w.dims[i];
        let pivots = echelon_pivot_rows(im);
        let free: Vec<usize> = (0..d).filter(|r| !pivots.contains(r)).collect();
        let e_n = Matrix::identity(f, d).select_cols(&free);
        let e_p = Matrix::identity(f, d).select_cols(&pivots);
        let q = e_n.transpose().sub(&im.select_rows(&free).mul(&e_p.transpose()));
        sections.push(e_n);
        quotients.push(q);
    }
    let cdims = quotients.iter().map(|q| q.rows()).collect();
    let cmaps = w
        .window
        .arrows
        .iter()
        .zip(&w.maps)
        .map(|(a, wa)| quotients[a.target].mul(wa).mul(&sections[a.source]))
        .collect();
    let cokernel = Representation::from_parts_unchecked(f, w.window.clone(), cdims, cmaps);
    let corestriction = m.comps.iter().zip(&images).map(|(c, im)| im.echelon_coords(c)).collect();
    Subquotient {
        kernel_inclusion: Morphism { source: kernel.clone(), target: v.clone(), comps: kernels },
        image_inclusion: Morphism { source: image.clone(), target: w.clone(), comps: images },
        corestriction: Morphism { source: v.clone(), target: image.clone(), comps: corestriction },
        cokernel_projection: Morphism { source: w.clone(), target: cokernel.clone(), comps: quotients },
        kernel,
        image,
        cokernel,
    }
}

/// Dimension vector of the representation continued by identities to the
/// whole quiver.
pub fn dimension_vector<K: Field>(v: &Representation<K>) -> Result<RootVector> {
    let spec = v.window.spec().clone();
    let depth = spec.max_depth(v.window.vertices().iter());
    let full = Window::full(spec.clone(), depth + 1);
    let mut union: Vec<String> = full.vertices().to_vec();
    union.extend(v.window.vertices().iter().cloned());
    let big = Window::on(spec.clone(), union)?;
    let e = extend_to(v, &big)?;
    let mut values = std::collections::BTreeMap::new();
    let mut tails = std::collections::BTreeMap::new();
    for (x, &d) in big.vertices().iter().zip(&e.dims) {
        values.insert(x.clone(), d as i64);
    }
    for ray in &spec.rays {
        let far = crate::quiver::ray_vertex(&ray.id, depth + 1);
        tails.insert(ray.id.clone(), e.dims[big.vertex_index(&far).unwrap()] as i64);
    }
    RootVector::new(spec, values, tails)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rationals;
    use crate::quiver::QuiverSpec;
    use crate::rep::tests::{a2_reversed, rep_from};

    fn a_inf() -> Arc<QuiverSpec> {
        Arc::new(QuiverSpec::builder("Ainf").vertex("0").ray("r", "0", "", 'o').build().unwrap())
    }

    #[test]
    fn extend_then_restrict_round_trips() {
        let spec = a_inf();
        let w = Window::full(spec.clone(), 1);
        // 0 -> r#1 with the identity on a plane
        let v = rep_from(&w, &[2, 2], &[&[&[1, 0], &[0, 1]]]);
        let big = functor_extend(&v, 3).unwrap();
        assert_eq!(big.dims(), &[2, 2, 2, 2, 2]);
        assert!(big.maps().iter().all(Matrix::is_identity));
        let back = functor_restrict(&big, &w.subquiver()).unwrap();
        assert_eq!(back, v);
        let single = Subquiver::full(&spec, ["0"]).unwrap();
        assert_eq!(functor_restrict(&v, &single).unwrap().dims(), &[2]);
    }

    #[test]
    fn restrict_needs_support() {
        let spec = a_inf();
        let w = Window::full(spec.clone(), 1);
        let v = rep_from(&w, &[1, 1], &[&[]]);
        let single = Subquiver::full(&spec, ["0"]).unwrap();
        assert_eq!(functor_restrict(&v, &single).unwrap_err().code(), "not-supported-on-retraction");
    }

    #[test]
    fn subquotient_of_projection() {
        let w = a2_reversed();
        let v = rep_from(&w, &[1, 1], &[&[&[1]]]);
        let l2 = rep_from(&w, &[0, 1], &[&[]]);
        let f = Rationals;
        let p = Morphism::new(v.clone(), l2, vec![Matrix::zeros(&f, 0, 1), Matrix::identity(&f, 1)]).unwrap();
        let s = subquotient(&p);
        assert_eq!(s.kernel.dims(), &[1, 0]);
        assert_eq!(s.image.dims(), &[0, 1]);
        assert!(s.cokernel.is_zero());
        for m in [&s.kernel_inclusion, &s.image_inclusion, &s.corestriction, &s.cokernel_projection] {
            Morphism::new(m.source.clone(), m.target.clone(), m.comps.clone()).unwrap();
        }
        let i =
            Morphism::new(s.kernel.clone(), v.clone(), vec![Matrix::identity(&f, 1), Matrix::zeros(&f, 1, 0)]).unwrap();
        let q = subquotient(&i);
        assert_eq!(q.cokernel.dims(), &[0, 1]);
    }
}
