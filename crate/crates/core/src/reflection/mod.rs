//! Sink and source reflections of quivers and representations, and the
//! reduction of eventually outward D-infinity orientations to the mountain.

mod mountain;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use mountain::{is_mountain, mountainize, DInfinityFrame};

use crate::error::{Error, Result};
use crate::linalg::{echelon_pivot_rows, Field, Matrix};
use crate::quiver::{QuiverSpec, VertexRef};
use crate::rep::{Morphism, Representation, Window};

/// `Plus` reflects at a sink, `Minus` at a source.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReflectionStep {
    pub vertex: String,
    pub polarity: Polarity,
}

/// Reverse every arrow at a sink or source `i`.
pub fn reflect_quiver(spec: &QuiverSpec, i: &str) -> Result<QuiverSpec> {
    if !spec.is_sink(i)? && !spec.is_source(i)? {
        return Err(Error::NotSinkOrSource(i.to_string()));
    }
    let mut arrows = spec.arrows.clone();
    for a in &mut arrows {
        if a.source == i || a.target == i {
            std::mem::swap(&mut a.source, &mut a.target);
        }
    }
    let mut rays = spec.rays.clone();
    let flip = |ray: &mut crate::quiver::RaySpec, k: usize| {
        while ray.prefix.len() < k {
            ray.prefix.push(ray.tail);
        }
        ray.prefix[k - 1] = ray.prefix[k - 1].flip();
    };
    match spec.parse_vertex(i)? {
        VertexRef::Core(_) => {
            for ray in rays.iter_mut().filter(|r| r.attach == i) {
                flip(ray, 1);
            }
        }
        VertexRef::Ray(r, d) => {
            flip(&mut rays[r], d);
            flip(&mut rays[r], d + 1);
        }
    }
    QuiverSpec::from_parts(&spec.name, spec.vertices.clone(), arrows, rays, spec.multiplicity.clone()).validate()
}

/// Apply reflection steps in order, checking each polarity.
pub fn apply_steps(spec: &QuiverSpec, steps: &[ReflectionStep]) -> Result<QuiverSpec> {
    let mut cur = spec.clone();
    for s in steps {
        let ok = match s.polarity {
            Polarity::Plus => cur.is_sink(&s.vertex)?,
            Polarity::Minus => cur.is_source(&s.vertex)?,
        };
        if !ok {
            return Err(match s.polarity {
                Polarity::Plus => Error::NotSink(s.vertex.clone()),
                Polarity::Minus => Error::NotSource(s.vertex.clone()),
            });
        }
        cur = reflect_quiver(&cur, &s.vertex)?;
    }
    Ok(cur)
}

/// Window index of `i` and the window arrows at it, after checking that the
/// window holds every arrow of the quiver incident to `i`.
fn local_data<K: Field>(v: &Representation<K>, i: &str) -> Result<(usize, Vec<usize>)> {
    let spec = v.spec();
    let idx = v.window().vertex_index(i).ok_or_else(|| Error::UnknownVertex(i.to_string()))?;
    let mut arrows = Vec::new();
    for inc in spec.incident(i)? {
        let a = v.window().arrow_index(&inc.arrow).ok_or_else(|| Error::WindowTooShallow(i.to_string()))?;
        arrows.push(a);
    }
    arrows.sort_unstable();
    Ok((idx, arrows))
}

fn reflected_window<K: Field>(v: &Representation<K>, i: &str) -> Result<Arc<Window>> {
    let spec = reflect_quiver(v.spec(), i)?;
    Window::on(Arc::new(spec), v.window().vertices().iter().cloned())
}

/// Neighbours across the given arrows and block offsets in their sum.
fn blocks<K: Field>(v: &Representation<K>, arrows: &[usize], idx: usize) -> (Vec<usize>, Vec<usize>) {
    let mut others = Vec::new();
    let mut offsets = vec![0];
    for &a in arrows {
        let w = &v.window().arrows()[a];
        let o = if w.source == idx { w.target } else { w.source };
        others.push(o);
        offsets.push(offsets.last().unwrap() + v.dims[o]);
    }
    (others, offsets)
}

/// Kernel of the total map into the sink, as a basis of the direct sum of
/// the neighbouring spaces.
fn sink_kernel<K: Field>(v: &Representation<K>, arrows: &[usize], idx: usize) -> Matrix<K> {
    let maps: Vec<&Matrix<K>> = arrows.iter().map(|&a| &v.maps[a]).collect();
    Matrix::hstack(&v.field, v.dims[idx], &maps).kernel()
}

/// Image of the total map out of the source and the quotient onto the
/// coordinates off its pivot rows, with the section back.
fn source_cokernel<K: Field>(
    v: &Representation<K>,
    arrows: &[usize],
    idx: usize,
    total: usize,
) -> (Matrix<K>, Matrix<K>) {
    let f = &v.field;
    let maps: Vec<&Matrix<K>> = arrows.iter().map(|&a| &v.maps[a]).collect();
    let image = Matrix::vstack(f, v.dims[idx], &maps).image();
    let pivots = echelon_pivot_rows(&image);
    let free: Vec<usize> = (0..total).filter(|r| !pivots.contains(r)).collect();
    let e_n = Matrix::identity(f, total).select_cols(&free);
    let e_p = Matrix::identity(f, total).select_cols(&pivots);
    let q = e_n.transpose().sub(&image.select_rows(&free).mul(&e_p.transpose()));
    (q, e_n)
}

/// The sink reflection functor: the space at `i` becomes the kernel of the
/// sum of the incoming maps, and the reversed arrows are the projections.
pub fn phi_plus<K: Field>(v: &Representation<K>, i: &str) -> Result<Representation<K>> {
    if !v.spec().is_sink(i)? {
        return Err(Error::NotSink(i.to_string()));
    }
    let (idx, arrows) = local_data(v, i)?;
    let window = reflected_window(v, i)?;
    let (_, offsets) = blocks(v, &arrows, idx);
    let kernel = sink_kernel(v, &arrows, idx);
    let mut dims = v.dims.clone();
    dims[idx] = kernel.cols();
    let mut maps = v.maps.clone();
    for (j, &a) in arrows.iter().enumerate() {
        maps[a] = kernel.row_range(offsets[j], offsets[j + 1]);
    }
    Representation::new(&v.field, window, dims, maps)
}

/// The source reflection functor: the space at `i` becomes the cokernel of
/// the sum of the outgoing maps.
pub fn phi_minus<K: Field>(v: &Representation<K>, i: &str) -> Result<Representation<K>> {
    if !v.spec().is_source(i)? {
        return Err(Error::NotSource(i.to_string()));
    }
    let (idx, arrows) = local_data(v, i)?;
    let window = reflected_window(v, i)?;
    let (_, offsets) = blocks(v, &arrows, idx);
    let total = *offsets.last().unwrap();
    let (q, _) = source_cokernel(v, &arrows, idx, total);
    let mut dims = v.dims.clone();
    dims[idx] = q.rows();
    let mut maps = v.maps.clone();
    for (j, &a) in arrows.iter().enumerate() {
        maps[a] = q.col_range(offsets[j], offsets[j + 1]);
    }
    Representation::new(&v.field, window, dims, maps)
}

fn block_diag_at<K: Field>(m: &Morphism<K>, others: &[usize]) -> Matrix<K> {
    let f = m.source.field();
    Matrix::block_diag(f, &others.iter().map(|&o| &m.comps[o]).collect::<Vec<_>>())
}

/// Φ⁺ on a morphism: the induced map between the kernels at `i`.
pub fn phi_plus_morphism<K: Field>(m: &Morphism<K>, i: &str) -> Result<Morphism<K>> {
    let source = phi_plus(&m.source, i)?;
    let target = phi_plus(&m.target, i)?;
    let (idx, arrows) = local_data(&m.source, i)?;
    let (others, _) = blocks(&m.source, &arrows, idx);
    let kv = sink_kernel(&m.source, &arrows, idx);
    let kw = sink_kernel(&m.target, &arrows, idx);
    let mut comps = m.comps.clone();
    comps[idx] = kw.echelon_coords(&block_diag_at(m, &others).mul(&kv));
    Morphism::new(source, target, comps)
}

/// Φ⁻ on a morphism: the induced map between the cokernels at `i`.
pub fn phi_minus_morphism<K: Field>(m: &Morphism<K>, i: &str) -> Result<Morphism<K>> {
    let source = phi_minus(&m.source, i)?;
    let target = phi_minus(&m.target, i)?;
    let (idx, arrows) = local_data(&m.source, i)?;
    let (others, offsets_v) = blocks(&m.source, &arrows, idx);
    let (_, offsets_w) = blocks(&m.target, &arrows, idx);
    let (_, section) = source_cokernel(&m.source, &arrows, idx, *offsets_v.last().unwrap());
    let (qw, _) = source_cokernel(&m.target, &arrows, idx, *offsets_w.last().unwrap());
    let mut comps = m.comps.clone();
    comps[idx] = qw.mul(&block_diag_at(m, &others)).mul(&section);
    Morphism::new(source, target, comps)
}

/// Orientation of the arrow joining two adjacent vertices, seen from `u`.
pub(crate) fn points_away(spec: &QuiverSpec, u: &str, w: &str) -> Result<bool> {
    spec.incident(u)?
        .into_iter()
        .find(|inc| inc.other == w)
        .map(|inc| inc.outgoing)
        .ok_or_else(|| Error::UnknownArrow(format!("{u}-{w}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rationals;
    use crate::quiver::Orientation;
    use crate::rep::{decompose, is_isomorphic, simple_rep};

    fn a2() -> Arc<QuiverSpec> {
        Arc::new(QuiverSpec::builder("A2").vertices(&["v1", "v2"]).arrow("a", "v1", "v2").build().unwrap())
    }

    fn rep(w: &Arc<Window>, dims: &[usize], maps: Vec<Matrix<Rationals>>) -> Representation<Rationals> {
        Representation::new(&Rationals, w.clone(), dims.to_vec(), maps).unwrap()
    }

    #[test]
    fn quiver_reflection_is_an_involution() {
        let s = a2();
        let r = reflect_quiver(&s, "v2").unwrap();
        assert!(r.is_source("v2").unwrap());
        assert_eq!(reflect_quiver(&r, "v2").unwrap(), *s);
        let ray = QuiverSpec::builder("Ainf").vertex("0").ray("r", "0", "io", 'o').build().unwrap();
        assert_eq!(reflect_quiver(&ray, "r#2").unwrap_err().code(), "not-sink-or-source");
        let r1 = reflect_quiver(&ray, "r#1").unwrap();
        assert_eq!(r1.rays[0].prefix, vec![Orientation::Out, Orientation::In]);
        assert_eq!(reflect_quiver(&r1, "r#1").unwrap(), ray);
        let attach = reflect_quiver(&ray, "0").unwrap();
        assert!(attach.rays[0].prefix.is_empty());
    }

    #[test]
    fn phi_examples_on_a2() {
        let w = Window::full(a2(), 0);
        let f = Rationals;
        let id = rep(&w, &[1, 1], vec![Matrix::identity(&f, 1)]);
        let p = phi_plus(&id, "v2").unwrap();
        assert_eq!(p.dims(), &[1, 0]);
        let l2 = simple_rep(&f, w.clone(), "v2").unwrap();
        assert!(phi_plus(&l2, "v2").unwrap().is_zero());
        let l1 = rep(&w, &[1, 0], vec![Matrix::zeros(&f, 0, 1)]);
        let m = phi_minus(&l1, "v1").unwrap();
        assert!(m.is_zero());
        assert_eq!(phi_minus(&id, "v2").unwrap_err().code(), "not-source");
        // L1 is the kernel side: v1 -> v2 with 1 -> 0 becomes dims (0, 0) at v1
        let back = phi_minus(&p, "v2").unwrap();
        assert!(is_isomorphic(&back, &id).unwrap());
    }

    #[test]
    fn dimension_formula_on_d4() {
        let s = Arc::new(
            QuiverSpec::builder("D4")
                .vertices(&["c", "x", "y", "z"])
                .arrow("a", "x", "c")
                .arrow("b", "y", "c")
                .arrow("d", "z", "c")
                .build()
                .unwrap(),
        );
        let w = Window::full(s, 0);
        let f = Rationals;
        // the (2;1,1,1) indecomposable: three lines in a plane
        let v = rep(
            &w,
            &[2, 1, 1, 1],
            vec![
                Matrix::from_i64(&f, &[&[1], &[0]]),
                Matrix::from_i64(&f, &[&[0], &[1]]),
                Matrix::from_i64(&f, &[&[1], &[1]]),
            ],
        );
        assert_eq!(decompose(&v).summands.len(), 1);
        let p = phi_plus(&v, "c").unwrap();
        assert_eq!(p.dims(), &[1, 1, 1, 1]);
        let back = phi_minus(&p, "c").unwrap();
        assert_eq!(back.window().spec(), v.window().spec());
        assert!(is_isomorphic(&back, &v).unwrap());
        let idm = Morphism::identity(&v);
        let pm = phi_plus_morphism(&idm, "c").unwrap();
        assert!(pm.is_isomorphism());
        let mm = phi_minus_morphism(&pm, "c").unwrap();
        assert!(mm.is_isomorphism());
    }

    #[test]
    fn shallow_window_is_rejected() {
        let s = Arc::new(QuiverSpec::builder("Ainf").vertex("0").ray("r", "0", "i", 'o').build().unwrap());
        let w = Window::full(s, 1);
        let v = rep(&w, &[0, 1], vec![Matrix::zeros(&Rationals, 0, 1)]);
        assert_eq!(phi_minus(&v, "r#1").unwrap_err().code(), "window-too-shallow");
    }
}
