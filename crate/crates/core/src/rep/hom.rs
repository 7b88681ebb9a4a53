use std::borrow::Cow;

use super::{extend_to, Morphism, Representation, Window};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};

/// Basis of `Hom(v, w)` for two representations on the same window, as
/// lists of vertex components. The basis is read off the reduced row echelon
/// form of the commutativity equations, so it is canonical.
pub(crate) fn hom_components<K: Field>(v: &Representation<K>, w: &Representation<K>) -> Vec<Vec<Matrix<K>>> {
    let f = &v.field;
    let n = v.dims.len();
    let mut offsets = Vec::with_capacity(n + 1);
    offsets.push(0);
    for i in 0..n {
        offsets.push(offsets[i] + v.dims[i] * w.dims[i]);
    }
    let unknowns = offsets[n];
    if unknowns == 0 {
        return Vec::new();
    }
    let rows: usize = v.window.arrows.iter().map(|a| w.dims[a.target] * v.dims[a.source]).sum();
    let mut eq = Matrix::zeros(f, rows, unknowns);
    let mut row = 0;
    for (idx, a) in v.window.arrows.iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let (wa, va) = (&w.maps[idx], &v.maps[idx]);
        // W_a f_s - f_t V_a = 0, entry (r, c)
        for r in 0..w.dims[t] {
            for c in 0..v.dims[s] {
                for k in 0..w.dims[s] {
                    let x = wa.get(r, k);
                    if !f.is_zero(x) {
                        let col = offsets[s] + k * v.dims[s] + c;
                        let cur = f.add(eq.get(row, col), x);
                        eq.set(row, col, cur);
                    }
                }
                for k in 0..v.dims[t] {
                    let x = va.get(k, c);
                    if !f.is_zero(x) {
                        let col = offsets[t] + r * v.dims[t] + k;
                        let cur = f.sub(eq.get(row, col), x);
                        eq.set(row, col, cur);
                    }
                }
                row += 1;
            }
        }
    }
    let kernel = eq.kernel_raw();
    (0..kernel.cols())
        .map(|j| {
            (0..n)
                .map(|i| {
                    Matrix::from_fn(f, w.dims[i], v.dims[i], |r, c| {
                        kernel.get(offsets[i] + r * v.dims[i] + c, j).clone()
                    })
                })
                .collect()
        })
        .collect()
}

type AlignedPair<'a, K> = (Cow<'a, Representation<K>>, Cow<'a, Representation<K>>);

/// Bring two representations onto a common window.
pub(crate) fn align<'a, K: Field>(v: &'a Representation<K>, w: &'a Representation<K>) -> Result<AlignedPair<'a, K>> {
    if v.field != w.field {
        return Err(Error::FieldMismatch { left: v.field.tag(), right: w.field.tag() });
    }
    if v.window == w.window {
        return Ok((Cow::Borrowed(v), Cow::Borrowed(w)));
    }
    let spec = v.window.spec();
    if spec != w.window.spec() {
        return Err(Error::WindowMismatch);
    }
    let mut union: Vec<String> = v.window.vertices().to_vec();
    union.extend(w.window.vertices().iter().cloned());
    let window = Window::on(spec.clone(), union)?;
    Ok((Cow::Owned(extend_to(v, &window)?), Cow::Owned(extend_to(w, &window)?)))
}

/// Basis of `Hom(v, w)`. Representations on different windows of one quiver
/// are first continued to the union of the windows.
pub fn hom_basis<K: Field>(v: &Representation<K>, w: &Representation<K>) -> Result<Vec<Morphism<K>>> {
    let (v, w) = align(v, w)?;
    Ok(hom_components(&v, &w)
        .into_iter()
        .map(|comps| Morphism { source: v.clone().into_owned(), target: w.clone().into_owned(), comps })
        .collect())
}

/// Dimension of `Hom(v, w)`.
pub fn hom_space<K: Field>(v: &Representation<K>, w: &Representation<K>) -> Result<usize> {
    let (v, w) = align(v, w)?;
    Ok(hom_components(&v, &w).len())
}

/// Dimension of the endomorphism algebra.
pub fn end_dimension<K: Field>(v: &Representation<K>) -> usize {
    hom_components(v, v).len()
}
