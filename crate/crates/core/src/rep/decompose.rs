use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::hom::{align, hom_components};
use super::{direct_sum, Morphism, Representation};
use crate::error::Result;
use crate::linalg::poly::min_poly;
use crate::linalg::{echelon_pivot_rows, fitting_parts, Field, FieldTag, Matrix};

/// How sure `decompose` is that each summand is indecomposable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    /// Every summand was proven local: one-dimensional endomorphisms, a
    /// trace form of rank one over the rationals, or an exhaustive search
    /// over a small finite field.
    Exhaustive,
    /// At least one summand survived only a randomized idempotent search.
    Heuristic,
}

/// A Krull-Schmidt decomposition with the isomorphism from the direct sum of
/// the summands back onto the input.
#[derive(Clone, Debug)]
pub struct Decomposition<K: Field> {
    pub summands: Vec<Representation<K>>,
    pub witness: Morphism<K>,
    pub certificate: Certificate,
}

impl<K: Field> Decomposition<K> {
    pub fn is_exact(&self) -> bool {
        self.certificate == Certificate::Exhaustive
    }
}

/// Finite fields with at most this many endomorphisms are searched
/// exhaustively.
const EXHAUSTIVE_LIMIT: u64 = 4096;
const RANDOM_DRAWS: usize = 64;
const COMBO_WIDTH: usize = 10;
const PRODUCT_WIDTH: usize = 12;

/// A split `(first, second)` given as per-vertex bases of the two parts.
type Split<K> = (Vec<Matrix<K>>, Vec<Matrix<K>>);

struct Piece<K: Field> {
    rep: Representation<K>,
    embed: Vec<Matrix<K>>,
}

enum Search<K: Field> {
    Split(Vec<Matrix<K>>, Vec<Matrix<K>>),
    Indecomposable { exact: bool },
}

pub fn decompose<K: Field>(v: &Representation<K>) -> Decomposition<K> {
    decompose_with_seed(v, 0)
}

/// Split off simple summands at sinks and sources, then repeatedly split
/// pieces along Fitting decompositions of endomorphisms.
pub fn decompose_with_seed<K: Field>(v: &Representation<K>, seed: u64) -> Decomposition<K> {
    let f = v.field.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let embed = v.dims.iter().map(|&d| Matrix::identity(&f, d)).collect();
    let mut work = vec![Piece { rep: v.clone(), embed }];
    let mut done: Vec<Piece<K>> = Vec::new();
    let mut exact = true;
    while let Some(p) = work.pop() {
        if p.rep.is_zero() {
            continue;
        }
        if p.rep.total_dim() == 1 {
            done.push(p);
            continue;
        }
        if let Some(parts) = peel(&p) {
            work.extend(parts);
            continue;
        }
        match search_split(&p.rep, &mut rng) {
            Search::Split(a, b) => {
                work.push(sub_piece(&p, &a));
                work.push(sub_piece(&p, &b));
            }
            Search::Indecomposable { exact: e } => {
                exact &= e;
                done.push(p);
            }
        }
    }
    done.sort_by(|a, b| b.rep.dims.cmp(&a.rep.dims));
    let summands: Vec<Representation<K>> = done.iter().map(|p| p.rep.clone()).collect();
    let source = direct_sum(&f, &v.window, &summands.iter().collect::<Vec<_>>()).expect("same window");
    let comps = (0..v.dims.len())
        .map(|i| Matrix::hstack(&f, v.dims[i], &done.iter().map(|p| &p.embed[i]).collect::<Vec<_>>()))
        .collect();
    Decomposition {
        summands,
        witness: Morphism { source, target: v.clone(), comps },
        certificate: if exact { Certificate::Exhaustive } else { Certificate::Heuristic },
    }
}

fn sub_piece<K: Field>(p: &Piece<K>, bases: &[Matrix<K>]) -> Piece<K> {
    Piece { rep: p.rep.restrict_to(bases), embed: p.embed.iter().zip(bases).map(|(e, b)| e.mul(b)).collect() }
}

/// One copy of the simple at `i` spanned by `column` inside the piece.
fn simple_piece<K: Field>(p: &Piece<K>, i: usize, column: Matrix<K>) -> Piece<K> {
    let f = &p.rep.field;
    let mut dims = vec![0; p.rep.dims.len()];
    dims[i] = 1;
    let maps = p.rep.window.arrows.iter().map(|a| Matrix::zeros(f, dims[a.target], dims[a.source])).collect();
    let embed = (0..dims.len())
        .map(|j| if j == i { p.embed[j].mul(&column) } else { Matrix::zeros(f, p.embed[j].rows(), 0) })
        .collect();
    Piece { rep: Representation::from_parts_unchecked(f, p.rep.window.clone(), dims, maps), embed }
}

fn unit_columns<K: Field>(f: &K, n: usize, rows: &[usize]) -> Matrix<K> {
    let mut m = Matrix::zeros(f, n, rows.len());
    for (c, &r) in rows.iter().enumerate() {
        m.set(r, c, f.one());
    }
    m
}

/// Split off copies of a simple: the part of a sink not hit by any arrow,
/// or the part of a source killed by every arrow.
fn peel<K: Field>(p: &Piece<K>) -> Option<Vec<Piece<K>>> {
    let rep = &p.rep;
    let f = &rep.field;
    let n = rep.dims.len();
    for i in 0..n {
        let d = rep.dims[i];
        if d == 0 {
            continue;
        }
        let (incoming, outgoing) = rep.window.incidence(i);
        let split = if outgoing.is_empty() {
            let blocks: Vec<&Matrix<K>> = incoming.iter().map(|&a| &rep.maps[a]).collect();
            let image = Matrix::hstack(f, d, &blocks).image();
            if image.cols() == d {
                continue;
            }
            let pivots = echelon_pivot_rows(&image);
            let free: Vec<usize> = (0..d).filter(|r| !pivots.contains(r)).collect();
            (image, unit_columns(f, d, &free))
        } else if incoming.is_empty() {
            let blocks: Vec<&Matrix<K>> = outgoing.iter().map(|&a| &rep.maps[a]).collect();
            let kernel = Matrix::vstack(f, d, &blocks).kernel();
            if kernel.cols() == 0 {
                continue;
            }
            let pivots = echelon_pivot_rows(&kernel);
            let free: Vec<usize> = (0..d).filter(|r| !pivots.contains(r)).collect();
            (unit_columns(f, d, &free), kernel)
        } else {
            continue;
        };
        let (keep, simples) = split;
        let mut bases: Vec<Matrix<K>> = rep.dims.iter().map(|&d| Matrix::identity(f, d)).collect();
        bases[i] = keep;
        let mut out = vec![sub_piece(p, &bases)];
        for c in 0..simples.cols() {
            out.push(simple_piece(p, i, simples.col_range(c, c + 1)));
        }
        return Some(out);
    }
    None
}

fn fitting<K: Field>(rep: &Representation<K>, x: &[Matrix<K>]) -> Option<Split<K>> {
    let parts: Vec<(Matrix<K>, Matrix<K>)> = x.iter().map(fitting_parts).collect();
    let r: usize = parts.iter().map(|(im, _)| im.cols()).sum();
    if r == 0 || r == rep.total_dim() {
        return None;
    }
    Some(parts.into_iter().unzip())
}

/// Try `x` and its shifts by eigenvalues lying in the field.
fn try_candidate<K: Field>(rep: &Representation<K>, x: &[Matrix<K>]) -> Option<Split<K>> {
    if let Some(s) = fitting(rep, x) {
        return Some(s);
    }
    if x.iter().all(Matrix::is_nilpotent) {
        return None;
    }
    let f = &rep.field;
    let blocks: Vec<Matrix<K>> = x.iter().filter(|m| m.rows() > 0).cloned().collect();
    for lambda in f.roots(&min_poly(f, &blocks)) {
        if f.is_zero(&lambda) {
            continue;
        }
        let shifted: Vec<Matrix<K>> =
            x.iter().map(|m| m.add_scaled(&f.neg(&lambda), &Matrix::identity(f, m.rows()))).collect();
        if let Some(s) = fitting(rep, &shifted) {
            return Some(s);
        }
    }
    None
}

fn combine<K: Field>(f: &K, basis: &[Vec<Matrix<K>>], coeffs: &[(usize, K::Elem)]) -> Vec<Matrix<K>> {
    let mut out: Vec<Matrix<K>> = basis[0].iter().map(|m| Matrix::zeros(f, m.rows(), m.cols())).collect();
    for (j, c) in coeffs {
        if f.is_zero(c) {
            continue;
        }
        for (o, b) in out.iter_mut().zip(&basis[*j]) {
            *o = o.add_scaled(c, b);
        }
    }
    out
}

fn trace_form_rank<K: Field>(f: &K, basis: &[Vec<Matrix<K>>]) -> usize {
    let m = basis.len();
    let g = Matrix::from_fn(f, m, m, |j, k| {
        basis[j].iter().zip(&basis[k]).fold(f.zero(), |acc, (a, b)| f.add(&acc, &a.mul(b).trace()))
    });
    g.rank()
}

fn search_split<K: Field>(rep: &Representation<K>, rng: &mut ChaCha8Rng) -> Search<K> {
    let f = &rep.field;
    let basis = hom_components(rep, rep);
    let m = basis.len();
    if m <= 1 {
        return Search::Indecomposable { exact: true };
    }
    // In characteristic zero the radical of the trace form is the Jacobson
    // radical, so rank one means the algebra is local.
    if f.tag() == FieldTag::Rational && trace_form_rank(f, &basis) == 1 {
        return Search::Indecomposable { exact: true };
    }
    for b in &basis {
        if let Some((a, k)) = try_candidate(rep, b) {
            return Search::Split(a, k);
        }
    }
    let w = m.min(PRODUCT_WIDTH);
    for j in 0..w {
        for k in 0..w {
            let prod: Vec<Matrix<K>> = basis[j].iter().zip(&basis[k]).map(|(x, y)| x.mul(y)).collect();
            if let Some((a, k)) = try_candidate(rep, &prod) {
                return Search::Split(a, k);
            }
        }
    }
    if let Some(elements) = f.elements() {
        let q = elements.len() as u64;
        if q.checked_pow(m as u32).is_some_and(|n| n <= EXHAUSTIVE_LIMIT) {
            let mut digits = vec![0usize; m];
            loop {
                let mut pos = 0;
                while pos < m && digits[pos] + 1 == elements.len() {
                    digits[pos] = 0;
                    pos += 1;
                }
                if pos == m {
                    break;
                }
                digits[pos] += 1;
                let coeffs: Vec<(usize, K::Elem)> =
                    digits.iter().enumerate().map(|(j, &d)| (j, elements[d].clone())).collect();
                if let Some((a, k)) = fitting(rep, &combine(f, &basis, &coeffs)) {
                    return Search::Split(a, k);
                }
            }
            return Search::Indecomposable { exact: true };
        }
    }
    let w = m.min(COMBO_WIDTH);
    let small = [f.one(), f.from_i64(2)];
    for a in 0..w {
        for b in a + 1..w {
            for ca in &small {
                for cb in &small {
                    let x = combine(f, &basis, &[(a, ca.clone()), (b, cb.clone())]);
                    if let Some((s, t)) = try_candidate(rep, &x) {
                        return Search::Split(s, t);
                    }
                    for c in b + 1..w {
                        for cc in &small {
                            let x = combine(f, &basis, &[(a, ca.clone()), (b, cb.clone()), (c, cc.clone())]);
                            if let Some((s, t)) = try_candidate(rep, &x) {
                                return Search::Split(s, t);
                            }
                        }
                    }
                }
            }
        }
    }
    for _ in 0..RANDOM_DRAWS {
        let coeffs: Vec<(usize, K::Elem)> = (0..m).map(|j| (j, f.random(rng))).collect();
        if let Some((s, t)) = try_candidate(rep, &combine(f, &basis, &coeffs)) {
            return Search::Split(s, t);
        }
    }
    Search::Indecomposable { exact: false }
}

/// Whether two indecomposables are isomorphic: some composite through the
/// other one is not nilpotent, hence invertible in the local algebra.
pub fn indecomposables_isomorphic<K: Field>(x: &Representation<K>, y: &Representation<K>) -> Result<bool> {
    let (x, y) = align(x, y)?;
    if x.dims != y.dims {
        return Ok(false);
    }
    let there = hom_components(&x, &y);
    if there.is_empty() {
        return Ok(false);
    }
    let back = hom_components(&y, &x);
    for fx in &there {
        for gy in &back {
            if fx.iter().zip(gy).any(|(a, b)| !b.mul(a).is_nilpotent()) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Isomorphism test through Krull-Schmidt: decompose both sides and match
/// summands.
pub fn is_isomorphic<K: Field>(v: &Representation<K>, w: &Representation<K>) -> Result<bool> {
    let (v, w) = align(v, w)?;
    if v.dims != w.dims {
        return Ok(false);
    }
    let left = decompose(&v).summands;
    let mut right = decompose(&w).summands;
    if left.len() != right.len() {
        return Ok(false);
    }
    for x in &left {
        let mut hit = None;
        for (j, y) in right.iter().enumerate() {
            if indecomposables_isomorphic(x, y)? {
                hit = Some(j);
                break;
            }
        }
        match hit {
            Some(j) => {
                right.swap_remove(j);
            }
            None => return Ok(false),
        }
    }
    Ok(true)
}
