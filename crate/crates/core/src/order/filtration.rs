use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{build_order_window, OrderWindow};
use crate::error::Result;
use crate::linalg::{Field, Matrix};
use crate::rep::hom::hom_components;
use crate::rep::{decompose, extend_to, Morphism, Representation};
use crate::roots::RootVector;

const DRAWS: usize = 32;
const MAX_ROUNDS: usize = 16;

/// One class of the filtration: `F_beta`, `F_<beta` and the complement
/// `G_beta`, which is the direct sum of the images of `copies`.
#[derive(Clone, Debug)]
pub struct FiltrationClass<K: Field> {
    pub class: usize,
    pub dimension: RootVector,
    pub copies: Vec<Morphism<K>>,
    pub f_dims: Vec<usize>,
    pub f_below_dims: Vec<usize>,
    pub g_dims: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationAudit {
    /// `F_beta = F_<beta + G_beta` with the sum direct, at every vertex.
    pub gradation: bool,
    /// `F_alpha` sits inside `F_beta` whenever `alpha <= beta`.
    pub monotone: bool,
    /// The `G_beta` together give a direct sum decomposition of the input.
    pub direct_sum: bool,
    /// Each `G_beta` is a sum of copies of its class.
    pub isotypic: bool,
    /// The multiset of classes agrees with `decompose`.
    pub matches_decompose: bool,
}

impl FiltrationAudit {
    pub fn passed(&self) -> bool {
        self.gradation && self.monotone && self.direct_sum && self.isotypic && self.matches_decompose
    }
}

#[derive(Clone, Debug)]
pub struct Filtration<K: Field> {
    /// Input continued to the window of the order.
    pub rep: Representation<K>,
    /// Classes in the order they were processed, smallest first.
    pub classes: Vec<FiltrationClass<K>>,
    pub audit: FiltrationAudit,
}

impl<K: Field> Filtration<K> {
    /// Number of summands per class, keyed by dimension vector.
    pub fn counts(&self) -> BTreeMap<String, usize> {
        self.classes
            .iter()
            .filter(|c| !c.copies.is_empty())
            .map(|c| (c.dimension.to_string(), c.copies.len()))
            .collect()
    }
}

/// Filtration of `v` by the order on classes seen at its depth.
pub fn poset_filtration<K: Field>(v: &Representation<K>, seed: u64) -> Result<Filtration<K>> {
    let spec = v.spec().clone();
    let depth = spec.max_depth(v.window().vertices().iter());
    let order = build_order_window(v.field(), &spec, depth)?;
    poset_filtration_in(v, &order, seed)
}

/// Per-vertex column bases of a subrepresentation.
type Span<K> = Vec<Matrix<K>>;

fn span<K: Field>(field: &K, dims: &[usize], parts: &[&Span<K>]) -> Span<K> {
    (0..dims.len())
        .map(|i| Matrix::hstack(field, dims[i], &parts.iter().map(|p| &p[i]).collect::<Vec<_>>()).image())
        .collect()
}

fn dims_of<K: Field>(s: &Span<K>) -> Vec<usize> {
    s.iter().map(Matrix::cols).collect()
}

fn image_of<K: Field>(comps: &[Matrix<K>]) -> Span<K> {
    comps.iter().map(Matrix::image).collect()
}

fn is_injective<K: Field>(comps: &[Matrix<K>]) -> bool {
    comps.iter().all(|c| c.rank() == c.cols())
}

fn combine<K: Field>(field: &K, basis: &[Vec<Matrix<K>>], rng: &mut ChaCha8Rng) -> Vec<Matrix<K>> {
    let coeffs: Vec<K::Elem> = basis.iter().map(|_| field.random(rng)).collect();
    (0..basis[0].len())
        .map(|i| {
            let first = basis[0][i].scale(&coeffs[0]);
            basis.iter().zip(&coeffs).skip(1).fold(first, |acc, (b, c)| acc.add_scaled(c, &b[i]))
        })
        .collect()
}

/// Span of the images of injective maps from one class into `v`, with the
/// injective maps found along the way.
fn injective_images<K: Field>(
    field: &K,
    r: &Representation<K>,
    v: &Representation<K>,
    rng: &mut ChaCha8Rng,
) -> (Span<K>, Vec<Vec<Matrix<K>>>) {
    let zero: Span<K> = v.dims().iter().map(|&d| Matrix::zeros(field, d, 0)).collect();
    let basis = hom_components(r, v);
    if basis.is_empty() {
        return (zero, Vec::new());
    }
    let mut maps: Vec<Vec<Matrix<K>>> = basis.iter().filter(|f| is_injective(f)).cloned().collect();
    let mut current =
        span(field, v.dims(), &maps.iter().map(|m| image_of(m)).collect::<Vec<_>>().iter().collect::<Vec<_>>());
    if current.len() != v.dims().len() {
        current = zero.clone();
    }
    let mut stable = 0;
    for _ in 0..MAX_ROUNDS {
        let before = dims_of(&current);
        for _ in 0..DRAWS {
            let f = combine(field, &basis, rng);
            if is_injective(&f) {
                current = span(field, v.dims(), &[&current, &image_of(&f)]);
                maps.push(f);
            }
        }
        if dims_of(&current) == before {
            stable += 1;
            if stable == 2 {
                break;
            }
        } else {
            stable = 0;
        }
    }
    (current, maps)
}

/// Filtration against a prebuilt order window. `v` is continued to the
/// window of the order first.
pub fn poset_filtration_in<K: Field>(
    v: &Representation<K>,
    order: &OrderWindow<K>,
    seed: u64,
) -> Result<Filtration<K>> {
    let field = v.field().clone();
    let v = extend_to(v, order.window())?;
    let dims = v.dims().to_vec();
    let total = |d: &[usize]| d.iter().sum::<usize>();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let linear = order.linear_extension()?;

    let mut images = Vec::with_capacity(order.len());
    let mut pools = Vec::with_capacity(order.len());
    for c in &order.classes {
        let (img, pool) = injective_images(&field, &c.representative, &v, &mut rng);
        images.push(img);
        pools.push(pool);
    }

    let mut audit =
        FiltrationAudit { gradation: true, monotone: true, direct_sum: true, isotypic: true, matches_decompose: true };
    let mut f_spans: Vec<Option<Span<K>>> = vec![None; order.len()];
    let mut classes = Vec::with_capacity(order.len());
    let mut all_g: Vec<Span<K>> = Vec::new();
    for &b in &linear {
        let below: Vec<&Span<K>> = (0..order.len()).filter(|&a| order.greater(b, a)).map(|a| &images[a]).collect();
        let f_below = span(&field, &dims, &below);
        let f_beta = span(&field, &dims, &[&f_below, &images[b]]);
        let rep = &order.classes[b].representative;
        let target = total(&dims_of(&f_beta));
        let mut cur = f_below.clone();
        let mut copies = Vec::new();
        let mut pool = std::mem::take(&mut pools[b]).into_iter();
        let basis = hom_components(rep, &v);
        let mut extra = 0;
        while total(&dims_of(&cur)) < target {
            let f = match pool.next() {
                Some(f) => f,
                None if extra < DRAWS * MAX_ROUNDS && !basis.is_empty() => {
                    extra += 1;
                    combine(&field, &basis, &mut rng)
                }
                None => break,
            };
            if !is_injective(&f) {
                continue;
            }
            let next = span(&field, &dims, &[&cur, &image_of(&f)]);
            if total(&dims_of(&next)) == total(&dims_of(&cur)) + rep.total_dim() {
                cur = next;
                copies.push(Morphism { source: rep.clone(), target: v.clone(), comps: f });
            }
        }
        let g_dims: Vec<usize> = rep.dims().iter().map(|d| d * copies.len()).collect();
        let f_dims = dims_of(&f_beta);
        let f_below_dims = dims_of(&f_below);
        let graded = f_dims.iter().zip(&f_below_dims).zip(&g_dims).all(|((f, l), g)| *f == l + g);
        let covers = dims_of(&span(&field, &dims, &[&cur, &f_beta])) == f_dims;
        audit.gradation &= graded && covers;
        audit.isotypic &= copies.iter().all(|m| m.is_injective() && m.source.dims() == rep.dims());
        for m in &copies {
            all_g.push(image_of(&m.comps));
        }
        f_spans[b] = Some(f_beta);
        classes.push(FiltrationClass {
            class: b,
            dimension: order.classes[b].dimension.clone(),
            copies,
            f_dims,
            f_below_dims,
            g_dims,
        });
    }

    for a in 0..order.len() {
        for b in 0..order.len() {
            if order.greater(b, a) {
                let (fa, fb) = (f_spans[a].as_ref().unwrap(), f_spans[b].as_ref().unwrap());
                audit.monotone &= dims_of(&span(&field, &dims, &[fa, fb])) == dims_of(fb);
            }
        }
    }

    let g_total: usize = classes.iter().map(|c| total(&c.g_dims)).sum();
    let g_span = span(&field, &dims, &all_g.iter().collect::<Vec<_>>());
    audit.direct_sum = g_total == total(&dims) && dims_of(&g_span) == dims;

    let mut from_decompose: Vec<Vec<usize>> = decompose(&v).summands.iter().map(|s| s.dims().to_vec()).collect();
    let mut from_filtration: Vec<Vec<usize>> = classes
        .iter()
        .flat_map(|c| std::iter::repeat_n(order.classes[c.class].representative.dims().to_vec(), c.copies.len()))
        .collect();
    from_decompose.sort();
    from_filtration.sort();
    audit.matches_decompose = from_decompose == from_filtration;

    Ok(Filtration { rep: v, classes, audit })
}
