//! Exact linear algebra over the rationals and prime fields.

mod field;
mod matrix;
pub mod poly;

pub use field::{Field, FieldTag, PrimeField, Rationals, Scalar, MAX_PRIME};
pub use matrix::{echelon_pivot_rows, Matrix};

use crate::error::{Error, Result};

/// Rank together with canonical kernel and image bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankKernelImage<K: Field> {
    pub rank: usize,
    pub kernel: Matrix<K>,
    pub image: Matrix<K>,
}

pub fn rank_kernel_image<K: Field>(m: &Matrix<K>) -> RankKernelImage<K> {
    let image = m.image();
    RankKernelImage { rank: image.cols(), kernel: m.kernel(), image }
}

/// Solutions of `a x = b`: one particular solution plus a homogeneous basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution<K: Field> {
    pub particular: Matrix<K>,
    pub homogeneous: Matrix<K>,
}

/// Solve `a x = b` column by column. The particular solution sets every free
/// variable to zero; `None` means the system is inconsistent.
pub fn solve_linear<K: Field>(a: &Matrix<K>, b: &Matrix<K>) -> Result<Option<AffineSolution<K>>> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch { left: a.field().tag(), right: b.field().tag() });
    }
    if a.rows() != b.rows() {
        return Err(Error::ShapeMismatch(format!("left side has {} rows, right side {}", a.rows(), b.rows())));
    }
    let f = a.field();
    let n = a.cols();
    let aug = Matrix::hstack(f, a.rows(), &[a, b]);
    let (r, pivots) = aug.rref();
    if pivots.iter().any(|&p| p >= n) {
        return Ok(None);
    }
    let mut particular = Matrix::zeros(f, n, b.cols());
    for (i, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols() {
            particular.set(p, j, r.get(i, n + j).clone());
        }
    }
    Ok(Some(AffineSolution { particular, homogeneous: a.kernel() }))
}

/// Stable image and stable kernel bases of a square matrix (Fitting
/// decomposition), both in reduced column echelon form.
pub fn fitting_parts<K: Field>(e: &Matrix<K>) -> (Matrix<K>, Matrix<K>) {
    let power = e.pow(e.rows() as u32);
    (power.image(), power.kernel())
}

/// A nontrivial idempotent commuting with `e`, or `None` when `e` is
/// nilpotent or invertible.
///
/// The idempotent projects onto the stable image of `e` along its stable
/// kernel.
pub fn fitting_split<K: Field>(e: &Matrix<K>) -> Option<Matrix<K>> {
    assert!(e.is_square(), "fitting_split needs a square matrix");
    let n = e.rows();
    let (image, kernel) = fitting_parts(e);
    let r = image.cols();
    if r == 0 || r == n {
        return None;
    }
    let f = e.field();
    let basis = Matrix::hstack(f, n, &[&image, &kernel]);
    let inv = basis.inverse().expect("stable image and kernel are complementary");
    let mut diag = Matrix::zeros(f, n, n);
    for i in 0..r {
        diag.set(i, i, f.one());
    }
    Some(basis.mul(&diag).mul(&inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn rank_kernel_image_examples() {
        let f = Rationals;
        let id = rank_kernel_image(&Matrix::<Rationals>::identity(&f, 2));
        assert_eq!(id.rank, 2);
        assert_eq!(id.kernel.cols(), 0);

        let zero = rank_kernel_image(&Matrix::zeros(&f, 2, 3));
        assert_eq!(zero.rank, 0);
        assert!(zero.kernel.is_identity());

        let m = Matrix::from_i64(&f, &[&[1, 0], &[0, 0]]);
        let rki = rank_kernel_image(&m);
        assert_eq!(rki.rank, 1);
        assert_eq!(rki.kernel, Matrix::from_i64(&f, &[&[0], &[1]]));
        assert_eq!(rki.image, Matrix::from_i64(&f, &[&[1], &[0]]));
    }

    #[test]
    fn solve_examples() {
        let f = Rationals;
        let b = Matrix::from_i64(&f, &[&[3], &[-4]]);
        let s = solve_linear(&Matrix::identity(&f, 2), &b).unwrap().unwrap();
        assert_eq!(s.particular, b);
        assert_eq!(s.homogeneous.cols(), 0);

        let s = solve_linear(&Matrix::zeros(&f, 2, 2), &Matrix::zeros(&f, 2, 1)).unwrap().unwrap();
        assert!(s.particular.is_zero());
        assert!(s.homogeneous.is_identity());

        let s = solve_linear(&Matrix::from_i64(&f, &[&[1, 1]]), &Matrix::from_i64(&f, &[&[2]])).unwrap().unwrap();
        assert_eq!(s.particular.column(0), vec![q(2), q(0)]);
        assert_eq!(s.homogeneous.column(0), vec![q(1), q(-1)]);

        let inconsistent = solve_linear(&Matrix::zeros(&f, 1, 1), &Matrix::from_i64(&f, &[&[1]]));
        assert!(inconsistent.unwrap().is_none());
    }

    #[test]
    fn solve_rejects_mixed_fields() {
        let a = Matrix::<PrimeField>::identity(&PrimeField::new(3).unwrap(), 1);
        let b = Matrix::<PrimeField>::identity(&PrimeField::new(5).unwrap(), 1);
        assert!(matches!(solve_linear(&a, &b), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn fitting_examples() {
        let f = Rationals;
        assert!(fitting_split(&Matrix::from_i64(&f, &[&[2, 1], &[0, 3]])).is_none());
        assert!(fitting_split(&Matrix::from_i64(&f, &[&[0, 1], &[0, 0]])).is_none());
        let d = Matrix::from_i64(&f, &[&[1, 0], &[0, 0]]);
        assert_eq!(fitting_split(&d), Some(d));
    }

    fn small_matrix(max: usize) -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
        (0..=max, 0..=max).prop_flat_map(|(r, c)| (Just(r), Just(c), proptest::collection::vec(0i64..5, r * c)))
    }

    proptest! {
        #[test]
        fn rank_nullity_over_f5((r, c, data) in small_matrix(6)) {
            let f = PrimeField::new(5).unwrap();
            let m = Matrix::from_data(&f, r, c, data.iter().map(|&v| f.from_i64(v)).collect());
            let rki = rank_kernel_image(&m);
            prop_assert_eq!(rki.rank + rki.kernel.cols(), c);
            prop_assert_eq!(rki.image.cols(), rki.rank);
            prop_assert!(m.mul(&rki.kernel).is_zero());
        }

        #[test]
        fn kernel_follows_column_permutation((r, c, data) in small_matrix(6), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let f = PrimeField::new(5).unwrap();
            let m = Matrix::from_data(&f, r, c, data.iter().map(|&v| f.from_i64(v)).collect());
            let mut perm: Vec<usize> = (0..c).collect();
            perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let permuted = m.select_cols(&perm);
            // Column j of the permuted matrix is column perm[j] of m, so a
            // kernel vector x of it corresponds to y[perm[j]] = x[j].
            let k = permuted.kernel();
            let mut back = Matrix::zeros(&f, c, k.cols());
            for (j, &pj) in perm.iter().enumerate() {
                for col in 0..k.cols() {
                    back.set(pj, col, *k.get(j, col));
                }
            }
            prop_assert_eq!(back.column_echelon(), m.kernel());
        }

        #[test]
        fn fitting_idempotent((n, data) in (1usize..6).prop_flat_map(|n| (Just(n), proptest::collection::vec(0i64..5, n * n)))) {
            let f = PrimeField::new(5).unwrap();
            let e = Matrix::from_data(&f, n, n, data.iter().map(|&v| f.from_i64(v)).collect());
            match fitting_split(&e) {
                Some(p) => {
                    prop_assert_eq!(p.mul(&p), p.clone());
                    prop_assert_eq!(p.mul(&e), e.mul(&p));
                    prop_assert!(!p.is_zero() && !p.is_identity());
                }
                None => prop_assert!(e.is_nilpotent() || e.is_invertible()),
            }
        }

        #[test]
        fn fraction_free_matches_plain_elimination((r, c, data) in small_matrix(5), dens in proptest::collection::vec(1i64..6, 25)) {
            let f = Rationals;
            let entries: Vec<BigRational> = data
                .iter()
                .zip(dens.iter().cycle())
                .map(|(&n, &d)| BigRational::new((n - 2).into(), d.into()))
                .collect();
            let mut plain = entries.clone();
            let plain_pivots = field::gauss_jordan(&f, &mut plain, r, c);
            let m = Matrix::from_data(&f, r, c, entries);
            let (reduced, pivots) = m.rref();
            prop_assert_eq!(pivots, plain_pivots);
            prop_assert_eq!(reduced.data(), &plain[..]);
        }
    }
}
