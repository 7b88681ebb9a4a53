//! Minimal polynomials and root finding, used to pick eigenvalue shifts
//! when searching endomorphism algebras for idempotents.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::Field;
use super::matrix::Matrix;
use super::solve_linear;

/// Monic minimal polynomial (coefficients low to high) of the block-diagonal
/// operator with the given square blocks.
pub fn min_poly<K: Field>(field: &K, blocks: &[Matrix<K>]) -> Vec<K::Elem> {
    let flat = |ms: &[Matrix<K>]| -> Vec<K::Elem> { ms.iter().flat_map(|m| m.data().iter().cloned()).collect() };
    let len: usize = blocks.iter().map(|m| m.rows() * m.cols()).sum();
    let mut powers: Vec<Vec<K::Elem>> = Vec::new();
    let mut current: Vec<Matrix<K>> = blocks.iter().map(|m| Matrix::identity(field, m.rows())).collect();
    loop {
        let target = flat(&current);
        if !powers.is_empty() {
            let a = Matrix::from_columns(field, len, &powers);
            let b = Matrix::from_columns(field, len, std::slice::from_ref(&target));
            if let Some(sol) = solve_linear(&a, &b).expect("same field") {
                let mut coeffs: Vec<K::Elem> = (0..powers.len()).map(|k| field.neg(sol.particular.get(k, 0))).collect();
                coeffs.push(field.one());
                return coeffs;
            }
        }
        powers.push(target);
        current = current.iter().zip(blocks).map(|(c, m)| c.mul(m)).collect();
    }
}

/// Evaluate a polynomial given low to high.
pub fn eval<K: Field>(field: &K, poly: &[K::Elem], x: &K::Elem) -> K::Elem {
    poly.iter().rev().fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    trim(&mut r);
    let lead = b.last().expect("nonzero divisor");
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let q = r.last().unwrap() / lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &q * c;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn div_exact(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let lead = b.last().unwrap();
    let mut q = vec![BigRational::zero(); a.len() + 1 - b.len()];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / lead;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &c * bc;
        }
        q[shift] = c;
        r.pop();
    }
    q
}

fn gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn primitive(p: &[BigRational]) -> Vec<BigInt> {
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| x / &g).collect()
}

fn eval_mod(p: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn small_primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start..).filter(|&n| n > 1 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Recover `a/b` from `r = a/b mod m` with `|a|, |b| <= sqrt(m/2)`.
fn rational_reconstruction(r: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound {
        return None;
    }
    Some(BigRational::new(r1, s1))
}

/// All rational roots of a polynomial over the rationals, without repetition.
///
/// Works on the square-free part: simple roots modulo a suitable prime are
/// lifted p-adically far enough that rational reconstruction must succeed
/// for any genuine root, and every candidate is checked exactly.
pub fn rational_roots(poly: &[BigRational]) -> Vec<BigRational> {
    let mut p = poly.to_vec();
    trim(&mut p);
    let mut roots = Vec::new();
    if p.len() <= 1 {
        return roots;
    }
    if p[0].is_zero() {
        roots.push(BigRational::zero());
        while p[0].is_zero() {
            p.remove(0);
        }
    }
    if p.len() <= 1 {
        return roots;
    }
    let deriv: Vec<BigRational> =
        p.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(i.into())).collect();
    let g = gcd(&p, &deriv);
    let sqf = if g.len() > 1 { div_exact(&p, &g) } else { p.clone() };
    let f = primitive(&sqf);
    let n = f.len() - 1;
    if n == 1 {
        roots.push(BigRational::new(-f[0].clone(), f[1].clone()));
        return roots;
    }
    let fd: Vec<BigInt> = f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    let bound = f[0].abs() * f[n].abs() * 2u32 + 1u32;
    let squared = &bound * &bound;

    for prime in small_primes_from(1009).take(50) {
        let pm = BigInt::from(prime);
        if (&f[n] % &pm).is_zero() {
            continue;
        }
        let residues: Vec<BigInt> = (0..prime).map(BigInt::from).filter(|x| eval_mod(&f, x, &pm).is_zero()).collect();
        // A repeated root modulo p (or a vanishing derivative) defeats lifting;
        // try another prime.
        if residues.iter().any(|x| eval_mod(&fd, x, &pm).is_zero()) {
            continue;
        }
        for r0 in residues {
            let mut m = pm.clone();
            let mut r = r0;
            while m <= squared {
                m = &m * &m;
                let fx = eval_mod(&f, &r, &m);
                let inv = mod_inverse(&eval_mod(&fd, &r, &m), &m).expect("simple root");
                r = (r - fx * inv).mod_floor(&m);
            }
            if let Some(q) = rational_reconstruction(&r, &m) {
                let value = eval(&super::Rationals, &p, &q);
                if value.is_zero() && !roots.contains(&q) {
                    roots.push(q);
                }
            }
        }
        return roots;
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn finds_rational_roots() {
        // (x - 3/2)^2 (x + 5) (x^2 - 2)
        let mut p = vec![q(1, 1)];
        for factor in
            [vec![q(-3, 2), q(1, 1)], vec![q(-3, 2), q(1, 1)], vec![q(5, 1), q(1, 1)], vec![q(-2, 1), q(0, 1), q(1, 1)]]
        {
            let mut out = vec![q(0, 1); p.len() + factor.len() - 1];
            for (i, a) in p.iter().enumerate() {
                for (j, b) in factor.iter().enumerate() {
                    out[i + j] = &out[i + j] + a * b;
                }
            }
            p = out;
        }
        let mut roots = rational_roots(&p);
        roots.sort();
        assert_eq!(roots, vec![q(-5, 1), q(3, 2)]);
        assert!(rational_roots(&[q(-2, 1), q(0, 1), q(1, 1)]).is_empty());
        assert_eq!(rational_roots(&[q(0, 1), q(0, 1), q(7, 3)]), vec![q(0, 1)]);
    }

    #[test]
    fn large_roots() {
        let r = q(123_456_789, 1_000_003);
        let p = vec![-r.clone() * q(7, 1), q(7, 1)];
        assert_eq!(rational_roots(&p), vec![r.clone()]);
        let s = q(-98_765, 4_321);
        let quad = vec![&r * &s, -(&r + &s), q(1, 1)];
        let mut roots = rational_roots(&quad);
        roots.sort();
        assert_eq!(roots, vec![s, r]);
    }

    #[test]
    fn minimal_polynomial() {
        let f = Rationals;
        let a = Matrix::from_i64(&f, &[&[2, 0], &[0, 2]]);
        let b = Matrix::from_i64(&f, &[&[3]]);
        let mp = min_poly(&f, &[a, b]);
        assert_eq!(mp, vec![q(6, 1), q(-5, 1), q(1, 1)]);
        let g = PrimeField::new(5).unwrap();
        let n = Matrix::from_i64(&g, &[&[0, 1], &[0, 0]]);
        assert_eq!(min_poly(&g, &[n]), vec![0, 0, 1]);
    }
}
