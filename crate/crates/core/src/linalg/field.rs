use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Largest modulus accepted for prime fields.
pub const MAX_PRIME: u32 = 1 << 31;

/// Which field a matrix or representation is defined over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldTag {
    Rational,
    Prime(u32),
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rational => f.write_str("Q"),
            FieldTag::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldTag::Rational);
        }
        let p: u32 =
            s.strip_prefix('F').and_then(|rest| rest.parse().ok()).ok_or_else(|| Error::InvalidField(s.to_string()))?;
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::InvalidField(s.to_string()));
        }
        Ok(FieldTag::Prime(p))
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A field element in its serialized, field-independent form.
///
/// Rationals print as `"p/q"` (or `"n"` when integral) in lowest terms;
/// residues print as `"n mod p"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u32, modulus: u32 },
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Residue { value, modulus } => write!(f, "{value} mod {modulus}"),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidScalar(s.to_string());
        let t = s.trim();
        if let Some((n, p)) = t.split_once("mod") {
            let modulus: u32 = p.trim().parse().map_err(|_| bad())?;
            if modulus > MAX_PRIME || !is_prime(modulus) {
                return Err(bad());
            }
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let value = n.mod_floor(&BigInt::from(modulus)).to_u32().ok_or_else(bad)?;
            return Ok(Scalar::Residue { value, modulus });
        }
        let q = match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(t.parse().map_err(|_| bad())?),
        };
        Ok(Scalar::Rational(q))
    }
}

/// Exact field arithmetic.
///
/// The field value carries whatever context the arithmetic needs (the
/// modulus for prime fields), so elements themselves stay plain data.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Send + Sync;

    fn tag(&self) -> FieldTag;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn to_scalar(&self, a: &Self::Elem) -> Scalar;
    fn from_scalar(&self, s: &Scalar) -> Result<Self::Elem>;

    /// Every element, when the field is small enough to list.
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    /// A random element; for infinite fields drawn from a small integer range.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// Distinct roots in the field of a polynomial given low to high. May be
    /// incomplete for fields too large to search.
    fn roots(&self, poly: &[Self::Elem]) -> Vec<Self::Elem>;

    /// Bring a row-major `rows x cols` block into reduced row echelon form in
    /// place and return the pivot columns.
    fn reduce_rows(&self, data: &mut [Self::Elem], rows: usize, cols: usize) -> Vec<usize> {
        gauss_jordan(self, data, rows, cols)
    }
}

/// Plain Gauss-Jordan elimination.
pub(crate) fn gauss_jordan<K: Field>(field: &K, data: &mut [K::Elem], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !field.is_zero(&data[i * cols + c])) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = field.inv(&data[r * cols + c]).expect("nonzero pivot");
        for j in c..cols {
            let v = field.mul(&data[r * cols + j], &inv);
            data[r * cols + j] = v;
        }
        for i in 0..rows {
            if i == r || field.is_zero(&data[i * cols + c]) {
                continue;
            }
            let factor = data[i * cols + c].clone();
            for j in c..cols {
                if field.is_zero(&data[r * cols + j]) {
                    continue;
                }
                let t = field.mul(&factor, &data[r * cols + j]);
                data[i * cols + j] = field.sub(&data[i * cols + j], &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// The rationals, with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn tag(&self) -> FieldTag {
        FieldTag::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn to_scalar(&self, a: &BigRational) -> Scalar {
        Scalar::Rational(a.clone())
    }
    fn from_scalar(&self, s: &Scalar) -> Result<BigRational> {
        match s {
            Scalar::Rational(q) => Ok(q.clone()),
            Scalar::Residue { modulus, .. } => {
                Err(Error::FieldMismatch { left: FieldTag::Rational, right: FieldTag::Prime(*modulus) })
            }
        }
    }
    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.random_range(-4..=4))
    }
    fn roots(&self, poly: &[BigRational]) -> Vec<BigRational> {
        super::poly::rational_roots(poly)
    }
    fn reduce_rows(&self, data: &mut [BigRational], rows: usize, cols: usize) -> Vec<usize> {
        fraction_free_rref(data, rows, cols)
    }
}

/// Reduced row echelon form over the rationals without intermediate fractions.
///
/// Rows are scaled to primitive integer vectors, eliminated by
/// cross-multiplication and re-made primitive after every update; only the
/// final normalization by the pivot introduces denominators.
fn fraction_free_rref(data: &mut [BigRational], rows: usize, cols: usize) -> Vec<usize> {
    let mut ints: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let row = &data[i * cols..(i + 1) * cols];
            let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            let mut out: Vec<BigInt> = row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
            make_primitive(&mut out);
            out
        })
        .collect();

    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Smallest pivot keeps the cross-multiplied entries short.
        let Some(p) =
            (r..rows).filter(|&i| !ints[i][c].is_zero()).min_by(|&a, &b| ints[a][c].abs().cmp(&ints[b][c].abs()))
        else {
            continue;
        };
        ints.swap(p, r);
        let (before, rest) = ints.split_at_mut(r);
        let (pivot_row, after) = rest.split_first_mut().unwrap();
        if pivot_row[c].is_negative() {
            pivot_row.iter_mut().for_each(|x| *x = -&*x);
        }
        for row in before.iter_mut().chain(after.iter_mut()) {
            if row[c].is_zero() {
                continue;
            }
            let g = row[c].gcd(&pivot_row[c]);
            let mine = &pivot_row[c] / &g;
            let theirs = &row[c] / &g;
            for j in 0..cols {
                if row[j].is_zero() && pivot_row[j].is_zero() {
                    continue;
                }
                row[j] = &row[j] * &mine - &pivot_row[j] * &theirs;
            }
            make_primitive(row);
        }
        pivots.push(c);
        r += 1;
    }

    for (i, row) in ints.iter().enumerate() {
        let lead = pivots.get(i).map(|&c| row[c].clone());
        for (j, x) in row.iter().enumerate() {
            data[i * cols + j] = match &lead {
                Some(l) => BigRational::new(x.clone(), l.clone()),
                None => BigRational::zero(),
            };
        }
    }
    pivots
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        row.iter_mut().for_each(|x| *x = &*x / &g);
    }
}

/// The prime field of residues modulo `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::InvalidField(format!("F{p}")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn reduce(&self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }

    fn pow(&self, mut base: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.reduce(acc as u64 * base as u64);
            }
            base = self.reduce(base as u64 * base as u64);
            e >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn tag(&self) -> FieldTag {
        FieldTag::Prime(self.p)
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.reduce(*a as u64 + *b as u64)
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.reduce(*a as u64 + (self.p - *b) as u64)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.reduce(*a as u64 * *b as u64)
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        (*a != 0).then(|| self.pow(*a, self.p as u64 - 2))
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u32) -> bool {
        *a == 1
    }
    fn to_scalar(&self, a: &u32) -> Scalar {
        Scalar::Residue { value: *a, modulus: self.p }
    }
    fn from_scalar(&self, s: &Scalar) -> Result<u32> {
        match s {
            Scalar::Residue { value, modulus } if *modulus == self.p => Ok(*value),
            Scalar::Residue { modulus, .. } => {
                Err(Error::FieldMismatch { left: self.tag(), right: FieldTag::Prime(*modulus) })
            }
            Scalar::Rational(q) => {
                let m = BigInt::from(self.p);
                let n = q.numer().mod_floor(&m).to_u32().unwrap();
                let d = q.denom().mod_floor(&m).to_u32().unwrap();
                let d = self.inv(&d).ok_or_else(|| Error::InvalidScalar(format!("{q} is undefined mod {}", self.p)))?;
                Ok(self.mul(&n, &d))
            }
        }
    }
    fn elements(&self) -> Option<Vec<u32>> {
        (self.p <= 1 << 16).then(|| (0..self.p).collect())
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.random_range(0..self.p)
    }
    fn roots(&self, poly: &[u32]) -> Vec<u32> {
        let limit = self.p.min(1 << 16);
        (0..limit).filter(|x| self.is_zero(&super::poly::eval(self, poly, x))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_strings() {
        let half: Scalar = "2/4".parse().unwrap();
        assert_eq!(half.to_string(), "1/2");
        assert_eq!("-3".parse::<Scalar>().unwrap().to_string(), "-3");
        assert_eq!("-1 mod 5".parse::<Scalar>().unwrap().to_string(), "4 mod 5");
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("2 mod 4".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
    }

    #[test]
    fn field_tags() {
        assert_eq!("Q".parse::<FieldTag>().unwrap(), FieldTag::Rational);
        assert_eq!("F7".parse::<FieldTag>().unwrap(), FieldTag::Prime(7));
        assert!("F4".parse::<FieldTag>().is_err());
        assert!("R".parse::<FieldTag>().is_err());
        assert_eq!(FieldTag::Prime(3).to_string(), "F3");
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_scalar(&"1/2".parse().unwrap()).unwrap(), 4);
    }

    #[test]
    fn mixed_scalar_is_rejected() {
        let s: Scalar = "1 mod 3".parse().unwrap();
        assert!(matches!(Rationals.from_scalar(&s), Err(Error::FieldMismatch { .. })));
        assert!(PrimeField::new(5).unwrap().from_scalar(&s).is_err());
    }
}
