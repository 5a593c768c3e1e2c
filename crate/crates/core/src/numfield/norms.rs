//! One-sided norm certification: inert-prime obstructions and bounded
//! preimage search.

use std::collections::HashMap;

use num::{BigInt, Integer, One, Signed, Zero};
use rayon::prelude::*;

use super::{CyclicField, FieldElem};
use crate::arith::rat::primes_up_to;
use crate::arith::{irreducible_mod_p, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    /// α has valuation prime to the degree at an inert prime, so it is not a norm.
    InertPrimeNontrivial,
    /// An explicit element of norm α.
    PreimageFound,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormCertificate {
    pub prime: Option<u64>,
    pub valuation: Option<i64>,
    pub kind: CertificateKind,
    pub preimage: Option<FieldElem>,
}

/// Scans primes `p <= prime_bound` for an inert prime (P irreducible mod p,
/// p not dividing the discriminant or the denominator of `alpha`) at which
/// `v_p(alpha)` is not divisible by the degree. Such a prime proves `alpha`
/// is not a norm; `None` is inconclusive.
pub fn certify_non_norm(field: &CyclicField, alpha: &Rat, prime_bound: u64) -> Result<Option<NormCertificate>> {
    if alpha.is_zero() {
        return Err(Error::ZeroAlpha);
    }
    let d = field.degree() as i64;
    for p in primes_up_to(prime_bound) {
        let v = alpha.valuation(p).expect("nonzero alpha");
        if v.rem_euclid(d) == 0 || v < 0 {
            continue;
        }
        if !field.discriminant().mod_prime(p).is_some_and(|r| r != 0) {
            continue;
        }
        if irreducible_mod_p(field.poly(), p)? {
            return Ok(Some(NormCertificate {
                prime: Some(p),
                valuation: Some(v),
                kind: CertificateKind::InertPrimeNontrivial,
                preimage: None,
            }));
        }
    }
    Ok(None)
}

/// Exhaustive search for `x = c / den` with integer coordinates
/// `|c_i| <= height_bound` and `1 <= den <= height_bound` such that
/// `N(x) = alpha`. Among all solutions the simplest is returned: smallest
/// `max(height, den)`, then denominator, support size, number of negative
/// coordinates, degree, and finally the coordinates themselves.
pub fn find_norm_preimage(field: &CyclicField, alpha: &Rat, height_bound: u64) -> Result<Option<FieldElem>> {
    if alpha.is_zero() {
        return Err(Error::ZeroAlpha);
    }
    let d = field.degree();
    let h = i64::try_from(height_bound).map_err(|_| Error::Invalid("height bound too large".into()))?;
    let side = (2 * h + 1) as u64;
    let total = side
        .checked_pow(d as u32)
        .filter(|&n| n <= 50_000_000)
        .ok_or_else(|| Error::Invalid(format!("search box of side {side} in degree {d} is too large")))?;

    // Norms of integer elements, keyed by value. P monic with integer
    // coefficients makes these integers.
    let mult = integer_mult_tables(field);
    let norms: Vec<(BigInt, Vec<i64>)> = (0..total)
        .into_par_iter()
        .filter_map(|idx| {
            let coords = decode(idx, d, h, side);
            if coords.iter().all(|&c| c == 0) {
                return None;
            }
            Some((integer_norm(&mult, &coords), coords))
        })
        .collect();
    let mut by_norm: HashMap<BigInt, Vec<Vec<i64>>> = HashMap::new();
    for (n, c) in norms {
        by_norm.entry(n).or_default().push(c);
    }

    let (a, b) = (alpha.numer(), alpha.denom());
    let mut best: Option<(Key, Vec<i64>, i64)> = None;
    for den in 1..=h {
        // N(c/den) = N(c)/den^d = a/b  <=>  N(c) = a den^d / b.
        let scaled = a * BigInt::from(den).pow(d as u32);
        let (target, r) = scaled.div_rem(b);
        if !r.is_zero() {
            continue;
        }
        let Some(cands) = by_norm.get(&target) else {
            continue;
        };
        for c in cands {
            let g = c.iter().fold(den, |acc, &x| acc.gcd(&x));
            if g != 1 {
                continue;
            }
            let key = Key::new(c, den);
            if best.as_ref().is_none_or(|(k, _, _)| key < *k) {
                best = Some((key, c.clone(), den));
            }
        }
    }
    Ok(best.map(|(_, c, den)| {
        let inv_den = Rat::new(1, den).expect("den >= 1");
        field.elem(c.iter().map(|&x| Rat::from(x) * &inv_den).collect())
    }))
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct Key {
    size: i64,
    den: i64,
    support: usize,
    negatives: usize,
    degree: usize,
    coords: Vec<i64>,
}

impl Key {
    fn new(c: &[i64], den: i64) -> Self {
        let height = c.iter().map(|x| x.abs()).max().unwrap_or(0);
        Key {
            size: height.max(den),
            den,
            support: c.iter().filter(|&&x| x != 0).count(),
            negatives: c.iter().filter(|&&x| x < 0).count(),
            degree: c.iter().rposition(|&x| x != 0).unwrap_or(0),
            coords: c.to_vec(),
        }
    }
}

fn decode(mut idx: u64, d: usize, h: i64, side: u64) -> Vec<i64> {
    let mut c = vec![0i64; d];
    for x in c.iter_mut() {
        *x = (idx % side) as i64 - h;
        idx /= side;
    }
    c
}

/// Integer matrices of multiplication by `t^j`, so that multiplication by
/// `sum c_j t^j` is `sum c_j M_j`.
fn integer_mult_tables(field: &CyclicField) -> Vec<Vec<Vec<i64>>> {
    let d = field.degree();
    let basis = field.basis();
    let mut pw = basis.one();
    let mut out = Vec::with_capacity(d);
    for _ in 0..d {
        let m = basis.mult_matrix(&pw);
        out.push(
            (0..d).map(|i| (0..d).map(|j| m.get(i, j).to_i64().expect("small integer entries")).collect()).collect(),
        );
        pw = basis.mul(&pw, &basis.t());
    }
    out
}

/// Norm of an integer element as the determinant of its multiplication
/// matrix: fraction-free elimination in i128, falling back to big integers.
fn integer_norm(tables: &[Vec<Vec<i64>>], c: &[i64]) -> BigInt {
    let d = c.len();
    let mut m = vec![vec![0i128; d]; d];
    for (j, &cj) in c.iter().enumerate() {
        if cj == 0 {
            continue;
        }
        for i in 0..d {
            for k in 0..d {
                m[i][k] += cj as i128 * tables[j][i][k] as i128;
            }
        }
    }
    bareiss_i128(m.clone()).map(BigInt::from).unwrap_or_else(|| {
        let big: Vec<Vec<BigInt>> = m.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        bareiss_big(big)
    })
}

fn bareiss_i128(mut m: Vec<Vec<i128>>) -> Option<i128> {
    let n = m.len();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let swap = (k + 1..n).find(|&r| m[r][k] != 0)?;
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].checked_mul(m[k][k])?.checked_sub(m[i][k].checked_mul(m[k][j])?)?;
                m[i][j] = v / prev;
            }
        }
        prev = m[k][k];
    }
    Some(sign * m[n - 1][n - 1])
}

fn bareiss_big(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_upoly;
    use crate::numfield::make_cyclic_field;

    fn golden() -> CyclicField {
        make_cyclic_field(&parse_upoly("t^3-3t+1").unwrap()).unwrap()
    }

    #[test]
    fn certificates() {
        let f = golden();
        let c = certify_non_norm(&f, &Rat::from(2), 100).unwrap().unwrap();
        assert_eq!((c.prime, c.valuation), (Some(2), Some(1)));
        assert_eq!(c.kind, CertificateKind::InertPrimeNontrivial);
        assert_eq!(certify_non_norm(&f, &Rat::from(8), 100).unwrap(), None);
        let c5 = certify_non_norm(&f, &Rat::from(5), 100).unwrap().unwrap();
        assert_eq!((c5.prime, c5.valuation), (Some(5), Some(1)));
        assert_eq!(certify_non_norm(&f, &Rat::zero(), 100), Err(Error::ZeroAlpha));
        // 3 ramifies (divides the discriminant), 1/2 has a denominator at 2.
        assert_eq!(certify_non_norm(&f, &Rat::from(3), 100).unwrap(), None);
        assert_eq!(certify_non_norm(&f, &Rat::new(1, 2).unwrap(), 100).unwrap(), None);
    }

    #[test]
    fn preimages() {
        let f = golden();
        assert_eq!(find_norm_preimage(&f, &Rat::from(8), 5).unwrap(), Some(f.from_ints(&[2])));
        assert_eq!(find_norm_preimage(&f, &Rat::one(), 5).unwrap(), Some(f.one()));
        assert_eq!(find_norm_preimage(&f, &Rat::from(-1), 5).unwrap(), Some(f.t()));
        assert_eq!(find_norm_preimage(&f, &Rat::from(2), 5).unwrap(), None);
        let x = find_norm_preimage(&f, &Rat::new(1, 8).unwrap(), 3).unwrap().unwrap();
        assert_eq!(x.norm(), Rat::new(1, 8).unwrap());
    }

    #[test]
    fn integer_norm_agrees_with_conjugate_product() {
        let f = golden();
        let tables = integer_mult_tables(&f);
        for c in [[1i64, 2, 3], [-4, 0, 7], [0, 0, 1], [5, -5, 5]] {
            let e = f.from_ints(&c);
            assert_eq!(Rat::from_int(integer_norm(&tables, &c)), e.norm());
        }
    }
}
