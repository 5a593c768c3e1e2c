//! Finding the roots of P inside Q[t]/(P).
//!
//! Degrees 2 and 3 use closed forms. Higher degrees lift the Frobenius root
//! `t^p` from an inert prime p-adically and recover rational coordinates by
//! rational reconstruction, accepting a candidate only once it is verified
//! to be an exact root.

use num::{BigInt, Integer, One, Signed, Zero};

use super::basis::PowerBasis;
use crate::arith::modp;
use crate::arith::rat::primes_up_to;
use crate::arith::upoly::reduce_mod_p;
use crate::arith::{discriminant, irreducible_mod_p, Rat, UPoly};
use crate::error::{Error, Result};

/// Largest prime scanned when looking for an inert prime.
pub(crate) const INERT_PRIME_BOUND: u64 = 10_000;

/// Smallest prime not dividing `disc` modulo which P stays irreducible.
pub(crate) fn inert_prime(poly: &UPoly, disc: &Rat) -> Option<u64> {
    primes_up_to(INERT_PRIME_BOUND)
        .filter(|&p| disc.mod_prime(p).is_some_and(|r| r != 0))
        .find(|&p| irreducible_mod_p(poly, p).unwrap_or(false))
}

/// A root of P in Q[t]/(P) different from `t`, generating the Galois group.
pub(crate) fn generator_root(basis: &PowerBasis) -> Result<Vec<Rat>> {
    let poly = &basis.poly;
    let d = basis.degree;
    let disc = discriminant(poly)?;
    match d {
        2 => {
            // Roots sum to -A.
            let mut r = basis.zero();
            r[0] = -poly.coeff(1);
            r[1] = -Rat::one();
            Ok(r)
        }
        3 => {
            let Some(delta) = disc.sqrt_exact() else {
                return Err(Error::NotGalois(format!("discriminant {disc} is not a square")));
            };
            // The other roots solve x^2 + (t+A)x + (t^2+At+B) = 0 and are
            // (-(t+A) + delta/P'(t)) / 2 up to the choice of sign.
            let dp = basis.reduce_poly(&poly.derivative());
            let dp_inv = basis.inv(&dp).expect("P' is nonzero mod an irreducible P");
            let half = Rat::new(1, 2).expect("nonzero");
            let r: Vec<Rat> = (0..3)
                .map(|k| {
                    let lin = match k {
                        0 => -poly.coeff(2),
                        1 => -Rat::one(),
                        _ => Rat::zero(),
                    };
                    (lin + &delta * &dp_inv[k]) * &half
                })
                .collect();
            if !basis.is_root(&r) {
                return Err(Error::NotGalois("conjugate root not found in the field".into()));
            }
            Ok(r)
        }
        _ => {
            let p = inert_prime(poly, &disc).ok_or_else(|| {
                Error::NotGalois(format!(
                    "no prime below {INERT_PRIME_BOUND} keeps P irreducible; \
                     P is reducible or its Galois group is not cyclic"
                ))
            })?;
            frobenius_root(basis, p)
        }
    }
}

/// Lifts the Frobenius root `t^p mod (P, p)` to an exact rational root.
pub(crate) fn frobenius_root(basis: &PowerBasis, p: u64) -> Result<Vec<Rat>> {
    let d = basis.degree;
    let red = reduce_mod_p(&basis.poly, p)?;
    let x0 = modp::powmod_poly(&[0, 1], p, &red, p);
    let ints: Vec<BigInt> = basis.poly.coeffs().iter().map(|c| c.numer().clone()).collect();
    let mut ring = ModRing { poly: ints, modulus: BigInt::from(p) };
    let mut x: Vec<BigInt> = (0..d).map(|k| BigInt::from(x0.get(k).copied().unwrap_or(0))).collect();
    let deriv: Vec<BigInt> = ring.poly.iter().enumerate().skip(1).map(|(k, c)| c * k).collect();
    // The inverse of P'(x) is lifted by Newton iteration alongside the root.
    let mut y = ring.inv_mod_p(&ring.eval(&deriv, &x), p)?;
    // Stop once the modulus exceeds 2^8192: roots of small polynomials have
    // far smaller coordinates.
    let cap = BigInt::one() << 8192usize;
    loop {
        let m2 = &ring.modulus * &ring.modulus;
        ring.modulus = m2;
        // Newton step for the root, then for the inverse of P'(x).
        let fx = ring.eval(&ring.poly.clone(), &x);
        x = ring.sub(&x, &ring.mul(&fx, &y));
        let dx = ring.eval(&deriv, &x);
        let two = ring.constant(BigInt::from(2));
        y = ring.mul(&y, &ring.sub(&two, &ring.mul(&dx, &y)));
        if let Some(cand) = reconstruct(&x, &ring.modulus) {
            if basis.is_root(&cand) {
                return Ok(cand);
            }
        }
        if ring.modulus > cap {
            return Err(Error::NotGalois("p-adic root did not reconstruct to a rational root".into()));
        }
    }
}

/// Arithmetic in (Z/M)[t]/(P) for monic integer P.
struct ModRing {
    poly: Vec<BigInt>,
    modulus: BigInt,
}

impl ModRing {
    fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    fn norm(&self, v: BigInt) -> BigInt {
        v.mod_floor(&self.modulus)
    }

    fn constant(&self, c: BigInt) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.degree()];
        v[0] = self.norm(c);
        v
    }

    fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        a.iter().zip(b).map(|(x, y)| self.norm(x - y)).collect()
    }

    fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let d = self.degree();
        let mut conv = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                conv[i + j] += x * y;
            }
        }
        for k in (d..conv.len()).rev() {
            let top = std::mem::take(&mut conv[k]);
            if top.is_zero() {
                continue;
            }
            for j in 0..d {
                conv[k - d + j] -= &top * &self.poly[j];
            }
        }
        conv.truncate(d);
        conv.into_iter().map(|c| self.norm(c)).collect()
    }

    /// Evaluates the integer polynomial `f` (ascending) at `x`.
    fn eval(&self, f: &[BigInt], x: &[BigInt]) -> Vec<BigInt> {
        let mut acc = vec![BigInt::zero(); self.degree()];
        for c in f.iter().rev() {
            acc = self.mul(&acc, x);
            acc[0] = self.norm(&acc[0] + c);
        }
        acc
    }

    /// Inverse of `a` modulo (P, p) in F_p[t]/(P).
    fn inv_mod_p(&self, a: &[BigInt], p: u64) -> Result<Vec<BigInt>> {
        let pb = BigInt::from(p);
        let to_u64 = |c: &BigInt| -> u64 { c.mod_floor(&pb).try_into().expect("reduced mod p") };
        let f: Vec<u64> = self.poly.iter().map(to_u64).collect();
        let av: Vec<u64> = a.iter().map(to_u64).collect();
        // F_p[t]/(P) is a field of order q = p^d and a^(-1) = a^(q-2). In
        // base p, q-2 has digits (p-2, p-1, ..., p-1), so the power is a
        // product of Frobenius images raised to single digits.
        let mut inv = vec![1u64];
        let mut frob = av;
        for i in 0..self.degree() {
            let digit = if i == 0 { p - 2 } else { p - 1 };
            let term = modp::powmod_poly(&frob, digit, &f, p);
            inv = modp::rem(&mul_mod(&inv, &term, p), &f, p);
            frob = modp::powmod_poly(&frob, p, &f, p);
        }
        if inv.is_empty() {
            return Err(Error::NotGalois("derivative vanishes at the Frobenius root".into()));
        }
        let mut out = vec![BigInt::zero(); self.degree()];
        for (k, c) in inv.iter().enumerate() {
            out[k] = BigInt::from(*c);
        }
        Ok(out)
    }
}

fn mul_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
        }
    }
    out
}

/// Rational reconstruction of every coordinate, or `None` if one fails.
fn reconstruct(x: &[BigInt], m: &BigInt) -> Option<Vec<Rat>> {
    x.iter().map(|a| rational_reconstruction(a, m)).collect()
}

/// The unique `n/d` with `|n|, d <= sqrt(m/2)` and `n = a d mod m`, if any.
pub(crate) fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<Rat> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Rat::new(r1, s1).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_upoly;

    #[test]
    fn reconstructs_small_fractions() {
        let m = BigInt::from(10007u32).pow(2);
        let x = (BigInt::from(-3) * inverse(7, &m)).mod_floor(&m);
        assert_eq!(rational_reconstruction(&x, &m), Some(Rat::new(-3, 7).unwrap()));
    }

    fn inverse(a: i64, m: &BigInt) -> BigInt {
        let e = num::integer::Integer::extended_gcd(&BigInt::from(a), m);
        e.x.mod_floor(m)
    }

    #[test]
    fn hensel_route_agrees_with_closed_form_for_cubics() {
        for src in ["t^3-3t+1", "t^3+t^2-2t-1", "t^3-21t-35"] {
            let basis = PowerBasis::new(parse_upoly(src).unwrap());
            let closed = generator_root(&basis).unwrap();
            let disc = discriminant(&basis.poly).unwrap();
            let p = inert_prime(&basis.poly, &disc).unwrap();
            let lifted = frobenius_root(&basis, p).unwrap();
            let other = basis.compose(&closed, &closed);
            assert!(lifted == closed || lifted == other, "{src}");
        }
    }

    #[test]
    fn quartic_and_quintic_roots() {
        // Cyclic quartic (conductor 5) and quintic (conductor 11).
        for src in ["t^4+t^3+t^2+t+1", "t^5+t^4-4t^3-3t^2+3t+1"] {
            let basis = PowerBasis::new(parse_upoly(src).unwrap());
            let r = generator_root(&basis).unwrap();
            assert!(basis.is_root(&r), "{src}");
            assert_ne!(r, basis.t());
        }
    }

    #[test]
    fn non_square_discriminant_is_not_galois() {
        let basis = PowerBasis::new(parse_upoly("t^3-2").unwrap());
        assert!(matches!(generator_root(&basis), Err(Error::NotGalois(_))));
    }
}
