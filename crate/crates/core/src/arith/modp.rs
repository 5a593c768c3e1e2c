//! Polynomials over the prime field F_p, as ascending `u64` coefficient lists.

use super::rat::{inv_mod, mulmod};

pub(crate) type Fp = Vec<u64>;

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn sub(a: &[u64], b: &[u64], p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|k| {
                let x = a.get(k).copied().unwrap_or(0);
                let y = b.get(k).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn mul(a: &[u64], b: &[u64], p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a nonzero `m`.
pub(crate) fn rem(a: &[u64], m: &[u64], p: u64) -> Fp {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let inv = inv_mod(m[dm], p).expect("nonzero leading coefficient");
    while r.len() > dm {
        let k = r.len() - 1;
        let q = mulmod(r[k], inv, p);
        for (j, &c) in m.iter().enumerate() {
            let idx = k - dm + j;
            r[idx] = (r[idx] + p - mulmod(q, c, p)) % p;
        }
        r = trim(r);
    }
    r
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Fp {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `base^e mod m`.
pub(crate) fn powmod_poly(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Fp {
    let mut acc = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
        e >>= 1;
        if e > 0 {
            b = rem(&mul(&b, &b, p), m, p);
        }
    }
    acc
}

/// Ben-Or test: `f` of degree `n` is irreducible iff
/// `gcd(f, t^(p^i) - t) = 1` for `1 <= i <= n/2`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let f = trim(f.to_vec());
    let n = f.len().saturating_sub(1);
    if n == 0 {
        return false;
    }
    let t = vec![0, 1];
    let mut frob = rem(&t, &f, p);
    for _ in 0..n / 2 {
        frob = powmod_poly(&frob, p, &f, p);
        let g = gcd(&f, &sub(&frob, &t, p), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn has_root(f: &[u64], p: u64) -> bool {
        (0..p).any(|x| f.iter().rev().fold(0u64, |acc, &c| (mulmod(acc, x, p) + c) % p) == 0)
    }

    #[test]
    fn agrees_with_root_test_for_cubics() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            for a in 0..p {
                for b in 0..p {
                    let f = vec![a, b, 1, 1];
                    assert_eq!(is_irreducible(&f, p), !has_root(&f, p), "{f:?} mod {p}");
                }
            }
        }
    }

    #[test]
    fn quartic_product_of_quadratics_is_reducible() {
        // (t^2+1)^2 mod 3 has no root but is reducible.
        assert!(!is_irreducible(&[1, 0, 2, 0, 1], 3));
        assert!(is_irreducible(&[1, 0, 1], 3));
        // t^4 + t + 1 is irreducible over F_2.
        assert!(is_irreducible(&[1, 1, 0, 0, 1], 2));
    }
}
