//! Arithmetic on coordinate vectors in the power basis of Q[t]/(P).

use crate::arith::{Mat, Rat, UPoly};

/// Reduction data for a monic defining polynomial of degree `d`.
#[derive(Debug)]
pub(crate) struct PowerBasis {
    pub poly: UPoly,
    pub degree: usize,
    /// `reductions[k]` holds the coordinates of `t^(d+k)` modulo P.
    reductions: Vec<Vec<Rat>>,
}

impl PowerBasis {
    pub fn new(poly: UPoly) -> Self {
        let d = poly.degree().expect("nonzero polynomial");
        let mut reductions = Vec::with_capacity(d.saturating_sub(1));
        // t^d = -(c_0 + c_1 t + ... + c_{d-1} t^{d-1}) for monic P.
        let mut cur: Vec<Rat> = (0..d).map(|k| -poly.coeff(k)).collect();
        for _ in 0..d.saturating_sub(1) {
            reductions.push(cur.clone());
            // Multiply by t and reduce again.
            let top = cur[d - 1].clone();
            let mut next = vec![Rat::zero(); d];
            for k in (1..d).rev() {
                next[k] = cur[k - 1].clone();
            }
            if !top.is_zero() {
                for (k, v) in next.iter_mut().enumerate() {
                    *v = &*v - &(&top * &poly.coeff(k));
                }
            }
            cur = next;
        }
        PowerBasis { poly, degree: d, reductions }
    }

    pub fn zero(&self) -> Vec<Rat> {
        vec![Rat::zero(); self.degree]
    }

    pub fn one(&self) -> Vec<Rat> {
        let mut v = self.zero();
        v[0] = Rat::one();
        v
    }

    /// Coordinates of an arbitrary polynomial reduced modulo P.
    pub fn reduce_poly(&self, f: &UPoly) -> Vec<Rat> {
        let mut v = self.zero();
        for (k, c) in f.coeffs().iter().enumerate() {
            self.add_power(&mut v, k, c);
        }
        v
    }

    fn add_power(&self, acc: &mut [Rat], k: usize, c: &Rat) {
        if c.is_zero() {
            return;
        }
        if k < self.degree {
            acc[k] += c;
        } else if let Some(red) = self.reductions.get(k - self.degree) {
            for (a, r) in acc.iter_mut().zip(red) {
                if !r.is_zero() {
                    *a += &(c * r);
                }
            }
        } else {
            // Beyond the table: fall back to polynomial division.
            let red = UPoly::monomial(Rat::one(), k).rem(&self.poly);
            for (j, r) in red.coeffs().iter().enumerate() {
                acc[j] += &(c * r);
            }
        }
    }

    pub fn mul(&self, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let d = self.degree;
        let mut conv = vec![Rat::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j] += &(x * y);
                }
            }
        }
        let mut out: Vec<Rat> = conv[..d].to_vec();
        for (k, c) in conv.iter().enumerate().skip(d) {
            self.add_power(&mut out, k, c);
        }
        out
    }

    /// Inverse via the extended Euclidean algorithm; `None` for zero.
    pub fn inv(&self, a: &[Rat]) -> Option<Vec<Rat>> {
        let f = UPoly::from_coeffs(a.to_vec());
        if f.is_zero() {
            return None;
        }
        let (g, s, _) = f.xgcd(&self.poly);
        // P irreducible, so a nonzero residue has gcd 1.
        debug_assert!(g.degree() == Some(0));
        Some(self.reduce_poly(&s))
    }

    /// Evaluates the coordinate polynomial `a` at the element `x`.
    pub fn compose(&self, a: &[Rat], x: &[Rat]) -> Vec<Rat> {
        let mut acc = self.zero();
        for c in a.iter().rev() {
            acc = self.mul(&acc, x);
            acc[0] += c;
        }
        acc
    }

    /// The matrix whose column `j` holds the coordinates of `x^j`, so that
    /// `a(x)` has coordinates `M * a`.
    pub fn substitution_matrix(&self, x: &[Rat]) -> Mat<Rat> {
        let d = self.degree;
        let mut cols = Vec::with_capacity(d);
        let mut pw = self.one();
        for _ in 0..d {
            cols.push(pw.clone());
            pw = self.mul(&pw, x);
        }
        Mat::from_fn(d, d, |i, j| cols[j][i].clone())
    }

    /// Matrix of multiplication by `a` on the power basis.
    pub fn mult_matrix(&self, a: &[Rat]) -> Mat<Rat> {
        let d = self.degree;
        let mut cols = Vec::with_capacity(d);
        let mut pw = self.one();
        for _ in 0..d {
            cols.push(self.mul(a, &pw));
            pw = self.mul(&pw, &self.t());
        }
        Mat::from_fn(d, d, |i, j| cols[j][i].clone())
    }

    pub fn t(&self) -> Vec<Rat> {
        let mut v = self.zero();
        if self.degree > 1 {
            v[1] = Rat::one();
        } else {
            v[0] = -self.poly.coeff(0);
        }
        v
    }

    /// The reduction table as integers; requires integer coefficients.
    pub fn integer_reductions(&self) -> Vec<Vec<num::BigInt>> {
        self.reductions.iter().map(|r| r.iter().map(|c| c.numer().clone()).collect()).collect()
    }

    /// Whether `x` is a root of P.
    pub fn is_root(&self, x: &[Rat]) -> bool {
        self.compose(self.poly.coeffs(), x).iter().all(Rat::is_zero)
    }
}
