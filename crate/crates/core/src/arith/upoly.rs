//! Dense univariate polynomials over Q.
//!
//! Coefficients are stored in ascending degree order: `coeffs[k]` is the
//! coefficient of `t^k`. The zero polynomial has no coefficients and no
//! stored coefficient list ever ends in zero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::{Signed, Zero};

use super::modp;
use super::parse::Cursor;
use super::Rat;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Rat>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        UPoly::from_coeffs(vec![c])
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        UPoly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    pub fn monomial(c: Rat, deg: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); deg + 1];
        coeffs[deg] = c;
        UPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UPoly::from_coeffs(coeffs.iter().map(|&c| Rat::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `t^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(Rat::is_one)
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(Rat::is_integer)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        UPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn make_monic(&self) -> Self {
        match self.lc().recip() {
            Some(inv) => self.scale(&inv),
            None => UPoly::zero(),
        }
    }

    pub fn derivative(&self) -> Self {
        UPoly::from_coeffs(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * Rat::from(k as i64)).collect())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UPoly) -> (UPoly, UPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let inv = divisor.lc().recip().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = &rem[k] * &inv;
            for (j, c) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                rem[idx] = &rem[idx] - &q * c;
            }
            quot[k - dd] = q;
        }
        rem.truncate(dd);
        (UPoly::from_coeffs(quot), UPoly::from_coeffs(rem))
    }

    pub fn rem(&self, divisor: &UPoly) -> UPoly {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Returns `(g, s, u)` with `s*self + u*other = g`, `g` monic.
    pub fn xgcd(&self, other: &UPoly) -> (UPoly, UPoly, UPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UPoly::one(), UPoly::zero());
        let (mut u0, mut u1) = (UPoly::zero(), UPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let u2 = &u0 - &(&q * &u1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            u0 = std::mem::replace(&mut u1, u2);
        }
        match r0.lc().recip() {
            Some(inv) => (r0.scale(&inv), s0.scale(&inv), u0.scale(&inv)),
            None => (r0, s0, u0),
        }
    }

    /// Resultant by the Euclidean recurrence
    /// `Res(A,B) = (-1)^(deg A deg B) lc(B)^(deg A - deg R) Res(B,R)`.
    pub fn resultant(&self, other: &UPoly) -> Rat {
        let (Some(mut m), Some(mut n)) = (self.degree(), other.degree()) else {
            return Rat::zero();
        };
        let (mut a, mut b) = (self.clone(), other.clone());
        let mut acc = Rat::one();
        loop {
            if n == 0 {
                return acc * b.lc().pow(m as i32);
            }
            let r = a.rem(&b);
            let Some(k) = r.degree() else {
                return Rat::zero();
            };
            if (m * n) % 2 == 1 {
                acc = -acc;
            }
            acc = acc * b.lc().pow((m - k) as i32);
            a = b;
            b = r;
            m = n;
            n = k;
        }
    }

    pub fn rational_roots(&self) -> Vec<Rat> {
        // Only used for low-degree irreducibility checks: enumerate candidates
        // p/q with p | a0 and q | lc after clearing denominators.
        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        if deg == 0 {
            return Vec::new();
        }
        let mut roots = Vec::new();
        if self.coeff(0).is_zero() {
            roots.push(Rat::zero());
        }
        let ints = self.integer_primitive();
        let lead = ints.last().expect("nonempty").abs();
        let Some(trail) = ints.iter().find(|c| !c.is_zero()).map(|c| c.abs()) else {
            return roots;
        };
        let divs = |n: &num::BigInt| -> Vec<num::BigInt> {
            let mut out = Vec::new();
            let mut d = num::BigInt::from(1);
            while &d * &d <= *n {
                if (n % &d) == num::BigInt::from(0) {
                    out.push(d.clone());
                    let q = n / &d;
                    if q != d {
                        out.push(q);
                    }
                }
                d += 1;
            }
            out
        };
        for p in divs(&trail) {
            for q in divs(&lead) {
                for s in [1i64, -1] {
                    let cand = Rat::new(&p * num::BigInt::from(s), q.clone()).expect("q > 0");
                    if !roots.contains(&cand) && self.eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    /// The coefficients times the least common denominator, divided by their gcd.
    fn integer_primitive(&self) -> Vec<num::BigInt> {
        use num::Integer;
        let lcm = self.coeffs.iter().fold(num::BigInt::from(1), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<num::BigInt> = self.coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        let g = ints.iter().fold(num::BigInt::from(0), |acc, c| acc.gcd(c));
        if g == num::BigInt::from(0) {
            ints
        } else {
            ints.into_iter().map(|c| c / &g).collect()
        }
    }
}

/// Parses the polynomial grammar
/// `poly := [sign] term (('+'|'-') term)*`,
/// `term := [rational]['*']['t'['^' nat]]`, whitespace ignored.
pub fn parse_upoly(src: &str) -> Result<UPoly> {
    let mut cur = Cursor::new(src);
    let mut acc: Vec<Rat> = Vec::new();
    let mut sign = cur.sign().unwrap_or(1);
    loop {
        let start = cur.pos();
        let coeff = cur.rational()?;
        let star = coeff.is_some() && cur.eat('*');
        let deg = if cur.eat('t') {
            if cur.eat('^') {
                cur.nat()? as usize
            } else {
                1
            }
        } else if star {
            return cur.error("expected 't' after '*'");
        } else if coeff.is_none() {
            cur.skip_ws();
            return if cur.pos() == start && cur.at_end() {
                cur.error("expected a term")
            } else {
                {
                    let c = cur.peek().unwrap_or(' ');
                    cur.error(format!("unexpected character {c:?}"))
                }
            };
        } else {
            0
        };
        let mut c = coeff.unwrap_or_else(Rat::one);
        if sign < 0 {
            c = -c;
        }
        if acc.len() <= deg {
            acc.resize(deg + 1, Rat::zero());
        }
        acc[deg] = &acc[deg] + &c;
        if cur.at_end() {
            break;
        }
        sign = match cur.sign() {
            Some(s) => s,
            None => {
                return {
                    let c = cur.peek().unwrap_or(' ');
                    cur.error(format!("unexpected character {c:?}"))
                }
            }
        };
    }
    Ok(UPoly::from_coeffs(acc))
}

impl FromStr for UPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_upoly(s)
    }
}

/// Canonical text: descending degree, `c*t^k` terms, unit coefficients and
/// `^1` omitted.
impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mon = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            match (a.is_one(), mon.is_empty()) {
                (_, true) => write!(f, "{a}")?,
                (true, false) => write!(f, "{mon}")?,
                (false, false) => write!(f, "{a}*{mon}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({self})")
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UPoly::from_coeffs(out)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for UPoly {
            type Output = UPoly;
            fn $m(self, rhs: UPoly) -> UPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

/// `disc(P) = (-1)^(d(d-1)/2) Res(P, P') / lc(P)`; for a monic cubic
/// `t^3+At^2+Bt+C` this is `18ABC - 4A^3C + A^2B^2 - 4B^3 - 27C^2`.
pub fn discriminant(p: &UPoly) -> Result<Rat> {
    let d = p.degree().unwrap_or(0);
    if d < 2 {
        return Err(Error::DegreeTooLow(d));
    }
    let res = p.resultant(&p.derivative());
    let sign = if (d * (d - 1) / 2) % 2 == 1 { -Rat::one() } else { Rat::one() };
    Ok(sign * res / p.lc())
}

/// Whether the reduction of `p` modulo the prime `prime` is irreducible.
pub fn irreducible_mod_p(p: &UPoly, prime: u64) -> Result<bool> {
    let red = reduce_mod_p(p, prime)?;
    Ok(modp::is_irreducible(&red, prime))
}

/// Coefficients modulo `prime`; fails if it divides a denominator or lc.
pub(crate) fn reduce_mod_p(p: &UPoly, prime: u64) -> Result<Vec<u64>> {
    if !super::rat::is_prime(prime) {
        return Err(Error::Invalid(format!("{prime} is not prime")));
    }
    let mut red = Vec::with_capacity(p.coeffs().len());
    for c in p.coeffs() {
        red.push(c.mod_prime(prime).ok_or(Error::BadPrime(prime))?);
    }
    if red.last().is_none_or(|&c| c == 0) {
        return Err(Error::BadPrime(prime));
    }
    Ok(red)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> UPoly {
        parse_upoly(s).unwrap()
    }

    fn ints(v: &[i64]) -> UPoly {
        UPoly::from_ints(v)
    }

    /// Determinant of the Sylvester matrix, an independent resultant route.
    fn sylvester_resultant(a: &UPoly, b: &UPoly) -> Rat {
        let (m, n) = (a.degree().unwrap(), b.degree().unwrap());
        let size = m + n;
        let mut rows = vec![vec![Rat::zero(); size]; size];
        for i in 0..n {
            for k in 0..=m {
                rows[i][i + k] = a.coeff(m - k);
            }
        }
        for i in 0..m {
            for k in 0..=n {
                rows[n + i][i + k] = b.coeff(n - k);
            }
        }
        crate::arith::Mat::from_rows(rows).det()
    }

    #[test]
    fn parses_canonical_output() {
        assert_eq!(p("t^3-3t+1"), ints(&[1, -3, 0, 1]));
        assert_eq!(p("t^3 + 3t^2 - 1"), ints(&[-1, 0, 3, 1]));
        assert_eq!(p("2t"), ints(&[0, 2]));
        assert_eq!(p("-t^2 + 1/2*t"), UPoly::from_coeffs(vec![Rat::zero(), "1/2".parse().unwrap(), Rat::from(-1)]));
        assert_eq!(p("t + t"), ints(&[0, 2]));
        assert_eq!(p("3 \u{2212} t"), ints(&[3, -1]));
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_upoly("t^3 + x") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_upoly(""), Err(Error::Syntax { .. })));
        assert!(matches!(parse_upoly("t^"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_upoly("3*"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_upoly("t t"), Err(Error::Syntax { .. })));
        assert_eq!(parse_upoly("1/0 t"), Err(Error::DivByZero));
    }

    #[test]
    fn printer_is_canonical() {
        assert_eq!(p("1 - 3t + t^3").to_string(), "t^3 - 3*t + 1");
        assert_eq!(p("-t^2 - 1/2").to_string(), "-t^2 - 1/2");
        assert_eq!(UPoly::zero().to_string(), "0");
        assert_eq!(p("2t").to_string(), "2*t");
    }

    #[test]
    fn discriminant_values() {
        assert_eq!(discriminant(&p("t^3-3t+1")).unwrap(), Rat::from(81));
        assert_eq!(discriminant(&p("t^3+t^2-2t-1")).unwrap(), Rat::from(49));
        assert_eq!(discriminant(&p("t^3-t")).unwrap(), Rat::from(4));
        assert_eq!(discriminant(&p("t^3-2")).unwrap(), Rat::from(-108));
        assert_eq!(discriminant(&p("t^2+1")).unwrap(), Rat::from(-4));
        assert_eq!(discriminant(&p("t+1")), Err(Error::DegreeTooLow(1)));
    }

    #[test]
    fn discriminant_matches_oracles() {
        // Sylvester route: disc = (-1)^(d(d-1)/2) Res / lc.
        let f = p("t^3+t^2-2t-1");
        assert_eq!(sylvester_resultant(&f, &f.derivative()), Rat::from(-49));
        // Root-difference route for t^3 - t with roots {0, 1, -1}.
        let roots = [0i64, 1, -1];
        let mut prod = Rat::one();
        for i in 0..3 {
            for j in i + 1..3 {
                let d = Rat::from(roots[i] - roots[j]);
                prod = prod * &d * &d;
            }
        }
        assert_eq!(discriminant(&p("t^3-t")).unwrap(), prod);
        // Closed cubic formula.
        let (a, b, c) = (Rat::from(3), Rat::from(0), Rat::from(-1));
        let formula = Rat::from(18) * &a * &b * &c - Rat::from(4) * a.pow(3) * &c + a.pow(2) * b.pow(2)
            - Rat::from(4) * b.pow(3)
            - Rat::from(27) * c.pow(2);
        assert_eq!(discriminant(&p("t^3+3t^2-1")).unwrap(), formula);
    }

    #[test]
    fn irreducibility_mod_p() {
        let f = p("t^3-3t+1");
        assert!(irreducible_mod_p(&f, 2).unwrap());
        assert!(!irreducible_mod_p(&f, 3).unwrap());
        assert!(!irreducible_mod_p(&p("t^3-1"), 7).unwrap());
        assert!(irreducible_mod_p(&p("t^2+1"), 3).unwrap());
        assert_eq!(irreducible_mod_p(&p("t^3 + 1/2"), 2), Err(Error::BadPrime(2)));
        assert_eq!(irreducible_mod_p(&p("3t^3 + 1"), 3), Err(Error::BadPrime(3)));
    }

    #[test]
    fn cubic_irreducibility_is_no_root_mod_p() {
        let f = p("t^3-3t+1");
        for prime in crate::arith::rat::primes_up_to(60) {
            let has_root = (0..prime)
                .any(|x| f.eval(&Rat::from(x as i64)).numer() % num::BigInt::from(prime) == num::BigInt::from(0));
            assert_eq!(irreducible_mod_p(&f, prime).unwrap(), !has_root, "p = {prime}");
        }
    }

    #[test]
    fn gcd_and_xgcd() {
        let a = &p("t - 1") * &p("t^2 + 1");
        let b = &p("t - 1") * &p("t + 3");
        assert_eq!(a.gcd(&b), p("t - 1"));
        let (g, s, u) = a.xgcd(&b);
        assert_eq!(&(&s * &a) + &(&u * &b), g);
    }

    #[test]
    fn rational_roots_found() {
        assert_eq!(p("2t^2 - 3t + 1").rational_roots(), vec!["1/2".parse().unwrap(), Rat::one()]);
        assert!(p("t^3-3t+1").rational_roots().is_empty());
        assert_eq!(p("t^3 - t").rational_roots().len(), 3);
    }
}
