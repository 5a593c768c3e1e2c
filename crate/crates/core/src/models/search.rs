//! Naive bounded search for rational points on projective varieties.

use num::{BigInt, Integer, One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::Rat;
use crate::arith::{Exps, MPoly};
use crate::error::{Error, Result};

/// The equation scaled by the lcm of its coefficient denominators.
pub fn integral_equation(eq: &MPoly<Rat>) -> Vec<(Exps, BigInt)> {
    let lcm = eq.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    eq.terms().map(|(e, c)| (e.clone(), c.numer() * (&lcm / c.denom()))).collect()
}

struct Term {
    exps: Exps,
    small: Option<i128>,
    big: BigInt,
}

fn eval_small(terms: &[Term], x: &[i64]) -> Option<i128> {
    let mut acc: i128 = 0;
    for t in terms {
        let mut v = t.small?;
        for (&xi, &k) in x.iter().zip(&t.exps) {
            for _ in 0..k {
                v = v.checked_mul(xi as i128)?;
            }
        }
        acc = acc.checked_add(v)?;
    }
    Some(acc)
}

fn eval_big(terms: &[Term], x: &[i64]) -> BigInt {
    terms.iter().fold(BigInt::zero(), |acc, t| {
        let v = x.iter().zip(&t.exps).fold(t.big.clone(), |v, (&xi, &k)| v * BigInt::from(xi).pow(k));
        acc + v
    })
}

fn vanishes(terms: &[Term], x: &[i64]) -> bool {
    match eval_small(terms, x) {
        Some(v) => v == 0,
        None => eval_big(terms, x).is_zero(),
    }
}

/// Finds a point with coprime integer coordinates `|x_i| <= height`
/// (first nonzero coordinate positive) on which every equation vanishes.
/// The enumeration order is fixed, so the result is deterministic.
pub fn find_rational_point(eqs: &[MPoly<Rat>], height: u64) -> Result<Option<Vec<i64>>> {
    let nvars = match eqs.first() {
        Some(e) => e.nvars(),
        None => return Err(Error::Invalid("no equations to search".into())),
    };
    if eqs.iter().any(|e| e.nvars() != nvars) {
        return Err(Error::DimensionMismatch("equations in different ambient spaces".into()));
    }
    let h = i64::try_from(height).map_err(|_| Error::Invalid("height bound too large".into()))?;
    let side = 2 * height + 1;
    let total = side
        .checked_pow(nvars as u32)
        .filter(|&t| t <= 1 << 40)
        .ok_or_else(|| Error::Invalid(format!("search space of height {height} in P^{} is too large", nvars - 1)))?;
    let systems: Vec<Vec<Term>> = eqs
        .iter()
        .map(|eq| {
            integral_equation(eq).into_iter().map(|(exps, big)| Term { exps, small: big.to_i128(), big }).collect()
        })
        .collect();
    let found = (0..total).into_par_iter().find_map_first(|mut idx| {
        let mut x = vec![0i64; nvars];
        for slot in x.iter_mut().rev() {
            *slot = (idx % side) as i64 - h;
            idx /= side;
        }
        let first = *x.iter().find(|&&c| c != 0)?;
        if first < 0 || x.iter().fold(0i64, |g, &c| g.gcd(&c)) != 1 {
            return None;
        }
        systems.iter().all(|s| vanishes(s, &x)).then_some(x)
    });
    Ok(found)
}
