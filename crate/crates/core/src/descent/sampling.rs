//! Exact validation on parametrized points `φ^{-1}·V(x)`, `x ∈ P^n(L)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use num::{BigInt, Integer, One, Zero};

use super::SplittingMatrix;
use crate::arith::{Exps, MPoly, Rat};
use crate::error::Result;
use crate::numfield::{CyclicField, FieldElem};
use crate::veronese::{veronese_point, VeroneseSpace};

/// Coordinates of sampled source points are integers in `[-BOUND, BOUND]`.
const COORD_BOUND: i64 = 20;

/// Draws `count` points `x ∈ P^n(L)` with small integer coordinates and
/// returns `φ^{-1}·V(x)`, which lies on the twisted variety.
pub fn sample_points(
    space: &VeroneseSpace,
    s: &SplittingMatrix,
    count: usize,
    seed: u64,
) -> Result<Vec<Vec<FieldElem>>> {
    let field = s.phi.get(0, 0).field().clone();
    let d = field.degree();
    let inv = s.phi.inverse()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // A separate stream from the one used for averaging.
    rng.set_stream(1);
    let mut sources = Vec::with_capacity(count);
    while sources.len() < count {
        let x: Vec<FieldElem> = (0..=space.n)
            .map(|_| field.elem((0..d).map(|_| Rat::from(rng.gen_range(-COORD_BOUND..=COORD_BOUND))).collect()))
            .collect();
        if x.iter().any(|c| !c.is_zero()) {
            sources.push(x);
        }
    }
    sources.par_iter().map(|x| inv.mul_vec(&veronese_point(space, x)?)).collect()
}

/// Integer arithmetic in Z[t]/(P); every check below runs on integral
/// representatives, which is exact and avoids rational renormalization.
struct IntField {
    d: usize,
    /// Coordinates of `t^(d+k)`.
    reductions: Vec<Vec<BigInt>>,
}

impl IntField {
    fn new(field: &CyclicField) -> Self {
        IntField { d: field.degree(), reductions: field.integer_reductions() }
    }

    fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let d = self.d;
        let mut conv = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<BigInt> = conv.drain(..d).collect();
        for (k, c) in conv.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(&self.reductions[k]) {
                *o += c * r;
            }
        }
        out
    }
}

/// Scales a projective point to coprime integer coordinates.
fn integral_point(p: &[FieldElem]) -> Vec<Vec<BigInt>> {
    let lcm = p.iter().flat_map(|x| x.coords().iter()).fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<Vec<BigInt>> =
        p.iter().map(|x| x.coords().iter().map(|c| c.numer() * (&lcm / c.denom())).collect()).collect();
    let g = ints.iter().flatten().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        return ints;
    }
    ints.into_iter().map(|v| v.into_iter().map(|c| c / &g).collect()).collect()
}

/// An equation scaled to integral coefficients (a nonzero rational multiple).
struct IntEquation {
    terms: Vec<(Exps, Vec<BigInt>)>,
}

impl IntEquation {
    fn from_l(eq: &MPoly<FieldElem>) -> Self {
        let lcm = eq.terms().flat_map(|(_, c)| c.coords().iter()).fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let terms = eq
            .terms()
            .map(|(e, c)| (e.clone(), c.coords().iter().map(|x| x.numer() * (&lcm / x.denom())).collect()))
            .collect();
        IntEquation { terms }
    }

    fn from_q(eq: &MPoly<Rat>, d: usize) -> Self {
        let lcm = eq.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let terms = eq
            .terms()
            .map(|(e, c)| {
                let mut v = vec![BigInt::zero(); d];
                v[0] = c.numer() * (&lcm / c.denom());
                (e.clone(), v)
            })
            .collect();
        IntEquation { terms }
    }

    fn max_exponent(&self) -> u32 {
        self.terms.iter().flat_map(|(e, _)| e.iter().copied()).max().unwrap_or(0)
    }

    fn vanishes(&self, ring: &IntField, pw: &Powers) -> bool {
        let mut acc = vec![BigInt::zero(); ring.d];
        for (e, c) in &self.terms {
            let m = pw.monomial(ring, e);
            let v = if c[1..].iter().all(Zero::is_zero) {
                m.into_iter().map(|x| x * &c[0]).collect()
            } else {
                ring.mul(&m, c)
            };
            for (a, x) in acc.iter_mut().zip(v) {
                *a += x;
            }
        }
        acc.iter().all(Zero::is_zero)
    }
}

/// Per-point power table so each monomial costs at most `deg` products.
struct Powers {
    table: Vec<Vec<Vec<BigInt>>>,
}

impl Powers {
    fn new(ring: &IntField, point: &[Vec<BigInt>], max_deg: u32) -> Self {
        let mut one = vec![BigInt::zero(); ring.d];
        one[0] = BigInt::one();
        let table = point
            .iter()
            .map(|x| {
                let mut row = vec![one.clone()];
                for k in 1..=max_deg as usize {
                    let next = ring.mul(&row[k - 1], x);
                    row.push(next);
                }
                row
            })
            .collect();
        Powers { table }
    }

    fn monomial(&self, ring: &IntField, e: &[u32]) -> Vec<BigInt> {
        let mut acc: Option<Vec<BigInt>> = None;
        for (i, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let v = &self.table[i][k as usize];
            acc = Some(match acc {
                None => v.clone(),
                Some(a) => ring.mul(&a, v),
            });
        }
        acc.unwrap_or_else(|| self.table[0][0].clone())
    }
}

/// Counts the points at which some equation does not vanish.
fn count_failures(equations: &[IntEquation], points: &[Vec<FieldElem>]) -> usize {
    let Some(field) = points.first().and_then(|p| p.first()).map(|x| x.field().clone()) else {
        return 0;
    };
    let ring = IntField::new(&field);
    let deg = equations.iter().map(IntEquation::max_exponent).max().unwrap_or(0);
    points
        .par_iter()
        .filter(|p| {
            let pw = Powers::new(&ring, &integral_point(p), deg);
            !equations.iter().all(|e| e.vanishes(&ring, &pw))
        })
        .count()
}

fn prepare(over_l: &[MPoly<FieldElem>], rational: &[MPoly<Rat>], d: usize) -> Vec<IntEquation> {
    over_l.iter().map(IntEquation::from_l).chain(rational.iter().map(|e| IntEquation::from_q(e, d))).collect()
}

fn point_degree(points: &[Vec<FieldElem>]) -> usize {
    points.first().and_then(|p| p.first()).map_or(1, |x| x.field().degree())
}

/// Whether every equation over L vanishes at every point.
pub fn vanishes_on(eqs: &[MPoly<FieldElem>], points: &[Vec<FieldElem>]) -> bool {
    count_failures(&prepare(eqs, &[], point_degree(points)), points) == 0
}

/// Whether every rational equation vanishes at every point.
pub fn vanishes_on_rational(eqs: &[MPoly<Rat>], points: &[Vec<FieldElem>]) -> bool {
    count_failures(&prepare(&[], eqs, point_degree(points)), points) == 0
}

/// Outcome of exact vanishing checks on sampled points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub points: usize,
    pub seed: u64,
    /// Number of points at which some equation does not vanish.
    pub failures: usize,
    pub all_vanish: bool,
}

impl ValidationReport {
    pub fn run(points: &[Vec<FieldElem>], over_l: &[MPoly<FieldElem>], rational: &[MPoly<Rat>], seed: u64) -> Self {
        let failures = count_failures(&prepare(over_l, rational, point_degree(points)), points);
        ValidationReport { points: points.len(), seed, failures, all_vanish: failures == 0 }
    }
}
