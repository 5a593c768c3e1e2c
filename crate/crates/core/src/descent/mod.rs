//! Galois descent for the Veronese model: the companion cocycle, its
//! splitting (Hilbert 90), the pulled-back ideal and its rational slices.

mod sampling;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{mpoly_normalize, MPoly, Mat, Rat, Scalar};
use crate::error::{Error, Result};
use crate::numfield::{CyclicField, FieldElem};
use crate::veronese::{iota, monomial_basis, veronese_ideal, VeroneseIdeal, VeroneseSpace};

pub use sampling::{sample_points, vanishes_on, vanishes_on_rational, ValidationReport};

/// A cyclic algebra: the field with its distinguished generator, and α.
#[derive(Clone, Debug)]
pub struct CyclicAlgebraInput {
    pub field: CyclicField,
    pub alpha: Rat,
}

impl CyclicAlgebraInput {
    pub fn new(field: CyclicField, alpha: Rat) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::ZeroAlpha);
        }
        Ok(CyclicAlgebraInput { field, alpha })
    }

    /// Dimension of the Brauer–Severi variety.
    pub fn n(&self) -> usize {
        self.field.degree() - 1
    }
}

/// The `d x d` matrix with ones on the superdiagonal and α in the
/// lower-left corner.
pub fn companion_matrix(d: usize, alpha: &Rat) -> Result<Mat<Rat>> {
    if d < 2 {
        return Err(Error::BadDegree(d));
    }
    if alpha.is_zero() {
        return Err(Error::ZeroAlpha);
    }
    Ok(Mat::from_fn(d, d, |i, j| {
        if j == i + 1 {
            Rat::one()
        } else if i == d - 1 && j == 0 {
            alpha.clone()
        } else {
            Rat::zero()
        }
    }))
}

/// `σ^k` applied entrywise.
pub fn galois_mat(a: &Mat<FieldElem>, k: i64) -> Mat<FieldElem> {
    a.map(|e| e.galois(k))
}

/// The cocycle `σ^k ↦ ξ_{σ^k}`, stored for `k = 0..d`.
#[derive(Clone, Debug)]
pub struct Cocycle {
    pub field: CyclicField,
    pub entries: Vec<Mat<FieldElem>>,
}

/// Lifts the companion class through ι: `ξ_σ = ι(A_α)`. Its entries are
/// rational, so `ξ_{σ^k} = ξ_σ^k`.
pub fn lift_cocycle(input: &CyclicAlgebraInput) -> Result<Cocycle> {
    let d = input.field.degree();
    let space = monomial_basis(d - 1)?;
    let xi = iota(&space, &companion_matrix(d, &input.alpha)?)?;
    let xi = xi.map(|r| input.field.from_rat(r.clone()));
    let mut entries = vec![Mat::identity(space.m + 1, &input.field.one())];
    for k in 1..d {
        entries.push(entries[k - 1].mul(&xi)?);
    }
    let cocycle = Cocycle { field: input.field.clone(), entries };
    let outcome = check_cocycle(&cocycle);
    if !outcome.ok {
        return Err(Error::ValidationFailed(format!(
            "lifted cocycle fails the cocycle condition at {:?}",
            outcome.counterexample
        )));
    }
    Ok(cocycle)
}

/// Result of an exact consistency check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub ok: bool,
    /// The first failing group-element index, if any.
    pub counterexample: Option<usize>,
}

impl CheckOutcome {
    fn from_failure(counterexample: Option<usize>) -> Self {
        CheckOutcome { ok: counterexample.is_none(), counterexample }
    }
}

/// `ξ_id = I` and `ξ_{σ^{j+k}} = ξ_{σ^j} σ^j(ξ_{σ^k})`; the counterexample
/// index is `j * d + k`.
pub fn check_cocycle(c: &Cocycle) -> CheckOutcome {
    let d = c.entries.len();
    let size = c.entries[0].nrows();
    if c.entries[0] != Mat::identity(size, &c.field.one()) {
        return CheckOutcome::from_failure(Some(0));
    }
    let fail = (0..d * d).into_par_iter().find_first(|&idx| {
        let (j, k) = (idx / d, idx % d);
        let rhs = c.entries[j].mul(&galois_mat(&c.entries[k], j as i64));
        rhs.map_or(true, |r| r != c.entries[(j + k) % d])
    });
    CheckOutcome::from_failure(fail)
}

/// How a splitting matrix was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitMethod {
    /// The closed-form matrix for cyclic cubics.
    ClosedN2,
    /// Averaging a random matrix over the group.
    Average { seed: u64, attempts: usize },
}

/// An invertible φ with `ξ_{σ^k} = φ σ^k(φ)^{-1}`.
#[derive(Clone, Debug)]
pub struct SplittingMatrix {
    pub phi: Mat<FieldElem>,
    pub method: SplitMethod,
    /// Power of α carried by each row of φ, when the rows have that shape.
    pub row_alpha_powers: Option<Vec<u32>>,
}

/// `φ` is a splitting of `c` iff `ξ_{σ^k} σ^k(φ) = φ` for every k and φ is
/// invertible. A singular φ reports counterexample 0.
pub fn check_splitting(c: &Cocycle, s: &SplittingMatrix) -> CheckOutcome {
    if s.phi.det().is_zero() {
        return CheckOutcome::from_failure(Some(0));
    }
    let d = c.entries.len();
    let fail = (1..d).into_par_iter().find_first(|&k| {
        let lhs = c.entries[k].mul(&galois_mat(&s.phi, k as i64));
        lhs.map_or(true, |l| l != s.phi)
    });
    CheckOutcome::from_failure(fail)
}

/// Nonzero entries of the closed-form φ for cyclic cubics:
/// `(row, col, root index, α power)`, roots `l_1 = t, l_2 = σ(t), l_3 = σ²(t)`.
const CLOSED_N2_PATTERN: [(usize, usize, usize, u32); 28] = [
    (0, 0, 0, 0),
    (0, 6, 1, 0),
    (0, 9, 2, 0),
    (1, 1, 0, 0),
    (1, 5, 1, 0),
    (1, 7, 2, 0),
    (2, 2, 0, 0),
    (2, 3, 1, 0),
    (2, 8, 2, 0),
    (3, 2, 2, 0),
    (3, 3, 0, 0),
    (3, 8, 1, 0),
    (5, 1, 1, 1),
    (5, 5, 2, 1),
    (5, 7, 0, 1),
    (6, 0, 2, 1),
    (6, 6, 0, 1),
    (6, 9, 1, 1),
    (7, 1, 2, 1),
    (7, 5, 0, 1),
    (7, 7, 1, 1),
    (8, 2, 1, 1),
    (8, 3, 2, 1),
    (8, 8, 0, 1),
    (9, 0, 1, 2),
    (9, 6, 2, 2),
    (9, 9, 0, 2),
    // Row 4 is the unit vector; its root index is unused.
    (4, 4, usize::MAX, 0),
];

/// α power carried by each row of the closed-form φ.
pub const CLOSED_N2_ROW_ALPHA_POWERS: [u32; 10] = [0, 0, 0, 0, 0, 1, 1, 1, 1, 2];

/// The closed-form 10x10 matrix for a cyclic cubic field, without any
/// invertibility check.
pub fn closed_form_matrix(input: &CyclicAlgebraInput) -> Result<Mat<FieldElem>> {
    let f = &input.field;
    if f.degree() != 3 {
        return Err(Error::BadDegree(f.degree()));
    }
    let roots = f.roots();
    let mut phi = Mat::zeros(10, 10, &f.one());
    for &(i, j, root, pw) in &CLOSED_N2_PATTERN {
        let base = if root == usize::MAX { f.one() } else { roots[root].clone() };
        phi.set(i, j, base.scale(&input.alpha.pow(pw as i32)));
    }
    Ok(phi)
}

/// The closed-form splitting matrix for a cyclic cubic field. Fails with
/// [`Error::SingularPhi`] when it is not invertible (for example when the
/// roots are linearly dependent).
pub fn closed_form_phi(input: &CyclicAlgebraInput) -> Result<SplittingMatrix> {
    let s = SplittingMatrix {
        phi: closed_form_matrix(input)?,
        method: SplitMethod::ClosedN2,
        row_alpha_powers: Some(CLOSED_N2_ROW_ALPHA_POWERS.to_vec()),
    };
    if s.phi.det().is_zero() {
        return Err(Error::SingularPhi);
    }
    Ok(s)
}

/// Closed-form φ for cyclic cubics, verified against the lifted cocycle.
pub fn hilbert90_closed_n2(input: &CyclicAlgebraInput) -> Result<SplittingMatrix> {
    let s = closed_form_phi(input)?;
    let outcome = check_splitting(&lift_cocycle(input)?, &s);
    if !outcome.ok {
        return Err(Error::ValidationFailed(format!(
            "closed-form φ does not split the cocycle at σ^{}",
            outcome.counterexample.unwrap_or(0)
        )));
    }
    Ok(s)
}

/// Maximum number of random draws in [`hilbert90_average`].
pub const AVERAGE_MAX_ATTEMPTS: usize = 100;

/// Leading draws in [`hilbert90_average`] that use a diagonal B.
pub const AVERAGE_SPARSE_ATTEMPTS: usize = 50;

/// `φ = Σ_k ξ_{σ^k} σ^k(B)` for seeded random B with integer coordinates
/// in `[-9, 9]`, redrawn until φ is invertible. The first
/// [`AVERAGE_SPARSE_ATTEMPTS`] draws are diagonal with entries `±t^e`, which
/// keeps the entries of φ and of the descended equations small; later draws
/// are dense.
pub fn hilbert90_average(c: &Cocycle, seed: u64) -> Result<SplittingMatrix> {
    let f = &c.field;
    let d = f.degree();
    let size = c.entries[0].nrows();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=AVERAGE_MAX_ATTEMPTS {
        let b = if attempt <= AVERAGE_SPARSE_ATTEMPTS {
            let diag: Vec<FieldElem> = (0..size)
                .map(|_| {
                    let e = rng.gen_range(0..d);
                    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                    f.elem((0..d).map(|k| Rat::from(if k == e { sign } else { 0 })).collect())
                })
                .collect();
            Mat::from_fn(size, size, |i, j| if i == j { diag[i].clone() } else { f.zero() })
        } else {
            Mat::from_fn(size, size, |_, _| f.elem((0..d).map(|_| Rat::from(rng.gen_range(-9i64..=9))).collect()))
        };
        let mut phi = c.entries[0].mul(&b)?;
        for k in 1..d {
            phi = phi.add(&c.entries[k].mul(&galois_mat(&b, k as i64))?)?;
        }
        if !phi.det().is_zero() {
            return Ok(SplittingMatrix {
                phi,
                method: SplitMethod::Average { seed, attempts: attempt },
                row_alpha_powers: None,
            });
        }
    }
    Err(Error::ExhaustedRetries(AVERAGE_MAX_ATTEMPTS))
}

/// Substitutes `ω_k ← (row k of φ)·ω` into each equation. With a closed-form
/// φ the common power of α is divided out of each result.
pub fn pull_back(equations: &[MPoly<Rat>], s: &SplittingMatrix, alpha: &Rat) -> Result<Vec<MPoly<FieldElem>>> {
    let rows = s.phi.to_rows();
    let one = s.phi.get(0, 0).one_like();
    equations
        .par_iter()
        .map(|eq| {
            let lifted = eq.map_coeffs(|c| one.from_rat_like(c));
            let mut out = lifted.substitute_linear(&rows)?;
            if let Some(pows) = &s.row_alpha_powers {
                let min =
                    eq.terms().map(|(e, _)| e.iter().zip(pows).map(|(k, p)| k * p).sum::<u32>()).min().unwrap_or(0);
                if min > 0 {
                    out = out.scale_rat(&alpha.pow(-(min as i32)));
                }
            }
            Ok(out)
        })
        .collect()
}

/// Coefficient slices of an equation over L: entry `i` collects the
/// `t^i`-coordinates, so `eq = Σ_i slice_i t^i`.
pub fn coefficient_slices(eq: &MPoly<FieldElem>, d: usize) -> Vec<MPoly<Rat>> {
    (0..d).map(|i| eq.map_coeffs(|c| c.coords()[i].clone())).collect()
}

/// Rational slices of every equation, highest power of t first, with zero
/// slices dropped, each normalized and exact duplicates removed.
pub fn rational_descent(equations: &[MPoly<FieldElem>], field: &CyclicField) -> Vec<MPoly<Rat>> {
    let d = field.degree();
    let slices: Vec<Vec<MPoly<Rat>>> = equations
        .par_iter()
        .map(|eq| {
            let mut s = coefficient_slices(eq, d);
            s.reverse();
            s.iter().filter_map(|p| mpoly_normalize(p).ok()).collect()
        })
        .collect();
    let mut out: Vec<MPoly<Rat>> = Vec::new();
    for p in slices.into_iter().flatten() {
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Keeps a maximal Q-linearly independent subset, in order.
pub fn reduce_linear(equations: &[MPoly<Rat>]) -> Vec<MPoly<Rat>> {
    let mut monos: Vec<Vec<u32>> = equations.iter().flat_map(|e| e.terms().map(|(x, _)| x.clone())).collect();
    monos.sort();
    monos.dedup();
    let mut kept: Vec<MPoly<Rat>> = Vec::new();
    let mut rank = 0;
    for eq in equations {
        let mut rows: Vec<Vec<Rat>> = kept.iter().map(|k| k.coeff_vector(&monos)).collect();
        rows.push(eq.coeff_vector(&monos));
        let r = Mat::from_rows(rows).rank();
        if r > rank {
            rank = r;
            kept.push(eq.clone());
        }
    }
    kept
}

/// Which splitting solver to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Solver {
    /// The closed form when available and invertible, else averaging.
    #[default]
    Closed,
    Average,
}

/// The descended presentation of a Brauer–Severi variety.
#[derive(Clone, Debug)]
pub struct BSPresentation {
    pub n: usize,
    pub m: usize,
    pub input: CyclicAlgebraInput,
    pub space: VeroneseSpace,
    pub ideal: VeroneseIdeal,
    pub equations_over_l: Vec<MPoly<FieldElem>>,
    pub rational_equations: Vec<MPoly<Rat>>,
    pub phi: SplittingMatrix,
    /// Set when the closed form was requested but singular.
    pub closed_form_fallback: bool,
    pub validation: ValidationReport,
}

/// Options for [`bs_smooth_model`].
#[derive(Clone, Debug)]
pub struct SmoothOptions {
    pub solver: Solver,
    pub seed: u64,
    pub sample_count: usize,
    pub reduce: bool,
}

impl Default for SmoothOptions {
    fn default() -> Self {
        SmoothOptions { solver: Solver::Closed, seed: 0, sample_count: 100, reduce: false }
    }
}

/// Runs the full pipeline and validates the result on sampled points.
pub fn bs_smooth_model(input: &CyclicAlgebraInput, opts: &SmoothOptions) -> Result<BSPresentation> {
    let n = input.n();
    let space = monomial_basis(n)?;
    let ideal = veronese_ideal(&space);
    let cocycle = lift_cocycle(input)?;
    let mut fallback = false;
    let phi = match (opts.solver, input.field.degree()) {
        (Solver::Closed, 3) => match closed_form_phi(input) {
            Ok(s) => s,
            Err(Error::SingularPhi) => {
                fallback = true;
                hilbert90_average(&cocycle, opts.seed)?
            }
            Err(e) => return Err(e),
        },
        (Solver::Closed, _) => {
            fallback = true;
            hilbert90_average(&cocycle, opts.seed)?
        }
        (Solver::Average, _) => hilbert90_average(&cocycle, opts.seed)?,
    };
    let outcome = check_splitting(&cocycle, &phi);
    if !outcome.ok {
        return Err(Error::ValidationFailed(format!(
            "φ does not split the cocycle at σ^{}",
            outcome.counterexample.unwrap_or(0)
        )));
    }
    let equations_over_l = pull_back(&ideal.equations, &phi, &input.alpha)?;
    let mut rational_equations = rational_descent(&equations_over_l, &input.field);
    if opts.reduce {
        rational_equations = reduce_linear(&rational_equations);
    }
    let points = sample_points(&space, &phi, opts.sample_count, opts.seed)?;
    let validation = ValidationReport::run(&points, &equations_over_l, &rational_equations, opts.seed);
    if !validation.all_vanish {
        return Err(Error::ValidationFailed(format!(
            "{} of {} sampled points violate an equation",
            validation.failures, validation.points
        )));
    }
    Ok(BSPresentation {
        n,
        m: space.m,
        input: input.clone(),
        space,
        ideal,
        equations_over_l,
        rational_equations,
        phi,
        closed_form_fallback: fallback,
        validation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_upoly;
    use crate::numfield::make_cyclic_field;

    fn input(poly: &str, alpha: i64) -> CyclicAlgebraInput {
        let f = make_cyclic_field(&parse_upoly(poly).unwrap()).unwrap();
        CyclicAlgebraInput::new(f, Rat::from(alpha)).unwrap()
    }

    #[test]
    fn companion_examples() {
        let a = companion_matrix(3, &Rat::from(5)).unwrap();
        assert_eq!(a.row(2), &[Rat::from(5), Rat::zero(), Rat::zero()]);
        assert_eq!(a.pow(3).unwrap(), Mat::identity(3, &Rat::one()).scale(&Rat::from(5)));
        let b = companion_matrix(2, &Rat::from(3)).unwrap();
        assert_eq!(b.to_rows(), vec![vec![Rat::zero(), Rat::one()], vec![Rat::from(3), Rat::zero()]]);
        assert_eq!(companion_matrix(1, &Rat::one()), Err(Error::BadDegree(1)));
        assert_eq!(companion_matrix(3, &Rat::zero()), Err(Error::ZeroAlpha));
    }

    #[test]
    fn cocycle_has_order_d() {
        let inp = input("t^3-3t+1", 2);
        let c = lift_cocycle(&inp).unwrap();
        let cube = c.entries[1].pow(3).unwrap();
        assert_eq!(cube, Mat::identity(10, &inp.field.one()));
        assert!(check_cocycle(&c).ok);
    }

    #[test]
    fn identity_does_not_split_nontrivial_cocycle() {
        let inp = input("t^3-3t+1", 2);
        let c = lift_cocycle(&inp).unwrap();
        let id = SplittingMatrix {
            phi: Mat::identity(10, &inp.field.one()),
            method: SplitMethod::ClosedN2,
            row_alpha_powers: None,
        };
        assert!(!check_splitting(&c, &id).ok);
    }

    #[test]
    fn averaging_splits_conic() {
        let inp = input("t^2+1", 3);
        let c = lift_cocycle(&inp).unwrap();
        let s = hilbert90_average(&c, 5).unwrap();
        assert!(check_splitting(&c, &s).ok);
    }

    #[test]
    fn trivial_cocycle_averages_to_rational() {
        let f = make_cyclic_field(&parse_upoly("t^3-3t+1").unwrap()).unwrap();
        let c = Cocycle { field: f.clone(), entries: vec![Mat::identity(4, &f.one()); 3] };
        let s = hilbert90_average(&c, 1).unwrap();
        assert!(s.phi.entries().iter().all(|e| e.galois(1) == *e));
    }

    #[test]
    fn descent_of_rational_equation_is_itself() {
        let f = make_cyclic_field(&parse_upoly("t^3-3t+1").unwrap()).unwrap();
        let p = crate::arith::parse_mpoly("w0*w2 - w1^2", "w", 3).unwrap();
        let lifted = p.map_coeffs(|c| f.from_rat(c.clone()));
        assert_eq!(rational_descent(&[lifted], &f), vec![p]);
    }

    #[test]
    fn reduce_drops_dependent_equations() {
        let e = |s: &str| crate::arith::parse_mpoly(s, "w", 3).unwrap();
        let eqs = vec![e("w0^2 - w1^2"), e("w1^2 - w2^2"), e("w0^2 - w2^2"), e("w0*w1")];
        assert_eq!(reduce_linear(&eqs).len(), 3);
    }
}
