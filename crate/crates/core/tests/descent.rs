//! End-to-end properties of the descent pipeline and the singular models.

use bsforge_core::arith::{parse_upoly, Mat, Rat, UPoly};
use bsforge_core::descent::{
    bs_smooth_model, check_cocycle, check_splitting, closed_form_phi, coefficient_slices, companion_matrix,
    hilbert90_average, lift_cocycle, sample_points, vanishes_on, vanishes_on_rational, CyclicAlgebraInput,
    SmoothOptions, Solver,
};
use bsforge_core::models::{cubic_closed_form, l_points_of_model, norm_form, singular_model, ExponentMode};
use bsforge_core::numfield::{make_cyclic_field, CyclicField, FieldElem};
use bsforge_core::veronese::{iota, monomial_basis};
use bsforge_core::Error;

fn field(poly: &str) -> CyclicField {
    make_cyclic_field(&parse_upoly(poly).unwrap()).unwrap()
}

fn input(poly: &str, alpha: i64) -> CyclicAlgebraInput {
    CyclicAlgebraInput::new(field(poly), Rat::from(alpha)).unwrap()
}

fn opts(solver: Solver, seed: u64) -> SmoothOptions {
    SmoothOptions { solver, seed, sample_count: 30, reduce: false }
}

/// `t^3 + t^2 - 2t - 1` shifted by `t -> t + k` and scaled by `t -> t / c`.
fn family_cubic(k: i64, c: i64) -> UPoly {
    let base = [-1i64, -2, 1, 1];
    let shifted = UPoly::from_ints(&[k, 1]);
    let mut p = UPoly::zero();
    let mut power = UPoly::one();
    for &b in &base {
        p = &p + &power.scale(&Rat::from(b));
        power = &power * &shifted;
    }
    let coeffs: Vec<Rat> = (0..=3).map(|i| p.coeff(i) * Rat::from(c).pow(3 - i as i32)).collect();
    UPoly::from_coeffs(coeffs)
}

#[test]
fn lifted_cocycles_satisfy_the_cocycle_condition() {
    for (poly, alpha) in [("t^2+1", 3), ("t^3-3t+1", 2), ("t^3+3t^2-1", 5)] {
        let c = lift_cocycle(&input(poly, alpha)).unwrap();
        assert!(check_cocycle(&c).ok, "{poly}");
        if c.entries.len() == 3 {
            assert!(c.entries[1].entries().iter().all(|e| e.as_rat().is_some()));
            assert_eq!(c.entries[2], c.entries[1].mul(&c.entries[1]).unwrap());
        }
    }
}

#[test]
fn iota_of_the_companion_has_order_d() {
    for d in 2..=4 {
        let a = companion_matrix(d, &Rat::from(7)).unwrap();
        let space = monomial_basis(d - 1).unwrap();
        let m = iota(&space, &a).unwrap();
        assert_eq!(m.pow(d as u32).unwrap(), Mat::identity(space.m + 1, &Rat::one()), "d = {d}");
    }
}

#[test]
fn averaging_splits_for_every_seed() {
    for (poly, alpha) in [("t^2+1", 3), ("t^3-3t+1", 2), ("t^3+3t^2-1", 2)] {
        let c = lift_cocycle(&input(poly, alpha)).unwrap();
        for seed in 0..4 {
            let s = hilbert90_average(&c, seed).unwrap();
            assert!(!s.phi.det().is_zero());
            assert!(check_splitting(&c, &s).ok, "{poly} seed {seed}");
        }
    }
}

#[test]
fn closed_form_is_singular_when_the_roots_are_dependent() {
    // The roots of t^3 - 3t + 1 sum to zero.
    assert_eq!(closed_form_phi(&input("t^3-3t+1", 2)).unwrap_err(), Error::SingularPhi);
    let bs = bs_smooth_model(&input("t^3-3t+1", 2), &opts(Solver::Closed, 1)).unwrap();
    assert!(bs.closed_form_fallback);
}

#[test]
fn presentations_are_galois_stable_and_slice_exactly() {
    for (poly, alpha, solver) in [("t^2+1", 3, Solver::Average), ("t^3+3t^2-1", 2, Solver::Closed)] {
        let inp = input(poly, alpha);
        let bs = bs_smooth_model(&inp, &opts(solver, 3)).unwrap();
        let d = inp.field.degree();
        let points = sample_points(&bs.space, &bs.phi, 20, 9).unwrap();
        assert!(vanishes_on_rational(&bs.rational_equations, &points));
        let t = inp.field.t();
        for eq in &bs.equations_over_l {
            for k in 0..d as i64 {
                let conj = eq.map_coeffs(|c| c.galois(k));
                assert!(vanishes_on(std::slice::from_ref(&conj), &points), "{poly}: sigma^{k} of a pullback");
            }
            let slices = coefficient_slices(eq, d);
            let mut rebuilt = eq.map_coeffs(|c| c.field().zero());
            let mut power = inp.field.one();
            for s in &slices {
                rebuilt = rebuilt.add(&s.map_coeffs(|c| power.scale(c)));
                power = &power * &t;
            }
            assert_eq!(&rebuilt, eq);
        }
    }
}

/// Two splittings of one cocycle differ by a rational matrix `M = φ^{-1} φ'`,
/// and the varieties correspond under `M^{-1}`.
#[test]
fn splittings_differ_by_a_rational_change_of_coordinates() {
    let inp = input("t^3+3t^2-1", 2);
    let closed = bs_smooth_model(&inp, &opts(Solver::Closed, 4)).unwrap();
    assert!(!closed.closed_form_fallback);
    let averaged = bs_smooth_model(&inp, &opts(Solver::Average, 4)).unwrap();
    let m = closed.phi.phi.inverse().unwrap().mul(&averaged.phi.phi).unwrap();
    assert!(m.entries().iter().all(|e| e.as_rat().is_some()));
    let m_inv = m.inverse().unwrap();
    let closed_points = sample_points(&closed.space, &closed.phi, 20, 11).unwrap();
    let moved: Vec<Vec<FieldElem>> = closed_points.iter().map(|p| m_inv.mul_vec(p).unwrap()).collect();
    assert!(vanishes_on_rational(&averaged.rational_equations, &moved));
    let averaged_points = sample_points(&averaged.space, &averaged.phi, 20, 11).unwrap();
    let back: Vec<Vec<FieldElem>> = averaged_points.iter().map(|p| m.mul_vec(p).unwrap()).collect();
    assert!(vanishes_on_rational(&closed.rational_equations, &back));
}

#[test]
fn reduce_keeps_the_same_variety() {
    let inp = input("t^3-3t+1", 2);
    let full = bs_smooth_model(&inp, &opts(Solver::Average, 2)).unwrap();
    let reduced = bs_smooth_model(&inp, &SmoothOptions { reduce: true, ..opts(Solver::Average, 2) }).unwrap();
    assert!(reduced.rational_equations.len() <= full.rational_equations.len());
    let points = sample_points(&full.space, &full.phi, 20, 5).unwrap();
    assert!(vanishes_on_rational(&reduced.rational_equations, &points));
}

#[test]
fn norm_form_is_galois_invariant() {
    for poly in ["t^2+1", "t^3-3t+1", "t^3+3t^2-1"] {
        let f = field(poly);
        let basis: Vec<FieldElem> = (0..f.degree())
            .map(|i| f.from_ints(&(0..f.degree()).map(|j| if j <= i { 1 } else { 0 }).collect::<Vec<_>>()))
            .collect();
        let form = norm_form(&f, &basis).unwrap();
        let shifted: Vec<FieldElem> = basis.iter().map(|b| b.galois(1)).collect();
        assert_eq!(norm_form(&f, &shifted).unwrap(), form, "{poly}");
    }
}

#[test]
fn cubic_closed_form_holds_on_a_family_of_cubics() {
    let mut polys: Vec<UPoly> = Vec::new();
    for k in -3..=3 {
        for c in 1..=3 {
            polys.push(family_cubic(k, c));
        }
    }
    polys.truncate(19);
    polys.push(parse_upoly("t^3+3t^2-1").unwrap());
    for p in polys {
        let f = make_cyclic_field(&p).unwrap();
        let (k, assembled) = cubic_closed_form(&f, &Rat::from(2), ExponentMode::Reduced).unwrap();
        let model = singular_model(&f, &Rat::from(2), ExponentMode::Reduced).unwrap();
        assert_eq!(assembled, model.equation, "{p}");
        let diff = &k.d1 - &k.d2;
        assert_eq!(&diff * &diff, *f.discriminant(), "{p}");
    }
    // Trace-zero roots do not form a basis.
    let f = field("t^3-3t+1");
    assert_eq!(cubic_closed_form(&f, &Rat::from(2), ExponentMode::Reduced).unwrap_err(), Error::NotABasis);
}

#[test]
fn singular_models_are_homogeneous_and_carry_the_l_points() {
    for (poly, n) in [("t^2+t+1", 1usize), ("t^3+3t^2-1", 2)] {
        let f = field(poly);
        let alpha = Rat::from(3);
        for mode in [ExponentMode::Raw, ExponentMode::Reduced, ExponentMode::Unit] {
            let model = singular_model(&f, &alpha, mode).unwrap();
            assert!(model.equation.is_homogeneous());
            assert_eq!(model.equation.degree(), Some(n as u32 + 1));
            let mut pure = vec![0u32; n + 2];
            pure[0] = n as u32 + 1;
            assert_eq!(model.equation.coeff(&pure).cloned(), Some(-alpha.pow(mode.exponent(n) as i32)));
            let lifted = model.equation.map_coeffs(|c| f.from_rat(c.clone()));
            for p in l_points_of_model(&model, 5, 1).unwrap() {
                assert!(lifted.eval(&p).is_zero(), "{poly} {}", mode.name());
            }
        }
    }
}
