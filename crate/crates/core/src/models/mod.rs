//! Singular hypersurface models: the norm form `N(Σ l_i x_i) = α^e x_0^d`,
//! its expanded cubic form, the toric model `B_n` and L-point generation.

mod search;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{Exps, MPoly, Mat, Rat};
use crate::error::{Error, Result};
use crate::numfield::{roots_form_basis, CyclicField, FieldElem};

pub use search::{find_rational_point, integral_equation};

/// How the exponent `e` of `α^e` in a singular model is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExponentMode {
    /// `e = n(n+3)/2`.
    Raw,
    /// `e = n(n+3)/2 mod (n+1)`.
    Reduced,
    /// `e = 1`, the classical norm-form model.
    Unit,
    /// A caller-chosen exponent.
    Explicit(u32),
}

impl ExponentMode {
    pub fn exponent(self, n: usize) -> u32 {
        let raw = (n * (n + 3) / 2) as u32;
        match self {
            ExponentMode::Raw => raw,
            ExponentMode::Reduced => raw % (n as u32 + 1),
            ExponentMode::Unit => 1,
            ExponentMode::Explicit(e) => e,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ExponentMode::Raw => "raw",
            ExponentMode::Reduced => "reduced",
            ExponentMode::Unit => "unit",
            ExponentMode::Explicit(_) => "explicit",
        }
    }
}

impl std::str::FromStr for ExponentMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw" => Ok(ExponentMode::Raw),
            "reduced" => Ok(ExponentMode::Reduced),
            "unit" => Ok(ExponentMode::Unit),
            other => other
                .parse::<u32>()
                .map(ExponentMode::Explicit)
                .map_err(|_| Error::Invalid(format!("unknown exponent mode {other:?}"))),
        }
    }
}

/// The coefficient of each linear form `Σ_i σ^k(l_i) x_{i+1}`, row `k`.
fn conjugate_forms(basis: &[FieldElem]) -> Vec<Vec<FieldElem>> {
    let d = basis.len();
    (0..d).map(|k| basis.iter().map(|l| l.galois(k as i64)).collect()).collect()
}

/// Expands `N(Σ l_i x_{i+1}) = Π_k Σ_i σ^k(l_i) x_{i+1}` in the variables
/// `x_0..x_d` (the result does not involve `x_0`).
pub fn norm_form(field: &CyclicField, basis: &[FieldElem]) -> Result<MPoly<Rat>> {
    if basis.iter().any(|l| l.field() != field) {
        return Err(Error::MixedFields);
    }
    if !field.is_basis(basis) {
        return Err(Error::NotABasis);
    }
    let d = field.degree();
    let one = field.one();
    let mut prod = MPoly::constant(d + 1, one.clone());
    for row in conjugate_forms(basis) {
        let mut coeffs = vec![field.zero()];
        coeffs.extend(row);
        prod = prod.mul(&MPoly::linear(&coeffs));
    }
    rationalize(&prod)
}

fn rationalize(f: &MPoly<FieldElem>) -> Result<MPoly<Rat>> {
    let mut terms = Vec::with_capacity(f.len());
    for (e, c) in f.terms() {
        let r = c.as_rat().ok_or_else(|| Error::NonRationalCoefficient(format!("{c} at exponent {e:?}")))?;
        terms.push((e.clone(), r));
    }
    Ok(MPoly::from_terms(f.nvars(), terms))
}

/// The singular model `N(Σ l_i x_i) - α^e x_0^{n+1} = 0` in `P^{n+1}`.
#[derive(Clone, Debug)]
pub struct SingularModel {
    pub n: usize,
    pub field: CyclicField,
    pub alpha: Rat,
    pub basis: Vec<FieldElem>,
    pub exponent_mode: ExponentMode,
    pub exponent: u32,
    /// Homogeneous of degree `n+1` in `x_0..x_{n+1}`.
    pub equation: MPoly<Rat>,
}

impl SingularModel {
    /// The coefficient `α^e` on the right-hand side.
    pub fn rhs(&self) -> Rat {
        self.alpha.pow(self.exponent as i32)
    }
}

/// The singular model over the basis of conjugate roots.
pub fn singular_model(field: &CyclicField, alpha: &Rat, mode: ExponentMode) -> Result<SingularModel> {
    if !roots_form_basis(field) {
        return Err(Error::NotABasis);
    }
    singular_model_with_basis(field, alpha, &field.roots(), mode)
}

pub fn singular_model_with_basis(
    field: &CyclicField,
    alpha: &Rat,
    basis: &[FieldElem],
    mode: ExponentMode,
) -> Result<SingularModel> {
    if alpha.is_zero() {
        return Err(Error::ZeroAlpha);
    }
    let d = field.degree();
    let n = d - 1;
    let exponent = mode.exponent(n);
    let norm = norm_form(field, basis)?;
    let mut pure = vec![0u32; d + 1];
    pure[0] = d as u32;
    let rhs = alpha.pow(exponent as i32);
    let equation = norm.sub(&MPoly::from_terms(d + 1, [(pure, rhs)]));
    Ok(SingularModel {
        n,
        field: field.clone(),
        alpha: alpha.clone(),
        basis: basis.to_vec(),
        exponent_mode: mode,
        exponent,
        equation,
    })
}

/// Coefficients of the expanded cubic norm form for `P = t^3 + A t^2 + B t + C`
/// over the root basis `l_1 = t, l_2 = σ(t), l_3 = σ^2(t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicNormCoeffs {
    /// Coefficient of each `x_i^3`, equal to `-C`.
    pub c_pure: Rat,
    /// `l_1^2 l_2 + l_2^2 l_3 + l_3^2 l_1`, coefficient of the cyclic `x_i^2 x_{i+1}` terms.
    pub d1: Rat,
    /// `l_1 l_2^2 + l_2 l_3^2 + l_3 l_1^2`, coefficient of the cyclic `x_i x_{i+1}^2` terms.
    pub d2: Rat,
    /// Coefficient of `x_1 x_2 x_3` from the expansion.
    pub c_mixed: Rat,
    /// The value `3AB - A^3` of the reference closed form.
    pub reference_mixed: Rat,
    /// Set when `c_mixed` differs from `reference_mixed`.
    pub mixed_deviates: bool,
}

/// Computes the cubic closed-form coefficients, assembles the closed form
/// `-C Σ x_i^3 + D_1 Σ x_i^2 x_{i+1} + D_2 Σ x_i x_{i+1}^2 + c x_1 x_2 x_3 - α^e x_0^3`
/// and checks it against the expanded norm form.
pub fn cubic_closed_form(
    field: &CyclicField,
    alpha: &Rat,
    mode: ExponentMode,
) -> Result<(CubicNormCoeffs, MPoly<Rat>)> {
    if field.degree() != 3 {
        return Err(Error::BadDegree(field.degree()));
    }
    let model = singular_model(field, alpha, mode)?;
    let [l1, l2, l3]: [FieldElem; 3] = field.roots().try_into().expect("three roots");
    let cyc = |a: &FieldElem, b: &FieldElem, c: &FieldElem| -> Result<Rat> {
        let v = &(&(&(a * a) * b) + &(&(b * b) * c)) + &(&(c * c) * a);
        v.as_rat().ok_or_else(|| Error::NonRationalCoefficient(v.to_string()))
    };
    let d1 = cyc(&l1, &l2, &l3)?;
    let d2 = cyc(&l1, &l3, &l2)?;
    let p = field.poly();
    let (a, b, c) = (p.coeff(2), p.coeff(1), p.coeff(0));
    let c_pure = -c.clone();
    let c_mixed = model.equation.coeff(&[0, 1, 1, 1]).cloned().unwrap_or_else(Rat::zero);
    let reference_mixed = Rat::from(3) * &a * &b - a.pow(3);
    let coeffs =
        CubicNormCoeffs { mixed_deviates: c_mixed != reference_mixed, c_pure, d1, d2, c_mixed, reference_mixed };
    let assembled = assemble_cubic(&coeffs, &model.rhs());
    if assembled != model.equation {
        return Err(Error::ValidationFailed("cubic closed form differs from the expanded norm form".into()));
    }
    Ok((coeffs, assembled))
}

fn assemble_cubic(k: &CubicNormCoeffs, rhs: &Rat) -> MPoly<Rat> {
    let mut terms: Vec<(Exps, Rat)> = Vec::new();
    let unit = |i: usize| {
        let mut e = vec![0u32; 4];
        e[i] = 1;
        e
    };
    let add = |a: Exps, b: Exps| a.iter().zip(&b).map(|(x, y)| x + y).collect::<Exps>();
    for i in 1..=3 {
        let next = i % 3 + 1;
        let sq = add(unit(i), unit(i));
        terms.push((add(sq.clone(), unit(i)), k.c_pure.clone()));
        terms.push((add(sq, unit(next)), k.d1.clone()));
        terms.push((add(unit(i), add(unit(next), unit(next))), k.d2.clone()));
    }
    terms.push((vec![0, 1, 1, 1], k.c_mixed.clone()));
    terms.push((vec![3, 0, 0, 0], -rhs.clone()));
    MPoly::from_terms(4, terms)
}

/// The toric hypersurface `B_n: X_1 ⋯ X_{n+1} - X_0^{n+1}` in `P^{n+1}`.
pub fn toric_model(n: usize) -> MPoly<Rat> {
    let mut prod = vec![1u32; n + 2];
    prod[0] = 0;
    let mut pure = vec![0u32; n + 2];
    pure[0] = n as u32 + 1;
    MPoly::from_terms(n + 2, [(prod, Rat::one()), (pure, -Rat::one())])
}

/// `(x_0 : … : x_n) ↦ (x_0 : … : x_n : x_0^{n+1} / (x_1 ⋯ x_n))`, scaled to
/// coprime integer coordinates.
pub fn psi_map(n: usize, x: &[Rat]) -> Result<Vec<Rat>> {
    if x.len() != n + 1 {
        return Err(Error::DimensionMismatch(format!("point has {} coordinates, expected {}", x.len(), n + 1)));
    }
    if x.iter().all(Rat::is_zero) {
        return Err(Error::ZeroVector);
    }
    let den: Rat = x[1..].iter().cloned().product();
    if den.is_zero() {
        return Err(Error::IndeterminacyLocus);
    }
    let last = x[0].pow(n as i32 + 1) * den.recip().expect("nonzero");
    let mut out = x.to_vec();
    out.push(last);
    Ok(primitive(&out))
}

/// Rescales a nonzero rational vector to coprime integers, keeping signs.
fn primitive(v: &[Rat]) -> Vec<Rat> {
    use num::Integer;
    let lcm = v.iter().fold(num::BigInt::from(1), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<num::BigInt> = v.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let g = ints.iter().fold(num::BigInt::from(0), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| Rat::from(c / &g)).collect()
}

/// Draws `count` points of the model over L with `x_0 = 1`: pick values
/// `u_k` of the conjugate linear forms with `Π u_k = α^e` and solve the
/// linear system for `x_1..x_d`. Every point is checked exactly.
pub fn l_points_of_model(model: &SingularModel, count: usize, seed: u64) -> Result<Vec<Vec<FieldElem>>> {
    let field = &model.field;
    let d = field.degree();
    let system = Mat::from_rows(conjugate_forms(&model.basis));
    let inverse = system.inverse().map_err(|_| Error::SingularSystem)?;
    let rhs = field.from_rat(model.rhs());
    let equation = model.equation.map_coeffs(|c| field.from_rat(c.clone()));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(count);
    while points.len() < count {
        let mut values: Vec<FieldElem> = Vec::with_capacity(d);
        for _ in 1..d {
            let u = field.elem((0..d).map(|_| Rat::from(rng.gen_range(-5i64..=5))).collect());
            if u.is_zero() {
                break;
            }
            values.push(u);
        }
        if values.len() != d - 1 {
            continue;
        }
        let prod = values.iter().fold(field.one(), |acc, u| &acc * u);
        values.push(&rhs * &prod.inv()?);
        let mut point = vec![field.one()];
        point.extend(inverse.mul_vec(&values)?);
        if !equation.eval(&point).is_zero() {
            return Err(Error::ValidationFailed("generated L-point does not satisfy the model".into()));
        }
        points.push(point);
    }
    Ok(points)
}

/// For `e ≡ 0 mod d`, the rational point `(1 : x)` with every conjugate form
/// equal to `α^{e/d}`; `None` otherwise.
pub fn trivial_rational_point(model: &SingularModel) -> Result<Option<Vec<Rat>>> {
    let d = model.field.degree() as u32;
    if !model.exponent.is_multiple_of(d) {
        return Ok(None);
    }
    let field = &model.field;
    let value = field.from_rat(model.alpha.pow((model.exponent / d) as i32));
    let system = Mat::from_rows(conjugate_forms(&model.basis));
    let x = system.solve(&vec![value; d as usize]).map_err(|_| Error::SingularSystem)?;
    let mut point = vec![Rat::one()];
    for c in x {
        point.push(c.as_rat().ok_or_else(|| Error::NonRationalCoefficient(c.to_string()))?);
    }
    if !model.equation.eval(&point).is_zero() {
        return Err(Error::ValidationFailed("trivial point does not satisfy the model".into()));
    }
    Ok(Some(point))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_mpoly, parse_upoly};
    use crate::numfield::make_cyclic_field;

    fn field(p: &str) -> CyclicField {
        make_cyclic_field(&parse_upoly(p).unwrap()).unwrap()
    }

    fn x(src: &str, nvars: usize) -> MPoly<Rat> {
        parse_mpoly(src, "x", nvars).unwrap()
    }

    #[test]
    fn gaussian_norm_form() {
        let f = field("t^2+1");
        let basis = [f.from_ints(&[1, 1]), f.from_ints(&[1, -1])];
        assert_eq!(norm_form(&f, &basis).unwrap(), x("2*x1^2 + 2*x2^2", 3));
        assert_eq!(norm_form(&f, &f.roots()), Err(Error::NotABasis));
    }

    #[test]
    fn exponent_modes() {
        assert_eq!(ExponentMode::Raw.exponent(2), 5);
        assert_eq!(ExponentMode::Reduced.exponent(2), 2);
        assert_eq!(ExponentMode::Unit.exponent(2), 1);
        assert_eq!(ExponentMode::Raw.exponent(1), 2);
        assert_eq!(ExponentMode::Reduced.exponent(1), 0);
        assert_eq!("reduced".parse::<ExponentMode>().unwrap(), ExponentMode::Reduced);
        assert_eq!("3".parse::<ExponentMode>().unwrap(), ExponentMode::Explicit(3));
        assert!("cubic".parse::<ExponentMode>().is_err());
    }

    #[test]
    fn cubic_example_model() {
        let f = field("t^3+3t^2-1");
        let (k, eq) = cubic_closed_form(&f, &Rat::from(2), ExponentMode::Reduced).unwrap();
        assert_eq!((k.c_pure.clone(), k.d1.clone(), k.d2.clone()), (Rat::from(1), Rat::from(3), Rat::from(-6)));
        assert_eq!(k.c_mixed, Rat::from(-21));
        assert_eq!(k.reference_mixed, Rat::from(-27));
        assert!(k.mixed_deviates);
        let expect = x(
            "x1^3 + x2^3 + x3^3 + 3*(x1^2*x2 + x2^2*x3 + x3^2*x1) - 6*(x1*x2^2 + x2*x3^2 + x3*x1^2) - 21*x1*x2*x3 - 4*x0^3",
            4,
        );
        assert_eq!(eq, expect);
        let d = &k.d1 - &k.d2;
        assert_eq!(&d * &d, f.discriminant().clone());
    }

    #[test]
    fn psi_examples() {
        let r = |v: &[i64]| v.iter().map(|&a| Rat::from(a)).collect::<Vec<_>>();
        assert_eq!(psi_map(2, &r(&[1, 1, 1])).unwrap(), r(&[1, 1, 1, 1]));
        assert_eq!(psi_map(2, &r(&[1, 2, 3])).unwrap(), r(&[6, 12, 18, 1]));
        assert_eq!(psi_map(2, &r(&[1, 0, 1])), Err(Error::IndeterminacyLocus));
        let img = psi_map(2, &r(&[2, -3, 5])).unwrap();
        assert!(toric_model(2).eval(&img).is_zero());
    }

    #[test]
    fn l_points_satisfy_model() {
        let f = field("t^3+3t^2-1");
        let m = singular_model(&f, &Rat::from(2), ExponentMode::Raw).unwrap();
        assert_eq!(m.exponent, 5);
        assert_eq!(l_points_of_model(&m, 5, 7).unwrap().len(), 5);
        assert_eq!(trivial_rational_point(&m).unwrap(), None);
        let z = singular_model(&f, &Rat::from(2), ExponentMode::Explicit(3)).unwrap();
        let p = trivial_rational_point(&z).unwrap().unwrap();
        assert_eq!(p[0], Rat::one());
    }
}
