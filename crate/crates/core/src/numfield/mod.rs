//! Cyclic number fields Q[t]/(P) with a distinguished Galois generator.

mod basis;
mod elem;
mod norms;
mod roots;

use std::fmt;
use std::sync::Arc;

use num::{BigInt, Integer, One, Signed, Zero};

use crate::arith::{discriminant, Mat, Rat, UPoly};
use crate::error::{Error, Result};
use basis::PowerBasis;

pub use elem::{elem_arith, ElemOp, ElemValue, FieldElem};
pub use norms::{certify_non_norm, find_norm_preimage, CertificateKind, NormCertificate};

/// Which generator of the Galois group plays the role of σ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Generator {
    /// The generator whose image of `t` has the lexicographically smallest
    /// coordinates.
    #[default]
    Default,
    /// The inverse of the default generator.
    Other,
}

/// Integer coefficients with `σ(t) = (p t + q) / (r t + s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusCoeffs {
    pub p: BigInt,
    pub q: BigInt,
    pub r: BigInt,
    pub s: BigInt,
}

impl MobiusCoeffs {
    pub fn as_rats(&self) -> [Rat; 4] {
        [&self.p, &self.q, &self.r, &self.s].map(|x| Rat::from_int(x.clone()))
    }

    pub fn matrix(&self) -> Mat<Rat> {
        let [p, q, r, s] = self.as_rats();
        Mat::from_rows(vec![vec![p, q], vec![r, s]])
    }

    /// Rescaled to trace `-1`, the normalization under which an order-3 map
    /// satisfies `s = -(p+1)` and `q r = -(p^2+p+1)`. `None` if the trace is 0.
    pub fn trace_normalized(&self) -> Option<[Rat; 4]> {
        let trace = Rat::from_int(&self.p + &self.s);
        let k = (-trace).recip()?;
        Some(self.as_rats().map(|x| x * &k))
    }
}

impl fmt::Display for MobiusCoeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.p, self.q, self.r, self.s)
    }
}

#[derive(Debug)]
pub(crate) struct FieldData {
    basis: PowerBasis,
    disc: Rat,
    /// Coordinates of `σ^k(t)` for `k = 0..d`.
    sigma_powers: Vec<Vec<Rat>>,
    /// Matrix of `σ^k` acting on coordinate vectors.
    galois: Vec<Mat<Rat>>,
    mobius: Option<MobiusCoeffs>,
}

/// The field Q[t]/(P) for a monic irreducible integer P whose roots all lie
/// in the field and are cyclically permuted by σ. Cloning is cheap.
#[derive(Clone, Debug)]
pub struct CyclicField(Arc<FieldData>);

impl PartialEq for CyclicField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.basis.poly == other.0.basis.poly && self.0.sigma_powers == other.0.sigma_powers)
    }
}

impl Eq for CyclicField {}

/// Builds the cyclic field defined by `poly` with the default generator.
pub fn make_cyclic_field(poly: &UPoly) -> Result<CyclicField> {
    CyclicField::new(poly, Generator::Default)
}

impl CyclicField {
    pub fn new(poly: &UPoly, generator: Generator) -> Result<Self> {
        let d = poly.degree().unwrap_or(0);
        if d < 2 {
            return Err(Error::BadDegree(d));
        }
        if !poly.is_monic() || !poly.has_integer_coeffs() {
            return Err(Error::Invalid(format!("defining polynomial {poly} must be monic with integer coefficients")));
        }
        if let Some(root) = poly.rational_roots().first() {
            return Err(Error::NotIrreducible(format!("{poly} has the rational root {root}")));
        }
        let disc = discriminant(poly)?;
        if d >= 4 {
            // Degrees 2 and 3 are irreducible once no rational root exists;
            // beyond that an inert prime proves it (and exists for cyclic P).
            if roots::inert_prime(poly, &disc).is_none() {
                return Err(Error::NotGalois(format!(
                    "no prime below {} keeps {poly} irreducible; it is reducible or not cyclic",
                    roots::INERT_PRIME_BOUND
                )));
            }
        }
        let basis = PowerBasis::new(poly.clone());
        let gen_root = roots::generator_root(&basis)?;

        // All roots as the orbit of t under the generator found above.
        let mut orbit = vec![basis.t()];
        for _ in 1..d {
            let next = basis.compose(orbit.last().expect("nonempty"), &gen_root);
            orbit.push(next);
        }
        if basis.compose(&orbit[d - 1], &gen_root) != basis.t() {
            return Err(Error::NotGalois("root orbit does not close after d steps".into()));
        }
        for i in 0..d {
            for j in i + 1..d {
                if orbit[i] == orbit[j] {
                    return Err(Error::NotGalois("conjugate roots are not distinct".into()));
                }
            }
        }
        let mut sigma = (1..d).filter(|k| k.gcd(&d) == 1).map(|k| orbit[k].clone()).min().expect("1 generates");
        if generator == Generator::Other {
            // σ^{d-1} = σ^{-1}
            let mut inv = sigma.clone();
            for _ in 2..d {
                inv = basis.compose(&inv, &sigma);
            }
            sigma = inv;
        }
        let mut sigma_powers = vec![basis.t()];
        for _ in 1..d {
            let next = basis.compose(sigma_powers.last().expect("nonempty"), &sigma);
            sigma_powers.push(next);
        }
        let galois = sigma_powers.iter().map(|x| basis.substitution_matrix(x)).collect();
        let mobius = mobius_coeffs(&basis, &sigma_powers[1]);
        Ok(CyclicField(Arc::new(FieldData { basis, disc, sigma_powers, galois, mobius })))
    }

    pub fn poly(&self) -> &UPoly {
        &self.0.basis.poly
    }

    pub fn degree(&self) -> usize {
        self.0.basis.degree
    }

    pub fn discriminant(&self) -> &Rat {
        &self.0.disc
    }

    /// Möbius coefficients of σ, when σ(t) is fractional linear in t.
    pub fn mobius(&self) -> Option<&MobiusCoeffs> {
        self.0.mobius.as_ref()
    }

    pub(crate) fn basis(&self) -> &PowerBasis {
        &self.0.basis
    }

    /// Coordinates of `t^(d+k)` for `k = 0..d-1`, as integers.
    pub(crate) fn integer_reductions(&self) -> Vec<Vec<BigInt>> {
        self.0.basis.integer_reductions()
    }

    pub(crate) fn galois_matrix(&self, k: usize) -> &Mat<Rat> {
        &self.0.galois[k % self.degree()]
    }

    pub fn elem(&self, coords: Vec<Rat>) -> FieldElem {
        FieldElem::new(self, coords)
    }

    pub fn from_rat(&self, r: Rat) -> FieldElem {
        let mut c = self.0.basis.zero();
        c[0] = r;
        FieldElem::new(self, c)
    }

    pub fn from_ints(&self, coords: &[i64]) -> FieldElem {
        let mut c: Vec<Rat> = coords.iter().map(|&x| Rat::from(x)).collect();
        c.resize(self.degree(), Rat::zero());
        FieldElem::new(self, c)
    }

    pub fn zero(&self) -> FieldElem {
        self.from_rat(Rat::zero())
    }

    pub fn one(&self) -> FieldElem {
        self.from_rat(Rat::one())
    }

    /// The generator `t`.
    pub fn t(&self) -> FieldElem {
        FieldElem::new(self, self.0.basis.t())
    }

    /// The conjugate roots `t, σ(t), …, σ^{d-1}(t)`.
    pub fn roots(&self) -> Vec<FieldElem> {
        self.0.sigma_powers.iter().map(|c| FieldElem::new(self, c.clone())).collect()
    }

    /// Whether the elements are linearly independent over Q.
    pub fn is_basis(&self, elems: &[FieldElem]) -> bool {
        if elems.len() != self.degree() {
            return false;
        }
        let m = Mat::from_fn(self.degree(), self.degree(), |i, j| elems[j].coords()[i].clone());
        !m.det().is_zero()
    }
}

/// Whether the conjugate roots of P form a Q-basis of the field.
pub fn roots_form_basis(field: &CyclicField) -> bool {
    field.is_basis(&field.roots())
}

/// Solves `σ(t) (r t + s) = p t + q` in the field. When several solutions
/// exist the affine one (`r = 0`) is preferred.
fn mobius_coeffs(basis: &PowerBasis, sigma_t: &[Rat]) -> Option<MobiusCoeffs> {
    let d = basis.degree;
    let t = basis.t();
    let t_sigma = basis.mul(&t, sigma_t);
    let neg_t: Vec<Rat> = t.iter().map(|x| -x).collect();
    let neg_one: Vec<Rat> = basis.one().iter().map(|x| -x).collect();
    // Columns for the unknowns (p, q, r, s).
    let cols = [neg_t, neg_one, t_sigma, sigma_t.to_vec()];
    let system = Mat::from_fn(d, 4, |i, j| cols[j][i].clone());
    let kernel = system.kernel();
    let affine = kernel.iter().find(|v| v[2].is_zero() && !v[3].is_zero()).cloned();
    let chosen = match (affine, kernel.len()) {
        (Some(v), _) => v,
        (None, 0) => return None,
        (None, 1) => kernel[0].clone(),
        (None, _) => {
            // Eliminate r between two kernel vectors.
            let (a, b) = (&kernel[0], &kernel[1]);
            let v: Vec<Rat> = (0..4).map(|i| &a[i] * &b[2] - &b[i] * &a[2]).collect();
            if v.iter().all(Rat::is_zero) {
                kernel[0].clone()
            } else {
                v
            }
        }
    };
    Some(normalize_mobius(&chosen))
}

/// Primitive integer scaling; the sign makes `p + s` negative, or `s`
/// positive when the trace vanishes, or else the first nonzero entry positive.
fn normalize_mobius(v: &[Rat]) -> MobiusCoeffs {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let mut ints: Vec<BigInt> = ints.into_iter().map(|x| x / &g).collect();
    let trace = &ints[0] + &ints[3];
    let flip = if !trace.is_zero() {
        trace.is_positive()
    } else if !ints[3].is_zero() {
        ints[3].is_negative()
    } else {
        ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative())
    };
    if flip {
        ints = ints.into_iter().map(|x| -x).collect();
    }
    let [p, q, r, s]: [BigInt; 4] = ints.try_into().expect("four coefficients");
    MobiusCoeffs { p, q, r, s }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_upoly;

    fn field(src: &str) -> CyclicField {
        make_cyclic_field(&parse_upoly(src).unwrap()).unwrap()
    }

    fn ints(v: [i64; 4]) -> MobiusCoeffs {
        let [p, q, r, s] = v.map(BigInt::from);
        MobiusCoeffs { p, q, r, s }
    }

    #[test]
    fn golden_field_generator() {
        let f = field("t^3-3t+1");
        assert_eq!(f.mobius(), Some(&ints([-1, 1, -1, 0])));
        assert_eq!(f.roots()[1], f.from_ints(&[-2, 0, 1]));
        assert_eq!(f.discriminant(), &Rat::from(81));
    }

    #[test]
    fn quadratic_conjugation() {
        let f = field("t^2+1");
        assert_eq!(f.roots()[1], f.from_ints(&[0, -1]));
        assert_eq!(f.mobius(), Some(&ints([-1, 0, 0, 1])));
    }

    #[test]
    fn other_cubic() {
        let f = field("t^3+t^2-2t-1");
        assert_eq!(f.roots()[1], f.from_ints(&[-2, 0, 1]));
        assert_eq!(f.mobius(), Some(&ints([0, 1, -1, -1])));
    }

    #[test]
    fn other_generator_is_inverse() {
        let p = parse_upoly("t^3-3t+1").unwrap();
        let a = CyclicField::new(&p, Generator::Default).unwrap();
        let b = CyclicField::new(&p, Generator::Other).unwrap();
        assert_eq!(b.roots()[1].coords(), a.roots()[2].coords());
        assert_eq!(b.roots()[2].coords(), a.roots()[1].coords());
    }

    #[test]
    fn construction_errors() {
        let build = |s: &str| make_cyclic_field(&parse_upoly(s).unwrap());
        assert!(matches!(build("t^3-2"), Err(Error::NotGalois(_))));
        assert!(matches!(build("t^3-t"), Err(Error::NotIrreducible(_))));
        assert!(matches!(build("t+1"), Err(Error::BadDegree(1))));
        assert!(matches!(build("2t^2+1"), Err(Error::Invalid(_))));
        assert!(matches!(build("t^2+1/2"), Err(Error::Invalid(_))));
        // Irreducible quartic with non-cyclic (dihedral) Galois group.
        assert!(matches!(build("t^4-2"), Err(Error::NotGalois(_))));
    }

    #[test]
    fn roots_basis_examples() {
        assert!(roots_form_basis(&field("t^3+3t^2-1")));
        assert!(!roots_form_basis(&field("t^3-3t+1")));
        assert!(!roots_form_basis(&field("t^2+1")));
    }

    #[test]
    fn trace_zero_cubic_relations() {
        // With A = 0: B = 3q/r and C = -q(2p+1)/r^2 in trace -1 normalization.
        for src in ["t^3-3t+1", "t^3-21t-35", "t^3-7t-7"] {
            let f = field(src);
            let [p, q, r, _] = f.mobius().unwrap().trace_normalized().unwrap();
            let b = Rat::from(3) * &q / &r;
            let c = -(&q * (Rat::from(2) * &p + Rat::one())) / (&r * &r);
            assert_eq!(b, f.poly().coeff(1), "{src}");
            assert_eq!(c, f.poly().coeff(0), "{src}");
        }
    }
}
