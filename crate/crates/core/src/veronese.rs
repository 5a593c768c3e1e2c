//! The degree-(n+1) Veronese embedding of P^n: monomial basis, point map,
//! the induced matrix embedding and the equations of the image.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::arith::{mpoly_normalize, Exps, MPoly, Mat, Rat, Scalar};
use crate::error::{Error, Result};

/// Degree-(n+1) monomials in `n+1` variables, in descending lex order.
#[derive(Clone, Debug, PartialEq)]
pub struct VeroneseSpace {
    pub n: usize,
    /// Target dimension: the image lies in P^m.
    pub m: usize,
    pub monomials: Vec<Exps>,
    index: HashMap<Exps, usize>,
}

impl VeroneseSpace {
    /// Position of a monomial in the basis.
    pub fn index_of(&self, e: &[u32]) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Index of `x_i * x_p^n`.
    fn mixed_index(&self, i: usize, p: usize) -> usize {
        let mut e = vec![0u32; self.n + 1];
        e[p] += self.n as u32;
        e[i] += 1;
        self.index[&e]
    }
}

pub fn monomial_basis(n: usize) -> Result<VeroneseSpace> {
    if n == 0 {
        return Err(Error::Invalid("the projective dimension n must be at least 1".into()));
    }
    let mut monomials = Vec::new();
    let mut cur = vec![0u32; n + 1];
    fill(&mut cur, 0, n as u32 + 1, &mut monomials);
    let index = monomials.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    Ok(VeroneseSpace { n, m: monomials.len() - 1, monomials, index })
}

fn fill(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Exps>) {
    if pos == cur.len() - 1 {
        cur[pos] = left;
        out.push(cur.clone());
        return;
    }
    for k in (0..=left).rev() {
        cur[pos] = k;
        fill(cur, pos + 1, left - k, out);
    }
}

/// Evaluates every basis monomial at `x`.
pub fn veronese_point<C: Scalar>(space: &VeroneseSpace, x: &[C]) -> Result<Vec<C>> {
    if x.len() != space.n + 1 {
        return Err(Error::DimensionMismatch(format!("point has {} coordinates, expected {}", x.len(), space.n + 1)));
    }
    if x.iter().all(Scalar::is_zero) {
        return Err(Error::ZeroVector);
    }
    Ok(space
        .monomials
        .iter()
        .map(|e| {
            x.iter().zip(e).fold(x[0].one_like(), |acc, (xi, &k)| if k == 0 { acc } else { acc.mul_ref(&xi.pow(k)) })
        })
        .collect())
}

/// The induced matrix `ι(A)`: row k expands `prod_i (sum_j a_ij x_j)^{α_i}`
/// for the k-th basis monomial `α` against the basis, divided by `det A`.
pub fn iota<C: Scalar>(space: &VeroneseSpace, a: &Mat<C>) -> Result<Mat<C>> {
    let size = space.n + 1;
    if a.nrows() != size || a.ncols() != size {
        return Err(Error::DimensionMismatch(format!(
            "expected a {size}x{size} matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    let det = a.det();
    let det_inv = det.inv_ref().ok_or(Error::SingularMatrix)?;
    let one = det.one_like();
    let forms: Vec<MPoly<C>> = (0..size).map(|i| MPoly::linear(a.row(i))).collect();
    let rows: Vec<Vec<C>> = space
        .monomials
        .iter()
        .map(|alpha| {
            let mut prod = MPoly::constant(size, one.clone());
            for (form, &k) in forms.iter().zip(alpha) {
                if k > 0 {
                    prod = prod.mul(&form.pow(k, &one));
                }
            }
            space
                .monomials
                .iter()
                .map(|beta| prod.coeff(beta).map_or_else(|| one.zero_like(), |c| c.mul_ref(&det_inv)))
                .collect()
        })
        .collect();
    Ok(Mat::from_rows(rows))
}

/// Equations of the Veronese image in the variables `ω_0..ω_m`.
#[derive(Clone, Debug)]
pub struct VeroneseIdeal {
    pub space: VeroneseSpace,
    pub equations: Vec<MPoly<Rat>>,
    /// For each equation, the pivot variable index and the source monomial index.
    pub pivots: Vec<(usize, usize)>,
}

impl VeroneseIdeal {
    /// Equations whose pivot is the variable `x_p`, in emission order.
    pub fn column(&self, p: usize) -> Vec<&MPoly<Rat>> {
        self.equations.iter().zip(&self.pivots).filter(|(_, (piv, _))| *piv == p).map(|(e, _)| e).collect()
    }
}

/// For each pivot `p` (last variable first) and monomial `M = x^α`, the
/// binomial `ω_M ω_{x_p^{n+1}}^n - prod_i ω_{x_i x_p^n}^{α_i}`; tautologies
/// are dropped, duplicates removed, and each equation normalized.
pub fn veronese_ideal(space: &VeroneseSpace) -> VeroneseIdeal {
    let n = space.n;
    let nv = space.m + 1;
    let per_pivot: Vec<Vec<(MPoly<Rat>, (usize, usize))>> = (0..=n)
        .rev()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|p| {
            let mut pure = vec![0u32; n + 1];
            pure[p] = n as u32 + 1;
            let pure_idx = space.index[&pure];
            space
                .monomials
                .iter()
                .enumerate()
                .filter_map(|(mi, alpha)| {
                    let mut lhs = vec![0u32; nv];
                    lhs[mi] += 1;
                    lhs[pure_idx] += n as u32;
                    let mut rhs = vec![0u32; nv];
                    for (i, &k) in alpha.iter().enumerate() {
                        rhs[space.mixed_index(i, p)] += k;
                    }
                    let eq = MPoly::from_terms(nv, [(lhs, Rat::one()), (rhs, -Rat::one())]);
                    let eq = mpoly_normalize(&eq).ok()?;
                    Some((eq, (p, mi)))
                })
                .collect()
        })
        .collect();
    let mut equations: Vec<MPoly<Rat>> = Vec::new();
    let mut pivots = Vec::new();
    for (eq, piv) in per_pivot.into_iter().flatten() {
        if !equations.contains(&eq) {
            equations.push(eq);
            pivots.push(piv);
        }
    }
    VeroneseIdeal { space: space.clone(), equations, pivots }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_mpoly;

    fn r(x: i64) -> Rat {
        Rat::from(x)
    }

    #[test]
    fn monomial_orders() {
        let s1 = monomial_basis(1).unwrap();
        assert_eq!(s1.monomials, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(s1.m, 2);
        let s2 = monomial_basis(2).unwrap();
        let expected: Vec<Exps> = vec![
            vec![3, 0, 0],
            vec![2, 1, 0],
            vec![2, 0, 1],
            vec![1, 2, 0],
            vec![1, 1, 1],
            vec![1, 0, 2],
            vec![0, 3, 0],
            vec![0, 2, 1],
            vec![0, 1, 2],
            vec![0, 0, 3],
        ];
        assert_eq!(s2.monomials, expected);
        assert_eq!(monomial_basis(3).unwrap().m, 34);
        assert!(monomial_basis(0).is_err());
    }

    #[test]
    fn point_map() {
        let s = monomial_basis(2).unwrap();
        let v = veronese_point(&s, &[r(1), r(2), r(3)]).unwrap();
        let expect: Vec<Rat> = [1, 2, 3, 4, 6, 9, 8, 12, 18, 27].iter().map(|&x| r(x)).collect();
        assert_eq!(v, expect);
        assert_eq!(veronese_point(&s, &[r(0), r(0), r(0)]), Err(Error::ZeroVector));
        assert_eq!(veronese_point(&s, &[r(1), r(1), r(1)]).unwrap(), vec![r(1); 10]);
    }

    #[test]
    fn conic_iota_formula() {
        let s = monomial_basis(1).unwrap();
        let (a, b, c, d) = (r(2), r(3), r(5), r(7));
        let m = Mat::from_rows(vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]]);
        let det = &a * &d - &b * &c;
        let expect = Mat::from_rows(vec![
            vec![&a * &a, r(2) * &a * &b, &b * &b],
            vec![&a * &c, &a * &d + &b * &c, &b * &d],
            vec![&c * &c, r(2) * &c * &d, &d * &d],
        ])
        .scale(&det.recip().unwrap());
        assert_eq!(iota(&s, &m).unwrap(), expect);
        let sing = Mat::from_rows(vec![vec![r(1), r(2)], vec![r(2), r(4)]]);
        assert_eq!(iota(&s, &sing), Err(Error::SingularMatrix));
    }

    #[test]
    fn ideal_sizes_and_conic() {
        let s1 = monomial_basis(1).unwrap();
        let i1 = veronese_ideal(&s1);
        assert_eq!(i1.equations, vec![parse_mpoly("w0*w2 - w1^2", "w", 3).unwrap()]);
        let s2 = monomial_basis(2).unwrap();
        let i2 = veronese_ideal(&s2);
        assert_eq!(i2.equations.len(), 21);
        for p in 0..3 {
            assert_eq!(i2.column(p).len(), 7);
        }
        assert_eq!(i2.equations[0], parse_mpoly("w0*w9^2 - w5^3", "w", 10).unwrap());
        let s3 = monomial_basis(3).unwrap();
        let i3 = veronese_ideal(&s3);
        assert!(i3.equations.len() <= 4 * (34 - 3));
    }

    #[test]
    fn ideal_vanishes_on_image() {
        let s = monomial_basis(2).unwrap();
        let ideal = veronese_ideal(&s);
        let v = veronese_point(&s, &[r(3), r(-1), r(7)]).unwrap();
        for eq in &ideal.equations {
            assert!(eq.eval(&v).is_zero());
        }
    }
}
