//! Reference data for the cubic surface of `t^3 - 3t + 1`, `α = 2`: the
//! induced companion matrix, the closed-form φ pattern, the Veronese
//! equations and the reference equations of the twisted surface.

use serde::Deserialize;

use crate::arith::{mpoly_normalize, parse_expr, parse_mpoly, parse_upoly, Atom, MPoly, Mat, Rat, UPoly};
use crate::error::{Error, Result};
use crate::numfield::{CyclicField, FieldElem};

/// The embedded reference file.
pub const EMBEDDED: &str = include_str!("../golden/cubic_surface.json");

/// One reference family `f_2 t^2 + f_1 t + f_0` with rational `f_i`.
#[derive(Clone, Debug, Deserialize)]
pub struct Family {
    pub t2: String,
    pub t1: String,
    pub t0: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct GoldenData {
    pub poly: String,
    pub alpha: String,
    pub discriminant: String,
    pub mobius: Vec<String>,
    pub iota: Vec<Vec<String>>,
    /// Entries are expressions in the roots `l1, l2, l3` and `a = α`.
    pub phi: Vec<Vec<String>>,
    pub veronese_n1: Vec<String>,
    pub veronese_n2: Vec<String>,
    /// Equations `lhs = rhs` in `w0..w9`, `l1..l3` and `a`.
    pub surface_equations_over_l: Vec<String>,
    pub families: Vec<Family>,
}

impl GoldenData {
    pub fn embedded() -> Self {
        Self::from_json(EMBEDDED).expect("embedded golden data parses")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("golden data: {e}")))
    }

    pub fn poly(&self) -> Result<UPoly> {
        parse_upoly(&self.poly)
    }

    pub fn alpha(&self) -> Result<Rat> {
        self.alpha.parse()
    }

    pub fn discriminant(&self) -> Result<Rat> {
        self.discriminant.parse()
    }

    pub fn mobius(&self) -> Result<Vec<Rat>> {
        self.mobius.iter().map(|s| s.parse()).collect()
    }

    pub fn iota(&self) -> Result<Mat<Rat>> {
        let rows = self
            .iota
            .iter()
            .map(|row| row.iter().map(|s| s.parse()).collect::<Result<Vec<Rat>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat::from_rows(rows))
    }

    /// The φ pattern evaluated at the conjugate roots of `field`.
    pub fn phi(&self, field: &CyclicField, alpha: &Rat) -> Result<Mat<FieldElem>> {
        let rows = self
            .phi
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| {
                        let p = parse_over_l(s, 0, field, alpha)?;
                        Ok(p.coeff(&[]).cloned().unwrap_or_else(|| field.zero()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat::from_rows(rows))
    }

    /// The reference Veronese equations for `n = 1` or `n = 2`, normalized.
    pub fn veronese(&self, n: usize) -> Result<Vec<MPoly<Rat>>> {
        let (src, nvars) = match n {
            1 => (&self.veronese_n1, 3),
            2 => (&self.veronese_n2, 10),
            _ => return Err(Error::Invalid(format!("no reference Veronese equations for n = {n}"))),
        };
        src.iter().map(|s| mpoly_normalize(&parse_mpoly(s, "w", nvars)?)).collect()
    }

    /// The reference equations over L as `lhs - rhs`.
    pub fn surface_equations(&self, field: &CyclicField, alpha: &Rat) -> Result<Vec<MPoly<FieldElem>>> {
        self.surface_equations_over_l
            .iter()
            .map(|s| {
                let (lhs, rhs) =
                    s.split_once('=').ok_or_else(|| Error::Invalid(format!("equation without '=': {s}")))?;
                Ok(parse_over_l(lhs, 10, field, alpha)?.sub(&parse_over_l(rhs, 10, field, alpha)?))
            })
            .collect()
    }

    /// The reference families as `[f_2, f_1, f_0]`.
    pub fn families(&self) -> Result<Vec<[MPoly<Rat>; 3]>> {
        self.families
            .iter()
            .map(|f| Ok([parse_mpoly(&f.t2, "w", 10)?, parse_mpoly(&f.t1, "w", 10)?, parse_mpoly(&f.t0, "w", 10)?]))
            .collect()
    }
}

/// Parses an expression in `w0..w{nvars-1}` whose constants may involve the
/// roots `l1..l_d` and `a`.
fn parse_over_l(src: &str, nvars: usize, field: &CyclicField, alpha: &Rat) -> Result<MPoly<FieldElem>> {
    let roots = field.roots();
    let resolve = |id: &str| -> Option<Atom<FieldElem>> {
        if id == "a" {
            return Some(Atom::Const(field.from_rat(alpha.clone())));
        }
        if let Some(k) = id.strip_prefix('l') {
            let k: usize = k.parse().ok()?;
            return roots.get(k.checked_sub(1)?).cloned().map(Atom::Const);
        }
        let k: usize = id.strip_prefix('w')?.parse().ok()?;
        (k < nvars).then_some(Atom::Var(k))
    };
    parse_expr(src, nvars, &field.one(), &resolve)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::make_cyclic_field;

    #[test]
    fn embedded_data_parses() {
        let g = GoldenData::embedded();
        let field = make_cyclic_field(&g.poly().unwrap()).unwrap();
        let alpha = g.alpha().unwrap();
        assert_eq!(g.iota().unwrap().nrows(), 10);
        let phi = g.phi(&field, &alpha).unwrap();
        assert_eq!(phi.get(4, 4), &field.one());
        assert_eq!(phi.get(9, 0), &field.roots()[1].scale(&Rat::from(4)));
        assert_eq!(g.veronese(2).unwrap().len(), 21);
        assert_eq!(g.surface_equations(&field, &alpha).unwrap().len(), 7);
        assert_eq!(g.families().unwrap().len(), 7);
        assert!(g.veronese(3).is_err());
    }
}
