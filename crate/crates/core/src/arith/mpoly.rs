//! Sparse multivariate polynomials over a [`Scalar`] ring.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::{BigInt, Integer, One, Signed, Zero};

use super::parse::Cursor;
use super::{Rat, Scalar};
use crate::error::{Error, Result};

/// An exponent vector; its length is the number of variables.
pub type Exps = Vec<u32>;

/// A polynomial as a map from exponent vectors to nonzero coefficients.
///
/// The canonical term order is descending lexicographic on exponent
/// vectors; [`MPoly::terms`] iterates in that order.
#[derive(Clone, PartialEq, Debug)]
pub struct MPoly<C> {
    nvars: usize,
    terms: BTreeMap<Exps, C>,
}

impl<C: Scalar> MPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = MPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The variable `x_i` with unit coefficient modelled on `one`.
    pub fn var(nvars: usize, i: usize, one: &C) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MPoly::from_terms(nvars, [(e, one.one_like())])
    }

    /// `sum_j coeffs[j] * x_j`.
    pub fn linear(coeffs: &[C]) -> Self {
        let n = coeffs.len();
        let mut p = MPoly::zero(n);
        for (j, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[j] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exps, C)>) -> Self {
        let mut p = MPoly::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Adds `c * x^e` in place, dropping a coefficient that cancels.
    pub fn add_term(&mut self, e: Exps, c: C) {
        assert_eq!(e.len(), self.nvars, "exponent vector length");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let sum = old.add_ref(&c);
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exps, &C)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, e: &[u32]) -> Option<&C> {
        self.terms.get(e)
    }

    pub fn leading(&self) -> Option<(&Exps, &C)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            Some(d) => degs.all(|x| x == d),
            None => true,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.neg_ref());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg_ref())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars, "variable count");
        let mut out = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.mul_ref(c2));
            }
        }
        out
    }

    pub fn pow(&self, k: u32, one: &C) -> Self {
        let mut acc = MPoly::constant(self.nvars, one.one_like());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        self.map_coeffs(|x| x.mul_ref(c))
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return MPoly::zero(self.nvars);
        }
        self.map_coeffs(|x| x.scale(r))
    }

    /// Applies `f` to every coefficient, dropping those that become zero.
    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> MPoly<D> {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), f(c))).filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Evaluates at `point` (length `nvars`, at least one coordinate).
    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars, "point dimension");
        let zero = point[0].zero_like();
        self.terms.iter().fold(zero, |acc, (e, c)| {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = t.mul_ref(&x.pow(k));
                }
            }
            acc.add_ref(&t)
        })
    }

    /// Substitutes `x_k <- sum_j rows[k][j] * y_j` for every variable.
    pub fn substitute_linear(&self, rows: &[Vec<C>]) -> Result<Self> {
        if rows.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "{} substitution rows for {} variables",
                rows.len(),
                self.nvars
            )));
        }
        let forms: Vec<MPoly<C>> = rows.iter().map(|r| MPoly::linear(r)).collect();
        let out_vars = forms.first().map_or(0, |f| f.nvars);
        if forms.iter().any(|f| f.nvars != out_vars) {
            return Err(Error::DimensionMismatch("ragged substitution rows".into()));
        }
        let mut powers: BTreeMap<(usize, u32), MPoly<C>> = BTreeMap::new();
        let mut out = MPoly::zero(out_vars);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(out_vars, c.clone());
            for (k, &a) in e.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let pw = powers.entry((k, a)).or_insert_with(|| forms[k].pow(a, c)).clone();
                t = t.mul(&pw);
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Renders with variables `{prefix}{index}`, coefficients via `coeff`.
    ///
    /// `coeff` returns `(negative, magnitude)`; an empty magnitude means a unit.
    pub fn render(&self, prefix: &str, coeff: impl Fn(&C) -> (bool, String)) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let (neg, mag) = coeff(c);
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mon = monomial_text(e, prefix);
            match (mag.is_empty(), mon.is_empty()) {
                (true, true) => out.push('1'),
                (true, false) => out.push_str(&mon),
                (false, true) => out.push_str(&mag),
                (false, false) => {
                    let _ = write!(out, "{mag}*{mon}");
                }
            }
        }
        out
    }
}

fn monomial_text(e: &[u32], prefix: &str) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(format!("{prefix}{i}")),
            _ => parts.push(format!("{prefix}{i}^{k}")),
        }
    }
    parts.join("*")
}

impl MPoly<Rat> {
    /// Canonical text with variables `{prefix}0`, `{prefix}1`, ....
    pub fn to_text(&self, prefix: &str) -> String {
        self.render(prefix, |c| {
            let a = c.abs();
            (c.is_negative(), if a.is_one() { String::new() } else { a.to_string() })
        })
    }

    /// Coefficients as a flat vector indexed by `index` over the given monomials.
    pub fn coeff_vector(&self, monomials: &[Exps]) -> Vec<Rat> {
        monomials.iter().map(|m| self.terms.get(m).cloned().unwrap_or_else(Rat::zero)).collect()
    }
}

/// Scales `f` to coprime integer coefficients with a positive leading
/// (descending-lex first) coefficient.
pub fn mpoly_normalize(f: &MPoly<Rat>) -> Result<MPoly<Rat>> {
    let Some((_, lead)) = f.leading() else {
        return Err(Error::ZeroPolynomial);
    };
    let lcm = f.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let gcd = f.terms.values().fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * (&lcm / c.denom()))));
    let mut scale = Rat::new(lcm, gcd.abs()).expect("nonzero content");
    if lead.is_negative() {
        scale = -scale;
    }
    Ok(f.scale_rat(&scale))
}

/// What an identifier denotes inside [`parse_expr`].
pub enum Atom<C> {
    Var(usize),
    Const(C),
}

/// Parses a polynomial expression with `+ - *`, `^nat`, parentheses,
/// rational literals and identifiers resolved by `resolve`. Juxtaposition
/// multiplies.
pub fn parse_expr<C: Scalar>(
    src: &str,
    nvars: usize,
    one: &C,
    resolve: &dyn Fn(&str) -> Option<Atom<C>>,
) -> Result<MPoly<C>> {
    let mut p = ExprParser { cur: Cursor::new(src), nvars, one, resolve };
    let e = p.expr()?;
    if !p.cur.at_end() {
        let c = p.cur.peek().unwrap_or(' ');
        return p.cur.error(format!("unexpected character {c:?}"));
    }
    Ok(e)
}

/// Parses a polynomial over Q in variables `{prefix}0 .. {prefix}{nvars-1}`.
pub fn parse_mpoly(src: &str, prefix: &str, nvars: usize) -> Result<MPoly<Rat>> {
    let resolve = |id: &str| -> Option<Atom<Rat>> {
        let idx: usize = id.strip_prefix(prefix)?.parse().ok()?;
        (idx < nvars).then_some(Atom::Var(idx))
    };
    parse_expr(src, nvars, &Rat::one(), &resolve)
}

struct ExprParser<'a, C> {
    cur: Cursor,
    nvars: usize,
    one: &'a C,
    resolve: &'a dyn Fn(&str) -> Option<Atom<C>>,
}

impl<C: Scalar> ExprParser<'_, C> {
    fn expr(&mut self) -> Result<MPoly<C>> {
        let mut neg = self.cur.sign() == Some(-1);
        let mut acc = MPoly::zero(self.nvars);
        loop {
            let t = self.term()?;
            acc = if neg { acc.sub(&t) } else { acc.add(&t) };
            match self.cur.sign() {
                Some(s) => neg = s < 0,
                None => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly<C>> {
        let mut acc = self.power()?;
        loop {
            let explicit = self.cur.eat('*');
            match self.cur.peek() {
                Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == '(' => {
                    acc = acc.mul(&self.power()?);
                }
                _ if explicit => return self.cur.error("expected a factor after '*'"),
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<MPoly<C>> {
        let base = self.primary()?;
        if self.cur.eat('^') {
            let k = self.cur.nat()?;
            Ok(base.pow(k, self.one))
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<MPoly<C>> {
        if self.cur.eat('(') {
            let e = self.expr()?;
            if !self.cur.eat(')') {
                return self.cur.error("expected ')'");
            }
            return Ok(e);
        }
        if let Some(r) = self.cur.rational()? {
            return Ok(MPoly::constant(self.nvars, self.one.from_rat_like(&r)));
        }
        let start = self.cur.pos();
        match self.cur.ident() {
            Some(id) => match (self.resolve)(&id) {
                Some(Atom::Var(i)) => Ok(MPoly::var(self.nvars, i, self.one)),
                Some(Atom::Const(c)) => Ok(MPoly::constant(self.nvars, c)),
                None => Err(Error::Syntax { pos: start, msg: format!("unknown identifier {id:?}") }),
            },
            None => self.cur.error("expected a factor"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(src: &str) -> MPoly<Rat> {
        parse_mpoly(src, "w", 10).unwrap()
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(mpoly_normalize(&w("-2/3*w0 + 4/3*w1")).unwrap(), w("w0 - 2*w1"));
        assert_eq!(mpoly_normalize(&w("w0*w2 - w1^2")).unwrap(), w("w0*w2 - w1^2"));
        assert_eq!(mpoly_normalize(&w("6*w0^3 - 2*w1^3")).unwrap(), w("3*w0^3 - w1^3"));
        assert_eq!(mpoly_normalize(&MPoly::zero(3)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn printing_is_descending_lex() {
        assert_eq!(w("w1^2 - w0*w2").to_text("w"), "-w0*w2 + w1^2");
        assert_eq!(w("3 + w9 - 1/2*w0^3").to_text("w"), "-1/2*w0^3 + w9 + 3");
        assert_eq!(w("w3*w0^2 - w0*w1^2").to_text("w"), "w0^2*w3 - w0*w1^2");
        assert_eq!(MPoly::<Rat>::zero(2).to_text("x"), "0");
    }

    #[test]
    fn parser_handles_products_and_powers() {
        let e = w("(w0 + w1)^2 - w0 w0 - 2w0*w1");
        assert_eq!(e, w("w1^2"));
        assert!(matches!(parse_mpoly("w10", "w", 10), Err(Error::Syntax { .. })));
        assert!(matches!(parse_mpoly("w0 +", "w", 10), Err(Error::Syntax { .. })));
        assert!(matches!(parse_mpoly("(w0", "w", 10), Err(Error::Syntax { .. })));
        assert!(matches!(parse_mpoly("w0*", "w", 10), Err(Error::Syntax { .. })));
    }

    #[test]
    fn substitution_and_evaluation() {
        let f = parse_mpoly("x0*x1", "x", 2).unwrap();
        let rows = vec![vec![Rat::from(1), Rat::from(1)], vec![Rat::from(1), Rat::from(-1)]];
        let g = f.substitute_linear(&rows).unwrap();
        assert_eq!(g, parse_mpoly("x0^2 - x1^2", "x", 2).unwrap());
        assert_eq!(g.eval(&[Rat::from(3), Rat::from(2)]), Rat::from(5));
        assert!(f.substitute_linear(&rows[..1]).is_err());
    }

    #[test]
    fn homogeneity_and_degree() {
        assert!(w("w0*w1 + w2^2").is_homogeneous());
        assert!(!w("w0*w1 + w2").is_homogeneous());
        assert_eq!(w("w0^3*w1").degree(), Some(4));
    }
}
