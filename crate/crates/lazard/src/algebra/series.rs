//! Truncated multivariate power series over a parent ring.
//!
//! A series ring of order `D` is R[[x₁,…,x_k]] modulo all monomials of total
//! degree ≥ D. Since that is an ideal, every ring operation here is exact in
//! the quotient.

use super::ring::Ring;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use std::collections::BTreeMap;

/// An exponent vector, ordered by total degree first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Mono {
    deg: u32,
    exps: Vec<u32>,
}

impl Mono {
    pub fn new(exps: Vec<u32>) -> Self {
        Mono { deg: exps.iter().sum(), exps }
    }

    pub fn zero(nvars: usize) -> Self {
        Mono { deg: 0, exps: vec![0; nvars] }
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    fn times(&self, other: &Mono) -> Mono {
        Mono { deg: self.deg + other.deg, exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<E> {
    pub terms: BTreeMap<Mono, E>,
}

impl<E> TruncatedSeries<E> {
    pub fn iter(&self) -> impl Iterator<Item = (&Mono, &E)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct SeriesRing<R: Ring> {
    pub base: R,
    pub vars: Vec<String>,
    pub order: u32,
}

impl<R: Ring> SeriesRing<R> {
    pub fn new(base: R, vars: &[&str], order: u32) -> Self {
        assert!(order >= 1, "truncation order must be positive");
        SeriesRing { base, vars: vars.iter().map(|s| s.to_string()).collect(), order }
    }

    pub fn univariate(base: R, var: &str, order: u32) -> Self {
        Self::new(base, &[var], order)
    }

    pub fn with_order(&self, order: u32) -> Self {
        SeriesRing { base: self.base.clone(), vars: self.vars.clone(), order }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn check(&self, f: &TruncatedSeries<R::Elem>) -> Result<()> {
        for m in f.terms.keys() {
            if m.exps.len() != self.nvars() {
                return Err(Error::SeriesMismatch(format!("expected {} variables, got {}", self.nvars(), m.exps.len())));
            }
        }
        Ok(())
    }

    /// `c · x^exps`, or zero when the monomial is truncated.
    pub fn term(&self, exps: Vec<u32>, c: R::Elem) -> TruncatedSeries<R::Elem> {
        assert_eq!(exps.len(), self.nvars());
        let m = Mono::new(exps);
        let mut terms = BTreeMap::new();
        if m.deg < self.order && !self.base.is_zero(&c) {
            terms.insert(m, c);
        }
        TruncatedSeries { terms }
    }

    pub fn constant(&self, c: R::Elem) -> TruncatedSeries<R::Elem> {
        self.term(vec![0; self.nvars()], c)
    }

    pub fn var(&self, i: usize) -> TruncatedSeries<R::Elem> {
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        self.term(e, self.base.one())
    }

    /// Builds a univariate series from its coefficient list.
    pub fn from_coeffs(&self, coeffs: Vec<R::Elem>) -> TruncatedSeries<R::Elem> {
        assert_eq!(self.nvars(), 1);
        let mut f = self.zero();
        for (k, c) in coeffs.into_iter().enumerate() {
            if (k as u32) < self.order && !self.base.is_zero(&c) {
                f.terms.insert(Mono::new(vec![k as u32]), c);
            }
        }
        f
    }

    pub fn coeff(&self, f: &TruncatedSeries<R::Elem>, exps: &[u32]) -> R::Elem {
        f.terms.get(&Mono::new(exps.to_vec())).cloned().unwrap_or_else(|| self.base.zero())
    }

    /// Coefficient list `[f_0, …, f_{D-1}]` of a univariate series.
    pub fn coeffs(&self, f: &TruncatedSeries<R::Elem>) -> Vec<R::Elem> {
        (0..self.order).map(|k| self.coeff(f, &[k])).collect()
    }

    pub fn constant_term(&self, f: &TruncatedSeries<R::Elem>) -> R::Elem {
        self.coeff(f, &vec![0; self.nvars()])
    }

    /// Drops every term of total degree ≥ `order`.
    pub fn truncate(&self, f: &TruncatedSeries<R::Elem>, order: u32) -> TruncatedSeries<R::Elem> {
        TruncatedSeries { terms: f.terms.iter().filter(|(m, _)| m.deg < order).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Equality modulo total degree `order`.
    pub fn eq_up_to(&self, f: &TruncatedSeries<R::Elem>, g: &TruncatedSeries<R::Elem>, order: u32) -> bool {
        self.truncate(f, order) == self.truncate(g, order)
    }

    pub fn map_coeffs<T: Ring>(&self, target: &SeriesRing<T>, f: &TruncatedSeries<R::Elem>, mut map: impl FnMut(&R::Elem) -> T::Elem) -> TruncatedSeries<T::Elem> {
        let mut terms = BTreeMap::new();
        for (m, c) in &f.terms {
            let y = map(c);
            if m.deg < target.order && !target.base.is_zero(&y) {
                terms.insert(m.clone(), y);
            }
        }
        TruncatedSeries { terms }
    }

    pub fn scalar_mul(&self, c: &R::Elem, f: &TruncatedSeries<R::Elem>) -> TruncatedSeries<R::Elem> {
        let mut terms = BTreeMap::new();
        for (m, x) in &f.terms {
            let y = self.base.mul(c, x);
            if !self.base.is_zero(&y) {
                terms.insert(m.clone(), y);
            }
        }
        TruncatedSeries { terms }
    }

    /// Partial derivative in variable `i`.
    pub fn derivative(&self, f: &TruncatedSeries<R::Elem>, i: usize) -> TruncatedSeries<R::Elem> {
        let mut terms = BTreeMap::new();
        for (m, c) in &f.terms {
            let e = m.exps[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[i] -= 1;
            let y = self.base.scale(c, &BigInt::from(e));
            if !self.base.is_zero(&y) {
                terms.insert(Mono::new(exps), y);
            }
        }
        TruncatedSeries { terms }
    }

    /// Lowest total degree of a nonzero term.
    pub fn valuation(&self, f: &TruncatedSeries<R::Elem>) -> Option<u32> {
        f.terms.keys().next().map(|m| m.deg)
    }

    /// Evaluates `f` at `subs[i]` for each variable, inside `target`.
    /// `embed` maps the coefficients of `f` into `target`.
    pub fn substitute<T: Ring>(&self, f: &TruncatedSeries<R::Elem>, target: &T, subs: &[T::Elem], embed: impl Fn(&R::Elem) -> T::Elem) -> T::Elem {
        assert_eq!(subs.len(), self.nvars());
        let mut powers: Vec<Vec<T::Elem>> = subs.iter().map(|_| vec![target.one()]).collect();
        let mut acc = target.zero();
        for (m, c) in &f.terms {
            let mut t = embed(c);
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = target.mul(powers[i].last().unwrap(), &subs[i]);
                    powers[i].push(next);
                }
                t = target.mul(&t, &powers[i][e as usize]);
            }
            target.add_assign(&mut acc, &t);
        }
        acc
    }

    /// `f ∘ g` for a univariate `f` (given in `src`, same base ring) and `g`
    /// in this ring with zero constant term.
    pub fn compose(&self, src: &SeriesRing<R>, f: &TruncatedSeries<R::Elem>, g: &TruncatedSeries<R::Elem>) -> Result<TruncatedSeries<R::Elem>> {
        if src.nvars() != 1 {
            return Err(Error::SeriesMismatch("outer series must be univariate".into()));
        }
        src.check(f)?;
        self.check(g)?;
        if !self.base.is_zero(&self.constant_term(g)) {
            return Err(Error::NonzeroConstant);
        }
        let top = src.order.min(self.order);
        let mut acc = self.zero();
        for k in (0..top).rev() {
            acc = self.mul(&acc, g);
            let c = src.coeff(f, &[k]);
            if !self.base.is_zero(&c) {
                self.add_assign(&mut acc, &self.constant(c));
            }
        }
        Ok(acc)
    }

    /// Composition inverse of a univariate `f` with `f(0) = 0` and unit
    /// linear coefficient, by Newton iteration `g ← g − (f∘g − x)/(f′∘g)`.
    pub fn reversion(&self, f: &TruncatedSeries<R::Elem>) -> Result<TruncatedSeries<R::Elem>> {
        if self.nvars() != 1 {
            return Err(Error::SeriesMismatch("reversion needs a univariate series".into()));
        }
        self.check(f)?;
        if !self.base.is_zero(&self.constant_term(f)) {
            return Err(Error::NonzeroConstant);
        }
        let c1 = self.coeff(f, &[1]);
        let inv = self.base.inverse(&c1).ok_or(Error::NonUnitLinear)?;
        let x = self.var(0);
        let df = self.derivative(f, 0);
        let mut g = self.scalar_mul(&inv, &x);
        let mut precision = 2u32;
        loop {
            let residual = self.sub(&self.compose(self, f, &g)?, &x);
            if self.is_zero(&residual) {
                return Ok(g);
            }
            let slope = self.compose(self, &df, &g)?;
            let step = self.mul(&residual, &self.inverse(&slope).expect("unit slope"));
            g = self.sub(&g, &step);
            precision = precision.saturating_mul(2);
            assert!(precision <= 4 * self.order.max(2), "Newton reversion failed to converge");
        }
    }

    /// `h` with `f = g·h`, where `g = x_var^k · u` and `u` has a unit constant
    /// term. The quotient is only determined modulo degree `order − k`, so
    /// terms of degree ≥ `order − k` are dropped.
    pub fn divide(&self, f: &TruncatedSeries<R::Elem>, g: &TruncatedSeries<R::Elem>, var: usize) -> Result<TruncatedSeries<R::Elem>> {
        self.check(f)?;
        self.check(g)?;
        let k = g.terms.keys().map(|m| m.exps[var]).min().ok_or_else(|| Error::InexactDivision("division by zero".into()))?;
        let mut lead = vec![0; self.nvars()];
        lead[var] = k;
        if self.base.inverse(&self.coeff(g, &lead)).is_none() {
            return Err(Error::InexactDivision("leading coefficient of the divisor is not a unit".into()));
        }
        if f.terms.keys().any(|m| m.exps[var] < k) {
            return Err(Error::InexactDivision(format!("dividend is not divisible by x{}^{}", var, k)));
        }
        let shift = |s: &TruncatedSeries<R::Elem>| {
            let mut terms = BTreeMap::new();
            for (m, c) in &s.terms {
                let mut e = m.exps.clone();
                e[var] -= k;
                terms.insert(Mono::new(e), c.clone());
            }
            TruncatedSeries { terms }
        };
        let u = shift(g);
        let q = self.mul(&shift(f), &self.inverse(&u).expect("unit constant term"));
        Ok(self.truncate(&q, self.order.saturating_sub(k)))
    }
}

impl<R: Ring> Ring for SeriesRing<R> {
    type Elem = TruncatedSeries<R::Elem>;

    fn zero(&self) -> Self::Elem {
        TruncatedSeries { terms: BTreeMap::new() }
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.terms.is_empty()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = a.clone();
        self.add_assign(&mut out, b);
        out
    }
    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        for (m, c) in &b.terms {
            match a.terms.get_mut(m) {
                Some(x) => {
                    self.base.add_assign(x, c);
                    if self.base.is_zero(x) {
                        a.terms.remove(m);
                    }
                }
                None => {
                    a.terms.insert(m.clone(), c.clone());
                }
            }
        }
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        TruncatedSeries { terms: a.terms.iter().map(|(m, c)| (m.clone(), self.base.neg(c))).collect() }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out: BTreeMap<Mono, R::Elem> = BTreeMap::new();
        for (m, x) in &a.terms {
            if m.deg >= self.order {
                break;
            }
            for (n, y) in &b.terms {
                if m.deg + n.deg >= self.order {
                    break;
                }
                let c = self.base.mul(x, y);
                if self.base.is_zero(&c) {
                    continue;
                }
                let key = m.times(n);
                match out.get_mut(&key) {
                    Some(acc) => self.base.add_assign(acc, &c),
                    None => {
                        out.insert(key, c);
                    }
                }
            }
        }
        out.retain(|_, c| !self.base.is_zero(c));
        TruncatedSeries { terms: out }
    }
    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.constant(self.base.from_int(n))
    }
    /// Newton iteration `w ← w(2 − f w)` from the inverse constant term.
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let c0 = self.base.inverse(&self.constant_term(a))?;
        let two = self.from_i64(2);
        let mut w = self.constant(c0);
        let mut precision = 1u32;
        while precision < self.order {
            w = self.mul(&w, &self.sub(&two, &self.mul(a, &w)));
            precision *= 2;
        }
        Some(w)
    }
    fn scale(&self, a: &Self::Elem, k: &BigInt) -> Self::Elem {
        TruncatedSeries {
            terms: a
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.base.scale(c, k)))
                .filter(|(_, c)| !self.base.is_zero(c))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::bpoly::BRing;
    use crate::algebra::scalars::Integers;

    fn zx(order: u32) -> SeriesRing<Integers> {
        SeriesRing::univariate(Integers, "x", order)
    }

    fn poly(r: &SeriesRing<Integers>, c: &[i64]) -> TruncatedSeries<BigInt> {
        r.from_coeffs(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    #[test]
    fn product_truncates() {
        let r = zx(3);
        assert_eq!(r.mul(&poly(&r, &[1, 1]), &poly(&r, &[1, -1])), poly(&r, &[1, 0, -1]));
        let s = SeriesRing::new(Integers, &["x", "y"], 2);
        assert!(s.is_zero(&s.mul(&s.var(0), &s.var(1))));
    }

    #[test]
    fn compose_square() {
        let s = SeriesRing::new(Integers, &["x", "y"], 5);
        let r = zx(5);
        let sq = poly(&r, &[0, 0, 1]);
        let g = s.add(&s.var(0), &s.var(1));
        assert_eq!(s.compose(&r, &sq, &g).unwrap(), s.mul(&g, &g));
        assert_eq!(s.compose(&r, &poly(&r, &[0, 1]), &g).unwrap(), g);
        assert_eq!(s.compose(&r, &sq, &s.one()), Err(Error::NonzeroConstant));
    }

    #[test]
    fn reversion_of_exp() {
        let b = BRing::new(Integers);
        let r = SeriesRing::univariate(b.clone(), "x", 4);
        let exp = r.from_coeffs(vec![b.zero(), b.one(), b.b(1), b.b(2)]);
        let g = r.reversion(&exp).unwrap();
        let b1sq = b.mul(&b.b(1), &b.b(1));
        let c3 = b.sub(&b.scale(&b1sq, &BigInt::from(2)), &b.b(2));
        assert_eq!(r.coeffs(&g), vec![b.zero(), b.one(), b.neg(&b.b(1)), c3]);
        assert_eq!(r.compose(&r, &exp, &g).unwrap(), r.var(0));
        assert_eq!(r.compose(&r, &g, &exp).unwrap(), r.var(0));
    }

    #[test]
    fn reversion_needs_unit() {
        let r = zx(4);
        assert_eq!(r.reversion(&poly(&r, &[0, 2])), Err(Error::NonUnitLinear));
        assert_eq!(r.reversion(&poly(&r, &[0, 1])).unwrap(), r.var(0));
    }

    #[test]
    fn division() {
        let r = zx(5);
        assert_eq!(r.divide(&poly(&r, &[0, 0, 1]), &r.var(0), 0).unwrap(), poly(&r, &[0, 1]));
        assert!(matches!(r.divide(&r.var(0), &poly(&r, &[0, 0, 1]), 0), Err(Error::InexactDivision(_))));
        let inv = r.inverse(&poly(&r, &[1, 1])).unwrap();
        assert_eq!(inv, poly(&r, &[1, -1, 1, -1, 1]));
    }
}
