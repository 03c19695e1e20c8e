//! Laurent series in one distinguished variable `y`, with coefficients in an
//! arbitrary ring (typically another series or polynomial ring).

use super::ring::Ring;
use std::collections::BTreeMap;

/// `Σ_{k>0} principal[k]·y^{-k} + Σ_{k≥0} regular[k]·y^k`, with the regular
/// part known modulo `y^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries<E> {
    pub principal: BTreeMap<u32, E>,
    pub regular: BTreeMap<u32, E>,
}

#[derive(Clone, Debug)]
pub struct LaurentRing<R: Ring> {
    pub base: R,
    pub order: u32,
}

impl<R: Ring> LaurentRing<R> {
    pub fn new(base: R, order: u32) -> Self {
        LaurentRing { base, order }
    }

    pub fn zero(&self) -> LaurentSeries<R::Elem> {
        LaurentSeries { principal: BTreeMap::new(), regular: BTreeMap::new() }
    }

    /// `c · y^k` for any integer `k`.
    pub fn monomial(&self, c: R::Elem, k: i64) -> LaurentSeries<R::Elem> {
        let mut f = self.zero();
        self.add_term(&mut f, k, c);
        f
    }

    /// `y^shift · Σ coeffs[i] y^i`.
    pub fn from_shifted(&self, coeffs: &[R::Elem], shift: i64) -> LaurentSeries<R::Elem> {
        let mut f = self.zero();
        for (i, c) in coeffs.iter().enumerate() {
            self.add_term(&mut f, shift + i as i64, c.clone());
        }
        f
    }

    fn add_term(&self, f: &mut LaurentSeries<R::Elem>, k: i64, c: R::Elem) {
        if self.base.is_zero(&c) {
            return;
        }
        let (slot, key) = if k < 0 {
            (&mut f.principal, (-k) as u32)
        } else if (k as u64) < self.order as u64 {
            (&mut f.regular, k as u32)
        } else {
            return;
        };
        match slot.get_mut(&key) {
            Some(x) => {
                self.base.add_assign(x, &c);
                if self.base.is_zero(x) {
                    slot.remove(&key);
                }
            }
            None => {
                slot.insert(key, c);
            }
        }
    }

    fn terms<'a>(&self, f: &'a LaurentSeries<R::Elem>) -> Vec<(i64, &'a R::Elem)> {
        f.principal.iter().map(|(k, c)| (-(*k as i64), c)).chain(f.regular.iter().map(|(k, c)| (*k as i64, c))).collect()
    }

    pub fn add(&self, f: &LaurentSeries<R::Elem>, g: &LaurentSeries<R::Elem>) -> LaurentSeries<R::Elem> {
        let mut out = f.clone();
        for (k, c) in self.terms(g) {
            self.add_term(&mut out, k, c.clone());
        }
        out
    }

    pub fn mul(&self, f: &LaurentSeries<R::Elem>, g: &LaurentSeries<R::Elem>) -> LaurentSeries<R::Elem> {
        let mut out = self.zero();
        for (a, x) in self.terms(f) {
            for (b, y) in self.terms(g) {
                self.add_term(&mut out, a + b, self.base.mul(x, y));
            }
        }
        out
    }

    /// The `y^{-1}` coefficient.
    pub fn residue(&self, f: &LaurentSeries<R::Elem>) -> R::Elem {
        f.principal.get(&1).cloned().unwrap_or_else(|| self.base.zero())
    }
}
