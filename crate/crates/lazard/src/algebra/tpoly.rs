//! ℤ[t] and ℤ[t, ε]/ε², the coefficient rings of the Euler and additive
//! specializations. `t` has degree -1 and `ε` degree 0.

use super::ring::{Graded, Ring};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

fn trim(v: &mut Vec<BigInt>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn add_vec(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut out: Vec<BigInt> = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
        .collect();
    trim(&mut out);
    out
}

fn mul_vec(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn homogeneous_t_degree(v: &[BigInt]) -> Option<usize> {
    let nz: Vec<usize> = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i).collect();
    (nz.len() == 1).then(|| nz[0])
}

/// Dense coefficient vector of a polynomial in `t`, without trailing zeros.
pub type TPoly = Vec<BigInt>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TRing;

impl TRing {
    /// `c · t^k`.
    pub fn monomial(&self, c: BigInt, k: usize) -> TPoly {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        trim(&mut v);
        v
    }
}

impl Ring for TRing {
    type Elem = TPoly;

    fn zero(&self) -> TPoly {
        Vec::new()
    }
    fn one(&self) -> TPoly {
        vec![BigInt::one()]
    }
    fn is_zero(&self, a: &TPoly) -> bool {
        a.is_empty()
    }
    fn add(&self, a: &TPoly, b: &TPoly) -> TPoly {
        add_vec(a, b)
    }
    fn neg(&self, a: &TPoly) -> TPoly {
        a.iter().map(|c| -c).collect()
    }
    fn mul(&self, a: &TPoly, b: &TPoly) -> TPoly {
        mul_vec(a, b)
    }
    fn from_int(&self, n: &BigInt) -> TPoly {
        self.monomial(n.clone(), 0)
    }
    fn inverse(&self, a: &TPoly) -> Option<TPoly> {
        (a.len() == 1 && a[0].abs().is_one()).then(|| a.clone())
    }
}

impl Graded for TRing {
    fn homogeneous_degree(&self, a: &TPoly) -> Option<i64> {
        homogeneous_t_degree(a).map(|k| -(k as i64))
    }
}

/// `plain + ε·eps` with both parts polynomials in `t`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TEps {
    pub plain: TPoly,
    pub eps: TPoly,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TEpsRing;

impl TEpsRing {
    /// `c · ε^e · t^k` with `e ∈ {0, 1}`.
    pub fn monomial(&self, c: BigInt, k: usize, e: u8) -> TEps {
        let m = TRing.monomial(c, k);
        if e == 0 {
            TEps { plain: m, eps: Vec::new() }
        } else {
            TEps { plain: Vec::new(), eps: m }
        }
    }
}

impl Ring for TEpsRing {
    type Elem = TEps;

    fn zero(&self) -> TEps {
        TEps::default()
    }
    fn one(&self) -> TEps {
        TEps { plain: vec![BigInt::one()], eps: Vec::new() }
    }
    fn is_zero(&self, a: &TEps) -> bool {
        a.plain.is_empty() && a.eps.is_empty()
    }
    fn add(&self, a: &TEps, b: &TEps) -> TEps {
        TEps { plain: add_vec(&a.plain, &b.plain), eps: add_vec(&a.eps, &b.eps) }
    }
    fn neg(&self, a: &TEps) -> TEps {
        TEps { plain: TRing.neg(&a.plain), eps: TRing.neg(&a.eps) }
    }
    fn mul(&self, a: &TEps, b: &TEps) -> TEps {
        TEps {
            plain: mul_vec(&a.plain, &b.plain),
            eps: add_vec(&mul_vec(&a.plain, &b.eps), &mul_vec(&a.eps, &b.plain)),
        }
    }
    fn from_int(&self, n: &BigInt) -> TEps {
        self.monomial(n.clone(), 0, 0)
    }
    fn inverse(&self, a: &TEps) -> Option<TEps> {
        // (u + εe)^{-1} = u^{-1} - ε e u^{-2} for a unit u of ℤ[t].
        let u = TRing.inverse(&a.plain)?;
        let e = TRing.neg(&mul_vec(&mul_vec(&a.eps, &u), &u));
        Some(TEps { plain: u, eps: e })
    }
}

impl Graded for TEpsRing {
    fn homogeneous_degree(&self, a: &TEps) -> Option<i64> {
        let p = if a.plain.is_empty() { None } else { Some(homogeneous_t_degree(&a.plain)?) };
        let e = if a.eps.is_empty() { None } else { Some(homogeneous_t_degree(&a.eps)?) };
        match (p, e) {
            (Some(x), Some(y)) if x == y => Some(-(x as i64)),
            (Some(x), None) | (None, Some(x)) => Some(-(x as i64)),
            _ => None,
        }
    }
}
