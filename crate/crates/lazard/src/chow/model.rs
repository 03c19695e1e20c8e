//! Finitely presented Chow rings of connected catalog varieties.
//!
//! Generators are hyperplane classes `h_1..h_k` of the projective factors
//! followed by one class `ζ_j = c₁(O(-1))` per projective-bundle layer. The
//! relations are `h_i^{n_i+1} = 0` and, for a layer of rank `r` with Chern
//! roots `ℓ_1..ℓ_r` (linear forms in earlier generators),
//! `Σ_i (-1)^i c_i(V) ζ^{r-i} = 0`.

use crate::algebra::{Integers, Ring};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};

/// A linear form in the generators of a model.
pub type LinearForm = Vec<i64>;

#[derive(Clone, Debug, PartialEq)]
pub struct BundleLayer {
    /// Chern roots of the bundle, as linear forms over all generators of the
    /// model (only entries before this layer's own generator may be nonzero).
    pub lines: Vec<LinearForm>,
}

impl BundleLayer {
    pub fn rank(&self) -> usize {
        self.lines.len()
    }
}

type Expansion = Vec<(usize, BigInt)>;

#[derive(Clone, Debug)]
pub struct ChowModel {
    pub proj_dims: Vec<u32>,
    pub layers: Vec<BundleLayer>,
    pub dim: u32,
    /// Reduced monomials, as exponent vectors over the generators, sorted by
    /// codimension.
    pub basis: Vec<Vec<u32>>,
    pub codims: Vec<u32>,
    index: HashMap<Vec<u32>, usize>,
    mult: Vec<Vec<Expansion>>,
    /// Degrees of the top-codimension basis elements.
    top: Vec<(usize, BigInt)>,
}

impl PartialEq for ChowModel {
    fn eq(&self, other: &Self) -> bool {
        self.proj_dims == other.proj_dims && self.layers == other.layers
    }
}

fn add_into(acc: &mut BTreeMap<Vec<u32>, BigInt>, key: Vec<u32>, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(key.clone()).or_insert_with(BigInt::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&key);
    }
}

struct Reducer<'a> {
    proj_dims: &'a [u32],
    layers: &'a [BundleLayer],
    /// `Σ_{i≥1} (-1)^{i+1} c_i(V) ζ^{r-i}` per layer, the value of `ζ^r`.
    zeta_top: Vec<BTreeMap<Vec<u32>, BigInt>>,
    memo: HashMap<Vec<u32>, BTreeMap<Vec<u32>, BigInt>>,
}

impl<'a> Reducer<'a> {
    fn reduce_poly(&mut self, p: &BTreeMap<Vec<u32>, BigInt>) -> BTreeMap<Vec<u32>, BigInt> {
        let mut out = BTreeMap::new();
        for (m, c) in p {
            for (k, v) in self.reduce(m) {
                add_into(&mut out, k, v * c);
            }
        }
        out
    }

    fn reduce(&mut self, m: &[u32]) -> BTreeMap<Vec<u32>, BigInt> {
        if let Some(v) = self.memo.get(m) {
            return v.clone();
        }
        let k = self.proj_dims.len();
        let mut result = BTreeMap::new();
        if m[..k].iter().zip(self.proj_dims).any(|(e, n)| e > n) {
            self.memo.insert(m.to_vec(), result.clone());
            return result;
        }
        // The last layer whose exponent is too large gets rewritten.
        let bad = (0..self.layers.len()).rev().find(|&j| m[k + j] as usize >= self.layers[j].rank());
        match bad {
            None => {
                result.insert(m.to_vec(), BigInt::one());
            }
            Some(j) => {
                let r = self.layers[j].rank() as u32;
                let mut rest = m.to_vec();
                rest[k + j] -= r;
                let mut expanded = BTreeMap::new();
                for (t, c) in self.zeta_top[j].clone() {
                    let prod: Vec<u32> = t.iter().zip(&rest).map(|(a, b)| a + b).collect();
                    add_into(&mut expanded, prod, c);
                }
                result = self.reduce_poly(&expanded);
            }
        }
        self.memo.insert(m.to_vec(), result.clone());
        result
    }
}

/// Polynomial for a linear form.
fn linear_poly(form: &[i64], ngens: usize) -> BTreeMap<Vec<u32>, BigInt> {
    let mut out = BTreeMap::new();
    for (g, &c) in form.iter().enumerate() {
        if c != 0 {
            let mut e = vec![0; ngens];
            e[g] = 1;
            add_into(&mut out, e, BigInt::from(c));
        }
    }
    out
}

fn poly_mul(a: &BTreeMap<Vec<u32>, BigInt>, b: &BTreeMap<Vec<u32>, BigInt>) -> BTreeMap<Vec<u32>, BigInt> {
    let mut out = BTreeMap::new();
    for (x, c) in a {
        for (y, d) in b {
            let e: Vec<u32> = x.iter().zip(y).map(|(p, q)| p + q).collect();
            add_into(&mut out, e, c * d);
        }
    }
    out
}

impl ChowModel {
    /// The model of `ℙ^{n_1} × ⋯ × ℙ^{n_k}` (a point when `dims` is empty).
    pub fn multiproj(dims: &[u32]) -> ChowModel {
        Self::build(dims.to_vec(), Vec::new()).expect("multiprojective models are always valid")
    }

    /// `ℙ(V)` over this model, for a split bundle `V` with the given roots.
    pub fn proj_bundle(&self, lines: &[LinearForm]) -> Result<ChowModel> {
        if lines.is_empty() {
            return Err(Error::InvalidSpec("a projective bundle needs rank at least 1".into()));
        }
        let n = self.ngens();
        let mut layers = self.layers.clone();
        for l in &mut layers {
            for f in &mut l.lines {
                f.push(0);
            }
        }
        let mut new_lines = Vec::new();
        for f in lines {
            if f.len() != n {
                return Err(Error::InvalidSpec(format!("line has {} coefficients, base has {} generators", f.len(), n)));
            }
            let mut g = f.clone();
            g.push(0);
            new_lines.push(g);
        }
        layers.push(BundleLayer { lines: new_lines });
        Self::build(self.proj_dims.clone(), layers)
    }

    /// The product model; generators are the `h`'s of both factors followed
    /// by the bundle generators of both factors.
    pub fn product(&self, other: &ChowModel) -> Result<ChowModel> {
        let (ka, kb) = (self.proj_dims.len(), other.proj_dims.len());
        let (sa, sb) = (self.layers.len(), other.layers.len());
        let total = ka + kb + sa + sb;
        let remap = |f: &LinearForm, h_off: usize, z_off: usize, k: usize| {
            let mut g = vec![0; total];
            for (i, &c) in f.iter().enumerate() {
                let target = if i < k { h_off + i } else { z_off + i - k };
                g[target] = c;
            }
            g
        };
        let mut layers = Vec::new();
        for l in &self.layers {
            layers.push(BundleLayer { lines: l.lines.iter().map(|f| remap(f, 0, ka + kb, ka)).collect() });
        }
        for l in &other.layers {
            layers.push(BundleLayer { lines: l.lines.iter().map(|f| remap(f, ka, ka + kb + sa, kb)).collect() });
        }
        let mut dims = self.proj_dims.clone();
        dims.extend_from_slice(&other.proj_dims);
        Self::build(dims, layers)
    }

    fn build(proj_dims: Vec<u32>, layers: Vec<BundleLayer>) -> Result<ChowModel> {
        let k = proj_dims.len();
        let ngens = k + layers.len();
        for (j, l) in layers.iter().enumerate() {
            if l.lines.is_empty() {
                return Err(Error::InvalidSpec("a projective bundle needs rank at least 1".into()));
            }
            for f in &l.lines {
                if f.len() != ngens || f[k + j..].iter().any(|&c| c != 0) {
                    return Err(Error::InvalidSpec("bundle line refers to a later generator".into()));
                }
            }
        }
        let dim = proj_dims.iter().sum::<u32>() + layers.iter().map(|l| l.rank() as u32 - 1).sum::<u32>();
        // ζ^r = -Σ_{i≥1} (-1)^i c_i(V) ζ^{r-i}, with c(V) = Π (1 + ℓ).
        let mut zeta_top = Vec::new();
        for (j, l) in layers.iter().enumerate() {
            let r = l.rank();
            let mut elem: Vec<BTreeMap<Vec<u32>, BigInt>> = vec![BTreeMap::new(); r + 1];
            elem[0].insert(vec![0; ngens], BigInt::one());
            for f in &l.lines {
                let lp = linear_poly(f, ngens);
                for i in (1..=r).rev() {
                    let t = poly_mul(&elem[i - 1], &lp);
                    for (m, c) in t {
                        add_into(&mut elem[i], m, c);
                    }
                }
            }
            let mut top = BTreeMap::new();
            for (i, ci) in elem.iter().enumerate().skip(1) {
                let sign = if i % 2 == 0 { -1 } else { 1 };
                for (m, c) in ci {
                    let mut e = m.clone();
                    e[k + j] += (r - i) as u32;
                    add_into(&mut top, e, c * sign);
                }
            }
            zeta_top.push(top);
        }
        let mut reducer = Reducer { proj_dims: &proj_dims, layers: &layers, zeta_top, memo: HashMap::new() };

        let mut basis: Vec<Vec<u32>> = vec![vec![]];
        for g in 0..ngens {
            let bound = if g < k { proj_dims[g] } else { layers[g - k].rank() as u32 - 1 };
            basis = basis.into_iter().flat_map(|b| (0..=bound).map(move |e| { let mut c = b.clone(); c.push(e); c })).collect();
        }
        basis.sort_by_key(|b| (b.iter().sum::<u32>(), std::cmp::Reverse(b.clone())));
        let codims: Vec<u32> = basis.iter().map(|b| b.iter().sum()).collect();
        let index: HashMap<Vec<u32>, usize> = basis.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();

        let to_expansion = |p: &BTreeMap<Vec<u32>, BigInt>| -> Expansion {
            let mut v: Expansion = p.iter().map(|(m, c)| (index[m], c.clone())).collect();
            v.sort_by_key(|x| x.0);
            v
        };
        let nb = basis.len();
        let mut mult = vec![vec![Vec::new(); nb]; nb];
        for i in 0..nb {
            for j in i..nb {
                if codims[i] + codims[j] > dim {
                    continue;
                }
                let m: Vec<u32> = basis[i].iter().zip(&basis[j]).map(|(a, b)| a + b).collect();
                let e = to_expansion(&reducer.reduce(&m));
                mult[j][i] = e.clone();
                mult[i][j] = e;
            }
        }
        // deg(h^n ζ_1^{r_1-1} ⋯) = Π (-1)^{r_j - 1}
        let mut top_mono: Vec<u32> = proj_dims.clone();
        let mut sign = 1i64;
        for l in &layers {
            top_mono.push(l.rank() as u32 - 1);
            if (l.rank() - 1) % 2 == 1 {
                sign = -sign;
            }
        }
        let top = vec![(index[&top_mono], BigInt::from(sign))];
        let top_count = codims.iter().filter(|&&c| c == dim).count();
        debug_assert_eq!(top_count, 1, "top codimension must be one-dimensional");
        Ok(ChowModel { proj_dims, layers, dim, basis, codims, index, mult, top })
    }

    pub fn ngens(&self) -> usize {
        self.proj_dims.len() + self.layers.len()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Number of basis elements in codimension `c`.
    pub fn rank_in_codim(&self, c: u32) -> usize {
        self.codims.iter().filter(|&&x| x == c).count()
    }

    pub fn basis_index(&self, exps: &[u32]) -> Option<usize> {
        self.index.get(exps).copied()
    }

    /// Index of the generator `ζ` of bundle layer `j`.
    pub fn zeta_gen(&self, j: usize) -> usize {
        self.proj_dims.len() + j
    }

    pub fn ring<R: Ring>(&self, base: R) -> ChowRing<'_, R> {
        ChowRing { model: self, base }
    }

    pub fn int_ring(&self) -> ChowRing<'_, Integers> {
        self.ring(Integers)
    }

    fn product_expansion(&self, i: usize, j: usize) -> &Expansion {
        &self.mult[i][j]
    }

    /// For a model built as `ℙ(V)` over `base` (its last layer), splits each
    /// basis index into `(base basis index, ζ exponent)`.
    pub fn split_last_layer(&self, base: &ChowModel) -> Result<Vec<(usize, u32)>> {
        if self.layers.len() != base.layers.len() + 1 || self.proj_dims != base.proj_dims {
            return Err(Error::InvalidSpec("model is not a projective bundle over the given base".into()));
        }
        Ok(self
            .basis
            .iter()
            .map(|b| {
                let (head, last) = b.split_at(b.len() - 1);
                (base.index[head], last[0])
            })
            .collect())
    }
}

/// Elements of a Chow model tensored with a coefficient ring, stored densely
/// over the model's basis.
#[derive(Clone, Debug)]
pub struct ChowRing<'m, R: Ring> {
    pub model: &'m ChowModel,
    pub base: R,
}

impl<'m, R: Ring> ChowRing<'m, R> {
    pub fn basis_elem(&self, i: usize, c: R::Elem) -> Vec<R::Elem> {
        let mut v = self.zero();
        v[i] = c;
        v
    }

    pub fn constant(&self, c: R::Elem) -> Vec<R::Elem> {
        self.basis_elem(0, c)
    }

    /// The class of a linear form in the generators.
    pub fn linear(&self, form: &[i64]) -> Vec<R::Elem> {
        let mut v = self.zero();
        for (g, &c) in form.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut e = vec![0; self.model.ngens()];
            e[g] = 1;
            if let Some(i) = self.model.basis_index(&e) {
                self.base.add_assign(&mut v[i], &self.base.from_i64(c));
            } else {
                // A rank-one layer: ℙ(L) is the base and ζ = c₁(L).
                let j = g - self.model.proj_dims.len();
                let l: Vec<i64> = self.model.layers[j].lines[0].iter().map(|x| x * c).collect();
                let w = self.linear(&l);
                v = self.add(&v, &w);
            }
        }
        v
    }

    pub fn scalar_mul(&self, c: &R::Elem, a: &[R::Elem]) -> Vec<R::Elem> {
        a.iter().map(|x| self.base.mul(c, x)).collect()
    }

    /// The codimension-`c` component.
    pub fn codim_part(&self, a: &[R::Elem], c: u32) -> Vec<R::Elem> {
        a.iter().enumerate().map(|(i, x)| if self.model.codims[i] == c { x.clone() } else { self.base.zero() }).collect()
    }

    /// Pushforward to the point.
    pub fn degree(&self, a: &[R::Elem]) -> R::Elem {
        let mut acc = self.base.zero();
        for (i, d) in &self.model.top {
            let t = self.base.scale(&a[*i], d);
            self.base.add_assign(&mut acc, &t);
        }
        acc
    }

    /// `Σ coeffs[k]·a^k` by Horner's rule. When `a` is nilpotent only the
    /// first `dim + 1` coefficients matter.
    pub fn eval_poly(&self, coeffs: &[R::Elem], a: &Vec<R::Elem>) -> Vec<R::Elem> {
        let top = if self.base.is_zero(&a[0]) { coeffs.len().min(self.model.dim as usize + 1) } else { coeffs.len() };
        let mut acc = self.zero();
        for c in coeffs[..top].iter().rev() {
            acc = self.mul(&acc, a);
            self.base.add_assign(&mut acc[0], c);
        }
        acc
    }
}

impl<'m, R: Ring> Ring for ChowRing<'m, R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.model.rank()]
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|x| self.base.is_zero(x))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if self.base.is_zero(y) {
                    continue;
                }
                let exp = self.model.product_expansion(i, j);
                if exp.is_empty() {
                    continue;
                }
                let xy = self.base.mul(x, y);
                if self.base.is_zero(&xy) {
                    continue;
                }
                for (k, c) in exp {
                    let t = if c.is_one() { xy.clone() } else { self.base.scale(&xy, c) };
                    self.base.add_assign(&mut out[*k], &t);
                }
            }
        }
        out
    }
    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.constant(self.base.from_int(n))
    }
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let c0 = self.base.inverse(&a[0])?;
        let unit = self.constant(c0.clone());
        // a = a₀(1 + n) with n nilpotent.
        let n = self.sub(&self.mul(&unit, a), &self.one());
        let mut acc = self.one();
        let mut term = self.one();
        for _ in 0..self.model.dim {
            term = self.neg(&self.mul(&term, &n));
            acc = self.add(&acc, &term);
        }
        Some(self.mul(&acc, &unit))
    }
    fn scale(&self, a: &Self::Elem, k: &BigInt) -> Self::Elem {
        a.iter().map(|x| self.base.scale(x, k)).collect()
    }
}

/// Elements of the model with integer coefficients.
pub fn int_degree(model: &ChowModel, a: &[BigInt]) -> BigInt {
    model.int_ring().degree(a)
}

/// True when every coefficient of positive codimension is divisible by `m`.
pub fn positive_codim_divisible(model: &ChowModel, a: &[BigInt], m: i64) -> bool {
    let m = BigInt::from(m);
    a.iter().enumerate().all(|(i, c)| model.codims[i] == 0 || (c % &m).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn projective_space() {
        let m = ChowModel::multiproj(&[2]);
        assert_eq!(m.rank(), 3);
        let r = m.int_ring();
        let h = r.linear(&[1]);
        let h2 = r.mul(&h, &h);
        assert_eq!(r.degree(&r.scale(&h2, &big(3))), big(3));
        assert!(r.is_zero(&r.mul(&h2, &h)));
    }

    #[test]
    fn product_of_lines() {
        let m = ChowModel::multiproj(&[1, 1]);
        let r = m.int_ring();
        let (h1, h2) = (r.linear(&[1, 0]), r.linear(&[0, 1]));
        assert_eq!(r.degree(&r.mul(&h1, &h2)), big(1));
        assert_eq!(r.degree(&r.add(&h1, &h2)), big(0));
        assert_eq!(m.rank_in_codim(1), 2);
    }

    #[test]
    fn hirzebruch_surface() {
        let p1 = ChowModel::multiproj(&[1]);
        let f1 = p1.proj_bundle(&[vec![0], vec![1]]).unwrap();
        assert_eq!(f1.rank(), 4);
        assert_eq!(f1.dim, 2);
        let r = f1.int_ring();
        let h = r.linear(&[1, 0]);
        let z = r.linear(&[0, 1]);
        assert_eq!(r.degree(&r.mul(&h, &z)), big(-1));
        // ξ = -ζ satisfies ξ² + hξ = 0, so deg ξ² = -deg hξ = -1.
        let xi = r.neg(&z);
        assert_eq!(r.degree(&r.mul(&xi, &xi)), big(-1));
    }

    #[test]
    fn rank_one_bundle_is_the_base() {
        let p2 = ChowModel::multiproj(&[2]);
        let m = p2.proj_bundle(&[vec![1]]).unwrap();
        assert_eq!(m.rank(), 3);
        let r = m.int_ring();
        assert_eq!(r.linear(&[0, 1]), r.linear(&[1, 0]));
    }

    #[test]
    fn inverse_of_total_chern_class() {
        let m = ChowModel::multiproj(&[3]);
        let r = m.int_ring();
        let c = r.pow(&r.add(&r.one(), &r.linear(&[1])), 4);
        let inv = r.inverse(&c).unwrap();
        assert!(r.is_one(&r.mul(&c, &inv)));
        // (1+h)^{-4}: coefficient of h³ is -20
        assert_eq!(r.degree(&inv), big(-20));
    }
}
