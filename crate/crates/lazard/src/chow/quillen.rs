//! Pushforwards of powers of the twisted hyperplane class along projective
//! bundles, by the residue formula and by direct computation on the bundle
//! model.

use super::model::{ChowModel, LinearForm};
use crate::algebra::{BElem, BRing, Integers, LaurentRing, Ring, SeriesRing};
use crate::error::{Error, Result};
use crate::symmfunc::{chern_class, tangent_bundle, total_p, total_p_deformed, VirtualSplitBundle};
use num_bigint::BigInt;

/// Residue data for `p: ℙ(V) → S → pt`.
///
/// Stores `Φ_i(y) = deg(c_i(−V)·P(−V{y})·P(−T_S))` for `0 ≤ i ≤ dim S`, from
/// which `⟦ξ̃^m⟧ = Σ_i Res_y y^{−r−i} (exp y)^m Φ_i(y)` for every `m`.
#[derive(Clone, Debug)]
pub struct QuillenData {
    pub rank: u32,
    pub base_dim: u32,
    series: SeriesRing<BRing<Integers>>,
    phi: Vec<Vec<BElem<BigInt>>>,
}

impl QuillenData {
    pub fn new(base: &ChowModel, v: &VirtualSplitBundle) -> Result<QuillenData> {
        v.check(base)?;
        let r = v.rank();
        if r <= 0 {
            return Err(Error::InvalidArgument(format!("bundle rank must be positive, got {}", r)));
        }
        let r = r as u32;
        let n = base.dim + r - 1;
        let b = BRing::with_cap(Integers, n);
        let cr = base.ring(b.clone());
        let minus_v = v.negate();
        let (sr, pdef) = total_p_deformed(&cr, &minus_v, &tangent_bundle(base).negate(), n + 1);
        let coeffs = sr.coeffs(&pdef);
        let ir = base.int_ring();
        let mut phi = Vec::new();
        for i in 0..=base.dim {
            let ci = chern_class(&ir, &minus_v, i);
            let ci_b: Vec<BElem<BigInt>> = ci.iter().map(|c| b.constant(c.clone())).collect();
            phi.push(coeffs.iter().map(|c| cr.degree(&cr.mul(&ci_b, c))).collect());
        }
        let series = SeriesRing::univariate(b, "y", n + 1);
        Ok(QuillenData { rank: r, base_dim: base.dim, series, phi })
    }

    /// Dimension of the total space.
    pub fn dim(&self) -> u32 {
        self.base_dim + self.rank - 1
    }

    /// `⟦ξ̃^m⟧`, homogeneous of degree `m − dim ℙ(V)`.
    pub fn pushforward(&self, m: u32) -> BElem<BigInt> {
        let b = &self.series.base;
        let n = self.dim();
        if m > n {
            return b.zero();
        }
        let exp = self.series.from_coeffs(exp_coeffs(b, n + 1));
        let exp_m = self.series.pow(&exp, m);
        let lr = LaurentRing::new(b.clone(), n + 1);
        let mut acc = b.zero();
        for (i, phi) in self.phi.iter().enumerate() {
            let f = self.series.mul(&exp_m, &self.series.from_coeffs(phi.clone()));
            let shift = -(self.rank as i64) - i as i64;
            let laurent = lr.from_shifted(&self.series.coeffs(&f), shift);
            acc = b.add(&acc, &lr.residue(&laurent));
        }
        acc
    }
}

/// `exp(x) = Σ b_i x^{i+1}` up to `x^top`.
pub fn exp_coeffs<S: Ring>(b: &BRing<S>, top: u32) -> Vec<BElem<S::Elem>> {
    (0..=top).map(|k| if k == 0 { b.zero() } else if k == 1 { b.one() } else { b.b(k - 1) }).collect()
}

/// `⟦ξ̃^m⟧` for `ℙ(V) → S`, by the residue formula.
pub fn quillen_pushforward(base: &ChowModel, v: &VirtualSplitBundle, m: u32) -> Result<BElem<BigInt>> {
    Ok(QuillenData::new(base, v)?.pushforward(m))
}

/// `deg(exp(ξ)^m · P(−T_{ℙ(V)}))` computed on the model of `ℙ(V)`, with
/// `ξ = c₁(O(1)) = −ζ`. Only honest split bundles have such a model.
pub fn twisted_pushforward_direct(base: &ChowModel, lines: &[LinearForm], m: u32) -> Result<BElem<BigInt>> {
    let total = base.proj_bundle(lines)?;
    Ok(twisted_pushforwards(&total, m).pop().unwrap())
}

/// `deg(exp(ξ)^m · P(−T))` for `m = 0..=max_m`, where `ξ = −ζ` for the last
/// bundle layer of `total`.
pub fn twisted_pushforwards(total: &ChowModel, max_m: u32) -> Vec<BElem<BigInt>> {
    let b = BRing::with_cap(Integers, total.dim);
    let cr = total.ring(b.clone());
    let mut xi_form = vec![0; total.ngens()];
    xi_form[total.zeta_gen(total.layers.len() - 1)] = -1;
    let xi = cr.linear(&xi_form);
    let exp_xi = cr.eval_poly(&exp_coeffs(&b, total.dim + 1), &xi);
    let mut acc = total_p(&cr, &tangent_bundle(total).negate());
    let mut out = Vec::new();
    for _ in 0..=max_m {
        out.push(cr.degree(&acc));
        acc = cr.mul(&acc, &exp_xi);
    }
    out
}
