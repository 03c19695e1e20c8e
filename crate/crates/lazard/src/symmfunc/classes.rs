//! Split virtual bundles on catalog models and their multiplicative classes.

use super::qpoly::{eval_epoly, q_alpha};
use crate::algebra::{BElem, BRing, Integers, Partition, Ring, SeriesRing, TruncatedSeries};
use crate::chow::{ChowModel, ChowRing, LinearForm};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use std::collections::BTreeMap;

/// `Σ L_i + p·1 − Σ M_j − q·1` with each line given by its first Chern class.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VirtualSplitBundle {
    pub plus_lines: Vec<LinearForm>,
    pub minus_lines: Vec<LinearForm>,
    pub plus_trivial: u32,
    pub minus_trivial: u32,
}

impl VirtualSplitBundle {
    pub fn trivial(rank: u32) -> Self {
        VirtualSplitBundle { plus_trivial: rank, ..Default::default() }
    }

    pub fn from_lines(lines: Vec<LinearForm>) -> Self {
        VirtualSplitBundle { plus_lines: lines, ..Default::default() }
    }

    /// Lines plus a trivial part of signed rank `trivial`.
    pub fn with_trivial(lines: Vec<LinearForm>, trivial: i64) -> Self {
        let (p, q) = if trivial >= 0 { (trivial as u32, 0) } else { (0, (-trivial) as u32) };
        VirtualSplitBundle { plus_lines: lines, minus_lines: vec![], plus_trivial: p, minus_trivial: q }
    }

    pub fn rank(&self) -> i64 {
        self.plus_lines.len() as i64 + self.plus_trivial as i64 - self.minus_lines.len() as i64 - self.minus_trivial as i64
    }

    /// Net signed trivial rank.
    pub fn trivial_rank(&self) -> i64 {
        self.plus_trivial as i64 - self.minus_trivial as i64
    }

    /// No negative lines and a nonnegative trivial part: an honest bundle.
    pub fn is_honest(&self) -> bool {
        self.minus_lines.is_empty() && self.trivial_rank() >= 0
    }

    pub fn negate(&self) -> Self {
        VirtualSplitBundle {
            plus_lines: self.minus_lines.clone(),
            minus_lines: self.plus_lines.clone(),
            plus_trivial: self.minus_trivial,
            minus_trivial: self.plus_trivial,
        }
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.plus_lines.extend(other.plus_lines.iter().cloned());
        s.minus_lines.extend(other.minus_lines.iter().cloned());
        s.plus_trivial += other.plus_trivial;
        s.minus_trivial += other.minus_trivial;
        s
    }

    /// Net trivial parts cancelled.
    pub fn normalized(&self) -> Self {
        let t = self.trivial_rank();
        let mut s = self.clone();
        s.plus_trivial = t.max(0) as u32;
        s.minus_trivial = (-t).max(0) as u32;
        s
    }

    pub fn check(&self, model: &ChowModel) -> Result<()> {
        let n = model.ngens();
        if self.plus_lines.iter().chain(&self.minus_lines).any(|l| l.len() != n) {
            return Err(Error::InvalidSpec(format!("bundle lines must have {} coefficients", n)));
        }
        Ok(())
    }

    /// Lines with multiplicities, signed.
    fn grouped(&self) -> Vec<(LinearForm, i64)> {
        let mut m: BTreeMap<LinearForm, i64> = BTreeMap::new();
        for l in &self.plus_lines {
            *m.entry(l.clone()).or_insert(0) += 1;
        }
        for l in &self.minus_lines {
            *m.entry(l.clone()).or_insert(0) -= 1;
        }
        m.into_iter().filter(|(l, k)| *k != 0 && l.iter().any(|&c| c != 0)).collect()
    }
}

/// The tangent bundle: `(n+1)·O(h) − 1` per projective factor and
/// `(p*V)(1) − 1` per bundle layer, where `c₁((p*L)(1)) = ℓ − ζ`.
pub fn tangent_bundle(model: &ChowModel) -> VirtualSplitBundle {
    let n = model.ngens();
    let mut t = VirtualSplitBundle::default();
    for (i, &d) in model.proj_dims.iter().enumerate() {
        let mut h = vec![0; n];
        h[i] = 1;
        for _ in 0..=d {
            t.plus_lines.push(h.clone());
        }
        t.minus_trivial += 1;
    }
    for (j, layer) in model.layers.iter().enumerate() {
        let z = model.zeta_gen(j);
        for l in &layer.lines {
            let mut f = l.clone();
            f[z] -= 1;
            t.plus_lines.push(f);
        }
        t.minus_trivial += 1;
    }
    t
}

/// `π(x) = Σ b_i x^i` as a univariate series.
pub fn pi_series<S: Ring>(b: &BRing<S>, order: u32) -> (SeriesRing<BRing<S>>, TruncatedSeries<BElem<S::Elem>>) {
    let u = SeriesRing::univariate(b.clone(), "x", order);
    let coeffs = (0..order).map(|i| if i == 0 { b.one() } else { b.b(i) }).collect();
    let pi = u.from_coeffs(coeffs);
    (u, pi)
}

fn pi_coeffs<S: Ring>(b: &BRing<S>, n: u32) -> Vec<BElem<S::Elem>> {
    (0..=n).map(|i| if i == 0 { b.one() } else { b.b(i) }).collect()
}

/// `P(E) = Π π(c₁(L))^{±1}`.
pub fn total_p<S: Ring>(cr: &ChowRing<'_, BRing<S>>, e: &VirtualSplitBundle) -> Vec<BElem<S::Elem>> {
    let coeffs = pi_coeffs(&cr.base, cr.model.dim);
    let mut acc = cr.one();
    for (l, k) in e.grouped() {
        let p = cr.eval_poly(&coeffs, &cr.linear(&l));
        let f = if k > 0 { p } else { cr.inverse(&p).expect("π(ℓ) is a unit") };
        acc = cr.mul(&acc, &cr.pow(&f, k.unsigned_abs() as u32));
    }
    acc
}

/// `P(E{y} + F)` as a series in `y` of the given order.
pub fn total_p_deformed<'m, S: Ring>(
    cr: &ChowRing<'m, BRing<S>>,
    ey: &VirtualSplitBundle,
    f: &VirtualSplitBundle,
    order: u32,
) -> (SeriesRing<ChowRing<'m, BRing<S>>>, TruncatedSeries<Vec<BElem<S::Elem>>>) {
    let sr = SeriesRing::univariate(cr.clone(), "y", order);
    let x_order = order + cr.model.dim + 1;
    let (u, pi) = pi_series(&cr.base, x_order);
    let pi_inv = u.inverse(&pi).expect("π has constant term 1");
    let embed = |c: &BElem<S::Elem>| sr.constant(cr.constant(c.clone()));
    let y = sr.var(0);
    let mut acc = sr.constant(total_p(cr, f));
    let t = ey.trivial_rank();
    if t != 0 {
        let base = if t > 0 { &pi } else { &pi_inv };
        let p = u.substitute(base, &sr, &[y.clone()], embed);
        acc = sr.mul(&acc, &sr.pow(&p, t.unsigned_abs() as u32));
    }
    let mut lines: BTreeMap<LinearForm, i64> = BTreeMap::new();
    for l in &ey.plus_lines {
        *lines.entry(l.clone()).or_insert(0) += 1;
    }
    for l in &ey.minus_lines {
        *lines.entry(l.clone()).or_insert(0) -= 1;
    }
    for (l, k) in lines {
        if k == 0 {
            continue;
        }
        let shifted = sr.add(&sr.constant(cr.linear(&l)), &y);
        let base = if k > 0 { &pi } else { &pi_inv };
        let p = u.substitute(base, &sr, &[shifted], embed);
        acc = sr.mul(&acc, &sr.pow(&p, k.unsigned_abs() as u32));
    }
    (sr, acc)
}

/// The total Chern class `Π (1 + c₁(L))^{±1}`.
pub fn chern_total(cr: &ChowRing<'_, Integers>, e: &VirtualSplitBundle) -> Vec<BigInt> {
    let mut acc = cr.one();
    for (l, k) in e.grouped() {
        let f = cr.add(&cr.one(), &cr.linear(&l));
        let f = if k > 0 { f } else { cr.inverse(&f).expect("1 + nilpotent is a unit") };
        acc = cr.mul(&acc, &cr.pow(&f, k.unsigned_abs() as u32));
    }
    acc
}

pub fn chern_class(cr: &ChowRing<'_, Integers>, e: &VirtualSplitBundle, i: u32) -> Vec<BigInt> {
    cr.codim_part(&chern_total(cr, e), i)
}

/// `c_{(k)}(E) = Σ ± c₁(L)^k` for `k > 0`, and `1` for `k = 0`.
pub fn power_sum_class(cr: &ChowRing<'_, Integers>, e: &VirtualSplitBundle, k: u32) -> Vec<BigInt> {
    if k == 0 {
        return cr.one();
    }
    let mut acc = cr.zero();
    for (l, m) in e.grouped() {
        let p = cr.pow(&cr.linear(&l), k);
        acc = cr.add(&acc, &cr.scale(&p, &BigInt::from(m)));
    }
    acc
}

/// The `b_α` coefficient of a class over `ℤ[b]`.
pub fn b_coefficient(a: &[BElem<BigInt>], alpha: &Partition) -> Vec<BigInt> {
    a.iter().map(|x| x.get(alpha).cloned().unwrap_or_default()).collect()
}

/// The Conner–Floyd class `c_α(E)`, read off `P(E)`.
pub fn cf_class(model: &ChowModel, e: &VirtualSplitBundle, alpha: &Partition) -> Vec<BigInt> {
    let cr = model.ring(BRing::with_cap(Integers, alpha.weight()));
    b_coefficient(&total_p(&cr, e), alpha)
}

/// `Q_α(c₁(E), c₂(E), …)`.
pub fn cf_class_via_q(model: &ChowModel, e: &VirtualSplitBundle, alpha: &Partition) -> Vec<BigInt> {
    let cr = model.int_ring();
    let total = chern_total(&cr, e);
    let cs: Vec<Vec<BigInt>> = (1..=alpha.weight()).map(|i| cr.codim_part(&total, i)).collect();
    eval_epoly(&cr, &q_alpha(alpha), &cs)
}
