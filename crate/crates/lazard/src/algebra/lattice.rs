//! Integer lattices in ℤⁿ via row-style Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct IntegerLattice {
    pub dim: usize,
    pub generators: Vec<Vec<BigInt>>,
    /// Rows in echelon form with positive pivots; entries above each pivot
    /// are reduced into `[0, pivot)`.
    pub hnf: Vec<Vec<BigInt>>,
}

fn pivot_col(row: &[BigInt]) -> Option<usize> {
    row.iter().position(|c| !c.is_zero())
}

fn axpy(target: &mut [BigInt], k: &BigInt, row: &[BigInt]) {
    if k.is_zero() {
        return;
    }
    for (t, r) in target.iter_mut().zip(row) {
        *t -= k * r;
    }
}

/// Hermite normal form of the row span of `rows`.
pub fn hermite_normal_form(rows: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let mut work: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|c| !c.is_zero())).cloned().collect();
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    for col in 0..dim {
        let mut active: Vec<Vec<BigInt>> = Vec::new();
        let mut rest = Vec::new();
        for r in work.drain(..) {
            if r[col].is_zero() {
                rest.push(r);
            } else {
                active.push(r);
            }
        }
        // Euclid on the column until a single row carries it.
        while active.len() > 1 {
            let (imin, _) = active.iter().enumerate().min_by_key(|(_, r)| r[col].abs()).unwrap();
            let p = active.swap_remove(imin);
            let mut next = Vec::new();
            for mut r in active.drain(..) {
                let q = r[col].div_floor(&p[col]);
                axpy(&mut r, &q, &p);
                if r[col].is_zero() {
                    if r.iter().any(|c| !c.is_zero()) {
                        rest.push(r);
                    }
                } else {
                    next.push(r);
                }
            }
            next.push(p);
            active = next;
        }
        if let Some(mut p) = active.pop() {
            if p[col].is_negative() {
                p.iter_mut().for_each(|c| *c = -c.clone());
            }
            for r in out.iter_mut() {
                let q = r[col].div_floor(&p[col]);
                axpy(r, &q, &p);
            }
            out.push(p);
        }
        work = rest;
    }
    out
}

impl IntegerLattice {
    pub fn new(generators: Vec<Vec<BigInt>>, dim: usize) -> Self {
        assert!(generators.iter().all(|g| g.len() == dim), "generator length mismatch");
        let hnf = hermite_normal_form(&generators, dim);
        IntegerLattice { dim, generators, hnf }
    }

    pub fn rank(&self) -> usize {
        self.hnf.len()
    }

    /// Reduces `v` against the basis; `v` is a member iff the remainder is 0.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut r = v.to_vec();
        for row in &self.hnf {
            let c = pivot_col(row).unwrap();
            let q = r[c].div_floor(&row[c]);
            axpy(&mut r, &q, row);
        }
        r
    }

    pub fn member(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.dim);
        self.reduce(v).iter().all(|c| c.is_zero())
    }

    /// Membership in `span + m·ℤⁿ`.
    pub fn member_mod(&self, v: &[BigInt], m: &BigInt) -> bool {
        if m.is_zero() {
            return self.member(v);
        }
        let mut gens = self.hnf.clone();
        for i in 0..self.dim {
            let mut e = vec![BigInt::zero(); self.dim];
            e[i] = m.clone();
            gens.push(e);
        }
        IntegerLattice::new(gens, self.dim).member(v)
    }

    /// Membership in `m·span` (for `m > 0`).
    pub fn member_scaled(&self, v: &[BigInt], m: &BigInt) -> bool {
        if m.is_zero() {
            return v.iter().all(|c| c.is_zero());
        }
        if v.iter().any(|c| !c.is_multiple_of(m)) {
            return false;
        }
        let w: Vec<BigInt> = v.iter().map(|c| c / m).collect();
        self.member(&w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn membership_examples() {
        let l = IntegerLattice::new(vec![v(&[2, 0]), v(&[0, 2])], 2);
        assert!(!l.member(&v(&[1, 0])));
        let l = IntegerLattice::new(vec![v(&[2, 0]), v(&[1, 1])], 2);
        assert!(l.member(&v(&[0, 2])));
        assert!(!l.member(&v(&[0, 1])));
        let l = IntegerLattice::new(vec![], 2);
        assert!(l.member(&v(&[0, 0])));
        assert_eq!(l.rank(), 0);
    }

    #[test]
    fn hnf_shape() {
        let l = IntegerLattice::new(vec![v(&[4, 6, 2]), v(&[6, 9, 3]), v(&[0, 1, 5])], 3);
        assert_eq!(l.hnf, vec![v(&[2, 0, -14]), v(&[0, 1, 5])]);
        for g in &l.generators {
            assert!(l.member(g));
        }
        for row in &l.hnf {
            assert!(IntegerLattice::new(l.generators.clone(), 3).member(row));
        }
    }

    #[test]
    fn modular_and_scaled() {
        let l = IntegerLattice::new(vec![v(&[2, 0])], 2);
        assert!(l.member_mod(&v(&[1, 3]), &BigInt::from(1)));
        assert!(!l.member_mod(&v(&[1, 0]), &BigInt::from(2)));
        assert!(l.member_mod(&v(&[4, 2]), &BigInt::from(2)));
        assert!(l.member_scaled(&v(&[4, 0]), &BigInt::from(2)));
        assert!(!l.member_scaled(&v(&[2, 0]), &BigInt::from(2)));
    }
}
