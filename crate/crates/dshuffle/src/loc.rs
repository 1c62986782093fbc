//! Free-product normal forms for the two localizations.
//!
//! A localized algebra here is a free product `A ∗ B` of two commutative
//! algebras, each with a chosen basis of the complement of the scalars.
//! Normal-form words alternate between the two sides.

use crate::lin::Lin;
use crate::scalar::{Coeff, Q};
use std::fmt::Debug;

pub trait Factor: Clone + Ord + Debug {
    /// Which free factor this basis element belongs to (0 or 1).
    fn side(&self) -> u8;
    /// Product of two basis elements of the same side; `None` is the unit.
    fn mul(&self, o: &Self) -> Lin<Option<Self>, Q>;
    /// Image of a trailing side-0 factor in the module quotient: `Some(c)`
    /// means the factor is replaced by the scalar `c`.
    fn module_tail(&self) -> Q;
}

pub type LocWord<F> = Vec<F>;

pub fn word_mul<F: Factor>(a: &[F], b: &[F]) -> Lin<LocWord<F>, Q> {
    if a.is_empty() || b.is_empty() {
        let mut w = a.to_vec();
        w.extend_from_slice(b);
        return Lin::single(w, Q::one());
    }
    let (x, y) = (&a[a.len() - 1], &b[0]);
    if x.side() != y.side() {
        let mut w = a.to_vec();
        w.extend_from_slice(b);
        return Lin::single(w, Q::one());
    }
    let mut r = Lin::new();
    for (p, c) in x.mul(y).iter() {
        match p {
            Some(f) => {
                let mut w = a[..a.len() - 1].to_vec();
                w.push(f.clone());
                w.extend_from_slice(&b[1..]);
                r.add_term(w, c.clone());
            }
            None => r.add_scaled(&word_mul(&a[..a.len() - 1], &b[1..]), c),
        }
    }
    r
}

pub fn lin_mul<F: Factor>(a: &Lin<LocWord<F>>, b: &Lin<LocWord<F>>) -> Lin<LocWord<F>> {
    let mut r = Lin::new();
    for (u, x) in a.iter() {
        for (v, y) in b.iter() {
            r.add_scaled(&word_mul(u, v), &x.mul(y));
        }
    }
    r
}

pub type LocTensor<F> = Lin<(LocWord<F>, LocWord<F>)>;

pub fn tensor_mul<F: Factor>(a: &LocTensor<F>, b: &LocTensor<F>) -> LocTensor<F> {
    let mut r = Lin::new();
    for ((u1, v1), x) in a.iter() {
        for ((u2, v2), y) in b.iter() {
            let l = word_mul(u1, u2);
            let rr = word_mul(v1, v2);
            let xy = x.mul(y);
            for (p, c) in l.iter() {
                for (q, d) in rr.iter() {
                    r.add_term((p.clone(), q.clone()), c.mul(d).mul(&xy));
                }
            }
        }
    }
    r
}

pub fn tensor_of<F: Factor>(a: &Lin<LocWord<F>>, b: &Lin<LocWord<F>>) -> LocTensor<F> {
    let mut r = Lin::new();
    for (u, x) in a.iter() {
        for (v, y) in b.iter() {
            r.add_term((u.clone(), v.clone()), x.mul(y));
        }
    }
    r
}

/// Class of a word in the module quotient by the right ideal generated by
/// (side-0 generator − tail scalar).
pub fn module_class<F: Factor>(w: &[F]) -> Lin<LocWord<F>> {
    match w.last() {
        Some(f) if f.side() == 0 => {
            let c = f.module_tail();
            let mut r = Lin::new();
            r.add_scaled(&module_class(&w[..w.len() - 1]), &c);
            r
        }
        _ => Lin::single(w.to_vec(), Q::one()),
    }
}

pub fn module_class_tensor<F: Factor>(t: &LocTensor<F>) -> LocTensor<F> {
    let mut r = Lin::new();
    for ((u, v), x) in t.iter() {
        let a = module_class(u);
        let b = module_class(v);
        r.add_scaled(&tensor_of(&a, &b), x);
    }
    r
}

/// row · M · col for a 1×3 row, a 3×3 matrix and a 3×1 column.
pub fn sandwich<F: Factor>(
    row: &[LocTensor<F>; 3],
    m: &[[LocTensor<F>; 3]; 3],
    col: &[LocTensor<F>; 3],
) -> LocTensor<F> {
    let mut r = Lin::new();
    for (j, rj) in row.iter().enumerate() {
        if rj.is_zero() {
            continue;
        }
        for (k, ck) in col.iter().enumerate() {
            if ck.is_zero() || m[j][k].is_zero() {
                continue;
            }
            r.add_assign(&tensor_mul(&tensor_mul(rj, &m[j][k]), ck));
        }
    }
    r
}
