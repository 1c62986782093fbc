//! Exact row reduction over the rationals.

use crate::scalar::Q;
use num::{One, Zero};
use std::collections::BTreeMap;

pub type SparseVec = BTreeMap<usize, Q>;

fn axpy(dst: &mut SparseVec, s: &Q, src: &SparseVec) {
    for (k, v) in src {
        let e = dst.entry(*k).or_insert_with(Q::zero);
        *e += s * v;
        if e.is_zero() {
            dst.remove(k);
        }
    }
}

/// Fully reduced echelon basis of a subspace; the pivot of a row is its
/// largest index, so normal forms are expressed in small indices.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.rows.contains_key(&i)
    }

    /// Remainder of `v` modulo the span; supported on non-pivot indices.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        loop {
            let hit = v.keys().rev().find(|k| self.rows.contains_key(k)).copied();
            match hit {
                None => return v,
                Some(p) => {
                    let c = -v[&p].clone();
                    axpy(&mut v, &c, &self.rows[&p]);
                }
            }
        }
    }

    /// Adds `v` to the span; returns false if it was already inside.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((&p, lead)) = r.iter().next_back() else {
            return false;
        };
        let inv = Q::one() / lead;
        let r: SparseVec = r.iter().map(|(k, x)| (*k, x * &inv)).collect();
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&p).cloned() {
                axpy(row, &-c, &r);
            }
        }
        self.rows.insert(p, r);
        true
    }
}

/// Solves `A x = b` exactly. Pivots are taken left to right; every free
/// coordinate `j` is set to `free(j)`. Returns `None` if inconsistent.
pub fn solve_affine(
    eqs: &[(Vec<Q>, Q)],
    nvars: usize,
    free: impl Fn(usize) -> Q,
) -> Option<(Vec<Q>, Vec<usize>)> {
    let mut m: Vec<Vec<Q>> = eqs
        .iter()
        .map(|(a, b)| {
            let mut r = a.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..nvars {
        let Some(pr) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let inv = Q::one() / &m[row][col];
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..=nvars {
                    let t = &f * &m[row][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[nvars].is_zero()) {
        return None;
    }
    let free_cols: Vec<usize> = (0..nvars).filter(|c| !pivots.contains(c)).collect();
    let mut x = vec![Q::zero(); nvars];
    for &c in &free_cols {
        x[c] = free(c);
    }
    for (r, &pc) in pivots.iter().enumerate() {
        let mut v = m[r][nvars].clone();
        for &c in &free_cols {
            v -= &m[r][c] * &x[c];
        }
        x[pc] = v;
    }
    Some((x, free_cols))
}
