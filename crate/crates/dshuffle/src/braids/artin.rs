//! Artin action of B5 on F5 and decomposition of braids in the kernel of
//! forgetting the last strand.

use crate::betti_side::F2Word;
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Braid word in σ_1…σ_{n−1}: entry ±i stands for σ_i^{±1}.
pub type ArtinBraidWord = Vec<i8>;

/// Automorphism of F_n given by the images of the generators 1..=n.
pub type FreeAut = BTreeMap<i8, F2Word>;

pub fn apply(aut: &FreeAut, w: &F2Word) -> F2Word {
    let mut r = F2Word::one();
    for &l in &w.0 {
        let img = aut.get(&l.abs()).cloned().unwrap_or_else(|| F2Word::gen(l.abs()));
        r = r.mul(&if l > 0 { img } else { img.inv() });
    }
    r
}

fn identity(n: i8) -> FreeAut {
    (1..=n).map(|i| (i, F2Word::gen(i))).collect()
}

fn sigma(i: i8, positive: bool) -> FreeAut {
    let mut a = FreeAut::new();
    if positive {
        a.insert(i, F2Word::reduced(&[i, i + 1, -i]));
        a.insert(i + 1, F2Word::gen(i));
    } else {
        a.insert(i, F2Word::gen(i + 1));
        a.insert(i + 1, F2Word::reduced(&[-(i + 1), i, i + 1]));
    }
    a
}

/// Artin automorphism of a braid word on `n` strands.
pub fn braid_aut(word: &[i8], n: i8) -> FreeAut {
    let mut a = identity(n);
    for &s in word {
        let b = sigma(s.abs(), s > 0);
        a = (1..=n).map(|i| (i, apply(&a, b.get(&i).unwrap_or(&F2Word::gen(i))))).collect();
    }
    a
}

/// x_{ij} = σ_{j−1}⋯σ_{i+1} σ_i² σ_{i+1}^{-1}⋯σ_{j−1}^{-1}.
pub fn pure_generator(i: i8, j: i8) -> ArtinBraidWord {
    let left: Vec<i8> = ((i + 1)..j).rev().collect();
    let mut w = left.clone();
    w.extend([i, i]);
    w.extend(left.iter().rev().map(|k| -k));
    w
}

pub fn braid_inv(w: &[i8]) -> ArtinBraidWord {
    w.iter().rev().map(|s| -s).collect()
}

/// Writes a braid that becomes trivial after forgetting strand `n` as a word
/// in x_{1n},…,x_{n−1,n}; entries are ±j for x_{jn}^{±1}.
pub fn decompose_kernel(braid: &[i8], n: i8) -> Result<Vec<i8>> {
    let a = braid_aut(braid, n);
    let img = &a[&n];
    let len = img.len();
    if len % 2 == 0 || img.0[len / 2] != n {
        return Err(Error::Internal("braid does not fix the last strand".into()));
    }
    let c: Vec<i8> = img.0[..len / 2].iter().copied().filter(|l| l.abs() != n).collect();
    let cbar = F2Word::reduced(&c);
    // x_i = P_i g_i P_i^{-1} with P_i = x_{i+1}⋯x_{n−1} in the g-letters
    let mut xs: BTreeMap<i8, F2Word> = BTreeMap::new();
    for i in (1..n).rev() {
        let mut p = F2Word::one();
        for k in (i + 1)..n {
            p = p.mul(&xs[&k]);
        }
        xs.insert(i, p.mul(&F2Word::gen(i)).mul(&p.inv()));
    }
    let mut gw = F2Word::one();
    for &l in &cbar.0 {
        let x = &xs[&l.abs()];
        gw = gw.mul(&if l > 0 { x.clone() } else { x.inv() });
    }
    let res: Vec<i8> = gw.0.iter().rev().copied().collect();
    let mut w = Vec::new();
    for &l in &res {
        let g = pure_generator(l.abs(), n);
        w.extend(if l > 0 { g } else { braid_inv(&g) });
    }
    if braid_aut(&w, n) != a {
        return Err(Error::Internal("kernel decomposition failed".into()));
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braid_relation_holds() {
        let l = braid_aut(&[1, 2, 1], 5);
        let r = braid_aut(&[2, 1, 2], 5);
        assert_eq!(l, r);
        assert_eq!(braid_aut(&[1, 3], 5), braid_aut(&[3, 1], 5));
        assert_eq!(braid_aut(&[2, -2], 5), identity(5));
    }

    #[test]
    fn kernel_generators_decompose_to_themselves() {
        for j in 1..5 {
            assert_eq!(decompose_kernel(&pure_generator(j, 5), 5).unwrap(), vec![j]);
        }
        assert!(decompose_kernel(&[1], 5).is_err());
    }
}
