//! Seeded input generators shared by tests, the command line and the
//! acceptance run. Equal seeds give equal batteries on every platform.

use crate::betti_side::{ga_mul, ga_one, ga_word, y_value, F2Word, GroupAlg};
use crate::braids::p5group::{P5AlgebraElement, P5GroupElement};
use crate::braids::up5::{PbwMono, UP5Element};
use crate::dmr::{lie_basis, GDRPoint};
use crate::lin::Lin;
use crate::ncalg::{words_of_len, Series, Word};
use crate::scalar::{q, qi};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// PBW monomials of U(p5) of total degree `d`: kernel letters first.
pub fn pbw_monomials(d: usize) -> Vec<PbwMono> {
    let mut out = Vec::new();
    for a in 0..=d {
        let ks = words_of_len(3, a);
        let bs = words_of_len(2, d - a);
        for k in &ks {
            for b in &bs {
                out.push(PbwMono { kernel: k.0.clone(), base: b.clone() });
            }
        }
    }
    out
}

pub fn random_up5(rng: &mut Rng8, n: usize, max_deg: usize) -> UP5Element {
    let mut a = UP5Element::zero(n);
    for _ in 0..rng.random_range(1..=3) {
        let d = rng.random_range(0..=max_deg);
        let ms = pbw_monomials(d);
        let m = ms[rng.random_range(0..ms.len())].clone();
        let c = qi(rng.random_range(-3..=3));
        a = a.add(&UP5Element::mono(m, n).scale(&c)).expect("same truncation");
    }
    a
}

pub fn random_p5_group(rng: &mut Rng8) -> P5GroupElement {
    let mut g = P5GroupElement::one();
    for _ in 0..rng.random_range(0..=4) {
        let s: i8 = if rng.random_bool(0.5) { 1 } else { -1 };
        let h = if rng.random_bool(0.6) {
            P5GroupElement::kernel_gen(s * rng.random_range(1..=3))
        } else {
            P5GroupElement::base_word(F2Word::gen(s * rng.random_range(1..=2)))
        };
        g = g.mul(&h);
    }
    g
}

pub fn random_p5(rng: &mut Rng8) -> P5AlgebraElement {
    let mut a = Lin::new();
    for _ in 0..rng.random_range(1..=3) {
        a.add_term(random_p5_group(rng), qi(rng.random_range(-3..=3)));
    }
    a
}

fn random_f2_word(rng: &mut Rng8, max_len: usize) -> F2Word {
    let len = rng.random_range(0..=max_len);
    let mut letters = Vec::with_capacity(len);
    for _ in 0..len {
        let s: i8 = if rng.random_bool(0.5) { 1 } else { -1 };
        letters.push(s * rng.random_range(1..=2));
    }
    F2Word::reduced(&letters)
}

/// Combination of one to three group words of length ≤ `max_len`.
pub fn random_group_alg(rng: &mut Rng8, max_len: usize) -> GroupAlg {
    let mut a = Lin::new();
    for _ in 0..rng.random_range(1..=3) {
        let c = qi(rng.random_range(-3..=3));
        a.add_term(random_f2_word(rng, max_len), c);
    }
    a
}

/// Element of 𝐤1 ⊕ 𝐤F2·(X1−1).
pub fn random_wb(rng: &mut Rng8) -> GroupAlg {
    let x1m1 = ga_word(F2Word::x1(1)).sub(&ga_one());
    let mut a: GroupAlg = Lin::single(F2Word::one(), qi(rng.random_range(-2..=2)));
    for _ in 0..rng.random_range(1..=2) {
        let u = ga_word(random_f2_word(rng, 2));
        a.add_scaled(&ga_mul(&u, &x1m1), &qi(rng.random_range(-2..=2)));
    }
    a
}

/// The fixed inputs 1, X1−1, Y_1^+, Y_2^+ followed by `extra` random ones.
pub fn harmonic_battery(seed: u64, extra: usize) -> Vec<GroupAlg> {
    let mut r = rng(seed);
    let x1m1 = ga_word(F2Word::x1(1)).sub(&ga_one());
    let mut v = vec![ga_one(), x1m1, y_value(1, true), y_value(2, true)];
    v.extend((0..extra).map(|_| random_wb(&mut r)));
    v
}

/// Random Lie series with components in degrees `from..=n`.
pub fn random_lie(rng: &mut Rng8, n: usize, from: usize) -> Series {
    let mut s = Series::zero(n);
    for d in from..=n {
        for (_, b) in lie_basis(d).expect("degree within the basis table") {
            if rng.random_bool(0.5) {
                let c = q(rng.random_range(-3..=3), rng.random_range(1..=3));
                s = s.add(&b.retrunc(n).scale(&c)).expect("same truncation");
            }
        }
    }
    s
}

/// Point of G^DR with random nonzero μ and group-like part exp(random Lie).
pub fn random_point(rng: &mut Rng8, n: usize) -> GDRPoint {
    let mut mu = qi(0);
    while mu == qi(0) {
        mu = q(rng.random_range(-3..=3), rng.random_range(1..=2));
    }
    let g = random_lie(rng, n, 1).exp().expect("primitive input");
    GDRPoint::new(mu, g).expect("group-like by construction")
}

/// Random element of 𝒱^DR with words of degree ≤ `max_deg`.
pub fn random_series(rng: &mut Rng8, n: usize, max_deg: usize) -> Series {
    let mut t = Lin::new();
    for _ in 0..rng.random_range(1..=3) {
        let d = rng.random_range(0..=max_deg);
        let ws = words_of_len(2, d);
        let w: Word = ws[rng.random_range(0..ws.len())].clone();
        t.add_term(w, qi(rng.random_range(-3..=3)));
    }
    Series::from_terms(t, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn batteries_are_reproducible() {
        let a: Vec<GroupAlg> = (0..5).map({
            let mut r = rng(3);
            move |_| random_group_alg(&mut r, 5)
        }).collect();
        let b: Vec<GroupAlg> = (0..5).map({
            let mut r = rng(3);
            move |_| random_group_alg(&mut r, 5)
        }).collect();
        assert_eq!(a, b);
        assert_eq!(harmonic_battery(25, 3), harmonic_battery(25, 3));
    }

    #[test]
    fn pbw_counts() {
        // dim of degree-d part: Σ_a 3^a 2^{d-a}
        assert_eq!(pbw_monomials(2).len(), 4 + 6 + 9);
    }
}
