//! P5* as F3 ⋊ F2: kernel ⟨x15, x25, x35⟩, base ⟨x23, x12⟩ = ℓ̲(F2).

use super::artin::{braid_inv, decompose_kernel, pure_generator};
use crate::betti_side::{F2Word, GroupAlg, GroupTensor};
use crate::error::{Error, Result};
use crate::lin::Lin;
use crate::scalar::{qi, Coeff, Q};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

/// Strand pair of each base letter: X0 = x23, X1 = x12.
pub const BASE_PAIRS: [(i8, i8); 2] = [(2, 3), (1, 2)];

/// Conjugation action of base letters (±1, ±2) on kernel generators x_{i5}.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaTable {
    pub images: BTreeMap<i8, [F2Word; 3]>,
}

impl AlphaTable {
    /// Derived through the Artin representation of B5.
    pub fn derive() -> Result<Self> {
        let mut images = BTreeMap::new();
        for (b, &(i, j)) in BASE_PAIRS.iter().enumerate() {
            let letter = b as i8 + 1;
            for sign in [1i8, -1] {
                let g = pure_generator(i, j);
                let vb = if sign > 0 { g } else { braid_inv(&g) };
                let mut row: Vec<F2Word> = Vec::new();
                for k in 1..=3 {
                    let mut w = vb.clone();
                    w.extend(pure_generator(k, 5));
                    w.extend(braid_inv(&vb));
                    let dec = decompose_kernel(&w, 5)?;
                    row.push(eliminate_x45(&dec));
                }
                images.insert(letter * sign, [row[0].clone(), row[1].clone(), row[2].clone()]);
            }
        }
        Ok(AlphaTable { images })
    }

    pub fn apply_letter(&self, b: i8, w: &F2Word) -> F2Word {
        let imgs = &self.images[&b];
        let mut r = F2Word::one();
        for &l in &w.0 {
            let img = &imgs[(l.abs() - 1) as usize];
            r = r.mul(&if l > 0 { img.clone() } else { img.inv() });
        }
        r
    }

    /// α_v(w) for a base word v.
    pub fn apply(&self, v: &F2Word, w: &F2Word) -> F2Word {
        let mut w = w.clone();
        for &b in v.0.iter().rev() {
            w = self.apply_letter(b, &w);
        }
        w
    }
}

/// x45 = (x15 x25 x35)^{-1} in P5*.
fn eliminate_x45(dec: &[i8]) -> F2Word {
    let x45 = F2Word::reduced(&[-3, -2, -1]);
    let mut r = F2Word::one();
    for &l in dec {
        let g = if l.abs() == 4 { x45.clone() } else { F2Word::gen(l.abs()) };
        r = r.mul(&if l > 0 { g } else { g.inv() });
    }
    r
}

pub fn alpha_table() -> &'static AlphaTable {
    static T: OnceLock<AlphaTable> = OnceLock::new();
    T.get_or_init(|| AlphaTable::derive().expect("Artin decomposition"))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct P5GroupElement {
    pub kernel: F2Word,
    pub base: F2Word,
}

impl P5GroupElement {
    pub fn one() -> Self {
        Self::default()
    }
    pub fn kernel_gen(i: i8) -> Self {
        P5GroupElement { kernel: F2Word::gen(i), base: F2Word::one() }
    }
    pub fn base_word(v: F2Word) -> Self {
        P5GroupElement { kernel: F2Word::one(), base: v }
    }
    pub fn mul(&self, o: &Self) -> Self {
        let t = alpha_table();
        P5GroupElement {
            kernel: self.kernel.mul(&t.apply(&self.base, &o.kernel)),
            base: self.base.mul(&o.base),
        }
    }
    pub fn inv(&self) -> Self {
        let vi = self.base.inv();
        P5GroupElement { kernel: alpha_table().apply(&vi, &self.kernel.inv()), base: vi }
    }
}

impl fmt::Display for P5GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .kernel
            .blocks()
            .iter()
            .map(|&(g, e)| if e == 1 { format!("x{}5", g) } else { format!("x{}5^{}", g, e) })
            .collect();
        if !self.base.is_empty() {
            parts.push(format!("l({})", self.base));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

pub type P5AlgebraElement = Lin<P5GroupElement>;

pub fn p5_alg_mul(a: &P5AlgebraElement, b: &P5AlgebraElement) -> P5AlgebraElement {
    let mut r = Lin::new();
    for (g, x) in a.iter() {
        for (h, y) in b.iter() {
            r.add_term(g.mul(h), x.mul(y));
        }
    }
    r
}

pub fn p5_single(g: P5GroupElement) -> P5AlgebraElement {
    Lin::single(g, qi(1))
}

/// ℓ̲: X0 ↦ x23, X1 ↦ x12 (the base section).
pub fn ell_b(a: &GroupAlg) -> P5AlgebraElement {
    a.iter().map(|(w, c)| (P5GroupElement::base_word(w.clone()), c.clone())).collect()
}

/// Quotient K4 → F2 used after erasing a strand.
fn f4_image(i: i8, j: i8) -> F2Word {
    match (i, j) {
        (1, 2) | (3, 4) => F2Word::gen(2),
        (2, 3) | (1, 4) => F2Word::gen(1),
        (1, 3) => F2Word::reduced(&[-2, -1]),
        (2, 4) => F2Word::reduced(&[-1, -2]),
        _ => unreachable!("pair outside 1..=4"),
    }
}

/// Relabeling automorphism of F2 applied after erasing strand `i`.
fn theta(i: u8, w: &F2Word) -> F2Word {
    let img = |l: i8| -> F2Word {
        match (i, l) {
            (1, 1) => F2Word::gen(2),
            (1, 2) => F2Word::gen(1),
            (2, 1) => F2Word::gen(2),
            (2, 2) => F2Word::reduced(&[-2, -1]),
            (_, l) => F2Word::gen(l),
        }
    };
    let mut r = F2Word::one();
    for &l in &w.0 {
        let g = img(l.abs());
        r = r.mul(&if l > 0 { g } else { g.inv() });
    }
    r
}

fn erase_pair(i: i8, (a, b): (i8, i8)) -> F2Word {
    if a == i || b == i {
        return F2Word::one();
    }
    let rl = |x: i8| if x > i { x - 1 } else { x };
    f4_image(rl(a), rl(b))
}

/// pr̲_i on a group element, for i ∈ {1, 2, 5}.
pub fn pr_b_group(i: u8, g: &P5GroupElement) -> F2Word {
    let ii = i as i8;
    let mut r = F2Word::one();
    for &l in &g.kernel.0 {
        let img = erase_pair(ii, (l.abs(), 5));
        r = r.mul(&if l > 0 { img } else { img.inv() });
    }
    for &l in &g.base.0 {
        let img = erase_pair(ii, BASE_PAIRS[(l.abs() - 1) as usize]);
        r = r.mul(&if l > 0 { img } else { img.inv() });
    }
    theta(i, &r)
}

pub fn pr_b(i: u8, a: &P5AlgebraElement) -> GroupAlg {
    let mut r = Lin::new();
    for (g, c) in a.iter() {
        r.add_term(pr_b_group(i, g), c.clone());
    }
    r
}

pub fn pr_b_12(a: &P5AlgebraElement) -> GroupTensor {
    let mut r = Lin::new();
    for (g, c) in a.iter() {
        r.add_term((pr_b_group(1, g), pr_b_group(2, g)), c.clone());
    }
    r
}

pub type Mat3<T> = [[T; 3]; 3];

fn fox(w: &F2Word, j: i8) -> Lin<F2Word> {
    let mut r = Lin::new();
    let mut pre = F2Word::one();
    for &l in &w.0 {
        if l == j {
            r.add_term(pre.clone(), qi(1));
        } else if l == -j {
            r.add_term(pre.mul(&F2Word::gen(l)), qi(-1));
        }
        pre = pre.mul(&F2Word::gen(l));
    }
    r
}

/// ϖ̲ on a group element: (x_{i5} − 1)g = Σ_j ϖ̲(g)_{ij}(x_{j5} − 1).
pub fn varpi_b_group(g: &P5GroupElement) -> Result<Mat3<P5AlgebraElement>> {
    let gi = g.inv();
    let mut m: Mat3<P5AlgebraElement> = Default::default();
    for i in 0..3 {
        let c = gi.mul(&P5GroupElement::kernel_gen(i as i8 + 1)).mul(g);
        if !c.base.is_empty() {
            return Err(Error::Internal("conjugate outside the kernel".into()));
        }
        for j in 0..3 {
            for (k, cf) in fox(&c.kernel, j as i8 + 1).iter() {
                let h = g.mul(&P5GroupElement { kernel: k.clone(), base: F2Word::one() });
                m[i][j].add_term(h, cf.clone());
            }
        }
    }
    Ok(m)
}

pub fn varpi_b(a: &P5AlgebraElement) -> Result<Mat3<P5AlgebraElement>> {
    let mut m: Mat3<P5AlgebraElement> = Default::default();
    for (g, c) in a.iter() {
        let mg = varpi_b_group(g)?;
        for i in 0..3 {
            for j in 0..3 {
                m[i][j].add_scaled(&mg[i][j], c);
            }
        }
    }
    Ok(m)
}

pub fn mat_mul_p5(a: &Mat3<P5AlgebraElement>, b: &Mat3<P5AlgebraElement>) -> Mat3<P5AlgebraElement> {
    let mut m: Mat3<P5AlgebraElement> = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                m[i][j].add_assign(&p5_alg_mul(&a[i][k], &b[k][j]));
            }
        }
    }
    m
}

/// Residual of the defining identity of ϖ̲, row by row.
pub fn varpi_b_residual(a: &P5AlgebraElement, m: &Mat3<P5AlgebraElement>) -> [P5AlgebraElement; 3] {
    let one = p5_single(P5GroupElement::one());
    let xm1 = |j: usize| p5_single(P5GroupElement::kernel_gen(j as i8 + 1)).sub(&one);
    std::array::from_fn(|i| {
        let mut r = p5_alg_mul(&xm1(i), a);
        for j in 0..3 {
            r = r.sub(&p5_alg_mul(&m[i][j], &xm1(j)));
        }
        r
    })
}

/// ρ̲ = M3(pr̲12) ∘ ϖ̲ ∘ ℓ̲ on a group-algebra element.
pub fn rho_b(a: &GroupAlg) -> Result<Mat3<GroupTensor>> {
    let m = varpi_b(&ell_b(a))?;
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| pr_b_12(&m[i][j]))))
}

/// Degree-0 and degree-1 parts of the Magnus image, as (constant, coefficients
/// of e15, e25, e35, e23, e12).
pub fn magnus_linear(a: &P5AlgebraElement) -> (Q, [Q; 5]) {
    let mut c0 = qi(0);
    let mut lin: [Q; 5] = std::array::from_fn(|_| qi(0));
    for (g, c) in a.iter() {
        c0 = c0 + c;
        for &l in &g.kernel.0 {
            let s = if l > 0 { c.clone() } else { c.neg() };
            lin[(l.abs() - 1) as usize] = lin[(l.abs() - 1) as usize].clone() + s;
        }
        for &l in &g.base.0 {
            let s = if l > 0 { c.clone() } else { c.neg() };
            let k = if l.abs() == 1 { 3 } else { 4 };
            lin[k] = lin[k].clone() + s;
        }
    }
    (c0, lin)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_table_stays_in_kernel_and_inverts() {
        let t = alpha_table();
        for b in [1i8, -1, 2, -2] {
            for k in 1..=3 {
                let x = F2Word::gen(k);
                let y = t.apply_letter(-b, &t.apply_letter(b, &x));
                assert_eq!(y, x);
            }
        }
    }

    #[test]
    fn group_laws() {
        let g = P5GroupElement { kernel: F2Word::reduced(&[1, -3]), base: F2Word::reduced(&[2, 1]) };
        let h = P5GroupElement { kernel: F2Word::reduced(&[2]), base: F2Word::reduced(&[-1]) };
        assert_eq!(g.mul(&g.inv()), P5GroupElement::one());
        let k = P5GroupElement::kernel_gen(3);
        assert_eq!(g.mul(&h).mul(&k), g.mul(&h.mul(&k)));
        let a = P5GroupElement::kernel_gen(1).mul(&P5GroupElement::kernel_gen(2));
        assert_eq!(a.kernel, F2Word::reduced(&[1, 2]));
    }

    #[test]
    fn section_and_erasure() {
        for l in [1i8, 2] {
            let g = P5GroupElement::base_word(F2Word::gen(l));
            assert_eq!(pr_b_group(5, &g), F2Word::gen(l));
        }
        for k in 1..=3 {
            assert_eq!(pr_b_group(5, &P5GroupElement::kernel_gen(k)), F2Word::one());
        }
    }

    #[test]
    fn varpi_b_examples() {
        let one = varpi_b(&p5_single(P5GroupElement::one())).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { p5_single(P5GroupElement::one()) } else { Lin::new() };
                assert_eq!(one[i][j], want);
            }
        }
        let x35 = p5_single(P5GroupElement::kernel_gen(3));
        let m = varpi_b(&x35).unwrap();
        assert_eq!(m[2][2], x35);
        assert!(m[2][0].is_zero() && m[2][1].is_zero());
        for r in varpi_b_residual(&x35, &m) {
            assert!(r.is_zero());
        }
    }
}
