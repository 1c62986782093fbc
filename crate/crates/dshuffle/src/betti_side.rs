//! The Betti side: the group algebra of F2 = ⟨X0, X1⟩, its harmonic
//! subalgebra generated by X1^{±1} and the Y_n^{±}, the module of classes
//! modulo right multiples of X0 − 1, coproducts, Magnus expansion and the
//! localization at X1 − 1.

use crate::dr_side::{to_y_basis, YMonomial};
use crate::error::{Error, Result};
use crate::lin::Lin;
use crate::loc::{self, Factor, LocTensor, LocWord};
use crate::ncalg::{render_lin, Series, E0, E1};
use crate::scalar::{qi, Coeff, Q};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

/// Reduced word in X0^{±1} (letters ±1) and X1^{±1} (letters ±2).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct F2Word(pub Vec<i8>);

impl F2Word {
    pub fn one() -> Self {
        F2Word(Vec::new())
    }
    pub fn gen(l: i8) -> Self {
        F2Word(vec![l])
    }
    pub fn x0(e: i32) -> Self {
        F2Word::pow(1, e)
    }
    pub fn x1(e: i32) -> Self {
        F2Word::pow(2, e)
    }
    fn pow(g: i8, e: i32) -> Self {
        let l = if e > 0 { g } else { -g };
        F2Word(vec![l; e.unsigned_abs() as usize])
    }
    pub fn reduced(letters: &[i8]) -> Self {
        let mut v: Vec<i8> = Vec::with_capacity(letters.len());
        for &l in letters {
            if v.last() == Some(&-l) {
                v.pop();
            } else {
                v.push(l);
            }
        }
        F2Word(v)
    }
    pub fn mul(&self, o: &Self) -> Self {
        let mut v = self.0.clone();
        for &l in &o.0 {
            if v.last() == Some(&-l) {
                v.pop();
            } else {
                v.push(l);
            }
        }
        F2Word(v)
    }
    pub fn inv(&self) -> Self {
        F2Word(self.0.iter().rev().map(|l| -l).collect())
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    /// Maximal runs as (generator 1 or 2, nonzero exponent).
    pub fn blocks(&self) -> Vec<(i8, i32)> {
        let mut b: Vec<(i8, i32)> = Vec::new();
        for &l in &self.0 {
            let g = l.abs();
            let s = if l > 0 { 1 } else { -1 };
            match b.last_mut() {
                Some((h, e)) if *h == g => *e += s,
                _ => b.push((g, s)),
            }
        }
        b
    }
    pub fn from_blocks(b: &[(i8, i32)]) -> Self {
        let mut w = F2Word::one();
        for &(g, e) in b {
            w = w.mul(&F2Word::pow(g, e));
        }
        w
    }
}

impl Ord for F2Word {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.len().cmp(&o.0.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for F2Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for F2Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .blocks()
            .iter()
            .map(|&(g, e)| {
                let name = if g == 1 { "X0" } else { "X1" };
                if e == 1 {
                    name.to_string()
                } else {
                    format!("{}^{}", name, e)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub type GroupAlg = Lin<F2Word>;
pub type GroupTensor = Lin<(F2Word, F2Word)>;

pub fn ga_word(w: F2Word) -> GroupAlg {
    Lin::single(w, qi(1))
}

pub fn ga_one() -> GroupAlg {
    ga_word(F2Word::one())
}

pub fn ga_mul(a: &GroupAlg, b: &GroupAlg) -> GroupAlg {
    let mut r = Lin::new();
    for (u, x) in a.iter() {
        for (v, y) in b.iter() {
            r.add_term(u.mul(v), x.mul(y));
        }
    }
    r
}

pub fn ga_inv(a: &GroupAlg) -> GroupAlg {
    a.iter().map(|(w, c)| (w.inv(), c.clone())).collect()
}

pub fn gt_mul(a: &GroupTensor, b: &GroupTensor) -> GroupTensor {
    let mut r = Lin::new();
    for ((u1, v1), x) in a.iter() {
        for ((u2, v2), y) in b.iter() {
            r.add_term((u1.mul(u2), v1.mul(v2)), x.mul(y));
        }
    }
    r
}

pub fn gt_of(a: &GroupAlg, b: &GroupAlg) -> GroupTensor {
    let mut r = Lin::new();
    for (u, x) in a.iter() {
        for (v, y) in b.iter() {
            r.add_term((u.clone(), v.clone()), x.mul(y));
        }
    }
    r
}

/// Augmentation: sum of coefficients.
pub fn augmentation(a: &GroupAlg) -> Q {
    a.iter().fold(qi(0), |s, (_, c)| s + c)
}

pub fn delta_v_b(a: &GroupAlg) -> GroupTensor {
    a.iter().map(|(w, c)| ((w.clone(), w.clone()), c.clone())).collect()
}

/// Magnus expansion X_i^{±1} ↦ exp(±e_i), truncated at `n`.
pub fn magnus(a: &GroupAlg, n: usize) -> Series {
    let mut gens: HashMap<i8, Series> = HashMap::new();
    for l in [1i8, -1, 2, -2] {
        let e = Series::letter(if l.abs() == 1 { E0 } else { E1 }, n);
        let e = if l > 0 { e } else { e.neg() };
        gens.insert(l, e.exp().expect("no constant term"));
    }
    let mut cache: HashMap<Vec<i8>, Series> = HashMap::new();
    cache.insert(Vec::new(), Series::one(n));
    let mut r = Series::zero(n);
    for (w, c) in a.iter() {
        let img = magnus_word(&w.0, &gens, &mut cache);
        r = r.add(&img.scale(c)).expect("same n");
    }
    r
}

fn magnus_word(w: &[i8], gens: &HashMap<i8, Series>, cache: &mut HashMap<Vec<i8>, Series>) -> Series {
    if let Some(s) = cache.get(w) {
        return s.clone();
    }
    let p = magnus_word(&w[..w.len() - 1], gens, cache);
    let r = p.mul(&gens[&w[w.len() - 1]]).expect("same n");
    cache.insert(w.to_vec(), r.clone());
    r
}

/// I-adic filtration degree, read off as the Magnus order.
pub fn filtration_degree(a: &GroupAlg) -> Result<usize> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let longest = a.keys().map(|w| w.len()).max().unwrap_or(0);
    // the order of a nonzero element never exceeds the longest word length
    let m = magnus(a, longest);
    m.order().ok_or_else(|| Error::Internal("Magnus expansion not injective".into()))
}

/// Letter of a harmonic generator monomial: X1^k or Y_n^{±}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum YbLetter {
    X1(i32),
    Y(usize, bool),
}

/// Word in the harmonic generators, with adjacent X1-powers merged.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct YBMonomial(pub Vec<YbLetter>);

impl YBMonomial {
    pub fn filtration_degree(&self) -> usize {
        self.0
            .iter()
            .map(|l| match l {
                YbLetter::X1(_) => 1,
                YbLetter::Y(n, _) => *n,
            })
            .sum()
    }

    pub fn concat(&self, o: &Self) -> Self {
        let mut v = self.0.clone();
        for l in &o.0 {
            push_letter(&mut v, l.clone());
        }
        YBMonomial(v)
    }

    pub fn expand(&self) -> GroupAlg {
        let mut r = ga_one();
        for l in &self.0 {
            r = ga_mul(&r, &yb_letter_value(l));
        }
        r
    }
}

fn push_letter(v: &mut Vec<YbLetter>, l: YbLetter) {
    if let YbLetter::X1(k) = l {
        if k == 0 {
            return;
        }
        if let Some(YbLetter::X1(j)) = v.last_mut() {
            *j += k;
            if *j == 0 {
                v.pop();
            }
            return;
        }
    }
    v.push(l);
}

impl fmt::Display for YBMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| match l {
                YbLetter::X1(1) => "X1".to_string(),
                YbLetter::X1(k) => format!("X1^{}", k),
                YbLetter::Y(n, p) => format!("Y{}{}", n, if *p { "+" } else { "-" }),
            })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

pub type YbComb = Lin<YBMonomial>;

/// Y_n^{±} = (X0^{±1} − 1)^{n−1} X0^{±1} (1 − X1^{±1}).
pub fn y_value(n: usize, plus: bool) -> GroupAlg {
    let e = if plus { 1 } else { -1 };
    let x0 = ga_word(F2Word::x0(e));
    let x0m1 = x0.sub(&ga_one());
    let mut r = ga_one();
    for _ in 1..n {
        r = ga_mul(&r, &x0m1);
    }
    r = ga_mul(&r, &x0);
    ga_mul(&r, &ga_one().sub(&ga_word(F2Word::x1(e))))
}

fn yb_letter_value(l: &YbLetter) -> GroupAlg {
    match l {
        YbLetter::X1(k) => ga_word(F2Word::x1(*k)),
        YbLetter::Y(n, p) => y_value(*n, *p),
    }
}

pub fn yb_expand(a: &YbComb) -> GroupAlg {
    let mut r = Lin::new();
    for (m, c) in a.iter() {
        r.add_scaled(&m.expand(), c);
    }
    r
}

pub fn yb_mul(a: &YbComb, b: &YbComb) -> YbComb {
    let mut r = Lin::new();
    for (u, x) in a.iter() {
        for (v, y) in b.iter() {
            r.add_term(u.concat(v), x.mul(y));
        }
    }
    r
}

fn yb_letter(l: YbLetter) -> YbComb {
    let mut v = Vec::new();
    push_letter(&mut v, l);
    Lin::single(YBMonomial(v), qi(1))
}

fn binom(n: usize, k: usize) -> i64 {
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}

/// X0^m (1 − X1) in the harmonic generators.
fn z_value(m: i32) -> YbComb {
    let mm = m.unsigned_abs() as usize;
    let mut r = Lin::new();
    for j in 0..mm {
        let c = binom(mm - 1, j);
        if m > 0 {
            r.add_term(YBMonomial(vec![YbLetter::Y(j + 1, true)]), qi(c));
        } else {
            r.add_term(YBMonomial(vec![YbLetter::Y(j + 1, false), YbLetter::X1(1)]), qi(-c));
        }
    }
    r
}

/// (1 − X1^k) = (1 − X1)·S_k with S_k a Laurent polynomial in X1.
fn s_factor(k: i32) -> YbComb {
    let mut r = Lin::new();
    if k > 0 {
        for j in 0..k {
            r.add_scaled(&yb_letter(YbLetter::X1(j)), &qi(1));
        }
    } else {
        for j in 1..=-k {
            r.add_scaled(&yb_letter(YbLetter::X1(-j)), &qi(-1));
        }
    }
    r
}

/// u·(1 − X1) rewritten in the harmonic generators by peeling X0-blocks
/// from the right.
fn peel(u: &F2Word, memo: &mut HashMap<F2Word, YbComb>) -> YbComb {
    if let Some(r) = memo.get(u) {
        return r.clone();
    }
    let mut bl = u.blocks();
    let mut kr = 0;
    if let Some(&(2, e)) = bl.last() {
        kr = e;
        bl.pop();
    }
    let tail = yb_letter(YbLetter::X1(kr));
    let r = match bl.pop() {
        None => yb_letter(YbLetter::X1(kr)).sub(&yb_letter(YbLetter::X1(kr + 1))),
        Some((_, m)) => {
            let z = yb_mul(&z_value(m), &tail);
            match bl.pop() {
                None => z,
                Some((_, k)) => {
                    // P = P'·X1^k = P' − P'(1 − X1)·S_k, with P' ending in an X0-block
                    let mut merged = bl.clone();
                    merged.push((1, m));
                    let first = yb_mul(&peel(&F2Word::from_blocks(&merged), memo), &tail);
                    let pp = peel(&F2Word::from_blocks(&bl), memo);
                    let second = yb_mul(&yb_mul(&pp, &s_factor(k)), &z);
                    first.sub(&second)
                }
            }
        }
    };
    memo.insert(u.clone(), r.clone());
    r
}

/// Writes `a = c + b·(X1 − 1)`; fails if `a ∉ 𝐤1 ⊕ 𝒱^B(X1 − 1)`.
pub fn right_divide_x1m1(a: &GroupAlg) -> Result<(Q, GroupAlg)> {
    // group terms by stem (word with trailing X1-power removed)
    let mut stems: HashMap<F2Word, Vec<(i32, Q)>> = HashMap::new();
    for (w, c) in a.iter() {
        let mut bl = w.blocks();
        let k = match bl.last() {
            Some(&(2, e)) => {
                bl.pop();
                e
            }
            _ => 0,
        };
        stems.entry(F2Word::from_blocks(&bl)).or_default().push((k, c.clone()));
    }
    let mut c0 = qi(0);
    let mut b = Lin::new();
    for (stem, poly) in stems {
        let s: Q = poly.iter().fold(qi(0), |s, (_, c)| s + c);
        if stem.is_empty() {
            c0 = s.clone();
        } else if !Coeff::is_zero(&s) {
            return Err(Error::NotInSubalgebra("W^B"));
        }
        // p(X1) − p(1) = Σ c (X1^k − 1) = (X1 − 1) Σ c·T_k
        for (k, c) in poly {
            let mut t = Lin::new();
            if k > 0 {
                for j in 0..k {
                    t.add_term(F2Word::x1(j), qi(1));
                }
            } else {
                for j in 1..=-k {
                    t.add_term(F2Word::x1(-j), qi(-1));
                }
            }
            for (w, d) in t.iter() {
                b.add_term(stem.mul(w), d.mul(&c));
            }
        }
    }
    Ok((c0, b))
}

/// Rewrites an element of 𝐤1 ⊕ 𝒱^B(X1 − 1) in the generators X1^{±1}, Y_n^{±}.
pub fn to_wb_generators(a: &GroupAlg) -> Result<YbComb> {
    let (c, b) = right_divide_x1m1(a)?;
    let mut r: YbComb = Lin::new();
    r.add_term(YBMonomial::default(), c);
    let mut memo = HashMap::new();
    for (u, x) in b.iter() {
        // u(X1 − 1) = −u(1 − X1)
        r.add_scaled(&peel(u, &mut memo), &x.neg());
    }
    Ok(r)
}

/// Harmonic coproduct: X1^k ↦ X1^k⊗X1^k, Y_k ↦ Σ_{i=0}^{k} Y_i⊗Y_{k−i}.
pub fn delta_w_b(a: &YbComb) -> Lin<(YBMonomial, YBMonomial)> {
    let mut r = Lin::new();
    for (m, c) in a.iter() {
        let mut acc: Lin<(YBMonomial, YBMonomial)> =
            Lin::single((YBMonomial::default(), YBMonomial::default()), qi(1));
        for l in &m.0 {
            let mut next = Lin::new();
            let parts: Vec<(YBMonomial, YBMonomial)> = match l {
                YbLetter::X1(_) => vec![(YBMonomial(vec![l.clone()]), YBMonomial(vec![l.clone()]))],
                YbLetter::Y(k, p) => (0..=*k)
                    .map(|i| {
                        let a = if i > 0 { vec![YbLetter::Y(i, *p)] } else { vec![] };
                        let b = if i < *k { vec![YbLetter::Y(k - i, *p)] } else { vec![] };
                        (YBMonomial(a), YBMonomial(b))
                    })
                    .collect(),
            };
            for ((u, v), x) in acc.iter() {
                for (pa, pb) in &parts {
                    next.add_term((u.concat(pa), v.concat(pb)), x.clone());
                }
            }
            acc = next;
        }
        r.add_scaled(&acc, c);
    }
    r
}

pub fn expand_yb_tensor(t: &Lin<(YBMonomial, YBMonomial)>) -> GroupTensor {
    let mut memo: HashMap<YBMonomial, GroupAlg> = HashMap::new();
    let mut r = Lin::new();
    for ((a, b), c) in t.iter() {
        let ea = memo.entry(a.clone()).or_insert_with(|| a.expand()).clone();
        let eb = memo.entry(b.clone()).or_insert_with(|| b.expand()).clone();
        r.add_scaled(&gt_of(&ea, &eb), c);
    }
    r
}

/// Δ^{W,B} evaluated on a group-algebra element of the harmonic subalgebra.
pub fn delta_w_b_of(a: &GroupAlg) -> Result<GroupTensor> {
    Ok(expand_yb_tensor(&delta_w_b(&to_wb_generators(a)?)))
}

/// Class in ℳ^B: trailing X0-powers dropped.
pub fn mb_class_word(w: &F2Word) -> F2Word {
    let mut v = w.0.clone();
    while v.last().is_some_and(|l| l.abs() == 1) {
        v.pop();
    }
    F2Word(v)
}

pub type MBElement = Lin<F2Word>;

pub fn mb_class(v: &GroupAlg) -> MBElement {
    v.iter().map(|(w, c)| (mb_class_word(w), c.clone())).collect()
}

pub fn mb_class_tensor(t: &GroupTensor) -> GroupTensor {
    t.iter()
        .map(|((a, b), c)| ((mb_class_word(a), mb_class_word(b)), c.clone()))
        .collect()
}

/// An element b of 𝐤1 ⊕ 𝒱^B(X1 − 1) with b·1_B = m.
pub fn wb_of_mb(m: &MBElement) -> GroupAlg {
    let mut r = Lin::new();
    for (w, c) in m.iter() {
        r.add_scaled(&wb_of_word(w), c);
    }
    r
}

fn wb_of_word(u: &F2Word) -> GroupAlg {
    let u = mb_class_word(u);
    let mut bl = u.blocks();
    let Some(&(_, k)) = bl.last() else {
        return ga_one();
    };
    bl.pop();
    let stem = F2Word::from_blocks(&bl);
    // stem·X1^k·1_B = stem·1_B + stem·(X1^k − 1)·1_B
    let mut r = wb_of_word(&stem);
    let xk = ga_word(stem.mul(&F2Word::x1(k)));
    r.add_assign(&xk.sub(&ga_word(stem)));
    r
}

pub fn delta_m_b(m: &MBElement) -> Result<GroupTensor> {
    Ok(mb_class_tensor(&delta_w_b_of(&wb_of_mb(m))?))
}

/// Basis factor of 𝒱^B[(X1 − 1)^{-1}]: X0^n, X1^n (n ≠ 0) or (X1 − 1)^{−m}.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BFactor {
    X0(i32),
    X1(i32),
    InvX1m1(u32),
}

type A2 = Lin<Option<BFactor>, Q>;

fn a2_key(f: BFactor) -> Option<BFactor> {
    match f {
        BFactor::X1(0) | BFactor::X0(0) | BFactor::InvX1m1(0) => None,
        f => Some(f),
    }
}

/// (X1 − 1)^j for any integer j in the A2 basis.
fn x1m1_pow(j: i64) -> A2 {
    if j < 0 {
        return Lin::single(Some(BFactor::InvX1m1((-j) as u32)), qi(1));
    }
    let j = j as usize;
    let mut r = Lin::new();
    for i in 0..=j {
        let s = if (j - i) % 2 == 0 { 1 } else { -1 };
        r.add_term(a2_key(BFactor::X1(i as i32)), qi(s * binom(j, i)));
    }
    r
}

fn a2_mul_keys(a: &Option<BFactor>, b: &Option<BFactor>) -> A2 {
    use BFactor::*;
    match (a, b) {
        (None, x) | (x, None) => Lin::single(x.clone(), qi(1)),
        (Some(X1(p)), Some(X1(q))) => Lin::single(a2_key(X1(p + q)), qi(1)),
        (Some(InvX1m1(p)), Some(InvX1m1(q))) => Lin::single(Some(InvX1m1(p + q)), qi(1)),
        (Some(InvX1m1(_)), Some(X1(_))) => a2_mul_keys(b, a),
        (Some(X1(n)), Some(InvX1m1(m))) => {
            let (n, m) = (*n, *m as i64);
            let mut r = Lin::new();
            if n > 0 {
                for k in 0..=n as usize {
                    r.add_scaled(&x1m1_pow(k as i64 - m), &qi(binom(n as usize, k)));
                }
            } else {
                // X1^{-1}(X1−1)^{-m} = Σ_{j=1}^{m} (−1)^{m−j}(X1−1)^{-j} + (−1)^m X1^{-1}
                let mut inner: A2 = Lin::new();
                for j in 1..=m {
                    let s = if (m - j) % 2 == 0 { 1 } else { -1 };
                    inner.add_term(Some(InvX1m1(j as u32)), qi(s));
                }
                inner.add_term(Some(X1(-1)), qi(if m % 2 == 0 { 1 } else { -1 }));
                let rest = a2_key(X1(n + 1));
                for (k, c) in inner.iter() {
                    r.add_scaled(&a2_mul_keys(&rest, k), c);
                }
            }
            r
        }
        _ => unreachable!("X0 factors are not in A2"),
    }
}

impl Factor for BFactor {
    fn side(&self) -> u8 {
        match self {
            BFactor::X0(_) => 0,
            _ => 1,
        }
    }
    fn mul(&self, o: &Self) -> Lin<Option<Self>, Q> {
        match (self, o) {
            (BFactor::X0(a), BFactor::X0(b)) => Lin::single(a2_key(BFactor::X0(a + b)), qi(1)),
            _ => a2_mul_keys(&Some(self.clone()), &Some(o.clone())),
        }
    }
    fn module_tail(&self) -> Q {
        qi(1)
    }
}

pub type LocBWord = LocWord<BFactor>;

pub fn loc_b_of_word(w: &F2Word) -> LocBWord {
    w.blocks()
        .into_iter()
        .map(|(g, e)| if g == 1 { BFactor::X0(e) } else { BFactor::X1(e) })
        .collect()
}

pub fn loc_b_of(a: &GroupAlg) -> Lin<LocBWord> {
    a.iter().map(|(w, c)| (loc_b_of_word(w), c.clone())).collect()
}

pub fn loc_b_tensor_of(t: &GroupTensor) -> LocTensor<BFactor> {
    t.iter()
        .map(|((a, b), c)| ((loc_b_of_word(a), loc_b_of_word(b)), c.clone()))
        .collect()
}

pub fn loc_mul_b(a: &Lin<LocBWord>, b: &Lin<LocBWord>) -> Lin<LocBWord> {
    loc::lin_mul(a, b)
}

/// (X1 − 1)^{-1} as a one-factor localized word.
pub fn inv_x1m1() -> Lin<LocBWord> {
    Lin::single(vec![BFactor::InvX1m1(1)], qi(1))
}

/// ŷ_n := Magnus image of Y_n^+, truncated at `n_max`.
pub fn yhat(n: usize, n_max: usize) -> Series {
    magnus(&y_value(n, true), n_max)
}

/// Expansion of a ŷ-coordinate combination into e-series.
pub fn yhat_expand(a: &Lin<YMonomial>, n_max: usize) -> Series {
    let gens: Vec<Series> = (1..=n_max).map(|k| yhat(k, n_max)).collect();
    let mut r = Series::zero(n_max);
    for (m, c) in a.iter() {
        let mut p = Series::one(n_max);
        for &k in &m.0 {
            p = p.mul(&gens[k - 1]).expect("same n");
        }
        r = r.add(&p.scale(c)).expect("same n");
    }
    r
}

/// Triangular solve for ŷ-coordinates of a series in the completed harmonic
/// subalgebra, degree by degree.
pub fn to_yhat_basis(a: &Series, n_max: usize) -> Result<Lin<YMonomial>> {
    let gens: Vec<Series> = (1..=n_max).map(|k| yhat(k, n_max)).collect();
    let mut coords: Lin<YMonomial> = Lin::new();
    let mut resid = a.retrunc(n_max);
    for d in 0..=n_max {
        let part = resid.degree_part(d);
        if part.is_zero() {
            continue;
        }
        let ys = to_y_basis(&part).map_err(|_| Error::NotInSubalgebra("completed W^B"))?;
        for (m, c) in ys.terms.iter() {
            coords.add_term(m.clone(), c.clone());
            let mut p = Series::one(n_max);
            for &k in &m.0 {
                p = p.mul(&gens[k - 1])?;
            }
            resid = resid.sub(&p.scale(c))?;
        }
    }
    Ok(coords)
}

pub fn render_ga(a: &GroupAlg) -> String {
    render_lin(a, |w| w.to_string())
}

pub fn render_yb(a: &YbComb) -> String {
    render_lin(a, |m| m.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::Word;

    fn g(s: &[i8]) -> GroupAlg {
        ga_word(F2Word::reduced(s))
    }

    #[test]
    fn group_basics() {
        assert_eq!(F2Word::reduced(&[1, -1]), F2Word::one());
        assert_eq!(F2Word::reduced(&[1, 2]).inv(), F2Word::reduced(&[-2, -1]));
        let p = ga_mul(&g(&[1]).sub(&ga_one()), &g(&[2]).sub(&ga_one()));
        assert_eq!(p.len(), 4);
    }

    #[test]
    fn filtration_examples() {
        assert_eq!(filtration_degree(&g(&[1]).sub(&ga_one())).unwrap(), 1);
        let c = g(&[1, 2, -1, -2]).sub(&ga_one());
        assert_eq!(filtration_degree(&c).unwrap(), 2);
        assert!(filtration_degree(&Lin::new()).is_err());
    }

    #[test]
    fn wb_generator_examples() {
        let a = g(&[2]).sub(&ga_one());
        let r = to_wb_generators(&a).unwrap();
        assert_eq!(yb_expand(&r), a);
        let y1 = ga_mul(&g(&[1]), &ga_one().sub(&g(&[2])));
        let r = to_wb_generators(&y1).unwrap();
        assert_eq!(r, Lin::single(YBMonomial(vec![YbLetter::Y(1, true)]), qi(1)));
        let y2 = ga_mul(&g(&[1]).sub(&ga_one()), &y1);
        let r = to_wb_generators(&y2).unwrap();
        assert_eq!(r, Lin::single(YBMonomial(vec![YbLetter::Y(2, true)]), qi(1)));
        assert!(to_wb_generators(&g(&[1])).is_err());
    }

    #[test]
    fn module_examples() {
        assert_eq!(mb_class(&g(&[1])), ga_one());
        assert_eq!(mb_class(&g(&[2, 1])), g(&[2]));
        let d = delta_m_b(&ga_one()).unwrap();
        assert_eq!(d, Lin::single((F2Word::one(), F2Word::one()), qi(1)));
        let d = delta_m_b(&g(&[1])).unwrap();
        assert_eq!(d, Lin::single((F2Word::one(), F2Word::one()), qi(1)));
    }

    #[test]
    fn loc_examples() {
        let x1m1 = loc_b_of(&g(&[2]).sub(&ga_one()));
        assert_eq!(loc_mul_b(&x1m1, &inv_x1m1()), Lin::single(vec![], qi(1)));
        let r = loc_mul_b(&inv_x1m1(), &inv_x1m1());
        assert_eq!(r, Lin::single(vec![BFactor::InvX1m1(2)], qi(1)));
        let r = loc_mul_b(&loc_b_of(&g(&[2])), &inv_x1m1());
        let want = Lin::single(vec![], qi(1)).add(&inv_x1m1());
        assert_eq!(r, want);
        // X1^{-2}(X1 − 1)^{-1}·(X1 − 1)X1^2 = 1
        let a = loc_mul_b(&loc_b_of(&g(&[-2, -2])), &inv_x1m1());
        let b = loc_mul_b(&x1m1, &loc_b_of(&g(&[2, 2])));
        assert_eq!(loc_mul_b(&a, &b), Lin::single(vec![], qi(1)));
    }

    #[test]
    fn yhat_round_trip() {
        let x = magnus(&g(&[2]).sub(&ga_one()), 4);
        let c = to_yhat_basis(&x, 4).unwrap();
        assert_eq!(c.get(&YMonomial(vec![1])), qi(-1));
        assert_eq!(yhat_expand(&c, 4), x);
        let w = Word::parse("e0").unwrap();
        assert!(to_yhat_basis(&Series::word(w, 3), 3).is_err());
    }
}
