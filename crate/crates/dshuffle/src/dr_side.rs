//! The de Rham harmonic side: y-generators, the module of classes modulo
//! right multiples of e0, their coproducts, and the localization at e1.

use crate::error::{Error, Result};
use crate::lin::Lin;
use crate::loc::{self, Factor, LocTensor, LocWord};
use crate::ncalg::{render_lin, Series, Word, E0, E1};
use crate::scalar::{Coeff, Q};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

/// Product y_{n1}⋯y_{nm}; the empty monomial is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct YMonomial(pub Vec<usize>);

impl YMonomial {
    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }
    pub fn concat(&self, o: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        YMonomial(v)
    }
    /// Word e0^{n1−1}e1⋯ with sign (−1)^m.
    pub fn expand(&self) -> (Word, i64) {
        let sign = if self.0.len() % 2 == 0 { 1 } else { -1 };
        (Word::from_composition(&self.0), sign)
    }
    /// All y-monomials of degree exactly `d` (compositions of d).
    pub fn of_degree(d: usize) -> Vec<YMonomial> {
        if d == 0 {
            return vec![YMonomial(vec![])];
        }
        let mut out = Vec::new();
        for first in 1..=d {
            for rest in Self::of_degree(d - first) {
                let mut v = vec![first];
                v.extend(rest.0);
                out.push(YMonomial(v));
            }
        }
        out.sort();
        out
    }
}

impl Ord for YMonomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for YMonomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for YMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|n| format!("y{}", n)).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Element of the harmonic subalgebra 𝐤1 ⊕ 𝒱e1 in y-coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct WElement<C: Coeff = Q> {
    pub terms: Lin<YMonomial, C>,
    pub n: usize,
}

/// Tensor square of the harmonic subalgebra in y-coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct WTensor<C: Coeff = Q> {
    pub terms: Lin<(YMonomial, YMonomial), C>,
    pub n: usize,
}

pub fn is_in_w(w: &Word) -> bool {
    w.is_empty() || w.0.last() == Some(&E1)
}

fn split_word(w: &Word) -> Option<YMonomial> {
    let mut ks = Vec::new();
    let mut run = 0;
    for &l in &w.0 {
        if l == E0 {
            run += 1;
        } else {
            ks.push(run + 1);
            run = 0;
        }
    }
    if run > 0 {
        return None;
    }
    Some(YMonomial(ks))
}

pub fn to_y_basis<C: Coeff>(a: &Series<C>) -> Result<WElement<C>> {
    let mut t = Lin::new();
    for (w, c) in a.terms().iter() {
        let m = split_word(w).ok_or(Error::NotInSubalgebra("W^DR"))?;
        let c = if m.0.len() % 2 == 0 { c.clone() } else { c.neg() };
        t.add_term(m, c);
    }
    Ok(WElement { terms: t, n: a.trunc() })
}

impl<C: Coeff> WElement<C> {
    pub fn expand(&self) -> Series<C> {
        let mut t = Lin::new();
        for (m, c) in self.terms.iter() {
            let (w, s) = m.expand();
            t.add_term(w, c.mul(&C::from_i64(s)));
        }
        Series::from_terms(t, self.n)
    }

    pub fn delta(&self) -> WTensor<C> {
        let mut memo: HashMap<YMonomial, Lin<(YMonomial, YMonomial), C>> = HashMap::new();
        let mut t = Lin::new();
        for (m, c) in self.terms.iter() {
            t.add_scaled(&delta_y_monomial(m, &mut memo), c);
        }
        WTensor { terms: t, n: self.n }
    }

    pub fn render(&self) -> String {
        render_lin(&self.terms, |m| m.to_string())
    }
}

fn delta_y_monomial<C: Coeff>(
    m: &YMonomial,
    memo: &mut HashMap<YMonomial, Lin<(YMonomial, YMonomial), C>>,
) -> Lin<(YMonomial, YMonomial), C> {
    if let Some(r) = memo.get(m) {
        return r.clone();
    }
    let r = if m.0.is_empty() {
        Lin::single((YMonomial::default(), YMonomial::default()), C::one())
    } else {
        let head = delta_y_monomial(&YMonomial(m.0[..m.0.len() - 1].to_vec()), memo);
        let k = m.0[m.0.len() - 1];
        let mut r = Lin::new();
        for ((a, b), c) in head.iter() {
            for i in 0..=k {
                let ya = if i > 0 { vec![i] } else { vec![] };
                let yb = if i < k { vec![k - i] } else { vec![] };
                r.add_term((a.concat(&YMonomial(ya)), b.concat(&YMonomial(yb))), c.clone());
            }
        }
        r
    };
    memo.insert(m.clone(), r.clone());
    r
}

impl<C: Coeff> WTensor<C> {
    /// Image in the tensor square of 𝒱^DR.
    pub fn expand(&self) -> Lin<(Word, Word), C> {
        let mut t = Lin::new();
        for ((a, b), c) in self.terms.iter() {
            let (wa, sa) = a.expand();
            let (wb, sb) = b.expand();
            t.add_term((wa, wb), c.mul(&C::from_i64(sa * sb)));
        }
        t
    }

    pub fn coeff(&self, a: &YMonomial, b: &YMonomial) -> C {
        self.terms.get(&(a.clone(), b.clone()))
    }
}

/// Class of a series in ℳ^DR: words ending in e0 are deleted.
#[derive(Clone, Debug, PartialEq)]
pub struct MElement<C: Coeff = Q> {
    pub terms: Lin<Word, C>,
    pub n: usize,
}

pub fn m_class<C: Coeff>(v: &Series<C>) -> MElement<C> {
    MElement { terms: v.terms().filter(is_in_w), n: v.trunc() }
}

impl<C: Coeff> MElement<C> {
    pub fn unit(n: usize) -> Self {
        MElement { terms: Lin::single(Word::empty(), C::one()), n }
    }

    /// The unique a ∈ 𝒲^DR with a·1_DR = m.
    pub fn w_of_m(&self) -> WElement<C> {
        to_y_basis(&Series::from_terms(self.terms.clone(), self.n)).expect("basis words end in e1")
    }

    pub fn delta(&self) -> Lin<(Word, Word), C> {
        // factors of Δ^W land in 𝒲^DR, whose words are already reduced classes
        self.w_of_m().delta().expand()
    }

    /// Δ(m) − m⊗m; zero iff m is group-like.
    pub fn grouplike_residual(&self) -> Lin<(Word, Word), C> {
        let mut mm = Lin::new();
        for (u, a) in self.terms.iter() {
            for (v, b) in self.terms.iter() {
                if u.len() + v.len() <= self.n {
                    mm.add_term((u.clone(), v.clone()), a.mul(b));
                }
            }
        }
        self.delta().sub(&mm)
    }

    pub fn is_grouplike(&self) -> bool {
        self.grouplike_residual().is_zero()
    }

    pub fn render(&self) -> String {
        render_lin(&self.terms, |w| format!("[{}]", w))
    }
}

/// Basis factor of 𝒱^DR[e1^{-1}]: an e0-run or a nonzero power of e1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DrFactor {
    E0Run(u32),
    E1Pow(i32),
}

impl Factor for DrFactor {
    fn side(&self) -> u8 {
        match self {
            DrFactor::E0Run(_) => 0,
            DrFactor::E1Pow(_) => 1,
        }
    }
    fn mul(&self, o: &Self) -> Lin<Option<Self>, Q> {
        match (self, o) {
            (DrFactor::E0Run(a), DrFactor::E0Run(b)) => {
                Lin::single(Some(DrFactor::E0Run(a + b)), Q::one())
            }
            (DrFactor::E1Pow(a), DrFactor::E1Pow(b)) => {
                let s = a + b;
                Lin::single(if s == 0 { None } else { Some(DrFactor::E1Pow(s)) }, Q::one())
            }
            _ => unreachable!("factors from different sides"),
        }
    }
    fn module_tail(&self) -> Q {
        Q::zero()
    }
}

pub type LocWordDR = LocWord<DrFactor>;

pub fn loc_degree(w: &[DrFactor]) -> i64 {
    w.iter()
        .map(|f| match f {
            DrFactor::E0Run(a) => *a as i64,
            DrFactor::E1Pow(b) => *b as i64,
        })
        .sum()
}

pub fn loc_of_word(w: &Word) -> LocWordDR {
    let mut r: Vec<DrFactor> = Vec::new();
    for &l in &w.0 {
        match (r.last_mut(), l) {
            (Some(DrFactor::E0Run(a)), E0) => *a += 1,
            (Some(DrFactor::E1Pow(b)), E1) => *b += 1,
            (_, E0) => r.push(DrFactor::E0Run(1)),
            _ => r.push(DrFactor::E1Pow(1)),
        }
    }
    r
}

pub fn loc_mul_dr(a: &Lin<LocWordDR>, b: &Lin<LocWordDR>) -> Lin<LocWordDR> {
    loc::lin_mul(a, b)
}

pub fn loc_tensor_of_words(t: &Lin<(Word, Word)>) -> LocTensor<DrFactor> {
    let mut r = Lin::new();
    for ((a, b), c) in t.iter() {
        r.add_term((loc_of_word(a), loc_of_word(b)), c.clone());
    }
    r
}

/// Lower edge of the degree window for localized tensors.
pub const WINDOW_K: i64 = 2;

/// Rejects tensors whose factors leave the degree window [−K, n].
pub fn check_window(t: &LocTensor<DrFactor>, n: usize) -> Result<()> {
    for ((a, b), _) in t.iter() {
        for w in [a, b] {
            let d = loc_degree(w);
            if d < -WINDOW_K || d > n as i64 {
                return Err(Error::WindowExceeded(d));
            }
        }
    }
    Ok(())
}

pub fn render_loc_word(w: &[DrFactor]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|f| match f {
            DrFactor::E0Run(1) => "e0".to_string(),
            DrFactor::E0Run(a) => format!("e0^{}", a),
            DrFactor::E1Pow(1) => "e1".to_string(),
            DrFactor::E1Pow(b) => format!("e1^{}", b),
        })
        .collect::<Vec<_>>()
        .join(" ")
}
