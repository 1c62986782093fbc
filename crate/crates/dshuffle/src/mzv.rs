//! Multiple zeta values at fixed binary precision, with computed error bounds.
//!
//! Values are obtained from the duality at 1/2: for an admissible word
//! a1⋯an,
//!
//!   ζ(a1⋯an) = Σ_i Li(1/2; ā_i⋯ā_1) · Li(1/2; a_{i+1}⋯a_n)
//!
//! where ā swaps e0 and e1. Both factors are polylogarithms at 1/2, whose
//! series converge geometrically.

use crate::dmr::{self, MembershipReport};
use crate::error::{Error, Result};
use crate::lin::Lin;
use crate::ncalg::{reg_word, shuffle_words, words_of_len, Series, Word, E0};
use crate::scalar::{BigFloat, Coeff, Q};
use num::ToPrimitive;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Weight cap for numerical evaluation.
pub const MAX_WEIGHT: usize = 6;

/// Index sequence (k1, …, km), read as Σ_{n1>⋯>nm>0} Π n_j^{-k_j}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Composition(pub Vec<usize>);

impl Composition {
    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }
    pub fn depth(&self) -> usize {
        self.0.len()
    }
    /// Empty, or all entries positive with the first at least 2.
    pub fn is_admissible(&self) -> bool {
        self.0.iter().all(|&k| k >= 1) && self.0.first().is_none_or(|&k| k >= 2)
    }
    pub fn to_word(&self) -> Word {
        Word::from_composition(&self.0)
    }
    /// Inverse of `to_word` on words ending in e1 (or empty).
    pub fn from_word(w: &Word) -> Option<Composition> {
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
        (run == 0).then_some(Composition(ks))
    }
    pub fn parse(s: &str) -> Result<Composition> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Composition(vec![]));
        }
        s.split(',')
            .map(|p| p.trim().parse::<usize>().ok().filter(|&k| k > 0))
            .collect::<Option<Vec<_>>>()
            .map(Composition)
            .ok_or_else(|| Error::Parse(s.to_string()))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A value together with a rigorous bound on its distance to the true number.
#[derive(Clone, Debug)]
pub struct Approx {
    pub value: BigFloat,
    pub error: f64,
}

impl Approx {
    fn exact_one(bits: u32) -> Self {
        Approx { value: BigFloat::from_int(1, bits), error: 0.0 }
    }
}

fn ulp(bits: u32) -> f64 {
    2f64.powi(-(bits as i32))
}

/// Number of series terms so that the tail of Li(1/2; k) is below 2^{-bits-2}.
///
/// For depth m the n-th summand is at most C(n-1, m-1) 2^{-n} ≤ n^{m-1} 2^{-n},
/// and for L ≥ 4m the tail past L is at most 4 (L+1)^{m-1} 2^{-(L+1)}.
fn terms_needed(m: usize, bits: u32) -> usize {
    let mut l = 4 * m.max(1);
    while tail_bound(m, l) > 2f64.powi(-(bits as i32) - 2) {
        l += 1;
    }
    l
}

fn tail_bound(m: usize, l: usize) -> f64 {
    let lf = (l + 1) as f64;
    4.0 * lf.powi(m.saturating_sub(1) as i32) * 2f64.powf(-lf)
}

/// Li_{k1..km}(1/2) = Σ_{n1>⋯>nm>0} 2^{-n1} / Π n_j^{k_j}, evaluated with
/// working precision `wbits` and truncated after `l` terms.
fn li_half(k: &[usize], l: usize, wbits: u32) -> BigFloat {
    let m = k.len();
    let one = BigFloat::from_int(1, wbits);
    if m == 0 {
        return one;
    }
    // acc[j] = Σ_{n'<n} t_j(n'), with t_{m-1}(n) = n^{-k_{m-1}} and
    // t_j(n) = acc[j+1] / n^{k_j}.
    let mut acc = vec![BigFloat::from_int(0, wbits); m];
    let mut total = BigFloat::from_int(0, wbits);
    let mut zpow = one.clone();
    let mut t = vec![BigFloat::from_int(0, wbits); m];
    for n in 1..=l {
        zpow = zpow.div_i64(2);
        for j in (0..m).rev() {
            let mut x = if j == m - 1 { one.clone() } else { acc[j + 1].clone() };
            for _ in 0..k[j] {
                x = x.div_i64(n as i64);
            }
            t[j] = x;
        }
        for j in 0..m {
            acc[j] = acc[j].add(&t[j]);
        }
        total = total.add(&zpow.mul(&t[0]));
    }
    total
}

/// Rounding error of `li_half` in units of 2^{-wbits}.
fn li_rounding_ulps(k: &[usize], l: usize) -> f64 {
    let lf = (l + 1) as f64;
    let mut e_t = 0.0;
    for (j, &kj) in k.iter().enumerate().rev() {
        let e_acc = if j + 1 == k.len() { 0.0 } else { lf * e_t };
        e_t = e_acc + kj as f64;
    }
    lf * (e_t + 2.0)
}

fn li_half_bounded(w: &Word, bits: u32) -> Approx {
    let c = Composition::from_word(w).expect("factor ends in e1");
    if c.0.is_empty() {
        return Approx::exact_one(bits + 64);
    }
    let l = terms_needed(c.depth(), bits + 8);
    let wbits = (bits + 64 + 8 * c.depth() as u32).max(l as u32 + 8);
    let value = li_half(&c.0, l, wbits);
    let error = tail_bound(c.depth(), l) + li_rounding_ulps(&c.0, l) * ulp(wbits);
    Approx { value, error }
}

/// ζ of an admissible composition of weight ≤ `MAX_WEIGHT`, at `bits`
/// fractional bits; the error bound accounts for truncation and rounding.
pub fn zeta(c: &Composition, bits: u32) -> Result<Approx> {
    if !c.is_admissible() {
        return Err(Error::NotAdmissible(c.to_string()));
    }
    if c.weight() > MAX_WEIGHT {
        return Err(Error::DegreeTooLarge(c.weight(), MAX_WEIGHT));
    }
    Ok(zeta_word(&c.to_word(), bits))
}

fn zeta_word(w: &Word, bits: u32) -> Approx {
    let a = &w.0;
    let n = a.len();
    let mut sum: Option<BigFloat> = None;
    let mut err = 0.0;
    for i in 0..=n {
        let left = Word(a[..i].iter().rev().map(|&x| 1 - x).collect());
        let right = Word(a[i..].to_vec());
        let p = li_half_bounded(&left, bits);
        let q = li_half_bounded(&right, bits);
        // both factors lie in [0, 1]
        let prod = p.value.mul(&q.value);
        err += p.error + q.error + p.error * q.error + ulp(prod.bits());
        sum = Some(match sum {
            None => prod,
            Some(s) => s.add(&prod),
        });
    }
    let value = sum.expect("at least one term").with_bits(bits);
    Approx { value, error: err + ulp(bits) }
}

/// π² = 6ζ(2).
pub fn pi_squared(bits: u32) -> Approx {
    let z = zeta(&Composition(vec![2]), bits).expect("ζ(2) is in range");
    Approx { value: z.value.mul(&BigFloat::from_int(6, bits)), error: 6.0 * z.error }
}

/// Quasi-shuffle (stuffle) product of two index sequences.
pub fn stuffle(u: &Composition, v: &Composition) -> Lin<Composition, Q> {
    let mut memo = HashMap::new();
    let mut r = Lin::new();
    for (c, m) in stuffle_rec(&u.0, &v.0, &mut memo) {
        r.add_term(Composition(c), Q::from_i64(m));
    }
    r
}

type StuffleMemo = HashMap<(Vec<usize>, Vec<usize>), BTreeMap<Vec<usize>, i64>>;

fn stuffle_rec(u: &[usize], v: &[usize], memo: &mut StuffleMemo) -> BTreeMap<Vec<usize>, i64> {
    if u.is_empty() || v.is_empty() {
        let mut w = u.to_vec();
        w.extend_from_slice(v);
        return BTreeMap::from([(w, 1)]);
    }
    let key = (u.to_vec(), v.to_vec());
    if let Some(r) = memo.get(&key) {
        return r.clone();
    }
    let mut out = BTreeMap::new();
    let mut push = |head: usize, tail: BTreeMap<Vec<usize>, i64>| {
        for (w, m) in tail {
            let mut x = vec![head];
            x.extend(w);
            *out.entry(x).or_insert(0) += m;
        }
    };
    push(u[0], stuffle_rec(&u[1..], v, memo));
    push(v[0], stuffle_rec(u, &v[1..], memo));
    push(u[0] + v[0], stuffle_rec(&u[1..], &v[1..], memo));
    out.retain(|_, m| *m != 0);
    memo.insert(key, out.clone());
    out
}

/// Shuffle product of the words of two compositions, re-read as compositions.
pub fn shuffle(u: &Composition, v: &Composition) -> Lin<Composition, Q> {
    let mut memo = HashMap::new();
    let mut r = Lin::new();
    for (w, m) in shuffle_words(&u.to_word().0, &v.to_word().0, &mut memo) {
        let c = Composition::from_word(&Word(w)).expect("shuffle of words ending in e1");
        r.add_term(c, Q::from_i64(m));
    }
    r
}

/// Σ c_i ζ(comp_i) with the accumulated error bound.
pub fn zeta_combination(l: &Lin<Composition, Q>, bits: u32) -> Result<Approx> {
    let mut value = BigFloat::from_int(0, bits);
    let mut error = 0.0;
    for (c, x) in l.iter() {
        let z = zeta(c, bits)?;
        let xf = BigFloat::from_q(x, bits);
        value = value.add(&z.value.mul(&xf));
        error += z.error * x.magnitude() + 2.0 * ulp(bits);
    }
    Ok(Approx { value, error })
}

fn product(a: usize, b: usize, bits: u32) -> Result<Approx> {
    let za = zeta(&Composition(vec![a]), bits)?;
    let zb = zeta(&Composition(vec![b]), bits)?;
    let value = za.value.mul(&zb.value);
    let bound = za.value.magnitude().max(zb.value.magnitude()) + 1.0;
    Ok(Approx { value, error: bound * (za.error + zb.error) + ulp(bits) })
}

fn check_pair(a: usize, b: usize) -> Result<()> {
    if a < 2 || b < 2 {
        return Err(Error::NotAdmissible(format!("({}),({})", a, b)));
    }
    Ok(())
}

/// |ζ(a)ζ(b) − ζ(a+b) − ζ(a,b) − ζ(b,a)|.
pub fn harmonic_residual(a: usize, b: usize, bits: u32) -> Result<BigFloat> {
    harmonic_residual_signed(a, b, 1, bits)
}

/// Same identity with ζ(a+b) entering with sign `s`; `s = -1` is a
/// deliberately wrong relation.
pub fn harmonic_residual_signed(a: usize, b: usize, s: i64, bits: u32) -> Result<BigFloat> {
    check_pair(a, b)?;
    let mut rhs = Lin::new();
    rhs.add_term(Composition(vec![a + b]), Q::from_i64(s));
    rhs.add_term(Composition(vec![a, b]), Q::from_i64(1));
    rhs.add_term(Composition(vec![b, a]), Q::from_i64(1));
    let r = zeta_combination(&rhs, bits)?;
    Ok(product(a, b, bits)?.value.sub(&r.value).abs())
}

fn binom(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Right-hand side Σ_{i+j=a+b} (C(i−1,a−1) + C(i−1,b−1)) ζ(i,j).
pub fn shuffle_expansion(a: usize, b: usize) -> Lin<Composition, Q> {
    let mut r = Lin::new();
    for i in 2..a + b {
        let j = a + b - i;
        let c = binom(i - 1, a - 1) + binom(i - 1, b - 1);
        r.add_term(Composition(vec![i, j]), Q::from_i64(c));
    }
    r
}

/// |ζ(a)ζ(b) − Σ_{i+j=a+b} (C(i−1,a−1) + C(i−1,b−1)) ζ(i,j)|.
pub fn shuffle_residual(a: usize, b: usize, bits: u32) -> Result<BigFloat> {
    check_pair(a, b)?;
    let r = zeta_combination(&shuffle_expansion(a, b), bits)?;
    Ok(product(a, b, bits)?.value.sub(&r.value).abs())
}

/// KZ associator truncated at weight W, with a bound on each coefficient's error.
#[derive(Clone, Debug)]
pub struct KzTruncation {
    pub series: Series<BigFloat>,
    pub error: f64,
}

/// All admissible words of length ≤ w, in canonical order.
pub fn admissible_words(w: usize) -> Vec<Word> {
    (2..=w).flat_map(|d| words_of_len(2, d)).filter(|x| x.is_admissible()).collect()
}

/// φ = 1 + Σ (−1)^{depth(w)} ζ(w) reg(w) over admissible words of weight ≤ W.
pub fn phi_kz(w: usize, bits: u32) -> Result<KzTruncation> {
    phi_kz_with(w, bits, |_| None)
}

/// As `phi_kz`, letting `over` replace individual zeta values.
pub fn phi_kz_with(
    w: usize,
    bits: u32,
    over: impl Fn(&Composition) -> Option<BigFloat>,
) -> Result<KzTruncation> {
    if w > MAX_WEIGHT {
        return Err(Error::DegreeTooLarge(w, MAX_WEIGHT));
    }
    let mut t: Lin<Word, BigFloat> = Lin::single(Word::empty(), BigFloat::from_int(1, bits));
    let mut err_per_word: HashMap<Word, f64> = HashMap::new();
    let words = admissible_words(w);
    let zetas = crate::par::map(&words, |x| zeta_word(x, bits));
    for (x, z) in words.iter().zip(zetas) {
        let comp = Composition::from_word(x).expect("admissible");
        let val = over(&comp).unwrap_or(z.value);
        let val = if comp.depth() % 2 == 1 { val.neg() } else { val };
        for (y, c) in reg_word(x)?.terms().iter() {
            let cf = BigFloat::from_q(c, bits);
            t.add_term(y.clone(), val.mul(&cf));
            *err_per_word.entry(y.clone()).or_insert(0.0) += z.error * c.magnitude();
        }
    }
    let error = err_per_word.values().cloned().fold(0.0, f64::max);
    Ok(KzTruncation { series: Series::from_terms(t, w), error })
}

/// Largest residual per condition, with the verdict at tolerance `tol`.
#[derive(Clone, Debug)]
pub struct NumericReport {
    pub weight: usize,
    pub bits: u32,
    pub tol: f64,
    pub max_residual: BTreeMap<String, f64>,
    pub report: MembershipReport,
}

impl NumericReport {
    pub fn passes(&self) -> bool {
        self.max_residual.values().all(|&r| r <= self.tol)
    }
    pub fn worst(&self) -> f64 {
        self.max_residual.values().cloned().fold(0.0, f64::max)
    }
}

const CONDITIONS: [&str; 5] = [
    dmr::COND_GROUPLIKE_V,
    dmr::COND_GROUPLIKE_M,
    dmr::COND_E0,
    dmr::COND_E1,
    dmr::COND_E0E1,
];

/// DMR conditions for φ_KZ at μ = 2πi, evaluated with big floats.
pub fn numeric_dmr_check(w: usize, bits: u32, tol: f64) -> Result<NumericReport> {
    let phi = phi_kz(w, bits)?;
    numeric_dmr_check_of(&phi.series, w, bits, tol)
}

/// DMR conditions at μ² = −4π² for an arbitrary big-float series.
pub fn numeric_dmr_check_of(g: &Series<BigFloat>, w: usize, bits: u32, tol: f64) -> Result<NumericReport> {
    let pi2 = pi_squared(bits + 16).value.with_bits(bits);
    let mu_sq = pi2.mul(&BigFloat::from_int(-4, bits));
    // exact comparison lists every nonzero residual with its magnitude
    let all = dmr::dmr_conditions(g, &mu_sq, 0.0)?;
    let mut max_residual: BTreeMap<String, f64> =
        CONDITIONS.iter().map(|c| (c.to_string(), 0.0)).collect();
    for r in &all.residuals {
        let e = max_residual.entry(r.label.clone()).or_insert(0.0);
        *e = e.max(r.magnitude);
    }
    let report = dmr::dmr_conditions(g, &mu_sq, tol)?;
    Ok(NumericReport { weight: w, bits, tol, max_residual, report })
}

/// Every admissible composition of weight ≤ w, ordered by weight.
pub fn admissible_compositions(w: usize) -> Vec<Composition> {
    let mut comps: Vec<Composition> = admissible_words(w)
        .iter()
        .map(|x| Composition::from_word(x).expect("admissible"))
        .collect();
    comps.sort_by(|a, b| a.weight().cmp(&b.weight()).then_with(|| a.cmp(b)));
    comps
}

/// Decimal digits safely representable at `bits` fractional bits.
pub fn digits_for(bits: u32) -> usize {
    ((bits as f64) * std::f64::consts::LOG10_2).floor().to_usize().unwrap_or(0)
}
