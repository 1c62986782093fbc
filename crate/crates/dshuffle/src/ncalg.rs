//! Truncated noncommutative power series in two letters.

use crate::error::{Error, Result};
use crate::lin::Lin;
use crate::scalar::{Coeff, Q};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

pub const E0: u8 = 0;
pub const E1: u8 = 1;

/// A word over a small alphabet; ordered by length, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }
    pub fn letter(l: u8) -> Self {
        Word(vec![l])
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn concat(&self, o: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Word(v)
    }
    /// `e0^{k1-1} e1 ... e0^{km-1} e1`
    pub fn from_composition(ks: &[usize]) -> Word {
        let mut v = Vec::new();
        for &k in ks {
            v.extend(std::iter::repeat_n(E0, k - 1));
            v.push(E1);
        }
        Word(v)
    }
    pub fn parse(s: &str) -> Result<Word> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Word::empty());
        }
        let b = s.as_bytes();
        if b.len() % 2 != 0 {
            return Err(Error::Parse(s.to_string()));
        }
        let mut v = Vec::new();
        for ch in b.chunks(2) {
            match ch {
                b"e0" => v.push(E0),
                b"e1" => v.push(E1),
                _ => return Err(Error::Parse(s.to_string())),
            }
        }
        Ok(Word(v))
    }
    pub fn is_admissible(&self) -> bool {
        self.0.first() == Some(&E0) && self.0.last() == Some(&E1)
    }
}

impl Ord for Word {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.len().cmp(&o.0.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "e{}", l)?;
        }
        Ok(())
    }
}

pub fn render_lin<K: Ord + Clone, C: Coeff>(
    l: &Lin<K, C>,
    key: impl Fn(&K) -> String,
) -> String {
    if l.is_zero() {
        return "0".to_string();
    }
    let parts: Vec<String> = l
        .iter()
        .map(|(k, c)| {
            let ks = key(k);
            if c == &C::one() {
                ks
            } else {
                format!("{}*{}", c.render(), ks)
            }
        })
        .collect();
    parts.join(" + ")
}

/// Series in e0, e1 truncated at total degree `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<C: Coeff = Q> {
    terms: Lin<Word, C>,
    n: usize,
}

fn check(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::TruncMismatch(a, b))
    }
}

impl<C: Coeff> Series<C> {
    pub fn zero(n: usize) -> Self {
        Series { terms: Lin::new(), n }
    }
    pub fn one(n: usize) -> Self {
        Self::scalar(C::one(), n)
    }
    pub fn scalar(c: C, n: usize) -> Self {
        Self::from_terms(Lin::single(Word::empty(), c), n)
    }
    pub fn word(w: Word, n: usize) -> Self {
        Self::from_terms(Lin::single(w, C::one()), n)
    }
    pub fn letter(l: u8, n: usize) -> Self {
        Self::word(Word::letter(l), n)
    }
    /// Drops every word above degree `n`.
    pub fn from_terms(terms: Lin<Word, C>, n: usize) -> Self {
        Series { terms: terms.filter(|w| w.len() <= n), n }
    }
    pub fn trunc(&self) -> usize {
        self.n
    }
    pub fn terms(&self) -> &Lin<Word, C> {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }
    /// Explicit change of truncation (never implicit).
    pub fn retrunc(&self, n: usize) -> Self {
        Self::from_terms(self.terms.clone(), n)
    }

    pub fn coeff(&self, w: &Word) -> Result<C> {
        if w.len() > self.n {
            return Err(Error::BeyondTruncation(w.len(), self.n));
        }
        Ok(self.terms.get(w))
    }
    pub fn constant(&self) -> C {
        self.terms.get(&Word::empty())
    }
    pub fn degree_part(&self, d: usize) -> Self {
        Series { terms: self.terms.filter(|w| w.len() == d), n: self.n }
    }
    /// Lowest degree with a nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().next().map(|w| w.len())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        check(self.n, o.n)?;
        Ok(Series { terms: self.terms.add(&o.terms), n: self.n })
    }
    pub fn sub(&self, o: &Self) -> Result<Self> {
        check(self.n, o.n)?;
        Ok(Series { terms: self.terms.sub(&o.terms), n: self.n })
    }
    pub fn scale(&self, c: &C) -> Self {
        Series { terms: self.terms.scale(c), n: self.n }
    }
    pub fn neg(&self) -> Self {
        Series { terms: self.terms.neg(), n: self.n }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        check(self.n, o.n)?;
        let mut r = Lin::new();
        for (u, a) in self.terms.iter() {
            for (v, b) in o.terms.iter() {
                if u.len() + v.len() > self.n {
                    // `o` is ordered by length, so no later v fits either
                    break;
                }
                r.add_term(u.concat(v), a.mul(b));
            }
        }
        Ok(Series { terms: r, n: self.n })
    }

    pub fn shuffle(&self, o: &Self) -> Result<Self> {
        check(self.n, o.n)?;
        let mut r = Lin::new();
        let mut memo = HashMap::new();
        for (u, a) in self.terms.iter() {
            for (v, b) in o.terms.iter() {
                if u.len() + v.len() > self.n {
                    break;
                }
                let ab = a.mul(b);
                for (w, m) in shuffle_words(&u.0, &v.0, &mut memo) {
                    r.add_term(Word(w), ab.mul(&C::from_i64(m)));
                }
            }
        }
        Ok(Series { terms: r, n: self.n })
    }

    pub fn pow(&self, k: usize) -> Result<Self> {
        let mut r = Self::one(self.n);
        for _ in 0..k {
            r = r.mul(self)?;
        }
        Ok(r)
    }

    pub fn exp(&self) -> Result<Self> {
        if !self.constant().is_zero() {
            return Err(Error::ConstantTerm("exp"));
        }
        let mut r = Self::one(self.n);
        let mut p = Self::one(self.n);
        for k in 1..=self.n {
            p = p.mul(self)?.div_int(k as i64);
            r = r.add(&p)?;
        }
        Ok(r)
    }

    pub fn log(&self) -> Result<Self> {
        if self.constant() != C::one() {
            return Err(Error::ConstantTerm("log"));
        }
        let x = self.sub(&Self::one(self.n))?;
        let mut r = Self::zero(self.n);
        let mut p = Self::one(self.n);
        for k in 1..=self.n {
            p = p.mul(&x)?;
            let t = p.div_int(k as i64);
            r = if k % 2 == 1 { r.add(&t)? } else { r.sub(&t)? };
        }
        Ok(r)
    }

    /// Inverse of a series with constant term 1.
    pub fn inverse(&self) -> Result<Self> {
        if self.constant() != C::one() {
            return Err(Error::ConstantTerm("inverse"));
        }
        let x = Self::one(self.n).sub(self)?;
        let mut r = Self::one(self.n);
        let mut p = Self::one(self.n);
        for _ in 1..=self.n {
            p = p.mul(&x)?;
            r = r.add(&p)?;
        }
        Ok(r)
    }

    pub fn div_int(&self, k: i64) -> Self {
        let mut t = Lin::new();
        for (w, c) in self.terms.iter() {
            t.add_term(w.clone(), c.div_i64(k));
        }
        Series { terms: t, n: self.n }
    }

    /// Image under the algebra morphism sending letter `i` to `images[i]`.
    pub fn substitute(&self, images: &[Series<C>]) -> Result<Self> {
        let n = self.n;
        for im in images {
            check(n, im.n)?;
        }
        let mut cache: HashMap<Vec<u8>, Series<C>> = HashMap::new();
        cache.insert(Vec::new(), Self::one(n));
        let mut r = Self::zero(n);
        for (w, c) in self.terms.iter() {
            let img = word_image(&w.0, images, &mut cache)?;
            r = r.add(&img.scale(c))?;
        }
        Ok(r)
    }

    pub fn delta(&self) -> Tensor<C> {
        let mut r = Lin::new();
        for (w, c) in self.terms.iter() {
            let k = w.len();
            for mask in 0u32..(1u32 << k) {
                let mut a = Vec::new();
                let mut b = Vec::new();
                for (i, &l) in w.0.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        a.push(l);
                    } else {
                        b.push(l);
                    }
                }
                r.add_term((Word(a), Word(b)), c.clone());
            }
        }
        Tensor::from_terms(r, self.n)
    }

    /// Δ(a) − a⊗a; zero iff group-like at this truncation.
    pub fn grouplike_residual(&self) -> Tensor<C> {
        let aa = Tensor::outer(self, self);
        Tensor::from_terms(self.delta().terms.sub(&aa.terms), self.n)
    }

    pub fn is_grouplike(&self) -> bool {
        self.constant() == C::one() && self.grouplike_residual().is_zero()
    }

    pub fn is_primitive(&self) -> bool {
        if !self.constant().is_zero() {
            return false;
        }
        let one = Self::one(self.n);
        let p = Tensor::outer(self, &one).add(&Tensor::outer(&one, self)).expect("same n");
        self.delta() == p
    }

    /// Γ_g(t) = exp(Σ (−1)^{k+1} (g|e0^{k−1}e1) t^k / k).
    pub fn gamma_series(&self) -> UniSeries<C> {
        let mut s = vec![C::zero(); self.n + 1];
        for (k, slot) in s.iter_mut().enumerate().skip(1) {
            let c = self.terms.get(&Word::from_composition(&[k]));
            let t = c.div_i64(k as i64);
            *slot = if k % 2 == 1 { t } else { t.neg() };
        }
        UniSeries { c: s }.exp()
    }

    pub fn render(&self) -> String {
        render_lin(&self.terms, |w| w.to_string())
    }
}

impl<C: Coeff> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

fn word_image<C: Coeff>(
    w: &[u8],
    images: &[Series<C>],
    cache: &mut HashMap<Vec<u8>, Series<C>>,
) -> Result<Series<C>> {
    if let Some(s) = cache.get(w) {
        return Ok(s.clone());
    }
    let (pre, last) = w.split_at(w.len() - 1);
    let p = word_image(pre, images, cache)?;
    let r = p.mul(&images[last[0] as usize])?;
    cache.insert(w.to_vec(), r.clone());
    Ok(r)
}

type ShuffleMemo = HashMap<(Vec<u8>, Vec<u8>), Vec<(Vec<u8>, i64)>>;

/// All interleavings of `u` and `v`, merged with multiplicities.
pub fn shuffle_words(u: &[u8], v: &[u8], memo: &mut ShuffleMemo) -> Vec<(Vec<u8>, i64)> {
    if u.is_empty() {
        return vec![(v.to_vec(), 1)];
    }
    if v.is_empty() {
        return vec![(u.to_vec(), 1)];
    }
    let key = (u.to_vec(), v.to_vec());
    if let Some(r) = memo.get(&key) {
        return r.clone();
    }
    let mut acc: HashMap<Vec<u8>, i64> = HashMap::new();
    for (w, m) in shuffle_words(&u[1..], v, memo) {
        let mut x = vec![u[0]];
        x.extend(w);
        *acc.entry(x).or_default() += m;
    }
    for (w, m) in shuffle_words(u, &v[1..], memo) {
        let mut x = vec![v[0]];
        x.extend(w);
        *acc.entry(x).or_default() += m;
    }
    let mut r: Vec<_> = acc.into_iter().collect();
    r.sort();
    memo.insert(key, r.clone());
    r
}

/// Element of the completed tensor square, truncated by total degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<C: Coeff = Q> {
    terms: Lin<(Word, Word), C>,
    n: usize,
}

impl<C: Coeff> Tensor<C> {
    pub fn zero(n: usize) -> Self {
        Tensor { terms: Lin::new(), n }
    }
    pub fn one(n: usize) -> Self {
        Self::from_terms(Lin::single((Word::empty(), Word::empty()), C::one()), n)
    }
    pub fn from_terms(terms: Lin<(Word, Word), C>, n: usize) -> Self {
        Tensor { terms: terms.filter(|(a, b)| a.len() + b.len() <= n), n }
    }
    pub fn outer(a: &Series<C>, b: &Series<C>) -> Self {
        let mut r = Lin::new();
        for (u, x) in a.terms.iter() {
            for (v, y) in b.terms.iter() {
                if u.len() + v.len() <= a.n {
                    r.add_term((u.clone(), v.clone()), x.mul(y));
                }
            }
        }
        Tensor { terms: r, n: a.n }
    }
    pub fn trunc(&self) -> usize {
        self.n
    }
    pub fn terms(&self) -> &Lin<(Word, Word), C> {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }
    pub fn coeff(&self, u: &Word, v: &Word) -> C {
        self.terms.get(&(u.clone(), v.clone()))
    }
    pub fn add(&self, o: &Self) -> Result<Self> {
        check(self.n, o.n)?;
        Ok(Tensor { terms: self.terms.add(&o.terms), n: self.n })
    }
    pub fn sub(&self, o: &Self) -> Result<Self> {
        check(self.n, o.n)?;
        Ok(Tensor { terms: self.terms.sub(&o.terms), n: self.n })
    }
    pub fn scale(&self, c: &C) -> Self {
        Tensor { terms: self.terms.scale(c), n: self.n }
    }
    pub fn mul(&self, o: &Self) -> Result<Self> {
        check(self.n, o.n)?;
        let mut r = Lin::new();
        for ((a, b), x) in self.terms.iter() {
            for ((c, d), y) in o.terms.iter() {
                if a.len() + b.len() + c.len() + d.len() <= self.n {
                    r.add_term((a.concat(c), b.concat(d)), x.mul(y));
                }
            }
        }
        Ok(Tensor { terms: r, n: self.n })
    }
    /// Apply a linear map factorwise.
    pub fn map_factors(&self, mut f: impl FnMut(&Word) -> Series<C>) -> Result<Self> {
        let mut r = Self::zero(self.n);
        let mut memo: HashMap<Word, Series<C>> = HashMap::new();
        for ((a, b), x) in self.terms.iter() {
            let fa = memo.entry(a.clone()).or_insert_with(|| f(a)).clone();
            let fb = memo.entry(b.clone()).or_insert_with(|| f(b)).clone();
            r = r.add(&Tensor::outer(&fa, &fb).scale(x))?;
        }
        Ok(r)
    }
    pub fn render(&self) -> String {
        render_lin(&self.terms, |(a, b)| format!("{}(x){}", a, b))
    }
}

/// Univariate power series in t truncated at the length of `c` minus one.
#[derive(Clone, Debug, PartialEq)]
pub struct UniSeries<C: Coeff = Q> {
    pub c: Vec<C>,
}

impl<C: Coeff> UniSeries<C> {
    pub fn mul(&self, o: &Self) -> Self {
        let n = self.c.len();
        let mut r = vec![C::zero(); n];
        for i in 0..n {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                r[i + j] = r[i + j].add(&self.c[i].mul(&o.c[j]));
            }
        }
        UniSeries { c: r }
    }
    pub fn exp(&self) -> Self {
        let n = self.c.len();
        let mut r = vec![C::zero(); n];
        r[0] = C::one();
        let mut r = UniSeries { c: r };
        let mut p = r.clone();
        for k in 1..n {
            p = p.mul(self);
            p.c.iter_mut().for_each(|x| *x = x.div_i64(k as i64));
            for i in 0..n {
                r.c[i] = r.c[i].add(&p.c[i]);
            }
        }
        r
    }
    /// Substitute a series with zero constant term for t.
    pub fn eval_at(&self, x: &Series<C>) -> Result<Series<C>> {
        let n = x.trunc();
        let mut r = Series::zero(n);
        let mut p = Series::one(n);
        for (k, c) in self.c.iter().enumerate() {
            if k > 0 {
                p = p.mul(x)?;
            }
            r = r.add(&p.scale(c))?;
        }
        Ok(r)
    }
}

/// Commuting bookkeeping letters α0^a α1^b used by the regularization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AuxCommutingLetters {
    pub a: usize,
    pub b: usize,
}

/// Regularization of an admissible word, computed as the literal composite
/// e_i ↦ e_i⊗1 − 1⊗α_i followed by v⊗α0^a α1^b ↦ e1^b v e0^a.
pub fn reg_word(w: &Word) -> Result<Series<Q>> {
    if !w.is_admissible() {
        return Err(Error::NotAdmissible(w.to_string()));
    }
    let mut acc: Lin<(Word, AuxCommutingLetters), Q> = Lin::single(
        (Word::empty(), AuxCommutingLetters { a: 0, b: 0 }),
        Coeff::one(),
    );
    for &l in &w.0 {
        let mut next = Lin::new();
        for ((v, al), c) in acc.iter() {
            next.add_term((v.concat(&Word::letter(l)), *al), c.clone());
            let mut al2 = *al;
            if l == E0 {
                al2.a += 1;
            } else {
                al2.b += 1;
            }
            next.add_term((v.clone(), al2), Coeff::neg(c));
        }
        acc = next;
    }
    let mut r = Lin::new();
    for ((v, al), c) in acc.iter() {
        let mut x = vec![E1; al.b];
        x.extend_from_slice(&v.0);
        x.extend(std::iter::repeat_n(E0, al.a));
        r.add_term(Word(x), c.clone());
    }
    Ok(Series::from_terms(r, w.len()))
}

/// All words over `k` letters of length exactly `d`, in canonical order.
pub fn words_of_len(k: u8, d: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..d {
        let mut next = Vec::with_capacity(out.len() * k as usize);
        for w in &out {
            for l in 0..k {
                let mut v = w.0.clone();
                v.push(l);
                next.push(Word(v));
            }
        }
        out = next;
    }
    out
}
