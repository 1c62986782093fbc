//! U(p5) as a PBW smash product U(f3) ⋊ U(f2), with a relation-quotient
//! oracle used to derive and validate the straightening table.

use crate::error::{Error, Result};
use crate::lin::Lin;
use crate::linalg::{solve_affine, Echelon, SparseVec};
use crate::ncalg::{render_lin, Series, Tensor, Word, E0, E1};
use crate::scalar::{qi, Coeff, Q};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

/// Oracle generators after eliminating the degree-one sum relations:
/// 0 = e15, 1 = e25, 2 = e35, 3 = e23 (= e0), 4 = e12 (= e1).
pub const GEN_PAIRS: [(u8, u8); 5] = [(1, 5), (2, 5), (3, 5), (2, 3), (1, 2)];
const OTHER_PAIRS: [(u8, u8); 5] = [(1, 3), (1, 4), (2, 4), (3, 4), (4, 5)];
pub const ORACLE_MAX_DEGREE: usize = 4;

fn all_pairs() -> Vec<(u8, u8)> {
    GEN_PAIRS.iter().chain(OTHER_PAIRS.iter()).copied().collect()
}

/// Free-algebra element on the five oracle generators.
pub type FreePoly = Lin<Vec<u8>>;

fn word_index(w: &[u8]) -> usize {
    w.iter().fold(0usize, |a, &l| a * 5 + l as usize)
}

fn index_word(mut i: usize, d: usize) -> Vec<u8> {
    let mut w = vec![0u8; d];
    for k in (0..d).rev() {
        w[k] = (i % 5) as u8;
        i /= 5;
    }
    w
}

fn free_mul(a: &FreePoly, b: &FreePoly) -> FreePoly {
    let mut r = Lin::new();
    for (u, x) in a.iter() {
        for (v, y) in b.iter() {
            let mut w = u.clone();
            w.extend_from_slice(v);
            r.add_term(w, x.mul(y));
        }
    }
    r
}

fn words_of(d: usize) -> Vec<Vec<u8>> {
    (0..5usize.pow(d as u32)).map(|i| index_word(i, d)).collect()
}

/// Degree-truncated quotient of the free algebra on all e_{ij} by the
/// defining relations of p5.
pub struct Oracle {
    /// Image of each of the ten e_{ij} (i < j) in the five generators.
    pub deg1: BTreeMap<(u8, u8), FreePoly>,
    pub quotient_dim1: usize,
    levels: Vec<Echelon>,
}

impl Oracle {
    pub fn new(d: usize) -> Result<Self> {
        if d > ORACLE_MAX_DEGREE {
            return Err(Error::DegreeTooLarge(d, ORACLE_MAX_DEGREE));
        }
        let pairs = all_pairs();
        let idx: HashMap<(u8, u8), usize> = pairs.iter().enumerate().map(|(k, p)| (*p, k)).collect();
        let key = |i: u8, j: u8| idx[&(i.min(j), i.max(j))];
        let mut e1 = Echelon::new();
        for i in 1..=5u8 {
            let v: SparseVec = (1..=5u8).filter(|&j| j != i).map(|j| (key(i, j), qi(1))).collect();
            e1.insert(&v);
        }
        let quotient_dim1 = 10 - e1.rank();
        let mut deg1 = BTreeMap::new();
        for (k, p) in pairs.iter().enumerate() {
            let r = e1.reduce(&[(k, qi(1))].into_iter().collect());
            if r.keys().any(|&c| c >= 5) {
                return Err(Error::Internal("degree-one elimination left extra generators".into()));
            }
            deg1.insert(*p, r.into_iter().map(|(c, x)| (vec![c as u8], x)).collect::<FreePoly>());
        }
        let mut rels: Vec<FreePoly> = Vec::new();
        for (a, p) in pairs.iter().enumerate() {
            for q in pairs.iter().skip(a + 1) {
                if p.0 != q.0 && p.0 != q.1 && p.1 != q.0 && p.1 != q.1 {
                    let (x, y) = (&deg1[p], &deg1[q]);
                    rels.push(free_mul(x, y).sub(&free_mul(y, x)));
                }
            }
        }
        let mut levels = vec![Echelon::new(), Echelon::new()];
        for deg in 2..=d {
            let mut e = Echelon::new();
            for r in &rels {
                for a in 0..=(deg - 2) {
                    for u in words_of(a) {
                        for v in words_of(deg - 2 - a) {
                            let mut vec = SparseVec::new();
                            for (w, c) in r.iter() {
                                let mut full = u.clone();
                                full.extend_from_slice(w);
                                full.extend_from_slice(&v);
                                *vec.entry(word_index(&full)).or_insert_with(|| qi(0)) += c;
                            }
                            vec.retain(|_, c| !Coeff::is_zero(c));
                            e.insert(&vec);
                        }
                    }
                }
            }
            levels.push(e);
        }
        Ok(Oracle { deg1, quotient_dim1, levels })
    }

    pub fn max_degree(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn quotient_dim(&self, d: usize) -> usize {
        5usize.pow(d as u32) - self.levels[d].rank()
    }

    /// Normal-form coordinates, degree by degree.
    pub fn reduce(&self, a: &FreePoly) -> Result<BTreeMap<usize, SparseVec>> {
        let mut by_deg: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (w, c) in a.iter() {
            if w.len() > self.max_degree() {
                return Err(Error::DegreeTooLarge(w.len(), self.max_degree()));
            }
            *by_deg.entry(w.len()).or_default().entry(word_index(w)).or_insert_with(|| qi(0)) += c;
        }
        let mut r = BTreeMap::new();
        for (d, mut v) in by_deg {
            v.retain(|_, c| !Coeff::is_zero(c));
            let nf = self.levels[d].reduce(&v);
            if !nf.is_empty() {
                r.insert(d, nf);
            }
        }
        Ok(r)
    }

    /// Image of a p5 generator e_{ij} in the five-generator free algebra.
    pub fn generator(&self, i: u8, j: u8) -> FreePoly {
        self.deg1[&(i.min(j), i.max(j))].clone()
    }
}

/// Straightening table: [x, e_{k5}] as a kernel Lie polynomial, for the base
/// letters x = e0 (= e23) and x = e1 (= e12).
#[derive(Clone, Debug, PartialEq)]
pub struct ActionTable {
    pub d: [[Lin<Vec<u8>>; 3]; 2],
}

impl ActionTable {
    pub fn derive(oracle: &Oracle) -> Result<Self> {
        let brackets: Vec<(u8, u8)> = vec![(0, 1), (0, 2), (1, 2)];
        let br_poly = |a: u8, b: u8| -> FreePoly {
            let mut p = Lin::new();
            p.add_term(vec![a, b], qi(1));
            p.add_term(vec![b, a], qi(-1));
            p
        };
        let cand: Vec<SparseVec> = brackets
            .iter()
            .map(|&(a, b)| oracle.reduce(&br_poly(a, b)).map(|m| m.get(&2).cloned().unwrap_or_default()))
            .collect::<Result<_>>()?;
        let mut d: [[Lin<Vec<u8>>; 3]; 2] = Default::default();
        for (xi, x) in [3u8, 4].into_iter().enumerate() {
            for k in 0..3u8 {
                let target = oracle.reduce(&br_poly(x, k))?.get(&2).cloned().unwrap_or_default();
                let keys: BTreeSet<usize> =
                    cand.iter().flat_map(|v| v.keys().copied()).chain(target.keys().copied()).collect();
                let eqs: Vec<(Vec<Q>, Q)> = keys
                    .iter()
                    .map(|key| {
                        let row = cand.iter().map(|v| v.get(key).cloned().unwrap_or_else(|| qi(0))).collect();
                        (row, target.get(key).cloned().unwrap_or_else(|| qi(0)))
                    })
                    .collect();
                let (sol, free) = solve_affine(&eqs, 3, |_| qi(0))
                    .ok_or_else(|| Error::Internal("bracket outside the kernel".into()))?;
                if !free.is_empty() {
                    return Err(Error::Internal("kernel brackets not independent".into()));
                }
                let mut p = Lin::new();
                for (c, &(a, b)) in sol.iter().zip(&brackets) {
                    p.add_scaled(&br_poly(a, b), c);
                }
                d[xi][k as usize] = p;
            }
        }
        Ok(ActionTable { d })
    }

    /// Derivation D_x applied to a kernel word.
    pub fn derive_word(&self, x: u8, k: &[u8]) -> Lin<Vec<u8>> {
        let mut r = Lin::new();
        for i in 0..k.len() {
            for (w, c) in self.d[x as usize][k[i] as usize].iter() {
                let mut full = k[..i].to_vec();
                full.extend_from_slice(w);
                full.extend_from_slice(&k[i + 1..]);
                r.add_term(full, c.clone());
            }
        }
        r
    }
}

pub struct Up5Tables {
    pub oracle: Oracle,
    pub action: ActionTable,
}

/// Oracle at the maximal degree and the straightening table derived from it.
pub fn tables() -> &'static Up5Tables {
    static T: OnceLock<Up5Tables> = OnceLock::new();
    T.get_or_init(|| {
        let oracle = Oracle::new(ORACLE_MAX_DEGREE).expect("oracle");
        let action = ActionTable::derive(&oracle).expect("action table");
        Up5Tables { oracle, action }
    })
}

/// PBW monomial: kernel word in e15, e25, e35 (letters 0..3) followed by a
/// base word in e0, e1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PbwMono {
    pub kernel: Vec<u8>,
    pub base: Word,
}

impl PbwMono {
    pub fn degree(&self) -> usize {
        self.kernel.len() + self.base.len()
    }
    pub fn kernel_letter(k: u8) -> Self {
        PbwMono { kernel: vec![k], base: Word::empty() }
    }
    pub fn base_word(w: Word) -> Self {
        PbwMono { kernel: Vec::new(), base: w }
    }
    /// Word over the five oracle generators.
    pub fn free_word(&self) -> Vec<u8> {
        let mut w = self.kernel.clone();
        w.extend(self.base.0.iter().map(|l| if *l == E0 { 3 } else { 4 }));
        w
    }
}

impl fmt::Display for PbwMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for &k in &self.kernel {
            s.push_str(&format!("e{}5", k + 1));
        }
        if !self.base.is_empty() {
            s.push_str(&format!("{}", self.base));
        }
        if s.is_empty() {
            s.push('1');
        }
        write!(f, "{}", s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct UP5Element {
    pub terms: Lin<PbwMono>,
    pub n: usize,
}

type ActMemo = HashMap<(Word, Vec<u8>), Lin<PbwMono>>;

/// Normal form of (base word)·(kernel word).
fn act(b: &Word, k: &[u8], tab: &ActionTable, memo: &mut ActMemo) -> Lin<PbwMono> {
    if b.is_empty() || k.is_empty() {
        return Lin::single(PbwMono { kernel: k.to_vec(), base: b.clone() }, qi(1));
    }
    let key = (b.clone(), k.to_vec());
    if let Some(r) = memo.get(&key) {
        return r.clone();
    }
    let x = *b.0.last().expect("nonempty");
    let rest = Word(b.0[..b.len() - 1].to_vec());
    // x·k = k·x + D_x(k)
    let mut r = Lin::new();
    for (m, c) in act(&rest, k, tab, memo).iter() {
        let mut base = m.base.clone();
        base.0.push(x);
        r.add_term(PbwMono { kernel: m.kernel.clone(), base }, c.clone());
    }
    for (k2, c) in tab.derive_word(x, k).iter() {
        r.add_scaled(&act(&rest, k2, tab, memo), c);
    }
    memo.insert(key, r.clone());
    r
}

impl UP5Element {
    pub fn zero(n: usize) -> Self {
        UP5Element { terms: Lin::new(), n }
    }
    pub fn one(n: usize) -> Self {
        Self::mono(PbwMono::base_word(Word::empty()), n)
    }
    pub fn mono(m: PbwMono, n: usize) -> Self {
        let terms = if m.degree() <= n { Lin::single(m, qi(1)) } else { Lin::new() };
        UP5Element { terms, n }
    }
    pub fn kernel_gen(k: u8, n: usize) -> Self {
        Self::mono(PbwMono::kernel_letter(k), n)
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }
    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.n != o.n {
            return Err(Error::TruncMismatch(self.n, o.n));
        }
        Ok(UP5Element { terms: self.terms.add(&o.terms), n: self.n })
    }
    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&qi(-1)))
    }
    pub fn scale(&self, c: &Q) -> Self {
        UP5Element { terms: self.terms.scale(c), n: self.n }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.n != o.n {
            return Err(Error::TruncMismatch(self.n, o.n));
        }
        let tab = &tables().action;
        let mut memo = ActMemo::new();
        let mut r = Lin::new();
        for (a, x) in self.terms.iter() {
            for (b, y) in o.terms.iter() {
                if a.degree() + b.degree() > self.n {
                    continue;
                }
                let xy = x.mul(y);
                for (m, c) in act(&a.base, &b.kernel, tab, &mut memo).iter() {
                    let mut kernel = a.kernel.clone();
                    kernel.extend_from_slice(&m.kernel);
                    let base = m.base.concat(&b.base);
                    r.add_term(PbwMono { kernel, base }, c.mul(&xy));
                }
            }
        }
        Ok(UP5Element { terms: r, n: self.n })
    }

    /// Same element written in the free algebra on the oracle generators.
    pub fn free_poly(&self) -> FreePoly {
        self.terms.iter().map(|(m, c)| (m.free_word(), c.clone())).collect()
    }

    pub fn render(&self) -> String {
        render_lin(&self.terms, |m| m.to_string())
    }
}

/// ℓ: e0 ↦ e23, e1 ↦ e12.
pub fn ell(a: &Series) -> UP5Element {
    let terms = a.terms().iter().map(|(w, c)| (PbwMono::base_word(w.clone()), c.clone())).collect();
    UP5Element { terms, n: a.trunc() }
}

/// Image of e_{ab} (a < b ≤ 4) in p4 ≅ f2 with e0 = e23, e1 = e12.
fn p4_image(a: u8, b: u8) -> [i64; 2] {
    match (a.min(b), a.max(b)) {
        (1, 2) | (3, 4) => [0, 1],
        (2, 3) | (1, 4) => [1, 0],
        (1, 3) | (2, 4) => [-1, -1],
        _ => unreachable!("pair outside 1..=4"),
    }
}

/// pr_i on the five generators, as (e0, e1)-coefficients. Point i is erased
/// and point 5 takes the label i.
pub fn pr_generator(i: u8, g: usize) -> [i64; 2] {
    let (a, b) = GEN_PAIRS[g];
    if a == i || b == i {
        return [0, 0];
    }
    let rl = |x: u8| if x == 5 { i } else { x };
    p4_image(rl(a), rl(b))
}

fn linear_series(c: [i64; 2], n: usize) -> Series {
    let mut t = Lin::new();
    t.add_term(Word::letter(E0), qi(c[0]));
    t.add_term(Word::letter(E1), qi(c[1]));
    Series::from_terms(t, n)
}

pub fn pr(i: u8, a: &UP5Element) -> Series {
    let n = a.n;
    let imgs: Vec<Series> = (0..5).map(|g| linear_series(pr_generator(i, g), n)).collect();
    let mut r = Series::zero(n);
    for (m, c) in a.terms.iter() {
        let mut p = Series::one(n);
        for l in m.free_word() {
            p = p.mul(&imgs[l as usize]).expect("same n");
        }
        r = r.add(&p.scale(c)).expect("same n");
    }
    r
}

/// pr12 = (pr1 ⊗ pr2) ∘ diag, an algebra morphism into the tensor square.
pub fn pr12(a: &UP5Element) -> Tensor {
    let n = a.n;
    let one = Series::one(n);
    let imgs: Vec<Tensor> = (0..5)
        .map(|g| {
            let l = Tensor::outer(&linear_series(pr_generator(1, g), n), &one);
            let r = Tensor::outer(&one, &linear_series(pr_generator(2, g), n));
            l.add(&r).expect("same n")
        })
        .collect();
    let mut memo: HashMap<Vec<u8>, Tensor> = HashMap::new();
    memo.insert(Vec::new(), Tensor::one(n));
    let mut r = Tensor::zero(n);
    for (m, c) in a.terms.iter() {
        let w = m.free_word();
        let img = pr12_word(&w, &imgs, &mut memo);
        r = r.add(&img.scale(c)).expect("same n");
    }
    r
}

fn pr12_word(w: &[u8], imgs: &[Tensor], memo: &mut HashMap<Vec<u8>, Tensor>) -> Tensor {
    if let Some(t) = memo.get(w) {
        return t.clone();
    }
    let p = pr12_word(&w[..w.len() - 1], imgs, memo);
    let t = p.mul(&imgs[w[w.len() - 1] as usize]).expect("same n");
    memo.insert(w.to_vec(), t.clone());
    t
}

pub type Mat3<T> = [[T; 3]; 3];

fn mat_identity(n: usize) -> Mat3<UP5Element> {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { UP5Element::one(n) } else { UP5Element::zero(n) }))
}

pub fn mat_mul(a: &Mat3<UP5Element>, b: &Mat3<UP5Element>) -> Result<Mat3<UP5Element>> {
    let n = a[0][0].n;
    let mut m: Mat3<UP5Element> = std::array::from_fn(|_| std::array::from_fn(|_| UP5Element::zero(n)));
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                m[i][j] = m[i][j].add(&a[i][k].mul(&b[k][j])?)?;
            }
        }
    }
    Ok(m)
}

/// ϖ of one oracle generator.
pub fn varpi_generator(g: u8, n: usize) -> Mat3<UP5Element> {
    let mut m: Mat3<UP5Element> = std::array::from_fn(|_| std::array::from_fn(|_| UP5Element::zero(n)));
    if g < 3 {
        // e_{i5}·e_{g5} is already of the form (·)e_{g5}
        for i in 0..3 {
            m[i][g as usize] = UP5Element::kernel_gen(i as u8, n);
        }
        return m;
    }
    let x = if g == 3 { E0 } else { E1 };
    let tab = &tables().action;
    for i in 0..3 {
        m[i][i] = UP5Element::mono(PbwMono::base_word(Word::letter(x)), n);
        // e_{i5}x = x e_{i5} − D_x(e_{i5})
        for (w, c) in tab.d[x as usize][i].iter() {
            let j = *w.last().expect("degree two") as usize;
            let pre = PbwMono { kernel: w[..w.len() - 1].to_vec(), base: Word::empty() };
            m[i][j] = m[i][j].sub(&UP5Element::mono(pre, n).scale(c)).expect("same n");
        }
    }
    m
}

/// ϖ, computed multiplicatively from the generator matrices.
pub fn varpi(a: &UP5Element) -> Result<Mat3<UP5Element>> {
    let n = a.n;
    let gens: Vec<Mat3<UP5Element>> = (0..5).map(|g| varpi_generator(g, n)).collect();
    let mut memo: HashMap<Vec<u8>, Mat3<UP5Element>> = HashMap::new();
    memo.insert(Vec::new(), mat_identity(n));
    let mut r: Mat3<UP5Element> = std::array::from_fn(|_| std::array::from_fn(|_| UP5Element::zero(n)));
    for (m, c) in a.terms.iter() {
        let mw = varpi_word(&m.free_word(), &gens, &mut memo)?;
        for i in 0..3 {
            for j in 0..3 {
                r[i][j] = r[i][j].add(&mw[i][j].scale(c))?;
            }
        }
    }
    Ok(r)
}

fn varpi_word(
    w: &[u8],
    gens: &[Mat3<UP5Element>],
    memo: &mut HashMap<Vec<u8>, Mat3<UP5Element>>,
) -> Result<Mat3<UP5Element>> {
    if let Some(m) = memo.get(w) {
        return Ok(m.clone());
    }
    let p = varpi_word(&w[..w.len() - 1], gens, memo)?;
    let m = mat_mul(&p, &gens[w[w.len() - 1] as usize])?;
    memo.insert(w.to_vec(), m.clone());
    Ok(m)
}

/// Residual of e_{i5}·a = Σ_j ϖ(a)_{ij}·e_{j5}, one entry per row.
pub fn varpi_residual(a: &UP5Element, m: &Mat3<UP5Element>) -> Result<[UP5Element; 3]> {
    let n = a.n;
    let mut out: [UP5Element; 3] = std::array::from_fn(|_| UP5Element::zero(n));
    for i in 0..3 {
        let mut r = UP5Element::kernel_gen(i as u8, n).mul(a)?;
        for j in 0..3 {
            r = r.sub(&m[i][j].mul(&UP5Element::kernel_gen(j as u8, n))?)?;
        }
        out[i] = r;
    }
    Ok(out)
}

/// M3(pr12) ∘ ϖ ∘ ℓ.
pub fn rho(a: &Series) -> Result<Mat3<Tensor>> {
    let m = varpi(&ell(a))?;
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| pr12(&m[i][j]))))
}
