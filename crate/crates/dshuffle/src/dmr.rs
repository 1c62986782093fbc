//! Group laws on G^DR and G^B, the associated automorphisms and comparison
//! maps, membership tests for the double shuffle and associator sets, the
//! truncated associator solver, and the torsor-level checks.

use crate::betti_side::{delta_m_b, delta_w_b_of, magnus, mb_class, to_yhat_basis, wb_of_mb, GroupAlg, MBElement};
use crate::braids::up5::{tables, PbwMono, UP5Element};
use crate::dr_side::{m_class, to_y_basis, MElement, WElement, YMonomial};
use crate::error::{Error, Result};
use crate::lin::Lin;
use crate::linalg::{solve_affine, Echelon, SparseVec};
use crate::ncalg::{words_of_len, Series, Tensor, Word, E0, E1};
use crate::scalar::{qi, Coeff, Q};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Largest truncation accepted by the associator solver.
pub const SOLVER_MAX_DEGREE: usize = 6;

// ---------------------------------------------------------------------------
// Reports

#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub label: String,
    pub degree: usize,
    pub witness: String,
    pub magnitude: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MembershipReport {
    pub verdict: bool,
    pub residuals: Vec<Residual>,
}

impl MembershipReport {
    fn from_residuals(residuals: Vec<Residual>) -> Self {
        MembershipReport { verdict: residuals.is_empty(), residuals }
    }

    pub fn has(&self, label: &str) -> bool {
        self.residuals.iter().any(|r| r.label == label)
    }
}

impl fmt::Display for MembershipReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.verdict {
            return write!(f, "member");
        }
        for r in &self.residuals {
            writeln!(f, "{}: degree {} at {} (|r| = {:.3e})", r.label, r.degree, r.witness, r.magnitude)?;
        }
        Ok(())
    }
}

pub const COND_GROUPLIKE_V: &str = "group-like in V";
pub const COND_GROUPLIKE_M: &str = "Gamma^-1 g . 1 group-like in M";
pub const COND_E0: &str = "(g|e0) = 0";
pub const COND_E1: &str = "(g|e1) = 0";
pub const COND_E0E1: &str = "(g|e0e1) = mu^2/24";
pub const COND_QUAD_B: &str = "mu^2 = 1 + 24(g|e0e1)";
pub const COND_PENTAGON: &str = "pentagon";

fn significant<C: Coeff>(c: &C, tol: f64) -> bool {
    if tol == 0.0 {
        !c.is_zero()
    } else {
        c.magnitude() > tol
    }
}

fn tensor_residual<C: Coeff>(label: &str, r: &Lin<(Word, Word), C>, tol: f64) -> Option<Residual> {
    let hits: Vec<_> = r.iter().filter(|(_, c)| significant(*c, tol)).collect();
    let ((a, b), _) = hits.iter().min_by_key(|((a, b), _)| a.len() + b.len())?;
    Some(Residual {
        label: label.into(),
        degree: a.len() + b.len(),
        witness: format!("{}(x){}", a, b),
        magnitude: hits.iter().map(|(_, c)| c.magnitude()).fold(0.0, f64::max),
    })
}

fn scalar_residual<C: Coeff>(label: &str, degree: usize, witness: &str, r: &C, tol: f64) -> Option<Residual> {
    significant(r, tol).then(|| Residual {
        label: label.into(),
        degree,
        witness: witness.into(),
        magnitude: r.magnitude(),
    })
}

fn coeff_at<C: Coeff>(g: &Series<C>, w: &str) -> C {
    g.terms().get(&Word::parse(w).expect("literal word"))
}

/// Γ_g(−e1)^{-1}.
pub fn gamma_of<C: Coeff>(g: &Series<C>) -> Result<Series<C>> {
    let t = Series::letter(E1, g.trunc()).neg();
    g.gamma_series().eval_at(&t)?.inverse()
}

fn grouplike_v<C: Coeff>(g: &Series<C>, tol: f64) -> Option<Residual> {
    let c0 = g.constant().sub(&C::one());
    scalar_residual(COND_GROUPLIKE_V, 0, "1", &c0, tol)
        .or_else(|| tensor_residual(COND_GROUPLIKE_V, g.grouplike_residual().terms(), tol))
}

/// Conditions defining DMR_μ, with μ entering only through μ². A zero
/// tolerance means exact comparison.
pub fn dmr_conditions<C: Coeff>(g: &Series<C>, mu_sq: &C, tol: f64) -> Result<MembershipReport> {
    let mut res = Vec::new();
    res.extend(grouplike_v(g, tol));
    let m = m_class(&gamma_of(g)?.mul(g)?);
    res.extend(tensor_residual(COND_GROUPLIKE_M, &m.grouplike_residual(), tol));
    res.extend(scalar_residual(COND_E0, 1, "e0", &coeff_at(g, "e0"), tol));
    res.extend(scalar_residual(COND_E1, 1, "e1", &coeff_at(g, "e1"), tol));
    if g.trunc() >= 2 {
        let r = coeff_at(g, "e0e1").sub(&mu_sq.div_i64(24));
        res.extend(scalar_residual(COND_E0E1, 2, "e0e1", &r, tol));
    }
    Ok(MembershipReport::from_residuals(res))
}

// ---------------------------------------------------------------------------
// G^DR

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AutVariant {
    /// Algebra automorphism.
    Algebra,
    /// Module automorphism a ↦ aut(a)·g.
    Module,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    V,
    W,
    M,
}

/// A point (μ, g) of G^DR; `g` is group-like.
#[derive(Clone, Debug, PartialEq)]
pub struct GDRPoint {
    pub mu: Q,
    pub g: Series,
}

impl GDRPoint {
    pub fn identity(n: usize) -> Self {
        GDRPoint { mu: qi(1), g: Series::one(n) }
    }

    pub fn new(mu: Q, g: Series) -> Result<Self> {
        if !g.is_grouplike() {
            return Err(Error::Internal("point is not group-like".into()));
        }
        Ok(GDRPoint { mu, g })
    }

    pub fn trunc(&self) -> usize {
        self.g.trunc()
    }

    fn images(&self) -> Result<[Series; 2]> {
        let n = self.trunc();
        let e0 = Series::letter(E0, n).scale(&self.mu);
        let e1 = Series::letter(E1, n).scale(&self.mu);
        Ok([self.g.mul(&e0)?.mul(&self.g.inverse()?)?, e1])
    }

    /// e0 ↦ g·μe0·g^{-1}, e1 ↦ μe1.
    pub fn aut1(&self, a: &Series) -> Result<Series> {
        a.substitute(&self.images()?)
    }

    pub fn aut10(&self, a: &Series) -> Result<Series> {
        self.aut1(a)?.mul(&self.g)
    }

    pub fn aut(&self, variant: AutVariant, a: &Series) -> Result<Series> {
        match variant {
            AutVariant::Algebra => self.aut1(a),
            AutVariant::Module => self.aut10(a),
        }
    }

    pub fn star(&self, o: &GDRPoint) -> Result<GDRPoint> {
        let g = self.aut10(&o.g)?;
        if !g.is_grouplike() {
            return Err(Error::Internal("product is not group-like".into()));
        }
        Ok(GDRPoint { mu: &self.mu * &o.mu, g })
    }

    /// ⊛-inverse: (1/μ, x) with aut^{(1)}(x) = g^{-1}, solved degree by degree.
    pub fn inverse(&self) -> Result<GDRPoint> {
        if Coeff::is_zero(&self.mu) {
            return Err(Error::ZeroInput);
        }
        let n = self.trunc();
        let target = self.g.inverse()?;
        let images = self.images()?;
        let mut x = Series::one(n);
        let mut mu_d = qi(1);
        for d in 1..=n {
            mu_d = &mu_d * &self.mu;
            let r = target.sub(&x.substitute(&images)?)?.degree_part(d);
            x = x.add(&r.scale(&(qi(1) / &mu_d)))?;
        }
        let p = GDRPoint { mu: qi(1) / &self.mu, g: x };
        if self.star(&p)? != GDRPoint::identity(n) {
            return Err(Error::Internal("inverse check failed".into()));
        }
        Ok(p)
    }

    /// Γ(μ, g) = Γ_g(−e1)^{-1}.
    pub fn gamma(&self) -> Result<Series> {
        gamma_of(&self.g)
    }

    /// Ad_Γ ∘ aut^{(1)}.
    pub fn gamma_aut_w(&self, a: &Series) -> Result<Series> {
        let gam = self.gamma()?;
        gam.mul(&self.aut1(a)?)?.mul(&gam.inverse()?)
    }

    /// ℓ_Γ ∘ aut^{(10)} on a representative, followed by the module class.
    pub fn gamma_aut_m(&self, a: &Series) -> Result<MElement> {
        Ok(m_class(&self.gamma()?.mul(&self.aut10(a)?)?))
    }

    /// Betti-to-de Rham comparison: aut ∘ Magnus, optionally twisted by Γ
    /// (conjugation for V and W, left multiplication for M). The M result is
    /// returned as its class.
    pub fn comp(&self, space: Space, variant: AutVariant, twisted: bool, a: &GroupAlg) -> Result<Series> {
        let n = self.trunc();
        let mut x = self.aut(variant, &magnus(a, n))?;
        if twisted {
            let gam = self.gamma()?;
            x = match space {
                Space::M => gam.mul(&x)?,
                _ => gam.mul(&x)?.mul(&gam.inverse()?)?,
            };
        }
        if space == Space::M {
            x = Series::from_terms(m_class(&x).terms, n);
        }
        Ok(x)
    }
}

impl fmt::Display for GDRPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(mu = {}, g = {})", self.mu, self.g)
    }
}

/// Γ(p⊛q) = Γ(p)·aut^{(1)}_p(Γ(q)).
pub fn gamma_cocycle_check(p: &GDRPoint, q: &GDRPoint) -> Result<bool> {
    let lhs = p.star(q)?.gamma()?;
    let rhs = p.gamma()?.mul(&p.aut1(&q.gamma()?)?)?;
    Ok(lhs == rhs)
}

pub fn is_dmr(p: &GDRPoint) -> Result<MembershipReport> {
    dmr_conditions(&p.g, &(&p.mu * &p.mu), 0.0)
}

/// Membership in the left group DMR^DR: the DMR conditions with (g|e0e1) = 0
/// and μ unconstrained.
pub fn is_dmr_group(p: &GDRPoint) -> Result<MembershipReport> {
    dmr_conditions(&p.g, &qi(0), 0.0)
}

fn linear_terms_vanish(g: &Series) -> bool {
    Coeff::is_zero(&coeff_at(g, "e0")) && Coeff::is_zero(&coeff_at(g, "e1"))
}

/// G^DR_quad: (g|e0) = (g|e1) = (g|e0e1) = 0.
pub fn in_quad_dr(p: &GDRPoint) -> bool {
    linear_terms_vanish(&p.g) && Coeff::is_zero(&coeff_at(&p.g, "e0e1"))
}

/// G^{DR,B}_quad: (Φ|e0) = (Φ|e1) = 0, (Φ|e0e1) = μ²/24.
pub fn in_quad_dr_b(p: &GDRPoint) -> bool {
    linear_terms_vanish(&p.g) && coeff_at(&p.g, "e0e1") == &p.mu * &p.mu / qi(24)
}

// ---------------------------------------------------------------------------
// G^B in exp-coordinates

/// A point (μ, g) of G^B with g stored through X_i ↦ exp(e_i).
#[derive(Clone, Debug, PartialEq)]
pub struct GBPoint {
    pub mu: Q,
    pub g: Series,
}

impl GBPoint {
    pub fn identity(n: usize) -> Self {
        GBPoint { mu: qi(1), g: Series::one(n) }
    }

    pub fn new(mu: Q, g: Series) -> Result<Self> {
        if !g.is_grouplike() {
            return Err(Error::Internal("point is not group-like".into()));
        }
        Ok(GBPoint { mu, g })
    }

    pub fn trunc(&self) -> usize {
        self.g.trunc()
    }

    /// The same point seen in G^DR.
    pub fn to_dr(&self) -> GDRPoint {
        GDRPoint { mu: self.mu.clone(), g: self.g.clone() }
    }

    pub fn from_dr(p: &GDRPoint) -> Self {
        GBPoint { mu: p.mu.clone(), g: p.g.clone() }
    }

    /// Group law through X0 ↦ g X0^μ g^{-1}, X1 ↦ X1^μ, read on log X_i.
    pub fn star(&self, o: &GBPoint) -> Result<GBPoint> {
        let n = self.trunc();
        let x0 = Series::letter(E0, n).scale(&self.mu).exp()?;
        let x1 = Series::letter(E1, n).scale(&self.mu).exp()?;
        let x0 = self.g.mul(&x0)?.mul(&self.g.inverse()?)?;
        let images = [x0.log()?, x1.log()?];
        let g = o.g.substitute(&images)?.mul(&self.g)?;
        if !g.is_grouplike() {
            return Err(Error::Internal("product is not group-like".into()));
        }
        Ok(GBPoint { mu: &self.mu * &o.mu, g })
    }

    pub fn inverse(&self) -> Result<GBPoint> {
        Ok(Self::from_dr(&self.to_dr().inverse()?))
    }
}

/// G^B_quad: μ² = 1 + 24(g|log X0 log X1).
pub fn in_quad_b(p: &GBPoint) -> bool {
    &p.mu * &p.mu == qi(1) + qi(24) * coeff_at(&p.g, "e0e1")
}

/// Membership in DMR^B, with Δ^{M,B} evaluated through ŷ-coordinates.
pub fn is_dmr_b(p: &GBPoint) -> Result<MembershipReport> {
    let g = &p.g;
    let n = p.trunc();
    let mut res = Vec::new();
    res.extend(grouplike_v(g, 0.0));
    res.extend(scalar_residual(COND_E0, 1, "log X0", &coeff_at(g, "e0"), 0.0));
    res.extend(scalar_residual(COND_E1, 1, "log X1", &coeff_at(g, "e1"), 0.0));
    if n >= 2 {
        let r = &p.mu * &p.mu - qi(1) - qi(24) * coeff_at(g, "e0e1");
        res.extend(scalar_residual(COND_QUAD_B, 2, "log X0 log X1", &r, 0.0));
    }
    let m = m_class(&gamma_of(g)?.mul(g)?);
    let coords = to_yhat_basis(&Series::from_terms(m.terms, n), n)?;
    let delta = WElement { terms: coords.clone(), n }.delta().terms;
    let mut sq: Lin<(YMonomial, YMonomial)> = Lin::new();
    for (a, x) in coords.iter() {
        for (b, y) in coords.iter() {
            if a.degree() + b.degree() <= n {
                sq.add_term((a.clone(), b.clone()), x * y);
            }
        }
    }
    let r = delta.sub(&sq);
    if let Some(((a, b), c)) = r.iter().min_by_key(|((a, b), _)| a.degree() + b.degree()) {
        res.push(Residual {
            label: COND_GROUPLIKE_M.into(),
            degree: a.degree() + b.degree(),
            witness: format!("{}(x){}", a, b),
            magnitude: c.magnitude(),
        });
    }
    Ok(MembershipReport::from_residuals(res))
}

/// p^{⊛-1} ⊛ q, read as a point of G^B.
pub fn torsor_difference(p: &GDRPoint, q: &GDRPoint) -> Result<GBPoint> {
    if p.mu != q.mu {
        return Err(Error::Internal("torsor difference needs equal mu".into()));
    }
    if p.trunc() != q.trunc() {
        return Err(Error::TruncMismatch(p.trunc(), q.trunc()));
    }
    Ok(GBPoint::from_dr(&p.inverse()?.star(q)?))
}

// ---------------------------------------------------------------------------
// Pentagon in U(p5)

/// e_{IJ} = Σ e_{ij}, i ∈ I, j ∈ J, as a degree-one element of U(p5).
fn block_generator(is: &[u8], js: &[u8], n: usize) -> UP5Element {
    let o = &tables().oracle;
    let mut t = Lin::new();
    for &i in is {
        for &j in js {
            for (w, c) in o.generator(i, j).iter() {
                let g = w[0];
                let m = match g {
                    0..=2 => PbwMono::kernel_letter(g),
                    3 => PbwMono::base_word(Word::letter(E0)),
                    _ => PbwMono::base_word(Word::letter(E1)),
                };
                t.add_term(m, c.clone());
            }
        }
    }
    UP5Element { terms: t, n }
}

/// The five substitutions of the pentagon, left side first:
/// 2,3,4 / 1,23,4 / 1,2,3 on the left and 12,3,4 / 1,2,34 on the right.
pub fn pentagon_images(n: usize) -> [[UP5Element; 2]; 5] {
    let blocks: [(&[u8], &[u8], &[u8]); 5] = [
        (&[2], &[3], &[4]),
        (&[1], &[2, 3], &[4]),
        (&[1], &[2], &[3]),
        (&[1, 2], &[3], &[4]),
        (&[1], &[2], &[3, 4]),
    ];
    blocks.map(|(i, j, k)| [block_generator(i, j, n), block_generator(j, k, n)])
}

/// Image of a series under e0 ↦ imgs[0], e1 ↦ imgs[1].
pub fn up5_substitute(a: &Series, imgs: &[UP5Element; 2]) -> Result<UP5Element> {
    let n = a.trunc();
    let mut memo: HashMap<Vec<u8>, UP5Element> = HashMap::new();
    memo.insert(Vec::new(), UP5Element::one(n));
    let mut r = UP5Element::zero(n);
    for (w, c) in a.terms().iter() {
        let img = up5_word(&w.0, imgs, &mut memo)?;
        r = r.add(&img.scale(c))?;
    }
    Ok(r)
}

fn up5_word(w: &[u8], imgs: &[UP5Element; 2], memo: &mut HashMap<Vec<u8>, UP5Element>) -> Result<UP5Element> {
    if let Some(x) = memo.get(w) {
        return Ok(x.clone());
    }
    let p = up5_word(&w[..w.len() - 1], imgs, memo)?;
    let x = p.mul(&imgs[w[w.len() - 1] as usize])?;
    memo.insert(w.to_vec(), x.clone());
    Ok(x)
}

/// Order of the two factors on the right-hand side of the pentagon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PentagonForm {
    /// Φ^{2,3,4}Φ^{1,23,4}Φ^{1,2,3} = Φ^{1,2,34}Φ^{12,3,4}.
    #[default]
    Standard,
    /// Φ^{2,3,4}Φ^{1,23,4}Φ^{1,2,3} = Φ^{12,3,4}Φ^{1,2,34}; has no solutions
    /// past degree 3.
    Swapped,
}

/// Left side minus right side of the pentagon.
pub fn pentagon_residual(phi: &Series) -> Result<UP5Element> {
    pentagon_residual_in(phi, PentagonForm::Standard)
}

pub fn pentagon_residual_in(phi: &Series, form: PentagonForm) -> Result<UP5Element> {
    let imgs = pentagon_images(phi.trunc());
    let f: Vec<UP5Element> = imgs.iter().map(|im| up5_substitute(phi, im)).collect::<Result<_>>()?;
    let lhs = f[0].mul(&f[1])?.mul(&f[2])?;
    let rhs = match form {
        PentagonForm::Standard => f[4].mul(&f[3])?,
        PentagonForm::Swapped => f[3].mul(&f[4])?,
    };
    lhs.sub(&rhs)
}

fn pentagon_report(phi: &Series) -> Result<Option<Residual>> {
    let r = pentagon_residual(phi)?;
    Ok(r.terms.iter().min_by_key(|(m, _)| m.degree()).map(|(m, c)| Residual {
        label: COND_PENTAGON.into(),
        degree: m.degree(),
        witness: m.to_string(),
        magnitude: c.magnitude(),
    }))
}

pub fn is_associator(p: &GDRPoint) -> Result<MembershipReport> {
    let g = &p.g;
    let mut res = Vec::new();
    res.extend(pentagon_report(g)?);
    res.extend(grouplike_v(g, 0.0));
    res.extend(scalar_residual(COND_E0, 1, "e0", &coeff_at(g, "e0"), 0.0));
    res.extend(scalar_residual(COND_E1, 1, "e1", &coeff_at(g, "e1"), 0.0));
    if p.trunc() >= 2 {
        let r = coeff_at(g, "e0e1") - &p.mu * &p.mu / qi(24);
        res.extend(scalar_residual(COND_E0E1, 2, "e0e1", &r, 0.0));
    }
    Ok(MembershipReport::from_residuals(res))
}

// ---------------------------------------------------------------------------
// Solver

/// Right-normed bracket [a1,[a2,…[a_{d−1},a_d]…]] of a word.
pub fn right_normed(w: &Word, n: usize) -> Result<Series> {
    let mut it = w.0.iter().rev();
    let Some(&last) = it.next() else {
        return Err(Error::ZeroInput);
    };
    let mut x = Series::letter(last, n);
    for &l in it {
        let a = Series::letter(l, n);
        x = a.mul(&x)?.sub(&x.mul(&a)?)?;
    }
    Ok(x)
}

/// A basis of the degree-d part of the free Lie algebra on e0, e1: the
/// right-normed brackets that are independent of earlier ones in word order.
pub fn lie_basis(d: usize) -> Result<Vec<(Word, Series)>> {
    let words = words_of_len(2, d);
    let index: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for w in &words {
        let b = right_normed(w, d)?;
        let v: SparseVec = b.terms().iter().map(|(u, c)| (index[u], c.clone())).collect();
        if ech.insert(&v) {
            out.push((w.clone(), b));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FreeCoordinate {
    pub degree: usize,
    /// Word labelling the right-normed bracket.
    pub bracket: Word,
    pub value: Q,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AssociatorSolution {
    pub point: GDRPoint,
    /// log Φ, a Lie series.
    pub log: Series,
    pub free: Vec<FreeCoordinate>,
}

/// Solution with every free coordinate set to zero.
pub fn solve_associator(mu: &Q, n: usize) -> Result<AssociatorSolution> {
    solve_associator_with(mu, n, |_, _| qi(0))
}

/// Degree-by-degree linear solve for log Φ. `free(d, j)` is the value given
/// to the j-th basis bracket of degree d when the system leaves it free.
pub fn solve_associator_with(mu: &Q, n: usize, free: impl Fn(usize, usize) -> Q) -> Result<AssociatorSolution> {
    solve_associator_in(mu, n, PentagonForm::Standard, free)
}

pub fn solve_associator_in(
    mu: &Q,
    n: usize,
    form: PentagonForm,
    free: impl Fn(usize, usize) -> Q,
) -> Result<AssociatorSolution> {
    if n > SOLVER_MAX_DEGREE {
        return Err(Error::DegreeTooLarge(n, SOLVER_MAX_DEGREE));
    }
    let signs = [1i64, 1, 1, -1, -1];
    let mut psi = Series::zero(n);
    let mut frees = Vec::new();
    for d in 2..=n {
        let basis = lie_basis(d)?;
        let imgs = pentagon_images(d);
        let phi = psi.retrunc(d).exp()?;
        let r = pentagon_residual_in(&phi, form)?;
        let r: Lin<PbwMono> = r.terms.filter(|m| m.degree() == d);
        let mut cols: Vec<Lin<PbwMono>> = Vec::new();
        for (_, b) in &basis {
            let mut col = UP5Element::zero(d);
            for (im, s) in imgs.iter().zip(signs) {
                col = col.add(&up5_substitute(b, im)?.scale(&qi(s)))?;
            }
            cols.push(col.terms);
        }
        let mut rows: BTreeMap<PbwMono, usize> = BTreeMap::new();
        for m in r.keys().chain(cols.iter().flat_map(|c| c.keys())) {
            let k = rows.len();
            rows.entry(m.clone()).or_insert(k);
        }
        let nb = basis.len();
        let mut eqs: Vec<(Vec<Q>, Q)> = vec![(vec![qi(0); nb], qi(0)); rows.len()];
        for (j, col) in cols.iter().enumerate() {
            for (m, c) in col.iter() {
                eqs[rows[m]].0[j] = c.clone();
            }
        }
        for (m, c) in r.iter() {
            eqs[rows[m]].1 = -c.clone();
        }
        if d == 2 {
            let w = Word::parse("e0e1")?;
            let row = basis.iter().map(|(_, b)| b.terms().get(&w)).collect();
            eqs.push((row, mu * mu / qi(24)));
        }
        let (x, free_cols) = solve_affine(&eqs, nb, |j| free(d, j)).ok_or(Error::Infeasible(d))?;
        for j in free_cols {
            frees.push(FreeCoordinate { degree: d, bracket: basis[j].0.clone(), value: x[j].clone() });
        }
        for ((_, b), c) in basis.iter().zip(&x) {
            psi = psi.add(&b.retrunc(n).scale(c))?;
        }
    }
    let phi = psi.exp()?;
    if !pentagon_residual_in(&phi, form)?.is_zero() {
        return Err(Error::Internal("solver output fails the pentagon".into()));
    }
    Ok(AssociatorSolution { point: GDRPoint::new(mu.clone(), phi)?, log: psi, free: frees })
}

// ---------------------------------------------------------------------------
// Diagram-level checks

#[derive(Clone, Debug, PartialEq)]
pub struct DiagramCheck {
    pub diagram: &'static str,
    pub input: String,
    pub equal: bool,
    pub residual: Option<Residual>,
}

fn diagram_check(diagram: &'static str, input: String, lhs: &Tensor, rhs: &Tensor) -> Result<DiagramCheck> {
    let r = lhs.sub(rhs)?;
    let residual = tensor_residual(diagram, r.terms(), 0.0);
    Ok(DiagramCheck { diagram, input, equal: residual.is_none(), residual })
}

fn tensor_of_factors(t: &Lin<(crate::betti_side::F2Word, crate::betti_side::F2Word)>, n: usize, f: impl Fn(&GroupAlg) -> Result<Series>) -> Result<Tensor> {
    let mut memo: HashMap<crate::betti_side::F2Word, Series> = HashMap::new();
    let mut get = |w: &crate::betti_side::F2Word| -> Result<Series> {
        if let Some(s) = memo.get(w) {
            return Ok(s.clone());
        }
        let s = f(&Lin::single(w.clone(), qi(1)))?;
        memo.insert(w.clone(), s.clone());
        Ok(s)
    };
    let mut r = Tensor::zero(n);
    for ((a, b), c) in t.iter() {
        let (fa, fb) = (get(a)?, get(b)?);
        r = r.add(&Tensor::outer(&fa, &fb).scale(c))?;
    }
    Ok(r)
}

/// Compatibility of the Γ-twisted comparison maps with the harmonic
/// coproducts, for the algebra diagram (inputs in W^B) and the module
/// diagram (their classes in M^B).
pub fn check_theorem_3_2(p: &GDRPoint, inputs: &[GroupAlg]) -> Result<Vec<DiagramCheck>> {
    let n = p.trunc();
    let comp_w = |a: &GroupAlg| p.comp(Space::W, AutVariant::Algebra, true, a);
    let comp_m = |a: &GroupAlg| p.comp(Space::M, AutVariant::Module, true, a);
    let mut out = Vec::new();
    for a in inputs {
        let label = crate::betti_side::render_ga(a);
        let lhs = Tensor::from_terms(to_y_basis(&comp_w(a)?)?.delta().expand(), n);
        let rhs = tensor_of_factors(&delta_w_b_of(a)?, n, comp_w)?;
        out.push(diagram_check("W", label.clone(), &lhs, &rhs)?);

        let m: MBElement = mb_class(a);
        let x = comp_m(&wb_of_mb(&m))?;
        let lhs = Tensor::from_terms(MElement { terms: x.terms().clone(), n }.delta(), n);
        let rhs = tensor_of_factors(&delta_m_b(&m)?, n, comp_m)?;
        out.push(diagram_check("M", format!("({}).1_B", label), &lhs, &rhs)?);
    }
    Ok(out)
}

/// Δ^{M,DR} ∘ ^Γaut^{M,(10)} against its square after Δ^{M,DR}, on inputs
/// given as series whose words end in e1 (or are empty).
pub fn stabilizer_check(p: &GDRPoint, inputs: &[Series]) -> Result<Vec<DiagramCheck>> {
    let n = p.trunc();
    let f = |a: &Series| -> Result<Series> { Ok(Series::from_terms(p.gamma_aut_m(a)?.terms, n)) };
    let mut out = Vec::new();
    for a in inputs {
        let m = m_class(a);
        let lhs = Tensor::from_terms(MElement { terms: f(a)?.terms().clone(), n }.delta(), n);
        let dm = Tensor::from_terms(m.delta(), n);
        let mut memo: HashMap<Word, Series> = HashMap::new();
        let mut rhs = Tensor::zero(n);
        for ((u, v), c) in dm.terms().iter() {
            for w in [u, v] {
                if !memo.contains_key(w) {
                    memo.insert(w.clone(), f(&Series::word(w.clone(), n))?);
                }
            }
            rhs = rhs.add(&Tensor::outer(&memo[u], &memo[v]).scale(c))?;
        }
        out.push(diagram_check("stabilizer", a.to_string(), &lhs, &rhs)?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// assoc.v1

pub const ASSOC_HEADER: &str = "assoc.v1";

pub fn write_assoc(s: &AssociatorSolution) -> String {
    let mut out = format!("{}\nmu {}\ntrunc {}\n", ASSOC_HEADER, s.point.mu, s.point.trunc());
    for f in &s.free {
        out.push_str(&format!("free {} {} {}\n", f.degree, f.bracket, f.value));
    }
    for d in 1..=s.point.trunc() {
        let part = s.log.degree_part(d);
        if part.is_zero() {
            continue;
        }
        out.push_str(&format!("degree {}\n", d));
        for (w, c) in part.terms().iter() {
            out.push_str(&format!("{} {}\n", w, c));
        }
    }
    out
}

pub fn parse_assoc(text: &str) -> Result<AssociatorSolution> {
    let bad = |l: &str| Error::Parse(format!("assoc.v1: {}", l));
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    if lines.next() != Some(ASSOC_HEADER) {
        return Err(bad("missing header"));
    }
    let mut mu = None;
    let mut n = None;
    let mut free = Vec::new();
    let mut log: Lin<Word> = Lin::new();
    for l in lines {
        let parts: Vec<&str> = l.split_whitespace().collect();
        let rat = |s: &str| s.parse::<Q>().map_err(|_| bad(l));
        match parts.as_slice() {
            ["mu", v] => mu = Some(rat(v)?),
            ["trunc", v] => n = Some(v.parse::<usize>().map_err(|_| bad(l))?),
            ["free", d, w, v] => free.push(FreeCoordinate {
                degree: d.parse().map_err(|_| bad(l))?,
                bracket: Word::parse(w)?,
                value: rat(v)?,
            }),
            ["degree", _] => {}
            [w, v] => log.add_term(Word::parse(w)?, rat(v)?),
            _ => return Err(bad(l)),
        }
    }
    let (mu, n) = (mu.ok_or(bad("mu"))?, n.ok_or(bad("trunc"))?);
    let log = Series::from_terms(log, n);
    if !log.is_primitive() {
        return Err(bad("log is not primitive"));
    }
    Ok(AssociatorSolution { point: GDRPoint::new(mu, log.exp()?)?, log, free })
}
