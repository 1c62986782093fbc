//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//!
//! Exact criteria compare rationals for equality. Numeric tolerances are the
//! constants below.

use dshuffle::battery::{harmonic_battery, pbw_monomials, random_group_alg, random_p5, random_point, random_up5, rng};
use dshuffle::betti_side::{ga_one, ga_word, magnus, y_value, F2Word};
use dshuffle::braids::diagrams::{check_prop, group_words, Diagram, PropInput};
use dshuffle::braids::p5group::{varpi_b, varpi_b_residual};
use dshuffle::braids::up5::{tables, varpi, varpi_residual, UP5Element, ORACLE_MAX_DEGREE};
use dshuffle::dmr::*;
use dshuffle::dr_side::{WElement, YMonomial};
use dshuffle::lin::Lin;
use dshuffle::mzv::{self, Composition};
use dshuffle::ncalg::{words_of_len, Series, Word, E0, E1};
use dshuffle::scalar::{q, qi, BigFloat};
use dshuffle::{Coeff, Q};
use std::time::{Duration, Instant};

const PREC_BITS: u32 = 128;
const TOL_IDENTITY: f64 = 1e-10;
const TOL_DMR: f64 = 1e-8;

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn run(id: u32, name: &str, budget: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let mut o = f();
    let el = t.elapsed();
    if let Some(b) = budget {
        if el > b {
            o.pass = false;
            o.detail.push_str(&format!("; over budget {:?}", b));
        }
    }
    println!(
        "[{}] {:>2} {} :: {} ({:.2} s)",
        if o.pass { "PASS" } else { "FAIL" },
        id,
        name,
        o.detail,
        el.as_secs_f64()
    );
    o.pass
}

fn w(s: &str) -> Word {
    Word::parse(s).unwrap()
}

fn de_rham_props() -> Outcome {
    let mut inputs = 0;
    let mut bad = Vec::new();
    for deg in 0..=4 {
        for word in words_of_len(2, deg) {
            let a = Series::word(word.clone(), deg);
            for d in [Diagram::WDR, Diagram::MDR] {
                inputs += 1;
                match check_prop(d, &PropInput::DeRham(a.clone())) {
                    Ok(r) if r.equal => {}
                    _ => bad.push(format!("{}@{}", d, word)),
                }
            }
        }
    }
    ok(bad.is_empty(), format!("{} diagram checks, failures {:?}", inputs, bad))
}

fn betti_props() -> Outcome {
    let mut inputs: Vec<_> = group_words(3).into_iter().map(ga_word).collect();
    let words = inputs.len();
    let mut r = rng(2);
    inputs.extend((0..100).map(|_| random_group_alg(&mut r, 5)));
    let jobs: Vec<(Diagram, usize)> = [Diagram::WB, Diagram::MB]
        .into_iter()
        .flat_map(|d| (0..inputs.len()).map(move |i| (d, i)))
        .collect();
    let res = dshuffle::par::map(&jobs, |(d, i)| {
        check_prop(*d, &PropInput::Betti(inputs[*i].clone())).map(|r| r.equal).unwrap_or(false)
    });
    let fails = res.iter().filter(|x| !**x).count();
    ok(
        fails == 0,
        format!("{} group words + 100 random (seed 2), {} checks, {} failures", words, jobs.len(), fails),
    )
}

fn up5_oracle() -> Outcome {
    let o = &tables().oracle;
    let n = ORACLE_MAX_DEGREE;
    let monos: Vec<_> = (0..=3).flat_map(pbw_monomials).collect();
    let mut checked = 0;
    let mut bad = 0;
    for a in &monos {
        for b in &monos {
            if a.degree() + b.degree() > n {
                continue;
            }
            let p = UP5Element::mono(a.clone(), n).mul(&UP5Element::mono(b.clone(), n)).unwrap();
            let mut direct = a.free_word();
            direct.extend(b.free_word());
            let want = o.reduce(&Lin::single(direct, qi(1))).unwrap();
            checked += 1;
            if o.reduce(&p.free_poly()).unwrap() != want {
                bad += 1;
            }
        }
    }
    ok(bad == 0, format!("{} monomial products through degree 3, {} mismatches", checked, bad))
}

fn varpi_identities() -> Outcome {
    let mut r = rng(11);
    let mut bad = 0;
    for _ in 0..100 {
        let a = random_up5(&mut r, 4, 3);
        let m = varpi(&a).unwrap();
        if varpi_residual(&a, &m).unwrap().iter().any(|x| !x.is_zero()) {
            bad += 1;
        }
    }
    let mut r = rng(14);
    let mut bad_b = 0;
    for _ in 0..100 {
        let a = random_p5(&mut r);
        let m = varpi_b(&a).unwrap();
        if varpi_b_residual(&a, &m).iter().any(|x| !x.is_zero()) {
            bad_b += 1;
        }
    }
    ok(
        bad + bad_b == 0,
        format!("100 U(p5) inputs (seed 11): {} failures; 100 kP5* inputs (seed 14): {} failures", bad, bad_b),
    )
}

fn stuffle_duality() -> Outcome {
    let mut pairs = 0;
    let mut bad = 0;
    for d in 0..=6 {
        for m in YMonomial::of_degree(d) {
            let delta = WElement { terms: Lin::single(m.clone(), qi(1)), n: d }.delta();
            for du in 0..=d {
                for u in YMonomial::of_degree(du) {
                    for v in YMonomial::of_degree(d - du) {
                        pairs += 1;
                        let s = mzv::stuffle(&Composition(u.0.clone()), &Composition(v.0.clone()));
                        if delta.coeff(&u, &v) != s.get(&Composition(m.0.clone())) {
                            bad += 1;
                        }
                    }
                }
            }
        }
    }
    ok(bad == 0, format!("{} coefficient pairs up to degree 6, {} mismatches", pairs, bad))
}

struct Solutions {
    p: AssociatorSolution,
    q: AssociatorSolution,
}

fn solver(sol: &AssociatorSolution) -> Outcome {
    let g = &sol.point.g;
    let br = Series::word(w("e0e1"), 5).sub(&Series::word(w("e1e0"), 5)).unwrap().scale(&q(1, 24));
    let deg2 = g.degree_part(2) == br.degree_part(2) && sol.log.degree_part(2) == br.degree_part(2);
    let pent = pentagon_residual(g).unwrap().is_zero();
    let dmr = is_dmr(&sol.point).unwrap();
    ok(
        deg2 && pent && dmr.verdict,
        format!(
            "mu=1 N=5: pentagon residual zero {}, degree 2 = (1/24)(e0e1-e1e0) {}, is_dmr {}",
            pent, deg2, dmr.verdict
        ),
    )
}

fn retrunc(p: &GDRPoint, n: usize) -> GDRPoint {
    GDRPoint { mu: p.mu.clone(), g: p.g.retrunc(n) }
}

fn theorem_battery(s: &Solutions) -> Outcome {
    let p = retrunc(&s.p.point, 4);
    let inputs = harmonic_battery(25, 20);
    let checks = check_theorem_3_2(&p, &inputs).unwrap();
    let bad: Vec<_> = checks.iter().filter(|c| !c.equal).map(|c| format!("{}:{}", c.diagram, c.input)).collect();
    ok(
        bad.is_empty(),
        format!("N=4, {} inputs (4 fixed + 20 seed 25), {} diagram checks, failures {:?}", inputs.len(), checks.len(), bad),
    )
}

fn torsor(s: &Solutions) -> Outcome {
    let distinct = s.p.point != s.q.point;
    let d = torsor_difference(&s.p.point, &s.q.point).unwrap();
    let r = is_dmr_b(&d).unwrap();
    let nontrivial = d != GBPoint::identity(5);
    ok(
        distinct && nontrivial && r.verdict,
        format!("solutions distinct {}, difference nontrivial {}, is_dmr_B {}", distinct, nontrivial, r.verdict),
    )
}

fn group_theory() -> Outcome {
    let n = 5;
    let mut r = rng(21);
    let id = GDRPoint::identity(n);
    let mut fails = Vec::new();
    for i in 0..3 {
        let (a, b, c) = (random_point(&mut r, n), random_point(&mut r, n), random_point(&mut r, n));
        let assoc = a.star(&b).unwrap().star(&c).unwrap() == a.star(&b.star(&c).unwrap()).unwrap();
        let unit = id.star(&a).unwrap() == a && a.star(&id).unwrap() == a;
        let ai = a.inverse().unwrap();
        let inv = ai.star(&a).unwrap() == id && a.star(&ai).unwrap() == id;
        if !(assoc && unit && inv) {
            fails.push(format!("axioms#{}", i));
        }
        if !gamma_cocycle_check(&a, &b).unwrap() {
            fails.push(format!("cocycle#{}", i));
        }
        let ab = a.star(&b).unwrap();
        for d in 0..=n {
            for word in words_of_len(2, d) {
                let x = Series::word(word.clone(), n);
                let one = ab.aut1(&x).unwrap() == a.aut1(&b.aut1(&x).unwrap()).unwrap();
                let ten = ab.aut10(&x).unwrap() == a.aut10(&b.aut10(&x).unwrap()).unwrap();
                if !(one && ten) {
                    fails.push(format!("aut#{}@{}", i, word));
                }
            }
        }
    }
    ok(
        fails.is_empty(),
        format!("N=5, 3 triples (seed 21): star axioms, Gamma cocycle, aut on all words; failures {:?}", fails),
    )
}

/// atan(1/x) by its alternating series, to about 2^{-bits}.
fn atan_inv(x: i64, bits: u32) -> BigFloat {
    let mut power = BigFloat::from_int(1, bits).div_i64(x);
    let mut sum = BigFloat::from_int(0, bits);
    let mut k = 0i64;
    while !power.is_zero() {
        let t = power.div_i64(2 * k + 1);
        sum = if k % 2 == 0 { sum.add(&t) } else { sum.sub(&t) };
        power = power.div_i64(x * x);
        k += 1;
    }
    sum
}

/// π = 16 atan(1/5) − 4 atan(1/239), independent of the zeta evaluator.
fn machin_pi(bits: u32) -> BigFloat {
    atan_inv(5, bits).mul(&BigFloat::from_int(16, bits)).sub(&atan_inv(239, bits).mul(&BigFloat::from_int(4, bits)))
}

fn numerics() -> Outcome {
    let h = mzv::harmonic_residual(2, 3, PREC_BITS).unwrap().to_f64();
    let s = mzv::shuffle_residual(2, 2, PREC_BITS).unwrap().to_f64();
    let phi = mzv::phi_kz(4, PREC_BITS).unwrap();
    let c = phi.series.terms().get(&w("e0e1"));
    let pi = machin_pi(PREC_BITS + 32);
    let k = c.add(&pi.mul(&pi).div_i64(6)).abs().to_f64();
    let r = mzv::numeric_dmr_check(4, PREC_BITS, TOL_DMR).unwrap();
    let pass = h < TOL_IDENTITY && s < TOL_IDENTITY && k < TOL_IDENTITY && r.passes();
    ok(
        pass,
        format!(
            "{} bits: harmonic(2,3) {:.1e}, shuffle(2,2) {:.1e}, |(phi|e0e1)+pi^2/6| {:.1e} (tol {:.0e}); W=4 DMR max residual {:.1e} (tol {:.0e})",
            PREC_BITS,
            h,
            s,
            k,
            TOL_IDENTITY,
            r.worst(),
            TOL_DMR
        ),
    )
}

fn leading_symbol(s: &Series) -> Series {
    match s.order() {
        Some(d) => s.degree_part(d),
        None => s.clone(),
    }
}

fn gr_identifications() -> Outcome {
    let n = 6;
    let mut bad = Vec::new();
    for (l, e) in [(1i8, E0), (2, E1)] {
        let x = ga_word(F2Word::gen(l)).sub(&ga_one());
        if leading_symbol(&magnus(&x, n)) != Series::letter(e, n) {
            bad.push(format!("X{}-1", l - 1));
        }
    }
    for k in 1..=5 {
        let (word, sign) = YMonomial(vec![k]).expand();
        let want = Series::word(word, n).scale(&Q::from_i64(sign));
        let got = leading_symbol(&magnus(&y_value(k, true), n));
        if got != want {
            bad.push(format!("Y{}+", k));
        }
    }
    ok(bad.is_empty(), format!("X0-1, X1-1, Y1+..Y5+; failures {:?}", bad))
}

fn main() {
    let t0 = Instant::now();
    let mut all = true;
    let secs = Duration::from_secs;
    all &= run(1, "Lie-side module diagrams, all words of degree <= 4, exact", Some(secs(60)), de_rham_props);
    all &= run(2, "group-side module diagrams, group words <= 3 and random elements <= 5, exact", Some(secs(300)), betti_props);
    all &= run(3, "U(p5) smash product vs relation quotient", None, up5_oracle);
    all &= run(4, "varpi and varpi_B defining identities", None, varpi_identities);
    all &= run(5, "stuffle duality with the harmonic coproduct", None, stuffle_duality);

    let t = Instant::now();
    let sols = Solutions {
        p: solve_associator(&qi(1), 5).unwrap(),
        q: solve_associator_with(&qi(1), 5, |_, _| qi(1)).unwrap(),
    };
    let solve_time = t.elapsed();
    all &= run(6, "associator solver", Some(secs(300).saturating_sub(solve_time)), || {
        let mut o = solver(&sols.p);
        o.detail.push_str(&format!("; solve {:.2} s", solve_time.as_secs_f64()));
        o
    });
    all &= run(7, "comparison-map battery", None, || theorem_battery(&sols));
    all &= run(8, "torsor difference of two solutions", None, || torsor(&sols));
    all &= run(9, "group-theory battery", None, group_theory);
    all &= run(10, "numerics", Some(secs(120)), numerics);
    all &= run(11, "associated-graded identifications", None, gr_identifications);
    println!(
        "acceptance: {} ({:.1} s total)",
        if all { "all criteria pass" } else { "FAILURES" },
        t0.elapsed().as_secs_f64()
    );
    if !all {
        std::process::exit(1);
    }
}
