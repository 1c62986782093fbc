use dshuffle::dr_side::{WElement, YMonomial};
use dshuffle::lin::Lin;
use dshuffle::mzv::*;
use dshuffle::ncalg::Word;
use dshuffle::scalar::{qi, BigFloat};
use dshuffle::{Coeff, Q};
use proptest::prelude::*;
use std::f64::consts::PI;

fn c(v: &[usize]) -> Composition {
    Composition(v.to_vec())
}

/// Σ_{n≤N} n^{-s} plus the integral bracket for the tail.
fn direct_sum_bracket(s: i32, n: u64) -> (f64, f64) {
    let head: f64 = (1..=n).rev().map(|k| (k as f64).powi(-s)).sum();
    let sm1 = (s - 1) as f64;
    let lo = 1.0 / (sm1 * ((n + 1) as f64).powi(s - 1));
    let hi = 1.0 / (sm1 * (n as f64).powi(s - 1));
    (head + lo, head + hi)
}

#[test]
fn single_zetas_against_direct_summation() {
    for s in [2, 3] {
        let z = zeta(&c(&[s as usize]), 128).unwrap();
        let (lo, hi) = direct_sum_bracket(s, 1_000_000);
        let v = z.value.to_f64();
        assert!(v >= lo - 1e-13 && v <= hi + 1e-13, "ζ({}) = {} not in [{}, {}]", s, v, lo, hi);
        assert!(z.error < 1e-30);
    }
    let z2 = zeta(&c(&[2]), 128).unwrap();
    assert!(z2.value.to_decimal(10).starts_with("1.6449340668"));
    let z3 = zeta(&c(&[3]), 128).unwrap();
    assert!(z3.value.to_decimal(10).starts_with("1.2020569031"));
}

#[test]
fn euler_coincidence() {
    let a = zeta(&c(&[2, 1]), 160).unwrap();
    let b = zeta(&c(&[3]), 160).unwrap();
    let d = a.value.sub(&b.value).abs().to_f64();
    assert!(d <= a.error + b.error, "|ζ(2,1) − ζ(3)| = {:e}", d);
}

#[test]
fn doubling_precision_stays_within_bounds() {
    for x in admissible_words(5) {
        let comp = Composition::from_word(&x).unwrap();
        let lo = zeta(&comp, 100).unwrap();
        let hi = zeta(&comp, 200).unwrap();
        let d = lo.value.sub(&hi.value).abs().to_f64();
        assert!(d <= lo.error + hi.error, "{}: {:e} > {:e}", comp, d, lo.error + hi.error);
        assert!(lo.error < 1e-28);
    }
}

/// Truncated sums Σ_{N≥n1>⋯>nm≥1}, exactly.
fn truncated_zeta(k: &[usize], n: u64) -> Q {
    // f[j][x] = Σ over n_j = x, n_j > ⋯ > n_m
    let m = k.len();
    if m == 0 {
        return qi(1);
    }
    let mut below: Vec<Q> = vec![qi(1); n as usize + 1];
    for j in (0..m).rev() {
        let mut next = vec![qi(0); n as usize + 1];
        let mut run = qi(0);
        for x in 1..=n as usize {
            let prev = if j == m - 1 { qi(1) } else { below[x - 1].clone() };
            let term = prev / qi((x as i64).pow(k[j] as u32));
            run += term;
            next[x] = run.clone();
        }
        below = next;
    }
    below[n as usize].clone()
}

fn all_compositions(max_weight: usize) -> Vec<Composition> {
    (0..=max_weight)
        .flat_map(YMonomial::of_degree)
        .map(|m| Composition(m.0))
        .collect()
}

#[test]
fn stuffle_examples() {
    let r = stuffle(&c(&[2]), &c(&[3]));
    let mut want = Lin::new();
    want.add_term(c(&[2, 3]), qi(1));
    want.add_term(c(&[3, 2]), qi(1));
    want.add_term(c(&[5]), qi(1));
    assert_eq!(r, want);
    assert_eq!(stuffle(&c(&[4]), &c(&[])), Lin::single(c(&[4]), qi(1)));

    let r = stuffle(&c(&[2]), &c(&[2, 1]));
    let mut want = Lin::new();
    want.add_term(c(&[2, 2, 1]), qi(2));
    want.add_term(c(&[2, 1, 2]), qi(1));
    want.add_term(c(&[2, 3]), qi(1));
    want.add_term(c(&[4, 1]), qi(1));
    assert_eq!(r, want);
}

#[test]
fn stuffle_matches_truncated_sums() {
    // the harmonic product holds exactly for sums cut at any N
    let comps = all_compositions(4);
    for u in &comps {
        for v in &comps {
            if u.weight() + v.weight() > 5 {
                continue;
            }
            let lhs = truncated_zeta(&u.0, 7) * truncated_zeta(&v.0, 7);
            let mut rhs = qi(0);
            for (w, x) in stuffle(u, v).iter() {
                rhs += x * truncated_zeta(&w.0, 7);
            }
            assert_eq!(lhs, rhs, "{} * {}", u, v);
        }
    }
}

#[test]
fn stuffle_commutative_and_associative() {
    let comps = all_compositions(6);
    for u in &comps {
        for v in &comps {
            if u.weight() + v.weight() > 6 {
                continue;
            }
            assert_eq!(stuffle(u, v), stuffle(v, u));
            for w in &comps {
                if u.weight() + v.weight() + w.weight() > 6 {
                    continue;
                }
                let left = stuffle(u, v).map_lin(|x| stuffle(x, w));
                let right = stuffle(v, w).map_lin(|x| stuffle(u, x));
                assert_eq!(left, right, "({} * {}) * {}", u, v, w);
            }
        }
    }
}

#[test]
fn stuffle_is_dual_to_harmonic_coproduct() {
    for d in 0..=6 {
        for w in YMonomial::of_degree(d) {
            let delta = WElement { terms: Lin::single(w.clone(), qi(1)), n: d }.delta();
            for du in 0..=d {
                for u in YMonomial::of_degree(du) {
                    for v in YMonomial::of_degree(d - du) {
                        let lhs = delta.coeff(&u, &v);
                        let rhs = stuffle(&Composition(u.0.clone()), &Composition(v.0.clone()))
                            .get(&Composition(w.0.clone()));
                        assert_eq!(lhs, rhs, "{} ⊗ {} in Δ({})", u, v, w);
                    }
                }
            }
        }
    }
}

#[test]
fn double_shuffle_residuals() {
    assert!(harmonic_residual(2, 3, 128).unwrap().to_f64() < 1e-10);
    assert!(harmonic_residual(3, 3, 128).unwrap().to_f64() < 1e-10);
    assert!(shuffle_residual(2, 2, 128).unwrap().to_f64() < 1e-10);
    assert!(shuffle_residual(2, 3, 128).unwrap().to_f64() < 1e-10);
    assert!(harmonic_residual_signed(2, 3, -1, 128).unwrap().to_f64() > 1e-3);
    assert!(harmonic_residual(1, 3, 128).is_err());
}

#[test]
fn kz_low_degree_coefficients() {
    let phi = phi_kz(4, 128).unwrap();
    let at = |w: &str| phi.series.terms().get(&Word::parse(w).unwrap());
    let z2 = zeta(&c(&[2]), 128).unwrap().value;
    assert!((at("e0e1").to_f64() + PI * PI / 6.0).abs() < 1e-14);
    assert!(at("e0e1").add(&z2).abs().to_f64() < 1e-30);
    assert!(at("e1e0").sub(&z2).abs().to_f64() < 1e-30);
    assert!(at("e0").is_zero() && at("e1").is_zero());
    assert!(phi.error < 1e-30);
}

#[test]
fn kz_satisfies_dmr_numerically() {
    for w in [3, 4] {
        let r = numeric_dmr_check(w, 128, 1e-8).unwrap();
        assert!(r.passes(), "W={}: {:?}", w, r.max_residual);
        assert!(r.report.verdict);
    }
}

#[test]
fn perturbed_kz_fails_dmr() {
    let bump = BigFloat::from_q(&Q::new(1.into(), 1000.into()), 128);
    let phi = phi_kz_with(4, 128, |x| {
        (x == &c(&[2])).then(|| zeta(x, 128).unwrap().value.add(&bump))
    })
    .unwrap();
    let r = numeric_dmr_check_of(&phi.series, 4, 128, 1e-8).unwrap();
    assert!(r.worst() > 1e-4, "{:?}", r.max_residual);
    assert!(!r.report.verdict);
}

#[test]
fn admissible_compositions_by_weight() {
    let cs = admissible_compositions(4);
    // weight 2, 3, 4: 1 + 2 + 4
    assert_eq!(cs.len(), 7);
    assert_eq!(cs[0], c(&[2]));
    assert!(cs.windows(2).all(|p| p[0].weight() <= p[1].weight()));
    assert!(cs.iter().all(Composition::is_admissible));
}

fn composition_strategy() -> impl Strategy<Value = Composition> {
    prop::collection::vec(1usize..4, 0..3).prop_map(Composition)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn stuffle_unit_and_weight(u in composition_strategy(), v in composition_strategy()) {
        let e = Composition(vec![]);
        prop_assert_eq!(stuffle(&u, &e), Lin::single(u.clone(), qi(1)));
        for (w, x) in stuffle(&u, &v).iter() {
            prop_assert_eq!(w.weight(), u.weight() + v.weight());
            prop_assert!(w.depth() <= u.depth() + v.depth());
            prop_assert!(x.magnitude() >= 1.0);
        }
    }

    #[test]
    fn shuffle_count_is_binomial(u in composition_strategy(), v in composition_strategy()) {
        let total: Q = shuffle(&u, &v).iter().map(|(_, x)| x.clone()).sum();
        let (a, b) = (u.weight() as u64, v.weight() as u64);
        let binom = (1..=b).fold(1u64, |acc, i| acc * (a + i) / i);
        prop_assert_eq!(total, qi(binom as i64));
    }
}
