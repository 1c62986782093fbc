//! Row and column vectors and the four diagram checks relating ϖ, ϖ̲ to the
//! harmonic coproducts.

use super::p5group::rho_b;
use super::up5::rho;
use crate::betti_side::{
    delta_m_b, delta_w_b_of, ga_mul, ga_one, ga_word, loc_b_tensor_of, mb_class, BFactor, F2Word, GroupAlg,
    LocBWord,
};
use crate::dr_side::{check_window, loc_tensor_of_words, m_class, render_loc_word, to_y_basis, DrFactor};
use crate::error::{Error, Result};
use crate::lin::Lin;
use crate::loc::{module_class_tensor, sandwich, LocTensor};
use crate::ncalg::{render_lin, Series, E1};
use crate::scalar::qi;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Betti,
    DeRham,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowCol {
    Row1,
    Col1,
    Col0,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Diagram {
    /// Betti, harmonic algebra.
    WB,
    /// Betti, harmonic module.
    MB,
    /// de Rham, harmonic algebra.
    WDR,
    /// de Rham, harmonic module.
    MDR,
}

impl Diagram {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "2.1" => Ok(Diagram::WB),
            "2.2" => Ok(Diagram::MB),
            "2.3" => Ok(Diagram::WDR),
            "2.4" => Ok(Diagram::MDR),
            _ => Err(Error::Parse(format!("unknown diagram {}", s))),
        }
    }
    pub fn label(&self) -> &'static str {
        match self {
            Diagram::WB => "2.1",
            Diagram::MB => "2.2",
            Diagram::WDR => "2.3",
            Diagram::MDR => "2.4",
        }
    }
    pub fn side(&self) -> Side {
        match self {
            Diagram::WB | Diagram::MB => Side::Betti,
            _ => Side::DeRham,
        }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

fn dr(a: &[DrFactor], b: &[DrFactor], c: i64) -> LocTensor<DrFactor> {
    Lin::single((a.to_vec(), b.to_vec()), qi(c))
}

/// Constant vectors on the de Rham side.
pub fn row_col_dr(which: RowCol) -> [LocTensor<DrFactor>; 3] {
    let e1 = [DrFactor::E1Pow(1)];
    let ei = [DrFactor::E1Pow(-1)];
    match which {
        RowCol::Row1 => [dr(&[], &ei, 1), dr(&ei, &[], -1), Lin::new()],
        RowCol::Col1 => [dr(&e1, &e1, 1), dr(&e1, &e1, -1), Lin::new()],
        RowCol::Col0 => [Lin::new(), dr(&e1, &[], -1), dr(&e1, &[], 1)],
    }
}

fn bt(a: &Lin<LocBWord>, b: &Lin<LocBWord>) -> LocTensor<BFactor> {
    crate::loc::tensor_of(a, b)
}

fn bw(f: &[BFactor]) -> Lin<LocBWord> {
    Lin::single(f.to_vec(), qi(1))
}

/// Constant vectors on the Betti side. With `verbatim`, the second row entry
/// is (1 − X1)^{-1}⊗1 instead of (1 − X1)^{-1}⊗X1.
pub fn row_col_b(which: RowCol, verbatim: bool) -> [LocTensor<BFactor>; 3] {
    let one = bw(&[]);
    let x1 = bw(&[BFactor::X1(1)]);
    let x1i = bw(&[BFactor::X1(-1)]);
    let u = bw(&[BFactor::InvX1m1(1)]);
    match which {
        RowCol::Row1 => {
            // (1 − X1^{-1})^{-1} = 1 + U, (1 − X1)^{-1} = −U, U = (X1 − 1)^{-1}
            let second = if verbatim { one.clone() } else { x1.clone() };
            [bt(&one, &one.add(&u)), bt(&u.neg(), &second), Lin::new()]
        }
        RowCol::Col1 => {
            let a = x1.sub(&one);
            [bt(&a, &a), bt(&a, &x1i.sub(&one)), Lin::new()]
        }
        RowCol::Col0 => [Lin::new(), bt(&one.sub(&x1), &x1i), bt(&one.sub(&x1i), &x1i)],
    }
}

/// Outcome of a diagram check on one input.
#[derive(Clone, Debug, PartialEq)]
pub struct PropReport {
    pub diagram: Diagram,
    pub input: String,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
}

pub enum PropInput {
    Betti(GroupAlg),
    DeRham(Series),
}

pub fn render_loc_b(w: &[BFactor]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|f| match f {
            BFactor::X0(e) => format!("X0^{}", e),
            BFactor::X1(e) => format!("X1^{}", e),
            BFactor::InvX1m1(m) => format!("(X1-1)^-{}", m),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn render_tb(t: &LocTensor<BFactor>) -> String {
    render_lin(t, |(a, b)| format!("{}(x){}", render_loc_b(a), render_loc_b(b)))
}

fn render_td(t: &LocTensor<DrFactor>) -> String {
    render_lin(t, |(a, b)| format!("{}(x){}", render_loc_word(a), render_loc_word(b)))
}

/// Both paths of the Betti diagrams, as localized tensors.
pub fn betti_paths(d: Diagram, a: &GroupAlg, verbatim: bool) -> Result<(LocTensor<BFactor>, LocTensor<BFactor>)> {
    let m = rho_b(a)?;
    let ml: [[LocTensor<BFactor>; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| loc_b_tensor_of(&m[i][j])));
    let row = row_col_b(RowCol::Row1, verbatim);
    match d {
        Diagram::WB => {
            let x1m1 = ga_word(F2Word::x1(1)).sub(&ga_one());
            let lhs = loc_b_tensor_of(&delta_w_b_of(&ga_mul(a, &x1m1))?);
            let rhs = sandwich(&row, &ml, &row_col_b(RowCol::Col1, verbatim));
            Ok((lhs, rhs))
        }
        Diagram::MB => {
            let lhs = loc_b_tensor_of(&delta_m_b(&mb_class(a))?);
            let rhs = module_class_tensor(&sandwich(&row, &ml, &row_col_b(RowCol::Col0, verbatim)));
            Ok((lhs, rhs))
        }
        _ => Err(Error::Internal("not a Betti diagram".into())),
    }
}

/// Both paths of the de Rham diagrams, as localized tensors.
pub fn de_rham_paths(d: Diagram, a: &Series) -> Result<(LocTensor<DrFactor>, LocTensor<DrFactor>)> {
    let n = a.trunc() + 1;
    let a = a.retrunc(n);
    let m = rho(&a)?;
    let ml: [[LocTensor<DrFactor>; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|j| loc_tensor_of_words(m[i][j].terms())));
    let row = row_col_dr(RowCol::Row1);
    let (lhs, rhs) = match d {
        Diagram::WDR => {
            let ae1 = a.mul(&Series::letter(E1, n))?;
            let lhs = loc_tensor_of_words(&to_y_basis(&ae1)?.delta().expand());
            (lhs, sandwich(&row, &ml, &row_col_dr(RowCol::Col1)))
        }
        Diagram::MDR => {
            let lhs = loc_tensor_of_words(&m_class(&a).delta());
            (lhs, module_class_tensor(&sandwich(&row, &ml, &row_col_dr(RowCol::Col0))))
        }
        _ => return Err(Error::Internal("not a de Rham diagram".into())),
    };
    check_window(&rhs, n)?;
    Ok((lhs, rhs))
}

pub fn check_prop(d: Diagram, input: &PropInput) -> Result<PropReport> {
    match (d.side(), input) {
        (Side::Betti, PropInput::Betti(a)) => {
            let (lhs, rhs) = betti_paths(d, a, false)?;
            Ok(PropReport {
                diagram: d,
                input: crate::betti_side::render_ga(a),
                equal: lhs == rhs,
                lhs: render_tb(&lhs),
                rhs: render_tb(&rhs),
            })
        }
        (Side::DeRham, PropInput::DeRham(a)) => {
            let (lhs, rhs) = de_rham_paths(d, a)?;
            Ok(PropReport {
                diagram: d,
                input: a.render(),
                equal: lhs == rhs,
                lhs: render_td(&lhs),
                rhs: render_td(&rhs),
            })
        }
        _ => Err(Error::NotInSubalgebra("diagram domain")),
    }
}

/// Every reduced group word of length ≤ `len`.
pub fn group_words(len: usize) -> Vec<F2Word> {
    let mut out = vec![F2Word::one()];
    let mut frontier = vec![F2Word::one()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &frontier {
            for l in [1i8, -1, 2, -2] {
                if w.0.last() == Some(&-l) {
                    continue;
                }
                let mut v = w.clone();
                v.0.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::{Word, E0};

    fn g(s: &[i8]) -> GroupAlg {
        ga_word(F2Word::reduced(s))
    }

    #[test]
    fn dr_examples() {
        let one = Series::one(0);
        for d in [Diagram::WDR, Diagram::MDR] {
            let r = check_prop(d, &PropInput::DeRham(one.clone())).unwrap();
            assert!(r.equal, "{} at 1: {} vs {}", d, r.lhs, r.rhs);
        }
        let e1 = Series::letter(E1, 1);
        let r = check_prop(Diagram::WDR, &PropInput::DeRham(e1)).unwrap();
        assert!(r.equal, "{} vs {}", r.lhs, r.rhs);
        let e0 = Series::letter(E0, 1);
        for d in [Diagram::WDR, Diagram::MDR] {
            assert!(check_prop(d, &PropInput::DeRham(e0.clone())).unwrap().equal);
        }
        let w = Series::word(Word::parse("e0e1e0").unwrap(), 3);
        assert!(check_prop(Diagram::MDR, &PropInput::DeRham(w)).unwrap().equal);
    }

    #[test]
    fn betti_examples() {
        for d in [Diagram::WB, Diagram::MB] {
            for a in [ga_one(), g(&[1]), g(&[2]), g(&[-1, 2])] {
                let r = check_prop(d, &PropInput::Betti(a.clone())).unwrap();
                assert!(r.equal, "{} at {}: {} vs {}", d, crate::betti_side::render_ga(&a), r.lhs, r.rhs);
            }
        }
    }

    #[test]
    fn verbatim_row_fails() {
        let (l, r) = betti_paths(Diagram::WB, &ga_one(), true).unwrap();
        assert_ne!(l, r);
    }

    #[test]
    fn row_times_col0_is_unit() {
        let row = row_col_b(RowCol::Row1, false);
        let col = row_col_b(RowCol::Col0, false);
        let mut s = Lin::new();
        for k in 0..3 {
            s.add_assign(&crate::loc::tensor_mul(&row[k], &col[k]));
        }
        let want = Lin::single((vec![], vec![]), qi(1));
        assert_eq!(module_class_tensor(&s), want);
    }
}
