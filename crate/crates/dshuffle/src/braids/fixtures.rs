//! Text serialization of the derived braid tables (`braid_fixtures.v1`).

use super::p5group::{alpha_table, AlphaTable};
use super::up5::{tables, ActionTable};
use crate::betti_side::F2Word;
use crate::ncalg::render_lin;

pub const FIXTURE_HEADER: &str = "# braid_fixtures.v1";

fn kernel_word(w: &F2Word) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.0.iter()
        .map(|&l| if l > 0 { format!("x{}5", l) } else { format!("x{}5^-1", -l) })
        .collect::<Vec<_>>()
        .join(" ")
}

fn base_name(b: i8) -> &'static str {
    match b {
        1 => "X0",
        -1 => "X0^-1",
        2 => "X1",
        _ => "X1^-1",
    }
}

pub fn render_fixtures(alpha: &AlphaTable, action: &ActionTable) -> String {
    let mut s = String::new();
    s.push_str(FIXTURE_HEADER);
    s.push('\n');
    s.push_str("# P5* = F3 x| F2: kernel x15 x25 x35, base X0 = x23, X1 = x12, x45 = (x15 x25 x35)^-1\n");
    s.push_str("# alpha <base letter> <kernel generator> = conjugate, as a kernel word\n");
    for (b, imgs) in &alpha.images {
        for (k, w) in imgs.iter().enumerate() {
            s.push_str(&format!("alpha {} x{}5 = {}\n", base_name(*b), k + 1, kernel_word(w)));
        }
    }
    s.push_str("# action <base letter> <kernel generator> = [x, e_k5] in the kernel free algebra\n");
    for (x, row) in action.d.iter().enumerate() {
        for (k, p) in row.iter().enumerate() {
            let body = render_lin(p, |w| w.iter().map(|l| format!("e{}5", l + 1)).collect::<String>());
            s.push_str(&format!("action e{} e{}5 = {}\n", x, k + 1, body));
        }
    }
    s
}

/// Fixture text regenerated from the oracles.
pub fn regenerate() -> String {
    render_fixtures(alpha_table(), &tables().action)
}
