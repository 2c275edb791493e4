//! Plain-text renderings behind `--pretty`.

use std::fmt::Write;

use momentfrac::multidim::MultiSolution;
use momentfrac::pfraction::PFraction;
use momentfrac::sfraction::SFraction;

/// `-b0/(a0 - b1/(a1 - ... ))`.
pub fn pfraction(pf: &PFraction) -> String {
    let atoms = pf.atoms();
    let mut out = String::new();
    for (j, atom) in atoms.iter().enumerate() {
        let sign = if j == 0 { "-" } else { " - " };
        let _ = write!(out, "{sign}({})/({}", atom.b, atom.a);
    }
    let tail = if pf.has_open_tail() { " + c" } else { " + tau" };
    out.push_str(tail);
    out.push_str(&")".repeat(atoms.len()));
    out.push('\n');
    if pf.has_open_tail() {
        out.push_str("c: constant not fixed by odd data\n");
    }
    out
}

pub fn sfraction(sf: &SFraction) -> String {
    let mut out = format!("alpha = {}\n", sf.alpha());
    for (j, a) in sf.atoms().iter().enumerate() {
        let l = a.l.as_ref().map_or("open".to_string(), |l| l.to_string());
        let _ = writeln!(out, "m{} = {}    l{} = {}    d{} = {}", j + 1, a.m, j + 1, l, j + 1, a.d);
    }
    out
}

pub fn solution(sol: &MultiSolution) -> String {
    let mut out = format!(
        "strategy {}, {} data, common index {}\nF =\n",
        sol.strategy.as_str(),
        sol.parity.as_str(),
        sol.common_index
    );
    for b in &sol.branches {
        let _ = writeln!(out, "  + {} * {}", b.prefix, b.solution());
    }
    out
}
