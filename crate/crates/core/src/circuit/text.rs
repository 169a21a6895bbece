//! Line-oriented circuit text format.
//!
//! ```text
//! qubits 17
//! # zscneqr
//! h q9
//! x q8
//! mcx [q8,!q9,q10] q1
//! reset q8
//! ```
//!
//! Uncontrolled gates: `h`, `x`, `ry(<angle>)`, `reset`. Controlled forms
//! prefix the mnemonic with `c` (`ch`, `cry(..)`) except X, which is always
//! `mcx`. A `!` marks a control that fires on |0⟩. Lines starting with `#`
//! are comments.

use std::fmt::Write as _;

use super::{Circuit, Control, Gate, GateKind, Polarity};
use crate::error::{Error, Result};

/// Shortest decimal form that parses back to the same `f64`.
pub fn format_angle(a: f64) -> String {
    if a == 0.0 {
        return "0".into();
    }
    format!("{a}")
}

fn mnemonic(kind: GateKind, controlled: bool) -> String {
    match (kind, controlled) {
        (GateKind::H, false) => "h".into(),
        (GateKind::H, true) => "ch".into(),
        (GateKind::X, false) => "x".into(),
        (GateKind::X, true) => "mcx".into(),
        (GateKind::Ry(a), false) => format!("ry({})", format_angle(a)),
        (GateKind::Ry(a), true) => format!("cry({})", format_angle(a)),
        (GateKind::Reset, _) => "reset".into(),
    }
}

pub(super) fn export(c: &Circuit) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "qubits {}", c.n_qubits());
    if !c.label.is_empty() {
        let _ = writeln!(out, "# {}", c.label);
    }
    for g in c.gates() {
        out.push_str(&mnemonic(g.kind, !g.controls.is_empty()));
        if !g.controls.is_empty() {
            out.push_str(" [");
            for (i, ctl) in g.controls.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                if ctl.polarity == Polarity::Negative {
                    out.push('!');
                }
                let _ = write!(out, "q{}", ctl.qubit);
            }
            out.push(']');
        }
        let _ = writeln!(out, " q{}", g.target);
    }
    out
}

fn qubit(tok: &str, line: usize) -> Result<usize> {
    tok.strip_prefix('q')
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| Error::CircuitText { line, msg: format!("bad qubit {tok:?}") })
}

fn angle_arg(head: &str, prefix: &str, line: usize) -> Result<Option<f64>> {
    let Some(rest) = head.strip_prefix(prefix) else {
        return Ok(None);
    };
    let inner = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::CircuitText { line, msg: format!("malformed angle in {head:?}") })?;
    let a: f64 = inner
        .parse()
        .map_err(|_| Error::CircuitText { line, msg: format!("bad angle {inner:?}") })?;
    Ok(Some(a))
}

/// Parses circuit text into its declared qubit count and gate list.
pub fn parse_text(text: &str) -> Result<(usize, Vec<Gate>)> {
    let mut n_qubits = None;
    let mut gates = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::CircuitText { line, msg };
        if n_qubits.is_none() {
            let n = l
                .strip_prefix("qubits ")
                .and_then(|n| n.trim().parse::<usize>().ok())
                .ok_or_else(|| err(format!("expected \"qubits <N>\", got {l:?}")))?;
            n_qubits = Some(n);
            continue;
        }
        let (head, rest) = l.split_once(' ').ok_or_else(|| err(format!("missing operand in {l:?}")))?;
        let (controls, target_tok) = if let Some(r) = rest.strip_prefix('[') {
            let (list, tail) = r.split_once(']').ok_or_else(|| err("unterminated control list".into()))?;
            let controls = list
                .split(',')
                .map(|c| {
                    let c = c.trim();
                    match c.strip_prefix('!') {
                        Some(q) => qubit(q, line).map(Control::neg),
                        None => qubit(c, line).map(Control::pos),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            (controls, tail.trim())
        } else {
            (Vec::new(), rest.trim())
        };
        let target = qubit(target_tok, line)?;
        let controlled = !controls.is_empty();
        let kind = match head {
            "h" if !controlled => GateKind::H,
            "ch" if controlled => GateKind::H,
            "x" if !controlled => GateKind::X,
            "mcx" if controlled => GateKind::X,
            "reset" if !controlled => GateKind::Reset,
            _ => {
                let a = if controlled { angle_arg(head, "cry", line)? } else { angle_arg(head, "ry", line)? };
                GateKind::Ry(a.ok_or_else(|| err(format!("unknown gate {head:?}")))?)
            }
        };
        let gate = Gate { kind, target, controls };
        let n = n_qubits.expect("set above");
        gate.validate(n).map_err(|e| err(e.to_string()))?;
        gates.push(gate);
    }
    let n = n_qubits.ok_or(Error::CircuitText { line: 0, msg: "empty circuit text".into() })?;
    Ok((n, gates))
}
