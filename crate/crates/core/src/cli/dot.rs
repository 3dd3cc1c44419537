//! Graphviz export.

use crate::action::FiniteBiAction;
use crate::error::{Error, Result, Side};
use crate::inverse::reversible_core;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// One edge per (state, generator) on the chosen side, core states
/// double-circled. Without `side`, the input must be one-sided.
pub fn export_dot(a: &FiniteBiAction, side: Option<Side>) -> Result<String> {
    let side = match side {
        Some(s) => s,
        None if a.is_left_only() => Side::Left,
        None if a.is_right_only() => Side::Right,
        None => return Err(Error::TwoSided { op: "dot export without --side" }),
    };
    let core = if a.is_side_trivial(side.opposite()) {
        reversible_core(a, side)?
    } else {
        Vec::new()
    };
    let mut out = String::from("digraph action {\n");
    for (x, name) in a.states().iter().enumerate() {
        if core.binary_search(&x).is_ok() {
            out.push_str(&format!("  {} [shape=doublecircle];\n", quote(name)));
        } else {
            out.push_str(&format!("  {};\n", quote(name)));
        }
    }
    for (x, name) in a.states().iter().enumerate() {
        for (g, t) in a.monoid().generators().iter().zip(a.family(side)) {
            out.push_str(&format!(
                "  {} -> {} [label={}];\n",
                quote(name),
                quote(&a.states()[t.apply(x)]),
                quote(g)
            ));
        }
    }
    out.push_str("}\n");
    Ok(out)
}
