//! Small named machines used throughout the tests and docs.

use crate::action::FiniteBiAction;
use crate::monoid::MonoidPresentation;
use crate::transform::Transform;

/// State names `s0, s1, ..`.
pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|k| format!("s{k}")).collect()
}

/// Free monoid on the single generator `i`.
pub fn n1() -> MonoidPresentation {
    MonoidPresentation::free(["i"]).expect("valid presentation")
}

/// Free commutative monoid on `i`, i.e. `N`.
pub fn nat() -> MonoidPresentation {
    MonoidPresentation::free_commutative(["i"]).expect("valid presentation")
}

/// Left-only machine over `p` given one image array per generator.
pub fn machine(p: &MonoidPresentation, states: Vec<String>, gens: &[&[usize]]) -> FiniteBiAction {
    let left = gens.iter().map(|g| Transform::new(g.to_vec())).collect();
    FiniteBiAction::left_only(p.clone(), states, left).expect("valid machine")
}

/// `C_n`: the single generator acts as an `n`-cycle.
pub fn cycle(p: &MonoidPresentation, n: usize) -> FiniteBiAction {
    let t: Vec<usize> = (0..n).map(|k| (k + 1) % n).collect();
    machine(p, names(n), &[&t])
}

pub fn c3() -> FiniteBiAction {
    cycle(&n1(), 3)
}

/// Two states over the free monoid on `{i0, i1}`: `i0` fixes both, `i1` swaps.
pub fn swap_machine() -> FiniteBiAction {
    let p = MonoidPresentation::free(["i0", "i1"]).expect("valid presentation");
    machine(&p, vec!["x0".into(), "x1".into()], &[&[0, 1], &[1, 0]])
}

/// Two states over `n1()` swapped by `i`.
pub fn swap_single() -> FiniteBiAction {
    machine(&n1(), vec!["x0".into(), "x1".into()], &[&[1, 0]])
}

/// `x0 ↦ x1`, `x1 ↦ x1` over `n1()`.
pub fn second_machine() -> FiniteBiAction {
    machine(&n1(), vec!["x0".into(), "x1".into()], &[&[1, 1]])
}

/// A 3-cycle `0 → 1 → 2 → 0` with a tail `3 → 0`.
pub fn cycle_with_tail() -> FiniteBiAction {
    machine(&n1(), names(4), &[&[1, 2, 0, 0]])
}
