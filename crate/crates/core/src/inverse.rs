//! Reversible cores and the action-inverting functors on finite one-sided actions.
//!
//! For a finite action whose right side is trivial, equivariant maps
//! `f: I → A` (with `I` acting on itself by right multiplication) correspond to
//! their values `f(1)`, and those values are exactly the points whose orbit is
//! acted on injectively by every monoid element. The inverted action is
//! therefore realized on that subset, the reversible core `A^l`, where every
//! generator permutes the core and the inverse permutations give the new
//! action on the opposite side. The right-to-left case is symmetric.

use rayon::prelude::*;

use crate::action::{EquivariantMap, FiniteBiAction};
use crate::error::{Error, Result, Side};
use crate::monoid::transition_monoid;
use crate::transform::Transform;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InversionSide {
    /// `lMap`: left action inverted into a right action.
    LeftToRight,
    /// `rMap`: right action inverted into a left action.
    RightToLeft,
    /// `Inv = lMap ∘ rMap`.
    Total,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvertedAction {
    base: FiniteBiAction,
    side: InversionSide,
    core: Vec<usize>,
    action: FiniteBiAction,
}

impl InvertedAction {
    pub fn base(&self) -> &FiniteBiAction {
        &self.base
    }

    pub fn side(&self) -> InversionSide {
        self.side
    }

    /// Core states as ascending indices into the base carrier.
    pub fn core(&self) -> &[usize] {
        &self.core
    }

    /// The inverted action on the core.
    pub fn action(&self) -> &FiniteBiAction {
        &self.action
    }
}

fn require_opposite_trivial(a: &FiniteBiAction, side: Side, op: &'static str) -> Result<()> {
    if !a.is_side_trivial(side.opposite()) {
        return Err(Error::NotOneSided {
            op,
            side: side.opposite(),
        });
    }
    Ok(())
}

/// `A^l` (side `Left`) or `A^r` (side `Right`): points `x` such that every
/// monoid element is injective on the orbit of `x`.
pub fn reversible_core(a: &FiniteBiAction, side: Side) -> Result<Vec<usize>> {
    require_opposite_trivial(a, side, "reversible core")?;
    let tm = transition_monoid(a.family(side), a.len(), a.monoid().has_unit())?;
    Ok((0..a.len())
        .into_par_iter()
        .filter(|&x| {
            let orbit = tm.orbit(x);
            tm.elements().iter().all(|t| t.is_injective_on(&orbit))
        })
        .collect())
}

/// Restriction of the acting family to the core, as permutations of the core.
fn core_permutations(
    a: &FiniteBiAction,
    side: Side,
    core: &[usize],
) -> Result<(FiniteBiAction, Vec<Transform>)> {
    let restricted = a.restrict(core).map_err(|_| {
        Error::Internal("reversible core is not invariant under the action".into())
    })?;
    let perms = restricted.family(side).to_vec();
    if let Some(g) = perms.iter().position(|t| !t.is_bijective()) {
        return Err(Error::Internal(format!(
            "generator `{}` does not permute the reversible core",
            a.monoid().generators()[g]
        )));
    }
    Ok((restricted, perms))
}

fn inverted_on(
    monoid: &crate::monoid::MonoidPresentation,
    states: Vec<String>,
    perms: &[Transform],
    side: Side,
) -> Result<FiniteBiAction> {
    let inverses: Vec<Transform> = perms
        .iter()
        .map(|t| t.inverse().expect("checked bijective"))
        .collect();
    match side {
        Side::Left => FiniteBiAction::right_only(monoid.clone(), states, inverses),
        Side::Right => FiniteBiAction::left_only(monoid.clone(), states, inverses),
    }
}

/// The inverse action from left to right (`side = Left`) or right to left.
pub fn invert(a: &FiniteBiAction, side: Side) -> Result<InvertedAction> {
    let core = reversible_core(a, side)?;
    let (restricted, perms) = core_permutations(a, side, &core)?;
    let action = inverted_on(a.monoid(), restricted.states().to_vec(), &perms, side)?;
    Ok(InvertedAction {
        base: a.clone(),
        side: match side {
            Side::Left => InversionSide::LeftToRight,
            Side::Right => InversionSide::RightToLeft,
        },
        core,
        action,
    })
}

/// Restriction of `f` to cores, as a map between the inverted actions.
pub fn invert_map(f: &EquivariantMap, side: Side) -> Result<EquivariantMap> {
    let src = invert(f.source(), side)?;
    let dst = invert(f.target(), side)?;
    restrict_to_cores(f, &src, &dst)
}

pub(crate) fn restrict_to_cores(
    f: &EquivariantMap,
    src: &InvertedAction,
    dst: &InvertedAction,
) -> Result<EquivariantMap> {
    let mut pos = vec![usize::MAX; f.target().len()];
    for (k, &y) in dst.core.iter().enumerate() {
        pos[y] = k;
    }
    let map = src
        .core
        .iter()
        .map(|&x| match pos[f.apply(x)] {
            usize::MAX => Err(Error::Diagram(format!(
                "core state `{}` leaves the target core",
                f.source().states()[x]
            ))),
            k => Ok(k),
        })
        .collect::<Result<Vec<_>>>()?;
    EquivariantMap::new(src.action.clone(), dst.action.clone(), map).map_err(|e| match e {
        Error::NotEquivariant => {
            Error::Internal("restriction of an equivariant map to cores is not equivariant".into())
        }
        other => other,
    })
}

/// `Inv(M)` for a one-sided action, realized on its reversible core.
///
/// For a left-only `M`, `rMap(M)` is `M` itself (an equivariant `f: I → M`
/// is determined freely by `f(1)`), so `Inv(M)` is the left-to-right inverse.
/// For a right-only `M`, `rMap(M)` is the core with inverted left action, and
/// inverting again gives back the original right action on the core.
pub fn inv_total(m: &FiniteBiAction) -> Result<InvertedAction> {
    let side = m.acting_side().ok_or(Error::TwoSided { op: "Inv" })?;
    let core = reversible_core(m, side)?;
    let (restricted, perms) = core_permutations(m, side, &core)?;
    let action = match side {
        Side::Left => inverted_on(m.monoid(), restricted.states().to_vec(), &perms, side)?,
        Side::Right => restricted,
    };
    Ok(InvertedAction {
        base: m.clone(),
        side: InversionSide::Total,
        core,
        action,
    })
}

/// `Inv(f)` for a map between one-sided actions: the restriction to cores.
pub fn inv_map(f: &EquivariantMap) -> Result<EquivariantMap> {
    let src = inv_total(f.source())?;
    let dst = inv_total(f.target())?;
    restrict_to_cores(f, &src, &dst)
}

/// Evaluation at the unit, `f ↦ f(1)`: under the core realization, the
/// inclusion of the core into the base carrier.
pub fn evaluate(v: &InvertedAction) -> Result<EquivariantMap> {
    if !v.base.monoid().has_unit() {
        return Err(Error::NoUnit);
    }
    EquivariantMap::new(v.action.clone(), v.base.clone(), v.core.clone())
}
