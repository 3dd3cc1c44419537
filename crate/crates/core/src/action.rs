//! Finite biactions, twisted equivariance and the constructions built on it.
//!
//! A biaction of `I` on a finite carrier is a pair of homomorphisms: `α_l`
//! into endofunctions composed as usual (`α_l(i⊗j) = α_l(i)∘α_l(j)`) and `α_r`
//! into endofunctions applied on the right (`(a)α_r(i⊗j) = ((a)α_r(i))α_r(j)`),
//! such that the two families commute. Both families are stored by their
//! generator images.
//!
//! A map `f: A → B` is equivariant when
//! `(f(α_l(i)(a)))β_r(i) = β_l(i)(f((a)α_r(i)))` for all `i` and `a`. The
//! identity is stable under products in `I`, so it is checked on generators;
//! [`is_equivariant_on_image`] checks the full image and exists to confirm that
//! reduction.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result, Side};
use crate::monoid::{relation_violation, MonoidPresentation};
use crate::transform::Transform;

/// Default bound on materialized function sets and brute-force enumerations.
pub const DEFAULT_FUNCSET_LIMIT: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteBiAction {
    monoid: MonoidPresentation,
    states: Vec<String>,
    left: Vec<Transform>,
    right: Vec<Transform>,
}

impl FiniteBiAction {
    /// Builds and validates a biaction. A missing side is trivial.
    pub fn new(
        monoid: MonoidPresentation,
        states: Vec<String>,
        left: Option<Vec<Transform>>,
        right: Option<Vec<Transform>>,
    ) -> Result<Self> {
        let n = states.len();
        let rank = monoid.rank();
        let mut seen = HashSet::new();
        for s in &states {
            if !seen.insert(s.as_str()) {
                return Err(Error::DuplicateState(s.clone()));
            }
        }
        let left = left.unwrap_or_else(|| vec![Transform::identity(n); rank]);
        let right = right.unwrap_or_else(|| vec![Transform::identity(n); rank]);
        let a = FiniteBiAction {
            monoid,
            states,
            left,
            right,
        };
        a.check()?;
        Ok(a)
    }

    pub fn left_only(
        monoid: MonoidPresentation,
        states: Vec<String>,
        left: Vec<Transform>,
    ) -> Result<Self> {
        Self::new(monoid, states, Some(left), None)
    }

    pub fn right_only(
        monoid: MonoidPresentation,
        states: Vec<String>,
        right: Vec<Transform>,
    ) -> Result<Self> {
        Self::new(monoid, states, None, Some(right))
    }

    pub fn trivial(monoid: MonoidPresentation, states: Vec<String>) -> Result<Self> {
        Self::new(monoid, states, None, None)
    }

    /// The one-point set `*` with the trivial action.
    pub fn point(monoid: MonoidPresentation) -> Self {
        Self::trivial(monoid, vec!["*".to_string()]).expect("point is a valid action")
    }

    fn check(&self) -> Result<()> {
        let n = self.states.len();
        let rank = self.monoid.rank();
        for (side, family) in [(Side::Left, &self.left), (Side::Right, &self.right)] {
            if family.len() != rank {
                return Err(Error::Arity {
                    expected: rank,
                    found: family.len(),
                });
            }
            for (g, t) in family.iter().enumerate() {
                let context = format!("{side} action of `{}`", self.monoid.generators()[g]);
                if t.len() != n {
                    return Err(Error::LengthMismatch {
                        expected: n,
                        found: t.len(),
                    });
                }
                if let Some(&target) = t.images().iter().find(|&&x| x >= n) {
                    return Err(Error::OutOfRange {
                        context,
                        target,
                        size: n,
                    });
                }
            }
            if let Some(detail) = relation_violation(&self.monoid, family, side)? {
                return Err(Error::Relation { side, detail });
            }
        }
        for (g, l) in self.left.iter().enumerate() {
            for (h, r) in self.right.iter().enumerate() {
                if let Some(a) = (0..n).find(|&a| r.apply(l.apply(a)) != l.apply(r.apply(a))) {
                    return Err(Error::Commutation {
                        left: self.monoid.generators()[g].clone(),
                        right: self.monoid.generators()[h].clone(),
                        state: self.states[a].clone(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn monoid(&self) -> &MonoidPresentation {
        &self.monoid
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn left_family(&self) -> &[Transform] {
        &self.left
    }

    pub fn right_family(&self) -> &[Transform] {
        &self.right
    }

    pub fn family(&self, side: Side) -> &[Transform] {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn state_index(&self, name: &str) -> Result<usize> {
        self.states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn is_side_trivial(&self, side: Side) -> bool {
        self.family(side).iter().all(Transform::is_identity)
    }

    /// Right side trivial.
    pub fn is_left_only(&self) -> bool {
        self.is_side_trivial(Side::Right)
    }

    /// Left side trivial.
    pub fn is_right_only(&self) -> bool {
        self.is_side_trivial(Side::Left)
    }

    /// The side carrying the action of a one-sided biaction. Trivial actions
    /// report `Left`; two-sided actions report `None`.
    pub fn acting_side(&self) -> Option<Side> {
        if self.is_left_only() {
            Some(Side::Left)
        } else if self.is_right_only() {
            Some(Side::Right)
        } else {
            None
        }
    }

    /// Image of the monoid as `(α_l(i), α_r(i))` pairs, in breadth-first order.
    pub fn image(&self) -> Vec<(Transform, Transform)> {
        joint_image(
            &[(Side::Left, &self.left), (Side::Right, &self.right)],
            self.monoid.rank(),
            self.monoid.has_unit(),
            self.len(),
        )
        .into_iter()
        .map(|mut v| {
            let r = v.pop().expect("two families");
            let l = v.pop().expect("two families");
            (l, r)
        })
        .collect()
    }

    /// Restriction to an invariant subset (any order; result keeps carrier order).
    pub fn restrict(&self, subset: &[usize]) -> Result<FiniteBiAction> {
        let mut members: Vec<usize> = subset.to_vec();
        members.sort_unstable();
        members.dedup();
        if let Some(&x) = members.iter().find(|&&x| x >= self.len()) {
            return Err(Error::OutOfRange {
                context: "restriction".into(),
                target: x,
                size: self.len(),
            });
        }
        let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let restricted = |family: &[Transform]| -> Result<Vec<Transform>> {
            family
                .iter()
                .map(|t| {
                    members
                        .iter()
                        .map(|&x| pos.get(&t.apply(x)).copied().ok_or(Error::NotInvariant))
                        .collect::<Result<Vec<_>>>()
                        .map(Transform::new)
                })
                .collect()
        };
        let left = restricted(&self.left)?;
        let right = restricted(&self.right)?;
        Ok(FiniteBiAction {
            monoid: self.monoid.clone(),
            states: members.iter().map(|&x| self.states[x].clone()).collect(),
            left,
            right,
        })
    }

    /// The same families over another presentation of equal rank, revalidated.
    pub fn with_monoid(&self, monoid: MonoidPresentation) -> Result<FiniteBiAction> {
        if monoid.rank() != self.monoid.rank() {
            return Err(Error::Arity {
                expected: monoid.rank(),
                found: self.monoid.rank(),
            });
        }
        FiniteBiAction::new(
            monoid,
            self.states.clone(),
            Some(self.left.clone()),
            Some(self.right.clone()),
        )
    }

    /// Same carrier, different names.
    pub fn renamed(&self, states: Vec<String>) -> Result<FiniteBiAction> {
        if states.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: states.len(),
            });
        }
        FiniteBiAction::new(
            self.monoid.clone(),
            states,
            Some(self.left.clone()),
            Some(self.right.clone()),
        )
    }
}

/// Breadth-first image of `I` in a product of endofunction monoids.
///
/// Each family is composed according to its side, so the tuple for a word
/// `w` is `(α(w))` per family. Families may live on different carriers.
pub(crate) fn joint_image(
    families: &[(Side, &[Transform])],
    rank: usize,
    unital: bool,
    degree_hint: usize,
) -> Vec<Vec<Transform>> {
    let gens: Vec<Vec<Transform>> = (0..rank)
        .map(|g| families.iter().map(|(_, f)| f[g].clone()).collect())
        .collect();
    let mut seen: HashSet<Vec<Transform>> = HashSet::new();
    let mut out: Vec<Vec<Transform>> = Vec::new();
    let mut push = |t: Vec<Transform>, out: &mut Vec<Vec<Transform>>| {
        if seen.insert(t.clone()) {
            out.push(t);
        }
    };
    if unital {
        let id = families
            .iter()
            .map(|(_, f)| Transform::identity(f.first().map_or(degree_hint, Transform::len)))
            .collect();
        push(id, &mut out);
    }
    for g in &gens {
        push(g.clone(), &mut out);
    }
    let mut head = 0;
    while head < out.len() {
        let e = out[head].clone();
        for g in &gens {
            let next = families
                .iter()
                .enumerate()
                .map(|(k, (side, _))| match side {
                    Side::Left => e[k].after(&g[k]),
                    Side::Right => e[k].then(&g[k]),
                })
                .collect();
            push(next, &mut out);
        }
        head += 1;
    }
    out
}

/// Flags describing which sides act invertibly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubActionFlags {
    /// For every `i`, `α_l(i)` or `α_r(i)` is a bijection.
    pub semi_invertible: bool,
    /// Every `α_l(i)` is a bijection.
    pub invertible_left: bool,
    /// Every `α_r(i)` is a bijection.
    pub invertible_right: bool,
}

/// Re-checks every biaction invariant and computes the invertibility flags.
pub fn validate_biaction(a: &FiniteBiAction) -> Result<SubActionFlags> {
    a.check()?;
    let invertible_left = a.left.iter().all(Transform::is_bijective);
    let invertible_right = a.right.iter().all(Transform::is_bijective);
    let semi_invertible = invertible_left
        || invertible_right
        || a
            .image()
            .iter()
            .all(|(l, r)| l.is_bijective() || r.is_bijective());
    Ok(SubActionFlags {
        semi_invertible,
        invertible_left,
        invertible_right,
    })
}

fn check_map_shape(f: &[usize], a: &FiniteBiAction, b: &FiniteBiAction) -> Result<()> {
    if a.monoid != b.monoid {
        return Err(Error::MonoidMismatch);
    }
    if f.len() != a.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            found: f.len(),
        });
    }
    if let Some(&t) = f.iter().find(|&&t| t >= b.len()) {
        return Err(Error::OutOfRange {
            context: "map".into(),
            target: t,
            size: b.len(),
        });
    }
    Ok(())
}

#[inline]
fn equivariant_unchecked(f: &[usize], a: &FiniteBiAction, b: &FiniteBiAction) -> bool {
    (0..a.monoid.rank()).all(|g| {
        let (al, ar, bl, br) = (&a.left[g], &a.right[g], &b.left[g], &b.right[g]);
        (0..a.len()).all(|x| br.apply(f[al.apply(x)]) == bl.apply(f[ar.apply(x)]))
    })
}

/// Twisted equivariance of `f: A → B`, checked on generators.
pub fn is_equivariant(f: &[usize], a: &FiniteBiAction, b: &FiniteBiAction) -> Result<bool> {
    check_map_shape(f, a, b)?;
    Ok(equivariant_unchecked(f, a, b))
}

/// Twisted equivariance checked on every element of the joint image of `I`.
pub fn is_equivariant_on_image(
    f: &[usize],
    a: &FiniteBiAction,
    b: &FiniteBiAction,
) -> Result<bool> {
    check_map_shape(f, a, b)?;
    let image = joint_image(
        &[
            (Side::Left, &a.left),
            (Side::Right, &a.right),
            (Side::Left, &b.left),
            (Side::Right, &b.right),
        ],
        a.monoid.rank(),
        a.monoid.has_unit(),
        0,
    );
    Ok(image.iter().all(|t| {
        let (al, ar, bl, br) = (&t[0], &t[1], &t[2], &t[3]);
        (0..a.len()).all(|x| br.apply(f[al.apply(x)]) == bl.apply(f[ar.apply(x)]))
    }))
}

/// A certified equivariant map. Construction fails unless the map is equivariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantMap {
    source: Arc<FiniteBiAction>,
    target: Arc<FiniteBiAction>,
    map: Vec<usize>,
}

impl EquivariantMap {
    pub fn new(
        source: impl Into<Arc<FiniteBiAction>>,
        target: impl Into<Arc<FiniteBiAction>>,
        map: Vec<usize>,
    ) -> Result<Self> {
        let source = source.into();
        let target = target.into();
        if !is_equivariant(&map, &source, &target)? {
            return Err(Error::NotEquivariant);
        }
        Ok(EquivariantMap {
            source,
            target,
            map,
        })
    }

    pub fn identity(a: impl Into<Arc<FiniteBiAction>>) -> Self {
        let a = a.into();
        let map = (0..a.len()).collect();
        EquivariantMap {
            source: a.clone(),
            target: a,
            map,
        }
    }

    pub fn source(&self) -> &FiniteBiAction {
        &self.source
    }

    pub fn target(&self) -> &FiniteBiAction {
        &self.target
    }

    pub fn source_arc(&self) -> &Arc<FiniteBiAction> {
        &self.source
    }

    pub fn target_arc(&self) -> &Arc<FiniteBiAction> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `next ∘ self`. Fails when the composite is not equivariant, which can
    /// happen when the middle object is not semi-invertible.
    pub fn then(&self, next: &EquivariantMap) -> Result<EquivariantMap> {
        if !same_object(&self.target, &next.source) {
            return Err(Error::Diagram("composite of maps that do not meet".into()));
        }
        let map = self.map.iter().map(|&x| next.map[x]).collect();
        EquivariantMap::new(self.source.clone(), next.target.clone(), map)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = HashSet::new();
        self.map.iter().all(|&x| seen.insert(x))
    }

    pub fn is_surjective(&self) -> bool {
        let hit: HashSet<usize> = self.map.iter().copied().collect();
        hit.len() == self.target.len()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.len() == self.target.len() && self.is_injective()
    }

    /// The set-theoretic inverse of a bijective map, certified equivariant.
    pub fn inverse(&self) -> Result<EquivariantMap> {
        if !self.is_bijective() {
            return Err(Error::Diagram("inverse of a non-bijective map".into()));
        }
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        EquivariantMap::new(self.target.clone(), self.source.clone(), inv)
    }
}

pub(crate) fn same_object(a: &Arc<FiniteBiAction>, b: &Arc<FiniteBiAction>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn pair_name(x: &str, y: &str) -> String {
    format!("({x},{y})")
}

/// Cartesian product with componentwise action, carrier in lexicographic order.
pub fn product(a: &FiniteBiAction, b: &FiniteBiAction) -> Result<FiniteBiAction> {
    if a.monoid != b.monoid {
        return Err(Error::MonoidMismatch);
    }
    let m = b.len();
    let states = a
        .states
        .iter()
        .flat_map(|x| b.states.iter().map(move |y| pair_name(x, y)))
        .collect();
    let pair = |fa: &Transform, fb: &Transform| -> Transform {
        Transform::new(
            (0..a.len())
                .flat_map(|x| (0..m).map(move |y| fa.apply(x) * m + fb.apply(y)))
                .collect(),
        )
    };
    let left = a.left.iter().zip(&b.left).map(|(fa, fb)| pair(fa, fb)).collect();
    let right = a.right.iter().zip(&b.right).map(|(fa, fb)| pair(fa, fb)).collect();
    FiniteBiAction::new(a.monoid.clone(), states, Some(left), Some(right))
}

/// Tagged disjoint union: `inl.x` for states of `a`, then `inr.y` for `b`.
pub fn coproduct(a: &FiniteBiAction, b: &FiniteBiAction) -> Result<FiniteBiAction> {
    if a.monoid != b.monoid {
        return Err(Error::MonoidMismatch);
    }
    let n = a.len();
    let states = a
        .states
        .iter()
        .map(|x| format!("inl.{x}"))
        .chain(b.states.iter().map(|y| format!("inr.{y}")))
        .collect();
    let join = |fa: &Transform, fb: &Transform| -> Transform {
        Transform::new(
            fa.images()
                .iter()
                .copied()
                .chain(fb.images().iter().map(|&y| y + n))
                .collect(),
        )
    };
    let left = a.left.iter().zip(&b.left).map(|(fa, fb)| join(fa, fb)).collect();
    let right = a.right.iter().zip(&b.right).map(|(fa, fb)| join(fa, fb)).collect();
    FiniteBiAction::new(a.monoid.clone(), states, Some(left), Some(right))
}

/// `|B|^|A|`, or a size-bound error above `limit`.
pub fn function_count(domain: usize, codomain: usize, limit: usize) -> Result<usize> {
    let too_big = || Error::SizeBound {
        what: "function set",
        size: format!("{codomain}^{domain}"),
        limit,
    };
    let exp = u32::try_from(domain).map_err(|_| too_big())?;
    let count = codomain.checked_pow(exp).ok_or_else(too_big)?;
    if count > limit {
        return Err(too_big());
    }
    Ok(count)
}

/// Function with index `index` in the lexicographic enumeration of maps
/// `{0..domain} → {0..codomain}`; the image of `0` is the most significant digit.
pub fn decode_function(mut index: usize, domain: usize, codomain: usize) -> Vec<usize> {
    let mut f = vec![0; domain];
    for slot in f.iter_mut().rev() {
        *slot = index % codomain;
        index /= codomain;
    }
    f
}

pub fn encode_function(f: &[usize], codomain: usize) -> usize {
    f.iter().fold(0, |acc, &y| acc * codomain + y)
}

/// The induced action on `[A, B]`:
/// `[α,β]_l(i)(f) = β_l(i) ∘ f ∘ α_r(i)` and `(f)[α,β]_r(i) = β_r(i) ∘ f ∘ α_l(i)`.
pub fn function_set_action(
    a: &FiniteBiAction,
    b: &FiniteBiAction,
    limit: usize,
) -> Result<FiniteBiAction> {
    if a.monoid != b.monoid {
        return Err(Error::MonoidMismatch);
    }
    let (n, m) = (a.len(), b.len());
    let count = function_count(n, m, limit)?;
    let functions: Vec<Vec<usize>> = (0..count).map(|k| decode_function(k, n, m)).collect();
    let states = functions
        .iter()
        .map(|f| {
            let parts: Vec<&str> = f.iter().map(|&y| b.states[y].as_str()).collect();
            format!("[{}]", parts.join(","))
        })
        .collect();
    let induce = |inner: &Transform, outer: &Transform| -> Transform {
        Transform::new(
            functions
                .iter()
                .map(|f| {
                    let g: Vec<usize> = (0..n).map(|x| outer.apply(f[inner.apply(x)])).collect();
                    encode_function(&g, m)
                })
                .collect(),
        )
    };
    let left = (0..a.monoid.rank()).map(|g| induce(&a.right[g], &b.left[g])).collect();
    let right = (0..a.monoid.rank()).map(|g| induce(&a.left[g], &b.right[g])).collect();
    FiniteBiAction::new(a.monoid.clone(), states, Some(left), Some(right))
}

/// `C_A(I) = {a : (a)α_r(i) = α_l(i)(a) for all i}`, ascending.
///
/// This is also `Fix_I(A)`: a map from the trivial point is equivariant
/// exactly when its value lies here.
pub fn centralizer(a: &FiniteBiAction) -> Vec<usize> {
    (0..a.len())
        .filter(|&x| (0..a.monoid.rank()).all(|g| a.right[g].apply(x) == a.left[g].apply(x)))
        .collect()
}

/// Every equivariant map `A → B`, by exhaustive search in lexicographic order.
pub fn enumerate_equivariant_maps(
    a: &FiniteBiAction,
    b: &FiniteBiAction,
    limit: usize,
) -> Result<Vec<EquivariantMap>> {
    if a.monoid != b.monoid {
        return Err(Error::MonoidMismatch);
    }
    let (n, m) = (a.len(), b.len());
    let count = function_count(n, m, limit)?;
    let source = Arc::new(a.clone());
    let target = Arc::new(b.clone());
    let maps: Vec<Vec<usize>> = (0..count)
        .into_par_iter()
        .map(|k| decode_function(k, n, m))
        .filter(|f| equivariant_unchecked(f, a, b))
        .collect();
    Ok(maps
        .into_iter()
        .map(|map| EquivariantMap {
            source: source.clone(),
            target: target.clone(),
            map,
        })
        .collect())
}

fn check_curry_shapes(
    a: &FiniteBiAction,
    b: &FiniteBiAction,
    c: &FiniteBiAction,
    limit: usize,
) -> Result<usize> {
    if a.monoid != b.monoid || b.monoid != c.monoid {
        return Err(Error::MonoidMismatch);
    }
    function_count(b.len(), c.len(), limit)
}

/// `f: A×B → C` to `f̄: A → [B,C]` with `f̄(a)(b) = f(a,b)`, as indices into
/// the carriers of [`product`] and [`function_set_action`].
pub fn curry(
    a: &FiniteBiAction,
    b: &FiniteBiAction,
    c: &FiniteBiAction,
    f: &[usize],
    limit: usize,
) -> Result<Vec<usize>> {
    check_curry_shapes(a, b, c, limit)?;
    let m = b.len();
    if f.len() != a.len() * m {
        return Err(Error::LengthMismatch {
            expected: a.len() * m,
            found: f.len(),
        });
    }
    if let Some(&t) = f.iter().find(|&&t| t >= c.len()) {
        return Err(Error::OutOfRange {
            context: "curried map".into(),
            target: t,
            size: c.len(),
        });
    }
    Ok((0..a.len())
        .map(|x| encode_function(&f[x * m..(x + 1) * m], c.len()))
        .collect())
}

/// Inverse of [`curry`].
pub fn uncurry(
    a: &FiniteBiAction,
    b: &FiniteBiAction,
    c: &FiniteBiAction,
    g: &[usize],
    limit: usize,
) -> Result<Vec<usize>> {
    let count = check_curry_shapes(a, b, c, limit)?;
    if g.len() != a.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            found: g.len(),
        });
    }
    if let Some(&t) = g.iter().find(|&&t| t >= count) {
        return Err(Error::OutOfRange {
            context: "uncurried map".into(),
            target: t,
            size: count,
        });
    }
    Ok(g.iter()
        .flat_map(|&k| decode_function(k, b.len(), c.len()))
        .collect())
}

/// For a group table, the left action `μ(g)(a) = α_l(g)((a)α_r(g⁻¹))`.
pub fn group_collapse(a: &FiniteBiAction) -> Result<FiniteBiAction> {
    let p = &a.monoid;
    if p.kind() != crate::monoid::MonoidKind::FiniteTable {
        return Err(Error::WrongMonoidKind {
            op: "group collapse",
            expected: "finite_table group",
        });
    }
    let mut mu = Vec::with_capacity(p.rank());
    for g in 0..p.rank() {
        let inv = p
            .inverse_of(g)
            .ok_or_else(|| Error::NotAGroup(p.generators()[g].clone()))?;
        mu.push(a.right[inv].then(&a.left[g]));
    }
    FiniteBiAction::left_only(p.clone(), a.states.clone(), mu)
}
