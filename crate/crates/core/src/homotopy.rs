//! Weak equivalences and the finite constructions around them.
//!
//! An equivariant map between one-sided finite actions is a weak equivalence
//! when its restriction to reversible cores is a bijection. Pushouts are
//! quotients of coproducts by the congruence generated by the gluing maps,
//! pullbacks are fibre products, and every weak equivalence factors as an
//! injective weak equivalence followed by a surjective one.

use std::collections::HashMap;
use std::sync::Arc;

use crate::action::{coproduct, product, same_object, EquivariantMap, FiniteBiAction};
use crate::error::{Error, Result, Side};
use crate::inverse::{evaluate, inv_total, restrict_to_cores};
use crate::monoid::transition_monoid;

#[derive(Clone, Debug)]
pub struct WeakEquivalenceCertificate {
    pub map: EquivariantMap,
    /// `Inv(f)`: the restriction of `f` to the reversible cores.
    pub core_restriction: EquivariantMap,
    pub verdict: bool,
}

/// Decides whether `f` induces a bijection `Inv(A) → Inv(B)`.
pub fn is_weak_equivalence(f: &EquivariantMap) -> Result<WeakEquivalenceCertificate> {
    if !f.source().monoid().has_unit() {
        return Err(Error::NoUnit);
    }
    let src = inv_total(f.source())?;
    let dst = inv_total(f.target())?;
    let core_restriction = restrict_to_cores(f, &src, &dst)?;
    let verdict = core_restriction.is_bijective();
    Ok(WeakEquivalenceCertificate {
        map: f.clone(),
        core_restriction,
        verdict,
    })
}

/// Forward orbit size of every state under the family on `side`.
fn orbit_sizes(a: &FiniteBiAction, side: Side) -> Result<Vec<usize>> {
    let tm = transition_monoid(a.family(side), a.len(), true)?;
    Ok((0..a.len()).map(|x| tm.orbit(x).len()).collect())
}

/// Lexicographically least equivariant bijection `A → B`, if any.
///
/// When both actions act on the same side, an isomorphism conjugates the
/// actions and so preserves forward orbit sizes; the search is then pruned
/// by requiring equal orbit multisets and matching orbit sizes per state.
pub fn find_isomorphism(a: &FiniteBiAction, b: &FiniteBiAction) -> Result<Option<EquivariantMap>> {
    if a.monoid() != b.monoid() {
        return Err(Error::MonoidMismatch);
    }
    let n = a.len();
    if n != b.len() {
        return Ok(None);
    }
    let same_side = [Side::Left, Side::Right].into_iter().find(|&s| {
        a.is_side_trivial(s.opposite()) && b.is_side_trivial(s.opposite())
    });
    let candidates: Vec<Vec<usize>> = match same_side {
        Some(side) => {
            let (sa, sb) = (orbit_sizes(a, side)?, orbit_sizes(b, side)?);
            let (mut ma, mut mb) = (sa.clone(), sb.clone());
            ma.sort_unstable();
            mb.sort_unstable();
            if ma != mb {
                return Ok(None);
            }
            sa.iter()
                .map(|&s| (0..n).filter(|&y| sb[y] == s).collect())
                .collect()
        }
        None => vec![(0..n).collect(); n],
    };

    // constraint (g, x) involves f at α_l(g)(x) and α_r(g)(x); check it once
    // the later of the two has been assigned
    let rank = a.monoid().rank();
    let mut checks: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for g in 0..rank {
        for x in 0..n {
            let last = a.left_family()[g].apply(x).max(a.right_family()[g].apply(x));
            checks[last].push((g, x));
        }
    }
    let holds = |f: &[usize], (g, x): (usize, usize)| {
        let l = f[a.left_family()[g].apply(x)];
        let r = f[a.right_family()[g].apply(x)];
        b.right_family()[g].apply(l) == b.left_family()[g].apply(r)
    };

    let mut f = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut choice = vec![0usize; n];
    let mut k = 0usize;
    // iterative depth-first search over positions 0..n
    loop {
        if k == n {
            let map = f.clone();
            return EquivariantMap::new(a.clone(), b.clone(), map).map(Some);
        }
        let mut advanced = false;
        while choice[k] < candidates[k].len() {
            let y = candidates[k][choice[k]];
            choice[k] += 1;
            if used[y] {
                continue;
            }
            f[k] = y;
            if checks[k].iter().all(|&c| holds(&f, c)) {
                used[y] = true;
                advanced = true;
                break;
            }
        }
        if advanced {
            k += 1;
            if k < n {
                choice[k] = 0;
            }
            continue;
        }
        f[k] = usize::MAX;
        if k == 0 {
            return Ok(None);
        }
        k -= 1;
        used[f[k]] = false;
    }
}

/// Result of [`pushout`]: `f'∘u = u'∘f`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub object: Arc<FiniteBiAction>,
    /// `f': A' → B'`.
    pub f_prime: EquivariantMap,
    /// `u': B → B'`.
    pub u_prime: EquivariantMap,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    /// Merges, keeping the smaller root. Returns whether anything changed.
    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.0[hi] = lo;
        true
    }
}

/// Pushout of `u: A → A'` and `f: A → B`: `A' ⊔ B` modulo the smallest congruence
/// identifying `u(a)` with `f(a)`. Blocks are ordered and named by their least
/// member.
pub fn pushout(u: &EquivariantMap, f: &EquivariantMap) -> Result<Pushout> {
    if !same_object(u.source_arc(), f.source_arc()) {
        return Err(Error::Diagram("pushout legs have different sources".into()));
    }
    let (a_prime, b) = (u.target(), f.target());
    let sum = coproduct(a_prime, b)?;
    let offset = a_prime.len();
    let mut uf = UnionFind::new(sum.len());
    for x in 0..u.source().len() {
        uf.union(u.apply(x), offset + f.apply(x));
    }
    let families: Vec<_> = sum
        .left_family()
        .iter()
        .chain(sum.right_family())
        .cloned()
        .collect();
    loop {
        let mut changed = false;
        for t in &families {
            for x in 0..sum.len() {
                let root = uf.find(x);
                changed |= uf.union(t.apply(x), t.apply(root));
            }
        }
        if !changed {
            break;
        }
    }
    let mut block_of_root: HashMap<usize, usize> = HashMap::new();
    let mut representatives = Vec::new();
    let block: Vec<usize> = (0..sum.len())
        .map(|x| {
            let r = uf.find(x);
            let next = representatives.len();
            *block_of_root.entry(r).or_insert_with(|| {
                representatives.push(x);
                next
            })
        })
        .collect();
    let quotient = |family: &[crate::Transform]| -> Vec<crate::Transform> {
        family
            .iter()
            .map(|t| {
                crate::Transform::new(representatives.iter().map(|&m| block[t.apply(m)]).collect())
            })
            .collect()
    };
    let object = Arc::new(FiniteBiAction::new(
        sum.monoid().clone(),
        representatives.iter().map(|&m| sum.states()[m].clone()).collect(),
        Some(quotient(sum.left_family())),
        Some(quotient(sum.right_family())),
    )?);
    let f_prime = EquivariantMap::new(
        u.target_arc().clone(),
        object.clone(),
        (0..offset).map(|x| block[x]).collect(),
    )?;
    let u_prime = EquivariantMap::new(
        f.target_arc().clone(),
        object.clone(),
        (0..b.len()).map(|y| block[offset + y]).collect(),
    )?;
    Ok(Pushout {
        object,
        f_prime,
        u_prime,
    })
}

/// Result of [`pullback`]: `g∘v' = v∘g'`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub object: Arc<FiniteBiAction>,
    /// `g': X' → Y'`.
    pub g_prime: EquivariantMap,
    /// `v': X' → X`.
    pub v_prime: EquivariantMap,
}

/// Pullback of `g: X → Y` and `v: Y' → Y`: pairs `(x, y')` with `g(x) = v(y')`, in
/// lexicographic order, with componentwise action.
pub fn pullback(g: &EquivariantMap, v: &EquivariantMap) -> Result<Pullback> {
    if !same_object(g.target_arc(), v.target_arc()) {
        return Err(Error::Diagram("pullback legs have different targets".into()));
    }
    let (x, y_prime) = (g.source(), v.source());
    let m = y_prime.len();
    let pairs: Vec<(usize, usize)> = (0..x.len())
        .flat_map(|a| (0..m).map(move |b| (a, b)))
        .filter(|&(a, b)| g.apply(a) == v.apply(b))
        .collect();
    let prod = product(x, y_prime)?;
    let subset: Vec<usize> = pairs.iter().map(|&(a, b)| a * m + b).collect();
    let object = Arc::new(prod.restrict(&subset)?);
    let g_prime = EquivariantMap::new(
        object.clone(),
        v.source_arc().clone(),
        pairs.iter().map(|&(_, b)| b).collect(),
    )?;
    let v_prime = EquivariantMap::new(
        object.clone(),
        g.source_arc().clone(),
        pairs.iter().map(|&(a, _)| a).collect(),
    )?;
    Ok(Pullback {
        object,
        g_prime,
        v_prime,
    })
}

/// `w = v∘u` with `u` an injective and `v` a surjective weak equivalence.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub u: EquivariantMap,
    pub v: EquivariantMap,
    pub composite_equals: bool,
}

#[derive(Clone, Debug)]
pub struct FactorizationCertificate {
    pub factorization: Factorization,
    /// The injection `ũ: N → M'` with `v∘ũ = id`.
    pub u_tilde: EquivariantMap,
    pub u_injective: bool,
    pub u_weak_equivalence: bool,
    pub v_surjective: bool,
    pub v_weak_equivalence: bool,
    pub section: bool,
}

impl FactorizationCertificate {
    pub fn holds(&self) -> bool {
        self.factorization.composite_equals
            && self.u_injective
            && self.u_weak_equivalence
            && self.v_surjective
            && self.v_weak_equivalence
            && self.section
    }
}

/// Factors a weak equivalence `w: M → N` through the pushout `M'` of
/// `ev: Inv(M) → M` and `w∘ev: Inv(M) → N`.
pub fn factorize_weq(w: &EquivariantMap) -> Result<FactorizationCertificate> {
    if !is_weak_equivalence(w)?.verdict {
        return Err(Error::NotWeakEquivalence);
    }
    let (m, n) = (w.source(), w.target());
    let same_side = (m.is_left_only() && n.is_left_only()) || (m.is_right_only() && n.is_right_only());
    if !same_side {
        return Err(Error::Diagram(
            "factorization needs source and target acting on the same side".into(),
        ));
    }
    let ev = evaluate(&inv_total(m)?)?;
    let w_ev = ev.then(w)?;
    let po = pushout(&ev, &w_ev)?;
    let (u, u_tilde) = (po.f_prime, po.u_prime);
    let mut v_map = vec![usize::MAX; po.object.len()];
    for y in 0..n.len() {
        v_map[u_tilde.apply(y)] = y;
    }
    for x in 0..m.len() {
        let slot = &mut v_map[u.apply(x)];
        if *slot == usize::MAX {
            *slot = w.apply(x);
        } else if *slot != w.apply(x) {
            return Err(Error::Internal("pushout identifies points with different images".into()));
        }
    }
    let v = EquivariantMap::new(po.object.clone(), w.target_arc().clone(), v_map)?;
    let composite = u.then(&v)?;
    let section = u_tilde.then(&v)?;
    let cert = FactorizationCertificate {
        u_injective: u.is_injective(),
        u_weak_equivalence: is_weak_equivalence(&u)?.verdict,
        v_surjective: v.is_surjective(),
        v_weak_equivalence: is_weak_equivalence(&v)?.verdict,
        section: section.map().iter().enumerate().all(|(y, &z)| y == z),
        factorization: Factorization {
            composite_equals: composite.map() == w.map(),
            u,
            v,
        },
        u_tilde,
    };
    Ok(cert)
}
