//! Burnside ring arithmetic for the free commutative monoid `N^k`.
//!
//! A finite `N^k`-set has the same class as its reversible core, on which the
//! generators act as commuting permutations, i.e. as a finite `Z^k`-set. Each
//! orbit is `Z^k/Λ` for a finite-index lattice `Λ`, labelled canonically by
//! its Hermite normal form.
//!
//! HNF convention: the rows of the `k×k` matrix are a basis of `Λ`; the
//! matrix is lower triangular with positive diagonal, and every entry below
//! the diagonal satisfies `0 ≤ h[i][j] < h[j][j]`. Labels print the lower
//! triangle row by row, so `[h11 h21 h22 h31 h32 h33]` for `k = 3`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::action::FiniteBiAction;
use crate::error::{Error, Result};
use crate::inverse::reversible_core;
use crate::monoid::{MonoidKind, MonoidPresentation};
use crate::transform::Transform;

/// Largest product set materialized when multiplying two classes.
pub const MAX_PRODUCT_POINTS: usize = 1 << 22;

/// A transitive `Z^k`-set `Z^k/Λ`, labelled by the HNF of `Λ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeClass {
    index: u64,
    hnf: Vec<Vec<u64>>,
}

impl LatticeClass {
    /// Validates an HNF matrix given as full rows.
    pub fn from_hnf(hnf: Vec<Vec<u64>>) -> Result<Self> {
        let k = hnf.len();
        if k == 0 {
            return Err(Error::InvalidLattice("rank must be positive".into()));
        }
        let mut index: u64 = 1;
        for (i, row) in hnf.iter().enumerate() {
            if row.len() != k {
                return Err(Error::InvalidLattice(format!("row {} has {} entries", i + 1, row.len())));
            }
            if row[i] == 0 {
                return Err(Error::InvalidLattice(format!("diagonal entry {} is zero", i + 1)));
            }
            if row[i + 1..].iter().any(|&x| x != 0) {
                return Err(Error::InvalidLattice(format!("row {} is not lower triangular", i + 1)));
            }
            for j in 0..i {
                if row[j] >= hnf[j][j] {
                    return Err(Error::InvalidLattice(format!(
                        "entry ({}, {}) is not reduced modulo {}",
                        i + 1,
                        j + 1,
                        hnf[j][j]
                    )));
                }
            }
            index = index.checked_mul(row[i]).ok_or(Error::Overflow("lattice index"))?;
        }
        Ok(LatticeClass { index, hnf })
    }

    /// The class `[n]` of the `n`-cycle for `k = 1`.
    pub fn cyclic(n: u64) -> Result<Self> {
        Self::from_hnf(vec![vec![n]])
    }

    pub fn rank(&self) -> usize {
        self.hnf.len()
    }

    /// Orbit size, the product of the diagonal.
    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn hnf(&self) -> &[Vec<u64>] {
        &self.hnf
    }

    /// Reduces `v` to its coset representative `0 ≤ v_j < h_jj`.
    fn reduce(&self, v: &mut [i128]) {
        for j in (0..self.rank()).rev() {
            let d = self.hnf[j][j] as i128;
            let q = v[j].div_euclid(d);
            if q != 0 {
                for (c, &h) in self.hnf[j][..=j].iter().enumerate() {
                    v[c] -= q * h as i128;
                }
            }
        }
    }

    /// `Z^k/Λ` as `k` commuting permutations of the coset representatives,
    /// enumerated in mixed radix with the last coordinate varying fastest.
    pub fn representative_permutations(&self) -> Result<Vec<Transform>> {
        let k = self.rank();
        let n = usize::try_from(self.index).map_err(|_| Error::Overflow("lattice index"))?;
        if n > MAX_PRODUCT_POINTS {
            return Err(Error::SizeBound {
                what: "coset space",
                size: n.to_string(),
                limit: MAX_PRODUCT_POINTS,
            });
        }
        let radix: Vec<i128> = (0..k).map(|j| self.hnf[j][j] as i128).collect();
        let encode = |v: &[i128]| v.iter().zip(&radix).fold(0i128, |acc, (&x, &r)| acc * r + x) as usize;
        let decode = |mut x: usize| {
            let mut v = vec![0i128; k];
            for j in (0..k).rev() {
                v[j] = (x as i128) % radix[j];
                x /= radix[j] as usize;
            }
            v
        };
        Ok((0..k)
            .map(|g| {
                Transform::new(
                    (0..n)
                        .map(|x| {
                            let mut v = decode(x);
                            v[g] += 1;
                            self.reduce(&mut v);
                            encode(&v)
                        })
                        .collect(),
                )
            })
            .collect())
    }

    /// A left action of the free commutative monoid `p` realizing the class.
    pub fn realize(&self, p: &MonoidPresentation) -> Result<FiniteBiAction> {
        if p.kind() != MonoidKind::FreeCommutative {
            return Err(Error::WrongMonoidKind {
                op: "realize",
                expected: "free commutative",
            });
        }
        if p.rank() != self.rank() {
            return Err(Error::RankMismatch(p.rank(), self.rank()));
        }
        let perms = self.representative_permutations()?;
        let n = perms.first().map_or(1, Transform::len);
        let states = (0..n).map(|x| format!("c{x}")).collect();
        FiniteBiAction::left_only(p.clone(), states, perms)
    }
}

impl fmt::Display for LatticeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        let mut first = true;
        for (i, row) in self.hnf.iter().enumerate() {
            for x in &row[..=i] {
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                write!(f, "{x}")?;
            }
        }
        f.write_str("]")
    }
}

fn checked(x: Option<i128>) -> Result<i128> {
    x.ok_or(Error::Overflow("lattice reduction"))
}

/// HNF of the lattice generated by `rows`, which must have full rank `k`.
fn hermite_normal_form(mut rows: Vec<Vec<i128>>, k: usize) -> Result<Vec<Vec<u64>>> {
    let mut basis: Vec<Vec<i128>> = vec![Vec::new(); k];
    for c in (0..k).rev() {
        // Euclid on column c until at most one row has a nonzero entry there
        loop {
            rows.retain(|r| r.iter().any(|&x| x != 0));
            let mut nonzero: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][c] != 0).collect();
            if nonzero.len() <= 1 {
                break;
            }
            nonzero.sort_by_key(|&i| rows[i][c].unsigned_abs());
            let p = nonzero[0];
            let pivot = rows[p].clone();
            for &i in &nonzero[1..] {
                let q = rows[i][c] / pivot[c];
                for j in 0..=c {
                    let t = checked(q.checked_mul(pivot[j]))?;
                    rows[i][j] = checked(rows[i][j].checked_sub(t))?;
                }
            }
        }
        let Some(p) = rows.iter().position(|r| r[c] != 0) else {
            return Err(Error::InvalidLattice("relations do not span a finite-index lattice".into()));
        };
        let mut row = rows.swap_remove(p);
        if row[c] < 0 {
            for x in row.iter_mut() {
                *x = -*x;
            }
        }
        basis[c] = row;
    }
    for i in 0..k {
        for j in (0..i).rev() {
            let q = basis[i][j].div_euclid(basis[j][j]);
            if q != 0 {
                let pivot = basis[j].clone();
                for (x, &h) in basis[i].iter_mut().zip(&pivot[..=j]) {
                    *x = checked(x.checked_sub(checked(q.checked_mul(h))?))?;
                }
            }
        }
    }
    basis
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| u64::try_from(x).map_err(|_| Error::Overflow("lattice entry")))
                .collect()
        })
        .collect()
}

fn check_commuting_permutations(perms: &[Transform]) -> Result<()> {
    for (j, t) in perms.iter().enumerate() {
        if !t.is_bijective() {
            return Err(Error::NotBijective(format!("e{}", j + 1)));
        }
    }
    for i in 0..perms.len() {
        for j in i + 1..perms.len() {
            if !perms[i].commutes_with(&perms[j]) {
                return Err(Error::NotCommuting(format!("e{}", i + 1), format!("e{}", j + 1)));
            }
        }
    }
    Ok(())
}

/// Orbit of `base` with each state tagged by a vector of `Z^k` reaching it.
fn tagged_orbit(perms: &[Transform], base: usize) -> Result<(Vec<usize>, Vec<Vec<i128>>)> {
    let k = perms.len();
    let n = perms.first().map_or(base + 1, Transform::len);
    let mut tag: Vec<Option<Vec<i128>>> = vec![None; n];
    tag[base] = Some(vec![0; k]);
    let mut orbit = vec![base];
    let mut relations = Vec::new();
    let mut head = 0;
    while head < orbit.len() {
        let x = orbit[head];
        head += 1;
        for (j, t) in perms.iter().enumerate() {
            let mut v = tag[x].clone().expect("visited");
            v[j] = checked(v[j].checked_add(1))?;
            let y = t.apply(x);
            match &tag[y] {
                None => {
                    tag[y] = Some(v);
                    orbit.push(y);
                }
                Some(w) => {
                    let r = v
                        .iter()
                        .zip(w)
                        .map(|(&a, &b)| checked(a.checked_sub(b)))
                        .collect::<Result<Vec<_>>>()?;
                    relations.push(r);
                }
            }
        }
    }
    Ok((orbit, relations))
}

/// Stabilizer lattice of `base` under `k` commuting permutations.
pub fn stabilizer_lattice_hnf(perms: &[Transform], base: usize) -> Result<LatticeClass> {
    check_commuting_permutations(perms)?;
    if perms.is_empty() {
        return Err(Error::InvalidLattice("rank must be positive".into()));
    }
    let (orbit, relations) = tagged_orbit(perms, base)?;
    let class = LatticeClass::from_hnf(hermite_normal_form(relations, perms.len())?)?;
    if class.index as usize != orbit.len() {
        return Err(Error::Internal(format!(
            "lattice index {} differs from orbit size {}",
            class.index,
            orbit.len()
        )));
    }
    Ok(class)
}

/// Classes of all orbits of `k` commuting permutations, with multiplicity.
pub fn orbit_classes(perms: &[Transform]) -> Result<BurnsideElement> {
    check_commuting_permutations(perms)?;
    let n = perms.first().map_or(0, Transform::len);
    let mut seen = vec![false; n];
    let mut out = BurnsideElement::zero();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let (orbit, _) = tagged_orbit(perms, x)?;
        for &y in &orbit {
            seen[y] = true;
        }
        out.add_term(stabilizer_lattice_hnf(perms, x)?, 1)?;
    }
    Ok(out)
}

/// A finitely supported integer combination of lattice classes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BurnsideElement {
    terms: BTreeMap<LatticeClass, i64>,
}

impl BurnsideElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn class(c: LatticeClass) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(c, 1);
        BurnsideElement { terms }
    }

    /// The unit `[Z^k/Z^k]` of rank `k`.
    pub fn one(k: usize) -> Result<Self> {
        let hnf = (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
        Ok(Self::class(LatticeClass::from_hnf(hnf)?))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms sorted by (index, hnf), coefficients nonzero.
    pub fn terms(&self) -> impl Iterator<Item = (&LatticeClass, i64)> {
        self.terms.iter().map(|(c, &n)| (c, n))
    }

    pub fn coefficient(&self, c: &LatticeClass) -> i64 {
        self.terms.get(c).copied().unwrap_or(0)
    }

    /// Rank of the classes, `None` for zero.
    pub fn rank(&self) -> Option<usize> {
        self.terms.keys().next().map(LatticeClass::rank)
    }

    fn add_term(&mut self, c: LatticeClass, n: i64) -> Result<()> {
        if let Some(k) = self.rank() {
            if k != c.rank() {
                return Err(Error::RankMismatch(k, c.rank()));
            }
        }
        let slot = self.terms.entry(c.clone()).or_insert(0);
        *slot = slot.checked_add(n).ok_or(Error::Overflow("Burnside coefficient"))?;
        if *slot == 0 {
            self.terms.remove(&c);
        }
        Ok(())
    }
}

fn check_ranks(x: &BurnsideElement, y: &BurnsideElement) -> Result<()> {
    match (x.rank(), y.rank()) {
        (Some(a), Some(b)) if a != b => Err(Error::RankMismatch(a, b)),
        _ => Ok(()),
    }
}

pub fn burnside_add(x: &BurnsideElement, y: &BurnsideElement) -> Result<BurnsideElement> {
    check_ranks(x, y)?;
    let mut out = x.clone();
    for (c, n) in y.terms() {
        out.add_term(c.clone(), n)?;
    }
    Ok(out)
}

/// `[Z^k/Λ1]·[Z^k/Λ2]`: orbit classes of the diagonal action on the product.
pub fn class_product(a: &LatticeClass, b: &LatticeClass) -> Result<BurnsideElement> {
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch(a.rank(), b.rank()));
    }
    let size = (a.index as u128) * (b.index as u128);
    if size > MAX_PRODUCT_POINTS as u128 {
        return Err(Error::SizeBound {
            what: "class product",
            size: size.to_string(),
            limit: MAX_PRODUCT_POINTS,
        });
    }
    let (pa, pb) = (a.representative_permutations()?, b.representative_permutations()?);
    let m = b.index as usize;
    let diagonal: Vec<Transform> = pa
        .iter()
        .zip(&pb)
        .map(|(s, t)| {
            Transform::new(
                (0..size as usize)
                    .map(|z| s.apply(z / m) * m + t.apply(z % m))
                    .collect(),
            )
        })
        .collect();
    orbit_classes(&diagonal)
}

pub fn burnside_mul(x: &BurnsideElement, y: &BurnsideElement) -> Result<BurnsideElement> {
    check_ranks(x, y)?;
    let mut out = BurnsideElement::zero();
    for (a, m) in x.terms() {
        for (b, n) in y.terms() {
            let mn = m.checked_mul(n).ok_or(Error::Overflow("Burnside coefficient"))?;
            for (c, k) in class_product(a, b)?.terms() {
                let coeff = k.checked_mul(mn).ok_or(Error::Overflow("Burnside coefficient"))?;
                out.add_term(c.clone(), coeff)?;
            }
        }
    }
    Ok(out)
}

/// `[A]` for a one-sided action of a free commutative monoid: the orbit
/// classes of its reversible core.
pub fn burnside_class(a: &FiniteBiAction) -> Result<BurnsideElement> {
    if a.monoid().kind() != MonoidKind::FreeCommutative {
        return Err(Error::WrongMonoidKind {
            op: "burnside_class",
            expected: "free commutative",
        });
    }
    let side = a.acting_side().ok_or(Error::TwoSided { op: "burnside_class" })?;
    let core = reversible_core(a, side)?;
    let restricted = a.restrict(&core)?;
    orbit_classes(restricted.family(side))
}

impl fmt::Display for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, n)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{n}*{c}")?;
        }
        Ok(())
    }
}

fn parse_class(text: &str) -> Result<LatticeClass> {
    let inner = text
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected `[..]`, found `{text}`")))?;
    let entries = inner
        .split_whitespace()
        .map(|t| t.parse::<u64>().map_err(|_| Error::Parse(format!("bad lattice entry `{t}`"))))
        .collect::<Result<Vec<_>>>()?;
    let mut k = 0;
    while k * (k + 1) / 2 < entries.len() {
        k += 1;
    }
    if k == 0 || k * (k + 1) / 2 != entries.len() {
        return Err(Error::Parse(format!(
            "{} lattice entries do not form a lower triangle",
            entries.len()
        )));
    }
    let mut it = entries.into_iter();
    let hnf = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if j <= i { it.next().expect("counted") } else { 0 })
                .collect()
        })
        .collect();
    LatticeClass::from_hnf(hnf)
}

impl FromStr for BurnsideElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for term in s.split('+') {
            let term = term.trim();
            let (coeff, class) = term
                .split_once('*')
                .ok_or_else(|| Error::Parse(format!("expected `INT*[..]`, found `{term}`")))?;
            let coeff: i64 = coeff
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient `{}`", coeff.trim())))?;
            out.add_term(parse_class(class.trim())?, coeff)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{coproduct, product};
    use crate::machines::*;

    fn el(s: &str) -> BurnsideElement {
        s.parse().unwrap()
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn stabilizers() {
        let c3 = Transform::new(vec![1, 2, 0]);
        let class = stabilizer_lattice_hnf(std::slice::from_ref(&c3), 1).unwrap();
        assert_eq!(class.hnf(), &[vec![3]]);
        assert_eq!(class.index(), 3);
        let class = stabilizer_lattice_hnf(&[c3, Transform::identity(3)], 0).unwrap();
        assert_eq!(class.hnf(), &[vec![3, 0], vec![0, 1]]);
        assert_eq!(class.to_string(), "[3 0 1]");
        let pt = stabilizer_lattice_hnf(&[Transform::identity(1), Transform::identity(1)], 0).unwrap();
        assert_eq!(pt.hnf(), &[vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn stabilizer_of_diagonal_orbit() {
        // e1 shifts by 1 and e2 by 2 on Z/4: the stabilizer is generated by
        // (4,0) and (-2,1), i.e. HNF rows (4,0), (2,1)
        let e1 = Transform::new(vec![1, 2, 3, 0]);
        let e2 = Transform::new(vec![2, 3, 0, 1]);
        let class = stabilizer_lattice_hnf(&[e1, e2], 0).unwrap();
        assert_eq!(class.hnf(), &[vec![4, 0], vec![2, 1]]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            stabilizer_lattice_hnf(&[Transform::new(vec![1, 1])], 0),
            Err(Error::NotBijective(_))
        ));
        let a = Transform::new(vec![1, 0, 2]);
        let b = Transform::new(vec![0, 2, 1]);
        assert!(matches!(stabilizer_lattice_hnf(&[a, b], 0), Err(Error::NotCommuting(..))));
    }

    #[test]
    fn classes_of_machines() {
        let to_nat = |m: FiniteBiAction| m.with_monoid(nat()).unwrap();
        assert_eq!(burnside_class(&to_nat(second_machine())).unwrap(), el("1*[1]"));
        assert_eq!(burnside_class(&to_nat(cycle_with_tail())).unwrap(), el("1*[3]"));
        let c2 = to_nat(cycle(&n1(), 2));
        assert_eq!(burnside_class(&coproduct(&c2, &c2).unwrap()).unwrap(), el("2*[2]"));
        assert!(matches!(
            burnside_class(&second_machine()),
            Err(Error::WrongMonoidKind { .. })
        ));
    }

    #[test]
    fn products() {
        assert_eq!(burnside_mul(&el("1*[2]"), &el("1*[3]")).unwrap(), el("1*[6]"));
        assert_eq!(burnside_mul(&el("1*[4]"), &el("1*[6]")).unwrap(), el("2*[12]"));
        let x = el("2*[2 1 1] + -1*[3 0 1]");
        assert!(matches!(burnside_mul(&el("1*[1]"), &x), Err(Error::RankMismatch(1, 2))));
        let y = el("3*[2] + 1*[5]");
        assert_eq!(burnside_mul(&BurnsideElement::one(1).unwrap(), &y).unwrap(), y);
    }

    #[test]
    fn gcd_lcm_law() {
        for m in 1..=8u64 {
            for n in 1..=8u64 {
                let g = gcd(m, n);
                let got = burnside_mul(&BurnsideElement::class(LatticeClass::cyclic(m).unwrap()),
                    &BurnsideElement::class(LatticeClass::cyclic(n).unwrap())).unwrap();
                assert_eq!(got.to_string(), format!("{g}*[{}]", m * n / g));
            }
        }
    }

    #[test]
    fn homomorphism_on_small_sets() {
        let p = nat();
        let a = machine(&p, names(4), &[&[1, 2, 0, 0]]);
        let b = machine(&p, names(3), &[&[1, 0, 0]]);
        let ca = burnside_class(&a).unwrap();
        let cb = burnside_class(&b).unwrap();
        assert_eq!(burnside_class(&product(&a, &b).unwrap()).unwrap(), burnside_mul(&ca, &cb).unwrap());
        assert_eq!(burnside_class(&coproduct(&a, &b).unwrap()).unwrap(), burnside_add(&ca, &cb).unwrap());
    }

    #[test]
    fn text_format() {
        let x = el(" 1*[6] +2 * [ 2 ]+ -3*[2]");
        assert_eq!(x.to_string(), "-1*[2] + 1*[6]");
        assert_eq!(el("0"), BurnsideElement::zero());
        assert_eq!(el("1*[2] + -1*[2]").to_string(), "0");
        assert!("1*[2 1]".parse::<BurnsideElement>().is_err());
        assert!("1*[2 2 1]".parse::<BurnsideElement>().is_err());
        assert!("x*[2]".parse::<BurnsideElement>().is_err());
        let y = el("1*[4 2 1]");
        assert_eq!(y.to_string(), "1*[4 2 1]");
    }

    #[test]
    fn realize_round_trips() {
        let p = MonoidPresentation::free_commutative(["a", "b"]).unwrap();
        for s in ["[4 2 1]", "[3 0 1]", "[1 0 5]", "[2 1 2]"] {
            let c = parse_class(s).unwrap();
            let a = c.realize(&p).unwrap();
            assert_eq!(burnside_class(&a).unwrap(), BurnsideElement::class(c));
        }
    }

    #[test]
    fn base_point_independence() {
        let e1 = Transform::new(vec![1, 2, 3, 4, 5, 0]);
        let e2 = Transform::new(vec![3, 4, 5, 0, 1, 2]);
        let first = stabilizer_lattice_hnf(&[e1.clone(), e2.clone()], 0).unwrap();
        for x in 1..6 {
            assert_eq!(stabilizer_lattice_hnf(&[e1.clone(), e2.clone()], x).unwrap(), first);
        }
    }
}
