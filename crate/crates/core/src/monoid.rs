//! Finitely generated monoids and semigroups, canonical words, and transition
//! monoids of endofunction families.
//!
//! Three presentation kinds are supported: free, free commutative (`N^k`) and
//! finite multiplication tables. For finite tables every element is a
//! generator, so a family of endofunctions assigns an image to each element.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result, Side};
use crate::transform::Transform;

/// Upper bound on the number of letters accepted by [`parse_word`].
pub const MAX_WORD_LETTERS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonoidKind {
    Free,
    FreeCommutative,
    FiniteTable,
}

impl MonoidKind {
    pub fn name(self) -> &'static str {
        match self {
            MonoidKind::Free => "free",
            MonoidKind::FreeCommutative => "free_commutative",
            MonoidKind::FiniteTable => "finite_table",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonoidPresentation {
    kind: MonoidKind,
    generators: Vec<String>,
    table: Option<Vec<Vec<usize>>>,
    unit: bool,
}

impl MonoidPresentation {
    pub fn new(
        kind: MonoidKind,
        generators: Vec<String>,
        table: Option<Vec<Vec<usize>>>,
        unit: bool,
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        for g in &generators {
            if g.is_empty() {
                return Err(Error::EmptyGeneratorName);
            }
            if !seen.insert(g.as_str()) {
                return Err(Error::DuplicateGenerator(g.clone()));
            }
        }
        match (kind, &table) {
            (MonoidKind::FiniteTable, None) => {
                return Err(Error::InvalidTable("finite_table monoid without a table".into()))
            }
            (MonoidKind::FiniteTable, Some(t)) => check_table(t, generators.len(), unit)?,
            (_, Some(_)) => {
                return Err(Error::InvalidTable(format!(
                    "a table is only allowed for finite_table monoids, not {}",
                    kind.name()
                )))
            }
            _ => {}
        }
        Ok(MonoidPresentation {
            kind,
            generators,
            table,
            unit,
        })
    }

    pub fn free<S: Into<String>>(generators: impl IntoIterator<Item = S>) -> Result<Self> {
        Self::new(MonoidKind::Free, names(generators), None, true)
    }

    pub fn free_semigroup<S: Into<String>>(generators: impl IntoIterator<Item = S>) -> Result<Self> {
        Self::new(MonoidKind::Free, names(generators), None, false)
    }

    pub fn free_commutative<S: Into<String>>(
        generators: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        Self::new(MonoidKind::FreeCommutative, names(generators), None, true)
    }

    pub fn finite_table<S: Into<String>>(
        elements: impl IntoIterator<Item = S>,
        table: Vec<Vec<usize>>,
        unit: bool,
    ) -> Result<Self> {
        Self::new(MonoidKind::FiniteTable, names(elements), Some(table), unit)
    }

    /// The cyclic group `Z/n` as a table, elements named `e, g, g2, ..`.
    pub fn cyclic_group(n: usize) -> Result<Self> {
        let elements = (0..n).map(|k| match k {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g{k}"),
        });
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::finite_table(elements, table, true)
    }

    pub fn kind(&self) -> MonoidKind {
        self.kind
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn table(&self) -> Option<&[Vec<usize>]> {
        self.table.as_deref()
    }

    /// Monoid (true) or semigroup (false).
    pub fn has_unit(&self) -> bool {
        self.unit
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Product in a finite table. Panics on other kinds.
    pub fn multiply(&self, x: usize, y: usize) -> usize {
        self.table.as_ref().expect("multiply on a presentation without table")[x][y]
    }

    /// Two-sided identity of a finite table, if one exists.
    pub fn identity_element(&self) -> Option<usize> {
        let t = self.table.as_ref()?;
        table_identity(t)
    }

    pub fn inverse_of(&self, x: usize) -> Option<usize> {
        let e = self.identity_element()?;
        (0..self.rank()).find(|&y| self.multiply(x, y) == e && self.multiply(y, x) == e)
    }

    pub fn is_group(&self) -> bool {
        self.kind == MonoidKind::FiniteTable
            && self.identity_element().is_some()
            && (0..self.rank()).all(|x| self.inverse_of(x).is_some())
    }
}

fn names<S: Into<String>>(it: impl IntoIterator<Item = S>) -> Vec<String> {
    it.into_iter().map(Into::into).collect()
}

fn table_identity(t: &[Vec<usize>]) -> Option<usize> {
    let n = t.len();
    (0..n).find(|&e| (0..n).all(|x| t[e][x] == x && t[x][e] == x))
}

fn check_table(t: &[Vec<usize>], n: usize, unit: bool) -> Result<()> {
    if t.len() != n {
        return Err(Error::InvalidTable(format!(
            "{} rows for {} elements",
            t.len(),
            n
        )));
    }
    for (i, row) in t.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidTable(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        if let Some(&bad) = row.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidTable(format!("entry {bad} in row {i} out of range")));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if t[t[a][b]][c] != t[a][t[b][c]] {
                    return Err(Error::InvalidTable(format!(
                        "not associative at ({a}, {b}, {c})"
                    )));
                }
            }
        }
    }
    if unit && table_identity(t).is_none() {
        return Err(Error::InvalidTable("no two-sided identity element".into()));
    }
    Ok(())
}

/// Canonical form of a monoid element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Word {
    /// Generator indices, leftmost letter first.
    Free(Vec<usize>),
    /// Exponent per generator.
    Commutative(Vec<u64>),
    /// Index into the multiplication table.
    Element(usize),
}

/// Reduces a sequence of generator names to its canonical form.
pub fn reduce_word<S: AsRef<str>>(p: &MonoidPresentation, letters: &[S]) -> Result<Word> {
    let idx = letters
        .iter()
        .map(|l| p.generator_index(l.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    if idx.is_empty() && !p.has_unit() {
        return Err(Error::EmptyWord);
    }
    Ok(match p.kind() {
        MonoidKind::Free => Word::Free(idx),
        MonoidKind::FreeCommutative => {
            let mut exps = vec![0u64; p.rank()];
            for i in idx {
                exps[i] += 1;
            }
            Word::Commutative(exps)
        }
        MonoidKind::FiniteTable => {
            let mut it = idx.into_iter();
            let first = match it.next() {
                Some(x) => x,
                None => p.identity_element().ok_or(Error::EmptyWord)?,
            };
            Word::Element(it.fold(first, |acc, x| p.multiply(acc, x)))
        }
    })
}

/// Spells a canonical word back out as generator names.
pub fn spell(p: &MonoidPresentation, w: &Word) -> Vec<String> {
    let g = p.generators();
    match w {
        Word::Free(idx) => idx.iter().map(|&i| g[i].clone()).collect(),
        Word::Commutative(exps) => exps
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(g[i].clone(), e as usize))
            .collect(),
        Word::Element(x) => vec![g[*x].clone()],
    }
}

/// Splits `text` into letters and reduces it. Letters are separated by
/// whitespace; a word without whitespace is split into characters when every
/// generator name is a single character.
pub fn parse_word(p: &MonoidPresentation, text: &str) -> Result<Word> {
    let single_chars = p.generators().iter().all(|g| g.chars().count() == 1);
    let letters: Vec<String> = if !text.contains(char::is_whitespace) && single_chars {
        text.chars().map(String::from).collect()
    } else {
        text.split_whitespace().map(String::from).collect()
    };
    if letters.len() > MAX_WORD_LETTERS {
        return Err(Error::WordTooLong {
            len: letters.len(),
            limit: MAX_WORD_LETTERS,
        });
    }
    reduce_word(p, &letters)
}

/// The finite image of a generator family under composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMonoid {
    degree: usize,
    elements: Vec<Transform>,
    generator_of: Vec<usize>,
    unital: bool,
}

/// Breadth-first closure of `gens` under composition.
///
/// Elements are listed in discovery order: the identity first (when
/// `unital`), then the generators in declared order, then products
/// `e` followed by `g` for queued `e` and generators `g` in order.
pub fn transition_monoid(
    gens: &[Transform],
    degree: usize,
    unital: bool,
) -> Result<TransitionMonoid> {
    for (k, g) in gens.iter().enumerate() {
        if g.len() != degree {
            return Err(Error::LengthMismatch {
                expected: degree,
                found: g.len(),
            });
        }
        if let Some(&t) = g.images().iter().find(|&&t| t >= degree) {
            return Err(Error::OutOfRange {
                context: format!("generator {k}"),
                target: t,
                size: degree,
            });
        }
    }
    let mut index: HashMap<Transform, usize> = HashMap::new();
    let mut elements = Vec::new();
    let mut push = |t: Transform, elements: &mut Vec<Transform>| -> usize {
        *index.entry(t.clone()).or_insert_with(|| {
            elements.push(t);
            elements.len() - 1
        })
    };
    if unital {
        push(Transform::identity(degree), &mut elements);
    }
    let generator_of: Vec<usize> = gens.iter().map(|g| push(g.clone(), &mut elements)).collect();
    let mut head = 0;
    while head < elements.len() {
        let e = elements[head].clone();
        for g in gens {
            push(e.then(g), &mut elements);
        }
        head += 1;
    }
    Ok(TransitionMonoid {
        degree,
        elements,
        generator_of,
        unital,
    })
}

impl TransitionMonoid {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &[Transform] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    /// Element index of each generator image.
    pub fn generator_of(&self) -> &[usize] {
        &self.generator_of
    }

    pub fn position(&self, t: &Transform) -> Option<usize> {
        self.elements.iter().position(|e| e == t)
    }

    /// Exhaustive closure certificate: every pairwise composite is stored.
    pub fn is_closed(&self) -> bool {
        let set: HashSet<&Transform> = self.elements.iter().collect();
        self.elements
            .iter()
            .all(|a| self.elements.iter().all(|b| set.contains(&a.then(b))))
    }

    /// Orbit `{t(x)}` of a point, ascending.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut pts: Vec<usize> = self.elements.iter().map(|t| t.apply(x)).collect();
        pts.sort_unstable();
        pts.dedup();
        pts
    }
}

/// Whether assigning `gens[k]` to generator `k` extends to a homomorphism
/// into endofunctions composed on the given side.
pub fn check_relations(p: &MonoidPresentation, gens: &[Transform], side: Side) -> Result<bool> {
    Ok(relation_violation(p, gens, side)?.is_none())
}

/// Like [`check_relations`], but describes the first violated relation.
pub fn relation_violation(
    p: &MonoidPresentation,
    gens: &[Transform],
    side: Side,
) -> Result<Option<String>> {
    if gens.len() != p.rank() {
        return Err(Error::Arity {
            expected: p.rank(),
            found: gens.len(),
        });
    }
    let names = p.generators();
    match p.kind() {
        MonoidKind::Free => Ok(None),
        MonoidKind::FreeCommutative => {
            for a in 0..gens.len() {
                for b in a + 1..gens.len() {
                    if !gens[a].commutes_with(&gens[b]) {
                        return Ok(Some(format!("`{}` and `{}` do not commute", names[a], names[b])));
                    }
                }
            }
            Ok(None)
        }
        MonoidKind::FiniteTable => {
            if p.has_unit() {
                if let Some(e) = p.identity_element() {
                    if !gens[e].is_identity() {
                        return Ok(Some(format!("unit `{}` does not act as the identity", names[e])));
                    }
                }
            }
            for x in 0..gens.len() {
                for y in 0..gens.len() {
                    let xy = p.multiply(x, y);
                    // left: α(x⊗y) = α(x)∘α(y); right: (a)α(x⊗y) = ((a)α(x))α(y)
                    let composed = match side {
                        Side::Left => gens[x].after(&gens[y]),
                        Side::Right => gens[x].then(&gens[y]),
                    };
                    if composed != gens[xy] {
                        return Ok(Some(format!(
                            "action of `{}` differs from the composite of `{}` and `{}`",
                            names[xy], names[x], names[y]
                        )));
                    }
                }
            }
            Ok(None)
        }
    }
}
