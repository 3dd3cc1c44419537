use std::fmt;

/// An endofunction of `{0, .., n-1}`, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transform(Vec<usize>);

impl Transform {
    /// Wraps an image array. Range is not checked here; see [`Transform::in_range`].
    pub fn new(images: Vec<usize>) -> Self {
        Transform(images)
    }

    pub fn identity(n: usize) -> Self {
        Transform((0..n).collect())
    }

    pub fn constant(n: usize, value: usize) -> Self {
        Transform(vec![value; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn into_images(self) -> Vec<usize> {
        self.0
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn in_range(&self, n: usize) -> bool {
        self.0.iter().all(|&t| t < n)
    }

    /// `x ↦ next(self(x))`: apply `self` first.
    pub fn then(&self, next: &Transform) -> Transform {
        Transform(self.0.iter().map(|&x| next.0[x]).collect())
    }

    /// `x ↦ self(inner(x))`: the usual `self ∘ inner`.
    pub fn after(&self, inner: &Transform) -> Transform {
        inner.then(self)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &t)| i == t)
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        for &t in &self.0 {
            if t >= seen.len() || seen[t] {
                return false;
            }
            seen[t] = true;
        }
        true
    }

    pub fn inverse(&self) -> Option<Transform> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.0.len()];
        for (i, &t) in self.0.iter().enumerate() {
            inv[t] = i;
        }
        Some(Transform(inv))
    }

    /// Whether the restriction to `subset` is one-to-one.
    pub fn is_injective_on(&self, subset: &[usize]) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(subset.len());
        subset.iter().all(|&x| seen.insert(self.0[x]))
    }

    pub fn commutes_with(&self, other: &Transform) -> bool {
        self.then(other) == other.then(self)
    }
}

impl fmt::Debug for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<usize>> for Transform {
    fn from(v: Vec<usize>) -> Self {
        Transform(v)
    }
}
