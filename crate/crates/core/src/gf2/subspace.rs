use super::Gf2Vector;

/// A list of linearly independent vectors spanning a subspace of GF(2)^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    n: usize,
    vectors: Vec<Gf2Vector>,
}

impl SubspaceBasis {
    /// Wraps vectors already known to be independent (e.g. read off an
    /// echelon form).
    pub(crate) fn from_independent(n: usize, vectors: Vec<Gf2Vector>) -> Self {
        debug_assert!(vectors.iter().all(|v| v.len() == n));
        Self { n, vectors }
    }

    /// Checks independence by elimination; returns `None` if the vectors are
    /// dependent or of the wrong length.
    #[must_use]
    pub fn new(n: usize, vectors: Vec<Gf2Vector>) -> Option<Self> {
        if vectors.iter().any(|v| v.len() != n) {
            return None;
        }
        let mut reduced: Vec<(usize, Gf2Vector)> = Vec::new();
        for v in &vectors {
            let mut v = v.clone();
            for (pivot, r) in &reduced {
                if v.get(*pivot) {
                    v.xor_assign(r);
                }
            }
            let pivot = (0..n).find(|&i| v.get(i))?;
            reduced.push((pivot, v));
        }
        Some(Self { n, vectors })
    }

    #[must_use]
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    #[must_use]
    pub fn vectors(&self) -> &[Gf2Vector] {
        &self.vectors
    }

    /// All `2^dim` members, ordered by coefficient word ascending (bit `k` of
    /// the word selects `vectors[k]`).
    #[must_use]
    pub fn enumerate(&self) -> SubspaceIter<'_> {
        assert!(self.dim() < 64, "subspace of dimension {} is too large to enumerate", self.dim());
        SubspaceIter {
            basis: self,
            next: 0,
            end: 1u64 << self.dim(),
        }
    }
}

pub struct SubspaceIter<'a> {
    basis: &'a SubspaceBasis,
    next: u64,
    end: u64,
}

impl Iterator for SubspaceIter<'_> {
    type Item = Gf2Vector;

    fn next(&mut self) -> Option<Gf2Vector> {
        if self.next >= self.end {
            return None;
        }
        let word = self.next;
        self.next += 1;
        let mut v = Gf2Vector::zeros(self.basis.n);
        for (k, b) in self.basis.vectors.iter().enumerate() {
            if word >> k & 1 == 1 {
                v.xor_assign(b);
            }
        }
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = usize::try_from(self.end - self.next).unwrap_or(usize::MAX);
        (left, Some(left))
    }
}

impl ExactSizeIterator for SubspaceIter<'_> {}
