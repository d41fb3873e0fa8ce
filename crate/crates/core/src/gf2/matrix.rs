use std::fmt;

use super::vector::{parity_of_and, words_for, Gf2Vector, WORD_BITS};
use super::{Gf2Error, SubspaceBasis};

/// Dense square matrix over GF(2) with bit-packed rows.
///
/// Row `i` occupies `stride` consecutive words of `data`; bit `j` of that row
/// is entry `[i][j]`. Bits past column `n - 1` are kept zero, so derived
/// equality, hashing and ordering are canonical.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Matrix {
    n: usize,
    stride: usize,
    data: Vec<u64>,
}

/// Which triangular system [`Gf2Matrix::solve_upper_triangular`] solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `uᵀ · X = rhs`, by forward substitution.
    Transposed,
    /// `u · X = rhs`, by back substitution.
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructuralFlags {
    pub is_upper_triangular: bool,
    pub is_symmetric: bool,
    pub is_lpn: bool,
}

#[inline]
fn for_each_set_bit(words: &[u64], mut f: impl FnMut(usize)) {
    for (w, &word) in words.iter().enumerate() {
        let mut bits = word;
        while bits != 0 {
            let b = bits.trailing_zeros() as usize;
            f(w * WORD_BITS + b);
            bits &= bits - 1;
        }
    }
}

#[inline]
fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

impl Gf2Matrix {
    /// # Panics
    /// Panics if `n == 0`.
    #[must_use]
    pub fn zero(n: usize) -> Self {
        assert!(n > 0, "GF(2) matrices must have dimension at least 1");
        let stride = words_for(n);
        Self {
            n,
            stride,
            data: vec![0; n * stride],
        }
    }

    /// # Panics
    /// Panics if `n == 0`.
    #[must_use]
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// # Panics
    /// Panics if `n == 0`.
    pub fn from_fn(n: usize, mut entry: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                if entry(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from single-word rows (`n <= 64`); bit `j` of
    /// `rows[i]` is entry `[i][j]`.
    pub fn from_row_words(n: usize, rows: &[u64]) -> Result<Self, Gf2Error> {
        if n == 0 {
            return Err(Gf2Error::EmptyMatrix);
        }
        if n > WORD_BITS || rows.len() != n {
            return Err(Gf2Error::DimensionMismatch {
                left: n,
                right: rows.len(),
            });
        }
        let mask = if n == WORD_BITS { u64::MAX } else { (1u64 << n) - 1 };
        Ok(Self {
            n,
            stride: 1,
            data: rows.iter().map(|r| r & mask).collect(),
        })
    }

    /// Builds a matrix from rows of entries.
    pub fn from_bit_rows(rows: &[Vec<bool>]) -> Result<Self, Gf2Error> {
        let n = rows.len();
        if n == 0 {
            return Err(Gf2Error::EmptyMatrix);
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Gf2Error::DimensionMismatch {
                left: n,
                right: bad.len(),
            });
        }
        Ok(Self::from_fn(n, |i, j| rows[i][j]))
    }

    /// Builds a matrix whose rows are the given vectors.
    pub fn from_row_vectors(rows: &[Gf2Vector]) -> Result<Self, Gf2Error> {
        let n = rows.len();
        if n == 0 {
            return Err(Gf2Error::EmptyMatrix);
        }
        let mut m = Self::zero(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Gf2Error::DimensionMismatch {
                    left: n,
                    right: row.len(),
                });
            }
            m.row_mut(i).copy_from_slice(row.words());
        }
        Ok(m)
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.n && j < self.n, "entry ({i}, {j}) out of range");
        (self.data[i * self.stride + j / WORD_BITS] >> (j % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.n && j < self.n, "entry ({i}, {j}) out of range");
        let word = &mut self.data[i * self.stride + j / WORD_BITS];
        let mask = 1u64 << (j % WORD_BITS);
        if value {
            *word |= mask;
        } else {
            *word &= !mask;
        }
    }

    /// Packed words of row `i`.
    #[must_use]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[must_use]
    pub fn row_vector(&self, i: usize) -> Gf2Vector {
        Gf2Vector::from_words(self.n, self.row(i))
    }

    #[must_use]
    pub fn column_vector(&self, j: usize) -> Gf2Vector {
        let mut v = Gf2Vector::zeros(self.n);
        for i in 0..self.n {
            if self.get(i, j) {
                v.set(i, true);
            }
        }
        v
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    fn check_same_size(&self, other: &Self) -> Result<(), Gf2Error> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Gf2Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    /// Matrix product. Row `i` of the result is the XOR of the rows of
    /// `other` selected by the set bits of row `i` of `self`.
    pub fn multiply(&self, other: &Self) -> Result<Self, Gf2Error> {
        self.check_same_size(other)?;
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            let mut acc = vec![0u64; self.stride];
            for_each_set_bit(self.row(i), |k| xor_into(&mut acc, other.row(k)));
            out.row_mut(i).copy_from_slice(&acc);
        }
        Ok(out)
    }

    /// Entrywise sum (XOR).
    pub fn add(&self, other: &Self) -> Result<Self, Gf2Error> {
        self.check_same_size(other)?;
        let mut out = self.clone();
        xor_into(&mut out.data, &other.data);
        Ok(out)
    }

    #[must_use]
    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            for_each_set_bit(self.row(i), |j| out.set(j, i, true));
        }
        out
    }

    /// `self · x` for a column vector `x`.
    pub fn mul_vec(&self, x: &Gf2Vector) -> Result<Gf2Vector, Gf2Error> {
        if x.len() != self.n {
            return Err(Gf2Error::DimensionMismatch {
                left: self.n,
                right: x.len(),
            });
        }
        let mut out = Gf2Vector::zeros(self.n);
        for i in 0..self.n {
            if parity_of_and(self.row(i), x.words()) {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form: returns the reduced rows (pivot rows first)
    /// and the pivot column of each. First set bit wins as pivot.
    fn reduced_echelon(&self) -> (Vec<Vec<u64>>, Vec<usize>) {
        let mut rows: Vec<Vec<u64>> = (0..self.n).map(|i| self.row(i).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.n {
            let (w, mask) = (col / WORD_BITS, 1u64 << (col % WORD_BITS));
            let Some(p) = (rank..self.n).find(|&r| rows[r][w] & mask != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[w] & mask != 0 {
                    xor_into(row, &pivot_row);
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == self.n {
                break;
            }
        }
        rows.truncate(rank);
        (rows, pivots)
    }

    /// Row rank over GF(2).
    #[must_use]
    pub fn rank(&self) -> usize {
        self.reduced_echelon().1.len()
    }

    /// Basis of `{x : self · x = 0}`, one vector per free column in
    /// ascending column order.
    #[must_use]
    pub fn null_space(&self) -> SubspaceBasis {
        let (rows, pivots) = self.reduced_echelon();
        let mut is_pivot = vec![false; self.n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let vectors = (0..self.n)
            .filter(|&f| !is_pivot[f])
            .map(|free| {
                let mut x = Gf2Vector::zeros(self.n);
                x.set(free, true);
                let (w, mask) = (free / WORD_BITS, 1u64 << (free % WORD_BITS));
                for (row, &p) in rows.iter().zip(&pivots) {
                    if row[w] & mask != 0 {
                        x.set(p, true);
                    }
                }
                x
            })
            .collect();
        SubspaceBasis::from_independent(self.n, vectors)
    }

    /// Leading `k × k` principal submatrix.
    ///
    /// # Panics
    /// Panics unless `1 <= k <= n`.
    #[must_use]
    pub fn leading_block(&self, k: usize) -> Self {
        assert!(k >= 1 && k <= self.n, "leading block size {k} out of range");
        Self::from_fn(k, |i, j| self.get(i, j))
    }

    /// Square block of size `len` whose top-left entry is `[start][start]`.
    ///
    /// # Panics
    /// Panics if the block is empty or runs past the matrix.
    #[must_use]
    pub fn principal_block(&self, start: usize, len: usize) -> Self {
        assert!(len >= 1 && start + len <= self.n, "principal block out of range");
        Self::from_fn(len, |i, j| self.get(start + i, start + j))
    }

    /// The `(n+1) × (n+1)` upper-triangular bordering of `self`: `column`
    /// (length `n + 1`) becomes the new last column, whose final entry is the
    /// new corner; the new last row is zero left of the corner.
    ///
    /// # Panics
    /// Panics if `column.len() != n + 1`.
    #[must_use]
    pub fn bordered(&self, column: &Gf2Vector) -> Self {
        let m = self.n + 1;
        assert_eq!(column.len(), m, "bordering column must have length n + 1");
        let mut out = Self::zero(m);
        for i in 0..self.n {
            let stride = self.stride;
            out.row_mut(i)[..stride].copy_from_slice(self.row(i));
        }
        for i in 0..m {
            if column.get(i) {
                out.set(i, self.n, true);
            }
        }
        out
    }

    /// `det_k` for `k = 1..=n`: entry `k - 1` is true iff the leading `k × k`
    /// block is nonsingular.
    #[must_use]
    pub fn leading_principal_minors(&self) -> Vec<bool> {
        (1..=self.n)
            .map(|k| self.leading_block(k).rank() == k)
            .collect()
    }

    #[must_use]
    pub fn is_upper_triangular(&self) -> bool {
        (1..self.n).all(|i| (0..i).all(|j| !self.get(i, j)))
    }

    #[must_use]
    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Leading principal minors are 1 up to the rank and 0 beyond it.
    #[must_use]
    pub fn is_lpn(&self) -> bool {
        let rank = self.rank();
        self.leading_principal_minors()
            .iter()
            .enumerate()
            .all(|(k, &det)| det == (k < rank))
    }

    #[must_use]
    pub fn structural_flags(&self) -> StructuralFlags {
        StructuralFlags {
            is_upper_triangular: self.is_upper_triangular(),
            is_symmetric: self.is_symmetric(),
            is_lpn: self.is_lpn(),
        }
    }

    #[must_use]
    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.n).all(|i| !self.get(i, i))
    }

    /// Solves a unit upper-triangular system column by column.
    ///
    /// `rhs` holds the right-hand-side columns, each of length `n`; the
    /// returned columns satisfy `uᵀ·X = rhs` or `u·X = rhs` per `orientation`.
    pub fn solve_upper_triangular(
        &self,
        rhs: &[Gf2Vector],
        orientation: Orientation,
    ) -> Result<Vec<Gf2Vector>, Gf2Error> {
        if !self.is_upper_triangular() {
            return Err(Gf2Error::NotUpperTriangular);
        }
        if let Some(i) = (0..self.n).find(|&i| !self.get(i, i)) {
            return Err(Gf2Error::Singular { index: i });
        }
        rhs.iter()
            .map(|b| {
                if b.len() != self.n {
                    return Err(Gf2Error::DimensionMismatch {
                        left: self.n,
                        right: b.len(),
                    });
                }
                let mut x = Gf2Vector::zeros(self.n);
                match orientation {
                    Orientation::Transposed => {
                        for i in 0..self.n {
                            let acc = (0..i).fold(b.get(i), |acc, k| acc ^ (self.get(k, i) & x.get(k)));
                            x.set(i, acc);
                        }
                    }
                    Orientation::Direct => {
                        for i in (0..self.n).rev() {
                            let acc = (i + 1..self.n)
                                .fold(b.get(i), |acc, k| acc ^ (self.get(i, k) & x.get(k)));
                            x.set(i, acc);
                        }
                    }
                }
                Ok(x)
            })
            .collect()
    }

    /// Rows as `0`/`1` strings.
    #[must_use]
    pub fn to_row_strings(&self) -> Vec<String> {
        (0..self.n).map(|i| self.row_vector(i).to_bit_string()).collect()
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Matrix[{}]", self.to_row_strings().join("/"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&str]) -> Gf2Matrix {
        rows.join("\n").parse().unwrap()
    }

    #[test]
    fn identity_squared() {
        let i3 = Gf2Matrix::identity(3);
        assert_eq!(i3.multiply(&i3).unwrap(), i3);
    }

    #[test]
    fn strict_upper_two_by_two_squares_to_zero() {
        let a = m(&["01", "00"]);
        assert_eq!(a.multiply(&a).unwrap(), Gf2Matrix::zero(2));
    }

    #[test]
    fn gram_of_self_orthogonal_columns_is_zero() {
        let u = m(&["01", "01"]);
        assert_eq!(u.transpose().multiply(&u).unwrap(), Gf2Matrix::zero(2));
    }

    #[test]
    fn multiply_rejects_size_mismatch() {
        let err = Gf2Matrix::zero(2).multiply(&Gf2Matrix::zero(3)).unwrap_err();
        assert!(matches!(err, Gf2Error::DimensionMismatch { left: 2, right: 3 }));
        assert!(Gf2Matrix::zero(2).add(&Gf2Matrix::zero(3)).is_err());
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(Gf2Matrix::zero(2).transpose(), Gf2Matrix::zero(2));
        assert_eq!(m(&["01", "00"]).transpose(), m(&["00", "10"]));
        let sym = m(&["110", "101", "011"]);
        assert_eq!(sym.transpose(), sym);
    }

    #[test]
    fn add_examples() {
        let a = m(&["011", "101", "110"]);
        assert_eq!(a.add(&a).unwrap(), Gf2Matrix::zero(3));
        assert_eq!(Gf2Matrix::zero(4).add(&Gf2Matrix::identity(4)).unwrap(), Gf2Matrix::identity(4));
        assert_eq!(m(&["01", "00"]).add(&Gf2Matrix::identity(2)).unwrap(), m(&["11", "01"]));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Gf2Matrix::zero(5).rank(), 0);
        assert_eq!(Gf2Matrix::identity(5).rank(), 5);
        assert_eq!(m(&["01", "01"]).rank(), 1);
    }

    #[test]
    fn null_space_examples() {
        assert_eq!(Gf2Matrix::zero(2).null_space().dim(), 2);
        assert_eq!(Gf2Matrix::identity(4).null_space().dim(), 0);
        let basis = m(&["01", "00"]).null_space();
        assert_eq!(basis.vectors(), &[Gf2Vector::from_bits(&[true, false])]);
    }

    #[test]
    fn solve_examples() {
        let i2 = Gf2Matrix::identity(2);
        let rhs = vec![Gf2Vector::from_bits(&[true, false]), Gf2Vector::from_bits(&[true, true])];
        assert_eq!(i2.solve_upper_triangular(&rhs, Orientation::Transposed).unwrap(), rhs);

        let u = m(&["11", "01"]);
        let x = u
            .solve_upper_triangular(&[Gf2Vector::from_bits(&[true, false])], Orientation::Transposed)
            .unwrap();
        assert_eq!(x, vec![Gf2Vector::from_bits(&[true, true])]);

        let zero = vec![Gf2Vector::zeros(2)];
        assert_eq!(i2.solve_upper_triangular(&zero, Orientation::Direct).unwrap(), zero);
    }

    #[test]
    fn solve_direct_back_substitution() {
        let u = m(&["110", "011", "001"]);
        let b = Gf2Vector::from_bits(&[true, false, true]);
        let x = u.solve_upper_triangular(std::slice::from_ref(&b), Orientation::Direct).unwrap();
        assert_eq!(u.mul_vec(&x[0]).unwrap(), b);
    }

    #[test]
    fn solve_rejects_zero_diagonal() {
        let u = m(&["11", "00"]);
        let err = u
            .solve_upper_triangular(&[Gf2Vector::zeros(2)], Orientation::Transposed)
            .unwrap_err();
        assert!(matches!(err, Gf2Error::Singular { index: 1 }));
    }

    #[test]
    fn solve_rejects_lower_entries() {
        let u = m(&["10", "11"]);
        assert!(matches!(
            u.solve_upper_triangular(&[], Orientation::Direct),
            Err(Gf2Error::NotUpperTriangular)
        ));
    }

    #[test]
    fn minors_examples() {
        assert!(Gf2Matrix::identity(4).leading_principal_minors().iter().all(|&d| d));
        assert!(Gf2Matrix::zero(4).leading_principal_minors().iter().all(|&d| !d));
        assert_eq!(m(&["00", "01"]).leading_principal_minors(), vec![false, false]);
    }

    #[test]
    fn flag_examples() {
        let d10 = m(&["10", "00"]);
        assert_eq!(
            d10.structural_flags(),
            StructuralFlags { is_upper_triangular: true, is_symmetric: true, is_lpn: true }
        );
        assert!(!m(&["00", "01"]).structural_flags().is_lpn);
        let i = Gf2Matrix::identity(3).structural_flags();
        assert!(i.is_upper_triangular && i.is_symmetric && i.is_lpn);
    }

    #[test]
    fn wide_matrices_use_multiple_words() {
        let n = 130;
        let a = Gf2Matrix::from_fn(n, |i, j| j >= i && (i * 7 + j * 3) % 5 == 0);
        let i = Gf2Matrix::identity(n);
        assert_eq!(a.multiply(&i).unwrap(), a);
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(i.rank(), n);
        let ns = a.null_space();
        assert_eq!(ns.dim() + a.rank(), n);
        for v in ns.vectors() {
            assert!(a.mul_vec(v).unwrap().is_zero());
        }
    }

    #[test]
    fn bordered_places_column_and_corner() {
        let b = m(&["01", "00"]);
        let ext = b.bordered(&Gf2Vector::from_bits(&[true, false, true]));
        assert_eq!(ext, m(&["011", "000", "001"]));
    }
}
