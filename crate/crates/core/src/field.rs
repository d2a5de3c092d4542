//! Exact arithmetic over prime fields and labeled-column matrices.
//!
//! Elements are stored as canonical residues in `0..p`. Every matrix carries a
//! list of column labels (1-based ground-set indices); row operations never
//! move columns, so labels stay attached to the same data throughout.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Largest supported modulus.
pub const MAX_MODULUS: u64 = 1 << 16;

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..=MAX_MODULUS).contains(&p) {
            return Err(Error::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p: p as u32 })
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Canonical residue of an arbitrary integer.
    #[inline]
    pub fn reduce(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    /// `a·b` summed over paired entries.
    pub fn dot(&self, a: &[u32], b: &[u32]) -> u32 {
        let p = self.p as u64;
        let mut acc = 0u64;
        for (&x, &y) in a.iter().zip(b) {
            acc = (acc + x as u64 * y as u64) % p;
        }
        acc as u32
    }

    /// `dst += c * src`, entrywise.
    pub fn axpy(&self, dst: &mut [u32], c: u32, src: &[u32]) {
        if c == 0 {
            return;
        }
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = self.add(*d, self.mul(c, s));
        }
    }

    pub fn scale(&self, v: &mut [u32], c: u32) {
        for x in v.iter_mut() {
            *x = self.mul(*x, c);
        }
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Incrementally built row-echelon basis of a subspace of `F_p^len`.
///
/// Rows are kept fully reduced against each other, so membership is one
/// reduction pass.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: PrimeField,
    len: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: PrimeField, len: usize) -> Self {
        Self {
            field,
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduces `v` in place against the basis.
    pub fn reduce(&self, v: &mut [u32]) {
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                self.field.axpy(v, self.field.neg(c), row);
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the spanning set. Returns `true` if the rank grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        debug_assert_eq!(v.len(), self.len);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let f = self.field;
        let lead = f.inv(w[pc]);
        f.scale(&mut w, lead);
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                f.axpy(row, f.neg(c), &w);
            }
        }
        self.rows.push(w);
        self.pivots.push(pc);
        true
    }

    /// Basis rows sorted by pivot position (i.e. the RREF rows).
    pub fn into_sorted_rows(self) -> Vec<Vec<u32>> {
        let mut paired: Vec<_> = self.pivots.into_iter().zip(self.rows).collect();
        paired.sort_by_key(|(p, _)| *p);
        paired.into_iter().map(|(_, r)| r).collect()
    }
}

/// Result of [`FieldMatrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: FieldMatrix,
    /// Labels of the pivot columns, in row order.
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// A matrix over a prime field with labeled columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    field: PrimeField,
    n_rows: usize,
    n_cols: usize,
    entries: Vec<u32>,
    col_labels: Vec<usize>,
}

impl FieldMatrix {
    /// Builds a matrix with labels `1..=n_cols`, reducing every entry mod p.
    pub fn new(field: PrimeField, n_cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * n_cols);
        for row in rows {
            if row.len() != n_cols {
                return Err(Error::LengthMismatch {
                    expected: n_cols,
                    found: row.len(),
                });
            }
            entries.extend(row.iter().map(|&x| field.reduce(x)));
        }
        Ok(Self {
            field,
            n_rows: rows.len(),
            n_cols,
            entries,
            col_labels: (1..=n_cols).collect(),
        })
    }

    /// Builds a matrix from already-reduced rows with the given labels.
    pub fn from_rows(
        field: PrimeField,
        col_labels: Vec<usize>,
        rows: Vec<Vec<u32>>,
    ) -> Result<Self> {
        check_labels(&col_labels)?;
        let n_cols = col_labels.len();
        let mut entries = Vec::with_capacity(rows.len() * n_cols);
        for row in &rows {
            if row.len() != n_cols {
                return Err(Error::LengthMismatch {
                    expected: n_cols,
                    found: row.len(),
                });
            }
            entries.extend(row.iter().map(|&x| x % field.modulus()));
        }
        Ok(Self {
            field,
            n_rows: rows.len(),
            n_cols,
            entries,
            col_labels,
        })
    }

    pub fn zeros(field: PrimeField, n_rows: usize, col_labels: Vec<usize>) -> Self {
        let n_cols = col_labels.len();
        Self {
            field,
            n_rows,
            n_cols,
            entries: vec![0; n_rows * n_cols],
            col_labels,
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, (1..=n).collect());
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// Replaces the column labels.
    pub fn with_labels(mut self, col_labels: Vec<usize>) -> Result<Self> {
        if col_labels.len() != self.n_cols {
            return Err(Error::LengthMismatch {
                expected: self.n_cols,
                found: col_labels.len(),
            });
        }
        check_labels(&col_labels)?;
        self.col_labels = col_labels;
        Ok(self)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn col_labels(&self) -> &[usize] {
        &self.col_labels
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.n_cols + c]
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.n_cols..(r + 1) * self.n_cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.n_rows).map(move |r| self.row(r))
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.n_rows).map(|r| self.get(r, c)).collect()
    }

    /// Position of a label among the columns.
    pub fn col_index(&self, label: usize) -> Option<usize> {
        self.col_labels.iter().position(|&l| l == label)
    }

    /// Reduced row echelon form; columns keep their order and labels, zero
    /// rows sink to the bottom.
    pub fn rref(&self) -> Rref {
        let mut ech = Echelon::new(self.field, self.n_cols);
        for r in self.rows() {
            ech.insert(r);
        }
        let rank = ech.rank();
        let mut rows = ech.into_sorted_rows();
        let pivots = rows
            .iter()
            .map(|r| self.col_labels[r.iter().position(|&x| x != 0).expect("nonzero row")])
            .collect();
        rows.resize(self.n_rows.max(rank), vec![0; self.n_cols]);
        let matrix =
            Self::from_rows(self.field, self.col_labels.clone(), rows).expect("shape preserved");
        Rref {
            matrix,
            pivots,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.field, self.n_cols);
        self.rows().filter(|r| ech.insert(r)).count()
    }

    /// Nonzero rows of the RREF.
    pub(crate) fn row_basis(&self) -> Vec<Vec<u32>> {
        let mut ech = Echelon::new(self.field, self.n_cols);
        for r in self.rows() {
            ech.insert(r);
        }
        ech.into_sorted_rows()
    }

    /// A basis of `{x : m·x = 0}`, one row per free column, columns in the
    /// original order.
    pub fn kernel_basis(&self) -> FieldMatrix {
        let f = self.field;
        let basis = self.row_basis();
        let pivot_cols: Vec<usize> = basis
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).expect("nonzero row"))
            .collect();
        let mut out = Vec::with_capacity(self.n_cols - basis.len());
        for free in (0..self.n_cols).filter(|c| !pivot_cols.contains(c)) {
            let mut v = vec![0u32; self.n_cols];
            v[free] = 1;
            for (row, &pc) in basis.iter().zip(&pivot_cols) {
                v[pc] = f.neg(row[free]);
            }
            out.push(v);
        }
        Self::from_rows(f, self.col_labels.clone(), out).expect("shape preserved")
    }

    /// Whether `v` lies in the row space, by comparing ranks with and without it.
    pub fn in_row_space(&self, v: &[u32]) -> Result<bool> {
        if v.len() != self.n_cols {
            return Err(Error::LengthMismatch {
                expected: self.n_cols,
                found: v.len(),
            });
        }
        let base = self.rank();
        let mut stacked = self.clone();
        stacked.push_row(v);
        Ok(stacked.rank() == base)
    }

    /// `m·x`.
    pub fn apply(&self, x: &[u32]) -> Result<Vec<u32>> {
        if x.len() != self.n_cols {
            return Err(Error::LengthMismatch {
                expected: self.n_cols,
                found: x.len(),
            });
        }
        Ok(self.rows().map(|r| self.field.dot(r, x)).collect())
    }

    pub fn push_row(&mut self, v: &[u32]) {
        assert_eq!(v.len(), self.n_cols);
        let p = self.field.modulus();
        self.entries.extend(v.iter().map(|&x| x % p));
        self.n_rows += 1;
    }

    /// Sub-matrix on the columns with the given labels, in the given order.
    pub fn select_columns(&self, labels: &[usize]) -> Result<FieldMatrix> {
        let idx: Vec<usize> = labels
            .iter()
            .map(|&l| self.col_index(l).ok_or(Error::ElementOutOfRange(l)))
            .try_collect()?;
        let rows = self
            .rows()
            .map(|r| idx.iter().map(|&c| r[c]).collect())
            .collect();
        Self::from_rows(self.field, labels.to_vec(), rows)
    }

    /// Rank of the columns at the given positions.
    pub(crate) fn column_rank(&self, cols: &[usize]) -> usize {
        let mut ech = Echelon::new(self.field, self.n_rows);
        cols.iter()
            .filter(|&&c| ech.insert(&self.column(c)))
            .count()
    }
}

impl fmt::Display for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.rows() {
            writeln!(f, "[{}]", r.iter().join(" "))?;
        }
        Ok(())
    }
}

fn check_labels(labels: &[usize]) -> Result<()> {
    for (i, &l) in labels.iter().enumerate() {
        if l == 0 {
            return Err(Error::ElementOutOfRange(0));
        }
        if labels[..i].contains(&l) {
            return Err(Error::DuplicateLabel(l));
        }
    }
    Ok(())
}

/// Inclusion-minimal linearly dependent subsets of `vectors`, as bit masks
/// over vector positions, in order of size then lexicographic position.
/// Only subsets of size at most `max_size` are examined.
pub(crate) fn minimal_dependent_sets(
    field: PrimeField,
    vectors: &[Vec<u32>],
    max_size: usize,
) -> Vec<u64> {
    assert!(vectors.len() <= 64);
    let len = vectors.first().map_or(0, Vec::len);
    let mut found: Vec<u64> = Vec::new();
    for size in 1..=max_size.min(vectors.len()) {
        let mut this_round = Vec::new();
        for combo in (0..vectors.len()).combinations(size) {
            let mask = combo.iter().fold(0u64, |m, &i| m | 1 << i);
            if found.iter().any(|&c| c & !mask == 0) {
                continue;
            }
            let mut ech = Echelon::new(field, len);
            if combo.iter().all(|&i| ech.insert(&vectors[i])) {
                continue;
            }
            // every proper subset is independent, since no smaller circuit fits inside
            this_round.push(mask);
        }
        found.extend(this_round);
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn ex310_h() -> FieldMatrix {
        FieldMatrix::new(
            f(7),
            7,
            &[
                vec![1, 4, 3, 6, 0, 0, 0],
                vec![0, 1, 5, 0, 2, 6, 0],
                vec![0, 0, 0, 1, 4, 3, 6],
            ],
        )
        .unwrap()
    }

    #[test]
    fn rejects_composite_and_out_of_range_moduli() {
        assert_eq!(PrimeField::new(9), Err(Error::NotPrime(9)));
        assert_eq!(PrimeField::new(1), Err(Error::ModulusOutOfRange(1)));
        assert_eq!(PrimeField::new(65537), Err(Error::ModulusOutOfRange(65537)));
        assert!(PrimeField::new(65521).is_ok());
    }

    #[test]
    fn minus_one_is_stored_as_p_minus_one() {
        assert_eq!(f(7).reduce(-1), 6);
        assert_eq!(f(7).inv(3), 5);
    }

    #[test]
    fn rref_of_systematic_parity_checks() {
        let r = ex310_h().rref();
        assert_eq!(
            r.matrix.to_rows(),
            vec![
                vec![1, 0, 4, 0, 3, 0, 6],
                vec![0, 1, 5, 0, 2, 6, 0],
                vec![0, 0, 0, 1, 4, 3, 6],
            ]
        );
        assert_eq!(r.pivots, vec![1, 2, 4]);
        assert_eq!(r.rank, 3);
        assert_eq!(r.matrix.col_labels(), &[1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = FieldMatrix::identity(f(2), 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![1, 2, 3]);
        let z = FieldMatrix::zeros(f(5), 2, vec![1, 2, 3, 4]);
        let r = z.rref();
        assert_eq!(r.matrix, z);
        assert!(r.pivots.is_empty());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn kernel_reproduces_lifted_generator() {
        let g = ex310_h().kernel_basis();
        assert_eq!(
            g.to_rows(),
            vec![
                vec![3, 2, 1, 0, 0, 0, 0],
                vec![4, 5, 0, 3, 1, 0, 0],
                vec![0, 1, 0, 4, 0, 1, 0],
                vec![1, 0, 0, 1, 0, 0, 1],
            ]
        );
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let k = FieldMatrix::identity(f(3), 4).kernel_basis();
        assert_eq!(k.n_rows(), 0);
        assert_eq!(k.n_cols(), 4);
    }

    #[test]
    fn kernel_of_all_ones_over_f2_matches_enumeration() {
        let m = FieldMatrix::new(f(2), 3, &[vec![1, 1, 1]]).unwrap();
        let k = m.kernel_basis();
        assert_eq!(k.n_rows(), 2);
        // brute force: all x in F_2^3 with x1+x2+x3 = 0
        let mut even = vec![];
        for bits in 0..8u32 {
            let x: Vec<u32> = (0..3).map(|i| bits >> i & 1).collect();
            if x.iter().sum::<u32>() % 2 == 0 {
                even.push(x);
            }
        }
        for x in &even {
            assert!(k.in_row_space(x).unwrap());
        }
        assert!(k.in_row_space(&[1, 1, 0]).unwrap());
        assert!(k.in_row_space(&[0, 1, 1]).unwrap());
        assert_eq!(even.len(), 1 << k.n_rows());
    }

    #[test]
    fn row_space_membership() {
        let g = FieldMatrix::new(
            f(2),
            5,
            &[
                vec![1, 0, 0, 1, 0],
                vec![0, 1, 0, 1, 1],
                vec![0, 0, 1, 0, 1],
            ],
        )
        .unwrap();
        assert!(g.in_row_space(&[1, 1, 0, 0, 1]).unwrap());
        assert!(g.in_row_space(&[0; 5]).unwrap());
        assert!(!g.in_row_space(&[1, 0, 0, 0, 0]).unwrap());
        assert_eq!(
            g.in_row_space(&[1, 0]),
            Err(Error::LengthMismatch {
                expected: 5,
                found: 2
            })
        );
        let id = FieldMatrix::identity(f(3), 2);
        assert!(id.in_row_space(&[1, 2]).unwrap());
    }

    #[test]
    fn select_columns_keeps_labels() {
        let m = ex310_h().select_columns(&[2, 4]).unwrap();
        assert_eq!(m.col_labels(), &[2, 4]);
        assert_eq!(m.to_rows(), vec![vec![4, 6], vec![1, 0], vec![0, 1]]);
        assert_eq!(
            ex310_h().select_columns(&[8]),
            Err(Error::ElementOutOfRange(8))
        );
    }

    fn small_matrix() -> impl Strategy<Value = (u64, usize, Vec<Vec<i64>>)> {
        (
            prop::sample::select(vec![2u64, 3, 5, 7]),
            1usize..6,
            0usize..5,
        )
            .prop_flat_map(|(p, cols, rows)| {
                let row = prop::collection::vec(0i64..p as i64, cols);
                (Just(p), Just(cols), prop::collection::vec(row, rows))
            })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent((p, cols, rows) in small_matrix()) {
            let m = FieldMatrix::new(f(p), cols, &rows).unwrap();
            let once = m.rref().matrix;
            prop_assert_eq!(once.rref().matrix, once);
        }

        #[test]
        fn rank_nullity((p, cols, rows) in small_matrix()) {
            let m = FieldMatrix::new(f(p), cols, &rows).unwrap();
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.n_rows(), cols);
            prop_assert_eq!(k.rank(), k.n_rows());
            for h in k.rows() {
                prop_assert!(m.apply(h).unwrap().iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn row_space_membership_matches_enumeration(
            (p, cols, rows) in small_matrix(),
            probe in prop::collection::vec(0u32..7, 5),
        ) {
            let fp = f(p);
            let m = FieldMatrix::new(fp, cols, &rows).unwrap();
            let v: Vec<u32> = probe[..cols].iter().map(|&x| x % fp.modulus()).collect();
            let basis = m.row_basis();
            // enumerate every combination of the basis rows
            let total = (p as usize).pow(basis.len() as u32);
            let mut hit = false;
            for idx in 0..total {
                let mut acc = vec![0u32; cols];
                let mut t = idx;
                for b in &basis {
                    fp.axpy(&mut acc, (t % p as usize) as u32, b);
                    t /= p as usize;
                }
                if acc == v {
                    hit = true;
                    break;
                }
            }
            prop_assert_eq!(m.in_row_space(&v).unwrap(), hit);
        }
    }
}
