//! Linear codes over prime fields.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::field::{Echelon, FieldMatrix, PrimeField};
use crate::subset::{GroundSubset, MAX_GROUND};

/// A linear code, held as the RREF of a full-row-rank generator.
///
/// Column labels are the code's coordinates; for an ordinary code of length
/// `n` they are `1..=n`. Restrictions and minors keep the labels of the
/// surviving coordinates. Because the generator is canonical, two codes are
/// equal exactly when they compare equal with `==`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearCode {
    generator: FieldMatrix,
}

impl LinearCode {
    /// The span of `rows` inside `F_p^n`.
    pub fn new(p: u64, n: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if n > MAX_GROUND {
            return Err(Error::GuardExceeded {
                guard: "ground-set size",
                limit: MAX_GROUND as u64,
                actual: n as u64,
            });
        }
        Ok(Self::from_matrix(&FieldMatrix::new(field, n, rows)?))
    }

    /// The row space of `m`, with `m`'s column labels.
    pub fn from_matrix(m: &FieldMatrix) -> Self {
        let rows = m.row_basis();
        Self {
            generator: FieldMatrix::from_rows(m.field(), m.col_labels().to_vec(), rows)
                .expect("labels already validated"),
        }
    }

    pub(crate) fn from_rows(
        field: PrimeField,
        labels: Vec<usize>,
        rows: Vec<Vec<u32>>,
    ) -> Result<Self> {
        Ok(Self::from_matrix(&FieldMatrix::from_rows(
            field, labels, rows,
        )?))
    }

    /// `{0} ⊆ F_p^n`.
    pub fn zero(field: PrimeField, n: usize) -> Self {
        Self {
            generator: FieldMatrix::zeros(field, 0, (1..=n).collect()),
        }
    }

    /// `F_p^n`.
    pub fn full(field: PrimeField, n: usize) -> Self {
        Self {
            generator: FieldMatrix::identity(field, n),
        }
    }

    /// The full space on an arbitrary label set.
    pub fn full_on(field: PrimeField, labels: Vec<usize>) -> Result<Self> {
        let n = labels.len();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
            .collect();
        Self::from_rows(field, labels, rows)
    }

    pub fn field(&self) -> PrimeField {
        self.generator.field()
    }

    /// Code length.
    pub fn len(&self) -> usize {
        self.generator.n_cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Dimension.
    pub fn dim(&self) -> usize {
        self.generator.n_rows()
    }

    /// Canonical (RREF) generator, `dim × len`.
    pub fn generator(&self) -> &FieldMatrix {
        &self.generator
    }

    pub fn labels(&self) -> &[usize] {
        self.generator.col_labels()
    }

    /// The coordinate labels as a set.
    pub fn ground(&self) -> GroundSubset {
        GroundSubset::from_elements(self.labels().iter().copied()).expect("labels fit")
    }

    /// Largest coordinate label (`n` for an ordinary code).
    pub fn max_label(&self) -> usize {
        self.labels().iter().copied().max().unwrap_or(0)
    }

    pub(crate) fn index_of(&self, label: usize) -> Result<usize> {
        self.generator
            .col_index(label)
            .ok_or(Error::ElementOutOfRange(label))
    }

    /// Column positions of the members of `t`, ascending by label.
    pub(crate) fn positions(&self, t: GroundSubset) -> Result<Vec<usize>> {
        let mut pos: Vec<usize> = t.iter().map(|e| self.index_of(e)).try_collect()?;
        pos.sort_by_key(|&i| self.labels()[i]);
        Ok(pos)
    }

    /// Whether `v` (indexed by column position) is a codeword.
    pub fn contains(&self, v: &[u32]) -> Result<bool> {
        if v.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: v.len(),
            });
        }
        Ok(self.echelon().contains(v))
    }

    pub(crate) fn echelon(&self) -> Echelon {
        let mut ech = Echelon::new(self.field(), self.len());
        for r in self.generator.rows() {
            ech.insert(r);
        }
        ech
    }

    /// `self ⊆ other`.
    pub fn is_subcode_of(&self, other: &LinearCode) -> Result<bool> {
        self.check_compatible(other)?;
        let ech = other.echelon();
        Ok(self.generator.rows().all(|r| ech.contains(r)))
    }

    /// Equality of row spaces; errors if field or coordinates differ.
    pub fn code_equal(&self, other: &LinearCode) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self == other)
    }

    fn check_compatible(&self, other: &LinearCode) -> Result<()> {
        if self.field() != other.field() || self.labels() != other.labels() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// `self ∩ other`, as the dual of the sum of the duals.
    pub fn intersection(&self, other: &LinearCode) -> Result<LinearCode> {
        self.check_compatible(other)?;
        let mut checks = self.dual().generator_rows();
        checks.extend(other.dual().generator_rows());
        Ok(Self::from_rows(self.field(), self.labels().to_vec(), checks)?.dual())
    }

    /// `{v : x·v = 0 for all x in self}`.
    pub fn dual(&self) -> LinearCode {
        Self::from_matrix(&self.generator.kernel_basis())
    }

    /// `{x|_t : x ∈ self}` as a code on the labels of `t`.
    pub fn restrict(&self, t: GroundSubset) -> Result<LinearCode> {
        if t.is_empty() {
            return Err(Error::EmptySubset);
        }
        if let Some(e) = t.difference(self.ground()).min() {
            return Err(Error::ElementOutOfRange(e));
        }
        Ok(Self::from_matrix(
            &self.generator.select_columns(&t.to_vec())?,
        ))
    }

    /// Deletes the coordinates in `x`.
    pub fn puncture(&self, x: GroundSubset) -> Result<LinearCode> {
        if let Some(e) = x.difference(self.ground()).min() {
            return Err(Error::ElementOutOfRange(e));
        }
        let keep = self.ground().difference(x);
        if keep.is_empty() {
            return Ok(Self {
                generator: FieldMatrix::zeros(self.field(), 0, vec![]),
            });
        }
        self.restrict(keep)
    }

    /// Codewords vanishing on `x`, with `x` deleted.
    pub fn shorten(&self, x: GroundSubset) -> Result<LinearCode> {
        Ok(self.dual().puncture(x)?.dual())
    }

    /// Reed–Solomon code: generator row `i` is `(a_1^i, ..., a_n^i)`.
    pub fn reed_solomon(p: u64, n: usize, k: usize, points: &[u64]) -> Result<LinearCode> {
        let field = PrimeField::new(p)?;
        if points.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: points.len(),
            });
        }
        if n > field.modulus() as usize {
            return Err(Error::LengthExceedsField {
                n,
                p: field.modulus(),
            });
        }
        if k > n {
            return Err(Error::DimensionExceedsLength { k, n });
        }
        let pts: Vec<u32> = points.iter().map(|&a| field.reduce(a as i64)).collect();
        if pts.iter().duplicates().next().is_some() {
            return Err(Error::RepeatedPoints);
        }
        let rows = (0..k)
            .map(|i| pts.iter().map(|&a| field.pow(a, i as u64)).collect())
            .collect();
        Self::from_rows(field, (1..=n).collect(), rows)
    }

    /// Every `k` columns of the generator are independent.
    pub fn is_mds(&self) -> Result<bool> {
        let (k, n) = (self.dim(), self.len());
        if k == 0 || k >= n {
            return Err(Error::DegenerateDimension { k, n });
        }
        Ok((0..n)
            .combinations(k)
            .all(|cols| self.generator.column_rank(&cols) == k))
    }

    /// Direct sum of codes on pairwise disjoint label sets, padded with the
    /// full space on `extra`.
    pub fn direct_sum(parts: &[LinearCode], extra: GroundSubset) -> Result<LinearCode> {
        let field = parts
            .first()
            .map(LinearCode::field)
            .ok_or(Error::EmptySubset)?;
        let mut ground = extra;
        for part in parts {
            if part.field() != field || !part.ground().is_disjoint(ground) {
                return Err(Error::FieldMismatch);
            }
            ground = ground.union(part.ground());
        }
        let labels = ground.to_vec();
        let col = |l: usize| labels.binary_search(&l).expect("label present");
        let mut rows = Vec::new();
        for part in parts {
            for r in part.generator.rows() {
                let mut v = vec![0u32; labels.len()];
                for (&l, &x) in part.labels().iter().zip(r) {
                    v[col(l)] = x;
                }
                rows.push(v);
            }
        }
        for e in extra {
            let mut v = vec![0u32; labels.len()];
            v[col(e)] = 1;
            rows.push(v);
        }
        Self::from_rows(field, labels, rows)
    }

    /// The generator as signed integers, one row per basis vector.
    pub fn generator_rows(&self) -> Vec<Vec<u32>> {
        self.generator.to_rows()
    }
}
