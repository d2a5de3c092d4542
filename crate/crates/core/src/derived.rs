//! Circuit vectors and the derived matroid.
//!
//! Every circuit `C` of `M(Q)` supports a dual codeword, unique up to scaling.
//! Scaling it so that its first nonzero entry is 1 gives a canonical
//! [`CircuitVector`]. Stacking these in lexicographic circuit order gives a
//! representation of the derived matroid `δM(Q)`, whose ground set is the
//! circuit list of `M(Q)`. Two codes with the same matroid therefore have
//! directly comparable derived matroids: row `i` refers to the same circuit in
//! both.

use itertools::Itertools;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::{minimal_dependent_sets, Echelon, FieldMatrix};
use crate::matroid::{circuits, RepresentedMatroid, CIRCUIT_ENUMERATION_LIMIT};
use crate::pattern::CollusionPattern;
use crate::subset::GroundSubset;

/// A dual codeword whose support is exactly `circuit`, normalized so that
/// the entry at the smallest support index is 1. Entries are indexed by
/// column position of the source code.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CircuitVector {
    pub circuit: GroundSubset,
    pub vector: Vec<u32>,
}

/// The normalized dual vector supported on `c`.
pub fn circuit_vector(q: &LinearCode, c: GroundSubset) -> Result<CircuitVector> {
    if c.is_empty() {
        return Err(Error::NotACircuit(c));
    }
    let labels = c.to_vec();
    let kernel = q.generator().select_columns(&labels)?.kernel_basis();
    if kernel.n_rows() != 1 || kernel.row(0).contains(&0) {
        return Err(Error::NotACircuit(c));
    }
    let f = q.field();
    let mut local = kernel.row(0).to_vec();
    let lead = f.inv(local[0]);
    f.scale(&mut local, lead);
    let mut vector = vec![0u32; q.len()];
    for (&l, &x) in labels.iter().zip(&local) {
        vector[q.index_of(l)?] = x;
    }
    Ok(CircuitVector { circuit: c, vector })
}

/// Stacked circuit vectors representing `δM(Q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedRep {
    source: LinearCode,
    ground: Vec<GroundSubset>,
    rep_matrix: FieldMatrix,
}

impl DerivedRep {
    pub fn new(q: &LinearCode) -> Result<Self> {
        Self::from_circuits(q, circuits(q)?)
    }

    pub fn from_matroid(m: &RepresentedMatroid) -> Result<Self> {
        Self::from_circuits(m.source(), m.circuits().to_vec())
    }

    fn from_circuits(q: &LinearCode, ground: Vec<GroundSubset>) -> Result<Self> {
        let rows = ground
            .iter()
            .map(|&c| circuit_vector(q, c).map(|cv| cv.vector))
            .try_collect()?;
        let rep_matrix = FieldMatrix::from_rows(q.field(), q.labels().to_vec(), rows)?;
        Ok(Self {
            source: q.clone(),
            ground,
            rep_matrix,
        })
    }

    pub fn source(&self) -> &LinearCode {
        &self.source
    }

    /// The circuits of `M(Q)`, in the row order of the representation.
    pub fn ground(&self) -> &[GroundSubset] {
        &self.ground
    }

    pub fn rep_matrix(&self) -> &FieldMatrix {
        &self.rep_matrix
    }

    pub fn rank(&self) -> usize {
        self.rep_matrix.rank()
    }

    fn index_of(&self, c: GroundSubset) -> Result<usize> {
        self.ground
            .binary_search(&c)
            .map_err(|_| Error::NotACircuit(c))
    }

    fn indices(&self, s: &[GroundSubset]) -> Result<Vec<usize>> {
        s.iter().map(|&c| self.index_of(c)).try_collect()
    }

    fn independent_rows(&self, idx: &[usize]) -> bool {
        let mut ech = Echelon::new(self.rep_matrix.field(), self.rep_matrix.n_cols());
        idx.iter().all(|&i| ech.insert(self.rep_matrix.row(i)))
    }

    /// Whether the circuit vectors of `s` are linearly independent.
    pub fn is_independent(&self, s: &[GroundSubset]) -> Result<bool> {
        let mut idx = self.indices(s)?;
        idx.sort_unstable();
        if idx.windows(2).any(|w| w[0] == w[1]) {
            // a repeated circuit is a repeated vector
            return Ok(false);
        }
        Ok(self.independent_rows(&idx))
    }

    /// Circuits of `δM(Q)`: minimal dependent sets of circuit vectors, in
    /// order of size then lexicographic position.
    pub fn circuits(&self) -> Result<Vec<Vec<GroundSubset>>> {
        derived_guard(self.ground.len())?;
        let rows = self.rep_matrix.to_rows();
        Ok(
            minimal_dependent_sets(self.rep_matrix.field(), &rows, self.rank() + 1)
                .into_iter()
                .map(|mask| self.members(mask))
                .collect(),
        )
    }

    fn members(&self, mask: u64) -> Vec<GroundSubset> {
        GroundSubset::from_bits(mask)
            .iter()
            .map(|i| self.ground[i - 1])
            .collect()
    }

    /// Closure of `s` in `δM(Q)`: all circuits whose vector lies in the span
    /// of the vectors of `s`.
    pub fn flat(&self, s: &[GroundSubset]) -> Result<Vec<GroundSubset>> {
        let idx = self.indices(s)?;
        let mut ech = Echelon::new(self.rep_matrix.field(), self.rep_matrix.n_cols());
        for &i in &idx {
            ech.insert(self.rep_matrix.row(i));
        }
        Ok(self
            .ground
            .iter()
            .enumerate()
            .filter(|&(i, _)| ech.contains(self.rep_matrix.row(i)))
            .map(|(_, &c)| c)
            .collect())
    }

    /// A maximal independent subfamily of `s`, chosen greedily in list order.
    pub fn maximal_independent(&self, s: &[GroundSubset]) -> Result<Vec<GroundSubset>> {
        let idx = self.indices(s)?;
        let mut ech = Echelon::new(self.rep_matrix.field(), self.rep_matrix.n_cols());
        Ok(idx
            .into_iter()
            .filter(|&i| ech.insert(self.rep_matrix.row(i)))
            .map(|i| self.ground[i])
            .collect())
    }
}

fn derived_guard(m: usize) -> Result<()> {
    if m > CIRCUIT_ENUMERATION_LIMIT {
        return Err(Error::GuardExceeded {
            guard: "derived circuit enumeration",
            limit: CIRCUIT_ENUMERATION_LIMIT as u64,
            actual: m as u64,
        });
    }
    Ok(())
}

fn matched_pair(q1: &LinearCode, q2: &LinearCode) -> Result<(DerivedRep, DerivedRep)> {
    if q1.field() != q2.field() || q1.labels() != q2.labels() {
        return Err(Error::FieldMismatch);
    }
    let d1 = DerivedRep::new(q1)?;
    let d2 = DerivedRep::new(q2)?;
    if d1.ground != d2.ground {
        return Err(Error::MatroidMismatch);
    }
    Ok((d1, d2))
}

/// Whether two codes with the same matroid have the same derived matroid.
pub fn derived_equal(q1: &LinearCode, q2: &LinearCode) -> Result<bool> {
    let (d1, d2) = matched_pair(q1, q2)?;
    Ok(d1.circuits()? == d2.circuits()?)
}

/// A collusion pattern separating two representations of the same matroid,
/// generated by the first circuit family (by size, then lexicographically)
/// that is independent in one derived matroid and dependent in the other.
/// `None` when the derived matroids agree.
pub fn separating_pattern(q1: &LinearCode, q2: &LinearCode) -> Result<Option<CollusionPattern>> {
    let (d1, d2) = matched_pair(q1, q2)?;
    let m = d1.ground.len();
    derived_guard(m)?;
    let max_size = d1.rank().max(d2.rank()) + 1;
    for size in 1..=max_size.min(m) {
        for combo in (0..m).combinations(size) {
            if d1.independent_rows(&combo) != d2.independent_rows(&combo) {
                let facets = combo.iter().map(|&i| d1.ground[i]);
                return CollusionPattern::new(q1.max_label(), facets).map(Some);
            }
        }
    }
    Ok(None)
}
