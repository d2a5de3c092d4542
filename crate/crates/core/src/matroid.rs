//! The column matroid `M(Q)` of a linear code.

use itertools::Itertools;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::minimal_dependent_sets;
use crate::subset::GroundSubset;

/// Largest code length for which circuits are enumerated.
pub const CIRCUIT_ENUMERATION_LIMIT: usize = 24;

pub(crate) fn enumeration_guard(n: usize) -> Result<()> {
    if n > CIRCUIT_ENUMERATION_LIMIT {
        return Err(Error::GuardExceeded {
            guard: "circuit enumeration",
            limit: CIRCUIT_ENUMERATION_LIMIT as u64,
            actual: n as u64,
        });
    }
    Ok(())
}

/// Minimal dependent column sets of the generator, sorted lexicographically.
pub fn circuits(q: &LinearCode) -> Result<Vec<GroundSubset>> {
    enumeration_guard(q.len())?;
    let g = q.generator();
    let columns: Vec<Vec<u32>> = (0..q.len()).map(|c| g.column(c)).collect();
    let labels = q.labels();
    let mut out: Vec<GroundSubset> = minimal_dependent_sets(q.field(), &columns, q.dim() + 1)
        .into_iter()
        .map(|mask| {
            GroundSubset::from_bits(mask)
                .iter()
                .map(|i| GroundSubset::singleton(labels[i - 1]))
                .collect()
        })
        .collect();
    out.sort();
    Ok(out)
}

/// A code together with its (cached) circuits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentedMatroid {
    source: LinearCode,
    circuits: Vec<GroundSubset>,
}

impl RepresentedMatroid {
    pub fn new(source: LinearCode) -> Result<Self> {
        let circuits = circuits(&source)?;
        Ok(Self { source, circuits })
    }

    pub fn source(&self) -> &LinearCode {
        &self.source
    }

    pub fn circuits(&self) -> &[GroundSubset] {
        &self.circuits
    }

    pub fn ground(&self) -> GroundSubset {
        self.source.ground()
    }

    /// Rank of the whole matroid, i.e. the code dimension.
    pub fn full_rank(&self) -> usize {
        self.source.dim()
    }

    fn check_within(&self, x: GroundSubset) -> Result<()> {
        match x.difference(self.ground()).min() {
            Some(e) => Err(Error::ElementOutOfRange(e)),
            None => Ok(()),
        }
    }

    /// Column rank of the generator on `x`.
    pub fn rank(&self, x: GroundSubset) -> Result<usize> {
        self.check_within(x)?;
        let pos = self.source.positions(x)?;
        Ok(self.source.generator().column_rank(&pos))
    }

    pub fn closure(&self, x: GroundSubset) -> Result<GroundSubset> {
        let r = self.rank(x)?;
        let mut cl = x;
        for e in self.ground().difference(x) {
            if self.rank(x.with(e))? == r {
                cl.insert(e);
            }
        }
        Ok(cl)
    }

    pub fn is_flat(&self, x: GroundSubset) -> Result<bool> {
        Ok(self.closure(x)? == x)
    }

    pub fn is_basis(&self, b: GroundSubset) -> Result<bool> {
        Ok(b.len() == self.full_rank() && self.rank(b)? == b.len())
    }

    /// Loops are zero columns; coloops lie in no circuit.
    pub fn loops_and_coloops(&self) -> (GroundSubset, GroundSubset) {
        let g = self.source.generator();
        let loops = self
            .source
            .labels()
            .iter()
            .enumerate()
            .filter(|&(c, _)| g.column(c).iter().all(|&x| x == 0))
            .map(|(_, &l)| GroundSubset::singleton(l))
            .collect();
        let covered: GroundSubset = self.circuits.iter().copied().collect();
        (loops, self.ground().difference(covered))
    }

    /// Every pair of distinct elements lies on a common circuit.
    ///
    /// A one-element matroid counts as connected whether the element is a
    /// loop or a coloop.
    pub fn is_connected(&self) -> bool {
        let ground = self.ground();
        if ground.len() <= 1 {
            return true;
        }
        ground.iter().all(|e| {
            let reach: GroundSubset = self
                .circuits
                .iter()
                .copied()
                .filter(|c| c.contains(e))
                .collect();
            reach == ground
        })
    }

    /// The unique circuit inside `b ∪ {e}`.
    pub fn fundamental_circuit(&self, b: GroundSubset, e: usize) -> Result<GroundSubset> {
        self.check_within(b)?;
        if !self.ground().contains(e) {
            return Err(Error::ElementOutOfRange(e));
        }
        if !self.is_basis(b)? {
            return Err(Error::NotABasis(b));
        }
        if b.contains(e) {
            return Err(Error::ElementInBasis {
                element: e,
                basis: b,
            });
        }
        // the kernel of the columns b ∪ {e} is one-dimensional; its support is the circuit
        let cols = b.with(e).to_vec();
        let kernel = self
            .source
            .generator()
            .select_columns(&cols)?
            .kernel_basis();
        debug_assert_eq!(kernel.n_rows(), 1);
        Ok(cols
            .iter()
            .zip(kernel.row(0))
            .filter(|(_, &x)| x != 0)
            .map(|(&l, _)| GroundSubset::singleton(l))
            .collect())
    }

    /// `M \ delete / contract`, realised by puncturing and shortening.
    pub fn minor(
        &self,
        delete: GroundSubset,
        contract: GroundSubset,
    ) -> Result<RepresentedMatroid> {
        if !delete.is_disjoint(contract) {
            return Err(Error::OverlappingMinor);
        }
        self.check_within(delete.union(contract))?;
        let code = self.source.puncture(delete)?.shorten(contract)?;
        Self::new(code)
    }

    /// Circuits of the dual matroid, i.e. of the dual code.
    pub fn dual_circuits(&self) -> Result<Vec<GroundSubset>> {
        circuits(&self.source.dual())
    }

    /// All hyperplanes (flats of rank `r - 1`).
    pub fn hyperplanes(&self) -> Result<Vec<GroundSubset>> {
        let r = self.full_rank();
        if r == 0 {
            return Ok(vec![]);
        }
        let mut out = Vec::new();
        for combo in self.ground().iter().combinations(r - 1) {
            let x = GroundSubset::from_elements(combo)?;
            if self.rank(x)? == r - 1 {
                out.push(self.closure(x)?);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}
