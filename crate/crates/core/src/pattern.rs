//! Collusion patterns: simplicial complexes on `[n]` stored by their facets.

use itertools::Itertools;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::matroid::circuits;
use crate::subset::{maximal_sets, GroundSubset, MAX_GROUND};

/// A downward-closed family of colluding sets, kept as its sorted,
/// inclusion-maximal facets. Membership of non-facets is implicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CollusionPattern {
    n: usize,
    facets: Vec<GroundSubset>,
}

impl CollusionPattern {
    pub fn new<I: IntoIterator<Item = GroundSubset>>(n: usize, sets: I) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::GuardExceeded {
                guard: "ground-set size",
                limit: MAX_GROUND as u64,
                actual: n as u64,
            });
        }
        let full = GroundSubset::full(n);
        let sets: Vec<GroundSubset> = sets.into_iter().collect();
        if let Some(bad) = sets.iter().find(|s| !s.is_subset(full)) {
            return Err(Error::ElementOutOfRange(
                bad.difference(full).min().unwrap(),
            ));
        }
        Ok(Self {
            n,
            facets: maximal_sets(sets),
        })
    }

    /// From 1-based element lists.
    pub fn from_lists(n: usize, sets: &[Vec<usize>]) -> Result<Self> {
        let sets: Vec<GroundSubset> = sets
            .iter()
            .map(|s| GroundSubset::within(n, s))
            .try_collect()?;
        Self::new(n, sets)
    }

    pub fn empty(n: usize) -> Self {
        Self { n, facets: vec![] }
    }

    /// `⟨T : |T| = t⟩`.
    pub fn t_collusion(n: usize, t: usize) -> Result<Self> {
        check_size(n, t)?;
        let facets = (1..=n)
            .combinations(t)
            .map(|c| GroundSubset::from_elements(c).expect("in range"));
        Self::new(n, facets)
    }

    /// The `n` windows `{i, ..., i+t-1}` taken cyclically.
    pub fn cyclic(n: usize, t: usize) -> Result<Self> {
        check_size(n, t)?;
        let facets = (0..n).map(|i| {
            (0..t)
                .map(|j| GroundSubset::singleton((i + j) % n + 1))
                .collect::<GroundSubset>()
        });
        Self::new(n, facets)
    }

    /// Generated by the circuits of `M(q)` through `e`.
    pub fn compromised(q: &LinearCode, e: usize) -> Result<Self> {
        if !q.ground().contains(e) {
            return Err(Error::ElementOutOfRange(e));
        }
        let through = circuits(q)?.into_iter().filter(|c| c.contains(e));
        Self::new(q.max_label(), through)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[GroundSubset] {
        &self.facets
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Whether `t` is a colluding set, i.e. lies inside some facet.
    pub fn contains(&self, t: GroundSubset) -> bool {
        t.is_empty() || self.facets.iter().any(|&f| t.is_subset(f))
    }

    /// Every colluding set of `self` is one of `other`.
    pub fn is_subpattern_of(&self, other: &CollusionPattern) -> bool {
        self.facets.iter().all(|&f| other.contains(f))
    }

    /// Elements covered by some facet.
    pub fn vertices(&self) -> GroundSubset {
        self.facets.iter().copied().collect()
    }

    fn check_same_ground(&self, other: &CollusionPattern) -> Result<()> {
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn union(&self, other: &CollusionPattern) -> Result<Self> {
        self.check_same_ground(other)?;
        Self::new(self.n, self.facets.iter().chain(&other.facets).copied())
    }

    pub fn intersection(&self, other: &CollusionPattern) -> Result<Self> {
        self.check_same_ground(other)?;
        let meets = self
            .facets
            .iter()
            .cartesian_product(&other.facets)
            .map(|(a, b)| a.intersection(*b));
        Self::new(self.n, meets)
    }

    /// Connected components of the facet-intersection graph.
    pub fn components(&self) -> Vec<CollusionPattern> {
        let mut groups: Vec<(GroundSubset, Vec<GroundSubset>)> = Vec::new();
        for &f in &self.facets {
            let (touching, rest): (Vec<_>, Vec<_>) =
                groups.into_iter().partition(|(v, _)| !v.is_disjoint(f));
            let mut merged = (f, vec![f]);
            for (v, fs) in touching {
                merged.0 = merged.0.union(v);
                merged.1.extend(fs);
            }
            groups = rest;
            groups.push(merged);
        }
        let mut out: Vec<CollusionPattern> = groups
            .into_iter()
            .map(|(_, fs)| Self::new(self.n, fs).expect("facets already valid"))
            .collect();
        out.sort_by(|a, b| a.facets.cmp(&b.facets));
        out
    }

    /// The facet-intersection graph is connected. Errors on the empty pattern.
    pub fn is_connected(&self) -> Result<bool> {
        if self.facets.is_empty() {
            return Err(Error::EmptyPattern);
        }
        Ok(self.components().len() == 1)
    }

    /// Facets as 1-based element lists.
    pub fn facet_lists(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|f| f.to_vec()).collect()
    }
}

fn check_size(n: usize, t: usize) -> Result<()> {
    if n > MAX_GROUND {
        return Err(Error::GuardExceeded {
            guard: "ground-set size",
            limit: MAX_GROUND as u64,
            actual: n as u64,
        });
    }
    if t == 0 || t > n {
        return Err(Error::OutOfRange { value: t, max: n });
    }
    Ok(())
}
