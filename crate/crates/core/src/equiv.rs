//! Deciding whether a pattern is as strong as full `t`-collusion, i.e.
//! whether `Q^T = Q` for a code of dimension `t - 1`.

use itertools::Itertools;
use serde::Serialize;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::lift::{lift, observed_circuits};
use crate::matroid::RepresentedMatroid;
use crate::pattern::CollusionPattern;
use crate::subset::GroundSubset;

/// Bases are enumerated for the fundamental-circuit test only up to this
/// many candidate `k`-subsets.
pub const BASIS_SEARCH_LIMIT: u64 = 4096;

/// An ordering `C_1, ..., C_m` with witnesses `e_i ∈ C_i` such that no
/// earlier witness lies in a later set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangularCertificate {
    pub ordering: Vec<GroundSubset>,
    pub witnesses: Vec<usize>,
}

impl TriangularCertificate {
    pub fn len(&self) -> usize {
        self.ordering.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordering.is_empty()
    }

    pub fn is_valid(&self) -> bool {
        self.ordering.len() == self.witnesses.len()
            && self
                .ordering
                .iter()
                .zip(&self.witnesses)
                .enumerate()
                .all(|(i, (c, &e))| {
                    c.contains(e)
                        && self.ordering[i + 1..]
                            .iter()
                            .all(|later| !later.contains(e))
                })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Direct,
    Triangular,
    FundamentalBasis,
    Compromised,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub is_equivalent: bool,
    pub certificate: Option<TriangularCertificate>,
    pub method: Method,
}

/// Whether `Q^tau = Q`, trying combinatorial certificates before computing
/// the lift. Facets must have at most `dim q + 1` elements.
pub fn is_t_equivalent(q: &LinearCode, tau: &CollusionPattern) -> Result<EquivalenceReport> {
    let t = q.dim() + 1;
    if let Some(&facet) = tau.facets().iter().find(|f| f.len() > t) {
        return Err(Error::FacetTooLarge { facet, t });
    }
    let observed = observed_circuits(q, tau)?;
    let needed = q.len() - q.dim();

    if let Some(cert) = triangular_ordering(&observed) {
        if cert.len() == needed {
            return Ok(EquivalenceReport {
                is_equivalent: true,
                certificate: Some(cert),
                method: Method::Triangular,
            });
        }
    }
    if contains_fundamental_basis(q, tau)? {
        return Ok(EquivalenceReport {
            is_equivalent: true,
            certificate: None,
            method: Method::FundamentalBasis,
        });
    }
    Ok(EquivalenceReport {
        is_equivalent: &lift(q, tau)?.lifted == q,
        certificate: None,
        method: Method::Direct,
    })
}

fn contains_fundamental_basis(q: &LinearCode, tau: &CollusionPattern) -> Result<bool> {
    let (n, k) = (q.len(), q.dim());
    if binomial(n as u64, k as u64) > BASIS_SEARCH_LIMIT {
        return Ok(false);
    }
    let m = RepresentedMatroid::new(q.clone())?;
    for b in q.labels().iter().copied().combinations(k) {
        let b = GroundSubset::from_elements(b)?;
        if !m.is_basis(b)? {
            continue;
        }
        let mut all = true;
        for e in q.ground().difference(b) {
            if !tau.contains(m.fundamental_circuit(b, e)?) {
                all = false;
                break;
            }
        }
        if all {
            return Ok(true);
        }
    }
    Ok(false)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Every set keeps an element outside the union of the others.
pub fn has_private_elements(sets: &[GroundSubset]) -> bool {
    (0..sets.len()).all(|i| {
        let others: GroundSubset = sets
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &s)| s)
            .collect();
        !sets[i].is_subset(others)
    })
}

/// Greedy hanging test: repeatedly take the smallest set not covered by the
/// remaining ones, with its smallest private element as witness.
pub fn triangular_ordering(sets: &[GroundSubset]) -> Option<TriangularCertificate> {
    if sets.is_empty() {
        return None;
    }
    let mut remaining: Vec<GroundSubset> = sets.to_vec();
    remaining.sort();
    let mut ordering = Vec::with_capacity(remaining.len());
    let mut witnesses = Vec::with_capacity(remaining.len());
    while !remaining.is_empty() {
        let (i, e) = remaining.iter().enumerate().find_map(|(i, &c)| {
            let others: GroundSubset = remaining
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &s)| s)
                .collect();
            c.difference(others).min().map(|e| (i, e))
        })?;
        ordering.push(remaining.remove(i));
        witnesses.push(e);
    }
    Some(TriangularCertificate {
        ordering,
        witnesses,
    })
}

/// The pattern of fundamental circuits of the basis `b`.
pub fn fundamental_basis_pattern(q: &LinearCode, b: GroundSubset) -> Result<CollusionPattern> {
    let m = RepresentedMatroid::new(q.clone())?;
    if !b.is_subset(q.ground()) || !m.is_basis(b)? {
        return Err(Error::NotABasis(b));
    }
    let circuits: Vec<GroundSubset> = q
        .ground()
        .difference(b)
        .iter()
        .map(|e| m.fundamental_circuit(b, e))
        .try_collect()?;
    CollusionPattern::new(q.max_label(), circuits)
}

/// Lift over the circuits through `e` and report whether it gives back `q`.
pub fn check_compromised(q: &LinearCode, e: usize) -> Result<EquivalenceReport> {
    if !RepresentedMatroid::new(q.clone())?.is_connected() {
        return Err(Error::DisconnectedMatroid);
    }
    let tau = CollusionPattern::compromised(q, e)?;
    Ok(EquivalenceReport {
        is_equivalent: &lift(q, &tau)?.lifted == q,
        certificate: None,
        method: Method::Compromised,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssumptionReport {
    pub connected: bool,
    /// Elements not lying in any colluding set of size at least two.
    pub isolated: Vec<usize>,
    /// Facets with more than `dim q + 1` elements.
    pub oversized_facets: Vec<GroundSubset>,
}

impl AssumptionReport {
    pub fn no_isolated(&self) -> bool {
        self.isolated.is_empty()
    }

    pub fn facet_bound(&self) -> bool {
        self.oversized_facets.is_empty()
    }

    pub fn all_hold(&self) -> bool {
        self.connected && self.no_isolated() && self.facet_bound()
    }
}

pub fn standing_assumptions(q: &LinearCode, tau: &CollusionPattern) -> AssumptionReport {
    let t = q.dim() + 1;
    let covered: GroundSubset = tau
        .facets()
        .iter()
        .copied()
        .filter(|f| f.len() >= 2)
        .collect();
    AssumptionReport {
        connected: tau.is_connected().unwrap_or(false),
        isolated: GroundSubset::full(tau.n()).difference(covered).to_vec(),
        oversized_facets: tau
            .facets()
            .iter()
            .copied()
            .filter(|f| f.len() > t)
            .collect(),
    }
}

/// A code on `[n]` whose only circuit is `s`: the identity on every element
/// but `max s`, whose column is the sum of the other columns of `s`.
pub fn distinguishing_code(field: PrimeField, n: usize, s: GroundSubset) -> Result<LinearCode> {
    let top = s.max().ok_or(Error::EmptySubset)?;
    if top > n {
        return Err(Error::ElementOutOfRange(top));
    }
    let rows = (1..=n)
        .filter(|&j| j != top)
        .map(|j| {
            let mut r = vec![0u32; n];
            r[j - 1] = 1;
            if s.contains(j) {
                r[top - 1] = 1;
            }
            r
        })
        .collect();
    LinearCode::from_rows(field, (1..=n).collect(), rows)
}

/// A facet of one pattern that is not a colluding set of the other.
pub fn distinguishing_set(a: &CollusionPattern, b: &CollusionPattern) -> Option<GroundSubset> {
    let missing = |x: &CollusionPattern, y: &CollusionPattern| {
        x.facets().iter().copied().find(|&f| !y.contains(f))
    };
    missing(a, b).or_else(|| missing(b, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derived::DerivedRep;
    use crate::fixtures;
    use crate::set;
    use proptest::prelude::*;

    /// Exhaustive search for a triangular order, fixing one position at a
    /// time and abandoning a prefix as soon as it breaks the definition.
    fn triangular_by_search(sets: &[GroundSubset]) -> bool {
        fn go(rest: &mut Vec<GroundSubset>) -> bool {
            if rest.is_empty() {
                return true;
            }
            for i in 0..rest.len() {
                let c = rest[i];
                let later: GroundSubset = rest
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &s)| s)
                    .collect();
                if c.is_subset(later) {
                    continue;
                }
                rest.remove(i);
                let ok = go(rest);
                rest.insert(i, c);
                if ok {
                    return true;
                }
            }
            false
        }
        !sets.is_empty() && go(&mut sets.to_vec())
    }

    #[test]
    fn mds_pair_equivalence() {
        let (q1, q2) = fixtures::mds_pair();
        let tau = fixtures::mds_pair_pattern();
        let r1 = is_t_equivalent(&q1, &tau).unwrap();
        assert!(r1.is_equivalent);
        assert_eq!(r1.method, Method::Direct);
        assert!(r1.certificate.is_none());
        let r2 = is_t_equivalent(&q2, &tau).unwrap();
        assert!(!r2.is_equivalent);
    }

    #[test]
    fn equivalent_without_hanging() {
        let q1 = fixtures::mds_pair().0;
        let facets = fixtures::mds_pair_pattern().facets().to_vec();
        assert!(triangular_ordering(&facets).is_none());
        assert!(!triangular_by_search(&facets));
        assert_eq!(lift(&q1, &fixtures::mds_pair_pattern()).unwrap().lifted, q1);
    }

    #[test]
    fn reed_solomon_cyclic_pattern() {
        let q = fixtures::rs_7_3();
        let report = is_t_equivalent(&q, &CollusionPattern::cyclic(7, 4).unwrap()).unwrap();
        assert!(report.is_equivalent);
    }

    #[test]
    fn oversized_facets_rejected() {
        let q = fixtures::binary_5_3();
        let err = is_t_equivalent(&q, &CollusionPattern::t_collusion(5, 5).unwrap()).unwrap_err();
        assert!(matches!(err, Error::FacetTooLarge { t: 4, .. }));
    }

    #[test]
    fn full_t_collusion_is_accepted() {
        let q = fixtures::rs_7_3();
        let r = is_t_equivalent(&q, &CollusionPattern::t_collusion(7, 4).unwrap()).unwrap();
        assert!(r.is_equivalent);
    }

    #[test]
    fn private_elements() {
        let q = fixtures::binary_5_3();
        let fundamental = fundamental_basis_pattern(&q, set![1, 2, 3]).unwrap();
        assert!(has_private_elements(fundamental.facets()));
        assert!(!has_private_elements(fixtures::mds_pair_pattern().facets()));
        assert!(has_private_elements(&[set![1, 2]]));
    }

    #[test]
    fn greedy_on_windows() {
        let windows = [
            set![1, 2, 3, 4],
            set![2, 3, 4, 5],
            set![3, 4, 5, 6],
            set![4, 5, 6, 7],
        ];
        let cert = triangular_ordering(&windows).unwrap();
        assert_eq!(cert.ordering, windows.to_vec());
        assert_eq!(cert.witnesses, vec![1, 2, 3, 4]);
        assert!(cert.is_valid());
        let single = triangular_ordering(&[set![2, 5]]).unwrap();
        assert_eq!(single.witnesses, vec![2]);
        assert!(triangular_ordering(&[]).is_none());
    }

    #[test]
    fn fundamental_basis_patterns() {
        let q = fixtures::binary_5_3();
        let p = fundamental_basis_pattern(&q, set![1, 2, 3]).unwrap();
        assert_eq!(p.facets(), &[set![1, 2, 4], set![2, 3, 5]]);
        assert_eq!(lift(&q, &p).unwrap().lifted, q);
        assert!(matches!(
            fundamental_basis_pattern(&q, set![1, 2, 4]),
            Err(Error::NotABasis(_))
        ));

        let (q1, _) = fixtures::mds_pair();
        let p = fundamental_basis_pattern(&q1, set![2, 4, 5]).unwrap();
        let expect: Vec<GroundSubset> = [1, 3, 6]
            .iter()
            .map(|&e| set![2, 4, 5].with(e))
            .sorted()
            .collect();
        assert_eq!(p.facets(), expect.as_slice());
        let r = is_t_equivalent(&q1, &p).unwrap();
        assert!(r.is_equivalent);
        assert_ne!(r.method, Method::Direct);
    }

    #[test]
    fn compromised_coordinates() {
        let q1 = fixtures::mds_pair().0;
        assert!(check_compromised(&q1, 1).unwrap().is_equivalent);
        assert_eq!(
            CollusionPattern::compromised(&q1, 1)
                .unwrap()
                .facets()
                .len(),
            10
        );
        assert!(
            check_compromised(&fixtures::binary_5_3(), 2)
                .unwrap()
                .is_equivalent
        );

        let split = LinearCode::new(3, 4, &[vec![1, 1, 0, 0], vec![0, 0, 1, 1]]).unwrap();
        assert_eq!(
            check_compromised(&split, 1).unwrap_err(),
            Error::DisconnectedMatroid
        );
    }

    #[test]
    fn standing_assumption_checks() {
        let (q1, _) = fixtures::mds_pair();
        assert!(standing_assumptions(&q1, &fixtures::mds_pair_pattern()).all_hold());

        let q = fixtures::binary_5_3();
        let split = CollusionPattern::new(5, [set![1, 2], set![4, 5]]).unwrap();
        let r = standing_assumptions(&q, &split);
        assert!(!r.connected);
        assert_eq!(r.isolated, vec![3]);
        assert!(r.facet_bound());

        let r = standing_assumptions(&q, &CollusionPattern::t_collusion(5, 5).unwrap());
        assert!(!r.facet_bound());
        assert!(r.connected && r.no_isolated());
    }

    #[test]
    fn distinguishing_code_has_single_circuit() {
        let f = PrimeField::new(5).unwrap();
        let q = distinguishing_code(f, 6, set![2, 3, 5]).unwrap();
        assert_eq!(crate::matroid::circuits(&q).unwrap(), vec![set![2, 3, 5]]);
        let loop_code = distinguishing_code(f, 3, set![2]).unwrap();
        assert_eq!(crate::matroid::circuits(&loop_code).unwrap(), vec![set![2]]);
    }

    #[test]
    fn disconnected_pattern_strictly_enlarges() {
        let q = fixtures::rs_7_3();
        let tau = CollusionPattern::new(7, [set![1, 2, 3, 4], set![5, 6, 7]]).unwrap();
        assert!(!tau.is_connected().unwrap());
        let lifted = lift(&q, &tau).unwrap().lifted;
        assert!(q.is_subcode_of(&lifted).unwrap());
        assert!(lifted.dim() > q.dim());
    }

    fn arb_family() -> impl Strategy<Value = Vec<GroundSubset>> {
        prop::collection::vec((1u64..(1 << 7)).prop_map(GroundSubset::from_bits), 1..=7)
    }

    fn random_rep(p: u64, n: usize, k: usize, seed: u64) -> LinearCode {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        loop {
            let rows: Vec<Vec<i64>> = (0..k)
                .map(|_| (0..n).map(|_| rng.gen_range(0..p as i64)).collect())
                .collect();
            let q = LinearCode::new(p, n, &rows).unwrap();
            if q.dim() == k {
                return q;
            }
        }
    }

    fn random_mds_rep(p: u64, n: usize, k: usize, seed: u64) -> LinearCode {
        (seed..)
            .map(|s| random_rep(p, n, k, s))
            .find(|q| q.is_mds().unwrap())
            .unwrap()
    }

    /// Every triangular family of `n - k` circuits gives back the code.
    fn triangular_families_are_sound(q: &LinearCode) {
        let cs = crate::matroid::circuits(q).unwrap();
        for family in cs.iter().copied().combinations(q.len() - q.dim()) {
            if triangular_ordering(&family).is_some() {
                let tau = CollusionPattern::new(q.max_label(), family).unwrap();
                assert_eq!(&lift(q, &tau).unwrap().lifted, q);
            }
        }
    }

    #[test]
    fn triangular_soundness_across_representations() {
        let binary_circuits = crate::matroid::circuits(&fixtures::binary_5_3()).unwrap();
        for p in [2i64, 3, 5, 7] {
            for a in 1..p {
                for b in 1..p {
                    let q = LinearCode::new(
                        p as u64,
                        5,
                        &[
                            vec![1, 0, 0, 1, 0],
                            vec![0, 1, 0, a, 1],
                            vec![0, 0, 1, 0, b],
                        ],
                    )
                    .unwrap();
                    assert_eq!(crate::matroid::circuits(&q).unwrap(), binary_circuits);
                    triangular_families_are_sound(&q);
                }
            }
        }
        for seed in 0..8 {
            triangular_families_are_sound(&random_mds_rep(7, 6, 3, seed * 1000));
        }
        triangular_families_are_sound(&fixtures::mds_pair().1);
    }

    proptest! {
        #[test]
        fn greedy_matches_exhaustive_search(family in arb_family()) {
            let greedy = triangular_ordering(&family);
            prop_assert_eq!(greedy.is_some(), triangular_by_search(&family));
            if let Some(c) = greedy {
                prop_assert!(c.is_valid());
            }
        }

        #[test]
        fn private_elements_give_independent_circuit_vectors(seed in any::<u64>(), pick in any::<u64>()) {
            let q = random_rep(3, 6, 3, seed);
            let d = DerivedRep::new(&q).unwrap();
            let chosen: Vec<GroundSubset> = d
                .ground()
                .iter()
                .enumerate()
                .filter(|&(i, _)| pick >> (i % 64) & 1 == 1)
                .map(|(_, &c)| c)
                .take(5)
                .collect();
            prop_assume!(!chosen.is_empty());
            if has_private_elements(&chosen) {
                prop_assert!(d.is_independent(&chosen).unwrap());
            }
        }

        #[test]
        fn triangular_families_of_full_size_force_equality(seed in any::<u64>(), pick in any::<u64>()) {
            let q = random_rep(5, 6, 3, seed);
            let circuits = crate::matroid::circuits(&q).unwrap();
            let family: Vec<GroundSubset> = circuits
                .iter()
                .enumerate()
                .filter(|&(i, _)| pick >> (i % 64) & 1 == 1)
                .map(|(_, &c)| c)
                .take(q.len() - q.dim())
                .collect();
            prop_assume!(family.len() == q.len() - q.dim());
            if triangular_ordering(&family).is_some() {
                let tau = CollusionPattern::new(6, family).unwrap();
                prop_assert_eq!(lift(&q, &tau).unwrap().lifted, q);
            }
        }

        #[test]
        fn disconnected_patterns_enlarge_connected_codes(
            seed in any::<u64>(),
            k in 1usize..3,
            split in 0usize..3,
        ) {
            let q = random_mds_rep(7, 7, k, seed);
            let split = k + 1 + split.min(4 - 2 * k);
            let lo = GroundSubset::full(split);
            let tau = CollusionPattern::new(7, [lo, GroundSubset::full(7).difference(lo)]).unwrap();
            prop_assert!(RepresentedMatroid::new(q.clone()).unwrap().is_connected());
            prop_assert!(!tau.is_connected().unwrap());
            let observed = observed_circuits(&q, &tau).unwrap();
            prop_assert!(tau.facets().iter().all(|f| observed.iter().any(|o| o.is_subset(*f))));
            let lifted = lift(&q, &tau).unwrap().lifted;
            prop_assert!(q.is_subcode_of(&lifted).unwrap());
            prop_assert!(lifted.dim() > q.dim());
        }

        #[test]
        fn distinct_patterns_are_told_apart(
            a in prop::collection::vec((1u64..(1 << 6)).prop_map(GroundSubset::from_bits), 0..4),
            b in prop::collection::vec((1u64..(1 << 6)).prop_map(GroundSubset::from_bits), 0..4),
        ) {
            let a = CollusionPattern::new(6, a).unwrap();
            let b = CollusionPattern::new(6, b).unwrap();
            prop_assume!(a != b);
            let s = distinguishing_set(&a, &b).unwrap();
            let q = distinguishing_code(PrimeField::new(3).unwrap(), 6, s).unwrap();
            prop_assert_ne!(lift(&q, &a).unwrap().lifted, lift(&q, &b).unwrap().lifted);
        }
    }
}
