//! The lift `Q^T`: the largest code agreeing with `Q` on every colluding set.
//!
//! [`lift`] builds it from the observed circuit vectors (circuits of `M(Q)`
//! lying inside a facet): their span is the dual of the lift. [`lift_oracle`]
//! enumerates `F_p^n` and applies the definition directly, for cross-checks
//! on small instances.

use num_rational::Ratio;

use crate::code::LinearCode;
use crate::derived::circuit_vector;
use crate::error::{Error, Result};
use crate::field::{Echelon, FieldMatrix};
use crate::matroid::circuits;
use crate::pattern::CollusionPattern;
use crate::subset::GroundSubset;

/// Largest `p^n` the brute-force oracle will enumerate.
pub const ORACLE_LIMIT: u64 = 1 << 21;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftResult {
    pub lifted: LinearCode,
    pub base: LinearCode,
    pub observed: Vec<GroundSubset>,
    /// `(dim Q^T - dim Q) / n`.
    pub secrecy_rate: Ratio<usize>,
}

impl LiftResult {
    fn new(base: &LinearCode, lifted: LinearCode, observed: Vec<GroundSubset>) -> Self {
        let secrecy_rate = Ratio::new(lifted.dim() - base.dim(), base.len().max(1));
        Self {
            lifted,
            base: base.clone(),
            observed,
            secrecy_rate,
        }
    }

    /// Whether the lift gained nothing over the base code.
    pub fn is_trivial(&self) -> bool {
        self.lifted == self.base
    }
}

fn check_pattern(q: &LinearCode, tau: &CollusionPattern) -> Result<()> {
    if tau.n() != q.max_label() {
        return Err(Error::LengthMismatch {
            expected: q.max_label(),
            found: tau.n(),
        });
    }
    if let Some(e) = tau.vertices().difference(q.ground()).min() {
        return Err(Error::ElementOutOfRange(e));
    }
    Ok(())
}

/// Circuits of `M(q)` that are colluding sets of `tau`.
pub fn observed_circuits(q: &LinearCode, tau: &CollusionPattern) -> Result<Vec<GroundSubset>> {
    check_pattern(q, tau)?;
    Ok(circuits(q)?
        .into_iter()
        .filter(|&c| tau.contains(c))
        .collect())
}

/// Whether some codeword of `q` agrees with `x` on `t`.
pub fn projection_agrees(q: &LinearCode, x: &[u32], t: GroundSubset) -> Result<bool> {
    if x.len() != q.len() {
        return Err(Error::LengthMismatch {
            expected: q.len(),
            found: x.len(),
        });
    }
    if t.is_empty() {
        return Ok(true);
    }
    let restricted = q.generator().select_columns(&t.to_vec())?;
    let xt: Vec<u32> = q.positions(t)?.into_iter().map(|i| x[i]).collect();
    restricted.in_row_space(&xt)
}

/// Dual vectors supported inside `t`: the kernel of the generator's
/// columns on `t`, padded with zeros.
fn supported_dual(q: &LinearCode, t: GroundSubset) -> Result<Vec<Vec<u32>>> {
    let labels = t.to_vec();
    let pos = q.positions(t)?;
    let kernel = q.generator().select_columns(&labels)?.kernel_basis();
    Ok(kernel
        .rows()
        .map(|r| {
            let mut v = vec![0u32; q.len()];
            for (&i, &x) in pos.iter().zip(r) {
                v[i] = x;
            }
            v
        })
        .collect())
}

/// The lift of `q` over `tau`, built from the observed circuit vectors.
///
/// The span of the observed circuit vectors is compared against the span of
/// all dual vectors supported inside a facet; a disagreement is reported as
/// an invariant violation.
pub fn lift(q: &LinearCode, tau: &CollusionPattern) -> Result<LiftResult> {
    let observed = observed_circuits(q, tau)?;
    let checks = observed
        .iter()
        .map(|&c| circuit_vector(q, c).map(|cv| cv.vector))
        .collect::<Result<Vec<_>>>()?;
    let h = FieldMatrix::from_rows(q.field(), q.labels().to_vec(), checks)?;
    let h_rank = h.rank();

    let mut facet_span = Echelon::new(q.field(), q.len());
    for &facet in tau.facets() {
        for v in supported_dual(q, facet)? {
            facet_span.insert(&v);
        }
    }
    if facet_span.rank() != h_rank {
        return Err(Error::InvariantViolation(format!(
            "observed circuit vectors span rank {h_rank}, facet-supported dual vectors span rank {}",
            facet_span.rank()
        )));
    }

    let lifted = LinearCode::from_matrix(&h.kernel_basis());
    Ok(LiftResult::new(q, lifted, observed))
}

/// Brute-force lift: every `x ∈ F_p^n` that agrees with some codeword on
/// each facet.
pub fn lift_oracle(q: &LinearCode, tau: &CollusionPattern) -> Result<LiftResult> {
    check_pattern(q, tau)?;
    let f = q.field();
    let p = f.modulus() as u64;
    let n = q.len();
    let space = (n as u32)
        .checked_mul(64 - (p - 1).leading_zeros())
        .filter(|&bits| bits < 64)
        .map(|_| p.pow(n as u32));
    match space {
        Some(s) if s <= ORACLE_LIMIT => {}
        _ => {
            return Err(Error::GuardExceeded {
                guard: "oracle enumeration",
                limit: ORACLE_LIMIT,
                actual: space.unwrap_or(u64::MAX),
            })
        }
    }

    // one echelon per facet over the restricted generator
    let testers: Vec<(Vec<usize>, Echelon)> = tau
        .facets()
        .iter()
        .map(|&t| {
            let pos = q.positions(t)?;
            let restricted = q.generator().select_columns(&t.to_vec())?;
            let mut ech = Echelon::new(f, pos.len());
            for r in restricted.rows() {
                ech.insert(r);
            }
            Ok((pos, ech))
        })
        .collect::<Result<_>>()?;
    let mut buffers: Vec<Vec<u32>> = testers.iter().map(|(pos, _)| vec![0; pos.len()]).collect();

    let mut basis = Echelon::new(f, n);
    let mut passing = 0u64;
    let mut x = vec![0u32; n];
    loop {
        let agrees = testers
            .iter()
            .zip(buffers.iter_mut())
            .all(|((pos, ech), buf)| {
                for (b, &i) in buf.iter_mut().zip(pos) {
                    *b = x[i];
                }
                ech.reduce(buf);
                buf.iter().all(|&v| v == 0)
            });
        if agrees {
            passing += 1;
            basis.insert(&x);
            if basis.rank() == n {
                break;
            }
        }
        if !increment(&mut x, f.modulus()) {
            if passing != p.pow(basis.rank() as u32) {
                return Err(Error::InvariantViolation(format!(
                    "{passing} agreeing vectors do not form a space of dimension {}",
                    basis.rank()
                )));
            }
            break;
        }
    }

    let lifted = LinearCode::from_rows(f, q.labels().to_vec(), basis.into_sorted_rows())?;
    let observed = circuits(q)?
        .into_iter()
        .filter(|&c| tau.contains(c))
        .collect();
    Ok(LiftResult::new(q, lifted, observed))
}

/// Odometer step over `F_p^n`; false once it wraps around.
fn increment(x: &mut [u32], p: u32) -> bool {
    for d in x.iter_mut() {
        *d += 1;
        if *d < p {
            return true;
        }
        *d = 0;
    }
    false
}

/// Which lift identities hold for a pair of patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    /// `Q^(a ∪ b) = Q^a ∩ Q^b`.
    pub union: bool,
    /// `Q^(a ∩ b) = (Q^a)^b`. This can fail: a combination of dual vectors
    /// supported on `a` may be supported on a set of `b` outside `a ∩ b`.
    pub intersection: bool,
    /// `(Q^a)^b ⊆ Q^(a ∩ b)`, which always holds.
    pub intersection_contained: bool,
    /// For each of `a`, `b`: the lift splits as the product of the lifts of
    /// the restrictions to its components, times the full space on the
    /// uncovered coordinates.
    pub product: bool,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.union && self.intersection && self.intersection_contained && self.product
    }
}

pub fn lift_identities_check(
    q: &LinearCode,
    a: &CollusionPattern,
    b: &CollusionPattern,
) -> Result<IdentityReport> {
    let lift_a = lift(q, a)?.lifted;
    let lift_b = lift(q, b)?.lifted;
    let union = lift(q, &a.union(b)?)?.lifted == lift_a.intersection(&lift_b)?;
    let meet = lift(q, &a.intersection(b)?)?.lifted;
    let nested = lift(&lift_a, b)?.lifted;
    let product =
        product_decomposition_holds(q, a, &lift_a)? && product_decomposition_holds(q, b, &lift_b)?;
    Ok(IdentityReport {
        union,
        intersection: meet == nested,
        intersection_contained: nested.is_subcode_of(&meet)?,
        product,
    })
}

/// Lift over `tau` assembled component by component.
pub fn lift_by_components(q: &LinearCode, tau: &CollusionPattern) -> Result<LinearCode> {
    check_pattern(q, tau)?;
    let components = tau.components();
    if components.is_empty() {
        return LinearCode::full_on(q.field(), q.labels().to_vec());
    }
    let parts = components
        .iter()
        .map(|comp| {
            let v = comp.vertices();
            let local = q.restrict(v)?;
            let local_tau = CollusionPattern::new(local.max_label(), comp.facets().to_vec())?;
            Ok(lift(&local, &local_tau)?.lifted)
        })
        .collect::<Result<Vec<_>>>()?;
    LinearCode::direct_sum(&parts, q.ground().difference(tau.vertices()))
}

fn product_decomposition_holds(
    q: &LinearCode,
    tau: &CollusionPattern,
    lifted: &LinearCode,
) -> Result<bool> {
    Ok(&lift_by_components(q, tau)? == lifted)
}
