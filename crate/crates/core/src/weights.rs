//! Membership and enumeration for the weight system M(lambda) = (lambda +
//! Xi) ∩ P(lambda), plus an independent convex-hull oracle used to
//! cross-validate the membership criterion.
//!
//! The membership test is the dominance criterion: mu belongs to M(lambda)
//! iff the dominant representative of mu sits below lambda with nonnegative
//! *integer* coefficients over the simple roots. Because the simple roots are
//! a basis of the root lattice, integrality of those coefficients is exactly
//! the lattice condition, so one solve decides both halves of the
//! definition. The hull oracle instead takes the definition literally
//! (exact LP over the Weyl orbit polytope plus a lattice test) and shares no
//! code path with the criterion.

use crate::error::{Error, Result};
use crate::linalg::ExactVector;
use crate::lp::{cone_member, ConeOutcome};
use crate::rat::Rat;
use crate::roots::{Realization, Weight, DEFAULT_ORBIT_CAP};
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::{HashSet, VecDeque};

pub const DEFAULT_ENUMERATION_CAP: usize = 100_000;

/// Proof record returned by [`member`]: enough data to replay the decision.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MembershipProof {
    pub is_member: bool,
    /// The queried weight in ambient coordinates.
    pub mu: ExactVector,
    /// Dominant representative of `mu` and a reflection word mapping `mu` to
    /// it (simple-reflection indices, applied left to right).
    pub mu_dominant: ExactVector,
    pub word: Vec<usize>,
    /// The (dominant-reduced) highest weight used for the test.
    pub lambda_dominant: ExactVector,
    /// Nonnegative integer coefficients of `lambda - dominant(mu)` over the
    /// simple roots, present iff `is_member`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dominance_coefficients: Option<Vec<String>>,
}

/// Decides `mu ∈ M(lambda)`. A non-dominant `lambda` is first reduced to the
/// dominant element of its orbit.
pub fn member(rs: &Realization, lambda: &Weight, mu: &Weight) -> Result<MembershipProof> {
    rs.check_weight(lambda)?;
    rs.check_weight(mu)?;
    let (lambda_dom, _) = rs.dominant_rep(&lambda.coords);
    let (mu_dom, word) = rs.dominant_rep(&mu.coords);
    let coeffs = rs.dominance_leq(&mu_dom, &lambda_dom);
    Ok(MembershipProof {
        is_member: coeffs.is_some(),
        mu: mu.coords.clone(),
        mu_dominant: mu_dom,
        word,
        lambda_dominant: lambda_dom,
        dominance_coefficients: coeffs.map(|c| c.iter().map(|z| z.to_string()).collect()),
    })
}

/// A materialized weight system.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeightSystem {
    pub system: crate::roots::RootSystemId,
    pub highest_weight: ExactVector,
    /// All members, sorted lexicographically.
    pub members: Vec<ExactVector>,
}

impl WeightSystem {
    pub fn contains(&self, v: &ExactVector) -> bool {
        self.members.binary_search(v).is_ok()
    }

    /// Members without the zero weight (the saturation side never needs it).
    pub fn nonzero_members(&self) -> Vec<ExactVector> {
        self.members.iter().filter(|m| !m.is_zero()).cloned().collect()
    }
}

/// Materializes M(lambda) for dominant-reduced `lambda`.
///
/// Strategy: breadth-first walk of the dominant weights below lambda
/// (subtracting positive roots, which by the cover property of the dominance
/// order reaches all of them), then the union of their Weyl orbits.
pub fn enumerate(rs: &Realization, lambda: &Weight, cap: usize) -> Result<WeightSystem> {
    rs.check_weight(lambda)?;
    let (lambda_dom, _) = rs.dominant_rep(&lambda.coords);
    let mut dominants: HashSet<ExactVector> = HashSet::new();
    let mut queue: VecDeque<ExactVector> = VecDeque::new();
    dominants.insert(lambda_dom.clone());
    queue.push_back(lambda_dom.clone());
    while let Some(cur) = queue.pop_front() {
        for alpha in rs.positive_roots() {
            let cand = &cur - alpha;
            if rs.is_dominant(&cand) && !dominants.contains(&cand) {
                // Every dominant weight found here is a member, so the cap
                // applies already in this phase.
                if dominants.len() >= cap {
                    return Err(Error::EnumerationCapExceeded {
                        cap,
                        reached: dominants.len() + 1,
                    });
                }
                // Still below lambda by construction (we only ever subtract
                // positive roots), but the lattice/integrality check is free:
                debug_assert!(rs.dominance_leq(&cand, &lambda_dom).is_some());
                dominants.insert(cand.clone());
                queue.push_back(cand);
            }
        }
    }
    let mut members: HashSet<ExactVector> = HashSet::new();
    for d in &dominants {
        // Never materialize more than the remaining budget allows.
        let budget = cap.saturating_sub(members.len()) + 1;
        let orbit = rs
            .weyl_orbit(d, budget.min(DEFAULT_ORBIT_CAP))
            .map_err(|e| match e {
                Error::OrbitCapExceeded { reached, .. } => Error::EnumerationCapExceeded {
                    cap,
                    reached: members.len() + reached,
                },
                other => other,
            })?;
        for w in orbit {
            members.insert(w);
            if members.len() > cap {
                return Err(Error::EnumerationCapExceeded {
                    cap,
                    reached: members.len(),
                });
            }
        }
    }
    let mut members: Vec<ExactVector> = members.into_iter().collect();
    members.sort();
    Ok(WeightSystem {
        system: rs.id,
        highest_weight: lambda_dom,
        members,
    })
}

/// Literal test of `mu ∈ (lambda + Xi) ∩ conv(W lambda)`, used only to
/// validate [`member`]. The polytope part is an exact rational feasibility
/// problem over the orbit vertices with a Farkas certificate either way.
pub fn hull_member_oracle(
    rs: &Realization,
    lambda: &Weight,
    mu: &Weight,
    orbit_cap: usize,
) -> Result<bool> {
    rs.check_weight(lambda)?;
    rs.check_weight(mu)?;
    if !rs.same_xi_coset(&lambda.coords, &mu.coords) {
        return Ok(false);
    }
    let vertices = rs.weyl_orbit(&lambda.coords, orbit_cap)?;
    // Homogenize: mu in conv(V) iff (mu, 1) in cone{(v, 1)}.
    let one = Rat::one();
    let lift = |v: &ExactVector| {
        let mut e: Vec<Rat> = v.iter().cloned().collect();
        e.push(one.clone());
        ExactVector::new(e)
    };
    let gens: Vec<ExactVector> = vertices.iter().map(&lift).collect();
    let target = lift(&mu.coords);
    match cone_member(&gens, &target) {
        ConeOutcome::Member(q) => {
            debug_assert!(crate::lp::verify_combination(&gens, &q, &target));
            Ok(true)
        }
        ConeOutcome::Separated(f) => {
            debug_assert!(crate::lp::verify_separation(&gens, &target, &f));
            Ok(false)
        }
    }
}

/// Zero weight of a realization.
pub fn zero_weight(rs: &Realization) -> Weight {
    rs.weight(ExactVector::zeros(rs.ambient_dim))
        .expect("zero is always a weight")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::Int;
    use crate::roots::build_named;

    fn ev(parts: &[i64]) -> ExactVector {
        ExactVector::from_ints(parts)
    }

    #[test]
    fn member_reflexive() {
        let g2 = build_named("G2").unwrap();
        let lam = g2.weight_from_fw_coords(&[2, 1]).unwrap();
        let p = member(&g2, &lam, &lam).unwrap();
        assert!(p.is_member);
        assert_eq!(
            p.dominance_coefficients.as_deref(),
            Some(&["0".to_string(), "0".to_string()][..])
        );
    }

    #[test]
    fn member_paper_g2_case() {
        let g2 = build_named("G2").unwrap();
        let pi1 = g2.weight_from_fw_coords(&[1, 0]).unwrap();
        let mu = g2.weight(ev(&[1, -1, 0])).unwrap();
        assert!(member(&g2, &pi1, &mu).unwrap().is_member);
        // The long root is not a weight of the 7-dimensional module.
        let pi2 = g2.weight_from_fw_coords(&[0, 1]).unwrap();
        assert!(!member(&g2, &pi1, &pi2).unwrap().is_member);
    }

    #[test]
    fn member_paper_e8_case() {
        let e8 = build_named("E8").unwrap();
        let lam = e8.weight(ev(&[2, 0, 0, 0, 0, 0, 0, 0])).unwrap();
        let mu = e8.weight(ev(&[1, 1, 0, 0, 0, 0, 0, 0])).unwrap();
        assert!(member(&e8, &lam, &mu).unwrap().is_member);
    }

    #[test]
    fn member_rejects_non_lattice_mu() {
        let g2 = build_named("G2").unwrap();
        assert!(g2.weight(ev(&[1, 0, 0])).is_err());
    }

    #[test]
    fn enumerate_zero() {
        let g2 = build_named("G2").unwrap();
        let zero = zero_weight(&g2);
        let m = enumerate(&g2, &zero, 10).unwrap();
        assert_eq!(m.members.len(), 1);
        assert!(m.members[0].is_zero());
    }

    #[test]
    fn enumerate_g2_pi1() {
        let g2 = build_named("G2").unwrap();
        let pi1 = g2.weight_from_fw_coords(&[1, 0]).unwrap();
        let m = enumerate(&g2, &pi1, 100).unwrap();
        assert_eq!(m.members.len(), 7);
        // The nonzero part is exactly the six short roots.
        let expect: Vec<ExactVector> = vec![
            ev(&[0, 1, -1]),
            ev(&[0, -1, 1]),
            ev(&[1, 0, -1]),
            ev(&[-1, 0, 1]),
            ev(&[1, -1, 0]),
            ev(&[-1, 1, 0]),
        ];
        for e in &expect {
            assert!(m.contains(e));
        }
        assert!(m.contains(&ExactVector::zeros(3)));
    }

    #[test]
    fn enumerate_f4_pi1() {
        let f4 = build_named("F4").unwrap();
        let pi1 = f4.weight_from_fw_coords(&[1, 0, 0, 0]).unwrap();
        let m = enumerate(&f4, &pi1, 1000).unwrap();
        assert_eq!(m.members.len(), 25);
        assert_eq!(m.nonzero_members().len(), 24);
    }

    #[test]
    fn enumerate_respects_cap() {
        let f4 = build_named("F4").unwrap();
        let pi1 = f4.weight_from_fw_coords(&[1, 0, 0, 0]).unwrap();
        assert!(matches!(
            enumerate(&f4, &pi1, 10),
            Err(Error::EnumerationCapExceeded { .. })
        ));
    }

    #[test]
    fn hull_oracle_paper_cases() {
        let g2 = build_named("G2").unwrap();
        let pi2 = g2.weight_from_fw_coords(&[0, 1]).unwrap();
        // A vertex of its own hull.
        assert!(hull_member_oracle(&g2, &pi2, &pi2, 100).unwrap());
        // v0 = (-1, 0, 1) is a short root inside P(pi2).
        let v0 = g2.weight(ev(&[-1, 0, 1])).unwrap();
        assert!(hull_member_oracle(&g2, &pi2, &v0, 100).unwrap());
        // The long root lies outside the short-root hexagon.
        let pi1 = g2.weight_from_fw_coords(&[1, 0]).unwrap();
        assert!(!hull_member_oracle(&g2, &pi1, &pi2, 100).unwrap());
    }

    #[test]
    fn member_agrees_with_enumerate_on_g2_box() {
        let g2 = build_named("G2").unwrap();
        for lam_coords in [[1, 0], [0, 1], [1, 1]] {
            let lam = g2.weight_from_fw_coords(&lam_coords).unwrap();
            let ws = enumerate(&g2, &lam, 10_000).unwrap();
            let alpha1 = g2.simple_roots()[0].clone();
            let alpha2 = g2.simple_roots()[1].clone();
            for c1 in -4i64..=4 {
                for c2 in -4i64..=4 {
                    let v = alpha1
                        .scale(&Rat::from_integer(Int::from(c1)))
                        .add_scaled(&Rat::from_integer(Int::from(c2)), &alpha2);
                    let mu = g2.weight(v.clone()).unwrap();
                    let got = member(&g2, &lam, &mu).unwrap().is_member;
                    assert_eq!(got, ws.contains(&v), "mismatch at {v} for {lam_coords:?}");
                }
            }
        }
    }

    #[test]
    fn monotone_in_dominance() {
        // lambda >= lambda' implies M(lambda) ⊇ M(lambda').
        let f4 = build_named("F4").unwrap();
        let pairs = [([1, 0, 0, 1], [0, 0, 0, 1]), ([2, 0, 0, 0], [1, 0, 0, 0])];
        for (big, small) in pairs {
            let lam_big = f4.weight_from_fw_coords(&big).unwrap();
            let lam_small = f4.weight_from_fw_coords(&small).unwrap();
            if f4.dominance_leq(&lam_small.coords, &lam_big.coords).is_none() {
                continue;
            }
            let m_small = enumerate(&f4, &lam_small, 100_000).unwrap();
            for v in &m_small.members {
                let mu = f4.weight(v.clone()).unwrap();
                assert!(member(&f4, &lam_big, &mu).unwrap().is_member);
            }
        }
    }

    #[test]
    fn enumerate_is_weyl_stable() {
        let g2 = build_named("G2").unwrap();
        let lam = g2.weight_from_fw_coords(&[1, 1]).unwrap();
        let ws = enumerate(&g2, &lam, 10_000).unwrap();
        for i in 0..g2.rank() {
            for v in &ws.members {
                let img = crate::roots::reflect(&g2.simple_roots()[i], v).unwrap();
                assert!(ws.contains(&img));
            }
        }
    }
}
