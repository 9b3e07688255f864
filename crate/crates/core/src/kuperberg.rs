//! The Heegaard-code state sum.
//!
//! For a genus-g code with isolated-circle counts c (upper) and d (lower),
//! the invariant is
//!
//! ```text
//! δ^(−2g+2c) · Π_t  h^t( Π_p T φ^{i(t,p)}_{j(t,p)} )
//! ```
//!
//! one Sweedler copy Δ_k(φ) per nonempty upper circle, legs routed to
//! crossings in upper order, the antipode applied at negative crossings, and
//! each lower circle multiplying its routed legs in the dual algebra (in
//! lower order) before evaluating against h. Isolated lower circles give
//! ε(h) = δ², isolated upper circles the δ^(2c) up front.
//!
//! The Sweedler sums are never expanded: the evaluator keeps a pool of
//! sparse tensors, one per partially consumed upper circle, and streams over
//! lower circles, so memory peaks at the largest single upper-circle tensor
//! rather than at H^(⊗k).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::groups::GroupTable;
use crate::heegaard::{CodeSummary, CrossingId, HeegaardCode};
use crate::hopf::HopfAlgebra;
use crate::scalars::{project_to_base, BaseScalar, DeltaScalar};
use crate::tensor::SparseTensor;

/// The invariant value together with the pieces it was assembled from.
#[derive(Clone, Debug)]
pub struct InvariantResult {
    pub value: BaseScalar,
    pub summary: CodeSummary,
    /// One factor per lower circle: the scalar that became available once
    /// that circle was evaluated against its copy of h (1 when the circle's
    /// connected component of the diagram was not yet complete).
    pub circle_factors: Vec<DeltaScalar>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum LegKey {
    Crossing(CrossingId),
    Accumulator,
}

struct Part {
    tensor: SparseTensor,
    legs: Vec<LegKey>,
}

impl Part {
    fn leg_of(&self, key: LegKey) -> usize {
        self.legs
            .iter()
            .position(|&k| k == key)
            .expect("leg tracked in pool")
    }
}

/// Computes the state sum of a Heegaard code over a validated Hopf algebra.
pub fn invariant(code: &HeegaardCode, algebra: &HopfAlgebra) -> Result<InvariantResult> {
    let summary = code.validate()?;
    let dual = algebra.dual();
    let comult = algebra.comult_tensor();

    // One independent Sweedler copy of φ per nonempty upper circle, with the
    // antipode folded into the legs at negative crossings.
    let mut parts: Vec<Option<Part>> = Vec::new();
    let mut slot_of: BTreeMap<CrossingId, usize> = BTreeMap::new();
    for circle in code.upper.iter().filter(|c| !c.is_empty()) {
        let mut tensor = dual.sweedler_tensor(dual.integral_tensor(), circle.len())?;
        for (j, &q) in circle.iter().enumerate() {
            if code.sign(q)? < 0 {
                tensor = dual.antipode_on_leg(&tensor, j)?;
            }
        }
        let slot = parts.len();
        for &q in circle {
            slot_of.insert(q, slot);
        }
        parts.push(Some(Part {
            tensor,
            legs: circle.iter().map(|&q| LegKey::Crossing(q)).collect(),
        }));
    }

    let one = DeltaScalar::one(algebra.ring(), algebra.modulus());
    let mut circle_factors = Vec::with_capacity(code.genus);
    for circle in &code.lower {
        // The running product in the dual algebra starts at its unit, ε.
        let mut acc_slot = parts.len();
        parts.push(Some(Part {
            tensor: algebra.counit_tensor().clone(),
            legs: vec![LegKey::Accumulator],
        }));

        for &q in circle {
            let q_slot = slot_of[&q];
            let next = if q_slot == acc_slot {
                let part = parts[q_slot].take().expect("slot live");
                multiply_shared_leg(&part, q, comult)?
            } else {
                let crossing_part = parts[q_slot].take().expect("slot live");
                let acc_part = parts[acc_slot].take().expect("slot live");
                multiply_entangled_leg(&crossing_part, q, &acc_part, comult)?
            };
            acc_slot = parts.len();
            for key in &next.legs {
                if let LegKey::Crossing(other) = *key {
                    slot_of.insert(other, acc_slot);
                }
            }
            parts.push(Some(next));
        }

        // Evaluate the circle's product against its copy of h.
        let part = parts[acc_slot].take().expect("slot live");
        let beta = part.leg_of(LegKey::Accumulator);
        let evaluated = part.tensor.contract(algebra.integral_tensor(), &[(beta, 0)])?;
        let mut legs = part.legs;
        legs.remove(beta);
        if legs.is_empty() {
            circle_factors.push(evaluated.as_scalar()?);
        } else {
            circle_factors.push(one.clone());
            let slot = parts.len();
            for key in &legs {
                if let LegKey::Crossing(other) = *key {
                    slot_of.insert(other, slot);
                }
            }
            parts.push(Some(Part {
                tensor: evaluated,
                legs,
            }));
        }
    }

    if parts.iter().any(|p| p.is_some()) {
        return Err(Error::Math(
            "internal: state-sum pool not fully consumed".into(),
        ));
    }

    let exponent = -2 * (summary.genus as i64) + 2 * (summary.isolated_upper as i64);
    let mut total = algebra.delta_power(exponent)?;
    for factor in &circle_factors {
        total = total.mul(factor);
    }
    Ok(InvariantResult {
        value: project_to_base(&total)?,
        summary,
        circle_factors,
    })
}

/// acc · ψ where ψ sits on leg q of `crossing_part` and acc is a separate
/// pool tensor: contract ψ against the right factor of the comultiplication,
/// then the accumulator against the left factor. The product index becomes
/// the new accumulator leg.
fn multiply_entangled_leg(
    crossing_part: &Part,
    q: CrossingId,
    acc_part: &Part,
    comult: &SparseTensor,
) -> Result<Part> {
    let alpha = crossing_part.leg_of(LegKey::Crossing(q));
    let beta = acc_part.leg_of(LegKey::Accumulator);
    let m = crossing_part.legs.len() - 1;
    let r1 = crossing_part.tensor.contract(comult, &[(alpha, 2)])?;
    let tensor = r1.contract(&acc_part.tensor, &[(m + 1, beta)])?;
    let mut legs: Vec<LegKey> = crossing_part
        .legs
        .iter()
        .copied()
        .filter(|&k| k != LegKey::Crossing(q))
        .collect();
    legs.push(LegKey::Accumulator);
    legs.extend(
        acc_part
            .legs
            .iter()
            .copied()
            .filter(|&k| k != LegKey::Accumulator),
    );
    Ok(Part { tensor, legs })
}

/// acc · ψ when both already live on the same pool tensor.
fn multiply_shared_leg(part: &Part, q: CrossingId, comult: &SparseTensor) -> Result<Part> {
    let alpha = part.leg_of(LegKey::Crossing(q));
    let beta = part.leg_of(LegKey::Accumulator);
    let tensor = part.tensor.contract(comult, &[(beta, 1), (alpha, 2)])?;
    let mut legs: Vec<LegKey> = part
        .legs
        .iter()
        .copied()
        .filter(|&k| k != LegKey::Crossing(q) && k != LegKey::Accumulator)
        .collect();
    legs.push(LegKey::Accumulator);
    Ok(Part { tensor, legs })
}

/// Independent oracle for group algebras: the invariant of ℚ[G] counts
/// homomorphisms from the fundamental group into G at this normalization.
pub fn invariant_oracle_group(code: &HeegaardCode, table: &GroupTable) -> Result<u64> {
    code.present_group()?.count_homs(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heegaard::{builtin_code, Layer};
    use crate::hopf::{builtin_hopf, DeltaSign, HopfData};
    use crate::scalars::BaseRing;
    use crate::tensor::with_entry_cap;

    fn q_algebra(name: &str) -> HopfAlgebra {
        builtin_hopf(name, BaseRing::Q).unwrap()
    }

    fn eval(code_name: &str, hopf_name: &str) -> BaseScalar {
        invariant(&builtin_code(code_name).unwrap(), &q_algebra(hopf_name))
            .unwrap()
            .value
    }

    #[test]
    fn named_values_match_hand_computations() {
        assert_eq!(eval("s3_genus1", "ZmodGroupAlgebra(5)"), BaseScalar::from_u64(1, BaseRing::Q));
        assert_eq!(eval("s2xs1", "S3GroupAlgebra"), BaseScalar::from_u64(6, BaseRing::Q));
        assert_eq!(eval("lens(3,1)", "ZmodGroupAlgebra(3)"), BaseScalar::from_u64(3, BaseRing::Q));
        assert_eq!(eval("lens(2,1)", "ZmodGroupAlgebra(2)"), BaseScalar::from_u64(2, BaseRing::Q));
        assert_eq!(eval("s3_genus0", "ZmodGroupAlgebra(4)"), BaseScalar::from_u64(1, BaseRing::Q));
        assert_eq!(
            eval("l31_connsum_s2xs1", "ZmodGroupAlgebra(3)"),
            BaseScalar::from_u64(9, BaseRing::Q)
        );
    }

    #[test]
    fn group_algebra_invariant_counts_homomorphisms() {
        let codes = ["s3_genus1", "s2xs1", "lens(2,1)", "lens(3,2)", "lens(4,3)", "l31_connsum_s2xs1"];
        let groups = [GroupTable::cyclic(2), GroupTable::cyclic(3), GroupTable::cyclic(4), GroupTable::s3()];
        for code_name in codes {
            let code = builtin_code(code_name).unwrap();
            for table in &groups {
                let algebra =
                    HopfAlgebra::new(HopfData::group_algebra(table, BaseRing::Q)).unwrap();
                let value = invariant(&code, &algebra).unwrap().value;
                let count = invariant_oracle_group(&code, table).unwrap();
                assert_eq!(
                    value,
                    BaseScalar::from_u64(count, BaseRing::Q),
                    "{code_name} over Q[{}]",
                    table.name()
                );
            }
        }
    }

    #[test]
    fn diagnostics_reassemble_the_value() {
        let code = builtin_code("l31_connsum_s2xs1").unwrap();
        let algebra = q_algebra("ZmodGroupAlgebra(3)");
        let result = invariant(&code, &algebra).unwrap();
        assert_eq!(result.circle_factors.len(), code.genus);
        let exponent = -2 * (result.summary.genus as i64)
            + 2 * (result.summary.isolated_upper as i64);
        let mut total = algebra.delta_power(exponent).unwrap();
        for f in &result.circle_factors {
            total = total.mul(f);
        }
        assert_eq!(project_to_base(&total).unwrap(), result.value);
        // The isolated lower circle shows up as an ε(h) = dim H factor.
        assert_eq!(
            result.circle_factors[1],
            DeltaScalar::from_i64(3, BaseRing::Q, 3)
        );
    }

    #[test]
    fn base_point_rotations_do_not_change_the_value() {
        let algebra = q_algebra("ZmodGroupAlgebra(4)");
        for name in ["lens(3,1)", "lens(5,2)", "l31_connsum_s2xs1"] {
            let code = builtin_code(name).unwrap();
            let reference = invariant(&code, &algebra).unwrap().value;
            for circle in 0..code.genus {
                for steps in 1..=2 {
                    for layer in [Layer::Lower, Layer::Upper] {
                        let moved = code.rotate_basepoint(layer, circle, steps).unwrap();
                        assert_eq!(invariant(&moved, &algebra).unwrap().value, reference, "{name}");
                    }
                }
            }
        }
    }

    #[test]
    fn orientation_reversals_do_not_change_the_value() {
        for hopf_name in ["ZmodGroupAlgebra(3)", "S3GroupAlgebra", "dual(S3GroupAlgebra)"] {
            let algebra = q_algebra(hopf_name);
            for name in ["lens(3,2)", "l31_connsum_s2xs1"] {
                let code = builtin_code(name).unwrap();
                let reference = invariant(&code, &algebra).unwrap().value;
                for circle in 0..code.genus {
                    for layer in [Layer::Lower, Layer::Upper] {
                        let flipped = code.reverse_circle(layer, circle).unwrap();
                        assert_eq!(
                            invariant(&flipped, &algebra).unwrap().value,
                            reference,
                            "{name} over {hopf_name}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn stabilization_does_not_change_the_value() {
        let algebra = q_algebra("S3GroupAlgebra");
        for name in ["s3_genus0", "s2xs1", "lens(4,1)"] {
            let code = builtin_code(name).unwrap();
            let reference = invariant(&code, &algebra).unwrap().value;
            let stabilized = code.stabilize();
            assert_eq!(invariant(&stabilized, &algebra).unwrap().value, reference);
            assert_eq!(
                invariant(&stabilized.stabilize(), &algebra).unwrap().value,
                reference
            );
        }
    }

    #[test]
    fn lens_value_is_independent_of_the_twist_parameter() {
        let algebra = q_algebra("ZmodGroupAlgebra(5)");
        let reference = eval("lens(5,1)", "ZmodGroupAlgebra(5)");
        for q in [2, 3, 4] {
            let code = builtin_code(&format!("lens(5,{q})")).unwrap();
            assert_eq!(invariant(&code, &algebra).unwrap().value, reference);
        }
        assert_eq!(reference, BaseScalar::from_u64(5, BaseRing::Q));
    }

    #[test]
    fn prime_field_values_reduce_the_rational_ones() {
        let code = builtin_code("lens(3,1)").unwrap();
        let algebra = builtin_hopf("ZmodGroupAlgebra(3)", BaseRing::Fp(5)).unwrap();
        assert_eq!(
            invariant(&code, &algebra).unwrap().value,
            BaseScalar::from_u64(3, BaseRing::Fp(5))
        );
        let s2 = builtin_code("s2xs1").unwrap();
        let s3f7 = builtin_hopf("S3GroupAlgebra", BaseRing::Fp(7)).unwrap();
        assert_eq!(
            invariant(&s2, &s3f7).unwrap().value,
            BaseScalar::from_u64(6, BaseRing::Fp(7))
        );
    }

    #[test]
    fn delta_sign_choice_is_invisible() {
        let data = HopfData::group_algebra(&GroupTable::s3(), BaseRing::Q);
        let plus = HopfAlgebra::new(data.clone()).unwrap();
        let minus = HopfAlgebra::with_delta_sign(data, DeltaSign::Negative).unwrap();
        for name in ["lens(3,1)", "s2xs1", "l31_connsum_s2xs1"] {
            let code = builtin_code(name).unwrap();
            assert_eq!(
                invariant(&code, &plus).unwrap().value,
                invariant(&code, &minus).unwrap().value
            );
        }
    }

    #[test]
    fn oracle_examples() {
        let z2 = GroupTable::cyclic(2);
        assert_eq!(
            invariant_oracle_group(&builtin_code("lens(4,1)").unwrap(), &z2).unwrap(),
            2
        );
        assert_eq!(
            invariant_oracle_group(&builtin_code("lens(4,3)").unwrap(), &z2).unwrap(),
            2
        );
        assert_eq!(
            invariant_oracle_group(&builtin_code("s2xs1").unwrap(), &GroupTable::cyclic(4)).unwrap(),
            4
        );
    }

    #[test]
    fn entry_cap_surfaces_as_a_resource_error() {
        let code = builtin_code("lens(5,2)").unwrap();
        let algebra = q_algebra("Q8GroupAlgebra");
        let result = with_entry_cap(16, || invariant(&code, &algebra));
        assert!(matches!(result, Err(Error::Resource(_))));
    }
}
