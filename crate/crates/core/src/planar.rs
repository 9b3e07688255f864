//! Planar 2-box networks and the planar-algebra invariant.
//!
//! A [`TwoBoxNetwork`] is a closed planar network all of whose boxes are
//! 2-boxes: four boundary corners in clockwise order starting at the star
//! corner. Each box splits into two directed strands, the star strand
//! through corners {0, 1} (running 1 → 0) and the other strand through
//! {2, 3} (running 3 → 2); corners 0 and 2 are exits, 1 and 3 entries.
//!
//! Evaluation replaces a box labelled a by its strands labelled a₁ (star)
//! and Sa₂ (other), reads off the closed loops, and takes δ⁻¹φ of each
//! loop's label product in walk order; free loops contribute δ. Boxes may
//! also be labelled in shared pairs, the two boxes drawing the legs h₁ and
//! Sh₂ of one joint copy of the quasi-basis c₂ = h₁ ⊗ Sh₂; splitting then
//! hands the four strands the legs of Δ₄(h) with the antipode on legs 2 and
//! 4. All Sweedler sums are carried as sparse tensors and the whole network
//! collapses in one contraction.
//!
//! [`build_ntilde`] compiles a planar Heegaard diagram into such a network
//! by filling each positive box with a cyclic chain of paired 2-boxes, its
//! negative partner with the mirrored chain, and doubling the diagram's
//! strings into parallel pairs; [`planar_invariant`] normalizes the result
//! by δ^(−2g−k).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::heegaard::{PlanarHeegaardDiagram, Side};
use crate::hopf::{Element, HopfAlgebra};
use crate::scalars::{project_to_base, BaseScalar, DeltaScalar};
use crate::tensor::{contract_network, LegRef, SparseTensor};

/// Where a box's label comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum LabelSource {
    /// A fixed element of the algebra.
    Explicit(Element),
    /// Leg h₁ of the shared pair with this id.
    PairFirst(usize),
    /// Leg Sh₂ of the shared pair with this id.
    PairSecond(usize),
}

/// One 2-box of the network.
#[derive(Clone, Debug, PartialEq)]
pub struct NetBox {
    pub label: LabelSource,
}

/// A boundary corner: (box index, corner 0..3 clockwise from star).
pub type PointRef = (usize, usize);

/// A closed network of 2-boxes: a perfect matching on all corners plus a
/// count of label-free closed loops.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoBoxNetwork {
    pub boxes: Vec<NetBox>,
    pub strings: Vec<(PointRef, PointRef)>,
    pub free_loops: usize,
}

/// The two strands of a split 2-box.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Strand {
    Star,
    Other,
}

/// The closed curves of the split network, each as its cyclic visit
/// sequence in walk order.
#[derive(Clone, Debug, PartialEq)]
pub struct LoopDecomposition {
    pub loops: Vec<Vec<(usize, Strand)>>,
    pub free_loops: usize,
}

impl LoopDecomposition {
    pub fn total(&self) -> usize {
        self.loops.len() + self.free_loops
    }
}

const EXIT_STAR: usize = 0;
const ENTRY_STAR: usize = 1;
const EXIT_OTHER: usize = 2;
const ENTRY_OTHER: usize = 3;

impl TwoBoxNetwork {
    /// Checks the corner matching, the pair references, and genus-0
    /// embeddability of the rotation system.
    pub fn validate(&self) -> Result<()> {
        let by_corner = self.string_at_each_corner()?;
        self.check_pair_references()?;
        self.check_planarity(&by_corner)
    }

    fn string_at_each_corner(&self) -> Result<BTreeMap<PointRef, usize>> {
        let mut by_corner = BTreeMap::new();
        for (index, &(a, b)) in self.strings.iter().enumerate() {
            for end in [a, b] {
                if end.0 >= self.boxes.len() || end.1 >= 4 {
                    return Err(Error::Invalid(format!(
                        "string end ({}, {}) is out of range",
                        end.0, end.1
                    )));
                }
                if by_corner.insert(end, index).is_some() {
                    return Err(Error::Invalid(format!(
                        "corner ({}, {}) is an endpoint of two strings",
                        end.0, end.1
                    )));
                }
            }
        }
        if by_corner.len() != 4 * self.boxes.len() {
            return Err(Error::Invalid(format!(
                "strings cover {} corners, expected {}",
                by_corner.len(),
                4 * self.boxes.len()
            )));
        }
        Ok(by_corner)
    }

    fn check_pair_references(&self) -> Result<()> {
        let mut firsts: BTreeMap<usize, usize> = BTreeMap::new();
        let mut seconds: BTreeMap<usize, usize> = BTreeMap::new();
        for net_box in &self.boxes {
            match net_box.label {
                LabelSource::Explicit(_) => {}
                LabelSource::PairFirst(id) => *firsts.entry(id).or_insert(0) += 1,
                LabelSource::PairSecond(id) => *seconds.entry(id).or_insert(0) += 1,
            }
        }
        if firsts != seconds || firsts.values().any(|&c| c != 1) {
            return Err(Error::Invalid(
                "every shared pair must be referenced exactly once per side".into(),
            ));
        }
        Ok(())
    }

    fn check_planarity(&self, by_corner: &BTreeMap<PointRef, usize>) -> Result<()> {
        if self.boxes.is_empty() {
            return Ok(());
        }
        let mut parent: Vec<usize> = (0..self.boxes.len()).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for &(a, b) in &self.strings {
            let (ra, rb) = (find(&mut parent, a.0), find(&mut parent, b.0));
            parent[ra] = rb;
        }
        let dart_head = |d: usize| -> PointRef {
            let (a, b) = self.strings[d / 2];
            if d % 2 == 0 {
                b
            } else {
                a
            }
        };
        let dart_leaving = |corner: PointRef| -> usize {
            let s = by_corner[&corner];
            if self.strings[s].0 == corner {
                2 * s
            } else {
                2 * s + 1
            }
        };
        let next_dart = |d: usize| -> usize {
            let (b, c) = dart_head(d);
            dart_leaving((b, (c + 1) % 4))
        };
        let mut faces: BTreeMap<usize, i64> = BTreeMap::new();
        let mut seen = vec![false; 2 * self.strings.len()];
        for start in 0..seen.len() {
            if seen[start] {
                continue;
            }
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                d = next_dart(d);
            }
            let root = find(&mut parent, dart_head(start).0);
            *faces.entry(root).or_insert(0) += 1;
        }
        let mut vertices: BTreeMap<usize, i64> = BTreeMap::new();
        for b in 0..self.boxes.len() {
            let root = find(&mut parent, b);
            *vertices.entry(root).or_insert(0) += 1;
        }
        let mut edges: BTreeMap<usize, i64> = BTreeMap::new();
        for &(a, _) in &self.strings {
            let root = find(&mut parent, a.0);
            *edges.entry(root).or_insert(0) += 1;
        }
        for (&root, &v) in &vertices {
            let e = edges.get(&root).copied().unwrap_or(0);
            let f = faces.get(&root).copied().unwrap_or(0);
            if v - e + f != 2 {
                return Err(Error::Invalid(format!(
                    "network embedding is not planar: component Euler characteristic {}",
                    v - e + f
                )));
            }
        }
        Ok(())
    }

    /// Splits every box into its two directed strands and follows the
    /// strings into closed loops.
    pub fn trace_loops(&self) -> Result<LoopDecomposition> {
        let by_corner = self.string_at_each_corner()?;
        let other_end = |corner: PointRef| -> PointRef {
            let (a, b) = self.strings[by_corner[&corner]];
            if a == corner {
                b
            } else {
                a
            }
        };
        let mut visited: BTreeMap<(usize, Strand), bool> = BTreeMap::new();
        for b in 0..self.boxes.len() {
            visited.insert((b, Strand::Star), false);
            visited.insert((b, Strand::Other), false);
        }
        let mut loops = Vec::new();
        for b in 0..self.boxes.len() {
            for strand in [Strand::Star, Strand::Other] {
                if visited[&(b, strand)] {
                    continue;
                }
                let mut walk = Vec::new();
                let (mut at_box, mut at_strand) = (b, strand);
                loop {
                    walk.push((at_box, at_strand));
                    *visited.get_mut(&(at_box, at_strand)).expect("strand known") = true;
                    let exit = match at_strand {
                        Strand::Star => EXIT_STAR,
                        Strand::Other => EXIT_OTHER,
                    };
                    let (next_box, entry) = other_end((at_box, exit));
                    let next_strand = match entry {
                        ENTRY_STAR => Strand::Star,
                        ENTRY_OTHER => Strand::Other,
                        _ => {
                            return Err(Error::Invalid(format!(
                                "strands do not close: a string joins two exits near \
                                 box {next_box}"
                            )))
                        }
                    };
                    if (next_box, next_strand) == (b, strand) {
                        break;
                    }
                    if visited[&(next_box, next_strand)] {
                        return Err(Error::Invalid(
                            "strands do not close into disjoint loops".into(),
                        ));
                    }
                    (at_box, at_strand) = (next_box, next_strand);
                }
                loops.push(walk);
            }
        }
        Ok(LoopDecomposition {
            loops,
            free_loops: self.free_loops,
        })
    }

    /// Evaluates the network over H: sums all Sweedler assignments of the
    /// box labels, each loop weighing in with δ⁻¹φ(its label product), each
    /// free loop with δ. Realized as one sparse network contraction.
    pub fn evaluate(&self, algebra: &HopfAlgebra) -> Result<DeltaScalar> {
        self.validate()?;
        let decomposition = self.trace_loops()?;
        let dual = algebra.dual();

        // One tensor per shared pair (Δ₄(h) with S on legs 2 and 4) and one
        // per explicit box (Δ₂(x) with S on leg 2); strand → (tensor, leg).
        let mut tensors: Vec<SparseTensor> = Vec::new();
        let mut strand_slot: BTreeMap<(usize, Strand), LegRef> = BTreeMap::new();
        let mut pair_tensor: BTreeMap<usize, usize> = BTreeMap::new();
        for (b, net_box) in self.boxes.iter().enumerate() {
            match &net_box.label {
                LabelSource::Explicit(x) => {
                    if x.tensor().dims() != [algebra.dim() as u32]
                        || x.tensor().ring() != algebra.ring()
                    {
                        return Err(Error::Invalid(format!(
                            "box {b} label does not live in {}",
                            algebra.name()
                        )));
                    }
                    let split = algebra.sweedler_tensor(x.tensor(), 2)?;
                    let split = algebra.antipode_on_leg(&split, 1)?;
                    let idx = tensors.len();
                    tensors.push(split);
                    strand_slot.insert((b, Strand::Star), (idx, 0));
                    strand_slot.insert((b, Strand::Other), (idx, 1));
                }
                LabelSource::PairFirst(id) | LabelSource::PairSecond(id) => {
                    let idx = match pair_tensor.get(id) {
                        Some(&idx) => idx,
                        None => {
                            let mut t =
                                algebra.sweedler_tensor(algebra.integral_tensor(), 4)?;
                            t = algebra.antipode_on_leg(&t, 1)?;
                            t = algebra.antipode_on_leg(&t, 3)?;
                            let idx = tensors.len();
                            tensors.push(t);
                            pair_tensor.insert(*id, idx);
                            idx
                        }
                    };
                    // Pair legs in Sweedler order: h₁, Sh₂ go to the first
                    // box's star and other strands, h₃, Sh₄ to the second
                    // box's other and star strands.
                    if matches!(net_box.label, LabelSource::PairFirst(_)) {
                        strand_slot.insert((b, Strand::Star), (idx, 0));
                        strand_slot.insert((b, Strand::Other), (idx, 1));
                    } else {
                        strand_slot.insert((b, Strand::Other), (idx, 2));
                        strand_slot.insert((b, Strand::Star), (idx, 3));
                    }
                }
            }
        }

        // One functional tensor per loop: Δ_m(φ) pairs with the m visited
        // strand labels in walk order.
        let mut edges: Vec<(LegRef, LegRef)> = Vec::new();
        for walk in &decomposition.loops {
            let loop_tensor =
                dual.sweedler_tensor(dual.integral_tensor(), walk.len())?;
            let idx = tensors.len();
            tensors.push(loop_tensor);
            for (i, visit) in walk.iter().enumerate() {
                edges.push(((idx, i), strand_slot[visit]));
            }
        }

        let scale = algebra.delta_power(
            self.free_loops as i64 - decomposition.loops.len() as i64,
        )?;
        if tensors.is_empty() {
            return Ok(scale);
        }
        let (result, open) = contract_network(tensors, &edges)?;
        if !open.is_empty() {
            return Err(Error::Math(
                "internal: network contraction left open legs".into(),
            ));
        }
        Ok(result.as_scalar()?.mul(&scale))
    }
}

/// Compiles a planar Heegaard diagram into its all-2-box network: the
/// positive box of circle t becomes a clockwise ring of k_t paired boxes
/// (ring through the star strands), the negative box the counter-rotating
/// mirror ring, and every diagram string doubles into two parallel strings
/// joining the band strands of its endpoint boxes. Crossingless circles and
/// closed strings contribute two free loops each.
pub fn build_ntilde(phd: &PlanarHeegaardDiagram) -> Result<TwoBoxNetwork> {
    phd.validate()?;
    let mut boxes = Vec::new();
    let mut strings = Vec::new();
    // Box ids per marked point, positive side then negative side.
    let mut plus_box: BTreeMap<u32, usize> = BTreeMap::new();
    let mut minus_box: BTreeMap<u32, usize> = BTreeMap::new();
    let mut pair = 0usize;
    for circle in &phd.boxes {
        for &q in circle {
            plus_box.insert(q, boxes.len());
            boxes.push(NetBox {
                label: LabelSource::PairFirst(pair),
            });
            pair += 1;
        }
    }
    let mut pair = 0usize;
    for circle in &phd.boxes {
        for &q in circle {
            minus_box.insert(q, boxes.len());
            boxes.push(NetBox {
                label: LabelSource::PairSecond(pair),
            });
            pair += 1;
        }
    }
    // Ring strings: the positive ring runs in marked-point order, the
    // negative ring against it.
    for circle in &phd.boxes {
        let k = circle.len();
        for p in 0..k {
            let here = circle[p];
            let next = circle[(p + 1) % k];
            strings.push(((plus_box[&here], EXIT_STAR), (plus_box[&next], ENTRY_STAR)));
            strings.push(((minus_box[&next], EXIT_STAR), (minus_box[&here], ENTRY_STAR)));
        }
    }
    // Band strings: each diagram string thickens into two parallel strings
    // between the band strands of its endpoint boxes.
    let box_of = |end: (u32, Side)| -> usize {
        match end.1 {
            Side::Plus => plus_box[&end.0],
            Side::Minus => minus_box[&end.0],
        }
    };
    for &(a, b) in &phd.strings {
        let (m1, m2) = (box_of(a), box_of(b));
        strings.push(((m1, EXIT_OTHER), (m2, ENTRY_OTHER)));
        strings.push(((m2, EXIT_OTHER), (m1, ENTRY_OTHER)));
    }
    let isolated_lower = phd.boxes.iter().filter(|c| c.is_empty()).count();
    Ok(TwoBoxNetwork {
        boxes,
        strings,
        free_loops: 2 * phd.closed_strings.len() + 2 * isolated_lower,
    })
}

/// The planar-algebra invariant of a planar Heegaard diagram:
/// δ^(−2g−k) times the network evaluation, projected to the base field.
pub fn planar_invariant(
    phd: &PlanarHeegaardDiagram,
    algebra: &HopfAlgebra,
) -> Result<BaseScalar> {
    let network = build_ntilde(phd)?;
    let marked: usize = phd.boxes.iter().map(|c| c.len()).sum();
    let exponent = -2 * (phd.genus as i64) - marked as i64;
    let value = network.evaluate(algebra)?;
    project_to_base(&value.mul(&algebra.delta_power(exponent)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heegaard::{builtin_planar, derive_code};
    use crate::hopf::builtin_hopf;
    use crate::kuperberg::invariant;
    use crate::scalars::BaseRing;

    fn q_algebra(name: &str) -> HopfAlgebra {
        builtin_hopf(name, BaseRing::Q).unwrap()
    }

    fn single_box(x: Element, strings: [(usize, usize); 2]) -> TwoBoxNetwork {
        TwoBoxNetwork {
            boxes: vec![NetBox {
                label: LabelSource::Explicit(x),
            }],
            strings: vec![((0, strings[0].0), (0, strings[0].1)), ((0, strings[1].0), (0, strings[1].1))],
            free_loops: 0,
        }
    }

    #[test]
    fn strand_wise_closure_gives_two_loops() {
        let h = q_algebra("ZmodGroupAlgebra(2)");
        let net = single_box(h.unit_element(), [(0, 1), (2, 3)]);
        let loops = net.trace_loops().unwrap();
        assert_eq!(loops.loops.len(), 2);
        assert_eq!(loops.loops[0], vec![(0, Strand::Star)]);
        assert_eq!(loops.loops[1], vec![(0, Strand::Other)]);
    }

    #[test]
    fn cross_closure_gives_one_loop() {
        let h = q_algebra("ZmodGroupAlgebra(2)");
        let net = single_box(h.unit_element(), [(0, 3), (2, 1)]);
        let loops = net.trace_loops().unwrap();
        assert_eq!(loops.loops.len(), 1);
        assert_eq!(
            loops.loops[0],
            vec![(0, Strand::Star), (0, Strand::Other)]
        );
    }

    #[test]
    fn closure_values_match_the_split_label_rules() {
        let h = q_algebra("ZmodGroupAlgebra(3)");
        let delta = h.delta_power(1).unwrap();
        // Two separate loops: δ⁻²φ(1)² = δ².
        let net = single_box(h.unit_element(), [(0, 1), (2, 3)]);
        assert_eq!(net.evaluate(&h).unwrap(), h.delta_power(2).unwrap());
        // One loop through both strands: δ·ε(x).
        let net = single_box(h.unit_element(), [(0, 3), (2, 1)]);
        assert_eq!(net.evaluate(&h).unwrap(), delta);
        let net = single_box(h.integral_element(), [(0, 3), (2, 1)]);
        assert_eq!(net.evaluate(&h).unwrap(), h.delta_power(3).unwrap());
    }

    #[test]
    fn degenerate_chain_tangles_evaluate_through_the_counit() {
        // The single-loop closure computes the closed k = 1 chain tangle,
        // whose box map is ε(·)1; with the antipode applied to the label it
        // is (ε∘S)(·)1, and the two agree on every basis element.
        for name in ["ZmodGroupAlgebra(4)", "S3GroupAlgebra"] {
            let h = q_algebra(name);
            let delta = h.delta_power(1).unwrap();
            for i in 0..h.dim() {
                let x = h.basis_element(i);
                let eps = h.counit_of(&x).unwrap();
                let net = single_box(x.clone(), [(0, 3), (2, 1)]);
                assert_eq!(net.evaluate(&h).unwrap(), delta.clone().mul(&eps));
                let s_x = h.antipode_of(&x).unwrap();
                let starred = single_box(s_x, [(0, 3), (2, 1)]);
                assert_eq!(starred.evaluate(&h).unwrap(), delta.clone().mul(&eps));
            }
        }
    }

    #[test]
    fn empty_network_with_free_loops_evaluates_to_delta_powers() {
        let h = q_algebra("ZmodGroupAlgebra(5)");
        let net = TwoBoxNetwork {
            boxes: vec![],
            strings: vec![],
            free_loops: 1,
        };
        assert_eq!(net.evaluate(&h).unwrap(), h.delta_power(1).unwrap());
        let three = TwoBoxNetwork {
            free_loops: 3,
            ..net
        };
        assert_eq!(three.evaluate(&h).unwrap(), h.delta_power(3).unwrap());
    }

    #[test]
    fn direction_violating_strings_are_rejected() {
        let h = q_algebra("ZmodGroupAlgebra(2)");
        let net = single_box(h.unit_element(), [(0, 2), (1, 3)]);
        match net.trace_loops() {
            Err(Error::Invalid(msg)) => assert!(msg.contains("close"), "{msg}"),
            other => panic!("expected tracing failure, got {other:?}"),
        }
    }

    #[test]
    fn corner_matching_is_validated() {
        let h = q_algebra("ZmodGroupAlgebra(2)");
        let mut net = single_box(h.unit_element(), [(0, 1), (2, 3)]);
        net.strings.pop();
        assert!(matches!(net.validate(), Err(Error::Invalid(_))));
        let mut doubled = single_box(h.unit_element(), [(0, 1), (0, 1)]);
        doubled.free_loops = 0;
        assert!(matches!(doubled.validate(), Err(Error::Invalid(_))));
    }

    #[test]
    fn pair_references_must_balance() {
        let net = TwoBoxNetwork {
            boxes: vec![
                NetBox {
                    label: LabelSource::PairFirst(0),
                },
                NetBox {
                    label: LabelSource::PairFirst(0),
                },
            ],
            strings: vec![
                ((0, 0), (0, 1)),
                ((0, 2), (0, 3)),
                ((1, 0), (1, 1)),
                ((1, 2), (1, 3)),
            ],
            free_loops: 0,
        };
        assert!(matches!(net.validate(), Err(Error::Invalid(_))));
    }

    #[test]
    fn ntilde_shapes_match_the_figure_counts() {
        // Genus-1 single crossing: one shared pair, two boxes.
        let s3 = build_ntilde(&builtin_planar("s3_genus1").unwrap()).unwrap();
        assert_eq!(s3.boxes.len(), 2);
        assert_eq!(s3.free_loops, 0);
        // The connected-sum diagram: three shared pairs, six boxes, and the
        // isolated circles contribute four free loops.
        let sum = build_ntilde(&builtin_planar("l31_connsum_s2xs1").unwrap()).unwrap();
        assert_eq!(sum.boxes.len(), 6);
        assert_eq!(sum.free_loops, 4);
        sum.validate().unwrap();
    }

    #[test]
    fn loop_count_law_holds_on_the_catalog() {
        for name in [
            "s3_genus0",
            "s3_genus1",
            "s2xs1",
            "lens(2,1)",
            "lens(3,2)",
            "lens(5,3)",
            "l31_connsum_s2xs1",
            "stab(lens(3,1))",
        ] {
            let phd = builtin_planar(name).unwrap();
            let net = build_ntilde(&phd).unwrap();
            net.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
            let loops = net.trace_loops().unwrap();
            let g = phd.genus;
            let k: usize = phd.boxes.iter().map(|c| c.len()).sum();
            let c = phd.closed_strings.len();
            assert_eq!(loops.total(), 2 * g + k + 2 * c, "{name}");
        }
    }

    #[test]
    fn named_planar_values() {
        let phd = builtin_planar("l31_connsum_s2xs1").unwrap();
        assert_eq!(
            planar_invariant(&phd, &q_algebra("ZmodGroupAlgebra(2)")).unwrap(),
            BaseScalar::from_u64(2, BaseRing::Q)
        );
        assert_eq!(
            planar_invariant(&phd, &q_algebra("ZmodGroupAlgebra(3)")).unwrap(),
            BaseScalar::from_u64(9, BaseRing::Q)
        );
        let s3 = builtin_planar("s3_genus1").unwrap();
        assert_eq!(
            planar_invariant(&s3, &q_algebra("S3GroupAlgebra")).unwrap(),
            BaseScalar::from_u64(1, BaseRing::Q)
        );
    }

    #[test]
    fn planar_value_agrees_with_the_state_sum() {
        let algebras = [
            q_algebra("ZmodGroupAlgebra(3)"),
            q_algebra("S3GroupAlgebra"),
            q_algebra("dual(S3GroupAlgebra)"),
        ];
        for name in ["s3_genus1", "s2xs1", "lens(3,2)", "lens(4,3)", "l31_connsum_s2xs1"] {
            let phd = builtin_planar(name).unwrap();
            let code = derive_code(&phd).unwrap();
            for algebra in &algebras {
                assert_eq!(
                    planar_invariant(&phd, algebra).unwrap(),
                    invariant(&code, algebra).unwrap().value,
                    "{name} over {}",
                    algebra.name()
                );
            }
        }
    }

    #[test]
    fn swapping_pair_sides_preserves_the_value() {
        let h = q_algebra("S3GroupAlgebra");
        let phd = builtin_planar("lens(3,1)").unwrap();
        let net = build_ntilde(&phd).unwrap();
        let mut swapped = net.clone();
        for net_box in &mut swapped.boxes {
            net_box.label = match net_box.label.clone() {
                LabelSource::PairFirst(id) => LabelSource::PairSecond(id),
                LabelSource::PairSecond(id) => LabelSource::PairFirst(id),
                other => other,
            };
        }
        assert_eq!(net.evaluate(&h).unwrap(), swapped.evaluate(&h).unwrap());
    }

    #[test]
    fn moving_base_points_preserves_the_value() {
        let h = q_algebra("ZmodGroupAlgebra(4)");
        let phd = builtin_planar("lens(4,3)").unwrap();
        let reference = planar_invariant(&phd, &h).unwrap();
        for r in 1..4 {
            let mut rotated = phd.clone();
            rotated.boxes[0].rotate_left(r);
            assert_eq!(planar_invariant(&rotated, &h).unwrap(), reference);
        }
    }
}
