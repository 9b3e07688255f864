//! Combinatorial Heegaard diagrams.
//!
//! Two levels of detail: the abstract [`HeegaardCode`] (circle orders and
//! crossing signs, enough for the state-sum evaluator) and the
//! [`PlanarHeegaardDiagram`] (a rotation-system embedding, enough for the
//! planar-network evaluator). Builders for a small catalog of standard
//! manifolds, base-point and orientation moves, a stabilization move, and a
//! fundamental-group presentation used by the homomorphism-counting oracle.

mod diagram;

pub use diagram::{builtin_planar, derive_code, End, PlanarHeegaardDiagram, Side};

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::GroupTable;

/// Identifier of one crossing between a lower and an upper circle.
pub type CrossingId = u32;

/// Which family of circles a move addresses.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Layer {
    Lower,
    Upper,
}

/// A genus-g Heegaard diagram reduced to its combinatorics: each lower and
/// upper circle as the ordered list of crossings it visits (from its
/// base-point, in orientation order), plus a sign per crossing. The sign is
/// +1 when the (lower tangent, upper tangent) frame at the crossing is
/// positively oriented, and −1 otherwise.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HeegaardCode {
    pub genus: usize,
    pub lower: Vec<Vec<CrossingId>>,
    pub upper: Vec<Vec<CrossingId>>,
    pub signs: BTreeMap<CrossingId, i8>,
}

/// Headline counts reported by [`HeegaardCode::validate`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CodeSummary {
    pub genus: usize,
    /// Total number of crossings.
    pub crossings: usize,
    /// Number of upper circles with no crossings.
    pub isolated_upper: usize,
    /// Number of lower circles with no crossings.
    pub isolated_lower: usize,
}

fn collect_ids(circles: &[Vec<CrossingId>], layer: &str) -> Result<BTreeSet<CrossingId>> {
    let mut seen = BTreeSet::new();
    for circle in circles {
        for &q in circle {
            if !seen.insert(q) {
                return Err(Error::Invalid(format!(
                    "crossing {q} appears more than once among the {layer} circles"
                )));
            }
        }
    }
    Ok(seen)
}

impl HeegaardCode {
    /// Checks all structural invariants and returns the headline counts.
    pub fn validate(&self) -> Result<CodeSummary> {
        if self.lower.len() != self.genus || self.upper.len() != self.genus {
            return Err(Error::Invalid(format!(
                "genus {} does not match {} lower / {} upper circles",
                self.genus,
                self.lower.len(),
                self.upper.len()
            )));
        }
        let lower_ids = collect_ids(&self.lower, "lower")?;
        let upper_ids = collect_ids(&self.upper, "upper")?;
        if lower_ids != upper_ids {
            let q = lower_ids
                .symmetric_difference(&upper_ids)
                .next()
                .expect("sets differ");
            return Err(Error::Invalid(format!(
                "crossing {q} does not appear exactly once in each layer"
            )));
        }
        let signed: BTreeSet<CrossingId> = self.signs.keys().copied().collect();
        if signed != lower_ids {
            let q = signed
                .symmetric_difference(&lower_ids)
                .next()
                .expect("sets differ");
            return Err(Error::Invalid(format!(
                "sign table does not match the crossing set at crossing {q}"
            )));
        }
        if let Some((&q, &s)) = self.signs.iter().find(|(_, &s)| s != 1 && s != -1) {
            return Err(Error::Invalid(format!("crossing {q} has sign {s}, expected ±1")));
        }
        Ok(CodeSummary {
            genus: self.genus,
            crossings: lower_ids.len(),
            isolated_upper: self.upper.iter().filter(|c| c.is_empty()).count(),
            isolated_lower: self.lower.iter().filter(|c| c.is_empty()).count(),
        })
    }

    pub fn sign(&self, q: CrossingId) -> Result<i8> {
        self.signs
            .get(&q)
            .copied()
            .ok_or_else(|| Error::Invalid(format!("unknown crossing {q}")))
    }

    /// Index of the lower circle visiting the given crossing.
    pub fn lower_circle_of(&self, q: CrossingId) -> Result<usize> {
        self.lower
            .iter()
            .position(|c| c.contains(&q))
            .ok_or_else(|| Error::Invalid(format!("crossing {q} lies on no lower circle")))
    }

    fn circle_mut(&mut self, layer: Layer, index: usize) -> Result<&mut Vec<CrossingId>> {
        let circles = match layer {
            Layer::Lower => &mut self.lower,
            Layer::Upper => &mut self.upper,
        };
        let count = circles.len();
        circles.get_mut(index).ok_or_else(|| {
            Error::Invalid(format!(
                "circle index {index} out of range for {count} circles"
            ))
        })
    }

    /// Moves the base-point of one circle: its list is rotated left by
    /// `steps`, so the crossing previously at position `steps` comes first.
    pub fn rotate_basepoint(&self, layer: Layer, index: usize, steps: usize) -> Result<HeegaardCode> {
        let mut out = self.clone();
        let circle = out.circle_mut(layer, index)?;
        if !circle.is_empty() {
            let k = steps % circle.len();
            circle.rotate_left(k);
        }
        Ok(out)
    }

    /// Reverses the orientation of one circle. The visit order flips, and
    /// every crossing on the circle flips sign, because reversing one tangent
    /// vector reverses the orientation of the (lower, upper) frame there.
    pub fn reverse_circle(&self, layer: Layer, index: usize) -> Result<HeegaardCode> {
        let mut out = self.clone();
        let circle = out.circle_mut(layer, index)?;
        circle.reverse();
        let on_circle: Vec<CrossingId> = circle.clone();
        for q in on_circle {
            let s = out.signs.get_mut(&q).expect("validated code");
            *s = -*s;
        }
        Ok(out)
    }

    /// Adds a genus: one new lower and one new upper circle meeting each
    /// other in a single new positive crossing and meeting nothing else.
    pub fn stabilize(&self) -> HeegaardCode {
        let fresh = self.signs.keys().max().map_or(1, |&m| m + 1);
        let mut out = self.clone();
        out.genus += 1;
        out.lower.push(vec![fresh]);
        out.upper.push(vec![fresh]);
        out.signs.insert(fresh, 1);
        out
    }

    /// The presentation of the fundamental group read off the diagram: one
    /// generator per lower circle, one relator per nonempty upper circle.
    pub fn present_group(&self) -> Result<GroupPresentation> {
        let relators = self
            .upper
            .iter()
            .filter(|circle| !circle.is_empty())
            .map(|circle| {
                circle
                    .iter()
                    .map(|&q| Ok((self.lower_circle_of(q)?, self.sign(q)?)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupPresentation {
            generators: self.lower.len(),
            relators,
        })
    }

    /// Canonical JSON form.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    /// Parses and validates the JSON form.
    pub fn from_json_str(text: &str) -> Result<HeegaardCode> {
        let code: HeegaardCode = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("bad Heegaard code JSON: {e}")))?;
        code.validate()?;
        Ok(code)
    }
}

/// A finite presentation ⟨x_1..x_g | r_1..r_m⟩ with relator letters stored
/// as (generator index, ±1 exponent).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupPresentation {
    pub generators: usize,
    pub relators: Vec<Vec<(usize, i8)>>,
}

const HOM_ENUMERATION_CAP: u128 = 10_000_000;

impl GroupPresentation {
    /// Counts homomorphisms into the given finite group by enumerating all
    /// generator assignments. Guarded by an enumeration cap of 10⁷ tuples.
    pub fn count_homs(&self, table: &GroupTable) -> Result<u64> {
        for relator in &self.relators {
            for &(gen, _) in relator {
                if gen >= self.generators {
                    return Err(Error::Invalid(format!(
                        "relator references generator {gen}, but there are only {}",
                        self.generators
                    )));
                }
            }
        }
        let order = table.order() as u128;
        let total = order
            .checked_pow(self.generators as u32)
            .filter(|&t| t <= HOM_ENUMERATION_CAP)
            .ok_or_else(|| {
                Error::Resource(format!(
                    "{}^{} assignments exceed the enumeration cap of {HOM_ENUMERATION_CAP}",
                    table.order(),
                    self.generators
                ))
            })?;
        let _ = total;
        let n = table.order();
        let mut assignment = vec![0usize; self.generators];
        let mut count = 0u64;
        loop {
            let satisfied = self.relators.iter().all(|relator| {
                let mut acc = table.identity();
                for &(gen, exp) in relator {
                    let letter = if exp >= 0 {
                        assignment[gen]
                    } else {
                        table.inv(assignment[gen])
                    };
                    acc = table.mul(acc, letter);
                }
                acc == table.identity()
            });
            if satisfied {
                count += 1;
            }
            // Odometer increment over G^g.
            let mut pos = 0;
            loop {
                if pos == self.generators {
                    return Ok(count);
                }
                assignment[pos] += 1;
                if assignment[pos] < n {
                    break;
                }
                assignment[pos] = 0;
                pos += 1;
            }
        }
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The lens-space code L(p, q): one lower circle through crossings 1..p in
/// order, one upper circle visiting them in steps of q, all signs positive.
pub fn lens_code(p: u32, q: u32) -> Result<HeegaardCode> {
    if !(2..=6).contains(&p) {
        return Err(Error::Invalid(format!(
            "lens parameter p = {p} outside the built-in range 2..=6"
        )));
    }
    if q == 0 || gcd(p, q) != 1 {
        return Err(Error::Invalid(format!("lens parameters ({p}, {q}) are not coprime")));
    }
    let lower: Vec<CrossingId> = (1..=p).collect();
    let upper: Vec<CrossingId> = (0..p).map(|j| 1 + (j * q) % p).collect();
    Ok(HeegaardCode {
        genus: 1,
        lower: vec![lower],
        upper: vec![upper],
        signs: (1..=p).map(|i| (i, 1)).collect(),
    })
}

fn connected_sum(a: &HeegaardCode, b: &HeegaardCode) -> HeegaardCode {
    let shift = a.signs.keys().max().copied().unwrap_or(0);
    let relabel =
        |circles: &[Vec<CrossingId>]| -> Vec<Vec<CrossingId>> {
            circles
                .iter()
                .map(|c| c.iter().map(|&q| q + shift).collect())
                .collect()
        };
    let mut lower = a.lower.clone();
    lower.extend(relabel(&b.lower));
    let mut upper = a.upper.clone();
    upper.extend(relabel(&b.upper));
    let mut signs = a.signs.clone();
    signs.extend(b.signs.iter().map(|(&q, &s)| (q + shift, s)));
    HeegaardCode {
        genus: a.genus + b.genus,
        lower,
        upper,
        signs,
    }
}

/// The built-in catalog of Heegaard codes.
///
/// Names: `s3_genus0`, `s3_genus1`, `s2xs1`, `lens(p,q)` with 2 ≤ p ≤ 6 and
/// gcd(p, q) = 1, `l31_connsum_s2xs1`, and `stab(name)` for a stabilized
/// variant of any catalog entry.
pub fn builtin_code(name: &str) -> Result<HeegaardCode> {
    let trimmed = name.trim();
    if let Some(inner) = trimmed.strip_prefix("stab(").and_then(|s| s.strip_suffix(')')) {
        return Ok(builtin_code(inner)?.stabilize());
    }
    if let Some(args) = trimmed.strip_prefix("lens(").and_then(|s| s.strip_suffix(')')) {
        let (p, q) = parse_lens_args(args, trimmed)?;
        return lens_code(p, q);
    }
    match trimmed {
        "s3_genus0" => Ok(HeegaardCode {
            genus: 0,
            lower: vec![],
            upper: vec![],
            signs: BTreeMap::new(),
        }),
        "s3_genus1" => Ok(HeegaardCode {
            genus: 1,
            lower: vec![vec![1]],
            upper: vec![vec![1]],
            signs: [(1, 1)].into_iter().collect(),
        }),
        "s2xs1" => Ok(HeegaardCode {
            genus: 1,
            lower: vec![vec![]],
            upper: vec![vec![]],
            signs: BTreeMap::new(),
        }),
        "l31_connsum_s2xs1" => Ok(connected_sum(&lens_code(3, 1)?, &builtin_code("s2xs1")?)),
        _ => Err(Error::Parse(format!(
            "unknown diagram {name:?}; expected s3_genus0, s3_genus1, s2xs1, \
             lens(p,q), l31_connsum_s2xs1, or stab(...)"
        ))),
    }
}

fn parse_lens_args(args: &str, full: &str) -> Result<(u32, u32)> {
    let mut parts = args.split(',');
    let (Some(p), Some(q), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(Error::Parse(format!("bad lens arguments in {full:?}")));
    };
    let p: u32 = p
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad lens parameter p in {full:?}")))?;
    let q: u32 = q
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad lens parameter q in {full:?}")))?;
    Ok((p, q))
}

fn cyclic_eq(a: &[CrossingId], b: &[CrossingId]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|r| (0..a.len()).all(|j| a[(j + r) % a.len()] == b[j]))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for slot in 0..=rest.len() {
            let mut perm = rest.clone();
            perm.insert(slot, n - 1);
            out.push(perm);
        }
    }
    out
}

/// Whether two codes agree up to relabeling crossings, permuting circles
/// within each layer, and moving base-points. Orientation reversals are not
/// considered. Brute-force; intended for the small catalog diagrams.
pub fn codes_equivalent(a: &HeegaardCode, b: &HeegaardCode) -> bool {
    if a.genus != b.genus || a.signs.len() != b.signs.len() {
        return false;
    }
    let g = a.genus;
    'perm: for lower_perm in permutations(g) {
        if (0..g).any(|t| a.lower[t].len() != b.lower[lower_perm[t]].len()) {
            continue;
        }
        // Enumerate base-point rotations of every nonempty matched pair.
        let limits: Vec<usize> = (0..g).map(|t| a.lower[t].len().max(1)).collect();
        let mut rotation = vec![0usize; g];
        loop {
            if let Some(map) = crossing_bijection(a, b, &lower_perm, &rotation) {
                if upper_circles_match(a, b, &map) {
                    return true;
                }
            }
            let mut pos = 0;
            loop {
                if pos == g {
                    continue 'perm;
                }
                rotation[pos] += 1;
                if rotation[pos] < limits[pos] {
                    break;
                }
                rotation[pos] = 0;
                pos += 1;
            }
        }
    }
    false
}

fn crossing_bijection(
    a: &HeegaardCode,
    b: &HeegaardCode,
    lower_perm: &[usize],
    rotation: &[usize],
) -> Option<BTreeMap<CrossingId, CrossingId>> {
    let mut map = BTreeMap::new();
    for t in 0..a.genus {
        let target = &b.lower[lower_perm[t]];
        for (j, &q) in a.lower[t].iter().enumerate() {
            let image = target[(j + rotation[t]) % target.len()];
            if a.signs.get(&q) != b.signs.get(&image) {
                return None;
            }
            map.insert(q, image);
        }
    }
    Some(map)
}

fn upper_circles_match(
    a: &HeegaardCode,
    b: &HeegaardCode,
    map: &BTreeMap<CrossingId, CrossingId>,
) -> bool {
    let images: Vec<Vec<CrossingId>> = a
        .upper
        .iter()
        .map(|circle| circle.iter().map(|q| map[q]).collect())
        .collect();
    permutations(b.upper.len())
        .into_iter()
        .any(|perm| {
            (0..images.len()).all(|i| cyclic_eq(&images[i], &b.upper[perm[i]]))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_entries_validate_with_expected_counts() {
        let cases = [
            ("s3_genus0", (0, 0, 0, 0)),
            ("s3_genus1", (1, 1, 0, 0)),
            ("s2xs1", (1, 0, 1, 1)),
            ("lens(3,1)", (1, 3, 0, 0)),
            ("lens(5,2)", (1, 5, 0, 0)),
            ("l31_connsum_s2xs1", (2, 3, 1, 1)),
            ("stab(lens(3,1))", (2, 4, 0, 0)),
            ("stab(stab(s3_genus0))", (2, 2, 0, 0)),
        ];
        for (name, (g, k, c, d)) in cases {
            let summary = builtin_code(name).unwrap().validate().unwrap();
            assert_eq!(
                (summary.genus, summary.crossings, summary.isolated_upper, summary.isolated_lower),
                (g, k, c, d),
                "{name}"
            );
        }
    }

    #[test]
    fn lens_upper_circle_steps_by_q() {
        let code = builtin_code("lens(5,2)").unwrap();
        assert_eq!(code.lower[0], vec![1, 2, 3, 4, 5]);
        assert_eq!(code.upper[0], vec![1, 3, 5, 2, 4]);
        assert!(builtin_code("lens(4,2)").is_err());
        assert!(builtin_code("lens(7,1)").is_err());
    }

    #[test]
    fn duplicate_crossing_is_rejected_with_its_id() {
        let code = HeegaardCode {
            genus: 2,
            lower: vec![vec![1, 2], vec![2]],
            upper: vec![vec![1, 2], vec![2]],
            signs: [(1, 1), (2, 1)].into_iter().collect(),
        };
        match code.validate() {
            Err(Error::Invalid(msg)) => assert!(msg.contains('2'), "{msg}"),
            other => panic!("expected invalid, got {other:?}"),
        }
    }

    #[test]
    fn layer_mismatch_is_rejected() {
        let code = HeegaardCode {
            genus: 1,
            lower: vec![vec![1]],
            upper: vec![vec![2]],
            signs: [(1, 1)].into_iter().collect(),
        };
        assert!(code.validate().is_err());
    }

    #[test]
    fn rotation_moves_the_base_point() {
        let code = builtin_code("lens(3,1)").unwrap();
        let rotated = code.rotate_basepoint(Layer::Lower, 0, 1).unwrap();
        assert_eq!(rotated.lower[0], vec![2, 3, 1]);
        assert_eq!(code.rotate_basepoint(Layer::Lower, 0, 0).unwrap(), code);
        assert_eq!(code.rotate_basepoint(Layer::Lower, 0, 3).unwrap(), code);
        assert!(code.rotate_basepoint(Layer::Lower, 1, 1).is_err());
    }

    #[test]
    fn reversal_flips_order_and_signs() {
        let code = builtin_code("lens(3,1)").unwrap();
        let reversed = code.reverse_circle(Layer::Upper, 0).unwrap();
        assert_eq!(reversed.upper[0], vec![3, 2, 1]);
        assert!(reversed.signs.values().all(|&s| s == -1));
        assert_eq!(reversed.reverse_circle(Layer::Upper, 0).unwrap(), code);
        let empty = builtin_code("s2xs1").unwrap();
        assert_eq!(empty.reverse_circle(Layer::Lower, 0).unwrap(), empty);
    }

    #[test]
    fn stabilization_adds_an_isolated_handle_pair() {
        let stabilized = builtin_code("s3_genus0").unwrap().stabilize();
        assert!(codes_equivalent(&stabilized, &builtin_code("s3_genus1").unwrap()));
        let summary = builtin_code("lens(3,1)").unwrap().stabilize().validate().unwrap();
        assert_eq!((summary.genus, summary.crossings), (2, 4));
    }

    #[test]
    fn presentation_of_lens_spaces_is_one_power_relator() {
        let pres = builtin_code("lens(4,1)").unwrap().present_group().unwrap();
        assert_eq!(pres.generators, 1);
        assert_eq!(pres.relators, vec![vec![(0, 1); 4]]);
        let free = builtin_code("s2xs1").unwrap().present_group().unwrap();
        assert_eq!(free.generators, 1);
        assert!(free.relators.is_empty());
        let sum = builtin_code("l31_connsum_s2xs1").unwrap().present_group().unwrap();
        assert_eq!(sum.generators, 2);
        assert_eq!(sum.relators, vec![vec![(0, 1); 3]]);
    }

    #[test]
    fn hom_counts_match_direct_reasoning() {
        let x_cubed = GroupPresentation {
            generators: 1,
            relators: vec![vec![(0, 1); 3]],
        };
        assert_eq!(x_cubed.count_homs(&GroupTable::cyclic(3)).unwrap(), 3);
        assert_eq!(x_cubed.count_homs(&GroupTable::cyclic(2)).unwrap(), 1);
        let free = GroupPresentation {
            generators: 1,
            relators: vec![],
        };
        assert_eq!(free.count_homs(&GroupTable::s3()).unwrap(), 6);
        // Inverse exponents: x·x⁻¹ is always trivial.
        let trivial = GroupPresentation {
            generators: 1,
            relators: vec![vec![(0, 1), (0, -1)]],
        };
        assert_eq!(trivial.count_homs(&GroupTable::q8()).unwrap(), 8);
    }

    #[test]
    fn hom_count_cap_is_enforced() {
        let wide = GroupPresentation {
            generators: 20,
            relators: vec![],
        };
        assert!(matches!(
            wide.count_homs(&GroupTable::s3()),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn json_round_trip_is_byte_exact() {
        let code = builtin_code("lens(3,2)").unwrap();
        let text = code.to_json_string();
        assert_eq!(
            text,
            r#"{"genus":1,"lower":[[1,2,3]],"upper":[[1,3,2]],"signs":{"1":1,"2":1,"3":1}}"#
        );
        let parsed = HeegaardCode::from_json_str(&text).unwrap();
        assert_eq!(parsed, code);
        assert_eq!(parsed.to_json_string(), text);
    }

    #[test]
    fn json_parse_validates() {
        let bad = r#"{"genus":1,"lower":[[1,1]],"upper":[[1]],"signs":{"1":1}}"#;
        assert!(HeegaardCode::from_json_str(bad).is_err());
        let garbled = "{\"genus\": 1";
        assert!(matches!(
            HeegaardCode::from_json_str(garbled),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn equivalence_sees_through_rotation_and_relabeling() {
        let code = builtin_code("lens(3,1)").unwrap();
        let rotated = code
            .rotate_basepoint(Layer::Lower, 0, 2)
            .unwrap()
            .rotate_basepoint(Layer::Upper, 0, 1)
            .unwrap();
        assert!(codes_equivalent(&code, &rotated));
        let relabeled = HeegaardCode {
            genus: 1,
            lower: vec![vec![7, 9, 8]],
            upper: vec![vec![7, 9, 8]],
            signs: [(7, 1), (8, 1), (9, 1)].into_iter().collect(),
        };
        assert!(codes_equivalent(&code, &relabeled));
    }

    #[test]
    fn equivalence_distinguishes_lens_twists_and_signs() {
        let a = builtin_code("lens(3,1)").unwrap();
        let b = builtin_code("lens(3,2)").unwrap();
        assert!(!codes_equivalent(&a, &b));
        let flipped = a.reverse_circle(Layer::Upper, 0).unwrap();
        assert!(!codes_equivalent(&a, &flipped));
    }
}
