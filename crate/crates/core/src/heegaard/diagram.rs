//! Planar Heegaard diagrams as rotation systems.
//!
//! Removing tubular neighbourhoods of the lower circles from the Heegaard
//! surface leaves a sphere with 2g holes; the upper circles become strings
//! between hole boundaries plus closed curves. A [`PlanarHeegaardDiagram`]
//! records that picture combinatorially: one box per hole, marked points in
//! clockwise order, and a perfect matching of strings. Validation checks the
//! matching, genus-0 embeddability of the rotation system (by face tracing
//! and the Euler formula per connected component), and that the strings
//! close into the right number of upper circles.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{CrossingId, HeegaardCode};
use crate::error::{Error, Result};

/// Which of the two paired boxes of a lower circle carries a string end.
/// The `Plus` box keeps the lower circle's orientation (clockwise in the
/// plane); its partner reverses it.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }
}

/// A string endpoint: the marked point it lands on and the box side.
pub type End = (CrossingId, Side);

/// The planar form of a Heegaard diagram.
///
/// `boxes[t]` lists the marked points of the box (t, +) clockwise from its
/// base-point; this is also the lower numbering of the crossings on lower
/// circle t. The paired box (t, −) carries the same points in reversed
/// clockwise order, since the pairing reverses orientation. `strings` is a
/// perfect matching on all (point, side) copies. `closed_strings` holds one
/// opaque face label per isolated upper circle; labels and `outer_face` are
/// carried for round-trips but not interpreted, because the evaluators are
/// insensitive to where closed curves sit.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PlanarHeegaardDiagram {
    pub genus: usize,
    pub boxes: Vec<Vec<CrossingId>>,
    pub strings: Vec<(End, End)>,
    pub closed_strings: Vec<u32>,
    pub outer_face: u32,
}

impl PlanarHeegaardDiagram {
    /// Checks matching, planarity, and circle-count invariants.
    pub fn validate(&self) -> Result<()> {
        let by_copy = self.string_at_each_copy()?;
        self.check_planarity(&by_copy)?;
        let circles = upper_traversal(self, &by_copy);
        if circles.len() + self.closed_strings.len() != self.genus {
            return Err(Error::Invalid(format!(
                "strings close into {} circles and {} closed curves, expected {} \
                 upper circles for genus {}",
                circles.len(),
                self.closed_strings.len(),
                self.genus,
                self.genus
            )));
        }
        Ok(())
    }

    /// Canonical JSON form: string ends ordered, strings sorted.
    pub fn to_json_string(&self) -> String {
        let mut canon = self.clone();
        canon.strings = self.canonical_strings();
        serde_json::to_string(&canon).expect("plain data serializes")
    }

    pub fn from_json_str(text: &str) -> Result<PlanarHeegaardDiagram> {
        let phd: PlanarHeegaardDiagram = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("bad planar diagram JSON: {e}")))?;
        phd.validate()?;
        Ok(phd)
    }

    fn canonical_strings(&self) -> Vec<(End, End)> {
        let mut strings: Vec<(End, End)> = self
            .strings
            .iter()
            .map(|&(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        strings.sort();
        strings
    }

    /// Map from each (point, side) copy to the index of the string ending
    /// there, verifying the perfect-matching invariant.
    fn string_at_each_copy(&self) -> Result<BTreeMap<End, usize>> {
        if self.boxes.len() != self.genus {
            return Err(Error::Invalid(format!(
                "genus {} does not match {} box pairs",
                self.genus,
                self.boxes.len()
            )));
        }
        let mut points = BTreeSet::new();
        for circle in &self.boxes {
            for &q in circle {
                if !points.insert(q) {
                    return Err(Error::Invalid(format!(
                        "marked point {q} appears on more than one box"
                    )));
                }
            }
        }
        let mut by_copy = BTreeMap::new();
        for (index, &(a, b)) in self.strings.iter().enumerate() {
            for end in [a, b] {
                if !points.contains(&end.0) {
                    return Err(Error::Invalid(format!(
                        "string end references unknown point {}",
                        end.0
                    )));
                }
                if by_copy.insert(end, index).is_some() {
                    return Err(Error::Invalid(format!(
                        "point {} is an endpoint of two strings on the same side",
                        end.0
                    )));
                }
            }
        }
        let expected = 2 * points.len();
        if by_copy.len() != expected {
            return Err(Error::Invalid(format!(
                "strings cover {} point copies, expected {expected}",
                by_copy.len()
            )));
        }
        Ok(by_copy)
    }

    /// Face-traces the rotation system and requires V − E + F = 2 on every
    /// connected component.
    fn check_planarity(&self, by_copy: &BTreeMap<End, usize>) -> Result<()> {
        let box_of_point: BTreeMap<CrossingId, usize> = self
            .boxes
            .iter()
            .enumerate()
            .flat_map(|(t, circle)| circle.iter().map(move |&q| (q, t)))
            .collect();
        let box_id = |end: End| -> usize {
            2 * box_of_point[&end.0]
                + match end.1 {
                    Side::Plus => 0,
                    Side::Minus => 1,
                }
        };
        // Union boxes joined by strings.
        let mut parent: Vec<usize> = (0..2 * self.genus).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for &(a, b) in &self.strings {
            let (ra, rb) = (find(&mut parent, box_id(a)), find(&mut parent, box_id(b)));
            parent[ra] = rb;
        }

        // Darts: 2s goes from strings[s].0 to strings[s].1, 2s+1 back.
        let dart_head = |d: usize| -> End {
            let (a, b) = self.strings[d / 2];
            if d % 2 == 0 {
                b
            } else {
                a
            }
        };
        // Clockwise rotation at each box; the − box reverses the stored order.
        let rotation = |end: End| -> Vec<CrossingId> {
            let circle = &self.boxes[box_of_point[&end.0]];
            match end.1 {
                Side::Plus => circle.clone(),
                Side::Minus => circle.iter().rev().copied().collect(),
            }
        };
        let dart_leaving = |end: End| -> usize {
            let s = by_copy[&end];
            if self.strings[s].0 == end {
                2 * s
            } else {
                2 * s + 1
            }
        };
        // Next dart along a face: reverse the arriving dart, then take the
        // next departure clockwise around the box.
        let next_dart = |d: usize| -> usize {
            let head = dart_head(d);
            let order = rotation(head);
            let pos = order.iter().position(|&q| q == head.0).expect("point on box");
            let succ = order[(pos + 1) % order.len()];
            dart_leaving((succ, head.1))
        };

        let mut faces_per_root: BTreeMap<usize, usize> = BTreeMap::new();
        let dart_count = 2 * self.strings.len();
        let mut seen = vec![false; dart_count];
        for start in 0..dart_count {
            if seen[start] {
                continue;
            }
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                d = next_dart(d);
            }
            let root = find(&mut parent, box_id(dart_head(start)));
            *faces_per_root.entry(root).or_insert(0) += 1;
        }

        let mut vertices_per_root: BTreeMap<usize, usize> = BTreeMap::new();
        for b in 0..2 * self.genus {
            let root = find(&mut parent, b);
            *vertices_per_root.entry(root).or_insert(0) += 1;
        }
        let mut edges_per_root: BTreeMap<usize, usize> = BTreeMap::new();
        for &(a, _) in &self.strings {
            let root = find(&mut parent, box_id(a));
            *edges_per_root.entry(root).or_insert(0) += 1;
        }
        for (&root, &v) in &vertices_per_root {
            let e = edges_per_root.get(&root).copied().unwrap_or(0);
            // A component with no strings is a lone box: one face outside it.
            let f = faces_per_root.get(&root).copied().unwrap_or(1);
            let euler = v as i64 - e as i64 + f as i64;
            if euler != 2 {
                return Err(Error::Invalid(format!(
                    "rotation system is not planar: a component has Euler \
                     characteristic {euler}"
                )));
            }
        }
        Ok(())
    }
}

/// Follows the strings through the boxes to recover the upper circles, in
/// order of their smallest crossing. Each circle starts by exiting the `+`
/// copy of its smallest crossing.
fn upper_traversal(
    phd: &PlanarHeegaardDiagram,
    by_copy: &BTreeMap<End, usize>,
) -> Vec<Vec<CrossingId>> {
    let other_end = |end: End| -> End {
        let (a, b) = phd.strings[by_copy[&end]];
        if a == end {
            b
        } else {
            a
        }
    };
    let mut visited = BTreeSet::new();
    let mut circles = Vec::new();
    let all_points: BTreeSet<CrossingId> =
        phd.boxes.iter().flatten().copied().collect();
    for &start in &all_points {
        if visited.contains(&start) {
            continue;
        }
        let mut circle = vec![start];
        visited.insert(start);
        let mut leave: End = (start, Side::Plus);
        loop {
            let arrive = other_end(leave);
            if arrive == (start, Side::Minus) {
                break;
            }
            circle.push(arrive.0);
            visited.insert(arrive.0);
            leave = (arrive.0, arrive.1.opposite());
        }
        circles.push(circle);
    }
    circles
}

/// Reads the Heegaard code off a planar diagram. Lower circle t is the box
/// list of (t, +); upper circles come from string traversal, followed by one
/// empty circle per closed string. A crossing's sign is +1 exactly when its
/// upper circle exits through its `+` copy, which calibrates the tangent
/// frame rule of the abstract code against the planar evaluator.
pub fn derive_code(phd: &PlanarHeegaardDiagram) -> Result<HeegaardCode> {
    phd.validate()?;
    let by_copy = phd.string_at_each_copy()?;
    let circles = upper_traversal(phd, &by_copy);
    let mut signs: BTreeMap<CrossingId, i8> = BTreeMap::new();
    let other_end = |end: End| -> End {
        let (a, b) = phd.strings[by_copy[&end]];
        if a == end {
            b
        } else {
            a
        }
    };
    for circle in &circles {
        let start = circle[0];
        signs.insert(start, 1);
        let mut leave: End = (start, Side::Plus);
        loop {
            let arrive = other_end(leave);
            if arrive == (start, Side::Minus) {
                break;
            }
            // Exiting through the + copy means the frame is positive.
            signs.insert(arrive.0, if arrive.1 == Side::Minus { 1 } else { -1 });
            leave = (arrive.0, arrive.1.opposite());
        }
    }
    let mut upper = circles;
    upper.extend(std::iter::repeat_n(Vec::new(), phd.closed_strings.len()));
    let code = HeegaardCode {
        genus: phd.genus,
        lower: phd.boxes.clone(),
        upper,
        signs,
    };
    code.validate()?;
    Ok(code)
}

fn lens_planar(p: u32, q: u32) -> Result<PlanarHeegaardDiagram> {
    // Reuse the code builder's parameter validation.
    super::lens_code(p, q)?;
    let upper_order: Vec<CrossingId> = (0..p).map(|j| 1 + (j * q) % p).collect();
    let strings = (0..p as usize)
        .map(|j| {
            (
                (upper_order[j], Side::Plus),
                (upper_order[(j + 1) % p as usize], Side::Minus),
            )
        })
        .collect();
    Ok(PlanarHeegaardDiagram {
        genus: 1,
        boxes: vec![(1..=p).collect()],
        strings,
        closed_strings: vec![],
        outer_face: 0,
    })
}

/// Planar forms of the built-in catalog, under the same names as
/// [`super::builtin_code`].
pub fn builtin_planar(name: &str) -> Result<PlanarHeegaardDiagram> {
    let trimmed = name.trim();
    if let Some(inner) = trimmed.strip_prefix("stab(").and_then(|s| s.strip_suffix(')')) {
        let mut phd = builtin_planar(inner)?;
        let fresh = phd
            .boxes
            .iter()
            .flatten()
            .max()
            .map_or(1, |&m| m + 1);
        phd.genus += 1;
        phd.boxes.push(vec![fresh]);
        phd.strings.push(((fresh, Side::Plus), (fresh, Side::Minus)));
        return Ok(phd);
    }
    if let Some(args) = trimmed.strip_prefix("lens(").and_then(|s| s.strip_suffix(')')) {
        let (p, q) = super::parse_lens_args(args, trimmed)?;
        return lens_planar(p, q);
    }
    match trimmed {
        "s3_genus0" => Ok(PlanarHeegaardDiagram {
            genus: 0,
            boxes: vec![],
            strings: vec![],
            closed_strings: vec![],
            outer_face: 0,
        }),
        "s3_genus1" => Ok(PlanarHeegaardDiagram {
            genus: 1,
            boxes: vec![vec![1]],
            strings: vec![((1, Side::Plus), (1, Side::Minus))],
            closed_strings: vec![],
            outer_face: 0,
        }),
        "s2xs1" => Ok(PlanarHeegaardDiagram {
            genus: 1,
            boxes: vec![vec![]],
            strings: vec![],
            closed_strings: vec![0],
            outer_face: 0,
        }),
        "l31_connsum_s2xs1" => {
            let lens = lens_planar(3, 1)?;
            Ok(PlanarHeegaardDiagram {
                genus: 2,
                boxes: vec![lens.boxes[0].clone(), vec![]],
                strings: lens.strings,
                closed_strings: vec![0],
                outer_face: 0,
            })
        }
        _ => Err(Error::Parse(format!(
            "unknown planar diagram {name:?}; expected s3_genus0, s3_genus1, \
             s2xs1, lens(p,q), l31_connsum_s2xs1, or stab(...)"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::super::{builtin_code, codes_equivalent};
    use super::*;

    const CATALOG: [&str; 9] = [
        "s3_genus0",
        "s3_genus1",
        "s2xs1",
        "lens(2,1)",
        "lens(3,1)",
        "lens(3,2)",
        "lens(5,2)",
        "l31_connsum_s2xs1",
        "stab(lens(3,1))",
    ];

    #[test]
    fn catalog_planar_forms_validate() {
        for name in CATALOG {
            builtin_planar(name).unwrap().validate().unwrap_or_else(|e| {
                panic!("{name}: {e}");
            });
        }
    }

    #[test]
    fn derived_codes_match_the_stored_catalog_exactly() {
        for name in CATALOG {
            let derived = derive_code(&builtin_planar(name).unwrap()).unwrap();
            assert_eq!(derived, builtin_code(name).unwrap(), "{name}");
        }
    }

    #[test]
    fn box_rotation_only_moves_base_points() {
        let mut phd = builtin_planar("lens(3,2)").unwrap();
        phd.boxes[0].rotate_left(1);
        let derived = derive_code(&phd).unwrap();
        let stored = builtin_code("lens(3,2)").unwrap();
        assert_ne!(derived, stored);
        assert!(codes_equivalent(&derived, &stored));
    }

    #[test]
    fn crossing_strings_fail_the_euler_check() {
        // One circle of four points whose chords force a genus-1 embedding.
        let phd = PlanarHeegaardDiagram {
            genus: 1,
            boxes: vec![vec![1, 2, 3, 4]],
            strings: vec![
                ((1, Side::Plus), (3, Side::Minus)),
                ((3, Side::Plus), (2, Side::Minus)),
                ((2, Side::Plus), (4, Side::Minus)),
                ((4, Side::Plus), (1, Side::Minus)),
            ],
            closed_strings: vec![],
            outer_face: 0,
        };
        match phd.validate() {
            Err(Error::Invalid(msg)) => assert!(msg.contains("planar"), "{msg}"),
            other => panic!("expected planarity failure, got {other:?}"),
        }
    }

    #[test]
    fn wrong_circle_count_is_rejected() {
        // Two nested loops close into two upper circles on a genus-1 surface.
        let phd = PlanarHeegaardDiagram {
            genus: 1,
            boxes: vec![vec![1, 2]],
            strings: vec![
                ((1, Side::Plus), (1, Side::Minus)),
                ((2, Side::Plus), (2, Side::Minus)),
            ],
            closed_strings: vec![],
            outer_face: 0,
        };
        match phd.validate() {
            Err(Error::Invalid(msg)) => assert!(msg.contains("circles"), "{msg}"),
            other => panic!("expected circle-count failure, got {other:?}"),
        }
    }

    #[test]
    fn matching_violations_are_rejected() {
        let mut phd = builtin_planar("lens(2,1)").unwrap();
        phd.strings[0].0 = (9, Side::Plus);
        assert!(matches!(phd.validate(), Err(Error::Invalid(_))));
        let mut doubled = builtin_planar("lens(2,1)").unwrap();
        doubled.strings[1] = doubled.strings[0];
        assert!(matches!(doubled.validate(), Err(Error::Invalid(_))));
        let mut missing = builtin_planar("lens(2,1)").unwrap();
        missing.strings.pop();
        assert!(matches!(missing.validate(), Err(Error::Invalid(_))));
    }

    #[test]
    fn json_round_trip_is_byte_exact() {
        let phd = builtin_planar("l31_connsum_s2xs1").unwrap();
        let text = phd.to_json_string();
        assert_eq!(
            text,
            concat!(
                r#"{"genus":2,"boxes":[[1,2,3],[]],"strings":"#,
                r#"[[[1,"+"],[2,"-"]],[[1,"-"],[3,"+"]],[[2,"+"],[3,"-"]]],"#,
                r#""closed_strings":[0],"outer_face":0}"#
            )
        );
        let parsed = PlanarHeegaardDiagram::from_json_str(&text).unwrap();
        assert_eq!(parsed.to_json_string(), text);
        // Equal up to string normalization.
        assert_eq!(derive_code(&parsed).unwrap(), derive_code(&phd).unwrap());
    }

    #[test]
    fn stabilized_planar_diagram_matches_stabilized_code() {
        let phd = builtin_planar("stab(s2xs1)").unwrap();
        let derived = derive_code(&phd).unwrap();
        let direct = builtin_code("s2xs1").unwrap().stabilize();
        // Isolated circles sort last in derived codes, so compare up to
        // circle permutation.
        assert_ne!(derived, direct);
        assert!(codes_equivalent(&derived, &direct));
    }
}
