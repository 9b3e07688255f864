//! Finite groups given by multiplication tables.
//!
//! These feed two consumers: group algebras as the built-in family of Hopf
//! algebras, and the brute-force homomorphism-counting oracle used to
//! cross-check invariant values.

use crate::error::{Error, Result};

/// A finite group as a validated multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    name: String,
    elements: Vec<String>,
    mult: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl GroupTable {
    /// Builds and fully validates a group from element names and a table
    /// with `mult[a][b]` = index of the product.
    pub fn new(name: impl Into<String>, elements: Vec<String>, mult: Vec<Vec<usize>>) -> Result<GroupTable> {
        let name = name.into();
        let n = elements.len();
        if n == 0 {
            return Err(Error::Invalid(format!("group {name}: no elements")));
        }
        if mult.len() != n || mult.iter().any(|row| row.len() != n) {
            return Err(Error::Invalid(format!(
                "group {name}: multiplication table must be {n}x{n}"
            )));
        }
        for row in &mult {
            for &v in row {
                if v >= n {
                    return Err(Error::Invalid(format!(
                        "group {name}: table entry {v} out of range"
                    )));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mult[e][a] == a && mult[a][e] == a))
            .ok_or_else(|| Error::Invalid(format!("group {name}: no identity element")))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                        return Err(Error::Invalid(format!(
                            "group {name}: associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| mult[a][b] == identity && mult[b][a] == identity)
                .ok_or_else(|| {
                    Error::Invalid(format!("group {name}: element {a} has no inverse"))
                })?;
            inverse[a] = inv;
        }
        Ok(GroupTable {
            name,
            elements,
            mult,
            identity,
            inverse,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element_names(&self) -> &[String] {
        &self.elements
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// The cyclic group of order `m`.
    pub fn cyclic(m: usize) -> GroupTable {
        assert!(m >= 1, "cyclic group order must be positive");
        let elements = (0..m).map(|i| format!("g{i}")).collect();
        let mult = (0..m)
            .map(|a| (0..m).map(|b| (a + b) % m).collect())
            .collect();
        GroupTable::new(format!("Z{m}"), elements, mult).expect("cyclic tables are groups")
    }

    /// The symmetric group on three letters.
    pub fn s3() -> GroupTable {
        // Permutations of {1,2,3}; composition (p·q)(x) = p(q(x)).
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2], // e
            [1, 0, 2], // (12)
            [2, 1, 0], // (13)
            [0, 2, 1], // (23)
            [1, 2, 0], // (123)
            [2, 0, 1], // (132)
        ];
        let names = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"];
        let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
        let mult = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| index([p[q[0]], p[q[1]], p[q[2]]]))
                    .collect()
            })
            .collect();
        GroupTable::new("S3", names.iter().map(|s| s.to_string()).collect(), mult)
            .expect("S3 table is a group")
    }

    /// The dihedral group of order 8 (symmetries of the square).
    pub fn d4() -> GroupTable {
        // Elements r^i s^j with r^4 = s^2 = e and s r = r^{-1} s.
        let name = |i: usize, j: usize| match (i, j) {
            (0, 0) => "e".to_string(),
            (i, 0) => format!("r{i}"),
            (0, _) => "s".to_string(),
            (i, _) => format!("r{i}s"),
        };
        let mut elements = Vec::new();
        for j in 0..2 {
            for i in 0..4 {
                elements.push(name(i, j));
            }
        }
        let idx = |i: usize, j: usize| j * 4 + i;
        let mut mult = vec![vec![0usize; 8]; 8];
        for j1 in 0..2usize {
            for i1 in 0..4usize {
                for j2 in 0..2usize {
                    for i2 in 0..4usize {
                        // (r^i1 s^j1)(r^i2 s^j2) = r^{i1 + (-1)^{j1} i2} s^{j1+j2}
                        let i = if j1 == 0 { (i1 + i2) % 4 } else { (i1 + 4 - i2 % 4) % 4 };
                        let j = (j1 + j2) % 2;
                        mult[idx(i1, j1)][idx(i2, j2)] = idx(i, j);
                    }
                }
            }
        }
        GroupTable::new("D4", elements, mult).expect("D4 table is a group")
    }

    /// The quaternion group {±1, ±i, ±j, ±k}.
    pub fn q8() -> GroupTable {
        let elements: Vec<String> = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        // Encode x = (unit, sign) with unit ∈ {1, i, j, k} and index 2·unit + sign.
        // Unit products with result sign: i² = j² = k² = -1, ij = k, ji = -k, ...
        let unit_mul: [[(usize, bool); 4]; 4] = [
            [(0, false), (1, false), (2, false), (3, false)],
            [(1, false), (0, true), (3, false), (2, true)],
            [(2, false), (3, true), (0, true), (1, false)],
            [(3, false), (2, false), (1, true), (0, true)],
        ];
        let mut mult = vec![vec![0usize; 8]; 8];
        for a in 0..8 {
            for b in 0..8 {
                let (ua, sa) = (a / 2, a % 2 == 1);
                let (ub, sb) = (b / 2, b % 2 == 1);
                let (uc, flip) = unit_mul[ua][ub];
                let sc = sa ^ sb ^ flip;
                mult[a][b] = uc * 2 + usize::from(sc);
            }
        }
        GroupTable::new("Q8", elements, mult).expect("Q8 table is a group")
    }

    /// Looks up a built-in group by name: `Z1`..`Z12`, `S3`, `D4`, `Q8`.
    pub fn by_name(name: &str) -> Result<GroupTable> {
        if let Some(m) = name.strip_prefix('Z') {
            let m: usize = m
                .parse()
                .map_err(|_| Error::Parse(format!("unknown group {name:?}")))?;
            if !(1..=12).contains(&m) {
                return Err(Error::Invalid(format!(
                    "cyclic group order {m} outside the built-in range 1..=12"
                )));
            }
            return Ok(GroupTable::cyclic(m));
        }
        match name {
            "S3" => Ok(GroupTable::s3()),
            "D4" => Ok(GroupTable::d4()),
            "Q8" => Ok(GroupTable::q8()),
            _ => Err(Error::Parse(format!("unknown group {name:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_tables_are_groups() {
        for g in [
            GroupTable::cyclic(1),
            GroupTable::cyclic(7),
            GroupTable::s3(),
            GroupTable::d4(),
            GroupTable::q8(),
        ] {
            // Reconstruction re-runs the full validation.
            let rebuilt = GroupTable::new(
                g.name().to_string(),
                g.element_names().to_vec(),
                g.mult.clone(),
            );
            assert!(rebuilt.is_ok(), "{} failed validation", g.name());
        }
    }

    #[test]
    fn s3_is_nonabelian_of_order_six() {
        let g = GroupTable::s3();
        assert_eq!(g.order(), 6);
        let ab = (0..6).flat_map(|a| (0..6).map(move |b| (a, b)));
        assert!(ab.clone().any(|(a, b)| g.mul(a, b) != g.mul(b, a)));
        for a in 0..6 {
            assert_eq!(g.mul(a, g.inv(a)), g.identity());
        }
    }

    #[test]
    fn q8_has_unique_element_of_order_two() {
        let g = GroupTable::q8();
        let order_two: Vec<usize> = (0..8)
            .filter(|&a| a != g.identity() && g.mul(a, a) == g.identity())
            .collect();
        assert_eq!(order_two.len(), 1);
    }

    #[test]
    fn d4_squares() {
        let g = GroupTable::d4();
        let squares = (0..8).filter(|&a| g.mul(a, a) == g.identity()).count();
        // e, r², and the four reflections square to the identity.
        assert_eq!(squares, 6);
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(GroupTable::by_name("Z5").unwrap().order(), 5);
        assert_eq!(GroupTable::by_name("S3").unwrap().order(), 6);
        assert!(GroupTable::by_name("Z13").is_err());
        assert!(GroupTable::by_name("A5").is_err());
    }

    #[test]
    fn rejects_non_groups() {
        // A table with no identity.
        let bad = GroupTable::new(
            "bad",
            vec!["a".into(), "b".into()],
            vec![vec![1, 1], vec![1, 1]],
        );
        assert!(bad.is_err());
    }
}
