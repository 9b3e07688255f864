//! Acceptance suite: one test per release criterion. Each test prints a
//! single PASS line (visible with --nocapture) stating what it verified;
//! a failure panics with the offending case.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use statesum::graphdual::{
    builtin_graph, check_duality, face_tensor, graph_to_network, ngon_check,
    random_spherical_graphs,
};
use statesum::groups::GroupTable;
use statesum::heegaard::{builtin_code, builtin_planar, derive_code, Layer};
use statesum::hopf::{builtin_hopf, identity_suite, Element, HopfAlgebra};
use statesum::kuperberg::{invariant, invariant_oracle_group};
use statesum::planar::{build_ntilde, planar_invariant};
use statesum::scalars::{project_to_base, BaseRing, BaseScalar};

fn q(name: &str) -> HopfAlgebra {
    builtin_hopf(name, BaseRing::Q).unwrap()
}

fn rational(n: u64) -> BaseScalar {
    BaseScalar::from_u64(n, BaseRing::Q)
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The named catalog plus every built-in lens space with p ≤ 5.
fn base_diagram_names() -> Vec<String> {
    let mut names: Vec<String> = ["s3_genus0", "s3_genus1", "s2xs1", "l31_connsum_s2xs1"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for p in 2..=5u32 {
        for q in 1..p {
            if gcd(p, q) == 1 {
                names.push(format!("lens({p},{q})"));
            }
        }
    }
    names
}

/// Base diagrams together with one stabilized variant of each.
fn diagram_names_with_stabilizations() -> Vec<String> {
    let base = base_diagram_names();
    let stabs: Vec<String> = base.iter().map(|n| format!("stab({n})")).collect();
    base.into_iter().chain(stabs).collect()
}

#[test]
fn a1_state_sum_matches_group_hom_counts() {
    let names = diagram_names_with_stabilizations();
    let groups = ["Z2", "Z3", "Z4", "Z5", "Z6", "S3"];
    let cases: Vec<(String, &str)> = names
        .iter()
        .flat_map(|n| groups.iter().map(move |g| (n.clone(), *g)))
        .collect();

    let checked: usize = cases
        .par_iter()
        .map(|(name, group)| {
            let code = builtin_code(name).unwrap();
            let table = GroupTable::by_name(group).unwrap();
            let algebra_name = match *group {
                "S3" => "S3GroupAlgebra".to_string(),
                zm => format!("ZmodGroupAlgebra({})", &zm[1..]),
            };
            let value = invariant(&code, &q(&algebra_name)).unwrap().value;
            let homs = invariant_oracle_group(&code, &table).unwrap();
            assert_eq!(
                value,
                rational(homs),
                "{name} over Q[{group}]: invariant {} != hom count {homs}",
                value.to_exact_string()
            );
            1
        })
        .sum();

    assert_eq!(checked, names.len() * groups.len());
    println!("PASS: invariant = homomorphism count on {checked} diagram/group pairs");
}

#[test]
fn a2_named_invariant_values_are_exact() {
    let cases = [
        ("s3_genus1", "ZmodGroupAlgebra(5)", 1u64),
        ("s2xs1", "S3GroupAlgebra", 6),
        ("lens(3,1)", "ZmodGroupAlgebra(3)", 3),
        ("lens(2,1)", "ZmodGroupAlgebra(2)", 2),
        ("l31_connsum_s2xs1", "ZmodGroupAlgebra(3)", 9),
    ];
    for (diagram, algebra, expected) in cases {
        let code = builtin_code(diagram).unwrap();
        let value = invariant(&code, &q(algebra)).unwrap().value;
        assert_eq!(
            value,
            rational(expected),
            "{diagram} over {algebra}: got {}, expected {expected}",
            value.to_exact_string()
        );
    }
    println!("PASS: {} named invariant values are exactly right", cases.len());
}

/// The planar diagrams and algebras of the two-evaluation cross-check.
fn cross_check_cases() -> (Vec<String>, Vec<HopfAlgebra>) {
    let diagrams = vec![
        "l31_connsum_s2xs1".to_string(),
        "lens(2,1)".to_string(),
        "lens(3,1)".to_string(),
        "lens(4,1)".to_string(),
    ];
    let algebras = vec![
        q("ZmodGroupAlgebra(2)"),
        q("ZmodGroupAlgebra(3)"),
        q("S3GroupAlgebra"),
        q("dual(ZmodGroupAlgebra(3))"),
    ];
    (diagrams, algebras)
}

#[test]
fn a3_network_and_state_sum_agree_on_planar_forms() {
    let (diagrams, algebras) = cross_check_cases();
    let mut checked = 0;
    for name in &diagrams {
        let phd = builtin_planar(name).unwrap();
        let code = derive_code(&phd).unwrap();
        for algebra in &algebras {
            let network = planar_invariant(&phd, algebra).unwrap();
            let state_sum = invariant(&code, algebra).unwrap().value;
            assert_eq!(
                network,
                state_sum,
                "{name} over {}: network {} != state sum {}",
                algebra.name(),
                network.to_exact_string(),
                state_sum.to_exact_string()
            );
            checked += 1;
        }
    }
    assert_eq!(checked, 16);
    println!("PASS: network and state-sum evaluations agree on {checked} diagram/algebra pairs");
}

#[test]
fn a4_loop_counts_follow_the_diagram_shape() {
    for name in diagram_names_with_stabilizations() {
        let phd = builtin_planar(&name).unwrap();
        let network = build_ntilde(&phd).unwrap();
        let loops = network.trace_loops().unwrap();
        let marked: usize = phd.boxes.iter().map(|b| b.len()).sum();
        let expected = 2 * phd.genus + marked + 2 * phd.closed_strings.len();
        assert_eq!(
            loops.total(),
            expected,
            "{name}: {} loops, expected 2g + k + 2c = {expected}",
            loops.total()
        );
        if name == "l31_connsum_s2xs1" {
            assert_eq!(loops.total(), 9, "genus-2 connected sum must give 9 loops");
        }
    }
    println!("PASS: loop counts equal 2g + k + 2c across the catalog (connected sum: 9)");
}

#[test]
fn a5_moves_preserve_the_invariant() {
    let mut cases: Vec<(String, String)> = Vec::new();
    for name in base_diagram_names() {
        for algebra in ["ZmodGroupAlgebra(2)", "ZmodGroupAlgebra(3)", "ZmodGroupAlgebra(4)"] {
            cases.push((name.clone(), algebra.to_string()));
        }
    }
    for name in ["s3_genus1", "s2xs1", "lens(2,1)", "lens(3,1)"] {
        cases.push((name.to_string(), "S3GroupAlgebra".to_string()));
    }

    let equalities: usize = cases
        .par_iter()
        .map(|(name, algebra_name)| {
            let algebra = q(algebra_name);
            let code = builtin_code(name).unwrap();
            let reference = invariant(&code, &algebra).unwrap().value;
            let mut moved = Vec::new();
            for (layer, circles) in [(Layer::Lower, &code.lower), (Layer::Upper, &code.upper)] {
                for (index, circle) in circles.iter().enumerate() {
                    for steps in 1..circle.len().max(1) {
                        moved.push(code.rotate_basepoint(layer, index, steps).unwrap());
                    }
                    moved.push(code.reverse_circle(layer, index).unwrap());
                }
            }
            moved.push(code.stabilize());

            for (i, variant) in moved.iter().enumerate() {
                let value = invariant(variant, &algebra).unwrap().value;
                assert_eq!(
                    value,
                    reference,
                    "{name} over {algebra_name}: move {i} changed the value to {}",
                    value.to_exact_string()
                );
            }
            moved.len()
        })
        .sum();

    assert!(
        equalities >= 200,
        "only {equalities} move equalities checked; need at least 200"
    );
    println!("PASS: the invariant survived {equalities} base-point rotations, reversals, and stabilizations");
}

#[test]
fn a6_hopf_identity_suite_passes_on_the_catalog() {
    let mut names: Vec<String> = (2..=6)
        .map(|m| format!("ZmodGroupAlgebra({m})"))
        .collect();
    names.extend(["S3GroupAlgebra", "D4GroupAlgebra", "Q8GroupAlgebra"].map(String::from));
    let duals: Vec<String> = names.iter().map(|n| format!("dual({n})")).collect();
    names.extend(duals);

    let checks: usize = names
        .par_iter()
        .enumerate()
        .map(|(i, name)| {
            let algebra = q(name);
            let mut rng = ChaCha8Rng::seed_from_u64(40 + i as u64);
            let report = identity_suite(&algebra, &mut rng, 100).unwrap();
            assert!(
                report.all_pass(),
                "{name}: failing identities: {:?}",
                report.failures()
            );
            report.checks.len()
        })
        .sum();

    println!(
        "PASS: {checks} identity checks hold over {} algebras (catalog and duals, 100 random elements each)",
        names.len()
    );
}

#[test]
fn a7_graph_duality_and_cyclic_identities_hold() {
    let algebras = vec![
        q("ZmodGroupAlgebra(2)"),
        q("ZmodGroupAlgebra(3)"),
        q("S3GroupAlgebra"),
        q("dual(ZmodGroupAlgebra(2))"),
        q("dual(ZmodGroupAlgebra(3))"),
        q("dual(S3GroupAlgebra)"),
    ];

    let mut graphs = vec![builtin_graph("mixed_multigraph").unwrap()];
    graphs.extend(random_spherical_graphs(5, 25, 4));
    assert_eq!(graphs.len(), 26);

    let duality_checks: usize = graphs
        .par_iter()
        .enumerate()
        .map(|(i, graph)| {
            for algebra in &algebras {
                let outcome = check_duality(graph, algebra).unwrap();
                assert!(
                    outcome.equal,
                    "graph {i} over {}: {} of {} edge tensors differ",
                    algebra.name(),
                    outcome.differing_entries,
                    outcome.edges
                );
            }
            algebras.len()
        })
        .sum();

    let ngon_checks: usize = (1..=4usize)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&n| {
            for algebra in &algebras {
                let outcome = ngon_check(n, algebra).unwrap();
                assert!(
                    outcome.standard && outcome.opposite,
                    "cycle of length {n} over {}: standard {}, opposite {}",
                    algebra.name(),
                    outcome.standard,
                    outcome.opposite
                );
            }
            2 * algebras.len()
        })
        .sum();

    // The network bridge: evaluating the edge network of a labeled graph
    // recovers the face functional applied to the labels.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let small = random_spherical_graphs(7, 5, 3);
    let mut bridge_checks = 0;
    for graph in &small {
        for algebra in [&algebras[1], &algebras[2]] {
            for _ in 0..2 {
                let labels: Vec<Element> = graph
                    .edges
                    .iter()
                    .map(|_| algebra.random_element(&mut rng))
                    .collect();
                let network = graph_to_network(graph, &labels).unwrap();
                let direct = network.evaluate(algebra).unwrap();
                let face = face_tensor(graph, &algebra.dual()).unwrap();
                let mut applied = face.tensor.clone();
                for label in &labels {
                    applied = applied.contract(label.tensor(), &[(0, 0)]).unwrap();
                }
                assert_eq!(
                    direct,
                    applied.as_scalar().unwrap(),
                    "bridge mismatch over {}",
                    algebra.name()
                );
                bridge_checks += 1;
            }
        }
    }
    assert_eq!(bridge_checks, 20);

    println!(
        "PASS: {duality_checks} duality checks, {ngon_checks} cyclic identities, {bridge_checks} labeled-network bridges"
    );
}

#[test]
fn a8_values_are_exact_before_projection() {
    let (diagrams, algebras) = cross_check_cases();
    let mut checked = 0;
    for name in &diagrams {
        let phd = builtin_planar(name).unwrap();
        let code = derive_code(&phd).unwrap();
        let marked: usize = phd.boxes.iter().map(|b| b.len()).sum();
        for algebra in &algebras {
            // Network route: the raw evaluation times the normalization
            // must already be a pure base-field value.
            let network = build_ntilde(&phd).unwrap();
            let raw = network.evaluate(algebra).unwrap();
            let exponent = -2 * (phd.genus as i64) - marked as i64;
            let scaled = raw.mul(&algebra.delta_power(exponent).unwrap());
            assert!(
                scaled.delta_part().is_zero(),
                "{name} over {}: network value {} kept a δ component",
                algebra.name(),
                scaled.to_exact_string()
            );

            // State-sum route: reassemble the reported factors and check the
            // δ component vanishes before projection reduces the value.
            let result = invariant(&code, algebra).unwrap();
            let mut total = algebra
                .delta_power(
                    -2 * (result.summary.genus as i64) + 2 * (result.summary.isolated_upper as i64),
                )
                .unwrap();
            for factor in &result.circle_factors {
                total = total.mul(factor);
            }
            assert!(
                total.delta_part().is_zero(),
                "{name} over {}: state sum {} kept a δ component",
                algebra.name(),
                total.to_exact_string()
            );
            assert_eq!(project_to_base(&total).unwrap(), result.value);
            assert_eq!(project_to_base(&scaled).unwrap(), result.value);
            checked += 1;
        }
    }
    assert_eq!(checked, 16);
    println!("PASS: {checked} invariant computations carried no δ component into projection");
}
