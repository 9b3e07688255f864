//! Directed graphs on the oriented 2-sphere and Fourier duality of their
//! vertex and face tensors.
//!
//! A [`SphericalGraph`] is a combinatorial rotation system: directed edges
//! (self-loops and multi-edges allowed), plus the clockwise cyclic order of
//! edge-ends around every vertex. Genus 0 is enforced by tracing the
//! boundary of a thickening and checking the Euler count per connected
//! component.
//!
//! Two tensors with one leg per edge are attached to a graph:
//!
//! * [`vertex_tensor`]: each vertex v hands the legs of one copy of
//!   Δ_(deg v)(h) to its edge-ends in clockwise order, and every edge
//!   combines its tail leg x and head leg y into x·S(y); scaled by
//!   δ^(−|V| + 2·#isolated).
//! * [`face_tensor`]: the same construction over the boundary components of
//!   the thickening, the left slot of each edge multiplied first; scaled by
//!   δ^(−#components + 2·#isolated).
//!
//! The two are exchanged by the leg-wise Fourier transform
//! ([`check_duality`]), and the cyclic n-gon specializes this to an
//! identity between shifted integral Sweedler legs and Fourier images of
//! Δ_n(φ) ([`ngon_check`]). [`graph_to_network`] rebuilds the thickened
//! graph as a 2-box network whose evaluation against explicit box labels
//! recovers the face tensor as a functional.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hopf::{Element, HopfAlgebra};
use crate::planar::{LabelSource, NetBox, TwoBoxNetwork};
use crate::tensor::{contract_network, LegRef, SparseTensor};

/// A directed edge; ends are numbered 0 (tail) and 1 (head).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub id: u32,
    pub from: u32,
    pub to: u32,
}

/// An edge-end: (edge id, end 0 or 1).
pub type EdgeEnd = (u32, u8);

/// Which side of a directed edge a face touches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum EdgeSide {
    Left,
    Right,
}

/// A directed graph with a clockwise rotation system, embedded in the
/// sphere.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphericalGraph {
    pub vertices: Vec<u32>,
    pub edges: Vec<GraphEdge>,
    /// Clockwise cyclic order of the edge-ends around each vertex. Every
    /// vertex appears as a key; isolated vertices map to an empty list.
    pub rotation: BTreeMap<u32, Vec<EdgeEnd>>,
}

/// A tensor with one algebra leg per edge, legs ordered like `edge_ids`.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeTensor {
    pub edge_ids: Vec<u32>,
    pub tensor: SparseTensor,
}

/// Outcome of comparing the face tensor with the Fourier image of the
/// vertex tensor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    pub equal: bool,
    pub differing_entries: usize,
    pub edges: usize,
}

/// Outcome of the two n-gon identities: integral Sweedler legs shifted one
/// way against Fourier images of Δ_n(φ), and shifted the other way against
/// the opposite comultiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NgonCheck {
    pub standard: bool,
    pub opposite: bool,
}

impl SphericalGraph {
    pub fn to_json_string(&self) -> Result<String> {
        serde_json::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json_str(text: &str) -> Result<SphericalGraph> {
        let graph: SphericalGraph =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        graph.validate()?;
        Ok(graph)
    }

    fn edge_by_id(&self) -> Result<BTreeMap<u32, &GraphEdge>> {
        let mut map = BTreeMap::new();
        for edge in &self.edges {
            if map.insert(edge.id, edge).is_some() {
                return Err(Error::Invalid(format!("duplicate edge id {}", edge.id)));
            }
        }
        Ok(map)
    }

    /// Vertex carrying a given edge-end.
    fn end_vertex(edge: &GraphEdge, end: u8) -> u32 {
        if end == 0 {
            edge.from
        } else {
            edge.to
        }
    }

    /// Checks the rotation system: every end listed exactly once at its own
    /// vertex, and every connected component embeds with genus 0.
    pub fn validate(&self) -> Result<()> {
        let vertex_set: BTreeSet<u32> = self.vertices.iter().copied().collect();
        if vertex_set.len() != self.vertices.len() {
            return Err(Error::Invalid("duplicate vertex id".into()));
        }
        let edge_by_id = self.edge_by_id()?;
        for edge in &self.edges {
            for v in [edge.from, edge.to] {
                if !vertex_set.contains(&v) {
                    return Err(Error::Invalid(format!(
                        "edge {} touches unknown vertex {v}",
                        edge.id
                    )));
                }
            }
        }
        let rotation_keys: BTreeSet<u32> = self.rotation.keys().copied().collect();
        if rotation_keys != vertex_set {
            return Err(Error::Invalid(
                "rotation must list every vertex exactly once".into(),
            ));
        }
        let mut seen: BTreeSet<EdgeEnd> = BTreeSet::new();
        for (&v, ends) in &self.rotation {
            for &(e, i) in ends {
                let edge = edge_by_id.get(&e).ok_or_else(|| {
                    Error::Invalid(format!("rotation at vertex {v} names unknown edge {e}"))
                })?;
                if i > 1 {
                    return Err(Error::Invalid(format!(
                        "rotation at vertex {v} has invalid end ({e}, {i})"
                    )));
                }
                if Self::end_vertex(edge, i) != v {
                    return Err(Error::Invalid(format!(
                        "inconsistent rotation: end ({e}, {i}) does not lie at vertex {v}"
                    )));
                }
                if !seen.insert((e, i)) {
                    return Err(Error::Invalid(format!(
                        "inconsistent rotation: end ({e}, {i}) listed twice"
                    )));
                }
            }
        }
        if seen.len() != 2 * self.edges.len() {
            return Err(Error::Invalid(
                "inconsistent rotation: some edge-ends are missing".into(),
            ));
        }
        // Genus check per connected component: vertices − edges + boundary
        // walks must equal 2 wherever there is at least one edge.
        let components = self.trace_boundary_walks()?;
        let mut component_of: BTreeMap<u32, u32> = BTreeMap::new();
        for v in &self.vertices {
            component_of.insert(*v, *v);
        }
        fn find(map: &mut BTreeMap<u32, u32>, mut v: u32) -> u32 {
            while map[&v] != v {
                let up = map[&map[&v]];
                map.insert(v, up);
                v = up;
            }
            v
        }
        for edge in &self.edges {
            let (a, b) = (
                find(&mut component_of, edge.from),
                find(&mut component_of, edge.to),
            );
            component_of.insert(a, b);
        }
        let mut vertices: BTreeMap<u32, i64> = BTreeMap::new();
        let mut edges: BTreeMap<u32, i64> = BTreeMap::new();
        let mut walks: BTreeMap<u32, i64> = BTreeMap::new();
        for v in &self.vertices {
            let root = find(&mut component_of, *v);
            *vertices.entry(root).or_insert(0) += 1;
        }
        for edge in &self.edges {
            let root = find(&mut component_of, edge.from);
            *edges.entry(root).or_insert(0) += 1;
        }
        let edge_by_id = self.edge_by_id()?;
        for walk in &components {
            if let Some(&(e, _)) = walk.first() {
                let root = find(&mut component_of, edge_by_id[&e].from);
                *walks.entry(root).or_insert(0) += 1;
            }
        }
        for (&root, &v) in &vertices {
            let e = edges.get(&root).copied().unwrap_or(0);
            if e == 0 {
                continue;
            }
            let f = walks.get(&root).copied().unwrap_or(0);
            if v - e + f != 2 {
                return Err(Error::Invalid(format!(
                    "rotation system is not spherical: component Euler characteristic {}",
                    v - e + f
                )));
            }
        }
        Ok(())
    }

    /// The boundary components of a thickening that pass along at least one
    /// edge, each as its clockwise (edge, side) sequence. Walking leaves an
    /// end (e, 0) along the right side of e and an end (e, 1) along the
    /// left side; on arrival it turns to the previous end in the clockwise
    /// rotation.
    fn trace_boundary_walks(&self) -> Result<Vec<Vec<(u32, EdgeSide)>>> {
        let mut position: BTreeMap<EdgeEnd, (u32, usize)> = BTreeMap::new();
        for (&v, ends) in &self.rotation {
            for (i, &end) in ends.iter().enumerate() {
                position.insert(end, (v, i));
            }
        }
        let mut walks = Vec::new();
        let mut visited: BTreeSet<EdgeEnd> = BTreeSet::new();
        for edge in &self.edges {
            for start_end in 0..2u8 {
                let start: EdgeEnd = (edge.id, start_end);
                if visited.contains(&start) {
                    continue;
                }
                let mut walk = Vec::new();
                let mut leaving = start;
                loop {
                    visited.insert(leaving);
                    let side = if leaving.1 == 0 {
                        EdgeSide::Right
                    } else {
                        EdgeSide::Left
                    };
                    walk.push((leaving.0, side));
                    let arrival: EdgeEnd = (leaving.0, 1 - leaving.1);
                    let (v, i) = *position.get(&arrival).ok_or_else(|| {
                        Error::Invalid(format!(
                            "inconsistent rotation: end ({}, {}) is missing",
                            arrival.0, arrival.1
                        ))
                    })?;
                    let ring = &self.rotation[&v];
                    leaving = ring[(i + ring.len() - 1) % ring.len()];
                    if leaving == start {
                        break;
                    }
                    if visited.contains(&leaving) {
                        return Err(Error::Invalid(
                            "inconsistent rotation: boundary walk does not close".into(),
                        ));
                    }
                }
                walks.push(walk);
            }
        }
        Ok(walks)
    }

    /// All boundary components of the thickening, including one empty
    /// component per isolated vertex.
    pub fn trace_faces(&self) -> Result<Vec<Vec<(u32, EdgeSide)>>> {
        self.validate()?;
        let mut walks = self.trace_boundary_walks()?;
        for v in &self.vertices {
            if self.rotation[v].is_empty() {
                walks.push(Vec::new());
            }
        }
        Ok(walks)
    }

    fn isolated_vertex_count(&self) -> usize {
        self.vertices
            .iter()
            .filter(|v| self.rotation[v].is_empty())
            .count()
    }
}

/// Assembles one edge-legged tensor from a family of groups: each group
/// hands the legs of Δ_(group size)(h) to its slots in order, and each edge
/// multiplies its first slot with the antipode of its second. `slots` maps
/// an edge id to ((group, position) of the first slot, same for the second).
fn grouped_edge_tensor(
    algebra: &HopfAlgebra,
    groups: &[usize],
    slots: &BTreeMap<u32, ((usize, usize), (usize, usize))>,
    edge_order: &[u32],
    scale_exponent: i64,
) -> Result<EdgeTensor> {
    let scale = algebra.delta_power(scale_exponent)?;
    if edge_order.is_empty() {
        return Ok(EdgeTensor {
            edge_ids: Vec::new(),
            tensor: SparseTensor::scalar(scale),
        });
    }
    let mut tensors: Vec<SparseTensor> = Vec::new();
    for &size in groups {
        tensors.push(algebra.sweedler_tensor(algebra.integral_tensor(), size)?);
    }
    let combine = algebra.mult_antipode_tensor()?;
    let mut edges: Vec<(LegRef, LegRef)> = Vec::new();
    let mut combine_index: BTreeMap<u32, usize> = BTreeMap::new();
    for &e in edge_order {
        let ((g1, p1), (g2, p2)) = slots[&e];
        let idx = tensors.len();
        tensors.push(combine.clone());
        combine_index.insert(e, idx);
        edges.push(((g1, p1), (idx, 0)));
        edges.push(((g2, p2), (idx, 1)));
    }
    let (raw, labels) = contract_network(tensors, &edges)?;
    // Order the remaining legs (one per edge) like `edge_order`.
    let mut desired: BTreeMap<usize, usize> = BTreeMap::new();
    for (rank, &e) in edge_order.iter().enumerate() {
        desired.insert(combine_index[&e], rank);
    }
    let mut sigma = vec![0usize; labels.len()];
    for (pos, (tensor_idx, _)) in labels.iter().enumerate() {
        sigma[pos] = desired[tensor_idx];
    }
    Ok(EdgeTensor {
        edge_ids: edge_order.to_vec(),
        tensor: raw.permute_legs(&sigma)?.scale(&scale),
    })
}

/// The vertex tensor V(G, H): one integral Sweedler copy per vertex,
/// distributed clockwise, edge legs combined tail-first, scaled by
/// δ^(−|V| + 2·#isolated vertices).
pub fn vertex_tensor(graph: &SphericalGraph, algebra: &HopfAlgebra) -> Result<EdgeTensor> {
    graph.validate()?;
    let mut groups = Vec::new();
    let mut group_position: BTreeMap<EdgeEnd, (usize, usize)> = BTreeMap::new();
    for v in &graph.vertices {
        let ends = &graph.rotation[v];
        if ends.is_empty() {
            continue;
        }
        let g = groups.len();
        groups.push(ends.len());
        for (i, &end) in ends.iter().enumerate() {
            group_position.insert(end, (g, i));
        }
    }
    let mut slots = BTreeMap::new();
    let edge_order: Vec<u32> = graph.edges.iter().map(|e| e.id).collect();
    for edge in &graph.edges {
        slots.insert(
            edge.id,
            (group_position[&(edge.id, 0)], group_position[&(edge.id, 1)]),
        );
    }
    let exponent = -(graph.vertices.len() as i64) + 2 * graph.isolated_vertex_count() as i64;
    grouped_edge_tensor(algebra, &groups, &slots, &edge_order, exponent)
}

/// The face tensor F(G, A): one integral Sweedler copy per boundary
/// component of the thickening, distributed clockwise, edge legs combined
/// left-side-first, scaled by δ^(−#components + 2·#isolated vertices).
/// Passing the dual algebra yields the tensor of interest F(G, H*).
pub fn face_tensor(graph: &SphericalGraph, algebra: &HopfAlgebra) -> Result<EdgeTensor> {
    graph.validate()?;
    let walks = graph.trace_faces()?;
    let mut groups = Vec::new();
    let mut group_position: BTreeMap<(u32, EdgeSide), (usize, usize)> = BTreeMap::new();
    for walk in &walks {
        if walk.is_empty() {
            continue;
        }
        let g = groups.len();
        groups.push(walk.len());
        for (i, &slot) in walk.iter().enumerate() {
            group_position.insert(slot, (g, i));
        }
    }
    let mut slots = BTreeMap::new();
    let edge_order: Vec<u32> = graph.edges.iter().map(|e| e.id).collect();
    for edge in &graph.edges {
        slots.insert(
            edge.id,
            (
                group_position[&(edge.id, EdgeSide::Left)],
                group_position[&(edge.id, EdgeSide::Right)],
            ),
        );
    }
    let exponent = -(walks.len() as i64) + 2 * graph.isolated_vertex_count() as i64;
    grouped_edge_tensor(algebra, &groups, &slots, &edge_order, exponent)
}

/// Compares the face tensor of the dual with the leg-wise Fourier image of
/// the vertex tensor. A mismatch is a result, not an error.
pub fn check_duality(graph: &SphericalGraph, algebra: &HopfAlgebra) -> Result<DualityReport> {
    let vertex = vertex_tensor(graph, algebra)?;
    let face = face_tensor(graph, &algebra.dual())?;
    let fm = algebra.fourier_matrix()?;
    let mut image = vertex.tensor;
    for leg in 0..image.num_legs() {
        image = HopfAlgebra::apply_map_to_leg(&image, leg, &fm)?;
    }
    let diff = image.sub(&face.tensor)?;
    Ok(DualityReport {
        equal: diff.num_entries() == 0,
        differing_entries: diff.num_entries(),
        edges: face.edge_ids.len(),
    })
}

/// Builds the n-leg tensor with slot j carrying h^(j+shift)₁ S h^(j+1-shift)₂
/// over n independent integral copies; shift 0 gives the standard n-gon
/// side, shift 1 the opposite one.
fn shifted_integral_legs(
    algebra: &HopfAlgebra,
    n: usize,
    shift: usize,
) -> Result<SparseTensor> {
    let mut tensors = Vec::new();
    for _ in 0..n {
        tensors.push(algebra.sweedler_tensor(algebra.integral_tensor(), 2)?);
    }
    let combine = algebra.mult_antipode_tensor()?;
    let mut edges = Vec::new();
    for j in 0..n {
        let idx = tensors.len();
        tensors.push(combine.clone());
        edges.push((((j + shift) % n, 0usize), (idx, 0usize)));
        edges.push((((j + 1 - shift) % n, 1usize), (idx, 1usize)));
    }
    let (raw, labels) = contract_network(tensors, &edges)?;
    let mut sigma = vec![0usize; labels.len()];
    for (pos, (tensor_idx, _)) in labels.iter().enumerate() {
        sigma[pos] = tensor_idx - n;
    }
    raw.permute_legs(&sigma)
}

/// Verifies the two cyclic identities relating shifted integral legs to
/// δ^n-scaled Fourier images of Δ_n(φ) and of its opposite.
pub fn ngon_check(n: usize, algebra: &HopfAlgebra) -> Result<NgonCheck> {
    if n == 0 {
        return Err(Error::Invalid("the cyclic identity needs n >= 1".into()));
    }
    let dual = algebra.dual();
    let fm_dual = dual.fourier_matrix()?;
    let scale = algebra.delta_power(n as i64)?;
    let rhs_of = |t: &SparseTensor| -> Result<SparseTensor> {
        let mut image = t.clone();
        for leg in 0..image.num_legs() {
            image = HopfAlgebra::apply_map_to_leg(&image, leg, &fm_dual)?;
        }
        Ok(image.scale(&scale))
    };
    let phi_legs = dual.sweedler_tensor(dual.integral_tensor(), n)?;
    let standard = shifted_integral_legs(algebra, n, 0)?;
    let standard_holds = standard == rhs_of(&phi_legs)?;
    let reversed: Vec<usize> = (0..n).rev().collect();
    let phi_op = phi_legs.permute_legs(&reversed)?;
    let opposite = shifted_integral_legs(algebra, n, 1)?;
    let opposite_holds = opposite == rhs_of(&phi_op)?;
    Ok(NgonCheck {
        standard: standard_holds,
        opposite: opposite_holds,
    })
}

/// Rebuilds the thickened graph as a 2-box network: one box per edge in
/// declaration order, its star strand running along the left side of the
/// edge, strings following the vertex disks, and one free loop per isolated
/// vertex. Evaluating the network on explicit labels recovers the face
/// tensor of the dual as a functional.
pub fn graph_to_network(
    graph: &SphericalGraph,
    labels: &[Element],
) -> Result<TwoBoxNetwork> {
    graph.validate()?;
    if labels.len() != graph.edges.len() {
        return Err(Error::Invalid(format!(
            "{} labels supplied for {} edges",
            labels.len(),
            graph.edges.len()
        )));
    }
    let box_of: BTreeMap<u32, usize> = graph
        .edges
        .iter()
        .enumerate()
        .map(|(i, e)| (e.id, i))
        .collect();
    let boxes = labels
        .iter()
        .map(|x| NetBox {
            label: LabelSource::Explicit(x.clone()),
        })
        .collect();
    // Boundary arcs around each vertex disk become strings. Arrival at an
    // end is an exit corner of its box (star exit 0 at the tail, other exit
    // 2 at the head); the walk turns to the previous end clockwise, whose
    // box is entered at the matching entry corner (other entry 3 at the
    // tail, star entry 1 at the head).
    let mut strings = Vec::new();
    for ends in graph.rotation.values() {
        for (i, &(e, end)) in ends.iter().enumerate() {
            let previous = ends[(i + ends.len() - 1) % ends.len()];
            let from = (box_of[&e], if end == 0 { 0 } else { 2 });
            let to = (
                box_of[&previous.0],
                if previous.1 == 0 { 3 } else { 1 },
            );
            strings.push((from, to));
        }
    }
    Ok(TwoBoxNetwork {
        boxes,
        strings,
        free_loops: graph.isolated_vertex_count(),
    })
}

/// Named example graphs: `ngon(n)` for the cyclically oriented n-gon,
/// `isolated(k)` for k bare vertices, and `mixed_multigraph` for the
/// two-component fixture with a tree, a double edge, and an isolated
/// vertex.
pub fn builtin_graph(name: &str) -> Result<SphericalGraph> {
    if let Some(arg) = name
        .strip_prefix("ngon(")
        .and_then(|rest| rest.strip_suffix(')'))
    {
        let n: u32 = arg
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad n-gon size {arg:?}")))?;
        if n == 0 {
            return Err(Error::Parse("n-gon needs n >= 1".into()));
        }
        let vertices: Vec<u32> = (0..n).collect();
        let edges: Vec<GraphEdge> = (0..n)
            .map(|i| GraphEdge {
                id: i,
                from: i,
                to: (i + 1) % n,
            })
            .collect();
        let rotation = (0..n)
            .map(|i| (i, vec![(i, 0u8), ((i + n - 1) % n, 1u8)]))
            .collect();
        return Ok(SphericalGraph {
            vertices,
            edges,
            rotation,
        });
    }
    if let Some(arg) = name
        .strip_prefix("isolated(")
        .and_then(|rest| rest.strip_suffix(')'))
    {
        let k: u32 = arg
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad vertex count {arg:?}")))?;
        let vertices: Vec<u32> = (1..=k).collect();
        let rotation = vertices.iter().map(|&v| (v, Vec::new())).collect();
        return Ok(SphericalGraph {
            vertices,
            edges: Vec::new(),
            rotation,
        });
    }
    if name == "mixed_multigraph" {
        let edge = |id, from, to| GraphEdge { id, from, to };
        let rotation: BTreeMap<u32, Vec<EdgeEnd>> = [
            (1, vec![(1, 0)]),
            (2, vec![(1, 1), (2, 0), (3, 0)]),
            (3, vec![(2, 1)]),
            (4, vec![(3, 1)]),
            (5, vec![(4, 0), (5, 1), (7, 0)]),
            (6, vec![(4, 1), (6, 0), (5, 0)]),
            (7, vec![(6, 1), (7, 1)]),
            (8, vec![]),
        ]
        .into_iter()
        .collect();
        return Ok(SphericalGraph {
            vertices: (1..=8).collect(),
            edges: vec![
                edge(1, 1, 2),
                edge(2, 2, 3),
                edge(3, 2, 4),
                edge(4, 5, 6),
                edge(5, 6, 5),
                edge(6, 6, 7),
                edge(7, 5, 7),
            ],
            rotation,
        });
    }
    Err(Error::Parse(format!("unknown builtin graph {name:?}")))
}

/// Deterministically samples connected spherical graphs with at most
/// `max_edges` edges: random endpoints and rotations, keeping only
/// rotation systems that embed with genus 0.
pub fn random_spherical_graphs(
    seed: u64,
    count: usize,
    max_edges: usize,
) -> Vec<SphericalGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut graphs = Vec::new();
    while graphs.len() < count {
        let nv = rng.random_range(1..=4u32);
        let ne = rng.random_range(1..=max_edges as u32);
        let edges: Vec<GraphEdge> = (0..ne)
            .map(|id| GraphEdge {
                id,
                from: rng.random_range(0..nv),
                to: rng.random_range(0..nv),
            })
            .collect();
        let mut rotation: BTreeMap<u32, Vec<EdgeEnd>> =
            (0..nv).map(|v| (v, Vec::new())).collect();
        for edge in &edges {
            rotation.get_mut(&edge.from).expect("vertex").push((edge.id, 0));
            rotation.get_mut(&edge.to).expect("vertex").push((edge.id, 1));
        }
        for ends in rotation.values_mut() {
            ends.shuffle(&mut rng);
        }
        let graph = SphericalGraph {
            vertices: (0..nv).collect(),
            edges,
            rotation,
        };
        if graph.validate().is_err() {
            continue;
        }
        // Keep connected graphs only.
        let walks = match graph.trace_faces() {
            Ok(walks) => walks,
            Err(_) => continue,
        };
        if walks.iter().any(|w| w.is_empty()) {
            continue;
        }
        let mut reached: BTreeSet<u32> = BTreeSet::new();
        reached.insert(0);
        let mut grew = true;
        while grew {
            grew = false;
            for edge in &graph.edges {
                if reached.contains(&edge.from) != reached.contains(&edge.to) {
                    reached.insert(edge.from);
                    reached.insert(edge.to);
                    grew = true;
                }
            }
        }
        if reached.len() as u32 == nv {
            graphs.push(graph);
        }
    }
    graphs
}
