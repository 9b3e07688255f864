//! Sparse multi-leg tensors over [`DeltaScalar`] and exact contraction.
//!
//! A tensor has an ordered list of legs, each with a dimension; entries are
//! stored sparsely with no explicit zeros. Contraction pairs legs by the
//! canonical index pairing (an algebra leg against a dual leg matches equal
//! basis indices). A configurable cap on stored entries guards against
//! runaway intermediates.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::scalars::{BaseRing, DeltaScalar};

/// Default cap on stored entries per tensor, overridable through the
/// `STATESUM_MAX_ENTRIES` environment variable.
pub const DEFAULT_MAX_ENTRIES: usize = 10_000_000;

static GLOBAL_CAP: OnceLock<usize> = OnceLock::new();

thread_local! {
    static CAP_OVERRIDE: std::cell::Cell<Option<usize>> = const { std::cell::Cell::new(None) };
}

/// The active cap on stored tensor entries.
pub fn entry_cap() -> usize {
    if let Some(cap) = CAP_OVERRIDE.with(|c| c.get()) {
        return cap;
    }
    *GLOBAL_CAP.get_or_init(|| {
        std::env::var("STATESUM_MAX_ENTRIES")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_MAX_ENTRIES)
    })
}

/// Runs `f` with a temporary entry cap on the current thread.
pub fn with_entry_cap<T>(cap: usize, f: impl FnOnce() -> T) -> T {
    CAP_OVERRIDE.with(|c| c.set(Some(cap)));
    let out = f();
    CAP_OVERRIDE.with(|c| c.set(None));
    out
}

fn cap_error(requested: usize) -> Error {
    Error::Resource(format!(
        "tensor would store more than {} entries ({} needed); \
         raise STATESUM_MAX_ENTRIES to allow larger intermediates",
        entry_cap(),
        requested
    ))
}

/// A sparse tensor with an ordered list of legs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseTensor {
    dims: Vec<u32>,
    ring: BaseRing,
    modulus_square: u64,
    entries: BTreeMap<Vec<u32>, DeltaScalar>,
}

impl SparseTensor {
    /// An all-zero tensor with the given leg dimensions.
    pub fn zeros(dims: Vec<u32>, ring: BaseRing, modulus_square: u64) -> SparseTensor {
        SparseTensor {
            dims,
            ring,
            modulus_square,
            entries: BTreeMap::new(),
        }
    }

    /// A 0-leg tensor holding one scalar.
    pub fn scalar(value: DeltaScalar) -> SparseTensor {
        let mut t = SparseTensor::zeros(vec![], value.ring(), value.modulus_square());
        t.set(vec![], value);
        t
    }

    /// The identity matrix as a 2-leg tensor.
    pub fn identity(dim: u32, ring: BaseRing, modulus_square: u64) -> SparseTensor {
        let mut t = SparseTensor::zeros(vec![dim, dim], ring, modulus_square);
        for i in 0..dim {
            t.set(vec![i, i], DeltaScalar::one(ring, modulus_square));
        }
        t
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn num_legs(&self) -> usize {
        self.dims.len()
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    pub fn modulus_square(&self) -> u64 {
        self.modulus_square
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u32>, &DeltaScalar)> {
        self.entries.iter()
    }

    fn check_index(&self, idx: &[u32]) {
        assert_eq!(idx.len(), self.dims.len(), "index arity mismatch");
        for (pos, (&i, &d)) in idx.iter().zip(&self.dims).enumerate() {
            assert!(i < d, "index {i} out of range {d} at leg {pos}");
        }
    }

    /// Sets one entry, removing it if the value is zero.
    pub fn set(&mut self, idx: Vec<u32>, value: DeltaScalar) {
        self.check_index(&idx);
        assert_eq!(value.ring(), self.ring, "entry ring mismatch");
        assert_eq!(
            value.modulus_square(),
            self.modulus_square,
            "entry δ² mismatch"
        );
        if value.is_zero() {
            self.entries.remove(&idx);
        } else {
            self.entries.insert(idx, value);
        }
    }

    /// Adds into one entry.
    pub fn add_into(&mut self, idx: Vec<u32>, value: DeltaScalar) {
        let current = self.get(&idx);
        self.set(idx, current.add(&value));
    }

    pub fn get(&self, idx: &[u32]) -> DeltaScalar {
        self.check_index(idx);
        self.entries
            .get(idx)
            .cloned()
            .unwrap_or_else(|| DeltaScalar::zero(self.ring, self.modulus_square))
    }

    pub fn is_scalar(&self) -> bool {
        self.dims.is_empty()
    }

    /// Extracts the value of a 0-leg tensor.
    pub fn as_scalar(&self) -> Result<DeltaScalar> {
        if !self.is_scalar() {
            return Err(Error::Math(format!(
                "expected a scalar, found a {}-leg tensor",
                self.num_legs()
            )));
        }
        Ok(self.get(&[]))
    }

    pub fn scale(&self, s: &DeltaScalar) -> SparseTensor {
        let mut out = SparseTensor::zeros(self.dims.clone(), self.ring, self.modulus_square);
        if s.is_zero() {
            return out;
        }
        for (idx, v) in &self.entries {
            out.set(idx.clone(), v.mul(s));
        }
        out
    }

    pub fn add(&self, other: &SparseTensor) -> Result<SparseTensor> {
        self.require_shape(other)?;
        let mut out = self.clone();
        for (idx, v) in &other.entries {
            out.add_into(idx.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SparseTensor) -> Result<SparseTensor> {
        self.require_shape(other)?;
        let mut out = self.clone();
        for (idx, v) in &other.entries {
            out.add_into(idx.clone(), v.neg());
        }
        Ok(out)
    }

    fn require_shape(&self, other: &SparseTensor) -> Result<()> {
        if self.dims != other.dims
            || self.ring != other.ring
            || self.modulus_square != other.modulus_square
        {
            return Err(Error::Math("tensor shapes do not match".into()));
        }
        Ok(())
    }

    /// Reorders legs: leg `j` of the input becomes leg `sigma[j]` of the
    /// output, so `out[b] = in[a]` where `b[sigma[j]] = a[j]`. This realizes
    /// the standard permutation action sending the factor at position i to
    /// position σ(i).
    pub fn permute_legs(&self, sigma: &[usize]) -> Result<SparseTensor> {
        if sigma.len() != self.num_legs() {
            return Err(Error::Math(format!(
                "permutation length {} does not match leg count {}",
                sigma.len(),
                self.num_legs()
            )));
        }
        let mut seen = vec![false; sigma.len()];
        for &s in sigma {
            if s >= sigma.len() || seen[s] {
                return Err(Error::Math("not a permutation of the legs".into()));
            }
            seen[s] = true;
        }
        let mut dims = vec![0u32; self.dims.len()];
        for (j, &s) in sigma.iter().enumerate() {
            dims[s] = self.dims[j];
        }
        let mut out = SparseTensor::zeros(dims, self.ring, self.modulus_square);
        for (idx, v) in &self.entries {
            let mut new_idx = vec![0u32; idx.len()];
            for (j, &s) in sigma.iter().enumerate() {
                new_idx[s] = idx[j];
            }
            out.set(new_idx, v.clone());
        }
        Ok(out)
    }

    /// Transpose of a 2-leg tensor.
    pub fn transposed(&self) -> Result<SparseTensor> {
        if self.num_legs() != 2 {
            return Err(Error::Math("transpose requires a 2-leg tensor".into()));
        }
        self.permute_legs(&[1, 0])
    }

    /// Applies a matrix to one leg in place of position:
    /// `out[.., i, ..] = Σ_j m[(i, j)] · self[.., j, ..]`.
    pub fn map_leg(&self, leg: usize, m: &SparseTensor) -> Result<SparseTensor> {
        if m.num_legs() != 2 {
            return Err(Error::Math("map_leg requires a 2-leg matrix".into()));
        }
        if leg >= self.num_legs() || m.dims[1] != self.dims[leg] {
            return Err(Error::Math("map_leg dimension mismatch".into()));
        }
        let mut cols: HashMap<u32, Vec<(u32, &DeltaScalar)>> = HashMap::new();
        for (idx, v) in &m.entries {
            cols.entry(idx[1]).or_default().push((idx[0], v));
        }
        let mut dims = self.dims.clone();
        dims[leg] = m.dims[0];
        let mut out = SparseTensor::zeros(dims, self.ring, self.modulus_square);
        for (idx, v) in &self.entries {
            if let Some(hits) = cols.get(&idx[leg]) {
                for (row, mv) in hits {
                    let mut new_idx = idx.clone();
                    new_idx[leg] = *row;
                    out.add_into(new_idx, v.mul(mv));
                    if out.entries.len() > entry_cap() {
                        return Err(cap_error(out.entries.len()));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Contracts paired legs of `self` against legs of `other`. The output
    /// legs are the unpaired legs of `self` in order, followed by the
    /// unpaired legs of `other` in order. An empty pair list forms the
    /// outer product.
    pub fn contract(
        &self,
        other: &SparseTensor,
        pairs: &[(usize, usize)],
    ) -> Result<SparseTensor> {
        if self.ring != other.ring || self.modulus_square != other.modulus_square {
            return Err(Error::Math("contracting tensors over different scalars".into()));
        }
        let mut used_left = vec![false; self.num_legs()];
        let mut used_right = vec![false; other.num_legs()];
        for &(a, b) in pairs {
            if a >= self.num_legs() || b >= other.num_legs() {
                return Err(Error::Math(format!("contraction pair ({a}, {b}) out of range")));
            }
            if used_left[a] || used_right[b] {
                return Err(Error::Math(format!("leg used twice in contraction ({a}, {b})")));
            }
            if self.dims[a] != other.dims[b] {
                return Err(Error::Math(format!(
                    "contracted legs have different dimensions ({} vs {})",
                    self.dims[a], other.dims[b]
                )));
            }
            used_left[a] = true;
            used_right[b] = true;
        }
        let keep_left: Vec<usize> = (0..self.num_legs()).filter(|&i| !used_left[i]).collect();
        let keep_right: Vec<usize> = (0..other.num_legs()).filter(|&i| !used_right[i]).collect();
        let mut dims: Vec<u32> = keep_left.iter().map(|&i| self.dims[i]).collect();
        dims.extend(keep_right.iter().map(|&i| other.dims[i]));

        // Bucket the right tensor by its paired index values.
        let mut buckets: HashMap<Vec<u32>, Vec<(Vec<u32>, &DeltaScalar)>> = HashMap::new();
        for (idx, v) in &other.entries {
            let key: Vec<u32> = pairs.iter().map(|&(_, b)| idx[b]).collect();
            let kept: Vec<u32> = keep_right.iter().map(|&i| idx[i]).collect();
            buckets.entry(key).or_default().push((kept, v));
        }

        let mut out = SparseTensor::zeros(dims, self.ring, self.modulus_square);
        for (idx, v) in &self.entries {
            let key: Vec<u32> = pairs.iter().map(|&(a, _)| idx[a]).collect();
            let Some(hits) = buckets.get(&key) else {
                continue;
            };
            let kept_left: Vec<u32> = keep_left.iter().map(|&i| idx[i]).collect();
            for (kept_right, w) in hits {
                let mut new_idx = kept_left.clone();
                new_idx.extend_from_slice(kept_right);
                out.add_into(new_idx, v.mul(w));
                if out.entries.len() > entry_cap() {
                    return Err(cap_error(out.entries.len()));
                }
            }
        }
        Ok(out)
    }

    /// Traces pairs of legs of a single tensor: for each pair (i, j) the two
    /// indices are set equal and summed. Output legs are the remaining legs
    /// in order.
    pub fn self_contract(&self, pairs: &[(usize, usize)]) -> Result<SparseTensor> {
        let mut used = vec![false; self.num_legs()];
        for &(a, b) in pairs {
            if a >= self.num_legs() || b >= self.num_legs() || a == b {
                return Err(Error::Math(format!("bad trace pair ({a}, {b})")));
            }
            if used[a] || used[b] {
                return Err(Error::Math(format!("leg used twice in trace ({a}, {b})")));
            }
            if self.dims[a] != self.dims[b] {
                return Err(Error::Math("traced legs have different dimensions".into()));
            }
            used[a] = true;
            used[b] = true;
        }
        let keep: Vec<usize> = (0..self.num_legs()).filter(|&i| !used[i]).collect();
        let dims: Vec<u32> = keep.iter().map(|&i| self.dims[i]).collect();
        let mut out = SparseTensor::zeros(dims, self.ring, self.modulus_square);
        for (idx, v) in &self.entries {
            if pairs.iter().any(|&(a, b)| idx[a] != idx[b]) {
                continue;
            }
            let new_idx: Vec<u32> = keep.iter().map(|&i| idx[i]).collect();
            out.add_into(new_idx, v.clone());
            if out.entries.len() > entry_cap() {
                return Err(cap_error(out.entries.len()));
            }
        }
        Ok(out)
    }

    /// Outer product: all legs of `self` followed by all legs of `other`.
    pub fn outer(&self, other: &SparseTensor) -> Result<SparseTensor> {
        self.contract(other, &[])
    }
}

/// One endpoint of a contraction edge in a tensor network: tensor index in
/// the network's list, then leg index of that tensor.
pub type LegRef = (usize, usize);

/// Contracts a whole network of tensors.
///
/// `edges` pairs distinct legs; every leg may appear in at most one edge.
/// Uncontracted legs survive to the output. Returns the contracted tensor
/// together with the original identity of each remaining leg, so callers can
/// reorder with [`SparseTensor::permute_legs`].
///
/// The contraction order is a deterministic greedy heuristic: tensors joined
/// by at least one edge are merged pairwise, always choosing the merge whose
/// result has the smallest dense-size bound, with ties broken by lowest
/// tensor indices.
pub fn contract_network(
    tensors: Vec<SparseTensor>,
    edges: &[(LegRef, LegRef)],
) -> Result<(SparseTensor, Vec<LegRef>)> {
    if tensors.is_empty() {
        return Err(Error::Math("cannot contract an empty network".into()));
    }
    let ring = tensors[0].ring();
    let n = tensors[0].modulus_square();

    // Per-slot tensors and the original identity of each of their legs.
    let mut slots: Vec<Option<(SparseTensor, Vec<LegRef>)>> = tensors
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            let labels = (0..t.num_legs()).map(|l| (i, l)).collect();
            Some((t, labels))
        })
        .collect();

    // Edges in terms of original leg identities; resolve through labels.
    let mut seen = std::collections::HashSet::new();
    for &(a, b) in edges {
        if !seen.insert(a) || !seen.insert(b) {
            return Err(Error::Math("leg referenced by two network edges".into()));
        }
    }
    let mut pending: Vec<(LegRef, LegRef)> = edges.to_vec();

    let locate = |slots: &Vec<Option<(SparseTensor, Vec<LegRef>)>>, leg: LegRef| -> Result<(usize, usize)> {
        for (si, slot) in slots.iter().enumerate() {
            if let Some((_, labels)) = slot {
                if let Some(pos) = labels.iter().position(|&l| l == leg) {
                    return Ok((si, pos));
                }
            }
        }
        Err(Error::Math(format!("network edge references missing leg {leg:?}")))
    };

    while !pending.is_empty() {
        // Group pending edges by the pair of slots they currently join.
        let mut groups: BTreeMap<(usize, usize), Vec<((usize, usize), (usize, usize))>> =
            BTreeMap::new();
        for &(a, b) in &pending {
            let (sa, pa) = locate(&slots, a)?;
            let (sb, pb) = locate(&slots, b)?;
            if sa <= sb {
                groups.entry((sa, sb)).or_default().push(((sa, pa), (sb, pb)));
            } else {
                groups.entry((sb, sa)).or_default().push(((sb, pb), (sa, pa)));
            }
        }

        // Trace self-edges first: they only ever shrink a tensor.
        if let Some(((slot, _), group)) = groups.iter().find(|((a, b), _)| a == b) {
            let slot = *slot;
            let positions: Vec<(usize, usize)> =
                group.iter().map(|&((_, pa), (_, pb))| (pa, pb)).collect();
            let (t, labels) = slots[slot].take().expect("slot present");
            let traced = t.self_contract(&positions)?;
            let dropped: Vec<usize> = positions.iter().flat_map(|&(a, b)| [a, b]).collect();
            let new_labels: Vec<LegRef> = labels
                .iter()
                .enumerate()
                .filter(|(k, _)| !dropped.contains(k))
                .map(|(_, &l)| l)
                .collect();
            slots[slot] = Some((traced, new_labels));
            // The traced legs vanished from the label list, so the edges
            // that referenced them no longer resolve; drop exactly those.
            pending.retain(|&(a, b)| locate(&slots, a).is_ok() && locate(&slots, b).is_ok());
            continue;
        }

        // Choose the cheapest pairwise merge: smallest dense bound on the
        // result, ties broken by lowest slot indices.
        let mut best: Option<(u128, usize, usize)> = None;
        for (&(lo, hi), group) in &groups {
            let dims_product = |s: usize| -> u128 {
                slots[s]
                    .as_ref()
                    .expect("slot present")
                    .0
                    .dims()
                    .iter()
                    .map(|&d| d as u128)
                    .product::<u128>()
                    .max(1)
            };
            let contracted: u128 = group
                .iter()
                .map(|&((s, p), _)| slots[s].as_ref().expect("slot present").0.dims()[p] as u128)
                .product::<u128>()
                .max(1);
            let bound = (dims_product(lo) / contracted).saturating_mul(dims_product(hi) / contracted);
            let candidate = (bound, lo, hi);
            if best.is_none_or(|b| candidate < b) {
                best = Some(candidate);
            }
        }
        let (_, lo, hi) = best.expect("pending edges imply a candidate");
        let group = groups.get(&(lo, hi)).expect("chosen group exists").clone();

        let pair_positions: Vec<(usize, usize)> =
            group.iter().map(|&((_, pa), (_, pb))| (pa, pb)).collect();
        let (t_lo, labels_lo) = slots[lo].take().expect("slot present");
        let (t_hi, labels_hi) = slots[hi].take().expect("slot present");
        let merged = t_lo.contract(&t_hi, &pair_positions)?;
        let paired_lo: Vec<usize> = pair_positions.iter().map(|&(a, _)| a).collect();
        let paired_hi: Vec<usize> = pair_positions.iter().map(|&(_, b)| b).collect();
        let mut labels: Vec<LegRef> = labels_lo
            .iter()
            .enumerate()
            .filter(|(k, _)| !paired_lo.contains(k))
            .map(|(_, &l)| l)
            .collect();
        labels.extend(
            labels_hi
                .iter()
                .enumerate()
                .filter(|(k, _)| !paired_hi.contains(k))
                .map(|(_, &l)| l),
        );
        slots[lo] = Some((merged, labels));
        // Contracted legs vanished from the label lists, so the edges that
        // referenced them no longer resolve; drop exactly those.
        pending.retain(|&(a, b)| locate(&slots, a).is_ok() && locate(&slots, b).is_ok());
    }

    // Fold any disconnected remainders with outer products, lowest slot first.
    let mut acc: Option<(SparseTensor, Vec<LegRef>)> = None;
    for slot in slots.into_iter().flatten() {
        acc = Some(match acc {
            None => slot,
            Some((t, mut labels)) => {
                let merged = t.outer(&slot.0)?;
                labels.extend(slot.1);
                (merged, labels)
            }
        });
    }
    let (tensor, labels) = acc.unwrap_or((
        SparseTensor::scalar(DeltaScalar::one(ring, n)),
        Vec::new(),
    ));
    Ok((tensor, labels))
}
