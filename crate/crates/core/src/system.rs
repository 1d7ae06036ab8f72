//! Projector systems derived from diagrams: bases, their classification and
//! parity proofs.
//!
//! A parity proof is an odd number of bases in which every projector occurs
//! an even number of times. Over GF(2) these are exactly the odd-weight
//! vectors in the kernel of the projector × basis incidence matrix, so the
//! census walks that kernel in Gray-code order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::catalog::IdSet;
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::gf2::{gray, gray_flip, BitMatrix};
use crate::projector::{derive_projectors, groups_conflict, Projector};

/// Default cap on the kernel dimension walked by the census.
pub const DEFAULT_MAX_KERNEL_DIM: usize = 26;

#[derive(Clone, Debug)]
pub struct ProjectorSystem {
    n: usize,
    ids: Vec<IdSet>,
    projectors: Vec<Projector>,
    orthogonality: Vec<FixedBitSet>,
    bases: Vec<Vec<usize>>,
}

impl ProjectorSystem {
    /// Projectors of a KS-proof diagram with their orthogonalities and bases.
    pub fn derive(d: &Diagram) -> Result<Self> {
        let report = d.validate();
        if !report.is_ks_proof {
            return Err(Error::NotAProof(format!(
                "symbol {}, {} negative IDs",
                d.symbol(),
                report.negative_id_count
            )));
        }
        Ok(Self::from_ids(d.n_qubits(), d.ids().to_vec()))
    }

    /// Same pipeline without requiring a proof, e.g. for a single ID.
    pub fn from_ids(n: usize, ids: Vec<IdSet>) -> Self {
        let mut projectors: Vec<Projector> = ids
            .iter()
            .enumerate()
            .flat_map(|(j, id)| derive_projectors(id, j))
            .collect();
        for (k, p) in projectors.iter_mut().enumerate() {
            p.set_label(k);
        }
        let orthogonality = orthogonality_graph(&projectors);
        let bases = enumerate_bases(&projectors, &orthogonality, 1 << n);
        Self {
            n,
            ids,
            projectors,
            orthogonality,
            bases,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        1 << self.n
    }

    pub fn ids(&self) -> &[IdSet] {
        &self.ids
    }

    pub fn projectors(&self) -> &[Projector] {
        &self.projectors
    }

    pub fn bases(&self) -> &[Vec<usize>] {
        &self.bases
    }

    pub fn is_orthogonal(&self, a: usize, b: usize) -> bool {
        self.orthogonality[a].contains(b)
    }

    pub fn orthogonality(&self) -> &[FixedBitSet] {
        &self.orthogonality
    }

    /// For each projector, the indices of the bases containing it.
    pub fn basis_membership(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.projectors.len()];
        for (b, basis) in self.bases.iter().enumerate() {
            for &p in basis {
                out[p].push(b);
            }
        }
        out
    }

    /// Orthogonal pairs that share no basis. Empty means saturated.
    pub fn unsaturated_pairs(&self) -> Vec<(usize, usize)> {
        let membership = self.basis_membership();
        let mut out = Vec::new();
        for a in 0..self.projectors.len() {
            for b in self.orthogonality[a].ones().filter(|&b| b > a) {
                let shared = membership[a].iter().any(|x| membership[b].contains(x));
                if !shared {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Projectors with identical stabilizer groups, i.e. the same operator
    /// arising from different IDs.
    pub fn coincident_projectors(&self) -> Vec<(usize, usize)> {
        let keys: Vec<Vec<((u32, u32), u8)>> = self
            .projectors
            .iter()
            .map(|p| {
                let mut v: Vec<_> = p.stabilizer().into_iter().collect();
                v.sort_unstable();
                v
            })
            .collect();
        let mut out = Vec::new();
        for a in 0..keys.len() {
            for b in a + 1..keys.len() {
                if keys[a] == keys[b] {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Shape of the whole system: projector multiplicities over all bases.
    pub fn shape(&self) -> ProofShape {
        let all: Vec<usize> = (0..self.bases.len()).collect();
        self.shape_of(&all)
    }

    pub fn symbol(&self) -> String {
        self.shape().to_string()
    }

    fn shape_of(&self, basis_indices: &[usize]) -> ProofShape {
        let mut counts = vec![0usize; self.projectors.len()];
        let mut sizes = BTreeMap::new();
        for &b in basis_indices {
            *sizes.entry(self.bases[b].len()).or_insert(0) += 1;
            for &p in &self.bases[b] {
                counts[p] += 1;
            }
        }
        let mut projectors: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
        for (p, &c) in counts.iter().enumerate() {
            if c > 0 {
                *projectors
                    .entry(self.projectors[p].rank())
                    .or_default()
                    .entry(c)
                    .or_insert(0) += 1;
            }
        }
        ProofShape {
            projectors,
            basis_sizes: sizes,
        }
    }

    /// Pure bases are complete eigenbases of one ID; hybrids take half of the
    /// dimension from each of two IDs.
    pub fn classify_bases(&self) -> BasisClassification {
        let half = self.dimension() / 2;
        let mut pure_of_id: BTreeMap<usize, usize> = BTreeMap::new();
        let mut kinds = Vec::with_capacity(self.bases.len());
        for (b, basis) in self.bases.iter().enumerate() {
            let mut rank_by_id: BTreeMap<usize, usize> = BTreeMap::new();
            for &p in basis {
                let proj = &self.projectors[p];
                *rank_by_id.entry(proj.id_index()).or_insert(0) += proj.rank();
            }
            let ids: Vec<usize> = rank_by_id.keys().copied().collect();
            let kind = match ids.as_slice() {
                [j] => {
                    pure_of_id.insert(*j, b);
                    BasisKind::Pure { id: *j }
                }
                [a, c] if rank_by_id[a] == half && rank_by_id[c] == half => {
                    BasisKind::Hybrid { ids: (*a, *c) }
                }
                _ => BasisKind::Other { ids },
            };
            kinds.push(kind);
        }
        let hybrid_edges = kinds
            .iter()
            .enumerate()
            .filter_map(|(b, k)| match k {
                BasisKind::Hybrid { ids: (x, y) } => {
                    Some((b, (pure_of_id.get(x).copied(), pure_of_id.get(y).copied())))
                }
                _ => None,
            })
            .collect();
        BasisClassification {
            kinds,
            pure_of_id,
            hybrid_edges,
        }
    }

    /// Projector × basis incidence over GF(2).
    pub fn incidence(&self) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.projectors.len(), self.bases.len());
        for (b, basis) in self.bases.iter().enumerate() {
            for &p in basis {
                m.set(p, b, true);
            }
        }
        m
    }

    pub fn kernel_dimension(&self) -> usize {
        self.bases.len() - self.incidence().rank()
    }

    /// Enumerate every parity proof and group them by shape.
    pub fn find_parity_proofs(&self, options: &ParityOptions) -> Result<ParityCensus> {
        let kernel = self.incidence().kernel_basis();
        let d = kernel.len();
        if d > options.max_kernel_dim {
            return Err(Error::KernelTooLarge {
                dimension: d,
                cap: options.max_kernel_dim,
            });
        }
        let kernel: Vec<Vec<usize>> = kernel.iter().map(|v| v.ones().collect()).collect();
        let chunk_bits = d.saturating_sub(6).max(d.min(4));
        let chunk_bits = chunk_bits.min(d);
        let chunks = 1u64 << (d - chunk_bits);
        let partials: Vec<ChunkCensus> = (0..chunks)
            .into_par_iter()
            .map(|c| self.walk_chunk(&kernel, c << chunk_bits, 1u64 << chunk_bits, options))
            .collect();
        let mut merged: HashMap<ShapeKey, Tally> = HashMap::new();
        let mut proofs = Vec::new();
        let mut odd = 0u64;
        for part in partials {
            odd += part.odd;
            proofs.extend(part.proofs);
            for (k, t) in part.tallies {
                merged
                    .entry(k)
                    .and_modify(|m| {
                        m.count += t.count;
                        if t.first < m.first {
                            m.first = t.first;
                            m.example = t.example.clone();
                        }
                    })
                    .or_insert(t);
            }
        }
        proofs.sort();
        let mut entries: Vec<CensusEntry> = merged
            .into_iter()
            .map(|(key, t)| {
                let shape = key.to_shape();
                CensusEntry {
                    projectors: shape.projector_count(),
                    bases: shape.basis_count(),
                    symbol: shape.to_string(),
                    count: t.count,
                    example: t.example,
                }
            })
            .collect();
        entries.sort_by(|a, b| {
            (a.bases, a.projectors, &a.symbol).cmp(&(b.bases, b.projectors, &b.symbol))
        });
        Ok(ParityCensus {
            kernel_dimension: d,
            odd_count: odd,
            entries,
            proofs,
        })
    }

    fn walk_chunk(
        &self,
        kernel: &[Vec<usize>],
        start: u64,
        len: u64,
        options: &ParityOptions,
    ) -> ChunkCensus {
        let mut chosen = vec![false; self.bases.len()];
        let mut counts = vec![0u32; self.projectors.len()];
        let mut size_counts = vec![0u32; self.dimension() + 1];
        let mut weight = 0usize;
        let toggle = |k: usize, chosen: &mut [bool], counts: &mut [u32], size_counts: &mut [u32], weight: &mut usize| {
            for &b in &kernel[k] {
                let entering = !chosen[b];
                chosen[b] = entering;
                let basis = &self.bases[b];
                if entering {
                    *weight += 1;
                    size_counts[basis.len()] += 1;
                    for &p in basis {
                        counts[p] += 1;
                    }
                } else {
                    *weight -= 1;
                    size_counts[basis.len()] -= 1;
                    for &p in basis {
                        counts[p] -= 1;
                    }
                }
            }
        };
        let g = gray(start);
        for k in 0..kernel.len() {
            if g >> k & 1 == 1 {
                toggle(k, &mut chosen, &mut counts, &mut size_counts, &mut weight);
            }
        }
        let mut out = ChunkCensus::default();
        for i in start..start + len {
            if i > start {
                toggle(gray_flip(i), &mut chosen, &mut counts, &mut size_counts, &mut weight);
            }
            if weight.is_multiple_of(2) {
                continue;
            }
            out.odd += 1;
            let key = ShapeKey::new(&self.projectors, &counts, &size_counts);
            if let Some(filter) = &options.type_filter {
                let shape = key.to_shape();
                let pb = format!("{}-{}", shape.projector_count(), shape.basis_count());
                if &pb != filter && &shape.to_string() != filter {
                    continue;
                }
            }
            let indices = || -> Vec<usize> {
                chosen
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c)
                    .map(|(b, _)| b)
                    .collect()
            };
            if options.critical_only && !self.critical_unchecked(&indices()) {
                continue;
            }
            if options.collect_proofs {
                out.proofs.push(indices());
            }
            match out.tallies.get_mut(&key) {
                Some(t) => t.count += 1,
                None => {
                    out.tallies.insert(
                        key,
                        Tally {
                            count: 1,
                            first: i,
                            example: indices(),
                        },
                    );
                }
            }
        }
        out
    }

    /// Check the parity conditions and run the independent 0/1 assignment
    /// search over the chosen bases.
    pub fn verify_parity_proof(&self, basis_indices: &[usize]) -> Result<ParityCheck> {
        if let Some(&b) = basis_indices.iter().find(|&&b| b >= self.bases.len()) {
            return Err(Error::InvalidArgument(format!(
                "basis index {b} out of range ({} bases)",
                self.bases.len()
            )));
        }
        let mut sorted = basis_indices.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("repeated basis index".into()));
        }
        let mut counts = vec![0usize; self.projectors.len()];
        for &b in &sorted {
            for &p in &self.bases[b] {
                counts[p] += 1;
            }
        }
        let odd_projectors: Vec<usize> = counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c % 2 == 1)
            .map(|(p, _)| p)
            .collect();
        let odd_basis_count = sorted.len() % 2 == 1;
        let bases: Vec<&[usize]> = sorted.iter().map(|&b| self.bases[b].as_slice()).collect();
        let assignment = one_per_basis_assignment(&bases, self.projectors.len());
        Ok(ParityCheck {
            basis_count: sorted.len(),
            projector_count: counts.iter().filter(|&&c| c > 0).count(),
            odd_basis_count,
            even_multiplicities: odd_projectors.is_empty(),
            odd_projectors,
            assignment_exists: assignment.is_some(),
            assignment,
            symbol: self.shape_of(&sorted).to_string(),
        })
    }

    /// A parity proof is critical when dropping any one of its bases leaves
    /// a set that admits a 0/1 assignment with exactly one 1 per basis.
    pub fn is_critical_proof(&self, basis_indices: &[usize]) -> Result<bool> {
        let check = self.verify_parity_proof(basis_indices)?;
        Ok(check.is_parity_proof() && self.critical_unchecked(basis_indices))
    }

    fn critical_unchecked(&self, basis_indices: &[usize]) -> bool {
        // a proof containing a smaller proof survives the deletion of a basis
        // outside it, so only minimal proofs (a one-dimensional kernel on
        // their own bases) can be critical
        let mut m = BitMatrix::zeros(basis_indices.len(), self.projectors.len());
        for (r, &b) in basis_indices.iter().enumerate() {
            for &p in &self.bases[b] {
                m.set(r, p, true);
            }
        }
        if m.rank() + 1 != basis_indices.len() {
            return false;
        }
        (0..basis_indices.len()).all(|skip| {
            let rest: Vec<&[usize]> = basis_indices
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != skip)
                .map(|(_, &b)| self.bases[b].as_slice())
                .collect();
            one_per_basis_assignment(&rest, self.projectors.len()).is_some()
        })
    }

    pub fn proof_symbol(&self, basis_indices: &[usize]) -> String {
        self.shape_of(basis_indices).to_string()
    }

    /// Canonical JSON serialization (without subspace vectors).
    pub fn to_json(&self, with_vectors: bool) -> Result<serde_json::Value> {
        let projectors = self
            .projectors
            .iter()
            .map(|p| p.to_json(with_vectors))
            .collect::<Result<Vec<_>>>()?;
        Ok(serde_json::json!({
            "qubits": self.n,
            "ids": self.ids.iter().map(|id| id.to_string()).collect::<Vec<_>>(),
            "projectors": projectors,
            "bases": self.bases,
        }))
    }

    /// SHA-256 of the canonical serialization, hex encoded.
    pub fn content_hash(&self) -> String {
        let text = self
            .to_json(false)
            .expect("serialization without vectors cannot fail")
            .to_string();
        Sha256::digest(text.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

fn orthogonality_graph(projectors: &[Projector]) -> Vec<FixedBitSet> {
    let k = projectors.len();
    let stabilizers: Vec<_> = projectors.par_iter().map(Projector::stabilizer).collect();
    let rows: Vec<FixedBitSet> = (0..k)
        .into_par_iter()
        .map(|a| {
            let mut row = FixedBitSet::with_capacity(k);
            for b in 0..k {
                if a == b {
                    continue;
                }
                let (p, q) = (&projectors[a], &projectors[b]);
                let orth = if p.id_index() == q.id_index() {
                    p.signature() != q.signature()
                } else {
                    groups_conflict(&stabilizers[a], &stabilizers[b])
                };
                if orth {
                    row.insert(b);
                }
            }
            row
        })
        .collect();
    rows
}

/// All sets of mutually orthogonal projectors whose ranks sum to `dim`, in
/// lexicographic order of their sorted index lists.
pub fn enumerate_bases(
    projectors: &[Projector],
    orthogonality: &[FixedBitSet],
    dim: usize,
) -> Vec<Vec<usize>> {
    let k = projectors.len();
    let ranks: Vec<usize> = projectors.iter().map(Projector::rank).collect();
    let mut out = Vec::new();
    let mut all = FixedBitSet::with_capacity(k);
    all.insert_range(..);
    extend_basis(&ranks, orthogonality, dim, &mut Vec::new(), 0, all, &mut out);
    out
}

fn extend_basis(
    ranks: &[usize],
    orthogonality: &[FixedBitSet],
    dim: usize,
    current: &mut Vec<usize>,
    sum: usize,
    candidates: FixedBitSet,
    out: &mut Vec<Vec<usize>>,
) {
    if sum == dim {
        out.push(current.clone());
        return;
    }
    let available: usize = candidates.ones().map(|c| ranks[c]).sum();
    if sum + available < dim {
        return;
    }
    for c in candidates.ones() {
        if sum + ranks[c] > dim {
            continue;
        }
        let mut next = candidates.clone();
        next.intersect_with(&orthogonality[c]);
        next.set_range(..c + 1, false);
        current.push(c);
        extend_basis(ranks, orthogonality, dim, current, sum + ranks[c], next, out);
        current.pop();
    }
}

/// Find projectors valued 1 so that every basis contains exactly one of
/// them, or prove that none exists.
pub fn one_per_basis_assignment(bases: &[&[usize]], n_projectors: usize) -> Option<Vec<usize>> {
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); n_projectors];
    for (b, basis) in bases.iter().enumerate() {
        for &p in basis.iter() {
            containing[p].push(b);
        }
    }
    let mut state = CoverState {
        bases,
        containing: &containing,
        covered: vec![false; bases.len()],
        blocked: vec![0u32; n_projectors],
        chosen: Vec::new(),
    };
    state.solve().then_some(state.chosen)
}

struct CoverState<'a> {
    bases: &'a [&'a [usize]],
    containing: &'a [Vec<usize>],
    covered: Vec<bool>,
    /// Number of covered bases containing each projector; nonzero means the
    /// projector must be 0.
    blocked: Vec<u32>,
    chosen: Vec<usize>,
}

impl CoverState<'_> {
    fn solve(&mut self) -> bool {
        // most constrained uncovered basis
        let mut best: Option<(usize, usize)> = None;
        for (b, basis) in self.bases.iter().enumerate() {
            if self.covered[b] {
                continue;
            }
            let free = basis.iter().filter(|&&p| self.blocked[p] == 0).count();
            if free == 0 {
                return false;
            }
            if best.is_none_or(|(_, f)| free < f) {
                best = Some((b, free));
            }
        }
        let Some((b, _)) = best else {
            return true;
        };
        for &p in self.bases[b] {
            if self.blocked[p] != 0 {
                continue;
            }
            // p = 1 covers every basis containing it; none may be covered yet
            if self.containing[p].iter().any(|&c| self.covered[c]) {
                continue;
            }
            for &c in &self.containing[p] {
                self.covered[c] = true;
                for &q in self.bases[c] {
                    self.blocked[q] += 1;
                }
            }
            self.chosen.push(p);
            if self.solve() {
                return true;
            }
            self.chosen.pop();
            for &c in &self.containing[p] {
                self.covered[c] = false;
                for &q in self.bases[c] {
                    self.blocked[q] -= 1;
                }
            }
        }
        false
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisKind {
    Pure { id: usize },
    Hybrid { ids: (usize, usize) },
    Other { ids: Vec<usize> },
}

/// A hybrid basis and the pure bases of its two IDs, when those exist.
pub type HybridEdge = (usize, (Option<usize>, Option<usize>));

#[derive(Clone, Debug)]
pub struct BasisClassification {
    pub kinds: Vec<BasisKind>,
    /// ID index → index of its pure basis.
    pub pure_of_id: BTreeMap<usize, usize>,
    /// Hybrid basis → the pure bases it mixes.
    pub hybrid_edges: Vec<HybridEdge>,
}

impl BasisClassification {
    pub fn pure(&self) -> Vec<usize> {
        self.indices(|k| matches!(k, BasisKind::Pure { .. }))
    }

    pub fn hybrid(&self) -> Vec<usize> {
        self.indices(|k| matches!(k, BasisKind::Hybrid { .. }))
    }

    pub fn other(&self) -> Vec<usize> {
        self.indices(|k| matches!(k, BasisKind::Other { .. }))
    }

    fn indices(&self, f: impl Fn(&BasisKind) -> bool) -> Vec<usize> {
        self.kinds
            .iter()
            .enumerate()
            .filter(|(_, k)| f(k))
            .map(|(b, _)| b)
            .collect()
    }
}

#[derive(Clone, Debug, Default)]
pub struct ParityOptions {
    pub max_kernel_dim: usize,
    /// Keep only proofs whose `P-B` type or detailed symbol equals this.
    pub type_filter: Option<String>,
    /// Keep every proof's basis list in the result.
    pub collect_proofs: bool,
    /// Count only critical proofs (see [`ProjectorSystem::is_critical_proof`]).
    pub critical_only: bool,
}

impl ParityOptions {
    pub fn new() -> Self {
        Self {
            max_kernel_dim: DEFAULT_MAX_KERNEL_DIM,
            ..Default::default()
        }
    }

    pub fn collecting() -> Self {
        Self {
            collect_proofs: true,
            ..Self::new()
        }
    }

    pub fn critical() -> Self {
        Self {
            critical_only: true,
            ..Self::new()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub projectors: usize,
    pub bases: usize,
    pub symbol: String,
    pub count: u64,
    /// Basis indices of the first proof of this type in Gray-code order.
    pub example: Vec<usize>,
}

impl CensusEntry {
    pub fn type_pb(&self) -> String {
        format!("{}-{}", self.projectors, self.bases)
    }
}

#[derive(Clone, Debug)]
pub struct ParityCensus {
    pub kernel_dimension: usize,
    /// Number of odd-weight kernel vectors, before any filter.
    pub odd_count: u64,
    /// Sorted by (bases, projectors, symbol).
    pub entries: Vec<CensusEntry>,
    /// Every proof as sorted basis indices, when collected.
    pub proofs: Vec<Vec<usize>>,
}

impl ParityCensus {
    pub fn kernel_size(&self) -> u64 {
        1u64 << self.kernel_dimension
    }

    /// Proofs counted in the entries, after filters.
    pub fn total(&self) -> u64 {
        self.entries.iter().map(|e| e.count).sum()
    }

    /// Counts grouped by `P-B` type alone, keyed by (bases, projectors).
    pub fn by_type(&self) -> BTreeMap<(usize, usize), u64> {
        let mut out = BTreeMap::new();
        for e in &self.entries {
            *out.entry((e.bases, e.projectors)).or_insert(0) += e.count;
        }
        out
    }

    pub fn count_of(&self, symbol: &str) -> Option<u64> {
        self.entries
            .iter()
            .find(|e| e.symbol == symbol)
            .map(|e| e.count)
    }

    /// CSV with columns `type_PB,detailed_symbol,count,example_basis_indices`;
    /// example indices are 1-based and space separated.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("type_PB,detailed_symbol,count,example_basis_indices\n");
        for e in &self.entries {
            let example = e
                .example
                .iter()
                .map(|b| (b + 1).to_string())
                .collect::<Vec<_>>()
                .join(" ");
            out.push_str(&format!("{},{},{},{}\n", e.type_pb(), e.symbol, e.count, example));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityCheck {
    pub basis_count: usize,
    pub projector_count: usize,
    pub odd_basis_count: bool,
    pub even_multiplicities: bool,
    pub odd_projectors: Vec<usize>,
    /// Result of the 0/1 search: some assignment gives each basis exactly one 1.
    pub assignment_exists: bool,
    pub assignment: Option<Vec<usize>>,
    pub symbol: String,
}

impl ParityCheck {
    pub fn is_parity_proof(&self) -> bool {
        self.odd_basis_count && self.even_multiplicities
    }
}

/// Projector multiplicities per rank and basis counts per size, printed as
/// e.g. `4_2 12_4 **12_2 2_4**-5_8 4_6 6_4`. Rank-1 groups are unmarked,
/// rank-2 groups are wrapped in `**`, higher ranks as `[r: …]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ProofShape {
    /// rank → multiplicity → number of projectors
    pub projectors: BTreeMap<usize, BTreeMap<usize, usize>>,
    /// basis size → number of bases
    pub basis_sizes: BTreeMap<usize, usize>,
}

impl ProofShape {
    pub fn projector_count(&self) -> usize {
        self.projectors.values().flat_map(|m| m.values()).sum()
    }

    pub fn basis_count(&self) -> usize {
        self.basis_sizes.values().sum()
    }

    /// Projector incidences per rank, counted from the projector half.
    pub fn rank_incidences(&self) -> BTreeMap<usize, usize> {
        self.projectors
            .iter()
            .map(|(&r, m)| (r, m.iter().map(|(mult, c)| mult * c).sum()))
            .collect()
    }
}

impl fmt::Display for ProofShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let groups: Vec<String> = self
            .projectors
            .iter()
            .map(|(&rank, mults)| {
                let terms = mults
                    .iter()
                    .map(|(m, c)| format!("{c}_{m}"))
                    .collect::<Vec<_>>()
                    .join(" ");
                match rank {
                    1 => terms,
                    2 => format!("**{terms}**"),
                    r => format!("[{r}: {terms}]"),
                }
            })
            .collect();
        let sizes: Vec<String> = self
            .basis_sizes
            .iter()
            .rev()
            .map(|(s, c)| format!("{c}_{s}"))
            .collect();
        write!(f, "{}-{}", groups.join(" "), sizes.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct ShapeKey {
    /// (rank, multiplicity, count)
    projectors: Vec<(u32, u32, u32)>,
    /// (size, count)
    sizes: Vec<(u32, u32)>,
}

impl ShapeKey {
    fn new(projectors: &[Projector], counts: &[u32], size_counts: &[u32]) -> Self {
        let mut hist: Vec<(u32, u32, u32)> = Vec::new();
        for (p, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let r = projectors[p].rank() as u32;
            match hist.iter_mut().find(|(hr, hm, _)| *hr == r && *hm == c) {
                Some(e) => e.2 += 1,
                None => hist.push((r, c, 1)),
            }
        }
        hist.sort_unstable();
        let sizes = size_counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(s, &c)| (s as u32, c))
            .collect();
        Self {
            projectors: hist,
            sizes,
        }
    }

    fn to_shape(&self) -> ProofShape {
        let mut projectors: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
        for &(r, m, c) in &self.projectors {
            projectors
                .entry(r as usize)
                .or_default()
                .insert(m as usize, c as usize);
        }
        ProofShape {
            projectors,
            basis_sizes: self
                .sizes
                .iter()
                .map(|&(s, c)| (s as usize, c as usize))
                .collect(),
        }
    }
}

#[derive(Clone, Debug)]
struct Tally {
    count: u64,
    first: u64,
    example: Vec<usize>,
}

#[derive(Default)]
struct ChunkCensus {
    odd: u64,
    tallies: HashMap<ShapeKey, Tally>,
    proofs: Vec<Vec<usize>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::pauli::obs;

    #[test]
    fn single_id4_has_one_basis() {
        let id = IdSet::from_printed(&[obs("ZII"), obs("IZI"), obs("IIZ"), obs("ZZZ")]).unwrap();
        let s = ProjectorSystem::from_ids(3, vec![id]);
        assert_eq!(s.bases(), &[(0..8).collect::<Vec<_>>()]);
        assert!(matches!(s.classify_bases().kinds[0], BasisKind::Pure { id: 0 }));
    }

    #[test]
    fn non_proof_is_rejected() {
        let d = fixtures::pentagram();
        let ids: Vec<IdSet> = d.ids()[..4].to_vec();
        let sub = Diagram::new(ids).unwrap();
        assert!(matches!(ProjectorSystem::derive(&sub), Err(Error::NotAProof(_))));
    }

    #[test]
    fn shape_display() {
        let mut shape = ProofShape::default();
        shape.projectors.entry(1).or_default().insert(2, 4);
        shape.projectors.entry(1).or_default().insert(4, 12);
        shape.projectors.entry(2).or_default().insert(2, 12);
        shape.projectors.entry(2).or_default().insert(4, 2);
        shape.basis_sizes.insert(8, 5);
        shape.basis_sizes.insert(6, 4);
        shape.basis_sizes.insert(4, 6);
        assert_eq!(shape.to_string(), "4_2 12_4 **12_2 2_4**-5_8 4_6 6_4");
        assert_eq!(shape.projector_count(), 30);
        assert_eq!(shape.basis_count(), 15);
    }

    #[test]
    fn exact_cover_oracle() {
        // two bases sharing projector 0: choosing it covers both
        let a: &[usize] = &[0, 1];
        let b: &[usize] = &[0, 2];
        assert_eq!(one_per_basis_assignment(&[a, b], 3), Some(vec![0]));
        // three bases pairwise sharing, each projector in two: odd cycle
        let a: &[usize] = &[0, 1];
        let b: &[usize] = &[1, 2];
        let c: &[usize] = &[2, 0];
        assert_eq!(one_per_basis_assignment(&[a, b, c], 3), None);
        assert_eq!(one_per_basis_assignment(&[], 0), Some(vec![]));
    }

    #[test]
    fn verify_rejects_bad_indices() {
        let s = ProjectorSystem::derive(&fixtures::square2()).unwrap();
        assert!(s.verify_parity_proof(&[99]).is_err());
        assert!(s.verify_parity_proof(&[1, 1]).is_err());
        let empty = s.verify_parity_proof(&[]).unwrap();
        assert!(!empty.is_parity_proof());
    }
}
