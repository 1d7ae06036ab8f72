//! Depth-first search for KS-proof diagrams with a prescribed symbol.
//!
//! Every diagram is grown from its lowest-numbered catalog ID. An observable
//! that is in an odd number of chosen IDs forces another ID through it; the
//! branches over the candidate IDs are made disjoint by forbidding earlier
//! candidates in later branches. When all counts are even the search either
//! extends through some observable or freezes it, so each diagram is reached
//! exactly once and all emitted diagrams are connected.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::catalog::{Catalog, IdSet};
use crate::diagram::{Diagram, DiagramSymbol};
use crate::error::{Error, Result};

/// Two IDs of the given size sharing exactly `shared` observables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairOverlap {
    pub size: usize,
    pub shared: usize,
    /// Require one of the pair to be positive and the other negative.
    pub opposite_signs: bool,
}

#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub target: DiagramSymbol,
    pub pair_overlap: Option<PairOverlap>,
    /// Emit only diagrams reducible neither by IDs nor by qubits.
    pub critical_only: bool,
}

impl SearchSpec {
    pub fn new(target: DiagramSymbol) -> Self {
        Self {
            target,
            pair_overlap: None,
            critical_only: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchLimits {
    /// Stop after this many diagrams (seeds are processed in batches, so the
    /// result is still the first diagrams in seed order).
    pub max_diagrams: Option<usize>,
    /// Node budget for each seed ID.
    pub max_nodes_per_seed: Option<u64>,
    /// Wall-clock budget for the whole search. Results cut short by time are
    /// not reproducible.
    pub time_limit: Option<Duration>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            max_diagrams: Some(1),
            max_nodes_per_seed: Some(2_000_000),
            time_limit: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    /// Every seed was searched to the end.
    Complete,
    /// Stopped because the requested number of diagrams was found.
    DiagramLimit,
    /// Some subtrees were cut by the node or time budget: an empty result
    /// says nothing about existence.
    LimitsExhausted,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub diagrams: Vec<Diagram>,
    pub status: SearchStatus,
    pub nodes: u64,
    pub seeds_searched: usize,
}

struct Candidate {
    members: Vec<usize>,
    slot: usize,
    negative: bool,
}

struct Context<'a> {
    n_obs: usize,
    ids: Vec<&'a IdSet>,
    cands: Vec<Candidate>,
    /// observable → candidate IDs containing it, ascending
    through: Vec<Vec<usize>>,
    slot_sizes: Vec<usize>,
    quotas: Vec<usize>,
    /// target multiplicities, descending
    target_mults: Vec<usize>,
    max_mult: usize,
    distinct_target: usize,
    spec: &'a SearchSpec,
    deadline: Option<Instant>,
    timed_out: &'a AtomicBool,
}

pub fn search_diagrams(
    catalog: &Catalog,
    spec: &SearchSpec,
    limits: &SearchLimits,
) -> Result<SearchOutcome> {
    let target = &spec.target;
    if !target.is_consistent() {
        return Err(Error::InvalidArgument(format!(
            "symbol {target} has {} observable incidences but {} ID incidences",
            target.observable_incidences(),
            target.id_incidences()
        )));
    }
    let slot_sizes: Vec<usize> = target.id_sizes.keys().copied().collect();
    if let Some(m) = slot_sizes.iter().find(|&&m| catalog.ids(m).is_empty()) {
        return Err(Error::InvalidArgument(format!(
            "catalog has no IDs of size {m} for {} qubits",
            catalog.n_qubits()
        )));
    }
    let mut ids = Vec::new();
    let mut cands = Vec::new();
    let mut through = vec![Vec::new(); catalog.observables().len()];
    for (slot, &m) in slot_sizes.iter().enumerate() {
        for id in catalog.ids(m) {
            let members: Vec<usize> = id
                .members()
                .iter()
                .map(|b| catalog.observable_index(b).expect("catalog member"))
                .collect();
            for &o in &members {
                through[o].push(cands.len());
            }
            cands.push(Candidate {
                members,
                slot,
                negative: id.is_negative(),
            });
            ids.push(id);
        }
    }
    let mut target_mults: Vec<usize> = target
        .obs_multiplicities
        .iter()
        .flat_map(|(&m, &c)| std::iter::repeat_n(m, c))
        .collect();
    target_mults.sort_unstable_by(|a, b| b.cmp(a));
    let timed_out = AtomicBool::new(false);
    let ctx = Context {
        n_obs: catalog.observables().len(),
        ids,
        through,
        quotas: slot_sizes.iter().map(|m| target.id_sizes[m]).collect(),
        slot_sizes,
        max_mult: target.max_multiplicity(),
        distinct_target: target.observable_count(),
        target_mults,
        spec,
        deadline: limits.time_limit.map(|t| Instant::now() + t),
        timed_out: &timed_out,
        cands,
    };

    let batch = rayon::current_num_threads().max(1) * 4;
    let seeds: Vec<usize> = (0..ctx.cands.len()).collect();
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut nodes = 0u64;
    let mut truncated = false;
    let mut seeds_searched = 0;
    let mut status = SearchStatus::Complete;
    for chunk in seeds.chunks(batch) {
        let cap = limits.max_diagrams;
        let results: Vec<SeedResult> = chunk
            .par_iter()
            .map(|&s| run_seed(&ctx, s, cap, limits.max_nodes_per_seed))
            .collect();
        for r in results {
            nodes += r.nodes;
            truncated |= r.truncated;
            found.extend(r.found);
        }
        seeds_searched += chunk.len();
        if let Some(cap) = cap {
            if found.len() >= cap {
                found.truncate(cap);
                status = SearchStatus::DiagramLimit;
                break;
            }
        }
        if timed_out.load(Ordering::Relaxed) {
            break;
        }
    }
    if status == SearchStatus::Complete && (truncated || timed_out.load(Ordering::Relaxed)) {
        status = SearchStatus::LimitsExhausted;
    }
    let diagrams = found
        .into_iter()
        .map(|chosen| Diagram::new(chosen.iter().map(|&c| ctx.ids[c].clone()).collect()))
        .collect::<Result<Vec<_>>>()?;
    Ok(SearchOutcome {
        diagrams,
        status,
        nodes,
        seeds_searched,
    })
}

struct SeedResult {
    found: Vec<Vec<usize>>,
    nodes: u64,
    truncated: bool,
}

fn run_seed(ctx: &Context, seed: usize, cap: Option<usize>, node_cap: Option<u64>) -> SeedResult {
    let mut st = State {
        ctx,
        seed,
        chosen: Vec::new(),
        is_chosen: vec![false; ctx.cands.len()],
        forbidden: vec![0; ctx.cands.len()],
        counts: vec![0; ctx.n_obs],
        frozen: vec![false; ctx.n_obs],
        distinct: 0,
        used: vec![0; ctx.quotas.len()],
        negatives: 0,
        nodes: 0,
        node_cap,
        cap,
        found: Vec::new(),
        truncated: false,
    };
    if st.allowed(seed) {
        st.add(seed);
        st.explore();
    }
    SeedResult {
        found: st.found,
        nodes: st.nodes,
        truncated: st.truncated,
    }
}

struct State<'a> {
    ctx: &'a Context<'a>,
    seed: usize,
    chosen: Vec<usize>,
    is_chosen: Vec<bool>,
    forbidden: Vec<u32>,
    counts: Vec<usize>,
    frozen: Vec<bool>,
    distinct: usize,
    used: Vec<usize>,
    negatives: usize,
    nodes: u64,
    node_cap: Option<u64>,
    cap: Option<usize>,
    found: Vec<Vec<usize>>,
    truncated: bool,
}

impl State<'_> {
    fn stopped(&self) -> bool {
        self.truncated || self.cap.is_some_and(|c| self.found.len() >= c)
    }

    fn allowed(&self, c: usize) -> bool {
        if c < self.seed || self.is_chosen[c] || self.forbidden[c] > 0 {
            return false;
        }
        let cand = &self.ctx.cands[c];
        if self.used[cand.slot] >= self.ctx.quotas[cand.slot] {
            return false;
        }
        let mut fresh = 0;
        for &o in &cand.members {
            if self.frozen[o] || self.counts[o] >= self.ctx.max_mult {
                return false;
            }
            if self.counts[o] == 0 {
                fresh += 1;
            }
        }
        self.distinct + fresh <= self.ctx.distinct_target
    }

    fn add(&mut self, c: usize) {
        let cand = &self.ctx.cands[c];
        for &o in &cand.members {
            if self.counts[o] == 0 {
                self.distinct += 1;
            }
            self.counts[o] += 1;
        }
        self.used[cand.slot] += 1;
        self.negatives += cand.negative as usize;
        self.is_chosen[c] = true;
        self.chosen.push(c);
    }

    fn remove(&mut self, c: usize) {
        let cand = &self.ctx.cands[c];
        for &o in &cand.members {
            self.counts[o] -= 1;
            if self.counts[o] == 0 {
                self.distinct -= 1;
            }
        }
        self.used[cand.slot] -= 1;
        self.negatives -= cand.negative as usize;
        self.is_chosen[c] = false;
        self.chosen.pop();
    }

    /// Can the current multiplicities still grow into the target multiset?
    fn feasible(&self) -> bool {
        let mut targets = self.ctx.target_mults.clone();
        // frozen observables must match a target value exactly
        for o in (0..self.ctx.n_obs).filter(|&o| self.frozen[o]) {
            match targets.iter().position(|&t| t == self.counts[o]) {
                Some(p) => {
                    targets.remove(p);
                }
                None => return false,
            }
        }
        let mut open: Vec<usize> = (0..self.ctx.n_obs)
            .filter(|&o| self.counts[o] > 0 && !self.frozen[o])
            .map(|o| self.counts[o])
            .collect();
        if open.len() > targets.len() {
            return false;
        }
        open.sort_unstable_by(|a, b| b.cmp(a));
        if open.iter().zip(&targets).any(|(c, t)| c > t) {
            return false;
        }
        // incidences still to place versus the least the open and missing
        // observables need
        let remaining: usize = self
            .ctx
            .quotas
            .iter()
            .zip(&self.used)
            .zip(&self.ctx.slot_sizes)
            .map(|((q, u), s)| (q - u) * s)
            .sum();
        let missing = targets.len() - open.len();
        let least = open.iter().filter(|&&c| c % 2 == 1).count()
            + targets[targets.len() - missing..].iter().sum::<usize>();
        if least > remaining {
            return false;
        }
        self.pair_still_possible()
    }

    fn pair_still_possible(&self) -> bool {
        let Some(p) = self.ctx.spec.pair_overlap else {
            return true;
        };
        let Some(slot) = self.ctx.slot_sizes.iter().position(|&s| s == p.size) else {
            return false;
        };
        self.used[slot] < self.ctx.quotas[slot] || self.has_pair(p)
    }

    fn has_pair(&self, p: PairOverlap) -> bool {
        let of_size: Vec<&Candidate> = self
            .chosen
            .iter()
            .map(|&c| &self.ctx.cands[c])
            .filter(|c| c.members.len() == p.size)
            .collect();
        of_size.iter().enumerate().any(|(i, a)| {
            of_size[i + 1..].iter().any(|b| {
                let shared = a.members.iter().filter(|o| b.members.contains(o)).count();
                shared == p.shared && (!p.opposite_signs || a.negative != b.negative)
            })
        })
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.node_cap.is_some_and(|cap| self.nodes > cap) {
            self.truncated = true;
        }
        if self.nodes.is_multiple_of(4096) {
            if let Some(d) = self.ctx.deadline {
                if Instant::now() > d {
                    self.ctx.timed_out.store(true, Ordering::Relaxed);
                }
            }
        }
        if self.ctx.timed_out.load(Ordering::Relaxed) {
            self.truncated = true;
        }
        !self.stopped()
    }

    fn candidates_through(&self, o: usize) -> Vec<usize> {
        self.ctx.through[o]
            .iter()
            .copied()
            .filter(|&c| self.allowed(c))
            .collect()
    }

    fn explore(&mut self) {
        if !self.tick() || !self.feasible() {
            return;
        }
        let odd: Vec<usize> = (0..self.ctx.n_obs)
            .filter(|&o| self.counts[o] % 2 == 1)
            .collect();
        if !odd.is_empty() {
            let mut best: Option<Vec<usize>> = None;
            for &o in &odd {
                let c = self.candidates_through(o);
                if c.is_empty() {
                    return;
                }
                if best.as_ref().is_none_or(|b| c.len() < b.len()) {
                    best = Some(c);
                }
            }
            self.branch_over(&best.expect("odd observables present"));
            return;
        }
        if self.used == self.ctx.quotas {
            self.terminal();
            return;
        }
        // all counts even but IDs remain: extend through an open observable
        // or freeze it
        let mut best: Option<(usize, Vec<usize>)> = None;
        for o in (0..self.ctx.n_obs).filter(|&o| self.counts[o] > 0 && !self.frozen[o]) {
            let c = self.candidates_through(o);
            if best.as_ref().is_none_or(|(_, b)| c.len() < b.len()) {
                best = Some((o, c));
            }
        }
        let Some((o, cands)) = best else {
            return;
        };
        self.branch_over(&cands);
        if self.stopped() {
            return;
        }
        for &c in &cands {
            self.forbidden[c] += 1;
        }
        self.frozen[o] = true;
        self.explore();
        self.frozen[o] = false;
        for &c in &cands {
            self.forbidden[c] -= 1;
        }
    }

    /// Branch `k` takes `cands[k]` and forbids `cands[..k]`.
    fn branch_over(&mut self, cands: &[usize]) {
        for (k, &c) in cands.iter().enumerate() {
            if self.allowed(c) {
                self.add(c);
                self.explore();
                self.remove(c);
            }
            if self.stopped() {
                for &f in &cands[..k] {
                    self.forbidden[f] -= 1;
                }
                return;
            }
            self.forbidden[c] += 1;
        }
        for &f in cands {
            self.forbidden[f] -= 1;
        }
    }

    fn terminal(&mut self) {
        if self.negatives.is_multiple_of(2) {
            return;
        }
        let mut mults: Vec<usize> = self.counts.iter().copied().filter(|&c| c > 0).collect();
        mults.sort_unstable_by(|a, b| b.cmp(a));
        if mults != self.ctx.target_mults {
            return;
        }
        if let Some(p) = self.ctx.spec.pair_overlap {
            if !self.has_pair(p) {
                return;
            }
        }
        let mut chosen = self.chosen.clone();
        chosen.sort_unstable();
        if self.ctx.spec.critical_only {
            let d = Diagram::new(chosen.iter().map(|&c| self.ctx.ids[c].clone()).collect())
                .expect("search builds valid diagrams");
            if !d.is_critical().map(|r| r.is_critical()).unwrap_or(false) {
                return;
            }
        }
        self.found.push(chosen);
    }
}
