//! Observable-based KS diagrams: a set of IDs over Pauli observables.
//!
//! A diagram proves the KS theorem when every observable lies in an even
//! number of its IDs and the number of negative IDs is odd.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::Serialize;

use crate::catalog::{product_sign, IdSet};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::pauli::{Observable, PhasedPauli, Sign};

/// Largest diagram handled by [`Diagram::exhaustive_assignment_check`].
pub const ASSIGNMENT_CAP: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    n: usize,
    observables: Vec<PhasedPauli>,
    ids: Vec<IdSet>,
}

impl Diagram {
    /// Build a diagram from its IDs; the observable set is the union of the
    /// ID members, in lexicographic order.
    pub fn new(ids: Vec<IdSet>) -> Result<Self> {
        let Some(first) = ids.first() else {
            return Err(Error::Malformed("a diagram needs at least one ID".into()));
        };
        let n = first.n_qubits();
        if let Some(id) = ids.iter().find(|id| id.n_qubits() != n) {
            return Err(Error::QubitMismatch {
                left: n,
                right: id.n_qubits(),
            });
        }
        let mut seen = BTreeSet::new();
        for id in &ids {
            if !seen.insert(id.canonical_members()) {
                return Err(Error::Malformed(format!("ID {id} listed twice")));
            }
        }
        let observables: BTreeSet<PhasedPauli> = ids
            .iter()
            .flat_map(|id| id.members().iter().map(PhasedPauli::base))
            .collect();
        Ok(Self {
            n,
            observables: observables.into_iter().collect(),
            ids,
        })
    }

    /// Build from an explicit observable set, checking that every ID member
    /// belongs to it and every observable is used.
    pub fn with_observables(observables: &[PhasedPauli], ids: Vec<IdSet>) -> Result<Self> {
        let d = Self::new(ids)?;
        let given: BTreeSet<PhasedPauli> = observables.iter().map(PhasedPauli::base).collect();
        if let Some(missing) = d.observables.iter().find(|o| !given.contains(o)) {
            return Err(Error::Malformed(format!(
                "ID member {missing} is not in the observable set"
            )));
        }
        if let Some(unused) = given.iter().find(|o| !d.observables.contains(o)) {
            return Err(Error::Malformed(format!("observable {unused} occurs in no ID")));
        }
        Ok(d)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn observables(&self) -> &[PhasedPauli] {
        &self.observables
    }

    pub fn ids(&self) -> &[IdSet] {
        &self.ids
    }

    pub fn observable_index(&self, base: &PhasedPauli) -> Option<usize> {
        self.observables.binary_search(&base.base()).ok()
    }

    /// Number of IDs containing each observable.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut counts = vec![0; self.observables.len()];
        for id in &self.ids {
            for m in id.members() {
                counts[self.observable_index(m).expect("member present")] += 1;
            }
        }
        counts
    }

    pub fn validate(&self) -> ValidityReport {
        let counts = self.multiplicities();
        let odd_observables: Vec<PhasedPauli> = self
            .observables
            .iter()
            .zip(&counts)
            .filter(|(_, &c)| c % 2 == 1)
            .map(|(o, _)| *o)
            .collect();
        let negative_id_count = self.ids.iter().filter(|id| id.is_negative()).count();
        let property_a = odd_observables.is_empty();
        let property_b = negative_id_count % 2 == 1;
        ValidityReport {
            property_a,
            negative_id_count,
            property_b,
            is_ks_proof: property_a && property_b,
            odd_observables: odd_observables.iter().map(|o| o.to_string()).collect(),
        }
    }

    pub fn symbol(&self) -> DiagramSymbol {
        let mut obs_multiplicities = BTreeMap::new();
        for c in self.multiplicities() {
            *obs_multiplicities.entry(c).or_insert(0) += 1;
        }
        let mut id_sizes = BTreeMap::new();
        for id in &self.ids {
            *id_sizes.entry(id.len()).or_insert(0) += 1;
        }
        DiagramSymbol {
            obs_multiplicities,
            id_sizes,
        }
    }

    /// Search for a noncontextual ±1 assignment obeying the product rule in
    /// every ID, by backtracking with unit propagation over the IDs.
    pub fn exhaustive_assignment_check(&self) -> Result<AssignmentResult> {
        let k = self.observables.len();
        if k > ASSIGNMENT_CAP {
            return Err(Error::CapExceeded {
                what: "observables for assignment search",
                value: k,
                cap: ASSIGNMENT_CAP,
            });
        }
        let ids: Vec<(Vec<usize>, bool)> = self
            .ids
            .iter()
            .map(|id| {
                let members = id
                    .members()
                    .iter()
                    .map(|m| self.observable_index(m).expect("member present"))
                    .collect();
                (members, id.is_negative())
            })
            .collect();
        let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); k];
        for (j, (members, _)) in ids.iter().enumerate() {
            for &m in members {
                occurs[m].push(j);
            }
        }
        let mut search = AssignmentSearch {
            ids: &ids,
            occurs: &occurs,
            values: vec![None; k],
            nodes: 0,
        };
        let found = search.solve();
        let nodes = search.nodes;
        Ok(AssignmentResult {
            witness: found.then(|| {
                search
                    .values
                    .iter()
                    .map(|v| Sign::from_negative(v.unwrap_or(false)))
                    .collect()
            }),
            nodes,
        })
    }

    /// Restrict every observable to the kept qubits. Trivial remainders are
    /// dropped from their IDs; each restricted ID is re-checked exactly.
    pub fn restrict(&self, kept: &[usize]) -> Result<Restriction> {
        let kept = crate::pauli::normalize_qubits(kept, self.n)?;
        let mut ids = Vec::with_capacity(self.ids.len());
        let mut broken = Vec::new();
        for (j, id) in self.ids.iter().enumerate() {
            let members: Vec<Observable> = id
                .members()
                .iter()
                .map(|m| Observable::positive(*m).and_then(|o| o.restrict(&kept)))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect();
            let sign = if members.is_empty() {
                Some(Sign::Plus)
            } else {
                product_sign(&members)?
            };
            match sign {
                Some(sign) => ids.push((members.iter().map(Observable::base).collect(), sign)),
                None => broken.push(j),
            }
        }
        Ok(Restriction {
            kept,
            ids,
            broken_ids: broken,
        })
    }

    /// Criticality: whether a proper subset of IDs, or a restriction to a
    /// proper subset of qubits, still proves the theorem.
    pub fn is_critical(&self) -> Result<CriticalityReport> {
        let report = self.validate();
        if !report.is_ks_proof {
            return Err(Error::NotAProof(format!(
                "property (a) {}, {} negative IDs",
                if report.property_a { "holds" } else { "fails" },
                report.negative_id_count
            )));
        }
        let reducing_id_subset = self.proper_proof_subset();
        let mut reducing_qubit_subsets = Vec::new();
        for size in 1..self.n {
            for kept in (0..self.n).combinations(size) {
                if self.restrict(&kept)?.is_ks_proof() {
                    reducing_qubit_subsets.push(kept);
                }
            }
        }
        Ok(CriticalityReport {
            id_irreducible: reducing_id_subset.is_none(),
            qubit_irreducible: reducing_qubit_subsets.is_empty(),
            reducing_id_subset,
            reducing_qubit_subsets,
        })
    }

    /// A proper nonempty subset of IDs satisfying both proof properties, if
    /// one exists. The subsets with every observable covered evenly form the
    /// kernel of the observable × ID incidence matrix; the full set lies in it.
    /// If the kernel has any element besides `0` and the full set, either that
    /// element or its sum with the full set has an odd number of negative IDs.
    fn proper_proof_subset(&self) -> Option<Vec<usize>> {
        let m = self.ids.len();
        let mut incidence = BitMatrix::zeros(self.observables.len(), m);
        for (j, id) in self.ids.iter().enumerate() {
            for b in id.members() {
                incidence.set(self.observable_index(b).expect("member present"), j, true);
            }
        }
        let kernel = incidence.kernel_basis();
        let full: Vec<bool> = vec![true; m];
        let negative = |v: &[bool]| {
            v.iter()
                .zip(&self.ids)
                .filter(|(&x, id)| x && id.is_negative())
                .count()
                % 2
                == 1
        };
        for k in &kernel {
            let v: Vec<bool> = (0..m).map(|j| k.contains(j)).collect();
            if v == full {
                continue;
            }
            let chosen = if negative(&v) {
                v
            } else {
                v.iter().map(|&x| !x).collect()
            };
            return Some(
                chosen
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x)
                    .map(|(j, _)| j)
                    .collect(),
            );
        }
        None
    }

    /// Heuristic invariant used to tell diagrams apart: the symbol plus the
    /// sorted profile of pairwise ID intersection sizes and ID signs.
    pub fn fingerprint(&self) -> String {
        let mut profile: Vec<(usize, usize, usize)> = self
            .ids
            .iter()
            .tuple_combinations()
            .map(|(a, b)| {
                let shared = a.members().iter().filter(|m| b.contains(m)).count();
                (a.len().min(b.len()), a.len().max(b.len()), shared)
            })
            .filter(|t| t.2 > 0)
            .collect();
        profile.sort_unstable();
        let mut negatives: Vec<usize> = self
            .ids
            .iter()
            .filter(|id| id.is_negative())
            .map(IdSet::len)
            .collect();
        negatives.sort_unstable();
        format!(
            "{} | neg {:?} | overlaps {:?}",
            self.symbol(),
            negatives,
            profile.iter().dedup_with_count().collect::<Vec<_>>()
        )
    }

    /// Graphviz rendering: one node per observable, one chain of edges per
    /// ID, negative IDs drawn thick.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph diagram {\n  node [shape=circle];\n");
        for (i, o) in self.observables.iter().enumerate() {
            out.push_str(&format!("  o{i} [label=\"{o}\"];\n"));
        }
        for (j, id) in self.ids.iter().enumerate() {
            let style = if id.is_negative() {
                "penwidth=4"
            } else {
                "penwidth=1"
            };
            let nodes = id
                .members()
                .iter()
                .map(|m| format!("o{}", self.observable_index(m).expect("member present")))
                .join(" -- ");
            out.push_str(&format!("  {nodes} [id=\"id{j}\", {style}];\n"));
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for Diagram {
    /// The line-oriented diagram file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits: {}", self.n)?;
        for id in &self.ids {
            writeln!(f, "{id}")?;
        }
        Ok(())
    }
}

impl FromStr for Diagram {
    type Err = Error;

    /// Parse the diagram file format: a `qubits: N` header, then one ID per
    /// line as comma-separated observables. A negative ID carries a leading
    /// `-` on exactly one member. Blank lines and `#` comments are ignored.
    fn from_str(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut ids = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Line {
                line: line_no,
                message,
            };
            if n.is_none() {
                let value = line
                    .strip_prefix("qubits:")
                    .ok_or_else(|| err("expected header `qubits: N`".into()))?;
                let value: usize = value
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("bad qubit count {:?}", value.trim())))?;
                if value == 0 {
                    return Err(err("qubit count must be positive".into()));
                }
                n = Some(value);
                continue;
            }
            let n = n.expect("header parsed");
            let members: Vec<Observable> = line
                .split(',')
                .map(|s| s.trim().parse::<Observable>())
                .collect::<Result<_>>()
                .map_err(|e| err(e.to_string()))?;
            if let Some(o) = members.iter().find(|o| o.n_qubits() != n) {
                return Err(err(format!("{o} does not act on {n} qubits")));
            }
            if members.iter().filter(|o| o.sign().is_negative()).count() > 1 {
                return Err(err("at most one member may carry '-'".into()));
            }
            let id = IdSet::from_printed(&members).map_err(|e| err(e.to_string()))?;
            ids.push(id);
        }
        if n.is_none() {
            return Err(Error::Line {
                line: 1,
                message: "missing header `qubits: N`".into(),
            });
        }
        Diagram::new(ids)
    }
}

struct AssignmentSearch<'a> {
    ids: &'a [(Vec<usize>, bool)],
    occurs: &'a [Vec<usize>],
    values: Vec<Option<bool>>,
    nodes: u64,
}

impl AssignmentSearch<'_> {
    /// `values[i] = Some(true)` means observable `i` is assigned `-1`.
    fn solve(&mut self) -> bool {
        let mut trail = Vec::new();
        self.solve_inner(&mut trail)
    }

    fn solve_inner(&mut self, trail: &mut Vec<usize>) -> bool {
        self.nodes += 1;
        let Some(next) = self.values.iter().position(Option::is_none) else {
            return true;
        };
        for value in [false, true] {
            let mark = trail.len();
            if self.assign(next, value, trail) && self.solve_inner(trail) {
                return true;
            }
            for i in trail.drain(mark..) {
                self.values[i] = None;
            }
        }
        false
    }

    /// Assign and propagate; false on a product-rule violation.
    fn assign(&mut self, var: usize, value: bool, trail: &mut Vec<usize>) -> bool {
        let mut queue = vec![(var, value)];
        while let Some((v, val)) = queue.pop() {
            match self.values[v] {
                Some(existing) if existing != val => return false,
                Some(_) => continue,
                None => {
                    self.values[v] = Some(val);
                    trail.push(v);
                }
            }
            for &j in &self.occurs[v] {
                let (members, negative) = &self.ids[j];
                let mut parity = false;
                let mut free = None;
                let mut free_count = 0;
                for &m in members {
                    match self.values[m] {
                        Some(x) => parity ^= x,
                        None => {
                            free_count += 1;
                            free = Some(m);
                        }
                    }
                }
                match free_count {
                    0 if parity != *negative => return false,
                    1 => queue.push((free.expect("one free"), parity ^ negative)),
                    _ => {}
                }
            }
        }
        true
    }
}

/// Outcome of the ±1 assignment search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssignmentResult {
    /// Values per observable (diagram order) when a consistent assignment exists.
    pub witness: Option<Vec<Sign>>,
    pub nodes: u64,
}

impl AssignmentResult {
    pub fn consistent_assignment_exists(&self) -> bool {
        self.witness.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidityReport {
    pub property_a: bool,
    pub negative_id_count: usize,
    pub property_b: bool,
    pub is_ks_proof: bool,
    /// Observables lying in an odd number of IDs.
    pub odd_observables: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalityReport {
    pub id_irreducible: bool,
    pub qubit_irreducible: bool,
    /// Indices of a proper ID subset that is itself a proof.
    pub reducing_id_subset: Option<Vec<usize>>,
    /// Kept-qubit subsets whose restriction is still a proof.
    pub reducing_qubit_subsets: Vec<Vec<usize>>,
}

impl CriticalityReport {
    pub fn is_critical(&self) -> bool {
        self.id_irreducible && self.qubit_irreducible
    }
}

/// A diagram with some qubits ignored. Restricted IDs are multisets of
/// bases (distinct observables may coincide after restriction).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub kept: Vec<usize>,
    /// Restricted IDs that are still commuting sets with product `±I`.
    pub ids: Vec<(Vec<PhasedPauli>, Sign)>,
    /// Indices of original IDs that stopped being IDs.
    pub broken_ids: Vec<usize>,
}

impl Restriction {
    /// True when every ID survived and the parity argument still applies.
    pub fn is_ks_proof(&self) -> bool {
        if !self.broken_ids.is_empty() {
            return false;
        }
        let mut counts: BTreeMap<(u32, u32), usize> = BTreeMap::new();
        for (members, _) in &self.ids {
            for m in members {
                *counts.entry(m.key()).or_default() += 1;
            }
        }
        let negatives = self.ids.iter().filter(|(_, s)| s.is_negative()).count();
        counts.values().all(|c| c % 2 == 0) && negatives % 2 == 1
    }
}

/// Diagram symbol: how many observables have each multiplicity and how many
/// IDs have each size. Written like `1_4 11_2-2_3 5_4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize)]
pub struct DiagramSymbol {
    /// multiplicity → number of observables
    pub obs_multiplicities: BTreeMap<usize, usize>,
    /// ID size → number of IDs
    pub id_sizes: BTreeMap<usize, usize>,
}

impl DiagramSymbol {
    pub fn observable_count(&self) -> usize {
        self.obs_multiplicities.values().sum()
    }

    pub fn id_count(&self) -> usize {
        self.id_sizes.values().sum()
    }

    /// Σ multiplicity × count over observables.
    pub fn observable_incidences(&self) -> usize {
        self.obs_multiplicities.iter().map(|(m, c)| m * c).sum()
    }

    /// Σ size × count over IDs.
    pub fn id_incidences(&self) -> usize {
        self.id_sizes.iter().map(|(s, c)| s * c).sum()
    }

    pub fn is_consistent(&self) -> bool {
        self.observable_incidences() == self.id_incidences()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.obs_multiplicities.keys().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for DiagramSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let left = self
            .obs_multiplicities
            .iter()
            .rev()
            .map(|(m, c)| format!("{c}_{m}"))
            .join(" ");
        let right = self
            .id_sizes
            .iter()
            .map(|(s, c)| format!("{c}_{s}"))
            .join(" ");
        write!(f, "{left}-{right}")
    }
}

impl FromStr for DiagramSymbol {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = |m: String| Error::Parse {
            position: 0,
            message: m,
        };
        let (left, right) = text
            .split_once('-')
            .ok_or_else(|| bad(format!("symbol {text:?} lacks '-'")))?;
        let parse_side = |side: &str| -> Result<BTreeMap<usize, usize>> {
            let mut map = BTreeMap::new();
            for token in side.split_whitespace() {
                let (count, sub) = token
                    .split_once('_')
                    .ok_or_else(|| bad(format!("bad symbol term {token:?}")))?;
                let count: usize = count
                    .parse()
                    .map_err(|_| bad(format!("bad count in {token:?}")))?;
                let sub: usize = sub
                    .parse()
                    .map_err(|_| bad(format!("bad subscript in {token:?}")))?;
                if count == 0 || sub == 0 {
                    return Err(bad(format!("zero in symbol term {token:?}")));
                }
                *map.entry(sub).or_insert(0) += count;
            }
            if map.is_empty() {
                return Err(bad(format!("empty half in symbol {text:?}")));
            }
            Ok(map)
        };
        Ok(Self {
            obs_multiplicities: parse_side(left)?,
            id_sizes: parse_side(right)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn pentagram_is_a_proof() {
        let d = fixtures::pentagram();
        let r = d.validate();
        assert!(r.is_ks_proof);
        assert_eq!(r.negative_id_count, 1);
        assert_eq!(d.symbol().to_string(), "10_2-5_4");
        assert!(!d.exhaustive_assignment_check().unwrap().consistent_assignment_exists());
    }

    #[test]
    fn flipped_pentagram_fails_property_b() {
        let d = fixtures::pentagram();
        let ids = d
            .ids()
            .iter()
            .map(|id| IdSet::from_raw_parts(id.members().to_vec(), Sign::Plus))
            .collect();
        let flipped = Diagram::new(ids).unwrap();
        let r = flipped.validate();
        assert!(r.property_a);
        assert!(!r.property_b);
        assert!(!r.is_ks_proof);
        let a = flipped.exhaustive_assignment_check().unwrap();
        assert_eq!(a.witness, Some(vec![Sign::Plus; 10]));
    }

    #[test]
    fn pentagram_without_negative_id_is_assignable() {
        let d = fixtures::pentagram();
        let ids: Vec<IdSet> = d.ids().iter().filter(|id| !id.is_negative()).cloned().collect();
        let sub = Diagram::new(ids).unwrap();
        assert!(!sub.validate().property_a);
        assert!(sub.exhaustive_assignment_check().unwrap().consistent_assignment_exists());
    }

    #[test]
    fn squares() {
        let s2 = fixtures::square2();
        assert_eq!(s2.symbol().to_string(), "9_2-6_3");
        assert!(s2.validate().is_ks_proof);
        assert!(!s2.exhaustive_assignment_check().unwrap().consistent_assignment_exists());
        let s3 = fixtures::square3();
        assert_eq!(s3.symbol().to_string(), "9_2-6_3");
        assert!(s3.validate().is_ks_proof);
    }

    #[test]
    fn empty_diagram_is_malformed() {
        assert!(matches!(Diagram::new(vec![]), Err(Error::Malformed(_))));
        assert!(matches!("qubits: 3\n".parse::<Diagram>(), Err(Error::Malformed(_))));
    }

    #[test]
    fn observable_set_must_match() {
        let d = fixtures::square2();
        let mut obs = d.observables().to_vec();
        obs.pop();
        assert!(Diagram::with_observables(&obs, d.ids().to_vec()).is_err());
        let mut extra = d.observables().to_vec();
        extra.push(crate::pauli::base("YI"));
        assert!(Diagram::with_observables(&extra, d.ids().to_vec()).is_err());
        assert!(Diagram::with_observables(d.observables(), d.ids().to_vec()).is_ok());
    }

    #[test]
    fn parse_errors_name_the_line() {
        let text = "qubits: 2\nXI, IX, XX\nXI, ZI, YI\n";
        match text.parse::<Diagram>() {
            Err(Error::Line { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!("XI, IX\n".parse::<Diagram>(), Err(Error::Line { line: 1, .. })));
        assert!(matches!(
            "qubits: 2\nXI, IX, XXX\n".parse::<Diagram>(),
            Err(Error::Line { line: 2, .. })
        ));
        assert!(matches!(
            "qubits: 2\n-XI, -IX, XX\n".parse::<Diagram>(),
            Err(Error::Line { line: 2, .. })
        ));
    }

    #[test]
    fn file_round_trip() {
        for d in [fixtures::pentagram(), fixtures::square3(), fixtures::square2()] {
            let text = d.to_string();
            let back: Diagram = text.parse().unwrap();
            assert_eq!(back, d);
        }
    }

    #[test]
    fn symbol_parsing() {
        let s: DiagramSymbol = "1_4 11_2-2_3 5_4".parse().unwrap();
        assert_eq!(s.to_string(), "1_4 11_2-2_3 5_4");
        assert!(s.is_consistent());
        let t: DiagramSymbol = "11_2 1_4-5_4 2_3".parse().unwrap();
        assert_eq!(s, t);
        assert!("10_2".parse::<DiagramSymbol>().is_err());
        assert!("10_2-".parse::<DiagramSymbol>().is_err());
        assert!("x_2-5_4".parse::<DiagramSymbol>().is_err());
    }

    fn brute_force_proper_subset(d: &Diagram) -> bool {
        let m = d.ids().len();
        (1u64..(1 << m) - 1).any(|mask| {
            let ids: Vec<IdSet> = (0..m)
                .filter(|j| mask >> j & 1 == 1)
                .map(|j| d.ids()[j].clone())
                .collect();
            Diagram::new(ids).unwrap().validate().is_ks_proof
        })
    }

    #[test]
    fn criticality_of_known_diagrams() {
        for d in [fixtures::pentagram(), fixtures::square2(), fixtures::square3()] {
            let c = d.is_critical().unwrap();
            assert!(c.id_irreducible, "{}", d.symbol());
            assert!(!brute_force_proper_subset(&d));
            assert!(c.qubit_irreducible);
        }
    }

    #[test]
    fn wheel_restriction_breaks_two_spokes() {
        let d = fixtures::square3();
        for q in 0..3 {
            let kept: Vec<usize> = (0..3).filter(|&k| k != q).collect();
            let r = d.restrict(&kept).unwrap();
            assert!(!r.is_ks_proof());
            assert_eq!(r.broken_ids.len(), 2, "dropping qubit {q}");
        }
    }

    #[test]
    fn disjoint_copies_are_reducible() {
        // Two copies have an even number of negative IDs, so use three copies
        // of the square on qubit pairs (0,1), (2,3), (4,5).
        let s = fixtures::square2();
        let lift = |id: &IdSet, copy: usize| {
            let members: Vec<PhasedPauli> = id
                .members()
                .iter()
                .map(|m| {
                    let mut t = "II".repeat(3);
                    t.replace_range(2 * copy..2 * copy + 2, &m.to_string());
                    crate::pauli::base(&t)
                })
                .collect();
            IdSet::from_bases(&members).unwrap()
        };
        let two: Vec<IdSet> = (0..2).flat_map(|c| s.ids().iter().map(move |id| (c, id))).map(|(c, id)| lift(id, c)).collect();
        assert!(!Diagram::new(two).unwrap().validate().is_ks_proof);
        let three: Vec<IdSet> = (0..3).flat_map(|c| s.ids().iter().map(move |id| (c, id))).map(|(c, id)| lift(id, c)).collect();
        let d = Diagram::new(three).unwrap();
        assert!(d.validate().is_ks_proof);
        let c = d.is_critical().unwrap();
        assert!(!c.id_irreducible);
        let sub = c.reducing_id_subset.unwrap();
        let sub_d = Diagram::new(sub.iter().map(|&j| d.ids()[j].clone()).collect()).unwrap();
        assert!(sub_d.validate().is_ks_proof);
        assert!(!c.qubit_irreducible);
        assert!(c.reducing_qubit_subsets.contains(&vec![0, 1]));
        assert!(brute_force_proper_subset(&Diagram::new(d.ids()[..12].to_vec()).unwrap()));
    }

    #[test]
    fn dot_output() {
        let dot = fixtures::square2().to_dot();
        assert_eq!(dot.matches("[label=").count(), 9);
        assert_eq!(dot.matches("[id=").count(), 6);
        assert_eq!(dot.matches("penwidth=4").count(), 1);
    }
}
