//! Observables, maximal commuting sets and IDs of the N-qubit Pauli group.
//!
//! An ID is a set of pairwise commuting nontrivial observables whose product
//! is `+I` or `-I`. IDs are stored sign-on-the-set: every member is a
//! canonical positive base and the set carries one product sign.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pauli::{Factor, Observable, PhasedPauli, Sign, MAX_QUBITS};

/// Default cap on the qubit count for catalog construction.
pub const DEFAULT_CATALOG_CAP: usize = 5;

/// A commuting set of positive bases whose product is `sign · I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdSet {
    members: Vec<PhasedPauli>,
    sign: Sign,
}

impl IdSet {
    /// Build an ID from signed observables. The set sign is the product of
    /// the printed signs times the sign of the product of the bases, so that
    /// `ZZZ, ZXX, XZX, -XXZ` and the bare positive bases give the same
    /// negative ID only if the printed signed product is `+I`.
    pub fn from_printed(members: &[Observable]) -> Result<Self> {
        let bases: Vec<PhasedPauli> = members.iter().map(Observable::base).collect();
        let id = Self::from_bases(&bases)?;
        let printed: Sign = members.iter().map(Observable::sign).product();
        if printed != id.sign {
            return Err(Error::NotAnId(format!(
                "signed product of {} is -I; a negative ID carries one '-' and a positive ID none",
                members.iter().join(", ")
            )));
        }
        Ok(id)
    }

    /// Build an ID from positive bases; the sign is computed exactly.
    pub fn from_bases(bases: &[PhasedPauli]) -> Result<Self> {
        let members: Vec<PhasedPauli> = bases.iter().map(PhasedPauli::base).collect();
        if members.is_empty() {
            return Err(Error::NotAnId("empty set".into()));
        }
        if members.iter().any(PhasedPauli::is_trivial) {
            return Err(Error::NotAnId("identity member".into()));
        }
        if members.iter().map(PhasedPauli::key).collect::<BTreeSet<_>>().len() != members.len() {
            return Err(Error::NotAnId("repeated observable".into()));
        }
        let observables: Vec<Observable> = members
            .iter()
            .map(|&b| Observable::positive(b))
            .collect::<Result<_>>()?;
        match product_sign(&observables)? {
            Some(sign) => Ok(Self { members, sign }),
            None => Err(Error::NotAnId(format!(
                "{} is not a commuting set with product ±I",
                members.iter().join(", ")
            ))),
        }
    }

    /// Build without verification. Used for hypothetical sign patterns such
    /// as a pentagram with one sign flipped.
    pub fn from_raw_parts(members: Vec<PhasedPauli>, sign: Sign) -> Self {
        Self { members, sign }
    }

    pub fn members(&self) -> &[PhasedPauli] {
        &self.members
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn is_negative(&self) -> bool {
        self.sign.is_negative()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn n_qubits(&self) -> usize {
        self.members[0].n_qubits()
    }

    pub fn position(&self, base: &PhasedPauli) -> Option<usize> {
        self.members.iter().position(|m| m.key() == base.key())
    }

    pub fn contains(&self, base: &PhasedPauli) -> bool {
        self.position(base).is_some()
    }

    /// Members in sorted order; two IDs are the same set iff these agree.
    pub fn canonical_members(&self) -> Vec<PhasedPauli> {
        let mut v = self.members.clone();
        v.sort();
        v
    }

    /// Members with the set sign re-attached to the last member, the way
    /// tables usually print negative IDs.
    pub fn printed(&self) -> Vec<Observable> {
        let last = self.members.len() - 1;
        self.members
            .iter()
            .enumerate()
            .map(|(i, &b)| {
                let sign = if i == last { self.sign } else { Sign::Plus };
                Observable::new(b, sign).expect("ID members are nontrivial")
            })
            .collect()
    }

    /// GF(2) rank of the member bases.
    pub fn generator_rank(&self) -> usize {
        independent_subset(&self.members).len()
    }
}

impl fmt::Display for IdSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.printed().iter().join(", "))
    }
}

/// Indices of a maximal GF(2)-independent subset, chosen greedily in order.
pub fn independent_subset(bases: &[PhasedPauli]) -> Vec<usize> {
    let mut basis: Vec<u64> = Vec::new();
    let mut chosen = Vec::new();
    for (i, b) in bases.iter().enumerate() {
        let mut v = (b.x_mask() as u64) | (b.z_mask() as u64) << 32;
        for &r in &basis {
            v = v.min(v ^ r);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
            chosen.push(i);
        }
    }
    chosen
}

/// `Some(sign)` if the observables pairwise commute and multiply to
/// `sign · I`; `None` otherwise.
pub fn product_sign(observables: &[Observable]) -> Result<Option<Sign>> {
    let Some(first) = observables.first() else {
        return Ok(None);
    };
    let n = first.n_qubits();
    if let Some(o) = observables.iter().find(|o| o.n_qubits() != n) {
        return Err(Error::QubitMismatch {
            left: n,
            right: o.n_qubits(),
        });
    }
    for (a, b) in observables.iter().tuple_combinations() {
        if !a.base().commutes(&b.base())? {
            return Ok(None);
        }
    }
    let mut p = PhasedPauli::identity(n)?;
    for o in observables {
        p = p.multiply(&o.operator())?;
    }
    Ok(match (p.is_trivial(), p.phase_exp()) {
        (true, 0) => Some(Sign::Plus),
        (true, 2) => Some(Sign::Minus),
        _ => None,
    })
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("qubit count must be positive".into()));
    }
    let cap = cap.min(MAX_QUBITS);
    if n > cap {
        return Err(Error::CapExceeded {
            what: "qubit count for catalogs",
            value: n,
            cap,
        });
    }
    Ok(())
}

/// All `4^n - 1` nontrivial positive observables in lexicographic order.
pub fn enumerate_observables(n: usize) -> Result<Vec<Observable>> {
    check_cap(n, DEFAULT_CATALOG_CAP)?;
    (1u64..1 << (2 * n))
        .map(|idx| {
            let factors: Vec<Factor> = (0..n)
                .map(|q| match idx >> (2 * (n - 1 - q)) & 3 {
                    0 => Factor::I,
                    1 => Factor::X,
                    2 => Factor::Y,
                    _ => Factor::Z,
                })
                .collect();
            Observable::positive(PhasedPauli::from_factors(&factors, 0)?)
        })
        .collect()
}

/// Maximal sets of pairwise commuting observables, as sorted index lists
/// into [`enumerate_observables`], in lexicographic order.
pub fn enumerate_maximal_commuting_sets(n: usize) -> Result<Vec<Vec<usize>>> {
    let observables = enumerate_observables(n)?;
    Ok(maximal_commuting_sets(&observables))
}

fn maximal_commuting_sets(observables: &[Observable]) -> Vec<Vec<usize>> {
    let k = observables.len();
    let adjacency: Vec<FixedBitSet> = observables
        .iter()
        .map(|a| {
            let mut row = FixedBitSet::with_capacity(k);
            for (j, b) in observables.iter().enumerate() {
                if a != b && !a.base().symplectic_form(&b.base()) {
                    row.insert(j);
                }
            }
            row
        })
        .collect();
    let mut out = Vec::new();
    let mut all = FixedBitSet::with_capacity(k);
    all.insert_range(..);
    bron_kerbosch(
        &adjacency,
        &mut Vec::new(),
        all,
        FixedBitSet::with_capacity(k),
        &mut out,
    );
    for set in out.iter_mut() {
        set.sort_unstable();
    }
    out.sort();
    out
}

/// Bron-Kerbosch with Tomita pivoting.
fn bron_kerbosch(
    adjacency: &[FixedBitSet],
    clique: &mut Vec<usize>,
    mut candidates: FixedBitSet,
    mut excluded: FixedBitSet,
    out: &mut Vec<Vec<usize>>,
) {
    if candidates.is_clear() {
        if excluded.is_clear() {
            out.push(clique.clone());
        }
        return;
    }
    let pivot = candidates
        .ones()
        .chain(excluded.ones())
        .max_by_key(|&u| adjacency[u].intersection_count(&candidates))
        .expect("candidates nonempty");
    let mut branch = candidates.clone();
    branch.difference_with(&adjacency[pivot]);
    for v in branch.ones() {
        let mut next_c = candidates.clone();
        next_c.intersect_with(&adjacency[v]);
        let mut next_x = excluded.clone();
        next_x.intersect_with(&adjacency[v]);
        clique.push(v);
        bron_kerbosch(adjacency, clique, next_c, next_x, out);
        clique.pop();
        candidates.set(v, false);
        excluded.insert(v);
    }
}

/// All IDs of size `m`, in lexicographic order of member index tuples.
pub fn enumerate_ids(n: usize, m: usize) -> Result<Vec<IdSet>> {
    let catalog = Catalog::build(n, &[m])?;
    Ok(catalog.ids(m).to_vec())
}

/// Observables, maximal commuting sets and IDs for one qubit count.
#[derive(Clone, Debug)]
pub struct Catalog {
    n: usize,
    observables: Vec<Observable>,
    index: HashMap<(u32, u32), usize>,
    maximal_sets: Vec<Vec<usize>>,
    ids_by_size: BTreeMap<usize, Vec<IdSet>>,
}

impl Catalog {
    /// Build the catalog with IDs of the given sizes. Sizes below 3 are
    /// rejected: two distinct commuting bases never multiply to `±I`.
    pub fn build(n: usize, sizes: &[usize]) -> Result<Self> {
        let observables = enumerate_observables(n)?;
        if let Some(&m) = sizes.iter().find(|&&m| m < 3) {
            return Err(Error::InvalidArgument(format!("ID size {m} < 3")));
        }
        let index = observables
            .iter()
            .enumerate()
            .map(|(i, o)| (o.base().key(), i))
            .collect();
        let maximal_sets = maximal_commuting_sets(&observables);
        let mut ids_by_size = BTreeMap::new();
        for &m in sizes {
            let tuples: BTreeSet<Vec<usize>> = maximal_sets
                .par_iter()
                .flat_map_iter(|set| {
                    set.iter()
                        .copied()
                        .combinations(m)
                        .filter(|c| {
                            let (x, z) = c.iter().fold((0u32, 0u32), |(x, z), &i| {
                                let b = observables[i].base();
                                (x ^ b.x_mask(), z ^ b.z_mask())
                            });
                            x == 0 && z == 0
                        })
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>()
                .into_iter()
                .collect();
            let ids = tuples
                .into_iter()
                .map(|t| {
                    let bases: Vec<PhasedPauli> = t.iter().map(|&i| observables[i].base()).collect();
                    IdSet::from_bases(&bases)
                })
                .collect::<Result<Vec<_>>>()?;
            ids_by_size.insert(m, ids);
        }
        Ok(Self {
            n,
            observables,
            index,
            maximal_sets,
            ids_by_size,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn observables(&self) -> &[Observable] {
        &self.observables
    }

    pub fn observable_index(&self, base: &PhasedPauli) -> Option<usize> {
        self.index.get(&base.key()).copied()
    }

    pub fn maximal_sets(&self) -> &[Vec<usize>] {
        &self.maximal_sets
    }

    pub fn sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.ids_by_size.keys().copied()
    }

    pub fn ids(&self, m: usize) -> &[IdSet] {
        self.ids_by_size.get(&m).map(Vec::as_slice).unwrap_or(&[])
    }

    /// JSON export: observable symbols, maximal sets as index arrays and ID
    /// records `{members, sign}` grouped by size.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct IdRecord {
            members: Vec<String>,
            sign: i8,
        }
        let ids: BTreeMap<String, Vec<IdRecord>> = self
            .ids_by_size
            .iter()
            .map(|(m, ids)| {
                let records = ids
                    .iter()
                    .map(|id| IdRecord {
                        members: id.members().iter().map(|b| b.to_string()).collect(),
                        sign: id.sign().value(),
                    })
                    .collect();
                (m.to_string(), records)
            })
            .collect();
        serde_json::json!({
            "qubits": self.n,
            "observables": self.observables.iter().map(|o| o.to_string()).collect::<Vec<_>>(),
            "maximal_sets": self.maximal_sets,
            "ids": ids,
        })
    }
}
