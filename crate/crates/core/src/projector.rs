//! Joint eigenprojectors of IDs, labelled by eigenvalue signatures.
//!
//! A projector of an ID fixes a ±1 value for every member base. Only
//! signatures consistent with the linear relations among the members are
//! realizable; for an ID with generator rank `r` there are `2^r` of them,
//! each of rank `2^(n-r)`.

use std::collections::HashMap;

use itertools::Itertools;
use serde::Serialize;

use crate::catalog::{independent_subset, IdSet};
use crate::error::Result;
use crate::exact::{primitive, to_gauss_ints, Echelon, ExactMatrix, GaussDyadic};
use crate::pauli::{PhasedPauli, Sign};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projector {
    id_index: usize,
    members: Vec<PhasedPauli>,
    id_sign: Sign,
    signature: Vec<Sign>,
    rank: usize,
    label: usize,
}

impl Projector {
    pub fn id_index(&self) -> usize {
        self.id_index
    }

    /// Eigenvalues on the canonical positive member bases.
    pub fn signature(&self) -> &[Sign] {
        &self.signature
    }

    pub fn members(&self) -> &[PhasedPauli] {
        &self.members
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> usize {
        self.label
    }

    pub(crate) fn set_label(&mut self, label: usize) {
        self.label = label;
    }

    pub fn n_qubits(&self) -> usize {
        self.members[0].n_qubits()
    }

    /// Signature with the ID sign moved onto the last member, matching the
    /// way negative IDs are usually printed.
    pub fn printed_signature(&self) -> String {
        let last = self.signature.len() - 1;
        self.signature
            .iter()
            .enumerate()
            .map(|(i, &s)| if i == last { s * self.id_sign } else { s })
            .map(Sign::symbol)
            .collect()
    }

    /// The eigenvalue of a canonical positive base, if it is a member.
    pub fn sign_corrected_value(&self, base: &PhasedPauli) -> Option<Sign> {
        self.members
            .iter()
            .position(|m| m.key() == base.key())
            .map(|i| self.signature[i])
    }

    /// All nonidentity elements `±g` of the stabilizer group of this
    /// projector, keyed by the symplectic part with the phase exponent.
    pub fn stabilizer(&self) -> HashMap<(u32, u32), u8> {
        let gens: Vec<PhasedPauli> = independent_subset(&self.members)
            .into_iter()
            .map(|i| self.members[i].with_phase(self.signature[i].phase_exp()))
            .collect();
        let mut out = HashMap::with_capacity(1 << gens.len());
        let identity = PhasedPauli::identity(self.n_qubits()).expect("valid size");
        for mask in 1u32..1 << gens.len() {
            let p = gens
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(identity, |acc, (_, g)| acc.multiply(g).expect("same size"));
            out.insert(p.key(), p.phase_exp());
        }
        out
    }

    /// Exact `Π_k (I + s_k O_k) / 2` over the members.
    pub fn matrix(&self) -> Result<ExactMatrix> {
        let dim = 1usize << self.n_qubits();
        let identity = ExactMatrix::identity(dim);
        let mut out = identity.clone();
        for (m, s) in self.members.iter().zip(&self.signature) {
            let o = m.with_phase(s.phase_exp()).to_matrix()?;
            let factor = (&identity + &o).scale(GaussDyadic::half());
            out = &out * &factor;
        }
        Ok(out)
    }

    /// The eigenspace, from the pivot columns of the projector matrix scanned
    /// left to right, each scaled to coprime Gaussian-integer form.
    pub fn subspace(&self) -> Result<Subspace> {
        let m = self.matrix()?;
        let vectors = m
            .pivot_columns()
            .into_iter()
            .map(|c| {
                primitive(&m.column(c))
                    .into_iter()
                    .map(|(re, im)| GaussDyadic::new(re as i64, im as i64, 0))
                    .collect()
            })
            .collect();
        Ok(Subspace { vectors })
    }

    pub fn to_json(&self, with_vectors: bool) -> Result<serde_json::Value> {
        #[derive(Serialize)]
        struct Record {
            label: usize,
            id_index: usize,
            signature: String,
            rank: usize,
            #[serde(skip_serializing_if = "Option::is_none")]
            basis_vectors: Option<VectorsRecord>,
        }
        #[derive(Serialize)]
        struct VectorsRecord {
            denominator_exp: u32,
            vectors: Vec<Vec<[i64; 2]>>,
        }
        let basis_vectors = if with_vectors {
            let s = self.subspace()?;
            let exp = s
                .vectors
                .iter()
                .flatten()
                .map(GaussDyadic::denom_exp)
                .max()
                .unwrap_or(0);
            Some(VectorsRecord {
                denominator_exp: exp,
                vectors: s
                    .vectors
                    .iter()
                    .map(|v| {
                        v.iter()
                            .map(|e| {
                                let (re, im) = e.scaled_to(exp);
                                [re as i64, im as i64]
                            })
                            .collect()
                    })
                    .collect(),
            })
        } else {
            None
        };
        Ok(serde_json::to_value(Record {
            label: self.label,
            id_index: self.id_index,
            signature: self.signature.iter().map(|s| s.symbol()).collect(),
            rank: self.rank,
            basis_vectors,
        })
        .expect("serializable"))
    }
}

/// All realizable projectors of an ID, signatures in lexicographic order
/// with `+` before `-`.
pub fn derive_projectors(id: &IdSet, id_index: usize) -> Vec<Projector> {
    let members = id.members().to_vec();
    let n = id.n_qubits();
    let gens = independent_subset(&members);
    let r = gens.len();
    let identity = PhasedPauli::identity(n).expect("valid size");
    // Every member is ± a product of generators.
    let expressions: Vec<(Vec<usize>, Sign)> = members
        .iter()
        .map(|m| {
            (0u32..1 << r)
                .find_map(|mask| {
                    let picked: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 1).collect();
                    let p = picked
                        .iter()
                        .fold(identity, |acc, &i| acc.multiply(&members[gens[i]]).expect("same size"));
                    (p.key() == m.key()).then(|| (picked, Sign::from_negative(p.phase_exp() == 2)))
                })
                .expect("members lie in the span of the generators")
        })
        .collect();
    let mut signatures: Vec<Vec<Sign>> = (0u32..1 << r)
        .map(|mask| {
            expressions
                .iter()
                .map(|(picked, rel)| {
                    picked
                        .iter()
                        .map(|&i| Sign::from_negative(mask >> i & 1 == 1))
                        .product::<Sign>()
                        * *rel
                })
                .collect()
        })
        .collect();
    signatures.sort();
    signatures.dedup();
    let rank = 1usize << (n - r);
    signatures
        .into_iter()
        .enumerate()
        .map(|(k, signature)| Projector {
            id_index,
            members: members.clone(),
            id_sign: id.sign(),
            signature,
            rank,
            label: k,
        })
        .collect()
}

/// Exact orthogonality from the stabilizer groups: `P·Q = 0` iff some Pauli
/// lies in both groups with opposite signs.
pub fn orthogonal(p: &Projector, q: &Projector) -> bool {
    if p.id_index == q.id_index && p.members == q.members {
        return p.signature != q.signature;
    }
    groups_conflict(&p.stabilizer(), &q.stabilizer())
}

pub(crate) fn groups_conflict(a: &HashMap<(u32, u32), u8>, b: &HashMap<(u32, u32), u8>) -> bool {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    small
        .iter()
        .any(|(k, phase)| large.get(k).is_some_and(|other| other != phase))
}

/// The signature rule: projectors of one ID are orthogonal iff their
/// signatures differ; projectors of different IDs are orthogonal iff some
/// shared observable takes opposite values.
pub fn signature_rule_orthogonal(p: &Projector, q: &Projector) -> bool {
    if p.id_index == q.id_index && p.members == q.members {
        return p.signature != q.signature;
    }
    p.members.iter().zip(&p.signature).any(|(m, s)| {
        q.sign_corrected_value(m)
            .is_some_and(|other| other != *s)
    })
}

/// Oracle: exact matrix product is zero.
pub fn matrix_orthogonal(p: &Projector, q: &Projector) -> Result<bool> {
    Ok((&p.matrix()? * &q.matrix()?).is_zero())
}

/// A subspace given by linearly independent exact vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub vectors: Vec<Vec<GaussDyadic>>,
}

impl Subspace {
    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::default();
        for v in &self.vectors {
            e.insert(v);
        }
        e
    }

    pub fn is_independent(&self) -> bool {
        self.echelon().rank() == self.vectors.len()
    }

    pub fn contains(&self, v: &[GaussDyadic]) -> bool {
        self.echelon().contains(v)
    }

    /// Same span, compared exactly.
    pub fn same_span(&self, other: &Subspace) -> bool {
        let a = self.echelon();
        let b = other.echelon();
        a.rank() == b.rank()
            && other.vectors.iter().all(|v| a.contains(v))
            && self.vectors.iter().all(|v| b.contains(v))
    }

    /// Integer form of each vector as `(re, im)` pairs.
    pub fn gauss_ints(&self) -> Vec<Vec<(i128, i128)>> {
        self.vectors.iter().map(|v| to_gauss_ints(v)).collect()
    }
}

/// Printable element list, for diagnostics.
pub fn describe(p: &Projector) -> String {
    format!(
        "P{} [{}: {}]",
        p.label,
        p.members.iter().join(" "),
        p.printed_signature()
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int_vector;
    use crate::pauli::{base, obs};

    fn id(printed: &[&str]) -> IdSet {
        let members: Vec<_> = printed.iter().map(|s| obs(s)).collect();
        IdSet::from_printed(&members).unwrap()
    }

    fn sig(p: &Projector) -> String {
        p.signature().iter().map(|s| s.symbol()).collect()
    }

    #[test]
    fn id4_signatures() {
        let ps = derive_projectors(&id(&["ZII", "IZI", "IIZ", "ZZZ"]), 0);
        let sigs: Vec<String> = ps.iter().map(sig).collect();
        assert_eq!(
            sigs,
            ["++++", "++--", "+-+-", "+--+", "-++-", "-+-+", "--++", "----"]
        );
        assert!(ps.iter().all(|p| p.rank() == 1));
    }

    #[test]
    fn id3_signatures() {
        let ps = derive_projectors(&id(&["ZIZ", "ZZI", "IZZ"]), 0);
        let sigs: Vec<String> = ps.iter().map(sig).collect();
        assert_eq!(sigs, ["+++", "+--", "-+-", "--+"]);
        assert!(ps.iter().all(|p| p.rank() == 2));
    }

    #[test]
    fn negative_id_signatures() {
        let ps = derive_projectors(&id(&["ZZZ", "ZXX", "XZX", "-XXZ"]), 4);
        for p in &ps {
            assert_eq!(p.signature().iter().copied().product::<Sign>(), Sign::Minus);
        }
        let printed: Vec<String> = ps.iter().map(Projector::printed_signature).collect();
        assert_eq!(
            printed,
            ["++++", "++--", "+-+-", "+--+", "-++-", "-+-+", "--++", "----"]
        );
        assert_eq!(ps[0].sign_corrected_value(&base("XXZ")), Some(Sign::Minus));
        assert_eq!(ps[0].sign_corrected_value(&base("ZZZ")), Some(Sign::Plus));
        assert_eq!(ps[0].sign_corrected_value(&base("XII")), None);
    }

    #[test]
    fn table_five_subspaces() {
        let ps = derive_projectors(&id(&["ZIZ", "XIX", "-YIY"]), 3);
        let expect = [
            [[1, 0, 0, 0, 0, 1, 0, 0], [0, 0, 1, 0, 0, 0, 0, 1]],
            [[1, 0, 0, 0, 0, -1, 0, 0], [0, 0, 1, 0, 0, 0, 0, -1]],
            [[0, 1, 0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0, 1, 0]],
            [[0, 1, 0, 0, -1, 0, 0, 0], [0, 0, 0, 1, 0, 0, -1, 0]],
        ];
        for (p, want) in ps.iter().zip(expect) {
            let s = p.subspace().unwrap();
            let w = Subspace {
                vectors: want.iter().map(|v| int_vector(v)).collect(),
            };
            assert_eq!(s, w, "{}", p.printed_signature());
        }
    }

    #[test]
    fn computational_basis_rays() {
        let ps = derive_projectors(&id(&["ZII", "IZI", "IIZ", "ZZZ"]), 0);
        for p in &ps {
            let s = p.subspace().unwrap();
            assert_eq!(s.dimension(), 1);
            let ones = s.vectors[0].iter().filter(|e| !e.is_zero()).count();
            assert_eq!(ones, 1);
        }
    }

    #[test]
    fn projectors_resolve_identity() {
        for printed in [
            &["ZII", "IZI", "IIZ", "ZZZ"][..],
            &["ZZZ", "ZXX", "XZX", "-XXZ"],
            &["ZIZ", "XIX", "-YIY"],
            &["XZ", "ZX", "YY"],
        ] {
            let ps = derive_projectors(&id(printed), 0);
            let dim = 1 << ps[0].n_qubits();
            let mut sum = ExactMatrix::zeros(dim, dim);
            for p in &ps {
                let m = p.matrix().unwrap();
                assert_eq!(&m * &m, m);
                assert_eq!(m.adjoint(), m);
                assert_eq!(m.rank(), p.rank());
                sum = &sum + &m;
            }
            assert_eq!(sum, ExactMatrix::identity(dim));
            for (a, b) in ps.iter().tuple_combinations() {
                assert!(orthogonal(a, b));
                assert!(matrix_orthogonal(a, b).unwrap());
            }
        }
    }

    #[test]
    fn orthogonality_across_ids() {
        let a = derive_projectors(&id(&["ZII", "IZI", "IIZ", "ZZZ"]), 0);
        let b = derive_projectors(&id(&["ZII", "IXI", "IIX", "ZXX"]), 1);
        // ++++ in both: same ZII value
        assert!(!orthogonal(&a[0], &b[0]));
        assert!(!signature_rule_orthogonal(&a[0], &b[0]));
        // a[4] has ZII = -1
        assert!(orthogonal(&a[4], &b[0]));
        assert!(!orthogonal(&a[0], &a[0]));
        for p in &a {
            for q in &b {
                let m = matrix_orthogonal(p, q).unwrap();
                assert_eq!(orthogonal(p, q), m);
                assert_eq!(signature_rule_orthogonal(p, q), m);
            }
        }
    }
}
