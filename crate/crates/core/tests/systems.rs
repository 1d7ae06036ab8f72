use std::collections::BTreeMap;

use ksforge::fixtures;
use ksforge::system::{BasisKind, ParityOptions, ProjectorSystem};

#[test]
fn pentagram_hybrids_pair_up_pure_bases() {
    let s = ProjectorSystem::derive(&fixtures::pentagram()).unwrap();
    let c = s.classify_bases();
    let mut per_pair: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut per_pure: BTreeMap<usize, usize> = BTreeMap::new();
    for (_, (a, b)) in &c.hybrid_edges {
        let (a, b) = (a.unwrap(), b.unwrap());
        *per_pair.entry((a, b)).or_default() += 1;
        *per_pure.entry(a).or_default() += 1;
        *per_pure.entry(b).or_default() += 1;
    }
    assert_eq!(per_pair.len(), 10);
    assert!(per_pair.values().all(|&k| k == 2));
    assert!(per_pure.values().all(|&k| k == 8));
    assert!(s.unsaturated_pairs().is_empty());
}

#[test]
fn first_hybrid_takes_half_of_two_pure_bases() {
    let s = ProjectorSystem::derive(&fixtures::pentagram()).unwrap();
    let c = s.classify_bases();
    let target = vec![1, 2, 3, 4, 13, 14, 15, 16];
    let b = s
        .bases()
        .iter()
        .position(|b| fixtures::relabel(b, &fixtures::PENTAGRAM_RAY_NUMBERS) == target)
        .unwrap();
    assert_eq!(c.kinds[b], BasisKind::Hybrid { ids: (0, 1) });
}

#[test]
fn pure_bases_alone_are_not_a_proof() {
    let s = ProjectorSystem::derive(&fixtures::pentagram()).unwrap();
    let pure = s.classify_bases().pure();
    let check = s.verify_parity_proof(&pure).unwrap();
    assert!(check.odd_basis_count);
    assert!(!check.even_multiplicities);
    assert!(!check.is_parity_proof());
}

#[test]
fn census_is_deterministic_and_sorted() {
    let s = ProjectorSystem::derive(&fixtures::square3()).unwrap();
    let a = s.find_parity_proofs(&ParityOptions::new()).unwrap();
    let b = s.find_parity_proofs(&ParityOptions::new()).unwrap();
    assert_eq!(a.entries, b.entries);
    let keys: Vec<_> = a.entries.iter().map(|e| (e.bases, e.projectors, e.symbol.clone())).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(a.to_csv().lines().next(), Some("type_PB,detailed_symbol,count,example_basis_indices"));
}

#[test]
fn type_filter_keeps_one_type() {
    let s = ProjectorSystem::derive(&fixtures::pentagram()).unwrap();
    let options = ParityOptions {
        type_filter: Some("36-11".into()),
        ..ParityOptions::collecting()
    };
    let c = s.find_parity_proofs(&options).unwrap();
    assert_eq!(c.entries.len(), 1);
    assert_eq!(c.total(), 320);
    assert_eq!(c.proofs.len(), 320);
    assert_eq!(c.odd_count, 1024);
    for p in &c.proofs {
        assert_eq!(s.proof_symbol(p), "28_2 8_4-11_8");
    }
}

#[test]
fn examples_in_census_verify() {
    for name in ["pentagram", "square2", "square3"] {
        let s = ProjectorSystem::derive(&fixtures::by_name(name).unwrap()).unwrap();
        for e in s.find_parity_proofs(&ParityOptions::new()).unwrap().entries {
            let check = s.verify_parity_proof(&e.example).unwrap();
            assert!(check.is_parity_proof() && !check.assignment_exists, "{name} {}", e.symbol);
            assert_eq!(check.symbol, e.symbol);
            assert!(s.is_critical_proof(&e.example).unwrap());
        }
    }
}

#[test]
fn kite_fixture_system() {
    let s = ProjectorSystem::derive(&fixtures::kite()).unwrap();
    assert_eq!(s.symbol(), "16_10 **16_4**-16_8 8_6 12_4");
    assert!(s.coincident_projectors().is_empty());
    assert!(s.unsaturated_pairs().is_empty());
    let c = s.classify_bases();
    assert_eq!((c.pure().len(), c.hybrid().len(), c.other().len()), (6, 22, 8));
    let shape = s.shape();
    for (rank, incidences) in shape.rank_incidences() {
        let from_bases: usize = s
            .bases()
            .iter()
            .flatten()
            .filter(|&&p| s.projectors()[p].rank() == rank)
            .count();
        assert_eq!(incidences, from_bases);
    }
}

#[test]
fn kernel_cap_is_enforced() {
    let s = ProjectorSystem::derive(&fixtures::pentagram()).unwrap();
    let options = ParityOptions {
        max_kernel_dim: 5,
        ..ParityOptions::new()
    };
    assert!(matches!(
        s.find_parity_proofs(&options),
        Err(ksforge::Error::KernelTooLarge { dimension: 11, cap: 5 })
    ));
}

#[test]
fn content_hash_is_stable() {
    let a = ProjectorSystem::derive(&fixtures::square2()).unwrap();
    let b = ProjectorSystem::derive(&fixtures::square2()).unwrap();
    assert_eq!(a.content_hash(), b.content_hash());
    assert_eq!(a.content_hash().len(), 64);
    let c = ProjectorSystem::derive(&fixtures::square3()).unwrap();
    assert_ne!(a.content_hash(), c.content_hash());
}
