use ksforge::catalog::{enumerate_observables, Catalog};
use ksforge::exact::ExactMatrix;
use ksforge::pauli::{Observable, PhasedPauli};
use proptest::prelude::*;

fn pauli(n: usize) -> impl Strategy<Value = PhasedPauli> {
    let mask = (1u32 << n) - 1;
    (any::<u32>(), any::<u32>(), 0u8..4)
        .prop_map(move |(x, z, k)| PhasedPauli::new(n, x & mask, z & mask, k).unwrap())
}

proptest! {
    #[test]
    fn matrix_of_product_is_product_of_matrices((a, b) in (1usize..=3).prop_flat_map(|n| (pauli(n), pauli(n)))) {
        let lhs = a.multiply(&b).unwrap().to_matrix().unwrap();
        let rhs = &a.to_matrix().unwrap() * &b.to_matrix().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplication_is_associative((a, b, c) in (1usize..=4).prop_flat_map(|n| (pauli(n), pauli(n), pauli(n)))) {
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}

#[test]
fn commutation_matches_matrices_for_two_qubits() {
    let all = enumerate_observables(2).unwrap();
    for a in &all {
        for b in &all {
            let (ma, mb) = (a.operator().to_matrix().unwrap(), b.operator().to_matrix().unwrap());
            let commute = &ma * &mb == &mb * &ma;
            assert_eq!(a.base().commutes(&b.base()).unwrap(), commute, "{a} {b}");
        }
    }
}

#[test]
fn every_observable_round_trips_through_text() {
    for o in enumerate_observables(3).unwrap() {
        let text = o.to_string();
        assert_eq!(text.parse::<Observable>().unwrap(), o);
        let neg: Observable = format!("-{text}").parse().unwrap();
        assert!(neg.same_up_to_sign(&o));
        assert_ne!(neg, o);
    }
}

#[test]
fn every_catalogued_id_multiplies_to_identity() {
    for (n, sizes) in [(2, vec![3]), (3, vec![3, 4])] {
        let cat = Catalog::build(n, &sizes).unwrap();
        for m in sizes {
            for id in cat.ids(m) {
                let mut prod = ExactMatrix::identity(1 << n);
                for o in id.printed() {
                    prod = &prod * &o.operator().to_matrix().unwrap();
                }
                assert_eq!(prod, ExactMatrix::identity(1 << n), "{id}");
            }
        }
    }
}

#[test]
fn three_qubit_id_counts() {
    let cat = Catalog::build(3, &[3, 4]).unwrap();
    assert_eq!(cat.ids(3).len(), 315);
    assert_eq!(cat.ids(4).len(), 945);
    let negatives = cat.ids(3).iter().filter(|id| id.is_negative()).count();
    assert!(negatives > 0 && negatives < 315);
}
