//! Built-in diagrams and the conventional numberings used to compare against
//! standard reference tables.

use crate::catalog::IdSet;
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::pauli::Observable;

pub const NAMES: &[&str] = &["pentagram", "square2", "square3", "peres24", "kite"];

fn build(rows: &[&[&str]]) -> Diagram {
    let ids = rows
        .iter()
        .map(|row| {
            let members: Vec<Observable> = row.iter().map(|s| s.parse().unwrap()).collect();
            IdSet::from_printed(&members).unwrap()
        })
        .collect();
    Diagram::new(ids).unwrap()
}

/// GHZ-Mermin pentagram: five ID4s over ten three-qubit observables.
pub fn pentagram() -> Diagram {
    build(&[
        &["ZII", "IZI", "IIZ", "ZZZ"],
        &["ZII", "IXI", "IIX", "ZXX"],
        &["XII", "IZI", "IIX", "XZX"],
        &["XII", "IXI", "IIZ", "XXZ"],
        &["ZZZ", "ZXX", "XZX", "-XXZ"],
    ])
}

/// Two-qubit Peres-Mermin square: three rows then three columns.
pub fn square2() -> Diagram {
    build(&[
        &["XI", "IX", "XX"],
        &["IZ", "ZI", "ZZ"],
        &["XZ", "ZX", "YY"],
        &["XI", "IZ", "XZ"],
        &["IX", "ZI", "ZX"],
        &["XX", "ZZ", "-YY"],
    ])
}

/// Three-qubit Peres-Mermin square.
pub fn square3() -> Diagram {
    build(&[
        &["ZIZ", "ZZI", "IZZ"],
        &["XIX", "XXI", "IXX"],
        &["YIY", "YYI", "IYY"],
        &["ZIZ", "XIX", "-YIY"],
        &["ZZI", "XXI", "-YYI"],
        &["IZZ", "IXX", "-IYY"],
    ])
}

/// A critical `10_2-4_3 2_4` diagram whose two ID4s, one positive and one
/// negative, share two observables.
pub fn kite() -> Diagram {
    build(&[
        &["IIX", "IXI", "IXX"],
        &["IIX", "IYI", "IYX"],
        &["IXI", "XIY", "XXY"],
        &["IYI", "XIY", "XYY"],
        &["IXX", "XYY", "YIX", "ZZY"],
        &["IYX", "XXY", "YIX", "-ZZY"],
    ])
}

pub fn by_name(name: &str) -> Result<Diagram> {
    match name {
        "pentagram" => Ok(pentagram()),
        "square2" | "peres24" => Ok(square2()),
        "square3" => Ok(square3()),
        "kite" => Ok(kite()),
        _ => Err(Error::InvalidArgument(format!(
            "unknown fixture {name:?}; expected one of {}",
            NAMES.join(", ")
        ))),
    }
}

/// Conventional ray number (1-based) of each pentagram projector, indexed by
/// internal label.
pub const PENTAGRAM_RAY_NUMBERS: [usize; 40] = [
    1, 2, 3, 4, 5, 6, 7, 8, //
    9, 11, 10, 12, 13, 15, 14, 16, //
    17, 19, 21, 23, 18, 20, 22, 24, //
    25, 29, 27, 31, 26, 30, 28, 32, //
    33, 35, 34, 36, 40, 37, 38, 39,
];

/// The 25 pentagram bases in conventional ray numbers; the first five are
/// the pure bases.
pub const PENTAGRAM_BASES: [[usize; 8]; 25] = [
    [1, 2, 3, 4, 5, 6, 7, 8],
    [9, 10, 11, 12, 13, 14, 15, 16],
    [17, 18, 19, 20, 21, 22, 23, 24],
    [25, 26, 27, 28, 29, 30, 31, 32],
    [33, 34, 35, 36, 37, 38, 39, 40],
    [1, 2, 3, 4, 13, 14, 15, 16],
    [1, 2, 5, 6, 21, 22, 23, 24],
    [1, 3, 5, 7, 29, 30, 31, 32],
    [1, 4, 6, 7, 37, 38, 39, 40],
    [2, 3, 5, 8, 33, 34, 35, 36],
    [2, 4, 6, 8, 25, 26, 27, 28],
    [3, 4, 7, 8, 17, 18, 19, 20],
    [5, 6, 7, 8, 9, 10, 11, 12],
    [9, 10, 13, 14, 19, 20, 23, 24],
    [9, 11, 13, 15, 27, 28, 31, 32],
    [9, 12, 14, 15, 34, 36, 38, 39],
    [10, 11, 13, 16, 33, 35, 37, 40],
    [10, 12, 14, 16, 25, 26, 29, 30],
    [11, 12, 15, 16, 17, 18, 21, 22],
    [17, 19, 21, 23, 26, 28, 30, 32],
    [17, 20, 22, 23, 35, 36, 37, 39],
    [18, 19, 21, 24, 33, 34, 38, 40],
    [18, 20, 22, 24, 25, 27, 29, 31],
    [25, 28, 30, 31, 33, 36, 37, 38],
    [26, 27, 29, 32, 34, 35, 39, 40],
];

/// The 11-basis pentagram proof, in conventional basis numbers.
pub const PENTAGRAM_PROOF_11: [usize; 11] = [1, 6, 7, 8, 10, 14, 15, 17, 20, 21, 25];

/// Conventional number (1-based) of each three-qubit square projector,
/// indexed by internal label.
pub const SQUARE3_PROJECTOR_NUMBERS: [usize; 24] = [
    1, 2, 3, 4, //
    5, 6, 7, 8, //
    9, 10, 11, 12, //
    13, 14, 15, 16, //
    19, 20, 17, 18, //
    22, 21, 24, 23,
];

/// Spanning vectors of projectors 13 to 16 of the three-qubit square.
pub const SQUARE3_SUBSPACES: [[[i64; 8]; 2]; 4] = [
    [[1, 0, 0, 0, 0, 1, 0, 0], [0, 0, 1, 0, 0, 0, 0, 1]],
    [[1, 0, 0, 0, 0, -1, 0, 0], [0, 0, 1, 0, 0, 0, 0, -1]],
    [[0, 1, 0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0, 1, 0]],
    [[0, 1, 0, 0, -1, 0, 0, 0], [0, 0, 0, 1, 0, 0, -1, 0]],
];

/// Relabel internal projector indices through a numbering table.
pub fn relabel(indices: &[usize], numbers: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = indices.iter().map(|&i| numbers[i]).collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_proofs() {
        for name in NAMES {
            let d = by_name(name).unwrap();
            assert!(d.validate().is_ks_proof, "{name}");
        }
        assert_eq!(kite().symbol().to_string(), "10_2-4_3 2_4");
        assert!(kite().is_critical().unwrap().is_critical());
        assert!(by_name("nope").is_err());
    }

    #[test]
    fn numberings_are_permutations() {
        let mut a = PENTAGRAM_RAY_NUMBERS.to_vec();
        a.sort_unstable();
        assert_eq!(a, (1..=40).collect::<Vec<_>>());
        let mut b = SQUARE3_PROJECTOR_NUMBERS.to_vec();
        b.sort_unstable();
        assert_eq!(b, (1..=24).collect::<Vec<_>>());
    }
}
