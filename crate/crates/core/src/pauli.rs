//! N-qubit Pauli operators in symplectic form.
//!
//! A [`PhasedPauli`] is `i^phase` times a tensor product of single-qubit
//! factors. Bit `q` of the X and Z masks describes qubit `q`, where qubit 0 is
//! the leftmost character of the symbol string. The factor for `(x, z)` is
//! `I, X, Z, Y` for `(0,0), (1,0), (0,1), (1,1)`, with `Y` Hermitian, so the
//! operator is Hermitian exactly when the phase exponent is even.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, GaussDyadic};

/// Largest qubit count representable by the packed masks.
pub const MAX_QUBITS: usize = 16;

/// Default cap on the qubit count for dense matrix realizations.
pub const DEFAULT_MATRIX_CAP: usize = 5;

/// A sign `±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_negative(negative: bool) -> Self {
        if negative {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }

    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// Phase exponent (in units of `i`) of this sign: 0 or 2.
    pub fn phase_exp(self) -> u8 {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 2,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_negative(self.is_negative() != rhs.is_negative())
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        Sign::from_negative(!self.is_negative())
    }
}

impl std::iter::Product for Sign {
    fn product<I: Iterator<Item = Sign>>(iter: I) -> Sign {
        iter.fold(Sign::Plus, |acc, s| acc * s)
    }
}

/// Single-qubit Pauli factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    I,
    X,
    Y,
    Z,
}

impl Factor {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Factor::I,
            (true, false) => Factor::X,
            (true, true) => Factor::Y,
            (false, true) => Factor::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Factor::I => (false, false),
            Factor::X => (true, false),
            Factor::Y => (true, true),
            Factor::Z => (false, true),
        }
    }

    /// Position in the symbol alphabet `I < X < Y < Z`.
    pub fn digit(self) -> u64 {
        match self {
            Factor::I => 0,
            Factor::X => 1,
            Factor::Y => 2,
            Factor::Z => 3,
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Factor::I),
            'X' => Some(Factor::X),
            'Y' => Some(Factor::Y),
            'Z' => Some(Factor::Z),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Factor::I => 'I',
            Factor::X => 'X',
            Factor::Y => 'Y',
            Factor::Z => 'Z',
        }
    }

    /// Exponent `k` with `self * other = i^k * (self ⊕ other)`.
    fn product_phase(self, other: Factor) -> u8 {
        use Factor::*;
        match (self, other) {
            (X, Y) | (Y, Z) | (Z, X) => 1,
            (Y, X) | (Z, Y) | (X, Z) => 3,
            _ => 0,
        }
    }
}

/// An N-qubit Pauli operator `i^phase_exp · P_0 ⊗ … ⊗ P_{N-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PhasedPauli {
    n: u8,
    x: u32,
    z: u32,
    phase: u8,
}

impl PhasedPauli {
    pub fn new(n_qubits: usize, x_mask: u32, z_mask: u32, phase_exp: u8) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::CapExceeded {
                what: "qubit count",
                value: n_qubits,
                cap: MAX_QUBITS,
            });
        }
        let mask = Self::full_mask(n_qubits);
        if x_mask & !mask != 0 || z_mask & !mask != 0 {
            return Err(Error::InvalidArgument(format!(
                "masks {x_mask:#x}/{z_mask:#x} do not fit {n_qubits} qubits"
            )));
        }
        Ok(Self {
            n: n_qubits as u8,
            x: x_mask,
            z: z_mask,
            phase: phase_exp % 4,
        })
    }

    pub fn identity(n_qubits: usize) -> Result<Self> {
        Self::new(n_qubits, 0, 0, 0)
    }

    pub fn from_factors(factors: &[Factor], phase_exp: u8) -> Result<Self> {
        let mut x = 0u32;
        let mut z = 0u32;
        for (q, f) in factors.iter().enumerate().take(MAX_QUBITS) {
            let (xb, zb) = f.bits();
            x |= (xb as u32) << q;
            z |= (zb as u32) << q;
        }
        Self::new(factors.len(), x, z, phase_exp)
    }

    fn full_mask(n: usize) -> u32 {
        if n >= 32 {
            u32::MAX
        } else {
            (1u32 << n) - 1
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n as usize
    }

    pub fn x_mask(&self) -> u32 {
        self.x
    }

    pub fn z_mask(&self) -> u32 {
        self.z
    }

    pub fn phase_exp(&self) -> u8 {
        self.phase
    }

    pub fn factor(&self, qubit: usize) -> Factor {
        Factor::from_bits(self.x >> qubit & 1 == 1, self.z >> qubit & 1 == 1)
    }

    pub fn factors(&self) -> impl Iterator<Item = Factor> + '_ {
        (0..self.n_qubits()).map(|q| self.factor(q))
    }

    /// True when the tensor part is the identity (any phase).
    pub fn is_trivial(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// True only for the positive identity.
    pub fn is_identity(&self) -> bool {
        self.is_trivial() && self.phase == 0
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase.is_multiple_of(2)
    }

    /// The same tensor product with phase exponent 0.
    pub fn base(&self) -> Self {
        Self { phase: 0, ..*self }
    }

    pub fn with_phase(&self, phase_exp: u8) -> Self {
        Self {
            phase: phase_exp % 4,
            ..*self
        }
    }

    /// Symplectic part as a `(x, z)` pair; equal keys mean equal up to phase.
    pub fn key(&self) -> (u32, u32) {
        (self.x, self.z)
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    /// Index of the symbol string in lexicographic order over `I < X < Y < Z`,
    /// qubit 0 most significant.
    pub fn lex_index(&self) -> u64 {
        self.factors().fold(0u64, |acc, f| acc * 4 + f.digit())
    }

    fn check_same_size(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::QubitMismatch {
                left: self.n_qubits(),
                right: other.n_qubits(),
            });
        }
        Ok(())
    }

    /// Exact group product `self · other`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same_size(other)?;
        let mut phase = self.phase as u32 + other.phase as u32;
        for q in 0..self.n_qubits() {
            phase += self.factor(q).product_phase(other.factor(q)) as u32;
        }
        Ok(Self {
            n: self.n,
            x: self.x ^ other.x,
            z: self.z ^ other.z,
            phase: (phase % 4) as u8,
        })
    }

    /// Symplectic form over GF(2): zero iff the operators commute.
    pub fn symplectic_form(&self, other: &Self) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()) % 2 == 1
    }

    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check_same_size(other)?;
        Ok(!self.symplectic_form(other))
    }

    pub fn negate(&self) -> Self {
        self.with_phase(self.phase + 2)
    }

    /// Dense `2^N × 2^N` matrix in the computational basis, qubit 0 being
    /// the most significant bit of the row/column index.
    pub fn to_matrix(&self) -> Result<ExactMatrix> {
        self.to_matrix_capped(DEFAULT_MATRIX_CAP)
    }

    pub fn to_matrix_capped(&self, cap: usize) -> Result<ExactMatrix> {
        let n = self.n_qubits();
        if n > cap {
            return Err(Error::CapExceeded {
                what: "qubit count for matrices",
                value: n,
                cap,
            });
        }
        let dim = 1usize << n;
        let mut m = ExactMatrix::zeros(dim, dim);
        let flip = self.index_mask(self.x);
        for col in 0..dim {
            let row = col ^ flip;
            // P|b> = i^phase · Π_q f_q|b_q>, with Z|b> = (-1)^b|b>, Y|b> = i(-1)^b|1-b>.
            let mut k = self.phase as u32;
            for q in 0..n {
                let bit = (col >> (n - 1 - q)) & 1 == 1;
                match self.factor(q) {
                    Factor::I | Factor::X => {}
                    Factor::Z => k += if bit { 2 } else { 0 },
                    Factor::Y => k += if bit { 3 } else { 1 },
                }
            }
            m.set(row, col, GaussDyadic::i_pow(k));
        }
        Ok(m)
    }

    /// Motion of basis indices under the mask: qubit `q` maps to bit `n-1-q`.
    fn index_mask(&self, mask: u32) -> usize {
        let n = self.n_qubits();
        (0..n)
            .filter(|q| mask >> q & 1 == 1)
            .fold(0usize, |acc, q| acc | 1 << (n - 1 - q))
    }

    /// Delete the tensor factors of the qubits not in `kept`. The result acts
    /// on `kept.len()` qubits, in increasing qubit order.
    pub fn restrict(&self, kept: &[usize]) -> Result<Self> {
        let kept = normalize_qubits(kept, self.n_qubits())?;
        let factors: Vec<Factor> = kept.iter().map(|&q| self.factor(q)).collect();
        Self::from_factors(&factors, self.phase)
    }

    fn symbol_string(&self) -> String {
        self.factors().map(Factor::to_char).collect()
    }
}

pub(crate) fn normalize_qubits(kept: &[usize], n: usize) -> Result<Vec<usize>> {
    if kept.is_empty() {
        return Err(Error::InvalidArgument("empty qubit subset".into()));
    }
    let mut v = kept.to_vec();
    v.sort_unstable();
    v.dedup();
    if let Some(&q) = v.iter().find(|&&q| q >= n) {
        return Err(Error::InvalidArgument(format!(
            "qubit {q} out of range for {n} qubits"
        )));
    }
    Ok(v)
}

impl Ord for PhasedPauli {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.lex_index(), self.phase).cmp(&(other.n, other.lex_index(), other.phase))
    }
}

impl PartialOrd for PhasedPauli {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PhasedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        write!(f, "{prefix}{}", self.symbol_string())
    }
}

/// A nontrivial Hermitian Pauli observable: a canonical positive base and a sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Observable {
    base: PhasedPauli,
    sign: Sign,
}

impl Observable {
    pub fn new(base: PhasedPauli, sign: Sign) -> Result<Self> {
        if base.is_trivial() {
            return Err(Error::InvalidArgument(
                "the identity is not a nontrivial observable".into(),
            ));
        }
        Ok(Self {
            base: base.base(),
            sign,
        })
    }

    pub fn positive(base: PhasedPauli) -> Result<Self> {
        Self::new(base, Sign::Plus)
    }

    /// Interpret a Hermitian operator as a signed observable.
    pub fn from_hermitian(p: &PhasedPauli) -> Result<Self> {
        if !p.is_hermitian() {
            return Err(Error::InvalidArgument(format!("{p} is not Hermitian")));
        }
        Self::new(p.base(), Sign::from_negative(p.phase_exp() == 2))
    }

    pub fn base(&self) -> PhasedPauli {
        self.base
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn n_qubits(&self) -> usize {
        self.base.n_qubits()
    }

    /// The operator including its sign.
    pub fn operator(&self) -> PhasedPauli {
        self.base.with_phase(self.sign.phase_exp())
    }

    pub fn same_up_to_sign(&self, other: &Observable) -> bool {
        self.base == other.base
    }

    /// Restrict to the kept qubits; `None` when the remainder is the identity.
    pub fn restrict(&self, kept: &[usize]) -> Result<Option<Observable>> {
        let base = self.base.restrict(kept)?;
        if base.is_trivial() {
            Ok(None)
        } else {
            Observable::new(base, self.sign).map(Some)
        }
    }
}

impl FromStr for Observable {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (negative, body, offset) = match text.strip_prefix('-') {
            Some(rest) => (true, rest, 1),
            None => (false, text, 0),
        };
        if body.is_empty() {
            return Err(Error::Parse {
                position: offset,
                message: "expected at least one of I, X, Y, Z".into(),
            });
        }
        let mut factors = Vec::with_capacity(body.len());
        for (i, c) in body.chars().enumerate() {
            match Factor::from_char(c) {
                Some(f) => factors.push(f),
                None => {
                    return Err(Error::Parse {
                        position: offset + i,
                        message: format!("unexpected character {c:?}"),
                    })
                }
            }
        }
        if factors.len() > MAX_QUBITS {
            return Err(Error::CapExceeded {
                what: "qubit count",
                value: factors.len(),
                cap: MAX_QUBITS,
            });
        }
        let base = PhasedPauli::from_factors(&factors, 0)?;
        if base.is_trivial() {
            return Err(Error::Parse {
                position: offset,
                message: format!("{body} is the identity, not a nontrivial observable"),
            });
        }
        Observable::new(base, Sign::from_negative(negative))
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign.is_negative() {
            write!(f, "-")?;
        }
        write!(f, "{}", self.base)
    }
}

/// Shorthand used throughout tests and fixtures. Panics on malformed input.
pub fn obs(text: &str) -> Observable {
    text.parse()
        .unwrap_or_else(|e| panic!("bad observable {text:?}: {e}"))
}

/// Positive base of a symbol, e.g. `base("ZXX")`.
pub fn base(text: &str) -> PhasedPauli {
    obs(text).base()
}
