//! Exact matrices over the Gaussian dyadic rationals `(a + b·i) / 2^k`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `(re + im·i) / 2^exp`, kept in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussDyadic {
    re: i64,
    im: i64,
    exp: u32,
}

impl GaussDyadic {
    pub const ZERO: Self = Self { re: 0, im: 0, exp: 0 };
    pub const ONE: Self = Self { re: 1, im: 0, exp: 0 };

    pub fn new(re: i64, im: i64, exp: u32) -> Self {
        Self { re, im, exp }.normalized()
    }

    pub fn int(v: i64) -> Self {
        Self::new(v, 0, 0)
    }

    /// `i^k`.
    pub fn i_pow(k: u32) -> Self {
        match k % 4 {
            0 => Self::new(1, 0, 0),
            1 => Self::new(0, 1, 0),
            2 => Self::new(-1, 0, 0),
            _ => Self::new(0, -1, 0),
        }
    }

    pub fn half() -> Self {
        Self::new(1, 0, 1)
    }

    fn normalized(mut self) -> Self {
        if self.re == 0 && self.im == 0 {
            return Self::ZERO;
        }
        while self.exp > 0 && self.re % 2 == 0 && self.im % 2 == 0 {
            self.re /= 2;
            self.im /= 2;
            self.exp -= 1;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn re_numer(&self) -> i64 {
        self.re
    }

    pub fn im_numer(&self) -> i64 {
        self.im
    }

    /// Power of two in the denominator.
    pub fn denom_exp(&self) -> u32 {
        self.exp
    }

    pub fn conj(&self) -> Self {
        Self {
            im: -self.im,
            ..*self
        }
    }

    /// Numerators scaled to denominator `2^exp` (requires `exp >= self.exp`).
    pub(crate) fn scaled_to(&self, exp: u32) -> (i128, i128) {
        let shift = exp - self.exp;
        ((self.re as i128) << shift, (self.im as i128) << shift)
    }

    fn aligned(a: Self, b: Self) -> (i64, i64, i64, i64, u32) {
        let exp = a.exp.max(b.exp);
        let sa = exp - a.exp;
        let sb = exp - b.exp;
        (a.re << sa, a.im << sa, b.re << sb, b.im << sb, exp)
    }
}

impl Add for GaussDyadic {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let (ar, ai, br, bi, exp) = Self::aligned(self, rhs);
        Self::new(ar + br, ai + bi, exp)
    }
}

impl Sub for GaussDyadic {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for GaussDyadic {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            re: -self.re,
            im: -self.im,
            exp: self.exp,
        }
    }
}

impl Mul for GaussDyadic {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
            self.exp + rhs.exp,
        )
    }
}

impl fmt::Display for GaussDyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = match (self.re, self.im) {
            (r, 0) => format!("{r}"),
            (0, i) => format!("{i}i"),
            (r, i) if i < 0 => format!("({r}{i}i)"),
            (r, i) => format!("({r}+{i}i)"),
        };
        if self.exp == 0 {
            write!(f, "{num}")
        } else {
            write!(f, "{num}/{}", 1u64 << self.exp)
        }
    }
}

/// Dense row-major matrix with exact entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussDyadic>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![GaussDyadic::ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.set(i, i, GaussDyadic::ONE);
        }
        m
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, GaussDyadic::int(e));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> GaussDyadic {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussDyadic) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<GaussDyadic> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(GaussDyadic::is_zero)
    }

    pub fn scale(&self, s: GaussDyadic) -> Self {
        Self {
            data: self.data.iter().map(|&v| v * s).collect(),
            ..*self
        }
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c).conj());
            }
        }
        m
    }

    pub fn trace(&self) -> GaussDyadic {
        (0..self.rows.min(self.cols)).fold(GaussDyadic::ZERO, |acc, i| acc + self.get(i, i))
    }

    pub fn mul_vec(&self, v: &[GaussDyadic]) -> Vec<GaussDyadic> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|r| {
                (0..self.cols).fold(GaussDyadic::ZERO, |acc, c| acc + self.get(r, c) * v[c])
            })
            .collect()
    }

    /// Column space rank.
    pub fn rank(&self) -> usize {
        self.pivot_columns().len()
    }

    /// Indices of the columns kept when scanning left to right and keeping
    /// each column independent of those already kept.
    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut echelon = Echelon::default();
        (0..self.cols)
            .filter(|&c| echelon.insert(&self.column(c)))
            .collect()
    }
}

impl<'a> Mul<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;

    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = ExactMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.data[idx] = out.data[idx] + a * b;
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;

    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch");
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;

    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        self + &rhs.scale(GaussDyadic::int(-1))
    }
}

/// A Gaussian-integer vector, the common currency of the elimination helpers.
pub type GaussIntVec = Vec<(i128, i128)>;

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Clear denominators of an exact vector.
pub fn to_gauss_ints(v: &[GaussDyadic]) -> GaussIntVec {
    let exp = v.iter().map(|e| e.denom_exp()).max().unwrap_or(0);
    v.iter().map(|e| e.scaled_to(exp)).collect()
}

/// Divide by the integer content of the vector so that its components are
/// coprime Gaussian integers, then rotate by a unit so the first nonzero
/// component has positive real part and nonnegative imaginary part.
pub fn primitive(v: &[GaussDyadic]) -> GaussIntVec {
    let mut w = to_gauss_ints(v);
    remove_content(&mut w);
    if let Some(&(re, im)) = w.iter().find(|&&(a, b)| a != 0 || b != 0) {
        // multiply by the unit i^k that moves (re, im) into the first quadrant
        let k = if re > 0 && im >= 0 {
            0
        } else if re <= 0 && im > 0 {
            3
        } else if re < 0 && im <= 0 {
            2
        } else {
            1
        };
        for e in w.iter_mut() {
            *e = mul_i_pow(*e, k);
        }
    }
    w
}

fn mul_i_pow((re, im): (i128, i128), k: u32) -> (i128, i128) {
    match k % 4 {
        0 => (re, im),
        1 => (-im, re),
        2 => (-re, -im),
        _ => (im, -re),
    }
}

fn remove_content(v: &mut GaussIntVec) {
    let g = v.iter().fold(0, |g, &(a, b)| gcd(gcd(g, a), b));
    if g > 1 {
        for e in v.iter_mut() {
            e.0 /= g;
            e.1 /= g;
        }
    }
}

fn gmul(a: (i128, i128), b: (i128, i128)) -> (i128, i128) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn is_zero_vec(v: &GaussIntVec) -> bool {
    v.iter().all(|&(a, b)| a == 0 && b == 0)
}

/// Fraction-free reduced echelon form over the Gaussian integers, used for
/// exact independence and span-membership tests.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<(usize, GaussIntVec)>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: GaussIntVec) -> GaussIntVec {
        for (p, row) in &self.rows {
            let coeff = v[*p];
            if coeff == (0, 0) {
                continue;
            }
            let pivot = row[*p];
            for (e, &r) in v.iter_mut().zip(row) {
                let a = gmul(pivot, *e);
                let b = gmul(coeff, r);
                *e = (a.0 - b.0, a.1 - b.1);
            }
            remove_content(&mut v);
        }
        v
    }

    /// True when `v` lies in the span of the inserted vectors.
    pub fn contains(&self, v: &[GaussDyadic]) -> bool {
        is_zero_vec(&self.reduce(to_gauss_ints(v)))
    }

    /// Insert `v`; returns whether it was independent of the current rows.
    pub fn insert(&mut self, v: &[GaussDyadic]) -> bool {
        let v = self.reduce(to_gauss_ints(v));
        let Some(p) = v.iter().position(|&(a, b)| a != 0 || b != 0) else {
            return false;
        };
        let pivot = v[p];
        for (_, row) in self.rows.iter_mut() {
            let coeff = row[p];
            if coeff == (0, 0) {
                continue;
            }
            for (e, &r) in row.iter_mut().zip(&v) {
                let a = gmul(pivot, *e);
                let b = gmul(coeff, r);
                *e = (a.0 - b.0, a.1 - b.1);
            }
            remove_content(row);
        }
        self.rows.push((p, v));
        true
    }
}

/// Promote an integer vector to exact entries.
pub fn int_vector(entries: &[i64]) -> Vec<GaussDyadic> {
    entries.iter().map(|&e| GaussDyadic::int(e)).collect()
}
