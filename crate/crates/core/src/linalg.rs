//! Small dense exact linear algebra over the rationals.
//!
//! Everything here works on row vectors of [`Rational`]. Sizes are tiny (at
//! most the ambient dimension of an exceptional root system), so plain
//! Gauss–Jordan elimination is all we need.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

/// Exact rational scalar used throughout the crate.
pub type Rational = num_rational::Ratio<i128>;

/// A vector with exact rational entries.
pub type Vector = Vec<Rational>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n as i128)
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n as i128, d as i128)
}

pub fn zeros(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Rational, a: &[Rational]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

pub fn neg(a: &[Rational]) -> Vector {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero(a: &[Rational]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// `sum_i coeffs[i] * vectors[i]`; `dim` is used when `vectors` is empty.
pub fn combine(coeffs: &[Rational], vectors: &[Vector], dim: usize) -> Vector {
    let mut out = zeros(dim);
    for (c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

/// Reduced row echelon form of a matrix (given by rows).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    /// Nonzero rows of the reduced echelon form, pivots normalized to one.
    pub rows: Vec<Vector>,
    /// Pivot column of each row in `rows`.
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

pub fn echelon(rows: &[Vector]) -> Echelon {
    let mut m: Vec<Vector> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in 0..ncols {
                    let t = m[r][j] * f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    Echelon { rows: m, pivots }
}

pub fn rank(vectors: &[Vector]) -> usize {
    echelon(vectors).rank()
}

/// Whether `v` lies in the span of `vectors`.
pub fn in_span(vectors: &[Vector], v: &[Rational]) -> bool {
    let base = rank(vectors);
    let mut all = vectors.to_vec();
    all.push(v.to_vec());
    rank(&all) == base
}

/// A nonzero `c` with `sum_i c[i] * vectors[i] = 0`, if one exists.
///
/// The returned combination has integer entries with gcd one and a positive
/// first nonzero entry, so it is canonical for a one-dimensional kernel.
pub fn vanishing_combination(vectors: &[Vector]) -> Option<Vector> {
    let k = vectors.len();
    if k == 0 {
        return None;
    }
    let dim = vectors[0].len();
    // Columns are the input vectors; solve M c = 0.
    let rows: Vec<Vector> = (0..dim)
        .map(|i| vectors.iter().map(|v| v[i]).collect())
        .collect();
    let e = echelon(&rows);
    let free = (0..k).find(|c| !e.pivots.contains(c))?;
    let mut c = zeros(k);
    c[free] = Rational::one();
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        c[p] = -row[free];
    }
    Some(normalize_integral(c))
}

/// Scale a nonzero vector to coprime integers with positive leading entry.
pub fn normalize_integral(v: Vector) -> Vector {
    use num_integer::Integer;
    let mut l: i128 = 1;
    for x in &v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<i128> = v.iter().map(|x| (x * Rational::from_integer(l)).to_integer()).collect();
    let mut g: i128 = 0;
    for x in &ints {
        g = g.gcd(x);
    }
    if g == 0 {
        return v;
    }
    let lead_neg = ints.iter().find(|x| **x != 0).is_some_and(|x| *x < 0);
    let s = if lead_neg { -g } else { g };
    ints.into_iter().map(|x| Rational::from_integer(x / s)).collect()
}

/// Solve `a x = b` for square invertible `a` (given by rows).
pub fn solve(a: &[Vector], b: &[Rational]) -> Option<Vector> {
    let n = a.len();
    let aug: Vec<Vector> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(*bi);
            r
        })
        .collect();
    let e = echelon(&aug);
    if e.rank() != n || e.pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(e.rows.iter().map(|r| r[n]).collect())
}

/// Inverse of a square matrix, by rows.
pub fn inverse(a: &[Vector]) -> Option<Vec<Vector>> {
    let n = a.len();
    let aug: Vec<Vector> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let e = echelon(&aug);
    if e.rank() != n || e.pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(e.rows.iter().map(|r| r[n..].to_vec()).collect())
}

/// Largest denominator appearing in `v`.
pub fn max_denominator(v: &[Rational]) -> i128 {
    v.iter().map(|x| x.denom().abs()).max().unwrap_or(1)
}

pub fn is_nonnegative(v: &[Rational]) -> bool {
    v.iter().all(|x| !x.is_negative())
}
