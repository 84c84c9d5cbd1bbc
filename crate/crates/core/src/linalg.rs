//! Fraction-free exact elimination over the integers.
//!
//! Rational input rows are first scaled to primitive integer rows; all
//! elimination then stays in `Z`, with every row divided by the gcd of its
//! entries after each update so intermediate values stay small.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Determinant by Bareiss elimination. The matrix must be square.
pub fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Scales a rational vector by the lcm of its denominators and removes the content.
pub fn primitive_row(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    normalize(ints)
}

fn normalize(mut row: Vec<BigInt>) -> Vec<BigInt> {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
    if let Some(lead) = row.iter().find(|x| !x.is_zero()) {
        if lead.is_negative() {
            for x in row.iter_mut() {
                *x = -&*x;
            }
        }
    }
    row
}

/// Reduced row echelon form in integer representation.
///
/// Every pivot column has exactly one nonzero entry (its pivot); rows are
/// primitive with positive pivots.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Echelon {
    pub fn new(rows: &[Vec<Rational>], ncols: usize) -> Self {
        let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| primitive_row(r)).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == m.len() {
                break;
            }
            let Some(p) = (r..m.len())
                .filter(|&i| !m[i][c].is_zero())
                .min_by_key(|&i| m[i][c].abs())
            else {
                continue;
            };
            m.swap(r, p);
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let g = row[c].gcd(&pivot_row[c]);
                let a = &pivot_row[c] / &g;
                let b = &row[c] / &g;
                let updated: Vec<BigInt> = row
                    .iter()
                    .zip(&pivot_row)
                    .map(|(x, y)| x * &a - y * &b)
                    .collect();
                *row = normalize(updated);
            }
            m[r] = normalize(m[r].clone());
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        Self {
            rows: m,
            pivots,
            ncols,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// A basis of `{x : A x = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|c| !self.pivots.contains(c)) {
            let mut x = vec![Rational::zero(); self.ncols];
            x[free] = Rational::one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                x[p] = -Rational::new(row[free].clone(), row[p].clone());
            }
            out.push(x);
        }
        out
    }

    /// Rows as rational vectors.
    pub fn basis(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|r| r.iter().cloned().map(Rational::from_integer).collect())
            .collect()
    }
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    Echelon::new(rows, ncols).rank()
}
