//! Predegree coefficients from Segre classes, plus the group-degree and
//! dimension formulas for smooth quadrics.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::chow::{binomial, ChowClass, ProductSpace};
use crate::error::{invalid, Error, Result};
use crate::linalg::determinant;
use crate::Rational;

/// Coefficients `a_0, ..., a_N` of a predegree polynomial, `N = dim P End(A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredegreePolynomial {
    coeffs: Vec<BigInt>,
}

impl PredegreePolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(invalid("a predegree polynomial has at least one coefficient"));
        }
        if let Some(i) = coeffs.iter().position(|c| c.is_negative()) {
            return Err(invalid(format!("coefficient a_{i} is negative")));
        }
        Ok(Self { coeffs })
    }

    /// `N`, the dimension of the space of transformations.
    pub fn ambient_dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Index of the last nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// Coefficients up to the degree, dropping the trailing zeros.
    pub fn significant_coeffs(&self) -> &[BigInt] {
        match self.degree() {
            Some(d) => &self.coeffs[..=d],
            None => &[],
        }
    }
}

impl fmt::Display for PredegreePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write_term(f, &c.to_string(), i)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Writes `c t^i` the way the polynomial is printed: `1`, `2t`, `4t^2`, `*t^7`.
pub(crate) fn write_term(f: &mut impl fmt::Write, c: &str, i: usize) -> fmt::Result {
    match i {
        0 => write!(f, "{c}"),
        1 => write!(f, "{c}t"),
        _ => write!(f, "{c}t^{i}"),
    }
}

fn check_projective(s: &ChowClass, n: usize) -> Result<()> {
    let expected = ProductSpace::projective(n);
    if s.ambient() != &expected {
        return Err(Error::AmbientMismatch {
            left: expected,
            right: s.ambient().clone(),
        });
    }
    Ok(())
}

/// Twist of a class on `P^N` by `O(d)`: the codimension-`j` piece is divided by `(1 + dH)^j`.
pub fn tensor_class(s: &ChowClass, d: i64) -> Result<ChowClass> {
    let ambient = s.ambient().clone();
    if ambient.num_factors() != 1 {
        return Err(invalid(format!("{ambient} is not a single projective space")));
    }
    let c1 = ChowClass::from_powers(&ambient, [Rational::one(), Rational::from_integer(d.into())])?;
    let inv = c1.invert_unit()?;
    let mut out = ChowClass::zero(&ambient);
    let Some(top) = s.max_codim() else {
        return Ok(out);
    };
    let mut divisor = ChowClass::one(&ambient);
    for j in 0..=top {
        let piece = s.codim_part(j);
        if !piece.is_zero() {
            out = out.add(&piece.mul(&divisor)?)?;
        }
        divisor = divisor.mul(&inv)?;
    }
    Ok(out)
}

/// `(1 - dH)^{-1} ∩ ([P^N] - S ⊗ O(-d))`, whose codimension-`i` coefficient is `e_{i,S}`.
fn twisted_graph_class(n: usize, d: i64, s: &ChowClass) -> Result<ChowClass> {
    check_projective(s, n)?;
    let ambient = ProductSpace::projective(n);
    let one = ChowClass::one(&ambient);
    let factor = ChowClass::from_powers(&ambient, [Rational::one(), Rational::from_integer((-d).into())])?
        .invert_unit()?;
    factor.mul(&one.sub(&tensor_class(s, -d)?)?)
}

fn extract(class: &ChowClass, n: usize, i: usize) -> Result<BigInt> {
    let h = ChowClass::monomial(class.ambient(), &[n - i], Rational::one())?;
    let value = h.mul(class)?.integrate();
    if !value.is_integer() {
        return Err(Error::NonInteger {
            index: i,
            value: value.to_string(),
        });
    }
    Ok(value.to_integer())
}

/// `e_{i,S} = ∫ H^{N-i} (1 - dH)^{-1} ∩ ([P^N] - S ⊗ O(-d))`.
///
/// Fails with [`Error::NonInteger`] rather than rounding.
pub fn predegree_coefficient(n: usize, d: i64, s: &ChowClass, i: usize) -> Result<BigInt> {
    if i > n {
        return Err(invalid(format!("index {i} exceeds ambient dimension {n}")));
    }
    extract(&twisted_graph_class(n, d, s)?, n, i)
}

/// All `a_i`: `e_{i,S}` up to `dim_orb`, zero afterwards.
///
/// The caller certifies that every component of the discarded locus has
/// codimension greater than `dim_orb`.
pub fn predegree_from_segre(
    n: usize,
    d: i64,
    s: &ChowClass,
    dim_orb: usize,
) -> Result<PredegreePolynomial> {
    if dim_orb > n {
        return Err(invalid(format!("orbit dimension {dim_orb} exceeds {n}")));
    }
    let class = twisted_graph_class(n, d, s)?;
    let coeffs = (0..=n)
        .map(|i| {
            if i <= dim_orb {
                extract(&class, n, i)
            } else {
                Ok(BigInt::zero())
            }
        })
        .collect::<Result<Vec<_>>>()?;
    PredegreePolynomial::new(coeffs)
}

/// `a_i / i!` for every coefficient.
pub fn chern_character_form(p: &PredegreePolynomial) -> Vec<Rational> {
    let mut fact = BigInt::one();
    p.coeffs()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            if i > 0 {
                fact *= BigInt::from(i);
            }
            Rational::new(a.clone(), fact.clone())
        })
        .collect()
}

/// Degree of the closure of `SO(m)` in `P End(K^m)`:
/// `2^{m-1} det( C(2m - 2i - 2j, m - 2i) )_{1 <= i, j <= floor(m/2)}`.
pub fn deg_so(m: u32) -> Result<BigInt> {
    if m < 2 {
        return Err(invalid(format!("deg_so needs m >= 2, got {m}")));
    }
    let m = m as u64;
    let size = m / 2;
    let matrix = (1..=size)
        .map(|i| {
            (1..=size)
                .map(|j| binomial(2 * m - 2 * i - 2 * j, m - 2 * i))
                .collect()
        })
        .collect();
    Ok((BigInt::one() << (m - 1)) * determinant(matrix))
}

/// The projective orthogonal group has the same degree as `SO`.
pub fn deg_po(m: u32) -> Result<BigInt> {
    deg_so(m)
}

/// Dimension `(n - 1 - 3k/2)(k + 1)` of the Fano scheme of `k`-planes on a
/// smooth quadric in `P^n`.
pub fn fano_dim(n: u32, k: u32) -> Result<u64> {
    if n == 0 || k > (n - 1) / 2 {
        return Err(invalid(format!(
            "a smooth quadric in P^{n} has no linear subspaces of dimension {k}"
        )));
    }
    let (n, k) = (n as i64, k as i64);
    // k(k + 1) is even, so the halving is exact.
    let doubled = (2 * (n - 1) - 3 * k) * (k + 1);
    Ok((doubled / 2) as u64)
}

/// Largest dimension of a component of the base locus for a smooth quadric in `P^n`.
pub fn max_component_dim(n: u32) -> Result<u64> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    let k = (n - 1) / 2;
    Ok(fano_dim(n, k)? + (n as u64 + 1) * (k as u64 + 1) - 1)
}
