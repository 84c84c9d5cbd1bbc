//! Chow rings of products of projective spaces.
//!
//! The Chow ring of `P^{n_1} x ... x P^{n_r}` is `Q[h_1, ..., h_r] / (h_i^{n_i + 1})`,
//! graded by codimension. Classes are stored sparsely as a map from exponent
//! tuples to exact rational coefficients; every stored tuple is reduced and
//! every stored coefficient is nonzero.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Error, Result};
use crate::Rational;

/// Ambient `P^{n_1} x ... x P^{n_r}`, described by its factor dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductSpace {
    factor_dims: Vec<usize>,
}

impl ProductSpace {
    pub fn new(factor_dims: Vec<usize>) -> Result<Self> {
        if factor_dims.is_empty() {
            return Err(invalid("a product space needs at least one factor"));
        }
        Ok(Self { factor_dims })
    }

    /// A single projective space `P^n`.
    pub fn projective(n: usize) -> Self {
        Self {
            factor_dims: vec![n],
        }
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    pub fn num_factors(&self) -> usize {
        self.factor_dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.factor_dims.iter().sum()
    }

    /// Exponents of the point class `h_1^{n_1} ... h_r^{n_r}`.
    pub fn top_exponents(&self) -> Vec<usize> {
        self.factor_dims.clone()
    }

    /// Whether `exps` names a monomial that survives the truncation.
    pub fn admits(&self, exps: &[usize]) -> bool {
        exps.len() == self.factor_dims.len()
            && exps.iter().zip(&self.factor_dims).all(|(e, n)| e <= n)
    }

    fn check_same(&self, other: &ProductSpace) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AmbientMismatch {
                left: self.clone(),
                right: other.clone(),
            })
        }
    }
}

impl fmt::Display for ProductSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.factor_dims.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "P^{n}")?;
        }
        Ok(())
    }
}

/// An element of the Chow ring of a [`ProductSpace`], possibly of mixed codimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowClass {
    ambient: ProductSpace,
    terms: BTreeMap<Vec<usize>, Rational>,
}

impl ChowClass {
    pub fn zero(ambient: &ProductSpace) -> Self {
        Self {
            ambient: ambient.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ambient: &ProductSpace) -> Self {
        Self::constant(ambient, Rational::one())
    }

    pub fn constant(ambient: &ProductSpace, c: Rational) -> Self {
        let mut out = Self::zero(ambient);
        out.insert(vec![0; ambient.num_factors()], c);
        out
    }

    /// `coeff * h^exps`; monomials killed by the truncation give zero.
    pub fn monomial(ambient: &ProductSpace, exps: &[usize], coeff: Rational) -> Result<Self> {
        if exps.len() != ambient.num_factors() {
            return Err(invalid(format!(
                "expected {} exponents, got {}",
                ambient.num_factors(),
                exps.len()
            )));
        }
        let mut out = Self::zero(ambient);
        if ambient.admits(exps) {
            out.insert(exps.to_vec(), coeff);
        }
        Ok(out)
    }

    /// The hyperplane class `h_i` pulled back from the `i`-th factor (0-based).
    pub fn generator(ambient: &ProductSpace, i: usize) -> Result<Self> {
        if i >= ambient.num_factors() {
            return Err(invalid(format!("factor index {i} out of range for {ambient}")));
        }
        let mut exps = vec![0; ambient.num_factors()];
        exps[i] = 1;
        Self::monomial(ambient, &exps, Rational::one())
    }

    /// `sum_k coeffs[k] H^k` on a single projective space.
    pub fn from_powers<I>(ambient: &ProductSpace, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = Rational>,
    {
        if ambient.num_factors() != 1 {
            return Err(invalid(format!("{ambient} is not a single projective space")));
        }
        let mut out = Self::zero(ambient);
        for (k, c) in coeffs.into_iter().enumerate() {
            if ambient.admits(&[k]) {
                out.insert(vec![k], c);
            }
        }
        Ok(out)
    }

    /// Builds a class from arbitrary `(exponents, coefficient)` pairs, summing duplicates.
    pub fn from_terms<I>(ambient: &ProductSpace, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Rational)>,
    {
        let mut out = Self::zero(ambient);
        for (exps, c) in terms {
            if exps.len() != ambient.num_factors() {
                return Err(invalid(format!(
                    "expected {} exponents, got {}",
                    ambient.num_factors(),
                    exps.len()
                )));
            }
            if ambient.admits(&exps) {
                out.insert(exps, c);
            }
        }
        Ok(out)
    }

    fn insert(&mut self, exps: Vec<usize>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ambient(&self) -> &ProductSpace {
        &self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms in exponent-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[usize]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.ambient.num_factors()])
    }

    /// Codimension-indexed coefficients of a class on a single `P^N`.
    pub fn power_coeffs(&self) -> Result<Vec<Rational>> {
        if self.ambient.num_factors() != 1 {
            return Err(invalid(format!("{} is not a single projective space", self.ambient)));
        }
        let n = self.ambient.total_dim();
        Ok((0..=n).map(|k| self.coeff(&[k])).collect())
    }

    pub fn add(&self, other: &ChowClass) -> Result<ChowClass> {
        self.ambient.check_same(&other.ambient)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &ChowClass) -> Result<ChowClass> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ChowClass {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> ChowClass {
        if c.is_zero() {
            return Self::zero(&self.ambient);
        }
        Self {
            ambient: self.ambient.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .collect(),
        }
    }

    /// Ring product, reduced modulo `h_i^{n_i + 1}`.
    pub fn mul(&self, other: &ChowClass) -> Result<ChowClass> {
        self.ambient.check_same(&other.ambient)?;
        let dims = self.ambient.factor_dims();
        let mut out = Self::zero(&self.ambient);
        for (ea, ca) in &self.terms {
            'inner: for (eb, cb) in &other.terms {
                let mut e = Vec::with_capacity(dims.len());
                for ((x, y), n) in ea.iter().zip(eb).zip(dims) {
                    let s = x + y;
                    if s > *n {
                        continue 'inner;
                    }
                    e.push(s);
                }
                out.insert(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> ChowClass {
        let mut out = Self::one(&self.ambient);
        for _ in 0..k {
            out = out.mul(self).expect("same ambient");
        }
        out
    }

    /// Inverse of a class of the form `1 + nilpotent`.
    ///
    /// Uses the geometric series `sum_k (-u)^k`, which stops at `total_dim`
    /// because `u` has no codimension-0 part.
    pub fn invert_unit(&self) -> Result<ChowClass> {
        let c0 = self.constant_term();
        if !c0.is_one() {
            return Err(Error::NotUnit(c0.to_string()));
        }
        let one = Self::one(&self.ambient);
        let minus_u = one.sub(self)?;
        let mut out = one.clone();
        let mut power = one;
        for _ in 0..self.ambient.total_dim() {
            power = power.mul(&minus_u)?;
            if power.is_zero() {
                break;
            }
            out = out.add(&power)?;
        }
        Ok(out)
    }

    /// Degree of the class: the coefficient of the point class.
    pub fn integrate(&self) -> Rational {
        self.coeff(&self.ambient.top_exponents())
    }

    /// The part of the class of codimension exactly `j`.
    pub fn codim_part(&self, j: usize) -> ChowClass {
        Self {
            ambient: self.ambient.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<usize>() == j)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Smallest codimension carrying a nonzero term.
    pub fn min_codim(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn max_codim(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, exps: &[usize]) -> fmt::Result {
    let single = exps.len() == 1;
    let mut first = true;
    for (i, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if single {
            f.write_str("H")?;
        } else {
            write!(f, "h{}", i + 1)?;
        }
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for ChowClass {
    /// Terms ordered by codimension, `H` for a single factor and `h1, h2, ...` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(e, _)| (e.iter().sum::<usize>(), std::cmp::Reverse((*e).clone())));
        for (idx, (exps, c)) in terms.into_iter().enumerate() {
            let constant = exps.iter().all(|&e| e == 0);
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if constant {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    if mag.is_integer() {
                        write!(f, "{mag}")?;
                    } else {
                        write!(f, "({mag})")?;
                    }
                }
                write_monomial(f, exps)?;
            }
        }
        Ok(())
    }
}

/// `n choose k` over big integers; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
