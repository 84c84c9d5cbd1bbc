//! The smooth quadric surface `Q = V(x0 x3 - x1 x2)` in `P^3`: point conditions,
//! the base locus of the orbit map, and the full predegree pipeline.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::chow::ProductSpace;
use crate::error::{invalid, Result};
use crate::linalg;
use crate::predegree::{self, write_term, PredegreePolynomial};
use crate::segre;
use crate::Rational;

pub type Vec2 = [Rational; 2];
pub type Vec4 = [Rational; 4];
/// A `2 x 4` matrix, a point of `P^7 = P M_{2,4}`.
pub type Mat2x4 = [Vec4; 2];
pub type Mat4 = [Vec4; 4];

/// Codimension of `Z1 ∩ Z2` (isomorphic to `Q x P^3`) in `P^15`.
pub const INTERSECTION_CODIM: usize = 10;
/// Dimension of the orbit of a smooth quadric in `P^9`; the orbit is dense.
pub const ORBIT_DIM: usize = 9;
const _: () = assert!(INTERSECTION_CODIM > ORBIT_DIM);

pub fn zero_mat4() -> Mat4 {
    std::array::from_fn(|_| std::array::from_fn(|_| Rational::zero()))
}

pub fn unit_mat4(i: usize, j: usize) -> Mat4 {
    let mut m = zero_mat4();
    m[i][j] = Rational::one();
    m
}

pub fn flatten(m: &Mat4) -> Vec<Rational> {
    m.iter().flat_map(|r| r.iter().cloned()).collect()
}

pub fn mat_vec(m: &Mat4, v: &Vec4) -> Vec4 {
    std::array::from_fn(|i| m[i].iter().zip(v).map(|(a, b)| a * b).sum())
}

pub fn dot(a: &Vec4, b: &Vec4) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Frobenius pairing `sum_ij a_ij b_ij`.
pub fn pairing(a: &Mat4, b: &Mat4) -> Rational {
    a.iter().zip(b).map(|(r, s)| dot(r, s)).sum()
}

fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `x k^T`, the rank-one matrix with image `x` and kernel `k^⊥`.
pub fn outer(x: &Vec4, k: &Vec4) -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| &x[i] * &k[j]))
}

/// The Segre point `(p0 q0 : p0 q1 : p1 q0 : p1 q1)` of `P^1 x P^1` on `Q`.
pub fn segre_point(p: &Vec2, q: &Vec2) -> Vec4 {
    [&p[0] * &q[0], &p[0] * &q[1], &p[1] * &q[0], &p[1] * &q[1]]
}

/// `q k^T` as a point of `P M_{2,4}`.
pub fn rank_one_2x4(q: &Vec2, k: &Vec4) -> Mat2x4 {
    std::array::from_fn(|i| std::array::from_fn(|j| &q[i] * &k[j]))
}

/// Bilinear lift of `sigma1`: rows `(p0 xi0, p0 xi1, p1 xi0, p1 xi1)`.
pub fn sigma1_lift(p: &Vec2, xi: &Mat2x4) -> Mat4 {
    let row = |s: &Rational, r: &Vec4| -> Vec4 { std::array::from_fn(|j| s * &r[j]) };
    [
        row(&p[0], &xi[0]),
        row(&p[0], &xi[1]),
        row(&p[1], &xi[0]),
        row(&p[1], &xi[1]),
    ]
}

/// Bilinear lift of `sigma2`: rows `(p0 xi0, p1 xi0, p0 xi1, p1 xi1)`.
pub fn sigma2_lift(p: &Vec2, xi: &Mat2x4) -> Mat4 {
    let row = |s: &Rational, r: &Vec4| -> Vec4 { std::array::from_fn(|j| s * &r[j]) };
    [
        row(&p[0], &xi[0]),
        row(&p[1], &xi[0]),
        row(&p[0], &xi[1]),
        row(&p[1], &xi[1]),
    ]
}

fn check_segre_input(p: &Vec2, xi: &Mat2x4) -> Result<()> {
    if is_zero_vec(p) {
        return Err(invalid("p must be nonzero"));
    }
    if xi.iter().all(|r| is_zero_vec(r)) {
        return Err(invalid("xi must be nonzero"));
    }
    Ok(())
}

/// `sigma1(p, xi)`: matrices whose image lies on the a-line of `p`.
pub fn sigma1(p: &Vec2, xi: &Mat2x4) -> Result<ProjMatrix> {
    check_segre_input(p, xi)?;
    ProjMatrix::new(sigma1_lift(p, xi))
}

/// `sigma2(p, xi)`: matrices whose image lies on the b-line of `p`.
pub fn sigma2(p: &Vec2, xi: &Mat2x4) -> Result<ProjMatrix> {
    check_segre_input(p, xi)?;
    ProjMatrix::new(sigma2_lift(p, xi))
}

/// A nonzero `4 x 4` matrix up to scale, a point of `P End(A) = P^15`.
#[derive(Debug, Clone)]
pub struct ProjMatrix {
    entries: Mat4,
}

impl ProjMatrix {
    pub fn new(entries: Mat4) -> Result<Self> {
        if entries.iter().all(|r| is_zero_vec(r)) {
            return Err(invalid("the zero matrix is not a point of P^15"));
        }
        Ok(Self { entries })
    }

    pub fn identity() -> Self {
        let mut m = zero_mat4();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Rational::one();
        }
        Self { entries: m }
    }

    pub fn from_row_major(values: &[Rational]) -> Result<Self> {
        if values.len() != 16 {
            return Err(invalid(format!("expected 16 entries, got {}", values.len())));
        }
        Self::new(std::array::from_fn(|i| {
            std::array::from_fn(|j| values[4 * i + j].clone())
        }))
    }

    pub fn entries(&self) -> &Mat4 {
        &self.entries
    }

    pub fn apply(&self, v: &Vec4) -> Vec4 {
        mat_vec(&self.entries, v)
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<Rational>> = self.entries.iter().map(|r| r.to_vec()).collect();
        linalg::rank(&rows, 4)
    }
}

impl PartialEq for ProjMatrix {
    /// Equality in `P^15`: the matrices are proportional.
    fn eq(&self, other: &Self) -> bool {
        let a = flatten(&self.entries);
        let b = flatten(&other.entries);
        let Some(i) = a.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let ratio = &b[i] / &a[i];
        a.iter().zip(&b).all(|(x, y)| x * &ratio == *y)
    }
}

impl Eq for ProjMatrix {}

/// A quadric `f(x) = x^T M x` given by its symmetric Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadricGram {
    m: Mat4,
}

impl QuadricGram {
    pub fn new(m: Mat4) -> Result<Self> {
        if (0..4).any(|i| (0..i).any(|j| m[i][j] != m[j][i])) {
            return Err(invalid("Gram matrix must be symmetric"));
        }
        let lcm = flatten(&m)
            .iter()
            .fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
        let ints = m
            .iter()
            .map(|r| r.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect())
            .collect();
        if linalg::determinant(ints).is_zero() {
            return Err(invalid("the quadric is singular"));
        }
        Ok(Self { m })
    }

    /// `x0 x3 - x1 x2`.
    pub fn canonical() -> Self {
        let half = Rational::new(1.into(), 2.into());
        let mut m = zero_mat4();
        m[0][3] = half.clone();
        m[3][0] = half.clone();
        m[1][2] = -half.clone();
        m[2][1] = -half;
        Self { m }
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.m
    }

    pub fn eval(&self, x: &Vec4) -> Rational {
        dot(x, &mat_vec(&self.m, x))
    }

    /// `∇f(x) = 2 M x`.
    pub fn gradient(&self, x: &Vec4) -> Vec4 {
        let two = Rational::from_integer(2.into());
        mat_vec(&self.m, x).map(|c| c * &two)
    }

    /// `f(φ q)`, a representative of the point condition `s_q(φ)`.
    pub fn point_condition_value(&self, phi: &ProjMatrix, q: &Vec4) -> Result<Rational> {
        if is_zero_vec(q) {
            return Err(invalid("q must be nonzero"));
        }
        Ok(self.eval(&phi.apply(q)))
    }

    /// `∇s_q(φ) = 2 (M φ q) q^T`, so that `<∇s_q(φ), ψ> = ∇f(φq) · (ψq)`.
    pub fn point_condition_gradient(&self, phi: &ProjMatrix, q: &Vec4) -> Result<Mat4> {
        if is_zero_vec(q) {
            return Err(invalid("q must be nonzero"));
        }
        Ok(outer(&self.gradient(&phi.apply(q)), q))
    }

    /// Whether `im φ ⊂ Q`, i.e. `φ^T M φ = 0`.
    pub fn contains_image(&self, phi: &ProjMatrix) -> bool {
        let e = phi.entries();
        (0..4).all(|i| {
            (0..4).all(|j| {
                let col_j: Vec4 = std::array::from_fn(|r| e[r][j].clone());
                let col_i: Vec4 = std::array::from_fn(|r| e[r][i].clone());
                dot(&col_i, &mat_vec(&self.m, &col_j)).is_zero()
            })
        })
    }
}

pub fn point_condition_value(phi: &ProjMatrix, q: &Vec4) -> Result<Rational> {
    QuadricGram::canonical().point_condition_value(phi, q)
}

pub fn point_condition_gradient(phi: &ProjMatrix, q: &Vec4) -> Result<Mat4> {
    QuadricGram::canonical().point_condition_gradient(phi, q)
}

/// Membership in the base locus of the orbit map of the canonical quadric.
pub fn base_scheme_member(phi: &ProjMatrix) -> bool {
    QuadricGram::canonical().contains_image(phi)
}

/// Pushforward of the class `S` standing in for the Segre class of the base
/// scheme away from `Z1 ∩ Z2`: twice the Segre class of `P^1 x P^7` in `P^15`.
pub fn doubled_segre_class() -> Result<crate::chow::ChowClass> {
    let z = ProductSpace::new(vec![1, 7])?;
    Ok(segre::segre_class_pushforward(&z)?.scale(&Rational::from_integer(2.into())))
}

/// The predegree polynomial of a smooth quadric surface.
pub fn predegree_quadric_p3() -> Result<PredegreePolynomial> {
    let s = doubled_segre_class()?;
    predegree::predegree_from_segre(15, 2, &s, ORBIT_DIM)
}

/// A Table 1 coefficient: known, or left open.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coefficient {
    Known(BigInt),
    Unknown,
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Known(c) => write!(f, "{c}"),
            Coefficient::Unknown => f.write_str("*"),
        }
    }
}

/// One row of the table of predegree polynomials of smooth quadrics in `P^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Row {
    pub n: u32,
    /// `dim P Sym^2(A^∨)`, which is also the orbit dimension.
    pub dim_forms: u64,
    /// Largest dimension of a component of the base locus.
    pub dim_component: u64,
    /// `a_0 ..= a_{dim orbit}`.
    pub coefficients: Vec<Coefficient>,
}

impl Table1Row {
    /// Number of leading coefficients equal to `2^i`.
    pub fn bezout_prefix(&self) -> usize {
        self.coefficients
            .iter()
            .enumerate()
            .take_while(|(i, c)| **c == Coefficient::Known(BigInt::one() << *i))
            .count()
    }

    pub fn polynomial_string(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coefficients.iter().enumerate() {
            if matches!(c, Coefficient::Known(v) if v.is_zero()) {
                continue;
            }
            if !out.is_empty() {
                out.push_str(" + ");
            }
            write_term(&mut out, &c.to_string(), i).expect("writing to a String");
        }
        out
    }
}

pub fn table1_row(n: u32) -> Result<Table1Row> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    let nn = n as u64;
    let dim_forms = (nn + 1) * (nn + 2) / 2 - 1;
    let ambient = nn * nn + 2 * nn;
    let dim_component = predegree::max_component_dim(n)?;
    let base_codim = ambient - dim_component;
    let coefficients = if n == 3 {
        let poly = predegree_quadric_p3()?;
        (0..=dim_forms as usize)
            .map(|i| Coefficient::Known(poly.coeff(i)))
            .collect()
    } else {
        let lead = predegree::deg_po(n + 1)?;
        (0..=dim_forms)
            .map(|i| {
                if i == dim_forms {
                    Coefficient::Known(lead.clone())
                } else if i < base_codim {
                    Coefficient::Known(BigInt::one() << i)
                } else {
                    Coefficient::Unknown
                }
            })
            .collect()
    };
    Ok(Table1Row {
        n,
        dim_forms,
        dim_component,
        coefficients,
    })
}

/// `(dim L, number of translates through dim L general points)` for the quadric surface.
///
/// The last row divides `a_9` by the degree of the stabilizer `PO(4)`.
pub fn table2() -> Result<Vec<(usize, BigInt)>> {
    let poly = predegree_quadric_p3()?;
    let stab = predegree::deg_po(4)?;
    Ok((0..=ORBIT_DIM)
        .map(|i| {
            let a = poly.coeff(i);
            if i == ORBIT_DIM {
                (i, a / &stab)
            } else {
                (i, a)
            }
        })
        .collect())
}
