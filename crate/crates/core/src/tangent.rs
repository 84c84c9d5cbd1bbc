//! Exact tangent-space checks on the base locus of the quadric orbit map.
//!
//! Matrices in `End(A)` are flattened row-major to vectors in `Q^16`; the
//! coordinate `a_{i,j}` is index `4i + j`. Gradients of point conditions are
//! linear functionals on the same space, paired by the Frobenius product.

use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::linalg::Echelon;
use crate::quadric::{
    self, flatten, outer, pairing, rank_one_2x4, segre_point, sigma1_lift, sigma2_lift,
    Mat2x4, Mat4, ProjMatrix, QuadricGram, Vec2, Vec4,
};
use crate::sampling::RationalSampler;
use crate::Rational;

/// Dimension of `End(A)` for `dim A = 4`.
pub const MATRIX_DIM: usize = 16;

/// A linear subspace of `Q^ambient`, held as an independent basis.
#[derive(Debug, Clone)]
pub struct LinearSubspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
}

impl LinearSubspace {
    /// Fails unless `basis` is linearly independent.
    pub fn from_basis(ambient: usize, basis: Vec<Vec<Rational>>) -> Result<Self> {
        if basis.iter().any(|v| v.len() != ambient) {
            return Err(invalid(format!("basis vectors must have length {ambient}")));
        }
        if Echelon::new(&basis, ambient).rank() != basis.len() {
            return Err(invalid("basis vectors are linearly dependent"));
        }
        Ok(Self { ambient, basis })
    }

    /// Span of arbitrary vectors; dependent ones are discarded.
    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        Self {
            ambient,
            basis: Echelon::new(vectors, ambient).basis(),
        }
    }

    pub fn span_matrices(mats: &[Mat4]) -> Self {
        let vectors: Vec<_> = mats.iter().map(flatten).collect();
        Self::span(MATRIX_DIM, &vectors)
    }

    /// The coordinate subspace `V(a_{i,j} : (i,j) in vanishing)` of `Q^16`.
    pub fn coordinate_vanishing(vanishing: &[(usize, usize)]) -> Self {
        let mats: Vec<Mat4> = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|ij| !vanishing.contains(ij))
            .map(|(i, j)| quadric::unit_mat4(i, j))
            .collect();
        Self::span_matrices(&mats)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dimension of the projectivization; `-1` for the zero space.
    pub fn projective_dim(&self) -> isize {
        self.dim() as isize - 1
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Echelon::new(&rows, self.ambient).rank() == self.dim()
    }

    pub fn contains_matrix(&self, m: &Mat4) -> bool {
        self.contains(&flatten(m))
    }

    pub fn contains_subspace(&self, other: &LinearSubspace) -> bool {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Echelon::new(&rows, self.ambient).rank() == self.dim()
    }

    pub fn same_as(&self, other: &LinearSubspace) -> bool {
        self.ambient == other.ambient && self.dim() == other.dim() && self.contains_subspace(other)
    }

    /// `{x : <b, x> = 0 for every basis vector b}`.
    pub fn annihilator(&self) -> LinearSubspace {
        let kernel = Echelon::new(&self.basis, self.ambient).kernel();
        Self::span(self.ambient, &kernel)
    }

    /// `U ∩ W`, computed as the annihilator of `ann U + ann W`.
    pub fn intersect(&self, other: &LinearSubspace) -> LinearSubspace {
        let mut rows = self.annihilator().basis;
        rows.extend(other.annihilator().basis);
        let kernel = Echelon::new(&rows, self.ambient).kernel();
        Self::span(self.ambient, &kernel)
    }
}

/// `{e_i} ∪ {e_i + e_j : i < j}`; `q ↦ ∇s_q(φ)` is quadratic, so these span every gradient.
pub fn polarization_points() -> Vec<Vec4> {
    let e = |i: usize| -> Vec4 {
        std::array::from_fn(|k| if k == i { Rational::one() } else { Rational::zero() })
    };
    let mut out: Vec<Vec4> = (0..4).map(e).collect();
    for i in 0..4 {
        for j in i + 1..4 {
            let mut v = e(i);
            v[j] = Rational::one();
            out.push(v);
        }
    }
    out
}

/// Span of the gradients `∇s_q(φ)` over all `q`.
pub fn gradient_span(phi: &ProjMatrix) -> LinearSubspace {
    let gram = QuadricGram::canonical();
    let grads: Vec<Mat4> = polarization_points()
        .iter()
        .map(|q| {
            gram.point_condition_gradient(phi, q)
                .expect("polarization points are nonzero")
        })
        .collect();
    LinearSubspace::span_matrices(&grads)
}

/// `∩_q T_φ P_q`: the directions killed by every point-condition gradient.
pub fn common_tangent(phi: &ProjMatrix) -> LinearSubspace {
    gradient_span(phi).annihilator()
}

/// The two components of the base locus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    /// Matrices with image in an a-line, parameterized by `sigma1`.
    Z1,
    /// Matrices with image in a b-line, parameterized by `sigma2`.
    Z2,
}

fn unit2(i: usize) -> Vec2 {
    std::array::from_fn(|k| if k == i { Rational::one() } else { Rational::zero() })
}

fn unit4(i: usize) -> Vec4 {
    std::array::from_fn(|k| if k == i { Rational::one() } else { Rational::zero() })
}

fn unit2x4(j: usize) -> Mat2x4 {
    std::array::from_fn(|r| std::array::from_fn(|c| {
        if 4 * r + c == j {
            Rational::one()
        } else {
            Rational::zero()
        }
    }))
}

fn nonzero(v: &[Rational]) -> bool {
    v.iter().any(|x| !x.is_zero())
}

/// Embedded tangent space to `Z_i` at `sigma_i(p, xi)`: the span of
/// `sigma_i({p} x P^7)` and `sigma_i(P^1 x {xi})`.
pub fn tangent_z(component: Component, p: &Vec2, xi: &Mat2x4) -> Result<LinearSubspace> {
    if !nonzero(p) || !xi.iter().any(|r| nonzero(r)) {
        return Err(invalid("tangent_z needs nonzero p and xi"));
    }
    let lift = match component {
        Component::Z1 => sigma1_lift,
        Component::Z2 => sigma2_lift,
    };
    let mut mats: Vec<Mat4> = (0..8).map(|j| lift(p, &unit2x4(j))).collect();
    mats.push(lift(&unit2(0), xi));
    mats.push(lift(&unit2(1), xi));
    Ok(LinearSubspace::span_matrices(&mats))
}

/// The rank-one matrix `ρ(σ(p, q), k)` in `Z1 ∩ Z2`.
pub fn intersection_point(p: &Vec2, q: &Vec2, k: &Vec4) -> Result<ProjMatrix> {
    if !nonzero(p) || !nonzero(q) || !nonzero(k) {
        return Err(invalid("p, q and k must be nonzero"));
    }
    ProjMatrix::new(outer(&segre_point(p, q), k))
}

/// Tangent space to `Z1 ∩ Z2 ≅ Q x P^3` at `ρ(σ(p, q), k)`, from the
/// trilinear lift `(p, q, k) ↦ σ(p, q) k^T` varied one argument at a time.
pub fn tangent_c1(p: &Vec2, q: &Vec2, k: &Vec4) -> Result<LinearSubspace> {
    if !nonzero(p) || !nonzero(q) || !nonzero(k) {
        return Err(invalid("p, q and k must be nonzero"));
    }
    let mut mats = Vec::with_capacity(8);
    for a in 0..2 {
        mats.push(outer(&segre_point(&unit2(a), q), k));
        mats.push(outer(&segre_point(p, &unit2(a)), k));
    }
    for c in 0..4 {
        mats.push(outer(&segre_point(p, q), &unit4(c)));
    }
    Ok(LinearSubspace::span_matrices(&mats))
}

/// The two tangent spaces to `Z1` and `Z2` at `ρ(σ(p, q), k)`.
pub fn component_tangents(
    p: &Vec2,
    q: &Vec2,
    k: &Vec4,
) -> Result<(LinearSubspace, LinearSubspace)> {
    let t1 = tangent_z(Component::Z1, p, &rank_one_2x4(q, k))?;
    let t2 = tangent_z(Component::Z2, q, &rank_one_2x4(p, k))?;
    Ok((t1, t2))
}

/// Whether `t1 ∩ t2 = tc`.
pub fn intersection_matches(
    t1: &LinearSubspace,
    t2: &LinearSubspace,
    tc: &LinearSubspace,
) -> bool {
    t1.intersect(t2).same_as(tc)
}

/// `T_φ Z1 ∩ T_φ Z2 = T_φ (Z1 ∩ Z2)` at `φ = ρ(σ(p, q), k)`.
pub fn verify_intersection_tangents(p: &Vec2, q: &Vec2, k: &Vec4) -> Result<bool> {
    let (t1, t2) = component_tangents(p, q, k)?;
    Ok(intersection_matches(&t1, &t2, &tangent_c1(p, q, k)?))
}

/// Outcome of the rank check on the bundle of common tangents over `Z1 ∩ Z2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankGCheck {
    /// Linear dimension of the span of point-condition gradients.
    pub gradient_dim: usize,
    /// Linear dimension of `∩_q T_φ P_q`.
    pub common_tangent_dim: usize,
    /// Whether `T_φ (Z1 ∩ Z2)` lies in every `T_φ P_q`.
    pub contains_c1_tangent: bool,
}

impl RankGCheck {
    pub const EXPECTED_GRADIENT_DIM: usize = 4;

    /// Projective dimension of the common tangent space.
    pub fn projective_rank(&self) -> isize {
        self.common_tangent_dim as isize - 1
    }

    pub fn passed(&self) -> bool {
        self.gradient_dim == Self::EXPECTED_GRADIENT_DIM && self.contains_c1_tangent
    }
}

pub fn rank_g(p: &Vec2, q: &Vec2, k: &Vec4) -> Result<RankGCheck> {
    let phi = intersection_point(p, q, k)?;
    let grads = gradient_span(&phi);
    let common = grads.annihilator();
    Ok(RankGCheck {
        gradient_dim: grads.dim(),
        common_tangent_dim: common.dim(),
        contains_c1_tangent: common.contains_subspace(&tangent_c1(p, q, k)?),
    })
}

pub fn verify_rank_g(p: &Vec2, q: &Vec2, k: &Vec4) -> Result<bool> {
    Ok(rank_g(p, q, k)?.passed())
}

/// `E_00 = ρ(σ((1:0), (1:0)), e_0)`, the rank-one normal form.
pub fn rank_one_normal_form() -> (Vec2, Vec2, Vec4) {
    (unit2(0), unit2(0), unit4(0))
}

/// `p = (1:0)`, `xi` with rows `e_0, e_1`: the rank-two normal form on `Z1 \ Z2`.
pub fn rank_two_normal_form() -> (Vec2, Mat2x4) {
    (unit2(0), [unit4(0), unit4(1)])
}

/// The point `E_22 ∈ Z1 ∩ Z2` at which the tangent spaces are coordinate subspaces.
pub fn canonical_intersection_point() -> (Vec2, Vec2, Vec4) {
    (unit2(1), unit2(0), unit4(2))
}

/// Expected coordinate descriptions at [`canonical_intersection_point`].
pub const CANONICAL_Z1_VANISHING: [(usize, usize); 7] =
    [(0, 0), (0, 1), (0, 3), (1, 0), (1, 1), (1, 2), (1, 3)];
pub const CANONICAL_Z2_VANISHING: [(usize, usize); 7] =
    [(1, 0), (1, 1), (1, 2), (1, 3), (3, 0), (3, 1), (3, 3)];
pub const CANONICAL_C1_VANISHING: [(usize, usize); 10] = [
    (0, 0),
    (0, 1),
    (0, 3),
    (1, 0),
    (1, 1),
    (1, 2),
    (1, 3),
    (3, 0),
    (3, 1),
    (3, 3),
];

/// `{a_20 - a_31, a_21, a_22, a_23, a_30, a_32, a_33}` as functionals.
pub fn rank_two_expected_generators() -> LinearSubspace {
    let mut first = quadric::unit_mat4(2, 0);
    first[3][1] = -Rational::one();
    let mut mats = vec![first];
    for (i, j) in [(2, 1), (2, 2), (2, 3), (3, 0), (3, 2), (3, 3)] {
        mats.push(quadric::unit_mat4(i, j));
    }
    LinearSubspace::span_matrices(&mats)
}

/// One named check in a [`TangentReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: usize,
    pub total: usize,
}

impl CheckOutcome {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentReport {
    pub seed: u64,
    pub samples: usize,
    pub checks: Vec<CheckOutcome>,
}

impl TangentReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::ok)
    }
}

fn tally(name: &str, results: impl IntoIterator<Item = bool>) -> CheckOutcome {
    let mut passed = 0;
    let mut total = 0;
    for r in results {
        total += 1;
        passed += r as usize;
    }
    CheckOutcome {
        name: name.to_string(),
        passed,
        total,
    }
}

/// Runs every tangent-space check at the canonical points and at `samples`
/// seeded random rational points.
pub fn verify_tangents(seed: u64, samples: usize) -> Result<TangentReport> {
    let mut rng = RationalSampler::new(seed);
    let mut checks = Vec::new();

    let (p, q, k) = rank_one_normal_form();
    checks.push(tally("rank_g_canonical", [verify_rank_g(&p, &q, &k)?]));

    let points: Vec<(Vec2, Vec2, Vec4)> = (0..samples)
        .map(|_| (rng.vec2(), rng.vec2(), rng.vec4()))
        .collect();
    checks.push(tally(
        "rank_g_random",
        points
            .iter()
            .map(|(p, q, k)| verify_rank_g(p, q, k))
            .collect::<Result<Vec<_>>>()?,
    ));

    let (p2, xi2) = rank_two_normal_form();
    let phi2 = quadric::sigma1(&p2, &xi2)?;
    let grads2 = gradient_span(&phi2);
    checks.push(tally(
        "rank_two_gradient_span",
        [grads2.dim() == 7 && grads2.same_as(&rank_two_expected_generators())],
    ));

    let (cp, cq, ck) = canonical_intersection_point();
    let (t1, t2) = component_tangents(&cp, &cq, &ck)?;
    let tc = tangent_c1(&cp, &cq, &ck)?;
    checks.push(tally(
        "canonical_coordinate_tangents",
        [
            t1.same_as(&LinearSubspace::coordinate_vanishing(&CANONICAL_Z1_VANISHING)),
            t2.same_as(&LinearSubspace::coordinate_vanishing(&CANONICAL_Z2_VANISHING)),
            tc.same_as(&LinearSubspace::coordinate_vanishing(&CANONICAL_C1_VANISHING)),
        ],
    ));
    checks.push(tally(
        "intersection_tangents_canonical",
        [intersection_matches(&t1, &t2, &tc)],
    ));
    checks.push(tally(
        "intersection_tangents_random",
        points
            .iter()
            .map(|(p, q, k)| verify_intersection_tangents(p, q, k))
            .collect::<Result<Vec<_>>>()?,
    ));

    let mut z_dims = Vec::new();
    let mut z_in_common = Vec::new();
    let mut members = Vec::new();
    for _ in 0..samples {
        let p = rng.vec2();
        let xi = rng.mat2x4();
        for (component, phi) in [
            (Component::Z1, quadric::sigma1(&p, &xi)?),
            (Component::Z2, quadric::sigma2(&p, &xi)?),
        ] {
            let tz = tangent_z(component, &p, &xi)?;
            z_dims.push(tz.dim() == 9 && tz.contains_matrix(phi.entries()));
            z_in_common.push(common_tangent(&phi).contains_subspace(&tz));
            members.push(quadric::base_scheme_member(&phi));
        }
    }
    checks.push(tally("tangent_z_dimension", z_dims));
    checks.push(tally("tangent_z_in_common_tangent", z_in_common));
    checks.push(tally("base_scheme_membership", members));

    // Away from the kernel, <∇s_q(φ), ψ> = ∇f(φq)·(ψq) and the gradient is nonzero.
    let gram = QuadricGram::canonical();
    let mut pointwise = Vec::new();
    for _ in 0..samples {
        let Ok(phi) = ProjMatrix::new(rng.mat4()) else {
            continue;
        };
        let qv = rng.vec4();
        let psi = rng.mat4();
        let image = phi.apply(&qv);
        if !nonzero(&image) {
            continue;
        }
        let grad = gram.point_condition_gradient(&phi, &qv)?;
        let psi_q = quadric::mat_vec(&psi, &qv);
        let lhs = pairing(&grad, &psi);
        let rhs = quadric::dot(&gram.gradient(&image), &psi_q);
        pointwise.push(lhs == rhs && nonzero(&flatten(&grad)));
    }
    checks.push(tally("point_condition_tangent", pointwise));

    Ok(TangentReport {
        seed,
        samples,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn rank_one_gradient_span() {
        let phi = ProjMatrix::new(quadric::unit_mat4(0, 0)).unwrap();
        let g = gradient_span(&phi);
        assert_eq!(g.dim(), 4);
        let row3 = LinearSubspace::span_matrices(&(0..4).map(|j| quadric::unit_mat4(3, j)).collect::<Vec<_>>());
        assert!(g.same_as(&row3));
        let common = common_tangent(&phi);
        assert_eq!(common.dim(), 12);
        assert_eq!(common.projective_dim(), 11);
    }

    #[test]
    fn rank_two_gradient_span_generators() {
        let (p, xi) = rank_two_normal_form();
        let g = gradient_span(&quadric::sigma1(&p, &xi).unwrap());
        assert_eq!(g.dim(), 7);
        assert!(g.same_as(&rank_two_expected_generators()));
    }

    #[test]
    fn identity_gradient_span_is_symmetric_forms() {
        // ψ ↦ q^T (2Mψ) q sees exactly the symmetric part of Mψ; M is invertible.
        assert_eq!(gradient_span(&ProjMatrix::identity()).dim(), 10);
    }

    #[test]
    fn canonical_tangent_spaces() {
        let (p, qq, k) = canonical_intersection_point();
        let phi = intersection_point(&p, &qq, &k).unwrap();
        assert_eq!(phi.entries(), &quadric::unit_mat4(2, 2));
        let (t1, t2) = component_tangents(&p, &qq, &k).unwrap();
        assert!(t1.same_as(&LinearSubspace::coordinate_vanishing(&CANONICAL_Z1_VANISHING)));
        assert!(t2.same_as(&LinearSubspace::coordinate_vanishing(&CANONICAL_Z2_VANISHING)));
        let tc = tangent_c1(&p, &qq, &k).unwrap();
        assert!(tc.same_as(&LinearSubspace::coordinate_vanishing(&CANONICAL_C1_VANISHING)));
        assert_eq!(tc.dim(), 6);
        assert!(verify_intersection_tangents(&p, &qq, &k).unwrap());
    }

    #[test]
    fn tangent_z_contains_point() {
        let p = [q(3), q(-2)];
        let xi = [[q(1), q(0), q(2), q(-1)], [q(0), q(5), q(1), q(1)]];
        for (c, phi) in [
            (Component::Z1, quadric::sigma1(&p, &xi).unwrap()),
            (Component::Z2, quadric::sigma2(&p, &xi).unwrap()),
        ] {
            let t = tangent_z(c, &p, &xi).unwrap();
            assert_eq!(t.dim(), 9);
            assert_eq!(t.projective_dim(), 8);
            assert!(t.contains_matrix(phi.entries()));
        }
        assert!(tangent_z(Component::Z1, &[q(0), q(0)], &xi).is_err());
    }

    #[test]
    fn c1_tangent_sits_in_both_components() {
        let (p, qq, k) = ([q(1), q(2)], [q(-3), q(1)], [q(1), q(0), q(4), q(-2)]);
        let (t1, t2) = component_tangents(&p, &qq, &k).unwrap();
        let tc = tangent_c1(&p, &qq, &k).unwrap();
        assert!(t1.contains_subspace(&tc));
        assert!(t2.contains_subspace(&tc));
        assert!(tangent_c1(&p, &qq, &[q(0), q(0), q(0), q(0)]).is_err());
    }

    #[test]
    fn rank_g_at_normal_form() {
        let (p, qq, k) = rank_one_normal_form();
        let check = rank_g(&p, &qq, &k).unwrap();
        assert!(check.passed());
        assert_eq!(check.projective_rank(), 11);
    }

    #[test]
    fn perturbed_basis_is_detected() {
        let (p, qq, k) = canonical_intersection_point();
        let (t1, t2) = component_tangents(&p, &qq, &k).unwrap();
        let tc = tangent_c1(&p, &qq, &k).unwrap();
        let mut basis = t1.basis().to_vec();
        basis[0] = (1..=16).map(|x| q(x * x - 7)).collect();
        let perturbed = LinearSubspace::span(MATRIX_DIM, &basis);
        assert!(!intersection_matches(&perturbed, &t2, &tc));
    }

    #[test]
    fn subspace_basics() {
        let v = |x: [i64; 3]| x.map(q).to_vec();
        assert!(LinearSubspace::from_basis(3, vec![v([1, 0, 0]), v([2, 0, 0])]).is_err());
        let a = LinearSubspace::from_basis(3, vec![v([1, 0, 0]), v([0, 1, 0])]).unwrap();
        let b = LinearSubspace::from_basis(3, vec![v([0, 1, 0]), v([0, 0, 1])]).unwrap();
        let i = a.intersect(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&v([0, 7, 0])));
        assert_eq!(a.annihilator().dim(), 1);
        assert!(a.annihilator().contains(&v([0, 0, 1])));
        assert_eq!(LinearSubspace::span(3, &[]).projective_dim(), -1);
    }

    #[test]
    fn report_passes() {
        let report = verify_tangents(11, 5).unwrap();
        for c in &report.checks {
            assert!(c.ok(), "{c:?}");
        }
        assert!(report.all_passed());
    }
}
