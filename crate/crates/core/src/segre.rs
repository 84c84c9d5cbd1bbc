//! Segre embeddings `P^{n_1} x ... x P^{n_r} -> P^m` and the Segre classes of their images.

use num_bigint::BigInt;
use num_traits::One;

use crate::chow::{ChowClass, ProductSpace};
use crate::error::{invalid, Error, Result};
use crate::Rational;

/// Dimension `m = prod (n_i + 1) - 1` of the target of the Segre embedding.
pub fn ambient_dim(p: &ProductSpace) -> usize {
    p.factor_dims().iter().map(|n| n + 1).product::<usize>() - 1
}

/// `(sum d_i)! / prod d_i!`, computed as a product of binomials.
pub fn multinomial(parts: &[usize]) -> BigInt {
    let mut acc = BigInt::one();
    let mut running = 0u64;
    for &d in parts {
        running += d as u64;
        acc *= crate::chow::binomial(running, d as u64);
    }
    acc
}

/// Pushforward of `h^exps ∩ [Z]` along the Segre embedding, as `coeff * H^power`.
///
/// `h^exps ∩ [Z]` is the class of a product of linear subspaces of dimensions
/// `d_i = n_i - exps_i`; its image has degree `(sum d_i)! / prod d_i!` and
/// codimension `m - sum d_i`.
pub fn pushforward_monomial(p: &ProductSpace, exps: &[usize]) -> Result<(BigInt, usize)> {
    if !p.admits(exps) {
        return Err(Error::ExponentOutOfRange {
            space: p.clone(),
            exponents: exps.to_vec(),
        });
    }
    let dims: Vec<usize> = p
        .factor_dims()
        .iter()
        .zip(exps)
        .map(|(n, a)| n - a)
        .collect();
    let power = ambient_dim(p) - dims.iter().sum::<usize>();
    Ok((multinomial(&dims), power))
}

/// Term-by-term pushforward of a class on `p` to `P^m`.
pub fn pushforward_class(p: &ProductSpace, a: &ChowClass) -> Result<ChowClass> {
    if a.ambient() != p {
        return Err(Error::AmbientMismatch {
            left: p.clone(),
            right: a.ambient().clone(),
        });
    }
    let target = ProductSpace::projective(ambient_dim(p));
    let mut coeffs = vec![Rational::from_integer(0.into()); ambient_dim(p) + 1];
    for (exps, c) in a.terms() {
        let (mult, power) = pushforward_monomial(p, exps)?;
        coeffs[power] += c * Rational::from_integer(mult);
    }
    ChowClass::from_powers(&target, coeffs)
}

/// `c(N)^{-1} = prod (1 + h_i)^{n_i + 1} / (1 + sum h_i)^{m + 1}` for the normal
/// bundle of the Segre image.
pub fn normal_inverse_chern(p: &ProductSpace) -> Result<ChowClass> {
    if p.num_factors() < 2 {
        return Err(invalid("a Segre embedding needs at least two factors"));
    }
    let one = ChowClass::one(p);
    let mut numerator = one.clone();
    let mut hyperplane = one.clone();
    for (i, n) in p.factor_dims().iter().enumerate() {
        let h = ChowClass::generator(p, i)?;
        numerator = numerator.mul(&one.add(&h)?.pow(n + 1))?;
        hyperplane = hyperplane.add(&h)?;
    }
    let denominator = hyperplane.pow(ambient_dim(p) + 1);
    numerator.mul(&denominator.invert_unit()?)
}

/// Pushforward to `P^m` of the Segre class `s(Z, P^m) = c(N)^{-1} ∩ [Z]`.
pub fn segre_class_pushforward(p: &ProductSpace) -> Result<ChowClass> {
    pushforward_class(p, &normal_inverse_chern(p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::binomial;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn space(d: &[usize]) -> ProductSpace {
        ProductSpace::new(d.to_vec()).unwrap()
    }

    #[test]
    fn ambient_dims() {
        assert_eq!(ambient_dim(&space(&[1, 7])), 15);
        assert_eq!(ambient_dim(&space(&[1, 1])), 3);
        assert_eq!(ambient_dim(&space(&[3, 3])), 15);
    }

    #[test]
    fn monomial_pushforward_matches_binomial_table() {
        let p = space(&[1, 7]);
        assert_eq!(pushforward_monomial(&p, &[0, 0]).unwrap(), (BigInt::from(8), 7));
        for n in 0..=1usize {
            for m in 0..=7usize {
                let expected = binomial((8 - n - m) as u64, (7 - m) as u64);
                assert_eq!(
                    pushforward_monomial(&p, &[n, m]).unwrap(),
                    (expected, 7 + n + m)
                );
            }
        }
        assert_eq!(
            pushforward_monomial(&space(&[1, 1]), &[1, 1]).unwrap(),
            (BigInt::from(1), 3)
        );
    }

    #[test]
    fn monomial_out_of_range() {
        let err = pushforward_monomial(&space(&[1, 7]), &[2, 0]).unwrap_err();
        assert!(matches!(err, Error::ExponentOutOfRange { .. }));
    }

    #[test]
    fn quadric_surface_pushforward() {
        let p = space(&[1, 1]);
        let a = ChowClass::from_terms(
            &p,
            vec![
                (vec![0, 0], q(1)),
                (vec![1, 0], q(-2)),
                (vec![0, 1], q(-2)),
                (vec![1, 1], q(8)),
            ],
        )
        .unwrap();
        let pushed = pushforward_class(&p, &a).unwrap();
        assert_eq!(pushed.power_coeffs().unwrap(), [0, 2, -4, 8].map(q));
    }

    #[test]
    fn linear_part_pushforward() {
        let p = space(&[1, 7]);
        let a = ChowClass::from_terms(&p, vec![(vec![1, 0], q(-14)), (vec![0, 1], q(-8))]).unwrap();
        let pushed = pushforward_class(&p, &a).unwrap();
        assert_eq!(pushed.coeff(&[8]), q(-70));
        assert_eq!(pushed.num_terms(), 1);
        assert!(pushforward_class(&p, &ChowClass::zero(&p)).unwrap().is_zero());
    }

    #[test]
    fn pushforward_rejects_wrong_ambient() {
        let c = ChowClass::one(&space(&[1, 1]));
        assert!(pushforward_class(&space(&[1, 7]), &c).is_err());
    }

    #[test]
    fn normal_chern_of_quadric_surface() {
        let p = space(&[1, 1]);
        let expected = ChowClass::from_terms(
            &p,
            vec![
                (vec![0, 0], q(1)),
                (vec![1, 0], q(-2)),
                (vec![0, 1], q(-2)),
                (vec![1, 1], q(8)),
            ],
        )
        .unwrap();
        assert_eq!(normal_inverse_chern(&p).unwrap(), expected);
    }

    #[test]
    fn normal_chern_needs_two_factors() {
        assert!(normal_inverse_chern(&space(&[3])).is_err());
        assert!(segre_class_pushforward(&space(&[3])).is_err());
    }

    #[test]
    fn segre_class_p1_p7() {
        let s = segre_class_pushforward(&space(&[1, 7])).unwrap();
        let expected = [
            0, 0, 0, 0, 0, 0, 0, 8, -70, 344, -1248, 3720, -9636, 22440, -48048, 96096,
        ];
        assert_eq!(s.power_coeffs().unwrap(), expected.map(q));
    }

    #[test]
    fn leading_term_is_segre_degree() {
        for dims in [vec![1, 1], vec![1, 2], vec![2, 2], vec![1, 1, 1], vec![3, 3]] {
            let p = ProductSpace::new(dims.clone()).unwrap();
            let s = segre_class_pushforward(&p).unwrap();
            let codim = ambient_dim(&p) - p.total_dim();
            assert_eq!(s.min_codim(), Some(codim), "{dims:?}");
            assert_eq!(
                s.coeff(&[codim]),
                Rational::from_integer(multinomial(&dims)),
                "{dims:?}"
            );
        }
    }
}
