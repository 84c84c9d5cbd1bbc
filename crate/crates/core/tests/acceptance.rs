//! Acceptance suite. Every check is exact. Prints one line per criterion and
//! exits nonzero if any fails.

use std::process::ExitCode;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use quadric_predegree::cli::run;
use quadric_predegree::predegree::{deg_po, deg_so, predegree_coefficient};
use quadric_predegree::quadric::{
    base_scheme_member, doubled_segre_class, sigma1, sigma2, table1_row, table2, Coefficient,
    ProjMatrix,
};
use quadric_predegree::sampling::RationalSampler;
use quadric_predegree::segre::{normal_inverse_chern, segre_class_pushforward};
use quadric_predegree::tangent::{
    canonical_intersection_point, gradient_span, rank_one_normal_form, rank_two_expected_generators,
    rank_two_normal_form, verify_intersection_tangents, verify_rank_g,
};
use quadric_predegree::{ChowClass, ProductSpace, Rational};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn expect<T: PartialEq + std::fmt::Debug>(got: T, want: T) -> Check {
    if got == want {
        Ok(())
    } else {
        Err(format!("got {got:?}, expected {want:?}"))
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn power_class(n: usize, coeffs: &[(usize, i64)]) -> ChowClass {
    let p = ProductSpace::projective(n);
    let mut v = vec![Rational::zero(); n + 1];
    for &(k, c) in coeffs {
        v[k] = Rational::from_integer(c.into());
    }
    ChowClass::from_powers(&p, v).expect("valid powers")
}

fn quadric_polynomial() -> Check {
    let out = run(["predeg", "predegree", "quadric", "--n", "3", "--json"]);
    ensure(out.code == 0, || format!("exit code {}", out.code))?;
    let doc: serde_json::Value = serde_json::from_str(&out.stdout).map_err(err)?;
    let got: Vec<i64> = doc["result"]["coefficients"]
        .as_array()
        .ok_or("missing coefficients")?
        .iter()
        .map(|v| v.as_i64().ok_or("non-integer coefficient"))
        .collect::<Result<_, _>>()?;
    expect(got, vec![1, 2, 4, 8, 16, 32, 64, 112, 140, 40])
}

fn segre_golden() -> Check {
    let p = ProductSpace::new(vec![1, 7]).map_err(err)?;
    let s = segre_class_pushforward(&p).map_err(err)?;
    let want = power_class(
        15,
        &[
            (7, 8),
            (8, -70),
            (9, 344),
            (10, -1248),
            (11, 3720),
            (12, -9636),
            (13, 22440),
            (14, -48048),
            (15, 96096),
        ],
    );
    expect(s, want)
}

fn normal_expansion() -> Check {
    let p = ProductSpace::new(vec![1, 7]).map_err(err)?;
    let c = normal_inverse_chern(&p).map_err(err)?;
    // Displayed order: h2^b then h1*h2^b, for b = 0..=7.
    let want = ints(&[
        1, -14, -8, 128, 36, -648, -120, 2400, 330, -7260, -792, 19008, 1716, -44616, -3432, 96096,
    ]);
    let mut got = Vec::new();
    for b in 0..=7usize {
        got.push(c.coeff(&[0, b]));
        got.push(c.coeff(&[1, b]));
    }
    let got: Vec<BigInt> = got
        .into_iter()
        .map(|r| {
            if r.is_integer() {
                Ok(r.to_integer())
            } else {
                Err(format!("non-integral coefficient {r}"))
            }
        })
        .collect::<Result<_, _>>()?;
    expect(got, want)
}

fn group_degrees() -> Check {
    let so = (2..=5).map(deg_so).collect::<Result<Vec<_>, _>>().map_err(err)?;
    let po = (2..=5).map(deg_po).collect::<Result<Vec<_>, _>>().map_err(err)?;
    expect(&so, &ints(&[2, 8, 40, 384]))?;
    expect(po, so)
}

fn table_one() -> Check {
    let expected = [(1, 2, 1, 1), (2, 5, 3, 4), (3, 9, 8, 6), (4, 14, 12, 11)];
    for (n, dim_forms, dim_component, last_bezout) in expected {
        let row = table1_row(n).map_err(err)?;
        expect(
            (row.dim_forms, row.dim_component),
            (dim_forms, dim_component),
        )
        .map_err(|e| format!("n = {n}: {e}"))?;
        for i in 0..=last_bezout {
            expect(
                &row.coefficients[i],
                &Coefficient::Known(BigInt::one() << i),
            )
            .map_err(|e| format!("n = {n}, a_{i}: {e}"))?;
        }
        ensure(row.bezout_prefix() == last_bezout + 1, || {
            format!("n = {n}: 2^i pattern extends past i = {last_bezout}")
        })?;
    }
    Ok(())
}

fn table_two() -> Check {
    let got: Vec<BigInt> = table2().map_err(err)?.into_iter().map(|(_, c)| c).collect();
    expect(got, ints(&[1, 2, 4, 8, 16, 32, 64, 112, 140, 1]))
}

fn bezout_empty_base() -> Check {
    let zero = ChowClass::zero(&ProductSpace::projective(15));
    for i in 0..=15 {
        let e = predegree_coefficient(15, 2, &zero, i).map_err(err)?;
        expect(e, BigInt::one() << i).map_err(|m| format!("i = {i}: {m}"))?;
    }
    Ok(())
}

fn truncation_insensitivity() -> Check {
    let s = doubled_segre_class().map_err(err)?;
    let p = ProductSpace::projective(15);
    let mut rng = RationalSampler::new(0x5eed);
    for i in 0..=9 {
        let base = predegree_coefficient(15, 2, &s, i).map_err(err)?;
        for trial in 0..100 {
            let t: Vec<Rational> = (0..=15)
                .map(|k| if k > i { rng.rational() } else { Rational::zero() })
                .collect();
            let t = ChowClass::from_powers(&p, t).map_err(err)?;
            let e = predegree_coefficient(15, 2, &s.add(&t).map_err(err)?, i).map_err(err)?;
            expect(&e, &base).map_err(|m| format!("i = {i}, trial {trial}: {m}"))?;
        }
    }
    Ok(())
}

fn hypersurface_oracle() -> Check {
    let p = ProductSpace::new(vec![1, 1]).map_err(err)?;
    let s = segre_class_pushforward(&p).map_err(err)?;
    let golden = power_class(3, &[(1, 2), (2, -4), (3, 8)]);
    expect(&s, &golden)?;
    let h = ChowClass::generator(&ProductSpace::projective(3), 0).map_err(err)?;
    let two = Rational::from_integer(2.into());
    let unit = ChowClass::one(&ProductSpace::projective(3))
        .add(&h.scale(&two))
        .map_err(err)?;
    let oracle = unit.invert_unit().map_err(err)?.mul(&h.scale(&two)).map_err(err)?;
    expect(oracle, golden)
}

fn tangent_suite() -> Check {
    let mut rng = RationalSampler::new(2024);
    let (p, q, k) = rank_one_normal_form();
    ensure(verify_rank_g(&p, &q, &k).map_err(err)?, || {
        "rank check fails at the canonical rank-1 point".into()
    })?;
    let (cp, cq, ck) = canonical_intersection_point();
    ensure(verify_rank_g(&cp, &cq, &ck).map_err(err)?, || {
        "rank check fails at the canonical intersection point".into()
    })?;
    for s in 0..20 {
        let (p, q, k) = (rng.vec2(), rng.vec2(), rng.vec4());
        ensure(verify_rank_g(&p, &q, &k).map_err(err)?, || {
            format!("rank check fails at random point {s}")
        })?;
    }

    let (p2, xi2) = rank_two_normal_form();
    let span = gradient_span(&sigma1(&p2, &xi2).map_err(err)?);
    expect(span.dim(), 7).map_err(|m| format!("rank-2 gradient span: {m}"))?;
    ensure(span.same_as(&rank_two_expected_generators()), || {
        "rank-2 gradient span differs from the expected generators".into()
    })?;

    ensure(verify_intersection_tangents(&cp, &cq, &ck).map_err(err)?, || {
        "intersection tangents fail at the canonical point".into()
    })?;
    for s in 0..20 {
        let (p, q, k) = (rng.vec2(), rng.vec2(), rng.vec4());
        ensure(verify_intersection_tangents(&p, &q, &k).map_err(err)?, || {
            format!("intersection tangents fail at random point {s}")
        })?;
    }
    Ok(())
}

fn membership() -> Check {
    let mut rng = RationalSampler::new(11);
    for s in 0..100 {
        let p = rng.vec2();
        let xi = rng.mat2x4();
        for (name, phi) in [("sigma1", sigma1(&p, &xi)), ("sigma2", sigma2(&p, &xi))] {
            let phi = phi.map_err(err)?;
            ensure(base_scheme_member(&phi), || format!("{name} image {s} is not a member"))?;
        }
    }
    ensure(!base_scheme_member(&ProjMatrix::identity()), || {
        "identity is reported as a member".into()
    })
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("quadric surface predegree polynomial", quadric_polynomial),
        ("Segre class of P^1 x P^7 in P^15", segre_golden),
        ("inverse Chern class of the normal bundle", normal_expansion),
        ("degrees of SO(m) and PO(m), m = 2..5", group_degrees),
        ("quadric table dimensions and 2^i prefixes", table_one),
        ("translate counts for the quadric surface", table_two),
        ("empty base locus gives 2^i", bezout_empty_base),
        ("high-codimension classes do not change e_i", truncation_insensitivity),
        ("quadric surface Segre class against 2H/(1+2H)", hypersurface_oracle),
        ("tangent space and gradient rank checks", tangent_suite),
        ("sigma images lie in the base locus", membership),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("PASS {:>2} {name}", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", n + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
