//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use elliott_core::classify::{
    compare_specs, elliott_compare, family_report, unipotent_invariants, validate_witness,
    CompareVerdict, ConjugacyVerdict, FlipCheck,
};
use elliott_core::crossed::rouhani::{MAX_ORDER, SERIES_TERMS};
use elliott_core::crossed::{elliott, rouhani_parameters, winding_integral, ElliottInvariant};
use elliott_core::ktheory::TransformationSpec;
use elliott_core::par::{map, Exec};
use elliott_core::zlinalg::{cokernel, inverse_unimodular, is_unimodular, snf, FgAbGroup};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn torus(m: i64, n: i64) -> TransformationSpec {
    TransformationSpec::torus(&[m, n], &theta()).unwrap()
}

fn trace_rows(inv: &ElliottInvariant) -> Vec<String> {
    inv.trace.iter().map(ToString::to_string).collect()
}

fn expected_torsion(m: i64, n: i64) -> FgAbGroup {
    // Z/m ⊕ Z/n in canonical form: factors (gcd, lcm), units dropped
    let (g, l) = (m.gcd(&n), m.lcm(&n));
    let factors: Vec<BigInt> = [g, l]
        .into_iter()
        .filter(|&d| d > 1)
        .map(BigInt::from)
        .collect();
    FgAbGroup::new(0, factors).unwrap()
}

fn t3_grid() -> Outcome {
    let start = Instant::now();
    let cases: Vec<(i64, i64)> = (1..=12)
        .flat_map(|m| (1..=12).map(move |n| (m, n)))
        .collect();
    let results = map(Exec::default(), &cases, |&(m, n)| {
        elliott(&torus(m, n)).map_err(|e| e.to_string())
    });
    let elapsed = start.elapsed();
    for (&(m, n), inv) in cases.iter().zip(results) {
        let inv = inv?;
        let expect = FgAbGroup::free(4).direct_sum(&expected_torsion(m, n));
        ensure(inv.k0 == expect && inv.k1 == expect, || {
            format!(
                "({m},{n}): K0 = {}, K1 = {}, expected {expect}",
                inv.k0, inv.k1
            )
        })?;
        ensure(trace_rows(&inv) == ["1", "0", "theta", "0"], || {
            format!("({m},{n}): trace {:?}", trace_rows(&inv))
        })?;
        let mut unit = vec![BigInt::zero(); inv.k0.num_generators()];
        unit[0] = BigInt::one();
        ensure(inv.unit == unit && inv.k0_labels[0] == "eta1", || {
            format!("({m},{n}): unit {:?}", inv.unit)
        })?;
    }
    ensure(elapsed < Duration::from_secs(5), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("144 cases in {:.2}s", elapsed.as_secs_f64()))
}

fn swapped_pair() -> Outcome {
    let c =
        compare_specs(&torus(2, 3), &torus(3, 2), 5, Exec::default()).map_err(|e| e.to_string())?;
    let CompareVerdict::Isomorphic { witness } = &c.elliott else {
        return Err(format!("Elliott verdict {:?}", c.elliott));
    };
    ensure(validate_witness(&c.first, &c.second, witness), || {
        "witness failed validation".into()
    })?;
    let FlipCheck::Computed(ConjugacyVerdict::Distinct { separation }) = &c.flip else {
        return Err(format!("flip verdict {:?}", c.flip));
    };
    ensure(separation.to_string() == "ladder 2 vs 3", || {
        format!("separation {separation}")
    })?;
    Ok(format!(
        "Isomorphic (validated witness), Distinct ({separation})"
    ))
}

fn prime_family() -> Outcome {
    let r = family_report(&[2, 3, 5], &theta(), 5, Exec::default()).map_err(|e| e.to_string())?;
    ensure(r.specs.len() == 4 && r.pairs.len() == 6, || {
        "wrong family size".into()
    })?;
    for spec in &r.specs {
        let inv = elliott(spec).map_err(|e| e.to_string())?;
        let z30 = FgAbGroup::new(0, vec![BigInt::from(30)]).unwrap();
        ensure(inv.k0.torsion() == z30 && inv.k1.torsion() == z30, || {
            format!("{spec:?}: torsion {}", inv.k0.torsion())
        })?;
    }
    for (i, j, c) in &r.pairs {
        let CompareVerdict::Isomorphic { witness } = &c.elliott else {
            return Err(format!("pair ({i},{j}) not isomorphic: {:?}", c.elliott));
        };
        ensure(validate_witness(&c.first, &c.second, witness), || {
            format!("pair ({i},{j}) witness")
        })?;
        ensure(c.flip_distinct(), || {
            format!("pair ({i},{j}) flip {:?}", c.flip)
        })?;
    }
    Ok("4 members, torsion Z/30, 6 pairs Isomorphic + Distinct".into())
}

fn torus_vs_sphere() -> Outcome {
    let t = elliott(&torus(1, 1)).map_err(|e| e.to_string())?;
    let s = elliott(&TransformationSpec::sphere_circle(2, &theta()).unwrap())
        .map_err(|e| e.to_string())?;
    for inv in [&t, &s] {
        ensure(
            inv.k0 == FgAbGroup::free(4) && inv.k1 == FgAbGroup::free(4),
            || format!("{}: K0 {} K1 {}", inv.space, inv.k0, inv.k1),
        )?;
        ensure(trace_rows(inv) == ["1", "0", "theta", "0"], || {
            format!("trace {:?}", trace_rows(inv))
        })?;
    }
    let CompareVerdict::Isomorphic { witness } = elliott_compare(&t, &s) else {
        return Err("not isomorphic".into());
    };
    ensure(validate_witness(&t, &s, &witness), || "witness".into())?;
    Ok("Isomorphic, Z^4 / Z^4, trace (1, 0, theta, 0)".into())
}

fn odd_spheres() -> Outcome {
    let invs: Vec<ElliottInvariant> = [3usize, 5, 7]
        .iter()
        .map(|&d| {
            elliott(&TransformationSpec::sphere_circle(d, &theta()).unwrap())
                .map_err(|e| e.to_string())
        })
        .collect::<Result<_, _>>()?;
    for (i, a) in invs.iter().enumerate() {
        for b in &invs[i + 1..] {
            let CompareVerdict::Isomorphic { witness } = elliott_compare(a, b) else {
                return Err(format!("{} vs {} not isomorphic", a.space, b.space));
            };
            ensure(validate_witness(a, b, &witness), || "witness".into())?;
        }
    }
    Ok("3 pairs Isomorphic".into())
}

/// `[ker c : c(ker c²)]` by enumerating a box, for `c` with rank-1 kernel.
fn brute_ladder(m: i64, n: i64) -> Option<i64> {
    let c = |x: [i64; 3]| [m * x[1], n * x[2], 0];
    let mut ker = Vec::new();
    let mut image = Vec::new();
    for a in -2..=2 {
        for b in -2..=2 {
            for d in -2..=2 {
                let x = [a, b, d];
                if c(x) == [0, 0, 0] && x != [0, 0, 0] {
                    ker.push(x);
                }
                if c(c(x)) == [0, 0, 0] {
                    image.push(c(x));
                }
            }
        }
    }
    // the kernel is a line; its generator is the shortest enumerated vector
    let g = *ker
        .iter()
        .min_by_key(|x| x.iter().map(|v| v.abs()).sum::<i64>())?;
    let k = g.iter().position(|&v| v != 0)?;
    let multiples: Vec<i64> = image.iter().map(|y| y[k] / g[k]).collect();
    let idx = multiples.iter().fold(0i64, |acc, v| acc.gcd(v));
    (idx != 0).then_some(idx)
}

/// Free rank and torsion order of `Z³ / c²(Z³)` by counting `(Z/N)³`
/// quotients at two moduli.
fn brute_square_cokernel(m: i64, n: i64) -> (u32, u64) {
    let c2 = furstenberg(m, n).minus_identity().unwrap();
    let c2 = &c2 * &c2;
    let n1 = 60 * (m * n).abs();
    let (q1, q2) = (quotient_order_mod(&c2, n1), quotient_order_mod(&c2, 2 * n1));
    let free = (q2 / q1).trailing_zeros();
    (free, q1 / (n1 as u64).pow(free))
}

fn unipotent_oracle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut cases = 0;
    for m in (-10i64..=10).filter(|&v| v != 0) {
        for n in (-10i64..=10).filter(|&v| v != 0) {
            let a = furstenberg(m, n);
            let inv = unipotent_invariants(&a).map_err(|e| e.to_string())?;
            let ladder = inv.ladder_multiplier.as_ref().and_then(|v| v.to_i64());
            ensure(ladder == Some(m.abs()), || {
                format!("({m},{n}): ladder {ladder:?}")
            })?;
            ensure(brute_ladder(m, n) == Some(m.abs()), || {
                format!("({m},{n}): brute ladder")
            })?;
            let coker = inv.power_cokernel(2);
            let torsion = coker.torsion_order().to_u64().unwrap();
            ensure(
                torsion == (m * n).unsigned_abs() && coker.rank() == 2,
                || format!("({m},{n}): coker(c^2) = {coker}"),
            )?;
            ensure(brute_square_cokernel(m, n) == (2, torsion), || {
                format!("({m},{n}): brute coker {:?}", brute_square_cokernel(m, n))
            })?;
            for _ in 0..50 {
                let u = random_unimodular(&mut rng, 3, 3);
                let b = &(&u * &a) * &inverse_unimodular(&u).unwrap();
                ensure(unipotent_invariants(&b).unwrap() == inv, || {
                    format!("({m},{n}): conjugate by {u}")
                })?;
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} cases, 50 conjugations each"))
}

fn snf_suite() -> Outcome {
    let mut rng = StdRng::seed_from_u64(1000);
    for i in 0..1000 {
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let m = random_matrix(&mut rng, r, c, 9);
        let s = snf(&m);
        ensure(&(&s.u * &s.d) * &s.v == m, || {
            format!("#{i}: reconstruction of {m}")
        })?;
        ensure(&(&s.left * &m) * &s.right == s.d, || {
            format!("#{i}: left/right of {m}")
        })?;
        ensure(
            is_unimodular(&s.u).unwrap() && is_unimodular(&s.v).unwrap(),
            || format!("#{i}: unimodular"),
        )?;
        let f = s.invariant_factors();
        ensure(f.windows(2).all(|w| w[1].is_multiple_of(&w[0])), || {
            format!("#{i}: divisibility {f:?}")
        })?;
        ensure(f.iter().all(|d| d > &BigInt::zero()), || {
            format!("#{i}: sign")
        })?;
    }
    let mut checked = 0;
    for i in 0..1000 {
        let (r, c) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let m = random_matrix(&mut rng, r, c, 4);
        let g = cokernel(&m).group;
        for modulus in 2..=6 {
            let predicted = predicted_quotient_order(g.rank(), g.invariant_factors(), modulus);
            ensure(quotient_order_mod(&m, modulus) == predicted, || {
                format!("#{i}: Z^{r}/im({m}) mod {modulus}")
            })?;
        }
        ensure(
            snf(&m).invariant_factors() == determinantal_factors(&m),
            || format!("#{i}: minors of {m}"),
        )?;
        checked += 1;
    }
    Ok(format!(
        "1000 decompositions, {checked} cokernels enumerated"
    ))
}

/// `L_m = Σ_{n≥1} n^m / 2^n` via `L_m = Σ_{j<m} C(m,j) L'_j`, `L'_0 = 2`,
/// `L'_j = L_j`.
fn series_limits(max: u32) -> Vec<BigInt> {
    let mut l = vec![BigInt::one()];
    for m in 1..=max as usize {
        let mut total = BigInt::zero();
        let mut binom = BigInt::one();
        for (j, lj) in l.iter().enumerate().take(m) {
            let term = if j == 0 { BigInt::from(2) } else { lj.clone() };
            total += &binom * term;
            binom = binom * (m - j) / (j + 1);
        }
        l.push(total);
    }
    l
}

fn lacunary_parameters() -> Outcome {
    let p = rouhani_parameters(3).map_err(|e| e.to_string())?;
    ensure(p.nu == big(&[1, 4, 21]), || format!("nu = {:?}", p.nu))?;
    let theta3 = [1u32, 4, 21]
        .iter()
        .map(|&e| BigRational::new(BigInt::one(), BigInt::from(2).pow(e)))
        .fold(BigRational::zero(), |a, b| a + b);
    ensure(p.theta_partial == theta3, || {
        format!("theta_3 = {}", p.theta_partial)
    })?;
    ensure(
        p.theta_partial == BigRational::new(1179649.into(), 2097152.into()),
        || "theta_3 value".into(),
    )?;
    ensure(p.beta_bound_ok() && p.beta.len() == 3, || {
        "beta bound".into()
    })?;
    for b in &p.beta {
        if let Some((beta, bound)) = b.numeric {
            ensure(beta <= bound, || {
                format!("k = {}: |beta| = {beta} > {bound}", b.k)
            })?;
        }
    }
    let limits = series_limits(MAX_ORDER);
    let tol = BigRational::new(BigInt::one(), BigInt::from(1_000_000));
    for s in &p.derivative {
        let limit = BigRational::from_integer(limits[s.order as usize].clone());
        let last = &s.partials[SERIES_TERMS - 1];
        ensure(s.is_monotone(), || format!("m = {}: not monotone", s.order))?;
        ensure(last < &limit && &limit - last <= s.tail_bound, || {
            format!("m = {}: tail bound does not cover the limit", s.order)
        })?;
        ensure(s.tail_bound < tol, || {
            format!("m = {}: tail bound {}", s.order, s.tail_bound)
        })?;
    }
    let geometric = &p.derivative[0].partials[24];
    ensure(BigRational::one() - geometric < tol, || {
        "m = 0 by n = 25".into()
    })?;
    Ok(format!(
        "nu = (1, 4, 21), theta_3 = {}, tails < 1e-6 for m <= {MAX_ORDER}",
        p.theta_partial
    ))
}

fn winding_oracle() -> Outcome {
    let mut worst = 0.0f64;
    let cases: [(&[i64], &[i64]); 5] = [
        (&[2, 3], &[1, 0, 0, 0]),
        (&[2, 3], &[-2, 0, 0, 0]),
        (&[1, 1], &[3, 0, 0, 0]),
        (&[5, -7], &[1, 0, 0, 0]),
        (&[0, 4], &[2, 5, 0, 0]),
    ];
    for (exps, class) in cases {
        let spec = TransformationSpec::torus(exps, &theta()).unwrap();
        let class = big(class);
        let est = winding_integral(&spec, &class, 1_000_000, Exec::default())
            .map_err(|e| e.to_string())?;
        let exact =
            elliott_core::crossed::rotation_number(&class, &spec).map_err(|e| e.to_string())?;
        ensure(est.error < 1e-6, || {
            format!("{exps:?} {class:?}: {est:?} vs {exact}")
        })?;
        worst = worst.max(est.error);
    }
    Ok(format!("5 classes at 1e6 samples, max error {worst:.1e}"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("T^3 grid 1 <= m, n <= 12", t3_grid),
        ("exponents (2,3) vs (3,2)", swapped_pair),
        ("prime family {2,3,5}", prime_family),
        ("T^3 (1,1) vs S^2 x S^1", torus_vs_sphere),
        ("S^n x S^1 for n = 3, 5, 7", odd_spheres),
        ("unipotent similarity oracle", unipotent_oracle),
        ("Smith normal form suite", snf_suite),
        ("lacunary rotation parameters", lacunary_parameters),
        ("winding oracle", winding_oracle),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
