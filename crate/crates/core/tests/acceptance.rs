//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use nilcoh::automorphism::{act_on_params, pullback, Automorphism};
use nilcoh::cocycle::{cocycle_identity_holds, extract_params, g2_sigma, pairing, sigma_eval};
use nilcoh::extension::{check_universal_relations, omega_cocycle_holds, verify_k2_is_g32};
use nilcoh::simplicity::{
    is_simple, regular_by_matrix, regular_by_pairing, regular_central_subgroup, verify_certificate,
    Verdict,
};
use nilcoh::{
    random, CocycleParams, GroupElement, IntegerMatrix, IrrationalBasis, LatticeBasis, Pair,
    ParamIndex,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Option<u64>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn cohomology_dim() -> Outcome {
    for n in 2..=6usize {
        let out = Command::new(env!("CARGO_BIN_EXE_nilcoh"))
            .args(["cohomology-dim", &n.to_string()])
            .output()
            .map_err(|e| e.to_string())?;
        let got: usize = String::from_utf8_lossy(&out.stdout)
            .trim()
            .parse()
            .map_err(|e| format!("{e}"))?;
        let closed = (n + 1) * n * (n - 1) / 3;
        let summed: usize = (2..=n).map(|k| k * (k - 1)).sum();
        ensure(got == closed && got == summed, || {
            format!("n={n}: got {got}, expected {closed} / {summed}")
        })?;
    }
    Ok("2, 8, 20, 40, 70".into())
}

fn cocycle_law() -> Outcome {
    let mut rng = rng(2);
    for n in [2usize, 3, 4] {
        for _ in 0..1000 {
            let p = random::rational_params(&mut rng, n, 12);
            let r = random::element(&mut rng, n, 5);
            let s = random::element(&mut rng, n, 5);
            let t = random::element(&mut rng, n, 5);
            ensure(cocycle_identity_holds(&p, &r, &s, &t).unwrap(), || {
                format!("σ fails: n={n} r={r} s={s} t={t}")
            })?;
            ensure(omega_cocycle_holds(&r, &s, &t).unwrap(), || {
                format!("ω fails: n={n} r={r} s={s} t={t}")
            })?;
        }
    }
    Ok("3000 triples, σ and ω identities".into())
}

fn g2_cross_check() -> Outcome {
    let mut rng = rng(3);
    let basis = IrrationalBasis::new(["alpha"]).unwrap();
    let p = random::mixed_params(&mut rng, 2, &basis, 12);
    let (t1, t2) = (&p.values()[0], &p.values()[1]);
    let mut pts = Vec::new();
    for a in -2..=2i64 {
        for b in -2..=2i64 {
            for c in -2..=2i64 {
                pts.push(GroupElement::from_i64s(2, &[a, b, c]).unwrap());
            }
        }
    }
    let mut count = 0;
    for r in &pts {
        for s in &pts {
            ensure(
                g2_sigma(t1, t2, r, s).unwrap() == sigma_eval(&p, r, s).unwrap(),
                || format!("r={r} s={s}"),
            )?;
            count += 1;
        }
    }
    Ok(format!("{count} pairs, full box"))
}

fn regularity_equivalence() -> Outcome {
    let mut rng = rng(4);
    let (mut yes, mut no) = (0, 0);
    for n in [2usize, 3] {
        for case in 0..200 {
            let p = random::rational_params(&mut rng, n, 6);
            let s = if case % 2 == 0 {
                let lattice = regular_central_subgroup(&p).lattice;
                let mut v = vec![BigInt::from(0); lattice.dim()];
                for b in lattice.vectors() {
                    let c = BigInt::from(rng.gen_range(-3..=3i64));
                    for (x, y) in v.iter_mut().zip(b) {
                        *x += &c * y;
                    }
                }
                GroupElement::central_from(n, v).unwrap()
            } else {
                random::central_element(&mut rng, n, 6)
            };
            let a = regular_by_pairing(&p, &s).unwrap();
            let b = regular_by_matrix(&p, &s).unwrap();
            let c = (0..50).all(|_| {
                pairing(&p, &random::element(&mut rng, n, 5), &s)
                    .unwrap()
                    .is_integral()
            });
            ensure(a == b && b == c, || {
                format!("n={n} s={s}: pairing {a}, matrix {b}, sample {c}")
            })?;
            if a {
                yes += 1;
            } else {
                no += 1;
            }
        }
    }
    ensure(yes > 0 && no > 0, || {
        format!("one-sided sample: {yes} regular, {no} not")
    })?;
    Ok(format!("400 elements, {yes} regular / {no} not"))
}

fn half_third_example() -> Outcome {
    let rat = |s: &str| s.parse().unwrap();
    let p = CocycleParams::from_values(2, IrrationalBasis::empty(), vec![rat("1/2"), rat("1/3")])
        .unwrap();
    let sub = regular_central_subgroup(&p);
    let six = LatticeBasis::from_generators(1, vec![vec![BigInt::from(6)]]).unwrap();
    ensure(sub.lattice == six && sub.rank == 1, || {
        format!("S = {:?}", sub.lattice)
    })?;
    let cert = is_simple(&p);
    ensure(cert.verdict == Verdict::NotSimple, || "verdict".into())?;
    ensure(
        cert.witness == Some(GroupElement::from_i64s(2, &[0, 0, 6]).unwrap()),
        || format!("{:?}", cert.witness),
    )?;
    ensure(verify_certificate(&cert).unwrap().is_empty(), || {
        "certificate".into()
    })?;

    let basis = IrrationalBasis::new(["alpha"]).unwrap();
    let q = CocycleParams::from_values(2, basis, vec![rat("alpha"), rat("1/3")]).unwrap();
    let cert = is_simple(&q);
    ensure(
        cert.verdict == Verdict::Simple && cert.regular_basis.is_trivial(),
        || "alpha case".into(),
    )?;
    ensure(verify_certificate(&cert).unwrap().is_empty(), || {
        "alpha certificate".into()
    })?;
    Ok("6Z with witness 6·v12; (alpha, 1/3) simple".into())
}

fn over_12(q: &BigRational) -> i64 {
    (q * BigRational::from_integer(BigInt::from(12)))
        .to_integer()
        .to_i64()
        .unwrap()
}

fn lattice_oracle() -> Outcome {
    let mut rng = rng(6);
    let mut points = 0usize;
    for n in [2usize, 3] {
        for _ in 0..(if n == 2 { 20 } else { 3 }) {
            let p = random::rational_params(&mut rng, n, 4);
            let lattice = regular_central_subgroup(&p).lattice;
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|i| {
                    Pair::all(n)
                        .map(|c| over_12(p.get(ParamIndex::new(i, c)).rational_part()))
                        .collect()
                })
                .collect();
            let m = n * (n - 1) / 2;
            let mut s = vec![-24i64; m];
            loop {
                let brute = rows
                    .iter()
                    .all(|r| r.iter().zip(&s).map(|(a, b)| a * b).sum::<i64>() % 12 == 0);
                let big: Vec<BigInt> = s.iter().map(|&x| BigInt::from(x)).collect();
                ensure(lattice.contains(&big) == brute, || format!("n={n} s={s:?}"))?;
                points += 1;
                let Some(pos) = s.iter().position(|&x| x < 24) else {
                    break;
                };
                s[pos] += 1;
                s[..pos].iter_mut().for_each(|x| *x = -24);
            }
        }
    }
    Ok(format!("{points} box points"))
}

fn automorphism_action() -> Outcome {
    let mut rng = rng(7);
    let basis = IrrationalBasis::new(["alpha"]).unwrap();
    for n in [2usize, 3] {
        for _ in 0..50 {
            let a = random::unimodular(&mut rng, n, 10);
            let p = random::mixed_params(&mut rng, n, &basis, 12);
            let phi = Automorphism::lift(a.clone()).unwrap();
            let oracle = extract_params(n, &basis, |r, s| {
                sigma_eval(&p, &phi.apply(r)?, &phi.apply(s)?)
            })
            .unwrap();
            ensure(oracle == act_on_params(&a, &p).unwrap(), || {
                format!("n={n} A={a}")
            })?;
            let s = random::matrix(&mut rng, n, n * (n - 1) / 2, 4);
            let kernel = Automorphism::new(IntegerMatrix::identity(n), s).unwrap();
            ensure(pullback(&kernel, &p).unwrap() == p, || {
                format!("n={n}: A = I moved P")
            })?;
        }
    }
    Ok("100 matrices, T' = A T Ã^T".into())
}

fn universal_relations() -> Outcome {
    let mut rng = rng(8);
    let basis = IrrationalBasis::new(["alpha", "beta"]).unwrap();
    let p = random::mixed_params(&mut rng, 3, &basis, 12);
    let pts: Vec<_> = (0..100).map(|_| random::element(&mut rng, 3, 5)).collect();
    let report = check_universal_relations(&p, &pts).unwrap();
    let triple = report
        .checks
        .iter()
        .find(|c| c.name.starts_with("μ"))
        .ok_or("no triple check")?;
    ensure(triple.detail == "100 cases", || {
        format!("triple check ran {}", triple.detail)
    })?;
    ensure(report.passed, || {
        format!("{:?}", report.checks.iter().find(|c| !c.passed))
    })?;
    Ok(format!(
        "100 points, {} relation families",
        report.checks.len()
    ))
}

fn k2_verification() -> Outcome {
    let report = verify_k2_is_g32();
    ensure(report.passed, || {
        format!("{:?}", report.checks.iter().find(|c| !c.passed))
    })?;
    Ok(format!("{} relations", report.checks.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("cohomology dimension", cohomology_dim, Some(1)),
        ("cocycle law", cocycle_law, Some(10)),
        ("G(2) cross-check", g2_cross_check, None),
        ("σ-regularity equivalence", regularity_equivalence, None),
        ("(1/2, 1/3) example", half_third_example, None),
        ("lattice oracle", lattice_oracle, Some(60)),
        ("automorphism action", automorphism_action, None),
        ("universal relations", universal_relations, None),
        ("K(2) verification", k2_verification, Some(5)),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = f();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(secs)) = (&outcome, limit) {
            if elapsed > Duration::from_secs(*secs) {
                outcome = Err(format!("took {elapsed:.2?}, limit {secs} s"));
            }
        }
        match outcome {
            Ok(detail) => println!("PASS  {:>2}. {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2}. {name}: {why} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
