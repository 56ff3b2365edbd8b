//! The ten acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symrep::gmodule::GModule;
use symrep::identify::{
    check_local_equations, classify, coprimality_decompose, weight_decompose, IdentifyOptions,
    OperatorPair, Verdict,
};
use symrep::linalg::gf2::exhaustive_spin_oracle;
use symrep::linalg::Irreducibility;
use symrep::permgroup::{KleinFour, Perm};
use symrep::ring::Ring;
use symrep::standard::{
    build_exceptional, build_perm, build_rstd, build_ustd, outer_twist, ExceptionalTag,
};
use symrep::universe::{full_report, UniverseInstance};

const PRIMES: [u64; 4] = [2, 3, 5, 7];
const SEED: u64 = 0;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn gf(p: u64) -> Ring {
    Ring::prime_field(p).unwrap()
}

fn opts() -> IdentifyOptions {
    IdentifyOptions {
        seed: SEED,
        exhaustive: false,
    }
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn c1_dimensions() -> Outcome {
    let mut count = 0;
    for n in 3..=12 {
        for p in PRIMES {
            let d = build_rstd(n, &gf(p)).map_err(|e| e.to_string())?.dim();
            let expect = if (n as u64).is_multiple_of(p) {
                n - 2
            } else {
                n - 1
            };
            check(d == expect, || {
                format!("rstd({n},{p}) has d = {d}, expected {expect}")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} modules"))
}

fn c2_faithfulness() -> Outcome {
    for (n, p) in [(4, 2), (3, 3)] {
        let m = build_rstd(n, &gf(p)).unwrap();
        let f = m.faithfulness().unwrap();
        let w = f
            .witness
            .ok_or_else(|| format!("rstd({n},{p}): no witness"))?;
        check(
            !f.faithful && !w.is_identity() && m.act(&w).unwrap().is_identity(),
            || format!("rstd({n},{p}): witness {w} does not act trivially"),
        )?;
    }
    let mut count = 0;
    for n in 5..=12 {
        for p in PRIMES {
            let m = build_rstd(n, &gf(p)).unwrap();
            check(m.is_faithful().unwrap(), || {
                format!("rstd({n},{p}) not faithful")
            })?;
            count += 1;
        }
    }
    Ok(format!("2 kernels witnessed, {count} faithful"))
}

fn c3_irreducibility() -> Outcome {
    let mut count = 0;
    for n in 5..=12 {
        for p in PRIMES {
            let m = build_rstd(n, &gf(p)).unwrap();
            check(m.irreducibility(SEED).unwrap().is_irreducible(), || {
                format!("rstd({n},{p}) not certified")
            })?;
            let perm = build_perm(n, &gf(p)).unwrap();
            match perm.irreducibility(SEED).unwrap() {
                Irreducibility::Reducible(w) => check(
                    !w.is_zero() && !w.is_full() && perm.is_submodule(&w),
                    || format!("perm({n},{p}): witness is not a proper submodule"),
                )?,
                other => return Err(format!("perm({n},{p}): {other:?}")),
            }
            count += 1;
        }
    }
    Ok(format!(
        "{count} rstd irreducible, {count} perm reducible with witness"
    ))
}

fn rings_c4() -> Vec<Ring> {
    let mut r: Vec<Ring> = PRIMES.iter().map(|&p| gf(p)).collect();
    r.push(Ring::rational());
    r
}

fn c4_sym_round_trip() -> Outcome {
    let mut count = 0;
    for n in 7..=12 {
        for ring in rings_c4() {
            let m = build_rstd(n, &ring).unwrap();
            let r = classify(&m, &opts()).map_err(|e| format!("rstd({n},{ring}): {e}"))?;
            check(
                r.verdict == Verdict::StandardRstd && r.verify_intertwiner(&m),
                || {
                    format!(
                        "rstd({n},{ring}): {} (intertwiner ok: {})",
                        r.verdict,
                        r.verify_intertwiner(&m)
                    )
                },
            )?;
            count += 1;
            if ring.char_value() != Some(2) {
                let s = m.sign_twist().unwrap();
                let r = classify(&s, &opts()).map_err(|e| format!("sgn*rstd({n},{ring}): {e}"))?;
                check(
                    r.verdict == Verdict::SignTwistedRstd && r.verify_intertwiner(&s),
                    || format!("sgn*rstd({n},{ring}): {}", r.verdict),
                )?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} modules classified, intertwiners verified"))
}

fn c5_alt_round_trip() -> Outcome {
    let mut count = 0;
    for n in 7..=12 {
        for ring in rings_c4() {
            if ring.char_value() == Some(2) && n < 10 {
                continue;
            }
            let full = build_rstd(n, &ring).unwrap();
            let m = full.restrict_to_alt().unwrap();
            let r = classify(&m, &opts()).map_err(|e| format!("rstd({n},{ring})|Alt: {e}"))?;
            check(
                r.verdict == Verdict::StandardRstd && r.verify_intertwiner(&m),
                || format!("rstd({n},{ring})|Alt: {}", r.verdict),
            )?;
            let ext = r
                .extension
                .ok_or_else(|| format!("rstd({n},{ring})|Alt: no extension"))?;
            let twisted = full.sign_twist().unwrap();
            let t = Perm::transposition(n, 1, 2);
            let a = ext.act(&t).unwrap();
            let matches = (ext == full && a == full.act(&t).unwrap())
                || (ext == twisted && a == twisted.act(&t).unwrap());
            check(matches, || {
                format!("rstd({n},{ring})|Alt: extension differs from ± the original")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} Alt restrictions extended and matched"))
}

fn c6_outer() -> Outcome {
    let m = build_rstd(6, &gf(2)).unwrap();
    let r = classify(&m, &opts()).map_err(|e| e.to_string())?;
    check(
        r.verdict == Verdict::StandardRstd && r.verify_intertwiner(&m),
        || format!("untwisted: {}", r.verdict),
    )?;
    let o = outer_twist(&m).unwrap();
    let r = classify(&o, &opts()).map_err(|e| e.to_string())?;
    check(
        r.verdict == Verdict::OuterTwisted(Box::new(Verdict::StandardRstd))
            && r.verify_intertwiner(&o),
        || format!("twisted: {}", r.verdict),
    )?;
    Ok("OuterTwisted(StandardRstd) and StandardRstd".into())
}

fn c7_exceptional() -> Outcome {
    let cells = [
        (ExceptionalTag::Alt5Gf4Dim2, 5, 2),
        (ExceptionalTag::Alt5Gf5Dim3, 5, 3),
        (ExceptionalTag::Alt6Gf9AdjointDim3, 6, 3),
        (ExceptionalTag::Alt8Gf2NaturalDim4, 8, 4),
    ];
    for (tag, n, d) in cells {
        let m = build_exceptional(tag).map_err(|e| format!("{tag}: {e}"))?;
        check(m.n() == n && m.dim() == d, || {
            format!("{tag}: shape ({}, {})", m.n(), m.dim())
        })?;
        check(m.is_faithful().unwrap(), || format!("{tag}: not faithful"))?;
        check(m.irreducibility(SEED).unwrap().is_irreducible(), || {
            format!("{tag}: not irreducible")
        })?;
    }
    Ok("4 cells constructed and certified".into())
}

fn c8_alt9() -> Outcome {
    let m = build_rstd(9, &gf(2)).unwrap().restrict_to_alt().unwrap();
    check(m.dim() == 8, || format!("d = {}", m.dim()))?;
    check(m.is_faithful().unwrap(), || "not faithful".into())?;
    check(m.irreducibility(SEED).unwrap().is_irreducible(), || {
        "meataxe: not irreducible".into()
    })?;
    let spin = exhaustive_spin_oracle(m.images()).map_err(|e| e.to_string())?;
    check(spin.is_none(), || {
        "spin oracle found a proper submodule".into()
    })?;
    Ok("d = 8, 255 nonzero vectors spin to the whole space".into())
}

fn lemma_modules() -> Vec<GModule> {
    let mut out = Vec::new();
    for n in 5..=9 {
        for ring in rings_c4() {
            out.push(build_rstd(n, &ring).unwrap());
            out.push(build_ustd(n, &ring).unwrap());
            out.push(build_perm(n, &ring).unwrap());
        }
    }
    out
}

/// A product of disjoint cycles of prime length `len`.
fn random_prime_element(n: usize, len: usize, rng: &mut ChaCha8Rng) -> Perm {
    let mut pts: Vec<usize> = (1..=n).collect();
    for i in (1..pts.len()).rev() {
        pts.swap(i, rng.gen_range(0..=i));
    }
    let k = rng.gen_range(1..=n / len);
    let mut g = Perm::identity(n);
    for c in 0..k {
        g = g.compose(&Perm::cycle(n, &pts[c * len..(c + 1) * len]).unwrap());
    }
    g
}

fn c9_lemmas() -> Outcome {
    let ms = lemma_modules();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut pairs = 0;
    while pairs < 200 {
        let m = &ms[rng.gen_range(0..ms.len())];
        let len = [2usize, 3, 5, 7][rng.gen_range(0..4)];
        if len > m.n() || m.ring().char_value() == Some(len as u64) {
            continue;
        }
        let g = random_prime_element(m.n(), len, &mut rng);
        let (b, c) = coprimality_decompose(m, &g).map_err(|e| e.to_string())?;
        let direct = b.intersect(&c).unwrap().is_zero() && b.dim() + c.dim() == m.dim();
        check(direct, || {
            format!("B+C not direct for {g} on n={} over {}", m.n(), m.ring())
        })?;
        check(OperatorPair::new(m, &g).unwrap().identities_hold(), || {
            format!("operator identities fail for {g}")
        })?;
        pairs += 1;
    }
    let mut kleins = 0;
    for m in ms.iter().filter(|m| m.ring().char_value() != Some(2)) {
        let n = m.n();
        for _ in 0..3 {
            let g = Perm::random(n, &mut rng);
            let support = [1, 2, 3, 4].map(|i| g.apply(i));
            let w = weight_decompose(m, &KleinFour::new(n, support).unwrap())
                .map_err(|e| e.to_string())?;
            let ell = w.three_ell();
            let ok = w.is_direct_fill()
                && w.scalars_hold(m).unwrap()
                && ell.is_some_and(|l| w.dims()[0] + 3 * l == m.dim());
            check(ok, || {
                format!(
                    "weights on {support:?}, n={n} over {}: {:?}",
                    m.ring(),
                    w.dims()
                )
            })?;
            kleins += 1;
        }
    }
    let mut local = 0;
    for m in ms.iter().filter(|m| m.dim() < m.n()) {
        let rep = check_local_equations(m, &opts()).map_err(|e| e.to_string())?;
        check(rep.all_hold(), || {
            format!("n={} over {}: {:?}", m.n(), m.ring(), rep.failures())
        })?;
        local += 1;
    }
    Ok(format!(
        "{pairs} coprimality pairs, {kleins} Klein fours, {local} local-equation modules"
    ))
}

fn c10_universe() -> Outcome {
    let mut lines = 0;
    for u in [
        UniverseInstance::field_spaces(&gf(3)).unwrap(),
        UniverseInstance::field_spaces(&Ring::rational()).unwrap(),
        UniverseInstance::finite_abelian(),
    ] {
        let r = full_report(&u.with_seed(SEED), 100).map_err(|e| e.to_string())?;
        check(r.no_failures(), || {
            format!("{}: {:?}", r.instance, r.failures())
        })?;
        lines += r.entries.len();
    }
    Ok(format!("{lines} property lines, none FAIL"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "1 standard-module dimensions",
            c1_dimensions,
            Duration::from_secs(10),
        ),
        (
            "2 faithfulness boundary",
            c2_faithfulness,
            Duration::from_secs(60),
        ),
        (
            "3 irreducibility",
            c3_irreducibility,
            Duration::from_secs(60),
        ),
        (
            "4 Sym round-trip",
            c4_sym_round_trip,
            Duration::from_secs(300),
        ),
        (
            "5 Alt round-trip",
            c5_alt_round_trip,
            Duration::from_secs(600),
        ),
        ("6 Sym(6) outer branch", c6_outer, Duration::from_secs(60)),
        (
            "7 exceptional table cells",
            c7_exceptional,
            Duration::from_secs(120),
        ),
        ("8 Alt(9)/GF(2) bound", c8_alt9, Duration::from_secs(30)),
        ("9 lemma suites", c9_lemmas, Duration::from_secs(300)),
        ("10 universe harness", c10_universe, Duration::from_secs(30)),
    ];
    let mut failed = 0;
    for (name, f, bound) in criteria {
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        let out = match out {
            Ok(detail) if t > bound => Err(format!("{detail}; took {t:.2?}, bound {bound:?}")),
            other => other,
        };
        match out {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{t:.2?}]"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why} [{t:.2?}]");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 10 acceptance criteria passed");
}
