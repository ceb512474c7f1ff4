//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p mixsq-cli --test acceptance` (add `--release`
//! for the timings quoted in the README).

use std::panic;
use std::process::Command;
use std::time::{Duration, Instant};

use mixsq::survey::{Source, Survey};
use mixsq::{
    derive, is_three_square_feasible, jacobi_transform, strip_fours, three_squares, Certificate,
    Epsilon, Error, MixedFormId, Mode, SignedTriple,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = fn() -> Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// AC1: all five forms for every n in [0, 10^5], single-threaded, < 120 s.
fn ac1_constructive_coverage() -> Result<String, String> {
    const HI: u64 = 100_000;
    const BUDGET: Duration = Duration::from_secs(120);
    let started = Instant::now();
    let mut checks = 0u64;
    for f in MixedFormId::ALL {
        for n in 0..=HI {
            let c = mixsq::represent(f, n).map_err(|e| format!("{f} at {n}: {e}"))?;
            ensure(c.n == n && c.form == f, || format!("{c:?} answers the wrong question"))?;
            ensure(c.verify() == Ok(true), || format!("{c:?} does not verify"))?;
            checks += 1;
        }
    }
    let took = started.elapsed();
    ensure(checks == 5 * (HI + 1), || format!("ran {checks} checks"))?;
    ensure(took < BUDGET, || format!("took {took:?}, budget {BUDGET:?}"))?;
    Ok(format!("{checks} certificates verified in {:.2}s", took.as_secs_f64()))
}

/// AC2: three_squares succeeds exactly off 4^k(8l+7) on [0, 10^5]; the
/// classifier matches a naive triple loop on [0, 10^4].
fn ac2_gauss_legendre() -> Result<String, String> {
    for m in 0..=100_000u64 {
        let excluded = m > 0 && strip_fours(m).map_err(|e| e.to_string())?.1 % 8 == 7;
        match three_squares(m) {
            Ok(r) => {
                ensure(!excluded, || format!("{m} decomposed but is excluded"))?;
                let s = u128::from(r.x).pow(2) + u128::from(r.y).pow(2) + u128::from(r.z).pow(2);
                ensure(s == u128::from(m) && r.x >= r.y && r.y >= r.z, || format!("bad {r:?}"))?;
            }
            Err(Error::NotRepresentable(v)) if v == m => {
                ensure(excluded, || format!("{m} rejected but feasible"))?
            }
            Err(e) => return Err(format!("{m}: unexpected {e}")),
        }
    }
    const NAIVE: u64 = 10_000;
    let mut naive = vec![false; NAIVE as usize + 1];
    for x in 0..=100u64 {
        for y in 0..=100 {
            for z in 0..=100 {
                let s = x * x + y * y + z * z;
                if s <= NAIVE {
                    naive[s as usize] = true;
                }
            }
        }
    }
    for (m, &hit) in naive.iter().enumerate() {
        ensure(is_three_square_feasible(m as u64) == hit, || format!("classifier wrong at {m}"))?;
    }
    Ok("100001 decompositions and 10001 naive comparisons agree".into())
}

/// AC3: Jacobi's identity on 10^4 random same-parity triples in
/// [-10^6, 10^6]; every parity-violating triple is rejected.
fn ac3_jacobi() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a61_636f_6269);
    let mut rejected = 0;
    for _ in 0..10_000 {
        let x: i64 = rng.gen_range(-1_000_000..=1_000_000);
        let z: i64 = rng.gen_range(-1_000_000..=1_000_000);
        let mut y: i64 = rng.gen_range(-1_000_000..=1_000_000);
        if (x - y).rem_euclid(2) != 0 {
            y += if y < 1_000_000 { 1 } else { -1 };
        }
        let t = SignedTriple::new(x, y, z);
        let img = jacobi_transform(t).map_err(|e| format!("{t:?}: {e}"))?;
        let lhs = 3 * (i128::from(x).pow(2) + i128::from(y).pow(2) + i128::from(z).pow(2));
        let rhs = i128::from(img.s).pow(2) + 2 * i128::from(img.u).pow(2) + 6 * i128::from(img.v).pow(2);
        ensure(lhs == rhs, || format!("identity fails at {t:?}"))?;

        let bad = SignedTriple::new(x, if y < 1_000_000 { y + 1 } else { y - 1 }, z);
        ensure(matches!(jacobi_transform(bad), Err(Error::Parity { .. })), || {
            format!("{bad:?} accepted")
        })?;
        rejected += 1;
    }
    Ok(format!("10000 identities exact, {rejected} parity violations rejected"))
}

fn expect_residue(v: i64, m: i64, want: i64, what: &str, n: u64) -> Result<(), String> {
    ensure(v.rem_euclid(m) == want, || {
        format!("n = {n}: {what} = {v} ≡ {} (mod {m}), expected {want}", v.rem_euclid(m))
    })
}

fn exact(num: i64, den: i64, what: &str, n: u64) -> Result<i64, String> {
    ensure(num % den == 0, || format!("n = {n}: {what} = {num} not divisible by {den}"))?;
    Ok(num / den)
}

/// AC4: every congruence used by the constructions holds on [0, 10^4],
/// re-derived here from the recorded normalized triples.
fn ac4_congruences() -> Result<String, String> {
    let mut checked = 0u64;
    for n in 0..=10_000u64 {
        for f in MixedFormId::ALL {
            let d = derive(f, n).map_err(|e| format!("{f} at {n}: {e}"))?;
            let t = d.normalized;
            let (x, y, z) = (t.x, t.y, t.z);
            let sq = |v: i64| i128::from(v).pow(2);
            ensure(sq(x) + sq(y) + sq(z) == i128::from(d.target), || {
                format!("n = {n}: normalized triple {t:?} lost the sum {}", d.target)
            })?;
            let c = d.certificate;
            let got = match f {
                MixedFormId::FourX2TwoTT => {
                    ensure(d.target == 8 * n + 3, || "target".into())?;
                    for v in [x, y, z] {
                        expect_residue(v, 4, 1, "component", n)?;
                    }
                    expect_residue(x - y, 8, 0, "x-y", n)?;
                    (exact(x - y, 8, "x-y", n)?, exact(x + y - 2, 4, "x+y-2", n)?, exact(z - 1, 2, "z-1", n)?)
                }
                MixedFormId::X2ThreeTT => {
                    ensure(d.target == 12 * (4 * n + 2), || "target".into())?;
                    ensure(x.rem_euclid(3) == y.rem_euclid(3) && y.rem_euclid(3) == z.rem_euclid(3), || {
                        format!("n = {n}: {t:?} not aligned mod 3")
                    })?;
                    expect_residue(x, 4, 0, "x", n)?;
                    expect_residue(y, 4, 2, "y", n)?;
                    expect_residue(z, 4, 2, "z", n)?;
                    expect_residue(x + y + z, 12, 0, "x+y+z", n)?;
                    expect_residue(x + y - 2 * z, 12, 6, "x+y-2z", n)?;
                    expect_residue(x - y, 12, 6, "x-y", n)?;
                    let x0 = exact(x + y + z, 12, "x+y+z", n)?;
                    let y0 = exact(x + y - 2 * z - 6, 12, "x+y-2z-6", n)?;
                    let z0 = exact(x - y - 6, 12, "x-y-6", n)?;
                    (x0, z0, y0)
                }
                _ => {
                    let eps = t.eps.ok_or("missing epsilon")?;
                    ensure(eps.form() == f, || "epsilon/form mismatch".into())?;
                    ensure(d.target == 24 * n + 3 + 6 * u64::from(eps.value()), || "target".into())?;
                    ensure(x.rem_euclid(3) == y.rem_euclid(3) && y.rem_euclid(3) == z.rem_euclid(3), || {
                        format!("n = {n}: {t:?} not aligned mod 3")
                    })?;
                    let (diag, diff) = match eps {
                        Epsilon::Zero => {
                            ensure(x % 2 != 0 && y % 2 != 0 && z % 2 != 0, || format!("{t:?} not all odd"))?;
                            expect_residue(x - y, 4, 0, "x-y", n)?;
                            (0, 0)
                        }
                        Epsilon::One => {
                            ensure(x % 2 == 0 && y % 2 == 0 && z % 2 != 0, || format!("{t:?} parity"))?;
                            expect_residue(x - y, 4, 0, "x-y", n)?;
                            (6, 0)
                        }
                        Epsilon::Three => {
                            expect_residue(x, 4, 2, "x", n)?;
                            expect_residue(y, 4, 0, "y", n)?;
                            ensure(z % 2 != 0, || format!("{t:?} z even"))?;
                            (0, 6)
                        }
                    };
                    expect_residue(x + y + z, 6, 3, "x+y+z", n)?;
                    expect_residue(x + y - 2 * z, 12, diag, "x+y-2z", n)?;
                    expect_residue(x - y, 12, diff, "x-y", n)?;
                    let z0 = exact(x + y + z - 3, 6, "x+y+z-3", n)?;
                    let (x0, y0) = match eps {
                        Epsilon::Zero => (exact(x + y - 2 * z, 12, "x+y-2z", n)?, exact(x - y, 12, "x-y", n)?),
                        Epsilon::One => (exact(x - y, 12, "x-y", n)?, exact(x + y - 2 * z - 6, 12, "x+y-2z-6", n)?),
                        Epsilon::Three => (exact(x + y - 2 * z, 12, "x+y-2z", n)?, exact(x - y - 6, 12, "x-y-6", n)?),
                    };
                    (x0, y0, z0)
                }
            };
            ensure(got == (c.x, c.y, c.z), || format!("n = {n}: {c:?} differs from quotients {got:?}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} derivations, zero violations, all divisions exact"))
}

/// AC5: oracle agreement on the five mixed forms and every catalog entry.
fn ac5_catalogs() -> Result<String, String> {
    const BUDGET: Duration = Duration::from_secs(300);
    let started = Instant::now();
    let engine = Survey::sequential();
    let mut lines = Vec::new();
    for (source, lo, hi, entries) in [
        (Source::Theorem2, 0, 10_000, 5),
        (Source::Theorem1I, 0, 10_000, 2),
        (Source::Theorem1Ii, 0, 10_000, 10),
        (Source::Theorem1Iii, 0, 10_000, 15),
        (Source::Panaitopol, 1, 9_999, 3),
    ] {
        let reports = engine.verify_catalog(Some(source), lo, hi).map_err(|e| e.to_string())?;
        ensure(reports.len() == entries, || format!("{source}: {} entries", reports.len()))?;
        for r in &reports {
            ensure(r.mode == Mode::Oracle, || "wrong mode".into())?;
            ensure(r.is_clean(), || {
                format!("{} misses {:?}", r.entry.name, &r.counterexamples[..r.counterexamples.len().min(5)])
            })?;
        }
        if source == Source::Panaitopol {
            ensure(reports.iter().all(|r| r.verified == 5_000), || "odd filter".into())?;
        }
        lines.push(format!("{source}×{entries}"));
    }
    let took = started.elapsed();
    ensure(took < BUDGET, || format!("took {took:?}, budget {BUDGET:?}"))?;
    Ok(format!("{} clean in {:.2}s", lines.join(", "), took.as_secs_f64()))
}

/// AC6: x²+y²+z² misses exactly 4^k(8l+7) on [0, 1000].
fn ac6_negative_control() -> Result<String, String> {
    let mut expected = Vec::new();
    let mut pow = 1u64;
    while 7 * pow <= 1000 {
        let mut l = 0;
        while pow * (8 * l + 7) <= 1000 {
            expected.push(pow * (8 * l + 7));
            l += 1;
        }
        pow *= 4;
    }
    expected.sort_unstable();
    let r = mixsq::survey::negative_control(0, 1000).map_err(|e| e.to_string())?;
    ensure(r.counterexamples == expected, || {
        format!("oracle misses {:?}, expected {:?}", r.counterexamples, expected)
    })?;
    ensure(r.verified + expected.len() as u64 == 1001, || "candidate count".into())?;
    Ok(format!("{} counterexamples, all of the form 4^k(8l+7)", expected.len()))
}

fn mixsq(args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_mixsq"))
        .args(args)
        .output()
        .map_err(|e| format!("cannot run mixsq: {e}"))?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

/// AC7: byte-identical JSON/CSV across runs and --jobs, JSON round-trip,
/// exit-code contract.
fn ac7_interfaces() -> Result<String, String> {
    let cases: [&[&str]; 4] = [
        &["verify-range", "0", "40000", "--mode", "constructive"],
        &["verify-range", "0", "3000", "--mode", "oracle"],
        &["survey", "--source", "theorem1_iii", "0", "3000"],
        &["negative-control", "0", "5000"],
    ];
    let mut compared = 0;
    for base in cases {
        for fmt in ["--json", "--csv"] {
            let mut reference: Option<Vec<u8>> = None;
            for jobs in ["1", "1", "2", "3", "8"] {
                let mut args = base.to_vec();
                args.extend([fmt, "--jobs", jobs]);
                let (code, out) = mixsq(&args)?;
                ensure(code == 0, || format!("{args:?} exited {code}"))?;
                match &reference {
                    None => reference = Some(out),
                    Some(r) => ensure(*r == out, || format!("{args:?} output differs"))?,
                }
                compared += 1;
            }
        }
    }

    let mut round_trips = 0;
    for f in MixedFormId::ALL {
        for n in ["0", "1", "2", "25", "10000", "36028797018963968"] {
            let (code, out) = mixsq(&["represent", f.name(), n, "--json", "--verify"])?;
            ensure(code == 0, || format!("represent {f} {n} exited {code}"))?;
            let text = String::from_utf8(out).map_err(|e| e.to_string())?;
            let cert: Certificate = serde_json::from_str(text.trim_end()).map_err(|e| e.to_string())?;
            let again = serde_json::to_string(&cert).map_err(|e| e.to_string())?;
            ensure(again == text.trim_end(), || format!("{text} re-serialized as {again}"))?;
            ensure(cert == mixsq::represent(f, n.parse().unwrap()).unwrap(), || "field mismatch".into())?;
            round_trips += 1;
        }
    }
    let (_, golden) = mixsq(&["represent", "4x2+2t+t", "2", "--json"])?;
    ensure(golden == b"{\"form\":\"4x2+2t+t\",\"n\":2,\"x\":0,\"y\":-2,\"z\":0}\n", || {
        format!("golden certificate was {}", String::from_utf8_lossy(&golden))
    })?;

    let exits: [(&[&str], i32); 9] = [
        (&["verify-range", "0", "0"], 0),
        (&["represent", "x2+3y2+t", "0"], 0),
        (&["count", "1*sq+3*sq+1*tri", "5"], 0),
        (&["search", "1*sq+1*sq+1*sq", "0", "10"], 1),
        (&["search", "1*sq+2*sq+3*sq", "0", "10"], 1),
        (&["represent", "bogus", "5"], 2),
        (&["count", "1*sq+", "5"], 2),
        (&["verify-range", "9", "3"], 2),
        (&["represent", "x2+6t+t", "36028797018963969"], 2),
    ];
    for (args, want) in exits {
        let (code, _) = mixsq(args)?;
        ensure(code == want, || format!("{args:?} exited {code}, expected {want}"))?;
    }
    Ok(format!(
        "{compared} runs byte-identical, {round_trips} JSON round-trips, {} exit codes honored",
        exits.len()
    ))
}

fn main() {
    let criteria: [(&str, Check); 7] = [
        ("AC1 constructive coverage, 5 forms × [0, 1e5]", ac1_constructive_coverage),
        ("AC2 Gauss–Legendre exactness", ac2_gauss_legendre),
        ("AC3 Jacobi identity", ac3_jacobi),
        ("AC4 construction congruences", ac4_congruences),
        ("AC5 oracle agreement and catalogs", ac5_catalogs),
        ("AC6 negative control", ac6_negative_control),
        ("AC7 determinism and interfaces", ac7_interfaces),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let started = Instant::now();
        let outcome = panic::catch_unwind(check).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail} [{secs:.2}s]"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why} [{secs:.2}s]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 7 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
