//! The ten acceptance criteria, run by one driver so the report prints in
//! order. Each criterion prints a PASS or FAIL line; the test fails at the
//! end if any criterion did.

use std::io::Write;
use std::time::{Duration, Instant};

use idcode::analysis::{bench_tag, fixed_randomness_params};
use idcode::concat::{
    capacity_conditions, concatenate_codebooks, derive_params, false_id_bound,
    full_codeword_oracle, identity_from_integer, per_position_agreement, tag_value, BlockCodePoint,
    Trend, Verdict,
};
use idcode::protocol::run_fixed_randomness_experiment;
use idcode::FieldElement;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn within(limit: Duration, start: Instant, what: &str) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure!(t < limit, "{what} took {t:?}, limit {limit:?}");
    Ok(t)
}

const T_587: &str = "2 1 0 2 0 1 1 0 2 0 0 0 0 0 0 2 1 0 2 2 2 1 0 2 2 2 2";

fn golden_example() -> Outcome {
    let start = Instant::now();
    let p = derive_params(3, 2, 1).map_err(|e| e.to_string())?;
    let f = p.outer().field();
    ensure!(f.modulus() == [2, 2, 1], "GF(9) modulus {:?}", f.modulus());
    let a = |e: u128| f.pow(f.primitive_element(), e);
    let id = identity_from_integer(&p, &BigUint::from(587u32)).map_err(|e| e.to_string())?;
    let coeffs: Vec<FieldElement> = id.coefficients().collect();
    ensure!(coeffs == [a(6), a(1), a(1)], "identity 587 = {coeffs:?}");
    let outer = p
        .outer()
        .codeword(id.message())
        .map_err(|e| e.to_string())?;
    let zero = f.zero();
    let expected = [a(6), a(7), a(3), zero.clone(), zero, a(6), a(4), a(3), a(4)];
    ensure!(outer == expected, "outer codeword {outer:?}");
    let expanded: String = outer
        .iter()
        .map(|s| {
            f.expand_symbol(s)
                .iter()
                .map(|c| c.to_string())
                .collect::<String>()
        })
        .map(|s| format!("({s})"))
        .collect();
    ensure!(
        expanded == "(22)(21)(12)(00)(00)(22)(20)(12)(20)",
        "expanded {expanded}"
    );
    let word: Vec<String> = (0..27)
        .map(|j| tag_value(&p, &id, j).map(|t| t.to_string()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure!(word.join(" ") == T_587, "T_587 = {}", word.join(" "));
    let t5 = tag_value(&p, &id, 5).map_err(|e| e.to_string())?;
    ensure!(t5 == 1, "tag(587, 5) = {t5}");
    let t = within(Duration::from_secs(1), start, "golden example")?;
    Ok(format!("T_587 reproduced, tag(587,5)=1, {t:.2?}"))
}

fn parameter_derivation() -> Outcome {
    let p = derive_params(3, 2, 1).map_err(|e| e.to_string())?;
    let got = (p.blocklength(), p.dimension(), p.distance());
    ensure!(got == (27, 6, 14), "[n,k,d] = {got:?}");
    let ids = p.identity_count();
    ensure!(
        ids.base == 3 && ids.exponent == 6,
        "identities {}^{}",
        ids.base,
        ids.exponent
    );
    Ok("[27, 6, 14]_3 with 3^6 = 729 identities".into())
}

fn all_identities() -> Result<(idcode::ConcatParams, Vec<idcode::Identity>), String> {
    let p = derive_params(3, 2, 1).map_err(|e| e.to_string())?;
    let ids = (0..729u32)
        .map(|v| identity_from_integer(&p, &BigUint::from(v)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    Ok((p, ids))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let (p, ids) = all_identities()?;
    let mut checked = 0;
    for id in &ids {
        let word = full_codeword_oracle(&p, id).map_err(|e| e.to_string())?;
        for (j, &t) in word.iter().enumerate() {
            let fast = tag_value(&p, id, j as u128).map_err(|e| e.to_string())?;
            ensure!(
                fast == t,
                "identity {:?} position {j}: tag {fast}, oracle {t}",
                id.coefficients().collect::<Vec<_>>()
            );
            checked += 1;
        }
    }
    ensure!(checked == 19_683, "checked {checked} pairs");
    let t = within(Duration::from_secs(10), start, "oracle equivalence")?;
    Ok(format!(
        "{checked} (identity, position) pairs agree, {t:.2?}"
    ))
}

fn distance_oracle() -> Outcome {
    let start = Instant::now();
    let (p, ids) = all_identities()?;
    let words: Vec<Vec<u64>> = ids
        .iter()
        .map(|id| full_codeword_oracle(&p, id))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let mut min_d = usize::MAX;
    let mut pairs = 0u64;
    for a in 0..words.len() {
        for b in a + 1..words.len() {
            let d = words[a]
                .iter()
                .zip(&words[b])
                .filter(|(x, y)| x != y)
                .count();
            min_d = min_d.min(d);
            pairs += 1;
        }
    }
    ensure!(min_d >= 14, "minimum distance {min_d}");
    let t = within(Duration::from_secs(60), start, "distance oracle")?;
    Ok(format!(
        "min distance {min_d} over {pairs} pairs, max agreement {}/27, {t:.2?}",
        27 - min_d
    ))
}

fn lambda2_closed_form() -> Outcome {
    let mut notes = Vec::new();
    for q in [23u64, 193, 1009, 10_007] {
        let p = derive_params(q, 3, 2).map_err(|e| e.to_string())?;
        let b = false_id_bound(&p);
        let qq = BigInt::from(q);
        let term = |c: i64, e: u32| BigRational::new(BigInt::from(c), qq.pow(e));
        let closed = term(2, 1) + term(1, 2) - term(3, 3) + term(2, 4);
        ensure!(
            b.exact == closed,
            "q={q}: 1-d/n = {} but closed form {closed}",
            b.exact
        );
        notes.push(format!("q={q}: {:.3e}", b.value));
    }
    let v23 = false_id_bound(&derive_params(23, 3, 2).map_err(|e| e.to_string())?).value;
    ensure!(format!("{v23:.3}") == "0.089", "lambda2(23) = {v23}");
    Ok(format!(
        "exact rational identity holds; {}",
        notes.join(", ")
    ))
}

fn identity_count() -> Outcome {
    let p = derive_params(23, 3, 2).map_err(|e| e.to_string())?;
    let l = p.identity_count().log10;
    ensure!((l - 93.96).abs() <= 0.5, "log10 #identities = {l}");
    ensure!(
        (93.0..94.0).contains(&l),
        "log10 #identities {l} not in the 93 decade"
    );
    Ok(format!("log10(23^69) = {l:.4}"))
}

/// Published fixed-randomness ratios (blue series) at 1000 trials.
const PUBLISHED_FIXED: [(u64, f64); 8] = [
    (3, 0.334),
    (5, 0.194),
    (7, 0.161),
    (11, 0.086),
    (13, 0.076),
    (17, 0.048),
    (19, 0.068),
    (23, 0.04),
];

fn fixed_randomness_simulation() -> Outcome {
    const TRIALS: u64 = 1000;
    const SEED: u64 = 1;
    let mut notes = Vec::new();
    let mut failures = Vec::new();
    for ((q, k, delta), (pq, published)) in
        fixed_randomness_params().into_iter().zip(PUBLISHED_FIXED)
    {
        assert_eq!(q, pq);
        let p = derive_params(q, k, delta).map_err(|e| e.to_string())?;
        let r = run_fixed_randomness_experiment(&p, TRIALS, SEED).map_err(|e| e.to_string())?;
        let centre = per_position_agreement(&p);
        let sigma = (centre * (1.0 - centre) / TRIALS as f64).sqrt();
        let band = (centre - 3.0 * sigma, centre + 3.0 * sigma);
        let inside = |x: f64| x >= band.0 && x <= band.1;
        if r.ratio >= r.bound_value {
            failures.push(format!(
                "q={q}: ratio {} not below bound {:.4}",
                r.ratio, r.bound_value
            ));
        }
        if !inside(r.ratio) {
            failures.push(format!(
                "q={q}: ratio {} outside [{:.4}, {:.4}]",
                r.ratio, band.0, band.1
            ));
        }
        if !inside(published) {
            failures.push(format!(
                "q={q}: published {published} outside [{:.4}, {:.4}]",
                band.0, band.1
            ));
        }
        notes.push(format!("q={q} {:.3}", r.ratio));
    }
    ensure!(failures.is_empty(), "{}", failures.join("; "));
    Ok(format!(
        "all below bound and within 3 sigma: {}",
        notes.join(", ")
    ))
}

fn capacity_checker() -> Outcome {
    let single: Vec<_> = [23u64, 193, 1009, 10_007]
        .map(|q| BlockCodePoint::single_rs(q, 3))
        .to_vec();
    let report = capacity_conditions(&single).map_err(|e| e.to_string())?;
    ensure!(
        report.tag.ratios.iter().all(|&r| r == 1.0),
        "single RS log q/log M = {:?}",
        report.tag.ratios
    );
    ensure!(
        !report.tag.holds(),
        "single RS tag condition reported as holding"
    );
    let double: Vec<_> = [23u64, 193, 1009]
        .iter()
        .map(|&q| derive_params(q, 3, 2).map(|p| BlockCodePoint::concatenated(&p)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let report = capacity_conditions(&double).map_err(|e| e.to_string())?;
    ensure!(
        report.error.trend == Trend::Increasing && report.error.verdict == Verdict::Approaching,
        "double RS d/M {:?} ({:?}, {:?})",
        report.error.ratios,
        report.error.trend,
        report.error.verdict
    );
    let r = &report.error.ratios;
    Ok(format!(
        "single RS log q/log M = 1 (fails); double RS d/M = {:.4}, {:.4}, {:.4}",
        r[0], r[1], r[2]
    ))
}

fn performance() -> Outcome {
    let big = bench_tag(1_000_037, 3, 2, 3, 7).map_err(|e| e.to_string())?;
    let mut failures = Vec::new();
    if big.wall_time_one_tag > 2.0 {
        failures.push(format!("(1000037,3,2) took {:.3} s", big.wall_time_one_tag));
    }
    let qs = [10_007u64, 100_003, 1_000_037];
    let times: Vec<f64> = qs
        .iter()
        .map(|&q| {
            if q == 1_000_037 {
                Ok(big.wall_time_one_tag)
            } else {
                bench_tag(q, 3, 2, 5, 7).map(|b| b.wall_time_one_tag)
            }
        })
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    // time per unit of q, relative to the smallest q
    let per_q: Vec<f64> = qs.iter().zip(&times).map(|(&q, &t)| t / q as f64).collect();
    for (q, v) in qs.iter().zip(&per_q).skip(1) {
        let rel = v / per_q[0];
        if !(0.5..=2.0).contains(&rel) {
            failures.push(format!("q={q}: time/q is {rel:.2}x that at q=10007"));
        }
    }
    let shown: Vec<String> = qs
        .iter()
        .zip(&times)
        .map(|(q, t)| format!("q={q} {:.2} ms", t * 1e3))
        .collect();
    ensure!(
        failures.is_empty(),
        "{} [{}]",
        failures.join("; "),
        shown.join(", ")
    );
    Ok(shown.join(", "))
}

fn concatenation_fixture() -> Outcome {
    let digits = |s: &str| s.bytes().map(|b| b - b'0').collect::<Vec<u8>>();
    let inner: Vec<_> = ["0120112", "1202102", "2100211", "1201120"]
        .map(digits)
        .to_vec();
    let outer: Vec<Vec<char>> = ["ad", "bc", "ac", "cc", "db", "ab"]
        .iter()
        .map(|w| w.chars().collect())
        .collect();
    let got =
        concatenate_codebooks(&inner, &['a', 'b', 'c', 'd'], &outer).map_err(|e| e.to_string())?;
    let expected = [
        "01201121201120",
        "12021022100211",
        "01201122100211",
        "21002112100211",
        "12011201202102",
        "01201121202102",
    ]
    .map(digits);
    ensure!(got == expected, "codewords {got:?}");
    Ok("6 codewords of length 14".into())
}

/// Straight to the stdout handle so the lines show without `--nocapture`.
fn report(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("1 golden worked example", golden_example),
        ("2 parameter derivation", parameter_derivation),
        ("3 oracle equivalence", oracle_equivalence),
        ("4 distance oracle", distance_oracle),
        ("5 lambda2 closed form", lambda2_closed_form),
        ("6 identity count", identity_count),
        ("7 fixed-randomness simulation", fixed_randomness_simulation),
        ("8 capacity checker", capacity_checker),
        ("9 performance", performance),
        ("10 concatenation fixture", concatenation_fixture),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(detail) => report(&format!("PASS criterion {name}: {detail}")),
            Err(why) => {
                report(&format!("FAIL criterion {name}: {why}"));
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
