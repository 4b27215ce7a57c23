//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line in `cargo test` output.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pierce_core::calendar::{self, IntercalationRule};
use pierce_core::digits::{self, DigitSeq, Tail};
use pierce_core::exact::{self, rat, Enclosure, Rational};
use pierce_core::intervals;
use pierce_core::law::{self, Branch, GrowthSpec};
use pierce_core::pierce;
use pierce_core::real::Precision;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn rule(terms: &[u64]) -> IntercalationRule {
    IntercalationRule::from_u64s(terms).unwrap()
}

/// Both bounds lie within `tol` of `target`.
fn within(e: &Enclosure, target: f64, tol: f64) -> bool {
    e.lo_f64() >= target - tol && e.hi_f64() <= target + tol
}

fn c1_leap_examples() -> Check {
    let r = rule(&[4, 25, 4]);
    let got: Vec<bool> = [2028, 2100, 2400]
        .iter()
        .map(|&y| calendar::is_leap(&r, y).unwrap())
        .collect();
    ensure(got == [true, false, true], || format!("got {got:?}"))?;
    Ok("2028 true, 2100 false, 2400 true".into())
}

fn c2_average_year() -> Check {
    let g =
        calendar::series_value(&IntercalationRule::gregorian(), 3).map_err(|e| e.to_string())?;
    let j = calendar::series_value(&IntercalationRule::julian(), 1).map_err(|e| e.to_string())?;
    ensure(g == Enclosure::point(rat(97, 400)), || {
        format!("gregorian {g}")
    })?;
    ensure(j == Enclosure::point(rat(1, 4)), || format!("julian {j}"))?;
    Ok("gregorian 97/400, julian 1/4".into())
}

fn c3_formula_matches_enumeration() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checks = 0;
    for _ in 0..500 {
        let len = rng.random_range(1..=5);
        let mut terms = vec![rng.random_range(1..=50u64)];
        for _ in 1..len {
            terms.push(rng.random_range(2..=50u64));
        }
        let r = rule(&terms);
        let direct = calendar::leap_counts_through(&r, 5000).map_err(|e| e.to_string())?;
        for _ in 0..50 {
            let n = rng.random_range(1..=5000u64);
            let formula = calendar::count_leaps_formula(&r, &big(n)).map_err(|e| e.to_string())?;
            ensure(formula == big(direct[n as usize - 1]), || {
                format!(
                    "rule {r} N={n}: formula {formula} direct {}",
                    direct[n as usize - 1]
                )
            })?;
            checks += 1;
        }
    }
    Ok(format!("{checks} (rule, N) pairs agree"))
}

fn c4_codec_round_trip() -> Check {
    let mut count = 0;
    for q in 1..=300i64 {
        for p in 1..=q {
            if p.gcd(&q) != 1 {
                continue;
            }
            let x = rat(p, q);
            let s = pierce::encode(&x).map_err(|e| e.to_string())?;
            let back = pierce::decode(&s).map_err(|e| e.to_string())?;
            ensure(back == x, || format!("{p}/{q} decodes to {back}"))?;
            let ds = s.digits();
            ensure(ds.windows(2).all(|w| w[0] < w[1]), || {
                format!("{p}/{q}: {s} not increasing")
            })?;
            let n = ds.len();
            ensure(n < 2 || &ds[n - 2] + 1u32 < ds[n - 1], || {
                format!("{p}/{q}: {s} tail not canonical")
            })?;
            ensure(s.is_canonical(), || {
                format!("{p}/{q}: {s} flagged non-canonical")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} reduced fractions"))
}

/// `sum_{k=0}^{terms-1} (-1)^k / k!` and its remainder bound `1/terms!`.
fn inverse_e_oracle(terms: u64) -> (Rational, Rational) {
    let mut sum = Rational::zero();
    let mut fact = BigInt::one();
    for k in 0..terms {
        if k > 0 {
            fact *= k;
        }
        let term = Rational::new(BigInt::one(), fact.clone());
        sum = if k % 2 == 0 { sum + term } else { sum - term };
    }
    (sum, Rational::new(BigInt::one(), fact * terms))
}

fn c5_enclosure_soundness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let mut ds = Vec::with_capacity(12);
        let mut last = 0u64;
        for _ in 0..12 {
            last += rng.random_range(1..=40u64);
            ds.push(last);
        }
        let s = DigitSeq::from_u64s(&ds, Tail::Extendable).unwrap();
        let mut previous: Option<Enclosure> = None;
        let mut product = BigUint::one();
        for n in 1..12 {
            let e = pierce::enclose(&s, n).map_err(|e| e.to_string())?;
            product *= ds[n - 1];
            let tail = Rational::new(BigInt::one(), BigInt::from(&product * ds[n]));
            ensure(e.width() == tail, || {
                format!("{s} n={n}: width {} vs {}", e.width(), tail)
            })?;
            if let Some(p) = &previous {
                ensure(p.contains_enclosure(&e), || {
                    format!("{s} n={n}: enclosures do not nest")
                })?;
            }
            previous = Some(e);
        }
    }
    let factorial_digits: Vec<u64> = (2..=13).collect();
    let s = DigitSeq::from_u64s(&factorial_digits, Tail::Extendable).unwrap();
    let e = pierce::enclose(&s, 11).map_err(|e| e.to_string())?;
    // 12 digits give S_11 and S_12; the oracle below is accurate to 1/40!.
    let (inv_e, err) = inverse_e_oracle(40);
    let oracle = Enclosure::new(&inv_e - &err, &inv_e + &err).unwrap();
    ensure(e.contains_enclosure(&oracle), || format!("{e} misses e^-1"))?;
    ensure(e.width() < rat(1, 100_000_000), || {
        format!("width {}", e.width())
    })?;
    Ok(format!(
        "100 prefixes nest; e^-1 in [{}, {}]",
        exact::format_decimal(e.lo(), 12),
        exact::format_decimal(e.hi(), 12)
    ))
}

const LLN_SEED: u64 = 2024;

fn c6_law_of_large_numbers() -> Check {
    let sample =
        law::lln_sample(200, 128, 20, LLN_SEED, Precision::DEFAULT).map_err(|e| e.to_string())?;
    let mean = sample.mean.ok_or("no sample reached 20 digits")?;
    ensure(within(&mean, 1.0, 0.2), || format!("mean {mean}"))?;
    Ok(format!(
        "mean {} over {} samples ({} short)",
        exact::format_decimal(mean.lo(), 4),
        sample.count - sample.skipped,
        sample.skipped
    ))
}

fn trajectory(alpha: i64) -> Result<Vec<law::TrajectoryRow>, String> {
    law::trajectory(&GrowthSpec::Rate(rat(alpha, 1)), 25, 3, Precision::DEFAULT)
        .map_err(|e| e.to_string())
}

fn c7_drift_lower_bound() -> Check {
    let mut rows = 0;
    for alpha in [1, 4] {
        for row in trajectory(alpha)?.iter().filter(|r| r.branch == Branch::N) {
            let bound = rat(row.r as i64, 4);
            ensure(*row.drift.lo() >= bound, || {
                format!("alpha={alpha} r={}: drift {}", row.r, row.drift)
            })?;
            ensure(row.thm2 == Some(true), || {
                format!("alpha={alpha} r={}: flag unset", row.r)
            })?;
            rows += 1;
        }
    }
    Ok(format!("{rows} N-branch rows satisfy drift >= r/4"))
}

fn c8_quotient_targets() -> Check {
    let mut notes = Vec::new();
    for alpha in [1i64, 4] {
        let target = 1.0 / (2.0 * alpha as f64).sqrt();
        let rows = trajectory(alpha)?;
        for branch in [Branch::N, Branch::M] {
            let row = rows
                .iter()
                .find(|r| r.branch == branch && r.r == 25)
                .ok_or("missing r=25 row")?;
            let signed = if branch == Branch::N { target } else { -target };
            ensure(within(&row.quotient, signed, 0.1), || {
                format!("alpha={alpha} {branch}: {} vs {signed:.5}", row.quotient)
            })?;
            notes.push(format!("a={alpha} {branch} {:.5}", row.quotient.lo_f64()));
        }
    }
    Ok(notes.join(", "))
}

/// Natural log of a big integer through its leading 64 bits.
fn ln_big(n: &BigUint) -> f64 {
    let bits = n.bits();
    let shift = bits.saturating_sub(64);
    let top = (n >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// First `r` where `(r/4)/sqrt(ln N_{2r+1})` exceeds 1.4 for digits `k+1`,
/// computed from factorials.
fn alpha_zero_oracle(limit: usize) -> Option<usize> {
    let mut n = -BigInt::one();
    let mut fact = BigInt::one();
    for j in 1..=(2 * limit + 1) {
        fact *= j + 1;
        if j % 2 == 1 {
            n += &fact;
        } else {
            n -= &fact;
        }
        if j % 2 == 1 && j >= 3 {
            let r = (j - 1) / 2;
            if (r as f64 / 4.0) / ln_big(&n.to_biguint().unwrap()).sqrt() > 1.4 {
                return Some(r);
            }
        }
    }
    None
}

fn c9_alpha_zero_divergence() -> Check {
    let r_max = 400;
    let s = law::construct_digits(
        &GrowthSpec::Rate(rat(0, 1)),
        2 * r_max + 1,
        Precision::DEFAULT,
    )
    .map_err(|e| e.to_string())?;
    let threshold = rat(7, 5);
    let floor = |r| law::quotient_floor(&s, r, Precision::DEFAULT).map_err(|e| e.to_string());
    let at_max = floor(r_max)?;
    ensure(*at_max.lo() > threshold, || format!("r=400 floor {at_max}"))?;
    let mut first = None;
    for r in 1..=r_max {
        let e = floor(r)?;
        ensure(e.lo() > &threshold || e.hi() < &threshold, || {
            format!("r={r} straddles 1.4")
        })?;
        if e.lo() > &threshold {
            first = Some(r);
            break;
        }
    }
    let oracle = alpha_zero_oracle(r_max);
    ensure(first == oracle, || {
        format!("first exceedance {first:?}, oracle {oracle:?}")
    })?;
    Ok(format!(
        "floor {:.4} at r=400; first above 1.4 at r={}",
        at_max.lo_f64(),
        first.unwrap()
    ))
}

fn zc_strings(c: Rational, start: usize, depth: usize) -> Result<Vec<String>, String> {
    Ok(digits::enumerate_zc(&c, start, depth)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|p| p.prefix().to_string())
        .collect())
}

fn c10_zc_structure() -> Check {
    let half = zc_strings(rat(1, 2), 1, 20)?;
    ensure(half.len() == 1, || format!("c=1/2 gives {}", half.len()))?;
    let one = zc_strings(rat(1, 1), 1, 3)?;
    ensure(one.len() == 4, || {
        format!("c=1 depth 3 gives {}", one.len())
    })?;
    let twos = digits::enumerate_zc(&rat(2, 1), 1, 12).map_err(|e| e.to_string())?;
    let mut seen = HashSet::new();
    for p in &twos {
        let jumps = digits::jump_positions(p).map_err(|e| e.to_string())?;
        ensure(seen.insert(jumps.clone()), || {
            format!("jump tuple {jumps:?} repeats")
        })?;
    }
    for c in [1, 2] {
        let base = zc_strings(rat(c, 1), 1, 10)?;
        for m in [2, 3] {
            let other = zc_strings(rat(c, 1), m, 10)?;
            ensure(other == base, || {
                format!("c={c} M={m}: {} vs {}", other.len(), base.len())
            })?;
        }
    }
    Ok(format!(
        "1 / 4 prefixes; {} injective jump tuples; start index invariant",
        twos.len()
    ))
}

/// `interval` lies inside the open interval `(a, b)`.
fn inside_open(i: &intervals::FundamentalInterval, a: &Rational, b: &Rational) -> bool {
    let left_ok = i.left() > a || (i.left() == a && i.left_open());
    let right_ok = i.right() < b || (i.right() == b && i.right_open());
    left_ok && right_ok
}

fn c11_interval_geometry() -> Check {
    let golden = [
        ("1", (1, 2), (1, 1), true, false),
        ("2,3", (1, 3), (3, 8), true, true),
        ("1,4", (3, 4), (4, 5), false, true),
    ];
    for (g, l, r, lo, ro) in golden {
        let i = intervals::fundamental_interval(&g.parse().unwrap()).map_err(|e| e.to_string())?;
        let ok = i.left() == &rat(l.0, l.1)
            && i.right() == &rat(r.0, r.1)
            && i.left_open() == lo
            && i.right_open() == ro;
        ensure(ok, || format!("({g}) gives {}", i.notation()))?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let sigma: DigitSeq = "2,5".parse().unwrap();
    let parent = intervals::fundamental_interval(&sigma).map_err(|e| e.to_string())?;
    let base = parent.left().clone();
    let width = parent.width();
    for _ in 0..1000 {
        let t = rat(rng.random_range(1..1_000_000), 1_000_000);
        let x = &base + &width * t;
        ensure(parent.contains(&x), || format!("{x} not in parent"))?;
        let d3 = pierce::encode(&x).map_err(|e| e.to_string())?.digits()[2].clone();
        let kids = intervals::children(&sigma, &(d3 + 5u32)).map_err(|e| e.to_string())?;
        let hits: Vec<_> = kids.iter().filter(|k| k.contains(&x)).collect();
        ensure(hits.len() == 1, || {
            format!("{x} lies in {} children", hits.len())
        })?;
        ensure(
            intervals::expansion_starts_with(&x, hits[0].generator()).map_err(|e| e.to_string())?,
            || format!("{x} in wrong child {}", hits[0].notation()),
        )?;
    }

    for _ in 0..100 {
        let mut a = rat(rng.random_range(0..1_000_000), 1_000_000);
        let mut b = rat(rng.random_range(0..1_000_000), 1_000_000);
        if a == b {
            continue;
        }
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        let g = intervals::find_interval_within(&a, &b).map_err(|e| e.to_string())?;
        let i = intervals::fundamental_interval(&g).map_err(|e| e.to_string())?;
        ensure(inside_open(&i, &a, &b), || {
            format!("({a}, {b}) -> {}", i.notation())
        })?;
    }
    Ok("golden intervals, 1000 child-partition points, 100 find-interval pairs".into())
}

fn c12_replacement_coherence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let prec = Precision::DEFAULT;
    let mut done = 0;
    for _ in 0..50 {
        let alpha = rat(rng.random_range(1..=12), 4);
        let x =
            law::construct_digits(&GrowthSpec::Rate(alpha), 32, prec).map_err(|e| e.to_string())?;
        let before = law::growth_rate(&x, 30, prec).map_err(|e| e.to_string())?;
        for _ in 0..20 {
            let m = rng.random_range(1..=8usize);
            let next = x.digits()[m].to_u64().unwrap();
            // Strictly increasing tau with tau_m < x_{m+1}.
            let mut picked = HashSet::with_capacity(m);
            while picked.len() < m {
                picked.insert(rng.random_range(1..next));
            }
            let mut tau: Vec<u64> = picked.into_iter().collect();
            tau.sort_unstable();
            let tau: Vec<BigUint> = tau.into_iter().map(BigUint::from).collect();
            let y = digits::replace_prefix(&x, &tau).map_err(|e| e.to_string())?;
            ensure(y.digits()[m..] == x.digits()[m..], || "tails differ".into())?;
            let after = law::growth_rate(&y, 30, prec).map_err(|e| e.to_string())?;
            ensure(after == before, || {
                format!("growth moved from {before} to {after}")
            })?;
            let back = digits::replace_prefix(&y, &x.digits()[..m]).map_err(|e| e.to_string())?;
            ensure(back == x, || format!("round trip of {tau:?} failed"))?;
            done += 1;
        }
    }
    Ok(format!(
        "{done} replacements leave growth at n=30 unchanged and round-trip"
    ))
}

fn main() {
    let criteria: [Criterion; 12] = [
        (
            "1 leap examples",
            c1_leap_examples,
            Duration::from_millis(1),
        ),
        (
            "2 average-year fractions",
            c2_average_year,
            Duration::from_secs(1),
        ),
        (
            "3 formula = enumeration",
            c3_formula_matches_enumeration,
            Duration::from_secs(10),
        ),
        (
            "4 codec round trip",
            c4_codec_round_trip,
            Duration::from_secs(5),
        ),
        (
            "5 enclosure soundness",
            c5_enclosure_soundness,
            Duration::from_secs(1),
        ),
        (
            "6 law of large numbers sample",
            c6_law_of_large_numbers,
            Duration::from_secs(30),
        ),
        (
            "7 drift lower bound r/4",
            c7_drift_lower_bound,
            Duration::from_secs(60),
        ),
        (
            "8 quotient near 1/sqrt(2 alpha)",
            c8_quotient_targets,
            Duration::from_secs(120),
        ),
        (
            "9 alpha = 0 divergence",
            c9_alpha_zero_divergence,
            Duration::from_secs(120),
        ),
        (
            "10 Z_c structure",
            c10_zc_structure,
            Duration::from_secs(10),
        ),
        (
            "11 interval geometry",
            c11_interval_geometry,
            Duration::from_secs(5),
        ),
        (
            "12 replacement coherence",
            c12_replacement_coherence,
            Duration::from_secs(5),
        ),
    ];
    let mut failed = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let verdict = match result {
            Ok(detail) if elapsed <= budget => format!("PASS criterion {name}: {detail}"),
            Ok(detail) => format!("FAIL criterion {name}: {detail}; took {elapsed:?} > {budget:?}"),
            Err(why) => format!("FAIL criterion {name}: {why}"),
        };
        if verdict.starts_with("FAIL") {
            failed += 1;
        }
        println!("{verdict} [{:.3}s]", elapsed.as_secs_f64());
    }
    println!("acceptance: {} of 12 criteria passed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
