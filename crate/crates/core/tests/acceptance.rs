//! Acceptance suite: one PASS/FAIL line per criterion, each under its time bound.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use hopcalc::adem::{annihilation_order, compose, default_cap, normalize};
use hopcalc::chains::{
    verify_nilcond, ChainComplex, ChainElement, ChainMonomial, ChainTerm, SymbolId, TruncatedRing,
};
use hopcalc::gamma::{GammaElement, GammaMonomial, GradedGenerator};
use hopcalc::gf2::series_product_exterior;
use hopcalc::sphere::{
    delta_on_e1, e1_page, sphere_generators, sphere_poincare, vartheta, GradedVectorSpace,
    SphereGenerator,
};
use hopcalc::words::{alpha_to_delta, delta_to_alpha, DeltaWord, SourceDegree};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn word(v: &[u32]) -> DeltaWord {
    DeltaWord::new(v.to_vec()).unwrap()
}

fn deg(n: u32) -> SourceDegree {
    SourceDegree::new(n).unwrap()
}

// 1 -------------------------------------------------------------------------

fn vanishings() -> Result<String, String> {
    for w in [[4, 3], [4, 4]] {
        let nf = normalize(&word(&w));
        ensure(nf.is_zero(), || format!("normalize({w:?}) = {nf}"))?;
    }
    for m in 3..=12 {
        let nf = normalize(&word(&[2 * m - 1, m]));
        ensure(nf.is_zero(), || {
            format!("normalize(({}, {m})) = {nf}", 2 * m - 1)
        })?;
    }
    Ok("(4,3), (4,4) and (2m-1,m) for m = 3..12 vanish".into())
}

// 2 -------------------------------------------------------------------------

/// Degrees of admissible words with excess < n, by direct recursion on the
/// last (innermost) index.
fn oracle_generator_degrees(n: u32, max: u32) -> Vec<u32> {
    fn extend(rev: &mut Vec<u32>, n: u32, max: u32, out: &mut Vec<u32>) {
        // rev holds the word innermost first
        let total: u32 = rev.iter().sum();
        let excess = match rev.split_last() {
            None => 0i64,
            Some((&top, rest)) => top as i64 - rest.iter().map(|&x| x as i64).sum::<i64>(),
        };
        if excess < n as i64 {
            out.push(n + total);
        }
        let lo = rev.last().map_or(2, |&i| 2 * i);
        for next in lo..=max.saturating_sub(n + total) {
            rev.push(next);
            extend(rev, n, max, out);
            rev.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), n, max, &mut out);
    out
}

fn sphere_oracle() -> Result<String, String> {
    for n in 1..=6 {
        let computed = sphere_poincare(deg(n), 24);
        let oracle = series_product_exterior(&oracle_generator_degrees(n, 24), 24)
            .map_err(|e| e.to_string())?;
        ensure(computed == oracle, || {
            format!("n = {n}: enumerated {computed} vs oracle {oracle}")
        })?;
    }
    Ok("π*S(n), n = 1..6, degrees 0..24 match the product formula".into())
}

// 3 -------------------------------------------------------------------------

fn random_word(rng: &mut StdRng, budget: u32) -> DeltaWord {
    let mut v = Vec::new();
    let mut left = budget;
    let len = rng.random_range(1..=3);
    for _ in 0..len {
        if left < 2 {
            break;
        }
        let i = rng.random_range(2..=left.min(12));
        v.push(i);
        left -= i;
    }
    if v.is_empty() {
        v.push(2);
    }
    word(&v)
}

fn confluence() -> Result<String, String> {
    let mut rng = StdRng::seed_from_u64(0x5eed_0003);
    let mut checked = 0;
    let mut nonzero = 0;
    while checked < 10_000 {
        let a = random_word(&mut rng, 14);
        let b = random_word(&mut rng, 30 - a.degree() - 2);
        let c = random_word(&mut rng, 30 - a.degree() - b.degree());
        if a.degree() + b.degree() + c.degree() > 30 {
            continue;
        }
        let (na, nb, nc) = (normalize(&a), normalize(&b), normalize(&c));
        let left = compose(&compose(&na, &nb), &nc);
        let right = compose(&na, &compose(&nb, &nc));
        ensure(left == right, || {
            format!("({a})({b})({c}): {left} vs {right}")
        })?;
        let whole = normalize(&a.concat(&b).concat(&c));
        ensure(whole == left, || {
            format!("({a})({b})({c}): direct {whole} vs {left}")
        })?;
        if !left.is_zero() {
            nonzero += 1;
        }
        checked += 1;
    }
    Ok(format!("{checked} triples agree ({nonzero} nonzero)"))
}

// 4 -------------------------------------------------------------------------

/// Orders computed once and frozen; the first two are the published values.
const ANNIHILATION_FIXTURES: &[(u32, u32, u32)] = &[
    (3, 1, 2),
    (4, 1, 2),
    (5, 1, 3),
    (6, 1, 2),
    (7, 1, 3),
    (8, 1, 3),
    (9, 1, 4),
    (10, 1, 2),
    (11, 1, 3),
    (12, 1, 3),
    (5, 2, 3),
    (6, 2, 3),
    (7, 2, 4),
    (8, 2, 3),
    (9, 2, 4),
    (10, 2, 4),
    (11, 2, 5),
    (12, 2, 3),
    (9, 3, 4),
    (10, 3, 4),
    (11, 3, 5),
    (12, 3, 4),
];

fn annihilation() -> Result<String, String> {
    let mut seen = 0;
    for t in 1..=3u32 {
        for i in (1u32 << t) + 1..=12 {
            let s = annihilation_order(i, t, default_cap(t))
                .map_err(|e| format!("i={i}, t={t}: {e}"))?;
            let expected = ANNIHILATION_FIXTURES
                .iter()
                .find(|&&(fi, ft, _)| fi == i && ft == t)
                .map(|&(_, _, s)| s)
                .ok_or_else(|| format!("no fixture for i={i}, t={t}"))?;
            ensure(s == expected, || {
                format!("i={i}, t={t}: got {s}, fixture {expected}")
            })?;
            seen += 1;
        }
    }
    Ok(format!("{seen} orders found and match fixtures"))
}

// 5 -------------------------------------------------------------------------

/// GF(2) rank of a family of sums of monomials.
fn rank<K: Ord + Clone>(rows: Vec<BTreeSet<K>>) -> usize {
    let mut pivots: Vec<(K, BTreeSet<K>)> = Vec::new();
    for mut row in rows {
        for (p, prow) in &pivots {
            if row.contains(p) {
                row = row.symmetric_difference(prow).cloned().collect();
            }
        }
        if let Some(p) = row.iter().next().cloned() {
            pivots.push((p, row));
        }
    }
    pivots.len()
}

fn monomial_set(x: &GammaElement<SphereGenerator>) -> BTreeSet<GammaMonomial<SphereGenerator>> {
    x.iter().cloned().collect()
}

fn theta_structure() -> Result<String, String> {
    let mut total = 0;
    for n in 3..=5 {
        let mut by_degree: BTreeMap<u32, Vec<SphereGenerator>> = BTreeMap::new();
        for g in sphere_generators(deg(n), 40) {
            by_degree.entry(g.degree()).or_default().push(g);
        }
        for (m, gens) in by_degree {
            let images: Vec<_> = gens
                .iter()
                .map(|g| {
                    let x = GammaElement::from(GammaMonomial::generator(g.clone()));
                    vartheta(&x).map(|y| monomial_set(&y.q_gamma()))
                })
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            for (g, img) in gens.iter().zip(&images) {
                ensure(!img.is_empty(), || format!("ϑ({g}) ≡ 0 mod decomposables"))?;
            }
            let r = rank(images);
            ensure(r == gens.len(), || {
                format!("n={n}, degree {m}: rank {r} < {}", gens.len())
            })?;
            total += gens.len();
        }
    }
    // n = 2: every basis monomial of degree >= 3 up to 40
    let gens = sphere_generators(deg(2), 40);
    let mut zero_checked = 0;
    for t in 3..=40 {
        for m in hopcalc::gamma::basis(&gens, t) {
            let y = vartheta(&GammaElement::from(m.clone())).map_err(|e| e.to_string())?;
            ensure(y.is_zero(), || format!("n=2: ϑ({m}) = {y}"))?;
            zero_checked += 1;
        }
    }
    Ok(format!(
        "ϑ injective on {total} Q_Γ generators (n = 3,4,5); zero on {zero_checked} classes of π*S(2)"
    ))
}

// 6 -------------------------------------------------------------------------

fn recount(m: &GammaMonomial<SphereGenerator>) -> (u64, u64) {
    let mut weight = 0;
    let mut degree = 0;
    for (g, e) in m.factors() {
        let len = g.word().indices().len() as u32;
        let d = g.source().get() as u64 + g.word().indices().iter().map(|&i| i as u64).sum::<u64>();
        weight += 1u64 << (len + e);
        degree += d << e;
    }
    (weight, degree)
}

fn e1_bigrading() -> Result<String, String> {
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    let (s_max, t_max) = (8u64, 16u32);
    let mut ops = 0;
    for trial in 0..20 {
        let count = rng.random_range(1..=4);
        let space =
            GradedVectorSpace::new((0..count).map(|k| (format!("w{k}"), rng.random_range(1..=6))))
                .map_err(|e| e.to_string())?;
        let page = e1_page(&space, s_max, t_max).map_err(|e| e.to_string())?;
        for ((s, t), basis) in page.entries() {
            ensure(t as u64 >= s, || {
                format!("trial {trial}: E¹_({s},{t}) nonzero")
            })?;
            for x in basis {
                ensure(recount(x) == (s, t as u64), || {
                    format!("trial {trial}: {x} miscounted")
                })?;
                for i in 2..=t {
                    let y = delta_on_e1(x, i).map_err(|e| e.to_string())?;
                    for out in y.iter() {
                        let got = recount(out);
                        ensure(got == (2 * s, (t + i) as u64), || {
                            format!(
                                "δ_{i}({x}) has term {out} at {got:?}, expected ({}, {})",
                                2 * s,
                                t + i
                            )
                        })?;
                    }
                    ops += 1;
                }
            }
        }
    }
    Ok(format!(
        "20 random W; t >= s everywhere; {ops} operations land in (2s, t+i)"
    ))
}

// 7 -------------------------------------------------------------------------

fn all_admissible(max: u32) -> Vec<DeltaWord> {
    fn rec(rev: &mut Vec<u32>, left: u32, out: &mut Vec<DeltaWord>) {
        let mut w = rev.clone();
        w.reverse();
        out.push(DeltaWord::new(w).unwrap());
        let lo = rev.last().map_or(2, |&i| 2 * i);
        for next in lo..=left {
            rev.push(next);
            rec(rev, left - next, out);
            rev.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), max, &mut out);
    out
}

fn roundtrip() -> Result<String, String> {
    let words = all_admissible(40);
    let mut checked = 0;
    for n in 1..=12 {
        for w in &words {
            if !w.is_applicable(deg(n)) {
                continue;
            }
            let a = delta_to_alpha(w, deg(n)).map_err(|e| format!("{w} at {n}: {e}"))?;
            let back = alpha_to_delta(&a, deg(n)).map_err(|e| format!("{a} at {n}: {e}"))?;
            ensure(&back == w, || format!("{w} -> {a} -> {back} at n = {n}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (word, degree) pairs round-trip"))
}

// 8 -------------------------------------------------------------------------

/// Monomials of exactly `degree` in the symbols declared so far.
fn chain_monomials(c: &ChainComplex, degree: u64) -> Vec<ChainMonomial> {
    let mut pool: Vec<(SymbolId, u32, u64)> = Vec::new();
    for s in c.symbols() {
        let id = c.symbol_id(&s.name).unwrap();
        let d = s.degree as u64;
        pool.push((id, 0, d));
        if d >= 2 {
            let mut e = 1;
            while d << e <= degree {
                pool.push((id, e, d << e));
                e += 1;
            }
        }
    }
    let mut out = Vec::new();
    fn rec(
        pool: &[(SymbolId, u32, u64)],
        start: usize,
        left: u64,
        cur: &mut ChainMonomial,
        out: &mut Vec<ChainMonomial>,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for k in start..pool.len() {
            let (id, e, d) = pool[k];
            if d <= left {
                cur.insert((id, e));
                rec(pool, k + 1, left - d, cur, out);
                cur.remove(&(id, e));
            }
        }
    }
    rec(&pool, 0, degree, &mut ChainMonomial::new(), &mut out);
    out
}

fn random_coeff(c: &ChainComplex, rng: &mut StdRng) -> ChainElement {
    let ring = c.ring();
    let mut m = ring.one();
    for v in 1..=ring.vars() {
        let p = rng.random_range(0..ring.trunc());
        match ring.var_power(v, p).unwrap().and_then(|x| ring.mul(&m, &x)) {
            Some(next) => m = next,
            None => return ChainElement::zero(),
        }
    }
    c.scalar(m)
}

fn random_element(c: &ChainComplex, degree: u64, rng: &mut StdRng) -> ChainElement {
    let monos = chain_monomials(c, degree);
    let mut out = ChainElement::zero();
    for m in monos {
        if rng.random_bool(0.4) {
            let coeff = random_coeff(c, rng);
            let term: ChainElement = std::iter::once(ChainTerm {
                coeff: c.ring().one(),
                chain: m,
            })
            .collect();
            out += c.mul(&coeff, &term);
        }
    }
    out
}

fn random_complex(rng: &mut StdRng) -> ChainComplex {
    let ring = TruncatedRing::new(rng.random_range(1..=2), rng.random_range(1..=4)).unwrap();
    let mut c = ChainComplex::new(ring);
    let count = rng.random_range(2..=4);
    let mut degrees: Vec<u32> = (0..count).map(|_| rng.random_range(1..=8)).collect();
    degrees.sort_unstable();
    for (k, d) in degrees.into_iter().enumerate() {
        // boundaries of boundaries are cycles
        let boundary = if d >= 2 && rng.random_bool(0.8) {
            c.boundary(&random_element(&c, d as u64, rng)) + cycles(&c, d as u64 - 1, rng)
        } else if d == 1 {
            random_coeff(&c, rng)
        } else {
            ChainElement::zero()
        };
        c.add_symbol(&format!("s{k}"), d, boundary).unwrap();
    }
    c
}

fn cycles(c: &ChainComplex, degree: u64, rng: &mut StdRng) -> ChainElement {
    let mut out = ChainElement::zero();
    for s in c.symbols() {
        if s.degree as u64 == degree && s.boundary.is_zero() && rng.random_bool(0.5) {
            out += c.generator(c.symbol_id(&s.name).unwrap());
        }
    }
    out
}

fn chain_calculus() -> Result<String, String> {
    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    let mut dd = 0;
    let mut rule7 = 0;
    for _ in 0..200 {
        let c = random_complex(&mut rng);
        for d in 1..=10 {
            let x = random_element(&c, d, &mut rng);
            let ddx = c.boundary(&c.boundary(&x));
            ensure(ddx.is_zero(), || {
                format!("∂∂({}) = {}", c.render(&x), c.render(&ddx))
            })?;
            dd += 1;
            if d >= 2 && !x.is_zero() {
                for k in 1..=8u64 {
                    let lhs = c.boundary(&c.gamma(k, &x).map_err(|e| e.to_string())?);
                    let rhs = c.mul(
                        &c.boundary(&x),
                        &c.gamma(k - 1, &x).map_err(|e| e.to_string())?,
                    );
                    ensure(lhs == rhs, || format!("∂γ_{k}({}) mismatch", c.render(&x)))?;
                    rule7 += 1;
                }
            }
        }
    }
    for n in 2..=8u32 {
        let mut c = ChainComplex::new(TruncatedRing::new(1, n).unwrap());
        c.add_symbol("x", 3, ChainElement::zero()).unwrap();
        let r = c
            .gamma2_nilpotence_order(&c.parse("e1*x").unwrap())
            .map_err(|e| e.to_string())?;
        let expected = (n as f64).log2().ceil() as u32;
        ensure(r == expected, || {
            format!("N = {n}: order {r}, expected {expected}")
        })?;
    }
    let mut nilcond = 0;
    for _ in 0..40 {
        let mut c = random_complex(&mut rng);
        let d = rng.random_range(3..=4);
        let boundary = c.boundary(&random_element(&c, d as u64, &mut rng))
            + cycles(&c, d as u64 - 1, &mut rng);
        let u = c.add_symbol("u", d, boundary).unwrap();
        let report = verify_nilcond(&c, u, 6).map_err(|e| e.to_string())?;
        ensure(report.all_hold(), || format!("nilcond failed: {report:?}"))?;
        nilcond += 1;
    }
    Ok(format!(
        "∂∂ = 0 on {dd} elements; ∂γ_k rule on {rule7} cases; nilpotence N = 2..8; nilcond r <= 6 on {nilcond} symbols"
    ))
}

// 9 -------------------------------------------------------------------------

fn corpus() -> Vec<Vec<String>> {
    let fx = |f: &str| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("tests/fixtures")
            .join(f)
            .to_string_lossy()
            .into_owned()
    };
    let mut cmds: Vec<Vec<String>> = Vec::new();
    let mut add = |args: &[&str]| cmds.push(args.iter().map(|s| s.to_string()).collect());
    for w in [
        "d4 d3",
        "d4 d4",
        "d5 d4",
        "d3 d2",
        "d6 d5",
        "d7 d4",
        "d2 d3 d4",
        "d9 d5 d2",
        "a1 a1 @3",
        "a2 a1 @5",
        "d12 d7 d3",
        "x1",
    ] {
        add(&["rewrite", w]);
    }
    add(&["--format", "json", "rewrite", "d7 d5 d3"]);
    add(&["--format", "csv", "rewrite", "d9 d7"]);
    add(&["rewrite", "d6 d3", "@4"]);
    for n in ["1", "2", "3", "4", "5"] {
        add(&["basis", n, "16"]);
        add(&["poincare", n, "20"]);
    }
    add(&["--format", "json", "basis", "4", "20"]);
    add(&["--format", "csv", "poincare", "3", "12"]);
    add(&["convert", "a1 a1 a2 @4"]);
    add(&["convert", "d8 d4 @5"]);
    for (i, t) in [
        ("3", "1"),
        ("4", "1"),
        ("9", "2"),
        ("12", "3"),
        ("d8 d4 d2", "2"),
        ("2", "1"),
    ] {
        add(&["theta-ann", i, t]);
    }
    add(&["theta-ann", "11", "3", "--cap", "4"]);
    add(&["--format", "json", "theta-ann", "10", "2"]);
    let (single, mixed, empty) = (fx("w_single.json"), fx("w_mixed.json"), fx("w_empty.json"));
    add(&["e1", &single, "2", "6"]);
    add(&["e1", &mixed, "4", "10"]);
    add(&["e1", &empty, "3", "5"]);
    add(&["--format", "json", "e1", &mixed, "3", "8"]);
    add(&["--format", "csv", "e1", &single, "4", "12"]);
    add(&["e1", &fx("w_bad.json"), "2", "6"]);
    add(&["nilpotence", &fx("chain_eps_x.json")]);
    add(&["nilpotence", &fx("chain_two.json")]);
    add(&["nilpotence", &fx("chain_unit.json")]);
    add(&["--format", "json", "nilpotence", &fx("chain_two.json")]);
    let nil = fx("chain_nilcond.json");
    add(&["nilcond", &nil, "--symbol", "u", "--r-max", "4"]);
    add(&[
        "--format", "json", "nilcond", &nil, "--symbol", "z", "--r-max", "3",
    ]);
    add(&[
        "--format", "csv", "nilcond", &nil, "--symbol", "u", "--r-max", "2",
    ]);
    cmds
}

fn cli_determinism() -> Result<String, String> {
    let bin = env!("CARGO_BIN_EXE_hopcalc");
    let cmds = corpus();
    ensure(cmds.len() == 50, || {
        format!("corpus has {} commands", cmds.len())
    })?;
    let run = |args: &[String]| {
        let out = Command::new(bin)
            .args(args)
            .output()
            .expect("spawn hopcalc");
        (out.status.code(), out.stdout, out.stderr)
    };
    for args in &cmds {
        let first = run(args);
        let second = run(args);
        ensure(first == second, || format!("differs across runs: {args:?}"))?;
    }
    Ok(format!(
        "{} commands byte-identical across two runs",
        cmds.len()
    ))
}

// ---------------------------------------------------------------------------

fn main() -> ExitCode {
    let criteria: [(u32, &str, Duration, Check); 9] = [
        (1, "anchored vanishings", Duration::from_secs(1), vanishings),
        (
            2,
            "sphere series oracle",
            Duration::from_secs(10),
            sphere_oracle,
        ),
        (3, "confluence", Duration::from_secs(60), confluence),
        (
            4,
            "annihilation orders",
            Duration::from_secs(120),
            annihilation,
        ),
        (5, "ϑ-structure", Duration::from_secs(30), theta_structure),
        (6, "E¹ bigrading", Duration::from_secs(30), e1_bigrading),
        (7, "δ/α roundtrip", Duration::from_secs(10), roundtrip),
        (8, "chain calculus", Duration::from_secs(30), chain_calculus),
        (
            9,
            "CLI determinism",
            Duration::from_secs(30),
            cli_determinism,
        ),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic".into());
                Err(format!("panicked: {msg}"))
            })
            .and_then(|detail| {
                let elapsed = start.elapsed();
                if elapsed > limit {
                    Err(format!("took {elapsed:.2?}, limit {limit:?}; {detail}"))
                } else {
                    Ok(detail)
                }
            });
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS criterion {id} ({name}) in {elapsed:.2?}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {id} ({name}) in {elapsed:.2?}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
