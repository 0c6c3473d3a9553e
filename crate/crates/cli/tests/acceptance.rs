//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process fails when
//! any criterion fails. Expected values come from the small oracles below, written
//! independently of the library code they check.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use regwt::{AnalysisRecord, CatalogEntry};
use regwt_core::duality::{check_dual_type_props_in, classify, dual_of, unclassified_phi_duals, PhiPool};
use regwt_core::family::FamilyParams;
use regwt_core::lattice::{lemma_failures, omega};
use regwt_core::orbifold::{
    c_hat_exponent, constant_integer, is_dual_pair, orbifold_poincare, orbifold_poincare_verbatim,
    restriction_identity, DiagonalGroup,
};
use regwt_core::decomposition::root_multiset;
use regwt_core::rings::{exceptional_length, milnor_check_presentation, verify_theorem_i, RingPresentation};
use regwt_core::{enumerate_regular, WeightSystem};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(t < limit, || format!("{what} took {t:.2?}, limit {limit:?}"))
}

// Oracles.

/// `∏(1 - T^{h-a}) / ∏(1 - T^a)` as a power series, `None` unless it is a polynomial
/// with nonnegative coefficients.
fn chi_oracle(a: [u64; 3], h: u64) -> Option<Vec<i64>> {
    let len = (3 * h + 1) as usize;
    let mut c = vec![0i64; len];
    c[0] = 1;
    for &ai in &a {
        let k = (h - ai) as usize;
        for n in (k..len).rev() {
            c[n] -= c[n - k];
        }
    }
    for &ai in &a {
        let k = ai as usize;
        for n in k..len {
            c[n] += c[n - k];
        }
    }
    let deg: i64 = a.iter().map(|&x| h as i64 - 2 * x as i64).sum();
    if deg < 0 || c[deg as usize + 1..].iter().any(|&x| x != 0) || c.iter().any(|&x| x < 0) {
        return None;
    }
    c.truncate(deg as usize + 1);
    Some(c)
}

fn mu_oracle(a: [u64; 3], h: u64) -> Option<u64> {
    let (mut num, mut den) = (1u128, 1u128);
    for &x in &a {
        num *= (h - x) as u128;
        den *= x as u128;
    }
    (num % den == 0).then(|| (num / den) as u64)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(v: &[u64]) -> u64 {
    v.iter().fold(1, |l, &x| l / gcd(l, x) * x)
}

fn moebius(mut n: u64) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn galois_closed(exponents: &[i64], h: u64) -> bool {
    let h = h as i64;
    let base: BTreeMap<i64, usize> = exponents.iter().fold(BTreeMap::new(), |mut m, &e| {
        *m.entry(e.rem_euclid(h)).or_default() += 1;
        m
    });
    (1..h).filter(|&k| gcd(k as u64, h as u64) == 1).all(|k| {
        let moved = exponents.iter().fold(BTreeMap::new(), |mut m, &e| {
            *m.entry((k * e).rem_euclid(h)).or_default() += 1;
            m
        });
        moved == base
    })
}

fn regular(h_max: u64) -> Vec<WeightSystem> {
    (2..=h_max).flat_map(enumerate_regular).collect()
}

fn dual_type(h_max: u64) -> Vec<WeightSystem> {
    regular(h_max)
        .into_iter()
        .filter(|w| !classify(w).unwrap().is_empty())
        .collect()
}

fn ws(a: [u64; 3], h: u64) -> WeightSystem {
    WeightSystem::new(a, h).unwrap()
}

fn regwt(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_regwt")).args(args).output().unwrap()
}

// Criteria.

fn c1_analyze_e12() -> Outcome {
    let start = Instant::now();
    let out = regwt(&["analyze", "6", "14", "21", "42", "--json"]);
    let t = start.elapsed();
    ensure(out.status.code() == Some(0), || format!("exit {:?}", out.status.code()))?;
    let r: AnalysisRecord = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let inv = r.invariants.as_ref().ok_or("not regular")?;
    ensure(r.regular, || "regular: false".into())?;
    ensure(inv.mu == 12 && mu_oracle([6, 14, 21], 42) == Some(12), || format!("μ = {}", inv.mu))?;
    ensure(inv.epsilon == -1, || format!("ε = {}", inv.epsilon))?;
    ensure(inv.genus == 0 && inv.signature.alphas == [2, 3, 7], || format!("{:?}", inv.signature))?;
    let family = FamilyParams::I { p1: 2, p2: 3, p3: 7 };
    ensure(family.signature_row() == [2, 3, 7], || "family row".into())?;
    ensure(r.dual.as_ref().map(|d| d.weights) == Some([6, 14, 21]), || format!("dual {:?}", r.dual))?;
    let expected: BTreeMap<u64, i64> = (1..=42u64)
        .filter(|d| 42 % d == 0)
        .map(|d| (d, moebius(42 / d)))
        .filter(|&(_, e)| e != 0)
        .collect();
    ensure(inv.cyclotomic == expected, || format!("e(d) = {:?}", inv.cyclotomic))?;
    let chi = chi_oracle([6, 14, 21], 42).unwrap();
    ensure(inv.chi.iter().map(|&c| c as i64).eq(chi.iter().copied()), || "χ_W".into())?;
    ensure(r.verifications.all_passed(), || format!("{:?}", r.verifications))?;
    within(t, Duration::from_secs(1), "analyze")?;
    Ok(format!("{t:.2?}"))
}

fn c2_regularity_sweep() -> Outcome {
    let start = Instant::now();
    let listed = regular(40);
    let mut scanned = Vec::new();
    for h in 2..=40u64 {
        for a in 1..h {
            for b in a..h {
                for c in b..h {
                    if gcd(gcd(gcd(a, b), c), h) == 1 && chi_oracle([a, b, c], h).is_some() {
                        scanned.push((h, [a, b, c]));
                    }
                }
            }
        }
    }
    let mut keys: Vec<(u64, [u64; 3])> = listed.iter().map(|w| (w.h(), w.sorted_weights())).collect();
    keys.sort();
    ensure(keys == scanned, || format!("enumeration {} vs scan {}", keys.len(), scanned.len()))?;
    for w in &listed {
        let d = w.require_regular().map_err(|e| e.to_string())?;
        let m = &d.exponents;
        let sym = (0..m.len()).all(|i| m[i] + m[m.len() - 1 - i] == w.h() as i64);
        ensure(sym, || format!("{w}: exponent symmetry"))?;
        let mu = mu_oracle(w.weights(), w.h());
        let chi1: i64 = d.chi.to_i64s().unwrap().iter().sum();
        ensure(mu == Some(d.mu) && chi1 == d.mu as i64, || format!("{w}: μ"))?;
        ensure(galois_closed(m, w.h()), || format!("{w}: roots not Galois-closed"))?;
        let roots = root_multiset(w).map_err(|e| e.to_string())?;
        ensure(roots.is_galois_closed(), || format!("{w}: library Galois check"))?;
    }
    let t = start.elapsed();
    within(t, Duration::from_secs(60), "sweep")?;
    Ok(format!("{} systems, {t:.2?}", listed.len()))
}

fn c3_restriction() -> Outcome {
    let start = Instant::now();
    let list = regular(20);
    for w in &list {
        ensure(restriction_identity(w).map_err(|e| e.to_string())?, || format!("{w}"))?;
    }
    let t = start.elapsed();
    within(t, Duration::from_secs(120), "restriction sweep")?;
    Ok(format!("{} systems, {t:.2?}", list.len()))
}

fn c4_duality() -> Outcome {
    let start = Instant::now();
    let list = dual_type(60);
    let mut pools: BTreeMap<u64, PhiPool> = BTreeMap::new();
    let mut orbifold_count = 0;
    for w in &list {
        let pool = match pools.get(&w.h()) {
            Some(p) => p,
            None => pools.entry(w.h()).or_insert(PhiPool::new(w.h()).map_err(|e| e.to_string())?),
        };
        let r = check_dual_type_props_in(w, pool).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{w}: {:?}", r.failures()))?;
        if w.h() <= 30 {
            let d = dual_of(w).map_err(|e| e.to_string())?;
            ensure(is_dual_pair(w, &d).map_err(|e| e.to_string())?, || format!("{w}: orbifold identity"))?;
            orbifold_count += 1;
        }
    }
    let unclassified = unclassified_phi_duals(60).map_err(|e| e.to_string())?;
    let t = start.elapsed();
    within(t, Duration::from_secs(600), "duality suite")?;
    Ok(format!(
        "{} systems, orbifold identity on {orbifold_count}, {} unclassified φ*-matches (first: {}), {t:.2?}",
        list.len(),
        unclassified.len(),
        unclassified.iter().take(3).map(|w| format!("({w})")).collect::<Vec<_>>().join(" ")
    ))
}

fn c5_lemma() -> Outcome {
    let list = dual_type(60);
    for w in &list {
        let t = classify(w).unwrap().remove(0);
        let p = omega(&t.family_weights, &t).map_err(|e| format!("{w}: {e}"))?;
        let f = lemma_failures(&p);
        ensure(f.is_empty(), || format!("{w}: {f:?}"))?;
        let deg = p.lattice.degree(&p.omega) as u128;
        let alpha = lcm(&t.family.signature_row()) as u128;
        let prod: u128 = w.weights().iter().map(|&a| a as u128).product();
        ensure(deg * prod == w.h() as u128 * alpha, || format!("{w}: deg ω = {deg}"))?;
    }
    Ok(format!("{} systems", list.len()))
}

fn exemplars() -> Vec<(FamilyParams, [u64; 3], u64)> {
    vec![
        (FamilyParams::I { p1: 2, p2: 3, p3: 5 }, [15, 10, 6], 30),
        (FamilyParams::I { p1: 2, p2: 3, p3: 7 }, [21, 14, 6], 42),
        (FamilyParams::II { p1: 3, p2: 2, p3: 8 }, [8, 12, 3], 24),
        (FamilyParams::III { p1: 2, p2: 5, q2: 1, q3: 2 }, [5, 2, 4], 10),
        (FamilyParams::IV { p1: 2, p2: 4, p3: 8 }, [4, 2, 3], 8),
        (FamilyParams::V { k: 2, l: 2, m: 3 }, [4, 5, 3], 13),
    ]
}

fn exemplar_data(f: &FamilyParams, a: [u64; 3], h: u64) -> Result<regwt_core::duality::DualTypeData, String> {
    ensure(f.weights() == (a, h), || format!("{f} gives {:?}", f.weights()))?;
    classify(&ws(a, h))
        .map_err(|e| e.to_string())?
        .into_iter()
        .find(|t| t.family == *f)
        .ok_or_else(|| format!("{f} not among the classifications of ({a:?};{h})"))
}

fn c6_theorem() -> Outcome {
    let limit = Duration::from_secs(30);
    let mut slowest = Duration::ZERO;
    for (f, a, h) in exemplars() {
        let t = exemplar_data(&f, a, h)?;
        let start = Instant::now();
        let r = verify_theorem_i(&t.family_weights, &t, 2 * h as usize).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{f}: {:?}", r.witnesses))?;
        within(start.elapsed(), limit, &f.to_string())?;
    }
    let list = dual_type(60);
    for w in &list {
        let t = classify(w).unwrap().remove(0);
        let start = Instant::now();
        let r = verify_theorem_i(&t.family_weights, &t, 2 * w.h() as usize).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{w}: {:?}", r.witnesses))?;
        let el = start.elapsed();
        within(el, limit, &w.to_string())?;
        slowest = slowest.max(el);
    }
    Ok(format!("6 exemplars and {} systems, slowest {slowest:.2?}", list.len()))
}

fn c7_milnor() -> Outcome {
    for (f, a, h) in exemplars() {
        let t = exemplar_data(&f, a, h)?;
        let p = omega(&t.family_weights, &t).map_err(|e| e.to_string())?;
        let pres = RingPresentation::new(&t, &p).map_err(|e| e.to_string())?;
        let r = milnor_check_presentation(&pres, &t.family_weights).map_err(|e| e.to_string())?;
        let chi = chi_oracle(a, h).unwrap();
        let head: Vec<i64> = r.dims.iter().take(chi.len()).map(|&d| d as i64).collect();
        let tail_zero = r.dims[chi.len()..].iter().all(|&d| d == 0);
        ensure(r.passed && head == chi && tail_zero, || format!("{f}: {:?}", r.dims))?;
        ensure(Some(r.total) == mu_oracle(a, h), || format!("{f}: total {}", r.total))?;
    }
    Ok(String::from("6 exemplars"))
}

fn c8_exceptional() -> Outcome {
    let e12 = exceptional_length(&ws([6, 14, 21], 42)).map_err(|e| e.to_string())?;
    let e14 = exceptional_length(&ws([3, 8, 12], 24)).map_err(|e| e.to_string())?;
    ensure(e12.length == 12 && e14.length == 10, || format!("E12 {}, E14 {}", e12.length, e14.length))?;
    let mut n = 0;
    for w in dual_type(60).into_iter().filter(|w| w.epsilon() < 0) {
        let d = dual_of(&w).map_err(|e| e.to_string())?;
        let r = exceptional_length(&w).map_err(|e| e.to_string())?;
        let mu = mu_oracle(d.weights(), d.h());
        ensure(Some(r.length) == mu, || format!("{w}: {} vs μ_W* {mu:?}", r.length))?;
        n += 1;
    }
    Ok(format!("{n} systems with ε < 0"))
}

fn c9_a1() -> Outcome {
    let a1 = ws([1, 1, 1], 2);
    let g0 = DiagonalGroup::principal(&a1);
    ensure(g0.order() == 2, || format!("|G0| = {}", g0.order()))?;
    let fast = orbifold_poincare(&a1, &g0).map_err(|e| e.to_string())?;
    let verbatim = orbifold_poincare_verbatim(&a1, &g0).map_err(|e| e.to_string())?;
    ensure(constant_integer(&fast) == Some(-1), || format!("χ(W, G0) = {}", fast.value))?;
    let minus_one = regwt_core::arith::BiRational::one(fast.unit(), &regwt_core::arith::CycloField::new(2))
        .scale(&regwt_core::arith::CycloField::new(2).integer(-1));
    let same = verbatim.value.try_eq(&minus_one).map_err(|e| e.to_string())?;
    ensure(same, || format!("verbatim {}", verbatim.value))?;
    ensure(c_hat_exponent(&a1) == 0, || "ĉ ≠ 0".into())?;
    ensure(is_dual_pair(&a1, &a1).map_err(|e| e.to_string())?, || "duality identity".into())?;
    Ok(String::from("χ(W, G0) = -1, ĉ = 0"))
}

fn c10_catalog() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut files = Vec::new();
    for (i, jobs) in ["1", "4", "1"].iter().enumerate() {
        let path = dir.path().join(format!("catalog{i}.jsonl"));
        let out = regwt(&["enumerate", "--h-max", "24", "--dual-only", "--jobs", jobs, "--out", path.to_str().unwrap()]);
        ensure(out.status.code() == Some(0), || format!("exit {:?}", out.status.code()))?;
        files.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    ensure(files[0] == files[1] && files[0] == files[2], || "catalog differs between runs".into())?;
    let text = String::from_utf8(files.remove(0)).map_err(|e| e.to_string())?;
    let entries: Vec<CatalogEntry> = text
        .lines()
        .map(serde_json::from_str)
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let link = |k: &str| entries.iter().find(|e| e.key == k).and_then(|e| e.dual_key.clone());
    ensure(link("3,8,12;24").as_deref() == Some("6,8,9;24"), || "E14 link".into())?;
    ensure(link("6,8,9;24").as_deref() == Some("3,8,12;24"), || "Q10 link".into())?;
    Ok(format!("{} entries, identical over 3 runs", entries.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("analyze (6,14,21;42)", c1_analyze_e12),
        ("regularity sweep h <= 40", c2_regularity_sweep),
        ("restriction identity h <= 20", c3_restriction),
        ("duality suite h <= 60", c4_duality),
        ("ω_W lemma suite h <= 60", c5_lemma),
        ("graded ring presentation, N = 2h", c6_theorem),
        ("Milnor algebra of the exemplars", c7_milnor),
        ("exceptional collection length", c8_exceptional),
        ("A1 orbifold value", c9_a1),
        ("catalog cross-links and determinism", c10_catalog),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
