//! Acceptance battery: one PASS/FAIL line per criterion, exact comparisons only.
//!
//! The process fails when a criterion fails for a reason not listed in
//! `KNOWN_FAILURES`.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};

use num_bigint::BigInt;
use num_rational::BigRational;
use orthocat::catdata::{level_rank_check, CategoryTable};
use orthocat::cyclo::Cyclotomic;
use orthocat::roots::{enumerate_simples, quantum_group_levelset, CatSpec, Family, Sign, Weight};
use orthocat::surgery::{self, PlumbingGraph};
use orthocat::verlinde::refinement_sum_check;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Criteria expected to fail, with the reason printed next to the FAIL line.
const KNOWN_FAILURES: &[(u32, &str)] =
    &[(4, "stated A_- value (-1)^sum(b) (-i)^n is off by a sign for even n; exact data give -(-1)^sum(b) i^n")];

const FUSION_SAMPLE: usize = 500;
const VERLINDE_GENERA: u32 = 3;
const VANISHING_VERTICES: usize = 4;

struct Outcome {
    id: u32,
    title: &'static str,
    passed: bool,
    detail: String,
}

fn listed_specs() -> Vec<CatSpec> {
    let mut specs = Vec::new();
    for n in 1..=3 {
        for k in 1..=2 {
            specs.push(CatSpec::b(n, k).unwrap());
        }
    }
    for n in 2..=3 {
        for k in 2..=3 {
            specs.push(CatSpec::d(n, k).unwrap());
        }
    }
    specs
}

fn b_parity(b: &Weight) -> i64 {
    b.signed().iter().map(|d| (d - 1).div_euclid(2)).sum::<i64>().rem_euclid(2)
}

fn sign_vectors(n: usize) -> Vec<Vec<i64>> {
    (0u32..1 << n).map(|bits| (0..n).map(|i| if bits >> i & 1 == 1 { -1 } else { 1 }).collect()).collect()
}

fn summarize(failures: &[String], checked: usize) -> (bool, String) {
    if failures.is_empty() {
        (true, format!("{checked} checked"))
    } else {
        let shown: Vec<&str> = failures.iter().take(6).map(String::as_str).collect();
        (false, format!("{} of {checked} failed: {}", failures.len(), shown.join("; ")))
    }
}

fn qdim_cross_oracle(tables: &[CategoryTable]) -> (bool, String) {
    let mut failures = Vec::new();
    let mut checked = 0;
    for t in tables {
        for w in t.simples().items() {
            checked += 1;
            let cat = t.category();
            if cat.qdim_sum(w).unwrap() != cat.qdim_product(w).unwrap() {
                failures.push(format!("{} {w}", t.spec()));
            }
        }
    }
    summarize(&failures, checked)
}

fn dim_spinor_closed_form(tables: &[CategoryTable]) -> (bool, String) {
    let mut failures = Vec::new();
    let mut checked = 0;
    for t in tables.iter().filter(|t| t.spec().family() == Family::B) {
        let cat = t.category();
        let n = t.spec().n() as i64;
        let closed =
            (1..=n).fold(Cyclotomic::one(cat.field()), |acc, i| acc * (cat.v_pow(2 * i - 1) + cat.v_pow(1 - 2 * i)));
        checked += 1;
        if cat.qdim_sum(&Weight::spinor(t.spec().n(), Sign::Plus)).unwrap() != closed {
            failures.push(t.spec().to_string());
        }
    }
    summarize(&failures, checked)
}

fn twist_closed_forms(tables: &[CategoryTable]) -> (bool, String) {
    let mut failures = Vec::new();
    for t in tables {
        let cat = t.category();
        let (n, k) = (t.spec().n(), t.spec().k() as i64);
        let one = Cyclotomic::one(cat.field());
        match t.spec().family() {
            Family::B => {
                let ni = n as i64;
                // v^{n^2 + n/2} with v = zeta^4
                if cat.twist(&Weight::spinor(n, Sign::Plus)).unwrap() != cat.zeta(4 * ni * ni + 2 * ni) {
                    failures.push(format!("{} t_S", t.spec()));
                }
                let j = t.invertible_object().unwrap();
                if cat.twist(&j).unwrap() != -one.clone() || cat.qdim_sum(&j).unwrap() != one {
                    failures.push(format!("{} t_J", t.spec()));
                }
            }
            Family::D => {
                let j = Weight::from_parts(&[2 * k], n).unwrap();
                if cat.twist(&j).unwrap() != one || cat.qdim_sum(&j).unwrap() != one {
                    failures.push(format!("{} t_(2k)", t.spec()));
                }
            }
        }
    }
    summarize(&failures, tables.len())
}

fn encircling_values(tables: &[CategoryTable]) -> (bool, String) {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut derived_ok = true;
    for t in tables {
        let cat = t.category();
        let n = t.spec().n() as i64;
        let i = cat.imaginary_unit();
        for b in t.simples().items().iter().filter(|w| w.grade() == 1) {
            let sign = Cyclotomic::from_int(cat.field(), 1 - 2 * b_parity(b));
            let dim = &t.dims()[t.index(b).unwrap()];
            let ratio = |a: &Weight| cat.smatrix_entry(b, a).unwrap() / dim.clone();
            let k2 = 2 * t.spec().k() as i64;
            match t.spec().family() {
                Family::B => {
                    checked += 1;
                    let a = Weight::new(vec![k2; n as usize], Sign::Plus).unwrap();
                    if ratio(&a) != sign {
                        failures.push(format!("{} {b}", t.spec()));
                    }
                }
                Family::D => {
                    checked += 2;
                    let plus = ratio(&Weight::new(vec![k2; n as usize], Sign::Plus).unwrap());
                    let minus = ratio(&Weight::new(vec![k2; n as usize], Sign::Minus).unwrap());
                    if plus != &sign * &i.pow(n).unwrap() {
                        failures.push(format!("{} {b} A_+", t.spec()));
                    }
                    if minus != &sign * &(-i.clone()).pow(n).unwrap() {
                        failures.push(format!("{} {b} A_-", t.spec()));
                    }
                    derived_ok &= minus == -(&sign * &i.pow(n).unwrap());
                }
            }
        }
    }
    let (passed, mut detail) = summarize(&failures, checked);
    if !passed {
        detail.push_str(&format!("; A_- equals -(-1)^sum(b) i^n on every spinor: {derived_ok}"));
    }
    (passed, detail)
}

fn spinor_identities(tables: &[CategoryTable]) -> (bool, String) {
    let mut failures = Vec::new();
    let mut chirality_notes = 0;
    let mut checked = 0;
    for t in tables {
        let cat = t.category();
        let n = t.spec().n();
        let spinor_dim = cat.qdim_sum(&Weight::spinor(n, Sign::Plus)).unwrap();
        let both_dim = match t.spec().family() {
            Family::B => spinor_dim.clone(),
            Family::D => spinor_dim.clone() + cat.qdim_sum(&Weight::spinor(n, Sign::Minus)).unwrap(),
        };
        let t_s = cat.zeta(cat.twist_exponent(&Weight::spinor(n, Sign::Plus)).unwrap());
        let t_s_inv = t_s.inv().unwrap();
        for lambda in t.simples().items().iter().filter(|w| w.grade() == 0) {
            checked += 1;
            let base = lambda.signed();
            let t_l = cat.twist(lambda).unwrap();
            let t_l_inv = t_l.inv().unwrap();
            let dim_l = cat.qdim_sum(lambda).unwrap();
            let term = |s: &[i64]| {
                let x: Vec<i64> = base.iter().zip(s).map(|(a, b)| a + b).collect();
                let dim = cat.qdim_of_vector(&x);
                let tx = cat.zeta(cat.twist_exponent_of_vector(&x));
                let tw = (&t_s_inv * &t_l_inv * &tx - &t_s * &t_l * tx.inv().unwrap()) * &dim;
                (dim, tw)
            };
            let zero = Cyclotomic::zero(cat.field());
            let (mut dims, mut twists) = (zero.clone(), zero.clone());
            let (mut even_dims, mut even_twists) = (zero.clone(), zero.clone());
            for s in sign_vectors(n) {
                let (d, tw) = term(&s);
                if s.iter().filter(|&&x| x < 0).count() % 2 == 0 {
                    even_dims = even_dims + &d;
                    even_twists = even_twists + &tw;
                }
                dims = dims + d;
                twists = twists + tw;
            }
            if dims != &both_dim * &dim_l || !twists.is_zero() {
                failures.push(format!("{} {lambda}", t.spec()));
            }
            if t.spec().family() == Family::D {
                if even_dims != &spinor_dim * &dim_l {
                    failures.push(format!("{} {lambda} S_+ multiplicativity", t.spec()));
                }
                if !even_twists.is_zero() {
                    chirality_notes += 1;
                }
            }
        }
    }
    let (passed, mut detail) = summarize(&failures, checked);
    detail.push_str(&format!(
        "; twist identity over the full sign hypercube; {chirality_notes} single-chirality twist sums nonzero (non-self-dual objects, informational)"
    ));
    (passed, detail)
}

fn modularity(tables: &[CategoryTable]) -> (bool, String) {
    let mut failures = Vec::new();
    for t in tables {
        let n = t.spec().n();
        if t.transparent_objects() != vec![Weight::empty(n)] {
            failures.push(format!("{} transparent set", t.spec()));
        }
        if t.spec().family() == Family::D {
            let j = Weight::from_parts(&[2 * t.spec().k() as i64], n).unwrap();
            let ji = t.index(&j).unwrap();
            let centralizes = |grade: u8| {
                t.simples()
                    .items()
                    .iter()
                    .enumerate()
                    .filter(|(_, w)| w.grade() == grade)
                    .all(|(m, _)| t.s(ji, m) == &(&t.dims()[ji] * &t.dims()[m]))
            };
            if !centralizes(0) || centralizes(1) {
                failures.push(format!("{} {j} grading", t.spec()));
            }
        }
    }
    summarize(&failures, tables.len())
}

fn fusion(tables: &[CategoryTable]) -> (bool, String) {
    let mut failures = Vec::new();
    let mut triples = 0;
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for t in tables {
        let full = matches!((t.spec().family(), t.spec().n(), t.spec().k()), (Family::B, 1, 1) | (Family::D, 2, 2));
        let len = t.len();
        if full {
            for a in 0..len {
                for b in 0..len {
                    triples += len;
                    if let Err(e) = t.fusion_row(a, b) {
                        failures.push(format!("{} {e}", t.spec()));
                    }
                }
            }
        } else {
            let items = t.simples().items();
            for _ in 0..FUSION_SAMPLE {
                let (a, b, c) = (rng.gen_range(0..len), rng.gen_range(0..len), rng.gen_range(0..len));
                triples += 1;
                if let Err(e) = t.fusion_coeff(&items[a], &items[b], &items[c]) {
                    failures.push(format!("{} {e}", t.spec()));
                }
            }
        }
        let spinors: Vec<(Weight, bool)> = match t.spec().family() {
            Family::B => vec![(Weight::spinor(t.spec().n(), Sign::Plus), false)],
            Family::D => vec![
                (Weight::spinor(t.spec().n(), Sign::Plus), false),
                (Weight::spinor(t.spec().n(), Sign::Minus), true),
            ],
        };
        for lambda in t.simples().items().iter().filter(|w| w.grade() == 0) {
            for (s, odd) in &spinors {
                let row = t.fusion_row(t.index(lambda).unwrap(), t.index(s).unwrap()).unwrap();
                let expected: Vec<BigInt> = t
                    .simples()
                    .items()
                    .iter()
                    .map(|w| {
                        let diff: Vec<i64> = w.signed().iter().zip(lambda.signed()).map(|(a, b)| a - b).collect();
                        let is_shift = w.grade() == 1 && diff.iter().all(|d| d.abs() == 1);
                        let minus = diff.iter().filter(|&&d| d < 0).count() % 2 == 1;
                        let chirality = t.spec().family() == Family::B || minus == *odd;
                        BigInt::from(u8::from(is_shift && chirality))
                    })
                    .collect();
                if row != expected {
                    failures.push(format!("{} {lambda} x {s}", t.spec()));
                }
            }
        }
    }
    summarize(&failures, triples)
}

fn level_sets(specs: &[CatSpec]) -> (bool, String) {
    let mut failures = Vec::new();
    for spec in specs {
        let a: BTreeSet<Weight> = quantum_group_levelset(spec).unwrap().into_iter().collect();
        let b: BTreeSet<Weight> = enumerate_simples(spec).unwrap().items().iter().cloned().collect();
        if a != b {
            failures.push(spec.to_string());
        }
    }
    summarize(&failures, specs.len())
}

fn verlinde(tables: &[CategoryTable]) -> (bool, String) {
    let mut failures = Vec::new();
    for t in tables {
        for g in 1..=VERLINDE_GENERA {
            match refinement_sum_check(t, g) {
                Ok(r) => {
                    if !r.passed || (g == 1 && r.ordinary != BigInt::from(t.len())) {
                        failures.push(format!("{} g={g}", t.spec()));
                    }
                }
                Err(e) => failures.push(format!("{} g={g}: {e}", t.spec())),
            }
        }
    }
    summarize(&failures, tables.len() * VERLINDE_GENERA as usize)
}

fn surgery_suite(tables: &[CategoryTable]) -> (bool, String) {
    let mut failures = Vec::new();
    let forests = surgery::sample_forests();
    let mut subsets = 0;
    for t in tables {
        let tau_empty = surgery::rt_invariant(t, &PlumbingGraph::empty()).unwrap();
        if !tau_empty.is_one() {
            failures.push(format!("{} empty graph", t.spec()));
        }
        for (name, g) in &forests {
            let d = surgery::decomposition(t, g).unwrap();
            if !d.holds {
                failures.push(format!("{} {name} decomposition", t.spec()));
            }
            for (positive, unknot) in [(true, t.u_plus()), (false, t.u_minus())] {
                let bigger = g.blow_up(positive);
                let bracket_ok =
                    surgery::kirby_bracket(t, &bigger).unwrap() == surgery::kirby_bracket(t, g).unwrap() * unknot;
                if !bracket_ok || surgery::rt_invariant(t, &bigger).unwrap() != d.invariant {
                    failures.push(format!("{} {name} blow-up", t.spec()));
                }
            }
            if g.len() <= VANISHING_VERTICES {
                let v = surgery::vanishing_check(t, g).unwrap();
                subsets += 1 << g.len();
                if !v.passed() {
                    failures.push(format!("{} {name} non-vanishing {:?}", t.spec(), v.violations));
                }
            }
        }
    }
    let (passed, detail) = summarize(&failures, tables.len() * forests.len());
    (passed, format!("{detail} (spec, forest) pairs; {subsets} gradings in the vanishing sweep"))
}

fn level_rank() -> (bool, String) {
    let mut failures = Vec::new();
    let mut boundary = Vec::new();
    for spec in [CatSpec::d(2, 3).unwrap(), CatSpec::d(3, 2).unwrap()] {
        let report = level_rank_check::<BigRational>(&spec).unwrap();
        if !report.interior_ok() {
            failures.push(spec.to_string());
        }
        for e in report.boundary_mismatches() {
            boundary.push(format!("{}:{}~{}", spec, e.weight, e.dual));
        }
    }
    let (passed, detail) = summarize(&failures, 2);
    (passed, format!("{detail}; boundary mismatches listed: {}", boundary.join(" ")))
}

fn determinism() -> (bool, String) {
    let mut failures = Vec::new();
    let mut runs = 0;
    for (spec, format) in [(["B", "2", "1"], "json"), (["D", "2", "2"], "csv")] {
        let mut outputs = Vec::new();
        for _ in 0..2 {
            let dir = tempfile::tempdir().unwrap();
            let out = dir.path().join("table");
            let status = Command::new(env!("CARGO_BIN_EXE_orthocat"))
                .args(["table", spec[0], spec[1], spec[2], "--format", format, "--cache-dir"])
                .arg(dir.path().join("cache"))
                .arg("--out")
                .arg(&out)
                .status()
                .unwrap();
            runs += 1;
            if !status.success() {
                failures.push(format!("{spec:?} exit {status}"));
            }
            outputs.push(std::fs::read(&out).unwrap_or_default());
        }
        if outputs[0] != outputs[1] || outputs[0].is_empty() {
            failures.push(format!("{spec:?} {format}"));
        }
    }
    summarize(&failures, runs)
}

fn main() -> ExitCode {
    let specs = listed_specs();
    let tables: Vec<CategoryTable> = specs.iter().map(|&s| CategoryTable::build(s).unwrap()).collect();
    let b_small: Vec<CategoryTable> =
        specs.iter().filter(|s| s.family() == Family::B).map(|&s| CategoryTable::build(s).unwrap()).collect();
    let fusion_tables: Vec<CategoryTable> = {
        let mut v: Vec<CategoryTable> = specs.iter().map(|&s| CategoryTable::build(s).unwrap()).collect();
        v.push(CategoryTable::build(CatSpec::d(2, 2).unwrap()).unwrap());
        v.dedup_by(|a, b| a.spec() == b.spec());
        v
    };

    let outcomes = vec![
        ("qdim_sum = qdim_product on every simple", qdim_cross_oracle(&tables)),
        ("dim S closed form (B, n <= 3)", dim_spinor_closed_form(&b_small)),
        ("t_S, t_J and t_(2k) closed forms", twist_closed_forms(&tables)),
        ("spinor encircling by A, A_+, A_-", encircling_values(&tables)),
        ("twist identity and multiplicativity on grade 0", spinor_identities(&tables)),
        ("modularity and grade-0 transparency of (2k)", modularity(&tables)),
        ("fusion integrality and spinor decompositions", fusion(&fusion_tables)),
        ("quantum-group level set = simple set", level_sets(&specs)),
        ("Verlinde integrality and refinement sums", verlinde(&tables)),
        ("surgery normalization, blow-ups, vanishing, decomposition", surgery_suite(&tables)),
        ("level-rank matching on the interior", level_rank()),
        ("table output is byte-for-byte deterministic", determinism()),
    ]
    .into_iter()
    .enumerate()
    .map(|(i, (title, (passed, detail)))| Outcome { id: i as u32 + 1, title, passed, detail })
    .collect::<Vec<_>>();

    let mut unexpected = 0;
    for o in &outcomes {
        let known = KNOWN_FAILURES.iter().find(|(id, _)| *id == o.id);
        println!("{} {:>2} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.id, o.title, o.detail);
        match (o.passed, known) {
            (false, Some((_, reason))) => println!("        known: {reason}"),
            (false, None) => unexpected += 1,
            (true, Some(_)) => println!("        listed as a known failure but passed"),
            (true, None) => {}
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    println!("{passed}/{} criteria passed, {unexpected} unexpected failure(s)", outcomes.len());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
