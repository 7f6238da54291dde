use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::catdata::{level_rank_check, CategoryTable, SpinorKind};
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::roots::{quantum_group_levelset, CatSpec, Family, Sign, Weight, MAX_RANK};
use crate::surgery;
use crate::verlinde::refinement_sum_check;

/// Number of fusion triples sampled when a full sweep is too large.
const FUSION_SAMPLE: usize = 500;
/// Simple-set size up to which fusion is swept over every triple.
const FUSION_FULL_SWEEP: usize = 25;
const VERLINDE_GENERA: u32 = 3;
const VANISHING_VERTICES: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteCheck {
    pub name: &'static str,
    /// Informational checks do not affect the exit status.
    pub required: bool,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub spec: CatSpec,
    pub checks: Vec<SuiteCheck>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || !c.required)
    }
}

fn check(name: &'static str, required: bool, outcome: Result<(bool, String)>) -> Result<SuiteCheck> {
    let (passed, detail) = match outcome {
        Ok(v) => v,
        Err(e @ (Error::Internal(_) | Error::NonIntegral(_) | Error::LevelSetMismatch(_))) => (false, e.to_string()),
        Err(e) => return Err(e),
    };
    Ok(SuiteCheck { name, required, passed, detail })
}

fn count_failures<I: IntoIterator<Item = Result<Option<String>>>>(items: I) -> Result<(bool, String)> {
    let mut total = 0;
    let mut failures = Vec::new();
    for item in items {
        total += 1;
        if let Some(f) = item? {
            failures.push(f);
        }
    }
    let detail = if failures.is_empty() {
        format!("{total} checked")
    } else {
        format!("{} of {total} failed: {}", failures.len(), failures.join("; "))
    };
    Ok((failures.is_empty(), detail))
}

fn grade_zero(table: &CategoryTable) -> Vec<&Weight> {
    table.simples().items().iter().filter(|w| w.grade() == 0).collect()
}

/// Runs every identity check available for the table's category.
pub fn run_suite(table: &CategoryTable) -> Result<SuiteReport> {
    let cat = table.category();
    let spec = *table.spec();
    let mut checks = Vec::new();

    checks.push(check("psi", true, Ok((cat.psi_weyl_sum() == cat.psi_product(), "Weyl sum vs root product".into())))?);

    checks.push(check(
        "level-set",
        true,
        quantum_group_levelset(&spec).map(|levelset| {
            let a: BTreeSet<_> = levelset.into_iter().collect();
            let b: BTreeSet<_> = table.simples().items().iter().cloned().collect();
            (a == b, format!("{} weights", a.len()))
        }),
    )?);

    checks.push(check(
        "qdim-sum-vs-product",
        true,
        count_failures(
            table
                .simples()
                .items()
                .par_iter()
                .enumerate()
                .map(|(i, w)| {
                    let sum = cat.qdim_sum(w)?;
                    let ok = sum == cat.qdim_product(w)? && sum == table.dims()[i];
                    Ok((!ok).then(|| w.to_string()))
                })
                .collect::<Vec<_>>(),
        ),
    )?);

    checks.push(check("closed-forms", true, closed_forms(table))?);

    checks.push(check(
        "spinor-encircling",
        true,
        count_failures(
            table
                .simples()
                .items()
                .iter()
                .filter(|b| b.grade() == 1)
                .flat_map(|b| {
                    let signs: &[Sign] = match spec.family() {
                        Family::B => &[Sign::Plus],
                        Family::D => &[Sign::Plus, Sign::Minus],
                    };
                    signs.iter().map(move |&s| match cat.spinor_encircle_sign(b, s) {
                        Ok(_) => Ok(None),
                        Err(Error::Internal(msg)) => Ok(Some(msg)),
                        Err(e) => Err(e),
                    })
                })
                .collect::<Vec<_>>(),
        ),
    )?);

    let reports = grade_zero(table).par_iter().map(|w| cat.verify_spinor_identities(w)).collect::<Result<Vec<_>>>()?;
    checks.push(check(
        "spinor-identities",
        true,
        count_failures(reports.iter().map(|r| Ok((!r.all_passed()).then(|| r.weight.to_string())))),
    )?);
    let informational: Vec<String> = reports
        .iter()
        .flat_map(|r| {
            r.checks
                .iter()
                .filter(|c| !c.required && !c.passed)
                .map(move |c| format!("{} {:?} {:?}", r.weight, c.identity, c.spinor))
        })
        .collect();
    checks.push(SuiteCheck {
        name: "single-chirality-twist",
        required: false,
        passed: informational.is_empty(),
        detail: if informational.is_empty() { "all hold".into() } else { informational.join("; ") },
    });

    checks.push(check("tensor-with-spinor", true, spinor_decompositions(table))?);
    checks.push(check("modularity", true, modularity(table))?);
    checks.push(check("fusion-integrality", true, fusion_sample(table))?);

    let mut verlinde_ok = true;
    let mut dominance = Vec::new();
    let mut verlinde_detail = Vec::new();
    for g in 1..=VERLINDE_GENERA {
        let r = match refinement_sum_check(table, g) {
            Ok(r) => r,
            Err(e @ Error::NonIntegral(_)) => {
                verlinde_ok = false;
                verlinde_detail.push(e.to_string());
                continue;
            }
            Err(e) => return Err(e),
        };
        verlinde_ok &= r.passed && (g != 1 || r.ordinary == table.len().into());
        if r.even_dominates == Some(false) {
            dominance.push(g);
        }
        verlinde_detail.push(format!("g={g}: {}", r.ordinary));
    }
    checks.push(SuiteCheck {
        name: "verlinde",
        required: true,
        passed: verlinde_ok,
        detail: verlinde_detail.join(", "),
    });
    if spec.family() == Family::B {
        checks.push(SuiteCheck {
            name: "spin-even-dominates",
            required: false,
            passed: dominance.is_empty(),
            detail: if dominance.is_empty() {
                "even >= odd".into()
            } else {
                format!("odd exceeds even at genus {dominance:?}")
            },
        });
    }

    if spec.family() == Family::D && spec.k() >= 2 && spec.k() <= MAX_RANK {
        let report = level_rank_check::<num_rational::BigRational>(&spec)?;
        checks.push(SuiteCheck {
            name: "level-rank-interior",
            required: true,
            passed: report.interior_ok(),
            detail: format!("{} entries against {}", report.entries.len(), report.dual_spec),
        });
        let boundary: Vec<String> = report
            .boundary_mismatches()
            .iter()
            .map(|e| format!("{} ~ {} (dim {}, twist {})", e.weight, e.dual, e.dim_match, e.twist_match))
            .collect();
        checks.push(SuiteCheck {
            name: "level-rank-boundary",
            required: false,
            passed: boundary.is_empty(),
            detail: if boundary.is_empty() { "no mismatches".into() } else { boundary.join("; ") },
        });
    }

    checks.push(check("surgery", true, surgery_suite(table))?);
    Ok(SuiteReport { spec, checks })
}

fn closed_forms(table: &CategoryTable) -> Result<(bool, String)> {
    let cat = table.category();
    let spec = table.spec();
    let n = spec.n() as i64;
    let j = table.invertible_object()?;
    let one = Cyclotomic::one(cat.field());
    let mut ok = cat.qdim_sum(&j)? == one;
    let mut detail = Vec::new();
    match spec.family() {
        Family::B => {
            let s = Weight::spinor(spec.n(), Sign::Plus);
            let ts = cat.twist(&s)? == cat.v_pow(n * n) * cat.zeta(2 * n);
            let tj = cat.twist(&j)? == -one.clone();
            detail.push(format!("t_S = v^(n^2+n/2): {ts}, t_J = -1: {tj}"));
            ok &= ts && tj;
        }
        Family::D => {
            let tj = cat.twist(&j)? == one;
            detail.push(format!("t_J = 1: {tj}"));
            ok &= tj;
        }
    }
    Ok((ok, detail.join(", ")))
}

fn spinor_decompositions(table: &CategoryTable) -> Result<(bool, String)> {
    let cat = table.category();
    let n = table.spec().n();
    let kinds: Vec<(SpinorKind, Weight)> = match table.spec().family() {
        Family::B => vec![(SpinorKind::S, Weight::spinor(n, Sign::Plus))],
        Family::D => vec![
            (SpinorKind::SPlus, Weight::spinor(n, Sign::Plus)),
            (SpinorKind::SMinus, Weight::spinor(n, Sign::Minus)),
        ],
    };
    let items = grade_zero(table);
    count_failures(
        items
            .par_iter()
            .flat_map_iter(|w| kinds.iter().map(move |(kind, s)| (*w, *kind, s)))
            .map(|(w, kind, s)| {
                let expected = cat.tensor_with_spinor(w, kind)?;
                let row = table.fusion_row(table.index(w)?, table.index(s)?)?;
                let mut counts = vec![num_bigint::BigInt::from(0); table.len()];
                for summand in &expected {
                    counts[table.index(summand)?] += 1;
                }
                Ok((row != counts).then(|| format!("{w} x {s}")))
            })
            .collect::<Vec<_>>(),
    )
}

fn modularity(table: &CategoryTable) -> Result<(bool, String)> {
    let transparent = table.transparent_objects();
    let empty = Weight::empty(table.spec().n());
    let mut ok = transparent == [empty];
    let mut detail =
        format!("transparent: {}", transparent.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
    if table.spec().family() == Family::D {
        let j = table.invertible_object()?;
        let grades = table.transparency_by_grade(&j)?;
        ok &= grades == [true, false];
        detail.push_str(&format!("; {j} centralizes grade 0: {}, grade 1: {}", grades[0], grades[1]));
    }
    Ok((ok, detail))
}

fn fusion_sample(table: &CategoryTable) -> Result<(bool, String)> {
    let len = table.len();
    let pairs: Vec<(usize, usize)> = if len <= FUSION_FULL_SWEEP {
        (0..len).flat_map(|a| (0..len).map(move |b| (a, b))).collect()
    } else {
        let count = FUSION_SAMPLE.div_ceil(len);
        (0..count).map(|i| ((7 * i + 1) % len, (13 * i + 5) % len)).collect()
    };
    let rows = pairs.par_iter().map(|&(a, b)| table.fusion_row(a, b)).collect::<Result<Vec<_>>>()?;
    Ok((true, format!("{} triples, all nonnegative integers", rows.len() * len)))
}

fn surgery_suite(table: &CategoryTable) -> Result<(bool, String)> {
    let one = Cyclotomic::one(table.category().field());
    let mut failures = Vec::new();
    let forests = surgery::sample_forests();
    for (name, graph) in &forests {
        let tau = match surgery::decomposition(table, graph) {
            Ok(d) => {
                if !d.holds {
                    failures.push(format!("{name}: refinements do not add up"));
                }
                d.invariant
            }
            Err(Error::DegenerateNormalization) => {
                failures.push(format!("{name}: degenerate normalization"));
                continue;
            }
            Err(e) => return Err(e),
        };
        if graph.is_empty() && tau != one {
            failures.push("empty graph: invariant is not 1".into());
        }
        for positive in [true, false] {
            if surgery::rt_invariant(table, &graph.blow_up(positive))? != tau {
                failures.push(format!("{name}: blow-up changes the invariant"));
            }
        }
        if graph.len() <= VANISHING_VERTICES {
            let v = surgery::vanishing_check(table, graph)?;
            if !v.passed() {
                failures.push(format!("{name}: non-vanishing {:?}", v.violations));
            }
        }
    }
    let detail = if failures.is_empty() { format!("{} forests", forests.len()) } else { failures.join("; ") };
    Ok((failures.is_empty(), detail))
}
