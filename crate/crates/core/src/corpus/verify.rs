//! End-to-end verification of every corpus example.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::apolar::{apolar_annihilator, random_form};
use super::families::{
    gen_ci_family, gen_extrasymmetric, gen_generic_minors, gen_sally, gen_small_pair, sylvester_identity, Family,
};
use crate::error::Result;
use crate::groebner::{is_groebner_basis, Ideal};
use crate::homological::{minimalize, resolve, verify_resolution, BettiEntry, BettiTable, ChainComplex};
use crate::kustin_miller::{
    assemble_resolution, beta_commutes, biliaison_certificate, expected_ranks, homotopy_holds, minimality_check,
    parity_necessary_condition,
};
use crate::liaison::{admissible_f, hilbert_identity_check, BiliaisonData};
use crate::rings::{Field, PolyRing, Polynomial, RingExt};

pub const DEFAULT_SEED: u64 = 1;

/// Field and seed of a corpus run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusConfig {
    pub field: Field,
    pub seed: u64,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig { field: Field::Prime(super::DEFAULT_PRIME), seed: DEFAULT_SEED }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Inputs, outputs and checks of one example.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ExampleReport {
    pub name: String,
    pub field: String,
    pub inputs: BTreeMap<String, String>,
    pub ideal: Option<String>,
    /// Graded Betti numbers of R/I.
    pub betti: Option<Vec<BettiEntry>>,
    pub betti_ranks: Option<Vec<usize>>,
    pub h_vector: Option<Vec<i64>>,
    pub d: Option<i64>,
    /// Whether the colon-route ideal agrees with the row α*_{g-1} + (-1)^g f a_g*
    /// built from the comparison map for the chosen f itself.
    pub formula_matches: Option<bool>,
    /// The same with the sign of f reversed.
    pub formula_matches_opposite_sign: Option<bool>,
    pub checks: Vec<Check>,
}

impl ExampleReport {
    fn new(name: &str, field: Field) -> ExampleReport {
        ExampleReport { name: name.to_string(), field: field.to_string(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn record(&mut self, name: &str, passed: bool) {
        self.checks.push(Check { name: name.to_string(), passed, detail: None });
    }

    fn record_detail(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(Check { name: name.to_string(), passed, detail: Some(detail) });
    }

    fn record_result(&mut self, name: &str, r: Result<bool>) {
        match r {
            Ok(b) => self.record(name, b),
            Err(e) => self.record_detail(name, false, e.to_string()),
        }
    }

    fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.insert(key.to_string(), value.to_string());
    }

    fn outputs(&mut self, ideal: &Ideal, res: &ChainComplex) -> Result<BettiTable> {
        let betti = BettiTable::from_complex(res)?;
        self.ideal = Some(ideal.render());
        self.betti = Some(betti.entries());
        self.betti_ranks = Some(betti.ranks());
        self.h_vector = ideal.hilbert().h_vector();
        Ok(betti)
    }
}

/// Result of a corpus run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub field: String,
    pub seed: u64,
    pub examples: Vec<ExampleReport>,
    /// Wall-clock milliseconds per example; the only part that varies
    /// between identical runs.
    pub timings_ms: BTreeMap<String, u64>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.examples.iter().all(|e| e.passed())
    }

    /// (example, check) pairs that failed.
    pub fn failures(&self) -> Vec<(String, String)> {
        self.examples
            .iter()
            .flat_map(|e| e.checks.iter().filter(|c| !c.passed).map(move |c| (e.name.clone(), c.name.clone())))
            .collect()
    }

    pub fn example(&self, name: &str) -> Option<&ExampleReport> {
        self.examples.iter().find(|e| e.name == name)
    }

    /// The report with timings removed.
    pub fn without_timings(&self) -> RunReport {
        RunReport { timings_ms: BTreeMap::new(), ..self.clone() }
    }
}

type Runner = Box<dyn Fn(&CorpusConfig) -> ExampleReport + Send + Sync>;

const CI_INSTANCES: [(&[u32], &[u32]); 5] = [
    (&[2, 2], &[1, 1, 1]),
    (&[3], &[1, 1]),
    (&[3, 2], &[1, 1, 1]),
    (&[3, 3], &[2, 1, 1]),
    (&[2, 2, 2], &[1, 1, 1, 1]),
];

fn ci_name(m: &[u32], n: &[u32]) -> String {
    let join = |v: &[u32]| v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(".");
    format!("ci-g{}-m{}-n{}", n.len(), join(m), join(n))
}

fn runners() -> Vec<(String, Runner)> {
    let mut out: Vec<(String, Runner)> = Vec::new();
    out.push(("small-pair".into(), Box::new(run_small_pair)));
    for (m, n) in CI_INSTANCES {
        out.push((ci_name(m, n), Box::new(move |c: &CorpusConfig| run_ci(c, m, n))));
    }
    for n in 3..=5 {
        out.push((format!("sally-n{n}"), Box::new(move |c: &CorpusConfig| run_sally(c, n))));
    }
    out.push(("generic-minors-n3".into(), Box::new(|c: &CorpusConfig| run_generic_minors(c, 3))));
    for lambda in 1..=2 {
        out.push((format!("extrasymmetric-l{lambda}"), Box::new(move |c: &CorpusConfig| run_extrasymmetric(c, lambda))));
    }
    out.push(("apolar-cubic".into(), Box::new(run_apolar)));
    out
}

/// Names of all corpus examples, in report order.
pub fn example_names() -> Vec<String> {
    let mut names: Vec<String> = runners().into_iter().map(|(n, _)| n).collect();
    names.sort();
    names
}

/// Runs every example; see [`run_selected`].
pub fn run_corpus_verification(config: &CorpusConfig) -> RunReport {
    run_selected(config, |_| true)
}

/// Runs the examples whose names pass `filter`, concurrently, and merges the
/// reports by name.
pub fn run_selected(config: &CorpusConfig, filter: impl Fn(&str) -> bool) -> RunReport {
    let selected: Vec<(String, Runner)> = runners().into_iter().filter(|(n, _)| filter(n)).collect();
    let mut results: Vec<(ExampleReport, u64)> = selected
        .par_iter()
        .map(|(_, run)| {
            let start = Instant::now();
            let report = run(config);
            (report, start.elapsed().as_millis() as u64)
        })
        .collect();
    results.sort_by(|a, b| a.0.name.cmp(&b.0.name));
    let timings_ms = results.iter().map(|(r, t)| (r.name.clone(), *t)).collect();
    RunReport {
        command: "verify-corpus".into(),
        field: config.field.to_string(),
        seed: config.seed,
        examples: results.into_iter().map(|(r, _)| r).collect(),
        timings_ms,
    }
}

/// Checks common to every construction; returns the constructed data when
/// the construction itself succeeded.
pub fn verify_family(report: &mut ExampleReport, family: &Family) -> Option<BiliaisonData> {
    report.input("a", family.a.render());
    report.input("b", family.b.render());
    report.input("y", &family.y);
    let data = match family.construct() {
        Ok(d) => d,
        Err(e) => {
            report.record_detail("construction", false, e.to_string());
            return None;
        }
    };
    report.record("construction", true);
    report.input("f", data.f.as_ref().expect("constructed data has f"));
    report.d = Some(data.d);
    let i = data.ideal().expect("constructed data has I").clone();
    let i_res = data.i_res.clone().expect("constructed data has its resolution");
    let betti_i = match report.outputs(&i, &i_res) {
        Ok(b) => b,
        Err(e) => {
            report.record_detail("betti", false, e.to_string());
            return Some(data);
        }
    };
    if let Some(expected) = &family.expected {
        report.record_detail("expected_ideal", i.equals(expected), expected.render());
    }
    if let (Some(middle), Some(j)) = (&family.middle, &data.j) {
        report.record_detail("middle_residual", j.equals(middle), j.render());
    }
    let (first, second) = (data.first_link.as_ref().unwrap(), data.second_link.as_ref().unwrap());
    report.record("links_valid", first.is_valid() && second.is_valid());
    report.record("double_colon_symmetry", first.backward && second.backward);
    report.record("gorenstein", i_res.length() == data.g && i_res.module(data.g as isize).rank() == 1);
    report.formula_matches = data.formula.as_ref().map(|f| f.matches);
    report.formula_matches_opposite_sign = data.formula.as_ref().map(|f| f.opposite_sign_matches);
    let effective = data.formula.as_ref().and_then(|f| f.effective.as_ref());
    report.record_detail("formula_row", effective.is_some(), effective.map_or_else(String::new, |f| format!("f' = {f}")));
    match hilbert_identity_check(&data) {
        Ok(c) => {
            let detail = match c.first_failure {
                Some(j) => format!("fails at j = {j} (window 0..={})", c.upto),
                None => format!("window 0..={}", c.upto),
            };
            report.record_detail("hilbert_identity", c.holds, detail)
        }
        Err(e) => report.record_detail("hilbert_identity", false, e.to_string()),
    }
    report.record_result("biliaison_certificate", biliaison_certificate(&data).map(|c| c.holds()));
    let reg = |res: &ChainComplex| BettiTable::from_complex(res).ok().and_then(|b| b.quotient_regularity());
    match (betti_i.quotient_regularity(), reg(&data.a_res)) {
        (Some(ri), Some(ra)) => report.record_detail(
            "regularity_parity",
            ri - ra == 2 * data.d && parity_necessary_condition(ri, ra),
            format!("reg R/I = {ri}, reg R/𝔞 = {ra}, d = {}", data.d),
        ),
        _ => report.record("regularity_parity", false),
    }
    verify_assembly(report, &data, &i, &betti_i);
    verify_properties(report, &data, &i, &i_res, &betti_i);
    Some(data)
}

fn verify_assembly(report: &mut ExampleReport, data: &BiliaisonData, i: &Ideal, betti_i: &BettiTable) {
    let km = match assemble_resolution(data) {
        Ok(km) => km,
        Err(e) => {
            report.record_detail("km_assembly", false, e.to_string());
            return;
        }
    };
    report.record("km_assembly", true);
    report.record("eq_beta_commutes", beta_commutes(&data.a_res, &data.b_res, &km.beta, data.d));
    report.record("eq_homotopy", homotopy_holds(&data.b_res, &data.alpha, &km.beta, &km.h, data.d));
    let check = verify_resolution(&km.resolution, i);
    report.record_detail("km_exact", check.ok, check.witness.unwrap_or_default());
    let ranks = km.resolution.ranks();
    let pattern = expected_ranks(&data.a_res, &data.b_res);
    report.record_detail("km_rank_pattern", ranks == pattern, format!("{ranks:?} vs {pattern:?}"));
    match minimality_check(data, &km) {
        Ok(true) => report.record_detail("km_minimal", true, "minimal".into()),
        Ok(false) => match minimalize(&km.resolution).and_then(|c| BettiTable::from_complex(&c)) {
            Ok(b) => report.record_detail("km_minimal", &b == betti_i, "non-minimal; minimalized".into()),
            Err(e) => report.record_detail("km_minimal", false, e.to_string()),
        },
        Err(e) => report.record_detail("km_minimal", false, e.to_string()),
    }
}

fn verify_properties(report: &mut ExampleReport, data: &BiliaisonData, i: &Ideal, i_res: &ChainComplex, betti_i: &BettiTable) {
    let ideals = [i, &data.a, &data.b];
    report.record("gb_s_pairs", ideals.iter().all(|id| is_groebner_basis(id.groebner_basis())));
    let z = data.z.clone().unwrap_or_else(|| data.y.clone());
    let probes = [data.y.clone(), z.clone(), &data.y * &z, data.omega.omega.clone()];
    let idempotent = ideals.iter().all(|id| {
        probes.iter().all(|p| match id.normal_form(p) {
            Ok(nf) => id.normal_form(&nf).is_ok_and(|again| again == nf),
            Err(_) => false,
        })
    });
    report.record("nf_idempotent", idempotent);
    let complexes = [i_res, &data.a_res, &data.b_res];
    report.record("d_squared_zero", complexes.iter().all(|c| c.check_square_zero().is_ok()));
    let exact = verify_resolution(i_res, i).ok
        && verify_resolution(&data.a_res, &data.a).ok
        && verify_resolution(&data.b_res, &data.b).ok;
    report.record("syzygy_exactness", exact);
    let symmetric = betti_i.is_gorenstein_symmetric()
        && [&data.a_res, &data.b_res]
            .iter()
            .all(|c| BettiTable::from_complex(c).is_ok_and(|b| b.is_gorenstein_symmetric()));
    report.record("gorenstein_symmetry", symmetric);
}

fn run_small_pair(config: &CorpusConfig) -> ExampleReport {
    let mut report = ExampleReport::new("small-pair", config.field);
    let family = match gen_small_pair(config.field) {
        Ok(f) => f,
        Err(e) => {
            report.record_detail("generator", false, e.to_string());
            return report;
        }
    };
    if let Some(data) = verify_family(&mut report, &family) {
        let z = family.ring().var(2);
        let rejected = admissible_f(&family.b, &family.y, &data.omega.omega, &z).map(|ok| !ok);
        report.record_result("f_equal_z_rejected", rejected);
    }
    report
}

fn run_ci(config: &CorpusConfig, m: &[u32], n: &[u32]) -> ExampleReport {
    let mut report = ExampleReport::new(&ci_name(m, n), config.field);
    let ci = match gen_ci_family(config.field, m, n, config.seed) {
        Ok(c) => c,
        Err(e) => {
            report.record_detail("generator", false, e.to_string());
            return report;
        }
    };
    report.input("c", &ci.c);
    if let Some(data) = verify_family(&mut report, &ci.family) {
        let f = data.f.clone().unwrap();
        let i = data.ideal().unwrap();
        let outcome = ci.omega_unit(&data.omega.omega).and_then(|u| match u.and_then(|u| u.inv()) {
            Some(inv) => ci.expected_for(&f.scale(&inv)).map(|e| e.equals(i)),
            None => Ok(false),
        });
        report.record_result("closed_form", outcome);
    }
    report
}

/// Units c_1, …, c_{n-1} drawn from the seed: nonzero residues over a prime
/// field, integers in 1..=9 over ℚ.
pub fn sally_units(field: Field, n: usize, seed: u64) -> Vec<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 32));
    let hi = match field {
        Field::Prime(p) => p as i64 - 1,
        Field::Rational => 9,
    };
    (1..n).map(|_| rng.gen_range(1..=hi)).collect()
}

fn run_sally(config: &CorpusConfig, n: usize) -> ExampleReport {
    let mut report = ExampleReport::new(&format!("sally-n{n}"), config.field);
    let units = sally_units(config.field, n, config.seed);
    report.input("units", format!("{units:?}"));
    match gen_sally(config.field, &units) {
        Ok(family) => {
            if verify_family(&mut report, &family).is_some() {
                let h = report.h_vector.clone();
                report.record_detail("h_vector", h == Some(vec![1, n as i64, 1]), format!("{h:?}"));
            }
        }
        Err(e) => report.record_detail("generator", false, e.to_string()),
    }
    report
}

fn run_generic_minors(config: &CorpusConfig, n: usize) -> ExampleReport {
    let mut report = ExampleReport::new(&format!("generic-minors-n{n}"), config.field);
    let (ideal, family) = match gen_generic_minors(n, config.field) {
        Ok(x) => x,
        Err(e) => {
            report.record_detail("generator", false, e.to_string());
            return report;
        }
    };
    let Some(family) = family else {
        report.record("generator", ideal.num_minimal_generators() == 4);
        return report;
    };
    if verify_family(&mut report, &family).is_some() {
        let nn = n as i64;
        let n2 = n * n;
        let expected = BettiTable::from_entries(&[
            (0, 0, 1),
            (1, nn - 1, n2),
            (2, nn, 2 * (n2 - 1)),
            (3, nn + 1, n2),
            (4, 2 * nn, 1),
        ]);
        let ok = report.betti.as_ref() == Some(&expected.entries());
        report.record("gulliksen_negard_table", ok);
        report.record_result("sylvester_identity", sylvester_identity(&family));
    }
    report
}

fn run_extrasymmetric(config: &CorpusConfig, lambda: i64) -> ExampleReport {
    let mut report = ExampleReport::new(&format!("extrasymmetric-l{lambda}"), config.field);
    report.input("lambda", lambda);
    let ex = match gen_extrasymmetric(config.field, lambda) {
        Ok(x) => x,
        Err(e) => {
            report.record_detail("generator", false, e.to_string());
            return report;
        }
    };
    report.record_result("pfaffians_of_n", ex.pfaffian_ideal().map(|p| p.equals(&ex.family.a)));
    if let Some(data) = verify_family(&mut report, &ex.family) {
        let i = data.ideal().unwrap();
        report.record_result("pfaffians_of_m_prime", ex.m_prime_pfaffians().map(|p| p.equals(i)));
        let same = match (BettiTable::from_complex(&data.a_res), &report.betti) {
            (Ok(a), Some(b)) => &a.entries() == b,
            _ => false,
        };
        report.record("betti_equals_betti_of_a", same);
        report.record("betti_9_16_9_1", report.betti_ranks.as_deref() == Some(&[1, 9, 16, 9, 1][..]));
    }
    report
}

/// The pure table of a generic (1, 5, 5, 1) quotient.
pub fn pure_apolar_table() -> BettiTable {
    BettiTable::from_entries(&[(0, 0, 1), (1, 2, 10), (2, 3, 16), (3, 5, 16), (4, 6, 10), (5, 8, 1)])
}

/// Annihilator of a seeded random cubic in five variables, its resolution and
/// the seed that was used: `seed`, or `seed + 1` if the first cubic is not
/// generic enough for the pure table.
pub fn apolar_cubic(field: Field, seed: u64) -> Result<(Ideal, ChainComplex, u64)> {
    let r = PolyRing::indexed("x", 5, field)?;
    let mut last = None;
    for s in [seed, seed + 1] {
        let form: Polynomial = random_form(&r, 3, s);
        let ann = apolar_annihilator(&form, 3)?;
        let res = resolve(&ann)?;
        let pure = BettiTable::from_complex(&res).is_ok_and(|b| b == pure_apolar_table());
        if pure {
            return Ok((ann, res, s));
        }
        last = Some((ann, res, s));
    }
    Ok(last.expect("two seeds were tried"))
}

fn run_apolar(config: &CorpusConfig) -> ExampleReport {
    let mut report = ExampleReport::new("apolar-cubic", config.field);
    let (ann, res, used) = match apolar_cubic(config.field, config.seed) {
        Ok(x) => x,
        Err(e) => {
            report.record_detail("generator", false, e.to_string());
            return report;
        }
    };
    report.input("seed_used", used);
    let betti = match report.outputs(&ann, &res) {
        Ok(b) => b,
        Err(e) => {
            report.record_detail("betti", false, e.to_string());
            return report;
        }
    };
    report.record("h_vector_1_5_5_1", report.h_vector.as_deref() == Some(&[1, 5, 5, 1][..]));
    report.record("pure_table", betti == pure_apolar_table());
    report.record("gorenstein_symmetry", betti.is_gorenstein_symmetric());
    report.record("syzygy_exactness", verify_resolution(&res, &ann).ok);
    report.record("gb_s_pairs", is_groebner_basis(ann.groebner_basis()));
    let reg_i = betti.quotient_regularity().unwrap_or(0);
    let excluded: Vec<i64> = (0..reg_i).filter(|&ra| !parity_necessary_condition(reg_i, ra)).collect();
    report.record_detail("parity_excludes_reg_2", excluded.contains(&2), format!("reg R/I = {reg_i}, excluded reg R/𝔞 ∈ {excluded:?}"));
    report
}
