//! Declarative scenario files and the parameter sweep driver.
//!
//! A scenario is JSON: a base field, named towers given as lists of
//! generator expressions, and a list of checks. Reports are deterministic:
//! the same file always produces the same bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::elimination::{
    elimination_check, equal_index_corollary, tame_wild_product, EliminationOutcome,
};
use crate::oracle;
use crate::parse::{parse_element, parse_generator, ParsedExpr};
use crate::ramify::{
    absolute_data, relative_data, residue_degree_over, RamificationReport, RootDatum,
};
use crate::residue::{Constant, ResidueField};
use crate::tower::{
    value_of_polynomial, value_of_rational_function, BaseField, RadicalGenerator, Tower,
};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read scenario {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid scenario JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported residue field {0:?}: expected \"Q\", \"GF(p)\" or \"GF(p^s)\"")]
    BadResidue(String),
    #[error("invalid base field: {0}")]
    BadBase(String),
    #[error("tower {name:?} entry {entry}: {message}")]
    BadTower {
        name: String,
        entry: usize,
        message: String,
    },
    #[error("check {index} ({kind}): {message}")]
    Check {
        index: usize,
        kind: String,
        message: String,
    },
    #[error("self-check failed: {0}")]
    SelfCheck(String),
}

#[derive(Debug, Deserialize)]
pub struct ScenarioFile {
    pub base: BaseSpec,
    #[serde(default)]
    pub towers: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub checks: Vec<Check>,
}

#[derive(Debug, Deserialize)]
pub struct BaseSpec {
    pub residue: String,
    pub variables: Vec<String>,
}

#[derive(Debug, Deserialize, Clone)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Ramify(String),
    Relative(String, String),
    Abhyankar(String, String),
    Corollary(String, String),
    Lemma41(String, String),
    Value(String, String),
    Dtheta(String, String, String),
}

impl Check {
    fn kind(&self) -> &'static str {
        match self {
            Check::Ramify(_) => "ramify",
            Check::Relative(..) => "relative",
            Check::Abhyankar(..) => "abhyankar",
            Check::Corollary(..) => "corollary",
            Check::Lemma41(..) => "lemma41",
            Check::Value(..) => "value",
            Check::Dtheta(..) => "dtheta",
        }
    }
}

/// Deterministic run output: text report, structured mirror, warning count.
#[derive(Debug, Clone)]
pub struct Report {
    pub text: String,
    pub structured: Value,
    pub warnings: u64,
}

pub fn parse_residue_spec(spec: &str) -> Result<ResidueField, ScenarioError> {
    let trimmed = spec.trim();
    if trimmed == "Q" {
        return Ok(ResidueField::rational());
    }
    let inner = trimmed
        .strip_prefix("GF(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| ScenarioError::BadResidue(spec.to_string()))?;
    let (p_str, s_str) = match inner.split_once('^') {
        Some((p, s)) => (p, s),
        None => (inner, "1"),
    };
    let p: u64 = p_str
        .trim()
        .parse()
        .map_err(|_| ScenarioError::BadResidue(spec.to_string()))?;
    let s: u32 = s_str
        .trim()
        .parse()
        .map_err(|_| ScenarioError::BadResidue(spec.to_string()))?;
    ResidueField::finite(p, s).map_err(|e| ScenarioError::BadBase(e.to_string()))
}

pub fn build_base(spec: &BaseSpec) -> Result<BaseField, ScenarioError> {
    let residue = parse_residue_spec(&spec.residue)?;
    BaseField::new(residue, spec.variables.clone())
        .map_err(|e| ScenarioError::BadBase(e.to_string()))
}

pub fn build_tower(
    base: &BaseField,
    name: &str,
    entries: &[String],
) -> Result<Tower, ScenarioError> {
    let mut t = Tower::new(base.clone());
    for (i, text) in entries.iter().enumerate() {
        let spec = parse_generator(text, base).map_err(|e| ScenarioError::BadTower {
            name: name.to_string(),
            entry: i + 1,
            message: e.to_string(),
        })?;
        t = t
            .adjoin(RadicalGenerator {
                name: format!("g{}", i + 1),
                constant: spec.constant,
                exponents: spec.exponents,
                order: spec.order,
            })
            .map_err(|e| ScenarioError::BadTower {
                name: name.to_string(),
                entry: i + 1,
                message: e.to_string(),
            })?;
    }
    Ok(t)
}

fn root_data_string(residue: &ResidueField, generators: &[RootDatum]) -> String {
    if generators.is_empty() {
        return "[]".to_string();
    }
    let parts: Vec<String> = generators
        .iter()
        .map(|g| {
            format!(
                "({},{},{})",
                residue.const_string(&g.constant),
                g.order,
                g.degree
            )
        })
        .collect();
    format!("[{}]", parts.join(","))
}

fn json_bigint(v: &BigInt) -> Value {
    match v.to_u64() {
        Some(n) => json!(n),
        None => json!(v.to_string()),
    }
}

fn report_line_for(residue: &ResidueField, r: &RamificationReport) -> String {
    format!(
        "e={} f={} degree={} defect={} class={} residue_ambiguous={} residue_generators={} value_group={}",
        r.e,
        r.f,
        r.degree,
        r.defect,
        r.classification,
        r.residue_ambiguous,
        root_data_string(residue, &r.residue_generators),
        r.value_group,
    )
}

fn report_json_for(residue: &ResidueField, r: &RamificationReport) -> Vec<(&'static str, Value)> {
    vec![
        ("e", json_bigint(&r.e)),
        ("f", json!(r.f)),
        ("degree", json_bigint(&r.degree)),
        ("defect", json!(r.defect.to_string())),
        ("class", json!(r.classification.to_string())),
        ("residue_ambiguous", json!(r.residue_ambiguous)),
        (
            "residue_generators",
            json!(root_data_string(residue, &r.residue_generators)),
        ),
        ("value_group", json!(r.value_group.to_string())),
    ]
}

fn report_warnings(r: &RamificationReport) -> u64 {
    use crate::ramify::{Classification, DefectStatus};
    let mut w = 0;
    if r.residue_ambiguous {
        w += 1;
    }
    if r.classification == Classification::Undetermined || r.defect == DefectStatus::Undetermined {
        w += 1;
    }
    w
}

struct Runner {
    base: BaseField,
    towers: BTreeMap<String, Tower>,
    self_check: bool,
    lines: Vec<String>,
    results: Vec<Value>,
    warnings: u64,
}

impl Runner {
    fn tower(&self, name: &str, index: usize, kind: &str) -> Result<&Tower, ScenarioError> {
        self.towers.get(name).ok_or_else(|| ScenarioError::Check {
            index,
            kind: kind.to_string(),
            message: format!("unknown tower {name:?}"),
        })
    }

    fn check_err(&self, index: usize, kind: &str, message: impl ToString) -> ScenarioError {
        ScenarioError::Check {
            index,
            kind: kind.to_string(),
            message: message.to_string(),
        }
    }

    fn self_check_report(&self, r: &RamificationReport) -> Result<(), ScenarioError> {
        use crate::valgroup::ValueLattice;
        let std = ValueLattice::standard(r.value_group.ambient_dim());
        match oracle::index_by_coset_enumeration(&std, &r.value_group) {
            Ok(counted) => {
                let counted = BigInt::from(counted);
                // the report's e may be relative; check the absolute index instead
                let absolute = ValueLattice::index(&std, &r.value_group)
                    .map_err(|e| ScenarioError::SelfCheck(e.to_string()))?;
                if counted != absolute {
                    return Err(ScenarioError::SelfCheck(format!(
                        "coset enumeration counted {counted}, index computed {absolute}"
                    )));
                }
            }
            Err(oracle::OracleError::GuardExceeded(_)) => {}
            Err(e) => return Err(ScenarioError::SelfCheck(e.to_string())),
        }
        for row in r.value_group.basis_rows() {
            match oracle::membership_by_integer_solve(&r.value_group, &row) {
                Ok(true) => {}
                Ok(false) => {
                    return Err(ScenarioError::SelfCheck(
                        "membership oracle rejects a basis row of the value group".into(),
                    ))
                }
                Err(oracle::OracleError::GuardExceeded(_)) => {}
                Err(e) => return Err(ScenarioError::SelfCheck(e.to_string())),
            }
        }
        if let ResidueField::Finite(ff) = self.base.residue() {
            for datum in &r.residue_generators {
                let Constant::Finite(c) = &datum.constant else {
                    continue;
                };
                match oracle::root_degrees_by_search(
                    ff.characteristic(),
                    ff.extension_degree(),
                    ff.modulus(),
                    c,
                    datum.order,
                ) {
                    Ok(degrees) => {
                        let expected = ff
                            .root_degrees(c, datum.order)
                            .map_err(|e| ScenarioError::SelfCheck(e.to_string()))?;
                        if degrees != expected.degrees {
                            return Err(ScenarioError::SelfCheck(format!(
                                "root search found degrees {degrees:?}, main path {:?}",
                                expected.degrees
                            )));
                        }
                    }
                    Err(oracle::OracleError::GuardExceeded(_)) => {}
                    Err(e) => return Err(ScenarioError::SelfCheck(e.to_string())),
                }
            }
        }
        Ok(())
    }

    fn push(
        &mut self,
        line: String,
        mut obj: Vec<(&'static str, Value)>,
        head: Vec<(&'static str, Value)>,
    ) {
        self.lines.push(line);
        let mut map = serde_json::Map::new();
        for (k, v) in head.into_iter().chain(obj.drain(..)) {
            map.insert(k.to_string(), v);
        }
        self.results.push(Value::Object(map));
    }

    fn run_check(&mut self, index: usize, check: &Check) -> Result<(), ScenarioError> {
        let kind = check.kind();
        match check {
            Check::Ramify(name) => {
                let t = self.tower(name, index, kind)?.clone();
                let r = absolute_data(&t).map_err(|e| self.check_err(index, kind, e))?;
                if self.self_check {
                    self.self_check_report(&r)?;
                }
                self.warnings += report_warnings(&r);
                let residue = self.base.residue().clone();
                let line = format!("ramify {name}: {}", report_line_for(&residue, &r));
                let obj = report_json_for(&residue, &r);
                self.push(
                    line,
                    obj,
                    vec![("check", json!("ramify")), ("tower", json!(name))],
                );
            }
            Check::Relative(big, sub) => {
                let tb = self.tower(big, index, kind)?.clone();
                let ts = self.tower(sub, index, kind)?.clone();
                let r = relative_data(&tb, &ts).map_err(|e| self.check_err(index, kind, e))?;
                if self.self_check {
                    self.self_check_report(&r)?;
                }
                self.warnings += report_warnings(&r);
                let residue = self.base.residue().clone();
                let line = format!("relative {big} {sub}: {}", report_line_for(&residue, &r));
                let obj = report_json_for(&residue, &r);
                self.push(
                    line,
                    obj,
                    vec![
                        ("check", json!("relative")),
                        ("big", json!(big)),
                        ("sub", json!(sub)),
                    ],
                );
            }
            Check::Abhyankar(t1, t2) => {
                let a = self.tower(t1, index, kind)?.clone();
                let b = self.tower(t2, index, kind)?.clone();
                let outcome =
                    elimination_check(&a, &b).map_err(|e| self.check_err(index, kind, e))?;
                match outcome {
                    EliminationOutcome::Determined(v) => {
                        let direct = if v.direct_unramified {
                            "unramified"
                        } else {
                            "ramified"
                        };
                        let witness = v.witness_display.clone().unwrap_or_else(|| "none".into());
                        let line = format!(
                            "abhyankar {t1} {t2}: e1={} e2={} e2p={} deg_lp_l1={} d_max={} lhs={} rhs={} condition={} direct={} divisible={} e={} lcm_e={} witness={}",
                            v.e1, v.e2, v.e2_prime, v.deg_lprime_over_l1, v.d_max, v.lhs, v.rhs,
                            v.condition_holds, direct, v.divisibility_e1_e2, v.e_compositum, v.lcm_e1_e2, witness,
                        );
                        let obj = vec![
                            ("e1", json_bigint(&v.e1)),
                            ("e2", json_bigint(&v.e2)),
                            ("e2p", json_bigint(&v.e2_prime)),
                            ("deg_lp_l1", json_bigint(&v.deg_lprime_over_l1)),
                            ("d_max", json!(v.d_max)),
                            ("lhs", json_bigint(&v.lhs)),
                            ("rhs", json_bigint(&v.rhs)),
                            ("condition", json!(v.condition_holds)),
                            ("direct", json!(direct)),
                            ("divisible", json!(v.divisibility_e1_e2)),
                            ("e", json_bigint(&v.e_compositum)),
                            ("lcm_e", json_bigint(&v.lcm_e1_e2)),
                            ("witness", json!(witness)),
                        ];
                        self.push(
                            line,
                            obj,
                            vec![
                                ("check", json!("abhyankar")),
                                ("t1", json!(t1)),
                                ("t2", json!(t2)),
                            ],
                        );
                    }
                    EliminationOutcome::Undetermined {
                        reason,
                        e1,
                        e2,
                        divisibility_e1_e2,
                    } => {
                        self.warnings += 1;
                        let line = format!(
                            "abhyankar {t1} {t2}: undetermined e1={e1} e2={e2} divisible={divisibility_e1_e2} reason={reason}"
                        );
                        let obj = vec![
                            ("undetermined", json!(true)),
                            ("e1", json_bigint(&e1)),
                            ("e2", json_bigint(&e2)),
                            ("divisible", json!(divisibility_e1_e2)),
                            ("reason", json!(reason)),
                        ];
                        self.push(
                            line,
                            obj,
                            vec![
                                ("check", json!("abhyankar")),
                                ("t1", json!(t1)),
                                ("t2", json!(t2)),
                            ],
                        );
                    }
                }
            }
            Check::Corollary(t1, t2) => {
                let a = self.tower(t1, index, kind)?.clone();
                let b = self.tower(t2, index, kind)?.clone();
                let c =
                    equal_index_corollary(&a, &b).map_err(|e| self.check_err(index, kind, e))?;
                let line = format!(
                    "corollary {t1} {t2}: applicable={} e1={} e2p={} verdict={}",
                    c.applicable, c.e1, c.e2_prime, c.verdict
                );
                let obj = vec![
                    ("applicable", json!(c.applicable)),
                    ("e1", json_bigint(&c.e1)),
                    ("e2p", json_bigint(&c.e2_prime)),
                    ("verdict", json!(c.verdict)),
                ];
                self.push(
                    line,
                    obj,
                    vec![
                        ("check", json!("corollary")),
                        ("t1", json!(t1)),
                        ("t2", json!(t2)),
                    ],
                );
            }
            Check::Lemma41(t1, t2) => {
                let a = self.tower(t1, index, kind)?.clone();
                let b = self.tower(t2, index, kind)?.clone();
                let pc = tame_wild_product(&a, &b).map_err(|e| self.check_err(index, kind, e))?;
                let line = format!(
                    "lemma41 {t1} {t2}: e={} e1_times_e2={} equal={} class_over_tame={} class_over_wild={}",
                    pc.e, pc.e1_times_e2, pc.equal, pc.class_over_tame, pc.class_over_wild
                );
                let obj = vec![
                    ("e", json_bigint(&pc.e)),
                    ("e1_times_e2", json_bigint(&pc.e1_times_e2)),
                    ("equal", json!(pc.equal)),
                    ("class_over_tame", json!(pc.class_over_tame.to_string())),
                    ("class_over_wild", json!(pc.class_over_wild.to_string())),
                ];
                self.push(
                    line,
                    obj,
                    vec![
                        ("check", json!("lemma41")),
                        ("t1", json!(t1)),
                        ("t2", json!(t2)),
                    ],
                );
            }
            Check::Value(name, expr) => {
                let t = self.tower(name, index, kind)?.clone();
                let parsed = parse_element(expr, &t).map_err(|e| self.check_err(index, kind, e))?;
                let rendered = match parsed {
                    ParsedExpr::Element(e) => {
                        let v = t.value_of(&e).map_err(|e| self.check_err(index, kind, e))?;
                        crate::tower::vector_string(&v)
                    }
                    ParsedExpr::Polynomial(p) => value_of_polynomial(t.base(), &p)
                        .map_err(|e| self.check_err(index, kind, e))?
                        .to_string(),
                    ParsedExpr::Quotient(n, d) => value_of_rational_function(t.base(), &n, &d)
                        .map_err(|e| self.check_err(index, kind, e))?
                        .to_string(),
                };
                let line = format!("value {name} {expr}: value={rendered}");
                let obj = vec![("value", json!(rendered))];
                self.push(
                    line,
                    obj,
                    vec![
                        ("check", json!("value")),
                        ("tower", json!(name)),
                        ("expr", json!(expr)),
                    ],
                );
            }
            Check::Dtheta(big, sub, expr) => {
                let tb = self.tower(big, index, kind)?.clone();
                let ts = self.tower(sub, index, kind)?.clone();
                let parsed =
                    parse_element(expr, &tb).map_err(|e| self.check_err(index, kind, e))?;
                let element = match parsed {
                    ParsedExpr::Element(e) => e,
                    _ => {
                        return Err(self.check_err(
                            index,
                            kind,
                            "expected a multiplicative element",
                        ));
                    }
                };
                let d = residue_degree_over(&tb, &ts, &element)
                    .map_err(|e| self.check_err(index, kind, e))?;
                if d.ambiguous {
                    self.warnings += 1;
                }
                let line = format!(
                    "dtheta {big} {sub} {expr}: d_theta={} ambiguous={}",
                    d.degree, d.ambiguous
                );
                let obj = vec![
                    ("d_theta", json!(d.degree)),
                    ("ambiguous", json!(d.ambiguous)),
                ];
                self.push(
                    line,
                    obj,
                    vec![
                        ("check", json!("dtheta")),
                        ("big", json!(big)),
                        ("sub", json!(sub)),
                        ("expr", json!(expr)),
                    ],
                );
            }
        }
        Ok(())
    }
}

pub fn run_scenario_str(input: &str, self_check: bool) -> Result<Report, ScenarioError> {
    let file: ScenarioFile = serde_json::from_str(input)?;
    let base = build_base(&file.base)?;
    let mut towers = BTreeMap::new();
    for (name, entries) in &file.towers {
        towers.insert(name.clone(), build_tower(&base, name, entries)?);
    }
    let mut runner = Runner {
        base,
        towers,
        self_check,
        lines: Vec::new(),
        results: Vec::new(),
        warnings: 0,
    };
    for (i, check) in file.checks.iter().enumerate() {
        runner.run_check(i + 1, check)?;
    }
    let mut text = String::new();
    for line in &runner.lines {
        writeln!(text, "{line}").expect("string writes cannot fail");
    }
    writeln!(
        text,
        "checks={} warnings={}",
        file.checks.len(),
        runner.warnings
    )
    .expect("string write");
    let structured = json!({
        "checks": file.checks.len(),
        "results": runner.results,
        "warnings": runner.warnings,
    });
    Ok(Report {
        text,
        structured,
        warnings: runner.warnings,
    })
}

pub fn run_scenario_path(path: &Path, self_check: bool) -> Result<Report, ScenarioError> {
    let input = std::fs::read_to_string(path).map_err(|source| ScenarioError::Io {
        path: path.display().to_string(),
        source,
    })?;
    run_scenario_str(&input, self_check)
}

// ---- sweep ---------------------------------------------------------------------------

/// Bounds for the generated scenario family. Towers are single-variable,
/// single-generator pairs root(r1, c1·t^a1) against root(r2, c2·t^a2); the
/// first tower is kept tame by construction.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub residue_chars: Vec<u64>,
    pub max_order_tame: u64,
    pub max_order_other: u64,
    pub exponents_tame: Vec<i64>,
    pub exponents_other: Vec<i64>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            residue_chars: vec![1, 3, 5, 7],
            max_order_tame: 4,
            max_order_other: 6,
            exponents_tame: vec![1, 2],
            exponents_other: vec![-2, -1, 1, 2],
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SweepSummary {
    pub total: u64,
    pub determined: u64,
    pub skipped_ambiguous: u64,
    pub unramified: u64,
    pub disagreements: Vec<String>,
    pub necessity_failures: Vec<String>,
}

impl SweepSummary {
    pub fn text(&self) -> String {
        let mut out = format!(
            "sweep: total={} determined={} skipped_ambiguous={} unramified={} disagreements={} necessity_failures={}\n",
            self.total,
            self.determined,
            self.skipped_ambiguous,
            self.unramified,
            self.disagreements.len(),
            self.necessity_failures.len(),
        );
        for d in &self.disagreements {
            out.push_str(&format!("disagreement: {d}\n"));
        }
        for d in &self.necessity_failures {
            out.push_str(&format!("necessity failure: {d}\n"));
        }
        out
    }

    pub fn structured(&self) -> Value {
        json!({
            "total": self.total,
            "determined": self.determined,
            "skipped_ambiguous": self.skipped_ambiguous,
            "unramified": self.unramified,
            "disagreements": self.disagreements,
            "necessity_failures": self.necessity_failures,
        })
    }

    pub fn clean(&self) -> bool {
        self.disagreements.is_empty() && self.necessity_failures.is_empty()
    }
}

fn sweep_constants(p: u64) -> Vec<i64> {
    if p == 1 {
        return vec![1];
    }
    let mut consts = vec![1i64];
    if p > 2 {
        consts.push(2);
    }
    if p > 3 {
        consts.push(p as i64 - 1);
    }
    consts.sort_unstable();
    consts.dedup();
    consts
}

fn sweep_tower(base: &BaseField, name: &str, r: u64, a: i64, c: i64) -> Tower {
    let spec = RadicalGenerator {
        name: name.to_string(),
        constant: base.residue().const_from_int(c),
        exponents: vec![a],
        order: r,
    };
    Tower::new(base.clone())
        .adjoin(spec)
        .expect("sweep generators are valid")
}

/// Runs the scenario family: on every determined pair the criterion verdict
/// must agree with the direct value-group verdict, every unramified verdict
/// must satisfy the divisibility and lcm necessities, and ambiguous pairs
/// are counted as skipped.
pub fn run_sweep(config: &SweepConfig) -> SweepSummary {
    let mut summary = SweepSummary::default();
    for &p in &config.residue_chars {
        let residue = if p == 1 {
            ResidueField::rational()
        } else {
            ResidueField::finite(p, 1).expect("sweep residue characteristics are prime")
        };
        let base = BaseField::new(residue, vec!["t".to_string()]).expect("single variable base");
        let constants = sweep_constants(p);
        for r1 in 1..=config.max_order_tame {
            if p != 1 && r1.gcd(&p) != 1 {
                continue;
            }
            for &a1 in &config.exponents_tame {
                for r2 in 1..=config.max_order_other {
                    for &a2 in &config.exponents_other {
                        for &c2 in &constants {
                            summary.total += 1;
                            let t1 = sweep_tower(&base, "g1", r1, a1, 1);
                            let t2 = sweep_tower(&base, "g1", r2, a2, c2);
                            let label =
                                format!("p={p} t1=root({r1},t^{a1}) t2=root({r2},{c2}*t^{a2})");
                            match elimination_check(&t1, &t2) {
                                Ok(EliminationOutcome::Determined(v)) => {
                                    summary.determined += 1;
                                    if v.condition_holds != v.direct_unramified {
                                        summary.disagreements.push(format!(
                                            "{label}: condition={} direct={}",
                                            v.condition_holds, v.direct_unramified
                                        ));
                                    }
                                    if v.direct_unramified {
                                        summary.unramified += 1;
                                        if !v.divisibility_e1_e2 {
                                            summary.necessity_failures.push(format!(
                                                "{label}: unramified but e1 does not divide e2"
                                            ));
                                        }
                                        if v.e_compositum != v.lcm_e1_e2 {
                                            summary.necessity_failures.push(format!(
                                                "{label}: unramified but e={} differs from lcm={}",
                                                v.e_compositum, v.lcm_e1_e2
                                            ));
                                        }
                                    }
                                }
                                Ok(EliminationOutcome::Undetermined { .. }) => {
                                    summary.skipped_ambiguous += 1;
                                }
                                Err(e) => {
                                    summary.disagreements.push(format!("{label}: error {e}"));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    summary
}
