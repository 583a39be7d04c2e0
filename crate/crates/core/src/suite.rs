//! Named verification suites and their JSON reports.

use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::conditions::{
    conjugate_power_obstruction, cond2_witness, cond2prime_witness, degree_alignment, finite_group_analysis, klyachko_exponent,
    klyachko_verify, noncommuting_partner, remark1_bound_audit, star_case_analysis, star_induction_check, SearchOutcome,
};
use crate::error::{Error, Result};
use crate::goldie::{
    descending_chain_report, e_faithful_probe, gr_simplicity_probe, gs_candidate_build, periodic_power_regularize, regular_census,
    CensusReport, ShapeClass,
};
use crate::group::{random_restricted, FiniteTable, Group, GroupElement, RestrictedElement};
use crate::quotient::{fraction_normalize_periodic, nastasescu_embedding_audit, phi_module_audit, quotient_is_trivial, GradedHom};
use crate::ring::{bazhenov_audit, grading_axiom_audit, MatrixBase, Mono, RingInstance};
use crate::scalar::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    GroupConditions,
    Counterexample,
    Nastasescu,
    Bazhenov,
    Quotient,
    GsConstruction,
    Remark1Audit,
    All,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::GroupConditions,
        Suite::Counterexample,
        Suite::Nastasescu,
        Suite::Bazhenov,
        Suite::Quotient,
        Suite::GsConstruction,
        Suite::Remark1Audit,
        Suite::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::GroupConditions => "group-conditions",
            Suite::Counterexample => "counterexample",
            Suite::Nastasescu => "nastasescu",
            Suite::Bazhenov => "bazhenov",
            Suite::Quotient => "quotient",
            Suite::GsConstruction => "gs-construction",
            Suite::Remark1Audit => "remark1-audit",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::UnknownSymbol(s.to_string()))
    }
}

/// Suite parameters; `None` selects the suite's own default.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteSpec {
    pub suite: Suite,
    pub group: Option<String>,
    pub g: Option<String>,
    pub h: Option<String>,
    pub n_max: u64,
    pub m_max: u64,
    pub max_degree: Option<usize>,
    pub coeff_bound: Option<i64>,
    pub samples: Option<usize>,
    pub seed: u64,
    pub field: Field,
    /// Record wall-clock times; off by default so reports are reproducible byte for byte.
    pub timings: bool,
}

impl SuiteSpec {
    pub fn new(suite: Suite) -> Self {
        SuiteSpec {
            suite,
            group: None,
            g: None,
            h: None,
            n_max: 64,
            m_max: 64,
            max_degree: None,
            coeff_bound: None,
            samples: None,
            seed: 0,
            field: Field::Rational,
            timings: false,
        }
    }

    fn validate(&self) -> Result<()> {
        let positive = [
            ("n-max", self.n_max as i64),
            ("m-max", self.m_max as i64),
            ("max-degree", self.max_degree.unwrap_or(1) as i64),
            ("coeff-bound", self.coeff_bound.unwrap_or(1)),
            ("samples", self.samples.unwrap_or(1) as i64),
        ];
        match positive.iter().find(|(_, v)| *v <= 0) {
            Some((name, _)) => Err(Error::InvalidInstance(format!("--{name} must be positive"))),
            None => Ok(()),
        }
    }
}

/// `z`, `z^N`, `c:N`, a built-in table name, `d-infty`, `dihedral-product`, `bs12` or `file:PATH`.
pub fn parse_group_spec(text: &str) -> Result<Group> {
    let bad = || Error::UnknownSymbol(text.to_string());
    if let Some(path) = text.strip_prefix("file:") {
        return Ok(Group::table(FiniteTable::from_json_file(Path::new(path))?));
    }
    if let Some(n) = text.strip_prefix("z^") {
        let n: usize = n.parse().map_err(|_| bad())?;
        return if n == 0 { Err(bad()) } else { Ok(Group::FreeAbelian(n)) };
    }
    if let Some(n) = text.strip_prefix("c:") {
        let n: u32 = n.parse().map_err(|_| bad())?;
        return if n == 0 { Err(bad()) } else { Ok(Group::Cyclic(n)) };
    }
    match text {
        "z" => Ok(Group::Integers),
        "d-infty" => Ok(Group::InfiniteDihedral),
        "dihedral-product" => Ok(Group::RestrictedDihedral),
        "bs12" => Ok(Group::BaumslagSolitar),
        _ => Group::builtin_table(text).ok_or_else(bad),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: Value,
    /// Audit result worth reporting that does not count as a failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub finding: Option<String>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub exhausted: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub instance: String,
    pub parameters: Value,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    fn new(suite: &str, instance: String, parameters: Value, checks: Vec<Check>) -> Self {
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Exhausted => summary.exhausted += 1,
            }
        }
        Report { suite: suite.into(), instance, parameters, checks, summary }
    }

    /// 0 all pass, 1 any fail, 2 any exhausted and none failed.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            1
        } else if self.summary.exhausted > 0 {
            2
        } else {
            0
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} on {}\n", self.suite, self.instance);
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Exhausted => "EXHAUSTED",
            };
            out.push_str(&format!("{tag:9} {}", c.name));
            if let Some(f) = &c.finding {
                out.push_str(&format!("  [finding: {f}]"));
            }
            out.push('\n');
        }
        out.push_str(&format!("pass {} fail {} exhausted {}\n", self.summary.pass, self.summary.fail, self.summary.exhausted));
        out
    }
}

struct Outcome {
    status: Status,
    witness: Value,
    finding: Option<String>,
}

impl Outcome {
    fn pass(witness: Value) -> Self {
        Outcome { status: Status::Pass, witness, finding: None }
    }

    fn fail(witness: Value) -> Self {
        Outcome { status: Status::Fail, witness, finding: None }
    }

    fn exhausted(witness: Value) -> Self {
        Outcome { status: Status::Exhausted, witness, finding: None }
    }

    fn when(ok: bool, witness: Value) -> Self {
        if ok {
            Outcome::pass(witness)
        } else {
            Outcome::fail(witness)
        }
    }

    fn finding(mut self, text: impl Into<String>) -> Self {
        self.finding = Some(text.into());
        self
    }
}

struct Runner {
    prefix: String,
    timings: bool,
    checks: Vec<Check>,
}

impl Runner {
    fn new(timings: bool) -> Self {
        Runner { prefix: String::new(), timings, checks: Vec::new() }
    }

    fn run(&mut self, name: &str, f: impl FnOnce() -> Result<Outcome>) {
        let start = Instant::now();
        let outcome = f().unwrap_or_else(|e| Outcome::fail(json!({"error": e.to_string()})));
        let elapsed_ms = if self.timings { start.elapsed().as_millis() as u64 } else { 0 };
        self.checks.push(Check {
            name: format!("{}{name}", self.prefix),
            status: outcome.status,
            witness: outcome.witness,
            finding: outcome.finding,
            elapsed_ms,
        });
    }
}

fn word(group: &Group, text: &str) -> Result<GroupElement> {
    group.parse_word(text)
}

/// Default group and `(g, h)` pair of each suite.
fn defaults(suite: Suite, group: &Group) -> (String, String) {
    let pair = |g: &str, h: &str| (g.to_string(), h.to_string());
    match (suite, group) {
        (_, Group::InfiniteDihedral) => pair("s", "r"),
        (Suite::Counterexample | Suite::Quotient, Group::BaumslagSolitar) => pair("b", "a"),
        (_, Group::BaumslagSolitar) => pair("a", "b"),
        (_, Group::RestrictedDihedral) => pair("s1", "rho"),
        _ => {
            // h of largest order, g another generator
            let names = group.generator_names();
            let order = |n: &String| group.element_order(&group.generator(n).expect("listed"), 1 << 16).finite().unwrap_or(u64::MAX);
            let h = names.iter().max_by_key(|n| order(n)).expect("at least one generator").clone();
            let g = names.iter().find(|n| **n != h).cloned().unwrap_or_else(|| h.clone());
            (g, h)
        }
    }
}

fn default_group(suite: Suite) -> &'static str {
    match suite {
        Suite::Remark1Audit | Suite::GsConstruction => "S3",
        Suite::Nastasescu => "z",
        _ => "d-infty",
    }
}

struct Resolved {
    group: Group,
    g: GroupElement,
    h: GroupElement,
    params: Value,
}

fn resolve(spec: &SuiteSpec) -> Result<Resolved> {
    spec.validate()?;
    let group_name = spec.group.clone().unwrap_or_else(|| default_group(spec.suite).to_string());
    let group = parse_group_spec(&group_name)?;
    let (dg, dh) = defaults(spec.suite, &group);
    let g_text = spec.g.clone().unwrap_or(dg);
    let h_text = spec.h.clone().unwrap_or(dh);
    let g = word(&group, &g_text)?;
    let h = word(&group, &h_text)?;
    let params = json!({
        "group": group_name,
        "g": group.format(&g),
        "h": group.format(&h),
        "n_max": spec.n_max,
        "m_max": spec.m_max,
        "max_degree": spec.max_degree,
        "coeff_bound": spec.coeff_bound,
        "samples": spec.samples,
        "seed": spec.seed,
        "field": spec.field.name(),
    });
    Ok(Resolved { group, g, h, params })
}

/// Runs a suite. Parameter errors surface as `Err`; failures inside a check become `fail` entries.
pub fn run_suite(spec: &SuiteSpec) -> Result<Report> {
    if spec.suite == Suite::All {
        return run_all(spec);
    }
    let r = resolve(spec)?;
    let mut runner = Runner::new(spec.timings);
    let instance = add_suite(&mut runner, spec, &r)?;
    Ok(Report::new(spec.suite.name(), instance, r.params, runner.checks))
}

/// Fixed list of suite runs behind `all`; only the seed, field and timing flags carry over.
fn all_plan() -> Vec<(Suite, &'static str)> {
    vec![
        (Suite::GroupConditions, "d-infty"),
        (Suite::GroupConditions, "bs12"),
        (Suite::GroupConditions, "dihedral-product"),
        (Suite::GroupConditions, "S3"),
        (Suite::Counterexample, "d-infty"),
        (Suite::Counterexample, "bs12"),
        (Suite::Nastasescu, "z"),
        (Suite::Bazhenov, "d-infty"),
        (Suite::Quotient, "d-infty"),
        (Suite::GsConstruction, "S3"),
        (Suite::Remark1Audit, "S3"),
        (Suite::Remark1Audit, "Q8"),
    ]
}

fn run_all(spec: &SuiteSpec) -> Result<Report> {
    spec.validate()?;
    let mut runner = Runner::new(spec.timings);
    let mut runs = Vec::new();
    for (suite, group) in all_plan() {
        let sub = SuiteSpec { suite, group: Some(group.into()), seed: spec.seed, field: spec.field, timings: spec.timings, ..SuiteSpec::new(suite) };
        let r = resolve(&sub)?;
        runner.prefix = format!("{}[{group}]/", suite.name());
        let instance = add_suite(&mut runner, &sub, &r)?;
        runs.push(json!({"suite": suite.name(), "group": group, "instance": instance}));
    }
    let params = json!({"seed": spec.seed, "field": spec.field.name(), "runs": runs});
    Ok(Report::new("all", "multiple".into(), params, runner.checks))
}

fn add_suite(run: &mut Runner, spec: &SuiteSpec, r: &Resolved) -> Result<String> {
    match spec.suite {
        Suite::GroupConditions => group_conditions(run, spec, r),
        Suite::Counterexample => counterexample(run, spec, r),
        Suite::Nastasescu => nastasescu(run, spec, r),
        Suite::Bazhenov => bazhenov(run, spec),
        Suite::Quotient => quotient(run, spec, r),
        Suite::GsConstruction => gs_construction(run, spec, r),
        Suite::Remark1Audit => remark1(run, r),
        Suite::All => unreachable!("expanded by run_all"),
    }
}

fn search_outcome<W>(outcome: &SearchOutcome<W>, json_of: impl Fn(&W) -> Value, verify: impl Fn(&W) -> bool) -> Outcome {
    let witness = outcome.to_json(&json_of);
    match outcome {
        SearchOutcome::Found(w) => Outcome::when(verify(w), witness),
        SearchOutcome::ExhaustedBound { certificate: Some(c), .. } => {
            Outcome::pass(witness).finding(format!("no witness exists for this pair: {}", c.claim))
        }
        SearchOutcome::ExhaustedBound { certificate: None, .. } => Outcome::exhausted(witness),
        SearchOutcome::ViolationFound(_) => Outcome::fail(witness),
    }
}

fn group_conditions(run: &mut Runner, spec: &SuiteSpec, r: &Resolved) -> Result<String> {
    let (group, g, h) = (&r.group, &r.g, &r.h);
    run.run("cond2", || {
        let out = cond2_witness(group, g, h, spec.n_max)?;
        Ok(search_outcome(&out, |w| w.to_json(group), |w| w.verify(group)))
    });
    run.run("cond2prime", || {
        let out = cond2prime_witness(group, g, h, spec.m_max, spec.n_max)?;
        Ok(search_outcome(&out, |w| w.to_json(group), |w| w.verify(group)))
    });
    run.run("star-induction", || {
        let premise = cond2prime_witness(group, g, h, spec.m_max, spec.n_max)?;
        let Some(w) = premise.found() else {
            return Ok(Outcome::pass(json!({"premise": "no (m, n) with g h^m g^-1 = h^n in range"}))
                .finding("premise never holds, nothing to check"));
        };
        let d_max = if group.is_finite() { 3 } else { 5 };
        let report = star_induction_check(group, g, h, w.m, w.n, d_max)?;
        Ok(Outcome::when(report.all_pass(), json!({"m": w.m, "n": w.n, "d_max": d_max, "report": report.to_json(group)})))
    });
    if group.is_finite() {
        run.run("finite-analysis", || {
            let a = finite_group_analysis(group)?;
            Ok(Outcome::when(a.index_bound_holds, a.to_json(group)))
        });
        run.run("cond2-bounded-by-exponent", || {
            let a = finite_group_analysis(group)?;
            let elements = group.elements().expect("finite");
            let mut worst = None;
            for x in &elements {
                for y in &elements {
                    if let Some(w) = cond2_witness(group, x, y, a.exponent)?.found() {
                        if w.n > a.exponent {
                            worst = Some(w.to_json(group));
                        }
                    } else {
                        worst = Some(json!({"g": group.format(x), "h": group.format(y), "missing": true}));
                    }
                    if worst.is_some() {
                        break;
                    }
                }
            }
            Ok(match worst {
                None => Outcome::pass(json!({"exponent": a.exponent, "pairs": elements.len() * elements.len()})),
                Some(w) => Outcome::fail(w),
            })
        });
        run.run("star-case-analysis", || {
            let Some(w) = cond2prime_witness(group, g, h, spec.m_max, spec.n_max)?.found().cloned() else {
                return Ok(Outcome::pass(json!(null)).finding("premise never holds, nothing to check"));
            };
            let Some(v) = cond2prime_witness(group, h, g, spec.m_max, spec.n_max)?.found().cloned() else {
                return Ok(Outcome::pass(json!(null)).finding("no (k, l) with h g^k h^-1 = g^l in range"));
            };
            let (k, l) = (u32::try_from(v.m).expect("bounded"), u32::try_from(v.n).expect("bounded"));
            let rep = star_case_analysis(group, g, h, k, l, w.m, w.n)?;
            let ok = rep.equalities.iter().all(|e| e.holds) && rep.reduced_identity.holds;
            Ok(Outcome::when(ok, serde_json::to_value(&rep).expect("serializable")))
        });
    }
    if matches!(group, Group::RestrictedDihedral) {
        klyachko_checks(run, spec);
    }
    Ok(group.name())
}

fn klyachko_checks(run: &mut Runner, spec: &SuiteSpec) {
    let d = Group::RestrictedDihedral;
    let samples = spec.samples.unwrap_or(100);
    run.run("klyachko-formula", || {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        for i in 0..samples {
            let g = random_restricted(&mut rng, 3, 4);
            let h = random_restricted(&mut rng, 3, 4);
            if !klyachko_verify(&g, &h) {
                let fmt = |x: &RestrictedElement| d.format(&GroupElement::Restricted(x.clone()));
                return Ok(Outcome::fail(json!({"sample": i, "g": fmt(&g), "h": fmt(&h), "n": klyachko_exponent(&g)})));
            }
        }
        Ok(Outcome::pass(json!({"pairs": samples})))
    });
    run.run("tail-infinite-order", || {
        let t = GroupElement::Restricted(RestrictedElement::tail_rotation(1));
        let order = d.element_order(&t, 1000);
        Ok(Outcome::when(order.is_structurally_infinite(), json!({"element": d.format(&t), "order": order})))
    });
    run.run("center-trivial-probe", || {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed.wrapping_add(1));
        let mut tested = 0;
        while tested < 50 {
            let g = random_restricted(&mut rng, 3, 4);
            if g.is_identity() {
                continue;
            }
            tested += 1;
            let ge = GroupElement::Restricted(g.clone());
            let ok = noncommuting_partner(&g).is_some_and(|p| !d.commutes(&ge, &GroupElement::Restricted(p)));
            if !ok {
                return Ok(Outcome::fail(json!({"element": d.format(&ge)})));
            }
        }
        Ok(Outcome::pass(json!({"elements": tested})))
    });
}

fn census_summary(inst: &RingInstance, census: &CensusReport) -> Value {
    let full = census.to_json(inst);
    let g = inst.group();
    let e = g.identity();
    let f = |a| inst.format_element(a);
    let offending: Vec<Value> = census
        .shapes
        .iter()
        .filter_map(|s| match &s.class {
            ShapeClass::Unit { representative, inverse } if s.degree != e => Some(json!({
                "degree": g.format(&s.degree), "kind": "unit", "representative": f(representative), "inverse": f(inverse)
            })),
            ShapeClass::RegularNonUnit { representative, proof } => Some(json!({
                "degree": g.format(&s.degree), "kind": "regular_non_unit", "representative": f(representative), "proof": proof
            })),
            ShapeClass::Inconclusive { note } => Some(json!({"degree": g.format(&s.degree), "kind": "inconclusive", "note": note})),
            _ => None,
        })
        .collect();
    json!({"summary": full["summary"], "window_degrees": full["window_degrees"], "coeff_bound": full["coeff_bound"], "exceptions": offending})
}

fn counterexample(run: &mut Runner, spec: &SuiteSpec, r: &Resolved) -> Result<String> {
    let inst = RingInstance::counterexample(r.group.clone(), r.g.clone(), r.h.clone(), spec.field)?;
    let radius = spec.max_degree.unwrap_or(6);
    let bound = spec.coeff_bound.unwrap_or(6);
    let window = inst.ball_window(radius, bound);
    run.run("grading-axioms", || {
        let audit = grading_axiom_audit(&inst, spec.samples.unwrap_or(1000), &window, spec.seed);
        Ok(Outcome::when(audit.passed(), json!(audit)))
    });
    run.run("component-patterns", || {
        let gr = &r.group;
        let mut patterns = serde_json::Map::new();
        for d in [gr.identity(), r.g.clone(), r.h.clone(), gr.inverse(&r.h), gr.mul(&r.g, &r.h)] {
            patterns.insert(gr.format(&d), json!(inst.component_pattern(&d)?.to_string()));
        }
        Ok(Outcome::pass(Value::Object(patterns)))
    });
    run.run("obstruction", || {
        let out = conjugate_power_obstruction(&r.group, &r.g, &r.h, spec.n_max, spec.n_max)?;
        let w = out.to_json(|v| json!(v));
        Ok(match &out {
            SearchOutcome::ExhaustedBound { certificate: Some(_), .. } => Outcome::pass(w),
            SearchOutcome::ExhaustedBound { certificate: None, .. } => Outcome::exhausted(w),
            _ => Outcome::fail(w),
        })
    });
    run.run("census-scalar-units", || {
        let census = regular_census(&inst, &window)?;
        Ok(Outcome::when(census.regulars_are_scalar_units_at_identity(&inst), census_summary(&inst, &census)))
    });
    run.run("e-faithful-probe", || {
        let report = e_faithful_probe(&inst, &inst.monomial_window(2));
        let ok = !report.is_faithful();
        Ok(Outcome::when(ok, report.to_json(&inst)))
    });
    Ok(inst.name())
}

fn nastasescu(run: &mut Runner, spec: &SuiteSpec, r: &Resolved) -> Result<String> {
    let inst = if matches!(r.group, Group::Integers) && spec.g.is_none() {
        RingInstance::nastasescu_default(spec.field)
    } else {
        RingInstance::nastasescu(r.group.clone(), r.h.clone(), spec.field)?
    };
    let max_degree = spec.max_degree.unwrap_or(10) as i64;
    let window = inst.monomial_window(max_degree);
    let one = spec.field.one();
    let x = inst.monomial(Mono::new(0, 1), one);
    run.run("grading-axioms", || {
        let audit = grading_axiom_audit(&inst, spec.samples.unwrap_or(1000), &window, spec.seed);
        Ok(Outcome::when(audit.passed(), json!(audit)))
    });
    let census = regular_census(&inst, &window);
    run.run("census-scalar-units", || {
        let census = census.clone()?;
        Ok(Outcome::when(census.regulars_are_scalar_units_at_identity(&inst), census_summary(&inst, &census)))
    });
    run.run("quotient-trivial", || {
        let q = quotient_is_trivial(&inst, &census.clone()?)?;
        Ok(Outcome::pass(json!(q)))
    });
    run.run("descending-chain", || {
        let report = descending_chain_report(&inst, &x, 10, &inst.monomial_window(3))?;
        Ok(Outcome::when(report.strictly_descending(), report.to_json(&inst)))
    });
    run.run("embedding", || {
        let report = nastasescu_embedding_audit(&inst, spec.samples.unwrap_or(500), max_degree.min(8), spec.seed)?;
        Ok(Outcome::when(report.passed(), json!(report)))
    });
    run.run("e-faithful-probe", || {
        let report = e_faithful_probe(&inst, &inst.monomial_window(3));
        let first = report.failures().next();
        let ok = first.is_some_and(|f| f.r == x);
        Ok(Outcome::when(ok, report.to_json(&inst)))
    });
    Ok(inst.name())
}

fn bazhenov(run: &mut Runner, spec: &SuiteSpec) -> Result<String> {
    let inst = RingInstance::bazhenov(spec.field);
    let audit = bazhenov_audit(spec.field, spec.samples.unwrap_or(1000), spec.seed);
    run.run("grading-axioms", || {
        let a = grading_axiom_audit(&inst, spec.samples.unwrap_or(1000), &inst.ball_window(4, 4), spec.seed);
        Ok(Outcome::when(a.passed(), json!(a)))
    });
    run.run("relations", || {
        let ok = audit.relations.iter().all(|c| c.holds);
        let mut out = Outcome::when(ok, json!({"relations": audit.relations, "printed_relation": audit.literal_relation}));
        if !audit.literal_relation.holds {
            out = out.finding("the matrix model satisfies xz = zy; the relation xz = yx does not hold there");
        }
        Ok(out)
    });
    run.run("degrees", || {
        let ok = audit.degrees.iter().all(|c| c.holds);
        let mut out = Outcome::when(ok, json!({"degrees": audit.degrees, "degree_s_units": audit.degree_s_units}));
        if !audit.degree_s_units.is_empty() {
            out = out.finding("z is a homogeneous unit of degree s, so the regular homogeneous elements are not only scalars");
        }
        Ok(out)
    });
    run.run("membership", || {
        let ok = audit.membership_examples.iter().all(|c| c.holds) && audit.closure_violations == 0;
        Ok(Outcome::when(
            ok,
            json!({"examples": audit.membership_examples, "closure_pairs": audit.closure_pairs, "closure_violations": audit.closure_violations}),
        ))
    });
    Ok(inst.name())
}

fn quotient(run: &mut Runner, spec: &SuiteSpec, r: &Resolved) -> Result<String> {
    let inst = RingInstance::counterexample(r.group.clone(), r.g.clone(), r.h.clone(), spec.field)?;
    let samples = spec.samples.unwrap_or(200);
    for hom in GradedHom::all() {
        run.run(&format!("{}-module-audit", hom.name()), || {
            let audit = phi_module_audit(&inst, hom, samples, spec.max_degree.unwrap_or(8) as i64, spec.seed)?;
            Ok(Outcome::when(audit.passed(), audit.to_json()))
        });
    }
    run.run("trivial-quotient", || {
        let window = inst.ball_window(spec.max_degree.unwrap_or(4).min(4), spec.coeff_bound.unwrap_or(4));
        let census = regular_census(&inst, &window)?;
        let q = quotient_is_trivial(&inst, &census)?;
        Ok(Outcome::pass(json!(q)))
    });
    run.run("periodic-fraction", || {
        let group = Group::builtin_table("S3").expect("built-in");
        let ga = RingInstance::group_algebra(group, spec.field)?;
        let one = spec.field.one();
        let s = ga.add(&ga.monomial(Mono::new(0, 1), one.clone()), &ga.zero());
        let r = ga.add(&ga.one(), &ga.monomial(Mono::new(0, 2), one));
        let fr = fraction_normalize_periodic(&ga, &r, &s, 100)?;
        let in_e = fr.denominator.degree().ok() == Some(&ga.group().identity());
        let f = |a| ga.format_element(a);
        Ok(Outcome::when(
            fr.cross_multiplication_holds && in_e,
            json!({"r": f(&r), "s": f(&s), "k": fr.k, "numerator": f(&fr.numerator), "denominator": f(&fr.denominator)}),
        ))
    });
    Ok(inst.name())
}

fn gs_construction(run: &mut Runner, spec: &SuiteSpec, r: &Resolved) -> Result<String> {
    let field = spec.field;
    run.run("matrix-example", || {
        let m = RingInstance::matrix(Group::Integers, MatrixBase::GroundField, vec![GroupElement::Int(0); 2], field)?;
        let e = |s: u8| m.monomial(Mono::new(s, 0), field.one());
        let set = gs_candidate_build(&m, &[e(0), e(3)], &[e(2), e(1)], 10, &m.monomial_window(0))?;
        let ok = set.d_list == vec![e(0), e(3)] && set.k == 1 && set.d == m.one() && set.certificate.is_unit();
        Ok(Outcome::when(ok, set.to_json(&m)))
    });
    run.run("polynomial-example", || {
        let p = RingInstance::poly_d(Group::Integers, GroupElement::Int(1), field)?;
        let t = p.monomial(Mono::new(0, 1), field.one());
        let set = gs_candidate_build(&p, std::slice::from_ref(&t), &[p.one()], 10, &p.monomial_window(4))?;
        let ok = set.d_list == vec![p.mul(&t, &t)] && set.certificate.is_proven_regular();
        Ok(Outcome::when(ok, set.to_json(&p)))
    });
    run.run("periodic-powers", || {
        if !r.group.is_finite() {
            return Ok(Outcome::pass(json!(null)).finding("group is infinite; periodic regularization needs a periodic group"));
        }
        let ga = RingInstance::group_algebra(r.group.clone(), field)?;
        let gens: Vec<_> = r.group.generators().into_iter().filter_map(|x| {
            let idx = ga.component_basis(&x).into_iter().next()?;
            Some(crate::ring::GradedElement::homogeneous(x, idx))
        }).collect();
        let rep = periodic_power_regularize(&ga, &gens, 1000, &ga.monomial_window(0))?;
        Ok(Outcome::when(rep.certificate.is_unit() || rep.certificate.is_proven_regular(), rep.to_json(&ga)))
    });
    run.run("degree-alignment", || {
        let (group, h) = (&r.group, &r.h);
        let list = vec![h.clone(), group.mul(h, h), group.conjugate(h, &r.g)];
        let res = degree_alignment(group, &list, 1000)?;
        Ok(Outcome::pass(res.to_json(group)))
    });
    run.run("gr-simplicity", || {
        let lm = RingInstance::laurent_matrix(Group::InfiniteDihedral, word(&Group::InfiniteDihedral, "s")?, word(&Group::InfiniteDihedral, "r")?, field)?;
        let report = gr_simplicity_probe(&lm, spec.samples.unwrap_or(50), 4, spec.seed)?;
        Ok(Outcome::when(report.all_verified(), report.to_json(&lm)))
    });
    Ok(format!("goodearl-stafford constructions ({})", r.group.name()))
}

fn remark1(run: &mut Runner, r: &Resolved) -> Result<String> {
    let group = &r.group;
    run.run("remark1-bound", || {
        let audit = remark1_bound_audit(group)?;
        let w = audit.to_json(group);
        Ok(if audit.holds_uniformly {
            Outcome::pass(w)
        } else {
            Outcome::pass(w).finding(format!(
                "h^(k^k) with k^k = {} is not central for every h; least uniform exponent is {}",
                audit.n_claimed, audit.minimal_uniform_n
            ))
        })
    });
    Ok(group.name())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_specs() {
        assert_eq!(parse_group_spec("z").unwrap(), Group::Integers);
        assert_eq!(parse_group_spec("z^3").unwrap(), Group::FreeAbelian(3));
        assert_eq!(parse_group_spec("c:5").unwrap(), Group::Cyclic(5));
        assert_eq!(parse_group_spec("bs12").unwrap(), Group::BaumslagSolitar);
        assert!(parse_group_spec("S3").unwrap().is_finite());
        assert!(parse_group_spec("c:0").is_err());
        assert!(parse_group_spec("nope").is_err());
        assert!(matches!(parse_group_spec("file:/nonexistent.json"), Err(Error::Io(_))));
    }

    #[test]
    fn remark1_is_a_finding() {
        let report = run_suite(&SuiteSpec { group: Some("S3".into()), ..SuiteSpec::new(Suite::Remark1Audit) }).unwrap();
        let c = report.check("remark1-bound").unwrap();
        assert_eq!(c.status, Status::Pass);
        assert!(c.finding.is_some());
        assert_eq!(c.witness["minimal_uniform_n"], 6);
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn group_conditions_bs12() {
        let report = run_suite(&SuiteSpec { group: Some("bs12".into()), ..SuiteSpec::new(Suite::GroupConditions) }).unwrap();
        let star = report.check("star-induction").unwrap();
        assert_eq!(star.status, Status::Pass, "{:?}", star.witness);
        assert_eq!((star.witness["m"].clone(), star.witness["n"].clone()), (json!(1), json!(2)));
    }

    #[test]
    fn bad_parameters() {
        let spec = SuiteSpec { samples: Some(0), ..SuiteSpec::new(Suite::Bazhenov) };
        assert!(run_suite(&spec).is_err());
        let spec = SuiteSpec { g: Some("q".into()), ..SuiteSpec::new(Suite::GroupConditions) };
        assert!(matches!(run_suite(&spec), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn report_shape() {
        let report = run_suite(&SuiteSpec::new(Suite::Bazhenov)).unwrap();
        let v: Value = serde_json::from_str(&report.to_json_string()).unwrap();
        for key in ["suite", "instance", "parameters", "checks", "summary"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert!(v["checks"].as_array().unwrap().iter().all(|c| c["elapsed_ms"] == 0));
        assert_eq!(report.exit_code(), 0, "{}", report.to_text());
    }
}
