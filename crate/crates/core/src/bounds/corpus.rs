//! Corpus runs: generated instances, check selection and the merged report.

use serde::{Deserialize, Serialize};

use super::{
    check_lemma_nodal_cheeger, check_nodal_count_bounds, Analysis, CheckKind, CheckRecord,
    VerifyOptions,
};
use crate::graph::{generate, Family, GenParams, WeightedGraph};
use crate::rng::derive_seed;
use crate::{Error, Result};

/// Names accepted by [`preset`].
pub const PRESETS: [&str; 4] = ["standard", "trees", "signed", "gn"];

/// One family of generated instances. Instance `i` has `n = sizes[i % len]`
/// and, for random families, seed `derive_seed(seed, i)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusGroup {
    pub family: Family,
    pub sizes: Vec<usize>,
    /// Defaults to one instance per size.
    #[serde(default)]
    pub count: Option<usize>,
    /// Generator parameters; `n` is taken from `sizes`.
    #[serde(default)]
    pub params: GenParams,
    #[serde(default)]
    pub seed: u64,
    /// Instance id prefix; defaults to the family name.
    #[serde(default)]
    pub label: Option<String>,
    /// Replaces the corpus-wide check list for this group.
    #[serde(default)]
    pub checks: Option<Vec<CheckKind>>,
}

fn default_checks() -> Vec<CheckKind> {
    vec![
        CheckKind::Main,
        CheckKind::Nodal,
        CheckKind::Lemma,
        CheckKind::Lower,
        CheckKind::Basics,
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusConfig {
    #[serde(default)]
    pub name: String,
    pub groups: Vec<CorpusGroup>,
    #[serde(default = "default_checks")]
    pub checks: Vec<CheckKind>,
    #[serde(default)]
    pub options: VerifyOptions,
}

impl CorpusConfig {
    /// Uses `checks` for every group, dropping per-group lists.
    pub fn restrict_checks(&mut self, checks: Vec<CheckKind>) {
        self.checks = checks;
        for g in &mut self.groups {
            g.checks = None;
        }
    }
}

fn random_connected_group(count: usize, p_negative: f64) -> CorpusGroup {
    CorpusGroup {
        family: Family::RandomConnected,
        sizes: (4..=10).collect(),
        count: Some(count),
        params: GenParams {
            p: 0.3,
            w_min: 0.5,
            w_max: 2.0,
            p_negative,
            ..GenParams::default()
        },
        seed: 1,
        label: None,
        checks: None,
    }
}

fn gn_group() -> CorpusGroup {
    CorpusGroup {
        family: Family::Gn,
        sizes: (3..=6).collect(),
        count: None,
        params: GenParams::default(),
        seed: 0,
        label: None,
        checks: Some(CheckKind::ALL.to_vec()),
    }
}

/// Built-in corpora:
///
/// - `standard`: 200 random connected graphs (`n` cycling through 4..=10,
///   edge probability 0.3, weights in `[0.5, 2)`, `mu = d`) and `gn(3..=6)`;
/// - `trees`: 100 random trees, `n` cycling through 4..=12, same weights;
/// - `signed`: the first 100 standard random graphs with each edge negative
///   with probability 1/2 (same underlying graphs and weights);
/// - `gn`: `gn(3..=6)` with every check, including the `rho_2` floor.
pub fn preset(name: &str) -> Result<CorpusConfig> {
    let (groups, checks) = match name {
        "standard" => (
            vec![random_connected_group(200, 0.0), gn_group()],
            default_checks(),
        ),
        "trees" => {
            let trees = CorpusGroup {
                family: Family::RandomTree,
                sizes: (4..=12).collect(),
                count: Some(100),
                params: GenParams {
                    w_min: 0.5,
                    w_max: 2.0,
                    ..GenParams::default()
                },
                seed: 2,
                label: None,
                checks: None,
            };
            (vec![trees], default_checks())
        }
        "signed" => (
            vec![CorpusGroup {
                label: Some("signed".into()),
                ..random_connected_group(100, 0.5)
            }],
            vec![CheckKind::Main, CheckKind::Basics],
        ),
        "gn" => (vec![gn_group()], CheckKind::ALL.to_vec()),
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown corpus {other:?}; expected one of {}",
                PRESETS.join(", ")
            )))
        }
    };
    Ok(CorpusConfig {
        name: name.to_string(),
        groups,
        checks,
        options: VerifyOptions::default(),
    })
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub id: String,
    pub graph: WeightedGraph,
    pub checks: Vec<CheckKind>,
}

impl CorpusConfig {
    pub fn instances(&self) -> Result<Vec<Instance>> {
        let mut out = Vec::new();
        for group in &self.groups {
            if group.sizes.is_empty() {
                return Err(Error::InvalidArgument(format!(
                    "group {} has no sizes",
                    group.family
                )));
            }
            let label = group
                .label
                .clone()
                .unwrap_or_else(|| group.family.name().to_string());
            let count = group.count.unwrap_or(group.sizes.len());
            let checks = group.checks.clone().unwrap_or_else(|| self.checks.clone());
            for i in 0..count {
                let n = group.sizes[i % group.sizes.len()];
                let params = GenParams {
                    n,
                    ..group.params.clone()
                };
                let (id, seed) = if group.family.is_random() {
                    (
                        format!("{label}-{i:04}-n{n:02}"),
                        derive_seed(group.seed, i as u64),
                    )
                } else if count > group.sizes.len() {
                    (format!("{label}-{i:04}-n{n:02}"), group.seed)
                } else {
                    (format!("{label}-n{n:02}"), group.seed)
                };
                out.push(Instance {
                    id,
                    graph: generate(group.family, &params, seed)?,
                    checks: checks.clone(),
                });
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Skipped {
    pub instance: String,
    pub check: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckError {
    pub instance: String,
    pub check: String,
    pub error: String,
    pub budget_exceeded: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub instances: usize,
    pub records: usize,
    pub holds: usize,
    pub violations: usize,
    pub skipped: usize,
    pub errors: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub name: String,
    pub summary: Summary,
    pub records: Vec<CheckRecord>,
    pub skipped: Vec<Skipped>,
    pub errors: Vec<CheckError>,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    instance: &'a str,
    check: &'a str,
    k: usize,
    lhs: f64,
    rhs: f64,
    margin: f64,
    holds: bool,
}

impl Report {
    /// Sorts records by `(instance, check, k)` and recomputes the summary.
    fn finish(&mut self, instances: usize) {
        self.records
            .sort_by(|a, b| (&a.instance, &a.check, a.k).cmp(&(&b.instance, &b.check, b.k)));
        self.skipped
            .sort_by(|a, b| (&a.instance, &a.check).cmp(&(&b.instance, &b.check)));
        self.errors
            .sort_by(|a, b| (&a.instance, &a.check).cmp(&(&b.instance, &b.check)));
        let holds = self.records.iter().filter(|r| r.holds).count();
        self.summary = Summary {
            instances,
            records: self.records.len(),
            holds,
            violations: self.records.len() - holds,
            skipped: self.skipped.len(),
            errors: self.errors.len(),
        };
    }

    pub fn violations(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.holds)
    }

    /// 0 when everything holds, 1 on a violation or a failed check, 3 when
    /// the only failures are exhausted search budgets.
    pub fn exit_code(&self) -> i32 {
        if self.summary.violations > 0 || self.errors.iter().any(|e| !e.budget_exceeded) {
            1
        } else if !self.errors.is_empty() {
            3
        } else {
            0
        }
    }

    /// `instance,check,k,lhs,rhs,margin,holds`, one row per record.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.records {
            w.serialize(CsvRow {
                instance: &r.instance,
                check: &r.check,
                k: r.k,
                lhs: r.lhs,
                rhs: r.rhs,
                margin: r.margin,
                holds: r.holds,
            })
            .expect("in-memory csv writes succeed");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv flush succeeds"))
            .expect("csv output is utf-8")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&format!(
                "{:<28} {:<16} k={:<3} lhs={:<12.6} rhs={:<12.6} {}\n",
                r.instance,
                r.check,
                r.k,
                r.lhs,
                r.rhs,
                if r.holds { "ok" } else { "VIOLATED" }
            ));
        }
        for s in &self.skipped {
            out.push_str(&format!(
                "skipped {} {}: {}\n",
                s.instance, s.check, s.reason
            ));
        }
        for e in &self.errors {
            out.push_str(&format!("error {} {}: {}\n", e.instance, e.check, e.error));
        }
        let s = &self.summary;
        out.push_str(&format!(
            "{} instances, {} records, {} hold, {} violated, {} skipped, {} errors\n",
            s.instances, s.records, s.holds, s.violations, s.skipped, s.errors
        ));
        out
    }
}

fn run_check(a: &Analysis<'_>, kind: CheckKind, opts: &VerifyOptions) -> Result<Vec<CheckRecord>> {
    match kind {
        CheckKind::Main => a.check_main(),
        CheckKind::Nodal => {
            check_nodal_count_bounds(a.graph(), opts.eps, opts.seed, &opts.genericity)
        }
        CheckKind::Lemma if opts.perturb_lemma => {
            check_lemma_nodal_cheeger(a.graph(), opts.eps, opts.seed, &opts.budget)
        }
        CheckKind::Lemma => a.check_lemma(),
        CheckKind::Lower => a.check_lower(),
        CheckKind::Basics => a.check_basics(),
        CheckKind::Floor => a.check_floor(),
    }
}

fn verify_into(
    report: &mut Report,
    id: &str,
    g: &WeightedGraph,
    checks: &[CheckKind],
    opts: &VerifyOptions,
) {
    let a = Analysis::new(g, opts.budget);
    for &kind in checks {
        match run_check(&a, kind, opts) {
            Ok(records) => report.records.extend(records.into_iter().map(|mut r| {
                r.instance = id.to_string();
                r
            })),
            Err(Error::Hypothesis(reason)) => report.skipped.push(Skipped {
                instance: id.to_string(),
                check: kind.name().to_string(),
                reason,
            }),
            Err(e) => report.errors.push(CheckError {
                instance: id.to_string(),
                check: kind.name().to_string(),
                budget_exceeded: matches!(e, Error::BudgetExceeded { .. }),
                error: e.to_string(),
            }),
        }
    }
}

/// Runs `checks` on one graph. Unmet hypotheses are reported as skipped.
pub fn verify_graph(
    id: &str,
    g: &WeightedGraph,
    checks: &[CheckKind],
    opts: &VerifyOptions,
) -> Report {
    let mut report = Report {
        name: id.to_string(),
        ..Report::default()
    };
    verify_into(&mut report, id, g, checks, opts);
    report.finish(1);
    report
}

/// Generates every instance of `config` and runs its checks. Per-instance
/// failures are collected in the report instead of aborting the run.
pub fn run_corpus(config: &CorpusConfig) -> Result<Report> {
    let instances = config.instances()?;
    let mut report = Report {
        name: config.name.clone(),
        ..Report::default()
    };
    for inst in &instances {
        verify_into(
            &mut report,
            &inst.id,
            &inst.graph,
            &inst.checks,
            &config.options,
        );
    }
    report.finish(instances.len());
    Ok(report)
}
