//! Batch replays of the net and spider identities with structured
//! reports.
//!
//! Every suite builds its instance list up front, evaluates the instances
//! on the rayon pool and merges them back in list order, so reports do not
//! depend on the number of workers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::ControlFlow;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::graph::{labels, LabeledGraph, NetLabeling, VertexRole, VertexSet};
use crate::partition::Partition;
use crate::schur::{f_coefficient, is_schur_positive, schur_coefficient, schur_expansion, xi, Method};
use crate::symfunc::factorial;
use crate::tabloid::{for_each_srh_g_tabloid, for_each_with_bottom_in, Cell, SubTabloid};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Computed and reported; nothing asserted.
    Report,
    /// Not run because the time budget ran out.
    Budget,
    /// Hypotheses of the statement do not hold for this instance.
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Report => "report",
            Status::Budget => "budget",
            Status::Skipped => "skipped",
        };
        f.write_str(s)
    }
}

/// One summand of an identity: `factor * value`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub name: String,
    pub factor: i64,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub parameters: Map<String, Value>,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub terms: Vec<Term>,
}

impl InstanceRecord {
    fn compare(parameters: Map<String, Value>, lhs: &BigInt, rhs: &BigInt, terms: Vec<Term>) -> Self {
        InstanceRecord {
            parameters,
            status: if lhs == rhs { Status::Pass } else { Status::Fail },
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            terms,
        }
    }

    fn check(parameters: Map<String, Value>, ok: bool, lhs: String, rhs: String) -> Self {
        InstanceRecord {
            parameters,
            status: if ok { Status::Pass } else { Status::Fail },
            lhs,
            rhs,
            terms: Vec::new(),
        }
    }

    fn with_status(parameters: Map<String, Value>, status: Status, lhs: String) -> Self {
        InstanceRecord { parameters, status, lhs, rhs: String::new(), terms: Vec::new() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub statement_id: String,
    pub instances_checked: u64,
    pub failures: Vec<InstanceRecord>,
    pub wall_time_ms: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub instances: Vec<InstanceRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    fn new(statement_id: &str) -> Self {
        VerificationReport {
            statement_id: statement_id.to_string(),
            instances_checked: 0,
            failures: Vec::new(),
            wall_time_ms: 0,
            instances: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn finish(mut self, records: Vec<InstanceRecord>, started: Instant) -> Self {
        for record in records {
            if matches!(record.status, Status::Pass | Status::Fail | Status::Report) {
                self.instances_checked += 1;
            }
            if record.status == Status::Fail {
                self.failures.push(record.clone());
            }
            self.instances.push(record);
        }
        self.wall_time_ms = started.elapsed().as_millis() as u64;
        self
    }

    /// No failures and at least one instance evaluated.
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.instances_checked > 0
    }

    pub fn count(&self, status: Status) -> usize {
        self.instances.iter().filter(|r| r.status == status).count()
    }
}

macro_rules! params {
    ($($key:expr => $value:expr),* $(,)?) => {{
        let mut map = Map::new();
        $(map.insert($key.to_string(), json!($value));)*
        map
    }};
}

fn net(n: usize, m: usize) -> Option<LabeledGraph> {
    LabeledGraph::generalized_net(n, m, NetLabeling::PendantFirst)
}

fn spider(n: usize, legs: &Partition) -> Option<LabeledGraph> {
    LabeledGraph::generalized_spider(n, legs)
}

fn plus_path(g: Option<LabeledGraph>, k: usize) -> Option<LabeledGraph> {
    g.map(|g| g.with_extra_path(k).expect("k is 1 or 2"))
}

/// `(2, 1^{m-1})` for `m >= 1`.
fn one_long_leg(m: usize) -> Partition {
    Partition::twos_and_ones(1, m - 1)
}

fn term(name: String, factor: usize, lambda: Option<&Partition>, g: Option<&LabeledGraph>) -> (Term, BigInt) {
    let value = xi(lambda, g);
    let contribution = BigInt::from(factor) * &value;
    (Term { name, factor: factor as i64, value: value.to_string() }, contribution)
}

fn sum_terms(terms: Vec<(Term, BigInt)>) -> (Vec<Term>, BigInt) {
    let total = terms.iter().map(|(_, c)| c).sum();
    (terms.into_iter().map(|(t, _)| t).collect(), total)
}

fn show(lambda: Option<&Partition>) -> String {
    lambda.map_or_else(|| "undefined".to_string(), ToString::to_string)
}

/// The net recurrence: for `1 <= m <= n <= n_max` and every `λ ⊢ n+m`
/// ending in 1,
/// `ξ(λ, GN_{n,m}) = m ξ(λ∖1, GN_{n-1,m-1} ∪ P_1) + (n-m) ξ(λ∖1, GN_{n-1,m})
///                  + m ξ(λ∖1², GN_{n-1,m-1})`.
pub fn run_net_recurrence_suite(n_max: usize) -> Result<VerificationReport> {
    if n_max < 1 {
        return Err(Error::InvalidArgument("net recurrence needs n_max >= 1".into()));
    }
    let started = Instant::now();
    let cases: Vec<(usize, usize, Partition)> = (1..=n_max)
        .flat_map(|n| (1..=n).map(move |m| (n, m)))
        .flat_map(|(n, m)| {
            Partition::all(n + m).into_iter().filter(|l| l.last() == Some(1)).map(move |l| (n, m, l))
        })
        .collect();
    let records = cases
        .par_iter()
        .map(|(n, m, lambda)| {
            let (n, m) = (*n, *m);
            let lhs = xi(Some(lambda), net(n, m).as_ref());
            let minus1 = lambda.strip_trailing_ones(1);
            let minus2 = lambda.strip_trailing_ones(2);
            let smaller = net(n - 1, m - 1);
            let (terms, rhs) = sum_terms(vec![
                term(
                    format!("xi({}, GN({},{})+P1)", show(minus1.as_ref()), n - 1, m - 1),
                    m,
                    minus1.as_ref(),
                    plus_path(smaller.clone(), 1).as_ref(),
                ),
                term(
                    format!("xi({}, GN({},{}))", show(minus1.as_ref()), n - 1, m),
                    n - m,
                    minus1.as_ref(),
                    net(n - 1, m).as_ref(),
                ),
                term(
                    format!("xi({}, GN({},{}))", show(minus2.as_ref()), n - 1, m - 1),
                    m,
                    minus2.as_ref(),
                    smaller.as_ref(),
                ),
            ]);
            InstanceRecord::compare(params!("n" => n, "m" => m, "lambda" => lambda), &lhs, &rhs, terms)
        })
        .collect();
    Ok(VerificationReport::new("net-recurrence").finish(records, started))
}

/// Which right-hand side the spider suite compares against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpiderForm {
    /// The five-term form as usually stated.
    #[default]
    Stated,
    /// The five terms plus `ξ(λ∖1², GS_{n-1,(1^{m-1})} ∪ P_1)`, which counts
    /// tabloids whose bottom two cells hold the middle leg vertex above...
    /// below the special anchor. The stated form misses these.
    Corrected,
}

/// The spider recurrence for `GS_{n,(2,1^{m-1})}`, `3 <= n <= n_max`,
/// `2 <= m <= n`, over every `λ ⊢ n+m+1` ending in at least two parts
/// equal to 1.
///
/// The stated five-term form is false: tabloids with the middle vertex of
/// the length-two leg in the bottom cell, directly below the special
/// anchor, fall in none of its cases. [`SpiderForm::Corrected`] adds the
/// term that counts them.
pub fn run_spider_recurrence_suite(n_max: usize, form: SpiderForm) -> Result<VerificationReport> {
    if n_max < 3 {
        return Err(Error::InvalidArgument("spider recurrence needs n_max >= 3".into()));
    }
    let started = Instant::now();
    let cases: Vec<(usize, usize, Partition)> = (3..=n_max)
        .flat_map(|n| (2..=n).map(move |m| (n, m)))
        .flat_map(|(n, m)| {
            Partition::all(n + m + 1)
                .into_iter()
                .filter(|l| l.trailing_ones() >= 2)
                .map(move |l| (n, m, l))
        })
        .collect();
    let records = cases
        .par_iter()
        .map(|(n, m, lambda)| {
            let (n, m) = (*n, *m);
            let lhs = xi(Some(lambda), spider(n, &one_long_leg(m)).as_ref());
            let minus: Vec<Option<Partition>> = (1..=3).map(|t| lambda.strip_trailing_ones(t)).collect();
            let fewer_pendants = spider(n - 1, &one_long_leg(m - 1));
            let net_part = spider(n - 1, &Partition::rectangle(1, m - 1));
            let mut terms = vec![
                term(
                    format!("xi({}, GS({},(2,1^{}))+P1)", show(minus[0].as_ref()), n - 1, m - 2),
                    m - 1,
                    minus[0].as_ref(),
                    plus_path(fewer_pendants.clone(), 1).as_ref(),
                ),
                term(
                    format!("xi({}, GS({},(2,1^{})))", show(minus[0].as_ref()), n - 1, m - 1),
                    n - m,
                    minus[0].as_ref(),
                    spider(n - 1, &one_long_leg(m)).as_ref(),
                ),
                term(
                    format!("xi({}, GS({},(1^{}))+P2)", show(minus[0].as_ref()), n - 1, m - 1),
                    1,
                    minus[0].as_ref(),
                    plus_path(net_part.clone(), 2).as_ref(),
                ),
                term(
                    format!("xi({}, GS({},(2,1^{})))", show(minus[1].as_ref()), n - 1, m - 2),
                    m - 1,
                    minus[1].as_ref(),
                    fewer_pendants.as_ref(),
                ),
                term(
                    format!("xi({}, GS({},(1^{})))", show(minus[2].as_ref()), n - 1, m - 1),
                    1,
                    minus[2].as_ref(),
                    net_part.as_ref(),
                ),
            ];
            if form == SpiderForm::Corrected {
                terms.push(term(
                    format!("xi({}, GS({},(1^{}))+P1)", show(minus[1].as_ref()), n - 1, m - 1),
                    1,
                    minus[1].as_ref(),
                    plus_path(net_part.clone(), 1).as_ref(),
                ));
            }
            let (terms, rhs) = sum_terms(terms);
            InstanceRecord::compare(params!("n" => n, "m" => m, "lambda" => lambda), &lhs, &rhs, terms)
        })
        .collect();
    let id = match form {
        SpiderForm::Stated => "spider-recurrence",
        SpiderForm::Corrected => "spider-recurrence-corrected",
    };
    Ok(VerificationReport::new(id).finish(records, started))
}

/// Whether some tabloid with shape `lambda` has a nonempty tail made only
/// of vertices in `pendants`.
fn has_pendant_only_tail(lambda: &Partition, g: &LabeledGraph, pendants: VertexSet) -> (bool, usize) {
    let mut seen = 0;
    let found = for_each_srh_g_tabloid(lambda, g, |t| {
        seen += 1;
        let (_, tail) = t.split_head_tail();
        if !tail.is_empty() && tail.vertices() & !pendants == 0 {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    (found.is_break(), seen)
}

/// (a) Nets with `n + m <= bound`: a nonzero `[s_λ]` with last part at
/// least 2 forces `n = m` and `λ = (2^n)`. (b) No tabloid of a net (last
/// part 1) or of `GS_{n,(2,1^{m-1})}` (last two parts 1) has a nonempty
/// tail consisting of pendants only.
pub fn run_structure_lemma_suite(bound: usize) -> Result<VerificationReport> {
    if bound < 2 {
        return Err(Error::InvalidArgument("structure lemma needs bound >= 2".into()));
    }
    let started = Instant::now();
    let nets: Vec<(usize, usize)> =
        (1..=bound).flat_map(|n| (0..=n).map(move |m| (n, m))).filter(|(n, m)| n + m <= bound).collect();

    let tailless: Vec<(usize, usize, Partition)> = nets
        .iter()
        .flat_map(|&(n, m)| {
            Partition::all(n + m).into_iter().filter(|l| l.last() >= Some(2)).map(move |l| (n, m, l))
        })
        .collect();
    let mut records: Vec<InstanceRecord> = tailless
        .par_iter()
        .map(|(n, m, lambda)| {
            let g = LabeledGraph::generalized_net(*n, *m, NetLabeling::PendantLast).expect("valid net");
            let value = schur_coefficient(&g, lambda, Method::Tabloid).expect("sizes agree");
            let allowed = n == m && *lambda == Partition::rectangle(2, *n);
            InstanceRecord::check(
                params!("part" => "tailless", "graph" => format!("GN({n},{m})"), "lambda" => lambda),
                value.is_zero() || allowed,
                value.to_string(),
                if allowed { "any".into() } else { "0".into() },
            )
        })
        .collect();

    let mut tails: Vec<(String, LabeledGraph, Partition)> = Vec::new();
    for &(n, m) in &nets {
        let g = net(n, m).expect("valid net");
        for lambda in Partition::all(n + m).into_iter().filter(|l| l.last() == Some(1)) {
            tails.push((format!("GN({n},{m})"), g.clone(), lambda));
        }
    }
    for n in 3..bound {
        for m in (1..=n).filter(|m| n + m < bound) {
            let g = spider(n, &one_long_leg(m)).expect("valid spider");
            for lambda in Partition::all(n + m + 1).into_iter().filter(|l| l.trailing_ones() >= 2) {
                tails.push((format!("GS({n},{})", one_long_leg(m)), g.clone(), lambda));
            }
        }
    }
    records.extend(
        tails
            .par_iter()
            .map(|(name, g, lambda)| {
                let pendants = g.vertices_with(VertexRole::is_pendant_like);
                let (found, seen) = has_pendant_only_tail(lambda, g, pendants);
                InstanceRecord::check(
                    params!("part" => "pendant-tail", "graph" => name, "lambda" => lambda, "tabloids" => seen),
                    !found,
                    if found { "pendant-only tail".into() } else { "none".into() },
                    "none".into(),
                )
            })
            .collect::<Vec<_>>(),
    );
    Ok(VerificationReport::new("structure-lemmas").finish(records, started))
}

/// `[s_{(2^C,1^D)}] X_{GN_{C+D,C-1} ∪ P_1} = [s_{(2^{C-1},1^{D+1})}] X_{GN_{C+D,C-1}}`
/// for `C >= 1`, `D >= 0`, `C + D <= bound`, with pendant-last labels.
pub fn run_singleton_lemma_suite(bound: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    let cases: Vec<(usize, usize)> =
        (1..=bound).flat_map(|c| (0..=bound - c).map(move |d| (c, d))).collect();
    let records = cases
        .par_iter()
        .map(|&(c, d)| {
            let g = LabeledGraph::generalized_net(c + d, c - 1, NetLabeling::PendantLast);
            let with_singleton = plus_path(g.clone(), 1);
            let lhs = xi(Some(&Partition::twos_and_ones(c, d)), with_singleton.as_ref());
            let rhs = xi(Some(&Partition::twos_and_ones(c - 1, d + 1)), g.as_ref());
            InstanceRecord::compare(params!("C" => c, "D" => d), &lhs, &rhs, Vec::new())
        })
        .collect();
    Ok(VerificationReport::new("singleton-removal").finish(records, started))
}

/// `f(C, D)` keyed by `(C, D)`.
pub type FTable = BTreeMap<(usize, usize), BigInt>;

/// `f(C, D)` for every `C + D <= bound`.
pub fn f_table(bound: usize) -> FTable {
    let cells: Vec<(usize, usize)> = (0..=bound).flat_map(|c| (0..=bound - c).map(move |d| (c, d))).collect();
    cells
        .par_iter()
        .map(|&(c, d)| ((c, d), f_coefficient(c as i64, d as i64)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// Checks the f-table against its recurrence and closed forms:
/// `f(C,D) = C f(C-1,D) + D f(C,D-1)` for `C, D >= 1`, `f(0,D) = D!`, and
/// `f(n,0) = n!` for even `n`, `0` for odd `n`.
pub fn run_f_table_suite(bound: usize) -> Result<(VerificationReport, FTable)> {
    let started = Instant::now();
    let table = f_table(bound);
    let mut records = Vec::new();
    for (&(c, d), value) in &table {
        if c >= 1 && d >= 1 {
            let rhs = BigInt::from(c) * &table[&(c - 1, d)] + BigInt::from(d) * &table[&(c, d - 1)];
            records.push(InstanceRecord::compare(params!("check" => "recurrence", "C" => c, "D" => d), value, &rhs, Vec::new()));
        }
        if c == 0 {
            records.push(InstanceRecord::compare(params!("check" => "f(0,D)", "C" => 0, "D" => d), value, &factorial(d), Vec::new()));
        }
        if d == 0 && c >= 1 {
            let expected = if c % 2 == 0 { factorial(c) } else { BigInt::zero() };
            records.push(InstanceRecord::compare(params!("check" => "f(n,0)", "C" => c, "D" => 0), value, &expected, Vec::new()));
        }
    }
    Ok((VerificationReport::new("f-table").finish(records, started), table))
}

/// Head-group cancellation for the tabloids of `lambda` whose bottom cell
/// holds a pendant.
///
/// `pendants` and `body` must partition the vertex set; pendants are
/// pairwise nonadjacent leaves and each body vertex touches at most one
/// pendant. Tabloids are kept when the bottom pendant is nonadjacent to the
/// vertex above it and no two tail body vertices share a hook; they are
/// grouped by head, and each group's signed sum must vanish. Enumeration
/// stops at `deadline`, in which case the report carries no verdict.
pub fn run_cancellation_check(
    g: &LabeledGraph,
    lambda: &Partition,
    pendants: VertexSet,
    body: VertexSet,
    deadline: Option<Instant>,
) -> Result<VerificationReport> {
    if lambda.size() != g.n_vertices() {
        return Err(Error::SizeMismatch { partition: lambda.size(), vertices: g.n_vertices() });
    }
    if lambda.trailing_ones() < 2 {
        return Err(Error::InvalidArgument(format!("{lambda} must end in two parts equal to 1")));
    }
    if pendants & body != 0 || pendants | body != g.all_vertices() {
        return Err(Error::InvalidArgument("pendant and body sets must partition the vertices".into()));
    }
    if !g.is_stable(pendants) || labels(pendants).any(|p| g.degree(p) != 1) {
        return Err(Error::InvalidArgument("pendants must be pairwise nonadjacent leaves".into()));
    }
    if labels(body).any(|u| (g.neighbors(u) & pendants).count_ones() > 1) {
        return Err(Error::InvalidArgument("a body vertex is adjacent to two pendants".into()));
    }

    let started = Instant::now();
    let rows = lambda.len();
    let mut groups: BTreeMap<SubTabloid, (i64, u64)> = BTreeMap::new();
    let mut skipped_empty_body = 0u64;
    let mut visited = 0u64;
    let flow = for_each_with_bottom_in(lambda, g, pendants, |t| {
        visited += 1;
        if visited.is_multiple_of(4096) && deadline.is_some_and(|d| Instant::now() > d) {
            return ControlFlow::Break(());
        }
        let bottom = t.bottom_vertex().expect("nonempty shape");
        let above = t.vertex_at(Cell { row: rows - 1, col: 1 });
        if g.adjacent(bottom, above) {
            return ControlFlow::Continue(());
        }
        let (head, _) = t.split_head_tail();
        let tail_body = body & !head.vertices();
        if t.blocks().iter().any(|&b| (b & tail_body).count_ones() > 1) {
            return ControlFlow::Continue(());
        }
        if tail_body == 0 {
            skipped_empty_body += 1;
            return ControlFlow::Continue(());
        }
        let entry = groups.entry(head).or_insert((0, 0));
        entry.0 += t.sign();
        entry.1 += 1;
        ControlFlow::Continue(())
    })?;

    let mut report = VerificationReport::new("cancellation");
    if flow.is_break() {
        report.notes.push(format!("budget exhausted after {visited} tabloids; no verdict"));
        let record = InstanceRecord::with_status(
            params!("lambda" => lambda, "vertices" => g.n_vertices()),
            Status::Budget,
            String::new(),
        );
        return Ok(report.finish(vec![record], started));
    }
    if skipped_empty_body > 0 {
        report.notes.push(format!("{skipped_empty_body} tabloids with no body vertex in the tail were skipped"));
    }
    let records = groups
        .into_iter()
        .map(|(head, (sum, size))| {
            InstanceRecord::compare(
                params!(
                    "lambda" => lambda,
                    "head" => head.vertex_sequence(),
                    "head_pendants" => (head.vertices() & pendants).count_ones(),
                    "head_body" => (head.vertices() & body).count_ones(),
                    "group_size" => size,
                ),
                &BigInt::from(sum),
                &BigInt::zero(),
                Vec::new(),
            )
        })
        .collect();
    Ok(report.finish(records, started))
}

/// Pendant and body sets read off a graph's role annotations.
pub fn pendant_and_body_sets(g: &LabeledGraph) -> Result<(VertexSet, VertexSet)> {
    if g.roles().is_none() {
        return Err(Error::InvalidArgument("graph carries no roles".into()));
    }
    Ok((g.vertices_with(|r| r == VertexRole::Pendant), g.vertices_with(VertexRole::is_body)))
}

/// Schur positivity of every `GN_{n,m}`, `0 <= m <= n <= n_max`, with the
/// claw as a negative control. Expansions of `GS_{n,(2,1^{m-1})}` for
/// `3 <= n <= n_max` are reported without assertion.
pub fn run_positivity_sweep(n_max: usize, deadline: Option<Instant>) -> Result<VerificationReport> {
    if n_max < 1 {
        return Err(Error::InvalidArgument("positivity sweep needs n_max >= 1".into()));
    }
    let started = Instant::now();
    let nets: Vec<(usize, usize)> = (1..=n_max).flat_map(|n| (0..=n).map(move |m| (n, m))).collect();
    let mut records: Vec<InstanceRecord> = nets
        .par_iter()
        .map(|&(n, m)| {
            let g = net(n, m).expect("valid net");
            let (positive, witness) = is_schur_positive(&g).expect("valid graph");
            InstanceRecord::check(
                params!("graph" => format!("GN({n},{m})")),
                positive,
                witness.map_or_else(|| "positive".to_string(), |w| format!("negative at {w}")),
                "positive".into(),
            )
        })
        .collect();

    let (positive, witness) = is_schur_positive(&LabeledGraph::claw())?;
    let claw_value = schur_coefficient(&LabeledGraph::claw(), &Partition::rectangle(2, 2), Method::Tabloid)?;
    records.push(InstanceRecord::check(
        params!("graph" => "K(1,3)", "control" => true),
        !positive && witness == Some(Partition::rectangle(2, 2)) && claw_value == BigInt::from(-1),
        format!("witness {}, value {claw_value}", show(witness.as_ref())),
        "witness (2,2), value -1".into(),
    ));

    let mut report = VerificationReport::new("net-positivity");
    for n in 3..=n_max {
        for m in 1..=n {
            let legs = one_long_leg(m);
            let params = params!("graph" => format!("GS({n},{legs})"), "asserted" => false);
            if deadline.is_some_and(|d| Instant::now() > d) {
                records.push(InstanceRecord::with_status(params, Status::Budget, String::new()));
                continue;
            }
            let g = spider(n, &legs).expect("valid spider");
            let expansion = schur_expansion(&g, Method::Tabloid)?;
            if let Some(w) = expansion.first_negative() {
                report.notes.push(format!("GS({n},{legs}) has a negative coefficient at {w}"));
            }
            records.push(InstanceRecord::with_status(params, Status::Report, expansion.to_string()));
        }
    }
    Ok(report.finish(records, started))
}

/// The three spider coefficient families left open by the recurrence:
/// `[s_{(3,2^{n-1})}]` and `[s_{(2^n,1)}]` of `GS_{n,(2,1^{n-1})}`, and
/// `[s_{(2^n)}]` of `GS_{n,(2,1^{n-2})}`. Values are reported with their
/// sign; negatives are flagged in the notes.
pub fn run_open_coefficient_report(n_max: usize, deadline: Option<Instant>) -> Result<VerificationReport> {
    if n_max < 3 {
        return Err(Error::InvalidArgument("open coefficients need n_max >= 3".into()));
    }
    let started = Instant::now();
    let mut report = VerificationReport::new("open-spider-coefficients");
    let mut records = Vec::new();
    for n in 3..=n_max {
        let mut three_two = vec![3];
        three_two.extend(std::iter::repeat_n(2, n - 1));
        let families = [
            ("(3,2^(n-1))", n, Partition::new(three_two)?),
            ("(2^n,1)", n, Partition::twos_and_ones(n, 1)),
            ("(2^n)", n - 1, Partition::rectangle(2, n)),
        ];
        for (family, m, lambda) in families {
            let legs = one_long_leg(m);
            let params = params!("n" => n, "family" => family, "graph" => format!("GS({n},{legs})"), "lambda" => &lambda);
            if deadline.is_some_and(|d| Instant::now() > d) {
                records.push(InstanceRecord::with_status(params, Status::Budget, String::new()));
                continue;
            }
            let g = spider(n, &legs).expect("valid spider");
            let value = schur_coefficient(&g, &lambda, Method::Tabloid)?;
            let sign = if value.is_negative() { "negative" } else if value.is_zero() { "zero" } else { "positive" };
            if value.is_negative() {
                report.notes.push(format!("counterexample candidate: [s_{lambda}] of GS({n},{legs}) = {value}"));
            }
            let mut record = InstanceRecord::with_status(params, Status::Report, value.to_string());
            record.rhs = sign.to_string();
            records.push(record);
        }
    }
    Ok(report.finish(records, started))
}

/// Every labeled graph on `n` vertices, by edge bitmask over the pairs in
/// lexicographic order.
pub fn all_graphs(n: usize) -> Vec<LabeledGraph> {
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            LabeledGraph::from_edges(n, &edges).expect("pairs are valid")
        })
        .collect()
}

/// Graphs on `n` vertices with each edge present with probability 1/2.
pub fn random_graphs(n: usize, count: usize, seed: u64) -> Vec<LabeledGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let edges: Vec<(usize, usize)> = (1..=n)
                .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
                .filter(|_| rng.random_bool(0.5))
                .collect();
            LabeledGraph::from_edges(n, &edges).expect("pairs are valid")
        })
        .collect()
}

/// The three coefficient routes agree on every connected graph with at
/// most `max_vertices` vertices and on `random_count` seeded random graphs
/// on `random_vertices` vertices, for every partition.
pub fn run_method_agreement(
    max_vertices: usize,
    random_vertices: usize,
    random_count: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut graphs: Vec<(String, LabeledGraph)> = (1..=max_vertices)
        .flat_map(all_graphs)
        .filter(LabeledGraph::is_connected)
        .map(|g| (format!("{:?}", g.edges()), g))
        .collect();
    graphs.extend(
        random_graphs(random_vertices, random_count, seed)
            .into_iter()
            .enumerate()
            .map(|(i, g)| (format!("random#{i}"), g)),
    );
    let records = graphs
        .par_iter()
        .map(|(name, g)| {
            let [tabloid, grouped, oracle] = Method::ALL.map(|m| schur_expansion(g, m).expect("valid graph"));
            let agree = tabloid == grouped && grouped == oracle;
            let mut record = InstanceRecord::check(
                params!("graph" => name, "vertices" => g.n_vertices()),
                agree,
                tabloid.to_string(),
                oracle.to_string(),
            );
            if !agree {
                record.terms.push(Term { name: "grouped".into(), factor: 1, value: grouped.to_string() });
            }
            record
        })
        .collect();
    let mut report = VerificationReport::new("method-agreement");
    report.notes.push(format!("random graphs: {random_count} on {random_vertices} vertices, p = 1/2, seed {seed}"));
    Ok(report.finish(records, started))
}

/// The swept graph families: nets `n <= 4`, spiders `GS_{3,(2,1^{m-1})}`.
pub fn swept_graphs() -> Vec<(String, LabeledGraph)> {
    let mut graphs = Vec::new();
    for n in 1..=4 {
        for m in 0..=n {
            graphs.push((format!("GN({n},{m})"), net(n, m).expect("valid net")));
        }
    }
    for m in 1..=3 {
        let legs = one_long_leg(m);
        graphs.push((format!("GS(3,{legs})"), spider(3, &legs).expect("valid spider")));
    }
    graphs
}

/// Tabloid-route Schur expansions are unchanged by `relabelings` random
/// vertex permutations of each graph.
pub fn run_label_invariance(
    graphs: &[(String, LabeledGraph)],
    relabelings: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<(String, LabeledGraph, Vec<usize>)> = graphs
        .iter()
        .flat_map(|(name, g)| {
            (0..relabelings)
                .map(|_| {
                    let mut perm: Vec<usize> = (1..=g.n_vertices()).collect();
                    perm.shuffle(&mut rng);
                    (name.clone(), g.clone(), perm)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let records = cases
        .par_iter()
        .map(|(name, g, perm)| {
            let original = schur_expansion(g, Method::Tabloid).expect("valid graph");
            let relabeled = schur_expansion(&g.relabel(perm).expect("permutation"), Method::Tabloid).expect("valid graph");
            InstanceRecord::check(
                params!("graph" => name, "permutation" => perm),
                original == relabeled,
                relabeled.to_string(),
                original.to_string(),
            )
        })
        .collect();
    let mut report = VerificationReport::new("label-invariance");
    report.notes.push(format!("{relabelings} relabelings per graph, seed {seed}"));
    Ok(report.finish(records, started))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::bit;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn find<'a>(report: &'a VerificationReport, key: &str, value: Value) -> Vec<&'a InstanceRecord> {
        report.instances.iter().filter(|r| r.parameters.get(key) == Some(&value)).collect()
    }

    #[test]
    fn net_recurrence_small_instance() {
        let report = run_net_recurrence_suite(2).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        let inst = report
            .instances
            .iter()
            .find(|r| r.parameters["n"] == json!(2) && r.parameters["m"] == json!(1) && r.parameters["lambda"] == json!([2, 1]))
            .unwrap();
        assert_eq!(inst.lhs, "1");
        let values: Vec<&str> = inst.terms.iter().map(|t| t.value.as_str()).collect();
        assert_eq!(values, ["1", "0", "0"]);
        assert!(run_net_recurrence_suite(0).is_err());
    }

    #[test]
    fn net_recurrence_instance_count() {
        let report = run_net_recurrence_suite(4).unwrap();
        let per_42 = report
            .instances
            .iter()
            .filter(|r| r.parameters["n"] == json!(4) && r.parameters["m"] == json!(2))
            .count();
        assert_eq!(per_42, 7);
    }

    #[test]
    fn vanishing_second_strip() {
        // λ = (2,2,1) has a single trailing 1, so the λ∖1² term is undefined
        let report = run_net_recurrence_suite(3).unwrap();
        for r in find(&report, "lambda", json!([2, 2, 1])) {
            assert_eq!(r.terms[2].value, "0");
            assert!(r.terms[2].name.starts_with("xi(undefined"));
        }
    }

    #[test]
    fn spider_recurrence_n3() {
        let report = run_spider_recurrence_suite(3, SpiderForm::Corrected).unwrap();
        assert!(report.passed(), "{:#?}", report.failures);
        for lambda in [json!([2, 2, 1, 1]), json!([4, 1, 1])] {
            assert!(!find(&report, "lambda", lambda).is_empty());
        }
        assert!(find(&report, "lambda", json!([2, 2, 2])).is_empty());
    }

    #[test]
    fn stated_spider_form_misses_a_case() {
        let report = run_spider_recurrence_suite(3, SpiderForm::Stated).unwrap();
        let bad = report
            .failures
            .iter()
            .find(|r| r.parameters["m"] == json!(2) && r.parameters["lambda"] == json!([3, 1, 1, 1]))
            .unwrap();
        assert_eq!((bad.lhs.as_str(), bad.rhs.as_str()), ("8", "7"));
        // the missing term is the whole discrepancy
        let corrected = run_spider_recurrence_suite(3, SpiderForm::Corrected).unwrap();
        for (s, c) in report.instances.iter().zip(&corrected.instances) {
            let gap: BigInt = s.lhs.parse::<BigInt>().unwrap() - s.rhs.parse::<BigInt>().unwrap();
            assert_eq!(gap.to_string(), c.terms[5].value);
        }
    }

    #[test]
    fn structure_lemmas_small() {
        let report = run_structure_lemma_suite(6).unwrap();
        assert!(report.passed(), "{:#?}", report.failures);
        let exception = report
            .instances
            .iter()
            .find(|r| r.parameters["graph"] == json!("GN(2,2)") && r.parameters["lambda"] == json!([2, 2]))
            .unwrap();
        assert_eq!(exception.lhs, "2");
        assert!(!find(&report, "graph", json!("GS(3,(2,1))")).is_empty());
    }

    #[test]
    fn cancellation_scaled_instance() {
        let g = net(3, 3).unwrap();
        let (pendants, body) = pendant_and_body_sets(&g).unwrap();
        let report = run_cancellation_check(&g, &p(&[2, 1, 1, 1, 1]), pendants, body, None).unwrap();
        assert!(report.passed(), "{:#?}", report.failures);
    }

    #[test]
    fn cancellation_rejects_bad_inputs() {
        let g = net(3, 3).unwrap();
        let (pendants, body) = pendant_and_body_sets(&g).unwrap();
        let lambda = p(&[2, 1, 1, 1, 1]);
        assert!(run_cancellation_check(&g, &p(&[3, 2, 1]), pendants, body, None).is_err());
        assert!(run_cancellation_check(&g, &p(&[2, 2, 2]), pendants, body, None).is_err());
        assert!(run_cancellation_check(&g, &lambda, pendants | bit(4), body, None).is_err());
        assert!(run_cancellation_check(&g, &lambda, body, pendants, None).is_err());
    }

    #[test]
    fn cancellation_budget_gives_no_verdict() {
        let g = net(4, 4).unwrap();
        let (pendants, body) = pendant_and_body_sets(&g).unwrap();
        let past = Instant::now() - std::time::Duration::from_secs(1);
        let report = run_cancellation_check(&g, &p(&[2, 1, 1, 1, 1, 1, 1]), pendants, body, Some(past)).unwrap();
        assert_eq!(report.instances_checked, 0);
        assert!(!report.passed());
        assert_eq!(report.count(Status::Budget), 1);
    }

    #[test]
    fn positivity_small() {
        let report = run_positivity_sweep(4, None).unwrap();
        assert!(report.passed(), "{:#?}", report.failures);
        let nets = report.instances.iter().filter(|r| r.parameters.get("control").is_none() && r.status == Status::Pass).count();
        assert_eq!(nets, 14);
    }

    #[test]
    fn open_coefficients_report_only() {
        let report = run_open_coefficient_report(3, None).unwrap();
        assert_eq!(report.count(Status::Report), 3);
        assert!(report.failures.is_empty());
        let past = Instant::now() - std::time::Duration::from_secs(1);
        let skipped = run_open_coefficient_report(4, Some(past)).unwrap();
        assert_eq!(skipped.count(Status::Budget), 6);
    }

    #[test]
    fn f_table_small() {
        let (report, table) = run_f_table_suite(4).unwrap();
        assert!(report.passed(), "{:#?}", report.failures);
        assert_eq!(table[&(2, 0)], BigInt::from(2));
        assert_eq!(table[&(4, 0)], BigInt::from(24));
    }

    #[test]
    fn singleton_lemma_small() {
        let report = run_singleton_lemma_suite(4).unwrap();
        assert!(report.passed(), "{:#?}", report.failures);
    }

    #[test]
    fn graph_enumeration() {
        assert_eq!(all_graphs(4).len(), 64);
        // connected labeled graphs on 4 vertices
        assert_eq!(all_graphs(4).iter().filter(|g| g.is_connected()).count(), 38);
        let a = random_graphs(6, 5, 7);
        assert_eq!(a, random_graphs(6, 5, 7));
        assert_ne!(a, random_graphs(6, 5, 8));
    }

    #[test]
    fn reports_serialize_with_the_documented_fields() {
        let report = run_singleton_lemma_suite(2).unwrap();
        let value = serde_json::to_value(&report).unwrap();
        for key in ["statement_id", "instances_checked", "failures", "wall_time_ms"] {
            assert!(value.get(key).is_some(), "{key}");
        }
    }
}
