//! Exhaustive sweeps that check the bijection and its properties for every
//! path up to a size bound.
//!
//! Work is split into `(n, k)` blocks (k = East-step count on the Delannoy
//! side, interior-vertex count on the Kimberling side). Each block yields a
//! partial result; partials merge by addition and capped concatenation, so
//! the sequential and parallel runs produce the same report.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Serialize, Serializer};

use crate::bijection::{phi, phi_inverse};
use crate::counting::{
    count_delannoy_by_e, enumerate_delannoy, enumerate_delannoy_with_e, enumerate_kimberling,
    enumerate_kimberling_with_interior, schroder, BigCount,
};
use crate::geometry::{
    diagonal_flags, is_subdiagonal_delannoy, is_subdiagonal_kimberling, proof_cases, ProofCase,
};
use crate::lattice::{KimberlingPath, LatticePoint};

/// Counterexamples kept per report; the failure count stays exact.
pub const MAX_COUNTEREXAMPLES: usize = 10;

pub const DEFAULT_N_MAX: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Runs on the current rayon pool; same as `Sequential` without the
    /// `parallel` feature.
    #[default]
    Parallel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    Roundtrip,
    Counts,
    Subdiagonal,
    PerStep,
}

impl Check {
    pub const ALL: [Check; 4] = [
        Check::Roundtrip,
        Check::Counts,
        Check::Subdiagonal,
        Check::PerStep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Roundtrip => "roundtrip",
            Check::Counts => "counts",
            Check::Subdiagonal => "subdiagonal",
            Check::PerStep => "per-step",
        }
    }

    pub fn run(self, n_max: u32, exec: Execution) -> VerificationReport {
        match self {
            Check::Roundtrip => verify_roundtrip_with(n_max, exec),
            Check::Counts => verify_counts_with(n_max, exec),
            Check::Subdiagonal => verify_subdiagonal_with(n_max, exec),
            Check::PerStep => verify_per_step_with(n_max, exec),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown check {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub input: String,
    pub expected: String,
    pub actual: String,
}

impl Counterexample {
    fn new(
        input: impl fmt::Display,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
    ) -> Self {
        Counterexample {
            input: input.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NRange {
    pub start: u32,
    pub end: u32,
}

/// Counts of East indices falling in each branch of the u/v case split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BranchTally {
    pub n: u32,
    pub u_eq_v: u64,
    pub u_lt_v: u64,
    pub u_gt_v: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubdiagonalRow {
    pub n: u32,
    pub delannoy: u64,
    pub kimberling: u64,
    #[serde(serialize_with = "decimal")]
    pub schroder: BigCount,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub n_range: NRange,
    #[serde(serialize_with = "decimal")]
    pub total_cases: BigCount,
    pub passed: bool,
    pub failure_count: u64,
    pub failures: Vec<Counterexample>,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub branch_tallies: Vec<BranchTally>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub subdiagonal_counts: Vec<SubdiagonalRow>,
}

fn decimal<S: Serializer>(v: &BigCount, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

impl VerificationReport {
    fn from_partial(check: Check, n_max: u32, partial: Partial, started: Instant) -> Self {
        VerificationReport {
            check_name: check.name().to_owned(),
            n_range: NRange {
                start: 0,
                end: n_max,
            },
            total_cases: BigCount::from(partial.cases),
            passed: partial.failure_count == 0,
            failure_count: partial.failure_count,
            failures: partial.failures,
            elapsed_ms: started.elapsed().as_millis() as u64,
            branch_tallies: Vec::new(),
            subdiagonal_counts: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    /// Copy with the timing zeroed, for comparing runs.
    pub fn without_timing(&self) -> Self {
        VerificationReport {
            elapsed_ms: 0,
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<12} n={}..={}  cases={}  failures={}  {}  ({} ms)",
            self.check_name,
            self.n_range.start,
            self.n_range.end,
            self.total_cases,
            self.failure_count,
            if self.passed() { "PASS" } else { "FAIL" },
            self.elapsed_ms
        )?;
        for t in &self.branch_tallies {
            writeln!(
                f,
                "    n={}: u=v {}  u<v {}  u>v {}",
                t.n, t.u_eq_v, t.u_lt_v, t.u_gt_v
            )?;
        }
        for r in &self.subdiagonal_counts {
            writeln!(
                f,
                "    n={}: subdiagonal D {}  K {}  schroder {}",
                r.n, r.delannoy, r.kimberling, r.schroder
            )?;
        }
        for c in &self.failures {
            writeln!(
                f,
                "    {}: expected {}, got {}",
                c.input, c.expected, c.actual
            )?;
        }
        Ok(())
    }
}

/// Associative merge of per-block results.
trait Merge: Default + Send {
    fn merge(self, other: Self) -> Self;
}

#[derive(Debug, Default)]
struct Partial {
    cases: u64,
    failure_count: u64,
    failures: Vec<Counterexample>,
}

impl Partial {
    fn fail(&mut self, c: impl FnOnce() -> Counterexample) {
        self.failure_count += 1;
        if self.failures.len() < MAX_COUNTEREXAMPLES {
            self.failures.push(c());
        }
    }
}

impl Merge for Partial {
    fn merge(mut self, other: Self) -> Self {
        self.cases += other.cases;
        self.failure_count += other.failure_count;
        let room = MAX_COUNTEREXAMPLES.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
        self
    }
}

/// Per-`n` integer counters, summed on merge.
#[derive(Debug, Default)]
struct PerN<const W: usize>(BTreeMap<u32, [u64; W]>);

impl<const W: usize> PerN<W> {
    fn add(&mut self, n: u32, slot: usize, by: u64) {
        self.0.entry(n).or_insert([0; W])[slot] += by;
    }

    fn get(&self, n: u32) -> [u64; W] {
        self.0.get(&n).copied().unwrap_or([0; W])
    }
}

impl<const W: usize> Merge for PerN<W> {
    fn merge(mut self, other: Self) -> Self {
        for (n, row) in other.0 {
            let mine = self.0.entry(n).or_insert([0; W]);
            for (a, b) in mine.iter_mut().zip(row) {
                *a += b;
            }
        }
        self
    }
}

impl<A: Merge, B: Merge> Merge for (A, B) {
    fn merge(self, other: Self) -> Self {
        (self.0.merge(other.0), self.1.merge(other.1))
    }
}

fn sweep<T, R, F>(exec: Execution, items: &[T], f: F) -> R
where
    T: Sync,
    R: Merge,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).reduce(R::default, R::merge)
        }
        _ => items.iter().map(f).fold(R::default(), R::merge),
    }
}

/// `(n, k)` blocks, largest first so big blocks start early on a pool.
fn blocks(n_max: u32) -> Vec<(u32, u32)> {
    let mut v: Vec<(u32, u32)> = (0..=n_max)
        .flat_map(|n| (0..=n).map(move |k| (n, k)))
        .collect();
    v.sort_by_key(|&(n, k)| std::cmp::Reverse(count_delannoy_by_e(n, k)));
    v
}

/// Runs `f` on a pool of `threads` workers (0 = one per core).
#[cfg(feature = "parallel")]
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn with_threads<R: Send>(_threads: usize, f: impl FnOnce() -> R + Send) -> R {
    f()
}

fn end_of(n: u32) -> LatticePoint {
    LatticePoint::new(n + 1, n)
}

/// Both round trips plus image-set equality, per `(n, k)` block.
fn roundtrip_block(n: u32, k: u32) -> Partial {
    let mut part = Partial::default();
    let mut images: HashSet<KimberlingPath> = HashSet::new();
    for path in enumerate_delannoy_with_e(n, k) {
        part.cases += 1;
        let image = match phi(&path) {
            Ok(img) => img,
            Err(e) => {
                part.fail(|| Counterexample::new(&path, "a Kimberling path", e));
                continue;
            }
        };
        if image.endpoint() != end_of(n) || image.interior_vertices().len() != k as usize {
            part.fail(|| {
                Counterexample::new(
                    &path,
                    format!("end {} with {k} interior vertices", end_of(n)),
                    image.to_compact(),
                )
            });
        }
        match phi_inverse(&image) {
            Ok(back) if back == path => {}
            Ok(back) => part.fail(|| Counterexample::new(&path, &path, back)),
            Err(e) => part.fail(|| Counterexample::new(&path, &path, e)),
        }
        images.insert(image);
    }

    let mut matched = 0usize;
    for kpath in enumerate_kimberling_with_interior(n + 1, n, k) {
        part.cases += 1;
        if images.contains(&kpath) {
            matched += 1;
        }
        let again = phi_inverse(&kpath).and_then(|w| phi(&w));
        match again {
            Ok(p) if p == kpath => {}
            Ok(p) => part.fail(|| {
                Counterexample::new(kpath.to_compact(), kpath.to_compact(), p.to_compact())
            }),
            Err(e) => part.fail(|| Counterexample::new(kpath.to_compact(), kpath.to_compact(), e)),
        }
    }
    if matched != images.len() {
        part.fail(|| {
            Counterexample::new(
                format!("image of D_{n} with {k} E steps"),
                format!(
                    "{} paths equal to K_({},{n}) with {k} interior vertices",
                    images.len(),
                    n + 1
                ),
                format!("{matched} matched"),
            )
        });
    }
    part
}

pub fn verify_roundtrip(n_max: u32) -> VerificationReport {
    verify_roundtrip_with(n_max, Execution::default())
}

pub fn verify_roundtrip_with(n_max: u32, exec: Execution) -> VerificationReport {
    let started = Instant::now();
    let part = sweep(exec, &blocks(n_max), |&(n, k)| roundtrip_block(n, k));
    VerificationReport::from_partial(Check::Roundtrip, n_max, part, started)
}

/// Tallies each family by its k-statistic over the full streams and
/// compares against the product formula.
fn counts_for(n: u32) -> Partial {
    let mut part = Partial::default();
    let mut by_e = vec![0u64; n as usize + 1];
    for path in enumerate_delannoy(n) {
        part.cases += 1;
        by_e[path.e_count()] += 1;
    }
    let mut by_interior = vec![0u64; n as usize + 1];
    for kpath in enumerate_kimberling(n + 1, n) {
        part.cases += 1;
        by_interior[kpath.interior_vertices().len()] += 1;
    }
    for k in 0..=n {
        let formula = count_delannoy_by_e(n, k);
        let (d, kk) = (by_e[k as usize], by_interior[k as usize]);
        if BigCount::from(d) != formula || BigCount::from(kk) != formula {
            part.fail(|| {
                Counterexample::new(
                    format!("n={n} k={k}"),
                    format!("{formula} on both sides"),
                    format!("D: {d}, K: {kk}"),
                )
            });
        }
    }
    part
}

pub fn verify_counts(n_max: u32) -> VerificationReport {
    verify_counts_with(n_max, Execution::default())
}

pub fn verify_counts_with(n_max: u32, exec: Execution) -> VerificationReport {
    let started = Instant::now();
    let mut ns: Vec<u32> = (0..=n_max).collect();
    ns.reverse();
    let part = sweep(exec, &ns, |&n| counts_for(n));
    VerificationReport::from_partial(Check::Counts, n_max, part, started)
}

// PerN slots: subdiagonal Delannoy paths, subdiagonal Kimberling paths.
fn subdiagonal_block(n: u32, k: u32) -> (Partial, PerN<2>) {
    let mut part = Partial::default();
    let mut tally = PerN::<2>::default();
    for path in enumerate_delannoy_with_e(n, k) {
        part.cases += 1;
        let below = is_subdiagonal_delannoy(&path);
        if below {
            tally.add(n, 0, 1);
        }
        match phi(&path).and_then(|img| is_subdiagonal_kimberling(&img)) {
            Ok(img_below) if img_below == below => {}
            Ok(img_below) => part.fail(|| Counterexample::new(&path, below, img_below)),
            Err(e) => part.fail(|| Counterexample::new(&path, below, e)),
        }
    }
    for kpath in enumerate_kimberling_with_interior(n + 1, n, k) {
        part.cases += 1;
        if is_subdiagonal_kimberling(&kpath).unwrap_or(false) {
            tally.add(n, 1, 1);
        }
    }
    (part, tally)
}

pub fn verify_subdiagonal(n_max: u32) -> VerificationReport {
    verify_subdiagonal_with(n_max, Execution::default())
}

pub fn verify_subdiagonal_with(n_max: u32, exec: Execution) -> VerificationReport {
    let started = Instant::now();
    let (mut part, tally) = sweep(exec, &blocks(n_max), |&(n, k)| subdiagonal_block(n, k));
    let mut rows = Vec::new();
    for n in 0..=n_max {
        let [d, k] = tally.get(n);
        let oracle = schroder(n);
        if BigCount::from(d) != oracle {
            part.fail(|| Counterexample::new(format!("subdiagonal D_{n}"), &oracle, d));
        }
        if BigCount::from(k) != oracle {
            part.fail(|| Counterexample::new(format!("subdiagonal K_({},{n})", n + 1), &oracle, k));
        }
        rows.push(SubdiagonalRow {
            n,
            delannoy: d,
            kimberling: k,
            schroder: oracle,
        });
    }
    let mut report = VerificationReport::from_partial(Check::Subdiagonal, n_max, part, started);
    report.subdiagonal_counts = rows;
    report
}

// PerN slots follow ProofCase::ALL.
fn per_step_block(n: u32, k: u32) -> (Partial, PerN<3>) {
    let mut part = Partial::default();
    let mut tally = PerN::<3>::default();
    let nn = n as u64;
    for path in enumerate_delannoy_with_e(n, k) {
        part.cases += k as u64;
        let flags = match diagonal_flags(&path) {
            Ok(f) => f,
            Err(e) => {
                part.fail(|| Counterexample::new(&path, "diagonal flags", e));
                continue;
            }
        };
        for (i, (east, vertex)) in flags
            .east_weakly_above
            .iter()
            .zip(&flags.vertex_strictly_above)
            .enumerate()
        {
            if east != vertex {
                part.fail(|| {
                    Counterexample::new(
                        format!("{path} i={}", i + 1),
                        format!("vertex above = {east}"),
                        format!("vertex above = {vertex}"),
                    )
                });
            }
        }
        if let Ok(image) = phi(&path) {
            for (i, v) in image.interior_vertices().iter().enumerate() {
                if v.y as u64 * (nn + 1) == v.x as u64 * nn {
                    part.fail(|| {
                        Counterexample::new(
                            format!("{path} i={}", i + 1),
                            "off the line",
                            format!("{v} on the line"),
                        )
                    });
                }
            }
        }
        for case in proof_cases(&path) {
            let slot = ProofCase::ALL
                .iter()
                .position(|&c| c == case)
                .expect("listed");
            tally.add(n, slot, 1);
        }
    }
    (part, tally)
}

pub fn verify_per_step(n_max: u32) -> VerificationReport {
    verify_per_step_with(n_max, Execution::default())
}

pub fn verify_per_step_with(n_max: u32, exec: Execution) -> VerificationReport {
    let started = Instant::now();
    let (mut part, tally) = sweep(exec, &blocks(n_max), |&(n, k)| per_step_block(n, k));
    let mut tallies = Vec::new();
    for n in 0..=n_max {
        let [eq, lt, gt] = tally.get(n);
        if n >= 2 {
            for (case, hits) in ProofCase::ALL.into_iter().zip([eq, lt, gt]) {
                if hits == 0 {
                    part.fail(|| {
                        Counterexample::new(
                            format!("n={n}"),
                            format!("{} exercised", case.as_str()),
                            "no indices",
                        )
                    });
                }
            }
        }
        tallies.push(BranchTally {
            n,
            u_eq_v: eq,
            u_lt_v: lt,
            u_gt_v: gt,
        });
    }
    let mut report = VerificationReport::from_partial(Check::PerStep, n_max, part, started);
    report.branch_tallies = tallies;
    report
}

/// Runs the selected checks in order.
pub fn verify(checks: &[Check], n_max: u32, exec: Execution) -> Vec<VerificationReport> {
    checks.iter().map(|c| c.run(n_max, exec)).collect()
}
