//! Bounded-height parameter sweeps.
//!
//! The grid for height `H` is every reduced `p/q` with `|p| <= H` and
//! `1 <= q <= H`, ordered by `q` and then `p`. Pairs `(b, c)` are indexed
//! row-major over the filtered `b` and `c` axes. A shard owns one contiguous
//! slice of that index range.
//!
//! Workers evaluate a batch in parallel, and the batch is then written in
//! index order by the single writer. The record file is therefore a pure
//! function of the plan. A checkpoint stores the next index together with the
//! record-file length at that point. Resuming truncates the file to that
//! length and carries on, which reproduces an uninterrupted run byte for
//! byte.

use std::collections::BTreeMap;
use std::fmt;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufWriter, Write};
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cubic::RootStrategy;
use crate::error::{CoreError, Result};
use crate::param_map::ParamPair;
use crate::rational::{rational_to_string, Rational};
use crate::verify::{evaluate_pair_with, Outcome, SearchRecord};

pub const RECORDS_FILE: &str = "records.jsonl";
pub const CHECKPOINT_FILE: &str = "checkpoint.toml";
const CHECKPOINT_VERSION: u32 = 1;
const CHECKPOINT_HEADER: &str = "# cuboid sweep checkpoint v1";

/// Every reduced `p/q` with `|p| <= height`, `1 <= q <= height`, ordered by
/// `q` ascending and then `p` ascending. Zero appears once, as `0/1`.
pub fn enumerate_rationals(height: u64) -> Vec<Rational> {
    assert!(height >= 1, "height must be at least 1");
    let h = height as i64;
    let mut out = Vec::new();
    for q in 1..=h {
        for p in -h..=h {
            if p.gcd(&q) == 1 {
                out.push(Rational::new_raw(BigInt::from(p), BigInt::from(q)));
            }
        }
    }
    out
}

/// `1 + 2 · Σ_{q=1..H} #{1 <= p <= H : gcd(p, q) = 1}`
pub fn grid_count(height: u64) -> u64 {
    let coprime: u64 = (1..=height)
        .map(|q| (1..=height).filter(|p| p.gcd(&q) == 1).count() as u64)
        .sum();
    1 + 2 * coprime
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SignFilter {
    #[default]
    Any,
    Positive,
    Negative,
    Nonzero,
}

impl SignFilter {
    pub fn admits(self, r: &Rational) -> bool {
        match self {
            Self::Any => true,
            Self::Positive => r.is_positive(),
            Self::Negative => r.is_negative(),
            Self::Nonzero => !r.is_zero(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Any => "any",
            Self::Positive => "positive",
            Self::Negative => "negative",
            Self::Nonzero => "nonzero",
        }
    }
}

impl FromStr for SignFilter {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        [Self::Any, Self::Positive, Self::Negative, Self::Nonzero]
            .into_iter()
            .find(|f| f.label() == s)
            .ok_or_else(|| format!("unknown sign filter {s:?} (any, positive, negative, nonzero)"))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Verbosity {
    /// Degenerate and cubic-failure records are counted, not written.
    #[default]
    Summary,
    /// Every record is written.
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SweepPlan {
    pub height: u64,
    pub b_filter: SignFilter,
    pub c_filter: SignFilter,
    pub shard_count: u64,
    pub shard_index: u64,
    pub verbosity: Verbosity,
    pub strategy: RootStrategy,
}

impl SweepPlan {
    pub fn new(height: u64) -> Self {
        Self {
            height,
            b_filter: SignFilter::Any,
            c_filter: SignFilter::Any,
            shard_count: 1,
            shard_index: 0,
            verbosity: Verbosity::Summary,
            strategy: RootStrategy::Isolation,
        }
    }

    pub fn with_shard(mut self, index: u64, count: u64) -> Self {
        self.shard_index = index;
        self.shard_count = count;
        self
    }

    pub fn with_verbosity(mut self, verbosity: Verbosity) -> Self {
        self.verbosity = verbosity;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.height == 0 {
            return Err(CoreError::InvalidPlan("height must be at least 1".into()));
        }
        if self.shard_count == 0 || self.shard_index >= self.shard_count {
            return Err(CoreError::InvalidPlan(format!(
                "shard index {} out of range for {} shards",
                self.shard_index, self.shard_count
            )));
        }
        Ok(())
    }

    fn describe(&self) -> String {
        let strategy = match self.strategy {
            RootStrategy::Isolation => "isolation".to_string(),
            RootStrategy::Divisors { budget } => format!("divisors:{budget}"),
        };
        format!(
            "cuboid-sweep/1 height={} b={} c={} shard={}/{} verbosity={:?} roots={}",
            self.height,
            self.b_filter.label(),
            self.c_filter.label(),
            self.shard_index,
            self.shard_count,
            self.verbosity,
            strategy
        )
    }

    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.describe().as_bytes()))
    }

    pub fn axes(&self) -> (Vec<Rational>, Vec<Rational>) {
        let all = enumerate_rationals(self.height);
        let b = all
            .iter()
            .filter(|r| self.b_filter.admits(r))
            .cloned()
            .collect();
        let c = all
            .into_iter()
            .filter(|r| self.c_filter.admits(r))
            .collect();
        (b, c)
    }

    /// Index range of this shard within the full `b × c` grid.
    pub fn shard_range(&self, total: u64) -> Range<u64> {
        let at = |k: u64| ((total as u128 * k as u128) / self.shard_count as u128) as u64;
        at(self.shard_index)..at(self.shard_index + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: u32,
    pub plan: String,
    pub next_index: u64,
    pub records_bytes: u64,
    pub complete: bool,
    pub counts: BTreeMap<String, u64>,
}

impl Checkpoint {
    pub fn to_text(&self) -> String {
        let body = toml::to_string(self).expect("checkpoint serialises");
        format!("{CHECKPOINT_HEADER}\n{body}")
    }

    pub fn from_text(text: &str) -> Result<Self> {
        if text.lines().next() != Some(CHECKPOINT_HEADER) {
            return Err(CoreError::MalformedCheckpoint(
                "missing version header".into(),
            ));
        }
        let cp: Checkpoint =
            toml::from_str(text).map_err(|e| CoreError::MalformedCheckpoint(e.to_string()))?;
        if cp.version != CHECKPOINT_VERSION {
            return Err(CoreError::MalformedCheckpoint(format!(
                "unsupported version {}",
                cp.version
            )));
        }
        Ok(cp)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_text(&fs::read_to_string(path)?)
    }

    /// Atomic replace via a sibling temporary file.
    pub fn store(&self, path: &Path) -> io::Result<()> {
        let tmp = path.with_extension("toml.tmp");
        fs::write(&tmp, self.to_text())?;
        fs::rename(tmp, path)
    }
}

fn empty_counts() -> BTreeMap<String, u64> {
    Outcome::CLASSES
        .iter()
        .map(|c| (c.to_string(), 0))
        .collect()
}

/// One line of the record file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordLine {
    pub b: String,
    pub c: String,
    pub outcome: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flags: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_status: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_status: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutation: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl From<&SearchRecord> for RecordLine {
    fn from(rec: &SearchRecord) -> Self {
        let strings = |v: &[Rational]| v.iter().map(rational_to_string).collect::<Vec<_>>();
        let flags = match rec.outcome {
            Outcome::Degenerate(f) => Some(f.labels().into_iter().map(String::from).collect()),
            _ => None,
        };
        RecordLine {
            b: rational_to_string(&rec.param.b),
            c: rational_to_string(&rec.param.c),
            outcome: rec.outcome.class().to_string(),
            flags,
            x_status: rec.detail.x.as_ref().map(|r| r.status.label().to_string()),
            x: rec.detail.x.as_ref().map(|r| strings(&r.roots)),
            d_status: rec.detail.d.as_ref().map(|r| r.status.label().to_string()),
            d: rec.detail.d.as_ref().map(|r| strings(&r.roots)),
            permutation: rec.chosen_pairing().map(|p| p.permutation),
            note: rec.detail.note.clone(),
        }
    }
}

impl RecordLine {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serialises")
    }

    pub fn parse(line: &str) -> Result<Self> {
        serde_json::from_str(line)
            .map_err(|e| CoreError::Io(io::Error::new(io::ErrorKind::InvalidData, e)))
    }
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub workers: usize,
    pub checkpoint_every: u64,
    pub batch_size: u64,
    pub stop: Option<Arc<AtomicBool>>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            workers: 1,
            checkpoint_every: 100_000,
            batch_size: 2048,
            stop: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepSummary {
    pub plan_digest: String,
    pub total: u64,
    pub evaluated_this_run: u64,
    pub counts: BTreeMap<String, u64>,
    pub perfect: Vec<ParamPair>,
    pub elapsed: Duration,
}

impl SweepSummary {
    pub fn count(&self, class: &str) -> u64 {
        self.counts.get(class).copied().unwrap_or(0)
    }

    pub fn classified(&self) -> u64 {
        self.counts.values().sum()
    }
}

impl fmt::Display for SweepSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "plan {}", self.plan_digest)?;
        writeln!(f, "pairs in shard: {}", self.total)?;
        for (class, n) in &self.counts {
            writeln!(f, "  {class:<18} {n}")?;
        }
        writeln!(f, "evaluated this run: {}", self.evaluated_this_run)?;
        write!(f, "wall time: {:.3}s", self.elapsed.as_secs_f64())
    }
}

struct Evaluated {
    class: &'static str,
    line: Option<String>,
    perfect: Option<ParamPair>,
}

/// Sweeps the plan's shard, writing records to `sink` in index order.
///
/// `resume` continues from a checkpoint; the caller is responsible for having
/// truncated the sink to `records_bytes`. `on_checkpoint` is invoked after the
/// sink has been flushed, every `checkpoint_every` pairs, at the end, and when
/// the stop flag is observed.
pub fn run_sweep<W, F>(
    plan: &SweepPlan,
    opts: &SweepOptions,
    sink: &mut W,
    resume: Option<&Checkpoint>,
    mut on_checkpoint: F,
) -> Result<SweepSummary>
where
    W: Write,
    F: FnMut(&Checkpoint) -> io::Result<()>,
{
    plan.validate()?;
    let started = Instant::now();
    let digest = plan.digest();
    let (b_axis, c_axis) = plan.axes();
    let nc = c_axis.len() as u64;
    let range = plan.shard_range(b_axis.len() as u64 * nc);

    let mut cp = match resume {
        Some(cp) => {
            if cp.plan != digest {
                return Err(CoreError::CheckpointMismatch(format!(
                    "checkpoint plan {} != {}",
                    cp.plan, digest
                )));
            }
            if cp.next_index < range.start || cp.next_index > range.end {
                return Err(CoreError::CheckpointMismatch(format!(
                    "next index {} outside shard {:?}",
                    cp.next_index, range
                )));
            }
            cp.clone()
        }
        None => Checkpoint {
            version: CHECKPOINT_VERSION,
            plan: digest.clone(),
            next_index: range.start,
            records_bytes: 0,
            complete: false,
            counts: empty_counts(),
        },
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .map_err(|e| CoreError::InvalidPlan(format!("worker pool: {e}")))?;
    let every = opts.checkpoint_every.max(1);
    let batch = opts.batch_size.max(1);
    let mut perfect = Vec::new();
    let mut evaluated = 0u64;

    let evaluate = |idx: u64| -> Evaluated {
        let p = ParamPair::new(
            b_axis[(idx / nc) as usize].clone(),
            c_axis[(idx % nc) as usize].clone(),
        );
        let rec = evaluate_pair_with(&p, plan.strategy);
        let write = plan.verbosity == Verbosity::Full || !rec.outcome.is_bulk();
        Evaluated {
            class: rec.outcome.class(),
            line: write.then(|| RecordLine::from(&rec).to_json()),
            perfect: (rec.outcome == Outcome::PerfectCuboid).then_some(p),
        }
    };

    while cp.next_index < range.end {
        if opts.stop.as_ref().is_some_and(|s| s.load(Ordering::SeqCst)) {
            sink.flush()?;
            on_checkpoint(&cp)?;
            return Err(CoreError::Interrupted {
                next_index: cp.next_index,
            });
        }
        let done = cp.next_index - range.start;
        let boundary = range.start + (done / every + 1) * every;
        let end = (cp.next_index + batch).min(boundary).min(range.end);

        let results: Vec<Evaluated> = pool.install(|| {
            (cp.next_index..end)
                .into_par_iter()
                .map(&evaluate)
                .collect()
        });
        for r in results {
            *cp.counts.entry(r.class.to_string()).or_default() += 1;
            if let Some(line) = r.line {
                sink.write_all(line.as_bytes())?;
                sink.write_all(b"\n")?;
                cp.records_bytes += line.len() as u64 + 1;
            }
            perfect.extend(r.perfect);
        }
        evaluated += end - cp.next_index;
        cp.next_index = end;
        if end == boundary || end == range.end {
            cp.complete = end == range.end;
            sink.flush()?;
            on_checkpoint(&cp)?;
        }
    }
    if range.is_empty() {
        cp.complete = true;
        on_checkpoint(&cp)?;
    }

    Ok(SweepSummary {
        plan_digest: digest,
        total: range.end - range.start,
        evaluated_this_run: evaluated,
        counts: cp.counts,
        perfect,
        elapsed: started.elapsed(),
    })
}

/// File layout of a sweep run: `records.jsonl` and `checkpoint.toml` in one directory.
#[derive(Clone, Debug)]
pub struct SweepDir {
    pub root: PathBuf,
}

impl SweepDir {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self { root: root.into() }
    }

    pub fn records(&self) -> PathBuf {
        self.root.join(RECORDS_FILE)
    }

    pub fn checkpoint(&self) -> PathBuf {
        self.root.join(CHECKPOINT_FILE)
    }

    /// Runs (or resumes) a sweep with its files in this directory.
    ///
    /// With `resume` set and a checkpoint present, the record file is cut back
    /// to the checkpointed length and the sweep continues from there. Without
    /// it, any previous files are replaced.
    pub fn run(&self, plan: &SweepPlan, opts: &SweepOptions, resume: bool) -> Result<SweepSummary> {
        fs::create_dir_all(&self.root)?;
        let cp_path = self.checkpoint();
        let previous = if resume && cp_path.exists() {
            Some(Checkpoint::load(&cp_path)?)
        } else {
            None
        };

        let file = match &previous {
            Some(cp) => {
                if cp.plan != plan.digest() {
                    return Err(CoreError::CheckpointMismatch(format!(
                        "{} was written for a different plan",
                        cp_path.display()
                    )));
                }
                let f = OpenOptions::new()
                    .write(true)
                    .create(true)
                    .truncate(false)
                    .open(self.records())?;
                if f.metadata()?.len() < cp.records_bytes {
                    return Err(CoreError::CheckpointMismatch(
                        "record file is shorter than the checkpoint".into(),
                    ));
                }
                f.set_len(cp.records_bytes)?;
                OpenOptions::new().append(true).open(self.records())?
            }
            None => File::create(self.records())?,
        };
        let mut sink = BufWriter::new(file);
        let summary = run_sweep(plan, opts, &mut sink, previous.as_ref(), |cp| {
            cp.store(&cp_path)
        })?;
        sink.flush()?;
        Ok(summary)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn height_one() {
        assert_eq!(enumerate_rationals(1), vec![int(-1), int(0), int(1)]);
    }

    #[test]
    fn height_two_order() {
        assert_eq!(
            enumerate_rationals(2),
            vec![
                int(-2),
                int(-1),
                int(0),
                int(1),
                int(2),
                frac(-1, 2),
                frac(1, 2)
            ]
        );
    }

    #[test]
    fn filters() {
        let pos: Vec<_> = enumerate_rationals(2)
            .into_iter()
            .filter(|r| SignFilter::Positive.admits(r))
            .collect();
        assert_eq!(pos, vec![int(1), int(2), frac(1, 2)]);
        assert!("sideways".parse::<SignFilter>().is_err());
        assert_eq!("nonzero".parse::<SignFilter>(), Ok(SignFilter::Nonzero));
    }

    #[test]
    fn plan_validation() {
        assert!(SweepPlan::new(0).validate().is_err());
        assert!(SweepPlan::new(3).with_shard(4, 4).validate().is_err());
        assert!(SweepPlan::new(3).with_shard(3, 4).validate().is_ok());
    }

    #[test]
    fn shards_tile_the_range() {
        let total = 1001;
        let mut next = 0;
        for k in 0..7 {
            let r = SweepPlan::new(1).with_shard(k, 7).shard_range(total);
            assert_eq!(r.start, next);
            next = r.end;
        }
        assert_eq!(next, total);
    }

    #[test]
    fn digest_depends_on_the_plan() {
        let a = SweepPlan::new(5);
        assert_eq!(a.digest(), SweepPlan::new(5).digest());
        assert_ne!(a.digest(), SweepPlan::new(6).digest());
        assert_ne!(
            a.digest(),
            a.clone().with_verbosity(Verbosity::Full).digest()
        );
    }

    #[test]
    fn checkpoint_text_round_trip() {
        let cp = Checkpoint {
            version: 1,
            plan: "abc".into(),
            next_index: 42,
            records_bytes: 1234,
            complete: false,
            counts: empty_counts(),
        };
        let text = cp.to_text();
        assert!(text.starts_with(CHECKPOINT_HEADER));
        assert_eq!(Checkpoint::from_text(&text).unwrap(), cp);
        assert!(Checkpoint::from_text("version = 1").is_err());
    }

    #[test]
    fn mismatched_checkpoint_is_rejected() {
        let plan = SweepPlan::new(2);
        let cp = Checkpoint {
            version: 1,
            plan: "not-this-plan".into(),
            next_index: 0,
            records_bytes: 0,
            complete: false,
            counts: empty_counts(),
        };
        let err = run_sweep(
            &plan,
            &SweepOptions::default(),
            &mut Vec::new(),
            Some(&cp),
            |_| Ok(()),
        );
        assert!(matches!(err, Err(CoreError::CheckpointMismatch(_))));
    }

    #[test]
    fn stop_flag_interrupts_with_checkpoint() {
        let stop = Arc::new(AtomicBool::new(true));
        let opts = SweepOptions {
            stop: Some(stop),
            ..Default::default()
        };
        let mut seen = Vec::new();
        let err = run_sweep(&SweepPlan::new(2), &opts, &mut Vec::new(), None, |cp| {
            seen.push(cp.clone());
            Ok(())
        });
        assert!(matches!(err, Err(CoreError::Interrupted { next_index: 0 })));
        assert_eq!(seen.len(), 1);
    }
}
