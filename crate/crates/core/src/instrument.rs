//! Deterministic cost accounting for matching solves.
//!
//! Every solve is recorded with its vertex count `k`. A full solve costs
//! `k^3` work units; a grouped repair costs `k^2`.

use std::fmt::Write as _;
use std::sync::Mutex;

use crate::error::Result;
use crate::matching::{self, MatchingInstance, MatchingSolution};
use crate::weights::Rational;

/// How a compound pair's matching instances are solved.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SolverKind {
    /// Each instance separately by the Hungarian method.
    #[default]
    PerInstance,
    /// Instances sharing a base solved in one pass with [`matching::solve_family`].
    Grouped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RecordKind {
    PerInstance,
    GroupedBase,
    GroupedRepair,
}

impl RecordKind {
    fn as_str(self) -> &'static str {
        match self {
            RecordKind::PerInstance => "per-instance",
            RecordKind::GroupedBase => "grouped-base",
            RecordKind::GroupedRepair => "grouped-repair",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveRecord {
    pub instance: u64,
    /// Vertices of the instance; for a repair, of its base.
    pub vertices: usize,
    pub positive_pairs: usize,
    pub kind: RecordKind,
}

impl SolveRecord {
    pub fn work_units(&self) -> u64 {
        let k = self.vertices as u64;
        match self.kind {
            RecordKind::PerInstance | RecordKind::GroupedBase => k * k * k,
            RecordKind::GroupedRepair => k * k,
        }
    }
}

/// Collects solve records; safe to share between threads.
#[derive(Debug, Default)]
pub struct Collector {
    records: Mutex<Vec<SolveRecord>>,
}

impl Collector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&self, rec: SolveRecord) {
        self.records.lock().expect("collector poisoned").push(rec);
    }

    /// Hungarian solve of `inst`, recorded as a per-instance solve.
    pub fn hungarian(&self, inst: &MatchingInstance) -> MatchingSolution {
        self.record(SolveRecord {
            instance: inst.id(),
            vertices: inst.vertex_count(),
            positive_pairs: inst.pair_count(),
            kind: RecordKind::PerInstance,
        });
        matching::solve_hungarian(inst)
    }

    /// Grouped solve of `base` and its one-deletion family, recorded as one
    /// base solve plus one repair per deletion.
    pub fn family(
        &self,
        base: &MatchingInstance,
        deletions: &[usize],
    ) -> Result<(MatchingSolution, Vec<(usize, Rational)>)> {
        let out = matching::solve_family_full(base, deletions)?;
        self.record(SolveRecord {
            instance: base.id(),
            vertices: base.vertex_count(),
            positive_pairs: base.pair_count(),
            kind: RecordKind::GroupedBase,
        });
        for _ in deletions {
            self.record(SolveRecord {
                instance: base.id(),
                vertices: base.vertex_count(),
                positive_pairs: base.pair_count(),
                kind: RecordKind::GroupedRepair,
            });
        }
        Ok(out)
    }

    pub fn log(&self) -> InstrumentationLog {
        InstrumentationLog::new(self.records.lock().expect("collector poisoned").clone())
    }
}

/// Solve records plus aggregates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InstrumentationLog {
    pub records: Vec<SolveRecord>,
    pub calls: usize,
    pub sum_k: u64,
    /// Sum of `k^3` over full solves.
    pub sum_k3: u64,
    /// Sum of `k^2` over grouped repairs.
    pub sum_k2: u64,
    pub max_k: usize,
}

impl InstrumentationLog {
    pub fn new(records: Vec<SolveRecord>) -> Self {
        let mut log = InstrumentationLog {
            calls: records.len(),
            ..Default::default()
        };
        for r in &records {
            let k = r.vertices as u64;
            log.sum_k += k;
            log.max_k = log.max_k.max(r.vertices);
            match r.kind {
                RecordKind::GroupedRepair => log.sum_k2 += k * k,
                _ => log.sum_k3 += k * k * k,
            }
        }
        log.records = records;
        log
    }

    pub fn work_units(&self) -> u64 {
        self.sum_k3 + self.sum_k2
    }

    /// Records whose instance has exactly `k` vertices and `pairs` positive pairs.
    pub fn count_full_solves(&self, k: usize, pairs: usize) -> usize {
        self.records
            .iter()
            .filter(|r| r.kind != RecordKind::GroupedRepair && r.vertices == k && r.positive_pairs == pairs)
            .count()
    }

    pub fn count_kind(&self, kind: RecordKind) -> usize {
        self.records.iter().filter(|r| r.kind == kind).count()
    }

    /// Concatenate logs of separate runs.
    pub fn merge(logs: impl IntoIterator<Item = InstrumentationLog>) -> Self {
        InstrumentationLog::new(logs.into_iter().flat_map(|l| l.records).collect())
    }

    /// One line per record: `instance,k,pairs,kind`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            let _ = writeln!(s, "{},{},{},{}", r.instance, r.vertices, r.positive_pairs, r.kind.as_str());
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aggregates_and_work_units() {
        let c = Collector::new();
        let mut inst = MatchingInstance::new(2, 3).with_id(7);
        inst.set(0, 0, Rational::from_integer(1)).unwrap();
        c.hungarian(&inst);
        c.family(&inst, &[0, 2]).unwrap();
        let log = c.log();
        assert_eq!(log.calls, 4);
        assert_eq!(log.sum_k3, 125 * 2);
        assert_eq!(log.sum_k2, 25 * 2);
        assert_eq!(log.work_units(), 300);
        assert_eq!(log.max_k, 5);
        assert_eq!(log.count_kind(RecordKind::GroupedRepair), 2);
        assert_eq!(log.count_full_solves(5, 1), 2);
        assert!(log.to_text().starts_with("7,5,1,per-instance\n"));
    }
}
