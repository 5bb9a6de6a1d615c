//! The enumeration schedule and the TTI pruning rules.
//!
//! Rows are candidate start times and columns candidate end times, both drawn
//! from the distinct timestamps of the query window. A row records its pruned
//! columns as sorted, disjoint, non-adjacent ranges of domain positions.

use serde::Serialize;

use crate::model::{TimeInterval, Timestamp};

/// Which rule covered a cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PruneRule {
    /// Same row, columns between the TTI end and the trigger column.
    Right,
    /// Rows after the trigger row up to the TTI start.
    Under,
    /// Rows inside the TTI, columns after the TTI end.
    Left,
}

/// Per-rule tallies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RuleCounts {
    pub por: u64,
    pub pou: u64,
    pub pol: u64,
}

impl RuleCounts {
    pub fn total(&self) -> u64 {
        self.por + self.pou + self.pol
    }

    pub fn add(&mut self, other: &RuleCounts) {
        self.por += other.por;
        self.pou += other.pou;
        self.pol += other.pol;
    }

    fn bump(&mut self, rule: PruneRule, by: u64) {
        match rule {
            PruneRule::Right => self.por += by,
            PruneRule::Under => self.pou += by,
            PruneRule::Left => self.pol += by,
        }
    }
}

/// Result of one [`apply_pruning`] call.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PruneOutcome {
    /// Rules whose condition held.
    pub fired: RuleCounts,
    /// Cells newly covered by each rule.
    pub covered: RuleCounts,
}

#[derive(Clone, Debug)]
pub struct PruneSchedule {
    domain: Vec<Timestamp>,
    rows: Vec<Vec<(usize, usize)>>,
    covered: u64,
}

impl PruneSchedule {
    /// `domain` must be strictly ascending.
    pub fn new(domain: Vec<Timestamp>) -> Self {
        debug_assert!(domain.windows(2).all(|w| w[0] < w[1]));
        let rows = vec![Vec::new(); domain.len()];
        PruneSchedule {
            domain,
            rows,
            covered: 0,
        }
    }

    pub fn domain(&self) -> &[Timestamp] {
        &self.domain
    }

    /// Number of cells `[r, c]` with `r <= c` in the domain.
    pub fn total_cells(&self) -> u64 {
        let n = self.domain.len() as u64;
        n * (n + 1) / 2
    }

    pub fn covered_cells(&self) -> u64 {
        self.covered
    }

    fn position(&self, t: Timestamp) -> Option<usize> {
        self.domain.binary_search(&t).ok()
    }

    /// Position of the first domain value `>= t`.
    fn lower(&self, t: Timestamp) -> usize {
        self.domain.partition_point(|&d| d < t)
    }

    /// Position of the last domain value `<= t`.
    fn upper(&self, t: Timestamp) -> Option<usize> {
        self.domain.partition_point(|&d| d <= t).checked_sub(1)
    }

    /// Covers columns with values in `[lo, hi]` of the row at `row`.
    /// Columns before the row itself are ignored. Returns the number of cells
    /// newly covered.
    pub fn prune(&mut self, row: Timestamp, lo: Timestamp, hi: Timestamp) -> u64 {
        let Some(r) = self.position(row) else {
            return 0;
        };
        let lo = self.lower(lo).max(r);
        let Some(hi) = self.upper(hi) else {
            return 0;
        };
        self.prune_positions(r, lo, hi)
    }

    fn prune_positions(&mut self, r: usize, lo: usize, hi: usize) -> u64 {
        if lo > hi {
            return 0;
        }
        let ranges = &mut self.rows[r];
        // ranges that overlap or touch [lo, hi]
        let first = ranges.partition_point(|&(_, h)| h + 1 < lo);
        let last = ranges.partition_point(|&(l, _)| l <= hi + 1);
        let mut new_lo = lo;
        let mut new_hi = hi;
        let mut already = 0u64;
        for &(l, h) in &ranges[first..last] {
            let (ol, oh) = (l.max(lo), h.min(hi));
            if ol <= oh {
                already += (oh - ol + 1) as u64;
            }
            new_lo = new_lo.min(l);
            new_hi = new_hi.max(h);
        }
        ranges.splice(first..last, std::iter::once((new_lo, new_hi)));
        let added = (hi - lo + 1) as u64 - already;
        self.covered += added;
        added
    }

    pub fn is_pruned(&self, row: Timestamp, col: Timestamp) -> bool {
        match (self.position(row), self.position(col)) {
            (Some(r), Some(c)) => self.covering(r, c).is_some(),
            _ => false,
        }
    }

    fn covering(&self, r: usize, c: usize) -> Option<(usize, usize)> {
        let ranges = &self.rows[r];
        let i = ranges.partition_point(|&(_, h)| h < c);
        ranges.get(i).copied().filter(|&(l, _)| l <= c)
    }

    /// Largest domain column `c <= from` with `c >= row` whose cell is not
    /// covered, or `None`.
    pub fn next_unpruned_column(&self, row: Timestamp, from: Timestamp) -> Option<Timestamp> {
        let r = self.position(row)?;
        let c = self.upper(from)?;
        if c < r {
            return None;
        }
        let c = match self.covering(r, c) {
            // merged ranges never touch, so the column before a range is free
            Some((l, _)) => l.checked_sub(1)?,
            None => c,
        };
        (c >= r).then(|| self.domain[c])
    }

    /// Pruned column ranges of a row, as timestamp intervals.
    pub fn pruned_intervals(&self, row: Timestamp) -> Vec<TimeInterval> {
        self.position(row)
            .map(|r| {
                self.rows[r]
                    .iter()
                    .map(|&(l, h)| TimeInterval::new(self.domain[l], self.domain[h]))
                    .collect()
            })
            .unwrap_or_default()
    }

    /// Every covered cell, row-major.
    pub fn pruned_cells(&self) -> Vec<TimeInterval> {
        let mut out = Vec::new();
        for (r, ranges) in self.rows.iter().enumerate() {
            for &(l, h) in ranges {
                for c in l..=h {
                    out.push(TimeInterval::new(self.domain[r], self.domain[c]));
                }
            }
        }
        out
    }
}

/// Records the cells whose core is predicted by the core of `cell`, whose
/// tightest time interval is `tti`.
///
/// * Right: `te' < te` covers row `ts`, columns `[te', te - 1]`.
/// * Under: `ts' > ts` covers rows `r` in `(ts, ts']`, columns `[r, te]`.
/// * Left: both hold, covers rows `r` in `(ts', te']`, columns `[te' + 1, te]`.
pub fn apply_pruning(
    schedule: &mut PruneSchedule,
    cell: TimeInterval,
    tti: TimeInterval,
    range_end: Timestamp,
) -> PruneOutcome {
    debug_assert!(cell.contains(&tti), "TTI {tti} outside cell {cell}");
    let mut out = PruneOutcome::default();
    let Some(hi) = schedule.upper(cell.end.min(range_end)) else {
        return out;
    };
    if tti.end < cell.end {
        out.fired.bump(PruneRule::Right, 1);
        if let (Some(r), Some(before)) = (schedule.position(cell.start), hi.checked_sub(1)) {
            let lo = schedule.lower(tti.end).max(r);
            let added = schedule.prune_positions(r, lo, before);
            out.covered.bump(PruneRule::Right, added);
        }
    }
    if tti.start > cell.start {
        out.fired.bump(PruneRule::Under, 1);
        if let Some(last) = schedule.upper(tti.start) {
            for r in schedule.lower(cell.start + 1)..=last {
                let added = schedule.prune_positions(r, r, hi);
                out.covered.bump(PruneRule::Under, added);
            }
        }
    }
    if tti.start > cell.start && tti.end < cell.end {
        out.fired.bump(PruneRule::Left, 1);
        let lo = schedule.lower(tti.end + 1);
        if let Some(last) = schedule.upper(tti.end) {
            for r in schedule.lower(tti.start + 1)..=last {
                let added = schedule.prune_positions(r, lo.max(r), hi);
                out.covered.bump(PruneRule::Left, added);
            }
        }
    }
    out
}
