//! Exact `ndepth [S]` by threshold feasibility over good partitions.
//!
//! For a threshold `t` the question is whether `B_k \ {∅}` splits into
//! intervals whose tops all weigh at least `t`. The search is a depth-first
//! exact cover: the numerically smallest uncovered mask `x` has every proper
//! subset covered already, so it must be the bottom of its interval, and the
//! candidate tops `y ⊇ x` are tried in increasing order. The first partition
//! found is therefore reproducible.

mod cover;

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use self::cover::{Cover, Narrow, Wide};
use crate::error::{Error, Result};
use crate::formulas::upper_bound;
use crate::lattice::{GoodPartition, Interval, SubsetMask, WeightVector};

pub const DEFAULT_NODE_LIMIT: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    /// Maximum number of search nodes per threshold probe.
    pub node_limit: Option<u64>,
    /// Split the root branch across the current rayon pool.
    pub parallel: bool,
    /// With `parallel`, return the same witness as a sequential run.
    pub deterministic: bool,
    /// Reject a node early when some uncovered mask has no admissible top left.
    pub prune: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { node_limit: Some(DEFAULT_NODE_LIMIT), parallel: false, deterministic: true, prune: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Probe {
    pub threshold: u64,
    pub feasible: bool,
    pub nodes: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed: Duration,
    pub probes: Vec<Probe>,
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub value: u64,
    pub witness: GoodPartition,
    pub upper_bound: u64,
    pub stats: SearchStats,
}

/// A good partition with every top weighing at least `t`, if one exists.
pub fn feasible_at(w: &WeightVector, t: u64) -> Result<Option<GoodPartition>> {
    feasible_at_with(w, t, &SolverConfig::default()).map(|(p, _)| p)
}

/// Like [`feasible_at`], also returning the number of nodes visited.
pub fn feasible_at_with(
    w: &WeightVector,
    t: u64,
    config: &SolverConfig,
) -> Result<(Option<GoodPartition>, u64)> {
    if t == 0 {
        return Err(Error::Domain("threshold must be at least 1".into()));
    }
    let tables = Tables::new(w, t);
    let budget = Budget::new(config);
    let outcome = if w.arity() <= 6 {
        run::<Narrow>(&tables, config, &budget)
    } else {
        run::<Wide>(&tables, config, &budget)
    };
    let nodes = budget.used.load(Ordering::Relaxed);
    match outcome {
        Outcome::Found(stack) => Ok((Some(tables.partition(&stack)), nodes)),
        Outcome::Exhausted => Ok((None, nodes)),
        Outcome::LimitHit => Err(Error::NodeLimit {
            limit: config.node_limit.unwrap_or(u64::MAX),
            threshold: t,
            nodes,
            upper: t,
        }),
    }
}

/// `ndepth [S]` with a witness partition, using default settings.
pub fn exact_ndepth(w: &WeightVector) -> Result<SolveResult> {
    exact_ndepth_with(w, &SolverConfig::default())
}

/// Scans thresholds downward from the upper bound. Only weights of actual
/// masks can be the value, so the scan visits those levels only; the
/// smallest level (the lightest singleton) is always feasible.
pub fn exact_ndepth_with(w: &WeightVector, config: &SolverConfig) -> Result<SolveResult> {
    let start = Instant::now();
    let bound = upper_bound(w);
    let mut levels: Vec<u64> = w.subset_weights().into_iter().skip(1).filter(|&v| v <= bound).collect();
    levels.sort_unstable_by(|a, b| b.cmp(a));
    levels.dedup();

    let mut stats = SearchStats::default();
    let mut upper = bound;
    for t in levels {
        let (found, nodes) = match feasible_at_with(w, t, config) {
            Err(Error::NodeLimit { limit, threshold, nodes, .. }) => {
                return Err(Error::NodeLimit { limit, threshold, nodes: stats.nodes + nodes, upper })
            }
            other => other?,
        };
        stats.nodes += nodes;
        stats.probes.push(Probe { threshold: t, feasible: found.is_some(), nodes });
        if let Some(witness) = found {
            stats.elapsed = start.elapsed();
            return Ok(SolveResult { value: t, witness, upper_bound: bound, stats });
        }
        upper = t - 1;
    }
    unreachable!("the lightest singleton weight is always feasible")
}

struct Tables {
    k: usize,
    t: u64,
    weight: Vec<u64>,
    /// Lazily built: supersets `y` of `x` with `weight[y] >= t`, ascending.
    tops: Vec<OnceLock<Box<[u32]>>>,
}

impl Tables {
    fn new(w: &WeightVector, t: u64) -> Self {
        let k = w.arity();
        Tables { k, t, weight: w.subset_weights(), tops: (0..1usize << k).map(|_| OnceLock::new()).collect() }
    }

    #[inline]
    fn tops(&self, x: u32) -> &[u32] {
        self.tops[x as usize].get_or_init(|| {
            let free = ((1u32 << self.k) - 1) & !x;
            let mut out = Vec::new();
            let mut sub = 0u32;
            loop {
                let y = x | sub;
                if self.weight[y as usize] >= self.t {
                    out.push(y);
                }
                sub = sub.wrapping_sub(free) & free;
                if sub == 0 {
                    break;
                }
            }
            out.into_boxed_slice()
        })
    }

    fn partition(&self, stack: &[(u32, u32)]) -> GoodPartition {
        let intervals = stack
            .iter()
            .map(|&(x, y)| {
                Interval::new(SubsetMask::from_raw(x, self.k), SubsetMask::from_raw(y, self.k))
                    .expect("search only emits well-formed intervals")
            })
            .collect();
        GoodPartition::from_trusted(self.k, intervals)
    }
}

struct Budget {
    limit: u64,
    used: AtomicU64,
    stop: AtomicBool,
    exact: bool,
}

impl Budget {
    const CHUNK: u64 = 1024;

    fn new(config: &SolverConfig) -> Self {
        Budget {
            limit: config.node_limit.unwrap_or(u64::MAX),
            used: AtomicU64::new(0),
            stop: AtomicBool::new(false),
            exact: !config.parallel,
        }
    }
}

enum Outcome {
    Found(Vec<(u32, u32)>),
    Exhausted,
    LimitHit,
}

#[derive(PartialEq, Eq)]
enum Flow {
    Found,
    Exhausted,
    LimitHit,
    Cancelled,
}

struct Worker<'a, C> {
    tables: &'a Tables,
    budget: &'a Budget,
    cover: C,
    stack: Vec<(u32, u32)>,
    pending: u64,
    prune: bool,
}

impl<'a, C: Cover> Worker<'a, C> {
    fn new(tables: &'a Tables, budget: &'a Budget, prune: bool) -> Self {
        Worker { tables, budget, cover: C::new(tables.k), stack: Vec::new(), pending: 0, prune }
    }

    fn flush(&mut self) {
        self.budget.used.fetch_add(self.pending, Ordering::Relaxed);
        self.pending = 0;
    }

    /// Counts a node; `Some` means the search must unwind.
    #[inline]
    fn tick(&mut self) -> Option<Flow> {
        self.pending += 1;
        if self.budget.exact {
            if self.pending > self.budget.limit {
                return Some(Flow::LimitHit);
            }
        } else if self.pending >= Budget::CHUNK {
            let total = self.budget.used.fetch_add(self.pending, Ordering::Relaxed) + self.pending;
            self.pending = 0;
            if total > self.budget.limit {
                self.budget.stop.store(true, Ordering::Relaxed);
                return Some(Flow::LimitHit);
            }
            if self.budget.stop.load(Ordering::Relaxed) {
                return Some(Flow::Cancelled);
            }
        }
        None
    }

    /// Every uncovered mask still has a heavy enough top reachable through
    /// uncovered masks only.
    fn viable(&self) -> bool {
        self.cover.all_uncovered(|z| self.tables.tops(z).iter().any(|&y| self.cover.is_free(z, y)))
    }

    fn dfs(&mut self) -> Flow {
        if let Some(flow) = self.tick() {
            return flow;
        }
        let Some(x) = self.cover.first_uncovered() else {
            return Flow::Found;
        };
        if self.prune && !self.viable() {
            return Flow::Exhausted;
        }
        let tables = self.tables;
        for &y in tables.tops(x) {
            if !self.cover.is_free(x, y) {
                continue;
            }
            self.cover.cover(x, y);
            self.stack.push((x, y));
            match self.dfs() {
                Flow::Exhausted => {}
                flow => return flow,
            }
            self.stack.pop();
            self.cover.uncover(x, y);
        }
        Flow::Exhausted
    }
}

fn run<C: Cover>(tables: &Tables, config: &SolverConfig, budget: &Budget) -> Outcome {
    if !config.parallel {
        let mut worker = Worker::<C>::new(tables, budget, config.prune);
        let flow = worker.dfs();
        worker.flush();
        return match flow {
            Flow::Found => Outcome::Found(worker.stack),
            Flow::Exhausted => Outcome::Exhausted,
            Flow::LimitHit | Flow::Cancelled => Outcome::LimitHit,
        };
    }

    // the root bottom is always mask 1
    let root_tops: Vec<u32> = tables.tops(1).to_vec();
    let subtree = |y: u32| -> Option<std::result::Result<Vec<(u32, u32)>, ()>> {
        let mut worker = Worker::<C>::new(tables, budget, config.prune);
        worker.cover.cover(1, y);
        worker.stack.push((1, y));
        let flow = worker.dfs();
        worker.flush();
        match flow {
            Flow::Found => {
                if !config.deterministic {
                    budget.stop.store(true, Ordering::Relaxed);
                }
                Some(Ok(worker.stack))
            }
            Flow::Exhausted | Flow::Cancelled => None,
            Flow::LimitHit => Some(Err(())),
        }
    };
    let hit = if config.deterministic {
        root_tops.par_iter().find_map_first(|&y| subtree(y))
    } else {
        root_tops.par_iter().find_map_any(|&y| subtree(y))
    };
    match hit {
        Some(Ok(stack)) => Outcome::Found(stack),
        Some(Err(())) => Outcome::LimitHit,
        None if budget.used.load(Ordering::Relaxed) > budget.limit => Outcome::LimitHit,
        None => Outcome::Exhausted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::validate_good_partition;

    fn w(v: &[u64]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn feasibility_examples() {
        let ones = w(&[1, 1, 1, 1]);
        let p = feasible_at(&ones, 2).unwrap().unwrap();
        assert!(p.ndepth(&ones).unwrap() >= 2);
        assert!(feasible_at(&ones, 3).unwrap().is_none());
        let single = feasible_at(&w(&[5]), 5).unwrap().unwrap();
        assert_eq!(single.to_string(), "[1]");
        assert!(feasible_at(&w(&[5]), 6).unwrap().is_none());
        assert!(feasible_at(&w(&[5]), 0).is_err());
    }

    #[test]
    fn exact_examples() {
        assert_eq!(exact_ndepth(&w(&[1, 2, 3])).unwrap().value, 3);
        assert_eq!(exact_ndepth(&w(&[1, 1, 1, 1, 1])).unwrap().value, 3);
        assert_eq!(exact_ndepth(&w(&[2, 2, 2])).unwrap().value, 4);
        assert_eq!(exact_ndepth(&w(&[1, 2, 3, 4])).unwrap().value, 6);
        assert_eq!(exact_ndepth(&w(&[9])).unwrap().value, 9);
    }

    #[test]
    fn witness_is_sound() {
        for v in [&[1, 2, 3][..], &[2, 1, 1, 3], &[3, 3, 1, 2, 1], &[1, 1, 1, 1, 1, 1]] {
            let weights = w(v);
            let r = exact_ndepth(&weights).unwrap();
            assert!(validate_good_partition(r.witness.intervals(), v.len()).is_valid());
            assert_eq!(r.witness.ndepth(&weights).unwrap(), r.value);
            assert!(r.value <= r.upper_bound);
        }
    }

    #[test]
    fn witness_is_deterministic() {
        let weights = w(&[1, 2, 2, 3, 3]);
        let a = exact_ndepth(&weights).unwrap();
        let b = exact_ndepth(&weights).unwrap();
        assert_eq!(a.witness, b.witness);
        assert_eq!(a.stats.nodes, b.stats.nodes);
    }

    #[test]
    fn parallel_matches_sequential() {
        let config = SolverConfig { parallel: true, ..SolverConfig::default() };
        for v in [&[1, 1, 2, 3][..], &[1, 2, 2, 3, 3], &[2, 2, 2, 2, 2]] {
            let weights = w(v);
            let seq = exact_ndepth(&weights).unwrap();
            let par = exact_ndepth_with(&weights, &config).unwrap();
            assert_eq!(seq.value, par.value);
            assert_eq!(seq.witness, par.witness);
            let any = exact_ndepth_with(&weights, &SolverConfig { deterministic: false, ..config }).unwrap();
            assert_eq!(any.value, seq.value);
            assert_eq!(any.witness.ndepth(&weights).unwrap(), seq.value);
        }
    }

    #[test]
    fn pruning_does_not_change_answers() {
        let plain = SolverConfig { prune: false, ..SolverConfig::default() };
        for v in [&[1, 1, 1][..], &[1, 2, 3, 4], &[1, 1, 2, 2], &[2, 3, 3, 5]] {
            let weights = w(v);
            let a = exact_ndepth(&weights).unwrap();
            let b = exact_ndepth_with(&weights, &plain).unwrap();
            assert_eq!(a.value, b.value);
            assert_eq!(a.witness, b.witness);
        }
    }

    #[test]
    fn node_limit_is_reported() {
        let config = SolverConfig { node_limit: Some(3), ..SolverConfig::default() };
        match exact_ndepth_with(&w(&[1, 1, 1, 1, 1]), &config) {
            Err(Error::NodeLimit { limit: 3, threshold: 4, upper: 4, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn wide_cover_agrees_on_small_cases() {
        // run the multi-word representation directly through the search
        for v in [&[1, 1, 1][..], &[1, 2, 3, 4], &[1, 1, 1, 1, 1]] {
            let weights = w(v);
            let expected = exact_ndepth(&weights).unwrap();
            let tables = Tables::new(&weights, expected.value);
            let budget = Budget::new(&SolverConfig::default());
            let Outcome::Found(stack) = run::<Wide>(&tables, &SolverConfig::default(), &budget) else {
                panic!("wide search failed at the optimum");
            };
            assert_eq!(tables.partition(&stack), expected.witness);
            let tables = Tables::new(&weights, expected.value + 1);
            let budget = Budget::new(&SolverConfig::default());
            assert!(matches!(run::<Wide>(&tables, &SolverConfig::default(), &budget), Outcome::Exhausted));
        }
    }
}
