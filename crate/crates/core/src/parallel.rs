//! Data-parallel building blocks the minimization algorithms are written
//! against: a parallel loop, a parallel sort, adjacent difference, inclusive
//! scan, and an array whose cells resolve concurrent writes by a
//! [`RacePolicy`].
//!
//! All parallelism runs on the rayon thread pool. [`configure_threads`]
//! sizes the global pool, normally from the `DFAMIN_THREADS` variable.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;
use std::sync::atomic::{AtomicU32, Ordering::Relaxed};

use rayon::prelude::*;

/// Environment variable that overrides the worker count.
pub const THREADS_ENV: &str = "DFAMIN_THREADS";

/// Sentinel for an empty [`RaceArray`] cell.
pub const UNSET: u32 = u32::MAX;

/// How a cell written by several workers in one parallel step is resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum RacePolicy {
    /// One of the written values survives; which one is unspecified.
    #[default]
    ArbitraryWinner,
    /// The smallest written value survives.
    DeterministicMin,
    /// The largest written value survives.
    DeterministicMax,
}

impl RacePolicy {
    pub const ALL: [RacePolicy; 3] = [
        RacePolicy::ArbitraryWinner,
        RacePolicy::DeterministicMin,
        RacePolicy::DeterministicMax,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RacePolicy::ArbitraryWinner => "arbitrary",
            RacePolicy::DeterministicMin => "min",
            RacePolicy::DeterministicMax => "max",
        }
    }
}

impl fmt::Display for RacePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RacePolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "arbitrary" | "arbitrary-winner" => Ok(RacePolicy::ArbitraryWinner),
            "min" | "deterministic-min" => Ok(RacePolicy::DeterministicMin),
            "max" | "deterministic-max" => Ok(RacePolicy::DeterministicMax),
            other => Err(format!(
                "unknown race policy `{other}` (expected arbitrary, min or max)"
            )),
        }
    }
}

/// Shared array of `u32` cells with concurrent-write semantics fixed by a
/// [`RacePolicy`]. Cells start out [`UNSET`].
pub struct RaceArray {
    cells: Vec<AtomicU32>,
    policy: RacePolicy,
}

impl RaceArray {
    pub fn new(len: usize, policy: RacePolicy) -> RaceArray {
        RaceArray {
            cells: (0..len).map(|_| AtomicU32::new(UNSET)).collect(),
            policy,
        }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn policy(&self) -> RacePolicy {
        self.policy
    }

    /// Concurrent write of `value` (which must not be [`UNSET`]).
    #[inline]
    pub fn write(&self, index: usize, value: u32) {
        debug_assert_ne!(value, UNSET);
        let cell = &self.cells[index];
        match self.policy {
            RacePolicy::ArbitraryWinner => cell.store(value, Relaxed),
            RacePolicy::DeterministicMin => {
                cell.fetch_min(value, Relaxed);
            }
            RacePolicy::DeterministicMax => {
                // UNSET is u32::MAX, so a plain fetch_max would never move off it
                let _ = cell.fetch_update(Relaxed, Relaxed, |cur| {
                    (cur == UNSET || value > cur).then_some(value)
                });
            }
        }
    }

    /// Atomically installs `value` if the cell is [`UNSET`]. Returns `Ok(())`
    /// when this call won, otherwise `Err(current)`.
    #[inline]
    pub fn claim(&self, index: usize, value: u32) -> Result<(), u32> {
        self.cells[index]
            .compare_exchange(UNSET, value, Relaxed, Relaxed)
            .map(|_| ())
    }

    #[inline]
    pub fn get(&self, index: usize) -> Option<u32> {
        match self.cells[index].load(Relaxed) {
            UNSET => None,
            v => Some(v),
        }
    }

    /// Resets every cell to [`UNSET`].
    pub fn clear(&self) {
        self.cells.par_iter().for_each(|c| c.store(UNSET, Relaxed));
    }

    pub fn snapshot(&self) -> Vec<Option<u32>> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }
}

/// Runs `body` once for every index in `range`, possibly concurrently.
///
/// No ordering between indices is guaranteed; writes to shared cells must go
/// through something like [`RaceArray`].
pub fn par_for<F>(range: Range<usize>, body: F)
where
    F: Fn(usize) + Sync + Send,
{
    range.into_par_iter().for_each(body);
}

/// Sorts in parallel by a strict weak order. Not stable.
pub fn par_sort<T, F>(items: &mut [T], compare: F)
where
    T: Send,
    F: Fn(&T, &T) -> Ordering + Sync,
{
    items.par_sort_unstable_by(compare);
}

/// `out[0] = 0`, and `out[i] = 1` iff `are_neq(items[i], items[i - 1])`.
pub fn adjacent_diff<T, F>(items: &[T], are_neq: F) -> Vec<u32>
where
    T: Sync,
    F: Fn(&T, &T) -> bool + Sync,
{
    let mut out = vec![0u32; items.len()];
    if items.len() > 1 {
        out[1..]
            .par_iter_mut()
            .zip(items.par_windows(2))
            .for_each(|(slot, pair)| *slot = u32::from(are_neq(&pair[1], &pair[0])));
    }
    out
}

/// Chunked two-pass inclusive prefix sum.
pub fn inclusive_scan(items: &[u32]) -> Vec<u32> {
    let mut out = items.to_vec();
    if out.is_empty() {
        return out;
    }
    let chunk = (out.len() / (4 * rayon::current_num_threads())).max(4096);
    let totals: Vec<u32> = out
        .par_chunks_mut(chunk)
        .map(|c| {
            for i in 1..c.len() {
                c[i] += c[i - 1];
            }
            c[c.len() - 1]
        })
        .collect();
    let offsets: Vec<u32> = totals
        .iter()
        .scan(0u32, |acc, &t| {
            let before = *acc;
            *acc += t;
            Some(before)
        })
        .collect();
    out.par_chunks_mut(chunk)
        .zip(offsets)
        .filter(|(_, off)| *off != 0)
        .for_each(|(c, off)| c.iter_mut().for_each(|v| *v += off));
    out
}

/// Reads the worker count from [`THREADS_ENV`]. Invalid values are an error;
/// an absent variable yields `Ok(None)`.
pub fn threads_from_env() -> Result<Option<usize>, String> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!("{THREADS_ENV} must be a positive integer, got `{raw}`")),
        },
    }
}

/// Sizes the global worker pool. `None` keeps rayon's default (hardware
/// parallelism). Only the first call has an effect.
pub fn configure_threads(threads: Option<usize>) {
    if let Some(n) = threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}
