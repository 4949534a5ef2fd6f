//! Exact subset dynamic program for the fixed-endpoint path problem.
//!
//! `Δ(S, i)` is the length of the shortest path that leaves city 1, visits
//! every city of `S - {i}` and stops at `i`. With `S` ranging over the
//! nonempty subsets of the interior cities `{2, ..., n-1}`:
//!
//! ```text
//! Δ({i}, i) = δ(1, i)
//! Δ(S, i)   = min { Δ(S - {i}, j) + δ(j, i) : j ∈ S - {i} }      |S| ≥ 2
//! ```
//!
//! and the optimum is the root `Δ({2, ..., n}, n)`, the minimum over `j` of
//! `Δ({2, ..., n-1}, j) + δ(j, n)`. States are filled bottom-up in
//! increasing mask order; removing a bit always gives a smaller mask, so
//! every dependency is ready when it is read.

use std::fmt;

use crate::error::{Error, Result, Solver};
use crate::instance::{CityId, Instance};
use crate::oracle::Path;

/// Default size cap. At `n = 24` the table holds 22 · 2^22 eight-byte cells,
/// roughly 0.7 GB.
pub const DEFAULT_MAX_N: usize = 24;

/// Marks cells `(S, i)` with `i ∉ S`. Never read as a length.
const UNSET: u64 = u64::MAX;

/// A subset of the interior cities. Bit `k` stands for city `k + 2`;
/// city 1 and city n never appear.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SubsetMask(u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn from_bits(bits: u64) -> Self {
        SubsetMask(bits)
    }

    /// Every interior city of an instance with `n` cities.
    pub fn interior(n: usize) -> Self {
        assert!((2..=65).contains(&n), "interior mask needs 2 <= n <= 65");
        SubsetMask(low_bits(n - 2))
    }

    pub fn from_cities(cities: impl IntoIterator<Item = CityId>) -> Self {
        cities.into_iter().fold(Self::EMPTY, |m, c| m.with(c))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, city: CityId) -> bool {
        match bit_of(city) {
            Some(b) => self.0 & b != 0,
            None => false,
        }
    }

    /// Panics if `city` is city 1 or cannot be encoded.
    pub fn with(self, city: CityId) -> Self {
        SubsetMask(self.0 | bit_of(city).expect("city 1 is never in a subset"))
    }

    pub fn without(self, city: CityId) -> Self {
        match bit_of(city) {
            Some(b) => SubsetMask(self.0 & !b),
            None => self,
        }
    }

    /// Member cities in increasing label order.
    pub fn cities(self) -> impl Iterator<Item = CityId> {
        Bits(self.0).map(|k| CityId::new(k + 2))
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.cities().map(CityId::get))
            .finish()
    }
}

fn bit_of(city: CityId) -> Option<u64> {
    let k = city.get().checked_sub(2)?;
    (k < 64).then(|| 1u64 << k)
}

fn low_bits(m: usize) -> u64 {
    if m >= 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

/// Positions of the set bits, ascending.
struct Bits(u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let k = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(k)
    }
}

/// Memoized `Δ(S, i)` for every nonempty interior subset `S` and `i ∈ S`.
#[derive(Clone)]
pub struct StateTable {
    n: usize,
    interior: usize,
    // cell (mask, k) at mask * interior + k
    values: Vec<u64>,
    filled: u64,
}

impl StateTable {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `Δ(S, i)`, or `None` when `i ∉ S` or `S` is not an interior subset.
    pub fn get(&self, subset: SubsetMask, city: CityId) -> Option<u64> {
        if subset.is_empty() || subset.bits() > low_bits(self.interior) || !subset.contains(city) {
            return None;
        }
        let v = self.values[self.cell(subset.bits() as usize, city.get() - 2)];
        debug_assert_ne!(v, UNSET, "state {subset:?},{city} never computed");
        Some(v)
    }

    /// Number of interior states computed; the root is not included.
    pub fn filled_count(&self) -> u64 {
        self.filled
    }

    /// The root value `Δ({2, ..., n}, n)`.
    pub fn root_value(&self, inst: &Instance) -> u64 {
        self.check_instance(inst);
        if self.interior == 0 {
            return inst.d(0, 1);
        }
        self.best_last_interior(inst)
    }

    #[inline]
    fn cell(&self, mask: usize, k: usize) -> usize {
        mask * self.interior + k
    }

    fn check_instance(&self, inst: &Instance) {
        assert_eq!(
            self.n,
            inst.n(),
            "table was computed for a different instance"
        );
    }

    /// The best way to finish at city n from the full interior subset.
    fn best_last_interior(&self, inst: &Instance) -> u64 {
        let full = low_bits(self.interior) as usize;
        let last = self.n - 1;
        min_over(Bits(full as u64).map(|j| self.values[self.cell(full, j)] + inst.d(j + 1, last)))
    }

    /// Right-hand side of the recurrence for state `(mask, k)`.
    #[inline]
    fn best_predecessor(&self, inst: &Instance, mask: usize, k: usize) -> u64 {
        let prev = mask & !(1 << k);
        min_over(Bits(prev as u64).map(|j| self.values[self.cell(prev, j)] + inst.d(j + 1, k + 1)))
    }
}

impl fmt::Debug for StateTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StateTable")
            .field("n", &self.n)
            .field("filled", &self.filled)
            .finish_non_exhaustive()
    }
}

#[inline]
fn min_over(candidates: impl Iterator<Item = u64>) -> u64 {
    let best = candidates.fold(UNSET, u64::min);
    debug_assert_ne!(best, UNSET, "minimum over an empty set");
    best
}

/// An optimal route and how much work it took.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub length: u64,
    pub path: Path,
    /// Distinct states evaluated: DP states plus the root for the subset
    /// solver, orderings examined for the brute-force oracle.
    pub states_computed: u64,
}

/// Fills the state table under the default size cap.
pub fn fill_table(inst: &Instance) -> Result<StateTable> {
    fill_table_capped(inst, Some(DEFAULT_MAX_N))
}

/// Fills the state table. `max_n = None` lifts the size cap; the table
/// still has to fit in memory.
pub fn fill_table_capped(inst: &Instance, max_n: Option<usize>) -> Result<StateTable> {
    let n = inst.n();
    if let Some(cap) = max_n {
        if n > cap {
            return Err(Error::Size {
                solver: Solver::HeldKarp,
                n,
                cap,
            });
        }
    }
    let interior = n - 2;
    let cells = u32::try_from(interior)
        .ok()
        .and_then(|m| 1usize.checked_shl(m))
        .filter(|_| interior < usize::BITS as usize - 1)
        .and_then(|masks| masks.checked_mul(interior))
        .ok_or_else(|| Error::Overflow(format!("state table for n = {n} is not addressable")))?;

    let mut values = Vec::new();
    values.try_reserve_exact(cells).map_err(|_| Error::Size {
        solver: Solver::HeldKarp,
        n,
        cap: n - 1,
    })?;
    values.resize(cells, UNSET);

    let mut table = StateTable {
        n,
        interior,
        values,
        filled: 0,
    };
    for mask in 1..(1usize << interior) {
        for k in Bits(mask as u64) {
            let v = if mask == 1 << k {
                inst.d(0, k + 1)
            } else {
                table.best_predecessor(inst, mask, k)
            };
            let cell = table.cell(mask, k);
            table.values[cell] = v;
            table.filled += 1;
        }
    }
    Ok(table)
}

/// Recovers the lexicographically smallest optimal path, the same one the
/// brute-force oracle reports.
///
/// A backward sweep from the root marks every state that lies on some
/// optimal path, following only tight transitions, where
/// `Δ(S, i) = Δ(S - {i}, j) + δ(j, i)`. A forward walk from city 1 then
/// takes the smallest next city whose state is marked and reached tightly.
/// The marks cost one bit per table cell; argmins are recomputed rather
/// than stored.
pub fn reconstruct_path(table: &StateTable, inst: &Instance) -> Path {
    table.check_instance(inst);
    let n = table.n;
    let m = table.interior;
    let mut cities = Vec::with_capacity(n);
    cities.push(inst.first());
    if m > 0 {
        let marks = table.mark_optimal_states(inst);
        let mut mask = 0usize;
        let mut prev = 0usize; // instance index of the current city
        let mut reached = 0u64;
        for _ in 0..m {
            let next = Bits(!(mask as u64) & low_bits(m))
                .find(|&k| {
                    let cell = table.cell(mask | 1 << k, k);
                    marks.get(cell) && table.values[cell] == reached + inst.d(prev, k + 1)
                })
                .expect("a marked state always has a tight successor");
            mask |= 1 << next;
            prev = next + 1;
            reached = table.values[table.cell(mask, next)];
            cities.push(CityId::new(next + 2));
        }
    }
    cities.push(inst.last());
    Path::new(cities)
}

struct BitSet(Vec<u64>);

impl BitSet {
    fn new(len: usize) -> Self {
        BitSet(vec![0; len.div_ceil(64)])
    }

    #[inline]
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 != 0
    }

    #[inline]
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
}

impl StateTable {
    /// Marks the states `(S, i)` that some optimal path passes through.
    fn mark_optimal_states(&self, inst: &Instance) -> BitSet {
        let m = self.interior;
        let full = low_bits(m) as usize;
        let root = self.root_value(inst);
        let mut marks = BitSet::new(self.values.len());
        for k in Bits(full as u64) {
            if self.values[self.cell(full, k)] + inst.d(k + 1, self.n - 1) == root {
                marks.set(self.cell(full, k));
            }
        }
        // Predecessor states have numerically smaller masks.
        for mask in (1..=full).rev() {
            for k in Bits(mask as u64) {
                let cell = self.cell(mask, k);
                if mask == 1 << k || !marks.get(cell) {
                    continue;
                }
                let prev = mask & !(1 << k);
                for j in Bits(prev as u64) {
                    let pc = self.cell(prev, j);
                    if self.values[pc] + inst.d(j + 1, k + 1) == self.values[cell] {
                        marks.set(pc);
                    }
                }
            }
        }
        marks
    }
}

/// Solves under the default size cap.
pub fn solve(inst: &Instance) -> Result<Solution> {
    solve_capped(inst, Some(DEFAULT_MAX_N))
}

pub fn solve_capped(inst: &Instance, max_n: Option<usize>) -> Result<Solution> {
    let table = fill_table_capped(inst, max_n)?;
    Ok(Solution {
        length: table.root_value(inst),
        path: reconstruct_path(&table, inst),
        states_computed: table.filled_count() + 1,
    })
}

/// The number of states the solver computes for `n` cities:
/// `m · 2^(m-1) + 1` with `m = n - 2` interior cities, counting the root.
pub fn expected_state_count(n: usize) -> Result<u64> {
    if n < 2 {
        return Err(Error::Domain(format!("need at least 2 cities, got {n}")));
    }
    let m = (n - 2) as u64;
    if m == 0 {
        return Ok(1);
    }
    let overflow = || Error::Overflow(format!("state count for n = {n} exceeds 64 bits"));
    let pow = 1u64
        .checked_shl((m - 1) as u32)
        .filter(|_| m <= 64)
        .ok_or_else(overflow)?;
    m.checked_mul(pow)
        .and_then(|s| s.checked_add(1))
        .ok_or_else(overflow)
}
