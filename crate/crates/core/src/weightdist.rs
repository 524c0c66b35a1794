//! Weight distributions of binary linear codes and classification into the
//! known weight-enumerator families of extremal self-dual codes of lengths
//! 64, 66 and 68.
//!
//! The full engine brings the generator to `[I_k | A]` and walks all `2^k`
//! messages in Gray-code order, so every step XORs one redundancy row into an
//! accumulator and the codeword weight is `wt(message) + wt(accumulator)`.
//! The low message bits are handled through a precomputed subset table so the
//! innermost loop is a single XOR and popcount.
//!
//! When only weights up to `w_max` are needed and the code has two disjoint
//! information sets (always true for self-dual codes), every codeword of
//! weight `≤ w_max` has at most `⌊w_max/2⌋` ones on one of the two sets, so
//! enumerating low-weight messages on both sides counts them exactly.

use std::fmt;
use std::ops::BitXor;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::BitMatrix;

/// Largest dimension accepted by the enumerators.
pub const MAX_DIMENSION: usize = 40;

const TABLE_BITS: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightProfile {
    pub n: usize,
    /// `histogram[w]` is the number of codewords of weight `w`. Covers
    /// `0..=n` when complete, `0..=w_max` otherwise.
    pub histogram: Vec<u64>,
    pub complete: bool,
}

impl WeightProfile {
    pub fn count(&self, w: usize) -> Option<u64> {
        self.histogram.get(w).copied()
    }

    /// Highest weight with an exact count.
    pub fn exact_up_to(&self) -> usize {
        self.histogram.len() - 1
    }

    pub fn total(&self) -> u64 {
        self.histogram.iter().sum()
    }

    /// Smallest nonzero weight present, if any lies in the counted range.
    pub fn min_nonzero_weight(&self) -> Option<usize> {
        self.histogram
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &c)| c > 0)
            .map(|(w, _)| w)
    }

    /// The first `len` nonzero-count entries, as `(weight, count)`.
    pub fn head(&self, len: usize) -> Vec<(usize, u64)> {
        self.histogram
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .take(len)
            .map(|(w, &c)| (w, c))
            .collect()
    }

    fn truncate(mut self, w_max: usize) -> Self {
        if w_max < self.n {
            self.histogram.truncate(w_max + 1);
            self.complete = false;
        }
        self
    }
}

/// Minimal word trait for the redundancy accumulator.
trait Word: Copy + Default + BitXor<Output = Self> + Send + Sync + 'static {
    fn ones(self) -> usize;
    fn from_bits(bits: impl Iterator<Item = bool>) -> Self;
    fn bit(self, i: usize) -> bool;
}

impl Word for u64 {
    #[inline(always)]
    fn ones(self) -> usize {
        self.count_ones() as usize
    }
    fn from_bits(bits: impl Iterator<Item = bool>) -> Self {
        bits.enumerate()
            .fold(0, |acc, (i, b)| acc | (u64::from(b) << i))
    }
    fn bit(self, i: usize) -> bool {
        self >> i & 1 == 1
    }
}

impl Word for u128 {
    #[inline(always)]
    fn ones(self) -> usize {
        self.count_ones() as usize
    }
    fn from_bits(bits: impl Iterator<Item = bool>) -> Self {
        bits.enumerate()
            .fold(0, |acc, (i, b)| acc | (u128::from(b) << i))
    }
    fn bit(self, i: usize) -> bool {
        self >> i & 1 == 1
    }
}

/// A generator prepared for enumeration: standard form `[I_k | A]` with the
/// rows of `A` packed into machine words.
pub struct Enumerator {
    n: usize,
    k: usize,
    redundancy: Redundancy,
}

enum Redundancy {
    Narrow(Vec<u64>),
    Wide(Vec<u128>),
}

impl Enumerator {
    pub fn new(g: &BitMatrix) -> Result<Self> {
        let n = g.cols();
        let k = g.rows();
        if k > MAX_DIMENSION || n - k > 128 {
            return Err(Error::DimensionTooLarge { k, n });
        }
        let (std, _) = g.standard_form()?;
        let rows = std.row_vectors();
        let redundancy = if n - k <= 64 {
            Redundancy::Narrow(
                rows.iter()
                    .map(|r| u64::from_bits((k..n).map(|c| r.get(c))))
                    .collect(),
            )
        } else {
            Redundancy::Wide(
                rows.iter()
                    .map(|r| u128::from_bits((k..n).map(|c| r.get(c))))
                    .collect(),
            )
        };
        Ok(Self { n, k, redundancy })
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    /// Full weight distribution over all `2^k` codewords.
    pub fn full(&self, workers: usize) -> WeightProfile {
        let workers = workers.max(1);
        // enough chunks to balance, at most 2^6
        let mut p = 0;
        while workers > 1 && (1usize << p) < 4 * workers && p < 6 {
            p += 1;
        }
        self.full_partitioned(p, workers)
    }

    /// Full distribution computed as `2^p` independent chunks (the top `p`
    /// message bits fixed per chunk) spread over `workers` threads.
    pub fn full_partitioned(&self, p: usize, workers: usize) -> WeightProfile {
        let histogram = match &self.redundancy {
            Redundancy::Narrow(rows) => partitioned(rows, self.n, p, workers),
            Redundancy::Wide(rows) => partitioned(rows, self.n, p, workers),
        };
        WeightProfile {
            n: self.n,
            histogram,
            complete: true,
        }
    }

    /// Exact counts for weights `0..=w_max`.
    pub fn truncated(&self, w_max: usize, workers: usize) -> WeightProfile {
        if w_max >= self.n {
            return self.full(workers);
        }
        let split = match &self.redundancy {
            Redundancy::Narrow(rows) => low_weight_split(rows, self.n, w_max),
            Redundancy::Wide(rows) => low_weight_split(rows, self.n, w_max),
        };
        match split {
            Some(histogram) => WeightProfile {
                n: self.n,
                histogram,
                complete: false,
            },
            None => self.full(workers).truncate(w_max),
        }
    }
}

fn partitioned<W: Word>(rows: &[W], n: usize, p: usize, workers: usize) -> Vec<u64> {
    let k = rows.len();
    let p = p.min(k);
    let (low, top) = rows.split_at(k - p);
    let chunks = 1usize << p;
    let run_chunk = |c: usize| -> Vec<u64> {
        let mut base = W::default();
        for (i, &r) in top.iter().enumerate() {
            if c >> i & 1 == 1 {
                base = base ^ r;
            }
        }
        let mut hist = vec![0u64; n + 1];
        gray_walk(low, base, c.count_ones() as usize, &mut hist);
        hist
    };
    let mut total = vec![0u64; n + 1];
    let workers = workers.clamp(1, chunks);
    if workers == 1 {
        for c in 0..chunks {
            add_into(&mut total, &run_chunk(c));
        }
    } else {
        let parts: Vec<Vec<u64>> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let run_chunk = &run_chunk;
                    s.spawn(move || {
                        let mut local = vec![0u64; n + 1];
                        for c in (w..chunks).step_by(workers) {
                            add_into(&mut local, &run_chunk(c));
                        }
                        local
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("enumeration worker panicked"))
                .collect()
        });
        for part in &parts {
            add_into(&mut total, part);
        }
    }
    total
}

fn add_into(total: &mut [u64], part: &[u64]) {
    for (t, p) in total.iter_mut().zip(part) {
        *t += p;
    }
}

/// Counts every combination of `rows` added to `base`, with `base_weight`
/// ones already on the information positions.
fn gray_walk<W: Word>(rows: &[W], base: W, base_weight: usize, hist: &mut [u64]) {
    let l = rows.len().min(TABLE_BITS);
    let (table_rows, gray_rows) = rows.split_at(l);

    let size = 1usize << l;
    let mut table = vec![W::default(); size];
    let mut table_weight = vec![0usize; size];
    for j in 1..size {
        let bit = j.trailing_zeros() as usize;
        table[j] = table[j & (j - 1)] ^ table_rows[bit];
        table_weight[j] = j.count_ones() as usize;
    }
    // weight-grouped so the inner loop adds a constant offset
    let mut groups: Vec<Vec<W>> = vec![Vec::new(); l + 1];
    for j in 0..size {
        groups[table_weight[j]].push(table[j]);
    }

    let mut acc = base;
    let steps = 1u64 << gray_rows.len();
    let mut step = 0u64;
    loop {
        let gray = step ^ (step >> 1);
        let info = base_weight + gray.count_ones() as usize;
        for (tw, group) in groups.iter().enumerate() {
            let off = &mut hist[info + tw..];
            for &t in group {
                off[(acc ^ t).ones()] += 1;
            }
        }
        step += 1;
        if step == steps {
            break;
        }
        acc = acc ^ gray_rows[step.trailing_zeros() as usize];
    }
}

/// Inverse of a square matrix given as packed rows, or `None` if singular.
fn invert<W: Word>(rows: &[W]) -> Option<Vec<W>> {
    let k = rows.len();
    let mut m: Vec<W> = rows.to_vec();
    let mut inv: Vec<W> = (0..k)
        .map(|i| W::from_bits((0..k).map(|j| i == j)))
        .collect();
    for col in 0..k {
        let p = (col..k).find(|&r| m[r].bit(col))?;
        m.swap(col, p);
        inv.swap(col, p);
        for r in 0..k {
            if r != col && m[r].bit(col) {
                m[r] = m[r] ^ m[col];
                inv[r] = inv[r] ^ inv[col];
            }
        }
    }
    Some(inv)
}

fn for_each_low_weight<W: Word>(
    rows: &[W],
    start: usize,
    budget: usize,
    acc: W,
    weight: usize,
    visit: &mut impl FnMut(W, usize),
) {
    visit(acc, weight);
    if budget == 0 {
        return;
    }
    for i in start..rows.len() {
        for_each_low_weight(rows, i + 1, budget - 1, acc ^ rows[i], weight + 1, visit);
    }
}

/// Low-weight counting over two complementary information sets. Needs
/// `n = 2k` and an invertible redundancy block.
fn low_weight_split<W: Word>(rows: &[W], n: usize, w_max: usize) -> Option<Vec<u64>> {
    let k = rows.len();
    if n != 2 * k {
        return None;
    }
    let inv = invert(rows)?;
    let half = w_max / 2;
    let mut hist = vec![0u64; w_max + 1];
    // left information set: message weight ≤ half on the identity block
    for_each_low_weight(rows, 0, half, W::default(), 0, &mut |acc, left| {
        let w = left + acc.ones();
        if w <= w_max {
            hist[w] += 1;
        }
    });
    // right information set: codewords (m·A⁻¹, m) not already counted above
    for_each_low_weight(&inv, 0, half, W::default(), 0, &mut |acc, right| {
        let left = acc.ones();
        if left > half && left + right <= w_max {
            hist[left + right] += 1;
        }
    });
    Some(hist)
}

pub fn weight_distribution(g: &BitMatrix, w_max: Option<usize>) -> Result<WeightProfile> {
    weight_distribution_with(g, w_max, 1)
}

pub fn weight_distribution_with(
    g: &BitMatrix,
    w_max: Option<usize>,
    workers: usize,
) -> Result<WeightProfile> {
    let e = Enumerator::new(g)?;
    Ok(match w_max {
        Some(w) => e.truncated(w, workers),
        None => e.full(workers),
    })
}

pub fn minimum_distance(g: &BitMatrix) -> Result<usize> {
    let profile = weight_distribution(g, None)?;
    Ok(profile
        .min_nonzero_weight()
        .expect("a nonzero code has a nonzero codeword"))
}

/// Minimum distance if it is at most `w_max`, otherwise `None`.
pub fn minimum_distance_bounded(g: &BitMatrix, w_max: usize) -> Result<Option<usize>> {
    Ok(weight_distribution(g, Some(w_max))?.min_nonzero_weight())
}

/// Upper bound on the minimum distance of a binary self-dual code.
pub fn distance_bound(n: usize) -> usize {
    if n % 24 == 22 {
        4 * (n / 24) + 6
    } else {
        4 * (n / 24) + 4
    }
}

pub fn is_extremal(n: usize, d: usize) -> bool {
    d == distance_bound(n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    W64_1,
    W64_2,
    W66_1,
    W66_2,
    W66_3,
    W68_1,
    W68_2,
    Unknown,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::W64_1 => "W64_1",
            Family::W64_2 => "W64_2",
            Family::W66_1 => "W66_1",
            Family::W66_2 => "W66_2",
            Family::W66_3 => "W66_3",
            Family::W68_1 => "W68_1",
            Family::W68_2 => "W68_2",
            Family::Unknown => "unknown",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_uppercase();
        Ok(match norm.as_str() {
            "W641" => Family::W64_1,
            "W642" => Family::W64_2,
            "W661" => Family::W66_1,
            "W662" => Family::W66_2,
            "W663" => Family::W66_3,
            "W681" => Family::W68_1,
            "W682" => Family::W68_2,
            "UNKNOWN" => Family::Unknown,
            _ => return Err(Error::ConfigInvalid(format!("unknown family {s:?}"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EnumeratorClass {
    pub family: Family,
    pub beta: Option<i64>,
    pub gamma: Option<i64>,
    /// W68_1 matches; W68_2 with γ = 16 has the same `A12`/`A14`.
    pub ambiguous: bool,
}

impl EnumeratorClass {
    fn unknown() -> Self {
        Self {
            family: Family::Unknown,
            beta: None,
            gamma: None,
            ambiguous: false,
        }
    }

    fn with_beta(family: Family, beta: i64) -> Self {
        Self {
            family,
            beta: Some(beta),
            gamma: None,
            ambiguous: false,
        }
    }
}

impl fmt::Display for EnumeratorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        if let Some(b) = self.beta {
            write!(f, " beta={b}")?;
        }
        if let Some(g) = self.gamma {
            write!(f, " gamma={g}")?;
        }
        if self.ambiguous {
            write!(f, " (ambiguous with W68_2 gamma=16)")?;
        }
        Ok(())
    }
}

/// Solves `a12 = base + step·β` for an integral β.
fn solve_beta(a12: i64, base: i64, step: i64) -> Option<i64> {
    let diff = a12 - base;
    (diff % step == 0).then_some(diff / step)
}

/// Matches the counts at weights 12 and 14 against the enumerator families
/// for lengths 64, 66 and 68.
pub fn classify(profile: &WeightProfile) -> Result<EnumeratorClass> {
    let n = profile.n;
    if !matches!(n, 64 | 66 | 68) {
        return Err(Error::UnsupportedLength(n));
    }
    if profile.exact_up_to() < 14 {
        return Err(Error::MissingWeights(14));
    }
    // the families describe extremal codes only: nothing nonzero below 12
    if profile.histogram[1..12].iter().any(|&c| c != 0) {
        return Ok(EnumeratorClass::unknown());
    }
    let a12 = profile.histogram[12] as i64;
    let a14 = profile.histogram[14] as i64;
    Ok(classify_counts(n, a12, a14))
}

pub fn classify_counts(n: usize, a12: i64, a14: i64) -> EnumeratorClass {
    match n {
        64 => {
            let Some(beta) = solve_beta(a12, 1312, 16) else {
                return EnumeratorClass::unknown();
            };
            if a14 == 22016 - 64 * beta && (14..=284).contains(&beta) {
                EnumeratorClass::with_beta(Family::W64_1, beta)
            } else if a14 == 23040 - 64 * beta && (0..=277).contains(&beta) {
                EnumeratorClass::with_beta(Family::W64_2, beta)
            } else {
                EnumeratorClass::unknown()
            }
        }
        66 => {
            if a12 == 1690 && a14 == 7990 {
                return EnumeratorClass {
                    family: Family::W66_2,
                    beta: None,
                    gamma: None,
                    ambiguous: false,
                };
            }
            let Some(beta) = solve_beta(a12, 858, 8) else {
                return EnumeratorClass::unknown();
            };
            if a14 == 18678 - 24 * beta && (0..=778).contains(&beta) {
                EnumeratorClass::with_beta(Family::W66_1, beta)
            } else if a14 == 18166 - 24 * beta && (14..=756).contains(&beta) {
                EnumeratorClass::with_beta(Family::W66_3, beta)
            } else {
                EnumeratorClass::unknown()
            }
        }
        68 => {
            let Some(beta) = solve_beta(a12, 442, 4) else {
                return EnumeratorClass::unknown();
            };
            if beta < 0 {
                return EnumeratorClass::unknown();
            }
            if a14 == 10864 - 8 * beta {
                return EnumeratorClass {
                    family: Family::W68_1,
                    beta: Some(beta),
                    gamma: None,
                    ambiguous: true,
                };
            }
            let rest = 14960 - 8 * beta - a14;
            if rest >= 0 && rest % 256 == 0 {
                EnumeratorClass {
                    family: Family::W68_2,
                    beta: Some(beta),
                    gamma: Some(rest / 256),
                    ambiguous: false,
                }
            } else {
                EnumeratorClass::unknown()
            }
        }
        _ => EnumeratorClass::unknown(),
    }
}
