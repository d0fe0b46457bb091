//! Exact counts, lazy enumeration of both path families, and a uniform
//! sampler for central Delannoy paths.
//!
//! Everything here is integer arithmetic over [`BigUint`]. Enumeration
//! orders are fixed: Delannoy words come out in lexicographic order under
//! `D < E < N`; Kimberling paths come out by interior-vertex count `k`,
//! then by x-set, then by y-multiset, each lexicographically.

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lattice::{DelannoyPath, KimberlingPath, LatticePoint, Step};

pub type BigCount = BigUint;

/// `n choose k`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigCount {
    if k < 0 || k as u64 > n {
        return BigCount::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let falling: BigCount = (n - k + 1..=n).map(BigCount::from).product();
    let k_factorial: BigCount = (1..=k).map(BigCount::from).product();
    falling / k_factorial
}

/// Paths in `D_n` with exactly `k` East steps.
pub fn count_delannoy_by_e(n: u32, k: u32) -> BigCount {
    binomial(n as u64, k as i64) * binomial((n + k) as u64, k as i64)
}

/// `|D_n|`, the central Delannoy number.
pub fn count_delannoy(n: u32) -> BigCount {
    (0..=n).map(|k| count_delannoy_by_e(n, k)).sum()
}

/// Paths in `K_{i,j}` with exactly `k` interior vertices. `K_{0,0}` holds
/// only the one-vertex path; `K_{0,j}` is empty for `j > 0`.
pub fn count_kimberling_by_vertices(i: u32, j: u32, k: u32) -> BigCount {
    if i == 0 {
        return if j == 0 && k == 0 {
            BigCount::one()
        } else {
            BigCount::zero()
        };
    }
    binomial((i - 1) as u64, k as i64) * binomial((j + k) as u64, k as i64)
}

/// `|K_{i,j}|`.
pub fn count_kimberling(i: u32, j: u32) -> BigCount {
    (0..=i.saturating_sub(1))
        .map(|k| count_kimberling_by_vertices(i, j, k))
        .sum()
}

/// Large Schröder number, from
/// `(m+1) r(m) = 3(2m-1) r(m-1) - (m-2) r(m-2)`.
pub fn schroder(n: u32) -> BigCount {
    let mut prev = BigCount::one(); // r(0)
    if n == 0 {
        return prev;
    }
    let mut cur = BigCount::from(2u32); // r(1)
    for m in 2..=n as u64 {
        let next = (BigCount::from(3 * (2 * m - 1)) * &cur - BigCount::from(m - 2) * &prev)
            / BigCount::from(m + 1);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

fn feasible(x: u32, y: u32, step: Step, n: u32) -> bool {
    let (dx, dy) = step.displacement();
    x + dx <= n && y + dy <= n
}

/// Lexicographic (`D < E < N`) stream of all of `D_n`.
#[derive(Debug, Clone)]
pub struct DelannoyPaths {
    n: u32,
    steps: Vec<Step>,
    x: u32,
    y: u32,
    started: bool,
    done: bool,
}

impl DelannoyPaths {
    fn new(n: u32) -> Self {
        DelannoyPaths {
            n,
            steps: Vec::with_capacity(2 * n as usize),
            x: 0,
            y: 0,
            started: false,
            done: false,
        }
    }

    fn push(&mut self, s: Step) {
        let (dx, dy) = s.displacement();
        self.x += dx;
        self.y += dy;
        self.steps.push(s);
    }

    fn pop(&mut self) -> Option<Step> {
        let s = self.steps.pop()?;
        let (dx, dy) = s.displacement();
        self.x -= dx;
        self.y -= dy;
        Some(s)
    }

    // Smallest completion: D while both coordinates are short, then E, then N.
    fn complete(&mut self) {
        while self.x < self.n || self.y < self.n {
            let s = Step::ALL
                .into_iter()
                .find(|&s| feasible(self.x, self.y, s, self.n))
                .expect("a feasible step exists below (n, n)");
            self.push(s);
        }
    }

    fn advance(&mut self) -> bool {
        while let Some(last) = self.pop() {
            let bigger = Step::ALL
                .into_iter()
                .find(|&s| s > last && feasible(self.x, self.y, s, self.n));
            if let Some(s) = bigger {
                self.push(s);
                self.complete();
                return true;
            }
        }
        false
    }
}

impl Iterator for DelannoyPaths {
    type Item = DelannoyPath;

    fn next(&mut self) -> Option<DelannoyPath> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.complete();
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        Some(DelannoyPath::new(self.steps.clone()))
    }
}

pub fn enumerate_delannoy(n: u32) -> DelannoyPaths {
    DelannoyPaths::new(n)
}

/// Lexicographic stream of the paths in `D_n` with exactly `k` East steps,
/// i.e. the distinct arrangements of `D^(n-k) E^k N^k`.
#[derive(Debug, Clone)]
pub struct DelannoyPathsWithE {
    word: Option<Vec<Step>>,
}

impl Iterator for DelannoyPathsWithE {
    type Item = DelannoyPath;

    fn next(&mut self) -> Option<DelannoyPath> {
        let word = self.word.as_mut()?;
        let out = DelannoyPath::new(word.clone());
        if !next_permutation(word) {
            self.word = None;
        }
        Some(out)
    }
}

pub fn enumerate_delannoy_with_e(n: u32, k: u32) -> DelannoyPathsWithE {
    if k > n {
        return DelannoyPathsWithE { word: None };
    }
    let mut word = vec![Step::D; (n - k) as usize];
    word.extend(std::iter::repeat_n(Step::E, k as usize));
    word.extend(std::iter::repeat_n(Step::N, k as usize));
    DelannoyPathsWithE { word: Some(word) }
}

fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let Some(pivot) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let swap = v
        .iter()
        .rposition(|x| *x > v[pivot])
        .expect("successor exists right of pivot");
    v.swap(pivot, swap);
    v[pivot + 1..].reverse();
    true
}

/// Advances a strictly increasing sequence over `1..=hi`.
fn next_combination(v: &mut [u32], hi: u32) -> bool {
    let len = v.len() as u32;
    for pos in (0..v.len()).rev() {
        let limit = hi - (len - 1 - pos as u32);
        if v[pos] < limit {
            v[pos] += 1;
            for q in pos + 1..v.len() {
                v[q] = v[q - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Advances a weakly increasing sequence over `0..=hi`.
fn next_multiset(v: &mut [u32], hi: u32) -> bool {
    for pos in (0..v.len()).rev() {
        if v[pos] < hi {
            let val = v[pos] + 1;
            v[pos..].fill(val);
            return true;
        }
    }
    false
}

/// Stream of Kimberling paths to `(i, j)` for interior-vertex counts in a
/// fixed range, ordered by `k`, then x-set, then y-multiset.
#[derive(Debug, Clone)]
pub struct KimberlingPaths {
    end: LatticePoint,
    k: u32,
    k_max: u32,
    xs: Vec<u32>,
    ys: Vec<u32>,
    fresh: bool,
    done: bool,
}

impl KimberlingPaths {
    fn new(i: u32, j: u32, k_min: u32, k_max: u32) -> Self {
        let end = LatticePoint::new(i, j);
        let mut it = KimberlingPaths {
            end,
            k: k_min,
            k_max,
            xs: Vec::new(),
            ys: Vec::new(),
            fresh: true,
            done: false,
        };
        if i == 0 {
            it.done = !(j == 0 && k_min == 0);
            it.k_max = 0;
        } else {
            it.k_max = k_max.min(i - 1);
            it.done = k_min > it.k_max;
        }
        if !it.done {
            it.reset_k();
        }
        it
    }

    fn reset_k(&mut self) {
        self.xs = (1..=self.k).collect();
        self.ys = vec![0; self.k as usize];
    }

    fn advance(&mut self) -> bool {
        if next_multiset(&mut self.ys, self.end.y) {
            return true;
        }
        self.ys.fill(0);
        if next_combination(&mut self.xs, self.end.x.saturating_sub(1)) {
            return true;
        }
        if self.k < self.k_max {
            self.k += 1;
            self.reset_k();
            return true;
        }
        false
    }

    fn current(&self) -> KimberlingPath {
        if self.end == LatticePoint::ORIGIN {
            return KimberlingPath::new(vec![LatticePoint::ORIGIN]).expect("origin path");
        }
        let interior = self
            .xs
            .iter()
            .zip(&self.ys)
            .map(|(&x, &y)| LatticePoint::new(x, y));
        KimberlingPath::from_parts_unchecked(interior, self.end)
    }
}

impl Iterator for KimberlingPaths {
    type Item = KimberlingPath;

    fn next(&mut self) -> Option<KimberlingPath> {
        if self.done {
            return None;
        }
        if self.fresh {
            self.fresh = false;
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        Some(self.current())
    }
}

/// All of `K_{i,j}`.
pub fn enumerate_kimberling(i: u32, j: u32) -> KimberlingPaths {
    KimberlingPaths::new(i, j, 0, u32::MAX)
}

/// The paths of `K_{i,j}` with exactly `k` interior vertices.
pub fn enumerate_kimberling_with_interior(i: u32, j: u32, k: u32) -> KimberlingPaths {
    KimberlingPaths::new(i, j, k, k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SampleSeed(pub u64);

/// Exactly uniform sampler over `D_n`, deterministic per seed.
#[derive(Debug, Clone)]
pub struct DelannoySampler {
    n: u32,
    /// `cumulative[k]` = number of paths with fewer than `k + 1` East steps.
    cumulative: Vec<BigCount>,
    rng: ChaCha8Rng,
}

impl DelannoySampler {
    pub fn new(n: u32, seed: SampleSeed) -> Self {
        let mut total = BigCount::zero();
        let cumulative = (0..=n)
            .map(|k| {
                total += count_delannoy_by_e(n, k);
                total.clone()
            })
            .collect();
        DelannoySampler {
            n,
            cumulative,
            rng: ChaCha8Rng::seed_from_u64(seed.0),
        }
    }

    fn draw_k(&mut self) -> u32 {
        let total = self.cumulative.last().expect("n + 1 entries");
        let r = self.rng.gen_biguint_below(total);
        self.cumulative.partition_point(|c| *c <= r) as u32
    }

    pub fn draw(&mut self) -> DelannoyPath {
        let k = self.draw_k();
        // uniform arrangement of D^(n-k) E^k N^k, one letter at a time
        let mut left = [(Step::D, self.n - k), (Step::E, k), (Step::N, k)];
        let len = (self.n + k) as usize;
        let mut steps = Vec::with_capacity(len);
        for remaining in (1..=len as u32).rev() {
            let mut r = self.rng.gen_range(0..remaining);
            let slot = left
                .iter_mut()
                .find(|(_, c)| {
                    if r < *c {
                        true
                    } else {
                        r -= *c;
                        false
                    }
                })
                .expect("counts sum to remaining");
            slot.1 -= 1;
            steps.push(slot.0);
        }
        DelannoyPath::new(steps)
    }
}

impl Iterator for DelannoySampler {
    type Item = DelannoyPath;

    fn next(&mut self) -> Option<DelannoyPath> {
        Some(self.draw())
    }
}

/// One uniform draw from `D_n`.
pub fn sample_delannoy(n: u32, seed: SampleSeed) -> DelannoyPath {
    DelannoySampler::new(n, seed).draw()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn words(it: impl Iterator<Item = DelannoyPath>) -> Vec<String> {
        it.map(|p| p.to_string()).collect()
    }

    /// Every word over {D,E,N} up to length 2n, filtered to those ending at (n,n).
    fn brute_force_delannoy(n: u32) -> Vec<String> {
        let mut out = vec![];
        let mut frontier = vec![String::new()];
        for _ in 0..=2 * n {
            let mut next = vec![];
            for w in frontier {
                let p = DelannoyPath::parse(&w).unwrap();
                let end = p.endpoint();
                if end == LatticePoint::new(n, n) {
                    out.push(w.clone());
                }
                for c in ['D', 'E', 'N'] {
                    next.push(format!("{w}{c}"));
                }
            }
            frontier = next;
        }
        out.sort();
        out
    }

    #[test]
    fn binomial_small() {
        assert_eq!(binomial(5, 2), BigCount::from(10u32));
        assert_eq!(binomial(0, 0), BigCount::from(1u32));
        assert_eq!(binomial(3, 5), BigCount::zero());
        assert_eq!(binomial(3, -1), BigCount::zero());
    }

    #[test]
    fn binomial_matches_pascal() {
        let mut row = vec![BigCount::one()];
        for n in 0..60u64 {
            for (k, v) in row.iter().enumerate() {
                assert_eq!(&binomial(n, k as i64), v);
            }
            let mut next = vec![BigCount::one(); row.len() + 1];
            for k in 1..row.len() {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
        }
    }

    #[test]
    fn delannoy_counts() {
        assert_eq!(count_delannoy_by_e(2, 1), BigCount::from(6u32));
        for n in 0..10 {
            assert_eq!(count_delannoy_by_e(n, 0), BigCount::one());
        }
        assert_eq!(count_delannoy_by_e(8, 5), BigCount::from(72072u32));
        assert_eq!(count_delannoy(0), BigCount::from(1u32));
        assert_eq!(count_delannoy(1), BigCount::from(3u32));
        assert_eq!(count_delannoy(8), BigCount::from(265729u32));
    }

    #[test]
    fn kimberling_counts() {
        assert_eq!(count_kimberling_by_vertices(2, 1, 1), BigCount::from(2u32));
        assert_eq!(count_kimberling_by_vertices(2, 1, 0), BigCount::from(1u32));
        assert_eq!(
            count_kimberling_by_vertices(9, 8, 5),
            BigCount::from(72072u32)
        );
        assert_eq!(count_kimberling(2, 1), BigCount::from(3u32));
        assert_eq!(count_kimberling(1, 0), BigCount::from(1u32));
        assert_eq!(count_kimberling(9, 8), BigCount::from(265729u32));
        assert_eq!(count_kimberling(0, 0), BigCount::from(1u32));
        assert_eq!(count_kimberling(0, 3), BigCount::zero());
    }

    #[test]
    fn refined_counts_agree_up_to_64() {
        for n in 0..=64 {
            for k in 0..=n {
                assert_eq!(
                    count_delannoy_by_e(n, k),
                    count_kimberling_by_vertices(n + 1, n, k)
                );
            }
        }
    }

    #[test]
    fn schroder_values() {
        let expected = [1u32, 2, 6, 22, 90, 394, 1806, 8558, 41586];
        for (n, &v) in expected.iter().enumerate() {
            assert_eq!(schroder(n as u32), BigCount::from(v));
        }
    }

    #[test]
    fn enumerate_delannoy_small() {
        assert_eq!(words(enumerate_delannoy(0)), [""]);
        assert_eq!(words(enumerate_delannoy(1)), ["D", "EN", "NE"]);
        let two = words(enumerate_delannoy(2));
        assert_eq!(two.len(), 13);
        assert_eq!(two.first().unwrap(), "DD");
        assert_eq!(two.last().unwrap(), "NNEE");
    }

    #[test]
    fn enumerate_delannoy_matches_brute_force() {
        for n in 0..=4 {
            assert_eq!(words(enumerate_delannoy(n)), brute_force_delannoy(n));
        }
    }

    #[test]
    fn enumerate_delannoy_lengths() {
        for n in 0..=7 {
            let all: Vec<_> = enumerate_delannoy(n).collect();
            assert_eq!(BigCount::from(all.len()), count_delannoy(n));
            assert!(all.windows(2).all(|w| w[0].to_string() < w[1].to_string()));
            let by_e: usize = (0..=n)
                .map(|k| enumerate_delannoy_with_e(n, k).count())
                .sum();
            assert_eq!(by_e, all.len());
        }
    }

    #[test]
    fn enumerate_with_e_is_sorted_and_refined() {
        for n in 0..=5 {
            for k in 0..=n {
                let ws = words(enumerate_delannoy_with_e(n, k));
                assert_eq!(BigCount::from(ws.len()), count_delannoy_by_e(n, k));
                assert!(ws.windows(2).all(|w| w[0] < w[1]));
                for w in &ws {
                    let p = DelannoyPath::parse(w).unwrap();
                    assert_eq!(p.central_index().unwrap().k, k);
                }
            }
        }
        assert_eq!(enumerate_delannoy_with_e(2, 3).count(), 0);
    }

    #[test]
    fn kimberling_two_one_golden() {
        let got: Vec<String> = enumerate_kimberling(2, 1).map(|k| k.to_compact()).collect();
        assert_eq!(
            got,
            ["(0,0);(2,1)", "(0,0);(1,0);(2,1)", "(0,0);(1,1);(2,1)"]
        );
        let single: Vec<_> = enumerate_kimberling(1, 0).collect();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].vertices().len(), 2);
        assert_eq!(enumerate_kimberling(0, 0).count(), 1);
        assert_eq!(enumerate_kimberling(0, 2).count(), 0);
    }

    #[test]
    fn enumerate_kimberling_lengths_and_uniqueness() {
        for i in 0..=6 {
            for j in 0..=5 {
                let all: Vec<_> = enumerate_kimberling(i, j).collect();
                assert_eq!(
                    BigCount::from(all.len()),
                    count_kimberling(i, j),
                    "({i},{j})"
                );
                let set: HashSet<_> = all.iter().collect();
                assert_eq!(set.len(), all.len());
                for p in &all {
                    assert_eq!(KimberlingPath::new(p.vertices().to_vec()).as_ref(), Ok(p));
                    assert_eq!(p.endpoint(), LatticePoint::new(i, j));
                }
                for k in 0..=i {
                    let n_k = enumerate_kimberling_with_interior(i, j, k).count();
                    assert_eq!(BigCount::from(n_k), count_kimberling_by_vertices(i, j, k));
                }
            }
        }
    }

    #[test]
    fn sampler_is_deterministic() {
        let a: Vec<_> = DelannoySampler::new(5, SampleSeed(7)).take(20).collect();
        let b: Vec<_> = DelannoySampler::new(5, SampleSeed(7)).take(20).collect();
        assert_eq!(a, b);
        assert_eq!(
            sample_delannoy(5, SampleSeed(99)),
            sample_delannoy(5, SampleSeed(99))
        );
        assert!(sample_delannoy(0, SampleSeed(3)).is_empty());
        for p in a {
            assert_eq!(p.central_index().unwrap().n, 5);
        }
    }
}
