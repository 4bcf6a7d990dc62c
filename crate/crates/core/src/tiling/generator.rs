// SPDX-License-Identifier: Apache-2.0

//! Bi-infinite label sequences backing a 1-D tiling.
//!
//! Tile `k` occupies `[prefix(k), prefix(k + 1)]` in integer length units,
//! with `prefix(0) = 0`. Substitution sequences are expanded lazily and
//! memoized; a window that would need more than `max_tiles` tiles per side
//! is an error rather than a silently truncated answer.

use std::sync::RwLock;

use crate::error::{Error, Result};

/// Tiles per prefix-sum checkpoint in substitution expansions.
const CHECKPOINT: usize = 64;

/// Default cap on memoized tiles per half-line.
pub const DEFAULT_MAX_TILES: usize = 1 << 27;

#[derive(Debug)]
pub enum Generator {
    Periodic(Periodic),
    Substitution(Substitution),
}

#[derive(Debug, Clone)]
pub struct Periodic {
    word: Vec<u8>,
    /// Smallest `p` with `word[i] == word[i mod p]`; `p` divides `word.len()`.
    primitive: usize,
    prefix: Vec<i128>,
    total: i128,
}

#[derive(Debug)]
pub struct Substitution {
    rules: Vec<Vec<u8>>,
    seed: (u8, u8),
    power: usize,
    units: Vec<i64>,
    max_tiles: usize,
    memo: RwLock<Expansion>,
}

#[derive(Debug, Default)]
struct Expansion {
    right: Vec<u8>,
    /// Tiles `-1, -2, …` in that order.
    left_rev: Vec<u8>,
    right_ck: Vec<i128>,
    left_ck: Vec<i128>,
    right_units: i128,
    left_units: i128,
}

fn checkpoints(word: &[u8], units: &[i64]) -> (Vec<i128>, i128) {
    let mut ck = Vec::with_capacity(word.len() / CHECKPOINT + 1);
    let mut acc: i128 = 0;
    for (i, &l) in word.iter().enumerate() {
        if i % CHECKPOINT == 0 {
            ck.push(acc);
        }
        acc += units[l as usize] as i128;
    }
    if word.len() % CHECKPOINT == 0 {
        ck.push(acc);
    }
    (ck, acc)
}

/// Number of leading tiles of `word` whose cumulative length is `≤ target`,
/// i.e. the largest `m` with `sum(word[..m]) ≤ target`.
fn count_within(word: &[u8], ck: &[i128], units: &[i64], target: i128) -> usize {
    let j = ck.partition_point(|&c| c <= target).saturating_sub(1);
    let mut m = j * CHECKPOINT;
    let mut acc = ck[j];
    while m < word.len() {
        let next = acc + units[word[m] as usize] as i128;
        if next > target {
            break;
        }
        acc = next;
        m += 1;
    }
    m
}

fn sum_prefix(word: &[u8], ck: &[i128], units: &[i64], m: usize) -> i128 {
    let j = m / CHECKPOINT;
    let mut acc = ck[j];
    for &l in &word[j * CHECKPOINT..m] {
        acc += units[l as usize] as i128;
    }
    acc
}

impl Periodic {
    pub fn new(word: Vec<u8>, units: &[i64]) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::Parse("periodic word is empty".into()));
        }
        let n = word.len();
        let primitive = (1..=n)
            .find(|&p| n % p == 0 && (0..n).all(|i| word[i] == word[i % p]))
            .unwrap_or(n);
        let mut prefix = Vec::with_capacity(n + 1);
        let mut acc = 0i128;
        prefix.push(0);
        for &l in &word {
            acc += units[l as usize] as i128;
            prefix.push(acc);
        }
        Ok(Periodic {
            word,
            primitive,
            prefix,
            total: acc,
        })
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn total_units(&self) -> i128 {
        self.total
    }
}

/// `σ(word)` applied once.
fn apply(rules: &[Vec<u8>], word: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(word.len() * 2);
    for &l in word {
        out.extend_from_slice(&rules[l as usize]);
    }
    out
}

fn apply_pow(rules: &[Vec<u8>], word: &[u8], power: usize) -> Vec<u8> {
    let mut w = word.to_vec();
    for _ in 0..power {
        w = apply(rules, &w);
    }
    w
}

impl Substitution {
    /// Validates the seed pair and finds a power `p` such that `σ^p` fixes the
    /// seed's outer letters, so the expansion converges to a bi-infinite
    /// fixed point.
    pub fn new(rules: Vec<Vec<u8>>, seed: (u8, u8), units: Vec<i64>, max_tiles: usize) -> Result<Self> {
        if rules.iter().any(|r| r.is_empty()) {
            return Err(Error::InvalidSubstitution("rule with empty image".into()));
        }
        let n = rules.len();
        if seed.0 as usize >= n || seed.1 as usize >= n {
            return Err(Error::InvalidSubstitution("seed letter without a rule".into()));
        }
        if !Self::seed_is_legal(&rules, seed) {
            return Err(Error::InvalidSubstitution(
                "seed pair does not occur adjacently in any supertile".into(),
            ));
        }
        let power = (1..=4 * n.max(2) + 8)
            .find(|&p| {
                let l = apply_pow(&rules, &[seed.0], p);
                let r = apply_pow(&rules, &[seed.1], p);
                l.last() == Some(&seed.0) && r.first() == Some(&seed.1)
            })
            .ok_or_else(|| {
                Error::InvalidSubstitution("no power of the substitution fixes the seed".into())
            })?;
        let s = Substitution {
            rules,
            seed,
            power,
            units,
            max_tiles,
            memo: RwLock::new(Expansion::default()),
        };
        {
            let mut m = s.memo.write().expect("memo lock");
            m.right = vec![seed.1];
            m.left_rev = vec![seed.0];
            s.refresh(&mut m);
        }
        Ok(s)
    }

    /// The pair `LR` must appear inside `σ^m(x)` for some letter `x`.
    fn seed_is_legal(rules: &[Vec<u8>], seed: (u8, u8)) -> bool {
        for start in 0..rules.len() as u8 {
            let mut w = vec![start];
            for _ in 0..12 {
                w = apply(rules, &w);
                if w.windows(2).any(|p| p[0] == seed.0 && p[1] == seed.1) {
                    return true;
                }
                if w.len() > 1 << 16 {
                    break;
                }
            }
        }
        false
    }

    pub fn rules(&self) -> &[Vec<u8>] {
        &self.rules
    }

    pub fn seed(&self) -> (u8, u8) {
        self.seed
    }

    pub fn power(&self) -> usize {
        self.power
    }

    fn refresh(&self, m: &mut Expansion) {
        let (rc, ru) = checkpoints(&m.right, &self.units);
        let (lc, lu) = checkpoints(&m.left_rev, &self.units);
        m.right_ck = rc;
        m.right_units = ru;
        m.left_ck = lc;
        m.left_units = lu;
    }

    /// Grows the memo until it holds `tiles` tiles and `units` length units
    /// on the requested side.
    fn ensure(&self, right_side: bool, tiles: usize, units: i128) -> Result<()> {
        {
            let m = self.memo.read().expect("memo lock");
            let (len, u) = if right_side {
                (m.right.len(), m.right_units)
            } else {
                (m.left_rev.len(), m.left_units)
            };
            if len >= tiles && u >= units {
                return Ok(());
            }
        }
        let mut m = self.memo.write().expect("memo lock");
        loop {
            let (len, u) = if right_side {
                (m.right.len(), m.right_units)
            } else {
                (m.left_rev.len(), m.left_units)
            };
            if len >= tiles && u >= units {
                return Ok(());
            }
            if len >= self.max_tiles {
                return Err(Error::GeneratorExhausted(format!(
                    "substitution window would exceed {} tiles per side",
                    self.max_tiles
                )));
            }
            let grown = if right_side {
                apply_pow(&self.rules, &m.right, self.power)
            } else {
                let forward: Vec<u8> = m.left_rev.iter().rev().copied().collect();
                let mut g = apply_pow(&self.rules, &forward, self.power);
                g.reverse();
                g
            };
            if grown.len() <= len {
                return Err(Error::GeneratorExhausted(
                    "substitution does not grow the seed".into(),
                ));
            }
            if right_side {
                m.right = grown;
            } else {
                m.left_rev = grown;
            }
            self.refresh(&mut m);
        }
    }
}

impl Generator {
    /// Label id of tile `k`.
    pub fn label(&self, k: i64) -> Result<u8> {
        let mut b = [0u8];
        self.fill(k, &mut b)?;
        Ok(b[0])
    }

    /// Writes the labels of tiles `start, start + 1, …` into `buf`.
    pub fn fill(&self, start: i64, buf: &mut [u8]) -> Result<()> {
        match self {
            Generator::Periodic(p) => {
                let n = p.word.len() as i64;
                let mut idx = start.rem_euclid(n) as usize;
                for slot in buf.iter_mut() {
                    *slot = p.word[idx];
                    idx += 1;
                    if idx == p.word.len() {
                        idx = 0;
                    }
                }
                Ok(())
            }
            Generator::Substitution(s) => {
                let end = start + buf.len() as i64;
                if end > 0 {
                    s.ensure(true, end as usize, 0)?;
                }
                if start < 0 {
                    s.ensure(false, (-start) as usize, 0)?;
                }
                let m = s.memo.read().expect("memo lock");
                for (i, slot) in buf.iter_mut().enumerate() {
                    let k = start + i as i64;
                    *slot = if k >= 0 {
                        m.right[k as usize]
                    } else {
                        m.left_rev[(-k - 1) as usize]
                    };
                }
                Ok(())
            }
        }
    }

    /// Left endpoint of tile `k` in length units.
    pub fn prefix(&self, k: i64) -> Result<i128> {
        match self {
            Generator::Periodic(p) => {
                let n = p.word.len() as i64;
                let q = k.div_euclid(n) as i128;
                let rem = k.rem_euclid(n) as usize;
                Ok(q * p.total + p.prefix[rem])
            }
            Generator::Substitution(s) => {
                if k >= 0 {
                    s.ensure(true, k as usize, 0)?;
                    let m = s.memo.read().expect("memo lock");
                    Ok(sum_prefix(&m.right, &m.right_ck, &s.units, k as usize))
                } else {
                    let t = (-k) as usize;
                    s.ensure(false, t, 0)?;
                    let m = s.memo.read().expect("memo lock");
                    Ok(-sum_prefix(&m.left_rev, &m.left_ck, &s.units, t))
                }
            }
        }
    }

    /// The tile `k` with `prefix(k) ≤ y < prefix(k + 1)`.
    pub fn index_at(&self, y: i128) -> Result<i64> {
        match self {
            Generator::Periodic(p) => {
                let q = y.div_euclid(p.total);
                let rem = y - q * p.total;
                let i = p.prefix.partition_point(|&c| c <= rem) - 1;
                Ok(q as i64 * p.word.len() as i64 + i as i64)
            }
            Generator::Substitution(s) => {
                if y >= 0 {
                    s.ensure(true, 0, y + 1)?;
                    let m = s.memo.read().expect("memo lock");
                    Ok(count_within(&m.right, &m.right_ck, &s.units, y) as i64)
                } else {
                    let z = -y;
                    s.ensure(false, 0, z)?;
                    let m = s.memo.read().expect("memo lock");
                    // smallest t with sum(left_rev[..t]) >= z
                    let below = count_within(&m.left_rev, &m.left_ck, &s.units, z - 1);
                    Ok(-(below as i64 + 1))
                }
            }
        }
    }

    /// Whether shifting the index by `shift` provably maps the sequence onto
    /// itself, without scanning.
    pub fn shift_is_identity(&self, shift: i64) -> bool {
        match self {
            Generator::Periodic(p) => shift.rem_euclid(p.primitive as i64) == 0,
            Generator::Substitution(_) => shift == 0,
        }
    }

    /// Structural equality of the generator definitions.
    pub fn same_definition(&self, other: &Generator) -> bool {
        match (self, other) {
            (Generator::Periodic(a), Generator::Periodic(b)) => a.word == b.word,
            (Generator::Substitution(a), Generator::Substitution(b)) => {
                a.rules == b.rules && a.seed == b.seed
            }
            _ => false,
        }
    }

    /// Periodic: one period. Substitution: the longest `σ^p` supertile.
    pub fn natural_window_units(&self, units: &[i64]) -> i128 {
        match self {
            Generator::Periodic(p) => p.total,
            Generator::Substitution(s) => (0..s.rules.len() as u8)
                .map(|l| {
                    apply_pow(&s.rules, &[l], s.power)
                        .iter()
                        .map(|&x| units[x as usize] as i128)
                        .sum::<i128>()
                })
                .max()
                .unwrap_or(1),
        }
    }
}
