// SPDX-License-Identifier: Apache-2.0

//! One-dimensional tilings with exact rational geometry.
//!
//! A tiling is a bi-infinite label sequence (see [`generator`]) laid out from
//! an offset: tile `k` starts at `offset + prefix(k) / D`, where `D` is the
//! common denominator of the prototile lengths. Tile 0 starts at the offset.
//!
//! Patch comparisons never materialize tile lists. Two windows agree when
//! their first tiles line up exactly, they have the same tile count, and the
//! label sequences match; label sequences are compared in chunks, with
//! shortcuts for provably identical sequences.

pub mod generator;
mod orbit;
mod parse;
mod witness;

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::distance::{ExtendedDistance, Scale};
use crate::error::{Error, Result};
use crate::family::{DeclaredProperties, MetricFamily, TriangleMode};
use crate::number::{display_q, floor_to_i128, Q};

pub use generator::{Generator, Periodic, Substitution, DEFAULT_MAX_TILES};
pub use orbit::{orbit_metric, orbit_cap, DEFAULT_ORBIT_TOLERANCE};
pub use parse::{parse_tiling, read_tiling};
pub use witness::{
    ball_to_nbhd_witness, forward_eps_bound, nbhd_to_ball_witness, WitnessRun,
};

const CHUNK: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct PrototileSet {
    labels: Vec<char>,
    lengths: Vec<Q>,
    units: Vec<i64>,
    denom: i64,
}

impl PrototileSet {
    pub fn new(tiles: Vec<(char, Q)>) -> Result<Self> {
        if tiles.is_empty() {
            return Err(Error::InvalidArgument("empty prototile set".into()));
        }
        if tiles.len() > u8::MAX as usize {
            return Err(Error::InvalidArgument("too many prototiles".into()));
        }
        let mut labels = Vec::new();
        let mut lengths = Vec::new();
        for (l, len) in tiles {
            if !len.is_positive() {
                return Err(Error::InvalidArgument(format!(
                    "prototile `{l}` has non-positive length {}",
                    display_q(&len)
                )));
            }
            if labels.contains(&l) {
                return Err(Error::InvalidArgument(format!("duplicate prototile label `{l}`")));
            }
            labels.push(l);
            lengths.push(len);
        }
        let mut denom = num_bigint::BigInt::from(1);
        for len in &lengths {
            denom = denom.lcm(len.denom());
        }
        let denom = denom
            .to_i64()
            .ok_or_else(|| Error::InvalidArgument("prototile denominators too large".into()))?;
        let units = lengths
            .iter()
            .map(|len| {
                (len * Q::from_integer(denom.into()))
                    .to_integer()
                    .to_i64()
                    .ok_or_else(|| Error::InvalidArgument("prototile length too large".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PrototileSet {
            labels,
            lengths,
            units,
            denom,
        })
    }

    /// Unit-length tiles with the given labels.
    pub fn unit(labels: &str) -> Result<Self> {
        Self::new(labels.chars().map(|c| (c, Q::from_integer(1.into()))).collect())
    }

    pub fn labels(&self) -> &[char] {
        &self.labels
    }

    pub fn lengths(&self) -> &[Q] {
        &self.lengths
    }

    pub fn units(&self) -> &[i64] {
        &self.units
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn id(&self, label: char) -> Option<u8> {
        self.labels.iter().position(|&l| l == label).map(|i| i as u8)
    }

    fn ids(&self, word: &str) -> Result<Vec<u8>> {
        word.chars()
            .map(|c| {
                self.id(c)
                    .ok_or_else(|| Error::Parse(format!("unknown tile label `{c}`")))
            })
            .collect()
    }

    pub fn max_length(&self) -> Q {
        self.lengths.iter().max().cloned().expect("nonempty")
    }

    pub fn min_length(&self) -> Q {
        self.lengths.iter().min().cloned().expect("nonempty")
    }
}

/// Largest `λ` such that every prototile overlaps its own translate by any
/// `|v| < 2λ`; for intervals this is half the shortest length.
pub fn lambda_t(protos: &PrototileSet) -> Q {
    protos.min_length() / Q::from_integer(2.into())
}

#[derive(Debug, Clone)]
pub struct Tiling1D {
    protos: Arc<PrototileSet>,
    gen: Arc<Generator>,
    offset: Q,
}

/// Representation equality: same prototiles, same generator definition, same
/// offset. Translates that happen to coincide (a periodic tiling shifted by
/// its period) are distinct representations.
impl PartialEq for Tiling1D {
    fn eq(&self, other: &Self) -> bool {
        self.offset == other.offset
            && self.protos == other.protos
            && self.gen.same_definition(&other.gen)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PatchTile {
    pub left: Q,
    pub right: Q,
    pub label: char,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Patch {
    pub tiles: Vec<PatchTile>,
}

impl Tiling1D {
    pub fn new(protos: Arc<PrototileSet>, gen: Arc<Generator>, offset: Q) -> Self {
        Tiling1D {
            protos,
            gen,
            offset,
        }
    }

    pub fn periodic(protos: PrototileSet, word: &str) -> Result<Self> {
        let ids = protos.ids(word)?;
        let gen = Generator::Periodic(Periodic::new(ids, protos.units())?);
        Ok(Self::new(Arc::new(protos), Arc::new(gen), Q::zero()))
    }

    /// Fixed point of `rules` grown from the legal pair `seed = (L, R)`,
    /// with `L` ending at the origin and `R` starting there.
    pub fn substitution(
        protos: PrototileSet,
        rules: &[(char, &str)],
        seed: (char, char),
        max_tiles: usize,
    ) -> Result<Self> {
        let mut table: Vec<Option<Vec<u8>>> = vec![None; protos.labels().len()];
        for (from, to) in rules {
            let id = protos
                .id(*from)
                .ok_or_else(|| Error::Parse(format!("rule for unknown label `{from}`")))?;
            if table[id as usize].is_some() {
                return Err(Error::InvalidSubstitution(format!("two rules for `{from}`")));
            }
            table[id as usize] = Some(protos.ids(to)?);
        }
        let table = table
            .into_iter()
            .zip(protos.labels())
            .map(|(r, l)| {
                r.ok_or_else(|| Error::InvalidSubstitution(format!("no rule for `{l}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let id = |c: char| {
            protos
                .id(c)
                .ok_or_else(|| Error::Parse(format!("unknown seed label `{c}`")))
        };
        let seed = (id(seed.0)?, id(seed.1)?);
        let sub = Substitution::new(table, seed, protos.units().to_vec(), max_tiles)?;
        Ok(Self::new(
            Arc::new(protos),
            Arc::new(Generator::Substitution(sub)),
            Q::zero(),
        ))
    }

    /// Periodic tiling `ab` with unit tiles.
    pub fn example_ab() -> Self {
        Self::periodic(PrototileSet::unit("ab").expect("valid"), "ab").expect("valid")
    }

    /// Fibonacci tiling `a → ab, b → a` with unit tiles, seeded at `a|a`.
    pub fn example_fibonacci() -> Self {
        Self::substitution(
            PrototileSet::unit("ab").expect("valid"),
            &[('a', "ab"), ('b', "a")],
            ('a', 'a'),
            DEFAULT_MAX_TILES,
        )
        .expect("valid")
    }

    pub fn prototiles(&self) -> &PrototileSet {
        &self.protos
    }

    pub fn generator(&self) -> &Generator {
        &self.gen
    }

    pub fn offset(&self) -> &Q {
        &self.offset
    }

    /// `T + x`: every tile moved by `x`. The generator is shared.
    pub fn translate(&self, x: &Q) -> Tiling1D {
        Tiling1D {
            protos: Arc::clone(&self.protos),
            gen: Arc::clone(&self.gen),
            offset: &self.offset + x,
        }
    }

    fn denom_q(&self) -> Q {
        Q::from_integer(self.protos.denom.into())
    }

    /// Left endpoint of tile `k`.
    pub fn pos(&self, k: i64) -> Result<Q> {
        let p = self.gen.prefix(k)?;
        Ok(&self.offset + Q::from_integer(p.into()) / self.denom_q())
    }

    /// Length units from the offset to `y`: the floor, and whether it is exact.
    fn units_to(&self, y: &Q) -> (i128, bool) {
        let z = (y - &self.offset) * self.denom_q();
        (floor_to_i128(&z), z.is_integer())
    }

    /// The tile whose half-open interval `[left, right)` contains `y`.
    pub fn index_at(&self, y: &Q) -> Result<i64> {
        self.gen.index_at(self.units_to(y).0)
    }

    /// Whether `y` is a tile boundary.
    pub fn is_boundary(&self, y: &Q) -> Result<bool> {
        let (u, exact) = self.units_to(y);
        if !exact {
            return Ok(false);
        }
        let k = self.gen.index_at(u)?;
        Ok(self.gen.prefix(k)? == u)
    }

    pub fn label(&self, k: i64) -> Result<char> {
        Ok(self.protos.labels[self.gen.label(k)? as usize])
    }

    /// First and last tile indices meeting the window. Closed windows include
    /// tiles touching an endpoint; open windows exclude them.
    pub fn window(&self, lo: &Q, hi: &Q, closed: bool) -> Result<(i64, i64)> {
        let mut first = self.index_at(lo)?;
        let mut last = self.index_at(hi)?;
        if closed {
            if self.is_boundary(lo)? {
                first -= 1;
            }
        } else if self.is_boundary(hi)? {
            last -= 1;
        }
        Ok((first, last))
    }

    /// Tiles meeting the closed ball `[-r, r]`.
    pub fn patch(&self, r: &Q) -> Result<Patch> {
        self.patch_on(&-r, r, true)
    }

    pub fn patch_on(&self, lo: &Q, hi: &Q, closed: bool) -> Result<Patch> {
        let (first, last) = self.window(lo, hi, closed)?;
        let mut tiles = Vec::with_capacity((last - first + 1).max(0) as usize);
        let mut left = self.pos(first)?;
        for k in first..=last {
            let id = self.gen.label(k)? as usize;
            let right = &left + &self.protos.lengths[id];
            tiles.push(PatchTile {
                left: left.clone(),
                right: right.clone(),
                label: self.protos.labels[id],
            });
            left = right;
        }
        Ok(Patch { tiles })
    }

    /// Length of one period, or of the longest supertile for substitutions.
    pub fn natural_length(&self) -> Q {
        Q::from_integer(self.gen.natural_window_units(&self.protos.units).into()) / self.denom_q()
    }

    pub fn describe(&self) -> String {
        let name = |id: &u8| self.protos.labels[*id as usize];
        let generator = match &*self.gen {
            Generator::Periodic(p) => {
                format!("periodic {}", p.word().iter().map(name).collect::<String>())
            }
            Generator::Substitution(s) => {
                let rules: Vec<String> = s
                    .rules()
                    .iter()
                    .enumerate()
                    .map(|(i, w)| {
                        format!(
                            "{}->{}",
                            self.protos.labels[i],
                            w.iter().map(name).collect::<String>()
                        )
                    })
                    .collect();
                let (l, r) = s.seed();
                format!("substitution {} seed {}|{}", rules.join(" "), name(&l), name(&r))
            }
        };
        format!("{generator} offset {}", display_q(&self.offset))
    }
}

impl fmt::Display for Tiling1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// For each label id of `a`, the id in `b` with the same symbol and length.
fn label_map(a: &PrototileSet, b: &PrototileSet) -> Vec<Option<u8>> {
    a.labels
        .iter()
        .zip(&a.lengths)
        .map(|(l, len)| {
            b.id(*l)
                .filter(|&j| &b.lengths[j as usize] == len)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Run {
    /// Matched this many tiles, then hit a mismatch or the requested limit.
    Finite(u64),
    Infinite,
}

/// Compares `a[ka + i]` with `b[kb + i]` for `i = 0, 1, …` (forward) or
/// `a[ka - 1 - i]` with `b[kb - 1 - i]` (backward), up to `limit` tiles.
pub(crate) fn match_run(
    a: &Tiling1D,
    ka: i64,
    b: &Tiling1D,
    kb: i64,
    forward: bool,
    limit: u64,
) -> Result<Run> {
    if a.protos == b.protos && a.gen.same_definition(&b.gen) && a.gen.shift_is_identity(ka - kb)
    {
        return Ok(Run::Infinite);
    }
    let map = label_map(&a.protos, &b.protos);
    let period = match (&*a.gen, &*b.gen) {
        (Generator::Periodic(p), Generator::Periodic(q)) => {
            Some((p.word().len() as u64).lcm(&(q.word().len() as u64)))
        }
        _ => None,
    };
    let mut matched: u64 = 0;
    let mut ba = vec![0u8; CHUNK];
    let mut bb = vec![0u8; CHUNK];
    while matched < limit {
        if let Some(p) = period {
            if matched >= p {
                return Ok(Run::Infinite);
            }
        }
        let n = ((limit - matched) as usize).min(CHUNK);
        let m = matched as i64;
        let (sa, sb) = if forward {
            (ka + m, kb + m)
        } else {
            (ka - m - n as i64, kb - m - n as i64)
        };
        a.gen.fill(sa, &mut ba[..n])?;
        b.gen.fill(sb, &mut bb[..n])?;
        let pairs = ba[..n].iter().zip(&bb[..n]);
        let hit = if forward {
            pairs.clone().position(|(x, y)| map[*x as usize] != Some(*y))
        } else {
            pairs.rev().position(|(x, y)| map[*x as usize] != Some(*y))
        };
        if let Some(i) = hit {
            return Ok(Run::Finite(matched + i as u64));
        }
        matched += n as u64;
    }
    Ok(Run::Finite(matched))
}

/// Whether `a` and `b` have the same tiles meeting the window.
pub fn windows_agree(a: &Tiling1D, b: &Tiling1D, lo: &Q, hi: &Q, closed: bool) -> Result<bool> {
    let (fa, la) = a.window(lo, hi, closed)?;
    let (fb, lb) = b.window(lo, hi, closed)?;
    if la - fa != lb - fb {
        return Ok(false);
    }
    if a.pos(fa)? != b.pos(fb)? {
        return Ok(false);
    }
    let count = (la - fa + 1) as u64;
    Ok(match match_run(a, fa, b, fb, true, count)? {
        Run::Infinite => true,
        Run::Finite(n) => n == count,
    })
}

/// `(T1 + u) ∩ [-r, r] = T2 ∩ [-r, r]`.
pub fn is_valid_translation(t1: &Tiling1D, t2: &Tiling1D, r: &Q, u: &Q) -> Result<bool> {
    windows_agree(&t1.translate(u), t2, &-r, r, true)
}

/// Every candidate `u` with `|u| ≤ rho`, ordered by `|u|` (negative first on
/// ties). A valid `u` must carry some T1 tile onto the first tile of T2's
/// patch, so candidates are that tile's left end minus T1 boundaries.
fn candidates<'a>(
    t1: &'a Tiling1D,
    t2: &'a Tiling1D,
    r: &Q,
    rho: &'a Q,
) -> Result<impl Iterator<Item = Result<Q>> + 'a> {
    let (f2, _) = t2.window(&-r, r, true)?;
    let anchor = t2.pos(f2)?;
    let anchor_label = t2.label(f2)?;
    let k0 = t1.index_at(&anchor)?;
    // left: boundaries at or before the anchor (u ≥ 0); right: after (u < 0)
    let mut left = Some(k0);
    let mut right = Some(k0 + 1);
    let mut next_left: Option<Q> = None;
    let mut next_right: Option<Q> = None;
    let mut failed = false;
    Ok(std::iter::from_fn(move || loop {
        if failed {
            return None;
        }
        let step = (|| -> Result<Option<(i64, Q)>> {
            if next_left.is_none() {
                if let Some(k) = left {
                    let u = &anchor - t1.pos(k)?;
                    if &u <= rho {
                        next_left = Some(u);
                    } else {
                        left = None;
                    }
                }
            }
            if next_right.is_none() {
                if let Some(k) = right {
                    let u = &anchor - t1.pos(k)?;
                    if -&u <= *rho {
                        next_right = Some(u);
                    } else {
                        right = None;
                    }
                }
            }
            let take_right = match (&next_left, &next_right) {
                (None, None) => return Ok(None),
                (Some(_), None) => false,
                (None, Some(_)) => true,
                (Some(l), Some(rt)) => -rt <= *l,
            };
            if take_right {
                let k = right.expect("pending");
                right = Some(k + 1);
                Ok(Some((k, next_right.take().expect("pending"))))
            } else {
                let k = left.expect("pending");
                left = Some(k - 1);
                Ok(Some((k, next_left.take().expect("pending"))))
            }
        })();
        match step {
            Ok(None) => return None,
            Ok(Some((k, u))) => match t1.label(k) {
                Ok(l) if l == anchor_label => return Some(Ok(u)),
                Ok(_) => continue,
                Err(e) => {
                    failed = true;
                    return Some(Err(e));
                }
            },
            Err(e) => {
                failed = true;
                return Some(Err(e));
            }
        }
    }))
}

/// All `u` with `|u| ≤ rho` and `(T1 + u) ∩ [-r, r] = T2 ∩ [-r, r]`, sorted
/// by `|u|`.
pub fn valid_translations(t1: &Tiling1D, t2: &Tiling1D, r: &Q, rho: &Q) -> Result<Vec<Q>> {
    check_rho(rho)?;
    let mut out = Vec::new();
    for u in candidates(t1, t2, r, rho)? {
        let u = u?;
        if is_valid_translation(t1, t2, r, &u)? {
            out.push(u);
        }
    }
    Ok(out)
}

fn check_rho(rho: &Q) -> Result<()> {
    if !rho.is_positive() {
        return Err(Error::InvalidArgument("search bound must be positive".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct TilingDistance {
    pub value: ExtendedDistance<Q>,
    /// The search bound used when no valid translation was found: a finite
    /// distance larger than it may exist.
    pub bounded_by: Option<Q>,
}

impl TilingDistance {
    pub fn render(&self) -> String {
        match (&self.value, &self.bounded_by) {
            (ExtendedDistance::Infinite, Some(_)) => "inf (search bounded)".into(),
            (v, _) => v.render(),
        }
    }
}

/// `d_r(T1, T2)`: the smallest `|u| ≤ rho` over valid translations.
pub fn dr_tiling(t1: &Tiling1D, t2: &Tiling1D, r: &Q, rho: &Q) -> Result<TilingDistance> {
    check_rho(rho)?;
    for u in candidates(t1, t2, r, rho)? {
        let u = u?;
        if is_valid_translation(t1, t2, r, &u)? {
            return Ok(TilingDistance {
                value: ExtendedDistance::Finite(u.abs()),
                bounded_by: None,
            });
        }
    }
    Ok(TilingDistance {
        value: ExtendedDistance::Infinite,
        bounded_by: Some(rho.clone()),
    })
}

/// `r + 2ℓ`, with `ℓ` the period length (or longest supertile).
pub fn default_rho(t: &Tiling1D, r: &Q) -> Q {
    r + t.natural_length() * Q::from_integer(2.into())
}

/// `d_r` on tilings with one search bound for every scale, so that the
/// valid-translation sets shrink as `r` grows and monotonicity is exact.
/// The bound must exceed every distance the caller cares about; for the
/// weak triangle inequality at scales up to `s`, `rho ≥ 2s` suffices.
#[derive(Debug, Clone)]
pub struct TilingFamily {
    pub rho: Q,
}

impl TilingFamily {
    pub fn new(rho: Q) -> Result<Self> {
        check_rho(&rho)?;
        Ok(TilingFamily { rho })
    }
}

impl MetricFamily for TilingFamily {
    type Point = Tiling1D;
    type Value = Q;

    fn distance(&self, x: &Tiling1D, y: &Tiling1D, r: &Scale<Q>) -> Result<ExtendedDistance<Q>> {
        Ok(dr_tiling(x, y, r.get(), &self.rho)?.value)
    }

    fn declared(&self) -> DeclaredProperties {
        DeclaredProperties {
            symmetric: false,
            triangle: TriangleMode::Weak,
            nondegenerate: false,
        }
    }

    fn describe(&self, x: &Tiling1D) -> String {
        x.describe()
    }
}

/// On `[lo, hi]`: `(S + u) ∩ K = (S + v) ∩ K` implies `u = v`.
pub fn uniqueness_check(s: &Tiling1D, lo: &Q, hi: &Q, u: &Q, v: &Q) -> Result<bool> {
    let lambda = lambda_t(s.prototiles());
    if u.abs() >= lambda || v.abs() >= lambda {
        return Err(Error::Precondition(
            "translations must be shorter than the rigidity constant".into(),
        ));
    }
    if u == v {
        return Ok(true);
    }
    Ok(!windows_agree(&s.translate(u), &s.translate(v), lo, hi, true)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{q, qi};

    fn ab() -> Tiling1D {
        Tiling1D::example_ab()
    }

    #[test]
    fn closed_patch_includes_touching_tiles() {
        let p = ab().patch(&qi(1)).unwrap();
        let lefts: Vec<Q> = p.tiles.iter().map(|t| t.left.clone()).collect();
        assert_eq!(lefts, vec![qi(-2), qi(-1), qi(0), qi(1)]);
        let labels: String = p.tiles.iter().map(|t| t.label).collect();
        assert_eq!(labels, "abab");
    }

    #[test]
    fn small_window_inside_one_tile() {
        let t = ab().translate(&q(1, 2));
        let p = t.patch(&q(1, 4)).unwrap();
        assert_eq!(p.tiles.len(), 1);
        assert_eq!(p.tiles[0].left, q(-1, 2));
        let p = ab().patch(&q(1, 4)).unwrap();
        assert_eq!(p.tiles.len(), 2);
    }

    #[test]
    fn open_window_excludes_touching_tiles() {
        let p = ab().patch_on(&qi(-1), &qi(1), false).unwrap();
        assert_eq!(p.tiles.len(), 2);
    }

    #[test]
    fn translation_composes() {
        let t = ab();
        assert_eq!(t.translate(&qi(0)), t);
        assert_eq!(
            t.translate(&q(1, 3)).translate(&q(1, 6)),
            t.translate(&q(1, 2))
        );
    }

    #[test]
    fn patch_translation_equivariance() {
        let t = ab();
        let x = q(3, 10);
        let shifted = t.translate(&x).patch(&qi(3)).unwrap();
        let direct = t.patch_on(&(-qi(3) - &x), &(qi(3) - &x), true).unwrap();
        assert_eq!(shifted.tiles.len(), direct.tiles.len());
        for (a, b) in shifted.tiles.iter().zip(&direct.tiles) {
            assert_eq!(a.left, &b.left + &x);
            assert_eq!(a.label, b.label);
        }
    }

    #[test]
    fn period_translate_has_same_patches() {
        let t = ab();
        let s = t.translate(&qi(2));
        for r in [1, 5, 20] {
            assert!(windows_agree(&t, &s, &-qi(r), &qi(r), true).unwrap());
        }
    }

    #[test]
    fn valid_translations_periodic() {
        let t = ab();
        let s = t.translate(&q(3, 10));
        let v = valid_translations(&t, &s, &qi(5), &qi(3)).unwrap();
        assert_eq!(v, vec![q(3, 10), q(3, 10) - qi(2), q(3, 10) + qi(2)]);
        let v = valid_translations(&t, &t, &qi(5), &qi(4)).unwrap();
        assert_eq!(v, vec![qi(0), qi(-2), qi(2), qi(-4), qi(4)]);
    }

    #[test]
    fn disjoint_labels_have_no_translations() {
        let t = ab();
        let other = Tiling1D::periodic(PrototileSet::unit("xy").unwrap(), "xy").unwrap();
        assert!(valid_translations(&t, &other, &qi(2), &qi(4)).unwrap().is_empty());
        let d = dr_tiling(&t, &other, &qi(2), &qi(4)).unwrap();
        assert!(d.value.is_infinite());
        assert_eq!(d.render(), "inf (search bounded)");
    }

    #[test]
    fn distances_from_examples() {
        let t = ab();
        let d = dr_tiling(&t, &t.translate(&q(3, 10)), &qi(5), &default_rho(&t, &qi(5))).unwrap();
        assert_eq!(d.value, ExtendedDistance::Finite(q(3, 10)));
        let a = Tiling1D::periodic(PrototileSet::unit("a").unwrap(), "a").unwrap();
        let d = dr_tiling(&a, &a.translate(&q(7, 10)), &qi(5), &qi(3)).unwrap();
        assert_eq!(d.value, ExtendedDistance::Finite(q(3, 10)));
        let d = dr_tiling(&t, &t, &qi(5), &qi(3)).unwrap();
        assert_eq!(d.value, ExtendedDistance::Finite(qi(0)));
    }

    #[test]
    fn fibonacci_translation_identity() {
        let t = Tiling1D::example_fibonacci();
        for r in [1, 5, 20] {
            let d = dr_tiling(&t, &t.translate(&q(1, 5)), &qi(r), &qi(8)).unwrap();
            assert_eq!(d.value, ExtendedDistance::Finite(q(1, 5)));
        }
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_t(&PrototileSet::unit("ab").unwrap()), q(1, 2));
        let mixed = PrototileSet::new(vec![('a', qi(1)), ('b', q(3, 2))]).unwrap();
        assert_eq!(lambda_t(&mixed), q(1, 2));
        let long = PrototileSet::new(vec![('a', qi(2))]).unwrap();
        assert_eq!(lambda_t(&long), qi(1));
    }

    #[test]
    fn uniqueness_examples() {
        let t = ab();
        assert!(uniqueness_check(&t, &qi(-3), &qi(3), &q(1, 10), &q(1, 10)).unwrap());
        assert!(uniqueness_check(&t, &qi(-3), &qi(3), &q(1, 10), &q(-1, 10)).unwrap());
    }

    #[test]
    fn mixed_lengths_positions() {
        let protos = PrototileSet::new(vec![('a', q(1, 2)), ('b', q(2, 3))]).unwrap();
        let t = Tiling1D::periodic(protos, "ab").unwrap();
        assert_eq!(t.pos(1).unwrap(), q(1, 2));
        assert_eq!(t.pos(2).unwrap(), q(7, 6));
        assert_eq!(t.pos(-1).unwrap(), q(-2, 3));
        assert_eq!(t.index_at(&q(7, 6)).unwrap(), 2);
        assert_eq!(t.index_at(&q(-1, 100)).unwrap(), -1);
    }
}
