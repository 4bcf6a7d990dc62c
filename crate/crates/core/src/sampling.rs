// SPDX-License-Identifier: Apache-2.0

//! Seeded sample generators. Everything draws from a caller-provided RNG so a
//! seed fully determines the sample.

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::distance::Scale;
use crate::error::Result;
use crate::mapping_space::PlMap;
use crate::number::{q, Q};
use crate::tiling::Tiling1D;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform on the grid `{k / den : |k / den| < bound}`, `bound` given as
/// `bound_num / den`.
pub fn rational<R: Rng>(rng: &mut R, bound_num: i64, den: i64) -> Q {
    q(rng.gen_range(-bound_num + 1..bound_num), den)
}

/// `count` distinct translates `T + k/den` with `|k/den| < bound_num/den`.
pub fn translates<R: Rng>(
    rng: &mut R,
    base: &Tiling1D,
    count: usize,
    bound_num: i64,
    den: i64,
) -> Vec<Tiling1D> {
    let mut seen: Vec<Q> = Vec::with_capacity(count);
    let cap = (2 * bound_num - 1) as usize;
    while seen.len() < count.min(cap) {
        let x = rational(rng, bound_num, den);
        if !seen.contains(&x) {
            seen.push(x);
        }
    }
    seen.iter().map(|x| base.translate(x)).collect()
}

/// Translates at assorted magnitudes `≈ 3^-m`, `0 ≤ m < depth`, so that pairs
/// land at many different chain levels.
pub fn multiscale_translates<R: Rng>(
    rng: &mut R,
    base: &Tiling1D,
    count: usize,
    depth: u32,
) -> Vec<Tiling1D> {
    let den: BigInt = BigInt::from(3).pow(depth + 2) * 2;
    let mut seen: Vec<Q> = Vec::with_capacity(count);
    while seen.len() < count {
        let m = rng.gen_range(0..depth);
        let span = BigInt::from(3).pow(depth + 2 - m);
        let k: i64 = rng.gen_range(0..i64::try_from(span).expect("small"));
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let x = Q::new(BigInt::from(sign * k), den.clone()) / Q::from_integer(4.into());
        if !seen.contains(&x) {
            seen.push(x);
        }
    }
    seen.iter().map(|x| base.translate(x)).collect()
}

/// A PL map with `breaks` breakpoints in `(-span, span)` and values in
/// `(-span, span)`, on the grid of denominator `den`.
pub fn pl_map<R: Rng>(rng: &mut R, breaks: usize, span: i64, den: i64) -> Result<PlMap> {
    let mut xs: Vec<i64> = Vec::with_capacity(breaks);
    while xs.len() < breaks.max(1) {
        let k = rng.gen_range(-span * den + 1..span * den);
        if !xs.contains(&k) {
            xs.push(k);
        }
    }
    xs.sort_unstable();
    PlMap::new(
        xs.into_iter()
            .map(|x| (q(x, den), rational(rng, span * den, den)))
            .collect(),
    )
}

/// `count` triples drawn from `points` with replacement.
pub fn triples<R: Rng, P: Clone>(rng: &mut R, points: &[P], count: usize) -> Vec<(P, P, P)> {
    (0..count)
        .map(|_| {
            let mut pick = || points[rng.gen_range(0..points.len())].clone();
            (pick(), pick(), pick())
        })
        .collect()
}

pub fn pairs<R: Rng, P: Clone>(rng: &mut R, points: &[P], count: usize) -> Vec<(P, P)> {
    (0..count)
        .map(|_| {
            let mut pick = || points[rng.gen_range(0..points.len())].clone();
            (pick(), pick())
        })
        .collect()
}

/// Every `(r1, r2, r3)` over the grid.
pub fn scale_triples(grid: &[Scale<Q>]) -> Vec<(Scale<Q>, Scale<Q>, Scale<Q>)> {
    let mut out = Vec::with_capacity(grid.len().pow(3));
    for a in grid {
        for b in grid {
            for c in grid {
                out.push((a.clone(), b.clone(), c.clone()));
            }
        }
    }
    out
}

pub fn scales(values: &[i64]) -> Result<Vec<Scale<Q>>> {
    values.iter().map(|&v| Scale::new(q(v, 1))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_samples_repeat() {
        let t = Tiling1D::example_ab();
        let a = translates(&mut rng(7), &t, 10, 50, 100);
        let b = translates(&mut rng(7), &t, 10, 50, 100);
        assert_eq!(a, b);
        assert_eq!(a.len(), 10);
        let m = multiscale_translates(&mut rng(3), &t, 30, 6);
        assert_eq!(m.len(), 30);
        let f = pl_map(&mut rng(1), 5, 3, 10).unwrap();
        assert_eq!(f.breakpoints().len(), 5);
    }
}
