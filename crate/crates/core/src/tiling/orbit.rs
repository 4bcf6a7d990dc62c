// SPDX-License-Identifier: Apache-2.0

//! The orbit metric: the least `ε` for which small translates `T + u` and
//! `T' + v` (`|u|, |v| < ε`) agree on the open ball `B_{1/ε}(0)`, capped at
//! `1/√2`.
//!
//! With `w = u - v` and `c = -v`, the condition reads: `T + w` and `T'`
//! agree on every tile meeting `(c - 1/ε, c + 1/ε)`. The tile of `T'`
//! containing the origin always meets that interval, so `w` ranges over the
//! finitely many shifts carrying a `T` tile onto it. For each `w` the common
//! tiles around the anchor form a run `[A, B]`, and `ε` is feasible iff some
//! `c ∈ [A + 1/ε, B - 1/ε]` has `|c| < ε` and `|w - c| < ε`.

use num_traits::{One, Zero};

use super::{match_run, Run, Tiling1D};
use crate::error::Result;
use crate::number::{q_from_f64, Q};

pub const DEFAULT_ORBIT_TOLERANCE: f64 = 1e-9;

pub fn orbit_cap() -> f64 {
    std::f64::consts::FRAC_1_SQRT_2
}

#[derive(Debug, Clone, Copy)]
struct Side {
    matched: u64,
    done: bool,
    infinite: bool,
}

impl Side {
    fn new() -> Self {
        Side {
            matched: 0,
            done: false,
            infinite: false,
        }
    }
}

struct Candidate {
    w: Q,
    k: i64,
    left: Side,
    right: Side,
}

struct Search<'a> {
    t: &'a Tiling1D,
    tp: &'a Tiling1D,
    j0: i64,
    cands: Vec<Candidate>,
}

impl<'a> Search<'a> {
    fn new(t: &'a Tiling1D, tp: &'a Tiling1D) -> Result<Self> {
        let j0 = tp.index_at(&Q::zero())?;
        let anchor = tp.pos(j0)?;
        let two = Q::from_integer(2.into());
        let lo = t.index_at(&(&anchor - &two))?;
        let hi = t.index_at(&(&anchor + &two))?;
        let mut cands = Vec::new();
        for k in lo..=hi {
            let w = &anchor - t.pos(k)?;
            if &w * &w < two {
                cands.push(Candidate {
                    w,
                    k,
                    left: Side::new(),
                    right: Side::new(),
                });
            }
        }
        Ok(Search { t, tp, j0, cands })
    }

    /// Grows one side of a run until it passes `target` or stops.
    fn extend(&mut self, idx: usize, forward: bool, target: &Q) -> Result<()> {
        loop {
            let c = &self.cands[idx];
            let side = if forward { c.right } else { c.left };
            if side.done {
                return Ok(());
            }
            let m = side.matched as i64;
            let reached = if forward {
                self.tp.pos(self.j0 + m)? >= *target
            } else {
                self.tp.pos(self.j0 - m)? <= *target
            };
            if reached {
                return Ok(());
            }
            let want = side.matched.max(1024);
            let (ka, kb) = if forward {
                (c.k + m, self.j0 + m)
            } else {
                (c.k - m, self.j0 - m)
            };
            let run = match_run(self.t, ka, self.tp, kb, forward, want)?;
            let c = &mut self.cands[idx];
            let side = if forward { &mut c.right } else { &mut c.left };
            match run {
                Run::Infinite => {
                    side.done = true;
                    side.infinite = true;
                }
                Run::Finite(n) => {
                    side.matched += n;
                    if n < want {
                        side.done = true;
                    }
                }
            }
        }
    }

    fn zero_distance(&mut self) -> Result<bool> {
        for i in 0..self.cands.len() {
            if self.cands[i].w.is_zero() {
                // a finite target is enough to learn whether the run is infinite
                self.extend(i, true, &Q::from_integer(1.into()))?;
                self.extend(i, false, &Q::from_integer((-1).into()))?;
                let c = &self.cands[i];
                if c.left.infinite && c.right.infinite {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    fn feasible(&mut self, eps: &Q) -> Result<bool> {
        let radius = Q::one() / eps;
        let reach = &radius + eps + Q::one();
        for i in 0..self.cands.len() {
            let w = self.cands[i].w.clone();
            let lo_c = (-eps).max(&w - eps);
            let hi_c = eps.clone().min(&w + eps);
            if lo_c >= hi_c {
                continue;
            }
            self.extend(i, true, &reach)?;
            self.extend(i, false, &-&reach)?;
            let c = &self.cands[i];
            let a = if c.left.infinite {
                None
            } else {
                Some(self.tp.pos(self.j0 - c.left.matched as i64)?)
            };
            let b = if c.right.infinite {
                None
            } else {
                Some(self.tp.pos(self.j0 + c.right.matched as i64)?)
            };
            // c must satisfy c ≥ A + R, c ≤ B - R, lo_c < c < hi_c
            let cl = a.map(|a| a + &radius);
            let ch = b.map(|b| b - &radius);
            let ok = match (&cl, &ch) {
                (Some(cl), Some(ch)) => cl <= ch && cl < &hi_c && &lo_c < ch,
                (Some(cl), None) => cl < &hi_c,
                (None, Some(ch)) => &lo_c < ch,
                (None, None) => true,
            };
            if ok {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Orbit distance between two tilings, found by bisection on the monotone
/// feasibility predicate. Each feasibility test is exact; the returned value
/// is the upper end of the final bracket, so it never understates.
pub fn orbit_metric(t: &Tiling1D, tp: &Tiling1D, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(crate::error::Error::InvalidArgument(
            "bisection tolerance must be positive".into(),
        ));
    }
    let mut search = Search::new(t, tp)?;
    if search.zero_distance()? {
        return Ok(0.0);
    }
    let cap = orbit_cap();
    let mut hi = cap - tol;
    if !search.feasible(&q_from_f64(hi))? {
        return Ok(cap);
    }
    let mut lo = 0.0f64;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if search.feasible(&q_from_f64(mid))? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{q, qi};
    use crate::tiling::PrototileSet;

    #[test]
    fn identical_is_zero() {
        let t = Tiling1D::example_ab();
        assert_eq!(orbit_metric(&t, &t, 1e-9).unwrap(), 0.0);
        assert_eq!(orbit_metric(&t, &t.translate(&qi(2)), 1e-9).unwrap(), 0.0);
        let f = Tiling1D::example_fibonacci();
        assert_eq!(orbit_metric(&f, &f, 1e-9).unwrap(), 0.0);
    }

    #[test]
    fn disjoint_labels_hit_cap() {
        let t = Tiling1D::example_ab();
        let o = Tiling1D::periodic(PrototileSet::unit("xy").unwrap(), "xy").unwrap();
        assert_eq!(orbit_metric(&t, &o, 1e-9).unwrap(), orbit_cap());
    }

    #[test]
    fn two_sided_split() {
        let t = Tiling1D::example_ab();
        for (n, d) in [(1, 10), (1, 5), (3, 10)] {
            let x = q(n, d);
            let got = orbit_metric(&t, &t.translate(&x), 1e-9).unwrap();
            let want = n as f64 / d as f64 / 2.0;
            assert!((got - want).abs() < 1e-8, "{got} vs {want}");
        }
    }
}
