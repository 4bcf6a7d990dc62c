// SPDX-License-Identifier: Apache-2.0

//! `dr_tiling` against a brute-force oracle built from explicit tile lists.

use num_traits::{Signed, Zero};
use proptest::prelude::*;
use scalemetric::number::{q, qi};
use scalemetric::tiling::{dr_tiling, valid_translations, Tiling1D};
use scalemetric::{ExtendedDistance, Q};

/// Tiles `(left, label)` in order, unit lengths, covering well past `[-40, 40]`.
struct Explicit {
    tiles: Vec<(Q, char)>,
}

fn substitute(word: &str, times: usize) -> String {
    let mut w = word.to_string();
    for _ in 0..times {
        w = w
            .chars()
            .map(|c| if c == 'a' { "ab" } else { "a" })
            .collect();
    }
    w
}

impl Explicit {
    fn periodic_ab(offset: &Q) -> Self {
        let tiles = (-60i64..60)
            .map(|k| (qi(k) + offset, if k.rem_euclid(2) == 0 { 'a' } else { 'b' }))
            .collect();
        Explicit { tiles }
    }

    fn fibonacci(offset: &Q) -> Self {
        let half = substitute("a", 10);
        let n = half.len() as i64;
        let mut tiles: Vec<(Q, char)> = half
            .chars()
            .enumerate()
            .map(|(i, c)| (qi(i as i64 - n) + offset, c))
            .collect();
        tiles.extend(half.chars().enumerate().map(|(i, c)| (qi(i as i64) + offset, c)));
        Explicit { tiles }
    }

    /// Tiles meeting `[-r, r]`, as `(left, right, label)`.
    fn patch(&self, shift: &Q, r: &Q) -> Vec<(Q, Q, char)> {
        self.tiles
            .iter()
            .map(|(l, c)| (l + shift, l + shift + qi(1), *c))
            .filter(|(l, rt, _)| *rt >= -r.clone() && l <= r)
            .collect()
    }

    fn distance(&self, other: &Explicit, r: &Q, rho: &Q) -> Option<Q> {
        let target = other.patch(&Q::zero(), r);
        let mut cands: Vec<Q> = Vec::new();
        for (l2, _, _) in &target {
            for (l1, _) in &self.tiles {
                let u = l2 - l1;
                if u.abs() <= *rho && !cands.contains(&u) {
                    cands.push(u);
                }
            }
        }
        cands
            .into_iter()
            .filter(|u| self.patch(u, r) == target)
            .map(|u| u.abs())
            .min()
    }
}

fn rational() -> impl Strategy<Value = Q> {
    (-60i64..60, 1i64..12).prop_map(|(n, d)| q(n, d))
}

fn scale() -> impl Strategy<Value = Q> {
    prop_oneof![Just(q(1, 2)), Just(qi(1)), Just(qi(3)), Just(qi(7))]
}

fn check(
    base: &Tiling1D,
    explicit: fn(&Q) -> Explicit,
    x: &Q,
    y: &Q,
    r: &Q,
) -> Result<(), TestCaseError> {
    let rho = qi(5);
    let got = dr_tiling(&base.translate(x), &base.translate(y), r, &rho).unwrap();
    let want = explicit(x).distance(&explicit(y), r, &rho);
    match (got.value, want) {
        (ExtendedDistance::Finite(a), Some(b)) => prop_assert_eq!(a, b),
        (ExtendedDistance::Infinite, None) => prop_assert!(got.bounded_by.is_some()),
        (a, b) => prop_assert!(false, "library {:?} vs oracle {:?}", a, b),
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn periodic_matches_oracle(x in rational(), y in rational(), r in scale()) {
        check(&Tiling1D::example_ab(), Explicit::periodic_ab, &x, &y, &r)?;
    }

    #[test]
    fn fibonacci_matches_oracle(x in rational(), y in rational(), r in scale()) {
        check(&Tiling1D::example_fibonacci(), Explicit::fibonacci, &x, &y, &r)?;
    }

    #[test]
    fn valid_set_is_sorted_and_starts_at_distance(x in rational(), r in scale()) {
        let t = Tiling1D::example_fibonacci();
        let all = valid_translations(&t, &t.translate(&x), &r, &qi(6)).unwrap();
        prop_assert!(all.windows(2).all(|w| w[0].abs() <= w[1].abs()));
        let d = dr_tiling(&t, &t.translate(&x), &r, &qi(6)).unwrap();
        match all.first() {
            Some(u) => prop_assert_eq!(d.value, ExtendedDistance::Finite(u.abs())),
            None => prop_assert!(d.value.is_infinite()),
        }
    }

    #[test]
    fn translation_composes(x in rational(), y in rational()) {
        let t = Tiling1D::example_ab();
        prop_assert_eq!(t.translate(&x).translate(&y), t.translate(&(x + y)));
    }
}

#[test]
fn exact_examples() {
    let t = Tiling1D::example_ab();
    let d = dr_tiling(&t, &t.translate(&q(1, 10)), &qi(5), &qi(3)).unwrap();
    assert_eq!(d.value, ExtendedDistance::Finite(q(1, 10)));
    // a shift by a full period is invisible to every window
    let d = dr_tiling(&t, &t.translate(&qi(2)), &qi(50), &qi(3)).unwrap();
    assert_eq!(d.value, ExtendedDistance::Finite(Q::zero()));
}
