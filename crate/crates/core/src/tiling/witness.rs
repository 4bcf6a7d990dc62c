// SPDX-License-Identifier: Apache-2.0

//! Sampled checks that the `d_r` neighborhoods and the orbit-metric balls
//! generate the same topology on a tiling's translates.

use num_traits::{One, Signed};

use super::{default_rho, dr_tiling, orbit_metric, Tiling1D};
use crate::error::{Error, Result};
use crate::number::{display_q, Q};
use crate::report::{Axiom, AxiomReport, Outcome, Witness};

#[derive(Debug, Clone)]
pub struct WitnessRun {
    pub r_prime: Q,
    pub eps_prime: Q,
    pub report: AxiomReport,
}

/// `min{1 / (r + ε/2 + max diam), ε/2}`.
pub fn forward_eps_bound(t: &Tiling1D, r: &Q, eps: &Q) -> Q {
    let two = Q::from_integer(2.into());
    let half = eps / &two;
    let a = Q::one() / (r + &half + t.prototiles().max_length());
    a.min(half)
}

/// Largest `2^-k` strictly below `bound`.
fn dyadic_below(bound: &Q) -> Q {
    let two = Q::from_integer(2.into());
    let mut e = Q::one();
    while &e >= bound {
        e /= &two;
    }
    e
}

/// Orbit ball of radius `ε'` around `t1` inside `N_{r,ε}(t1)`.
pub fn ball_to_nbhd_witness(
    t1: &Tiling1D,
    r: &Q,
    eps: &Q,
    sample: &[Tiling1D],
    tol: f64,
) -> Result<WitnessRun> {
    if !eps.is_positive() || !r.is_positive() {
        return Err(Error::InvalidArgument("r and ε must be positive".into()));
    }
    let eps_prime = dyadic_below(&forward_eps_bound(t1, r, eps));
    let bound = crate::number::Scalar::to_f64(&eps_prime);
    let rho = default_rho(t1, r);
    let mut outcomes = Vec::with_capacity(sample.len());
    for (i, tp) in sample.iter().enumerate() {
        let o = orbit_metric(t1, tp, tol)?;
        if o >= bound {
            outcomes.push(Outcome::Vacuous);
            continue;
        }
        let d = dr_tiling(t1, tp, r, &rho)?;
        outcomes.push(if d.value.lt(eps) {
            Outcome::Checked
        } else {
            Outcome::Failed(Witness {
                index: i,
                points: vec![t1.describe(), tp.describe()],
                scales: vec![display_q(r)],
                values: vec![format!("{o:e}"), d.render()],
                detail: format!(
                    "orbit distance {o:e} < {} but d_r = {} is not below {}",
                    display_q(&eps_prime),
                    d.render(),
                    display_q(eps)
                ),
            })
        });
    }
    Ok(WitnessRun {
        r_prime: r.clone(),
        eps_prime,
        report: AxiomReport::from_outcomes(Axiom::BallToNeighborhood, outcomes),
    })
}

/// `N_{r',ε'}(t1)` inside the orbit ball of radius `ε`, with `r' = ⌈1/ε⌉ + 1`
/// and `ε' = ε/2`.
pub fn nbhd_to_ball_witness(
    t1: &Tiling1D,
    eps: &Q,
    sample: &[Tiling1D],
    tol: f64,
) -> Result<WitnessRun> {
    let two = Q::from_integer(2.into());
    if !eps.is_positive() || eps * eps * &two >= Q::one() {
        return Err(Error::Precondition("ε must lie in (0, 1/√2)".into()));
    }
    let r_prime = (Q::one() / eps).ceil() + Q::one();
    let eps_prime = eps / &two;
    let bound = crate::number::Scalar::to_f64(eps);
    let rho = default_rho(t1, &r_prime);
    let mut outcomes = Vec::with_capacity(sample.len());
    for (i, tp) in sample.iter().enumerate() {
        let d = dr_tiling(t1, tp, &r_prime, &rho)?;
        if !d.value.lt(&eps_prime) {
            outcomes.push(Outcome::Vacuous);
            continue;
        }
        let o = orbit_metric(t1, tp, tol)?;
        outcomes.push(if o < bound {
            Outcome::Checked
        } else {
            Outcome::Failed(Witness {
                index: i,
                points: vec![t1.describe(), tp.describe()],
                scales: vec![display_q(&r_prime)],
                values: vec![d.render(), format!("{o:e}")],
                detail: format!(
                    "d_r' = {} < {} but orbit distance {o:e} is not below {}",
                    d.render(),
                    display_q(&eps_prime),
                    display_q(eps)
                ),
            })
        });
    }
    Ok(WitnessRun {
        r_prime,
        eps_prime,
        report: AxiomReport::from_outcomes(Axiom::NeighborhoodToBall, outcomes),
    })
}
