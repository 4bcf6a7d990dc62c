// SPDX-License-Identifier: Apache-2.0

//! Input files: tilings, PL maps, and the `fake` fixture families used to
//! exercise failure paths.

use std::path::Path;

use anyhow::{bail, Context, Result};
use num_traits::Signed;
use scalemetric::family::{DeclaredProperties, MetricFamily, TriangleMode};
use scalemetric::mapping_space::{parse_pl, PlMap};
use scalemetric::number::display_q;
use scalemetric::tiling::{parse_tiling, Tiling1D};
use scalemetric::{ExtendedDistance, Scale, Q};

pub enum Instance {
    Tiling(Tiling1D),
    Mapping(PlMap),
    Fake(FakeFamily),
}

pub fn load(path: &Path) -> Result<(Instance, String)> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let inst = parse(&text).with_context(|| format!("in {}", path.display()))?;
    Ok((inst, text))
}

pub fn parse(text: &str) -> Result<Instance> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let first = lines.clone().next().unwrap_or("");
    if first.split_whitespace().next() == Some("fake") {
        return Ok(Instance::Fake(FakeFamily::parse(first)?));
    }
    let is_tiling = lines.any(|l| {
        let head = l.split_whitespace().next().unwrap_or("");
        head == "periodic" || head == "substitution"
    });
    if is_tiling {
        Ok(Instance::Tiling(parse_tiling(text)?))
    } else {
        Ok(Instance::Mapping(parse_pl(text)?))
    }
}

pub fn load_tiling(path: &Path) -> Result<(Tiling1D, String)> {
    match load(path)? {
        (Instance::Tiling(t), text) => Ok((t, text)),
        _ => bail!("{} is not a tiling description", path.display()),
    }
}

pub fn load_pl(path: &Path) -> Result<(PlMap, String)> {
    match load(path)? {
        (Instance::Mapping(f), text) => Ok((f, text)),
        _ => bail!("{} is not a PL map", path.display()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Defect {
    None,
    /// `d_r(x, x) = r`.
    SelfDistance,
    /// `d_r(x, y) = |x - y| / r`, which shrinks as `r` grows.
    Monotone,
    /// `d_r(x, y) = 2|x - y|` when `x < y`, `|x - y|` otherwise.
    Asymmetric,
}

/// `d_r(x, y) = |x - y|` on rationals, with an optional planted defect.
#[derive(Clone, Copy, Debug)]
pub struct FakeFamily {
    pub defect: Defect,
}

impl FakeFamily {
    fn parse(line: &str) -> Result<Self> {
        let mut words = line.split_whitespace().skip(1);
        let defect = match words.next() {
            None | Some("none") => Defect::None,
            Some("self-distance") => Defect::SelfDistance,
            Some("monotone") => Defect::Monotone,
            Some("asymmetric") => Defect::Asymmetric,
            Some(other) => bail!("unknown fake defect `{other}`"),
        };
        Ok(FakeFamily { defect })
    }
}

impl MetricFamily for FakeFamily {
    type Point = Q;
    type Value = Q;

    fn distance(
        &self,
        x: &Q,
        y: &Q,
        r: &Scale<Q>,
    ) -> scalemetric::Result<ExtendedDistance<Q>> {
        let base = (x - y).abs();
        let v = match self.defect {
            Defect::None => base,
            Defect::SelfDistance if x == y => r.get().clone(),
            Defect::SelfDistance => base,
            Defect::Monotone => base / r.get(),
            Defect::Asymmetric if x < y => base * Q::from_integer(2.into()),
            Defect::Asymmetric => base,
        };
        Ok(ExtendedDistance::Finite(v))
    }

    fn declared(&self) -> DeclaredProperties {
        DeclaredProperties {
            symmetric: true,
            triangle: TriangleMode::Full,
            nondegenerate: true,
        }
    }

    fn describe(&self, x: &Q) -> String {
        display_q(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_kinds() {
        assert!(matches!(
            parse("a 1\nb 1\nperiodic ab\n").unwrap(),
            Instance::Tiling(_)
        ));
        assert!(matches!(parse("0 0\n1 1\n").unwrap(), Instance::Mapping(_)));
        let Instance::Fake(f) = parse("# fixture\nfake self-distance\n").unwrap() else {
            panic!("expected fake");
        };
        assert_eq!(f.defect, Defect::SelfDistance);
        assert!(parse("fake bogus").is_err());
    }
}
