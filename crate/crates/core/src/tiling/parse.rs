// SPDX-License-Identifier: Apache-2.0

//! Plain-text tiling descriptions:
//!
//! ```text
//! # prototiles
//! a 1/1
//! b 3/2
//! substitution a->ab b->a seed a|a
//! offset 3/10
//! ```
//!
//! Labels are single characters. Exactly one `periodic WORD` or
//! `substitution …` line is required; `offset` defaults to 0.

use std::path::Path;

use num_traits::Zero;

use super::{PrototileSet, Tiling1D, DEFAULT_MAX_TILES};
use crate::error::{Error, Result};
use crate::number::{parse_q, Q};

enum GenSpec {
    Periodic(String),
    Substitution(Vec<(char, String)>, (char, char)),
}

fn single_char(s: &str, line: usize) -> Result<char> {
    let mut it = s.chars();
    match (it.next(), it.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(Error::Parse(format!("line {line}: labels are single characters, got `{s}`"))),
    }
}

pub fn parse_tiling(text: &str) -> Result<Tiling1D> {
    let mut tiles: Vec<(char, Q)> = Vec::new();
    let mut spec: Option<GenSpec> = None;
    let mut offset = Q::zero();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        let head = words.next().expect("nonempty");
        let rest: Vec<&str> = words.collect();
        match head {
            "periodic" => {
                if spec.is_some() || rest.len() != 1 {
                    return Err(Error::Parse(format!("line {line}: expected one generator line `periodic WORD`")));
                }
                spec = Some(GenSpec::Periodic(rest[0].to_string()));
            }
            "substitution" => {
                if spec.is_some() {
                    return Err(Error::Parse(format!("line {line}: second generator line")));
                }
                let mut rules = Vec::new();
                let mut seed = None;
                let mut i = 0;
                while i < rest.len() {
                    if rest[i] == "seed" {
                        let pair = rest
                            .get(i + 1)
                            .ok_or_else(|| Error::Parse(format!("line {line}: `seed` needs a pair L|R")))?;
                        let (l, r) = pair
                            .split_once('|')
                            .ok_or_else(|| Error::Parse(format!("line {line}: seed must look like `a|b`")))?;
                        seed = Some((single_char(l, line)?, single_char(r, line)?));
                        i += 2;
                        continue;
                    }
                    let (from, to) = rest[i]
                        .split_once("->")
                        .ok_or_else(|| Error::Parse(format!("line {line}: bad rule `{}`", rest[i])))?;
                    rules.push((single_char(from, line)?, to.to_string()));
                    i += 1;
                }
                let seed = seed.ok_or_else(|| Error::Parse(format!("line {line}: missing seed")))?;
                spec = Some(GenSpec::Substitution(rules, seed));
            }
            "offset" => {
                if rest.len() != 1 {
                    return Err(Error::Parse(format!("line {line}: expected `offset p/q`")));
                }
                offset = parse_q(rest[0])?;
            }
            label => {
                if rest.len() != 1 {
                    return Err(Error::Parse(format!("line {line}: expected `label length`")));
                }
                tiles.push((single_char(label, line)?, parse_q(rest[0])?));
            }
        }
    }
    let protos = PrototileSet::new(tiles)?;
    let base = match spec.ok_or_else(|| Error::Parse("no generator line".into()))? {
        GenSpec::Periodic(word) => Tiling1D::periodic(protos, &word)?,
        GenSpec::Substitution(rules, seed) => {
            let rules: Vec<(char, &str)> = rules.iter().map(|(c, w)| (*c, w.as_str())).collect();
            Tiling1D::substitution(protos, &rules, seed, DEFAULT_MAX_TILES)?
        }
    };
    Ok(base.translate(&offset))
}

pub fn read_tiling(path: impl AsRef<Path>) -> Result<Tiling1D> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_tiling(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::q;

    #[test]
    fn periodic_file() {
        let t = parse_tiling("a 1/1\nb 1\nperiodic ab\noffset 3/10\n").unwrap();
        assert_eq!(t, Tiling1D::example_ab().translate(&q(3, 10)));
    }

    #[test]
    fn substitution_file() {
        let t = parse_tiling("# fib\na 1\nb 1\nsubstitution a->ab b->a seed a|a\n").unwrap();
        assert_eq!(t, Tiling1D::example_fibonacci());
    }

    #[test]
    fn errors() {
        assert!(parse_tiling("a 1\n").is_err());
        assert!(parse_tiling("a 0\nperiodic a\n").is_err());
        assert!(parse_tiling("a 1\nperiodic ab\n").is_err());
        assert!(parse_tiling("ab 1\nperiodic ab\n").is_err());
        assert!(parse_tiling("a 1\nb 1\nsubstitution a->ab b->a seed b|b\n").is_err());
    }
}
