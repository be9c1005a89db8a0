//! Small parsers for command-line inputs: permutation cycle notation,
//! reference-family specs, and exact decimal fractions.

use num::{BigInt, BigRational};
use schreier::builders::GroupFamily;
use schreier::{Error, Result};

/// Parses disjoint-cycle notation like `"(12),(123),(132)"` or
/// `"(1 2 3)(4 5)"` into permutations on `0..m` (points are 1-based in the
/// notation; m is the largest point mentioned). Single-character points
/// need no separators; multi-digit points must be separated by spaces or
/// commas inside the parentheses.
pub fn parse_permutations(input: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycle_lists: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut current: Vec<Vec<usize>> = Vec::new();
    let mut max_point = 0usize;

    let mut rest = input.trim();
    if rest.is_empty() {
        return Err(Error::InvalidInput("empty permutation list".into()));
    }
    while !rest.is_empty() {
        if let Some(stripped) = rest.strip_prefix(',') {
            if !current.is_empty() {
                cycle_lists.push(std::mem::take(&mut current));
            }
            rest = stripped.trim_start();
            continue;
        }
        let Some(stripped) = rest.strip_prefix('(') else {
            return Err(Error::InvalidInput(format!(
                "expected '(' in permutation spec at: {rest}"
            )));
        };
        let Some(close) = stripped.find(')') else {
            return Err(Error::InvalidInput("unbalanced parenthesis".into()));
        };
        let body = &stripped[..close];
        let points = parse_cycle_body(body)?;
        for &p in &points {
            max_point = max_point.max(p);
        }
        current.push(points);
        rest = stripped[close + 1..].trim_start();
    }
    if !current.is_empty() {
        cycle_lists.push(current);
    }

    let m = max_point; // points are 1-based, so the max point is the count
    let mut perms = Vec::with_capacity(cycle_lists.len());
    for cycles in cycle_lists {
        let mut map: Vec<usize> = (0..m).collect();
        for cycle in cycles {
            if cycle.is_empty() {
                continue;
            }
            let mut seen = vec![false; m];
            for &p in &cycle {
                if seen[p - 1] {
                    return Err(Error::InvalidInput(format!("point {p} repeats in a cycle")));
                }
                seen[p - 1] = true;
            }
            for w in cycle.windows(2) {
                map[w[0] - 1] = w[1] - 1;
            }
            map[cycle[cycle.len() - 1] - 1] = cycle[0] - 1;
        }
        perms.push(map);
    }
    Ok(perms)
}

fn parse_cycle_body(body: &str) -> Result<Vec<usize>> {
    let trimmed = body.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new()); // () is the identity
    }
    let parts: Vec<&str> = if trimmed.contains(|c: char| c.is_whitespace() || c == ',') {
        trimmed
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .collect()
    } else {
        trimmed.split_terminator("").skip(1).collect()
    };
    parts
        .iter()
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| Error::InvalidInput(format!("bad point '{s}' in cycle")))
                .and_then(|p| {
                    if p == 0 {
                        Err(Error::InvalidInput("points are 1-based".into()))
                    } else {
                        Ok(p)
                    }
                })
        })
        .collect()
}

/// Pairs each permutation with its inverse within the list; every
/// generator's inverse must be listed (self-inverse generators pair with
/// themselves).
pub fn inverse_pairing(perms: &[Vec<usize>]) -> Result<Vec<usize>> {
    let inverse_of = |p: &Vec<usize>| -> Vec<usize> {
        let mut inv = vec![0; p.len()];
        for (i, &v) in p.iter().enumerate() {
            inv[v] = i;
        }
        inv
    };
    let mut pairing = vec![usize::MAX; perms.len()];
    for (i, p) in perms.iter().enumerate() {
        if pairing[i] != usize::MAX {
            continue;
        }
        let inv = inverse_of(p);
        let j = perms
            .iter()
            .position(|q| *q == inv)
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "generator {i} has no inverse in the list; add it explicitly"
                ))
            })?;
        pairing[i] = j;
        pairing[j] = i;
    }
    Ok(pairing)
}

/// `integers`, `free:<rank>`, or `lattice:<dim>`.
pub fn parse_family(spec: &str) -> Result<GroupFamily> {
    if spec == "integers" {
        return Ok(GroupFamily::Integers);
    }
    if let Some(rank) = spec.strip_prefix("free:") {
        let rank = rank
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad rank in '{spec}'")))?;
        return Ok(GroupFamily::Free { rank });
    }
    if let Some(dim) = spec.strip_prefix("lattice:") {
        let dim = dim
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad dimension in '{spec}'")))?;
        return Ok(GroupFamily::IntegerLattice { dim });
    }
    Err(Error::UnsupportedFamily(format!(
        "'{spec}' (expected integers, free:<rank>, or lattice:<dim>)"
    )))
}

/// Exact decimal parsing: "0.01" becomes 1/100 with no float rounding.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidInput(format!("'{s}' is not a decimal number"));
    let s = s.trim();
    let (int_part, frac_part) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().map_err(|_| bad())?;
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    Ok(BigRational::new(numer, denom))
}

pub fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_s3_generators() {
        let perms = parse_permutations("(12),(123),(132)").unwrap();
        assert_eq!(perms, vec![vec![1, 0, 2], vec![1, 2, 0], vec![2, 0, 1]]);
        let pairing = inverse_pairing(&perms).unwrap();
        assert_eq!(pairing, vec![0, 2, 1]);
    }

    #[test]
    fn parses_multidigit_and_products() {
        let perms = parse_permutations("(1 2 3)(10 11), (3 2 1)(11 10)").unwrap();
        assert_eq!(perms.len(), 2);
        assert_eq!(perms[0].len(), 11);
        assert_eq!(perms[0][9], 10);
        assert!(inverse_pairing(&perms).is_ok());
    }

    #[test]
    fn missing_inverse_is_an_error() {
        let perms = parse_permutations("(123)").unwrap();
        assert!(inverse_pairing(&perms).is_err());
    }

    #[test]
    fn family_specs() {
        assert_eq!(parse_family("integers").unwrap(), GroupFamily::Integers);
        assert_eq!(parse_family("free:2").unwrap(), GroupFamily::Free { rank: 2 });
        assert_eq!(
            parse_family("lattice:3").unwrap(),
            GroupFamily::IntegerLattice { dim: 3 }
        );
        assert!(parse_family("heisenberg").is_err());
    }

    #[test]
    fn exact_decimals() {
        use num::BigInt;
        assert_eq!(
            parse_decimal("0.01").unwrap(),
            BigRational::new(BigInt::from(1), BigInt::from(100))
        );
        assert_eq!(
            parse_decimal("1").unwrap(),
            BigRational::new(BigInt::from(1), BigInt::from(1))
        );
        assert_eq!(
            parse_decimal(".5").unwrap(),
            BigRational::new(BigInt::from(1), BigInt::from(2))
        );
        assert!(parse_decimal("1e-2").is_err());
        assert!(parse_decimal("-0.5").is_err());
    }
}
