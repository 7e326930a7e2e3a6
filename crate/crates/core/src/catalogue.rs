//! Every finite lattice up to a small size, one per isomorphism class.
//!
//! A lattice with `n ≥ 2` elements is a bounded poset, so it is a top and a
//! bottom around an arbitrary poset on the `n - 2` middle elements. Middle
//! posets are enumerated as transitive relations compatible with index order
//! (every poset has a linear extension), the bounded poset is kept if it is a
//! lattice, and duplicates are removed with a canonical form over all
//! relabellings of the middle.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poset::Poset;

/// Largest size the catalogue will enumerate.
pub const MAX_CATALOGUE_SIZE: usize = 7;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Middle relation as a bit per ordered pair `(a, b)`, `a != b`.
fn code(m: usize, rel: &[bool], perm: &[usize]) -> u64 {
    let mut c = 0u64;
    for a in 0..m {
        for b in 0..m {
            if a != b {
                c = (c << 1) | rel[perm[a] * m + perm[b]] as u64;
            }
        }
    }
    c
}

/// All lattices with exactly `n` elements, up to isomorphism.
pub fn lattices_of_size(n: usize) -> Result<Vec<Poset>> {
    if n == 0 {
        return Err(Error::EmptyPoset);
    }
    if n > MAX_CATALOGUE_SIZE {
        return Err(Error::ExhaustiveTooLarge {
            size: n,
            cap: MAX_CATALOGUE_SIZE,
        });
    }
    if n == 1 {
        return Ok(vec![Poset::chain(1)?]);
    }
    let m = n - 2;
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
        .collect();
    let perms = permutations(m);
    let mut found: BTreeMap<u64, Poset> = BTreeMap::new();
    for mask in 0u64..1 << pairs.len() {
        let mut rel = vec![false; m * m];
        for (k, &(a, b)) in pairs.iter().enumerate() {
            rel[a * m + b] = mask >> k & 1 == 1;
        }
        let transitive = (0..m).all(|a| {
            (0..m).all(|b| (0..m).all(|c| !(rel[a * m + b] && rel[b * m + c]) || rel[a * m + c]))
        });
        if !transitive {
            continue;
        }
        let canon = perms.iter().map(|p| code(m, &rel, p)).max().unwrap();
        if found.contains_key(&canon) {
            continue;
        }
        let names = (0..n).map(|i| i.to_string()).collect();
        let p = Poset::from_order_fn(names, |a, b| {
            a == b || a == 0 || b == n - 1 || (a < n - 1 && b > 0 && rel[(a - 1) * m + (b - 1)])
        })?;
        if p.is_lattice() {
            found.insert(canon, p);
        }
    }
    Ok(found.into_values().collect())
}

/// All lattices with at most `max` elements, by increasing size.
pub fn lattices_up_to(max: usize) -> Result<Vec<Poset>> {
    let mut out = Vec::new();
    for n in 1..=max {
        out.extend(lattices_of_size(n)?);
    }
    Ok(out)
}
