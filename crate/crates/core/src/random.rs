//! Seeded generators for supermodular games and finite lattices.
//!
//! Game payoffs are `f_i(x) = Σ_j a_ij x_j + Σ_{j<k} b^i_jk x_j x_k` over
//! integer chains with every `b ≥ 0`, which gives increasing differences in
//! every pair of coordinates.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::game::{Feasible, Game};
use crate::poset::{Poset, DEFAULT_PRODUCT_CAP};
use crate::rational::Rational;

pub const MAX_PLAYERS: usize = 4;
pub const MAX_CHAIN: usize = 4;
const RESEED_LIMIT: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeasibleMode {
    Product,
    Sublattice,
    /// Product or sublattice with equal odds, per game.
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameSpec {
    pub players: (usize, usize),
    pub chain_len: (usize, usize),
    pub feasible: FeasibleMode,
    /// Linear coefficients, inclusive.
    pub linear: (i64, i64),
    /// Interaction coefficients, inclusive; must be nonnegative.
    pub interaction: (i64, i64),
}

impl Default for GameSpec {
    fn default() -> Self {
        GameSpec {
            players: (2, 4),
            chain_len: (2, 4),
            feasible: FeasibleMode::Mixed,
            linear: (-3, 3),
            interaction: (0, 2),
        }
    }
}

impl GameSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::SpecOutOfRange(m));
        let (p0, p1) = self.players;
        if p0 == 0 || p0 > p1 || p1 > MAX_PLAYERS {
            return bad(format!(
                "player range {p0}..={p1} outside 1..={MAX_PLAYERS}"
            ));
        }
        let (c0, c1) = self.chain_len;
        if c0 == 0 || c0 > c1 || c1 > MAX_CHAIN {
            return bad(format!(
                "chain length range {c0}..={c1} outside 1..={MAX_CHAIN}"
            ));
        }
        if self.linear.0 > self.linear.1 {
            return bad("empty linear coefficient range".into());
        }
        if self.interaction.0 < 0 || self.interaction.0 > self.interaction.1 {
            return bad("interaction coefficients must form a nonempty range in [0, ∞)".into());
        }
        Ok(())
    }
}

/// A supermodular game determined by `(spec, seed)`.
pub fn random_supermodular_game(spec: &GameSpec, seed: u64) -> Result<Game> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(spec.players.0..=spec.players.1);
    let lens: Vec<usize> = (0..n)
        .map(|_| rng.gen_range(spec.chain_len.0..=spec.chain_len.1))
        .collect();
    let a: Vec<Vec<i64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| rng.gen_range(spec.linear.0..=spec.linear.1))
                .collect()
        })
        .collect();
    let b: Vec<Vec<i64>> = (0..n)
        .map(|_| {
            (0..n * n)
                .map(|_| rng.gen_range(spec.interaction.0..=spec.interaction.1))
                .collect()
        })
        .collect();
    let sublattice = match spec.feasible {
        FeasibleMode::Product => false,
        FeasibleMode::Sublattice => true,
        FeasibleMode::Mixed => rng.gen_bool(0.5),
    };
    let feasible = if sublattice {
        Feasible::Profiles(grow_sublattice(&lens, &mut rng)?)
    } else {
        Feasible::Product
    };
    let strategies = lens
        .iter()
        .map(|&k| Poset::chain(k))
        .collect::<Result<Vec<_>>>()?;
    let players = (1..=n).map(|i| i.to_string()).collect();
    Game::new(
        Some(format!("random-{seed}")),
        players,
        strategies,
        feasible,
        DEFAULT_PRODUCT_CAP,
        |i, x| {
            let x: Vec<i64> = x.iter().map(|&v| v as i64).collect();
            let mut f: i64 = (0..n).map(|j| a[i][j] * x[j]).sum();
            for j in 0..n {
                for k in j + 1..n {
                    f += b[i][j * n + k] * x[j] * x[k];
                }
            }
            Some(Rational::integer(f))
        },
    )
}

/// Closes a seed set of profiles under coordinatewise min and max. Seeds
/// cover every value of every chain, and coordinatewise operations never
/// drop a value, so every projection is onto; the check is repeated anyway.
fn grow_sublattice(lens: &[usize], rng: &mut ChaCha8Rng) -> Result<Vec<Vec<usize>>> {
    let width = *lens.iter().max().unwrap();
    for _ in 0..RESEED_LIMIT {
        let perms: Vec<Vec<usize>> = lens
            .iter()
            .map(|&k| {
                let mut p: Vec<usize> = (0..k).collect();
                p.shuffle(rng);
                p
            })
            .collect();
        let mut set: BTreeSet<Vec<usize>> = (0..width)
            .map(|t| perms.iter().map(|p| p[t % p.len()]).collect())
            .collect();
        for _ in 0..rng.gen_range(0..=2) {
            set.insert(lens.iter().map(|&k| rng.gen_range(0..k)).collect());
        }
        loop {
            let items: Vec<Vec<usize>> = set.iter().cloned().collect();
            let before = set.len();
            for u in &items {
                for v in &items {
                    set.insert(u.iter().zip(v).map(|(&p, &q)| p.min(q)).collect());
                    set.insert(u.iter().zip(v).map(|(&p, &q)| p.max(q)).collect());
                }
            }
            if set.len() == before {
                break;
            }
        }
        let onto = lens
            .iter()
            .enumerate()
            .all(|(i, &k)| (0..k).all(|v| set.iter().any(|x| x[i] == v)));
        if onto {
            return Ok(set.into_iter().collect());
        }
    }
    Err(Error::SpecOutOfRange(
        "could not grow a sublattice with onto projections".into(),
    ))
}

/// A random lattice with at most `max_size` elements: a family of subsets
/// of a small ground set closed under intersection, ordered by inclusion.
pub fn random_lattice<R: Rng>(rng: &mut R, max_size: usize) -> Result<Poset> {
    if max_size == 0 {
        return Err(Error::EmptyPoset);
    }
    loop {
        let ground = rng.gen_range(1..=4u32);
        let full = (1u32 << ground) - 1;
        let mut family: BTreeSet<u32> = BTreeSet::from([full]);
        for _ in 0..rng.gen_range(0..=4) {
            family.insert(rng.gen_range(0..=full));
        }
        loop {
            let items: Vec<u32> = family.iter().copied().collect();
            let before = family.len();
            for &u in &items {
                for &v in &items {
                    family.insert(u & v);
                }
            }
            if family.len() == before {
                break;
            }
        }
        if family.len() > max_size {
            continue;
        }
        let sets: Vec<u32> = family.into_iter().collect();
        let names = (0..sets.len()).map(|i| format!("e{i}")).collect();
        return Poset::from_order_fn(names, |a, b| sets[a] & !sets[b] == 0);
    }
}

/// A random nonempty sublattice of a lattice: a few random elements closed
/// under join and meet.
pub fn random_sublattice<R: Rng>(p: &Poset, rng: &mut R) -> Result<Vec<usize>> {
    p.require_lattice()?;
    let mut set: BTreeSet<usize> = (0..rng.gen_range(1..=3))
        .map(|_| rng.gen_range(0..p.len()))
        .collect();
    loop {
        let items: Vec<usize> = set.iter().copied().collect();
        let before = set.len();
        for &a in &items {
            for &b in &items {
                set.insert(p.join(a, b).unwrap());
                set.insert(p.meet(a, b).unwrap());
            }
        }
        if set.len() == before {
            return Ok(set.into_iter().collect());
        }
    }
}
