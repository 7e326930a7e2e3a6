//! Named fixtures.

use crate::error::{Error, Result};
use crate::game::{Feasible, Game};
use crate::omega::{refute_statement, RefutationReport};
use crate::poset::{Poset, DEFAULT_PRODUCT_CAP};
use crate::random::{random_supermodular_game, GameSpec};
use crate::rational::Rational;

/// Seed of the `random-seeded` fixture.
pub const RANDOM_SEED: u64 = 42;
/// Seed, under the default spec, of a supermodular game whose equilibria
/// form a complete lattice that is not a sublattice of `S`. Found by search.
pub const NON_SUBLATTICE_SEED: u64 = 138;

#[derive(Debug, Clone)]
pub enum Fixture {
    Game(Box<Game>),
    /// Both symbolic refutations.
    Report(Vec<RefutationReport>),
}

impl Fixture {
    /// Game document or report text, as written by the command line tool.
    pub fn render(&self) -> String {
        match self {
            Fixture::Game(g) => crate::format::serialize_game(g),
            Fixture::Report(rs) => rs
                .iter()
                .map(RefutationReport::render)
                .collect::<Vec<_>>()
                .join("\n"),
        }
    }
}

pub const NAMES: [(&str, &str); 6] = [
    (
        "coordination",
        "2x2 coordination, equilibria (0,0) and (1,1)",
    ),
    ("anti-coordination", "2x2 matching pennies, no equilibrium"),
    ("diag2", "feasible set {(0,0),(1,1)}, payoff x_i"),
    ("random-seeded", "random supermodular game, seed 42"),
    (
        "equilibria-not-sublattice",
        "supermodular game whose equilibria are not a sublattice of S",
    ),
    (
        "omega-counterexample",
        "symbolic refutation on the infinite lattice {m, M, x0, x1, ...}",
    ),
];

pub fn list() -> Vec<&'static str> {
    NAMES.iter().map(|(n, _)| *n).collect()
}

fn two_by_two(name: &str, feasible: Feasible, f: impl Fn(usize, &[usize]) -> i64) -> Result<Game> {
    let c2 = Poset::chain(2)?;
    Game::new(
        Some(name.to_string()),
        vec!["1".into(), "2".into()],
        vec![c2.clone(), c2],
        feasible,
        DEFAULT_PRODUCT_CAP,
        |i, x| Some(Rational::integer(f(i, x))),
    )
}

pub fn get(name: &str) -> Result<Fixture> {
    let game = match name {
        "coordination" => two_by_two(name, Feasible::Product, |_, x| (x[0] == x[1]) as i64)?,
        "anti-coordination" => two_by_two(name, Feasible::Product, |i, x| {
            (if i == 0 { x[0] != x[1] } else { x[0] == x[1] }) as i64
        })?,
        "diag2" => two_by_two(
            name,
            Feasible::Profiles(vec![vec![0, 0], vec![1, 1]]),
            |i, x| x[i] as i64,
        )?,
        "random-seeded" => random_supermodular_game(&GameSpec::default(), RANDOM_SEED)?,
        "equilibria-not-sublattice" => {
            random_supermodular_game(&GameSpec::default(), NON_SUBLATTICE_SEED)?
        }
        "omega-counterexample" => {
            return Ok(Fixture::Report(vec![
                refute_statement(1)?,
                refute_statement(2)?,
            ]));
        }
        _ => return Err(Error::UnknownGalleryName(name.to_string())),
    };
    Ok(Fixture::Game(Box::new(game)))
}
