//! Randomized and symbolic self-checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::omega::{refute_statement, truncation};
use crate::poset::DEFAULT_PRODUCT_CAP;
use crate::random::{random_lattice, random_sublattice};
use crate::topology::{check_product_interval_lemma, check_restriction_lemma, interval_topology};

/// Pass count for one named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckCount {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
}

impl CheckCount {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub checks: Vec<CheckCount>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(CheckCount::ok)
    }

    pub fn extend(&mut self, other: SuiteReport) {
        self.checks.extend(other.checks);
    }

    pub fn render(&self) -> String {
        self.checks
            .iter()
            .map(|c| {
                format!(
                    "{}: {}/{} {}\n",
                    c.name,
                    c.passed,
                    c.total,
                    if c.ok() { "pass" } else { "FAIL" }
                )
            })
            .collect()
    }
}

/// Largest random lattice used by the restriction check.
pub const RESTRICTION_MAX_SIZE: usize = 8;
/// Factor bound for the product check.
pub const PRODUCT_FACTOR_MAX_SIZE: usize = 4;
pub const PRODUCT_MAX_FACTORS: usize = 3;

/// `trials` random instances of each topology lemma.
pub fn run_lemma_suite(seed: u64, trials: usize) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut restriction = 0;
    for _ in 0..trials {
        let p = random_lattice(&mut rng, RESTRICTION_MAX_SIZE)?;
        let q = random_sublattice(&p, &mut rng)?;
        if check_restriction_lemma(&p, &q, RESTRICTION_MAX_SIZE)? {
            restriction += 1;
        }
    }
    let mut product = 0;
    for _ in 0..trials {
        let k = rng.gen_range(1..=PRODUCT_MAX_FACTORS);
        let factors = (0..k)
            .map(|_| random_lattice(&mut rng, PRODUCT_FACTOR_MAX_SIZE))
            .collect::<Result<Vec<_>>>()?;
        if check_product_interval_lemma(&factors, DEFAULT_PRODUCT_CAP)? {
            product += 1;
        }
    }
    Ok(SuiteReport {
        checks: vec![
            CheckCount {
                name: "restriction lemma",
                passed: restriction,
                total: trials,
            },
            CheckCount {
                name: "product lemma",
                passed: product,
                total: trials,
            },
        ],
    })
}

/// Largest truncation `{m, x0, .., x(n-1), M}` checked for discreteness.
pub const TRUNCATION_MAX: usize = 6;

/// Both refutations, plus discreteness of the interval topology on every
/// finite truncation of the counterexample lattice.
pub fn run_counterexample_suite() -> Result<SuiteReport> {
    let mut refuted = 0;
    for kind in [1, 2] {
        if refute_statement(kind)?.refuted() {
            refuted += 1;
        }
    }
    let mut discrete = 0;
    for n in 1..=TRUNCATION_MAX {
        if interval_topology(&truncation(n)?)?.is_discrete() {
            discrete += 1;
        }
    }
    Ok(SuiteReport {
        checks: vec![
            CheckCount {
                name: "refutations",
                passed: refuted,
                total: 2,
            },
            CheckCount {
                name: "finite truncations discrete",
                passed: discrete,
                total: TRUNCATION_MAX,
            },
        ],
    })
}
