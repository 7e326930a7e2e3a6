//! Generalized noncooperative games on finite strategy lattices.
//!
//! A [`Game`] carries an explicit feasible set `S` inside the product of the
//! players' strategy sets. Feasible profiles are addressed by a
//! [`ProfileId`], their position in `S` sorted lexicographically by strategy
//! position (first player most significant).

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::poset::{product_poset, Bound, Correspondence, PairWitness, Poset, ProductShape};
use crate::rational::Rational;

/// Position of a profile in the sorted feasible set.
pub type ProfileId = usize;

/// How the feasible set is given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasible {
    /// Every profile of the product.
    Product,
    /// The listed profiles, one strategy position per player.
    Profiles(Vec<Vec<usize>>),
}

#[derive(Debug, Clone)]
pub struct Game {
    name: Option<String>,
    players: Vec<String>,
    strategies: Vec<Poset>,
    shape: ProductShape,
    product: Poset,
    feasible: Vec<usize>,
    position: Vec<Option<u32>>,
    payoffs: Vec<Vec<Rational>>,
    profile_order: OnceLock<Poset>,
}

impl PartialEq for Game {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.players == other.players
            && self.strategies == other.strategies
            && self.feasible == other.feasible
            && self.payoffs == other.payoffs
    }
}

impl Game {
    /// Builds and validates a game.
    ///
    /// `payoff(i, profile)` must return player `i`'s payoff at every feasible
    /// profile.
    pub fn new(
        name: Option<String>,
        players: Vec<String>,
        strategies: Vec<Poset>,
        feasible: Feasible,
        product_cap: usize,
        mut payoff: impl FnMut(usize, &[usize]) -> Option<Rational>,
    ) -> Result<Self> {
        if players.is_empty() {
            return Err(Error::EmptyPlayerSet);
        }
        if strategies.len() != players.len() {
            return Err(Error::PreconditionViolated(format!(
                "{} players but {} strategy sets",
                players.len(),
                strategies.len()
            )));
        }
        for (p, s) in players.iter().zip(&strategies) {
            if let Some((a, b, kind)) = s.lattice_violation() {
                return Err(Error::PlayerNotALattice {
                    player: p.clone(),
                    detail: format!(
                        "`{}` and `{}` have no {}",
                        s.name(a),
                        s.name(b),
                        kind.as_str()
                    ),
                });
            }
        }
        let shape = ProductShape::new(strategies.iter().map(Poset::len).collect(), product_cap)?;
        let product = product_poset(&strategies, product_cap)?;
        let mut feasible: Vec<usize> = match feasible {
            Feasible::Product => (0..shape.size()).collect(),
            Feasible::Profiles(list) => {
                let mut seen = BTreeSet::new();
                for coords in &list {
                    let name = || render_key(&strategies, coords);
                    if coords.len() != players.len()
                        || coords.iter().zip(&strategies).any(|(&c, s)| c >= s.len())
                    {
                        return Err(Error::InfeasibleProfile(format!("{coords:?}")));
                    }
                    if !seen.insert(shape.encode(coords)) {
                        return Err(Error::DuplicateProfile(name()));
                    }
                }
                seen.into_iter().collect()
            }
        };
        feasible.sort_unstable();
        if feasible.is_empty() {
            return Err(Error::PreconditionViolated("feasible set is empty".into()));
        }
        for (i, s) in strategies.iter().enumerate() {
            let mut hit = vec![false; s.len()];
            for &idx in &feasible {
                hit[shape.coord(idx, i)] = true;
            }
            if let Some(miss) = hit.iter().position(|h| !h) {
                return Err(Error::NonSurjectiveProjection {
                    player: players[i].clone(),
                    strategy: s.name(miss).to_string(),
                });
            }
        }
        let mut position = vec![None; shape.size()];
        for (id, &idx) in feasible.iter().enumerate() {
            position[idx] = Some(id as u32);
        }
        let mut payoffs = Vec::with_capacity(players.len());
        for (i, p) in players.iter().enumerate() {
            let mut row = Vec::with_capacity(feasible.len());
            for &idx in &feasible {
                let coords = shape.decode(idx);
                row.push(payoff(i, &coords).ok_or_else(|| Error::MissingPayoff {
                    player: p.clone(),
                    profile: render_key(&strategies, &coords),
                })?);
            }
            payoffs.push(row);
        }
        Ok(Game {
            name,
            players,
            strategies,
            shape,
            product,
            feasible,
            position,
            payoffs,
            profile_order: OnceLock::new(),
        })
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn players(&self) -> &[String] {
        &self.players
    }

    pub fn num_players(&self) -> usize {
        self.players.len()
    }

    pub fn strategies(&self, i: usize) -> &Poset {
        &self.strategies[i]
    }

    /// `∏ S_i` under the componentwise order.
    pub fn product(&self) -> &Poset {
        &self.product
    }

    pub fn shape(&self) -> &ProductShape {
        &self.shape
    }

    pub fn num_profiles(&self) -> usize {
        self.feasible.len()
    }

    pub fn is_product_form(&self) -> bool {
        self.feasible.len() == self.shape.size()
    }

    /// Product index of a feasible profile.
    pub fn product_index(&self, x: ProfileId) -> usize {
        self.feasible[x]
    }

    /// Feasible profile at a product index, if any.
    pub fn profile_at(&self, idx: usize) -> Option<ProfileId> {
        self.position[idx].map(|p| p as usize)
    }

    /// Product indices of `S`, ascending.
    pub fn feasible_indices(&self) -> &[usize] {
        &self.feasible
    }

    pub fn coords(&self, x: ProfileId) -> Vec<usize> {
        self.shape.decode(self.feasible[x])
    }

    pub fn strategy(&self, x: ProfileId, i: usize) -> usize {
        self.shape.coord(self.feasible[x], i)
    }

    /// Looks up a profile given by strategy positions.
    pub fn id_of(&self, coords: &[usize]) -> Result<ProfileId> {
        let infeasible = || Error::InfeasibleProfile(format!("{coords:?}"));
        if coords.len() != self.num_players()
            || coords
                .iter()
                .zip(&self.strategies)
                .any(|(&c, s)| c >= s.len())
        {
            return Err(infeasible());
        }
        self.profile_at(self.shape.encode(coords))
            .ok_or_else(infeasible)
    }

    /// Looks up a profile given by strategy names.
    pub fn id_of_names<S: AsRef<str>>(&self, names: &[S]) -> Result<ProfileId> {
        if names.len() != self.num_players() {
            return Err(Error::InfeasibleProfile(
                names
                    .iter()
                    .map(AsRef::as_ref)
                    .collect::<Vec<_>>()
                    .join("|"),
            ));
        }
        let coords = names
            .iter()
            .zip(&self.strategies)
            .map(|(n, s)| s.index_of(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        self.id_of(&coords)
    }

    /// Strategy names joined by `|`.
    pub fn profile_key(&self, x: ProfileId) -> String {
        render_key(&self.strategies, &self.coords(x))
    }

    /// Strategy names as `(a,b,...)`.
    pub fn profile_name(&self, x: ProfileId) -> String {
        self.product.name(self.feasible[x]).to_string()
    }

    pub fn payoff(&self, i: usize, x: ProfileId) -> &Rational {
        &self.payoffs[i][x]
    }

    /// `f_i(y_i, x_{-i})` when that profile is feasible.
    pub fn deviation_payoff(&self, i: usize, y: usize, x: ProfileId) -> Option<&Rational> {
        let idx = self.shape.replace(self.feasible[x], i, y);
        self.profile_at(idx).map(|p| &self.payoffs[i][p])
    }

    /// The induced order on `S`; element `k` is profile `k`.
    pub fn profile_order(&self) -> &Poset {
        self.profile_order.get_or_init(|| {
            self.product
                .induced(&self.feasible)
                .expect("feasible set is nonempty")
        })
    }

    fn check_player(&self, i: usize) -> Result<()> {
        if i < self.num_players() {
            Ok(())
        } else {
            Err(Error::UnknownPlayer(i))
        }
    }

    fn check_profile(&self, x: ProfileId) -> Result<()> {
        if x < self.num_profiles() {
            Ok(())
        } else {
            Err(Error::InfeasibleProfile(format!("#{x}")))
        }
    }

    /// `S_i(x_{-i})`: strategies `y` with `(y, x_{-i})` feasible.
    pub fn section(&self, i: usize, x: ProfileId) -> Result<Vec<usize>> {
        self.check_player(i)?;
        self.check_profile(x)?;
        Ok(self.section_unchecked(i, x))
    }

    fn section_unchecked(&self, i: usize, x: ProfileId) -> Vec<usize> {
        let base = self.feasible[x];
        (0..self.strategies[i].len())
            .filter(|&y| self.position[self.shape.replace(base, i, y)].is_some())
            .collect()
    }

    /// `S(x) = (∏_i S_i(x_{-i})) ∩ S`.
    pub fn feasible_box(&self, x: ProfileId) -> Result<Vec<ProfileId>> {
        self.check_profile(x)?;
        let sections: Vec<Vec<bool>> = (0..self.num_players())
            .map(|i| {
                let mut mask = vec![false; self.strategies[i].len()];
                for y in self.section_unchecked(i, x) {
                    mask[y] = true;
                }
                mask
            })
            .collect();
        Ok((0..self.num_profiles())
            .filter(|&y| (0..self.num_players()).all(|i| sections[i][self.strategy(y, i)]))
            .collect())
    }

    /// Distinct opponent profiles `x_{-i}` occurring in `S`, each with the
    /// first feasible profile realizing it. Keys are product indices with
    /// coordinate `i` zeroed.
    fn opponent_keys(&self, i: usize) -> Vec<(usize, ProfileId)> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (id, &idx) in self.feasible.iter().enumerate() {
            let key = self.shape.replace(idx, i, 0);
            if seen.insert(key) {
                out.push((key, id));
            }
        }
        out
    }

    /// Supermodularity of `f_i(·, x_{-i})` on every section.
    pub fn check_supermodular_sections(&self, i: usize) -> Result<Option<SectionWitness>> {
        self.check_player(i)?;
        let si = &self.strategies[i];
        for (_, at) in self.opponent_keys(i) {
            let section = self.section_unchecked(i, at);
            for (k, &y) in section.iter().enumerate() {
                for &z in &section[k + 1..] {
                    let meet = si.meet(y, z).expect("strategy sets are lattices");
                    let join = si.join(y, z).expect("strategy sets are lattices");
                    let (fm, fj) = match (
                        self.deviation_payoff(i, meet, at),
                        self.deviation_payoff(i, join, at),
                    ) {
                        (Some(a), Some(b)) => (a, b),
                        (m, _) => {
                            let (bound, value) = if m.is_none() {
                                (Bound::Meet, meet)
                            } else {
                                (Bound::Join, join)
                            };
                            return Ok(Some(SectionWitness {
                                player: i,
                                at,
                                y,
                                z,
                                failure: SectionFailure::OutsideSection { bound, value },
                            }));
                        }
                    };
                    let fy = self.deviation_payoff(i, y, at).unwrap();
                    let fz = self.deviation_payoff(i, z, at).unwrap();
                    if fm + fj < fy + fz {
                        return Ok(Some(SectionWitness {
                            player: i,
                            at,
                            y,
                            z,
                            failure: SectionFailure::Inequality,
                        }));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Increasing differences of `f_i` relative to `S`, over strictly
    /// comparable pairs `x_i < x_i'` and `t < t'` with all four combined
    /// profiles feasible.
    pub fn check_increasing_differences(&self, i: usize) -> Result<Option<DifferencesWitness>> {
        self.check_player(i)?;
        let si = &self.strategies[i];
        let keys = self.opponent_keys(i);
        let strict: Vec<(usize, usize)> = (0..si.len())
            .flat_map(|a| (0..si.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| si.lt(a, b))
            .collect();
        for &(t, _) in &keys {
            for &(t2, _) in &keys {
                if t == t2 || !self.product.leq(t, t2) {
                    continue;
                }
                for &(lo, hi) in &strict {
                    let at = |s: usize, key: usize| self.profile_at(self.shape.replace(key, i, s));
                    let (Some(lo_t), Some(hi_t), Some(lo_t2), Some(hi_t2)) =
                        (at(lo, t), at(hi, t), at(lo, t2), at(hi, t2))
                    else {
                        continue;
                    };
                    let f = |p: ProfileId| &self.payoffs[i][p];
                    if f(hi_t) + f(lo_t2) > f(lo_t) + f(hi_t2) {
                        return Ok(Some(DifferencesWitness {
                            player: i,
                            low_low: lo_t,
                            high_low: hi_t,
                            low_high: lo_t2,
                            high_high: hi_t2,
                        }));
                    }
                }
            }
        }
        Ok(None)
    }

    /// All hypotheses of a supermodular game, each with its witness.
    pub fn validate_supermodular(&self) -> ValidationReport {
        let sublattice = self
            .product
            .is_sublattice(&self.feasible)
            .expect("product of lattices is a lattice")
            .witness;
        let n = self.num_players();
        ValidationReport {
            sublattice,
            sections: (0..n)
                .map(|i| self.check_supermodular_sections(i).unwrap())
                .collect(),
            differences: (0..n)
                .map(|i| self.check_increasing_differences(i).unwrap())
                .collect(),
        }
    }

    /// `Y_i(x)`: maximizers of `f_i(·, x_{-i})` over the section, ties kept.
    pub fn best_response(&self, i: usize, x: ProfileId) -> Result<Vec<usize>> {
        let section = self.section(i, x)?;
        let values: Vec<&Rational> = section
            .iter()
            .map(|&y| self.deviation_payoff(i, y, x).unwrap())
            .collect();
        let best = values.iter().max().copied().unwrap();
        Ok(section
            .iter()
            .zip(&values)
            .filter(|(_, v)| **v == best)
            .map(|(&y, _)| y)
            .collect())
    }

    /// `g_I(y, x) = Σ_{i∈I} f_i(y_i, x_{-i})` for `y ∈ S(x)`.
    pub fn aggregate_payoff(&self, players: &[usize], y: ProfileId, x: ProfileId) -> Rational {
        players
            .iter()
            .map(|&i| {
                self.deviation_payoff(i, self.strategy(y, i), x)
                    .expect("y lies in S(x)")
            })
            .sum()
    }

    /// `Y_I(x)`: maximizers of `g_I(·, x)` over `S(x)`.
    pub fn partial_response(&self, players: &[usize], x: ProfileId) -> Result<Vec<ProfileId>> {
        if players.is_empty() {
            return Err(Error::EmptyPlayerSet);
        }
        for &i in players {
            self.check_player(i)?;
        }
        let mut players = players.to_vec();
        players.sort_unstable();
        players.dedup();
        let feasible_box = self.feasible_box(x)?;
        let values: Vec<Rational> = feasible_box
            .iter()
            .map(|&y| self.aggregate_payoff(&players, y, x))
            .collect();
        let best = values.iter().max().unwrap();
        Ok(feasible_box
            .iter()
            .zip(&values)
            .filter(|(_, v)| *v == best)
            .map(|(&y, _)| y)
            .collect())
    }

    /// `Y_N(x)`.
    pub fn joint_best_response(&self, x: ProfileId) -> Result<Vec<ProfileId>> {
        let all: Vec<usize> = (0..self.num_players()).collect();
        self.partial_response(&all, x)
    }

    /// `R(x) = (∏_i Y_i(x_{-i})) ∩ S`; may be empty.
    pub fn joint_response(&self, x: ProfileId) -> Result<Vec<ProfileId>> {
        self.check_profile(x)?;
        let masks: Vec<Vec<bool>> = (0..self.num_players())
            .map(|i| {
                let mut m = vec![false; self.strategies[i].len()];
                for y in self.best_response(i, x).unwrap() {
                    m[y] = true;
                }
                m
            })
            .collect();
        Ok((0..self.num_profiles())
            .filter(|&y| (0..self.num_players()).all(|i| masks[i][self.strategy(y, i)]))
            .collect())
    }

    /// `x ↦ S_i(x_{-i})` as a correspondence `S ↠ S_i`.
    pub fn section_correspondence(&self, i: usize) -> Result<Correspondence<'_>> {
        self.check_player(i)?;
        let images = (0..self.num_profiles())
            .map(|x| self.section_unchecked(i, x))
            .collect();
        Correspondence::new(self.profile_order(), &self.strategies[i], images)
    }

    /// `x ↦ S(x)` as a correspondence into `∏ S_i` (values lie in `S`).
    pub fn box_correspondence(&self) -> Result<Correspondence<'_>> {
        let images = (0..self.num_profiles())
            .map(|x| self.to_product(&self.feasible_box(x).unwrap()))
            .collect();
        Correspondence::new(self.profile_order(), &self.product, images)
    }

    /// `Y_i` as a correspondence `S ↠ S_i`.
    pub fn best_response_correspondence(&self, i: usize) -> Result<Correspondence<'_>> {
        self.check_player(i)?;
        let images = (0..self.num_profiles())
            .map(|x| self.best_response(i, x))
            .collect::<Result<_>>()?;
        Correspondence::new(self.profile_order(), &self.strategies[i], images)
    }

    /// `Y_I` as a correspondence into `∏ S_i` (values lie in `S`).
    pub fn partial_response_correspondence(&self, players: &[usize]) -> Result<Correspondence<'_>> {
        let images = (0..self.num_profiles())
            .map(|x| Ok(self.to_product(&self.partial_response(players, x)?)))
            .collect::<Result<_>>()?;
        Correspondence::new(self.profile_order(), &self.product, images)
    }

    /// Product indices of a set of profiles.
    pub fn to_product(&self, ids: &[ProfileId]) -> Vec<usize> {
        ids.iter().map(|&x| self.feasible[x]).collect()
    }

    /// Componentwise join of two profiles as a product index.
    pub fn join_index(&self, a: usize, b: usize) -> usize {
        let coords: Vec<usize> = (0..self.num_players())
            .map(|i| {
                self.strategies[i]
                    .join(self.shape.coord(a, i), self.shape.coord(b, i))
                    .expect("strategy sets are lattices")
            })
            .collect();
        self.shape.encode(&coords)
    }

    /// Componentwise meet of two profiles as a product index.
    pub fn meet_index(&self, a: usize, b: usize) -> usize {
        let coords: Vec<usize> = (0..self.num_players())
            .map(|i| {
                self.strategies[i]
                    .meet(self.shape.coord(a, i), self.shape.coord(b, i))
                    .expect("strategy sets are lattices")
            })
            .collect();
        self.shape.encode(&coords)
    }
}

pub(crate) fn render_key(strategies: &[Poset], coords: &[usize]) -> String {
    coords
        .iter()
        .zip(strategies)
        .map(|(&c, s)| s.name(c))
        .collect::<Vec<_>>()
        .join("|")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectionFailure {
    /// `f(y∧z) + f(y∨z) < f(y) + f(z)`.
    Inequality,
    /// The meet or join of `y, z` is not in the section.
    OutsideSection { bound: Bound, value: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionWitness {
    pub player: usize,
    /// A profile fixing the opponents' strategies.
    pub at: ProfileId,
    pub y: usize,
    pub z: usize,
    pub failure: SectionFailure,
}

/// Profiles `(x_i, t)`, `(x_i', t)`, `(x_i, t')`, `(x_i', t')` with
/// `f(x_i', t) + f(x_i, t') > f(x_i, t) + f(x_i', t')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferencesWitness {
    pub player: usize,
    pub low_low: ProfileId,
    pub high_low: ProfileId,
    pub low_high: ProfileId,
    pub high_high: ProfileId,
}

/// Verdicts on the supermodular-game hypotheses.
///
/// Strategy lattices and surjective projections are enforced when a
/// [`Game`] is built, so only the remaining three conditions appear here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    /// `S` is a sublattice of `∏ S_i`; witness pair in product indices.
    pub sublattice: Option<PairWitness>,
    pub sections: Vec<Option<SectionWitness>>,
    pub differences: Vec<Option<DifferencesWitness>>,
}

impl ValidationReport {
    pub fn is_supermodular(&self) -> bool {
        self.sublattice.is_none()
            && self.sections.iter().all(Option::is_none)
            && self.differences.iter().all(Option::is_none)
    }

    /// Short descriptions of every failed hypothesis.
    pub fn failures(&self, g: &Game) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(w) = &self.sublattice {
            let p = g.product();
            out.push(format!(
                "feasible set is not a sublattice: {} of {} and {} is {}, which is infeasible",
                w.bound.as_str(),
                p.name(w.a),
                p.name(w.b),
                p.name(w.value)
            ));
        }
        for w in self.sections.iter().flatten() {
            let s = g.strategies(w.player);
            let what = match w.failure {
                SectionFailure::Inequality => "supermodular inequality fails".to_string(),
                SectionFailure::OutsideSection { bound, value } => {
                    format!("{} {} leaves the section", bound.as_str(), s.name(value))
                }
            };
            out.push(format!(
                "player {}: payoff not supermodular on the section at {}: y={}, z={}: {what}",
                g.players()[w.player],
                g.profile_name(w.at),
                s.name(w.y),
                s.name(w.z)
            ));
        }
        for w in self.differences.iter().flatten() {
            let f = |x| g.payoff(w.player, x);
            out.push(format!(
                "player {}: increasing differences fail: f{} + f{} = {} > f{} + f{} = {}",
                g.players()[w.player],
                g.profile_name(w.high_low),
                g.profile_name(w.low_high),
                f(w.high_low) + f(w.low_high),
                g.profile_name(w.low_low),
                g.profile_name(w.high_high),
                f(w.low_low) + f(w.high_high)
            ));
        }
        out
    }

    pub fn render(&self, g: &Game) -> String {
        let mut out = String::new();
        let mark = |ok: bool| if ok { "pass" } else { "FAIL" };
        out.push_str(&format!(
            "strategy sets are lattices: pass\nprojections surjective: pass\nfeasible set is a sublattice: {}\n",
            mark(self.sublattice.is_none())
        ));
        for (i, p) in g.players().iter().enumerate() {
            out.push_str(&format!(
                "player {p}: supermodular sections: {}; increasing differences: {}\n",
                mark(self.sections[i].is_none()),
                mark(self.differences[i].is_none())
            ));
        }
        for f in self.failures(g) {
            out.push_str(&format!("witness: {f}\n"));
        }
        out.push_str(&format!(
            "supermodular: {}\n",
            if self.is_supermodular() { "yes" } else { "no" }
        ));
        out
    }
}

impl fmt::Display for Feasible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Feasible::Product => f.write_str("product"),
            Feasible::Profiles(p) => write!(f, "{} profiles", p.len()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::DEFAULT_PRODUCT_CAP;

    fn two_player(feasible: Feasible, f: impl Fn(usize, &[usize]) -> i64) -> Result<Game> {
        let c2 = Poset::chain(2).unwrap();
        Game::new(
            None,
            vec!["1".into(), "2".into()],
            vec![c2.clone(), c2],
            feasible,
            DEFAULT_PRODUCT_CAP,
            |i, x| Some(Rational::integer(f(i, x))),
        )
    }

    fn coordination() -> Game {
        two_player(Feasible::Product, |_, x| (x[0] == x[1]) as i64).unwrap()
    }

    fn diag2() -> Game {
        two_player(Feasible::Profiles(vec![vec![0, 0], vec![1, 1]]), |i, x| {
            x[i] as i64
        })
        .unwrap()
    }

    #[test]
    fn construction_errors() {
        let err = two_player(Feasible::Profiles(vec![vec![0, 0], vec![0, 1]]), |_, _| 0);
        assert!(
            matches!(err, Err(Error::NonSurjectiveProjection { ref player, .. }) if player == "1")
        );
        let err = two_player(Feasible::Profiles(vec![vec![0, 0], vec![0, 0]]), |_, _| 0);
        assert_eq!(err.unwrap_err(), Error::DuplicateProfile("0|0".into()));
        let c2 = Poset::chain(2).unwrap();
        let err = Game::new(
            None,
            vec!["a".into()],
            vec![c2.clone()],
            Feasible::Product,
            DEFAULT_PRODUCT_CAP,
            |_, x| (x[0] == 0).then(Rational::zero),
        );
        assert_eq!(
            err.unwrap_err(),
            Error::MissingPayoff {
                player: "a".into(),
                profile: "1".into()
            }
        );
        let err = Game::new(
            None,
            vec!["a".into()],
            vec![Poset::antichain(2).unwrap()],
            Feasible::Product,
            DEFAULT_PRODUCT_CAP,
            |_, _| Some(Rational::zero()),
        );
        assert!(matches!(err, Err(Error::PlayerNotALattice { .. })));
    }

    #[test]
    fn sections_and_boxes() {
        let g = coordination();
        for x in 0..g.num_profiles() {
            assert_eq!(g.section(0, x).unwrap(), vec![0, 1]);
            assert_eq!(g.feasible_box(x).unwrap(), (0..4).collect::<Vec<_>>());
        }
        let d = diag2();
        let origin = d.id_of(&[0, 0]).unwrap();
        assert_eq!(d.section(0, origin).unwrap(), vec![0]);
        assert_eq!(d.feasible_box(origin).unwrap(), vec![origin]);
        assert!(matches!(d.id_of(&[0, 1]), Err(Error::InfeasibleProfile(_))));
    }

    #[test]
    fn single_lattice_player_supermodularity() {
        let sq = product_poset(&[Poset::chain(2).unwrap(), Poset::chain(2).unwrap()], 64).unwrap();
        let coords = |name: &str| -> Vec<i64> {
            name.trim_matches(|c| c == '(' || c == ')')
                .split(',')
                .map(|s| s.parse().unwrap())
                .collect()
        };
        let build = |f: &dyn Fn(&[i64]) -> i64| {
            Game::new(
                None,
                vec!["p".into()],
                vec![sq.clone()],
                Feasible::Product,
                64,
                |_, x| Some(Rational::integer(f(&coords(sq.name(x[0]))))),
            )
            .unwrap()
        };
        let product = build(&|v| v[0] * v[1]);
        assert_eq!(product.check_supermodular_sections(0), Ok(None));
        let neg_min = build(&|v| -v[0].min(v[1]));
        let w = neg_min.check_supermodular_sections(0).unwrap().unwrap();
        assert_eq!(w.failure, SectionFailure::Inequality);
        assert_eq!((sq.name(w.y), sq.name(w.z)), ("(0,1)", "(1,0)"));
        // single player: no opponents, vacuous
        assert_eq!(neg_min.check_increasing_differences(0), Ok(None));
    }

    #[test]
    fn increasing_differences() {
        let g = coordination();
        assert_eq!(g.check_increasing_differences(0), Ok(None));
        assert_eq!(g.check_increasing_differences(1), Ok(None));
        let anti = two_player(Feasible::Product, |_, x| (x[0] != x[1]) as i64).unwrap();
        let w = anti.check_increasing_differences(0).unwrap().unwrap();
        assert_eq!(anti.profile_name(w.high_low), "(1,0)");
        assert_eq!(anti.profile_name(w.low_high), "(0,1)");
        assert!(!anti.validate_supermodular().is_supermodular());
    }

    #[test]
    fn validation() {
        assert!(coordination().validate_supermodular().is_supermodular());
        assert!(diag2().validate_supermodular().is_supermodular());
        let anti_diag =
            two_player(Feasible::Profiles(vec![vec![0, 1], vec![1, 0]]), |_, _| 0).unwrap();
        let r = anti_diag.validate_supermodular();
        let w = r.sublattice.clone().unwrap();
        assert_eq!(anti_diag.product().name(w.value), "(1,1)");
        assert_eq!(w.bound, Bound::Join);
        assert!(r
            .render(&anti_diag)
            .contains("feasible set is a sublattice: FAIL"));
    }

    #[test]
    fn responses() {
        let g = coordination();
        let origin = g.id_of(&[0, 0]).unwrap();
        let top = g.id_of(&[1, 1]).unwrap();
        assert_eq!(g.best_response(0, origin).unwrap(), vec![0]);
        assert_eq!(g.joint_best_response(origin).unwrap(), vec![origin]);
        assert_eq!(g.joint_response(top).unwrap(), vec![top]);
        let flat = two_player(Feasible::Product, |_, _| 7).unwrap();
        assert_eq!(flat.best_response(1, origin).unwrap(), vec![0, 1]);
        let d = diag2();
        let o = d.id_of(&[0, 0]).unwrap();
        assert_eq!(d.partial_response(&[0], o).unwrap(), vec![o]);
        assert_eq!(d.partial_response(&[], o), Err(Error::EmptyPlayerSet));
    }

    #[test]
    fn singleton_partial_response_matches_extension_of_best_response() {
        let g = two_player(Feasible::Product, |i, x| {
            (x[0] + 2 * x[1]) as i64 * if i == 0 { -1 } else { 1 }
        })
        .unwrap();
        for x in 0..g.num_profiles() {
            for i in 0..2 {
                let yi = g.best_response(i, x).unwrap();
                let expected: Vec<ProfileId> = g
                    .feasible_box(x)
                    .unwrap()
                    .into_iter()
                    .filter(|&y| yi.contains(&g.strategy(y, i)))
                    .collect();
                assert_eq!(g.partial_response(&[i], x).unwrap(), expected);
            }
        }
    }

    #[test]
    fn correspondences_of_valid_game_are_increasing() {
        let d = diag2();
        assert!(d.box_correspondence().unwrap().is_increasing().unwrap());
        assert!(d
            .section_correspondence(0)
            .unwrap()
            .is_increasing()
            .unwrap());
    }
}
