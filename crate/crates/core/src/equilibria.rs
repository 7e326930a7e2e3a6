//! Equilibrium sets and their order structure.
//!
//! `E` is computed by definition as `∩_i F_i`, where `F_i` holds the feasible
//! profiles at which player `i` has no improving feasible deviation. The
//! fixed-point characterizations `E = Fix(R)` and `Fix(Y_I) = ∩_{i∈I} F_i`
//! are checked against it whenever they are evaluated.
//!
//! Extremal equilibria are found by monotone iteration of the max (or min)
//! selection of the joint best response `Y = Y_N`, starting from the top
//! (bottom) of `S`. For a supermodular game `Y` is increasing with sublattice
//! values, so for `x <= x'` the profile `max Y(x) ∨ max Y(x')` lies in
//! `Y(x')`, forcing `max Y(x) <= max Y(x')`. The iterates therefore decrease
//! from `max S`, every fixed point stays below each iterate, and the sequence
//! stops at the greatest fixed point after at most `|S|` steps.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::game::{Game, ProfileId};
use crate::poset::{escape, CheckMode, IncreasingWitness, PairWitness, Poset};

/// `F_i`: feasible profiles where player `i` cannot gain by a feasible
/// unilateral deviation.
pub fn f_set(g: &Game, i: usize) -> Result<Vec<ProfileId>> {
    if i >= g.num_players() {
        return Err(Error::UnknownPlayer(i));
    }
    let mut out = Vec::new();
    for x in 0..g.num_profiles() {
        let current = g.payoff(i, x);
        let stable = g
            .section(i, x)?
            .into_iter()
            .all(|y| g.deviation_payoff(i, y, x).unwrap() <= current);
        if stable {
            out.push(x);
        }
    }
    Ok(out)
}

fn intersect(sets: &[&[ProfileId]]) -> Vec<ProfileId> {
    let Some((first, rest)) = sets.split_first() else {
        return Vec::new();
    };
    first
        .iter()
        .copied()
        .filter(|x| rest.iter().all(|s| s.binary_search(x).is_ok()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquilibriumSet {
    pub profiles: Vec<ProfileId>,
    /// `F_i` per player.
    pub f_sets: Vec<Vec<ProfileId>>,
}

impl EquilibriumSet {
    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }

    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn contains(&self, x: ProfileId) -> bool {
        self.profiles.binary_search(&x).is_ok()
    }

    /// `∩_{i∈I} F_i`.
    pub fn intersection_over(&self, players: &[usize]) -> Vec<ProfileId> {
        let sets: Vec<&[ProfileId]> = players.iter().map(|&i| self.f_sets[i].as_slice()).collect();
        intersect(&sets)
    }
}

/// `E = ∩_i F_i`.
pub fn equilibria_bruteforce(g: &Game) -> EquilibriumSet {
    let f_sets: Vec<Vec<ProfileId>> = (0..g.num_players())
        .map(|i| f_set(g, i).expect("player in range"))
        .collect();
    let refs: Vec<&[ProfileId]> = f_sets.iter().map(Vec::as_slice).collect();
    EquilibriumSet {
        profiles: intersect(&refs),
        f_sets,
    }
}

/// The correspondence whose fixed points are requested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResponseKind {
    /// `R(x) = (∏_i Y_i(x)) ∩ S`.
    Joint,
    /// `Y_I` for a nonempty set of players.
    Partial(Vec<usize>),
}

/// `{x ∈ S : x ∈ C(x)}`, cross-checked against the `F_i` sets.
pub fn fixed_points(g: &Game, kind: &ResponseKind) -> Result<Vec<ProfileId>> {
    let mut fix = Vec::new();
    for x in 0..g.num_profiles() {
        let image = match kind {
            ResponseKind::Joint => g.joint_response(x)?,
            ResponseKind::Partial(players) => g.partial_response(players, x)?,
        };
        if image.binary_search(&x).is_ok() {
            fix.push(x);
        }
    }
    let brute = equilibria_bruteforce(g);
    let expected = match kind {
        ResponseKind::Joint => brute.profiles.clone(),
        ResponseKind::Partial(players) => {
            let mut players = players.clone();
            players.sort_unstable();
            players.dedup();
            brute.intersection_over(&players)
        }
    };
    if fix != expected {
        return Err(Error::InternalContradiction(format!(
            "fixed points of {kind:?} are {fix:?} but the F-set intersection is {expected:?}"
        )));
    }
    Ok(fix)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Greatest,
    Least,
}

/// An extremal equilibrium and the iterates leading to it, starting point
/// first and the fixed point last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extremal {
    pub profile: ProfileId,
    pub trace: Vec<ProfileId>,
}

fn select(order: &Poset, set: &[ProfileId], dir: Direction) -> Option<ProfileId> {
    match dir {
        Direction::Greatest => order.greatest_of(set),
        Direction::Least => order.least_of(set),
    }
}

fn iterate(
    g: &Game,
    dir: Direction,
    response: impl Fn(ProfileId) -> Result<Vec<ProfileId>>,
) -> Result<Extremal> {
    let order = g.profile_order();
    let all: Vec<ProfileId> = (0..g.num_profiles()).collect();
    let mut x = select(order, &all, dir).ok_or_else(|| {
        Error::PreconditionViolated("feasible set has no extremal element".into())
    })?;
    let mut trace = vec![x];
    loop {
        let image = response(x)?;
        let next = select(order, &image, dir).ok_or_else(|| {
            Error::InternalContradiction(format!(
                "response at {} has no extremal element",
                g.profile_name(x)
            ))
        })?;
        if next == x {
            return Ok(Extremal { profile: x, trace });
        }
        let monotone = match dir {
            Direction::Greatest => order.leq(next, x),
            Direction::Least => order.leq(x, next),
        };
        if !monotone || trace.len() >= g.num_profiles() {
            return Err(Error::InternalContradiction(format!(
                "iteration is not monotone at {} -> {}",
                g.profile_name(x),
                g.profile_name(next)
            )));
        }
        trace.push(next);
        x = next;
    }
}

/// Greatest or least equilibrium of a supermodular game, by iterating the
/// max or min selection of `Y_N` from the top or bottom of `S`.
///
/// The result is compared with the extremal element of the enumerated `E`.
pub fn extremal_equilibrium(g: &Game, dir: Direction) -> Result<Extremal> {
    let report = g.validate_supermodular();
    if !report.is_supermodular() {
        return Err(Error::PreconditionViolated(format!(
            "game is not supermodular: {}",
            report.failures(g).join("; ")
        )));
    }
    let result = iterate(g, dir, |x| g.joint_best_response(x))?;
    let e = equilibria_bruteforce(g);
    let expected = select(g.profile_order(), &e.profiles, dir);
    if expected != Some(result.profile) {
        return Err(Error::InternalContradiction(format!(
            "iteration reached {} but the enumerated extremal equilibrium is {:?}",
            g.profile_name(result.profile),
            expected.map(|x| g.profile_name(x))
        )));
    }
    Ok(result)
}

/// The same iteration driven by the max/min selection of `R`; only
/// meaningful for product-form games, where `R` has nonempty values.
pub fn extremal_by_joint_response(g: &Game, dir: Direction) -> Result<Extremal> {
    if !g.is_product_form() {
        return Err(Error::PreconditionViolated(
            "joint-response iteration needs a product-form game".into(),
        ));
    }
    iterate(g, dir, |x| g.joint_response(x))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductFormCheck {
    /// First profile with empty `R(x)`, if any.
    pub empty_response: Option<ProfileId>,
    pub fix_r_equals_fix_y: bool,
    pub iterations_agree: bool,
}

/// Hypotheses and conclusion of the monotone fixed-point theorem for `Y_N`,
/// each checked on the concrete game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TarskiZhouVerdict {
    /// `S` is a sublattice of `∏ S_i` (hence a complete lattice).
    pub feasible_lattice: Option<PairWitness>,
    /// `Y_N` is increasing; witness indices are profiles (domain) and
    /// product indices (values).
    pub increasing: Option<IncreasingWitness>,
    /// First `x` whose `Y_N(x)` is not a sublattice, with the escaping pair.
    pub sublattice_values: Option<(ProfileId, PairWitness)>,
    pub fixed_points: Vec<ProfileId>,
    pub fix_is_complete_lattice: bool,
    pub product_form: Option<ProductFormCheck>,
}

impl TarskiZhouVerdict {
    pub fn hypotheses_hold(&self) -> bool {
        self.feasible_lattice.is_none()
            && self.increasing.is_none()
            && self.sublattice_values.is_none()
    }

    pub fn conclusion_holds(&self) -> bool {
        !self.fixed_points.is_empty() && self.fix_is_complete_lattice
    }

    pub fn holds(&self) -> bool {
        self.hypotheses_hold()
            && self.conclusion_holds()
            && self.product_form.as_ref().is_none_or(|p| {
                p.empty_response.is_none() && p.fix_r_equals_fix_y && p.iterations_agree
            })
    }
}

pub fn tarski_zhou_check(g: &Game) -> Result<TarskiZhouVerdict> {
    let product = g.product();
    let feasible_lattice = product.is_sublattice(g.feasible_indices())?.witness;
    let all: Vec<usize> = (0..g.num_players()).collect();
    let corr = g.partial_response_correspondence(&all)?;
    let increasing = if feasible_lattice.is_none() {
        corr.increasing_violation()?
    } else {
        None
    };
    let mut sublattice_values = None;
    for x in 0..g.num_profiles() {
        if let Some(w) = product.is_sublattice(corr.image(x))?.witness {
            sublattice_values = Some((x, w));
            break;
        }
    }
    let fix: Vec<ProfileId> = (0..g.num_profiles())
        .filter(|&x| corr.image(x).binary_search(&g.product_index(x)).is_ok())
        .collect();
    let fix_is_complete_lattice =
        !fix.is_empty() && product.induced(&g.to_product(&fix))?.is_complete_lattice();
    let product_form = if g.is_product_form() {
        let empty_response =
            (0..g.num_profiles()).find(|&x| g.joint_response(x).unwrap().is_empty());
        let fix_r: Vec<ProfileId> = (0..g.num_profiles())
            .filter(|&x| g.joint_response(x).unwrap().binary_search(&x).is_ok())
            .collect();
        let iterations_agree =
            if feasible_lattice.is_none() && increasing.is_none() && empty_response.is_none() {
                [Direction::Greatest, Direction::Least].iter().all(|&d| {
                    match (
                        iterate(g, d, |x| g.joint_best_response(x)),
                        extremal_by_joint_response(g, d),
                    ) {
                        (Ok(a), Ok(b)) => a == b,
                        _ => false,
                    }
                })
            } else {
                false
            };
        Some(ProductFormCheck {
            empty_response,
            fix_r_equals_fix_y: fix_r == fix,
            iterations_agree,
        })
    } else {
        None
    };
    Ok(TarskiZhouVerdict {
        feasible_lattice,
        increasing,
        sublattice_values,
        fixed_points: fix,
        fix_is_complete_lattice,
        product_form,
    })
}

/// Everything known about `E` for one game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquilibriumReport {
    pub equilibria: EquilibriumSet,
    pub supermodular: bool,
    pub induced_is_lattice: bool,
    pub induced_is_complete: bool,
    pub completeness_mode: CheckMode,
    /// `None` when `S` itself is not a lattice.
    pub is_sublattice_of_s: Option<bool>,
    pub is_subcomplete_in_s: Option<bool>,
    pub max: Option<ProfileId>,
    pub min: Option<ProfileId>,
    /// Iterates from the top and from the bottom of `S`; present for
    /// supermodular games.
    pub greatest_trace: Option<Vec<ProfileId>>,
    pub least_trace: Option<Vec<ProfileId>>,
}

impl EquilibriumReport {
    pub fn nonempty(&self) -> bool {
        !self.equilibria.is_empty()
    }
}

pub fn equilibrium_report(g: &Game, exhaustive_cap: usize) -> Result<EquilibriumReport> {
    let equilibria = equilibria_bruteforce(g);
    let supermodular = g.validate_supermodular().is_supermodular();
    let e = &equilibria.profiles;
    let order = g.profile_order();
    let (induced_is_lattice, induced_is_complete, completeness_mode) = if e.is_empty() {
        (false, false, CheckMode::Exhaustive)
    } else {
        let induced = order.induced(e)?;
        let lattice = induced.is_lattice();
        if e.len() <= exhaustive_cap {
            let complete = induced.is_complete_lattice_exhaustive(exhaustive_cap)?;
            (lattice, complete, CheckMode::Exhaustive)
        } else {
            (lattice, lattice, CheckMode::FiniteEquivalence)
        }
    };
    let (is_sublattice_of_s, is_subcomplete_in_s) = if e.is_empty() || !order.is_lattice() {
        (None, None)
    } else {
        (
            Some(order.is_sublattice(e)?.holds()),
            Some(order.is_subcomplete(e, exhaustive_cap)?.holds()),
        )
    };
    let (greatest_trace, least_trace) = if supermodular {
        (
            Some(extremal_equilibrium(g, Direction::Greatest)?.trace),
            Some(extremal_equilibrium(g, Direction::Least)?.trace),
        )
    } else {
        (None, None)
    };
    if supermodular && (e.is_empty() || !induced_is_complete) {
        return Err(Error::InternalContradiction(
            "supermodular game whose equilibria do not form a nonempty complete lattice".into(),
        ));
    }
    Ok(EquilibriumReport {
        max: order.greatest_of(e),
        min: order.least_of(e),
        equilibria,
        supermodular,
        induced_is_lattice,
        induced_is_complete,
        completeness_mode,
        is_sublattice_of_s,
        is_subcomplete_in_s,
        greatest_trace,
        least_trace,
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt(b: Option<bool>) -> &'static str {
    b.map_or("n/a", yes_no)
}

impl EquilibriumReport {
    /// Plain-text rendering with stable line order.
    pub fn render(&self, g: &Game) -> String {
        let mut out = String::new();
        let names = |xs: &[ProfileId]| {
            xs.iter()
                .map(|&x| g.profile_name(x))
                .collect::<Vec<_>>()
                .join(" -> ")
        };
        writeln!(out, "equilibria: {}", self.equilibria.len()).unwrap();
        for &x in &self.equilibria.profiles {
            writeln!(out, "  {}", g.profile_name(x)).unwrap();
        }
        for (i, p) in g.players().iter().enumerate() {
            writeln!(out, "F[{p}]: {}", self.equilibria.f_sets[i].len()).unwrap();
        }
        writeln!(out, "supermodular: {}", yes_no(self.supermodular)).unwrap();
        writeln!(out, "nonempty: {}", yes_no(self.nonempty())).unwrap();
        writeln!(
            out,
            "induced order is a lattice: {}",
            yes_no(self.induced_is_lattice)
        )
        .unwrap();
        writeln!(
            out,
            "induced order is a complete lattice: {} ({})",
            yes_no(self.induced_is_complete),
            match self.completeness_mode {
                CheckMode::Exhaustive => "exhaustive",
                CheckMode::FiniteEquivalence => "pairwise, finite",
            }
        )
        .unwrap();
        writeln!(out, "sublattice of S: {}", opt(self.is_sublattice_of_s)).unwrap();
        writeln!(out, "subcomplete in S: {}", opt(self.is_subcomplete_in_s)).unwrap();
        let elem = |x: Option<ProfileId>| x.map_or("none".to_string(), |x| g.profile_name(x));
        writeln!(out, "greatest: {}", elem(self.max)).unwrap();
        writeln!(out, "least: {}", elem(self.min)).unwrap();
        if let Some(t) = &self.greatest_trace {
            writeln!(out, "iteration from top: {}", names(t)).unwrap();
        }
        if let Some(t) = &self.least_trace {
            writeln!(out, "iteration from bottom: {}", names(t)).unwrap();
        }
        out
    }

    /// Structured form, keyed like the game document.
    pub fn to_value(&self, g: &Game) -> Value {
        let names = |xs: &[ProfileId]| xs.iter().map(|&x| g.profile_name(x)).collect::<Vec<_>>();
        let f_sets: serde_json::Map<String, Value> = g
            .players()
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), json!(names(&self.equilibria.f_sets[i]))))
            .collect();
        json!({
            "name": g.name(),
            "equilibria": names(&self.equilibria.profiles),
            "f_sets": f_sets,
            "supermodular": self.supermodular,
            "nonempty": self.nonempty(),
            "induced_is_lattice": self.induced_is_lattice,
            "induced_is_complete": self.induced_is_complete,
            "is_sublattice_of_s": self.is_sublattice_of_s,
            "is_subcomplete_in_s": self.is_subcomplete_in_s,
            "greatest": self.max.map(|x| g.profile_name(x)),
            "least": self.min.map(|x| g.profile_name(x)),
            "iteration_from_top": self.greatest_trace.as_deref().map(names),
            "iteration_from_bottom": self.least_trace.as_deref().map(names),
        })
    }

    /// Hasse diagram of `S` with equilibria drawn as filled double circles.
    /// Covering pairs of the induced order on `E` that are not covering
    /// pairs of `S` are added as dashed edges.
    pub fn to_dot(&self, g: &Game) -> Result<String> {
        let order = g.profile_order();
        let mut out = String::new();
        writeln!(out, "digraph \"{}\" {{", escape(g.name().unwrap_or("game"))).unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        for x in 0..g.num_profiles() {
            let attrs = if self.equilibria.contains(x) {
                "shape=doublecircle, style=filled, fillcolor=lightblue"
            } else {
                "shape=ellipse"
            };
            writeln!(
                out,
                "  n{x} [label=\"{}\", {attrs}];",
                escape(&g.profile_name(x))
            )
            .unwrap();
        }
        let edges = order.hasse_edges();
        for &(a, b) in &edges {
            writeln!(out, "  n{a} -> n{b};").unwrap();
        }
        let e = &self.equilibria.profiles;
        if !e.is_empty() {
            let induced = order.induced(e)?;
            for (a, b) in induced.hasse_edges() {
                let (a, b) = (e[a], e[b]);
                if !edges.contains(&(a, b)) {
                    writeln!(out, "  n{a} -> n{b} [style=dashed, color=blue];").unwrap();
                }
            }
        }
        out.push_str("}\n");
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Feasible;
    use crate::poset::DEFAULT_PRODUCT_CAP;
    use crate::rational::Rational;

    fn two_player(feasible: Feasible, f: impl Fn(usize, &[usize]) -> i64) -> Game {
        let c2 = Poset::chain(2).unwrap();
        Game::new(
            None,
            vec!["1".into(), "2".into()],
            vec![c2.clone(), c2],
            feasible,
            DEFAULT_PRODUCT_CAP,
            |i, x| Some(Rational::integer(f(i, x))),
        )
        .unwrap()
    }

    fn names(g: &Game, xs: &[ProfileId]) -> Vec<String> {
        xs.iter().map(|&x| g.profile_name(x)).collect()
    }

    #[test]
    fn coordination_equilibria() {
        let g = two_player(Feasible::Product, |_, x| (x[0] == x[1]) as i64);
        assert_eq!(names(&g, &f_set(&g, 0).unwrap()), ["(0,0)", "(1,1)"]);
        let e = equilibria_bruteforce(&g);
        assert_eq!(names(&g, &e.profiles), ["(0,0)", "(1,1)"]);
        assert_eq!(fixed_points(&g, &ResponseKind::Joint).unwrap(), e.profiles);
        let top = extremal_equilibrium(&g, Direction::Greatest).unwrap();
        assert_eq!(g.profile_name(top.profile), "(1,1)");
        assert_eq!(top.trace.len(), 1);
        let r = equilibrium_report(&g, 12).unwrap();
        assert!(r.induced_is_complete && r.is_sublattice_of_s == Some(true));
        assert!(r.render(&g).contains("greatest: (1,1)"));
        assert!(tarski_zhou_check(&g).unwrap().holds());
    }

    #[test]
    fn anti_coordination_has_no_equilibrium() {
        let g = two_player(Feasible::Product, |i, x| {
            if i == 0 {
                (x[0] != x[1]) as i64
            } else {
                (x[0] == x[1]) as i64
            }
        });
        let e = equilibria_bruteforce(&g);
        assert!(e.is_empty());
        let r = equilibrium_report(&g, 12).unwrap();
        assert!(!r.nonempty() && !r.supermodular);
        assert!(matches!(
            extremal_equilibrium(&g, Direction::Greatest),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn diag2_sections_are_singletons() {
        let g = two_player(Feasible::Profiles(vec![vec![0, 0], vec![1, 1]]), |i, x| {
            x[i] as i64
        });
        let e = equilibria_bruteforce(&g);
        assert_eq!(names(&g, &e.profiles), ["(0,0)", "(1,1)"]);
        // R(x) can be empty off the product
        let origin = g.id_of(&[0, 0]).unwrap();
        assert_eq!(g.joint_response(origin).unwrap(), vec![origin]);
        for players in [vec![0], vec![1], vec![0, 1]] {
            assert_eq!(
                fixed_points(&g, &ResponseKind::Partial(players)).unwrap(),
                e.profiles
            );
        }
    }

    #[test]
    fn one_player_takes_largest_maximizer() {
        let c = Poset::chain(4).unwrap();
        let vals = [1, 3, 3, 2];
        let g = Game::new(
            None,
            vec!["p".into()],
            vec![c],
            Feasible::Product,
            64,
            |_, x| Some(Rational::integer(vals[x[0]])),
        )
        .unwrap();
        assert_eq!(equilibria_bruteforce(&g).profiles, vec![1, 2]);
        assert_eq!(
            extremal_equilibrium(&g, Direction::Greatest)
                .unwrap()
                .profile,
            2
        );
        assert_eq!(
            extremal_equilibrium(&g, Direction::Least).unwrap().profile,
            1
        );
    }

    #[test]
    fn dot_marks_equilibria() {
        let g = two_player(Feasible::Product, |_, x| (x[0] == x[1]) as i64);
        let r = equilibrium_report(&g, 12).unwrap();
        let dot = r.to_dot(&g).unwrap();
        assert_eq!(dot.matches("doublecircle").count(), 2);
        assert!(dot.contains("style=dashed"));
    }
}
