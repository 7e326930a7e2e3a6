//! The lattice `L = {m, M} ∪ {x0, x1, ...}`: an infinite anti-chain with a
//! bottom `m` and a top `M` adjoined.
//!
//! Subsets of `L` are either finite or cofinite, and [`CofiniteSet`] stores
//! only the finitely many tokens needed to describe one. The interval
//! topology of `L` is the cofinite topology: the closed rays are `{m}`, `L`,
//! `{m, xk, M}` and `{M}`, and finite unions of their intersections give all
//! finite sets. That topology is hard-coded here since it cannot be generated
//! over an infinite carrier.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::poset::{Bound, Poset};

/// A point of `L`. The derived order (`m`, then `x0, x1, ...`, then `M`) is
/// only the printing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Token {
    Bottom,
    X(u64),
    Top,
}

impl Token {
    /// The lattice order of `L`.
    pub fn leq(self, other: Token) -> bool {
        match (self, other) {
            (Token::Bottom, _) | (_, Token::Top) => true,
            (Token::X(a), Token::X(b)) => a == b,
            _ => false,
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Bottom => f.write_str("m"),
            Token::Top => f.write_str("M"),
            Token::X(k) => write!(f, "x{k}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    /// `data` lists the members.
    Finite,
    /// `data` lists the non-members.
    Cofinite,
}

/// A finite or cofinite subset of `L`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CofiniteSet {
    kind: Kind,
    data: BTreeSet<Token>,
}

impl CofiniteSet {
    pub fn finite(members: impl IntoIterator<Item = Token>) -> Self {
        CofiniteSet {
            kind: Kind::Finite,
            data: members.into_iter().collect(),
        }
    }

    /// `L` minus the given exceptions.
    pub fn cofinite(exceptions: impl IntoIterator<Item = Token>) -> Self {
        CofiniteSet {
            kind: Kind::Cofinite,
            data: exceptions.into_iter().collect(),
        }
    }

    pub fn empty() -> Self {
        Self::finite([])
    }

    pub fn whole() -> Self {
        Self::cofinite([])
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Members for a finite set, exceptions for a cofinite one.
    pub fn tokens(&self) -> &BTreeSet<Token> {
        &self.data
    }

    pub fn contains(&self, t: Token) -> bool {
        match self.kind {
            Kind::Finite => self.data.contains(&t),
            Kind::Cofinite => !self.data.contains(&t),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.kind == Kind::Finite && self.data.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.kind == Kind::Cofinite && self.data.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.kind == Kind::Finite
    }

    pub fn complement(&self) -> Self {
        CofiniteSet {
            kind: match self.kind {
                Kind::Finite => Kind::Cofinite,
                Kind::Cofinite => Kind::Finite,
            },
            data: self.data.clone(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        use Kind::*;
        match (self.kind, other.kind) {
            (Finite, Finite) => Self::finite(self.data.union(&other.data).copied()),
            (Cofinite, Cofinite) => Self::cofinite(self.data.intersection(&other.data).copied()),
            (Finite, Cofinite) => Self::cofinite(other.data.difference(&self.data).copied()),
            (Cofinite, Finite) => Self::cofinite(self.data.difference(&other.data).copied()),
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.complement().union(&other.complement()).complement()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.intersection(&other.complement()).is_empty()
    }

    /// The anti-chain members of a finite set; `None` when there are
    /// infinitely many.
    fn antichain_members(&self) -> Option<Vec<u64>> {
        match self.kind {
            Kind::Finite => Some(
                self.data
                    .iter()
                    .filter_map(|t| match t {
                        Token::X(k) => Some(*k),
                        _ => None,
                    })
                    .collect(),
            ),
            Kind::Cofinite => None,
        }
    }

    /// The first `n` anti-chain members in index order.
    fn first_antichain(&self, n: usize) -> Vec<u64> {
        match self.antichain_members() {
            Some(v) => v.into_iter().take(n).collect(),
            None => (0u64..)
                .filter(|&k| !self.data.contains(&Token::X(k)))
                .take(n)
                .collect(),
        }
    }
}

impl fmt::Display for CofiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = self
            .data
            .iter()
            .map(Token::to_string)
            .collect::<Vec<_>>()
            .join(", ");
        match self.kind {
            Kind::Finite => write!(f, "{{{list}}}"),
            Kind::Cofinite if self.data.is_empty() => f.write_str("L"),
            Kind::Cofinite => write!(f, "L \\ {{{list}}}"),
        }
    }
}

/// Supremum in `L` of a nonempty subset.
pub fn sym_sup(a: &CofiniteSet) -> Result<Token> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    if a.contains(Token::Top) {
        return Ok(Token::Top);
    }
    Ok(match a.antichain_members().as_deref() {
        None => Token::Top,
        Some([]) => Token::Bottom,
        Some([k]) => Token::X(*k),
        Some(_) => Token::Top,
    })
}

/// Infimum in `L` of a nonempty subset.
pub fn sym_inf(a: &CofiniteSet) -> Result<Token> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    if a.contains(Token::Bottom) {
        return Ok(Token::Bottom);
    }
    Ok(match a.antichain_members().as_deref() {
        None => Token::Bottom,
        Some([]) => Token::Top,
        Some([k]) => Token::X(*k),
        Some(_) => Token::Bottom,
    })
}

/// Closure in the cofinite topology: finite sets are closed, every infinite
/// set is dense.
pub fn sym_closure(a: &CofiniteSet) -> CofiniteSet {
    match a.kind() {
        Kind::Finite => a.clone(),
        Kind::Cofinite => CofiniteSet::whole(),
    }
}

pub fn sym_is_closed(a: &CofiniteSet) -> bool {
    sym_closure(a) == *a
}

pub const COMPACTNESS_SKETCH: &str = "every subset of a cofinite space is compact: \
any member of an open cover misses only finitely many points, and finitely many \
further members cover those";

/// Every subset of a cofinite space is compact.
pub fn sym_is_compact(_a: &CofiniteSet) -> (bool, &'static str) {
    (true, COMPACTNESS_SKETCH)
}

/// A finite subset of the tested set whose sup or inf escapes it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaWitness {
    pub subset: CofiniteSet,
    pub bound: Bound,
    pub value: Token,
}

/// Decides whether `a` contains the sup and inf of each of its nonempty
/// subsets.
///
/// With at most one anti-chain member, `a` lies in a chain `{m, x, M}` and
/// always qualifies. With two or more, any two of them have sup `M` and inf
/// `m`, and every other subset's bounds are `m`, `M`, or one of its own
/// members; so `m, M ∈ a` is necessary and sufficient.
pub fn sym_is_subcomplete(a: &CofiniteSet) -> Result<Option<OmegaWitness>> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let pair = a.first_antichain(2);
    if pair.len() < 2 {
        return Ok(None);
    }
    let subset = CofiniteSet::finite(pair.iter().map(|&k| Token::X(k)));
    if !a.contains(Token::Top) {
        return Ok(Some(OmegaWitness {
            subset,
            bound: Bound::Join,
            value: Token::Top,
        }));
    }
    if !a.contains(Token::Bottom) {
        return Ok(Some(OmegaWitness {
            subset,
            bound: Bound::Meet,
            value: Token::Bottom,
        }));
    }
    Ok(None)
}

/// The finite poset `{m, x0, ..., x(n-1), M}` with the order of `L`.
pub fn truncation(n: usize) -> Result<Poset> {
    let mut names = vec!["m".to_string()];
    names.extend((0..n).map(|k| format!("x{k}")));
    names.push("M".to_string());
    let top = n + 1;
    Poset::from_order_fn(names, |a, b| a == b || a == 0 || b == top)
}

/// Outcome of testing one of the two refuted claims on `L \ {x0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefutationReport {
    pub kind: u32,
    pub claim: &'static str,
    pub witness: CofiniteSet,
    pub closure: CofiniteSet,
    pub subcomplete: bool,
    pub compact: bool,
    pub closed: bool,
}

impl RefutationReport {
    /// Whether the witness actually contradicts the claim.
    pub fn refuted(&self) -> bool {
        match self.kind {
            1 => self.subcomplete != self.closed,
            _ => self.compact && !self.closed,
        }
    }

    pub fn render(&self) -> String {
        let mark = |b: bool| if b { "✓" } else { "✗" };
        format!(
            "claim {}: {}\n\
             lattice: L = {{m, M}} ∪ {{x0, x1, ...}}, m <= xk <= M, xi || xj\n\
             interval topology: cofinite\n\
             witness: {}\n\
             closure: {}\n\
             subcomplete {} compact {} closed {} — {}\n",
            self.kind,
            self.claim,
            self.witness,
            self.closure,
            mark(self.subcomplete),
            mark(self.compact),
            mark(self.closed),
            if self.refuted() {
                "Statement refuted"
            } else {
                "not refuted"
            }
        )
    }
}

/// Tests the claim "a sublattice of a complete lattice is subcomplete iff it
/// is closed in the interval topology" (`kind = 1`) or "compact subsets of a
/// complete lattice are closed in its interval topology" (`kind = 2`)
/// against `L \ {x0}`.
pub fn refute_statement(kind: u32) -> Result<RefutationReport> {
    let claim = match kind {
        1 => "a sublattice of a complete lattice is subcomplete iff it is closed in the interval topology",
        2 => "in the interval topology of a complete lattice, compact subsets are closed",
        other => return Err(Error::InvalidStatementKind(other)),
    };
    let witness = CofiniteSet::cofinite([Token::X(0)]);
    let closure = sym_closure(&witness);
    Ok(RefutationReport {
        kind,
        claim,
        subcomplete: sym_is_subcomplete(&witness)?.is_none(),
        compact: sym_is_compact(&witness).0,
        closed: closure == witness,
        closure,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Token::*;

    #[test]
    fn bounds() {
        let pair = CofiniteSet::finite([X(1), X(2)]);
        assert_eq!(sym_sup(&pair), Ok(Top));
        assert_eq!(sym_inf(&pair), Ok(Bottom));
        let one = CofiniteSet::finite([X(5)]);
        assert_eq!((sym_sup(&one), sym_inf(&one)), (Ok(X(5)), Ok(X(5))));
        let co = CofiniteSet::cofinite([X(0)]);
        assert_eq!((sym_sup(&co), sym_inf(&co)), (Ok(Top), Ok(Bottom)));
        let m = CofiniteSet::finite([Bottom]);
        assert_eq!((sym_sup(&m), sym_inf(&m)), (Ok(Bottom), Ok(Bottom)));
        let big_m = CofiniteSet::finite([Top]);
        assert_eq!((sym_sup(&big_m), sym_inf(&big_m)), (Ok(Top), Ok(Top)));
        assert_eq!(sym_sup(&CofiniteSet::empty()), Err(Error::EmptySet));
        // every element except M: sup is still M
        assert_eq!(sym_sup(&CofiniteSet::cofinite([Top])), Ok(Top));
    }

    #[test]
    fn closures() {
        let a = CofiniteSet::finite([Bottom, X(3)]);
        assert_eq!(sym_closure(&a), a);
        assert_eq!(sym_closure(&CofiniteSet::whole()), CofiniteSet::whole());
        let co = CofiniteSet::cofinite([X(0)]);
        assert_eq!(sym_closure(&co), CofiniteSet::whole());
        assert!(!sym_is_closed(&co));
    }

    #[test]
    fn compactness() {
        for a in [
            CofiniteSet::finite([X(4)]),
            CofiniteSet::cofinite([X(0)]),
            CofiniteSet::cofinite([X(1), X(2)]),
        ] {
            assert!(sym_is_compact(&a).0);
        }
    }

    #[test]
    fn subcompleteness() {
        assert_eq!(sym_is_subcomplete(&CofiniteSet::cofinite([X(0)])), Ok(None));
        let w = sym_is_subcomplete(&CofiniteSet::finite([X(1), X(2)]))
            .unwrap()
            .unwrap();
        assert_eq!(w.subset, CofiniteSet::finite([X(1), X(2)]));
        assert_eq!((w.bound, w.value), (Bound::Join, Top));
        assert_eq!(
            sym_is_subcomplete(&CofiniteSet::finite([Bottom, X(1), Top])),
            Ok(None)
        );
        // two anti-chain members of a cofinite set missing m
        let w = sym_is_subcomplete(&CofiniteSet::cofinite([Bottom, X(0)]))
            .unwrap()
            .unwrap();
        assert_eq!(w.subset, CofiniteSet::finite([X(1), X(2)]));
        assert_eq!(w.value, Bottom);
        assert_eq!(
            sym_is_subcomplete(&CofiniteSet::empty()),
            Err(Error::EmptySet)
        );
    }

    #[test]
    fn refutations() {
        for kind in [1, 2] {
            let r = refute_statement(kind).unwrap();
            assert!(r.subcomplete && r.compact && !r.closed);
            assert!(r.refuted());
            assert_eq!(r.witness.to_string(), "L \\ {x0}");
            assert!(r
                .render()
                .contains("subcomplete ✓ compact ✓ closed ✗ — Statement refuted"));
        }
        assert_eq!(refute_statement(3), Err(Error::InvalidStatementKind(3)));
    }

    #[test]
    fn display() {
        assert_eq!(
            CofiniteSet::finite([Top, X(2), Bottom]).to_string(),
            "{m, x2, M}"
        );
        assert_eq!(CofiniteSet::whole().to_string(), "L");
        assert_eq!(CofiniteSet::empty().to_string(), "{}");
    }

    #[test]
    fn truncation_is_a_lattice() {
        let p = truncation(3).unwrap();
        assert!(p.is_lattice());
        assert!(p.is_complete_lattice_exhaustive(12).unwrap());
        let xs = p.indices_of(&["x1", "x2"]).unwrap();
        assert_eq!(p.name(p.sup(&xs).unwrap().unwrap()), "M");
        let rest: Vec<usize> = (0..p.len()).filter(|&i| p.name(i) != "x0").collect();
        assert!(p.is_subcomplete(&rest, 12).unwrap().holds());
    }
}
