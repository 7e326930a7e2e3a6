//! Finite posets and the lattice algebra built on them.
//!
//! Elements are addressed by their position in the carrier (`usize`); names
//! are opaque strings kept for diagnostics and export. Every structural check
//! returns the first counterexample met in a deterministic scan over element
//! positions.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Default bound on the number of tuples a product may have.
///
/// The order relation is stored densely, so this is kept well below the
/// point where the quadratic matrix stops fitting in memory.
pub const DEFAULT_PRODUCT_CAP: usize = 4096;

/// Default bound on the size of a set checked subset-by-subset.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 12;

// Join/meet tables are memoized below this size.
const TABLE_LIMIT: usize = 256;

/// Which bound of a pair or subset a witness refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bound {
    Join,
    Meet,
}

impl Bound {
    pub fn as_str(self) -> &'static str {
        match self {
            Bound::Join => "join",
            Bound::Meet => "meet",
        }
    }
}

#[derive(Debug, Clone)]
struct Tables {
    join: Vec<Option<u32>>,
    meet: Vec<Option<u32>>,
}

/// A finite partially ordered set with its full (reflexive, transitive) order matrix.
#[derive(Debug, Clone)]
pub struct Poset {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<bool>,
    tables: OnceLock<Tables>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && self.leq == other.leq
    }
}

impl Eq for Poset {}

impl Poset {
    /// Builds a poset from element names and a generating set of order pairs.
    ///
    /// The relation is closed reflexively and transitively; a closure that
    /// identifies two distinct elements is rejected.
    pub fn new<E, A, B>(elements: E, pairs: impl IntoIterator<Item = (A, B)>) -> Result<Self>
    where
        E: IntoIterator,
        E::Item: Into<String>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        let index = build_index(&elements)?;
        let mut idx_pairs = Vec::new();
        for (a, b) in pairs {
            let lookup = |s: &str| {
                index
                    .get(s)
                    .copied()
                    .ok_or_else(|| Error::UnknownElement(s.to_string()))
            };
            idx_pairs.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        Self::close(elements, index, &idx_pairs)
    }

    /// Same as [`Poset::new`] with pairs given as carrier positions.
    pub fn from_indices(elements: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let index = build_index(&elements)?;
        for &(a, b) in pairs {
            for x in [a, b] {
                if x >= elements.len() {
                    return Err(Error::ElementOutOfCarrier(x));
                }
            }
        }
        Self::close(elements, index, pairs)
    }

    /// Builds a poset from a relation already known to be a partial order.
    pub(crate) fn from_order_fn(
        elements: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<Self> {
        let index = build_index(&elements)?;
        let n = elements.len();
        let mut m = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                m[a * n + b] = leq(a, b);
            }
        }
        debug_assert!(is_partial_order(&m, n));
        Ok(Self::from_parts(elements, index, m))
    }

    fn from_parts(elements: Vec<String>, index: HashMap<String, usize>, leq: Vec<bool>) -> Self {
        Poset {
            elements,
            index,
            leq,
            tables: OnceLock::new(),
        }
    }

    fn close(
        elements: Vec<String>,
        index: HashMap<String, usize>,
        pairs: &[(usize, usize)],
    ) -> Result<Self> {
        let n = elements.len();
        let mut m = vec![false; n * n];
        for i in 0..n {
            m[i * n + i] = true;
        }
        for &(a, b) in pairs {
            m[a * n + b] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if m[i * n + k] {
                    for j in 0..n {
                        if m[k * n + j] {
                            m[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if m[i * n + j] && m[j * n + i] {
                    return Err(Error::CycleDetected(
                        elements[i].clone(),
                        elements[j].clone(),
                    ));
                }
            }
        }
        Ok(Self::from_parts(elements, index, m))
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Result<Self> {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        Self::from_order_fn(names, |a, b| a <= b).and_then(nonempty)
    }

    /// `n` pairwise incomparable elements named `a0, a1, ...`.
    pub fn antichain(n: usize) -> Result<Self> {
        let names: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
        Self::from_order_fn(names, |a, b| a == b).and_then(nonempty)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, x: usize) -> &str {
        &self.elements[x]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    /// Resolves a list of names to carrier positions.
    pub fn indices_of<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        names.iter().map(|s| self.index_of(s.as_ref())).collect()
    }

    pub fn check(&self, x: usize) -> Result<usize> {
        if x < self.len() {
            Ok(x)
        } else {
            Err(Error::ElementOutOfCarrier(x))
        }
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// `↓x`, the closed interval `(-inf, x]`.
    pub fn down_set(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.leq(y, x)).collect()
    }

    /// `↑x`, the closed interval `[x, +inf)`.
    pub fn up_set(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.leq(x, y)).collect()
    }

    pub fn upper_bounds(&self, set: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&u| set.iter().all(|&a| self.leq(a, u)))
            .collect()
    }

    pub fn lower_bounds(&self, set: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&u| set.iter().all(|&a| self.leq(u, a)))
            .collect()
    }

    /// Least element of `candidates`, if one exists.
    pub fn least_of(&self, candidates: &[usize]) -> Option<usize> {
        let mut best: Option<usize> = None;
        for &c in candidates {
            match best {
                Some(b) if !self.leq(c, b) => {}
                _ => best = Some(c),
            }
        }
        let b = best?;
        candidates.iter().all(|&c| self.leq(b, c)).then_some(b)
    }

    /// Greatest element of `candidates`, if one exists.
    pub fn greatest_of(&self, candidates: &[usize]) -> Option<usize> {
        let mut best: Option<usize> = None;
        for &c in candidates {
            match best {
                Some(b) if !self.leq(b, c) => {}
                _ => best = Some(c),
            }
        }
        let b = best?;
        candidates.iter().all(|&c| self.leq(c, b)).then_some(b)
    }

    pub fn top(&self) -> Option<usize> {
        self.greatest_of(&(0..self.len()).collect::<Vec<_>>())
    }

    pub fn bottom(&self) -> Option<usize> {
        self.least_of(&(0..self.len()).collect::<Vec<_>>())
    }

    fn scan_join(&self, a: usize, b: usize) -> Option<usize> {
        self.least_of(&self.upper_bounds(&[a, b]))
    }

    fn scan_meet(&self, a: usize, b: usize) -> Option<usize> {
        self.greatest_of(&self.lower_bounds(&[a, b]))
    }

    fn tables(&self) -> Option<&Tables> {
        let n = self.len();
        if n > TABLE_LIMIT {
            return None;
        }
        Some(self.tables.get_or_init(|| {
            let mut join = vec![None; n * n];
            let mut meet = vec![None; n * n];
            for a in 0..n {
                for b in a..n {
                    let j = self.scan_join(a, b).map(|x| x as u32);
                    let m = self.scan_meet(a, b).map(|x| x as u32);
                    join[a * n + b] = j;
                    join[b * n + a] = j;
                    meet[a * n + b] = m;
                    meet[b * n + a] = m;
                }
            }
            Tables { join, meet }
        }))
    }

    /// Least upper bound of `{a, b}`, if it exists.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        match self.tables() {
            Some(t) => t.join[a * self.len() + b].map(|x| x as usize),
            None => self.scan_join(a, b),
        }
    }

    /// Greatest lower bound of `{a, b}`, if it exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        match self.tables() {
            Some(t) => t.meet[a * self.len() + b].map(|x| x as usize),
            None => self.scan_meet(a, b),
        }
    }

    pub fn bound(&self, kind: Bound, a: usize, b: usize) -> Option<usize> {
        match kind {
            Bound::Join => self.join(a, b),
            Bound::Meet => self.meet(a, b),
        }
    }

    /// Supremum of a nonempty subset, found by scanning its upper bounds.
    pub fn sup(&self, set: &[usize]) -> Result<Option<usize>> {
        if set.is_empty() {
            return Err(Error::EmptySubset);
        }
        for &x in set {
            self.check(x)?;
        }
        Ok(self.least_of(&self.upper_bounds(set)))
    }

    /// Infimum of a nonempty subset, found by scanning its lower bounds.
    pub fn inf(&self, set: &[usize]) -> Result<Option<usize>> {
        if set.is_empty() {
            return Err(Error::EmptySubset);
        }
        for &x in set {
            self.check(x)?;
        }
        Ok(self.greatest_of(&self.lower_bounds(set)))
    }

    pub fn subset_bound(&self, kind: Bound, set: &[usize]) -> Result<Option<usize>> {
        match kind {
            Bound::Join => self.sup(set),
            Bound::Meet => self.inf(set),
        }
    }

    /// First pair lacking a join or meet.
    pub fn lattice_violation(&self) -> Option<(usize, usize, Bound)> {
        let n = self.len();
        for a in 0..n {
            for b in a..n {
                for kind in [Bound::Join, Bound::Meet] {
                    if self.bound(kind, a, b).is_none() {
                        return Some((a, b, kind));
                    }
                }
            }
        }
        None
    }

    pub fn is_lattice(&self) -> bool {
        self.lattice_violation().is_none()
    }

    pub(crate) fn require_lattice(&self) -> Result<()> {
        match self.lattice_violation() {
            None => Ok(()),
            Some((a, b, kind)) => Err(self.not_a_lattice(a, b, kind)),
        }
    }

    fn not_a_lattice(&self, a: usize, b: usize, kind: Bound) -> Error {
        Error::NotALattice(
            self.elements[a].clone(),
            self.elements[b].clone(),
            kind.as_str(),
        )
    }

    /// Finite lattices are complete, so this is [`Poset::is_lattice`].
    pub fn is_complete_lattice(&self) -> bool {
        self.is_lattice()
    }

    /// Checks sup and inf of every nonempty subset of the carrier.
    ///
    /// Returns the first subset (in bitmask order) lacking a sup or inf.
    pub fn complete_lattice_violation_exhaustive(
        &self,
        cap: usize,
    ) -> Result<Option<(Vec<usize>, Bound)>> {
        let n = self.len();
        if n > cap || n >= 64 {
            return Err(Error::ExhaustiveTooLarge { size: n, cap });
        }
        let all: Vec<usize> = (0..n).collect();
        for mask in 1u64..(1u64 << n) {
            let subset = select(&all, mask);
            for kind in [Bound::Join, Bound::Meet] {
                if self.subset_bound(kind, &subset)?.is_none() {
                    return Ok(Some((subset, kind)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_complete_lattice_exhaustive(&self, cap: usize) -> Result<bool> {
        Ok(self.complete_lattice_violation_exhaustive(cap)?.is_none())
    }

    /// The order restricted to `members`, kept in carrier order.
    pub fn induced(&self, members: &[usize]) -> Result<Poset> {
        if members.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut keep: Vec<usize> = members
            .iter()
            .map(|&x| self.check(x))
            .collect::<Result<_>>()?;
        keep.sort_unstable();
        keep.dedup();
        let names = keep.iter().map(|&x| self.elements[x].clone()).collect();
        Poset::from_order_fn(names, |a, b| self.leq(keep[a], keep[b]))
    }

    /// Checks closure of `set` under the ambient pairwise join and meet.
    pub fn is_sublattice(&self, set: &[usize]) -> Result<SublatticeVerdict> {
        let set = normalize(self, set)?;
        for (i, &a) in set.iter().enumerate() {
            for &b in &set[i..] {
                for kind in [Bound::Join, Bound::Meet] {
                    let v = self
                        .bound(kind, a, b)
                        .ok_or_else(|| self.not_a_lattice(a, b, kind))?;
                    if set.binary_search(&v).is_err() {
                        return Ok(SublatticeVerdict {
                            witness: Some(PairWitness {
                                a,
                                b,
                                bound: kind,
                                value: v,
                            }),
                        });
                    }
                }
            }
        }
        Ok(SublatticeVerdict { witness: None })
    }

    /// Checks that `set` contains the ambient sup and inf of each of its
    /// nonempty subsets.
    ///
    /// Sets of at most `cap` elements are checked subset by subset. Larger
    /// ones are decided by the pairwise test, which is equivalent on a finite
    /// ambient lattice; the verdict records which mode ran.
    pub fn is_subcomplete(&self, set: &[usize], cap: usize) -> Result<SubcompleteVerdict> {
        let set = normalize(self, set)?;
        if set.len() > cap || set.len() >= 64 {
            self.require_lattice()?;
            let v = self.is_sublattice(&set)?;
            return Ok(SubcompleteVerdict {
                mode: CheckMode::FiniteEquivalence,
                witness: v.witness.map(|w| SubsetWitness {
                    subset: vec![w.a, w.b],
                    bound: w.bound,
                    value: w.value,
                }),
            });
        }
        self.exhaustive_subcomplete(&set)
    }

    pub(crate) fn exhaustive_subcomplete(&self, set: &[usize]) -> Result<SubcompleteVerdict> {
        for mask in 1u64..(1u64 << set.len()) {
            let subset = select(set, mask);
            for kind in [Bound::Join, Bound::Meet] {
                let v = self
                    .subset_bound(kind, &subset)?
                    .ok_or_else(|| self.not_a_lattice(subset[0], *subset.last().unwrap(), kind))?;
                if set.binary_search(&v).is_err() {
                    return Ok(SubcompleteVerdict {
                        mode: CheckMode::Exhaustive,
                        witness: Some(SubsetWitness {
                            subset,
                            bound: kind,
                            value: v,
                        }),
                    });
                }
            }
        }
        Ok(SubcompleteVerdict {
            mode: CheckMode::Exhaustive,
            witness: None,
        })
    }

    /// Covering pairs `(a, b)`: `a < b` with nothing strictly between.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    edges.push((a, b));
                }
            }
        }
        edges
    }

    /// Graphviz rendering of the Hasse diagram, bottom to top.
    pub fn to_dot(&self, graph_name: &str) -> String {
        let mut out = String::new();
        writeln!(out, "digraph \"{}\" {{", escape(graph_name)).unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        for (i, e) in self.elements.iter().enumerate() {
            writeln!(out, "  n{i} [label=\"{}\"];", escape(e)).unwrap();
        }
        for (a, b) in self.hasse_edges() {
            writeln!(out, "  n{a} -> n{b};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn nonempty(p: Poset) -> Result<Poset> {
    if p.is_empty() {
        Err(Error::EmptyPoset)
    } else {
        Ok(p)
    }
}

fn build_index(elements: &[String]) -> Result<HashMap<String, usize>> {
    if elements.is_empty() {
        return Err(Error::EmptyPoset);
    }
    let mut index = HashMap::with_capacity(elements.len());
    for (i, e) in elements.iter().enumerate() {
        if index.insert(e.clone(), i).is_some() {
            return Err(Error::DuplicateElement(e.clone()));
        }
    }
    Ok(index)
}

fn is_partial_order(m: &[bool], n: usize) -> bool {
    (0..n).all(|i| m[i * n + i])
        && (0..n).all(|i| (0..n).all(|j| i == j || !(m[i * n + j] && m[j * n + i])))
        && (0..n)
            .all(|i| (0..n).all(|j| !m[i * n + j] || (0..n).all(|k| !m[j * n + k] || m[i * n + k])))
}

fn normalize(p: &Poset, set: &[usize]) -> Result<Vec<usize>> {
    if set.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut s: Vec<usize> = set.iter().map(|&x| p.check(x)).collect::<Result<_>>()?;
    s.sort_unstable();
    s.dedup();
    Ok(s)
}

/// Members of `items` picked by the bits of `mask`.
pub(crate) fn select(items: &[usize], mask: u64) -> Vec<usize> {
    items
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &x)| x)
        .collect()
}

/// A pair of members whose ambient join or meet escapes the subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairWitness {
    pub a: usize,
    pub b: usize,
    pub bound: Bound,
    pub value: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SublatticeVerdict {
    pub witness: Option<PairWitness>,
}

impl SublatticeVerdict {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    Exhaustive,
    FiniteEquivalence,
}

/// A subset whose ambient sup or inf escapes the enclosing set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetWitness {
    pub subset: Vec<usize>,
    pub bound: Bound,
    pub value: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubcompleteVerdict {
    pub mode: CheckMode,
    pub witness: Option<SubsetWitness>,
}

impl SubcompleteVerdict {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Mixed-radix addressing of tuples in a product of finite sets.
///
/// The first coordinate is the most significant, so index order is the
/// lexicographic order of coordinate tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductShape {
    radices: Vec<usize>,
    strides: Vec<usize>,
    size: usize,
}

impl ProductShape {
    pub fn new(radices: Vec<usize>, cap: usize) -> Result<Self> {
        let size: u128 = radices.iter().map(|&r| r as u128).product();
        if size > cap as u128 {
            return Err(Error::ProductTooLarge { size, cap });
        }
        let mut strides = vec![1; radices.len()];
        for i in (0..radices.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * radices[i + 1];
        }
        Ok(ProductShape {
            radices,
            strides,
            size: size as usize,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn arity(&self) -> usize {
        self.radices.len()
    }

    pub fn radices(&self) -> &[usize] {
        &self.radices
    }

    pub fn stride(&self, i: usize) -> usize {
        self.strides[i]
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    pub fn coord(&self, index: usize, i: usize) -> usize {
        index / self.strides[i] % self.radices[i]
    }

    pub fn decode(&self, index: usize) -> Vec<usize> {
        (0..self.arity()).map(|i| self.coord(index, i)).collect()
    }

    /// `index` with coordinate `i` replaced by `value`.
    pub fn replace(&self, index: usize, i: usize, value: usize) -> usize {
        index - self.coord(index, i) * self.strides[i] + value * self.strides[i]
    }
}

/// Renders a tuple of names as `(a,b,...)`.
pub fn tuple_name<S: AsRef<str>>(parts: &[S]) -> String {
    let inner: Vec<&str> = parts.iter().map(AsRef::as_ref).collect();
    format!("({})", inner.join(","))
}

/// Product of posets under the componentwise order.
pub fn product_poset(factors: &[Poset], cap: usize) -> Result<Poset> {
    if factors.is_empty() {
        return Err(Error::EmptySubset);
    }
    let shape = ProductShape::new(factors.iter().map(Poset::len).collect(), cap)?;
    let names = (0..shape.size())
        .map(|idx| {
            let parts: Vec<&str> = factors
                .iter()
                .enumerate()
                .map(|(i, f)| f.name(shape.coord(idx, i)))
                .collect();
            tuple_name(&parts)
        })
        .collect();
    Poset::from_order_fn(names, |a, b| {
        factors
            .iter()
            .enumerate()
            .all(|(i, f)| f.leq(shape.coord(a, i), shape.coord(b, i)))
    })
}

/// A set-valued map between two posets with nonempty values.
#[derive(Debug, Clone)]
pub struct Correspondence<'a> {
    domain: &'a Poset,
    codomain: &'a Poset,
    images: Vec<Vec<usize>>,
}

/// `t <= t2`, `x` in the image of `t`, `x2` in the image of `t2`, and the
/// named bound of `x, x2` falls outside the image it must belong to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncreasingWitness {
    pub t: usize,
    pub t2: usize,
    pub x: usize,
    pub x2: usize,
    pub bound: Bound,
    pub value: usize,
}

impl<'a> Correspondence<'a> {
    /// `images[t]` is the value at domain element `t`.
    pub fn new(domain: &'a Poset, codomain: &'a Poset, images: Vec<Vec<usize>>) -> Result<Self> {
        if images.len() != domain.len() {
            return Err(Error::PreconditionViolated(format!(
                "correspondence has {} values for a domain of {}",
                images.len(),
                domain.len()
            )));
        }
        let images = images
            .iter()
            .map(|img| normalize(codomain, img).map_err(|_| Error::EmptySet))
            .collect::<Result<_>>()?;
        Ok(Correspondence {
            domain,
            codomain,
            images,
        })
    }

    pub fn image(&self, t: usize) -> &[usize] {
        &self.images[t]
    }

    /// For all `t <= t2`, `x` in `φ(t)`, `x2` in `φ(t2)`: `x ∧ x2 ∈ φ(t)` and
    /// `x ∨ x2 ∈ φ(t2)`.
    pub fn increasing_violation(&self) -> Result<Option<IncreasingWitness>> {
        let cod = self.codomain;
        for t in 0..self.domain.len() {
            for t2 in 0..self.domain.len() {
                if !self.domain.leq(t, t2) {
                    continue;
                }
                let (lo, hi) = (&self.images[t], &self.images[t2]);
                for &x in lo {
                    for &x2 in hi {
                        let m = cod
                            .meet(x, x2)
                            .ok_or_else(|| cod.not_a_lattice(x, x2, Bound::Meet))?;
                        if lo.binary_search(&m).is_err() {
                            return Ok(Some(IncreasingWitness {
                                t,
                                t2,
                                x,
                                x2,
                                bound: Bound::Meet,
                                value: m,
                            }));
                        }
                        let j = cod
                            .join(x, x2)
                            .ok_or_else(|| cod.not_a_lattice(x, x2, Bound::Join))?;
                        if hi.binary_search(&j).is_err() {
                            return Ok(Some(IncreasingWitness {
                                t,
                                t2,
                                x,
                                x2,
                                bound: Bound::Join,
                                value: j,
                            }));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn is_increasing(&self) -> Result<bool> {
        Ok(self.increasing_violation()?.is_none())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> Poset {
        Poset::new(
            ["m", "x", "y", "M"],
            [("m", "x"), ("m", "y"), ("x", "M"), ("y", "M")],
        )
        .unwrap()
    }

    fn idx(p: &Poset, names: &[&str]) -> Vec<usize> {
        p.indices_of(names).unwrap()
    }

    #[test]
    fn singleton_is_reflexive() {
        let p = Poset::new(["a"], Vec::<(&str, &str)>::new()).unwrap();
        assert!(p.leq(0, 0));
        assert!(p.is_lattice());
    }

    #[test]
    fn rejects_cycles_duplicates_and_unknowns() {
        assert_eq!(
            Poset::new(["a", "b"], [("a", "b"), ("b", "a")]),
            Err(Error::CycleDetected("a".into(), "b".into()))
        );
        assert_eq!(
            Poset::new(["a", "a"], Vec::<(&str, &str)>::new()),
            Err(Error::DuplicateElement("a".into()))
        );
        assert_eq!(
            Poset::new(["a"], [("a", "z")]),
            Err(Error::UnknownElement("z".into()))
        );
        assert_eq!(
            Poset::new(Vec::<String>::new(), Vec::<(&str, &str)>::new()),
            Err(Error::EmptyPoset)
        );
    }

    #[test]
    fn diamond_closure_matches_reachability() {
        let p = diamond();
        // reachability oracle over the generating pairs
        let gens = [(0, 1), (0, 2), (1, 3), (2, 3)];
        for a in 0..4 {
            let mut seen = [false; 4];
            let mut stack = vec![a];
            while let Some(x) = stack.pop() {
                if !seen[x] {
                    seen[x] = true;
                    stack.extend(gens.iter().filter(|g| g.0 == x).map(|g| g.1));
                }
            }
            for (b, &reached) in seen.iter().enumerate() {
                assert_eq!(p.leq(a, b), reached, "{a} <= {b}");
            }
        }
        assert!(p.leq(0, 3));
    }

    #[test]
    fn joins_and_meets() {
        let p = diamond();
        let [m, x, y, top] = [0, 1, 2, 3];
        assert_eq!(p.join(x, y), Some(top));
        assert_eq!(p.meet(x, y), Some(m));
        let anti = Poset::antichain(4).unwrap();
        assert_eq!(anti.join(0, 1), None);
        let c = Poset::chain(3).unwrap();
        assert_eq!(c.join(0, 2), Some(2));
        assert_eq!(c.meet(0, 2), Some(0));
    }

    #[test]
    fn subset_bounds() {
        let p = diamond();
        assert_eq!(p.sup(&[1]), Ok(Some(1)));
        assert_eq!(p.sup(&[0, 1, 2]), Ok(Some(3)));
        assert_eq!(p.inf(&[1, 2, 3]), Ok(Some(0)));
        assert_eq!(p.sup(&[]), Err(Error::EmptySubset));
    }

    #[test]
    fn sup_exists_without_pairwise_joins() {
        // a, b have upper bounds c, d incomparable; but {a, b, c} has sup c.
        let p = Poset::new(
            ["a", "b", "c", "d"],
            [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
        )
        .unwrap();
        assert_eq!(p.join(0, 1), None);
        assert_eq!(p.sup(&[0, 1, 2]), Ok(Some(2)));
        assert!(!p.is_lattice());
    }

    #[test]
    fn lattice_predicates() {
        let c = Poset::chain(5).unwrap();
        assert!(c.is_lattice());
        assert!(c.is_complete_lattice_exhaustive(12).unwrap());
        let a = Poset::antichain(2).unwrap();
        assert!(!a.is_lattice());
        assert!(!a.is_complete_lattice_exhaustive(12).unwrap());
        assert!(matches!(
            Poset::chain(13).unwrap().is_complete_lattice_exhaustive(12),
            Err(Error::ExhaustiveTooLarge { .. })
        ));
    }

    #[test]
    fn products() {
        let c2 = Poset::chain(2).unwrap();
        let c3 = Poset::chain(3).unwrap();
        let sq = product_poset(&[c2.clone(), c2.clone()], DEFAULT_PRODUCT_CAP).unwrap();
        assert_eq!(sq.len(), 4);
        assert_eq!(sq.hasse_edges().len(), 4);
        let grid = product_poset(&[c2.clone(), c3.clone()], DEFAULT_PRODUCT_CAP).unwrap();
        let a = grid.index_of("(1,0)").unwrap();
        let b = grid.index_of("(0,2)").unwrap();
        assert_eq!(grid.name(grid.join(a, b).unwrap()), "(1,2)");
        let one = Poset::chain(1).unwrap();
        let same = product_poset(&[one, c3.clone()], DEFAULT_PRODUCT_CAP).unwrap();
        assert_eq!(same.len(), 3);
        assert_eq!(same.hasse_edges(), c3.hasse_edges());
        assert!(matches!(
            product_poset(&[c3.clone(), c3.clone()], 8),
            Err(Error::ProductTooLarge { size: 9, cap: 8 })
        ));
    }

    #[test]
    fn induced_orders() {
        let p = diamond();
        assert_eq!(p.induced(&[0, 1, 2, 3]).unwrap(), p);
        let c = p.induced(&[0, 3]).unwrap();
        assert!(c.lt(0, 1));
        let grid = product_poset(
            &[Poset::chain(2).unwrap(), Poset::chain(3).unwrap()],
            DEFAULT_PRODUCT_CAP,
        )
        .unwrap();
        let keep = idx(&grid, &["(0,0)", "(1,1)", "(0,2)"]);
        let q = grid.induced(&keep).unwrap();
        let (o, d, e) = (
            q.index_of("(0,0)").unwrap(),
            q.index_of("(1,1)").unwrap(),
            q.index_of("(0,2)").unwrap(),
        );
        assert!(q.leq(o, d) && q.leq(o, e));
        assert!(!q.comparable(d, e));
        assert_eq!(p.induced(&[]), Err(Error::EmptySubset));
    }

    #[test]
    fn sublattice_and_subcomplete() {
        let p = diamond();
        assert!(p.is_sublattice(&[0, 3]).unwrap().holds());
        let v = p.is_sublattice(&[1, 2]).unwrap();
        assert_eq!(
            v.witness,
            Some(PairWitness {
                a: 1,
                b: 2,
                bound: Bound::Join,
                value: 3
            })
        );
        assert!(p.is_subcomplete(&[0, 1, 2, 3], 12).unwrap().holds());
        let s = p.is_subcomplete(&[1, 2], 12).unwrap();
        assert_eq!(s.mode, CheckMode::Exhaustive);
        assert!(!s.holds());
        let s = p.is_subcomplete(&[1, 2], 1).unwrap();
        assert_eq!(s.mode, CheckMode::FiniteEquivalence);
        assert!(!s.holds());
        let anti = Poset::antichain(3).unwrap();
        assert!(matches!(
            anti.is_sublattice(&[0, 1]),
            Err(Error::NotALattice(..))
        ));
    }

    #[test]
    fn increasing_correspondences() {
        let d = diamond();
        let c2 = Poset::chain(2).unwrap();
        let constant = Correspondence::new(&c2, &d, vec![vec![0, 3], vec![0, 3]]).unwrap();
        assert!(constant.is_increasing().unwrap());
        let bad = Correspondence::new(&c2, &d, vec![vec![1], vec![2]]).unwrap();
        let w = bad.increasing_violation().unwrap().unwrap();
        assert_eq!((w.bound, w.value), (Bound::Meet, 0));
        assert!(Correspondence::new(&c2, &d, vec![vec![0], vec![]]).is_err());
    }

    #[test]
    fn hasse_and_dot() {
        let c = Poset::chain(3).unwrap();
        assert_eq!(c.hasse_edges(), vec![(0, 1), (1, 2)]);
        let d = diamond();
        assert_eq!(d.hasse_edges(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        let dot = d.to_dot("diamond");
        assert!(dot.contains("rankdir=BT"));
        assert_eq!(dot.matches("->").count(), 4);
    }

    #[test]
    fn product_shape_roundtrip() {
        let s = ProductShape::new(vec![2, 3, 4], 100).unwrap();
        for i in 0..s.size() {
            assert_eq!(s.encode(&s.decode(i)), i);
        }
        assert_eq!(s.replace(s.encode(&[1, 2, 3]), 1, 0), s.encode(&[1, 0, 3]));
    }
}
