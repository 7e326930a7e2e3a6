//! Topologies on finite carriers, described by their closed sets.
//!
//! On a finite carrier the closed sets are closed under arbitrary unions and
//! intersections, so a topology is pinned down by the closure of each point:
//! a set is closed exactly when it contains the closure of each of its
//! points. [`FiniteTopology`] stores those point closures as bitmasks, which
//! keeps products of a few dozen points tractable while the closed-set
//! family itself can be materialized for small carriers.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::poset::{product_poset, Poset, ProductShape};

/// A subset of a carrier of at most 128 points.
pub type PointSet = u128;

/// Hard limit imposed by [`PointSet`].
pub const MAX_CARRIER: usize = 128;

/// Default bound on the carrier size when listing every closed set.
pub const DEFAULT_MATERIALIZE_CAP: usize = 16;

pub fn point_set(members: &[usize]) -> PointSet {
    members.iter().fold(0, |acc, &i| acc | 1 << i)
}

pub fn members(set: PointSet) -> Vec<usize> {
    (0..MAX_CARRIER).filter(|&i| set >> i & 1 == 1).collect()
}

fn full(n: usize) -> PointSet {
    if n == MAX_CARRIER {
        PointSet::MAX
    } else {
        (1 << n) - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTopology {
    carrier: Vec<String>,
    closure: Vec<PointSet>,
}

impl FiniteTopology {
    /// The topology whose closed sets are generated by `subbasis`.
    ///
    /// The closure of a point is the intersection of the subbasis members
    /// containing it (the whole carrier when there are none).
    pub fn generate(carrier: Vec<String>, subbasis: &[Vec<usize>]) -> Result<Self> {
        let n = carrier.len();
        if n > MAX_CARRIER {
            return Err(Error::CarrierTooLarge(n, MAX_CARRIER));
        }
        let mut sets = Vec::with_capacity(subbasis.len());
        for member in subbasis {
            if let Some(&bad) = member.iter().find(|&&x| x >= n) {
                return Err(Error::ElementOutOfCarrier(bad));
            }
            sets.push(point_set(member));
        }
        Ok(Self::from_masks(carrier, &sets))
    }

    fn from_masks(carrier: Vec<String>, subbasis: &[PointSet]) -> Self {
        let whole = full(carrier.len());
        let closure = (0..carrier.len())
            .map(|p| {
                subbasis
                    .iter()
                    .filter(|&&s| s >> p & 1 == 1)
                    .fold(whole, |acc, &s| acc & s)
            })
            .collect();
        FiniteTopology { carrier, closure }
    }

    pub fn discrete(carrier: Vec<String>) -> Result<Self> {
        let singletons: Vec<Vec<usize>> = (0..carrier.len()).map(|i| vec![i]).collect();
        Self::generate(carrier, &singletons)
    }

    pub fn indiscrete(carrier: Vec<String>) -> Result<Self> {
        Self::generate(carrier, &[])
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    /// Smallest closed set containing point `p`.
    pub fn point_closure(&self, p: usize) -> PointSet {
        self.closure[p]
    }

    pub fn closure_of(&self, set: PointSet) -> PointSet {
        (0..self.len())
            .filter(|&p| set >> p & 1 == 1)
            .fold(0, |acc, p| acc | self.closure[p])
    }

    pub fn is_closed(&self, set: PointSet) -> bool {
        set & !full(self.len()) == 0 && self.closure_of(set) == set
    }

    pub fn is_discrete(&self) -> bool {
        self.closure.iter().enumerate().all(|(p, &c)| c == 1 << p)
    }

    /// Every closed set, in increasing bitmask order.
    pub fn closed_sets(&self, cap: usize) -> Result<Vec<PointSet>> {
        let n = self.len();
        if n > cap || n >= 64 {
            return Err(Error::CarrierTooLarge(n, cap.min(63)));
        }
        Ok((0..(1u128 << n)).filter(|&s| self.is_closed(s)).collect())
    }

    /// One closed set per line, members comma-separated in carrier order,
    /// lines sorted lexicographically.
    pub fn dump(&self, cap: usize) -> Result<String> {
        let mut lines: Vec<String> = self
            .closed_sets(cap)?
            .into_iter()
            .map(|s| {
                members(s)
                    .into_iter()
                    .map(|i| self.carrier[i].as_str())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        lines.sort();
        let mut out = String::new();
        for l in lines {
            writeln!(out, "{l}").unwrap();
        }
        Ok(out)
    }

    /// Subspace topology on `subset`, with closed sets `C ∩ subset`.
    pub fn restrict(&self, subset: &[usize]) -> Result<Self> {
        let mut keep = subset.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&bad) = keep.iter().find(|&&x| x >= self.len()) {
            return Err(Error::ElementOutOfCarrier(bad));
        }
        let carrier = keep.iter().map(|&i| self.carrier[i].clone()).collect();
        let closure = keep
            .iter()
            .map(|&p| {
                let c = self.closure[p];
                keep.iter()
                    .enumerate()
                    .filter(|(_, &q)| c >> q & 1 == 1)
                    .fold(0, |acc, (j, _)| acc | 1 << j)
            })
            .collect();
        Ok(FiniteTopology { carrier, closure })
    }

    /// Whether every closed set of `other` is closed here.
    pub fn finer_than(&self, other: &Self) -> Result<bool> {
        if self.carrier != other.carrier {
            return Err(Error::CarrierMismatch);
        }
        Ok(self
            .closure
            .iter()
            .zip(&other.closure)
            .all(|(&mine, &theirs)| mine & !theirs == 0))
    }
}

/// The topology generated by the closed rays `↓x` and `↑x`.
pub fn interval_topology(p: &Poset) -> Result<FiniteTopology> {
    let mut subbasis = Vec::with_capacity(2 * p.len());
    for x in 0..p.len() {
        subbasis.push(p.down_set(x));
        subbasis.push(p.up_set(x));
    }
    FiniteTopology::generate(p.elements().to_vec(), &subbasis)
}

/// Product topology, generated by the cylinders over each factor's closed sets.
///
/// Carrier points are ordered and named as in [`product_poset`].
pub fn product_topology(factors: &[FiniteTopology], cap: usize) -> Result<FiniteTopology> {
    if factors.is_empty() {
        return Err(Error::EmptySubset);
    }
    let shape = ProductShape::new(factors.iter().map(FiniteTopology::len).collect(), cap)?;
    if shape.size() > MAX_CARRIER {
        return Err(Error::CarrierTooLarge(shape.size(), MAX_CARRIER));
    }
    let carrier = (0..shape.size())
        .map(|idx| {
            let parts: Vec<&str> = factors
                .iter()
                .enumerate()
                .map(|(i, t)| t.carrier[shape.coord(idx, i)].as_str())
                .collect();
            crate::poset::tuple_name(&parts)
        })
        .collect();
    // Each closed set of a finite factor is a union of point closures, so the
    // cylinders over point closures generate the same family.
    let mut subbasis = Vec::new();
    for (i, t) in factors.iter().enumerate() {
        for p in 0..t.len() {
            let c = t.closure[p];
            subbasis.push(
                (0..shape.size())
                    .filter(|&idx| c >> shape.coord(idx, i) & 1 == 1)
                    .collect::<Vec<_>>(),
            );
        }
    }
    FiniteTopology::generate(carrier, &subbasis)
}

/// Interval topology of the induced order on `q` against the restriction of
/// the ambient interval topology to `q`.
///
/// `q` must be a subcomplete sublattice of the lattice `p`.
pub fn check_restriction_lemma(p: &Poset, q: &[usize], exhaustive_cap: usize) -> Result<bool> {
    let verdict = p.is_subcomplete(q, exhaustive_cap)?;
    if let Some(w) = verdict.witness {
        return Err(Error::PreconditionViolated(format!(
            "subset is not subcomplete: {} of {:?} is {}",
            w.bound.as_str(),
            w.subset.iter().map(|&x| p.name(x)).collect::<Vec<_>>(),
            p.name(w.value)
        )));
    }
    let own = interval_topology(&p.induced(q)?)?;
    let inherited = interval_topology(p)?.restrict(q)?;
    Ok(own == inherited)
}

/// Interval topology of a product of lattices against the product of the
/// factors' interval topologies.
pub fn check_product_interval_lemma(factors: &[Poset], cap: usize) -> Result<bool> {
    for f in factors {
        f.require_lattice()?;
    }
    let prod = product_poset(factors, cap)?;
    let lhs = interval_topology(&prod)?;
    let tops = factors
        .iter()
        .map(interval_topology)
        .collect::<Result<Vec<_>>>()?;
    let rhs = product_topology(&tops, cap)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("p{i}")).collect()
    }

    fn diamond() -> Poset {
        Poset::new(
            ["m", "x", "y", "M"],
            [("m", "x"), ("m", "y"), ("x", "M"), ("y", "M")],
        )
        .unwrap()
    }

    #[test]
    fn indiscrete_and_discrete() {
        let t = FiniteTopology::indiscrete(names(3)).unwrap();
        assert_eq!(t.closed_sets(16).unwrap(), vec![0, 0b111]);
        let d = FiniteTopology::discrete(names(3)).unwrap();
        assert_eq!(d.closed_sets(16).unwrap().len(), 8);
        assert!(d.is_discrete());
    }

    #[test]
    fn out_of_carrier_subbasis() {
        assert_eq!(
            FiniteTopology::generate(names(2), &[vec![0, 2]]),
            Err(Error::ElementOutOfCarrier(2))
        );
    }

    #[test]
    fn interval_topologies_of_small_posets() {
        let c = Poset::chain(4).unwrap();
        assert!(interval_topology(&c).unwrap().is_discrete());
        let one = Poset::chain(1).unwrap();
        assert_eq!(
            interval_topology(&one).unwrap().closed_sets(16).unwrap(),
            vec![0, 1]
        );
        let d = interval_topology(&diamond()).unwrap();
        assert_eq!(d.closed_sets(16).unwrap().len(), 16);
    }

    #[test]
    fn restriction() {
        let d = diamond();
        let t = interval_topology(&d).unwrap();
        assert_eq!(t.restrict(&[0, 1, 2, 3]).unwrap(), t);
        let sub = t.restrict(&[0, 1, 3]).unwrap();
        let chain = d.induced(&[0, 1, 3]).unwrap();
        assert_eq!(sub, interval_topology(&chain).unwrap());
        assert_eq!(t.restrict(&[5]), Err(Error::ElementOutOfCarrier(5)));
    }

    #[test]
    fn products() {
        let a = FiniteTopology::discrete(names(2)).unwrap();
        let b = FiniteTopology::discrete(names(3)).unwrap();
        assert!(product_topology(&[a, b.clone()], 4096)
            .unwrap()
            .is_discrete());
        let point = FiniteTopology::indiscrete(vec!["*".into()]).unwrap();
        let ind = FiniteTopology::indiscrete(names(3)).unwrap();
        let p = product_topology(&[point, ind], 4096).unwrap();
        assert_eq!(p.closed_sets(16).unwrap(), vec![0, 0b111]);
        let c2 = Poset::chain(2).unwrap();
        let c3 = Poset::chain(3).unwrap();
        let lhs = product_topology(
            &[
                interval_topology(&c2).unwrap(),
                interval_topology(&c3).unwrap(),
            ],
            4096,
        )
        .unwrap();
        let rhs = interval_topology(&product_poset(&[c2, c3], 4096).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn lemma_checks() {
        let d = diamond();
        assert!(check_restriction_lemma(&d, &[0, 1, 2, 3], 12).unwrap());
        assert!(check_restriction_lemma(&d, &[0, 3], 12).unwrap());
        assert!(matches!(
            check_restriction_lemma(&d, &[1, 2], 12),
            Err(Error::PreconditionViolated(_))
        ));
        let c2 = Poset::chain(2).unwrap();
        assert!(check_product_interval_lemma(std::slice::from_ref(&c2), 4096).unwrap());
        assert!(check_product_interval_lemma(&[c2.clone(), c2], 4096).unwrap());
        let anti = Poset::antichain(2).unwrap();
        assert!(matches!(
            check_product_interval_lemma(&[anti], 4096),
            Err(Error::NotALattice(..))
        ));
    }

    #[test]
    fn finer_than() {
        let d = FiniteTopology::discrete(names(3)).unwrap();
        let i = FiniteTopology::indiscrete(names(3)).unwrap();
        assert!(d.finer_than(&d).unwrap());
        assert!(d.finer_than(&i).unwrap());
        assert!(!i.finer_than(&d).unwrap());
        let other = FiniteTopology::discrete(names(2)).unwrap();
        assert_eq!(d.finer_than(&other), Err(Error::CarrierMismatch));
    }

    #[test]
    fn dump_format() {
        let t = FiniteTopology::generate(
            vec!["a".into(), "b".into(), "c".into()],
            &[vec![0], vec![0, 1]],
        )
        .unwrap();
        assert_eq!(t.dump(16).unwrap(), "\na\na,b\na,b,c\n");
    }
}
