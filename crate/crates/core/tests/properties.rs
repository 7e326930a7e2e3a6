use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use supergame::omega::{sym_closure, sym_is_subcomplete, truncation, CofiniteSet, Token};
use supergame::poset::{product_poset, Poset};
use supergame::random::random_lattice;
use supergame::rational::Rational;
use supergame::topology::FiniteTopology;

fn lattice(seed: u64, max: usize) -> Poset {
    random_lattice(&mut ChaCha8Rng::seed_from_u64(seed), max).unwrap()
}

fn subset(n: usize, mask: u32) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Least upper bound by definition, over all elements.
fn lub(p: &Poset, set: &[usize]) -> Option<usize> {
    let ub: Vec<usize> = (0..p.len())
        .filter(|&u| set.iter().all(|&x| p.leq(x, u)))
        .collect();
    ub.iter()
        .copied()
        .find(|&j| ub.iter().all(|&u| p.leq(j, u)))
}

fn glb(p: &Poset, set: &[usize]) -> Option<usize> {
    let lb: Vec<usize> = (0..p.len())
        .filter(|&u| set.iter().all(|&x| p.leq(u, x)))
        .collect();
    lb.iter()
        .copied()
        .find(|&j| lb.iter().all(|&u| p.leq(u, j)))
}

fn token(k: u8) -> Token {
    match k {
        0 => Token::Bottom,
        1 => Token::Top,
        k => Token::X(u64::from(k - 2)),
    }
}

fn cofinite_set(cofinite: bool, items: Vec<u8>) -> CofiniteSet {
    let toks = items.into_iter().map(token);
    if cofinite {
        CofiniteSet::cofinite(toks)
    } else {
        CofiniteSet::finite(toks)
    }
}

proptest! {
    #[test]
    fn joins_and_meets_are_least_bounds(seed in any::<u64>()) {
        let p = lattice(seed, 8);
        for x in 0..p.len() {
            for y in 0..p.len() {
                let j = p.join(x, y).unwrap();
                prop_assert!(p.leq(x, j) && p.leq(y, j));
                for u in 0..p.len() {
                    if p.leq(x, u) && p.leq(y, u) {
                        prop_assert!(p.leq(j, u));
                    }
                }
                let m = p.meet(x, y).unwrap();
                prop_assert!(p.leq(m, x) && p.leq(m, y));
                for l in 0..p.len() {
                    if p.leq(l, x) && p.leq(l, y) {
                        prop_assert!(p.leq(l, m));
                    }
                }
            }
        }
    }

    #[test]
    fn sup_and_inf_agree_with_definition(seed in any::<u64>(), mask in 1u32..256) {
        let p = lattice(seed, 8);
        let s = subset(p.len(), mask);
        prop_assume!(!s.is_empty());
        prop_assert_eq!(p.sup(&s).unwrap(), lub(&p, &s));
        prop_assert_eq!(p.inf(&s).unwrap(), glb(&p, &s));
        let folded = s[1..].iter().fold(s[0], |a, &b| p.join(a, b).unwrap());
        prop_assert_eq!(p.sup(&s).unwrap(), Some(folded));
    }

    #[test]
    fn finite_subcomplete_iff_sublattice(seed in any::<u64>(), mask in 1u32..256) {
        let p = lattice(seed, 8);
        let s = subset(p.len(), mask);
        prop_assume!(!s.is_empty());
        let sub = p.is_sublattice(&s).unwrap().holds();
        let comp = p.is_subcomplete(&s, 12).unwrap().holds();
        prop_assert_eq!(sub, comp);
        // independent definition: every nonempty subset has sup and inf in s
        let by_def = (1u32..1 << s.len()).all(|m| {
            let t: Vec<usize> = subset(s.len(), m).into_iter().map(|k| s[k]).collect();
            s.contains(&lub(&p, &t).unwrap()) && s.contains(&glb(&p, &t).unwrap())
        });
        prop_assert_eq!(comp, by_def);
    }

    #[test]
    fn product_join_is_componentwise(a in any::<u64>(), b in any::<u64>()) {
        let (pa, pb) = (lattice(a, 4), lattice(b, 4));
        let prod = product_poset(&[pa.clone(), pb.clone()], 4096).unwrap();
        let n = pb.len();
        for x in 0..prod.len() {
            for y in 0..prod.len() {
                let j = prod.join(x, y).unwrap();
                prop_assert_eq!(j / n, pa.join(x / n, y / n).unwrap());
                prop_assert_eq!(j % n, pb.join(x % n, y % n).unwrap());
            }
        }
    }

    #[test]
    fn omega_de_morgan(
        ca in any::<bool>(), a in prop::collection::vec(0u8..12, 0..6),
        cb in any::<bool>(), b in prop::collection::vec(0u8..12, 0..6),
    ) {
        let (a, b) = (cofinite_set(ca, a), cofinite_set(cb, b));
        prop_assert_eq!(a.union(&b).complement(), a.complement().intersection(&b.complement()));
        prop_assert_eq!(a.intersection(&b).complement(), a.complement().union(&b.complement()));
        prop_assert_eq!(a.complement().complement(), a.clone());
        prop_assert!(a.intersection(&b).is_subset(&a) && a.is_subset(&a.union(&b)));
        for k in 0..14u8 {
            let t = token(k);
            prop_assert_eq!(a.union(&b).contains(t), a.contains(t) || b.contains(t));
            prop_assert_eq!(a.complement().contains(t), !a.contains(t));
        }
    }

    #[test]
    fn omega_closure_is_idempotent(c in any::<bool>(), a in prop::collection::vec(0u8..12, 0..6)) {
        let a = cofinite_set(c, a);
        let cl = sym_closure(&a);
        prop_assert!(a.is_subset(&cl));
        prop_assert_eq!(sym_closure(&cl), cl);
    }

    #[test]
    fn finite_closure_is_idempotent(n in 1usize..10, sub in prop::collection::vec(any::<u16>(), 0..6), set in any::<u16>()) {
        let members: Vec<Vec<usize>> = sub.iter().map(|&m| subset(n, u32::from(m))).collect();
        let t = FiniteTopology::generate((0..n).map(|i| i.to_string()).collect(), &members).unwrap();
        let s = u128::from(set) & ((1 << n) - 1);
        let c = t.closure_of(s);
        prop_assert_eq!(c & s, s);
        prop_assert_eq!(t.closure_of(c), c);
        prop_assert!(t.is_closed(c));
    }

    #[test]
    fn omega_subcompleteness_matches_truncation(items in prop::collection::btree_set(0u8..8, 1..6)) {
        // tokens x0..x5 live in the truncation {m, x0..x5, M}
        let n = 6;
        let set = CofiniteSet::finite(items.iter().map(|&k| token(k)));
        let t = truncation(n).unwrap();
        let idx: Vec<usize> = items
            .iter()
            .map(|&k| match token(k) {
                Token::Bottom => 0,
                Token::Top => n + 1,
                Token::X(i) => i as usize + 1,
            })
            .collect();
        let symbolic = sym_is_subcomplete(&set).unwrap().is_none();
        let exhaustive = t.is_subcomplete(&idx, 12).unwrap().holds();
        prop_assert_eq!(symbolic, exhaustive);
    }

    #[test]
    fn rationals_order_like_cross_products(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
        let (x, y) = (Rational::new(a, b), Rational::new(c, d));
        prop_assert_eq!(x.cmp(&y), (a * d).cmp(&(c * b)));
        prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x.clone());
        prop_assert_eq!(&(&x + &y) - &y, x);
    }
}
