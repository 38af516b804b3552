use alloc::vec;
use alloc::vec::Vec;

use super::Poset;

/// A folding sequence and what is left of the poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dismantling {
    /// `(dominated, dominator)` in removal order.
    pub removed: Vec<(usize, usize)>,
    /// Surviving elements, increasing.
    pub core: Vec<usize>,
}

impl Dismantling {
    pub fn is_dismantlable(&self) -> bool {
        self.core.len() == 1
    }
}

/// Lowest-index dominator of `x` among the alive elements.
///
/// `x < y` dominates when every `r > x` has `r ≥ y`; `x > y` dominates when
/// every `r < x` has `r ≤ y`. Elements below (resp. above) `x` are then
/// below (resp. above) `y` by transitivity.
fn dominator(p: &Poset, alive: &[bool], x: usize) -> Option<usize> {
    let live = |r: usize| alive[r] && r != x;
    (0..p.len()).filter(|&y| live(y)).find(|&y| {
        if p.lt(x, y) {
            p.up(x).ones().filter(|&r| live(r)).all(|r| p.leq(y, r))
        } else if p.lt(y, x) {
            p.down(x).ones().filter(|&r| live(r)).all(|r| p.leq(r, y))
        } else {
            false
        }
    })
}

/// Removes dominated elements, lowest index first, until none is left.
/// Elements in `protected` are never removed.
pub fn dismantle(p: &Poset, protected: &[usize]) -> Dismantling {
    dismantle_with_order(p, protected, |cands| cands[0])
}

/// [`dismantle`] with the removed element chosen by `pick` among the
/// currently dominated candidates (listed increasing).
pub fn dismantle_with_order<F>(p: &Poset, protected: &[usize], mut pick: F) -> Dismantling
where
    F: FnMut(&[usize]) -> usize,
{
    let mut alive = vec![true; p.len()];
    let mut removed = Vec::new();
    loop {
        let cands: Vec<usize> = (0..p.len())
            .filter(|&x| alive[x] && !protected.contains(&x) && dominator(p, &alive, x).is_some())
            .collect();
        if cands.is_empty() {
            break;
        }
        let x = pick(&cands);
        assert!(cands.contains(&x), "pick must return a candidate");
        let y = dominator(p, &alive, x).expect("candidate is dominated");
        alive[x] = false;
        removed.push((x, y));
    }
    Dismantling {
        removed,
        core: (0..p.len()).filter(|&x| alive[x]).collect(),
    }
}

pub fn is_dismantlable(p: &Poset) -> bool {
    dismantle(p, &[]).is_dismantlable()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::homposet::{chain_poset, d_rho_plus, rho_plus, z2_crown};

    #[test]
    fn chains_and_crowns() {
        for k in 1..6 {
            assert!(is_dismantlable(&Poset::chain(k)));
        }
        for n in 1..5 {
            let c = z2_crown(n);
            let d = dismantle(c.poset(), &[]);
            assert!(d.removed.is_empty());
            assert_eq!(d.core.len(), 4 * n);
        }
        assert!(!is_dismantlable(&Poset::antichain(2)));
        assert!(!is_dismantlable(&Poset::antichain(0)));
    }

    #[test]
    fn worked_example() {
        let k4 = Graph::complete(4);
        assert!(!is_dismantlable(
            &rho_plus(&k4, [0, 1, 2, 3]).unwrap().poset
        ));
        let d = d_rho_plus(&k4, [0, 1, 2, 3]).unwrap();
        let run = dismantle(&d.poset, &[]);
        assert!(run.is_dismantlable());
        assert_eq!(run.removed.len(), 12);
        // The survivor is ({a,c},{b,d}).
        assert_eq!(d.elements[run.core[0]].label(), "0,2|1,3");
        let (s, _) = chain_poset(&d.poset, 10_000).unwrap();
        assert!(is_dismantlable(&s));
    }

    #[test]
    fn protected_elements_stay() {
        let c = Poset::chain(3);
        let d = dismantle(&c, &[0]);
        assert_eq!(d.core, vec![0]);
        let d = dismantle(&c, &[0, 2]);
        assert_eq!(d.core, vec![0, 2]);
    }

    #[test]
    fn removal_order_does_not_change_the_core_size() {
        let k4 = Graph::complete(4);
        let d = d_rho_plus(&k4, [0, 1, 2, 3]).unwrap();
        let (s, _) = chain_poset(&d.poset, 10_000).unwrap();
        for p in [&d.poset, &s] {
            let first = dismantle(p, &[]).core.len();
            let last = dismantle_with_order(p, &[], |c| c[c.len() - 1]).core.len();
            let mut k = 0usize;
            let alt = dismantle_with_order(p, &[], |c| {
                k += 7;
                c[k % c.len()]
            })
            .core
            .len();
            assert_eq!((first, last), (1, 1));
            assert_eq!(alt, 1);
        }
    }
}
