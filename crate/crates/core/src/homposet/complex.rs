use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{validate_z2_map, Comparabilities, Poset, PosetError, Z2Poset};
use crate::freesig::is_valid_quad;
use crate::gf2::Gf2Vector;
use crate::graph::{ClosedWalk, Graph, Vertex};

pub const DEFAULT_ELEMENT_CAP: usize = 20_000;

/// `(A, B)`: nonempty sorted vertex sets with every `A`-`B` pair adjacent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HomElement {
    pub a: Vec<Vertex>,
    pub b: Vec<Vertex>,
}

impl HomElement {
    /// Sorts and deduplicates both sides.
    pub fn new(mut a: Vec<Vertex>, mut b: Vec<Vertex>) -> Self {
        a.sort_unstable();
        a.dedup();
        b.sort_unstable();
        b.dedup();
        HomElement { a, b }
    }

    pub fn swapped(&self) -> Self {
        HomElement {
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }

    pub fn is_valid_in(&self, h: &Graph) -> bool {
        !self.a.is_empty()
            && !self.b.is_empty()
            && self.a.iter().chain(&self.b).all(|&v| v < h.vertex_count())
            && self
                .a
                .iter()
                .all(|&u| self.b.iter().all(|&v| h.has_edge(u, v)))
    }

    /// Coordinatewise inclusion.
    pub fn leq(&self, other: &HomElement) -> bool {
        is_sorted_subset(&self.a, &other.a) && is_sorted_subset(&self.b, &other.b)
    }

    /// `A|B` with comma-separated sorted vertex lists.
    pub fn label(&self) -> String {
        let side = |s: &[Vertex]| {
            let parts: Vec<String> = s.iter().map(|v| format!("{v}")).collect();
            parts.join(",")
        };
        format!("{}|{}", side(&self.a), side(&self.b))
    }
}

fn is_sorted_subset(small: &[Vertex], big: &[Vertex]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

/// `Hom(K_2, H)` with its elements.
#[derive(Debug, Clone)]
pub struct HomComplex {
    graph: Graph,
    elements: Vec<HomElement>,
    index: BTreeMap<HomElement, usize>,
    z2: Z2Poset,
}

impl HomComplex {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn elements(&self) -> &[HomElement] {
        &self.elements
    }

    pub fn z2(&self) -> &Z2Poset {
        &self.z2
    }

    pub fn poset(&self) -> &Poset {
        self.z2.poset()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, e: &HomElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Strict order indicator of the subposet induced by `elements`, as a
    /// vector over the comparabilities `comps` of the whole complex.
    pub fn embed_soi(&self, comps: &Comparabilities, elements: &[HomElement]) -> Option<Gf2Vector> {
        let ids: Vec<usize> = elements
            .iter()
            .map(|e| self.index_of(e))
            .collect::<Option<_>>()?;
        let mut v = Gf2Vector::zeros(comps.len());
        for &x in &ids {
            for &y in &ids {
                if self.poset().lt(x, y) {
                    v.set(comps.index(x, y).expect("comparable pair"), true);
                }
            }
        }
        Some(v)
    }
}

/// All `(A, B)` of `h`, sorted by `(|A| + |B|, A, B)`, ordered by
/// coordinatewise inclusion, with `-(A, B) = (B, A)`.
pub fn hom_complex(h: &Graph, cap: usize) -> Result<HomComplex, PosetError> {
    if h.has_loops() {
        return Err(PosetError::LoopsPresent);
    }
    let n = h.vertex_count();
    let nbr: Vec<Gf2Vector> = (0..n)
        .map(|v| Gf2Vector::from_indices(n, h.neighbors(v).iter().copied()))
        .collect();
    let mut elements = Vec::new();
    // (A, CN(A)) with A extended in increasing vertex order.
    let mut stack: Vec<(Vec<Vertex>, Gf2Vector)> =
        (0..n).rev().map(|v| (vec![v], nbr[v].clone())).collect();
    while let Some((a, cn)) = stack.pop() {
        if cn.is_zero() {
            continue;
        }
        let common: Vec<Vertex> = cn.ones().collect();
        if common.len() >= 63 || elements.len() + (1usize << common.len()) - 1 > cap {
            return Err(PosetError::TooLarge { cap });
        }
        for mask in 1u64..1 << common.len() {
            let b = common
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            elements.push(HomElement { a: a.clone(), b });
        }
        let last = *a.last().expect("nonempty");
        for w in (last + 1..n).rev() {
            let mut next = cn.clone();
            next.and_assign(&nbr[w]);
            if !next.is_zero() {
                let mut a2 = a.clone();
                a2.push(w);
                stack.push((a2, next));
            }
        }
    }
    elements.sort_by(|x, y| {
        (x.a.len() + x.b.len())
            .cmp(&(y.a.len() + y.b.len()))
            .then_with(|| x.cmp(y))
    });
    let index: BTreeMap<HomElement, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    let sets: Vec<(Gf2Vector, Gf2Vector)> = elements
        .iter()
        .map(|e| {
            (
                Gf2Vector::from_indices(n, e.a.iter().copied()),
                Gf2Vector::from_indices(n, e.b.iter().copied()),
            )
        })
        .collect();
    let labels = elements.iter().map(HomElement::label).collect();
    let poset = Poset::from_fn(labels, |i, j| {
        sets[i].0.is_subset_of(&sets[j].0) && sets[i].1.is_subset_of(&sets[j].1)
    })?;
    let inv = elements.iter().map(|e| index[&e.swapped()]).collect();
    let z2 = Z2Poset::new(poset, inv)?;
    Ok(HomComplex {
        graph: h.clone(),
        elements,
        index,
        z2,
    })
}

/// Elements of a hom-complex with the order they induce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubPoset {
    pub elements: Vec<HomElement>,
    pub poset: Poset,
}

impl SubPoset {
    fn from_elements(list: Vec<HomElement>) -> Self {
        let mut elements: Vec<HomElement> = Vec::with_capacity(list.len());
        for e in list {
            if !elements.contains(&e) {
                elements.push(e);
            }
        }
        let labels = elements.iter().map(HomElement::label).collect();
        let poset =
            Poset::from_fn(labels, |i, j| elements[i].leq(&elements[j])).expect("inclusion order");
        SubPoset { elements, poset }
    }
}

fn nbhd(h: &Graph, v: Vertex) -> Vec<Vertex> {
    h.neighbors(v).to_vec()
}

fn check_quad(h: &Graph, quad: [Vertex; 4]) -> Result<(), PosetError> {
    if h.has_loops() {
        return Err(PosetError::LoopsPresent);
    }
    if quad.iter().any(|&v| v >= h.vertex_count()) || !is_valid_quad(h, quad) {
        return Err(PosetError::NotAFourCycle);
    }
    Ok(())
}

/// The fence `({a},N(a))`, `(N(b),{b})`, `({c},N(c))`, `(N(d),{d})` over
/// `({a},{b})`, `({c},{b})`, `({c},{d})`, `({a},{d})`.
pub fn rho_plus(h: &Graph, quad: [Vertex; 4]) -> Result<SubPoset, PosetError> {
    check_quad(h, quad)?;
    Ok(SubPoset::from_elements(rho_elements(h, quad)))
}

fn rho_elements(h: &Graph, [a, b, c, d]: [Vertex; 4]) -> Vec<HomElement> {
    let s = |v: Vertex| vec![v];
    vec![
        HomElement::new(s(a), nbhd(h, a)),
        HomElement::new(nbhd(h, b), s(b)),
        HomElement::new(s(c), nbhd(h, c)),
        HomElement::new(nbhd(h, d), s(d)),
        HomElement::new(s(a), s(b)),
        HomElement::new(s(c), s(b)),
        HomElement::new(s(c), s(d)),
        HomElement::new(s(a), s(d)),
    ]
}

/// `ρ⁺` together with `({a},{b,d})`, `({a,c},{b})`, `({c},{b,d})`,
/// `({a,c},{d})` and `({a,c},{b,d})`.
pub fn d_rho_plus(h: &Graph, quad: [Vertex; 4]) -> Result<SubPoset, PosetError> {
    check_quad(h, quad)?;
    let [a, b, c, d] = quad;
    let mut list = rho_elements(h, quad);
    list.extend([
        HomElement::new(vec![a], vec![b, d]),
        HomElement::new(vec![a, c], vec![b]),
        HomElement::new(vec![c], vec![b, d]),
        HomElement::new(vec![a, c], vec![d]),
        HomElement::new(vec![a, c], vec![b, d]),
    ]);
    Ok(SubPoset::from_elements(list))
}

/// `(N(v),{v}) > ({u},{v}) < ({u},N(u))` for the arc `(u, v)`.
pub fn v_poset(h: &Graph, u: Vertex, v: Vertex) -> Result<SubPoset, PosetError> {
    if h.has_loops() {
        return Err(PosetError::LoopsPresent);
    }
    if h.arc_index(u, v).is_none() {
        return Err(PosetError::InvalidWalk);
    }
    Ok(SubPoset::from_elements(vec![
        HomElement::new(nbhd(h, v), vec![v]),
        HomElement::new(vec![u], vec![v]),
        HomElement::new(vec![u], nbhd(h, u)),
    ]))
}

/// `g⁺: Hom(C_n) -> Hom(H)` for the closed walk `g` of odd length `n`:
/// `({i},{j}) ↦ ({g(i)},{g(j)})`, `({i},{i±1}) ↦ ({g(i)},N(g(i)))` and
/// `({i±1},{i}) ↦ (N(g(i)),{g(i)})`. The result is validated as a Z2-map.
///
/// `source` must be the complex of `C_n`, `target` that of `H`.
pub fn g_plus(
    walk: &ClosedWalk,
    source: &HomComplex,
    target: &HomComplex,
) -> Result<Vec<usize>, PosetError> {
    let h = target.graph();
    let n = walk.len();
    if !walk.is_odd()
        || n < 3
        || !h.validate_closed_walk(walk)
        || *source.graph() != Graph::cycle(n)
    {
        return Err(PosetError::InvalidWalk);
    }
    let g = |i: Vertex| walk.at(i);
    let map = source
        .elements()
        .iter()
        .map(|e| {
            let image = match (e.a.len(), e.b.len()) {
                (1, 1) => HomElement::new(vec![g(e.a[0])], vec![g(e.b[0])]),
                (1, _) => HomElement::new(vec![g(e.a[0])], nbhd(h, g(e.a[0]))),
                _ => HomElement::new(nbhd(h, g(e.b[0])), vec![g(e.b[0])]),
            };
            target.index_of(&image).ok_or(PosetError::BadMap)
        })
        .collect::<Result<Vec<_>, _>>()?;
    validate_z2_map(source.z2(), target.z2(), &map)?;
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homposet::{is_crown, is_z2_isomorphic, strict_order_indicator, z2_crown};

    #[test]
    fn small_complexes() {
        let k2 = hom_complex(&Graph::complete(2), 100).unwrap();
        assert_eq!(k2.len(), 2);
        assert!(!k2.poset().comparable(0, 1));
        assert_eq!(k2.elements()[0].label(), "0|1");

        let c5 = hom_complex(&Graph::cycle(5), 100).unwrap();
        assert_eq!(c5.len(), 20);
        let singles = c5
            .elements()
            .iter()
            .filter(|e| e.a.len() == 1 && e.b.len() == 1)
            .count();
        assert_eq!(singles, 10);
        assert!(is_z2_isomorphic(c5.z2(), &z2_crown(5)));
        assert!(is_crown(c5.z2()));

        assert_eq!(
            hom_complex(&Graph::complete(4), 100).unwrap().len(),
            81 - 32 + 1
        );
        assert_eq!(
            hom_complex(&Graph::complete(4), 49).unwrap_err(),
            PosetError::TooLarge { cap: 49 }
        );
    }

    #[test]
    fn counts_match_brute_force() {
        // Ordered pairs of disjoint nonempty sets in K_n: 3^n - 2^(n+1) + 1.
        for n in 2..7 {
            let c = hom_complex(&Graph::complete(n), 10_000).unwrap();
            assert_eq!(c.len(), 3usize.pow(n as u32) - 2usize.pow(n as u32 + 1) + 1);
            assert!(c.elements().iter().all(|e| e.is_valid_in(c.graph())));
        }
        let g = Graph::cycle(4);
        let mut brute = 0;
        for am in 1u32..16 {
            for bm in 1u32..16 {
                let ok = (0..4).all(|u| {
                    am >> u & 1 == 0 || (0..4).all(|v| bm >> v & 1 == 0 || g.has_edge(u, v))
                });
                brute += usize::from(ok);
            }
        }
        assert_eq!(hom_complex(&g, 1000).unwrap().len(), brute);
    }

    #[test]
    fn rho_posets() {
        let k4 = Graph::complete(4);
        let r = rho_plus(&k4, [0, 1, 2, 3]).unwrap();
        assert_eq!(r.elements.len(), 8);
        assert_eq!(r.poset.minimal_elements().len(), 4);
        assert_eq!(r.poset.maximal_elements().len(), 4);
        assert_eq!(strict_order_indicator(&r.poset).count_ones(), 8);
        let d = d_rho_plus(&k4, [0, 1, 2, 3]).unwrap();
        assert_eq!(d.elements.len(), 13);
        let complex = hom_complex(&k4, 100).unwrap();
        assert!(d.elements.iter().all(|e| complex.index_of(e).is_some()));
        assert_eq!(rho_plus(&k4, [0, 1, 0, 2]), Err(PosetError::NotAFourCycle));
        assert_eq!(
            rho_plus(&Graph::cycle(5), [0, 1, 2, 3]),
            Err(PosetError::NotAFourCycle)
        );
        // In C_4 the neighbourhoods are {b, d} and {a, c}, so elements merge.
        let c4 = d_rho_plus(&Graph::cycle(4), [0, 1, 2, 3]).unwrap();
        assert_eq!(c4.elements.len(), 9);
    }

    #[test]
    fn triangle_lift() {
        let k4 = Graph::complete(4);
        let target = hom_complex(&k4, 100).unwrap();
        let source = hom_complex(&Graph::cycle(3), 100).unwrap();
        assert_eq!(source.len(), 12);
        let map = g_plus(&ClosedWalk::new(vec![0, 1, 2]), &source, &target).unwrap();
        assert_eq!(map.len(), 12);
        assert_eq!(
            g_plus(&ClosedWalk::new(vec![0, 1, 2, 3, 1]), &source, &target),
            Err(PosetError::InvalidWalk)
        );
    }
}
