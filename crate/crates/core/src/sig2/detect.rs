use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::{
    build_detection_system, build_quotient, build_quotient_with_history, decompose_into_relators,
    extract_euler_walk, sigma2_of_walk, sigma2_raw, QuotientPresentation, Relator, Sig2Error,
};
use crate::gf2::{solve_with_width, Gf2Vector, SolveOutcome};
use crate::graph::{ClosedWalk, Graph, Vertex};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DetectOptions {
    /// Also express the walk's signature as a sum of relators.
    pub decompose: bool,
}

/// An odd closed walk with zero Z2-signature, plus supporting data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sigma2Certificate {
    /// Index into `Graph::connected_components`.
    pub component: usize,
    pub walk: ClosedWalk,
    /// `X_{u,v}` = parity of the number of steps `u -> v` of the walk.
    pub assignment: Gf2Vector,
    /// Relators summing to the raw signature of the walk.
    pub relators: Option<Vec<Relator>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentVerdict {
    Bipartite,
    NoSolution,
    Certificate(Sigma2Certificate),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentReport {
    pub component: usize,
    pub vertices: Vec<Vertex>,
    pub verdict: ComponentVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Detection {
    Certificate(Sigma2Certificate),
    NoSolution,
}

impl Detection {
    pub fn is_yes(&self) -> bool {
        matches!(self, Detection::Certificate(_))
    }

    pub fn certificate(&self) -> Option<&Sigma2Certificate> {
        match self {
            Detection::Certificate(c) => Some(c),
            Detection::NoSolution => None,
        }
    }
}

/// Parity of the number of steps `u -> v` along `w`, per arc.
pub fn assignment_of_walk(g: &Graph, w: &ClosedWalk) -> Gf2Vector {
    let mut x = Gf2Vector::zeros(g.arc_count());
    for i in 0..w.len() {
        x.flip(g.arc_index(w.at(i), w.at(i + 1)).expect("valid walk"));
    }
    x
}

fn token_degree(g: &Graph, tokens: &[u32], v: Vertex) -> u32 {
    g.neighbors(v)
        .iter()
        .map(|&u| {
            let a = g.arc_index(v, u).expect("arc");
            tokens[a] + tokens[g.rev(a)]
        })
        .sum()
}

/// Connected components of the token multigraph, restricted to vertices of
/// positive token degree, ordered by least vertex.
pub fn token_components(g: &Graph, tokens: &[u32]) -> Vec<Vec<Vertex>> {
    let support: Vec<Vertex> = (0..g.vertex_count())
        .filter(|&v| token_degree(g, tokens, v) > 0)
        .collect();
    let carries = |u: Vertex, v: Vertex| {
        let a = g.arc_index(u, v).expect("arc");
        tokens[a] + tokens[g.rev(a)] > 0
    };
    let mut seen = vec![false; g.vertex_count()];
    let mut out = Vec::new();
    for &s in &support {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if !seen[v] && carries(u, v) {
                    seen[v] = true;
                    comp.push(v);
                    queue.push_back(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn bfs_path(g: &Graph, from: Vertex, to: Vertex) -> Option<Vec<Vertex>> {
    let mut parent = vec![usize::MAX; g.vertex_count()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            let mut path = vec![to];
            let mut x = to;
            while x != from {
                x = parent[x];
                path.push(x);
            }
            path.reverse();
            return Some(path);
        }
        for &v in g.neighbors(u) {
            if parent[v] == usize::MAX {
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    None
}

/// Joins the token components by adding one token to both arcs of every edge
/// on a BFS shortest path between the least vertices of the first two
/// components, until one component remains. Each doubled edge adds 2 to the
/// degrees and to the total, and `χ(e) + χ(rev e)` twice to the signature, so
/// the GF(2) system stays satisfied.
///
/// Stops early if the graph itself offers no connecting path.
pub fn repair_connectivity(g: &Graph, tokens: &mut [u32]) {
    loop {
        let comps = token_components(g, tokens);
        if comps.len() <= 1 {
            return;
        }
        let Some(path) = bfs_path(g, comps[0][0], comps[1][0]) else {
            return;
        };
        for w in path.windows(2) {
            let a = g.arc_index(w[0], w[1]).expect("path edge");
            tokens[a] += 1;
            tokens[g.rev(a)] += 1;
        }
    }
}

/// Runs the detector on one connected component (`vertices` sorted).
pub fn detect_component(
    g: &Graph,
    vertices: &[Vertex],
    component: usize,
    opts: DetectOptions,
) -> ComponentReport {
    let report = |verdict| ComponentReport {
        component,
        vertices: vertices.to_vec(),
        verdict,
    };
    let local = g.induced_subgraph(vertices);
    if local.is_bipartite() {
        return report(ComponentVerdict::Bipartite);
    }
    let q = if opts.decompose {
        build_quotient_with_history(&local)
    } else {
        build_quotient(&local)
    };
    let system = build_detection_system(&q);
    let solution = match solve_with_width(system.width, &system.rows()).expect("uniform width") {
        SolveOutcome::Infeasible => return report(ComponentVerdict::NoSolution),
        SolveOutcome::Feasible(s) => s.particular,
    };
    let mut tokens: Vec<u32> = (0..local.arc_count())
        .map(|a| u32::from(solution.get(a)))
        .collect();
    repair_connectivity(&local, &mut tokens);
    let local_walk = extract_euler_walk(&local, &tokens).expect("repaired solution is eulerian");
    debug_assert!(sigma2_of_walk(&q, &local_walk).expect("odd walk").is_zero());

    let relators = opts.decompose.then(|| {
        let raw = sigma2_raw(&local, &local_walk).expect("odd walk");
        decompose_into_relators(&q, &raw)
            .expect("zero signature lies in the span")
            .into_iter()
            .map(|r| Relator::new(vertices[r.a], vertices[r.b], vertices[r.c], vertices[r.d]))
            .collect()
    });
    let walk = ClosedWalk::new(local_walk.vertices().iter().map(|&v| vertices[v]).collect());
    let assignment = assignment_of_walk(g, &walk);
    report(ComponentVerdict::Certificate(Sigma2Certificate {
        component,
        walk,
        assignment,
        relators,
    }))
}

/// One report per connected component, in component order.
pub fn detect_components(
    g: &Graph,
    opts: DetectOptions,
) -> Result<Vec<ComponentReport>, Sig2Error> {
    if g.has_loops() {
        return Err(Sig2Error::LoopsPresent);
    }
    Ok(g.connected_components()
        .iter()
        .enumerate()
        .map(|(i, comp)| detect_component(g, comp, i, opts))
        .collect())
}

/// Certificate from the first component that has one.
pub fn detect(g: &Graph) -> Result<Detection, Sig2Error> {
    detect_with(g, DetectOptions::default())
}

pub fn detect_with(g: &Graph, opts: DetectOptions) -> Result<Detection, Sig2Error> {
    if g.has_loops() {
        return Err(Sig2Error::LoopsPresent);
    }
    for (i, comp) in g.connected_components().iter().enumerate() {
        if let ComponentVerdict::Certificate(c) = detect_component(g, comp, i, opts).verdict {
            return Ok(Detection::Certificate(c));
        }
    }
    Ok(Detection::NoSolution)
}

/// Checks the walk only: valid in `g`, odd length, signature in the relator
/// span. The other certificate fields are not trusted.
pub fn verify_certificate(g: &Graph, c: &Sigma2Certificate) -> bool {
    if !c.walk.is_odd() || !g.validate_closed_walk(&c.walk) {
        return false;
    }
    verify_certificate_in(&build_quotient(g), c)
}

/// [`verify_certificate`] against a prebuilt quotient of the same graph.
pub fn verify_certificate_in(q: &QuotientPresentation, c: &Sigma2Certificate) -> bool {
    matches!(sigma2_of_walk(q, &c.walk), Ok(v) if v.is_zero())
}
