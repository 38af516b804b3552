use alloc::vec::Vec;

use super::QuotientPresentation;
use crate::gf2::Gf2Vector;

/// The linear system over the arc variables `X_{u,v}`.
///
/// * flow, one row per vertex: `Σ_{v ∈ N(u)} X_{u,v} + X_{v,u} = 0`
/// * parity: `Σ X_{u,v} = 1`
/// * signature: `Y ∈ R` where `Y_e = X_e + X_{rev e}`, written as one
///   homogeneous row per non-pivot column of the relation basis (the reduced
///   form of `Y` must vanish there; it vanishes on pivots by construction).
#[derive(Debug, Clone)]
pub struct DetectionSystem {
    pub width: usize,
    pub flow: Vec<Gf2Vector>,
    pub parity: Gf2Vector,
    pub signature: Vec<Gf2Vector>,
}

impl DetectionSystem {
    pub fn row_count(&self) -> usize {
        self.flow.len() + 1 + self.signature.len()
    }

    /// All rows with their right-hand sides, flow first, then parity, then
    /// signature.
    pub fn rows(&self) -> Vec<(Gf2Vector, bool)> {
        let mut out = Vec::with_capacity(self.row_count());
        out.extend(self.flow.iter().map(|r| (r.clone(), false)));
        out.push((self.parity.clone(), true));
        out.extend(self.signature.iter().map(|r| (r.clone(), false)));
        out
    }

    pub fn is_satisfied_by(&self, x: &Gf2Vector) -> bool {
        self.rows().iter().all(|(row, rhs)| row.dot(x) == *rhs)
    }
}

pub fn build_detection_system(q: &QuotientPresentation) -> DetectionSystem {
    let g = q.host();
    let width = g.arc_count();

    let flow = (0..g.vertex_count())
        .map(|u| {
            let mut row = Gf2Vector::zeros(width);
            for &v in g.neighbors(u) {
                let a = g.arc_index(u, v).expect("neighbour arc");
                row.flip(a);
                row.flip(g.rev(a));
            }
            row
        })
        .collect();

    let mut parity = Gf2Vector::zeros(width);
    for a in 0..width {
        parity.set(a, true);
    }

    let basis = q.basis();
    let mut signature = Vec::new();
    for c in (0..width).filter(|&c| !basis.is_pivot(c)) {
        // reduce(Y)_c = Y_c + Σ_{pivot p, row_p[c] = 1} Y_p
        let mut y_coeffs = Vec::new();
        y_coeffs.push(c);
        for (row, &p) in basis.rows().iter().zip(basis.pivots()) {
            if row.get(c) {
                y_coeffs.push(p);
            }
        }
        let mut row = Gf2Vector::zeros(width);
        for e in y_coeffs {
            row.flip(e);
            row.flip(g.rev(e));
        }
        signature.push(row);
    }

    DetectionSystem {
        width,
        flow,
        parity,
        signature,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{solve, SolveOutcome};
    use crate::graph::Graph;
    use crate::sig2::build_quotient;

    #[test]
    fn c5_signature_rows_force_symmetry() {
        let g = Graph::cycle(5);
        let sys = build_detection_system(&build_quotient(&g));
        assert_eq!(sys.flow.len(), 5);
        assert_eq!(sys.signature.len(), 10);
        for (c, row) in sys.signature.iter().enumerate() {
            assert_eq!(row.count_ones(), 2);
            assert!(row.get(c) && row.get(g.rev(c)));
        }
        assert_eq!(solve(&sys.rows()).unwrap(), SolveOutcome::Infeasible);
        // Exhaustive confirmation over all 2^10 assignments.
        for x in 0u32..1 << 10 {
            let xv = Gf2Vector::from_indices(10, (0..10).filter(|i| x >> i & 1 == 1));
            assert!(!sys.is_satisfied_by(&xv));
        }
    }

    #[test]
    fn bipartite_flow_and_parity_conflict() {
        let g = Graph::complete_bipartite(3, 3);
        let sys = build_detection_system(&build_quotient(&g));
        let mut rows: Vec<_> = sys
            .flow
            .iter()
            .take(3)
            .map(|r| (r.clone(), false))
            .collect();
        rows.push((sys.parity.clone(), true));
        assert_eq!(solve(&rows).unwrap(), SolveOutcome::Infeasible);
    }

    #[test]
    fn size_bounds() {
        for g in [Graph::complete(4), Graph::complete(5), Graph::cycle(7)] {
            let q = build_quotient(&g);
            let sys = build_detection_system(&q);
            assert!(sys.row_count() <= g.vertex_count() + 1 + g.arc_count());
            assert!(sys.rows().iter().all(|(r, _)| r.width() == g.arc_count()));
            assert_eq!(sys.signature.len(), g.arc_count() - q.basis().rank());
        }
    }
}
