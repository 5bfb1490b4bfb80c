use std::collections::BTreeSet;

use super::betti::BettiPoly;
use super::config::{SemistableConfig, StratumCell};
use crate::error::{ensure, Error, Result};

/// Finite multigraph on `0..vertices`; parallel edges allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(a, b) in &edges {
            ensure!(a < vertices && b < vertices, Error::Invalid(format!("edge ({a}, {b}) outside 0..{vertices}")));
        }
        Ok(Multigraph { vertices, edges })
    }

    /// `k + 1` parallel edges between two vertices (genus `k`); a single
    /// vertex for `k = 0`.
    pub fn banana(k: usize) -> Self {
        if k == 0 {
            return Multigraph { vertices: 1, edges: Vec::new() };
        }
        Multigraph { vertices: 2, edges: vec![(0, 1); k + 1] }
    }

    pub fn cycle(n: usize) -> Self {
        Multigraph { vertices: n, edges: (0..n).map(|i| (i, (i + 1) % n)).collect() }
    }

    pub fn path(n: usize) -> Self {
        Multigraph { vertices: n, edges: (1..n).map(|i| (i - 1, i)).collect() }
    }

    pub fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        (0..self.vertices).filter(|&v| find(&mut parent, v) == v).count()
    }

    pub fn is_connected(&self) -> bool {
        self.vertices > 0 && self.components() == 1
    }

    /// `e - v + c`.
    pub fn first_betti(&self) -> usize {
        self.edges.len() + self.components() - self.vertices
    }
}

impl Multigraph {
    fn multiplicities(&self) -> Vec<Vec<usize>> {
        let mut a = vec![vec![0; self.vertices]; self.vertices];
        for &(u, v) in &self.edges {
            a[u][v] += 1;
            a[v][u] += 1;
        }
        a
    }

    /// The same graph with `v` renamed `perm[v]`, edges sorted.
    fn relabel(&self, perm: &[usize]) -> Multigraph {
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (perm[a], perm[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        edges.sort_unstable();
        Multigraph { vertices: self.vertices, edges }
    }

    /// A representative of the isomorphism class: the smallest relabeling
    /// over all leaves of an individualization-refinement search.
    pub fn canonical_form(&self) -> Multigraph {
        let adj = self.multiplicities();
        let colors = refine(&adj, vec![0; self.vertices]);
        let mut best: Option<Multigraph> = None;
        self.search(&adj, colors, &mut best);
        best.unwrap_or_else(|| self.relabel(&[]))
    }

    fn search(&self, adj: &[Vec<usize>], colors: Vec<usize>, best: &mut Option<Multigraph>) {
        let n = self.vertices;
        let mut cell_sizes = vec![0; n];
        for &c in &colors {
            cell_sizes[c] += 1;
        }
        let Some(target) = (0..n).find(|&c| cell_sizes[c] > 1) else {
            let g = self.relabel(&colors);
            if best.as_ref().is_none_or(|b| g < *b) {
                *best = Some(g);
            }
            return;
        };
        for v in (0..n).filter(|&v| colors[v] == target) {
            let split: Vec<usize> = (0..n).map(|u| 2 * colors[u] + usize::from(u != v || colors[u] != target)).collect();
            self.search(adj, refine(adj, split), best);
        }
    }
}

impl PartialOrd for Multigraph {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Multigraph {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.vertices, &self.edges).cmp(&(other.vertices, &other.edges))
    }
}

/// Equitable refinement; colors come back as ranks `0..k` of a
/// labeling-independent signature.
fn refine(adj: &[Vec<usize>], mut colors: Vec<usize>) -> Vec<usize> {
    let n = adj.len();
    loop {
        let sigs: Vec<(usize, Vec<(usize, usize)>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(usize, usize)> =
                    (0..n).filter(|&u| adj[v][u] > 0).map(|u| (colors[u], adj[v][u])).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut distinct: Vec<&(usize, Vec<(usize, usize)>)> = sigs.iter().collect();
        distinct.sort_unstable();
        distinct.dedup();
        let rank: Vec<usize> = sigs.iter().map(|s| distinct.binary_search(&s).expect("present")).collect();
        let before = colors.iter().collect::<BTreeSet<_>>().len();
        colors = rank;
        if distinct.len() == before {
            return colors;
        }
    }
}

/// Connected loop-free multigraphs with at most `max_edges` edges, one per
/// isomorphism class, in canonical form. Each graph with an edge arises
/// from a smaller one by adding an edge (removing a cycle edge or a leaf
/// keeps it connected).
pub fn connected_multigraphs(max_edges: usize) -> Vec<Multigraph> {
    let mut level: BTreeSet<Multigraph> = BTreeSet::from([Multigraph { vertices: 1, edges: Vec::new() }]);
    let mut out: Vec<Multigraph> = level.iter().cloned().collect();
    for _ in 0..max_edges {
        let mut next = BTreeSet::new();
        for g in &level {
            let v = g.vertices;
            for a in 0..v {
                for b in a + 1..=v {
                    let mut edges = g.edges.clone();
                    edges.push((a, b));
                    let h = Multigraph { vertices: v.max(b + 1), edges };
                    next.insert(h.canonical_form());
                }
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// Special fiber of a Mumford curve with dual graph `g`: one rational
/// component per vertex, one double point per edge.
pub fn mumford_from_graph(g: &Multigraph) -> Result<SemistableConfig> {
    ensure!(g.is_connected(), Error::Invalid("dual graph must be connected".into()));
    ensure!(
        g.edges.iter().all(|&(a, b)| a != b),
        Error::Invalid("loops are not allowed: components must not self-intersect".into())
    );
    let components: Vec<StratumCell> = (0..g.vertices)
        .map(|v| StratumCell { support: vec![v], faces: Vec::new(), betti: BettiPoly::projective_space(1) })
        .collect();
    let points: Vec<StratumCell> = g
        .edges
        .iter()
        .map(|&(a, b)| {
            let (u, v) = (a.min(b), a.max(b));
            // ∂[u, v] = [v] - [u].
            StratumCell { support: vec![u, v], faces: vec![(v, 1), (u, -1)], betti: BettiPoly::point() }
        })
        .collect();
    let cells = if points.is_empty() { vec![components] } else { vec![components, points] };
    SemistableConfig::new(1, g.vertices, cells)
}

/// Every loop-free multigraph on `vertices` vertices with at most
/// `max_edges` edges, as edge multisets.
pub fn enumerate_multigraphs(vertices: usize, max_edges: usize) -> Vec<Multigraph> {
    let pairs: Vec<(usize, usize)> = (0..vertices).flat_map(|a| (a + 1..vertices).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    let mut counts = vec![0usize; pairs.len()];
    fn rec(i: usize, left: usize, pairs: &[(usize, usize)], counts: &mut [usize], vertices: usize, out: &mut Vec<Multigraph>) {
        if i == pairs.len() {
            let edges = pairs.iter().zip(counts.iter()).flat_map(|(&p, &c)| std::iter::repeat_n(p, c)).collect();
            out.push(Multigraph { vertices, edges });
            return;
        }
        for c in 0..=left {
            counts[i] = c;
            rec(i + 1, left - c, pairs, counts, vertices, out);
        }
        counts[i] = 0;
    }
    rec(0, max_edges, &pairs, &mut counts, vertices, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semistable::spectral::{e1_page, e2_page, nnonnul_check};
    use crate::semistable::QPoly;

    #[test]
    fn single_vertex_is_smooth() {
        let cfg = mumford_from_graph(&Multigraph::banana(0)).unwrap();
        let e1 = e1_page(&cfg);
        assert_eq!(e1.entries.len(), 2);
        assert_eq!(e1.dim(0, 0), QPoly::constant(1));
        assert_eq!(e1.dim(0, 2), QPoly::constant(1));
    }

    #[test]
    fn two_cycle_is_a_tate_curve() {
        let cfg = mumford_from_graph(&Multigraph::cycle(2)).unwrap();
        let e1 = e1_page(&cfg);
        assert_eq!(e1.dim(1, 0), QPoly::constant(2));
        assert_eq!(e1.dim(-1, 2), QPoly::constant(2));
        let h = e2_page(&cfg).unwrap().abutment().unwrap();
        assert_eq!(h[&1], [(0, 1), (2, 1)].into_iter().collect());
        let r = nnonnul_check(&cfg).unwrap();
        assert_eq!(r.ker_dim, 1);
        assert!(r.n_power_nonzero && r.equivalences_ok);
    }

    #[test]
    fn theta_graph_has_genus_two() {
        let cfg = mumford_from_graph(&Multigraph::banana(2)).unwrap();
        assert_eq!(nnonnul_check(&cfg).unwrap().ker_dim, 2);
        let h = e2_page(&cfg).unwrap().abutment().unwrap();
        assert_eq!(h[&1].values().sum::<usize>(), 4);
    }

    #[test]
    fn trees_have_trivial_monodromy() {
        for n in 1..=6 {
            let r = nnonnul_check(&mumford_from_graph(&Multigraph::path(n)).unwrap()).unwrap();
            assert_eq!(r.ker_dim, 0);
            assert!(!r.n_power_nonzero);
        }
    }

    #[test]
    fn invalid_graphs_rejected() {
        assert!(mumford_from_graph(&Multigraph { vertices: 2, edges: vec![] }).is_err());
        assert!(mumford_from_graph(&Multigraph { vertices: 1, edges: vec![(0, 0)] }).is_err());
        assert!(Multigraph::new(2, vec![(0, 2)]).is_err());
    }

    fn brute_canonical(g: &Multigraph) -> Multigraph {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for i in 0..n {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    out.push(q);
                }
            }
            out
        }
        perms(g.vertices).iter().map(|p| g.relabel(p)).min().unwrap()
    }

    #[test]
    fn canonical_form_is_a_complete_invariant_on_small_graphs() {
        let mut rng_state = 7u64;
        for v in 1..=5 {
            for g in enumerate_multigraphs(v, 4) {
                let c = g.canonical_form();
                assert_eq!(c.vertices, g.vertices);
                // Canonical form of a random relabeling agrees.
                rng_state = rng_state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let shift = (rng_state >> 33) as usize % v;
                let perm: Vec<usize> = (0..v).map(|i| (i + shift) % v).rev().collect();
                assert_eq!(g.relabel(&perm).canonical_form(), c);
            }
        }
    }

    #[test]
    fn connected_classes_match_brute_force() {
        let mut oracle = BTreeSet::new();
        for v in 1..=5 {
            for g in enumerate_multigraphs(v, 4) {
                if g.is_connected() {
                    oracle.insert(brute_canonical(&g));
                }
            }
        }
        let ours: BTreeSet<Multigraph> = connected_multigraphs(4).iter().map(brute_canonical).collect();
        assert_eq!(ours.len(), connected_multigraphs(4).len());
        assert_eq!(ours, oracle);
    }

    #[test]
    fn enumeration_counts() {
        // Multisets of size ≤ 2 over 3 pairs: 1 + 3 + 6.
        assert_eq!(enumerate_multigraphs(3, 2).len(), 10);
    }
}
