use std::collections::HashMap;

use crate::error::{ensure, Error, Result};
use crate::exactnum::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A path: arrows in traversal order; the empty path at `vertex` is the
/// idempotent `e_vertex`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Finite-dimensional path algebra of a quiver modulo monomial relations.
///
/// Paths compose left to right in traversal order; a path is zero in the
/// algebra exactly when it contains a relation as a contiguous subpath.
#[derive(Debug, Clone)]
pub struct PresentedAlgebra {
    field: FieldSpec,
    n_vertices: usize,
    arrows: Vec<Arrow>,
    relations: Vec<Vec<usize>>,
    gl_dim_bound: Option<usize>,
    /// Nonzero paths grouped by source vertex.
    paths_from: Vec<Vec<Path>>,
    index: HashMap<Path, usize>,
}

impl PresentedAlgebra {
    /// Validate the presentation and enumerate the nonzero paths.
    /// `gl_dim_bound` is the global dimension when known (`None` for
    /// infinite or unknown); it bounds resolution lengths.
    pub fn new(
        field: FieldSpec,
        n_vertices: usize,
        arrows: Vec<Arrow>,
        relations: Vec<Vec<usize>>,
        gl_dim_bound: Option<usize>,
    ) -> Result<Self> {
        ensure!(n_vertices > 0, Error::Invalid("quiver needs at least one vertex".into()));
        for a in &arrows {
            ensure!(
                a.source < n_vertices && a.target < n_vertices,
                Error::Invalid(format!("arrow {} has an endpoint outside the quiver", a.name))
            );
        }
        for r in &relations {
            ensure!(!r.is_empty(), Error::Invalid("empty relation".into()));
            for w in r.windows(2) {
                ensure!(
                    w[0] < arrows.len() && w[1] < arrows.len() && arrows[w[0]].target == arrows[w[1]].source,
                    Error::Invalid(format!("relation {r:?} is not a path"))
                );
            }
            ensure!(r[0] < arrows.len(), Error::Invalid(format!("relation {r:?} uses an unknown arrow")));
        }
        let mut alg = PresentedAlgebra {
            field,
            n_vertices,
            arrows,
            relations,
            gl_dim_bound,
            paths_from: Vec::new(),
            index: HashMap::new(),
        };
        alg.enumerate_paths()?;
        Ok(alg)
    }

    /// Any path longer than the number of automaton states plus the longest
    /// relation would contain a pumpable cycle, so the algebra would be
    /// infinite-dimensional.
    fn length_bound(&self) -> usize {
        let a = self.arrows.len().max(1);
        let r = self.relations.iter().map(|r| r.len()).max().unwrap_or(0);
        let states = a.saturating_pow(r.saturating_sub(1) as u32).min(1 << 16);
        states + r + 1
    }

    fn enumerate_paths(&mut self) -> Result<()> {
        let bound = self.length_bound();
        let mut paths_from = vec![Vec::new(); self.n_vertices];
        for (v, bucket) in paths_from.iter_mut().enumerate() {
            let mut frontier = vec![Path::trivial(v)];
            bucket.push(Path::trivial(v));
            let mut len = 0;
            while !frontier.is_empty() {
                len += 1;
                ensure!(
                    len <= bound && bucket.len() <= 100_000,
                    Error::Invalid("algebra is infinite-dimensional (arrow ideal is not nilpotent)".into())
                );
                let mut next = Vec::new();
                for p in &frontier {
                    for (ai, a) in self.arrows.iter().enumerate() {
                        if a.source == p.target {
                            let mut q = p.clone();
                            q.arrows.push(ai);
                            q.target = a.target;
                            if !self.ends_in_relation(&q.arrows) {
                                next.push(q);
                            }
                        }
                    }
                }
                bucket.extend(next.iter().cloned());
                frontier = next;
            }
        }
        for bucket in &mut paths_from {
            bucket.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        }
        self.index = paths_from.iter().flatten().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        self.paths_from = paths_from;
        Ok(())
    }

    fn ends_in_relation(&self, arrows: &[usize]) -> bool {
        self.relations.iter().any(|r| arrows.ends_with(r))
    }

    pub fn is_zero_path(&self, arrows: &[usize]) -> bool {
        (0..arrows.len()).any(|end| self.ends_in_relation(&arrows[..=end]))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[Vec<usize>] {
        &self.relations
    }

    pub fn gl_dim_bound(&self) -> Option<usize> {
        self.gl_dim_bound
    }

    /// Total dimension of the algebra.
    pub fn dim(&self) -> usize {
        self.paths_from.iter().map(|b| b.len()).sum()
    }

    /// Nonzero paths starting at `v`.
    pub fn paths_from(&self, v: usize) -> &[Path] {
        &self.paths_from[v]
    }

    /// Nonzero paths from `v` to `w`.
    pub fn paths(&self, v: usize, w: usize) -> Vec<&Path> {
        self.paths_from[v].iter().filter(|p| p.target == w).collect()
    }

    /// Concatenation `p` then `q`; `None` when not composable or zero.
    pub fn concat(&self, p: &Path, q: &Path) -> Option<Path> {
        if p.target != q.source {
            return None;
        }
        let mut arrows = p.arrows.clone();
        arrows.extend(&q.arrows);
        if self.is_zero_path(&arrows) {
            return None;
        }
        Some(Path { source: p.source, target: q.target, arrows })
    }

    /// Global index of a nonzero path among all basis paths.
    pub fn path_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// The Koszul ladder `Λ_d`: vertices `1..d` (stored as `0..d-1`),
    /// arrows `i → i-1`, all paths of length 2 zero. Global dimension
    /// `d - 1`.
    pub fn koszul_ladder(field: FieldSpec, d: usize) -> Result<Self> {
        ensure!(d >= 1, Error::Invalid("Λ_d needs d >= 1".into()));
        let arrows: Vec<Arrow> = (2..=d)
            .map(|i| Arrow { name: format!("b{i}"), source: i - 1, target: i - 2 })
            .collect();
        let relations = (0..arrows.len().saturating_sub(1)).map(|k| vec![k + 1, k]).collect();
        Self::new(field, d, arrows, relations, Some(d - 1))
    }

    /// `k[x]/(x^2)`: one loop, relation `x^2`. Infinite global dimension.
    pub fn dual_numbers(field: FieldSpec) -> Result<Self> {
        Self::new(field, 1, vec![Arrow { name: "x".into(), source: 0, target: 0 }], vec![vec![0, 0]], None)
    }

    /// `k^n` (no arrows). Global dimension 0.
    pub fn semisimple(field: FieldSpec, n: usize) -> Result<Self> {
        Self::new(field, n, Vec::new(), Vec::new(), Some(0))
    }
}
