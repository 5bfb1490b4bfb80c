use std::fmt;

use crate::error::{ensure, Error, Result};

/// A subset `I` of `S_d = {1, …, d-1}`, the simple roots of `GL_d`
/// numbered from top to bottom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetI {
    d: u32,
    mask: u64,
}

impl SubsetI {
    pub fn new(d: u32, members: &[u32]) -> Result<Self> {
        ensure!(d >= 1, Error::Invalid("d must be at least 1".into()));
        ensure!(d <= 64, Error::Invalid(format!("d = {d} is larger than supported (64)")));
        let mut mask = 0u64;
        for &x in members {
            ensure!(
                (1..d).contains(&x),
                Error::Invalid(format!("{x} is not in S_{d} = {{1..{}}}", d - 1))
            );
            mask |= 1 << x;
        }
        Ok(SubsetI { d, mask })
    }

    pub fn empty(d: u32) -> Result<Self> {
        Self::new(d, &[])
    }

    /// All of `S_d`.
    pub fn full(d: u32) -> Result<Self> {
        let all: Vec<u32> = (1..d).collect();
        Self::new(d, &all)
    }

    /// All `2^{d-1}` subsets of `S_d`, by increasing bitmask.
    pub fn all(d: u32) -> Result<Vec<SubsetI>> {
        ensure!((1..=20).contains(&d), Error::Invalid(format!("refusing to enumerate subsets for d = {d}")));
        Ok((0..(1u64 << (d - 1))).map(|bits| SubsetI { d, mask: bits << 1 }).collect())
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn contains(&self, x: u32) -> bool {
        x < 64 && self.mask & (1 << x) != 0
    }

    pub fn members(&self) -> Vec<u32> {
        (1..self.d).filter(|&x| self.contains(x)).collect()
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    fn full_mask(&self) -> u64 {
        ((1u64 << self.d) - 1) & !1
    }

    fn check_same_d(&self, other: &SubsetI) -> Result<()> {
        ensure!(
            self.d == other.d,
            Error::Invalid(format!("subsets of S_{} and S_{} cannot be compared", self.d, other.d))
        );
        Ok(())
    }

    /// `I^c` in `S_d`.
    pub fn complement(&self) -> SubsetI {
        SubsetI { d: self.d, mask: self.full_mask() & !self.mask }
    }

    /// `Ī = {d - x : x ∈ I}`.
    pub fn bar(&self) -> SubsetI {
        let mut mask = 0;
        for x in self.members() {
            mask |= 1 << (self.d - x);
        }
        SubsetI { d: self.d, mask }
    }

    /// Symmetric difference `Δ(I, J)`.
    pub fn sym_diff(&self, other: &SubsetI) -> Result<SubsetI> {
        self.check_same_d(other)?;
        Ok(SubsetI { d: self.d, mask: self.mask ^ other.mask })
    }

    /// `δ(I, J) = |Δ(I, J)|`.
    pub fn delta(&self, other: &SubsetI) -> Result<usize> {
        Ok(self.sym_diff(other)?.len())
    }

    pub fn is_subset_of(&self, other: &SubsetI) -> bool {
        self.d == other.d && self.mask & !other.mask == 0
    }

    pub fn is_disjoint_from(&self, other: &SubsetI) -> bool {
        self.mask & other.mask == 0
    }

    /// Parse a comma-separated member list; the empty string is `∅`.
    pub fn parse(d: u32, s: &str) -> Result<Self> {
        let s = s.trim();
        let members = if s.is_empty() {
            Vec::new()
        } else {
            s.split(',')
                .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Invalid(format!("bad subset member {t:?}"))))
                .collect::<Result<Vec<_>>>()?
        };
        Self::new(d, &members)
    }
}

impl fmt::Display for SubsetI {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ms: Vec<String> = self.members().iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}} ⊆ S_{}", ms.join(","), self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(d: u32, xs: &[u32]) -> SubsetI {
        SubsetI::new(d, xs).unwrap()
    }

    #[test]
    fn delta_basics() {
        let i = s(3, &[1]);
        assert_eq!(i.delta(&i).unwrap(), 0);
        assert_eq!(s(3, &[1]).delta(&s(3, &[2])).unwrap(), 2);
        assert!(s(3, &[1]).delta(&s(4, &[1])).is_err());
        assert!(SubsetI::new(3, &[3]).is_err());
    }

    #[test]
    fn worked_triple() {
        let (i, j, k) = (s(3, &[1, 2]), s(3, &[]), s(3, &[1]));
        let dij = i.sym_diff(&j).unwrap();
        assert!(j.sym_diff(&k).unwrap().is_subset_of(&dij));
        assert_eq!(i.delta(&j).unwrap(), 2);
        assert_eq!(j.delta(&k).unwrap() + k.delta(&i).unwrap(), 2);
    }

    #[test]
    fn involutions() {
        for d in 1..=6 {
            for i in SubsetI::all(d).unwrap() {
                assert_eq!(i.bar().bar(), i);
                assert_eq!(i.complement().complement(), i);
                assert_eq!(i.complement(), i.sym_diff(&SubsetI::full(d).unwrap()).unwrap());
                assert_eq!(i.bar().complement(), i.complement().bar());
            }
        }
    }

    /// The three conditions `Δ(I,J) ⊇ Δ(J,K)`, `Δ(I,J) = Δ(J,K) ⊔ Δ(K,I)`
    /// and `δ(I,J) = δ(J,K) + δ(K,I)` agree on every triple for d ≤ 6.
    #[test]
    fn symmetric_difference_conditions_are_equivalent() {
        for d in 1..=6 {
            let all = SubsetI::all(d).unwrap();
            for i in &all {
                for j in &all {
                    for k in &all {
                        let dij = i.sym_diff(j).unwrap();
                        let djk = j.sym_diff(k).unwrap();
                        let dki = k.sym_diff(i).unwrap();
                        let c1 = djk.is_subset_of(&dij);
                        let c2 = djk.is_disjoint_from(&dki) && djk.mask | dki.mask == dij.mask;
                        let c3 = dij.len() == djk.len() + dki.len();
                        assert_eq!(c1, c2, "{i} {j} {k}");
                        assert_eq!(c2, c3, "{i} {j} {k}");
                    }
                }
            }
        }
    }

    #[test]
    fn triangle_inequality() {
        let all = SubsetI::all(5).unwrap();
        for i in &all {
            for j in &all {
                for k in &all {
                    assert!(i.delta(k).unwrap() <= i.delta(j).unwrap() + j.delta(k).unwrap());
                }
            }
        }
    }

    #[test]
    fn parse_lists() {
        assert_eq!(SubsetI::parse(4, "").unwrap(), s(4, &[]));
        assert_eq!(SubsetI::parse(4, "1, 3").unwrap(), s(4, &[1, 3]));
        assert!(SubsetI::parse(4, "x").is_err());
    }
}
