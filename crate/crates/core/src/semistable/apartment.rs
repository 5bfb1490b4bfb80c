//! The standard apartment of the building of `PGL_d` modulo the coroot
//! lattice. Vertices are lattice classes `x ∈ Z^d / Z(1, …, 1)` of type
//! `Σ x_i mod d`; an alcove is a cyclic chain `w_0, …, w_{d-1}` with
//! `w_{j+1} = w_j + e_{σ(j)}` and `w_0` of type 0.

use std::collections::{BTreeMap, VecDeque};

use super::betti::{bn_betti, kunneth, BettiPoly};
use super::config::{SemistableConfig, StratumCell};
use super::oriented::{OrientedCell, OrientedComplex};
use super::spectral::corner_complexes;
use crate::error::{ensure, Error, Result};
use crate::exactnum::{int, FieldSpec};

type Vertex = Vec<i64>;
type FaceKey = Vec<Vertex>;

fn normalize(x: &[i64]) -> Vertex {
    let last = *x.last().expect("d ≥ 1");
    x.iter().map(|c| c - last).collect()
}

fn vertex_type(x: &[i64], d: usize) -> usize {
    x.iter().sum::<i64>().rem_euclid(d as i64) as usize
}

/// `(1, …, 1, 0, …, 0)` with `t` ones.
fn type_rep(t: usize, d: usize) -> Vertex {
    (0..d).map(|i| i64::from(i < t)).collect()
}

/// Canonical form modulo translations by `{v : Σ v ≡ 0 mod d}`, which
/// contain the coroot lattice and `Z(1, …, 1)`: move the lowest-type
/// vertex onto its type representative. Input is ordered by type.
fn canonical(face: &[Vertex], d: usize) -> FaceKey {
    let t = vertex_type(&face[0], d);
    let rep = type_rep(t, d);
    let shift: Vec<i64> = rep.iter().zip(&face[0]).map(|(r, x)| r - x).collect();
    face.iter().map(|v| normalize(&v.iter().zip(&shift).map(|(a, b)| a + b).collect::<Vec<_>>())).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Alcove {
    w0: Vertex,
    steps: Vec<usize>,
}

impl Alcove {
    fn chain(&self) -> Vec<Vertex> {
        let mut out = vec![self.w0.clone()];
        for &s in &self.steps[..self.steps.len() - 1] {
            let mut next = out.last().expect("nonempty").clone();
            next[s] += 1;
            out.push(next);
        }
        out
    }

    fn key(&self, d: usize) -> FaceKey {
        canonical(&self.chain(), d)
    }

    /// The alcove across the wall opposite the vertex of type `k`.
    fn neighbor(&self, k: usize) -> Alcove {
        let d = self.steps.len();
        let mut steps = self.steps.clone();
        let mut w0 = self.w0.clone();
        if k == 0 {
            w0[steps[d - 1]] -= 1;
            w0[steps[0]] += 1;
            steps.swap(0, d - 1);
        } else {
            steps.swap(k - 1, k);
        }
        Alcove { w0, steps }
    }

    fn sign(&self) -> i8 {
        let mut inv = 0;
        for i in 0..self.steps.len() {
            for j in i + 1..self.steps.len() {
                if self.steps[i] > self.steps[j] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Strata `B^{d_1} × … × B^{d_m}` of a face with vertex types
/// `t_1 < … < t_m`: `d_i` is the cyclic gap `t_{i+1} - t_i - 1`.
pub fn face_betti(types: &[usize], d: usize) -> BettiPoly {
    let m = types.len();
    (0..m).fold(BettiPoly::point(), |acc, i| {
        let next = if i + 1 < m { types[i + 1] } else { types[0] + d };
        kunneth(&acc, &bn_betti(next - types[i] - 1))
    })
}

/// The quotient apartment: its faces by size, and the alcove coloring.
#[derive(Debug, Clone)]
pub struct Apartment {
    pub d: usize,
    /// `faces[m - 1]`: canonical faces with `m` vertices, ordered by type.
    faces: Vec<Vec<FaceKey>>,
    /// For each face of size `m ≥ 2`, the faces obtained by omitting each
    /// vertex in type order.
    face_of: Vec<Vec<Vec<usize>>>,
    /// Gallery-distance parity of each alcove, `+1` for even.
    pub parity: Vec<i8>,
    /// Sign of the permutation `σ` of each alcove.
    pub perm_sign: Vec<i8>,
    /// Adjacent alcoves always have opposite parity.
    pub bipartite: bool,
}

impl Apartment {
    pub fn alcove_count(&self) -> usize {
        self.faces[self.d - 1].len()
    }

    pub fn face_count(&self, m: usize) -> usize {
        self.faces[m - 1].len()
    }

    fn types(&self, m: usize, i: usize) -> Vec<usize> {
        self.faces[m - 1][i].iter().map(|v| vertex_type(v, self.d)).collect()
    }

    /// The oriented complex with `ε = (-1)^{position of the omitted vertex}`
    /// and the ± coloring of alcoves.
    pub fn oriented(&self) -> Result<OrientedComplex> {
        let cells = (1..=self.d)
            .map(|m| {
                (0..self.face_count(m))
                    .map(|i| OrientedCell { faces: self.signed_faces(m, i) })
                    .collect()
            })
            .collect();
        OrientedComplex::new(cells, Some(self.parity.clone()))
    }

    fn signed_faces(&self, m: usize, i: usize) -> Vec<(usize, i8)> {
        if m == 1 {
            return Vec::new();
        }
        self.face_of[m - 1][i].iter().enumerate().map(|(pos, &f)| (f, if pos % 2 == 0 { 1 } else { -1 })).collect()
    }

    /// As a semistable configuration of relative dimension `d - 1`: one
    /// component per vertex class, strata products of `B^k`.
    pub fn config(&self) -> Result<SemistableConfig> {
        let cells = (1..=self.d)
            .map(|m| {
                (0..self.face_count(m))
                    .map(|i| {
                        let types = self.types(m, i);
                        StratumCell { betti: face_betti(&types, self.d), support: types, faces: self.signed_faces(m, i) }
                    })
                    .collect()
            })
            .collect();
        SemistableConfig::new(self.d - 1, self.d, cells)
    }
}

/// Enumerate alcoves by breadth-first search across walls, modulo
/// translations, then collect all faces.
pub fn apartment(d: usize) -> Result<Apartment> {
    ensure!(d >= 2, Error::Invalid(format!("apartment needs d ≥ 2, got {d}")));
    let start = Alcove { w0: vec![0; d], steps: (0..d).collect() };
    let mut index: BTreeMap<FaceKey, usize> = BTreeMap::new();
    let mut alcoves: Vec<Alcove> = Vec::new();
    let mut parity: Vec<i8> = Vec::new();
    let mut bipartite = true;
    let mut queue = VecDeque::new();
    index.insert(start.key(d), 0);
    alcoves.push(start.clone());
    parity.push(1);
    queue.push_back(0);
    while let Some(a) = queue.pop_front() {
        for k in 0..d {
            let b = alcoves[a].neighbor(k);
            let key = b.key(d);
            match index.get(&key) {
                Some(&j) => bipartite &= parity[j] == -parity[a],
                None => {
                    let j = alcoves.len();
                    index.insert(key, j);
                    alcoves.push(b);
                    parity.push(-parity[a]);
                    queue.push_back(j);
                }
            }
        }
    }
    let perm_sign = alcoves.iter().map(Alcove::sign).collect();

    let mut faces: Vec<BTreeMap<FaceKey, ()>> = vec![BTreeMap::new(); d];
    for a in &alcoves {
        let chain = a.chain();
        for mask in 1u32..(1 << d) {
            let sub: Vec<Vertex> = (0..d).filter(|i| mask & (1 << i) != 0).map(|i| chain[i].clone()).collect();
            faces[sub.len() - 1].insert(canonical(&sub, d), ());
        }
    }
    // Alcoves keep their discovery order so `parity` lines up.
    let mut levels: Vec<Vec<FaceKey>> = faces.into_iter().map(|m| m.into_keys().collect()).collect();
    levels[d - 1] = alcoves.iter().map(|a| a.key(d)).collect();
    let lookup: Vec<BTreeMap<FaceKey, usize>> =
        levels.iter().map(|l| l.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect()).collect();
    let face_of = levels
        .iter()
        .enumerate()
        .map(|(m0, lvl)| {
            if m0 == 0 {
                return vec![Vec::new(); lvl.len()];
            }
            lvl.iter()
                .map(|key| {
                    (0..key.len())
                        .map(|i| {
                            let mut sub = key.clone();
                            sub.remove(i);
                            lookup[m0 - 1][&canonical(&sub, d)]
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(Apartment { d, faces: levels, face_of, parity, perm_sign, bipartite })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApartmentCheck {
    pub d: usize,
    pub alcoves: usize,
    /// `d₁(1_+ - 1_-) = 0` on every wall.
    pub in_kernel: bool,
    /// `⟨1_+ - 1_-, 1_+ - 1_-⟩`.
    pub self_pairing: i64,
    pub bipartite: bool,
    /// Parity agrees with the sign of the alcove's permutation.
    pub parity_is_sign: bool,
}

pub fn apartment_check(d: usize) -> Result<ApartmentCheck> {
    let ap = apartment(d)?;
    ap.oriented()?;
    let cfg = ap.config()?;
    let corners = corner_complexes(&cfg)?;
    let f = FieldSpec::Rationals;
    let indicator: Vec<_> = ap.parity.iter().map(|&p| int(p as i64)).collect();
    let image = corners.gysin.mul_vec(&indicator);
    let in_kernel = image.iter().all(|x| *x == f.zero());
    let self_pairing = ap.parity.iter().map(|&p| (p as i64) * (p as i64)).sum();
    let parity_is_sign = ap.parity == ap.perm_sign;
    Ok(ApartmentCheck { d, alcoves: ap.alcove_count(), in_kernel, self_pairing, bipartite: ap.bipartite, parity_is_sign })
}
