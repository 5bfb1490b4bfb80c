use std::fmt;

/// Polynomial in `q` with integer coefficients, lowest degree first and no
/// trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QPoly(Vec<i64>);

impl QPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        QPoly(coeffs)
    }

    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn constant(c: i64) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// The value when the polynomial is constant.
    pub fn as_constant(&self) -> Option<i64> {
        match self.0.len() {
            0 => Some(0),
            1 => Some(self.0[0]),
            _ => None,
        }
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.0.len().max(other.0.len());
        Self::new((0..n).map(|i| self.0.get(i).unwrap_or(&0) + other.0.get(i).unwrap_or(&0)).collect())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn eval(&self, q: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, c| acc * q + c)
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let a = c.abs();
            let coef = if a == 1 && k > 0 { String::new() } else { a.to_string() };
            let var = match k {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{k}"),
            };
            write!(f, "{sign}{coef}{var}")?;
            first = false;
        }
        Ok(())
    }
}

/// Gaussian binomial `[n choose k]_q`: the number of `k`-dimensional
/// subspaces of `F_q^n`.
pub fn gaussian_binomial(n: usize, k: usize) -> QPoly {
    if k > n {
        return QPoly::zero();
    }
    // Pascal rule [n, k] = [n-1, k-1] + q^k [n-1, k].
    let mut row = vec![QPoly::constant(1)];
    for m in 1..=n {
        let mut next = vec![QPoly::zero(); m + 1];
        for (j, slot) in next.iter_mut().enumerate() {
            let left = if j >= 1 { row[j - 1].clone() } else { QPoly::zero() };
            let right = if j < m { shift(&row[j], j) } else { QPoly::zero() };
            *slot = left.add(&right);
        }
        row = next;
    }
    row[k].clone()
}

fn shift(p: &QPoly, k: usize) -> QPoly {
    if p.is_zero() {
        return p.clone();
    }
    let mut c = vec![0; k];
    c.extend_from_slice(p.coeffs());
    QPoly::new(c)
}

/// Even-degree Betti numbers of a Tate-type variety: `h[i]` is `h^{2i}`,
/// a polynomial in `q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BettiPoly {
    pub h: Vec<QPoly>,
}

impl BettiPoly {
    pub fn point() -> Self {
        BettiPoly { h: vec![QPoly::constant(1)] }
    }

    /// `P^n`: one class in each even degree.
    pub fn projective_space(n: usize) -> Self {
        BettiPoly { h: vec![QPoly::constant(1); n + 1] }
    }

    pub fn from_constants(h: &[i64]) -> Self {
        BettiPoly { h: h.iter().map(|&c| QPoly::constant(c)).collect() }
    }

    /// Complex dimension.
    pub fn dim(&self) -> usize {
        self.h.len().saturating_sub(1)
    }

    /// `h^k` for every `k`, odd degrees included.
    pub fn full(&self) -> Vec<QPoly> {
        let mut out = Vec::with_capacity(2 * self.h.len());
        for (i, p) in self.h.iter().enumerate() {
            if i > 0 {
                out.push(QPoly::zero());
            }
            out.push(p.clone());
        }
        out
    }

    pub fn degree(&self, k: usize) -> QPoly {
        if k % 2 == 1 {
            return QPoly::zero();
        }
        self.h.get(k / 2).cloned().unwrap_or_default()
    }

    pub fn is_palindromic(&self) -> bool {
        let n = self.h.len();
        (0..n).all(|i| self.h[i] == self.h[n - 1 - i])
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.h.iter().all(QPoly::has_nonnegative_coeffs)
    }

    /// Euler characteristic at a numeric `q`.
    pub fn euler_at(&self, q: i64) -> i64 {
        self.h.iter().map(|p| p.eval(q)).sum()
    }
}

/// Betti numbers of `B^n`, the iterated blow-up of `P^n` along all
/// rational linear subspaces of dimension `0, …, n-2`, in increasing
/// order.
pub fn bn_betti(n: usize) -> BettiPoly {
    let mut h: Vec<QPoly> = BettiPoly::projective_space(n).h;
    // Blowing up the strict transforms of the m-planes, which by then
    // form a disjoint union of copies of B^m.
    for m in 0..n.saturating_sub(1) {
        let count = gaussian_binomial(n + 1, m + 1);
        let z = bn_betti(m);
        let codim = n - m;
        // P(Y') = P(Y) + P(Z)·(u + … + u^{codim-1}).
        for j in 1..codim {
            for (i, zi) in z.h.iter().enumerate() {
                h[i + j] = h[i + j].add(&zi.mul(&count));
            }
        }
    }
    BettiPoly { h }
}

/// Künneth formula: graded convolution.
pub fn kunneth(a: &BettiPoly, b: &BettiPoly) -> BettiPoly {
    let mut h = vec![QPoly::zero(); a.h.len() + b.h.len() - 1];
    for (i, x) in a.h.iter().enumerate() {
        for (j, y) in b.h.iter().enumerate() {
            h[i + j] = h[i + j].add(&x.mul(y));
        }
    }
    BettiPoly { h }
}
