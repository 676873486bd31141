//! Brute-force references for differential testing.
//!
//! [`dense_operator`] writes every step operator out as an explicit matrix
//! over the flattened state index, entry by entry, without going through the
//! sparse step engine. [`enumerate_paths`] sums signed left/right decision
//! sequences with exact integer coefficients. Both are slow by construction
//! and meant for small lattices.
//!
//! Flat index conventions match the state types:
//! single `c * n + s`, extended `(c * 2 + a) * n + s`, pair
//! `((c1 * 2 + c2) * n + s1) * n + s2`, with `n` lattice sites.

use std::collections::BTreeMap;

use num_complex::Complex;

use crate::entangled::BecKick;
use crate::lattice::Lattice;
use crate::walk::SignVariant;
use crate::{normalize, Amplitudes, Real, Result, WalkError};

/// Largest dense dimension the oracle will build.
pub const MAX_DENSE_DIM: usize = 2048;

/// Longest walk [`enumerate_paths`] will expand.
pub const MAX_PATH_STEPS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OracleKind {
    HadamardCoin,
    ConditionalShift,
    HadamardWalk,
    CoinlessReduced,
    Extended,
    /// Reduced shift on both particles of a pair.
    Pair,
    /// Literal constrained-walk kick on both particles, before projection.
    BecKick,
    /// Projector onto `x1 == x2`.
    Colocated,
}

/// Square complex matrix, column-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> DenseMatrix<T> {
    pub fn zeros(dim: usize) -> Result<Self> {
        if dim > MAX_DENSE_DIM {
            return Err(WalkError::DimensionTooLarge {
                dim,
                max: MAX_DENSE_DIM,
            });
        }
        Ok(Self {
            dim,
            data: vec![Complex::default(); dim * dim],
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.data[col * self.dim + row]
    }

    fn add(&mut self, row: usize, col: usize, v: Complex<T>) {
        let e = &mut self.data[col * self.dim + row];
        *e = *e + v;
    }

    pub fn apply(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(v.len(), self.dim);
        let mut out = vec![Complex::default(); self.dim];
        for (col, &x) in v.iter().enumerate() {
            if x == Complex::default() {
                continue;
            }
            let column = &self.data[col * self.dim..(col + 1) * self.dim];
            for (o, &m) in out.iter_mut().zip(column) {
                *o = *o + m * x;
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let mut out = Self {
            dim: self.dim,
            data: Vec::with_capacity(self.data.len()),
        };
        for col in 0..self.dim {
            out.data
                .extend(self.apply(&rhs.data[col * self.dim..(col + 1) * self.dim]));
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self {
            dim: self.dim,
            data: vec![Complex::default(); self.data.len()],
        };
        for row in 0..self.dim {
            for col in 0..self.dim {
                out.data[row * self.dim + col] = self.get(row, col).conj();
            }
        }
        out
    }

    /// Largest `|M[i][j] − δ_ij|`.
    pub fn max_deviation_from_identity(&self) -> T {
        let mut worst = T::zero();
        for col in 0..self.dim {
            for row in 0..self.dim {
                let id = if row == col { T::one() } else { T::zero() };
                worst = worst.max((self.get(row, col) - Complex::new(id, T::zero())).norm());
            }
        }
        worst
    }

    /// Largest off-diagonal magnitude.
    pub fn max_off_diagonal(&self) -> T {
        let mut worst = T::zero();
        for col in 0..self.dim {
            for row in (0..self.dim).filter(|&r| r != col) {
                worst = worst.max(self.get(row, col).norm());
            }
        }
        worst
    }

    /// Euclidean norm of column `col`.
    pub fn column_norm(&self, col: usize) -> T {
        self.data[col * self.dim..(col + 1) * self.dim]
            .iter()
            .fold(T::zero(), |acc, e| acc + e.norm_sqr())
            .sqrt()
    }

    /// True when every row and column holds exactly one entry equal to 1 and
    /// all other entries are exactly 0.
    pub fn is_permutation(&self) -> bool {
        let one = Complex::new(T::one(), T::zero());
        let zero = Complex::default();
        let mut row_hits = vec![0usize; self.dim];
        for col in 0..self.dim {
            let mut hits = 0;
            for (row, hit) in row_hits.iter_mut().enumerate() {
                let e = self.get(row, col);
                if e == one {
                    hits += 1;
                    *hit += 1;
                } else if e != zero {
                    return false;
                }
            }
            if hits != 1 {
                return false;
            }
        }
        row_hits.iter().all(|&h| h == 1)
    }
}

fn single_dim(lattice: Lattice) -> usize {
    2 * lattice.sites()
}

fn pair_dim(lattice: Lattice) -> usize {
    4 * lattice.sites() * lattice.sites()
}

/// `target` is `Some(site)` when `site + shift` is on the lattice.
fn shifted(site: usize, shift: isize, n: usize) -> Option<usize> {
    site.checked_add_signed(shift).filter(|&t| t < n)
}

fn hadamard_coin_matrix<T: Real>(lattice: Lattice) -> Result<DenseMatrix<T>> {
    let n = lattice.sites();
    let r = T::FRAC_1_SQRT_2();
    let h = [[r, r], [r, -r]];
    let mut m = DenseMatrix::zeros(single_dim(lattice))?;
    for s in 0..n {
        for (c_out, row) in h.iter().enumerate() {
            for (c_in, &v) in row.iter().enumerate() {
                m.add(c_out * n + s, c_in * n + s, Complex::new(v, T::zero()));
            }
        }
    }
    Ok(m)
}

fn shift_matrix<T: Real>(lattice: Lattice) -> Result<DenseMatrix<T>> {
    let n = lattice.sites();
    let one = Complex::new(T::one(), T::zero());
    let mut m = DenseMatrix::zeros(single_dim(lattice))?;
    for s in 0..n {
        if let Some(t) = shifted(s, -1, n) {
            m.add(t, s, one);
        }
        if let Some(t) = shifted(s, 1, n) {
            m.add(n + t, n + s, one);
        }
    }
    Ok(m)
}

fn coinless_matrix<T: Real>(sign: SignVariant, lattice: Lattice) -> Result<DenseMatrix<T>> {
    let n = lattice.sites();
    let r = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
    let sr = r.scale(sign.factor());
    let mut m = DenseMatrix::zeros(single_dim(lattice))?;
    for s in 0..n {
        // coin 0: (|x-1⟩ ± |x+1⟩)/√2
        if let Some(t) = shifted(s, -1, n) {
            m.add(t, s, r);
        }
        if let Some(t) = shifted(s, 1, n) {
            m.add(t, s, sr);
        }
        // coin 1: (|x+1⟩ ± |x-1⟩)/√2
        if let Some(t) = shifted(s, 1, n) {
            m.add(n + t, n + s, r);
        }
        if let Some(t) = shifted(s, -1, n) {
            m.add(n + t, n + s, sr);
        }
    }
    Ok(m)
}

fn extended_matrix<T: Real>(lattice: Lattice) -> Result<DenseMatrix<T>> {
    let n = lattice.sites();
    let one = Complex::new(T::one(), T::zero());
    let mut m = DenseMatrix::zeros(4 * n)?;
    let moves = [((0, 0), -1), ((0, 1), 1), ((1, 0), 1), ((1, 1), -1)];
    for ((c, a), shift) in moves {
        let block = (c * 2 + a) * n;
        for s in 0..n {
            if let Some(t) = shifted(s, shift, n) {
                m.add(block + t, block + s, one);
            }
        }
    }
    Ok(m)
}

/// Extended shift on the ring of `lattice.sites()` sites, so edge
/// amplitude wraps around instead of being dropped.
pub fn extended_periodic_operator<T: Real>(lattice: Lattice) -> Result<DenseMatrix<T>> {
    let n = lattice.sites();
    let one = Complex::new(T::one(), T::zero());
    let mut m = DenseMatrix::zeros(4 * n)?;
    let moves = [((0, 0), n - 1), ((0, 1), 1), ((1, 0), 1), ((1, 1), n - 1)];
    for ((c, a), step) in moves {
        let block = (c * 2 + a) * n;
        for s in 0..n {
            m.add(block + (s + step) % n, block + s, one);
        }
    }
    Ok(m)
}

/// Single-particle matrix of the constrained-walk kick.
fn kick_matrix<T: Real>(kick: BecKick<T>, lattice: Lattice) -> Result<DenseMatrix<T>> {
    let n = lattice.sites();
    let mv = Complex::new(kick.move_amp, T::zero());
    let stay = Complex::new(kick.stay_amp, T::zero());
    let mut m = DenseMatrix::zeros(single_dim(lattice))?;
    for c in 0..2 {
        let flipped = 1 - c;
        for s in 0..n {
            m.add(c * n + s, c * n + s, stay);
            for shift in [-1, 1] {
                if let Some(t) = shifted(s, shift, n) {
                    m.add(flipped * n + t, c * n + s, mv);
                }
            }
        }
    }
    Ok(m)
}

/// `A ⊗ A` in pair index order, from a single-particle matrix `A`.
fn pair_product<T: Real>(a: &DenseMatrix<T>, lattice: Lattice) -> Result<DenseMatrix<T>> {
    let n = lattice.sites();
    let mut m = DenseMatrix::zeros(pair_dim(lattice))?;
    let idx = |c1: usize, c2: usize, s1: usize, s2: usize| ((c1 * 2 + c2) * n + s1) * n + s2;
    let single = |c: usize, s: usize| c * n + s;
    for c1 in 0..2 {
        for c2 in 0..2 {
            for s1 in 0..n {
                for s2 in 0..n {
                    let col = idx(c1, c2, s1, s2);
                    for d1 in 0..2 {
                        for t1 in 0..n {
                            let a1 = a.get(single(d1, t1), single(c1, s1));
                            if a1 == Complex::default() {
                                continue;
                            }
                            for d2 in 0..2 {
                                for t2 in 0..n {
                                    let a2 = a.get(single(d2, t2), single(c2, s2));
                                    if a2 != Complex::default() {
                                        m.add(idx(d1, d2, t1, t2), col, a1 * a2);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(m)
}

fn colocated_projector<T: Real>(lattice: Lattice) -> Result<DenseMatrix<T>> {
    let n = lattice.sites();
    let one = Complex::new(T::one(), T::zero());
    let mut m = DenseMatrix::zeros(pair_dim(lattice))?;
    for c in 0..4 {
        for s in 0..n {
            let i = (c * n + s) * n + s;
            m.add(i, i, one);
        }
    }
    Ok(m)
}

/// Explicit matrix of `kind` on `lattice`. `sign` matters only for the
/// reduced shift and the pair walk.
pub fn dense_operator<T: Real>(
    kind: OracleKind,
    sign: SignVariant,
    lattice: Lattice,
) -> Result<DenseMatrix<T>> {
    let dim = match kind {
        OracleKind::Pair | OracleKind::BecKick | OracleKind::Colocated => pair_dim(lattice),
        OracleKind::Extended => 4 * lattice.sites(),
        _ => single_dim(lattice),
    };
    if dim > MAX_DENSE_DIM {
        return Err(WalkError::DimensionTooLarge {
            dim,
            max: MAX_DENSE_DIM,
        });
    }
    match kind {
        OracleKind::HadamardCoin => hadamard_coin_matrix(lattice),
        OracleKind::ConditionalShift => shift_matrix(lattice),
        OracleKind::HadamardWalk => {
            Ok(shift_matrix(lattice)?.matmul(&hadamard_coin_matrix(lattice)?))
        }
        OracleKind::CoinlessReduced => coinless_matrix(sign, lattice),
        OracleKind::Extended => extended_matrix(lattice),
        OracleKind::Pair => pair_product(&coinless_matrix(sign, lattice)?, lattice),
        OracleKind::BecKick => dense_kick_operator(BecKick::literal(), lattice),
        OracleKind::Colocated => colocated_projector(lattice),
    }
}

/// Pair matrix of an arbitrary constrained-walk kick on both particles.
pub fn dense_kick_operator<T: Real>(kick: BecKick<T>, lattice: Lattice) -> Result<DenseMatrix<T>> {
    if pair_dim(lattice) > MAX_DENSE_DIM {
        return Err(WalkError::DimensionTooLarge {
            dim: pair_dim(lattice),
            max: MAX_DENSE_DIM,
        });
    }
    pair_product(&kick_matrix(kick, lattice)?, lattice)
}

struct Raw<T>(Vec<Complex<T>>);

impl<T: Real> Amplitudes<T> for Raw<T> {
    fn amplitudes(&self) -> &[Complex<T>] {
        &self.0
    }

    fn amplitudes_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.0
    }
}

/// `steps` applications of `m` to `v`, renormalizing after each when asked.
pub fn iterate<T: Real>(
    m: &DenseMatrix<T>,
    v: &[Complex<T>],
    steps: usize,
    renormalize: bool,
) -> Result<Vec<Complex<T>>> {
    let mut cur = v.to_vec();
    for _ in 0..steps {
        cur = m.apply(&cur);
        if renormalize {
            cur = normalize(Raw(cur))?.0 .0;
        }
    }
    Ok(cur)
}

/// `steps` constrained-walk steps: kick, project, renormalize.
pub fn iterate_constrained<T: Real>(
    kick: &DenseMatrix<T>,
    projector: &DenseMatrix<T>,
    v: &[Complex<T>],
    steps: usize,
) -> Result<Vec<Complex<T>>> {
    let mut cur = v.to_vec();
    for _ in 0..steps {
        cur = projector.apply(&kick.apply(&cur));
        cur = normalize(Raw(cur))?.0 .0;
    }
    Ok(cur)
}

/// Walks supported by [`enumerate_paths`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathKind {
    HadamardWalk,
    CoinlessReduced,
    Extended,
}

/// Basis state `|coin, ancilla, x⟩`; `ancilla` is 0 outside the extended walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathKey {
    pub coin: u8,
    pub ancilla: u8,
    pub x: i64,
}

/// Exact amplitude map: each amplitude is `coeff · 2^(−half_power / 2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSum {
    pub half_power: u32,
    pub coeffs: BTreeMap<PathKey, i64>,
}

impl PathSum {
    pub fn coeff(&self, coin: u8, ancilla: u8, x: i64) -> i64 {
        self.coeffs
            .get(&PathKey { coin, ancilla, x })
            .copied()
            .unwrap_or(0)
    }

    pub fn scale<T: Real>(&self) -> T {
        T::lit(2f64.powf(-(self.half_power as f64) / 2.0))
    }

    pub fn amplitude<T: Real>(&self, coin: u8, ancilla: u8, x: i64) -> T {
        T::lit(self.coeff(coin, ancilla, x) as f64) * self.scale()
    }

    /// Sum of squared amplitudes.
    pub fn norm_sqr<T: Real>(&self) -> T {
        let s = self.scale::<T>();
        self.coeffs
            .values()
            .fold(T::zero(), |acc, &c| acc + (T::lit(c as f64) * s).powi(2))
    }
}

/// Sums every left/right decision sequence of `steps` steps from `start`.
///
/// Hadamard walk: each step picks the next coin `c'` with weight
/// `H[c'][c]·√2 ∈ {±1}`, then moves by the new coin. Reduced shift: each step
/// picks a direction; the "against the coin" direction carries the sign.
/// Extended walk: a single deterministic path.
pub fn enumerate_paths(
    kind: PathKind,
    sign: SignVariant,
    steps: usize,
    start: PathKey,
) -> Result<PathSum> {
    if steps > MAX_PATH_STEPS {
        return Err(WalkError::TooManySteps {
            steps,
            max: MAX_PATH_STEPS,
        });
    }
    let s: i64 = match sign {
        SignVariant::Plus => 1,
        SignVariant::Minus => -1,
    };
    let mut coeffs = BTreeMap::new();
    let half_power = match kind {
        PathKind::Extended => 0,
        _ => steps as u32,
    };
    match kind {
        PathKind::Extended => {
            let left_first = (start.coin == 0) == (start.ancilla == 0);
            let dir = if left_first { -1 } else { 1 };
            let end = PathKey {
                x: start.x + dir * steps as i64,
                ..start
            };
            coeffs.insert(end, 1);
        }
        PathKind::HadamardWalk | PathKind::CoinlessReduced => {
            for choices in 0u32..(1 << steps) {
                let (mut coin, mut x, mut weight) = (start.coin, start.x, 1i64);
                for k in 0..steps {
                    let bit = ((choices >> k) & 1) as u8;
                    if kind == PathKind::HadamardWalk {
                        if coin == 1 && bit == 1 {
                            weight = -weight;
                        }
                        coin = bit;
                        x += if coin == 0 { -1 } else { 1 };
                    } else {
                        let right = bit == 1;
                        let with_coin = (coin == 0) != right;
                        if !with_coin {
                            weight *= s;
                        }
                        x += if right { 1 } else { -1 };
                    }
                }
                *coeffs
                    .entry(PathKey {
                        coin,
                        ancilla: 0,
                        x,
                    })
                    .or_insert(0) += weight;
            }
        }
    }
    coeffs.retain(|_, c| *c != 0);
    Ok(PathSum { half_power, coeffs })
}
