//! Lattice geometry, amplitude containers and walk configuration.
//!
//! Every state is a dense vector of complex amplitudes over a bounded lattice
//! of `2 * half_width + 1` sites with unit step length. Amplitudes are stored
//! internal-index-major: for a single particle the flat index is
//! `internal * sites + site`, where `internal` is the coin (or the combined
//! coin/ancilla index for [`ExtendedState`]). Pair states use
//! `((c1 * 2 + c2) * sites + site1) * sites + site2`.

use num_complex::Complex;

use crate::walk::SignVariant;
use crate::{Real, Result, WalkError};

/// Bounded one-dimensional lattice `origin - half_width ..= origin + half_width`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lattice {
    origin: i64,
    half_width: usize,
}

impl Lattice {
    pub fn new(origin: i64, half_width: usize) -> Self {
        Self { origin, half_width }
    }

    /// Lattice just wide enough that `steps` unit moves from `origin` stay inside.
    pub fn for_steps(origin: i64, steps: usize) -> Self {
        Self::new(origin, steps)
    }

    pub fn origin(&self) -> i64 {
        self.origin
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    pub fn sites(&self) -> usize {
        2 * self.half_width + 1
    }

    pub fn position(&self, site: usize) -> i64 {
        self.origin - self.half_width as i64 + site as i64
    }

    pub fn site(&self, position: i64) -> Option<usize> {
        let offset = position - self.origin + self.half_width as i64;
        (0..self.sites() as i64)
            .contains(&offset)
            .then_some(offset as usize)
    }

    pub fn positions(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.sites()).map(move |s| self.position(s))
    }
}

/// Read/write access to the flat amplitude vector of a state.
pub trait Amplitudes<T: Real> {
    fn amplitudes(&self) -> &[Complex<T>];
    fn amplitudes_mut(&mut self) -> &mut [Complex<T>];

    fn norm_sqr(&self) -> T {
        self.amplitudes()
            .iter()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }
}

/// A state of one particle whose amplitudes are laid out `internal * sites + site`.
pub trait SingleParticle<T: Real>: Amplitudes<T> {
    fn lattice(&self) -> Lattice;

    /// Dimension of the internal register (2 for a coin, 4 for coin ⊗ ancilla).
    fn internal_dim(&self) -> usize {
        self.amplitudes().len() / self.lattice().sites()
    }

    /// Smallest and largest position carrying a nonzero amplitude.
    fn support(&self) -> Option<(i64, i64)> {
        let lattice = self.lattice();
        let sites = lattice.sites();
        let occupied = |site: usize| {
            (0..self.internal_dim())
                .any(|k| self.amplitudes()[k * sites + site] != Complex::default())
        };
        let lo = (0..sites).find(|&s| occupied(s))?;
        let hi = (0..sites).rev().find(|&s| occupied(s))?;
        Some((lattice.position(lo), lattice.position(hi)))
    }
}

/// Rescales `state` to unit norm, returning it together with its prior norm.
pub fn normalize<T: Real, S: Amplitudes<T>>(mut state: S) -> Result<(S, T)> {
    let norm = state.norm();
    if norm.is_nan() || norm < T::zero_norm_floor() {
        return Err(WalkError::ZeroNorm {
            norm: norm.to_f64().unwrap_or(f64::NAN),
        });
    }
    let inv = norm.recip();
    for a in state.amplitudes_mut() {
        *a = a.scale(inv);
    }
    Ok((state, norm))
}

macro_rules! impl_amplitudes {
    ($ty:ident) => {
        impl<T: Real> Amplitudes<T> for $ty<T> {
            fn amplitudes(&self) -> &[Complex<T>] {
                &self.amp
            }

            fn amplitudes_mut(&mut self) -> &mut [Complex<T>] {
                &mut self.amp
            }
        }
    };
}

/// Particle with a two-state coin on a lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleState<T> {
    lattice: Lattice,
    amp: Vec<Complex<T>>,
}

impl_amplitudes!(SingleState);

impl<T: Real> SingleParticle<T> for SingleState<T> {
    fn lattice(&self) -> Lattice {
        self.lattice
    }
}

impl<T: Real> SingleState<T> {
    pub fn zeros(lattice: Lattice) -> Self {
        Self {
            lattice,
            amp: vec![Complex::default(); 2 * lattice.sites()],
        }
    }

    /// `coin ⊗ |origin⟩`.
    pub fn localized(lattice: Lattice, coin: CoinState) -> Self {
        let mut s = Self::zeros(lattice);
        let [a0, a1] = coin.amplitudes();
        s.set(0, lattice.origin(), a0);
        s.set(1, lattice.origin(), a1);
        s
    }

    pub(crate) fn from_raw(lattice: Lattice, amp: Vec<Complex<T>>) -> Self {
        debug_assert_eq!(amp.len(), 2 * lattice.sites());
        Self { lattice, amp }
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    fn index(&self, coin: usize, position: i64) -> Option<usize> {
        assert!(coin < 2, "coin index {coin} out of range");
        Some(coin * self.lattice.sites() + self.lattice.site(position)?)
    }

    /// Amplitude of `|coin, position⟩`; zero outside the lattice.
    pub fn get(&self, coin: usize, position: i64) -> Complex<T> {
        self.index(coin, position)
            .map_or_else(Complex::default, |i| self.amp[i])
    }

    /// Panics if `position` is off the lattice.
    pub fn set(&mut self, coin: usize, position: i64, value: Complex<T>) {
        let i = self
            .index(coin, position)
            .unwrap_or_else(|| panic!("position {position} is off the lattice"));
        self.amp[i] = value;
    }

    /// Amplitudes of one coin component, indexed by site.
    pub fn coin_component(&self, coin: usize) -> &[Complex<T>] {
        let n = self.lattice.sites();
        &self.amp[coin * n..(coin + 1) * n]
    }

    /// Total probability carried by each coin value.
    pub fn coin_marginal(&self) -> [T; 2] {
        let weight = |c: usize| {
            self.coin_component(c)
                .iter()
                .fold(T::zero(), |acc, a| acc + a.norm_sqr())
        };
        [weight(0), weight(1)]
    }
}

/// Particle with coin and momentum-ancilla registers on a lattice.
///
/// The internal index is `coin * 2 + ancilla`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedState<T> {
    lattice: Lattice,
    amp: Vec<Complex<T>>,
}

impl_amplitudes!(ExtendedState);

impl<T: Real> SingleParticle<T> for ExtendedState<T> {
    fn lattice(&self) -> Lattice {
        self.lattice
    }
}

impl<T: Real> ExtendedState<T> {
    pub fn zeros(lattice: Lattice) -> Self {
        Self {
            lattice,
            amp: vec![Complex::default(); 4 * lattice.sites()],
        }
    }

    /// `coin ⊗ (ancilla[0]|0⟩_o + ancilla[1]|1⟩_o) ⊗ |origin⟩`.
    pub fn localized(lattice: Lattice, coin: CoinState, ancilla: [Complex<T>; 2]) -> Self {
        let mut s = Self::zeros(lattice);
        let coin = coin.amplitudes::<T>();
        for (c, &cv) in coin.iter().enumerate() {
            for (a, &av) in ancilla.iter().enumerate() {
                s.set(c, a, lattice.origin(), cv * av);
            }
        }
        s
    }

    pub(crate) fn from_raw(lattice: Lattice, amp: Vec<Complex<T>>) -> Self {
        debug_assert_eq!(amp.len(), 4 * lattice.sites());
        Self { lattice, amp }
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    fn index(&self, coin: usize, ancilla: usize, position: i64) -> Option<usize> {
        assert!(coin < 2 && ancilla < 2, "internal index out of range");
        Some((coin * 2 + ancilla) * self.lattice.sites() + self.lattice.site(position)?)
    }

    pub fn get(&self, coin: usize, ancilla: usize, position: i64) -> Complex<T> {
        self.index(coin, ancilla, position)
            .map_or_else(Complex::default, |i| self.amp[i])
    }

    pub fn set(&mut self, coin: usize, ancilla: usize, position: i64, value: Complex<T>) {
        let i = self
            .index(coin, ancilla, position)
            .unwrap_or_else(|| panic!("position {position} is off the lattice"));
        self.amp[i] = value;
    }
}

/// Two particles with two-state coins sharing one lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct PairState<T> {
    lattice: Lattice,
    amp: Vec<Complex<T>>,
}

impl_amplitudes!(PairState);

impl<T: Real> PairState<T> {
    pub fn zeros(lattice: Lattice) -> Self {
        let n = lattice.sites();
        Self {
            lattice,
            amp: vec![Complex::default(); 4 * n * n],
        }
    }

    /// Bell-type coin state with both particles at the lattice origin.
    pub fn localized(lattice: Lattice, bell: BellState) -> Self {
        Self::localized_at(lattice, bell, lattice.origin(), lattice.origin())
    }

    /// Bell-type coin state with particle 1 at `x1` and particle 2 at `x2`.
    pub fn localized_at(lattice: Lattice, bell: BellState, x1: i64, x2: i64) -> Self {
        let mut s = Self::zeros(lattice);
        for (c1, c2, a) in bell.terms() {
            s.set(c1, c2, x1, x2, a);
        }
        s
    }

    pub(crate) fn from_raw(lattice: Lattice, amp: Vec<Complex<T>>) -> Self {
        debug_assert_eq!(amp.len(), 4 * lattice.sites() * lattice.sites());
        Self { lattice, amp }
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    fn index(&self, c1: usize, c2: usize, x1: i64, x2: i64) -> Option<usize> {
        assert!(c1 < 2 && c2 < 2, "coin index out of range");
        let n = self.lattice.sites();
        let s1 = self.lattice.site(x1)?;
        let s2 = self.lattice.site(x2)?;
        Some(((c1 * 2 + c2) * n + s1) * n + s2)
    }

    pub fn get(&self, c1: usize, c2: usize, x1: i64, x2: i64) -> Complex<T> {
        self.index(c1, c2, x1, x2)
            .map_or_else(Complex::default, |i| self.amp[i])
    }

    pub fn set(&mut self, c1: usize, c2: usize, x1: i64, x2: i64, value: Complex<T>) {
        let i = self
            .index(c1, c2, x1, x2)
            .unwrap_or_else(|| panic!("position ({x1}, {x2}) is off the lattice"));
        self.amp[i] = value;
    }

    /// Coin sectors `(c1, c2)` holding any nonzero amplitude.
    pub fn occupied_sectors(&self) -> Vec<(usize, usize)> {
        let block = self.lattice.sites().pow(2);
        (0..4)
            .filter(|k| {
                self.amp[k * block..(k + 1) * block]
                    .iter()
                    .any(|a| *a != Complex::default())
            })
            .map(|k| (k / 2, k % 2))
            .collect()
    }

    /// True when every amplitude with `x1 != x2` is exactly zero.
    pub fn is_colocated(&self) -> bool {
        let n = self.lattice.sites();
        self.amp
            .iter()
            .enumerate()
            .all(|(i, a)| (i / n) % n == i % n || *a == Complex::default())
    }
}

/// Initial coin states for a single particle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoinState {
    /// `|0⟩`
    Zero,
    /// `|1⟩`
    One,
    /// `(|0⟩ + |1⟩)/√2`
    Plus,
    /// `(|0⟩ - |1⟩)/√2`
    Minus,
    /// `(|0⟩ + i|1⟩)/√2`
    PlusI,
}

impl CoinState {
    pub fn amplitudes<T: Real>(self) -> [Complex<T>; 2] {
        let r = T::FRAC_1_SQRT_2();
        let (one, zero) = (Complex::new(T::one(), T::zero()), Complex::default());
        match self {
            CoinState::Zero => [one, zero],
            CoinState::One => [zero, one],
            CoinState::Plus => [Complex::new(r, T::zero()), Complex::new(r, T::zero())],
            CoinState::Minus => [Complex::new(r, T::zero()), Complex::new(-r, T::zero())],
            CoinState::PlusI => [Complex::new(r, T::zero()), Complex::new(T::zero(), r)],
        }
    }
}

/// Maximally entangled two-coin states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellState {
    /// `(|01⟩ + |10⟩)/√2`
    PsiPlus,
    /// `(|01⟩ - |10⟩)/√2`
    PsiMinus,
    /// `(|00⟩ + |11⟩)/√2`
    PhiPlus,
    /// `(|00⟩ - |11⟩)/√2`
    PhiMinus,
    /// `(|01⟩ + i|10⟩)/√2`
    PsiI,
}

impl BellState {
    /// Nonzero `(c1, c2, amplitude)` terms.
    pub fn terms<T: Real>(self) -> [(usize, usize, Complex<T>); 2] {
        let r = T::FRAC_1_SQRT_2();
        let re = |v: T| Complex::new(v, T::zero());
        match self {
            BellState::PsiPlus => [(0, 1, re(r)), (1, 0, re(r))],
            BellState::PsiMinus => [(0, 1, re(r)), (1, 0, re(-r))],
            BellState::PhiPlus => [(0, 0, re(r)), (1, 1, re(r))],
            BellState::PhiMinus => [(0, 0, re(r)), (1, 1, re(-r))],
            BellState::PsiI => [(0, 1, re(r)), (1, 0, Complex::new(T::zero(), r))],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InitialSpec {
    Coin(CoinState),
    Pair(BellState),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WalkKind {
    Hadamard,
    CoinlessReduced,
    Extended,
    Pair,
    Bec,
    Classical,
}

impl WalkKind {
    pub fn is_pair(self) -> bool {
        matches!(self, WalkKind::Pair | WalkKind::Bec)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum InitialState<T> {
    Single(SingleState<T>),
    Pair(PairState<T>),
}

/// Builds the initial state for `spec` at the lattice origin.
pub fn make_initial<T: Real>(spec: InitialSpec, lattice: Lattice) -> InitialState<T> {
    match spec {
        InitialSpec::Coin(coin) => InitialState::Single(SingleState::localized(lattice, coin)),
        InitialSpec::Pair(bell) => InitialState::Pair(PairState::localized(lattice, bell)),
    }
}

/// Everything needed to run one walk.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkConfig<T> {
    pub kind: WalkKind,
    pub steps: usize,
    pub sign: SignVariant,
    pub initial: InitialSpec,
    /// Renormalize after every non-isometric step.
    pub normalize_each_step: bool,
    /// Momentum-ancilla amplitudes for [`WalkKind::Extended`].
    pub ancilla: [Complex<T>; 2],
    pub origin: i64,
}

impl<T: Real> WalkConfig<T> {
    pub fn new(kind: WalkKind, steps: usize, initial: InitialSpec) -> Self {
        let r = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
        Self {
            kind,
            steps,
            sign: SignVariant::Plus,
            initial,
            normalize_each_step: true,
            ancilla: [r, r],
            origin: 0,
        }
    }

    pub fn with_sign(mut self, sign: SignVariant) -> Self {
        self.sign = sign;
        self
    }

    pub fn with_normalize_each_step(mut self, on: bool) -> Self {
        self.normalize_each_step = on;
        self
    }

    pub fn with_ancilla(mut self, ancilla: [Complex<T>; 2]) -> Self {
        self.ancilla = ancilla;
        self
    }

    pub fn with_origin(mut self, origin: i64) -> Self {
        self.origin = origin;
        self
    }

    /// Lattice sized so the walk never reaches the boundary.
    pub fn lattice(&self) -> Lattice {
        Lattice::for_steps(self.origin, self.steps)
    }

    pub fn validate(&self) -> Result<()> {
        match (self.kind.is_pair(), self.initial) {
            (true, InitialSpec::Coin(_)) => {
                return Err(WalkError::InvalidConfig(format!(
                    "{:?} walk needs a two-particle initial state",
                    self.kind
                )))
            }
            (false, InitialSpec::Pair(_)) => {
                return Err(WalkError::InvalidConfig(format!(
                    "{:?} walk needs a single-particle initial state",
                    self.kind
                )))
            }
            _ => {}
        }
        let weight = self.ancilla[0].norm_sqr() + self.ancilla[1].norm_sqr();
        if (weight - T::one()).abs() > T::tol(1e-12) {
            return Err(WalkError::InvalidConfig(format!(
                "ancilla amplitudes have total weight {weight}, expected 1"
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn lattice_round_trips_positions() {
        let l = Lattice::new(3, 2);
        assert_eq!(l.sites(), 5);
        assert_eq!(l.positions().collect::<Vec<_>>(), vec![1, 2, 3, 4, 5]);
        assert_eq!(l.site(1), Some(0));
        assert_eq!(l.site(6), None);
        assert_eq!(l.site(0), None);
    }

    #[test]
    fn normalize_identity_on_unit_state() {
        let s = SingleState::<f64>::localized(Lattice::new(0, 1), CoinState::Zero);
        let (t, norm) = normalize(s.clone()).unwrap();
        assert_eq!(t, s);
        assert_eq!(norm, 1.0);
    }

    #[test]
    fn normalize_three_sites() {
        let mut s = SingleState::<f64>::zeros(Lattice::new(0, 1));
        s.set(0, -1, c(1.0, 0.0));
        s.set(0, 0, c(1.0, 0.0));
        s.set(0, 1, c(2.0, 0.0));
        let (t, norm) = normalize(s).unwrap();
        let r6 = 6f64.sqrt();
        assert!((norm - r6).abs() < 1e-15);
        for (x, v) in [(-1, 1.0), (0, 1.0), (1, 2.0)] {
            assert!((t.get(0, x) - c(v / r6, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn normalize_rejects_zero_state() {
        let s = SingleState::<f64>::zeros(Lattice::new(0, 1));
        assert!(matches!(normalize(s), Err(WalkError::ZeroNorm { .. })));
    }

    #[test]
    fn psi_i_initial_state() {
        let l = Lattice::new(0, 2);
        let InitialState::Pair(s) = make_initial::<f64>(InitialSpec::Pair(BellState::PsiI), l)
        else {
            panic!("expected pair state")
        };
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(s.get(0, 1, 0, 0), c(r, 0.0));
        assert_eq!(s.get(1, 0, 0, 0), c(0.0, r));
        assert_eq!(s.get(0, 0, 0, 0), c(0.0, 0.0));
        assert_eq!(s.get(1, 1, 0, 0), c(0.0, 0.0));
        assert!((s.norm() - 1.0).abs() < 1e-12);
        assert_eq!(s.occupied_sectors(), vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn phi_plus_initial_state() {
        let l = Lattice::new(4, 1);
        let s = PairState::<f64>::localized(l, BellState::PhiPlus);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(s.get(0, 0, 4, 4), c(r, 0.0));
        assert_eq!(s.get(1, 1, 4, 4), c(r, 0.0));
        assert!(s.is_colocated());
    }

    #[test]
    fn zero_coin_at_origin() {
        let s = SingleState::<f64>::localized(Lattice::new(-2, 3), CoinState::Zero);
        assert_eq!(s.get(0, -2), c(1.0, 0.0));
        assert_eq!(s.support(), Some((-2, -2)));
    }

    #[test]
    fn every_initial_state_is_normalized() {
        let l = Lattice::new(0, 1);
        for coin in [
            CoinState::Zero,
            CoinState::One,
            CoinState::Plus,
            CoinState::Minus,
            CoinState::PlusI,
        ] {
            let s = SingleState::<f64>::localized(l, coin);
            assert!((s.norm() - 1.0).abs() < 1e-12, "{coin:?}");
            let e = ExtendedState::<f64>::localized(l, coin, CoinState::Plus.amplitudes());
            assert!((e.norm() - 1.0).abs() < 1e-12, "{coin:?}");
        }
        for bell in [
            BellState::PsiPlus,
            BellState::PsiMinus,
            BellState::PhiPlus,
            BellState::PhiMinus,
            BellState::PsiI,
        ] {
            let s = PairState::<f64>::localized(l, bell);
            assert!((s.norm() - 1.0).abs() < 1e-12, "{bell:?}");
        }
    }

    #[test]
    fn config_rejects_mismatched_initial_state() {
        let cfg = WalkConfig::<f64>::new(WalkKind::Pair, 3, InitialSpec::Coin(CoinState::Zero));
        assert!(cfg.validate().is_err());
        let cfg = WalkConfig::<f64>::new(WalkKind::Hadamard, 3, InitialSpec::Pair(BellState::PsiI));
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn config_rejects_unnormalized_ancilla() {
        let cfg = WalkConfig::<f64>::new(WalkKind::Extended, 3, InitialSpec::Coin(CoinState::Plus))
            .with_ancilla([c(1.0, 0.0), c(0.1, 0.0)]);
        assert!(matches!(cfg.validate(), Err(WalkError::InvalidConfig(_))));
    }
}
