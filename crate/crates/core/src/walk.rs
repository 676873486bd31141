//! Single-particle step operators.
//!
//! Three families live here: the standard Hadamard walk (coin toss followed
//! by a conditional shift), the coin-retaining shift in its reduced
//! coin ⊗ position form, and the same shift written out over an explicit
//! momentum-ancilla register. The classical random walk is included as the
//! diffusive baseline.
//!
//! The reduced operator sends `|0, x⟩` to `(|0, x-1⟩ ± |0, x+1⟩)/√2` and
//! `|1, x⟩` to `(|1, x+1⟩ ± |1, x-1⟩)/√2`. It never changes the coin label,
//! so no coin operation is needed between steps, but it is not an isometry:
//! `((L + R)/√2)²` applied to a point state has squared norm 3/2. Steps
//! therefore report the norm of their raw image and renormalize on request.

use crate::lattice::{ExtendedState, SingleState, WalkConfig, WalkKind};
use crate::local::{LocalOp, Term};
use crate::measure::Distribution;
use crate::{normalize, Amplitudes, InitialSpec, Real, Result, WalkError};

/// The `±` choice in the reduced shift operator.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum SignVariant {
    #[default]
    Plus,
    Minus,
}

impl SignVariant {
    pub fn factor<T: Real>(self) -> T {
        match self {
            SignVariant::Plus => T::one(),
            SignVariant::Minus => -T::one(),
        }
    }
}

fn term<T>(to: usize, shift: isize, coeff: T) -> Term<T> {
    Term { to, shift, coeff }
}

fn hadamard_op<T: Real>() -> LocalOp<T> {
    let r = T::FRAC_1_SQRT_2();
    LocalOp::new(vec![
        vec![term(0, 0, r), term(1, 0, r)],
        vec![term(0, 0, r), term(1, 0, -r)],
    ])
}

fn shift_op<T: Real>() -> LocalOp<T> {
    LocalOp::new(vec![
        vec![term(0, -1, T::one())],
        vec![term(1, 1, T::one())],
    ])
}

pub(crate) fn coinless_op<T: Real>(sign: SignVariant) -> LocalOp<T> {
    let r = T::FRAC_1_SQRT_2();
    let s = sign.factor::<T>() * r;
    LocalOp::new(vec![
        vec![term(0, -1, r), term(0, 1, s)],
        vec![term(1, 1, r), term(1, -1, s)],
    ])
}

/// Internal index `coin * 2 + ancilla`; `forward = false` gives the inverse.
fn extended_op<T: Real>(forward: bool) -> LocalOp<T> {
    let dir = if forward { 1 } else { -1 };
    let one = T::one();
    LocalOp::new(vec![
        vec![term(0, -dir, one)],
        vec![term(1, dir, one)],
        vec![term(2, dir, one)],
        vec![term(3, -dir, one)],
    ])
}

/// Rotates the coin at every site by `H = [[1, 1], [1, -1]]/√2`.
pub fn hadamard_coin<T: Real>(s: &SingleState<T>) -> SingleState<T> {
    let amp = hadamard_op()
        .apply(s.lattice(), s.amplitudes())
        .expect("coin rotation never moves amplitude");
    SingleState::from_raw(s.lattice(), amp)
}

/// Moves coin-0 amplitude one site left and coin-1 amplitude one site right.
pub fn conditional_shift<T: Real>(s: &SingleState<T>) -> Result<SingleState<T>> {
    let amp = shift_op().apply(s.lattice(), s.amplitudes())?;
    Ok(SingleState::from_raw(s.lattice(), amp))
}

/// One step of the Hadamard walk: coin toss, then conditional shift.
pub fn hadamard_walk_step<T: Real>(s: &SingleState<T>) -> Result<SingleState<T>> {
    conditional_shift(&hadamard_coin(s))
}

/// One step of the reduced coin-retaining walk.
///
/// Returns the new state and the norm of the raw image. With
/// `normalize_each_step` the returned state is rescaled to unit norm.
pub fn coinless_step_reduced<T: Real>(
    s: &SingleState<T>,
    sign: SignVariant,
    normalize_each_step: bool,
) -> Result<(SingleState<T>, T)> {
    let amp = coinless_op(sign).apply(s.lattice(), s.amplitudes())?;
    let raw = SingleState::from_raw(s.lattice(), amp);
    if normalize_each_step {
        normalize(raw)
    } else {
        let norm = raw.norm();
        Ok((raw, norm))
    }
}

/// One step of the coin ⊗ ancilla ⊗ position walk.
///
/// Ancilla `|0⟩_o` sends coin 0 left and coin 1 right; ancilla `|1⟩_o`
/// reverses both. This is a permutation of basis states and so exactly
/// norm-preserving.
pub fn extended_step<T: Real>(s: &ExtendedState<T>) -> Result<ExtendedState<T>> {
    let amp = extended_op(true).apply(s.lattice(), s.amplitudes())?;
    Ok(ExtendedState::from_raw(s.lattice(), amp))
}

/// Inverse of [`extended_step`].
pub fn extended_step_adjoint<T: Real>(s: &ExtendedState<T>) -> Result<ExtendedState<T>> {
    let amp = extended_op(false).apply(s.lattice(), s.amplitudes())?;
    Ok(ExtendedState::from_raw(s.lattice(), amp))
}

/// Unbiased classical random walk: `P'(x) = (P(x-1) + P(x+1)) / 2`.
pub fn classical_step<T: Real>(d: &Distribution<T>) -> Result<Distribution<T>> {
    let lattice = d.lattice();
    let p = d.probabilities();
    let n = p.len();
    for site in [0, n - 1] {
        if p[site] != T::zero() {
            return Err(WalkError::BoundaryOverflow {
                position: lattice.position(site),
            });
        }
    }
    let half = T::lit(0.5);
    let next = (0..n)
        .map(|i| {
            let left = if i > 0 { p[i - 1] } else { T::zero() };
            let right = if i + 1 < n { p[i + 1] } else { T::zero() };
            (left + right) * half
        })
        .collect();
    Ok(Distribution::from_raw(lattice, next))
}

/// State produced by a single-particle run.
#[derive(Debug, Clone, PartialEq)]
pub enum SingleOutcome<T> {
    Coin(SingleState<T>),
    Extended(ExtendedState<T>),
    Classical(Distribution<T>),
}

impl<T: Real> SingleOutcome<T> {
    /// Position distribution, renormalizing a quantum state if needed.
    pub fn distribution(&self) -> Result<Distribution<T>> {
        use crate::measure::position_distribution;
        match self {
            SingleOutcome::Coin(s) => position_distribution(&normalize(s.clone())?.0),
            SingleOutcome::Extended(s) => position_distribution(&normalize(s.clone())?.0),
            SingleOutcome::Classical(d) => Ok(d.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingleRun<T> {
    pub outcome: SingleOutcome<T>,
    /// Raw-image norm for every step of a non-isometric walk; empty otherwise.
    pub prior_norms: Vec<T>,
}

/// Runs a single-particle walk on a lattice of half-width `config.steps`.
pub fn run_single<T: Real>(config: &WalkConfig<T>) -> Result<SingleRun<T>> {
    run_single_observed(config, |_, _| {})
}

/// Like [`run_single`], calling `observe(n, state)` after step `n` (and with
/// `n = 0` for the initial state).
pub fn run_single_observed<T: Real>(
    config: &WalkConfig<T>,
    mut observe: impl FnMut(usize, &SingleOutcome<T>),
) -> Result<SingleRun<T>> {
    config.validate()?;
    let InitialSpec::Coin(coin) = config.initial else {
        unreachable!("validated as single-particle")
    };
    let lattice = config.lattice();
    let mut prior_norms = Vec::new();
    let mut state = match config.kind {
        WalkKind::Hadamard | WalkKind::CoinlessReduced => {
            SingleOutcome::Coin(SingleState::localized(lattice, coin))
        }
        WalkKind::Extended => {
            SingleOutcome::Extended(ExtendedState::localized(lattice, coin, config.ancilla))
        }
        WalkKind::Classical => {
            SingleOutcome::Classical(Distribution::delta(lattice, lattice.origin()))
        }
        WalkKind::Pair | WalkKind::Bec => {
            return Err(WalkError::InvalidConfig(format!(
                "{:?} is a two-particle walk",
                config.kind
            )))
        }
    };
    observe(0, &state);
    for n in 1..=config.steps {
        state = match state {
            SingleOutcome::Coin(s) if config.kind == WalkKind::Hadamard => {
                SingleOutcome::Coin(hadamard_walk_step(&s)?)
            }
            SingleOutcome::Coin(s) => {
                let (next, norm) =
                    coinless_step_reduced(&s, config.sign, config.normalize_each_step)?;
                prior_norms.push(norm);
                SingleOutcome::Coin(next)
            }
            SingleOutcome::Extended(s) => SingleOutcome::Extended(extended_step(&s)?),
            SingleOutcome::Classical(d) => SingleOutcome::Classical(classical_step(&d)?),
        };
        observe(n, &state);
    }
    Ok(SingleRun {
        outcome: state,
        prior_norms,
    })
}

#[cfg(test)]
mod tests {
    use num_complex::Complex;

    use super::*;
    use crate::lattice::{CoinState, Lattice, SingleParticle};
    use crate::measure::{position_distribution, variance};

    const R: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn assert_amp(got: Complex<f64>, want: Complex<f64>, tol: f64) {
        assert!((got - want).norm() <= tol, "got {got}, want {want}");
    }

    fn cfg(kind: WalkKind, steps: usize, coin: CoinState) -> WalkConfig<f64> {
        WalkConfig::new(kind, steps, InitialSpec::Coin(coin))
    }

    #[test]
    fn hadamard_coin_on_basis_states() {
        let l = Lattice::new(0, 1);
        let h0 = hadamard_coin(&SingleState::<f64>::localized(l, CoinState::Zero));
        assert_amp(h0.get(0, 0), c(R, 0.0), 1e-15);
        assert_amp(h0.get(1, 0), c(R, 0.0), 1e-15);
        let h1 = hadamard_coin(&SingleState::<f64>::localized(l, CoinState::One));
        assert_amp(h1.get(0, 0), c(R, 0.0), 1e-15);
        assert_amp(h1.get(1, 0), c(-R, 0.0), 1e-15);
    }

    #[test]
    fn hadamard_coin_is_involution() {
        let l = Lattice::new(0, 2);
        let mut s = SingleState::<f64>::zeros(l);
        s.set(0, -1, c(0.3, -0.2));
        s.set(1, 2, c(-0.1, 0.7));
        s.set(1, 0, c(0.25, 0.0));
        let back = hadamard_coin(&hadamard_coin(&s));
        for (a, b) in back.amplitudes().iter().zip(s.amplitudes()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn conditional_shift_moves_by_coin() {
        let l = Lattice::new(5, 2);
        let s0 = conditional_shift(&SingleState::<f64>::localized(l, CoinState::Zero)).unwrap();
        assert_eq!(s0.get(0, 4), c(1.0, 0.0));
        let s1 = conditional_shift(&SingleState::<f64>::localized(l, CoinState::One)).unwrap();
        assert_eq!(s1.get(1, 6), c(1.0, 0.0));
        let sp = conditional_shift(&SingleState::<f64>::localized(l, CoinState::Plus)).unwrap();
        assert_amp(sp.get(0, 4), c(R, 0.0), 0.0);
        assert_amp(sp.get(1, 6), c(R, 0.0), 0.0);
        assert!((sp.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn conditional_shift_rejects_edge_support() {
        let l = Lattice::new(0, 1);
        let mut s = SingleState::<f64>::zeros(l);
        s.set(1, 1, c(1.0, 0.0));
        assert_eq!(
            conditional_shift(&s),
            Err(WalkError::BoundaryOverflow { position: 1 })
        );
    }

    #[test]
    fn hadamard_walk_first_steps() {
        let l = Lattice::new(0, 2);
        let s1 = hadamard_walk_step(&SingleState::<f64>::localized(l, CoinState::Zero)).unwrap();
        assert_amp(s1.get(0, -1), c(R, 0.0), 1e-15);
        assert_amp(s1.get(1, 1), c(R, 0.0), 1e-15);
        let s2 = hadamard_walk_step(&s1).unwrap();
        let want = [((0, -2), 0.5), ((1, 0), 0.5), ((0, 0), 0.5), ((1, 2), -0.5)];
        for ((coin, x), v) in want {
            assert_amp(s2.get(coin, x), c(v, 0.0), 1e-15);
        }
        assert!((s2.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn reduced_first_step_matches_closed_form() {
        // initial coin (|0⟩ + t|1⟩)/√2 under sign s gives
        // ½[(|0⟩ + ts|1⟩)|x-1⟩ + s(|0⟩ + ts|1⟩)|x+1⟩]
        let l = Lattice::new(3, 1);
        for (coin, t) in [(CoinState::Plus, 1.0), (CoinState::Minus, -1.0)] {
            for sign in [SignVariant::Plus, SignVariant::Minus] {
                let s = sign.factor::<f64>();
                let start = SingleState::<f64>::localized(l, coin);
                let (out, norm) = coinless_step_reduced(&start, sign, false).unwrap();
                assert!((norm - 1.0).abs() < 1e-15);
                assert_amp(out.get(0, 2), c(0.5, 0.0), 1e-15);
                assert_amp(out.get(1, 2), c(0.5 * t * s, 0.0), 1e-15);
                assert_amp(out.get(0, 4), c(0.5 * s, 0.0), 1e-15);
                assert_amp(out.get(1, 4), c(0.5 * t, 0.0), 1e-15);
            }
        }
    }

    #[test]
    fn reduced_two_steps_are_not_norm_preserving() {
        let l = Lattice::new(0, 2);
        let s0 = SingleState::<f64>::localized(l, CoinState::Plus);
        let (s1, n1) = coinless_step_reduced(&s0, SignVariant::Plus, true).unwrap();
        let (s2, n2) = coinless_step_reduced(&s1, SignVariant::Plus, true).unwrap();
        assert!((n1 - 1.0).abs() < 1e-15);
        assert!((n2 * n2 - 1.5).abs() < 1e-14);
        let d = position_distribution(&s2).unwrap();
        assert!((d.prob(-2) - 1.0 / 6.0).abs() < 1e-14);
        assert!((d.prob(0) - 2.0 / 3.0).abs() < 1e-14);
        assert!((d.prob(2) - 1.0 / 6.0).abs() < 1e-14);
    }

    #[test]
    fn reduced_keeps_coin_marginal() {
        let l = Lattice::new(0, 8);
        let mut s = SingleState::<f64>::zeros(l);
        s.set(0, 0, c(0.6, 0.0));
        s.set(1, 0, c(0.0, 0.8));
        for sign in [SignVariant::Plus, SignVariant::Minus] {
            let mut cur = s.clone();
            for _ in 0..8 {
                cur = coinless_step_reduced(&cur, sign, true).unwrap().0;
                let [w0, w1] = cur.coin_marginal();
                assert!((w0 - 0.36).abs() < 1e-12 && (w1 - 0.64).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn reduced_never_populates_an_empty_coin_block() {
        let l = Lattice::new(0, 10);
        let mut cur = SingleState::<f64>::localized(l, CoinState::Zero);
        for _ in 0..10 {
            cur = coinless_step_reduced(&cur, SignVariant::Minus, true)
                .unwrap()
                .0;
            assert!(cur.coin_component(1).iter().all(|a| *a == c(0.0, 0.0)));
        }
    }

    #[test]
    fn extended_step_basis_action() {
        let l = Lattice::new(0, 2);
        let one = c(1.0, 0.0);
        for (coin, anc, dx) in [(0, 0, -1), (0, 1, 1), (1, 0, 1), (1, 1, -1)] {
            let mut s = ExtendedState::<f64>::zeros(l);
            s.set(coin, anc, 0, one);
            let out = extended_step(&s).unwrap();
            assert_eq!(out.get(coin, anc, dx), one);
            assert_eq!(extended_step_adjoint(&out).unwrap(), s);
        }
    }

    #[test]
    fn extended_step_from_balanced_state() {
        let l = Lattice::new(0, 1);
        let s = ExtendedState::<f64>::localized(l, CoinState::Plus, CoinState::Plus.amplitudes());
        let out = extended_step(&s).unwrap();
        for (coin, anc, x) in [(0, 0, -1), (0, 1, 1), (1, 0, 1), (1, 1, -1)] {
            assert_amp(out.get(coin, anc, x), c(0.5, 0.0), 1e-15);
        }
    }

    #[test]
    fn classical_binomial() {
        let l = Lattice::new(0, 2);
        let d1 = classical_step(&Distribution::<f64>::delta(l, 0)).unwrap();
        assert_eq!(d1.prob(-1), 0.5);
        assert_eq!(d1.prob(1), 0.5);
        let d2 = classical_step(&d1).unwrap();
        assert_eq!((d2.prob(-2), d2.prob(0), d2.prob(2)), (0.25, 0.5, 0.25));
    }

    #[test]
    fn classical_variance_is_step_count() {
        for n in [1usize, 7, 30] {
            let run = run_single(&cfg(WalkKind::Classical, n, CoinState::Zero)).unwrap();
            let d = run.outcome.distribution().unwrap();
            assert!((variance(&d) - n as f64).abs() < 1e-9);
            assert!((d.total() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_steps_leave_initial_state() {
        let run = run_single(&cfg(WalkKind::Hadamard, 0, CoinState::Zero)).unwrap();
        let SingleOutcome::Coin(s) = run.outcome else {
            panic!()
        };
        assert_eq!(
            s,
            SingleState::localized(Lattice::new(0, 0), CoinState::Zero)
        );
        assert!(run.prior_norms.is_empty());
    }

    #[test]
    fn extended_run_ends_on_two_points() {
        let run = run_single(&cfg(WalkKind::Extended, 7, CoinState::Plus)).unwrap();
        let d = run.outcome.distribution().unwrap();
        assert!((d.prob(-7) - 0.5).abs() < 1e-12);
        assert!((d.prob(7) - 0.5).abs() < 1e-12);
        let SingleOutcome::Extended(s) = &run.outcome else {
            panic!()
        };
        assert_eq!(s.support(), Some((-7, 7)));
    }

    #[test]
    fn coinless_run_records_norms_and_stays_symmetric() {
        let run = run_single(&cfg(WalkKind::CoinlessReduced, 100, CoinState::Plus)).unwrap();
        assert_eq!(run.prior_norms.len(), 100);
        let d = run.outcome.distribution().unwrap();
        for dx in 0..=100 {
            assert!((d.prob(dx) - d.prob(-dx)).abs() < 1e-9);
        }
    }

    #[test]
    fn support_grows_by_one_per_step() {
        let config = cfg(WalkKind::Hadamard, 12, CoinState::PlusI);
        run_single_observed(&config, |n, state| {
            let SingleOutcome::Coin(s) = state else {
                panic!()
            };
            let (lo, hi) = s.support().unwrap();
            assert!(lo >= -(n as i64) && hi <= n as i64);
        })
        .unwrap();
    }
}
