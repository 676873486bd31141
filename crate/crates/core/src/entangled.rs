//! Two-particle walks.
//!
//! [`pair_step`] applies the reduced coin-retaining shift to both particles
//! independently. Because that shift never touches the coin label, a pair
//! that starts in a coin-entangled state keeps its coin correlations at every
//! site without any coin operation.
//!
//! The constrained walk models a pair that must stay together: each particle
//! receives a local kick that either moves it one site while flipping its
//! coin, or leaves it in place, and after both kicks everything with the
//! particles on different sites is projected away.

use crate::lattice::{PairState, WalkConfig, WalkKind};
use crate::local::{LocalOp, Term};
use crate::walk::{coinless_op, SignVariant};
use crate::{normalize, Amplitudes, InitialSpec, Particle, Real, Result, WalkError};

fn apply_both<T: Real>(s: &PairState<T>, op: &LocalOp<T>) -> Result<PairState<T>> {
    let lattice = s.lattice();
    let first = op.apply_to_particle(lattice, s.amplitudes(), true)?;
    let both = op.apply_to_particle(lattice, &first, false)?;
    Ok(PairState::from_raw(lattice, both))
}

/// Applies the reduced shift to both particles.
///
/// Returns the new state and the norm of the raw image; renormalizes when
/// `normalize_each_step` is set.
pub fn pair_step<T: Real>(
    s: &PairState<T>,
    sign: SignVariant,
    normalize_each_step: bool,
) -> Result<(PairState<T>, T)> {
    let raw = apply_both(s, &coinless_op(sign))?;
    if normalize_each_step {
        normalize(raw)
    } else {
        let norm = raw.norm();
        Ok((raw, norm))
    }
}

/// Coefficients of the local kick: `|c, x⟩ → move·(|c̄, x-1⟩ + |c̄, x+1⟩) + stay·|c, x⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BecKick<T> {
    pub move_amp: T,
    pub stay_amp: T,
}

impl<T: Real> BecKick<T> {
    /// `½[|c̄, x-1⟩ + |c̄, x+1⟩ + 2|c, x⟩]`. Its image of a point state has
    /// squared norm 3/2.
    pub fn literal() -> Self {
        Self {
            move_amp: T::lit(0.5),
            stay_amp: T::one(),
        }
    }

    /// `½[|c̄, x-1⟩ + |c̄, x+1⟩ + √2|c, x⟩]`, the variant whose image of a
    /// point state has unit norm.
    pub fn balanced() -> Self {
        Self {
            move_amp: T::lit(0.5),
            stay_amp: T::FRAC_1_SQRT_2(),
        }
    }

    fn op(&self) -> LocalOp<T> {
        let t = |to, shift, coeff| Term { to, shift, coeff };
        LocalOp::new(vec![
            vec![
                t(1, -1, self.move_amp),
                t(1, 1, self.move_amp),
                t(0, 0, self.stay_amp),
            ],
            vec![
                t(0, -1, self.move_amp),
                t(0, 1, self.move_amp),
                t(1, 0, self.stay_amp),
            ],
        ])
    }
}

impl<T: Real> Default for BecKick<T> {
    fn default() -> Self {
        Self::literal()
    }
}

/// Applies the literal local kick to one particle. No renormalization.
pub fn bec_local_apply<T: Real>(s: &PairState<T>, particle: Particle) -> Result<PairState<T>> {
    bec_local_apply_with(s, particle, BecKick::literal())
}

pub fn bec_local_apply_with<T: Real>(
    s: &PairState<T>,
    particle: Particle,
    kick: BecKick<T>,
) -> Result<PairState<T>> {
    let amp =
        kick.op()
            .apply_to_particle(s.lattice(), s.amplitudes(), particle == Particle::First)?;
    Ok(PairState::from_raw(s.lattice(), amp))
}

/// Zeroes every amplitude with the particles on different sites.
pub fn project_colocated<T: Real>(s: &mut PairState<T>) {
    let n = s.lattice().sites();
    for (i, a) in s.amplitudes_mut().iter_mut().enumerate() {
        if (i / n) % n != i % n {
            *a = Default::default();
        }
    }
}

/// One constrained step with the literal kick.
///
/// Returns the renormalized state and the survival: the fraction of the
/// input's squared norm left after the co-location projection.
pub fn bec_constrained_step<T: Real>(s: &PairState<T>) -> Result<(PairState<T>, T)> {
    bec_constrained_step_with(s, BecKick::literal())
}

pub fn bec_constrained_step_with<T: Real>(
    s: &PairState<T>,
    kick: BecKick<T>,
) -> Result<(PairState<T>, T)> {
    if !s.is_colocated() {
        return Err(WalkError::NotColocated);
    }
    let before = s.norm_sqr();
    let mut kicked = apply_both(s, &kick.op())?;
    project_colocated(&mut kicked);
    let survival = kicked.norm_sqr() / before;
    let (state, _) = normalize(kicked)?;
    Ok((state, survival))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairRun<T> {
    pub state: PairState<T>,
    /// Raw-image norm per step (for the constrained walk, the norm after projection).
    pub prior_norms: Vec<T>,
    /// Squared-norm fraction kept by the co-location projection per step;
    /// empty for the unconstrained walk.
    pub survival: Vec<T>,
}

pub fn run_pair<T: Real>(config: &WalkConfig<T>) -> Result<PairRun<T>> {
    run_pair_observed(config, |_, _| {})
}

/// Like [`run_pair`], calling `observe(n, state)` after each step and once
/// for the initial state with `n = 0`.
pub fn run_pair_observed<T: Real>(
    config: &WalkConfig<T>,
    mut observe: impl FnMut(usize, &PairState<T>),
) -> Result<PairRun<T>> {
    config.validate()?;
    let InitialSpec::Pair(bell) = config.initial else {
        unreachable!("validated as two-particle")
    };
    if !config.kind.is_pair() {
        return Err(WalkError::InvalidConfig(format!(
            "{:?} is a single-particle walk",
            config.kind
        )));
    }
    let mut state = PairState::localized(config.lattice(), bell);
    let mut prior_norms = Vec::with_capacity(config.steps);
    let mut survival = Vec::new();
    observe(0, &state);
    for n in 1..=config.steps {
        state = if config.kind == WalkKind::Bec {
            let before = state.norm();
            let (next, kept) = bec_constrained_step(&state)?;
            prior_norms.push(kept.sqrt() * before);
            survival.push(kept);
            next
        } else {
            let (next, norm) = pair_step(&state, config.sign, config.normalize_each_step)?;
            prior_norms.push(norm);
            next
        };
        observe(n, &state);
    }
    Ok(PairRun {
        state,
        prior_norms,
        survival,
    })
}
