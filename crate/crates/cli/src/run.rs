use std::collections::BTreeMap;

use clap::ValueEnum;
use qwalk_core::entangled::{run_pair, run_pair_observed};
use qwalk_core::measure::{
    joint_distribution, log_log_slope, sample_pairs, sample_positions, variance, PairSampleSummary,
};
use qwalk_core::walk::{run_single_observed, SingleOutcome};
use qwalk_core::{
    coincidence_probability, normalize, Amplitudes, CoinState, Distribution, InitialSpec,
    JointDistribution, Lattice, WalkConfig, WalkError, WalkKind,
};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::args::{
    BecArgs, ClassicalArgs, CoincidenceArgs, Command, PairArgs, Sampling, ScanArgs, ScanWalk,
    SingleArgs, View, Walk,
};
use crate::report::{Cell, Meta, Report, SamplingMeta, Table};

type Result<T> = std::result::Result<T, WalkError>;

fn name<E: ValueEnum>(v: E) -> String {
    v.to_possible_value()
        .map(|p| p.get_name().to_owned())
        .unwrap_or_default()
}

pub fn execute(command: &Command) -> Result<Report> {
    match command {
        Command::Single(a) => single(a),
        Command::Pair(a) => pair(a),
        Command::Bec(a) => bec(a),
        Command::Classical(a) => classical(a),
        Command::Coincidence(a) => coincidence(a),
        Command::VarianceScan(a) => variance_scan(a),
    }
}

fn outcome_norm(s: &SingleOutcome<f64>) -> f64 {
    match s {
        SingleOutcome::Coin(s) => s.norm(),
        SingleOutcome::Extended(s) => s.norm(),
        SingleOutcome::Classical(d) => d.total(),
    }
}

fn single(a: &SingleArgs) -> Result<Report> {
    let kind = match a.walk {
        Walk::Hadamard => WalkKind::Hadamard,
        Walk::Coinless => WalkKind::CoinlessReduced,
        Walk::Extended => WalkKind::Extended,
    };
    let config = WalkConfig::new(kind, a.steps, a.initial.into())
        .with_sign(a.sign.into())
        .with_normalize_each_step(a.normalize_each_step);
    let mut norms = Vec::new();
    let run = run_single_observed(&config, |n, s| {
        if n > 0 {
            norms.push(outcome_norm(s));
        }
    })?;
    let prior_norms = if run.prior_norms.is_empty() {
        norms
    } else {
        run.prior_norms
    };
    let d = run.outcome.distribution()?;
    let (data, sampling) = single_output(&d, &a.sampling)?;
    Ok(Report {
        meta: Meta {
            subcommand: "single",
            steps: a.steps,
            walk: Some(name(a.walk)),
            sign: Some(name(a.sign)),
            initial: Some(name(a.initial)),
            normalize_each_step: Some(a.normalize_each_step),
            prior_norms,
            sampling,
            ..Meta::default()
        },
        data,
    })
}

fn classical(a: &ClassicalArgs) -> Result<Report> {
    let config = WalkConfig::new(
        WalkKind::Classical,
        a.steps,
        InitialSpec::Coin(CoinState::Zero),
    );
    let mut norms = Vec::new();
    let run = run_single_observed(&config, |n, s| {
        if n > 0 {
            norms.push(outcome_norm(s));
        }
    })?;
    let d = run.outcome.distribution()?;
    let (data, sampling) = single_output(&d, &a.sampling)?;
    Ok(Report {
        meta: Meta {
            subcommand: "classical",
            steps: a.steps,
            prior_norms: norms,
            sampling,
            ..Meta::default()
        },
        data,
    })
}

fn single_output(d: &Distribution, sampling: &Sampling) -> Result<(Table, Option<SamplingMeta>)> {
    let mut t = Table::new(vec!["position", "probability"]);
    let Some(samples) = sampling.samples else {
        for (x, p) in d.iter() {
            t.push(vec![Cell::Int(x), Cell::Num(p)]);
        }
        return Ok((t, None));
    };
    let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
    let mut counts = BTreeMap::new();
    for x in sample_positions(d, samples as usize, &mut rng)? {
        *counts.entry(x).or_insert(0u64) += 1;
    }
    for x in d.lattice().positions() {
        let c = counts.get(&x).copied().unwrap_or(0);
        t.push(vec![Cell::Int(x), Cell::Num(c as f64 / samples as f64)]);
    }
    let meta = SamplingMeta {
        samples,
        seed: sampling.seed,
        same: None,
        different: None,
        position_points: None,
    };
    Ok((t, Some(meta)))
}

fn pair(a: &PairArgs) -> Result<Report> {
    let config = WalkConfig::new(WalkKind::Pair, a.steps, a.initial.into())
        .with_sign(a.sign.into())
        .with_normalize_each_step(a.normalize_each_step);
    let run = run_pair(&config)?;
    let j = joint_distribution(&normalize(run.state)?.0)?;
    let (data, sampling) = pair_output(&j, a.view, &a.sampling)?;
    Ok(Report {
        meta: Meta {
            subcommand: "pair",
            steps: a.steps,
            sign: Some(name(a.sign)),
            initial: Some(name(a.initial)),
            normalize_each_step: Some(a.normalize_each_step),
            view: Some(name(a.view)),
            prior_norms: run.prior_norms,
            sampling,
            ..Meta::default()
        },
        data,
    })
}

fn bec(a: &BecArgs) -> Result<Report> {
    let config = WalkConfig::new(WalkKind::Bec, a.steps, a.initial.into());
    let run = run_pair(&config)?;
    let j = joint_distribution(&run.state)?;
    let (data, sampling) = pair_output(&j, a.view, &a.sampling)?;
    Ok(Report {
        meta: Meta {
            subcommand: "bec",
            steps: a.steps,
            initial: Some(name(a.initial)),
            view: Some(name(a.view)),
            prior_norms: run.prior_norms,
            survival: run.survival,
            sampling,
            ..Meta::default()
        },
        data,
    })
}

fn pair_output(
    j: &JointDistribution,
    view: View,
    sampling: &Sampling,
) -> Result<(Table, Option<SamplingMeta>)> {
    let Some(samples) = sampling.samples else {
        let entries: Vec<_> = j.iter().collect();
        return Ok((pair_table(j.lattice(), &entries, view), None));
    };
    let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
    let drawn = sample_pairs(j, samples as usize, &mut rng)?;
    let summary = PairSampleSummary::from_samples(&drawn);
    let mut counts = BTreeMap::new();
    for xy in drawn {
        *counts.entry(xy).or_insert(0u64) += 1;
    }
    let entries: Vec<_> = counts
        .into_iter()
        .map(|((x1, x2), c)| (x1, x2, c as f64 / samples as f64))
        .collect();
    let meta = SamplingMeta {
        samples,
        seed: sampling.seed,
        same: Some(summary.same),
        different: Some(summary.different),
        position_points: Some(summary.position_points()),
    };
    Ok((pair_table(j.lattice(), &entries, view), Some(meta)))
}

/// `entries` is sorted by `(x1, x2)`.
fn pair_table(lattice: Lattice, entries: &[(i64, i64, f64)], view: View) -> Table {
    match view {
        View::Joint => {
            let mut t = Table::new(vec!["x1", "x2", "probability"]);
            for &(x1, x2, p) in entries.iter().filter(|e| e.2 != 0.0) {
                t.push(vec![Cell::Int(x1), Cell::Int(x2), Cell::Num(p)]);
            }
            t
        }
        View::Marginal => {
            let mut rows: BTreeMap<i64, (f64, f64)> =
                lattice.positions().map(|x| (x, (0.0, 0.0))).collect();
            for &(x1, x2, p) in entries {
                let row = rows.entry(x1).or_default();
                row.0 += p;
                if x1 == x2 {
                    row.1 += p;
                }
            }
            let mut t = Table::new(vec!["position", "marginal", "diagonal"]);
            for (x, (m, d)) in rows {
                t.push(vec![Cell::Int(x), Cell::Num(m), Cell::Num(d)]);
            }
            t
        }
    }
}

fn coincidence(a: &CoincidenceArgs) -> Result<Report> {
    let config = WalkConfig::new(WalkKind::Pair, a.steps, a.initial.into())
        .with_sign(a.sign.into())
        .with_normalize_each_step(a.normalize_each_step);
    let mut rows = Vec::with_capacity(a.steps);
    let mut failure = None;
    let run = run_pair_observed(&config, |n, s| {
        if n == 0 || failure.is_some() {
            return;
        }
        let probs = normalize(s.clone()).and_then(|(s, _)| joint_distribution(&s));
        match probs {
            Ok(j) => rows.push((n, coincidence_probability(&j))),
            Err(e) => failure = Some(e),
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let mut t = Table::new(vec!["steps", "p_same", "p_diff"]);
    for (n, (same, diff)) in rows {
        t.push(vec![Cell::Int(n as i64), Cell::Num(same), Cell::Num(diff)]);
    }
    Ok(Report {
        meta: Meta {
            subcommand: "coincidence",
            steps: a.steps,
            sign: Some(name(a.sign)),
            initial: Some(name(a.initial)),
            normalize_each_step: Some(a.normalize_each_step),
            prior_norms: run.prior_norms,
            ..Meta::default()
        },
        data: t,
    })
}

fn variance_scan(a: &ScanArgs) -> Result<Report> {
    let kind = match a.walk {
        ScanWalk::Hadamard => WalkKind::Hadamard,
        ScanWalk::Coinless => WalkKind::CoinlessReduced,
        ScanWalk::Extended => WalkKind::Extended,
        ScanWalk::Classical => WalkKind::Classical,
    };
    let initial = if kind == WalkKind::Classical {
        InitialSpec::Coin(CoinState::Zero)
    } else {
        a.initial.into()
    };
    let config = WalkConfig::new(kind, a.steps, initial)
        .with_sign(a.sign.into())
        .with_normalize_each_step(a.normalize_each_step);
    let mut rows = Vec::with_capacity(a.steps);
    let mut norms = Vec::with_capacity(a.steps);
    let mut failure = None;
    let run = run_single_observed(&config, |n, s| {
        if n == 0 || failure.is_some() {
            return;
        }
        norms.push(outcome_norm(s));
        match s.distribution() {
            Ok(d) => rows.push((n, variance(&d))),
            Err(e) => failure = Some(e),
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let fit: Vec<(f64, f64)> = rows
        .iter()
        .filter(|&&(n, v)| n >= a.fit_from && v > 0.0)
        .map(|&(n, v)| (n as f64, v))
        .collect();
    let slope = log_log_slope(&fit).unwrap_or(f64::NAN);
    let mut t = Table::new(vec!["steps", "variance"]);
    for (n, v) in rows {
        t.push(vec![Cell::Int(n as i64), Cell::Num(v)]);
    }
    let prior_norms = if run.prior_norms.is_empty() {
        norms
    } else {
        run.prior_norms
    };
    let classical = kind == WalkKind::Classical;
    Ok(Report {
        meta: Meta {
            subcommand: "variance-scan",
            steps: a.steps,
            walk: Some(name(a.walk)),
            sign: (!classical).then(|| name(a.sign)),
            initial: (!classical).then(|| name(a.initial)),
            normalize_each_step: Some(a.normalize_each_step),
            prior_norms,
            fitted_log_log_slope: Some(slope),
            ..Meta::default()
        },
        data: t,
    })
}

#[cfg(test)]
mod tests {
    use qwalk_core::measure::marginal;
    use qwalk_core::Particle;

    use super::*;

    #[test]
    fn marginal_view_collects_rows_and_diagonal() {
        let l = Lattice::new(0, 1);
        let entries = [(-1, -1, 0.25), (-1, 1, 0.25), (1, -1, 0.25), (1, 1, 0.25)];
        let t = pair_table(l, &entries, View::Marginal);
        assert_eq!(t.rows.len(), 3);
        assert_eq!(
            t.rows[0],
            vec![Cell::Int(-1), Cell::Num(0.5), Cell::Num(0.25)]
        );
        assert_eq!(
            t.rows[1],
            vec![Cell::Int(0), Cell::Num(0.0), Cell::Num(0.0)]
        );
    }

    #[test]
    fn joint_view_omits_zero_rows() {
        let l = Lattice::new(0, 1);
        let entries = [(-1, -1, 0.5), (0, 0, 0.0), (1, 1, 0.5)];
        assert_eq!(pair_table(l, &entries, View::Joint).rows.len(), 2);
    }

    #[test]
    fn marginal_matches_core_marginal() {
        let config = WalkConfig::new(
            WalkKind::Pair,
            6,
            InitialSpec::Pair(qwalk_core::BellState::PsiI),
        );
        let j = joint_distribution(&run_pair(&config).unwrap().state).unwrap();
        let entries: Vec<_> = j.iter().collect();
        let t = pair_table(j.lattice(), &entries, View::Marginal);
        let m = marginal(&j, Particle::First);
        for row in &t.rows {
            let (Cell::Int(x), Cell::Num(p)) = (row[0], row[1]) else {
                panic!("bad row")
            };
            assert!((p - m.prob(x)).abs() < 1e-15);
        }
    }
}
