use std::fmt;
use std::io::Write;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;

use crate::analysis::{expected_fp_count, fp_prob_exact, FilterShape};
use crate::error::{Error, Result};
use crate::rng;
use crate::yesno::YesNoParams;

use super::{run_trial_detailed, Summary};

/// The parameter varied by a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepVar {
    /// Yes-filter hash count.
    K,
    /// No-filter hash count.
    KPrime,
    /// Number of members.
    N,
    /// No-filter length at fixed total `m` (`p = m - q r`).
    Q,
    /// No-filter length at fixed `p` (`m = p + q r`).
    QFixedP,
    /// Number of no-filters at fixed `p` (`m = p + q r`).
    RFixedP,
    /// Number of no-filters at fixed `m` (`p = m - q r`).
    RFixedM,
}

impl SweepVar {
    pub fn name(self) -> &'static str {
        match self {
            SweepVar::K => "k",
            SweepVar::KPrime => "k_prime",
            SweepVar::N => "n",
            SweepVar::Q => "q",
            SweepVar::QFixedP => "q_fixed_p",
            SweepVar::RFixedP => "r_fixed_p",
            SweepVar::RFixedM => "r_fixed_m",
        }
    }

    /// Range swept when none is given.
    pub fn default_range(self) -> RangeInclusive<usize> {
        match self {
            SweepVar::K | SweepVar::KPrime => 1..=14,
            SweepVar::N => 10..=90,
            SweepVar::Q | SweepVar::QFixedP => 10..=59,
            SweepVar::RFixedP => 0..=9,
            SweepVar::RFixedM => 0..=7,
        }
    }
}

impl fmt::Display for SweepVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepVar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "k" => SweepVar::K,
            "k_prime" | "k'" | "kprime" => SweepVar::KPrime,
            "n" => SweepVar::N,
            "q" | "q_fixed_m" => SweepVar::Q,
            "q_fixed_p" => SweepVar::QFixedP,
            "r_fixed_p" => SweepVar::RFixedP,
            "r_fixed_m" | "r" => SweepVar::RFixedM,
            other => {
                return Err(Error::InvalidParams(format!(
                    "unknown sweep variable {other:?}"
                )))
            }
        })
    }
}

/// Hash count of the classic `m`-bit baseline filter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BaselineHashes {
    /// The yes-filter's `k` at each point.
    #[default]
    YesFilter,
    Fixed(usize),
    /// `max(1, round(m / n * ln 2))`, recomputed at every point.
    Optimal,
}

impl BaselineHashes {
    pub fn resolve(self, params: &YesNoParams, n: usize) -> usize {
        let m = params.m();
        match self {
            BaselineHashes::YesFilter => params.k(),
            BaselineHashes::Fixed(k) => k,
            BaselineHashes::Optimal if n == 0 => 1,
            BaselineHashes::Optimal => ((m as f64 / n as f64) * std::f64::consts::LN_2)
                .round()
                .max(1.0) as usize,
        }
    }
}

impl fmt::Display for BaselineHashes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaselineHashes::YesFilter => f.write_str("yes"),
            BaselineHashes::Fixed(k) => write!(f, "{k}"),
            BaselineHashes::Optimal => f.write_str("optimal"),
        }
    }
}

impl FromStr for BaselineHashes {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "yes" | "same" => Ok(BaselineHashes::YesFilter),
            "opt" | "optimal" => Ok(BaselineHashes::Optimal),
            _ => match s.parse::<usize>() {
                Ok(k) if k >= 1 => Ok(BaselineHashes::Fixed(k)),
                _ => Err(Error::InvalidParams(format!(
                    "baseline hash count must be a positive integer, \"yes\" or \"optimal\", got {s:?}"
                ))),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    /// Geometry every point starts from.
    pub base: YesNoParams,
    pub n: usize,
    pub t: usize,
    pub trials: usize,
    pub seed: u64,
    pub swept: SweepVar,
    pub range: RangeInclusive<usize>,
    /// Hash count of the classic filter of total size `m`.
    pub k_bf: BaselineHashes,
    /// Step between swept values.
    pub step: usize,
}

impl SweepConfig {
    /// m = 256, p = 160, q = 32, r = 3, k = 4, k' = 5, n = 30, |T| = 100,
    /// 10^4 trials, classic baseline with the yes-filter's hash count.
    pub fn new(swept: SweepVar) -> Self {
        SweepConfig {
            base: YesNoParams::with_total(256, 160, 32, 3, 4, 5).expect("valid defaults"),
            n: 30,
            t: 100,
            trials: 10_000,
            seed: 7,
            swept,
            range: swept.default_range(),
            k_bf: BaselineHashes::YesFilter,
            step: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParams("trials must be >= 1".into()));
        }
        if self.step == 0 {
            return Err(Error::InvalidParams("step must be >= 1".into()));
        }
        if self.range.is_empty() {
            return Err(Error::InvalidParams("empty sweep range".into()));
        }
        self.base.validate()
    }

    pub fn values(&self) -> impl Iterator<Item = usize> {
        self.range.clone().step_by(self.step.max(1))
    }

    /// Parameters, member count and classic-filter hash count at one value.
    pub fn point(&self, value: usize) -> Result<(YesNoParams, usize, usize)> {
        let b = &self.base;
        let fixed_m = |q: usize, r: usize| -> Result<YesNoParams> {
            let m = b.m();
            let p = m.checked_sub(q * r).filter(|&p| p > 0).ok_or_else(|| {
                Error::InvalidParams(format!("p = m - q r = {m} - {q}*{r} is not positive"))
            })?;
            YesNoParams::new(p, q, r, b.k(), b.k_prime())
        };
        let (params, n) = match self.swept {
            SweepVar::K => (
                YesNoParams::new(b.p(), b.q(), b.r(), value, b.k_prime())?,
                self.n,
            ),
            SweepVar::KPrime => (YesNoParams::new(b.p(), b.q(), b.r(), b.k(), value)?, self.n),
            SweepVar::N => (*b, value),
            SweepVar::Q => (fixed_m(value, b.r())?, self.n),
            SweepVar::QFixedP => (
                YesNoParams::new(b.p(), value, b.r(), b.k(), b.k_prime())?,
                self.n,
            ),
            SweepVar::RFixedP => (
                YesNoParams::new(b.p(), b.q(), value, b.k(), b.k_prime())?,
                self.n,
            ),
            SweepVar::RFixedM => (fixed_m(b.q(), value)?, self.n),
        };
        let k_bf = self.k_bf.resolve(&params, n);
        Ok((
            params.allowing_false_negatives(b.allow_false_negatives()),
            n,
            k_bf,
        ))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointStats {
    pub m: usize,
    pub p: usize,
    /// Summary of `|E|` over trials.
    pub fp: Summary,
    /// Mean `|F|`, the yes-filter-alone false positives.
    pub mean_yes_filter_fp: f64,
    /// Trials where `|E| > |F|`; always zero for a correct build.
    pub dominance_violations: usize,
    /// Trials with at least one member answered negative.
    pub trials_with_false_negatives: usize,
    /// `|T| f` for a classic filter of `m` bits.
    pub baseline_bf_m: f64,
    /// `|T| f` for a classic filter of `p` bits with the yes-filter's `k`.
    pub baseline_bf_p: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub value: usize,
    pub outcome: std::result::Result<PointStats, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub swept: SweepVar,
    pub points: Vec<SweepPoint>,
}

pub const CSV_HEADER: [&str; 12] = [
    "swept",
    "value",
    "mean_fp",
    "std_fp",
    "min",
    "q25",
    "median",
    "q75",
    "max",
    "baseline_bf_m",
    "baseline_bf_p",
    "error",
];

impl SweepResult {
    /// Successful points as `(value, stats)`.
    pub fn ok_points(&self) -> impl Iterator<Item = (usize, &PointStats)> {
        self.points
            .iter()
            .filter_map(|p| p.outcome.as_ref().ok().map(|s| (p.value, s)))
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let io = |e: csv::Error| Error::Io {
            path: "<csv>".into(),
            message: e.to_string(),
        };
        let mut w = csv::Writer::from_writer(out);
        w.write_record(CSV_HEADER).map_err(io)?;
        let f = |x: f64| format!("{x:.6}");
        for point in &self.points {
            let mut row = vec![self.swept.name().to_string(), point.value.to_string()];
            match &point.outcome {
                Ok(s) => {
                    row.extend(
                        [
                            s.fp.mean,
                            s.fp.std,
                            s.fp.min,
                            s.fp.q25,
                            s.fp.median,
                            s.fp.q75,
                            s.fp.max,
                            s.baseline_bf_m,
                            s.baseline_bf_p,
                        ]
                        .map(f),
                    );
                    row.push(String::new());
                }
                Err(msg) => {
                    row.extend(std::iter::repeat_n(String::new(), 9));
                    row.push(msg.clone());
                }
            }
            w.write_record(&row).map_err(io)?;
        }
        w.flush().map_err(|e| Error::Io {
            path: "<csv>".into(),
            message: e.to_string(),
        })
    }
}

fn run_point(config: &SweepConfig, value: usize) -> Result<PointStats> {
    let (params, n, k_bf) = config.point(value)?;
    let outcomes = (0..config.trials)
        .into_par_iter()
        .map(|i| {
            run_trial_detailed(
                &params,
                n,
                config.t,
                rng::derive_seed(config.seed, &[i as u64]),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let fp: Vec<f64> = outcomes.iter().map(|o| o.yes_no_fp as f64).collect();
    let mean_yes_filter_fp =
        outcomes.iter().map(|o| o.yes_filter_fp as f64).sum::<f64>() / outcomes.len() as f64;
    let baseline = |bits: usize, hashes: usize| {
        expected_fp_count(config.t, fp_prob_exact(FilterShape::new(bits, hashes, n)))
    };
    Ok(PointStats {
        m: params.m(),
        p: params.p(),
        fp: Summary::of(&fp),
        mean_yes_filter_fp,
        dominance_violations: outcomes
            .iter()
            .filter(|o| o.yes_no_fp > o.yes_filter_fp)
            .count(),
        trials_with_false_negatives: outcomes.iter().filter(|o| o.false_negatives > 0).count(),
        baseline_bf_m: baseline(params.m(), k_bf),
        baseline_bf_p: baseline(params.p(), params.k()),
    })
}

/// Runs every point of the sweep. Invalid geometry at a point is recorded in
/// that point and does not stop the sweep.
pub fn sweep(config: &SweepConfig) -> Result<SweepResult> {
    config.validate()?;
    let points = config
        .values()
        .map(|value| SweepPoint {
            value,
            outcome: run_point(config, value).map_err(|e| e.to_string()),
        })
        .collect();
    Ok(SweepResult {
        swept: config.swept,
        points,
    })
}
