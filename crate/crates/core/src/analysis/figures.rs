//! CSV data for the published figures. Every file starts with a header row;
//! fields are comma separated with a decimal point, and λ₂ switches to
//! scientific notation below `1e-4`.
//!
//! | figure               | columns |
//! |----------------------|---------|
//! | `tradeoff`           | `q,k,delta,time_s,lambda2,log10_identities` |
//! | `identities-vs-time` | `q,k,delta,log10_identities,time_s` |
//! | `lambda2-vs-params`  | `q,k,delta,blocklength,distance,lambda2_exact,lambda2` |
//! | `fixed-randomness`   | `q,k,delta,trials,seed,false_accepts,ratio,wilson_low,wilson_high,per_position_agreement,lambda2` |
//!
//! Timing columns are measured; all other columns are reproducible
//! byte for byte from the inputs and seed.

use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;

use super::bench_tag;
use crate::concat::{derive_params, false_id_bound};
use crate::error::{Error, Result};
use crate::protocol::run_fixed_randomness_experiment;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    Tradeoff,
    IdentitiesVsTime,
    Lambda2VsParams,
    FixedRandomness,
}

impl Figure {
    pub const ALL: [Figure; 4] = [
        Figure::Tradeoff,
        Figure::IdentitiesVsTime,
        Figure::Lambda2VsParams,
        Figure::FixedRandomness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Figure::Tradeoff => "tradeoff",
            Figure::IdentitiesVsTime => "identities-vs-time",
            Figure::Lambda2VsParams => "lambda2-vs-params",
            Figure::FixedRandomness => "fixed-randomness",
        }
    }

    pub fn header(self) -> &'static [&'static str] {
        match self {
            Figure::Tradeoff => &["q", "k", "delta", "time_s", "lambda2", "log10_identities"],
            Figure::IdentitiesVsTime => &["q", "k", "delta", "log10_identities", "time_s"],
            Figure::Lambda2VsParams => &[
                "q",
                "k",
                "delta",
                "blocklength",
                "distance",
                "lambda2_exact",
                "lambda2",
            ],
            Figure::FixedRandomness => &[
                "q",
                "k",
                "delta",
                "trials",
                "seed",
                "false_accepts",
                "ratio",
                "wilson_low",
                "wilson_high",
                "per_position_agreement",
                "lambda2",
            ],
        }
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Figure::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown figure {s:?}")))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct FigureOptions {
    /// Required for `fixed-randomness`.
    pub trials: Option<u64>,
    pub seed: u64,
    /// Timed repetitions per row for the timing figures.
    pub repetitions: u32,
}

impl Default for FigureOptions {
    fn default() -> Self {
        FigureOptions {
            trials: None,
            seed: 0,
            repetitions: 3,
        }
    }
}

/// `(3,2,1)` at `q = 3`, `(q,3,2)` for the primes 5 through 23.
pub fn fixed_randomness_params() -> Vec<(u64, u32, u32)> {
    std::iter::once((3, 2, 1))
        .chain([5, 7, 11, 13, 17, 19, 23].map(|q| (q, 3, 2)))
        .collect()
}

fn fmt_lambda(v: f64) -> String {
    if v != 0.0 && v.abs() < 1e-4 {
        format!("{v:.6e}")
    } else {
        format!("{v:.6}")
    }
}

fn row(
    figure: Figure,
    (q, k, delta): (u64, u32, u32),
    opts: &FigureOptions,
) -> Result<Vec<String>> {
    let mut out = vec![q.to_string(), k.to_string(), delta.to_string()];
    match figure {
        Figure::Tradeoff | Figure::IdentitiesVsTime => {
            let b = bench_tag(q, k, delta, opts.repetitions, opts.seed)?;
            let time = format!("{:.6e}", b.wall_time_one_tag);
            let ids = format!("{:.4}", b.log10_identities);
            if figure == Figure::Tradeoff {
                out.extend([time, fmt_lambda(b.lambda2_bound_value), ids]);
            } else {
                out.extend([ids, time]);
            }
        }
        Figure::Lambda2VsParams => {
            let p = derive_params(q, k, delta)?;
            let b = false_id_bound(&p);
            out.extend([
                p.blocklength().to_string(),
                p.distance().to_string(),
                b.exact.to_string(),
                fmt_lambda(b.value),
            ]);
        }
        Figure::FixedRandomness => {
            let trials = opts.trials.ok_or_else(|| {
                Error::InvalidParams("fixed-randomness needs a trial count".into())
            })?;
            let r =
                run_fixed_randomness_experiment(&derive_params(q, k, delta)?, trials, opts.seed)?;
            out.extend([
                r.trials.to_string(),
                r.seed.to_string(),
                r.false_accepts.to_string(),
                format!("{:.6}", r.ratio),
                format!("{:.6}", r.wilson95[0]),
                format!("{:.6}", r.wilson95[1]),
                format!("{:.6}", r.per_position_agreement),
                fmt_lambda(r.bound_value),
            ]);
        }
    }
    Ok(out)
}

/// Writes one CSV row per parameter set. Timing rows run one after
/// another; the others are computed in parallel.
pub fn emit_figure_data<W: Write>(
    figure: Figure,
    params: &[(u64, u32, u32)],
    opts: &FigureOptions,
    out: W,
) -> Result<()> {
    let rows: Vec<Vec<String>> = match figure {
        Figure::Tradeoff | Figure::IdentitiesVsTime => params
            .iter()
            .map(|&p| row(figure, p, opts))
            .collect::<Result<_>>()?,
        _ => params
            .par_iter()
            .map(|&p| row(figure, p, opts))
            .collect::<Result<_>>()?,
    };
    let mut w = csv::Writer::from_writer(out);
    w.write_record(figure.header())?;
    for r in rows {
        w.write_record(&r)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn emit(figure: Figure, params: &[(u64, u32, u32)], opts: &FigureOptions) -> String {
        let mut buf = Vec::new();
        emit_figure_data(figure, params, opts, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn empty_list_is_header_only() {
        for f in Figure::ALL {
            let s = emit(f, &[], &FigureOptions::default());
            assert_eq!(s, format!("{}\n", f.header().join(",")));
        }
    }

    #[test]
    fn lambda2_decades() {
        let params: Vec<_> = [23u64, 193, 1009, 10_007].map(|q| (q, 3, 2)).to_vec();
        let s = emit(Figure::Lambda2VsParams, &params, &FigureOptions::default());
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[1], "23,3,2,279841,255045,24796/279841,0.088607");
        let values: Vec<f64> = lines[1..]
            .iter()
            .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
            .collect();
        // roughly 2/q, so each step divides by the growth of q
        for (v, (q, _, _)) in values.iter().zip(&params) {
            let scaled = v * *q as f64 / 2.0;
            assert!((1.0..1.03).contains(&scaled), "q={q} lambda2={v}");
        }
        assert!(values.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn small_lambda2_is_scientific() {
        assert_eq!(fmt_lambda(1.99986e-5), "1.999860e-5");
        assert_eq!(fmt_lambda(1.9986e-4), "0.000200");
        let s = emit(
            Figure::Lambda2VsParams,
            &[(100_003, 3, 2)],
            &FigureOptions::default(),
        );
        assert!(s.trim_end().ends_with("e-5"), "{s}");
    }

    #[test]
    fn fixed_randomness_is_byte_stable() {
        let opts = FigureOptions {
            trials: Some(300),
            seed: 12,
            repetitions: 1,
        };
        let a = emit(Figure::FixedRandomness, &fixed_randomness_params(), &opts);
        let b = emit(Figure::FixedRandomness, &fixed_randomness_params(), &opts);
        assert_eq!(a, b);
        assert_eq!(a.lines().count(), 9);
        assert!(a.lines().nth(1).unwrap().starts_with("3,2,1,300,12,"));
    }

    #[test]
    fn fixed_randomness_needs_trials() {
        let mut buf = Vec::new();
        assert!(emit_figure_data(
            Figure::FixedRandomness,
            &[(5, 3, 2)],
            &FigureOptions::default(),
            &mut buf
        )
        .is_err());
    }

    #[test]
    fn identities_column() {
        let opts = FigureOptions {
            repetitions: 1,
            ..Default::default()
        };
        let s = emit(Figure::IdentitiesVsTime, &[(23, 3, 2)], &opts);
        assert!(s.lines().nth(1).unwrap().starts_with("23,3,2,93.9592,"));
    }

    #[test]
    fn figure_names_round_trip() {
        for f in Figure::ALL {
            assert_eq!(f.name().parse::<Figure>().unwrap(), f);
        }
        assert!("bogus".parse::<Figure>().is_err());
    }
}
