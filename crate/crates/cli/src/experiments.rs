//! Experiment dispatch: one config in, one [`Artifact`] out.

use modone::dioph::{calibrate_counting_constant, dioph_type_estimate, singular_average, singular_average_limit};
use modone::empirical::{malpha_count_law, Centre};
use modone::homspace::{ekl_oracle, TestFunction2D, TestFunctionKind};
use modone::localstats::{
    count_distribution_exact, fourier_cutoff_for, gap_histogram, gap_statistics, number_variance,
    pair_correlation_direct, pair_correlation_fourier, CountDistribution, GapConvention, GapStatistics, PairWindow,
    VarianceMethod,
};
use modone::randmodel::{clt_statistic, heuristic_x_model, ks_distance, poisson_pmf, LengthRule};
use modone::seqgen::{gen_iid_uniform, gen_malpha, gen_sqrt_malpha, PointArray};
use modone::worksheet::{repro_maple, worksheet_gaps, worksheet_points, DEFAULT_N};

use crate::config::Config;
use crate::error::{CliError, CliResult};
use crate::output::{Artifact, Table};

pub const EXPERIMENTS: &[&str] = &[
    "repro-maple",
    "gaps",
    "ekl-empirical",
    "ekl-oracle",
    "paircorr",
    "variance",
    "dioph",
    "fixed-center",
    "x-model",
    "clt",
];

/// Upper limit on the elementary steps one run may request.
pub const WORK_LIMIT: f64 = 1e12;
/// Upper limit on the number of points held in memory.
pub const POINT_LIMIT: f64 = 1e9;

fn budget(requested: f64, limit: f64) -> CliResult<()> {
    if requested > limit {
        return Err(CliError::Budget { requested, limit });
    }
    Ok(())
}

fn positive<T: PartialOrd + Default + std::fmt::Display>(key: &str, v: T) -> CliResult<T> {
    if v > T::default() {
        Ok(v)
    } else {
        Err(CliError::Usage(format!("`{key}` must be positive, got {v}")))
    }
}

/// Run the experiment named by the `experiment` key.
pub fn run_experiment(cfg: &mut Config) -> CliResult<Artifact> {
    let experiment = cfg.required("experiment")?;
    // the seed is part of every record, used or not
    cfg.num::<u64>("seed", "0")?;
    let (tables, mismatch) = match experiment.as_str() {
        "repro-maple" => worksheet(cfg)?,
        "gaps" => (gaps(cfg)?, None),
        "ekl-empirical" => (ekl_empirical(cfg, false)?, None),
        "fixed-center" => (ekl_empirical(cfg, true)?, None),
        "ekl-oracle" => (oracle(cfg)?, None),
        "paircorr" => (paircorr(cfg)?, None),
        "variance" => (variance(cfg)?, None),
        "dioph" => (dioph(cfg)?, None),
        "x-model" => (x_model(cfg)?, None),
        "clt" => (clt(cfg)?, None),
        other => {
            return Err(CliError::Usage(format!(
                "unknown experiment `{other}`; expected one of {}",
                EXPERIMENTS.join(", ")
            )))
        }
    };
    Ok(Artifact {
        experiment,
        config: cfg.resolved().clone(),
        tables,
        mismatch,
    })
}

type Tables = Vec<(String, Table)>;

fn scalar(name: &str, value: f64, stderr: Option<f64>) -> (String, f64, Option<f64>) {
    (name.to_string(), value, stderr)
}

fn distribution_table(d: &CountDistribution, k_max: usize) -> Table {
    let exact = d.stderrs().is_none();
    Table::Distribution(
        (0..=k_max.max(d.k_max()))
            .map(|k| (k, d.mass(k), (!exact).then(|| d.stderr(k))))
            .collect(),
    )
}

fn worksheet(cfg: &mut Config) -> CliResult<(Tables, Option<Vec<String>>)> {
    let n: usize = cfg.num("n", &DEFAULT_N.to_string())?;
    budget(n as f64, POINT_LIMIT)?;
    let r = repro_maple(n)?;
    let h = &r.histogram;
    let hist = (0..h.num_bins)
        .map(|i| {
            let (lo, hi) = h.bin_edges(i);
            [lo, hi, h.masses[i], h.exponential_reference(i)]
        })
        .collect();
    let mut summary = vec![
        scalar("points", n as f64, None),
        scalar("gaps", h.total as f64, None),
        scalar("outlier_count", r.outliers.len() as f64, None),
    ];
    summary.extend(r.outliers.iter().enumerate().map(|(i, &v)| scalar(&format!("outlier_{:02}", i + 1), v, None)));
    if let Some(d) = r.max_abs_diff {
        summary.push(scalar("max_abs_diff", d, None));
    }
    summary.push(scalar("matched", if r.matched { 1.0 } else { 0.0 }, None));
    let mismatch = (!r.matched).then(|| {
        let mut lines = vec![format!(
            "expected {} outliers, found {}",
            r.reference.len(),
            r.outliers.len()
        )];
        lines.extend(r.diff_lines());
        lines
    });
    Ok((
        vec![("histogram".into(), Table::Histogram(hist)), ("summary".into(), Table::Scalars(summary))],
        mismatch,
    ))
}

fn points(cfg: &mut Config, default_n: &str) -> CliResult<PointArray<f64>> {
    let generator = cfg.text("generator", "malpha")?;
    let n: usize = positive("n", cfg.num("n", default_n)?)?;
    budget(n as f64, POINT_LIMIT)?;
    Ok(match generator.as_str() {
        "malpha" => gen_malpha(cfg.real("alpha", "sqrt(2)")?, n)?,
        "sqrt-malpha" => gen_sqrt_malpha(cfg.real("alpha", "sqrt(2)")?, n)?,
        "iid" => gen_iid_uniform(n, cfg.num("seed", "0")?)?,
        "worksheet" => worksheet_points(n)?,
        other => {
            return Err(CliError::Usage(format!(
                "unknown generator `{other}`; expected malpha, sqrt-malpha, iid or worksheet"
            )))
        }
    })
}

fn gaps(cfg: &mut Config) -> CliResult<Tables> {
    let convention = match cfg.text("convention", "open-chain")?.as_str() {
        "open-chain" => GapConvention::OpenChain,
        "circular" => GapConvention::Circular,
        other => return Err(CliError::Usage(format!("unknown gap convention `{other}`"))),
    };
    let bin_width: f64 = cfg.real("bin_width", "0.2")?;
    let num_bins: usize = cfg.num("num_bins", "35")?;
    let pts = points(cfg, &DEFAULT_N.to_string())?;
    let stats: GapStatistics<f64> = if cfg.raw("generator") == Some("worksheet") && convention == GapConvention::OpenChain {
        worksheet_gaps(pts.len())?
    } else {
        gap_statistics(&pts, convention)?
    };
    let h = gap_histogram(&stats, bin_width, num_bins)?;
    let hist = (0..h.num_bins)
        .map(|i| {
            let (lo, hi) = h.bin_edges(i);
            [lo, hi, h.masses[i], h.exponential_reference(i)]
        })
        .collect();
    let g = stats.gaps();
    let mean = g.iter().sum::<f64>() / g.len().max(1) as f64;
    let summary = vec![
        scalar("points", pts.len() as f64, None),
        scalar("gaps", g.len() as f64, None),
        scalar("mean_gap", mean, None),
        scalar("outlier_count", h.outliers.len() as f64, None),
        scalar("ks_exponential", ks_distance(g, |s| 1.0 - (-s).exp()), None),
    ];
    Ok(vec![("histogram".into(), Table::Histogram(hist)), ("summary".into(), Table::Scalars(summary))])
}

fn ekl_empirical(cfg: &mut Config, fixed_centre: bool) -> CliResult<Tables> {
    let big_l: f64 = positive("L", cfg.real("L", "1")?)?;
    let k_max: usize = cfg.num("k_max", "10")?;
    let seed: u64 = cfg.num("seed", "0")?;
    let generator = if fixed_centre { "malpha".to_string() } else { cfg.text("generator", "malpha")? };
    let d = if generator == "malpha" {
        // random α, and a random or fixed centre
        let n: usize = positive("n", cfg.num("n", "2000")?)?;
        let samples: u64 = positive("samples", cfg.num("samples", "10000")?)?;
        budget(n as f64 * samples as f64, WORK_LIMIT)?;
        let centre = if fixed_centre {
            Centre::Fixed(cfg.real("x0", "sqrt(3) - 1")?)
        } else {
            Centre::Random
        };
        malpha_count_law(n, big_l, centre, samples, seed)?
    } else {
        // one array, exact sweep over the centre
        let pts = points(cfg, "50000")?;
        count_distribution_exact(&pts, big_l)?
    };
    let mean_se = d.mean_stderr();
    Ok(vec![
        ("distribution".into(), distribution_table(&d, k_max)),
        (
            "summary".into(),
            Table::Scalars(vec![
                scalar("mean", d.mean(), mean_se),
                scalar("variance", d.variance(), None),
                scalar("total_mass", d.total_mass(), None),
            ]),
        ),
    ])
}

fn oracle(cfg: &mut Config) -> CliResult<Tables> {
    let kind = match cfg.text("psi", "rectangle")?.as_str() {
        "rectangle" => TestFunctionKind::Rectangle,
        "triangle" => TestFunctionKind::Triangle,
        other => return Err(CliError::Usage(format!("unknown test function `{other}`"))),
    };
    let big_l: f64 = positive("L", cfg.real("L", "1")?)?;
    let samples: u64 = positive("samples", cfg.num("samples", "1000000")?)?;
    let k_max: usize = cfg.num("k_max", "10")?;
    let seed: u64 = cfg.num("seed", "0")?;
    // each sample enumerates O(L + 1) lattice cells on average
    budget(samples as f64 * (big_l + 1.0), WORK_LIMIT)?;
    let psi = TestFunction2D::new(kind, big_l)?;
    let est = ekl_oracle(&psi, k_max, samples, seed)?;
    let d = &est.distribution;
    Ok(vec![
        ("distribution".into(), distribution_table(d, k_max)),
        (
            "summary".into(),
            Table::Scalars(vec![
                scalar("mean", d.mean(), d.mean_stderr()),
                scalar("acceptance_rate", est.acceptance_rate(), Some(est.acceptance_stderr())),
                scalar("accepted", est.accepted as f64, None),
                scalar("proposed", est.proposed as f64, None),
            ]),
        ),
    ])
}

fn pair_window(cfg: &mut Config) -> CliResult<PairWindow> {
    match cfg.text("window", "triangle")?.as_str() {
        "triangle" => Ok(PairWindow::Triangle),
        "box" => Ok(PairWindow::Box),
        other => Err(CliError::Usage(format!("unknown pair window `{other}`"))),
    }
}

fn paircorr(cfg: &mut Config) -> CliResult<Tables> {
    let window = pair_window(cfg)?;
    let big_l: f64 = cfg.real("L", "1")?;
    let pts = points(cfg, "1000")?;
    let direct = pair_correlation_direct(&pts, big_l, window)?;
    let mut rows = vec![scalar("direct", direct, None)];
    if window == PairWindow::Triangle {
        let default_cutoff = fourier_cutoff_for(pts.len(), big_l, 1e-3).to_string();
        let n_max: u64 = positive("n_max", cfg.num("n_max", &default_cutoff)?)?;
        budget(pts.len() as f64 * n_max as f64, WORK_LIMIT)?;
        let f = pair_correlation_fourier(&pts, big_l, window, n_max)?;
        rows.push(scalar("fourier", f.value, Some(f.error_bound())));
        rows.push(scalar("n_max", f.n_max as f64, None));
        rows.push(scalar("abs_difference", (f.value - direct).abs(), None));
    }
    Ok(vec![("summary".into(), Table::Scalars(rows))])
}

fn variance(cfg: &mut Config) -> CliResult<Tables> {
    let big_l: f64 = positive("L", cfg.real("L", "1")?)?;
    let samples: u64 = positive("samples", cfg.num("samples", "100000")?)?;
    let seed: u64 = cfg.num("seed", "0")?;
    let pts = points(cfg, "1000")?;
    budget(samples as f64 * (pts.len() as f64).log2().max(1.0), WORK_LIMIT)?;
    let id = number_variance(&pts, big_l, VarianceMethod::Identity)?;
    let mc = number_variance(&pts, big_l, VarianceMethod::MonteCarlo { samples, seed })?;
    Ok(vec![(
        "summary".into(),
        Table::Scalars(vec![
            scalar("identity", id.value, None),
            scalar("monte_carlo", mc.value, mc.stderr),
        ]),
    )])
}

fn dioph(cfg: &mut Config) -> CliResult<Tables> {
    let alpha = cfg.real("alpha", "sqrt(2)")?;
    let q_max: u64 = cfg.num("q_max", "100000")?;
    let n: u64 = positive("n", cfg.num("n", "10000")?)?;
    let samples: u64 = positive("samples", cfg.num("samples", "1000")?)?;
    let constant: f64 = cfg.real("constant", "4")?;
    let beta: f64 = cfg.real("beta", "0.5")?;
    let average_n: u64 = positive("average_n", cfg.num("average_n", "1000000")?)?;
    let seed: u64 = cfg.num("seed", "0")?;
    if n > q_max {
        return Err(CliError::Usage(format!("need n ≤ q_max, got n = {n}, q_max = {q_max}")));
    }
    budget(q_max as f64 * 2.0 + n as f64 * samples as f64 * 2.0 + average_n as f64, WORK_LIMIT)?;
    let profile = dioph_type_estimate(alpha, q_max)?;
    let fit = calibrate_counting_constant(&profile, n, samples, seed)?;
    let check = calibrate_counting_constant(&profile, n, samples, seed.wrapping_add(1))?;
    let avg = singular_average(alpha, beta, average_n)?;
    let limit = singular_average_limit(beta);
    let mut rows = vec![
        scalar("kappa", profile.kappa_estimate, None),
        scalar("c", profile.c_estimate, None),
        scalar("stable", if profile.stable { 1.0 } else { 0.0 }, None),
        scalar("best_approximations", profile.best_approximations.len() as f64, None),
        scalar("calibrated_constant", fit.constant, None),
        scalar("validation_constant", check.constant, None),
        scalar("constant", constant, None),
        scalar("validation_within_constant", if check.constant <= constant { 1.0 } else { 0.0 }, None),
        scalar("singular_average", avg, None),
        scalar("singular_average_limit", limit, None),
        scalar("singular_average_rel_error", (avg - limit) / limit, None),
    ];
    rows.extend(
        profile
            .partial_quotients
            .iter()
            .enumerate()
            .map(|(i, &a)| scalar(&format!("a_{i}"), a as f64, None)),
    );
    Ok(vec![("summary".into(), Table::Scalars(rows))])
}

fn x_model(cfg: &mut Config) -> CliResult<Tables> {
    let big_m: u64 = positive("m", cfg.num("m", "10000")?)?;
    let big_l: f64 = cfg.real("L", "1")?;
    let trials: u64 = positive("samples", cfg.num("samples", "1000000")?)?;
    let k_max: usize = cfg.num("k_max", "10")?;
    let seed: u64 = cfg.num("seed", "0")?;
    budget(trials as f64 * (2.0 * big_l + 1.0), WORK_LIMIT)?;
    let d = heuristic_x_model(big_m, big_l, trials, seed)?;
    let tv = d.total_variation(|k| poisson_pmf(k as u64, big_l));
    Ok(vec![
        ("distribution".into(), distribution_table(&d, k_max)),
        (
            "summary".into(),
            Table::Scalars(vec![
                scalar("mean", d.mean(), d.mean_stderr()),
                scalar("tv_poisson", tv, None),
            ]),
        ),
    ])
}

fn clt(cfg: &mut Config) -> CliResult<Tables> {
    let n: usize = positive("n", cfg.num("n", "10000")?)?;
    let trials: u64 = positive("samples", cfg.num("samples", "2000")?)?;
    let exponent: f64 = cfg.real("exponent", "0.5")?;
    let seed: u64 = cfg.num("seed", "0")?;
    budget(n as f64 * trials as f64 * 4.0, WORK_LIMIT)?;
    let r = clt_statistic(n, LengthRule::Power { exponent }, trials, seed)?;
    Ok(vec![(
        "summary".into(),
        Table::Scalars(vec![
            scalar("ks_distance", r.ks_distance, None),
            scalar("L", r.scaled_length, None),
            scalar("trials", r.trials as f64, None),
        ]),
    )])
}
