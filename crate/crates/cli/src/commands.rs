//! Subcommand implementations.
//!
//! Every verification subcommand assembles a [`Report`]; the data
//! subcommands (`poly xell`, `potential`) emit a document instead.  Usage
//! and constraint problems (impossible couplings, missing `--h`, malformed
//! grids) are returned as `Err` strings and map to exit code 2; genuine
//! verification failures stay inside the report and map to exit code 1.

use std::f64::consts::FRAC_PI_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use xell::error::XellError;
use xell::identities::shape::{delta_pointwise, delta_scale, shape_invariance_residual};
use xell::identities::{
    cubic_jacobi_residual, cubic_jacobi_residual_at, cubic_laguerre_residual,
    cubic_laguerre_residual_at, jacobi_parameter_grid, laguerre_alpha_grid,
    laguerre_limit_of_jacobi_identity, lemma_residual_condensed, LemmaId,
};
use xell::numerics::{fd_spectrum, orthogonality_gram, zero_count_report, Grid};
use xell::report::{Check, Report, Residual};
use xell::ring::{rat_display, rat_int, rat_to_f64, Rational};
use xell::suite::{criteria, SuiteConfig};
use xell::systems::potential::deformed_potential;
use xell::systems::{
    bound_state_count, energy_in, shifted_params_in, validate_params, xell_poly, xi_ode_residual,
    xi_ode_residual_symbolic, Params, SystemKind,
};

use crate::pool::run_ordered;

/// What a subcommand hands back to `main` for printing.
pub enum Output {
    /// A verification report: JSON to stdout, summary to stderr, exit code
    /// from the aggregated check status.
    Report(Report),
    /// A data document: verbatim to stdout, note to stderr, exit 0.
    Data { stdout: String, note: String },
}

/// Which contiguity relations to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum LemmaFamily {
    /// The single-parameter relations (A and B).
    Laguerre,
    /// The two-parameter relations (C and D).
    Jacobi,
    /// All four relations.
    All,
}

/// Which cubic identity to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CubicFamily {
    Laguerre,
    Jacobi,
}

/// How to check a cubic identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CubicMode {
    /// Expand over the symbolic parameter ring and require the zero
    /// polynomial.
    Symbolic,
    /// Evaluate at a grid of exact rational parameter values.
    Grid,
    /// Both routes.
    Both,
}

/// Output format for `poly xell`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum PolyFormat {
    Json,
    Csv,
}

/// A parsed `--grid lo,hi,N` argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

// ---------------------------------------------------------------------------
// Shared helpers.

/// Build validated couplings from the flag values, enforcing the
/// presence/absence of `--h` per system.
fn make_params(
    kind: SystemKind,
    ell: u32,
    g: &Rational,
    h: Option<&Rational>,
) -> Result<Params, String> {
    let params = match (kind.takes_h(), h) {
        (true, Some(h)) => Params::coupled(g.clone(), h.clone()),
        (true, None) => return Err(format!("system `{}` requires --h", kind.name())),
        (false, None) => Params::radial(g.clone()),
        (false, Some(_)) => return Err(format!("system `{}` takes no --h", kind.name())),
    };
    validate_params(kind, ell, &params).map_err(|e| e.to_string())?;
    Ok(params)
}

fn params_display(params: &Params) -> String {
    match &params.h {
        Some(h) => format!("g = {}, h = {}", rat_display(&params.g), rat_display(h)),
        None => format!("g = {}", rat_display(&params.g)),
    }
}

fn record_params(report: &mut Report, kind: SystemKind, params: &Params) {
    report.input("system", kind.name());
    report.input("g", rat_display(&params.g));
    if let Some(h) = &params.h {
        report.input("h", rat_display(h));
    }
}

/// Closed-form level `n` of the degree-`ell` deformed system.
fn deformed_level(kind: SystemKind, ell: u32, params: &Params, n: u32) -> f64 {
    let (gs, hs) = shifted_params_in::<Rational>(kind, &params.g, params.h.as_ref(), i64::from(ell));
    rat_to_f64(&energy_in(kind, i64::from(n), &gs, hs.as_ref()))
}

/// Interior window the pointwise shape check samples from.
fn sample_window(kind: SystemKind) -> (f64, f64) {
    match kind {
        SystemKind::RadialOscillator => (0.15, 4.0),
        SystemKind::TrigDpt => (0.08, FRAC_PI_2 - 0.08),
        SystemKind::HypDpt => (0.1, 2.5),
    }
}

/// Plot window for `potential` samples (clear of both domain ends).
fn plot_window(kind: SystemKind) -> (f64, f64) {
    match kind {
        SystemKind::RadialOscillator => (0.05, 6.0),
        SystemKind::TrigDpt => (0.02, FRAC_PI_2 - 0.02),
        SystemKind::HypDpt => (0.05, 4.0),
    }
}

/// Default finite-difference grid for `spectrum`.
fn default_grid(kind: SystemKind) -> Grid {
    match kind {
        SystemKind::RadialOscillator => Grid::new(1e-3, 12.0, 4000),
        SystemKind::TrigDpt => Grid::new(1e-3, FRAC_PI_2 - 1e-3, 3000),
        SystemKind::HypDpt => Grid::new(1e-3, 7.0, 3500),
    }
}

/// Per-system spectrum tolerance and whether it is relative.
fn spectrum_tolerance(kind: SystemKind) -> (f64, bool) {
    match kind {
        SystemKind::RadialOscillator => (1e-2, false),
        SystemKind::TrigDpt => (1e-2, true),
        SystemKind::HypDpt => (1e-1, true),
    }
}

// ---------------------------------------------------------------------------
// verify lemmas

pub fn verify_lemmas(n_max: u32, family: LemmaFamily) -> Result<Output, String> {
    let mut report = Report::new("verify lemmas");
    report.input("n-max", n_max.to_string());
    report.input(
        "family",
        match family {
            LemmaFamily::Laguerre => "laguerre",
            LemmaFamily::Jacobi => "jacobi",
            LemmaFamily::All => "all",
        },
    );
    let ids: &[LemmaId] = match family {
        LemmaFamily::Laguerre => &[LemmaId::A, LemmaId::B],
        LemmaFamily::Jacobi => &[LemmaId::C, LemmaId::D],
        LemmaFamily::All => &LemmaId::ALL,
    };
    for &id in ids {
        let slug = id.name().to_ascii_lowercase();
        for n in 0..=n_max {
            let ok = lemma_residual_condensed(id, n).is_zero();
            report.push(Check::exact(
                format!("lemma-{slug}/n-{n:02}"),
                ok,
                format!(
                    "contiguity relation {} at degree n = {n}: residual expanded over \
                     the symbolic parameter ring",
                    id.name()
                ),
            ));
        }
    }
    Ok(Output::Report(report))
}

// ---------------------------------------------------------------------------
// verify cubic

pub fn verify_cubic(family: CubicFamily, ell_max: u32, mode: CubicMode) -> Result<Output, String> {
    let mut report = Report::new("verify cubic");
    report.input("ell-max", ell_max.to_string());
    report.input(
        "family",
        match family {
            CubicFamily::Laguerre => "laguerre",
            CubicFamily::Jacobi => "jacobi",
        },
    );
    report.input(
        "mode",
        match mode {
            CubicMode::Symbolic => "symbolic",
            CubicMode::Grid => "grid",
            CubicMode::Both => "both",
        },
    );
    let symbolic = matches!(mode, CubicMode::Symbolic | CubicMode::Both);
    let grid = matches!(mode, CubicMode::Grid | CubicMode::Both);
    for ell in 0..=ell_max {
        match family {
            CubicFamily::Laguerre => {
                if symbolic {
                    report.push(Check::exact(
                        format!("cubic-laguerre/symbolic-ell-{ell:02}"),
                        cubic_laguerre_residual(ell).is_zero(),
                        format!(
                            "five-summand cubic identity at ell = {ell}: zero polynomial \
                             over the symbolic-parameter ring"
                        ),
                    ));
                }
                if grid {
                    let alphas = laguerre_alpha_grid(ell);
                    let bad: Vec<String> = alphas
                        .iter()
                        .filter(|a| !cubic_laguerre_residual_at(ell, a).is_zero())
                        .map(rat_display)
                        .collect();
                    report.push(if bad.is_empty() {
                        Check::exact_zero(
                            format!("cubic-laguerre/grid-ell-{ell:02}"),
                            format!(
                                "identity vanishes exactly at all {} rational parameter \
                                 samples",
                                alphas.len()
                            ),
                        )
                    } else {
                        Check::failed(
                            format!("cubic-laguerre/grid-ell-{ell:02}"),
                            Residual::Value(bad.len() as f64),
                            format!("nonzero residual at alpha in {{{}}}", bad.join(", ")),
                        )
                    });
                }
            }
            CubicFamily::Jacobi => {
                if symbolic {
                    report.push(Check::exact(
                        format!("cubic-jacobi/symbolic-ell-{ell:02}"),
                        cubic_jacobi_residual(ell).is_zero(),
                        format!(
                            "five-summand cubic identity at ell = {ell}: zero polynomial \
                             over the two-parameter symbolic ring"
                        ),
                    ));
                }
                if grid {
                    let pairs = jacobi_parameter_grid(ell);
                    let bad: Vec<String> = pairs
                        .iter()
                        .filter(|(a, b)| !cubic_jacobi_residual_at(ell, a, b).is_zero())
                        .map(|(a, b)| format!("({}, {})", rat_display(a), rat_display(b)))
                        .collect();
                    report.push(if bad.is_empty() {
                        Check::exact_zero(
                            format!("cubic-jacobi/grid-ell-{ell:02}"),
                            format!(
                                "identity vanishes exactly at all {} rational parameter \
                                 pairs",
                                pairs.len()
                            ),
                        )
                    } else {
                        Check::failed(
                            format!("cubic-jacobi/grid-ell-{ell:02}"),
                            Residual::Value(bad.len() as f64),
                            format!("nonzero residual at (alpha, beta) in {{{}}}", bad.join(", ")),
                        )
                    });
                }
            }
        }
    }
    Ok(Output::Report(report))
}

// ---------------------------------------------------------------------------
// verify shape

pub fn verify_shape(
    kind: SystemKind,
    ell: u32,
    g: &Rational,
    h: Option<&Rational>,
    seeds: u32,
    rng_seed: u64,
) -> Result<Output, String> {
    let params = make_params(kind, ell, g, h)?;
    let mut report = Report::new("verify shape");
    record_params(&mut report, kind, &params);
    report.input("ell", ell.to_string());
    report.input("seeds", seeds.to_string());
    report.input("rng-seed", rng_seed.to_string());

    match shape_invariance_residual(kind, ell, &params) {
        Ok(residual) => report.push(Check::exact(
            "shape/exact",
            residual.is_zero(),
            format!(
                "partner-potential defect minus the first level is the zero polynomial \
                 at {}",
                params_display(&params)
            ),
        )),
        Err(e) => report.push(Check::failed(
            "shape/exact",
            Residual::Value(1.0),
            e.to_string(),
        )),
    };

    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let (lo, hi) = sample_window(kind);
    let scale = delta_scale(kind, ell, &params);
    let mut worst = 0.0_f64;
    let mut failure: Option<String> = None;
    for _ in 0..seeds {
        let x = rng.gen_range(lo..hi);
        match delta_pointwise(kind, ell, &params, x) {
            Ok(delta) => worst = worst.max(delta.abs() / scale),
            Err(e) => {
                failure = Some(format!("pointwise evaluation failed at x = {x}: {e}"));
                break;
            }
        }
    }
    report.push(match failure {
        None => Check::numeric(
            "shape/pointwise",
            worst,
            1e-9,
            format!(
                "worst normalized defect over {seeds} interior points in ({lo}, {hi}) \
                 at {}",
                params_display(&params)
            ),
        ),
        Some(why) => Check::failed("shape/pointwise", Residual::Value(1.0), why),
    });
    Ok(Output::Report(report))
}

// ---------------------------------------------------------------------------
// verify orthogonality

pub fn verify_orthogonality(
    kind: SystemKind,
    ell: u32,
    n_max: u32,
    g: &Rational,
    h: Option<&Rational>,
) -> Result<Output, String> {
    let params = make_params(kind, ell, g, h)?;
    let mut report = Report::new("verify orthogonality");
    record_params(&mut report, kind, &params);
    report.input("ell", ell.to_string());
    report.input("n-max", n_max.to_string());

    match orthogonality_gram(kind, ell, &params, n_max, 64) {
        Ok(gram) => {
            let off = gram.max_off_diagonal();
            let diag = gram.min_diagonal();
            report.push(Check::numeric(
                "orthogonality/off-diagonal",
                off,
                1e-8,
                format!(
                    "largest normalized off-diagonal inner product among degrees \
                     0..={n_max} (quadrature order {})",
                    gram.order_used
                ),
            ));
            report.push(Check::exact(
                "orthogonality/diagonal-positive",
                diag.is_finite() && diag > 0.0,
                format!("smallest squared norm is {diag:.6e}; all must be positive and finite"),
            ));
        }
        Err(XellError::System(e)) => return Err(e.to_string()),
        Err(e) => {
            report.push(Check::failed(
                "orthogonality/gram",
                Residual::Value(1.0),
                format!("quadrature did not produce a usable Gram matrix: {e}"),
            ));
        }
    }
    Ok(Output::Report(report))
}

// ---------------------------------------------------------------------------
// verify zeros

pub fn verify_zeros(
    kind: SystemKind,
    ell: u32,
    n_max: u32,
    g: &Rational,
    h: Option<&Rational>,
) -> Result<Output, String> {
    let params = make_params(kind, ell, g, h)?;
    let mut report = Report::new("verify zeros");
    record_params(&mut report, kind, &params);
    report.input("ell", ell.to_string());
    report.input("n-max", n_max.to_string());

    match zero_count_report(kind, ell, &params, n_max) {
        Ok(rows) => {
            for (n, count) in rows {
                report.push(Check::exact(
                    format!("zeros/n-{n:02}"),
                    count == n as usize,
                    format!(
                        "degree-{} member has {count} roots inside the physical domain; \
                         the bound level n = {n} requires exactly {n}",
                        n + ell
                    ),
                ));
            }
        }
        Err(XellError::System(e)) => return Err(e.to_string()),
        Err(e) => {
            report.push(Check::failed(
                "zeros/solver",
                Residual::Value(1.0),
                format!("exact root counting failed: {e}"),
            ));
        }
    }
    Ok(Output::Report(report))
}

// ---------------------------------------------------------------------------
// verify ode

pub fn verify_ode(
    kind: SystemKind,
    ell: u32,
    g: &Rational,
    h: Option<&Rational>,
) -> Result<Output, String> {
    let params = make_params(kind, ell, g, h)?;
    let mut report = Report::new("verify ode");
    record_params(&mut report, kind, &params);
    report.input("ell", ell.to_string());

    report.push(Check::exact(
        "deforming-ode/symbolic",
        xi_ode_residual_symbolic(kind, i64::from(ell)).is_zero(),
        format!(
            "second-order equation for the degree-{ell} deforming polynomial holds \
             identically over the symbolic coupling ring"
        ),
    ));
    report.push(Check::exact(
        "deforming-ode/at-couplings",
        xi_ode_residual(kind, i64::from(ell), &params).is_zero(),
        format!(
            "the same equation evaluated exactly at {}",
            params_display(&params)
        ),
    ));
    Ok(Output::Report(report))
}

// ---------------------------------------------------------------------------
// verify limit

pub fn verify_limit(n: u32, alpha: &Rational, beta_start: &Rational) -> Result<Output, String> {
    if beta_start.numer().bits() == 0 {
        return Err("--beta-start must be nonzero (the confluence substitution divides by beta)"
            .to_string());
    }
    let betas = vec![
        beta_start.clone(),
        beta_start * &rat_int(2),
        beta_start * &rat_int(4),
    ];
    let mut report = Report::new("verify limit");
    report.input("n", n.to_string());
    report.input("alpha", rat_display(alpha));
    report.input("beta-start", rat_display(beta_start));

    let limit = laguerre_limit_of_jacobi_identity(n, alpha, &betas);
    report.push(Check::exact(
        "limit/straight-exact",
        limit.straight_residual_zero,
        "the one-parameter cubic identity's summands cancel exactly".to_string(),
    ));
    report.push(Check::exact(
        "limit/transformed-exact",
        limit.transformed_residual_zero,
        "the transformed two-parameter summands cancel exactly at every sampled beta"
            .to_string(),
    ));
    for pair in &limit.pairs {
        let name = format!(
            "limit/pair-{}-to-{}",
            pair.transformed_index, pair.straight_index
        );
        if pair.ratios.is_empty() {
            if pair.gaps.iter().all(|&gap| gap == 0.0) {
                report.push(Check::exact_zero(
                    name,
                    "transformed summand already equals its one-parameter partner at \
                     every sampled beta"
                        .to_string(),
                ));
            } else {
                report.push(Check::failed(
                    name,
                    Residual::Value(1.0),
                    format!(
                        "coefficient gaps {:?} are too small to form rate ratios",
                        pair.gaps
                    ),
                ));
            }
        } else {
            let worst = pair
                .ratios
                .iter()
                .fold(0.0_f64, |acc, r| acc.max((r - 2.0).abs()));
            report.push(Check::numeric(
                name,
                worst,
                0.2,
                format!(
                    "coefficient gap shrinks by a factor in [1.8, 2.2] per doubling of \
                     beta across {}",
                    betas
                        .iter()
                        .map(rat_display)
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            ));
        }
    }
    Ok(Output::Report(report))
}

// ---------------------------------------------------------------------------
// verify all

pub fn verify_all(quick: bool, rng_seed: u64, jobs: usize) -> Result<Output, String> {
    let cfg = SuiteConfig { quick, rng_seed };
    let mut report = Report::new("verify all");
    report.input("quick", quick.to_string());
    report.input("rng-seed", rng_seed.to_string());
    report.input("jobs", jobs.to_string());

    let tasks: Vec<_> = criteria()
        .into_iter()
        .map(|criterion| {
            let cfg = &cfg;
            move || (criterion.run)(cfg)
        })
        .collect();
    for checks in run_ordered(jobs, tasks) {
        report.extend(checks);
    }
    Ok(Output::Report(report))
}

// ---------------------------------------------------------------------------
// poly xell

pub fn poly_xell(
    kind: SystemKind,
    ell: u32,
    n: u32,
    g: &Rational,
    h: Option<&Rational>,
    format: PolyFormat,
) -> Result<Output, String> {
    let params = make_params(kind, ell, g, h)?;
    let member = xell_poly(kind, ell, n, &params).map_err(|e| e.to_string())?;
    let coefficients: Vec<String> = member.poly.coeffs().iter().map(rat_display).collect();
    let degree = member.poly.degree();
    let note = format!(
        "deformed polynomial for system {}, ell = {ell}, n = {n}, {}: degree {:?}",
        kind.name(),
        params_display(&params),
        degree
    );
    let stdout = match format {
        PolyFormat::Json => {
            let doc = serde_json::json!({
                "command": "poly xell",
                "system": kind.name(),
                "ell": ell,
                "n": n,
                "g": rat_display(&params.g),
                "h": params.h.as_ref().map(rat_display),
                "variable": "eta",
                "degree": degree,
                "coefficients": coefficients,
            });
            let mut text =
                serde_json::to_string_pretty(&doc).map_err(|e| format!("JSON encoding: {e}"))?;
            text.push('\n');
            text
        }
        PolyFormat::Csv => {
            let mut text = String::from("power,coefficient\n");
            for (power, coefficient) in coefficients.iter().enumerate() {
                text.push_str(&format!("{power},{coefficient}\n"));
            }
            text
        }
    };
    Ok(Output::Data { stdout, note })
}

// ---------------------------------------------------------------------------
// potential

pub fn potential(
    kind: SystemKind,
    ell: u32,
    g: &Rational,
    h: Option<&Rational>,
    samples: u32,
) -> Result<Output, String> {
    if samples < 2 {
        return Err("--samples must be at least 2".to_string());
    }
    let params = make_params(kind, ell, g, h)?;
    let (lo, hi) = plot_window(kind);
    let step = (hi - lo) / f64::from(samples - 1);
    let mut stdout = String::from("x,u\n");
    for i in 0..samples {
        let x = lo + step * f64::from(i);
        let u = deformed_potential(kind, ell, &params, x).map_err(|e| e.to_string())?;
        stdout.push_str(&format!("{x},{u}\n"));
    }
    let note = format!(
        "deformed potential for system {}, ell = {ell}, {}: {samples} samples on \
         [{lo}, {hi}]",
        kind.name(),
        params_display(&params)
    );
    Ok(Output::Data { stdout, note })
}

// ---------------------------------------------------------------------------
// spectrum

pub fn spectrum(
    kind: SystemKind,
    ell: u32,
    g: &Rational,
    h: Option<&Rational>,
    levels: u32,
    grid: Option<GridSpec>,
) -> Result<Output, String> {
    if levels == 0 {
        return Err("--levels must be at least 1".to_string());
    }
    let params = make_params(kind, ell, g, h)?;
    if kind == SystemKind::HypDpt {
        let (gs, hs) =
            shifted_params_in::<Rational>(kind, &params.g, params.h.as_ref(), i64::from(ell));
        let bound = bound_state_count(&gs, hs.as_ref().expect("hyperbolic systems carry h"));
        if u64::from(levels) > bound {
            return Err(format!(
                "--levels {levels} exceeds the {bound} bound states of the degree-{ell} \
                 deformed system at {}",
                params_display(&params)
            ));
        }
    }
    let grid = match grid {
        Some(spec) => Grid::new(spec.lo, spec.hi, spec.points),
        None => default_grid(kind),
    };
    let mut report = Report::new("spectrum");
    record_params(&mut report, kind, &params);
    report.input("ell", ell.to_string());
    report.input("levels", levels.to_string());
    report.input(
        "grid",
        format!("{},{},{}", grid.x_lo, grid.x_hi, grid.points),
    );

    let (tol, relative) = spectrum_tolerance(kind);
    match fd_spectrum(kind, ell, &params, &grid, levels as usize) {
        Ok(computed) => {
            for (n, value) in computed.iter().enumerate() {
                let exact = deformed_level(kind, ell, &params, n as u32);
                let scale = if relative { exact.abs().max(1.0) } else { 1.0 };
                let residual = (value - exact).abs() / scale;
                report.push(Check::numeric(
                    format!("spectrum/level-{n}"),
                    residual,
                    tol,
                    format!(
                        "computed {value:.9}, closed form {exact:.9} ({} tolerance)",
                        if relative { "relative" } else { "absolute" }
                    ),
                ));
            }
        }
        Err(XellError::System(e)) => return Err(e.to_string()),
        Err(e) => {
            report.push(Check::failed(
                "spectrum/solver",
                Residual::Value(1.0),
                format!("finite-difference eigensolve failed: {e}"),
            ));
        }
    }
    Ok(Output::Report(report))
}
