//! Command-line stability tests for n-dimensional rational filters.
//!
//! The tool analyzes the denominator of a transfer function: `check` runs
//! the full decision procedure, the other subcommands expose the individual
//! computations (doubling iterates, Newton polytope data, contour traces,
//! Ronkin estimates, rasters and the verification oracles).

use amoeba_core::contour::{trace_contour, ChartGrids};
use amoeba_core::doubling::{cyclic_resultant, DoublingLimits};
use amoeba_core::geometry::{newton_polytope, polytope_stats};
use amoeba_core::laurent::{parse_poly, LaurentPoly};
use amoeba_core::oracle::{
    amoeba_membership_fiber, polydisk_nonvanishing_sample, shanks_oracle_2d, FiberMembership,
    PolydiskSample,
};
use amoeba_core::ronkin::{laplacian_raster, ronkin_quadrature, ronkin_via_doubling};
use amoeba_core::stability::{decide_strong_bibo, decide_weak_bibo_2d, StabilityOptions};
use amoeba_core::{BigInt, BigRational};
use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::path::PathBuf;

const EXIT_USAGE: i32 = 64;

#[derive(Parser)]
#[command(
    name = "amoeba-stab",
    version,
    about = "BIBO stability of n-dimensional rational filters via amoebas"
)]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker-thread cap for internal parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for the few randomized elements (oracle jitter).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Working precision in bits for certified comparisons.
    #[arg(long, global = true, default_value_t = 128)]
    precision_bits: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct InputArgs {
    /// Input polynomial file: JSON (`.json`) or the text grammar.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Inline polynomial expression (alternative to --input).
    #[arg(value_name = "EXPR")]
    expr: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide BIBO stability of the filter with denominator F.
    Check {
        #[command(flatten)]
        input: InputArgs,
        /// Threshold exponent: certify down to distance 2^-M0 from the amoeba.
        #[arg(long, default_value_t = 16)]
        m0: u32,
        /// Doubling-depth cap.
        #[arg(long, default_value_t = 12)]
        k_max: u32,
        /// Also run the weak-stability test when the strong one is inconclusive (n = 2).
        #[arg(long)]
        weak: bool,
        /// Diagonal probe offset for the weak test (rational).
        #[arg(long, default_value = "1/16")]
        delta: String,
        /// Accept the numerator/denominator coprimality as a user assertion.
        #[arg(long)]
        assume_coprime: bool,
        /// Write the report to a file as well as stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the doubling iterate G_k and write it as polynomial JSON.
    Doubling {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Newton polytope data: dimension, vertices, c_F and d_F.
    Polytope {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trace the contour of the amoeba (n = 2) into a CSV file.
    Contour {
        #[command(flatten)]
        input: InputArgs,
        /// Parameter range "a:b" swept in both charts.
        #[arg(long, default_value = "-50:50", allow_hyphen_values = true)]
        u_range: String,
        /// Number of grid samples per chart.
        #[arg(long, default_value_t = 101)]
        u_samples: usize,
        /// Charts to sweep: both, 1 or 2.
        #[arg(long, default_value = "both")]
        charts: String,
        /// Use the monomial-scaled pencil (recommended); `false` selects the
        /// plain derivative pencil.
        #[arg(long, default_value_t = true)]
        scaled_pencil: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Ronkin function estimate at a point.
    Ronkin {
        #[command(flatten)]
        input: InputArgs,
        /// Evaluation point "x1,x2,..." (rationals).
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Estimator: quad or doubling.
        #[arg(long, default_value = "quad")]
        method: String,
        /// Quadrature nodes per dimension.
        #[arg(long, default_value_t = 256)]
        grid: u32,
        /// Doubling depth for the doubling estimator.
        #[arg(long, default_value_t = 6)]
        k: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Laplacian raster of the Ronkin field (n = 2), written as PGM P2 with
    /// a JSON sidecar holding the affine scale.
    Raster {
        #[command(flatten)]
        input: InputArgs,
        /// Bounding box "x1min:x1max,x2min:x2max".
        #[arg(long, allow_hyphen_values = true)]
        bbox: String,
        #[arg(long, default_value_t = 128)]
        res: usize,
        /// Quadrature nodes per dimension per cell.
        #[arg(long, default_value_t = 64)]
        grid: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Verification oracles.
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Certified fiber membership of a point in the amoeba.
    Member {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 512)]
        resolution: u32,
    },
    /// Exact resultant-based bidisk nonvanishing test (n = 2).
    Shanks2d {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Heuristic polydisk sampling screen (not a proof).
    Polydisk {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 32)]
        grid: u32,
    },
}

/// Report envelope: every verdict is an auditable claim.
#[derive(Serialize)]
struct Report<T: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: String,
    input_sha256: String,
    options: serde_json::Value,
    result: T,
}

fn main() {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(EXIT_USAGE);
        }
    }
}

fn load_input(input: &InputArgs) -> Result<(LaurentPoly, String)> {
    let raw = match (&input.input, &input.expr) {
        (Some(path), _) => std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?,
        (None, Some(expr)) => expr.clone(),
        (None, None) => bail!("no input: pass --input FILE or an inline expression"),
    };
    let digest = hex_digest(raw.as_bytes());
    let trimmed = raw.trim();
    let poly = if trimmed.starts_with('{') {
        LaurentPoly::from_json_str(trimmed).map_err(|e| anyhow!("{e}"))?
    } else {
        parse_poly(trimmed).map_err(|e| anyhow!("{e}"))?
    };
    Ok((poly, digest))
}

fn hex_digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    if let Some((num, den)) = t.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| anyhow!("bad rational {t}"))?;
        let d: BigInt = den.trim().parse().map_err(|_| anyhow!("bad rational {t}"))?;
        if d == BigInt::from(0) {
            bail!("zero denominator in {t}");
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        let neg = int_part.trim_start().starts_with('-');
        let i: BigInt = if int_part.is_empty() || int_part == "-" {
            BigInt::from(0)
        } else {
            int_part.parse().map_err(|_| anyhow!("bad number {t}"))?
        };
        let frac_digits = frac_part.len() as u32;
        let f: BigInt = if frac_part.is_empty() {
            BigInt::from(0)
        } else {
            frac_part.parse().map_err(|_| anyhow!("bad number {t}"))?
        };
        let base = BigInt::from(10).pow(frac_digits);
        let mut numer = i * &base;
        if neg {
            numer -= f;
        } else {
            numer += f;
        }
        return Ok(BigRational::new(numer, base));
    }
    let n: BigInt = t.parse().map_err(|_| anyhow!("bad number {t}"))?;
    Ok(BigRational::from_integer(n))
}

fn parse_point(s: &str, nvars: usize) -> Result<Vec<BigRational>> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != nvars {
        bail!(
            "point has {} coordinates, polynomial has {nvars} variables",
            parts.len()
        );
    }
    parts.iter().map(|p| parse_rational(p)).collect()
}

fn emit<T: Serialize>(
    format: Format,
    report: &Report<T>,
    text: &str,
    out: Option<&PathBuf>,
) -> Result<()> {
    let json = serde_json::to_string_pretty(report)?;
    match format {
        Format::Text => println!("{text}"),
        Format::Json => println!("{json}"),
    }
    if let Some(path) = out {
        std::fs::write(path, json.as_bytes())
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Check { input, m0, k_max, weak, delta, assume_coprime, out } => {
            let (poly, digest) = load_input(&input)?;
            let delta_q = parse_rational(&delta)?;
            let opts = StabilityOptions {
                m0,
                k_max,
                delta: delta_q.clone(),
                precision_bits: cli.precision_bits,
                oracle_resolution: 128,
                limits: DoublingLimits::default(),
            };
            let strong = decide_strong_bibo(&poly, &opts);
            let verdict = if weak
                && poly.nvars() == 2
                && strong.kind == amoeba_core::VerdictKind::Inconclusive
            {
                decide_weak_bibo_2d(&poly, &opts, &strong)
            } else {
                strong
            };
            let options = serde_json::json!({
                "m0": m0,
                "k_max": k_max,
                "weak": weak,
                "delta": delta_q.to_string(),
                "assume_coprime": assume_coprime,
                "precision_bits": cli.precision_bits,
                "seed": cli.seed,
            });
            let code = verdict.exit_code();
            let text = format!(
                "verdict: {}\nk_used: {}\ncomponent: {}\nexit: {}",
                verdict.kind,
                verdict
                    .k_used
                    .map(|k| k.to_string())
                    .unwrap_or_else(|| "-".into()),
                verdict
                    .component
                    .as_ref()
                    .map(|c| format!("{c:?}"))
                    .unwrap_or_else(|| "-".into()),
                code
            );
            let report = Report {
                tool: "amoeba-stab",
                version: env!("CARGO_PKG_VERSION"),
                command: "check".into(),
                input_sha256: digest,
                options,
                result: serde_json::json!({
                    "verdict": verdict.kind.to_string(),
                    "k_used": verdict.k_used,
                    "component": verdict.component,
                    "assertions": verdict.assertions,
                    "evidence": verdict.evidence,
                    "resources": verdict.resources,
                }),
            };
            emit(cli.format, &report, &text, out.as_ref())?;
            Ok(code)
        }
        Command::Doubling { input, k, out } => {
            let (poly, digest) = load_input(&input)?;
            let seq = cyclic_resultant(&poly, k, &DoublingLimits::default())
                .map_err(|e| anyhow!("{e}"))?;
            std::fs::write(&out, seq.g.to_json_string())
                .with_context(|| format!("writing {}", out.display()))?;
            let options = serde_json::json!({ "k": k });
            let report = Report {
                tool: "amoeba-stab",
                version: env!("CARGO_PKG_VERSION"),
                command: "doubling".into(),
                input_sha256: digest,
                options,
                result: serde_json::json!({
                    "k": k,
                    "terms": seq.g.num_terms(),
                    "coeff_bits": seq.coeff_bits,
                    "out": out.display().to_string(),
                }),
            };
            let text = format!(
                "G_{k}: {} terms, {} coefficient bits -> {}",
                seq.g.num_terms(),
                seq.coeff_bits,
                out.display()
            );
            emit(cli.format, &report, &text, None)?;
            Ok(0)
        }
        Command::Polytope { input, out } => {
            let (poly, digest) = load_input(&input)?;
            let delta = newton_polytope(&poly).map_err(|e| anyhow!("{e}"))?;
            let stats = if delta.dim == poly.nvars() {
                Some(polytope_stats(&delta).map_err(|e| anyhow!("{e}"))?)
            } else {
                None
            };
            let result = serde_json::json!({
                "dim": delta.dim,
                "vertices": delta.vertices,
                "lattice_points": delta.lattice_points.len(),
                "c_F": stats.as_ref().map(|s| s.c_f),
                "d_F": stats.as_ref().map(|s| s.d_f.to_string()),
                "volume": stats.as_ref().map(|s| s.volume.to_string()),
            });
            let text = serde_json::to_string_pretty(&result)?;
            let report = Report {
                tool: "amoeba-stab",
                version: env!("CARGO_PKG_VERSION"),
                command: "polytope".into(),
                input_sha256: digest,
                options: serde_json::json!({}),
                result,
            };
            emit(cli.format, &report, &text, out.as_ref())?;
            Ok(0)
        }
        Command::Contour { input, u_range, u_samples, charts, scaled_pencil, out } => {
            let (poly, digest) = load_input(&input)?;
            if !scaled_pencil {
                eprintln!(
                    "note: tracing uses the monomial-scaled pencil; the plain \
                     derivative pencil is exposed through the library API"
                );
            }
            let (lo, hi) = u_range
                .split_once(':')
                .ok_or_else(|| anyhow!("u-range must be a:b"))?;
            let lo = parse_rational(lo)?;
            let hi = parse_rational(hi)?;
            let mut grids = ChartGrids::uniform(&lo, &hi, u_samples);
            match charts.as_str() {
                "both" => {}
                "1" => grids.chart2.clear(),
                "2" => grids.chart1.clear(),
                other => bail!("unknown charts selection {other}"),
            }
            let res = trace_contour(&poly, &grids, cli.precision_bits)
                .map_err(|e| anyhow!("{e}"))?;
            let mut csv = String::from("chart,u,re_z1,im_z1,re_z2,im_z2,x1,x2\n");
            for s in &res.samples {
                let (r1, i1) = s.z1.mid_f64();
                let (r2, i2) = s.z2.mid_f64();
                csv.push_str(&format!(
                    "{},{},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e}\n",
                    s.chart,
                    s.u,
                    r1,
                    i1,
                    r2,
                    i2,
                    s.x1.mid_f64(),
                    s.x2.mid_f64()
                ));
            }
            std::fs::write(&out, csv.as_bytes())
                .with_context(|| format!("writing {}", out.display()))?;
            for w in &res.warnings {
                eprintln!("warning: {w}");
            }
            let report = Report {
                tool: "amoeba-stab",
                version: env!("CARGO_PKG_VERSION"),
                command: "contour".into(),
                input_sha256: digest,
                options: serde_json::json!({
                    "u_range": format!("{lo}:{hi}"),
                    "u_samples": u_samples,
                    "charts": charts,
                    "precision_bits": cli.precision_bits,
                }),
                result: serde_json::json!({
                    "samples": res.samples.len(),
                    "warnings": res.warnings,
                    "out": out.display().to_string(),
                }),
            };
            let text = format!(
                "{} contour samples ({} warnings) -> {}",
                res.samples.len(),
                res.warnings.len(),
                out.display()
            );
            emit(cli.format, &report, &text, None)?;
            Ok(0)
        }
        Command::Ronkin { input, point, method, grid, k, out } => {
            let (poly, digest) = load_input(&input)?;
            let x = parse_point(&point, poly.nvars())?;
            let est = match method.as_str() {
                "quad" => ronkin_quadrature(&poly, &x, grid, cli.seed),
                "doubling" => ronkin_via_doubling(&poly, &x, k, &DoublingLimits::default())
                    .map_err(|e| anyhow!("{e}"))?,
                other => bail!("unknown method {other} (use quad or doubling)"),
            };
            let result = serde_json::json!({
                "value": est.value,
                "error": est.error,
                "method": match est.method {
                    amoeba_core::ronkin::RonkinMethod::Quadrature { grid_per_dim } =>
                        serde_json::json!({"quadrature": {"grid_per_dim": grid_per_dim}}),
                    amoeba_core::ronkin::RonkinMethod::Doubling { k } =>
                        serde_json::json!({"doubling": {"k": k}}),
                },
                "exact_argument": est.exact_argument.as_ref().map(|v| v.to_string()),
                "certified": est.certified.as_ref().map(|c| vec![c.lo_f64(), c.hi_f64()]),
                "jittered_nodes": est.jittered_nodes,
            });
            let text = format!("R_F({point}) ~ {:.9} (error {:.3e})", est.value, est.error);
            let report = Report {
                tool: "amoeba-stab",
                version: env!("CARGO_PKG_VERSION"),
                command: "ronkin".into(),
                input_sha256: digest,
                options: serde_json::json!({
                    "point": point, "method": method, "grid": grid, "k": k, "seed": cli.seed,
                }),
                result,
            };
            emit(cli.format, &report, &text, out.as_ref())?;
            Ok(0)
        }
        Command::Raster { input, bbox, res, grid, out } => {
            let (poly, digest) = load_input(&input)?;
            let (x_part, y_part) = bbox
                .split_once(',')
                .ok_or_else(|| anyhow!("bbox must be x1min:x1max,x2min:x2max"))?;
            let parse_range = |s: &str| -> Result<(f64, f64)> {
                let (a, b) = s.split_once(':').ok_or_else(|| anyhow!("bad range {s}"))?;
                Ok((
                    a.trim().parse::<f64>().map_err(|_| anyhow!("bad number {a}"))?,
                    b.trim().parse::<f64>().map_err(|_| anyhow!("bad number {b}"))?,
                ))
            };
            let (x1min, x1max) = parse_range(x_part)?;
            let (x2min, x2max) = parse_range(y_part)?;
            let raster =
                laplacian_raster(&poly, (x1min, x1max, x2min, x2max), res, grid, cli.seed);
            let (min, max) = raster
                .values
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                    (lo.min(*v), hi.max(*v))
                });
            let scale = if max > min { 255.0 / (max - min) } else { 0.0 };
            let mut pgm = format!("P2\n{} {}\n255\n", raster.width, raster.height);
            for row in 0..raster.height {
                let line: Vec<String> = (0..raster.width)
                    .map(|col| {
                        let v = raster.at(row, col);
                        let px = ((v - min) * scale).round().clamp(0.0, 255.0) as u32;
                        px.to_string()
                    })
                    .collect();
                pgm.push_str(&line.join(" "));
                pgm.push('\n');
            }
            std::fs::write(&out, pgm.as_bytes())
                .with_context(|| format!("writing {}", out.display()))?;
            let sidecar = serde_json::json!({
                "min": min,
                "max": max,
                "scale": scale,
                "offset": min,
                "bbox": [x1min, x1max, x2min, x2max],
                "resolution": res,
                "grid_per_dim": grid,
            });
            let sidecar_path = out.with_extension("pgm.json");
            std::fs::write(&sidecar_path, serde_json::to_string_pretty(&sidecar)?)
                .with_context(|| format!("writing {}", sidecar_path.display()))?;
            let report = Report {
                tool: "amoeba-stab",
                version: env!("CARGO_PKG_VERSION"),
                command: "raster".into(),
                input_sha256: digest,
                options: serde_json::json!({
                    "bbox": bbox, "res": res, "grid": grid, "seed": cli.seed,
                }),
                result: sidecar,
            };
            let text = format!(
                "raster {}x{} -> {} (sidecar {})",
                raster.width,
                raster.height,
                out.display(),
                sidecar_path.display()
            );
            emit(cli.format, &report, &text, None)?;
            Ok(0)
        }
        Command::Oracle { which } => match which {
            OracleCommand::Member { input, point, resolution } => {
                let (poly, digest) = load_input(&input)?;
                let x = parse_point(&point, poly.nvars())?;
                let m = amoeba_membership_fiber(&poly, &x, resolution);
                let (verdict, payload) = match &m {
                    FiberMembership::Member(w) => (
                        "Member",
                        serde_json::json!({
                            "witness": w.z.iter().map(|z| {
                                let (re, im) = z.mid_f64();
                                vec![re, im]
                            }).collect::<Vec<_>>(),
                            "residual": [w.residual.lo_f64(), w.residual.hi_f64()],
                        }),
                    ),
                    FiberMembership::NonMember { lower_bound } => (
                        "NonMember",
                        serde_json::json!({ "lower_bound": lower_bound }),
                    ),
                    FiberMembership::Undetermined => ("Undetermined", serde_json::json!({})),
                };
                let report = Report {
                    tool: "amoeba-stab",
                    version: env!("CARGO_PKG_VERSION"),
                    command: "oracle member".into(),
                    input_sha256: digest,
                    options: serde_json::json!({ "point": point, "resolution": resolution }),
                    result: serde_json::json!({ "verdict": verdict, "detail": payload }),
                };
                emit(cli.format, &report, &format!("membership: {verdict}"), None)?;
                Ok(0)
            }
            OracleCommand::Shanks2d { input } => {
                let (poly, digest) = load_input(&input)?;
                let stable = shanks_oracle_2d(&poly).map_err(|e| anyhow!("{e}"))?;
                let report = Report {
                    tool: "amoeba-stab",
                    version: env!("CARGO_PKG_VERSION"),
                    command: "oracle shanks2d".into(),
                    input_sha256: digest,
                    options: serde_json::json!({}),
                    result: serde_json::json!({ "bidisk_nonvanishing": stable }),
                };
                emit(
                    cli.format,
                    &report,
                    &format!("bidisk nonvanishing: {stable}"),
                    None,
                )?;
                Ok(0)
            }
            OracleCommand::Polydisk { input, grid } => {
                let (poly, digest) = load_input(&input)?;
                let out = polydisk_nonvanishing_sample(&poly, grid, cli.seed);
                let result = match &out {
                    PolydiskSample::NoZeroFound { min_modulus } => serde_json::json!({
                        "verdict": "NoZeroFound", "min_modulus": min_modulus,
                        "note": "heuristic sampling, not a proof",
                    }),
                    PolydiskSample::ZeroFound { witness, residual } => serde_json::json!({
                        "verdict": "ZeroFound", "witness": witness, "residual": residual,
                        "note": "heuristic sampling, not a proof",
                    }),
                };
                let text = serde_json::to_string(&result)?;
                let report = Report {
                    tool: "amoeba-stab",
                    version: env!("CARGO_PKG_VERSION"),
                    command: "oracle polydisk".into(),
                    input_sha256: digest,
                    options: serde_json::json!({ "grid": grid, "seed": cli.seed }),
                    result,
                };
                emit(cli.format, &report, &text, None)?;
                Ok(0)
            }
        },
    }
}
