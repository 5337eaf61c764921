//! Command implementations. Each returns the parameters, the optional seed
//! and the results payload; [`dispatch`] wraps them into a [`RunReport`].

use std::path::Path;
use std::time::Instant;

use num_traits::Signed;
use quatgro::certifier::{certify_mu, certify_omega_p7, certify_omega_tau, Certificate};
use quatgro::gaussian::{gaussian_round, mc_grothendieck_identity, mc_sign_formula};
use quatgro::norms::{big_theta_lower, inf1_lower, theta_lower, NormEstimate};
use quatgro::sdp::{big_gamma_sdp, gamma_sdp, grothendieck_sdp};
use quatgro::series::constants::solve_constants;
use quatgro::series::continued::Truncation;
use quatgro::series::exact::{p_coeffs, p_ell_coeffs, revert_f64, revert_series};
use quatgro::series::{landmarks, ContinuedP, Jet};
use quatgro::{random, QuatMatrix, Quaternion, SelfAdjointQuatMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::{RunReport, Timings};
use crate::{CliError, Column, Command, McTest, NormKind, Output, Proposition};

type Payload = (Value, Option<u64>, Value);

pub fn dispatch(command: &Command, argv: Vec<String>) -> Result<Output, CliError> {
    let start = Instant::now();
    let (name, payload) = match command {
        Command::Norm {
            input,
            which,
            restarts,
            seed,
        } => ("norm", norm(input, *which, *restarts, *seed)?),
        Command::Constants => ("constants", constants()?),
        Command::Coefficients {
            ell,
            count,
            float,
            scaled,
            ..
        } => ("coefficients", coefficients(*ell, *count, *float, *scaled)?),
        Command::Continued { x, which, grid, m } => {
            let cp = ContinuedP::new(m.map_or(Truncation::Converged, Truncation::Fixed));
            if let Some(g) = grid {
                return Ok(Output::Csv(continued_grid(&cp, which, g)?));
            }
            let x = x.ok_or_else(|| CliError::Parse("either --x or --grid is required".into()))?;
            ("continued", continued_point(&cp, which, x, *m)?)
        }
        Command::Certify { prop, m } => {
            let (params, seed, results) = certify(*prop, *m)?;
            let report = make_report("certify", argv, (params, seed, results.clone()), start);
            if !results["all_verdicts"].as_bool().unwrap_or(false) {
                let message = results["first_failure"]
                    .as_str()
                    .unwrap_or("a verdict is false")
                    .to_string();
                return Err(CliError::Certification {
                    message,
                    report: Box::new(report),
                });
            }
            return Ok(Output::Report(report));
        }
        Command::Mc {
            test,
            samples,
            seed,
            z,
            n,
        } => ("mc", mc(*test, *samples, *seed, z, *n)?),
        Command::Round {
            input,
            samples,
            seed,
        } => ("round", round(input, *samples, *seed)?),
    };
    Ok(Output::Report(make_report(name, argv, payload, start)))
}

fn make_report(
    command: &str,
    invocation: Vec<String>,
    (parameters, seed, results): Payload,
    start: Instant,
) -> RunReport {
    RunReport {
        command: command.into(),
        invocation,
        parameters,
        seed,
        version: env!("CARGO_PKG_VERSION").into(),
        results,
        timings: Timings {
            total_s: start.elapsed().as_secs_f64(),
        },
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("result serializes")
}

/// Reads a matrix JSON file.
pub fn read_matrix(path: &Path) -> Result<QuatMatrix, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("malformed matrix JSON in {}: {e}", path.display())))
}

fn self_adjoint(m: QuatMatrix) -> Result<SelfAdjointQuatMatrix, CliError> {
    SelfAdjointQuatMatrix::new(m).map_err(|e| {
        CliError::Parse(format!(
            "{e}; theta and gamma norms need a self-adjoint matrix"
        ))
    })
}

fn sdp_block(value: f64, dual: f64, structure_residual: f64) -> Value {
    json!({ "value": value, "dual": dual, "gap": dual - value, "structure_residual": structure_residual })
}

fn norm(input: &Path, which: NormKind, restarts: usize, seed: u64) -> Result<Payload, CliError> {
    let m = read_matrix(input)?;
    let name = which_name(which);
    let params =
        json!({ "input": input.display().to_string(), "which": name, "restarts": restarts });
    // Ascent kinds pair the lower bound with the dual of the matching SDP.
    let ascent = |est: NormEstimate, dual: f64, sdp: Value| {
        let mut est = est;
        est.upper = Some(dual);
        json!({ "norm": name, "lower": est.lower, "upper": dual, "estimate": to_value(&est), "sdp": sdp })
    };
    let exact = |value: f64, dual: f64, sdp: Value| json!({ "norm": name, "lower": value, "upper": dual, "sdp": sdp });
    let results = match which {
        NormKind::Inf1 | NormKind::Grothendieck => {
            let s = grothendieck_sdp(&m)?;
            let sdp = sdp_block(s.value, s.upper, s.structure_residual);
            if which == NormKind::Inf1 {
                ascent(inf1_lower(&m, restarts, seed)?, s.upper, sdp)
            } else {
                exact(s.value, s.upper, sdp)
            }
        }
        NormKind::Theta | NormKind::BigTheta | NormKind::Gamma | NormKind::BigGamma => {
            let a = self_adjoint(m)?;
            let ball = matches!(which, NormKind::BigTheta | NormKind::BigGamma);
            let s = if ball {
                big_gamma_sdp(&a)?
            } else {
                gamma_sdp(&a)?
            };
            let sdp = sdp_block(s.value, s.upper, s.structure_residual);
            match which {
                NormKind::Theta => ascent(theta_lower(&a, restarts, seed)?, s.upper, sdp),
                NormKind::BigTheta => ascent(big_theta_lower(&a, restarts, seed)?, s.upper, sdp),
                _ => exact(s.value, s.upper, sdp),
            }
        }
    };
    let seed =
        matches!(which, NormKind::Inf1 | NormKind::Theta | NormKind::BigTheta).then_some(seed);
    Ok((params, seed, results))
}

fn which_name(k: NormKind) -> &'static str {
    match k {
        NormKind::Inf1 => "inf1",
        NormKind::Grothendieck => "grothendieck",
        NormKind::Theta => "theta",
        NormKind::BigTheta => "Theta",
        NormKind::Gamma => "gamma",
        NormKind::BigGamma => "Gamma",
    }
}

fn constants() -> Result<Payload, CliError> {
    let k = solve_constants()?;
    let lm = landmarks(&ContinuedP::default())?;
    Ok((
        json!({}),
        None,
        json!({ "constants": to_value(&k), "landmarks": to_value(&lm) }),
    ))
}

fn coefficients(ell: u32, count: usize, float: bool, scaled: bool) -> Result<Payload, CliError> {
    let method = if float { "float" } else { "exact" };
    let params = json!({ "ell": ell, "count": count, "method": method, "scaled": scaled });
    if ell < 2 {
        return Err(CliError::Parse(format!(
            "--ell must be at least 2, got {ell}"
        )));
    }
    if scaled && ell != 3 {
        return Err(CliError::Parse("--scaled needs --ell 3".into()));
    }
    let series = if scaled {
        p_coeffs(count)?
    } else {
        p_ell_coeffs(ell, count)?
    };
    // Exact coefficients are `rational · (32/(9π))^lambda_power`.
    let (values, exact) = if float {
        (revert_f64(&series.coeffs_f64(), count)?, None)
    } else {
        let inv = revert_series(&series, count)?;
        let powers: Vec<i64> = (0..count).map(|k| inv.scale_exponent(k)).collect();
        (inv.coeffs_f64(), Some((inv.rational, powers)))
    };
    let rationals = exact.as_ref().map(|(r, _)| r);
    let coeffs: Vec<Value> = values
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let mut c = json!({ "degree": 2 * k + 1, "value": v });
            if let Some((r, pw)) = &exact {
                c["rational"] = Value::String(r[k].to_string());
                c["lambda_power"] = json!(pw[k]);
            }
            c
        })
        .collect();
    // Signs come from the rationals when available.
    let signs: Vec<i32> = match rationals {
        Some(r) => r
            .iter()
            .map(|x| {
                if x.is_positive() {
                    1
                } else if x.is_negative() {
                    -1
                } else {
                    0
                }
            })
            .collect(),
        None => values
            .iter()
            .map(|v| {
                if *v > 0.0 {
                    1
                } else if *v < 0.0 {
                    -1
                } else {
                    0
                }
            })
            .collect(),
    };
    let rest = &signs[1..];
    let summary = json!({
        "first_positive": signs[0] > 0,
        "negative_after_first": rest.iter().filter(|&&s| s < 0).count(),
        "zero_after_first": rest.iter().filter(|&&s| s == 0).count(),
        "positive_after_first": rest.iter().filter(|&&s| s > 0).count(),
    });
    Ok((
        params,
        None,
        json!({ "coefficients": coeffs, "summary": summary }),
    ))
}

fn column_value(j: &Jet, c: Column) -> f64 {
    match c {
        Column::Psi1 => j.psi1,
        Column::Psi2 => j.psi2,
        Column::Theta => j.theta(),
        Column::AbsPPlus => j.abs_p_plus(),
        Column::Omega => j.omega(),
        Column::OmegaP7 => j.omega() * j.abs_p_plus().powi(7),
        Column::Mu => j.mu(),
    }
}

fn column_name(c: Column) -> &'static str {
    match c {
        Column::Psi1 => "psi1",
        Column::Psi2 => "psi2",
        Column::Theta => "theta",
        Column::AbsPPlus => "abs_p_plus",
        Column::Omega => "omega",
        Column::OmegaP7 => "omega_p7",
        Column::Mu => "mu",
    }
}

fn continued_point(
    cp: &ContinuedP,
    cols: &[Column],
    x: f64,
    m: Option<usize>,
) -> Result<Payload, CliError> {
    let j = cp.jet(x)?;
    let mut values = serde_json::Map::new();
    for &c in cols {
        values.insert(column_name(c).into(), json!(column_value(&j, c)));
    }
    let names: Vec<&str> = cols.iter().map(|&c| column_name(c)).collect();
    let params = json!({ "x": x, "which": names, "m": m });
    Ok((params, None, json!({ "x": x, "values": values })))
}

/// Parses `start:end:points` with `points ≥ 2`.
pub fn parse_grid(g: &str) -> Result<(f64, f64, usize), CliError> {
    let bad = || {
        CliError::Parse(format!(
            "grid must be start:end:points with points >= 2, got {g:?}"
        ))
    };
    let parts: Vec<&str> = g.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let a: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let b: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if n < 2 || !a.is_finite() || !b.is_finite() || a >= b {
        return Err(bad());
    }
    Ok((a, b, n))
}

fn continued_grid(cp: &ContinuedP, cols: &[Column], g: &str) -> Result<String, CliError> {
    let (a, b, n) = parse_grid(g)?;
    let mut out = String::from("x");
    for &c in cols {
        out += ",";
        out += column_name(c);
    }
    out += "\n";
    for i in 0..n {
        let x = a + (b - a) * i as f64 / (n - 1) as f64;
        let j = cp.jet(x)?;
        out += &x.to_string();
        for &c in cols {
            out += &format!(",{}", column_value(&j, c));
        }
        out += "\n";
    }
    Ok(out)
}

fn certify(prop: Proposition, m: Option<u32>) -> Result<Payload, CliError> {
    let props: &[Proposition] = match prop {
        Proposition::All => &[Proposition::OmegaTau, Proposition::OmegaP7, Proposition::Mu],
        Proposition::OmegaTau => &[Proposition::OmegaTau],
        Proposition::OmegaP7 => &[Proposition::OmegaP7],
        Proposition::Mu => &[Proposition::Mu],
    };
    let mut certs: Vec<Certificate> = vec![];
    for p in props {
        certs.push(match p {
            Proposition::OmegaTau => certify_omega_tau(m.unwrap_or(50))?,
            Proposition::OmegaP7 => certify_omega_p7(m.unwrap_or(50))?,
            _ => certify_mu(m.unwrap_or(40))?,
        });
    }
    let all = certs.iter().all(|c| c.verdict);
    let failure = certs
        .iter()
        .find_map(|c| c.first_failure().map(|f| format!("{}: {f}", c.proposition)));
    let log = certs
        .iter()
        .map(Certificate::log)
        .collect::<Vec<_>>()
        .join("\n");
    let name = match prop {
        Proposition::All => "all",
        Proposition::OmegaTau => "omega-tau",
        Proposition::OmegaP7 => "omega-p7",
        Proposition::Mu => "mu",
    };
    let params = json!({ "prop": name, "m": m });
    let results = json!({
        "all_verdicts": all,
        "verdicts": certs.iter().map(|c| json!({ "proposition": c.proposition, "m": c.m, "verdict": c.verdict })).collect::<Vec<_>>(),
        "first_failure": failure,
        "certificates": to_value(&certs),
        "log": log,
    });
    Ok((params, None, results))
}

/// Parses `a0,a1,a2,a3`.
pub fn parse_quaternion(s: &str) -> Result<Quaternion, CliError> {
    let parts: Result<Vec<f64>, _> = s.split(',').map(|t| t.trim().parse::<f64>()).collect();
    match parts {
        Ok(v) if v.len() == 4 => Ok(Quaternion::new(v[0], v[1], v[2], v[3])),
        _ => Err(CliError::Parse(format!(
            "quaternion must be a0,a1,a2,a3, got {s:?}"
        ))),
    }
}

fn mc(test: McTest, samples: usize, seed: u64, z: &str, n: usize) -> Result<Payload, CliError> {
    let (params, results) = match test {
        McTest::Sign => {
            let q = parse_quaternion(z)?;
            let e = mc_sign_formula(q, samples, seed)?;
            (
                json!({ "test": "sign", "samples": samples, "z": q }),
                json!({ "estimate": to_value(&e), "error": e.error() }),
            )
        }
        McTest::Identity => {
            if n == 0 {
                return Err(CliError::Parse("--n must be positive".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (u, v) = (
                random::unit_vector(&mut rng, n),
                random::unit_vector(&mut rng, n),
            );
            let e = mc_grothendieck_identity(&u, &v, samples, seed)?;
            let results = json!({ "u": u, "v": v, "estimate": to_value(&e), "error": e.error() });
            (
                json!({ "test": "identity", "samples": samples, "n": n }),
                results,
            )
        }
    };
    Ok((params, Some(seed), results))
}

fn round(input: &Path, samples: usize, seed: u64) -> Result<Payload, CliError> {
    let m = read_matrix(input)?;
    let s = grothendieck_sdp(&m)?;
    let (u, v) = s.vectors(m.rows())?;
    let r = gaussian_round(&u, &v, &m, samples, seed)?;
    let params = json!({ "input": input.display().to_string(), "samples": samples });
    let results = json!({
        "sdp": sdp_block(s.value, s.upper, s.structure_residual),
        "rounding": to_value(&r),
        "sdp_over_best": s.value / r.best_value,
    });
    Ok((params, Some(seed), results))
}
