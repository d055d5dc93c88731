use std::io::Read;

use curvejac::algebra::{
    format_rational, rank_exact, rank_numeric, singular_values, Complex64, ComplexMatrix, Rational,
};
use curvejac::clemens::generic_points;
use curvejac::clemens::{render_matrix, verify_construction, ClemensFixture, VerifyConfig};
use curvejac::incidence::{
    expected_full_rank, jacobian_coefficient_form, jacobian_evaluation_form, lies_on, membership_checks,
    quintics_through_curve, sample_through_curve, CurveParam, IncidenceProblem, JacobianMatrix,
};
use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::input::{parse_curve, parse_fixture, parse_points, parse_problem, shipped_fixture, PointList, Sources};
use crate::{Cli, CliError, Command, FormArg, Format, RunConfig, EXIT_INPUT, EXIT_OK};

const MAX_COLS: usize = 12;

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    run: &'a RunConfig,
    #[serde(flatten)]
    body: T,
}

fn to_json<T: Serialize>(run: &RunConfig, body: T) -> String {
    serde_json::to_string_pretty(&Envelope { run, body }).expect("report serializes") + "\n"
}

fn run_header(run: &RunConfig) -> String {
    format!(
        "run: {} [{}] seed {} tol {} precision {}\n",
        run.command,
        run.inputs.join(", "),
        run.seed,
        run.tolerance,
        run.precision
    )
}

fn tolerance(s: &str) -> Result<f64, CliError> {
    match s.parse::<f64>() {
        Ok(t) if t.is_finite() && t >= 0.0 => Ok(t),
        _ => Err(CliError::input(format!(
            "--tol: expected a non-negative decimal, got {s:?}"
        ))),
    }
}

pub fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<(String, u8), CliError> {
    let g = &cli.global;
    let tol = tolerance(&g.tolerance)?;
    if g.precision > curvejac::poly::MAX_PRECISION {
        return Err(curvejac::Error::Precision(g.precision).into());
    }
    let mut run = RunConfig {
        command: String::new(),
        inputs: Vec::new(),
        output: g.out.clone(),
        seed: g.seed,
        tolerance: g.tolerance.clone(),
        precision: g.precision,
        sample_count: None,
        degree: None,
        form: None,
        points: None,
        format: g.format,
    };
    let mut sources = Sources::new(stdin);
    match &cli.command {
        Command::Fixture { name } => {
            let fx = shipped_fixture(name)?;
            Ok((
                serde_json::to_string_pretty(&fx).expect("fixture serializes") + "\n",
                EXIT_OK,
            ))
        }
        Command::Jacobian {
            problem,
            curve,
            fixture,
            form,
            points,
        } => {
            run.command = "jacobian".into();
            run.form = Some(*form);
            run.points = points.clone();
            let (prob, c) = match fixture {
                Some(name) => {
                    run.inputs.push(format!("fixture:{name}"));
                    let fx = shipped_fixture(name)?;
                    (IncidenceProblem::new(4, fx.d(), 5, fx.f0.clone())?, fx.c0)
                }
                None => {
                    let (Some(pp), Some(cp)) = (problem, curve) else {
                        return Err(CliError::input("jacobian needs --problem and --curve, or --fixture"));
                    };
                    run.inputs.extend([pp.clone(), cp.clone()]);
                    let input = parse_problem(&sources.read(pp)?, pp)?;
                    let c = parse_curve(&sources.read(cp)?, cp)?;
                    if input.d.is_some_and(|d| d != c.degree_bound()) {
                        return Err(CliError::dimension(format!(
                            "problem has d = {} but the curve has degree bound {}",
                            input.d.unwrap(),
                            c.degree_bound()
                        )));
                    }
                    (IncidenceProblem::new(input.n, c.degree_bound(), input.e, input.f)?, c)
                }
            };
            jacobian(&run, &prob, &c, *form, points.as_deref(), tol)
        }
        Command::Verify { input, fixture } => {
            run.command = "verify".into();
            let fx = load_fixture(&mut run, &mut sources, input, fixture)?;
            let cfg = VerifyConfig {
                seed: g.seed,
                tolerance: tol,
                precision: g.precision,
            };
            let report = verify_construction(&fx, &cfg);
            let code = if report.passed { EXIT_OK } else { EXIT_INPUT };
            let out = match g.format {
                Format::Json => to_json(&run, &report),
                Format::Text => run_header(&run) + &report.to_text(),
            };
            Ok((out, code))
        }
        Command::Through { input, fixture, degree } => {
            run.command = "through".into();
            run.degree = Some(*degree);
            let (c, fx) = load_curve(&mut run, &mut sources, input, fixture)?;
            through(&run, &c, *degree, fx.as_ref())
        }
        Command::Sample {
            input,
            fixture,
            degree,
            count,
        } => {
            run.command = "sample".into();
            run.degree = Some(*degree);
            run.sample_count = Some(*count);
            let (c, _) = load_curve(&mut run, &mut sources, input, fixture)?;
            sample(&run, &c, *degree, *count)
        }
    }
}

fn load_fixture(
    run: &mut RunConfig,
    sources: &mut Sources,
    input: &Option<String>,
    name: &Option<String>,
) -> Result<ClemensFixture, CliError> {
    match (input, name) {
        (_, Some(name)) => {
            run.inputs.push(format!("fixture:{name}"));
            shipped_fixture(name)
        }
        (Some(path), None) => {
            run.inputs.push(path.clone());
            parse_fixture(&sources.read(path)?, path)
        }
        (None, None) => Err(CliError::input("expected a fixture file, \"-\" or --fixture NAME")),
    }
}

fn load_curve(
    run: &mut RunConfig,
    sources: &mut Sources,
    input: &Option<String>,
    name: &Option<String>,
) -> Result<(CurveParam, Option<ClemensFixture>), CliError> {
    match (input, name) {
        (_, Some(name)) => {
            run.inputs.push(format!("fixture:{name}"));
            let fx = shipped_fixture(name)?;
            Ok((fx.c0.clone(), Some(fx)))
        }
        (Some(path), None) => {
            run.inputs.push(path.clone());
            Ok((parse_curve(&sources.read(path)?, path)?, None))
        }
        (None, None) => Err(CliError::input("expected a curve file, \"-\" or --fixture NAME")),
    }
}

#[derive(Serialize)]
struct JacobianReport<J: Serialize> {
    jacobian: J,
    rank: usize,
    rank_method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    singular_values: Option<Vec<f64>>,
    equations: usize,
    parameter_dim: usize,
    tangent_dim: usize,
    nondegenerate: bool,
    on_hypersurface: bool,
    formal: bool,
}

fn jacobian(
    run: &RunConfig,
    prob: &IncidenceProblem,
    c: &CurveParam,
    form: FormArg,
    points: Option<&str>,
    tol: f64,
) -> Result<(String, u8), CliError> {
    let on = lies_on(prob, c)?;
    let finish = |rank: usize, method, sv| {
        let params = prob.parameter_dim();
        (rank, method, sv, params - rank, rank == prob.num_equations())
    };
    let points = match (form, points) {
        (FormArg::Coeff, Some(_)) => return Err(CliError::input("--points only applies to --form eval")),
        (FormArg::Coeff, None) => None,
        (FormArg::Eval, Some(list)) => Some(parse_points(list)?),
        (FormArg::Eval, None) => Some(PointList::Exact(generic_points(prob.num_equations(), run.seed, &[]))),
    };
    match points {
        None | Some(PointList::Exact(_)) => {
            let j: JacobianMatrix<Rational> = match &points {
                Some(PointList::Exact(p)) => jacobian_evaluation_form(prob, c, p)?,
                _ => jacobian_coefficient_form(prob, c)?,
            };
            let (rank, method, sv, tangent_dim, nondegenerate) = finish(rank_exact(&j.matrix), "exact", None);
            let text = (run.format == Format::Text).then(|| {
                let mut t = run_header(run);
                t.push_str(&format!(
                    "{} form, {}x{}: rank {rank} ({method}), tangent dimension {tangent_dim}{}\n",
                    form_name(form),
                    j.rows(),
                    j.cols(),
                    if on {
                        ""
                    } else {
                        " (formal: curve not on the hypersurface)"
                    }
                ));
                if let Some(p) = &j.points {
                    t.push_str(&format!(
                        "points: {}\n",
                        p.iter().map(format_rational).collect::<Vec<_>>().join(", ")
                    ));
                }
                t.push_str(&render_matrix(&j.matrix, MAX_COLS));
                t
            });
            let report = JacobianReport {
                jacobian: &j,
                rank,
                rank_method: method,
                singular_values: sv,
                equations: prob.num_equations(),
                parameter_dim: prob.parameter_dim(),
                tangent_dim,
                nondegenerate,
                on_hypersurface: on,
                formal: !on,
            };
            Ok((text.unwrap_or_else(|| to_json(run, report)), EXIT_OK))
        }
        Some(PointList::Complex(p)) => {
            let j: JacobianMatrix<Complex64> = jacobian_evaluation_form(prob, c, &p)?;
            let sv = singular_values(&j.matrix)?;
            let (rank, method, sv, tangent_dim, nondegenerate) =
                finish(rank_numeric(&j.matrix, tol)?, "numeric", Some(sv));
            let text = (run.format == Format::Text).then(|| {
                let mut t = run_header(run);
                t.push_str(&format!(
                    "evaluation form, {}x{}: rank {rank} (numeric, tol {}), tangent dimension {tangent_dim}{}\n",
                    j.rows(),
                    j.cols(),
                    run.tolerance,
                    if on {
                        ""
                    } else {
                        " (formal: curve not on the hypersurface)"
                    }
                ));
                let digits = run.precision.min(6) as usize;
                t.push_str(&format!(
                    "singular values: {}\n",
                    sv.as_ref()
                        .unwrap()
                        .iter()
                        .map(|s| format!("{s:.digits$e}"))
                        .collect::<Vec<_>>()
                        .join(", ")
                ));
                t.push_str(&render_complex(&j.matrix, digits));
                t
            });
            let report = JacobianReport {
                jacobian: &j,
                rank,
                rank_method: method,
                singular_values: sv,
                equations: prob.num_equations(),
                parameter_dim: prob.parameter_dim(),
                tangent_dim,
                nondegenerate,
                on_hypersurface: on,
                formal: !on,
            };
            Ok((text.unwrap_or_else(|| to_json(run, report)), EXIT_OK))
        }
    }
}

fn form_name(form: FormArg) -> &'static str {
    match form {
        FormArg::Coeff => "coefficient",
        FormArg::Eval => "evaluation",
    }
}

fn render_complex(m: &ComplexMatrix, digits: usize) -> String {
    let shown = m.cols().min(MAX_COLS);
    let mut out = String::new();
    for i in 0..m.rows() {
        let cells: Vec<String> = m.row(i)[..shown]
            .iter()
            .map(|z| format!("{:.digits$}{:+.digits$}i", z.re, z.im))
            .collect();
        let tail = if m.cols() > shown {
            format!("  … (+{} cols)", m.cols() - shown)
        } else {
            String::new()
        };
        out.push_str(&format!("  [{}]{}\n", cells.join(" "), tail));
    }
    out
}

fn through(run: &RunConfig, c: &CurveParam, e: usize, fx: Option<&ClemensFixture>) -> Result<(String, u8), CliError> {
    let sys = quintics_through_curve(c.ambient_dim(), e, c)?;
    let basis = sys.basis_forms();
    let contains_f0 = fx
        .filter(|_| e == 5 && c.ambient_dim() == 4)
        .map(|fx| sys.contains(&fx.f0));
    let out = match run.format {
        Format::Json => to_json(
            run,
            json!({
                "curve": c,
                "degree": e,
                "monomial_count": sys.monomials.len(),
                "constraint_rank": sys.constraint_rank,
                "dimension": sys.dimension(),
                "basis": basis,
                "contains_f0": contains_f0,
            }),
        ),
        Format::Text => {
            let mut t = run_header(run);
            t.push_str(&format!(
                "degree-{e} forms through the curve: dimension {} = {} monomials - constraint rank {}\n",
                sys.dimension(),
                sys.monomials.len(),
                sys.constraint_rank
            ));
            if let Some(b) = contains_f0 {
                t.push_str(&format!("f0 in the system: {b}\n"));
            }
            for (k, f) in basis.iter().enumerate() {
                t.push_str(&format!("  b{k} = {f}\n"));
            }
            t
        }
    };
    Ok((out, EXIT_OK))
}

#[derive(Serialize)]
struct ExperimentRecord {
    draw: usize,
    draw_seed: u64,
    hash: String,
    rank: usize,
    tangent_dim: usize,
    full_rank: bool,
}

fn form_hash(f: &curvejac::poly::MultiPoly) -> String {
    let canonical = serde_json::to_string(f).expect("form serializes");
    Sha256::digest(canonical.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn sample(run: &RunConfig, c: &CurveParam, e: usize, count: usize) -> Result<(String, u8), CliError> {
    let membership = membership_checks(c);
    if !membership.passed() {
        return Err(CliError::input(format!(
            "curve fails membership checks: {}",
            serde_json::to_string(&membership).expect("report serializes")
        )));
    }
    let sys = quintics_through_curve(c.ambient_dim(), e, c)?;
    if sys.dimension() == 0 {
        return Err(curvejac::Error::EmptyBasis.into());
    }
    let expected = expected_full_rank(c.ambient_dim(), c.degree_bound(), e);
    let records: Vec<ExperimentRecord> = sample_through_curve(&sys, c, count, run.seed)?
        .into_iter()
        .map(|s| ExperimentRecord {
            draw: s.draw,
            draw_seed: s.draw_seed,
            hash: form_hash(&s.form),
            rank: s.rank,
            tangent_dim: s.tangent_dim,
            full_rank: s.full_rank,
        })
        .collect();
    let full = records.iter().filter(|r| r.full_rank).count();
    let fraction = format!("{full}/{}", records.len());
    let out = match run.format {
        Format::Json => to_json(
            run,
            json!({
                "curve": c,
                "degree": e,
                "system_dimension": sys.dimension(),
                "expected_rank": expected,
                "records": records,
                "summary": { "full_rank": full, "count": records.len(), "fraction": fraction },
            }),
        ),
        Format::Text => {
            let mut t = run_header(run);
            t.push_str(&format!(
                "{count} draws from the {}-dimensional system of degree-{e} forms; full rank is {expected}\n",
                sys.dimension()
            ));
            t.push_str(&format!(
                "{:>5}  {:>20}  {:<16}  {:>4}  {:>7}  {}\n",
                "draw", "seed", "hash", "rank", "tangent", "full"
            ));
            for r in &records {
                t.push_str(&format!(
                    "{:>5}  {:>20}  {:<16}  {:>4}  {:>7}  {}\n",
                    r.draw,
                    r.draw_seed,
                    &r.hash[..16],
                    r.rank,
                    r.tangent_dim,
                    if r.full_rank { "yes" } else { "no" }
                ));
            }
            t.push_str(&format!("summary: {fraction} full rank\n"));
            t
        }
    };
    Ok((out, EXIT_OK))
}
