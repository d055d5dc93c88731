//! Reading JSON inputs into validated domain values with typed errors.

use std::io::Read;

use curvejac::algebra::{parse_rational, rational_to_f64, Complex64, Rational};
use curvejac::clemens::{fixture_by_name, ClemensFixture, FIXTURE_NAMES};
use curvejac::incidence::CurveParam;
use curvejac::poly::{MultiPoly, UniPoly};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::CliError;

/// File contents, or standard input for `-`.
pub struct Sources<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

impl<'a> Sources<'a> {
    pub fn new(stdin: &'a mut dyn Read) -> Self {
        Sources {
            stdin,
            stdin_used: false,
        }
    }

    pub fn read(&mut self, path: &str) -> Result<String, CliError> {
        if path == "-" {
            if self.stdin_used {
                return Err(CliError::input("standard input can only be read once"));
            }
            self.stdin_used = true;
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| CliError::input(format!("cannot read standard input: {e}")))?;
            return Ok(s);
        }
        std::fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read {path}: {e}")))
    }
}

/// serde_json errors carry line and column; shape errors from validated
/// constructors come back typed instead.
fn parse<T: DeserializeOwned>(text: &str, what: &str, source: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::input(format!("{what} {source}: {e}")))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCurve {
    n: usize,
    d: usize,
    components: Vec<UniPoly>,
}

impl RawCurve {
    fn build(self) -> Result<CurveParam, CliError> {
        Ok(CurveParam::new(self.n, self.d, self.components)?)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    n: usize,
    #[serde(default)]
    d: Option<usize>,
    e: usize,
    f: MultiPoly,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFixture {
    #[serde(default)]
    name: Option<String>,
    d: usize,
    q: MultiPoly,
    l: MultiPoly,
    p: MultiPoly,
    c0: RawCurve,
    #[serde(default)]
    f0: Option<MultiPoly>,
}

/// Hypersurface and degree data of a problem file; `d` is checked against the curve.
pub struct ProblemInput {
    pub n: usize,
    pub d: Option<usize>,
    pub e: usize,
    pub f: MultiPoly,
}

pub fn parse_curve(text: &str, source: &str) -> Result<CurveParam, CliError> {
    parse::<RawCurve>(text, "curve", source)?.build()
}

pub fn parse_problem(text: &str, source: &str) -> Result<ProblemInput, CliError> {
    let r: RawProblem = parse(text, "problem", source)?;
    Ok(ProblemInput {
        n: r.n,
        d: r.d,
        e: r.e,
        f: r.f,
    })
}

pub fn parse_fixture(text: &str, source: &str) -> Result<ClemensFixture, CliError> {
    let r: RawFixture = parse(text, "fixture", source)?;
    let c0 = r.c0.build()?;
    if r.d != c0.degree_bound() {
        return Err(CliError::dimension(format!(
            "fixture d = {} but c0 has degree bound {}",
            r.d,
            c0.degree_bound()
        )));
    }
    let fx = ClemensFixture::new(r.name, r.q, r.l, r.p, c0)?;
    if r.f0.is_some_and(|f0| f0 != fx.f0) {
        return Err(CliError::input("invariant violated: f0 = l q + z4 p"));
    }
    Ok(fx)
}

pub fn shipped_fixture(name: &str) -> Result<ClemensFixture, CliError> {
    fixture_by_name(name)
        .ok_or_else(|| CliError::input(format!("unknown fixture {name:?}; known: {}", FIXTURE_NAMES.join(", "))))
}

/// Evaluation points: all rational, or at least one complex.
pub enum PointList {
    Exact(Vec<Rational>),
    Complex(Vec<Complex64>),
}

pub fn parse_points(list: &str) -> Result<PointList, CliError> {
    let items: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if items.iter().all(|s| !s.ends_with('i')) {
        let pts = items
            .iter()
            .map(|s| parse_rational(s).map_err(|e| CliError::input(format!("--points: {e}"))))
            .collect::<Result<_, _>>()?;
        return Ok(PointList::Exact(pts));
    }
    items
        .iter()
        .map(|s| parse_complex(s))
        .collect::<Result<_, _>>()
        .map(PointList::Complex)
}

/// `a`, `bi`, `a+bi`, `a-bi` with rational `a`, `b`; a bare `i` means `b = 1`.
pub fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    let bad = || CliError::input(format!("--points: invalid complex number {s:?}"));
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = s.strip_suffix('i') else {
        let re = parse_rational(&s).map_err(|_| bad())?;
        return Ok(Complex64::new(rational_to_f64(&re), 0.0));
    };
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .map(|(k, _)| k)
        .last();
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other.strip_prefix('+').unwrap_or(other),
    };
    let re = parse_rational(re).map_err(|_| bad())?;
    let im = parse_rational(im).map_err(|_| bad())?;
    Ok(Complex64::new(rational_to_f64(&re), rational_to_f64(&im)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(parse_complex("1/2-3i").unwrap(), Complex64::new(0.5, -3.0));
        assert_eq!(parse_complex("-2+i").unwrap(), Complex64::new(-2.0, 1.0));
        assert_eq!(parse_complex("3/4").unwrap(), Complex64::new(0.75, 0.0));
        assert!(parse_complex("1+xi").is_err());
    }

    #[test]
    fn point_lists() {
        assert!(matches!(parse_points("-1/2, 1, 2").unwrap(), PointList::Exact(p) if p.len() == 3));
        assert!(matches!(parse_points("i,-i,0").unwrap(), PointList::Complex(p) if p.len() == 3));
        assert!(parse_points("1/0").is_err());
    }

    #[test]
    fn fixture_errors_are_typed() {
        let mut v: serde_json::Value = serde_json::to_value(curvejac::clemens::fixture_a()).unwrap();
        v["d"] = 2.into();
        assert_eq!(
            parse_fixture(&v.to_string(), "-").unwrap_err().code,
            crate::EXIT_DIMENSION
        );
        let e = parse_fixture("{\"d\": 1,", "x.json").unwrap_err();
        assert_eq!(e.code, crate::EXIT_INPUT);
        assert!(e.message.contains("line 1"), "{}", e.message);
    }
}
