use std::path::Path;

use cstar_core::fixture::{Fixture, GroundTruth};
use cstar_core::ideals::{generate_right_ideal, is_maximal_right_ideal, projection_generator};
use cstar_core::planted::{planted_algebra, planted_tro, AlgebraBlock, TroBlock};
use cstar_core::selftest::{run_selftest, SelftestConfig};
use cstar_core::structure::{socle_with, unit_partition_with, verify_dales_zelazko, wedderburn_decompose};
use cstar_core::tro::classify_tro;
use cstar_core::{Error, Tolerances};
use serde::Serialize;
use serde_json::{json, Value};

use crate::{GlobalArgs, Kind, RandomArgs};

#[derive(Debug)]
pub enum CliError {
    Input(String),
}

/// A report body and, when an invariant failed, its name.
pub struct Envelope {
    pub body: Value,
    pub failure: Option<String>,
}

/// What a command computed: a result, or a named invariant violation.
struct Computed {
    result: Value,
    failure: Option<(String, String)>,
}

impl Computed {
    fn ok(result: impl Serialize) -> Computed {
        Computed {
            result: to_value(result),
            failure: None,
        }
    }

    fn fail_if(mut self, failed: bool, invariant: &str, detail: impl Into<String>) -> Computed {
        if failed && self.failure.is_none() {
            self.failure = Some((invariant.to_string(), detail.into()));
        }
        self
    }
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

fn tolerances(g: &GlobalArgs) -> Result<Tolerances, CliError> {
    let mut tol = Tolerances::default();
    for (name, value, slot) in [
        ("--tol-member", g.tol_member, &mut tol.member),
        ("--tol-spec", g.tol_spec, &mut tol.spec),
    ] {
        if let Some(v) = value {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::Input(format!("{name} must be a positive number, got {v}")));
            }
            *slot = v;
        }
    }
    Ok(tol)
}

fn load(path: &Path) -> Result<Fixture, CliError> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    Fixture::from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Wrap a computation: math failures become exit-2 reports, anything else
/// is an input error.
fn envelope(
    command: &str,
    g: &GlobalArgs,
    tol: &Tolerances,
    computed: Result<Computed, Error>,
) -> Result<Envelope, CliError> {
    let computed = match computed {
        Ok(c) => c,
        Err(e) if e.is_verification_failure() => {
            let (invariant, detail) = match &e {
                Error::Verification { invariant, detail } => (invariant.clone(), detail.clone()),
                other => (other.to_string(), String::new()),
            };
            Computed {
                result: Value::Null,
                failure: Some((invariant, detail)),
            }
        }
        Err(e) => return Err(CliError::Input(e.to_string())),
    };
    let mut body = json!({
        "command": command,
        "status": if computed.failure.is_some() { "verification_failure" } else { "ok" },
        "seed": g.seed,
        "tolerances": tol,
    });
    if let Some((invariant, detail)) = &computed.failure {
        body["failure"] = json!({ "invariant": invariant, "detail": detail });
    }
    body["result"] = computed.result;
    Ok(Envelope {
        body,
        failure: computed.failure.map(|f| f.0),
    })
}

pub fn decompose(g: &GlobalArgs, input: &Path) -> Result<Envelope, CliError> {
    let tol = tolerances(g)?;
    let fixture = load(input)?;
    let computed = (|| {
        let a = fixture.build_algebra(tol)?;
        let d = wedderburn_decompose(&a, g.seed)?;
        let socle = socle_with(&a, &d)?;
        let partition = unit_partition_with(&a, &d)?;
        let mut result = json!({
            "ambient": a.ambient_dim(),
            "dim": a.dim(),
            "block_sizes": d.block_sizes,
            "multiplicities": d.multiplicities,
            "seed_used": d.seed_used,
            "residuals": d.residuals,
            "socle_dim": socle.dim(),
            "unit_partition_residual": partition.residual,
            "central_projections": d.central_projections,
        });
        let mut recovered = true;
        if let Some(GroundTruth::Algebra { blocks }) = &fixture.ground_truth {
            let found: Vec<AlgebraBlock> = d
                .blocks()
                .into_iter()
                .map(|(size, multiplicity)| AlgebraBlock { size, multiplicity })
                .collect();
            recovered = &found == blocks;
            result["ground_truth"] = json!({ "blocks": blocks, "recovered": recovered });
        }
        Ok(Computed::ok(result).fail_if(
            !recovered,
            "planted blocks recovered",
            format!("found {:?}", d.blocks()),
        ))
    })();
    envelope("decompose", g, &tol, computed)
}

pub fn ideal(g: &GlobalArgs, input: &Path) -> Result<Envelope, CliError> {
    let tol = tolerances(g)?;
    let fixture = load(input)?;
    let gens = fixture
        .ideal_generators
        .clone()
        .ok_or_else(|| CliError::Input("fixture has no ideal_generators".into()))?;
    let computed = (|| {
        let a = fixture.build_algebra(tol)?;
        let j = generate_right_ideal(&a, &gens)?;
        let certificate = projection_generator(&a, &j)?;
        let proper = a.unit().is_some() && j.dim() < a.dim();
        let maximal = if proper {
            Some(is_maximal_right_ideal(&a, &j)?)
        } else {
            None
        };
        Ok(Computed::ok(json!({
            "ambient": a.ambient_dim(),
            "algebra_dim": a.dim(),
            "ideal_dim": j.dim(),
            "maximal": maximal,
            "certificate": certificate,
        })))
    })();
    envelope("ideal", g, &tol, computed)
}

pub fn tro_classify(g: &GlobalArgs, input: &Path) -> Result<Envelope, CliError> {
    let tol = tolerances(g)?;
    let fixture = load(input)?;
    let computed = (|| {
        let z = fixture.build_tro(tol)?;
        let c = classify_tro(&z, g.seed)?;
        let mut result = json!({
            "ambient": [z.rows(), z.cols()],
            "dim": z.dim(),
            "left_dim": z.left_algebra().dim(),
            "right_dim": z.right_algebra().dim(),
            "blocks": c.blocks,
            "multiplicities": c.multiplicities,
            "dims": c.dims,
            "residuals": c.residuals,
            "block_isometries": c.block_isometries,
        });
        let mut recovered = true;
        if let Some(GroundTruth::Tro { blocks }) = &fixture.ground_truth {
            let found: Vec<TroBlock> = c
                .blocks
                .iter()
                .zip(&c.multiplicities)
                .map(|(&(rows, cols), &multiplicity)| TroBlock {
                    rows,
                    cols,
                    multiplicity,
                })
                .collect();
            recovered = &found == blocks;
            result["ground_truth"] = json!({ "blocks": blocks, "recovered": recovered });
        }
        Ok(Computed::ok(result).fail_if(
            !recovered,
            "planted blocks recovered",
            format!("found {:?} with multiplicities {:?}", c.blocks, c.multiplicities),
        ))
    })();
    envelope("tro-classify", g, &tol, computed)
}

pub fn verify_dz(g: &GlobalArgs, input: &Path, trials: usize) -> Result<Envelope, CliError> {
    let tol = tolerances(g)?;
    let fixture = load(input)?;
    let computed = (|| {
        let a = fixture.build_algebra(tol)?;
        let report = verify_dales_zelazko(&a, trials, g.seed)?;
        let passed = report.passed;
        Ok(Computed::ok(report).fail_if(
            !passed,
            "every sampled maximal right ideal is (1 - e)A with e minimal",
            "see trials",
        ))
    })();
    envelope("verify-dz", g, &tol, computed)
}

pub fn selftest(g: &GlobalArgs) -> Result<Envelope, CliError> {
    let tol = tolerances(g)?;
    let mut config = SelftestConfig::new(g.seed);
    config.tol = tol;
    let report = run_selftest(&config);
    let failed: Vec<_> = report
        .suites
        .iter()
        .filter(|s| !s.failures.is_empty())
        .map(|s| s.name.clone())
        .collect();
    let computed = Computed::ok(&report).fail_if(
        !report.passed,
        "selftest suites pass",
        failed.join(", "),
    );
    envelope("selftest", g, &tol, Ok(computed))
}

pub fn random(g: &GlobalArgs, args: &RandomArgs) -> Result<Envelope, CliError> {
    let bad = |msg: String| CliError::Input(msg);
    let mult = if args.mult.is_empty() {
        vec![1; args.blocks.len()]
    } else if args.mult.len() == args.blocks.len() {
        args.mult.clone()
    } else {
        return Err(bad(format!(
            "--mult has {} entries for {} blocks",
            args.mult.len(),
            args.blocks.len()
        )));
    };
    let fixture = match args.kind {
        Kind::Algebra => {
            let blocks = args
                .blocks
                .iter()
                .zip(&mult)
                .map(|(b, &multiplicity)| {
                    let size = b
                        .trim()
                        .parse()
                        .map_err(|_| bad(format!("block size {b:?} is not an integer")))?;
                    Ok(AlgebraBlock { size, multiplicity })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let p = planted_algebra(&blocks, args.pad, g.seed).map_err(|e| bad(e.to_string()))?;
            Fixture::from_planted_algebra(&p)
        }
        Kind::Tro => {
            if args.pad != 0 {
                return Err(bad("--pad applies to algebras only".into()));
            }
            let blocks = args
                .blocks
                .iter()
                .zip(&mult)
                .map(|(b, &multiplicity)| {
                    let parsed = b
                        .trim()
                        .split_once(['x', 'X'])
                        .and_then(|(r, c)| Some((r.parse().ok()?, c.parse().ok()?)));
                    let (rows, cols) =
                        parsed.ok_or_else(|| bad(format!("block shape {b:?} is not ROWSxCOLS")))?;
                    Ok(TroBlock {
                        rows,
                        cols,
                        multiplicity,
                    })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let p = planted_tro(&blocks, g.seed).map_err(|e| bad(e.to_string()))?;
            Fixture::from_planted_tro(&p)
        }
    };
    Ok(Envelope {
        body: to_value(&fixture),
        failure: None,
    })
}
