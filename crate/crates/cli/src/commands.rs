//! Implementations of the subcommands, each producing a [`Report`].

use anyhow::{anyhow, bail, Result};
use serde_json::{Map, Value};

use conelab::conditions;
use conelab::farkas;
use conelab::gale::GaleInstance;
use conelab::perturb::Problem;
use conelab::rational::parse_rational;
use conelab::vector::Vector;

use crate::format::{parse_dense_vector, parse_set_point, parse_y_vector};
use crate::report::{
    condition_verdict_value, duality_report_value, extended_value, farkas_value, optimum_value,
    oracle_report_value, rational_value, separator_value, set_point_value, slice_report_value,
    vector_value, Report,
};

fn core_err(e: conelab::Error) -> anyhow::Error {
    anyhow::Error::new(e)
}

fn zero_z(problem: &Problem) -> Vector {
    Vector::zero(problem.z_space())
}

pub fn solve(problem: &Problem) -> Result<Report> {
    let primal = problem.primal_optimum(None, None).map_err(core_err)?;
    let dual = problem.dual_optimum(None, None).map_err(core_err)?;
    let mut fields = Map::new();
    fields.insert("primal".into(), optimum_value(&primal));
    fields.insert("dual".into(), optimum_value(&dual));
    Ok(Report::new("solve", fields))
}

pub fn gap(problem: &Problem, z: Option<&str>) -> Result<Report> {
    let z = match z {
        Some(text) => parse_dense_vector(text)?,
        None => zero_z(problem),
    };
    let report = farkas::strong_duality_primal(problem, &z).map_err(core_err)?;
    let mut fields = Map::new();
    fields.insert("z".into(), vector_value(&z));
    fields.insert("report".into(), duality_report_value(&report));
    Ok(Report::new("gap", fields))
}

pub fn farkas_cmd(
    problem: &Problem,
    z: Option<&str>,
    y: Option<&str>,
    alpha: &str,
) -> Result<Report> {
    let alpha = parse_rational(alpha).map_err(core_err)?;
    let mut fields = Map::new();
    fields.insert("alpha".into(), rational_value(&alpha));
    let verdict = match (z, y) {
        (Some(z_text), None) => {
            let z = parse_dense_vector(z_text)?;
            fields.insert("z".into(), vector_value(&z));
            farkas::farkas_primal(problem, &z, &alpha).map_err(core_err)?
        }
        (None, Some(y_text)) => {
            let y = parse_y_vector(problem, y_text)?;
            fields.insert("y".into(), vector_value(&y));
            farkas::farkas_dual(problem, &y, &alpha).map_err(core_err)?
        }
        _ => bail!("exactly one of --z and --y selects the alternative"),
    };
    fields.insert("verdict".into(), farkas_value(&verdict));
    Ok(Report::new("farkas", fields))
}

pub fn slice(problem: &Problem, z: Option<&str>, y: Option<&str>) -> Result<Report> {
    let mut fields = Map::new();
    let report = match (z, y) {
        (Some(z_text), None) => {
            let z = parse_dense_vector(z_text)?;
            fields.insert("z".into(), vector_value(&z));
            problem.slice_equal_h_n(&z).map_err(core_err)?
        }
        (None, Some(y_text)) => {
            let y = parse_y_vector(problem, y_text)?;
            fields.insert("y".into(), vector_value(&y));
            problem.slice_equal_k_m(&y).map_err(core_err)?
        }
        _ => bail!("exactly one of --z and --y selects the slice"),
    };
    fields.insert("report".into(), slice_report_value(&report));
    Ok(Report::new("slice", fields))
}

pub fn separate(problem: &Problem, point: &str, set: &str) -> Result<Report> {
    let mut fields = Map::new();
    let separator = match set {
        "n" => {
            let pt = parse_set_point(problem, point, false)?;
            fields.insert("point".into(), set_point_value(&pt));
            let sep = problem.separate_from_n(&pt).map_err(core_err)?;
            let verified = problem.verify_separator_n(&sep, &pt).map_err(core_err)?;
            fields.insert("verified".into(), Value::Bool(verified));
            sep
        }
        "m" => {
            let pt = parse_set_point(problem, point, true)?;
            fields.insert("point".into(), set_point_value(&pt));
            let sep = problem.separate_from_m(&pt).map_err(core_err)?;
            let verified = problem.verify_separator_m(&sep, &pt).map_err(core_err)?;
            fields.insert("verified".into(), Value::Bool(verified));
            sep
        }
        other => bail!("--set must be 'n' or 'm', found {other:?}"),
    };
    fields.insert("separator".into(), separator_value(&separator));
    Ok(Report::new("separate", fields))
}

pub fn check_d(problem: &Problem, seed: u64) -> Result<Report> {
    let verdict = conditions::check_condition_d(problem, seed).map_err(core_err)?;
    let mut fields = Map::new();
    fields.insert("seed".into(), Value::from(seed));
    fields.insert("condition_d".into(), condition_verdict_value(&verdict));
    Ok(Report::new("check-d", fields))
}

pub fn check_d_star(problem: &Problem, seed: u64) -> Result<Report> {
    let verdict = conditions::check_condition_d_star(problem, seed).map_err(core_err)?;
    let mut fields = Map::new();
    fields.insert("seed".into(), Value::from(seed));
    fields.insert("condition_d_star".into(), condition_verdict_value(&verdict));
    Ok(Report::new("check-dstar", fields))
}

pub fn core_conditions(problem: &Problem) -> Result<Report> {
    let dual = conditions::core_dual_condition(problem).map_err(core_err)?;
    let primal = conditions::core_primal_condition(problem).map_err(core_err)?;
    let mut fields = Map::new();
    let mut dual_map = Map::new();
    dual_map.insert("holds".into(), Value::Bool(dual.holds));
    if let Some(w) = &dual.witness {
        dual_map.insert("witness".into(), vector_value(w));
    }
    fields.insert("dual_core_condition".into(), Value::Object(dual_map));
    let mut primal_map = Map::new();
    primal_map.insert("holds".into(), Value::Bool(primal.holds));
    if let Some(x) = &primal.witness {
        primal_map.insert("witness".into(), vector_value(x));
    }
    fields.insert("primal_core_condition".into(), Value::Object(primal_map));
    Ok(Report::new("core-conditions", fields))
}

pub fn verify_52(problem: &Problem, seed: u64) -> Result<Report> {
    let report = conditions::verify_core_dual_sufficiency(problem, seed).map_err(core_err)?;
    let mut fields = Map::new();
    fields.insert("seed".into(), Value::from(seed));
    fields.insert("premise_core".into(), Value::Bool(report.premise_core));
    fields.insert("premise_bidual".into(), Value::Bool(report.premise_bidual));
    fields.insert(
        "conclusion_checked".into(),
        Value::Bool(report.conclusion_checked),
    );
    if let Some(w) = &report.core_witness {
        fields.insert("core_witness".into(), vector_value(w));
    }
    Ok(Report::new("verify-52", fields))
}

pub fn verify_53(problem: &Problem, seed: u64) -> Result<Report> {
    let report = conditions::verify_core_primal_sufficiency(problem, seed).map_err(core_err)?;
    let mut fields = Map::new();
    fields.insert("seed".into(), Value::from(seed));
    fields.insert("premise".into(), Value::Bool(report.premise));
    fields.insert(
        "conclusion_checked".into(),
        Value::Bool(report.conclusion_checked),
    );
    if let Some(x) = &report.core_witness {
        fields.insert("core_witness".into(), vector_value(x));
    }
    Ok(Report::new("verify-53", fields))
}

pub fn gale_cmd(alpha: &str, beta: &str, truncate: Option<usize>, seed: u64) -> Result<Report> {
    let alpha = parse_rational(alpha).map_err(core_err)?;
    let beta = parse_rational(beta).map_err(core_err)?;
    let instance = GaleInstance::new(alpha.clone(), beta.clone());
    let problem = instance.problem();
    let mut fields = Map::new();
    fields.insert("alpha".into(), rational_value(&alpha));
    fields.insert("beta".into(), rational_value(&beta));
    fields.insert("consistent".into(), Value::Bool(instance.consistent()));
    fields.insert(
        "values".into(),
        duality_report_value(&instance.values().map_err(core_err)?),
    );
    let verdict = conditions::check_condition_d(&problem, seed).map_err(core_err)?;
    fields.insert("condition_d".into(), condition_verdict_value(&verdict));
    if let Some(top) = truncate {
        if top == 0 {
            bail!("--truncate needs at least one sequence variable");
        }
        let mut rows = Vec::new();
        for n in 1..=top {
            let truncated = instance.truncate(n).map_err(core_err)?;
            let primal = truncated.val_primal().map_err(core_err)?;
            let dual = truncated.val_dual().map_err(core_err)?;
            let mut row = Map::new();
            row.insert("n".into(), Value::from(n));
            row.insert("primal".into(), extended_value(&primal));
            row.insert("dual".into(), extended_value(&dual));
            rows.push(Value::Object(row));
        }
        fields.insert("truncations".into(), Value::Array(rows));
    }
    Ok(Report::new("gale", fields))
}

pub fn oracle(problem: &Problem, seed: u64, rounds: usize) -> Result<Report> {
    if rounds == 0 {
        return Err(anyhow!("--rounds must be positive"));
    }
    let report = problem.oracle_check(seed, rounds).map_err(core_err)?;
    let mut fields = Map::new();
    fields.insert("seed".into(), Value::from(seed));
    fields.insert("report".into(), oracle_report_value(&report));
    Ok(Report::new("oracle", fields))
}
