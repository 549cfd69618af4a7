//! The problem file format: a JSON document with every scalar written as an
//! exact `"p/q"` string. Unknown keys are rejected, parse errors carry line
//! and column, and `parse(render(p)) = p` holds bit-exactly.

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use conelab::cone::Cone;
use conelab::gale::GaleInstance;
use conelab::linmap::LinearMap;
use conelab::perturb::{Problem, ProblemKind};
use conelab::rational::{parse_rational, render_rational, Rational};
use conelab::space::Space;
use conelab::vector::Vector;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spaces: Option<SpacesRecord>,
    #[serde(rename = "A", skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<String>>,
    #[serde(rename = "P", skip_serializing_if = "Option::is_none")]
    pub p: Option<ConeRecord>,
    #[serde(rename = "Q", skip_serializing_if = "Option::is_none")]
    pub q: Option<ConeRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gale: Option<GaleRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SpacesRecord {
    pub x_dim: usize,
    pub z_dim: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ConeRecord {
    pub form: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<ConeRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GaleRecord {
    pub alpha: String,
    pub beta: String,
}

/// Parses a problem file, reporting syntax errors with their position and
/// validation errors with the offending field.
pub fn parse_problem(text: &str) -> Result<Problem> {
    let file: ProblemFile = match serde_json::from_str(text) {
        Ok(f) => f,
        Err(e) => bail!(
            "parse error at line {}, column {}: {}",
            e.line(),
            e.column(),
            e
        ),
    };
    build_problem(&file)
}

pub fn build_problem(file: &ProblemFile) -> Result<Problem> {
    match file.kind.as_str() {
        "finite" => {
            let spaces = file
                .spaces
                .as_ref()
                .ok_or_else(|| anyhow!("field 'spaces' is required for finite instances"))?;
            if spaces.x_dim == 0 || spaces.z_dim == 0 {
                bail!("field 'spaces': dimensions must be positive");
            }
            let a = file
                .a
                .as_ref()
                .ok_or_else(|| anyhow!("field 'A' is required for finite instances"))?;
            if a.len() != spaces.z_dim {
                bail!(
                    "field 'A': expected {} rows, found {}",
                    spaces.z_dim,
                    a.len()
                );
            }
            let mut rows = Vec::with_capacity(a.len());
            for (i, row) in a.iter().enumerate() {
                if row.len() != spaces.x_dim {
                    bail!(
                        "field 'A': row {i} has {} entries, expected {}",
                        row.len(),
                        spaces.x_dim
                    );
                }
                rows.push(parse_rationals(row).with_context(|| format!("field 'A', row {i}"))?);
            }
            let b_strings = file
                .b
                .as_ref()
                .ok_or_else(|| anyhow!("field 'b' is required for finite instances"))?;
            if b_strings.len() != spaces.z_dim {
                bail!(
                    "field 'b': expected {} entries, found {}",
                    spaces.z_dim,
                    b_strings.len()
                );
            }
            let b = Vector::dense(parse_rationals(b_strings).context("field 'b'")?);
            let c_strings = file
                .c
                .as_ref()
                .ok_or_else(|| anyhow!("field 'c' is required for finite instances"))?;
            if c_strings.len() != spaces.x_dim {
                bail!(
                    "field 'c': expected {} entries, found {}",
                    spaces.x_dim,
                    c_strings.len()
                );
            }
            let c = Vector::dense(parse_rationals(c_strings).context("field 'c'")?);
            let p_record = file
                .p
                .as_ref()
                .ok_or_else(|| anyhow!("field 'P' is required for finite instances"))?;
            let p = build_cone(p_record, spaces.x_dim).context("field 'P'")?;
            let q_record = file
                .q
                .as_ref()
                .ok_or_else(|| anyhow!("field 'Q' is required for finite instances"))?;
            let q = build_cone(q_record, spaces.z_dim).context("field 'Q'")?;
            if file.gale.is_some() {
                bail!("field 'gale' is not allowed on finite instances");
            }
            let map = LinearMap::matrix(rows).map_err(|e| anyhow!("field 'A': {e}"))?;
            Problem::finite(map, b, c, p, q).map_err(|e| anyhow!("{e}"))
        }
        "gale" => {
            let record = file
                .gale
                .as_ref()
                .ok_or_else(|| anyhow!("field 'gale' is required for gale instances"))?;
            for field in ["spaces", "A", "b", "c", "P", "Q"] {
                let present = match field {
                    "spaces" => file.spaces.is_some(),
                    "A" => file.a.is_some(),
                    "b" => file.b.is_some(),
                    "c" => file.c.is_some(),
                    "P" => file.p.is_some(),
                    _ => file.q.is_some(),
                };
                if present {
                    bail!("field '{field}' is not allowed on gale instances");
                }
            }
            let alpha =
                parse_rational(&record.alpha).map_err(|e| anyhow!("field 'gale.alpha': {e}"))?;
            let beta =
                parse_rational(&record.beta).map_err(|e| anyhow!("field 'gale.beta': {e}"))?;
            Ok(GaleInstance::new(alpha, beta).problem())
        }
        other => bail!("field 'kind': unknown kind {other:?}"),
    }
}

fn parse_rationals(strings: &[String]) -> Result<Vec<Rational>> {
    strings
        .iter()
        .map(|s| parse_rational(s).map_err(|e| anyhow!("{e}")))
        .collect()
}

fn build_cone(record: &ConeRecord, ambient_dim: usize) -> Result<Cone> {
    if let Some(dim) = record.dim {
        if dim != ambient_dim {
            bail!("cone dim {dim} disagrees with the ambient dimension {ambient_dim}");
        }
    }
    let no_data = || -> Result<()> {
        if record.data.is_some() {
            bail!("form {:?} takes no 'data'", record.form);
        }
        if record.components.is_some() {
            bail!("form {:?} takes no 'components'", record.form);
        }
        Ok(())
    };
    match record.form.as_str() {
        "orthant" => {
            no_data()?;
            Ok(Cone::orthant(ambient_dim))
        }
        "zero" => {
            no_data()?;
            Ok(Cone::zero(ambient_dim))
        }
        "full" => {
            no_data()?;
            Ok(Cone::full(ambient_dim))
        }
        "generators" | "inequalities" => {
            if record.components.is_some() {
                bail!("form {:?} takes no 'components'", record.form);
            }
            let data = record
                .data
                .as_ref()
                .ok_or_else(|| anyhow!("form {:?} requires 'data'", record.form))?;
            let mut vectors = Vec::with_capacity(data.len());
            for (i, row) in data.iter().enumerate() {
                if row.len() != ambient_dim {
                    bail!(
                        "data row {i} has {} entries, expected {ambient_dim}",
                        row.len()
                    );
                }
                vectors.push(Vector::dense(
                    parse_rationals(row).with_context(|| format!("data row {i}"))?,
                ));
            }
            if record.form == "generators" {
                Cone::generators(vectors, ambient_dim).map_err(|e| anyhow!("{e}"))
            } else {
                Cone::inequalities(vectors, ambient_dim).map_err(|e| anyhow!("{e}"))
            }
        }
        "product" => {
            if record.data.is_some() {
                bail!("form \"product\" takes no 'data'");
            }
            let components = record
                .components
                .as_ref()
                .ok_or_else(|| anyhow!("form \"product\" requires 'components'"))?;
            let mut cones = Vec::with_capacity(components.len());
            let mut used = 0usize;
            for (i, comp) in components.iter().enumerate() {
                let dim = component_dim(comp).with_context(|| format!("product component {i}"))?;
                cones
                    .push(build_cone(comp, dim).with_context(|| format!("product component {i}"))?);
                used += dim;
            }
            if used != ambient_dim {
                bail!("product components cover dimension {used}, expected {ambient_dim}");
            }
            Cone::product(cones).map_err(|e| anyhow!("{e}"))
        }
        other => bail!("unknown cone form {other:?}"),
    }
}

fn component_dim(record: &ConeRecord) -> Result<usize> {
    if let Some(dim) = record.dim {
        return Ok(dim);
    }
    if let Some(data) = &record.data {
        if let Some(first) = data.first() {
            return Ok(first.len());
        }
    }
    bail!("component needs an explicit 'dim' (or nonempty 'data')");
}

/// Renders a problem back into its file form. The output is canonical:
/// parsing it reproduces the same problem bit-exactly.
pub fn render_problem(problem: &Problem) -> Result<String> {
    let file = problem_to_file(problem)?;
    Ok(serde_json::to_string_pretty(&file).expect("serializable") + "\n")
}

pub fn problem_to_file(problem: &Problem) -> Result<ProblemFile> {
    match problem.kind() {
        ProblemKind::Gale(g) => Ok(ProblemFile {
            kind: "gale".into(),
            spaces: None,
            a: None,
            b: None,
            c: None,
            p: None,
            q: None,
            gale: Some(GaleRecord {
                alpha: render_rational(&g.alpha),
                beta: render_rational(&g.beta),
            }),
        }),
        ProblemKind::Finite => {
            let LinearMap::Matrix { rows } = problem.map() else {
                unreachable!("finite instances carry matrices");
            };
            let x_dim = rows[0].len();
            let z_dim = rows.len();
            Ok(ProblemFile {
                kind: "finite".into(),
                spaces: Some(SpacesRecord { x_dim, z_dim }),
                a: Some(
                    rows.iter()
                        .map(|r| r.iter().map(render_rational).collect())
                        .collect(),
                ),
                b: Some(render_entries(problem.b())?),
                c: Some(render_entries(problem.c())?),
                p: Some(cone_to_record(problem.p(), true)?),
                q: Some(cone_to_record(problem.q(), true)?),
                gale: None,
            })
        }
    }
}

fn render_entries(v: &Vector) -> Result<Vec<String>> {
    Ok(v.dense_entries()
        .map_err(|e| anyhow!("{e}"))?
        .iter()
        .map(render_rational)
        .collect())
}

fn cone_to_record(cone: &Cone, top_level: bool) -> Result<ConeRecord> {
    let dim = match cone.ambient() {
        Space::Dense(n) => n,
        other => bail!("cannot serialize a cone over {other}"),
    };
    let leaf_dim = if top_level { None } else { Some(dim) };
    Ok(match cone {
        Cone::Orthant(_) => ConeRecord {
            form: "orthant".into(),
            data: None,
            components: None,
            dim: leaf_dim,
        },
        Cone::Zero(_) => ConeRecord {
            form: "zero".into(),
            data: None,
            components: None,
            dim: leaf_dim,
        },
        Cone::Full(_) => ConeRecord {
            form: "full".into(),
            data: None,
            components: None,
            dim: leaf_dim,
        },
        Cone::Generators { gens, .. } => ConeRecord {
            form: "generators".into(),
            data: Some(
                gens.iter()
                    .map(render_entries)
                    .collect::<Result<Vec<_>>>()?,
            ),
            components: None,
            dim: None,
        },
        Cone::Inequalities { normals, .. } => ConeRecord {
            form: "inequalities".into(),
            data: Some(
                normals
                    .iter()
                    .map(render_entries)
                    .collect::<Result<Vec<_>>>()?,
            ),
            components: None,
            dim: None,
        },
        Cone::Product(components) => ConeRecord {
            form: "product".into(),
            data: None,
            components: Some(
                components
                    .iter()
                    .map(|c| cone_to_record(c, false))
                    .collect::<Result<Vec<_>>>()?,
            ),
            dim: None,
        },
    })
}

/// Parses a comma-separated list of rationals into a dense vector.
pub fn parse_dense_vector(text: &str) -> Result<Vector> {
    let entries: Result<Vec<Rational>> = text
        .split(',')
        .map(|s| parse_rational(s.trim()).map_err(|e| anyhow!("{e}")))
        .collect();
    Ok(Vector::dense(entries?))
}

/// Parses a perturbation of the dual-side space: dense entries for finite
/// instances, `index:value` pairs for the sequence family.
pub fn parse_y_vector(problem: &Problem, text: &str) -> Result<Vector> {
    match problem.kind() {
        ProblemKind::Finite => parse_dense_vector(text),
        ProblemKind::Gale(_) => parse_finite_support(text),
    }
}

pub fn parse_finite_support(text: &str) -> Result<Vector> {
    if text.trim().is_empty() {
        return Ok(Vector::finite_support([]));
    }
    let entries: Result<Vec<(usize, Rational)>> = text
        .split(',')
        .map(|pair| {
            let (idx, value) = pair
                .split_once(':')
                .ok_or_else(|| anyhow!("expected index:value, found {pair:?}"))?;
            let idx: usize = idx.trim().parse().context("support index")?;
            let value = parse_rational(value.trim()).map_err(|e| anyhow!("{e}"))?;
            Ok((idx, value))
        })
        .collect();
    Ok(Vector::finite_support(entries?))
}

/// Parses a set point written as `base ; height`, with the base in the
/// syntax of the surrounding space.
pub fn parse_set_point(
    problem: &Problem,
    text: &str,
    dual_side: bool,
) -> Result<conelab::perturb::SetPoint> {
    let (base_text, height_text) = text
        .split_once(';')
        .ok_or_else(|| anyhow!("expected base;height, found {text:?}"))?;
    let base = if dual_side {
        parse_y_vector(problem, base_text)?
    } else {
        parse_dense_vector(base_text)?
    };
    let height = parse_rational(height_text.trim()).map_err(|e| anyhow!("{e}"))?;
    Ok(conelab::perturb::SetPoint::new(base, height))
}
