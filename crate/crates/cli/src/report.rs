//! Report construction and rendering. The machine format is canonical JSON
//! (sorted keys, exact `"p/q"` scalars) so identical runs produce identical
//! bytes and re-parsing reproduces every verdict.

use serde_json::{json, Map, Value};

use conelab::conditions::{ConditionVerdict, Holds, Justification};
use conelab::farkas::{DualityReport, FarkasVerdict, Gap};
use conelab::perturb::{ExtendedValue, Optimum, OracleReport, Separator, SetPoint, SliceReport};
use conelab::rational::{render_rational, Rational};
use conelab::vector::Vector;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Human,
    Machine,
}

pub struct Report {
    pub command: &'static str,
    pub body: Value,
}

impl Report {
    pub fn new(command: &'static str, mut fields: Map<String, Value>) -> Report {
        fields.insert("command".into(), Value::String(command.into()));
        Report {
            command,
            body: Value::Object(fields),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Machine => {
                serde_json::to_string_pretty(&self.body).expect("serializable") + "\n"
            }
            Format::Human => {
                let mut out = format!("{}\n", self.command);
                render_human(&self.body, 1, &mut out);
                out
            }
        }
    }
}

fn render_human(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (key, val) in map {
                if key == "command" {
                    continue;
                }
                match val {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render_human(val, indent + 1, out);
                    }
                    Value::Array(items) if items.iter().any(Value::is_object) => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        for item in items {
                            out.push_str(&format!("{pad}  -\n"));
                            render_human(item, indent + 2, out);
                        }
                    }
                    other => {
                        out.push_str(&format!("{pad}{key}: {}\n", scalar_text(other)));
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar_text(other))),
    }
}

fn scalar_text(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar_text).collect();
            format!("({})", parts.join(", "))
        }
        other => other.to_string(),
    }
}

pub fn rational_value(r: &Rational) -> Value {
    Value::String(render_rational(r))
}

pub fn vector_value(v: &Vector) -> Value {
    match v {
        Vector::Dense(entries) => Value::Array(entries.iter().map(rational_value).collect()),
        Vector::FiniteSupport(map) => {
            let mut out = Map::new();
            for (i, value) in map {
                out.insert(i.to_string(), rational_value(value));
            }
            Value::Object(out)
        }
        Vector::AffineTail {
            at_zero,
            slope,
            intercept,
        } => json!({
            "at_zero": rational_value(at_zero),
            "slope": rational_value(slope),
            "intercept": rational_value(intercept),
        }),
    }
}

pub fn extended_value(v: &ExtendedValue) -> Value {
    match v {
        ExtendedValue::MinusInfinity => json!({"value": "-inf"}),
        ExtendedValue::PlusInfinity => json!({"value": "+inf"}),
        ExtendedValue::Finite { value, attained } => json!({
            "value": render_rational(value),
            "attained": attained,
        }),
    }
}

pub fn optimum_value(o: &Optimum) -> Value {
    let mut fields = extended_value(&o.value);
    if let (Value::Object(map), Some(witness)) = (&mut fields, &o.witness) {
        map.insert("witness".into(), vector_value(witness));
    }
    fields
}

pub fn set_point_value(pt: &SetPoint) -> Value {
    json!({
        "base": vector_value(&pt.base),
        "height": rational_value(&pt.height),
    })
}

pub fn gap_value(gap: &Gap) -> Value {
    match gap {
        Gap::Zero => json!({"kind": "zero"}),
        Gap::Positive(v) => json!({"kind": "positive", "amount": render_rational(v)}),
        Gap::Infinite => json!({"kind": "infinite"}),
    }
}

pub fn duality_report_value(report: &DualityReport) -> Value {
    json!({
        "primal": extended_value(&report.primal),
        "dual": extended_value(&report.dual),
        "gap": gap_value(&report.gap),
        "primal_attained": report.primal_attained,
        "dual_attained": report.dual_attained,
        "slice_condition": report.slice_condition,
        "primal_feasible": report.primal_feasible,
        "dual_feasible": report.dual_feasible,
    })
}

pub fn farkas_value(verdict: &FarkasVerdict) -> Value {
    let mut map = Map::new();
    map.insert("a_holds".into(), Value::Bool(verdict.a_holds));
    map.insert("b_holds".into(), Value::Bool(verdict.b_holds));
    map.insert("equivalent".into(), Value::Bool(verdict.equivalent));
    if let Some(w) = &verdict.certificate_a_fail {
        map.insert("certificate_a_fail".into(), vector_value(w));
    }
    if let Some(x) = &verdict.certificate_b {
        map.insert("certificate_b".into(), vector_value(x));
    }
    Value::Object(map)
}

pub fn slice_report_value(report: &SliceReport) -> Value {
    let mut map = Map::new();
    map.insert("equal".into(), Value::Bool(report.equal));
    if let Some(w) = &report.witness {
        map.insert("witness".into(), vector_value(w));
    }
    Value::Object(map)
}

pub fn separator_value(sep: &Separator) -> Value {
    json!({
        "functional": vector_value(&sep.functional),
        "beta": rational_value(&sep.beta),
        "gamma": rational_value(&sep.gamma),
    })
}

pub fn condition_verdict_value(verdict: &ConditionVerdict) -> Value {
    let mut map = Map::new();
    map.insert(
        "holds".into(),
        Value::String(
            match verdict.holds {
                Holds::True => "true",
                Holds::False => "false",
                Holds::Undetermined => "undetermined",
            }
            .into(),
        ),
    );
    map.insert(
        "justification".into(),
        Value::String(
            match verdict.justification {
                Justification::PolyhedralClosedness => "polyhedral-closedness",
                Justification::CoreCondition => "core-condition",
                Justification::AnalyticGale => "analytic-gale",
                Justification::SampledOnly => "sampled-only",
            }
            .into(),
        ),
    );
    if let Some(w) = &verdict.witness {
        map.insert("witness".into(), set_point_value(w));
    }
    Value::Object(map)
}

pub fn oracle_report_value(report: &OracleReport) -> Value {
    json!({
        "rounds": report.rounds,
        "optimal": report.optimal,
        "unbounded": report.unbounded,
        "infeasible": report.infeasible,
        "agreement": "exact",
    })
}
