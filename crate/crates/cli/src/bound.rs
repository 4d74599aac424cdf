//! Named closed-form values for the `bound` subcommand.

use divlab_core::counting::{
    binom, check_key4, codegree_constant_bound, fano_gamma2, l3_gamma3, min_f_abc, t0_gamma2,
    theorem_bounds, triangle_target, triple_diversity_bound, BoundSpec,
};
use divlab_core::{Error, Result};
use serde::Serialize;
use serde_json::{json, Value};

pub const NAMES: &[&str] = &[
    "binom",
    "fano-gamma2",
    "t0-gamma2",
    "l3-gamma3",
    "theorem",
    "gamma3-upper",
    "codegree-constant",
    "min-f-abc",
    "triangle-target",
    "key4",
];

pub struct Params {
    pub n: Option<u64>,
    pub k: Option<u64>,
    pub ell: Option<u32>,
    pub m: Option<u64>,
    pub m_source: Option<String>,
}

#[derive(Serialize)]
pub struct BoundRecord {
    pub bound_name: String,
    pub parameters: Value,
    /// Decimal string.
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extra: Option<Value>,
}

fn need<T: Copy>(x: Option<T>, flag: &str, name: &str) -> Result<T> {
    x.ok_or_else(|| Error::OutOfRange(format!("bound `{name}` needs --{flag}")))
}

pub fn evaluate(name: &str, p: Params) -> Result<BoundRecord> {
    let n = || need(p.n, "n", name).map(|x| x as i64);
    let k = || need(p.k, "k", name);
    let rec = |value: String, parameters: Value| BoundRecord {
        bound_name: name.to_string(),
        parameters,
        value,
        extra: None,
    };
    Ok(match name {
        "binom" => rec(
            binom(n()?, k()? as i64).to_string(),
            json!({"n": p.n, "k": p.k}),
        ),
        "fano-gamma2" => rec(
            fano_gamma2(n()?, k()? as i64).to_string(),
            json!({"n": p.n, "k": p.k}),
        ),
        "t0-gamma2" => rec(
            t0_gamma2(n()?, k()? as i64).to_string(),
            json!({"n": p.n, "k": p.k}),
        ),
        "l3-gamma3" => rec(
            l3_gamma3(n()?, k()? as i64).to_string(),
            json!({"n": p.n, "k": p.k}),
        ),
        "gamma3-upper" => rec(
            triple_diversity_bound(n()?, k()? as i64).to_string(),
            json!({"n": p.n, "k": p.k}),
        ),
        "theorem" => {
            let spec = BoundSpec {
                ell: need(p.ell, "ell", name)?,
                k: k()?,
                n: n()? as u64,
                m_value: need(p.m, "m", name)?,
                m_source: p
                    .m_source
                    .clone()
                    .unwrap_or_else(|| "caller-supplied".into()),
            };
            let b = theorem_bounds(&spec);
            BoundRecord {
                bound_name: name.to_string(),
                parameters: serde_json::to_value(&spec).expect("plain data"),
                value: b.main.to_string(),
                extra: Some(serde_json::to_value(&b).expect("plain data")),
            }
        }
        "codegree-constant" => {
            let ell = need(p.ell, "ell", name)?;
            rec(
                codegree_constant_bound(ell)?.to_string(),
                json!({"ell": ell}),
            )
        }
        "min-f-abc" => {
            let m = min_f_abc(k()?)?;
            BoundRecord {
                extra: Some(json!({"argmin": m.argmin})),
                ..rec(m.min.to_string(), json!({"k": p.k}))
            }
        }
        "triangle-target" => rec(triangle_target(k()?).to_string(), json!({"k": p.k})),
        "key4" => {
            let r = check_key4(k()?);
            BoundRecord {
                extra: Some(serde_json::to_value(&r).expect("plain data")),
                ..rec(r.holds.to_string(), json!({"k": p.k}))
            }
        }
        "list" => rec(NAMES.join(","), json!({})),
        other => {
            return Err(Error::OutOfRange(format!(
                "unknown bound `{other}`; expected one of {}",
                NAMES.join(", ")
            )))
        }
    })
}
