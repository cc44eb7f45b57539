//! Parsing of interaction, datum and grid specifications.

use crate::CliError;
use pointgreen::evolution::DatumSpec;
use pointgreen::superoscillation::MAX_N;
use pointgreen::{Complex64, Mat2, UnitaryInteraction};
use serde_json::Value;

/// A parsed interaction together with the text it was resolved from.
#[derive(Debug, Clone)]
pub struct InteractionSpec {
    pub source: String,
    pub interaction: UnitaryInteraction,
}

fn invalid(field: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Validation(format!("invalid {field}: {msg}"))
}

fn finite(field: &str, name: &str, v: &str) -> Result<f64, CliError> {
    let x: f64 = v.trim().parse().map_err(|_| invalid(field, format!("{name}={v} is not a number")))?;
    if !x.is_finite() {
        return Err(invalid(field, format!("{name}={v} is not finite")));
    }
    Ok(x)
}

/// key=value pairs after the first ':'.
fn params<'a>(field: &str, body: &'a str, keys: &[&str]) -> Result<Vec<&'a str>, CliError> {
    let mut out = vec![None; keys.len()];
    for part in body.split(',').filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| invalid(field, format!("expected key=value, got '{part}'")))?;
        let idx = keys
            .iter()
            .position(|&key| key == k.trim())
            .ok_or_else(|| invalid(field, format!("unknown parameter '{}'", k.trim())))?;
        if out[idx].is_some() {
            return Err(invalid(field, format!("parameter '{k}' given twice")));
        }
        out[idx] = Some(v);
    }
    keys.iter()
        .zip(out)
        .map(|(k, v)| v.ok_or_else(|| invalid(field, format!("missing parameter '{k}'"))))
        .collect()
}

fn lib(field: &str) -> impl Fn(pointgreen::Error) -> CliError + '_ {
    move |e| invalid(field, e)
}

pub fn parse_interaction(s: &str) -> Result<InteractionSpec, CliError> {
    const F: &str = "--interaction";
    let (head, body) = s.split_once(':').unwrap_or((s, ""));
    let interaction = match head {
        "free" | "dirichlet" | "neumann" if !body.is_empty() => {
            return Err(invalid(F, format!("'{head}' takes no parameters")));
        }
        "free" => UnitaryInteraction::free(),
        "dirichlet" => UnitaryInteraction::dirichlet(),
        "neumann" => UnitaryInteraction::neumann(),
        "delta" => {
            let p = params(F, body, &["c"])?;
            UnitaryInteraction::delta(finite(F, "c", p[0])?).map_err(lib(F))?
        }
        "deltaprime" => {
            let p = params(F, body, &["c"])?;
            UnitaryInteraction::delta_prime(finite(F, "c", p[0])?).map_err(lib(F))?
        }
        "robin" => {
            let p = params(F, body, &["a", "b"])?;
            UnitaryInteraction::robin(finite(F, "a", p[0])?, finite(F, "b", p[1])?).map_err(lib(F))?
        }
        "json" => {
            let text = std::fs::read_to_string(body).map_err(|e| invalid(F, format!("cannot read '{body}': {e}")))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| invalid(F, format!("'{body}' is not JSON: {e}")))?;
            interaction_from_json(&v)?
        }
        _ => return Err(invalid(F, format!("unknown interaction '{head}'"))),
    };
    Ok(InteractionSpec { source: s.to_string(), interaction })
}

fn json_complex(v: &Value, what: &str) -> Result<Complex64, CliError> {
    const F: &str = "--interaction json";
    match v {
        Value::Number(n) => Ok(Complex64::new(n.as_f64().ok_or_else(|| invalid(F, format!("{what} is not a number")))?, 0.0)),
        Value::Array(a) if a.len() == 2 => {
            let re = a[0].as_f64().ok_or_else(|| invalid(F, format!("{what}[0] is not a number")))?;
            let im = a[1].as_f64().ok_or_else(|| invalid(F, format!("{what}[1] is not a number")))?;
            Ok(Complex64::new(re, im))
        }
        _ => Err(invalid(F, format!("{what} must be a number or [re, im]"))),
    }
}

/// {"phi": φ, "alpha": [re, im], "beta": [re, im]} or {"matrix": [[a, b], [c, d]]}
/// with complex entries written as [re, im].
pub fn interaction_from_json(v: &Value) -> Result<UnitaryInteraction, CliError> {
    const F: &str = "--interaction json";
    let obj = v.as_object().ok_or_else(|| invalid(F, "expected an object"))?;
    if let Some(m) = obj.get("matrix") {
        let rows = m.as_array().filter(|r| r.len() == 2).ok_or_else(|| invalid(F, "matrix must have two rows"))?;
        let mut e = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in rows.iter().enumerate() {
            let cols = row.as_array().filter(|c| c.len() == 2).ok_or_else(|| invalid(F, "matrix rows must have two entries"))?;
            for (j, c) in cols.iter().enumerate() {
                e[i][j] = json_complex(c, &format!("matrix[{i}][{j}]"))?;
            }
        }
        return UnitaryInteraction::from_matrix(&Mat2(e)).map_err(lib(F));
    }
    let get = |k: &str| obj.get(k).ok_or_else(|| invalid(F, format!("missing '{k}'")));
    let phi = get("phi")?.as_f64().ok_or_else(|| invalid(F, "phi is not a number"))?;
    let alpha = json_complex(get("alpha")?, "alpha")?;
    let beta = json_complex(get("beta")?, "beta")?;
    UnitaryInteraction::from_parameters(phi, alpha, beta).map_err(lib(F))
}

pub fn parse_datum(s: &str) -> Result<DatumSpec, CliError> {
    const F: &str = "--datum";
    let (head, body) = s.split_once(':').unwrap_or((s, ""));
    match head {
        "constant" if body.is_empty() => Ok(DatumSpec::Constant),
        "planewave" => {
            let p = params(F, body, &["k"])?;
            Ok(DatumSpec::PlaneWave { k: finite(F, "k", p[0])? })
        }
        "superosc" => {
            let p = params(F, body, &["n", "k"])?;
            let n: u32 = p[0].trim().parse().map_err(|_| invalid(F, format!("n={} is not a positive integer", p[0])))?;
            if n == 0 || n > MAX_N {
                return Err(invalid(F, format!("n={n} must lie in 1..={MAX_N}")));
            }
            let k = finite(F, "k", p[1])?;
            if k.abs() <= 1.0 {
                return Err(invalid(F, format!("k={k} must satisfy |k| > 1")));
            }
            Ok(DatumSpec::Superoscillation { n, k })
        }
        _ => Err(invalid(F, format!("unknown datum '{s}'"))),
    }
}

/// Comma-separated values; an item `a:b:n` expands to n equally spaced points.
pub fn parse_grid(field: &str, s: &str) -> Result<Vec<f64>, CliError> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [v] => out.push(finite(field, "value", v)?),
            [a, b, n] => {
                let (a, b) = (finite(field, "start", a)?, finite(field, "end", b)?);
                let n: usize = n.parse().map_err(|_| invalid(field, format!("'{n}' is not a point count")))?;
                match n {
                    0 => return Err(invalid(field, "a range needs at least one point")),
                    1 => out.push(a),
                    _ => out.extend((0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64)),
                }
            }
            _ => return Err(invalid(field, format!("cannot parse '{item}'"))),
        }
    }
    if out.is_empty() {
        return Err(invalid(field, "empty grid"));
    }
    Ok(out)
}

pub fn check_times(ts: &[f64]) -> Result<(), CliError> {
    match ts.iter().find(|&&t| t <= 0.0) {
        Some(t) => Err(invalid("--t", format!("time {t} must be positive"))),
        None => Ok(()),
    }
}

pub fn check_nonzero(field: &str, vs: &[f64]) -> Result<(), CliError> {
    if vs.iter().any(|&v| v == 0.0) {
        Err(invalid(field, "points must be nonzero"))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        assert!(parse_interaction("free").is_ok());
        assert!(parse_interaction("delta:c=-2").is_ok());
        assert!(parse_interaction("robin:a=1,b=-0.5").is_ok());
        assert!(parse_interaction("robin:a=1").is_err());
        assert!(parse_interaction("delta:c=0").is_err());
        assert!(parse_interaction("delta:q=1").is_err());
        assert!(parse_interaction("free:c=1").is_err());
        assert!(parse_interaction("wall").is_err());
    }

    #[test]
    fn json_forms() {
        let v: Value = serde_json::from_str(r#"{"matrix": [[0, 1], [1, 0]]}"#).unwrap();
        let u = interaction_from_json(&v).unwrap();
        assert!((u.matrix() - UnitaryInteraction::free().matrix()).max_norm() < 1e-12);
        let v: Value = serde_json::from_str(r#"{"phi": 0, "alpha": [-1, 0], "beta": [0, 0]}"#).unwrap();
        let u = interaction_from_json(&v).unwrap();
        assert!((u.matrix() - UnitaryInteraction::dirichlet().matrix()).max_norm() < 1e-12);
        let v: Value = serde_json::from_str(r#"{"phi": 0, "alpha": [2, 0], "beta": [0, 0]}"#).unwrap();
        assert!(interaction_from_json(&v).is_err());
    }

    #[test]
    fn grids() {
        assert_eq!(parse_grid("--t", "0.5, 1,2").unwrap(), vec![0.5, 1.0, 2.0]);
        assert_eq!(parse_grid("--x", "-1:1:3").unwrap(), vec![-1.0, 0.0, 1.0]);
        assert!(parse_grid("--t", "").is_err());
        assert!(parse_grid("--t", "a").is_err());
        assert!(check_times(&[1.0, 0.0]).is_err());
        assert!(check_nonzero("--x", &[-1.0, 0.0]).is_err());
    }

    #[test]
    fn datums() {
        assert_eq!(parse_datum("constant").unwrap(), DatumSpec::Constant);
        assert_eq!(parse_datum("planewave:k=2").unwrap(), DatumSpec::PlaneWave { k: 2.0 });
        assert_eq!(parse_datum("superosc:n=20,k=2").unwrap(), DatumSpec::Superoscillation { n: 20, k: 2.0 });
        assert!(parse_datum("superosc:n=0,k=2").is_err());
        assert!(parse_datum("superosc:n=10,k=0.5").is_err());
    }
}
