//! Byte-stable renderings of curves and reports.

use morse_entropy::{Curve, CurveKind, Error, Result};
use num_rational::Rational64;
use serde_json::{json, Map, Value};

/// `printf("%.{sig}g")`, with `-inf`, `inf` and `nan` spelled out.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x < 0.0 { "-inf".into() } else { "inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= sig as i32 {
        format!(
            "{}e{}{:02}",
            trim_zeros(mantissa),
            if exp < 0 { '-' } else { '+' },
            exp.abs()
        )
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn rational_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn column_name(kind: CurveKind) -> String {
    match kind {
        CurveKind::Epsilon => "epsilon".into(),
        CurveKind::Betti => "betti".into(),
        CurveKind::FiniteN(n) => format!("finite_n{n}"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveFormat {
    Csv,
    Json,
}

/// Renders curves sharing one grid as CSV (`c,<curves..>,log_p_bound`) or as
/// a JSON array of row objects with the same fields.
pub fn emit_curve(curves: &[Curve], log_p: f64, format: CurveFormat) -> Result<String> {
    let grid = curves.first().map(|c| c.grid.as_slice()).unwrap_or(&[]);
    if curves.iter().any(|c| c.grid.as_slice() != grid) {
        return Err(Error::InvalidInput("curves must share a grid".into()));
    }
    let names: Vec<String> = curves.iter().map(|c| column_name(c.kind)).collect();
    match format {
        CurveFormat::Csv => {
            let mut out = String::from("c");
            for name in &names {
                out.push(',');
                out.push_str(name);
            }
            out.push_str(",log_p_bound\n");
            for (i, &c) in grid.iter().enumerate() {
                out.push_str(&fmt_sig(rational_f64(c), 12));
                for curve in curves {
                    out.push(',');
                    out.push_str(&fmt_sig(curve.rates[i], 12));
                }
                out.push(',');
                out.push_str(&fmt_sig(log_p, 12));
                out.push('\n');
            }
            Ok(out)
        }
        CurveFormat::Json => {
            let rows: Vec<Value> = grid
                .iter()
                .enumerate()
                .map(|(i, &c)| {
                    let mut row = Map::new();
                    row.insert("c".into(), number(rational_f64(c)));
                    for (name, curve) in names.iter().zip(curves) {
                        row.insert(name.clone(), number(curve.rates[i]));
                    }
                    row.insert("log_p_bound".into(), number(log_p));
                    if curves.iter().any(|c| !c.converged[i]) {
                        row.insert("converged".into(), json!(false));
                    }
                    Value::Object(row)
                })
                .collect();
            let mut out = serde_json::to_string_pretty(&rows)?;
            out.push('\n');
            Ok(out)
        }
    }
}

/// Finite numbers as JSON numbers; infinities and NaN as `fmt_sig` strings.
pub fn number(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        json!(fmt_sig(x, 12))
    }
}
