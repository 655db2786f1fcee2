//! Text formats read and written by the command-line tool.
//!
//! * Matrix files are JSON objects `{"rows": r, "cols": c, "data": [...]}`
//!   with row-major entries, each a number or a pair `[re, im]`.
//! * Vectors are JSON arrays of the same entries, or comma/space separated
//!   real numbers.
//! * Forcing tables and trajectory tables are whitespace-separated columns
//!   with `#` comment lines.
//!
//! Every number is written with 17 significant digits so that values read
//! back are bit-identical.

use std::fmt::Write as _;
use std::path::Path;

use mittag_core::fde::{SampledForcing, Trajectory};
use mittag_core::linalg::ComplexMatrix;
use num_complex::Complex64;
use serde_json::Value;

use crate::error::CliError;

/// A double with 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn entry(z: Complex64) -> String {
    if z.im == 0.0 {
        num(z.re)
    } else {
        format!("[{}, {}]", num(z.re), num(z.im))
    }
}

pub fn read_text(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_string(),
        source,
    })
}

pub fn write_text(path: &str, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_string(),
        source,
    })
}

fn format_err(origin: &str, message: impl Into<String>) -> CliError {
    CliError::Format {
        path: origin.to_string(),
        message: message.into(),
    }
}

fn parse_entry(v: &Value, origin: &str, index: usize) -> Result<Complex64, CliError> {
    let bad = || {
        format_err(
            origin,
            format!("entry {index} must be a number or a pair [re, im]"),
        )
    };
    match v {
        Value::Number(n) => n.as_f64().map(|x| Complex64::new(x, 0.0)).ok_or_else(bad),
        Value::Array(pair) if pair.len() == 2 => {
            let re = pair[0].as_f64().ok_or_else(bad)?;
            let im = pair[1].as_f64().ok_or_else(bad)?;
            Ok(Complex64::new(re, im))
        }
        _ => Err(bad()),
    }
}

pub fn parse_matrix(text: &str, origin: &str) -> Result<ComplexMatrix, CliError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| format_err(origin, e.to_string()))?;
    let dim = |key: &str| {
        doc.get(key)
            .and_then(Value::as_u64)
            .map(|d| d as usize)
            .ok_or_else(|| format_err(origin, format!("missing or invalid \"{key}\"")))
    };
    let (rows, cols) = (dim("rows")?, dim("cols")?);
    let data = doc
        .get("data")
        .and_then(Value::as_array)
        .ok_or_else(|| format_err(origin, "missing \"data\" array"))?;
    let entries = data
        .iter()
        .enumerate()
        .map(|(i, v)| parse_entry(v, origin, i))
        .collect::<Result<Vec<_>, _>>()?;
    ComplexMatrix::new(rows, cols, entries).map_err(|e| format_err(origin, e.to_string()))
}

pub fn read_matrix(path: &str) -> Result<ComplexMatrix, CliError> {
    parse_matrix(&read_text(path)?, path)
}

pub fn format_matrix(m: &ComplexMatrix) -> String {
    let mut s = format!(
        "{{\n  \"rows\": {},\n  \"cols\": {},\n  \"data\": [\n",
        m.rows(),
        m.cols()
    );
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|&z| entry(z)).collect();
        let sep = if i + 1 == m.rows() { "" } else { "," };
        let _ = writeln!(s, "    {}{sep}", row.join(", "));
    }
    s.push_str("  ]\n}\n");
    s
}

/// A vector given inline or as the path of a file holding the same text.
pub fn parse_vector(arg: &str) -> Result<Vec<Complex64>, CliError> {
    let (text, origin) = if Path::new(arg).is_file() {
        (read_text(arg)?, arg.to_string())
    } else {
        (arg.to_string(), "inline vector".to_string())
    };
    let trimmed = text.trim();
    if trimmed.starts_with('[') {
        let v: Value =
            serde_json::from_str(trimmed).map_err(|e| format_err(&origin, e.to_string()))?;
        let items = v
            .as_array()
            .ok_or_else(|| format_err(&origin, "expected an array"))?;
        return items
            .iter()
            .enumerate()
            .map(|(i, v)| parse_entry(v, &origin, i))
            .collect();
    }
    let values = trimmed
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map(|x| Complex64::new(x, 0.0))
                .map_err(|_| format_err(&origin, format!("cannot parse \"{t}\" as a number")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err(format_err(&origin, "empty vector"));
    }
    Ok(values)
}

/// Rows of a whitespace or comma separated numeric table.
fn parse_table(text: &str, origin: &str) -> Result<Vec<Vec<f64>>, CliError> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<f64>().map_err(|_| {
                    format_err(origin, format!("line {}: cannot parse \"{t}\"", lineno + 1))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(rows)
}

/// A forcing table `t v₁ … v_n`, one sample per line.
pub fn read_forcing(path: &str, dim: usize) -> Result<SampledForcing, CliError> {
    let rows = parse_table(&read_text(path)?, path)?;
    if rows.is_empty() {
        return Err(format_err(path, "no samples"));
    }
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != dim + 1) {
        return Err(format_err(
            path,
            format!(
                "sample {} has {} columns, expected {} (t and {dim} values)",
                i + 1,
                r.len(),
                dim + 1
            ),
        ));
    }
    let times = rows.iter().map(|r| r[0]).collect();
    let values = rows
        .iter()
        .map(|r| r[1..].iter().map(|&x| Complex64::new(x, 0.0)).collect())
        .collect();
    SampledForcing::new(times, values).map_err(|e| format_err(path, e.to_string()))
}

/// Trajectory table, restricted to the given components. Imaginary parts
/// get their own columns only when some value is genuinely complex.
pub fn format_trajectory(tr: &Trajectory, components: &[usize], names: &[String]) -> String {
    let complex = tr
        .values
        .iter()
        .flatten()
        .any(|v| components.iter().any(|&k| v[k].im != 0.0));
    let mut header = vec!["t".to_string()];
    for name in names {
        if complex {
            header.push(format!("re({name})"));
            header.push(format!("im({name})"));
        } else {
            header.push(name.clone());
        }
    }
    let mut s = format!("# {}\n", header.join(" "));
    for (i, v) in tr.values.iter().enumerate() {
        let t = num(tr.grid.node(i));
        match v {
            None => {
                let _ = writeln!(s, "{t} singular");
            }
            Some(v) => {
                let mut cols = vec![t];
                for &k in components {
                    cols.push(num(v[k].re));
                    if complex {
                        cols.push(num(v[k].im));
                    }
                }
                let _ = writeln!(s, "{}", cols.join(" "));
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip_is_bit_exact() {
        let m = ComplexMatrix::new(
            2,
            2,
            vec![
                Complex64::new(0.1, 0.0),
                Complex64::new(-1.0 / 3.0, 2.0f64.sqrt()),
                Complex64::new(1e-300, 0.0),
                Complex64::new(-0.0, f64::MAX),
            ],
        )
        .unwrap();
        let back = parse_matrix(&format_matrix(&m), "test").unwrap();
        for (a, b) in m.as_slice().iter().zip(back.as_slice()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn mixed_entries_and_errors() {
        let m = parse_matrix(r#"{"rows": 1, "cols": 2, "data": [1.5, [0, -2]]}"#, "t").unwrap();
        assert_eq!(m[(0, 1)], Complex64::new(0.0, -2.0));
        assert!(parse_matrix(r#"{"rows": 2, "cols": 2, "data": [1, 2, 3]}"#, "t").is_err());
        assert!(parse_matrix(r#"{"rows": 1, "cols": 1, "data": ["x"]}"#, "t").is_err());
        assert!(parse_matrix("not json", "t").is_err());
    }

    #[test]
    fn inline_vectors() {
        assert_eq!(
            parse_vector("1, -2.5").unwrap(),
            vec![Complex64::new(1.0, 0.0), Complex64::new(-2.5, 0.0)]
        );
        assert_eq!(
            parse_vector("[0, [1, 2]]").unwrap()[1],
            Complex64::new(1.0, 2.0)
        );
        assert!(parse_vector("1, abc").is_err());
        assert!(parse_vector("").is_err());
    }
}
