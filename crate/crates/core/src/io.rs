//! Deterministic serialization: JSON with floats at 17 significant digits and
//! CSV tables, both in centered index order.
//!
//! JSON layouts:
//! - signal: `{"n": n, "values": [[re, im], …]}` for `j = −n/2 … n/2−1`;
//! - phase function: `{"n": n, "values": [[re, im], …]}` row-major over `(m, k)`;
//! - operator: `{"n": n, "entries": [[re, im], …]}` row-major over `(a, b)`;
//! - 4D STFT table: `{"n": n, "layout": "chunked", "index": [[m, k], …], "chunks": [[[re, im], …], …]}`
//!   with one chunk per `x = (m, k)` in `index` order, each row-major over `ω`.

use std::fmt::Write;

use num_complex::Complex;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::gabor::{Stft4Table, StftTable};
use crate::grid::{make_grid, GridSpec, PhasePoint};
use crate::operator::{OperatorMatrix, SchattenSpectrum};
use crate::phase::PhaseFn;
use crate::scalar::Real;
use crate::signal::Signal;

/// A float with 17 significant digits in exponent form; non-finite values as `null`.
pub fn sig17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

/// Pretty JSON of any serializable value, keys in declaration order and
/// floats at 17 significant digits.
pub fn to_json<S: Serialize + ?Sized>(value: &S) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(value_to_json(&v))
}

/// Pretty JSON of a JSON value with the same number formatting as [`to_json`].
pub fn value_to_json(v: &Value) -> String {
    let mut out = String::new();
    emit(v, 0, &mut out);
    out.push('\n');
    out
}

fn is_flat(items: &[Value]) -> bool {
    items
        .iter()
        .all(|v| matches!(v, Value::Number(_) | Value::Null | Value::Bool(_)))
}

fn emit(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(x) => match (x.as_i64(), x.as_u64()) {
            (Some(i), _) => write!(out, "{i}").unwrap(),
            (_, Some(u)) => write!(out, "{u}").unwrap(),
            _ => out.push_str(&sig17(x.as_f64().unwrap_or(f64::NAN))),
        },
        Value::String(s) => out.push_str(&serde_json::to_string(s).expect("string")),
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        // short numeric tuples such as complex pairs stay on one line
        Value::Array(items) if is_flat(items) && items.len() <= 4 => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                emit(item, depth, out);
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                emit(item, depth + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&serde_json::to_string(k).expect("key"));
                out.push_str(": ");
                emit(item, depth + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
    }
}

fn pair<T: Real>(z: Complex<T>) -> Value {
    Value::Array(vec![num(z.re.as_f64()), num(z.im.as_f64())])
}

fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

fn table<T: Real>(n: usize, key: &str, values: Vec<Complex<T>>) -> Value {
    let mut map = serde_json::Map::new();
    map.insert("n".into(), Value::from(n));
    map.insert(
        key.into(),
        Value::Array(values.into_iter().map(pair).collect()),
    );
    Value::Object(map)
}

pub fn signal_json<T: Real>(s: &Signal<T>) -> Value {
    table(s.grid().n(), "values", s.centered_values())
}

pub fn phase_fn_json<T: Real>(f: &PhaseFn<T>) -> Value {
    table(f.grid().n(), "values", f.centered_values())
}

pub fn operator_json<T: Real>(s: &OperatorMatrix<T>) -> Value {
    table(s.grid().n(), "entries", s.centered_values())
}

pub fn stft_json<T: Real>(t: &StftTable<T>) -> Value {
    phase_fn_json(&t.to_phase_fn())
}

fn centered_points(g: GridSpec) -> Vec<PhasePoint> {
    let half = (g.n() / 2) as i64;
    (-half..half)
        .flat_map(|m| (-half..half).map(move |k| PhasePoint::new(m, k)))
        .collect()
}

pub fn stft4_json<T: Real>(t: &Stft4Table<T>) -> Value {
    let g = t.grid();
    let pts = centered_points(g);
    let index = pts
        .iter()
        .map(|p| Value::Array(vec![Value::from(p.m), Value::from(p.k)]))
        .collect();
    let chunks = pts
        .iter()
        .map(|&x| Value::Array(pts.iter().map(|&w| pair(t.at(x, w))).collect()))
        .collect();
    let mut map = serde_json::Map::new();
    map.insert("n".into(), Value::from(g.n()));
    map.insert("layout".into(), Value::from("chunked"));
    map.insert("index".into(), Value::Array(index));
    map.insert("chunks".into(), Value::Array(chunks));
    Value::Object(map)
}

fn read_pairs(v: &Value, key: &str) -> Result<(GridSpec, Vec<Complex<f64>>)> {
    let bad = |what: &str| Error::Parse(format!("{what} in `{key}` table"));
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing n"))? as usize;
    let grid = make_grid(n)?;
    let items = v
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing values"))?;
    let values = items
        .iter()
        .map(|p| match p.as_array().map(|a| a.as_slice()) {
            Some([re, im]) => Ok(Complex::new(
                re.as_f64().ok_or_else(|| bad("non-numeric entry"))?,
                im.as_f64().ok_or_else(|| bad("non-numeric entry"))?,
            )),
            _ => Err(bad("entry is not a [re, im] pair")),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((grid, values))
}

/// Inverse of [`signal_json`].
pub fn signal_from_json(v: &Value) -> Result<Signal<f64>> {
    let (grid, values) = read_pairs(v, "values")?;
    if values.len() != grid.n() {
        return Err(Error::LengthMismatch {
            expected: grid.n(),
            got: values.len(),
        });
    }
    let mut raw = vec![Complex::new(0.0, 0.0); grid.n()];
    for (s, z) in grid.centered_slots().zip(values) {
        raw[s] = z;
    }
    Signal::new(grid, raw.into())
}

fn square_from_pairs(
    grid: GridSpec,
    values: Vec<Complex<f64>>,
) -> Result<ndarray::Array2<Complex<f64>>> {
    let n = grid.n();
    if values.len() != n * n {
        return Err(Error::LengthMismatch {
            expected: n * n,
            got: values.len(),
        });
    }
    let slots: Vec<usize> = grid.centered_slots().collect();
    let mut a = ndarray::Array2::from_elem((n, n), Complex::new(0.0, 0.0));
    for (i, z) in values.into_iter().enumerate() {
        a[[slots[i / n], slots[i % n]]] = z;
    }
    Ok(a)
}

/// Inverse of [`phase_fn_json`].
pub fn phase_fn_from_json(v: &Value) -> Result<PhaseFn<f64>> {
    let (grid, values) = read_pairs(v, "values")?;
    PhaseFn::new(grid, square_from_pairs(grid, values)?)
}

/// Inverse of [`operator_json`].
pub fn operator_from_json(v: &Value) -> Result<OperatorMatrix<f64>> {
    let (grid, values) = read_pairs(v, "entries")?;
    OperatorMatrix::new(grid, square_from_pairs(grid, values)?)
}

/// CSV builder with a fixed header; fields are quoted where needed.
pub struct Csv {
    writer: csv::Writer<Vec<u8>>,
    width: usize,
    rows: usize,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(header).expect("in-memory write");
        Csv {
            writer,
            width: header.len(),
            rows: 0,
        }
    }

    /// Appends a row; panics if its width differs from the header.
    pub fn row<S: AsRef<[u8]>>(&mut self, cells: &[S]) {
        assert_eq!(cells.len(), self.width, "csv row width");
        self.writer.write_record(cells).expect("in-memory write");
        self.rows += 1;
    }

    pub fn len(&self) -> usize {
        self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0
    }

    pub fn render(self) -> String {
        let bytes = self.writer.into_inner().expect("in-memory flush");
        String::from_utf8(bytes).expect("utf-8 fields")
    }
}

/// CSV float cell: 17 significant digits, `NaN`/`inf` spelled out.
pub fn cell(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

/// Optional CSV float cell, empty when absent.
pub fn opt_cell(x: Option<f64>) -> String {
    x.map(cell).unwrap_or_default()
}

pub fn signal_csv<T: Real>(s: &Signal<T>) -> String {
    let mut csv = Csv::new(&["j", "re", "im"]);
    let half = (s.grid().n() / 2) as i64;
    for (j, z) in (-half..half).zip(s.centered_values()) {
        csv.row(&[j.to_string(), cell(z.re.as_f64()), cell(z.im.as_f64())]);
    }
    csv.render()
}

fn square_csv<T: Real>(n: usize, cols: [&str; 2], values: Vec<Complex<T>>) -> String {
    let mut csv = Csv::new(&[cols[0], cols[1], "re", "im"]);
    let half = (n / 2) as i64;
    for (i, z) in values.into_iter().enumerate() {
        let (a, b) = ((i / n) as i64 - half, (i % n) as i64 - half);
        csv.row(&[
            a.to_string(),
            b.to_string(),
            cell(z.re.as_f64()),
            cell(z.im.as_f64()),
        ]);
    }
    csv.render()
}

pub fn phase_fn_csv<T: Real>(f: &PhaseFn<T>) -> String {
    square_csv(f.grid().n(), ["m", "k"], f.centered_values())
}

pub fn operator_csv<T: Real>(s: &OperatorMatrix<T>) -> String {
    square_csv(s.grid().n(), ["a", "b"], s.centered_values())
}

pub fn stft_csv<T: Real>(t: &StftTable<T>) -> String {
    phase_fn_csv(&t.to_phase_fn())
}

/// Chunked CSV of a 4D table: a `# chunk` line before each `x` block.
pub fn stft4_csv<T: Real>(t: &Stft4Table<T>) -> String {
    let pts = centered_points(t.grid());
    let mut out = String::from("x_m,x_k,w_m,w_k,re,im\n");
    for &x in &pts {
        writeln!(out, "# chunk x=({},{})", x.m, x.k).unwrap();
        for &w in &pts {
            let z = t.at(x, w);
            writeln!(
                out,
                "{},{},{},{},{},{}",
                x.m,
                x.k,
                w.m,
                w.k,
                cell(z.re.as_f64()),
                cell(z.im.as_f64())
            )
            .unwrap();
        }
    }
    out
}

pub fn spectrum_csv(sp: &SchattenSpectrum) -> String {
    let mut csv = Csv::new(&["index", "sigma"]);
    for (i, s) in sp.sigma.iter().enumerate() {
        csv.row(&[i.to_string(), cell(*s)]);
    }
    csv.render()
}
