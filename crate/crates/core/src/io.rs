//! Text formats for point sets and hash codes.
//!
//! Point sets: `{"dim": d, "points": [["p/q", ...], ...]}`, each entry an exact
//! rational `p/q` or an integer `p`. Codes: `{"b": b, "k": k, "m": m, "words":
//! [[1, 2, ...], ...]}`. Writers emit one point or word per line.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::geometry::{Point, PointSet};
use crate::hashcodes::{HashCode, Word};
use crate::rational;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PointSetFile {
    dim: usize,
    points: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CodeFile {
    b: u32,
    k: usize,
    m: usize,
    words: Vec<Vec<u32>>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse(format!("line {} column {}: {e}", e.line(), e.column()))
}

pub fn parse_point_set(text: &str) -> Result<PointSet> {
    let raw: PointSetFile = serde_json::from_str(text).map_err(json_error)?;
    point_set_from_rows(raw.dim, &raw.points)
}

/// Also accepts a point-set object embedded in a larger document.
pub fn point_set_from_value(v: &serde_json::Value) -> Result<PointSet> {
    let raw: PointSetFile = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    point_set_from_rows(raw.dim, &raw.points)
}

fn point_set_from_rows(dim: usize, rows: &[Vec<String>]) -> Result<PointSet> {
    let mut points = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        if row.len() != dim {
            return Err(Error::Parse(format!("points[{i}]: expected {dim} coordinates, found {}", row.len())));
        }
        let coords = row
            .iter()
            .enumerate()
            .map(|(j, s)| rational::parse(s).map_err(|e| Error::Parse(format!("points[{i}][{j}]: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        points.push(Point::new(coords));
    }
    PointSet::new(points).map_err(|e| Error::Parse(format!("points: {e}")))
}

pub fn point_set_to_value(x: &PointSet) -> serde_json::Value {
    serde_json::json!({
        "dim": x.dim(),
        "points": x.points().iter().map(|p| p.coords().iter().map(rational::render).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn rows_block<T: serde::Serialize>(rows: impl Iterator<Item = T>) -> String {
    let lines: Vec<String> = rows.map(|r| format!("    {}", serde_json::to_string(&r).expect("plain data"))).collect();
    if lines.is_empty() {
        "[]".into()
    } else {
        format!("[\n{}\n  ]", lines.join(",\n"))
    }
}

pub fn write_point_set(x: &PointSet) -> String {
    let rows = x.points().iter().map(|p| p.coords().iter().map(rational::render).collect::<Vec<_>>());
    format!("{{\n  \"dim\": {},\n  \"points\": {}\n}}\n", x.dim(), rows_block(rows))
}

pub fn parse_code(text: &str) -> Result<HashCode> {
    let raw: CodeFile = serde_json::from_str(text).map_err(json_error)?;
    code_from_raw(raw)
}

pub fn code_from_value(v: &serde_json::Value) -> Result<HashCode> {
    let raw: CodeFile = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    code_from_raw(raw)
}

fn code_from_raw(raw: CodeFile) -> Result<HashCode> {
    let words = raw.words.into_iter().map(Word).collect();
    HashCode::new(raw.b, raw.k, raw.m, words).map_err(|e| Error::Parse(format!("words: {e}")))
}

pub fn code_to_value(c: &HashCode) -> serde_json::Value {
    serde_json::json!({ "b": c.b(), "k": c.k(), "m": c.m(), "words": c.words() })
}

pub fn write_code(c: &HashCode) -> String {
    format!(
        "{{\n  \"b\": {},\n  \"k\": {},\n  \"m\": {},\n  \"words\": {}\n}}\n",
        c.b(),
        c.k(),
        c.m(),
        rows_block(c.words().iter())
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_set_round_trip() {
        let text = "{\n  \"dim\": 2,\n  \"points\": [\n    [\"0\",\"1/2\"],\n    [\"-3/7\",\"5\"]\n  ]\n}\n";
        let x = parse_point_set(text).unwrap();
        let out = write_point_set(&x);
        assert_eq!(parse_point_set(&out).unwrap(), x);
        assert_eq!(write_point_set(&parse_point_set(&out).unwrap()), out);
        assert_eq!(point_set_from_value(&point_set_to_value(&x)).unwrap(), x);
    }

    #[test]
    fn point_set_diagnostics() {
        let e = parse_point_set("{\"dim\": 2, \"points\": [[\"1\", \"x\"]]}").unwrap_err();
        assert!(e.to_string().contains("points[0][1]"), "{e}");
        let e = parse_point_set("{\"dim\": 2, \"points\": [[\"1\"]]}").unwrap_err();
        assert!(e.to_string().contains("points[0]"), "{e}");
        let e = parse_point_set("{\"dim\": 2,\n \"points\": [[\"1\", \"1/0\"]]}").unwrap_err();
        assert!(e.to_string().contains("points[0][1]"), "{e}");
        let e = parse_point_set("{\"dim\": 2,\n \"pts\": []}").unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");
    }

    #[test]
    fn code_round_trip() {
        let text = "{\"b\": 3, \"k\": 3, \"m\": 2, \"words\": [[1,1],[2,2],[3,3]]}";
        let c = parse_code(text).unwrap();
        let out = write_code(&c);
        assert_eq!(parse_code(&out).unwrap(), c);
        assert_eq!(write_code(&parse_code(&out).unwrap()), out);
        assert!(parse_code("{\"b\": 3, \"k\": 3, \"m\": 2, \"words\": [[1,4]]}").is_err());
    }
}
