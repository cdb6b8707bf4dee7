//! Image and table file formats.
//!
//! JSON is a compact object with sorted points. GRID is an origin header
//! followed by rows from the top (largest y) down, `#` present and `.`
//! absent. A c1 image carries a second header line `!adjacency c1`; c2 is the
//! default and is never written.
//!
//! Emitting is canonical: `emit(parse(emit(x))) == emit(x)` byte for byte.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use dplane_core::{AdjacencyKind, DigitalImage, Point};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Grid,
}

impl Format {
    /// JSON when the first non-blank byte opens an object, GRID otherwise.
    pub fn detect(text: &str) -> Format {
        match text.trim_start().chars().next() {
            Some('{') => Format::Json,
            _ => Format::Grid,
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Grid => "grid",
        }
    }
}

/// Malformed input; lines and columns are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl FormatError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        FormatError { line, column, message: message.into() }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Adjacency {
    C1,
    C2,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ImageDoc {
    adjacency: Adjacency,
    points: Vec<(i64, i64)>,
}

pub fn parse_image(text: &str, format: Format) -> Result<DigitalImage, FormatError> {
    match format {
        Format::Json => parse_json(text),
        Format::Grid => parse_grid(text),
    }
}

pub fn emit_image(x: &DigitalImage, format: Format) -> String {
    match format {
        Format::Json => emit_json(x),
        Format::Grid => emit_grid(x),
    }
}

pub fn parse_json(text: &str) -> Result<DigitalImage, FormatError> {
    let doc: ImageDoc = serde_json::from_str(text).map_err(|e| {
        // serde_json appends its own " at line L column C".
        let message = e.to_string();
        let message = message.rfind(" at line ").map_or(message.as_str(), |i| &message[..i]).to_string();
        FormatError::at(e.line(), e.column(), message)
    })?;
    let kind = match doc.adjacency {
        Adjacency::C1 => AdjacencyKind::C1,
        Adjacency::C2 => AdjacencyKind::C2,
    };
    Ok(DigitalImage::new(doc.points.into_iter().map(|(x, y)| Point::new(x, y)), kind))
}

pub fn emit_json(x: &DigitalImage) -> String {
    let doc = ImageDoc {
        adjacency: match x.kind() {
            AdjacencyKind::C1 => Adjacency::C1,
            AdjacencyKind::C2 => Adjacency::C2,
        },
        points: x.points().map(|p| (p.x, p.y)).collect(),
    };
    let mut out = serde_json::to_string(&doc).expect("plain data serializes");
    out.push('\n');
    out
}

fn parse_int(word: Option<&str>, line: usize, column: usize, what: &str) -> Result<i64, FormatError> {
    let word = word.ok_or_else(|| FormatError::at(line, column, format!("missing {what}")))?;
    word.parse().map_err(|_| FormatError::at(line, column, format!("{what} {word:?} is not an integer")))
}

pub fn parse_grid(text: &str) -> Result<DigitalImage, FormatError> {
    let mut lines: Vec<&str> = text.split('\n').collect();
    if lines.last() == Some(&"") {
        lines.pop();
    }
    let header = lines.first().ok_or_else(|| FormatError::at(1, 1, "missing !origin header"))?;
    let rest =
        header.strip_prefix("!origin ").ok_or_else(|| FormatError::at(1, 1, "expected \"!origin <xmin> <ymin>\""))?;
    let mut words = rest.split(' ');
    let x_word = words.next();
    let x_min = parse_int(x_word, 1, 9, "xmin")?;
    let y_min = parse_int(words.next(), 1, 10 + x_word.map_or(0, str::len), "ymin")?;
    if words.next().is_some() {
        return Err(FormatError::at(1, header.len(), "trailing text after !origin"));
    }

    let mut kind = AdjacencyKind::C2;
    let mut first_row = 1;
    if let Some(line) = lines.get(1).filter(|l| l.starts_with('!')) {
        kind = match *line {
            "!adjacency c1" => AdjacencyKind::C1,
            "!adjacency c2" => AdjacencyKind::C2,
            _ => return Err(FormatError::at(2, 1, "expected \"!adjacency c1\" or \"!adjacency c2\"")),
        };
        first_row = 2;
    }

    let rows = &lines[first_row..];
    let width = rows.first().map_or(0, |r| r.len());
    let y_max = y_min + rows.len() as i64 - 1;
    let mut points = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let line = first_row + i + 1;
        for (j, c) in row.chars().enumerate() {
            match c {
                '#' => points.push(Point::new(x_min + j as i64, y_max - i as i64)),
                '.' => {}
                other => return Err(FormatError::at(line, j + 1, format!("unexpected {other:?}"))),
            }
        }
        if row.len() != width {
            return Err(FormatError::at(
                line,
                row.len().min(width) + 1,
                format!("row has width {}, expected {width}", row.len()),
            ));
        }
    }
    Ok(DigitalImage::new(points, kind))
}

pub fn emit_grid(x: &DigitalImage) -> String {
    let mut out = String::new();
    let Some(bbox) = x.bounding_box() else {
        out.push_str("!origin 0 0\n");
        if x.kind() == AdjacencyKind::C1 {
            out.push_str("!adjacency c1\n");
        }
        return out;
    };
    writeln!(out, "!origin {} {}", bbox.x_min, bbox.y_min).unwrap();
    if x.kind() == AdjacencyKind::C1 {
        out.push_str("!adjacency c1\n");
    }
    for y in (bbox.y_min..=bbox.y_max).rev() {
        for px in bbox.x_min..=bbox.x_max {
            out.push(if x.contains(Point::new(px, y)) { '#' } else { '.' });
        }
        out.push('\n');
    }
    out
}

pub const TSV_HEADER: &str = "x\ty\trx\try";

/// Map tables as TSV with a header row, sorted by source point.
pub fn emit_tsv<I: IntoIterator<Item = (Point, Point)>>(rows: I) -> String {
    let sorted: BTreeMap<Point, Point> = rows.into_iter().collect();
    let mut out = String::from(TSV_HEADER);
    out.push('\n');
    for (p, q) in sorted {
        writeln!(out, "{}\t{}\t{}\t{}", p.x, p.y, q.x, q.y).unwrap();
    }
    out
}

pub fn parse_tsv(text: &str) -> Result<BTreeMap<Point, Point>, FormatError> {
    let mut table = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 && line == TSV_HEADER {
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split('\t');
        let mut column = 1;
        let mut values = [0i64; 4];
        for (k, name) in ["x", "y", "rx", "ry"].iter().enumerate() {
            let word = fields.next();
            values[k] = parse_int(word, i + 1, column, name)?;
            column += word.map_or(0, str::len) + 1;
        }
        if fields.next().is_some() {
            return Err(FormatError::at(i + 1, column, "more than four fields"));
        }
        let p = Point::new(values[0], values[1]);
        if table.insert(p, Point::new(values[2], values[3])).is_some() {
            return Err(FormatError::at(i + 1, 1, format!("duplicate row for {p}")));
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn json_examples() {
        let x = parse_json(r#"{"adjacency":"c2","points":[[1,1],[0,0]]}"#).unwrap();
        assert_eq!(x, DigitalImage::c2([p(0, 0), p(1, 1)]));
        assert_eq!(emit_json(&x), "{\"adjacency\":\"c2\",\"points\":[[0,0],[1,1]]}\n");
        let c1 = parse_json(r#"{ "adjacency": "c1", "points": [] }"#).unwrap();
        assert_eq!(c1.kind(), AdjacencyKind::C1);
        assert!(c1.is_empty());
    }

    #[test]
    fn json_errors_carry_positions() {
        let err = parse_json("{\"adjacency\":\"c3\",\n\"points\":[]}").unwrap_err();
        assert_eq!(err.line, 1);
        let err = parse_json("{\"adjacency\":\"c2\",\n\"points\":[[0]]}").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(parse_json(r#"{"adjacency":"c2","points":[],"extra":1}"#).is_err());
    }

    #[test]
    fn grid_examples() {
        let x = parse_grid("!origin 0 0\n.#\n#.").unwrap();
        assert_eq!(x, DigitalImage::c2([p(1, 1), p(0, 0)]));
        assert_eq!(emit_grid(&x), "!origin 0 0\n.#\n#.\n");
        let shifted = parse_grid("!origin -3 5\n#\n").unwrap();
        assert_eq!(shifted, DigitalImage::c2([p(-3, 5)]));
        let c1 = parse_grid("!origin 0 0\n!adjacency c1\n##\n").unwrap();
        assert_eq!(c1.kind(), AdjacencyKind::C1);
        assert_eq!(emit_grid(&c1), "!origin 0 0\n!adjacency c1\n##\n");
    }

    #[test]
    fn grid_emits_over_the_bounding_box() {
        let x = DigitalImage::c2([p(2, 7), p(4, 5)]);
        assert_eq!(emit_grid(&x), "!origin 2 5\n#..\n...\n..#\n");
        assert_eq!(emit_grid(&DigitalImage::empty(AdjacencyKind::C2)), "!origin 0 0\n");
        assert!(parse_grid("!origin 0 0\n").unwrap().is_empty());
    }

    #[test]
    fn grid_errors_carry_positions() {
        assert_eq!(parse_grid("").unwrap_err().line, 1);
        assert_eq!(parse_grid("!origin x 0\n").unwrap_err().message, "xmin \"x\" is not an integer");
        let err = parse_grid("!origin -12 y\n").unwrap_err();
        assert_eq!((err.line, err.column), (1, 13));
        let err = parse_grid("!origin 0 0\n#.\n#x\n").unwrap_err();
        assert_eq!((err.line, err.column), (3, 2));
        let err = parse_grid("!origin 0 0\n##\n#\n").unwrap_err();
        assert_eq!((err.line, err.column), (3, 2));
        let err = parse_grid("!origin 0 0\n!adjacency c9\n#\n").unwrap_err();
        assert_eq!(err.line, 2);
    }

    #[test]
    fn detect_by_first_byte() {
        assert_eq!(Format::detect("  {\"a\":1}"), Format::Json);
        assert_eq!(Format::detect("!origin 0 0\n"), Format::Grid);
    }

    #[test]
    fn tsv_round_trip() {
        let rows = [(p(1, 0), p(0, 0)), (p(-1, 2), p(0, 2))];
        let text = emit_tsv(rows);
        assert_eq!(text, "x\ty\trx\try\n-1\t2\t0\t2\n1\t0\t0\t0\n");
        assert_eq!(parse_tsv(&text).unwrap(), rows.into_iter().collect());
        assert_eq!(parse_tsv("1\t2\t3\n").unwrap_err().message, "missing ry");
        assert!(parse_tsv("1\t2\t3\t4\n1\t2\t0\t0\n").is_err());
    }
}
