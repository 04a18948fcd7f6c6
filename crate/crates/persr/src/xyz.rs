//! XYZ coordinate files: an atom count, a comment line, then one
//! `Element x y z` line per atom.

use std::path::Path;

use persr_core::{Point, PointCloud};

use crate::error::{Error, Result};

pub fn read_xyz(path: &Path) -> Result<PointCloud> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_xyz(&text, path)
}

/// Parses XYZ text; `origin` is only used in diagnostics. Element symbols
/// are normalised to a capital first letter (`b` and `B` become `B`,
/// `CL` becomes `Cl`). Blank lines after the atom block are ignored.
pub fn parse_xyz(text: &str, origin: &Path) -> Result<PointCloud> {
    let mut lines = text.lines().enumerate();
    let (_, count_line) = lines
        .next()
        .ok_or_else(|| Error::parse(origin, Some(1), "missing atom count line"))?;
    let expected: usize = count_line
        .trim()
        .parse()
        .map_err(|_| Error::parse(origin, Some(1), format!("invalid atom count {:?}", count_line.trim())))?;
    if lines.next().is_none() {
        return Err(Error::parse(origin, Some(2), "missing comment line"));
    }
    let mut points = Vec::with_capacity(expected);
    for (idx, line) in lines {
        let lineno = idx + 1;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if points.len() == expected {
            return Err(Error::parse(
                origin,
                Some(lineno),
                format!("atom count mismatch: expected {expected}, found more"),
            ));
        }
        if fields.len() < 4 {
            return Err(Error::parse(
                origin,
                Some(lineno),
                format!("expected `Element x y z`, got {} field(s)", fields.len()),
            ));
        }
        let mut coords = [0.0; 3];
        for (k, c) in coords.iter_mut().enumerate() {
            let raw = fields[k + 1];
            *c = raw
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::parse(origin, Some(lineno), format!("non-numeric coordinate {raw:?}")))?;
        }
        points.push(Point::new(normalize_element(fields[0]), coords));
    }
    if points.len() != expected {
        return Err(Error::parse(
            origin,
            None,
            format!("atom count mismatch: expected {expected}, found {}", points.len()),
        ));
    }
    Ok(PointCloud::new(points)?)
}

pub fn normalize_element(symbol: &str) -> String {
    let mut chars = symbol.chars();
    match chars.next() {
        Some(first) => first.to_ascii_uppercase().to_string() + &chars.as_str().to_ascii_lowercase(),
        None => String::new(),
    }
}

/// Writes a cloud back out in XYZ form.
pub fn format_xyz(cloud: &PointCloud, comment: &str) -> String {
    let mut out = format!("{}\n{}\n", cloud.len(), comment);
    for p in &cloud.points {
        out += &format!("{} {} {} {}\n", p.label, p.coords[0], p.coords[1], p.coords[2]);
    }
    out
}
