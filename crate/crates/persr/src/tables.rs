//! CSV formats: Betti tables, distance matrices and dataset manifests.

use std::path::{Path, PathBuf};

use persr_core::algebra::{BettiTable, Layout};
use persr_core::classify::DistanceMatrix;

use crate::error::{Error, Result};
use crate::json::round;

fn csv_error(origin: &Path, e: csv::Error) -> Error {
    let line = e.position().map(|p| p.line() as usize);
    Error::parse(origin, line, e.to_string())
}

fn layout_label(layout: Layout) -> &'static str {
    match layout {
        Layout::Macaulay2 => "j-i",
        Layout::InternalDegree => "j",
    }
}

/// Grid CSV: header `j-i,0,1,...` (columns `i`), one row per `j - i`.
pub fn betti_csv(table: &BettiTable, layout: Layout) -> String {
    grid_csv(&table.grid(layout), layout)
}

pub fn grid_csv(grid: &[Vec<u64>], layout: Layout) -> String {
    let cols = grid.first().map_or(0, Vec::len);
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec![layout_label(layout).to_string()];
    header.extend((0..cols).map(|i| i.to_string()));
    w.write_record(&header).expect("in-memory write");
    for (r, row) in grid.iter().enumerate() {
        let mut rec = vec![r.to_string()];
        rec.extend(row.iter().map(u64::to_string));
        w.write_record(&rec).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("ascii")
}

/// Reads a grid written by [`betti_csv`].
pub fn parse_betti_csv(text: &str, origin: &Path) -> Result<(Layout, Vec<Vec<u64>>)> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().map_err(|e| csv_error(origin, e))?.clone();
    let layout = match header.get(0) {
        Some("j-i") => Layout::Macaulay2,
        Some("j") => Layout::InternalDegree,
        other => {
            return Err(Error::parse(
                origin,
                Some(1),
                format!("expected `j-i` or `j` as first column, got {other:?}"),
            ))
        }
    };
    let mut grid = Vec::new();
    for (k, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| csv_error(origin, e))?;
        let row = rec
            .iter()
            .skip(1)
            .map(|x| {
                x.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::parse(origin, Some(k + 2), format!("invalid entry {x:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        grid.push(row);
    }
    Ok((layout, grid))
}

/// Square CSV with a header row of sample ids and the id in column 0.
pub fn distance_csv(m: &DistanceMatrix, digits: Option<u32>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["id".to_string()];
    header.extend(m.ids().iter().cloned());
    w.write_record(&header).expect("in-memory write");
    for (i, id) in m.ids().iter().enumerate() {
        let mut rec = vec![id.clone()];
        rec.extend(m.row(i).iter().map(|&x| round(x, digits).to_string()));
        w.write_record(&rec).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8 ids")
}

pub fn parse_distance_csv(text: &str, origin: &Path) -> Result<DistanceMatrix> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().map_err(|e| csv_error(origin, e))?.clone();
    let ids: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    let mut data = Vec::with_capacity(ids.len() * ids.len());
    for (k, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| csv_error(origin, e))?;
        let line = Some(k + 2);
        if rec.get(0) != ids.get(k).map(String::as_str) {
            return Err(Error::parse(origin, line, "row id does not match the header order"));
        }
        for x in rec.iter().skip(1) {
            data.push(
                x.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::parse(origin, line, format!("invalid distance {x:?}")))?,
            );
        }
    }
    DistanceMatrix::new(ids, data).map_err(|e| Error::parse(origin, None, e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Deserialize)]
pub struct ManifestEntry {
    pub id: String,
    pub label: String,
    pub path: PathBuf,
}

/// Reads an `id,label,path` manifest. Relative paths are resolved against
/// the manifest's directory.
pub fn read_manifest(path: &Path) -> Result<Vec<ManifestEntry>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let base = path.parent().unwrap_or(Path::new(""));
    let mut entries = parse_manifest(&text, path)?;
    for e in &mut entries {
        if e.path.is_relative() {
            e.path = base.join(&e.path);
        }
    }
    Ok(entries)
}

pub fn parse_manifest(text: &str, origin: &Path) -> Result<Vec<ManifestEntry>> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let header = r.headers().map_err(|e| csv_error(origin, e))?;
    if header.iter().collect::<Vec<_>>() != ["id", "label", "path"] {
        return Err(Error::parse(origin, Some(1), "manifest header must be `id,label,path`"));
    }
    let entries = r
        .deserialize()
        .collect::<std::result::Result<Vec<ManifestEntry>, _>>()
        .map_err(|e| csv_error(origin, e))?;
    let mut seen = std::collections::BTreeSet::new();
    for e in &entries {
        if !seen.insert(&e.id) {
            return Err(Error::parse(origin, None, format!("duplicate sample id {:?}", e.id)));
        }
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn betti_grid_round_trip() {
        let table = BettiTable::from_entries(4, [(0, 0, 1), (1, 2, 3), (2, 3, 2)]).unwrap();
        let csv = betti_csv(&table, Layout::Macaulay2);
        assert_eq!(csv, "j-i,0,1,2\n0,1,0,0\n1,0,3,2\n");
        let (layout, grid) = parse_betti_csv(&csv, Path::new("b.csv")).unwrap();
        assert_eq!(layout, Layout::Macaulay2);
        assert_eq!(grid, table.grid(Layout::Macaulay2));
    }

    #[test]
    fn distance_round_trip() {
        let m = DistanceMatrix::from_rows(
            vec!["a".into(), "b".into()],
            vec![vec![0.0, 1.5], vec![1.5, 0.0]],
        )
        .unwrap();
        let text = distance_csv(&m, None);
        assert_eq!(parse_distance_csv(&text, Path::new("d.csv")).unwrap(), m);
    }

    #[test]
    fn asymmetric_distance_rejected() {
        let text = "id,a,b\na,0,1\nb,2,0\n";
        assert!(parse_distance_csv(text, Path::new("d.csv")).is_err());
    }

    #[test]
    fn manifest_checks() {
        let ok = parse_manifest("id,label,path\ns1, x ,a.xyz\n", Path::new("m.csv")).unwrap();
        assert_eq!(ok[0].label, "x");
        assert!(parse_manifest("id,path\ns1,a.xyz\n", Path::new("m.csv")).is_err());
        assert!(parse_manifest("id,label,path\ns1,x,a\ns1,y,b\n", Path::new("m.csv")).is_err());
    }
}
