//! Matrix Market coordinate format.

use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix::SimilarityMatrix;

/// Writes `(row, col, value)` entries (0-based) as a coordinate real matrix.
/// Values use the shortest representation that parses back to the same
/// `f64`, so a read after write is exact.
pub fn write_coordinate(
    mut out: impl Write,
    nrows: usize,
    ncols: usize,
    symmetric: bool,
    entries: &[(usize, usize, f64)],
) -> Result<()> {
    let kind = if symmetric { "symmetric" } else { "general" };
    let mut buf = format!("%%MatrixMarket matrix coordinate real {kind}\n{nrows} {ncols} {}\n", entries.len());
    for &(i, j, v) in entries {
        buf.push_str(&format!("{} {} {:?}\n", i + 1, j + 1, v));
    }
    out.write_all(buf.as_bytes())?;
    Ok(())
}

/// Writes `S`; symmetric matrices store only the lower triangle.
pub fn write_matrix(out: impl Write, s: &SimilarityMatrix) -> Result<()> {
    let entries: Vec<_> =
        if s.is_symmetric() { s.triplets().filter(|&(i, j, _)| i >= j).collect() } else { s.triplets().collect() };
    write_coordinate(out, s.n(), s.n(), s.is_symmetric(), &entries)
}

/// Coordinate matrix as read from disk, symmetric storage already expanded.
pub struct Coordinate {
    pub nrows: usize,
    pub ncols: usize,
    pub entries: Vec<(usize, usize, f64)>,
}

pub fn read_coordinate(reader: impl Read, path: &Path) -> Result<Coordinate> {
    let mut lines = BufReader::new(reader).lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| Error::parse(path, 1, "missing Matrix Market header"))?;
    let header = header?.to_lowercase();
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 5 || fields[0] != "%%matrixmarket" || fields[1] != "matrix" || fields[2] != "coordinate" {
        return Err(Error::parse(path, 1, "expected '%%MatrixMarket matrix coordinate <field> <symmetry>'"));
    }
    if !matches!(fields[3], "real" | "integer" | "double") {
        return Err(Error::parse(path, 1, format!("unsupported field {:?}", fields[3])));
    }
    let symmetric = match fields[4] {
        "general" => false,
        "symmetric" => true,
        other => return Err(Error::parse(path, 1, format!("unsupported symmetry {other:?}"))),
    };

    let mut size: Option<(usize, usize, usize)> = None;
    let mut entries = Vec::new();
    for (lineno, line) in lines {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let bad = |msg: &str| Error::parse(path, lineno + 1, msg);
        let mut it = line.split_whitespace();
        match size {
            None => {
                let mut num =
                    || -> Result<usize> { it.next().and_then(|t| t.parse().ok()).ok_or_else(|| bad("bad size line")) };
                size = Some((num()?, num()?, num()?));
            }
            Some((nrows, ncols, _)) => {
                let i: usize = it.next().and_then(|t| t.parse().ok()).ok_or_else(|| bad("bad row index"))?;
                let j: usize = it.next().and_then(|t| t.parse().ok()).ok_or_else(|| bad("bad column index"))?;
                let v: f64 = it.next().and_then(|t| t.parse().ok()).ok_or_else(|| bad("bad value"))?;
                if i == 0 || j == 0 || i > nrows || j > ncols {
                    return Err(bad("index out of range"));
                }
                entries.push((i - 1, j - 1, v));
                if symmetric && i != j {
                    entries.push((j - 1, i - 1, v));
                }
            }
        }
    }
    let (nrows, ncols, declared) = size.ok_or_else(|| Error::parse(path, 1, "missing size line"))?;
    let stored = if symmetric { entries.iter().filter(|e| e.0 >= e.1).count() } else { entries.len() };
    if stored != declared {
        return Err(Error::parse(path, 2, format!("declared {declared} entries, found {stored}")));
    }
    Ok(Coordinate { nrows, ncols, entries })
}

pub fn read_matrix(reader: impl Read, path: &Path) -> Result<SimilarityMatrix> {
    let c = read_coordinate(reader, path)?;
    if c.nrows != c.ncols {
        return Err(Error::InvalidMatrix(format!("matrix is {}x{}, expected square", c.nrows, c.ncols)));
    }
    SimilarityMatrix::from_triplets(c.nrows, c.entries)
}

pub fn load_matrix(path: &Path) -> Result<SimilarityMatrix> {
    read_matrix(std::fs::File::open(path)?, path)
}

pub fn save_matrix(path: &Path, s: &SimilarityMatrix) -> Result<()> {
    write_matrix(std::io::BufWriter::new(std::fs::File::create(path)?), s)
}
