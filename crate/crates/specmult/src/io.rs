//! File formats: line-oriented text for symbols and group symbols (values
//! round-trip bit-exact), and a binary kernel table export.
//!
//! The grammar is documented in docs/formats.md.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::GroupSymbol;
use crate::kernel::GridKernel;
use crate::linalg::CMatrix;
use crate::manifold::{enumerate_partition, ManifoldId, Partition, Point, QuadratureGrid};
use crate::symbol::Symbol;

pub const SYMBOL_FORMAT_VERSION: u32 = 1;
pub const KERNEL_MAGIC: &[u8; 4] = b"SPMK";
pub const KERNEL_FORMAT_VERSION: u32 = 1;

/// 17 significant digits: round-trips every f64 bit-exactly.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_f64(tok: &str, line_no: usize) -> Result<f64> {
    tok.parse::<f64>().map_err(|_| {
        Error::Format(format!("line {line_no}: expected a number, found '{tok}'"))
    })
}

fn parse_usize(tok: &str, line_no: usize) -> Result<usize> {
    tok.parse::<usize>().map_err(|_| {
        Error::Format(format!("line {line_no}: expected a non-negative integer, found '{tok}'"))
    })
}

fn matrix_line(m: &CMatrix, row: usize) -> String {
    (0..m.cols())
        .map(|c| {
            let v = m.at(row, c);
            format!("{} {}", fmt_f64(v.re), fmt_f64(v.im))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_matrix_row(line: &str, cols: usize, line_no: usize) -> Result<Vec<Complex64>> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len() != 2 * cols {
        return Err(Error::Format(format!(
            "line {line_no}: expected {} values for a row of {cols} complex entries, found {}",
            2 * cols,
            toks.len()
        )));
    }
    (0..cols)
        .map(|c| {
            Ok(Complex64::new(
                parse_f64(toks[2 * c], line_no)?,
                parse_f64(toks[2 * c + 1], line_no)?,
            ))
        })
        .collect()
}

/// Serialize a symbol together with the partition header needed to rebuild it.
pub fn write_symbol(symbol: &Symbol, cutoff: f64) -> String {
    let p = symbol.partition();
    let mut out = String::new();
    out.push_str(&format!("specmult-symbol {SYMBOL_FORMAT_VERSION}\n"));
    out.push_str(&format!("manifold {}\n", p.manifold().name()));
    out.push_str(&format!("n {}\n", p.dim_n()));
    out.push_str(&format!("nu {}\n", fmt_f64(p.order_nu())));
    out.push_str(&format!("cutoff {}\n", fmt_f64(cutoff)));
    out.push_str(&format!("levels {}\n", p.num_levels()));
    for (i, (level, m)) in p.levels().iter().zip(symbol.matrices()).enumerate() {
        out.push_str(&format!(
            "level {i} lambda {} dim {}\n",
            fmt_f64(level.lambda()),
            level.dim()
        ));
        for row in 0..m.rows() {
            out.push_str(&matrix_line(m, row));
            out.push('\n');
        }
    }
    out
}

/// Parse a symbol file; the partition is rebuilt from the header and the
/// per-level records are validated against it.
pub fn parse_symbol(text: &str) -> Result<Symbol> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let mut next_line = || {
        lines
            .next()
            .ok_or_else(|| Error::Format("unexpected end of file".into()))
    };

    let (no, header) = next_line()?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 || toks[0] != "specmult-symbol" {
        return Err(Error::Format(format!("line {no}: expected 'specmult-symbol <version>'")));
    }
    if parse_usize(toks[1], no)? != SYMBOL_FORMAT_VERSION as usize {
        return Err(Error::Format(format!("line {no}: unsupported format version {}", toks[1])));
    }

    let mut field = |key: &str| -> Result<String> {
        let (no, line) = next_line()?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 || toks[0] != key {
            return Err(Error::Format(format!("line {no}: expected '{key} <value>'")));
        }
        Ok(toks[1].to_string())
    };

    let manifold = ManifoldId::parse(&field("manifold")?)?;
    let n = field("n")?;
    let nu = parse_f64(&field("nu")?, 0)?;
    let cutoff = parse_f64(&field("cutoff")?, 0)?;
    let levels = parse_usize(&field("levels")?, 0)?;

    let partition = Arc::new(enumerate_partition(manifold, cutoff)?);
    if partition.dim_n().to_string() != n {
        return Err(Error::Format(format!(
            "header dimension {n} does not match manifold {}",
            manifold.name()
        )));
    }
    if (partition.order_nu() - nu).abs() > 1e-12 {
        return Err(Error::Format(format!("header order {nu} does not match the backend")));
    }
    if partition.num_levels() != levels {
        return Err(Error::Format(format!(
            "header declares {levels} levels, cutoff {cutoff} yields {}",
            partition.num_levels()
        )));
    }

    let mut mats = Vec::with_capacity(levels);
    let mut last_lambda = f64::NEG_INFINITY;
    for i in 0..levels {
        let (no, line) = next_line()?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 6 || toks[0] != "level" || toks[2] != "lambda" || toks[4] != "dim" {
            return Err(Error::Format(format!(
                "line {no}: expected 'level <i> lambda <v> dim <d>'"
            )));
        }
        if parse_usize(toks[1], no)? != i {
            return Err(Error::Format(format!("line {no}: level records out of order")));
        }
        let lambda = parse_f64(toks[3], no)?;
        let dim = parse_usize(toks[5], no)?;
        if lambda <= last_lambda {
            return Err(Error::Format(format!("line {no}: eigenvalues must increase strictly")));
        }
        last_lambda = lambda;
        let level = &partition.levels()[i];
        if (level.lambda() - lambda).abs() > 1e-12 || level.dim() != dim {
            return Err(Error::Format(format!(
                "line {no}: level {i} is ({lambda}, {dim}), partition has ({}, {})",
                level.lambda(),
                level.dim()
            )));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for _ in 0..dim {
            let (no, line) = next_line()?;
            data.extend(parse_matrix_row(line, dim, no)?);
        }
        mats.push(CMatrix::new(dim, dim, data)?);
    }
    if let Some((no, line)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(Error::Format(format!("line {no}: trailing content '{line}'")));
    }
    Symbol::from_matrices(partition, mats)
}

/// Serialize a group symbol; rep keys are the doubled spin.
pub fn write_group_symbol(tau: &GroupSymbol) -> String {
    let mut out = String::new();
    out.push_str(&format!("specmult-group-symbol {SYMBOL_FORMAT_VERSION}\n"));
    out.push_str("manifold su2\n");
    out.push_str(&format!("reps {}\n", tau.len()));
    for (two_l, m) in tau.reps() {
        out.push_str(&format!("rep {two_l} dim {}\n", m.rows()));
        for row in 0..m.rows() {
            out.push_str(&matrix_line(m, row));
            out.push('\n');
        }
    }
    out
}

pub fn parse_group_symbol(text: &str) -> Result<GroupSymbol> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let mut next_line = || {
        lines
            .next()
            .ok_or_else(|| Error::Format("unexpected end of file".into()))
    };

    let (no, header) = next_line()?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 || toks[0] != "specmult-group-symbol" {
        return Err(Error::Format(format!(
            "line {no}: expected 'specmult-group-symbol <version>'"
        )));
    }
    if parse_usize(toks[1], no)? != SYMBOL_FORMAT_VERSION as usize {
        return Err(Error::Format(format!("line {no}: unsupported format version {}", toks[1])));
    }
    let (no, line) = next_line()?;
    if line.trim() != "manifold su2" {
        return Err(Error::Format(format!("line {no}: expected 'manifold su2'")));
    }
    let (no, line) = next_line()?;
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len() != 2 || toks[0] != "reps" {
        return Err(Error::Format(format!("line {no}: expected 'reps <count>'")));
    }
    let reps = parse_usize(toks[1], no)?;

    let mut tau = GroupSymbol::new();
    for _ in 0..reps {
        let (no, line) = next_line()?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 4 || toks[0] != "rep" || toks[2] != "dim" {
            return Err(Error::Format(format!("line {no}: expected 'rep <2l> dim <d>'")));
        }
        let two_l = parse_usize(toks[1], no)? as u32;
        let dim = parse_usize(toks[3], no)?;
        if dim != (two_l + 1) as usize {
            return Err(Error::Format(format!(
                "line {no}: rep 2l={two_l} must have dimension {}, found {dim}",
                two_l + 1
            )));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for _ in 0..dim {
            let (no, line) = next_line()?;
            data.extend(parse_matrix_row(line, dim, no)?);
        }
        tau.insert(two_l, CMatrix::new(dim, dim, data)?)?;
    }
    if let Some((no, line)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(Error::Format(format!("line {no}: trailing content '{line}'")));
    }
    Ok(tau)
}

fn point_coords(p: &Point) -> Vec<f64> {
    match p {
        Point::Torus(x) => x.clone(),
        Point::Euler { alpha, beta, gamma } => vec![*alpha, *beta, *gamma],
    }
}

/// Binary kernel table; byte layout documented in docs/formats.md.
pub fn write_kernel_binary(k: &GridKernel) -> Vec<u8> {
    let grid = k.grid();
    let name = grid.manifold().name();
    let coord_dim = match grid.manifold() {
        ManifoldId::Torus(n) => n as usize,
        ManifoldId::Su2 => 3,
    };
    let n = grid.len();
    let mut out = Vec::with_capacity(32 + n * (coord_dim + 1) * 8 + n * n * 16);
    out.extend_from_slice(KERNEL_MAGIC);
    out.extend_from_slice(&KERNEL_FORMAT_VERSION.to_le_bytes());
    out.push(name.len() as u8);
    out.extend_from_slice(name.as_bytes());
    out.extend_from_slice(&(coord_dim as u32).to_le_bytes());
    out.extend_from_slice(&(n as u64).to_le_bytes());
    for node in grid.nodes() {
        for c in point_coords(node) {
            out.extend_from_slice(&c.to_le_bytes());
        }
    }
    for w in grid.weights() {
        out.extend_from_slice(&w.to_le_bytes());
    }
    for v in k.values() {
        out.extend_from_slice(&v.re.to_le_bytes());
        out.extend_from_slice(&v.im.to_le_bytes());
    }
    out
}

/// Parsed contents of a binary kernel table.
pub struct KernelBinary {
    pub manifold: ManifoldId,
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    pub values: Vec<Complex64>,
}

pub fn read_kernel_binary(bytes: &[u8]) -> Result<KernelBinary> {
    let mut pos = 0usize;
    let take = |pos: &mut usize, n: usize| -> Result<&[u8]> {
        if *pos + n > bytes.len() {
            return Err(Error::Format("kernel file truncated".into()));
        }
        let s = &bytes[*pos..*pos + n];
        *pos += n;
        Ok(s)
    };
    if take(&mut pos, 4)? != KERNEL_MAGIC {
        return Err(Error::Format("bad kernel magic".into()));
    }
    let version = u32::from_le_bytes(take(&mut pos, 4)?.try_into().unwrap());
    if version != KERNEL_FORMAT_VERSION {
        return Err(Error::Format(format!("unsupported kernel format version {version}")));
    }
    let name_len = take(&mut pos, 1)?[0] as usize;
    let name = std::str::from_utf8(take(&mut pos, name_len)?)
        .map_err(|_| Error::Format("bad manifold name".into()))?
        .to_string();
    let manifold = ManifoldId::parse(&name)?;
    let coord_dim = u32::from_le_bytes(take(&mut pos, 4)?.try_into().unwrap()) as usize;
    let n = u64::from_le_bytes(take(&mut pos, 8)?.try_into().unwrap()) as usize;
    let f64_at = |pos: &mut usize| -> Result<f64> {
        Ok(f64::from_le_bytes(take(pos, 8)?.try_into().unwrap()))
    };
    let mut nodes = Vec::with_capacity(n);
    for _ in 0..n {
        nodes.push((0..coord_dim).map(|_| f64_at(&mut pos)).collect::<Result<Vec<_>>>()?);
    }
    let weights = (0..n).map(|_| f64_at(&mut pos)).collect::<Result<Vec<_>>>()?;
    let mut values = Vec::with_capacity(n * n);
    for _ in 0..n * n {
        let re = f64_at(&mut pos)?;
        let im = f64_at(&mut pos)?;
        values.push(Complex64::new(re, im));
    }
    if pos != bytes.len() {
        return Err(Error::Format("trailing bytes in kernel file".into()));
    }
    Ok(KernelBinary { manifold, nodes, weights, values })
}

/// Convenience: cutoff that regenerates the partition of a serialized symbol.
pub fn partition_cutoff(partition: &Partition) -> f64 {
    partition.max_lambda()
}

/// Grid description for error messages.
pub fn grid_summary(grid: &QuadratureGrid) -> String {
    format!("{} nodes, band {}", grid.len(), grid.band_limit())
}
