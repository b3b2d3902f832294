//! Resolving command-line and config references to graphs.
//!
//! A source graph is named by a catalog name (`C(5)`, `2*Kdd(3)`), a
//! graph6 string, or a file whose first non-empty line is graph6. A
//! constraint graph is a catalog name, an inline matrix `rows:01,11`, or a
//! file in the 0/1 matrix format.

use std::fs;
use std::path::Path;

use homcert::graph::{catalog, parse_constraint, parse_graph6};
use homcert::{ConstraintGraph, Graph};

use crate::HarnessError;

pub fn load_graph(spec: &str) -> Result<Graph, HarnessError> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = read(path)?;
        let line = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty())
            .ok_or_else(|| HarnessError::Input(format!("{spec}: no graph6 line")))?;
        return Ok(parse_graph6(line)?);
    }
    if let Ok(item) = catalog(spec) {
        return Ok(item.into_graph()?);
    }
    parse_graph6(spec).map_err(|e| HarnessError::Input(format!("`{spec}` is neither a catalog graph nor graph6: {e}")))
}

/// Every graph6 line of a file.
pub fn load_graph6_file(path: &Path) -> Result<Vec<Graph>, HarnessError> {
    read(path)?
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| parse_graph6(l).map_err(|e| HarnessError::Input(format!("{}: {e}", path.display()))))
        .collect()
}

/// The constraint graph and the number of isolated vertices stripped from it.
pub fn load_constraint(spec: &str) -> Result<(ConstraintGraph, usize), HarnessError> {
    if let Some(rows) = spec.strip_prefix("rows:") {
        let rows: Vec<&str> = rows.split(',').map(str::trim).collect();
        let text = format!("{}\n{}", rows.len(), rows.join("\n"));
        let n = parse_constraint(&text)?;
        return Ok((n.graph, n.stripped));
    }
    let path = Path::new(spec);
    if path.is_file() {
        let n = parse_constraint(&read(path)?).map_err(|e| HarnessError::Input(format!("{spec}: {e}")))?;
        return Ok((n.graph, n.stripped));
    }
    Ok((catalog(spec)?.into_constraint()?, 0))
}

/// Inline identifier that [`load_constraint`] maps back to `h`.
pub fn constraint_id(h: &ConstraintGraph) -> String {
    let rows: Vec<String> = (0..h.order())
        .map(|u| (0..h.order()).map(|v| if h.adjacent(u, v) { '1' } else { '0' }).collect())
        .collect();
    format!("rows:{}", rows.join(","))
}

fn read(path: &Path) -> Result<String, HarnessError> {
    fs::read_to_string(path).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))
}
