//! Geometry files and result tables.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::error::{Error, Result};
use crate::series::TruncatedSeries;
use crate::toric::{BraneSpec, ToricCY3};
use crate::Rational;

/// On-disk geometry description. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryFile {
    pub name: String,
    pub k: usize,
    pub r: usize,
    pub charge_vectors: Vec<Vec<i64>>,
    pub max_cones: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rays: Option<Vec<[i64; 3]>>,
    pub branes: Vec<BraneSpec>,
}

impl GeometryFile {
    pub fn from_model(g: &ToricCY3, branes: &[BraneSpec]) -> Self {
        Self {
            name: g.name.clone(),
            k: g.k(),
            r: g.r(),
            charge_vectors: g.charge.clone(),
            max_cones: g.max_cones.clone(),
            rays: g.rays.clone(),
            branes: branes.to_vec(),
        }
    }

    /// Builds and validates the model and its branes.
    pub fn into_model(self) -> Result<(ToricCY3, Vec<BraneSpec>)> {
        if self.charge_vectors.len() != self.k {
            return Err(Error::Geometry(format!(
                "{} charge vectors given, k = {}",
                self.charge_vectors.len(),
                self.k
            )));
        }
        if let Some(row) = self.charge_vectors.iter().position(|row| row.len() != self.r) {
            return Err(Error::Geometry(format!("charge vector {} does not have r = {} entries", row + 1, self.r)));
        }
        let g = ToricCY3::new(self.name, self.charge_vectors, self.max_cones, self.rays);
        let report = g.validate_geometry();
        if !report.is_ok() {
            return Err(Error::Geometry(format!("invalid geometry {}:\n{report}", g.name)));
        }
        for b in &self.branes {
            let report = g.validate(b);
            if !report.is_ok() {
                return Err(Error::Geometry(format!("invalid brane {}:\n{report}", b.label)));
            }
        }
        Ok((g, self.branes))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("geometry serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Io(format!("geometry file: {e}")))
    }
}

/// Reads and validates a geometry file.
pub fn load_geometry(path: &Path) -> Result<(ToricCY3, Vec<BraneSpec>)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    GeometryFile::from_json(&text)?.into_model()
}

/// `catalog:NAME` (including `catalog:Ym?m=N`) or a path to a geometry file.
pub fn resolve_geometry(spec: &str) -> Result<(ToricCY3, Vec<BraneSpec>)> {
    match spec.strip_prefix("catalog:") {
        Some(name) => {
            let g = catalog::geometry(name)
                .ok_or_else(|| Error::Io(format!("unknown catalog geometry {name}")))?;
            let branes = catalog::branes(&g);
            Ok((g, branes))
        }
        None => load_geometry(Path::new(spec)),
    }
}

/// `p/q` in lowest terms, or `p` for integers.
pub fn render_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableMetadata {
    pub geometry: String,
    pub phase: Option<String>,
    pub framing: Option<i64>,
    pub order: i64,
    pub grading: Vec<i64>,
    pub pipeline: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub w: i64,
    pub d: Vec<i64>,
    pub value: String,
}

/// Coefficient table of one series, rows in exponent order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultTable {
    pub metadata: TableMetadata,
    pub rows: Vec<TableRow>,
}

impl ResultTable {
    pub fn from_series(metadata: TableMetadata, s: &TruncatedSeries) -> Self {
        let mut rows: Vec<TableRow> = s
            .terms()
            .map(|(e, c)| TableRow { w: e.w, d: e.d.clone(), value: render_rational(c) })
            .collect();
        rows.sort_by(|a, b| (a.w, &a.d).cmp(&(b.w, &b.d)));
        Self { metadata, rows }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    pub fn to_csv(&self) -> String {
        let k = self.metadata.grading.len().saturating_sub(1);
        let mut out = String::from("w");
        for a in 1..=k {
            let _ = write!(out, ",d{a}");
        }
        out.push_str(",value\n");
        for row in &self.rows {
            let _ = write!(out, "{}", row.w);
            for d in &row.d {
                let _ = write!(out, ",{d}");
            }
            let _ = writeln!(out, ",{}", row.value);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    #[test]
    fn catalog_resolution() {
        let (g, branes) = resolve_geometry("catalog:KP2").unwrap();
        assert_eq!(g.name, "KP2");
        let labels: Vec<&str> = branes.iter().map(|b| b.label.as_str()).collect();
        assert_eq!(labels, ["I", "II", "III"]);
        let (y, _) = resolve_geometry("catalog:Ym?m=3").unwrap();
        assert_eq!(y.k(), 3);
        assert!(matches!(resolve_geometry("catalog:nothing"), Err(Error::Io(_))));
    }

    #[test]
    fn file_round_trip() {
        for g in catalog::all_geometries(4) {
            let branes = catalog::branes(&g);
            let json = GeometryFile::from_model(&g, &branes).to_json();
            let (g2, b2) = GeometryFile::from_json(&json).unwrap().into_model().unwrap();
            assert_eq!((g2, b2), (g, branes));
        }
    }

    #[test]
    fn bad_cone_index() {
        let g = catalog::conifold();
        let mut file = GeometryFile::from_model(&g, &[]);
        file.max_cones[0][0] = 0;
        assert!(matches!(file.into_model(), Err(Error::Geometry(_))));
    }

    #[test]
    fn rational_rendering() {
        assert_eq!(render_rational(&ratio(6, -4)), "-3/2");
        assert_eq!(render_rational(&ratio(4, 2)), "2");
    }
}
