//! Deterministic spectrum/doublet tables.
//!
//! Every solver feeds the same row shape so the CLI can emit one schema for
//! all three geometries. The CSV form is versioned by a header comment and
//! contains no timestamps or machine-specific fields: identical inputs
//! produce byte-identical files. Floats are printed with `{:.12e}`, which
//! round-trips `f64` for every value that occurs here.
//!
//! Column conventions:
//!
//! * `kappa` is the 3D relativistic angular quantum number; empty for 1d/2d
//!   rows.
//! * `m_j_twice` is `2 m_j`; empty for 3d rows (where `kappa` already fixes
//!   `j`).
//! * `partner_kappa` holds the partner *channel label*: the partner `kappa`
//!   for 3d rows, the partner `2 m_j` for 2d rows, and the mirror sector
//!   `-2 m_j` for 1d rows. Empty when the row is a plain spectrum entry or
//!   the channel is self-conjugate.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::axial1d::{Axial1DSolution, Relation};
use crate::planar2d::{PlanarDoubletPair, PlanarSolution};
use crate::radial3d::{DoubletPair, RadialSolution};
use crate::symmetry::Branch;

pub const TABLE_SCHEMA: &str = "spinsym doublet table v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dimension {
    #[serde(rename = "3d")]
    Radial3d,
    #[serde(rename = "1d")]
    Axial1d,
    #[serde(rename = "2d")]
    Planar2d,
}

impl Dimension {
    fn label(self) -> &'static str {
        match self {
            Dimension::Radial3d => "3d",
            Dimension::Axial1d => "1d",
            Dimension::Planar2d => "2d",
        }
    }
}

fn branch_label(branch: Branch) -> &'static str {
    match branch {
        Branch::Spin => "spin",
        Branch::Pseudospin => "pseudospin",
    }
}

/// One table row: a bound level, optionally matched with its degeneracy
/// partner.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DoubletRow {
    pub dimension: Dimension,
    pub branch: String,
    pub kappa: Option<i32>,
    pub mj_twice: Option<i32>,
    pub nodes: usize,
    pub energy: f64,
    pub partner_kappa: Option<i32>,
    pub splitting: Option<f64>,
}

impl DoubletRow {
    pub fn radial_level(branch: Branch, s: &RadialSolution) -> Self {
        Self {
            dimension: Dimension::Radial3d,
            branch: branch_label(branch).into(),
            kappa: Some(s.kappa),
            mj_twice: None,
            nodes: s.nodes,
            energy: s.energy,
            partner_kappa: None,
            splitting: None,
        }
    }

    pub fn radial_pair(branch: Branch, p: &DoubletPair) -> Self {
        Self {
            dimension: Dimension::Radial3d,
            branch: branch_label(branch).into(),
            kappa: Some(p.kappa),
            mj_twice: None,
            nodes: p.nodes,
            energy: p.energy,
            partner_kappa: Some(p.partner_kappa),
            splitting: Some(p.splitting()),
        }
    }

    pub fn axial_level(relation: Relation, s: &Axial1DSolution) -> Self {
        Self {
            dimension: Dimension::Axial1d,
            branch: branch_label(relation.branch()).into(),
            kappa: None,
            mj_twice: Some(s.mj_twice),
            nodes: s.nodes,
            energy: s.energy,
            partner_kappa: None,
            splitting: None,
        }
    }

    /// A 1D level together with its mirror sector. The two sector operators
    /// are conjugate, so the partner energy is the same number and the
    /// splitting is exactly zero — recorded as such rather than re-measured.
    pub fn axial_pair(relation: Relation, s: &Axial1DSolution) -> Self {
        Self {
            partner_kappa: Some(-s.mj_twice),
            splitting: Some(0.0),
            ..Self::axial_level(relation, s)
        }
    }

    pub fn planar_level(branch: Branch, s: &PlanarSolution) -> Self {
        Self {
            dimension: Dimension::Planar2d,
            branch: branch_label(branch).into(),
            kappa: None,
            mj_twice: Some(s.mj_twice),
            nodes: s.nodes,
            energy: s.energy,
            partner_kappa: None,
            splitting: None,
        }
    }

    pub fn planar_pair(branch: Branch, p: &PlanarDoubletPair) -> Self {
        Self {
            dimension: Dimension::Planar2d,
            branch: branch_label(branch).into(),
            kappa: None,
            mj_twice: Some(p.mj_twice),
            nodes: p.nodes,
            energy: p.energy,
            partner_kappa: Some(p.partner_mj_twice),
            splitting: Some(p.splitting()),
        }
    }
}

fn opt_int(v: Option<i32>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn opt_float(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.12e}")).unwrap_or_default()
}

/// Write the versioned CSV table.
pub fn write_csv<W: Write>(rows: &[DoubletRow], out: &mut W) -> io::Result<()> {
    writeln!(out, "# {TABLE_SCHEMA}")?;
    writeln!(
        out,
        "dimension,branch,kappa,m_j_twice,nodes,energy,partner_kappa,splitting"
    )?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{:.12e},{},{}",
            r.dimension.label(),
            r.branch,
            opt_int(r.kappa),
            opt_int(r.mj_twice),
            r.nodes,
            r.energy,
            opt_int(r.partner_kappa),
            opt_float(r.splitting),
        )?;
    }
    Ok(())
}

pub fn csv_string(rows: &[DoubletRow]) -> String {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("CSV content is ASCII")
}

/// JSON mirror: schema tag, caller-supplied metadata (grid, window,
/// tolerances, scenario), and the full row list.
pub fn table_json(rows: &[DoubletRow], metadata: serde_json::Value) -> serde_json::Value {
    serde_json::json!({
        "schema": TABLE_SCHEMA,
        "metadata": metadata,
        "rows": rows,
    })
}
