//! Reference values shipped with the binary.

use std::str::FromStr;

use planar_atom::{Atom, PotentialKind};

const DATA: &str = include_str!("../data/paper_tables.v1");
pub const FIXTURE_VERSION: &str = "v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    Energies,
    Radii,
    EllStates,
    Ratios,
}

impl TableKind {
    pub fn token(self) -> &'static str {
        match self {
            TableKind::Energies => "energies",
            TableKind::Radii => "radii",
            TableKind::EllStates => "ell-states",
            TableKind::Ratios => "ratios",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    EnergyRy,
    MeanRBohr,
    RadiusRatio,
}

impl Quantity {
    pub fn token(self) -> &'static str {
        match self {
            Quantity::EnergyRy => "energy_ry",
            Quantity::MeanRBohr => "mean_r_bohr",
            Quantity::RadiusRatio => "radius_ratio",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fixture {
    pub table: TableKind,
    pub atom: Atom,
    pub potential: PotentialKind,
    pub lambda: Option<f64>,
    pub ell: u32,
    pub nodes: usize,
    pub quantity: Quantity,
    pub value: f64,
}

/// All rows in file order.
pub fn all() -> Vec<Fixture> {
    parse(DATA).expect("embedded fixture file is well formed")
}

pub fn table(kind: TableKind) -> Vec<Fixture> {
    all().into_iter().filter(|f| f.table == kind).collect()
}

fn parse(text: &str) -> Result<Vec<Fixture>, String> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |what: &str| format!("line {}: bad {what}: `{line}`", lineno + 1);
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [table, atom, potential, lambda, ell, nodes, quantity, value] = fields[..] else {
            return Err(bad("field count"));
        };
        out.push(Fixture {
            table: match table {
                "energies" => TableKind::Energies,
                "radii" => TableKind::Radii,
                "ell-states" => TableKind::EllStates,
                "ratios" => TableKind::Ratios,
                _ => return Err(bad("table")),
            },
            atom: Atom::from_str(atom).map_err(|_| bad("atom"))?,
            potential: PotentialKind::from_str(potential).map_err(|_| bad("potential"))?,
            lambda: match lambda {
                "-" => None,
                l => Some(l.parse().map_err(|_| bad("lambda"))?),
            },
            ell: ell.parse().map_err(|_| bad("ell"))?,
            nodes: nodes.parse().map_err(|_| bad("nodes"))?,
            quantity: match quantity {
                "energy_ry" => Quantity::EnergyRy,
                "mean_r_bohr" => Quantity::MeanRBohr,
                "radius_ratio" => Quantity::RadiusRatio,
                _ => return Err(bad("quantity")),
            },
            value: value.parse().map_err(|_| bad("value"))?,
        });
    }
    Ok(out)
}
