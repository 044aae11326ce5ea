//! Plain-text model descriptions.
//!
//! One `key = value` pair per line. `#` starts a comment; blank lines are
//! ignored. Keys:
//!
//! | key               | value                                  | default  |
//! |-------------------|----------------------------------------|----------|
//! | `omega_c`         | cavity angular frequency, > 0          | required |
//! | `rwa`             | `true` / `false`                       | `true`   |
//! | `photon_cutoff`   | integer >= 1                           | `1`      |
//! | `atom.<i>.omega`  | transition frequency of atom `i`, > 0  | required |
//! | `atom.<i>.g`      | coupling of atom `i`, >= 0             |          |
//! | `atom.<i>.x`      | position of atom `i` along the axis [m]|          |
//! | `cavity.omega_si` | cavity angular frequency [rad/s]       |          |
//! | `cavity.dipole`   | transition dipole [C m]                |          |
//! | `cavity.volume`   | mode volume [m^3]                      |          |
//!
//! Atoms are numbered from 1 without gaps. Each atom takes exactly one of
//! `g` or `x`; `x` requires all three `cavity.*` keys and yields
//! `g = omega_c * g(x) / omega_si`, i.e. the physical coupling expressed in
//! the same units as `omega_c`. Unknown or repeated keys are errors.

use std::collections::BTreeMap;
use crate::error::{ Error, Result };
use super::{ coupling::PhysicalCavity, AtomParams, CavityModel };

#[derive(Default)]
struct AtomEntry {
    line: usize,
    omega: Option<f64>,
    g: Option<f64>,
    x: Option<f64>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_f64(line: usize, key: &str, value: &str) -> Result<f64> {
    let v: f64 = value
        .parse()
        .map_err(|_| parse_err(line, format!("{key}: '{value}' is not a number")))?;
    if !v.is_finite() {
        return Err(parse_err(line, format!("{key}: value must be finite")));
    }
    Ok(v)
}

fn set_once<T>(slot: &mut Option<T>, value: T, line: usize, key: &str) -> Result<()> {
    if slot.is_some() {
        return Err(parse_err(line, format!("duplicate key '{key}'")));
    }
    *slot = Some(value);
    Ok(())
}

/// Whether `key` names a model-file key.
pub fn is_model_key(key: &str) -> bool {
    match key {
        "omega_c" | "rwa" | "photon_cutoff" | "cavity.omega_si" | "cavity.dipole" | "cavity.volume" => true,
        _ => matches!(
            key.split('.').collect::<Vec<_>>().as_slice(),
            ["atom", i, "omega" | "g" | "x"] if i.parse::<usize>().is_ok_and(|i| i >= 1)
        ),
    }
}

/// Parse a model description.
pub fn parse_model(text: &str) -> Result<CavityModel> {
    let mut omega_c = None;
    let mut rwa = None;
    let mut cutoff = None;
    let mut omega_si = None;
    let mut dipole = None;
    let mut volume = None;
    let mut atoms: BTreeMap<usize, AtomEntry> = BTreeMap::new();
    let mut last_line = 0;

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .map(|(a, b)| (a.trim(), b.trim()))
            .ok_or_else(|| parse_err(line, "expected 'key = value'"))?;
        match key {
            "omega_c" => set_once(&mut omega_c, parse_f64(line, key, value)?, line, key)?,
            "rwa" => {
                let b = match value {
                    "true" => true,
                    "false" => false,
                    _ => return Err(parse_err(line, format!("rwa: '{value}' is not true/false"))),
                };
                set_once(&mut rwa, b, line, key)?
            },
            "photon_cutoff" => {
                let n: usize = value
                    .parse()
                    .map_err(|_| parse_err(line, format!("photon_cutoff: '{value}' is not an integer")))?;
                set_once(&mut cutoff, n, line, key)?
            },
            "cavity.omega_si" => set_once(&mut omega_si, parse_f64(line, key, value)?, line, key)?,
            "cavity.dipole" => set_once(&mut dipole, parse_f64(line, key, value)?, line, key)?,
            "cavity.volume" => set_once(&mut volume, parse_f64(line, key, value)?, line, key)?,
            _ => {
                let parts: Vec<&str> = key.split('.').collect();
                let (idx, field) = match parts.as_slice() {
                    ["atom", i, field] => match i.parse::<usize>() {
                        Ok(i) if i >= 1 => (i, *field),
                        _ => return Err(parse_err(line, format!("bad atom index in '{key}'"))),
                    },
                    _ => return Err(parse_err(line, format!("unknown key '{key}'"))),
                };
                let v = parse_f64(line, key, value)?;
                let entry = atoms.entry(idx).or_insert_with(|| AtomEntry { line, ..Default::default() });
                match field {
                    "omega" => set_once(&mut entry.omega, v, line, key)?,
                    "g" => set_once(&mut entry.g, v, line, key)?,
                    "x" => set_once(&mut entry.x, v, line, key)?,
                    _ => return Err(parse_err(line, format!("unknown key '{key}'"))),
                }
            },
        }
    }

    let omega_c = omega_c.ok_or_else(|| parse_err(last_line, "missing key 'omega_c'"))?;
    if omega_c <= 0.0 {
        return Err(parse_err(last_line, "omega_c must be > 0"));
    }
    let physical = match (omega_si, dipole, volume) {
        (Some(omega_c), Some(dipole), Some(volume)) => Some(PhysicalCavity { omega_c, dipole, volume }),
        (None, None, None) => None,
        _ => return Err(parse_err(last_line, "cavity.omega_si, cavity.dipole and cavity.volume go together")),
    };

    let mut out = Vec::with_capacity(atoms.len());
    for (expected, (&idx, entry)) in (1..).zip(atoms.iter()) {
        if idx != expected {
            return Err(parse_err(entry.line, format!("atom {expected} is missing (found atom {idx})")));
        }
        let omega = entry.omega
            .ok_or_else(|| parse_err(entry.line, format!("atom {idx}: missing omega")))?;
        let atom = match (entry.g, entry.x) {
            (Some(g), None) => AtomParams::new(omega, g),
            (None, Some(x)) => {
                let cav = physical.ok_or_else(|| {
                    parse_err(entry.line, format!("atom {idx}: position needs the cavity.* keys"))
                })?;
                let g = omega_c * cav.coupling(x).map_err(|e| parse_err(entry.line, e.to_string()))?;
                AtomParams { omega, g, position: Some(x) }
            },
            _ => return Err(parse_err(entry.line, format!("atom {idx}: give exactly one of g or x"))),
        };
        out.push(atom);
    }
    CavityModel::new(omega_c, out, cutoff.unwrap_or(1), rwa.unwrap_or(true))
        .map_err(|e| parse_err(last_line, e.to_string()))
}

/// Render a model in the same format. Position-derived couplings are written
/// as plain `g` values.
pub fn write_model(m: &CavityModel) -> String {
    let mut s = format!(
        "omega_c = {:e}\nrwa = {}\nphoton_cutoff = {}\n",
        m.omega_c(), m.rwa(), m.photon_cutoff(),
    );
    for (i, a) in m.atoms().iter().enumerate() {
        s += &format!("atom.{}.omega = {:e}\natom.{}.g = {:e}\n", i + 1, a.omega, i + 1, a.g);
    }
    s
}
