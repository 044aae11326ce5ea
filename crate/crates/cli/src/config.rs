use std::{ fs, path::Path };
use anyhow::{ bail, Context, Result };
use tavis::{
    darkstates::analytic::DEGENERATE_TOL,
    model::{ is_model_key, parse_model },
    protocol::{ GridAxis, ZSJumpConfig },
    CavityModel,
};

/// One `key=value` override.
#[derive(Clone, Debug, PartialEq)]
pub struct Override {
    pub key: String,
    pub value: String,
}

pub fn parse_override(s: &str) -> Result<Override, String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got '{s}'"))?;
    let (key, value) = (k.trim(), v.trim());
    if key.is_empty() || value.is_empty() {
        return Err(format!("expected key=value, got '{s}'"));
    }
    Ok(Override { key: key.into(), value: value.into() })
}

/// `a:b:n` grid range.
pub fn parse_range(s: &str) -> Result<GridAxis, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, n] = parts.as_slice() else {
        return Err(format!("expected lo:hi:points, got '{s}'"));
    };
    let lo: f64 = a.parse().map_err(|_| format!("'{a}' is not a number"))?;
    let hi: f64 = b.parse().map_err(|_| format!("'{b}' is not a number"))?;
    let n: usize = n.parse().map_err(|_| format!("'{n}' is not a point count"))?;
    GridAxis::new(lo, hi, n).map_err(|e| e.to_string())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Model file with overrides applied: each override replaces every line
/// that sets the same key, or is appended.
pub fn load_model(path: &Path, overrides: &[Override]) -> Result<CavityModel> {
    let mut text = read(path)?;
    for o in overrides {
        if !is_model_key(&o.key) {
            bail!("unknown key '{}'", o.key);
        }
        text = text
            .lines()
            .filter(|line| {
                let content = line.split('#').next().unwrap_or("");
                content.split_once('=').map(|(k, _)| k.trim()) != Some(o.key.as_str())
            })
            .map(|line| format!("{line}\n"))
            .collect();
        text += &format!("{} = {}\n", o.key, o.value);
    }
    parse_model(&text).with_context(|| format!("invalid model {}", path.display()))
}

const PROTOCOL_KEYS: [&str; 6] = ["omega_c", "omega_a", "g1", "g2", "ds", "dg"];

/// Protocol parameters: defaults, then a two-atom model file if given, then
/// overrides.
pub fn protocol_config(model: Option<&Path>, overrides: &[Override]) -> Result<ZSJumpConfig> {
    let mut cfg = ZSJumpConfig::default();
    if let Some(path) = model {
        let m = parse_model(&read(path)?).with_context(|| format!("invalid model {}", path.display()))?;
        let [a, b] = m.atoms() else {
            bail!("the protocol needs a two-atom model, got {} atoms", m.n_atoms());
        };
        if (a.omega - b.omega).abs() > DEGENERATE_TOL * m.omega_c() {
            bail!("the protocol needs equal unshifted atomic frequencies");
        }
        cfg.omega_c = m.omega_c();
        cfg.omega_a = a.omega;
        cfg.g1 = a.g;
        cfg.g2 = b.g;
    }
    for o in overrides {
        let slot = match o.key.as_str() {
            "omega_c" => &mut cfg.omega_c,
            "omega_a" => &mut cfg.omega_a,
            "g1" => &mut cfg.g1,
            "g2" => &mut cfg.g2,
            "ds" => &mut cfg.ds,
            "dg" => &mut cfg.dg,
            _ => bail!("unknown key '{}' (expected one of {})", o.key, PROTOCOL_KEYS.join(", ")),
        };
        let v: f64 = o.value.parse().with_context(|| format!("{}: '{}' is not a number", o.key, o.value))?;
        if !v.is_finite() {
            bail!("{}: value must be finite", o.key);
        }
        *slot = v;
    }
    cfg.validate()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        let r = parse_range("0:0.01:50").unwrap();
        assert_eq!((r.lo, r.hi, r.points), (0.0, 0.01, 50));
        assert!(parse_range("0:0.01").is_err());
        assert!(parse_range("0:x:3").is_err());
        assert!(parse_range("0.01:0:3").is_err());
        assert!(parse_range("0:0:1").is_ok());
    }

    #[test]
    fn overrides() {
        assert_eq!(parse_override("ds = 0.5").unwrap(), Override { key: "ds".into(), value: "0.5".into() });
        assert!(parse_override("ds").is_err());
        assert!(parse_override("=1").is_err());
        let err = protocol_config(None, &[parse_override("dz=1").unwrap()]).unwrap_err();
        assert!(err.to_string().contains("'dz'"));
        let cfg = protocol_config(None, &[parse_override("ds=0.003").unwrap()]).unwrap();
        assert_eq!(cfg.ds, 0.003);
    }
}
