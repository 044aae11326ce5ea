//! Real roots of monic cubics `x^3 + A x^2 + B x + C`.

use std::f64::consts::TAU;
use crate::error::{ Error, Result };

// slack on |cos 3theta| <= 1 before declaring complex roots
const TRIG_SLACK: f64 = 1e-6;

/// The three real roots of `x^3 + a x^2 + b x + c`, ascending.
///
/// Uses the trigonometric form of the depressed cubic followed by Newton
/// polishing. Fails when the cubic has a complex-conjugate pair beyond
/// rounding slack.
pub fn cubic_roots(a: f64, b: f64, c: f64) -> Result<[f64; 3]> {
    if !(a.is_finite() && b.is_finite() && c.is_finite()) {
        return Err(Error::NonFinite("cubic coefficients"));
    }
    let shift = a / 3.0;
    let p = b - a * shift;
    let q = 2.0 * shift * shift * shift - shift * b + c;
    let scale = a.abs().max(b.abs().sqrt()).max(c.abs().cbrt());
    let discriminant = -(4.0 * p * p * p + 27.0 * q * q);

    let mut roots = if p >= -f64::EPSILON * scale * scale * 16.0 {
        // p ~ 0: only a triple root is real-consistent
        if q.abs() > 1e3 * f64::EPSILON * scale.powi(3).max(f64::MIN_POSITIVE) {
            return Err(Error::ComplexRoots { discriminant });
        }
        [-shift; 3]
    } else {
        let r = (-p / 3.0).sqrt();
        let cos3 = -q / (2.0 * r * r * r);
        if cos3.abs() > 1.0 + TRIG_SLACK {
            return Err(Error::ComplexRoots { discriminant });
        }
        let theta = cos3.clamp(-1.0, 1.0).acos() / 3.0;
        [0.0, 1.0, 2.0].map(|k| 2.0 * r * (theta - TAU * k / 3.0).cos() - shift)
    };
    for x in roots.iter_mut() {
        *x = polish(*x, a, b, c);
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

fn eval(x: f64, a: f64, b: f64, c: f64) -> (f64, f64) {
    let f = ((x + a) * x + b) * x + c;
    let df = (3.0 * x + 2.0 * a) * x + b;
    (f, df)
}

fn polish(mut x: f64, a: f64, b: f64, c: f64) -> f64 {
    for _ in 0..3 {
        let (f, df) = eval(x, a, b, c);
        if f == 0.0 || df == 0.0 {
            break;
        }
        let next = x - f / df;
        if eval(next, a, b, c).0.abs() < f.abs() {
            x = next;
        } else {
            break;
        }
    }
    x
}

/// Residual `|r^3 + A r^2 + B r + C|`.
pub fn cubic_residual(r: f64, a: f64, b: f64, c: f64) -> f64 {
    eval(r, a, b, c).0.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factored_cubic() {
        let r = cubic_roots(-6.0, 11.0, -6.0).unwrap();
        for (x, e) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((x - e).abs() < 1e-12, "{r:?}");
        }
    }

    #[test]
    fn triple_root_at_zero() {
        assert_eq!(cubic_roots(0.0, 0.0, 0.0).unwrap(), [0.0; 3]);
        let r = cubic_roots(-3.0, 3.0, -1.0).unwrap();
        for x in r {
            assert!((x - 1.0).abs() < 1e-5);
        }
    }

    #[test]
    fn double_root() {
        // (x-1)^2 (x+2) = x^3 - 3x + 2
        let r = cubic_roots(0.0, -3.0, 2.0).unwrap();
        assert!((r[0] + 2.0).abs() < 1e-12);
        assert!((r[1] - 1.0).abs() < 1e-7 && (r[2] - 1.0).abs() < 1e-7);
    }

    #[test]
    fn complex_pair_rejected() {
        // (x-1)(x^2+1)
        assert!(matches!(cubic_roots(-1.0, 1.0, -1.0), Err(Error::ComplexRoots { .. })));
        assert!(matches!(cubic_roots(0.0, 0.0, 1.0), Err(Error::ComplexRoots { .. })));
        assert!(cubic_roots(f64::NAN, 0.0, 0.0).is_err());
    }

    #[test]
    fn residual_bound() {
        for (a, b, c) in [(-6.0, 11.0, -6.0), (-3.0, 2.9, -0.9), (-3.02, 3.0398, -1.0198)] {
            if let Ok(r) = cubic_roots(a, b, c) {
                for x in r {
                    assert!(cubic_residual(x, a, b, c) <= 1e-8 * c.abs().max(1.0));
                }
            }
        }
    }
}
