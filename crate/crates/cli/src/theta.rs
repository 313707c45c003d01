//! Angles written either as decimal radians or as multiples of π.

use std::f64::consts::{PI, TAU};

fn parse_factor(s: &str) -> Option<f64> {
    let k: f64 = s.trim().parse().ok()?;
    k.is_finite().then_some(k)
}

/// Accepts `1.25`, `pi`, `pi/K`, `pi*K`, `K*pi` and `Kpi`, optionally with a
/// leading minus sign. `K` is a decimal number.
pub fn parse_theta(s: &str) -> Result<f64, String> {
    let text = s.trim().to_ascii_lowercase();
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest.trim_start()),
        None => (false, text.as_str()),
    };
    let value = if body == "pi" {
        Some(PI)
    } else if let Some(k) = body.strip_prefix("pi/") {
        parse_factor(k).filter(|&k| k != 0.0).map(|k| PI / k)
    } else if let Some(k) = body.strip_prefix("pi*") {
        parse_factor(k).map(|k| PI * k)
    } else if let Some(k) = body.strip_suffix("pi") {
        parse_factor(k.strip_suffix('*').unwrap_or(k)).map(|k| PI * k)
    } else {
        parse_factor(body)
    };
    match value {
        Some(v) if v.is_finite() => Ok(if negative { -v } else { v }),
        _ => Err(format!(
            "`{s}` is not an angle; use radians or pi, pi/K, pi*K, K*pi"
        )),
    }
}

/// `LO,HI` with each bound in any form accepted by [`parse_theta`].
pub fn parse_window(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(',')
        .ok_or_else(|| format!("`{s}` is not a window; expected LO,HI"))?;
    let (lo, hi) = (parse_theta(lo)?, parse_theta(hi)?);
    if !(0.0..TAU + 1e-12).contains(&lo) || !(0.0..TAU + 1e-12).contains(&hi) || lo >= hi {
        return Err(format!("window `{s}` must satisfy 0 <= LO < HI <= 2*pi"));
    }
    Ok((lo, hi.min(TAU)))
}
