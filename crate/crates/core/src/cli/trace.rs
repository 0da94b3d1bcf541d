//! Ray polylines for the `trace` command.

use std::io::Write;

use crate::congruence::Ray;
use crate::error::{Error, Result};
use crate::geometry::to_spheroidal;
use crate::vector::Point3;

use super::config::Loaded;
use super::format_f64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub ray_id: usize,
    pub t: f64,
    pub x: Point3,
    pub xi: f64,
    pub eta: f64,
}

/// Rows for every configured ray, ray by ray, `steps + 1` times each.
///
/// A ray launched from the focal circle starts on it, where `(ξ, η)` are
/// reported as `(0, 0)`.
pub fn trace_rows(loaded: &Loaded) -> Result<Vec<TraceRow>> {
    let rc = &loaded.config;
    let tc = rc.trace.as_ref().ok_or_else(|| Error::ConfigError("trace needs a trace section".into()))?;
    let cfg = &loaded.wp.cfg;
    let mut rows = Vec::new();
    let mut ray_id = 0;
    for &rho0 in &tc.rho0 {
        let n = if rho0 == 0.0 { 1 } else { tc.rays_per_ring };
        for k in 0..n {
            let phi0 = std::f64::consts::TAU * k as f64 / n as f64;
            let ray = Ray::from_polar(rho0, phi0, cfg, rc.helicity, tc.z_sign)?;
            for j in 0..=tc.steps {
                let t = tc.t_max * j as f64 / tc.steps as f64;
                let x = ray.at(t)?;
                let (xi, eta) = match to_spheroidal(x, cfg, Some(tc.z_sign)) {
                    Ok(s) => (s.xi, s.eta),
                    Err(Error::SingularPoint(_)) => (0.0, 0.0),
                    Err(e) => return Err(e),
                };
                rows.push(TraceRow { ray_id, t, x, xi, eta });
            }
            ray_id += 1;
        }
    }
    Ok(rows)
}

pub fn write_trace_csv<W: Write>(rows: &[TraceRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let err = |e: csv::Error| Error::IoError(e.to_string());
    w.write_record(["ray_id", "t", "x", "y", "z", "xi", "eta"]).map_err(err)?;
    for r in rows {
        w.write_record([
            r.ray_id.to_string(),
            format_f64(r.t),
            format_f64(r.x.x),
            format_f64(r.x.y),
            format_f64(r.x.z),
            format_f64(r.xi),
            format_f64(r.eta),
        ])
        .map_err(err)?;
    }
    w.flush()?;
    Ok(())
}
