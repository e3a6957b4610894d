//! `slelab diagram`: transition curves, landmark points and a region
//! raster. Writes `<out>.svg` and `<out>.csv`; the CSV carries every
//! plotted sample (curve rows with their parameter, raster rows tagged
//! `raster:<Region>` with a zero parameter).
//!
//! With `--m` the raster shows the m-fold diagram: each cell is
//! classified at its image under the forward transform, so negative `m`
//! reverses the vertical order of the regions.

use super::{kappa_of, require};
use crate::config::{CliError, RunConfig};
use crate::report::{emit_to, fmt_f64, Csv};
use crate::svg::Canvas;
use slelab_core::phase::{
    classify_conjecture, classify_validity, sample_curve, transition_lines, CurvePoint, CurveTag,
    LineKind, MFoldTransform, PhaseRegion, ValidityStatus,
};
use slelab_core::spectrum::{landmarks, MomentPoint};

fn phase_color(region: PhaseRegion) -> &'static str {
    match region {
        PhaseRegion::Tip => "#f2c4c4",
        PhaseRegion::Bulk => "#c9dcf2",
        PhaseRegion::Linear => "#f6e7b2",
        PhaseRegion::One => "#c8e6c0",
    }
}

fn validity_color(status: ValidityStatus) -> &'static str {
    match status {
        ValidityStatus::ProvedDhlzI => "#b6cde8",
        ValidityStatus::ProvedDhlzII => "#d4c3e8",
        ValidityStatus::ProvedDhlzIII => "#a8d8d0",
        ValidityStatus::ProvedDhlzIV => "#8fc7bb",
        ValidityStatus::ProvedNew => "#7fbf7f",
        ValidityStatus::UpperBoundOnly => "#e8d2b6",
        ValidityStatus::LowerBoundOnly => "#e8b6c8",
        ValidityStatus::Unknown => "#dddddd",
    }
}

pub fn run(config: &RunConfig) -> Result<(), CliError> {
    let kappa = kappa_of(config)?;
    require(config.resolution >= 2, "--resolution must be at least 2")?;
    require(
        config.resolution * config.resolution <= 4096 * 4096,
        "raster resolution beyond 4096 x 4096",
    )?;
    require(
        config.mode == "phase" || config.mode == "validity",
        "--mode must be phase or validity",
    )?;
    let out = config
        .out
        .clone()
        .ok_or_else(|| CliError::Usage("diagram needs --out PREFIX".into()))?;
    let lm = landmarks(kappa);
    let (pmin, pmax, qmin, qmax) = match config.window {
        Some(w) => w,
        None => (
            lm.p_prime0 - 2.5,
            lm.p1 + 2.0,
            lm.q0_prime_point.q - 2.0,
            lm.q0 + 3.0,
        ),
    };
    require(pmin < pmax && qmin < qmax, "window is empty")?;

    let transform = match config.m {
        Some(m) => Some(MFoldTransform::new(m).map_err(|e| CliError::Usage(e.to_string()))?),
        None => None,
    };

    let mut canvas = Canvas::new(pmin, pmax, qmin, qmax);
    let mut csv = Csv::new("diagram", config, &["kappa", "curve", "gamma", "p", "q"]);

    // raster cells
    let n = config.resolution;
    let dp = (pmax - pmin) / n as f64;
    let dq = (qmax - qmin) / n as f64;
    for i in 0..n {
        for j in 0..n {
            let p = pmin + dp * (i as f64 + 0.5);
            let q = qmin + dq * (j as f64 + 0.5);
            let mut pt = MomentPoint::new(p, q).map_err(|e| CliError::Usage(e.to_string()))?;
            if let Some(t) = &transform {
                pt = t.forward(pt);
            }
            let (name, color) = if config.mode == "validity" {
                let status =
                    classify_validity(kappa, pt).map_err(|e| CliError::Runtime(e.to_string()))?;
                (status.name(), validity_color(status))
            } else {
                let region =
                    classify_conjecture(kappa, pt).map_err(|e| CliError::Runtime(e.to_string()))?;
                (region.name(), phase_color(region))
            };
            canvas.cell(p - 0.5 * dp, q - 0.5 * dq, dp, dq, color);
            csv.row(&[
                fmt_f64(config.kappa),
                format!("raster:{name}"),
                fmt_f64(0.0),
                fmt_f64(p),
                fmt_f64(q),
            ]);
        }
    }

    // transition lines beneath the curves
    let lines = transition_lines(kappa);
    for descriptor in lines.descriptors() {
        let pts: Vec<(f64, f64)> = match descriptor.kind {
            LineKind::Vertical { p } => vec![(p, qmin), (p, qmax)],
            LineKind::Slope1 { offset } => vec![(pmin, pmin + offset), (pmax, pmax + offset)],
        };
        canvas.polyline(&pts, "#666666", 1.0);
    }

    // curves, sampled over ranges generous enough to leave the window
    let mut emit_curve = |points: Vec<CurvePoint>| {
        let Some(first) = points.first() else { return };
        let (tag, color) = (
            first.curve,
            match first.curve {
                CurveTag::Red => "#cc2222",
                CurveTag::Green => "#22aa22",
                CurveTag::BlueQuartic => "#2244cc",
            },
        );
        let mut visible: Vec<(f64, f64)> = Vec::new();
        for cp in &points {
            csv.row(&[
                fmt_f64(config.kappa),
                tag.name().to_string(),
                fmt_f64(cp.gamma),
                fmt_f64(cp.p),
                fmt_f64(cp.q),
            ]);
            if canvas.contains(cp.p, cp.q) {
                visible.push((cp.p, cp.q));
            }
        }
        canvas.polyline(&visible, color, 2.0);
    };
    let span = (pmax - pmin).abs() + (qmax - qmin).abs();
    let reach = 2.0 + span.sqrt();
    let selected = |name: &str| config.curves.iter().any(|c| c == name);
    if selected("red") {
        emit_curve(
            sample_curve(kappa, CurveTag::Red, -reach, 1.0 + reach, 600)
                .map_err(|e| CliError::Runtime(e.to_string()))?,
        );
    }
    if selected("green") {
        emit_curve(
            sample_curve(kappa, CurveTag::Green, -reach, reach, 600)
                .map_err(|e| CliError::Runtime(e.to_string()))?,
        );
    }
    if selected("blue_quartic") {
        emit_curve(
            sample_curve(
                kappa,
                CurveTag::BlueQuartic,
                -reach,
                1.0 + 2.0 / config.kappa + reach,
                600,
            )
            .map_err(|e| CliError::Runtime(e.to_string()))?,
        );
    }

    // landmark dots
    canvas.dot(lm.p0, lm.q0, "P0");
    canvas.dot(lm.p1, lm.q0, "P1");
    canvas.dot(lm.q0_point.p, lm.q0_point.q, "Q0");
    canvas.dot(lm.q0_prime_point.p, lm.q0_prime_point.q, "Q0'");

    let svg = canvas.finish("moment-plane diagram");
    emit_to(&format!("{out}.svg"), &svg)?;
    emit_to(&format!("{out}.csv"), &csv.into_string())?;
    println!("wrote {out}.svg and {out}.csv");
    Ok(())
}
