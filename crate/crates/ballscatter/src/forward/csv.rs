//! Far-field CSV format.
//!
//! 2D header: `theta,re_uinf,im_uinf` (theta in radians, direction
//! (cosθ, sinθ)); 3D header: `dir_x,dir_y,dir_z,re_uinf,im_uinf`.
//! LF line endings, '.' decimal separator, shortest round-trip floats
//! (Rust's default f64 Display), so reruns are byte-identical.

use std::io::{BufRead, Write};

use num_complex::Complex64;

use super::{Dimension, FarFieldPattern, ForwardError, ScatteringConfig};

pub fn write_pattern_csv(pattern: &FarFieldPattern, out: &mut dyn Write) -> std::io::Result<()> {
    match pattern.config.dim {
        Dimension::Two => {
            out.write_all(b"theta,re_uinf,im_uinf\n")?;
            for (d, v) in pattern.directions.iter().zip(&pattern.values) {
                let theta = d[1].atan2(d[0]);
                writeln!(out, "{},{},{}", theta, v.re, v.im)?;
            }
        }
        Dimension::Three => {
            out.write_all(b"dir_x,dir_y,dir_z,re_uinf,im_uinf\n")?;
            for (d, v) in pattern.directions.iter().zip(&pattern.values) {
                writeln!(out, "{},{},{},{},{}", d[0], d[1], d[2], v.re, v.im)?;
            }
        }
    }
    Ok(())
}

/// Parses a pattern CSV; the scattering config is not stored in the CSV and
/// must be supplied (it travels in the problem/task JSON).
pub fn read_pattern_csv(
    input: &mut dyn BufRead,
    config: ScatteringConfig,
) -> Result<FarFieldPattern, ForwardError> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or_else(|| ForwardError::InvalidInput("empty CSV".into()))?
        .map_err(|e| ForwardError::InvalidInput(format!("read error: {e}")))?;
    let expected = match config.dim {
        Dimension::Two => "theta,re_uinf,im_uinf",
        Dimension::Three => "dir_x,dir_y,dir_z,re_uinf,im_uinf",
    };
    if header.trim() != expected {
        return Err(ForwardError::InvalidInput(format!(
            "unexpected CSV header {header:?}, want {expected:?}"
        )));
    }
    let mut directions = Vec::new();
    let mut values = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line = line.map_err(|e| ForwardError::InvalidInput(format!("read error: {e}")))?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<f64> = line
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| {
                ForwardError::InvalidInput(format!("row {}: bad float: {e}", idx + 2))
            })?;
        match config.dim {
            Dimension::Two => {
                if fields.len() != 3 {
                    return Err(ForwardError::InvalidInput(format!(
                        "row {}: expected 3 fields",
                        idx + 2
                    )));
                }
                directions.push([fields[0].cos(), fields[0].sin(), 0.0]);
                values.push(Complex64::new(fields[1], fields[2]));
            }
            Dimension::Three => {
                if fields.len() != 5 {
                    return Err(ForwardError::InvalidInput(format!(
                        "row {}: expected 5 fields",
                        idx + 2
                    )));
                }
                directions.push([fields[0], fields[1], fields[2]]);
                values.push(Complex64::new(fields[3], fields[4]));
            }
        }
    }
    FarFieldPattern::new(directions, values, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forward::{fibonacci_sphere, uniform_circle};

    #[test]
    fn round_trip_is_lossless() {
        for (dim, dirs) in [
            (Dimension::Three, fibonacci_sphere(9)),
            (Dimension::Two, uniform_circle(9)),
        ] {
            let d0 = match dim {
                Dimension::Three => [0.0, 0.0, 1.0],
                Dimension::Two => [1.0, 0.0, 0.0],
            };
            let cfg = ScatteringConfig::new(1.7, d0, dim).unwrap();
            let values: Vec<Complex64> = (0..9)
                .map(|i| Complex64::new((i as f64 * 0.77).sin() * 1e-3, -(i as f64).cos()))
                .collect();
            let pat = FarFieldPattern::new(dirs, values, cfg).unwrap();
            let mut buf = Vec::new();
            write_pattern_csv(&pat, &mut buf).unwrap();
            let text = String::from_utf8(buf.clone()).unwrap();
            assert!(!text.contains('\r'));
            let back = read_pattern_csv(&mut buf.as_slice(), cfg).unwrap();
            for i in 0..9 {
                assert!((back.values[i] - pat.values[i]).norm() <= 1e-15);
                for a in 0..3 {
                    assert!((back.directions[i][a] - pat.directions[i][a]).abs() <= 1e-15);
                }
            }
            // writing again is byte-identical
            let mut buf2 = Vec::new();
            write_pattern_csv(&back, &mut buf2).unwrap();
            assert_eq!(buf, buf2);
        }
    }

    #[test]
    fn header_mismatch_is_rejected() {
        let cfg = ScatteringConfig::new(1.0, [1.0, 0.0, 0.0], Dimension::Two).unwrap();
        let data = b"wrong,header\n0,0,0\n";
        assert!(read_pattern_csv(&mut data.as_slice(), cfg).is_err());
    }
}
