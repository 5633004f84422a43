//! Parsers for list and grid flag values.

use std::str::FromStr;

/// Comma-separated list, e.g. `3,4,5`.
#[derive(Debug, Clone, PartialEq)]
pub struct List<T>(pub Vec<T>);

impl<T: FromStr> FromStr for List<T> {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let items = s
            .split(',')
            .map(|p| {
                let p = p.trim();
                p.parse::<T>().map_err(|_| format!("bad list entry {p:?} in {s:?}"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if items.is_empty() {
            return Err("empty list".into());
        }
        Ok(List(items))
    }
}

/// `start:stop:step` grid of first-round sharpness values.
///
/// The grid has `round((stop - start) / step) + 1` points `start + i * step`,
/// so `stop` is included whenever it lies within half a step of the lattice.
/// A last point that overshoots `stop` (or sits within rounding of it) is
/// replaced by `stop`. All points lie in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridSpec {
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 0.5).floor() as usize;
        (0..=n)
            .map(|i| {
                let x = self.start + i as f64 * self.step;
                if i == n && (x > self.stop || (self.stop - x).abs() < 1e-9 * self.step) {
                    self.stop
                } else {
                    x
                }
            })
            .collect()
    }
}

impl FromStr for GridSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, c] = parts.as_slice() else {
            return Err(format!("grid {s:?} is not start:stop:step"));
        };
        let num = |p: &str| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad number {p:?} in grid {s:?}"))
        };
        let (start, stop, step) = (num(a)?, num(b)?, num(c)?);
        if !(step > 0.0 && step.is_finite()) {
            return Err(format!("grid step must be positive, got {step}"));
        }
        if !(start > 0.0 && start <= stop && stop <= 1.0) {
            return Err(format!("grid needs 0 < start <= stop <= 1, got {s:?}"));
        }
        Ok(GridSpec { start, stop, step })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thousand_point_grid_ends_on_stop() {
        let g: GridSpec = "0.001:1.0:0.001".parse().unwrap();
        let p = g.points();
        assert_eq!(p.len(), 1000);
        assert_eq!(p[0], 0.001);
        assert_eq!(*p.last().unwrap(), 1.0);
        assert!(p.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn single_point_grid() {
        let g: GridSpec = "0.5:0.5:0.1".parse().unwrap();
        assert_eq!(g.points(), vec![0.5]);
    }

    #[test]
    fn stop_within_half_step() {
        let p = "0.1:0.34:0.1".parse::<GridSpec>().unwrap().points();
        assert_eq!(p.len(), 3);
        assert!((p[2] - 0.3).abs() < 1e-15);
        let p = "0.1:0.36:0.1".parse::<GridSpec>().unwrap().points();
        assert_eq!(p.len(), 4);
        assert_eq!(p[3], 0.36);
    }

    #[test]
    fn malformed_grids_are_rejected() {
        for bad in ["0.1:0.5", "a:b:c", "0.1:0.5:0", "0:0.5:0.1", "0.5:0.1:0.1", "0.1:1.5:0.1"] {
            assert!(bad.parse::<GridSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn lists() {
        assert_eq!("3,4, 5".parse::<List<usize>>().unwrap().0, vec![3, 4, 5]);
        assert!("3,x".parse::<List<usize>>().is_err());
    }
}
