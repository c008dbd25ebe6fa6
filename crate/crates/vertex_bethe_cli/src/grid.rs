//! `lo:hi:n` grids with both endpoints included.

use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (self.n - 1) as f64;
        (0..self.n).map(|k| if k + 1 == self.n { self.hi } else { self.lo + step * k as f64 }).collect()
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("grid {s:?} is not of the form lo:hi:n"));
        }
        let num = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("grid bound {p:?}: {e}"));
        let lo = num(parts[0])?;
        let hi = num(parts[1])?;
        let n: usize = parts[2].trim().parse().map_err(|e| format!("grid count {:?}: {e}", parts[2]))?;
        if n == 0 {
            return Err("grid needs at least one point".into());
        }
        if !lo.is_finite() || !hi.is_finite() || (n > 1 && !(lo < hi)) {
            return Err(format!("grid needs finite lo < hi, got {lo}:{hi}"));
        }
        Ok(Grid { lo, hi, n })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_includes_endpoints() {
        let g: Grid = "-0.4:0.4:9".parse().unwrap();
        let p = g.points();
        assert_eq!(p.len(), 9);
        assert_eq!(p[0], -0.4);
        assert_eq!(p[8], 0.4);
        assert!((p[4]).abs() < 1e-16);
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["1:2", "a:1:3", "0:1:0", "1:0:3", "0:1:x"] {
            assert!(bad.parse::<Grid>().is_err(), "{bad}");
        }
        assert_eq!("0.3:0.3:1".parse::<Grid>().unwrap().points(), vec![0.3]);
    }
}
