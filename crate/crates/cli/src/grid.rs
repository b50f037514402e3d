use std::fmt;
use std::str::FromStr;

pub const MAX_POINTS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// `start:stop:count[:lin|:log]`, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                // endpoints are reproduced exactly
                if i == 0 {
                    return self.start;
                }
                if i == self.count - 1 {
                    return self.stop;
                }
                let t = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.start + t * (self.stop - self.start),
                    Spacing::Log => (self.start.ln() + t * (self.stop.ln() - self.start.ln())).exp(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridError(String);

impl fmt::Display for GridError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for GridError {}

impl FromStr for Grid {
    type Err = GridError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |msg: &str| GridError(format!("{msg} in grid {s:?} (expected start:stop:count[:lin|:log])"));
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(err("wrong number of fields"));
        }
        let start: f64 = parts[0].parse().map_err(|_| err("bad start"))?;
        let stop: f64 = parts[1].parse().map_err(|_| err("bad stop"))?;
        let count: usize = parts[2].parse().map_err(|_| err("bad count"))?;
        let spacing = match parts.get(3) {
            None | Some(&"lin") => Spacing::Linear,
            Some(&"log") => Spacing::Log,
            Some(_) => return Err(err("spacing must be lin or log")),
        };
        if !(start.is_finite() && stop.is_finite()) {
            return Err(err("non-finite endpoint"));
        }
        if count == 0 || count > MAX_POINTS {
            return Err(err(&format!("count must be in 1..={MAX_POINTS}")));
        }
        if spacing == Spacing::Log && !(start > 0.0 && stop > 0.0) {
            return Err(err("log spacing needs positive endpoints"));
        }
        Ok(Grid {
            start,
            stop,
            count,
            spacing,
        })
    }
}
