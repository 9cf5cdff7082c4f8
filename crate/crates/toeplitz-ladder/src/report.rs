//! Residual reports for identity checks.

use serde::Serialize;

use crate::C64;

/// Where a residual was evaluated.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Point {
    /// A complex sample point, serialized as [re, im].
    At([f64; 2]),
    /// A label such as "coefficients" or "infinity".
    Label(String),
}

impl Point {
    pub fn at(z: C64) -> Self {
        Point::At([z.re, z.im])
    }

    pub fn label(s: &str) -> Self {
        Point::Label(s.to_string())
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Point::At([re, im]) if *im < 0.0 => write!(f, "{re}-{}i", -im),
            Point::At([re, im]) => write!(f, "{re}+{im}i"),
            Point::Label(s) => f.write_str(s),
        }
    }
}

/// One identity evaluated once.
#[derive(Debug, Clone, Serialize)]
pub struct Residual {
    pub identity: String,
    pub n: i64,
    pub point: Point,
    pub absolute: f64,
    pub relative: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// A list of residuals; passes when every entry passes.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ResidualReport {
    pub entries: Vec<Residual>,
}

/// Relative residual with respect to the magnitude of the terms of the identity.
pub fn relative(absolute: f64, scale: f64) -> f64 {
    if absolute == 0.0 {
        0.0
    } else if scale > 0.0 {
        absolute / scale
    } else {
        f64::INFINITY
    }
}

impl ResidualReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `lhs − rhs` with the scale max(|lhs|, |rhs|).
    pub fn compare(&mut self, identity: &str, n: i64, point: Point, lhs: C64, rhs: C64, tolerance: f64) {
        let scale = lhs.norm().max(rhs.norm());
        self.push(identity, n, point, (lhs - rhs).norm(), scale, tolerance);
    }

    /// Records a residual with an explicit term scale.
    pub fn push(&mut self, identity: &str, n: i64, point: Point, absolute: f64, scale: f64, tolerance: f64) {
        let rel = relative(absolute, scale);
        self.entries.push(Residual {
            identity: identity.to_string(),
            n,
            point,
            absolute,
            relative: rel,
            tolerance,
            pass: rel <= tolerance,
        });
    }

    /// Records an entry that could not be evaluated; it fails.
    pub fn push_failure(&mut self, identity: &str, n: i64, reason: &str) {
        self.entries.push(Residual {
            identity: format!("{identity} ({reason})"),
            n,
            point: Point::label("not evaluated"),
            absolute: f64::INFINITY,
            relative: f64::INFINITY,
            tolerance: 0.0,
            pass: false,
        });
    }

    pub fn extend(&mut self, other: ResidualReport) {
        self.entries.extend(other.entries);
    }

    pub fn pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn max_relative(&self) -> f64 {
        self.entries.iter().map(|e| e.relative).fold(0.0, f64::max)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Residual> {
        self.entries.iter().filter(|e| !e.pass)
    }

    /// Entries whose identity name starts with `prefix`.
    pub fn filter(&self, prefix: &str) -> ResidualReport {
        ResidualReport {
            entries: self
                .entries
                .iter()
                .filter(|e| e.identity.starts_with(prefix))
                .cloned()
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
