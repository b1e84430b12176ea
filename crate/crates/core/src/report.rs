//! Common result types for bound computations.

use crate::exact::{format_rat, to_f64, Rat};
use crate::kraw::KrawPoly;

/// A bound value: exact rational where the arithmetic allows, floating
/// otherwise, or unbounded (used by ratio bounds with vanishing parts).
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(Rat),
    Real(f64),
    Infinite,
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => to_f64(r),
            Value::Real(x) => *x,
            Value::Infinite => f64::INFINITY,
        }
    }

    pub fn as_exact(&self) -> Option<&Rat> {
        match self {
            Value::Exact(r) => Some(r),
            _ => None,
        }
    }
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Exact(r) => write!(f, "{}", format_rat(r)),
            Value::Real(x) => write!(f, "{x}"),
            Value::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Singleton,
    RaoHamming,
    Levenshtein,
    Lp,
    UniversalEnergy,
    EnergyLp,
    Dgs,
    LevenshteinSphere,
    BinomialMoment,
    QuantumLp,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Method::Singleton => "singleton",
            Method::RaoHamming => "rao-hamming",
            Method::Levenshtein => "levenshtein",
            Method::Lp => "lp",
            Method::UniversalEnergy => "ulb",
            Method::EnergyLp => "energy-lp",
            Method::Dgs => "dgs",
            Method::LevenshteinSphere => "levenshtein-sphere",
            Method::BinomialMoment => "binomial-moment",
            Method::QuantumLp => "quantum-lp",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Upper,
    Lower,
}

/// One computed bound with optional certificate and attainment notes.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub method: Method,
    pub direction: Direction,
    pub value: Value,
    pub certificate: Option<KrawPoly>,
    pub notes: Vec<String>,
}

impl BoundReport {
    pub fn new(method: Method, direction: Direction, value: Value) -> Self {
        BoundReport {
            method,
            direction,
            value,
            certificate: None,
            notes: Vec::new(),
        }
    }

    pub fn with_certificate(mut self, cert: KrawPoly) -> Self {
        self.certificate = Some(cert);
        self
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }
}
