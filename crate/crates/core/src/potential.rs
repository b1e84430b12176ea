//! Potential functions for energy computations, in both flavors:
//! functions of the Hamming distance and functions of the inner product.

use crate::error::{Error, Result};
use crate::exact::{parse_rat, rat_pow, to_f64, Rat};
use num_traits::{One, Signed, Zero};

/// A potential h(d) on distances. Built-in kinds evaluate exactly where
/// the value is rational; monotonicity is caller-supplied metadata.
#[derive(Debug, Clone)]
pub struct DistancePotential {
    kind: DistanceKind,
    /// Asserted by the caller; universal energy bounds require it.
    pub completely_monotone: bool,
}

#[derive(Debug, Clone)]
pub enum DistanceKind {
    /// Values h(1), ..., h(n).
    Table(Vec<Rat>),
    /// h(d) = 1/d.
    InverseDistance,
    /// h(d) = d^{-s} for integer s >= 1.
    RieszInt(u32),
    /// h(d) = d^{-s} for real s.
    RieszReal(f64),
    /// h(d) = e^{-d}.
    ExpDecay,
}

impl DistancePotential {
    pub fn table(values: Vec<Rat>, completely_monotone: bool) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInput("potential table is empty".into()));
        }
        if values.iter().any(|v| !v.is_positive()) {
            return Err(Error::InvalidInput(
                "potential values must be positive".into(),
            ));
        }
        Ok(DistancePotential {
            kind: DistanceKind::Table(values),
            completely_monotone,
        })
    }

    pub fn inverse_distance() -> Self {
        DistancePotential {
            kind: DistanceKind::InverseDistance,
            completely_monotone: true,
        }
    }

    pub fn riesz(s: f64) -> Self {
        if s > 0.0 && s.fract() == 0.0 && s <= u32::MAX as f64 {
            DistancePotential {
                kind: DistanceKind::RieszInt(s as u32),
                completely_monotone: true,
            }
        } else {
            DistancePotential {
                kind: DistanceKind::RieszReal(s),
                completely_monotone: true,
            }
        }
    }

    pub fn exp_decay() -> Self {
        DistancePotential {
            kind: DistanceKind::ExpDecay,
            completely_monotone: true,
        }
    }

    pub fn kind(&self) -> &DistanceKind {
        &self.kind
    }

    /// Exact value at a rational distance, when the kind allows it.
    pub fn eval_rat(&self, d: &Rat) -> Option<Rat> {
        if !d.is_positive() {
            return None;
        }
        match &self.kind {
            DistanceKind::Table(t) => {
                if d.denom().is_one() {
                    let i: usize = d.numer().try_into().ok()?;
                    t.get(i - 1).cloned()
                } else {
                    None
                }
            }
            DistanceKind::InverseDistance => Some(d.clone().recip()),
            DistanceKind::RieszInt(s) => Some(rat_pow(d, *s).recip()),
            DistanceKind::RieszReal(_) | DistanceKind::ExpDecay => None,
        }
    }

    pub fn eval_f64(&self, d: f64) -> f64 {
        match &self.kind {
            DistanceKind::Table(t) => {
                let i = d.round() as usize;
                if (d - i as f64).abs() < 1e-9 && i >= 1 && i <= t.len() {
                    to_f64(&t[i - 1])
                } else {
                    f64::NAN
                }
            }
            DistanceKind::InverseDistance => 1.0 / d,
            DistanceKind::RieszInt(s) => d.powi(-(*s as i32)),
            DistanceKind::RieszReal(s) => d.powf(-s),
            DistanceKind::ExpDecay => (-d).exp(),
        }
    }

    /// Exponent s when h is the inverse power d^{-s} (used for exact
    /// quadrature sums at irrational nodes).
    pub fn inverse_power(&self) -> Option<u32> {
        match self.kind {
            DistanceKind::InverseDistance => Some(1),
            DistanceKind::RieszInt(s) => Some(s),
            _ => None,
        }
    }

    /// Parse the CLI grammar `newton | riesz:<s> | gauss | table:<file>`;
    /// the table file holds lines `<distance> <value>` with rational values.
    pub fn parse_spec(spec: &str, n: usize, read_file: impl Fn(&str) -> Result<String>) -> Result<Self> {
        if spec == "newton" {
            return Ok(Self::inverse_distance());
        }
        if spec == "gauss" {
            return Ok(Self::exp_decay());
        }
        if let Some(s) = spec.strip_prefix("riesz:") {
            let s: f64 = s
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad riesz exponent: {s}")))?;
            if s <= 0.0 {
                return Err(Error::InvalidInput("riesz exponent must be positive".into()));
            }
            return Ok(Self::riesz(s));
        }
        if let Some(path) = spec.strip_prefix("table:") {
            let text = read_file(path)?;
            let mut values = vec![None; n];
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let mut it = line.split_whitespace();
                let (Some(dtok), Some(vtok)) = (it.next(), it.next()) else {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        msg: "expected `<distance> <value>`".into(),
                    });
                };
                let d: usize = dtok.parse().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    msg: format!("bad distance: {dtok}"),
                })?;
                let v = parse_rat(vtok).ok_or_else(|| Error::Parse {
                    line: lineno + 1,
                    msg: format!("bad value: {vtok}"),
                })?;
                if d == 0 || d > n {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        msg: format!("distance {d} outside 1..={n}"),
                    });
                }
                values[d - 1] = Some(v);
            }
            let values: Vec<Rat> = values
                .into_iter()
                .enumerate()
                .map(|(i, v)| {
                    v.ok_or_else(|| {
                        Error::InvalidInput(format!("table is missing h({})", i + 1))
                    })
                })
                .collect::<Result<_>>()?;
            return Self::table(values, true);
        }
        Err(Error::InvalidInput(format!(
            "unknown potential spec `{spec}` (expected newton | riesz:<s> | gauss | table:<file>)"
        )))
    }
}

/// A potential h(t) on inner products t in [-1, 1).
#[derive(Debug, Clone)]
pub struct InnerProductPotential {
    kind: IpKind,
    pub absolutely_monotone: bool,
}

#[derive(Debug, Clone)]
pub enum IpKind {
    /// h(t) = (2 - 2t)^{-(n-2)/2} (inverse distance power for dimension n).
    Newton { dim: usize },
    /// h(t) = (2 - 2t)^{-s/2}.
    Riesz { s: f64 },
    /// h(t) = exp(2t - 2).
    Gauss,
}

impl InnerProductPotential {
    pub fn newton(dim: usize) -> Result<Self> {
        if dim < 3 {
            return Err(Error::InvalidInput(
                "newton potential needs dimension >= 3".into(),
            ));
        }
        Ok(InnerProductPotential {
            kind: IpKind::Newton { dim },
            absolutely_monotone: true,
        })
    }

    pub fn riesz(s: f64) -> Result<Self> {
        if s <= 0.0 {
            return Err(Error::InvalidInput("riesz exponent must be positive".into()));
        }
        Ok(InnerProductPotential {
            kind: IpKind::Riesz { s },
            absolutely_monotone: true,
        })
    }

    pub fn gauss() -> Self {
        InnerProductPotential {
            kind: IpKind::Gauss,
            absolutely_monotone: true,
        }
    }

    pub fn kind(&self) -> &IpKind {
        &self.kind
    }

    /// Half of the inverse-power exponent when it is a positive integer,
    /// i.e. m with h(t) = (2-2t)^{-m}; such potentials evaluate exactly.
    pub fn integer_power(&self) -> Option<u32> {
        let s = match self.kind {
            IpKind::Newton { dim } => (dim - 2) as f64,
            IpKind::Riesz { s } => s,
            IpKind::Gauss => return None,
        };
        let m = s / 2.0;
        if m > 0.0 && m.fract() == 0.0 {
            Some(m as u32)
        } else {
            None
        }
    }

    pub fn eval_rat(&self, t: &Rat) -> Option<Rat> {
        let m = self.integer_power()?;
        let base = Rat::from_integer(2.into()) * (Rat::one() - t);
        if base.is_zero() {
            return None;
        }
        Some(rat_pow(&base, m).recip())
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        match self.kind {
            IpKind::Newton { dim } => (2.0 - 2.0 * t).powf(-((dim as f64 - 2.0) / 2.0)),
            IpKind::Riesz { s } => (2.0 - 2.0 * t).powf(-s / 2.0),
            IpKind::Gauss => (2.0 * t - 2.0).exp(),
        }
    }

    /// j-th derivative at t (all derivatives are nonnegative on [-1, 1)).
    pub fn deriv_f64(&self, j: u32, t: f64) -> f64 {
        match self.kind {
            IpKind::Newton { .. } | IpKind::Riesz { .. } => {
                let m = match self.kind {
                    IpKind::Newton { dim } => (dim as f64 - 2.0) / 2.0,
                    IpKind::Riesz { s } => s / 2.0,
                    _ => unreachable!(),
                };
                // d/dt (2-2t)^{-m} = 2m (2-2t)^{-m-1}
                let mut factor = 1.0;
                for i in 0..j {
                    factor *= 2.0 * (m + i as f64);
                }
                factor * (2.0 - 2.0 * t).powf(-(m + j as f64))
            }
            IpKind::Gauss => 2f64.powi(j as i32) * (2.0 * t - 2.0).exp(),
        }
    }

    /// Exact j-th derivative for integer-power kinds.
    pub fn deriv_rat(&self, j: u32, t: &Rat) -> Option<Rat> {
        let m = self.integer_power()?;
        let base = Rat::from_integer(2.into()) * (Rat::one() - t);
        if base.is_zero() {
            return None;
        }
        let mut factor = Rat::one();
        for i in 0..j {
            factor *= Rat::from_integer(2.into()) * Rat::from_integer((m + i).into());
        }
        Some(factor * rat_pow(&base, m + j).recip())
    }

    pub fn parse_spec(spec: &str, dim: usize) -> Result<Self> {
        if spec == "newton" {
            return Self::newton(dim);
        }
        if spec == "gauss" {
            return Ok(Self::gauss());
        }
        if let Some(s) = spec.strip_prefix("riesz:") {
            let s: f64 = s
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad riesz exponent: {s}")))?;
            return Self::riesz(s);
        }
        Err(Error::InvalidInput(format!(
            "unknown potential spec `{spec}` (expected newton | riesz:<s> | gauss)"
        )))
    }
}
