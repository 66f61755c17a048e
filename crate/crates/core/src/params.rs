//! Parameter quadruples and the named families.

use crate::cfmt;
use crate::{Error, Result, C64};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Coefficients of `x² + y² + z² + xyz = Ax + By + Cz + D`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParameterQuadruple {
    #[serde(with = "cfmt::complex")]
    pub a: C64,
    #[serde(with = "cfmt::complex")]
    pub b: C64,
    #[serde(with = "cfmt::complex")]
    pub c: C64,
    #[serde(with = "cfmt::complex")]
    pub d: C64,
}

/// Boundary traces `a₁..a₄` of a four-holed sphere representation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceQuadruple(#[serde(with = "cfmt::complex_vec_4")] pub [C64; 4]);

/// Exponents `κ₁..κ₄` with `a_i = 2 cos(π κ_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KappaQuadruple(#[serde(with = "cfmt::complex_vec_4")] pub [C64; 4]);

/// Flag raised when a Dubrovin–Mazzocco parameter is outside `(−2, 2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainWarning {
    pub a: f64,
}

impl fmt::Display for DomainWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a = {} lies outside (-2, 2)", self.a)
    }
}

impl ParameterQuadruple {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        ParameterQuadruple { a, b, c, d }
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self::new(C64::new(a, 0.0), C64::new(b, 0.0), C64::new(c, 0.0), C64::new(d, 0.0))
    }

    /// `(0, 0, 0, 0)`: the Markoff surface.
    pub fn markoff() -> Self {
        Self::real(0.0, 0.0, 0.0, 0.0)
    }

    /// `(0, 0, 0, 4)`: the Cayley cubic.
    pub fn picard() -> Self {
        Self::real(0.0, 0.0, 0.0, 4.0)
    }

    /// `(0, 0, 0, D)`: once-punctured torus characters.
    pub fn torus(d: C64) -> Self {
        Self::new(C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), d)
    }

    /// `A = B = C = 2a + 4`, `D = −(a² + 8a + 8)`.
    pub fn dm(a: f64) -> (Self, Option<DomainWarning>) {
        let abc = 2.0 * a + 4.0;
        let p = Self::real(abc, abc, abc, -(a * a + 8.0 * a + 8.0));
        let warn = if a > -2.0 && a < 2.0 { None } else { Some(DomainWarning { a }) };
        (p, warn)
    }

    pub fn abc(&self) -> [C64; 3] {
        [self.a, self.b, self.c]
    }

    /// `max(|A|, |B|, |C|)`.
    pub fn r(&self) -> f64 {
        self.a.norm().max(self.b.norm()).max(self.c.norm())
    }
}

impl fmt::Display for ParameterQuadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {})",
            cfmt::format_c64(self.a),
            cfmt::format_c64(self.b),
            cfmt::format_c64(self.c),
            cfmt::format_c64(self.d)
        )
    }
}

/// Parameters from boundary traces.
pub fn from_traces(t: &TraceQuadruple) -> ParameterQuadruple {
    let [a1, a2, a3, a4] = t.0;
    ParameterQuadruple {
        a: a1 * a4 + a2 * a3,
        b: a2 * a4 + a1 * a3,
        c: a3 * a4 + a1 * a2,
        d: C64::new(4.0, 0.0) - (a1 * a2 * a3 * a4 + a1 * a1 + a2 * a2 + a3 * a3 + a4 * a4),
    }
}

pub fn traces_from_kappa(k: &KappaQuadruple) -> TraceQuadruple {
    TraceQuadruple(k.0.map(|kk| (kk * std::f64::consts::PI).cos() * 2.0))
}

/// Parameters from local exponents.
pub fn from_kappa(k: &KappaQuadruple) -> ParameterQuadruple {
    from_traces(&traces_from_kappa(k))
}

/// Whether the trace quadruple lies on the locus where the surface is
/// singular: some `a_i = ±2`, or the discriminant relation vanishes.
pub fn is_singular_parameter(t: &TraceQuadruple) -> bool {
    let tol = 1e-12;
    let [a1, a2, a3, a4] = t.0;
    if t.0.iter().any(|a| (a - 2.0).norm() <= tol || (a + 2.0).norm() <= tol) {
        return true;
    }
    let s = (a1 * a1 + a2 * a2 + a3 * a3 + a4 * a4) * 2.0 - a1 * a2 * a3 * a4 - 16.0;
    let four = C64::new(4.0, 0.0);
    let prod = (four - a1 * a1) * (four - a2 * a2) * (four - a3 * a3) * (four - a4 * a4);
    let rel = s * s - prod;
    let scale = 1.0 + (s * s).norm() + prod.norm();
    rel.norm() <= tol * scale
}

/// Named parameter families accepted on the command line and in configs.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamFamily {
    Markoff,
    Picard,
    Torus(C64),
    Dm(f64),
    Traces(TraceQuadruple),
    Kappa(KappaQuadruple),
    Raw(ParameterQuadruple),
}

impl ParamFamily {
    pub fn params(&self) -> ParameterQuadruple {
        match self {
            ParamFamily::Markoff => ParameterQuadruple::markoff(),
            ParamFamily::Picard => ParameterQuadruple::picard(),
            ParamFamily::Torus(d) => ParameterQuadruple::torus(*d),
            ParamFamily::Dm(a) => ParameterQuadruple::dm(*a).0,
            ParamFamily::Traces(t) => from_traces(t),
            ParamFamily::Kappa(k) => from_kappa(k),
            ParamFamily::Raw(p) => *p,
        }
    }
}

fn parse_four(s: &str) -> Result<[C64; 4]> {
    let v: Vec<C64> = s.split(',').map(cfmt::parse_c64).collect::<Result<_>>()?;
    v.try_into().map_err(|_| Error::Parse(format!("expected four values in '{s}'")))
}

impl FromStr for ParamFamily {
    type Err = Error;

    /// `markoff`, `picard`, `torus:D`, `dm:a`, `traces:a1,a2,a3,a4`,
    /// `kappa:k1,k2,k3,k4`, or `raw:A,B,C,D`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, tail) = match s.split_once(':') {
            Some((h, t)) => (h, Some(t)),
            None => (s, None),
        };
        match (head, tail) {
            ("markoff", None) => Ok(ParamFamily::Markoff),
            ("picard", None) => Ok(ParamFamily::Picard),
            ("torus", Some(t)) => Ok(ParamFamily::Torus(cfmt::parse_c64(t)?)),
            ("dm", Some(t)) => {
                let a = t.trim().parse::<f64>().map_err(|_| Error::Parse(format!("invalid dm parameter '{t}'")))?;
                Ok(ParamFamily::Dm(a))
            }
            ("traces", Some(t)) => Ok(ParamFamily::Traces(TraceQuadruple(parse_four(t)?))),
            ("kappa", Some(t)) => Ok(ParamFamily::Kappa(KappaQuadruple(parse_four(t)?))),
            ("raw", Some(t)) => {
                let [a, b, c, d] = parse_four(t)?;
                Ok(ParamFamily::Raw(ParameterQuadruple::new(a, b, c, d)))
            }
            _ => Err(Error::Parse(format!("unknown parameter family '{s}'"))),
        }
    }
}

impl fmt::Display for ParamFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let four = |v: &[C64; 4]| v.iter().map(|&z| cfmt::format_c64(z)).collect::<Vec<_>>().join(",");
        match self {
            ParamFamily::Markoff => write!(f, "markoff"),
            ParamFamily::Picard => write!(f, "picard"),
            ParamFamily::Torus(d) => write!(f, "torus:{}", cfmt::format_c64(*d)),
            ParamFamily::Dm(a) => write!(f, "dm:{a}"),
            ParamFamily::Traces(t) => write!(f, "traces:{}", four(&t.0)),
            ParamFamily::Kappa(k) => write!(f, "kappa:{}", four(&k.0)),
            ParamFamily::Raw(p) => write!(f, "raw:{}", four(&[p.a, p.b, p.c, p.d])),
        }
    }
}
