//! Text form of complex scalars: `re+imi`, e.g. `1.5-2i`, `3+0i`.

use crate::{Error, Point, Result, C64};

pub fn format_c64(z: C64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", z.re, sign, z.im.abs())
}

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i` with optional exponents.
pub fn parse_c64(s: &str) -> Result<C64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || Error::Parse(format!("invalid complex number '{s}'"));
    if t.is_empty() {
        return Err(err());
    }
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|x| C64::new(x, 0.0)).map_err(|_| err());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_part, im_part) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| err())?,
    };
    let re = re_part.parse::<f64>().map_err(|_| err())?;
    Ok(C64::new(re, im))
}

/// Parses `x,y,z`.
pub fn parse_point(s: &str) -> Result<Point> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!("expected three comma-separated coordinates, got '{s}'")));
    }
    Ok([parse_c64(parts[0])?, parse_c64(parts[1])?, parse_c64(parts[2])?])
}

pub fn format_point(q: &Point) -> String {
    q.iter().map(|&z| format_c64(z)).collect::<Vec<_>>().join(",")
}

/// `#[serde(with = "cfmt::complex")]`
pub mod complex {
    use crate::C64;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(z: &C64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format_c64(*z))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<C64, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_c64(&s).map_err(serde::de::Error::custom)
    }
}

/// `#[serde(with = "cfmt::point")]`
pub mod point {
    use crate::Point;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(q: &Point, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = q.iter().map(|&z| super::format_c64(z)).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Point, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        if v.len() != 3 {
            return Err(serde::de::Error::custom("expected three coordinates"));
        }
        let mut q = [crate::C64::new(0.0, 0.0); 3];
        for (k, s) in v.iter().enumerate() {
            q[k] = super::parse_c64(s).map_err(serde::de::Error::custom)?;
        }
        Ok(q)
    }
}

/// `#[serde(with = "cfmt::complex_vec")]`
pub mod complex_vec {
    use crate::C64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[C64], s: S) -> Result<S::Ok, S::Error> {
        let out: Vec<String> = v.iter().map(|&z| super::format_c64(z)).collect();
        out.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<C64>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter().map(|s| super::parse_c64(s).map_err(serde::de::Error::custom)).collect()
    }
}

/// `#[serde(with = "cfmt::complex_vec_4")]`
pub mod complex_vec_4 {
    use crate::C64;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[C64; 4], s: S) -> Result<S::Ok, S::Error> {
        super::complex_vec::serialize(v, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[C64; 4], D::Error> {
        let v = super::complex_vec::deserialize(d)?;
        v.try_into().map_err(|_| serde::de::Error::custom("expected four values"))
    }
}

/// `#[serde(with = "cfmt::complex_vec_2")]`
pub mod complex_vec_2 {
    use crate::C64;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[C64; 2], s: S) -> Result<S::Ok, S::Error> {
        super::complex_vec::serialize(v, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[C64; 2], D::Error> {
        let v = super::complex_vec::deserialize(d)?;
        v.try_into().map_err(|_| serde::de::Error::custom("expected two values"))
    }
}
