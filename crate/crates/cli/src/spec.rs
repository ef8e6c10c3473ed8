//! Parsers for command-line values: parameters, covectors, signatures and
//! group-element specs.

use ymd_core::algebra::C64;
use ymd_core::classifier::ParamValue;
use ymd_core::groups::PinGenerator;

/// Group element spec after parsing.
#[derive(Debug, Clone, PartialEq)]
pub enum Su2Spec {
    Identity,
    Exp([f64; 3]),
    Random,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PinSpec {
    Generators(Vec<PinGenerator>),
    Random(usize),
}

fn number(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

fn index(s: &str) -> Result<usize, String> {
    s.trim().parse().map_err(|_| format!("`{s}` is not an index"))
}

/// Parses "1.5", "2-3i", "-i", "0.5i" or "1e-3+2e-1i".
pub fn parse_complex(s: &str) -> Result<ParamValue, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err("empty value".into());
    }
    let Some(body) = t.strip_suffix('i') else {
        return number(&t).map(ParamValue::Real);
    };
    // Split at the last sign that is not part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (number(&body[..i])?, &body[i..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        v => number(v)?,
    };
    Ok(ParamValue::Complex(C64::new(re, im)))
}

/// Parses "name=value".
pub fn parse_param(s: &str) -> Result<(String, ParamValue), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected name=value, got `{s}`"))?;
    let k = k.trim();
    if k.is_empty() {
        return Err(format!("missing parameter name in `{s}`"));
    }
    Ok((k.to_string(), parse_complex(v)?))
}

pub fn parse_k(s: &str) -> Result<[f64; 4], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(format!("expected four comma-separated components, got `{s}`"));
    }
    let mut k = [0.0; 4];
    for (slot, p) in k.iter_mut().zip(parts) {
        *slot = number(p)?;
    }
    Ok(k)
}

pub fn parse_signature(s: &str) -> Result<(usize, usize), String> {
    let (p, q) = s.split_once(',').ok_or_else(|| format!("expected p,q, got `{s}`"))?;
    let (p, q) = (index(p)?, index(q)?);
    if p + q == 0 {
        return Err("signature must have p + q > 0".into());
    }
    Ok((p, q))
}

/// "identity", "random", or "exp:t1,t2,t3".
pub fn parse_su2(s: &str) -> Result<Su2Spec, String> {
    match s.trim() {
        "" | "identity" => Ok(Su2Spec::Identity),
        "random" => Ok(Su2Spec::Random),
        t => {
            let body = t.strip_prefix("exp:").ok_or_else(|| format!("unknown su2 spec `{t}` (use identity, random or exp:t1,t2,t3)"))?;
            let v: Vec<f64> = body.split(',').map(number).collect::<Result<_, _>>()?;
            let theta: [f64; 3] = v.try_into().map_err(|_| format!("exp needs three components, got `{body}`"))?;
            Ok(Su2Spec::Exp(theta))
        }
    }
}

/// "identity", "random[:n]", or a comma-separated generator list such as
/// "boost:1:0.3,rot:2,3:1.57,refl:0".
pub fn parse_pin(s: &str) -> Result<PinSpec, String> {
    let t = s.trim();
    match t {
        "" | "identity" => return Ok(PinSpec::Generators(Vec::new())),
        "random" => return Ok(PinSpec::Random(3)),
        _ => {}
    }
    if let Some(n) = t.strip_prefix("random:") {
        let n = index(n)?;
        return if n == 0 { Err("random:n needs n ≥ 1".into()) } else { Ok(PinSpec::Random(n)) };
    }
    // Commas also separate the two rotation axes, so a token that does not
    // start with a letter continues the previous generator.
    let mut items: Vec<String> = Vec::new();
    for tok in t.split(',') {
        match (tok.trim_start().starts_with(|c: char| c.is_ascii_alphabetic()), items.last_mut()) {
            (false, Some(last)) => {
                last.push(',');
                last.push_str(tok);
            }
            _ => items.push(tok.to_string()),
        }
    }
    items.iter().map(|g| parse_generator(g)).collect::<Result<_, _>>().map(PinSpec::Generators)
}

fn parse_generator(g: &str) -> Result<PinGenerator, String> {
    let parts: Vec<&str> = g.trim().split(':').collect();
    match parts.as_slice() {
        ["boost", axis, rapidity] => Ok(PinGenerator::Boost { axis: index(axis)?, rapidity: number(rapidity)? }),
        ["rot", axes, angle] => {
            let (j, k) = axes.split_once(',').ok_or_else(|| format!("rotation axes must be `j,k`, got `{axes}`"))?;
            Ok(PinGenerator::Rotation { axes: (index(j)?, index(k)?), angle: number(angle)? })
        }
        ["refl", i] => Ok(PinGenerator::Reflection { index: index(i)? }),
        _ => Err(format!("bad generator `{g}` (use boost:axis:rapidity, rot:j,k:angle or refl:index)")),
    }
}
