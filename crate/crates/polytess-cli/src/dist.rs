//! Distribution spec strings accepted on the command line.
//!
//! Grammar: `unif`, `gk:<k>`, `g3:<p>,<q>`, `g4:<p>,<q>,<r>`,
//! `discrete:<θ₁>:<w₁>,<θ₂>:<w₂>,...`. Angles are radians; a `deg:` prefix
//! on an angle token converts from degrees.

use crate::CliError;
use polytess::directional::DirectionalDistribution;

#[derive(Clone, Debug, PartialEq)]
pub enum DistSpec {
    Unif,
    Gk(u32),
    G3(f64, f64),
    G4(f64, f64, f64),
    Discrete(Vec<(f64, f64)>),
}

fn usage(token: &str, context: &str) -> CliError {
    CliError::Usage(format!("bad distribution token `{token}`: {context}"))
}

fn parse_number(token: &str, what: &str) -> Result<f64, CliError> {
    token
        .parse::<f64>()
        .map_err(|_| usage(token, &format!("expected a {what}")))
}

/// Angle in radians; `deg:` prefix converts from degrees.
fn parse_angle(token: &str) -> Result<f64, CliError> {
    if let Some(rest) = token.strip_prefix("deg:") {
        Ok(parse_number(rest, "degree value")?.to_radians())
    } else {
        parse_number(token, "radian value")
    }
}

impl DistSpec {
    pub fn parse(s: &str) -> Result<DistSpec, CliError> {
        if s == "unif" {
            return Ok(DistSpec::Unif);
        }
        if let Some(rest) = s.strip_prefix("gk:") {
            let k = rest
                .parse::<u32>()
                .map_err(|_| usage(rest, "expected an integer k"))?;
            return Ok(DistSpec::Gk(k));
        }
        if let Some(rest) = s.strip_prefix("g3:") {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() != 2 {
                return Err(usage(rest, "expected p,q"));
            }
            return Ok(DistSpec::G3(
                parse_number(parts[0], "weight")?,
                parse_number(parts[1], "weight")?,
            ));
        }
        if let Some(rest) = s.strip_prefix("g4:") {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() != 3 {
                return Err(usage(rest, "expected p,q,r"));
            }
            return Ok(DistSpec::G4(
                parse_number(parts[0], "weight")?,
                parse_number(parts[1], "weight")?,
                parse_number(parts[2], "weight")?,
            ));
        }
        if let Some(rest) = s.strip_prefix("discrete:") {
            let mut atoms = Vec::new();
            for pair in rest.split(',') {
                // An angle token may itself contain a colon (deg: prefix),
                // so split the weight off the end.
                let (angle_tok, weight_tok) = pair
                    .rsplit_once(':')
                    .ok_or_else(|| usage(pair, "expected angle:weight"))?;
                atoms.push((parse_angle(angle_tok)?, parse_number(weight_tok, "weight")?));
            }
            return Ok(DistSpec::Discrete(atoms));
        }
        Err(usage(s, "expected unif, gk:<k>, g3:<p>,<q>, g4:<p>,<q>,<r> or discrete:..."))
    }

    pub fn to_distribution(&self) -> Result<DirectionalDistribution, CliError> {
        let mapped = match self {
            DistSpec::Unif => Ok(DirectionalDistribution::uniform()),
            DistSpec::Gk(k) => DirectionalDistribution::gk(*k),
            DistSpec::G3(p, q) => DirectionalDistribution::g3(*p, *q),
            DistSpec::G4(p, q, r) => DirectionalDistribution::g4(*p, *q, *r),
            DistSpec::Discrete(atoms) => DirectionalDistribution::discrete(atoms),
        };
        mapped.map_err(|e| CliError::Usage(format!("invalid distribution: {e}")))
    }
}

impl std::fmt::Display for DistSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DistSpec::Unif => write!(f, "unif"),
            DistSpec::Gk(k) => write!(f, "gk:{k}"),
            DistSpec::G3(p, q) => write!(f, "g3:{p},{q}"),
            DistSpec::G4(p, q, r) => write!(f, "g4:{p},{q},{r}"),
            DistSpec::Discrete(atoms) => {
                write!(f, "discrete:")?;
                for (i, (a, w)) in atoms.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}:{w}")?;
                }
                Ok(())
            }
        }
    }
}
