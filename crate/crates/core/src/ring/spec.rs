//! Ring descriptions and the textual grammar
//! `zn:<n>` | `mat:<k>:<spec>` | `prod:<spec>,<spec>,...`.
//!
//! Product components may be wrapped in parentheses so that nested products
//! stay unambiguous, e.g. `prod:(prod:zn:2,zn:3),zn:5`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::RingError;

/// Description of a finite unital ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    /// The residue ring Z_n.
    Residue { n: u64 },
    /// Square matrices of size `k` over an inner ring.
    Matrix { k: u32, inner: Box<RingSpec> },
    /// Finite direct product, components in order.
    Product(Vec<RingSpec>),
}

impl RingSpec {
    pub fn residue(n: u64) -> Self {
        RingSpec::Residue { n }
    }

    pub fn matrix(k: u32, inner: RingSpec) -> Self {
        RingSpec::Matrix {
            k,
            inner: Box::new(inner),
        }
    }

    pub fn product(factors: Vec<RingSpec>) -> Self {
        RingSpec::Product(factors)
    }

    /// Checks the structural invariants (n ≥ 2, k ≥ 1, non-empty products).
    pub fn validate(&self) -> Result<(), RingError> {
        match self {
            RingSpec::Residue { n } if *n < 2 => Err(RingError::MalformedSpec(format!(
                "residue modulus must be at least 2, got {n}"
            ))),
            RingSpec::Residue { .. } => Ok(()),
            RingSpec::Matrix { k, .. } if *k == 0 => Err(RingError::MalformedSpec(
                "matrix size must be at least 1".into(),
            )),
            RingSpec::Matrix { inner, .. } => inner.validate(),
            RingSpec::Product(factors) if factors.is_empty() => Err(RingError::MalformedSpec(
                "product needs at least one component".into(),
            )),
            RingSpec::Product(factors) => factors.iter().try_for_each(RingSpec::validate),
        }
    }

    /// Cardinality of the described ring, or `None` when it overflows `u128`.
    pub fn cardinality(&self) -> Option<u128> {
        match self {
            RingSpec::Residue { n } => Some(u128::from(*n)),
            RingSpec::Matrix { k, inner } => {
                let base = inner.cardinality()?;
                let entries = k.checked_mul(*k)?;
                base.checked_pow(entries)
            }
            RingSpec::Product(factors) => factors
                .iter()
                .try_fold(1u128, |acc, f| acc.checked_mul(f.cardinality()?)),
        }
    }

    /// Whether multiplication is commutative for every ring of this shape.
    pub fn is_commutative(&self) -> bool {
        match self {
            RingSpec::Residue { .. } => true,
            RingSpec::Matrix { k, inner } => *k == 1 && inner.is_commutative(),
            RingSpec::Product(factors) => factors.iter().all(RingSpec::is_commutative),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Residue { n } => write!(f, "zn:{n}"),
            RingSpec::Matrix { k, inner } => write!(f, "mat:{k}:{inner}"),
            RingSpec::Product(factors) => {
                f.write_str("prod:")?;
                for (i, factor) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    if needs_parens(factor) {
                        write!(f, "({factor})")?;
                    } else {
                        write!(f, "{factor}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

// A component needs grouping when it (transitively) ends in a product, since
// its commas would otherwise be read as siblings.
fn needs_parens(spec: &RingSpec) -> bool {
    match spec {
        RingSpec::Residue { .. } => false,
        RingSpec::Matrix { inner, .. } => needs_parens(inner),
        RingSpec::Product(_) => true,
    }
}

impl Serialize for RingSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for RingSpec {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let spec = parse_spec(s.trim())?;
        spec.validate()?;
        Ok(spec)
    }
}

fn malformed(input: &str, why: &str) -> RingError {
    RingError::MalformedSpec(format!("`{input}`: {why}"))
}

fn parse_number<T: FromStr>(token: &str, whole: &str, what: &str) -> Result<T, RingError> {
    token
        .trim()
        .parse()
        .map_err(|_| malformed(whole, &format!("invalid {what} `{token}`")))
}

fn parse_spec(input: &str) -> Result<RingSpec, RingError> {
    let s = input.trim();
    if let Some(inner) = strip_group(s) {
        return parse_spec(inner);
    }
    if let Some(rest) = s.strip_prefix("zn:") {
        let n = parse_number(rest, input, "modulus")?;
        return Ok(RingSpec::Residue { n });
    }
    if let Some(rest) = s.strip_prefix("mat:") {
        let (k, inner) = rest
            .split_once(':')
            .ok_or_else(|| malformed(input, "expected `mat:<k>:<spec>`"))?;
        let k = parse_number(k, input, "matrix size")?;
        return Ok(RingSpec::matrix(k, parse_spec(inner)?));
    }
    if let Some(rest) = s.strip_prefix("prod:") {
        let parts = split_top_level(rest, ',', input)?;
        if parts.iter().all(|p| p.trim().is_empty()) {
            return Err(malformed(input, "product needs at least one component"));
        }
        let factors = parts
            .into_iter()
            .map(parse_spec)
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(RingSpec::Product(factors));
    }
    Err(malformed(
        input,
        "expected `zn:<n>`, `mat:<k>:<spec>` or `prod:<spec>,...`",
    ))
}

/// Returns the contents when `s` is a single parenthesized group.
fn strip_group(s: &str) -> Option<&str> {
    let inner = s.strip_prefix('(')?.strip_suffix(')')?;
    let mut depth = 0i32;
    for ch in inner.chars() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            _ => {}
        }
    }
    (depth == 0).then_some(inner)
}

/// Splits on `sep` outside of parentheses.
pub(crate) fn split_top_level<'a>(
    s: &'a str,
    sep: char,
    whole: &str,
) -> Result<Vec<&'a str>, RingError> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(malformed(whole, "unbalanced parentheses"));
                }
            }
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(malformed(whole, "unbalanced parentheses"));
    }
    parts.push(&s[start..]);
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_three_shapes() {
        assert_eq!("zn:6".parse::<RingSpec>().unwrap(), RingSpec::residue(6));
        assert_eq!(
            "mat:2:zn:2".parse::<RingSpec>().unwrap(),
            RingSpec::matrix(2, RingSpec::residue(2))
        );
        assert_eq!(
            "prod:zn:2,zn:3".parse::<RingSpec>().unwrap(),
            RingSpec::product(vec![RingSpec::residue(2), RingSpec::residue(3)])
        );
    }

    #[test]
    fn nested_products_round_trip_through_display() {
        let spec: RingSpec = "prod:(prod:zn:2,zn:3),mat:2:zn:2".parse().unwrap();
        assert_eq!(spec.to_string(), "prod:(prod:zn:2,zn:3),mat:2:zn:2");
        assert_eq!(spec.to_string().parse::<RingSpec>().unwrap(), spec);
        assert_eq!(spec.cardinality(), Some(6 * 16));
    }

    #[test]
    fn rejects_malformed_specs() {
        for bad in [
            "zn:1",
            "zn:x",
            "mat:0:zn:2",
            "mat:2",
            "prod:",
            "foo:3",
            "prod:(zn:2",
            "zn:-3",
        ] {
            assert!(bad.parse::<RingSpec>().is_err(), "{bad} should not parse");
        }
    }

    #[test]
    fn commutativity_by_shape() {
        assert!("prod:zn:2,zn:3"
            .parse::<RingSpec>()
            .unwrap()
            .is_commutative());
        assert!(!"mat:2:zn:2".parse::<RingSpec>().unwrap().is_commutative());
        assert!("mat:1:zn:5".parse::<RingSpec>().unwrap().is_commutative());
    }
}
