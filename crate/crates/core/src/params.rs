//! Named exact parameters, parsed from `key=value,key=value`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::rational::{parse_rational, ParseRationalError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("malformed parameter assignment `{0}` (expected key=value)")]
    Syntax(String),
    #[error("parameter `{key}`: {source}")]
    Value {
        key: String,
        #[source]
        source: ParseRationalError,
    },
    #[error("parameter `{0}` given twice")]
    Duplicate(String),
    #[error("missing parameter `{key}` for {context}")]
    Missing { key: String, context: String },
    #[error("unknown parameter `{key}` for {context}")]
    Unknown { key: String, context: String },
    #[error("parameter `{key}` is inadmissible for {context}: {reason}")]
    Inadmissible {
        key: String,
        context: String,
        reason: String,
    },
}

/// Ordered map of parameter names to exact values.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParamSet {
    values: BTreeMap<String, Rational>,
}

impl ParamSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn parse(text: &str) -> Result<Self, ParamError> {
        let mut out = ParamSet::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| ParamError::Syntax(part.to_string()))?;
            let key = key.trim();
            if key.is_empty() {
                return Err(ParamError::Syntax(part.to_string()));
            }
            let value = parse_rational(value).map_err(|source| ParamError::Value {
                key: key.to_string(),
                source,
            })?;
            if out.values.insert(key.to_string(), value).is_some() {
                return Err(ParamError::Duplicate(key.to_string()));
            }
        }
        Ok(out)
    }

    pub fn with(mut self, key: &str, value: Rational) -> Self {
        self.values.insert(key.to_string(), value);
        self
    }

    pub fn get(&self, key: &str) -> Option<&Rational> {
        self.values.get(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Rational)> {
        self.values.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Starts a validated read for `context`; unread keys are rejected by [`ParamReader::finish`].
    pub fn reader(&self, context: impl Into<String>) -> ParamReader<'_> {
        ParamReader {
            set: self,
            context: context.into(),
            seen: BTreeSet::new(),
        }
    }
}

impl fmt::Display for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(","))
    }
}

pub struct ParamReader<'a> {
    set: &'a ParamSet,
    context: String,
    seen: BTreeSet<&'static str>,
}

impl ParamReader<'_> {
    pub fn optional(&mut self, key: &'static str) -> Option<Rational> {
        self.seen.insert(key);
        self.set.get(key).cloned()
    }

    pub fn required(&mut self, key: &'static str) -> Result<Rational, ParamError> {
        self.optional(key).ok_or_else(|| ParamError::Missing {
            key: key.to_string(),
            context: self.context.clone(),
        })
    }

    pub fn inadmissible(&self, key: &str, reason: impl Into<String>) -> ParamError {
        ParamError::Inadmissible {
            key: key.to_string(),
            context: self.context.clone(),
            reason: reason.into(),
        }
    }

    pub fn nonzero(&mut self, key: &'static str) -> Result<Rational, ParamError> {
        let v = self.required(key)?;
        if v.is_zero() {
            return Err(self.inadmissible(key, "must be nonzero"));
        }
        Ok(v)
    }

    /// `σ ∈ {0, 1}`, defaulting to 0 when absent.
    pub fn sigma(&mut self) -> Result<u8, ParamError> {
        match self.optional("sigma") {
            None => Ok(0),
            Some(v) if v.is_integer() && (v.is_zero() || v == Rational::from_integer(1.into())) => {
                Ok(v.to_integer().to_u8().unwrap_or(0))
            }
            Some(_) => Err(self.inadmissible("sigma", "must be 0 or 1")),
        }
    }

    /// Integer `> min`.
    pub fn integer_above(&mut self, key: &'static str, min: i64) -> Result<u32, ParamError> {
        let v = self.required(key)?;
        match v.is_integer().then(|| v.to_integer().to_i64()).flatten() {
            Some(k) if k > min && k <= u32::MAX as i64 => Ok(k as u32),
            _ => Err(self.inadmissible(key, format!("must be an integer greater than {min}"))),
        }
    }

    pub fn finish(self) -> Result<(), ParamError> {
        if let Some(key) = self.set.values.keys().find(|k| !self.seen.contains(k.as_str())) {
            return Err(ParamError::Unknown {
                key: key.clone(),
                context: self.context,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn parse_and_read() {
        let p = ParamSet::parse("beta=1, lambda=3/7,sigma=0").unwrap();
        let mut r = p.reader("eta0beta");
        assert_eq!(r.required("lambda").unwrap(), rat(3, 7));
        assert_eq!(r.sigma().unwrap(), 0);
        assert_eq!(r.nonzero("beta").unwrap(), rat(1, 1));
        r.finish().unwrap();
        assert_eq!(p.to_string(), "beta=1,lambda=3/7,sigma=0");
    }

    #[test]
    fn diagnostics_name_the_key() {
        let p = ParamSet::parse("lambda=1,gamma=2").unwrap();
        let mut r = p.reader("eta10");
        r.required("lambda").unwrap();
        let err = r.finish().unwrap_err();
        assert!(err.to_string().contains("`gamma`"), "{err}");

        let p = ParamSet::parse("beta=0").unwrap();
        let err = p.reader("eta0beta").nonzero("beta").unwrap_err();
        assert!(err.to_string().contains("`beta`"));

        let err = ParamSet::parse("lambda").unwrap_err();
        assert_eq!(err, ParamError::Syntax("lambda".into()));
        assert!(matches!(ParamSet::parse("a=1,a=2"), Err(ParamError::Duplicate(_))));
        assert!(matches!(ParamSet::parse("a=x"), Err(ParamError::Value { .. })));
    }

    #[test]
    fn sigma_and_integers() {
        let p = ParamSet::parse("sigma=2,n=1").unwrap();
        let mut r = p.reader("x");
        assert!(r.sigma().is_err());
        assert!(r.integer_above("n", 1).is_err());
        let p = ParamSet::parse("n=5").unwrap();
        assert_eq!(p.reader("x").integer_above("n", 1).unwrap(), 5);
    }
}
