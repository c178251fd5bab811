//! Name-keyed registries of constructors.
//!
//! Graph families, group backends and action families are all described in
//! JSON by a discriminating field (`"type"` or `"family"`). A [`Registry`]
//! maps that name to a builder closure which parses the remaining fields.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::DeserializeOwned;
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("{what}: missing discriminator field `{field}`")]
    MissingTag { what: &'static str, field: &'static str },
    #[error("{what}: unknown {field} {name:?} (known: {known})")]
    Unknown {
        what: &'static str,
        field: &'static str,
        name: String,
        known: String,
    },
    #[error("{what} `{name}`: {message}")]
    Invalid {
        what: &'static str,
        name: String,
        message: String,
    },
}

type Builder<T, C> = Box<dyn Fn(&Value, &C) -> Result<T, String> + Send + Sync>;

/// Builders for one family of objects, keyed by name.
///
/// `C` is extra context a builder may need (for actions, the already built
/// group and graph).
pub struct Registry<T, C = ()> {
    what: &'static str,
    field: &'static str,
    builders: BTreeMap<&'static str, Builder<T, C>>,
}

impl<T, C> Registry<T, C> {
    pub fn new(what: &'static str, field: &'static str) -> Self {
        Self {
            what,
            field,
            builders: BTreeMap::new(),
        }
    }

    /// Registers a builder. The closure receives the whole JSON object.
    pub fn register<F>(&mut self, name: &'static str, build: F) -> &mut Self
    where
        F: Fn(&Value, &C) -> Result<T, String> + Send + Sync + 'static,
    {
        self.builders.insert(name, Box::new(build));
        self
    }

    /// Registers a builder that first deserializes the object into `P`.
    pub fn register_typed<P, F>(&mut self, name: &'static str, build: F) -> &mut Self
    where
        P: DeserializeOwned,
        F: Fn(P, &C) -> Result<T, String> + Send + Sync + 'static,
    {
        let what = self.what;
        self.builders.insert(
            name,
            Box::new(move |value, ctx| {
                let params: P = serde_json::from_value(value.clone())
                    .map_err(|e| format!("{what} fields: {e}"))?;
                build(params, ctx)
            }),
        );
        self
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.builders.keys().copied()
    }

    pub fn build(&self, value: &Value, ctx: &C) -> Result<T, SpecError> {
        let name = value
            .get(self.field)
            .and_then(Value::as_str)
            .ok_or(SpecError::MissingTag {
                what: self.what,
                field: self.field,
            })?;
        self.build_named(name, value, ctx)
    }

    pub fn build_named(&self, name: &str, value: &Value, ctx: &C) -> Result<T, SpecError> {
        let builder = self.builders.get(name).ok_or_else(|| SpecError::Unknown {
            what: self.what,
            field: self.field,
            name: name.to_string(),
            known: self.names().collect::<Vec<_>>().join(", "),
        })?;
        builder(value, ctx).map_err(|message| SpecError::Invalid {
            what: self.what,
            name: name.to_string(),
            message,
        })
    }
}

impl<T, C> fmt::Debug for Registry<T, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Registry")
            .field("what", &self.what)
            .field("names", &self.builders.keys().collect::<Vec<_>>())
            .finish()
    }
}
