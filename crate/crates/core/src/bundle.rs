use std::sync::Arc;

use indexmap::IndexMap;

use crate::classify::{QuantityClass, QuantityClassSpec};
use crate::error::{Error, Result};
use crate::lg::{ArrangementSpec, LgArrangement};
use crate::ontic::OnticModel;
use crate::operational::Protocol;

/// A model together with the named quantity classes, protocols and
/// arrangements declared for it. This is what a model file holds.
#[derive(Debug, Clone, PartialEq)]
pub struct Bundle {
    pub model: Arc<OnticModel>,
    pub quantity_classes: IndexMap<String, Vec<String>>,
    pub protocols: IndexMap<String, Protocol>,
    pub arrangements: IndexMap<String, ArrangementSpec>,
}

impl Bundle {
    pub fn new(model: OnticModel) -> Self {
        Self {
            model: Arc::new(model),
            quantity_classes: IndexMap::new(),
            protocols: IndexMap::new(),
            arrangements: IndexMap::new(),
        }
    }

    pub fn with_class(mut self, label: &str, measurements: &[&str]) -> Self {
        self.quantity_classes
            .insert(label.into(), measurements.iter().map(|m| m.to_string()).collect());
        self
    }

    pub fn with_protocol(mut self, name: &str, p: Protocol) -> Self {
        self.protocols.insert(name.into(), p);
        self
    }

    pub fn with_arrangement(mut self, name: &str, a: ArrangementSpec) -> Self {
        self.arrangements.insert(name.into(), a);
        self
    }

    /// Checks that every class, protocol and arrangement resolves in the model.
    pub fn validate(&self) -> Result<()> {
        for label in self.quantity_classes.keys() {
            self.class(Some(label))?;
        }
        for p in self.protocols.values() {
            p.validate(&self.model)?;
        }
        for name in self.arrangements.keys() {
            self.arrangement(Some(name))?;
        }
        Ok(())
    }

    /// Named arrangement, or the first declared one.
    pub fn arrangement(&self, name: Option<&str>) -> Result<LgArrangement> {
        let spec = match name {
            Some(n) => self.arrangements.get(n).ok_or_else(|| Error::unknown("arrangement", n))?,
            None => self
                .arrangements
                .values()
                .next()
                .ok_or_else(|| Error::domain("the model declares no arrangement"))?,
        };
        LgArrangement::new(Arc::clone(&self.model), spec.clone())
    }

    /// Named quantity class, or the first declared one.
    pub fn class(&self, label: Option<&str>) -> Result<QuantityClass> {
        let (label, ms) = match label {
            Some(l) => self
                .quantity_classes
                .get_key_value(l)
                .ok_or_else(|| Error::unknown("quantity class", l))?,
            None => self
                .quantity_classes
                .first()
                .ok_or_else(|| Error::domain("the model declares no quantity class"))?,
        };
        QuantityClass::new(
            &self.model,
            &QuantityClassSpec {
                label: label.clone(),
                measurements: ms.clone(),
            },
        )
    }

    pub fn protocol(&self, name: &str) -> Result<&Protocol> {
        self.protocols.get(name).ok_or_else(|| Error::unknown("protocol", name))
    }
}
