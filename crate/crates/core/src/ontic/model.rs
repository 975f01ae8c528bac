use indexmap::IndexMap;

use crate::error::{Error, Result};
use crate::ontic::{Distribution, Measurement, OnticStateSpace, TransformationKernel};

/// A finite ontic model: state space, named preparations, transformations
/// and measurements, all over the same space.
///
/// Names are unique across the three kinds so that protocols can refer to
/// procedures without qualification.
#[derive(Debug, Clone, PartialEq)]
pub struct OnticModel {
    name: String,
    space: OnticStateSpace,
    preparations: IndexMap<String, Distribution>,
    transformations: IndexMap<String, TransformationKernel>,
    measurements: IndexMap<String, Measurement>,
    metadata: IndexMap<String, String>,
}

impl OnticModel {
    pub fn new(name: impl Into<String>, space: OnticStateSpace) -> Self {
        Self {
            name: name.into(),
            space,
            preparations: IndexMap::new(),
            transformations: IndexMap::new(),
            measurements: IndexMap::new(),
            metadata: IndexMap::new(),
        }
    }

    fn claim(&self, kind: &'static str, name: &str) -> Result<()> {
        if name.is_empty() {
            return Err(Error::domain(format!("{kind} with empty name")));
        }
        if self.preparations.contains_key(name)
            || self.transformations.contains_key(name)
            || self.measurements.contains_key(name)
        {
            return Err(Error::DuplicateName {
                kind,
                name: name.to_string(),
            });
        }
        Ok(())
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.space.len() {
            return Err(Error::StateSpaceMismatch {
                expected: self.space.len(),
                found,
            });
        }
        Ok(())
    }

    pub fn add_preparation(&mut self, name: impl Into<String>, mu: Distribution) -> Result<()> {
        let name = name.into();
        self.claim("preparation", &name)?;
        self.check_dim(mu.dim())?;
        self.preparations.insert(name, mu);
        Ok(())
    }

    pub fn add_transformation(
        &mut self,
        name: impl Into<String>,
        kernel: TransformationKernel,
    ) -> Result<()> {
        let name = name.into();
        self.claim("transformation", &name)?;
        self.check_dim(kernel.dim())?;
        self.transformations.insert(name, kernel);
        Ok(())
    }

    /// Registers a measurement under its own label.
    pub fn add_measurement(&mut self, m: Measurement) -> Result<()> {
        self.claim("measurement", m.label())?;
        self.check_dim(m.dim())?;
        self.measurements.insert(m.label().to_string(), m);
        Ok(())
    }

    pub fn set_metadata(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.metadata.insert(key.into(), value.into());
    }

    pub fn with_preparation(mut self, name: &str, mu: Distribution) -> Result<Self> {
        self.add_preparation(name, mu)?;
        Ok(self)
    }

    pub fn with_transformation(mut self, name: &str, k: TransformationKernel) -> Result<Self> {
        self.add_transformation(name, k)?;
        Ok(self)
    }

    pub fn with_measurement(mut self, m: Measurement) -> Result<Self> {
        self.add_measurement(m)?;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &OnticStateSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.len()
    }

    pub fn preparations(&self) -> &IndexMap<String, Distribution> {
        &self.preparations
    }

    pub fn transformations(&self) -> &IndexMap<String, TransformationKernel> {
        &self.transformations
    }

    pub fn measurements(&self) -> &IndexMap<String, Measurement> {
        &self.measurements
    }

    pub fn metadata(&self) -> &IndexMap<String, String> {
        &self.metadata
    }

    pub fn preparation(&self, name: &str) -> Result<&Distribution> {
        self.preparations
            .get(name)
            .ok_or_else(|| Error::unknown("preparation", name))
    }

    pub fn transformation(&self, name: &str) -> Result<&TransformationKernel> {
        self.transformations
            .get(name)
            .ok_or_else(|| Error::unknown("transformation", name))
    }

    pub fn measurement(&self, name: &str) -> Result<&Measurement> {
        self.measurements
            .get(name)
            .ok_or_else(|| Error::unknown("measurement", name))
    }

    /// Resolves an optional transformation name; `None` is the identity.
    pub fn maybe_transformation(&self, name: Option<&str>) -> Result<Option<&TransformationKernel>> {
        name.map(|n| self.transformation(n)).transpose()
    }
}
