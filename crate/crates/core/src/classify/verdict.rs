use indexmap::IndexMap;
use serde::Serialize;

use crate::classify::macrodef::{check_macrodefinite, state_values, MacrodefiniteReport};
use crate::classify::nnls::mixture_weights;
use crate::classify::QuantityClass;
use crate::error::{Error, Result};
use crate::ontic::{total_variation, Distribution, OnticModel};
use crate::operational::is_operational_eigenstate_of;
use crate::tolerance::{EPS_HULL, EPS_NORM};

/// Default number of transformation steps applied to declared preparations
/// when building classification candidates.
pub const DEFAULT_IMAGE_DEPTH: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// Every preparation is a mixture of operational eigenstate preparations.
    #[serde(rename = "MR1")]
    Mr1,
    /// Supports stay inside the eigenstate supports, but some preparation is
    /// not such a mixture.
    #[serde(rename = "MR2")]
    Mr2,
    /// Some preparation puts weight on macrodefinite states outside every
    /// eigenstate support.
    #[serde(rename = "MR3")]
    Mr3,
    #[serde(rename = "not-MR")]
    NotMr,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Mr1 => "MR1",
            Verdict::Mr2 => "MR2",
            Verdict::Mr3 => "MR3",
            Verdict::NotMr => "not-MR",
        })
    }
}

/// How one candidate preparation fared.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CandidateResult {
    /// Declared name, followed by the transformations applied (`E | T1 | T2`).
    pub name: String,
    pub in_hull: bool,
    /// Total-variation distance to the best mixture of eigenstate preparations.
    pub hull_residual: f64,
    pub mixture_weights: IndexMap<String, f64>,
    pub support_contained: bool,
    /// Support states outside every eigenstate support.
    pub novel_states: Vec<String>,
}

/// One value's share of a preparation: `μ = Σ_q w_q ν_q`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NuComponent {
    pub value: String,
    pub weight: f64,
    /// Nonzero entries of `ν_q` by state label.
    pub nu: IndexMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NuDecomposition {
    pub preparation: String,
    pub components: Vec<NuComponent>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub class: String,
    pub measurements: Vec<String>,
    pub verdict: Verdict,
    pub macrodefinite: MacrodefiniteReport,
    /// Declared preparations detected as operational eigenstates, by value.
    pub eigenstate_preparations: IndexMap<String, Vec<String>>,
    pub declared_preparations: Vec<String>,
    pub image_depth: usize,
    pub candidates: Vec<CandidateResult>,
    /// Split of the first candidate that is not a mixture, when there is one.
    pub nu_decomposition: Option<NuDecomposition>,
}

/// Declared preparations that are operational eigenstates for `q`.
pub fn eigenstate_preparations(model: &OnticModel, class: &QuantityClass, q: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for (name, mu) in model.preparations() {
        if is_operational_eigenstate_of(model, mu, class.measurements(), q)? {
            out.push(name.clone());
        }
    }
    Ok(out)
}

/// Union of the supports of all declared `q`-eigenstate preparations.
pub fn operational_eigenstate_supports(model: &OnticModel, class: &QuantityClass, q: &str) -> Result<Vec<usize>> {
    let preps = eigenstate_preparations(model, class, q)?;
    if preps.is_empty() {
        return Err(Error::NoEigenstatePreparation {
            class: class.label().to_string(),
            value: q.to_string(),
        });
    }
    let mut inside = vec![false; model.dim()];
    for p in &preps {
        for s in model.preparation(p)?.support() {
            inside[s] = true;
        }
    }
    Ok((0..model.dim()).filter(|&s| inside[s]).collect())
}

/// Declared preparations and their images under every sequence of up to
/// `depth` declared transformations.
pub fn candidate_preparations(model: &OnticModel, depth: usize) -> Vec<(String, Distribution)> {
    let mut out = Vec::new();
    let mut frontier: Vec<(String, Distribution)> = model
        .preparations()
        .iter()
        .map(|(n, d)| (n.clone(), d.clone()))
        .collect();
    for _ in 0..=depth {
        out.extend(frontier.iter().cloned());
        if model.transformations().is_empty() {
            break;
        }
        frontier = frontier
            .iter()
            .flat_map(|(n, d)| {
                model.transformations().iter().map(move |(t, k)| {
                    let w = k.push_forward(d.weights());
                    let d = Distribution::new(w).expect("kernel images stay normalized");
                    (format!("{n} | {t}"), d)
                })
            })
            .collect();
    }
    out
}

/// Sorts the model into MR1 / MR2 / MR3 / not-MR relative to `class`,
/// its declared preparations and their images up to `depth` transformations.
pub fn classify(model: &OnticModel, class: &QuantityClass, depth: usize) -> Result<Classification> {
    let macrodefinite = check_macrodefinite(model, class)?;
    let mut result = Classification {
        class: class.label().to_string(),
        measurements: class.measurements().to_vec(),
        verdict: Verdict::NotMr,
        macrodefinite,
        eigenstate_preparations: IndexMap::new(),
        declared_preparations: model.preparations().keys().cloned().collect(),
        image_depth: depth,
        candidates: vec![],
        nu_decomposition: None,
    };
    if !result.macrodefinite.macrodefinite {
        return Ok(result);
    }

    let mut union = vec![false; model.dim()];
    let mut eigen: Vec<(String, &Distribution)> = Vec::new();
    for q in class.outcomes() {
        let preps = eigenstate_preparations(model, class, q)?;
        if preps.is_empty() {
            return Err(Error::NoEigenstatePreparation {
                class: class.label().to_string(),
                value: q.clone(),
            });
        }
        for p in &preps {
            let mu = model.preparation(p)?;
            for s in mu.support() {
                union[s] = true;
            }
            if !eigen.iter().any(|(n, _)| n == p) {
                eigen.push((p.clone(), mu));
            }
        }
        result.eigenstate_preparations.insert(q.clone(), preps);
    }
    let columns: Vec<&[f64]> = eigen.iter().map(|(_, d)| d.weights()).collect();
    let values = state_values(model, class)?;

    for (name, mu) in candidate_preparations(model, depth) {
        let w = mixture_weights(&columns, mu.weights());
        let mut fit = vec![0.0; model.dim()];
        for (c, &wi) in columns.iter().zip(&w) {
            for (f, x) in fit.iter_mut().zip(c.iter()) {
                *f += wi * x;
            }
        }
        let hull_residual = total_variation(&fit, mu.weights());
        let novel: Vec<String> = mu
            .support()
            .into_iter()
            .filter(|&s| !union[s])
            .map(|s| model.space().label(s).to_string())
            .collect();
        let cand = CandidateResult {
            in_hull: hull_residual <= EPS_HULL,
            hull_residual,
            mixture_weights: eigen.iter().map(|(n, _)| n.clone()).zip(w).collect(),
            support_contained: novel.is_empty(),
            novel_states: novel,
            name: name.clone(),
        };
        if !cand.in_hull && result.nu_decomposition.is_none() {
            result.nu_decomposition = Some(nu_decomposition(model, class, &values, &name, &mu));
        }
        result.candidates.push(cand);
    }

    result.verdict = if result.candidates.iter().all(|c| c.in_hull) {
        Verdict::Mr1
    } else if result.candidates.iter().all(|c| c.support_contained) {
        Verdict::Mr2
    } else {
        Verdict::Mr3
    };
    Ok(result)
}

fn nu_decomposition(
    model: &OnticModel,
    class: &QuantityClass,
    values: &[Option<usize>],
    name: &str,
    mu: &Distribution,
) -> NuDecomposition {
    let components = class
        .outcomes()
        .iter()
        .enumerate()
        .filter_map(|(q, label)| {
            let weight: f64 = (0..model.dim())
                .filter(|&s| values[s] == Some(q))
                .map(|s| mu.weight(s))
                .sum();
            (weight > 0.0).then(|| NuComponent {
                value: label.clone(),
                weight,
                nu: mu
                    .support()
                    .into_iter()
                    .filter(|&s| values[s] == Some(q))
                    .map(|s| (model.space().label(s).to_string(), mu.weight(s) / weight))
                    .collect(),
            })
        })
        .collect();
    NuDecomposition {
        preparation: name.to_string(),
        components,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumCheck {
    pub holds: bool,
    pub max_deviation: f64,
}

/// Whether every declared eigenstate preparation is a fixed point of `m`'s
/// update conditioned on its own value.
pub fn check_equilibrium_property(model: &OnticModel, class: &QuantityClass, m: &str) -> Result<EquilibriumCheck> {
    let meas = model.measurement(m)?;
    let mut max_deviation: f64 = 0.0;
    for q in class.outcomes() {
        let qi = meas.outcome_index(q)?;
        for p in eigenstate_preparations(model, class, q)? {
            let mu = model.preparation(&p)?;
            let after = meas.branch(mu.weights(), qi);
            max_deviation = max_deviation.max(crate::ontic::max_abs_diff(&after, mu.weights()));
        }
    }
    Ok(EquilibriumCheck {
        holds: max_deviation <= EPS_NORM,
        max_deviation,
    })
}
