use serde::Serialize;

use crate::error::{Error, Result};
use crate::ontic::{max_abs_diff, Distribution, OnticModel};
use crate::operational::{run_from, Step};
use crate::tolerance::EPS_EQ;

/// Where a measurement sits when testing operational non-disturbance:
/// `preparation, prefix…, (lead, M), suffix…`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OpndContext {
    pub preparation: String,
    pub prefix: Vec<Step>,
    /// Transformation applied just before the tested measurement.
    pub lead: Option<String>,
    pub suffix: Vec<Step>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OpndCheck {
    pub non_disturbing: bool,
    pub max_deviation: f64,
}

/// Deviation between the surrounding statistics with `m` performed (then
/// summed out) and with `m` skipped.
pub fn opnd_deviation(model: &OnticModel, m: &str, ctx: &OpndContext) -> Result<f64> {
    let mu = model.preparation(&ctx.preparation)?;
    deviation_from(model, mu, m, ctx)
}

fn deviation_from(model: &OnticModel, mu: &Distribution, m: &str, ctx: &OpndContext) -> Result<f64> {
    if !ctx.prefix.iter().chain(&ctx.suffix).any(|s| s.perform) {
        return Err(Error::domain(
            "the context around the tested measurement performs no measurement",
        ));
    }
    let mut steps = ctx.prefix.clone();
    steps.push(Step::new(ctx.lead.as_deref(), m, true));
    steps.extend(ctx.suffix.iter().cloned());
    let performed = run_from(model, mu, &steps)?;
    let at = ctx.prefix.len();
    let keep: Vec<usize> = (0..performed.axes().len())
        .filter(|&i| performed.axes()[i].step != at)
        .collect();
    let with_m = performed.marginalize(&keep)?;
    steps[at].perform = false;
    let without_m = run_from(model, mu, &steps)?;
    Ok(max_abs_diff(with_m.probs(), without_m.probs()))
}

/// Tests whether performing `m` right after preparation `e` leaves the
/// statistics of the `suffix` measurements unchanged.
pub fn check_opnd(model: &OnticModel, e: &str, m: &str, suffix: &[Step]) -> Result<OpndCheck> {
    check_opnd_in(
        model,
        m,
        &OpndContext {
            preparation: e.to_string(),
            prefix: vec![],
            lead: None,
            suffix: suffix.to_vec(),
        },
    )
}

/// [`check_opnd`] with an explicit prefix and lead transformation.
pub fn check_opnd_in(model: &OnticModel, m: &str, ctx: &OpndContext) -> Result<OpndCheck> {
    let max_deviation = opnd_deviation(model, m, ctx)?;
    Ok(OpndCheck {
        non_disturbing: max_deviation <= EPS_EQ,
        max_deviation,
    })
}

/// Result of the bounded search over contexts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OpndCompleteCheck {
    pub measurement: String,
    pub non_disturbing: bool,
    pub max_deviation: f64,
    /// The context with the largest deviation, when it is nonzero.
    pub witness: Option<OpndContext>,
    /// Longest prefix-plus-suffix considered.
    pub depth: usize,
    pub contexts_checked: usize,
}

/// Candidate steps: any declared transformation or none, then any declared
/// measurement performed, or just the transformation with nothing measured.
fn step_options(model: &OnticModel) -> Vec<Step> {
    let ts: Vec<Option<&str>> = std::iter::once(None)
        .chain(model.transformations().keys().map(|t| Some(t.as_str())))
        .collect();
    let any_m = model.measurements().keys().next().map(String::as_str).unwrap_or_default();
    let mut out = Vec::new();
    for t in &ts {
        for m in model.measurements().keys() {
            out.push(Step::measure(*t, m));
        }
    }
    for t in ts.iter().flatten() {
        out.push(Step::new(Some(t), any_m, false));
    }
    out
}

fn sequences(options: &[Step], len: usize) -> Vec<Vec<Step>> {
    let mut seqs = vec![vec![]];
    for _ in 0..len {
        seqs = seqs
            .into_iter()
            .flat_map(|s| {
                options.iter().map(move |o| {
                    let mut n = s.clone();
                    n.push(o.clone());
                    n
                })
            })
            .collect();
    }
    seqs
}

/// Every context the bounded search visits: each declared preparation, each
/// lead transformation (or none), and prefix/suffix step sequences with
/// `prefix + suffix <= depth` and at least one measurement in the suffix.
pub fn opnd_contexts(model: &OnticModel, depth: usize) -> Vec<OpndContext> {
    let options = step_options(model);
    let leads: Vec<Option<String>> = std::iter::once(None)
        .chain(model.transformations().keys().cloned().map(Some))
        .collect();
    let mut out = Vec::new();
    for e in model.preparations().keys() {
        for pre_len in 0..depth {
            for suf_len in 1..=depth - pre_len {
                let suffixes: Vec<_> = sequences(&options, suf_len)
                    .into_iter()
                    .filter(|s| s.iter().any(|x| x.perform))
                    .collect();
                for prefix in sequences(&options, pre_len) {
                    for lead in &leads {
                        for suffix in &suffixes {
                            out.push(OpndContext {
                                preparation: e.clone(),
                                prefix: prefix.clone(),
                                lead: lead.clone(),
                                suffix: suffix.clone(),
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Searches all contexts of [`opnd_contexts`] plus any `extra` ones for a
/// statistic that performing `m` disturbs.
pub fn check_opnd_complete_with(
    model: &OnticModel,
    m: &str,
    depth: usize,
    extra: &[OpndContext],
) -> Result<OpndCompleteCheck> {
    model.measurement(m)?;
    let mut contexts = opnd_contexts(model, depth);
    contexts.extend(extra.iter().cloned());
    let mut worst: Option<(usize, f64)> = None;
    for (i, ctx) in contexts.iter().enumerate() {
        let d = opnd_deviation(model, m, ctx)?;
        if worst.map_or(true, |(_, w)| d > w) {
            worst = Some((i, d));
        }
    }
    let max_deviation = worst.map_or(0.0, |(_, d)| d);
    Ok(OpndCompleteCheck {
        measurement: m.to_string(),
        non_disturbing: max_deviation <= EPS_EQ,
        max_deviation,
        witness: worst.filter(|(_, d)| *d > EPS_EQ).map(|(i, _)| contexts[i].clone()),
        depth,
        contexts_checked: contexts.len(),
    })
}

/// Bounded "tout court" non-disturbance check for `m`.
pub fn check_opnd_complete(model: &OnticModel, m: &str, depth: usize) -> Result<OpndCompleteCheck> {
    check_opnd_complete_with(model, m, depth, &[])
}
