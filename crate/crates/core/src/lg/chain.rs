use serde::Serialize;

use crate::error::{Error, Result};
use crate::lg::opnd::{check_opnd_complete_with, check_opnd_in, OpndCheck, OpndCompleteCheck, OpndContext};
use crate::lg::values::disturbance_report;
use crate::lg::LgArrangement;
use crate::ontic::is_ontically_noninvasive;
use crate::operational::Step;
use crate::tolerance::EPS_EQ;

/// Default length bound for the complete non-disturbance search.
pub const DEFAULT_OPND_DEPTH: usize = 2;

/// Truth values along `ONI => OPND complete => OPND specific => LGI`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainRecord {
    /// M1 and M2 are both ontically noninvasive.
    pub oni: bool,
    /// M1 and M2 pass the bounded complete non-disturbance search.
    pub opnd_complete: bool,
    /// D1 = 0 and D2 = 0 for this arrangement.
    pub opnd_specific: bool,
    /// `lg_pairwise >= -1 - eps`.
    pub lgi_holds: bool,
    pub lg_pairwise: f64,
    pub oni_deviation: [f64; 2],
    pub complete: [OpndCompleteCheck; 2],
    pub specific: [OpndCheck; 2],
}

impl ChainRecord {
    pub fn as_tuple(&self) -> (bool, bool, bool, bool) {
        (self.oni, self.opnd_complete, self.opnd_specific, self.lgi_holds)
    }
}

/// The two contexts whose non-disturbance is exactly D1 = 0 and D2 = 0.
pub fn specific_contexts(a: &LgArrangement) -> [OpndContext; 2] {
    let s = a.spec();
    [
        OpndContext {
            preparation: s.preparation.clone(),
            prefix: vec![],
            lead: None,
            suffix: vec![Step::measure(s.t1.as_deref(), &s.m2), Step::measure(s.t2.as_deref(), &s.m3)],
        },
        OpndContext {
            preparation: s.preparation.clone(),
            prefix: vec![Step::measure(None, &s.m1)],
            lead: s.t1.clone(),
            suffix: vec![Step::measure(s.t2.as_deref(), &s.m3)],
        },
    ]
}

/// Evaluates every link of the chain and fails with an engine defect if a
/// forward implication is broken.
///
/// The complete search always includes the arrangement's own contexts, so
/// the middle implication holds at any depth.
pub fn check_implication_chain(a: &LgArrangement, depth: usize) -> Result<ChainRecord> {
    let model = a.model();
    let s = a.spec();
    let ctx = specific_contexts(a);
    let oni1 = is_ontically_noninvasive(model.measurement(&s.m1)?, None)?;
    let oni2 = is_ontically_noninvasive(model.measurement(&s.m2)?, None)?;
    let complete = [
        check_opnd_complete_with(model, &s.m1, depth, &ctx)?,
        check_opnd_complete_with(model, &s.m2, depth, &ctx)?,
    ];
    let specific = [check_opnd_in(model, &s.m1, &ctx[0])?, check_opnd_in(model, &s.m2, &ctx[1])?];
    let lg_pairwise = disturbance_report(a)?.lg_pairwise;

    let record = ChainRecord {
        oni: oni1.noninvasive && oni2.noninvasive,
        opnd_complete: complete.iter().all(|c| c.non_disturbing),
        opnd_specific: specific.iter().all(|c| c.non_disturbing),
        lgi_holds: lg_pairwise >= -1.0 - EPS_EQ,
        lg_pairwise,
        oni_deviation: [oni1.deviation, oni2.deviation],
        complete,
        specific,
    };
    let links = [
        (record.oni, record.opnd_complete, "ontic noninvasiveness without complete non-disturbance"),
        (record.opnd_complete, record.opnd_specific, "complete non-disturbance without the specific conditions"),
        (record.opnd_specific, record.lgi_holds, "specific non-disturbance with a violated inequality"),
    ];
    for (premise, conclusion, what) in links {
        if premise && !conclusion {
            return Err(Error::EngineDefect(format!("{what} (lg_pairwise = {lg_pairwise})")));
        }
    }
    Ok(record)
}
