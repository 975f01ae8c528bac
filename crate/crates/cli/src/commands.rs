use std::f64::consts::TAU;

use clap::Args;
use indexmap::IndexMap;
use lglab::classify::{check_equilibrium_property, classify as classify_model, Classification, EquilibriumCheck};
use lglab::lg::{check_implication_chain, disturbance_report, ArrangementSpec, ChainRecord, DisturbanceReport};
use lglab::operational::{run_protocol, Axis, JointDistribution, Protocol};
use lglab::schema::to_json;
use lglab::twoslit::{self, DetectionProbabilities, SlitAmplitudes};
use lglab::zoo::{build, catalog, ZooEntry};
use serde::Serialize;
use serde_json::{json, Value};

use crate::report::{emit, Report};
use crate::source::{SourceArgs, ZooArgs};
use crate::{CliError, Common, Format};

fn options<const N: usize>(pairs: [(&str, Value); N]) -> IndexMap<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn json_only(c: &Common, command: &str) -> Result<(), CliError> {
    match c.format {
        None | Some(Format::Json) => Ok(()),
        Some(f) => Err(CliError::Input(format!("`{command}` writes JSON only, not {f:?}"))),
    }
}

// ------------------------------------------------------------------ run

#[derive(Debug, Serialize)]
pub struct JointRow {
    pub outcomes: Vec<String>,
    pub p: f64,
}

#[derive(Debug, Serialize)]
pub struct JointTable {
    pub axes: Vec<Axis>,
    pub rows: Vec<JointRow>,
}

impl From<&JointDistribution> for JointTable {
    fn from(j: &JointDistribution) -> Self {
        let rows = j
            .entries()
            .map(|(idx, p)| JointRow {
                outcomes: idx.iter().zip(j.axes()).map(|(&q, a)| a.outcomes[q].clone()).collect(),
                p,
            })
            .collect();
        Self {
            axes: j.axes().to_vec(),
            rows,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RunResult {
    pub protocol: String,
    pub definition: Protocol,
    pub joint: JointTable,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub marginal: Option<JointTable>,
}

fn csv_table(t: &JointTable) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = t.axes.iter().map(|a| format!("{}@{}", a.measurement, a.step)).collect();
    header.push("p".into());
    let bad = |e: csv::Error| CliError::Input(e.to_string());
    w.write_record(&header).map_err(bad)?;
    for r in &t.rows {
        let mut rec = r.outcomes.clone();
        rec.push(r.p.to_string());
        w.write_record(&rec).map_err(bad)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Input(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv of UTF-8 fields"))
}

pub fn run(c: &Common, source: &SourceArgs, protocol: &str, marginal: &[usize]) -> Result<(), CliError> {
    let (bundle, echo) = source.load()?;
    let p = bundle.protocol(protocol)?.clone();
    let joint = run_protocol(&bundle.model, &p)?;
    let marg = if marginal.is_empty() {
        None
    } else {
        Some(JointTable::from(&joint.marginalize(marginal)?))
    };
    let result = RunResult {
        protocol: protocol.into(),
        definition: p,
        joint: JointTable::from(&joint),
        marginal: marg,
    };
    if c.format == Some(Format::Csv) {
        return emit(c, &csv_table(result.marginal.as_ref().unwrap_or(&result.joint))?);
    }
    json_only(c, "run")?;
    let opts = options([("protocol", json!(protocol)), ("marginal", json!(marginal))]);
    emit(c, &Report::new(c, "run", Some(echo), opts, result).to_json())
}

// ------------------------------------------------------------------- lg

#[derive(Debug, Serialize)]
pub struct LgResult {
    pub arrangement: String,
    pub definition: ArrangementSpec,
    pub lg_all_three: f64,
    pub lg_pairwise: f64,
    pub max_abs_d: f64,
    pub disturbance: DisturbanceReport,
    pub opnd_depth: usize,
    pub chain: ChainRecord,
}

pub fn lg(c: &Common, source: &SourceArgs, arrangement: Option<&str>) -> Result<(), CliError> {
    json_only(c, "lg")?;
    let (bundle, echo) = source.load()?;
    let name = match arrangement {
        Some(n) => n.to_string(),
        None => bundle.arrangements.keys().next().cloned().unwrap_or_default(),
    };
    let a = bundle.arrangement(arrangement)?;
    let d = disturbance_report(&a)?;
    let chain = check_implication_chain(&a, c.depth)?;
    let residual = d.decomposition_residual.abs();
    let d3 = d.max_abs_d3();
    let result = LgResult {
        arrangement: name,
        definition: a.spec().clone(),
        lg_all_three: d.lg_all_three,
        lg_pairwise: d.lg_pairwise,
        max_abs_d: d.max_abs_d(),
        disturbance: d,
        opnd_depth: c.depth,
        chain,
    };
    let opts = options([("arrangement", json!(arrangement)), ("depth", json!(c.depth)), ("tol", json!(c.tol))]);
    emit(c, &Report::new(c, "lg", Some(echo), opts, result).to_json())?;
    if residual > c.tol || d3 > c.tol {
        return Err(CliError::Identity(format!(
            "decomposition residual {residual:e}, max |D3| {d3:e} (threshold {:e})",
            c.tol
        )));
    }
    Ok(())
}

// ------------------------------------------------------------- classify

#[derive(Debug, Serialize)]
pub struct ClassifyResult {
    #[serde(flatten)]
    pub classification: Classification,
    /// Per class member: are the eigenstate preparations fixed points of its
    /// conditioned update?
    pub equilibrium: IndexMap<String, EquilibriumCheck>,
}

pub fn classify(c: &Common, source: &SourceArgs, class: Option<&str>) -> Result<(), CliError> {
    json_only(c, "classify")?;
    let (bundle, echo) = source.load()?;
    let qc = bundle.class(class)?;
    let classification = classify_model(&bundle.model, &qc, c.depth)?;
    let equilibrium = qc
        .measurements()
        .iter()
        .map(|m| Ok((m.clone(), check_equilibrium_property(&bundle.model, &qc, m)?)))
        .collect::<Result<_, lglab::Error>>()?;
    let result = ClassifyResult {
        classification,
        equilibrium,
    };
    let opts = options([("class", json!(class)), ("depth", json!(c.depth))]);
    emit(c, &Report::new(c, "classify", Some(echo), opts, result).to_json())
}

// -------------------------------------------------------------- twoslit

#[derive(Args, Debug)]
pub struct TwoSlitArgs {
    /// |psi1|^2 at the screen bin.
    #[arg(long, required_unless_present = "sweep")]
    pub mod1_sq: Option<f64>,
    /// |psi2|^2; defaults to 1 - |psi1|^2.
    #[arg(long)]
    pub mod2_sq: Option<f64>,
    /// Phase of psi2 relative to psi1, radians.
    #[arg(long, required_unless_present = "sweep", allow_negative_numbers = true)]
    pub phi: Option<f64>,
    /// Sweep |psi1|^2 over [0, 1] and phi over [0, 2pi) instead.
    #[arg(long, conflicts_with_all = ["mod1_sq", "mod2_sq", "phi"])]
    pub sweep: bool,
    /// Sweep size as MODxPHASE.
    #[arg(long, default_value = "100x360", requires = "sweep")]
    pub grid: String,
}

#[derive(Debug, Serialize)]
pub struct EngineCheck {
    pub lg_pairwise: f64,
    pub d2_plus_plus: f64,
    pub max_abs_difference: f64,
}

#[derive(Debug, Serialize)]
pub struct TwoSlitPoint {
    pub mod1_sq: f64,
    pub mod2_sq: f64,
    pub phi: f64,
    pub detection: DetectionProbabilities,
    pub interference_term: f64,
    pub lg_plus: f64,
    pub lg_plus_mirrored: f64,
    pub violated: bool,
    pub violated_mirrored: bool,
    pub disturbance_d2: f64,
    /// The same quantities from the compiled finite model.
    pub engine: EngineCheck,
}

fn parse_grid(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Input(format!("--grid `{s}`: expected MODxPHASE, e.g. 100x360"));
    let (m, p) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    let (m, p): (usize, usize) = (m.trim().parse().map_err(|_| bad())?, p.trim().parse().map_err(|_| bad())?);
    if m < 2 || p < 1 {
        return Err(CliError::Input(format!("--grid `{s}`: need at least 2 moduli and 1 phase")));
    }
    Ok((m, p))
}

pub fn twoslit(c: &Common, args: &TwoSlitArgs) -> Result<(), CliError> {
    if args.sweep {
        let (nm, np) = parse_grid(&args.grid)?;
        let mods: Vec<f64> = (0..nm).map(|i| i as f64 / (nm - 1) as f64).collect();
        let phis: Vec<f64> = (0..np).map(|k| TAU * k as f64 / np as f64).collect();
        let rows = twoslit::violation_map(&mods, &phis)?;
        return match c.format {
            None | Some(Format::Csv) => {
                let mut buf = Vec::new();
                twoslit::write_csv(&rows, &mut buf).map_err(|e| CliError::Input(e.to_string()))?;
                emit(c, &String::from_utf8(buf).expect("csv is ASCII"))
            }
            Some(Format::Json) => {
                let result = json!({"rows": rows, "boundary": twoslit::boundary_curve(&mods)});
                let opts = options([("sweep", json!(true)), ("grid", json!(args.grid))]);
                emit(c, &Report::new(c, "twoslit", None, opts, result).to_json())
            }
            Some(Format::Text) => Err(CliError::Input("the sweep writes CSV or JSON".into())),
        };
    }
    json_only(c, "twoslit")?;
    let m1 = args.mod1_sq.expect("clap requires --mod1-sq");
    let m2 = args.mod2_sq.unwrap_or(1.0 - m1);
    let raw_phi = args.phi.expect("clap requires --phi");
    let mut warnings = Vec::new();
    let (phi, moved) = twoslit::normalize_phase(raw_phi);
    if moved {
        let w = format!("phi = {raw_phi} is outside [0, 2pi); using {phi}");
        eprintln!("warning: {w}");
        warnings.push(w);
    }
    let s = SlitAmplitudes::from_moduli(m1, m2, phi)?;
    let lg_plus = twoslit::lg_plus_value(&s);
    let mirrored = twoslit::lg_plus_mirrored(&s);
    let d2 = twoslit::disturbance_d2(&s);
    let compiled = twoslit::compile_to_arrangement(&s)?.arrangement(None)?;
    let engine = disturbance_report(&compiled)?;
    let engine_d2 = engine.d2_value("+1", "+1").expect("binary arrangement");
    let result = TwoSlitPoint {
        mod1_sq: m1,
        mod2_sq: m2,
        phi,
        detection: twoslit::detection_probabilities(&s),
        interference_term: twoslit::interference_term(&s),
        lg_plus,
        lg_plus_mirrored: mirrored,
        violated: twoslit::is_violation(lg_plus),
        violated_mirrored: twoslit::is_violation(mirrored),
        disturbance_d2: d2,
        engine: EngineCheck {
            lg_pairwise: engine.lg_pairwise,
            d2_plus_plus: engine_d2,
            max_abs_difference: (engine.lg_pairwise - lg_plus).abs().max((engine_d2 - d2).abs()),
        },
    };
    let opts = options([("mod1_sq", json!(m1)), ("mod2_sq", json!(m2)), ("phi", json!(raw_phi))]);
    let mut report = Report::new(c, "twoslit", None, opts, result);
    report.warnings = warnings;
    emit(c, &report.to_json())
}

// ------------------------------------------------------------------ zoo

pub fn zoo_list(c: &Common) -> Result<(), CliError> {
    let entries: Vec<ZooEntry> = catalog();
    match c.format {
        None | Some(Format::Text) => {
            let width = entries.iter().map(|e| e.name.len()).max().unwrap_or(0);
            let mut out = String::new();
            for e in &entries {
                out.push_str(&format!("{:width$}  {}\n{:width$}  ({})\n", e.name, e.summary, "", e.anchor));
            }
            emit(c, &out)
        }
        Some(Format::Json) => emit(c, &(serde_json::to_string_pretty(&entries).expect("catalog serializes") + "\n")),
        Some(Format::Csv) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let bad = |e: csv::Error| CliError::Input(e.to_string());
            w.write_record(["name", "summary", "anchor", "params"]).map_err(bad)?;
            for e in &entries {
                w.write_record([e.name, e.summary, e.anchor, &e.params.join(" ")]).map_err(bad)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Input(e.to_string()))?;
            emit(c, &String::from_utf8(bytes).expect("catalog is UTF-8"))
        }
    }
}

pub fn zoo_export(c: &Common, name: &str, params: &ZooArgs) -> Result<(), CliError> {
    json_only(c, "zoo export")?;
    let bundle = build(name, &params.params())?;
    let mut text = to_json(&bundle);
    text.push('\n');
    emit(c, &text)
}
