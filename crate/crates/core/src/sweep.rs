//! Parameter sweeps over noise and squeezing, with deterministic CSV/JSON
//! emission.
//!
//! A sweep walks a rectangular grid over up to three parameters — thermal
//! noise `n`, the geometric mean of the two squeezing strengths in dB, and
//! their ratio in dB — runs the steering analysis at every point, and
//! gathers one [`SweepRecord`] per point in declared row-major order
//! (`n` slowest, ratio fastest). Points are independent, so they are
//! evaluated on a worker pool; the `STEERWIG_THREADS` environment variable
//! caps the pool size.

use rayon::prelude::*;
use std::io::Write;

use crate::analysis::analyze;
use crate::error::{Error, Result};
use crate::factories::{epr_state, graph_state, Graph, Squeezing, ThermalNoise};
use crate::state::{purity_factor, ModePair};

/// Environment variable bounding the sweep worker count.
pub const THREADS_ENV: &str = "STEERWIG_THREADS";

/// One swept (or fixed) parameter: `steps` evenly spaced values over
/// `[min, max]`. A single-step axis pins the parameter at `min`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, steps: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite()) || min > max {
            return Err(Error::InvalidAxis {
                axis: format!("[{min}, {max}]"),
                reason: "bounds must be finite with min <= max".into(),
            });
        }
        if steps == 0 {
            return Err(Error::InvalidAxis {
                axis: format!("[{min}, {max}]"),
                reason: "need at least one step".into(),
            });
        }
        if steps == 1 && min != max {
            return Err(Error::InvalidAxis {
                axis: format!("[{min}, {max}]"),
                reason: "a single-step axis must have min == max".into(),
            });
        }
        Ok(Axis { min, max, steps })
    }

    /// Pin the parameter to one value.
    pub fn fixed(value: f64) -> Result<Self> {
        Axis::new(value, value, 1)
    }

    pub fn value(&self, index: usize) -> f64 {
        if self.steps == 1 {
            self.min
        } else {
            self.min + (self.max - self.min) * index as f64 / (self.steps - 1) as f64
        }
    }
}

/// Which state family the sweep runs over.
#[derive(Debug, Clone)]
pub enum StateFamily {
    /// Two-mode entangled resource; the pair is modes (0, 1).
    Epr,
    /// Graph state with uniform squeezing; subtract in canonical mode `g`,
    /// watch canonical mode `f`.
    Graph { graph: Graph, f: usize, g: usize },
}

/// Full description of one sweep.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub family: StateFamily,
    /// Thermal noise n (vacuum-normalized; 1 = pure).
    pub n: Axis,
    /// Geometric mean of the squeezing strengths, in dB.
    pub sdb: Axis,
    /// Squeezing ratio s1/s2 in dB: s1 = sdb + asym/2, s2 = sdb - asym/2.
    pub asym_db: Axis,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if let StateFamily::Graph { graph, f, g } = &self.family {
            let m = graph.vertex_count();
            if *f >= m || *g >= m {
                return Err(Error::ModeIndex { index: (*f).max(*g), modes: m });
            }
            if f == g {
                return Err(Error::InvalidInput(
                    "graph sweep needs two distinct mode indices".into(),
                ));
            }
            // Graph states use one uniform squeezing strength.
            if self.asym_db.steps != 1 || self.asym_db.min != 0.0 {
                return Err(Error::InvalidAxis {
                    axis: "asym_db".into(),
                    reason: "graph sweeps support only asym_db fixed at 0".into(),
                });
            }
        }
        Ok(())
    }

    pub fn point_count(&self) -> usize {
        self.n.steps * self.sdb.steps * self.asym_db.steps
    }
}

/// Analysis results at one grid point. Field names double as the CSV header.
#[derive(Debug, Clone, Copy)]
pub struct SweepRecord {
    pub n: f64,
    pub sdb: f64,
    pub asym_db: f64,
    pub nu: f64,
    pub tr_conditional: f64,
    pub negativity_bare: bool,
    pub negativity_steered: bool,
    pub w_min_bare: f64,
    pub w_min_opt: f64,
    pub purity_f: f64,
}

/// CSV column names, in emission order; kept in lockstep with
/// [`SweepRecord`]'s fields.
pub const RECORD_FIELDS: [&str; 10] = [
    "n",
    "sdb",
    "asym_db",
    "nu",
    "tr_conditional",
    "negativity_bare",
    "negativity_steered",
    "w_min_bare",
    "w_min_opt",
    "purity_f",
];

/// Build the mode pair a grid point analyzes.
fn pair_at(spec: &SweepSpec, n: f64, sdb: f64, asym_db: f64) -> Result<ModePair> {
    let noise = ThermalNoise::new(n)?;
    match &spec.family {
        StateFamily::Epr => {
            let s1 = Squeezing::from_db(sdb + asym_db / 2.0)?;
            let s2 = Squeezing::from_db(sdb - asym_db / 2.0)?;
            epr_state(s1, s2, noise).extract_canonical_pair(0, 1)
        }
        StateFamily::Graph { graph, f, g } => {
            let s = Squeezing::from_db(sdb)?;
            graph_state(graph, s, noise)?.extract_canonical_pair(*f, *g)
        }
    }
}

/// Run the analysis at one grid point.
///
/// The one place the sweep output departs from [`analyze`]: at points where
/// no photon is available for subtraction (the pure-vacuum corner) the
/// Wigner minima are undefined, and the record stores 0.0 — the value on
/// both sides' decision boundary — so that downstream contouring sees a
/// finite field.
pub fn evaluate_point(spec: &SweepSpec, n: f64, sdb: f64, asym_db: f64) -> Result<SweepRecord> {
    let pair = pair_at(spec, n, sdb, asym_db)?;
    let report = analyze(&pair)?;
    Ok(SweepRecord {
        n,
        sdb,
        asym_db,
        nu: report.nu,
        tr_conditional: report.tr_conditional,
        negativity_bare: report.negativity_bare,
        negativity_steered: report.negativity_steered,
        w_min_bare: report.w_min_bare.unwrap_or(0.0),
        w_min_opt: report.w_min_opt.unwrap_or(0.0),
        purity_f: purity_factor(&pair.v_f)?,
    })
}

/// Worker pool sized by `STEERWIG_THREADS` (unset or 0 means machine
/// parallelism).
pub fn thread_pool() -> Result<rayon::ThreadPool> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(raw) => raw.trim().parse::<usize>().map_err(|_| {
            Error::InvalidInput(format!(
                "{THREADS_ENV} must be a nonnegative integer, got {raw:?}"
            ))
        })?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidInput(format!("could not start worker pool: {e}")))
}

/// Evaluate every grid point, in declared row-major order (n slowest, then
/// sdb, then asym_db). Point evaluations are pure, so the order and values
/// do not depend on the worker count.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRecord>> {
    spec.validate()?;
    let mut points = Vec::with_capacity(spec.point_count());
    for i in 0..spec.n.steps {
        for j in 0..spec.sdb.steps {
            for k in 0..spec.asym_db.steps {
                points.push((spec.n.value(i), spec.sdb.value(j), spec.asym_db.value(k)));
            }
        }
    }
    thread_pool()?.install(|| {
        points
            .par_iter()
            .map(|&(n, sdb, asym)| evaluate_point(spec, n, sdb, asym))
            .collect()
    })
}

/// Fixed-width float formatting used by all text output: 17 significant
/// digits, enough to round-trip any f64 bit pattern.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Metadata echoed at the top of every output file.
pub fn metadata(spec: &SweepSpec) -> Vec<(String, String)> {
    let mut lines = vec![
        ("generator".into(), format!("steerwig v{}", env!("CARGO_PKG_VERSION"))),
        (
            "convention".into(),
            "x = a + a^dag, p = i(a^dag - a), vacuum covariance = identity".into(),
        ),
    ];
    match &spec.family {
        StateFamily::Epr => lines.push(("family".into(), "epr".into())),
        StateFamily::Graph { graph, f, g } => {
            lines.push(("family".into(), "graph".into()));
            lines.push((
                "graph".into(),
                format!("{} vertices, {} edges", graph.vertex_count(), graph.edge_count()),
            ));
            lines.push(("modes".into(), format!("f={f} g={g}")));
        }
    }
    for (name, axis) in [("n", &spec.n), ("sdb", &spec.sdb), ("asym_db", &spec.asym_db)] {
        lines.push((
            format!("axis {name}"),
            format!("min={} max={} steps={}", axis.min, axis.max, axis.steps),
        ));
    }
    lines
}

/// Write records as CSV: `#`-prefixed metadata preamble, a header row named
/// after the record fields, then one line per grid point.
pub fn write_records_csv<W: Write>(
    out: &mut W,
    spec: &SweepSpec,
    records: &[SweepRecord],
) -> Result<()> {
    for (key, value) in metadata(spec) {
        writeln!(out, "# {key}: {value}")?;
    }
    writeln!(out, "{}", RECORD_FIELDS.join(","))?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            format_float(r.n),
            format_float(r.sdb),
            format_float(r.asym_db),
            format_float(r.nu),
            format_float(r.tr_conditional),
            r.negativity_bare,
            r.negativity_steered,
            format_float(r.w_min_bare),
            format_float(r.w_min_opt),
            format_float(r.purity_f),
        )?;
    }
    Ok(())
}

fn record_json(r: &SweepRecord) -> serde_json::Value {
    serde_json::json!({
        "n": r.n,
        "sdb": r.sdb,
        "asym_db": r.asym_db,
        "nu": r.nu,
        "tr_conditional": r.tr_conditional,
        "negativity_bare": r.negativity_bare,
        "negativity_steered": r.negativity_steered,
        "w_min_bare": r.w_min_bare,
        "w_min_opt": r.w_min_opt,
        "purity_f": r.purity_f,
    })
}

/// Write records as a single JSON object `{metadata, records}` mirroring the
/// CSV fields.
pub fn write_records_json<W: Write>(
    out: &mut W,
    spec: &SweepSpec,
    records: &[SweepRecord],
) -> Result<()> {
    let meta: serde_json::Map<String, serde_json::Value> = metadata(spec)
        .into_iter()
        .map(|(k, v)| (k, serde_json::Value::String(v)))
        .collect();
    let doc = serde_json::json!({
        "metadata": meta,
        "records": records.iter().map(record_json).collect::<Vec<_>>(),
    });
    serde_json::to_writer_pretty(&mut *out, &doc)?;
    writeln!(out)?;
    Ok(())
}
