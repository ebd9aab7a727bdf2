//! Report serialization: deterministic JSON with exact rationals rendered
//! as integers when integral (and within machine range) or as `p/q` strings.

use delsarte::arith::{rat_to_string, Rat};
use delsarte::distribution::{BoundVerdict, Side, SubsetAnalysis, ZeroInterval};
use delsarte::io::describe_scheme;
use delsarte::scheme::{AssociationScheme, NumberMode, VertexSet};
use num::ToPrimitive;
use serde::Serialize;

/// Exact rational rendered as a JSON integer when possible, else "p/q".
#[derive(Clone, Debug)]
pub struct RatJson(pub Rat);

impl Serialize for RatJson {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        if self.0.denom() == &num::BigInt::from(1) {
            if let Some(v) = self.0.numer().to_i64() {
                return ser.serialize_i64(v);
            }
        }
        ser.serialize_str(&rat_to_string(&self.0))
    }
}

pub fn rat_vec(values: &[Rat]) -> Vec<RatJson> {
    values.iter().cloned().map(RatJson).collect()
}

#[derive(Serialize)]
pub struct SchemeMeta {
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    pub classes: usize,
    pub vertices: u64,
    pub number_mode: String,
    pub label: String,
}

pub fn scheme_meta(scheme: &AssociationScheme) -> SchemeMeta {
    let (family, n, q, v, k) = match scheme.vertex_set() {
        VertexSet::Hamming { n, q } => ("hamming".to_string(), Some(*n), Some(*q), None, None),
        VertexSet::Johnson { v, k } => ("johnson".to_string(), None, None, Some(*v), Some(*k)),
        VertexSet::Explicit { .. } => ("explicit".to_string(), None, None, None, None),
    };
    SchemeMeta {
        family,
        n,
        q,
        v,
        k,
        classes: scheme.num_classes(),
        vertices: scheme.num_vertices(),
        number_mode: match scheme.number_mode() {
            NumberMode::Exact => "exact".to_string(),
            NumberMode::Approx { eps } => format!("approx(eps={eps})"),
        },
        label: describe_scheme(scheme),
    }
}

#[derive(Serialize)]
pub struct IntervalJson {
    pub w: usize,
    pub t: usize,
    pub terminal: bool,
}

impl From<&ZeroInterval> for IntervalJson {
    fn from(iv: &ZeroInterval) -> Self {
        IntervalJson {
            w: iv.w,
            t: iv.t,
            terminal: iv.terminal,
        }
    }
}

#[derive(Serialize)]
pub struct BoundJson {
    pub side: &'static str,
    pub interval: IntervalJson,
    pub kind: &'static str,
    pub bound: usize,
    pub satisfied: bool,
    pub gap: i64,
}

impl From<&BoundVerdict> for BoundJson {
    fn from(b: &BoundVerdict) -> Self {
        BoundJson {
            side: match b.side {
                Side::Primal => "primal",
                Side::Dual => "dual",
            },
            interval: IntervalJson::from(&b.interval),
            kind: if b.interval.terminal { "terminal" } else { "interior" },
            bound: b.bound,
            satisfied: b.satisfied,
            gap: b.gap,
        }
    }
}

#[derive(Serialize)]
pub struct AnalysisJson {
    pub size: u64,
    pub a: Vec<RatJson>,
    pub b: Vec<RatJson>,
    pub degree_set: Vec<usize>,
    pub degree: usize,
    pub dual_degree_set: Vec<usize>,
    pub dual_degree: usize,
    pub zero_intervals: Vec<IntervalJson>,
    pub dual_zero_intervals: Vec<IntervalJson>,
    pub bounds: Vec<BoundJson>,
}

pub fn analysis_json(analysis: &SubsetAnalysis) -> AnalysisJson {
    AnalysisJson {
        size: analysis.subset_size,
        a: rat_vec(&analysis.inner),
        b: rat_vec(&analysis.dual),
        degree_set: analysis.degree_set.clone(),
        degree: analysis.degree(),
        dual_degree_set: analysis.dual_degree_set.clone(),
        dual_degree: analysis.dual_degree(),
        zero_intervals: analysis.zero_intervals.iter().map(IntervalJson::from).collect(),
        dual_zero_intervals: analysis
            .dual_zero_intervals
            .iter()
            .map(IntervalJson::from)
            .collect(),
        bounds: analysis.bound_verdicts.iter().map(BoundJson::from).collect(),
    }
}

#[derive(Serialize)]
pub struct Envelope<T: Serialize> {
    pub schema: u32,
    pub command: String,
    pub version: &'static str,
    pub scheme: Option<SchemeMeta>,
    pub tolerances: Tolerances,
    #[serde(flatten)]
    pub payload: T,
}

#[derive(Serialize)]
pub struct Tolerances {
    pub eps_eig: f64,
    pub eps_mom_per_point: f64,
    pub eps_deg: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eps_eig: delsarte::scheme::APPROX_EPS,
            eps_mom_per_point: delsarte::spherical::EPS_MOM_PER_POINT,
            eps_deg: delsarte::spherical::EPS_DEG,
        }
    }
}

pub fn envelope<T: Serialize>(
    command: &str,
    scheme: Option<&AssociationScheme>,
    payload: T,
) -> Envelope<T> {
    Envelope {
        schema: 1,
        command: command.to_string(),
        version: env!("CARGO_PKG_VERSION"),
        scheme: scheme.map(scheme_meta),
        tolerances: Tolerances::default(),
        payload,
    }
}
