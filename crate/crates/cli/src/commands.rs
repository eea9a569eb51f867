//! Subcommand dispatch: parse a document, run the library call, build the
//! output document.

use serde_json::{json, Value};

use coulomb_core::abelian::{self, AbelianTheory, CoulombElement};
use coulomb_core::hypertoric::coulomb_higgs_compare;
use coulomb_core::kac_moody::{
    tensor_decompose, tensor_weight_pairs, weight_multiplicity, CartanMatrix, Weight, WeightSystem,
};
use coulomb_core::quiver::{self, DimVectors, Quiver, SummandKind};
use coulomb_core::{CancelToken, Coweight, Error, GradedDims, HalfInt, IntMatrix};

use crate::input::{Checker, Diagnostic};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    KmMult,
    KmTensor,
    KmDual,
    QuiverSlice,
    QuiverStrata,
    QuiverSatake,
    AbelianRing,
    AbelianQuantize,
    AbelianPoisson,
    AbelianHilbert,
    HypertoricCompare,
    JordanHilbert,
}

impl Kind {
    pub const ALL: [Kind; 12] = [
        Kind::KmMult,
        Kind::KmTensor,
        Kind::KmDual,
        Kind::QuiverSlice,
        Kind::QuiverStrata,
        Kind::QuiverSatake,
        Kind::AbelianRing,
        Kind::AbelianQuantize,
        Kind::AbelianPoisson,
        Kind::AbelianHilbert,
        Kind::HypertoricCompare,
        Kind::JordanHilbert,
    ];

    /// Also the schema file stem under `schemas/`.
    pub fn name(self) -> &'static str {
        match self {
            Kind::KmMult => "km-mult",
            Kind::KmTensor => "km-tensor",
            Kind::KmDual => "km-dual",
            Kind::QuiverSlice => "quiver-slice",
            Kind::QuiverStrata => "quiver-strata",
            Kind::QuiverSatake => "quiver-satake",
            Kind::AbelianRing => "abelian-ring",
            Kind::AbelianQuantize => "abelian-quantize",
            Kind::AbelianPoisson => "abelian-poisson",
            Kind::AbelianHilbert => "abelian-hilbert",
            Kind::HypertoricCompare => "hypertoric-compare",
            Kind::JordanHilbert => "jordan-hilbert",
        }
    }

    pub fn from_name(s: &str) -> Option<Kind> {
        let s = if s == "quiver" { "quiver-slice" } else { s };
        Kind::ALL.into_iter().find(|k| k.name() == s)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Bounds {
    pub max_deg: Option<HalfInt>,
    pub depth: Option<usize>,
}

#[derive(Debug)]
pub enum Failure {
    /// Malformed input or a missing mandatory bound.
    Input(Vec<Diagnostic>),
    /// The library rejected the request.
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

pub struct Outcome {
    pub value: Value,
    /// Set by verification subcommands whose check failed.
    pub mismatch: bool,
}

fn ok(value: Value) -> Result<Outcome, Failure> {
    Ok(Outcome { value, mismatch: false })
}

fn missing_flag(flag: &str, why: &str) -> Failure {
    Failure::Input(vec![Diagnostic {
        pointer: String::new(),
        message: format!("{flag} is required {why}"),
    }])
}

enum Parsed {
    Km { gcm: CartanMatrix, lam: Weight, mu: Option<Weight> },
    Tensor { gcm: CartanMatrix, lam1: Weight, lam2: Weight, mu: Option<Weight> },
    Dual(CartanMatrix),
    Slice(Quiver, DimVectors),
    Strata { gcm: CartanMatrix, lam: Weight, mu: Weight, bound: Option<u32> },
    Satake { gcm: CartanMatrix, lam: Weight, mu: Weight },
    SatakeTensor { gcm: CartanMatrix, lam1: Weight, lam2: Weight, mu: Weight },
    Pair(AbelianTheory, CoulombElement, CoulombElement),
    Quantize(AbelianTheory, CoulombElement),
    Relation(AbelianTheory, Coweight),
    Theory(AbelianTheory),
    Inclusion(IntMatrix),
    Jordan { n: usize, ell: u32 },
}

fn parse(kind: Kind, doc: &Value) -> Result<Parsed, Vec<Diagnostic>> {
    let mut c = Checker::default();
    let parsed = match kind {
        Kind::KmMult => (|| {
            let obj = c.object(doc, "", &["cartan", "lambda", "mu"])?;
            let gcm = c.required(obj, "", "cartan").and_then(|v| c.cartan(v, "/cartan"));
            let rank = gcm.as_ref().map(CartanMatrix::size);
            let lam = c.required(obj, "", "lambda").and_then(|v| c.weight(v, "/lambda", rank));
            let mu = match obj.get("mu") {
                Some(v) => Some(Some(c.weight(v, "/mu", rank)?)),
                None => Some(None),
            };
            Some(Parsed::Km { gcm: gcm?, lam: lam?, mu: mu? })
        })(),
        Kind::KmTensor => (|| {
            let obj = c.object(doc, "", &["cartan", "lambda1", "lambda2", "mu"])?;
            let gcm = c.required(obj, "", "cartan").and_then(|v| c.cartan(v, "/cartan"));
            let rank = gcm.as_ref().map(CartanMatrix::size);
            let lam1 = c.required(obj, "", "lambda1").and_then(|v| c.weight(v, "/lambda1", rank));
            let lam2 = c.required(obj, "", "lambda2").and_then(|v| c.weight(v, "/lambda2", rank));
            let mu = match obj.get("mu") {
                Some(v) => Some(Some(c.weight(v, "/mu", rank)?)),
                None => Some(None),
            };
            Some(Parsed::Tensor { gcm: gcm?, lam1: lam1?, lam2: lam2?, mu: mu? })
        })(),
        Kind::KmDual => (|| {
            let obj = c.object(doc, "", &["cartan"])?;
            let gcm = c.required(obj, "", "cartan").and_then(|v| c.cartan(v, "/cartan"));
            Some(Parsed::Dual(gcm?))
        })(),
        Kind::QuiverSlice => c.quiver_with_dims(doc).map(|(q, d)| Parsed::Slice(q, d)),
        Kind::QuiverStrata => (|| {
            let obj = c.object(doc, "", &["cartan", "lambda", "mu", "bound"])?;
            let gcm = c.required(obj, "", "cartan").and_then(|v| c.cartan(v, "/cartan"));
            let rank = gcm.as_ref().map(CartanMatrix::size);
            let lam = c.required(obj, "", "lambda").and_then(|v| c.weight(v, "/lambda", rank));
            let mu = c.required(obj, "", "mu").and_then(|v| c.weight(v, "/mu", rank));
            let bound = match obj.get("bound") {
                Some(v) => Some(Some(c.count(v, "/bound")? as u32)),
                None => Some(None),
            };
            Some(Parsed::Strata { gcm: gcm?, lam: lam?, mu: mu?, bound: bound? })
        })(),
        Kind::QuiverSatake => (|| {
            let obj = c.object(doc, "", &["cartan", "lambda", "lambda1", "lambda2", "mu"])?;
            let gcm = c.required(obj, "", "cartan").and_then(|v| c.cartan(v, "/cartan"));
            let rank = gcm.as_ref().map(CartanMatrix::size);
            let mu = c.required(obj, "", "mu").and_then(|v| c.weight(v, "/mu", rank));
            if obj.contains_key("lambda1") || obj.contains_key("lambda2") {
                let lam1 = c.required(obj, "", "lambda1").and_then(|v| c.weight(v, "/lambda1", rank));
                let lam2 = c.required(obj, "", "lambda2").and_then(|v| c.weight(v, "/lambda2", rank));
                if obj.contains_key("lambda") {
                    c.fail("/lambda", "cannot be combined with lambda1/lambda2");
                }
                Some(Parsed::SatakeTensor { gcm: gcm?, lam1: lam1?, lam2: lam2?, mu: mu? })
            } else {
                let lam = c.required(obj, "", "lambda").and_then(|v| c.weight(v, "/lambda", rank));
                Some(Parsed::Satake { gcm: gcm?, lam: lam?, mu: mu? })
            }
        })(),
        Kind::AbelianRing | Kind::AbelianPoisson => (|| {
            let obj = c.object(doc, "", &["theory", "a", "b"])?;
            let th = c.required(obj, "", "theory").and_then(|v| c.theory(v, "/theory"))?;
            let a = c.required(obj, "", "a").and_then(|v| c.element(v, "/a", &th));
            let b = c.required(obj, "", "b").and_then(|v| c.element(v, "/b", &th));
            Some(Parsed::Pair(th, a?, b?))
        })(),
        Kind::AbelianQuantize => (|| {
            let obj = c.object(doc, "", &["theory", "element", "lambda"])?;
            let th = c.required(obj, "", "theory").and_then(|v| c.theory(v, "/theory"))?;
            match (obj.get("element"), obj.get("lambda")) {
                (Some(e), None) => Some(Parsed::Quantize(th.clone(), c.element(e, "/element", &th)?)),
                (None, Some(l)) => Some(Parsed::Relation(th.clone(), c.coweight(l, "/lambda", th.rank())?)),
                _ => {
                    c.fail("", "exactly one of \"element\" and \"lambda\" is required");
                    None
                }
            }
        })(),
        Kind::AbelianHilbert => (|| {
            let obj = c.object(doc, "", &["theory"])?;
            let th = c.required(obj, "", "theory").and_then(|v| c.theory(v, "/theory"));
            Some(Parsed::Theory(th?))
        })(),
        Kind::HypertoricCompare => (|| {
            let obj = c.object(doc, "", &["inclusion"])?;
            let rows = c.required(obj, "", "inclusion").and_then(|v| c.int_rows(v, "/inclusion"));
            Some(Parsed::Inclusion(IntMatrix::from_rows(&rows?).expect("rectangular")))
        })(),
        Kind::JordanHilbert => (|| {
            let obj = c.object(doc, "", &["n", "ell"])?;
            let n = c.required(obj, "", "n").and_then(|v| c.count(v, "/n"));
            let ell = c.required(obj, "", "ell").and_then(|v| c.count(v, "/ell"));
            if ell == Some(0) {
                c.fail("/ell", "must be ≥ 1");
            }
            Some(Parsed::Jordan { n: n? as usize, ell: ell? as u32 })
        })(),
    };
    c.finish(parsed)
}

/// Schema diagnostics for a document of the given kind; empty when valid.
pub fn validate(kind: Kind, doc: &Value) -> Vec<Diagnostic> {
    parse(kind, doc).err().unwrap_or_default()
}

pub fn run(kind: Kind, doc: &Value, bounds: Bounds, cancel: &CancelToken) -> Result<Outcome, Failure> {
    let parsed = parse(kind, doc).map_err(Failure::Input)?;
    match parsed {
        Parsed::Km { gcm, lam, mu: Some(mu) } => ok(json!({
            "multiplicity": weight_multiplicity(&gcm, &lam, &mu, cancel)?
        })),
        Parsed::Km { gcm, lam, mu: None } => {
            if !gcm.is_finite() && bounds.depth.is_none() {
                return Err(missing_flag("--depth", "to list weights outside finite type"));
            }
            let ws = WeightSystem::new(&gcm, &lam, bounds.depth, cancel)?;
            let weights: Vec<Value> = ws
                .weights()
                .into_iter()
                .map(|(w, m)| json!({"weight": weight_json(&gcm, &w), "multiplicity": m}))
                .collect();
            ok(json!({"complete": ws.is_complete(), "depth": ws.depth(), "weights": weights}))
        }
        Parsed::Tensor { gcm, lam1, lam2, mu: Some(mu) } => {
            let pairs = tensor_weight_pairs(&gcm, &lam1, &lam2, &mu, cancel)?;
            let total: u64 = pairs.iter().map(|p| p.2).sum();
            let pairs: Vec<Value> = pairs
                .iter()
                .map(|(a, b, m)| json!({"mu1": weight_json(&gcm, a), "mu2": weight_json(&gcm, b), "product": m}))
                .collect();
            ok(json!({"multiplicity": total, "pairs": pairs}))
        }
        Parsed::Tensor { gcm, lam1, lam2, mu: None } => {
            let dec = tensor_decompose(&gcm, &lam1, &lam2, cancel)?;
            let mut entries: Vec<(&Weight, &u64)> = dec.iter().collect();
            entries.sort_by_key(|(w, _)| std::cmp::Reverse(w.fund.iter().sum::<i64>()));
            let components: Vec<Value> = entries
                .into_iter()
                .map(|(w, m)| json!({"highest_weight": weight_json(&gcm, w), "multiplicity": m}))
                .collect();
            ok(json!({"components": components}))
        }
        Parsed::Dual(gcm) => {
            let dual = gcm.langlands_dual();
            ok(json!({"input": cartan_json(&gcm), "dual": cartan_json(&dual)}))
        }
        Parsed::Slice(q, d) => {
            let g = quiver::gauge_data(&q, &d)?;
            let summands: Vec<Value> = g
                .summands
                .iter()
                .map(|s| {
                    let (kind, at) = match s.kind {
                        SummandKind::Edge(k) => ("edge", json!(q.edges()[k])),
                        SummandKind::Framing(i) => ("framing", json!(i)),
                    };
                    json!({"kind": kind, "at": at, "source_dim": s.source_dim, "target_dim": s.target_dim})
                })
                .collect();
            let mut out = serde_json::Map::new();
            if q.has_loops() {
                out.insert("lambda".into(), Value::Null);
                out.insert("mu".into(), Value::Null);
                out.insert("mu_dominant".into(), Value::Null);
            } else {
                let p = quiver::slice_params(&q, &d)?;
                let gcm = q.cartan_matrix()?;
                out.insert("lambda".into(), weight_json(&gcm, &p.lam));
                out.insert("mu".into(), weight_json(&gcm, &p.mu));
                out.insert("mu_dominant".into(), json!(p.mu_dominant));
            }
            out.insert("mv_dimension".into(), json!(d.v.iter().sum::<u64>()));
            out.insert("dim_G".into(), json!(g.dim_g));
            out.insert("dim_N".into(), json!(g.dim_n));
            out.insert("summands".into(), Value::Array(summands));
            ok(Value::Object(out))
        }
        Parsed::Strata { gcm, lam, mu, bound } => {
            if gcm.is_affine() {
                let Some(bound) = bound.or(bounds.depth.map(|d| d as u32)) else {
                    return Err(missing_flag("--depth", "(or a \"bound\" field) for affine strata"));
                };
                let strata = quiver::strata_affine(&gcm, &lam, &mu, bound, cancel)?;
                let list: Vec<Value> = strata
                    .iter()
                    .map(|s| json!({"kappa": weight_json(&gcm, &s.kappa), "partition": s.partition}))
                    .collect();
                ok(json!({"bound": bound, "strata": list}))
            } else {
                let strata = quiver::strata_finite(&gcm, &lam, &mu, cancel)?;
                let list: Vec<Value> = strata.iter().map(|k| weight_json(&gcm, k)).collect();
                ok(json!({"strata": list}))
            }
        }
        Parsed::Satake { gcm, lam, mu } => {
            let dual = gcm.langlands_dual();
            let m = weight_multiplicity(&dual, &lam, &mu, cancel)?;
            let nonempty = quiver::fixed_point_nonempty(&gcm, &lam, &mu, cancel)?;
            let mv = quiver::mv_dimension(&gcm, &lam, &mu).ok();
            ok(json!({"fixed_point_nonempty": nonempty, "dual_multiplicity": m, "mv_dimension": mv}))
        }
        Parsed::SatakeTensor { gcm, lam1, lam2, mu } => {
            let comps = quiver::tensor_fixed_components(&gcm, &lam1, &lam2, &mu, bounds.depth, cancel)?;
            let dual = gcm.langlands_dual();
            let list: Vec<Value> = comps
                .iter()
                .map(|(a, b)| json!({"mu1": weight_json(&dual, a), "mu2": weight_json(&dual, b)}))
                .collect();
            ok(json!({"count": list.len(), "components": list}))
        }
        Parsed::Pair(th, a, b) if kind == Kind::AbelianRing => ok(json!({
            "result": abelian::classical_product(&th, &a, &b)?.display()
        })),
        Parsed::Pair(th, a, b) => ok(json!({"result": abelian::poisson(&th, &a, &b)?.display()})),
        Parsed::Quantize(th, a) => ok(json!({"result": abelian::quantize(&th, &a)?.display()})),
        Parsed::Relation(th, lam) => {
            let (fwd, bwd) = abelian::quantum_relation(&th, &lam)?;
            ok(json!({"forward": fwd.display(), "backward": bwd.display()}))
        }
        Parsed::Theory(th) => {
            let max_deg = bounds
                .max_deg
                .ok_or_else(|| missing_flag("--max-deg", "for Hilbert series"))?;
            ok(graded_json(&abelian::hilbert_series(&th, max_deg, cancel)?))
        }
        Parsed::Inclusion(a) => {
            let max_deg = bounds
                .max_deg
                .ok_or_else(|| missing_flag("--max-deg", "for the comparison"))?;
            let r = coulomb_higgs_compare(&a, max_deg, cancel)?;
            let value = json!({
                "verdict": r.verdict,
                "equal_up_to": r.equal_up_to.map(|d| d.to_string()),
                "max_deg": max_deg.to_string(),
                "coulomb": r.coulomb.coefficients(),
                "higgs": r.higgs.coefficients(),
                "dual_charges": r.dual_charges.to_i64_rows(),
            });
            Ok(Outcome {
                value,
                mismatch: !r.verdict,
            })
        }
        Parsed::Jordan { n, ell } => {
            let max_deg = bounds
                .max_deg
                .ok_or_else(|| missing_flag("--max-deg", "for Hilbert series"))?;
            ok(graded_json(&quiver::jordan_coulomb_hilbert(n, ell, max_deg, cancel)?))
        }
    }
}

fn weight_json(gcm: &CartanMatrix, w: &Weight) -> Value {
    if gcm.is_affine() || w.delta != 0 {
        json!({"fund": w.fund, "delta": w.delta})
    } else {
        json!(w.fund)
    }
}

fn cartan_json(gcm: &CartanMatrix) -> Value {
    json!({
        "matrix": gcm.rows(),
        "symmetrizers": gcm.symmetrizers(),
        "kind": gcm.kind().to_string(),
    })
}

/// Coefficients in steps of ½ starting at degree 0.
fn graded_json(g: &GradedDims) -> Value {
    json!({
        "max_deg": g.max_deg().to_string(),
        "step": "1/2",
        "coefficients": g.coefficients(),
    })
}
