//! JSON documents for instances, solutions and graphs.
//!
//! Rationals are written as JSON integers when integral and as `"p/q"`
//! strings otherwise. On input, integers, `"n"` and `"p/q"` strings are all
//! accepted; `"p/q"` is reduced. Node ids may be strings or integers.
//!
//! ```text
//! instance  := { "supplies": [ { "id": ID, "s": INT } ... ],
//!                "markets":  [ { "id": ID, "d": INT, "r": RAT } ... ],
//!                "edges":    [ { "from": ID, "to": ID, "w": RAT } ... ] }
//! solution  := { "x": [ { "from": ID, "to": ID, "value": RAT } ... ],
//!                "z": [ { "id": ID, "value": RAT } ... ],
//!                "objective": RAT | null }
//! graph     := { "vertices": INT, "edges": [ { "u": INT, "v": INT, "w": RAT } ... ] }
//! ```
//!
//! Solution entries not listed default to zero; `objective` is recomputed on
//! parse.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use tpmc_core::instance::{InstanceBuilder, InstanceError, Solution, TpmcInstance};
use tpmc_core::matching::{MatchingError, SimpleGraph};
use tpmc_core::{BigInt, Rational};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Graph(#[from] MatchingError),
    #[error("unknown supply `{0}`")]
    UnknownSupply(String),
    #[error("unknown market `{0}`")]
    UnknownMarket(String),
    #[error("no edge from `{0}` to `{1}`")]
    UnknownEdge(String, String),
    #[error("duplicate entry for `{0}`")]
    DuplicateEntry(String),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends " at line L column C"; keep only the description
        let message = match message.rfind(" at line ") {
            Some(at) => message[..at].to_string(),
            None => message,
        };
        Self::Syntax { line: e.line(), column: e.column(), message }
    }
}

/// Parses `"p/q"`, `"n"` or `"-p/q"`; the result is reduced.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).ok()?;
            let q = BigInt::from_str(q.trim()).ok()?;
            (!q.is_zero()).then(|| Rational::new(p, q))
        }
        None => BigInt::from_str(text).ok().map(Rational::from_integer),
    }
}

/// `n` for integers, `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serde wrapper giving [`Rational`] the document encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rat(pub Rational);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let r = &self.0;
        if r.is_integer() {
            if let Ok(v) = i64::try_from(r.numer()) {
                return s.serialize_i64(v);
            }
        }
        s.serialize_str(&format_rational(r))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct RatVisitor;
        impl Visitor<'_> for RatVisitor {
            type Value = Rat;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a \"p/q\" string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rat, E> {
                Ok(Rat(Rational::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rat, E> {
                Ok(Rat(Rational::from_integer(v.into())))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rat, E> {
                parse_rational(v).map(Rat).ok_or_else(|| E::custom(format!("invalid rational `{v}`")))
            }
        }
        d.deserialize_any(RatVisitor)
    }
}

/// Node id: a string, or an integer taken as its decimal text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Id(pub String);

impl<'de> Deserialize<'de> for Id {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct IdVisitor;
        impl Visitor<'_> for IdVisitor {
            type Value = Id;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a string or integer id")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Id, E> {
                Ok(Id(v.to_string()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Id, E> {
                Ok(Id(v.to_string()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Id, E> {
                Ok(Id(v.to_string()))
            }
        }
        d.deserialize_any(IdVisitor)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SupplyDoc {
    pub id: Id,
    pub s: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarketDoc {
    pub id: Id,
    pub d: i64,
    pub r: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub from: Id,
    pub to: Id,
    pub w: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub supplies: Vec<SupplyDoc>,
    pub markets: Vec<MarketDoc>,
    pub edges: Vec<EdgeDoc>,
}

impl InstanceDoc {
    pub fn from_instance(inst: &TpmcInstance) -> Self {
        let supplies = inst
            .supply_ids()
            .iter()
            .zip(inst.supplies())
            .map(|(id, &s)| SupplyDoc { id: Id(id.clone()), s: s as i64 })
            .collect();
        let markets = inst
            .market_ids()
            .iter()
            .zip(inst.demands())
            .zip(inst.revenues())
            .map(|((id, &d), r)| MarketDoc { id: Id(id.clone()), d: d as i64, r: Rat(r.clone()) })
            .collect();
        let edges = inst
            .edges()
            .iter()
            .zip(inst.costs())
            .map(|(e, w)| EdgeDoc {
                from: Id(inst.supply_ids()[e.supply].clone()),
                to: Id(inst.market_ids()[e.market].clone()),
                w: Rat(w.clone()),
            })
            .collect();
        Self { supplies, markets, edges }
    }

    pub fn to_instance(&self) -> Result<TpmcInstance, FormatError> {
        let mut b = InstanceBuilder::new();
        for s in &self.supplies {
            b = b.supply(s.id.0.clone(), s.s);
        }
        for m in &self.markets {
            b = b.market(m.id.0.clone(), m.d, m.r.0.clone());
        }
        for e in &self.edges {
            b = b.edge(e.from.0.clone(), e.to.0.clone(), e.w.0.clone());
        }
        Ok(b.build()?)
    }
}

pub fn parse_instance(text: &str) -> Result<TpmcInstance, FormatError> {
    serde_json::from_str::<InstanceDoc>(text)?.to_instance()
}

pub fn write_instance(inst: &TpmcInstance) -> String {
    to_pretty(&InstanceDoc::from_instance(inst))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlowDoc {
    pub from: Id,
    pub to: Id,
    pub value: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RejectionDoc {
    pub id: Id,
    pub value: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionDoc {
    pub x: Vec<FlowDoc>,
    pub z: Vec<RejectionDoc>,
    #[serde(default)]
    pub objective: Option<Rat>,
}

impl SolutionDoc {
    /// Lists every edge and market, zeros included.
    pub fn from_solution(inst: &TpmcInstance, sol: &Solution) -> Self {
        let x = inst
            .edges()
            .iter()
            .zip(&sol.x)
            .map(|(e, v)| FlowDoc {
                from: Id(inst.supply_ids()[e.supply].clone()),
                to: Id(inst.market_ids()[e.market].clone()),
                value: Rat(v.clone()),
            })
            .collect();
        let z = inst
            .market_ids()
            .iter()
            .zip(&sol.z)
            .map(|(id, v)| RejectionDoc { id: Id(id.clone()), value: Rat(v.clone()) })
            .collect();
        Self { x, z, objective: sol.objective.clone().map(Rat) }
    }

    pub fn to_solution(&self, inst: &TpmcInstance) -> Result<Solution, FormatError> {
        let mut x = vec![None; inst.num_edges()];
        for f in &self.x {
            let i = inst.supply_index(&f.from.0).ok_or_else(|| FormatError::UnknownSupply(f.from.0.clone()))?;
            let j = inst.market_index(&f.to.0).ok_or_else(|| FormatError::UnknownMarket(f.to.0.clone()))?;
            let e = inst
                .edge_index(i, j)
                .ok_or_else(|| FormatError::UnknownEdge(f.from.0.clone(), f.to.0.clone()))?;
            if x[e].replace(f.value.0.clone()).is_some() {
                return Err(FormatError::DuplicateEntry(format!("{}->{}", f.from.0, f.to.0)));
            }
        }
        let mut z = vec![None; inst.num_markets()];
        for r in &self.z {
            let j = inst.market_index(&r.id.0).ok_or_else(|| FormatError::UnknownMarket(r.id.0.clone()))?;
            if z[j].replace(r.value.0.clone()).is_some() {
                return Err(FormatError::DuplicateEntry(r.id.0.clone()));
            }
        }
        let x = x.into_iter().map(Option::unwrap_or_default).collect();
        let z = z.into_iter().map(Option::unwrap_or_default).collect();
        Ok(inst.solution(x, z)?)
    }
}

pub fn parse_solution(inst: &TpmcInstance, text: &str) -> Result<Solution, FormatError> {
    serde_json::from_str::<SolutionDoc>(text)?.to_solution(inst)
}

pub fn write_solution(inst: &TpmcInstance, sol: &Solution) -> String {
    to_pretty(&SolutionDoc::from_solution(inst, sol))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphEdgeDoc {
    pub u: usize,
    pub v: usize,
    #[serde(default = "unit_weight")]
    pub w: Rat,
}

fn unit_weight() -> Rat {
    Rat(Rational::one())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: usize,
    pub edges: Vec<GraphEdgeDoc>,
}

impl GraphDoc {
    pub fn from_graph(g: &SimpleGraph) -> Self {
        let edges = g
            .edges()
            .iter()
            .zip(g.weights())
            .map(|(&(u, v), w)| GraphEdgeDoc { u, v, w: Rat(w.clone()) })
            .collect();
        Self { vertices: g.num_vertices(), edges }
    }

    pub fn to_graph(&self) -> Result<SimpleGraph, FormatError> {
        let edges = self.edges.iter().map(|e| (e.u, e.v)).collect();
        let weights = self.edges.iter().map(|e| e.w.0.clone()).collect();
        Ok(SimpleGraph::new(self.vertices, edges, weights)?)
    }
}

pub fn parse_graph(text: &str) -> Result<SimpleGraph, FormatError> {
    serde_json::from_str::<GraphDoc>(text)?.to_graph()
}

pub fn write_graph(g: &SimpleGraph) -> String {
    to_pretty(&GraphDoc::from_graph(g))
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("document types always serialize");
    s.push('\n');
    s
}
