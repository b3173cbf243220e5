//! Output documents of the command-line tool and their table renderings.

use std::fmt::Write as _;

use serde::Serialize;
use tpmc_core::cardinality::{Certificate, SweepRow};
use tpmc_core::conflict::{ComponentShape, ConflictError, ConflictGraph, SwapOutcome, SwapSubgraph};
use tpmc_core::instance::{Solution, TpmcInstance};
use tpmc_core::matching::{MatchingResult, SimpleGraph};
use tpmc_core::polytope::{describe_gap, AuditReport, Membership, RationalPoint};
use tpmc_core::replay::{CutMatchingReport, TripleDemandReport};
use tpmc_core::Rational;

use crate::format::{format_rational, Rat, SolutionDoc};

fn rats(v: &[Rational]) -> Vec<Rat> {
    v.iter().cloned().map(Rat).collect()
}

fn point(p: &RationalPoint) -> Vec<Rat> {
    rats(p.coords())
}

fn list(v: &[Rational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone, Serialize)]
pub struct StepDoc {
    pub shift: Rat,
    pub fewest: usize,
    pub most: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SwapStepDoc {
    pub from: usize,
    pub to: usize,
    pub nodes: usize,
    pub components: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateDoc {
    pub bound: String,
    pub shift: Rat,
    pub multiplier: Rat,
    pub penalized_optimum: Rat,
    pub fewest: usize,
    pub most: usize,
    pub steps: Vec<StepDoc>,
    pub swaps: Vec<SwapStepDoc>,
}

impl CertificateDoc {
    pub fn new(c: &Certificate) -> Self {
        Self {
            bound: c.bound.to_string(),
            shift: Rat(c.shift.clone()),
            multiplier: Rat(c.multiplier()),
            penalized_optimum: Rat(c.penalized_optimum.clone()),
            fewest: c.fewest,
            most: c.most,
            steps: c
                .steps
                .iter()
                .map(|s| StepDoc { shift: Rat(s.shift.clone()), fewest: s.fewest, most: s.most })
                .collect(),
            swaps: c
                .swaps
                .iter()
                .map(|s| SwapStepDoc { from: s.from, to: s.to, nodes: s.nodes, components: s.components })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub method: &'static str,
    pub bound: Option<String>,
    /// `optimal` or `infeasible`.
    pub status: &'static str,
    pub rejected: Option<usize>,
    pub solution: Option<SolutionDoc>,
    pub certificate: Option<CertificateDoc>,
}

impl SolveReport {
    pub fn new(
        inst: &TpmcInstance,
        method: &'static str,
        bound: Option<String>,
        sol: Option<&Solution>,
        cert: Option<&Certificate>,
    ) -> Self {
        Self {
            method,
            bound,
            status: if sol.is_some() { "optimal" } else { "infeasible" },
            rejected: sol.and_then(Solution::rejected_count),
            solution: sol.map(|s| SolutionDoc::from_solution(inst, s)),
            certificate: cert.map(CertificateDoc::new),
        }
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        let bound = self.bound.as_deref().unwrap_or("none");
        let _ = writeln!(out, "method {}, bound {bound}: {}", self.method, self.status);
        if let Some(sol) = &self.solution {
            let obj = sol.objective.as_ref().map_or("-".into(), |r| format_rational(&r.0));
            let _ = writeln!(out, "objective {obj}");
            let rejected: Vec<&str> =
                sol.z.iter().filter(|z| z.value.0 != Rational::from_integer(0.into())).map(|z| z.id.0.as_str()).collect();
            let _ = writeln!(out, "rejected  {}", if rejected.is_empty() { "-".into() } else { rejected.join(" ") });
            let _ = writeln!(out, "{:<12} {:<12} {:>8}", "from", "to", "flow");
            for f in sol.x.iter().filter(|f| f.value.0 != Rational::from_integer(0.into())) {
                let _ = writeln!(out, "{:<12} {:<12} {:>8}", f.from.0, f.to.0, format_rational(&f.value.0));
            }
        }
        if let Some(c) = &self.certificate {
            let _ = writeln!(
                out,
                "certificate: shift {}, penalized optimum {}, optimal range {}..={}, {} search steps, {} swaps",
                format_rational(&c.shift.0),
                format_rational(&c.penalized_optimum.0),
                c.fewest,
                c.most,
                c.steps.len(),
                c.swaps.len()
            );
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRowDoc {
    pub k: usize,
    pub objective: Option<Rat>,
    pub shift: Option<Rat>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub rows: Vec<SweepRowDoc>,
}

impl SweepReport {
    pub fn new(rows: &[SweepRow]) -> Self {
        let rows = rows
            .iter()
            .map(|r| SweepRowDoc {
                k: r.k,
                objective: r.result.as_ref().and_then(|c| c.solution.objective.clone()).map(Rat),
                shift: r.result.as_ref().map(|c| Rat(c.certificate.shift.clone())),
            })
            .collect();
        Self { rows }
    }

    pub fn human(&self) -> String {
        let mut out = format!("{:>4} {:>14} {:>10}\n", "k", "objective", "shift");
        for r in &self.rows {
            let show = |v: &Option<Rat>| v.as_ref().map_or("infeasible".into(), |r| format_rational(&r.0));
            let shift = r.shift.as_ref().map_or("-".into(), |r| format_rational(&r.0));
            let _ = writeln!(out, "{:>4} {:>14} {:>10}", r.k, show(&r.objective), shift);
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MatchedEdge {
    pub u: usize,
    pub v: usize,
    pub w: Rat,
}

#[derive(Debug, Clone, Serialize)]
pub struct MatchingReport {
    pub k: usize,
    pub weight: Rat,
    pub edges: Vec<MatchedEdge>,
}

impl MatchingReport {
    pub fn new(g: &SimpleGraph, k: usize, r: &MatchingResult) -> Self {
        let edges = r
            .edges
            .iter()
            .map(|&e| {
                let (u, v) = g.edges()[e];
                MatchedEdge { u, v, w: Rat(g.weights()[e].clone()) }
            })
            .collect();
        Self { k, weight: Rat(r.weight.clone()), edges }
    }

    pub fn human(&self) -> String {
        let mut out = format!("at most {} edges, weight {}\n", self.k, format_rational(&self.weight.0));
        for e in &self.edges {
            let _ = writeln!(out, "  {} - {}  ({})", e.u, e.v, format_rational(&e.w.0));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NodeDoc {
    pub id: usize,
    pub kind: &'static str,
    pub market: String,
    pub copy: &'static str,
    pub value: Rat,
    pub suppliers: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentDoc {
    pub shape: &'static str,
    pub nodes: Vec<usize>,
    pub value: Rat,
}

#[derive(Debug, Clone, Serialize)]
pub struct StructureDoc {
    pub cycles: usize,
    pub full_paths: usize,
    pub single_partial_paths: usize,
    pub double_partial_paths: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SwapDoc {
    pub nodes: Vec<usize>,
    pub components: Vec<usize>,
    pub value: Rat,
    pub cardinalities: [usize; 2],
    pub delta: Rat,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConflictGraphReport {
    pub cardinalities: [usize; 2],
    pub total_value: Rat,
    pub nodes: Vec<NodeDoc>,
    pub edges: Vec<[usize; 2]>,
    pub components: Vec<ComponentDoc>,
    pub structure: StructureDoc,
    /// Present when the cardinalities are at least two apart.
    pub swap: Option<SwapDoc>,
}

impl ConflictGraphReport {
    pub fn new(g: &ConflictGraph<'_>, swap: Option<(&SwapSubgraph, &SwapOutcome)>) -> Result<Self, ConflictError> {
        let inst = g.instance();
        let (k1, k2) = g.cardinalities();
        let nodes = g
            .nodes()
            .iter()
            .enumerate()
            .map(|(id, n)| NodeDoc {
                id,
                kind: n.kind.name(),
                market: inst.market_ids()[n.market].clone(),
                copy: n.tag.name(),
                value: Rat(n.kind.value()),
                suppliers: n.suppliers.iter().map(|&i| inst.supply_ids()[i].clone()).collect(),
            })
            .collect();
        let components = g
            .classify_components()?
            .into_iter()
            .map(|c| ComponentDoc {
                shape: match c.shape {
                    ComponentShape::Path => "path",
                    ComponentShape::EvenCycle => "even_cycle",
                },
                value: Rat(g.value_of(&c.nodes)),
                nodes: c.nodes,
            })
            .collect();
        let s = g.audit_structure()?;
        Ok(Self {
            cardinalities: [k1, k2],
            total_value: Rat(g.total_value()),
            nodes,
            edges: g.edges().iter().map(|&(a, b)| [a, b]).collect(),
            components,
            structure: StructureDoc {
                cycles: s.cycles,
                full_paths: s.full_paths,
                single_partial_paths: s.single_partial_paths,
                double_partial_paths: s.double_partial_paths,
            },
            swap: swap.map(|(sub, out)| SwapDoc {
                nodes: sub.nodes.iter().copied().collect(),
                components: sub.components.clone(),
                value: Rat(g.value_of(&sub.nodes)),
                cardinalities: [out.card3, out.card4],
                delta: Rat(out.delta.clone()),
            }),
        })
    }

    pub fn human(&self) -> String {
        let [k1, k2] = self.cardinalities;
        let mut out = format!(
            "cardinalities {k1} and {k2}, total value {}, {} nodes, {} edges\n",
            format_rational(&self.total_value.0),
            self.nodes.len(),
            self.edges.len()
        );
        let _ = writeln!(out, "{:>4} {:<11} {:<10} {:<4} {:>6}  suppliers", "id", "kind", "market", "copy", "value");
        for n in &self.nodes {
            let _ = writeln!(
                out,
                "{:>4} {:<11} {:<10} {:<4} {:>6}  {}",
                n.id,
                n.kind,
                n.market,
                n.copy,
                format_rational(&n.value.0),
                n.suppliers.join(" ")
            );
        }
        for (i, c) in self.components.iter().enumerate() {
            let nodes: Vec<String> = c.nodes.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "component {i}: {} of value {}: {}", c.shape, format_rational(&c.value.0), nodes.join(" "));
        }
        if let Some(s) = &self.swap {
            let nodes: Vec<String> = s.nodes.iter().map(usize::to_string).collect();
            let _ = writeln!(
                out,
                "swap on nodes {} gives cardinalities {} and {}",
                nodes.join(" "),
                s.cardinalities[0],
                s.cardinalities[1]
            );
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GapDoc {
    pub objective: Vec<Rat>,
    pub relaxed: Rat,
    pub integral: Option<Rat>,
    pub point: Vec<Rat>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditDoc {
    pub bound: String,
    pub generators: usize,
    pub objectives: usize,
    pub holds: bool,
    pub gaps: Vec<GapDoc>,
}

impl AuditDoc {
    pub fn new(r: &AuditReport) -> Self {
        Self {
            bound: r.bound.to_string(),
            generators: r.generators,
            objectives: r.objectives,
            holds: r.holds(),
            gaps: r
                .gaps
                .iter()
                .map(|g| GapDoc {
                    objective: rats(&g.objective),
                    relaxed: Rat(g.relaxed.clone()),
                    integral: g.integral.clone().map(Rat),
                    point: point(&g.point),
                })
                .collect(),
        }
    }

    pub fn human(&self, r: &AuditReport) -> String {
        let mut out = format!(
            "bound {}: {} generators, {} objectives, {}\n",
            self.bound,
            self.generators,
            self.objectives,
            if self.holds { "HOLDS" } else { "FAILS" }
        );
        for g in &r.gaps {
            let _ = writeln!(out, "  {} at ({})", describe_gap(g), list(g.point.coords()));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MembershipDoc {
    Inside { weights: Vec<Rat> },
    Outside { normal: Vec<Rat>, offset: Rat },
}

impl MembershipDoc {
    pub fn new(m: &Membership) -> Self {
        match m {
            Membership::Inside { weights } => Self::Inside { weights: rats(weights) },
            Membership::Outside { normal, offset } => {
                Self::Outside { normal: rats(normal), offset: Rat(offset.clone()) }
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CutMatchingDoc {
    pub point: Vec<Rat>,
    pub integral: bool,
    pub extreme: bool,
    pub rank: usize,
    pub dim: usize,
    pub tight: Vec<usize>,
    pub passed: bool,
}

impl CutMatchingDoc {
    pub fn new(r: &CutMatchingReport) -> Self {
        Self {
            point: point(&r.point),
            integral: r.point.is_integral(),
            extreme: r.extreme.extreme,
            rank: r.extreme.rank,
            dim: r.extreme.dim,
            tight: r.extreme.tight.clone(),
            passed: r.passed(),
        }
    }

    pub fn human(&self) -> String {
        format!(
            "cut matching: point ({}) is {}a vertex, tight rank {} of {}: {}\n",
            self.point.iter().map(|r| format_rational(&r.0)).collect::<Vec<_>>().join(" "),
            if self.extreme { "" } else { "not " },
            self.rank,
            self.dim,
            pass(self.passed)
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TripleDemandDoc {
    pub point: Vec<Rat>,
    pub relaxation: MembershipDoc,
    pub integer_hull: MembershipDoc,
    pub supporting_objective: Option<Vec<Rat>>,
    pub passed: bool,
}

impl TripleDemandDoc {
    pub fn new(r: &TripleDemandReport) -> Self {
        Self {
            point: point(&r.point),
            relaxation: MembershipDoc::new(&r.relaxation),
            integer_hull: MembershipDoc::new(&r.integer_hull),
            supporting_objective: r.supporting_objective.as_deref().map(rats),
            passed: r.passed(),
        }
    }

    pub fn human(&self) -> String {
        let verdict = |m: &MembershipDoc| match m {
            MembershipDoc::Inside { .. } => "IN",
            MembershipDoc::Outside { .. } => "OUT",
        };
        format!(
            "triple demand: half point {} the relaxed hull, {} the bounded integer hull, {}: {}\n",
            verdict(&self.relaxation),
            verdict(&self.integer_hull),
            if self.supporting_objective.is_some() { "unique supporting objective found" } else { "no supporting objective in battery" },
            pass(self.passed)
        )
    }
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReplayReport {
    pub cut_matching: CutMatchingDoc,
    pub triple_demand: TripleDemandDoc,
    pub result: &'static str,
}

impl ReplayReport {
    pub fn new(a: CutMatchingDoc, b: TripleDemandDoc) -> Self {
        let result = pass(a.passed && b.passed);
        Self { cut_matching: a, triple_demand: b, result }
    }

    pub fn passed(&self) -> bool {
        self.result == "PASS"
    }

    pub fn human(&self) -> String {
        format!("{}{}{}\n", self.cut_matching.human(), self.triple_demand.human(), self.result)
    }
}
