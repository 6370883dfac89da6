//! The report envelope written by `decompose`.

use std::fmt::Write as _;

use rodier_core::poles::{orbit_ids, relative_orbits};
use rodier_core::{Rational, Sign};
use serde::Serialize;

use crate::pipeline::Context;
use crate::spec::{to_q, ProblemSpec, Q, SCHEMA_VERSION};

pub const TOOL: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

impl Tool {
    pub fn current() -> Self {
        Tool {
            name: TOOL,
            version: VERSION,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RelativeRootEntry {
    pub id: usize,
    /// Weight-basis coordinates.
    pub coordinates: Vec<Q>,
    pub ambient: Vec<Q>,
    /// Coefficients on `Δ_M`.
    pub simple_coefficients: Vec<i64>,
    pub positive: bool,
    pub in_phi0: bool,
    pub orbit: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Orbit {
    pub name: String,
    pub roots: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LeviSummary {
    pub cartan: String,
    pub theta: Vec<usize>,
    pub iota: usize,
    /// Basis of `a_M*` (ambient coordinates) in which all coordinates are
    /// written: the weights dual to the coroots of `Δ_M`.
    pub basis: Vec<Vec<Q>>,
    pub relative_roots: Vec<RelativeRootEntry>,
    pub phi_m: Vec<usize>,
    pub delta_m: Vec<usize>,
    pub phi_m0: Vec<usize>,
    pub delta_m0: Vec<usize>,
    pub orbits: Vec<Orbit>,
    pub w_m: usize,
    pub w_m0: usize,
    pub w_m1: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Wall {
    pub root: usize,
    /// The coroot, in weight-basis coordinates.
    pub coroot: Vec<Q>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct FlagSet {
    pub square_integrable: bool,
    pub tempered: bool,
    pub generic: bool,
    pub subrepresentation_witness: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstituentEntry {
    pub id: usize,
    pub sign_vector: String,
    pub chambers: usize,
    /// Reduced words (absolute simple reflections) of the Jacquet elements.
    pub jacquet: Vec<Vec<u8>>,
    pub jacquet_size: usize,
    pub flags: FlagSet,
    pub aubert_dual: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Decomposition {
    #[serde(rename = "S")]
    pub walls: Vec<Wall>,
    pub omega: Option<Vec<Q>>,
    pub length: usize,
    pub irreducible: bool,
    pub induced: bool,
    pub notes: Vec<String>,
    pub constituents: Vec<ConstituentEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Envelope {
    pub schema: u32,
    pub tool: Tool,
    pub input: ProblemSpec,
    pub levi: LeviSummary,
    pub decomposition: Decomposition,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

pub fn signs(v: &[Sign]) -> String {
    v.iter().map(|s| s.symbol()).collect()
}

impl Envelope {
    pub fn build(ctx: &Context<'_>) -> Self {
        let ld = ctx.levi;
        let g = ctx.group;
        let orbits = relative_orbits(ld, g);
        let ids = orbit_ids(ld, &orbits);
        let coords = |v: &[Rational]| to_q(&ld.weight_coordinates(v));
        let relative_roots = ld
            .relative_roots()
            .iter()
            .enumerate()
            .map(|(id, r)| RelativeRootEntry {
                id,
                coordinates: coords(&r.vector),
                ambient: to_q(&r.vector),
                simple_coefficients: r.coefficients.clone(),
                positive: r.is_positive(),
                in_phi0: ld.in_phi_m0(id),
                orbit: ids[id].map(|k| format!("orbit{k}")),
            })
            .collect();
        let levi = LeviSummary {
            cartan: ld.root_system().cartan_type().to_string(),
            theta: ld.theta().to_vec(),
            iota: ld.iota(),
            basis: ld.weight_basis().iter().map(|v| to_q(v)).collect(),
            relative_roots,
            phi_m: (0..ld.num_relative()).collect(),
            delta_m: ld.delta_m().to_vec(),
            phi_m0: ld.phi_m0().to_vec(),
            delta_m0: ld.delta_m0().to_vec(),
            orbits: orbits
                .iter()
                .enumerate()
                .map(|(k, o)| Orbit {
                    name: format!("orbit{k}"),
                    roots: o.clone(),
                })
                .collect(),
            w_m: g.len(),
            w_m0: g.small().len(),
            w_m1: g.complement().len(),
        };

        let r = &ctx.report;
        let constituents = r
            .constituents
            .iter()
            .map(|c| ConstituentEntry {
                id: c.id,
                sign_vector: signs(&c.sign_vector),
                chambers: c.chambers.len(),
                jacquet: c.jacquet.iter().map(|&w| g.word(w).to_vec()).collect(),
                jacquet_size: c.jacquet.len(),
                flags: FlagSet {
                    square_integrable: c.flags.square_integrable,
                    tempered: c.flags.tempered,
                    generic: c.flags.generic,
                    subrepresentation_witness: c.flags.subrepresentation_witness,
                },
                aubert_dual: c.aubert_dual,
            })
            .collect();
        let decomposition = Decomposition {
            walls: r
                .walls
                .roots()
                .iter()
                .map(|&a| Wall {
                    root: a,
                    coroot: coords(&ld.coroot(a)),
                })
                .collect(),
            omega: r.omega.as_ref().map(|w| coords(w)),
            length: r.length,
            irreducible: r.irreducible,
            induced: r.induced,
            notes: r.notes.clone(),
            constituents,
        };
        Envelope {
            schema: SCHEMA_VERSION,
            tool: Tool::current(),
            input: ctx.spec.clone(),
            levi,
            decomposition,
            timing: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let l = &self.levi;
        let d = &self.decomposition;
        let vec = |v: &[Q]| format!("({})", v.iter().map(Q::to_string).collect::<Vec<_>>().join(", "));
        let root = |a: usize| vec(&l.relative_roots[a].coordinates);
        let list = |ids: &[usize]| ids.iter().map(|&a| root(a)).collect::<Vec<_>>().join(" ");
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.tool.name, self.tool.version);
        let _ = writeln!(out, "type {}  theta {:?}  iota {}", l.cartan, l.theta, l.iota);
        let _ = writeln!(
            out,
            "basis of a_M*: {}",
            l.basis.iter().map(|b| vec(b)).collect::<Vec<_>>().join(" ")
        );
        let _ = writeln!(out, "Delta_M:   {}", list(&l.delta_m));
        let _ = writeln!(out, "Phi_M0:    {}", list(&l.phi_m0));
        let _ = writeln!(out, "Delta_M0:  {}", list(&l.delta_m0));
        let _ = writeln!(out, "|W_M| = {}  |W_M0| = {}  |W_M1| = {}", l.w_m, l.w_m0, l.w_m1);
        let walls: Vec<String> = d.walls.iter().map(|w| vec(&w.coroot)).collect();
        let _ = writeln!(out, "S (coroots): [{}]", walls.join(" "));
        if let Some(omega) = &d.omega {
            let _ = writeln!(out, "omega: {}", vec(omega));
        }
        let _ = writeln!(
            out,
            "length {}{}",
            d.length,
            if d.irreducible { " (irreducible)" } else { "" }
        );
        let _ = writeln!(out);
        let _ = writeln!(out, "{:>3}  {:<8}  {:>8}  {:>9}  {:<40}  {:>4}", "id", "signs", "chambers", "|jacquet|", "flags", "dual");
        for c in &d.constituents {
            let mut flags = Vec::new();
            if c.flags.square_integrable {
                flags.push("square-integrable");
            }
            if c.flags.tempered {
                flags.push("tempered");
            }
            if c.flags.generic {
                flags.push("generic");
            }
            if c.flags.subrepresentation_witness {
                flags.push("sub");
            }
            let signs = if c.sign_vector.is_empty() { "()" } else { &c.sign_vector };
            let flags = if flags.is_empty() { "-".to_string() } else { flags.join(",") };
            let _ = writeln!(
                out,
                "{:>3}  {:<8}  {:>8}  {:>9}  {:<40}  {:>4}",
                c.id, signs, c.chambers, c.jacquet_size, flags, c.aubert_dual
            );
        }
        if !d.notes.is_empty() {
            let _ = writeln!(out);
            for n in &d.notes {
                let _ = writeln!(out, "note: {n}");
            }
        }
        if let Some(t) = &self.timing {
            let _ = writeln!(out, "elapsed: {:.1} ms", t.elapsed_ms);
        }
        out
    }
}
