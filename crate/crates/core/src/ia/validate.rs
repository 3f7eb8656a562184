use std::fmt;

use serde::Serialize;

use super::complex::IAComplex;
use crate::arith::intmat::serialize_opt_wide;
use crate::cycle::{charge, monodromy, same_cyclic_class, CuspCycle};
use crate::error::{CuspError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// (a) connected, closed, `V - E + F = 2`, links are single cycles.
    SphereTopology,
    /// (b) `d_ij + d_ji = 2` on interior edges.
    TriplePointFormula,
    /// (c) star of v0 matches the expected cycle up to rotation.
    V0Star,
    /// (d) charge-zero stars have identity monodromy.
    ChargeZeroToric,
    /// (e) charges away from v0 are nonnegative.
    NonnegativeCharge,
}

impl CheckKind {
    pub const ALL: [CheckKind; 5] = [
        CheckKind::SphereTopology,
        CheckKind::TriplePointFormula,
        CheckKind::V0Star,
        CheckKind::ChargeZeroToric,
        CheckKind::NonnegativeCharge,
    ];

    pub fn label(self) -> &'static str {
        match self {
            CheckKind::SphereTopology => "(a) sphere topology",
            CheckKind::TriplePointFormula => "(b) triple point formula",
            CheckKind::V0Star => "(c) v0 star",
            CheckKind::ChargeZeroToric => "(d) charge-zero stars toric",
            CheckKind::NonnegativeCharge => "(e) nonnegative charges",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: CheckKind,
    pub passed: bool,
    /// One line per violation.
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexReport {
    pub vertex: usize,
    /// `None` when the link is not a closed cycle.
    pub star: Option<Vec<i64>>,
    #[serde(serialize_with = "serialize_opt_wide")]
    pub charge: Option<i128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
    pub vertices: Vec<VertexReport>,
    pub euler_characteristic: i64,
    /// Sum of all vertex charges, reported but never enforced.
    #[serde(serialize_with = "serialize_opt_wide")]
    pub total_charge: Option<i128>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, kind: CheckKind) -> &CheckResult {
        self.checks.iter().find(|c| c.check == kind).expect("every check is reported")
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{:<32} {}", c.check.label(), if c.passed { "PASS" } else { "FAIL" })?;
            for v in &c.violations {
                writeln!(f, "    {v}")?;
            }
        }
        writeln!(f, "euler characteristic: {}", self.euler_characteristic)?;
        match self.total_charge {
            Some(q) => writeln!(f, "total charge: {q}"),
            None => writeln!(f, "total charge: unavailable"),
        }
    }
}

fn result(check: CheckKind, violations: Vec<String>) -> CheckResult {
    CheckResult { check, passed: violations.is_empty(), violations }
}

/// Runs checks (a) through (e). Errors only when some edge lies in more than
/// two faces, which the constructor already excludes.
pub fn validate_type_iii(g: &IAComplex, expected_v0_star: &CuspCycle) -> Result<ValidationReport> {
    let counts = g.edge_face_counts();
    if let Some(i) = counts.iter().position(|&n| n > 2) {
        return Err(CuspError::MalformedComplex(format!("edge {i} lies in {} faces", counts[i])));
    }
    let stars: Vec<std::result::Result<Vec<i64>, String>> =
        (0..g.vertices.len()).map(|v| g.star(v)).collect();
    let chi = g.euler_characteristic();

    let mut topo = Vec::new();
    if !g.is_connected() {
        topo.push("complex is not connected".to_string());
    }
    for (i, &n) in counts.iter().enumerate() {
        if n != 2 {
            let [u, v] = g.edges[i].ends;
            topo.push(format!("edge {i} ({u}-{v}) lies in {n} face(s), expected 2"));
        }
    }
    for s in &stars {
        if let Err(m) = s {
            topo.push(m.clone());
        }
    }
    if chi != 2 {
        topo.push(format!("V - E + F = {chi}, expected 2"));
    }

    let mut tpf = Vec::new();
    for (i, e) in g.edges.iter().enumerate() {
        if counts[i] != 2 {
            continue;
        }
        let [u, v] = e.ends;
        if let [Some(a), Some(b)] = e.d {
            let sum = i128::from(a) + i128::from(b);
            if sum != 2 {
                tpf.push(format!("edge {i}: d({u}->{v}) + d({v}->{u}) = {a} + {b} = {sum}, expected 2"));
            }
        }
    }

    let mut v0 = Vec::new();
    match &stars[g.v0] {
        Ok(s) if same_cyclic_class(s, expected_v0_star.entries(), false) => {}
        Ok(s) => v0.push(format!(
            "star of v0 = {} is ({}), expected ({expected_v0_star})",
            g.v0,
            join(s)
        )),
        Err(m) => v0.push(format!("star of v0 unavailable: {m}")),
    }

    let mut toric = Vec::new();
    let mut nonneg = Vec::new();
    let mut vertices = Vec::with_capacity(stars.len());
    for (v, s) in stars.iter().enumerate() {
        let (star, q) = match s {
            Ok(s) => {
                let q = charge(s);
                if q == 0 && !monodromy(s).is_identity() {
                    toric.push(format!(
                        "vertex {v}: star ({}) has charge 0 but monodromy {}",
                        join(s),
                        monodromy(s)
                    ));
                }
                if q < 0 && v != g.v0 {
                    nonneg.push(format!("vertex {v}: star ({}) has charge {q}", join(s)));
                }
                (Some(s.clone()), Some(q))
            }
            Err(_) => {
                let m = format!("vertex {v}: star unavailable");
                toric.push(m.clone());
                if v != g.v0 {
                    nonneg.push(m);
                }
                (None, None)
            }
        };
        vertices.push(VertexReport { vertex: v, star, charge: q });
    }
    let total_charge = vertices.iter().map(|r| r.charge).sum::<Option<i128>>();

    Ok(ValidationReport {
        checks: vec![
            result(CheckKind::SphereTopology, topo),
            result(CheckKind::TriplePointFormula, tpf),
            result(CheckKind::V0Star, v0),
            result(CheckKind::ChargeZeroToric, toric),
            result(CheckKind::NonnegativeCharge, nonneg),
        ],
        vertices,
        euler_characteristic: chi,
        total_charge,
    })
}

fn join(s: &[i64]) -> String {
    s.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}
