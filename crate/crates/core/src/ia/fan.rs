use serde::{Deserialize, Serialize};

use crate::blowup::{is_toric, shifted};
use crate::cycle::AnticanSeq;
use crate::error::{CuspError, Result};

/// Cone over the boundary cycle: one ray per component, in cyclic order,
/// each labelled by its d-value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudoFan {
    rays: AnticanSeq,
}

impl PseudoFan {
    pub fn rays(&self) -> &[i64] {
        self.rays.entries()
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    pub fn sequence(&self) -> &AnticanSeq {
        &self.rays
    }
}

pub fn pseudo_fan(s: &AnticanSeq) -> PseudoFan {
    PseudoFan { rays: s.clone() }
}

/// Whether the affine structure extends over the cone point.
pub fn vertex_is_toric(f: &PseudoFan) -> bool {
    is_toric(f.rays())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurgeryKind {
    InternalBlowUp,
    NodeSmoothing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryRecord {
    pub kind: SurgeryKind,
    pub index: usize,
    pub size: u64,
}

/// Boundary cycle together with the surgeries applied to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeredBoundary {
    pub seq: AnticanSeq,
    pub log: Vec<SurgeryRecord>,
}

impl SurgeredBoundary {
    pub fn new(seq: AnticanSeq) -> Self {
        SurgeredBoundary { seq, log: Vec::new() }
    }

    pub fn internal_blow_up(&mut self, i: usize, size: u64) -> Result<&AnticanSeq> {
        self.seq = boundary_internal_blow_up(&self.seq, i, size)?;
        self.log.push(SurgeryRecord { kind: SurgeryKind::InternalBlowUp, index: i, size });
        Ok(&self.seq)
    }

    pub fn node_smoothing(&mut self, i: usize, size: u64) -> Result<&AnticanSeq> {
        self.seq = boundary_node_smoothing(&self.seq, i, size)?;
        self.log.push(SurgeryRecord { kind: SurgeryKind::NodeSmoothing, index: i, size });
        Ok(&self.seq)
    }
}

fn check(s: &AnticanSeq, i: usize, size: u64) -> Result<()> {
    if i >= s.len() {
        return Err(CuspError::IndexOutOfRange { index: i, len: s.len() });
    }
    if size == 0 {
        return Err(CuspError::Degenerate("surgery size must be at least 1".into()));
    }
    Ok(())
}

/// `d_i -> d_i + 1`. The size only matters for the log.
pub fn boundary_internal_blow_up(b: &AnticanSeq, i: usize, size: u64) -> Result<AnticanSeq> {
    check(b, i, size)?;
    let mut v = b.to_vec();
    v[i] = shifted(v[i], 1)?;
    AnticanSeq::new(v)
}

/// Merges `d_i, d_{i+1}` (indices cyclic) into `d_i + d_{i+1} - 2`. When `i`
/// is last, the merged entry replaces position 0.
pub fn boundary_node_smoothing(b: &AnticanSeq, i: usize, size: u64) -> Result<AnticanSeq> {
    if b.len() < 2 {
        return Err(CuspError::TooShort);
    }
    check(b, i, size)?;
    let mut v = b.to_vec();
    let j = (i + 1) % v.len();
    let merged = i64::try_from(i128::from(v[i]) + i128::from(v[j]) - 2)
        .map_err(|_| CuspError::Overflow(format!("{} + {} - 2", v[i], v[j])))?;
    if j == 0 {
        v[0] = merged;
        v.pop();
    } else {
        v[i] = merged;
        v.remove(j);
    }
    AnticanSeq::new(v)
}
