use serde::{Deserialize, Serialize};

use super::{CostModel, Sym};
use crate::{Error, Result};

/// Kind of an edit operation. The derived order is the canonical
/// tie-break order: substitution < deletion < insertion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OpKind {
    Substitution,
    Deletion,
    Insertion,
}

impl OpKind {
    pub fn name(self) -> &'static str {
        match self {
            OpKind::Substitution => "sub",
            OpKind::Deletion => "del",
            OpKind::Insertion => "ins",
        }
    }
}

/// A positioned edit operation against a source string.
///
/// Substitutions and deletions address a symbol index; insertions address a
/// gap index `0..=len`, inserting before the symbol currently at that index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EditOp {
    Substitution { position: usize, from: Sym, to: Sym },
    Deletion { position: usize, from: Sym },
    Insertion { position: usize, to: Sym },
}

impl EditOp {
    pub fn kind(&self) -> OpKind {
        match self {
            EditOp::Substitution { .. } => OpKind::Substitution,
            EditOp::Deletion { .. } => OpKind::Deletion,
            EditOp::Insertion { .. } => OpKind::Insertion,
        }
    }

    pub fn position(&self) -> usize {
        match *self {
            EditOp::Substitution { position, .. }
            | EditOp::Deletion { position, .. }
            | EditOp::Insertion { position, .. } => position,
        }
    }

    /// Source symbol, `None` for ε.
    pub fn from(&self) -> Option<Sym> {
        match *self {
            EditOp::Substitution { from, .. } | EditOp::Deletion { from, .. } => Some(from),
            EditOp::Insertion { .. } => None,
        }
    }

    /// Target symbol, `None` for ε.
    pub fn to(&self) -> Option<Sym> {
        match *self {
            EditOp::Substitution { to, .. } | EditOp::Insertion { to, .. } => Some(to),
            EditOp::Deletion { .. } => None,
        }
    }

    pub fn cost(&self, model: &CostModel) -> f64 {
        model.cost(self.from(), self.to())
    }

    /// Builds an operation from its (kind, position, from, to) fields,
    /// rejecting combinations where the kind and the ε sides disagree.
    pub fn from_parts(
        kind: OpKind,
        position: usize,
        from: Option<Sym>,
        to: Option<Sym>,
    ) -> Result<Self> {
        match (kind, from, to) {
            (OpKind::Substitution, Some(from), Some(to)) => {
                Ok(EditOp::Substitution { position, from, to })
            }
            (OpKind::Deletion, Some(from), None) => Ok(EditOp::Deletion { position, from }),
            (OpKind::Insertion, None, Some(to)) => Ok(EditOp::Insertion { position, to }),
            _ => Err(Error::InvalidOp(format!(
                "{} with from={from:?} to={to:?}",
                kind.name()
            ))),
        }
    }
}

/// Applies a single operation, checking position range and source symbol.
pub fn apply_op(s: &[Sym], op: &EditOp) -> Result<Vec<Sym>> {
    let mut out = s.to_vec();
    apply_in_place(&mut out, op)?;
    Ok(out)
}

fn apply_in_place(s: &mut Vec<Sym>, op: &EditOp) -> Result<()> {
    match *op {
        EditOp::Substitution { position, from, to } => {
            check_source(s, position, from)?;
            s[position] = to;
        }
        EditOp::Deletion { position, from } => {
            check_source(s, position, from)?;
            s.remove(position);
        }
        EditOp::Insertion { position, to } => {
            if position > s.len() {
                return Err(Error::InvalidOp(format!(
                    "insertion gap {position} out of range for length {}",
                    s.len()
                )));
            }
            s.insert(position, to);
        }
    }
    Ok(())
}

fn check_source(s: &[Sym], position: usize, from: Sym) -> Result<()> {
    match s.get(position) {
        None => Err(Error::InvalidOp(format!(
            "position {position} out of range for length {}",
            s.len()
        ))),
        Some(&c) if c != from => Err(Error::InvalidOp(format!(
            "position {position} holds {c}, operation expects {from}"
        ))),
        Some(_) => Ok(()),
    }
}

/// A minimum-cost sequence of cost-bearing operations turning `source`
/// into `target`, in source coordinates and left-to-right order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EditScript {
    pub source: Vec<Sym>,
    pub target: Vec<Sym>,
    pub ops: Vec<EditOp>,
    pub total_cost: f64,
}

impl EditScript {
    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Recomputes Σ ω(op).
    pub fn cost(&self, model: &CostModel) -> f64 {
        self.ops.iter().map(|op| op.cost(model)).sum()
    }
}

/// Replays `script` on `s`.
///
/// Operations are applied right to left so earlier source coordinates stay
/// valid; an insertion at gap `g` sorts before a substitution or deletion at
/// index `g`.
pub fn apply_script(s: &[Sym], script: &EditScript) -> Result<Vec<Sym>> {
    if s != script.source.as_slice() {
        return Err(Error::InconsistentScript(
            "input differs from script source".into(),
        ));
    }
    let mut out = s.to_vec();
    let mut prev: Option<(usize, u8)> = None;
    for op in script.ops.iter().rev() {
        // Right-to-left order key: position, then insertions (0) before others (1).
        let key = (op.position(), u8::from(op.kind() != OpKind::Insertion));
        if let Some(p) = prev {
            let same_symbol = key == p && key.1 == 1;
            if key > p || same_symbol {
                return Err(Error::InconsistentScript(format!(
                    "operations are not in left-to-right source order at {op:?}"
                )));
            }
        }
        prev = Some(key);
        apply_in_place(&mut out, op).map_err(|e| Error::InconsistentScript(e.to_string()))?;
    }
    if out != script.target {
        return Err(Error::InconsistentScript(
            "replay does not produce the target".into(),
        ));
    }
    Ok(out)
}
