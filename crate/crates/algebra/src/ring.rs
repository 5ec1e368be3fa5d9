use std::cmp::Ordering;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder, MAX_VARS};

/// Polynomial ring over an exact field with a weighted grading and a graded
/// monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    weights: Vec<u32>,
    order: MonomialOrder,
    field: Field,
}

impl Ring {
    /// Standard-graded ring with degrevlex order.
    pub fn new<S: AsRef<str>>(vars: &[S], field: Field) -> Result<Arc<Ring>> {
        let weights = vec![1; vars.len()];
        Self::build(vars, weights, MonomialOrder::DegRevLex, field)
    }

    pub fn build<S: AsRef<str>>(
        vars: &[S],
        weights: Vec<u32>,
        order: MonomialOrder,
        field: Field,
    ) -> Result<Arc<Ring>> {
        if vars.len() > MAX_VARS {
            return Err(AlgebraError::TooManyVariables(vars.len(), MAX_VARS));
        }
        if weights.len() != vars.len() || weights.contains(&0) {
            return Err(AlgebraError::Dimension("one positive weight per variable".into()));
        }
        if let MonomialOrder::Blocks(b) = &order {
            if b.iter().sum::<usize>() != vars.len() {
                return Err(AlgebraError::Dimension("block sizes must cover all variables".into()));
            }
        }
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(AlgebraError::Parse(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(Ring { vars, weights, order, field }))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
    }

    pub fn is_standard_graded(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    #[inline]
    pub fn degree(&self, m: &Monomial) -> u32 {
        m.weighted_degree(&self.weights)
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b, &self.weights)
    }

    /// Same variables and weights with a different order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<Ring>> {
        Self::build(&self.vars, self.weights.clone(), order, self.field)
    }

    /// Same variables, weights and order over another field.
    pub fn with_field(&self, field: Field) -> Arc<Ring> {
        Arc::new(Ring { field, ..self.clone() })
    }

    pub fn descriptor(&self) -> RingDescriptor {
        RingDescriptor {
            vars: self.vars.clone(),
            weights: self.weights.clone(),
            field: Some(self.field),
        }
    }
}

/// JSON form of a ring: `{vars, weights, field}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDescriptor {
    pub vars: Vec<String>,
    pub weights: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<Field>,
}

impl RingDescriptor {
    pub fn to_ring(&self, default_field: Field) -> Result<Arc<Ring>> {
        let weights = if self.weights.is_empty() { vec![1; self.vars.len()] } else { self.weights.clone() };
        Ring::build(&self.vars, weights, MonomialOrder::DegRevLex, self.field.unwrap_or(default_field))
    }
}

/// Cheap ring identity check: pointer equality first, then structural.
#[inline]
pub fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
