use std::collections::BTreeMap;

use serde::Serialize;

use super::frattini::phi_lhd_height;
use super::lattice::NormalLattice;
use crate::caps::Caps;
use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::sylow::prime_divisors;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Integer(u64),
    Sequence(Vec<u64>),
    Boolean(bool),
}

impl From<u64> for Value {
    fn from(x: u64) -> Self {
        Value::Integer(x)
    }
}

impl From<Vec<u64>> for Value {
    fn from(x: Vec<u64>) -> Self {
        Value::Sequence(x)
    }
}

impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Boolean(x)
    }
}

/// Named invariants of one group, each tagged with the operation that produced it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub group: String,
    pub invariants: BTreeMap<String, Value>,
    pub provenance: BTreeMap<String, String>,
}

impl InvariantReport {
    pub fn new(group: impl Into<String>) -> Self {
        InvariantReport {
            group: group.into(),
            ..Default::default()
        }
    }

    pub fn insert(&mut self, name: &str, value: impl Into<Value>, op: &str) -> Result<()> {
        if self.invariants.contains_key(name) {
            return Err(GroupError::InvalidArgument(format!("duplicate invariant {name}")));
        }
        self.invariants.insert(name.to_string(), value.into());
        self.provenance.insert(name.to_string(), op.to_string());
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.invariants.get(name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// The standard invariant report: orders of the Fitting-type subgroups, the
/// normal Frattini subgroup and the `p`-cores, and the `Φ^⊲`-height.
pub fn invariants_report(label: &str, g: &PermGroup, caps: &Caps) -> Result<InvariantReport> {
    let lat = NormalLattice::new(g, caps)?;
    let fit = lat.fitting_data(caps)?;
    let mut r = InvariantReport::new(label);
    r.insert("order", lat.top_order(), "order")?;
    r.insert("normal_subgroups", lat.len() as u64, "normal_lattice")?;
    r.insert(
        "normal_subgroup_orders",
        lat.members().iter().map(|m| m.order).collect::<Vec<_>>(),
        "normal_lattice",
    )?;
    r.insert("fitting_order", lat.order(fit.fitting), "fitting")?;
    r.insert("components", fit.components.len() as u64, "components")?;
    r.insert("layer_order", lat.order(fit.layer), "layer")?;
    r.insert(
        "generalized_fitting_order",
        lat.order(fit.generalized_fitting),
        "generalized_fitting",
    )?;
    r.insert(
        "frattini_normal_order",
        lat.order(lat.frattini_normal()),
        "frattini_normal",
    )?;
    r.insert("phi_lhd_height", phi_lhd_height(g, caps)? as u64, "phi_lhd_height")?;
    for p in prime_divisors(&g.order()) {
        r.insert(&format!("o_{p}_order"), lat.order(lat.pi_core(&[p])), "pi_core")?;
        r.insert(&format!("o^{p}_order"), lat.order(lat.pi_residual(&[p])), "pi_residual")?;
        r.insert(
            &format!("p_prime_normal_{p}"),
            lat.is_p_prime_normal(p),
            "is_p_prime_normal",
        )?;
    }
    Ok(r)
}
