//! Normal closures, commutator subgroups and the derived/lower central series.

use crate::caps::Caps;
use crate::enumerate::ElementTable;
use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Smallest normal subgroup of `g` containing `xs`.
pub fn normal_closure(g: &PermGroup, xs: &[Permutation]) -> Result<PermGroup> {
    for x in xs {
        g.check_degree(x)?;
        if !g.has(x) {
            return Err(GroupError::NotSubgroup(format!("{x} is not in G")));
        }
    }
    Ok(normal_closure_unchecked(g, xs))
}

/// Normal closure of `xs` under conjugation by `g`; `xs` need not lie in `g`.
pub(crate) fn normal_closure_unchecked(g: &PermGroup, xs: &[Permutation]) -> PermGroup {
    let mut n = PermGroup::from_gens_unchecked(g.degree(), xs.to_vec());
    let mut queue: Vec<Permutation> = n.generators().to_vec();
    while let Some(x) = queue.pop() {
        for s in g.generators() {
            let y = x.conjugate_by(s);
            if !n.has(&y) {
                n = n.closure(std::slice::from_ref(&y));
                queue.push(y);
            }
        }
    }
    n
}

/// `[A, B]` for subgroups normalized by `ambient` (the closure is taken in `ambient`).
pub fn commutator_subgroup(ambient: &PermGroup, a: &PermGroup, b: &PermGroup) -> PermGroup {
    let mut comms = Vec::new();
    for x in a.generators() {
        for y in b.generators() {
            let c = x.commutator(y);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    normal_closure_unchecked(&ambient.join(a).join(b), &comms)
}

pub fn derived_subgroup(g: &PermGroup) -> PermGroup {
    commutator_subgroup(g, g, g)
}

/// `G, G', G'', ...` down to the first repeated term.
pub fn derived_series(g: &PermGroup) -> Vec<PermGroup> {
    let mut out = vec![g.clone()];
    loop {
        let last = out.last().unwrap();
        let next = derived_subgroup(last);
        if next.order() == last.order() {
            return out;
        }
        out.push(next);
    }
}

/// `G = γ_1 ≥ γ_2 = [G, G] ≥ γ_3 = [γ_2, G] ≥ ...` down to the first repeated term.
pub fn lower_central_series(g: &PermGroup) -> Vec<PermGroup> {
    let mut out = vec![g.clone()];
    loop {
        let last = out.last().unwrap();
        let next = commutator_subgroup(g, last, g);
        if next.order() == last.order() {
            return out;
        }
        out.push(next);
    }
}

pub fn is_perfect(g: &PermGroup) -> bool {
    derived_subgroup(g).order() == g.order()
}

pub fn is_solvable(g: &PermGroup) -> bool {
    derived_series(g).last().unwrap().is_trivial()
}

pub fn is_nilpotent(g: &PermGroup) -> bool {
    lower_central_series(g).last().unwrap().is_trivial()
}

/// Last term of the derived series (the soluble residual).
pub fn perfect_core(g: &PermGroup) -> PermGroup {
    derived_series(g).pop().unwrap()
}

/// Centre of `g`.
pub fn center(g: &PermGroup) -> PermGroup {
    crate::backtrack::centralizer_of_group(g, g).expect("same degree")
}

/// A conjugacy class, by representative and size.
#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub representative: Permutation,
    pub size: u64,
}

/// Conjugacy classes by orbit enumeration, ordered by the representative's element index.
pub fn conjugacy_classes(g: &PermGroup, caps: &Caps) -> Result<Vec<ConjugacyClass>> {
    g.order_within(caps.order, "order")?;
    let table = ElementTable::new(g, caps)?;
    Ok(table
        .classes()
        .into_iter()
        .map(|c| ConjugacyClass {
            representative: table.element(c[0]).clone(),
            size: c.len() as u64,
        })
        .collect())
}
