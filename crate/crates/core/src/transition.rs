//! Lascoux's transition graph on permutations and the expansion coefficients
//! a_{w,β} of G_w = Σ_β a_{w,β} G_β, with a series-level verifier.

use std::collections::HashMap;
use std::rc::Rc;

use serde_json::{json, Value};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::groth::Cache;
use crate::perm::{Partition, Permutation};
use crate::poly::SparsePoly;

/// Bounds on the transition traversal.  The graph is known to terminate, but
/// no a-priori bound is available, so exceeding these limits is a loud error
/// rather than silent truncation.
#[derive(Clone, Copy, Debug)]
pub struct GuardLimits {
    pub max_depth: usize,
    pub max_support: usize,
}

impl GuardLimits {
    pub fn default_for(w: &Permutation) -> Self {
        GuardLimits {
            max_depth: 10 * w.length() + 50,
            max_support: w.support_size() + w.length() + 4,
        }
    }
}

/// The expansion table of one permutation: β ↦ a_{w,β}.  Every key satisfies
/// |β| ≥ ℓ(w) and every value has sign (−1)^{|β|−ℓ(w)}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ACoefficients {
    source: Permutation,
    table: BTreeMap<Partition, i64>,
}

impl ACoefficients {
    pub fn source(&self) -> &Permutation {
        &self.source
    }

    pub fn table(&self) -> &BTreeMap<Partition, i64> {
        &self.table
    }

    pub fn get(&self, beta: &Partition) -> i64 {
        self.table.get(beta).copied().unwrap_or(0)
    }

    /// {"w": [...], "a": [{"beta": [...], "value": n}, ...]} with the table
    /// sorted by (|β|, lex β).
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .table
            .iter()
            .map(|(beta, value)| json!({ "beta": beta.parts(), "value": value }))
            .collect();
        json!({ "w": json_word(&self.source), "a": rows })
    }
}

pub(crate) fn json_word(w: &Permutation) -> Vec<u32> {
    if w.is_identity() {
        vec![1]
    } else {
        w.word().to_vec()
    }
}

/// The permutations v with w ⊳ v.
///
/// With r the last descent of w, w' = w τ_{rk} for the largest k > r with
/// w(k) < w(r), and I(w) = { i < r : ℓ(w' τ_{ir}) = ℓ(w) }: if I(w) is empty
/// the single successor is 1 × w; otherwise there is one successor
/// w' τ_{i_1 r} ⋯ τ_{i_p r} per nonempty subset {i_1 < ⋯ < i_p} of I(w),
/// enumerated in ascending bitmask order.
pub fn transition_successors(w: &Permutation) -> Result<Vec<Permutation>> {
    if w.is_grassmannian() {
        return Err(Error::TransitionUndefined(w.to_string()));
    }
    let r = w.last_descent()?;
    let k = (r + 1..=w.support_size())
        .filter(|&k| w.apply(k) < w.apply(r))
        .max()
        .expect("a descent at r guarantees some k > r with w(k) < w(r)");
    let wprime = w.swap_positions(r, k);
    debug_assert_eq!(wprime.length() + 1, w.length());

    let candidates: Vec<usize> = (1..r)
        .filter(|&i| wprime.swap_positions(i, r).length() == w.length())
        .collect();

    if candidates.is_empty() {
        return Ok(vec![w.shift(1)]);
    }
    let mut out = Vec::with_capacity((1 << candidates.len()) - 1);
    for mask in 1u32..(1 << candidates.len()) {
        let mut v = wprime.clone();
        for (bit, &i) in candidates.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                v = v.swap_positions(i, r);
            }
        }
        out.push(v);
    }
    Ok(out)
}

/// a_{w,β} for all β: (−1)^{|β|−ℓ(w)} times the number of maximal transition
/// chains from w that first become Grassmannian at shape β.  A Grassmannian
/// input (including the identity) is its own chain of length one.
pub fn a_coefficients(w: &Permutation, guard: &GuardLimits) -> Result<ACoefficients> {
    let mut memo: HashMap<Permutation, Rc<BTreeMap<Partition, u64>>> = HashMap::new();
    let counts = chain_counts(w, guard, 0, &mut memo)?;
    let lw = w.length();
    let table = counts
        .iter()
        .map(|(beta, &count)| {
            debug_assert!(beta.size() >= lw);
            let mut value = count as i64;
            if (beta.size() - lw) % 2 == 1 {
                value = -value;
            }
            (beta.clone(), value)
        })
        .collect();
    Ok(ACoefficients {
        source: w.clone(),
        table,
    })
}

pub fn a_coefficients_default(w: &Permutation) -> Result<ACoefficients> {
    a_coefficients(w, &GuardLimits::default_for(w))
}

fn chain_counts(
    w: &Permutation,
    guard: &GuardLimits,
    depth: usize,
    memo: &mut HashMap<Permutation, Rc<BTreeMap<Partition, u64>>>,
) -> Result<Rc<BTreeMap<Partition, u64>>> {
    if let Some(hit) = memo.get(w) {
        return Ok(hit.clone());
    }
    if depth > guard.max_depth {
        return Err(Error::GuardExceeded {
            guard: "depth",
            node: w.to_string(),
            limit: guard.max_depth,
        });
    }
    let counts = if let Some((shape, _)) = w.grassmannian_shape() {
        let mut t = BTreeMap::new();
        t.insert(shape, 1);
        t
    } else {
        let mut t: BTreeMap<Partition, u64> = BTreeMap::new();
        for v in transition_successors(w)? {
            if v.support_size() > guard.max_support {
                return Err(Error::GuardExceeded {
                    guard: "support",
                    node: v.to_string(),
                    limit: guard.max_support,
                });
            }
            let sub = chain_counts(&v, guard, depth + 1, memo)?;
            for (beta, &c) in sub.iter() {
                *t.entry(beta.clone()).or_insert(0) += c;
            }
        }
        t
    };
    let rc = Rc::new(counts);
    memo.insert(w.clone(), rc.clone());
    Ok(rc)
}

/// Compares G_w against Σ_β a_{w,β} G_β on the alphabets x_1..x_kx,
/// y_1..y_ky up to degree d.  Returns the equality flag and the residual.
pub fn verify_a_expansion(
    w: &Permutation,
    kx: usize,
    ky: usize,
    d: usize,
) -> Result<(bool, SparsePoly)> {
    let mut cache = Cache::new();
    verify_a_expansion_cached(w, kx, ky, d, &mut cache)
}

pub fn verify_a_expansion_cached(
    w: &Permutation,
    kx: usize,
    ky: usize,
    d: usize,
    cache: &mut Cache,
) -> Result<(bool, SparsePoly)> {
    let lhs = cache.stable_grothendieck(w, kx, ky, d)?;
    let coeffs = a_coefficients_default(w)?;
    let mut rhs = SparsePoly::zero(kx, ky);
    for (beta, &value) in coeffs.table() {
        let g = cache.stable_for_partition(beta, kx, ky, d)?;
        rhs = rhs.add(&g.scale(value));
    }
    let residual = lhs.sub(&rhs.truncate(d));
    Ok((residual.is_zero(), residual))
}
