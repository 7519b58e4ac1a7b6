//! Rank conditions attached to a permutation, their expected codimension,
//! and the quiver coefficients c_{w,λ}^{(n)} computed through constrained
//! Hecke factorizations and transition tables.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hecke::enumerate_factorizations;
use crate::perm::{Partition, Permutation};
use crate::transition::{a_coefficients_default, json_word};

/// The table r^{(n)}_{ij} for 1 ≤ i ≤ j ≤ 2n:
/// r_w(2n+1−j, i) in the mixed block, i on the left tail, 2n+1−j on the
/// right tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankConditions {
    n: usize,
    table: Vec<Vec<usize>>, // table[i-1][j-i] = r_{ij}
}

pub fn rank_conditions(w: &Permutation, n: usize) -> Result<RankConditions> {
    if !w.in_sn(n + 1) {
        return Err(Error::NotInSn {
            word: w.to_string(),
            n: n + 1,
        });
    }
    let m = 2 * n;
    let mut table = Vec::with_capacity(m);
    for i in 1..=m {
        let mut row = Vec::with_capacity(m - i + 1);
        for j in i..=m {
            let r = if j <= n {
                i
            } else if i >= n + 1 {
                m + 1 - j
            } else {
                w.rank(m + 1 - j, i)
            };
            row.push(r);
        }
        table.push(row);
    }
    let rc = RankConditions { n, table };
    debug_assert!(rc.check_inequalities());
    Ok(rc)
}

impl RankConditions {
    pub fn n(&self) -> usize {
        self.n
    }

    /// r_{ij} for 1 ≤ i ≤ j ≤ 2n.
    pub fn get(&self, i: usize, j: usize) -> usize {
        assert!(1 <= i && i <= j && j <= 2 * self.n);
        self.table[i - 1][j - i]
    }

    /// The monotonicity and supermodularity demanded of rank conditions,
    /// checked wherever all entries involved exist.
    pub fn check_inequalities(&self) -> bool {
        let m = 2 * self.n;
        for i in 1..=m {
            for j in i..=m {
                let r = self.get(i, j);
                if i > 1 && r < self.get(i - 1, j) {
                    return false;
                }
                if j < m && r < self.get(i, j + 1) {
                    return false;
                }
                if i > 1 && j < m && r + self.get(i - 1, j + 1) < self.get(i - 1, j) + self.get(i, j + 1)
                {
                    return false;
                }
            }
        }
        true
    }

    /// The expected codimension d(r) = Σ_{i<j} (r_{i,j−1}−r_{ij})(r_{i+1,j}−r_{ij});
    /// for the tables built from a permutation this equals ℓ(w).
    pub fn expected_codim(&self) -> usize {
        let m = 2 * self.n;
        let mut d = 0;
        for i in 1..m {
            for j in i + 1..=m {
                d += (self.get(i, j - 1) - self.get(i, j)) * (self.get(i + 1, j) - self.get(i, j));
            }
        }
        d
    }
}

pub fn expected_codim(r: &RankConditions) -> usize {
    r.expected_codim()
}

/// A sequence of 2n−1 partitions, the key of a quiver expansion.  Keys order
/// by total size, then lexicographically on the flattened parts, so tables
/// serialize deterministically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaKey(pub Vec<Partition>);

impl LambdaKey {
    pub fn total_size(&self) -> usize {
        self.0.iter().map(Partition::size).sum()
    }

    fn flattened(&self) -> Vec<u32> {
        self.0.iter().flat_map(|p| p.parts().iter().copied()).collect()
    }
}

impl PartialOrd for LambdaKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LambdaKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_size()
            .cmp(&other.total_size())
            .then_with(|| self.flattened().cmp(&other.flattened()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// The expansion P_w^{(n)}: λ ↦ c_{w,λ}^{(n)} over sequences of 2n−1
/// partitions.  Entries alternate in sign with |λ| − ℓ(w) and the bottom
/// layer |λ| = ℓ(w) is positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverExpansion {
    w: Permutation,
    n: usize,
    table: BTreeMap<LambdaKey, i64>,
}

impl QuiverExpansion {
    pub fn w(&self) -> &Permutation {
        &self.w
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &BTreeMap<LambdaKey, i64> {
        &self.table
    }

    pub fn get(&self, key: &LambdaKey) -> i64 {
        self.table.get(key).copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self
            .table
            .iter()
            .map(|(key, value)| {
                let lambda: Vec<Vec<u32>> =
                    key.0.iter().map(|p| p.parts().to_vec()).collect();
                json!({ "lambda": lambda, "value": value })
            })
            .collect();
        json!({ "w": json_word(&self.w), "n": self.n, "coeffs": coeffs })
    }
}

/// c_{w,λ}^{(n)} for w ∈ S_{n+1}: over all Hecke factorizations
/// w = u_1 ⋯ u_{2n−1} with u_i ∈ S_{min(i,2n−i)+1}, accumulate
/// (−1)^{|λ|−ℓ(w)} |a_{u_1,λ^1} ⋯ a_{u_{2n−1},λ^{2n−1}}| per key λ.
///
/// The signed form (−1)^{Σℓ(u_i)−ℓ(w)} Π a_{u_i,λ^i} is accumulated
/// alongside and asserted equal; the two readings agree exactly when the
/// a-tables obey their sign law.
pub fn quiver_coefficients(w: &Permutation, n: usize) -> Result<QuiverExpansion> {
    if !w.in_sn(n + 1) {
        return Err(Error::NotInSn {
            word: w.to_string(),
            n: n + 1,
        });
    }
    let caps: Vec<usize> = (1..=2 * n - 1).map(|i| i.min(2 * n - i) + 1).collect();
    let lw = w.length();

    let mut tables: HashMap<Permutation, Vec<(Partition, i64)>> = HashMap::new();
    let mut absolute: BTreeMap<LambdaKey, i64> = BTreeMap::new();
    let mut signed: BTreeMap<LambdaKey, i64> = BTreeMap::new();

    for fact in enumerate_factorizations(w, &caps) {
        for u in fact.factors() {
            if !tables.contains_key(u) {
                let t = a_coefficients_default(u)?;
                tables.insert(
                    u.clone(),
                    t.table().iter().map(|(b, &v)| (b.clone(), v)).collect(),
                );
            }
        }
        let sign_exponent = fact.sign_exponent();
        // tensor over the per-slot tables
        let mut partial: Vec<(Vec<Partition>, i64)> = vec![(Vec::new(), 1)];
        for u in fact.factors() {
            let table = &tables[u];
            let mut next = Vec::with_capacity(partial.len() * table.len());
            for (key, value) in &partial {
                for (beta, a) in table {
                    let mut k = key.clone();
                    k.push(beta.clone());
                    next.push((k, value * a));
                }
            }
            partial = next;
        }
        for (key, value) in partial {
            let key = LambdaKey(key);
            let total = key.total_size();
            let mut abs_term = value.abs();
            if (total - lw) % 2 == 1 {
                abs_term = -abs_term;
            }
            *absolute.entry(key.clone()).or_insert(0) += abs_term;
            let mut signed_term = value;
            if sign_exponent % 2 == 1 {
                signed_term = -signed_term;
            }
            *signed.entry(key).or_insert(0) += signed_term;
        }
    }
    assert_eq!(
        absolute, signed,
        "absolute-value and signed accumulations disagree; a-table sign law violated"
    );
    absolute.retain(|_, v| *v != 0);
    Ok(QuiverExpansion {
        w: w.clone(),
        n,
        table: absolute,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::symmetric_group;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn shape(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn rank_conditions_examples() {
        let s1 = p("2,1");
        let r = rank_conditions(&s1, 1).unwrap();
        assert_eq!(r.get(1, 1), 1);
        assert_eq!(r.get(2, 2), 1);
        assert_eq!(r.get(1, 2), 0);
        assert_eq!(r.expected_codim(), 1);

        let r = rank_conditions(&Permutation::identity(), 1).unwrap();
        assert_eq!(r.get(1, 2), 1);
        assert_eq!(r.expected_codim(), 0);

        let r = rank_conditions(&p("2,1,3"), 2).unwrap();
        assert_eq!(r.get(1, 3), p("2,1,3").rank(2, 1));
        assert_eq!(r.get(1, 3), 1);

        let r = rank_conditions(&p("3,2,1"), 2).unwrap();
        assert_eq!(r.expected_codim(), 3);
    }

    #[test]
    fn codim_equals_length_exhaustive() {
        for n in 1..=4 {
            for w in symmetric_group(n + 1) {
                let r = rank_conditions(&w, n).unwrap();
                assert!(r.check_inequalities(), "w = {w}, n = {n}");
                assert_eq!(r.expected_codim(), w.length(), "w = {w}, n = {n}");
            }
        }
    }

    #[test]
    fn quiver_of_s1_single_slot() {
        let q = quiver_coefficients(&p("2,1"), 1).unwrap();
        assert_eq!(q.table().len(), 1);
        assert_eq!(q.get(&LambdaKey(vec![shape(&[1])])), 1);
    }

    #[test]
    fn quiver_of_s1_three_slots() {
        let q = quiver_coefficients(&p("2,1"), 2).unwrap();
        assert_eq!(q.table().len(), 7);
        for (key, &value) in q.table() {
            let nonempty = key.0.iter().filter(|b| !b.is_empty()).count();
            assert!(key.0.iter().all(|b| b.is_empty() || *b == shape(&[1])));
            let expected = if (nonempty - 1) % 2 == 1 { -1 } else { 1 };
            assert_eq!(value, expected, "key {key:?}");
        }
    }

    #[test]
    fn quiver_of_identity() {
        for n in 1..=3 {
            let q = quiver_coefficients(&Permutation::identity(), n).unwrap();
            assert_eq!(q.table().len(), 1);
            let empty = LambdaKey(vec![Partition::empty(); 2 * n - 1]);
            assert_eq!(q.get(&empty), 1);
        }
    }

    #[test]
    fn signs_alternate_on_s3() {
        for w in symmetric_group(3) {
            let q = quiver_coefficients(&w, 2).unwrap();
            let lw = w.length();
            for (key, &value) in q.table() {
                let total = key.total_size();
                assert!(total >= lw);
                let positive = (total - lw) % 2 == 0;
                assert_eq!(value > 0, positive, "w = {w}, key {key:?}");
            }
        }
    }

    #[test]
    fn key_order_is_by_size_then_flattened() {
        let a = LambdaKey(vec![shape(&[1]), Partition::empty()]);
        let b = LambdaKey(vec![Partition::empty(), shape(&[1])]);
        let c = LambdaKey(vec![shape(&[1]), shape(&[1])]);
        assert!(a < c);
        assert!(b < c);
        assert_ne!(a.cmp(&b), Ordering::Equal);
    }
}
