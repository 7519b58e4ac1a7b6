//! The degenerate Hecke (0-Hecke / Demazure) product on permutations, and
//! enumeration of factorizations under per-slot support caps.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::perm::{symmetric_group, Permutation};

/// w · s_i in the Demazure sense: w s_i if that increases length, else w.
pub fn hecke_apply(w: &Permutation, i: usize) -> Permutation {
    if w.apply(i) < w.apply(i + 1) {
        w.right_simple(i)
    } else {
        w.clone()
    }
}

/// One reduced word for w, produced by repeatedly removing the smallest
/// descent.  Deterministic; any reduced word gives the same Hecke products.
pub fn reduced_word(w: &Permutation) -> Vec<usize> {
    let mut v = w.clone();
    let mut rev = Vec::with_capacity(w.length());
    while let Some(&d) = v.descents().first() {
        rev.push(d);
        v = v.right_simple(d);
    }
    rev.reverse();
    rev
}

/// The Demazure product u · v.
pub fn hecke_product(u: &Permutation, v: &Permutation) -> Permutation {
    reduced_word(v)
        .into_iter()
        .fold(u.clone(), |acc, i| hecke_apply(&acc, i))
}

/// Left-to-right Demazure evaluation of a word of simple-reflection indices.
pub fn hecke_word_product(word: &[usize]) -> Permutation {
    word.iter()
        .fold(Permutation::identity(), |acc, &i| hecke_apply(&acc, i))
}

/// u ≤ w in Bruhat order, via rank-function dominance.
pub(crate) fn bruhat_leq(u: &Permutation, w: &Permutation) -> bool {
    let n = u.support_size().max(w.support_size());
    for p in 1..=n {
        for q in 1..=n {
            if u.rank(p, q) < w.rank(p, q) {
                return false;
            }
        }
    }
    true
}

/// A tuple (u_1, ..., u_m) whose Demazure product is `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeFactorization {
    factors: Vec<Permutation>,
    target: Permutation,
}

impl HeckeFactorization {
    pub fn try_new(factors: Vec<Permutation>, target: Permutation) -> Result<Self> {
        let product = factors
            .iter()
            .fold(Permutation::identity(), |acc, u| hecke_product(&acc, u));
        if product != target {
            return Err(Error::InvalidPermutation(format!(
                "factors multiply to {product}, not {target}"
            )));
        }
        Ok(HeckeFactorization { factors, target })
    }

    pub fn factors(&self) -> &[Permutation] {
        &self.factors
    }

    pub fn target(&self) -> &Permutation {
        &self.target
    }

    pub fn total_length(&self) -> usize {
        self.factors.iter().map(Permutation::length).sum()
    }

    /// Σ ℓ(u_i) − ℓ(target); always nonnegative, and the exponent of the
    /// sign attached to this factorization.
    pub fn sign_exponent(&self) -> usize {
        self.total_length() - self.target.length()
    }
}

/// Every tuple (u_1, ..., u_m) with u_i ∈ S_{slot_caps[i]} and Demazure
/// product `w`, in lexicographic order of the factor words.
///
/// Partial products are pruned when their length exceeds ℓ(w), or when they
/// move a point beyond the largest position the remaining slots (or w
/// itself) could still involve; both conditions are preserved by further
/// right multiplication.
pub fn enumerate_factorizations(w: &Permutation, slot_caps: &[usize]) -> Vec<HeckeFactorization> {
    let mut groups: BTreeMap<usize, Vec<Permutation>> = BTreeMap::new();
    for &cap in slot_caps {
        groups.entry(cap).or_insert_with(|| symmetric_group(cap));
    }
    // largest position that slots after index s can still affect
    let mut tail_bound = vec![0usize; slot_caps.len() + 1];
    for s in (0..slot_caps.len()).rev() {
        tail_bound[s] = tail_bound[s + 1].max(slot_caps[s]);
    }

    let mut out = Vec::new();
    let mut stack: Vec<Permutation> = Vec::with_capacity(slot_caps.len());

    fn rec(
        w: &Permutation,
        slot_caps: &[usize],
        groups: &BTreeMap<usize, Vec<Permutation>>,
        tail_bound: &[usize],
        slot: usize,
        partial: &Permutation,
        stack: &mut Vec<Permutation>,
        out: &mut Vec<HeckeFactorization>,
    ) {
        if slot == slot_caps.len() {
            if partial == w {
                out.push(HeckeFactorization {
                    factors: stack.clone(),
                    target: w.clone(),
                });
            }
            return;
        }
        let bound = w.support_size().max(tail_bound[slot + 1]);
        for cand in &groups[&slot_caps[slot]] {
            let next = hecke_product(partial, cand);
            if next.length() > w.length() {
                continue;
            }
            if next.support_size() > bound {
                continue;
            }
            stack.push(cand.clone());
            rec(w, slot_caps, groups, tail_bound, slot + 1, &next, stack, out);
            stack.pop();
        }
    }

    rec(
        w,
        slot_caps,
        &groups,
        &tail_bound,
        0,
        &Permutation::identity(),
        &mut stack,
        &mut out,
    );
    out
}

/// All ordered pairs (u, v) in S_cap × S_cap with u · v = w.
pub fn enumerate_pairs(w: &Permutation, cap: usize) -> Result<Vec<(Permutation, Permutation)>> {
    if !w.in_sn(cap) {
        return Err(Error::NotInSn {
            word: w.to_string(),
            n: cap,
        });
    }
    let sn = symmetric_group(cap);
    let mut out = Vec::new();
    for u in &sn {
        if !bruhat_leq(u, w) {
            continue;
        }
        for v in &sn {
            if hecke_product(u, v) == *w {
                out.push((u.clone(), v.clone()));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum RunDir {
    Increasing,
    Decreasing,
}

/// One run of a structured Hecke word: strictly monotone letters bounded
/// below by `min_letter`, with an exact length or any length when `None`.
#[derive(Clone, Debug)]
pub(crate) struct RunSpec {
    pub dir: RunDir,
    pub min_letter: usize,
    pub len: Option<usize>,
}

/// Counts Hecke words which evaluate to `target`, are composed of the given
/// runs in order over the alphabet 1..=max_letter, and use at most
/// `total_cap` letters.  Returns the count per vector of realized run
/// lengths.
///
/// Branches are cut as soon as the partial Demazure product escapes the
/// Bruhat interval below `target` or can no longer reach ℓ(target) with the
/// letters that remain.
pub(crate) fn count_run_words(
    target: &Permutation,
    max_letter: usize,
    runs: &[RunSpec],
    total_cap: usize,
) -> BTreeMap<Vec<usize>, u64> {
    let n = max_letter + 1;
    let target_len = target.length();
    let mut target_rank = vec![vec![0usize; n + 1]; n + 1];
    for p in 1..=n {
        for q in 1..=n {
            target_rank[p][q] = target.rank(p, q);
        }
    }
    // letters whose reflection lies below the target at all
    let allowed: Vec<bool> = (0..=max_letter)
        .map(|e| e >= 1 && target.rank(e, e) < e)
        .collect();

    struct Search<'a> {
        target: &'a Permutation,
        target_len: usize,
        target_rank: Vec<Vec<usize>>,
        allowed: Vec<bool>,
        max_letter: usize,
        runs: &'a [RunSpec],
        total_cap: usize,
        out: BTreeMap<Vec<usize>, u64>,
    }

    impl Search<'_> {
        fn dominated(&self, p: &Permutation) -> bool {
            let n = self.max_letter + 1;
            for a in 1..=n {
                for b in 1..=n {
                    if p.rank(a, b) < self.target_rank[a][b] {
                        return false;
                    }
                }
            }
            true
        }

        fn go(
            &mut self,
            run: usize,
            len_in_run: usize,
            last: Option<usize>,
            perm: &Permutation,
            used: usize,
            lengths: &mut Vec<usize>,
        ) {
            if run == self.runs.len() {
                if perm == self.target {
                    *self.out.entry(lengths.clone()).or_insert(0) += 1;
                }
                return;
            }
            let spec = &self.runs[run];
            // close the current run
            if spec.len.map_or(true, |e| e == len_in_run) {
                lengths.push(len_in_run);
                self.go(run + 1, 0, None, perm, used, lengths);
                lengths.pop();
            }
            // or extend it by one letter
            if used >= self.total_cap || spec.len.is_some_and(|e| len_in_run >= e) {
                return;
            }
            for e in spec.min_letter..=self.max_letter {
                if !self.allowed[e] {
                    continue;
                }
                match (spec.dir, last) {
                    (RunDir::Increasing, Some(l)) if e <= l => continue,
                    (RunDir::Decreasing, Some(l)) if e >= l => continue,
                    _ => {}
                }
                let next = hecke_apply(perm, e);
                let next_len = next.length();
                if next_len > self.target_len {
                    continue;
                }
                if self.target_len - next_len > self.total_cap - used - 1 {
                    continue;
                }
                if !self.dominated(&next) {
                    continue;
                }
                self.go(run, len_in_run + 1, Some(e), &next, used + 1, lengths);
            }
        }
    }

    let mut search = Search {
        target,
        target_len,
        target_rank,
        allowed,
        max_letter,
        runs,
        total_cap,
        out: BTreeMap::new(),
    };
    let mut lengths = Vec::with_capacity(runs.len());
    search.go(0, 0, None, &Permutation::identity(), 0, &mut lengths);
    search.out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Partition;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn s(i: usize) -> Permutation {
        Permutation::simple(i)
    }

    #[test]
    fn apply_examples() {
        assert_eq!(hecke_apply(&s(1), 1), s(1)); // s_i^2 = s_i
        assert_eq!(hecke_apply(&Permutation::identity(), 1), s(1));
        // length 1 -> 2, so this is the ordinary product (1,3,2) s_1
        assert_eq!(hecke_apply(&p("1,3,2"), 1), p("3,1,2"));
    }

    #[test]
    fn product_examples() {
        assert_eq!(hecke_product(&s(1), &s(1)), s(1));
        for w in symmetric_group(4) {
            assert_eq!(hecke_product(&w, &Permutation::identity()), w);
            assert_eq!(hecke_product(&Permutation::identity(), &w), w);
        }
        let u = hecke_product(&s(1), &s(2));
        assert_eq!(hecke_product(&u, &s(1)), p("3,2,1"));
    }

    #[test]
    fn word_product_examples() {
        assert_eq!(hecke_word_product(&[1, 1, 2]), p("2,3,1"));
        assert_eq!(hecke_word_product(&[]), Permutation::identity());
        assert_eq!(hecke_word_product(&[1, 2, 1, 2]), p("3,2,1"));
    }

    #[test]
    fn reduced_word_reproduces_permutation() {
        for w in symmetric_group(4) {
            let word = reduced_word(&w);
            assert_eq!(word.len(), w.length());
            assert_eq!(hecke_word_product(&word), w);
        }
    }

    #[test]
    fn idempotence_exhaustive_s4() {
        for w in symmetric_group(4) {
            for i in 1..=3 {
                let once = hecke_apply(&w, i);
                assert_eq!(hecke_apply(&once, i), once);
            }
        }
    }

    #[test]
    fn length_bounds_exhaustive_s4() {
        for u in symmetric_group(4) {
            for v in symmetric_group(4) {
                let uv = hecke_product(&u, &v);
                assert!(uv.length() <= u.length() + v.length());
                assert!(uv.length() >= u.length().max(v.length()));
                if u.compose(&v).length() == u.length() + v.length() {
                    assert_eq!(uv, u.compose(&v));
                }
            }
        }
    }

    #[test]
    fn factorizations_of_s1_in_three_slots() {
        // independent oracle: brute force over S_2 x S_3 x S_2
        let mut expected = Vec::new();
        for a in symmetric_group(2) {
            for b in symmetric_group(3) {
                for c in symmetric_group(2) {
                    let prod = hecke_product(&hecke_product(&a, &b), &c);
                    if prod == s(1) {
                        expected.push(vec![a.clone(), b.clone(), c.clone()]);
                    }
                }
            }
        }
        assert_eq!(expected.len(), 7);

        let got = enumerate_factorizations(&s(1), &[2, 3, 2]);
        assert_eq!(got.len(), 7);
        let got_factors: Vec<Vec<Permutation>> =
            got.iter().map(|f| f.factors().to_vec()).collect();
        for tuple in &expected {
            assert!(got_factors.contains(tuple));
        }
        for f in &got {
            assert_eq!(f.sign_exponent(), f.total_length() - 1);
        }
    }

    #[test]
    fn factorization_edge_cases() {
        let id = Permutation::identity();
        let got = enumerate_factorizations(&id, &[2, 2]);
        assert_eq!(got.len(), 1);
        assert!(got[0].factors().iter().all(Permutation::is_identity));

        assert!(enumerate_factorizations(&p("3,2,1"), &[2, 2]).is_empty());
        // empty slot list
        assert!(enumerate_factorizations(&s(1), &[]).is_empty());
        assert_eq!(enumerate_factorizations(&id, &[]).len(), 1);
    }

    #[test]
    fn pairs_examples() {
        let got = enumerate_pairs(&s(1), 2).unwrap();
        let id = Permutation::identity();
        assert_eq!(
            got,
            vec![
                (id.clone(), s(1)),
                (s(1), id.clone()),
                (s(1), s(1)),
            ]
        );

        assert_eq!(enumerate_pairs(&id, 3).unwrap(), vec![(id.clone(), id.clone())]);

        let w0 = p("3,2,1");
        let pairs = enumerate_pairs(&w0, 3).unwrap();
        assert!(pairs.contains(&(id.clone(), w0.clone())));
        assert!(pairs.contains(&(w0.clone(), id)));
        assert!(pairs.contains(&(p("2,3,1"), s(1))));
        assert!(pairs.contains(&(w0.clone(), w0.clone())));
    }

    #[test]
    fn bruhat_order_sanity() {
        let id = Permutation::identity();
        for w in symmetric_group(4) {
            assert!(bruhat_leq(&id, &w));
            assert!(bruhat_leq(&w, &Permutation::longest(4)));
        }
        assert!(!bruhat_leq(&s(1), &s(2)));
    }

    #[test]
    fn run_words_single_decreasing_run() {
        // strictly decreasing Hecke words for a Grassmannian single-row shape
        let w = Permutation::from_partition(&Partition::new(vec![2]).unwrap(), 1).unwrap();
        let runs = [RunSpec { dir: RunDir::Decreasing, min_letter: 1, len: None }];
        let table = count_run_words(&w, w.support_size().max(2) - 1, &runs, 4);
        // x^2 is the only monomial: exactly one word of length 2
        assert_eq!(table.get(&vec![2]).copied(), Some(1));
        assert_eq!(table.get(&vec![1]), None);
        assert_eq!(table.get(&vec![3]), None);
    }
}
