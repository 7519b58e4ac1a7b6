//! Permutations and partitions.
//!
//! A permutation is stored in one-line notation, `word[i] = w(i+1)` with
//! 1-based positions throughout the public API.  Values are compared as
//! elements of S_∞: trailing fixed points are stripped on construction, so
//! `2,1` and `2,1,3,4` denote the same element.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    word: Vec<u32>,
}

impl Permutation {
    pub fn identity() -> Self {
        Permutation { word: Vec::new() }
    }

    /// Builds a permutation from one-line notation, validating that the word
    /// is a rearrangement of 1..n and stripping trailing fixed points.
    pub fn new(word: Vec<u32>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![0usize; n];
        for &v in &word {
            if v == 0 || v as usize > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} is outside 1..{n}"
                )));
            }
            seen[v as usize - 1] += 1;
        }
        for (v, &count) in seen.iter().enumerate() {
            if count > 1 {
                return Err(Error::InvalidPermutation(format!(
                    "value {} appears {} times",
                    v + 1,
                    count
                )));
            }
        }
        for (v, &count) in seen.iter().enumerate() {
            if count == 0 {
                return Err(Error::InvalidPermutation(format!("value {} is missing", v + 1)));
            }
        }
        let mut p = Permutation { word };
        p.canonicalize();
        Ok(p)
    }

    /// The simple transposition s_i, exchanging i and i+1.
    pub fn simple(i: usize) -> Self {
        assert!(i >= 1, "simple transposition index is 1-based");
        let mut word: Vec<u32> = (1..=i as u32 + 1).collect();
        word.swap(i - 1, i);
        Permutation { word }
    }

    /// The longest element of S_n, i.e. (n, n-1, ..., 1).
    pub fn longest(n: usize) -> Self {
        let mut p = Permutation {
            word: (1..=n as u32).rev().collect(),
        };
        p.canonicalize();
        p
    }

    fn canonicalize(&mut self) {
        while let Some(&last) = self.word.last() {
            if last as usize == self.word.len() {
                self.word.pop();
            } else {
                break;
            }
        }
    }

    /// The canonical word: one-line notation with trailing fixed points
    /// stripped.  Empty for the identity.
    pub fn word(&self) -> &[u32] {
        &self.word
    }

    /// One-line notation padded with fixed points up to length n.
    pub fn padded_word(&self, n: usize) -> Vec<u32> {
        let mut w: Vec<u32> = self.word.clone();
        for j in w.len() + 1..=n {
            w.push(j as u32);
        }
        w
    }

    /// w(i) for 1-based i, extending by fixed points beyond the word.
    pub fn apply(&self, i: usize) -> usize {
        assert!(i >= 1, "positions are 1-based");
        if i <= self.word.len() {
            self.word[i - 1] as usize
        } else {
            i
        }
    }

    /// The smallest n with w ∈ S_n (0 for the identity).
    pub fn support_size(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn in_sn(&self, n: usize) -> bool {
        self.word.len() <= n
    }

    /// Coxeter length: the number of inversions.  Invariant under trivial
    /// extension.
    pub fn length(&self) -> usize {
        let w = &self.word;
        let mut inv = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// Positions i with w(i) > w(i+1), ascending.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.word.len())
            .filter(|&i| self.word[i - 1] > self.word[i])
            .collect()
    }

    /// The largest descent position; the identity has none.
    pub fn last_descent(&self) -> Result<usize> {
        self.descents().pop().ok_or(Error::NoDescent)
    }

    /// A permutation with at most one descent.  The identity counts.
    pub fn is_grassmannian(&self) -> bool {
        self.descents().len() <= 1
    }

    /// r_w(p,q): the number of i ≤ p with w(i) ≤ q.
    pub fn rank(&self, p: usize, q: usize) -> usize {
        (1..=p).filter(|&i| self.apply(i) <= q).count()
    }

    /// The shifted permutation 1^m × w: identity on 1..m, then j ↦ w(j-m)+m.
    pub fn shift(&self, m: usize) -> Self {
        let mut word: Vec<u32> = (1..=m as u32).collect();
        word.extend(self.word.iter().map(|&v| v + m as u32));
        let mut p = Permutation { word };
        p.canonicalize();
        p
    }

    pub fn inverse(&self) -> Self {
        let mut word = vec![0u32; self.word.len()];
        for (i, &v) in self.word.iter().enumerate() {
            word[v as usize - 1] = i as u32 + 1;
        }
        Permutation { word }
    }

    /// Function composition: (self ∘ other)(i) = self(other(i)).
    pub fn compose(&self, other: &Permutation) -> Self {
        let n = self.support_size().max(other.support_size());
        let word = (1..=n).map(|i| self.apply(other.apply(i)) as u32).collect();
        let mut p = Permutation { word };
        p.canonicalize();
        p
    }

    /// Right multiplication by the transposition τ_{ab}: swaps the entries in
    /// positions a and b (a < b).
    pub fn swap_positions(&self, a: usize, b: usize) -> Self {
        assert!(1 <= a && a < b, "need 1 <= a < b");
        let mut word = self.padded_word(b.max(self.word.len()));
        word.swap(a - 1, b - 1);
        let mut p = Permutation { word };
        p.canonicalize();
        p
    }

    /// w · s_i (ordinary product): swaps positions i and i+1.
    pub fn right_simple(&self, i: usize) -> Self {
        self.swap_positions(i, i + 1)
    }

    /// The Grassmannian permutation w_α with descent at p: w(i) = i + α_{p+1-i}
    /// for i ≤ p, increasing elsewhere.
    pub fn from_partition(alpha: &Partition, p: usize) -> Result<Self> {
        if alpha.num_parts() > p {
            return Err(Error::DescentTooSmall {
                parts: alpha.num_parts(),
                p,
            });
        }
        if alpha.is_empty() {
            return Ok(Permutation::identity());
        }
        let n = p + alpha.part(1) as usize;
        let mut word = vec![0u32; n];
        let mut used = vec![false; n];
        for i in 1..=p {
            let v = i + alpha.part(p + 1 - i) as usize;
            word[i - 1] = v as u32;
            used[v - 1] = true;
        }
        let mut rest = (1..=n as u32).filter(|&v| !used[v as usize - 1]);
        for slot in word.iter_mut().skip(p) {
            *slot = rest.next().expect("exactly n - p unused values remain");
        }
        let mut w = Permutation { word };
        w.canonicalize();
        Ok(w)
    }

    /// Inverts `from_partition`: for a permutation with at most one descent,
    /// returns its shape and descent position.  The identity yields the empty
    /// shape with no descent; anything with two descents yields `None`.
    pub fn grassmannian_shape(&self) -> Option<(Partition, Option<usize>)> {
        let des = self.descents();
        match des.len() {
            0 => Some((Partition::empty(), None)),
            1 => {
                let p = des[0];
                let mut parts: Vec<u32> = (1..=p)
                    .rev()
                    .map(|i| (self.apply(i) - i) as u32)
                    .collect();
                while parts.last() == Some(&0) {
                    parts.pop();
                }
                let shape = Partition::new(parts).expect("shape of a Grassmannian permutation");
                Some((shape, Some(p)))
            }
            _ => None,
        }
    }

    /// w₀ w w₀ inside S_n, where w₀ is the longest element.
    pub fn conjugate_by_longest(&self, n: usize) -> Result<Self> {
        if !self.in_sn(n) {
            return Err(Error::NotInSn {
                word: self.to_string(),
                n,
            });
        }
        let word = (1..=n)
            .map(|i| (n + 1 - self.apply(n + 1 - i)) as u32)
            .collect();
        let mut p = Permutation { word };
        p.canonicalize();
        Ok(p)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.word.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut word = Vec::new();
        for piece in s.split(',') {
            let piece = piece.trim();
            let v: u32 = piece
                .parse()
                .map_err(|_| Error::InvalidPermutation(format!("cannot read `{piece}` as a value")))?;
            word.push(v);
        }
        Permutation::new(word)
    }
}

/// All elements of S_n, ordered lexicographically by one-line notation.
pub fn symmetric_group(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, prefix: &mut Vec<u32>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        if prefix.len() == n {
            let mut p = Permutation { word: prefix.clone() };
            p.canonicalize();
            out.push(p);
            return;
        }
        for v in 1..=n as u32 {
            if !used[v as usize - 1] {
                used[v as usize - 1] = true;
                prefix.push(v);
                rec(n, prefix, used, out);
                prefix.pop();
                used[v as usize - 1] = false;
            }
        }
    }
    rec(n, &mut prefix, &mut used, &mut out);
    out
}

/// A partition: weakly decreasing positive parts.  The empty partition is
/// allowed and denotes the unit shape.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn new(parts: Vec<u32>) -> Result<Self> {
        for k in 0..parts.len() {
            if parts[k] == 0 {
                return Err(Error::InvalidPartition("parts must be positive".into()));
            }
            if k + 1 < parts.len() && parts[k] < parts[k + 1] {
                return Err(Error::InvalidPartition(format!(
                    "parts must be weakly decreasing, got {} before {}",
                    parts[k],
                    parts[k + 1]
                )));
            }
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// α_k with 1-based k; zero beyond the last part.
    pub fn part(&self, k: usize) -> u32 {
        if k >= 1 && k <= self.parts.len() {
            self.parts[k - 1]
        } else {
            0
        }
    }

    /// |α|, the sum of the parts.
    pub fn size(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// ℓ(α), the number of parts.
    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The conjugate (transposed) shape.
    pub fn conjugate(&self) -> Self {
        let cols = self.part(1) as usize;
        let parts = (1..=cols)
            .map(|c| self.parts.iter().filter(|&&p| p as usize >= c).count() as u32)
            .collect();
        Partition { parts }
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Partitions sort by size, then lexicographically by parts; this is the
/// order used for every serialized table.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for piece in s.split(',') {
            let piece = piece.trim();
            let v: u32 = piece
                .parse()
                .map_err(|_| Error::InvalidPartition(format!("cannot read `{piece}` as a part")))?;
            parts.push(v);
        }
        Partition::new(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn length_counts_inversions() {
        assert_eq!(p("1,2,3").length(), 0);
        assert_eq!(p("2,1").length(), 1);
        assert_eq!(p("3,2,1").length(), 3);
    }

    #[test]
    fn trailing_fixed_points_are_stripped() {
        assert_eq!(p("2,1"), p("2,1,3,4"));
        assert_eq!(p("1,2,3"), Permutation::identity());
        assert_eq!(p("2,1,3").word(), &[2, 1]);
    }

    #[test]
    fn descents_and_last_descent() {
        assert_eq!(p("1,3,2").descents(), vec![2]);
        assert_eq!(p("2,1,4,3").descents(), vec![1, 3]);
        assert_eq!(p("3,2,1").descents(), vec![1, 2]);
        assert!(Permutation::identity().last_descent().is_err());
        assert_eq!(p("2,1,4,3").last_descent().unwrap(), 3);
    }

    #[test]
    fn rank_function() {
        for pq in 1..5 {
            for q in 1..5 {
                assert_eq!(Permutation::identity().rank(pq, q), pq.min(q));
            }
        }
        assert_eq!(p("2,1").rank(1, 1), 0);
        assert_eq!(p("2,1").rank(2, 1), 1);
    }

    #[test]
    fn shift_examples() {
        assert_eq!(p("2,1").shift(1), p("1,3,2"));
        assert_eq!(p("2,1").shift(0), p("2,1"));
        assert_eq!(p("2,1").shift(2), p("1,2,4,3"));
        assert_eq!(p("2,1").shift(2).length(), p("2,1").length());
    }

    #[test]
    fn longest_element() {
        assert_eq!(Permutation::longest(2), p("2,1"));
        assert_eq!(Permutation::longest(3), p("3,2,1"));
        assert_eq!(Permutation::longest(1), Permutation::identity());
        assert_eq!(Permutation::longest(4).length(), 6);
    }

    #[test]
    fn grassmannian_from_partition() {
        let a1 = Partition::new(vec![1]).unwrap();
        assert_eq!(Permutation::from_partition(&a1, 1).unwrap(), p("2,1"));
        let a21 = Partition::new(vec![2, 1]).unwrap();
        assert_eq!(Permutation::from_partition(&a21, 2).unwrap(), p("2,4,1,3"));
        assert_eq!(
            Permutation::from_partition(&Partition::empty(), 3).unwrap(),
            Permutation::identity()
        );
        assert!(Permutation::from_partition(&a21, 1).is_err());
    }

    #[test]
    fn grassmannian_shape_inverts_construction() {
        let (shape, pos) = p("2,4,1,3").grassmannian_shape().unwrap();
        assert_eq!(shape, Partition::new(vec![2, 1]).unwrap());
        assert_eq!(pos, Some(2));
        assert!(p("3,2,1").grassmannian_shape().is_none());
        let (shape, pos) = p("2,1").grassmannian_shape().unwrap();
        assert_eq!(shape, Partition::new(vec![1]).unwrap());
        assert_eq!(pos, Some(1));
        let (shape, pos) = Permutation::identity().grassmannian_shape().unwrap();
        assert!(shape.is_empty());
        assert_eq!(pos, None);
    }

    #[test]
    fn shape_roundtrip_in_a_4x4_box() {
        // every partition inside (4,4,4,4), every admissible descent p <= 4
        let mut shapes = vec![vec![]];
        fn grow(prefix: Vec<u32>, shapes: &mut Vec<Vec<u32>>) {
            if prefix.len() == 4 {
                return;
            }
            let cap = prefix.last().copied().unwrap_or(4);
            for next in 1..=cap {
                let mut s = prefix.clone();
                s.push(next);
                shapes.push(s.clone());
                grow(s, shapes);
            }
        }
        grow(vec![], &mut shapes);
        assert_eq!(shapes.len(), 70);
        for parts in shapes {
            let alpha = Partition::new(parts).unwrap();
            for pdesc in alpha.num_parts().max(1)..=4 {
                let w = Permutation::from_partition(&alpha, pdesc).unwrap();
                let (shape, pos) = w.grassmannian_shape().unwrap();
                assert_eq!(shape, alpha);
                if !alpha.is_empty() {
                    assert_eq!(pos, Some(pdesc));
                }
            }
        }
    }

    #[test]
    fn conjugate_by_longest() {
        assert_eq!(p("2,1").conjugate_by_longest(2).unwrap(), p("2,1"));
        assert_eq!(p("1,3,2").conjugate_by_longest(3).unwrap(), p("2,1,3"));
        assert_eq!(
            Permutation::identity().conjugate_by_longest(5).unwrap(),
            Permutation::identity()
        );
        assert!(p("2,1,4,3").conjugate_by_longest(3).is_err());
        for w in symmetric_group(4) {
            assert_eq!(w.conjugate_by_longest(4).unwrap().length(), w.length());
        }
    }

    #[test]
    fn inverse_and_compose() {
        for w in symmetric_group(4) {
            assert_eq!(w.length(), w.inverse().length());
            assert_eq!(w.compose(&w.inverse()), Permutation::identity());
        }
        // (3,2,1) ∘ (1,3,2) ∘ (3,2,1) = (2,1,3)
        let w0 = Permutation::longest(3);
        assert_eq!(w0.compose(&p("1,3,2")).compose(&w0), p("2,1,3"));
    }

    #[test]
    fn rank_shift_relation() {
        for w in symmetric_group(3) {
            for m in 0..=3 {
                let sh = w.shift(m);
                assert_eq!(sh.length(), w.length());
                for pq in 1..=5 {
                    for q in 1..=5 {
                        assert_eq!(sh.rank(pq + m, q + m), w.rank(pq, q) + m);
                    }
                }
            }
        }
    }

    #[test]
    fn rank_monotone_and_bounded() {
        for w in symmetric_group(4) {
            for pp in 1..=5 {
                for q in 1..=5 {
                    let r = w.rank(pp, q);
                    assert!(r <= pp.min(q));
                    assert!(w.rank(pp + 1, q) >= r);
                    assert!(w.rank(pp, q + 1) >= r);
                }
            }
        }
    }

    #[test]
    fn parse_diagnostics() {
        assert!(matches!(
            "2,2".parse::<Permutation>(),
            Err(Error::InvalidPermutation(msg)) if msg.contains("value 2")
        ));
        assert!(matches!(
            "1,3".parse::<Permutation>(),
            Err(Error::InvalidPermutation(msg)) if msg.contains("3")
        ));
        assert!("2,1,4,3".parse::<Permutation>().is_ok());
    }

    #[test]
    fn partition_basics() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        let a = Partition::new(vec![3, 1]).unwrap();
        assert_eq!(a.size(), 4);
        assert_eq!(a.num_parts(), 2);
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("3,1".parse::<Partition>().unwrap(), a);
        assert_eq!(a.conjugate(), Partition::new(vec![2, 1, 1]).unwrap());
    }
}
