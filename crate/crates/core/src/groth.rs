//! Double Grothendieck polynomials via isobaric divided differences, stable
//! Grothendieck polynomials via shift stabilization, and the Cauchy-identity
//! verifier.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::hecke::{self, RunDir, RunSpec};
use crate::perm::{Partition, Permutation};
use crate::poly::{Monomial, SparsePoly, Var};

/// Session-scoped memo for Grothendieck polynomials.  Not shared between
/// threads; parallel drivers build one per task.
#[derive(Default)]
pub struct Cache {
    double: HashMap<(Permutation, usize), SparsePoly>,
    stable: HashMap<(Permutation, usize, usize, usize), SparsePoly>,
}

impl Cache {
    pub fn new() -> Self {
        Cache::default()
    }

    /// 𝔊_w(X;Y) for w ∈ S_n, in the variables x_1..x_{n-1}, y_1..y_{n-1}.
    ///
    /// Base case: the longest element has the closed product form
    /// ∏_{i+j≤n} (x_i + y_j − x_i y_j).  Otherwise ascend to the longest
    /// element along the chain that always adds the smallest ascent, and
    /// apply π_i at each step coming back down; the result is independent of
    /// the chain.
    pub fn double_grothendieck(&mut self, w: &Permutation, n: usize) -> Result<SparsePoly> {
        if n == 0 || !w.in_sn(n) {
            return Err(Error::NotInSn {
                word: w.to_string(),
                n,
            });
        }
        Ok(self.double_rec(w, n))
    }

    fn double_rec(&mut self, w: &Permutation, n: usize) -> SparsePoly {
        if let Some(hit) = self.double.get(&(w.clone(), n)) {
            return hit.clone();
        }
        let value = if *w == Permutation::longest(n) {
            longest_product(n)
        } else {
            let i = (1..n)
                .find(|&i| w.apply(i) < w.apply(i + 1))
                .expect("every non-longest element of S_n has an ascent");
            let up = self.double_rec(&w.right_simple(i), n);
            up.isobaric_pi(i)
        };
        self.double
            .insert((w.clone(), n), value.clone());
        value
    }

    /// G_w(x_1..x_kx; y_1..y_ky) truncated to total degree ≤ d.
    ///
    /// Coefficients of 𝔊_{1^m×w} in a fixed window of variables stabilize as
    /// m grows; the returned value is the first point at which two
    /// consecutive shifts agree, starting from m = d.  A hard cap guards the
    /// loop and turns a non-settling run into a diagnostic error.
    pub fn stable_grothendieck(
        &mut self,
        w: &Permutation,
        kx: usize,
        ky: usize,
        d: usize,
    ) -> Result<SparsePoly> {
        let key = (w.clone(), kx, ky, d);
        if let Some(hit) = self.stable.get(&key) {
            return Ok(hit.clone());
        }
        let cap = d + 2 * w.support_size() + 4;
        let mut m = d;
        let mut prev = shifted_truncation(w, m, kx, ky, d);
        loop {
            let next = shifted_truncation(w, m + 1, kx, ky, d);
            if next == prev {
                self.stable.insert(key, next.clone());
                return Ok(next);
            }
            prev = next;
            m += 1;
            if m > cap {
                return Err(Error::StabilizationCap {
                    word: w.to_string(),
                    cap,
                });
            }
        }
    }

    /// G_α = G_{w_α}, evaluated through the Grassmannian permutation with
    /// descent at ℓ(α); the choice of descent does not matter.
    pub fn stable_for_partition(
        &mut self,
        alpha: &Partition,
        kx: usize,
        ky: usize,
        d: usize,
    ) -> Result<SparsePoly> {
        let p = alpha.num_parts().max(1);
        let w = Permutation::from_partition(alpha, p)?;
        self.stable_grothendieck(&w, kx, ky, d)
    }
}

/// ∏_{i+j≤n} (x_i + y_j − x_i y_j), the polynomial of the longest element.
fn longest_product(n: usize) -> SparsePoly {
    let mut out = SparsePoly::constant(1, n.saturating_sub(1), n.saturating_sub(1));
    for i in 1..n {
        for j in 1..=(n - i) {
            let xi = SparsePoly::var(Var::X(i));
            let yj = SparsePoly::var(Var::Y(j));
            let factor = xi.add(&yj).sub(&xi.mul(&yj));
            out = out.mul(&factor);
        }
    }
    out
}

/// The truncation of 𝔊_{1^m×w}(x_1..x_kx, 0, ..; y_1..y_ky, 0, ..) to total
/// degree ≤ d, computed exactly by counting structured Hecke words: the
/// coefficient of x^u y^v is (−1)^{|u|+|v|−ℓ(w)} times the number of Hecke
/// words for 1^m×w built from increasing runs of lengths v_ky..v_1 (the run
/// for y_j bounded below by j) followed by decreasing runs of lengths
/// u_1..u_kx (the run for x_i bounded below by i).
pub(crate) fn shifted_truncation(
    w: &Permutation,
    m: usize,
    kx: usize,
    ky: usize,
    d: usize,
) -> SparsePoly {
    let sigma = w.shift(m);
    let ambient = sigma.support_size().max(kx + 1).max(ky + 1).max(2);
    let mut runs = Vec::with_capacity(kx + ky);
    for j in (1..=ky).rev() {
        runs.push(RunSpec {
            dir: RunDir::Increasing,
            min_letter: j,
            len: None,
        });
    }
    for i in 1..=kx {
        runs.push(RunSpec {
            dir: RunDir::Decreasing,
            min_letter: i,
            len: None,
        });
    }
    let table = hecke::count_run_words(&sigma, ambient - 1, &runs, d);

    let base_len = w.length();
    let mut out = SparsePoly::zero(kx, ky);
    for (lengths, count) in table {
        let r: usize = lengths.iter().sum();
        debug_assert!(r >= base_len || count == 0);
        let mut ys = vec![0u16; ky];
        for (slot, &len) in lengths[..ky].iter().enumerate() {
            ys[ky - 1 - slot] = len as u16;
        }
        let xs: Vec<u16> = lengths[ky..].iter().map(|&l| l as u16).collect();
        let mut c = BigInt::from(count);
        if (r - base_len) % 2 == 1 {
            c = -c;
        }
        out.add_term(Monomial::from_exponents(xs, ys), c);
    }
    out
}

/// Checks the Cauchy identity
/// 𝔊_w(X;Y) = Σ_{u·v=w} (−1)^{ℓ(u)+ℓ(v)−ℓ(w)} 𝔊_u(0;Y) 𝔊_v(X;0)
/// over S_n and returns the equality flag together with LHS − RHS.
pub fn verify_cauchy(w: &Permutation, n: usize) -> Result<(bool, SparsePoly)> {
    let mut cache = Cache::new();
    let lhs = cache.double_grothendieck(w, n)?;
    let mut rhs = SparsePoly::zero(lhs.nx(), lhs.ny());
    for (u, v) in hecke::enumerate_pairs(w, n)? {
        let gu = cache.double_grothendieck(&u, n)?.kill_x_above(0);
        let gv = cache.double_grothendieck(&v, n)?.kill_y_above(0);
        let mut term = gu.mul(&gv);
        if (u.length() + v.length() - w.length()) % 2 == 1 {
            term = term.neg();
        }
        rhs = rhs.add(&term);
    }
    let residual = lhs.sub(&rhs);
    Ok((residual.is_zero(), residual))
}

pub fn double_grothendieck(w: &Permutation, n: usize) -> Result<SparsePoly> {
    Cache::new().double_grothendieck(w, n)
}

pub fn stable_grothendieck(w: &Permutation, kx: usize, ky: usize, d: usize) -> Result<SparsePoly> {
    Cache::new().stable_grothendieck(w, kx, ky, d)
}

pub fn stable_for_partition(alpha: &Partition, kx: usize, ky: usize, d: usize) -> Result<SparsePoly> {
    Cache::new().stable_for_partition(alpha, kx, ky, d)
}
