//! Orthogonality of the I2(n) character table for large `n`, where residue
//! arithmetic modulo the n-th cyclotomic polynomial is too slow.
//!
//! Every relation reduces to the elements
//! `R(a) = sum_k |rho^k class| (z^{ak} + z^{-ak})` and
//! `Q(a) = sum_{j=1}^{J} (z^{ja} + z^{-ja})` of `Z[z]`, `z = zeta_n`. Each is
//! pinned to an exact integer by evaluating it in `F_p`, `p = 1 mod n`, at
//! every primitive n-th root of unity: `p` splits completely, so an element
//! vanishing at all of them lies in `p Z[z]`, and an element whose
//! power-basis coordinates are smaller than `p/2` in absolute value is then
//! zero. The coordinate bound is computed, not assumed.

use num::{Integer, ToPrimitive};

use super::OrthogonalityReport;
use crate::algebra::cyclotomic::cyclotomic_polynomial;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A prime `p = 1 mod n` below `2^61` and a primitive n-th root of unity in `F_p`.
fn field_with_roots(n: u64) -> (u64, u64) {
    let mut k = (1u64 << 61) / n;
    let p = loop {
        let p = k * n + 1;
        if primal_check::miller_rabin(p) {
            break p;
        }
        k -= 1;
    };
    let qs = prime_factors(n);
    for g in 2.. {
        let w = pow_mod(g, (p - 1) / n, p);
        if qs.iter().all(|q| pow_mod(w, n / q, p) != 1) {
            return (p, w);
        }
    }
    unreachable!()
}

/// Largest power-basis coordinate of `z^e`, `0 <= e < n`.
fn reduction_height(n: usize) -> i128 {
    let phi: Vec<i128> = cyclotomic_polynomial(n as u32).iter().map(|c| c.to_i128().unwrap()).collect();
    let d = phi.len() - 1;
    let mut v = vec![0i128; d + 1];
    v[0] = 1;
    let mut height = 1;
    for _ in 1..n {
        v.rotate_right(1);
        let top = v[d];
        if top != 0 {
            for (x, c) in v.iter_mut().zip(&phi) {
                *x -= top * c;
            }
        }
        height = height.max(v.iter().map(|x| x.abs()).max().unwrap());
    }
    height
}

struct Embeddings {
    p: u64,
    powers: Vec<u64>,
    /// `gcd(b, n)` for each exponent `b`; the unit orbits of `Z/n` are its level sets
    orbit: Vec<usize>,
    height: i128,
}

impl Embeddings {
    fn new(n: usize) -> Self {
        let (p, w) = field_with_roots(n as u64);
        let mut powers = Vec::with_capacity(n);
        let mut x = 1;
        for _ in 0..n {
            powers.push(x);
            x = mul_mod(x, w, p);
        }
        let orbit = (0..n).map(|b| b.gcd(&n)).collect();
        Embeddings { p, powers, orbit, height: reduction_height(n) }
    }

    fn centered(&self, x: u64) -> i64 {
        if x > self.p / 2 {
            -((self.p - x) as i64)
        } else {
            x as i64
        }
    }

    /// `f(b)` is the image of `X_a` under `z -> w^u` for `b = u a mod n`, so
    /// `X_a` is rational iff `f` is constant on the unit orbit of `a`. Returns
    /// the integer each `X_a` equals, or the first `a` for which it is not.
    /// `l1` bounds the sum of absolute exponent coefficients of every `X_a`.
    fn pin(&self, f: &[u64], l1: i128) -> std::result::Result<Vec<i64>, usize> {
        let n = f.len();
        let mut first: Vec<Option<u64>> = vec![None; n + 1];
        for b in 0..n {
            let slot = &mut first[self.orbit[b]];
            match slot {
                None => *slot = Some(f[b]),
                Some(v) if *v != f[b] => return Err(b),
                _ => {}
            }
        }
        let values: Vec<i64> = (0..n).map(|b| self.centered(first[self.orbit[b]].unwrap())).collect();
        let largest = values.iter().map(|v| v.unsigned_abs() as i128).max().unwrap_or(0);
        let bound = (l1 + largest) * self.height;
        assert!(bound < (self.p / 2) as i128, "coordinate bound {bound} too large for p = {}", self.p);
        Ok(values)
    }
}

pub(super) fn dihedral_orthogonality(n: usize) -> OrthogonalityReport {
    let emb = Embeddings::new(n);
    let p = emb.p;
    let half = n / 2;
    let j_max = (n - 1) / 2;
    let even = n % 2 == 0;
    let rot_size = |k: usize| if k == 0 || 2 * k == n { 1i64 } else { 2 };
    let w = |e: usize| emb.powers[e % n];
    let add = |a: u64, b: u64| (a + b) % p;

    // r(b) and q(b): the images of R(a) and Q(a) are r(ua) and q(ua)
    let mut r = vec![0u64; n];
    let mut q = vec![0u64; n];
    for b in 0..n {
        // sum over k of z^{bk} + z^{-bk}, k = 1..=j_max, walking the exponent
        let (mut e, mut acc) = (0, 0u64);
        for _ in 1..=j_max {
            e = (e + b) % n;
            acc = add(acc, add(emb.powers[e], emb.powers[(n - e) % n]));
        }
        q[b] = acc;
        // rotation classes: identity once, rho^k and rho^-k for 1 <= k <= j_max, rho^{n/2} once
        let mut total = add(add(acc, acc), 2);
        if even {
            total = add(total, add(w(b * half), w(b * half)));
        }
        r[b] = total;
    }
    let (r_exact, q_exact) = match (emb.pin(&r, 4 * n as i128), emb.pin(&q, 2 * j_max as i128)) {
        (Ok(r), Ok(q)) => (r, q),
        (Err(a), _) => return OrthogonalityReport { rows: 0, classes: 0, failures: vec![format!("R({a}) is not rational")] },
        (_, Err(a)) => return OrthogonalityReport { rows: 0, classes: 0, failures: vec![format!("Q({a}) is not rational")] },
    };
    let mut failures = Vec::new();
    let order = 2 * n as i64;
    let signed = |k: usize| if k % 2 == 0 { 1i64 } else { -1 };

    // one-dimensional rows: name, values on rho^k, values on the reflection
    // classes by parity, and the exponent shift turning (-1)^k into z^{(n/2)k}
    let rot_sign: Vec<i64> = (0..=half).map(signed).collect();
    let mut one_dim: Vec<(&str, Vec<i64>, [i64; 2], usize)> =
        vec![("triv", vec![1; half + 1], [1, 1], 0), ("sign", vec![1; half + 1], [-1, -1], 0)];
    if even {
        one_dim.push(("det+", rot_sign.clone(), [1, -1], half));
        one_dim.push(("det-", rot_sign, [-1, 1], half));
    }
    let reflections: Vec<(usize, i64)> = if even { vec![(0, half as i64), (1, half as i64)] } else { vec![(0, n as i64)] };
    let rows = one_dim.len() + j_max;
    let classes = half + 1 + reflections.len();

    for (i, (ni, rot_i, refl_i, _)) in one_dim.iter().enumerate() {
        for (nj, rot_j, refl_j, _) in &one_dim[i..] {
            let s: i64 = (0..=half).map(|k| rot_size(k) * rot_i[k] * rot_j[k]).sum::<i64>()
                + reflections.iter().map(|&(par, sz)| sz * refl_i[par] * refl_j[par]).sum::<i64>();
            let expected = if ni == nj { order } else { 0 };
            if s != expected {
                failures.push(format!("row {ni} x {nj}: got {s}, expected {expected}"));
            }
        }
        // sum_k |c_k| eps(k) (z^{jk} + z^{-jk}) = R(j + shift), eps = (-1)^k for det+-
        for j in 1..=j_max {
            let shift = one_dim[i].3;
            let s = r_exact[(j + shift) % n];
            if s != 0 {
                failures.push(format!("row {ni} x W{j}: got {s}, expected 0"));
            }
        }
    }
    for i in 1..=j_max {
        for j in i..=j_max {
            let s = r_exact[j - i] + r_exact[(i + j) % n];
            let expected = if i == j { order } else { 0 };
            if s != expected {
                failures.push(format!("row W{i} x W{j}: got {s}, expected {expected}"));
            }
        }
    }

    for k in 0..=half {
        for k2 in k..=half {
            let base: i64 = one_dim.iter().map(|(_, rot, _, _)| rot[k] * rot[k2]).sum();
            let s = base + q_exact[k2 - k] + q_exact[(k + k2) % n];
            let expected = if k == k2 { order / rot_size(k) } else { 0 };
            if s != expected {
                failures.push(format!("column rho^{k} x rho^{k2}: got {s}, expected {expected}"));
            }
        }
        for &(par, _) in &reflections {
            let s: i64 = one_dim.iter().map(|(_, rot, refl, _)| rot[k] * refl[par]).sum();
            if s != 0 {
                failures.push(format!("column rho^{k} x sigma rho^{par}: got {s}, expected 0"));
            }
        }
    }
    for (a, &(pa, sa)) in reflections.iter().enumerate() {
        for &(pb, _) in &reflections[a..] {
            let s: i64 = one_dim.iter().map(|(_, _, refl, _)| refl[pa] * refl[pb]).sum();
            let expected = if pa == pb { order / sa } else { 0 };
            if s != expected {
                failures.push(format!("column sigma rho^{pa} x sigma rho^{pb}: got {s}, expected {expected}"));
            }
        }
    }
    OrthogonalityReport { rows, classes, failures }
}
