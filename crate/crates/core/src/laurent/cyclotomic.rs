//! Cyclotomic polynomials and cyclotomic trial division.

use std::collections::{BTreeSet, HashMap};

use super::{CanonicalPoly, LaurentPoly};

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The `n`-th cyclotomic polynomial, from `t^n - 1 = prod_{d | n} Phi_d`.
pub fn cyclotomic(n: u64) -> CanonicalPoly {
    assert!(n > 0, "cyclotomic polynomials are indexed from 1");
    let mut memo = HashMap::new();
    CanonicalPoly(cyclotomic_memo(n, &mut memo))
}

fn cyclotomic_memo(n: u64, memo: &mut HashMap<u64, LaurentPoly>) -> LaurentPoly {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut p = LaurentPoly::t_pow_minus_one(n as i64);
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_memo(d, memo);
        p = p
            .exact_div(&phi_d)
            .expect("Phi_d divides t^n - 1 for d | n");
    }
    memo.insert(n, p.clone());
    p
}

/// All `d >= 1` with `Phi_d | p`.
///
/// Since `phi(d) >= sqrt(d / 2)`, any such `d` satisfies `d <= 2 deg(p)^2`.
pub fn cyclotomic_divisors(p: &CanonicalPoly) -> BTreeSet<u64> {
    let mut found = BTreeSet::new();
    let deg = match p.degree() {
        Some(d) if d > 0 => d as u64,
        _ => return found,
    };
    let mut memo = HashMap::new();
    for d in 1..=(2 * deg * deg).max(2) {
        if euler_phi(d) > deg {
            continue;
        }
        let phi = cyclotomic_memo(d, &mut memo);
        if phi.divides(p.as_poly()) {
            found.insert(d);
        }
    }
    found
}
