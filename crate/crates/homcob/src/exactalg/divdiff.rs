//! The antisymmetrizer over S_n divided by the Vandermonde determinant.

use num_traits::{One, Zero};

use super::poly::{Monomial, MultiPoly, Ring};
use super::rational::Q;
use crate::error::Result;

/// All permutations of `0..n` with their signs, in lexicographic order.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push((cur.clone(), perm_sign(&cur)));
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

pub fn perm_sign(p: &[usize]) -> i32 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 { 1 } else { -1 }
}

/// Applies `σ` to the variables `vars`: `vars[i] ↦ vars[σ(i)]`.
pub fn permute_vars(p: &MultiPoly, vars: &[usize], sigma: &[usize]) -> MultiPoly {
    MultiPoly::from_terms(
        p.ring(),
        p.terms().map(|(e, c)| {
            let mut e2: Monomial = e.clone();
            for (i, &v) in vars.iter().enumerate() {
                e2[vars[sigma[i]]] = e[v];
            }
            (e2, c.clone())
        }),
    )
}

/// `Δ_n = Π_{i<j} (x_i − x_j)` factors over `vars`.
pub fn vandermonde_factors(ring: &Ring, vars: &[usize]) -> Vec<MultiPoly> {
    let mut out = Vec::new();
    for i in 0..vars.len() {
        for j in i + 1..vars.len() {
            let mut f = MultiPoly::var(ring, vars[i]);
            f.add_scaled(&MultiPoly::var(ring, vars[j]), &-Q::one());
            out.push(f);
        }
    }
    out
}

/// `L` on a polynomial of degree `deg Δ_n`: only permutations of the staircase survive.
fn l_on_staircase(p: &MultiPoly, vars: &[usize]) -> Q {
    let n = vars.len();
    let mut acc = Q::zero();
    for (e, c) in p.terms() {
        let xi: Vec<usize> = vars.iter().map(|&v| e[v] as usize).collect();
        let mut seen = vec![false; n];
        if xi.iter().any(|&k| k >= n || std::mem::replace(&mut seen[k], true)) {
            continue;
        }
        // ξ = σ(δ) with δ = (n−1, …, 0)
        let sigma: Vec<usize> = xi.iter().map(|&k| n - 1 - k).collect();
        acc += c * Q::from_integer(perm_sign(&sigma).into());
    }
    acc
}

pub fn antisymmetrize(p: &MultiPoly, vars: &[usize]) -> MultiPoly {
    let mut acc = MultiPoly::zero(p.ring());
    for (sigma, s) in permutations(vars.len()) {
        acc.add_scaled(&permute_vars(p, vars, &sigma), &Q::from_integer(s.into()));
    }
    acc
}

/// `L(p) = (Σ_σ sign(σ)·σ(p)) / Δ_n`.
pub fn divided_difference_l(p: &MultiPoly, vars: &[usize]) -> Result<MultiPoly> {
    let n = vars.len() as u32;
    let top = n * n.saturating_sub(1) / 2;
    if p.terms().all(|(e, _)| vars.iter().map(|&v| e[v]).sum::<u32>() == top) && p.only_in(vars) {
        return Ok(MultiPoly::constant(p.ring(), l_on_staircase(p, vars)));
    }
    let mut num = antisymmetrize(p, vars);
    for f in vandermonde_factors(p.ring(), vars) {
        if num.is_zero() {
            break;
        }
        num = num.exact_divide(&f)?;
    }
    Ok(num)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: usize) -> Ring {
        Ring::from_names(&Ring::block("x", n))
    }

    #[test]
    fn staircase_gives_one() {
        let r = ring(3);
        let p = MultiPoly::parse("x1^2*x2", &r).unwrap();
        assert_eq!(divided_difference_l(&p, &[0, 1, 2]).unwrap().to_text(), "1");
    }

    #[test]
    fn small_cases() {
        let r = ring(2);
        let p = MultiPoly::parse("x1^2", &r).unwrap();
        assert_eq!(divided_difference_l(&p, &[0, 1]).unwrap().to_text(), "x1 + x2");
        let r = ring(3);
        let p = MultiPoly::parse("x1^2*x2^2", &r).unwrap();
        assert!(divided_difference_l(&p, &[0, 1, 2]).unwrap().is_zero());
    }

    #[test]
    fn staircase_fast_path_matches_division() {
        let r = ring(3);
        let p = MultiPoly::parse("3*x1^2*x2 - 5*x2^2*x3 + 7*x1*x3^2 + 2*x1^3 - x1*x2*x3", &r).unwrap();
        let slow = antisymmetrize(&p, &[0, 1, 2]);
        let mut q = slow;
        for f in vandermonde_factors(&r, &[0, 1, 2]) {
            q = q.exact_divide(&f).unwrap();
        }
        assert_eq!(divided_difference_l(&p, &[0, 1, 2]).unwrap(), q);
    }

    #[test]
    fn permutation_count_and_signs() {
        let ps = permutations(4);
        assert_eq!(ps.len(), 24);
        assert_eq!(ps.iter().map(|(_, s)| s).sum::<i32>(), 0);
    }
}
