//! Exact rationals, sparse polynomials, truncated series and the operator L.

pub mod divdiff;
pub mod poly;
pub mod rational;
pub mod series;

use num_traits::{One, Zero};

pub use divdiff::divided_difference_l;
pub use poly::{Monomial, MultiPoly, Ring, Var};
pub use rational::{q, qf, Q};
pub use series::TruncatedSeries;

use crate::error::{Error, Result};

/// `num / Π den_factors` evaluated at `point`, refusing vanishing factors.
pub fn evaluate_quotient(num: &MultiPoly, den_factors: &[MultiPoly], point: &[Q]) -> Result<Q> {
    let mut den = Q::one();
    for f in den_factors {
        let v = f.eval(point);
        if v.is_zero() {
            return Err(Error::Math(format!("denominator factor {f} vanishes at the evaluation point")));
        }
        den *= v;
    }
    Ok(num.eval(point) / den)
}

pub fn evaluate(p: &MultiPoly, point: &[Q]) -> Q {
    p.eval(point)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_rejects_vanishing_factor() {
        let r = Ring::from_names(&["x1", "x2"]);
        let num = MultiPoly::one(&r);
        let d = MultiPoly::parse("x1 - x2", &r).unwrap();
        assert_eq!(evaluate_quotient(&num, std::slice::from_ref(&d), &[q(3), q(2)]).unwrap(), q(1));
        assert!(evaluate_quotient(&num, &[d], &[q(2), q(2)]).is_err());
    }
}
