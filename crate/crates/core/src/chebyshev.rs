//! The families V_n (V_{-1} = 0, V_0 = 1, V_{n+1} = x V_n - V_{n-1}) and
//! C_k (C_0 = 2, C_1 = x, C_{k+1} = x C_k - C_{k-1}).

use crate::error::{invalid, Result};
use crate::field::{FieldContext, FieldElement};
use crate::poly::IntPoly;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VPolynomial {
    pub n: i64,
    pub poly: IntPoly,
}

pub fn v_polynomial(n: i64) -> Result<VPolynomial> {
    if n < -1 {
        return invalid(format!("V_n needs n ≥ -1, got {n}"));
    }
    let mut prev = IntPoly::zero();
    let mut cur = IntPoly::constant(1);
    if n == -1 {
        return Ok(VPolynomial { n, poly: prev });
    }
    for _ in 0..n {
        let next = cur.shift().sub(&prev);
        prev = cur;
        cur = next;
    }
    Ok(VPolynomial { n, poly: cur })
}

/// V_n(x) by running the recurrence on field elements.
pub fn v_eval(n: i64, x: &FieldElement) -> Result<FieldElement> {
    if n < -1 {
        return invalid(format!("V_n needs n ≥ -1, got {n}"));
    }
    Ok(v_table(n.max(0) as usize, x).swap_remove((n + 1) as usize))
}

/// [V_{-1}(x), V_0(x), ..., V_n(x)].
pub fn v_table(n: usize, x: &FieldElement) -> Vec<FieldElement> {
    let ctx = x.ctx();
    let mut out = Vec::with_capacity(n + 2);
    out.push(FieldElement::zero(ctx));
    out.push(FieldElement::one(ctx));
    for k in 1..=n {
        let next = &(x * &out[k]) - &out[k - 1];
        out.push(next);
    }
    out
}

/// V_j(λ_q) for j = -1..=q-2, all in `ctx` (q must divide ctx.L).
pub fn v_values_at_lambda(q: u32, ctx: &Arc<FieldContext>) -> Result<Vec<FieldElement>> {
    let lam = crate::field::embed_lambda(q, ctx)?;
    Ok(v_table(q.saturating_sub(2) as usize, &lam))
}

pub fn c_polynomial(k: u32) -> IntPoly {
    let mut prev = IntPoly::constant(2);
    if k == 0 {
        return prev;
    }
    let mut cur = IntPoly::x();
    for _ in 1..k {
        let next = cur.shift().sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Checked variant taking a signed index.
pub fn c_polynomial_checked(k: i64) -> Result<IntPoly> {
    if k < 0 {
        return invalid(format!("C_k needs k ≥ 0, got {k}"));
    }
    Ok(c_polynomial(k as u32))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v_examples() {
        assert_eq!(v_polynomial(3).unwrap().poly, IntPoly::from_i64(&[0, -2, 0, 1]));
        assert_eq!(v_polynomial(4).unwrap().poly, IntPoly::from_i64(&[1, 0, -3, 0, 1]));
        assert_eq!(v_polynomial(0).unwrap().poly, IntPoly::constant(1));
        assert!(v_polynomial(-1).unwrap().poly.is_zero());
        assert!(v_polynomial(-2).is_err());
    }

    #[test]
    fn c_examples() {
        assert_eq!(c_polynomial(0), IntPoly::constant(2));
        assert_eq!(c_polynomial(2), IntPoly::from_i64(&[-2, 0, 1]));
        assert_eq!(c_polynomial(3), IntPoly::from_i64(&[0, -3, 0, 1]));
        assert!(c_polynomial_checked(-1).is_err());
    }

    #[test]
    fn c_rewrites_power_sums() {
        // z^k + z^-k at z = e^{iθ} equals 2cos(kθ) = C_k(2cos θ)
        for k in 0..12u32 {
            for t in [0.1f64, 0.7, 1.3, 2.9] {
                let v = c_polynomial(k).eval_f64(2.0 * t.cos());
                assert!((v - 2.0 * (k as f64 * t).cos()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn seven_above_two_root_two() {
        let c4 = FieldContext::new(4).unwrap();
        let x = FieldElement::from_i64_coeffs(&c4, &[0, 2]);
        assert_eq!(v_eval(2, &x).unwrap(), FieldElement::from_int(&c4, 7));
    }
}
