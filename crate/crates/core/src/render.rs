//! Human-readable element rendering.
//!
//! Elements of contexts with L dividing 12 are shown in the basis 1, √2, √3, √2√3
//! (e.g. `2+√2√3`); all other contexts fall back to the λ-power form.

use crate::field::{FieldContext, FieldElement};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Doubled coordinates of λ_12^k, k = 0..3, in the basis 1, √2, √3, √6.
const LAMBDA12_POWERS_X2: [[i64; 4]; 4] = [[2, 0, 0, 0], [0, 1, 0, 1], [4, 0, 2, 0], [0, 5, 0, 3]];

/// Coordinates in the basis 1, √2, √3, √6 as doubled integers, when L divides 12.
pub fn surd_coordinates_x2(x: &FieldElement) -> Option<[BigInt; 4]> {
    if 12 % x.l() != 0 {
        return None;
    }
    let c12 = FieldContext::new(12).ok()?;
    let y = x.lift_to(&c12).ok()?;
    let mut out: [BigInt; 4] = Default::default();
    for (k, c) in y.coeffs().iter().enumerate() {
        for (slot, v) in out.iter_mut().zip(LAMBDA12_POWERS_X2[k]) {
            *slot += c * v;
        }
    }
    Some(out)
}

fn join_terms(terms: &[(BigInt, &str)]) -> String {
    let mut out = String::new();
    for (c, unit) in terms {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let mag = c.abs();
        if unit.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push_str(unit);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Compact rendering: surd form when available, λ-power form otherwise.
pub fn render(x: &FieldElement, ascii: bool) -> String {
    let Some(c) = surd_coordinates_x2(x) else {
        return x.render_lambda(ascii);
    };
    let units: [&str; 4] = if ascii {
        ["", "r2", "r3", "r2r3"]
    } else {
        ["", "√2", "√3", "√2√3"]
    };
    let two = BigInt::from(2);
    if c.iter().all(|v| (v % &two).is_zero()) {
        let terms: Vec<(BigInt, &str)> = c.iter().zip(units).map(|(v, u)| (v / &two, u)).collect();
        join_terms(&terms)
    } else {
        let terms: Vec<(BigInt, &str)> = c.iter().cloned().zip(units).collect();
        format!("({})/2", join_terms(&terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::embed_lambda;

    #[test]
    fn surd_forms() {
        let c12 = FieldContext::new(12).unwrap();
        let r2 = embed_lambda(4, &c12).unwrap();
        let r3 = embed_lambda(6, &c12).unwrap();
        let one = FieldElement::one(&c12);
        assert_eq!(render(&r2, false), "√2");
        assert_eq!(render(&(&one + &r2), false), "1+√2");
        assert_eq!(render(&(&FieldElement::from_int(&c12, 2) + &(&r2 * &r3)), false), "2+√2√3");
        assert_eq!(render(&(&r2.scale_i64(2) + &r3), true), "2r2+r3");
        assert_eq!(render(&FieldElement::lambda(&c12), false), "(√2+√2√3)/2");
        let c4 = FieldContext::new(4).unwrap();
        assert_eq!(render(&FieldElement::from_i64_coeffs(&c4, &[0, 12]), false), "12√2");
        assert_eq!(render(&FieldElement::from_i64_coeffs(&c4, &[1, -1]), false), "1-√2");
        let c3 = FieldContext::new(3).unwrap();
        assert_eq!(render(&FieldElement::from_int(&c3, 239), false), "239");
        let c5 = FieldContext::new(5).unwrap();
        assert_eq!(render(&FieldElement::lambda(&c5), false), "λ");
    }
}
