//! Exact arithmetic in Z[λ_L], λ_L = 2cos(π/L), with certified signs.

use crate::chebyshev::c_polynomial;
use crate::error::{invalid, Error, Result};
use crate::poly::{bigint_to_f64, IntPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

/// Minimal polynomial of 2cos(π/L) over Q.
pub fn minimal_polynomial(l: u32) -> Result<IntPoly> {
    if l < 2 {
        return invalid(format!("L must be at least 2, got {l}"));
    }
    let phi = cyclotomic(2 * l as u64);
    let half = phi.degree().unwrap_or(0) / 2;
    // Φ(z)/z^half = a_half + Σ_{k≥1} a_{half+k} (z^k + z^-k)
    let mut out = IntPoly::new(vec![phi.coeff(half)]);
    for k in 1..=half {
        let c = phi.coeff(half + k);
        if !c.is_zero() {
            out = out.add(&c_polynomial(k as u32).scale(&c));
        }
    }
    Ok(out)
}

fn cyclotomic(n: u64) -> IntPoly {
    static CACHE: OnceLock<Mutex<HashMap<u64, IntPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut coeffs = vec![BigInt::zero(); n as usize + 1];
    coeffs[0] = BigInt::from(-1);
    coeffs[n as usize] = BigInt::one();
    let mut p = IntPoly::new(coeffs);
    for d in 1..n {
        if n % d == 0 {
            p = p
                .div_exact_monic(&cyclotomic(d))
                .expect("cyclotomic factors divide x^n - 1");
        }
    }
    cache.lock().unwrap().insert(n, p.clone());
    p
}

fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            while n % f == 0 {
                n /= f;
            }
            result -= result / f;
        }
        f += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Dyadic isolating interval (lo/2^s, (lo+1)/2^s) around λ_L.
#[derive(Debug, Clone)]
struct Enclosure {
    lo: BigInt,
    s: u32,
    /// Sign of the minimal polynomial at the lower endpoint.
    sign_lo: i8,
}

/// Ambient ring data for a fixed L.
pub struct FieldContext {
    l: u32,
    minpoly: IntPoly,
    lambda: f64,
    enclosure: RwLock<Option<Enclosure>>,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldContext(L={})", self.l)
    }
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.l == other.l
    }
}

impl Eq for FieldContext {}

impl FieldContext {
    /// Shared context for `l`; contexts are interned so equal `L` means the same object.
    pub fn new(l: u32) -> Result<Arc<FieldContext>> {
        static CONTEXTS: OnceLock<Mutex<HashMap<u32, Arc<FieldContext>>>> = OnceLock::new();
        if l < 2 {
            return invalid(format!("L must be at least 2, got {l}"));
        }
        let map = CONTEXTS.get_or_init(Default::default);
        if let Some(c) = map.lock().unwrap().get(&l) {
            return Ok(c.clone());
        }
        let minpoly = minimal_polynomial(l)?;
        debug_assert_eq!(minpoly.degree(), Some(totient(2 * l as u64) as usize / 2));
        let ctx = Arc::new(FieldContext {
            l,
            minpoly,
            lambda: 2.0 * (std::f64::consts::PI / l as f64).cos(),
            enclosure: RwLock::new(None),
        });
        Ok(map.lock().unwrap().entry(l).or_insert(ctx).clone())
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap_or(0)
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.minpoly
    }

    /// Floating approximation of λ_L.
    pub fn lambda_f64(&self) -> f64 {
        self.lambda
    }

    /// Current isolating interval as (numerator, exponent): λ ∈ (lo/2^s, (lo+1)/2^s).
    pub fn enclosure(&self) -> (BigInt, u32) {
        let e = self.enclosure_at_least(0);
        (e.lo, e.s)
    }

    /// Refine the memoized enclosure until its exponent is at least `s`.
    pub fn refine_to(&self, s: u32) -> (BigInt, u32) {
        let e = self.enclosure_at_least(s);
        (e.lo, e.s)
    }

    fn enclosure_at_least(&self, s: u32) -> Enclosure {
        if let Some(e) = self.enclosure.read().unwrap().as_ref() {
            if e.s >= s {
                return e.clone();
            }
        }
        let mut guard = self.enclosure.write().unwrap();
        let mut e = match guard.take() {
            Some(e) => e,
            None => self.initial_enclosure(),
        };
        while e.s < s {
            self.bisect(&mut e);
        }
        *guard = Some(e.clone());
        e
    }

    /// Sign of minpoly at num/2^s.
    fn minpoly_sign_at(&self, num: &BigInt, s: u32) -> i8 {
        let d = self.degree();
        let mut acc = BigInt::zero();
        let mut pow = BigInt::one();
        for k in 0..=d {
            let c = self.minpoly.coeff(k);
            if !c.is_zero() {
                acc += (c * &pow) << (s as usize * (d - k));
            }
            pow *= num;
        }
        sign_of(&acc)
    }

    fn initial_enclosure(&self) -> Enclosure {
        let d = self.degree();
        if d <= 1 {
            // λ is the integer root r of x - r; (r, r+1) with s = 0 is only used for display.
            let r = -self.minpoly.coeff(0);
            return Enclosure { lo: r, s: 0, sign_lo: 0 };
        }
        // Separation from the next root 2cos(kπ/L), k > 1 coprime to 2L.
        let l = self.l as u64;
        let second = (2..l)
            .filter(|k| (2 * l).gcd(k) == 1)
            .map(|k| 2.0 * (std::f64::consts::PI * k as f64 / l as f64).cos())
            .fold(f64::NEG_INFINITY, f64::max);
        let gap = self.lambda - second;
        let mut s = 40u32;
        while 64.0 * (2.0f64).powi(-(s as i32)) > gap / 4.0 {
            s += 4;
        }
        let scaled = self.lambda * (2.0f64).powi(s as i32);
        let centre = BigInt::from(scaled.floor() as i128);
        let mut lo = &centre - 8;
        let mut hi = &centre + 8;
        let sign_lo = self.minpoly_sign_at(&lo, s);
        let sign_hi = self.minpoly_sign_at(&hi, s);
        assert!(
            sign_lo != 0 && sign_hi != 0 && sign_lo != sign_hi,
            "initial enclosure for L={} does not bracket a root",
            self.l
        );
        while &hi - &lo > BigInt::one() {
            let mid: BigInt = (&lo + &hi) >> 1;
            let sm = self.minpoly_sign_at(&mid, s);
            assert!(sm != 0, "λ_L is irrational for degree ≥ 2");
            if sm == sign_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Enclosure { lo, s, sign_lo }
    }

    fn bisect(&self, e: &mut Enclosure) {
        if self.degree() <= 1 {
            e.s += 1;
            e.lo = &e.lo << 1usize;
            return;
        }
        let s = e.s + 1;
        let lo = &e.lo << 1usize;
        let mid = &lo + 1;
        let sm = self.minpoly_sign_at(&mid, s);
        assert!(sm != 0, "λ_L is irrational for degree ≥ 2");
        e.lo = if sm == e.sign_lo { mid } else { lo };
        e.s = s;
    }
}

fn sign_of(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Result of a certified sign computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// An element Σ coeffs[k]·λ_L^k of Z[λ_L], reduced modulo the minimal polynomial.
#[derive(Clone)]
pub struct FieldElement {
    ctx: Arc<FieldContext>,
    coeffs: Vec<BigInt>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.l == other.ctx.l && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ctx.l.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[L={}] {}", self.ctx.l, self)
    }
}

impl FieldElement {
    /// Build from arbitrary-length coefficients, reducing modulo the minimal polynomial.
    pub fn from_coeffs(ctx: &Arc<FieldContext>, coeffs: Vec<BigInt>) -> FieldElement {
        let mut e = FieldElement { ctx: ctx.clone(), coeffs };
        e.reduce();
        e
    }

    pub fn from_i64_coeffs(ctx: &Arc<FieldContext>, coeffs: &[i64]) -> FieldElement {
        Self::from_coeffs(ctx, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(ctx: &Arc<FieldContext>) -> FieldElement {
        FieldElement {
            ctx: ctx.clone(),
            coeffs: vec![BigInt::zero(); ctx.degree()],
        }
    }

    pub fn one(ctx: &Arc<FieldContext>) -> FieldElement {
        Self::from_int(ctx, 1)
    }

    pub fn from_int(ctx: &Arc<FieldContext>, n: impl Into<BigInt>) -> FieldElement {
        let mut e = Self::zero(ctx);
        e.coeffs[0] = n.into();
        e
    }

    /// The generator λ_L of the context (reduced, so λ_2 = 0 and λ_3 = 1).
    pub fn lambda(ctx: &Arc<FieldContext>) -> FieldElement {
        Self::from_i64_coeffs(ctx, &[0, 1])
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn l(&self) -> u32 {
        self.ctx.l
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The integer value if the element is a rational integer.
    pub fn as_rational_integer(&self) -> Option<BigInt> {
        self.coeffs[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| self.coeffs[0].clone())
    }

    fn reduce(&mut self) {
        let d = self.ctx.degree();
        let m = self.ctx.minpoly.coeffs();
        while self.coeffs.len() > d {
            let top = self.coeffs.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let base = self.coeffs.len() - d;
            for (j, mj) in m.iter().take(d).enumerate() {
                if !mj.is_zero() {
                    self.coeffs[base + j] -= &top * mj;
                }
            }
        }
        self.coeffs.resize(d, BigInt::zero());
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.ctx.l == other.ctx.l {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                left: self.ctx.l,
                right: other.ctx.l,
            })
        }
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(FieldElement {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(FieldElement {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        let d = self.ctx.degree();
        if d == 1 {
            return Ok(FieldElement {
                ctx: self.ctx.clone(),
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            });
        }
        let mut out = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(Self::from_coeffs(&self.ctx, out))
    }

    pub fn scale(&self, k: &BigInt) -> FieldElement {
        FieldElement {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn scale_i64(&self, k: i64) -> FieldElement {
        self.scale(&BigInt::from(k))
    }

    pub fn pow(&self, mut e: u32) -> FieldElement {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Floating value at λ_L (not certified).
    pub fn to_f64(&self) -> f64 {
        let x = self.ctx.lambda;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + bigint_to_f64(c))
    }

    /// Certified sign via interval evaluation on the isolating enclosure.
    pub fn sign(&self) -> Sign {
        let last_nonzero = self.coeffs.iter().rposition(|c| !c.is_zero());
        let Some(top) = last_nonzero else {
            return Sign::Zero;
        };
        if top == 0 {
            return match sign_of(&self.coeffs[0]) {
                1 => Sign::Positive,
                -1 => Sign::Negative,
                _ => Sign::Zero,
            };
        }
        // Degree ≥ 2 contexts have λ_L ≥ √2 > 0, so monomials are monotone in λ.
        let mut target = 0u32;
        loop {
            let e = self.ctx.enclosure_at_least(target);
            let lo = &e.lo;
            let hi = &e.lo + 1;
            let mut lower = BigInt::zero();
            let mut upper = BigInt::zero();
            let mut plo = BigInt::one();
            let mut phi = BigInt::one();
            for k in 0..=top {
                let c = &self.coeffs[k];
                if !c.is_zero() {
                    let sh = e.s as usize * (top - k);
                    let a = (c * &plo) << sh;
                    let b = (c * &phi) << sh;
                    if c.is_positive() {
                        lower += a;
                        upper += b;
                    } else {
                        lower += b;
                        upper += a;
                    }
                }
                plo *= lo;
                phi *= &hi;
            }
            if lower.is_positive() {
                return Sign::Positive;
            }
            if upper.is_negative() {
                return Sign::Negative;
            }
            target = (e.s * 2).max(e.s + 8);
        }
    }

    /// Sign of `self - other`.
    pub fn cmp_exact(&self, other: &FieldElement) -> Result<std::cmp::Ordering> {
        Ok(match self.checked_sub(other)?.sign() {
            Sign::Negative => std::cmp::Ordering::Less,
            Sign::Zero => std::cmp::Ordering::Equal,
            Sign::Positive => std::cmp::Ordering::Greater,
        })
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Sign::Positive
    }

    /// Image under Z[λ_L] → Z[λ_M] for L | M.
    pub fn lift_to(&self, target: &Arc<FieldContext>) -> Result<FieldElement> {
        if target.l == self.ctx.l {
            return Ok(self.clone());
        }
        let lam = embed_lambda(self.ctx.l, target)?;
        let mut acc = FieldElement::zero(target);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lam) + &FieldElement::from_int(target, c.clone());
        }
        Ok(acc)
    }

    /// Human form `a0 + a1·l + a2·l^2`, `*` instead of `·` when `ascii`.
    pub fn render_lambda(&self, ascii: bool) -> String {
        let (dot, sym) = if ascii { ("*", "l") } else { ("·", "λ") };
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => sym.to_string(),
                _ => format!("{sym}^{k}"),
            };
            if k == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}{dot}{mono}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_lambda(false))
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.checked_add(rhs).expect("field context mismatch")
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.checked_sub(rhs).expect("field context mismatch")
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.checked_mul(rhs).expect("field context mismatch")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// λ_q = C_{L/q}(λ_L) inside the context.
pub fn embed_lambda(q: u32, ctx: &Arc<FieldContext>) -> Result<FieldElement> {
    if q < 2 || ctx.l % q != 0 {
        return invalid(format!("λ_{q} is not available in Z[λ_{}]", ctx.l));
    }
    let k = ctx.l / q;
    let lam = FieldElement::lambda(ctx);
    // C_0 = 2, C_1 = x, C_{k+1} = x C_k - C_{k-1}
    let mut prev = FieldElement::from_int(ctx, 2);
    let mut cur = lam.clone();
    if k == 0 {
        return Ok(prev);
    }
    for _ in 1..k {
        let next = &(&lam * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `Some(m)` when `a = m·λ_q` exactly.
///
/// For q = 2 (λ_2 = 0) only the zero element qualifies and `Some(0)` is returned.
pub fn as_integer_multiple(a: &FieldElement, q: u32) -> Result<Option<BigInt>> {
    let e = embed_lambda(q, a.ctx())?;
    let Some(k) = e.coeffs.iter().position(|c| !c.is_zero()) else {
        return Ok(a.is_zero().then(BigInt::zero));
    };
    let (m, r) = a.coeffs[k].div_rem(&e.coeffs[k]);
    if !r.is_zero() {
        return Ok(None);
    }
    Ok((e.scale(&m) == *a).then_some(m))
}
