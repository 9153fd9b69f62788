//! Rank-2 Cartan graphs of type Λ_p, their reflection groupoids and real roots.
//!
//! Off-diagonal Cartan entries are stored as nonpositive multiples of λ_p. Objects are
//! either a finite list with ρ_1, ρ_2 as index maps, or Z with ρ_i(a) = a + offset given
//! per residue modulo M and matrices indexed by residue.

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement, Sign};
use crate::strip::{InfiniteFriezeView, PeriodicQuiddity};
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

/// [[2, c12·λ_p], [c21·λ_p, 2]] with c12, c21 the stored multiples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanMatrix2 {
    pub c12_mult: i64,
    pub c21_mult: i64,
}

impl CartanMatrix2 {
    pub fn new(c12_mult: i64, c21_mult: i64) -> CartanMatrix2 {
        CartanMatrix2 { c12_mult, c21_mult }
    }

    fn entry(&self, i: usize) -> i64 {
        if i == 1 {
            self.c12_mult
        } else {
            self.c21_mult
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Objects {
    Finite { rho1: Vec<usize>, rho2: Vec<usize> },
    /// Objects Z; ρ_i(a) = a + rho_i[a mod M].
    Periodic { rho1: Vec<i64>, rho2: Vec<i64> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanGraph {
    p: u32,
    objects: Objects,
    matrices: Vec<CartanMatrix2>,
    ctx: Arc<FieldContext>,
}

/// Shape of a connected 2-regular graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphShape {
    InfiniteString,
    Cycle,
    Chain,
}

impl fmt::Display for GraphShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphShape::InfiniteString => "infinite string",
            GraphShape::Cycle => "cycle",
            GraphShape::Chain => "chain",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
    /// None when the graph is disconnected.
    pub shape: Option<GraphShape>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl CartanGraph {
    pub fn finite(p: u32, rho1: Vec<usize>, rho2: Vec<usize>, matrices: Vec<CartanMatrix2>) -> Result<CartanGraph> {
        let n = matrices.len();
        if n == 0 || rho1.len() != n || rho2.len() != n {
            return Err(Error::InvalidGraph("ρ maps and matrices must have the same nonzero length".into()));
        }
        if rho1.iter().chain(&rho2).any(|&b| b >= n) {
            return Err(Error::InvalidGraph("ρ maps to an object out of range".into()));
        }
        Ok(CartanGraph {
            p,
            objects: Objects::Finite { rho1, rho2 },
            matrices,
            ctx: FieldContext::new(p)?,
        })
    }

    pub fn periodic(p: u32, rho1: Vec<i64>, rho2: Vec<i64>, matrices: Vec<CartanMatrix2>) -> Result<CartanGraph> {
        let n = matrices.len();
        if n == 0 || rho1.len() != n || rho2.len() != n {
            return Err(Error::InvalidGraph("ρ offsets and matrices must have the same nonzero length".into()));
        }
        if rho1.iter().chain(&rho2).any(|o| !(-1..=1).contains(o)) {
            return Err(Error::InvalidGraph("ρ offsets must lie in {-1, 0, 1}".into()));
        }
        Ok(CartanGraph {
            p,
            objects: Objects::Periodic { rho1, rho2 },
            matrices,
            ctx: FieldContext::new(p)?,
        })
    }

    /// The one-object graph with C = [[2, -λ_p], [-λ_p, 2]] and loops.
    pub fn dihedral(p: u32) -> Result<CartanGraph> {
        CartanGraph::finite(p, vec![0], vec![0], vec![CartanMatrix2::new(-1, -1)])
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn objects(&self) -> &Objects {
        &self.objects
    }

    pub fn matrices(&self) -> &[CartanMatrix2] {
        &self.matrices
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self.objects, Objects::Periodic { .. })
    }

    /// Number of objects (finite) or residues (periodic).
    pub fn size(&self) -> usize {
        self.matrices.len()
    }

    /// Index into the per-object tables.
    pub fn key(&self, a: i64) -> usize {
        a.rem_euclid(self.size() as i64) as usize
    }

    pub fn rho(&self, i: usize, a: i64) -> i64 {
        let k = self.key(a);
        match &self.objects {
            Objects::Finite { rho1, rho2 } => (if i == 1 { rho1[k] } else { rho2[k] }) as i64,
            Objects::Periodic { rho1, rho2 } => a + if i == 1 { rho1[k] } else { rho2[k] },
        }
    }

    pub fn matrix(&self, a: i64) -> CartanMatrix2 {
        self.matrices[self.key(a)]
    }

    /// c^a_{ij} as a field element.
    pub fn c(&self, a: i64, i: usize, j: usize) -> FieldElement {
        if i == j {
            FieldElement::from_int(&self.ctx, 2)
        } else {
            FieldElement::lambda(&self.ctx).scale_i64(self.matrix(a).entry(i))
        }
    }
}

/// Check (M1), (M2), (C1), (C2) and classify the underlying graph.
pub fn validate_graph(g: &CartanGraph) -> ValidationReport {
    let mut violations = Vec::new();
    let n = g.size() as i64;
    for a in 0..n {
        let m = g.matrix(a);
        if m.c12_mult > 0 || m.c21_mult > 0 {
            violations.push(format!("(M1) object {a}: off-diagonal entries must be nonpositive"));
        }
        if (m.c12_mult == 0) != (m.c21_mult == 0) {
            violations.push(format!("(M2) object {a}: c12 and c21 must vanish together"));
        }
        for i in 1..=2 {
            let b = g.rho(i, a);
            if g.rho(i, b) != a {
                violations.push(format!("(C1) object {a}: ρ_{i} is not an involution"));
                continue;
            }
            if g.matrix(b).entry(i) != m.entry(i) {
                violations.push(format!("(C2) object {a}: row {i} differs at ρ_{i}({a}) = {b}"));
            }
        }
    }
    let shape = if violations.iter().any(|v| v.starts_with("(C1)")) {
        None
    } else {
        classify(g)
    };
    ValidationReport { violations, shape }
}

fn classify(g: &CartanGraph) -> Option<GraphShape> {
    match &g.objects {
        Objects::Periodic { .. } => {
            let n = g.size() as i64;
            let ok = (0..n).all(|a| {
                let mut nb = [g.rho(1, a) - a, g.rho(2, a) - a];
                nb.sort();
                nb == [-1, 1]
            });
            ok.then_some(GraphShape::InfiniteString)
        }
        Objects::Finite { .. } => {
            let n = g.size();
            let mut seen = vec![false; n];
            let mut stack = vec![0usize];
            seen[0] = true;
            while let Some(a) = stack.pop() {
                for i in 1..=2 {
                    let b = g.rho(i, a as i64) as usize;
                    if !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
            if seen.iter().any(|s| !s) {
                return None;
            }
            let loops = (0..n as i64).any(|a| g.rho(1, a) == a || g.rho(2, a) == a);
            Some(if loops { GraphShape::Chain } else { GraphShape::Cycle })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root {
    pub x1: FieldElement,
    pub x2: FieldElement,
}

impl Root {
    pub fn new(x1: FieldElement, x2: FieldElement) -> Root {
        Root { x1, x2 }
    }

    pub fn alpha(ctx: &Arc<FieldContext>, i: usize) -> Root {
        let (z, o) = (FieldElement::zero(ctx), FieldElement::one(ctx));
        if i == 1 {
            Root::new(o, z)
        } else {
            Root::new(z, o)
        }
    }

    /// Both coordinates ≥ 0.
    pub fn is_positive(&self) -> bool {
        self.x1.sign() != Sign::Negative && self.x2.sign() != Sign::Negative
    }

    pub fn is_negative(&self) -> bool {
        self.x1.sign() != Sign::Positive && self.x2.sign() != Sign::Positive
    }

    pub fn neg(&self) -> Root {
        Root::new(-&self.x1, -&self.x2)
    }
}

/// σ_i^a applied to r; the result lives at ρ_i(a).
pub fn reflect(g: &CartanGraph, a: i64, i: usize, r: &Root) -> Root {
    if i == 1 {
        let c12 = g.c(a, 1, 2);
        Root::new(&(-&r.x1) - &(&c12 * &r.x2), r.x2.clone())
    } else {
        let c21 = g.c(a, 2, 1);
        Root::new(r.x1.clone(), &(-&(&c21 * &r.x1)) - &r.x2)
    }
}

type Mat2 = [[FieldElement; 2]; 2];

fn identity(ctx: &Arc<FieldContext>) -> Mat2 {
    let (z, o) = (FieldElement::zero(ctx), FieldElement::one(ctx));
    [[o.clone(), z.clone()], [z, o]]
}

fn mat_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    let e = |r: usize, c: usize| &(&x[r][0] * &y[0][c]) + &(&x[r][1] * &y[1][c]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn sigma_matrix(g: &CartanGraph, b: i64, i: usize) -> Mat2 {
    let ctx = g.ctx();
    let (z, o) = (FieldElement::zero(ctx), FieldElement::one(ctx));
    if i == 1 {
        [[-&o, -g.c(b, 1, 2)], [z, o]]
    } else {
        [[o.clone(), z], [-g.c(b, 2, 1), -&o]]
    }
}

/// Real roots at one object up to a word-length cap.
#[derive(Debug, Clone)]
pub struct RootSet {
    /// Roots with the shortest word length producing them, in discovery order.
    pub roots: Vec<(Root, usize)>,
    pub closed: bool,
    pub cap: usize,
}

impl RootSet {
    pub fn all(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().map(|(r, _)| r)
    }

    pub fn within(&self, len: usize) -> HashSet<Root> {
        self.roots.iter().filter(|(_, l)| *l <= len).map(|(r, _)| r.clone()).collect()
    }

    pub fn set(&self) -> HashSet<Root> {
        self.all().cloned().collect()
    }

    pub fn positive(&self) -> Vec<Root> {
        self.all().filter(|r| r.is_positive()).cloned().collect()
    }
}

/// Walks the two alternating reduced words into a. A chain is complete once it returns to
/// its starting state (object class, next label, accumulated map = id).
pub fn real_roots(g: &CartanGraph, a: i64, cap: usize) -> RootSet {
    let ctx = g.ctx();
    let id = identity(ctx);
    let mut seen = HashSet::new();
    let mut roots = Vec::new();
    let mut push = |r: Root, len: usize, roots: &mut Vec<(Root, usize)>| {
        if seen.insert(r.clone()) {
            roots.push((r, len));
        }
    };
    push(Root::alpha(ctx, 1), 0, &mut roots);
    push(Root::alpha(ctx, 2), 0, &mut roots);
    let mut closed = true;
    for start in 1..=2usize {
        let mut phi = id.clone();
        let mut b = a;
        let mut label = start;
        let mut done = false;
        for k in 1..=cap {
            b = g.rho(label, b);
            phi = mat_mul(&phi, &sigma_matrix(g, b, label));
            for col in 0..2 {
                push(Root::new(phi[0][col].clone(), phi[1][col].clone()), k, &mut roots);
            }
            label = 3 - label;
            if label == start && g.key(b) == g.key(a) && phi == id {
                done = true;
                break;
            }
        }
        closed &= done;
    }
    RootSet { roots, closed, cap }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum R4Status {
    Holds,
    Fails { object: i64, m: usize, reached: i64 },
    /// Some root set did not close within the cap.
    Vacuous,
}

#[derive(Debug, Clone)]
pub struct RootSystemReport {
    pub cap: usize,
    pub r1: bool,
    pub r2: bool,
    pub r3: bool,
    pub r4: R4Status,
    pub closed: bool,
    pub findings: Vec<String>,
}

impl RootSystemReport {
    pub fn r1_to_r3(&self) -> bool {
        self.r1 && self.r2 && self.r3
    }

    /// All axioms hold up to the cap (R4 counts when vacuous).
    pub fn holds_up_to_cap(&self) -> bool {
        self.r1_to_r3() && !matches!(self.r4, R4Status::Fails { .. })
    }
}

/// Bounded check of (R1)-(R4) for the real roots of every object (every residue class).
pub fn check_root_system(g: &CartanGraph, cap: usize) -> RootSystemReport {
    let n = g.size() as i64;
    let sets: HashMap<usize, RootSet> = (0..n).map(|a| (g.key(a), real_roots(g, a, cap))).collect();
    let mut findings = Vec::new();
    let (mut r1, mut r2, mut r3) = (true, true, true);
    let mut r4 = R4Status::Holds;
    let closed = sets.values().all(|s| s.closed);
    for a in 0..n {
        let set = &sets[&g.key(a)];
        for r in set.all() {
            if !r.is_positive() && !r.is_negative() {
                if r1 {
                    findings.push(format!("(R1) object {a}: mixed-sign root ({}, {})", r.x1, r.x2));
                }
                r1 = false;
            }
            let axis = r.x1.is_zero() || r.x2.is_zero();
            let unit = |x: &FieldElement| x.is_one() || (-x).is_one();
            if axis && !(unit(&r.x1) || unit(&r.x2)) {
                if r2 {
                    findings.push(format!("(R2) object {a}: axis root ({}, {}) is not ±α_i", r.x1, r.x2));
                }
                r2 = false;
            }
        }
        for i in 1..=2 {
            let b = g.rho(i, a);
            let target = &sets[&g.key(b)];
            let ok = if set.closed && target.closed {
                let image: HashSet<Root> = set.all().map(|r| reflect(g, a, i, r)).collect();
                image == target.set()
            } else {
                let have = target.set();
                set.within(cap.saturating_sub(1)).iter().all(|r| have.contains(&reflect(g, a, i, r)))
            };
            if !ok {
                if r3 {
                    findings.push(format!("(R3) object {a}: σ_{i} does not carry roots onto those at {b}"));
                }
                r3 = false;
            }
        }
        if !set.closed {
            if r4 == R4Status::Holds {
                r4 = R4Status::Vacuous;
            }
            continue;
        }
        let m = set.all().filter(|r| r.is_positive()).count();
        let mut c = a;
        for _ in 0..m {
            c = g.rho(1, g.rho(2, c));
        }
        if c != a && !matches!(r4, R4Status::Fails { .. }) {
            findings.push(format!("(R4) object {a}: (ρ_1ρ_2)^{m}({a}) = {c}"));
            r4 = R4Status::Fails { object: a, m, reached: c };
        }
    }
    if r4 == R4Status::Vacuous {
        findings.push(format!("(R4) vacuous: root sets not closed at cap {cap}"));
    }
    RootSystemReport { cap, r1, r2, r3, r4, closed, findings }
}

/// Smallest k ≥ 1 with (σ_1σ_2)^k = id along the walk from a, if at most `max`.
pub fn dihedral_order(g: &CartanGraph, a: i64, max: usize) -> Option<usize> {
    let id = identity(g.ctx());
    let mut phi = id.clone();
    let mut b = a;
    for k in 1..=max {
        for label in [1, 2] {
            b = g.rho(label, b);
            phi = mat_mul(&phi, &sigma_matrix(g, b, label));
        }
        if phi == id {
            return Some(k);
        }
    }
    None
}

/// No reduced alternating word of length ≤ cap is a closed path acting nontrivially.
/// A bounded check: closed paths reduce to alternating words since σ_i² = id.
pub fn simply_connected_up_to(g: &CartanGraph, cap: usize) -> bool {
    let id = identity(g.ctx());
    (0..g.size() as i64).all(|a| {
        [1usize, 2].iter().all(|&start| {
            let mut phi = id.clone();
            let mut b = a;
            let mut label = start;
            for _ in 0..cap {
                b = g.rho(label, b);
                phi = mat_mul(&phi, &sigma_matrix(g, b, label));
                label = 3 - label;
                if b == a && phi != id {
                    return false;
                }
            }
            true
        })
    })
}

fn minimal_period(word: &[i64]) -> usize {
    let n = word.len();
    (1..=n)
        .find(|&d| n % d == 0 && (0..n).all(|i| word[i] == word[i % d]))
        .unwrap_or(n)
}

/// Quiddity sequence at a0 as multiples of λ_p, reduced to its minimal period.
pub fn quiddity_of_graph(g: &CartanGraph, a0: i64) -> Result<PeriodicQuiddity> {
    let report = validate_graph(g);
    if !report.is_valid() {
        return Err(Error::InvalidGraph(report.violations.join("; ")));
    }
    if report.shape.is_none() {
        return Err(Error::InvalidArgument("the Cartan graph is not connected".into()));
    }
    let mut word = Vec::new();
    let mut a = a0;
    let mut i = 0usize;
    loop {
        let m = g.matrix(a);
        word.push(-if i % 2 == 1 { m.c12_mult } else { m.c21_mult });
        i += 1;
        a = g.rho(if i % 2 == 1 { 1 } else { 2 }, a);
        if i % 2 == 0 && g.key(a) == g.key(a0) {
            break;
        }
    }
    let d = minimal_period(&word);
    word.truncate(d);
    PeriodicQuiddity::with_nonnegative(g.p(), word)
}

/// The infinite-string graph on Z whose quiddity sequence at 0 is q.
pub fn graph_from_quiddity(q: &PeriodicQuiddity) -> CartanGraph {
    let t = q.period();
    let m = t.lcm(&2);
    let mut rho1 = Vec::with_capacity(m);
    let mut rho2 = Vec::with_capacity(m);
    let mut matrices = Vec::with_capacity(m);
    for a in 0..m as i64 {
        let (qa, qn) = (q.multiple(a), q.multiple(a + 1));
        if a % 2 == 0 {
            rho1.push(1);
            rho2.push(-1);
            matrices.push(CartanMatrix2::new(-qn, -qa));
        } else {
            rho1.push(-1);
            rho2.push(1);
            matrices.push(CartanMatrix2::new(-qa, -qn));
        }
    }
    CartanGraph::periodic(q.p(), rho1, rho2, matrices).expect("offsets are ±1 and lengths agree")
}

fn canonical(word: &[i64]) -> Vec<i64> {
    let d = minimal_period(word);
    let base = &word[..d];
    let mut rev = base.to_vec();
    rev.reverse();
    let mut best: Option<Vec<i64>> = None;
    for w in [base.to_vec(), rev] {
        for s in 0..d {
            let rot: Vec<i64> = w[s..].iter().chain(&w[..s]).copied().collect();
            if best.as_ref().map_or(true, |b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

/// Periodic sequences related by a shift or a shift with reversal.
pub fn sequences_equivalent(s: &[i64], t: &[i64]) -> bool {
    if s.is_empty() || t.is_empty() {
        return s.is_empty() && t.is_empty();
    }
    canonical(s) == canonical(t)
}

/// Positive roots read off two consecutive diagonals of the propagation array.
#[derive(Debug, Clone)]
pub struct FriezeRoots {
    pub rightward: Vec<Root>,
    pub leftward: Vec<Root>,
}

impl FriezeRoots {
    pub fn all(&self) -> Vec<Root> {
        let mut seen = HashSet::new();
        self.rightward
            .iter()
            .chain(&self.leftward)
            .filter(|r| seen.insert((*r).clone()))
            .cloned()
            .collect()
    }
}

/// Rightward roots (f_{s,s+1+k}, f_{s+1,s+1+k}) and leftward roots (f_{s-k,s}, f_{s-k,s+1})
/// for k < count, at the object s of [`graph_from_quiddity`]; coordinates swap when s is odd.
pub fn roots_from_frieze(v: &InfiniteFriezeView, anchor: i64, count: usize) -> FriezeRoots {
    let s = anchor;
    let mk = |x: FieldElement, y: FieldElement| if s.rem_euclid(2) == 1 { Root::new(y, x) } else { Root::new(x, y) };
    let rightward = (0..count as i64)
        .map(|k| mk(v.entry(s, s + 1 + k), v.entry(s + 1, s + 1 + k)))
        .collect();
    let leftward = (0..count as i64)
        .map(|k| mk(v.entry(s - k, s), v.entry(s - k, s + 1)))
        .collect();
    FriezeRoots { rightward, leftward }
}
