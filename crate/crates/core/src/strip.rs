//! Periodic infinite friezes of type Λ_p and p-angulations of the infinite strip.
//!
//! Lower vertices are the integers; the quiddity entry at lower vertex i is
//! q_i = m_{i mod T}·λ_p = f_{i-1,i+1}. Arc classes are stored by one representative per
//! period: a peripheral class (i, j) stands for all (i+kT, j+kT), a bridging class (u, v)
//! for all lower-upper arcs (u+kT)^I to (v+kΔ)^II where Δ is the upper advance.

use crate::dissection::{build_dissection, entries_from_vertex};
use crate::error::{invalid, Error, Result};
use crate::field::{FieldContext, FieldElement, Sign};
use crate::frieze::FriezePattern;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, RwLock};

/// Periodic quiddity word q_i = m_{i mod T}·λ_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicQuiddity {
    p: u32,
    multiples: Vec<i64>,
    ctx: Arc<FieldContext>,
}

impl PeriodicQuiddity {
    pub fn new(p: u32, multiples: Vec<i64>) -> Result<PeriodicQuiddity> {
        if multiples.iter().any(|&m| m < 1) {
            return invalid("quiddity multiples must be at least 1");
        }
        Self::with_nonnegative(p, multiples)
    }

    /// Like [`PeriodicQuiddity::new`] but admitting zero multiples, as Cartan graphs do.
    pub fn with_nonnegative(p: u32, multiples: Vec<i64>) -> Result<PeriodicQuiddity> {
        if p < 3 {
            return invalid(format!("p must be at least 3, got {p}"));
        }
        if multiples.is_empty() {
            return invalid("the period must be at least 1");
        }
        if multiples.iter().any(|&m| m < 0) {
            return invalid("quiddity multiples must be nonnegative");
        }
        Ok(PeriodicQuiddity {
            p,
            multiples,
            ctx: FieldContext::new(p)?,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn period(&self) -> usize {
        self.multiples.len()
    }

    pub fn multiples(&self) -> &[i64] {
        &self.multiples
    }

    pub fn multiple(&self, i: i64) -> i64 {
        self.multiples[i.rem_euclid(self.multiples.len() as i64) as usize]
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn lambda(&self) -> FieldElement {
        FieldElement::lambda(&self.ctx)
    }

    /// q_i as a field element.
    pub fn q(&self, i: i64) -> FieldElement {
        self.lambda().scale_i64(self.multiple(i))
    }
}

/// On-demand entries of the propagation array of a periodic quiddity.
#[derive(Debug)]
pub struct InfiniteFriezeView {
    quiddity: PeriodicQuiddity,
    q: Vec<FieldElement>,
    lambda: FieldElement,
    /// cache[r][d] = f_{r, r+d} for residues r in 0..T.
    cache: RwLock<Vec<Vec<FieldElement>>>,
    height_checked: AtomicUsize,
}

/// Positivity certified for rows 2..=height over one period.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PositivityCertificate {
    pub height: usize,
}

impl InfiniteFriezeView {
    pub fn new(quiddity: PeriodicQuiddity) -> InfiniteFriezeView {
        let t = quiddity.period();
        let ctx = quiddity.ctx().clone();
        let q = (0..t as i64).map(|i| quiddity.q(i)).collect();
        let cache = (0..t)
            .map(|_| vec![FieldElement::zero(&ctx), FieldElement::one(&ctx)])
            .collect();
        InfiniteFriezeView {
            lambda: quiddity.lambda(),
            quiddity,
            q,
            cache: RwLock::new(cache),
            height_checked: AtomicUsize::new(1),
        }
    }

    pub fn quiddity(&self) -> &PeriodicQuiddity {
        &self.quiddity
    }

    pub fn period(&self) -> usize {
        self.quiddity.period()
    }

    pub fn p(&self) -> u32 {
        self.quiddity.p()
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        self.quiddity.ctx()
    }

    /// Largest row bound certified by [`InfiniteFriezeView::positivity_check`] so far.
    pub fn height_checked(&self) -> usize {
        self.height_checked.load(Ordering::Acquire)
    }

    /// f_{i,j}. For j < i this is -f_{j,i}, the continuation of the recurrence.
    pub fn entry(&self, i: i64, j: i64) -> FieldElement {
        if j < i {
            return -self.entry(j, i);
        }
        let t = self.period() as i64;
        let r = i.rem_euclid(t) as usize;
        let d = (j - i) as usize;
        {
            let cache = self.cache.read().unwrap();
            if let Some(x) = cache[r].get(d) {
                return x.clone();
            }
        }
        let mut cache = self.cache.write().unwrap();
        let row = &mut cache[r];
        while row.len() <= d {
            let k = row.len() - 1;
            // f_{r,r+k+1} = f_{r,r+k}·q_{r+k} - f_{r,r+k-1}
            let qv = &self.q[(r + k) % self.q.len()];
            let next = &(&row[k] * qv) - &row[k - 1];
            row.push(next);
        }
        row[d].clone()
    }

    /// Rows 2..=h over one period must be positive and each entry 1 or at least λ_p.
    pub fn positivity_check(&self, h: usize) -> Result<PositivityCertificate> {
        if h < 2 {
            return invalid("the row bound must be at least 2");
        }
        let t = self.period() as i64;
        let start = self.height_checked().max(1) + 1;
        for d in start..=h {
            for i in 0..t {
                let j = i + d as i64;
                let x = self.entry(i, j);
                if x.sign() != Sign::Positive {
                    return Err(Error::NotAnInfiniteFrieze {
                        i,
                        j,
                        reason: "is not positive".into(),
                    });
                }
                if !x.is_one() && (&x - &self.lambda).sign() == Sign::Negative {
                    return Err(Error::NotAnInfiniteFrieze {
                        i,
                        j,
                        reason: "is neither 1 nor at least λ_p".into(),
                    });
                }
            }
            self.height_checked.fetch_max(d, Ordering::AcqRel);
        }
        Ok(PositivityCertificate { height: h })
    }

    /// Rows 1..=h over one period, as (row number, entries).
    pub fn window_rows(&self, h: usize) -> Vec<(usize, Vec<FieldElement>)> {
        let t = self.period() as i64;
        (1..=h)
            .map(|d| (d, (0..t).map(|i| self.entry(i, i + d as i64)).collect()))
            .collect()
    }
}

/// Default row bound and Θ span: 4·T·p.
pub fn default_height(q: &PeriodicQuiddity) -> usize {
    4 * q.period() * q.p() as usize
}

fn strict_cross(a: (i64, i64), b: (i64, i64)) -> bool {
    (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
}

/// The peripheral arcs carried by the 1-entries of an infinite frieze.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaArcs {
    period: i64,
    arcs: Vec<(i64, i64)>,
    max_span: usize,
}

impl ThetaArcs {
    /// Build from class representatives (normalized so 0 ≤ i < T).
    pub fn from_classes(period: usize, arcs: &[(i64, i64)], max_span: usize) -> ThetaArcs {
        let t = period as i64;
        let mut set = BTreeSet::new();
        for &(i, j) in arcs {
            let k = i.div_euclid(t);
            set.insert((i - k * t, j - k * t));
        }
        ThetaArcs {
            period: t,
            arcs: set.into_iter().collect(),
            max_span,
        }
    }

    /// One representative (i, j) per class, 0 ≤ i < T.
    pub fn classes(&self) -> &[(i64, i64)] {
        &self.arcs
    }

    pub fn max_span(&self) -> usize {
        self.max_span
    }

    /// All translates with left end in [lo, hi].
    pub fn translates(&self, lo: i64, hi: i64) -> Vec<(i64, i64)> {
        let t = self.period;
        let mut out = Vec::new();
        for &(i, j) in &self.arcs {
            let k0 = (lo - i).div_euclid(t);
            let mut k = k0;
            while i + k * t <= hi {
                if i + k * t >= lo {
                    out.push((i + k * t, j + k * t));
                }
                k += 1;
            }
        }
        out.sort();
        out
    }

    /// Number of arcs with an endpoint at b.
    pub fn arcs_at(&self, b: i64) -> usize {
        let t = self.period;
        self.arcs
            .iter()
            .map(|&(i, j)| usize::from((b - i).rem_euclid(t) == 0) + usize::from((b - j).rem_euclid(t) == 0))
            .sum()
    }

    /// b lies strictly below some arc.
    pub fn saturated(&self, b: i64) -> bool {
        let t = self.period;
        self.arcs.iter().any(|&(i, j)| {
            let k = (b - j).div_euclid(t) + 1;
            b - j < k * t && k * t < b - i
        })
    }

    /// Right end of the longest arc leaving c with right end ≤ limit (strictly below when
    /// `strict`).
    fn longest_from(&self, c: i64, limit: i64, strict: bool) -> Option<i64> {
        let t = self.period;
        self.arcs
            .iter()
            .filter(|&&(i, _)| (c - i).rem_euclid(t) == 0)
            .map(|&(i, j)| j + (c - i))
            .filter(|&e| if strict { e < limit } else { e <= limit })
            .max()
    }

    fn check_non_crossing(&self) -> std::result::Result<(), ((i64, i64), (i64, i64))> {
        let t = self.period;
        for &a in &self.arcs {
            for &b in &self.arcs {
                let span = (a.1 - a.0).max(b.1 - b.0);
                let kmax = span / t + 2;
                for k in -kmax..=kmax {
                    let bb = (b.0 + k * t, b.1 + k * t);
                    if strict_cross(a, bb) {
                        return Err((a, bb));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Θ over one period with span at most `max_span`; certifies positivity up to `max_span`.
pub fn theta_arcs(v: &InfiniteFriezeView, max_span: usize) -> Result<ThetaArcs> {
    v.positivity_check(max_span.max(2))?;
    let t = v.period() as i64;
    let mut arcs = Vec::new();
    for i in 0..t {
        for j in i + 2..=i + max_span as i64 {
            if v.entry(i, j).is_one() {
                arcs.push((i, j));
            }
        }
    }
    let theta = ThetaArcs::from_classes(v.period(), &arcs, max_span);
    theta.check_non_crossing().map_err(|(a, b)| {
        Error::InternalInconsistency(format!("1-entries at {a:?} and {b:?} give crossing arcs"))
    })?;
    Ok(theta)
}

/// Local data at a lower vertex; `defect` is a multiple of λ_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexReport {
    pub vertex: i64,
    pub defect: i64,
    pub saturated: bool,
    pub arcs_attached: usize,
}

pub fn vertex_report(v: &InfiniteFriezeView, theta: &ThetaArcs, b0: i64) -> Result<VertexReport> {
    let arcs = theta.arcs_at(b0);
    let defect = v.quiddity().multiple(b0) - 1 - arcs as i64;
    if defect < 0 {
        return Err(Error::SpanTooSmall {
            vertex: b0,
            detail: format!("{arcs} arcs attached but quiddity multiple {}", v.quiddity().multiple(b0)),
        });
    }
    Ok(VertexReport {
        vertex: b0,
        defect,
        saturated: theta.saturated(b0),
        arcs_attached: arcs,
    })
}

/// Periodic description of a p-angulation of the infinite strip.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StripAngulation {
    pub p: u32,
    pub period: usize,
    pub peripheral: Vec<(i64, i64)>,
    pub bridging: Vec<(i64, i64)>,
    pub upper_advance: i64,
}

impl StripAngulation {
    /// Sorted classes with upper labels shifted so the first bridging class has v = 0.
    pub fn normalized(&self) -> StripAngulation {
        let mut s = self.clone();
        s.peripheral.sort();
        s.bridging.sort();
        if let Some(&(_, v0)) = s.bridging.first() {
            for b in &mut s.bridging {
                b.1 -= v0;
            }
        }
        s
    }

    fn theta(&self) -> ThetaArcs {
        let span = self.peripheral.iter().map(|&(i, j)| (j - i) as usize).max().unwrap_or(0);
        ThetaArcs::from_classes(self.period, &self.peripheral, span)
    }

    fn bridging_translates(&self, kmin: i64, kmax: i64) -> Vec<(i64, i64)> {
        let t = self.period as i64;
        let mut out: Vec<(i64, i64)> = (kmin..=kmax)
            .flat_map(|k| self.bridging.iter().map(move |&(u, v)| (u + k * t, v + k * self.upper_advance)))
            .collect();
        out.sort();
        out
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidStrip(m));
        if self.p < 3 {
            return bad(format!("p must be at least 3, got {}", self.p));
        }
        if self.period == 0 {
            return bad("period must be at least 1".into());
        }
        if self.upper_advance < 0 {
            return bad("upper advance must be nonnegative".into());
        }
        let t = self.period as i64;
        let mut seen = BTreeSet::new();
        for &(i, j) in &self.peripheral {
            if !(0..t).contains(&i) || j < i + 2 {
                return bad(format!("peripheral class ({i},{j}) is not normalized"));
            }
            if !seen.insert((i, j)) {
                return bad(format!("duplicate peripheral class ({i},{j})"));
            }
        }
        let mut seen = BTreeSet::new();
        for &(u, v) in &self.bridging {
            if !(0..t).contains(&u) {
                return bad(format!("bridging class ({u},{v}) is not normalized"));
            }
            if !seen.insert((u, v)) {
                return bad(format!("duplicate bridging class ({u},{v})"));
            }
        }
        let theta = self.theta();
        if let Err((a, b)) = theta.check_non_crossing() {
            return bad(format!("peripheral arcs {a:?} and {b:?} cross"));
        }
        for &(u, _) in &self.bridging {
            if theta.saturated(u) {
                return bad(format!("bridging arc at {u} crosses a peripheral arc"));
            }
        }
        // Bridging arcs cross when lower and upper ends are in opposite order.
        for &(u1, v1) in &self.bridging {
            for &(u2, v2) in &self.bridging {
                let kmax = 2 + (u2 - u1).abs().max((v2 - v1).abs());
                for k in -kmax..=kmax {
                    let x = u2 + k * t - u1;
                    let y = v2 + k * self.upper_advance - v1;
                    if (x < 0 && y > 0) || (x > 0 && y < 0) {
                        return bad(format!("bridging classes ({u1},{v1}) and ({u2},{v2}) cross"));
                    }
                    if x == 0 && y == 0 && (u1, v1) != (u2, v2) {
                        return bad(format!("bridging classes ({u1},{v1}) and ({u2},{v2}) coincide"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Lower vertices of the cell between consecutive bridging arcs (x, ·) and (x2, ·).
    fn lower_walk(theta: &ThetaArcs, x: i64, x2: i64) -> Vec<i64> {
        let mut out = vec![x];
        let mut c = x;
        while c < x2 {
            c = theta.longest_from(c, x2, false).unwrap_or(c + 1);
            out.push(c);
        }
        out
    }

    /// Vertices of the cell directly below the peripheral arc (i, j).
    fn cell_below(theta: &ThetaArcs, i: i64, j: i64) -> Vec<i64> {
        let mut out = vec![i];
        let mut c = theta.longest_from(i, j, true).unwrap_or(i + 1);
        out.push(c);
        while c < j {
            c = theta.longest_from(c, j, false).unwrap_or(c + 1);
            out.push(c);
        }
        out
    }
}

/// Quiddity and certified window regenerated from a strip p-angulation.
#[derive(Debug, Clone)]
pub struct StripFrieze {
    pub quiddity: PeriodicQuiddity,
    /// window[d - 2][i] = f_{i,i+d} for d in 2..=height, i in 0..T.
    pub window: Vec<Vec<FieldElement>>,
    pub height: usize,
}

/// Count cells per lower vertex and rebuild the frieze; window entries come from
/// the dual-tree labelling of a finite piece of the strip.
pub fn from_strip(s: &StripAngulation, height: Option<usize>) -> Result<StripFrieze> {
    s.validate()?;
    let t = s.period as i64;
    let p = s.p as usize;
    let theta = s.theta();
    let mut counts = vec![0i64; s.period];
    let bump = |counts: &mut Vec<i64>, verts: &[i64]| {
        for &v in verts {
            counts[v.rem_euclid(t) as usize] += 1;
        }
    };
    for &(i, j) in &s.peripheral {
        let cell = StripAngulation::cell_below(&theta, i, j);
        if cell.len() != p {
            return Err(Error::InvalidStrip(format!(
                "cell below ({i},{j}) has {} vertices, expected {p}",
                cell.len()
            )));
        }
        bump(&mut counts, &cell);
    }
    if s.bridging.is_empty() {
        if (0..t).all(|b| theta.saturated(b)) {
            let quiddity = PeriodicQuiddity::new(s.p, counts)?;
            let h = height.unwrap_or_else(|| default_height(&quiddity));
            let view = InfiniteFriezeView::new(quiddity.clone());
            let window = window_from_view(&view, h);
            return Ok(StripFrieze { quiddity, window, height: h });
        }
        return Err(Error::InvalidStrip("a cell above the lower line is unbounded".into()));
    }
    let arcs = s.bridging_translates(-1, 2);
    let nclass = s.bridging.len();
    // Arcs with k = 0 sit at positions nclass..2·nclass of the sorted translate list.
    for w in nclass..2 * nclass {
        let (x, v) = arcs[w];
        let (x2, v2) = arcs[w + 1];
        let lower = StripAngulation::lower_walk(&theta, x, x2);
        let size = lower.len() + (v2 - v + 1) as usize;
        if size != p {
            return Err(Error::InvalidStrip(format!(
                "cell between bridging arcs ({x},{v}) and ({x2},{v2}) has {size} vertices, expected {p}"
            )));
        }
        bump(&mut counts, &lower);
    }
    let quiddity = PeriodicQuiddity::new(s.p, counts)?;
    let h = height.unwrap_or_else(|| default_height(&quiddity));
    let view = InfiniteFriezeView::new(quiddity.clone());
    let window = window_from_strip(s, &theta, h)?;
    let expected = window_from_view(&view, h);
    if window != expected {
        return Err(Error::InternalInconsistency(
            "labels of the strip disagree with the propagated quiddity".into(),
        ));
    }
    Ok(StripFrieze { quiddity, window, height: h })
}

fn window_from_view(view: &InfiniteFriezeView, h: usize) -> Vec<Vec<FieldElement>> {
    let t = view.period() as i64;
    (2..=h)
        .map(|d| (0..t).map(|i| view.entry(i, i + d as i64)).collect())
        .collect()
}

fn window_from_strip(s: &StripAngulation, theta: &ThetaArcs, h: usize) -> Result<Vec<Vec<FieldElement>>> {
    let t = s.period as i64;
    let ctx = FieldContext::new(s.p)?;
    let kmax = (h as i64 + 2 * t) / t + 2;
    let arcs = s.bridging_translates(-2, kmax);
    let mut window = vec![Vec::with_capacity(s.period); h.saturating_sub(1)];
    for i in 0..t {
        let left = *arcs
            .iter()
            .filter(|a| a.0 <= i)
            .min_by_key(|a| (-a.0, a.1))
            .ok_or_else(|| Error::InvalidStrip("no bridging arc to the left".into()))?;
        let right = *arcs
            .iter()
            .filter(|a| a.0 >= i + h as i64)
            .min_by_key(|a| (a.0, -a.1))
            .ok_or_else(|| Error::InvalidStrip("no bridging arc to the right".into()))?;
        let (xl, vl) = left;
        let (xr, vr) = right;
        let nl = (xr - xl + 1) as usize;
        let lower = |x: i64| (x - xl) as usize;
        let upper = |v: i64| nl + (vr - v) as usize;
        let n = nl + (vr - vl + 1) as usize;
        let mut diags = Vec::new();
        for (a, b) in theta.translates(xl, xr) {
            if b <= xr {
                diags.push((lower(a), lower(b)));
            }
        }
        for &(x, v) in &arcs {
            if (x, v) > left && (x, v) < right {
                diags.push((lower(x), upper(v)));
            }
        }
        let poly = build_dissection(n, &diags)
            .map_err(|e| Error::InvalidStrip(format!("finite piece is not a dissection: {e}")))?;
        if poly.uniform_cell_size() != Some(s.p as usize) {
            return Err(Error::InvalidStrip("finite piece has cells of the wrong size".into()));
        }
        let labels = entries_from_vertex(&poly, lower(i))?;
        for d in 2..=h {
            let x = &labels[lower(i + d as i64)];
            // The piece has its own context of the same L.
            window[d - 2].push(FieldElement::from_coeffs(&ctx, x.coeffs().to_vec()));
        }
    }
    Ok(window)
}

/// Realize a certified periodic frieze as a strip p-angulation.
pub fn to_strip(v: &InfiniteFriezeView, max_span: Option<usize>) -> Result<StripAngulation> {
    let q = v.quiddity();
    let p = q.p() as i64;
    let t = q.period() as i64;
    let span = max_span.unwrap_or_else(|| default_height(q));
    let theta = theta_arcs(v, span)?;
    let mut need = BTreeMap::new();
    let mut non_saturated = Vec::new();
    for b in 0..t {
        let rep = vertex_report(v, &theta, b)?;
        if rep.saturated {
            if rep.defect != 0 {
                return Err(Error::NotRealizable(format!(
                    "vertex {b} lies below an arc but still needs {} arcs",
                    rep.defect
                )));
            }
        } else {
            non_saturated.push(b);
            need.insert(b, rep.defect);
        }
    }
    let peripheral = theta.classes().to_vec();
    if non_saturated.is_empty() {
        // Unreachable for finitely many arc classes: endpoints of outermost arcs are never
        // strictly below another arc.
        return Ok(StripAngulation {
            p: q.p(),
            period: q.period(),
            peripheral,
            bridging: Vec::new(),
            upper_advance: 0,
        });
    }
    let Some(&first) = non_saturated.iter().find(|b| need[b] > 0) else {
        return Err(Error::NotRealizable(
            "no vertex needs a bridging arc, leaving an unbounded cell".into(),
        ));
    };
    // Contracted path over one period starting at the first anchor, closed by its translate.
    let mut path: Vec<i64> = non_saturated
        .iter()
        .map(|&b| if b < first { b + t } else { b })
        .collect();
    path.sort();
    path.push(first + t);
    let mut bridging = Vec::new();
    let mut vpos = 0i64;
    let mut since = 0i64; // contracted vertices since the previous anchor, inclusive of it
    let mut started = false;
    for &x in &path {
        since += 1;
        let r = if x == first + t { 1 } else { need[&x.rem_euclid(t)] };
        if r == 0 {
            if since > p - 1 {
                return Err(Error::NotRealizable(format!(
                    "more than {} consecutive vertices without bridging arcs before {x}",
                    p - 3
                )));
            }
            continue;
        }
        if started {
            let a = p - since;
            if a < 1 {
                return Err(Error::NotRealizable(format!("cell closing at {x} has no upper vertex")));
            }
            vpos += a - 1;
        }
        if x == first + t {
            break;
        }
        for k in 0..r {
            if k > 0 {
                vpos += p - 2;
            }
            bridging.push((x, vpos));
        }
        started = true;
        since = 1;
    }
    let delta = vpos;
    let bridging = bridging
        .into_iter()
        .map(|(x, vp)| if x >= t { (x - t, vp - delta) } else { (x, vp) })
        .collect();
    let strip = StripAngulation {
        p: q.p(),
        period: q.period(),
        peripheral,
        bridging,
        upper_advance: delta,
    }
    .normalized();
    let back = from_strip(&strip, Some(span.min(default_height(q))))
        .map_err(|e| Error::ConstructionBug(format!("certificate failed: {e}")))?;
    if back.quiddity != *q {
        return Err(Error::ConstructionBug(format!(
            "regenerated quiddity {:?} differs from {:?}",
            back.quiddity.multiples(),
            q.multiples()
        )));
    }
    Ok(strip)
}

/// The finite frieze carried by the triangle below a 1-entry f_{i,j}.
pub fn extract_finite(v: &InfiniteFriezeView, i: i64, j: i64) -> Result<FriezePattern> {
    if j < i + 2 {
        return invalid(format!("({i},{j}) is not a peripheral arc"));
    }
    if !v.entry(i, j).is_one() {
        return invalid(format!("f({i},{j}) is not 1"));
    }
    let n = (j - i + 1) as usize;
    let rows = (1..n)
        .map(|r| {
            (0..n)
                .map(|a| {
                    let b = a + r;
                    if b < n {
                        v.entry(i + a as i64, i + b as i64)
                    } else {
                        v.entry(i + (b - n) as i64, i + a as i64)
                    }
                })
                .collect()
        })
        .collect();
    FriezePattern::from_rows(v.ctx(), rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::render::render;

    fn view(p: u32, m: &[i64]) -> InfiniteFriezeView {
        InfiniteFriezeView::new(PeriodicQuiddity::new(p, m.to_vec()).unwrap())
    }

    fn r(x: &FieldElement) -> String {
        render(x, false)
    }

    #[test]
    fn constant_two_root_two() {
        let v = view(4, &[2]);
        let got: Vec<String> = (2..=7).map(|d| r(&v.entry(5, 5 + d))).collect();
        assert_eq!(got, ["2√2", "7", "12√2", "41", "70√2", "239"]);
        assert!(v.entry(3, 4).is_one());
        assert_eq!(v.entry(4, 3), -v.entry(3, 4));
    }

    #[test]
    fn alternating_rows() {
        let v = view(4, &[2, 1]);
        let row = |d: i64| -> Vec<String> { (0..2).map(|i| r(&v.entry(i, i + d))).collect() };
        assert_eq!(row(3), ["3", "3"]);
        assert_eq!(row(4), ["2√2", "4√2"]);
        assert_eq!(row(5), ["5", "5"]);
        assert_eq!(row(6), ["3√2", "6√2"]);
        assert_eq!(row(7), ["7", "7"]);
    }

    #[test]
    fn positivity() {
        for p in 3..=8 {
            assert!(view(p, &[2]).positivity_check(40).is_ok());
        }
        match view(4, &[1]).positivity_check(10) {
            Err(Error::NotAnInfiniteFrieze { i: 0, j: 4, .. }) => {}
            other => panic!("{other:?}"),
        }
        match view(3, &[1]).positivity_check(10) {
            Err(Error::NotAnInfiniteFrieze { i: 0, j: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn reports() {
        let v = view(4, &[2, 1]);
        let th = theta_arcs(&v, 32).unwrap();
        assert!(th.classes().is_empty());
        assert_eq!(vertex_report(&v, &th, 0).unwrap().defect, 1);
        assert_eq!(vertex_report(&v, &th, 1).unwrap().defect, 0);
    }

    #[test]
    fn ladder_and_fan() {
        let ladder = to_strip(&view(4, &[2]), None).unwrap();
        assert_eq!(
            ladder,
            StripAngulation { p: 4, period: 1, peripheral: vec![], bridging: vec![(0, 0)], upper_advance: 1 }
        );
        let fan = to_strip(&view(4, &[2, 1]), None).unwrap();
        assert_eq!(
            fan,
            StripAngulation { p: 4, period: 2, peripheral: vec![], bridging: vec![(0, 0)], upper_advance: 0 }
        );
        let back = from_strip(&fan, Some(7)).unwrap();
        assert_eq!(back.quiddity.multiples(), &[2, 1]);
    }

    #[test]
    fn empty_strip_is_invalid() {
        let s = StripAngulation { p: 4, period: 1, peripheral: vec![], bridging: vec![], upper_advance: 0 };
        assert!(matches!(from_strip(&s, None), Err(Error::InvalidStrip(_))));
    }

    #[test]
    fn embedded_pentagon() {
        let s = StripAngulation {
            p: 3,
            period: 4,
            peripheral: vec![(0, 4), (1, 3), (1, 4)],
            bridging: vec![(0, 0)],
            upper_advance: 0,
        };
        let back = from_strip(&s, Some(12)).unwrap();
        assert_eq!(back.quiddity.multiples(), &[5, 3, 1, 2]);
        let v = InfiniteFriezeView::new(back.quiddity.clone());
        let th = theta_arcs(&v, 12).unwrap();
        assert_eq!(th.classes(), &[(0, 4), (1, 3), (1, 4)]);
        let f = extract_finite(&v, 0, 4).unwrap();
        assert_eq!(f.verify(), Ok(()));
        let q: Vec<String> = f.quiddity().iter().map(r).collect();
        assert_eq!(q, ["1", "3", "1", "2", "2"]);
        assert_eq!(to_strip(&v, Some(12)).unwrap(), s);
    }
}
