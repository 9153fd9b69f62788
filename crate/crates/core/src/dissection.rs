//! Polygon dissections, their quiddity rows and the dual-tree labelling that yields
//! every frieze entry.

use crate::chebyshev::v_values_at_lambda;
use crate::error::{invalid, Error, Result};
use crate::field::{embed_lambda, FieldContext, FieldElement};
use num_integer::Integer;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

/// An n-gon (vertices 0..n counterclockwise) cut by pairwise non-crossing diagonals.
#[derive(Debug, Clone)]
pub struct Dissection {
    n: usize,
    diagonals: BTreeSet<(usize, usize)>,
    cells: Vec<Vec<usize>>,
    ctx: Arc<FieldContext>,
}

impl PartialEq for Dissection {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.diagonals == other.diagonals
    }
}

impl Eq for Dissection {}

fn crosses(a: (usize, usize), b: (usize, usize)) -> bool {
    let ((i, k), (j, l)) = if a.0 < b.0 { (a, b) } else { (b, a) };
    i < j && j < k && k < l
}

/// Validate the diagonal list and derive the cells.
pub fn build_dissection(n: usize, diagonals: &[(usize, usize)]) -> Result<Dissection> {
    if n < 3 {
        return invalid(format!("a polygon needs at least 3 vertices, got {n}"));
    }
    let mut set = BTreeSet::new();
    for &(a, b) in diagonals {
        if a >= n || b >= n {
            return invalid(format!("diagonal ({a},{b}) out of range for n={n}"));
        }
        let (i, j) = (a.min(b), a.max(b));
        if j - i < 2 || (i == 0 && j == n - 1) {
            return invalid(format!("({a},{b}) is not a diagonal"));
        }
        if !set.insert((i, j)) {
            return invalid(format!("duplicate diagonal ({i},{j})"));
        }
    }
    let list: Vec<_> = set.iter().copied().collect();
    for (x, &a) in list.iter().enumerate() {
        for &b in &list[x + 1..] {
            if crosses(a, b) {
                return Err(Error::Crossing { first: a, second: b });
            }
        }
    }
    let cells = walk_cells(n, &set);
    let l = cells.iter().fold(1usize, |acc, c| acc.lcm(&c.len()));
    let ctx = FieldContext::new(l as u32)?;
    Ok(Dissection {
        n,
        diagonals: set,
        cells,
        ctx,
    })
}

/// Faces of the planar subdivision, each as a cyclic vertex list starting at its minimum.
fn walk_cells(n: usize, diagonals: &BTreeSet<(usize, usize)>) -> Vec<Vec<usize>> {
    let mut nbrs: Vec<Vec<usize>> = (0..n).map(|v| vec![(v + 1) % n, (v + n - 1) % n]).collect();
    for &(i, j) in diagonals {
        nbrs[i].push(j);
        nbrs[j].push(i);
    }
    // Sort by the angular order seen from v, which for a convex polygon is (w - v) mod n.
    for (v, list) in nbrs.iter_mut().enumerate() {
        list.sort_by_key(|&w| (w + n - v) % n);
    }
    let mut darts: Vec<(usize, usize)> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    for &(i, j) in diagonals {
        darts.push((i, j));
        darts.push((j, i));
    }
    let mut seen = BTreeSet::new();
    let mut cells = Vec::new();
    for start in darts {
        if seen.contains(&start) {
            continue;
        }
        let mut cell = Vec::new();
        let (mut u, mut v) = start;
        loop {
            seen.insert((u, v));
            cell.push(u);
            // Next vertex: the neighbour of v immediately before u in the angular order.
            let back = (u + n - v) % n;
            let w = *nbrs[v]
                .iter()
                .rev()
                .find(|&&w| (w + n - v) % n < back)
                .expect("every vertex has a forward neighbour");
            u = v;
            v = w;
            if (u, v) == start {
                break;
            }
        }
        let pos = (0..cell.len()).min_by_key(|&k| cell[k]).unwrap();
        cell.rotate_left(pos);
        cells.push(cell);
    }
    cells.sort();
    cells
}

impl Dissection {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diagonals(&self) -> &BTreeSet<(usize, usize)> {
        &self.diagonals
    }

    pub fn diagonal_list(&self) -> Vec<(usize, usize)> {
        self.diagonals.iter().copied().collect()
    }

    /// Cells as counterclockwise vertex cycles.
    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn cell_sizes(&self) -> BTreeSet<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    /// `Some(p)` when every cell is a p-gon.
    pub fn uniform_cell_size(&self) -> Option<usize> {
        let sizes = self.cell_sizes();
        (sizes.len() == 1).then(|| *sizes.iter().next().unwrap())
    }

    pub fn is_diagonal(&self, a: usize, b: usize) -> bool {
        self.diagonals.contains(&(a.min(b), a.max(b)))
    }
}

/// c_i = Σ λ_{|cell|} over the cells at vertex i.
pub fn quiddity(d: &Dissection) -> Vec<FieldElement> {
    let mut out = vec![FieldElement::zero(&d.ctx); d.n];
    for cell in &d.cells {
        let lam = embed_lambda(cell.len() as u32, &d.ctx).expect("cell size divides L");
        for &v in cell {
            out[v] = &out[v] + &lam;
        }
    }
    out
}

/// Labels c_{i,j} for all j, by breadth-first search over the dual tree.
pub fn entries_from_vertex(d: &Dissection, i: usize) -> Result<Vec<FieldElement>> {
    if i >= d.n {
        return invalid(format!("vertex {i} out of range for n={}", d.n));
    }
    let mut vtab: BTreeMap<usize, Vec<FieldElement>> = BTreeMap::new();
    for cell in &d.cells {
        let q = cell.len();
        if !vtab.contains_key(&q) {
            vtab.insert(q, v_values_at_lambda(q as u32, &d.ctx)?);
        }
    }
    // V_k(λ_q) lives at index k + 1.
    let v = |q: usize, k: usize| -> &FieldElement { &vtab[&q][k + 1] };

    // Dual adjacency through diagonals.
    let mut by_diag: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (c, cell) in d.cells.iter().enumerate() {
        for k in 0..cell.len() {
            let (a, b) = (cell[k], cell[(k + 1) % cell.len()]);
            let key = (a.min(b), a.max(b));
            if d.diagonals.contains(&key) {
                by_diag.entry(key).or_default().push(c);
            }
        }
    }

    let mut labels: Vec<Option<FieldElement>> = vec![None; d.n];
    labels[i] = Some(FieldElement::zero(&d.ctx));
    let mut done = vec![false; d.cells.len()];
    let mut queue = VecDeque::new();
    for (c, cell) in d.cells.iter().enumerate() {
        let Some(pos) = cell.iter().position(|&x| x == i) else {
            continue;
        };
        let q = cell.len();
        for (k, &vert) in cell.iter().enumerate() {
            let dist = (k + q - pos) % q;
            if dist > 0 {
                set_label(&mut labels, vert, v(q, dist - 1).clone());
            }
        }
        done[c] = true;
        queue.push_back(c);
    }
    while let Some(c) = queue.pop_front() {
        let cell = &d.cells[c];
        for k in 0..cell.len() {
            let (s, t) = (cell[k], cell[(k + 1) % cell.len()]);
            let key = (s.min(t), s.max(t));
            let Some(nbr) = by_diag.get(&key) else {
                continue;
            };
            for &c2 in nbr {
                if done[c2] {
                    continue;
                }
                done[c2] = true;
                let cell2 = &d.cells[c2];
                let q = cell2.len();
                let ps = cell2.iter().position(|&x| x == s).unwrap();
                let pt = cell2.iter().position(|&x| x == t).unwrap();
                let a = labels[s].clone().expect("entered through a labelled edge");
                let b = labels[t].clone().expect("entered through a labelled edge");
                // Distance from s avoiding t runs away from t around the cycle.
                let forward = (pt + q - ps) % q != 1;
                for (pk, &vert) in cell2.iter().enumerate() {
                    let dist = if forward { (pk + q - ps) % q } else { (ps + q - pk) % q };
                    let label = if dist == 0 {
                        a.clone()
                    } else if dist == q - 1 {
                        b.clone()
                    } else {
                        &(&a * v(q, q - dist - 2)) + &(&b * v(q, dist - 1))
                    };
                    set_label(&mut labels, vert, label);
                }
                queue.push_back(c2);
            }
        }
    }
    labels
        .into_iter()
        .enumerate()
        .map(|(j, l)| l.ok_or_else(|| Error::InternalInconsistency(format!("vertex {j} unlabelled"))))
        .collect()
}

fn set_label(labels: &mut [Option<FieldElement>], v: usize, value: FieldElement) {
    match &labels[v] {
        Some(old) => debug_assert_eq!(*old, value, "label of vertex {v} is path dependent"),
        None => labels[v] = Some(value),
    }
}

/// Symmetric n×n table of all c_{i,j}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryTable {
    n: usize,
    ctx: Arc<FieldContext>,
    values: Vec<Vec<FieldElement>>,
}

impl EntryTable {
    pub fn new(ctx: &Arc<FieldContext>, values: Vec<Vec<FieldElement>>) -> Result<EntryTable> {
        let n = values.len();
        if values.iter().any(|r| r.len() != n) {
            return invalid("entry table must be square");
        }
        if values.iter().flatten().any(|x| x.l() != ctx.l()) {
            return invalid("entry table mixes contexts");
        }
        Ok(EntryTable {
            n,
            ctx: ctx.clone(),
            values,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    /// c_{i,j}, indices reduced modulo n.
    pub fn get(&self, i: i64, j: i64) -> &FieldElement {
        let n = self.n as i64;
        &self.values[i.rem_euclid(n) as usize][j.rem_euclid(n) as usize]
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.values
    }
}

pub fn all_entries(d: &Dissection) -> Result<EntryTable> {
    let values = (0..d.n)
        .map(|i| entries_from_vertex(d, i))
        .collect::<Result<Vec<_>>>()?;
    EntryTable::new(&d.ctx, values)
}

/// Diagonal sets of all p-angulations of the n-gon; the cell through edge (n-1, 0)
/// is chosen first and the remaining sub-polygons are filled recursively.
pub fn enumerate_p_angulation_diagonals(n: usize, p: usize) -> Vec<Vec<(usize, usize)>> {
    if p < 3 || n < 3 || (n - 2) % (p - 2) != 0 {
        return Vec::new();
    }
    let verts: Vec<usize> = (0..n).collect();
    let mut out: Vec<Vec<(usize, usize)>> = fill(&verts, p)
        .into_iter()
        .map(|mut v| {
            v.sort();
            v
        })
        .collect();
    out.sort();
    out
}

fn fill(verts: &[usize], p: usize) -> Vec<Vec<(usize, usize)>> {
    let k = verts.len();
    if k == 2 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut chosen = vec![0usize];
    choose_cell(verts, p, &mut chosen, &mut out);
    out
}

fn gap_ok(g: usize, p: usize) -> bool {
    g == 1 || (g + 1 >= p && (g - 1) % (p - 2) == 0)
}

fn choose_cell(verts: &[usize], p: usize, chosen: &mut Vec<usize>, out: &mut Vec<Vec<(usize, usize)>>) {
    let k = verts.len();
    let last = *chosen.last().unwrap();
    if chosen.len() == p - 1 {
        if !gap_ok(k - 1 - last, p) {
            return;
        }
        chosen.push(k - 1);
        let mut partial: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
        for w in chosen.windows(2) {
            let (a, b) = (w[0], w[1]);
            if b - a < 2 {
                continue;
            }
            let sub = fill(&verts[a..=b], p);
            let diag = (verts[a], verts[b]);
            partial = partial
                .iter()
                .flat_map(|pre| {
                    sub.iter().map(move |s| {
                        let mut v = pre.clone();
                        v.push(diag);
                        v.extend_from_slice(s);
                        v
                    })
                })
                .collect();
        }
        out.extend(partial);
        chosen.pop();
        return;
    }
    for next in last + 1..k - 1 {
        if gap_ok(next - last, p) {
            chosen.push(next);
            choose_cell(verts, p, chosen, out);
            chosen.pop();
        }
    }
}

pub fn enumerate_p_angulations(n: usize, p: usize) -> Result<Vec<Dissection>> {
    enumerate_p_angulation_diagonals(n, p)
        .iter()
        .map(|d| build_dissection(n, d))
        .collect()
}
