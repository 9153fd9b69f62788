//! Finite frieze patterns.
//!
//! Entries are f_{i,j} with f_{i,i} = 0, f_{i,i+1} = 1, f_{i,i+2} the quiddity entry at
//! vertex i+1, and periodicity f_{i,j} = f_{i+n,j+n}. Row r holds the f_{i,i+r}, so the
//! bottom row of 1s is row 1 and the top row of 1s is row n-1.

use crate::dissection::{all_entries, build_dissection, Dissection, EntryTable};
use crate::error::{invalid, Error, Result};
use crate::field::{as_integer_multiple, FieldContext, FieldElement, Sign};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FriezePattern {
    n: usize,
    ctx: Arc<FieldContext>,
    /// table[i][d] = f_{i,i+d}, 0 ≤ i < n, 0 ≤ d ≤ n.
    table: Vec<Vec<FieldElement>>,
}

/// First relation found broken by [`FriezePattern::verify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Boundary { i: usize, j: usize },
    Diamond { i: usize, j: usize },
    Positivity { i: usize, j: usize },
    Ptolemy { i: usize, k: usize, j: usize, l: usize },
    Glide { i: usize, j: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Boundary { i, j } => write!(f, "boundary entry f({i},{j}) is wrong"),
            Violation::Diamond { i, j } => {
                write!(f, "diamond f({i},{j})·f({},{}) - f({i},{})·f({},{j}) ≠ 1", i + 1, j + 1, j + 1, i + 1)
            }
            Violation::Positivity { i, j } => write!(f, "entry f({i},{j}) is not positive"),
            Violation::Ptolemy { i, k, j, l } => write!(f, "Ptolemy relation fails for ({i},{j}) x ({k},{l})"),
            Violation::Glide { i, j } => write!(f, "glide symmetry fails at f({i},{j})"),
        }
    }
}

impl FriezePattern {
    /// Propagate a quiddity row (q[v] is the entry at vertex v) and check closure and positivity.
    pub fn from_quiddity(q: &[FieldElement]) -> Result<FriezePattern> {
        let n = q.len();
        if n < 3 {
            return invalid(format!("a frieze needs n ≥ 3, got {n}"));
        }
        let ctx = q[0].ctx().clone();
        if let Some(bad) = q.iter().find(|x| x.l() != ctx.l()) {
            return Err(Error::ContextMismatch { left: ctx.l(), right: bad.l() });
        }
        let table: Vec<Vec<FieldElement>> = (0..n)
            .map(|i| {
                let mut row = vec![FieldElement::zero(&ctx), FieldElement::one(&ctx)];
                for d in 1..n {
                    let j = i + d;
                    let next = &(&row[d] * &q[j % n]) - &row[d - 1];
                    row.push(next);
                }
                row
            })
            .collect();
        for (i, row) in table.iter().enumerate() {
            if !row[n - 1].is_one() {
                return Err(Error::NotAFrieze { row: n - 1, column: i });
            }
        }
        for (i, row) in table.iter().enumerate() {
            if !row[n].is_zero() {
                return Err(Error::NotAFrieze { row: n, column: i });
            }
        }
        for d in 2..n.saturating_sub(1) {
            for (i, row) in table.iter().enumerate() {
                if row[d].sign() != Sign::Positive {
                    return Err(Error::PositivityFailure { i: i as i64, j: (i + d) as i64 });
                }
            }
        }
        Ok(FriezePattern { n, ctx, table })
    }

    /// Frieze read off a symmetric entry table (f_{i,j} = c_{i, j mod n}); not verified.
    pub fn from_entry_table(t: &EntryTable) -> FriezePattern {
        let n = t.n();
        let table = (0..n)
            .map(|i| (0..=n).map(|d| t.get(i as i64, (i + d) as i64).clone()).collect())
            .collect();
        FriezePattern { n, ctx: t.ctx().clone(), table }
    }

    /// Frieze from rows 1..=n-1 (rows[r-1][i] = f_{i,i+r}); not verified.
    pub fn from_rows(ctx: &Arc<FieldContext>, rows: Vec<Vec<FieldElement>>) -> Result<FriezePattern> {
        let n = rows.len() + 1;
        if n < 3 || rows.iter().any(|r| r.len() != n) {
            return invalid("frieze rows must be n-1 rows of length n, n ≥ 3");
        }
        if rows.iter().flatten().any(|x| x.l() != ctx.l()) {
            return invalid("frieze rows mix contexts");
        }
        let table = (0..n)
            .map(|i| {
                let mut row = vec![FieldElement::zero(ctx)];
                row.extend(rows.iter().map(|r| r[i].clone()));
                row.push(FieldElement::zero(ctx));
                row
            })
            .collect();
        Ok(FriezePattern { n, ctx: ctx.clone(), table })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of rows strictly between the two rows of 1s.
    pub fn height(&self) -> usize {
        self.n - 3
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    /// f_{i,j} for any i ≤ j ≤ i+n.
    pub fn get(&self, i: i64, j: i64) -> &FieldElement {
        let n = self.n as i64;
        let d = j - i;
        assert!((0..=n).contains(&d), "f({i},{j}) lies outside the frieze band");
        &self.table[i.rem_euclid(n) as usize][d as usize]
    }

    /// Replace f_{i,j} (and nothing else); used to build perturbed patterns.
    pub fn with_entry(&self, i: usize, j: usize, value: FieldElement) -> FriezePattern {
        let mut out = self.clone();
        out.table[i % self.n][j - i] = value;
        out
    }

    /// Row r: (f_{0,r}, f_{1,1+r}, ..., f_{n-1,n-1+r}).
    pub fn row(&self, r: usize) -> Vec<FieldElement> {
        self.table.iter().map(|t| t[r].clone()).collect()
    }

    /// Rows 1..=n-1.
    pub fn rows(&self) -> Vec<Vec<FieldElement>> {
        (1..self.n).map(|r| self.row(r)).collect()
    }

    /// Quiddity indexed by vertex: q[v] = f_{v-1,v+1}.
    pub fn quiddity(&self) -> Vec<FieldElement> {
        (0..self.n as i64).map(|v| self.get(v - 1, v + 1).clone()).collect()
    }

    pub fn verify(&self) -> std::result::Result<(), Violation> {
        let n = self.n;
        let f = |i: usize, j: usize| self.get(i as i64, j as i64);
        for i in 0..n {
            if !f(i, i).is_zero() || !f(i, i + n).is_zero() {
                return Err(Violation::Boundary { i, j: if f(i, i).is_zero() { i + n } else { i } });
            }
            if !f(i, i + 1).is_one() {
                return Err(Violation::Boundary { i, j: i + 1 });
            }
            if !f(i, i + n - 1).is_one() {
                return Err(Violation::Boundary { i, j: i + n - 1 });
            }
        }
        for d in 1..n {
            for i in 0..n {
                let j = i + d;
                let det = &(f(i, j) * f(i + 1, j + 1)) - &(f(i, j + 1) * f(i + 1, j));
                if !det.is_one() {
                    return Err(Violation::Diamond { i, j });
                }
            }
        }
        for d in 1..n {
            for i in 0..n {
                if f(i, i + d).sign() != Sign::Positive {
                    return Err(Violation::Positivity { i, j: i + d });
                }
            }
        }
        for i in 0..n {
            for k in i + 1..n {
                for j in k + 1..n {
                    for l in j + 1..n {
                        let lhs = f(i, j) * f(k, l);
                        let rhs = &(f(i, k) * f(j, l)) + &(f(i, l) * f(k, j));
                        if lhs != rhs {
                            return Err(Violation::Ptolemy { i, k, j, l });
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in i..=i + n {
                if f(i, j) != f(j, i + n) {
                    return Err(Violation::Glide { i, j });
                }
            }
        }
        Ok(())
    }

    /// All p in 3..=p_max (default L) whose λ_p divides every quiddity entry.
    pub fn type_of(&self, p_max: Option<u32>) -> BTreeSet<u32> {
        let l = self.ctx.l();
        let q = self.quiddity();
        let mut out = BTreeSet::new();
        for p in 3..=p_max.unwrap_or(l) {
            let all = q.iter().all(|x| {
                let m = if p == 3 {
                    x.as_rational_integer()
                } else if l % p == 0 {
                    as_integer_multiple(x, p).ok().flatten()
                } else {
                    None
                };
                m.is_some_and(|m| m.is_positive())
            });
            if all {
                out.insert(p);
            }
        }
        out
    }

    /// Diagonals are the positions of interior 1s; the result must reproduce the pattern.
    pub fn to_dissection(&self) -> Result<Dissection> {
        let n = self.n;
        let mut diags = Vec::new();
        for i in 0..n {
            for j in i + 2..n {
                if (i, j) != (0, n - 1) && self.get(i as i64, j as i64).is_one() {
                    diags.push((i, j));
                }
            }
        }
        let d = build_dissection(n, &diags).map_err(|e| Error::ReconstructionFailure(e.to_string()))?;
        let t = all_entries(&d)?;
        let l = self.ctx.l().lcm(&d.ctx().l());
        let big = FieldContext::new(l)?;
        for i in 0..n {
            for j in i + 1..n {
                let mine = self.get(i as i64, j as i64).lift_to(&big)?;
                let theirs = t.get(i as i64, j as i64).lift_to(&big)?;
                if mine != theirs {
                    return Err(Error::ReconstructionFailure(format!(
                        "entry ({i},{j}) differs from the dissection label"
                    )));
                }
            }
        }
        Ok(d)
    }

    /// Row-parity structure for p = 4 and p = 6.
    pub fn characterize_46(&self) -> Char46Report {
        let rows: Vec<(usize, Vec<FieldElement>)> = (1..self.n).map(|r| (r, self.row(r))).collect();
        Char46Report {
            p4: row_structure(4, &rows),
            p6: row_structure(6, &rows),
        }
    }
}

/// Which parts of the Λ_4 / Λ_6 row characterization hold for one p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowStructure {
    /// Odd-numbered rows are positive rational integers.
    pub odd_rows_integral: bool,
    /// Even-numbered rows are positive integral multiples of λ_p.
    pub even_rows_multiples: bool,
    /// p = 4: odd-row integers are odd; p = 6: row 2k+1 is ≡ (-1)^k mod 3.
    pub congruence: bool,
}

impl RowStructure {
    pub fn holds(&self) -> bool {
        self.odd_rows_integral && self.even_rows_multiples
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Char46Report {
    pub p4: RowStructure,
    pub p6: RowStructure,
}

/// `rows` are (row number, entries) pairs with the row of 1s numbered 1.
pub fn row_structure(p: u32, rows: &[(usize, Vec<FieldElement>)]) -> RowStructure {
    let mut odd_ok = true;
    let mut even_ok = true;
    let mut cong = true;
    for (r, entries) in rows {
        for x in entries {
            if r % 2 == 1 {
                match x.as_rational_integer() {
                    Some(v) if v.is_positive() => {
                        let k = (r - 1) / 2;
                        cong &= match p {
                            4 => v.is_odd(),
                            6 => {
                                let want = if k % 2 == 0 { 1 } else { 2 };
                                v.mod_floor(&BigInt::from(3)) == BigInt::from(want)
                            }
                            _ => true,
                        };
                    }
                    _ => {
                        odd_ok = false;
                        cong = false;
                    }
                }
            } else {
                let m = if x.l() % p == 0 {
                    as_integer_multiple(x, p).ok().flatten()
                } else {
                    None
                };
                if !m.is_some_and(|m| m.is_positive()) {
                    even_ok = false;
                }
            }
        }
    }
    RowStructure {
        odd_rows_integral: odd_ok,
        even_rows_multiples: even_ok,
        congruence: cong && odd_ok,
    }
}

/// Every entry is 1 or at least λ_p (compared in the entry's own context, p | L or p = 3).
pub fn within_bounds(x: &FieldElement, p: u32) -> bool {
    if x.is_one() {
        return true;
    }
    let lam = if p == 3 {
        FieldElement::one(x.ctx())
    } else {
        match crate::field::embed_lambda(p, x.ctx()) {
            Ok(l) => l,
            Err(_) => return false,
        }
    };
    (x - &lam).sign() != Sign::Negative
}
