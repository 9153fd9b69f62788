//! JSON file formats.
//!
//! Integer coefficients are written as plain JSON numbers of arbitrary size.

use crate::cartan::{CartanGraph, CartanMatrix2, Objects, Root};
use crate::dissection::{build_dissection, Dissection, EntryTable};
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::frieze::FriezePattern;
use crate::strip::{PeriodicQuiddity, StripAngulation};
use num_bigint::BigInt;
use serde::de::{DeserializeOwned, Error as _};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::str::FromStr;

/// Coefficient vector a_0, a_1, … of an element in the power basis of λ_L.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coeffs(pub Vec<BigInt>);

impl Serialize for Coeffs {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let nums: Vec<serde_json::Number> = self
            .0
            .iter()
            .map(|c| serde_json::Number::from_str(&c.to_string()).expect("integers are valid JSON numbers"))
            .collect();
        nums.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Coeffs {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let nums = Vec::<serde_json::Number>::deserialize(d)?;
        nums.iter()
            .map(|n| BigInt::from_str(&n.to_string()).map_err(|_| D::Error::custom(format!("{n} is not an integer"))))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Coeffs)
    }
}

impl From<&FieldElement> for Coeffs {
    fn from(x: &FieldElement) -> Coeffs {
        Coeffs(x.coeffs().to_vec())
    }
}

fn element(ctx: &std::sync::Arc<FieldContext>, c: &Coeffs) -> FieldElement {
    FieldElement::from_coeffs(ctx, c.0.clone())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldElementFile {
    #[serde(rename = "L")]
    pub l: u32,
    pub coeffs: Coeffs,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DissectionFile {
    pub n: usize,
    pub diagonals: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EntryTableFile {
    pub n: usize,
    #[serde(rename = "L")]
    pub l: u32,
    pub entries: Vec<(usize, usize, Coeffs)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FriezeFile {
    pub n: usize,
    #[serde(rename = "L")]
    pub l: u32,
    pub quiddity: Vec<Coeffs>,
    pub rows: Vec<Vec<Coeffs>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuiddityFile {
    pub p: u32,
    pub period: usize,
    pub multiples: Vec<i64>,
}

/// A finite quiddity: explicit elements, or multiples of λ_p around the polygon.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FiniteQuiddityFile {
    Elements {
        #[serde(rename = "L")]
        l: u32,
        quiddity: Vec<Coeffs>,
    },
    Multiples(QuiddityFile),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StripFile {
    pub p: u32,
    pub period: usize,
    pub peripheral: Vec<[i64; 2]>,
    pub bridging: Vec<[i64; 2]>,
    pub upper_advance: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ObjectsField {
    Count(usize),
    Tag(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CartanFile {
    pub p: u32,
    pub objects: ObjectsField,
    pub rho1: Vec<i64>,
    pub rho2: Vec<i64>,
    pub matrices: Vec<CartanMatrix2>,
}

fn parse<T: DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("malformed {what} file: {e}")))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("file types serialize")
}

pub fn element_to_file(x: &FieldElement) -> FieldElementFile {
    FieldElementFile { l: x.l(), coeffs: x.into() }
}

pub fn read_element(text: &str) -> Result<FieldElement> {
    let f: FieldElementFile = parse(text, "field element")?;
    Ok(element(&FieldContext::new(f.l)?, &f.coeffs))
}

pub fn dissection_to_file(d: &Dissection) -> DissectionFile {
    DissectionFile {
        n: d.n(),
        diagonals: d.diagonal_list().into_iter().map(|(a, b)| [a, b]).collect(),
    }
}

pub fn read_dissection(text: &str) -> Result<Dissection> {
    let f: DissectionFile = parse(text, "dissection")?;
    let diags: Vec<(usize, usize)> = f.diagonals.iter().map(|d| (d[0], d[1])).collect();
    build_dissection(f.n, &diags)
}

pub fn entry_table_to_file(t: &EntryTable) -> EntryTableFile {
    let n = t.n();
    let entries = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, t.get(i as i64, j as i64).into()))
        .collect();
    EntryTableFile { n, l: t.ctx().l(), entries }
}

pub fn read_entry_table(text: &str) -> Result<EntryTable> {
    let f: EntryTableFile = parse(text, "entry table")?;
    let ctx = FieldContext::new(f.l)?;
    let mut values: Vec<Vec<Option<FieldElement>>> = vec![vec![None; f.n]; f.n];
    for (i, j, c) in &f.entries {
        if *i >= f.n || *j >= f.n {
            return Err(Error::InvalidArgument(format!("entry ({i},{j}) out of range")));
        }
        values[*i][*j] = Some(element(&ctx, c));
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            row.into_iter()
                .enumerate()
                .map(|(j, x)| x.ok_or_else(|| Error::InvalidArgument(format!("entry ({i},{j}) missing"))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    EntryTable::new(&ctx, values)
}

pub fn frieze_to_file(f: &FriezePattern) -> FriezeFile {
    FriezeFile {
        n: f.n(),
        l: f.ctx().l(),
        quiddity: f.quiddity().iter().map(Coeffs::from).collect(),
        rows: f.rows().iter().map(|r| r.iter().map(Coeffs::from).collect()).collect(),
    }
}

/// Frieze from its rows 1..=n-1; the quiddity field must agree with row 2.
pub fn read_frieze(text: &str) -> Result<FriezePattern> {
    let f: FriezeFile = parse(text, "frieze")?;
    let ctx = FieldContext::new(f.l)?;
    if f.rows.len() + 1 != f.n {
        return Err(Error::InvalidArgument(format!("expected {} rows, found {}", f.n - 1, f.rows.len())));
    }
    let rows: Vec<Vec<FieldElement>> = f.rows.iter().map(|r| r.iter().map(|c| element(&ctx, c)).collect()).collect();
    let pattern = FriezePattern::from_rows(&ctx, rows)?;
    let q: Vec<FieldElement> = f.quiddity.iter().map(|c| element(&ctx, c)).collect();
    if q != pattern.quiddity() {
        return Err(Error::InvalidArgument("quiddity field disagrees with row 2".into()));
    }
    Ok(pattern)
}

pub fn read_finite_quiddity(text: &str) -> Result<Vec<FieldElement>> {
    match parse::<FiniteQuiddityFile>(text, "quiddity")? {
        FiniteQuiddityFile::Elements { l, quiddity } => {
            let ctx = FieldContext::new(l)?;
            Ok(quiddity.iter().map(|c| element(&ctx, c)).collect())
        }
        FiniteQuiddityFile::Multiples(f) => {
            let q = periodic_from_file(f, true)?;
            Ok((0..q.period() as i64).map(|i| q.q(i)).collect())
        }
    }
}

pub fn quiddity_to_file(q: &PeriodicQuiddity) -> QuiddityFile {
    QuiddityFile {
        p: q.p(),
        period: q.period(),
        multiples: q.multiples().to_vec(),
    }
}

fn periodic_from_file(f: QuiddityFile, allow_zero: bool) -> Result<PeriodicQuiddity> {
    if f.period != f.multiples.len() {
        return Err(Error::InvalidArgument(format!(
            "period {} but {} multiples",
            f.period,
            f.multiples.len()
        )));
    }
    if allow_zero {
        PeriodicQuiddity::with_nonnegative(f.p, f.multiples)
    } else {
        PeriodicQuiddity::new(f.p, f.multiples)
    }
}

/// Periodic quiddity with multiples ≥ 1 (frieze use) or ≥ 0 (`allow_zero`, Cartan use).
pub fn read_quiddity(text: &str, allow_zero: bool) -> Result<PeriodicQuiddity> {
    periodic_from_file(parse(text, "quiddity")?, allow_zero)
}

pub fn strip_to_file(s: &StripAngulation) -> StripFile {
    StripFile {
        p: s.p,
        period: s.period,
        peripheral: s.peripheral.iter().map(|&(i, j)| [i, j]).collect(),
        bridging: s.bridging.iter().map(|&(u, v)| [u, v]).collect(),
        upper_advance: s.upper_advance,
    }
}

pub fn read_strip(text: &str) -> Result<StripAngulation> {
    let f: StripFile = parse(text, "strip")?;
    Ok(StripAngulation {
        p: f.p,
        period: f.period,
        peripheral: f.peripheral.iter().map(|a| (a[0], a[1])).collect(),
        bridging: f.bridging.iter().map(|a| (a[0], a[1])).collect(),
        upper_advance: f.upper_advance,
    })
}

pub fn graph_to_file(g: &CartanGraph) -> CartanFile {
    let (objects, rho1, rho2) = match g.objects() {
        Objects::Finite { rho1, rho2 } => (
            ObjectsField::Count(g.size()),
            rho1.iter().map(|&b| b as i64).collect(),
            rho2.iter().map(|&b| b as i64).collect(),
        ),
        Objects::Periodic { rho1, rho2 } => (ObjectsField::Tag("periodic".into()), rho1.clone(), rho2.clone()),
    };
    CartanFile {
        p: g.p(),
        objects,
        rho1,
        rho2,
        matrices: g.matrices().to_vec(),
    }
}

pub fn read_graph(text: &str) -> Result<CartanGraph> {
    let f: CartanFile = parse(text, "Cartan graph")?;
    match f.objects {
        ObjectsField::Count(n) => {
            if f.matrices.len() != n {
                return Err(Error::InvalidGraph(format!("{n} objects but {} matrices", f.matrices.len())));
            }
            let idx = |v: &[i64]| -> Result<Vec<usize>> {
                v.iter()
                    .map(|&b| usize::try_from(b).map_err(|_| Error::InvalidGraph(format!("object index {b}"))))
                    .collect()
            };
            CartanGraph::finite(f.p, idx(&f.rho1)?, idx(&f.rho2)?, f.matrices)
        }
        ObjectsField::Tag(t) if t == "periodic" => CartanGraph::periodic(f.p, f.rho1, f.rho2, f.matrices),
        ObjectsField::Tag(t) => Err(Error::InvalidArgument(format!("unknown objects tag {t:?}"))),
    }
}

/// Root dump: a list of coordinate pairs.
pub fn roots_to_json(roots: &[Root]) -> String {
    let pairs: Vec<[Coeffs; 2]> = roots.iter().map(|r| [(&r.x1).into(), (&r.x2).into()]).collect();
    to_json(&pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::graph_from_quiddity;
    use crate::dissection::all_entries;

    #[test]
    fn big_coefficients_round_trip() {
        let c = FieldContext::new(5).unwrap();
        let big = BigInt::from_str("123456789012345678901234567890").unwrap();
        let x = FieldElement::from_coeffs(&c, vec![big.clone(), -big]);
        let text = to_json(&element_to_file(&x));
        assert_eq!(read_element(&text).unwrap(), x);
    }

    #[test]
    fn files_round_trip() {
        let d = build_dissection(6, &[(0, 3)]).unwrap();
        assert_eq!(read_dissection(&to_json(&dissection_to_file(&d))).unwrap(), d);
        let t = all_entries(&d).unwrap();
        assert_eq!(read_entry_table(&to_json(&entry_table_to_file(&t))).unwrap(), t);
        let f = FriezePattern::from_entry_table(&t);
        assert_eq!(read_frieze(&to_json(&frieze_to_file(&f))).unwrap(), f);
        let q = PeriodicQuiddity::with_nonnegative(4, vec![0, 2]).unwrap();
        assert_eq!(read_quiddity(&to_json(&quiddity_to_file(&q)), true).unwrap(), q);
        assert!(read_quiddity(&to_json(&quiddity_to_file(&q)), false).is_err());
        let g = graph_from_quiddity(&q);
        assert_eq!(read_graph(&to_json(&graph_to_file(&g))).unwrap(), g);
        let s = StripAngulation { p: 4, period: 1, peripheral: vec![], bridging: vec![(0, 0)], upper_advance: 1 };
        assert_eq!(read_strip(&to_json(&strip_to_file(&s))).unwrap(), s);
    }

    #[test]
    fn finite_quiddity_forms() {
        let a = read_finite_quiddity(r#"{"L": 3, "quiddity": [[1],[2],[2],[1],[3]]}"#).unwrap();
        assert_eq!(a.len(), 5);
        let b = read_finite_quiddity(r#"{"p": 4, "period": 4, "multiples": [1,1,1,1]}"#).unwrap();
        assert_eq!(b[0], FieldElement::lambda(&FieldContext::new(4).unwrap()));
        assert!(matches!(read_finite_quiddity("{"), Err(Error::InvalidArgument(_))));
    }
}
