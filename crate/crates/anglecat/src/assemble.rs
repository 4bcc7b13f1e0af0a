//! Symbolic block layouts of the sequences built from the rows of a ladder
//! or octahedron: rotation, mapping cones, the pushout row and the long
//! octahedral sequence.  A layout is rendered for golden comparison and
//! realized against concrete rows.  A [`Mutation`] flips the sign of one
//! entry, which lets tests check that every sign is load-bearing.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::category::{Mor, Obj};
use crate::sequence::NSequence;
use crate::work::Work;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Row {
    A,
    B,
    C,
}

/// `X_idx` of a row, or `ΣX_idx`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Part {
    pub row: Row,
    pub idx: usize,
    pub sigma: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Row(Row),
    F,
    G,
    H,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sym {
    pub kind: Kind,
    pub idx: usize,
    pub sigma: bool,
}

/// `±chain[0] ∘ chain[1] ∘ …` placed at block `(row, col)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub row: usize,
    pub col: usize,
    pub neg: bool,
    pub chain: Vec<Sym>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMap {
    pub rows: Vec<Part>,
    pub cols: Vec<Part>,
    pub entries: Vec<Entry>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LayoutKind {
    /// Left rotation `A1 → … → ΣA0 → ΣA1`.
    Rotation,
    /// Mapping cone of a ladder `(f_0, …, f_{n+1})`.
    Cone,
    /// The cone variant for ladders with `f_0 = 1`, starting at `A1`.
    ConeFixed,
    /// `A1 → A2⊕B1 → … → B_{n+1} → ΣA1` with alternating `f` signs, the
    /// source of the `[h g]` ladder into the third row.
    Pushout,
    /// The octahedral sequence `A2 → A3⊕B2 → … → C_{n+1} → ΣA2`.
    Long,
}

impl LayoutKind {
    pub const ALL: [LayoutKind; 5] = [LayoutKind::Rotation, LayoutKind::Cone, LayoutKind::ConeFixed, LayoutKind::Pushout, LayoutKind::Long];

    pub fn name(self) -> &'static str {
        match self {
            LayoutKind::Rotation => "rotation",
            LayoutKind::Cone => "cone",
            LayoutKind::ConeFixed => "cone-fixed",
            LayoutKind::Pushout => "pushout",
            LayoutKind::Long => "long",
        }
    }
}

/// Flips the sign of `entry` in map `map` of the `kind` layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mutation {
    pub kind: LayoutKind,
    pub map: usize,
    pub entry: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqLayout {
    pub kind: LayoutKind,
    pub n: usize,
    pub maps: Vec<BlockMap>,
}

fn part(row: Row, idx: usize) -> Part {
    Part { row, idx, sigma: false }
}

fn spart(row: Row, idx: usize) -> Part {
    Part { row, idx, sigma: true }
}

fn sym(kind: Kind, idx: usize) -> Sym {
    Sym { kind, idx, sigma: false }
}

fn ssym(kind: Kind, idx: usize) -> Sym {
    Sym { kind, idx, sigma: true }
}

const A: Kind = Kind::Row(Row::A);
const B: Kind = Kind::Row(Row::B);
const C: Kind = Kind::Row(Row::C);

fn e(row: usize, col: usize, neg: bool, s: Sym) -> Entry {
    Entry { row, col, neg, chain: vec![s] }
}

fn ec(row: usize, col: usize, neg: bool, chain: Vec<Sym>) -> Entry {
    Entry { row, col, neg, chain }
}

/// `A_k`, with `A_{n+2}` standing for `ΣA0`.
fn a_obj(n: usize, k: usize) -> Part {
    if k == n + 2 {
        spart(Row::A, 0)
    } else {
        part(Row::A, k)
    }
}

pub fn rotation(n: usize) -> SeqLayout {
    let mut maps = Vec::new();
    for k in 1..=n + 1 {
        maps.push(BlockMap { rows: vec![a_obj(n, k + 1)], cols: vec![a_obj(n, k)], entries: vec![e(0, 0, false, sym(A, k))] });
    }
    maps.push(BlockMap { rows: vec![spart(Row::A, 1)], cols: vec![spart(Row::A, 0)], entries: vec![e(0, 0, n % 2 == 1, ssym(A, 0))] });
    SeqLayout { kind: LayoutKind::Rotation, n, maps }
}

/// `A_{k+1} ⊕ B_k → A_{k+2} ⊕ B_{k+1}` via `[[-a, 0], [f, b]]`, then
/// `[[-Σa0, 0], [Σf0, b_{n+1}]]`.
pub fn cone(n: usize) -> SeqLayout {
    let mut maps = Vec::new();
    for k in 0..=n {
        let m = k + 1;
        maps.push(BlockMap {
            rows: vec![a_obj(n, m + 1), part(Row::B, m)],
            cols: vec![a_obj(n, m), part(Row::B, m - 1)],
            entries: vec![e(0, 0, true, sym(A, m)), e(1, 0, false, sym(Kind::F, m)), e(1, 1, false, sym(B, m - 1))],
        });
    }
    maps.push(BlockMap {
        rows: vec![spart(Row::A, 1), spart(Row::B, 0)],
        cols: vec![spart(Row::A, 0), part(Row::B, n + 1)],
        entries: vec![e(0, 0, true, ssym(A, 0)), e(1, 0, false, ssym(Kind::F, 0)), e(1, 1, false, sym(B, n + 1))],
    });
    SeqLayout { kind: LayoutKind::Cone, n, maps }
}

/// Shared by [`cone_fixed`] and [`pushout`]: `A1 → A2⊕B1 → … → B_{n+1} → ΣA1`
/// where `sign_a(m)`/`sign_f(m)` give the negation flags of `a_m`/`f_m`.
fn fixed_shape(kind: LayoutKind, n: usize, neg_a: impl Fn(usize) -> bool, neg_f: impl Fn(usize) -> bool) -> SeqLayout {
    let mut maps = vec![BlockMap {
        rows: vec![part(Row::A, 2), part(Row::B, 1)],
        cols: vec![part(Row::A, 1)],
        entries: vec![e(0, 0, true, sym(A, 1)), e(1, 0, false, sym(Kind::F, 1))],
    }];
    for m in 2..=n {
        maps.push(BlockMap {
            rows: vec![part(Row::A, m + 1), part(Row::B, m)],
            cols: vec![part(Row::A, m), part(Row::B, m - 1)],
            entries: vec![e(0, 0, neg_a(m), sym(A, m)), e(1, 0, neg_f(m), sym(Kind::F, m)), e(1, 1, false, sym(B, m - 1))],
        });
    }
    maps.push(BlockMap {
        rows: vec![part(Row::B, n + 1)],
        cols: vec![part(Row::A, n + 1), part(Row::B, n)],
        entries: vec![e(0, 0, neg_f(n + 1), sym(Kind::F, n + 1)), e(0, 1, false, sym(B, n))],
    });
    maps.push(BlockMap {
        rows: vec![spart(Row::A, 1)],
        cols: vec![part(Row::B, n + 1)],
        entries: vec![ec(0, 0, false, vec![ssym(A, 0), sym(B, n + 1)])],
    });
    SeqLayout { kind, n, maps }
}

pub fn cone_fixed(n: usize) -> SeqLayout {
    fixed_shape(LayoutKind::ConeFixed, n, |_| true, |_| false)
}

/// `[[a_m, 0], [(-1)^m f_m, b_{m-1}]]` in the middle and
/// `[(-1)^{n+1} f_{n+1}, b_n]` before the last map.
pub fn pushout(n: usize) -> SeqLayout {
    fixed_shape(LayoutKind::Pushout, n, |_| false, |m| m % 2 == 1)
}

/// Objects of the long sequence: `E_k = A_{k+2} ⊕ B_{k+1} ⊕ C_k` with the
/// summands that do not exist deleted.
fn long_parts(n: usize, k: usize) -> Vec<Part> {
    let mut v = Vec::new();
    if k + 2 <= n + 1 {
        v.push(part(Row::A, k + 2));
    }
    if (2..=n + 1).contains(&(k + 1)) {
        v.push(part(Row::B, k + 1));
    }
    if (2..=n + 1).contains(&k) {
        v.push(part(Row::C, k));
    }
    v
}

pub fn long(n: usize) -> SeqLayout {
    let mut maps = Vec::new();
    let find = |parts: &[Part], row: Row| parts.iter().position(|p| p.row == row);
    for k in 0..=n {
        let cols = long_parts(n, k);
        let rows = long_parts(n, k + 1);
        let mut entries = Vec::new();
        let (ra, rb, rc) = (find(&rows, Row::A), find(&rows, Row::B), find(&rows, Row::C));
        let (ca, cb, cc) = (find(&cols, Row::A), find(&cols, Row::B), find(&cols, Row::C));
        if k == 0 {
            if let Some(r) = ra {
                entries.push(e(r, 0, false, sym(A, 2)));
            }
            entries.push(e(rb.unwrap(), 0, false, sym(Kind::F, 2)));
        } else {
            // [[-a_{k+2}, 0, 0], [(-1)^{k-1} f_{k+2}, -b_{k+1}, 0], [h_{k+2}, g_{k+1}, c_k]]
            if let (Some(r), Some(c)) = (ra, ca) {
                entries.push(e(r, c, true, sym(A, k + 2)));
            }
            if let Some(r) = rb {
                if let Some(c) = ca {
                    entries.push(e(r, c, k % 2 == 0, sym(Kind::F, k + 2)));
                }
                if let Some(c) = cb {
                    entries.push(e(r, c, true, sym(B, k + 1)));
                }
            }
            if let Some(r) = rc {
                if let Some(c) = ca {
                    entries.push(e(r, c, false, sym(Kind::H, k + 2)));
                }
                if let Some(c) = cb {
                    entries.push(e(r, c, false, sym(Kind::G, k + 1)));
                }
                if let Some(c) = cc {
                    entries.push(e(r, c, false, sym(C, k)));
                }
            }
        }
        entries.sort_by_key(|x| (x.row, x.col));
        maps.push(BlockMap { rows, cols, entries });
    }
    maps.push(BlockMap {
        rows: vec![spart(Row::A, 2)],
        cols: vec![part(Row::C, n + 1)],
        entries: vec![ec(0, 0, false, vec![ssym(A, 1), sym(C, n + 1)])],
    });
    SeqLayout { kind: LayoutKind::Long, n, maps }
}

pub fn layout(kind: LayoutKind, n: usize) -> SeqLayout {
    match kind {
        LayoutKind::Rotation => rotation(n),
        LayoutKind::Cone => cone(n),
        LayoutKind::ConeFixed => cone_fixed(n),
        LayoutKind::Pushout => pushout(n),
        LayoutKind::Long => long(n),
    }
}

impl SeqLayout {
    pub fn mutations(&self) -> Vec<Mutation> {
        let mut out = Vec::new();
        for (map, m) in self.maps.iter().enumerate() {
            for entry in 0..m.entries.len() {
                out.push(Mutation { kind: self.kind, map, entry });
            }
        }
        out
    }

    pub fn mutated(mut self, m: Option<Mutation>) -> SeqLayout {
        if let Some(m) = m {
            if m.kind == self.kind {
                if let Some(x) = self.maps.get_mut(m.map).and_then(|b| b.entries.get_mut(m.entry)) {
                    x.neg = !x.neg;
                }
            }
        }
        self
    }

    /// One line per map, e.g. `[[-a1, 0], [f1, b0]]`.
    pub fn render(&self) -> Vec<String> {
        self.maps.iter().map(|m| m.to_string()).collect()
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            Kind::Row(Row::A) => 'a',
            Kind::Row(Row::B) => 'b',
            Kind::Row(Row::C) => 'c',
            Kind::F => 'f',
            Kind::G => 'g',
            Kind::H => 'h',
        };
        if self.sigma {
            write!(f, "Σ")?;
        }
        write!(f, "{c}{}", self.idx)
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.neg {
            write!(f, "-")?;
        }
        let names: Vec<String> = self.chain.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", names.join("∘"))
    }
}

impl fmt::Display for BlockMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows.len())
            .map(|r| {
                let cells: Vec<String> = (0..self.cols.len())
                    .map(|c| self.entries.iter().find(|x| x.row == r && x.col == c).map_or_else(|| "0".to_string(), |x| x.to_string()))
                    .collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Concrete data a layout is evaluated against.  Leg vectors are indexed by
/// position; missing legs are `None`.
pub struct Env<'a> {
    pub w: &'a dyn Work,
    pub a: &'a NSequence,
    pub b: Option<&'a NSequence>,
    pub c: Option<&'a NSequence>,
    pub f: &'a [Option<Mor>],
    pub g: &'a [Option<Mor>],
    pub h: &'a [Option<Mor>],
}

impl Env<'_> {
    fn row(&self, r: Row) -> &NSequence {
        match r {
            Row::A => self.a,
            Row::B => self.b.expect("layout needs a second row"),
            Row::C => self.c.expect("layout needs a third row"),
        }
    }

    pub fn obj(&self, p: &Part) -> Obj {
        let s = self.row(p.row);
        if p.sigma {
            if p.idx == 0 {
                s.target.clone()
            } else {
                self.w.sigma_obj(&s.objs[p.idx])
            }
        } else {
            s.objs[p.idx].clone()
        }
    }

    pub fn sym(&self, s: &Sym) -> Mor {
        let m = match s.kind {
            Kind::Row(r) => self.row(r).maps[s.idx].clone(),
            Kind::F => leg(self.f, 'f', s.idx),
            Kind::G => leg(self.g, 'g', s.idx),
            Kind::H => leg(self.h, 'h', s.idx),
        };
        if s.sigma {
            self.w.sigma_mor(&m)
        } else {
            m
        }
    }

    pub fn block(&self, m: &BlockMap) -> Mor {
        let rows: Vec<Obj> = m.rows.iter().map(|p| self.obj(p)).collect();
        let cols: Vec<Obj> = m.cols.iter().map(|p| self.obj(p)).collect();
        let p = self.w.pres();
        p.matrix(&rows, &cols, |r, c| {
            let x = m.entries.iter().find(|x| x.row == r && x.col == c)?;
            let ms: Vec<Mor> = x.chain.iter().map(|s| self.sym(s)).collect();
            let v = p.chain(&ms.iter().collect::<Vec<_>>());
            Some(if x.neg { v.neg() } else { v })
        })
    }

    pub fn realize(&self, l: &SeqLayout) -> NSequence {
        let maps = l.maps.iter().map(|m| self.block(m)).collect();
        NSequence::from_maps(self.w, maps)
    }

    /// Summand objects at position `k` of a layout.
    pub fn parts(&self, l: &SeqLayout, k: usize) -> Vec<Obj> {
        l.maps[k].cols.iter().map(|p| self.obj(p)).collect()
    }
}

fn leg(v: &[Option<Mor>], name: char, k: usize) -> Mor {
    v.get(k).cloned().flatten().unwrap_or_else(|| panic!("leg {name}{k} is not available"))
}
