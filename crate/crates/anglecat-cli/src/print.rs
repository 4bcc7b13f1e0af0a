use std::fmt::Write;

use anglecat::sequence::NSequence;
use anglecat::work::{normalize, Work};
use anglecat::{Mor, Obj, Presentation};

pub fn obj(p: &Presentation, o: &Obj) -> String {
    let parts: Vec<String> = o
        .0
        .iter()
        .enumerate()
        .filter(|(_, &m)| m > 0)
        .map(|(i, &m)| if m == 1 { p.names[i].clone() } else { format!("{m}{}", p.names[i]) })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

/// Block matrix with one row per target summand.
pub fn mor(w: &dyn Work, f: &Mor) -> String {
    let p = w.pres();
    let f = normalize(w, f);
    let l = p.layout(&f.src, &f.dst);
    let mut rows = Vec::new();
    for r in 0..l.dst_slots.len() {
        let mut cells = Vec::new();
        for c in 0..l.src_slots.len() {
            let v: Vec<String> = f.coords[l.range(r, c)].iter().map(|x| x.to_string()).collect();
            cells.push(match v.len() {
                0 => ".".to_string(),
                1 => v[0].clone(),
                _ => format!("({})", v.join(",")),
            });
        }
        rows.push(format!("[{}]", cells.join(", ")));
    }
    format!("[{}]", rows.join(", "))
}

pub fn arrow(w: &dyn Work, name: &str, f: &Mor) -> String {
    let p = w.pres();
    format!("{name}: {} -> {}  {}", obj(p, &f.src), obj(p, &f.dst), mor(w, f))
}

pub fn sequence(w: &dyn Work, s: &NSequence) -> String {
    let p = w.pres();
    let mut out = String::new();
    let chain: Vec<String> = s.objs.iter().chain([&s.target]).map(|o| obj(p, o)).collect();
    writeln!(out, "  {}", chain.join(" -> ")).unwrap();
    for (k, m) in s.maps.iter().enumerate() {
        writeln!(out, "  {}", arrow(w, &format!("map {k}"), m)).unwrap();
    }
    out
}
