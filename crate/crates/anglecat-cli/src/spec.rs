//! Text syntax for objects and morphisms on the command line.
//!
//! Objects: `0`, `P1`, `S3+2P1`.  Morphisms: `SRC->DST:COORDS` where COORDS
//! is `id`, `0`, `e<i>` (a basis element) or a comma list of rationals.

use anglecat::{Mor, Obj, Presentation, Q};

pub fn parse_obj(p: &Presentation, s: &str) -> Result<Obj, String> {
    let s = s.trim();
    let mut v = vec![0; p.k()];
    if s == "0" {
        return Ok(Obj(v));
    }
    for term in s.split('+') {
        let term = term.trim();
        let digits = term.chars().take_while(|c| c.is_ascii_digit()).count();
        let (mult, name) = term.split_at(digits);
        let mult: usize = if mult.is_empty() { 1 } else { mult.parse().map_err(|_| format!("bad multiplicity in {term:?}"))? };
        let i = p
            .names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| format!("unknown indecomposable {name:?} (known: {})", p.names.join(", ")))?;
        v[i] += mult;
    }
    Ok(Obj(v))
}

pub fn parse_mor(p: &Presentation, s: &str) -> Result<Mor, String> {
    let (objs, coords) = s.split_once(':').ok_or_else(|| format!("{s:?}: expected SRC->DST:COORDS"))?;
    let (a, b) = objs.split_once("->").ok_or_else(|| format!("{objs:?}: expected SRC->DST"))?;
    let (a, b) = (parse_obj(p, a)?, parse_obj(p, b)?);
    let d = p.hom_dim(&a, &b);
    let coords = coords.trim();
    if coords == "id" {
        if a != b {
            return Err("id needs equal source and target".into());
        }
        return Ok(p.identity(&a));
    }
    if coords == "0" {
        return Ok(p.zero(&a, &b));
    }
    if let Some(i) = coords.strip_prefix('e') {
        let i: usize = i.parse().map_err(|_| format!("bad basis index {coords:?}"))?;
        if i >= d {
            return Err(format!("basis index {i} out of range, Hom has dimension {d}"));
        }
        return Ok(p.elem(&a, &b, i));
    }
    let v: Vec<Q> = coords
        .split(',')
        .map(|c| c.trim().parse::<Q>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    if v.len() != d {
        return Err(format!("{} coordinates given, Hom has dimension {d}", v.len()));
    }
    Ok(p.from_coords(&a, &b, v))
}

/// `|`-separated morphisms.
pub fn parse_list(p: &Presentation, s: &str) -> Result<Vec<Mor>, String> {
    s.split('|').map(|m| parse_mor(p, m)).collect()
}
