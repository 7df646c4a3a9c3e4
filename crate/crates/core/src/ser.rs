//! Serde helpers: complex scalars and polynomials serialize to their
//! canonical text forms, which keeps report output stable byte for byte.

use crate::poly::{fmt_c64, ComplexPoly, RootList};
use num_complex::Complex64;
use serde::ser::SerializeSeq;
use serde::Serializer;

pub fn c64<S: Serializer>(v: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_c64(*v))
}

pub fn c64_vec<S: Serializer>(v: &Vec<Complex64>, s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&fmt_c64(*x))?;
    }
    seq.end()
}

pub fn poly<S: Serializer>(p: &ComplexPoly, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

pub fn poly_opt<S: Serializer>(p: &Option<ComplexPoly>, s: S) -> Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.serialize_some(&p.to_string()),
        None => s.serialize_none(),
    }
}

pub fn roots<S: Serializer>(r: &RootList, s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(r.roots.len()))?;
    for (value, mult) in &r.roots {
        seq.serialize_element(&(fmt_c64(*value), *mult))?;
    }
    seq.end()
}
