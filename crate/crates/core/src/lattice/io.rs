//! Lattice file format: JSON with `name`, `labels`, `gram` and optional
//! `glue` (rows of rational strings). Writing is canonical, so a written
//! file reads back and re-writes to identical bytes.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Deserialize;

use crate::arith::{fmt_rat, parse_rat};
use crate::error::{Error, Result};
use crate::lattice::{overlattice, FramedLattice, GramLattice, RationalVector};
use crate::matrix::IMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeFile {
    pub lattice: GramLattice,
    pub glue: Vec<RationalVector>,
}

#[derive(Deserialize)]
struct Raw {
    name: String,
    labels: Vec<String>,
    gram: Vec<Vec<serde_json::Value>>,
    #[serde(default)]
    glue: Vec<Vec<String>>,
}

fn value_to_int(v: &serde_json::Value) -> Result<BigInt> {
    match v {
        serde_json::Value::Number(n) => n
            .to_string()
            .parse()
            .map_err(|_| Error::Parse(format!("Gram entry {n} is not an integer"))),
        serde_json::Value::String(s) => {
            s.parse().map_err(|_| Error::Parse(format!("Gram entry {s:?} is not an integer")))
        }
        other => Err(Error::Parse(format!("bad Gram entry {other}"))),
    }
}

impl LatticeFile {
    pub fn parse(text: &str) -> Result<LatticeFile> {
        let raw: Raw = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let rows = raw
            .gram
            .iter()
            .map(|r| r.iter().map(value_to_int).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let lattice = GramLattice::new(raw.name, raw.labels, IMatrix::from_rows(rows)?)?;
        let glue = raw
            .glue
            .iter()
            .map(|r| r.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if glue.iter().any(|g| g.len() != lattice.rank()) {
            return Err(Error::DimensionMismatch("glue vector length".into()));
        }
        Ok(LatticeFile { lattice, glue })
    }

    pub fn read(path: &std::path::Path) -> Result<LatticeFile> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Canonical text: one Gram row per line.
    pub fn to_text(&self) -> String {
        let l = &self.lattice;
        let mut s = String::from("{\n");
        let _ = writeln!(s, "  \"name\": {},", serde_json::to_string(&l.name).unwrap());
        let labels: Vec<String> = l.labels.iter().map(|x| serde_json::to_string(x).unwrap()).collect();
        let _ = write!(s, "  \"labels\": [{}],\n  \"gram\": [\n", labels.join(", "));
        let n = l.rank();
        for i in 0..n {
            let row: Vec<String> = l.gram().row(i).iter().map(|x| x.to_string()).collect();
            let sep = if i + 1 < n { "," } else { "" };
            let _ = writeln!(s, "    [{}]{sep}", row.join(", "));
        }
        s.push_str("  ]");
        if !self.glue.is_empty() {
            s.push_str(",\n  \"glue\": [\n");
            for (k, g) in self.glue.iter().enumerate() {
                let row: Vec<String> = g.iter().map(|x| format!("\"{}\"", fmt_rat(x))).collect();
                let sep = if k + 1 < self.glue.len() { "," } else { "" };
                let _ = writeln!(s, "    [{}]{sep}", row.join(", "));
            }
            s.push_str("  ]");
        }
        s.push_str("\n}\n");
        s
    }

    /// Frame plus the basis vectors of `m` that are not already in the frame.
    pub fn from_framed(m: &FramedLattice) -> LatticeFile {
        let glue = m.basis.to_rows().into_iter().filter(|r| r.iter().any(|x| !x.is_integer())).collect();
        LatticeFile { lattice: m.frame.clone(), glue }
    }

    /// The described lattice: the Gram lattice itself, or its overlattice
    /// when glue is present.
    pub fn build(&self) -> Result<FramedLattice> {
        if self.glue.is_empty() {
            Ok(FramedLattice::trivial(self.lattice.clone()))
        } else {
            overlattice(&self.lattice, &self.glue, &self.lattice.name)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::lattice::standard;

    #[test]
    fn framed_roundtrip() {
        let k = crate::kummer::kummer_lattice().unwrap();
        let f = LatticeFile::from_framed(&k);
        let back = LatticeFile::parse(&f.to_text()).unwrap().build().unwrap();
        assert_eq!(back.index, k.index);
        assert_eq!(back.lattice.det(), k.lattice.det());
    }

    #[test]
    fn roundtrip_bytes() {
        let f = LatticeFile {
            lattice: standard::diagonal(&[-2, -2, -2, -2], "K"),
            glue: vec![vec![rat(1, 2); 4]],
        };
        let text = f.to_text();
        let back = LatticeFile::parse(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.to_text(), text);
        assert_eq!(back.build().unwrap().lattice.det(), BigInt::from(4));
    }
}
