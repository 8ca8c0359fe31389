//! Line-oriented text format for relations.
//!
//! ```text
//! linrel 1
//! # graph of diag(2, 0)
//! name diag20
//! dim_h 2
//! dim_k 2
//! tol 1e-10 1e-12
//! gen [1, 0] [0, 0] [2, 0] [0, 0]
//! gen [0, 0] [1, 0] [0, 0] [0, 0]
//! ```
//!
//! Each `gen` line is one generator of the graph: `dim_h` entries of the
//! `H` component followed by `dim_k` entries of the `K` component, every
//! entry a `[re, im]` pair. Blank lines and `#` comments are ignored, as are
//! `@` annotation lines, which tools use to attach derived data.

use std::fmt::Write as _;

use crate::{CMat, Error, LinearRelation, Result, Tolerance, C64};

pub const FORMAT_VERSION: u32 = 1;

/// Parsed contents of a relation file.
#[derive(Clone, Debug)]
pub struct RelationFile {
    pub name: Option<String>,
    pub dim_h: usize,
    pub dim_k: usize,
    pub tol: Option<Tolerance>,
    /// Generators as columns, `(dim_h + dim_k) × m`.
    pub generators: CMat,
    pub annotations: Vec<String>,
}

impl RelationFile {
    pub fn from_relation(t: &LinearRelation, name: Option<&str>) -> Self {
        let tol = t.tolerance();
        RelationFile {
            name: name.map(str::to_owned),
            dim_h: t.dim_h(),
            dim_k: t.dim_k(),
            tol: (tol != Tolerance::default()).then_some(tol),
            generators: t.graph().basis().clone(),
            annotations: Vec::new(),
        }
    }

    /// Builds the relation, using the file's tolerance if it has one.
    pub fn to_relation(&self) -> Result<LinearRelation> {
        LinearRelation::from_generators(
            self.dim_h,
            self.dim_k,
            &self.generators,
            self.tol.unwrap_or_default(),
        )
    }

    pub fn annotate(&mut self, key: &str, value: &str) {
        self.annotations.push(format!("{key} {value}"));
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut version = None;
        let mut name = None;
        let mut dim_h = None;
        let mut dim_k = None;
        let mut tol = None;
        let mut rows: Vec<(usize, Vec<C64>)> = Vec::new();
        let mut annotations = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |msg: String| Error::Parse { line: line_no, msg };
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(a) = line.strip_prefix('@') {
                annotations.push(a.trim().to_owned());
                continue;
            }
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            if version.is_none() && key != "linrel" {
                return Err(err("expected header `linrel 1`".into()));
            }
            match key {
                "linrel" => {
                    if version.is_some() {
                        return Err(err("duplicate header".into()));
                    }
                    let v: u32 = rest
                        .parse()
                        .map_err(|_| err(format!("field version: bad value `{rest}`")))?;
                    if v != FORMAT_VERSION {
                        return Err(err(format!("field version: unsupported version {v}")));
                    }
                    version = Some(v);
                }
                "name" => name = Some(rest.to_owned()),
                "dim_h" => dim_h = Some(parse_dim(rest, "dim_h").map_err(err)?),
                "dim_k" => dim_k = Some(parse_dim(rest, "dim_k").map_err(err)?),
                "tol" => {
                    let parts: Vec<&str> = rest.split_whitespace().collect();
                    let [r, a] = parts[..] else {
                        return Err(err("field tol: expected `tol <rel> <abs>`".into()));
                    };
                    let r: f64 = r.parse().map_err(|_| err(format!("field tol: bad rel `{r}`")))?;
                    let a: f64 = a.parse().map_err(|_| err(format!("field tol: bad abs `{a}`")))?;
                    tol = Some(Tolerance::new(r, a).map_err(|e| err(format!("field tol: {e}")))?);
                }
                "gen" => rows.push((line_no, parse_pairs(rest).map_err(err)?)),
                other => return Err(err(format!("unknown field `{other}`"))),
            }
        }

        if version.is_none() {
            return Err(Error::Parse { line: 0, msg: "empty file, expected header `linrel 1`".into() });
        }
        let dim_h = dim_h.ok_or_else(|| Error::Parse { line: 0, msg: "missing field dim_h".into() })?;
        let dim_k = dim_k.ok_or_else(|| Error::Parse { line: 0, msg: "missing field dim_k".into() })?;
        let n = dim_h + dim_k;
        for (line, row) in &rows {
            if row.len() != n {
                return Err(Error::Parse {
                    line: *line,
                    msg: format!("field gen: {} entries, expected dim_h + dim_k = {n}", row.len()),
                });
            }
        }
        let generators = CMat::from_fn(n, rows.len(), |i, j| rows[j].1[i]);
        Ok(RelationFile { name, dim_h, dim_k, tol, generators, annotations })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("linrel {FORMAT_VERSION}\n");
        if let Some(name) = &self.name {
            let _ = writeln!(out, "name {name}");
        }
        let _ = writeln!(out, "dim_h {}", self.dim_h);
        let _ = writeln!(out, "dim_k {}", self.dim_k);
        if let Some(t) = self.tol {
            let _ = writeln!(out, "tol {:e} {:e}", t.rel, t.abs);
        }
        for col in self.generators.column_iter() {
            out.push_str("gen");
            for z in col.iter() {
                let _ = write!(out, " [{}, {}]", fmt_f64(z.re), fmt_f64(z.im));
            }
            out.push('\n');
        }
        for a in &self.annotations {
            let _ = writeln!(out, "@{a}");
        }
        out
    }
}

/// 17 significant digits, enough for a lossless round trip.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    format!("{x:.16e}")
}

/// A complex number as `[re, im]`.
pub fn fmt_c64(z: C64) -> String {
    format!("[{}, {}]", fmt_f64(z.re), fmt_f64(z.im))
}

/// A matrix as rows of `[re, im]` pairs, one row per line.
pub fn fmt_matrix(m: &CMat) -> Vec<String> {
    m.row_iter()
        .map(|r| r.iter().map(|&z| fmt_c64(z)).collect::<Vec<_>>().join(" "))
        .collect()
}

fn parse_dim(s: &str, field: &str) -> std::result::Result<usize, String> {
    s.parse().map_err(|_| format!("field {field}: bad value `{s}`"))
}

fn parse_pairs(s: &str) -> std::result::Result<Vec<C64>, String> {
    let mut out = Vec::new();
    let mut rest = s.trim_start();
    while !rest.is_empty() {
        let entry = out.len() + 1;
        let body = rest
            .strip_prefix('[')
            .ok_or_else(|| format!("field gen: entry {entry} must start with `[`"))?;
        let close = body
            .find(']')
            .ok_or_else(|| format!("field gen: entry {entry} is missing `]`"))?;
        let (re, im) = body[..close]
            .split_once(',')
            .ok_or_else(|| format!("field gen: entry {entry} must be `[re, im]`"))?;
        let num = |t: &str| -> std::result::Result<f64, String> {
            let t = t.trim();
            match t.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                Ok(_) => Err(format!("field gen: entry {entry} is not finite")),
                Err(_) => Err(format!("field gen: entry {entry} has bad number `{t}`")),
            }
        };
        out.push(C64::new(num(re)?, num(im)?));
        rest = body[close + 1..].trim_start();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real_matrix;

    const DIAG: &str = "linrel 1\n# graph of diag(2, 0)\nname diag20\ndim_h 2\ndim_k 2\n\
        gen [1, 0] [0, 0] [2, 0] [0, 0]\ngen [0, 0] [1, 0] [0, 0] [0, 0]\n@norm 0.5\n";

    #[test]
    fn parses_example() {
        let f = RelationFile::parse(DIAG).unwrap();
        assert_eq!(f.name.as_deref(), Some("diag20"));
        assert_eq!((f.dim_h, f.dim_k), (2, 2));
        assert_eq!(f.generators.shape(), (4, 2));
        assert_eq!(f.annotations, vec!["norm 0.5".to_string()]);
        let t = f.to_relation().unwrap();
        let a = real_matrix(2, 2, &[2.0, 0.0, 0.0, 0.0]);
        let expected = LinearRelation::from_operator_matrix(&a, None, Tolerance::default()).unwrap();
        assert!(t.rel_equals(&expected).unwrap().holds);
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let t = RelationFile::parse(DIAG).unwrap().to_relation().unwrap();
        let text = RelationFile::from_relation(&t, Some("x")).to_text();
        let back = RelationFile::parse(&text).unwrap();
        assert_eq!(&back.generators, t.graph().basis());
    }

    #[test]
    fn reports_line_and_field() {
        let bad = "linrel 1\ndim_h 1\ndim_k 1\ngen [1, 0]\n";
        match RelationFile::parse(bad) {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 4);
                assert!(msg.contains("gen"), "{msg}");
            }
            other => panic!("unexpected {other:?}"),
        }
        let bad = "linrel 1\ndim_h 1\ndim_k 1\ngen [1, 0] [x, 0]\n";
        assert!(matches!(RelationFile::parse(bad), Err(Error::Parse { line: 4, .. })));
        let bad = "linrel 1\ndim_h 1\ndim_k 1\ngen [1, 0] [inf, 0]\n";
        assert!(matches!(RelationFile::parse(bad), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(RelationFile::parse("dim_h 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(RelationFile::parse("linrel 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(RelationFile::parse("linrel 1\ndim_h 1\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn tolerance_override_round_trips() {
        let text = "linrel 1\ndim_h 1\ndim_k 1\ntol 1e-8 1e-11\ngen [1, 0] [3, -1]\n";
        let f = RelationFile::parse(text).unwrap();
        let t = f.to_relation().unwrap();
        assert_eq!(t.tolerance(), Tolerance::new(1e-8, 1e-11).unwrap());
        let again = RelationFile::parse(&RelationFile::from_relation(&t, None).to_text()).unwrap();
        assert_eq!(again.tol, f.tol);
    }

    #[test]
    fn zero_generators_give_zero_relation() {
        let t = RelationFile::parse("linrel 1\ndim_h 2\ndim_k 1\n").unwrap().to_relation().unwrap();
        assert_eq!(t.graph_dim(), 0);
        assert_eq!(t.graph().ambient_dim(), 3);
    }
}
