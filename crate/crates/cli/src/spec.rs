//! Manifold specs: `kind:key=value,...` and `product:(...)x(...)`.
//!
//! ```text
//! interval:0,1              box:1,2,3
//! ball:n=3,r=1              hemisphere:n=4
//! cap:n=2,r=1.2             hypball:n=3,r=2
//! spaceform:n=3,kappa=-1,r=2
//! radial:n=3,r=1,c3=-0.1,c5=0.01
//! product:(ball:n=2,r=1)x(hemisphere:n=2)
//! ```
//!
//! Whitespace is ignored anywhere. Syntax errors carry the byte offset into
//! the original text.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;
use std::fmt;

use scx_core::geometry::Warp;
use scx_core::{ModelManifold, RadialProfile};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SpecError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("{0}")]
    Semantic(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ManifoldSpec {
    pub source: String,
    pub manifold: ModelManifold,
}

impl fmt::Display for ManifoldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.manifold))
    }
}

pub fn parse_spec(text: &str) -> Result<ManifoldSpec, SpecError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let manifold = p.manifold()?;
    p.skip_ws();
    if p.pos < p.s.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(ManifoldSpec {
        source: text.to_string(),
        manifold,
    })
}

/// Reads one spec per line; blank lines and `#` comments are skipped.
pub fn parse_spec_file(contents: &str) -> Result<Vec<ManifoldSpec>, (usize, SpecError)> {
    contents
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .map(|(line, l)| parse_spec(l).map_err(|e| (line, e)))
        .collect()
}

enum Arg {
    Bare(f64),
    Keyed(String, f64),
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> SpecError {
        SpecError::Syntax {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), SpecError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    /// Letters and digits, with whitespace between them ignored.
    fn word(&mut self, allow: impl Fn(u8) -> bool) -> String {
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if !allow(c) {
                break;
            }
            out.push(c as char);
            self.pos += 1;
        }
        out
    }

    fn ident(&mut self) -> Result<String, SpecError> {
        let id = self.word(|c| c.is_ascii_alphabetic());
        if id.is_empty() {
            return Err(self.error("expected a manifold kind"));
        }
        Ok(id)
    }

    fn number(&mut self) -> Result<f64, SpecError> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let text = self.word(|c| c.is_ascii_digit() || matches!(c, b'.' | b'-' | b'+' | b'e' | b'E'));
        text.parse::<f64>().map_err(|_| SpecError::Syntax {
            offset: start,
            message: if text.is_empty() {
                "expected a number".into()
            } else {
                format!("invalid number '{text}'")
            },
        })
    }

    fn arg(&mut self) -> Result<Arg, SpecError> {
        if self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            let key = self.word(|c| c.is_ascii_alphanumeric());
            self.expect(b'=')?;
            Ok(Arg::Keyed(key, self.number()?))
        } else {
            Ok(Arg::Bare(self.number()?))
        }
    }

    fn manifold(&mut self) -> Result<ModelManifold, SpecError> {
        let kind_at = {
            self.skip_ws();
            self.pos
        };
        let kind = self.ident()?;
        self.expect(b':')?;
        if kind == "product" {
            return self.product();
        }
        let args_at = {
            self.skip_ws();
            self.pos
        };
        let mut args = vec![self.arg()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            args.push(self.arg()?);
        }
        build(&kind, args).map_err(|e| match e {
            Build::Kind => SpecError::Syntax {
                offset: kind_at,
                message: format!("unknown manifold kind '{kind}'"),
            },
            Build::Args(message) => SpecError::Syntax {
                offset: args_at,
                message,
            },
            Build::Semantic(m) => SpecError::Semantic(m),
        })
    }

    fn product(&mut self) -> Result<ModelManifold, SpecError> {
        let mut factors = Vec::new();
        loop {
            self.expect(b'(')?;
            factors.push(self.manifold()?);
            self.expect(b')')?;
            if self.peek() == Some(b'x') {
                self.pos += 1;
            } else {
                break;
            }
        }
        if factors.len() < 2 {
            return Err(self.error("a product needs at least two factors"));
        }
        scx_core::product(factors).map_err(|e| SpecError::Semantic(e.to_string()))
    }
}

enum Build {
    Kind,
    Args(String),
    Semantic(String),
}

fn build(kind: &str, args: Vec<Arg>) -> Result<ModelManifold, Build> {
    let mut bare = Vec::new();
    let mut keyed = BTreeMap::new();
    for a in args {
        match a {
            Arg::Bare(v) => bare.push(v),
            Arg::Keyed(k, v) => {
                if keyed.insert(k.clone(), v).is_some() {
                    return Err(Build::Args(format!("key '{k}' given twice")));
                }
            }
        }
    }
    let positional = |want: Option<usize>| -> Result<(), Build> {
        if !keyed.is_empty() {
            return Err(Build::Args(format!("{kind} takes plain numbers, not key=value")));
        }
        if let Some(w) = want {
            if bare.len() != w {
                return Err(Build::Args(format!("{kind} takes {w} numbers, got {}", bare.len())));
            }
        }
        Ok(())
    };
    let sem = |r: scx_core::Result<ModelManifold>| r.map_err(|e| Build::Semantic(e.to_string()));
    match kind {
        "interval" => {
            positional(Some(2))?;
            sem(ModelManifold::interval(bare[0], bare[1]))
        }
        "box" => {
            positional(None)?;
            sem(ModelManifold::rect_box(&bare))
        }
        "ball" | "hemisphere" | "cap" | "hypball" | "spaceform" | "radial" => {
            if !bare.is_empty() {
                return Err(Build::Args(format!("{kind} takes key=value arguments")));
            }
            let mut take = |k: &str| keyed.remove(k);
            let n = take("n").ok_or_else(|| Build::Args(format!("{kind} needs n=")))?;
            if n.fract() != 0.0 || n < 1.0 {
                return Err(Build::Semantic(format!("dimension must be a positive integer, got {n}")));
            }
            let n = n as usize;
            let mut need = |k: &str| take(k).ok_or_else(|| Build::Args(format!("{kind} needs {k}=")));
            let m = match kind {
                "ball" => sem(ModelManifold::flat_ball(n, need("r")?)),
                "hemisphere" => sem(ModelManifold::hemisphere(n)),
                "cap" => sem(ModelManifold::spherical_cap(n, need("r")?)),
                "hypball" => sem(ModelManifold::hyperbolic_ball(n, need("r")?)),
                "spaceform" => {
                    let kappa = need("kappa")?;
                    sem(scx_core::make_space_form_ball(n, kappa, need("r")?))
                }
                _ => {
                    let r = need("r")?;
                    let mut coeffs = Vec::new();
                    let mut p = 3;
                    while let Some(c) = keyed.remove(&format!("c{p}")) {
                        coeffs.push(c);
                        p += 2;
                    }
                    sem(ModelManifold::radial_custom(n, r, &coeffs))
                }
            }?;
            if let Some(k) = keyed.keys().next() {
                return Err(Build::Args(format!("unknown key '{k}' for {kind}")));
            }
            Ok(m)
        }
        _ => Err(Build::Kind),
    }
}

/// Canonical spec text; floats use the shortest round-trip form.
pub fn render(m: &ModelManifold) -> String {
    match m {
        ModelManifold::Interval(iv) => format!("interval:{},{}", iv.a(), iv.b()),
        ModelManifold::Box(sides) => {
            let s: Vec<String> = sides.iter().map(|x| x.to_string()).collect();
            format!("box:{}", s.join(","))
        }
        ModelManifold::Product(fs) => {
            let s: Vec<String> = fs.iter().map(|f| format!("({})", render(f))).collect();
            format!("product:{}", s.join("x"))
        }
        ModelManifold::SpaceFormBall(p) => {
            let kappa = p.kappa().unwrap_or(0.0);
            if kappa == 0.0 {
                format!("ball:n={},r={}", p.dim(), p.r_max())
            } else {
                format!("spaceform:n={},kappa={},r={}", p.dim(), kappa, p.r_max())
            }
        }
        ModelManifold::SphericalCap(p) if p.r_max() == FRAC_PI_2 => {
            format!("hemisphere:n={}", p.dim())
        }
        ModelManifold::SphericalCap(p) => format!("cap:n={},r={}", p.dim(), p.r_max()),
        ModelManifold::HyperbolicBall(p) => format!("hypball:n={},r={}", p.dim(), p.r_max()),
        ModelManifold::RadialCustom(p) => render_radial(p),
    }
}

fn render_radial(p: &RadialProfile) -> String {
    let mut s = format!("radial:n={},r={}", p.dim(), p.r_max());
    if let Warp::OddPolynomial { coeffs } = p.warp() {
        for (k, c) in coeffs.iter().enumerate() {
            s.push_str(&format!(",c{}={}", 2 * k + 3, c));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_kinds() {
        let i = parse_spec("interval:0,1").unwrap();
        assert_eq!(i.manifold, ModelManifold::interval(0.0, 1.0).unwrap());
        let b = parse_spec(" box : 1 , 2,3 ").unwrap();
        assert_eq!(b.manifold.factors().unwrap().len(), 3);
        let p = parse_spec("product:(ball:n=2,r=1)x(hemisphere:n=2)").unwrap();
        assert_eq!(p.manifold.dim(), 4);
        assert_eq!(render(&p.manifold), "product:(ball:n=2,r=1)x(hemisphere:n=2)");
    }

    #[test]
    fn syntax_offsets() {
        match parse_spec("ball:n=2,r=").unwrap_err() {
            SpecError::Syntax { offset, .. } => assert_eq!(offset, 11),
            e => panic!("{e:?}"),
        }
        match parse_spec("blob:n=2").unwrap_err() {
            SpecError::Syntax { offset, .. } => assert_eq!(offset, 0),
            e => panic!("{e:?}"),
        }
        match parse_spec("product:(ball:n=2,r=1)").unwrap_err() {
            SpecError::Syntax { .. } => {}
            e => panic!("{e:?}"),
        }
        assert!(matches!(parse_spec("interval:0,1 junk"), Err(SpecError::Syntax { offset: 13, .. })));
    }

    #[test]
    fn semantic_errors() {
        assert!(matches!(parse_spec("cap:n=2,r=4"), Err(SpecError::Semantic(_))));
        assert!(matches!(parse_spec("spaceform:n=3,kappa=4,r=2"), Err(SpecError::Semantic(_))));
        assert!(matches!(parse_spec("interval:1,0"), Err(SpecError::Semantic(_))));
        assert!(matches!(parse_spec("ball:n=2.5,r=1"), Err(SpecError::Semantic(_))));
    }

    #[test]
    fn round_trips() {
        for s in [
            "interval:-1.5,2",
            "box:1,2,3",
            "ball:n=3,r=0.7",
            "hemisphere:n=8",
            "cap:n=2,r=1.2",
            "hypball:n=3,r=2",
            "spaceform:n=3,kappa=-0.5,r=2",
            "radial:n=3,r=1,c3=-0.1,c5=0.01",
            "product:(interval:0,1)x(product:(ball:n=2,r=1)x(cap:n=3,r=0.3))",
        ] {
            let a = parse_spec(s).unwrap();
            let b = parse_spec(&render(&a.manifold)).unwrap();
            assert_eq!(a.manifold, b.manifold, "{s}");
            assert_eq!(render(&a.manifold), s);
        }
    }

    #[test]
    fn file_format() {
        let specs = parse_spec_file("# header\ninterval:0,1\n\nball:n=2,r=1 # trailing\n").unwrap();
        assert_eq!(specs.len(), 2);
        let (line, _) = parse_spec_file("interval:0,1\nball:n=2").unwrap_err();
        assert_eq!(line, 2);
    }
}
