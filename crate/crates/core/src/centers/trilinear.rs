//! Trilinear expressions, the center registry and the conversion from
//! trilinears to Cartesian points.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use super::{Triangle, Vertex};
use crate::error::{GeomError, Result};
use crate::kernel::Point;

/// Built-in registry table.
pub const STANDARD_TABLE: &str = include_str!("../../data/centers.tsv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CenterId {
    X(u32),
    Brocard1,
    Brocard2,
    ExA,
    ExB,
    ExC,
}

impl CenterId {
    pub fn excenter(v: Vertex) -> CenterId {
        match v {
            Vertex::A => CenterId::ExA,
            Vertex::B => CenterId::ExB,
            Vertex::C => CenterId::ExC,
        }
    }
}

impl fmt::Display for CenterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CenterId::X(n) => write!(f, "X{n}"),
            CenterId::Brocard1 => f.write_str("Brocard1"),
            CenterId::Brocard2 => f.write_str("Brocard2"),
            CenterId::ExA => f.write_str("ExA"),
            CenterId::ExB => f.write_str("ExB"),
            CenterId::ExC => f.write_str("ExC"),
        }
    }
}

impl FromStr for CenterId {
    type Err = GeomError;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "Brocard1" => return Ok(CenterId::Brocard1),
            "Brocard2" => return Ok(CenterId::Brocard2),
            "ExA" => return Ok(CenterId::ExA),
            "ExB" => return Ok(CenterId::ExB),
            "ExC" => return Ok(CenterId::ExC),
            _ => {}
        }
        t.strip_prefix('X')
            .or_else(|| t.strip_prefix('x'))
            .and_then(|n| n.parse::<u32>().ok())
            .filter(|n| *n > 0)
            .map(CenterId::X)
            .ok_or_else(|| GeomError::UnknownCenter(t.to_string()))
    }
}

/// Arithmetic over the angles `A, B, C` and sides `a, b, c`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Angle(usize),
    Side(usize),
    Neg(Box<Expr>),
    Bin(Op, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sec,
    Csc,
    Cot,
    Sqrt,
}

impl Expr {
    /// Value with the triangle's data rotated by `shift` positions, so
    /// shift 1 reads `A` as `B`, `a` as `b`, and so on.
    pub fn eval(&self, angles: &[f64; 3], sides: &[f64; 3], shift: usize) -> f64 {
        match self {
            Expr::Num(v) => *v,
            Expr::Angle(i) => angles[(i + shift) % 3],
            Expr::Side(i) => sides[(i + shift) % 3],
            Expr::Neg(e) => -e.eval(angles, sides, shift),
            Expr::Bin(op, l, r) => {
                let x = l.eval(angles, sides, shift);
                let y = r.eval(angles, sides, shift);
                match op {
                    Op::Add => x + y,
                    Op::Sub => x - y,
                    Op::Mul => x * y,
                    Op::Div => x / y,
                    Op::Pow => x.powf(y),
                }
            }
            Expr::Call(f, e) => {
                let x = e.eval(angles, sides, shift);
                match f {
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Tan => x.tan(),
                    Func::Sec => 1.0 / x.cos(),
                    Func::Csc => 1.0 / x.sin(),
                    Func::Cot => x.cos() / x.sin(),
                    Func::Sqrt => x.sqrt(),
                }
            }
        }
    }
}

impl FromStr for Expr {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let tokens = lex(s)?;
        let mut p = Parser { tokens, pos: 0 };
        let e = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(format!("trailing input in `{s}`"));
        }
        Ok(e)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> std::result::Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(
                text.parse().map_err(|_| format!("bad number `{text}`"))?,
            ));
        } else if c.is_alphabetic() || c == 'π' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == 'π') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else {
            let sym = match c {
                '−' => '-',
                '·' | '×' => '*',
                other => other,
            };
            if !"+-*/^()".contains(sym) {
                return Err(format!("unexpected character `{c}`"));
            }
            out.push(Tok::Sym(sym));
            i += 1;
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek_sym(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Tok::Sym(c)) => Some(*c),
            _ => None,
        }
    }

    fn expect(&mut self, c: char) -> std::result::Result<(), String> {
        if self.peek_sym() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> std::result::Result<Expr, String> {
        let mut lhs = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_sym() {
            self.pos += 1;
            let rhs = self.term()?;
            let op = if c == '+' { Op::Add } else { Op::Sub };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> std::result::Result<Expr, String> {
        let mut lhs = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek_sym() {
            self.pos += 1;
            let rhs = self.unary()?;
            let op = if c == '*' { Op::Mul } else { Op::Div };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> std::result::Result<Expr, String> {
        if self.peek_sym() == Some('-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> std::result::Result<Expr, String> {
        let base = self.primary()?;
        if self.peek_sym() == Some('^') {
            self.pos += 1;
            let exp = self.unary()?;
            return Ok(Expr::Bin(Op::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> std::result::Result<Expr, String> {
        let tok = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| "unexpected end of expression".to_string())?;
        self.pos += 1;
        match tok {
            Tok::Num(v) => Ok(Expr::Num(v)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym(c) => Err(format!("unexpected `{c}`")),
            Tok::Ident(name) => {
                let func = match name.as_str() {
                    "A" => return Ok(Expr::Angle(0)),
                    "B" => return Ok(Expr::Angle(1)),
                    "C" => return Ok(Expr::Angle(2)),
                    "a" => return Ok(Expr::Side(0)),
                    "b" => return Ok(Expr::Side(1)),
                    "c" => return Ok(Expr::Side(2)),
                    "pi" | "π" => return Ok(Expr::Num(PI)),
                    "sin" => Func::Sin,
                    "cos" => Func::Cos,
                    "tan" => Func::Tan,
                    "sec" => Func::Sec,
                    "csc" => Func::Csc,
                    "cot" => Func::Cot,
                    "sqrt" => Func::Sqrt,
                    other => return Err(format!("unknown identifier `{other}`")),
                };
                self.expect('(')?;
                let arg = self.expr()?;
                self.expect(')')?;
                Ok(Expr::Call(func, Box::new(arg)))
            }
        }
    }
}

/// Trilinears of a center, either as one expression rotated through the
/// vertices or as three explicit components.
#[derive(Debug, Clone, PartialEq)]
pub enum Trilinear {
    Cyclic(Expr),
    Explicit([Expr; 3]),
}

impl Trilinear {
    pub fn eval(&self, t: &Triangle) -> [f64; 3] {
        let angles = t.angles();
        let sides = t.sides();
        match self {
            Trilinear::Cyclic(e) => [0, 1, 2].map(|k| e.eval(&angles, &sides, k)),
            Trilinear::Explicit(es) => {
                [0, 1, 2].map(|k| es[k].eval(&angles, &sides, 0))
            }
        }
    }
}

impl FromStr for Trilinear {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.len() {
            1 => Ok(Trilinear::Cyclic(parts[0].parse()?)),
            3 => Ok(Trilinear::Explicit([
                parts[0].parse()?,
                parts[1].parse()?,
                parts[2].parse()?,
            ])),
            n => Err(format!("expected 1 or 3 components, found {n}")),
        }
    }
}

/// Map from center identifiers to trilinear evaluators.
#[derive(Debug, Clone, Default)]
pub struct TrilinearRegistry {
    entries: BTreeMap<CenterId, Trilinear>,
}

impl TrilinearRegistry {
    /// Parses a tab-separated table `id <TAB> expression`; blank lines and
    /// lines starting with `#` are ignored.
    pub fn parse(table: &str) -> std::result::Result<Self, String> {
        let mut entries = BTreeMap::new();
        for (n, line) in table.lines().enumerate() {
            let line = line.trim_end();
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let (id, expr) = line
                .split_once('\t')
                .ok_or_else(|| format!("line {}: missing tab separator", n + 1))?;
            let id: CenterId = id
                .parse()
                .map_err(|e| format!("line {}: {e}", n + 1))?;
            let tri: Trilinear = expr
                .parse()
                .map_err(|e| format!("line {}: {e}", n + 1))?;
            if entries.insert(id, tri).is_some() {
                return Err(format!("line {}: duplicate center {id}", n + 1));
            }
        }
        Ok(Self { entries })
    }

    pub fn standard() -> &'static TrilinearRegistry {
        static REGISTRY: OnceLock<TrilinearRegistry> = OnceLock::new();
        REGISTRY.get_or_init(|| {
            TrilinearRegistry::parse(STANDARD_TABLE).expect("built-in center table is valid")
        })
    }

    pub fn get(&self, id: CenterId) -> Option<&Trilinear> {
        self.entries.get(&id)
    }

    pub fn ids(&self) -> impl Iterator<Item = CenterId> + '_ {
        self.entries.keys().copied()
    }

    pub fn trilinears(&self, t: &Triangle, id: CenterId) -> Result<[f64; 3]> {
        self.get(id)
            .map(|tri| tri.eval(t))
            .ok_or_else(|| GeomError::UnknownCenter(id.to_string()))
    }

    pub fn point(&self, t: &Triangle, id: CenterId) -> Result<Point> {
        trilinear_to_point(t, self.trilinears(t, id)?)
    }
}

/// Cartesian point with trilinears `α : β : γ`, using vertex weights
/// `aα, bβ, cγ`.
pub fn trilinear_to_point(t: &Triangle, tri: [f64; 3]) -> Result<Point> {
    let sides = t.sides();
    let w = [0, 1, 2].map(|i| sides[i] * tri[i]);
    if w.iter().any(|v| !v.is_finite()) {
        return Err(GeomError::NonFinite);
    }
    let sum: f64 = w.iter().sum();
    let mag: f64 = w.iter().map(|v| v.abs()).sum();
    if !(mag > 0.0) || sum.abs() <= 1e-12 * mag {
        return Err(GeomError::PointAtInfinity);
    }
    let pts = t.points();
    let p = (pts[0] * w[0] + pts[1] * w[1] + pts[2] * w[2]) / sum;
    if !p.is_finite() {
        return Err(GeomError::NonFinite);
    }
    Ok(p)
}

/// Center `id` of `t` from the standard registry.
pub fn center(t: &Triangle, id: CenterId) -> Result<Point> {
    TrilinearRegistry::standard().point(t, id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{directed_angle, foot, line_through};

    fn sample() -> Triangle {
        Triangle::new(Point::new(0.3, 2.1), Point::new(-1.2, -0.4), Point::new(2.5, 0.2)).unwrap()
    }

    fn x(n: u32) -> CenterId {
        CenterId::X(n)
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs())
    }

    #[test]
    fn expression_precedence() {
        let e: Expr = "-a^2 + b*c/2".parse().unwrap();
        assert_eq!(e.eval(&[0.0; 3], &[3.0, 4.0, 5.0], 0), -9.0 + 10.0);
        assert_eq!(e.eval(&[0.0; 3], &[3.0, 4.0, 5.0], 1), -16.0 + 7.5);
        assert!("sin(A".parse::<Expr>().is_err());
        assert!("foo(A)".parse::<Expr>().is_err());
    }

    #[test]
    fn center_ids_round_trip() {
        for id in TrilinearRegistry::standard().ids() {
            assert_eq!(id.to_string().parse::<CenterId>().unwrap(), id);
        }
        assert!("Y3".parse::<CenterId>().is_err());
        let t = sample();
        assert_eq!(
            center(&t, x(9999)),
            Err(GeomError::UnknownCenter("X9999".into()))
        );
    }

    #[test]
    fn centroid_and_projective_invariance() {
        let t = Triangle::new(Point::new(0.0, 0.0), Point::new(3.0, 0.0), Point::new(0.0, 3.0))
            .unwrap();
        assert!(center(&t, x(2)).unwrap().dist(Point::new(1.0, 1.0)) < 1e-14);
        let tri = [0.7, -0.2, 1.9];
        let p = trilinear_to_point(&t, tri).unwrap();
        let q = trilinear_to_point(&t, tri.map(|v| 2.0 * v)).unwrap();
        assert!(p.dist(q) < 1e-14);
    }

    #[test]
    fn incenter_is_equidistant_from_side_lines() {
        let t = sample();
        let i = center(&t, x(1)).unwrap();
        let [a, b, c] = t.points();
        let d: Vec<f64> = [(b, c), (c, a), (a, b)]
            .iter()
            .map(|(p, q)| foot(i, &line_through(*p, *q).unwrap()).dist(i))
            .collect();
        assert!(rel(d[0], d[1]) < 1e-12 && rel(d[1], d[2]) < 1e-12);
        assert!(rel(d[0], t.inradius()) < 1e-12);
    }

    #[test]
    fn circumcenter_and_orthocenter() {
        let t = sample();
        let o = center(&t, x(3)).unwrap();
        assert!(o.dist(t.circumcenter()) < 1e-12);
        let h = center(&t, x(4)).unwrap();
        let [a, b, c] = t.points();
        for (p, q, r) in [(a, b, c), (b, c, a), (c, a, b)] {
            assert!((h - p).dot(r - q).abs() < 1e-12);
        }
        // Euler: H = A + B + C − 2O
        assert!(h.dist(a + b + c - o * 2.0) < 1e-12);
    }

    #[test]
    fn nine_point_center_is_circumcenter_of_medial_triangle() {
        let t = sample();
        let [a, b, c] = t.points();
        let medial = Triangle::new((b + c) * 0.5, (c + a) * 0.5, (a + b) * 0.5).unwrap();
        assert!(center(&t, x(5)).unwrap().dist(medial.circumcenter()) < 1e-12);
    }

    #[test]
    fn symmedian_point_is_isogonal_to_centroid() {
        let t = sample();
        let g = center(&t, x(2)).unwrap();
        let k = center(&t, x(6)).unwrap();
        let [a, b, c] = t.points();
        let lhs = directed_angle(b, a, g).unwrap().radians();
        let rhs = directed_angle(k, a, c).unwrap().radians();
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn fermat_points_from_erected_equilateral_triangles() {
        let t = sample().to_ccw();
        let [a, b, c] = t.points();
        // apex of the equilateral triangle on each side, outward (sign +1) or inward (−1)
        let apex = |p: Point, q: Point, sign: f64| {
            let m = (p + q) * 0.5;
            m + (q - p).perp() * (-sign * 3f64.sqrt() / 2.0)
        };
        for (id, sign) in [(13, 1.0), (14, -1.0)] {
            let f = center(&t, x(id)).unwrap();
            let legs = [(a, apex(b, c, sign)), (b, apex(c, a, sign)), (c, apex(a, b, sign))];
            for (v, w) in legs {
                assert!((w - v).cross(f - v).abs() / (w - v).norm() < 1e-12, "X{id}");
            }
        }
    }

    #[test]
    fn brocard_midpoint() {
        let t = sample();
        let o1 = center(&t, CenterId::Brocard1).unwrap();
        let o2 = center(&t, CenterId::Brocard2).unwrap();
        let m = center(&t, x(39)).unwrap();
        assert!(m.dist((o1 + o2) * 0.5) < 1e-12);
    }

    #[test]
    fn napoleon_type_centers_are_isogonal_pairs() {
        // X61 ~ X17 and X62 ~ X18 under isogonal conjugation
        let t = sample();
        let [a, b, c] = t.points();
        for (p, q) in [(17, 61), (18, 62)] {
            let u = center(&t, x(p)).unwrap();
            let v = center(&t, x(q)).unwrap();
            let lhs = directed_angle(b, a, u).unwrap();
            let rhs = directed_angle(v, a, c).unwrap();
            assert!(lhs.gap(rhs, std::f64::consts::TAU) < 1e-12, "X{p}/X{q}");
        }
    }

    #[test]
    fn excenters_are_equidistant_from_side_lines() {
        let t = sample();
        let [a, b, c] = t.points();
        let lines = [(b, c), (c, a), (a, b)].map(|(p, q)| line_through(p, q).unwrap());
        for v in Vertex::ALL {
            let e = center(&t, CenterId::excenter(v)).unwrap();
            let d: Vec<f64> = lines.iter().map(|l| l.eval(e).abs()).collect();
            assert!(rel(d[0], d[1]) < 1e-12 && rel(d[1], d[2]) < 1e-12);
            let expected = t.area() / (t.semiperimeter() - t.side(v));
            assert!(rel(d[0], expected) < 1e-12);
        }
    }
}
