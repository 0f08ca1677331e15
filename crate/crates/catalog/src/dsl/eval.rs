use std::f64::consts::TAU;

use isodyn_core::centers::{
    brocard_points, center, excenter, isodynamic_first_apollonius, isodynamic_first_trilinear,
    isodynamic_second, CenterId, Triangle, Vertex,
};
use isodyn_core::constructions::{
    apollonius_circle, bisector_foot, cevian_trace, circlecevian, circumcevian, circumcircle,
    euler_line, external_bisector_foot, pedal_triangle, pararadius, parachord, antiparallel,
    apothem, incline, sagitta, side_line, simson_line, Figure, Object, Segment,
};
use isodyn_core::formulas;
use isodyn_core::kernel::{
    angle_between_circles, check_relation, circle_through, diameter, directed_angle, fit_conic,
    fit_cubic, foot, intersect_circles, intersect_lines, invert, line_through, midpoint,
    radical_axis, reflect, Circle, Entity, Line, Point, RelationKind, Tolerance,
};
use isodyn_core::GeomError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{Arg, Call, Program, Stmt};
use crate::sampler::{place_randomly, TriangleClass};

/// Displacement of `jitter`, relative to the figure scale.
pub const JITTER: f64 = 1e-3;

/// Half-length, in figure scales, of the window `random_point_on` uses on
/// a line.
const LINE_WINDOW: f64 = 2.0;

/// Source of randomness for one evaluation: the triangle class that
/// `triangle()` draws from and the generator behind every random
/// constructor.
#[derive(Debug, Clone)]
pub struct EvalContext {
    pub class: TriangleClass,
    rng: ChaCha8Rng,
}

impl EvalContext {
    pub fn new(class: TriangleClass, seed: u64) -> Self {
        Self {
            class,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub kind: RelationKind,
    pub value: f64,
}

#[derive(Debug, Clone)]
pub struct Evaluation {
    pub figure: Figure,
    /// Diameter of the first triangle constructed.
    pub scale: f64,
    /// One per assertion, in program order.
    pub residuals: Vec<Residual>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    /// A degenerate instance; the caller skips it.
    #[error("line {line}: cannot construct `{name}`: {cause}")]
    Construction {
        name: String,
        line: usize,
        cause: GeomError,
    },
    /// The program itself is wrong (argument types or counts).
    #[error("line {line}: {message}")]
    Type { line: usize, message: String },
}

impl EvalError {
    pub fn is_skip(&self) -> bool {
        matches!(self, EvalError::Construction { .. })
    }
}

enum Fail {
    Geom(GeomError),
    Type(String),
}

impl From<GeomError> for Fail {
    fn from(e: GeomError) -> Self {
        Fail::Geom(e)
    }
}

type Out = Result<Object, Fail>;

#[derive(Clone)]
enum Val {
    Obj(String, Object),
    Num(f64),
    Angle(f64),
}

struct State<'c> {
    fig: Figure,
    frame: Option<(Point, f64)>,
    ctx: &'c mut EvalContext,
}

impl State<'_> {
    fn scale(&self) -> f64 {
        self.frame.map_or(1.0, |f| f.1)
    }

    fn origin(&self) -> Point {
        self.frame.map_or(Point::ORIGIN, |f| f.0)
    }

    fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.ctx.rng
    }
}

struct In<'a> {
    func: &'a str,
    vals: Vec<Val>,
}

impl In<'_> {
    fn arity(&self, n: usize) -> Result<(), Fail> {
        if self.vals.len() == n {
            Ok(())
        } else {
            Err(Fail::Type(format!(
                "`{}` takes {n} argument(s), got {}",
                self.func,
                self.vals.len()
            )))
        }
    }

    fn wrong(&self, i: usize, want: &str) -> Fail {
        let got = match &self.vals[i] {
            Val::Obj(name, o) => format!("{} `{name}`", o.kind()),
            Val::Num(x) => format!("number {x}"),
            Val::Angle(d) => format!("angle {d}deg"),
        };
        Fail::Type(format!("`{}` argument {}: expected {want}, got {got}", self.func, i + 1))
    }

    fn obj(&self, i: usize) -> Option<&Object> {
        match &self.vals[i] {
            Val::Obj(_, o) => Some(o),
            _ => None,
        }
    }

    fn point(&self, i: usize) -> Result<Point, Fail> {
        match self.obj(i) {
            Some(Object::Point(p)) => Ok(*p),
            _ => Err(self.wrong(i, "a point")),
        }
    }

    fn points(&self) -> Result<Vec<Point>, Fail> {
        (0..self.vals.len()).map(|i| self.point(i)).collect()
    }

    fn line(&self, i: usize) -> Result<Line, Fail> {
        match self.obj(i) {
            Some(Object::Line(l)) => Ok(*l),
            _ => Err(self.wrong(i, "a line")),
        }
    }

    fn circle(&self, i: usize) -> Result<Circle, Fail> {
        match self.obj(i) {
            Some(Object::Circle(c)) => Ok(*c),
            _ => Err(self.wrong(i, "a circle")),
        }
    }

    fn tri(&self, i: usize) -> Result<Triangle, Fail> {
        match self.obj(i) {
            Some(Object::Triangle(t)) => Ok(*t),
            _ => Err(self.wrong(i, "a triangle")),
        }
    }

    fn seg(&self, i: usize) -> Result<Segment, Fail> {
        match self.obj(i) {
            Some(Object::Segment(s)) => Ok(*s),
            _ => Err(self.wrong(i, "a segment")),
        }
    }

    /// Numbers as written, angle literals in radians, or a scalar object.
    fn scalar(&self, i: usize) -> Result<f64, Fail> {
        match &self.vals[i] {
            Val::Num(x) => Ok(*x),
            Val::Angle(d) => Ok(d.to_radians()),
            Val::Obj(_, Object::Scalar(x)) => Ok(*x),
            _ => Err(self.wrong(i, "a scalar")),
        }
    }

    /// A point argument that is one of the vertices of `t`.
    fn vertex(&self, i: usize, t: &Triangle) -> Result<Vertex, Fail> {
        let p = self.point(i)?;
        let eps = 1e-12 * t.diameter();
        Vertex::ALL
            .into_iter()
            .find(|v| t.vertex(*v).dist(p) <= eps)
            .ok_or_else(|| self.wrong(i, "a vertex of the triangle"))
    }

    fn index(&self, i: usize) -> Result<u32, Fail> {
        match &self.vals[i] {
            Val::Num(x) if *x >= 1.0 && x.fract() == 0.0 && *x <= u32::MAX as f64 => Ok(*x as u32),
            _ => Err(self.wrong(i, "a positive integer")),
        }
    }
}

type Builder = fn(&mut State, &In) -> Out;

macro_rules! vocabulary {
    ($($name:literal => $f:expr),* $(,)?) => {
        /// Every constructor the language knows, in lookup order.
        pub const CONSTRUCTORS: &[&str] = &[$($name),*];

        fn builder(name: &str) -> Option<Builder> {
            match name {
                $($name => Some($f),)*
                _ => None,
            }
        }
    };
}

pub fn is_constructor(name: &str) -> bool {
    builder(name).is_some()
}

fn pt(p: Point) -> Out {
    Ok(Object::Point(p))
}

fn sc(x: f64) -> Out {
    if x.is_finite() {
        Ok(Object::Scalar(x))
    } else {
        Err(Fail::Geom(GeomError::NonFinite))
    }
}

fn tri_at(a: &In, v: Vertex) -> Out {
    a.arity(1)?;
    pt(a.tri(0)?.vertex(v))
}

/// `f(T, P, V)` for the per-vertex constructions.
fn tpv(a: &In) -> Result<(Triangle, Point, Vertex), Fail> {
    a.arity(3)?;
    let t = a.tri(0)?;
    Ok((t, a.point(1)?, a.vertex(2, &t)?))
}

fn tv(a: &In) -> Result<(Triangle, Vertex), Fail> {
    a.arity(2)?;
    let t = a.tri(0)?;
    Ok((t, a.vertex(1, &t)?))
}

fn unary(a: &In, f: fn(f64) -> f64) -> Out {
    a.arity(1)?;
    sc(f(a.scalar(0)?))
}

fn binary(a: &In, f: fn(f64, f64) -> f64) -> Out {
    a.arity(2)?;
    sc(f(a.scalar(0)?, a.scalar(1)?))
}

/// Uniform point on the arc of the circle through `p`, `q`, `r` that runs
/// from `p` to `q`, on the side that contains `r` or avoids it.
fn arc_point(st: &mut State, a: &In, containing: bool) -> Out {
    a.arity(3)?;
    let (p, q, r) = (a.point(0)?, a.point(1)?, a.point(2)?);
    let c = circle_through(p, q, r)?;
    let ang = |x: Point| (x.y - c.center.y).atan2(x.x - c.center.x).rem_euclid(TAU);
    let (tp, tq, tr) = (ang(p), ang(q), ang(r));
    // counterclockwise sweep p → q
    let sweep = (tq - tp).rem_euclid(TAU);
    let r_on_ccw = (tr - tp).rem_euclid(TAU) < sweep;
    let (start, len) = if r_on_ccw == containing {
        (tp, sweep)
    } else {
        (tq, TAU - sweep)
    };
    let u: f64 = st.rng().random();
    pt(c.point_at(start + u * len))
}

vocabulary! {
    "triangle" => |st, a| {
        a.arity(0)?;
        let class = st.ctx.class;
        Ok(Object::Triangle(class.sample(st.rng())))
    },
    "triangle_angles" => |st, a| {
        a.arity(2)?;
        let (x, y) = (a.scalar(0)?, a.scalar(1)?);
        let z = std::f64::consts::PI - x - y;
        if !(x > 0.0 && y > 0.0 && z > 0.0) {
            return Err(GeomError::DegenerateTriangle.into());
        }
        Ok(Object::Triangle(place_randomly([x, y, z], st.rng())))
    },
    "triangle_sides" => |_, a| {
        a.arity(3)?;
        Ok(Object::Triangle(Triangle::from_sides(a.scalar(0)?, a.scalar(1)?, a.scalar(2)?)?))
    },
    "triangle_from" => |_, a| {
        a.arity(3)?;
        Ok(Object::Triangle(Triangle::new(a.point(0)?, a.point(1)?, a.point(2)?)?))
    },
    "vertex_a" => |_, a| tri_at(a, Vertex::A),
    "vertex_b" => |_, a| tri_at(a, Vertex::B),
    "vertex_c" => |_, a| tri_at(a, Vertex::C),

    "center" => |_, a| {
        a.arity(2)?;
        pt(center(&a.tri(0)?, CenterId::X(a.index(1)?))?)
    },
    "isodynamic1" => |_, a| { a.arity(1)?; pt(isodynamic_first_trilinear(&a.tri(0)?)?) },
    "isodynamic1_apollonius" => |_, a| { a.arity(1)?; pt(isodynamic_first_apollonius(&a.tri(0)?)?) },
    "isodynamic2" => |_, a| { a.arity(1)?; pt(isodynamic_second(&a.tri(0)?)?) },
    "brocard1" => |_, a| { a.arity(1)?; pt(brocard_points(&a.tri(0)?)?.0) },
    "brocard2" => |_, a| { a.arity(1)?; pt(brocard_points(&a.tri(0)?)?.1) },
    "excenter" => |_, a| { let (t, v) = tv(a)?; pt(excenter(&t, v)?) },

    "line" => |_, a| {
        a.arity(2)?;
        Ok(Object::Line(line_through(a.point(0)?, a.point(1)?)?))
    },
    "side_line" => |_, a| { let (t, v) = tv(a)?; Ok(Object::Line(side_line(&t, v))) },
    "intersect" => |_, a| {
        a.arity(2)?;
        pt(intersect_lines(&a.line(0)?, &a.line(1)?)?)
    },
    "intersect_circles" => |_, a| {
        a.arity(3)?;
        let (p, q) = intersect_circles(&a.circle(0)?, &a.circle(1)?)?;
        match a.index(2)? {
            1 => pt(p),
            2 => pt(q),
            _ => Err(a.wrong(2, "1 or 2")),
        }
    },
    "circle" => |_, a| {
        a.arity(2)?;
        Ok(Object::Circle(Circle::new(a.point(0)?, a.scalar(1)?)?))
    },
    "circle_through" => |_, a| {
        a.arity(3)?;
        Ok(Object::Circle(circle_through(a.point(0)?, a.point(1)?, a.point(2)?)?))
    },
    "circle_diameter" => |_, a| {
        a.arity(2)?;
        Ok(Object::Circle(Circle::on_diameter(a.point(0)?, a.point(1)?)?))
    },
    "circumcircle" => |_, a| { a.arity(1)?; Ok(Object::Circle(circumcircle(&a.tri(0)?))) },
    "center_of" => |_, a| { a.arity(1)?; pt(a.circle(0)?.center) },
    "reflect" => |_, a| { a.arity(2)?; pt(reflect(a.point(0)?, &a.line(1)?)) },
    "foot" => |_, a| { a.arity(2)?; pt(foot(a.point(0)?, &a.line(1)?)) },
    "midpoint" => |_, a| { a.arity(2)?; pt(midpoint(a.point(0)?, a.point(1)?)) },
    "invert" => |_, a| {
        a.arity(2)?;
        let c = a.circle(1)?;
        pt(invert(a.point(0)?, c.center, c.radius() * c.radius())?)
    },
    "radical_axis" => |_, a| {
        a.arity(2)?;
        Ok(Object::Line(radical_axis(&a.circle(0)?, &a.circle(1)?)?))
    },
    "perpendicular" => |_, a| {
        a.arity(2)?;
        Ok(Object::Line(a.line(0)?.perpendicular_through(a.point(1)?)))
    },
    "parallel" => |_, a| {
        a.arity(2)?;
        Ok(Object::Line(a.line(0)?.parallel_through(a.point(1)?)))
    },
    "fit_conic" => |_, a| {
        a.arity(5)?;
        let p = a.points()?;
        Ok(Object::Conic(fit_conic(&[p[0], p[1], p[2], p[3], p[4]])?))
    },
    "fit_cubic" => |_, a| {
        a.arity(9)?;
        let p = a.points()?;
        let arr: [Point; 9] = p.try_into().map_err(|_| a.wrong(0, "9 points"))?;
        Ok(Object::Cubic(fit_cubic(&arr)?))
    },

    "apollonius" => |_, a| { let (t, v) = tv(a)?; Ok(Object::Circle(apollonius_circle(&t, v)?)) },
    "bisector_foot" => |_, a| { let (t, v) = tv(a)?; pt(bisector_foot(&t, v)) },
    "external_bisector_foot" => |_, a| { let (t, v) = tv(a)?; pt(external_bisector_foot(&t, v)?) },
    "pedal" => |_, a| {
        a.arity(2)?;
        Ok(Object::Triangle(pedal_triangle(&a.tri(0)?, a.point(1)?)?))
    },
    "circumcevian" => |_, a| { let (t, p, v) = tpv(a)?; pt(circumcevian(&t, p, v)?) },
    "trace" => |_, a| { let (t, p, v) = tpv(a)?; pt(cevian_trace(&t, p, v)?) },
    "cevian" => |_, a| {
        let (t, p, v) = tpv(a)?;
        Ok(Object::Segment(Segment(t.vertex(v), cevian_trace(&t, p, v)?)))
    },
    "spoke" => |_, a| {
        let (t, p, v) = tpv(a)?;
        Ok(Object::Segment(Segment(t.vertex(v), p)))
    },
    "simson" => |_, a| {
        a.arity(2)?;
        Ok(Object::Line(simson_line(&a.tri(0)?, a.point(1)?)?))
    },
    "euler_line" => |_, a| { a.arity(1)?; Ok(Object::Line(euler_line(&a.tri(0)?)?)) },
    "sagitta" => |_, a| { let (t, v) = tv(a)?; Ok(Object::Segment(sagitta(&t, v))) },
    "parachord" => |_, a| { let (t, p, v) = tpv(a)?; Ok(Object::Segment(parachord(&t, p, v)?)) },
    "antiparallel" => |_, a| { let (t, p, v) = tpv(a)?; Ok(Object::Segment(antiparallel(&t, p, v)?)) },
    "apothem" => |_, a| { let (t, p, v) = tpv(a)?; Ok(Object::Segment(apothem(&t, p, v))) },
    "pararadius" => |_, a| {
        a.arity(4)?;
        let t = a.tri(0)?;
        let seg = pararadius(&t, a.point(1)?, a.vertex(2, &t)?, a.vertex(3, &t)?)?;
        Ok(Object::Segment(seg))
    },
    "incline" => |_, a| {
        a.arity(4)?;
        let t = a.tri(0)?;
        let seg = incline(&t, a.point(1)?, a.vertex(2, &t)?, a.scalar(3)?)?;
        Ok(Object::Segment(seg))
    },
    "circlecevian" => |_, a| { let (t, p, v) = tpv(a)?; Ok(Object::Segment(circlecevian(&t, p, v)?)) },
    "end1" => |_, a| { a.arity(1)?; pt(a.seg(0)?.0) },
    "end2" => |_, a| { a.arity(1)?; pt(a.seg(0)?.1) },

    "dist" => |_, a| {
        a.arity(2)?;
        let p = a.point(0)?;
        match a.obj(1) {
            Some(Object::Line(l)) => sc(l.eval(p).abs()),
            _ => sc(p.dist(a.point(1)?)),
        }
    },
    "length" => |_, a| { a.arity(1)?; sc(a.seg(0)?.length()) },
    "angle" => |_, a| {
        a.arity(3)?;
        sc(directed_angle(a.point(0)?, a.point(1)?, a.point(2)?)?.radians())
    },
    "circle_angle" => |_, a| {
        a.arity(2)?;
        sc(angle_between_circles(&a.circle(0)?, &a.circle(1)?)?)
    },
    "radius" => |_, a| { a.arity(1)?; sc(a.circle(0)?.radius()) },
    "area" => |_, a| { a.arity(1)?; sc(a.tri(0)?.area()) },
    "circumradius" => |_, a| { a.arity(1)?; sc(a.tri(0)?.circumradius()) },
    "inradius" => |_, a| { a.arity(1)?; sc(a.tri(0)?.inradius()) },
    "side" => |_, a| { let (t, v) = tv(a)?; sc(t.side(v)) },
    "angle_at" => |_, a| { let (t, v) = tv(a)?; sc(t.angle(v)) },

    "spoke_length" => |_, a| { let (t, v) = tv(a)?; sc(formulas::spoke_length(&t, v).value) },
    "isodynamic_separation" => |_, a| {
        a.arity(1)?;
        sc(formulas::isodynamic_separation(&a.tri(0)?)?.value)
    },
    "pedal_area" => |_, a| { a.arity(1)?; sc(formulas::pedal_area(&a.tri(0)?).value) },
    "cevian_length" => |_, a| { let (t, v) = tv(a)?; sc(formulas::cevian_length(&t, v)?.value) },
    "locus_radius" => |_, a| {
        a.arity(2)?;
        sc(formulas::locus_radius(a.scalar(0)?, a.scalar(1)?)?.value)
    },
    "si_ratio" => |_, a| { a.arity(1)?; sc(formulas::si_ratio(&a.tri(0)?)?) },

    "add" => |_, a| binary(a, |x, y| x + y),
    "sub" => |_, a| binary(a, |x, y| x - y),
    "mul" => |_, a| binary(a, |x, y| x * y),
    "div" => |_, a| binary(a, |x, y| x / y),
    "pow" => |_, a| binary(a, f64::powf),
    "neg" => |_, a| unary(a, |x| -x),
    "inv" => |_, a| unary(a, |x| 1.0 / x),
    "sin" => |_, a| unary(a, f64::sin),
    "cos" => |_, a| unary(a, f64::cos),
    "sqrt" => |_, a| unary(a, f64::sqrt),
    "const" => |_, a| unary(a, |x| x),

    "translate" => |_, a| {
        a.arity(3)?;
        pt(a.point(0)? + (a.point(2)? - a.point(1)?))
    },
    "along" => |_, a| {
        a.arity(3)?;
        pt(a.point(0)?.lerp(a.point(1)?, a.scalar(2)?))
    },

    "random_point_in" => |st, a| {
        a.arity(1)?;
        let (u, v): (f64, f64) = (st.rng().random(), st.rng().random());
        match a.obj(0) {
            Some(Object::Circle(c)) => {
                let r = c.radius() * u.sqrt();
                pt(c.center + Point::new((TAU * v).cos(), (TAU * v).sin()) * r)
            }
            Some(Object::Triangle(t)) => {
                let (u, v) = if u + v > 1.0 { (1.0 - u, 1.0 - v) } else { (u, v) };
                let [p, q, r] = t.points();
                pt(p + (q - p) * u + (r - p) * v)
            }
            _ => Err(a.wrong(0, "a circle or triangle")),
        }
    },
    "random_point_on" => |st, a| {
        a.arity(1)?;
        let u: f64 = st.rng().random();
        match a.obj(0) {
            Some(Object::Circle(c)) => pt(c.point_at(TAU * u)),
            Some(Object::Segment(s)) => pt(s.0.lerp(s.1, u)),
            Some(Object::Line(l)) => {
                let base = foot(st.origin(), l);
                pt(base + l.direction() * ((2.0 * u - 1.0) * LINE_WINDOW * st.scale()))
            }
            _ => Err(a.wrong(0, "a circle, segment or line")),
        }
    },
    "arc_point_excluding" => |st, a| arc_point(st, a, false),
    "arc_point_containing" => |st, a| arc_point(st, a, true),
    "random_scalar" => |st, a| {
        a.arity(2)?;
        let (lo, hi) = (a.scalar(0)?, a.scalar(1)?);
        if !(lo < hi) {
            return Err(a.wrong(1, "an upper bound above the lower bound"));
        }
        let u: f64 = st.rng().random();
        sc(lo + (hi - lo) * u)
    },
    "jitter" => |st, a| {
        a.arity(1)?;
        let p = a.point(0)?;
        let theta = st.rng().random_range(0.0..TAU);
        pt(p + Point::new(theta.cos(), theta.sin()) * (JITTER * st.scale()))
    },
}

/// Evaluates `program` once. Construction failures come back as
/// [`EvalError::Construction`] so that random trials can be skipped.
pub fn evaluate(program: &Program, ctx: &mut EvalContext) -> Result<Evaluation, EvalError> {
    let mut st = State {
        fig: Figure::new(),
        frame: None,
        ctx,
    };
    let mut residuals = Vec::new();
    for (i, stmt) in program.stmts.iter().enumerate() {
        let line = program.span(i).line;
        match stmt {
            Stmt::Bind { name, call } => {
                let obj = bind(&mut st, call).map_err(|f| match f {
                    Fail::Geom(cause) => EvalError::Construction {
                        name: name.clone(),
                        line,
                        cause,
                    },
                    Fail::Type(message) => EvalError::Type { line, message },
                })?;
                if st.frame.is_none() {
                    if let Object::Triangle(t) = obj {
                        let [a, b, c] = t.points();
                        st.frame = Some(((a + b + c) / 3.0, t.diameter()));
                    }
                }
                if !st.fig.insert(name, obj) {
                    return Err(EvalError::Type {
                        line,
                        message: format!("`{name}` is already defined"),
                    });
                }
            }
            Stmt::Assert(call) => {
                let kind: RelationKind = call
                    .func
                    .parse()
                    .map_err(|message| EvalError::Type { line, message })?;
                let args = entities(&st.fig, call).map_err(|message| EvalError::Type { line, message })?;
                let scale = st.frame.map_or_else(|| figure_extent(&st.fig), |f| f.1);
                let tol = Tolerance::catalog(scale);
                let value = check_relation(kind, &args, &tol).map_err(|cause| match cause {
                    GeomError::ArityMismatch { .. } => EvalError::Type {
                        line,
                        message: cause.to_string(),
                    },
                    cause => EvalError::Construction {
                        name: format!("assert {}", call.func),
                        line,
                        cause,
                    },
                })?;
                residuals.push(Residual { kind, value });
            }
        }
    }
    let scale = st.frame.map_or_else(|| figure_extent(&st.fig), |f| f.1);
    Ok(Evaluation {
        figure: st.fig,
        scale,
        residuals,
    })
}

fn figure_extent(fig: &Figure) -> f64 {
    let pts: Vec<Point> = fig.iter().flat_map(|(_, o)| o.extent_points()).collect();
    let d = diameter(&pts);
    if d > 0.0 {
        d
    } else {
        1.0
    }
}

fn bind(st: &mut State, call: &Call) -> Out {
    let f = builder(&call.func)
        .ok_or_else(|| Fail::Type(format!("unknown constructor `{}`", call.func)))?;
    let vals = call
        .args
        .iter()
        .map(|a| match a {
            Arg::Name(n) => st
                .fig
                .get(n)
                .map(|o| Val::Obj(n.clone(), *o))
                .ok_or_else(|| Fail::Type(format!("`{n}` is not defined"))),
            Arg::Number(x) => Ok(Val::Num(*x)),
            Arg::Angle(d) => Ok(Val::Angle(*d)),
        })
        .collect::<Result<Vec<_>, _>>()?;
    f(st, &In { func: &call.func, vals })
}

/// Relation arguments: triangles expand to their vertices, segments to
/// their endpoints, literals become scalars (angles in radians).
pub(crate) fn entities(fig: &Figure, call: &Call) -> Result<Vec<Entity>, String> {
    let mut out = Vec::new();
    for a in &call.args {
        match a {
            Arg::Name(n) => {
                let o = fig.get(n).ok_or_else(|| format!("`{n}` is not defined"))?;
                out.extend(o.entities());
            }
            Arg::Number(x) => out.push(Entity::Scalar(*x)),
            Arg::Angle(d) => out.push(Entity::Scalar(d.to_radians())),
        }
    }
    Ok(out)
}
