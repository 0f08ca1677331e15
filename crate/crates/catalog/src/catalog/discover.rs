use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::fmt;

use isodyn_core::constructions::{Figure, Object};
use isodyn_core::kernel::{
    check_relation, circular_gap, directed_angle, line_through, Entity, Point, RelationKind,
    Tolerance,
};
use isodyn_core::GeomError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::trial_seed;
use crate::dsl::{evaluate, EvalContext, EvalError, Program};
use crate::sampler::TriangleClass;

/// Cap on the number of candidate relations per kind.
pub const MAX_CANDIDATES: usize = 100_000;

/// Step, in degrees, of the constants tried for angle sums.
const ANGLE_STEP_DEG: f64 = 15.0;

/// Random configurations an angle relation must fail on to count as
/// non-trivial.
const TRIVIALITY_PROBES: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct DiscoverConfig {
    pub kinds: Vec<RelationKind>,
    pub instances: usize,
    pub seed: u64,
    pub tol: f64,
    pub class: TriangleClass,
}

impl Default for DiscoverConfig {
    fn default() -> Self {
        Self {
            kinds: Vec::new(),
            instances: 50,
            seed: 42,
            tol: 1e-7,
            class: TriangleClass::Generic,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum DiscoverError {
    #[error("{kind}: {count} candidates exceed the limit of {limit}")]
    CombinatorialLimit {
        kind: RelationKind,
        count: usize,
        limit: usize,
    },
    #[error("discovery does not scan `{0}` relations")]
    Unsupported(RelationKind),
    #[error("figure program: {0}")]
    Program(EvalError),
    #[error("only {got} of {wanted} instances could be constructed")]
    TooFewInstances { got: usize, wanted: usize },
}

/// An argument of a discovered relation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Term {
    Name(String),
    /// The line through two named points.
    Join(String, String),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Name(n) => f.write_str(n),
            Term::Join(p, q) => write!(f, "line({p}, {q})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Relation {
    Incidence {
        kind: RelationKind,
        args: Vec<Term>,
    },
    /// `Σ sign·∠XYZ ≡ degrees (mod 360°)` over directed angles.
    AngleSum {
        terms: Vec<(i8, [String; 3])>,
        degrees: f64,
    },
}

impl Relation {
    pub fn kind(&self) -> RelationKind {
        match self {
            Relation::Incidence { kind, .. } => *kind,
            Relation::AngleSum { .. } => RelationKind::EqualAngle,
        }
    }

    /// Names the relation mentions, in order of appearance.
    pub fn names(&self) -> Vec<&str> {
        let mut out = Vec::new();
        match self {
            Relation::Incidence { args, .. } => {
                for a in args {
                    match a {
                        Term::Name(n) => out.push(n.as_str()),
                        Term::Join(p, q) => out.extend([p.as_str(), q.as_str()]),
                    }
                }
            }
            Relation::AngleSum { terms, .. } => {
                for (_, t) in terms {
                    out.extend(t.iter().map(String::as_str));
                }
            }
        }
        out
    }

    /// Residual on one figure, relative to `scale`.
    pub fn residual(&self, fig: &Figure, scale: f64) -> Result<f64, GeomError> {
        match self {
            Relation::Incidence { kind, args } => {
                let mut ents = Vec::new();
                for a in args {
                    match a {
                        Term::Name(n) => ents.extend(lookup(fig, n)?.entities()),
                        Term::Join(p, q) => {
                            ents.push(Entity::Line(line_through(point(fig, p)?, point(fig, q)?)?))
                        }
                    }
                }
                check_relation(*kind, &ents, &Tolerance::catalog(scale))
            }
            Relation::AngleSum { terms, degrees } => {
                let mut sum = 0.0;
                for (s, [x, y, z]) in terms {
                    let a = directed_angle(point(fig, x)?, point(fig, y)?, point(fig, z)?)?;
                    sum += *s as f64 * a.radians();
                }
                Ok(circular_gap(sum.rem_euclid(TAU), degrees.to_radians(), TAU))
            }
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Incidence { kind, args } => {
                let a: Vec<String> = args.iter().map(Term::to_string).collect();
                write!(f, "{kind}({})", a.join(", "))
            }
            Relation::AngleSum { terms, degrees } => {
                // a negated angle prints as the reversed angle
                for (i, (s, [x, y, z])) in terms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    if *s > 0 {
                        write!(f, "angle({x}, {y}, {z})")?;
                    } else {
                        write!(f, "angle({z}, {y}, {x})")?;
                    }
                }
                write!(f, " = {degrees}deg")
            }
        }
    }
}

fn lookup<'f>(fig: &'f Figure, name: &str) -> Result<&'f Object, GeomError> {
    fig.get(name).ok_or(GeomError::NonFinite)
}

fn point(fig: &Figure, name: &str) -> Result<Point, GeomError> {
    match lookup(fig, name)? {
        Object::Point(p) => Ok(*p),
        _ => Err(GeomError::NonFinite),
    }
}

struct Instance {
    fig: Figure,
    scale: f64,
}

fn instances(program: &Program, cfg: &DiscoverConfig, stream: &str) -> Result<Vec<Instance>, DiscoverError> {
    let mut out = Vec::with_capacity(cfg.instances);
    let budget = 10 * cfg.instances.max(1);
    for i in 0..budget {
        if out.len() == cfg.instances {
            break;
        }
        let mut ctx = EvalContext::new(cfg.class, trial_seed(cfg.seed, stream, i as u64));
        match evaluate(program, &mut ctx) {
            Ok(e) => out.push(Instance {
                fig: e.figure,
                scale: e.scale,
            }),
            Err(e) if e.is_skip() => continue,
            Err(e) => return Err(DiscoverError::Program(e)),
        }
    }
    if out.len() < cfg.instances {
        return Err(DiscoverError::TooFewInstances {
            got: out.len(),
            wanted: cfg.instances,
        });
    }
    Ok(out)
}

fn holds(rel: &Relation, insts: &[Instance], tol: f64) -> bool {
    insts
        .iter()
        .all(|i| rel.residual(&i.fig, i.scale).is_ok_and(|r| r <= tol))
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn limit(kind: RelationKind, count: usize) -> Result<(), DiscoverError> {
    if count > MAX_CANDIDATES {
        Err(DiscoverError::CombinatorialLimit {
            kind,
            count,
            limit: MAX_CANDIDATES,
        })
    } else {
        Ok(())
    }
}

struct Scan<'a> {
    insts: &'a [Instance],
    tol: f64,
    points: Vec<String>,
    lines: Vec<String>,
    circles: Vec<String>,
    /// Point pairs that coincide on the first instance.
    coincident: BTreeSet<(usize, usize)>,
}

impl Scan<'_> {
    fn incidence(&self, kind: RelationKind, args: Vec<Term>) -> Relation {
        Relation::Incidence { kind, args }
    }

    fn names(&self, idx: &[usize]) -> Vec<Term> {
        idx.iter().map(|&i| Term::Name(self.points[i].clone())).collect()
    }

    fn has_coincident(&self, idx: &[usize]) -> bool {
        idx.iter()
            .enumerate()
            .any(|(a, &i)| idx[a + 1..].iter().any(|&j| self.coincident.contains(&(i.min(j), i.max(j)))))
    }

    fn holds(&self, rel: &Relation) -> bool {
        holds(rel, self.insts, self.tol)
    }

    /// Maximal sets whose every `k`-subset satisfies `kind`, grown from
    /// the `(k-1)`-subsets.
    fn maximal_sets(&self, kind: RelationKind, k: usize) -> Result<Vec<Relation>, DiscoverError> {
        let n = self.points.len();
        limit(kind, binomial(n, k))?;
        let good: BTreeSet<Vec<usize>> = combinations(n, k)
            .into_iter()
            .filter(|c| !self.has_coincident(c))
            .filter(|c| self.holds(&self.incidence(kind, self.names(c))))
            .collect();
        let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
        for base in combinations(n, k - 1) {
            let mut set = base.clone();
            for m in 0..n {
                if base.contains(&m) {
                    continue;
                }
                let mut c = base.clone();
                c.push(m);
                c.sort_unstable();
                if good.contains(&c) {
                    set.push(m);
                }
            }
            if set.len() >= k {
                set.sort_unstable();
                sets.insert(set);
            }
        }
        let all: Vec<Vec<usize>> = sets.into_iter().collect();
        let mut out = Vec::new();
        for s in &all {
            let dominated = all
                .iter()
                .any(|t| t.len() > s.len() && s.iter().all(|i| t.contains(i)));
            if dominated {
                continue;
            }
            let rel = self.incidence(kind, self.names(s));
            if self.holds(&rel) {
                out.push(rel);
            }
        }
        Ok(out)
    }

    /// Named lines followed by joins of point pairs, one join per
    /// collinear class.
    fn all_lines(&self) -> Result<Vec<Term>, DiscoverError> {
        let mut out: Vec<Term> = self.lines.iter().cloned().map(Term::Name).collect();
        let classes = self.maximal_sets(RelationKind::Collinear, 3)?;
        let class_sets: Vec<BTreeSet<&str>> = classes.iter().map(|r| r.names().into_iter().collect()).collect();
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        for pair in combinations(self.points.len(), 2) {
            if self.has_coincident(&pair) {
                continue;
            }
            let (p, q) = (&self.points[pair[0]], &self.points[pair[1]]);
            match class_sets
                .iter()
                .position(|s| s.contains(p.as_str()) && s.contains(q.as_str()))
            {
                Some(c) if !seen.insert(c) => continue,
                _ => out.push(Term::Join(p.clone(), q.clone())),
            }
        }
        Ok(out)
    }

    fn same_line(&self, a: &Term, b: &Term) -> bool {
        let (Term::Join(p, q), Term::Join(r, s)) = (a, b) else {
            return false;
        };
        let names = [p, q, r, s].map(|n| Term::Name(n.clone()));
        let rel = self.incidence(RelationKind::Collinear, names.to_vec());
        self.holds(&rel)
    }

    fn line_pairs(&self, kind: RelationKind) -> Result<Vec<Relation>, DiscoverError> {
        let lines = self.all_lines()?;
        limit(kind, binomial(lines.len(), 2))?;
        let mut out = Vec::new();
        for c in combinations(lines.len(), 2) {
            let (a, b) = (&lines[c[0]], &lines[c[1]]);
            if kind == RelationKind::Parallel && self.same_line(a, b) {
                continue;
            }
            let rel = self.incidence(kind, vec![a.clone(), b.clone()]);
            if self.holds(&rel) {
                out.push(rel);
            }
        }
        Ok(out)
    }

    fn named_tuples(&self, kind: RelationKind, names: &[String], k: usize) -> Result<Vec<Relation>, DiscoverError> {
        limit(kind, binomial(names.len(), k))?;
        Ok(combinations(names.len(), k)
            .into_iter()
            .map(|c| self.incidence(kind, c.iter().map(|&i| Term::Name(names[i].clone())).collect()))
            .filter(|r| self.holds(r))
            .collect())
    }

    fn point_on(&self, kind: RelationKind, carriers: &[String]) -> Result<Vec<Relation>, DiscoverError> {
        limit(kind, self.points.len() * carriers.len())?;
        let mut out = Vec::new();
        for p in &self.points {
            for c in carriers {
                let rel = self.incidence(kind, vec![Term::Name(p.clone()), Term::Name(c.clone())]);
                if self.holds(&rel) {
                    out.push(rel);
                }
            }
        }
        Ok(out)
    }

    fn equal_lengths(&self) -> Result<Vec<Relation>, DiscoverError> {
        let kind = RelationKind::EqualLength;
        let segs: Vec<Vec<usize>> = combinations(self.points.len(), 2)
            .into_iter()
            .filter(|s| !self.has_coincident(s))
            .collect();
        limit(kind, binomial(segs.len(), 2))?;
        let mut out = Vec::new();
        for c in combinations(segs.len(), 2) {
            let idx: Vec<usize> = segs[c[0]].iter().chain(&segs[c[1]]).copied().collect();
            let rel = self.incidence(kind, self.names(&idx));
            if self.holds(&rel) {
                out.push(rel);
            }
        }
        Ok(out)
    }

    fn midpoints(&self) -> Result<Vec<Relation>, DiscoverError> {
        let kind = RelationKind::MidpointOf;
        let n = self.points.len();
        limit(kind, n * binomial(n.saturating_sub(1), 2))?;
        let mut out = Vec::new();
        for m in 0..n {
            for pair in combinations(n, 2) {
                if pair.contains(&m) || self.has_coincident(&pair) {
                    continue;
                }
                let rel = self.incidence(kind, self.names(&[m, pair[0], pair[1]]));
                if self.holds(&rel) {
                    out.push(rel);
                }
            }
        }
        Ok(out)
    }

    fn angle_sums(&self, rng: &mut ChaCha8Rng) -> Result<Vec<Relation>, DiscoverError> {
        let n = self.points.len();
        let mut angles: Vec<[usize; 3]> = Vec::new();
        for y in 0..n {
            for xz in combinations(n, 2) {
                if !xz.contains(&y) {
                    angles.push([xz[0], y, xz[1]]);
                }
            }
        }
        let m = angles.len();
        limit(RelationKind::EqualAngle, m + m * m.saturating_sub(1))?;
        let names = |a: [usize; 3]| a.map(|i| self.points[i].clone());
        let mut candidates: Vec<Vec<(i8, [usize; 3])>> = angles.iter().map(|a| vec![(1, *a)]).collect();
        for c in combinations(m, 2) {
            for s in [1, -1] {
                candidates.push(vec![(1, angles[c[0]]), (s, angles[c[1]])]);
            }
        }
        let first = &self.insts[0];
        let probes: Vec<Figure> = (0..TRIVIALITY_PROBES)
            .map(|_| {
                let mut fig = Figure::new();
                for p in &self.points {
                    let q = Point::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                    fig.insert(p, Object::Point(q));
                }
                fig
            })
            .collect();
        let mut out = Vec::new();
        for terms in candidates {
            let terms: Vec<(i8, [String; 3])> = terms.into_iter().map(|(s, a)| (s, names(a))).collect();
            let probe = Relation::AngleSum {
                terms: terms.clone(),
                degrees: 0.0,
            };
            // read the constant off the first instance
            let Some(value) = probe_value(&probe, &first.fig) else {
                continue;
            };
            let degrees = ((value / ANGLE_STEP_DEG).round() * ANGLE_STEP_DEG).rem_euclid(360.0);
            let rel = Relation::AngleSum { terms, degrees };
            if !self.holds(&rel) {
                continue;
            }
            let trivial = probes
                .iter()
                .all(|f| rel.residual(f, 1.0).is_ok_and(|r| r <= self.tol));
            if !trivial {
                out.push(rel);
            }
        }
        Ok(out)
    }
}

/// The angle sum of `rel` in degrees, in `[0, 360)`.
fn probe_value(rel: &Relation, fig: &Figure) -> Option<f64> {
    let Relation::AngleSum { terms, .. } = rel else {
        return None;
    };
    let mut sum = 0.0;
    for (s, [x, y, z]) in terms {
        let a = directed_angle(point(fig, x).ok()?, point(fig, y).ok()?, point(fig, z).ok()?).ok()?;
        sum += *s as f64 * a.radians();
    }
    Some(sum.rem_euclid(TAU).to_degrees())
}

/// Relations among the named points, lines and circles of `program` that
/// hold on every one of `cfg.instances` random instances.
pub fn discover(program: &Program, cfg: &DiscoverConfig) -> Result<Vec<Relation>, DiscoverError> {
    use RelationKind::*;
    let supported = [
        Coincide,
        Collinear,
        Concyclic,
        Concurrent,
        Parallel,
        Perpendicular,
        EqualLength,
        MidpointOf,
        OnCircle,
        OnLine,
        OrthogonalCircles,
        TangentCircles,
        EqualAngle,
    ];
    if let Some(k) = cfg.kinds.iter().find(|k| !supported.contains(k)) {
        return Err(DiscoverError::Unsupported(*k));
    }
    if cfg.kinds.is_empty() {
        return Ok(Vec::new());
    }
    let insts = instances(program, cfg, "discover")?;
    let first = &insts[0].fig;
    let mut points = Vec::new();
    let mut lines = Vec::new();
    let mut circles = Vec::new();
    for (name, obj) in first.iter() {
        match obj {
            Object::Point(_) => points.push(name.to_string()),
            Object::Line(_) => lines.push(name.to_string()),
            Object::Circle(_) => circles.push(name.to_string()),
            _ => {}
        }
    }
    let mut scan = Scan {
        insts: &insts,
        tol: cfg.tol,
        points,
        lines,
        circles,
        coincident: BTreeSet::new(),
    };
    for pair in combinations(scan.points.len(), 2) {
        let rel = scan.incidence(Coincide, scan.names(&pair));
        if rel
            .residual(first, insts[0].scale)
            .is_ok_and(|r| r <= cfg.tol)
        {
            scan.coincident.insert((pair[0], pair[1]));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(cfg.seed, "discover-probes", 0));
    let kinds: BTreeSet<RelationKind> = cfg.kinds.iter().copied().collect();
    let mut out = Vec::new();
    for kind in RelationKind::ALL.iter().filter(|k| kinds.contains(k)) {
        let found = match kind {
            Coincide => {
                let pts = scan.points.clone();
                scan.named_tuples(Coincide, &pts, 2)?
            }
            Collinear => scan.maximal_sets(Collinear, 3)?,
            Concyclic => scan.maximal_sets(Concyclic, 4)?,
            Concurrent => scan.named_tuples(Concurrent, &scan.lines, 3)?,
            Parallel | Perpendicular => scan.line_pairs(*kind)?,
            EqualLength => scan.equal_lengths()?,
            MidpointOf => scan.midpoints()?,
            OnCircle => scan.point_on(OnCircle, &scan.circles)?,
            OnLine => scan.point_on(OnLine, &scan.lines)?,
            OrthogonalCircles | TangentCircles => scan.named_tuples(*kind, &scan.circles, 2)?,
            EqualAngle => scan.angle_sums(&mut rng)?,
            _ => unreachable!("filtered above"),
        };
        out.extend(found);
    }
    Ok(out)
}

/// Re-tests `relations` on ten times as many fresh instances; returns the
/// ones that fail.
pub fn recheck(
    program: &Program,
    relations: &[Relation],
    cfg: &DiscoverConfig,
) -> Result<Vec<Relation>, DiscoverError> {
    let wider = DiscoverConfig {
        instances: 10 * cfg.instances,
        ..cfg.clone()
    };
    let insts = instances(program, &wider, "recheck")?;
    Ok(relations
        .iter()
        .filter(|r| !holds(r, &insts, cfg.tol))
        .cloned()
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    fn cfg(kinds: &[RelationKind]) -> DiscoverConfig {
        DiscoverConfig {
            kinds: kinds.to_vec(),
            instances: 20,
            ..DiscoverConfig::default()
        }
    }

    #[test]
    fn empty_kinds_find_nothing() {
        let p = parse("T := triangle()\nA := vertex_a(T)").unwrap();
        assert!(discover(&p, &cfg(&[])).unwrap().is_empty());
    }

    #[test]
    fn unsupported_kind() {
        let p = parse("T := triangle()").unwrap();
        assert_eq!(
            discover(&p, &cfg(&[RelationKind::Hyperbola])),
            Err(DiscoverError::Unsupported(RelationKind::Hyperbola))
        );
    }

    #[test]
    fn euler_line_and_midpoint() {
        let p = parse(
            "T := triangle()\nA := vertex_a(T)\nB := vertex_b(T)\nO := center(T, 3)\nG := center(T, 2)\nH := center(T, 4)\nN := center(T, 5)\nM := midpoint(A, B)",
        )
        .unwrap();
        let rels = discover(&p, &cfg(&[RelationKind::Collinear, RelationKind::MidpointOf])).unwrap();
        let shown: Vec<String> = rels.iter().map(|r| r.to_string()).collect();
        assert!(shown.contains(&"collinear(O, G, H, N)".to_string()), "{shown:?}");
        assert!(shown.contains(&"collinear(A, B, M)".to_string()), "{shown:?}");
        assert!(shown.contains(&"midpoint_of(M, A, B)".to_string()), "{shown:?}");
        assert!(shown.contains(&"midpoint_of(N, O, H)".to_string()), "{shown:?}");
        assert!(recheck(&p, &rels, &cfg(&[])).unwrap().is_empty());
    }

    #[test]
    fn too_many_candidates() {
        let mut src = String::from("T := triangle()\n");
        for i in 1..=40 {
            src.push_str(&format!("P{i} := random_point_in(T)\n"));
        }
        let p = parse(&src).unwrap();
        let e = discover(&p, &cfg(&[RelationKind::EqualAngle])).unwrap_err();
        assert!(matches!(e, DiscoverError::CombinatorialLimit { .. }));
    }
}
