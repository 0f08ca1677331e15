use std::collections::HashMap;
use std::fmt;

use crate::centers::Triangle;
use crate::kernel::{Circle, Conic, Cubic, Entity, Line, Point};

/// Directed segment between two points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment(pub Point, pub Point);

impl Segment {
    pub fn length(&self) -> f64 {
        self.0.dist(self.1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Object {
    Point(Point),
    Line(Line),
    Circle(Circle),
    Conic(Conic),
    Cubic(Cubic),
    Triangle(Triangle),
    Segment(Segment),
    Scalar(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ObjectKind {
    Point,
    Line,
    Circle,
    Conic,
    Cubic,
    Triangle,
    Segment,
    Scalar,
}

impl fmt::Display for ObjectKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObjectKind::Point => "point",
            ObjectKind::Line => "line",
            ObjectKind::Circle => "circle",
            ObjectKind::Conic => "conic",
            ObjectKind::Cubic => "cubic",
            ObjectKind::Triangle => "triangle",
            ObjectKind::Segment => "segment",
            ObjectKind::Scalar => "scalar",
        })
    }
}

impl Object {
    pub fn kind(&self) -> ObjectKind {
        match self {
            Object::Point(_) => ObjectKind::Point,
            Object::Line(_) => ObjectKind::Line,
            Object::Circle(_) => ObjectKind::Circle,
            Object::Conic(_) => ObjectKind::Conic,
            Object::Cubic(_) => ObjectKind::Cubic,
            Object::Triangle(_) => ObjectKind::Triangle,
            Object::Segment(_) => ObjectKind::Segment,
            Object::Scalar(_) => ObjectKind::Scalar,
        }
    }

    /// Relation arguments: triangles contribute their three vertices and
    /// segments their two endpoints.
    pub fn entities(&self) -> Vec<Entity> {
        match *self {
            Object::Point(p) => vec![Entity::Point(p)],
            Object::Line(l) => vec![Entity::Line(l)],
            Object::Circle(c) => vec![Entity::Circle(c)],
            Object::Conic(c) => vec![Entity::Conic(c)],
            Object::Cubic(c) => vec![Entity::Cubic(c)],
            Object::Triangle(t) => t.points().map(Entity::Point).to_vec(),
            Object::Segment(Segment(p, q)) => vec![Entity::Point(p), Entity::Point(q)],
            Object::Scalar(v) => vec![Entity::Scalar(v)],
        }
    }

    /// Points this object contributes to the figure's extent.
    pub fn extent_points(&self) -> Vec<Point> {
        match *self {
            Object::Point(p) => vec![p],
            Object::Triangle(t) => t.points().to_vec(),
            Object::Segment(Segment(p, q)) => vec![p, q],
            _ => Vec::new(),
        }
    }
}

/// Named objects in construction order.
#[derive(Debug, Clone, Default)]
pub struct Figure {
    order: Vec<String>,
    objects: HashMap<String, Object>,
}

impl Figure {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `name`; returns false (and leaves the figure unchanged) if the
    /// name is taken.
    pub fn insert(&mut self, name: &str, obj: Object) -> bool {
        if self.objects.contains_key(name) {
            return false;
        }
        self.order.push(name.to_string());
        self.objects.insert(name.to_string(), obj);
        true
    }

    pub fn get(&self, name: &str) -> Option<&Object> {
        self.objects.get(name)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Objects in insertion order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &Object)> {
        self.order
            .iter()
            .map(move |n| (n.as_str(), &self.objects[n]))
    }

    pub fn points(&self) -> Vec<(&str, Point)> {
        self.iter()
            .filter_map(|(n, o)| match o {
                Object::Point(p) => Some((n, *p)),
                _ => None,
            })
            .collect()
    }
}
