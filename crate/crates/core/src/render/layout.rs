//! Deterministic diagram geometry.
//!
//! Use cases form one column inside the system boundary, in declaration
//! order. The primary actor and every actor connected to it through actor
//! generalizations stand on the left; the rest stand on the right. Edges
//! run between shape outlines along the line joining the shape centres,
//! except include/extend edges between non-adjacent ovals, which are routed
//! through a vertical lane to the right of the column so they do not run
//! over the ovals in between.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::model::{RelationKind, UseCaseCard};
use crate::risk::NotValidated;
use crate::validate::validate;

pub const OVAL_WIDTH: i32 = 160;
pub const OVAL_HEIGHT: i32 = 56;
pub const OVAL_GAP: i32 = 24;
pub const BOUNDARY_PADDING: i32 = 32;
pub const TOP_MARGIN: i32 = 16;
pub const BOTTOM_MARGIN: i32 = 16;
/// Width of the actor band on each side of the boundary.
pub const ACTOR_BAND: i32 = 240;
pub const ACTOR_BOX_WIDTH: i32 = 32;
pub const ACTOR_BOX_HEIGHT: i32 = 48;
/// Minimum vertical room per actor, glyph plus name.
pub const ACTOR_SLOT: i32 = 80;
pub const LANE_SPACING: i32 = 16;
/// Margin between the outermost lane and the boundary.
pub const LANE_LABEL_ROOM: i32 = 24;
/// How far an actor's name reaches below the glyph centre.
pub const ACTOR_LABEL_DEPTH: i32 = ACTOR_BOX_HEIGHT / 2 + 18;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Point {
    pub x: i32,
    pub y: i32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Rect {
    pub x: i32,
    pub y: i32,
    pub width: i32,
    pub height: i32,
}

impl Rect {
    pub fn right(&self) -> i32 {
        self.x + self.width
    }

    pub fn bottom(&self) -> i32 {
        self.y + self.height
    }

    pub fn strictly_contains(&self, p: Point) -> bool {
        p.x > self.x && p.x < self.right() && p.y > self.y && p.y < self.bottom()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActorGlyph {
    pub actor_id: String,
    /// Centre of the glyph box.
    pub anchor: Point,
    pub side: Side,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FillClass {
    Ai,
    NonAi,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Oval {
    pub use_case_id: String,
    pub center: Point,
    pub rx: i32,
    pub ry: i32,
    pub fill_class: FillClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeStyle {
    Solid,
    Dashed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Arrowhead {
    None,
    Open,
    HollowTriangle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub relation_index: usize,
    pub points: Vec<Point>,
    pub style: EdgeStyle,
    pub arrowhead: Arrowhead,
    pub label: Option<&'static str>,
    pub label_at: Option<Point>,
    /// Lane labels run along the lane, rotated a quarter turn.
    pub label_vertical: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramLayout {
    pub width: i32,
    pub height: i32,
    pub boundary: Rect,
    pub actor_glyphs: Vec<ActorGlyph>,
    pub ovals: Vec<Oval>,
    pub edges: Vec<Edge>,
}

/// Style, arrowhead and label for each relation kind.
pub fn edge_style(kind: RelationKind) -> (EdgeStyle, Arrowhead, Option<&'static str>) {
    match kind {
        RelationKind::Association => (EdgeStyle::Solid, Arrowhead::None, None),
        RelationKind::Include => (EdgeStyle::Dashed, Arrowhead::Open, Some("«include»")),
        RelationKind::Extend => (EdgeStyle::Dashed, Arrowhead::Open, Some("«extend»")),
        RelationKind::ActorGeneralization => (EdgeStyle::Solid, Arrowhead::HollowTriangle, None),
    }
}

#[derive(Clone, Copy)]
enum Shape {
    Ellipse { center: Point, rx: i32, ry: i32 },
    /// Actor glyph plus its name, which hangs lower than the glyph top.
    Box { center: Point, half_w: i32, up: i32, down: i32 },
}

impl Shape {
    fn center(self) -> Point {
        match self {
            Shape::Ellipse { center, .. } | Shape::Box { center, .. } => center,
        }
    }

    /// Where the ray from the centre towards `toward` leaves the outline.
    fn clip(self, toward: Point) -> Point {
        let c = self.center();
        let dx = f64::from(toward.x - c.x);
        let dy = f64::from(toward.y - c.y);
        if dx == 0.0 && dy == 0.0 {
            return c;
        }
        let t = match self {
            Shape::Ellipse { rx, ry, .. } => {
                1.0 / ((dx / f64::from(rx)).powi(2) + (dy / f64::from(ry)).powi(2)).sqrt()
            }
            Shape::Box { half_w, up, down, .. } => {
                let half_h = if dy < 0.0 { up } else { down };
                let tx = if dx == 0.0 { f64::INFINITY } else { f64::from(half_w) / dx.abs() };
                let ty = if dy == 0.0 { f64::INFINITY } else { f64::from(half_h) / dy.abs() };
                tx.min(ty)
            }
        };
        Point { x: c.x + (dx * t).round() as i32, y: c.y + (dy * t).round() as i32 }
    }
}

fn midpoint(a: Point, b: Point) -> Point {
    Point { x: (a.x + b.x) / 2, y: (a.y + b.y) / 2 }
}

/// Lay out a card that passes validation.
pub fn layout_diagram(card: &UseCaseCard) -> Result<DiagramLayout, NotValidated> {
    let diagnostics = validate(card);
    if diagnostics.has_errors() {
        return Err(NotValidated(diagnostics));
    }
    Ok(layout_unchecked(card))
}

/// Layout without the validation gate. Relations whose endpoints do not
/// resolve are skipped.
pub fn layout_unchecked(card: &UseCaseCard) -> DiagramLayout {
    let uc_pos: HashMap<&str, usize> =
        card.use_cases.iter().enumerate().map(|(i, u)| (u.id.as_str(), i)).collect();

    // Actors generalization-connected to the primary actor go left.
    let mut left_ids: HashSet<&str> = HashSet::new();
    let mut queue = VecDeque::new();
    if card.actor(&card.primary_actor).is_some() {
        left_ids.insert(card.primary_actor.as_str());
        queue.push_back(card.primary_actor.as_str());
    }
    while let Some(id) = queue.pop_front() {
        for rel in card.relations.iter().filter(|r| r.kind == RelationKind::ActorGeneralization) {
            let other = if rel.source == id {
                rel.target.as_str()
            } else if rel.target == id {
                rel.source.as_str()
            } else {
                continue;
            };
            if card.actor(other).is_some() && left_ids.insert(other) {
                queue.push_back(other);
            }
        }
    }
    let (left, right): (Vec<_>, Vec<_>) =
        card.actors.iter().partition(|a| left_ids.contains(a.id.as_str()));

    // Lanes for include/extend edges that skip over ovals; shorter spans
    // take the inner lanes so nested spans do not cross.
    let mut skipping: Vec<(usize, usize)> = Vec::new();
    for (i, rel) in card.relations.iter().enumerate() {
        if !matches!(rel.kind, RelationKind::Include | RelationKind::Extend) {
            continue;
        }
        if let (Some(&s), Some(&t)) = (uc_pos.get(rel.source.as_str()), uc_pos.get(rel.target.as_str())) {
            if s.abs_diff(t) > 1 {
                skipping.push((s.abs_diff(t), i));
            }
        }
    }
    skipping.sort();
    let lanes: HashMap<usize, i32> = skipping.iter().enumerate().map(|(lane, &(_, i))| (i, lane as i32)).collect();
    let lane_count = lanes.len() as i32;

    let n = card.use_cases.len() as i32;
    let stack_height = n * OVAL_HEIGHT + (n - 1).max(0) * OVAL_GAP;
    let most_actors = left.len().max(right.len()) as i32;
    let height = (stack_height + 2 * BOUNDARY_PADDING).max(most_actors * ACTOR_SLOT);
    let mut width = OVAL_WIDTH + 2 * BOUNDARY_PADDING;
    if lane_count > 0 {
        width += lane_count * LANE_SPACING + LANE_LABEL_ROOM;
    }
    let boundary = Rect { x: ACTOR_BAND, y: TOP_MARGIN, width, height };

    let column_x = boundary.x + BOUNDARY_PADDING + OVAL_WIDTH / 2;
    let stack_top = boundary.y + (height - stack_height) / 2;
    let ovals: Vec<Oval> = card
        .use_cases
        .iter()
        .enumerate()
        .map(|(i, uc)| Oval {
            use_case_id: uc.id.clone(),
            center: Point {
                x: column_x,
                y: stack_top + i as i32 * (OVAL_HEIGHT + OVAL_GAP) + OVAL_HEIGHT / 2,
            },
            rx: OVAL_WIDTH / 2,
            ry: OVAL_HEIGHT / 2,
            fill_class: if uc.is_ai { FillClass::Ai } else { FillClass::NonAi },
        })
        .collect();

    let place = |actors: &[&crate::model::Actor], x: i32, side: Side| -> Vec<ActorGlyph> {
        let k = actors.len() as i32;
        actors
            .iter()
            .enumerate()
            .map(|(i, a)| ActorGlyph {
                actor_id: a.id.clone(),
                // Centre of the i-th of k equal bands of the boundary height.
                anchor: Point { x, y: boundary.y + height * (2 * i as i32 + 1) / (2 * k) },
                side,
            })
            .collect()
    };
    let mut actor_glyphs = place(&left, boundary.x / 2, Side::Left);
    actor_glyphs.extend(place(&right, boundary.right() + ACTOR_BAND / 2, Side::Right));
    // Keep declaration order regardless of side.
    let actor_order: HashMap<&str, usize> =
        card.actors.iter().enumerate().map(|(i, a)| (a.id.as_str(), i)).collect();
    actor_glyphs.sort_by_key(|g| actor_order[g.actor_id.as_str()]);

    let shape_of = |id: &str| -> Option<Shape> {
        if let Some(&i) = uc_pos.get(id) {
            let o = &ovals[i];
            return Some(Shape::Ellipse { center: o.center, rx: o.rx, ry: o.ry });
        }
        actor_glyphs.iter().find(|g| g.actor_id == id).map(|g| Shape::Box {
            center: g.anchor,
            half_w: ACTOR_BOX_WIDTH / 2,
            up: ACTOR_BOX_HEIGHT / 2,
            down: ACTOR_LABEL_DEPTH,
        })
    };

    let oval_right = column_x + OVAL_WIDTH / 2;
    let mut edges = Vec::new();
    for (i, rel) in card.relations.iter().enumerate() {
        let (Some(src), Some(tgt)) = (shape_of(&rel.source), shape_of(&rel.target)) else {
            continue;
        };
        let (style, arrowhead, label) = edge_style(rel.kind);
        let vertical = lanes.contains_key(&i);
        let (points, label_at) = match lanes.get(&i) {
            Some(&lane) => {
                let lane_x = oval_right + LANE_SPACING * (lane + 1);
                let (sy, ty) = (src.center().y, tgt.center().y);
                let points = vec![
                    Point { x: oval_right, y: sy },
                    Point { x: lane_x, y: sy },
                    Point { x: lane_x, y: ty },
                    Point { x: oval_right, y: ty },
                ];
                (points, Point { x: lane_x, y: (sy + ty) / 2 })
            }
            None => {
                let a = src.clip(tgt.center());
                let b = tgt.clip(src.center());
                (vec![a, b], midpoint(a, b))
            }
        };
        edges.push(Edge {
            relation_index: i,
            points,
            style,
            arrowhead,
            label,
            label_at: label.map(|_| label_at),
            label_vertical: vertical,
        });
    }

    DiagramLayout {
        width: boundary.right() + ACTOR_BAND,
        height: boundary.bottom() + BOTTOM_MARGIN,
        boundary,
        actor_glyphs,
        ovals,
        edges,
    }
}
