use std::fmt::Write as _;

use super::layout::{Arrowhead, DiagramLayout, EdgeStyle, FillClass, Point, ACTOR_BOX_HEIGHT};
use super::{escape_xml, layout_diagram, truncate_label};
use crate::model::UseCaseCard;
use crate::risk::NotValidated;

pub const AI_FILL: &str = "#cfe2f3";
pub const NON_AI_FILL: &str = "#ffffff";
pub const STROKE: &str = "#000000";
pub const FONT_SIZE: i32 = 12;
/// Room for a guillemet label at the 10px edge-label size.
const EDGE_LABEL_WIDTH: i32 = 52;

/// Validate, lay out and render in one step.
pub fn render_svg_document(card: &UseCaseCard) -> Result<String, NotValidated> {
    let layout = layout_diagram(card)?;
    Ok(render_svg(&layout, card))
}

fn points_attr(points: &[Point]) -> String {
    let parts: Vec<String> = points.iter().map(|p| format!("{},{}", p.x, p.y)).collect();
    parts.join(" ")
}

/// Emit an SVG 1.1 document for a layout computed from `card`.
///
/// Elements appear in a fixed order: boundary, edges, ovals, actors, labels.
pub fn render_svg(layout: &DiagramLayout, card: &UseCaseCard) -> String {
    let mut out = String::new();
    let (w, h) = (layout.width, layout.height);
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" \
         viewBox=\"0 0 {w} {h}\" font-family=\"sans-serif\" font-size=\"{FONT_SIZE}\">"
    );
    let _ = writeln!(out, "  <title>{}</title>", escape_xml(&card.title));
    out.push_str("  <defs>\n");
    let _ = writeln!(
        out,
        "    <marker id=\"open-arrow\" markerWidth=\"10\" markerHeight=\"10\" refX=\"10\" refY=\"5\" \
         orient=\"auto\" markerUnits=\"userSpaceOnUse\"><path d=\"M0,0 L10,5 L0,10\" fill=\"none\" \
         stroke=\"{STROKE}\"/></marker>"
    );
    let _ = writeln!(
        out,
        "    <marker id=\"hollow-triangle\" markerWidth=\"14\" markerHeight=\"14\" refX=\"14\" refY=\"7\" \
         orient=\"auto\" markerUnits=\"userSpaceOnUse\"><path d=\"M0,0 L14,7 L0,14 Z\" \
         fill=\"{NON_AI_FILL}\" stroke=\"{STROKE}\"/></marker>"
    );
    out.push_str("  </defs>\n");

    let b = layout.boundary;
    let _ = writeln!(
        out,
        "  <rect class=\"boundary\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{NON_AI_FILL}\" stroke=\"{STROKE}\"/>",
        b.x, b.y, b.width, b.height
    );

    out.push_str("  <g class=\"edges\">\n");
    for e in &layout.edges {
        let kind = card.relations[e.relation_index].kind;
        let mut attrs = format!(
            "class=\"edge {kind}\" data-relation=\"{}\" points=\"{}\" fill=\"none\" stroke=\"{STROKE}\"",
            e.relation_index,
            points_attr(&e.points)
        );
        if e.style == EdgeStyle::Dashed {
            attrs.push_str(" stroke-dasharray=\"6 4\"");
        }
        match e.arrowhead {
            Arrowhead::None => {}
            Arrowhead::Open => attrs.push_str(" marker-end=\"url(#open-arrow)\""),
            Arrowhead::HollowTriangle => attrs.push_str(" marker-end=\"url(#hollow-triangle)\""),
        }
        let _ = writeln!(out, "    <polyline {attrs}/>");
    }
    out.push_str("  </g>\n");

    out.push_str("  <g class=\"use-cases\">\n");
    for o in &layout.ovals {
        let (class, fill) = match o.fill_class {
            FillClass::Ai => ("uc-ai", AI_FILL),
            FillClass::NonAi => ("uc", NON_AI_FILL),
        };
        let _ = writeln!(
            out,
            "    <ellipse class=\"{class}\" data-id=\"{}\" cx=\"{}\" cy=\"{}\" rx=\"{}\" ry=\"{}\" fill=\"{fill}\" stroke=\"{STROKE}\"/>",
            escape_xml(&o.use_case_id),
            o.center.x,
            o.center.y,
            o.rx,
            o.ry
        );
    }
    out.push_str("  </g>\n");

    // Stick figure in a 32x48 box: head, body, arms, two legs.
    let _ = writeln!(out, "  <g class=\"actors\" fill=\"none\" stroke=\"{STROKE}\">");
    for g in &layout.actor_glyphs {
        let (x, top) = (g.anchor.x, g.anchor.y - ACTOR_BOX_HEIGHT / 2);
        let _ = writeln!(out, "    <g class=\"actor\" data-id=\"{}\">", escape_xml(&g.actor_id));
        let _ = writeln!(out, "      <circle cx=\"{x}\" cy=\"{}\" r=\"7\"/>", top + 7);
        let _ = writeln!(out, "      <line x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\"/>", top + 14, top + 32);
        let _ = writeln!(out, "      <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>", x - 16, top + 20, x + 16, top + 20);
        let _ = writeln!(out, "      <line x1=\"{x}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>", top + 32, x - 12, top + 48);
        let _ = writeln!(out, "      <line x1=\"{x}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>", top + 32, x + 12, top + 48);
        out.push_str("    </g>\n");
    }
    out.push_str("  </g>\n");

    out.push_str("  <g class=\"labels\" text-anchor=\"middle\">\n");
    let _ = writeln!(
        out,
        "    <text class=\"system-label\" x=\"{}\" y=\"{}\" font-weight=\"bold\">{}</text>",
        b.x + b.width / 2,
        b.y + 16,
        escape_xml(&card.title)
    );
    for o in &layout.ovals {
        let Some(uc) = card.use_case(&o.use_case_id) else { continue };
        let (text, cut) = truncate_label(&uc.name);
        let (x, y) = (o.center.x, o.center.y + FONT_SIZE / 3);
        if cut {
            let _ = writeln!(
                out,
                "    <text class=\"uc-label\" x=\"{x}\" y=\"{y}\"><title>{}</title>{}</text>",
                escape_xml(&uc.name),
                escape_xml(&text)
            );
        } else {
            let _ = writeln!(out, "    <text class=\"uc-label\" x=\"{x}\" y=\"{y}\">{}</text>", escape_xml(&text));
        }
    }
    for g in &layout.actor_glyphs {
        let Some(actor) = card.actor(&g.actor_id) else { continue };
        let _ = writeln!(
            out,
            "    <text class=\"actor-label\" x=\"{}\" y=\"{}\">{}</text>",
            g.anchor.x,
            g.anchor.y + ACTOR_BOX_HEIGHT / 2 + 14,
            escape_xml(&actor.name)
        );
    }
    for e in &layout.edges {
        let (Some(label), Some(at)) = (e.label, e.label_at) else { continue };
        if e.label_vertical {
            // Centred on the lane over a white band so crossing lanes stay legible.
            let half = EDGE_LABEL_WIDTH / 2;
            let _ = writeln!(
                out,
                "    <g transform=\"rotate(-90 {x} {y})\"><rect x=\"{}\" y=\"{}\" width=\"{EDGE_LABEL_WIDTH}\" height=\"12\" fill=\"{NON_AI_FILL}\"/>\
                 <text class=\"edge-label\" x=\"{x}\" y=\"{}\" font-size=\"10\">{label}</text></g>",
                at.x - half,
                at.y - 6,
                at.y + 4,
                x = at.x,
                y = at.y,
            );
        } else {
            let _ = writeln!(
                out,
                "    <text class=\"edge-label\" x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"start\">{label}</text>",
                at.x + 6,
                at.y + 4
            );
        }
    }
    out.push_str("  </g>\n");
    out.push_str("</svg>\n");
    out
}
