//! Diagram layout, SVG emission and the full HTML card.

mod html;
pub mod layout;
mod svg;

pub use html::render_card_html;
pub use layout::{
    layout_diagram, layout_unchecked, ActorGlyph, Arrowhead, DiagramLayout, Edge, EdgeStyle,
    FillClass, Oval, Point, Rect, Side,
};
pub use svg::{render_svg, render_svg_document, AI_FILL, FONT_SIZE, NON_AI_FILL, STROKE};

/// Use case names longer than this are cut and get a hover title.
pub const MAX_LABEL_CHARS: usize = 22;

pub(crate) fn escape_xml(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            _ => out.push(c),
        }
    }
    out
}

/// The displayed use case label and whether it was shortened.
pub fn truncate_label(name: &str) -> (String, bool) {
    if name.chars().count() <= MAX_LABEL_CHARS {
        (name.to_string(), false)
    } else {
        let s: String = name.chars().take(MAX_LABEL_CHARS - 1).collect();
        let mut s = s.trim_end().to_string();
        s.push('…');
        (s, true)
    }
}
