//! Lossless source model: parsing into a spanned syntax tree and
//! byte-exact span edits over the original text.

mod diff;
mod edit;
mod layout;
mod tree;

pub use diff::unified_diff;
pub use edit::{apply_edits, Edit, EditError, EditSet};
pub use layout::{
    block_append_edit, child_indent, indent_of_line, indent_unit, line_start, render_lines, BlockShape, LineEnding,
    LineIndex,
};
pub use tree::{parse, Node, NodeId, NodeKind, ParseError, SourceDialect, Span, SyntaxTree};
