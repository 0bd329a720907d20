//! Line, indentation and line-ending facts about a source text, and the
//! helpers that lay out inserted code to match them.

use std::collections::HashMap;

use super::edit::Edit;

#[derive(Debug, Clone)]
pub struct LineIndex {
    starts: Vec<usize>,
}

impl LineIndex {
    pub fn new(text: &str) -> Self {
        let bytes = text.as_bytes();
        let mut starts = vec![0];
        for (i, &b) in bytes.iter().enumerate() {
            match b {
                b'\n' => starts.push(i + 1),
                b'\r' if bytes.get(i + 1) != Some(&b'\n') => starts.push(i + 1),
                _ => {}
            }
        }
        Self { starts }
    }

    pub fn line_start_of(&self, offset: usize) -> usize {
        let line = self.starts.partition_point(|&s| s <= offset) - 1;
        self.starts[line]
    }

    /// 1-based (line, column); the column counts characters.
    pub fn line_col(&self, text: &str, offset: usize) -> (u32, u32) {
        let line = self.starts.partition_point(|&s| s <= offset) - 1;
        let start = self.starts[line];
        let column = text.get(start..offset).map_or(offset - start, |s| s.chars().count());
        (line as u32 + 1, column as u32 + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineEnding {
    Lf,
    CrLf,
}

impl LineEnding {
    /// The dominant line ending; ties (including no line breaks) go to LF.
    pub fn detect(text: &str) -> Self {
        let crlf = text.matches("\r\n").count();
        let lf = text.matches('\n').count() - crlf;
        if crlf > lf {
            Self::CrLf
        } else {
            Self::Lf
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Lf => "\n",
            Self::CrLf => "\r\n",
        }
    }
}

/// Offset of the first byte of the line containing `offset`.
pub fn line_start(text: &str, offset: usize) -> usize {
    text[..offset].rfind(['\n', '\r']).map_or(0, |i| i + 1)
}

/// Leading whitespace of the line containing `offset`.
pub fn indent_of_line(text: &str, offset: usize) -> &str {
    let start = line_start(text, offset);
    let rest = &text[start..];
    let len = rest.find(|c: char| c != ' ' && c != '\t').unwrap_or(rest.len());
    &rest[..len]
}

/// The file's dominant indentation step. Tabs win if more lines start with
/// a tab than with a space; otherwise the most common positive increase in
/// leading spaces between consecutive non-blank lines. Ties and files with
/// no indentation fall back to two spaces.
pub fn indent_unit(text: &str) -> String {
    let mut tab_lines = 0usize;
    let mut space_lines = 0usize;
    let mut deltas: HashMap<usize, usize> = HashMap::new();
    let mut prev: Option<usize> = None;
    for line in text.lines() {
        if line.trim().is_empty() {
            continue;
        }
        if line.starts_with('\t') {
            tab_lines += 1;
        } else if line.starts_with(' ') {
            space_lines += 1;
        }
        let width = line.len() - line.trim_start_matches(' ').len();
        if let Some(p) = prev {
            if width > p && !line.starts_with('\t') {
                *deltas.entry(width - p).or_default() += 1;
            }
        }
        prev = Some(width);
    }
    if tab_lines > space_lines {
        return "\t".to_owned();
    }
    let best = deltas.into_iter().max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0))).map(|(width, _)| width);
    match best {
        Some(w) if w > 0 && w <= 8 => " ".repeat(w),
        _ => "  ".to_owned(),
    }
}

/// A brace-delimited statement list or class body.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockShape {
    /// Offset of `{`.
    pub open: usize,
    /// Offset of `}`.
    pub close: usize,
    /// Start offset of the last statement/member, if any.
    pub last_child: Option<usize>,
}

impl BlockShape {
    pub fn from_braces(span_start: usize, span_end: usize, last_child: Option<usize>) -> Self {
        Self { open: span_start, close: span_end - 1, last_child }
    }
}

/// Indentation for a new child of the block: that of the preceding sibling
/// when it starts its own line, otherwise the opening line's plus one unit.
pub fn child_indent(text: &str, open: usize, sibling: Option<usize>, unit: &str) -> String {
    if let Some(s) = sibling {
        let ls = line_start(text, s);
        if ls > open && text[ls..s].chars().all(|c| c == ' ' || c == '\t') {
            return text[ls..s].to_owned();
        }
    }
    format!("{}{}", indent_of_line(text, open), unit)
}

/// Render items as indented lines, each preceded by a line break. Items may
/// contain `\n`; every resulting non-empty line receives `indent`.
pub fn render_lines(items: &[String], indent: &str, eol: &str) -> String {
    let mut out = String::new();
    for item in items {
        for line in item.split('\n') {
            out.push_str(eol);
            if !line.is_empty() {
                out.push_str(indent);
                out.push_str(line);
            }
        }
    }
    out
}

/// Append `items` as the final children of a block, leaving existing content
/// byte-identical. When the closing brace sits on its own line the edit is a
/// pure insertion after the last content; otherwise the whitespace before the
/// brace is replaced so the brace moves to its own line.
pub fn block_append_edit(text: &str, block: BlockShape, items: &[String], eol: &str, unit: &str) -> Edit {
    let mut content_end = block.close;
    let bytes = text.as_bytes();
    while content_end > block.open + 1 && matches!(bytes[content_end - 1], b' ' | b'\t' | b'\r' | b'\n') {
        content_end -= 1;
    }
    let indent = child_indent(text, block.open, block.last_child, unit);
    let body = render_lines(items, &indent, eol);
    let brace_line = line_start(text, block.close);
    let brace_alone = brace_line > block.open && text[brace_line..block.close].trim().is_empty();
    if brace_alone {
        Edit::insert(content_end, body)
    } else {
        let closing_indent = indent_of_line(text, block.close);
        Edit::replace(content_end, block.close, format!("{body}{eol}{closing_indent}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source_model::{apply_edits, EditSet};

    fn append(text: &str, items: &[&str]) -> String {
        let open = text.find('{').unwrap();
        let close = text.rfind('}').unwrap();
        let inner = text[open + 1..close].trim();
        let last = if inner.is_empty() {
            None
        } else {
            Some(text[..close].rfind(inner.lines().last().unwrap().trim()).unwrap())
        };
        let items: Vec<String> = items.iter().map(|s| s.to_string()).collect();
        let edit = block_append_edit(text, BlockShape { open, close, last_child: last }, &items, "\n", "  ");
        apply_edits(text, &EditSet::from(vec![edit])).unwrap()
    }

    #[test]
    fn line_columns_follow_line_breaks() {
        let text = "ab\r\ncd\nef";
        let idx = LineIndex::new(text);
        assert_eq!(idx.line_col(text, 0), (1, 1));
        assert_eq!(idx.line_col(text, 4), (2, 1));
        assert_eq!(idx.line_col(text, 8), (3, 2));
    }

    #[test]
    fn line_ending_majority_with_lf_tie() {
        assert_eq!(LineEnding::detect("a\r\nb\r\nc\n"), LineEnding::CrLf);
        assert_eq!(LineEnding::detect("a\r\nb\n"), LineEnding::Lf);
        assert_eq!(LineEnding::detect("abc"), LineEnding::Lf);
    }

    #[test]
    fn indent_unit_detection() {
        assert_eq!(indent_unit("a {\n    b {\n        c\n    }\n}\n"), "    ");
        assert_eq!(indent_unit("a {\n\tb\n}\n"), "\t");
        assert_eq!(indent_unit("abc"), "  ");
    }

    #[test]
    fn append_to_multiline_block() {
        let out = append("  m() {\n    a();\n  }", &["b();"]);
        assert_eq!(out, "  m() {\n    a();\n    b();\n  }");
    }

    #[test]
    fn append_after_trailing_comment() {
        let out = append("m() {\n  a(); // keep\n}", &["b();"]);
        assert_eq!(out, "m() {\n  a(); // keep\n  b();\n}");
    }

    #[test]
    fn append_to_empty_inline_block() {
        let out = append("  m() {}", &["b();", "c();"]);
        assert_eq!(out, "  m() {\n    b();\n    c();\n  }");
    }

    #[test]
    fn append_to_one_line_block() {
        let out = append("m() { a(); }", &["b();"]);
        assert_eq!(out, "m() { a();\n  b();\n}");
    }

    #[test]
    fn multi_line_items_keep_relative_indent() {
        let out = append("class A {\n  x = 1;\n}", &["", "m() {\n  b();\n}"]);
        assert_eq!(out, "class A {\n  x = 1;\n\n  m() {\n    b();\n  }\n}");
    }
}
