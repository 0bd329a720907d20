use std::ops::Range;

/// Replace `start..end` with `replacement`; `start == end` is an insertion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edit {
    pub start: usize,
    pub end: usize,
    pub replacement: String,
}

impl Edit {
    pub fn insert(at: usize, text: impl Into<String>) -> Self {
        Self { start: at, end: at, replacement: text.into() }
    }

    pub fn replace(start: usize, end: usize, text: impl Into<String>) -> Self {
        Self { start, end, replacement: text.into() }
    }

    pub fn range(&self) -> Range<usize> {
        self.start..self.end
    }

    pub fn is_insertion(&self) -> bool {
        self.start == self.end
    }

    /// Whether applying both edits would require touching the same bytes.
    /// Insertions only conflict with replacements that strictly contain them.
    pub fn overlaps(&self, other: &Edit) -> bool {
        if self.is_insertion() && other.is_insertion() {
            return false;
        }
        if self.is_insertion() {
            return other.start < self.start && self.start < other.end;
        }
        if other.is_insertion() {
            return self.start < other.start && other.start < self.end;
        }
        self.start < other.end && other.start < self.end
    }
}

/// Edits in push order. Co-located insertions apply in that order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EditSet {
    edits: Vec<Edit>,
}

impl EditSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, edit: Edit) {
        self.edits.push(edit);
    }

    pub fn extend(&mut self, edits: impl IntoIterator<Item = Edit>) {
        self.edits.extend(edits);
    }

    pub fn len(&self) -> usize {
        self.edits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edits.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Edit> {
        self.edits.iter()
    }

    pub fn conflicts_with(&self, edit: &Edit) -> bool {
        self.edits.iter().any(|e| e.overlaps(edit))
    }

    /// Edits ordered by position; ties keep push order.
    pub fn sorted(&self) -> Vec<&Edit> {
        let mut order: Vec<(usize, &Edit)> = self.edits.iter().enumerate().collect();
        order.sort_by_key(|(seq, e)| (e.start, e.end, *seq));
        order.into_iter().map(|(_, e)| e).collect()
    }
}

impl From<Vec<Edit>> for EditSet {
    fn from(edits: Vec<Edit>) -> Self {
        Self { edits }
    }
}

impl IntoIterator for EditSet {
    type Item = Edit;
    type IntoIter = std::vec::IntoIter<Edit>;

    fn into_iter(self) -> Self::IntoIter {
        self.edits.into_iter()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EditError {
    #[error("edits {first:?} and {second:?} overlap")]
    Overlap { first: Range<usize>, second: Range<usize> },
    #[error("edit {range:?} is outside the text or splits a character")]
    OutOfBounds { range: Range<usize> },
}

pub fn apply_edits(text: &str, edits: &EditSet) -> Result<String, EditError> {
    let sorted = edits.sorted();
    for e in &sorted {
        if e.start > e.end || !text.is_char_boundary(e.start) || !text.is_char_boundary(e.end) {
            return Err(EditError::OutOfBounds { range: e.range() });
        }
    }
    for (i, a) in sorted.iter().enumerate() {
        if let Some(b) = sorted[i + 1..].iter().find(|b| a.overlaps(b)) {
            return Err(EditError::Overlap { first: a.range(), second: b.range() });
        }
    }
    let extra: usize = sorted.iter().map(|e| e.replacement.len()).sum();
    let mut out = String::with_capacity(text.len() + extra);
    let mut cursor = 0;
    for e in sorted {
        out.push_str(&text[cursor..e.start]);
        out.push_str(&e.replacement);
        cursor = cursor.max(e.end);
    }
    out.push_str(&text[cursor..]);
    Ok(out)
}
