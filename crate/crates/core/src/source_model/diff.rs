use similar::TextDiff;

/// Unified diff with three lines of context and `a/`/`b/` headers.
/// Identical inputs produce an empty string.
pub fn unified_diff(before: &str, after: &str, path: &str) -> String {
    if before == after {
        return String::new();
    }
    TextDiff::from_lines(before, after)
        .unified_diff()
        .context_radius(3)
        .header(&format!("a/{path}"), &format!("b/{path}"))
        .to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_is_empty() {
        assert_eq!(unified_diff("a\nb\n", "a\nb\n", "x.js"), "");
    }

    #[test]
    fn single_change_single_hunk() {
        let before = "1\n2\n3\n4\n5\n6\n7\n8\n9\n";
        let after = "1\n2\n3\n4\nfive\n6\n7\n8\n9\n";
        let diff = unified_diff(before, after, "x.js");
        assert_eq!(diff.matches("@@ -").count(), 1);
        assert!(diff.starts_with("--- a/x.js\n+++ b/x.js\n@@ -2,7 +2,7 @@\n"));
    }
}
