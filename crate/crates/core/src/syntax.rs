//! Small queries over the typed AST shared by the detector, scanner and planner.

use oxc_ast::ast::{Argument, CallExpression, Expression, PropertyKey, StaticMemberExpression};
use oxc_ast::AstKind;

use crate::source_model::{NodeId, SyntaxTree};

/// Strip parentheses and TypeScript-only wrappers.
pub fn peel<'b, 'a>(mut expr: &'b Expression<'a>) -> &'b Expression<'a> {
    loop {
        expr = match expr {
            Expression::ParenthesizedExpression(p) => &p.expression,
            Expression::TSAsExpression(e) => &e.expression,
            Expression::TSSatisfiesExpression(e) => &e.expression,
            Expression::TSNonNullExpression(e) => &e.expression,
            Expression::TSTypeAssertion(e) => &e.expression,
            _ => return expr,
        }
    }
}

pub fn argument_expr<'b, 'a>(arg: &'b Argument<'a>) -> Option<&'b Expression<'a>> {
    match arg {
        Argument::SpreadElement(_) => None,
        other => other.as_expression(),
    }
}

pub fn static_member<'b, 'a>(expr: &'b Expression<'a>) -> Option<&'b StaticMemberExpression<'a>> {
    match peel(expr) {
        Expression::StaticMemberExpression(m) => Some(m),
        _ => None,
    }
}

pub fn as_call<'b, 'a>(expr: &'b Expression<'a>) -> Option<&'b CallExpression<'a>> {
    match peel(expr) {
        Expression::CallExpression(c) => Some(c),
        Expression::ChainExpression(chain) => match &chain.expression {
            oxc_ast::ast::ChainElement::CallExpression(c) => Some(c),
            _ => None,
        },
        _ => None,
    }
}

/// `f` for `f(...)`, `p` for `a.b.p(...)`.
pub fn callee_name<'a>(callee: &Expression<'a>) -> Option<&'a str> {
    match peel(callee) {
        Expression::Identifier(id) => Some(id.name.as_str()),
        Expression::StaticMemberExpression(m) => Some(m.property.name.as_str()),
        _ => None,
    }
}

/// Calls to a browser global either bare or through `window.`/`globalThis.`.
pub fn is_global_call(callee: &Expression<'_>, name: &str) -> bool {
    match peel(callee) {
        Expression::Identifier(id) => id.name == name,
        Expression::StaticMemberExpression(m) => {
            m.property.name == name
                && matches!(peel(&m.object), Expression::Identifier(o) if o.name == "window" || o.name == "globalThis")
        }
        _ => false,
    }
}

/// Dotted path text for `this`/identifier-rooted static member chains,
/// e.g. `this.a.b`. `None` for anything else.
pub fn member_path(expr: &Expression<'_>) -> Option<String> {
    match peel(expr) {
        Expression::ThisExpression(_) => Some("this".to_owned()),
        Expression::Identifier(id) => Some(id.name.to_string()),
        Expression::StaticMemberExpression(m) => {
            let mut base = member_path(&m.object)?;
            base.push('.');
            base.push_str(&m.property.name);
            Some(base)
        }
        _ => None,
    }
}

/// Root identifier text of a member chain (`this`, `document`, ...).
pub fn member_root<'a>(expr: &Expression<'a>) -> Option<&'a str> {
    match peel(expr) {
        Expression::ThisExpression(_) => Some("this"),
        Expression::Identifier(id) => Some(id.name.as_str()),
        Expression::StaticMemberExpression(m) => member_root(&m.object),
        Expression::ComputedMemberExpression(m) => member_root(&m.object),
        _ => None,
    }
}

pub fn property_key_name<'a>(key: &PropertyKey<'a>) -> Option<&'a str> {
    match key {
        PropertyKey::StaticIdentifier(id) => Some(id.name.as_str()),
        PropertyKey::StringLiteral(s) => Some(s.value.as_str()),
        _ => None,
    }
}

pub fn string_literal_value<'a>(expr: &Expression<'a>) -> Option<&'a str> {
    match peel(expr) {
        Expression::StringLiteral(s) => Some(s.value.as_str()),
        Expression::TemplateLiteral(t) if t.expressions.is_empty() && t.quasis.len() == 1 => {
            t.quasis[0].value.cooked.as_ref().map(|c| c.as_str())
        }
        _ => None,
    }
}

pub fn squash_whitespace(text: &str) -> String {
    text.chars().filter(|c| !c.is_whitespace()).collect()
}

pub fn is_function_like(kind: &AstKind<'_>) -> bool {
    matches!(kind, AstKind::Function(_) | AstKind::ArrowFunctionExpression(_))
}

/// Nearest enclosing function or arrow of `id`, excluding `id` itself.
pub fn enclosing_function(tree: &SyntaxTree<'_>, id: NodeId) -> Option<NodeId> {
    tree.ancestors(id).find(|&a| is_function_like(&tree.node(a).ast))
}

/// Whether `text` contains `ident` as a whole identifier token.
pub fn contains_identifier(text: &str, ident: &str) -> bool {
    let is_ident = |c: char| c.is_alphanumeric() || c == '_' || c == '$';
    let mut from = 0;
    while let Some(pos) = text[from..].find(ident) {
        let start = from + pos;
        let end = start + ident.len();
        let before = text[..start].chars().next_back();
        let after = text[end..].chars().next();
        if !before.is_some_and(is_ident) && !after.is_some_and(is_ident) {
            return true;
        }
        from = start + ident.len().max(1);
    }
    false
}
