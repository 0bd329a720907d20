//! Framework component detection by syntax shape: React class components,
//! React function components with effects, and Angular classes.

use oxc_ast::ast::{ArrowFunctionBody, Class, ClassElement, Expression, FunctionBody, MethodDefinitionKind, Statement};
use oxc_ast::AstKind;
use serde::{Deserialize, Serialize};

use crate::source_model::{NodeId, Span, SyntaxTree};
use crate::syntax::{argument_expr, callee_name, peel, property_key_name};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ComponentKind {
    ReactClass,
    ReactFunction,
    AngularClass,
}

impl ComponentKind {
    pub fn is_class(self) -> bool {
        !matches!(self, Self::ReactFunction)
    }

    pub fn teardown_method(self) -> Option<&'static str> {
        match self {
            Self::ReactClass => Some("componentWillUnmount"),
            Self::AngularClass => Some("ngOnDestroy"),
            Self::ReactFunction => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::ReactClass => "ReactClass",
            Self::ReactFunction => "ReactFunction",
            Self::AngularClass => "AngularClass",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TeardownSite {
    pub method_name: &'static str,
    /// The method's `{ ... }` block.
    pub body_span: Span,
    /// Offset of the block's closing brace.
    pub insertion_offset: usize,
    /// Start of the last statement in the block.
    pub last_statement: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectSite {
    /// The `useEffect(...)`/`useLayoutEffect(...)` call.
    pub call_span: Span,
    pub call: NodeId,
    /// The callback function node, when the first argument is an inline function.
    pub callback: Option<NodeId>,
    /// Block body of the callback, or its expression for concise arrows.
    pub callback_body_span: Span,
    pub callback_is_block: bool,
    pub callback_is_async: bool,
    pub last_statement: Option<usize>,
    /// Block body of a returned cleanup function.
    pub cleanup_return: Option<Span>,
    pub cleanup_last_statement: Option<usize>,
    /// A top-level `return <expr>` that is not a block-bodied function.
    pub opaque_return: Option<Span>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameworkComponent {
    pub name: String,
    pub kind: ComponentKind,
    /// The class or function node.
    pub node: NodeId,
    pub span: Span,
    pub body_span: Span,
    pub teardown: Option<TeardownSite>,
    pub effect_sites: Vec<EffectSite>,
}

const REACT_BASES: [&str; 4] = ["Component", "PureComponent", "React.Component", "React.PureComponent"];
const ANGULAR_DECORATORS: [&str; 2] = ["Component", "Directive"];
const EFFECT_HOOKS: [&str; 2] = ["useEffect", "useLayoutEffect"];

pub fn detect_components(tree: &SyntaxTree<'_>) -> Vec<FrameworkComponent> {
    let mut found: Vec<FrameworkComponent> =
        tree.nodes().iter().enumerate().filter_map(|(i, _)| component_at(tree, NodeId(i as u32))).collect();
    found.sort_by_key(|c| (c.span.start, c.node));
    found
}

/// Classify the declaration at `id`, if it is a component.
pub fn component_at(tree: &SyntaxTree<'_>, id: NodeId) -> Option<FrameworkComponent> {
    let node = tree.node(id);
    match node.ast {
        AstKind::Class(class) => {
            let kind = class_kind(tree, class)?;
            let mut component = FrameworkComponent {
                name: class
                    .id
                    .as_ref()
                    .map(|i| i.name.to_string())
                    .or_else(|| binding_name(tree, id))
                    .unwrap_or_else(|| "<default>".to_owned()),
                kind,
                node: id,
                span: node.span,
                body_span: tree.span(class.body.span),
                teardown: None,
                effect_sites: Vec::new(),
            };
            component.teardown = find_teardown(tree, &component);
            Some(component)
        }
        AstKind::Function(func) => {
            if matches!(tree.parent(id).map(|p| tree.node(p).ast), Some(AstKind::MethodDefinition(_))) {
                return None;
            }
            let name = func
                .id
                .as_ref()
                .map(|i| i.name.to_string())
                .or_else(|| binding_name(tree, id))
                .or_else(|| is_default_export(tree, id).then(|| "<default>".to_owned()))?;
            let body = func.body.as_ref()?;
            function_component(tree, id, name, tree.span(body.span))
        }
        AstKind::ArrowFunctionExpression(arrow) => {
            let name =
                binding_name(tree, id).or_else(|| is_default_export(tree, id).then(|| "<default>".to_owned()))?;
            let body_span = match &arrow.body {
                ArrowFunctionBody::FunctionBody(b) => b.span,
                other => other.as_expression()?.span(),
            };
            function_component(tree, id, name, tree.span(body_span))
        }
        _ => None,
    }
}

fn function_component(tree: &SyntaxTree<'_>, id: NodeId, name: String, body_span: Span) -> Option<FrameworkComponent> {
    if name != "<default>" && !name.starts_with(|c: char| c.is_ascii_uppercase()) {
        return None;
    }
    let effect_sites: Vec<EffectSite> = tree
        .descendants(id)
        .filter(|&d| is_effect_call(tree, d))
        .filter(|&d| crate::syntax::enclosing_function(tree, d) == Some(id))
        .filter_map(|d| effect_site(tree, d))
        .collect();
    if effect_sites.is_empty() {
        return None;
    }
    let node = tree.node(id);
    Some(FrameworkComponent {
        name,
        kind: ComponentKind::ReactFunction,
        node: id,
        span: node.span,
        body_span,
        teardown: None,
        effect_sites,
    })
}

fn class_kind(tree: &SyntaxTree<'_>, class: &Class<'_>) -> Option<ComponentKind> {
    let angular = class.decorators.iter().any(|d| {
        let callee = match peel(&d.expression) {
            Expression::CallExpression(call) => &call.callee,
            other => other,
        };
        callee_name(callee).is_some_and(|n| ANGULAR_DECORATORS.contains(&n))
    });
    if angular {
        return Some(ComponentKind::AngularClass);
    }
    let heritage = class.heritage.as_ref()?;
    let text = crate::syntax::squash_whitespace(tree.text(peel(&heritage.expression).span()));
    REACT_BASES.contains(&text.as_str()).then_some(ComponentKind::ReactClass)
}

/// Name from `const Name = <expr>`.
fn binding_name(tree: &SyntaxTree<'_>, id: NodeId) -> Option<String> {
    let parent = tree.ancestors(id).find(|&a| !matches!(tree.node(a).ast, AstKind::ParenthesizedExpression(_)))?;
    match tree.node(parent).ast {
        AstKind::VariableDeclarator(decl) => match &decl.id {
            oxc_ast::ast::BindingPattern::BindingIdentifier(b) => Some(b.name.to_string()),
            _ => None,
        },
        _ => None,
    }
}

fn is_default_export(tree: &SyntaxTree<'_>, id: NodeId) -> bool {
    matches!(tree.parent(id).map(|p| tree.node(p).ast), Some(AstKind::ExportDefaultDeclaration(_)))
}

fn is_effect_call(tree: &SyntaxTree<'_>, id: NodeId) -> bool {
    match tree.node(id).ast {
        AstKind::CallExpression(call) => callee_name(&call.callee).is_some_and(|n| EFFECT_HOOKS.contains(&n)),
        _ => false,
    }
}

fn effect_site(tree: &SyntaxTree<'_>, call_id: NodeId) -> Option<EffectSite> {
    let AstKind::CallExpression(call) = tree.node(call_id).ast else { return None };
    let mut site = EffectSite {
        call_span: tree.node(call_id).span,
        call: call_id,
        callback: None,
        callback_body_span: tree.node(call_id).span,
        callback_is_block: false,
        callback_is_async: false,
        last_statement: None,
        cleanup_return: None,
        cleanup_last_statement: None,
        opaque_return: None,
    };
    let Some(first) = call.arguments.first().and_then(argument_expr) else { return Some(site) };
    let body: Option<&FunctionBody<'_>> = match peel(first) {
        Expression::ArrowFunctionExpression(arrow) => {
            site.callback = Some(tree.id_of(arrow.as_ref()));
            site.callback_is_async = arrow.r#async;
            match &arrow.body {
                ArrowFunctionBody::FunctionBody(b) => Some(b),
                other => {
                    site.callback_body_span = tree.span(other.as_expression()?.span());
                    None
                }
            }
        }
        Expression::FunctionExpression(func) => {
            site.callback = Some(tree.id_of(func.as_ref()));
            site.callback_is_async = func.r#async;
            func.body.as_deref()
        }
        _ => None,
    };
    let Some(body) = body else { return Some(site) };
    site.callback_body_span = tree.span(body.span);
    site.callback_is_block = true;
    site.last_statement = body.statements.last().map(|s| s.span().start as usize);
    for stmt in &body.statements {
        let Statement::ReturnStatement(ret) = stmt else { continue };
        let Some(arg) = &ret.argument else { continue };
        let cleanup_body = match peel(arg) {
            Expression::ArrowFunctionExpression(a) => match &a.body {
                ArrowFunctionBody::FunctionBody(b) => Some(b.as_ref()),
                _ => None,
            },
            Expression::FunctionExpression(f) => f.body.as_deref(),
            _ => None,
        };
        match cleanup_body {
            Some(b) => {
                site.cleanup_return = Some(tree.span(b.span));
                site.cleanup_last_statement = b.statements.last().map(|s| s.span().start as usize);
            }
            None => site.opaque_return = Some(tree.span(ret.span)),
        }
    }
    Some(site)
}

pub fn find_teardown(tree: &SyntaxTree<'_>, component: &FrameworkComponent) -> Option<TeardownSite> {
    let method_name = component.kind.teardown_method()?;
    let AstKind::Class(class) = tree.node(component.node).ast else { return None };
    class.body.body.iter().find_map(|element| {
        let ClassElement::MethodDefinition(m) = element else { return None };
        if m.r#static || m.kind != MethodDefinitionKind::Method {
            return None;
        }
        if property_key_name(&m.key) != Some(method_name) {
            return None;
        }
        let body = m.value.body.as_ref()?;
        Some(TeardownSite {
            method_name,
            body_span: tree.span(body.span),
            insertion_offset: body.span.end as usize - 1,
            last_statement: body.statements.last().map(|s| s.span().start as usize),
        })
    })
}

use oxc_span::GetSpan;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source_model::{parse, SourceDialect};
    use oxc_allocator::Allocator;

    fn detect(src: &str, dialect: SourceDialect) -> Vec<(String, ComponentKind)> {
        let alloc = Allocator::default();
        let tree = parse(&alloc, src, dialect).unwrap();
        detect_components(&tree).into_iter().map(|c| (c.name, c.kind)).collect()
    }

    #[test]
    fn hashchange_listener_class_is_react_class() {
        let src = "class Hash extends React.Component {\n  componentDidMount() {\n    window.addEventListener('hashchange', this.onHash);\n  }\n}\n";
        assert_eq!(detect(src, SourceDialect::Jsx), vec![("Hash".into(), ComponentKind::ReactClass)]);
    }

    #[test]
    fn plain_class_is_not_a_component() {
        assert!(detect("class X {}", SourceDialect::Plain).is_empty());
        assert!(detect("class X extends Base {}", SourceDialect::Plain).is_empty());
    }

    #[test]
    fn angular_class_next_to_helper() {
        let src = "@Component({ selector: 'a' })\nexport class AppComponent {}\nclass Helper {}\n";
        assert_eq!(detect(src, SourceDialect::Typed), vec![("AppComponent".into(), ComponentKind::AngularClass)]);
        let directive = "@Directive({})\nclass D {}";
        assert_eq!(detect(directive, SourceDialect::Typed)[0].1, ComponentKind::AngularClass);
    }

    #[test]
    fn heritage_variants() {
        for base in REACT_BASES {
            let src = format!("class A extends {base} {{}}");
            assert_eq!(detect(&src, SourceDialect::Plain).len(), 1, "{base}");
        }
        let typed = "class A extends React.Component<P, S> {}";
        assert_eq!(detect(typed, SourceDialect::TypedJsx).len(), 1);
    }

    #[test]
    fn function_components_need_an_effect() {
        let src = "function Clock() { useEffect(() => {}, []); return null; }\n\
                   const Other = () => { React.useLayoutEffect(() => {}); };\n\
                   const helper = () => { useEffect(() => {}); };\n\
                   function Plain() { return null; }\n";
        assert_eq!(
            detect(src, SourceDialect::Jsx),
            vec![("Clock".into(), ComponentKind::ReactFunction), ("Other".into(), ComponentKind::ReactFunction)]
        );
    }

    #[test]
    fn anonymous_default_exports() {
        let src = "export default class extends Component {}";
        assert_eq!(detect(src, SourceDialect::Jsx), vec![("<default>".into(), ComponentKind::ReactClass)]);
        let arrow = "export default () => { useEffect(() => {}); };";
        assert_eq!(detect(arrow, SourceDialect::Jsx), vec![("<default>".into(), ComponentKind::ReactFunction)]);
    }

    #[test]
    fn teardown_lookup() {
        let src =
            "@Component({})\nclass A {\n  constructor(private s: S) {}\n  ngOnDestroy() {\n    this.x();\n  }\n}\n";
        let alloc = Allocator::default();
        let tree = parse(&alloc, src, SourceDialect::Typed).unwrap();
        let comps = detect_components(&tree);
        let site = comps[0].teardown.clone().unwrap();
        assert_eq!(site.method_name, "ngOnDestroy");
        // Offsets read off the literal: the block opens after "ngOnDestroy() ".
        let open = src.find("ngOnDestroy() {").unwrap() + "ngOnDestroy() ".len();
        let close = src.rfind("  }\n}").unwrap() + 2;
        assert_eq!((site.body_span.start, site.body_span.end), (open, close + 1));
        assert_eq!(site.insertion_offset, close);
        assert_eq!(site.last_statement, Some(src.find("this.x()").unwrap()));

        let none = "class B extends Component { render() {} }";
        let tree = parse(&alloc, none, SourceDialect::Jsx).unwrap();
        assert!(detect_components(&tree)[0].teardown.is_none());
    }

    #[test]
    fn effect_sites_and_cleanup_returns() {
        let src = "function C() {\n  useEffect(() => {\n    const id = setInterval(f, 1);\n    return () => {\n      clearInterval(id);\n    };\n  }, []);\n  useEffect(() => go());\n}\n";
        let alloc = Allocator::default();
        let tree = parse(&alloc, src, SourceDialect::Jsx).unwrap();
        let comps = detect_components(&tree);
        assert_eq!(comps.len(), 1);
        let sites = &comps[0].effect_sites;
        assert_eq!(sites.len(), 2);
        let cleanup = sites[0].cleanup_return.unwrap();
        let open = src.find("return () => {").unwrap() + "return () => ".len();
        assert_eq!(cleanup.start, open);
        assert_eq!(&src[cleanup.end - 1..cleanup.end], "}");
        assert!(sites[0].callback_is_block);
        assert!(!sites[1].callback_is_block);
        for s in sites {
            assert!(comps[0].body_span.contains(&s.call_span));
            if let Some(c) = s.cleanup_return {
                assert!(s.callback_body_span.contains(&c));
            }
        }
    }

    #[test]
    fn nested_class_attributed_to_itself() {
        let src =
            "function Outer() {\n  useEffect(() => {});\n  class Inner extends Component {}\n  return Inner;\n}\n";
        let names: Vec<_> = detect(src, SourceDialect::Jsx).into_iter().map(|c| c.0).collect();
        assert_eq!(names, vec!["Outer", "Inner"]);
    }
}
