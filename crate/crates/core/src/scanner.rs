//! Locates resource acquisitions that match the four leak patterns inside a
//! component and decides whether matching cleanup already exists.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use oxc_ast::ast::{AssignmentTarget, BindingPattern, CallExpression, Expression, MethodDefinitionKind};
use oxc_ast::AstKind;
use oxc_span::GetSpan;
use serde::{Deserialize, Serialize};

use crate::detector::{component_at, ComponentKind, FrameworkComponent};
use crate::source_model::{NodeId, Span, SyntaxTree};
use crate::syntax::{
    argument_expr, callee_name, is_function_like, is_global_call, member_path, member_root, peel, property_key_name,
    squash_whitespace, static_member, string_literal_value,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LeakKind {
    #[serde(rename = "FP1_Subscription")]
    Subscription,
    #[serde(rename = "FP2_EventListener")]
    EventListener,
    #[serde(rename = "FP3a_Timeout")]
    Timeout,
    #[serde(rename = "FP3b_Interval")]
    Interval,
    #[serde(rename = "FP4_AnimationFrame")]
    AnimationFrame,
}

impl LeakKind {
    pub const ALL: [LeakKind; 5] =
        [Self::Subscription, Self::EventListener, Self::Timeout, Self::Interval, Self::AnimationFrame];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Subscription => "FP1_Subscription",
            Self::EventListener => "FP2_EventListener",
            Self::Timeout => "FP3a_Timeout",
            Self::Interval => "FP3b_Interval",
            Self::AnimationFrame => "FP4_AnimationFrame",
        }
    }

    /// Short flag spelling: `fp1`, `fp2`, `fp3a`, `fp3b`, `fp4`.
    pub fn short(self) -> &'static str {
        match self {
            Self::Subscription => "fp1",
            Self::EventListener => "fp2",
            Self::Timeout => "fp3a",
            Self::Interval => "fp3b",
            Self::AnimationFrame => "fp4",
        }
    }

    fn timer_api(self) -> Option<(&'static str, &'static str)> {
        match self {
            Self::Timeout => Some(("setTimeout", "clearTimeout")),
            Self::Interval => Some(("setInterval", "clearInterval")),
            Self::AnimationFrame => Some(("requestAnimationFrame", "cancelAnimationFrame")),
            _ => None,
        }
    }

    /// Clearing call for timer-like kinds.
    pub fn clear_function(self) -> Option<&'static str> {
        self.timer_api().map(|(_, clear)| clear)
    }
}

impl fmt::Display for LeakKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown leak kind `{0}` (expected fp1, fp2, fp3a, fp3b or fp4)")]
pub struct UnknownLeakKind(pub String);

impl FromStr for LeakKind {
    type Err = UnknownLeakKind;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.short().eq_ignore_ascii_case(s) || k.as_str() == s)
            .ok_or_else(|| UnknownLeakKind(s.to_owned()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum HandleBinding {
    None,
    LocalVariable(String),
    InstanceProperty(String),
}

impl HandleBinding {
    pub fn name(&self) -> Option<&str> {
        match self {
            Self::None => None,
            Self::LocalVariable(n) | Self::InstanceProperty(n) => Some(n),
        }
    }

    /// How cleanup code refers to the handle.
    pub fn reference(&self) -> Option<String> {
        match self {
            Self::None => None,
            Self::LocalVariable(n) => Some(n.clone()),
            Self::InstanceProperty(n) => Some(format!("this.{n}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Handler {
    Identifier(String),
    /// `this.a.b` path text.
    ThisMember(String),
    Inline(Span),
    BoundCall(Span),
    /// Any other single expression; hoisted like an inline handler.
    Other(Span),
    /// Spread or missing argument.
    Unsupported,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Listener {
    pub target_text: String,
    pub event_name: String,
    /// The event argument as written, quotes included.
    pub event_text: String,
    pub handler: Handler,
    pub handler_span: Option<Span>,
    /// Source text of a third (options/capture) argument.
    pub options_text: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Enclosing {
    ClassMethod(String),
    Constructor,
    /// Index into the component's `effect_sites`.
    EffectCallback(usize),
    FunctionBody,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcquisitionSite {
    pub call: NodeId,
    pub call_span: Span,
    pub statement: Option<NodeId>,
    pub statement_span: Span,
    pub leak_kind: LeakKind,
    pub binding: HandleBinding,
    /// Populated for event listeners only.
    pub listener: Option<Listener>,
    pub enclosing: Enclosing,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cleanup {
    Missing,
    Present(Span),
    Unrepairable(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeakCandidate {
    pub component: String,
    pub component_node: NodeId,
    pub site: AcquisitionSite,
    pub cleanup: Cleanup,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fp1Scope {
    #[default]
    AngularOnly,
    AllClasses,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanOptions {
    pub enabled: BTreeSet<LeakKind>,
    pub fp1_scope: Fp1Scope,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self { enabled: LeakKind::ALL.into_iter().collect(), fp1_scope: Fp1Scope::AngularOnly }
    }
}

/// Operators that make a subscription finite on their own.
const COMPLETING_OPERATORS: [&str; 5] = ["takeUntil", "take", "first", "takeWhile", "takeUntilDestroyed"];
const GLOBAL_TARGETS: [&str; 3] = ["window", "document", "globalThis"];

pub fn scan_component(
    tree: &SyntaxTree<'_>,
    component: &FrameworkComponent,
    options: &ScanOptions,
) -> Vec<LeakCandidate> {
    let nested: Vec<NodeId> = tree
        .descendants(component.node)
        .filter(|&d| {
            matches!(tree.node(d).ast, AstKind::Class(_) | AstKind::Function(_) | AstKind::ArrowFunctionExpression(_))
                && component_at(tree, d).is_some()
        })
        .collect();
    let mut out: Vec<LeakCandidate> = tree
        .descendants(component.node)
        .filter(|&d| !nested.iter().any(|&n| n == d || tree.is_ancestor(n, d)))
        .filter_map(|d| {
            let AstKind::CallExpression(call) = tree.node(d).ast else { return None };
            let site = acquisition(tree, component, d, call, options)?;
            let cleanup = match (component.kind, &site.enclosing) {
                (ComponentKind::ReactFunction, Enclosing::FunctionBody) => match has_cleanup(tree, component, &site) {
                    Some(ev) => Cleanup::Present(ev),
                    None => Cleanup::Unrepairable("outside effect".to_owned()),
                },
                _ => match has_cleanup(tree, component, &site) {
                    Some(ev) => Cleanup::Present(ev),
                    None => Cleanup::Missing,
                },
            };
            Some(LeakCandidate { component: component.name.clone(), component_node: component.node, site, cleanup })
        })
        .collect();
    out.sort_by_key(|c| (c.site.call_span.start, c.site.call));
    out
}

fn acquisition(
    tree: &SyntaxTree<'_>,
    component: &FrameworkComponent,
    id: NodeId,
    call: &CallExpression<'_>,
    options: &ScanOptions,
) -> Option<AcquisitionSite> {
    let kind = leak_kind_of(tree, component, id, call, options)?;
    if !options.enabled.contains(&kind) {
        return None;
    }
    let listener = (kind == LeakKind::EventListener).then(|| listener_of(tree, call));
    let (statement, statement_span) = match tree.ancestors(id).find(|&a| tree.node(a).ast.is_statement()) {
        Some(s) if tree.is_ancestor(component.node, s) => (Some(s), tree.node(s).span),
        _ => {
            let holder =
                tree.ancestors(id).find(|&a| matches!(tree.node(a).ast, AstKind::PropertyDefinition(_))).unwrap_or(id);
            (None, tree.node(holder).span)
        }
    };
    Some(AcquisitionSite {
        call: id,
        call_span: tree.node(id).span,
        statement,
        statement_span,
        leak_kind: kind,
        binding: classify_handle_binding(tree, id),
        listener,
        enclosing: enclosing_of(tree, component, id),
    })
}

fn leak_kind_of(
    tree: &SyntaxTree<'_>,
    component: &FrameworkComponent,
    id: NodeId,
    call: &CallExpression<'_>,
    options: &ScanOptions,
) -> Option<LeakKind> {
    for kind in [LeakKind::Timeout, LeakKind::Interval, LeakKind::AnimationFrame] {
        let (api, _) = kind.timer_api()?;
        if is_global_call(&call.callee, api) {
            return Some(kind);
        }
    }
    let member = static_member(&call.callee)?;
    match member.property.name.as_str() {
        "subscribe" => {
            let in_scope = match component.kind {
                ComponentKind::AngularClass => true,
                ComponentKind::ReactClass => options.fp1_scope == Fp1Scope::AllClasses,
                ComponentKind::ReactFunction => false,
            };
            let receiver = member.object.span();
            let completes = tree.descendants(id).any(|d| match tree.node(d).ast {
                AstKind::CallExpression(inner) => {
                    receiver.start <= inner.span.start
                        && inner.span.end <= receiver.end
                        && callee_name(&inner.callee).is_some_and(|n| COMPLETING_OPERATORS.contains(&n))
                }
                _ => false,
            });
            (in_scope && !completes).then_some(LeakKind::Subscription)
        }
        "addEventListener" => {
            let event = call.arguments.first().and_then(argument_expr).and_then(string_literal_value);
            (event.is_some() && listener_target_eligible(tree, component, id, &member.object))
                .then_some(LeakKind::EventListener)
        }
        _ => None,
    }
}

/// Global objects, `document`/`this`-rooted paths, and identifiers not
/// declared in the enclosing functions are eligible; locally created
/// elements are collected with the component.
fn listener_target_eligible(
    tree: &SyntaxTree<'_>,
    component: &FrameworkComponent,
    call: NodeId,
    target: &Expression<'_>,
) -> bool {
    match peel(target) {
        Expression::Identifier(id) if GLOBAL_TARGETS.contains(&id.name.as_str()) => true,
        Expression::Identifier(id) => {
            let scope = outermost_function_within(tree, component, call);
            !scope.is_some_and(|s| declares(tree, s, id.name.as_str()))
        }
        Expression::ThisExpression(_) => true,
        Expression::StaticMemberExpression(_) | Expression::ComputedMemberExpression(_) => {
            matches!(member_root(target), Some("document" | "this"))
        }
        _ => false,
    }
}

/// The outermost function-like node between `id` and the component. For a
/// function component this is the component itself.
fn outermost_function_within(tree: &SyntaxTree<'_>, component: &FrameworkComponent, id: NodeId) -> Option<NodeId> {
    if component.kind == ComponentKind::ReactFunction {
        return Some(component.node);
    }
    tree.ancestors(id).take_while(|&a| a != component.node).filter(|&a| is_function_like(&tree.node(a).ast)).last()
}

pub(crate) fn declares(tree: &SyntaxTree<'_>, scope: NodeId, name: &str) -> bool {
    tree.descendants(scope).any(|d| match tree.node(d).ast {
        AstKind::BindingIdentifier(b) => b.name == name,
        _ => false,
    })
}

fn listener_of(tree: &SyntaxTree<'_>, call: &CallExpression<'_>) -> Listener {
    let target = static_member(&call.callee).map(|m| m.object.span()).unwrap_or(call.callee.span());
    let event_arg = call.arguments.first().and_then(argument_expr);
    let event_name = event_arg.and_then(string_literal_value).unwrap_or_default().to_owned();
    let event_text = event_arg.map(|e| tree.text(e.span()).to_owned()).unwrap_or_default();
    let (handler, handler_span) = match call.arguments.get(1).and_then(argument_expr) {
        None => (Handler::Unsupported, None),
        Some(expr) => {
            let span = tree.span(expr.span());
            let handler = match peel(expr) {
                Expression::Identifier(id) => Handler::Identifier(id.name.to_string()),
                Expression::ArrowFunctionExpression(_) | Expression::FunctionExpression(_) => Handler::Inline(span),
                Expression::CallExpression(c) if callee_name(&c.callee) == Some("bind") => Handler::BoundCall(span),
                e @ Expression::StaticMemberExpression(_) if member_root(e) == Some("this") => {
                    member_path(e).map_or(Handler::Other(span), Handler::ThisMember)
                }
                _ => Handler::Other(span),
            };
            (handler, Some(span))
        }
    };
    Listener {
        target_text: tree.text(target).to_owned(),
        event_name,
        event_text,
        handler,
        handler_span,
        options_text: call.arguments.get(2).and_then(argument_expr).map(|e| tree.text(e.span()).to_owned()),
    }
}

fn enclosing_of(tree: &SyntaxTree<'_>, component: &FrameworkComponent, id: NodeId) -> Enclosing {
    if component.kind == ComponentKind::ReactFunction {
        return component
            .effect_sites
            .iter()
            .position(|site| {
                site.callback.is_some_and(|cb| tree.is_ancestor(cb, id))
                    || (site.callback.is_none() && site.call_span.contains(&tree.node(id).span))
            })
            .map_or(Enclosing::FunctionBody, Enclosing::EffectCallback);
    }
    for a in tree.ancestors(id).take_while(|&a| a != component.node) {
        match tree.node(a).ast {
            AstKind::MethodDefinition(m) if m.kind == MethodDefinitionKind::Constructor => {
                return Enclosing::Constructor;
            }
            AstKind::MethodDefinition(m) => {
                return Enclosing::ClassMethod(property_key_name(&m.key).unwrap_or("<computed>").to_owned());
            }
            AstKind::PropertyDefinition(p) => {
                return Enclosing::ClassMethod(property_key_name(&p.key).unwrap_or("<computed>").to_owned());
            }
            _ => {}
        }
    }
    Enclosing::ClassMethod("<static>".to_owned())
}

/// How the call's result is captured.
pub fn classify_handle_binding(tree: &SyntaxTree<'_>, call: NodeId) -> HandleBinding {
    let call_span = tree.node(call).span;
    let parent = tree.ancestors(call).find(|&a| {
        !matches!(
            tree.node(a).ast,
            AstKind::ParenthesizedExpression(_)
                | AstKind::TSAsExpression(_)
                | AstKind::TSNonNullExpression(_)
                | AstKind::TSSatisfiesExpression(_)
        )
    });
    let Some(parent) = parent else { return HandleBinding::None };
    match tree.node(parent).ast {
        AstKind::AssignmentExpression(assign) if peel(&assign.right).span().start as usize == call_span.start => {
            match &assign.left {
                AssignmentTarget::StaticMemberExpression(m)
                    if matches!(peel(&m.object), Expression::ThisExpression(_)) =>
                {
                    HandleBinding::InstanceProperty(m.property.name.to_string())
                }
                AssignmentTarget::AssignmentTargetIdentifier(id) => HandleBinding::LocalVariable(id.name.to_string()),
                _ => HandleBinding::None,
            }
        }
        AstKind::VariableDeclarator(decl) => match &decl.id {
            BindingPattern::BindingIdentifier(b) => HandleBinding::LocalVariable(b.name.to_string()),
            _ => HandleBinding::None,
        },
        AstKind::PropertyDefinition(p) if !p.r#static => {
            property_key_name(&p.key).map_or(HandleBinding::None, |n| HandleBinding::InstanceProperty(n.to_owned()))
        }
        _ => HandleBinding::None,
    }
}

/// Evidence of existing cleanup for `site` anywhere in the component.
pub fn has_cleanup(tree: &SyntaxTree<'_>, component: &FrameworkComponent, site: &AcquisitionSite) -> Option<Span> {
    let reference = site.binding.reference();
    tree.descendants(component.node).find_map(|d| {
        let AstKind::CallExpression(call) = tree.node(d).ast else { return None };
        let hit = match site.leak_kind {
            LeakKind::Subscription => {
                let reference = reference.as_deref()?;
                static_member(&call.callee).is_some_and(|m| {
                    m.property.name == "unsubscribe" && member_path(&m.object).as_deref() == Some(reference)
                })
            }
            LeakKind::EventListener => removes_listener(tree, call, site.listener.as_ref()?),
            kind => {
                let reference = reference.as_deref()?;
                let clear = kind.clear_function()?;
                is_global_call(&call.callee, clear)
                    && call.arguments.first().and_then(argument_expr).and_then(member_path).as_deref()
                        == Some(reference)
            }
        };
        hit.then(|| tree.node(d).span)
    })
}

fn removes_listener(tree: &SyntaxTree<'_>, call: &CallExpression<'_>, listener: &Listener) -> bool {
    let Some(member) = static_member(&call.callee) else { return false };
    if member.property.name != "removeEventListener" {
        return false;
    }
    if squash_whitespace(tree.text(member.object.span())) != squash_whitespace(&listener.target_text) {
        return false;
    }
    let event = call.arguments.first().and_then(argument_expr).and_then(string_literal_value);
    if event != Some(listener.event_name.as_str()) {
        return false;
    }
    let Some(handler) = call.arguments.get(1).and_then(argument_expr) else { return false };
    match &listener.handler {
        Handler::Identifier(name) => {
            matches!(peel(handler), Expression::Identifier(id) if id.name == name.as_str())
        }
        Handler::ThisMember(path) => member_path(handler).as_deref() == Some(path.as_str()),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detector::detect_components;
    use crate::source_model::{parse, SourceDialect};
    use oxc_allocator::Allocator;

    fn scan(src: &str, dialect: SourceDialect, options: &ScanOptions) -> Vec<(LeakKind, HandleBinding, Cleanup)> {
        let alloc = Allocator::default();
        let tree = parse(&alloc, src, dialect).unwrap();
        detect_components(&tree)
            .iter()
            .flat_map(|c| scan_component(&tree, c, options))
            .map(|c| (c.site.leak_kind, c.site.binding, c.cleanup))
            .collect()
    }

    fn scan_all(src: &str, dialect: SourceDialect) -> Vec<(LeakKind, HandleBinding, Cleanup)> {
        scan(src, dialect, &ScanOptions::default())
    }

    const HASH_ROUTER: &str = "class HashRouter extends React.Component {\n  componentDidMount() {\n    window.addEventListener('hashchange', this.onHashChange);\n  }\n  onHashChange = () => {\n    this.setState({ hash: window.location.hash });\n  };\n}\n";

    #[test]
    fn hashchange_listener_candidate() {
        let alloc = Allocator::default();
        let tree = parse(&alloc, HASH_ROUTER, SourceDialect::Jsx).unwrap();
        let comps = detect_components(&tree);
        let cands = scan_component(&tree, &comps[0], &ScanOptions::default());
        assert_eq!(cands.len(), 1);
        let listener = cands[0].site.listener.as_ref().unwrap();
        assert_eq!(listener.target_text, "window");
        assert_eq!(listener.event_name, "hashchange");
        assert_eq!(listener.handler, Handler::ThisMember("this.onHashChange".into()));
        assert_eq!(cands[0].cleanup, Cleanup::Missing);
        assert_eq!(cands[0].site.enclosing, Enclosing::ClassMethod("componentDidMount".into()));
    }

    #[test]
    fn removal_in_destructor_is_present() {
        let fixed = HASH_ROUTER.replace(
            "  onHashChange",
            "  componentWillUnmount() {\n    window.removeEventListener('hashchange', this.onHashChange);\n  }\n  onHashChange",
        );
        let alloc = Allocator::default();
        let tree = parse(&alloc, &fixed, SourceDialect::Jsx).unwrap();
        let comps = detect_components(&tree);
        let cands = scan_component(&tree, &comps[0], &ScanOptions::default());
        let Cleanup::Present(ev) = cands[0].cleanup else { panic!("{:?}", cands[0].cleanup) };
        assert!(fixed[ev.range()].starts_with("window.removeEventListener"));
    }

    #[test]
    fn uncleared_local_interval() {
        let src = "class T extends Component {\n  componentDidMount() {\n    const id = setInterval(f, 100);\n  }\n}\n";
        assert_eq!(
            scan_all(src, SourceDialect::Jsx),
            vec![(LeakKind::Interval, HandleBinding::LocalVariable("id".into()), Cleanup::Missing)]
        );
    }

    #[test]
    fn binding_classification() {
        let src = "class T extends Component {\n  a() { this.t = setTimeout(f, d); }\n  b() { setInterval(f, d); }\n  c() { const r = requestAnimationFrame(step); }\n  tick = window.setInterval(f, 1);\n}\n";
        let bindings: Vec<_> = scan_all(src, SourceDialect::Jsx).into_iter().map(|c| c.1).collect();
        assert_eq!(
            bindings,
            vec![
                HandleBinding::InstanceProperty("t".into()),
                HandleBinding::None,
                HandleBinding::LocalVariable("r".into()),
                HandleBinding::InstanceProperty("tick".into()),
            ]
        );
    }

    #[test]
    fn instance_timeout_cleared_elsewhere() {
        let src = "class T extends Component {\n  a() { this.t = setTimeout(f, d); }\n  b() { if (x) clearTimeout(this.t); }\n}\n";
        assert!(matches!(scan_all(src, SourceDialect::Jsx)[0].2, Cleanup::Present(_)));
    }

    #[test]
    fn bare_timeout_never_matches_unrelated_clear() {
        let src = "class T extends Component {\n  a() { setTimeout(f, d); }\n  componentWillUnmount() { clearTimeout(this.t); }\n}\n";
        assert_eq!(scan_all(src, SourceDialect::Jsx)[0].2, Cleanup::Missing);
    }

    #[test]
    fn completing_operators_suppress_subscriptions() {
        let src = "@Component({})\nclass A {\n  ngOnInit() {\n    this.s.data$.pipe(takeUntil(this.destroy$)).subscribe(v => v);\n    this.s.one$.pipe(first()).subscribe();\n    this.s.other$.subscribe(v => v);\n  }\n}\n";
        let found = scan_all(src, SourceDialect::Typed);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].0, LeakKind::Subscription);
    }

    #[test]
    fn fp1_scope_flag() {
        let src = "class A extends Component {\n  componentDidMount() { this.props.store.subscribe(cb); }\n}\n";
        assert!(scan_all(src, SourceDialect::Jsx).is_empty());
        let wide = ScanOptions { fp1_scope: Fp1Scope::AllClasses, ..ScanOptions::default() };
        assert_eq!(scan(src, SourceDialect::Jsx, &wide).len(), 1);
    }

    #[test]
    fn unsubscribe_on_binding_counts() {
        let src = "@Component({})\nclass A {\n  ngOnInit() { this.sub = this.s.x$.subscribe(); }\n  ngOnDestroy() { this.sub.unsubscribe(); }\n}\n";
        assert!(matches!(scan_all(src, SourceDialect::Typed)[0].2, Cleanup::Present(_)));
    }

    #[test]
    fn local_elements_are_skipped() {
        let src = "class A extends Component {\n  componentDidMount() {\n    const el = document.createElement('div');\n    el.addEventListener('click', this.go);\n    document.body.addEventListener('click', this.go);\n    this.node.addEventListener('scroll', this.go);\n    globalBus.addEventListener('x', this.go);\n  }\n}\n";
        let kinds: Vec<_> = scan_all(src, SourceDialect::Jsx).into_iter().map(|c| c.0).collect();
        assert_eq!(kinds.len(), 3);
    }

    #[test]
    fn function_component_effects() {
        let src = "function C() {\n  useEffect(() => {\n    const id = setInterval(tick, 1000);\n    return () => clearInterval(id);\n  }, []);\n  useEffect(() => {\n    window.addEventListener('resize', onResize);\n  }, []);\n  const click = () => setTimeout(go, 10);\n  return null;\n}\n";
        let found = scan_all(src, SourceDialect::Jsx);
        assert_eq!(found.len(), 3);
        assert!(matches!(found[0].2, Cleanup::Present(_)));
        assert_eq!(found[1].2, Cleanup::Missing);
        assert_eq!(found[2].2, Cleanup::Unrepairable("outside effect".into()));
    }

    #[test]
    fn kind_filter_is_a_subset() {
        let src = "class A extends Component {\n  componentDidMount() {\n    setTimeout(a, 1);\n    setInterval(b, 2);\n    requestAnimationFrame(c);\n    window.addEventListener('resize', this.r);\n  }\n}\n";
        let full = scan_all(src, SourceDialect::Jsx);
        for kind in LeakKind::ALL {
            let only = ScanOptions { enabled: [kind].into_iter().collect(), ..ScanOptions::default() };
            let subset: Vec<_> = full.iter().filter(|c| c.0 == kind).cloned().collect();
            assert_eq!(scan(src, SourceDialect::Jsx, &only), subset);
        }
    }

    #[test]
    fn leak_kind_parsing() {
        assert_eq!("fp3b".parse::<LeakKind>().unwrap(), LeakKind::Interval);
        assert_eq!("FP1_Subscription".parse::<LeakKind>().unwrap(), LeakKind::Subscription);
        assert!("fp9".parse::<LeakKind>().is_err());
    }
}
