//! Turns missing-cleanup candidates into span edits: handle capture, handler
//! hoisting, destructor creation, cleanup calls and imports.

use std::collections::BTreeSet;
use std::fmt;

use oxc_ast::ast::{
    ArrowFunctionBody, ClassElement, Expression, FunctionBody, ImportDeclarationSpecifier, MethodDefinitionKind,
    Statement,
};
use oxc_ast::AstKind;
use oxc_span::GetSpan;
use serde::{Deserialize, Serialize};

use crate::detector::{EffectSite, FrameworkComponent, TeardownSite};
use crate::scanner::{declares, Cleanup, Enclosing, HandleBinding, Handler, LeakCandidate, LeakKind};
use crate::source_model::{
    block_append_edit, child_indent, indent_of_line, indent_unit, line_start, render_lines, BlockShape, Edit, EditSet,
    LineEnding, NodeId, Span, SyntaxTree,
};
use crate::syntax::{callee_name, contains_identifier, peel, property_key_name, static_member};

pub const RXJS: &str = "rxjs";
pub const RXJS_OPERATORS: &str = "rxjs/operators";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamePolicy {
    pub destroy_notifier: String,
    pub timeout: String,
    pub interval: String,
    pub animation_frame: String,
    /// Prefix for hoisted handlers named after the original (`boundOnResize`).
    pub handler_prefix: String,
    pub handler_fallback: String,
}

impl Default for NamePolicy {
    fn default() -> Self {
        Self {
            destroy_notifier: "destroy$".into(),
            timeout: "timeoutId".into(),
            interval: "intervalId".into(),
            animation_frame: "rafId".into(),
            handler_prefix: "bound".into(),
            handler_fallback: "boundHandler".into(),
        }
    }
}

impl NamePolicy {
    fn timer_base(&self, kind: LeakKind) -> &str {
        match kind {
            LeakKind::Timeout => &self.timeout,
            LeakKind::Interval => &self.interval,
            _ => &self.animation_frame,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatchOptions {
    pub names: NamePolicy,
    /// Module that `takeUntil` is imported from.
    pub operator_module: String,
}

impl Default for PatchOptions {
    fn default() -> Self {
        Self { names: NamePolicy::default(), operator_module: RXJS.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ImportRequest {
    pub module: String,
    pub name: String,
}

impl ImportRequest {
    pub fn new(module: &str, name: &str) -> Self {
        Self { module: module.into(), name: name.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SkipReason {
    /// Another candidate already rewrites the same source range.
    Overlap,
    Inapplicable(String),
}

impl fmt::Display for SkipReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Overlap => f.write_str("overlap"),
            Self::Inapplicable(reason) => f.write_str(reason),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedCandidate {
    pub candidate: LeakCandidate,
    pub reason: SkipReason,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RepairPlan {
    pub edits: EditSet,
    /// (purpose, identifier) for every name the plan introduces.
    pub generated_names: Vec<(String, String)>,
    /// Imports the component's fixes depend on.
    pub imports_needed: Vec<ImportRequest>,
    /// Imports actually added; filled by [`plan_file`].
    pub imports_added: Vec<ImportRequest>,
    pub repaired: Vec<LeakCandidate>,
    pub skipped: Vec<SkippedCandidate>,
}

impl RepairPlan {
    pub fn is_empty(&self) -> bool {
        self.edits.is_empty()
    }
}

/// `base`, or `base` with the smallest suffix ≥ 2 that appears nowhere in
/// `scope_text` and is not already reserved.
pub fn fresh_identifier(base: &str, scope_text: &str, reserved: &BTreeSet<String>) -> String {
    let free = |c: &str| !reserved.contains(c) && !contains_identifier(scope_text, c);
    if free(base) {
        return base.to_owned();
    }
    (2u32..).map(|n| format!("{base}{n}")).find(|c| free(c)).expect("suffixes are unbounded")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Target {
    Teardown,
    Effect(usize),
}

#[derive(Default)]
struct Patch {
    edits: Vec<Edit>,
    cleanup: Vec<String>,
    declarations: Vec<String>,
    names: Vec<(String, String)>,
    uses_notifier: bool,
}

struct Notifier {
    name: String,
    created: bool,
}

struct Ctx<'t, 'a> {
    tree: &'t SyntaxTree<'a>,
    component: &'t FrameworkComponent,
    options: &'t PatchOptions,
    text: &'a str,
    scope_text: &'a str,
    eol: &'static str,
    unit: String,
    typed: bool,
    reserved: BTreeSet<String>,
    notifier: Option<Notifier>,
}

impl<'t, 'a> Ctx<'t, 'a> {
    fn new(tree: &'t SyntaxTree<'a>, component: &'t FrameworkComponent, options: &'t PatchOptions) -> Self {
        let text = tree.source();
        Self {
            tree,
            component,
            options,
            text,
            scope_text: &text[component.span.range()],
            eol: LineEnding::detect(text).as_str(),
            unit: indent_unit(text),
            typed: tree.dialect().is_typed(),
            reserved: BTreeSet::new(),
            notifier: None,
        }
    }

    fn fresh(&mut self, base: &str) -> String {
        let name = fresh_identifier(base, self.scope_text, &self.reserved);
        self.reserved.insert(name.clone());
        name
    }

    fn declared_in_component(&self, name: &str) -> bool {
        declares(self.tree, self.component.node, name)
    }

    /// Insert `line` as a statement just before the statement at `start`.
    fn before_statement(&self, start: usize, line: &str) -> Edit {
        if starts_line(self.text, start) {
            Edit::insert(start, format!("{line}{}{}", self.eol, indent_of_line(self.text, start)))
        } else {
            Edit::insert(start, format!("{line} "))
        }
    }
}

fn starts_line(text: &str, offset: usize) -> bool {
    text[line_start(text, offset)..offset].chars().all(|c| c == ' ' || c == '\t')
}

fn capitalize(name: &str) -> String {
    let mut chars = name.chars();
    chars.next().map_or_else(String::new, |c| c.to_uppercase().chain(chars).collect())
}

fn is_identifier(s: &str) -> bool {
    !s.is_empty()
        && !s.starts_with(|c: char| c.is_ascii_digit())
        && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '$')
}

/// Plan fixes for one component. Only `Missing` candidates are considered.
pub fn plan_repair(
    tree: &SyntaxTree<'_>,
    component: &FrameworkComponent,
    candidates: &[LeakCandidate],
    options: &PatchOptions,
) -> RepairPlan {
    let mut ctx = Ctx::new(tree, component, options);
    let mut plan = RepairPlan::default();
    let mut setup = EditSet::new();
    let mut cleanup: Vec<(Target, String)> = Vec::new();
    let mut declarations = Vec::new();
    let mut notifier_used = false;

    let mut ordered: Vec<&LeakCandidate> = candidates.iter().filter(|c| c.cleanup == Cleanup::Missing).collect();
    ordered.sort_by_key(|c| (c.site.call_span.start, c.site.call));
    for cand in ordered {
        let reserved = ctx.reserved.clone();
        let notifier_was_resolved = ctx.notifier.is_some();
        let outcome = target_of(&ctx, cand).and_then(|target| {
            let patch = recipe(&mut ctx, cand, target)?;
            Ok((target, patch))
        });
        let reason = match outcome {
            Ok((target, patch)) => {
                if patch.edits.iter().any(|e| setup.conflicts_with(e)) {
                    SkipReason::Overlap
                } else {
                    setup.extend(patch.edits);
                    cleanup.extend(patch.cleanup.into_iter().map(|c| (target, c)));
                    declarations.extend(patch.declarations);
                    plan.generated_names.extend(patch.names);
                    notifier_used |= patch.uses_notifier;
                    plan.repaired.push(cand.clone());
                    continue;
                }
            }
            Err(reason) => SkipReason::Inapplicable(reason),
        };
        ctx.reserved = reserved;
        if !notifier_was_resolved {
            ctx.notifier = None;
        }
        plan.skipped.push(SkippedCandidate { candidate: cand.clone(), reason });
    }

    let mut structural: Vec<Edit> = Vec::new();
    let mut prologue: Vec<String> = Vec::new();
    if notifier_used {
        let notifier = ctx.notifier.as_ref().expect("resolved by the subscription recipe");
        let name = notifier.name.clone();
        if notifier.created {
            plan.generated_names.push(("destroy notifier".into(), name.clone()));
            plan.imports_needed.push(ImportRequest::new(RXJS, "Subject"));
            if ctx.typed {
                prologue.push(format!("private readonly {name} = new Subject<void>();"));
            } else {
                match constructor_edit(&ctx, &format!("this.{name} = new Subject();")) {
                    Some(edit) => structural.push(edit),
                    None => prologue.push(new_constructor(&ctx, &name)),
                }
            }
            cleanup.push((Target::Teardown, format!("this.{name}.next();")));
            cleanup.push((Target::Teardown, format!("this.{name}.complete();")));
        }
        plan.imports_needed.push(ImportRequest::new(&options.operator_module, "takeUntil"));
    }
    prologue.extend(declarations);

    let class_members = class_member_count(tree, component);
    if !prologue.is_empty() {
        structural.push(prologue_edit(&ctx, &prologue, class_members > 0));
    }

    let mut cleanup_edits = Vec::new();
    let mut targets: Vec<Target> = cleanup.iter().map(|(t, _)| *t).collect();
    targets.dedup();
    let targets: BTreeSet<Target> = targets.into_iter().collect();
    for target in targets {
        let lines: Vec<String> = cleanup.iter().filter(|(t, _)| *t == target).map(|(_, l)| l.clone()).collect();
        match target {
            Target::Teardown => {
                cleanup_edits.extend(teardown_edits(&ctx, &lines, class_members > 0 || !prologue.is_empty()))
            }
            Target::Effect(i) => cleanup_edits.extend(effect_cleanup_edits(&ctx, i, &lines)),
        }
    }

    plan.edits.extend(structural);
    plan.edits.extend(setup);
    plan.edits.extend(cleanup_edits);
    plan
}

/// Plan every component of a file and add the imports the fixes need.
/// Components whose edits collide with an earlier component's are skipped.
pub fn plan_file(
    tree: &SyntaxTree<'_>,
    components: &[FrameworkComponent],
    candidates: &[LeakCandidate],
    options: &PatchOptions,
) -> RepairPlan {
    let mut plan = RepairPlan::default();
    for component in components {
        let own: Vec<LeakCandidate> =
            candidates.iter().filter(|c| c.component_node == component.node).cloned().collect();
        if own.is_empty() {
            continue;
        }
        let part = plan_repair(tree, component, &own, options);
        if part.edits.iter().any(|e| plan.edits.conflicts_with(e)) {
            plan.skipped.extend(part.skipped);
            plan.skipped.extend(
                part.repaired.into_iter().map(|candidate| SkippedCandidate { candidate, reason: SkipReason::Overlap }),
            );
            continue;
        }
        plan.edits.extend(part.edits);
        plan.generated_names.extend(part.generated_names);
        for request in part.imports_needed {
            if !plan.imports_needed.contains(&request) {
                plan.imports_needed.push(request);
            }
        }
        plan.repaired.extend(part.repaired);
        plan.skipped.extend(part.skipped);
    }
    let (edits, added) = ensure_imports(tree, &plan.imports_needed);
    plan.edits.extend(edits);
    plan.imports_added = added;
    plan
}

fn target_of(ctx: &Ctx<'_, '_>, cand: &LeakCandidate) -> Result<Target, String> {
    let tree = ctx.tree;
    let site = &cand.site;
    if ctx.component.kind.is_class() {
        if in_static_member(tree, ctx.component, site.call) {
            return Err("static member".into());
        }
        if this_rebound(tree, ctx.component, site.call) {
            return Err("`this` is rebound at the acquisition".into());
        }
        if let Enclosing::ClassMethod(name) = &site.enclosing {
            if ctx.component.kind.teardown_method() == Some(name.as_str()) {
                return Err("acquired in teardown".into());
            }
        }
        return Ok(Target::Teardown);
    }
    let Enclosing::EffectCallback(idx) = site.enclosing else {
        return Err("outside effect".into());
    };
    let effect = &ctx.component.effect_sites[idx];
    if effect.callback.is_none() {
        return Err("effect callback is not an inline function".into());
    }
    if !effect.callback_is_block {
        return Err("concise effect callback".into());
    }
    if effect.callback_is_async {
        return Err("async effect callback".into());
    }
    if effect.cleanup_return.is_some_and(|c| c.contains(&site.call_span)) {
        return Err("acquired in effect cleanup".into());
    }
    let statements = effect_statements(tree, effect).unwrap_or(&[]);
    if statements.iter().any(|s| matches!(s, Statement::ReturnStatement(r) if r.argument.is_none())) {
        return Err("early return in effect".into());
    }
    if effect.cleanup_return.is_none() && effect.opaque_return.is_some() {
        match concise_cleanup(tree, effect) {
            Some(expr) if expr.contains(&site.call_span) => return Err("acquired in effect cleanup".into()),
            Some(expr) if !tree.source()[expr.range()].contains('\n') => {}
            _ => return Err("effect returns an opaque cleanup".into()),
        }
    }
    Ok(Target::Effect(idx))
}

fn recipe(ctx: &mut Ctx<'_, '_>, cand: &LeakCandidate, target: Target) -> Result<Patch, String> {
    match cand.site.leak_kind {
        LeakKind::Subscription => subscription_recipe(ctx, cand),
        LeakKind::EventListener => listener_recipe(ctx, cand, target),
        _ => timer_recipe(ctx, cand, target),
    }
}

fn timer_recipe(ctx: &mut Ctx<'_, '_>, cand: &LeakCandidate, target: Target) -> Result<Patch, String> {
    let site = &cand.site;
    let kind = site.leak_kind;
    let clear = kind.clear_function().expect("timer kinds have a clear function");
    let mut patch = Patch::default();
    let reference = match (target, &site.binding) {
        (Target::Teardown, HandleBinding::InstanceProperty(name)) => format!("this.{name}"),
        (Target::Teardown, HandleBinding::LocalVariable(name)) if !ctx.declared_in_component(path_root(name)) => {
            name.clone()
        }
        (Target::Teardown, _) => {
            let name = ctx.fresh(ctx.options.names.timer_base(kind));
            patch.edits.extend(capture_edits(ctx, site.call, &format!("this.{name} = ")));
            if ctx.typed {
                patch.declarations.push(match kind {
                    LeakKind::Timeout => format!("private {name}?: ReturnType<typeof setTimeout>;"),
                    LeakKind::Interval => format!("private {name}?: ReturnType<typeof setInterval>;"),
                    _ => format!("private {name}?: number;"),
                });
            }
            patch.names.push((format!("{} handle", kind.short()), name.clone()));
            format!("this.{name}")
        }
        (Target::Effect(_), HandleBinding::InstanceProperty(_)) => {
            return Err("`this` in a function component".into());
        }
        (Target::Effect(i), HandleBinding::LocalVariable(name)) => {
            if !reachable_from_effect(ctx, i, path_root(name)) {
                return Err("handle is not reachable from the effect cleanup".into());
            }
            name.clone()
        }
        (Target::Effect(i), HandleBinding::None) => {
            let stmt = site.statement.ok_or("acquisition is not inside a statement")?;
            let direct = match ctx.tree.node(stmt).ast {
                AstKind::ExpressionStatement(es) => {
                    peel(&es.expression).span().start as usize == site.call_span.start
                        && peel(&es.expression).span().end as usize == site.call_span.end
                }
                _ => false,
            };
            if !direct || !top_level_in_effect(ctx, i, stmt) {
                return Err("handle cannot be captured at this position".into());
            }
            let name = ctx.fresh(ctx.options.names.timer_base(kind));
            patch.edits.push(Edit::insert(site.statement_span.start, format!("const {name} = ")));
            patch.names.push((format!("{} handle", kind.short()), name.clone()));
            name
        }
    };
    patch.cleanup.push(format!("{clear}({reference});"));
    Ok(patch)
}

/// Prefix the call with `prefix` (an assignment), parenthesizing when the
/// surrounding expression would otherwise bind tighter.
fn capture_edits(ctx: &Ctx<'_, '_>, call: NodeId, prefix: &str) -> Vec<Edit> {
    let tree = ctx.tree;
    let span = tree.node(call).span;
    let bare = match tree.parent(call).map(|p| tree.node(p).ast) {
        Some(
            AstKind::ExpressionStatement(_)
            | AstKind::VariableDeclarator(_)
            | AstKind::ParenthesizedExpression(_)
            | AstKind::ReturnStatement(_)
            | AstKind::PropertyDefinition(_)
            | AstKind::AssignmentExpression(_),
        ) => true,
        Some(AstKind::CallExpression(c)) => c.callee.span().start as usize != span.start,
        Some(AstKind::NewExpression(n)) => n.callee.span().start as usize != span.start,
        _ => false,
    };
    if bare {
        vec![Edit::insert(span.start, prefix)]
    } else {
        vec![Edit::insert(span.start, format!("({prefix}")), Edit::insert(span.end, ")")]
    }
}

fn listener_recipe(ctx: &mut Ctx<'_, '_>, cand: &LeakCandidate, target: Target) -> Result<Patch, String> {
    let site = &cand.site;
    let listener = site.listener.as_ref().ok_or("listener details missing")?;
    let class = target == Target::Teardown;
    if !class && listener.target_text.trim_start().starts_with("this") {
        return Err("`this` in a function component".into());
    }
    let mut patch = Patch::default();
    let handler_ref = match (&listener.handler, target) {
        (Handler::Unsupported, _) => return Err("handler argument is missing or spread".into()),
        (Handler::ThisMember(_), Target::Effect(_)) => return Err("`this` in a function component".into()),
        (Handler::ThisMember(path), Target::Teardown) => Some(path.clone()),
        (Handler::Identifier(n), Target::Teardown) if !ctx.declared_in_component(n) => Some(n.clone()),
        (Handler::Identifier(n), Target::Effect(i)) => {
            if !reachable_from_effect(ctx, i, n) {
                return Err("handler is not reachable from the effect cleanup".into());
            }
            Some(n.clone())
        }
        _ => None,
    };
    let handler_ref = match handler_ref {
        Some(r) => r,
        None => {
            let stmt = site.statement.ok_or("listener is not inside a statement")?;
            if !in_statement_list(ctx.tree, stmt) {
                return Err("listener statement is not in a block".into());
            }
            if let Target::Effect(i) = target {
                if !top_level_in_effect(ctx, i, stmt) {
                    return Err("handler hoisting needs a top-level effect statement".into());
                }
            }
            let span = listener.handler_span.ok_or("handler span missing")?;
            let handler_text = &ctx.text[span.range()];
            let base = handler_base_name(&ctx.options.names, &listener.handler, handler_text);
            let name = ctx.fresh(&base);
            let reference = if class { format!("this.{name}") } else { name.clone() };
            let line = if class {
                format!("this.{name} = {handler_text};")
            } else {
                format!("const {name} = {handler_text};")
            };
            patch.edits.push(ctx.before_statement(site.statement_span.start, &line));
            patch.edits.push(Edit::replace(span.start, span.end, reference.clone()));
            if class && ctx.typed {
                patch.declarations.push(format!("private {name}!: (event: any) => void;"));
            }
            patch.names.push(("fp2 handler".into(), name));
            reference
        }
    };
    let options = listener.options_text.as_ref().map(|o| format!(", {o}")).unwrap_or_default();
    patch.cleanup.push(format!(
        "{}.removeEventListener({}, {handler_ref}{options});",
        listener.target_text, listener.event_text
    ));
    Ok(patch)
}

fn handler_base_name(policy: &NamePolicy, handler: &Handler, text: &str) -> String {
    let original = match handler {
        Handler::Identifier(n) => Some(n.as_str()),
        Handler::BoundCall(_) => text.rfind(".bind").map(|i| text[..i].rsplit('.').next().unwrap_or("").trim()),
        Handler::Other(_) | Handler::ThisMember(_) => Some(text.rsplit('.').next().unwrap_or("").trim()),
        Handler::Inline(_) | Handler::Unsupported => None,
    };
    match original {
        Some(o) if is_identifier(o) && o != "this" => format!("{}{}", policy.handler_prefix, capitalize(o)),
        _ => policy.handler_fallback.clone(),
    }
}

fn subscription_recipe(ctx: &mut Ctx<'_, '_>, cand: &LeakCandidate) -> Result<Patch, String> {
    let tree = ctx.tree;
    let AstKind::CallExpression(call) = tree.node(cand.site.call).ast else {
        return Err("not a call".into());
    };
    let member = static_member(&call.callee).ok_or("subscribe callee is not a member access")?;
    if member.optional {
        return Err("optional call chain".into());
    }
    if matches!(cand.site.enclosing, Enclosing::ClassMethod(_))
        && !ctx.typed
        && in_property_initializer(tree, cand.site.call)
    {
        return Err("field initializer runs before the notifier exists".into());
    }
    if ctx.notifier.is_none() {
        ctx.notifier = Some(match existing_notifier(ctx) {
            Some(name) => Notifier { name, created: false },
            None => Notifier { name: ctx.fresh(&ctx.options.names.destroy_notifier.clone()), created: true },
        });
    }
    let name = &ctx.notifier.as_ref().expect("just resolved").name;
    let operator = format!("takeUntil(this.{name})");
    let mut patch = Patch { uses_notifier: true, ..Patch::default() };
    let receiver = peel(&member.object);
    let pipe = match receiver {
        Expression::CallExpression(pc)
            if callee_name(&pc.callee) == Some("pipe") && static_member(&pc.callee).is_some() =>
        {
            Some(pc)
        }
        _ => None,
    };
    match pipe {
        Some(pc) => match pc.arguments.last() {
            None => patch.edits.push(Edit::insert(pc.span.end as usize - 1, operator)),
            Some(last) => {
                let last = last.span();
                let open_line = line_start(ctx.text, pc.callee.span().end as usize);
                let own_line = starts_line(ctx.text, last.start as usize)
                    && line_start(ctx.text, last.start as usize) != open_line;
                let text = if own_line {
                    format!(",{}{}{operator}", ctx.eol, indent_of_line(ctx.text, last.start as usize))
                } else {
                    format!(", {operator}")
                };
                patch.edits.push(Edit::insert(last.end as usize, text));
            }
        },
        None => patch.edits.push(Edit::insert(member.object.span().end as usize, format!(".pipe({operator})"))),
    }
    Ok(patch)
}

/// A `Subject` property the teardown already signals with `next()`.
fn existing_notifier(ctx: &Ctx<'_, '_>) -> Option<String> {
    let teardown = ctx.component.teardown.as_ref()?;
    let teardown_text = &ctx.text[teardown.body_span.range()];
    let tree = ctx.tree;
    tree.descendants(ctx.component.node).find_map(|d| {
        let (name, value) = match tree.node(d).ast {
            AstKind::PropertyDefinition(p) => (property_key_name(&p.key)?.to_owned(), p.value.as_ref()?),
            AstKind::AssignmentExpression(a) => {
                let oxc_ast::ast::AssignmentTarget::StaticMemberExpression(m) = &a.left else { return None };
                if !matches!(peel(&m.object), Expression::ThisExpression(_)) {
                    return None;
                }
                (m.property.name.to_string(), &a.right)
            }
            _ => return None,
        };
        let Expression::NewExpression(new) = peel(value) else { return None };
        (callee_name(&new.callee) == Some("Subject")
            && crate::syntax::squash_whitespace(teardown_text).contains(&format!("this.{name}.next(")))
        .then_some(name)
    })
}

fn in_property_initializer(tree: &SyntaxTree<'_>, id: NodeId) -> bool {
    tree.ancestors(id).any(|a| matches!(tree.node(a).ast, AstKind::PropertyDefinition(_)))
}

fn class_body_of<'a>(tree: &SyntaxTree<'a>, component: &FrameworkComponent) -> Option<&'a oxc_ast::ast::ClassBody<'a>> {
    match tree.node(component.node).ast {
        AstKind::Class(class) => Some(&class.body),
        _ => None,
    }
}

fn class_member_count(tree: &SyntaxTree<'_>, component: &FrameworkComponent) -> usize {
    class_body_of(tree, component).map_or(0, |b| b.body.len())
}

fn has_heritage(tree: &SyntaxTree<'_>, component: &FrameworkComponent) -> bool {
    matches!(tree.node(component.node).ast, AstKind::Class(c) if c.heritage.is_some())
}

/// Insert `line` at the start of an existing constructor, after `super(...)`.
fn constructor_edit(ctx: &Ctx<'_, '_>, line: &str) -> Option<Edit> {
    let body = class_body_of(ctx.tree, ctx.component)?;
    let ctor = body.body.iter().find_map(|e| match e {
        ClassElement::MethodDefinition(m) if m.kind == MethodDefinitionKind::Constructor => m.value.body.as_deref(),
        _ => None,
    })?;
    let text = ctx.text;
    let open = ctor.span.start as usize;
    let super_stmt = ctor.statements.iter().find(|s| match s {
        Statement::ExpressionStatement(es) => matches!(
            peel(&es.expression),
            Expression::CallExpression(c) if matches!(c.callee, Expression::Super(_))
        ),
        _ => false,
    });
    Some(match (super_stmt, ctor.statements.first()) {
        (Some(s), _) => {
            let start = s.span().start as usize;
            let end = s.span().end as usize;
            if starts_line(text, start) {
                Edit::insert(end, format!("{}{}{line}", ctx.eol, indent_of_line(text, start)))
            } else {
                Edit::insert(end, format!(" {line}"))
            }
        }
        (None, Some(first)) => {
            let indent = child_indent(text, open, Some(first.span().start as usize), &ctx.unit);
            Edit::insert(open + 1, format!("{}{indent}{line}", ctx.eol))
        }
        (None, None) => block_append_edit(
            text,
            BlockShape::from_braces(open, ctor.span.end as usize, None),
            &[line.to_owned()],
            ctx.eol,
            &ctx.unit,
        ),
    })
}

fn new_constructor(ctx: &Ctx<'_, '_>, name: &str) -> String {
    let unit = &ctx.unit;
    if has_heritage(ctx.tree, ctx.component) {
        format!("constructor(...args) {{\n{unit}super(...args);\n{unit}this.{name} = new Subject();\n}}\n")
    } else {
        format!("constructor() {{\n{unit}this.{name} = new Subject();\n}}\n")
    }
}

/// New members at the top of the class body.
fn prologue_edit(ctx: &Ctx<'_, '_>, items: &[String], has_members: bool) -> Edit {
    let body = class_body_of(ctx.tree, ctx.component).expect("prologue only for classes");
    let open = body.span.start as usize;
    let first = body.body.first().map(|m| m.span().start as usize);
    let indent = child_indent(ctx.text, open, first, &ctx.unit);
    let items: Vec<String> =
        items.iter().map(|i| if has_members { i.clone() } else { i.trim_end_matches('\n').to_owned() }).collect();
    Edit::insert(open + 1, render_lines(&items, &indent, ctx.eol))
}

/// Existing or newly created (empty) teardown method for a class component.
/// Inside [`plan_repair`] a created method is emitted as an opener and a
/// closer edit, with the cleanup statements carried by the closer.
pub fn ensure_teardown(tree: &SyntaxTree<'_>, component: &FrameworkComponent) -> (TeardownSite, Vec<Edit>) {
    let options = PatchOptions::default();
    let ctx = Ctx::new(tree, component, &options);
    if let Some(site) = &component.teardown {
        return (site.clone(), Vec::new());
    }
    let edits = join(teardown_edits(&ctx, &[], class_member_count(tree, component) > 0));
    let at = edits[0].start;
    let site = TeardownSite {
        method_name: component.kind.teardown_method().unwrap_or("componentWillUnmount"),
        body_span: Span { start: at, end: at, line: tree.line_col(at).0, column: tree.line_col(at).1 },
        insertion_offset: at,
        last_statement: None,
    };
    (site, edits)
}

fn teardown_edits(ctx: &Ctx<'_, '_>, lines: &[String], has_members: bool) -> Vec<Edit> {
    if let Some(site) = &ctx.component.teardown {
        if lines.is_empty() {
            return Vec::new();
        }
        let shape = BlockShape::from_braces(site.body_span.start, site.body_span.end, site.last_statement);
        return vec![block_append_edit(ctx.text, shape, lines, ctx.eol, &ctx.unit)];
    }
    let body = class_body_of(ctx.tree, ctx.component).expect("teardown only for classes");
    let method = ctx.component.kind.teardown_method().expect("class component");
    let header = format!("{method}() {{");
    let mut item = header.clone();
    for line in lines {
        item.push('\n');
        item.push_str(&ctx.unit);
        item.push_str(line);
    }
    if !lines.is_empty() {
        item.push('\n');
    }
    item.push('}');
    let mut items = Vec::new();
    if has_members {
        items.push(String::new());
    }
    items.push(item);
    let shape = BlockShape::from_braces(
        body.span.start as usize,
        body.span.end as usize,
        body.body.last().map(|m| m.span().start as usize),
    );
    split_after(block_append_edit(ctx.text, shape, &items, ctx.eol, &ctx.unit), &header)
}

/// Undo [`split_after`] for callers that want the creation as one edit.
fn join(edits: Vec<Edit>) -> Vec<Edit> {
    match edits.as_slice() {
        [a, b] if a.start == b.start => {
            vec![Edit::replace(a.start, b.end, format!("{}{}", a.replacement, b.replacement))]
        }
        _ => edits,
    }
}

/// Split a generated edit right after `marker` into an insertion and the rest.
fn split_after(edit: Edit, marker: &str) -> Vec<Edit> {
    let cut = edit.replacement.find(marker).expect("marker is part of the edit") + marker.len();
    vec![
        Edit::insert(edit.start, &edit.replacement[..cut]),
        Edit::replace(edit.start, edit.end, &edit.replacement[cut..]),
    ]
}

fn effect_statements<'a>(tree: &SyntaxTree<'a>, effect: &EffectSite) -> Option<&'a [Statement<'a>]> {
    callback_body(tree, effect.callback?).map(|b| b.statements.as_slice())
}

fn callback_body<'a>(tree: &SyntaxTree<'a>, id: NodeId) -> Option<&'a FunctionBody<'a>> {
    match tree.node(id).ast {
        AstKind::ArrowFunctionExpression(a) => match &a.body {
            ArrowFunctionBody::FunctionBody(b) => Some(b),
            _ => None,
        },
        AstKind::Function(f) => f.body.as_deref(),
        _ => None,
    }
}

/// The expression of `return () => expr;` at the top of the callback.
fn concise_cleanup(tree: &SyntaxTree<'_>, effect: &EffectSite) -> Option<Span> {
    effect_statements(tree, effect)?.iter().find_map(|s| {
        let Statement::ReturnStatement(r) = s else { return None };
        let Expression::ArrowFunctionExpression(a) = peel(r.argument.as_ref()?) else { return None };
        a.body.as_expression().map(|e| tree.span(e.span()))
    })
}

/// Cleanup return for an effect without one: `return () => {};` appended to
/// the callback. Split like a created teardown method.
pub fn ensure_effect_cleanup(tree: &SyntaxTree<'_>, component: &FrameworkComponent, index: usize) -> (Span, Vec<Edit>) {
    let effect = &component.effect_sites[index];
    if let Some(body) = effect.cleanup_return {
        return (body, Vec::new());
    }
    let options = PatchOptions::default();
    let ctx = Ctx::new(tree, component, &options);
    let edits = join(effect_cleanup_edits(&ctx, index, &[]));
    let at = edits.first().map_or(effect.callback_body_span.end, |e| e.start);
    let (line, column) = tree.line_col(at);
    (Span { start: at, end: at, line, column }, edits)
}

fn effect_cleanup_edits(ctx: &Ctx<'_, '_>, index: usize, lines: &[String]) -> Vec<Edit> {
    let effect = &ctx.component.effect_sites[index];
    let text = ctx.text;
    if let Some(body) = effect.cleanup_return {
        if lines.is_empty() {
            return Vec::new();
        }
        let shape = BlockShape::from_braces(body.start, body.end, effect.cleanup_last_statement);
        return vec![block_append_edit(text, shape, lines, ctx.eol, &ctx.unit)];
    }
    if let Some(expr) = concise_cleanup(ctx.tree, effect) {
        let indent = indent_of_line(text, expr.start);
        let inner = format!("{indent}{}", ctx.unit);
        let mut items = vec![format!("{};", &text[expr.range()])];
        items.extend(lines.iter().cloned());
        return vec![Edit::replace(
            expr.start,
            expr.end,
            format!("{{{}{}{indent}}}", render_lines(&items, &inner, ctx.eol), ctx.eol),
        )];
    }
    let header = "return () => {";
    let mut item = header.to_owned();
    for line in lines {
        item.push('\n');
        item.push_str(&ctx.unit);
        item.push_str(line);
    }
    if !lines.is_empty() {
        item.push('\n');
    }
    item.push_str("};");
    let body = effect.callback_body_span;
    let shape = BlockShape::from_braces(body.start, body.end, effect.last_statement);
    split_after(block_append_edit(text, shape, &[item], ctx.eol, &ctx.unit), header)
}

fn top_level_in_effect(ctx: &Ctx<'_, '_>, index: usize, stmt: NodeId) -> bool {
    let tree = ctx.tree;
    let Some(callback) = ctx.component.effect_sites[index].callback else { return false };
    tree.parent(stmt).is_some_and(|body| {
        matches!(tree.node(body).ast, AstKind::FunctionBody(_)) && tree.parent(body) == Some(callback)
    })
}

fn in_statement_list(tree: &SyntaxTree<'_>, stmt: NodeId) -> bool {
    matches!(
        tree.parent(stmt).map(|p| tree.node(p).ast),
        Some(AstKind::FunctionBody(_) | AstKind::BlockStatement(_) | AstKind::StaticBlock(_))
    )
}

/// Whether `name` resolves to the same binding inside the effect's cleanup:
/// declared outside the component, as a component parameter, at the top of
/// the component body, or at the top of the effect callback.
fn reachable_from_effect(ctx: &Ctx<'_, '_>, index: usize, name: &str) -> bool {
    if !ctx.declared_in_component(name) {
        return true;
    }
    let tree = ctx.tree;
    let (params, body) = match tree.node(ctx.component.node).ast {
        AstKind::Function(f) => (tree.id_of(&*f.params), f.body.as_deref()),
        AstKind::ArrowFunctionExpression(a) => (
            tree.id_of(&*a.params),
            match &a.body {
                ArrowFunctionBody::FunctionBody(b) => Some(&**b),
                _ => None,
            },
        ),
        _ => return false,
    };
    if declares(tree, params, name) {
        return true;
    }
    if body.is_some_and(|b| top_level_declares(&b.statements, name)) {
        return true;
    }
    effect_statements(tree, &ctx.component.effect_sites[index]).is_some_and(|s| top_level_declares(s, name))
}

fn top_level_declares(statements: &[Statement<'_>], name: &str) -> bool {
    statements.iter().any(|s| match s {
        Statement::VariableDeclaration(d) => {
            d.declarations.iter().any(|decl| decl.id.get_binding_identifiers().iter().any(|b| b.name == name))
        }
        Statement::FunctionDeclaration(f) => f.id.as_ref().is_some_and(|i| i.name == name),
        Statement::ClassDeclaration(c) => c.id.as_ref().is_some_and(|i| i.name == name),
        _ => false,
    })
}

fn path_root(path: &str) -> &str {
    path.split('.').next().unwrap_or(path)
}

fn in_static_member(tree: &SyntaxTree<'_>, component: &FrameworkComponent, id: NodeId) -> bool {
    tree.ancestors(id).take_while(|&a| a != component.node).any(|a| match tree.node(a).ast {
        AstKind::MethodDefinition(m) => m.r#static,
        AstKind::PropertyDefinition(p) => p.r#static,
        AstKind::StaticBlock(_) => true,
        _ => false,
    })
}

/// A non-arrow function or a nested class between the call and the
/// component gives `this` a different meaning.
fn this_rebound(tree: &SyntaxTree<'_>, component: &FrameworkComponent, id: NodeId) -> bool {
    tree.ancestors(id).take_while(|&a| a != component.node).any(|a| match tree.node(a).ast {
        AstKind::Function(_) => !matches!(tree.parent(a).map(|p| tree.node(p).ast), Some(AstKind::MethodDefinition(_))),
        AstKind::Class(_) => true,
        _ => false,
    })
}

/// Edits adding the named imports not already bound in the file.
pub fn ensure_imports(tree: &SyntaxTree<'_>, needed: &[ImportRequest]) -> (Vec<Edit>, Vec<ImportRequest>) {
    let program = tree.program();
    let text = tree.source();
    let eol = LineEnding::detect(text).as_str();
    let imports: Vec<&oxc_ast::ast::ImportDeclaration<'_>> = program
        .body
        .iter()
        .filter_map(|s| match s {
            Statement::ImportDeclaration(d) => Some(&**d),
            _ => None,
        })
        .collect();
    let bound = |name: &str| {
        imports.iter().any(|d| {
            d.specifiers.iter().flatten().any(|s| match s {
                ImportDeclarationSpecifier::ImportSpecifier(s) => s.local.name == name,
                ImportDeclarationSpecifier::ImportDefaultSpecifier(s) => s.local.name == name,
                ImportDeclarationSpecifier::ImportNamespaceSpecifier(s) => s.local.name == name,
            })
        }) || top_level_declares(&program.body, name)
    };
    let mut missing: Vec<&ImportRequest> = Vec::new();
    for request in needed {
        if !bound(&request.name) && !missing.iter().any(|m| m.name == request.name) {
            missing.push(request);
        }
    }
    let mut modules: Vec<&str> = Vec::new();
    for m in &missing {
        if !modules.contains(&m.module.as_str()) {
            modules.push(&m.module);
        }
    }
    let mut edits = Vec::new();
    for module in modules {
        let names: Vec<&str> = missing.iter().filter(|m| m.module == module).map(|m| m.name.as_str()).collect();
        let existing = imports.iter().find(|d| {
            d.source.value == module && !d.import_kind.is_type() && d.phase.is_none() && d.specifiers.is_some()
        });
        let appended = existing.and_then(|d| append_to_import(text, eol, d, &names));
        match appended {
            Some(edit) => edits.push(edit),
            None => edits.push(new_import_line(tree, eol, &imports, module, &names)),
        }
    }
    (edits, missing.into_iter().cloned().collect())
}

fn append_to_import(text: &str, eol: &str, decl: &oxc_ast::ast::ImportDeclaration<'_>, names: &[&str]) -> Option<Edit> {
    let specifiers = decl.specifiers.as_ref()?;
    let last_named = specifiers.iter().rev().find_map(|s| match s {
        ImportDeclarationSpecifier::ImportSpecifier(s) => Some(s.span),
        _ => None,
    });
    if let Some(last) = last_named {
        let start = last.start as usize;
        let own_line = starts_line(text, start) && line_start(text, start) > decl.span.start as usize;
        let addition: String = if own_line {
            let indent = indent_of_line(text, start);
            names.iter().map(|n| format!(",{eol}{indent}{n}")).collect()
        } else {
            names.iter().map(|n| format!(", {n}")).collect()
        };
        return Some(Edit::insert(last.end as usize, addition));
    }
    match specifiers.as_slice() {
        [ImportDeclarationSpecifier::ImportDefaultSpecifier(d)] => {
            Some(Edit::insert(d.span.end as usize, format!(", {{ {} }}", names.join(", "))))
        }
        [] => {
            let head = &text[decl.span.start as usize..decl.source.span.start as usize];
            let brace = decl.span.start as usize + head.find('{')?;
            Some(Edit::insert(brace + 1, format!(" {} ", names.join(", "))))
        }
        _ => None,
    }
}

fn new_import_line(
    tree: &SyntaxTree<'_>,
    eol: &str,
    imports: &[&oxc_ast::ast::ImportDeclaration<'_>],
    module: &str,
    names: &[&str],
) -> Edit {
    let text = tree.source();
    match imports.last() {
        Some(last) => {
            let quote = tree.text(last.source.span).chars().next().unwrap_or('\'');
            let decl_text = tree.text(last.span);
            let semi = if decl_text.trim_end().ends_with(';') { ";" } else { "" };
            Edit::insert(
                last.span.end as usize,
                format!("{eol}import {{ {} }} from {quote}{module}{quote}{semi}", names.join(", ")),
            )
        }
        None => {
            let quote = if text.matches('"').count() > text.matches('\'').count() { '"' } else { '\'' };
            let line = format!("import {{ {} }} from {quote}{module}{quote};{eol}", names.join(", "));
            let at = match &tree.program().hashbang {
                Some(h) => text[h.span.end as usize..].find('\n').map_or(text.len(), |i| h.span.end as usize + i + 1),
                None => 0,
            };
            if at == text.len() && at > 0 && !text.ends_with('\n') {
                Edit::insert(at, format!("{eol}{line}"))
            } else {
                Edit::insert(at, line)
            }
        }
    }
}
