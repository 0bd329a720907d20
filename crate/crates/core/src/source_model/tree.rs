use std::fmt;
use std::path::Path;

use oxc_allocator::Allocator;
use oxc_ast::ast::Program;
use oxc_ast::AstKind;
use oxc_ast_visit::Visit;
use oxc_parser::{ParseOptions, Parser};
use oxc_span::{GetSpan, SourceType};
use oxc_syntax::node::{GetNodeId, NodeId as AstNodeId};
use serde::{Deserialize, Serialize};

use super::layout::LineIndex;

/// A located byte range. `line` and `column` are 1-based and describe `start`;
/// columns count characters, not bytes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: u32,
    pub column: u32,
}

impl Span {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    pub fn contains(&self, other: &Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn contains_offset(&self, offset: usize) -> bool {
        self.start <= offset && offset < self.end
    }

    pub fn range(&self) -> std::ops::Range<usize> {
        self.start..self.end
    }
}

/// Source dialect, inferred from the file extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SourceDialect {
    Plain,
    Jsx,
    Typed,
    TypedJsx,
}

impl SourceDialect {
    /// `.js`/`.mjs`/`.cjs` → plain, `.jsx` → jsx, `.ts`/`.mts`/`.cts` → typed,
    /// `.tsx` → typed-jsx. Anything else is not a source file.
    pub fn from_path(path: impl AsRef<Path>) -> Option<Self> {
        let ext = path.as_ref().extension()?.to_str()?;
        match ext {
            "js" | "mjs" | "cjs" => Some(Self::Plain),
            "jsx" => Some(Self::Jsx),
            "ts" | "mts" | "cts" => Some(Self::Typed),
            "tsx" => Some(Self::TypedJsx),
            _ => None,
        }
    }

    pub fn is_typed(self) -> bool {
        matches!(self, Self::Typed | Self::TypedJsx)
    }

    fn source_type(self) -> SourceType {
        match self {
            // React code routinely puts JSX in `.js` files, so the plain
            // dialect accepts it as well.
            Self::Plain | Self::Jsx => SourceType::mjs().with_jsx(true),
            Self::Typed => SourceType::ts(),
            Self::TypedJsx => SourceType::tsx(),
        }
    }
}

impl fmt::Display for SourceDialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Plain => "plain",
            Self::Jsx => "jsx",
            Self::Typed => "typed",
            Self::TypedJsx => "typed-jsx",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: u32,
    pub column: u32,
    pub message: String,
}

/// Index of a node within a [`SyntaxTree`]. Nodes are numbered in
/// pre-order, so the root is always `NodeId(0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

impl NodeId {
    pub const ROOT: NodeId = NodeId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Coarse node classification. Only the kinds detection relies on are
/// distinguished; everything else is [`NodeKind::Other`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Program,
    ClassDeclaration,
    ClassExpression,
    ClassBody,
    ClassMethod,
    ClassProperty,
    Decorator,
    FunctionDeclaration,
    FunctionExpression,
    ArrowFunction,
    FunctionBody,
    BlockStatement,
    CallExpression,
    NewExpression,
    MemberExpression,
    Identifier,
    ThisExpression,
    StringLiteral,
    AssignmentExpression,
    VariableDeclaration,
    VariableDeclarator,
    ExpressionStatement,
    ReturnStatement,
    ImportDeclaration,
    ImportSpecifier,
    SpreadElement,
    Other,
}

impl NodeKind {
    fn of(kind: &AstKind<'_>) -> Self {
        use oxc_ast::ast::{ClassType, FunctionType};
        match kind {
            AstKind::Program(_) => Self::Program,
            AstKind::Class(c) => match c.r#type {
                ClassType::ClassDeclaration => Self::ClassDeclaration,
                ClassType::ClassExpression => Self::ClassExpression,
            },
            AstKind::ClassBody(_) => Self::ClassBody,
            AstKind::MethodDefinition(_) => Self::ClassMethod,
            AstKind::PropertyDefinition(_) | AstKind::AccessorProperty(_) => Self::ClassProperty,
            AstKind::Decorator(_) => Self::Decorator,
            AstKind::Function(f) => match f.r#type {
                FunctionType::FunctionDeclaration | FunctionType::TSDeclareFunction => Self::FunctionDeclaration,
                _ => Self::FunctionExpression,
            },
            AstKind::ArrowFunctionExpression(_) => Self::ArrowFunction,
            AstKind::FunctionBody(_) => Self::FunctionBody,
            AstKind::BlockStatement(_) => Self::BlockStatement,
            AstKind::CallExpression(_) => Self::CallExpression,
            AstKind::NewExpression(_) => Self::NewExpression,
            AstKind::StaticMemberExpression(_)
            | AstKind::ComputedMemberExpression(_)
            | AstKind::PrivateFieldExpression(_) => Self::MemberExpression,
            AstKind::IdentifierReference(_) | AstKind::BindingIdentifier(_) | AstKind::IdentifierName(_) => {
                Self::Identifier
            }
            AstKind::ThisExpression(_) => Self::ThisExpression,
            AstKind::StringLiteral(_) => Self::StringLiteral,
            AstKind::AssignmentExpression(_) => Self::AssignmentExpression,
            AstKind::VariableDeclaration(_) => Self::VariableDeclaration,
            AstKind::VariableDeclarator(_) => Self::VariableDeclarator,
            AstKind::ExpressionStatement(_) => Self::ExpressionStatement,
            AstKind::ReturnStatement(_) => Self::ReturnStatement,
            AstKind::ImportDeclaration(_) => Self::ImportDeclaration,
            AstKind::ImportSpecifier(_) => Self::ImportSpecifier,
            AstKind::SpreadElement(_) => Self::SpreadElement,
            _ => Self::Other,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Node<'a> {
    pub kind: NodeKind,
    pub ast: AstKind<'a>,
    pub span: Span,
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
    /// One past the last descendant; descendants occupy `id+1..subtree_end`.
    subtree_end: u32,
}

/// A parsed file. The typed AST lives in the caller's allocator; the tree
/// adds a pre-order node index with parent links and located spans.
pub struct SyntaxTree<'a> {
    source: &'a str,
    dialect: SourceDialect,
    program: &'a Program<'a>,
    nodes: Vec<Node<'a>>,
    lines: LineIndex,
}

pub fn parse<'a>(
    allocator: &'a Allocator,
    text: &'a str,
    dialect: SourceDialect,
) -> Result<SyntaxTree<'a>, ParseError> {
    let lines = LineIndex::new(text);
    let ret = Parser::new(allocator, text, dialect.source_type())
        .with_options(ParseOptions { preserve_parens: true, ..ParseOptions::default() })
        .parse();
    if let Some(diag) = ret.diagnostics.first() {
        let offset = diag.labels.first().map(|l| l.offset() as usize).unwrap_or(0);
        let (line, column) = lines.line_col(text, offset);
        return Err(ParseError { line, column, message: diag.message.to_string() });
    }
    if ret.fatal_error {
        return Err(ParseError { line: 1, column: 1, message: "unrecoverable syntax error".into() });
    }
    let program: &'a Program<'a> = allocator.alloc(ret.program);
    let mut indexer = Indexer { text, lines: &lines, nodes: Vec::new(), stack: Vec::new() };
    indexer.visit_program(program);
    let nodes = indexer.nodes;
    Ok(SyntaxTree { source: text, dialect, program, nodes, lines })
}

struct Indexer<'t, 'a> {
    text: &'a str,
    lines: &'t LineIndex,
    nodes: Vec<Node<'a>>,
    stack: Vec<NodeId>,
}

impl<'a> Visit<'a> for Indexer<'_, 'a> {
    fn enter_node(&mut self, kind: AstKind<'a>) {
        let id = NodeId(self.nodes.len() as u32);
        kind.set_node_id(AstNodeId::from_usize(id.index()));
        let parent = self.stack.last().copied();
        if let Some(p) = parent {
            self.nodes[p.index()].children.push(id);
        }
        let raw = kind.span();
        let (start, end) = (raw.start as usize, raw.end as usize);
        let (line, column) = self.lines.line_col(self.text, start);
        self.nodes.push(Node {
            kind: NodeKind::of(&kind),
            ast: kind,
            span: Span { start, end, line, column },
            parent,
            children: Vec::new(),
            subtree_end: id.0 + 1,
        });
        self.stack.push(id);
    }

    fn leave_node(&mut self, _kind: AstKind<'a>) {
        if let Some(id) = self.stack.pop() {
            self.nodes[id.index()].subtree_end = self.nodes.len() as u32;
        }
    }
}

impl<'a> SyntaxTree<'a> {
    pub fn source(&self) -> &'a str {
        self.source
    }

    pub fn dialect(&self) -> SourceDialect {
        self.dialect
    }

    pub fn program(&self) -> &'a Program<'a> {
        self.program
    }

    pub fn root(&self) -> NodeId {
        NodeId::ROOT
    }

    pub fn nodes(&self) -> &[Node<'a>] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &Node<'a> {
        &self.nodes[id.index()]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// The tree node for a typed AST node reachable from this tree's program.
    pub fn id_of<T: GetNodeId>(&self, ast: &T) -> NodeId {
        NodeId(ast.node_id().index() as u32)
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.node(id).parent
    }

    /// Strict ancestors, nearest first.
    pub fn ancestors(&self, id: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        std::iter::successors(self.parent(id), move |&p| self.parent(p))
    }

    /// Strict descendants in pre-order.
    pub fn descendants(&self, id: NodeId) -> impl Iterator<Item = NodeId> {
        (id.0 + 1..self.node(id).subtree_end).map(NodeId)
    }

    pub fn is_ancestor(&self, ancestor: NodeId, id: NodeId) -> bool {
        ancestor.0 < id.0 && id.0 < self.node(ancestor).subtree_end
    }

    /// Locate a raw parser span.
    pub fn span(&self, raw: oxc_span::Span) -> Span {
        let (start, end) = (raw.start as usize, raw.end as usize);
        let (line, column) = self.lines.line_col(self.source, start);
        Span { start, end, line, column }
    }

    pub fn text(&self, raw: oxc_span::Span) -> &'a str {
        &self.source[raw.start as usize..raw.end as usize]
    }

    pub fn line_col(&self, offset: usize) -> (u32, u32) {
        self.lines.line_col(self.source, offset)
    }

    /// The unmodified source. Untouched trees always render to their input.
    pub fn render(&self) -> String {
        self.source.to_owned()
    }
}

impl fmt::Debug for SyntaxTree<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SyntaxTree")
            .field("dialect", &self.dialect)
            .field("len", &self.source.len())
            .field("nodes", &self.nodes.len())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds_of(text: &str, dialect: SourceDialect) -> Vec<NodeKind> {
        let alloc = Allocator::default();
        let tree = parse(&alloc, text, dialect).unwrap();
        tree.nodes().iter().map(|n| n.kind).collect()
    }

    #[test]
    fn minimal_class() {
        let alloc = Allocator::default();
        let tree = parse(&alloc, "class A {}", SourceDialect::Plain).unwrap();
        let classes: Vec<_> = tree.nodes().iter().filter(|n| n.kind == NodeKind::ClassDeclaration).collect();
        assert_eq!(classes.len(), 1);
        let AstKind::Class(class) = classes[0].ast else { panic!() };
        assert_eq!(class.id.as_ref().unwrap().name.as_str(), "A");
        assert!(class.body.body.is_empty());
    }

    #[test]
    fn empty_file_has_bare_root() {
        let kinds = kinds_of("", SourceDialect::Plain);
        assert_eq!(kinds, vec![NodeKind::Program]);
    }

    #[test]
    fn listener_call_node_shape() {
        let src = "class A extends React.Component { componentDidMount() { window.addEventListener('hashchange', this.onHash); } }";
        let alloc = Allocator::default();
        let tree = parse(&alloc, src, SourceDialect::Plain).unwrap();
        // Offsets located by hand in the literal above.
        let call_start = src.find("window.addEventListener").unwrap();
        let call_end = src.find("this.onHash)").unwrap() + "this.onHash)".len();
        let call =
            tree.nodes().iter().position(|n| n.kind == NodeKind::CallExpression).map(|i| NodeId(i as u32)).unwrap();
        let node = tree.node(call);
        assert_eq!((node.span.start, node.span.end), (call_start, call_end));
        let callee = tree.node(node.children[0]);
        assert_eq!(callee.kind, NodeKind::MemberExpression);
        assert_eq!(&src[callee.span.range()], "window.addEventListener");
        let object = tree.node(callee.children[0]);
        assert_eq!(object.kind, NodeKind::Identifier);
        assert_eq!(&src[object.span.range()], "window");
        let args: Vec<_> = node.children[1..].iter().map(|&c| tree.node(c).kind).collect();
        assert_eq!(args, vec![NodeKind::StringLiteral, NodeKind::MemberExpression]);
    }

    #[test]
    fn parse_error_is_located() {
        let alloc = Allocator::default();
        let err = parse(&alloc, "class A {\n  foo( {\n}", SourceDialect::Plain).unwrap_err();
        assert!(err.line >= 2, "{err}");
    }

    #[test]
    fn typed_dialect_accepts_decorators_and_visibility() {
        let src = "@Component({})\nexport class A { private readonly x = 1; constructor(private s: S) {} }";
        let alloc = Allocator::default();
        assert!(parse(&alloc, src, SourceDialect::Typed).is_ok());
        assert!(kinds_of(src, SourceDialect::Typed).contains(&NodeKind::Decorator));
    }

    #[test]
    fn dialect_from_extension() {
        assert_eq!(SourceDialect::from_path("a/b.js"), Some(SourceDialect::Plain));
        assert_eq!(SourceDialect::from_path("b.jsx"), Some(SourceDialect::Jsx));
        assert_eq!(SourceDialect::from_path("b.ts"), Some(SourceDialect::Typed));
        assert_eq!(SourceDialect::from_path("b.tsx"), Some(SourceDialect::TypedJsx));
        assert_eq!(SourceDialect::from_path("b.css"), None);
    }

    #[test]
    fn spans_nest_and_descendants_are_contiguous() {
        let src = "import { a } from 'x';\nfunction F() { useEffect(() => { const t = setTimeout(a, 1); return () => clearTimeout(t); }, []); }";
        let alloc = Allocator::default();
        let tree = parse(&alloc, src, SourceDialect::Jsx).unwrap();
        for (i, node) in tree.nodes().iter().enumerate() {
            let id = NodeId(i as u32);
            if let Some(p) = node.parent {
                assert!(tree.node(p).span.contains(&node.span), "{:?}", node.kind);
                assert!(tree.is_ancestor(p, id));
            }
            for d in tree.descendants(id) {
                assert!(tree.ancestors(d).any(|a| a == id));
            }
        }
    }
}
