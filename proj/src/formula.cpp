#include "ltl/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <unordered_map>

#include "ltl/error.hpp"

namespace ltl {

namespace {

constexpr Op kOrderedOps[] = {Op::Not,   Op::Or,      Op::And,      Op::Implies, Op::Next,
                              Op::Until, Op::Finally, Op::Globally, Op::True,    Op::False};

bool is_keyword(std::string_view word) {
  return word == "X" || word == "U" || word == "F" || word == "G" || word == "true" || word == "false";
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

std::string_view op_symbol(Op op) {
  switch (op) {
    case Op::Prop: return "prop";
    case Op::True: return "true";
    case Op::False: return "false";
    case Op::Not: return "!";
    case Op::Or: return "|";
    case Op::And: return "&";
    case Op::Implies: return "->";
    case Op::Next: return "X";
    case Op::Until: return "U";
    case Op::Finally: return "F";
    case Op::Globally: return "G";
  }
  return "?";
}

std::optional<Op> op_from_symbol(std::string_view symbol) {
  for (Op op : kOrderedOps)
    if (op_symbol(op) == symbol) return op;
  return std::nullopt;
}

bool is_valid_proposition_name(std::string_view name) {
  if (name.empty() || !is_ident_start(name.front()) || is_keyword(name)) return false;
  return std::all_of(name.begin(), name.end(), is_ident_char);
}

PropositionAlphabet::PropositionAlphabet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw Error("proposition alphabet must be nonempty");
  if (names_.size() > kMaxSize)
    throw Error("proposition alphabet exceeds " + std::to_string(kMaxSize) + " propositions");
  std::set<std::string_view> seen;
  for (const auto& n : names_) {
    if (!is_valid_proposition_name(n)) throw Error("invalid proposition name '" + n + "'");
    if (!seen.insert(n).second) throw Error("duplicate proposition '" + n + "'");
  }
}

std::optional<std::size_t> PropositionAlphabet::index_of(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

OperatorSet::OperatorSet(std::initializer_list<Op> ops) {
  for (Op op : ops) insert(op);
}

void OperatorSet::insert(Op op) {
  if (op == Op::Prop) throw Error("propositions are not operators");
  bits_ |= 1u << static_cast<unsigned>(op);
}

OperatorSet OperatorSet::standard() {
  return {Op::Not, Op::Or, Op::And, Op::Implies, Op::Next, Op::Until, Op::Finally, Op::Globally};
}

OperatorSet OperatorSet::parse(std::string_view list) {
  OperatorSet set;
  std::size_t start = 0;
  while (start <= list.size()) {
    auto end = list.find(',', start);
    if (end == std::string_view::npos) end = list.size();
    auto item = list.substr(start, end - start);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
    if (!item.empty()) {
      auto op = op_from_symbol(item);
      if (!op) throw Error("unknown operator '" + std::string(item) + "'");
      set.insert(*op);
    }
    start = end + 1;
  }
  if (set.empty()) throw Error("operator set must be nonempty");
  return set;
}

std::vector<Op> OperatorSet::members() const {
  std::vector<Op> out;
  for (Op op : kOrderedOps)
    if (contains(op)) out.push_back(op);
  return out;
}

std::string OperatorSet::to_string() const {
  std::string out;
  for (Op op : members()) {
    if (!out.empty()) out += ',';
    out += op_symbol(op);
  }
  return out;
}

SyntaxDag::SyntaxDag(std::vector<DagNode> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw InvariantViolation("syntax DAG must have at least one node");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    auto& n = nodes_[i];
    const int k = arity(n.op);
    const int id = static_cast<int>(i);
    if (n.op == Op::Prop) {
      if (!is_valid_proposition_name(n.prop))
        throw InvariantViolation("node " + std::to_string(i + 1) + ": invalid proposition '" + n.prop + "'");
    } else {
      n.prop.clear();
    }
    if (k == 0) {
      n.left = n.right = -1;
    } else if (k == 1) {
      n.right = -1;
    }
    if (k >= 1 && (n.left < 0 || n.left >= id))
      throw InvariantViolation("node " + std::to_string(i + 1) + ": left child must precede its parent");
    if (k == 2 && (n.right < 0 || n.right >= id))
      throw InvariantViolation("node " + std::to_string(i + 1) + ": right child must precede its parent");
  }
}

SyntaxDag SyntaxDag::atom(std::string prop) { return SyntaxDag({DagNode{Op::Prop, std::move(prop), -1, -1}}); }

std::vector<std::string> SyntaxDag::propositions() const {
  std::vector<std::string> out;
  for (const auto& n : nodes_)
    if (n.op == Op::Prop && std::find(out.begin(), out.end(), n.prop) == out.end()) out.push_back(n.prop);
  return out;
}

int DagBuilder::add(const DagNode& node) {
  DagNode n = node;
  const int k = arity(n.op);
  if (n.op != Op::Prop) n.prop.clear();
  if (k < 2) n.right = -1;
  if (k < 1) n.left = -1;
  const int count = static_cast<int>(nodes_.size());
  if ((k >= 1 && (n.left < 0 || n.left >= count)) || (k == 2 && (n.right < 0 || n.right >= count)))
    throw InvariantViolation("DagBuilder: child index out of range");
  auto key = std::make_tuple(n.op, n.prop, n.left, n.right);
  auto [it, inserted] = index_.emplace(key, count);
  if (inserted) nodes_.push_back(std::move(n));
  return it->second;
}

int DagBuilder::prop(std::string_view name) { return add(DagNode{Op::Prop, std::string(name), -1, -1}); }
int DagBuilder::constant(bool value) { return add(DagNode{value ? Op::True : Op::False, {}, -1, -1}); }
int DagBuilder::unary(Op op, int child) { return add(DagNode{op, {}, child, -1}); }
int DagBuilder::binary(Op op, int left, int right) { return add(DagNode{op, {}, left, right}); }

int DagBuilder::import(const SyntaxDag& dag, int node) {
  std::unordered_map<int, int> memo;
  std::function<int(int)> go = [&](int i) -> int {
    if (auto it = memo.find(i); it != memo.end()) return it->second;
    const auto& n = dag.node(i);
    DagNode copy{n.op, n.prop, -1, -1};
    if (arity(n.op) >= 1) copy.left = go(n.left);
    if (arity(n.op) == 2) copy.right = go(n.right);
    return memo[i] = add(copy);
  };
  return go(node);
}

SyntaxDag DagBuilder::build(int root) const {
  if (root < 0 || root >= static_cast<int>(nodes_.size())) throw InvariantViolation("DagBuilder: bad root");
  std::vector<char> reachable(nodes_.size(), 0);
  reachable[static_cast<std::size_t>(root)] = 1;
  for (int i = root; i >= 0; --i) {
    if (!reachable[static_cast<std::size_t>(i)]) continue;
    const auto& n = nodes_[static_cast<std::size_t>(i)];
    if (n.left >= 0) reachable[static_cast<std::size_t>(n.left)] = 1;
    if (n.right >= 0) reachable[static_cast<std::size_t>(n.right)] = 1;
  }
  std::vector<int> remap(nodes_.size(), -1);
  std::vector<DagNode> out;
  for (int i = 0; i <= root; ++i) {
    if (!reachable[static_cast<std::size_t>(i)]) continue;
    DagNode n = nodes_[static_cast<std::size_t>(i)];
    if (n.left >= 0) n.left = remap[static_cast<std::size_t>(n.left)];
    if (n.right >= 0) n.right = remap[static_cast<std::size_t>(n.right)];
    remap[static_cast<std::size_t>(i)] = static_cast<int>(out.size());
    out.push_back(std::move(n));
  }
  return SyntaxDag(std::move(out));
}

std::string render(const SyntaxDag& formula, int node) {
  std::unordered_map<int, std::string> memo;
  std::function<const std::string&(int)> go = [&](int i) -> const std::string& {
    if (auto it = memo.find(i); it != memo.end()) return it->second;
    const auto& n = formula.node(i);
    std::string text;
    switch (arity(n.op)) {
      case 0:
        text = n.op == Op::Prop ? n.prop : std::string(op_symbol(n.op));
        break;
      case 1:
        text = "(" + std::string(op_symbol(n.op)) + " " + go(n.left) + ")";
        break;
      default:
        text = "(" + go(n.left) + " " + std::string(op_symbol(n.op)) + " " + go(n.right) + ")";
    }
    return memo[i] = std::move(text);
  };
  return go(node);
}

std::string render(const SyntaxDag& formula) { return render(formula, formula.root()); }

namespace {

struct Token {
  enum Kind { Ident, Sym, End } kind;
  std::string text;
  std::size_t pos;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) { tokenize(); }

  SyntaxDag run() {
    if (tokens_.front().kind == Token::End) throw ParseError("empty formula", 0);
    int root = implication();
    if (peek().kind != Token::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return builder_.build(root);
  }

 private:
  void tokenize() {
    std::size_t i = 0;
    while (i < text_.size()) {
      char c = text_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (is_ident_start(c)) {
        std::size_t j = i;
        while (j < text_.size() && is_ident_char(text_[j])) ++j;
        std::string word(text_.substr(i, j - i));
        bool sym = word == "X" || word == "U" || word == "F" || word == "G";
        tokens_.push_back({sym ? Token::Sym : Token::Ident, word, i});
        i = j;
      } else if (c == '-' && i + 1 < text_.size() && text_[i + 1] == '>') {
        tokens_.push_back({Token::Sym, "->", i});
        i += 2;
      } else if (c == '!' || c == '&' || c == '|' || c == '(' || c == ')') {
        tokens_.push_back({Token::Sym, std::string(1, c), i});
        ++i;
      } else {
        throw ParseError(std::string("unknown operator '") + c + "'", i);
      }
    }
    tokens_.push_back({Token::End, "end of input", text_.size()});
  }

  const Token& peek() const { return tokens_[cur_]; }
  bool accept(std::string_view sym) {
    if (peek().kind == Token::Sym && peek().text == sym) {
      ++cur_;
      return true;
    }
    return false;
  }

  int implication() {
    int lhs = disjunction();
    if (accept("->")) return builder_.binary(Op::Implies, lhs, implication());
    return lhs;
  }
  int disjunction() {
    int lhs = conjunction();
    while (accept("|")) lhs = builder_.binary(Op::Or, lhs, conjunction());
    return lhs;
  }
  int conjunction() {
    int lhs = until();
    while (accept("&")) lhs = builder_.binary(Op::And, lhs, until());
    return lhs;
  }
  int until() {
    int lhs = unary();
    if (accept("U")) return builder_.binary(Op::Until, lhs, until());
    return lhs;
  }
  int unary() {
    for (Op op : {Op::Not, Op::Next, Op::Finally, Op::Globally})
      if (accept(op_symbol(op))) return builder_.unary(op, unary());
    return atom();
  }
  int atom() {
    const Token& t = peek();
    if (t.kind == Token::Ident) {
      ++cur_;
      if (t.text == "true") return builder_.constant(true);
      if (t.text == "false") return builder_.constant(false);
      return builder_.prop(t.text);
    }
    if (accept("(")) {
      int inner = implication();
      if (!accept(")")) throw ParseError("expected ')' but found '" + peek().text + "'", peek().pos);
      return inner;
    }
    if (t.kind == Token::End) throw ParseError("unexpected end of input", t.pos);
    throw ParseError("unexpected '" + t.text + "'", t.pos);
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  std::size_t cur_ = 0;
  DagBuilder builder_;
};

}  // namespace

SyntaxDag parse(std::string_view text) { return Parser(text).run(); }

SyntaxDag parse(std::string_view text, const PropositionAlphabet& alphabet) {
  SyntaxDag dag = parse(text);
  for (const auto& p : dag.propositions())
    if (!alphabet.index_of(p)) throw AlphabetMismatch("unknown proposition '" + p + "'");
  return dag;
}

SyntaxDag canonicalize(const SyntaxDag& formula) {
  DagBuilder b;
  return b.build(b.import(formula));
}

}  // namespace ltl
