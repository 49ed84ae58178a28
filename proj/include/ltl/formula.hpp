#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace ltl {

/// Node labels. `Prop` marks an atomic proposition; `True`/`False` are the
/// optional 0-ary constants.
enum class Op : std::uint8_t { Prop, True, False, Not, Or, And, Implies, Next, Until, Finally, Globally };

constexpr int arity(Op op) {
  switch (op) {
    case Op::Prop:
    case Op::True:
    case Op::False:
      return 0;
    case Op::Not:
    case Op::Next:
    case Op::Finally:
    case Op::Globally:
      return 1;
    default:
      return 2;
  }
}

/// Surface spelling: `! | & -> X U F G true false`.
std::string_view op_symbol(Op op);
std::optional<Op> op_from_symbol(std::string_view symbol);

/// Ordered, duplicate-free list of proposition names. Position i is bit i of a Symbol.
class PropositionAlphabet {
 public:
  static constexpr std::size_t kMaxSize = 64;

  PropositionAlphabet() = default;
  explicit PropositionAlphabet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const PropositionAlphabet&, const PropositionAlphabet&) = default;

 private:
  std::vector<std::string> names_;
};

/// True if `name` can be used as a proposition in formula text.
bool is_valid_proposition_name(std::string_view name);

/// Subset of the non-proposition labels.
class OperatorSet {
 public:
  OperatorSet() = default;
  OperatorSet(std::initializer_list<Op> ops);

  /// The eight operators `! | & -> X U F G` (constants excluded).
  static OperatorSet standard();
  /// Parses a comma-separated list such as `!,|,&,->,X,U,F,G`.
  static OperatorSet parse(std::string_view list);

  bool contains(Op op) const { return (bits_ >> static_cast<unsigned>(op)) & 1u; }
  void insert(Op op);
  void erase(Op op) { bits_ &= ~(1u << static_cast<unsigned>(op)); }
  bool empty() const { return bits_ == 0; }
  bool has_constants() const { return contains(Op::True) || contains(Op::False); }
  /// Members in the fixed order Not, Or, And, Implies, Next, Until, Finally, Globally, True, False.
  std::vector<Op> members() const;
  std::string to_string() const;

  friend bool operator==(const OperatorSet&, const OperatorSet&) = default;

 private:
  std::uint32_t bits_ = 0;
};

/// One node of a syntax DAG. Children are 0-based node indices; -1 when absent.
/// The identifier of node index k is k + 1.
struct DagNode {
  Op op = Op::Prop;
  std::string prop;
  int left = -1;
  int right = -1;

  friend bool operator==(const DagNode&, const DagNode&) = default;
};

/// An LTL formula as a syntax DAG. Nodes are stored in identifier order:
/// every child index is smaller than its parent's and the last node is the root.
class SyntaxDag {
 public:
  /// Validates the identifier scheme; throws InvariantViolation.
  explicit SyntaxDag(std::vector<DagNode> nodes);

  /// Single-proposition formula.
  static SyntaxDag atom(std::string prop);

  std::size_t size() const { return nodes_.size(); }
  int root() const { return static_cast<int>(nodes_.size()) - 1; }
  const DagNode& node(int index) const { return nodes_.at(static_cast<std::size_t>(index)); }
  std::span<const DagNode> nodes() const { return nodes_; }
  /// Distinct proposition names in first-occurrence order.
  std::vector<std::string> propositions() const;

  friend bool operator==(const SyntaxDag&, const SyntaxDag&) = default;

 private:
  std::vector<DagNode> nodes_;
};

/// Number of nodes of the DAG (its subformula count when sharing is maximal).
inline std::size_t formula_size(const SyntaxDag& formula) { return formula.size(); }

/// Hash-consing DAG constructor: structurally identical nodes are created once.
class DagBuilder {
 public:
  int prop(std::string_view name);
  int constant(bool value);
  int unary(Op op, int child);
  int binary(Op op, int left, int right);
  int add(const DagNode& node);
  /// Copies the subformula rooted at `node` of `dag` and returns its index here.
  int import(const SyntaxDag& dag, int node);
  int import(const SyntaxDag& dag) { return import(dag, dag.root()); }

  /// DAG of the nodes reachable from `root`, in creation order.
  SyntaxDag build(int root) const;

 private:
  std::vector<DagNode> nodes_;
  std::map<std::tuple<Op, std::string, int, int>, int> index_;
};

/// Fully parenthesized infix text, e.g. `((p U (G q)) | (F (G q)))`.
std::string render(const SyntaxDag& formula);
std::string render(const SyntaxDag& formula, int node);

/// Parses formula text with maximal sharing. Precedence: unary > U > & > | > ->;
/// U and -> are right-associative. Throws ParseError.
SyntaxDag parse(std::string_view text);
/// As above, additionally rejecting propositions outside `alphabet` (AlphabetMismatch).
SyntaxDag parse(std::string_view text, const PropositionAlphabet& alphabet);

/// Canonical form: parse(render(f)). Merges duplicate subformulas and drops unreachable nodes.
SyntaxDag canonicalize(const SyntaxDag& formula);

}  // namespace ltl
