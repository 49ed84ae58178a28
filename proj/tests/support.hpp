#pragma once

#include <random>
#include <string>
#include <vector>

#include "ltl/evaluate.hpp"
#include "ltl/formula.hpp"
#include "ltl/lasso.hpp"

namespace ltl::testing {

/// Lasso from bit strings, one per symbol: word({"10"}, {"01","11"}).
/// Character i of a symbol is proposition i.
inline LassoWord word(const std::vector<std::string>& prefix, const std::vector<std::string>& period) {
  auto conv = [](const std::vector<std::string>& part) {
    std::vector<Symbol> out;
    for (const auto& bits : part) {
      Symbol s = 0;
      for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i] == '1') s |= Symbol{1} << i;
      out.push_back(s);
    }
    return out;
  };
  return LassoWord(conv(prefix), conv(period));
}

inline Sample sample(std::vector<std::string> props, std::vector<LassoWord> pos, std::vector<LassoWord> neg) {
  return Sample{PropositionAlphabet(std::move(props)), std::move(pos), std::move(neg)};
}

/// P = {({})({p})^w}, N = {({})^w}: minimal size 2, solved by X p and F p.
inline Sample xp_fp_sample() { return sample({"p"}, {word({"0"}, {"1"})}, {word({}, {"0"})}); }

inline LassoWord random_word(std::mt19937_64& rng, std::size_t props, std::size_t max_length) {
  const std::size_t len = std::uniform_int_distribution<std::size_t>(1, max_length)(rng);
  const std::size_t u = std::uniform_int_distribution<std::size_t>(0, len - 1)(rng);
  std::uniform_int_distribution<Symbol> sym(0, (Symbol{1} << props) - 1);
  std::vector<Symbol> prefix, period;
  for (std::size_t i = 0; i < u; ++i) prefix.push_back(sym(rng));
  for (std::size_t i = u; i < len; ++i) period.push_back(sym(rng));
  return LassoWord(std::move(prefix), std::move(period));
}

namespace detail {
inline int random_node(std::mt19937_64& rng, DagBuilder& b, const PropositionAlphabet& alphabet, int depth) {
  std::uniform_int_distribution<int> pick(0, 9);
  const int choice = depth == 0 ? 0 : pick(rng);
  if (choice < 2) {
    std::uniform_int_distribution<std::size_t> p(0, alphabet.size() - 1);
    return b.prop(alphabet.name(p(rng)));
  }
  static constexpr Op kUnary[] = {Op::Not, Op::Next, Op::Finally, Op::Globally};
  static constexpr Op kBinary[] = {Op::Or, Op::And, Op::Implies, Op::Until};
  if (choice < 6) return b.unary(kUnary[choice - 2], random_node(rng, b, alphabet, depth - 1));
  const int l = random_node(rng, b, alphabet, depth - 1);
  const int r = random_node(rng, b, alphabet, depth - 1);
  return b.binary(kBinary[choice - 6], l, r);
}
}  // namespace detail

/// Random formula over `alphabet` with at most `max_size` DAG nodes.
inline SyntaxDag random_formula(std::mt19937_64& rng, const PropositionAlphabet& alphabet, std::size_t max_size) {
  for (;;) {
    DagBuilder b;
    const int root = detail::random_node(rng, b, alphabet, 4);
    SyntaxDag f = b.build(root);
    if (f.size() <= max_size) return f;
  }
}

/// Direct recursive semantics on a materialized prefix of the infinite word.
/// Temporal operators look ahead |u| + |v| positions, which covers one full
/// period past any position, so the array holds enough letters for formulas
/// of the given size.
class UnrolledEvaluator {
 public:
  UnrolledEvaluator(const SyntaxDag& f, const LassoWord& w, const PropositionAlphabet& a, std::size_t start)
      : f_(f), a_(a), horizon_(w.length()) {
    const std::size_t len = start + (f.size() + 2) * horizon_ + 1;
    letters_.reserve(len);
    for (const Symbol s : w.prefix()) letters_.push_back(s);
    while (letters_.size() < len)
      for (const Symbol s : w.period()) letters_.push_back(s);
  }

  bool holds(std::size_t t) const { return eval(f_.root(), t); }

 private:
  bool eval(int n, std::size_t t) const {
    const DagNode& node = f_.node(n);
    switch (node.op) {
      case Op::Prop:
        return (letters_.at(t) >> *a_.index_of(node.prop)) & 1u;
      case Op::True:
        return true;
      case Op::False:
        return false;
      case Op::Not:
        return !eval(node.left, t);
      case Op::Or:
        return eval(node.left, t) || eval(node.right, t);
      case Op::And:
        return eval(node.left, t) && eval(node.right, t);
      case Op::Implies:
        return !eval(node.left, t) || eval(node.right, t);
      case Op::Next:
        return eval(node.left, t + 1);
      case Op::Finally:
        for (std::size_t j = t; j < t + horizon_; ++j)
          if (eval(node.left, j)) return true;
        return false;
      case Op::Globally:
        for (std::size_t j = t; j < t + horizon_; ++j)
          if (!eval(node.left, j)) return false;
        return true;
      case Op::Until:
        for (std::size_t j = t; j < t + horizon_; ++j) {
          if (eval(node.right, j)) return true;
          if (!eval(node.left, j)) return false;
        }
        return false;
    }
    return false;
  }

  const SyntaxDag& f_;
  const PropositionAlphabet& a_;
  std::size_t horizon_;
  std::vector<Symbol> letters_;
};

inline bool unrolled_holds(const SyntaxDag& f, const LassoWord& w, const PropositionAlphabet& a, std::size_t at) {
  return UnrolledEvaluator(f, w, a, at).holds(at);
}

/// Random non-contradictory sample (retries on contradictions).
inline Sample random_sample(std::mt19937_64& rng, const PropositionAlphabet& alphabet, std::size_t max_words,
                            std::size_t max_length) {
  for (;;) {
    Sample s{alphabet, {}, {}};
    std::uniform_int_distribution<std::size_t> count(1, max_words - 1);
    const std::size_t total = count(rng) + 1;
    const std::size_t positives = std::uniform_int_distribution<std::size_t>(1, total - 1)(rng);
    for (std::size_t i = 0; i < total; ++i)
      (i < positives ? s.positives : s.negatives).push_back(random_word(rng, alphabet.size(), max_length));
    if (!s.find_contradiction()) return s;
  }
}

}  // namespace ltl::testing
