#include "ltl/evaluate.hpp"

#include "ltl/error.hpp"

namespace ltl {

BoundFormula::BoundFormula(const SyntaxDag& formula, const PropositionAlphabet& alphabet)
    : formula_(&formula), prop_bit_(formula.size(), 0) {
  for (std::size_t i = 0; i < formula.size(); ++i) {
    const auto& n = formula.node(static_cast<int>(i));
    if (n.op != Op::Prop) continue;
    auto idx = alphabet.index_of(n.prop);
    if (!idx) throw AlphabetMismatch("proposition '" + n.prop + "' is not in the alphabet");
    prop_bit_[i] = *idx;
  }
}

ValuationTable BoundFormula::table(const LassoWord& word) const {
  const std::size_t len = word.length();
  const std::size_t loop = word.prefix_length();
  const std::size_t per = word.period_length();
  ValuationTable v(formula_->size(), len);

  // Positions visited from t: t, t+1, ... until the first repetition.
  // From a prefix position that is t..len-1; from a periodic position the
  // cyclic order t, ..., len-1, loop, ..., t-1.
  auto scan = [&](std::size_t t, auto&& visit) {
    const std::size_t steps = t < loop ? len - t : per;
    for (std::size_t k = 0; k < steps; ++k) {
      std::size_t pos = t + k;
      if (pos >= len) pos = loop + (pos - loop) % per;
      if (!visit(pos)) return;
    }
  };

  for (std::size_t i = 0; i < formula_->size(); ++i) {
    const auto& n = formula_->node(static_cast<int>(i));
    const int id = static_cast<int>(i);
    for (std::size_t t = 0; t < len; ++t) {
      bool value = false;
      switch (n.op) {
        case Op::Prop:
          value = (word.at(t) >> prop_bit_[i]) & 1u;
          break;
        case Op::True:
          value = true;
          break;
        case Op::False:
          value = false;
          break;
        case Op::Not:
          value = !v.at(n.left, t);
          break;
        case Op::Or:
          value = v.at(n.left, t) || v.at(n.right, t);
          break;
        case Op::And:
          value = v.at(n.left, t) && v.at(n.right, t);
          break;
        case Op::Implies:
          value = !v.at(n.left, t) || v.at(n.right, t);
          break;
        case Op::Next:
          value = v.at(n.left, t + 1 < len ? t + 1 : loop);
          break;
        case Op::Until:
          scan(t, [&](std::size_t pos) {
            if (v.at(n.right, pos)) {
              value = true;
              return false;
            }
            return v.at(n.left, pos);
          });
          break;
        case Op::Finally:
          scan(t, [&](std::size_t pos) {
            value = v.at(n.left, pos);
            return !value;
          });
          break;
        case Op::Globally:
          value = true;
          scan(t, [&](std::size_t pos) {
            value = v.at(n.left, pos);
            return value;
          });
          break;
      }
      v.set(id, t, value);
    }
  }
  return v;
}

bool BoundFormula::evaluate(const LassoWord& word, std::size_t at) const {
  at = normalize_position(at, word.prefix_length(), word.period_length());
  return table(word).at(formula_->root(), at);
}

bool evaluate(const SyntaxDag& formula, const LassoWord& word, const PropositionAlphabet& alphabet,
              std::size_t at) {
  return BoundFormula(formula, alphabet).evaluate(word, at);
}

bool is_consistent(const SyntaxDag& formula, const Sample& sample) {
  BoundFormula bound(formula, sample.alphabet);
  for (const auto& w : sample.positives)
    if (!bound.evaluate(w)) return false;
  for (const auto& w : sample.negatives)
    if (bound.evaluate(w)) return false;
  return true;
}

}  // namespace ltl
