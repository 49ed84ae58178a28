#include "ltl/oracle.hpp"

#include <algorithm>
#include <set>

#include "ltl/error.hpp"
#include "ltl/evaluate.hpp"

namespace ltl {

namespace {

struct Entry {
  Op op;
  std::string prop;
  int left = -1;
  int right = -1;
  std::vector<int> subformulas;  // sorted entry ids, including itself
};

std::size_t union_size(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t i = 0, j = 0, count = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j])
      ++i;
    else if (b[j] < a[i])
      ++j;
    else
      ++i, ++j;
    ++count;
  }
  return count + (a.size() - i) + (b.size() - j);
}

class Enumerator {
 public:
  explicit Enumerator(const EnumerationBudget& budget) : budget_(budget) {}

  void run(const std::function<bool(const SyntaxDag&)>& visit) {
    if (budget_.max_size < 1) throw Error("enumeration budget must be at least 1");
    const auto ops = budget_.ops.members();
    for (int size = 1; size <= budget_.max_size; ++size) {
      const std::size_t known = entries_.size();
      if (size == 1) {
        for (const auto& p : budget_.alphabet.names()) add({Op::Prop, p, -1, -1, {}}, {});
        for (Op op : ops)
          if (arity(op) == 0) add({op, {}, -1, -1, {}}, {});
      } else {
        for (Op op : ops) {
          if (arity(op) == 1) {
            for (std::size_t f = 0; f < known; ++f)
              if (static_cast<int>(entries_[f].subformulas.size()) == size - 1)
                add({op, {}, static_cast<int>(f), -1, {}}, entries_[f].subformulas);
          } else if (arity(op) == 2) {
            for (std::size_t f = 0; f < known; ++f) {
              for (std::size_t g = 0; g < known; ++g) {
                const auto& sf = entries_[f].subformulas;
                const auto& sg = entries_[g].subformulas;
                if (union_size(sf, sg) != static_cast<std::size_t>(size - 1)) continue;
                std::vector<int> merged;
                std::set_union(sf.begin(), sf.end(), sg.begin(), sg.end(), std::back_inserter(merged));
                add({op, {}, static_cast<int>(f), static_cast<int>(g), {}}, merged);
              }
            }
          }
        }
      }
      for (std::size_t e = known; e < entries_.size(); ++e)
        if (!visit(to_dag(static_cast<int>(e)))) return;
    }
  }

 private:
  void add(Entry e, std::vector<int> subs) {
    const int id = static_cast<int>(entries_.size());
    subs.push_back(id);
    std::sort(subs.begin(), subs.end());
    e.subformulas = std::move(subs);
    const std::string text = render_entry(e);
    if (!seen_.insert(text).second) return;
    texts_.push_back(text);
    entries_.push_back(std::move(e));
  }

  std::string render_entry(const Entry& e) const {
    switch (arity(e.op)) {
      case 0:
        return e.op == Op::Prop ? e.prop : std::string(op_symbol(e.op));
      case 1:
        return "(" + std::string(op_symbol(e.op)) + " " + texts_[static_cast<std::size_t>(e.left)] + ")";
      default:
        return "(" + texts_[static_cast<std::size_t>(e.left)] + " " + std::string(op_symbol(e.op)) + " " +
               texts_[static_cast<std::size_t>(e.right)] + ")";
    }
  }

  SyntaxDag to_dag(int id) const {
    DagBuilder b;
    auto go = [&](auto&& self, int e) -> int {
      const Entry& en = entries_[static_cast<std::size_t>(e)];
      switch (arity(en.op)) {
        case 0:
          return en.op == Op::Prop ? b.prop(en.prop) : b.constant(en.op == Op::True);
        case 1:
          return b.unary(en.op, self(self, en.left));
        default: {
          const int l = self(self, en.left);
          return b.binary(en.op, l, self(self, en.right));
        }
      }
    };
    return b.build(go(go, id));
  }

  const EnumerationBudget& budget_;
  std::vector<Entry> entries_;
  std::vector<std::string> texts_;
  std::set<std::string> seen_;
};

}  // namespace

void enumerate_formulas(const EnumerationBudget& budget, const std::function<bool(const SyntaxDag&)>& visit) {
  Enumerator(budget).run(visit);
}

std::vector<SyntaxDag> enumerate_formulas(const EnumerationBudget& budget) {
  std::vector<SyntaxDag> out;
  enumerate_formulas(budget, [&](const SyntaxDag& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

std::optional<OracleResult> oracle_minimal(const Sample& sample, const EnumerationBudget& budget) {
  std::optional<OracleResult> result;
  enumerate_formulas(budget, [&](const SyntaxDag& f) {
    const int size = static_cast<int>(f.size());
    if (result && size > result->size) return false;
    if (is_consistent(f, sample)) {
      if (!result) result = OracleResult{size, {}};
      result->formulas.push_back(f);
    }
    return true;
  });
  return result;
}

}  // namespace ltl
