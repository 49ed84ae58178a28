#include "ltl/encoding.hpp"

#include <map>
#include <tuple>

#include "ltl/error.hpp"

namespace ltl {

VariablePool::VariablePool(int size_bound, const PropositionAlphabet& alphabet, const OperatorSet& ops,
                           std::vector<std::size_t> word_lengths)
    : n_(size_bound), alphabet_(alphabet), ops_(ops), word_lengths_(std::move(word_lengths)) {
  if (n_ < 1) throw Error("size bound must be at least 1");
  if (alphabet_.empty()) throw Error("encoding needs a nonempty alphabet");
  for (std::size_t p = 0; p < alphabet_.size(); ++p) labels_.push_back({Op::Prop, p});
  for (Op op : ops_.members()) labels_.push_back({op, 0});

  const int label_count = static_cast<int>(labels_.size());
  const int child_vars = n_ * (n_ - 1) / 2;
  l_base_ = x_base_ + n_ * label_count;
  r_base_ = l_base_ + child_vars;
  y_base_ = r_base_ + child_vars;
  int next = y_base_;
  for (std::size_t len : word_lengths_) {
    if (len == 0) throw Error("encoded words must be nonempty");
    word_base_.push_back(next);
    next += n_ * static_cast<int>(len);
  }
  primary_ = next - 1;
  next_ = next;
}

std::optional<std::size_t> VariablePool::label_index(const Label& label) const {
  for (std::size_t k = 0; k < labels_.size(); ++k)
    if (labels_[k] == label) return k;
  return std::nullopt;
}

int VariablePool::x(int node, std::size_t label) const {
  return x_base_ + (node - 1) * static_cast<int>(labels_.size()) + static_cast<int>(label);
}
int VariablePool::l(int node, int child) const { return l_base_ + (node - 1) * (node - 2) / 2 + (child - 1); }
int VariablePool::r(int node, int child) const { return r_base_ + (node - 1) * (node - 2) / 2 + (child - 1); }
int VariablePool::y(std::size_t word, int node, std::size_t t) const {
  return word_base_[word] + (node - 1) * static_cast<int>(word_lengths_[word]) + static_cast<int>(t);
}

std::string VariablePool::name(int var) const {
  if (var < 1 || var > primary_) return {};
  const int label_count = static_cast<int>(labels_.size());
  if (var < l_base_) {
    const int off = var - x_base_;
    const auto& lab = labels_[static_cast<std::size_t>(off % label_count)];
    const std::string text = lab.op == Op::Prop ? alphabet_.name(lab.prop) : std::string(op_symbol(lab.op));
    return "x[" + std::to_string(off / label_count + 1) + "," + text + "]";
  }
  if (var < y_base_) {
    const bool left = var < r_base_;
    int off = var - (left ? l_base_ : r_base_);
    int i = 2;
    while (off >= i - 1) {
      off -= i - 1;
      ++i;
    }
    return std::string(left ? "l[" : "r[") + std::to_string(i) + "," + std::to_string(off + 1) + "]";
  }
  std::size_t w = word_base_.size() - 1;
  while (var < word_base_[w]) --w;
  const int off = var - word_base_[w];
  const int len = static_cast<int>(word_lengths_[w]);
  return "y[" + std::to_string(w) + "," + std::to_string(off / len + 1) + "," + std::to_string(off % len) + "]";
}

long long VariablePool::closed_form_count(int n, std::size_t label_count, const std::vector<std::size_t>& word_lengths) {
  long long total_length = 0;
  for (auto len : word_lengths) total_length += static_cast<long long>(len);
  long long child_sum = 0;
  for (int i = 2; i <= n; ++i) child_sum += i - 1;
  return n * static_cast<long long>(label_count) + 2 * child_sum + n * total_length;
}

std::size_t PropFormula::clause_count() const {
  std::size_t total = structure.size() + roots.size() + constraints.size();
  for (const auto& w : words) total += w.size();
  return total;
}

CnfInstance PropFormula::to_cnf(const VariablePool& pool) const {
  CnfInstance cnf;
  cnf.num_vars = pool.num_vars();
  cnf.clauses.reserve(clause_count());
  auto append = [&](const std::vector<Clause>& cs) { cnf.clauses.insert(cnf.clauses.end(), cs.begin(), cs.end()); };
  append(structure);
  for (const auto& w : words) append(w);
  append(roots);
  append(constraints);
  cnf.names = [&pool](int v) { return pool.name(v); };
  return cnf;
}

namespace {

void exactly_one(std::vector<Clause>& out, const std::vector<int>& vars) {
  out.push_back(Clause(vars.begin(), vars.end()));
  for (std::size_t a = 0; a < vars.size(); ++a)
    for (std::size_t b = a + 1; b < vars.size(); ++b) out.push_back({-vars[a], -vars[b]});
}

}  // namespace

std::vector<Clause> encode_structure(const VariablePool& pool) {
  std::vector<Clause> out;
  const int n = pool.size_bound();
  const auto& labels = pool.labels();
  for (int i = 1; i <= n; ++i) {
    std::vector<int> xs;
    for (std::size_t k = 0; k < labels.size(); ++k) xs.push_back(pool.x(i, k));
    exactly_one(out, xs);
  }
  for (int i = 2; i <= n; ++i) {
    std::vector<int> ls, rs;
    for (int j = 1; j < i; ++j) {
      ls.push_back(pool.l(i, j));
      rs.push_back(pool.r(i, j));
    }
    exactly_one(out, ls);
    exactly_one(out, rs);
  }
  Clause leaf;
  for (std::size_t k = 0; k < labels.size(); ++k)
    if (arity(labels[k].op) == 0) leaf.push_back(pool.x(1, k));
  out.push_back(std::move(leaf));
  return out;
}

std::vector<std::size_t> between_positions(std::size_t t, std::size_t t2, std::size_t prefix_len,
                                           std::size_t total_len) {
  if (t < prefix_len || t >= total_len || t2 < prefix_len || t2 >= total_len)
    throw Error("between_positions: positions must lie in the periodic part");
  std::vector<std::size_t> out;
  if (t < t2) {
    for (std::size_t k = t; k < t2; ++k) out.push_back(k);
  } else {
    for (std::size_t k = prefix_len; k < t2; ++k) out.push_back(k);
    for (std::size_t k = t; k < total_len; ++k) out.push_back(k);
  }
  return out;
}

namespace {

/// Emits the clauses of one word. `guard` literals are prepended (negated) to
/// every clause of a guarded equivalence.
class WordEncoder {
 public:
  WordEncoder(VariablePool& pool, std::size_t w, const LassoWord& word)
      : pool_(pool), w_(w), word_(word), len_(word.length()), loop_(word.prefix_length()) {}

  std::vector<Clause> run(EncodingStyle style) {
    const int n = pool_.size_bound();
    for (int i = 1; i <= n; ++i) {
      encode_leaves(i);
      if (i == 1) continue;
      if (style == EncodingStyle::Compact)
        encode_compact(i);
      else
        encode_tabular(i);
    }
    return std::move(out_);
  }

 private:
  int y(int node, std::size_t t) const { return pool_.y(w_, node, t); }
  std::size_t next(std::size_t t) const { return t + 1 < len_ ? t + 1 : loop_; }

  void emit(const std::vector<int>& guard, Clause c) {
    for (int g : guard) c.push_back(-g);
    out_.push_back(std::move(c));
  }
  // guard -> (a <-> OR(terms))
  void iff_or(const std::vector<int>& guard, int a, const std::vector<int>& terms) {
    Clause big{-a};
    big.insert(big.end(), terms.begin(), terms.end());
    emit(guard, std::move(big));
    for (int t : terms) emit(guard, {a, -t});
  }
  // guard -> (a <-> AND(terms))
  void iff_and(const std::vector<int>& guard, int a, const std::vector<int>& terms) {
    Clause big{a};
    for (int t : terms) big.push_back(-t);
    emit(guard, std::move(big));
    for (int t : terms) emit(guard, {-a, t});
  }

  void encode_leaves(int i) {
    const auto& labels = pool_.labels();
    for (std::size_t k = 0; k < labels.size(); ++k) {
      const Label& lab = labels[k];
      if (arity(lab.op) != 0) continue;
      const int g = pool_.x(i, k);
      for (std::size_t t = 0; t < len_; ++t) {
        bool holds = lab.op == Op::True;
        if (lab.op == Op::Prop) holds = (word_.at(t) >> lab.prop) & 1u;
        emit({g}, {holds ? y(i, t) : -y(i, t)});
      }
    }
  }

  // ---- compact style -------------------------------------------------------

  /// Fresh variables v[t] with (sel[j] & y[j,t]) -> v[t] and (sel[j] & !y[j,t]) -> !v[t].
  std::vector<int> channel(int i, bool left) {
    std::vector<int> v(len_);
    for (auto& var : v) var = pool_.fresh();
    for (int j = 1; j < i; ++j) {
      const int sel = left ? pool_.l(i, j) : pool_.r(i, j);
      for (std::size_t t = 0; t < len_; ++t) {
        out_.push_back({-sel, -y(j, t), v[t]});
        out_.push_back({-sel, y(j, t), -v[t]});
      }
    }
    return v;
  }

  /// Recurrence for U/F (until = true) or G (until = false):
  ///   U: y[t] <-> b[t] | (a[t] & y[t+1]);  F: a = true;  G: y[t] <-> a[t] & y[t+1]
  /// with the loop closed through a chain that scans the period once.
  void temporal(int g, int i, const std::vector<int>* a, const std::vector<int>* b, bool until) {
    const std::size_t last = len_ - 1;
    std::vector<int> chain(len_, 0);
    for (std::size_t t = last + 1; t-- > loop_;) chain[t] = pool_.fresh();
    auto step = [&](int target, std::size_t t, int successor, bool has_successor, bool guarded) {
      const std::vector<int> guard = guarded ? std::vector<int>{g} : std::vector<int>{};
      if (until) {
        const int hit = b ? (*b)[t] : (*a)[t];
        if (!has_successor) {
          iff_or(guard, target, {hit});
          return;
        }
        if (b) {
          const int both = pool_.fresh();
          iff_and({}, both, {(*a)[t], successor});
          iff_or(guard, target, {hit, both});
        } else {
          iff_or(guard, target, {hit, successor});
        }
      } else {
        if (!has_successor)
          iff_and(guard, target, {(*a)[t]});
        else
          iff_and(guard, target, {(*a)[t], successor});
      }
    };
    for (std::size_t t = loop_; t <= last; ++t)
      step(chain[t], t, t < last ? chain[t + 1] : 0, t < last, false);
    for (std::size_t t = 0; t < last; ++t) step(y(i, t), t, y(i, t + 1), true, true);
    step(y(i, last), last, chain[loop_], true, true);
  }

  void encode_compact(int i) {
    const auto& labels = pool_.labels();
    bool need_left = false, need_right = false;
    for (const auto& lab : labels) {
      need_left |= arity(lab.op) >= 1;
      need_right |= arity(lab.op) == 2;
    }
    std::vector<int> a, b;
    if (need_left) a = channel(i, true);
    if (need_right) b = channel(i, false);
    for (std::size_t k = 0; k < labels.size(); ++k) {
      const Op op = labels[k].op;
      const int g = pool_.x(i, k);
      switch (op) {
        case Op::Not:
          for (std::size_t t = 0; t < len_; ++t) {
            emit({g}, {-y(i, t), -a[t]});
            emit({g}, {y(i, t), a[t]});
          }
          break;
        case Op::Or:
          for (std::size_t t = 0; t < len_; ++t) iff_or({g}, y(i, t), {a[t], b[t]});
          break;
        case Op::And:
          for (std::size_t t = 0; t < len_; ++t) iff_and({g}, y(i, t), {a[t], b[t]});
          break;
        case Op::Implies:
          for (std::size_t t = 0; t < len_; ++t) iff_or({g}, y(i, t), {-a[t], b[t]});
          break;
        case Op::Next:
          for (std::size_t t = 0; t < len_; ++t) iff_and({g}, y(i, t), {a[next(t)]});
          break;
        case Op::Until:
          temporal(g, i, &a, &b, true);
          break;
        case Op::Finally:
          temporal(g, i, &a, nullptr, true);
          break;
        case Op::Globally:
          temporal(g, i, &a, nullptr, false);
          break;
        default:
          break;
      }
    }
  }

  // ---- tabular style -------------------------------------------------------

  /// Positions whose left-operand values are required before reaching t2 from t.
  std::vector<std::size_t> guarded_range(std::size_t t, std::size_t t2) const {
    std::vector<std::size_t> out;
    if (t < loop_) {
      for (std::size_t k = t; k < t2; ++k) out.push_back(k);
    } else if (t != t2) {
      out = between_positions(t, t2, loop_, len_);
    }
    return out;
  }

  /// Witness positions t2 scanned from t: t..|uv|-1 in the prefix, the whole period otherwise.
  std::size_t first_witness(std::size_t t) const { return t < loop_ ? t : loop_; }

  void encode_tabular(int i) {
    const auto& labels = pool_.labels();
    for (std::size_t k = 0; k < labels.size(); ++k) {
      const Op op = labels[k].op;
      const int x = pool_.x(i, k);
      if (arity(op) == 1) {
        for (int j = 1; j < i; ++j) {
          const std::vector<int> guard{x, pool_.l(i, j)};
          for (std::size_t t = 0; t < len_; ++t) {
            switch (op) {
              case Op::Not:
                emit(guard, {-y(i, t), -y(j, t)});
                emit(guard, {y(i, t), y(j, t)});
                break;
              case Op::Next:
                iff_and(guard, y(i, t), {y(j, next(t))});
                break;
              case Op::Finally:
              case Op::Globally: {
                std::vector<int> terms;
                for (std::size_t t2 = first_witness(t); t2 < len_; ++t2) terms.push_back(y(j, t2));
                if (op == Op::Finally)
                  iff_or(guard, y(i, t), terms);
                else
                  iff_and(guard, y(i, t), terms);
                break;
              }
              default:
                break;
            }
          }
        }
      } else if (arity(op) == 2) {
        for (int j = 1; j < i; ++j) {
          for (int j2 = 1; j2 < i; ++j2) {
            const std::vector<int> guard{x, pool_.l(i, j), pool_.r(i, j2)};
            for (std::size_t t = 0; t < len_; ++t) {
              switch (op) {
                case Op::Or:
                  iff_or(guard, y(i, t), {y(j, t), y(j2, t)});
                  break;
                case Op::And:
                  iff_and(guard, y(i, t), {y(j, t), y(j2, t)});
                  break;
                case Op::Implies:
                  iff_or(guard, y(i, t), {-y(j, t), y(j2, t)});
                  break;
                case Op::Until: {
                  std::vector<int> terms;
                  for (std::size_t t2 = first_witness(t); t2 < len_; ++t2)
                    terms.push_back(until_term(j, j2, t, t2));
                  iff_or(guard, y(i, t), terms);
                  break;
                }
                default:
                  break;
              }
            }
          }
        }
      }
    }
  }

  /// Auxiliary for y[j2,t2] & AND_{t'' in range(t,t2)} y[j,t''], shared across parents.
  int until_term(int j, int j2, std::size_t t, std::size_t t2) {
    auto key = std::make_tuple(j, j2, t, t2);
    if (auto it = terms_.find(key); it != terms_.end()) return it->second;
    std::vector<int> conj{y(j2, t2)};
    for (std::size_t k : guarded_range(t, t2)) conj.push_back(y(j, k));
    const int aux = pool_.fresh();
    iff_and({}, aux, conj);
    terms_.emplace(key, aux);
    return aux;
  }

  VariablePool& pool_;
  std::size_t w_;
  const LassoWord& word_;
  std::size_t len_;
  std::size_t loop_;
  std::vector<Clause> out_;
  std::map<std::tuple<int, int, std::size_t, std::size_t>, int> terms_;
};

}  // namespace

std::vector<Clause> encode_word(VariablePool& pool, std::size_t word_index, const LassoWord& word,
                                EncodingStyle style) {
  if (pool.word_length(word_index) != word.length())
    throw Error("word length does not match the variable pool");
  return WordEncoder(pool, word_index, word).run(style);
}

Encoding encode_sample(int size_bound, const Sample& sample, const OperatorSet& ops, EncodingStyle style) {
  std::vector<std::size_t> lengths;
  for (const auto& [w, positive] : sample.labeled_words()) lengths.push_back(w->length());
  Encoding enc{VariablePool(size_bound, sample.alphabet, ops, lengths), {}};
  enc.formula.structure = encode_structure(enc.pool);
  std::size_t index = 0;
  for (const auto& [w, positive] : sample.labeled_words()) {
    enc.formula.words.push_back(encode_word(enc.pool, index, *w, style));
    const int root = enc.pool.y(index, size_bound, 0);
    enc.formula.roots.push_back({positive ? root : -root});
    ++index;
  }
  return enc;
}

SyntaxDag decode_model(const std::vector<bool>& model, const VariablePool& pool) {
  auto truth = [&](int v) {
    if (v < 1 || static_cast<std::size_t>(v) >= model.size()) throw InvariantViolation("model is too short");
    return static_cast<bool>(model[static_cast<std::size_t>(v)]);
  };
  auto unique_child = [&](int i, bool left) {
    int found = 0;
    for (int j = 1; j < i; ++j) {
      if (truth(left ? pool.l(i, j) : pool.r(i, j))) {
        if (found) throw InvariantViolation("malformed model: node " + std::to_string(i) + " has two children");
        found = j;
      }
    }
    if (!found) throw InvariantViolation("malformed model: node " + std::to_string(i) + " lacks a child");
    return found;
  };
  std::vector<DagNode> nodes;
  const auto& labels = pool.labels();
  for (int i = 1; i <= pool.size_bound(); ++i) {
    std::optional<std::size_t> label;
    for (std::size_t k = 0; k < labels.size(); ++k) {
      if (!truth(pool.x(i, k))) continue;
      if (label) throw InvariantViolation("malformed model: node " + std::to_string(i) + " has two labels");
      label = k;
    }
    if (!label) throw InvariantViolation("malformed model: node " + std::to_string(i) + " has no label");
    const Label& lab = labels[*label];
    DagNode node{lab.op, lab.op == Op::Prop ? pool.alphabet().name(lab.prop) : std::string{}, -1, -1};
    if (i >= 2) {
      const int lc = unique_child(i, true);
      const int rc = unique_child(i, false);
      if (arity(lab.op) >= 1) node.left = lc - 1;
      if (arity(lab.op) == 2) node.right = rc - 1;
    }
    nodes.push_back(std::move(node));
  }
  return SyntaxDag(std::move(nodes));
}

std::vector<Literal> structure_literals(const std::vector<bool>& model, const VariablePool& pool) {
  std::vector<Literal> out;
  const auto& labels = pool.labels();
  for (int i = 1; i <= pool.size_bound(); ++i) {
    int k_arity = 0;
    for (std::size_t k = 0; k < labels.size(); ++k) {
      if (model.at(static_cast<std::size_t>(pool.x(i, k)))) {
        out.push_back(pool.x(i, k));
        k_arity = arity(labels[k].op);
      }
    }
    for (int j = 1; j < i; ++j) {
      if (k_arity >= 1 && model.at(static_cast<std::size_t>(pool.l(i, j)))) out.push_back(pool.l(i, j));
      if (k_arity == 2 && model.at(static_cast<std::size_t>(pool.r(i, j)))) out.push_back(pool.r(i, j));
    }
  }
  return out;
}

}  // namespace ltl
