#include "ltl/trace_io.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "ltl/error.hpp"

namespace ltl {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto end = s.find(sep, start);
    out.push_back(trim(s.substr(start, end == std::string_view::npos ? s.npos : end - start)));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

Symbol parse_symbol(std::string_view bits, std::size_t width, std::size_t line) {
  if (bits.size() != width)
    throw FormatError("symbol '" + std::string(bits) + "' has " + std::to_string(bits.size()) +
                          " bits but the alphabet has " + std::to_string(width) + " propositions",
                      line);
  Symbol s = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      s |= Symbol{1} << i;
    else if (bits[i] != '0')
      throw FormatError("symbol '" + std::string(bits) + "' must consist of 0 and 1", line);
  }
  return s;
}

std::vector<Symbol> parse_symbols(std::string_view part, std::size_t width, std::size_t line) {
  std::vector<Symbol> out;
  if (part.empty()) return out;
  for (auto bits : split(part, ';')) out.push_back(parse_symbol(bits, width, line));
  return out;
}

}  // namespace

SampleFile read_sample_file(std::istream& in) {
  enum class Block { None, Positive, Negative } block = Block::None;
  std::optional<PropositionAlphabet> alphabet;
  SampleFile file;
  std::vector<std::size_t> pos_lines, neg_lines;
  std::string raw;
  std::size_t line = 0;

  while (std::getline(in, raw)) {
    ++line;
    std::string_view text(raw);
    if (auto hash = text.find('#'); hash != text.npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;

    if (text.starts_with(".props:")) {
      if (alphabet) throw FormatError("duplicate .props declaration", line);
      std::vector<std::string> names;
      for (auto name : split(text.substr(7), ',')) names.emplace_back(name);
      try {
        alphabet = PropositionAlphabet(std::move(names));
      } catch (const Error& e) {
        throw FormatError(e.what(), line);
      }
    } else if (text.starts_with(".ops:")) {
      try {
        file.ops = OperatorSet::parse(text.substr(5));
      } catch (const Error& e) {
        throw FormatError(e.what(), line);
      }
    } else if (text == ".positive:") {
      block = Block::Positive;
    } else if (text == ".negative:") {
      block = Block::Negative;
    } else if (text.front() == '.') {
      throw FormatError("unknown directive '" + std::string(text) + "'", line);
    } else {
      if (!alphabet) throw FormatError("word before .props declaration", line);
      if (block == Block::None) throw FormatError("word outside a .positive/.negative block", line);
      auto bar = text.find('|');
      if (bar == text.npos || text.find('|', bar + 1) != text.npos)
        throw FormatError("word must contain exactly one '|' between prefix and period", line);
      auto prefix = parse_symbols(trim(text.substr(0, bar)), alphabet->size(), line);
      auto period = parse_symbols(trim(text.substr(bar + 1)), alphabet->size(), line);
      if (period.empty()) throw FormatError("empty period", line);
      LassoWord word(std::move(prefix), std::move(period));
      if (block == Block::Positive) {
        file.sample.positives.push_back(std::move(word));
        pos_lines.push_back(line);
      } else {
        file.sample.negatives.push_back(std::move(word));
        neg_lines.push_back(line);
      }
    }
  }
  if (!alphabet) throw FormatError("missing .props declaration", line + 1);
  file.sample.alphabet = std::move(*alphabet);
  if (auto c = file.sample.find_contradiction())
    throw ContradictorySample("contradictory sample: the word on line " + std::to_string(pos_lines[c->first]) +
                              " also appears as a negative on line " + std::to_string(neg_lines[c->second]));
  return file;
}

Sample read_sample(std::istream& in) { return read_sample_file(in).sample; }

std::string format_word(const LassoWord& word, std::size_t alphabet_size) {
  auto symbols = [&](const std::vector<Symbol>& part) {
    std::string out;
    for (std::size_t k = 0; k < part.size(); ++k) {
      if (k) out += ';';
      for (std::size_t i = 0; i < alphabet_size; ++i) out += ((part[k] >> i) & 1u) ? '1' : '0';
    }
    return out;
  };
  return symbols(word.prefix()) + "|" + symbols(word.period());
}

void write_sample(const Sample& sample, std::ostream& out, const std::optional<OperatorSet>& ops) {
  out << ".props: ";
  for (std::size_t i = 0; i < sample.alphabet.size(); ++i) out << (i ? "," : "") << sample.alphabet.name(i);
  out << '\n';
  if (ops) out << ".ops: " << ops->to_string() << '\n';
  out << ".positive:\n";
  for (const auto& w : sample.positives) out << format_word(w, sample.alphabet.size()) << '\n';
  out << ".negative:\n";
  for (const auto& w : sample.negatives) out << format_word(w, sample.alphabet.size()) << '\n';
  if (!out) throw Error("failed to write sample");
}

void write_formula_report(std::ostream& out, std::span<const SyntaxDag> formulas) {
  for (const auto& f : formulas) out << "formula := " << render(f) << '\n';
  if (!formulas.empty()) out << "size := " << formulas.front().size() << '\n';
}

void write_tree(std::ostream& out, const DecisionTree& tree, std::span<const SyntaxDag> primitives) {
  auto go = [&](auto&& self, int i, std::size_t depth, const char* edge) -> void {
    const auto& n = tree.node(i);
    out << std::string(2 * depth, ' ') << edge;
    if (n.leaf) {
      out << (n.accept ? "accept" : "reject") << '\n';
      return;
    }
    out << render(primitives[n.feature]) << '\n';
    self(self, n.on_true, depth + 1, "+ ");
    self(self, n.on_false, depth + 1, "- ");
  };
  go(go, tree.root(), 0, "");
}

}  // namespace ltl
