#include "aut/io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <vector>

namespace aut::io {

namespace {

// Character cursor with line tracking for error messages.
class Cursor {
 public:
  explicit Cursor(const std::string& text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  bool done() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool try_consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!try_consume(c))
      fail(Err::ParseError, "line " + std::to_string(line_) + ": expected '" + c + "'" +
                                (pos_ < text_.size()
                                     ? std::string(", found '") + text_[pos_] + "'"
                                     : ", found end of input"));
  }

  bool try_keyword(const std::string& kw) {
    skip_ws();
    if (text_.compare(pos_, kw.size(), kw) != 0) return false;
    const std::size_t end = pos_ + kw.size();
    if (end < text_.size() &&
        (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
      return false;
    pos_ = end;
    return true;
  }

  void expect_keyword(const std::string& kw) {
    if (!try_keyword(kw))
      fail(Err::ParseError, "line " + std::to_string(line_) + ": expected '" + kw + "'");
  }

  std::string word() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_)
      fail(Err::ParseError, "line " + std::to_string(line_) + ": expected a word");
    return text_.substr(start, pos_ - start);
  }

  std::int64_t integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_ || (pos_ - start == 1 && !std::isdigit(static_cast<unsigned char>(text_[start]))))
      fail(Err::ParseError, "line " + std::to_string(line_) + ": expected an integer");
    return std::stoll(text_.substr(start, pos_ - start));
  }

  int line() const { return line_; }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

pre::Index read_index(Cursor& c, const pre::PreorderSpec& spec) {
  const std::int64_t first = c.integer();
  if (c.try_consume(':')) {
    const std::int64_t slot = c.integer();
    return pre::Index{first, static_cast<std::int32_t>(slot)};
  }
  return spec.from_flat(first);
}

pre::BlockSpec read_block(Cursor& c) {
  c.expect_keyword("block");
  c.expect('(');
  const std::int64_t size = c.integer();
  if (size < 1 || size > (1 << 20)) fail(Err::ParseError, "block size out of range");
  const std::int32_t n = static_cast<std::int32_t>(size);
  if (c.try_consume(')')) return pre::BlockSpec::chain(n);
  c.expect(',');
  pre::BlockSpec out = pre::BlockSpec::chain(n);
  if (c.try_keyword("chain")) {
    out = pre::BlockSpec::chain(n);
  } else if (c.try_keyword("full")) {
    out = pre::BlockSpec::full(n);
  } else if (c.try_keyword("antichain")) {
    out = pre::BlockSpec::antichain(n);
  } else if (c.try_keyword("pairs")) {
    c.expect(':');
    std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
    while (true) {
      c.expect('(');
      const std::int64_t a = c.integer();
      c.expect(',');
      const std::int64_t b = c.integer();
      c.expect(')');
      pairs.emplace_back(static_cast<std::int32_t>(a), static_cast<std::int32_t>(b));
      if (!c.try_consume(';')) break;
    }
    out = pre::BlockSpec::from_pairs(n, pairs);
  } else {
    fail(Err::ParseError, "line " + std::to_string(c.line()) +
                              ": expected chain, full, antichain or pairs");
  }
  c.expect(')');
  return out;
}

inv::SemilinearSet read_semilinear(Cursor& c) {
  c.expect_keyword("semilinear");
  c.expect('{');
  std::vector<std::uint64_t> finite;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> progs;
  while (!c.try_consume('}')) {
    if (c.try_keyword("finite")) {
      c.expect('=');
      c.expect('{');
      if (!c.try_consume('}')) {
        while (true) {
          const std::int64_t v = c.integer();
          if (v < 0) fail(Err::ParseError, "semilinear members are nonnegative");
          finite.push_back(static_cast<std::uint64_t>(v));
          if (!c.try_consume(',')) break;
        }
        c.expect('}');
      }
    } else if (c.try_keyword("prog")) {
      c.expect('=');
      while (true) {
        c.expect('(');
        const std::int64_t b = c.integer();
        c.expect(',');
        const std::int64_t d = c.integer();
        c.expect(')');
        if (b < 0 || d <= 0) fail(Err::ParseError, "progression needs base >= 0 and period > 0");
        progs.emplace_back(static_cast<std::uint64_t>(b), static_cast<std::uint64_t>(d));
        if (!c.try_consume(';')) break;
      }
    } else if (c.try_consume(';')) {
      continue;
    } else {
      fail(Err::ParseError,
           "line " + std::to_string(c.line()) + ": expected finite or prog inside semilinear{}");
    }
  }
  return inv::SemilinearSet::make(std::move(finite), std::move(progs));
}

pre::IndexSet read_index_set(Cursor& c, const pre::PreorderSpec& spec) {
  std::vector<pre::Index> items;
  if (c.peek() == '{') {
    c.expect('{');
    if (!c.try_consume('}')) {
      while (true) {
        items.push_back(read_index(c, spec));
        if (!c.try_consume(',')) break;
      }
      c.expect('}');
    }
    return pre::IndexSet::of(std::move(items));
  }
  // chain shorthand a..b over flat positions
  const std::int64_t a = c.integer();
  c.expect('.');
  c.expect('.');
  const std::int64_t b = c.integer();
  if (b < a) fail(Err::ParseError, "descending range");
  for (std::int64_t k = a; k <= b; ++k) items.push_back(spec.from_flat(k));
  return pre::IndexSet::of(std::move(items));
}

std::string block_str(const pre::BlockSpec& b) {
  std::string out = "block(" + std::to_string(b.size()) + ", ";
  switch (b.classify()) {
    case pre::BlockSpec::Kind::Chain: return out + "chain)";
    case pre::BlockSpec::Kind::Full: return out + "full)";
    case pre::BlockSpec::Kind::Antichain: return out + "antichain)";
    case pre::BlockSpec::Kind::Pairs: break;
  }
  out += "pairs: ";
  const auto pairs = b.strict_pairs_listed();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i) out += ";";
    out += "(" + std::to_string(pairs[i].first) + "," + std::to_string(pairs[i].second) + ")";
  }
  return out + ")";
}

}  // namespace

pre::PreorderSpec parse_preorder(const std::string& text) {
  Cursor c(text);
  c.expect_keyword("base");
  c.expect('=');
  pre::Base base;
  if (c.try_keyword("Z")) {
    base = pre::Base::Z;
  } else if (c.try_keyword("NEGN")) {
    base = pre::Base::NegN;
  } else if (c.try_keyword("N")) {
    base = pre::Base::N;
  } else {
    fail(Err::ParseError, "base must be Z, N or NEGN");
  }

  std::vector<pre::BlockSpec> pattern;
  std::optional<inv::SemilinearSet> sizes;
  std::map<std::int64_t, pre::BlockSpec> exceptions;
  std::vector<std::vector<std::vector<pre::Index>>> raw_coarsenings;  // parsed after spec exists

  // a first pass collects pattern/sizes/exceptions; coarsen lines need the
  // spec to resolve flat indices, so their text spans are parsed afterwards
  std::vector<std::string> coarsen_spans;
  while (!c.done()) {
    if (c.try_keyword("pattern")) {
      c.expect('=');
      while (true) {
        pattern.push_back(read_block(c));
        if (!c.try_consume(',')) break;
      }
    } else if (c.try_keyword("sizes")) {
      c.expect('=');
      sizes = read_semilinear(c);
    } else if (c.try_keyword("exception")) {
      const std::int64_t coord = c.integer();
      c.expect('=');
      auto blk = read_block(c);
      if (!exceptions.emplace(coord, blk).second)
        fail(Err::ParseError, "duplicate exception at block " + std::to_string(coord));
    } else if (c.try_keyword("coarsen")) {
      c.expect('=');
      // capture the parts literally: { ... } | { ... } ...
      std::string span;
      while (true) {
        c.expect('{');
        span += "{";
        while (c.peek() != '}') {
          const std::int64_t v = c.integer();
          span += std::to_string(v);
          if (c.try_consume(':')) span += ":" + std::to_string(c.integer());
          if (c.try_consume(',')) span += ",";
        }
        c.expect('}');
        span += "}";
        if (!c.try_consume('|')) break;
        span += "|";
      }
      coarsen_spans.push_back(span);
    } else {
      fail(Err::ParseError, "line " + std::to_string(c.line()) + ": unknown directive");
    }
  }

  if (sizes && !pattern.empty())
    fail(Err::ParseError, "pattern and sizes are mutually exclusive");
  pre::PreorderSpec spec = sizes ? pre::PreorderSpec::sized(base, *sizes, exceptions)
                                 : pre::PreorderSpec::blocks(
                                       base, pattern.empty()
                                                 ? std::vector<pre::BlockSpec>{pre::BlockSpec::chain(1)}
                                                 : pattern,
                                       exceptions);

  for (const std::string& span : coarsen_spans) {
    Cursor pc(span);
    pre::FinitaryPartition partition;
    while (true) {
      pc.expect('{');
      std::vector<pre::Index> items;
      if (pc.peek() != '}') {
        while (true) {
          items.push_back(read_index(pc, spec));
          if (!pc.try_consume(',')) break;
        }
      }
      pc.expect('}');
      partition.parts.push_back(pre::IndexSet::of(std::move(items)));
      if (!pc.try_consume('|')) break;
    }
    spec = spec.coarsen(partition);
  }
  return spec;
}

std::string print_index(const pre::PreorderSpec& spec, pre::Index i) {
  if (spec.all_blocks_singletons()) return std::to_string(spec.to_flat(i));
  return std::to_string(i.block) + ":" + std::to_string(i.slot);
}

std::string print_index_set(const pre::PreorderSpec& spec, const pre::IndexSet& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) out += ", ";
    out += print_index(spec, s[k]);
  }
  return out + "}";
}

std::string print_preorder(const pre::PreorderSpec& spec) {
  std::ostringstream out;
  out << "base = ";
  switch (spec.base()) {
    case pre::Base::Z: out << "Z"; break;
    case pre::Base::N: out << "N"; break;
    case pre::Base::NegN: out << "NEGN"; break;
  }
  out << "\n";
  if (spec.size_enumeration()) {
    out << "sizes = " << print_semilinear(*spec.size_enumeration()) << "\n";
  } else {
    out << "pattern = ";
    const auto& pat = spec.pattern();
    for (std::size_t i = 0; i < pat.size(); ++i) {
      if (i) out << ", ";
      out << block_str(pat[i]);
    }
    out << "\n";
  }
  for (const auto& [coord, blk] : spec.exceptions())
    out << "exception " << coord << " = " << block_str(blk) << "\n";
  for (const auto& partition : spec.coarsenings()) {
    out << "coarsen = ";
    for (std::size_t p = 0; p < partition.parts.size(); ++p) {
      if (p) out << " | ";
      out << print_index_set(spec, partition.parts[p]);
    }
    out << "\n";
  }
  return out.str();
}

namespace {

struct ElemFields {
  gf::Field field = gf::Field::make(2);
  std::uint16_t scalar = 1;
  pre::IndexSet window;
  mat::Mat core;
};

ElemFields read_elem_body(Cursor& c, const pre::PreorderSpec& spec, const char* head) {
  c.expect_keyword(head);
  c.expect('{');
  c.expect_keyword("q");
  c.expect('=');
  const std::int64_t q = c.integer();
  if (q < 2 || q > (1 << 16)) fail(Err::ParseError, "q out of range");
  ElemFields out;
  out.field = gf::Field::make(static_cast<std::uint32_t>(q));
  c.expect(';');
  if (c.try_keyword("scalar")) {
    c.expect('=');
    out.scalar = static_cast<std::uint16_t>(out.field.element(
        static_cast<std::uint64_t>(c.integer())));
    c.expect(';');
  }
  c.expect_keyword(std::string(head) == "elem" ? "window" : "region");
  c.expect('=');
  c.expect('[');
  std::vector<pre::Index> items;
  if (!c.try_consume(']')) {
    while (true) {
      items.push_back(read_index(c, spec));
      if (!c.try_consume(',')) break;
    }
    c.expect(']');
  }
  out.window = pre::IndexSet::of(std::move(items));
  c.expect(';');
  c.expect_keyword(std::string(head) == "elem" ? "core" : "entries");
  c.expect('=');
  c.expect('[');
  std::vector<std::vector<std::uint16_t>> rows;
  if (!c.try_consume(']')) {
    while (true) {
      c.expect('[');
      std::vector<std::uint16_t> row;
      if (!c.try_consume(']')) {
        while (true) {
          row.push_back(out.field.element(static_cast<std::uint64_t>(c.integer())));
          if (!c.try_consume(',')) break;
        }
        c.expect(']');
      }
      rows.push_back(std::move(row));
      if (!c.try_consume(',')) break;
    }
    c.expect(']');
  }
  c.try_consume(';');
  c.expect('}');

  const std::size_t n = out.window.size();
  if (rows.size() != n) fail(Err::ParseError, "matrix row count does not match the index list");
  for (const auto& row : rows)
    if (row.size() != n) fail(Err::ParseError, "matrix is not square");
  out.core = mat::Mat::zero(static_cast<std::uint32_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out.core.at(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)) = rows[i][j];
  return out;
}

}  // namespace

std::pair<gf::Field, mat::WindowElement> parse_element(const std::string& text,
                                                       const pre::PreorderSpec& spec) {
  Cursor c(text);
  ElemFields fields = read_elem_body(c, spec, "elem");
  return {fields.field, mat::WindowElement::make(fields.field, spec, fields.scalar, fields.window,
                                                 std::move(fields.core))};
}

std::string print_element(const mat::WindowElement& e) {
  std::ostringstream out;
  out << "elem { q = " << e.field().q() << "; scalar = " << e.scalar() << "; window = [";
  for (std::size_t k = 0; k < e.window().size(); ++k) {
    if (k) out << ", ";
    out << print_index(e.preorder(), e.window()[k]);
  }
  out << "]; core = [";
  const mat::Mat& core = e.core();
  for (std::uint32_t i = 0; i < core.n; ++i) {
    if (i) out << ",";
    out << "[";
    for (std::uint32_t j = 0; j < core.n; ++j) {
      if (j) out << ",";
      out << core.at(i, j);
    }
    out << "]";
  }
  out << "] }";
  return out.str();
}

std::pair<gf::Field, mat::FiniteMatrix> parse_finite_matrix(const std::string& text,
                                                            const pre::PreorderSpec& spec) {
  Cursor c(text);
  ElemFields fields = read_elem_body(c, spec, "mat");
  return {fields.field, mat::FiniteMatrix{fields.window, std::move(fields.core)}};
}

std::string print_finite_matrix(const gf::Field& field, const mat::FiniteMatrix& m,
                                const pre::PreorderSpec& spec) {
  std::ostringstream out;
  out << "mat { q = " << field.q() << "; region = [";
  for (std::size_t k = 0; k < m.indices.size(); ++k) {
    if (k) out << ", ";
    out << print_index(spec, m.indices[k]);
  }
  out << "]; entries = [";
  for (std::uint32_t i = 0; i < m.entries.n; ++i) {
    if (i) out << ",";
    out << "[";
    for (std::uint32_t j = 0; j < m.entries.n; ++j) {
      if (j) out << ",";
      out << m.entries.at(i, j);
    }
    out << "]";
  }
  out << "] }";
  return out.str();
}

inv::SemilinearSet parse_semilinear(const std::string& text) {
  Cursor c(text);
  return read_semilinear(c);
}

std::string print_semilinear(const inv::SemilinearSet& s) {
  std::ostringstream out;
  out << "semilinear{ finite = {";
  const auto& expl = s.explicit_members();
  for (std::size_t i = 0; i < expl.size(); ++i) {
    if (i) out << ",";
    out << expl[i];
  }
  out << "}";
  if (!s.residues().empty()) {
    out << "; prog = ";
    const auto& res = s.residues();
    for (std::size_t i = 0; i < res.size(); ++i) {
      if (i) out << ";";
      const std::uint64_t L = s.period(), T = s.threshold();
      const std::uint64_t first = T + ((res[i] + L - T % L) % L);
      out << "(" << first << "," << L << ")";
    }
  }
  out << " }";
  return out.str();
}

pre::Index parse_index(const std::string& token, const pre::PreorderSpec& spec) {
  Cursor c(token);
  pre::Index i = read_index(c, spec);
  if (!c.done()) fail(Err::ParseError, "trailing characters after index literal");
  spec.require_valid(i);
  return i;
}

pre::IndexSet parse_index_set(const std::string& text, const pre::PreorderSpec& spec) {
  Cursor c(text);
  pre::IndexSet s = read_index_set(c, spec);
  if (!c.done()) fail(Err::ParseError, "trailing characters after index set");
  for (pre::Index i : s) spec.require_valid(i);
  return s;
}

}  // namespace aut::io
