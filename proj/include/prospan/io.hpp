#pragma once

// Plain-text formats for groups, towers, G-sets and Mackey functors.
// Blank lines and lines starting with '#' are ignored.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "prospan/groups.hpp"
#include "prospan/gset.hpp"
#include "prospan/mackey.hpp"
#include "prospan/tower.hpp"

namespace prospan {

namespace detail {

class LineReader {
 public:
  LineReader(std::istream& in, std::string file) : in_(in), file_(std::move(file)) {}

  /// Tokens of the next meaningful line; empty at end of input.
  std::vector<std::string> next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::istringstream ss(line);
      std::vector<std::string> toks;
      for (std::string t; ss >> t;) toks.push_back(t);
      if (toks.empty() || toks[0][0] == '#') continue;
      return toks;
    }
    ++line_;
    return {};
  }

  std::vector<std::string> expect(const std::string& what) {
    auto t = next();
    if (t.empty()) fail("unexpected end of input, expected " + what);
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(file_, line_, msg); }

  std::uint64_t number(const std::string& tok) const {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) fail("expected a non-negative integer, got '" + tok + "'");
    return v;
  }

  std::int64_t integer(const std::string& tok) const {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) fail("expected an integer, got '" + tok + "'");
    return v;
  }

  std::vector<std::uint64_t> row(std::size_t n, const std::string& what) {
    auto t = expect(what);
    if (t.size() != n) fail(what + ": expected " + std::to_string(n) + " entries, got " + std::to_string(t.size()));
    std::vector<std::uint64_t> out;
    for (const auto& s : t) out.push_back(number(s));
    return out;
  }

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::istream& in_;
  std::string file_;
  std::size_t line_ = 0;
};

/// Reads a group block after its header; returns the group and the
/// relabeling old index -> new index applied by make_group.
inline std::pair<GroupRef, std::vector<Element>> group_body(LineReader& r, std::size_t n) {
  if (n == 0) r.fail("group order must be positive");
  std::vector<std::vector<Element>> table;
  for (std::size_t i = 0; i < n; ++i) {
    auto row = r.row(n, "table row " + std::to_string(i));
    std::vector<Element> v;
    for (auto x : row) {
      if (x >= n) r.fail("table entry " + std::to_string(x) + " out of range");
      v.push_back(static_cast<Element>(x));
    }
    table.push_back(std::move(v));
  }
  std::vector<Element> relabel(n);
  std::iota(relabel.begin(), relabel.end(), Element{0});
  for (std::size_t e = 0; e < n; ++e) {
    bool id = true;
    for (std::size_t b = 0; b < n && id; ++b) id = table[e][b] == b && table[b][e] == b;
    if (id) {
      std::swap(relabel[0], relabel[e]);
      break;
    }
  }
  try {
    return {make_group(table), relabel};
  } catch (const Error& e) {
    r.fail(e.what());
  }
}

inline std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return in;
}

inline std::string sibling(const std::string& base, const std::string& ref) {
  const std::filesystem::path p(ref);
  if (p.is_absolute()) return ref;
  const auto near = std::filesystem::path(base).parent_path() / p;
  return std::filesystem::exists(near) ? near.string() : ref;
}

}  // namespace detail

// ---------------------------------------------------------------- groups

inline GroupRef parse_group(std::istream& in, const std::string& file = "<input>") {
  detail::LineReader r(in, file);
  auto h = r.expect("'group <order>'");
  if (h.size() != 2 || h[0] != "group") r.fail("expected 'group <order>'");
  auto g = detail::group_body(r, r.number(h[1])).first;
  if (!r.next().empty()) r.fail("trailing content after the group table");
  return g;
}

inline GroupRef read_group(const std::string& path) {
  auto in = detail::open(path);
  return parse_group(in, path);
}

inline void write_group(std::ostream& os, const FiniteGroup& g) {
  os << "group " << g.order() << "\n";
  for (Element a = 0; a < g.order(); ++a) {
    for (Element b = 0; b < g.order(); ++b) os << (b ? " " : "") << g.mul(a, b);
    os << "\n";
  }
}

namespace detail {

/// load_group together with the file-label -> element relabeling.
inline std::pair<GroupRef, std::vector<Element>> load_group_labeled(const std::string& spec) {
  if (std::filesystem::exists(spec)) {
    auto in = open(spec);
    LineReader r(in, spec);
    auto h = r.expect("'group <order>'");
    if (h.size() != 2 || h[0] != "group") r.fail("expected 'group <order>'");
    auto out = group_body(r, r.number(h[1]));
    if (!r.next().empty()) r.fail("trailing content after the group table");
    return out;
  }
  GroupRef g;
  try {
    g = builtin_group(spec);
  } catch (const InvalidInput&) {
    throw ParseError(spec, 0, "no such file or built-in group");
  }
  std::vector<Element> id(g->order());
  std::iota(id.begin(), id.end(), Element{0});
  return {g, id};
}

}  // namespace detail

/// A path to a group file, or a built-in name such as C4, S3, D4, A4.
inline GroupRef load_group(const std::string& spec) { return detail::load_group_labeled(spec).first; }

// ---------------------------------------------------------------- towers

inline GroupTower parse_tower(std::istream& in, const std::string& file = "<input>") {
  detail::LineReader r(in, file);
  auto h = r.expect("'tower <depth>'");
  if (h.size() != 2 || h[0] != "tower") r.fail("expected 'tower <depth>'");
  const std::size_t depth = r.number(h[1]);
  if (depth == 0) r.fail("tower depth must be positive");
  std::vector<GroupRef> stages;
  std::vector<std::vector<Element>> relabels;
  for (std::size_t i = 0; i < depth; ++i) {
    auto gh = r.expect("'group <order>'");
    if (gh.size() != 2 || gh[0] != "group") r.fail("expected 'group <order>' for stage " + std::to_string(i + 1));
    auto [g, rl] = detail::group_body(r, r.number(gh[1]));
    stages.push_back(g);
    relabels.push_back(rl);
  }
  std::vector<QuotientMap> links;
  for (std::size_t i = 1; i < depth; ++i) {
    auto t = r.expect("'link " + std::to_string(i) + " ...'");
    if (t.size() < 2 || t[0] != "link" || r.number(t[1]) != i) r.fail("expected 'link " + std::to_string(i) + " ...'");
    const auto& src = stages[i];
    const auto& dst = stages[i - 1];
    if (t.size() != 2 + src->order()) r.fail("link " + std::to_string(i) + ": expected " + std::to_string(src->order()) + " entries");
    std::vector<Element> proj(src->order());
    for (std::size_t x = 0; x < src->order(); ++x) {
      const auto y = r.number(t[2 + x]);
      if (y >= dst->order()) r.fail("link entry out of range");
      proj[relabels[i][x]] = relabels[i - 1][y];
    }
    try {
      links.push_back(make_quotient_map(src, dst, std::move(proj)));
    } catch (const Error& e) {
      r.fail(e.what());
    }
  }
  if (!r.next().empty()) r.fail("trailing content after the tower");
  try {
    return GroupTower(stages, links);
  } catch (const Error& e) {
    r.fail(e.what());
  }
}

inline GroupTower read_tower(const std::string& path) {
  auto in = detail::open(path);
  return parse_tower(in, path);
}

inline void write_tower(std::ostream& os, const GroupTower& t) {
  os << "tower " << t.depth() << "\n";
  for (std::size_t l = 1; l <= t.depth(); ++l) write_group(os, *t.stage(l));
  for (std::size_t i = 1; i < t.depth(); ++i) {
    os << "link " << i;
    for (Element p : t.link(i).projection) os << " " << p;
    os << "\n";
  }
}

// ----------------------------------------------------------------- gsets

/// `base` locates the referenced group file. Action columns follow the
/// element labels of that file.
inline GSet parse_gset(std::istream& in, const std::string& file = "<input>", const std::string& base = "") {
  detail::LineReader r(in, file);
  auto h = r.expect("'gset <group-file> <size>'");
  if (h.size() != 3 || h[0] != "gset") r.fail("expected 'gset <group-file> <size>'");
  auto [g, relabel] = detail::load_group_labeled(detail::sibling(base.empty() ? file : base, h[1]));
  const std::size_t n = r.number(h[2]);
  const std::size_t order = g->order();
  std::vector<Point> act(n * order);
  for (std::size_t x = 0; x < n; ++x) {
    const auto row = r.row(order, "action row " + std::to_string(x));
    for (std::size_t e = 0; e < order; ++e) {
      if (row[e] >= n) r.fail("action entry out of range");
      act[x * order + relabel[e]] = static_cast<Point>(row[e]);
    }
  }
  if (!r.next().empty()) r.fail("trailing content after the action table");
  try {
    return GSet(g, n, std::move(act));
  } catch (const Error& e) {
    r.fail(e.what());
  }
}

inline GSet read_gset(const std::string& path) {
  auto in = detail::open(path);
  return parse_gset(in, path);
}

inline void write_gset(std::ostream& os, const GSet& x, const std::string& group_file) {
  os << "gset " << group_file << " " << x.size() << "\n";
  for (Point p = 0; p < x.size(); ++p) {
    for (Element g = 0; g < x.group()->order(); ++g) os << (g ? " " : "") << x.act(p, g);
    os << "\n";
  }
}

// ---------------------------------------------------------------- mackey

inline std::optional<GenKey> parse_gen_key(const std::string& s) {
  std::vector<std::uint32_t> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = s.find(':', start);
    const std::string tok = s.substr(start, end == std::string::npos ? std::string::npos : end - start);
    std::uint32_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || p != tok.data() + tok.size()) return std::nullopt;
    parts.push_back(v);
    if (end == std::string::npos) break;
    start = end + 1;
  }
  if (parts.size() != 5) return std::nullopt;
  return GenKey{parts[0], parts[1], SpanKey{parts[2], parts[3], parts[4]}};
}

inline MackeyFunctor parse_mackey(std::istream& in, const std::string& file = "<input>", const std::string& base = "") {
  detail::LineReader r(in, file);
  auto h = r.expect("'mackey <group-file>'");
  if (h.size() != 2 || h[0] != "mackey") r.fail("expected 'mackey <group-file>'");
  const GroupRef g = load_group(detail::sibling(base.empty() ? file : base, h[1]));
  const std::size_t n = g->lattice().class_count();
  std::vector<std::optional<AbPresentation>> levels(n);
  std::map<GenKey, IntMatrix> gens;
  for (auto t = r.next(); !t.empty(); t = r.next()) {
    if (t[0] == "level") {
      if (t.size() < 5 || t[2] != "rank" || t[4] != "torsion") r.fail("expected 'level <c> rank <r> torsion <d...>'");
      const std::size_t c = r.number(t[1]);
      if (c >= n) r.fail("level index " + std::to_string(c) + " out of range (" + std::to_string(n) + " classes)");
      if (levels[c]) r.fail("level " + std::to_string(c) + " given twice");
      std::vector<std::int64_t> tors;
      for (std::size_t i = 5; i < t.size(); ++i) tors.push_back(r.integer(t[i]));
      try {
        levels[c] = AbPresentation(r.number(t[3]), tors);
      } catch (const Error& e) {
        r.fail(e.what());
      }
    } else if (t[0] == "gen") {
      if (t.size() != 6 || t[2] != "rows" || t[4] != "cols") r.fail("expected 'gen <src:dst:cls:x0:y0> rows <r> cols <c>'");
      auto key = parse_gen_key(t[1]);
      if (!key) r.fail("malformed basis span key '" + t[1] + "'");
      IntMatrix m(r.number(t[3]), r.number(t[5]));
      if (m.cols)
        for (std::size_t i = 0; i < m.rows; ++i) {
          auto row = r.expect("matrix row");
          if (row.size() != m.cols) r.fail("matrix row: expected " + std::to_string(m.cols) + " entries");
          for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = r.integer(row[j]);
        }
      if (!gens.emplace(*key, std::move(m)).second) r.fail("generator " + t[1] + " given twice");
    } else {
      r.fail("unknown directive '" + t[0] + "'");
    }
  }
  std::vector<AbPresentation> lv;
  for (std::size_t c = 0; c < n; ++c) {
    if (!levels[c]) r.fail("level " + std::to_string(c) + " is missing");
    lv.push_back(*levels[c]);
  }
  try {
    return MackeyFunctor(g, std::move(lv), std::move(gens));
  } catch (const Error& e) {
    r.fail(e.what());
  }
}

inline MackeyFunctor read_mackey(const std::string& path) {
  auto in = detail::open(path);
  return parse_mackey(in, path);
}

inline void write_mackey(std::ostream& os, const MackeyFunctor& m, const std::string& group_file) {
  os << "mackey " << group_file << "\n";
  for (std::size_t c = 0; c < m.levels().size(); ++c) {
    os << "level " << c << " rank " << m.level(c).rank << " torsion";
    for (auto d : m.level(c).invariant_factors) os << " " << d;
    os << "\n";
  }
  for (const auto& [k, mat] : m.gens()) {
    os << "gen " << to_string(k) << " rows " << mat.rows << " cols " << mat.cols << "\n";
    if (mat.cols)
      for (std::size_t i = 0; i < mat.rows; ++i) {
        for (std::size_t j = 0; j < mat.cols; ++j) os << (j ? " " : "") << mat.at(i, j);
        os << "\n";
      }
  }
}

}  // namespace prospan
