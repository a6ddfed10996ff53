#pragma once

// Line-oriented spec files: [field] [group] [action] [q] [kappa] [instantiate],
// or [field] [generic-lie] for a color Lie ring given by its bracket table.

#include <algorithm>
#include <fstream>
#include <numeric>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "qdrinfeld/algebra.hpp"
#include "qdrinfeld/errors.hpp"
#include "qdrinfeld/parse.hpp"

namespace qdrinfeld {

/// A color Lie ring over Q(zeta_m) given directly by basis, degrees, epsilon and brackets.
struct GenericLieSpec {
  ContextPtr ctx;
  std::size_t free_rank = 0;
  std::vector<int> torsion;
  std::vector<std::vector<Scalar>> epsilon;  // on generators of A, free first
  std::vector<std::string> labels;
  std::vector<std::vector<long>> degrees;    // coordinates, free first
  struct Bracket {
    int x, y;
    std::map<int, Scalar> value;
  };
  std::vector<Bracket> brackets;
};

using ParsedSpec = std::variant<AlgebraSpec, GenericLieSpec>;

namespace detail {

struct Line {
  int number;
  std::string text;      // comment stripped, trimmed
  int indent;            // columns trimmed from the left
};

inline std::string trim(const std::string& s, int* left = nullptr) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    if (left) *left = 0;
    return "";
  }
  std::size_t e = s.find_last_not_of(" \t\r");
  if (left) *left = static_cast<int>(b);
  return s.substr(b, e - b + 1);
}

inline int parse_int(const std::string& s, int line, int col) {
  Cursor cur(s, line, col);
  bool neg = cur.accept('-');
  long v = cur.small_integer();
  if (!cur.at_end()) cur.fail("unexpected text after integer" + cur.found());
  return static_cast<int>(neg ? -v : v);
}

/// "[a, b, c]" -> pieces; nested brackets and parentheses are kept intact.
inline std::vector<std::pair<std::string, int>> split_list(const std::string& s, int line, int col) {
  std::string t = trim(s);
  int left = 0;
  trim(s, &left);
  col += left;
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') throw ParseError("expected a bracketed list", line, col + 1);
  std::vector<std::pair<std::string, int>> out;
  int depth = 0;
  std::size_t start = 1;
  for (std::size_t k = 1; k + 1 < t.size(); ++k) {
    char c = t[k];
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.emplace_back(t.substr(start, k - start), col + static_cast<int>(start));
      start = k + 1;
    }
  }
  std::string last = t.substr(start, t.size() - 1 - start);
  if (!trim(last).empty() || !out.empty()) out.emplace_back(last, col + static_cast<int>(start));
  for (auto& [piece, c] : out) {
    int l = 0;
    piece = trim(piece, &l);
    c += l;
    if (piece.empty()) throw ParseError("empty list entry", line, c + 1);
  }
  return out;
}

inline std::vector<int> parse_int_list(const std::string& s, int line, int col) {
  std::vector<int> out;
  for (const auto& [piece, c] : split_list(s, line, col)) out.push_back(parse_int(piece, line, c));
  return out;
}

struct KeyValue {
  std::string key, value;
  int value_col;
};

inline KeyValue split_key_value(const Line& ln) {
  auto eq = ln.text.find('=');
  if (eq == std::string::npos) throw ParseError("expected 'key = value'", ln.number, ln.indent + 1);
  KeyValue kv;
  kv.key = trim(ln.text.substr(0, eq));
  int left = 0;
  kv.value = trim(ln.text.substr(eq + 1), &left);
  kv.value_col = ln.indent + static_cast<int>(eq) + 1 + left;
  return kv;
}

}  // namespace detail

/// Parses spec text into a validated algebra spec or a generic color Lie ring.
inline ParsedSpec parse_spec_text(const std::string& text) {
  using namespace detail;
  std::map<std::string, std::vector<Line>> sections;
  std::vector<std::string> order;
  std::string current;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    int left = 0;
    std::string t = trim(raw, &left);
    if (t.empty()) continue;
    if (t.front() == '[' && t.back() == ']' && t.find('=') == std::string::npos) {
      current = trim(t.substr(1, t.size() - 2));
      static const std::vector<std::string> known = {"field", "group", "action", "q", "kappa", "instantiate", "generic-lie"};
      if (std::find(known.begin(), known.end(), current) == known.end())
        throw ParseError("unknown section [" + current + "]", number, left + 1);
      if (sections.count(current)) throw ParseError("section [" + current + "] appears twice", number, left + 1);
      sections[current];
      order.push_back(current);
      continue;
    }
    if (current.empty()) throw ParseError("content before the first section header", number, left + 1);
    sections[current].push_back(Line{number, t, left});
  }

  if (!sections.count("field")) throw ParseError("missing [field] section");
  int conductor = 0;
  std::vector<std::string> params;
  for (const auto& ln : sections["field"]) {
    auto kv = split_key_value(ln);
    if (kv.key == "conductor") {
      conductor = parse_int(kv.value, ln.number, kv.value_col);
      if (conductor < 1) throw ParseError("conductor must be positive", ln.number, kv.value_col + 1);
    } else if (kv.key == "params") {
      std::istringstream ps(kv.value);
      std::string name;
      while (std::getline(ps, name, ',')) {
        name = trim(name);
        if (name.empty()) continue;
        Cursor cur(name, ln.number, kv.value_col);
        if (!cur.peek_ident() || cur.ident() != name)
          throw ParseError("bad parameter name '" + name + "'", ln.number, kv.value_col + 1);
        if (name == "zeta" || name == "g") throw ParseError("parameter name '" + name + "' is reserved", ln.number, kv.value_col + 1);
        params.push_back(name);
      }
    } else {
      throw ParseError("unknown key '" + kv.key + "' in [field]", ln.number, ln.indent + 1);
    }
  }

  if (sections.count("generic-lie")) {
    for (const char* s : {"group", "action", "q", "kappa", "instantiate"})
      if (sections.count(s)) throw ParseError(std::string("[generic-lie] cannot be combined with [") + s + "]");
    GenericLieSpec gl;
    std::vector<const Line*> eps_line;
    std::vector<Line> later;
    for (const auto& ln : sections["generic-lie"]) {
      if (ln.text.rfind("basis ", 0) == 0 || ln.text.rfind("bracket ", 0) == 0) {
        later.push_back(ln);
        continue;
      }
      auto kv = split_key_value(ln);
      if (kv.key == "free_rank") {
        int a = parse_int(kv.value, ln.number, kv.value_col);
        if (a < 0) throw ParseError("free_rank must be >= 0", ln.number, kv.value_col + 1);
        gl.free_rank = static_cast<std::size_t>(a);
      } else if (kv.key == "torsion") {
        gl.torsion = parse_int_list(kv.value, ln.number, kv.value_col);
      } else if (kv.key == "epsilon") {
        eps_line.push_back(&ln);
      } else {
        throw ParseError("unknown key '" + kv.key + "' in [generic-lie]", ln.number, ln.indent + 1);
      }
    }
    int m = 1;
    for (int t : gl.torsion) {
      if (t < 1) throw ParseError("torsion orders must be >= 1");
      m = std::lcm(m, t);
    }
    if (conductor == 0) conductor = std::lcm(m, 2);
    gl.ctx = make_context(conductor, params);
    const std::size_t gens = gl.free_rank + gl.torsion.size();
    if (eps_line.size() != 1) throw ParseError("[generic-lie] needs exactly one 'epsilon =' table");
    {
      const Line& ln = *eps_line.front();
      auto kv = split_key_value(ln);
      auto rows = split_list(kv.value, ln.number, kv.value_col);
      if (rows.size() != gens)
        throw ParseError("epsilon needs " + std::to_string(gens) + " rows", ln.number, kv.value_col + 1);
      for (const auto& [row, c] : rows) {
        auto entries = split_list(row, ln.number, c);
        if (entries.size() != gens)
          throw ParseError("epsilon row needs " + std::to_string(gens) + " entries", ln.number, c + 1);
        std::vector<Scalar> r;
        for (const auto& [e, ec] : entries) r.push_back(parse_scalar(e, gl.ctx, ln.number, ec));
        gl.epsilon.push_back(std::move(r));
      }
    }
    auto label_index = [&gl](const std::string& name) -> int {
      for (std::size_t k = 0; k < gl.labels.size(); ++k)
        if (gl.labels[k] == name) return static_cast<int>(k);
      return -1;
    };
    for (const auto& ln : later) {
      if (ln.text.rfind("basis ", 0) != 0) continue;
      auto kv = split_key_value(ln);
      std::string label = trim(kv.key.substr(6));
      Cursor cur(label, ln.number, ln.indent + 6);
      if (!cur.peek_ident() || cur.ident() != label) throw ParseError("bad basis label '" + label + "'", ln.number, ln.indent + 7);
      if (label_index(label) >= 0) throw ParseError("basis label '" + label + "' repeated", ln.number, ln.indent + 7);
      if (label == "zeta" || label == "g" || gl.ctx->param_index(label))
        throw ParseError("basis label '" + label + "' clashes with a reserved name or parameter", ln.number, ln.indent + 7);
      auto deg = parse_int_list(kv.value, ln.number, kv.value_col);
      if (deg.size() != gens)
        throw ParseError("degree needs " + std::to_string(gens) + " coordinates", ln.number, kv.value_col + 1);
      gl.labels.push_back(label);
      gl.degrees.emplace_back(deg.begin(), deg.end());
    }
    if (gl.labels.empty()) throw ParseError("[generic-lie] declares no basis elements");
    for (const auto& ln : later) {
      if (ln.text.rfind("bracket ", 0) != 0) continue;
      auto kv = split_key_value(ln);
      std::istringstream names(kv.key.substr(8));
      std::string xs, ys, extra;
      names >> xs >> ys;
      if (xs.empty() || ys.empty() || (names >> extra)) throw ParseError("expected 'bracket X Y = ...'", ln.number, ln.indent + 1);
      int x = label_index(xs), y = label_index(ys);
      if (x < 0 || y < 0) throw ParseError("unknown basis label in bracket", ln.number, ln.indent + 9);
      // the value is a linear combination of basis labels with scalar coefficients
      std::vector<std::string> letter_names = gl.labels;
      RewriteSystem sys(gl.ctx, AbelianGroup(), std::vector<Character>(gl.labels.size(), Character{}), letter_names);
      Cursor cur(kv.value, ln.number, kv.value_col);
      ElementOps ops{&sys};
      ExpressionParser<ElementOps> parser(ops, cur);
      NCElement v = parser.parse_all();
      GenericLieSpec::Bracket b{x, y, {}};
      for (const auto& [k, c] : v.terms()) {
        if (k.word.size() != 1) throw ParseError("bracket value must be linear in the basis", ln.number, kv.value_col + 1);
        b.value[k.word[0]] = c;
      }
      for (const auto& prev : gl.brackets)
        if (prev.x == x && prev.y == y) throw ParseError("bracket " + xs + " " + ys + " given twice", ln.number, ln.indent + 1);
      gl.brackets.push_back(std::move(b));
    }
    return gl;
  }

  for (const char* s : {"group", "action"})
    if (!sections.count(s)) throw ParseError(std::string("missing [") + s + "] section");

  RawSpec rs;
  for (const auto& ln : sections["group"]) {
    auto kv = split_key_value(ln);
    if (kv.key != "orders") throw ParseError("unknown key '" + kv.key + "' in [group]", ln.number, ln.indent + 1);
    rs.orders = parse_int_list(kv.value, ln.number, kv.value_col);
    for (int o : rs.orders)
      if (o < 1) throw ParseError("group orders must be >= 1", ln.number, kv.value_col + 1);
  }
  int exponent = 1;
  for (int o : rs.orders) exponent = std::lcm(exponent, o);
  if (conductor == 0) conductor = exponent;
  rs.ctx = make_context(conductor, params);

  int declared_n = -1;
  for (const auto& ln : sections["action"]) {
    auto kv = split_key_value(ln);
    if (kv.key == "characters") {
      for (const auto& [row, c] : split_list(kv.value, ln.number, kv.value_col)) {
        auto exps = row == "[]" ? std::vector<int>{} : parse_int_list(row, ln.number, c);
        if (exps.size() != rs.orders.size())
          throw ParseError("character needs " + std::to_string(rs.orders.size()) + " entries", ln.number, c + 1);
        rs.characters.push_back(std::move(exps));
      }
    } else if (kv.key == "n") {
      declared_n = parse_int(kv.value, ln.number, kv.value_col);
    } else {
      throw ParseError("unknown key '" + kv.key + "' in [action]", ln.number, ln.indent + 1);
    }
  }
  if (declared_n >= 0 && declared_n != static_cast<int>(rs.characters.size()))
    throw ParseError("n = " + std::to_string(declared_n) + " but " + std::to_string(rs.characters.size()) +
                     " characters given");

  for (const auto& ln : sections["q"]) {
    auto kv = split_key_value(ln);
    std::istringstream ij(kv.key);
    std::string a, b, extra;
    ij >> a >> b;
    if (a.empty() || b.empty() || (ij >> extra)) throw ParseError("expected 'i j = expr'", ln.number, ln.indent + 1);
    rs.q.push_back(RawSpec::QEntry{parse_int(a, ln.number, ln.indent), parse_int(b, ln.number, ln.indent),
                                   parse_scalar(kv.value, rs.ctx, ln.number, kv.value_col), ln.number});
  }

  for (const auto& ln : sections["kappa"]) {
    auto arrow = ln.text.find("->");
    if (arrow == std::string::npos) throw ParseError("expected 'i j -> r [g] expr ; ...'", ln.number, ln.indent + 1);
    std::istringstream ij(ln.text.substr(0, arrow));
    std::string a, b, extra;
    ij >> a >> b;
    if (a.empty() || b.empty() || (ij >> extra)) throw ParseError("expected 'i j ->'", ln.number, ln.indent + 1);
    RawSpec::KappaEntry entry{parse_int(a, ln.number, ln.indent), parse_int(b, ln.number, ln.indent), {}, ln.number};
    std::string rest = ln.text.substr(arrow + 2);
    int base = ln.indent + static_cast<int>(arrow) + 2;
    std::size_t start = 0;
    while (start <= rest.size()) {
      std::size_t semi = rest.find(';', start);
      std::string piece = rest.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
      int col = base + static_cast<int>(start);
      int left = 0;
      piece = trim(piece, &left);
      col += left;
      if (piece.empty()) {
        if (semi == std::string::npos && entry.terms.empty() && start == 0) break;  // "i j ->" alone: zero
        throw ParseError("empty kappa term", ln.number, col + 1);
      }
      auto lb = piece.find('['), rb = piece.find(']');
      if (lb == std::string::npos || rb == std::string::npos || rb < lb)
        throw ParseError("expected 'r [g] expr'", ln.number, col + 1);
      int r = parse_int(trim(piece.substr(0, lb)), ln.number, col);
      std::vector<int> g = parse_int_list(piece.substr(lb, rb - lb + 1), ln.number, col + static_cast<int>(lb));
      std::string expr = piece.substr(rb + 1);
      int el = 0;
      expr = trim(expr, &el);
      if (expr.empty()) throw ParseError("missing kappa coefficient", ln.number, col + static_cast<int>(rb) + 2);
      entry.terms.emplace_back(r, g, parse_scalar(expr, rs.ctx, ln.number, col + static_cast<int>(rb) + 1 + el));
      if (semi == std::string::npos) break;
      start = semi + 1;
    }
    rs.kappa.push_back(std::move(entry));
  }

  for (const auto& ln : sections["instantiate"]) {
    auto kv = split_key_value(ln);
    for (const auto& [name, v] : rs.instantiate)
      if (name == kv.key) throw ParseError("parameter '" + kv.key + "' instantiated twice", ln.number, ln.indent + 1);
    if (!rs.ctx->param_index(kv.key))
      throw ParseError("instantiate: unknown parameter '" + kv.key + "'", ln.number, ln.indent + 1);
    rs.instantiate.emplace_back(kv.key, parse_scalar(kv.value, rs.ctx, ln.number, kv.value_col));
  }

  return validate_spec(rs);
}

inline ParsedSpec parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open spec file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_spec_text(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  } catch (const SpecError& e) {
    throw SpecError(path + ": " + e.what());
  }
}

inline AlgebraSpec parse_algebra_spec(const std::string& text) {
  ParsedSpec p = parse_spec_text(text);
  if (!std::holds_alternative<AlgebraSpec>(p)) throw SpecError("expected an algebra spec, found [generic-lie]");
  return std::get<AlgebraSpec>(std::move(p));
}

namespace detail {

inline std::string field_section(const ContextPtr& ctx) {
  std::string out = "[field]\nconductor = " + std::to_string(ctx->conductor()) + "\n";
  if (!ctx->params().empty()) {
    out += "params = ";
    for (std::size_t k = 0; k < ctx->params().size(); ++k) out += (k ? ", " : "") + ctx->params()[k];
    out += "\n";
  }
  return out;
}

inline std::string int_list(const std::vector<int>& v) {
  std::string out = "[";
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? ", " : "") + std::to_string(v[k]);
  return out + "]";
}

}  // namespace detail

/// Canonical text of a spec: every section, all q_ij with i < j, sorted kappa terms.
inline std::string format_spec(const AlgebraSpec& s) {
  using detail::int_list;
  std::string out = detail::field_section(s.ctx());
  out += "\n[group]\norders = " + int_list(s.group().orders()) + "\n";
  out += "\n[action]\ncharacters = [";
  for (int i = 0; i < s.n(); ++i) out += (i ? ", " : "") + int_list(s.chi(i).exps);
  out += "]\n\n[q]\n";
  for (int i = 0; i < s.n(); ++i)
    for (int j = i + 1; j < s.n(); ++j)
      out += std::to_string(i + 1) + " " + std::to_string(j + 1) + " = " + s.q(i, j).to_string() + "\n";
  out += "\n[kappa]\n";
  for (const auto& [ij, value] : s.kappa_table()) {
    out += std::to_string(ij.first + 1) + " " + std::to_string(ij.second + 1) + " ->";
    for (std::size_t k = 0; k < value.size(); ++k) {
      out += k ? " ; " : " ";
      out += std::to_string(value[k].r + 1) + " " + int_list(value[k].g.exps) + " " + value[k].c.to_string();
    }
    out += "\n";
  }
  if (!s.instantiation().empty()) {
    out += "\n[instantiate]\n";
    for (const auto& name : s.params()) {
      auto it = s.instantiation().find(name);
      if (it != s.instantiation().end()) out += name + " = " + it->second.to_string() + "\n";
    }
  }
  return out;
}

inline std::string format_spec(const GenericLieSpec& g) {
  std::string out = detail::field_section(g.ctx);
  out += "\n[generic-lie]\nfree_rank = " + std::to_string(g.free_rank) + "\n";
  out += "torsion = " + detail::int_list(g.torsion) + "\n";
  out += "epsilon = [";
  for (std::size_t r = 0; r < g.epsilon.size(); ++r) {
    out += r ? ", [" : "[";
    for (std::size_t c = 0; c < g.epsilon[r].size(); ++c) out += (c ? ", " : "") + g.epsilon[r][c].to_string();
    out += "]";
  }
  out += "]\n";
  for (std::size_t k = 0; k < g.labels.size(); ++k) {
    std::vector<int> d(g.degrees[k].begin(), g.degrees[k].end());
    out += "basis " + g.labels[k] + " = " + detail::int_list(d) + "\n";
  }
  auto brackets = g.brackets;
  std::sort(brackets.begin(), brackets.end(),
            [](const auto& a, const auto& b) { return std::tie(a.x, a.y) < std::tie(b.x, b.y); });
  for (const auto& b : brackets) {
    NCElement e(g.ctx);
    for (const auto& [x, c] : b.value) e.add_term(NCKey{Word{x}, 0}, c);
    std::string v = RewriteSystem::element_to_string(e, [&g](const NCKey& k) { return g.labels.at(k.word.at(0)); });
    out += "bracket " + g.labels[b.x] + " " + g.labels[b.y] + " = " + v + "\n";
  }
  return out;
}

inline std::string format_spec(const ParsedSpec& p) {
  return std::visit([](const auto& s) { return format_spec(s); }, p);
}

}  // namespace qdrinfeld
