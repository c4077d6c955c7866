#include "laxkit/errors.hpp"
#include "laxkit/expr.hpp"

#include <cctype>
#include <sstream>

namespace laxkit {

namespace {

void write_index(std::ostream& os, const MultiIndex& idx, const VarSpace& vars) {
  for (std::size_t v = 0; v < vars.arity(); ++v) {
    for (int k = 0; k < idx[v]; ++k) os << ' ' << vars.name(v);
  }
}

void write_atom(std::ostream& os, const Atom& a, const VarSpace& vars) {
  switch (a.kind) {
    case AtomKind::Identity: os << 'I'; return;
    case AtomKind::Coordinate: os << "(coord " << a.name << ')'; return;
    case AtomKind::Param: os << "(param " << a.name << ')'; return;
    case AtomKind::InverseField: os << "(finv " << a.name << ')'; return;
    case AtomKind::Field: os << "(field " << a.name; break;
    case AtomKind::Potential: os << "(pot " << a.name; break;
    case AtomKind::FrechetPotential: os << "(dpot " << a.name; break;
  }
  write_index(os, a.index, vars);
  os << ')';
}

void write_expr(std::ostream& os, const JetExpr& e, const VarSpace& vars) {
  auto list = [&](const char* head) {
    os << '(' << head;
    for (const auto& c : e.children()) {
      os << ' ';
      write_expr(os, c, vars);
    }
    os << ')';
  };
  switch (e.kind()) {
    case JetExpr::Kind::Atom: write_atom(os, e.as_atom(), vars); return;
    case JetExpr::Kind::Sum: list("+"); return;
    case JetExpr::Kind::Product: list("*"); return;
    case JetExpr::Kind::Commutator: list("comm"); return;
    case JetExpr::Kind::Inverse: list("inv"); return;
    case JetExpr::Kind::ScalarMul:
      os << "(scale " << e.scalar().get_str() << ' ';
      write_expr(os, e.children()[0], vars);
      os << ')';
      return;
  }
}

class Parser {
 public:
  Parser(std::string_view text, const VarSpace& vars) : text_(text), vars_(vars) {}

  JetExpr parse_all() {
    JetExpr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError, msg + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string token() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')') {
      ++pos_;
    }
    if (start == pos_) fail("expected a token");
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  MultiIndex parse_index() {
    MultiIndex idx(vars_.arity());
    while (!peek(')')) {
      std::string v = token();
      auto i = vars_.index_of(v);
      if (!i) fail("unknown variable '" + v + "'");
      idx = idx.incremented(*i);
    }
    return idx;
  }

  std::vector<JetExpr> parse_children() {
    std::vector<JetExpr> out;
    while (!peek(')')) out.push_back(parse_expr());
    return out;
  }

  JetExpr parse_expr() {
    skip_ws();
    if (!peek('(')) {
      std::string t = token();
      if (t == "I") return JetExpr::atom(Atom::identity());
      fail("unexpected bare token '" + t + "'");
    }
    expect('(');
    std::string head = token();
    JetExpr result;
    if (head == "+") {
      result = JetExpr::sum(parse_children());
    } else if (head == "*") {
      result = JetExpr::product(parse_children());
    } else if (head == "scale") {
      std::string r = token();
      Rational c;
      try {
        c = Rational(r);
        c.canonicalize();
      } catch (const std::invalid_argument&) {
        fail("bad rational '" + r + "'");
      }
      result = JetExpr::scaled(c, parse_expr());
    } else if (head == "comm") {
      auto ch = parse_children();
      if (ch.size() != 2) fail("comm takes two arguments");
      result = JetExpr::commutator(ch[0], ch[1]);
    } else if (head == "inv") {
      auto ch = parse_children();
      if (ch.size() != 1) fail("inv takes one argument");
      result = JetExpr::inverse(ch[0]);
    } else if (head == "field") {
      std::string name = token();
      result = JetExpr::atom(Atom::field(name, parse_index()));
    } else if (head == "pot") {
      std::string name = token();
      result = JetExpr::atom(Atom::potential(name, parse_index()));
    } else if (head == "dpot") {
      std::string name = token();
      result = JetExpr::atom(Atom::frechet_potential(name, parse_index()));
    } else if (head == "finv") {
      result = JetExpr::atom(Atom::inverse_field(token()));
    } else if (head == "param") {
      result = JetExpr::atom(Atom::param(token()));
    } else if (head == "coord") {
      std::string v = token();
      if (!vars_.index_of(v)) fail("unknown coordinate '" + v + "'");
      result = JetExpr::atom(Atom::coordinate(v));
    } else {
      fail("unknown head '" + head + "'");
    }
    expect(')');
    return result;
  }

  std::string_view text_;
  const VarSpace& vars_;
  std::size_t pos_ = 0;
};

std::string subscript(const MultiIndex& idx, const VarSpace& vars) {
  std::vector<std::string> parts;
  bool short_names = true;
  for (std::size_t v = 0; v < vars.arity(); ++v) {
    for (int k = 0; k < idx[v]; ++k) parts.push_back(vars.name(v));
    short_names = short_names && vars.name(v).size() == 1;
  }
  if (parts.empty()) return {};
  std::string s = "_";
  if (short_names) {
    for (const auto& p : parts) s += p;
    return s;
  }
  s += '{';
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + parts[i];
  return s + '}';
}

}  // namespace

std::string to_sexpr(const JetExpr& e, const VarSpace& vars) {
  std::ostringstream os;
  write_expr(os, e, vars);
  return os.str();
}

std::string to_sexpr(const Poly& p, const VarSpace& vars) {
  return to_sexpr(JetExpr::from_poly(p), vars);
}

JetExpr parse_sexpr(std::string_view text, const VarSpace& vars) {
  return Parser(text, vars).parse_all();
}

std::string pretty(const Atom& a, const VarSpace& vars) {
  switch (a.kind) {
    case AtomKind::Identity: return "I";
    case AtomKind::Coordinate: return a.name;
    case AtomKind::Param: return a.name;
    case AtomKind::InverseField: return a.name + "^-1";
    case AtomKind::Field:
    case AtomKind::Potential: return a.name + subscript(a.index, vars);
    case AtomKind::FrechetPotential: return "d" + a.name + subscript(a.index, vars);
  }
  return "?";
}

std::string pretty(const Poly& p, const VarSpace& vars) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    first = false;
    const bool unit = mag == 1;
    if (!unit || w.empty()) out += mag.get_str();
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i > 0 || !unit) out += ' ';
      out += pretty(w[i], vars);
    }
  }
  return out;
}

}  // namespace laxkit
