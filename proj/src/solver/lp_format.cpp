#include "ltlplan/solver/lp_format.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace ltlplan::solver {

const char* to_string(LpProfile p) {
  return p == LpProfile::Linear ? "linear" : "quadratic";
}

LpFormatError::LpFormatError(int line, const std::string& what)
    : std::runtime_error("LP line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool valid_name(const std::string& s) {
  if (s.empty() || s.size() > 255) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.') {
      return false;
    }
  }
  // Section keywords and "inf" cannot be names.
  std::string lower;
  for (char c : s) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  static const std::unordered_set<std::string> reserved = {
      "inf", "infinity", "free", "st", "end", "bounds", "binaries", "binary",
      "bin", "generals", "general", "minimize", "maximize", "min", "max",
      "subject", "such", "s.t.", "st."};
  return !reserved.contains(lower);
}

class LineWriter {
 public:
  explicit LineWriter(std::ostream& out) : out_(out) {}

  void start(const std::string& head) {
    line_ = head;
    first_ = true;
  }
  void term(double coef, const std::string& body) {
    std::string piece;
    if (coef < 0) {
      piece = (first_ ? "-" : "- ") + num(-coef) + " " + body;
    } else {
      piece = (first_ ? "" : "+ ") + num(coef) + " " + body;
    }
    add(piece);
    first_ = false;
  }
  void raw(const std::string& piece) { add(piece); }
  void finish() {
    out_ << line_ << '\n';
    line_.clear();
  }
  bool empty_expr() const { return first_; }
  void set_first(bool f) { first_ = f; }

 private:
  void add(const std::string& piece) {
    // Keep lines bounded for readers with fixed line buffers.
    if (line_.size() + piece.size() + 1 > 240) {
      out_ << line_ << '\n';
      line_ = "   ";
    }
    line_ += " " + piece;
  }

  std::ostream& out_;
  std::string line_;
  bool first_ = true;
};

void write_quad(LineWriter& w, const std::vector<QuadTerm>& quad, const Model& m,
                double scale) {
  w.raw(w.empty_expr() ? "[" : "+ [");
  w.set_first(true);
  for (const auto& q : quad) {
    const std::string& a = m.variable(q.i).name;
    const std::string& b = m.variable(q.j).name;
    w.term(q.coef * scale, q.i == q.j ? a + "^2" : a + " * " + b);
  }
  w.set_first(false);
  w.raw(scale == 2.0 ? "] / 2" : "]");
}

}  // namespace

void write_lp(const Model& model, std::ostream& out, LpProfile profile,
              const std::string& problem_name) {
  if (profile == LpProfile::Linear && !model.quadratic_rows().empty()) {
    throw std::invalid_argument(
        "write_lp: model has quadratic rows but the linear profile was requested");
  }
  std::unordered_set<std::string> seen;
  for (const auto& v : model.variables()) {
    if (!valid_name(v.name)) throw std::invalid_argument("write_lp: bad variable name '" + v.name + "'");
  }
  for (const auto& r : model.rows()) {
    if (!valid_name(r.name) || !seen.insert(r.name).second) {
      throw std::invalid_argument("write_lp: bad or duplicate row name '" + r.name + "'");
    }
  }
  for (const auto& r : model.quadratic_rows()) {
    if (!valid_name(r.name) || !seen.insert(r.name).second) {
      throw std::invalid_argument("write_lp: bad or duplicate row name '" + r.name + "'");
    }
  }

  out << "\\ Problem: " << problem_name << '\n';
  out << "\\ Profile: " << to_string(profile) << '\n';
  out << "\\ Variables: " << model.num_variables() << "  Binaries: " << model.num_binaries()
      << "  Rows: " << model.num_rows() + static_cast<int>(model.quadratic_rows().size())
      << '\n';
  out << "Minimize\n";
  LineWriter w(out);
  const auto& obj = model.objective();
  w.start(" obj:");
  for (const auto& t : obj.linear) w.term(t.coef, model.variable(t.var).name);
  if (!obj.quad.empty()) write_quad(w, obj.quad, model, 2.0);
  if (obj.constant != 0.0 || w.empty_expr()) {
    if (w.empty_expr()) {
      w.raw(num(obj.constant));
    } else {
      w.raw(obj.constant < 0 ? "- " + num(-obj.constant) : "+ " + num(obj.constant));
    }
  }
  w.finish();

  out << "Subject To\n";
  auto sense_str = [](Sense s) {
    return s == Sense::LessEqual ? "<=" : s == Sense::Equal ? "=" : ">=";
  };
  for (const auto& r : model.rows()) {
    w.start(" " + r.name + ":");
    for (const auto& t : r.terms) w.term(t.coef, model.variable(t.var).name);
    if (w.empty_expr()) {
      if (model.num_variables() == 0) {
        throw std::invalid_argument("write_lp: empty row in a model without variables");
      }
      w.term(0.0, model.variable(0).name);
    }
    w.raw(std::string(sense_str(r.sense)) + " " + num(r.rhs));
    w.finish();
  }
  for (const auto& r : model.quadratic_rows()) {
    w.start(" " + r.name + ":");
    for (const auto& t : r.linear) w.term(t.coef, model.variable(t.var).name);
    write_quad(w, r.quad, model, 1.0);
    w.raw("<= " + num(r.rhs));
    w.finish();
  }

  out << "Bounds\n";
  for (const auto& v : model.variables()) {
    if (std::isinf(v.lower) && std::isinf(v.upper)) {
      out << " " << v.name << " free\n";
    } else if (v.lower == v.upper) {
      out << " " << v.name << " = " << num(v.lower) << '\n';
    } else {
      out << " " << (std::isinf(v.lower) ? "-inf" : num(v.lower)) << " <= " << v.name
          << " <= " << (std::isinf(v.upper) ? "+inf" : num(v.upper)) << '\n';
    }
  }
  if (model.num_binaries() > 0) {
    out << "Binaries\n";
    for (const auto& v : model.variables()) {
      if (v.kind == VarKind::Binary) out << " " << v.name << '\n';
    }
  }
  out << "End\n";
}

void write_lp_file(const Model& model, const std::filesystem::path& path,
                   LpProfile profile, const std::string& problem_name) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_lp(model, f, profile, problem_name);
  f.close();
  if (!f) throw std::runtime_error("error writing '" + path.string() + "'");
}

namespace {

enum class Section { None, Objective, Constraints, Bounds, Binaries, Generals, End };

struct Token {
  enum Kind { Name, Number, Op } kind;
  std::string text;
  double value = 0.0;
  int line = 0;
};

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::vector<Token> tokenize(const std::string& text, int line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '<' || c == '>' || c == '=') {
      std::string op(1, c);
      ++i;
      if (i < text.size() && text[i] == '=') {
        ++i;
      }
      if (op == "=" && i < text.size() && (text[i] == '<' || text[i] == '>')) {
        op = std::string(1, text[i]);
        ++i;
      }
      if (op == "<") op = "<=";
      if (op == ">") op = ">=";
      out.push_back({Token::Op, op, 0.0, line});
      continue;
    }
    if (c == '+' || c == '-' || c == '*' || c == '^' || c == '/' || c == '[' || c == ']' ||
        c == ':') {
      out.push_back({Token::Op, std::string(1, c), 0.0, line});
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = text.c_str() + i;
      char* end = nullptr;
      double v = std::strtod(begin, &end);
      if (end == begin) throw LpFormatError(line, "bad number");
      out.push_back({Token::Number, std::string(begin, static_cast<std::size_t>(end - begin)), v, line});
      i += static_cast<std::size_t>(end - begin);
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) &&
           std::string_view("+-*^/[]:<>=").find(text[j]) == std::string_view::npos) {
      ++j;
    }
    std::string name = text.substr(i, j - i);
    std::string l = lower(name);
    if (l == "inf" || l == "infinity") {
      out.push_back({Token::Number, name, kInf, line});
    } else {
      out.push_back({Token::Name, name, 0.0, line});
    }
    i = j;
  }
  return out;
}

struct Expr {
  std::vector<std::pair<std::string, double>> linear;
  std::vector<std::tuple<std::string, std::string, double>> quad;
  double constant = 0.0;
};

class Reader {
 public:
  Model read(std::istream& in) {
    std::string raw;
    int line_no = 0;
    Section section = Section::None;
    std::vector<Token> objective;
    std::vector<Token> constraints;
    std::vector<std::vector<Token>> bound_lines;
    std::vector<Token> binaries;
    while (std::getline(in, raw)) {
      ++line_no;
      auto cut = raw.find('\\');
      if (cut != std::string::npos) raw.resize(cut);
      std::string trimmed = raw;
      trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
      trimmed.erase(trimmed.find_last_not_of(" \t\r") + 1);
      if (trimmed.empty()) continue;
      std::string key = lower(trimmed);
      if (key == "minimize" || key == "minimum" || key == "min") {
        section = Section::Objective;
        continue;
      }
      if (key == "maximize" || key == "max" || key == "maximum") {
        throw LpFormatError(line_no, "maximization is not supported");
      }
      if (key == "subject to" || key == "such that" || key == "st" || key == "s.t.") {
        section = Section::Constraints;
        continue;
      }
      if (key == "bounds" || key == "bound") {
        section = Section::Bounds;
        continue;
      }
      if (key == "binaries" || key == "binary" || key == "bin") {
        section = Section::Binaries;
        continue;
      }
      if (key == "generals" || key == "general" || key == "gen") {
        section = Section::Generals;
        continue;
      }
      if (key == "end") {
        section = Section::End;
        continue;
      }
      auto toks = tokenize(trimmed, line_no);
      switch (section) {
        case Section::Objective:
          objective.insert(objective.end(), toks.begin(), toks.end());
          break;
        case Section::Constraints:
          constraints.insert(constraints.end(), toks.begin(), toks.end());
          break;
        case Section::Bounds:
          bound_lines.push_back(std::move(toks));
          break;
        case Section::Binaries:
          binaries.insert(binaries.end(), toks.begin(), toks.end());
          break;
        case Section::Generals:
          throw LpFormatError(line_no, "general integers are not supported");
        case Section::None:
          throw LpFormatError(line_no, "content before the objective section");
        case Section::End:
          throw LpFormatError(line_no, "content after End");
      }
    }
    if (section != Section::End) throw LpFormatError(line_no, "missing End");

    // Variable order: Bounds section first, then first appearance elsewhere.
    for (const auto& bl : bound_lines) {
      for (const auto& t : bl) {
        if (t.kind == Token::Name && lower(t.text) != "free") declare(t.text);
      }
    }

    // Objective.
    std::size_t pos = 0;
    if (objective.size() >= 2 && objective[0].kind == Token::Name &&
        objective[1].text == ":") {
      pos = 2;
    }
    Expr obj = parse_expr(objective, pos, true);
    if (pos != objective.size()) throw LpFormatError(objective[pos].line, "unexpected token in objective");

    struct PendingRow {
      std::string name;
      Expr expr;
      Sense sense;
      double rhs;
      int line;
    };
    std::vector<PendingRow> rows;
    pos = 0;
    int unnamed = 0;
    while (pos < constraints.size()) {
      PendingRow r;
      r.line = constraints[pos].line;
      if (pos + 1 < constraints.size() && constraints[pos].kind == Token::Name &&
          constraints[pos + 1].text == ":") {
        r.name = constraints[pos].text;
        pos += 2;
      } else {
        r.name = "R" + std::to_string(++unnamed);
      }
      r.expr = parse_expr(constraints, pos, false);
      if (pos >= constraints.size() || constraints[pos].kind != Token::Op) {
        throw LpFormatError(r.line, "expected a relational operator in row '" + r.name + "'");
      }
      const std::string& op = constraints[pos].text;
      if (op == "<=") {
        r.sense = Sense::LessEqual;
      } else if (op == ">=") {
        r.sense = Sense::GreaterEqual;
      } else if (op == "=") {
        r.sense = Sense::Equal;
      } else {
        throw LpFormatError(r.line, "expected a relational operator, found '" + op + "'");
      }
      ++pos;
      double sign = 1.0;
      if (pos < constraints.size() && (constraints[pos].text == "-" || constraints[pos].text == "+")) {
        sign = constraints[pos].text == "-" ? -1.0 : 1.0;
        ++pos;
      }
      if (pos >= constraints.size() || constraints[pos].kind != Token::Number) {
        throw LpFormatError(r.line, "expected a right-hand side in row '" + r.name + "'");
      }
      r.rhs = sign * constraints[pos].value - r.expr.constant;
      ++pos;
      rows.push_back(std::move(r));
    }

    // Bounds.
    std::map<std::string, std::pair<double, double>, std::less<>> bounds;
    for (const auto& bl : bound_lines) parse_bound(bl, bounds);
    std::unordered_set<std::string> binary_set;
    for (const auto& t : binaries) {
      if (t.kind != Token::Name) throw LpFormatError(t.line, "expected a variable name");
      declare(t.text);
      binary_set.insert(t.text);
    }

    Model m;
    for (const auto& name : order_) {
      bool bin = binary_set.contains(name);
      double lo = 0.0;
      double hi = bin ? 1.0 : kInf;
      if (auto it = bounds.find(name); it != bounds.end()) {
        lo = it->second.first;
        hi = it->second.second;
      }
      m.add_variable(name, bin ? VarKind::Binary : VarKind::Continuous, lo, hi);
    }
    for (const auto& r : rows) {
      if (r.expr.quad.empty()) {
        std::vector<Term> terms;
        for (const auto& [n, c] : r.expr.linear) terms.push_back({index_.at(n), c});
        m.add_row(r.name, std::move(terms), r.sense, r.rhs);
      } else {
        if (r.sense != Sense::LessEqual) {
          throw LpFormatError(r.line, "quadratic rows must use <=");
        }
        QuadraticRow q;
        q.name = r.name;
        for (const auto& [n, c] : r.expr.linear) q.linear.push_back({index_.at(n), c});
        for (const auto& [a, b, c] : r.expr.quad) {
          int i = index_.at(a);
          int j = index_.at(b);
          q.quad.push_back({std::min(i, j), std::max(i, j), c});
        }
        q.rhs = r.rhs;
        m.add_quadratic_row(std::move(q));
      }
    }
    Objective o;
    for (const auto& [n, c] : obj.linear) o.linear.push_back({index_.at(n), c});
    for (const auto& [a, b, c] : obj.quad) {
      int i = index_.at(a);
      int j = index_.at(b);
      o.quad.push_back({std::min(i, j), std::max(i, j), c});
    }
    o.constant = obj.constant;
    m.set_objective(std::move(o));
    m.finalize_objective();
    return m;
  }

 private:
  void declare(const std::string& name) {
    if (index_.emplace(name, static_cast<int>(order_.size())).second) order_.push_back(name);
  }

  // Parses a sum of terms up to a relational operator or the end.
  Expr parse_expr(const std::vector<Token>& t, std::size_t& pos, bool objective) {
    Expr e;
    bool first = true;
    while (pos < t.size()) {
      const Token& tok = t[pos];
      if (tok.kind == Token::Op && (tok.text == "<=" || tok.text == ">=" || tok.text == "=")) break;
      // A "name :" pair starts the next constraint.
      if (!objective && tok.kind == Token::Name && pos + 1 < t.size() && t[pos + 1].text == ":") {
        throw LpFormatError(tok.line, "row label inside an expression");
      }
      double sign = 1.0;
      if (tok.kind == Token::Op && (tok.text == "+" || tok.text == "-")) {
        sign = tok.text == "-" ? -1.0 : 1.0;
        ++pos;
      } else if (!first) {
        throw LpFormatError(tok.line, "expected '+' or '-' before '" + tok.text + "'");
      }
      first = false;
      if (pos >= t.size()) throw LpFormatError(tok.line, "dangling sign");
      if (t[pos].text == "[") {
        ++pos;
        parse_bracket(t, pos, e, sign);
        continue;
      }
      double coef = 1.0;
      if (t[pos].kind == Token::Number) {
        coef = t[pos].value;
        ++pos;
        if (pos >= t.size() || t[pos].kind != Token::Name) {
          e.constant += sign * coef;
          continue;
        }
      }
      if (t[pos].kind != Token::Name) {
        throw LpFormatError(t[pos].line, "expected a variable, found '" + t[pos].text + "'");
      }
      std::string name = t[pos].text;
      ++pos;
      declare(name);
      e.linear.emplace_back(name, sign * coef);
    }
    return e;
  }

  void parse_bracket(const std::vector<Token>& t, std::size_t& pos, Expr& e, double outer) {
    std::vector<std::tuple<std::string, std::string, double>> quad;
    bool first = true;
    while (pos < t.size() && t[pos].text != "]") {
      double sign = 1.0;
      if (t[pos].text == "+" || t[pos].text == "-") {
        sign = t[pos].text == "-" ? -1.0 : 1.0;
        ++pos;
      } else if (!first) {
        throw LpFormatError(t[pos].line, "expected '+' or '-' inside brackets");
      }
      first = false;
      double coef = 1.0;
      if (pos < t.size() && t[pos].kind == Token::Number) {
        coef = t[pos].value;
        ++pos;
      }
      if (pos >= t.size() || t[pos].kind != Token::Name) {
        throw LpFormatError(t[std::min(pos, t.size() - 1)].line, "expected a variable inside brackets");
      }
      std::string a = t[pos++].text;
      declare(a);
      if (pos < t.size() && t[pos].text == "^") {
        ++pos;
        if (pos >= t.size() || t[pos].kind != Token::Number || t[pos].value != 2.0) {
          throw LpFormatError(t[pos - 1].line, "only squares are supported");
        }
        ++pos;
        quad.emplace_back(a, a, sign * coef);
      } else if (pos < t.size() && t[pos].text == "*") {
        ++pos;
        if (pos >= t.size() || t[pos].kind != Token::Name) {
          throw LpFormatError(t[pos - 1].line, "expected a variable after '*'");
        }
        std::string b = t[pos++].text;
        declare(b);
        quad.emplace_back(a, b, sign * coef);
      } else {
        throw LpFormatError(t[pos - 1].line, "linear term inside brackets");
      }
    }
    if (pos >= t.size()) throw LpFormatError(t.back().line, "unterminated '['");
    ++pos;
    double scale = 1.0;
    if (pos + 1 < t.size() && t[pos].text == "/" && t[pos + 1].kind == Token::Number) {
      scale = 1.0 / t[pos + 1].value;
      pos += 2;
    }
    for (auto& [a, b, c] : quad) e.quad.emplace_back(a, b, outer * c * scale);
  }

  void parse_bound(const std::vector<Token>& t,
                   std::map<std::string, std::pair<double, double>, std::less<>>& bounds) {
    auto value_at = [&](std::size_t& p) {
      double sign = 1.0;
      if (p < t.size() && (t[p].text == "-" || t[p].text == "+")) {
        sign = t[p].text == "-" ? -1.0 : 1.0;
        ++p;
      }
      if (p >= t.size() || t[p].kind != Token::Number) {
        throw LpFormatError(t.empty() ? 0 : t[0].line, "expected a bound value");
      }
      return sign * t[p++].value;
    };
    auto get = [&](const std::string& n) -> std::pair<double, double>& {
      auto it = bounds.find(n);
      if (it == bounds.end()) it = bounds.emplace(n, std::make_pair(0.0, kInf)).first;
      return it->second;
    };
    if (t.size() == 2 && t[0].kind == Token::Name && lower(t[1].text) == "free") {
      get(t[0].text) = {-kInf, kInf};
      return;
    }
    std::size_t p = 0;
    if (t[0].kind == Token::Name) {
      std::string n = t[0].text;
      p = 1;
      if (p >= t.size()) throw LpFormatError(t[0].line, "incomplete bound");
      std::string op = t[p++].text;
      double v = value_at(p);
      auto& b = get(n);
      if (op == "<=") {
        b.second = v;
      } else if (op == ">=") {
        b.first = v;
      } else if (op == "=") {
        b = {v, v};
      } else {
        throw LpFormatError(t[0].line, "bad bound operator");
      }
      if (p != t.size()) throw LpFormatError(t[0].line, "trailing tokens in bound");
      return;
    }
    double lo = value_at(p);
    if (p >= t.size() || t[p].text != "<=") throw LpFormatError(t[0].line, "expected '<='");
    ++p;
    if (p >= t.size() || t[p].kind != Token::Name) throw LpFormatError(t[0].line, "expected a variable");
    std::string n = t[p++].text;
    auto& b = get(n);
    b.first = lo;
    if (p < t.size()) {
      if (t[p].text != "<=") throw LpFormatError(t[0].line, "expected '<='");
      ++p;
      b.second = value_at(p);
    }
    if (p != t.size()) throw LpFormatError(t[0].line, "trailing tokens in bound");
  }

  std::unordered_map<std::string, int> index_;
  std::vector<std::string> order_;
};

}  // namespace

Model read_lp(std::istream& in) { return Reader().read(in); }

Model read_lp_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path.string() + "'");
  return read_lp(f);
}

}  // namespace ltlplan::solver
