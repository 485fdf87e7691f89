#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>

#include "fv1d/errors.hpp"
#include "fv1d/problems.hpp"

namespace fv1d {

namespace detail {

/// Recursive-descent parser for arithmetic in the variable x.
///
///   sum     := product (('+' | '-') product)*
///   product := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' unary)?
///   primary := number | 'x' | ('sin'|'cos'|'exp') '(' sum ')' | '(' sum ')'
///
/// '^' is right associative and binds tighter than unary minus, so
/// -x^2 means -(x^2) and 2^-2 is accepted.
struct ExprParser {
  using Fn = std::function<double(double)>;

  std::string_view text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw FormatError("expression: " + what + " at offset " +
                      std::to_string(pos) + " in \"" + std::string(text) +
                      "\"");
  }

  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  Fn parse() {
    Fn f = sum();
    skip_ws();
    if (pos != text.size()) fail("unexpected trailing input");
    return f;
  }

  Fn sum() {
    Fn lhs = product();
    for (;;) {
      if (eat('+')) {
        lhs = [l = std::move(lhs), r = product()](double x) {
          return l(x) + r(x);
        };
      } else if (eat('-')) {
        lhs = [l = std::move(lhs), r = product()](double x) {
          return l(x) - r(x);
        };
      } else {
        return lhs;
      }
    }
  }

  Fn product() {
    Fn lhs = unary();
    for (;;) {
      if (eat('*')) {
        lhs = [l = std::move(lhs), r = unary()](double x) {
          return l(x) * r(x);
        };
      } else if (eat('/')) {
        lhs = [l = std::move(lhs), r = unary()](double x) {
          return l(x) / r(x);
        };
      } else {
        return lhs;
      }
    }
  }

  Fn unary() {
    if (eat('-')) {
      return [e = unary()](double x) { return -e(x); };
    }
    return power();
  }

  Fn power() {
    Fn base = primary();
    if (eat('^')) {
      return [b = std::move(base), e = unary()](double x) {
        return std::pow(b(x), e(x));
      };
    }
    return base;
  }

  Fn primary() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    const char c = text[pos];
    if (c == '(') {
      ++pos;
      Fn inner = sum();
      if (!eat(')')) fail("missing ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return name();
    fail(std::string("unexpected character '") + c + "'");
  }

  Fn number() {
    double v = 0.0;
    const char* first = text.data() + pos;
    const auto res = std::from_chars(first, text.data() + text.size(), v);
    if (res.ec != std::errc()) fail("malformed number");
    pos = static_cast<std::size_t>(res.ptr - text.data());
    return [v](double) { return v; };
  }

  Fn name() {
    const std::size_t start = pos;
    while (pos < text.size() &&
           std::isalpha(static_cast<unsigned char>(text[pos])))
      ++pos;
    const std::string_view id = text.substr(start, pos - start);
    if (id == "x") return [](double x) { return x; };
    Fn (*call)(Fn) = nullptr;
    if (id == "sin") {
      call = [](Fn a) -> Fn {
        return [a = std::move(a)](double x) { return std::sin(a(x)); };
      };
    } else if (id == "cos") {
      call = [](Fn a) -> Fn {
        return [a = std::move(a)](double x) { return std::cos(a(x)); };
      };
    } else if (id == "exp") {
      call = [](Fn a) -> Fn {
        return [a = std::move(a)](double x) { return std::exp(a(x)); };
      };
    } else {
      fail("unknown identifier '" + std::string(id) + "'");
    }
    if (!eat('(')) fail("function call needs '('");
    Fn arg = sum();
    if (!eat(')')) fail("missing ')'");
    return call(std::move(arg));
  }
};

}  // namespace detail

/// Compiles an expression in the variable x into a callable.  Supported
/// forms: double literals, x, + - * / ^, parentheses, unary minus, and
/// sin/cos/exp.  Throws FormatError on anything else.
inline std::function<double(double)> parse_expression(std::string_view text) {
  detail::ExprParser parser{text};
  return parser.parse();
}

/// Builds a problem on [0, 1] from key = value lines.  Keys, all
/// required: name (plain text), and expressions alpha, beta, gamma, u,
/// du, ddu, dalpha.  The source term is manufactured from u and the
/// coefficients; '#' starts a comment.
inline Problem parse_problem_text(std::string_view text) {
  static constexpr std::array<std::string_view, 8> kKeys = {
      "name", "alpha", "beta", "gamma", "u", "du", "ddu", "dalpha"};

  std::map<std::string, std::string, std::less<>> fields;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    ++lineno;
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;

    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    auto trim = [](std::string_view s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
      return s;
    };
    line = trim(line);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw FormatError("problem file line " + std::to_string(lineno) +
                        ": expected key = value");
    const std::string key{trim(line.substr(0, eq))};
    const std::string value{trim(line.substr(eq + 1))};
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end())
      throw FormatError("problem file line " + std::to_string(lineno) +
                        ": unknown key '" + key + "'");
    if (value.empty())
      throw FormatError("problem file line " + std::to_string(lineno) +
                        ": empty value for '" + key + "'");
    if (!fields.emplace(key, value).second)
      throw FormatError("problem file line " + std::to_string(lineno) +
                        ": duplicate key '" + key + "'");
  }
  for (const auto key : kKeys)
    if (fields.find(key) == fields.end())
      throw FormatError("problem file: missing key '" + std::string(key) +
                        "'");

  Problem p;
  p.name = fields.find("name")->second;
  p.a = 0.0;
  p.b = 1.0;
  p.alpha = parse_expression(fields.find("alpha")->second);
  p.alpha_deriv = parse_expression(fields.find("dalpha")->second);
  p.beta = parse_expression(fields.find("beta")->second);
  p.gamma = parse_expression(fields.find("gamma")->second);
  p.exact = parse_expression(fields.find("u")->second);
  p.exact_deriv = parse_expression(fields.find("du")->second);
  p.exact_second = parse_expression(fields.find("ddu")->second);

  double amin = p.alpha(p.a);
  for (int i = 1; i <= 1000; ++i)
    amin = std::min(amin, p.alpha(p.a + (p.b - p.a) * i / 1000.0));
  p.alpha_min = amin;
  p.kappa = 0.0;
  p.source = manufactured_source(p);
  return p;
}

inline Problem load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open problem file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_problem_text(buffer.str());
}

}  // namespace fv1d
