#include "eigenforge/qstar.hpp"

#include <cctype>
#include <sstream>

#include "eigenforge/error.hpp"

namespace eigenforge::qstar {
namespace {

using boost::multiprecision::abs;
using boost::multiprecision::gcd;

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const IntPoly& p) { return static_cast<int>(p.size()) - 1; }

IntPoly add(const IntPoly& a, const IntPoly& b, int sign = 1) {
  IntPoly out(std::max(a.size(), b.size()));
  for (std::size_t k = 0; k < a.size(); ++k) out[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) out[k] += sign * b[k];
  trim(out);
  return out;
}

IntPoly mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

BigInt content(const IntPoly& p) {
  BigInt g = 0;
  for (const auto& c : p) g = gcd(g, c);
  return g;
}

IntPoly divide_scalar(IntPoly p, const BigInt& s) {
  for (auto& c : p) c /= s;
  return p;
}

IntPoly primitive_part(const IntPoly& p) {
  if (p.empty()) return p;
  return divide_scalar(p, content(p));
}

// lc(b)^(deg a - deg b + 1) * a mod b
IntPoly pseudo_remainder(IntPoly a, const IntPoly& b) {
  const int db = degree(b);
  const BigInt& lead = b.back();
  while (!a.empty() && degree(a) >= db) {
    const BigInt top = a.back();
    const int shift = degree(a) - db;
    for (auto& c : a) c *= lead;
    for (int k = 0; k <= db; ++k) a[k + shift] -= top * b[k];
    trim(a);
  }
  return a;
}

// Primitive gcd (up to sign) by the primitive polynomial remainder sequence.
IntPoly poly_gcd(IntPoly a, IntPoly b) {
  a = primitive_part(a);
  b = primitive_part(b);
  while (!b.empty()) {
    IntPoly r = primitive_part(pseudo_remainder(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// a / b where b divides a exactly over the integers.
IntPoly exact_divide(IntPoly a, const IntPoly& b) {
  if (a.empty()) return {};
  const int db = degree(b);
  IntPoly q(a.size() - b.size() + 1);
  while (!a.empty() && degree(a) >= db) {
    const int shift = degree(a) - db;
    const BigInt c = a.back() / b.back();
    q[shift] = c;
    for (int k = 0; k <= db; ++k) a[k + shift] -= c * b[k];
    trim(a);
  }
  trim(q);
  return q;
}

int sign(const BigInt& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

}  // namespace

const char* to_string(QClass c) {
  switch (c) {
    case QClass::kZero: return "zero";
    case QClass::kInfinitesimal: return "infinitesimal";
    case QClass::kFinite: return "finite";
    case QClass::kInfinite: return "infinite";
  }
  return "?";
}

Element::Element() : den_{1} {}

Element::Element(IntPoly num, IntPoly den) : num_(std::move(num)), den_(std::move(den)) {
  trim(num_);
  trim(den_);
  if (den_.empty()) throw Error(ErrorKind::kDomain, "zero denominator");
  if (num_.empty()) {
    den_ = {1};
    return;
  }
  const IntPoly g = poly_gcd(num_, den_);
  if (degree(g) > 0) {
    num_ = exact_divide(num_, g);
    den_ = exact_divide(den_, g);
  }
  const BigInt c = gcd(content(num_), content(den_));
  if (c != 1) {
    num_ = divide_scalar(num_, c);
    den_ = divide_scalar(den_, c);
  }
  if (den_.back() < 0) {
    for (auto& x : num_) x = -x;
    for (auto& x : den_) x = -x;
  }
}

Element Element::integer(const BigInt& n) { return Element({n}, {1}); }
Element Element::omega() { return Element({0, 1}, {1}); }

Element arith(const Element& a, const Element& b, Op op) {
  switch (op) {
    case Op::kAdd:
      return Element(add(mul(a.num(), b.den()), mul(b.num(), a.den())), mul(a.den(), b.den()));
    case Op::kSub:
      return Element(add(mul(a.num(), b.den()), mul(b.num(), a.den()), -1),
                     mul(a.den(), b.den()));
    case Op::kMul:
      return Element(mul(a.num(), b.num()), mul(a.den(), b.den()));
    case Op::kDiv:
      if (b.is_zero()) throw Error(ErrorKind::kDomain, "division by zero");
      return Element(mul(a.num(), b.den()), mul(a.den(), b.num()));
  }
  return {};
}

Element operator+(const Element& a, const Element& b) { return arith(a, b, Op::kAdd); }
Element operator-(const Element& a, const Element& b) { return arith(a, b, Op::kSub); }
Element operator*(const Element& a, const Element& b) { return arith(a, b, Op::kMul); }
Element operator/(const Element& a, const Element& b) { return arith(a, b, Op::kDiv); }
Element reciprocal(const Element& a) { return Element::integer(1) / a; }

QClass classify(const Element& a) {
  if (a.is_zero()) return QClass::kZero;
  const int dn = degree(a.num());
  const int dd = degree(a.den());
  if (dn < dd) return QClass::kInfinitesimal;
  if (dn == dd) return QClass::kFinite;
  return QClass::kInfinite;
}

bool equal(const Element& a, const Element& b) {
  const QClass c = classify(a - b);
  return c == QClass::kZero || c == QClass::kInfinitesimal;
}

bool identical(const Element& a, const Element& b) { return a == b; }

int compare(const Element& a, const Element& b) {
  const Element d = a - b;
  return d.is_zero() ? 0 : sign(d.num().back());
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  Element parse() {
    Element e = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    std::ostringstream msg;
    msg << "cannot parse \"" << text_ << "\" at position " << pos_ << ": " << what;
    throw Error(ErrorKind::kInvalidInput, msg.str());
  }

  Element expr() {
    Element e = term();
    for (;;) {
      if (accept('+')) e = e + term();
      else if (accept('-')) e = e - term();
      else return e;
    }
  }
  Element term() {
    Element e = unary();
    for (;;) {
      if (accept('*')) e = e * unary();
      else if (accept('/')) e = e / unary();
      else return e;
    }
  }
  Element unary() {
    if (accept('-')) return Element() - unary();
    if (accept('+')) return unary();
    return power();
  }
  Element power() {
    Element base = primary();
    if (!accept('^')) return base;
    skip();
    const std::string digits = number();
    if (digits.empty()) fail("exponent must be a nonnegative integer");
    if (digits.size() > 4) fail("exponent too large");
    Element out = Element::integer(1);
    for (int k = std::stoi(digits); k > 0; --k) out = out * base;
    return out;
  }
  Element primary() {
    skip();
    if (accept('(')) {
      Element e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'W' || text_[pos_] == 'w')) {
      ++pos_;
      return Element::omega();
    }
    const std::string digits = number();
    if (digits.empty()) fail(pos_ < text_.size() ? "expected a term" : "unexpected end of input");
    return Element::integer(BigInt(digits));
  }
  std::string number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

bool is_atom(const IntPoly& p) {
  // A single term with coefficient +-1, or a bare integer.
  std::size_t terms = 0;
  for (const auto& c : p) terms += c != 0 ? 1 : 0;
  if (terms != 1) return false;
  return degree(p) == 0 || abs(p.back()) == 1;
}

}  // namespace

Element parse(const std::string& text) { return Parser(text).parse(); }

std::string to_string(const IntPoly& p) {
  if (p.empty()) return "0";
  std::string out;
  for (int k = degree(p); k >= 0; --k) {
    const BigInt& c = p[k];
    if (c == 0) continue;
    const BigInt mag = abs(c);
    if (out.empty()) out += c < 0 ? "-" : "";
    else out += c < 0 ? " - " : " + ";
    if (k == 0) {
      out += mag.str();
      continue;
    }
    if (mag != 1) out += mag.str() + "*";
    out += "W";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

std::string to_string(const Element& a) {
  const std::string num = to_string(a.num());
  if (a.den() == IntPoly{1}) return num;
  std::size_t terms = 0;
  for (const auto& c : a.num()) terms += c != 0 ? 1 : 0;
  const std::string lhs = terms > 1 ? "(" + num + ")" : num;
  const std::string den = to_string(a.den());
  const std::string rhs = is_atom(a.den()) ? den : "(" + den + ")";
  return lhs + "/" + rhs;
}

}  // namespace eigenforge::qstar
