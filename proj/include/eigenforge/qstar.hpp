#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace eigenforge::qstar {

using BigInt = boost::multiprecision::cpp_int;

// Integer polynomial in the formal infinite integer W, ascending; the zero
// polynomial is empty.
using IntPoly = std::vector<BigInt>;

enum class QClass { kZero, kInfinitesimal, kFinite, kInfinite };
const char* to_string(QClass c);

// num / den in lowest terms: no common polynomial factor, no common integer
// content, leading coefficient of den positive; zero is 0 / 1.
class Element {
 public:
  Element();  // zero
  Element(IntPoly num, IntPoly den);
  static Element integer(const BigInt& n);
  static Element omega();  // W

  const IntPoly& num() const { return num_; }
  const IntPoly& den() const { return den_; }
  bool is_zero() const { return num_.empty(); }

  friend bool operator==(const Element&, const Element&) = default;

 private:
  IntPoly num_;
  IntPoly den_;
};

enum class Op { kAdd, kSub, kMul, kDiv };
// Throws kDomain for division by the zero element.
Element arith(const Element& a, const Element& b, Op op);
Element operator+(const Element& a, const Element& b);
Element operator-(const Element& a, const Element& b);
Element operator*(const Element& a, const Element& b);
Element operator/(const Element& a, const Element& b);
Element reciprocal(const Element& a);

QClass classify(const Element& a);
// a - b is zero or infinitesimal.
bool equal(const Element& a, const Element& b);
// Same canonical form (their ratio is 1); identical(0, 0) holds by convention.
bool identical(const Element& a, const Element& b);
// Sign of a - b under the dominance order: -1, 0 or 1.
int compare(const Element& a, const Element& b);

// Integers, W, + - * / ^ (nonnegative integer exponent), parentheses and
// unary minus. Throws kInvalidInput on a syntax error, kDomain on division by
// zero.
Element parse(const std::string& text);
// Canonical text, e.g. "(W + 1)/W"; parse(to_string(a)) == a.
std::string to_string(const Element& a);
std::string to_string(const IntPoly& p);

}  // namespace eigenforge::qstar
