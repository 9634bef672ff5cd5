#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace eigenforge::godel {

using BigInt = boost::multiprecision::cpp_int;

// n_m for m = 1, 2, ...; canonical when the last entry is nonzero. The
// empty sequence is the vacuum.
using Occupation = std::vector<std::int64_t>;

// Strips trailing zeros; throws kDomain on a negative entry.
Occupation canonicalize(std::span<const std::int64_t> occupation);

// m-th prime, 1-based (nth_prime(1) == 2).
std::uint64_t nth_prime(std::size_t m);
// 1-based index of a prime p (prime_index(7) == 4). Throws kDomain if p is
// not prime or exceeds kMaxIndexedPrime.
std::size_t prime_index(std::uint64_t p);
inline constexpr std::uint64_t kMaxIndexedPrime = 10'000'000;

// prod_m P_m^{n_m}
BigInt encode(std::span<const std::int64_t> occupation);
// Inverse of encode; throws kDomain for g < 1.
Occupation decode(const BigInt& g);

struct Definable {
  Occupation occupation;
  BigInt godel;
  double energy = 0.0;
};

// Every distribution with sum n_m h omega_m / 2pi <= e_max (up to a relative
// 1e-12 slack), sorted by Goedel integer. Throws kInvalidInput past
// max_results.
std::vector<Definable> enumerate_definable(std::span<const double> omegas, double h,
                                           double e_max,
                                           std::size_t max_results = 5'000'000);

// For each box length L, the definable count with Dirichlet frequencies
// omega_m = m pi / L, m = 1..num_modes.
std::vector<std::pair<double, std::size_t>> count_vs_box(std::span<const double> lengths,
                                                         double e_max, int num_modes,
                                                         double h = 2.0 * std::numbers::pi);

std::string format_occupation(std::span<const std::int64_t> occupation);  // "2;1"
Occupation parse_occupation(const std::string& text);  // accepts ',' or ';'
BigInt parse_integer(const std::string& text);         // decimal, kInvalidInput otherwise

// Header godel_integer,occupations,energy; LF line endings.
void write_csv(std::ostream& out, std::span<const Definable> rows);

}  // namespace eigenforge::godel
