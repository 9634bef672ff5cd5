#include "eigenforge/godel_codec.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>

#include "eigenforge/error.hpp"

namespace eigenforge::godel {
namespace {

// Primes found so far, grown on demand by sieving the next segment.
class PrimeTable {
 public:
  std::uint64_t nth(std::size_t m) {
    std::lock_guard lock(mutex_);
    while (primes_.size() < m) grow();
    return primes_[m - 1];
  }

  // Primes up to `limit`, for use as sieve bases.
  std::vector<std::uint64_t> up_to(std::uint64_t limit) {
    std::lock_guard lock(mutex_);
    while (sieved_to_ < limit) grow();
    auto end = std::upper_bound(primes_.begin(), primes_.end(), limit);
    return {primes_.begin(), end};
  }

 private:
  void grow() {
    const std::uint64_t lo = sieved_to_ + 1;
    const std::uint64_t hi = std::max<std::uint64_t>(2 * sieved_to_, 1024);
    std::vector<bool> composite(hi - lo + 1, false);
    for (std::uint64_t p : primes_) {
      if (p * p > hi) break;
      for (std::uint64_t q = std::max(p * p, (lo + p - 1) / p * p); q <= hi; q += p) {
        composite[q - lo] = true;
      }
    }
    // New primes below sqrt(hi) must also strike within the segment.
    for (std::uint64_t n = lo; n <= hi; ++n) {
      if (n < 2 || composite[n - lo]) continue;
      primes_.push_back(n);
      for (std::uint64_t q = n * n; q <= hi; q += n) composite[q - lo] = true;
    }
    sieved_to_ = hi;
  }

  std::mutex mutex_;
  std::vector<std::uint64_t> primes_;
  std::uint64_t sieved_to_ = 1;
};

PrimeTable& table() {
  static PrimeTable t;
  return t;
}

// Number of primes <= n, by segmented sieve without storing them.
std::size_t count_primes(std::uint64_t n) {
  const auto base = table().up_to(static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n))) + 1);
  constexpr std::uint64_t kSegment = 1 << 20;
  std::size_t count = 0;
  std::vector<bool> composite(kSegment);
  for (std::uint64_t lo = 2; lo <= n; lo += kSegment) {
    const std::uint64_t hi = std::min(n, lo + kSegment - 1);
    std::fill(composite.begin(), composite.end(), false);
    for (std::uint64_t p : base) {
      if (p * p > hi) break;
      for (std::uint64_t q = std::max(p * p, (lo + p - 1) / p * p); q <= hi; q += p) {
        composite[q - lo] = true;
      }
    }
    for (std::uint64_t k = lo; k <= hi; ++k) count += composite[k - lo] ? 0 : 1;
  }
  return count;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::size_t m = 1;; ++m) {
    const std::uint64_t p = table().nth(m);
    if (p * p > n) return true;
    if (n % p == 0) return n == p;
  }
}

}  // namespace

Occupation canonicalize(std::span<const std::int64_t> occupation) {
  for (std::int64_t n : occupation) {
    if (n < 0) throw Error(ErrorKind::kDomain, "occupation numbers must be nonnegative");
  }
  Occupation out(occupation.begin(), occupation.end());
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::uint64_t nth_prime(std::size_t m) {
  if (m == 0) throw Error(ErrorKind::kDomain, "prime indices start at 1");
  return table().nth(m);
}

std::size_t prime_index(std::uint64_t p) {
  if (p > kMaxIndexedPrime) {
    throw Error(ErrorKind::kDomain, "prime factor " + std::to_string(p) + " is too large to index");
  }
  if (!is_prime(p)) throw Error(ErrorKind::kDomain, std::to_string(p) + " is not prime");
  return count_primes(p);
}

BigInt encode(std::span<const std::int64_t> occupation) {
  const Occupation occ = canonicalize(occupation);
  BigInt g = 1;
  for (std::size_t m = 0; m < occ.size(); ++m) {
    if (occ[m] == 0) continue;
    g *= boost::multiprecision::pow(BigInt(nth_prime(m + 1)), static_cast<unsigned>(occ[m]));
  }
  return g;
}

Occupation decode(const BigInt& g) {
  if (g < 1) throw Error(ErrorKind::kDomain, "only positive integers encode distributions");
  Occupation out;
  BigInt rest = g;
  for (std::size_t m = 1; rest != 1; ++m) {
    const std::uint64_t p = nth_prime(m);
    if (p > kMaxIndexedPrime) {
      throw Error(ErrorKind::kDomain, "cofactor " + rest.str() + " has only prime factors too large to index");
    }
    if (BigInt(p) * p > rest) {
      // What remains is itself prime.
      if (rest > kMaxIndexedPrime) {
        throw Error(ErrorKind::kDomain, "prime factor " + rest.str() + " is too large to index");
      }
      const std::size_t index = prime_index(static_cast<std::uint64_t>(rest));
      out.resize(index, 0);
      out[index - 1] = 1;
      break;
    }
    std::int64_t exponent = 0;
    BigInt q, r;
    for (;;) {
      boost::multiprecision::divide_qr(rest, BigInt(p), q, r);
      if (r != 0) break;
      rest = q;
      ++exponent;
    }
    out.push_back(exponent);
  }
  return canonicalize(out);
}

std::vector<Definable> enumerate_definable(std::span<const double> omegas, double h,
                                           double e_max, std::size_t max_results) {
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorKind::kDomain, "h must be positive");
  if (!(e_max >= 0.0) || !std::isfinite(e_max)) {
    throw Error(ErrorKind::kDomain, "e_max must be finite and >= 0");
  }
  for (double w : omegas) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error(ErrorKind::kDomain, "frequencies must be positive");
    }
  }
  const double limit = e_max * (1.0 + 1e-12);
  const std::size_t modes = omegas.size();
  std::vector<std::int64_t> bound(modes);
  for (std::size_t m = 0; m < modes; ++m) {
    bound[m] = static_cast<std::int64_t>(std::floor(limit * 2.0 * std::numbers::pi / (h * omegas[m])));
  }

  // Energies are accumulated term by term in mode order, the same way the
  // energy ledger sums them.
  auto energy_of = [&](const std::vector<std::int64_t>& n) {
    double e = 0.0;
    for (std::size_t m = 0; m < n.size(); ++m) {
      e += static_cast<double>(n[m]) * h * omegas[m] / (2.0 * std::numbers::pi);
    }
    return e;
  };

  std::vector<Definable> out;
  std::vector<std::int64_t> n(modes, 0);
  auto visit = [&](auto&& self, std::size_t m) -> void {
    if (m == modes) {
      const double e = energy_of(n);
      if (e > limit) return;
      if (out.size() >= max_results) {
        throw Error(ErrorKind::kInvalidInput, "enumeration exceeds " +
                                                  std::to_string(max_results) + " distributions");
      }
      Occupation occ = canonicalize(n);
      BigInt g = encode(occ);
      out.push_back(Definable{std::move(occ), std::move(g), e});
      return;
    }
    for (std::int64_t k = 0; k <= bound[m]; ++k) {
      n[m] = k;
      if (k > 0 && energy_of(n) > limit) break;
      self(self, m + 1);
    }
    n[m] = 0;
  };
  visit(visit, 0);
  std::sort(out.begin(), out.end(),
            [](const Definable& x, const Definable& y) { return x.godel < y.godel; });
  return out;
}

std::vector<std::pair<double, std::size_t>> count_vs_box(std::span<const double> lengths,
                                                         double e_max, int num_modes, double h) {
  if (num_modes < 1) throw Error(ErrorKind::kInvalidInput, "num_modes must be >= 1");
  std::vector<std::pair<double, std::size_t>> out;
  double previous = 0.0;
  for (double length : lengths) {
    if (!(length > 0.0) || length < previous) {
      throw Error(ErrorKind::kInvalidInput, "box lengths must be positive and ascending");
    }
    previous = length;
    std::vector<double> omegas;
    for (int m = 1; m <= num_modes; ++m) omegas.push_back(m * std::numbers::pi / length);
    out.emplace_back(length, enumerate_definable(omegas, h, e_max).size());
  }
  return out;
}

std::string format_occupation(std::span<const std::int64_t> occupation) {
  std::string out;
  for (std::size_t m = 0; m < occupation.size(); ++m) {
    if (m) out += ';';
    out += std::to_string(occupation[m]);
  }
  return out;
}

Occupation parse_occupation(const std::string& text) {
  Occupation out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = text.find_first_of(",;", pos);
    const std::string item = text.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    if (item.empty() || !std::all_of(item.begin(), item.end(), [](unsigned char c) { return std::isdigit(c); })) {
      throw Error(ErrorKind::kInvalidInput, "occupation entries must be nonnegative integers: '" + text + "'");
    }
    try {
      out.push_back(std::stoll(item));
    } catch (const std::out_of_range&) {
      throw Error(ErrorKind::kInvalidInput, "occupation entry out of range: " + item);
    }
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  return out;
}

BigInt parse_integer(const std::string& text) {
  std::string body = text;
  bool negative = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    negative = body[0] == '-';
    body.erase(0, 1);
  }
  if (body.empty() || !std::all_of(body.begin(), body.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw Error(ErrorKind::kInvalidInput, "not a decimal integer: '" + text + "'");
  }
  BigInt value(body);
  return negative ? BigInt(-value) : value;
}

void write_csv(std::ostream& out, std::span<const Definable> rows) {
  out << "godel_integer,occupations,energy\n";
  char buf[32];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof buf, "%.17g", row.energy);
    out << row.godel.str() << ',' << format_occupation(row.occupation) << ',' << buf << '\n';
  }
}

}  // namespace eigenforge::godel
