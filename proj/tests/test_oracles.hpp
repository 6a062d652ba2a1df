#ifndef EDGE_OUTAGE_TESTS_TEST_ORACLES_HPP
#define EDGE_OUTAGE_TESTS_TEST_ORACLES_HPP

// Test-only references, written without touching the library's code paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace edge_outage::test_oracles {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

inline cpp_int factorial_exact(unsigned n) {
  cpp_int f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

inline cpp_int binomial_exact(unsigned n, unsigned k) {
  return factorial_exact(n) / (factorial_exact(k) * factorial_exact(n - k));
}

inline cpp_int ipow(const cpp_int& base, unsigned e) {
  cpp_int r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

// S(k,z) = (1/z!) sum_j (-1)^j C(z,j) (z-j)^k with signed big integers.
inline cpp_int stirling2_alternating(unsigned k, unsigned z) {
  cpp_int acc = 0;
  for (unsigned j = 0; j <= z; ++j) {
    const cpp_int term = binomial_exact(z, j) * ipow(cpp_int(z - j), k);
    if (j % 2 == 0) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  return acc / factorial_exact(z);
}

// Number of set partitions of {0..k-1} into exactly z non-empty blocks, by
// enumerating restricted growth strings.
inline std::uint64_t count_set_partitions(unsigned k, unsigned z) {
  if (k == 0) return z == 0 ? 1 : 0;
  std::vector<unsigned> block(k, 0);
  std::uint64_t count = 0;
  std::function<void(unsigned, unsigned)> rec = [&](unsigned pos, unsigned used) {
    if (pos == k) {
      if (used == z) ++count;
      return;
    }
    for (unsigned b = 0; b <= used && b < z; ++b) {
      block[pos] = b;
      rec(pos + 1, b == used ? used + 1 : used);
    }
  };
  rec(0, 0);
  return count;
}

// P(Z = z) for k uniform balls in m bins by enumerating all m^k outcomes.
inline std::vector<cpp_rational> occupancy_by_enumeration(unsigned m, unsigned k) {
  std::vector<std::uint64_t> hist(std::min(m, k) + 1, 0);
  std::vector<unsigned> balls(k, 0);
  std::uint64_t total = 0;
  while (true) {
    std::vector<bool> hit(m, false);
    unsigned z = 0;
    for (unsigned b : balls)
      if (!hit[b]) {
        hit[b] = true;
        ++z;
      }
    ++hist[z];
    ++total;
    int pos = static_cast<int>(k) - 1;
    while (pos >= 0 && balls[static_cast<unsigned>(pos)] == m - 1) balls[static_cast<unsigned>(pos--)] = 0;
    if (pos < 0) break;
    ++balls[static_cast<unsigned>(pos)];
  }
  std::vector<cpp_rational> out;
  for (auto h : hist) out.emplace_back(cpp_int(h), cpp_int(total));
  return out;
}

// Exact rational value of a double (every finite double is a dyadic rational).
inline cpp_rational exact_rational(double x) {
  int exp = 0;
  const double mant = std::frexp(x, &exp);
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
  cpp_rational r(scaled);
  const int shift = exp - 53;
  if (shift >= 0) {
    r *= cpp_rational(ipow(cpp_int(2), static_cast<unsigned>(shift)));
  } else {
    r /= cpp_rational(ipow(cpp_int(2), static_cast<unsigned>(-shift)));
  }
  return r;
}

}  // namespace edge_outage::test_oracles

#endif  // EDGE_OUTAGE_TESTS_TEST_ORACLES_HPP
