#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qseq/gf2poly.hpp"

namespace qseq {

enum class IrreducibilityMethod { rabin, naive };

struct IrreducibilityVerdict {
  bool irreducible = false;
  /// Least nontrivial factor in hex order; only the naive test reports one.
  std::optional<BitPoly> witness;
  IrreducibilityMethod method = IrreducibilityMethod::rabin;

  explicit operator bool() const noexcept { return irreducible; }
};

/// Distinct prime divisors of n, ascending, by trial division.
inline std::vector<std::size_t> prime_divisors(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Rabin's test: x^(2^n) = x (mod f) and gcd(x^(2^(n/q)) - x, f) = 1 for each prime q | n.
inline IrreducibilityVerdict is_irreducible_rabin(const BitPoly& f) {
  if (f.is_zero() || f.deg() == 0) throw Error(Errc::degree_zero, "irreducibility of a constant");
  const std::size_t n = f.deg();
  const BitPoly x_mod = mod(BitPoly::x(), f);
  if (n >= 2 && !f.coeff(0)) return {false, std::nullopt, IrreducibilityMethod::rabin};

  std::vector<std::size_t> checkpoints;
  for (auto q : prime_divisors(n)) checkpoints.push_back(n / q);

  BitPoly h = x_mod;
  for (std::size_t k = 1; k <= n; ++k) {
    h = sqrmod(h, f);
    if (k < n && std::find(checkpoints.begin(), checkpoints.end(), k) != checkpoints.end()) {
      if (gcd(f, h + x_mod).deg() != 0) return {false, std::nullopt, IrreducibilityMethod::rabin};
    }
  }
  return {h == x_mod, std::nullopt, IrreducibilityMethod::rabin};
}

inline bool is_irreducible(const BitPoly& f) { return is_irreducible_rabin(f).irreducible; }

inline constexpr std::size_t naive_degree_cap = 24;

/// Trial division by every polynomial of degree 1..deg f / 2. Exponential; capped at degree 24.
inline IrreducibilityVerdict is_irreducible_naive(const BitPoly& f) {
  if (f.is_zero() || f.deg() == 0) throw Error(Errc::degree_zero, "irreducibility of a constant");
  const std::size_t n = f.deg();
  if (n > naive_degree_cap)
    throw Error(Errc::degree_too_large, "naive test is capped at degree " + std::to_string(naive_degree_cap));
  const std::uint64_t limit = std::uint64_t{1} << (n / 2 + 1);
  for (std::uint64_t t = 2; t < limit; ++t) {
    BitPoly candidate(t);
    if (mod(f, candidate).is_zero()) return {false, candidate, IrreducibilityMethod::naive};
  }
  return {true, std::nullopt, IrreducibilityMethod::naive};
}

/// All irreducible polynomials of degree n in ascending hex order. Enumerates 2^(n-1) candidates.
inline std::vector<BitPoly> irreducibles_of_degree(std::size_t n) {
  std::vector<BitPoly> out;
  if (n == 0 || n > 62) throw Error(Errc::degree_too_large, "enumeration supports degrees 1..62");
  const std::uint64_t lead = std::uint64_t{1} << n;
  if (n == 1) return {BitPoly(0b10), BitPoly(0b11)};
  for (std::uint64_t low = 1; low < lead; low += 2) {
    BitPoly f(lead | low);
    if (is_irreducible(f)) out.push_back(std::move(f));
  }
  return out;
}

/// Hex-smallest irreducible polynomial of degree n.
inline BitPoly smallest_irreducible(std::size_t n) {
  if (n == 0 || n > 62) throw Error(Errc::degree_too_large, "enumeration supports degrees 1..62");
  const std::uint64_t lead = std::uint64_t{1} << n;
  if (n == 1) return BitPoly(0b10);
  for (std::uint64_t low = 1; low < lead; low += 2) {
    BitPoly f(lead | low);
    if (is_irreducible(f)) return f;
  }
  throw Error(Errc::internal_bound_violated, "no irreducible of degree " + std::to_string(n));
}

}  // namespace qseq
