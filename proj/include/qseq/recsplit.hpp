#pragma once

// Splitting of a Q-transform that factors into a reciprocal pair g * g^* of
// distinct irreducibles of equal degree n (equal-degree splitting with the
// absolute trace map, characteristic 2).

#include <cstdint>
#include <random>
#include <string>
#include <utility>

#include "qseq/gf2poly.hpp"
#include "qseq/irreducibility.hpp"

namespace qseq {

struct ReciprocalPair {
  BitPoly g1;  // hex-smaller factor
  BitPoly g2;  // reciprocal(g1)
  bool canonical = true;
};

inline constexpr unsigned max_split_draws = 128;

/// T(u) = sum_{i<n} u^(2^i) mod g
inline BitPoly trace_map(const BitPoly& u, const BitPoly& g, std::size_t n) {
  BitPoly power = mod(u, g);
  BitPoly acc = power;
  for (std::size_t i = 1; i < n; ++i) {
    power = sqrmod(power, g);
    acc += power;
  }
  return acc;
}

namespace detail {

inline BitPoly random_residue(std::mt19937_64& rng, std::size_t bits) {
  std::vector<std::uint64_t> words((bits + 63) / 64);
  for (auto& w : words) w = rng();
  if (bits % 64 != 0) words.back() &= (std::uint64_t{1} << (bits % 64)) - 1;
  return BitPoly::from_words(std::move(words));
}

}  // namespace detail

/// Factors g = f^Q (deg g = 2n) into its reciprocal pair. The result does not depend on rng_seed.
inline ReciprocalPair split_reciprocal_pair(const BitPoly& g, std::size_t n, std::uint64_t rng_seed = 0) {
  if (g.is_zero() || n == 0 || g.deg() != 2 * n)
    throw Error(Errc::bad_degree, "expected a polynomial of degree " + std::to_string(2 * n));
  if (is_irreducible(g)) throw Error(Errc::not_splittable, to_hex(g) + " is irreducible");

  std::mt19937_64 rng(rng_seed);
  for (unsigned draw = 0; draw < max_split_draws; ++draw) {
    const BitPoly u = detail::random_residue(rng, 2 * n);
    if (u.is_zero()) continue;
    const BitPoly t = trace_map(u, g, n);
    if (t.is_zero()) continue;
    BitPoly h = gcd(g, t);
    if (h.deg() != n) continue;

    auto [other, rem] = divrem(g, h);
    if (!rem.is_zero())
      throw Error(Errc::internal_bound_violated, "gcd factor does not divide " + to_hex(g));
    if (h == other)
      throw Error(Errc::not_splittable, to_hex(g) + " is the square of " + to_hex(h));
    if (other != reciprocal(h))
      throw Error(Errc::not_splittable, to_hex(g) + " does not factor as a reciprocal pair");
    if (other < h) std::swap(h, other);
    return {std::move(h), std::move(other), true};
  }
  throw Error(Errc::split_failed,
              "no splitting residue for " + to_hex(g) + " after " + std::to_string(max_split_draws) + " draws");
}

}  // namespace qseq
