#pragma once

#include <bit>
#include <string>

#include "qseq/gf2poly.hpp"

namespace qseq {

/// Type letter of a monic polynomial read from (a_{n-1}, a_1):
/// A = (1,1), B = (0,1), C = (1,0), D = (0,0).
enum class TypeLetter : char { A = 'A', B = 'B', C = 'C', D = 'D' };

constexpr char to_char(TypeLetter t) noexcept { return static_cast<char>(t); }

/// Type letter together with the degree profile n = 2^l * m, m odd.
struct PolyType {
  TypeLetter letter = TypeLetter::A;
  std::size_t n = 0;
  std::size_t l = 0;
  std::size_t m = 0;

  friend bool operator==(const PolyType&, const PolyType&) = default;

  /// "(C, 3)"
  std::string to_string() const { return std::string("(") + to_char(letter) + ", " + std::to_string(n) + ")"; }
};

struct DegreeProfile {
  std::size_t l = 0;
  std::size_t m = 0;
};

inline DegreeProfile degree_profile(std::size_t n) {
  if (n == 0) throw Error(Errc::degree_zero, "degree profile of 0");
  const auto l = static_cast<std::size_t>(std::countr_zero(n));
  return {l, n >> l};
}

/// For n = 1 the coefficient a_1 is the leading one, so x+1 is (A,1) and x is (B,1).
/// For n = 2 both indices address the same bit, so only A and D occur.
inline PolyType classify(const BitPoly& f) {
  if (f.is_zero() || f.deg() == 0) throw Error(Errc::degree_zero, "classify needs deg f >= 1");
  const std::size_t n = f.deg();
  const bool top = f.coeff(n - 1);
  const bool low = f.coeff(1);
  const TypeLetter letter = top ? (low ? TypeLetter::A : TypeLetter::C) : (low ? TypeLetter::B : TypeLetter::D);
  const auto [l, m] = degree_profile(n);
  return {letter, n, l, m};
}

/// x^n * f(x + 1/x) for n = deg f, built as sum_i a_i (x^2+1)^i x^(n-i).
inline BitPoly q_transform(const BitPoly& f) {
  if (f.is_zero() || f.deg() == 0) throw Error(Errc::degree_zero, "q_transform needs deg f >= 1");
  const std::size_t n = f.deg();
  BitPoly result;
  BitPoly power = BitPoly::one();  // (x^2+1)^i
  for (std::size_t i = 0; i <= n; ++i) {
    if (f.coeff(i)) result.add_shifted(power, n - i);
    if (i < n) power += power.shifted_left(2);
  }
  return result;
}

struct CoefficientLemmaReport {
  bool a_top = false;  // a_{n-1} of f
  bool b_top = false;  // b_{2n-1} of f^Q
  bool b_one = false;  // b_1 of f^Q
  BitPoly transform;
};

/// Checks that b_{2n-1} = b_1 = a_{n-1} for g = f^Q; throws LemmaViolated otherwise.
inline CoefficientLemmaReport check_coefficient_lemma(const BitPoly& f) {
  if (f.is_zero() || f.deg() == 0) throw Error(Errc::degree_zero, "coefficient lemma needs deg f >= 1");
  const std::size_t n = f.deg();
  CoefficientLemmaReport r;
  r.transform = q_transform(f);
  r.a_top = f.coeff(n - 1);
  r.b_top = r.transform.coeff(2 * n - 1);
  r.b_one = r.transform.coeff(1);
  if (r.b_top != r.a_top || r.b_one != r.a_top)
    throw Error(Errc::lemma_violated, "coefficient pattern of the Q-transform broken for " + to_hex(f));
  return r;
}

}  // namespace qseq
