#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qseq {

enum class Errc {
  division_by_zero,
  both_zero,
  zero_polynomial,
  degree_zero,
  degree_too_large,
  parse_error,
  not_splittable,
  bad_degree,
  split_failed,
  wrong_type,
  not_irreducible,
  internal_bound_violated,
  lemma_violated,
  bad_modulus,
  verification_failed,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::both_zero: return "BothZero";
    case Errc::zero_polynomial: return "ZeroPolynomial";
    case Errc::degree_zero: return "DegreeZero";
    case Errc::degree_too_large: return "DegreeTooLarge";
    case Errc::parse_error: return "ParseError";
    case Errc::not_splittable: return "NotSplittable";
    case Errc::bad_degree: return "BadDegree";
    case Errc::split_failed: return "SplitFailed";
    case Errc::wrong_type: return "WrongType";
    case Errc::not_irreducible: return "NotIrreducible";
    case Errc::internal_bound_violated: return "InternalBoundViolated";
    case Errc::lemma_violated: return "LemmaViolated";
    case Errc::bad_modulus: return "BadModulus";
    case Errc::verification_failed: return "VerificationFailed";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace qseq
