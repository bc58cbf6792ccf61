#pragma once

// Bit-packed polynomials over GF(2). Bit i of the packed vector is the
// coefficient of x^i; storage never holds a zero word above the degree.

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qseq/error.hpp"

#if !defined(QSEQ_DISABLE_HW_CLMUL) && defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define QSEQ_HAVE_X86_CLMUL 1
#include <immintrin.h>
#else
#define QSEQ_HAVE_X86_CLMUL 0
#endif

namespace qseq {

class BitPoly {
 public:
  using word_type = std::uint64_t;
  static constexpr std::size_t word_bits = 64;

  /// The zero polynomial.
  BitPoly() = default;

  /// Polynomial whose coefficient bits are the bits of `mask`.
  explicit BitPoly(word_type mask) {
    if (mask != 0) words_.push_back(mask);
  }

  static BitPoly from_words(std::vector<word_type> words) {
    BitPoly p;
    p.words_ = std::move(words);
    p.trim();
    return p;
  }

  static BitPoly monomial(std::size_t k) {
    BitPoly p;
    p.words_.assign(k / word_bits + 1, 0);
    p.words_.back() = word_type{1} << (k % word_bits);
    return p;
  }

  static BitPoly one() { return BitPoly(1); }
  static BitPoly x() { return BitPoly(2); }

  bool is_zero() const noexcept { return words_.empty(); }

  /// Degree of a nonzero polynomial; the zero polynomial has no degree.
  std::optional<std::size_t> degree() const noexcept {
    if (words_.empty()) return std::nullopt;
    return (words_.size() - 1) * word_bits + (word_bits - 1 - std::countl_zero(words_.back()));
  }

  /// Degree of a polynomial known to be nonzero.
  std::size_t deg() const {
    auto d = degree();
    if (!d) throw Error(Errc::zero_polynomial, "degree of the zero polynomial");
    return *d;
  }

  bool coeff(std::size_t i) const noexcept {
    const std::size_t w = i / word_bits;
    return w < words_.size() && ((words_[w] >> (i % word_bits)) & 1U);
  }

  void set_coeff(std::size_t i, bool value) {
    const std::size_t w = i / word_bits;
    if (w >= words_.size()) {
      if (!value) return;
      words_.resize(w + 1, 0);
    }
    const word_type bit = word_type{1} << (i % word_bits);
    words_[w] = value ? (words_[w] | bit) : (words_[w] & ~bit);
    trim();
  }

  std::span<const word_type> words() const noexcept { return words_; }

  /// Number of nonzero coefficients.
  std::size_t weight() const noexcept {
    std::size_t w = 0;
    for (auto word : words_) w += static_cast<std::size_t>(std::popcount(word));
    return w;
  }

  /// Low word of the packed vector; only meaningful for degree < 64.
  word_type low_word() const noexcept { return words_.empty() ? 0 : words_.front(); }

  BitPoly& operator+=(const BitPoly& rhs) {
    if (rhs.words_.size() > words_.size()) words_.resize(rhs.words_.size(), 0);
    for (std::size_t i = 0; i < rhs.words_.size(); ++i) words_[i] ^= rhs.words_[i];
    trim();
    return *this;
  }

  /// *this += src * x^shift
  void add_shifted(const BitPoly& src, std::size_t shift) {
    if (src.is_zero()) return;
    const std::size_t top = src.deg() + shift;
    if (top / word_bits >= words_.size()) words_.resize(top / word_bits + 1, 0);
    xor_shifted_raw(words_, src.words_, shift);
    trim();
  }

  BitPoly shifted_left(std::size_t k) const {
    BitPoly r;
    r.add_shifted(*this, k);
    return r;
  }

  friend BitPoly operator+(BitPoly lhs, const BitPoly& rhs) {
    lhs += rhs;
    return lhs;
  }

  friend bool operator==(const BitPoly&, const BitPoly&) = default;

  /// Numeric order of the packed vectors, which is also the order of their hex encodings
  /// among polynomials of equal degree.
  friend std::strong_ordering operator<=>(const BitPoly& a, const BitPoly& b) noexcept {
    if (auto c = a.words_.size() <=> b.words_.size(); c != 0) return c;
    for (std::size_t i = a.words_.size(); i-- > 0;) {
      if (auto c = a.words_[i] <=> b.words_[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

  // dst ^= src << shift; dst must already be large enough
  static void xor_shifted_raw(std::span<word_type> dst, std::span<const word_type> src, std::size_t shift) {
    const std::size_t off = shift / word_bits;
    const unsigned bit = static_cast<unsigned>(shift % word_bits);
    if (bit == 0) {
      for (std::size_t k = 0; k < src.size(); ++k) dst[k + off] ^= src[k];
      return;
    }
    for (std::size_t k = 0; k < src.size(); ++k) {
      dst[k + off] ^= src[k] << bit;
      const word_type carry = src[k] >> (word_bits - bit);
      if (carry != 0) dst[k + off + 1] ^= carry;
    }
  }

 private:
  friend struct PolyAccess;

  void trim() noexcept {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
  }

  std::vector<word_type> words_;
};

/// Raw word access for the arithmetic kernels below.
struct PolyAccess {
  static std::vector<BitPoly::word_type>& words(BitPoly& p) noexcept { return p.words_; }
  static void trim(BitPoly& p) noexcept { p.trim(); }
};

// ---------------------------------------------------------------------------
// Carryless multiplication kernels

enum class ClmulBackend { portable, hardware };

namespace detail {

struct Product128 {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
};

inline Product128 clmul64_portable(std::uint64_t a, std::uint64_t b) noexcept {
  // 4-bit window over b
  std::array<std::uint64_t, 16> lo_tab{};
  std::array<std::uint64_t, 16> hi_tab{};
  for (unsigned i = 1; i < 16; ++i) {
    std::uint64_t lo = 0, hi = 0;
    for (unsigned bit = 0; bit < 4; ++bit) {
      if ((i >> bit) & 1U) {
        lo ^= a << bit;
        hi ^= bit == 0 ? 0 : a >> (64 - bit);
      }
    }
    lo_tab[i] = lo;
    hi_tab[i] = hi;
  }
  Product128 r;
  for (unsigned pos = 0; pos < 64; pos += 4) {
    const unsigned nib = static_cast<unsigned>((b >> pos) & 0xF);
    if (nib == 0) continue;
    r.lo ^= lo_tab[nib] << pos;
    r.hi ^= hi_tab[nib] << pos;
    if (pos != 0) r.hi ^= lo_tab[nib] >> (64 - pos);
  }
  return r;
}

#if QSEQ_HAVE_X86_CLMUL
__attribute__((target("pclmul,sse4.1"))) inline Product128 clmul64_hardware(std::uint64_t a,
                                                                            std::uint64_t b) noexcept {
  const __m128i va = _mm_cvtsi64_si128(static_cast<long long>(a));
  const __m128i vb = _mm_cvtsi64_si128(static_cast<long long>(b));
  const __m128i prod = _mm_clmulepi64_si128(va, vb, 0x00);
  return {static_cast<std::uint64_t>(_mm_cvtsi128_si64(prod)),
          static_cast<std::uint64_t>(_mm_extract_epi64(prod, 1))};
}

inline bool cpu_has_clmul() noexcept {
  static const bool has = __builtin_cpu_supports("pclmul") && __builtin_cpu_supports("sse4.1");
  return has;
}
#endif

template <class Kernel>
BitPoly mul_words(const BitPoly& p, const BitPoly& q, Kernel kernel) {
  if (p.is_zero() || q.is_zero()) return {};
  auto a = p.words();
  auto b = q.words();
  std::vector<std::uint64_t> out(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Product128 w = kernel(a[i], b[j]);
      out[i + j] ^= w.lo;
      out[i + j + 1] ^= w.hi;
    }
  }
  return BitPoly::from_words(std::move(out));
}

}  // namespace detail

/// True when the hardware carryless-multiply path is compiled in and the CPU supports it.
inline bool hardware_clmul_available() noexcept {
#if QSEQ_HAVE_X86_CLMUL
  return detail::cpu_has_clmul();
#else
  return false;
#endif
}

/// Multiplication through an explicitly chosen kernel. Requesting the hardware kernel
/// where it is unavailable falls back to the portable one.
inline BitPoly mul(const BitPoly& p, const BitPoly& q, ClmulBackend backend) {
#if QSEQ_HAVE_X86_CLMUL
  if (backend == ClmulBackend::hardware && detail::cpu_has_clmul())
    return detail::mul_words(p, q, detail::clmul64_hardware);
#else
  (void)backend;
#endif
  return detail::mul_words(p, q, detail::clmul64_portable);
}

inline BitPoly mul(const BitPoly& p, const BitPoly& q) {
  return mul(p, q, ClmulBackend::hardware);
}

inline BitPoly add(const BitPoly& p, const BitPoly& q) { return p + q; }

inline BitPoly operator*(const BitPoly& p, const BitPoly& q) { return mul(p, q); }

namespace detail {

inline constexpr std::array<std::uint16_t, 256> spread_table = [] {
  std::array<std::uint16_t, 256> t{};
  for (unsigned i = 0; i < 256; ++i) {
    std::uint16_t s = 0;
    for (unsigned b = 0; b < 8; ++b)
      if ((i >> b) & 1U) s = static_cast<std::uint16_t>(s | (1U << (2 * b)));
    t[i] = s;
  }
  return t;
}();

inline std::uint64_t spread32(std::uint32_t v) noexcept {
  std::uint64_t r = 0;
  for (unsigned k = 0; k < 4; ++k) r |= std::uint64_t{spread_table[(v >> (8 * k)) & 0xFF]} << (16 * k);
  return r;
}

// r := r mod d, optionally accumulating the quotient bits into quot.
inline void reduce_words(std::vector<std::uint64_t>& r, const BitPoly& d, std::vector<std::uint64_t>* quot) {
  const std::size_t dd = d.deg();
  std::size_t top = r.size() * BitPoly::word_bits;
  while (top-- > dd) {
    const std::size_t w = top / BitPoly::word_bits;
    if (w >= r.size()) continue;
    if (r[w] == 0) {
      // skip the rest of an empty word
      top = w * BitPoly::word_bits;
      if (top <= dd) break;
      continue;
    }
    if (((r[w] >> (top % BitPoly::word_bits)) & 1U) == 0) continue;
    const std::size_t shift = top - dd;
    BitPoly::xor_shifted_raw(r, d.words(), shift);
    if (quot != nullptr) (*quot)[shift / BitPoly::word_bits] ^= std::uint64_t{1} << (shift % BitPoly::word_bits);
  }
}

}  // namespace detail

inline BitPoly square(const BitPoly& p) {
  auto w = p.words();
  std::vector<std::uint64_t> out(2 * w.size(), 0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    out[2 * i] = detail::spread32(static_cast<std::uint32_t>(w[i]));
    out[2 * i + 1] = detail::spread32(static_cast<std::uint32_t>(w[i] >> 32));
  }
  return BitPoly::from_words(std::move(out));
}

struct DivRem {
  BitPoly quotient;
  BitPoly remainder;
};

inline DivRem divrem(const BitPoly& p, const BitPoly& d) {
  if (d.is_zero()) throw Error(Errc::division_by_zero, "divisor is the zero polynomial");
  if (p.is_zero() || p.deg() < d.deg()) return {BitPoly{}, p};
  std::vector<std::uint64_t> r(p.words().begin(), p.words().end());
  std::vector<std::uint64_t> q((p.deg() - d.deg()) / BitPoly::word_bits + 1, 0);
  detail::reduce_words(r, d, &q);
  return {BitPoly::from_words(std::move(q)), BitPoly::from_words(std::move(r))};
}

inline BitPoly mod(const BitPoly& p, const BitPoly& d) {
  if (d.is_zero()) throw Error(Errc::division_by_zero, "modulus is the zero polynomial");
  if (p.is_zero() || p.deg() < d.deg()) return p;
  std::vector<std::uint64_t> r(p.words().begin(), p.words().end());
  detail::reduce_words(r, d, nullptr);
  return BitPoly::from_words(std::move(r));
}

inline BitPoly operator%(const BitPoly& p, const BitPoly& d) { return mod(p, d); }

inline BitPoly mulmod(const BitPoly& a, const BitPoly& b, const BitPoly& m) { return mod(mul(a, b), m); }
inline BitPoly sqrmod(const BitPoly& a, const BitPoly& m) { return mod(square(a), m); }

/// Monic gcd by Euclid's algorithm; gcd(p, 0) = p.
inline BitPoly gcd(BitPoly a, BitPoly b) {
  if (a.is_zero() && b.is_zero()) throw Error(Errc::both_zero, "gcd(0, 0) is undefined");
  while (!b.is_zero()) {
    BitPoly r = mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// x^(2^k) mod f, by k squarings each reduced mod f.
inline BitPoly frobenius_power(std::size_t k, const BitPoly& f) {
  if (f.is_zero() || f.deg() < 1) throw Error(Errc::degree_zero, "frobenius_power needs deg f >= 1");
  BitPoly r = mod(BitPoly::x(), f);
  for (std::size_t i = 0; i < k; ++i) r = sqrmod(r, f);
  return r;
}

/// x^d * p(1/x) with d = deg p.
inline BitPoly reciprocal(const BitPoly& p) {
  if (p.is_zero()) throw Error(Errc::zero_polynomial, "reciprocal of the zero polynomial");
  const std::size_t d = p.deg();
  auto w = p.words();
  std::vector<std::uint64_t> out(w.size(), 0);
  // reverse the whole word array, then shift down so that bit d lands on bit 0
  const std::size_t total = w.size() * BitPoly::word_bits;
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::uint64_t v = w[i], rev = 0;
    for (unsigned b = 0; b < 64; ++b, v >>= 1) rev = (rev << 1) | (v & 1U);
    out[w.size() - 1 - i] = rev;
  }
  const std::size_t drop = total - 1 - d;
  BitPoly r = BitPoly::from_words(std::move(out));
  if (drop == 0) return r;
  auto& rw = PolyAccess::words(r);
  const std::size_t off = drop / BitPoly::word_bits;
  const unsigned bit = static_cast<unsigned>(drop % BitPoly::word_bits);
  std::vector<std::uint64_t> shifted(rw.size() - std::min(off, rw.size()), 0);
  for (std::size_t k = 0; k < shifted.size(); ++k) {
    shifted[k] = rw[k + off] >> bit;
    if (bit != 0 && k + off + 1 < rw.size()) shifted[k] |= rw[k + off + 1] << (64 - bit);
  }
  return BitPoly::from_words(std::move(shifted));
}

inline bool is_self_reciprocal(const BitPoly& p) { return !p.is_zero() && reciprocal(p) == p; }

// ---------------------------------------------------------------------------
// Text encodings: "x^6+x^3+1" and "0x49".

inline std::string to_text(const BitPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t i = p.deg() + 1; i-- > 0;) {
    if (!p.coeff(i)) continue;
    if (!out.empty()) out += '+';
    if (i == 0)
      out += '1';
    else if (i == 1)
      out += 'x';
    else
      out += "x^" + std::to_string(i);
  }
  return out;
}

inline std::string to_hex(const BitPoly& p) {
  if (p.is_zero()) return "0x0";
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  const std::size_t nibbles = p.deg() / 4 + 1;
  for (std::size_t k = nibbles; k-- > 0;) {
    const auto w = p.words()[(4 * k) / BitPoly::word_bits];
    out += digits[(w >> ((4 * k) % BitPoly::word_bits)) & 0xF];
  }
  return "0x" + out;
}

enum class PolyFormat { text, hex };

inline std::string format(const BitPoly& p, PolyFormat f) { return f == PolyFormat::hex ? to_hex(p) : to_text(p); }

inline std::ostream& operator<<(std::ostream& os, const BitPoly& p) { return os << to_text(p); }

namespace detail {

inline std::string_view trim_space(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline BitPoly parse_hex(std::string_view digits, std::string_view original) {
  if (digits.empty()) throw Error(Errc::parse_error, "empty hex literal '" + std::string(original) + "'");
  std::vector<std::uint64_t> words((digits.size() * 4 + 63) / 64, 0);
  std::size_t pos = 0;
  for (std::size_t k = digits.size(); k-- > 0; pos += 4) {
    const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(digits[k])));
    unsigned v;
    if (c >= '0' && c <= '9')
      v = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f')
      v = static_cast<unsigned>(c - 'a' + 10);
    else
      throw Error(Errc::parse_error, "bad hex digit in '" + std::string(original) + "'");
    words[pos / 64] |= std::uint64_t{v} << (pos % 64);
  }
  return BitPoly::from_words(std::move(words));
}

inline std::size_t parse_exponent(std::string_view s, std::string_view original) {
  if (s.empty() || s.size() > 9) throw Error(Errc::parse_error, "bad exponent in '" + std::string(original) + "'");
  std::size_t e = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw Error(Errc::parse_error, "bad exponent in '" + std::string(original) + "'");
    e = e * 10 + static_cast<std::size_t>(c - '0');
  }
  return e;
}

}  // namespace detail

/// Parses either encoding. Monomials of the text form may come in any order but must be distinct.
inline BitPoly parse_poly(std::string_view input) {
  const std::string_view s = detail::trim_space(input);
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) return detail::parse_hex(s.substr(2), input);
  if (s == "0") return {};
  if (s.empty()) throw Error(Errc::parse_error, "empty polynomial");

  BitPoly out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t plus = s.find('+', start);
    const std::string_view term =
        detail::trim_space(s.substr(start, plus == std::string_view::npos ? std::string_view::npos : plus - start));
    std::size_t e;
    if (term == "1") {
      e = 0;
    } else if (term == "x") {
      e = 1;
    } else if (term.size() > 2 && term[0] == 'x' && term[1] == '^') {
      e = detail::parse_exponent(term.substr(2), input);
    } else {
      throw Error(Errc::parse_error, "bad term '" + std::string(term) + "' in '" + std::string(input) + "'");
    }
    if (out.coeff(e)) throw Error(Errc::parse_error, "repeated monomial in '" + std::string(input) + "'");
    out.set_coeff(e, true);
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  return out;
}

}  // namespace qseq
