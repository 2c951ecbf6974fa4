#pragma once

#include <cstdint>

namespace tamarkin {

/// Arithmetic in the prime field F_p. Elements are canonical residues in
/// [0, p).
class PrimeField {
 public:
  using Element = std::uint32_t;

  /// Throws std::invalid_argument when p is not a prime below 2^16.
  explicit PrimeField(std::uint32_t p = 2);

  std::uint32_t characteristic() const noexcept { return p_; }

  Element add(Element a, Element b) const noexcept {
    const Element s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const noexcept {
    return a >= b ? a - b : a + p_ - b;
  }
  Element neg(Element a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const noexcept {
    return static_cast<Element>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  /// Multiplicative inverse; a must be nonzero.
  Element inv(Element a) const noexcept;

  /// Maps an arbitrary integer (e.g. an incidence sign) into the field.
  Element from_int(long long v) const noexcept {
    const long long r = v % static_cast<long long>(p_);
    return static_cast<Element>(r < 0 ? r + p_ : r);
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint32_t n) noexcept;

}  // namespace tamarkin
