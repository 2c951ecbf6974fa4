#include "tamarkin/field.hpp"

#include <stdexcept>
#include <string>

namespace tamarkin {

bool is_prime(std::uint32_t n) noexcept {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_prime(p) || p >= (1u << 16)) {
    throw std::invalid_argument("field characteristic must be a prime below 65536, got " +
                                std::to_string(p));
  }
}

PrimeField::Element PrimeField::inv(Element a) const noexcept {
  // Fermat: a^(p-2).
  Element result = 1;
  Element base = a;
  std::uint32_t e = p_ - 2;
  while (e > 0) {
    if (e & 1u) result = mul(result, base);
    base = mul(base, base);
    e >>= 1u;
  }
  return result;
}

}  // namespace tamarkin
