#ifndef FLEXLINES_SRC_FIELD_DATA_HPP
#define FLEXLINES_SRC_FIELD_DATA_HPP

#include <cstdint>
#include <vector>

namespace flex::detail {

enum class Kind { rational, prime, table, poly };

struct FieldData {
  Kind kind = Kind::rational;
  std::uint64_t p = 0;
  int k = 1;
  std::uint64_t q = 0;
  std::vector<std::uint64_t> modulus;  // empty for Q and GF(p)
  std::vector<std::uint64_t> neg_modulus;
  // Tables for extension fields with q <= 2^16.
  std::vector<std::uint32_t> log, exp;
  std::vector<std::int32_t> zech;  // log(1 + g^n), -1 when the sum vanishes

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t neg(std::uint64_t a) const;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t inv(std::uint64_t a) const;
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t add_digits(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t mul_digits(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t inv_digits(std::uint64_t a) const;
};

}  // namespace flex::detail

#endif
