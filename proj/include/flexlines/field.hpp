#ifndef FLEXLINES_FIELD_HPP
#define FLEXLINES_FIELD_HPP

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "flexlines/errors.hpp"

namespace flex {

namespace detail {
struct FieldData;
}

class Scalar;

// Handle to an interned field descriptor. Descriptors live for the whole
// process, so handles are cheap to copy and compare by identity.
class Field {
 public:
  Field() = default;
  static Field rationals();
  static Field prime(std::uint64_t p);
  // modulus: coefficients low to high, monic, degree >= 2.
  static Field make(std::uint64_t characteristic, const std::vector<std::uint64_t>& modulus = {});
  // GF(p^k) with the lexicographically first irreducible monic modulus.
  static Field galois(std::uint64_t p, int k);
  // "q", "gf:p", "gf:p:k", "gf:p:poly=c0,c1,...,1"
  static Field parse(std::string_view spec);

  std::uint64_t characteristic() const;
  int extension_degree() const;  // 1 for prime fields and for Q
  bool is_rational() const;
  bool is_finite() const { return !is_rational(); }
  std::uint64_t order() const;  // q = p^k for finite fields, 0 for Q
  const std::vector<std::uint64_t>& modulus() const;
  std::string spec() const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long v) const;
  Scalar from_mpz(const mpz_class& v) const;
  // Class generator t of GF(p^k) (k >= 2).
  Scalar generator() const;
  // Deterministic enumeration: finite fields by encoding, Q by 0,1,-1,2,-2,...
  Scalar element(std::uint64_t index) const;
  Scalar random(std::mt19937_64& rng) const;

  const detail::FieldData* data() const noexcept { return d_; }
  friend bool operator==(const Field& a, const Field& b) noexcept { return a.d_ == b.d_; }
  friend bool operator!=(const Field& a, const Field& b) noexcept { return a.d_ != b.d_; }

 private:
  explicit Field(const detail::FieldData* d) : d_(d) {}
  const detail::FieldData* d_ = nullptr;
  friend class Scalar;
};

// Exact field element. Finite-field elements are stored as the base-p
// encoding sum c_i p^i of the residue polynomial sum c_i t^i.
class Scalar {
 public:
  Scalar() = default;
  Scalar(const Field& f, long long v);
  static Scalar from_code(const Field& f, std::uint64_t code);
  static Scalar from_rational(const Field& f, mpq_class v);

  Field field() const { return Field(f_); }
  bool valid() const noexcept { return f_ != nullptr; }
  bool is_zero() const;
  bool is_one() const;
  std::uint64_t code() const;
  const mpq_class& rational() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar inverse() const;
  Scalar pow(long long e) const;
  Scalar pow(const mpz_class& e) const;
  // Inverse Frobenius (finite fields only).
  Scalar pth_root() const;

  std::string to_string() const;
  // True when to_string() needs parentheses inside a product.
  bool is_compound() const;

  // Total order used for canonical sorting; not a field order.
  friend bool canonical_less(const Scalar& a, const Scalar& b);

 private:
  const detail::FieldData* f_ = nullptr;
  std::variant<std::uint64_t, mpq_class> v_{std::uint64_t{0}};
  void check_same(const Scalar& o) const;
};

bool canonical_less(const Scalar& a, const Scalar& b);

// Embedding of a finite field into an extension with enough elements.
class FieldEmbedding {
 public:
  // Identity embedding when base already has at least min_size elements.
  static FieldEmbedding with_min_size(const Field& base, std::uint64_t min_size);
  // Embedding into the degree-b extension of a finite field.
  static FieldEmbedding extend(const Field& base, int b);

  const Field& base() const { return base_; }
  const Field& target() const { return target_; }
  bool trivial() const { return base_ == target_; }
  Scalar up(const Scalar& a) const;
  // Throws InvalidInput if the element is not in the image.
  Scalar down(const Scalar& a) const;
  bool in_image(const Scalar& a) const;

 private:
  Field base_, target_;
  std::vector<Scalar> basis_;                    // images of t^i
  std::vector<std::vector<std::uint64_t>> inv_;  // coordinate extraction over GF(p)
  std::vector<int> pivots_;
  bool solve(const Scalar& a, std::vector<std::uint64_t>& coords) const;
};

}  // namespace flex

#endif
