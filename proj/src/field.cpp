#include "flexlines/field.hpp"

#include <algorithm>
#include <charconv>
#include <climits>
#include <memory>
#include <mutex>
#include <sstream>

#include "field_data.hpp"

namespace flex {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DescriptorMismatch: return "DescriptorMismatch";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::DegreeTooLow: return "DegreeTooLow";
    case ErrorCode::DegreeZeroInVariable: return "DegreeZeroInVariable";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotSmooth: return "NotSmooth";
    case ErrorCode::HessianIdenticallyZeroOnCurve: return "HessianIdenticallyZeroOnCurve";
    case ErrorCode::PointNotOnCurve: return "PointNotOnCurve";
    case ErrorCode::SingularAtPoint: return "SingularAtPoint";
    case ErrorCode::PointNotOnLine: return "PointNotOnLine";
    case ErrorCode::NonReducedCurve: return "NonReducedCurve";
    case ErrorCode::HasLineComponent: return "HasLineComponent";
    case ErrorCode::EliminationDegenerate: return "EliminationDegenerate";
    case ErrorCode::NotSmoothCubic: return "NotSmoothCubic";
    case ErrorCode::CharacteristicThree: return "CharacteristicThree";
    case ErrorCode::NoRationalFlex: return "NoRationalFlex";
    case ErrorCode::NoCubeRootOfUnity: return "NoCubeRootOfUnity";
    case ErrorCode::SingularMember: return "SingularMember";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::UnexpectedDimension: return "UnexpectedDimension";
    case ErrorCode::DiscriminantNotSplit: return "DiscriminantNotSplit";
    case ErrorCode::BothMembersNonReduced: return "BothMembersNonReduced";
    case ErrorCode::CuspVerificationFailed: return "CuspVerificationFailed";
    case ErrorCode::RoundTripMismatch: return "RoundTripMismatch";
    case ErrorCode::NotInV: return "NotInV";
    case ErrorCode::IncompleteOverBaseField: return "IncompleteOverBaseField";
    case ErrorCode::GenericMemberSingular: return "GenericMemberSingular";
    case ErrorCode::ResidualNonLinearFactors: return "ResidualNonLinearFactors";
    case ErrorCode::IncompleteConfiguration: return "IncompleteConfiguration";
    case ErrorCode::HypothesesNotMet: return "HypothesesNotMet";
  }
  return "Unknown";
}

namespace detail {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % sp == 0) return n == sp;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 inv_mod(u64 a, u64 p) {
  // p prime, a != 0
  return powmod(a, p - 2, p);
}

// Dense polynomials over GF(p), low to high, no trailing zeros.
using PolyP = std::vector<u64>;

void trim(PolyP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyP poly_mod(PolyP a, const PolyP& m, u64 p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const u64 inv_lead = inv_mod(m.back(), p);
  while (a.size() > dm) {
    u64 c = mulmod(a.back(), inv_lead, p);
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = (a[shift + i] + p - mulmod(c, m[i], p)) % p;
    }
    trim(a);
  }
  return a;
}

PolyP poly_mulmod(const PolyP& a, const PolyP& b, const PolyP& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  PolyP r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  return poly_mod(std::move(r), m, p);
}

PolyP poly_powmod(PolyP a, u64 e, const PolyP& m, u64 p) {
  PolyP r{1};
  a = poly_mod(std::move(a), m, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, a, m, p);
    a = poly_mulmod(a, a, m, p);
    e >>= 1;
  }
  return r;
}

PolyP poly_gcd(PolyP a, PolyP b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PolyP r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Rabin irreducibility test.
bool irreducible_mod_p(const PolyP& f, u64 p) {
  const int k = static_cast<int>(f.size()) - 1;
  if (k < 1) return false;
  if (k == 1) return true;
  PolyP xp{0, 1};
  PolyP cur = xp;
  for (int i = 1; i <= k / 2; ++i) {
    cur = poly_powmod(cur, p, f, p);
    PolyP diff = cur;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (diff.empty()) return false;
    PolyP g = poly_gcd(f, diff, p);
    if (g.size() > 1) return false;
  }
  return true;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::mutex registry_mutex;
std::vector<std::unique_ptr<FieldData>>& registry() {
  static std::vector<std::unique_ptr<FieldData>> r;
  return r;
}

}  // namespace

u64 FieldData::add(u64 a, u64 b) const {
  switch (kind) {
    case Kind::prime: {
      u64 s = a + b;
      return s >= p ? s - p : s;
    }
    case Kind::table: {
      if (a == 0) return b;
      if (b == 0) return a;
      const u64 n = q - 1;
      u64 la = log[a], lb = log[b];
      u64 d = lb >= la ? lb - la : lb + n - la;
      int32_t z = zech[d];
      if (z < 0) return 0;
      u64 e = la + static_cast<u64>(z);
      return exp[e >= n ? e - n : e];
    }
    case Kind::poly: return add_digits(a, b);
    case Kind::rational: break;
  }
  return 0;
}

u64 FieldData::add_digits(u64 a, u64 b) const {
  if (p == 2) return a ^ b;
  u64 r = 0, mul = 1;
  for (int i = 0; i < k; ++i) {
    u64 da = a % p, db = b % p;
    a /= p;
    b /= p;
    u64 s = da + db;
    if (s >= p) s -= p;
    r += s * mul;
    mul *= p;
  }
  return r;
}

u64 FieldData::neg(u64 a) const {
  if (a == 0) return 0;
  switch (kind) {
    case Kind::prime: return p - a;
    case Kind::table:
      if (p == 2) return a;
      {
        u64 e = log[a] + (q - 1) / 2;
        return exp[e >= q - 1 ? e - (q - 1) : e];
      }
    case Kind::poly: {
      if (p == 2) return a;
      u64 r = 0, mul = 1;
      for (int i = 0; i < k; ++i) {
        u64 d = a % p;
        a /= p;
        r += (d ? p - d : 0) * mul;
        mul *= p;
      }
      return r;
    }
    case Kind::rational: break;
  }
  return 0;
}

u64 FieldData::mul(u64 a, u64 b) const {
  if (a == 0 || b == 0) return 0;
  switch (kind) {
    case Kind::prime: return mulmod(a, b, p);
    case Kind::table: {
      u64 e = static_cast<u64>(log[a]) + log[b];
      return exp[e >= q - 1 ? e - (q - 1) : e];
    }
    case Kind::poly: return mul_digits(a, b);
    case Kind::rational: break;
  }
  return 0;
}

namespace {

// At most 40 base-p digits fit in a u64 when p >= 3; p = 2 allows 64.
constexpr int kMaxDigits = 64;

int decode(u64 a, u64 p, int k, u64* out) {
  int n = 0;
  for (int i = 0; i < k; ++i) {
    out[i] = a % p;
    a /= p;
    if (out[i]) n = i + 1;
  }
  return n;
}

u64 encode(const u64* d, int n, u64 p) {
  u64 out = 0;
  for (int i = n; i-- > 0;) out = out * p + d[i];
  return out;
}

}  // namespace

u64 FieldData::mul_digits(u64 a, u64 b) const {
  u64 da[kMaxDigits], db[kMaxDigits], r[2 * kMaxDigits] = {};
  const int na = decode(a, p, k, da), nb = decode(b, p, k, db);
  // Each slot collects at most 2k terms below p^2; when that fits, reduce once per slot.
  const bool lazy = (p - 1) * (p - 1) <= (u64{1} << 62) / static_cast<u64>(2 * k);
  for (int i = 0; i < na; ++i) {
    if (!da[i]) continue;
    if (lazy)
      for (int j = 0; j < nb; ++j) r[i + j] += da[i] * db[j];
    else
      for (int j = 0; j < nb; ++j) r[i + j] = (r[i + j] + da[i] * db[j]) % p;
  }
  for (int i = na + nb - 2; i >= k; --i) {
    const u64 c = r[i] % p;
    if (!c) continue;
    if (lazy)
      for (int j = 0; j < k; ++j) r[i - k + j] += c * neg_modulus[static_cast<std::size_t>(j)];
    else
      for (int j = 0; j < k; ++j) r[i - k + j] = (r[i - k + j] + c * neg_modulus[static_cast<std::size_t>(j)]) % p;
  }
  for (int i = 0; i < k; ++i) r[i] %= p;
  return encode(r, k, p);
}

// Inverse in GF(p)[t]/(modulus) by the extended Euclidean algorithm.
u64 FieldData::inv_digits(u64 a) const {
  PolyP r0(modulus.begin(), modulus.end()), r1(static_cast<std::size_t>(k));
  decode(a, p, k, r1.data());
  trim(r1);
  PolyP s0, s1{1};
  while (r1.size() > 1) {
    const u64 lead_inv = inv_mod(r1.back(), p);
    PolyP q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, 0);
    while (r0.size() >= r1.size()) {
      const u64 c = mulmod(r0.back(), lead_inv, p);
      const std::size_t shift = r0.size() - r1.size();
      q[shift] = c;
      for (std::size_t i = 0; i < r1.size(); ++i) r0[shift + i] = (r0[shift + i] + p - mulmod(c, r1[i], p)) % p;
      trim(r0);
    }
    // s0 - q * s1
    PolyP s(std::max(s0.size(), q.size() + s1.size()), 0);
    for (std::size_t i = 0; i < s0.size(); ++i) s[i] = s0[i];
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < s1.size(); ++j) s[i + j] = (s[i + j] + p - mulmod(q[i], s1[j], p)) % p;
    trim(s);
    std::swap(r0, r1);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  const u64 c = inv_mod(r1[0], p);
  for (auto& v : s1) v = mulmod(v, c, p);
  return encode(s1.data(), static_cast<int>(s1.size()), p);
}

u64 FieldData::inv(u64 a) const {
  switch (kind) {
    case Kind::prime: return inv_mod(a, p);
    case Kind::table: return a == 1 ? 1 : exp[(q - 1) - log[a]];
    case Kind::poly: return inv_digits(a);
    case Kind::rational: break;
  }
  return 0;
}

u64 FieldData::pow(u64 a, u64 e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  if (kind == Kind::table) {
    u64 l = static_cast<u64>(static_cast<u128>(log[a]) * (e % (q - 1)) % (q - 1));
    return exp[l];
  }
  e %= (q - 1);
  u64 r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

namespace {

const FieldData* intern(std::uint64_t p, const std::vector<std::uint64_t>& modulus) {
  std::lock_guard<std::mutex> lock(registry_mutex);
  for (const auto& fd : registry()) {
    if (fd->p == p && fd->modulus == modulus) return fd.get();
  }
  auto fd = std::make_unique<FieldData>();
  fd->p = p;
  fd->modulus = modulus;
  for (auto c : modulus) fd->neg_modulus.push_back((p - c % p) % p);
  if (p == 0) {
    fd->kind = Kind::rational;
    fd->k = 1;
    fd->q = 0;
  } else if (modulus.empty()) {
    fd->kind = Kind::prime;
    fd->k = 1;
    fd->q = p;
  } else {
    fd->k = static_cast<int>(modulus.size()) - 1;
    u64 q = 1;
    for (int i = 0; i < fd->k; ++i) {
      if (q > (u64{1} << 62) / p) throw Error(ErrorCode::UnsupportedField, "field order exceeds 2^62");
      q *= p;
    }
    fd->q = q;
    fd->kind = Kind::poly;
    if (q <= (u64{1} << 16)) {
      // Build log/exp/Zech tables from a primitive element.
      const u64 n = q - 1;
      auto factors = prime_factors(n);
      u64 g = 0;
      for (u64 c = 2; c < q && g == 0; ++c) {
        bool ok = true;
        for (u64 r : factors) {
          if (fd->pow(c, n / r) == 1) {
            ok = false;
            break;
          }
        }
        if (ok) g = c;
      }
      if (n == 1) g = 1;
      fd->exp.assign(n, 0);
      fd->log.assign(q, 0);
      u64 cur = 1;
      for (u64 i = 0; i < n; ++i) {
        fd->exp[i] = static_cast<uint32_t>(cur);
        fd->log[cur] = static_cast<uint32_t>(i);
        cur = fd->mul_digits(cur, g);
      }
      fd->zech.assign(n, -1);
      for (u64 i = 0; i < n; ++i) {
        u64 s = fd->add_digits(1, fd->exp[i]);
        fd->zech[i] = s == 0 ? -1 : static_cast<int32_t>(fd->log[s]);
      }
      fd->kind = Kind::table;
    }
  }
  registry().push_back(std::move(fd));
  return registry().back().get();
}

}  // namespace
}  // namespace detail

using detail::FieldData;
using detail::Kind;

Field Field::rationals() { return Field(detail::intern(0, {})); }

Field Field::prime(std::uint64_t p) { return make(p); }

Field Field::make(std::uint64_t characteristic, const std::vector<std::uint64_t>& modulus) {
  if (characteristic == 0) {
    if (!modulus.empty()) throw Error(ErrorCode::UnsupportedField, "number fields are not supported");
    return rationals();
  }
  if (!detail::is_prime_u64(characteristic))
    throw Error(ErrorCode::NonPrimeCharacteristic, std::to_string(characteristic) + " is not prime");
  if (characteristic >= (std::uint64_t{1} << 62))
    throw Error(ErrorCode::UnsupportedField, "characteristic too large");
  if (modulus.empty()) return Field(detail::intern(characteristic, {}));
  std::vector<std::uint64_t> m = modulus;
  for (auto& c : m) c %= characteristic;
  if (m.size() < 3 || m.back() != 1)
    throw Error(ErrorCode::InvalidInput, "modulus must be monic of degree >= 2");
  if (!detail::irreducible_mod_p(m, characteristic))
    throw Error(ErrorCode::ReducibleModulus, "extension modulus is reducible");
  return Field(detail::intern(characteristic, m));
}

Field Field::galois(std::uint64_t p, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidInput, "extension degree must be positive");
  if (k == 1) return make(p);
  if (!detail::is_prime_u64(p)) throw Error(ErrorCode::NonPrimeCharacteristic, std::to_string(p) + " is not prime");
  std::vector<std::uint64_t> m(static_cast<std::size_t>(k) + 1, 0);
  m[k] = 1;
  for (;;) {
    if (m[0] != 0 && detail::irreducible_mod_p(m, p)) return make(p, m);
    int i = 0;
    while (i < k) {
      if (++m[i] < p) break;
      m[i] = 0;
      ++i;
    }
    if (i == k) throw Error(ErrorCode::ReducibleModulus, "no irreducible polynomial found");
  }
}

namespace {

std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw Error(ErrorCode::ParseError, "bad integer in field spec: " + std::string(s));
  return v;
}

}  // namespace

Field Field::parse(std::string_view spec) {
  if (spec == "q" || spec == "Q") return rationals();
  if (spec.substr(0, 3) != "gf:") throw Error(ErrorCode::ParseError, "unknown field spec: " + std::string(spec));
  std::string_view rest = spec.substr(3);
  auto colon = rest.find(':');
  if (colon == std::string_view::npos) return make(parse_u64(rest));
  std::uint64_t p = parse_u64(rest.substr(0, colon));
  std::string_view tail = rest.substr(colon + 1);
  if (tail.substr(0, 5) == "poly=") {
    std::vector<std::uint64_t> m;
    std::string_view list = tail.substr(5);
    while (!list.empty()) {
      auto comma = list.find(',');
      m.push_back(parse_u64(list.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      list = list.substr(comma + 1);
    }
    return make(p, m);
  }
  return galois(p, static_cast<int>(parse_u64(tail)));
}

std::uint64_t Field::characteristic() const { return d_->p; }
int Field::extension_degree() const { return d_->k; }
bool Field::is_rational() const { return d_->kind == Kind::rational; }
std::uint64_t Field::order() const { return d_->q; }
const std::vector<std::uint64_t>& Field::modulus() const { return d_->modulus; }

std::string Field::spec() const {
  if (is_rational()) return "q";
  std::string s = "gf:" + std::to_string(d_->p);
  if (d_->k > 1) {
    s += ":poly=";
    for (std::size_t i = 0; i < d_->modulus.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(d_->modulus[i]);
    }
  }
  return s;
}

Scalar Field::zero() const { return Scalar(*this, 0); }
Scalar Field::one() const { return Scalar(*this, 1); }
Scalar Field::from_int(long long v) const { return Scalar(*this, v); }

Scalar Field::from_mpz(const mpz_class& v) const {
  if (is_rational()) return Scalar::from_rational(*this, mpq_class(v));
  mpz_class r = v % mpz_class(static_cast<unsigned long>(d_->p));
  if (r < 0) r += static_cast<unsigned long>(d_->p);
  return Scalar::from_code(*this, r.get_ui());
}

Scalar Field::generator() const {
  if (d_->k < 2) throw Error(ErrorCode::InvalidInput, "prime field has no extension generator");
  return Scalar::from_code(*this, d_->p);
}

Scalar Field::element(std::uint64_t index) const {
  if (is_rational()) {
    if (index == 0) return zero();
    long long m = static_cast<long long>((index + 1) / 2);
    return from_int(index % 2 == 1 ? m : -m);
  }
  return Scalar::from_code(*this, index % d_->q);
}

Scalar Field::random(std::mt19937_64& rng) const {
  if (is_rational()) {
    std::uniform_int_distribution<int> dist(-9, 9);
    return from_int(dist(rng));
  }
  std::uniform_int_distribution<std::uint64_t> dist(0, d_->q - 1);
  return Scalar::from_code(*this, dist(rng));
}

Scalar::Scalar(const Field& f, long long v) : f_(f.data()) {
  if (!f_) throw Error(ErrorCode::DescriptorMismatch, "scalar without field");
  if (f_->kind == Kind::rational) {
    v_ = mpq_class(static_cast<long>(v));
  } else {
    long long p = static_cast<long long>(f_->p);
    if (f_->p > static_cast<std::uint64_t>(LLONG_MAX)) {
      v_ = static_cast<std::uint64_t>(v < 0 ? f_->p - static_cast<std::uint64_t>(-v) : static_cast<std::uint64_t>(v));
    } else {
      long long r = v % p;
      if (r < 0) r += p;
      v_ = static_cast<std::uint64_t>(r);
    }
  }
}

Scalar Scalar::from_code(const Field& f, std::uint64_t code) {
  Scalar s;
  s.f_ = f.data();
  if (!s.f_ || s.f_->kind == Kind::rational) throw Error(ErrorCode::DescriptorMismatch, "codes are for finite fields");
  if (code >= s.f_->q) throw Error(ErrorCode::InvalidInput, "element code out of range");
  s.v_ = code;
  return s;
}

Scalar Scalar::from_rational(const Field& f, mpq_class v) {
  if (!f.is_rational()) {
    if (v.get_den() == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
    return f.from_mpz(v.get_num()) / f.from_mpz(v.get_den());
  }
  Scalar s;
  s.f_ = f.data();
  v.canonicalize();
  s.v_ = std::move(v);
  return s;
}

void Scalar::check_same(const Scalar& o) const {
  if (f_ != o.f_ || !f_) throw Error(ErrorCode::DescriptorMismatch, "operands belong to different fields");
}

bool Scalar::is_zero() const {
  if (f_ && f_->kind == Kind::rational) return sgn(std::get<mpq_class>(v_)) == 0;
  return std::get<std::uint64_t>(v_) == 0;
}

bool Scalar::is_one() const {
  if (f_ && f_->kind == Kind::rational) return std::get<mpq_class>(v_) == 1;
  return std::get<std::uint64_t>(v_) == 1;
}

std::uint64_t Scalar::code() const {
  if (!f_ || f_->kind == Kind::rational) throw Error(ErrorCode::DescriptorMismatch, "rational scalars have no code");
  return std::get<std::uint64_t>(v_);
}

const mpq_class& Scalar::rational() const {
  if (!f_ || f_->kind != Kind::rational) throw Error(ErrorCode::DescriptorMismatch, "not a rational scalar");
  return std::get<mpq_class>(v_);
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (f_->kind == Kind::rational)
    std::get<mpq_class>(r.v_) = -std::get<mpq_class>(v_);
  else
    r.v_ = f_->neg(std::get<std::uint64_t>(v_));
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(o);
  if (f_->kind == Kind::rational)
    std::get<mpq_class>(v_) += std::get<mpq_class>(o.v_);
  else
    v_ = f_->add(std::get<std::uint64_t>(v_), std::get<std::uint64_t>(o.v_));
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same(o);
  if (f_->kind == Kind::rational)
    std::get<mpq_class>(v_) -= std::get<mpq_class>(o.v_);
  else
    v_ = f_->add(std::get<std::uint64_t>(v_), f_->neg(std::get<std::uint64_t>(o.v_)));
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same(o);
  if (f_->kind == Kind::rational)
    std::get<mpq_class>(v_) *= std::get<mpq_class>(o.v_);
  else
    v_ = f_->mul(std::get<std::uint64_t>(v_), std::get<std::uint64_t>(o.v_));
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same(o);
  if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
  if (f_->kind == Kind::rational)
    std::get<mpq_class>(v_) /= std::get<mpq_class>(o.v_);
  else
    v_ = f_->mul(std::get<std::uint64_t>(v_), f_->inv(std::get<std::uint64_t>(o.v_)));
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
  a.check_same(b);
  return a.v_ == b.v_;
}

Scalar Scalar::inverse() const {
  if (!f_) throw Error(ErrorCode::DescriptorMismatch, "scalar without field");
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  Scalar r = *this;
  if (f_->kind == Kind::rational)
    std::get<mpq_class>(r.v_) = 1 / std::get<mpq_class>(v_);
  else
    r.v_ = f_->inv(std::get<std::uint64_t>(v_));
  return r;
}

Scalar Scalar::pow(long long e) const { return pow(mpz_class(static_cast<long>(e))); }

Scalar Scalar::pow(const mpz_class& e) const {
  if (!f_) throw Error(ErrorCode::DescriptorMismatch, "scalar without field");
  if (e < 0) return inverse().pow(mpz_class(-e));
  if (f_->kind == Kind::rational) {
    if (!e.fits_ulong_p()) throw Error(ErrorCode::InvalidInput, "exponent too large");
    Scalar r = *this;
    mpq_class& q = std::get<mpq_class>(r.v_);
    const mpq_class& base = std::get<mpq_class>(v_);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e.get_ui());
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e.get_ui());
    q = mpq_class(num, den);
    q.canonicalize();
    return r;
  }
  Scalar r = *this;
  std::uint64_t a = std::get<std::uint64_t>(v_);
  if (a == 0) {
    r.v_ = std::uint64_t{e == 0 ? 1u : 0u};
    return r;
  }
  mpz_class red = e % mpz_class(static_cast<unsigned long>(f_->q - 1));
  r.v_ = f_->pow(a, red.get_ui());
  return r;
}

Scalar Scalar::pth_root() const {
  if (!f_ || f_->kind == Kind::rational) throw Error(ErrorCode::UnsupportedField, "p-th root needs a finite field");
  // a^(q/p) inverts Frobenius.
  Scalar r = *this;
  std::uint64_t a = std::get<std::uint64_t>(v_);
  if (a == 0) return r;
  r.v_ = f_->pow(a, f_->q / f_->p);
  return r;
}

std::string Scalar::to_string() const {
  if (!f_) return "<invalid>";
  if (f_->kind == Kind::rational) return std::get<mpq_class>(v_).get_str();
  std::uint64_t a = std::get<std::uint64_t>(v_);
  if (f_->k == 1) return std::to_string(a);
  if (a == 0) return "0";
  std::vector<std::uint64_t> digits;
  for (int i = 0; i < f_->k; ++i) {
    digits.push_back(a % f_->p);
    a /= f_->p;
  }
  std::string s;
  for (int i = f_->k - 1; i >= 0; --i) {
    std::uint64_t c = digits[i];
    if (c == 0) continue;
    if (!s.empty()) s += '+';
    if (i == 0) {
      s += std::to_string(c);
      continue;
    }
    if (c != 1) s += std::to_string(c) + "*";
    s += "t";
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

bool Scalar::is_compound() const {
  if (!f_ || (f_->kind != Kind::poly && f_->kind != Kind::table)) return false;
  std::uint64_t a = std::get<std::uint64_t>(v_);
  int nz = 0;
  for (int i = 0; i < f_->k; ++i) {
    if (a % f_->p) ++nz;
    a /= f_->p;
  }
  return nz > 1;
}

bool canonical_less(const Scalar& a, const Scalar& b) {
  a.check_same(b);
  if (a.f_->kind == Kind::rational) return std::get<mpq_class>(a.v_) < std::get<mpq_class>(b.v_);
  return std::get<std::uint64_t>(a.v_) < std::get<std::uint64_t>(b.v_);
}

}  // namespace flex
