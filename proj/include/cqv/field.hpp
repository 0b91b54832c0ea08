#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cqv {

/// Exact coefficient type for character arithmetic.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

// deterministic Miller-Rabin for 64-bit inputs
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while (!(d & 1)) { d >>= 1; ++r; }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 0; i < r - 1; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) { witness = false; break; }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace detail

/// Prime-field element. The modulus is process-wide (set it once, before any
/// arithmetic); the default is the Mersenne prime 2^61 - 1.
class Fp {
 public:
  static constexpr std::uint64_t kDefaultModulus = (std::uint64_t{1} << 61) - 1;

  static std::uint64_t modulus() { return mod_(); }

  static void set_modulus(std::uint64_t p) {
    if (p <= (std::uint64_t{1} << 60)) throw std::invalid_argument("prime modulus must exceed 2^60");
    if (!detail::is_prime_u64(p)) throw std::invalid_argument("modulus is not prime");
    mod_() = p;
  }

  Fp() = default;
  static Fp from_int(long long x) {
    auto m = static_cast<long long>(mod_());
    long long r = x % m;
    if (r < 0) r += m;
    return Fp{static_cast<std::uint64_t>(r)};
  }
  static Fp from_raw(std::uint64_t v) { return Fp{v % mod_()}; }
  static Fp zero() { return Fp{}; }
  static Fp one() { return Fp{1}; }

  bool is_zero() const { return v_ == 0; }
  std::uint64_t raw() const { return v_; }

  friend Fp operator+(Fp a, Fp b) {
    std::uint64_t s = a.v_ + b.v_;
    if (s >= mod_()) s -= mod_();
    return Fp{s};
  }
  friend Fp operator-(Fp a, Fp b) {
    std::uint64_t s = a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + mod_() - b.v_;
    return Fp{s};
  }
  friend Fp operator*(Fp a, Fp b) { return Fp{detail::mulmod_u64(a.v_, b.v_, mod_())}; }
  friend Fp operator/(Fp a, Fp b) { return a * b.inv(); }
  Fp operator-() const { return v_ == 0 ? Fp{} : Fp{mod_() - v_}; }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }

  Fp inv() const {
    if (v_ == 0) throw std::domain_error("division by zero in prime field");
    return Fp{detail::powmod_u64(v_, mod_() - 2, mod_())};
  }

  Fp pow(long long e) const {
    if (e >= 0) return Fp{detail::powmod_u64(v_, static_cast<std::uint64_t>(e), mod_())};
    return inv().pow(-e);
  }

  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }
  friend bool operator!=(Fp a, Fp b) { return a.v_ != b.v_; }

  std::string str() const { return std::to_string(v_); }
  static std::string backend_name() { return "prime(" + std::to_string(mod_()) + ")"; }

 private:
  explicit Fp(std::uint64_t v) : v_(v) {}
  static std::uint64_t& mod_() {
    static std::uint64_t m = kDefaultModulus;
    return m;
  }
  std::uint64_t v_ = 0;
};

/// Arbitrary-precision rational field element.
class Rat {
 public:
  Rat() = default;
  explicit Rat(Rational v) : v_(std::move(v)) {}
  static Rat from_int(long long x) { return Rat{Rational(x)}; }
  static Rat from_fraction(long long num, long long den) { return Rat{Rational(num) / den}; }
  static Rat zero() { return Rat{}; }
  static Rat one() { return Rat{Rational(1)}; }

  bool is_zero() const { return v_ == 0; }
  const Rational& value() const { return v_; }

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat{a.v_ + b.v_}; }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat{a.v_ - b.v_}; }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat{a.v_ * b.v_}; }
  friend Rat operator/(const Rat& a, const Rat& b) { return a * b.inv(); }
  Rat operator-() const { return Rat{-v_}; }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }

  Rat inv() const {
    if (v_ == 0) throw std::domain_error("division by zero in rational field");
    return Rat{1 / v_};
  }

  Rat pow(long long e) const {
    if (e < 0) return inv().pow(-e);
    Rat r = one(), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }

  std::string str() const {
    return numerator(v_).str() + "/" + denominator(v_).str();
  }
  static std::string backend_name() { return "rational"; }

 private:
  Rational v_;
};

template <class F>
concept FieldType = requires(F a, F b, long long e) {
  { F::zero() } -> std::same_as<F>;
  { F::one() } -> std::same_as<F>;
  { F::from_int(e) } -> std::same_as<F>;
  { a + b } -> std::same_as<F>;
  { a - b } -> std::same_as<F>;
  { a * b } -> std::same_as<F>;
  { a.inv() } -> std::same_as<F>;
  { a.pow(e) } -> std::same_as<F>;
  { a.is_zero() } -> std::same_as<bool>;
  { a == b } -> std::same_as<bool>;
  { a.str() } -> std::same_as<std::string>;
};

}  // namespace cqv
