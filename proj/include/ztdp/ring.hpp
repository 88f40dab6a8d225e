#pragma once

// Counting codomains: exact integers (optionally mod m) and truncated
// polynomials over them.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ztdp {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt parse_bigint(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) throw std::invalid_argument("bad integer literal: " + text);
  for (std::size_t k = i; k < text.size(); ++k)
    if (text[k] < '0' || text[k] > '9') throw std::invalid_argument("bad integer literal: " + text);
  return BigInt(text);
}

/// Integers, or residues in [0, m) when a modulus is set.
class IntegerRing {
 public:
  using value_type = BigInt;

  IntegerRing() = default;
  explicit IntegerRing(std::optional<BigInt> modulus) : modulus_(std::move(modulus)) {
    if (modulus_ && *modulus_ < 2) throw std::invalid_argument("modulus must be at least 2");
  }

  const std::optional<BigInt>& modulus() const { return modulus_; }
  IntegerRing with_modulus(std::optional<BigInt> m) const { return IntegerRing(std::move(m)); }

  value_type zero() const { return 0; }
  value_type one() const { return reduce(1); }

  value_type reduce(value_type v) const {
    if (modulus_) {
      v %= *modulus_;
      if (v < 0) v += *modulus_;
    }
    return v;
  }

  bool is_zero(const value_type& v) const { return v.is_zero(); }

  void add_to(value_type& acc, const value_type& x) const {
    acc += x;
    if (modulus_ && acc >= *modulus_) acc -= *modulus_;
  }

  void sub_from(value_type& acc, const value_type& x) const {
    acc -= x;
    if (modulus_ && acc < 0) acc += *modulus_;
  }

  // acc += a * b
  void mul_add(value_type& acc, const value_type& a, const value_type& b) const {
    if (a.is_zero() || b.is_zero()) return;
    acc += a * b;
    if (modulus_) acc %= *modulus_;
  }

  value_type mul(const value_type& a, const value_type& b) const {
    value_type r = 0;
    mul_add(r, a, b);
    return r;
  }

  value_type add(value_type a, const value_type& b) const {
    add_to(a, b);
    return a;
  }

  value_type sub(value_type a, const value_type& b) const {
    sub_from(a, b);
    return a;
  }

  friend bool operator==(const IntegerRing&, const IntegerRing&) = default;

 private:
  std::optional<BigInt> modulus_;
};

/// Coefficients c[0..cap] of a polynomial truncated at degree cap.
struct Polynomial {
  std::vector<BigInt> coeffs;

  std::size_t size() const { return coeffs.size(); }
  const BigInt& operator[](std::size_t i) const { return coeffs[i]; }
  BigInt& operator[](std::size_t i) { return coeffs[i]; }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
    os << '[';
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) os << (i ? ", " : "") << p.coeffs[i];
    return os << ']';
  }
};

/// Polynomials in one marker variable, degree-truncated at `cap`.
class PolynomialRing {
 public:
  using value_type = Polynomial;

  explicit PolynomialRing(std::size_t cap, IntegerRing coefficients = {})
      : cap_(cap), base_(std::move(coefficients)) {}

  std::size_t cap() const { return cap_; }
  const IntegerRing& coefficient_ring() const { return base_; }
  const std::optional<BigInt>& modulus() const { return base_.modulus(); }
  PolynomialRing with_modulus(std::optional<BigInt> m) const { return PolynomialRing(cap_, IntegerRing(std::move(m))); }

  value_type reduce(value_type p) const {
    p.coeffs.resize(cap_ + 1);
    for (auto& c : p.coeffs) c = base_.reduce(std::move(c));
    return p;
  }

  value_type zero() const { return Polynomial{std::vector<BigInt>(cap_ + 1)}; }
  value_type one() const { return monomial(0, 1); }

  /// coeff * y^degree, or zero when degree exceeds the cap.
  value_type monomial(std::size_t degree, const BigInt& coeff) const {
    value_type p = zero();
    if (degree <= cap_) p[degree] = base_.reduce(coeff);
    return p;
  }

  value_type from_coefficients(std::vector<BigInt> c) const {
    c.resize(cap_ + 1);
    for (auto& x : c) x = base_.reduce(std::move(x));
    return Polynomial{std::move(c)};
  }

  bool is_zero(const value_type& v) const {
    return std::all_of(v.coeffs.begin(), v.coeffs.end(), [](const BigInt& c) { return c.is_zero(); });
  }

  void add_to(value_type& acc, const value_type& x) const {
    for (std::size_t i = 0; i <= cap_; ++i) base_.add_to(acc[i], x[i]);
  }

  void sub_from(value_type& acc, const value_type& x) const {
    for (std::size_t i = 0; i <= cap_; ++i) base_.sub_from(acc[i], x[i]);
  }

  void mul_add(value_type& acc, const value_type& a, const value_type& b) const {
    for (std::size_t i = 0; i <= cap_; ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; i + j <= cap_; ++j) base_.mul_add(acc[i + j], a[i], b[j]);
    }
  }

  value_type mul(const value_type& a, const value_type& b) const {
    value_type r = zero();
    mul_add(r, a, b);
    return r;
  }

  value_type add(value_type a, const value_type& b) const {
    add_to(a, b);
    return a;
  }

  value_type sub(value_type a, const value_type& b) const {
    sub_from(a, b);
    return a;
  }

  friend bool operator==(const PolynomialRing&, const PolynomialRing&) = default;

 private:
  std::size_t cap_;
  IntegerRing base_;
};

template <class R>
concept CountingRing = requires(const R& ring, typename R::value_type& acc, const typename R::value_type& x) {
  { ring.zero() } -> std::same_as<typename R::value_type>;
  { ring.one() } -> std::same_as<typename R::value_type>;
  { ring.is_zero(x) } -> std::convertible_to<bool>;
  { ring.reduce(x) } -> std::same_as<typename R::value_type>;
  { ring.with_modulus(std::optional<BigInt>{}) } -> std::same_as<R>;
  ring.add_to(acc, x);
  ring.sub_from(acc, x);
  ring.mul_add(acc, x, x);
};

}  // namespace ztdp
