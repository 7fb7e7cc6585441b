#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace strelkit {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Rational = boost::multiprecision::mpq_rational;

// Field descriptors. Algorithms are templated on one of these; the element
// type is K::Elem and all arithmetic goes through the descriptor so that a
// runtime-modulus prime field and GMP rationals share one code path.

class RationalField {
 public:
  using Elem = Rational;

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(long long n) const { return Elem(n); }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const {
    if (a == 0) throw error("division by zero");
    return Elem(1) / a;
  }
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  std::string str(const Elem& a) const { return a.str(); }
  Elem parse(const std::string& s) const {
    try {
      return Elem(s);
    } catch (const std::exception&) {
      throw error("bad rational literal: " + s);
    }
  }

  std::string name() const { return "Q"; }
  bool operator==(const RationalField&) const { return true; }
  bool operator!=(const RationalField&) const { return false; }
};

// F_p with runtime modulus, p prime, p < 2^31. Elements are canonical
// representatives in [0, p); products fit in int64 before reduction.
class PrimeField {
 public:
  using Elem = std::int64_t;

  explicit PrimeField(std::int64_t p) : p_(p) {
    if (p < 2 || p >= (std::int64_t(1) << 31)) throw error("modulus out of range");
    for (std::int64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) throw error("modulus is not prime");
  }

  std::int64_t modulus() const { return p_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1 % p_; }
  Elem from_int(long long n) const {
    Elem r = static_cast<Elem>(n % p_);
    return r < 0 ? r + p_ : r;
  }

  Elem add(Elem a, Elem b) const { Elem r = a + b; return r >= p_ ? r - p_ : r; }
  Elem sub(Elem a, Elem b) const { Elem r = a - b; return r < 0 ? r + p_ : r; }
  Elem mul(Elem a, Elem b) const { return (a * b) % p_; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem inv(Elem a) const {
    if (a == 0) throw error("division by zero");
    // extended Euclid
    std::int64_t r0 = p_, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
      std::int64_t q = r0 / r1;
      std::int64_t r2 = r0 - q * r1; r0 = r1; r1 = r2;
      std::int64_t s2 = s0 - q * s1; s0 = s1; s1 = s2;
    }
    return from_int(s0);
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }

  std::string str(Elem a) const { return std::to_string(a); }
  Elem parse(const std::string& s) const {
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return from_int(std::stoll(s));
      Elem num = from_int(std::stoll(s.substr(0, slash)));
      Elem den = from_int(std::stoll(s.substr(slash + 1)));
      return div(num, den);
    } catch (const error&) {
      throw;
    } catch (const std::exception&) {
      throw error("bad field literal: " + s);
    }
  }

  std::string name() const { return "F" + std::to_string(p_); }
  bool operator==(const PrimeField& o) const { return p_ == o.p_; }
  bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

 private:
  std::int64_t p_;
};

}  // namespace strelkit
