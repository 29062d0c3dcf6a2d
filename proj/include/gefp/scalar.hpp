#pragma once

// The two scalar backends: exact rationals (GMP) and variable-precision
// binary floats (MPFR). Every engine is written against one of them, or
// generically against both.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstdlib>
#include <ios>
#include <string>
#include <type_traits>

#include "gefp/errors.hpp"

namespace gefp {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;
using Real = boost::multiprecision::mpfr_float;

template <class S>
inline constexpr bool is_exact_v = std::is_same_v<S, Rational>;

template <class S>
concept Scalar = std::is_same_v<S, Rational> || std::is_same_v<S, Real>;

template <Scalar S>
constexpr const char* backend_name() {
  return is_exact_v<S> ? "exact" : "float";
}

inline constexpr unsigned kDefaultPrecisionBits = 128;

/// Decimal digits handed to MPFR so that the working precision is at least
/// `bits` binary digits.
inline unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120));
}

/// Default float precision: GEFP_LAB_PRECISION if set and valid, else 128.
inline unsigned default_precision_bits() {
  if (const char* env = std::getenv("GEFP_LAB_PRECISION")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 16 && v <= 100000) {
      return static_cast<unsigned>(v);
    }
  }
  return kDefaultPrecisionBits;
}

/// Sets the MPFR default precision for its lifetime and restores the previous
/// one on exit. Values created inside the scope carry the new precision.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits)
      : saved_(Real::default_precision()), bits_(bits) {
    Real::default_precision(bits_to_digits10(bits));
  }
  ~PrecisionGuard() { Real::default_precision(saved_); }

  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

  unsigned bits() const { return bits_; }

 private:
  unsigned saved_;
  unsigned bits_;
};

inline Real real_pi() {
  Real x;
  mpfr_const_pi(x.backend().data(), MPFR_RNDN);
  return x;
}

/// Binary precision actually carried by the current default.
inline unsigned working_precision_bits() {
  const Real probe;
  return static_cast<unsigned>(mpfr_get_prec(probe.backend().data()));
}

inline std::string to_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

/// Fixed scientific formatting so identical inputs print identical bytes.
inline std::string to_string(const Real& x, unsigned digits = 0) {
  if (digits == 0) digits = static_cast<unsigned>(x.precision());
  return x.str(static_cast<std::streamsize>(digits), std::ios_base::scientific);
}

/// Parses "p/q" or an integer "p".
inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      if (text.find_first_of(".eE") != std::string::npos) {
        throw ParseError("'" + text + "' is a decimal; exact inputs use p/q syntax");
      }
      return Rational(Integer(text));
    }
    const Integer num(text.substr(0, slash));
    const Integer den(text.substr(slash + 1));
    if (den == 0) throw DivisionByZero("zero denominator in '" + text + "'");
    return Rational(num, den);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("cannot parse '" + text + "' as a rational");
  }
}

/// Parses a decimal, or "p/q" evaluated in the float backend.
inline Real parse_real(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
      return Real(text.substr(0, slash)) / Real(text.substr(slash + 1));
    }
    return Real(text);
  } catch (const std::exception&) {
    throw ParseError("cannot parse '" + text + "' as a number");
  }
}

template <Scalar S>
S abs_value(const S& x) {
  return x < 0 ? S(-x) : x;
}

inline Real relative_error(const Real& got, const Real& want) {
  const Real diff = abs(got - want);
  const Real scale = abs(want);
  return scale == 0 ? diff : Real(diff / scale);
}

inline Real to_real(const Rational& q) {
  return Real(boost::multiprecision::numerator(q)) /
         Real(boost::multiprecision::denominator(q));
}

}  // namespace gefp
