#include "orbihear/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include "orbihear/error.hpp"

namespace orbihear {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidPolytope: return "InvalidPolytope";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::TooManyFacets: return "TooManyFacets";
    case ErrorCode::PerturbationFailed: return "PerturbationFailed";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::DegenerateParameter: return "DegenerateParameter";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::ParallelFacets: return "ParallelFacets";
    case ErrorCode::FitFailure: return "FitFailure";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::NoConsistentSigning: return "NoConsistentSigning";
    case ErrorCode::AmbiguousSigning: return "AmbiguousSigning";
    case ErrorCode::BalanceViolation: return "BalanceViolation";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::EmptyIntermediate: return "EmptyIntermediate";
    case ErrorCode::TruncationTooCoarse: return "TruncationTooCoarse";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::MissingInput: return "MissingInput";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad(std::string_view text) {
  throw Error(ErrorCode::ParseError, "not an exact rational: '" + std::string(text) + "'");
}

// Leading zeros are stripped: the multiprecision string constructor reads them as octal.
Integer decimal_integer(std::string_view digits) {
  const auto first = digits.find_first_not_of('0');
  if (first == std::string_view::npos) return Integer(0);
  return Integer(std::string(digits.substr(first)));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad(text);
    Integer d = decimal_integer(den);
    if (d == 0) bad(text);
    value = Rational(decimal_integer(num), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      bad(text);
    }
    Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac.size()));
    Integer digits = decimal_integer(std::string(whole) + std::string(frac));
    value = Rational(digits, scale);
  } else {
    if (!all_digits(s)) bad(text);
    value = Rational(decimal_integer(s));
  }
  return negative ? Rational(-value) : value;
}

std::string format_rational(const Rational& value) {
  const Integer num = boost::multiprecision::numerator(value);
  const Integer den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational exact_rational(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::InvalidInput, "non-finite value cannot be made rational");
  }
  return Rational(value);
}

Rational approximate_rational(double value, double rel_tol) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::InvalidInput, "non-finite value cannot be made rational");
  }
  const double tol = rel_tol * std::max(1.0, std::abs(value));
  const double whole = std::floor(value);
  Integer h_prev = 1;
  Integer h = static_cast<long long>(whole);
  Integer k_prev = 0;
  Integer k = 1;
  double frac = value - whole;
  for (int it = 0; it < 64; ++it) {
    Rational current(h, k);
    if (frac == 0.0 || std::abs(current.convert_to<double>() - value) <= tol) return current;
    const double inv = 1.0 / frac;
    const double a = std::floor(inv);
    frac = inv - a;
    Integer h_next = static_cast<long long>(a) * h + h_prev;
    Integer k_next = static_cast<long long>(a) * k + k_prev;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
  }
  return exact_rational(value);
}

std::int64_t gcd_of(const IntVector& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

}  // namespace orbihear
