#pragma once

// Exact rational scalars. Thin layer over boost::multiprecision so the rest
// of the library can stay agnostic of the backing type.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace harmeig {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;  // always reduced, denominator > 0

inline BigInt rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool rat_is_integer(const Rat& r) { return rat_den(r) == 1; }

// Canonical rendering "a/b" with b > 0, gcd(a, b) = 1.
inline std::string rat_to_string(const Rat& r) {
  return rat_num(r).str() + "/" + rat_den(r).str();
}

// Accepts "a" or "a/b" with optional sign; rejects b = 0 and junk.
inline std::optional<Rat> rat_parse(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto slash = s.find('/');
  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  try {
    if (slash == std::string::npos) {
      if (!is_int(s)) return std::nullopt;
      return Rat(BigInt(s));
    }
    std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    if (!is_int(a) || !is_int(b)) return std::nullopt;
    BigInt bn(b);
    if (bn == 0) return std::nullopt;
    return Rat(BigInt(a), bn);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

inline double rat_to_double(const Rat& r) { return r.template convert_to<double>(); }

inline BigInt factorial(int n) {
  if (n < 0) throw std::domain_error("factorial: negative argument");
  BigInt acc = 1;
  for (int k = 2; k <= n; ++k) acc *= k;
  return acc;
}

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt acc = 1;
  for (int j = 0; j < k; ++j) {
    acc *= (n - j);
    acc /= (j + 1);  // exact at every step
  }
  return acc;
}

// floor(sqrt(v)) for v >= 0.
inline BigInt isqrt_floor(const BigInt& v) {
  if (v < 0) throw std::domain_error("isqrt_floor: negative argument");
  return boost::multiprecision::sqrt(v);
}

}  // namespace harmeig
