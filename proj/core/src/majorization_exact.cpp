#include "pcoh/majorization_exact.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "pcoh/errors.hpp"

namespace pcoh {

namespace {

using boost::multiprecision::cpp_int;

cpp_int parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw ValidationError("parse_rational: malformed number '" + std::string(whole) + "'");
  for (char c : digits) {
    if (c < '0' || c > '9') throw ValidationError("parse_rational: malformed number '" + std::string(whole) + "'");
  }
  return cpp_int(std::string(digits));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  // Decimal exponent, applied after the mantissa is read exactly.
  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string_view::npos && s.find('/') == std::string_view::npos) {
    std::string_view ex = s.substr(e + 1);
    s = s.substr(0, e);
    const bool neg_exp = !ex.empty() && ex.front() == '-';
    if (!ex.empty() && (ex.front() == '-' || ex.front() == '+')) ex.remove_prefix(1);
    if (ex.empty() || ex.size() > 4) throw ValidationError("parse_rational: malformed number '" + std::string(text) + "'");
    const cpp_int mag = parse_integer(ex, text);
    exponent = mag.convert_to<long>() * (neg_exp ? -1 : 1);
  }
  Rational value;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const cpp_int num = parse_integer(s.substr(0, slash), text);
    const cpp_int den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) throw ValidationError("parse_rational: zero denominator");
    value = Rational(num, den);
  } else if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const std::string_view int_part = s.substr(0, dot);
    const std::string_view frac_part = s.substr(dot + 1);
    cpp_int scale = 1;
    for (std::size_t k = 0; k < frac_part.size(); ++k) scale *= 10;
    const cpp_int ip = int_part.empty() ? cpp_int(0) : parse_integer(int_part, text);
    const cpp_int fp = frac_part.empty() ? cpp_int(0) : parse_integer(frac_part, text);
    value = Rational(ip * scale + fp, scale);
  } else {
    value = Rational(parse_integer(s, text));
  }
  if (exponent != 0) {
    cpp_int pow10 = 1;
    for (long k = 0; k < std::abs(exponent); ++k) pow10 *= 10;
    value = exponent > 0 ? Rational(value * pow10) : Rational(value / pow10);
  }
  return negative ? Rational(-value) : value;
}

RationalProbVector::RationalProbVector(std::vector<Rational> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw ValidationError("RationalProbVector: empty vector");
  Rational sum = 0;
  for (const Rational& p : entries_) {
    if (p < 0) throw ValidationError("RationalProbVector: negative entry");
    sum += p;
  }
  if (sum != 1) throw ValidationError("RationalProbVector: entries do not sum to exactly 1");
}

RationalProbVector RationalProbVector::parse(const std::vector<std::string_view>& entries) {
  std::vector<Rational> out;
  out.reserve(entries.size());
  for (auto e : entries) out.push_back(parse_rational(e));
  return RationalProbVector(std::move(out));
}

std::vector<Rational> RationalProbVector::sorted_desc() const {
  std::vector<Rational> out = entries_;
  std::stable_sort(out.begin(), out.end(), std::greater<>());
  return out;
}

ProbVector RationalProbVector::to_double() const {
  std::vector<double> out;
  out.reserve(entries_.size());
  for (const Rational& p : entries_) out.push_back(static_cast<double>(p));
  return ProbVector(std::move(out));
}

std::vector<Rational> sorted_prefix_sums(const RationalProbVector& x, std::size_t length) {
  if (length < x.size()) throw DimensionError("sorted_prefix_sums: length shorter than vector");
  std::vector<Rational> s = x.sorted_desc();
  s.resize(length, Rational(0));
  Rational acc = 0;
  for (Rational& v : s) {
    acc += v;
    v = acc;
  }
  return s;
}

bool is_majorized_by(const RationalProbVector& x, const RationalProbVector& y) {
  const std::size_t n = std::max(x.size(), y.size());
  const auto sx = sorted_prefix_sums(x, n);
  const auto sy = sorted_prefix_sums(y, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (sx[k] > sy[k]) return false;
  }
  return true;
}

RationalProbVector tensor_prob(const RationalProbVector& x, const RationalProbVector& y) {
  std::vector<Rational> out;
  out.reserve(x.size() * y.size());
  for (const Rational& xi : x.vec()) {
    for (const Rational& yj : y.vec()) out.push_back(xi * yj);
  }
  return RationalProbVector(std::move(out));
}

Relation majorization_relation(const RationalProbVector& x, const RationalProbVector& y) {
  const bool fwd = is_majorized_by(x, y);
  const bool bwd = is_majorized_by(y, x);
  if (fwd && bwd) return Relation::equivalent;
  if (fwd) return Relation::forward;
  if (bwd) return Relation::backward;
  return Relation::incomparable;
}

CatalysisResult is_catalyst(const RationalProbVector& catalyst, const RationalProbVector& src,
                            const RationalProbVector& dst) {
  if (is_majorized_by(src, dst)) return CatalysisResult::already_convertible;
  const std::size_t n = std::max(src.size(), dst.size());
  auto pad = [n](const RationalProbVector& v) {
    std::vector<Rational> e = v.vec();
    e.resize(n, Rational(0));
    return RationalProbVector(std::move(e));
  };
  if (is_majorized_by(tensor_prob(pad(src), catalyst), tensor_prob(pad(dst), catalyst))) {
    return CatalysisResult::catalyzes;
  }
  return CatalysisResult::no;
}

}  // namespace pcoh
