#pragma once

// Exact rational majorization for hand-given vectors. Every comparison is
// tolerance-free.

#include <cstddef>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pcoh/majorization.hpp"

namespace pcoh {

using Rational = boost::multiprecision::cpp_rational;

/// Parse "13/50", "0.26", "1", "-3/4" or "2.5e-3" into an exact rational.
Rational parse_rational(std::string_view text);

class RationalProbVector {
 public:
  /// Entries must be non-negative and sum to exactly one.
  explicit RationalProbVector(std::vector<Rational> entries);
  /// Convenience: decimal or fraction strings.
  static RationalProbVector parse(const std::vector<std::string_view>& entries);

  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] const Rational& operator[](std::size_t i) const { return entries_[i]; }
  [[nodiscard]] const std::vector<Rational>& vec() const noexcept { return entries_; }
  [[nodiscard]] std::vector<Rational> sorted_desc() const;
  [[nodiscard]] ProbVector to_double() const;

 private:
  std::vector<Rational> entries_;
};

bool is_majorized_by(const RationalProbVector& x, const RationalProbVector& y);
RationalProbVector tensor_prob(const RationalProbVector& x, const RationalProbVector& y);
Relation majorization_relation(const RationalProbVector& x, const RationalProbVector& y);
CatalysisResult is_catalyst(const RationalProbVector& catalyst, const RationalProbVector& src,
                            const RationalProbVector& dst);

/// Prefix sums of the zero-padded, non-increasing rearrangement.
std::vector<Rational> sorted_prefix_sums(const RationalProbVector& x, std::size_t length);

}  // namespace pcoh
