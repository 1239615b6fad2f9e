#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "pcoh/tolerance.hpp"

namespace pcoh {

/// A finite probability vector.
///
/// Entries within `atol` below zero are clipped, and the vector is
/// renormalized so the stored entries are non-negative and sum to one.
class ProbVector {
 public:
  explicit ProbVector(std::vector<double> entries, const Tolerance& tol = {});

  static ProbVector uniform(std::size_t d);
  /// Deterministic vector (1 at position k, 0 elsewhere).
  static ProbVector basis(std::size_t d, std::size_t k = 0);

  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return entries_[i]; }
  [[nodiscard]] std::span<const double> values() const noexcept { return entries_; }
  [[nodiscard]] const std::vector<double>& vec() const noexcept { return entries_; }

  /// Non-increasing rearrangement; ties keep their original order.
  [[nodiscard]] std::vector<double> sorted_desc() const;
  /// Zero-padded copy of length n (n >= size()).
  [[nodiscard]] ProbVector padded(std::size_t n) const;
  /// First n entries, renormalized. Used to drop structurally-zero tails.
  [[nodiscard]] ProbVector truncated(std::size_t n, const Tolerance& tol = {}) const;

 private:
  std::vector<double> entries_;
};

/// x ≺ y: every prefix sum of sorted x is at most the matching prefix sum of
/// sorted y (plus atol). The shorter vector is zero-padded.
bool is_majorized_by(const ProbVector& x, const ProbVector& y, const Tolerance& tol = {});

/// min_k (prefix_k(y) - prefix_k(x)) over sorted, zero-padded vectors.
/// Non-negative exactly when x ≺ y.
double majorization_slack(const ProbVector& x, const ProbVector& y);

/// out[i * y.size() + j] = x[i] * y[j].
ProbVector tensor_prob(const ProbVector& x, const ProbVector& y);

enum class Relation { equivalent, forward, backward, incomparable };

/// forward: x ≺ y only; backward: y ≺ x only.
Relation majorization_relation(const ProbVector& x, const ProbVector& y, const Tolerance& tol = {});
std::string_view to_string(Relation r) noexcept;

enum class CatalysisResult { catalyzes, already_convertible, no };

/// already_convertible if src ≺ dst; catalyzes if src⊗c ≺ dst⊗c but not
/// src ≺ dst; no otherwise.
CatalysisResult is_catalyst(const ProbVector& catalyst, const ProbVector& src, const ProbVector& dst,
                            const Tolerance& tol = {});
std::string_view to_string(CatalysisResult r) noexcept;

/// Apply the T-transform t*id + (1-t)*swap on coordinates (i, j).
std::vector<double> apply_t_transform(std::span<const double> x, std::size_t i, std::size_t j, double t);

}  // namespace pcoh
