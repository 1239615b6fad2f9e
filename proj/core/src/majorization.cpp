#include "pcoh/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pcoh/errors.hpp"

namespace pcoh {

ProbVector::ProbVector(std::vector<double> entries, const Tolerance& tol) : entries_(std::move(entries)) {
  if (entries_.empty()) throw ValidationError("ProbVector: empty vector");
  double sum = 0.0;
  for (double& p : entries_) {
    if (!std::isfinite(p) || p < -tol.atol || p > 1.0 + tol.atol) {
      throw ValidationError("ProbVector: entry " + std::to_string(p) + " outside [0, 1]");
    }
    p = std::clamp(p, 0.0, 1.0);
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol.atol) {
    throw ValidationError("ProbVector: entries sum to " + std::to_string(sum));
  }
  if (sum != 1.0) {
    for (double& p : entries_) p /= sum;
  }
}

ProbVector ProbVector::uniform(std::size_t d) {
  if (d == 0) throw DimensionError("ProbVector::uniform: zero length");
  return ProbVector(std::vector<double>(d, 1.0 / static_cast<double>(d)));
}

ProbVector ProbVector::basis(std::size_t d, std::size_t k) {
  if (k >= d) throw DimensionError("ProbVector::basis: index out of range");
  std::vector<double> v(d, 0.0);
  v[k] = 1.0;
  return ProbVector(std::move(v));
}

std::vector<double> ProbVector::sorted_desc() const {
  std::vector<double> out = entries_;
  std::stable_sort(out.begin(), out.end(), std::greater<>());
  return out;
}

ProbVector ProbVector::padded(std::size_t n) const {
  if (n < entries_.size()) throw DimensionError("ProbVector::padded: target shorter than vector");
  std::vector<double> out = entries_;
  out.resize(n, 0.0);
  return ProbVector(std::move(out));
}

ProbVector ProbVector::truncated(std::size_t n, const Tolerance& tol) const {
  if (n == 0 || n > entries_.size()) throw DimensionError("ProbVector::truncated: bad length");
  return ProbVector(std::vector<double>(entries_.begin(), entries_.begin() + static_cast<std::ptrdiff_t>(n)), tol);
}

bool is_majorized_by(const ProbVector& x, const ProbVector& y, const Tolerance& tol) {
  const std::size_t n = std::max(x.size(), y.size());
  std::vector<double> xs = x.sorted_desc();
  std::vector<double> ys = y.sorted_desc();
  xs.resize(n, 0.0);
  ys.resize(n, 0.0);
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sx += xs[k];
    sy += ys[k];
    if (sx > sy + tol.atol) return false;
  }
  return true;
}

double majorization_slack(const ProbVector& x, const ProbVector& y) {
  const std::size_t n = std::max(x.size(), y.size());
  std::vector<double> xs = x.sorted_desc();
  std::vector<double> ys = y.sorted_desc();
  xs.resize(n, 0.0);
  ys.resize(n, 0.0);
  double sx = 0.0;
  double sy = 0.0;
  double slack = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sx += xs[k];
    sy += ys[k];
    slack = k == 0 ? sy - sx : std::min(slack, sy - sx);
  }
  return slack;
}

ProbVector tensor_prob(const ProbVector& x, const ProbVector& y) {
  std::vector<double> out;
  out.reserve(x.size() * y.size());
  for (double xi : x.values()) {
    for (double yj : y.values()) out.push_back(xi * yj);
  }
  return ProbVector(std::move(out));
}

Relation majorization_relation(const ProbVector& x, const ProbVector& y, const Tolerance& tol) {
  const bool fwd = is_majorized_by(x, y, tol);
  const bool bwd = is_majorized_by(y, x, tol);
  if (fwd && bwd) return Relation::equivalent;
  if (fwd) return Relation::forward;
  if (bwd) return Relation::backward;
  return Relation::incomparable;
}

std::string_view to_string(Relation r) noexcept {
  switch (r) {
    case Relation::equivalent:
      return "equivalent";
    case Relation::forward:
      return "forward";
    case Relation::backward:
      return "backward";
    case Relation::incomparable:
      return "incomparable";
  }
  return "incomparable";
}

CatalysisResult is_catalyst(const ProbVector& catalyst, const ProbVector& src, const ProbVector& dst,
                            const Tolerance& tol) {
  if (is_majorized_by(src, dst, tol)) return CatalysisResult::already_convertible;
  const std::size_t n = std::max(src.size(), dst.size());
  if (is_majorized_by(tensor_prob(src.padded(n), catalyst), tensor_prob(dst.padded(n), catalyst), tol)) {
    return CatalysisResult::catalyzes;
  }
  return CatalysisResult::no;
}

std::string_view to_string(CatalysisResult r) noexcept {
  switch (r) {
    case CatalysisResult::catalyzes:
      return "catalyzes";
    case CatalysisResult::already_convertible:
      return "already_convertible";
    case CatalysisResult::no:
      return "no";
  }
  return "no";
}

std::vector<double> apply_t_transform(std::span<const double> x, std::size_t i, std::size_t j, double t) {
  if (i >= x.size() || j >= x.size()) throw DimensionError("apply_t_transform: index out of range");
  std::vector<double> out(x.begin(), x.end());
  out[i] = t * x[i] + (1.0 - t) * x[j];
  out[j] = t * x[j] + (1.0 - t) * x[i];
  return out;
}

}  // namespace pcoh
