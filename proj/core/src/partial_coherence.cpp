#include "pcoh/partial_coherence.hpp"

#include <string>

#include "pcoh/errors.hpp"

namespace pcoh {

VectorMode parse_vector_mode(std::string_view label) {
  if (label == "a") return VectorMode::a;
  if (label == "b") return VectorMode::b;
  if (label == "full") return VectorMode::full;
  throw LookupError("unknown coherence vector mode '" + std::string(label) + "'");
}

ProbVector coherence_vectors(const PureState& s, VectorMode mode) {
  const int da = s.da();
  const int db = s.db();
  std::vector<double> out;
  switch (mode) {
    case VectorMode::a:
      out.assign(static_cast<std::size_t>(da), 0.0);
      for (int i = 0; i < da; ++i) {
        for (int j = 0; j < db; ++j) out[static_cast<std::size_t>(i)] += std::norm(s.amp(i, j));
      }
      break;
    case VectorMode::b:
      out.assign(static_cast<std::size_t>(db), 0.0);
      for (int i = 0; i < da; ++i) {
        for (int j = 0; j < db; ++j) out[static_cast<std::size_t>(j)] += std::norm(s.amp(i, j));
      }
      break;
    case VectorMode::full:
      out.reserve(static_cast<std::size_t>(s.dim()));
      for (Eigen::Index k = 0; k < s.amps().size(); ++k) out.push_back(std::norm(s.amps()[k]));
      break;
  }
  return ProbVector(std::move(out));
}

DensityMatrix partial_dephase(const DensityMatrix& rho) {
  const int da = rho.da();
  const int db = rho.db();
  CMatrix out = CMatrix::Zero(rho.dim(), rho.dim());
  for (int i = 0; i < da; ++i) out.block(i * db, i * db, db, db) = rho.entries().block(i * db, i * db, db, db);
  return DensityMatrix(da, db, std::move(out));
}

bool is_partial_incoherent(const DensityMatrix& rho, const Tolerance& tol) {
  const CMatrix diff = rho.entries() - partial_dephase(rho).entries();
  return diff.norm() <= tol.atol * rho.dim();
}

double pcoh_pure(const PureState& s, const ScfDescriptor& f, Party party) {
  return eval_scf(f, coherence_vectors(s, party == Party::a ? VectorMode::a : VectorMode::b));
}

RoofResult pcoh_mixed(const DensityMatrix& rho, const ScfDescriptor& f, Party party, const RoofConfig& cfg,
                      const Tolerance& tol) {
  return convex_roof(
      rho, [&f, party](const PureState& s) { return pcoh_pure(s, f, party); }, cfg, tol);
}

}  // namespace pcoh
