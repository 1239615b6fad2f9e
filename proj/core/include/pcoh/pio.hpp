#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pcoh/linalg.hpp"
#include "pcoh/states.hpp"
#include "pcoh/tolerance.hpp"

namespace pcoh {

/// Kraus operators of a channel from C^da ⊗ C^db_in to C^da ⊗ C^db_out.
///
/// Operators are (da*db_out) x (da*db_in) matrices in the row-major product
/// basis. Completeness is not enforced on construction so that partial
/// instruments can be represented; see completeness_residual().
class KrausSet {
 public:
  KrausSet(int da, int db, std::vector<CMatrix> kraus);
  KrausSet(int da, int db_in, int db_out, std::vector<CMatrix> kraus);

  [[nodiscard]] int da() const noexcept { return da_; }
  [[nodiscard]] int db_in() const noexcept { return db_in_; }
  [[nodiscard]] int db_out() const noexcept { return db_out_; }
  [[nodiscard]] int dim_in() const noexcept { return da_ * db_in_; }
  [[nodiscard]] int dim_out() const noexcept { return da_ * db_out_; }
  [[nodiscard]] std::size_t size() const noexcept { return kraus_.size(); }
  [[nodiscard]] const std::vector<CMatrix>& operators() const noexcept { return kraus_; }

  /// max |sum_n K_n^dagger K_n - I| entrywise.
  [[nodiscard]] double completeness_residual() const;

 private:
  int da_;
  int db_in_;
  int db_out_;
  std::vector<CMatrix> kraus_;
};

/// Sequential composition; stage k's output dimensions match stage k+1's input.
class ChannelPipeline {
 public:
  explicit ChannelPipeline(std::vector<KrausSet> stages);

  [[nodiscard]] const std::vector<KrausSet>& stages() const noexcept { return stages_; }
  [[nodiscard]] int da() const noexcept { return stages_.front().da(); }
  [[nodiscard]] int db_in() const noexcept { return stages_.front().db_in(); }
  [[nodiscard]] int db_out() const noexcept { return stages_.back().db_out(); }

 private:
  std::vector<KrausSet> stages_;
};

/// Largest second-biggest block norm over all block-columns of all operators.
/// Zero for an exact PIO structure.
double pio_structure_defect(const KrausSet& k);

/// Block-column criterion only: viewing each operator as a da x da grid of
/// db_out x db_in blocks, every block column holds at most one block with
/// Frobenius norm above atol.
bool has_pio_structure(const KrausSet& k, const Tolerance& tol = {});

/// Structure check on a complete Kraus set. Throws CompletenessError when
/// the residual exceeds atol * d.
bool is_pio_kraus_set(const KrausSet& k, const Tolerance& tol = {});

DensityMatrix apply_channel(const KrausSet& k, const DensityMatrix& rho, const Tolerance& tol = {});
DensityMatrix apply_channel(const ChannelPipeline& p, const DensityMatrix& rho, const Tolerance& tol = {});

struct Branch {
  double probability;
  PureState state;
};

/// Selective outcomes K_n|psi> / sqrt(p_n); branches with p_n <= atol are dropped.
std::vector<Branch> branch_outcomes(const KrausSet& k, const PureState& s, const Tolerance& tol = {});

/// src -> dst under PIO iff the party-a vector of src is majorized by that of dst.
bool pio_convertible(const PureState& src, const PureState& dst, const Tolerance& tol = {});

/// Explicit PIO pipeline taking src to dst: a controlled unitary collapsing
/// the conditional b-states onto |0>_b, at most da-1 two-outcome incoherent
/// instruments on party a, and a final block-permutation stage preparing the
/// target conditional b-states. Throws PreconditionError when not convertible.
ChannelPipeline synthesize_pio(const PureState& src, const PureState& dst, const Tolerance& tol = {});

/// (1/sqrt(da)) sum_i |i>_a |b_i>_b. The b-states need not be orthogonal.
PureState maximal_state(int da, const std::vector<CVector>& b_states);

/// Maximal state with every conditional b-state equal to |0>_b.
PureState maximal_state(int da, int db);

/// Single-stage mixture channel mapping `maximal` to rho: Kraus operators
/// sqrt(q_i) K_n^(i) over the spectral ensemble {q_i, y_i} of rho, each K^(i)
/// a flattened synthesize_pio(maximal -> y_i).
ChannelPipeline prepare_from_maximal(const DensityMatrix& rho, const PureState& maximal,
                                     const Tolerance& tol = {});
ChannelPipeline prepare_from_maximal(const DensityMatrix& rho, const Tolerance& tol = {});

inline constexpr std::size_t kFlattenCap = 4096;

/// All ordered products K^(last) ... K^(first); throws DimensionError when
/// the product count exceeds `cap`.
KrausSet flatten_pipeline(const ChannelPipeline& p, std::size_t cap = kFlattenCap);

/// Controlled unitary sum_i |i><i| ⊗ U_i sending each conditional b-state of
/// the support to a distinct basis vector, so the output's Schmidt vector is
/// the party-a vector of `s`. Requires support size <= db.
KrausSet orthogonalizing_pio(const PureState& s, const Tolerance& tol = {});

// Common channels.
KrausSet dephasing_channel(int da, int db);
KrausSet unitary_channel(int da, int db, const CMatrix& u);
KrausSet controlled_unitary(const std::vector<CMatrix>& blocks);

enum class PioLayerKind {
  controlled_unitary,    // sum_j |j><j| ⊗ V_j, Haar V_j
  incoherent_instrument, // D_n P_n ⊗ 1_b
  local_b_channel,       // 1_a ⊗ (Haar-isometry dilation on b)
};

struct PioRandomConfig {
  int n_kraus = 2;
  int depth = 2;
  std::uint64_t seed = 0;
  std::optional<PioLayerKind> only;  // fix every layer's kind
};

/// Random complete PIO: composition of `depth` random layers.
KrausSet random_pio(int da, int db, const PioRandomConfig& cfg);

}  // namespace pcoh
