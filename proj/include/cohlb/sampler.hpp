#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "cohlb/linalg.hpp"

namespace cohlb {

enum class SampleMode { mixed, pure };

/// Number field the random amplitudes are drawn from. `real` restricts the
/// ensembles to real symmetric density matrices / real unit vectors.
enum class SampleField { complex, real };

std::string_view to_string(SampleMode m) noexcept;
std::string_view to_string(SampleField f) noexcept;

/// Standard normal deviates from mt19937_64 via the Box-Muller transform.
/// Both deviates of every pair are used, the spare is carried in the state,
/// so a copied stream continues bit-for-bit.
class GaussianStream {
 public:
  static constexpr std::string_view algorithm = "mt19937_64/box-muller";

  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}
  double next();
  friend bool operator==(const GaussianStream&, const GaussianStream&) = default;

 private:
  double uniform_open();  // (0, 1]
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

/// Ordered random states plus the generator that produced them.
class SampleSet {
 public:
  /// Wraps explicit states (all of one kind and dimension). Enlarging such a
  /// set continues the stream of `seed` with the complex ensemble.
  static SampleSet from_states(std::vector<QuantumState> states, std::uint64_t seed = 0);

  SampleMode mode() const noexcept { return mode_; }
  SampleField field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return dim_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t size() const noexcept { return states_.size(); }
  const std::vector<QuantumState>& states() const noexcept { return states_; }
  const QuantumState& operator[](std::size_t i) const noexcept { return states_[i]; }

 private:
  friend SampleSet sample_mixed(std::size_t, std::size_t, std::uint64_t, SampleField);
  friend SampleSet sample_pure(std::size_t, std::size_t, std::uint64_t, SampleField);
  friend SampleSet enlarge(const SampleSet&, std::size_t);
  SampleSet(SampleMode mode, SampleField field, std::size_t dim, std::uint64_t seed)
      : mode_(mode), field_(field), dim_(dim), seed_(seed), stream_(seed) {}
  void grow(std::size_t count);

  SampleMode mode_;
  SampleField field_;
  std::size_t dim_;
  std::uint64_t seed_;
  GaussianStream stream_;
  std::vector<QuantumState> states_;
};

/// Ginibre density matrices G G^dagger / Tr(G G^dagger), G a dim x dim matrix
/// of i.i.d. standard Gaussians (complex: Hilbert-Schmidt measure).
SampleSet sample_mixed(std::size_t count, std::size_t dim, std::uint64_t seed,
                       SampleField field = SampleField::complex);

/// Normalized i.i.d. Gaussian vectors (complex: Haar measure).
SampleSet sample_pure(std::size_t count, std::size_t dim, std::uint64_t seed,
                      SampleField field = SampleField::complex);

/// Appends `additional` states drawn from the continuation of the set's own
/// stream. The first size() states are unchanged.
SampleSet enlarge(const SampleSet& s, std::size_t additional);

/// Raw draws without the SampleSet wrapper, for oracles and tests that need
/// their own streams. `rank` 0 means full rank (G is dim x dim); otherwise G
/// is dim x rank.
DensityMatrix random_density(GaussianStream& g, std::size_t dim, SampleField field, std::size_t rank = 0);
PureState random_pure(GaussianStream& g, std::size_t dim, SampleField field);

}  // namespace cohlb
