#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sepvol/frames.hpp"
#include "sepvol/linalg.hpp"
#include "sepvol/sampling.hpp"

namespace sepvol {

/// Binomial Monte Carlo estimate: mean = n_separable / n_samples and
/// std_error = sqrt(mean (1 - mean) / n_samples).
struct VolumeEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t n_separable = 0;

  static VolumeEstimate from_counts(std::uint64_t n_separable,
                                    std::uint64_t n_samples);
};

struct FrameRecord {
  std::size_t frame_index = 0;
  double frame_entanglement = 0.0;
  VolumeEstimate fraction;
};

struct EstimatorOptions {
  unsigned threads = 0;  // 0 = hardware concurrency; never changes results
  EntanglementMeasure measure = EntanglementMeasure::Entropy;
};

/// Separable fraction of the simplex attached to `frame`, from n_points
/// uniform simplex samples classified by the PPT test.
VolumeEstimate frame_fraction(const Frame& frame, std::uint64_t n_points,
                              RandomStream& rng);

struct GlobalVolume {
  /// Pooled over all n_frames * n_points states. Its std_error is the
  /// binomial one and ignores frame-to-frame variation.
  VolumeEstimate pooled;
  /// Standard error of the mean of per-frame fractions.
  double frame_std_error = 0.0;
  std::vector<FrameRecord> frames;

  const FrameRecord& min_frame() const;
};

/// Orbit average of the separable fraction. Frame i is drawn from
/// derive_stream(seed, i), which also supplies its simplex points.
GlobalVolume global_volume(const BipartiteDims& dims, std::size_t n_frames,
                           std::uint64_t n_points, std::uint64_t seed,
                           const EstimatorOptions& options = {});

struct SweepNode {
  double theta = 0.0;
  double alpha = 0.0;
  VolumeEstimate fraction;
};

/// grid_size x grid_size nodes over [0, pi/4]^2 of two_param_frame, row
/// major in theta. Node n uses derive_stream(seed, n).
std::vector<SweepNode> sweep_two_param(std::size_t grid_size,
                                       std::uint64_t n_points,
                                       std::uint64_t seed,
                                       const EstimatorOptions& options = {});

struct ScanRow {
  BipartiteDims dims{1, 1};
  double mean_fraction = 0.0;
  double min_fraction = 0.0;
  /// Binomial std_error of the frame attaining min_fraction.
  double min_std_error = 0.0;
  double mean_entanglement = 0.0;
  std::size_t n_frames = 0;
  std::uint64_t n_points = 0;
};

ScanRow scan_row(const BipartiteDims& dims, const GlobalVolume& volume,
                 std::uint64_t n_points);

/// One global_volume run per entry, each with the same seed; rows follow
/// the input order.
std::vector<ScanRow> dimension_scan(std::span<const BipartiteDims> dims_list,
                                    std::size_t n_frames, std::uint64_t n_points,
                                    std::uint64_t seed,
                                    const EstimatorOptions& options = {});

/// Least-squares line ln(mean) = log_intercept - decay_rate * d.
struct ExponentialFit {
  double decay_rate = 0.0;
  double log_intercept = 0.0;
  double max_abs_residual = 0.0;  // in ln(mean)
};

/// Throws InvalidInput on fewer than two points or a single abscissa and
/// DomainError("positive-mean") on a non-positive mean.
ExponentialFit fit_exponential(std::span<const double> total_dims,
                               std::span<const double> means);
/// Abscissa d = d_A * d_B.
ExponentialFit fit_exponential(std::span<const ScanRow> rows);

/// exp(-decay_rate d / (d^2 - 1)): the radius ratio of concentric balls in
/// d^2 - 1 dimensions whose volume ratio is exp(-decay_rate d).
double radius_ratio(long long d, double decay_rate);

inline constexpr std::size_t kHistogramBins = 50;

/// Counts on 50 uniform bins over [0, 1]; value 1 falls in the last bin.
struct FrameHistograms {
  std::vector<std::uint64_t> fraction;      // kHistogramBins
  std::vector<std::uint64_t> entanglement;  // kHistogramBins
  std::vector<std::uint64_t> joint;         // [fraction_bin * bins + entanglement_bin]
};

FrameHistograms frame_histograms(std::span<const FrameRecord> records);

}  // namespace sepvol
