#include "sepvol/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sepvol/error.hpp"
#include "sepvol/parallel.hpp"
#include "sepvol/separability.hpp"

namespace sepvol {

namespace {

std::size_t bin_of(double value) noexcept {
  const double clamped = std::clamp(value, 0.0, 1.0);
  return std::min(kHistogramBins - 1,
                  static_cast<std::size_t>(clamped * static_cast<double>(kHistogramBins)));
}

}  // namespace

VolumeEstimate VolumeEstimate::from_counts(std::uint64_t n_separable,
                                           std::uint64_t n_samples) {
  if (n_samples == 0) throw InvalidInput("VolumeEstimate: no samples");
  if (n_separable > n_samples) {
    throw InvalidInput("VolumeEstimate: more separable samples than samples");
  }
  VolumeEstimate e;
  e.n_samples = n_samples;
  e.n_separable = n_separable;
  e.mean = static_cast<double>(n_separable) / static_cast<double>(n_samples);
  e.std_error = std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(n_samples));
  return e;
}

VolumeEstimate frame_fraction(const Frame& frame, std::uint64_t n_points,
                              RandomStream& rng) {
  if (n_points == 0) throw InvalidInput("frame_fraction: n_points must be >= 1");
  PptClassifier classifier(frame);
  std::vector<double> p(frame.size());
  std::uint64_t separable = 0;
  for (std::uint64_t n = 0; n < n_points; ++n) {
    sample_simplex_into(rng, p);
    if (classifier.separable(p)) ++separable;
  }
  return VolumeEstimate::from_counts(separable, n_points);
}

const FrameRecord& GlobalVolume::min_frame() const {
  if (frames.empty()) throw InvalidInput("GlobalVolume: no frames");
  return *std::min_element(frames.begin(), frames.end(),
                           [](const FrameRecord& a, const FrameRecord& b) {
                             return a.fraction.mean < b.fraction.mean;
                           });
}

GlobalVolume global_volume(const BipartiteDims& dims, std::size_t n_frames,
                           std::uint64_t n_points, std::uint64_t seed,
                           const EstimatorOptions& options) {
  if (n_frames == 0) throw InvalidInput("global_volume: n_frames must be >= 1");
  if (n_points == 0) throw InvalidInput("global_volume: n_points must be >= 1");

  GlobalVolume result;
  result.frames.resize(n_frames);
  parallel_for(n_frames, options.threads, [&](std::size_t i) {
    RandomStream rng = derive_stream(seed, i);
    const Frame frame = frame_from_unitary(haar_unitary(dims.total(), rng), dims);
    FrameRecord& rec = result.frames[i];
    rec.frame_index = i;
    rec.frame_entanglement = frame_entanglement(frame, options.measure);
    rec.fraction = frame_fraction(frame, n_points, rng);
  });

  std::uint64_t separable = 0;
  double sum = 0.0, sum_sq = 0.0;
  for (const auto& rec : result.frames) {
    separable += rec.fraction.n_separable;
    sum += rec.fraction.mean;
    sum_sq += rec.fraction.mean * rec.fraction.mean;
  }
  result.pooled = VolumeEstimate::from_counts(separable, n_points * n_frames);
  if (n_frames > 1) {
    const double n = static_cast<double>(n_frames);
    const double variance = std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
    result.frame_std_error = std::sqrt(variance / n);
  }
  return result;
}

std::vector<SweepNode> sweep_two_param(std::size_t grid_size,
                                       std::uint64_t n_points, std::uint64_t seed,
                                       const EstimatorOptions& options) {
  if (grid_size < 2) throw InvalidInput("sweep_two_param: grid_size must be >= 2");
  if (n_points == 0) throw InvalidInput("sweep_two_param: n_points must be >= 1");
  const double step = std::numbers::pi / 4 / static_cast<double>(grid_size - 1);
  std::vector<SweepNode> nodes(grid_size * grid_size);
  parallel_for(nodes.size(), options.threads, [&](std::size_t n) {
    SweepNode& node = nodes[n];
    node.theta = static_cast<double>(n / grid_size) * step;
    node.alpha = static_cast<double>(n % grid_size) * step;
    RandomStream rng = derive_stream(seed, n);
    node.fraction = frame_fraction(two_param_frame(node.theta, node.alpha), n_points, rng);
  });
  return nodes;
}

ScanRow scan_row(const BipartiteDims& dims, const GlobalVolume& volume,
                 std::uint64_t n_points) {
  ScanRow row;
  row.dims = dims;
  row.n_frames = volume.frames.size();
  row.n_points = n_points;
  row.mean_fraction = volume.pooled.mean;
  const auto& worst = volume.min_frame();
  row.min_fraction = worst.fraction.mean;
  row.min_std_error = worst.fraction.std_error;
  double ent = 0.0;
  for (const auto& rec : volume.frames) ent += rec.frame_entanglement;
  row.mean_entanglement = ent / static_cast<double>(volume.frames.size());
  return row;
}

std::vector<ScanRow> dimension_scan(std::span<const BipartiteDims> dims_list,
                                    std::size_t n_frames, std::uint64_t n_points,
                                    std::uint64_t seed,
                                    const EstimatorOptions& options) {
  std::vector<ScanRow> rows;
  rows.reserve(dims_list.size());
  for (const auto& dims : dims_list) {
    rows.push_back(scan_row(dims, global_volume(dims, n_frames, n_points, seed, options),
                            n_points));
  }
  return rows;
}

ExponentialFit fit_exponential(std::span<const double> total_dims,
                               std::span<const double> means) {
  if (total_dims.size() != means.size()) {
    throw InvalidInput("fit_exponential: abscissa and mean counts differ");
  }
  const std::size_t n = means.size();
  if (n < 2) throw InvalidInput("fit_exponential: at least two points required");
  std::vector<double> logs(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(means[i] > 0.0)) {
      throw DomainError("positive-mean", "fit_exponential: non-positive mean " +
                                             std::to_string(means[i]));
    }
    logs[i] = std::log(means[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += total_dims[i];
    my += logs[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (total_dims[i] - mx) * (total_dims[i] - mx);
    sxy += (total_dims[i] - mx) * (logs[i] - my);
  }
  if (sxx == 0.0) throw InvalidInput("fit_exponential: all abscissae coincide");
  const double slope = sxy / sxx;
  ExponentialFit fit;
  fit.decay_rate = -slope;
  fit.log_intercept = my - slope * mx;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = logs[i] - (fit.log_intercept + slope * total_dims[i]);
    fit.max_abs_residual = std::max(fit.max_abs_residual, std::abs(r));
  }
  return fit;
}

ExponentialFit fit_exponential(std::span<const ScanRow> rows) {
  std::vector<double> d, m;
  for (const auto& row : rows) {
    d.push_back(static_cast<double>(row.dims.total()));
    m.push_back(row.mean_fraction);
  }
  return fit_exponential(d, m);
}

double radius_ratio(long long d, double decay_rate) {
  if (d < 2) throw InvalidInput("radius_ratio: d must be >= 2");
  if (!(decay_rate >= 0.0)) throw InvalidInput("radius_ratio: decay_rate must be >= 0");
  const double dd = static_cast<double>(d);
  return std::exp(-decay_rate * dd / (dd * dd - 1.0));
}

FrameHistograms frame_histograms(std::span<const FrameRecord> records) {
  FrameHistograms h;
  h.fraction.assign(kHistogramBins, 0);
  h.entanglement.assign(kHistogramBins, 0);
  h.joint.assign(kHistogramBins * kHistogramBins, 0);
  for (const auto& rec : records) {
    const std::size_t f = bin_of(rec.fraction.mean);
    const std::size_t e = bin_of(rec.frame_entanglement);
    ++h.fraction[f];
    ++h.entanglement[e];
    ++h.joint[f * kHistogramBins + e];
  }
  return h;
}

}  // namespace sepvol
