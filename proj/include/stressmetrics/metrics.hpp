// Copyright 2026 The stressmetrics Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Stress-based quality metrics for graph drawings, and the closed-form
// analysis of how the scale-sensitive ones move under uniform scaling.
//
// Every metric takes drawing distances `e` and graph distances `d` of the
// same order and sums over pairs i < j in row-major order. Lower is better
// for all metrics except the Shepard goodness score.

#ifndef STRESSMETRICS_METRICS_HPP_
#define STRESSMETRICS_METRICS_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stressmetrics/layout.hpp"
#include "stressmetrics/pairwise.hpp"

namespace stressmetrics {

enum class MetricId {
  kRawStress,
  kKamadaKawaiStress,
  kNormalizedStress,
  kScaleNormalizedStress,
  kShepardGoodness,
  kShepardConstantStress,
  kDistanceRatioStress,
  kNonMetricStress,
};

inline constexpr std::array<MetricId, 8> kAllMetrics = {
    MetricId::kRawStress,          MetricId::kKamadaKawaiStress,
    MetricId::kNormalizedStress,   MetricId::kScaleNormalizedStress,
    MetricId::kShepardGoodness,    MetricId::kShepardConstantStress,
    MetricId::kDistanceRatioStress, MetricId::kNonMetricStress,
};

// Stable ids: rs, kks, ns, sns, sgs, scs, drs, nms.
std::string_view metric_name(MetricId id);
std::optional<MetricId> parse_metric_id(std::string_view name);
// Comma-separated list; "all" expands to every metric. Throws InvalidArgument.
std::vector<MetricId> parse_metric_list(std::string_view list);

constexpr bool higher_is_better(MetricId id) { return id == MetricId::kShepardGoodness; }

// stress(alpha) = a*alpha^2 + b*alpha + c.
struct QuadraticStressForm {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double evaluate(double alpha) const { return (a * alpha + b) * alpha + c; }
  // Vertex of the parabola, -b / 2a. Requires a > 0.
  double argmin() const;
};

struct ScaleAnalysis {
  double alpha_min = 0.0;
  double stress_at_min = 0.0;
  QuadraticStressForm quadratic;
};

// Kamada-Kawai edge length: L = L0 / max d_ij.
struct KKParams {
  double l0 = 0.0;
  double l = 0.0;

  // L0 = max drawing distance. Throws DegenerateLayoutError for a collapsed drawing.
  static KKParams from_layout(const LayoutDistances& e, const DistanceMatrix& d);
  // Caller-chosen L0 (> 0), e.g. a window side length.
  static KKParams with_l0(double l0, const DistanceMatrix& d);
};

// ---- scale-sensitive -------------------------------------------------------

double raw_stress(const LayoutDistances& e, const DistanceMatrix& d);
QuadraticStressForm raw_stress_quadratic(const LayoutDistances& e, const DistanceMatrix& d);
double rs_alpha_min(const LayoutDistances& e, const DistanceMatrix& d);

// Positive alpha where RS(alpha X1) = RS(alpha X2); nullopt when the curves
// share their leading coefficient or only cross at alpha <= 0.
std::optional<double> rs_alpha_intersection(const LayoutDistances& e1, const LayoutDistances& e2,
                                            const DistanceMatrix& d);

// L0 defaults to the drawing's own max distance; a collapsed drawing scores 0.
double kk_stress(const LayoutDistances& e, const DistanceMatrix& d);
double kk_stress(const LayoutDistances& e, const DistanceMatrix& d, const KKParams& params);

double normalized_stress(const LayoutDistances& e, const DistanceMatrix& d);
QuadraticStressForm ns_quadratic(const LayoutDistances& e, const DistanceMatrix& d);
double ns_alpha_min(const LayoutDistances& e, const DistanceMatrix& d);
ScaleAnalysis ns_scale_analysis(const LayoutDistances& e, const DistanceMatrix& d);
std::optional<double> ns_alpha_intersection(const LayoutDistances& e1, const LayoutDistances& e2,
                                            const DistanceMatrix& d);

// ---- scale-invariant -------------------------------------------------------

struct ScaleNormalizedStress {
  double value = 0.0;
  double alpha_min = 0.0;
};

// Normalized stress at its optimal scale. O(n^2).
ScaleNormalizedStress scale_normalized_stress(const LayoutDistances& e, const DistanceMatrix& d);

// Relative gap under which two drawing distances rank as tied in the
// Shepard goodness score.
inline constexpr double kShepardTieTolerance = 1e-12;

// Spearman correlation between drawing and graph distances over all pairs.
double shepard_goodness(const LayoutDistances& e, const DistanceMatrix& d);

// Normalized stress after scaling by beta = max d / max e.
double shepard_constant_stress(const LayoutDistances& e, const DistanceMatrix& d);

inline constexpr std::size_t kDistanceRatioMaxVertices = 64;

// Sum over all ordered pairs of pairs of (e_p/e_q - d_p/d_q)^2. O(n^4);
// refuses n > kDistanceRatioMaxVertices unless `force`.
double distance_ratio_stress(const LayoutDistances& e, const DistanceMatrix& d,
                             bool force = false);

// Kruskal stress-1 against isotonic disparities, in [0, 1].
double nonmetric_stress(const LayoutDistances& e, const DistanceMatrix& d);
// Same on explicit per-pair value lists.
double nonmetric_stress(std::span<const double> e, std::span<const double> d);

// ---- uniform access --------------------------------------------------------

struct MetricOptions {
  // Kamada-Kawai L0 override, in the units of the unscaled drawing.
  std::optional<double> kk_l0;
  bool force_drs = false;
};

struct MetricValue {
  double value = 0.0;
  std::optional<double> alpha_min;  // rs, ns, sns
};

MetricValue evaluate_metric(MetricId id, const LayoutDistances& e, const DistanceMatrix& d,
                            const MetricOptions& options = {});

struct CurvePoint {
  double alpha = 0.0;
  double value = 0.0;
};

/**
 * metric(scale(x, alpha), d) for each alpha. RS and NS values are checked
 * against their quadratic forms. A KKS L0 override is treated as a window
 * size tied to the drawing, so it scales with alpha as well.
 */
std::vector<CurvePoint> stress_curve(const Layout& x, const DistanceMatrix& d, MetricId id,
                                     std::span<const double> alphas,
                                     const MetricOptions& options = {});

}  // namespace stressmetrics

#endif  // STRESSMETRICS_METRICS_HPP_
