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

#include "stressmetrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "stressmetrics/error.hpp"
#include "stressmetrics/graph.hpp"
#include "stressmetrics/stats.hpp"
#include "summation.hpp"
#include "text_util.hpp"

namespace stressmetrics {

std::string_view metric_name(MetricId id) {
  switch (id) {
    case MetricId::kRawStress: return "rs";
    case MetricId::kKamadaKawaiStress: return "kks";
    case MetricId::kNormalizedStress: return "ns";
    case MetricId::kScaleNormalizedStress: return "sns";
    case MetricId::kShepardGoodness: return "sgs";
    case MetricId::kShepardConstantStress: return "scs";
    case MetricId::kDistanceRatioStress: return "drs";
    case MetricId::kNonMetricStress: return "nms";
  }
  return "?";
}

std::optional<MetricId> parse_metric_id(std::string_view name) {
  for (MetricId id : kAllMetrics) {
    if (metric_name(id) == name) return id;
  }
  return std::nullopt;
}

std::vector<MetricId> parse_metric_list(std::string_view list) {
  std::vector<MetricId> out;
  for (std::string_view token : detail::split(list, ',')) {
    token = detail::trim(token);
    if (token.empty()) continue;
    if (token == "all") {
      out.assign(kAllMetrics.begin(), kAllMetrics.end());
      continue;
    }
    auto id = parse_metric_id(token);
    if (!id) {
      throw InvalidArgument("unknown metric id '" + std::string(token) +
                            "' (expected rs, kks, ns, sns, sgs, scs, drs, nms or all)");
    }
    if (std::find(out.begin(), out.end(), *id) == out.end()) out.push_back(*id);
  }
  if (out.empty()) throw InvalidArgument("empty metric list");
  return out;
}

double QuadraticStressForm::argmin() const {
  if (!(a > 0.0)) throw DegenerateLayoutError("quadratic stress form has no minimum (a <= 0)");
  return -b / (2.0 * a);
}

namespace {

void check_operands(const LayoutDistances& e, const DistanceMatrix& d) {
  if (e.size() != d.size()) {
    throw DimensionError("layout has " + std::to_string(e.size()) + " vertices, distances have " +
                         std::to_string(d.size()));
  }
  if (e.size() < 2) throw InvalidArgument("metrics need at least 2 vertices");
}

void check_positive_targets(const DistanceMatrix& d) {
  for (double v : d.values()) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidArgument("graph distances must be positive and finite off the diagonal");
    }
  }
}

void check_non_degenerate(const LayoutDistances& e) {
  if (max_drawing_distance(e) == 0.0) {
    throw DegenerateLayoutError("all points coincide; the drawing has no scale");
  }
}

}  // namespace

// ---- raw stress ------------------------------------------------------------

double raw_stress(const LayoutDistances& e, const DistanceMatrix& d) {
  check_operands(e, d);
  auto ev = e.values();
  auto dv = d.values();
  detail::CompensatedSum sum;
  for (std::size_t k = 0; k < ev.size(); ++k) {
    const double r = ev[k] - dv[k];
    sum += r * r;
  }
  return sum.value();
}

QuadraticStressForm raw_stress_quadratic(const LayoutDistances& e, const DistanceMatrix& d) {
  check_operands(e, d);
  auto ev = e.values();
  auto dv = d.values();
  detail::CompensatedSum ee, ed, dd;
  for (std::size_t k = 0; k < ev.size(); ++k) {
    ee += ev[k] * ev[k];
    ed += ev[k] * dv[k];
    dd += dv[k] * dv[k];
  }
  return {ee.value(), -2.0 * ed.value(), dd.value()};
}

double rs_alpha_min(const LayoutDistances& e, const DistanceMatrix& d) {
  check_operands(e, d);
  check_non_degenerate(e);
  auto ev = e.values();
  auto dv = d.values();
  detail::CompensatedSum num, den;
  for (std::size_t k = 0; k < ev.size(); ++k) {
    num += ev[k] * dv[k];
    den += ev[k] * ev[k];
  }
  return num.value() / den.value();
}

namespace {

// Shared by RS and NS: with per-pair weights w1 (linear) and w2 (quadratic)
// the crossing is 2 * sum w1 (e1 - e2) / sum w2 (e1^2 - e2^2).
template <class LinearWeight, class QuadWeight>
std::optional<double> alpha_intersection(const LayoutDistances& e1, const LayoutDistances& e2,
                                         const DistanceMatrix& d, LinearWeight w1, QuadWeight w2) {
  check_operands(e1, d);
  check_operands(e2, d);
  check_non_degenerate(e1);
  check_non_degenerate(e2);
  auto a = e1.values();
  auto b = e2.values();
  auto dv = d.values();
  detail::CompensatedSum num, den, lead;
  for (std::size_t k = 0; k < dv.size(); ++k) {
    num += w1(dv[k]) * (a[k] - b[k]);
    den += w2(dv[k]) * (a[k] * a[k] - b[k] * b[k]);
    lead += w2(dv[k]) * a[k] * a[k];
  }
  if (std::abs(den.value()) < 1e-12 * lead.value()) return std::nullopt;
  const double alpha = 2.0 * num.value() / den.value();
  if (!(alpha > 0.0) || !std::isfinite(alpha)) return std::nullopt;
  return alpha;
}

}  // namespace

std::optional<double> rs_alpha_intersection(const LayoutDistances& e1, const LayoutDistances& e2,
                                            const DistanceMatrix& d) {
  return alpha_intersection(
      e1, e2, d, [](double dij) { return dij; }, [](double) { return 1.0; });
}

// ---- Kamada-Kawai ----------------------------------------------------------

KKParams KKParams::from_layout(const LayoutDistances& e, const DistanceMatrix& d) {
  check_operands(e, d);
  check_non_degenerate(e);
  return with_l0(max_drawing_distance(e), d);
}

KKParams KKParams::with_l0(double l0, const DistanceMatrix& d) {
  if (!(l0 > 0.0) || !std::isfinite(l0)) {
    throw InvalidArgument("Kamada-Kawai L0 must be positive and finite");
  }
  const double dmax = max_distance(d);
  if (!(dmax > 0.0)) throw InvalidArgument("graph distances are all zero");
  return {l0, l0 / dmax};
}

double kk_stress(const LayoutDistances& e, const DistanceMatrix& d, const KKParams& params) {
  check_operands(e, d);
  check_positive_targets(d);
  auto ev = e.values();
  auto dv = d.values();
  detail::CompensatedSum sum;
  for (std::size_t k = 0; k < ev.size(); ++k) {
    const double r = ev[k] - params.l * dv[k];
    sum += r * r / (dv[k] * dv[k]);
  }
  return sum.value();
}

double kk_stress(const LayoutDistances& e, const DistanceMatrix& d) {
  check_operands(e, d);
  if (max_drawing_distance(e) == 0.0) {
    check_positive_targets(d);
    return 0.0;  // L0 = 0 makes every target vanish too
  }
  return kk_stress(e, d, KKParams::from_layout(e, d));
}

// ---- normalized stress -----------------------------------------------------

double normalized_stress(const LayoutDistances& e, const DistanceMatrix& d) {
  check_operands(e, d);
  check_positive_targets(d);
  auto ev = e.values();
  auto dv = d.values();
  detail::CompensatedSum sum;
  for (std::size_t k = 0; k < ev.size(); ++k) {
    const double r = (ev[k] - dv[k]) / dv[k];
    sum += r * r;
  }
  return sum.value();
}

QuadraticStressForm ns_quadratic(const LayoutDistances& e, const DistanceMatrix& d) {
  check_operands(e, d);
  check_positive_targets(d);
  auto ev = e.values();
  auto dv = d.values();
  detail::CompensatedSum quad, lin;
  for (std::size_t k = 0; k < ev.size(); ++k) {
    const double ratio = ev[k] / dv[k];
    quad += ratio * ratio;
    lin += ratio;
  }
  return {quad.value(), -2.0 * lin.value(), static_cast<double>(ev.size())};
}

double ns_alpha_min(const LayoutDistances& e, const DistanceMatrix& d) {
  check_non_degenerate(e);
  const auto q = ns_quadratic(e, d);
  // (sum e/d) / (sum e^2/d^2)
  return (-0.5 * q.b) / q.a;
}

ScaleAnalysis ns_scale_analysis(const LayoutDistances& e, const DistanceMatrix& d) {
  check_non_degenerate(e);
  ScaleAnalysis out;
  out.quadratic = ns_quadratic(e, d);
  out.alpha_min = (-0.5 * out.quadratic.b) / out.quadratic.a;
  detail::CompensatedSum sum;
  auto ev = e.values();
  auto dv = d.values();
  for (std::size_t k = 0; k < ev.size(); ++k) {
    const double r = (out.alpha_min * ev[k] - dv[k]) / dv[k];
    sum += r * r;
  }
  out.stress_at_min = sum.value();
  return out;
}

std::optional<double> ns_alpha_intersection(const LayoutDistances& e1, const LayoutDistances& e2,
                                            const DistanceMatrix& d) {
  check_positive_targets(d);
  return alpha_intersection(
      e1, e2, d, [](double dij) { return 1.0 / dij; }, [](double dij) { return 1.0 / (dij * dij); });
}

// ---- scale-invariant metrics -----------------------------------------------

ScaleNormalizedStress scale_normalized_stress(const LayoutDistances& e, const DistanceMatrix& d) {
  const auto analysis = ns_scale_analysis(e, d);
  return {analysis.stress_at_min, analysis.alpha_min};
}

double shepard_goodness(const LayoutDistances& e, const DistanceMatrix& d) {
  check_operands(e, d);
  if (e.size() < 3) throw InvalidArgument("Shepard goodness needs at least 3 vertices");
  return spearman(e.values(), d.values(), kShepardTieTolerance);
}

double shepard_constant_stress(const LayoutDistances& e, const DistanceMatrix& d) {
  check_operands(e, d);
  check_positive_targets(d);
  check_non_degenerate(e);
  const double beta = max_distance(d) / max_drawing_distance(e);
  auto ev = e.values();
  auto dv = d.values();
  detail::CompensatedSum sum;
  for (std::size_t k = 0; k < ev.size(); ++k) {
    const double r = (beta * ev[k] - dv[k]) / dv[k];
    sum += r * r;
  }
  return sum.value();
}

double distance_ratio_stress(const LayoutDistances& e, const DistanceMatrix& d, bool force) {
  check_operands(e, d);
  check_positive_targets(d);
  if (e.size() > kDistanceRatioMaxVertices && !force) {
    throw SizeGuardError("distance ratio stress is O(n^4); refusing n = " +
                         std::to_string(e.size()) + " > " +
                         std::to_string(kDistanceRatioMaxVertices) + " without force");
  }
  auto ev = e.values();
  auto dv = d.values();
  const std::size_t pairs = ev.size();
  std::vector<double> inv_e(pairs), inv_d(pairs);
  for (std::size_t q = 0; q < pairs; ++q) {
    if (ev[q] == 0.0) {
      throw DegenerateLayoutError("distance ratio stress needs distinct points; a drawing "
                                  "distance is zero");
    }
    inv_e[q] = 1.0 / ev[q];
    inv_d[q] = 1.0 / dv[q];
  }
  // One plain row sum per p (at most C(64,2) terms), compensated across rows.
  detail::CompensatedSum total;
  for (std::size_t p = 0; p < pairs; ++p) {
    const double ep = ev[p];
    const double dp = dv[p];
    double row = 0.0;
    for (std::size_t q = 0; q < pairs; ++q) {
      const double r = ep * inv_e[q] - dp * inv_d[q];
      row += r * r;
    }
    total += row;
  }
  return total.value();
}

double nonmetric_stress(std::span<const double> e, std::span<const double> d) {
  if (e.size() != d.size()) {
    throw DimensionError("nonmetric stress: " + std::to_string(e.size()) + " drawing distances, " +
                         std::to_string(d.size()) + " graph distances");
  }
  if (e.empty()) throw InvalidArgument("nonmetric stress needs at least one pair");
  std::vector<std::size_t> order(e.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (d[a] != d[b]) return d[a] < d[b];
    if (e[a] != e[b]) return e[a] < e[b];
    return a < b;
  });
  std::vector<double> sorted_e(e.size());
  for (std::size_t k = 0; k < order.size(); ++k) sorted_e[k] = e[order[k]];
  const auto fit = isotonic_regression(sorted_e);

  detail::CompensatedSum num, den;
  for (std::size_t k = 0; k < sorted_e.size(); ++k) {
    const double r = sorted_e[k] - fit.fitted[k];
    num += r * r;
  }
  for (double v : e) den += v * v;
  if (!(den.value() > 0.0)) {
    throw DegenerateLayoutError("all points coincide; nonmetric stress is undefined");
  }
  return std::sqrt(num.value() / den.value());
}

double nonmetric_stress(const LayoutDistances& e, const DistanceMatrix& d) {
  check_operands(e, d);
  return nonmetric_stress(e.values(), d.values());
}

// ---- uniform access --------------------------------------------------------

MetricValue evaluate_metric(MetricId id, const LayoutDistances& e, const DistanceMatrix& d,
                            const MetricOptions& options) {
  switch (id) {
    case MetricId::kRawStress: {
      MetricValue v{raw_stress(e, d), std::nullopt};
      if (max_drawing_distance(e) > 0.0) v.alpha_min = rs_alpha_min(e, d);
      return v;
    }
    case MetricId::kKamadaKawaiStress:
      if (options.kk_l0) return {kk_stress(e, d, KKParams::with_l0(*options.kk_l0, d)), {}};
      return {kk_stress(e, d), {}};
    case MetricId::kNormalizedStress: {
      MetricValue v{normalized_stress(e, d), std::nullopt};
      if (max_drawing_distance(e) > 0.0) v.alpha_min = ns_alpha_min(e, d);
      return v;
    }
    case MetricId::kScaleNormalizedStress: {
      const auto sns = scale_normalized_stress(e, d);
      return {sns.value, sns.alpha_min};
    }
    case MetricId::kShepardGoodness: return {shepard_goodness(e, d), {}};
    case MetricId::kShepardConstantStress: return {shepard_constant_stress(e, d), {}};
    case MetricId::kDistanceRatioStress:
      return {distance_ratio_stress(e, d, options.force_drs), {}};
    case MetricId::kNonMetricStress: return {nonmetric_stress(e, d), {}};
  }
  throw InvalidArgument("unknown metric");
}

std::vector<CurvePoint> stress_curve(const Layout& x, const DistanceMatrix& d, MetricId id,
                                     std::span<const double> alphas,
                                     const MetricOptions& options) {
  for (double a : alphas) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw InvalidArgument("curve scale factors must be positive and finite");
    }
  }
  const LayoutDistances base = pairwise_distances(x);
  std::optional<QuadraticStressForm> quadratic;
  if (id == MetricId::kRawStress) quadratic = raw_stress_quadratic(base, d);
  if (id == MetricId::kNormalizedStress) quadratic = ns_quadratic(base, d);

  std::vector<CurvePoint> curve;
  curve.reserve(alphas.size());
  for (double alpha : alphas) {
    const LayoutDistances e = pairwise_distances(scale_layout(x, alpha));
    MetricOptions scaled = options;
    if (scaled.kk_l0) *scaled.kk_l0 *= alpha;
    const double value = evaluate_metric(id, e, d, scaled).value;
    if (quadratic) {
      const double expected = quadratic->evaluate(alpha);
      if (std::abs(expected - value) > 1e-9 * (1.0 + std::abs(value))) {
        throw std::logic_error("stress curve disagrees with its quadratic form at alpha = " +
                               std::to_string(alpha));
      }
    }
    curve.push_back({alpha, value});
  }
  return curve;
}

}  // namespace stressmetrics
