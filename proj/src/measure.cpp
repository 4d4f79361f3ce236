#include "biframe/measure.hpp"

#include <array>
#include <cmath>
#include <numeric>

#include "biframe/error.hpp"

namespace biframe {

namespace {

struct Rule {
  std::vector<double> abscissae;  // on [-1, 1]
  std::vector<double> weights;    // sum to 2
};

Rule reference_rule(QuadratureRule rule) {
  switch (rule) {
    case QuadratureRule::Midpoint:
      return {{0.0}, {2.0}};
    case QuadratureRule::Gauss2: {
      const double x = 1.0 / std::sqrt(3.0);
      return {{-x, x}, {1.0, 1.0}};
    }
    case QuadratureRule::Gauss4: {
      const double inner = std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
      const double outer = std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
      const double w_inner = (18.0 + std::sqrt(30.0)) / 36.0;
      const double w_outer = (18.0 - std::sqrt(30.0)) / 36.0;
      return {{-outer, -inner, inner, outer}, {w_outer, w_inner, w_inner, w_outer}};
    }
  }
  throw Error(ErrorCode::InvalidConfig, "unknown quadrature rule");
}

}  // namespace

std::string_view to_string(QuadratureRule rule) noexcept {
  switch (rule) {
    case QuadratureRule::Midpoint: return "midpoint";
    case QuadratureRule::Gauss2: return "gauss2";
    case QuadratureRule::Gauss4: return "gauss4";
  }
  return "midpoint";
}

QuadratureRule parse_rule(std::string_view name) {
  if (name == "midpoint") return QuadratureRule::Midpoint;
  if (name == "gauss2") return QuadratureRule::Gauss2;
  if (name == "gauss4") return QuadratureRule::Gauss4;
  throw Error(ErrorCode::InvalidConfig, "unknown quadrature rule '" + std::string(name) + "'");
}

double MeasureSpace::total_mass() const noexcept {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

MeasureSpace interval_measure(double a, double b, int panels, QuadratureRule rule) {
  if (!(std::isfinite(a) && std::isfinite(b)) || !(a < b)) {
    throw Error(ErrorCode::InvalidInterval, "need a < b, got [" + std::to_string(a) + ", " + std::to_string(b) + "]");
  }
  if (panels < 1) throw Error(ErrorCode::InvalidConfig, "panels must be >= 1");

  const Rule ref = reference_rule(rule);
  MeasureSpace m;
  m.kind_ = MeasureSpace::Kind::Interval;
  m.a_ = a;
  m.b_ = b;
  m.panels_ = panels;
  m.rule_ = rule;
  m.nodes_.reserve(static_cast<std::size_t>(panels) * ref.abscissae.size());
  m.weights_.reserve(m.nodes_.capacity());

  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double left = a + p * h;
    const double center = left + 0.5 * h;
    for (std::size_t k = 0; k < ref.abscissae.size(); ++k) {
      m.nodes_.push_back(center + 0.5 * h * ref.abscissae[k]);
      m.weights_.push_back(0.5 * h * ref.weights[k]);
    }
  }
  return m;
}

MeasureSpace discrete_measure(std::span<const double> weights) {
  if (weights.empty()) throw Error(ErrorCode::InvalidConfig, "discrete measure needs at least one atom");
  MeasureSpace m;
  m.kind_ = MeasureSpace::Kind::Discrete;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      throw Error(ErrorCode::NonpositiveWeight, "weight " + std::to_string(i) + " is not a positive finite number");
    }
    m.nodes_.push_back(static_cast<double>(i));
    m.weights_.push_back(weights[i]);
  }
  return m;
}

MeasureSpace with_channels(const MeasureSpace& base, int channels) {
  if (channels < 1) throw Error(ErrorCode::InvalidConfig, "channels must be >= 1");
  MeasureSpace m = base;
  m.channels_ = base.channels_ * channels;
  m.nodes_.clear();
  m.weights_.clear();
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (int c = 0; c < channels; ++c) {
      m.nodes_.push_back(base.nodes_[i]);
      m.weights_.push_back(base.weights_[i]);
    }
  }
  return m;
}

Scalar integrate(std::span<const Scalar> samples, const MeasureSpace& m) {
  if (samples.size() != m.size()) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(samples.size()) + " samples for " + std::to_string(m.size()) + " nodes");
  }
  Scalar sum{};
  for (std::size_t i = 0; i < samples.size(); ++i) sum += m.weights()[i] * samples[i];
  return sum;
}

double integrate(std::span<const double> samples, const MeasureSpace& m) {
  if (samples.size() != m.size()) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(samples.size()) + " samples for " + std::to_string(m.size()) + " nodes");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) sum += m.weights()[i] * samples[i];
  return sum;
}

}  // namespace biframe
