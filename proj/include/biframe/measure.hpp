#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "biframe/linalg.hpp"

namespace biframe {

enum class QuadratureRule { Midpoint, Gauss2, Gauss4 };

std::string_view to_string(QuadratureRule rule) noexcept;
/// Accepts "midpoint", "gauss2", "gauss4"; throws InvalidConfig otherwise.
QuadratureRule parse_rule(std::string_view name);

/// A finite discretization of (Omega, mu): nodes with strictly positive weights.
///
/// Interval spaces are composite quadratures of Lebesgue measure on [a, b]; discrete spaces
/// label their atoms 0..n-1.
class MeasureSpace {
 public:
  enum class Kind { Interval, Discrete };

  Kind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }
  double total_mass() const noexcept;

  // Interval descriptor; meaningless for discrete spaces.
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  int panels() const noexcept { return panels_; }
  QuadratureRule rule() const noexcept { return rule_; }
  /// Atoms per base node; see with_channels.
  int channels() const noexcept { return channels_; }

  friend MeasureSpace interval_measure(double a, double b, int panels, QuadratureRule rule);
  friend MeasureSpace discrete_measure(std::span<const double> weights);
  friend MeasureSpace with_channels(const MeasureSpace& base, int channels);

 private:
  MeasureSpace() = default;

  Kind kind_ = Kind::Discrete;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  double a_ = 0.0;
  double b_ = 0.0;
  int panels_ = 0;
  QuadratureRule rule_ = QuadratureRule::Midpoint;
  int channels_ = 1;
};

/// Composite rule with `panels` equal panels on [a, b]. Throws InvalidInterval if a >= b,
/// InvalidConfig if panels < 1.
MeasureSpace interval_measure(double a, double b, int panels, QuadratureRule rule);

/// Atom i carries mass weights[i]. Throws NonpositiveWeight.
MeasureSpace discrete_measure(std::span<const double> weights);

/// Product of `base` with `channels` unit atoms: node i of the base becomes nodes
/// i*channels .. i*channels + channels - 1, each with the base weight. Throws InvalidConfig
/// if channels < 1.
MeasureSpace with_channels(const MeasureSpace& base, int channels);

/// sum_i w_i s_i. Throws LengthMismatch.
Scalar integrate(std::span<const Scalar> samples, const MeasureSpace& m);
double integrate(std::span<const double> samples, const MeasureSpace& m);

}  // namespace biframe
