#pragma once

#include <string>

namespace fracstoch {

/// Governs the time change: the process 𝔙 with Laplace exponent
/// z^(γ+ν) (1 + λ z^(-ν))^δ, its inverse 𝔈, and the PDEs built on them.
struct TimeChangeParams {
  double gamma = 0.5;
  double nu = 0.2;
  double delta = 1.0;
  double lambda_rate = 1.0;
  double c = 1.0;  // diffusivity, PDE-facing only

  double order() const noexcept { return gamma + nu; }

  /// ⌈δ⌉, with n = δ for integral δ and n = 0 for δ = 0.
  int n() const;

  /// Exponent of the outer stable clock, δ/n (1 for integral δ).
  double outer_order() const;

  /// Order of the r-th inner stable subordinator, (γ+ν) n/δ − r ν.
  double inner_order(int r) const;

  /// Scale applied to the r-th inner subordinator: (C(n,r) λ^r)^(1/inner_order(r)).
  double inner_coefficient(int r) const;

  /// Checks γ, ν ∈ (0,1), δ ≥ 0, δν < γ+ν ≤ 1 and that every inner order
  /// lies in (0,1]. Throws InvalidParams.
  void validate_simulation() const;

  /// Checks δν < γ+ν ≤ 2, γ, ν > 0, λ > 0, c ≠ 0; δ ∈ (−1/2, 0) is accepted.
  void validate_analytic() const;

  std::string describe() const;
};

}  // namespace fracstoch
