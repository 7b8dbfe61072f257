#include "fracstoch/params.hpp"

#include <cmath>
#include <sstream>

#include "fracstoch/error.hpp"

namespace fracstoch {

namespace {

double binomial(int n, int r) {
  double out = 1.0;
  for (int k = 1; k <= r; ++k) out = out * (n - r + k) / k;
  return out;
}

}  // namespace

int TimeChangeParams::n() const {
  if (delta <= 0.0) return 0;
  return static_cast<int>(std::ceil(delta));
}

double TimeChangeParams::outer_order() const {
  const int m = n();
  return m == 0 ? 1.0 : delta / m;
}

double TimeChangeParams::inner_order(int r) const {
  const int m = n();
  if (m == 0) return order();
  return order() * m / delta - r * nu;
}

double TimeChangeParams::inner_coefficient(int r) const {
  const int m = n();
  if (m == 0) return 1.0;
  const double weight = binomial(m, r) * std::pow(lambda_rate, r);
  return std::pow(weight, 1.0 / inner_order(r));
}

void TimeChangeParams::validate_simulation() const {
  require(gamma > 0.0 && gamma < 1.0, "gamma must lie in (0,1)");
  require(nu > 0.0 && nu < 1.0, "nu must lie in (0,1)");
  require(delta >= 0.0, "simulation requires delta >= 0");
  require(lambda_rate > 0.0, "lambda must be positive");
  require(delta * nu < order() && order() <= 1.0, "simulation requires delta*nu < gamma+nu <= 1");
  const int m = n();
  for (int r = 0; r <= m; ++r) {
    const double a = inner_order(r);
    require(a > 0.0 && a <= 1.0 + 1e-12,
            "inner stable order (gamma+nu)n/delta - r*nu must lie in (0,1]; need gamma+nu <= delta/n");
  }
}

void TimeChangeParams::validate_analytic() const {
  require(gamma > 0.0 && nu > 0.0, "gamma and nu must be positive");
  require(std::isfinite(delta), "delta must be finite");
  require(delta > -0.5, "delta must exceed -1/2");
  require(lambda_rate > 0.0, "lambda must be positive");
  require(c != 0.0, "diffusivity c must be non-zero");
  require(delta * nu < order() && order() <= 2.0, "analytic mode requires delta*nu < gamma+nu <= 2");
  if (gamma == 1.0 && nu == 1.0) require(delta <= 1.0, "wave-telegraph case gamma=nu=1 allows only delta <= 1");
}

std::string TimeChangeParams::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "gamma=" << gamma << " nu=" << nu << " delta=" << delta << " lambda=" << lambda_rate << " c=" << c;
  return os.str();
}

}  // namespace fracstoch
