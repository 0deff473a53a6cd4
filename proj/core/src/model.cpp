// model.cpp
#include "pagecurve/model.hpp"

#include <cmath>
#include <string>

#include "pagecurve/errors.hpp"

namespace pagecurve {

namespace {

void require_finite(const char* field, double value) {
  if (!std::isfinite(value)) throw ValidationError(field, "must be a finite number");
}

}  // namespace

ModelSetup build_params(int M, int N, double V, double t_s, double t_e, double g, double dt,
                        double t_max) {
  if (M < 1) throw ValidationError("M", "must be >= 1 (got " + std::to_string(M) + ")");
  if (N < 1) throw ValidationError("N", "must be >= 1 (got " + std::to_string(N) + ")");
  require_finite("V", V);
  require_finite("t_s", t_s);
  require_finite("t_e", t_e);
  require_finite("g", g);
  require_finite("dt", dt);
  require_finite("t_max", t_max);
  if (dt <= 0.0) throw ValidationError("dt", "must be > 0");
  if (t_max < dt) throw ValidationError("t_max", "must be >= dt");

  ModelSetup setup;
  setup.params = ModelParams{M, N, M + N, V, t_s, t_e, g};
  setup.grid.dt = dt;
  setup.grid.t_max = t_max;
  setup.grid.steps = static_cast<std::int64_t>(std::llround(t_max / dt));
  return setup;
}

double reflection_time_estimate(const ModelParams& params) noexcept {
  return params.t_e != 0.0 ? params.N / (2.0 * std::abs(params.t_e)) : INFINITY;
}

}  // namespace pagecurve
