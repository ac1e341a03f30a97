#include "semilab/gheat.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "semilab/errors.hpp"
#include "semilab/parallel.hpp"

namespace semilab {

void GHeatConfig::validate() const {
    if (!(sigma_lo >= 0.0) || !(sigma_lo <= sigma_hi) || !(sigma_hi > 0.0) || !std::isfinite(sigma_hi)) {
        throw DomainError("G-heat requires 0 <= sigma_lo <= sigma_hi and sigma_hi > 0");
    }
    if (!(cfl > 0.0) || !(cfl <= 1.0)) throw DomainError("G-heat requires 0 < cfl <= 1");
}

GridFunction fd_step(const GridFunction& f, double dt, const GHeatConfig& config) {
    config.validate();
    if (!(dt >= 0.0)) throw DomainError("fd_step requires dt >= 0");
    const double dx = f.grid().dx;
    const double lo2 = config.sigma_lo * config.sigma_lo;
    const double hi2 = config.sigma_hi * config.sigma_hi;
    const double ratio = hi2 * dt / (dx * dx);
    if (ratio > 1.0 + 1e-12) {
        throw CFLViolation("sigma_hi^2 dt / dx^2 = " + std::to_string(ratio) + " exceeds 1");
    }
    const double inv = 1.0 / (dx * dx);
    const double half_dt = 0.5 * dt;
    std::vector<double> out(f.size());
    parallel_for(f.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const auto ii = static_cast<std::ptrdiff_t>(i);
            const double d2 = (f.at(ii + 1) - 2.0 * f[i] + f.at(ii - 1)) * inv;
            out[i] = f[i] + half_dt * std::max(lo2 * d2, hi2 * d2);
        }
    });
    return GridFunction(f.grid(), std::move(out));
}

std::size_t fd_step_count(double t, double dx, const GHeatConfig& config) {
    const double hi2 = config.sigma_hi * config.sigma_hi;
    const double exact = t * hi2 / (config.cfl * dx * dx);
    // Shave a relative ulp-scale amount so exact multiples do not round up.
    const auto n = static_cast<std::size_t>(std::ceil(exact * (1.0 - 1e-12)));
    return std::max<std::size_t>(n, 1);
}

GridFunction fd_evolve(const GridFunction& f, double t, const GHeatConfig& config) {
    config.validate();
    if (!(t >= 0.0)) throw DomainError("fd_evolve requires t >= 0");
    if (t == 0.0) return f;
    const std::size_t steps = fd_step_count(t, f.grid().dx, config);
    const double dt = t / static_cast<double>(steps);
    GridFunction u = f;
    for (std::size_t k = 0; k < steps; ++k) u = fd_step(u, dt, config);
    return u;
}

GridFunction nisio_step(const GridFunction& f, double h, const GHeatConfig& config) {
    config.validate();
    if (!(h >= 0.0)) throw DomainError("nisio_step requires h >= 0");
    const double lo2 = config.sigma_lo * config.sigma_lo;
    const double hi2 = config.sigma_hi * config.sigma_hi;
    return pointwise_max(gauss_convolve(f, lo2 * h), gauss_convolve(f, hi2 * h));
}

GridFunction nisio_evolve(const GridFunction& f, double t, std::size_t n_steps,
                          const GHeatConfig& config) {
    if (!(t >= 0.0)) throw DomainError("nisio_evolve requires t >= 0");
    if (n_steps < 1) throw DomainError("nisio_evolve requires n_steps >= 1");
    if (t == 0.0) return f;
    const double h = t / static_cast<double>(n_steps);
    GridFunction u = f;
    for (std::size_t k = 0; k < n_steps; ++k) u = nisio_step(u, h, config);
    return u;
}

GridFunction gheat_generator_reference(const GridFunction& f, const GHeatConfig& config) {
    const double lo2 = config.sigma_lo * config.sigma_lo;
    const double hi2 = config.sigma_hi * config.sigma_hi;
    const GridFunction d2 = second_diff(f);
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * std::max(lo2 * d2[i], hi2 * d2[i]);
    return GridFunction(f.grid(), std::move(out));
}

GHeatSemigroup::GHeatSemigroup(Grid grid, GHeatConfig config, GHeatScheme scheme,
                               std::size_t steps_per_unit_time)
    : grid_(grid), config_(config), scheme_(scheme), steps_per_unit_time_(steps_per_unit_time) {
    config_.validate();
    if (scheme_ == GHeatScheme::NisioProduct && steps_per_unit_time_ < 1) {
        throw DomainError("Nisio scheme requires at least one step per unit time");
    }
}

std::size_t GHeatSemigroup::nisio_steps(double t) const {
    const double exact = t * static_cast<double>(steps_per_unit_time_);
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(exact * (1.0 - 1e-12))));
}

GridFunction GHeatSemigroup::evolve(const GridFunction& f, double t) const {
    if (!(f.grid() == grid_)) throw GridMismatch("input does not live on the semigroup's grid");
    if (scheme_ == GHeatScheme::FiniteDifference) return fd_evolve(f, t, config_);
    if (!(t >= 0.0)) throw DomainError("evolve requires t >= 0");
    if (t == 0.0) return f;
    return nisio_evolve(f, t, nisio_steps(t), config_);
}

std::string GHeatSemigroup::name() const {
    return scheme_ == GHeatScheme::FiniteDifference ? "gheat-fd" : "gheat-nisio";
}

}  // namespace semilab
