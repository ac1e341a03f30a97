#pragma once

#include <cstddef>

#include "semilab/gridfn.hpp"
#include "semilab/semigroup.hpp"

namespace semilab {

/// Volatility band [sigma_lo, sigma_hi] of the G-heat equation
///   u_t = 1/2 max(sigma_lo^2 u_xx, sigma_hi^2 u_xx),
/// plus the target ratio sigma_hi^2 dt / dx^2 for the explicit scheme.
struct GHeatConfig {
    double sigma_lo = 0.5;
    double sigma_hi = 1.0;
    double cfl = 0.5;

    // Throws DomainError unless 0 <= sigma_lo <= sigma_hi, sigma_hi > 0 and
    // 0 < cfl <= 1.
    void validate() const;
};

/// One explicit step f + dt/2 max(sigma_lo^2 D2 f, sigma_hi^2 D2 f).
/// Monotone and convex in f under the CFL bound; CFLViolation otherwise.
GridFunction fd_step(const GridFunction& f, double dt, const GHeatConfig& config);

/// ceil(t sigma_hi^2 / (cfl dx^2)) equal explicit steps covering [0, t].
GridFunction fd_evolve(const GridFunction& f, double t, const GHeatConfig& config);

/// Number of explicit steps fd_evolve takes for time t.
std::size_t fd_step_count(double t, double dx, const GHeatConfig& config);

/// max(gauss_convolve(f, sigma_lo^2 h), gauss_convolve(f, sigma_hi^2 h)).
GridFunction nisio_step(const GridFunction& f, double h, const GHeatConfig& config);

/// n_steps-fold composition of nisio_step with h = t / n_steps.
GridFunction nisio_evolve(const GridFunction& f, double t, std::size_t n_steps,
                          const GHeatConfig& config);

/// 1/2 max(sigma_lo^2 D2 f, sigma_hi^2 D2 f) nodewise.
GridFunction gheat_generator_reference(const GridFunction& f, const GHeatConfig& config);

enum class GHeatScheme { FiniteDifference, NisioProduct };

class GHeatSemigroup final : public SemigroupEvaluator {
public:
    // steps_per_unit_time only matters for NisioProduct: evolve(f, t) uses
    // max(1, ceil(t * steps_per_unit_time)) product steps.
    GHeatSemigroup(Grid grid, GHeatConfig config, GHeatScheme scheme,
                   std::size_t steps_per_unit_time = 256);

    GridFunction evolve(const GridFunction& f, double t) const override;
    const Grid& grid() const override { return grid_; }
    std::string name() const override;

    const GHeatConfig& config() const { return config_; }
    GHeatScheme scheme() const { return scheme_; }
    std::size_t nisio_steps(double t) const;

private:
    Grid grid_;
    GHeatConfig config_;
    GHeatScheme scheme_;
    std::size_t steps_per_unit_time_;
};

}  // namespace semilab
