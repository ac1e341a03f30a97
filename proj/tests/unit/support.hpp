#pragma once

#include <random>
#include <vector>

#include "semilab/gridfn.hpp"

namespace testing {

inline std::vector<semilab::FunctionSpec> catalog() {
    using semilab::FunctionSpec;
    return {FunctionSpec::tent(),     FunctionSpec::ex43(),         FunctionSpec::sin(1),
            FunctionSpec::sin(3),     FunctionSpec::gauss(1.0),     FunctionSpec::gauss(0.25),
            FunctionSpec::abs_clip(), FunctionSpec::constant(-0.3), FunctionSpec::bump(),
            FunctionSpec::quad(0.5),  FunctionSpec::sqrt_abs()};
}

// Rough random samples in [-scale, scale]; includes signed zeros on purpose.
inline semilab::GridFunction random_function(const semilab::Grid& g, std::mt19937_64& rng,
                                             double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    std::uniform_int_distribution<int> pick(0, 15);
    std::vector<double> v(g.n);
    for (auto& x : v) {
        const int k = pick(rng);
        x = k == 0 ? 0.0 : k == 1 ? -0.0 : u(rng);
    }
    return semilab::GridFunction(g, std::move(v));
}

// Smooth random trigonometric sum; max |f''| stays below `curv`.
inline semilab::GridFunction random_smooth(const semilab::Grid& g, std::mt19937_64& rng,
                                           double curv = 1.0) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double a1 = u(rng), a2 = u(rng), p1 = u(rng), p2 = u(rng);
    return semilab::tabulate(g, [&](double x) {
        return curv * 0.5 * (a1 * std::sin(x + p1) + 0.25 * a2 * std::cos(2.0 * x + p2)) *
               std::exp(-0.05 * x * x);
    });
}

}  // namespace testing
