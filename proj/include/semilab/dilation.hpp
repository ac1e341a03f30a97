#pragma once

#include <cstddef>

#include "semilab/gridfn.hpp"
#include "semilab/semigroup.hpp"

namespace semilab {

/// Number of nodes covered by a time t: round(t / dx), halves away from zero.
std::size_t window_radius(double t, double dx);

/// out[i] = max of f over indices [i-r, i+r] (extension policy at the edges).
/// O(n) in r via block prefix/suffix maxima; bit-identical to a direct scan.
GridFunction dilate(const GridFunction& f, std::ptrdiff_t r);

/// Direct O(n r) window scan. Reference for dilate.
GridFunction dilate_naive(const GridFunction& f, std::ptrdiff_t r);

/// -dilate(-f, r): window minimum.
GridFunction erode(const GridFunction& f, std::ptrdiff_t r);

/// |f'| from central differences; the generator of the shift semigroup
/// on smooth data.
GridFunction shift_generator_reference(const GridFunction& f);

/// (S(t)f)(x) = sup_{|y| <= t} f(x + y) on a fixed grid.
class DilationSemigroup final : public SemigroupEvaluator {
public:
    explicit DilationSemigroup(Grid grid) : grid_(grid) {}

    GridFunction evolve(const GridFunction& f, double t) const override;
    double effective_time(double t) const override;
    const Grid& grid() const override { return grid_; }
    std::string name() const override { return "dilation"; }

private:
    Grid grid_;
};

}  // namespace semilab
