#include "semilab/dilation.hpp"

#include <cmath>
#include <vector>

#include "semilab/errors.hpp"
#include "semilab/parallel.hpp"

namespace semilab {

std::size_t window_radius(double t, double dx) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("window_radius requires t >= 0");
    if (!(dx > 0.0)) throw DomainError("window_radius requires dx > 0");
    return static_cast<std::size_t>(std::llround(t / dx));
}

GridFunction dilate_naive(const GridFunction& f, std::ptrdiff_t r) {
    if (r < 0) throw DomainError("dilate requires r >= 0");
    const auto n = static_cast<std::ptrdiff_t>(f.size());
    std::vector<double> out(f.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        double m = f.at(i - r);
        for (std::ptrdiff_t j = i - r + 1; j <= i + r; ++j) m = lattice_max(m, f.at(j));
        out[i] = m;
    }
    return GridFunction(f.grid(), std::move(out));
}

// van Herk / Gil-Werman: split the padded signal into blocks of the window
// width w. Any window [k, k+w-1] covers the tail of one block and the head of
// the next, so its max is suffix[k] combined with prefix[k+w-1].
GridFunction dilate(const GridFunction& f, std::ptrdiff_t r) {
    if (r < 0) throw DomainError("dilate requires r >= 0");
    if (r == 0) return f;
    const std::size_t n = f.size();
    const std::size_t w = 2 * static_cast<std::size_t>(r) + 1;
    const std::size_t len = n + w - 1;

    std::vector<double> ext(len);
    for (std::size_t k = 0; k < len; ++k) {
        ext[k] = f.at(static_cast<std::ptrdiff_t>(k) - r);
    }

    std::vector<double> prefix(len);
    std::vector<double> suffix(len);
    const std::size_t blocks = (len + w - 1) / w;
    parallel_for(blocks, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t b = lo; b < hi; ++b) {
            const std::size_t start = b * w;
            const std::size_t stop = std::min(len, start + w);
            prefix[start] = ext[start];
            for (std::size_t k = start + 1; k < stop; ++k) prefix[k] = lattice_max(prefix[k - 1], ext[k]);
            suffix[stop - 1] = ext[stop - 1];
            for (std::size_t k = stop - 1; k > start; --k) suffix[k - 1] = lattice_max(suffix[k], ext[k - 1]);
        }
    });

    std::vector<double> out(n);
    parallel_for(n, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) out[i] = lattice_max(suffix[i], prefix[i + w - 1]);
    });
    return GridFunction(f.grid(), std::move(out));
}

GridFunction erode(const GridFunction& f, std::ptrdiff_t r) {
    return neg(dilate(neg(f), r));
}

GridFunction shift_generator_reference(const GridFunction& f) {
    return abs(central_derivative(f));
}

GridFunction DilationSemigroup::evolve(const GridFunction& f, double t) const {
    if (!(f.grid() == grid_)) throw GridMismatch("input does not live on the semigroup's grid");
    return dilate(f, static_cast<std::ptrdiff_t>(window_radius(t, grid_.dx)));
}

double DilationSemigroup::effective_time(double t) const {
    return static_cast<double>(window_radius(t, grid_.dx)) * grid_.dx;
}

}  // namespace semilab
