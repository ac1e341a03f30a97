#pragma once

#include <string>

#include "semilab/gridfn.hpp"

namespace semilab {

/// Common interface of the semigroup constructions: given f and t >= 0,
/// return S(t)f on the evaluator's grid.
class SemigroupEvaluator {
public:
    virtual ~SemigroupEvaluator() = default;

    virtual GridFunction evolve(const GridFunction& f, double t) const = 0;

    // The time the evaluator actually applies for a requested t. Differs
    // from t when time is quantised (dilation snaps t to whole nodes).
    virtual double effective_time(double t) const { return t; }

    virtual const Grid& grid() const = 0;
    virtual std::string name() const = 0;
};

}  // namespace semilab
