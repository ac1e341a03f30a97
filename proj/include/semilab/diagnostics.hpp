#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "semilab/gridfn.hpp"
#include "semilab/semigroup.hpp"

namespace semilab {

/// Strictly decreasing sequence of positive step sizes h_0 > h_1 > ... > 0.
class HLadder {
public:
    explicit HLadder(std::vector<double> values);

    // h_max, h_max * ratio, ..., count entries; 0 < ratio < 1.
    static HLadder geometric(double h_max, double ratio, std::size_t count);

    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double coarsest() const { return values_.front(); }
    double finest() const { return values_.back(); }

private:
    std::vector<double> values_;
};

enum class Verdict { Converges, BoundedOnly, UnboundedTrend };
std::string_view to_string(Verdict v);

struct QuotientRow {
    double h = 0.0;            // requested step
    double h_effective = 0.0;  // step the evaluator applied
    double quotient_sup_norm = 0.0;
    double deviation = 0.0;    // trimmed sup-norm distance to the reference
    double trim_fraction = 0.0;
};

/// Ladder of difference quotients, coarsest row first.
struct QuotientReport {
    std::vector<QuotientRow> rows;
    std::vector<GridFunction> quotients;  // nodewise quotient per row

    // Trimmed deviation of the h -> 0 estimate obtained by linear
    // extrapolation through the two finest rows (the finest row itself when
    // the ladder has a single entry).
    double limit_deviation = 0.0;

    // Largest nodewise increase q_{k+1} - q_k between consecutive rows.
    // Only the directional-derivative probe fills this in.
    double max_increase = 0.0;

    Verdict verdict = Verdict::BoundedOnly;
};

struct ProbeOptions {
    double trim = 0.0;  // fraction of worst nodes discarded, in [0, 0.1]
    // Convergence threshold on limit_deviation; 10 dx when unset.
    std::optional<double> tol_conv;
    // Closed x-interval the deviation is measured on; whole grid when unset.
    std::optional<std::pair<double, double>> window;
};

/// Nodewise h -> 0 estimate of a probe: linear extrapolation through the two
/// finest rows in their effective steps, or the finest row alone.
GridFunction limit_estimate(const QuotientReport& report);

/// Sup-norm of |values| after discarding the floor(trim * n) largest entries.
double trimmed_sup(std::span<const double> values, double trim);

/// (S(h)f - f) / h, with h the evaluator's effective time for the request.
/// DomainError if h <= 0 or the effective time vanishes.
GridFunction diff_quotient(const SemigroupEvaluator& S, const GridFunction& f, double h);

/// Compares difference quotients along the ladder with a reference
/// generator value. Verdict Converges iff the trimmed deviation is
/// nonincreasing along the ladder and limit_deviation <= tol_conv.
/// UnboundedTrend when the quotient norms grow monotonically past twice
/// their initial value.
QuotientReport generator_probe(const SemigroupEvaluator& S, const GridFunction& f,
                               const HLadder& ladder, const GridFunction& reference,
                               const ProbeOptions& options = {});

struct LipschitzReport {
    double sup_over_ladder = 0.0;            // max_h ||(S(h)f - f)/h||
    double symmetric_sup_over_ladder = 0.0;  // same for -f
    bool in_DL = false;
    bool in_DLs = false;
    double C_used = 0.0;
    double h0_used = 0.0;
};

/// Membership test for the quantitative Lipschitz sets: f passes when every
/// ladder quotient has sup-norm <= C, and additionally -f for the symmetric set.
LipschitzReport lipschitz_set_probe(const SemigroupEvaluator& S, const GridFunction& f,
                                    const HLadder& ladder, double C, double h0);

/// Rows q_h = (S(t)(x + h y) - S(t)x) / h. Convexity makes q_h nodewise
/// nonincreasing as h decreases; Converges iff that holds to within 1e-12.
/// Row deviations are measured against the finest row.
QuotientReport directional_derivative_probe(const SemigroupEvaluator& S, double t,
                                            const GridFunction& x, const GridFunction& y,
                                            const HLadder& ladder);

struct InvarianceReport {
    LipschitzReport before;
    LipschitzReport after;  // probe rerun on S(t)f
    double lip_before = 0.0;
    double lip_after = 0.0;
    double curvature_before = 0.0;  // sup_norm(second_diff(.))
    double curvature_after = 0.0;
};

InvarianceReport invariance_probe(const SemigroupEvaluator& S, const GridFunction& f, double t,
                                  const HLadder& ladder, double C, double h0);

/// min over nodes of -S(s)(-S(t)f) - S(t)(-S(s)(-f)).
double condsymlip_margin(const SemigroupEvaluator& S, double s, double t, const GridFunction& f);
bool condsymlip_check(const SemigroupEvaluator& S, double s, double t, const GridFunction& f,
                      double tol);

struct AccretivityResult {
    double margin = 0.0;
    bool pass = false;
};

/// ||f1 - f2 + h(|f1'| - |f2'|)|| - ||f1 - f2|| with central derivatives.
AccretivityResult accretivity_check(const GridFunction& f1, const GridFunction& f2, double h,
                                    double eps);

/// f must satisfy the D_L^s(C, h0) bound (DomainError otherwise); returns
/// whether gauss_convolve(f, variance) satisfies it with C + 10 dx C.
bool mollification_stability_check(const SemigroupEvaluator& S, const GridFunction& f,
                                   double variance, double C, double h0, const HLadder& ladder);

/// Largest slope |v(t_{k+1}) - v(t_k)| / (t_{k+1} - t_k) of v(t) = (S(t)f)(x_node)
/// over `points` equally spaced times in [0, t_max] (effective times).
double time_lipschitz_probe(const SemigroupEvaluator& S, const GridFunction& f, std::size_t node,
                            double t_max, std::size_t points);

struct ContinuityFromAboveReport {
    std::vector<double> sup_norms;  // sup_norm(S(t)(f/n)), n = 1..n_max
    bool nodewise_decreasing = false;
    bool sup_nonincreasing = false;
};

/// Evaluates S(t)(f/n) for n = 1..n_max. With f >= 0 the sequence f/n
/// decreases to 0, and so should its image.
ContinuityFromAboveReport continuity_from_above_probe(const SemigroupEvaluator& S,
                                                      const GridFunction& f, double t,
                                                      std::size_t n_max);

/// CSV: h,quotient_sup_norm,deviation,trim_fraction per row, then a
/// `summary,<verdict>,<limit_deviation>,<trim_fraction>` row.
void write_csv(const QuotientReport& report, std::ostream& os);

}  // namespace semilab
