#include "semilab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "semilab/errors.hpp"

namespace semilab {

HLadder::HLadder(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw DomainError("ladder must be nonempty");
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (!(values_[k] > 0.0) || !std::isfinite(values_[k])) {
            throw DomainError("ladder entries must be positive");
        }
        if (k > 0 && !(values_[k] < values_[k - 1])) {
            throw DomainError("ladder must be strictly decreasing");
        }
    }
}

HLadder HLadder::geometric(double h_max, double ratio, std::size_t count) {
    if (!(ratio > 0.0 && ratio < 1.0)) throw DomainError("ladder ratio must lie in (0, 1)");
    if (count == 0) throw DomainError("ladder must be nonempty");
    std::vector<double> v(count);
    for (std::size_t k = 0; k < count; ++k) v[k] = h_max * std::pow(ratio, static_cast<double>(k));
    return HLadder(std::move(v));
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Converges: return "converges";
        case Verdict::BoundedOnly: return "bounded_only";
        case Verdict::UnboundedTrend: return "unbounded_trend";
    }
    return "?";
}

double trimmed_sup(std::span<const double> values, double trim) {
    if (values.empty()) return 0.0;
    std::vector<double> a(values.size());
    std::transform(values.begin(), values.end(), a.begin(), [](double v) { return std::abs(v); });
    const auto drop = static_cast<std::size_t>(std::floor(trim * static_cast<double>(a.size())));
    if (drop >= a.size()) return 0.0;
    // The (drop)-th largest entry, counted from zero.
    std::nth_element(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(drop), a.end(),
                     std::greater<double>());
    return a[drop];
}

GridFunction diff_quotient(const SemigroupEvaluator& S, const GridFunction& f, double h) {
    if (!(h > 0.0)) throw DomainError("difference quotient requires h > 0");
    const double he = S.effective_time(h);
    if (!(he > 0.0)) {
        throw DomainError("step " + std::to_string(h) + " is below the evaluator's time resolution");
    }
    return scale(sub(S.evolve(f, h), f), 1.0 / he);
}

namespace {

std::vector<double> windowed(const GridFunction& f, const std::optional<std::pair<double, double>>& window) {
    std::vector<double> out;
    out.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (window) {
            const double x = f.x(i);
            if (x < window->first - 1e-12 || x > window->second + 1e-12) continue;
        }
        out.push_back(f[i]);
    }
    return out;
}

double trimmed_distance(const GridFunction& q, const GridFunction& reference, const ProbeOptions& opt) {
    return trimmed_sup(windowed(sub(q, reference), opt.window), opt.trim);
}

bool nonincreasing(std::span<const QuotientRow> rows) {
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const double prev = rows[k - 1].deviation;
        if (rows[k].deviation > prev + 1e-12 * std::max(1.0, prev)) return false;
    }
    return true;
}

}  // namespace

GridFunction limit_estimate(const QuotientReport& report) {
    const std::size_t m = report.rows.size();
    if (m == 0) throw DomainError("empty quotient report");
    if (m == 1 || !(report.rows[m - 2].h_effective > report.rows[m - 1].h_effective)) {
        return report.quotients[m - 1];
    }
    const double h1 = report.rows[m - 2].h_effective;
    const double h2 = report.rows[m - 1].h_effective;
    return axpby(h1 / (h1 - h2), report.quotients[m - 1], -h2 / (h1 - h2), report.quotients[m - 2]);
}

QuotientReport generator_probe(const SemigroupEvaluator& S, const GridFunction& f,
                               const HLadder& ladder, const GridFunction& reference,
                               const ProbeOptions& options) {
    require_same_grid(f, reference);
    if (!(options.trim >= 0.0 && options.trim <= 0.1)) throw DomainError("trim must lie in [0, 0.1]");
    const double tol = options.tol_conv.value_or(10.0 * f.grid().dx);

    QuotientReport report;
    for (double h : ladder.values()) {
        GridFunction q = diff_quotient(S, f, h);
        QuotientRow row;
        row.h = h;
        row.h_effective = S.effective_time(h);
        row.quotient_sup_norm = sup_norm(q);
        row.deviation = trimmed_distance(q, reference, options);
        row.trim_fraction = options.trim;
        report.rows.push_back(row);
        report.quotients.push_back(std::move(q));
    }

    const std::size_t m = report.rows.size();
    report.limit_deviation = trimmed_distance(limit_estimate(report), reference, options);

    if (nonincreasing(report.rows) && report.limit_deviation <= tol) {
        report.verdict = Verdict::Converges;
    } else {
        bool growing = true;
        for (std::size_t k = 1; k < m; ++k) {
            growing = growing && report.rows[k].quotient_sup_norm > report.rows[k - 1].quotient_sup_norm;
        }
        const bool large = report.rows.back().quotient_sup_norm > 2.0 * report.rows.front().quotient_sup_norm;
        report.verdict = (m >= 2 && growing && large) ? Verdict::UnboundedTrend : Verdict::BoundedOnly;
    }
    return report;
}

LipschitzReport lipschitz_set_probe(const SemigroupEvaluator& S, const GridFunction& f,
                                    const HLadder& ladder, double C, double h0) {
    if (!(h0 > 0.0)) throw DomainError("h0 must be positive");
    if (ladder.coarsest() > h0) throw DomainError("ladder entries must not exceed h0");
    LipschitzReport r;
    r.C_used = C;
    r.h0_used = h0;
    const GridFunction minus_f = neg(f);
    for (double h : ladder.values()) {
        r.sup_over_ladder = std::max(r.sup_over_ladder, sup_norm(diff_quotient(S, f, h)));
        r.symmetric_sup_over_ladder =
            std::max(r.symmetric_sup_over_ladder, sup_norm(diff_quotient(S, minus_f, h)));
    }
    r.in_DL = r.sup_over_ladder <= C;
    r.in_DLs = r.in_DL && r.symmetric_sup_over_ladder <= C;
    return r;
}

QuotientReport directional_derivative_probe(const SemigroupEvaluator& S, double t,
                                            const GridFunction& x, const GridFunction& y,
                                            const HLadder& ladder) {
    require_same_grid(x, y);
    if (!(t >= 0.0)) throw DomainError("directional derivative requires t >= 0");
    const GridFunction base = S.evolve(x, t);

    QuotientReport report;
    for (double h : ladder.values()) {
        GridFunction q = scale(sub(S.evolve(axpby(1.0, x, h, y), t), base), 1.0 / h);
        QuotientRow row;
        row.h = h;
        row.h_effective = h;
        row.quotient_sup_norm = sup_norm(q);
        report.rows.push_back(row);
        report.quotients.push_back(std::move(q));
    }
    const GridFunction& last = report.quotients.back();
    for (std::size_t k = 0; k < report.rows.size(); ++k) {
        report.rows[k].deviation = sup_norm(sub(report.quotients[k], last));
        if (k > 0) {
            const GridFunction rise = sub(report.quotients[k], report.quotients[k - 1]);
            for (double v : rise.values()) report.max_increase = std::max(report.max_increase, v);
        }
    }
    report.limit_deviation = 0.0;
    report.verdict = report.max_increase <= 1e-12 ? Verdict::Converges : Verdict::BoundedOnly;
    return report;
}

InvarianceReport invariance_probe(const SemigroupEvaluator& S, const GridFunction& f, double t,
                                  const HLadder& ladder, double C, double h0) {
    InvarianceReport r;
    r.before = lipschitz_set_probe(S, f, ladder, C, h0);
    const GridFunction g = S.evolve(f, t);
    r.after = lipschitz_set_probe(S, g, ladder, C, h0);
    r.lip_before = lip_constant(f);
    r.lip_after = lip_constant(g);
    r.curvature_before = sup_norm(second_diff(f));
    r.curvature_after = sup_norm(second_diff(g));
    return r;
}

double condsymlip_margin(const SemigroupEvaluator& S, double s, double t, const GridFunction& f) {
    const GridFunction lhs = neg(S.evolve(neg(S.evolve(f, t)), s));
    const GridFunction rhs = S.evolve(neg(S.evolve(neg(f), s)), t);
    double margin = lhs[0] - rhs[0];
    for (std::size_t i = 1; i < f.size(); ++i) margin = std::min(margin, lhs[i] - rhs[i]);
    return margin;
}

bool condsymlip_check(const SemigroupEvaluator& S, double s, double t, const GridFunction& f,
                      double tol) {
    if (!(s >= 0.0) || !(t >= 0.0)) throw DomainError("condsymlip requires s, t >= 0");
    return condsymlip_margin(S, s, t, f) >= -tol;
}

AccretivityResult accretivity_check(const GridFunction& f1, const GridFunction& f2, double h,
                                    double eps) {
    require_same_grid(f1, f2);
    if (!(h > 0.0)) throw DomainError("accretivity check requires h > 0");
    const GridFunction g = sub(f1, f2);
    const GridFunction slope_gap =
        sub(abs(central_derivative(f1)), abs(central_derivative(f2)));
    AccretivityResult r;
    r.margin = sup_norm(axpby(1.0, g, h, slope_gap)) - sup_norm(g);
    r.pass = r.margin >= -eps;
    return r;
}

bool mollification_stability_check(const SemigroupEvaluator& S, const GridFunction& f,
                                   double variance, double C, double h0, const HLadder& ladder) {
    if (!lipschitz_set_probe(S, f, ladder, C, h0).in_DLs) {
        throw DomainError("mollification check requires f to satisfy the D_L^s(C, h0) bound");
    }
    const double slack = 10.0 * f.grid().dx * C;
    return lipschitz_set_probe(S, gauss_convolve(f, variance), ladder, C + slack, h0).in_DLs;
}

double time_lipschitz_probe(const SemigroupEvaluator& S, const GridFunction& f, std::size_t node,
                            double t_max, std::size_t points) {
    if (node >= f.size()) throw DomainError("node index out of range");
    if (points < 2 || !(t_max > 0.0)) throw DomainError("time probe needs >= 2 points on (0, t_max]");
    double slope = 0.0;
    double prev_t = 0.0;
    double prev_v = f[node];
    for (std::size_t k = 1; k < points; ++k) {
        const double t = t_max * static_cast<double>(k) / static_cast<double>(points - 1);
        const double te = S.effective_time(t);
        const double v = S.evolve(f, t)[node];
        if (te > prev_t) slope = std::max(slope, std::abs(v - prev_v) / (te - prev_t));
        prev_t = te;
        prev_v = v;
    }
    return slope;
}

ContinuityFromAboveReport continuity_from_above_probe(const SemigroupEvaluator& S,
                                                      const GridFunction& f, double t,
                                                      std::size_t n_max) {
    ContinuityFromAboveReport r;
    r.nodewise_decreasing = true;
    r.sup_nonincreasing = true;
    std::optional<GridFunction> prev;
    for (std::size_t n = 1; n <= n_max; ++n) {
        GridFunction img = S.evolve(scale(f, 1.0 / static_cast<double>(n)), t);
        const double s = sup_norm(img);
        if (!r.sup_norms.empty() && s > r.sup_norms.back()) r.sup_nonincreasing = false;
        if (prev && !leq_within(img, *prev, 0.0)) r.nodewise_decreasing = false;
        r.sup_norms.push_back(s);
        prev = std::move(img);
    }
    return r;
}

void write_csv(const QuotientReport& report, std::ostream& os) {
    char buf[160];
    os << "h,quotient_sup_norm,deviation,trim_fraction\n";
    for (const auto& row : report.rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", row.h, row.quotient_sup_norm,
                      row.deviation, row.trim_fraction);
        os << buf;
    }
    const double trim = report.rows.empty() ? 0.0 : report.rows.back().trim_fraction;
    std::snprintf(buf, sizeof buf, "summary,%s,%.17g,%.17g\n", std::string(to_string(report.verdict)).c_str(),
                  report.limit_deviation, trim);
    os << buf;
}

}  // namespace semilab
