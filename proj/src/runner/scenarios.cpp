#include <bit>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <limits>
#include <memory>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "semilab/diagnostics.hpp"
#include "semilab/dilation.hpp"
#include "semilab/errors.hpp"
#include "semilab/gheat.hpp"
#include "semilab/runner.hpp"
#include "table.hpp"

namespace semilab {

namespace {

using detail::CsvTable;

constexpr double kPi = std::numbers::pi;

// Final-level fd/Nisio disagreement allowed by uniqueness-cross-check.
// Frozen from data/refinement_study.csv.
constexpr double kCrossCheckBound = 2e-2;

// Tolerance of the quadratic generator checks.
constexpr double kQuadraticTol = 5e-3;

constexpr double kCondsymlipTol = 1e-8;
constexpr double kDirectionalTol = 1e-12;

std::string slug(const std::string& s) {
    std::string out;
    for (char c : s) {
        const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-';
        out += keep ? c : '_';
    }
    while (!out.empty() && out.back() == '_') out.pop_back();
    return out;
}

std::string grid_csv(const GridFunction& f) {
    std::ostringstream os;
    write_csv(f, os);
    return os.str();
}

std::string report_csv(const QuotientReport& r) {
    std::ostringstream os;
    write_csv(r, os);
    return os.str();
}

std::size_t nearest_node(const Grid& g, double x) {
    const double k = std::round((x - g.a) / g.dx);
    if (k <= 0.0) return 0;
    return std::min(g.n - 1, static_cast<std::size_t>(k));
}

// Resolved parameters plus the rows and artifacts being collected.
class Ctx {
public:
    Ctx(const ScenarioConfig& c, ScenarioResult& r) : cfg_(c), res_(r) {}

    Grid grid(double a, double b, std::size_t n, Extension e = Extension::ConstantClamp) const {
        return checked(cfg_.a.value_or(a), cfg_.b.value_or(b), cfg_.n.value_or(n),
                       cfg_.extension.value_or(e));
    }

    // Periodic grid on [-pi, pi]; only n can be overridden.
    Grid periodic(std::size_t n) const {
        return checked(-kPi, kPi, cfg_.n.value_or(n), Extension::Periodic);
    }

    GHeatConfig gheat() const {
        GHeatConfig g;
        g.sigma_lo = cfg_.sigma_lo.value_or(g.sigma_lo);
        g.sigma_hi = cfg_.sigma_hi.value_or(g.sigma_hi);
        g.cfl = cfg_.cfl.value_or(g.cfl);
        if (!(g.sigma_lo <= g.sigma_hi)) throw UsageError("sigma_lo must not exceed sigma_hi");
        return g;
    }

    std::vector<GHeatScheme> schemes() const {
        const std::string m = cfg_.method.value_or("both");
        std::vector<GHeatScheme> out;
        if (m != "nisio") out.push_back(GHeatScheme::FiniteDifference);
        if (m != "fd") out.push_back(GHeatScheme::NisioProduct);
        return out;
    }

    bool dilation() const { return cfg_.semigroup.value_or("both") != "gheat"; }
    bool gheat_on() const { return cfg_.semigroup.value_or("both") != "dilation"; }

    std::size_t steps_per_unit_time() const { return cfg_.n_steps.value_or(256); }

    HLadder ladder(double h_max, double ratio, std::size_t count) const {
        return HLadder::geometric(cfg_.h_max.value_or(h_max), cfg_.ratio.value_or(ratio),
                                  cfg_.count.value_or(count));
    }

    double t(double d) const { return cfg_.t.value_or(d); }
    double trim(double d) const { return cfg_.trim.value_or(d); }
    std::optional<double> tol_conv() const { return cfg_.tol_conv; }
    std::optional<double> eps() const { return cfg_.eps; }
    const ScenarioConfig& config() const { return cfg_; }

    void check(const std::string& name, double measured, double bound, bool pass) {
        res_.rows.push_back({name, measured, bound, pass});
    }
    void check_le(const std::string& name, double measured, double bound) {
        check(name, measured, bound, measured <= bound);
    }
    void artifact(const std::string& name, std::string csv) {
        res_.artifacts.push_back({slug(name), std::move(csv)});
    }

private:
    static Grid checked(double a, double b, std::size_t n, Extension e) {
        if (!(a < b)) throw UsageError("grid requires a < b");
        return make_grid(a, b, n, e);
    }

    const ScenarioConfig& cfg_;
    ScenarioResult& res_;
};

// Makes sure every ladder step survives the dilation's time quantisation.
void require_resolved(const SemigroupEvaluator& S, const HLadder& ladder) {
    if (!(S.effective_time(ladder.finest()) > 0.0)) {
        throw UsageError("finest ladder step " + std::to_string(ladder.finest()) +
                         " is below the grid resolution");
    }
}

// ---------------------------------------------------------------------------

double ex43_closed_form(double x) { return x >= 0.0 ? (x + 1.0) * (x + 1.0) : std::pow(x - 1.0, 4); }

// One-sided generator of the shift semigroup at S(1) ex43 (right branch at 0).
double ex43_generator(double x) {
    if (x <= -1.0 || x >= 1.0) return 0.0;
    if (x < 0.0) return 4.0 * std::pow(1.0 - x, 3);
    return 2.0 * (x + 1.0);
}

void example_4_3(Ctx& c) {
    const Grid g = c.grid(-4.0, 4.0, 1601);
    if (g.a > -2.0 || g.b < 2.0) throw UsageError("example-4-3 needs a <= -2 and b >= 2");
    const HLadder ladder = c.ladder(32.0 * g.dx, 0.5, 6);
    const DilationSemigroup S(g);
    require_resolved(S, ladder);

    const GridFunction f = sample(FunctionSpec::ex43(), g);
    const GridFunction u = S.evolve(f, 1.0);
    const bool aligned = std::abs(S.effective_time(1.0) - 1.0) <= 1e-12;

    double dev = 0.0;
    double dev_exact = 0.0;
    CsvTable table({"x", "value", "closed_form"});
    for (std::size_t i = 0; i < g.n; ++i) {
        const double x = g.x(i);
        if (x < -1.0 - 1e-12 || x > 1.0 + 1e-12) continue;
        const double e = std::abs(u[i] - ex43_closed_form(x));
        dev = std::max(dev, e);
        if (aligned) dev_exact = std::max(dev_exact, e);
        table.row({x, u[i], ex43_closed_form(x)});
    }
    c.check_le("closed_form", dev, 2.0 * g.dx * lip_constant(f));
    c.check_le("closed_form_aligned_nodes", dev_exact, 1e-12);
    c.artifact("closed_form", table.str());

    const GridFunction ref = tabulate(g, ex43_generator);
    ProbeOptions uniform;
    uniform.trim = 0.0;
    uniform.tol_conv = c.tol_conv();
    const QuotientReport r0 = generator_probe(S, u, ladder, ref, uniform);
    double plateau = r0.limit_deviation;
    for (const auto& row : r0.rows) plateau = std::min(plateau, row.deviation);
    c.check("uniform_probe_fails", plateau, 0.5, r0.verdict != Verdict::Converges && plateau >= 0.5);
    c.artifact("uniform_probe_fails", report_csv(r0));

    ProbeOptions trimmed = uniform;
    trimmed.trim = c.trim(0.01);
    const QuotientReport r1 = generator_probe(S, u, ladder, ref, trimmed);
    const double tol = c.tol_conv().value_or(10.0 * g.dx);
    c.check("trimmed_probe_converges", r1.limit_deviation, tol, r1.verdict == Verdict::Converges);
    c.artifact("trimmed_probe_converges", report_csv(r1));

    // One-sided limits at 0, read off just beside the kink and shifted back
    // along the known branches.
    const GridFunction lim = limit_estimate(r1);
    const std::size_t ir = nearest_node(g, 0.05);
    const std::size_t il = nearest_node(g, -0.05);
    const double right = lim[ir] - 2.0 * g.x(ir);
    const double left = lim[il] - (4.0 * std::pow(1.0 - g.x(il), 3) - 4.0);
    c.check("right_limit_at_0", right, 2.0, std::abs(right - 2.0) <= 10.0 * g.dx);
    c.check("left_limit_at_0", left, 4.0, std::abs(left - 4.0) <= 10.0 * g.dx);
    c.artifact("limit_quotient", grid_csv(lim));
}

// ---------------------------------------------------------------------------

void shift_generator(Ctx& c) {
    struct Case {
        FunctionSpec spec;
        Grid grid;
        std::function<double(double)> ref;
    };
    const Grid line = c.grid(-4.0, 4.0, 10001);
    const Grid circle = c.periodic(10001);
    const HLadder ladder = c.ladder(0.1, 0.5, 8);
    const double trim = c.trim(0.01);

    const std::vector<Case> cases = {
        {FunctionSpec::sin(1), circle, [](double x) { return std::abs(std::cos(x)); }},
        {FunctionSpec::gauss(1.0), line,
         [](double x) { return std::abs(x) * std::exp(-0.5 * x * x); }},
        {FunctionSpec::tent(), line, [](double x) { return std::abs(x) <= 1.0 && x != 0.0 ? 1.0 : 0.0; }},
    };
    for (const auto& k : cases) {
        const DilationSemigroup S(k.grid);
        require_resolved(S, ladder);
        ProbeOptions opt;
        opt.trim = trim;
        opt.tol_conv = c.tol_conv();
        const QuotientReport r =
            generator_probe(S, sample(k.spec, k.grid), ladder, tabulate(k.grid, k.ref), opt);
        const std::string name = slug(k.spec.name());
        c.check(name, r.limit_deviation, opt.tol_conv.value_or(10.0 * k.grid.dx),
                r.verdict == Verdict::Converges);
        c.artifact(name, report_csv(r));
    }
}

// ---------------------------------------------------------------------------

std::string scheme_tag(GHeatScheme s) { return s == GHeatScheme::FiniteDifference ? "fd" : "nisio"; }

void gheat_generator(Ctx& c) {
    const Grid g = c.grid(-4.0, 4.0, 801);
    const Grid circle = c.periodic(801);
    const GHeatConfig cfg = c.gheat();
    const HLadder ladder = c.ladder(0.016, 0.5, 5);
    const double trim = c.trim(0.0);
    const double lo2 = cfg.sigma_lo * cfg.sigma_lo;
    const double hi2 = cfg.sigma_hi * cfg.sigma_hi;
    auto G = [=](double d2) { return 0.5 * std::max(lo2 * d2, hi2 * d2); };
    const std::pair<double, double> window{g.a + 0.25 * (g.b - g.a), g.b - 0.25 * (g.b - g.a)};

    struct Case {
        FunctionSpec spec;
        Grid grid;
        std::function<double(double)> d2;  // analytic second derivative
    };
    const std::vector<Case> cases = {
        {FunctionSpec::quad(1.0), g, [](double) { return 2.0; }},
        {FunctionSpec::quad(-1.0), g, [](double) { return -2.0; }},
        {FunctionSpec::gauss(1.0), g, [](double x) { return (x * x - 1.0) * std::exp(-0.5 * x * x); }},
        {FunctionSpec::sin(1), circle, [](double x) { return -std::sin(x); }},
    };

    for (GHeatScheme scheme : c.schemes()) {
        for (const auto& k : cases) {
            const GHeatSemigroup S(k.grid, cfg, scheme, c.steps_per_unit_time());
            const GridFunction f = sample(k.spec, k.grid);
            const GridFunction ref = tabulate(k.grid, [&](double x) { return G(k.d2(x)); });
            ProbeOptions opt;
            opt.trim = trim;
            opt.tol_conv = c.tol_conv();
            if (k.grid.extension == Extension::ConstantClamp) opt.window = window;
            const QuotientReport r = generator_probe(S, f, ladder, ref, opt);
            const std::string name = scheme_tag(scheme) + "_" + slug(k.spec.name());
            c.check(name, r.limit_deviation, opt.tol_conv.value_or(10.0 * k.grid.dx),
                    r.verdict == Verdict::Converges);
            c.artifact(name, report_csv(r));

            if (k.spec.kind() == FunctionSpec::Kind::Quad) {
                const GridFunction& q = r.quotients.back();
                const double expected = G(2.0 * k.spec.parameter());
                double worst = 0.0;
                for (std::size_t i = 0; i < q.size(); ++i) {
                    const double x = q.x(i);
                    if (x < window.first || x > window.second) continue;
                    worst = std::max(worst, std::abs(q[i] - expected));
                }
                c.check_le(name + "_finest_quotient", worst, kQuadraticTol);
            }
        }
    }
}

// ---------------------------------------------------------------------------

void uniqueness_cross_check(Ctx& c) {
    const std::size_t n = c.config().n.value_or(1601);
    const std::size_t steps = c.config().n_steps.value_or(64);
    if ((n - 1) % 4 != 0) throw UsageError("uniqueness-cross-check needs n - 1 divisible by 4");
    if (steps % 4 != 0) throw UsageError("uniqueness-cross-check needs n_steps divisible by 4");
    const double a = c.config().a.value_or(-8.0);
    const double b = c.config().b.value_or(8.0);
    if (!(a < b)) throw UsageError("grid requires a < b");
    const GHeatConfig cfg = c.gheat();
    const double t = c.t(0.25);
    const Extension ext = c.config().extension.value_or(Extension::ConstantClamp);

    const std::vector<FunctionSpec> fns = {FunctionSpec::tent(), FunctionSpec::gauss(1.0),
                                           FunctionSpec::bump(), FunctionSpec::abs_clip()};
    CsvTable table({"function", "level", "n", "n_steps", "disagreement"});
    for (const auto& spec : fns) {
        std::vector<double> d;
        for (std::size_t level = 0; level < 3; ++level) {
            const std::size_t scale = std::size_t{1} << level;
            const std::size_t nk = (n - 1) / 4 * scale + 1;
            const std::size_t sk = steps / 4 * scale;
            const Grid g = make_grid(a, b, nk, ext);
            const GridFunction f = sample(spec, g);
            const double dis = sup_norm(sub(fd_evolve(f, t, cfg), nisio_evolve(f, t, sk, cfg)));
            d.push_back(dis);
            table.row({spec.name(), static_cast<long long>(level), static_cast<long long>(nk),
                       static_cast<long long>(sk), dis});
        }
        const std::string name = slug(spec.name());
        double worst_step = d[1] - d[0];
        for (std::size_t k = 2; k < d.size(); ++k) worst_step = std::max(worst_step, d[k] - d[k - 1]);
        c.check(name + "_decreasing", worst_step, 0.0, worst_step < 0.0);
        c.check_le(name + "_final_level", d.back(), kCrossCheckBound);
    }
    c.artifact("refinement", table.str());

    // Degenerate band: both schemes reduce to the heat equation.
    const Grid g = make_grid(-8.0, 8.0, 1601);
    const GHeatConfig unit{1.0, 1.0, cfg.cfl};
    const double v = 1.0;
    const double td = 0.5;
    const GridFunction f = sample(FunctionSpec::gauss(v), g);
    const GridFunction exact = tabulate(g, [&](double x) {
        return std::sqrt(v / (v + td)) * std::exp(-x * x / (2.0 * (v + td)));
    });
    c.check_le("degenerate_fd", sup_norm(sub(fd_evolve(f, td, unit), exact)), 5e-3);
    c.check_le("degenerate_nisio", sup_norm(sub(nisio_evolve(f, td, 64, unit), exact)), 5e-3);
}

// ---------------------------------------------------------------------------

std::vector<FunctionSpec> dilation_catalog() {
    return {FunctionSpec::tent(),     FunctionSpec::ex43(),       FunctionSpec::sin(1),
            FunctionSpec::gauss(1.0), FunctionSpec::abs_clip(),   FunctionSpec::bump(),
            FunctionSpec::sqrt_abs(), FunctionSpec::constant(0.7), FunctionSpec::quad(1.0)};
}

void invariance(Ctx& c) {
    CsvTable table({"semigroup", "function", "t", "C", "h0", "sup_before", "sup_after",
                    "symmetric_after", "lip_before", "lip_after", "curvature_before",
                    "curvature_after"});
    auto record = [&](const std::string& sg, const FunctionSpec& spec, double t,
                      const InvarianceReport& r) {
        table.row({sg, spec.name(), t, r.after.C_used, r.after.h0_used, r.before.sup_over_ladder,
                   r.after.sup_over_ladder, r.after.symmetric_sup_over_ladder, r.lip_before,
                   r.lip_after, r.curvature_before, r.curvature_after});
    };
    const HLadder ladder = c.ladder(0.1, 0.5, 5);
    const double h0 = ladder.coarsest();
    CsvTable slopes({"semigroup", "function", "node_x", "slope", "bound"});

    if (c.dilation()) {
        const Grid g = c.grid(-4.0, 4.0, 1601);
        const DilationSemigroup S(g);
        require_resolved(S, ladder);
        const double t = c.t(0.5);
        for (const auto& spec : dilation_catalog()) {
            const GridFunction f = sample(spec, g);
            const bool ex = spec.kind() == FunctionSpec::Kind::Ex43;
            const double C = ex ? 33.0 : lip_constant(f) * (1.0 + 1e-9) + 1e-12;
            const double tt = ex ? 1.0 : t;
            const InvarianceReport r = invariance_probe(S, f, tt, ladder, C, h0);
            const std::string name = "dilation_" + slug(spec.name());
            c.check(name + "_in_DLs", std::max(r.after.sup_over_ladder, r.after.symmetric_sup_over_ladder),
                    C, r.after.in_DLs);
            c.check_le(name + "_modulus", r.lip_after, r.lip_before);
            record("dilation", spec, tt, r);
        }
        // Lipschitz-in-time surrogate at an interior node.
        const GridFunction f = sample(FunctionSpec::tent(), g);
        const std::size_t node = nearest_node(g, 0.5);
        const double bound = lipschitz_set_probe(S, f, ladder, 1e300, h0).sup_over_ladder + 10.0 * g.dx;
        const double slope = time_lipschitz_probe(S, f, node, 1.0, 100);
        c.check_le("dilation_time_lipschitz", slope, bound);
        slopes.row({std::string("dilation"), std::string("tent"), g.x(node), slope, bound});
    }

    if (c.gheat_on()) {
        const GHeatConfig cfg = c.gheat();
        const double t = c.t(0.25);
        struct Case {
            FunctionSpec spec;
            Grid grid;
        };
        const Grid line = c.grid(-8.0, 8.0, 801);
        const std::vector<Case> cases = {{FunctionSpec::gauss(1.0), line},
                                         {FunctionSpec::gauss(0.5), line},
                                         {FunctionSpec::bump(), line},
                                         {FunctionSpec::sin(1), c.periodic(801)}};
        for (GHeatScheme scheme : c.schemes()) {
            for (const auto& k : cases) {
                const GHeatSemigroup S(k.grid, cfg, scheme, c.steps_per_unit_time());
                const GridFunction f = sample(k.spec, k.grid);
                const double C = 0.5 * cfg.sigma_hi * cfg.sigma_hi * sup_norm(second_diff(f)) +
                                 10.0 * k.grid.dx;
                const InvarianceReport r = invariance_probe(S, f, t, ladder, C, h0);
                const std::string name = "gheat_" + scheme_tag(scheme) + "_" + slug(k.spec.name());
                c.check(name + "_before_in_DLs",
                        std::max(r.before.sup_over_ladder, r.before.symmetric_sup_over_ladder), C,
                        r.before.in_DLs);
                c.check(name + "_in_DLs",
                        std::max(r.after.sup_over_ladder, r.after.symmetric_sup_over_ladder), C,
                        r.after.in_DLs);
                record(S.name(), k.spec, t, r);
            }
            const GHeatSemigroup S(line, cfg, scheme, c.steps_per_unit_time());
            const GridFunction f = sample(FunctionSpec::gauss(1.0), line);
            const std::size_t node = nearest_node(line, 0.0);
            const double bound =
                lipschitz_set_probe(S, f, ladder, 1e300, h0).sup_over_ladder + 10.0 * line.dx;
            const double slope = time_lipschitz_probe(S, f, node, 1.0, 100);
            c.check_le("gheat_" + scheme_tag(scheme) + "_time_lipschitz", slope, bound);
            slopes.row({S.name(), std::string("gauss(1)"), line.x(node), slope, bound});
        }
    }
    c.artifact("invariance", table.str());
    c.artifact("time_lipschitz", slopes.str());
}

// ---------------------------------------------------------------------------

void accretivity(Ctx& c) {
    struct Family {
        Grid grid;
        std::vector<GridFunction> fns;
    };
    const Grid line = c.grid(-8.0, 8.0, 1601);
    const Grid circle = c.periodic(1601);
    auto on = [](const Grid& g, const std::vector<FunctionSpec>& specs) {
        std::vector<GridFunction> out;
        for (const auto& s : specs) out.push_back(sample(s, g));
        return out;
    };
    std::vector<Family> families;
    {
        auto fns = on(line, {FunctionSpec::gauss(0.5), FunctionSpec::gauss(1.0), FunctionSpec::gauss(2.0),
                             FunctionSpec::gauss(4.0), FunctionSpec::bump()});
        fns.push_back(scale(sample(FunctionSpec::gauss(2.0), line), 0.5));
        fns.push_back(neg(sample(FunctionSpec::gauss(1.0), line)));
        families.push_back({line, std::move(fns)});
    }
    {
        auto fns = on(circle, {FunctionSpec::sin(1), FunctionSpec::sin(2), FunctionSpec::sin(3)});
        fns.push_back(scale(sample(FunctionSpec::sin(1), circle), 0.5));
        families.push_back({circle, std::move(fns)});
    }

    const std::vector<double> hs = {0.01, 0.05, 0.1};
    CsvTable table({"grid", "i", "j", "h", "margin", "eps", "pass"});
    double worst = std::numeric_limits<double>::infinity();
    double worst_eps = 0.0;
    bool all = true;
    long long pairs = 0;
    for (std::size_t fam = 0; fam < families.size(); ++fam) {
        const auto& F = families[fam];
        const double eps = c.eps().value_or(10.0 * F.grid.dx);
        for (std::size_t i = 0; i < F.fns.size(); ++i) {
            for (std::size_t j = i + 1; j < F.fns.size(); ++j) {
                ++pairs;
                for (double h : hs) {
                    const AccretivityResult r = accretivity_check(F.fns[i], F.fns[j], h, eps);
                    all = all && r.pass;
                    if (r.margin < worst) {
                        worst = r.margin;
                        worst_eps = eps;
                    }
                    table.row({std::string(fam == 0 ? "line" : "circle"), static_cast<long long>(i),
                               static_cast<long long>(j), h, r.margin, eps, r.pass});
                }
            }
        }
    }
    c.check("accretivity", worst, -worst_eps, all);
    c.check("pair_count", static_cast<double>(pairs), 20.0, pairs >= 20);
    c.artifact("accretivity", table.str());
}

// ---------------------------------------------------------------------------

void condsymlip(Ctx& c) {
    const std::vector<double> times = {0.0, 0.05, 0.1, 0.2, 0.4};
    const std::vector<FunctionSpec> fns = {FunctionSpec::tent(), FunctionSpec::gauss(1.0),
                                           FunctionSpec::bump(), FunctionSpec::abs_clip()};
    CsvTable table({"semigroup", "function", "s", "t", "margin"});

    auto run = [&](const SemigroupEvaluator& S) {
        double worst = std::numeric_limits<double>::infinity();
        double s0 = 0.0;
        bool all = true;
        for (const auto& spec : fns) {
            const GridFunction f = sample(spec, S.grid());
            for (double s : times) {
                for (double t : times) {
                    const double m = condsymlip_margin(S, s, t, f);
                    all = all && condsymlip_check(S, s, t, f, kCondsymlipTol);
                    worst = std::min(worst, m);
                    if (s == 0.0) s0 = std::max(s0, std::abs(m));
                    table.row({S.name(), spec.name(), s, t, m});
                }
            }
        }
        c.check(S.name(), worst, -kCondsymlipTol, all);
        c.check_le(S.name() + "_s0_identity", s0, 0.0);
    };

    if (c.dilation()) run(DilationSemigroup(c.grid(-4.0, 4.0, 801)));
    if (c.gheat_on()) {
        const Grid g = c.grid(-8.0, 8.0, 801);
        for (GHeatScheme scheme : c.schemes()) {
            run(GHeatSemigroup(g, c.gheat(), scheme, c.steps_per_unit_time()));
        }
    }
    c.artifact("condsymlip", table.str());
}

// ---------------------------------------------------------------------------

void mollify(Ctx& c) {
    CsvTable table({"semigroup", "function", "variance", "C", "h0", "pass"});
    auto run = [&](const SemigroupEvaluator& S, const FunctionSpec& spec, double variance, double C,
                   const HLadder& ladder) {
        const GridFunction f = sample(spec, S.grid());
        const bool pass = mollification_stability_check(S, f, variance, C, ladder.coarsest(), ladder);
        c.check(S.name() + "_" + slug(spec.name()), C, C, pass);
        table.row({S.name(), spec.name(), variance, C, ladder.coarsest(), pass});
    };

    if (c.dilation()) {
        const Grid g = c.grid(-4.0, 4.0, 1601);
        const DilationSemigroup S(g);
        const HLadder ladder = c.ladder(0.5, 0.5, 7);
        require_resolved(S, ladder);
        for (const auto& spec : {FunctionSpec::tent(), FunctionSpec::abs_clip(), FunctionSpec::gauss(1.0),
                                 FunctionSpec::bump(), FunctionSpec::constant(0.7)}) {
            const double C = lip_constant(sample(spec, g)) * (1.0 + 1e-9) + 1e-12;
            run(S, spec, 0.01, C, ladder);
        }
    }
    if (c.gheat_on()) {
        const Grid g = c.grid(-8.0, 8.0, 801);
        const GHeatConfig cfg = c.gheat();
        const HLadder ladder = c.ladder(0.1, 0.5, 5);
        for (GHeatScheme scheme : c.schemes()) {
            const GHeatSemigroup S(g, cfg, scheme, c.steps_per_unit_time());
            for (const auto& spec : {FunctionSpec::gauss(1.0), FunctionSpec::gauss(0.5), FunctionSpec::bump(),
                                     FunctionSpec::constant(0.7)}) {
                const double C =
                    0.5 * cfg.sigma_hi * cfg.sigma_hi * sup_norm(second_diff(sample(spec, g))) + 10.0 * g.dx;
                run(S, spec, 0.05, C, ladder);
            }
        }
    }
    c.artifact("mollify", table.str());
}

// ---------------------------------------------------------------------------

// Number of nodes where a and b differ bitwise.
double mismatches(const GridFunction& a, const GridFunction& b) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i])) ++k;
    }
    return static_cast<double>(k);
}

// max_i (f[i] - g[i]); <= 0 iff f <= g everywhere.
double excess(const GridFunction& f, const GridFunction& g) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, f[i] - g[i]);
    return m;
}

void semigroup_laws(Ctx& c) {
    const std::vector<std::ptrdiff_t> radii = {0, 1, 2, 17, 200};
    CsvTable table({"law", "semigroup", "margin"});
    auto law = [&](const std::string& name, const std::string& sg, double margin, double bound) {
        c.check_le(sg + "_" + name, margin, bound);
        table.row({name, sg, margin});
    };

    if (c.dilation()) {
        const Grid g = c.grid(-4.0, 4.0, 1601);
        std::vector<GridFunction> cat;
        for (const auto& s : dilation_catalog()) cat.push_back(sample(s, g));
        cat.push_back(neg(sample(FunctionSpec::ex43(), g)));

        double kernel = 0.0, identity = 0.0, composition = 0.0, monotone = -1e300, homog = 0.0;
        double subadd = -1e300, convex = -1e300, contraction = -1e300, modulus = -1e300, constants = 0.0;
        for (std::size_t i = 0; i < cat.size(); ++i) {
            const GridFunction& f = cat[i];
            const GridFunction& other = cat[(i + 1) % cat.size()];
            const GridFunction upper = pointwise_max(f, other);
            identity += mismatches(dilate(f, 0), f);
            for (std::ptrdiff_t r : radii) {
                const GridFunction Sf = dilate(f, r);
                const GridFunction So = dilate(other, r);
                kernel += mismatches(Sf, dilate_naive(f, r));
                for (std::ptrdiff_t q : radii) composition += mismatches(dilate(Sf, q), dilate(f, r + q));
                monotone = std::max(monotone, excess(Sf, dilate(upper, r)));
                for (double lambda : {0.5, 2.0, 3.0}) {
                    homog += mismatches(dilate(scale(f, lambda), r), scale(Sf, lambda));
                }
                subadd = std::max(subadd, excess(dilate(add(f, other), r), add(Sf, So)));
                convex = std::max(convex, excess(dilate(axpby(0.5, f, 0.5, other), r), axpby(0.5, Sf, 0.5, So)));
                contraction = std::max(contraction, sup_norm(sub(Sf, So)) - sup_norm(sub(f, other)));
                modulus = std::max(modulus, lip_constant(Sf) - lip_constant(f));
            }
        }
        for (double k : {-1.5, 0.0, 0.7}) {
            const GridFunction f = sample(FunctionSpec::constant(k), g);
            for (std::ptrdiff_t r : radii) constants += mismatches(dilate(f, r), f);
        }
        law("kernel_matches_naive", "dilation", kernel, 0.0);
        law("identity_at_0", "dilation", identity, 0.0);
        law("semigroup_law", "dilation", composition, 0.0);
        law("monotone", "dilation", monotone, 0.0);
        law("positive_homogeneity", "dilation", homog, 0.0);
        law("subadditive", "dilation", subadd, 0.0);
        law("convex", "dilation", convex, 0.0);
        law("contraction", "dilation", contraction, 0.0);
        law("modulus", "dilation", modulus, 0.0);
        law("constants", "dilation", constants, 0.0);
    }

    if (c.gheat_on()) {
        const Grid g = c.grid(-8.0, 8.0, 801);
        const GHeatConfig cfg = c.gheat();
        const double t = c.t(0.25);
        std::vector<GridFunction> cat;
        for (const auto& s : {FunctionSpec::tent(), FunctionSpec::gauss(1.0), FunctionSpec::bump(),
                              FunctionSpec::abs_clip()}) {
            cat.push_back(sample(s, g));
        }
        cat.push_back(neg(sample(FunctionSpec::gauss(0.5), g)));
        for (GHeatScheme scheme : c.schemes()) {
            const GHeatSemigroup S(g, cfg, scheme, c.steps_per_unit_time());
            const std::string sg = S.name();
            double monotone = -1e300, convex = -1e300, contraction = -1e300, constants = 0.0, identity = 0.0;
            for (std::size_t i = 0; i < cat.size(); ++i) {
                const GridFunction& f = cat[i];
                const GridFunction& other = cat[(i + 1) % cat.size()];
                const GridFunction Sf = S.evolve(f, t);
                const GridFunction So = S.evolve(other, t);
                identity += mismatches(S.evolve(f, 0.0), f);
                monotone = std::max(monotone, excess(Sf, S.evolve(pointwise_max(f, other), t)));
                convex = std::max(convex, excess(S.evolve(axpby(0.5, f, 0.5, other), t), axpby(0.5, Sf, 0.5, So)));
                contraction = std::max(contraction, sup_norm(sub(Sf, So)) - sup_norm(sub(f, other)));
            }
            for (double k : {-1.5, 0.7}) {
                const GridFunction f = sample(FunctionSpec::constant(k), g);
                constants += mismatches(S.evolve(f, t), f);
            }
            law("identity_at_0", sg, identity, 0.0);
            law("monotone", sg, monotone, 1e-12);
            law("convex", sg, convex, 1e-12);
            law("contraction", sg, contraction, 1e-12);
            law("constants", sg, constants, 0.0);
        }
    }
    c.artifact("laws", table.str());

    // Directional derivatives: rows must not increase as h shrinks.
    struct Triple {
        std::string sg;
        FunctionSpec x, y;
        double t;
    };
    std::vector<Triple> triples;
    if (c.dilation()) {
        for (const auto& [x, y] : std::vector<std::pair<FunctionSpec, FunctionSpec>>{
                 {FunctionSpec::tent(), FunctionSpec::bump()},
                 {FunctionSpec::gauss(1.0), FunctionSpec::sin(1)},
                 {FunctionSpec::ex43(), FunctionSpec::tent()},
                 {FunctionSpec::bump(), FunctionSpec::abs_clip()},
                 {FunctionSpec::abs_clip(), FunctionSpec::gauss(0.5)},
                 {FunctionSpec::sin(1), FunctionSpec::tent()},
                 {FunctionSpec::gauss(0.5), FunctionSpec::bump()},
                 {FunctionSpec::sqrt_abs(), FunctionSpec::sin(2)},
                 {FunctionSpec::quad(0.5), FunctionSpec::gauss(1.0)},
                 {FunctionSpec::constant(0.7), FunctionSpec::sin(1)}}) {
            triples.push_back({"dilation", x, y, 0.5});
        }
    }
    if (c.gheat_on()) {
        for (GHeatScheme scheme : c.schemes()) {
            for (const auto& [x, y] : std::vector<std::pair<FunctionSpec, FunctionSpec>>{
                     {FunctionSpec::gauss(1.0), FunctionSpec::gauss(4.0)},
                     {FunctionSpec::tent(), FunctionSpec::bump()},
                     {FunctionSpec::bump(), FunctionSpec::sin(1)}}) {
                triples.push_back({scheme_tag(scheme), x, y, 0.1});
            }
        }
    }
    if (!triples.empty()) {
        const HLadder ladder = HLadder::geometric(1.0, 0.5, 5);
        const Grid gd = c.grid(-4.0, 4.0, 801);
        const Grid gh = c.grid(-8.0, 8.0, 401);
        const GHeatConfig cfg = c.gheat();
        CsvTable dir({"semigroup", "x", "y", "t", "max_increase", "dominated"});
        double worst = -1e300;
        double domination = -1e300;
        for (const auto& tr : triples) {
            std::unique_ptr<SemigroupEvaluator> S;
            if (tr.sg == "dilation") {
                S = std::make_unique<DilationSemigroup>(gd);
            } else {
                const auto scheme = tr.sg == "fd" ? GHeatScheme::FiniteDifference : GHeatScheme::NisioProduct;
                S = std::make_unique<GHeatSemigroup>(gh, cfg, scheme, c.steps_per_unit_time());
            }
            const GridFunction x = sample(tr.x, S->grid());
            const GridFunction y = sample(tr.y, S->grid());
            const QuotientReport r = directional_derivative_probe(*S, tr.t, x, y, ladder);
            // Domination by S(x + y) - S(x): the h = 1 row.
            const GridFunction cap = sub(S->evolve(add(x, y), tr.t), S->evolve(x, tr.t));
            const double dom = excess(r.quotients.back(), cap);
            worst = std::max(worst, r.max_increase);
            domination = std::max(domination, dom);
            dir.row({S->name(), tr.x.name(), tr.y.name(), tr.t, r.max_increase, dom});
        }
        c.check_le("directional_rows_nonincreasing", worst, kDirectionalTol);
        c.check_le("directional_dominated", domination, kDirectionalTol);
        c.check("directional_triples", static_cast<double>(triples.size()), 10.0, triples.size() >= 10);
        c.artifact("directional", dir.str());
    }

    // Continuity from above along bump / n.
    const std::size_t n_max = 20;
    CsvTable cfa({"semigroup", "n", "sup_norm"});
    auto continuity = [&](const SemigroupEvaluator& S, double t) {
        const ContinuityFromAboveReport r =
            continuity_from_above_probe(S, sample(FunctionSpec::bump(), S.grid()), t, n_max);
        for (std::size_t k = 0; k < r.sup_norms.size(); ++k) {
            cfa.row({S.name(), static_cast<long long>(k + 1), r.sup_norms[k]});
        }
        c.check(S.name() + "_continuity_nonincreasing", r.sup_norms.back(), r.sup_norms.front(),
                r.sup_nonincreasing && r.nodewise_decreasing);
        // S is positively homogeneous, so the sequence must fall like 1/n.
        const double rate = r.sup_norms.back() * static_cast<double>(n_max);
        c.check(S.name() + "_continuity_rate", rate,
                r.sup_norms.front(), std::abs(rate - r.sup_norms.front()) <= 1e-12 * r.sup_norms.front());
    };
    if (c.dilation()) continuity(DilationSemigroup(c.grid(-4.0, 4.0, 801)), c.t(0.5));
    if (c.gheat_on()) {
        for (GHeatScheme scheme : c.schemes()) {
            continuity(GHeatSemigroup(c.grid(-8.0, 8.0, 401), c.gheat(), scheme, c.steps_per_unit_time()),
                       c.t(0.25));
        }
    }
    c.artifact("continuity_from_above", cfa.str());
}

struct Entry {
    ScenarioInfo info;
    void (*run)(Ctx&);
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> e = {
        {{"example-4-3", "closed form of the dilated x^2/x^4 example and its kink at 0"}, example_4_3},
        {{"shift-generator", "dilation generator |f'| on sin_1, gauss(1), tent"}, shift_generator},
        {{"gheat-generator", "G-heat generator 1/2 max(lo^2 f'', hi^2 f'') on +-x^2, gauss, sin"},
         gheat_generator},
        {{"uniqueness-cross-check", "finite differences vs Nisio products over a refinement ladder"},
         uniqueness_cross_check},
        {{"invariance", "symmetric Lipschitz sets are invariant under both semigroups"}, invariance},
        {{"accretivity", "accretivity inequality for |f'| on smooth pairs"}, accretivity},
        {{"condsymlip", "-S(s)(-S(t)f) >= S(t)(-S(s)(-f)) over an (s,t) grid"}, condsymlip},
        {{"mollify", "Gaussian mollification keeps symmetric Lipschitz bounds"}, mollify},
        {{"semigroup-laws", "exact dilation laws, G-heat order laws, continuity from above"}, semigroup_laws},
    };
    return e;
}

}  // namespace

const std::vector<ScenarioInfo>& scenario_catalog() {
    static const std::vector<ScenarioInfo> cat = [] {
        std::vector<ScenarioInfo> v;
        for (const auto& e : entries()) v.push_back(e.info);
        return v;
    }();
    return cat;
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
    const Entry* entry = nullptr;
    for (const auto& e : entries()) {
        if (e.info.id == config.scenario_id) entry = &e;
    }
    if (!entry) throw UsageError("unknown scenario '" + config.scenario_id + "'");

    ScenarioResult result;
    result.scenario_id = config.scenario_id;
    const auto start = std::chrono::steady_clock::now();
    Ctx ctx(config, result);
    try {
        entry->run(ctx);
    } catch (const std::invalid_argument& e) {
        // Library precondition failures here stem from the configuration.
        throw UsageError(e.what());
    }
    result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.overall = !result.rows.empty();
    for (const auto& r : result.rows) result.overall = result.overall && r.pass;
    if (config.write_artifacts) write_artifacts(result, config.out_dir);
    return result;
}

}  // namespace semilab
