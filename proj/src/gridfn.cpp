#include "semilab/gridfn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "semilab/errors.hpp"
#include "semilab/parallel.hpp"

namespace semilab {

std::string_view to_string(Extension e) {
    return e == Extension::Periodic ? "periodic" : "clamp";
}

Extension parse_extension(std::string_view s) {
    if (s == "clamp" || s == "constant" || s == "ConstantClamp") return Extension::ConstantClamp;
    if (s == "periodic" || s == "Periodic") return Extension::Periodic;
    throw DomainError("unknown extension policy '" + std::string(s) + "'");
}

std::size_t Grid::resolve(std::ptrdiff_t i) const {
    const auto last = static_cast<std::ptrdiff_t>(n) - 1;
    if (i >= 0 && i <= last) return static_cast<std::size_t>(i);
    if (extension == Extension::ConstantClamp) return i < 0 ? 0 : static_cast<std::size_t>(last);
    std::ptrdiff_t r = i % last;
    if (r < 0) r += last;
    return static_cast<std::size_t>(r);
}

Grid make_grid(double a, double b, std::size_t n, Extension extension) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
        throw DomainError("grid requires finite a < b");
    }
    if (n < 3) throw DomainError("grid requires at least 3 nodes");
    Grid g;
    g.a = a;
    g.b = b;
    g.n = n;
    g.dx = (b - a) / static_cast<double>(n - 1);
    g.extension = extension;
    return g;
}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.n) {
        throw DomainError("grid function has " + std::to_string(values_.size()) +
                          " values for a grid of " + std::to_string(grid_.n) + " nodes");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw DomainError("grid function values must be finite");
    }
}

void require_same_grid(const GridFunction& f, const GridFunction& g) {
    if (!(f.grid() == g.grid())) throw GridMismatch("grid functions live on different grids");
}

// ---------------------------------------------------------------------------
// Catalog

FunctionSpec FunctionSpec::gauss(double variance) {
    if (!(variance > 0.0) || !std::isfinite(variance)) {
        throw DomainError("gauss(v) requires v > 0");
    }
    return FunctionSpec(Kind::Gauss, variance);
}

FunctionSpec FunctionSpec::tabulated(std::vector<double> values) {
    FunctionSpec s(Kind::Tabulated, 0.0);
    s.table_ = std::move(values);
    return s;
}

namespace {

double parse_number(std::string_view text, std::string_view context) {
    std::string s(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size() || !std::isfinite(v)) {
        throw DomainError("malformed parameter '" + s + "' in '" + std::string(context) + "'");
    }
    return v;
}

// Splits "name(arg)" into name and arg; arg is empty when absent.
std::pair<std::string_view, std::string_view> split_call(std::string_view text) {
    const auto open = text.find('(');
    if (open == std::string_view::npos) return {text, {}};
    if (text.back() != ')') throw DomainError("malformed function spec '" + std::string(text) + "'");
    return {text.substr(0, open), text.substr(open + 1, text.size() - open - 2)};
}

}  // namespace

FunctionSpec FunctionSpec::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.starts_with("sin_")) return sin(parse_number(text.substr(4), text));
    const auto parts = split_call(text);
    const std::string_view head = parts.first;
    const std::string_view arg = parts.second;
    const auto simple = [&](FunctionSpec spec) {
        if (!arg.empty()) throw DomainError("'" + std::string(head) + "' takes no parameter");
        return spec;
    };
    if (head == "tent") return simple(tent());
    if (head == "ex43") return simple(ex43());
    if (head == "abs_clip") return simple(abs_clip());
    if (head == "bump") return simple(bump());
    if (head == "sqrt_abs") return simple(sqrt_abs());
    if (arg.empty()) throw DomainError("unknown or incomplete function spec '" + std::string(text) + "'");
    const double p = parse_number(arg, text);
    if (head == "sin") return sin(p);
    if (head == "gauss") return gauss(p);
    if (head == "const") return constant(p);
    if (head == "quad") return quad(p);
    throw DomainError("unknown function spec '" + std::string(text) + "'");
}

std::string FunctionSpec::name() const {
    char buf[64];
    switch (kind_) {
        case Kind::Tent: return "tent";
        case Kind::Ex43: return "ex43";
        case Kind::Sin: std::snprintf(buf, sizeof buf, "sin_%g", param_); return buf;
        case Kind::Gauss: std::snprintf(buf, sizeof buf, "gauss(%g)", param_); return buf;
        case Kind::AbsClip: return "abs_clip";
        case Kind::Const: std::snprintf(buf, sizeof buf, "const(%g)", param_); return buf;
        case Kind::Bump: return "bump";
        case Kind::Quad: std::snprintf(buf, sizeof buf, "quad(%g)", param_); return buf;
        case Kind::SqrtAbs: return "sqrt_abs";
        case Kind::Tabulated: return "tabulated";
    }
    return "?";
}

double FunctionSpec::operator()(double x) const {
    switch (kind_) {
        case Kind::Tent: return std::max(1.0 - std::abs(x), 0.0);
        case Kind::Ex43:
            if (x > 2.0) return 4.0;
            if (x >= 0.0) return x * x;
            if (x >= -2.0) return x * x * x * x;
            return 16.0;
        case Kind::Sin: return std::sin(param_ * x);
        case Kind::Gauss: return std::exp(-x * x / (2.0 * param_));
        case Kind::AbsClip: return std::min(std::abs(x), 1.0);
        case Kind::Const: return param_;
        case Kind::Bump: {
            const double s = 1.0 - x * x;
            return s > 0.0 ? std::exp(1.0 - 1.0 / s) : 0.0;
        }
        case Kind::Quad: return param_ * x * x;
        case Kind::SqrtAbs: return std::sqrt(std::min(std::abs(x), 1.0));
        case Kind::Tabulated: break;
    }
    throw DomainError("tabulated spec has no pointwise formula");
}

GridFunction sample(const FunctionSpec& spec, const Grid& grid) {
    if (spec.kind() == FunctionSpec::Kind::Tabulated) return GridFunction(grid, spec.table());
    std::vector<double> v(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) v[i] = spec(grid.x(i));
    return GridFunction(grid, std::move(v));
}

GridFunction tabulate(const Grid& grid, const std::function<double(double)>& fn) {
    std::vector<double> v(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) v[i] = fn(grid.x(i));
    return GridFunction(grid, std::move(v));
}

// ---------------------------------------------------------------------------
// Norms and differences

double sup_norm(const GridFunction& f) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

double lip_constant(const GridFunction& f) {
    double m = 0.0;
    const auto v = f.values();
    for (std::size_t i = 0; i + 1 < v.size(); ++i) m = std::max(m, std::abs(v[i + 1] - v[i]));
    return m / f.grid().dx;
}

GridFunction central_derivative(const GridFunction& f) {
    const auto n = static_cast<std::ptrdiff_t>(f.size());
    const double inv = 1.0 / (2.0 * f.grid().dx);
    std::vector<double> out(f.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = (f.at(i + 1) - f.at(i - 1)) * inv;
    return GridFunction(f.grid(), std::move(out));
}

GridFunction second_diff(const GridFunction& f) {
    const auto n = static_cast<std::ptrdiff_t>(f.size());
    const double dx = f.grid().dx;
    const double inv = 1.0 / (dx * dx);
    std::vector<double> out(f.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[i] = (f.at(i + 1) - 2.0 * f.at(i) + f.at(i - 1)) * inv;
    }
    return GridFunction(f.grid(), std::move(out));
}

// ---------------------------------------------------------------------------
// Lattice algebra

namespace {

template <typename Op>
GridFunction zip(const GridFunction& f, const GridFunction& g, Op op) {
    require_same_grid(f, g);
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(f[i], g[i]);
    return GridFunction(f.grid(), std::move(out));
}

template <typename Op>
GridFunction map(const GridFunction& f, Op op) {
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(f[i]);
    return GridFunction(f.grid(), std::move(out));
}

}  // namespace

GridFunction pointwise_max(const GridFunction& f, const GridFunction& g) {
    return zip(f, g, lattice_max);
}
GridFunction pointwise_min(const GridFunction& f, const GridFunction& g) {
    return zip(f, g, lattice_min);
}
GridFunction add(const GridFunction& f, const GridFunction& g) {
    return zip(f, g, [](double a, double b) { return a + b; });
}
GridFunction sub(const GridFunction& f, const GridFunction& g) {
    return zip(f, g, [](double a, double b) { return a - b; });
}
GridFunction scale(const GridFunction& f, double lambda) {
    return map(f, [lambda](double a) { return lambda * a; });
}
GridFunction neg(const GridFunction& f) {
    return map(f, [](double a) { return -a; });
}
GridFunction abs(const GridFunction& f) {
    return map(f, [](double a) { return std::abs(a); });
}
GridFunction axpby(double lambda, const GridFunction& f, double mu, const GridFunction& g) {
    return zip(f, g, [lambda, mu](double a, double b) { return lambda * a + mu * b; });
}

bool leq_within(const GridFunction& f, const GridFunction& g, double tol) {
    require_same_grid(f, g);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!(f[i] <= g[i] + tol)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Gaussian mollification

std::size_t gauss_kernel_radius(double variance, double dx) {
    // Relative shave so exact multiples of dx do not gain a node from rounding.
    return static_cast<std::size_t>(std::ceil(6.0 * std::sqrt(variance) / dx * (1.0 - 1e-12)));
}

std::vector<double> gauss_kernel(double variance, double dx) {
    const std::size_t r = gauss_kernel_radius(variance, dx);
    std::vector<double> w(r + 1);
    for (std::size_t j = 0; j <= r; ++j) {
        const double y = static_cast<double>(j) * dx;
        w[j] = std::exp(-y * y / (2.0 * variance));
    }
    double total = w[0];
    for (std::size_t j = 1; j <= r; ++j) total += 2.0 * w[j];
    for (double& v : w) v /= total;
    return w;
}

GridFunction gauss_convolve(const GridFunction& f, double variance) {
    if (!(variance >= 0.0) || !std::isfinite(variance)) {
        throw DomainError("gauss_convolve requires variance >= 0");
    }
    if (variance == 0.0) return f;
    const double dx = f.grid().dx;
    const std::size_t r = gauss_kernel_radius(variance, dx);
    if (r > f.size()) {
        throw KernelTooWide("Gaussian kernel radius " + std::to_string(r) + " exceeds grid size " +
                            std::to_string(f.size()));
    }
    const auto w = gauss_kernel(variance, dx);
    std::vector<double> out(f.size());
    parallel_for(f.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const auto ii = static_cast<std::ptrdiff_t>(i);
            const double c = f[i];
            double acc = 0.0;
            for (std::size_t j = r; j >= 1; --j) {
                const auto jj = static_cast<std::ptrdiff_t>(j);
                acc += w[j] * ((f.at(ii + jj) - c) + (f.at(ii - jj) - c));
            }
            out[i] = c + acc;
        }
    });
    return GridFunction(f.grid(), std::move(out));
}

// ---------------------------------------------------------------------------
// CSV

void write_csv(const GridFunction& f, std::ostream& os) {
    char buf[96];
    os << "x,value\n";
    for (std::size_t i = 0; i < f.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", f.x(i), f[i]);
        os << buf;
    }
}

GridFunction read_csv(std::istream& is, Extension extension) {
    std::string line;
    if (!std::getline(is, line)) throw DomainError("empty grid function CSV");
    if (line != "x,value" && line != "x,value\r") throw DomainError("expected header 'x,value'");
    std::vector<double> xs;
    std::vector<double> vs;
    while (std::getline(is, line)) {
        if (line.empty() || line == "\r") continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw DomainError("malformed CSV row '" + line + "'");
        xs.push_back(parse_number(std::string_view(line).substr(0, comma), line));
        auto rest = std::string_view(line).substr(comma + 1);
        if (!rest.empty() && rest.back() == '\r') rest.remove_suffix(1);
        vs.push_back(parse_number(rest, line));
    }
    if (xs.size() < 3) throw DomainError("grid function CSV needs at least 3 rows");
    const Grid grid = make_grid(xs.front(), xs.back(), xs.size(), extension);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (std::abs(xs[i] - grid.x(i)) > 1e-9 * std::max(1.0, std::abs(grid.x(i)))) {
            throw DomainError("CSV abscissae are not uniformly spaced");
        }
    }
    return GridFunction(grid, std::move(vs));
}

}  // namespace semilab
