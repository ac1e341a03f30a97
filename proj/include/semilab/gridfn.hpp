#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace semilab {

/// How reads outside [0, n) are resolved.
///  - ConstantClamp: nearest endpoint value.
///  - Periodic: index modulo n-1 (node n-1 is identified with node 0).
enum class Extension { ConstantClamp, Periodic };

std::string_view to_string(Extension e);
Extension parse_extension(std::string_view s);

/// Uniform sampling lattice a = x_0 < ... < x_{n-1} = b.
struct Grid {
    double a = 0.0;
    double b = 1.0;
    std::size_t n = 3;
    double dx = 0.5;
    Extension extension = Extension::ConstantClamp;

    double x(std::size_t i) const { return a + static_cast<double>(i) * dx; }

    // Maps any (possibly out-of-range) index to a valid node index.
    std::size_t resolve(std::ptrdiff_t i) const;

    friend bool operator==(const Grid&, const Grid&) = default;
};

Grid make_grid(double a, double b, std::size_t n,
               Extension extension = Extension::ConstantClamp);

/// Real samples over a Grid. Immutable once built; every operation below
/// returns a fresh function.
class GridFunction {
public:
    GridFunction(Grid grid, std::vector<double> values);

    const Grid& grid() const { return grid_; }
    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double x(std::size_t i) const { return grid_.x(i); }

    // Read with the grid's extension policy applied.
    double at(std::ptrdiff_t i) const { return values_[grid_.resolve(i)]; }

private:
    Grid grid_;
    std::vector<double> values_;
};

/// Catalog of named test functions. Parameterised entries are written as
/// `gauss(0.5)`, `const(2)`, `sin_3`; see parse().
class FunctionSpec {
public:
    enum class Kind {
        Tent,      // (1-|x|) on [-1,1], 0 outside
        Ex43,      // x^2 on [0,2], x^4 on [-2,0), clamped to 4 / 16 outside
        Sin,       // sin(k x)
        Gauss,     // exp(-x^2 / (2 v))
        AbsClip,   // min(|x|, 1)
        Const,     // c
        Bump,      // exp(1 - 1/(1-x^2)) on (-1,1), 0 outside; peak 1
        Quad,      // c x^2
        SqrtAbs,   // sqrt(min(|x|, 1)); Hoelder-1/2, not Lipschitz
        Tabulated  // explicit node values
    };

    static FunctionSpec tent() { return FunctionSpec(Kind::Tent, 0.0); }
    static FunctionSpec ex43() { return FunctionSpec(Kind::Ex43, 0.0); }
    static FunctionSpec sin(double k) { return FunctionSpec(Kind::Sin, k); }
    static FunctionSpec gauss(double variance);
    static FunctionSpec abs_clip() { return FunctionSpec(Kind::AbsClip, 0.0); }
    static FunctionSpec constant(double c) { return FunctionSpec(Kind::Const, c); }
    static FunctionSpec bump() { return FunctionSpec(Kind::Bump, 0.0); }
    static FunctionSpec quad(double c) { return FunctionSpec(Kind::Quad, c); }
    static FunctionSpec sqrt_abs() { return FunctionSpec(Kind::SqrtAbs, 0.0); }
    static FunctionSpec tabulated(std::vector<double> values);

    // Parses the textual catalog syntax; throws DomainError on malformed
    // names or parameters.
    static FunctionSpec parse(std::string_view text);

    Kind kind() const { return kind_; }
    double parameter() const { return param_; }
    const std::vector<double>& table() const { return table_; }
    std::string name() const;

    // Pointwise value for analytic entries; DomainError for Tabulated.
    double operator()(double x) const;

private:
    FunctionSpec(Kind kind, double param) : kind_(kind), param_(param) {}

    Kind kind_;
    double param_;
    std::vector<double> table_;
};

GridFunction sample(const FunctionSpec& spec, const Grid& grid);

GridFunction tabulate(const Grid& grid, const std::function<double(double)>& fn);

double sup_norm(const GridFunction& f);

/// max_i |f[i+1] - f[i]| / dx; the Lipschitz constant of the linear
/// interpolant.
double lip_constant(const GridFunction& f);

/// (f[i+1] - f[i-1]) / (2 dx), boundary reads through the extension policy.
GridFunction central_derivative(const GridFunction& f);

/// (f[i+1] - 2 f[i] + f[i-1]) / dx^2, boundary reads through the extension policy.
GridFunction second_diff(const GridFunction& f);

/// Order-independent max/min: the signed zeros are ordered -0 < +0, so the
/// result's bit pattern never depends on argument order.
inline double lattice_max(double a, double b) {
    if (a < b) return b;
    if (b < a) return a;
    return a == 0.0 ? a + b : a;
}
inline double lattice_min(double a, double b) {
    if (a < b) return a;
    if (b < a) return b;
    return a == 0.0 ? -((-a) + (-b)) : a;
}

GridFunction pointwise_max(const GridFunction& f, const GridFunction& g);
GridFunction pointwise_min(const GridFunction& f, const GridFunction& g);
GridFunction add(const GridFunction& f, const GridFunction& g);
GridFunction sub(const GridFunction& f, const GridFunction& g);
GridFunction scale(const GridFunction& f, double lambda);
GridFunction neg(const GridFunction& f);
GridFunction abs(const GridFunction& f);
// lambda * f + mu * g, nodewise.
GridFunction axpby(double lambda, const GridFunction& f, double mu, const GridFunction& g);

/// True iff f[i] <= g[i] + tol at every node.
bool leq_within(const GridFunction& f, const GridFunction& g, double tol = 0.0);

/// Throws GridMismatch unless both functions live on the same grid.
void require_same_grid(const GridFunction& f, const GridFunction& g);

/// Nodes per side of the truncated Gaussian kernel: ceil(6 sqrt(v) / dx).
std::size_t gauss_kernel_radius(double variance, double dx);

/// Normalised sampled Gaussian weights w_0..w_r (one side; symmetric).
std::vector<double> gauss_kernel(double variance, double dx);

/// Convolution with the truncated, renormalised N(0, variance) kernel.
/// Evaluated as f[i] + sum_j w_j (f[i+j] - f[i]), which keeps constants
/// exactly fixed. variance == 0 returns f.
GridFunction gauss_convolve(const GridFunction& f, double variance);

// Two-column CSV `x,value` with 17 significant digits.
void write_csv(const GridFunction& f, std::ostream& os);
GridFunction read_csv(std::istream& is, Extension extension = Extension::ConstantClamp);

}  // namespace semilab
