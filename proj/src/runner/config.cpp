#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <string>

#include "semilab/errors.hpp"
#include "semilab/runner.hpp"

namespace semilab {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view why) {
    throw UsageError("invalid value '" + std::string(value) + "' for key '" + std::string(key) +
                     "': " + std::string(why));
}

double to_real(std::string_view key, std::string_view value) {
    const std::string s(value);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        bad_value(key, value, "expected a number");
    }
    if (used != s.size() || !std::isfinite(v)) bad_value(key, value, "expected a number");
    return v;
}

std::size_t to_count(std::string_view key, std::string_view value) {
    const std::string s(value);
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); })) {
        bad_value(key, value, "expected a nonnegative integer");
    }
    try {
        return static_cast<std::size_t>(std::stoull(s));
    } catch (const std::exception&) {
        bad_value(key, value, "integer out of range");
    }
}

double positive(std::string_view key, std::string_view value) {
    const double v = to_real(key, value);
    if (!(v > 0.0)) bad_value(key, value, "must be positive");
    return v;
}

double nonnegative(std::string_view key, std::string_view value) {
    const double v = to_real(key, value);
    if (!(v >= 0.0)) bad_value(key, value, "must be nonnegative");
    return v;
}

std::string one_of(std::string_view key, std::string_view value,
                   std::initializer_list<std::string_view> options) {
    for (auto o : options) {
        if (value == o) return std::string(value);
    }
    bad_value(key, value, "not an accepted choice");
}

}  // namespace

const std::vector<std::string_view>& config_keys() {
    static const std::vector<std::string_view> keys = {
        "scenario", "a",     "b",        "n",     "extension", "semigroup", "sigma_lo",
        "sigma_hi", "cfl",   "method",   "n_steps", "t",       "h_max",     "ratio",
        "count",    "tol_conv", "trim",  "eps",   "out"};
    return keys;
}

void apply_setting(ScenarioConfig& c, std::string_view key, std::string_view value) {
    key = trim(key);
    value = trim(value);
    if (key == "scenario") {
        c.scenario_id = std::string(value);
    } else if (key == "a") {
        c.a = to_real(key, value);
    } else if (key == "b") {
        c.b = to_real(key, value);
    } else if (key == "n") {
        const auto n = to_count(key, value);
        if (n < 3) bad_value(key, value, "grid needs at least 3 nodes");
        c.n = n;
    } else if (key == "extension") {
        try {
            c.extension = parse_extension(value);
        } catch (const DomainError&) {
            bad_value(key, value, "expected clamp or periodic");
        }
    } else if (key == "semigroup") {
        c.semigroup = one_of(key, value, {"dilation", "gheat", "both"});
    } else if (key == "sigma_lo") {
        c.sigma_lo = nonnegative(key, value);
    } else if (key == "sigma_hi") {
        c.sigma_hi = positive(key, value);
    } else if (key == "cfl") {
        const double v = positive(key, value);
        if (v > 1.0) bad_value(key, value, "must lie in (0, 1]");
        c.cfl = v;
    } else if (key == "method") {
        c.method = one_of(key, value, {"fd", "nisio", "both"});
    } else if (key == "n_steps") {
        const auto v = to_count(key, value);
        if (v < 1) bad_value(key, value, "must be at least 1");
        c.n_steps = v;
    } else if (key == "t") {
        c.t = nonnegative(key, value);
    } else if (key == "h_max") {
        c.h_max = positive(key, value);
    } else if (key == "ratio") {
        const double v = positive(key, value);
        if (!(v < 1.0)) bad_value(key, value, "must lie in (0, 1)");
        c.ratio = v;
    } else if (key == "count") {
        const auto v = to_count(key, value);
        if (v < 1) bad_value(key, value, "must be at least 1");
        c.count = v;
    } else if (key == "tol_conv") {
        c.tol_conv = positive(key, value);
    } else if (key == "trim") {
        const double v = nonnegative(key, value);
        if (v > 0.1) bad_value(key, value, "must lie in [0, 0.1]");
        c.trim = v;
    } else if (key == "eps") {
        c.eps = nonnegative(key, value);
    } else if (key == "out") {
        if (value.empty()) bad_value(key, value, "empty path");
        c.out_dir = std::string(value);
    } else {
        throw UsageError("unknown configuration key '" + std::string(key) + "'");
    }
}

ScenarioConfig parse_config(const std::filesystem::path& path,
                            const std::vector<std::string>& overrides) {
    ScenarioConfig c;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw UsageError("cannot read config file '" + path.string() + "'");
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::string_view s = line;
            if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
            s = trim(s);
            if (s.empty()) continue;
            const auto eq = s.find('=');
            if (eq == std::string_view::npos) {
                throw UsageError(path.string() + ":" + std::to_string(lineno) + ": expected 'key = value'");
            }
            try {
                apply_setting(c, s.substr(0, eq), s.substr(eq + 1));
            } catch (const UsageError& e) {
                throw UsageError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
            }
        }
    }
    for (const auto& o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos) throw UsageError("override '" + o + "' is not key=value");
        apply_setting(c, std::string_view(o).substr(0, eq), std::string_view(o).substr(eq + 1));
    }
    return c;
}

}  // namespace semilab
