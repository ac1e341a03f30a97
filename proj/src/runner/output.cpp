#include <fstream>
#include <string>

#include "semilab/errors.hpp"
#include "semilab/runner.hpp"
#include "table.hpp"

namespace semilab {

namespace fs = std::filesystem;

std::string result_csv(const ScenarioResult& result) {
    detail::CsvTable t({"check_name", "measured", "bound", "pass"});
    for (const auto& r : result.rows) t.row({r.check_name, r.measured, r.bound, r.pass});
    t.row({std::string("overall"), std::string(), std::string(), result.overall});
    return t.str();
}

namespace {

void write_atomic(const fs::path& target, const std::string& content) {
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("short write to '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

}  // namespace

void write_artifacts(const ScenarioResult& result, const fs::path& out_dir) {
    const fs::path dir = out_dir / result.scenario_id;
    fs::create_directories(dir);
    for (const auto& a : result.artifacts) write_atomic(dir / (a.name + ".csv"), a.csv);
    write_atomic(dir / "result.csv", result_csv(result));
}

}  // namespace semilab
