#pragma once

#include <cstdio>
#include <initializer_list>
#include <string>
#include <string_view>
#include <variant>

namespace semilab::detail {

// Minimal CSV builder: string cells verbatim, numbers with 17 digits.
class CsvTable {
public:
    using Cell = std::variant<std::string, double, long long, bool>;

    explicit CsvTable(std::initializer_list<std::string_view> header) {
        bool first = true;
        for (auto h : header) {
            if (!first) text_ += ',';
            text_ += h;
            first = false;
        }
        text_ += '\n';
    }

    void row(std::initializer_list<Cell> cells) {
        bool first = true;
        for (const auto& c : cells) {
            if (!first) text_ += ',';
            first = false;
            append(c);
        }
        text_ += '\n';
    }

    const std::string& str() const { return text_; }

private:
    void append(const Cell& c) {
        if (const auto* s = std::get_if<std::string>(&c)) {
            text_ += *s;
        } else if (const auto* d = std::get_if<double>(&c)) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", *d);
            text_ += buf;
        } else if (const auto* i = std::get_if<long long>(&c)) {
            text_ += std::to_string(*i);
        } else {
            text_ += std::get<bool>(c) ? "true" : "false";
        }
    }

    std::string text_;
};

}  // namespace semilab::detail
