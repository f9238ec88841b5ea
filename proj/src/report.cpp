#include "cymon/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace cymon {

bool ReportSink::check_le(const std::string& name, const nlohmann::json& params, double value,
                          double tolerance) {
    return check_that(name, params, value, tolerance, value <= tolerance);
}

bool ReportSink::check_that(const std::string& name, const nlohmann::json& params,
                            double value, double tolerance, bool pass) {
    records_.push_back({name, params, value, tolerance, pass});
    return pass;
}

bool ReportSink::all_pass() const {
    for (const auto& r : records_)
        if (!r.pass) return false;
    return true;
}

nlohmann::json ReportSink::to_json() const {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& r : records_) {
        checks.push_back({{"check", r.check},
                          {"params", r.params},
                          {"value", r.value},
                          {"tolerance", r.tolerance},
                          {"pass", r.pass}});
    }
    return {{"checks", checks}, {"all_pass", all_pass()}};
}

std::string format_sig(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    for (size_t i = 0; i < columns.size(); ++i)
        out << columns[i] << (i + 1 < columns.size() ? "," : "\n");
    for (const auto& row : rows) {
        if (row.size() != columns.size())
            throw std::runtime_error("write_csv: row width mismatch");
        for (size_t i = 0; i < row.size(); ++i)
            out << format_sig(row[i]) << (i + 1 < row.size() ? "," : "\n");
    }
}

}  // namespace cymon
