#pragma once

// Check records and CSV/JSON emission shared by the CLI subcommands.

#include <string>
#include <vector>

#include <json.hpp>

namespace cymon {

struct CheckRecord {
    std::string check;
    nlohmann::json params;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

class ReportSink {
  public:
    // records value <= tolerance as the pass criterion
    bool check_le(const std::string& name, const nlohmann::json& params, double value,
                  double tolerance);
    // records an externally decided verdict
    bool check_that(const std::string& name, const nlohmann::json& params, double value,
                    double tolerance, bool pass);

    bool all_pass() const;
    nlohmann::json to_json() const;
    const std::vector<CheckRecord>& records() const { return records_; }

  private:
    std::vector<CheckRecord> records_;
};

// 12 significant digits, the fixed CSV formatting precision
std::string format_sig(double v);

void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

}  // namespace cymon
