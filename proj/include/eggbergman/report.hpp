#ifndef EGGBERGMAN_REPORT_HPP
#define EGGBERGMAN_REPORT_HPP

#include "json.hpp"

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace eggb {

using Json = nlohmann::ordered_json;

/// One verification record: what was checked, the estimate, the tolerance it
/// was held to, and where a sup was attained (when applicable).
struct CheckRow {
    std::string suite;
    std::string check;
    Json params = Json::object();
    double estimate = 0.0;
    double std_error = 0.0;
    double tolerance = 0.0;
    Json sup_point; // null unless a scan produced an argmax
    bool pass = false;
    std::uint64_t samples = 0;
};

/// Streams check rows as JSON lines and writes a CSV summary on close.
/// Field order is fixed, no timestamps: identical configurations produce
/// byte-identical files.
class ReportWriter {
  public:
    ReportWriter(std::string jsonl_path, std::string csv_path);
    ~ReportWriter();

    void add(const CheckRow& row);
    void close();

    bool all_passed() const;
    const std::vector<CheckRow>& rows() const { return rows_; }
    std::vector<std::string> failing_checks() const;

  private:
    std::string jsonl_path_;
    std::string csv_path_;
    std::ofstream jsonl_;
    std::vector<CheckRow> rows_;
    bool closed_ = false;
};

} // namespace eggb

#endif
