#include "eggbergman/report.hpp"

#include <stdexcept>

namespace eggb {

ReportWriter::ReportWriter(std::string jsonl_path, std::string csv_path)
    : jsonl_path_(std::move(jsonl_path)), csv_path_(std::move(csv_path)) {
    jsonl_.open(jsonl_path_, std::ios::trunc);
    if (!jsonl_)
        throw std::runtime_error("ReportWriter: cannot open " + jsonl_path_);
}

ReportWriter::~ReportWriter() {
    try {
        close();
    } catch (...) {
        // destructor must not throw; close() explicitly to see errors
    }
}

void ReportWriter::add(const CheckRow& row) {
    Json j;
    j["suite"] = row.suite;
    j["check"] = row.check;
    j["params"] = row.params;
    j["estimate"] = row.estimate;
    j["std_error"] = row.std_error;
    j["tolerance"] = row.tolerance;
    j["sup_point"] = row.sup_point;
    j["pass"] = row.pass;
    j["samples"] = row.samples;
    jsonl_ << j.dump() << "\n";
    jsonl_.flush();
    rows_.push_back(row);
}

void ReportWriter::close() {
    if (closed_) return;
    closed_ = true;
    jsonl_.close();
    std::ofstream csv(csv_path_, std::ios::trunc);
    if (!csv) throw std::runtime_error("ReportWriter: cannot open " + csv_path_);
    csv << "suite,check,estimate,tolerance,pass\n";
    for (const CheckRow& row : rows_) {
        csv << row.suite << "," << row.check << ","
            << Json(row.estimate).dump() << "," << Json(row.tolerance).dump() << ","
            << (row.pass ? "true" : "false") << "\n";
    }
}

bool ReportWriter::all_passed() const {
    for (const CheckRow& row : rows_)
        if (!row.pass) return false;
    return true;
}

std::vector<std::string> ReportWriter::failing_checks() const {
    std::vector<std::string> out;
    for (const CheckRow& row : rows_)
        if (!row.pass) out.push_back(row.suite + "/" + row.check);
    return out;
}

} // namespace eggb
