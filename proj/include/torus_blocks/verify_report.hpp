#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace torus_blocks {

// Structured record of a cross-check; pass is derived from residual <= tolerance.
struct VerifyReport {
    std::string name;
    std::string route_a, route_b;
    std::complex<double> value_a{}, value_b{};
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    long runtime_ms = 0;
    std::vector<std::pair<std::string, std::string>> config;
};

VerifyReport make_report(std::string name, std::string route_a, std::string route_b,
                         std::complex<double> value_a, std::complex<double> value_b,
                         double residual, double tolerance, long runtime_ms = 0,
                         std::vector<std::pair<std::string, std::string>> config = {});

enum class ReportFormat { json, csv };

std::string emit(const VerifyReport& report, ReportFormat format);
std::string emit_table(const std::vector<VerifyReport>& reports, ReportFormat format);

// Round-trip helper for the JSON form.
VerifyReport parse_report_json(const std::string& text);

} // namespace torus_blocks
