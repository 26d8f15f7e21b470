#include "torus_blocks/verify_report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace torus_blocks {

namespace {

std::string sig6(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

nlohmann::json to_json(const VerifyReport& r) {
    nlohmann::json j;
    j["name"] = r.name;
    j["route_a"] = r.route_a;
    j["route_b"] = r.route_b;
    j["value_a"] = {r.value_a.real(), r.value_a.imag()};
    j["value_b"] = {r.value_b.real(), r.value_b.imag()};
    j["residual"] = sig6(r.residual);
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    j["runtime_ms"] = r.runtime_ms;
    nlohmann::json cfg = nlohmann::json::object();
    for (const auto& [k, v] : r.config) cfg[k] = v;
    j["config"] = cfg;
    return j;
}

} // namespace

VerifyReport make_report(std::string name, std::string route_a, std::string route_b,
                         std::complex<double> value_a, std::complex<double> value_b,
                         double residual, double tolerance, long runtime_ms,
                         std::vector<std::pair<std::string, std::string>> config) {
    VerifyReport r;
    r.name = std::move(name);
    r.route_a = std::move(route_a);
    r.route_b = std::move(route_b);
    r.value_a = value_a;
    r.value_b = value_b;
    r.residual = residual;
    r.tolerance = tolerance;
    r.pass = residual <= tolerance;
    r.runtime_ms = runtime_ms;
    r.config = std::move(config);
    return r;
}

std::string emit(const VerifyReport& report, ReportFormat format) {
    if (format == ReportFormat::json) return to_json(report).dump();
    std::ostringstream os;
    os << report.name << ',' << report.route_a << ',' << report.route_b << ','
       << report.value_a.real() << ',' << report.value_a.imag() << ',' << report.value_b.real()
       << ',' << report.value_b.imag() << ',' << sig6(report.residual) << ',' << report.tolerance
       << ',' << (report.pass ? "true" : "false") << ',' << report.runtime_ms << ',';
    std::string cfg;
    for (const auto& [k, v] : report.config) {
        if (!cfg.empty()) cfg += ';';
        cfg += k + "=" + v;
    }
    os << '"' << cfg << '"';
    return os.str();
}

std::string emit_table(const std::vector<VerifyReport>& reports, ReportFormat format) {
    std::ostringstream os;
    if (format == ReportFormat::csv) {
        os << "name,route_a,route_b,value_a_re,value_a_im,value_b_re,value_b_im,residual,"
              "tolerance,pass,runtime_ms,config\n";
        for (const auto& r : reports) os << emit(r, format) << '\n';
        return os.str();
    }
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(nlohmann::json::parse(emit(r, format)));
    return arr.dump(2) + "\n";
}

VerifyReport parse_report_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    VerifyReport r;
    r.name = j.at("name").get<std::string>();
    r.route_a = j.at("route_a").get<std::string>();
    r.route_b = j.at("route_b").get<std::string>();
    r.value_a = {j.at("value_a")[0].get<double>(), j.at("value_a")[1].get<double>()};
    r.value_b = {j.at("value_b")[0].get<double>(), j.at("value_b")[1].get<double>()};
    r.residual = std::stod(j.at("residual").get<std::string>());
    r.tolerance = j.at("tolerance").get<double>();
    r.pass = j.at("pass").get<bool>();
    r.runtime_ms = j.at("runtime_ms").get<long>();
    for (auto it = j.at("config").begin(); it != j.at("config").end(); ++it)
        r.config.emplace_back(it.key(), it.value().get<std::string>());
    return r;
}

} // namespace torus_blocks
