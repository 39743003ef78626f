#pragma once
// CSV and JSON result emission.  The CSV schema is versioned: the header row
// below is schema v1 and is pinned by tests; consumers key on it.  Output is
// UTF-8 with LF line endings, '.' decimal point, and 17 significant digits so
// doubles round-trip exactly.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lmoment/cache.hpp"

namespace lmoment {

inline constexpr const char* CSV_HEADER =
    "run_id,q,parity,subject,value_re,value_im,reference_re,reference_im,"
    "abs_dev,rel_dev,tolerance,pass";

struct CsvRow {
    std::string run_id;
    uint64_t q = 0;
    int parity = 0;
    std::string subject;
    std::complex<double> value{0.0, 0.0};
    std::complex<double> reference{0.0, 0.0};
    double abs_dev = 0.0;
    double rel_dev = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_line(const CsvRow& r) {
    if (r.subject.find(',') != std::string::npos || r.run_id.find(',') != std::string::npos)
        throw std::invalid_argument("csv_line: fields must not contain commas");
    std::string s;
    s += r.run_id;
    s += ',';
    s += std::to_string(r.q);
    s += ',';
    s += std::to_string(r.parity);
    s += ',';
    s += r.subject;
    s += ',';
    s += format_g17(r.value.real());
    s += ',';
    s += format_g17(r.value.imag());
    s += ',';
    s += format_g17(r.reference.real());
    s += ',';
    s += format_g17(r.reference.imag());
    s += ',';
    s += format_g17(r.abs_dev);
    s += ',';
    s += format_g17(r.rel_dev);
    s += ',';
    s += format_g17(r.tolerance);
    s += ',';
    s += r.pass ? '1' : '0';
    return s;
}

// Rows accumulate in memory and are written by the single owner at the end of
// a run; worker threads never touch the writer.
class CsvReport {
  public:
    explicit CsvReport(std::string run_id) : run_id_(std::move(run_id)) {}

    const std::string& run_id() const { return run_id_; }

    CsvRow& add(std::string subject, uint64_t q, int parity, std::complex<double> value,
                std::complex<double> reference, double tolerance) {
        CsvRow r;
        r.run_id = run_id_;
        r.q = q;
        r.parity = parity;
        r.subject = std::move(subject);
        r.value = value;
        r.reference = reference;
        r.abs_dev = std::abs(value - reference);
        double den = std::abs(reference);
        r.rel_dev = den > 0.0 ? r.abs_dev / den : r.abs_dev;
        r.tolerance = tolerance;
        r.pass = r.abs_dev <= tolerance || (tolerance > 0.0 && r.rel_dev <= tolerance);
        rows_.push_back(std::move(r));
        return rows_.back();
    }

    const std::vector<CsvRow>& rows() const { return rows_; }

    bool all_pass() const {
        for (const auto& r : rows_)
            if (!r.pass) return false;
        return true;
    }

    std::string to_string() const {
        std::string out(CSV_HEADER);
        out += '\n';
        for (const auto& r : rows_) {
            out += csv_line(r);
            out += '\n';
        }
        return out;
    }

    void write_csv(const std::string& path) const {
        std::ofstream f(path, std::ios::binary);  // binary: exactly LF, no translation
        if (!f) throw std::runtime_error("cannot open CSV output: " + path);
        f << to_string();
    }

    // {"run_id":..., "suites": {name: {pass, fail, max_residual}}, "all_pass": ...}
    void write_json_summary(const std::string& path) const {
        nlohmann::ordered_json suites = nlohmann::ordered_json::object();
        // group by subject prefix up to the first '/'
        std::vector<std::string> order;
        for (const auto& r : rows_) {
            std::string suite = r.subject.substr(0, r.subject.find('/'));
            if (!suites.contains(suite)) {
                suites[suite] = {{"pass", 0}, {"fail", 0}, {"max_residual", 0.0}};
                order.push_back(suite);
            }
            auto& s = suites[suite];
            s[r.pass ? "pass" : "fail"] = s[r.pass ? "pass" : "fail"].get<int>() + 1;
            double res = std::max(s["max_residual"].get<double>(), r.abs_dev);
            s["max_residual"] = res;
        }
        nlohmann::ordered_json doc;
        doc["run_id"] = run_id_;
        doc["suites"] = suites;
        doc["all_pass"] = all_pass();
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open JSON output: " + path);
        f << doc.dump(2) << '\n';
    }

  private:
    std::string run_id_;
    std::vector<CsvRow> rows_;
};

// deterministic run id: hash of the canonical config text
inline std::string make_run_id(const std::string& canonical_config) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "r%016" PRIx64, DiskCache::fnv1a(canonical_config));
    return buf;
}

}  // namespace lmoment
