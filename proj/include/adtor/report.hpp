#pragma once

// Machine-readable reports and deterministic CSV output.
//
// Report format (version 1): JSON object with "version", "seed", "checks"
// (name / pass / residual / detail / provenance) and "fitted" constants.
// CSV: UTF-8, LF newlines, floats at 17 significant digits, rows sorted by
// the emitting operation so output is byte-identical for a fixed seed.

#include "adtor/gluing.hpp"

#include <json.hpp>

#include <map>
#include <ostream>

namespace adtor {

inline std::string format_double17(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

struct Report {
    std::string version = "1";
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;
    std::map<std::string, double> fitted;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["version"] = version;
        j["seed"] = seed;
        j["checks"] = nlohmann::json::array();
        for (const auto& c : checks) {
            nlohmann::json jc;
            jc["name"] = c.name;
            jc["pass"] = c.pass;
            jc["residual"] = c.residual;
            if (!c.detail.empty()) jc["detail"] = c.detail;
            jc["provenance"] = c.provenance;
            j["checks"].push_back(jc);
        }
        j["fitted"] = fitted;
        return j;
    }
};

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    void header(const std::vector<std::string>& cols) { row_strings(cols); }

    void row_strings(const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) os_ << ',';
            os_ << cells[i];
        }
        os_ << '\n';
    }

private:
    std::ostream& os_;
};

}  // namespace adtor
