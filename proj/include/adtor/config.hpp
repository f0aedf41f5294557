#pragma once

// Run configuration: a flat key-value tree with a JSON-compatible grammar.
// Serialization is canonical (keys sorted, floats at 17 significant digits),
// so parse(serialize(c)) == c.

#include "adtor/linalg.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace adtor {

struct RunConfig {
    std::uint64_t seed = 42;
    std::vector<Index> h = {2, 1};                 // YModel cohomology dims
    std::vector<double> r_grid = {1.0, 10.0, 100.0};
    std::pair<double, double> window = {0.0, 2.0 * M_PI};
    double tolerance = 1e-10;
    double perturbation = 0.0;
    std::string family = "identity";
    std::string output_dir;

    bool operator==(const RunConfig&) const = default;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["seed"] = seed;
        j["h"] = h;
        j["r_grid"] = r_grid;
        j["window"] = {window.first, window.second};
        j["tolerance"] = tolerance;
        j["perturbation"] = perturbation;
        j["family"] = family;
        j["output_dir"] = output_dir;
        return j;
    }

    static RunConfig from_json(const nlohmann::json& j) {
        RunConfig c;
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("h")) c.h = j.at("h").get<std::vector<Index>>();
        if (j.contains("r_grid")) c.r_grid = j.at("r_grid").get<std::vector<double>>();
        if (j.contains("window")) {
            auto w = j.at("window").get<std::vector<double>>();
            require(w.size() == 2, "config: window must have two entries");
            c.window = {w[0], w[1]};
        }
        if (j.contains("tolerance")) c.tolerance = j.at("tolerance").get<double>();
        if (j.contains("perturbation")) c.perturbation = j.at("perturbation").get<double>();
        if (j.contains("family")) c.family = j.at("family").get<std::string>();
        if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
        return c;
    }

    std::string serialize() const { return to_json().dump(2); }
    static RunConfig parse(const std::string& text) {
        return from_json(nlohmann::json::parse(text));
    }
};

}  // namespace adtor
