#pragma once

// JSON documents for ensembles, plans and trial reports. Complex numbers are
// [re, im] pairs, matrices are row-major [[z00, z01], [z10, z11]], angles are
// radians. Doubles are written in shortest round-trip form.

#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ptqsd/protocol.hpp"
#include "ptqsd/simulate.hpp"

namespace ptqsd {

// Malformed document; what() starts with the JSON path of the bad field.
class SchemaError : public std::runtime_error {
public:
    SchemaError(const std::string& path, const std::string& message)
        : std::runtime_error(path + ": " + message), path_(path) {}

    const std::string& path() const { return path_; }

private:
    std::string path_;
};

struct EnsembleDocumentOptions {
    // Interpret theta/phi as degrees.
    bool degrees = false;
};

// {"states": [{"theta": t, "phi": p} x3], "priors": [p1, p2, p3]}.
// Azimuths are wrapped into [-pi, pi). Domain violations (coincident states,
// priors not summing to one) surface as DomainError.
Ensemble ensemble_from_json(const nlohmann::json& doc, const EnsembleDocumentOptions& opts = {});
nlohmann::json ensemble_to_json(const Ensemble& e);

nlohmann::json to_json_value(Complex z);
nlohmann::json to_json_value(const StateVector& v);
nlohmann::json to_json_value(const Matrix2& m);

nlohmann::json plan_to_json(const DiscriminationPlan& plan);
DiscriminationPlan plan_from_json(const nlohmann::json& doc);

nlohmann::json report_to_json(const TrialReport& report);

// FNV-1a over the compact plan document.
std::uint64_t plan_fingerprint(const DiscriminationPlan& plan);

}  // namespace ptqsd
