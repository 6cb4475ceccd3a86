#pragma once

#include <json.hpp>

#include "mechkit/constitutive.hpp"

namespace mechkit {

/// JSON form: [{"order": a, "weight": w}, ...].
inline nlohmann::json measure_to_json(const DerivativeMeasure& m) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& atom : m.atoms)
        j.push_back({{"order", atom.order}, {"weight", atom.weight}});
    return j;
}

inline DerivativeMeasure measure_from_json(const nlohmann::json& j) {
    if (!j.is_array())
        throw std::invalid_argument("derivative measure: expected a JSON array");
    DerivativeMeasure m;
    for (const auto& e : j)
        m.atoms.push_back({e.at("order").get<double>(), e.at("weight").get<double>()});
    validate_measure(m);
    return m;
}

}  // namespace mechkit
