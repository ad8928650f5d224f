#pragma once

#include <json.hpp>

#include "symcurv/classify.hpp"

namespace symcurv {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "1.0.0";

inline Json verdict_to_json(const PropertyVerdict& v) {
    Json j;
    j["property"] = v.property;
    j["status"] = status_name(v.status);
    j["assumptions"] = v.assumptions;
    Json w = Json::object();
    for (const auto& [k, val] : v.witness) w[k] = val;
    j["witness"] = w;
    if (!v.certificate.empty()) j["certificate"] = v.certificate;
    if (!v.notes.empty()) j["notes"] = v.notes;
    return j;
}

inline Json assumptions_to_json(const AssumptionSet& as) {
    Json j;
    Json subs = Json::array();
    if (as.context())
        for (const auto& [target, image] : as.substitutions()) {
            Json s;
            s["symbol"] = detail::atom_display_name(*as.context(), target);
            s["value"] = to_string(image);
            subs.push_back(s);
        }
    j["substitutions"] = subs;
    Json nz = Json::array();
    for (const Expr& e : as.nonzero())
        if (!e.is_rational()) nz.push_back(to_string(e));
    j["nonzero"] = nz;
    return j;
}

inline Json report_header(const MetricBundle& b) {
    Json j;
    j["version"] = kToolVersion;
    j["metric"] = b.name;
    j["assumptions"] = assumptions_to_json(b.assumptions);
    return j;
}

} // namespace symcurv
