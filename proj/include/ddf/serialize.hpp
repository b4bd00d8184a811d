#ifndef DDF_SERIALIZE_HPP
#define DDF_SERIALIZE_HPP

#include <optional>
#include <string>

#include "json.hpp"

#include "ddf/designs.hpp"
#include "ddf/families.hpp"
#include "ddf/isogate.hpp"
#include "ddf/version.hpp"

namespace ddf {

using ordered_json = nlohmann::ordered_json;

/// {"N": "multiplicity", ...} with keys in ascending numeric order and
/// multiplicities as decimal strings.
inline ordered_json profile_to_json(const IntersectionProfile& profile) {
    ordered_json j = ordered_json::object();
    for (const auto& [n, mult] : profile.counts()) j[std::to_string(n)] = std::to_string(mult);
    return j;
}

inline IntersectionProfile profile_from_json(const ordered_json& j) {
    IntersectionProfile profile;
    for (const auto& [key, value] : j.items()) profile.add(std::stoull(key), std::stoull(value.get<std::string>()));
    return profile;
}

inline ordered_json gate_to_json(const GateReport& g) {
    ordered_json j;
    j["p"] = g.p;
    j["r"] = g.r;
    j["p_odd"] = g.p_odd;
    j["mod24"] = g.mod24;
    j["wieferich"] = g.wieferich;
    j["applies"] = g.applies;
    j["reasons"] = g.reasons;
    return j;
}

inline ordered_json validation_to_json(const ValidationReport& r) {
    ordered_json j;
    j["is_difference_family"] = r.is_difference_family;
    j["observed_lambda"] = r.observed_lambda ? ordered_json(*r.observed_lambda) : ordered_json("non-constant");
    j["disjoint"] = r.disjoint;
    j["near_complete"] = r.near_complete;
    j["uniform_block_size"] = r.uniform_block_size;
    j["offending_element"] = r.offending_element ? ordered_json(*r.offending_element) : ordered_json(nullptr);
    return j;
}

struct CertificateInput {
    std::string construction_a;
    std::string construction_b;
    std::optional<GateReport> gate;  // absent when (p, r) does not apply
};

/// Fields, in order: parameters, gate, profiles, intersection numbers,
/// verdict, witness, tool version.
inline ordered_json certificate_json(const DifferenceFamily& a, const Comparison& cmp, const CertificateInput& in) {
    ordered_json j;
    ordered_json params;
    if (in.gate) {
        params["p"] = in.gate->p;
        params["r"] = in.gate->r;
    }
    params["v"] = a.v;
    params["k"] = a.k;
    params["lambda"] = a.lambda;
    params["base_blocks"] = a.b();
    params["construction_a"] = in.construction_a;
    params["construction_b"] = in.construction_b;
    j["parameters"] = params;
    j["gate"] = in.gate ? gate_to_json(*in.gate) : ordered_json(nullptr);
    j["profiles"] = {{"a", profile_to_json(cmp.profile_a)}, {"b", profile_to_json(cmp.profile_b)}};
    j["intersection_numbers"] = {{"a", intersection_numbers(cmp.profile_a)},
                                 {"b", intersection_numbers(cmp.profile_b)}};
    j["verdict"] = to_string(cmp.verdict);
    if (cmp.witness_key) {
        j["witness"] = {{"key", *cmp.witness_key},
                        {"kind", cmp.witness_kind},
                        {"multiplicity_a", std::to_string(cmp.profile_a.at(*cmp.witness_key))},
                        {"multiplicity_b", std::to_string(cmp.profile_b.at(*cmp.witness_key))}};
    } else {
        j["witness"] = nullptr;
    }
    j["tool_version"] = kToolVersion;
    return j;
}

}  // namespace ddf

#endif  // DDF_SERIALIZE_HPP
