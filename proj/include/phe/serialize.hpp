#pragma once

#include <json.hpp>

#include "phe/expansions.hpp"
#include "phe/forms.hpp"

namespace phe {

using ojson = nlohmann::ordered_json;

inline ojson to_json(const QExpansion& f) {
    ojson j;
    j["label"] = f.label;
    j["weight"] = f.weight;
    j["group"] = f.group_level == 1 ? "sl2z" : ("gamma0:" + std::to_string(f.group_level));
    j["coeffs"] = f.coeffs;
    return j;
}

inline QExpansion qexpansion_from_json(const ojson& j) {
    QExpansion f;
    f.label = j.at("label").get<std::string>();
    f.weight = j.at("weight").get<int>();
    std::string g = j.at("group").get<std::string>();
    f.group_level = (g == "sl2z") ? 1 : std::stoll(g.substr(g.find(':') + 1));
    f.coeffs = j.at("coeffs").get<std::vector<double>>();
    return f;
}

inline const char* tag_name(ExpTag t) {
    switch (t) {
        case ExpTag::Par: return "par";
        case ExpTag::Hyp: return "hyp";
        case ExpTag::Ell: return "ell";
    }
    return "?";
}

/// Rows (tag, index, re, im), the CLI table format.
inline ojson to_json(const ExpansionCoeffs& ec) {
    ojson rows = ojson::array();
    for (const auto& [idx, v] : ec.entries)
        rows.push_back({{"tag", tag_name(ec.tag)}, {"index", idx}, {"re", v.real()}, {"im", v.imag()}});
    return rows;
}

}  // namespace phe
