#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "flavorrec/error.hpp"

namespace flavorrec::detail {

using json = nlohmann::json;

inline json parse_json(std::string_view document, std::string_view what) {
    try {
        return json::parse(document);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

inline double number_field(const json& obj, const std::string& key, std::string_view context) {
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ParseError(std::string(context) + ": field '" + key + "' must be a number");
    return v.get<double>();
}

}  // namespace flavorrec::detail
