#pragma once

// Strict field-by-field reader for JSON objects: every key must be consumed,
// and values must have the exact JSON type of the destination.

#include <cstdint>
#include <set>
#include <string>
#include <type_traits>

#include <json.hpp>

#include "bubblebuoy/scenario_io.hpp"

namespace bubblebuoy {

class ObjectReader {
public:
    ObjectReader(const nlohmann::json& j, std::string where) : j_(j), where_(std::move(where)) {
        if (!j_.is_object()) throw SchemaError(where_ + ": expected an object");
    }

    const nlohmann::json* field(const std::string& key) {
        auto it = j_.find(key);
        if (it == j_.end()) return nullptr;
        seen_.insert(key);
        return &*it;
    }

    template <typename T>
    bool get(const std::string& key, T& out) {
        const nlohmann::json* v = field(key);
        if (!v) return false;
        convert(*v, where_ + "." + key, out);
        return true;
    }

    template <typename T>
    void require(const std::string& key, T& out) {
        if (!get(key, out)) throw SchemaError(where_ + "." + key + ": required");
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!seen_.count(it.key())) throw SchemaError(where_ + "." + it.key() + ": unknown field");
        }
    }

private:
    static void convert(const nlohmann::json& v, const std::string& path, double& out) {
        if (!v.is_number()) throw SchemaError(path + ": expected a number");
        out = v.get<double>();
    }
    static void convert(const nlohmann::json& v, const std::string& path, int& out) {
        if (!v.is_number_integer()) throw SchemaError(path + ": expected an integer");
        const auto x = v.get<std::int64_t>();
        if (x < INT32_MIN || x > INT32_MAX) throw SchemaError(path + ": integer out of range");
        out = static_cast<int>(x);
    }
    static void convert(const nlohmann::json& v, const std::string& path, std::uint64_t& out) {
        if (!v.is_number_unsigned()) throw SchemaError(path + ": expected a non-negative integer");
        out = v.get<std::uint64_t>();
    }
    static void convert(const nlohmann::json& v, const std::string& path, bool& out) {
        if (!v.is_boolean()) throw SchemaError(path + ": expected a boolean");
        out = v.get<bool>();
    }
    static void convert(const nlohmann::json& v, const std::string& path, std::string& out) {
        if (!v.is_string()) throw SchemaError(path + ": expected a string");
        out = v.get<std::string>();
    }

    const nlohmann::json& j_;
    std::string where_;
    std::set<std::string> seen_;
};

}  // namespace bubblebuoy
