#pragma once

// Flat KEY: value reports with a JSON mirror using the same keys.

#include <cstdio>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace supervene {

class Report {
 public:
  using List = std::vector<std::string>;
  using Value = std::variant<bool, long long, double, std::string, List>;

  template <class T>
  Report& add(std::string key, T&& value) {
    using U = std::decay_t<T>;
    if constexpr (std::is_integral_v<U> && !std::is_same_v<U, bool>)
      entries_.emplace_back(std::move(key), static_cast<long long>(value));
    else if constexpr (std::is_convertible_v<U, std::string_view> && !std::is_same_v<U, std::string>)
      entries_.emplace_back(std::move(key), std::string(value));
    else
      entries_.emplace_back(std::move(key), Value(std::forward<T>(value)));
    return *this;
  }

  const std::vector<std::pair<std::string, Value>>& entries() const { return entries_; }

  /// Numbers print with six decimals, lists as "{x, y}".
  static std::string format(const Value& value) {
    struct Visitor {
      std::string operator()(bool v) const { return v ? "true" : "false"; }
      std::string operator()(long long v) const { return std::to_string(v); }
      std::string operator()(double v) const {
        char buffer[64];
        std::snprintf(buffer, sizeof buffer, "%.6f", v);
        return buffer;
      }
      std::string operator()(const std::string& v) const { return v; }
      std::string operator()(const List& v) const {
        std::string out = "{";
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) out += ", ";
          out += v[i];
        }
        return out + "}";
      }
    };
    return std::visit(Visitor{}, value);
  }

  std::string text() const {
    std::string out;
    for (const auto& [key, value] : entries_) out += key + ": " + format(value) + "\n";
    return out;
  }

  nlohmann::ordered_json json() const {
    auto out = nlohmann::ordered_json::object();
    for (const auto& [key, value] : entries_)
      std::visit([&](const auto& v) { out[key] = v; }, value);
    return out;
  }

 private:
  std::vector<std::pair<std::string, Value>> entries_;
};

}  // namespace supervene
