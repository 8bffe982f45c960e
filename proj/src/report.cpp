#include "kelly/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace kelly {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Report::Section& Report::Section::set(const std::string& key, Value value) {
  if (find(key) != nullptr) {
    throw std::logic_error("duplicate report key '" + key + "' in [" + name_ + "]");
  }
  entries_.emplace_back(key, std::move(value));
  return *this;
}

const Report::Value* Report::Section::find(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return &v;
  }
  return nullptr;
}

Report::Section& Report::section(const std::string& name) {
  for (auto& s : sections_) {
    if (s.name() == name) return s;
  }
  return sections_.emplace_back(name);
}

const Report::Section* Report::find_section(const std::string& name) const {
  for (const auto& s : sections_) {
    if (s.name() == name) return &s;
  }
  return nullptr;
}

std::string Report::render() const {
  std::string out;
  for (const auto& s : sections_) {
    if (!out.empty()) out += '\n';
    out += '[' + s.name() + "]\n";
    for (const auto& [key, value] : s.entries()) {
      out += key + " = ";
      std::visit(
          [&out](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              out += format_number(v);
            } else if constexpr (std::is_same_v<T, bool>) {
              out += v ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::string>) {
              out += v;
            } else {
              out += std::to_string(v);
            }
          },
          value);
      out += '\n';
    }
  }
  return out;
}

}  // namespace kelly
