#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace kelly {

/// Renders a double with 12 significant digits ("%.12g"); infinities and NaN
/// as "inf", "-inf" and "nan".
std::string format_number(double x);

/// Plain-text report: `[section]` headers followed by `key = value` lines.
/// Keys are unique within a section.
class Report {
 public:
  using Value = std::variant<double, std::int64_t, bool, std::string>;

  class Section {
   public:
    explicit Section(std::string name) : name_(std::move(name)) {}

    Section& set(const std::string& key, Value value);
    Section& set(const std::string& key, const char* text) {
      return set(key, Value(std::string(text)));
    }
    const std::string& name() const noexcept { return name_; }
    const std::vector<std::pair<std::string, Value>>& entries() const noexcept { return entries_; }
    const Value* find(const std::string& key) const;

   private:
    std::string name_;
    std::vector<std::pair<std::string, Value>> entries_;
  };

  /// Returns the named section, creating it at the end if absent.
  Section& section(const std::string& name);
  const Section* find_section(const std::string& name) const;
  const std::vector<Section>& sections() const noexcept { return sections_; }

  void warn(std::string message) { warnings_.push_back(std::move(message)); }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  std::string render() const;

 private:
  std::vector<Section> sections_;
  std::vector<std::string> warnings_;
};

}  // namespace kelly
