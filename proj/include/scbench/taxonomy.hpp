#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace scbench {

// The ten vulnerability classes V1..V10.
enum class VulnClass : std::uint8_t { V1 = 1, V2, V3, V4, V5, V6, V7, V8, V9, V10 };

inline constexpr std::size_t kClassCount = 10;

inline constexpr std::array<VulnClass, kClassCount> kAllClasses = {
    VulnClass::V1, VulnClass::V2, VulnClass::V3, VulnClass::V4, VulnClass::V5,
    VulnClass::V6, VulnClass::V7, VulnClass::V8, VulnClass::V9, VulnClass::V10};

constexpr std::size_t index_of(VulnClass v) noexcept { return static_cast<std::size_t>(v) - 1; }

std::string class_id(VulnClass v);
std::optional<VulnClass> parse_class_id(std::string_view id);

// Small value-type set over V1..V10, iterable in class order.
class ClassSet {
 public:
  ClassSet() = default;
  ClassSet(std::initializer_list<VulnClass> classes) {
    for (auto v : classes) insert(v);
  }

  void insert(VulnClass v) noexcept { bits_ |= bit(v); }
  void erase(VulnClass v) noexcept { bits_ &= static_cast<std::uint16_t>(~bit(v)); }
  bool contains(VulnClass v) const noexcept { return (bits_ & bit(v)) != 0; }
  bool empty() const noexcept { return bits_ == 0; }
  std::size_t size() const noexcept;
  std::vector<VulnClass> members() const;

  friend bool operator==(ClassSet, ClassSet) = default;

 private:
  static constexpr std::uint16_t bit(VulnClass v) noexcept {
    return static_cast<std::uint16_t>(1u << index_of(v));
  }
  std::uint16_t bits_ = 0;
};

enum class Method { SA, SE, FV, FZ, ML, IR };

std::string_view method_name(Method m) noexcept;
Method parse_method(std::string_view s);

// Lower and upper minor versions of the 0.m.x scale used for compatibility.
struct VersionScale {
  int low = 4;
  int high = 8;
};

struct VersionId {
  int minor = 0;
  std::optional<int> patch;

  // Accepts "0.5.x", "0.4.19", "0.8", "^0.5.0", ">=0.4.22".
  static VersionId parse(std::string_view text);
  std::string str() const;

  friend bool operator==(const VersionId&, const VersionId&) = default;
};

double compat_score(const VersionId& v, const VersionScale& scale = {});

struct ToolDescriptor {
  std::string name;
  std::vector<Method> methods;
  ClassSet capabilities;
  VersionId max_solidity;
  std::string adapter_id;
};

bool capability(const ToolDescriptor& tool, VulnClass v) noexcept;

ToolDescriptor tool_from_json(const nlohmann::json& j, const VersionScale& scale = {});
nlohmann::json to_json(const ToolDescriptor& tool);

// Class names and the marker alias table. Immutable once constructed.
class Taxonomy {
 public:
  static Taxonomy from_json(const nlohmann::json& j);
  static Taxonomy load(const std::string& path);
  // Alias table compiled in from data/taxonomy.json.
  static const Taxonomy& builtin();

  VulnClass class_for_marker(std::string_view marker) const;
  std::optional<VulnClass> try_class_for_marker(std::string_view marker) const;
  const std::string& name(VulnClass v) const { return names_[index_of(v)]; }
  // Number of classes the usability score divides by.
  std::size_t selected() const noexcept { return selected_; }
  const std::vector<std::string>& aliases(VulnClass v) const { return aliases_[index_of(v)]; }

 private:
  std::array<std::string, kClassCount> names_;
  std::array<std::vector<std::string>, kClassCount> aliases_;
  std::unordered_map<std::string, VulnClass> by_alias_;  // upper-cased keys
  std::size_t selected_ = kClassCount;
};

inline VulnClass class_for_marker(std::string_view marker) {
  return Taxonomy::builtin().class_for_marker(marker);
}

}  // namespace scbench
