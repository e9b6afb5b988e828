#include "scbench/taxonomy.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <fstream>

#include "scbench/error.hpp"
#include "taxonomy_data.hpp"

namespace scbench {

namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<int> to_int(std::string_view s) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

std::string class_id(VulnClass v) { return "V" + std::to_string(index_of(v) + 1); }

std::optional<VulnClass> parse_class_id(std::string_view id) {
  id = trim(id);
  if (id.size() < 2 || (id[0] != 'V' && id[0] != 'v')) return std::nullopt;
  auto n = to_int(id.substr(1));
  if (!n || *n < 1 || *n > static_cast<int>(kClassCount)) return std::nullopt;
  return static_cast<VulnClass>(*n);
}

std::size_t ClassSet::size() const noexcept { return static_cast<std::size_t>(std::popcount(bits_)); }

std::vector<VulnClass> ClassSet::members() const {
  std::vector<VulnClass> out;
  for (auto v : kAllClasses)
    if (contains(v)) out.push_back(v);
  return out;
}

std::string_view method_name(Method m) noexcept {
  switch (m) {
    case Method::SA: return "SA";
    case Method::SE: return "SE";
    case Method::FV: return "FV";
    case Method::FZ: return "FZ";
    case Method::ML: return "ML";
    case Method::IR: return "IR";
  }
  return "?";
}

Method parse_method(std::string_view s) {
  const auto u = upper(trim(s));
  for (auto m : {Method::SA, Method::SE, Method::FV, Method::FZ, Method::ML, Method::IR})
    if (u == method_name(m)) return m;
  throw Error(ErrorKind::InvalidRegistry, "unknown analysis method '" + std::string(s) + "'");
}

VersionId VersionId::parse(std::string_view text) {
  auto s = trim(text);
  while (!s.empty() && !std::isdigit(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  auto fail = [&] {
    return Error(ErrorKind::UnsupportedVersion, "cannot parse Solidity version '" + std::string(text) + "'");
  };
  auto dot = s.find('.');
  if (dot == std::string_view::npos || s.substr(0, dot) != "0") throw fail();
  s.remove_prefix(dot + 1);
  dot = s.find('.');
  auto minor = to_int(s.substr(0, dot));
  if (!minor) throw fail();
  VersionId v{*minor, std::nullopt};
  if (dot != std::string_view::npos) {
    auto rest = s.substr(dot + 1);
    if (rest != "x" && rest != "X" && rest != "*") {
      auto patch = to_int(rest);
      if (!patch) throw fail();
      v.patch = *patch;
    }
  }
  return v;
}

std::string VersionId::str() const {
  return "0." + std::to_string(minor) + "." + (patch ? std::to_string(*patch) : std::string("x"));
}

double compat_score(const VersionId& v, const VersionScale& scale) {
  if (v.minor < scale.low)
    throw Error(ErrorKind::UnsupportedVersion,
                v.str() + " is below the supported scale floor 0." + std::to_string(scale.low) + ".x");
  if (scale.high <= scale.low)
    throw Error(ErrorKind::InvalidInput, "version scale high must exceed low");
  const double s = static_cast<double>(v.minor - scale.low) / static_cast<double>(scale.high - scale.low);
  return std::clamp(s, 0.0, 1.0);
}

bool capability(const ToolDescriptor& tool, VulnClass v) noexcept { return tool.capabilities.contains(v); }

ToolDescriptor tool_from_json(const nlohmann::json& j, const VersionScale& scale) {
  ToolDescriptor t;
  try {
    t.name = j.at("name").get<std::string>();
    for (const auto& m : j.value("methods", nlohmann::json::array())) t.methods.push_back(parse_method(m.get<std::string>()));
    for (const auto& c : j.at("capabilities")) {
      auto v = parse_class_id(c.get<std::string>());
      if (!v) throw Error(ErrorKind::InvalidRegistry, t.name + ": unknown class id " + c.dump());
      t.capabilities.insert(*v);
    }
    t.max_solidity = VersionId::parse(j.at("max_solidity").get<std::string>());
    t.adapter_id = j.value("adapter", std::string{});
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidRegistry, std::string("tool record: ") + e.what());
  }
  if (t.name.empty()) throw Error(ErrorKind::InvalidRegistry, "tool record without a name");
  if (t.capabilities.empty()) throw Error(ErrorKind::InvalidRegistry, t.name + ": empty capability set");
  if (t.max_solidity.minor < scale.low)
    throw Error(ErrorKind::InvalidRegistry, t.name + ": max_solidity " + t.max_solidity.str() + " below scale");
  return t;
}

nlohmann::json to_json(const ToolDescriptor& tool) {
  nlohmann::json j;
  j["name"] = tool.name;
  auto& methods = j["methods"] = nlohmann::json::array();
  for (auto m : tool.methods) methods.push_back(std::string(method_name(m)));
  auto& caps = j["capabilities"] = nlohmann::json::array();
  for (auto v : tool.capabilities.members()) caps.push_back(class_id(v));
  j["max_solidity"] = tool.max_solidity.str();
  j["adapter"] = tool.adapter_id;
  return j;
}

Taxonomy Taxonomy::from_json(const nlohmann::json& j) {
  Taxonomy t;
  std::array<bool, kClassCount> seen{};
  try {
    t.selected_ = j.value("selected", kClassCount);
    for (const auto& c : j.at("classes")) {
      auto v = parse_class_id(c.at("id").get<std::string>());
      if (!v) throw Error(ErrorKind::InvalidInput, "taxonomy: bad class id " + c.at("id").dump());
      const auto i = index_of(*v);
      if (seen[i]) throw Error(ErrorKind::InvalidInput, "taxonomy: duplicate class " + class_id(*v));
      seen[i] = true;
      t.names_[i] = c.at("name").get<std::string>();
      for (const auto& a : c.at("aliases")) {
        auto alias = a.get<std::string>();
        auto key = upper(alias);
        auto [it, inserted] = t.by_alias_.emplace(key, *v);
        if (!inserted && it->second != *v)
          throw Error(ErrorKind::InvalidInput, "taxonomy: alias '" + alias + "' maps to two classes");
        t.aliases_[i].push_back(std::move(alias));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("taxonomy: ") + e.what());
  }
  for (auto v : kAllClasses)
    if (!seen[index_of(v)]) throw Error(ErrorKind::InvalidInput, "taxonomy: missing class " + class_id(v));
  return t;
}

Taxonomy Taxonomy::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open taxonomy file " + path);
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, path + ": " + e.what());
  }
}

const Taxonomy& Taxonomy::builtin() {
  static const Taxonomy instance = from_json(nlohmann::json::parse(detail::kTaxonomyJson));
  return instance;
}

std::optional<VulnClass> Taxonomy::try_class_for_marker(std::string_view marker) const {
  auto it = by_alias_.find(upper(trim(marker)));
  if (it == by_alias_.end()) return std::nullopt;
  return it->second;
}

VulnClass Taxonomy::class_for_marker(std::string_view marker) const {
  if (trim(marker).empty()) throw Error(ErrorKind::InvalidInput, "empty marker");
  if (auto v = try_class_for_marker(marker)) return *v;
  throw Error(ErrorKind::UnknownMarker, "no class has alias '" + std::string(marker) + "'");
}

}  // namespace scbench
