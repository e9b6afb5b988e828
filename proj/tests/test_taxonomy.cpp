#include <doctest.h>

#include "scbench/error.hpp"
#include "scbench/runner.hpp"
#include "scbench/taxonomy.hpp"
#include "support.hpp"

using namespace scbench;

TEST_CASE("markers resolve case-insensitively through the alias table") {
  CHECK(class_for_marker("REENTRANCY") == VulnClass::V1);
  CHECK(class_for_marker("reentrancy") == VulnClass::V1);
  CHECK(class_for_marker("front_running") == VulnClass::V5);
  CHECK(class_for_marker("tx.origin") == VulnClass::V8);
  CHECK(class_for_marker("  Unchecked_LL_Calls ") == VulnClass::V3);
}

TEST_CASE("unmapped markers are rejected") {
  CHECK_THROWS_AS(class_for_marker("FRONTRUN"), Error);
  try {
    class_for_marker("FRONTRUN");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownMarker);
  }
  CHECK_FALSE(Taxonomy::builtin().try_class_for_marker("nope").has_value());
  CHECK_THROWS_AS(class_for_marker(""), Error);
}

TEST_CASE("every class id round-trips and every alias maps home") {
  const auto& t = Taxonomy::builtin();
  for (auto v : kAllClasses) {
    CHECK(parse_class_id(class_id(v)) == v);
    CHECK_FALSE(t.aliases(v).empty());
    for (const auto& a : t.aliases(v)) CHECK(t.class_for_marker(a) == v);
  }
  CHECK_FALSE(parse_class_id("V0").has_value());
  CHECK_FALSE(parse_class_id("V11").has_value());
  CHECK(t.name(VulnClass::V5) == "TOD");
  CHECK(t.selected() == 10);
}

TEST_CASE("ClassSet behaves as a set over V1..V10") {
  ClassSet s{VulnClass::V9, VulnClass::V1, VulnClass::V1};
  CHECK(s.size() == 2);
  CHECK(s.members() == std::vector{VulnClass::V1, VulnClass::V9});
  s.erase(VulnClass::V1);
  CHECK_FALSE(s.contains(VulnClass::V1));
  s.insert(VulnClass::V10);
  CHECK(s.contains(VulnClass::V10));
  CHECK(ClassSet{}.empty());
}

TEST_CASE("capability follows the registry") {
  const auto reg = Registry::load(testing::data() / "registry.json");
  CHECK(reg.tools().size() == 13);
  CHECK(capability(reg.tool("VeriSmart"), VulnClass::V2));
  CHECK_FALSE(capability(reg.tool("VeriSmart"), VulnClass::V1));
  CHECK(capability(reg.tool("Maian"), VulnClass::V9));
  CHECK(reg.tool("Mythril").capabilities.size() == 8);
  CHECK_THROWS_AS(reg.tool("NoSuchTool"), Error);
}

TEST_CASE("Solidity versions parse from registry and pragma spellings") {
  CHECK(VersionId::parse("0.5.x") == VersionId{5, std::nullopt});
  CHECK(VersionId::parse("^0.5.0") == VersionId{5, 0});
  CHECK(VersionId::parse(">=0.4.22") == VersionId{4, 22});
  CHECK(VersionId::parse("0.8") == VersionId{8, std::nullopt});
  CHECK(VersionId::parse("0.4.19").str() == "0.4.19");
  CHECK(VersionId::parse("0.8.x").str() == "0.8.x");
  CHECK_THROWS_AS(VersionId::parse("1.0.0"), Error);
  CHECK_THROWS_AS(VersionId::parse("latest"), Error);
}

TEST_CASE("compatibility score sits on the 0.25 grid of the version scale") {
  CHECK(compat_score(VersionId::parse("0.8.x")) == 1.0);
  CHECK(compat_score(VersionId::parse("0.4.19")) == 0.0);
  CHECK(compat_score(VersionId::parse("0.5.x")) == 0.25);
  CHECK(compat_score(VersionId::parse("0.6.x")) == 0.5);
  CHECK(compat_score(VersionId::parse("0.7.x")) == 0.75);
  CHECK(compat_score(VersionId::parse("0.9.x")) == 1.0);  // clamped
  try {
    compat_score(VersionId::parse("0.3.26"));
    FAIL("expected UnsupportedVersion");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedVersion);
  }
}

TEST_CASE("tool descriptors validate their shape") {
  auto j = nlohmann::json::parse(R"({"name":"T","methods":["SA"],"capabilities":["V1"],"max_solidity":"0.8.x"})");
  auto t = tool_from_json(j);
  CHECK(t.name == "T");
  CHECK(t.methods == std::vector{Method::SA});
  CHECK(tool_from_json(to_json(t)).capabilities == t.capabilities);

  j["capabilities"] = nlohmann::json::array();
  CHECK_THROWS_AS(tool_from_json(j), Error);
  j["capabilities"] = {"V42"};
  CHECK_THROWS_AS(tool_from_json(j), Error);
  j["capabilities"] = {"V1"};
  j["methods"] = {"XX"};
  CHECK_THROWS_AS(tool_from_json(j), Error);
}
