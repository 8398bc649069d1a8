#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "adapt/analyzer/analyzer.hpp"
#include "adapt/customizer/customizer.hpp"
#include "adapt/customizer/descriptor.hpp"
#include "adapt/digest.hpp"
#include "adapt/error.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "properties.hpp"

namespace adapt::customizer {
namespace {

using nlohmann::json;
using res::Level;
using testing::parse_valid;
using testing::read_file;

asl::AdaptableProgram corpus(const std::string& name) {
  return parse_valid(read_file(testing::corpus_dir() / name));
}

std::vector<std::string> keys_of(const std::vector<Binding>& bindings) {
  std::vector<std::string> out;
  for (const auto& b : bindings) out.push_back(b.key());
  return out;
}

Candidate candidate(const std::string& key, res::ResourceDemand demand, res::Sls offered) {
  Candidate c;
  c.binding = Binding::from_key(key);
  c.report.per_entry_point["S.run"] = demand;
  c.report.presence_union = demand.presence;
  c.offered = std::move(offered);
  return c;
}

PublishBundle connection_bundle(const DescriptorOptions& options = {}) {
  return build_descriptor(corpus("connection.asl"), nullptr, testing::connection_rules(), {}, options);
}

TEST(Enumerate, ConnectionOrder) {
  auto bindings = enumerate_bindings(corpus("connection.asl"));
  EXPECT_EQ(keys_of(bindings), (std::vector<std::string>{
                                   "Connection.connect=Bluetooth,Connection.send=Bluetooth",
                                   "Connection.connect=Bluetooth,Connection.send=Wifi",
                                   "Connection.connect=Wifi,Connection.send=Bluetooth",
                                   "Connection.connect=Wifi,Connection.send=Wifi",
                               }));
  EXPECT_EQ(count_bindings(corpus("connection.asl")), 4u);
}

TEST(Enumerate, NoAdaptableMethodsGivesBase) {
  auto bindings = enumerate_bindings(corpus("plain_only.asl"));
  EXPECT_EQ(keys_of(bindings), std::vector<std::string>{"base"});
}

TEST(Enumerate, ProductOfAlternativeCounts) {
  auto p = parse_valid(R"(
    adaptable class A { adaptable fn f(); adaptable fn g(); }
    adaptable class B { adaptable fn h(); }
    alternative A1 adapts A { fn f() { } fn g() { } }
    alternative A2 adapts A { fn f() { } fn g() { } }
    alternative B1 adapts B { fn h() { } }
    alternative B2 adapts B { fn h() { } }
    alternative B3 adapts B { fn h() { } }
  )");
  auto bindings = enumerate_bindings(p);
  EXPECT_EQ(bindings.size(), 12u);
  EXPECT_EQ(count_bindings(p), 12u);
  auto keys = keys_of(bindings);
  std::set<std::string> distinct(keys.begin(), keys.end());
  EXPECT_EQ(distinct.size(), 12u);
  for (const auto& b : bindings) EXPECT_NO_THROW(analysis::check_binding(p, b));
}

TEST(Enumerate, CapExceededNamesFlag) {
  auto p = corpus("connection.asl");
  try {
    enumerate_bindings(p, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::cap_exceeded);
    EXPECT_NE(std::string(e.what()).find("--max-bindings"), std::string::npos);
  }
  EXPECT_EQ(enumerate_bindings(p, 4).size(), 4u);
}

TEST(Prune, HeavierWithSameSlsIsRemoved) {
  res::Sls low{{{"Speed", Level::low}, {"Cost", Level::low}}};
  auto light = candidate("S.run=A", res::ResourceDemand::consume("Energy", 2), low);
  auto heavy = candidate("S.run=B", res::ResourceDemand::consume("Energy", 5), low);
  auto schema = testing::connection_schema();
  EXPECT_TRUE(dominates(schema, light, heavy));
  EXPECT_FALSE(dominates(schema, heavy, light));
  auto kept = prune_dominated(schema, {heavy, light});
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].binding.key(), "S.run=A");
}

TEST(Prune, IdenticalCandidatesBothSurvive) {
  res::Sls low{{{"Speed", Level::low}, {"Cost", Level::low}}};
  auto a = candidate("S.run=A", res::ResourceDemand::consume("Energy", 2), low);
  auto b = candidate("S.run=B", res::ResourceDemand::consume("Energy", 2), low);
  EXPECT_EQ(prune_dominated(testing::connection_schema(), {a, b}).size(), 2u);
}

TEST(Prune, SingleCandidateIsKept) {
  auto a = candidate("S.run=A", res::ResourceDemand::consume("Energy", 2), {});
  EXPECT_EQ(prune_dominated(testing::connection_schema(), {a}).size(), 1u);
}

TEST(Prune, TradeOffsSurvive) {
  auto schema = testing::connection_schema();
  auto bt = candidate("S.run=Bluetooth", res::ResourceDemand::use("BluetoothAdapter"),
                      {{{"Speed", Level::low}, {"Cost", Level::low}}});
  auto wifi = candidate("S.run=Wifi", res::ResourceDemand::use("WiFiAdapter"),
                        {{{"Speed", Level::high}, {"Cost", Level::high}}});
  auto kept = prune_dominated(schema, {bt, wifi});
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[0].binding.key(), "S.run=Bluetooth");
  EXPECT_EQ(kept[1].binding.key(), "S.run=Wifi");
}

TEST(Prune, BetterSlsAtEqualDemandDominates) {
  auto schema = testing::connection_schema();
  auto d = res::ResourceDemand::consume("Energy", 3);
  auto fast = candidate("S.run=F", d, {{{"Speed", Level::high}, {"Cost", Level::low}}});
  auto slow = candidate("S.run=S", d, {{{"Speed", Level::medium}, {"Cost", Level::low}}});
  auto missing = candidate("S.run=M", d, {{{"Cost", Level::low}}});
  auto kept = prune_dominated(schema, {slow, missing, fast});
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].binding.key(), "S.run=F");
}

TEST(Prune, SoundOnRandomInstances) {
  testing::Rng rng(99);
  auto run = testing::pruning_oracle_run(rng, 300, {}, 20);
  EXPECT_EQ(run.counterexamples, 0u) << (run.failures.empty() ? "" : run.failures.front());
  EXPECT_GT(run.pruned, 0u);
}

TEST(Tailor, OutputIsPlainAndReanalyzesEqual) {
  for (const auto& path : testing::corpus_files()) {
    auto p = parse_valid(read_file(path));
    for (const auto& b : enumerate_bindings(p)) {
      auto t = tailor(p, b);
      EXPECT_FALSE(contains_adaptation_keywords(t.source)) << path;
      EXPECT_EQ(t.digest, sha256_hex(t.source));
      EXPECT_EQ(t.binding, b);
      auto plain = parse_valid(t.source, asl::Dialect::plain);
      EXPECT_EQ(canonical_json(json(analysis::analyze_plain(plain))),
                canonical_json(json(analysis::analyze_adaptation(p, b))))
          << path << " " << b.key();
    }
  }
}

TEST(Tailor, RandomProgramsReanalyzeEqual) {
  testing::Rng rng(5);
  testing::ProgramShape shape;
  shape.max_statements = 80;
  for (int i = 0; i < 50; ++i) {
    auto p = parse_valid(testing::random_program(rng, shape));
    auto bindings = enumerate_bindings(p);
    for (const auto& b : {bindings.front(), bindings.back()}) {
      auto plain = parse_valid(tailor(p, b).source, asl::Dialect::plain);
      ASSERT_EQ(analysis::analyze_plain(plain), analysis::analyze_adaptation(p, b));
    }
  }
}

TEST(Tailor, DeterministicAndIdempotentOnPlainPrograms) {
  auto p = corpus("messenger.asl");
  auto b = enumerate_bindings(p).front();
  EXPECT_EQ(tailor(p, b).source, tailor(p, b).source);
  EXPECT_EQ(tailor(p, b).digest, tailor(p, b).digest);

  auto plain = corpus("plain_only.asl");
  auto once = tailor(plain, Binding{});
  auto again = tailor(parse_valid(once.source, asl::Dialect::plain), Binding{});
  EXPECT_EQ(once.source, again.source);
}

TEST(Tailor, KeepsMethodsAndArity) {
  auto p = corpus("messenger.asl");
  Binding b;
  b.bind({"Link", "open"}, "Cellular");
  b.bind({"Link", "push"}, "Wlan");
  auto t = tailor(p, b);
  EXPECT_NE(t.source.find("fn open()"), std::string::npos);
  EXPECT_NE(t.source.find("fn push(m)"), std::string::npos);
  EXPECT_NE(t.source.find("use Modem;"), std::string::npos);
  EXPECT_EQ(t.source.find("consume Energy 4;"), std::string::npos);
}

TEST(Tailor, RejectsIncompleteBinding) {
  Binding partial;
  partial.bind({"Connection", "send"}, "Wifi");
  EXPECT_EQ(testing::error_code([&] { tailor(corpus("connection.asl"), partial); }), Errc::binding);
}

TEST(Descriptor, ConnectionAlternatives) {
  auto bundle = connection_bundle();
  const auto& d = bundle.descriptor;
  EXPECT_EQ(d.service_id, "Connection");
  EXPECT_EQ(d.functionality.name, "Connection");
  ASSERT_EQ(d.functionality.entry_points.size(), 2u);
  EXPECT_EQ(d.functionality.entry_points[0].name, "Connection.connect");

  const auto* bt = d.find("Connection.connect=Bluetooth,Connection.send=Bluetooth");
  const auto* wifi = d.find("Connection.connect=Wifi,Connection.send=Wifi");
  ASSERT_NE(bt, nullptr);
  ASSERT_NE(wifi, nullptr);
  EXPECT_EQ(bt->offered_sls, (res::Sls{{{"Speed", Level::low}, {"Cost", Level::low}}}));
  EXPECT_EQ(wifi->offered_sls, (res::Sls{{{"Speed", Level::high}, {"Cost", Level::high}}}));
  EXPECT_EQ(wifi->demand_report.presence_union, (std::set<std::string>{"WiFiAdapter"}));

  // Mixed bindings need both adapters, so no single-adapter binding
  // dominates them.
  EXPECT_EQ(d.alternatives.size(), 4u);
  check_bundle(bundle);
  for (const auto& alt : d.alternatives) {
    EXPECT_EQ(alt.artifact_digest, sha256_hex(bundle.artifacts.at(alt.key)));
  }
}

TEST(Descriptor, PruningRemovesDominated) {
  auto p = parse_valid(R"(
    service Pick;
    adaptable class C { adaptable fn run(); }
    alternative Cheap adapts C { fn run() { consume Energy 1; } }
    alternative Waste adapts C { fn run() { consume Energy 9; } }
  )");
  analysis::SlsRuleSet rules({{"Speed", analysis::DefaultCondition{}, Level::low},
                              {"Cost", analysis::DefaultCondition{}, Level::low}},
                             testing::connection_schema());
  auto pruned = build_descriptor(p, nullptr, rules, {});
  ASSERT_EQ(pruned.descriptor.alternatives.size(), 1u);
  EXPECT_EQ(pruned.descriptor.alternatives[0].key, "C.run=Cheap");
  DescriptorOptions keep;
  keep.prune = false;
  EXPECT_EQ(build_descriptor(p, nullptr, rules, {}, keep).descriptor.alternatives.size(), 2u);
}

TEST(Descriptor, VacuousProgramHasBaseAlternative) {
  auto bundle = build_descriptor(corpus("plain_only.asl"), nullptr, testing::connection_rules(), {});
  ASSERT_EQ(bundle.descriptor.alternatives.size(), 1u);
  EXPECT_EQ(bundle.descriptor.alternatives[0].key, "base");
  EXPECT_EQ(bundle.artifacts.count("base"), 1u);
}

TEST(Descriptor, DeterministicAndRoundTrips) {
  auto a = connection_bundle();
  auto b = connection_bundle();
  EXPECT_EQ(canonical_json(json(a)), canonical_json(json(b)));
  auto j = json(a);
  EXPECT_EQ(read_bundle(j), a);
  EXPECT_EQ(read_descriptor(json(a.descriptor), ""), a.descriptor);
}

TEST(Descriptor, MetadataIsCarried) {
  auto bundle = build_descriptor(corpus("connection.asl"), nullptr, testing::connection_rules(),
                                 {{"provider", "example"}});
  EXPECT_EQ(bundle.descriptor.metadata.at("provider"), "example");
}

TEST(Descriptor, ProfileViolationIsValidationError) {
  res::ResourceProfile profile({{"Energy", res::ResourceKind::additive, ""}});
  EXPECT_EQ(testing::error_code([&] {
              build_descriptor(corpus("messenger.asl"), &profile, testing::connection_rules(), {});
            }),
            Errc::validation);
}

TEST(Descriptor, CheckBundleCatchesTampering) {
  auto bundle = connection_bundle();
  auto tampered = bundle;
  tampered.artifacts.begin()->second += "// extra\n";
  try {
    check_bundle(tampered);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::validation);
    EXPECT_NE(e.path().find("artifact_digest"), std::string::npos);
  }
  auto stray = bundle;
  stray.artifacts["Nope"] = "class X { }";
  EXPECT_EQ(testing::error_code([&] { check_bundle(stray); }), Errc::validation);
  auto missing = bundle;
  missing.artifacts.erase(missing.artifacts.begin());
  EXPECT_EQ(testing::error_code([&] { check_bundle(missing); }), Errc::validation);
  auto dup = bundle;
  dup.descriptor.alternatives.push_back(dup.descriptor.alternatives.front());
  EXPECT_EQ(testing::error_code([&] { check_descriptor(dup.descriptor); }), Errc::validation);
}

TEST(Descriptor, ArtifactFileName) {
  EXPECT_EQ(artifact_file_name("Connection", "base"), "Connection_base.asl");
  auto name = artifact_file_name("Connection", "Connection.connect=Wifi,Connection.send=Wifi");
  EXPECT_EQ(name.find('/'), std::string::npos);
  EXPECT_EQ(name.substr(name.size() - 4), ".asl");
}

TEST(Descriptor, CanonicalJsonSortsKeys) {
  EXPECT_EQ(canonical_json(json::parse(R"({"b": 1, "a": {"d": [2, 1], "c": null}})")),
            R"({"a":{"c":null,"d":[2,1]},"b":1})");
}

}  // namespace
}  // namespace adapt::customizer
