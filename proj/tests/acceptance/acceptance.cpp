// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "adapt/analyzer/analyzer.hpp"
#include "adapt/client/deploy.hpp"
#include "adapt/client/negotiate.hpp"
#include "adapt/client/registry_api.hpp"
#include "adapt/customizer/customizer.hpp"
#include "adapt/customizer/descriptor.hpp"
#include "adapt/error.hpp"
#include "adapt/registry/registry.hpp"
#include "adapt/registry/store.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "properties.hpp"
#include "stubs.hpp"

namespace {

using namespace adapt;
using nlohmann::json;
using res::Level;
using testing::capabilities;
namespace fs = std::filesystem;

// Pinned limits.
constexpr double kScenarioSeconds = 5.0;
constexpr double kOracleSeconds = 30.0;
constexpr std::size_t kMatchingInstances = 1000;
constexpr std::size_t kAnalyzerPrograms = 500;
constexpr std::size_t kBindingsPerProgram = 4;
constexpr std::uint64_t kInterpreterCap = 1u << 17;
constexpr std::size_t kDemandPairs = 10000;
constexpr std::size_t kMinCorpusPrograms = 20;
constexpr std::size_t kPruningInstances = 1000;
constexpr std::size_t kPruningProbes = 20;
constexpr int kMaxExchanges = 7;
constexpr int kConcurrentSessions = 50;

const std::string kBt = "Connection.connect=Bluetooth,Connection.send=Bluetooth";
const std::string kWifi = "Connection.connect=Wifi,Connection.send=Wifi";

// Collects failed checks of one criterion.
struct Check {
  std::vector<std::string> failures;
  std::string detail;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

registry::Registry::Options fixed(std::optional<fs::path> dir = std::nullopt) {
  registry::Registry::Options o;
  o.store_dir = std::move(dir);
  o.seed = 2024;
  o.clock = [] { return std::string("2024-01-01T00:00:00Z"); };
  return o;
}

customizer::PublishBundle connection_bundle() {
  auto p = testing::parse_valid(testing::read_file(testing::corpus_dir() / "connection.asl"));
  return customizer::build_descriptor(p, nullptr, testing::connection_rules(), {});
}

res::Sls high_high() { return res::Sls{{{"Speed", Level::high}, {"Cost", Level::high}}}; }

void scenario(Check& c) {
  registry::Registry reg(fixed());
  auto bundle = connection_bundle();
  auto id = reg.publish(bundle);
  const auto* bt = bundle.descriptor.find(kBt);
  c.expect(bt && bt->offered_sls == res::Sls{{{"Speed", Level::low}, {"Cost", Level::low}}},
           "Bluetooth alternative offers Speed=Low, Cost=Low");

  auto wifi = capabilities({"WiFiAdapter"});
  res::Sls cost_low{{{"Cost", Level::low}}};
  auto out = reg.discover({"Connection", wifi, cost_low});
  c.expect(out.kind == registry::OutcomeKind::negotiate, "discover answers Negotiate");
  c.expect(out.proposals.size() == 1, "exactly one fitting proposal");
  if (!out.proposals.empty()) {
    c.expect(out.proposals[0].alternative_key == kWifi, "proposal is the WiFi alternative");
    c.expect(out.proposals[0].offered == high_high(), "proposal offers Speed=High, Cost=High");
  }
  for (const auto& p : out.proposals) c.expect(p.alternative_key != kBt, "Bluetooth excluded by supply");
  reg.abort(out.session_id);

  client::LocalRegistryApi api(reg);
  client::NegotiationOptions opts;
  opts.policy = client::AcceptFirstFeasible{};
  auto r = client::run_discovery(api, {"Connection", wifi, cost_low}, testing::connection_schema(), opts);
  c.expect(r.status == client::NegotiationStatus::agreed, "accept-first agrees");
  if (!r.sla || !r.artifact) {
    c.expect(false, "SLA and artifact present");
    return;
  }
  c.expect(r.sla->terms == high_high(), "SLA terms Speed=High, Cost=High");

  testing::TempDir dir;
  auto deployed = client::deploy(*r.artifact, *r.sla, wifi, dir.path() / "apps", "2024-01-01T00:00:00Z");
  c.expect(fs::exists(deployed.artifact_path) && fs::exists(deployed.manifest_path), "deploy writes files");

  auto svc = reg.service(id);
  registry::Artifact bt_artifact{svc->bundle.artifacts.at(kBt), bt ? bt->artifact_digest : ""};
  auto refused = testing::error_code(
      [&] { client::deploy(bt_artifact, *r.sla, wifi, dir.path() / "bt", "2024-01-01T00:00:00Z"); });
  c.expect(refused == Errc::unfit, "Bluetooth tailoring refused on WiFi supply");
  c.expect(!fs::exists(dir.path() / "bt") || fs::is_empty(dir.path() / "bt"), "refused deploy writes nothing");
  c.detail = "proposals=" + std::to_string(out.proposals.size()) + " rounds=" + std::to_string(r.rounds);
}

void matching(Check& c) {
  testing::Rng rng(1001);
  auto run = testing::matching_oracle_run(rng, kMatchingInstances, {});
  c.expect(run.instances == kMatchingInstances, "all instances ran");
  c.expect(run.mismatches == 0, run.failures.empty() ? "mismatches" : run.failures.front());
  c.detail = "instances=" + std::to_string(run.instances) + " mismatches=" + std::to_string(run.mismatches) +
             " match/negotiate/nofit=" + std::to_string(run.matches) + "/" + std::to_string(run.negotiates) + "/" +
             std::to_string(run.no_fits);
}

void analyzer(Check& c) {
  testing::Rng rng(3003);
  auto run = testing::analyzer_oracle_run(rng, kAnalyzerPrograms, {}, kBindingsPerProgram, kInterpreterCap);
  c.expect(run.checked == kAnalyzerPrograms, "all programs compared");
  c.expect(run.mismatches == 0, run.failures.empty() ? "mismatches" : run.failures.front());
  c.detail = "programs=" + std::to_string(run.checked) + " comparisons=" + std::to_string(run.comparisons) +
             " mismatches=" + std::to_string(run.mismatches) + " skipped_over_cap=" + std::to_string(run.skipped);
}

void algebra(Check& c) {
  testing::Rng rng(4004);
  std::vector<std::string> failures;
  auto violations = testing::demand_law_violations(rng, kDemandPairs, failures);
  c.expect(violations == 0, failures.empty() ? "violations" : failures.front());
  c.detail = "pairs=" + std::to_string(kDemandPairs) + " violations=" + std::to_string(violations);
}

void tailoring(Check& c) {
  auto files = testing::corpus_files();
  c.expect(files.size() >= kMinCorpusPrograms, "corpus has at least 20 programs");
  std::size_t bindings = 0;
  for (const auto& path : files) {
    auto p = testing::parse_valid(testing::read_file(path));
    for (const auto& b : customizer::enumerate_bindings(p)) {
      ++bindings;
      auto where = path.filename().string() + " " + b.key();
      auto t = customizer::tailor(p, b);
      c.expect(!customizer::contains_adaptation_keywords(t.source), "keywords left: " + where);
      try {
        auto plain = testing::parse_valid(t.source, asl::Dialect::plain);
        c.expect(customizer::canonical_json(json(analysis::analyze_plain(plain))) ==
                     customizer::canonical_json(json(analysis::analyze_adaptation(p, b))),
                 "report differs: " + where);
      } catch (const std::exception& e) {
        c.expect(false, "does not re-validate: " + where + ": " + e.what());
      }
    }
  }
  c.detail = "programs=" + std::to_string(files.size()) + " bindings=" + std::to_string(bindings);
}

void pruning(Check& c) {
  testing::Rng rng(1001);
  auto run = testing::pruning_oracle_run(rng, kPruningInstances, {}, kPruningProbes);
  c.expect(run.instances == kPruningInstances, "all instances ran");
  c.expect(run.counterexamples == 0, run.failures.empty() ? "counterexamples" : run.failures.front());
  c.detail = "instances=" + std::to_string(run.instances) + " pruned=" + std::to_string(run.pruned) +
             " probes=" + std::to_string(run.probes) + " counterexamples=" + std::to_string(run.counterexamples);
}

void termination(Check& c) {
  res::SlsSchema schema({{"Accuracy", res::Polarity::higher_better},
                         {"Cost", res::Polarity::lower_better},
                         {"Speed", res::Polarity::higher_better}});
  using Offer = testing::AdversarialRegistry::Offer;
  int runs = 0, worst = 0;
  for (auto offer : {Offer::worst, Offer::nothing, Offer::none}) {
    for (const auto& order : testing::priority_orders(schema)) {
      for (const auto& req : testing::all_requests(schema)) {
        testing::AdversarialRegistry adversary(schema, offer);
        client::NegotiationOptions opts;
        opts.policy = client::RelaxByPriority{order, 100};
        auto r = client::run_discovery(adversary, {"Svc", {}, req}, schema, opts);
        ++runs;
        worst = std::max(worst, adversary.exchanges());
        auto where = "run " + std::to_string(runs);
        c.expect(r.status != client::NegotiationStatus::agreed, "agreed with adversary: " + where);
        c.expect(adversary.exchanges() <= kMaxExchanges && r.rounds <= kMaxExchanges, "too many rounds: " + where);
        c.expect(adversary.aborted(), "session not aborted: " + where);
      }
    }
  }
  c.detail = "runs=" + std::to_string(runs) + " max_exchanges=" + std::to_string(worst);
}

void persistence(Check& c) {
  testing::TempDir dir;
  auto wifi = capabilities({"WiFiAdapter"});
  res::Sls cost_low{{{"Cost", Level::low}}};
  res::Sls cost_medium{{{"Cost", Level::medium}}};

  std::string open_id;
  {
    registry::Registry reg(fixed(dir.path()));
    reg.publish(connection_bundle());
    open_id = reg.discover({"Connection", wifi, cost_low}).session_id;
    reg.counter(open_id, cost_medium);
  }
  {
    registry::Registry reg(fixed(dir.path()));
    auto s = reg.session(open_id);
    c.expect(s && s->state == registry::SessionState::open && s->round == 1, "open session survives restart");
    auto next = reg.counter(open_id, cost_medium);
    c.expect(next.round == 2, "negotiation resumes after restart");
    reg.accept(open_id, kWifi);
  }

  std::vector<std::string> ids;
  std::atomic<int> accepted{0}, conflicts{0}, unexpected{0};
  {
    registry::Registry reg(fixed(dir.path()));
    for (int i = 0; i < kConcurrentSessions; ++i) ids.push_back(reg.discover({"Connection", wifi, cost_low}).session_id);
    // Each session is raced by a counter, an accept and an abort thread.
    std::vector<std::thread> threads;
    auto guarded = [&](const std::function<void()>& f) {
      try {
        f();
      } catch (const Error& e) {
        (e.code() == Errc::conflict ? conflicts : unexpected)++;
      }
    };
    for (int w = 0; w < 3; ++w) {
      threads.emplace_back([&, w] {
        for (int k = 0; k < kConcurrentSessions; ++k) {
          const auto& sid = ids[(k * 7 + w * 17) % kConcurrentSessions];
          if (w == 0) guarded([&] { reg.counter(sid, cost_medium); });
          if (w == 1) guarded([&] { reg.accept(sid, kWifi); ++accepted; });
          if (w == 2) guarded([&] { reg.abort(sid); });
        }
      });
    }
    for (auto& t : threads) t.join();
  }
  c.expect(unexpected == 0, "only conflict errors under contention");

  registry::Registry reloaded(fixed(dir.path()));
  std::map<std::string, int> slas_per_session;
  for (const auto& sla : reloaded.slas()) ++slas_per_session[sla.session_id];
  std::set<std::string> agreed;
  for (const auto& s : reloaded.sessions()) {
    c.expect(s.state != registry::SessionState::open || s.session_id != open_id, "resumed session closed");
    if (s.state == registry::SessionState::agreed) {
      agreed.insert(s.session_id);
      c.expect(s.sla_id == "sla-" + s.session_id, "agreed session names its SLA");
    } else {
      c.expect(!s.sla_id, "unagreed session has no SLA");
    }
  }
  for (const auto& [sid, n] : slas_per_session) c.expect(n == 1, "two SLAs for session " + sid);
  std::set<std::string> with_sla;
  for (const auto& [sid, n] : slas_per_session) with_sla.insert(sid);
  c.expect(with_sla == agreed, "SLA set equals agreed sessions");
  c.expect(static_cast<int>(agreed.size()) == accepted + 1, "every accepted call formed one SLA");
  for (const auto& id : ids) {
    auto s = reloaded.session(id);
    c.expect(s && s->state != registry::SessionState::open, "raced session reached a terminal state");
  }

  std::size_t documents = 0;
  for (const auto& e : fs::recursive_directory_iterator(dir.path())) {
    if (!e.is_regular_file()) continue;
    ++documents;
    c.expect(e.path().extension() == ".json", "stray file " + e.path().string());
    try {
      auto doc = json::parse(testing::read_file(e.path()));
      c.expect(doc.is_object(), "not an object " + e.path().string());
    } catch (const std::exception&) {
      c.expect(false, "unparsable " + e.path().string());
    }
  }
  try {
    auto snap = registry::FileStore(dir.path()).load();
    c.expect(snap.sessions.size() == static_cast<std::size_t>(kConcurrentSessions) + 1, "all sessions stored");
  } catch (const std::exception& e) {
    c.expect(false, std::string("store reload: ") + e.what());
  }
  c.detail = "sessions=" + std::to_string(kConcurrentSessions) + " agreed=" + std::to_string(agreed.size() - 1) +
             " conflicts=" + std::to_string(conflicts.load()) + " documents=" + std::to_string(documents);
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;  // 0 for no time limit
  void (*run)(Check&);
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "connection scenario", kScenarioSeconds, scenario},
      {2, "matching oracle", kOracleSeconds, matching},
      {3, "analyzer oracle", kOracleSeconds, analyzer},
      {4, "demand algebra laws", 0, algebra},
      {5, "tailoring soundness", 0, tailoring},
      {6, "pruning soundness", 0, pruning},
      {7, "negotiation termination", 0, termination},
      {8, "persistence and session safety", 0, persistence},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check check;
    auto start = std::chrono::steady_clock::now();
    try {
      cr.run(check);
    } catch (const std::exception& e) {
      check.failures.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.limit_seconds > 0 && secs >= cr.limit_seconds) {
      std::ostringstream msg;
      msg << "took " << secs << " s, limit " << cr.limit_seconds << " s";
      check.failures.push_back(msg.str());
    }
    bool ok = check.failures.empty();
    failed += !ok;
    std::printf("%s %d %s (%.2f s) %s\n", ok ? "PASS" : "FAIL", cr.id, cr.name, secs, check.detail.c_str());
    for (std::size_t i = 0; i < check.failures.size() && i < 5; ++i)
      std::printf("  - %s\n", check.failures[i].c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
