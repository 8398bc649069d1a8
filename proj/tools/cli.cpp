#include "cli.hpp"

#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "adapt/analyzer/analyzer.hpp"
#include "adapt/analyzer/sls_rules.hpp"
#include "adapt/client/deploy.hpp"
#include "adapt/client/negotiate.hpp"
#include "adapt/client/registry_api.hpp"
#include "adapt/customizer/customizer.hpp"
#include "adapt/customizer/descriptor.hpp"
#include "adapt/digest.hpp"
#include "adapt/error.hpp"
#include "adapt/frontend/parser.hpp"
#include "adapt/frontend/validate.hpp"
#include "adapt/json_read.hpp"
#include "adapt/registry/registry.hpp"
#include "adapt/registry/server.hpp"

namespace adapt::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNoFit = 3;
constexpr int kExitIntegrity = 4;
constexpr int kExitNetwork = 5;

int exit_code(Errc code) {
  switch (code) {
    case Errc::unfit: return kExitNoFit;
    case Errc::integrity: return kExitIntegrity;
    case Errc::network: return kExitNetwork;
    case Errc::store: return kExitIo;
    default: return kExitValidation;
  }
}

struct Globals {
  std::string schema;
  std::string profile;
  std::string rules;
  std::string registry = "http://127.0.0.1:8080";
  bool json = false;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::validation, "cannot read " + path, path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error(Errc::store, "cannot write " + path, path);
}

json read_json_file(const std::string& path) { return json_read::parse(read_text(path), path); }

/// Errors raised while reading a file get the file name prefixed.
template <typename F>
auto in_file(const std::string& file, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.code(), file + ": " + e.what(), e.path());
  }
}

res::SlsSchema load_schema(const Globals& g) {
  if (g.schema.empty()) throw Error(Errc::config, "--schema is required");
  return in_file(g.schema, [&] { return res::read_schema(read_json_file(g.schema), ""); });
}

std::optional<res::ResourceProfile> load_profile(const Globals& g) {
  if (g.profile.empty()) return std::nullopt;
  return in_file(g.profile, [&] { return res::read_profile(read_json_file(g.profile), ""); });
}

analysis::SlsRuleSet load_rules(const Globals& g, const res::SlsSchema& schema) {
  if (g.rules.empty()) throw Error(Errc::config, "--rules is required");
  return in_file(g.rules, [&] { return analysis::read_rules(read_json_file(g.rules), schema); });
}

res::ResourceSupply load_supply(const std::string& path) {
  return in_file(path, [&] { return res::read_supply(read_json_file(path), ""); });
}

void print_diagnostics(const std::vector<asl::Diagnostic>& diags, const std::string& file) {
  for (const auto& d : diags) std::cerr << asl::format_diagnostic(d, file) << '\n';
}

/// Parses and validates; prints diagnostics and throws on errors.
asl::AdaptableProgram load_program(const std::string& file, asl::Dialect dialect,
                                   const res::ResourceProfile* profile) {
  std::string source = read_text(file);
  auto parsed = asl::parse(source, dialect, fs::path(file).stem().string());
  std::vector<asl::Diagnostic> diags = parsed.diagnostics;
  if (parsed.program) {
    auto v = asl::validate(*parsed.program);
    diags.insert(diags.end(), v.begin(), v.end());
    auto r = analysis::check_resources(*parsed.program, profile);
    diags.insert(diags.end(), r.begin(), r.end());
  }
  print_diagnostics(diags, file);
  if (!parsed.program || asl::has_errors(diags)) {
    throw Error(Errc::validation, file + ": program has errors");
  }
  return std::move(*parsed.program);
}

std::string sls_text(const res::Sls& sls) {
  std::string out = "{";
  for (const auto& [dim, level] : sls.levels) {
    if (out.size() > 1) out += ", ";
    out += dim + "=" + res::to_string(level);
  }
  return out + "}";
}

void emit(const Globals& g, const json& machine, const std::string& human) {
  if (g.json) {
    std::cout << machine.dump(2) << '\n';
  } else {
    std::cout << human;
  }
}

client::NegotiationPolicy make_policy(const std::string& name, const std::string& priority,
                                      int max_rounds) {
  if (name == "accept-first") return client::AcceptFirstFeasible{};
  if (name == "abort-on-mismatch") return client::AbortOnMismatch{};
  if (name == "relax") {
    client::RelaxByPriority relax;
    relax.max_rounds = max_rounds;
    std::stringstream ss(priority);
    for (std::string d; std::getline(ss, d, ',');) {
      if (!d.empty()) relax.priority.push_back(d);
    }
    return relax;
  }
  throw Error(Errc::config, "unknown policy '" + name + "'");
}

std::pair<std::string, int> split_listen(const std::string& listen) {
  auto colon = listen.rfind(':');
  if (colon == std::string::npos) throw Error(Errc::config, "--listen expects HOST:PORT");
  try {
    return {listen.substr(0, colon), std::stoi(listen.substr(colon + 1))};
  } catch (const std::exception&) {
    throw Error(Errc::config, "--listen expects HOST:PORT");
  }
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"adaptkit: adaptable services toolchain"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--schema", g.schema, "SLS schema JSON");
  app.add_option("--profile", g.profile, "resource profile JSON");
  app.add_option("--rules", g.rules, "offered-SLS rules JSON");
  app.add_option("--registry", g.registry, "registry base URL")->envname("ADAPTKIT_REGISTRY");
  app.add_flag("--json", g.json, "machine-readable output");

  // check
  auto* check = app.add_subcommand("check", "parse and validate a program");
  std::string check_file;
  bool check_plain = false;
  check->add_option("file", check_file)->required();
  check->add_flag("--plain", check_plain, "reject adaptation constructs");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "resource demand of one binding");
  std::string analyze_file, analyze_binding, analyze_supply;
  analyze->add_option("file", analyze_file)->required();
  analyze->add_option("--binding", analyze_binding, "binding key (default: plain program)");
  analyze->add_option("--supply", analyze_supply, "also check fit against this supply");

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "list bindings of a program");
  std::string enum_file;
  std::size_t enum_cap = customizer::kDefaultBindingCap;
  enumerate->add_option("file", enum_file)->required();
  enumerate->add_option("--max-bindings", enum_cap, "refuse programs with more bindings");

  // tailor
  auto* tailor = app.add_subcommand("tailor", "emit the plain program for one binding");
  std::string tailor_file, tailor_binding, tailor_out;
  tailor->add_option("file", tailor_file)->required();
  tailor->add_option("--binding", tailor_binding, "binding key")->required();
  tailor->add_option("-o,--output", tailor_out, "output file (default: stdout)");

  // descriptor
  auto* descriptor = app.add_subcommand("descriptor", "build a publishable bundle");
  std::string desc_file, desc_out, desc_artifacts;
  std::vector<std::string> desc_meta;
  bool desc_no_prune = false;
  std::size_t desc_cap = customizer::kDefaultBindingCap;
  descriptor->add_option("file", desc_file)->required();
  descriptor->add_option("-o,--output", desc_out, "bundle JSON (default: stdout)");
  descriptor->add_option("--artifacts", desc_artifacts, "also write tailored sources here");
  descriptor->add_option("--meta", desc_meta, "metadata KEY=VALUE");
  descriptor->add_flag("--no-prune", desc_no_prune, "keep dominated alternatives");
  descriptor->add_option("--max-bindings", desc_cap, "refuse programs with more bindings");

  // serve
  auto* serve = app.add_subcommand("serve", "run the registry");
  std::string listen = "127.0.0.1:8080", store;
  std::uint64_t seed = 0;
  serve->add_option("--listen", listen, "HOST:PORT, port 0 picks one")->envname("ADAPTKIT_LISTEN");
  serve->add_option("--store", store, "persistence directory")->envname("ADAPTKIT_STORE");
  serve->add_option("--seed", seed, "session id seed (0: random)");

  // publish
  auto* publish = app.add_subcommand("publish", "publish a bundle");
  std::string publish_file;
  publish->add_option("bundle", publish_file)->required();

  // discover
  auto* discover = app.add_subcommand("discover", "discover, negotiate and fetch");
  std::string disc_functionality, disc_supply, disc_request, disc_request_json, disc_policy = "accept-first",
                                  disc_priority, disc_transcript, disc_deploy, disc_sla_out;
  int disc_rounds = 7, disc_retries = 2;
  discover->add_option("functionality", disc_functionality)->required();
  discover->add_option("--supply", disc_supply, "resource supply JSON")->required();
  discover->add_option("--request", disc_request, "requested SLS JSON file");
  discover->add_option("--request-json", disc_request_json, "requested SLS inline");
  discover->add_option("--policy", disc_policy)
      ->check(CLI::IsMember({"accept-first", "relax", "abort-on-mismatch"}));
  discover->add_option("--priority", disc_priority, "relax: dimensions, most important first");
  discover->add_option("--max-rounds", disc_rounds, "relax: round limit");
  discover->add_option("--retries", disc_retries, "extra attempts on network errors");
  discover->add_option("--transcript", disc_transcript, "JSON-lines transcript file");
  discover->add_option("--deploy", disc_deploy, "deploy the artifact into this directory");
  discover->add_option("--sla-out", disc_sla_out, "write the SLA JSON here");

  // deploy
  auto* deploy = app.add_subcommand("deploy", "check and install a fetched artifact");
  std::string dep_file, dep_sla, dep_supply, dep_out, dep_digest;
  deploy->add_option("artifact", dep_file)->required();
  deploy->add_option("--sla", dep_sla, "SLA JSON")->required();
  deploy->add_option("--supply", dep_supply, "local resource supply JSON")->required();
  deploy->add_option("--out", dep_out, "install directory")->required();
  deploy->add_option("--digest", dep_digest, "expected SHA-256 (default: trust the file)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*check) {
      auto profile = load_profile(g);
      auto program = load_program(check_file, check_plain ? asl::Dialect::plain : asl::Dialect::adaptable,
                                  profile ? &*profile : nullptr);
      emit(g, {{"ok", true}, {"service", program.name}}, check_file + ": ok\n");
      return kExitOk;
    }

    if (*analyze) {
      auto profile = load_profile(g);
      auto program = load_program(analyze_file, asl::Dialect::adaptable, profile ? &*profile : nullptr);
      analysis::DemandReport report;
      if (analyze_binding.empty()) {
        if (!program.is_plain()) {
          throw Error(Errc::binding, "program is adaptable; pass --binding");
        }
        report = analysis::analyze_plain(program);
      } else {
        report = analysis::analyze_adaptation(program, analysis::Binding::from_key(analyze_binding));
      }
      json out = {{"report", report}};
      std::string human = json(report).dump(2) + "\n";
      int rc = kExitOk;
      if (!analyze_supply.empty()) {
        auto fit = analysis::report_fits(report, load_supply(analyze_supply));
        out["fits"] = fit.ok;
        if (!fit) {
          out["explain"] = fit.explain();
          human += "does not fit: " + fit.explain() + "\n";
          rc = kExitNoFit;
        } else {
          human += "fits\n";
        }
      }
      emit(g, out, human);
      return rc;
    }

    if (*enumerate) {
      auto program = load_program(enum_file, asl::Dialect::adaptable, nullptr);
      auto bindings = customizer::enumerate_bindings(program, enum_cap);
      json out = json::array();
      std::string human;
      for (const auto& b : bindings) {
        out.push_back(b.key());
        human += b.key() + "\n";
      }
      emit(g, out, human);
      return kExitOk;
    }

    if (*tailor) {
      auto program = load_program(tailor_file, asl::Dialect::adaptable, nullptr);
      auto t = customizer::tailor(program, analysis::Binding::from_key(tailor_binding));
      if (!tailor_out.empty()) {
        write_text(tailor_out, t.source);
        emit(g, {{"file", tailor_out}, {"digest", t.digest}}, tailor_out + "\n");
      } else if (g.json) {
        emit(g, {{"source", t.source}, {"digest", t.digest}}, "");
      } else {
        std::cout << t.source;
      }
      return kExitOk;
    }

    if (*descriptor) {
      auto schema = load_schema(g);
      auto rules = load_rules(g, schema);
      auto profile = load_profile(g);
      auto program = load_program(desc_file, asl::Dialect::adaptable, profile ? &*profile : nullptr);
      std::map<std::string, std::string> meta;
      for (const auto& kv : desc_meta) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw Error(Errc::config, "--meta expects KEY=VALUE");
        meta[kv.substr(0, eq)] = kv.substr(eq + 1);
      }
      customizer::DescriptorOptions opts{!desc_no_prune, desc_cap};
      auto bundle = customizer::build_descriptor(program, profile ? &*profile : nullptr, rules, meta, opts);
      std::string text = json(bundle).dump(2) + "\n";
      if (!desc_artifacts.empty()) {
        fs::create_directories(desc_artifacts);
        for (const auto& [key, bytes] : bundle.artifacts) {
          write_text((fs::path(desc_artifacts) /
                      customizer::artifact_file_name(bundle.descriptor.service_id, key))
                         .string(),
                     bytes);
        }
      }
      if (desc_out.empty()) {
        std::cout << text;
      } else {
        write_text(desc_out, text);
        std::string human;
        for (const auto& alt : bundle.descriptor.alternatives) {
          human += alt.key + "  " + sls_text(alt.offered_sls) + "\n";
        }
        json summary = json::array();
        for (const auto& alt : bundle.descriptor.alternatives) {
          summary.push_back({{"alternative_key", alt.key}, {"offered_sls", alt.offered_sls}});
        }
        emit(g, {{"file", desc_out}, {"alternatives", summary}}, human);
      }
      return kExitOk;
    }

    if (*serve) {
      auto [host, port] = split_listen(listen);
      registry::Registry::Options opts;
      if (!store.empty()) opts.store_dir = store;
      opts.seed = seed;
      registry::Registry reg(std::move(opts));
      registry::RegistryServer server(reg);

      sigset_t signals;
      sigemptyset(&signals);
      sigaddset(&signals, SIGINT);
      sigaddset(&signals, SIGTERM);
      pthread_sigmask(SIG_BLOCK, &signals, nullptr);

      int bound = server.bind(host, port);
      if (bound < 0) throw Error(Errc::network, "cannot bind " + listen);
      server.start();
      std::cout << "listening on http://" << host << ":" << bound << std::endl;
      int sig = 0;
      sigwait(&signals, &sig);
      server.stop();
      return kExitOk;
    }

    if (*publish) {
      auto bundle = in_file(publish_file, [&] { return customizer::read_bundle(read_json_file(publish_file)); });
      client::HttpRegistryClient api(g.registry);
      std::string id = api.publish(bundle);
      emit(g, {{"service_id", id}}, id + "\n");
      return kExitOk;
    }

    if (*discover) {
      auto schema = load_schema(g);
      registry::DiscoveryQuery query;
      query.functionality = disc_functionality;
      query.supply = load_supply(disc_supply);
      if (!disc_request.empty()) {
        query.requested = in_file(disc_request, [&] { return res::read_sls(read_json_file(disc_request), ""); });
      } else if (!disc_request_json.empty()) {
        query.requested = res::read_sls(json_read::parse(disc_request_json, "--request-json"), "");
      }
      client::NegotiationOptions opts;
      opts.policy = make_policy(disc_policy, disc_priority, disc_rounds);
      opts.retries = disc_retries;
      opts.fetch = true;

      client::HttpRegistryClient api(g.registry);
      auto result = client::run_discovery(api, query, schema, opts);
      if (!disc_transcript.empty()) {
        std::ofstream out(disc_transcript, std::ios::trunc);
        client::write_transcript(out, result.transcript);
        if (!out) throw Error(Errc::store, "cannot write " + disc_transcript);
      }

      json out = {{"status", client::to_string(result.status)}, {"rounds", result.rounds}};
      std::string human = client::to_string(result.status);
      if (!result.message.empty()) {
        out["message"] = result.message;
        human += ": " + result.message;
      }
      human += "\n";
      if (result.sla) {
        out["sla"] = *result.sla;
        human += result.sla->sla_id + "  " + result.sla->alternative_key + "  " +
                 sls_text(result.sla->terms) + "\n";
        if (!disc_sla_out.empty()) write_text(disc_sla_out, json(*result.sla).dump(2) + "\n");
        if (!disc_deploy.empty()) {
          auto d = client::deploy(*result.artifact, *result.sla, query.supply, disc_deploy,
                                  registry::utc_timestamp());
          out["deployed"] = d.artifact_path.string();
          human += "deployed " + d.artifact_path.string() + "\n";
        }
      }
      emit(g, out, human);
      return result.status == client::NegotiationStatus::agreed ? kExitOk : kExitNoFit;
    }

    if (*deploy) {
      registry::Artifact artifact;
      artifact.bytes = read_text(dep_file);
      artifact.digest = dep_digest.empty() ? sha256_hex(artifact.bytes) : dep_digest;
      auto sla = in_file(dep_sla, [&] { return registry::read_sla(read_json_file(dep_sla), ""); });
      auto d = client::deploy(artifact, sla, load_supply(dep_supply), dep_out, registry::utc_timestamp());
      emit(g, {{"artifact", d.artifact_path.string()}, {"manifest", d.manifest_path.string()}},
           "deployed " + d.artifact_path.string() + "\n");
      return kExitOk;
    }
  } catch (const Error& e) {
    if (g.json) {
      std::cout << registry::error_body(e).dump(2) << '\n';
    }
    std::cerr << "error[" << to_string(e.code()) << "]: " << e.what();
    if (!e.path().empty()) std::cerr << " (at " << e.path() << ")";
    std::cerr << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace adapt::cli
