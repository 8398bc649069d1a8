#include "fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "adapt/frontend/validate.hpp"

namespace adapt::testing {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

asl::AdaptableProgram parse_valid(std::string_view source, asl::Dialect dialect) {
  auto parsed = asl::parse(source, dialect, "Test");
  std::vector<asl::Diagnostic> diags = parsed.diagnostics;
  if (parsed.program) {
    auto v = asl::validate(*parsed.program);
    diags.insert(diags.end(), v.begin(), v.end());
  }
  if (!parsed.program || asl::has_errors(diags)) {
    std::string msg = "program does not validate:";
    for (const auto& d : diags) msg += "\n" + asl::format_diagnostic(d, "<test>");
    throw std::runtime_error(msg + "\n" + std::string(source));
  }
  return std::move(*parsed.program);
}

fs::path corpus_dir() { return ADAPT_CORPUS_DIR; }
fs::path samples_dir() { return ADAPT_SAMPLES_DIR; }

std::vector<fs::path> corpus_files() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(corpus_dir())) {
    if (e.path().extension() == ".asl") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

res::SlsSchema connection_schema() {
  return res::SlsSchema({{"Speed", res::Polarity::higher_better}, {"Cost", res::Polarity::lower_better}});
}

analysis::SlsRuleSet connection_rules() {
  using analysis::DefaultCondition;
  using analysis::PresenceCondition;
  return analysis::SlsRuleSet(
      {
          {"Speed", PresenceCondition{"WiFiAdapter"}, res::Level::high},
          {"Speed", DefaultCondition{}, res::Level::low},
          {"Cost", PresenceCondition{"WiFiAdapter"}, res::Level::high},
          {"Cost", DefaultCondition{}, res::Level::low},
      },
      connection_schema());
}

res::ResourceSupply capabilities(std::initializer_list<const char*> names) {
  res::ResourceSupply s;
  for (const char* n : names) s.capabilities.insert(n);
  return s;
}

TempDir::TempDir() {
  std::random_device rd;
  path_ = fs::temp_directory_path() / ("adaptkit-test-" + std::to_string(rd()) + std::to_string(rd()));
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::optional<Errc> error_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace adapt::testing
