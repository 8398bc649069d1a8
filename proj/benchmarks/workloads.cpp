#include "workloads.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "adapt/frontend/parser.hpp"
#include "adapt/frontend/validate.hpp"

namespace adapt::bench {
namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(ADAPT_SAMPLES_DIR) + "/" + name);
  if (!in) throw std::runtime_error("cannot read sample " + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

asl::AdaptableProgram parse_or_throw(const std::string& source) {
  auto parsed = asl::parse(source, asl::Dialect::adaptable, "Bench");
  if (!parsed.program || asl::has_errors(asl::validate(*parsed.program))) {
    throw std::runtime_error("workload does not validate");
  }
  return std::move(*parsed.program);
}

std::string connection_source() { return slurp("connection.asl"); }

res::SlsSchema connection_schema() { return res::read_schema(nlohmann::json::parse(slurp("schema.json")), ""); }

analysis::SlsRuleSet connection_rules() {
  return analysis::read_rules(nlohmann::json::parse(slurp("rules.json")), connection_schema());
}

std::string call_chain_source(int depth) {
  std::ostringstream s;
  s << "service Chain;\n";
  s << "class L0 {\n  fn f() {\n    consume Energy 1;\n    reserve Memory 2;\n  }\n}\n";
  for (int i = 1; i <= depth; ++i) {
    s << "class L" << i << " {\n  fn f() {\n    repeat 3 {\n      call L" << i - 1 << ".f();\n    }\n"
      << "    choose {\n      call L" << i - 1 << ".f();\n    } or {\n      reserve Memory " << i
      << ";\n      use Gps;\n    }\n  }\n}\n";
  }
  s << "class App {\n  fn main() {\n    call L" << depth << ".f();\n  }\n}\n";
  return s.str();
}

std::string binding_space_source(int methods) {
  std::ostringstream s;
  s << "service Space;\nclass App {\n  fn main() {\n";
  for (int i = 0; i < methods; ++i) s << "    call Svc.m" << i << "();\n";
  s << "  }\n}\nadaptable class Svc {\n";
  for (int i = 0; i < methods; ++i) s << "  adaptable fn m" << i << "();\n";
  s << "}\nalternative Fast adapts Svc {\n";
  for (int i = 0; i < methods; ++i) {
    s << "  fn m" << i << "() {\n" << (i == 0 ? "    use WiFiAdapter;\n" : "") << "    consume Energy " << i + 1
      << ";\n  }\n";
  }
  s << "}\nalternative Lean adapts Svc {\n";
  for (int i = 0; i < methods; ++i) {
    s << "  fn m" << i << "() {\n    consume Energy " << 2 * (methods - i) << ";\n    reserve Memory 4;\n  }\n";
  }
  s << "}\n";
  return s.str();
}

}  // namespace adapt::bench
