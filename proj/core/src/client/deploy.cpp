#include "adapt/client/deploy.hpp"

#include <fstream>

#include "adapt/analyzer/analyzer.hpp"
#include "adapt/digest.hpp"
#include "adapt/customizer/descriptor.hpp"
#include "adapt/error.hpp"
#include "adapt/frontend/parser.hpp"
#include "adapt/frontend/validate.hpp"

namespace adapt::client {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& bytes) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << bytes;
    if (!out) throw Error(Errc::store, "cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(Errc::store, "cannot write " + path.string() + ": " + ec.message());
}

}  // namespace

DeployResult deploy(const registry::Artifact& artifact, const registry::Sla& sla,
                    const res::ResourceSupply& local_supply, const fs::path& out_dir, const std::string& deployed_at) {
  std::string actual = sha256_hex(artifact.bytes);
  if (actual != artifact.digest) {
    throw Error(Errc::integrity, "artifact digest mismatch: expected " + artifact.digest +
                                     ", got " + actual);
  }

  auto parsed = asl::parse(artifact.bytes, asl::Dialect::plain);
  std::vector<asl::Diagnostic> diags = parsed.diagnostics;
  if (parsed.program) {
    auto more = asl::validate(*parsed.program);
    diags.insert(diags.end(), more.begin(), more.end());
  }
  if (!parsed.program || asl::has_errors(diags)) {
    std::string msg = "artifact is not a valid plain program";
    for (const auto& d : diags) msg += "\n" + asl::format_diagnostic(d, "<artifact>");
    throw Error(Errc::validation, msg);
  }

  auto report = analysis::analyze_plain(*parsed.program);
  auto fit = analysis::report_fits(report, local_supply);
  if (!fit) throw Error(Errc::unfit, "artifact does not fit the local supply: " + fit.explain());

  std::string service = parsed.program->name.empty() ? sla.service_id : parsed.program->name;
  std::string file = customizer::artifact_file_name(service, sla.alternative_key);

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(Errc::store, "cannot create " + out_dir.string() + ": " + ec.message());

  DeployResult out;
  out.artifact_path = out_dir / file;
  out.manifest_path = out_dir / (out.artifact_path.stem().string() + ".manifest.json");
  out.manifest = {{"sla_id", sla.sla_id},
                  {"session_id", sla.session_id},
                  {"service_id", sla.service_id},
                  {"service", service},
                  {"alternative_key", sla.alternative_key},
                  {"terms", sla.terms},
                  {"digest", artifact.digest},
                  {"artifact", file},
                  {"deployed_at", deployed_at}};
  write_file(out.artifact_path, artifact.bytes);
  write_file(out.manifest_path, customizer::canonical_json(out.manifest) + "\n");
  return out;
}

}  // namespace adapt::client
