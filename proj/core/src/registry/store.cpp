#include "adapt/registry/store.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "adapt/error.hpp"
#include "adapt/json_read.hpp"

namespace adapt::registry {

namespace fs = std::filesystem;
namespace jr = json_read;

namespace {

constexpr const char* kServices = "services";
constexpr const char* kSessions = "sessions";
constexpr const char* kSlas = "slas";

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(Errc::store, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> documents(const fs::path& dir) {
  std::vector<fs::path> out;
  if (!fs::exists(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <typename Reader>
auto load_document(const fs::path& p, Reader read) {
  try {
    auto j = jr::parse(read_file(p), p.string());
    return read(j);
  } catch (const Error& e) {
    if (e.code() == Errc::store) throw;
    throw Error(Errc::store, "corrupt store document " + p.string() + ": " + e.what(), p.string());
  }
}

}  // namespace

nlohmann::json service_record_json(const ServiceRecord& r) {
  return {{"service_id", r.service_id},
          {"version", r.version},
          {"published_at", r.published_at},
          {"bundle", r.bundle}};
}

ServiceRecord read_service_record(const nlohmann::json& j, const std::string& path) {
  ServiceRecord r;
  r.service_id = jr::string(jr::field(j, "service_id", path), jr::child(path, "service_id"));
  r.version = static_cast<int>(jr::integer(jr::field(j, "version", path), jr::child(path, "version")));
  r.published_at =
      jr::string(jr::field(j, "published_at", path), jr::child(path, "published_at"));
  std::string bp = jr::child(path, "bundle");
  const auto& b = jr::field(j, "bundle", path);
  r.bundle.descriptor =
      customizer::read_descriptor(jr::field(b, "descriptor", bp), jr::child(bp, "descriptor"));
  // Artifact digests are checked on delivery, not here, so a damaged
  // artifact surfaces as an integrity error on fetch.
  const auto& arts = jr::object(jr::field(b, "artifacts", bp), jr::child(bp, "artifacts"));
  for (const auto& [k, v] : arts.items()) {
    r.bundle.artifacts.emplace(k, jr::string(v, jr::child(jr::child(bp, "artifacts"), k)));
  }
  return r;
}

FileStore::FileStore(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  for (const char* sub : {kServices, kSessions, kSlas}) {
    fs::create_directories(dir_ / sub, ec);
    if (ec) throw Error(Errc::store, "cannot create " + (dir_ / sub).string() + ": " + ec.message());
  }
}

void FileStore::write_atomic(const fs::path& target, const std::string& bytes) {
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(temp_counter_++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::store, "cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw Error(Errc::store, "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(Errc::store, "cannot rename into " + target.string());
  }
}

void FileStore::save(const ServiceRecord& record) {
  write_atomic(dir_ / kServices / (record.service_id + ".json"),
               customizer::canonical_json(service_record_json(record)));
}

void FileStore::save(const NegotiationSession& session) {
  write_atomic(dir_ / kSessions / (session.session_id + ".json"),
               customizer::canonical_json(nlohmann::json(session)));
}

void FileStore::save(const Sla& sla) {
  write_atomic(dir_ / kSlas / (sla.sla_id + ".json"), customizer::canonical_json(nlohmann::json(sla)));
}

FileStore::Snapshot FileStore::load() const {
  Snapshot snap;
  for (const auto& p : documents(dir_ / kServices)) {
    snap.services.push_back(
        load_document(p, [](const nlohmann::json& j) { return read_service_record(j, ""); }));
  }
  for (const auto& p : documents(dir_ / kSessions)) {
    snap.sessions.push_back(
        load_document(p, [](const nlohmann::json& j) { return read_session(j, ""); }));
  }
  for (const auto& p : documents(dir_ / kSlas)) {
    snap.slas.push_back(load_document(p, [](const nlohmann::json& j) { return read_sla(j, ""); }));
  }
  return snap;
}

}  // namespace adapt::registry
