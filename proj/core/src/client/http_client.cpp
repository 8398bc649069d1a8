#include <nlohmann/json.hpp>

#include "adapt/client/registry_api.hpp"
#include "adapt/error.hpp"
#include "adapt/json_read.hpp"
#include "httplib.h"

namespace adapt::client {

using nlohmann::json;

struct HttpRegistryClient::Impl {
  Impl(const std::string& url, int timeout) : cli(url) {
    cli.set_connection_timeout(timeout, 0);
    cli.set_read_timeout(timeout, 0);
    cli.set_write_timeout(timeout, 0);
  }
  httplib::Client cli;
};

namespace {

[[noreturn]] void raise_http_error(const httplib::Result& r, const std::string& what) {
  if (!r) {
    throw Error(Errc::network, what + ": " + httplib::to_string(r.error()));
  }
  try {
    json body = json::parse(r->body);
    const auto& err = body.at("error");
    throw Error(errc_from_string(err.at("code").get<std::string>()),
                err.at("message").get<std::string>(), err.value("path", std::string()));
  } catch (const json::exception&) {
    throw Error(Errc::network, what + ": HTTP " + std::to_string(r->status));
  }
}

json expect_json(const httplib::Result& r, int status, const std::string& what) {
  if (!r || r->status != status) raise_http_error(r, what);
  try {
    return json::parse(r->body);
  } catch (const json::exception& e) {
    throw Error(Errc::network, what + ": malformed response: " + e.what());
  }
}

std::string session_path(const std::string& id, const char* verb) {
  return "/sessions/" + id + "/" + verb;
}

}  // namespace

HttpRegistryClient::HttpRegistryClient(const std::string& base_url, int timeout_seconds)
    : impl_(std::make_unique<Impl>(base_url, timeout_seconds)) {}

HttpRegistryClient::~HttpRegistryClient() = default;

std::string HttpRegistryClient::publish(const customizer::PublishBundle& bundle) {
  auto r = impl_->cli.Post("/services", json(bundle).dump(), "application/json");
  return expect_json(r, 201, "publish").at("service_id").get<std::string>();
}

std::vector<registry::ServiceSummary> HttpRegistryClient::list() {
  json j = expect_json(impl_->cli.Get("/services"), 200, "list");
  std::vector<registry::ServiceSummary> out;
  for (const auto& s : j) {
    out.push_back({s.at("service_id"), s.at("name"), s.at("version"), s.at("alternatives"),
                   s.at("published_at")});
  }
  return out;
}

registry::DiscoveryOutcome HttpRegistryClient::discover(const registry::DiscoveryQuery& query) {
  auto r = impl_->cli.Post("/discover", json(query).dump(), "application/json");
  return registry::read_outcome(expect_json(r, 200, "discover"));
}

registry::DiscoveryOutcome HttpRegistryClient::counter(const std::string& session_id,
                                                       const res::Sls& requested) {
  json body = {{"requested_sls", requested}};
  auto r = impl_->cli.Post(session_path(session_id, "counter"), body.dump(), "application/json");
  return registry::read_outcome(expect_json(r, 200, "counter"));
}

registry::Sla HttpRegistryClient::accept(const std::string& session_id, const std::string& key) {
  json body = {{"alternative_key", key}};
  auto r = impl_->cli.Post(session_path(session_id, "accept"), body.dump(), "application/json");
  return registry::read_sla(expect_json(r, 200, "accept"), "");
}

void HttpRegistryClient::abort(const std::string& session_id) {
  auto r = impl_->cli.Post(session_path(session_id, "abort"), "{}", "application/json");
  expect_json(r, 200, "abort");
}

registry::Artifact HttpRegistryClient::fetch_artifact(const std::string& service_id,
                                                      const std::string& key,
                                                      const std::string& session_id) {
  httplib::Params params{{"session", session_id}};
  auto r = impl_->cli.Get("/services/" + service_id + "/alternatives/" + key + "/artifact", params,
                          httplib::Headers{});
  if (!r || r->status != 200) raise_http_error(r, "fetch");
  return {r->body, r->get_header_value("X-Artifact-Digest")};
}

}  // namespace adapt::client
