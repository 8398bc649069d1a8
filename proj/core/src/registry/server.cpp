#include "adapt/registry/server.hpp"

#include <thread>

#include <nlohmann/json.hpp>

#include "adapt/json_read.hpp"
#include "httplib.h"

namespace adapt::registry {

namespace jr = json_read;
using nlohmann::json;

int http_status(Errc code) {
  switch (code) {
    case Errc::validation:
    case Errc::schema:
    case Errc::config:
    case Errc::overflow:
    case Errc::binding:
    case Errc::cap_exceeded: return 400;
    case Errc::unfit: return 422;
    case Errc::forbidden: return 403;
    case Errc::not_found: return 404;
    case Errc::conflict: return 409;
    case Errc::network: return 502;
    case Errc::integrity:
    case Errc::store: return 500;
  }
  return 500;
}

json error_body(const Error& e) {
  json err = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
  if (!e.path().empty()) err["path"] = e.path();
  return {{"error", std::move(err)}};
}

struct RegistryServer::Impl {
  explicit Impl(Registry& r) : registry(r) {}

  Registry& registry;
  httplib::Server server;
  std::thread thread;
  int bound_port = -1;
};

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

template <typename Handler>
httplib::Server::Handler guarded(Handler h) {
  return [h](const httplib::Request& req, httplib::Response& res) {
    try {
      h(req, res);
    } catch (const Error& e) {
      send_json(res, http_status(e.code()), error_body(e));
    } catch (const std::exception& e) {
      send_json(res, 500, error_body(Error(Errc::store, e.what())));
    }
  };
}

json body_json(const httplib::Request& req) { return jr::parse(req.body, "request body"); }

}  // namespace

RegistryServer::RegistryServer(Registry& registry) : impl_(std::make_unique<Impl>(registry)) {
  auto& srv = impl_->server;
  Registry& reg = registry;

  srv.Post("/services", guarded([&reg](const httplib::Request& req, httplib::Response& res) {
             auto bundle = customizer::read_bundle(body_json(req));
             send_json(res, 201, {{"service_id", reg.publish(bundle)}});
           }));

  srv.Get("/services", guarded([&reg](const httplib::Request&, httplib::Response& res) {
            send_json(res, 200, json(reg.list()));
          }));

  srv.Get(R"(/services/([^/]+))", guarded([&reg](const httplib::Request& req, httplib::Response& res) {
            auto rec = reg.service(req.matches[1]);
            if (!rec) throw Error(Errc::not_found, "unknown service '" + std::string(req.matches[1]) + "'");
            send_json(res, 200, service_record_json(*rec));
          }));

  srv.Post("/discover", guarded([&reg](const httplib::Request& req, httplib::Response& res) {
             send_json(res, 200, json(reg.discover(read_query(body_json(req)))));
           }));

  srv.Get(R"(/sessions/([^/]+))", guarded([&reg](const httplib::Request& req, httplib::Response& res) {
            auto s = reg.session(req.matches[1]);
            if (!s) throw Error(Errc::not_found, "unknown session '" + std::string(req.matches[1]) + "'");
            send_json(res, 200, json(*s));
          }));

  srv.Post(R"(/sessions/([^/]+)/counter)",
           guarded([&reg](const httplib::Request& req, httplib::Response& res) {
             json body = body_json(req);
             auto requested = res::read_sls(jr::field(body, "requested_sls", ""), "/requested_sls");
             send_json(res, 200, json(reg.counter(req.matches[1], requested)));
           }));

  srv.Post(R"(/sessions/([^/]+)/accept)",
           guarded([&reg](const httplib::Request& req, httplib::Response& res) {
             json body = body_json(req);
             auto key = jr::string(jr::field(body, "alternative_key", ""), "/alternative_key");
             send_json(res, 200, json(reg.accept(req.matches[1], key)));
           }));

  srv.Post(R"(/sessions/([^/]+)/abort)",
           guarded([&reg](const httplib::Request& req, httplib::Response& res) {
             reg.abort(req.matches[1]);
             send_json(res, 200, {{"session_id", std::string(req.matches[1])}, {"state", "Failed"}});
           }));

  srv.Get(R"(/services/([^/]+)/alternatives/([^/]+)/artifact)",
          guarded([&reg](const httplib::Request& req, httplib::Response& res) {
            std::string session = req.has_param("session") ? req.get_param_value("session") : "";
            Artifact art = reg.fetch_artifact(req.matches[1], req.matches[2], session);
            res.status = 200;
            res.set_header("X-Artifact-Digest", art.digest);
            res.set_content(art.bytes, "text/plain; charset=utf-8");
          }));
}

RegistryServer::~RegistryServer() { stop(); }

int RegistryServer::bind(const std::string& host, int port) {
  auto& srv = impl_->server;
  impl_->bound_port = port == 0 ? srv.bind_to_any_port(host) : (srv.bind_to_port(host, port) ? port : -1);
  return impl_->bound_port;
}

void RegistryServer::listen() { impl_->server.listen_after_bind(); }

void RegistryServer::start() {
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void RegistryServer::stop() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

int RegistryServer::port() const { return impl_->bound_port; }

}  // namespace adapt::registry
