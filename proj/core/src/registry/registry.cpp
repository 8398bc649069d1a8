#include "adapt/registry/registry.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>

#include "adapt/digest.hpp"
#include "adapt/error.hpp"
#include "adapt/registry/matching.hpp"

namespace adapt::registry {

std::string utc_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

int service_number(const std::string& id) {
  if (id.rfind("svc-", 0) != 0) return 0;
  try {
    return std::stoi(id.substr(4));
  } catch (...) {
    return 0;
  }
}

}  // namespace

Registry::Registry() : Registry(Options{}) {}

Registry::Registry(Options options) : options_(std::move(options)) {
  if (!options_.clock) options_.clock = utc_timestamp;
  std::uint64_t seed = options_.seed;
  if (seed == 0) {
    std::random_device rd;
    seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  rng_.seed(seed);

  if (!options_.store_dir) return;
  store_ = std::make_unique<FileStore>(*options_.store_dir);
  auto snap = store_->load();
  std::sort(snap.services.begin(), snap.services.end(),
            [](const ServiceRecord& a, const ServiceRecord& b) {
              return service_number(a.service_id) < service_number(b.service_id);
            });
  for (auto& rec : snap.services) {
    next_service_ = std::max(next_service_, service_number(rec.service_id) + 1);
    versions_[rec.bundle.descriptor.functionality.name].push_back(rec.service_id);
    std::string id = rec.service_id;
    services_.emplace(std::move(id), std::make_shared<const ServiceRecord>(std::move(rec)));
  }
  for (auto& s : snap.sessions) {
    auto slot = std::make_shared<SessionSlot>();
    std::string id = s.session_id;
    slot->session = std::move(s);
    sessions_.emplace(std::move(id), std::move(slot));
  }
  for (auto& sla : snap.slas) {
    std::string id = sla.sla_id;
    slas_.emplace(std::move(id), std::move(sla));
  }
}

Registry::~Registry() = default;

std::string Registry::now() const { return options_.clock(); }

std::string Registry::new_session_id() {
  for (;;) {
    std::string id = random_session_id();
    std::lock_guard lock(sessions_mu_);
    if (!sessions_.count(id)) return id;
  }
}

std::string Registry::random_session_id() {
  std::uint64_t hi, lo;
  {
    std::lock_guard lock(rng_mu_);
    hi = rng_();
    lo = rng_();
  }
  // RFC 4122 version 4 layout.
  hi = (hi & 0xFFFFFFFFFFFF0FFFull) | 0x0000000000004000ull;
  lo = (lo & 0x3FFFFFFFFFFFFFFFull) | 0x8000000000000000ull;
  char buf[37];
  std::snprintf(buf, sizeof buf, "%08x-%04x-%04x-%04x-%012llx",
                static_cast<unsigned>(hi >> 32), static_cast<unsigned>((hi >> 16) & 0xFFFF),
                static_cast<unsigned>(hi & 0xFFFF), static_cast<unsigned>(lo >> 48),
                static_cast<unsigned long long>(lo & 0xFFFFFFFFFFFFull));
  return buf;
}

std::string Registry::publish(const customizer::PublishBundle& bundle) {
  customizer::check_bundle(bundle);
  std::unique_lock lock(services_mu_);
  char id[32];
  std::snprintf(id, sizeof id, "svc-%04d", next_service_);
  auto rec = std::make_shared<ServiceRecord>();
  rec->service_id = id;
  rec->bundle = bundle;
  const std::string& name = bundle.descriptor.functionality.name;
  auto vit = versions_.find(name);
  rec->version = vit == versions_.end() ? 1 : static_cast<int>(vit->second.size()) + 1;
  rec->published_at = now();
  if (store_) store_->save(*rec);
  ++next_service_;
  versions_[name].push_back(rec->service_id);
  services_.emplace(rec->service_id, std::move(rec));
  return id;
}

std::vector<ServiceSummary> Registry::list() const {
  std::shared_lock lock(services_mu_);
  std::vector<ServiceSummary> out;
  for (const auto& [id, rec] : services_) {
    out.push_back({id, rec->bundle.descriptor.functionality.name, rec->version,
                   rec->bundle.descriptor.alternatives.size(), rec->published_at});
  }
  return out;
}

std::shared_ptr<const ServiceRecord> Registry::latest_by_name(const std::string& name) const {
  std::shared_lock lock(services_mu_);
  auto it = versions_.find(name);
  if (it == versions_.end() || it->second.empty()) return nullptr;
  return services_.at(it->second.back());
}

std::shared_ptr<const ServiceRecord> Registry::by_id(const std::string& id) const {
  std::shared_lock lock(services_mu_);
  auto it = services_.find(id);
  return it == services_.end() ? nullptr : it->second;
}

std::optional<ServiceRecord> Registry::service(const std::string& service_id) const {
  auto rec = by_id(service_id);
  if (!rec) return std::nullopt;
  return *rec;
}

std::shared_ptr<Registry::SessionSlot> Registry::slot(const std::string& session_id) const {
  std::lock_guard lock(sessions_mu_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) throw Error(Errc::not_found, "unknown session '" + session_id + "'");
  return it->second;
}

void Registry::persist(const NegotiationSession& s) {
  if (store_) store_->save(s);
}

void Registry::persist(const Sla& sla) {
  if (store_) store_->save(sla);
}

Sla Registry::make_sla(const NegotiationSession& s, const ServiceRecord& svc,
                       const std::string& key) {
  const auto* alt = svc.bundle.descriptor.find(key);
  if (!alt) throw Error(Errc::not_found, "service has no alternative '" + key + "'");
  Sla sla;
  sla.sla_id = "sla-" + s.session_id;
  sla.session_id = s.session_id;
  sla.service_id = svc.service_id;
  sla.alternative_key = key;
  sla.terms = alt->offered_sls;
  sla.supply = s.supply;
  sla.agreed_at = now();
  return sla;
}

// Runs matching for `s` against its service and records the round. On a
// Match the session becomes Agreed and its SLA is stored.
void Registry::apply_match(NegotiationSession& s, const ServiceRecord& svc,
                           const res::Sls& requested, DiscoveryOutcome& out) {
  MatchResult m = match_alternatives(svc.bundle.descriptor, s.supply, requested);
  s.requested = requested;
  s.updated_at = now();
  s.history.push_back({s.round, requested, m.kind, m.proposals});
  out.kind = m.kind;
  out.session_id = s.session_id;
  out.round = s.round;
  switch (m.kind) {
    case OutcomeKind::match: {
      Sla sla = make_sla(s, svc, m.chosen_key);
      s.state = SessionState::agreed;
      s.sla_id = sla.sla_id;
      persist(sla);
      {
        std::lock_guard lock(slas_mu_);
        slas_[sla.sla_id] = sla;
      }
      out.alternative_key = m.chosen_key;
      out.sla = std::move(sla);
      break;
    }
    case OutcomeKind::negotiate:
      out.proposals = std::move(m.proposals);
      break;
    case OutcomeKind::no_fit:
      s.state = SessionState::failed;
      out.reason = std::move(m.reason);
      break;
  }
}

DiscoveryOutcome Registry::discover(const DiscoveryQuery& query) {
  DiscoveryOutcome out;
  auto svc = latest_by_name(query.functionality);
  if (!svc) {
    out.kind = OutcomeKind::no_fit;
    out.reason = "unknown service";
    return out;
  }
  MatchResult probe = match_alternatives(svc->bundle.descriptor, query.supply, query.requested);
  if (probe.kind == OutcomeKind::no_fit) {
    out.kind = OutcomeKind::no_fit;
    out.reason = probe.reason;
    return out;
  }

  auto slot = std::make_shared<SessionSlot>();
  std::lock_guard slot_lock(slot->mu);
  NegotiationSession& s = slot->session;
  s.session_id = new_session_id();
  s.service_id = svc->service_id;
  s.supply = query.supply;
  s.created_at = now();
  apply_match(s, *svc, query.requested, out);
  persist(s);
  {
    std::lock_guard lock(sessions_mu_);
    sessions_.emplace(s.session_id, slot);
  }
  return out;
}

DiscoveryOutcome Registry::counter(const std::string& session_id, const res::Sls& requested) {
  auto sl = slot(session_id);
  std::lock_guard lock(sl->mu);
  NegotiationSession& s = sl->session;
  if (s.state != SessionState::open) {
    throw Error(Errc::conflict, "session '" + session_id + "' is " + to_string(s.state));
  }
  auto svc = by_id(s.service_id);
  if (!svc) throw Error(Errc::not_found, "service '" + s.service_id + "' is gone");
  res::check_schema(svc->bundle.descriptor.schema, requested);
  NegotiationSession next = s;
  ++next.round;
  DiscoveryOutcome out;
  apply_match(next, *svc, requested, out);
  persist(next);
  s = std::move(next);
  return out;
}

Sla Registry::accept(const std::string& session_id, const std::string& alternative_key) {
  auto sl = slot(session_id);
  std::lock_guard lock(sl->mu);
  NegotiationSession& s = sl->session;
  if (s.state != SessionState::open) {
    throw Error(Errc::conflict, "session '" + session_id + "' is " + to_string(s.state));
  }
  const auto& current = s.current_proposals();
  bool proposed = std::any_of(current.begin(), current.end(), [&](const Proposal& p) {
    return p.alternative_key == alternative_key;
  });
  if (!proposed) {
    throw Error(Errc::conflict, "alternative '" + alternative_key +
                                    "' was not proposed in round " + std::to_string(s.round));
  }
  auto svc = by_id(s.service_id);
  if (!svc) throw Error(Errc::not_found, "service '" + s.service_id + "' is gone");

  NegotiationSession next = s;
  Sla sla = make_sla(next, *svc, alternative_key);
  next.state = SessionState::agreed;
  next.sla_id = sla.sla_id;
  next.updated_at = sla.agreed_at;
  persist(sla);
  persist(next);
  {
    std::lock_guard sla_lock(slas_mu_);
    slas_[sla.sla_id] = sla;
  }
  s = std::move(next);
  return sla;
}

void Registry::abort(const std::string& session_id) {
  auto sl = slot(session_id);
  std::lock_guard lock(sl->mu);
  NegotiationSession& s = sl->session;
  if (s.state != SessionState::open) {
    throw Error(Errc::conflict, "session '" + session_id + "' is " + to_string(s.state));
  }
  NegotiationSession next = s;
  next.state = SessionState::failed;
  next.updated_at = now();
  persist(next);
  s = std::move(next);
}

Artifact Registry::fetch_artifact(const std::string& service_id,
                                  const std::string& alternative_key,
                                  const std::string& session_id) const {
  std::shared_ptr<SessionSlot> sl;
  try {
    sl = slot(session_id);
  } catch (const Error&) {
    throw Error(Errc::forbidden, "artifact delivery requires an agreed session");
  }
  std::optional<std::string> sla_id;
  {
    std::lock_guard lock(sl->mu);
    const auto& s = sl->session;
    if (s.state != SessionState::agreed || s.service_id != service_id) {
      throw Error(Errc::forbidden, "session '" + session_id + "' holds no agreement for service '" +
                                       service_id + "'");
    }
    sla_id = s.sla_id;
  }
  {
    std::lock_guard lock(slas_mu_);
    auto it = sla_id ? slas_.find(*sla_id) : slas_.end();
    if (it == slas_.end() || it->second.alternative_key != alternative_key) {
      throw Error(Errc::forbidden, "session '" + session_id + "' did not agree on alternative '" +
                                       alternative_key + "'");
    }
  }
  auto svc = by_id(service_id);
  if (!svc) throw Error(Errc::not_found, "unknown service '" + service_id + "'");
  const auto* alt = svc->bundle.descriptor.find(alternative_key);
  auto art = svc->bundle.artifacts.find(alternative_key);
  if (!alt || art == svc->bundle.artifacts.end()) {
    throw Error(Errc::integrity, "artifact for '" + alternative_key + "' missing from store");
  }
  std::string digest = sha256_hex(art->second);
  if (digest != alt->artifact_digest) {
    throw Error(Errc::integrity, "stored artifact for '" + alternative_key +
                                     "' does not match its published digest");
  }
  return {art->second, digest};
}

std::optional<NegotiationSession> Registry::session(const std::string& session_id) const {
  try {
    auto sl = slot(session_id);
    std::lock_guard lock(sl->mu);
    return sl->session;
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::vector<NegotiationSession> Registry::sessions() const {
  std::vector<std::shared_ptr<SessionSlot>> slots;
  {
    std::lock_guard lock(sessions_mu_);
    for (const auto& [id, sl] : sessions_) slots.push_back(sl);
  }
  std::vector<NegotiationSession> out;
  for (const auto& sl : slots) {
    std::lock_guard lock(sl->mu);
    out.push_back(sl->session);
  }
  return out;
}

std::vector<Sla> Registry::slas() const {
  std::lock_guard lock(slas_mu_);
  std::vector<Sla> out;
  for (const auto& [id, sla] : slas_) out.push_back(sla);
  return out;
}

}  // namespace adapt::registry
