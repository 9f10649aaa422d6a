#include "sarve/service.hpp"

#include <charconv>
#include <iostream>

#include <httplib.h>
#include <fmt/format.h>

#include "sarve/dataset_io.hpp"
#include "sarve/render.hpp"
#include "sarve/social_graph.hpp"

namespace sarve {

using nlohmann::json;

namespace {

// Raised inside handlers; turned into an error response.
struct HttpError {
  int status;
  std::string message;
  std::vector<std::string> violations;
};

Response error_response(const HttpError& e, std::uint64_t version) {
  json body = {{"error", e.message}, {"version", version}};
  if (!e.violations.empty()) body["violations"] = e.violations;
  return {e.status, std::move(body)};
}

std::optional<std::string> query_value(const QueryParams& q, const std::string& key) {
  auto it = q.find(key);
  if (it == q.end()) return std::nullopt;
  return it->second;
}

double query_double(const std::string& key, const std::string& raw) {
  double v = 0;
  auto res = std::from_chars(raw.data(), raw.data() + raw.size(), v);
  if (raw.empty() || res.ec != std::errc() || res.ptr != raw.data() + raw.size()) {
    throw HttpError{422, fmt::format("query parameter {}='{}' is not a number", key, raw), {}};
  }
  return v;
}

int query_int(const std::string& key, const std::string& raw) {
  int v = 0;
  auto res = std::from_chars(raw.data(), raw.data() + raw.size(), v);
  if (raw.empty() || res.ec != std::errc() || res.ptr != raw.data() + raw.size()) {
    throw HttpError{422, fmt::format("query parameter {}='{}' is not an integer", key, raw), {}};
  }
  return v;
}

json parse_body(const std::string& body) {
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw HttpError{400, "request body must be a JSON object", {}};
  return j;
}

std::optional<std::uint64_t> expected_version(const json& body, const std::optional<std::string>& if_match) {
  if (body.contains("expected_version")) {
    const auto& v = body["expected_version"];
    if (!v.is_number_unsigned()) throw HttpError{400, "expected_version must be a non-negative integer", {}};
    return v.get<std::uint64_t>();
  }
  if (if_match && !if_match->empty()) {
    std::string raw = *if_match;
    if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"') raw = raw.substr(1, raw.size() - 2);
    std::uint64_t v = 0;
    auto res = std::from_chars(raw.data(), raw.data() + raw.size(), v);
    if (res.ec != std::errc() || res.ptr != raw.data() + raw.size()) {
      throw HttpError{400, "If-Match must carry a snapshot version", {}};
    }
    return v;
  }
  return std::nullopt;
}

int json_int(const json& v, const std::string& what) {
  if (!v.is_number_integer()) throw HttpError{422, fmt::format("{} must be an integer", what), {}};
  const auto n = v.get<long long>();
  if (n < INT32_MIN || n > INT32_MAX) throw HttpError{422, fmt::format("{} is out of range", what), {}};
  return static_cast<int>(n);
}

std::string json_string(const json& v, const std::string& what) {
  if (!v.is_string()) throw HttpError{422, fmt::format("{} must be a string", what), {}};
  return v.get<std::string>();
}

const json& member(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw HttpError{422, fmt::format("missing field '{}'", key), {}};
  return obj[key];
}

}  // namespace

Service::Service(ConferenceInstance conf, ServiceOptions options) : options_(std::move(options)) {
  auto snap = std::make_shared<EngineSnapshot>();
  snap->version = 1;
  snap->recommendations = recommend(conf);
  snap->conf = std::move(conf);
  current_ = std::move(snap);
}

Service::~Service() {
  if (http_) http_->stop();
}

std::shared_ptr<const EngineSnapshot> Service::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  return current_;
}

void Service::publish(std::shared_ptr<const EngineSnapshot> next) {
  std::lock_guard lock(snapshot_mutex_);
  current_ = std::move(next);
}

Response Service::get_sessions() const {
  auto snap = snapshot();
  json sessions = json::array();
  for (const auto& s : snap->conf.sessions) sessions.push_back(to_json(s));
  return {200, {{"version", snap->version}, {"sessions", std::move(sessions)}}};
}

Response Service::get_participants() const {
  auto snap = snapshot();
  json people = json::array();
  for (const auto& p : snap->conf.roster) {
    people.push_back({{"id", p.value}, {"presenter", snap->conf.presenters.count(p) != 0}});
  }
  return {200,
          {{"version", snap->version}, {"thresholds", to_json(snap->conf.thresholds)}, {"participants", people}}};
}

Response Service::get_recommendations(const std::string& participant, const QueryParams& query) const {
  auto snap = snapshot();
  try {
    const ParticipantId id(participant);
    if (!snap->conf.in_roster(id)) throw HttpError{404, fmt::format("unknown participant '{}'", participant), {}};

    std::optional<Channel> only;
    if (auto c = query_value(query, "channel"); c && !c->empty()) {
      only = parse_channel(*c);
      if (!only) throw HttpError{422, fmt::format("unknown channel '{}'", *c), {}};
    }

    Thresholds th = snap->conf.thresholds;
    bool overridden = false;
    for (auto [key, field] : {std::pair{"gamma", &th.gamma}, {"beta", &th.beta}, {"delta", &th.delta}}) {
      if (auto v = query_value(query, key)) {
        *field = query_double(key, *v);
        overridden = true;
      }
    }
    if (auto v = query_value(query, "top_n")) {
      th.top_n = query_int("top_n", *v);
      overridden = true;
    }
    EngineOptions options;
    if (auto v = query_value(query, "strict")) options.strict = (*v == "1" || *v == "true");
    if (auto violations = validate_thresholds(th); !violations.empty()) {
      throw HttpError{422, "invalid threshold override", violations};
    }

    json body;
    if (!overridden && options == EngineOptions{}) {
      const auto& lists = snap->recommendations.lists().at(id);
      body = recommendations_json(snap->conf, id, lists, options, only);
    } else {
      // What-if query: recompute against this snapshot without touching it.
      ConferenceInstance what_if = snap->conf;
      what_if.thresholds = th;
      body = recommendations_json(what_if, id, recommend_for(what_if, id, options), options, only);
    }
    body["version"] = snap->version;
    return {200, std::move(body)};
  } catch (const HttpError& e) {
    return error_response(e, snap->version);
  }
}

Response Service::get_centrality(const std::string& presenter) const {
  auto snap = snapshot();
  const ParticipantId id(presenter);
  if (!snap->conf.presenters.count(id)) {
    return error_response({404, fmt::format("unknown presenter '{}'", presenter), {}}, snap->version);
  }
  const auto c = degree_centrality(snap->conf, id);
  return {200,
          {{"version", snap->version},
           {"presenter", presenter},
           {"raw", c.raw},
           {"normalized", c.normalized},
           {"roster_size", snap->conf.roster.size()}}};
}

template <typename Mutate>
Response Service::write(const std::string& participant, const std::string& body,
                        const std::optional<std::string>& if_match, Mutate&& mutate) {
  std::lock_guard write_lock(write_mutex_);
  auto snap = snapshot();
  try {
    const ParticipantId id(participant);
    if (!snap->conf.in_roster(id)) throw HttpError{404, fmt::format("unknown participant '{}'", participant), {}};
    const json payload = parse_body(body);
    if (auto expected = expected_version(payload, if_match); expected && *expected != snap->version) {
      throw HttpError{409, fmt::format("stale version {}, current is {}", *expected, snap->version), {}};
    }

    ConferenceInstance next = snap->conf;
    mutate(next, id, payload);
    if (auto violations = validate(next); !violations.empty()) {
      throw HttpError{422, "validation failed", std::move(violations)};
    }

    auto fresh = std::make_shared<EngineSnapshot>();
    fresh->version = snap->version + 1;
    fresh->recommendations = recommend(next);
    fresh->conf = std::move(next);
    if (options_.save_path) save(fresh->conf, *options_.save_path);
    const auto version = fresh->version;
    publish(std::move(fresh));
    return {200, {{"version", version}, {"participant", participant}}};
  } catch (const HttpError& e) {
    return error_response(e, snap->version);
  } catch (const IoError& e) {
    return error_response({500, e.what(), {}}, snap->version);
  }
}

Response Service::put_ratings(const std::string& participant, const std::string& body,
                              std::optional<std::string> if_match) {
  return write(participant, body, if_match, [](ConferenceInstance& conf, const ParticipantId& id, const json& j) {
    const json& ratings = member(j, "ratings");
    if (!ratings.is_object()) throw HttpError{422, "'ratings' must map tags to integer ratings", {}};
    conf.ratings.erase_participant(id);
    for (const auto& [tag, value] : ratings.items()) {
      Tag t(tag);
      if (t.keyword.empty()) throw HttpError{422, "empty tag in ratings", {}};
      conf.ratings.set(id, t, json_int(value, fmt::format("rating for '{}'", tag)));
    }
  });
}

Response Service::put_availability(const std::string& participant, const std::string& body,
                                   std::optional<std::string> if_match) {
  return write(participant, body, if_match, [](ConferenceInstance& conf, const ParticipantId& id, const json& j) {
    const json& slots = member(j, "slots");
    if (!slots.is_array()) throw HttpError{422, "'slots' must be an array", {}};
    AvailabilityContext ctx{id, {}};
    for (const auto& s : slots) {
      ctx.slots.push_back(Slot{Location(json_string(member(s, "location"), "slot location")),
                               TimeSlot{json_int(member(s, "start"), "slot start"),
                                        json_int(member(s, "end"), "slot end")}});
    }
    conf.availabilities[id] = std::move(ctx);
  });
}

Response Service::put_contacts(const std::string& participant, const std::string& body,
                               std::optional<std::string> if_match) {
  return write(participant, body, if_match, [](ConferenceInstance& conf, const ParticipantId& id, const json& j) {
    const json& contacts = member(j, "contacts");
    if (!contacts.is_array()) throw HttpError{422, "'contacts' must be an array", {}};
    conf.contacts.erase_participant(id);
    for (const auto& c : contacts) {
      const ParticipantId other(json_string(member(c, "with"), "contact 'with'"));
      if (other == id) throw HttpError{422, "validation failed", {fmt::format("contact of '{}' with itself", id.value)}};
      const Contact value{json_int(member(c, "frequency"), "contact frequency"),
                          json_int(member(c, "duration"), "contact duration")};
      // A zero entry records "never met"; keep the log free of them.
      if (value.frequency == 0 && value.duration == 0) continue;
      conf.contacts.set(id, other, value);
    }
  });
}

namespace {

QueryParams to_query(const httplib::Params& params) { return QueryParams(params.begin(), params.end()); }

void reply(httplib::Response& res, const Response& r) {
  res.status = r.status;
  res.set_content(r.body.dump(), "application/json");
}

std::optional<std::string> if_match_header(const httplib::Request& req) {
  if (!req.has_header("If-Match")) return std::nullopt;
  return req.get_header_value("If-Match");
}

}  // namespace

void Service::install_routes() {
  auto& s = *http_;
  s.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                         {"Access-Control-Allow-Methods", "GET, PUT, OPTIONS"},
                         {"Access-Control-Allow-Headers", "Content-Type, If-Match"}});
  s.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  s.Get("/sessions", [this](const httplib::Request&, httplib::Response& res) { reply(res, get_sessions()); });
  s.Get("/participants",
        [this](const httplib::Request&, httplib::Response& res) { reply(res, get_participants()); });
  s.Get(R"(/participants/([^/]+)/recommendations)", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, get_recommendations(req.matches[1], to_query(req.params)));
  });
  s.Get(R"(/presenters/([^/]+)/centrality)", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, get_centrality(req.matches[1]));
  });
  s.Put(R"(/participants/([^/]+)/ratings)", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, put_ratings(req.matches[1], req.body, if_match_header(req)));
  });
  s.Put(R"(/participants/([^/]+)/availability)", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, put_availability(req.matches[1], req.body, if_match_header(req)));
  });
  s.Put(R"(/participants/([^/]+)/contacts)", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, put_contacts(req.matches[1], req.body, if_match_header(req)));
  });
  s.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) res.set_content(json{{"error", httplib::status_message(res.status)}}.dump(), "application/json");
  });
  s.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string what = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    res.status = 500;
    res.set_content(json{{"error", what}}.dump(), "application/json");
  });

  if (options_.log_requests) {
    s.set_logger([this](const httplib::Request& req, const httplib::Response& res) {
      json line = {{"method", req.method}, {"path", req.path}, {"status", res.status}, {"version", snapshot()->version}};
      std::cerr << line.dump() << '\n';
    });
  }
}

int Service::bind(const std::string& host, int port) {
  if (!http_) {
    http_ = std::make_unique<httplib::Server>();
    install_routes();
  }
  if (port == 0) return http_->bind_to_any_port(host);
  return http_->bind_to_port(host, port) ? port : -1;
}

bool Service::run() {
  if (!http_) return false;
  return http_->listen_after_bind();
}

void Service::stop() {
  if (http_) http_->stop();
}

}  // namespace sarve
