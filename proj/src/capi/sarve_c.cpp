#include "sarve/sarve.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "sarve/dataset_io.hpp"
#include "sarve/evaluation.hpp"
#include "sarve/generator.hpp"
#include "sarve/recommender.hpp"
#include "sarve/render.hpp"
#include "sarve/service.hpp"
#include "sarve/similarity.hpp"
#include "sarve/social_graph.hpp"

struct sarve_conference {
  sarve::ConferenceInstance conf;
};

struct sarve_server {
  std::unique_ptr<sarve::Service> service;
};

namespace {

thread_local std::string g_last_error;

sarve_status fail(sarve_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs fn, mapping exceptions onto status codes.
template <typename Fn>
sarve_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const sarve::ValidationError& e) {
    return fail(SARVE_E_VALIDATION, e.what());
  } catch (const sarve::ParseError& e) {
    return fail(SARVE_E_PARSE, e.what());
  } catch (const sarve::IoError& e) {
    return fail(SARVE_E_IO, e.what());
  } catch (const sarve::NotFound& e) {
    return fail(SARVE_E_NOT_FOUND, e.what());
  } catch (const sarve::Error& e) {
    return fail(SARVE_E_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SARVE_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SARVE_E_INTERNAL, e.what());
  } catch (...) {
    return fail(SARVE_E_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return out;
}

sarve_thresholds to_c(const sarve::Thresholds& t) { return {t.gamma, t.beta, t.delta, t.frame_T, t.top_n}; }

sarve::Thresholds from_c(const sarve_thresholds& t) { return {t.gamma, t.beta, t.delta, t.frame_T, t.top_n}; }

sarve::GeneratorConfig from_c(const sarve_generator_config& c) {
  sarve::GeneratorConfig g;
  g.seed = c.seed;
  g.n_participants = c.n_participants;
  g.n_presenters = c.n_presenters;
  g.n_sessions = c.n_sessions;
  g.tag_vocabulary = c.tag_vocabulary;
  g.rating_density = c.rating_density;
  g.max_contact_duration = c.max_contact_duration;
  g.max_contact_frequency = c.max_contact_frequency;
  g.frame_T = c.frame_T;
  g.n_locations = c.n_locations;
  g.availability_coverage = c.availability_coverage;
  g.contact_density = c.contact_density;
  g.session_length = c.session_length;
  g.gamma = c.gamma;
  g.beta = c.beta;
  g.delta = c.delta;
  g.top_n = c.top_n;
  return g;
}

std::optional<sarve::Channel> single_channel(sarve_channel c) {
  switch (c) {
    case SARVE_CHANNEL_SOCIAL_CONTEXT: return sarve::Channel::SocialContext;
    case SARVE_CHANNEL_SOCIAL_RELATIONS: return sarve::Channel::SocialRelations;
    default: return std::nullopt;
  }
}

#define SARVE_REQUIRE(cond, what) \
  if (!(cond)) return fail(SARVE_E_INVALID_ARGUMENT, what)

}  // namespace

extern "C" {

int sarve_abi_version(void) { return SARVE_ABI_VERSION; }

const char* sarve_last_error(void) { return g_last_error.c_str(); }

const char* sarve_status_string(sarve_status status) {
  switch (status) {
    case SARVE_OK: return "ok";
    case SARVE_E_INVALID_ARGUMENT: return "invalid argument";
    case SARVE_E_VALIDATION: return "validation failed";
    case SARVE_E_PARSE: return "parse error";
    case SARVE_E_IO: return "i/o error";
    case SARVE_E_NOT_FOUND: return "not found";
    case SARVE_E_UNDEFINED: return "undefined";
    case SARVE_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void sarve_string_free(char* s) { std::free(s); }

void sarve_generator_config_default(sarve_generator_config* cfg) {
  if (cfg == nullptr) return;
  const sarve::GeneratorConfig g;
  *cfg = sarve_generator_config{g.seed,
                                g.n_participants,
                                g.n_presenters,
                                g.n_sessions,
                                g.tag_vocabulary,
                                g.rating_density,
                                g.max_contact_duration,
                                g.max_contact_frequency,
                                g.frame_T,
                                g.n_locations,
                                g.availability_coverage,
                                g.contact_density,
                                g.session_length,
                                g.gamma,
                                g.beta,
                                g.delta,
                                g.top_n};
}

sarve_status sarve_conference_generate(const sarve_generator_config* cfg, sarve_conference** out) {
  SARVE_REQUIRE(cfg && out, "null argument");
  return guarded([&] {
    *out = new sarve_conference{sarve::generate(from_c(*cfg))};
    return SARVE_OK;
  });
}

sarve_status sarve_conference_load(const char* path, sarve_conference** out) {
  SARVE_REQUIRE(path && out, "null argument");
  return guarded([&] {
    *out = new sarve_conference{sarve::load(path)};
    return SARVE_OK;
  });
}

sarve_status sarve_conference_read(const char* path, sarve_conference** out) {
  SARVE_REQUIRE(path && out, "null argument");
  return guarded([&] {
    *out = new sarve_conference{sarve::read_dataset(path)};
    return SARVE_OK;
  });
}

sarve_status sarve_conference_parse(const char* text, size_t len, sarve_conference** out) {
  SARVE_REQUIRE(text && out, "null argument");
  return guarded([&] {
    *out = new sarve_conference{sarve::parse_dataset(std::string_view(text, len))};
    return SARVE_OK;
  });
}

sarve_status sarve_conference_save(const sarve_conference* conf, const char* path) {
  SARVE_REQUIRE(conf && path, "null argument");
  return guarded([&] {
    sarve::save(conf->conf, path);
    return SARVE_OK;
  });
}

sarve_status sarve_conference_to_text(const sarve_conference* conf, char** out) {
  SARVE_REQUIRE(conf && out, "null argument");
  return guarded([&] {
    *out = dup_string(sarve::to_dataset_text(conf->conf));
    return SARVE_OK;
  });
}

sarve_status sarve_conference_thresholds(const sarve_conference* conf, sarve_thresholds* out) {
  SARVE_REQUIRE(conf && out, "null argument");
  *out = to_c(conf->conf.thresholds);
  return SARVE_OK;
}

sarve_status sarve_conference_set_thresholds(sarve_conference* conf, const sarve_thresholds* thresholds) {
  SARVE_REQUIRE(conf && thresholds, "null argument");
  const auto t = from_c(*thresholds);
  if (auto v = sarve::validate_thresholds(t); !v.empty()) return fail(SARVE_E_INVALID_ARGUMENT, "invalid thresholds: " + v.front());
  conf->conf.thresholds = t;
  return SARVE_OK;
}

sarve_status sarve_conference_id(const sarve_conference* conf, char** out) {
  SARVE_REQUIRE(conf && out, "null argument");
  return guarded([&] {
    *out = dup_string(sarve::dataset_id(conf->conf));
    return SARVE_OK;
  });
}

void sarve_conference_free(sarve_conference* conf) { delete conf; }

sarve_status sarve_conference_validate(const sarve_conference* conf, size_t* n_violations, char** report) {
  SARVE_REQUIRE(conf, "null argument");
  return guarded([&] {
    const auto v = sarve::validate(conf->conf);
    if (n_violations) *n_violations = v.size();
    if (report) {
      std::string text;
      for (const auto& line : v) text += line + '\n';
      *report = dup_string(text);
    }
    return SARVE_OK;
  });
}

sarve_status sarve_export_csv(const sarve_conference* conf, const char* ratings_path, const char* contacts_path) {
  SARVE_REQUIRE(conf, "null argument");
  return guarded([&] {
    auto write = [](const char* path, const std::string& text) {
      if (path == nullptr) return;
      std::FILE* f = std::fopen(path, "wb");
      if (f == nullptr) throw sarve::IoError(std::string("cannot open '") + path + "' for writing");
      const bool ok = std::fwrite(text.data(), 1, text.size(), f) == text.size();
      if (std::fclose(f) != 0 || !ok) throw sarve::IoError(std::string("error writing '") + path + "'");
    };
    write(ratings_path, sarve::ratings_csv(conf->conf));
    write(contacts_path, sarve::contacts_csv(conf->conf));
    return SARVE_OK;
  });
}

sarve_status sarve_pearson(const sarve_conference* conf, const char* c, const char* d, double* out) {
  SARVE_REQUIRE(conf && c && d && out, "null argument");
  return guarded([&] {
    auto s = sarve::pearson(conf->conf, sarve::ParticipantId(c), sarve::ParticipantId(d));
    if (!s) return fail(SARVE_E_UNDEFINED, "similarity is undefined: fewer than two co-rated tags or zero variance");
    *out = *s;
    return SARVE_OK;
  });
}

sarve_status sarve_tie_strength(int32_t frequency, int32_t duration, int32_t frame_T, double* out) {
  SARVE_REQUIRE(out, "null argument");
  return guarded([&] {
    *out = sarve::tie_strength(frequency, duration, frame_T);
    return SARVE_OK;
  });
}

sarve_status sarve_tie_between(const sarve_conference* conf, const char* a, const char* b, double* out) {
  SARVE_REQUIRE(conf && a && b && out, "null argument");
  return guarded([&] {
    const sarve::ParticipantId pa(a), pb(b);
    for (const auto* p : {&pa, &pb}) {
      if (!conf->conf.in_roster(*p)) throw sarve::NotFound("participant '" + p->value + "' is not in the roster");
    }
    *out = sarve::tie_strength(conf->conf.contacts, pa, pb, conf->conf.thresholds.frame_T);
    return SARVE_OK;
  });
}

sarve_status sarve_degree_centrality(const sarve_conference* conf, const char* participant, int32_t* raw,
                                     double* normalized) {
  SARVE_REQUIRE(conf && participant, "null argument");
  return guarded([&] {
    const auto c = sarve::degree_centrality(conf->conf, sarve::ParticipantId(participant));
    if (raw) *raw = c.raw;
    if (normalized) *normalized = c.normalized;
    return SARVE_OK;
  });
}

sarve_status sarve_recommend(const sarve_conference* conf, const char* participant,
                             const sarve_recommend_options* options, char** out) {
  SARVE_REQUIRE(conf && participant && out, "null argument");
  return guarded([&] {
    sarve_recommend_options opt{nullptr, SARVE_CHANNEL_BOTH, 0, SARVE_FORMAT_TEXT};
    if (options) opt = *options;
    if (opt.channel != SARVE_CHANNEL_SOCIAL_CONTEXT && opt.channel != SARVE_CHANNEL_SOCIAL_RELATIONS &&
        opt.channel != SARVE_CHANNEL_BOTH) {
      return fail(SARVE_E_INVALID_ARGUMENT, "unknown channel");
    }

    sarve::ConferenceInstance run = conf->conf;
    if (opt.overrides) {
      run.thresholds = from_c(*opt.overrides);
      if (auto v = sarve::validate_thresholds(run.thresholds); !v.empty()) {
        throw sarve::Error("invalid thresholds: " + v.front());
      }
    }
    sarve::EngineOptions engine;
    engine.strict = opt.strict != 0;
    const sarve::ParticipantId id(participant);
    const auto recs = sarve::recommend_for(run, id, engine);
    const auto only = single_channel(opt.channel);
    if (opt.format == SARVE_FORMAT_JSON) {
      *out = dup_string(sarve::recommendations_json(run, id, recs, engine, only).dump(2) + "\n");
    } else {
      *out = dup_string(sarve::render_recommendations(run, id, recs, only));
    }
    return SARVE_OK;
  });
}

sarve_status sarve_evaluate(const sarve_conference* conf, const sarve_evaluate_options* options, char** csv,
                            char** tables) {
  SARVE_REQUIRE(conf && options, "null argument");
  SARVE_REQUIRE(options->grid && options->grid_len > 0, "empty threshold grid");
  return guarded([&] {
    auto channel = single_channel(options->channel);
    if (!channel) return fail(SARVE_E_INVALID_ARGUMENT, "evaluation needs a single channel");
    sarve::EvaluateOptions opt;
    opt.channel = *channel;
    opt.grid.assign(options->grid, options->grid + options->grid_len);
    opt.split = sarve::SplitSpec{options->train_fraction, options->split_seed};
    const auto run = sarve::evaluate(conf->conf, opt);
    if (csv) *csv = dup_string(sarve::sweep_csv(run.sweep));
    if (tables) *tables = dup_string(sarve::render_evaluation(run));
    return SARVE_OK;
  });
}

sarve_status sarve_server_create(const sarve_conference* conf, const sarve_server_options* options,
                                 sarve_server** out) {
  SARVE_REQUIRE(conf && out, "null argument");
  return guarded([&] {
    sarve::ServiceOptions opt;
    if (options) {
      if (options->save_path) opt.save_path = options->save_path;
      opt.log_requests = options->log_requests != 0;
    }
    auto server = std::make_unique<sarve_server>();
    server->service = std::make_unique<sarve::Service>(conf->conf, std::move(opt));
    *out = server.release();
    return SARVE_OK;
  });
}

sarve_status sarve_server_bind(sarve_server* server, const char* host, int port, int* bound_port) {
  SARVE_REQUIRE(server && host, "null argument");
  return guarded([&] {
    const int p = server->service->bind(host, port);
    if (p < 0) return fail(SARVE_E_IO, std::string("cannot listen on ") + host + ":" + std::to_string(port));
    if (bound_port) *bound_port = p;
    return SARVE_OK;
  });
}

sarve_status sarve_server_run(sarve_server* server) {
  SARVE_REQUIRE(server, "null argument");
  return guarded([&] {
    if (!server->service->run()) return fail(SARVE_E_IO, "server stopped with an error or was not bound");
    return SARVE_OK;
  });
}

void sarve_server_stop(sarve_server* server) {
  if (server) server->service->stop();
}

uint64_t sarve_server_version(const sarve_server* server) {
  return server ? server->service->snapshot()->version : 0;
}

void sarve_server_free(sarve_server* server) { delete server; }

}  // extern "C"
