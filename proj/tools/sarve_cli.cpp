// Command-line front end. Everything goes through the C API in sarve.h.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <pthread.h>

#include <CLI11.hpp>

#include "sarve/sarve.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitIo = 2;

struct ConferenceDeleter {
  void operator()(sarve_conference* c) const { sarve_conference_free(c); }
};
using Conference = std::unique_ptr<sarve_conference, ConferenceDeleter>;

struct StringDeleter {
  void operator()(char* s) const { sarve_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

int exit_code(sarve_status s) {
  if (s == SARVE_OK) return kExitOk;
  return s == SARVE_E_IO ? kExitIo : kExitInvalid;
}

int report(sarve_status s) {
  std::cerr << "sarve: " << sarve_status_string(s);
  if (*sarve_last_error() != '\0') std::cerr << ": " << sarve_last_error();
  std::cerr << '\n';
  return exit_code(s);
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.flush();
  if (!out) std::cerr << "sarve: cannot write '" << path << "'\n";
  return static_cast<bool>(out);
}

std::optional<sarve_channel> parse_channel(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (auto& c : s) if (c == '-') c = '_';
  if (s == "social_context" || s == "context") return SARVE_CHANNEL_SOCIAL_CONTEXT;
  if (s == "social_relations" || s == "relations") return SARVE_CHANNEL_SOCIAL_RELATIONS;
  if (s == "both") return SARVE_CHANNEL_BOTH;
  return std::nullopt;
}

struct ThresholdFlags {
  std::optional<double> gamma, beta, delta;
  std::optional<int> top_n;

  void add_to(CLI::App& cmd, bool with_env) {
    auto* g = cmd.add_option("--gamma", gamma, "Pearson threshold in [-1, 1]");
    auto* b = cmd.add_option("--beta", beta, "tie-strength threshold (>= 0)");
    auto* d = cmd.add_option("--delta", delta, "normalized degree-centrality threshold (>= 0)");
    auto* n = cmd.add_option("--top-n", top_n, "length of each recommendation list");
    if (with_env) {
      g->envname("SARVE_GAMMA");
      b->envname("SARVE_BETA");
      d->envname("SARVE_DELTA");
      n->envname("SARVE_TOP_N");
    }
  }

  bool any() const { return gamma || beta || delta || top_n; }

  sarve_thresholds apply(sarve_thresholds t) const {
    if (gamma) t.gamma = *gamma;
    if (beta) t.beta = *beta;
    if (delta) t.delta = *delta;
    if (top_n) t.top_n = *top_n;
    return t;
  }
};

int load(const std::string& path, Conference& out) {
  sarve_conference* raw = nullptr;
  if (auto s = sarve_conference_load(path.c_str(), &raw); s != SARVE_OK) return report(s);
  out.reset(raw);
  return kExitOk;
}

int cmd_generate(sarve_generator_config cfg, const std::string& out_path, const std::string& ratings_csv,
                 const std::string& contacts_csv) {
  sarve_conference* raw = nullptr;
  if (auto s = sarve_conference_generate(&cfg, &raw); s != SARVE_OK) return report(s);
  Conference conf(raw);
  if (auto s = sarve_conference_save(conf.get(), out_path.c_str()); s != SARVE_OK) return report(s);
  if (!ratings_csv.empty() || !contacts_csv.empty()) {
    auto s = sarve_export_csv(conf.get(), ratings_csv.empty() ? nullptr : ratings_csv.c_str(),
                              contacts_csv.empty() ? nullptr : contacts_csv.c_str());
    if (s != SARVE_OK) return report(s);
  }
  return kExitOk;
}

int cmd_validate(const std::string& path) {
  sarve_conference* raw = nullptr;
  if (auto s = sarve_conference_read(path.c_str(), &raw); s != SARVE_OK) return report(s);
  Conference conf(raw);
  size_t n = 0;
  char* text = nullptr;
  if (auto s = sarve_conference_validate(conf.get(), &n, &text); s != SARVE_OK) return report(s);
  OwnedString owned(text);
  if (n == 0) {
    std::cout << path << ": ok\n";
    return kExitOk;
  }
  std::cout << text;
  std::cerr << path << ": " << n << " violation(s)\n";
  return kExitInvalid;
}

int cmd_export(const std::string& path, const std::string& ratings_csv, const std::string& contacts_csv) {
  Conference conf;
  if (int rc = load(path, conf); rc != kExitOk) return rc;
  auto s = sarve_export_csv(conf.get(), ratings_csv.empty() ? nullptr : ratings_csv.c_str(),
                            contacts_csv.empty() ? nullptr : contacts_csv.c_str());
  return s == SARVE_OK ? kExitOk : report(s);
}

int cmd_recommend(const std::string& path, const std::string& participant, const ThresholdFlags& flags,
                  sarve_channel channel, bool strict, bool json) {
  Conference conf;
  if (int rc = load(path, conf); rc != kExitOk) return rc;
  sarve_thresholds th{};
  sarve_conference_thresholds(conf.get(), &th);
  th = flags.apply(th);
  sarve_recommend_options opt{flags.any() ? &th : nullptr, channel, strict ? 1 : 0,
                              json ? SARVE_FORMAT_JSON : SARVE_FORMAT_TEXT};
  char* text = nullptr;
  if (auto s = sarve_recommend(conf.get(), participant.c_str(), &opt, &text); s != SARVE_OK) return report(s);
  OwnedString owned(text);
  std::cout << text;
  return kExitOk;
}

int cmd_evaluate(const std::string& path, sarve_channel channel, const std::vector<double>& grid,
                 std::uint64_t split_seed, double train_fraction, const std::string& out_path,
                 const std::string& tables_path) {
  Conference conf;
  if (int rc = load(path, conf); rc != kExitOk) return rc;
  sarve_evaluate_options opt{channel, grid.data(), grid.size(), train_fraction, split_seed};
  char* csv = nullptr;
  char* tables = nullptr;
  if (auto s = sarve_evaluate(conf.get(), &opt, &csv, &tables); s != SARVE_OK) return report(s);
  OwnedString owned_csv(csv), owned_tables(tables);
  if (!write_file(out_path, csv)) return kExitIo;
  if (!tables_path.empty() && !write_file(tables_path, tables)) return kExitIo;
  std::cout << tables;
  return kExitOk;
}

int cmd_serve(const std::string& listen, const std::string& data, const ThresholdFlags& flags, bool save_on_write,
              bool quiet) {
  const auto colon = listen.rfind(':');
  if (colon == std::string::npos) {
    std::cerr << "sarve: --listen expects HOST:PORT\n";
    return kExitInvalid;
  }
  const std::string host = listen.substr(0, colon);
  int port = 0;
  try {
    port = std::stoi(listen.substr(colon + 1));
  } catch (const std::exception&) {
    std::cerr << "sarve: bad port in --listen '" << listen << "'\n";
    return kExitInvalid;
  }

  Conference conf;
  if (int rc = load(data, conf); rc != kExitOk) return rc;
  if (flags.any()) {
    sarve_thresholds th{};
    sarve_conference_thresholds(conf.get(), &th);
    th = flags.apply(th);
    if (auto s = sarve_conference_set_thresholds(conf.get(), &th); s != SARVE_OK) return report(s);
  }

  sarve_server_options opt{save_on_write ? data.c_str() : nullptr, quiet ? 0 : 1};
  sarve_server* server = nullptr;
  if (auto s = sarve_server_create(conf.get(), &opt, &server); s != SARVE_OK) return report(s);
  std::unique_ptr<sarve_server, void (*)(sarve_server*)> guard(server, sarve_server_free);
  int bound = 0;
  if (auto s = sarve_server_bind(server, host.c_str(), port, &bound); s != SARVE_OK) return report(s);

  // Block termination signals here and wait for them on a helper thread, so
  // shutdown happens outside of a signal handler.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    sarve_server_stop(server);
  });

  std::cerr << "sarve: serving " << data << " on " << host << ":" << bound << " (version "
            << sarve_server_version(server) << ")\n";
  const auto status = sarve_server_run(server);
  // If run() returned on its own, wake the waiter so it can exit.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return status == SARVE_OK ? kExitOk : report(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Socially-aware venue recommendation for conference participants"};
  app.require_subcommand(1);

  sarve_generator_config gen{};
  sarve_generator_config_default(&gen);
  std::string gen_out, gen_ratings_csv, gen_contacts_csv;
  auto* generate = app.add_subcommand("generate", "write a seeded synthetic conference dataset");
  generate->add_option("--seed", gen.seed, "random seed")->capture_default_str();
  generate->add_option("--participants", gen.n_participants)->capture_default_str();
  generate->add_option("--presenters", gen.n_presenters)->capture_default_str();
  generate->add_option("--sessions", gen.n_sessions)->capture_default_str();
  generate->add_option("--tags", gen.tag_vocabulary, "tag vocabulary size")->capture_default_str();
  generate->add_option("--rating-density", gen.rating_density)->capture_default_str();
  generate->add_option("--max-duration", gen.max_contact_duration, "max contact minutes")->capture_default_str();
  generate->add_option("--max-frequency", gen.max_contact_frequency, "max contact count")->capture_default_str();
  generate->add_option("--frame", gen.frame_T, "conference frame in minutes")->capture_default_str();
  generate->add_option("--locations", gen.n_locations)->capture_default_str();
  generate->add_option("--availability-coverage", gen.availability_coverage)->capture_default_str();
  generate->add_option("--contact-density", gen.contact_density)->capture_default_str();
  generate->add_option("--session-length", gen.session_length)->capture_default_str();
  generate->add_option("--gamma", gen.gamma)->capture_default_str();
  generate->add_option("--beta", gen.beta)->capture_default_str();
  generate->add_option("--delta", gen.delta)->capture_default_str();
  generate->add_option("--top-n", gen.top_n)->capture_default_str();
  generate->add_option("--out", gen_out, "dataset file to write")->required();
  generate->add_option("--ratings-csv", gen_ratings_csv, "also export the rating matrix as CSV");
  generate->add_option("--contacts-csv", gen_contacts_csv, "also export the contact log as CSV");

  std::string validate_file;
  auto* validate = app.add_subcommand("validate", "check a dataset file; exit 0 iff it is valid");
  validate->add_option("file", validate_file)->required();

  std::string export_file, export_ratings, export_contacts;
  auto* exporter = app.add_subcommand("export", "export the rating matrix and contact log as CSV");
  exporter->add_option("file", export_file)->required();
  exporter->add_option("--ratings-csv", export_ratings);
  exporter->add_option("--contacts-csv", export_contacts);

  std::string rec_file, rec_participant, rec_channel = "both";
  ThresholdFlags rec_flags;
  bool rec_strict = false, rec_json = false;
  auto* rec = app.add_subcommand("recommend", "print one participant's recommendations with explanations");
  rec->add_option("file", rec_file)->required();
  rec->add_option("--participant", rec_participant)->required();
  rec->add_option("--channel", rec_channel, "social_context, social_relations or both")->capture_default_str();
  rec_flags.add_to(*rec, false);
  rec->add_flag("--strict", rec_strict, "social relations also requires the Pearson gate");
  rec->add_flag("--json", rec_json, "print JSON instead of text");

  std::string eval_file, eval_channel, eval_out, eval_tables;
  std::vector<double> eval_grid;
  std::uint64_t eval_seed = 1;
  double eval_train = 0.8;
  auto* eval = app.add_subcommand("evaluate", "split, sweep a threshold grid and compare ablations");
  eval->add_option("file", eval_file)->required();
  eval->add_option("--channel", eval_channel, "social_context or social_relations")->required();
  eval->add_option("--grid", eval_grid, "ascending thresholds, comma separated")->required()->delimiter(',');
  eval->add_option("--split-seed", eval_seed)->capture_default_str();
  eval->add_option("--train-fraction", eval_train)->capture_default_str();
  eval->add_option("--out", eval_out, "sweep CSV to write")->required();
  eval->add_option("--tables", eval_tables, "also write the text report here");

  std::string serve_listen = "127.0.0.1:8080", serve_data;
  ThresholdFlags serve_flags;
  bool serve_save = false, serve_quiet = false;
  auto* serve = app.add_subcommand("serve", "run the JSON-over-HTTP recommendation service");
  serve->add_option("--listen", serve_listen, "HOST:PORT")->envname("SARVE_LISTEN")->capture_default_str();
  serve->add_option("--data", serve_data, "dataset file")->envname("SARVE_DATA")->required();
  serve_flags.add_to(*serve, true);
  serve->add_flag("--save-on-write", serve_save, "save the dataset after every accepted write");
  serve->add_flag("--quiet", serve_quiet, "no request log on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  if (*generate) return cmd_generate(gen, gen_out, gen_ratings_csv, gen_contacts_csv);
  if (*validate) return cmd_validate(validate_file);
  if (*exporter) return cmd_export(export_file, export_ratings, export_contacts);
  if (*rec) {
    auto channel = parse_channel(rec_channel);
    if (!channel) {
      std::cerr << "sarve: unknown channel '" << rec_channel << "'\n";
      return kExitInvalid;
    }
    return cmd_recommend(rec_file, rec_participant, rec_flags, *channel, rec_strict, rec_json);
  }
  if (*eval) {
    auto channel = parse_channel(eval_channel);
    if (!channel || *channel == SARVE_CHANNEL_BOTH) {
      std::cerr << "sarve: --channel must be social_context or social_relations\n";
      return kExitInvalid;
    }
    return cmd_evaluate(eval_file, *channel, eval_grid, eval_seed, eval_train, eval_out, eval_tables);
  }
  if (*serve) return cmd_serve(serve_listen, serve_data, serve_flags, serve_save, serve_quiet);
  return kExitInvalid;
}
